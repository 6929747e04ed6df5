//! Parses a scenario document and prints its comparison table as the CLI would.

use delaybounds::cli::{compare_rows, render_table, CompareRow, ScenarioFile, COLUMNS};

const SCENARIO: &str = r#"
version = 1

[compare]
f = [[0.0, 0.0, 1.0], [1.0, 1.0]]
order = 1
alphas = [0.25, 0.5, 0.75]
y_scale = 0.9
"#;

fn main() -> delaybounds::Result<()> {
    let doc = ScenarioFile::parse(SCENARIO)?;
    let section = doc.compare.expect("scenario has a compare section");
    let rows = compare_rows(&section, doc.instance.tolerances.ordering)?;
    let cells: Vec<Vec<String>> = rows.iter().map(CompareRow::cells).collect();
    print!("{}", render_table(&COLUMNS, &cells));
    Ok(())
}
