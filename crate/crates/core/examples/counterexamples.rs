//! Searches for parameter sets showing that SERC cannot always reproduce
//! M-LSR (B) and MERC cannot always reproduce SERC (D), for scalar weights.

use delaybounds::two_interval::{counterexample_search, SearchKind, SearchOptions, WeightLadder};
use nalgebra::DMatrix;

fn main() -> delaybounds::Result<()> {
    let opts = SearchOptions::default();
    for order in [0, 1] {
        let ladder = WeightLadder::new(&DMatrix::identity(1, 1), order)?;
        for kind in [SearchKind::B, SearchKind::D] {
            match counterexample_search(kind, &ladder, &opts) {
                Ok(w) => println!(
                    "{kind:?} order {order}: trial {} alpha {:.6} forms {:.3e} / {:.3e} over {} competitors",
                    w.trial, w.alpha, w.worst_negative, w.worst_positive, w.competitors
                ),
                Err(e) => println!("{kind:?} order {order}: {e}"),
            }
        }
    }
    Ok(())
}
