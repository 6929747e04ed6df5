use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::scenario::CompareSection;
use crate::error::Result;
use crate::function_spaces::{exact_energy, moments, split_moments, Basis, Segment, Space};
use crate::single_interval::{bbi_bound, WeightBlockMatrix};
use crate::two_interval::{
    convexified_bound, dbbi_bound, dsfmb_bound, omega_erc, omega_merc, omega_mlsr, omega_rcc,
    omega_serc, optimal_fmb_params, serc_boundary, SplitGeometry, WeightLadder,
};
use crate::verification::slack;

/// One row of the comparison table. `ordered` asserts the chain
/// `rcc ≤ erc ≤ serc`, `rcc ≤ merc`, every two-interval bound `≤ dbbi`,
/// `bbi ≤ dbbi ≤ exact`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareRow {
    pub alpha: f64,
    pub split: f64,
    pub exact: f64,
    pub bbi: f64,
    pub dbbi: f64,
    pub dsfmb: f64,
    pub mlsr: f64,
    pub erc: f64,
    pub serc: f64,
    pub merc: f64,
    pub rcc: f64,
    /// Smallest relative slack over the asserted chain.
    pub worst_slack: f64,
    pub ordered: bool,
}

pub const COLUMNS: [&str; 13] = [
    "alpha", "c", "exact", "bbi", "dbbi", "ds-fmb", "m-lsr", "erc", "serc", "merc", "rcc",
    "slack", "ordered",
];

struct Fixed {
    space: Space,
    f: crate::function_spaces::VectorPolynomial,
    ladder: WeightLadder,
    exact: f64,
    bbi: f64,
}

fn split_at(section: &CompareSection, fx: &Fixed, alpha: f64) -> Result<(SplitGeometry, crate::function_spaces::MomentVector)> {
    let [a, b] = section.interval;
    let c = a + alpha * (b - a);
    let (d1, d2) = fx.space.split(c)?;
    let bases = (Basis::build(&d1, section.order)?, Basis::build(&d2, section.order)?);
    let w = split_moments((&d1, &d2), (&bases.0, &bases.1), &fx.f)?;
    Ok((SplitGeometry::new(a, c, b)?, w))
}

/// Tabulates every bound over `section.alphas`.
pub fn compare_rows(section: &CompareSection, tol: f64) -> Result<Vec<CompareRow>> {
    section.validate()?;
    let [a, b] = section.interval;
    let space = Space::continuous(a, b)?;
    let f = section.function()?;
    let weight = section.weight_matrix();
    let basis = Basis::build(&space, section.order)?;
    let single = WeightBlockMatrix::single(basis.norms(), &weight)?;
    let bbi = bbi_bound(&moments(&space, &basis, &f)?, &single, Segment::First)?;
    let exact = exact_energy(&space, &f, &weight)?;
    let ladder = WeightLadder::new(&weight, section.order)?;
    let fx = Fixed {
        space,
        f,
        ladder,
        exact,
        bbi,
    };

    let (g0, w0) = split_at(section, &fx, section.reference_alpha)?;
    let (n1, n2) = optimal_fmb_params(&w0, &g0, &fx.ladder)?;
    let (v1, v2) = (n1 * -g0.h, n2 * -g0.h);

    let y = fx.ladder.matrix() * section.y_scale;
    let (xb1, xb2) = serc_boundary(&y, &y, &fx.ladder)?;
    let (x1, x2) = (xb1 * section.erc_fraction, xb2 * section.erc_fraction);

    section.alphas
        .iter()
        .map(|&alpha| {
            let (g, w) = split_at(section, &fx, alpha)?;
            let l = &fx.ladder;
            let (m1, m2) = optimal_fmb_params(&w, &g, l)?;
            let dbbi = dbbi_bound(&w, &g, l)?;
            let dsfmb = dsfmb_bound(&w, &g, &m1, &m2, l)?;
            let bound = |omega: DMatrix<f64>| convexified_bound(&w, &omega, g.h);
            let mlsr = bound(omega_mlsr(alpha, &v1, &v2, l)?)?;
            let erc = bound(omega_erc(alpha, &x1, &x2, &y, &y, l)?)?;
            let serc = bound(omega_serc(alpha, &y, &y, l)?)?;
            let merc = bound(omega_merc(alpha, &y, l)?)?;
            let rcc = bound(omega_rcc(&y, l)?)?;
            let chain = [
                (dbbi, fx.exact),
                (fx.bbi, dbbi),
                (dsfmb, dbbi),
                (mlsr, dbbi),
                (serc, dbbi),
                (merc, dbbi),
                (erc, serc),
                (rcc, erc),
                (rcc, merc),
            ];
            let worst_slack = chain
                .iter()
                .map(|&(lo, hi)| slack(lo, hi))
                .fold(f64::INFINITY, f64::min);
            Ok(CompareRow {
                alpha,
                split: a + alpha * (b - a),
                exact: fx.exact,
                bbi: fx.bbi,
                dbbi,
                dsfmb,
                mlsr,
                erc,
                serc,
                merc,
                rcc,
                worst_slack,
                ordered: worst_slack >= -tol,
            })
        })
        .collect()
}

impl CompareRow {
    pub fn cells(&self) -> Vec<String> {
        let num = |x: f64| format!("{x:.6}");
        vec![
            format!("{:.4}", self.alpha),
            format!("{:.4}", self.split),
            num(self.exact),
            num(self.bbi),
            num(self.dbbi),
            num(self.dsfmb),
            num(self.mlsr),
            num(self.erc),
            num(self.serc),
            num(self.merc),
            num(self.rcc),
            format!("{:.1e}", self.worst_slack),
            if self.ordered { "yes" } else { "NO" }.to_string(),
        ]
    }
}
