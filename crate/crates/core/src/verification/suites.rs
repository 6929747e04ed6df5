use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::instance::{random_instance, Instance, InstanceConfig};
use super::report::{agreement, slack, Context, SuiteReport};
use super::sampling::{
    ladder_scale, random_erc, random_indefinite, random_invertible, random_psd, random_rcc_y,
    random_weight, trial_rng, uniform_matrix, uniform_vector,
};
use super::{SuiteConfig, SuiteId, Tolerances};
use crate::error::{Error, Result};
use crate::function_spaces::{
    exact_energy, split_moments, Basis, MomentVector, Segment, Space, SpaceKind,
    VectorPolynomial,
};
use crate::linalg;
use crate::single_interval::{
    bbi_bound, gfmb_bound, ifb_gfmb_bound, optimal_bbi_params, sfmb_bound, sfmb_from_sgfmb,
    sgfmb_bound, split_free_matrix, transform_ifb_to_gfmb, BasisChange, FreeMatrix, FreeParams,
    PsiMatrix, WeightBlockMatrix,
};
use crate::two_interval::{
    check_relation, convexified_bound, counterexample_search, dbbi_bound, dsfmb_bound,
    erc_condition_matrix, omega_b, omega_erc, omega_f, omega_merc, omega_mlsr, omega_rcc,
    omega_serc, optimal_fmb_params, RelationCase, SearchKind, SearchOptions, SplitGeometry,
    WeightLadder, WITNESS_MARGIN,
};

/// One `(n, ν)` pair of one suite.
pub(super) struct Combo<'a> {
    id: SuiteId,
    cfg: &'a SuiteConfig,
    n: usize,
    order: usize,
}

impl<'a> Combo<'a> {
    pub(super) fn new(id: SuiteId, cfg: &'a SuiteConfig, n: usize, order: usize) -> Self {
        Self { id, cfg, n, order }
    }

    fn tol(&self) -> &Tolerances {
        &self.cfg.tolerances
    }

    fn ctx(&self, trial: u64) -> Context {
        Context {
            n: self.n,
            order: self.order,
            trial,
        }
    }

    fn instance_cfg(&self) -> InstanceConfig {
        self.cfg.instance(self.n, self.order)
    }

    /// Stream for the free parameters of a trial, separate from the instance stream.
    fn rng(&self, trial: u64) -> ChaCha8Rng {
        let salt = (self.id.index() << 48) ^ ((self.n as u64) << 24) ^ self.order as u64;
        trial_rng(self.cfg.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ salt, trial)
    }

    fn trials(&self) -> u64 {
        self.cfg.trials
    }
}

/// Runs `body` for every trial; an evaluation error fails that trial only.
fn for_each_trial<F>(c: &Combo, r: &mut SuiteReport, mut body: F)
where
    F: FnMut(u64, &mut SuiteReport) -> Result<()>,
{
    for trial in 0..c.trials() {
        r.trials += 1;
        if let Err(e) = body(trial, r) {
            r.record_error("evaluation", &c.ctx(trial), &e);
        }
    }
}

fn segment_for(trial: u64) -> Segment {
    if (trial / 2).is_multiple_of(2) {
        Segment::First
    } else {
        Segment::Second
    }
}

/// Log-uniform magnitude in `[10^lo, 10^hi]`.
fn magnitude<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    10f64.powf(rng.gen_range(lo..=hi))
}

/// Uniform entries with a log-uniform overall scale in `[0.1, 10]`.
fn scaled_vector<R: Rng>(rng: &mut R, len: usize) -> DVector<f64> {
    let mag = magnitude(rng, -1.0, 1.0);
    uniform_vector(rng, len, mag)
}

fn scaled_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> DMatrix<f64> {
    let mag = magnitude(rng, -1.0, 1.0);
    uniform_matrix(rng, rows, cols, mag)
}

/// Random `Ψ ⪰ 0` with `M`-row blocks, built from a PSD Schur complement.
fn random_psi<R: Rng>(rng: &mut R, m: usize, order: usize, weight: &DMatrix<f64>) -> Result<PsiMatrix> {
    let n = weight.nrows();
    let ns = magnitude(rng, -1.0, 1.0);
    let n_blocks = (0..=order).map(|_| uniform_matrix(rng, m, n, ns)).collect();
    let size = (order + 1) * m;
    let phi = random_psd(rng, size, 1e-6) * (magnitude(rng, -6.0, 0.0) / size as f64);
    PsiMatrix::from_schur(&phi, n_blocks, weight.clone())
}

fn piece_weights(inst: &Instance) -> Result<WeightBlockMatrix> {
    WeightBlockMatrix::new(
        &[inst.piece_bases.0.norms(), inst.piece_bases.1.norms()],
        &inst.weight,
    )
}

/// Random parameters for all five convexified matrices plus `Ω_F`.
struct TwoIntervalDraw {
    v1: DMatrix<f64>,
    v2: DMatrix<f64>,
    erc: (DMatrix<f64>, DMatrix<f64>, DMatrix<f64>, DMatrix<f64>),
    serc: (DMatrix<f64>, DMatrix<f64>),
    merc: DMatrix<f64>,
    rcc: DMatrix<f64>,
    n1: DMatrix<f64>,
    n2: DMatrix<f64>,
}

impl TwoIntervalDraw {
    fn sample<R: Rng>(rng: &mut R, ladder: &WeightLadder, h: f64) -> Self {
        let m1 = ladder.size();
        let s = ladder_scale(ladder);
        Self {
            v1: uniform_matrix(rng, 2 * m1, m1, s),
            v2: uniform_matrix(rng, 2 * m1, m1, s),
            erc: random_erc(rng, ladder),
            serc: (
                uniform_matrix(rng, m1, m1, 0.5 * s),
                uniform_matrix(rng, m1, m1, 0.5 * s),
            ),
            merc: uniform_matrix(rng, m1, m1, 0.5 * s),
            rcc: random_rcc_y(rng, ladder),
            n1: uniform_matrix(rng, 2 * m1, m1, s / h),
            n2: uniform_matrix(rng, 2 * m1, m1, s / h),
        }
    }

    /// `(name, Ω)` for every variant at `g`.
    fn omegas(&self, g: &SplitGeometry, ladder: &WeightLadder) -> Result<Vec<(&'static str, DMatrix<f64>)>> {
        let a = g.alpha;
        let (x1, x2, y1, y2) = &self.erc;
        Ok(vec![
            ("ds-fmb", omega_f(g, &self.n1, &self.n2, ladder)?),
            ("m-lsr", omega_mlsr(a, &self.v1, &self.v2, ladder)?),
            ("erc", omega_erc(a, x1, x2, y1, y2, ladder)?),
            ("serc", omega_serc(a, &self.serc.0, &self.serc.1, ladder)?),
            ("merc", omega_merc(a, &self.merc, ladder)?),
            ("rcc", omega_rcc(&self.rcc, ladder)?),
        ])
    }
}

pub(super) fn soundness(c: &Combo, r: &mut SuiteReport) -> Result<()> {
    let tol = c.tol().soundness;
    for_each_trial(c, r, |trial, r| {
        let ctx = c.ctx(trial);
        let inst = random_instance(&c.instance_cfg(), trial)?;
        let mut rng = c.rng(trial);
        let seg = segment_for(trial);
        let piece = inst.piece(seg.index());
        let norms = inst.piece_basis(seg.index()).norms();
        let exact = exact_energy(piece, &inst.f, &inst.weight)?;
        let w = &inst.split_moments;
        let weights = piece_weights(&inst)?;
        let m = w.len();
        let check = |r: &mut SuiteReport, name: &str, bound: f64, exact: f64| {
            r.record(name, &ctx, slack(bound, exact), bound, exact, tol);
        };

        let bbi = bbi_bound(w, &weights, seg)?;
        check(r, "bbi<=exact", bbi, exact);

        let psi = random_psi(&mut rng, m, c.order, &inst.weight)?;
        let chi = scaled_vector(&mut rng, m);
        let fp = FreeParams::new(chi.clone(), seg);
        check(r, "gfmb<=exact", gfmb_bound(&psi, norms, &fp, w)?, exact);

        let change = BasisChange::new(random_invertible(&mut rng, c.order + 1, 100.0), norms)?;
        let w_tilde = change.transform_moments(w)?;
        check(r, "ifb-gfmb<=exact", ifb_gfmb_bound(&psi, &change, &fp, &w_tilde)?, exact);

        let n = FreeMatrix::padded(&psi.free_matrix_core(), seg, 2)?;
        check(r, "sgfmb<=exact", sgfmb_bound(&n, &chi, w, &weights)?, exact);
        check(r, "sfmb<=exact", sfmb_bound(&n, w, &weights)?, exact);
        if chi.norm() > 0.0 {
            let opt = optimal_bbi_params(w, &weights, &chi, seg)?;
            check(r, "sgfmb-optimal<=exact", sgfmb_bound(&opt, &chi, w, &weights)?, exact);
        }

        let whole = exact_energy(&inst.space, &inst.f, &inst.weight)?;
        let single = WeightBlockMatrix::single(inst.basis.norms(), &inst.weight)?;
        check(r, "bbi-whole<=exact", bbi_bound(&inst.moments, &single, Segment::First)?, whole);

        if inst.space.kind() == SpaceKind::Continuous {
            let g = inst.geometry()?;
            let ladder = inst.ladder()?;
            let dbbi = dbbi_bound(w, &g, &ladder)?;
            check(r, "dbbi<=exact", dbbi, whole);
            let (n1, n2) = optimal_fmb_params(w, &g, &ladder)?;
            check(r, "ds-fmb-optimal<=exact", dsfmb_bound(w, &g, &n1, &n2, &ladder)?, whole);
            let draw = TwoIntervalDraw::sample(&mut rng, &ladder, g.h);
            for (name, omega) in draw.omegas(&g, &ladder)? {
                let bound = convexified_bound(w, &omega, g.h)?;
                check(r, &format!("{name}<=exact"), bound, whole);
            }
        }
        Ok(())
    });
    Ok(())
}

pub(super) fn ordering(c: &Combo, r: &mut SuiteReport) -> Result<()> {
    let tol = c.tol().ordering;
    for_each_trial(c, r, |trial, r| {
        let ctx = c.ctx(trial);
        let inst = random_instance(&c.instance_cfg(), trial)?;
        let mut rng = c.rng(trial);
        let seg = segment_for(trial);
        let norms = inst.piece_basis(seg.index()).norms();
        let w = &inst.split_moments;
        let weights = piece_weights(&inst)?;
        let m = w.len();

        let psi = random_psi(&mut rng, m, c.order, &inst.weight)?;
        let chi = scaled_vector(&mut rng, m);
        let gfmb = gfmb_bound(&psi, norms, &FreeParams::new(chi.clone(), seg), w)?;
        let n = FreeMatrix::padded(&psi.free_matrix_core(), seg, 2)?;
        let sgfmb = sgfmb_bound(&n, &chi, w, &weights)?;
        let bbi = bbi_bound(w, &weights, seg)?;
        r.record("gfmb<=sgfmb", &ctx, slack(gfmb, sgfmb), gfmb, sgfmb, tol);
        r.record("sgfmb<=bbi", &ctx, slack(sgfmb, bbi), sgfmb, bbi, tol);
        Ok(())
    });
    Ok(())
}

pub(super) fn equivalence_gfmb_ifb(c: &Combo, r: &mut SuiteReport) -> Result<()> {
    let t = c.tol();
    for_each_trial(c, r, |trial, r| {
        let ctx = c.ctx(trial);
        let inst = random_instance(&c.instance_cfg(), trial)?;
        let mut rng = c.rng(trial);
        let seg = segment_for(trial);
        let norms = inst.piece_basis(seg.index()).norms();
        let w = &inst.split_moments;
        let m = w.len();

        let psi = random_psi(&mut rng, m, c.order, &inst.weight)?;
        let change = BasisChange::new(random_invertible(&mut rng, c.order + 1, 100.0), norms)?;
        let transformed = transform_ifb_to_gfmb(&psi, &change)?;
        let cert = transformed.certificate;
        r.record(
            "psi-tilde-psd",
            &ctx,
            cert.relative_margin(),
            cert.min_eigenvalue,
            0.0,
            t.psd,
        );
        let chi = scaled_vector(&mut rng, m);
        let fp = FreeParams::new(chi, seg);
        let ifb = ifb_gfmb_bound(&psi, &change, &fp, &change.transform_moments(w)?)?;
        let gfmb = gfmb_bound(&transformed.psi, norms, &fp, w)?;
        r.record("ifb-gfmb=gfmb", &ctx, agreement(ifb, gfmb), gfmb, ifb, t.equality);
        Ok(())
    });
    Ok(())
}

pub(super) fn equivalence_sgfmb_bbi(c: &Combo, r: &mut SuiteReport) -> Result<()> {
    let tol = c.tol().equality;
    for_each_trial(c, r, |trial, r| {
        let ctx = c.ctx(trial);
        let inst = random_instance(&c.instance_cfg(), trial)?;
        let mut rng = c.rng(trial);
        let seg = segment_for(trial);
        let norms = inst.piece_basis(seg.index()).norms();
        let w = &inst.split_moments;
        let weights = piece_weights(&inst)?;
        let bbi = bbi_bound(w, &weights, seg)?;

        let chi = loop {
            let chi = scaled_vector(&mut rng, w.len());
            if chi.norm() > 0.0 {
                break chi;
            }
        };
        let n = optimal_bbi_params(w, &weights, &chi, seg)?;
        let sgfmb = sgfmb_bound(&n, &chi, w, &weights)?;
        r.record("sgfmb=bbi", &ctx, agreement(sgfmb, bbi), sgfmb, bbi, tol);

        let psi = PsiMatrix::minimal(split_free_matrix(&n.core(), c.n)?, inst.weight.clone())?;
        let gfmb = gfmb_bound(&psi, norms, &FreeParams::new(chi, seg), w)?;
        r.record("gfmb=bbi", &ctx, agreement(gfmb, bbi), gfmb, bbi, tol);
        Ok(())
    });
    Ok(())
}

pub(super) fn equivalence_sfmb_sgfmb(c: &Combo, r: &mut SuiteReport) -> Result<()> {
    let t = c.tol();
    for_each_trial(c, r, |trial, r| {
        let ctx = c.ctx(trial);
        let inst = random_instance(&c.instance_cfg(), trial)?;
        let mut rng = c.rng(trial);
        let seg = segment_for(trial);
        let w = &inst.split_moments;
        let weights = piece_weights(&inst)?;
        if w.stacked().norm() == 0.0 {
            r.notes.push(format!("{}: zero moments, skipped", ctx.digest(&r.suite, r.seed)));
            return Ok(());
        }
        let m = w.len();
        let chi = scaled_vector(&mut rng, m);
        let core = scaled_matrix(&mut rng, m, w.part_len());
        let n = FreeMatrix::padded(&core, seg, 2)?;
        let sgfmb = sgfmb_bound(&n, &chi, w, &weights)?;
        let tr = sfmb_from_sgfmb(&chi, &n, w)?;
        let sfmb = sfmb_bound(&tr.n_tilde, w, &weights)?;
        r.record("sfmb=sgfmb", &ctx, agreement(sfmb, sgfmb), sfmb, sgfmb, t.equality);
        r.record(
            "q-orthogonal",
            &ctx,
            -tr.orthogonality_error,
            tr.orthogonality_error,
            0.0,
            t.orthogonality,
        );

        let bbi = bbi_bound(w, &weights, seg)?;
        let opt = optimal_bbi_params(w, &weights, &w.stacked(), seg)?;
        let sfmb_opt = sfmb_bound(&opt, w, &weights)?;
        r.record("sfmb=bbi", &ctx, agreement(sfmb_opt, bbi), sfmb_opt, bbi, t.equality);
        Ok(())
    });
    Ok(())
}

pub(super) fn schur(c: &Combo, r: &mut SuiteReport) -> Result<()> {
    let tol = c.tol().psd;
    for_each_trial(c, r, |trial, r| {
        let ctx = c.ctx(trial);
        let mut rng = c.rng(trial);
        let weight = random_weight(&mut rng, c.n);
        let m = 2 * (c.order + 1) * c.n;
        let size = (c.order + 1) * m;
        let infeasible = trial % 5 == 4;
        let phi = if infeasible {
            random_indefinite(&mut rng, size)
        } else {
            random_psd(&mut rng, size, 1e-6)
        };
        let n_blocks = (0..=c.order).map(|_| uniform_matrix(&mut rng, m, c.n, 1.0)).collect();
        let psi = PsiMatrix::from_schur(&phi, n_blocks, weight)?;
        let by_psi = psi.psd(tol)?;
        let by_phi = linalg::psd_check(&psi.schur_complement(), tol)?;
        let agree = by_psi.passed == by_phi.passed;
        r.record(
            "psi-phi-agree",
            &ctx,
            if agree { 0.0 } else { -1.0 },
            by_psi.min_eigenvalue,
            by_phi.min_eigenvalue,
            0.0,
        );
        let expected_ok = by_phi.passed != infeasible;
        r.record(
            "expected-verdict",
            &ctx,
            if expected_ok { 0.0 } else { -1.0 },
            by_phi.min_eigenvalue,
            if infeasible { -1.0 } else { 0.0 },
            0.0,
        );
        Ok(())
    });
    Ok(())
}

/// `α ∈ {0.05, 0.10, …, 0.95}`
pub(super) fn alpha_grid() -> Vec<f64> {
    (1..=19).map(|k| k as f64 * 0.05).collect()
}

pub(super) fn domination(c: &Combo, r: &mut SuiteReport) -> Result<()> {
    let tol = c.tol().psd;
    let grid = alpha_grid();
    for_each_trial(c, r, |trial, r| {
        let ctx = c.ctx(trial);
        let mut rng = c.rng(trial);
        let ladder = WeightLadder::new(&random_weight(&mut rng, c.n), c.order)?;
        let h = rng.gen_range(0.5..=3.0);
        let draw = TwoIntervalDraw::sample(&mut rng, &ladder, h);
        for &alpha in &grid {
            let g = SplitGeometry::from_alpha(h, alpha)?;
            let ob = omega_b(&g, &ladder)?;
            for (name, omega) in draw.omegas(&g, &ladder)? {
                let cert = linalg::psd_check(&linalg::symmetrize(&(&ob - omega)), tol)?;
                r.record(
                    &format!("omega_b-{name}"),
                    &ctx,
                    cert.relative_margin(),
                    cert.min_eigenvalue,
                    0.0,
                    tol,
                );
            }
        }
        Ok(())
    });
    Ok(())
}

pub(super) fn relations(c: &Combo, r: &mut SuiteReport) -> Result<()> {
    let t = c.tol();
    for_each_trial(c, r, |trial, r| {
        let ctx = c.ctx(trial);
        let mut rng = c.rng(trial);
        let ladder = WeightLadder::new(&random_weight(&mut rng, c.n), c.order)?;
        let h = rng.gen_range(0.5..=3.0);
        let g = SplitGeometry::from_alpha(h, rng.gen_range(0.01..=0.99))?;
        let draw = TwoIntervalDraw::sample(&mut rng, &ladder, h);

        let identity = |r: &mut SuiteReport, name: &str, case: RelationCase| -> Result<()> {
            let rep = check_relation(&case, &g, &ladder, t.psd)?;
            let res = rep.identity_residual.unwrap_or(f64::NAN);
            r.record(name, &ctx, -res, res, 0.0, t.identity);
            Ok(())
        };
        identity(
            r,
            "A-identity",
            RelationCase::A {
                n1: draw.n1.clone(),
                n2: draw.n2.clone(),
            },
        )?;
        identity(
            r,
            "B-forward",
            RelationCase::BForward {
                y1: draw.serc.0.clone(),
                y2: draw.serc.1.clone(),
            },
        )?;
        identity(r, "D-forward", RelationCase::DForward { y: draw.merc.clone() })?;

        let (x1, x2, y1, y2) = draw.erc.clone();
        let rep = check_relation(
            &RelationCase::C {
                x1: x1.clone(),
                x2: x2.clone(),
                y1: y1.clone(),
                y2: y2.clone(),
            },
            &g,
            &ladder,
            t.psd,
        )?;
        if let Some(cert) = rep.psd {
            r.record("C-psd", &ctx, cert.relative_margin(), cert.min_eigenvalue, 0.0, t.psd);
        }
        let res = rep.identity_residual.unwrap_or(f64::NAN);
        r.record("C-boundary", &ctx, -res, res, 0.0, t.boundary);

        let rep = check_relation(&RelationCase::E { y: draw.rcc.clone() }, &g, &ladder, t.psd)?;
        if let Some(cert) = rep.psd {
            r.record("E-psd", &ctx, cert.relative_margin(), cert.min_eigenvalue, 0.0, t.psd);
        }

        // endpoint feasibility carries over to the interior
        for k in 1..=10 {
            let a = k as f64 / 11.0;
            let m = erc_condition_matrix(a, &x1, &x2, &y1, &y2, &ladder)?;
            let cert = linalg::psd_check(&linalg::symmetrize(&m), t.psd)?;
            r.record(
                "SE1-interior",
                &ctx,
                cert.relative_margin(),
                cert.min_eigenvalue,
                0.0,
                t.psd,
            );
        }
        Ok(())
    });
    Ok(())
}

pub(super) fn counterexamples(cfg: &SuiteConfig, r: &mut SuiteReport) -> Result<()> {
    let opts = SearchOptions {
        seed: cfg.seed,
        budget: cfg.budget,
        sweep: cfg.sweep,
    };
    r.notes.push(format!(
        "competitors are a finite sweep ({} random plus fixed choices); \
         indefiniteness against every competitor cannot be certified numerically",
        cfg.sweep
    ));
    for order in [0, 1] {
        let ladder = WeightLadder::new(&DMatrix::identity(1, 1), order)?;
        for kind in [SearchKind::B, SearchKind::D] {
            r.trials += 1;
            let ctx = Context {
                n: 1,
                order,
                trial: 0,
            };
            let name = format!("{kind:?}-reverse");
            match counterexample_search(kind, &ladder, &opts) {
                Ok(w) => {
                    r.record(
                        &format!("{name}-negative"),
                        &ctx,
                        -w.worst_negative - WITNESS_MARGIN,
                        w.worst_negative,
                        -WITNESS_MARGIN,
                        0.0,
                    );
                    r.record(
                        &format!("{name}-positive"),
                        &ctx,
                        w.worst_positive - WITNESS_MARGIN,
                        w.worst_positive,
                        WITNESS_MARGIN,
                        0.0,
                    );
                    r.witnesses.push(w);
                }
                Err(Error::BudgetExhausted { trials }) => r.exhausted(format!(
                    "{name} n=1 nu={order}: no witness within {trials} draws"
                )),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(())
}

pub(super) fn span_tightness(c: &Combo, r: &mut SuiteReport) -> Result<()> {
    let tol = c.tol().span;
    let mut icfg = c.instance_cfg();
    icfg.degree = Some(c.order);
    for_each_trial(c, r, |trial, r| {
        let ctx = c.ctx(trial);
        let inst = random_instance(&icfg, trial)?;
        let exact = exact_energy(&inst.space, &inst.f, &inst.weight)?;
        let single = WeightBlockMatrix::single(inst.basis.norms(), &inst.weight)?;
        let bbi = bbi_bound(&inst.moments, &single, Segment::First)?;
        r.record("bbi=exact", &ctx, agreement(bbi, exact), bbi, exact, tol);

        let weights = piece_weights(&inst)?;
        for seg in [Segment::First, Segment::Second] {
            let piece_exact = exact_energy(inst.piece(seg.index()), &inst.f, &inst.weight)?;
            let b = bbi_bound(&inst.split_moments, &weights, seg)?;
            r.record("bbi-piece=exact", &ctx, agreement(b, piece_exact), b, piece_exact, tol);
        }
        if inst.space.kind() == SpaceKind::Continuous {
            let d = dbbi_bound(&inst.split_moments, &inst.geometry()?, &inst.ladder()?)?;
            r.record("dbbi=exact", &ctx, agreement(d, exact), d, exact, tol);
        }
        Ok(())
    });
    Ok(())
}

/// `f = (t, 1)` on `[0, 1]`, `W = I_2`, `ν = 1`: BBI and DBBI at `c = 1/2` equal 4/3.
pub(super) fn worked_example(cfg: &SuiteConfig, r: &mut SuiteReport) -> Result<()> {
    let tol = cfg.tolerances.span;
    let ctx = Context {
        n: 2,
        order: 1,
        trial: 0,
    };
    let space = Space::continuous(0.0, 1.0)?;
    let f = VectorPolynomial::from_coeffs(vec![vec![0.0, 1.0], vec![1.0]])?;
    let weight = DMatrix::identity(2, 2);
    let basis = Basis::build(&space, 1)?;
    let w = crate::function_spaces::moments(&space, &basis, &f)?;
    let single = WeightBlockMatrix::single(basis.norms(), &weight)?;
    let bbi = bbi_bound(&w, &single, Segment::First)?;
    r.record("worked-bbi=4/3", &ctx, agreement(bbi, 4.0 / 3.0), bbi, 4.0 / 3.0, tol);

    let (d1, d2) = space.split(0.5)?;
    let (b1, b2) = (Basis::build(&d1, 1)?, Basis::build(&d2, 1)?);
    let ws: MomentVector = split_moments((&d1, &d2), (&b1, &b2), &f)?;
    let g = SplitGeometry::new(0.0, 0.5, 1.0)?;
    let ladder = WeightLadder::new(&weight, 1)?;
    let dbbi = dbbi_bound(&ws, &g, &ladder)?;
    r.record("worked-dbbi=4/3", &ctx, agreement(dbbi, 4.0 / 3.0), dbbi, 4.0 / 3.0, tol);
    Ok(())
}
