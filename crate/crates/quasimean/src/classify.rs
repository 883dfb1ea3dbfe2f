//! Sampling-based property falsifiers and the declared-vs-tested matrix.
//!
//! Falsification is sound: every `Falsified` verdict carries a witness that
//! replays the violation under re-evaluation. `HoldsOnSample` is statistical
//! and never upgraded to a proof; reports carry the budget so callers can
//! ratchet it.

use serde::Serialize;
use serde_json::json;

use crate::catalog::{CatalogEntry, MeanClass, Property, QuasiSpec, Witness};
use crate::error::MeanError;
use crate::mean::{MeanFunction, MEAN_LIKE_TOL};
use crate::measures::{a_quasi_constant, m_quasi_constant, SearchConfig};
use crate::real::{ExactDecimal, Real};
use crate::rng::SeededRng;
use crate::tuple::{Arity, DomainBox, GridSampler, RealTuple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictStatus {
    HoldsOnSample,
    Falsified,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictWitness {
    Tuple(Vec<String>),
    Pair(Vec<String>, Vec<String>),
}

impl VerdictWitness {
    fn tuple(t: &RealTuple) -> Self {
        VerdictWitness::Tuple(t.values().iter().map(Real::render_plain).collect())
    }

    fn pair(a: &RealTuple, b: &RealTuple) -> Self {
        VerdictWitness::Pair(
            a.values().iter().map(Real::render_plain).collect(),
            b.values().iter().map(Real::render_plain).collect(),
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyVerdict {
    pub property: Property,
    pub status: VerdictStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<VerdictWitness>,
    pub detail: String,
    pub samples: u64,
    pub seed: u64,
}

impl PropertyVerdict {
    fn holds(property: Property, samples: u64, seed: u64) -> Self {
        PropertyVerdict {
            property,
            status: VerdictStatus::HoldsOnSample,
            witness: None,
            detail: String::new(),
            samples,
            seed,
        }
    }

    fn falsified(
        property: Property,
        witness: VerdictWitness,
        detail: String,
        samples: u64,
        seed: u64,
    ) -> Self {
        PropertyVerdict {
            property,
            status: VerdictStatus::Falsified,
            witness: Some(witness),
            detail,
            samples,
            seed,
        }
    }

    fn inconclusive(property: Property, detail: &str, seed: u64) -> Self {
        PropertyVerdict {
            property,
            status: VerdictStatus::Inconclusive,
            witness: None,
            detail: detail.to_string(),
            samples: 0,
            seed,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClassifyConfig {
    pub budget: u64,
    pub seed: u64,
    /// Decimal grid used by the tuple sampler.
    pub grid_exp: i64,
    /// Absolute slack for iteration-monotonicity comparisons.
    pub tol: f64,
}

impl ClassifyConfig {
    pub fn new(budget: u64, seed: u64) -> Self {
        ClassifyConfig {
            budget,
            seed,
            grid_exp: 6,
            tol: 1e-12,
        }
    }
}

/// Perturbation scales for the continuity probes, coarse to fine.
pub const PROBE_SCALES: [f64; 9] = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9];

const CONTINUITY_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeSide {
    Full,
    Left,
    Right,
}

fn sample_in_domain(k: &MeanFunction, s: &GridSampler, rng: &mut SeededRng) -> Option<RealTuple> {
    for _ in 0..64 {
        let n = s.sample_arity(rng).max(2);
        let t = s.tuple(rng, n).ok()?;
        if k.in_domain(&t) {
            return Some(t);
        }
    }
    None
}

/// Margin below which an f64 screening result is confirmed exactly before
/// any verdict is drawn from it.
const SCREEN_MARGIN: f64 = 1e-9;

/// High-budget sampled checks screen in f64 and confirm borderline or
/// violating samples with the exact evaluator, so falsified verdicts still
/// carry exactly replaying witnesses.
fn envelope_check(
    k: &MeanFunction,
    box_: &DomainBox,
    cfg: &ClassifyConfig,
    property: Property,
    lower: bool,
    upper: bool,
) -> PropertyVerdict {
    if box_.is_degenerate() {
        return PropertyVerdict::inconclusive(property, "degenerate box", cfg.seed);
    }
    let Ok(sampler) = box_.grid_sampler(cfg.grid_exp) else {
        return PropertyVerdict::inconclusive(property, "unsampleable box", cfg.seed);
    };
    let mut rng = SeededRng::new(cfg.seed);
    let mut tested = 0u64;
    for _ in 0..cfg.budget {
        let n = sampler.sample_arity(&mut rng).max(2);
        let scaled = sampler.draw_scaled(&mut rng, n);
        let xs = sampler.f64_of(&scaled);
        let Some(v) = k.eval_f64(&xs) else { continue };
        tested += 1;
        let lo = xs.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let scale = 1f64.max(lo.abs()).max(hi.abs());
        let suspicious =
            (lower && v < lo + SCREEN_MARGIN * scale) || (upper && v > hi - SCREEN_MARGIN * scale);
        if !suspicious {
            continue;
        }
        let Ok(t) = sampler.tuple_of(&scaled) else {
            continue;
        };
        let Ok(v) = k.eval(&t) else { continue };
        if lower && !v.ge_with_tol(&t.min_value(), MEAN_LIKE_TOL) {
            return PropertyVerdict::falsified(
                property,
                VerdictWitness::tuple(&t),
                format!(
                    "value {} below min {}",
                    v.render_plain(),
                    t.min_value().render_plain()
                ),
                tested,
                cfg.seed,
            );
        }
        if upper && !v.le_with_tol(&t.max_value(), MEAN_LIKE_TOL) {
            return PropertyVerdict::falsified(
                property,
                VerdictWitness::tuple(&t),
                format!(
                    "value {} above max {}",
                    v.render_plain(),
                    t.max_value().render_plain()
                ),
                tested,
                cfg.seed,
            );
        }
    }
    if tested == 0 {
        PropertyVerdict::inconclusive(property, "no admissible samples", cfg.seed)
    } else {
        PropertyVerdict::holds(property, tested, cfg.seed)
    }
}

pub fn check_left_mean(
    k: &MeanFunction,
    box_: &DomainBox,
    cfg: &ClassifyConfig,
) -> PropertyVerdict {
    envelope_check(k, box_, cfg, Property::LeftMean, true, false)
}

pub fn check_right_mean(
    k: &MeanFunction,
    box_: &DomainBox,
    cfg: &ClassifyConfig,
) -> PropertyVerdict {
    envelope_check(k, box_, cfg, Property::RightMean, false, true)
}

pub fn check_mean(k: &MeanFunction, box_: &DomainBox, cfg: &ClassifyConfig) -> PropertyVerdict {
    envelope_check(k, box_, cfg, Property::Mean, true, true)
}

/// Strictness of the envelope inequality on the side(s) the class declares,
/// skipping constant tuples. Approximate values also skip near-constant
/// tuples, where rounding noise would mimic attainment.
pub fn check_strict(
    k: &MeanFunction,
    class: MeanClass,
    box_: &DomainBox,
    cfg: &ClassifyConfig,
) -> PropertyVerdict {
    if box_.is_degenerate() {
        return PropertyVerdict::inconclusive(Property::Strict, "degenerate box", cfg.seed);
    }
    let (lower, upper) = match class {
        MeanClass::LeftMean => (true, false),
        MeanClass::RightMean => (false, true),
        _ => (true, true),
    };
    let Ok(sampler) = box_.grid_sampler(cfg.grid_exp) else {
        return PropertyVerdict::inconclusive(Property::Strict, "unsampleable box", cfg.seed);
    };
    let mut rng = SeededRng::new(cfg.seed);
    let mut tested = 0u64;
    for _ in 0..cfg.budget {
        let n = sampler.sample_arity(&mut rng).max(2);
        let scaled = sampler.draw_scaled(&mut rng, n);
        if scaled.iter().all(|v| *v == scaled[0]) {
            continue;
        }
        let xs = sampler.f64_of(&scaled);
        let Some(v) = k.eval_f64(&xs) else { continue };
        tested += 1;
        let lo = xs.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let scale = 1f64.max(lo.abs()).max(hi.abs());
        let suspicious =
            (lower && v < lo + SCREEN_MARGIN * scale) || (upper && v > hi - SCREEN_MARGIN * scale);
        if !suspicious {
            continue;
        }
        let Ok(t) = sampler.tuple_of(&scaled) else {
            continue;
        };
        let Ok(v) = k.eval(&t) else { continue };
        if !v.is_exact() {
            // Rounding noise mimics attainment on near-constant tuples.
            let range = t.max_value().to_f64() - t.min_value().to_f64();
            if range < 1e-9 {
                continue;
            }
        }
        let attains_lower = matches!(
            v.cmp_value(&t.min_value()),
            std::cmp::Ordering::Less | std::cmp::Ordering::Equal
        );
        let attains_upper = matches!(
            v.cmp_value(&t.max_value()),
            std::cmp::Ordering::Greater | std::cmp::Ordering::Equal
        );
        if (lower && attains_lower) || (upper && attains_upper) {
            return PropertyVerdict::falsified(
                Property::Strict,
                VerdictWitness::tuple(&t),
                format!("value {} attains the envelope", v.render_plain()),
                tested,
                cfg.seed,
            );
        }
    }
    if tested == 0 {
        PropertyVerdict::inconclusive(Property::Strict, "no admissible samples", cfg.seed)
    } else {
        PropertyVerdict::holds(Property::Strict, tested, cfg.seed)
    }
}

/// Coordinatewise monotonicity on sampled ordered pairs.
pub fn check_monotone(k: &MeanFunction, box_: &DomainBox, cfg: &ClassifyConfig) -> PropertyVerdict {
    if box_.is_degenerate() {
        return PropertyVerdict::inconclusive(Property::Monotone, "degenerate box", cfg.seed);
    }
    let Ok(sampler) = box_.grid_sampler(cfg.grid_exp) else {
        return PropertyVerdict::inconclusive(Property::Monotone, "unsampleable box", cfg.seed);
    };
    let mut rng = SeededRng::new(cfg.seed);
    let mut tested = 0u64;
    for _ in 0..cfg.budget {
        let n = sampler.sample_arity(&mut rng).max(2);
        let scaled = sampler.draw_scaled(&mut rng, n);
        let top = sampler.max_scaled();
        let bumped: Vec<i64> = scaled
            .iter()
            .map(|v| {
                if rng.below(2) == 0 {
                    *v
                } else {
                    (v + rng.below(1_000_000) as i64).min(top)
                }
            })
            .collect();
        let (Some(kv), Some(ku)) = (
            k.eval_f64(&sampler.f64_of(&scaled)),
            k.eval_f64(&sampler.f64_of(&bumped)),
        ) else {
            continue;
        };
        tested += 1;
        if kv <= ku + SCREEN_MARGIN * 1f64.max(kv.abs()) {
            continue;
        }
        let (Ok(t), Ok(u)) = (sampler.tuple_of(&scaled), sampler.tuple_of(&bumped)) else {
            continue;
        };
        let (Ok(kv), Ok(ku)) = (k.eval(&t), k.eval(&u)) else {
            continue;
        };
        if !kv.le_with_tol(&ku, MEAN_LIKE_TOL) {
            return PropertyVerdict::falsified(
                Property::Monotone,
                VerdictWitness::pair(&t, &u),
                format!(
                    "{} > {} on an ordered pair",
                    kv.render_plain(),
                    ku.render_plain()
                ),
                tested,
                cfg.seed,
            );
        }
    }
    if tested == 0 {
        PropertyVerdict::inconclusive(Property::Monotone, "no admissible samples", cfg.seed)
    } else {
        PropertyVerdict::holds(Property::Monotone, tested, cfg.seed)
    }
}

/// Invariance under sampled permutations.
pub fn check_symmetric(
    k: &MeanFunction,
    box_: &DomainBox,
    cfg: &ClassifyConfig,
) -> PropertyVerdict {
    if box_.is_degenerate() {
        return PropertyVerdict::inconclusive(Property::Symmetric, "degenerate box", cfg.seed);
    }
    let Ok(sampler) = box_.grid_sampler(cfg.grid_exp) else {
        return PropertyVerdict::inconclusive(Property::Symmetric, "unsampleable box", cfg.seed);
    };
    let mut rng = SeededRng::new(cfg.seed);
    let mut tested = 0u64;
    for _ in 0..cfg.budget {
        let n = sampler.sample_arity(&mut rng).max(2);
        let scaled = sampler.draw_scaled(&mut rng, n);
        let mut perm = scaled.clone();
        for i in (1..perm.len()).rev() {
            let j = rng.below(i as u64 + 1) as usize;
            perm.swap(i, j);
        }
        let (Some(kv), Some(ku)) = (
            k.eval_f64(&sampler.f64_of(&scaled)),
            k.eval_f64(&sampler.f64_of(&perm)),
        ) else {
            continue;
        };
        tested += 1;
        if (kv - ku).abs() <= SCREEN_MARGIN * 1f64.max(kv.abs()) {
            continue;
        }
        let (Ok(t), Ok(u)) = (sampler.tuple_of(&scaled), sampler.tuple_of(&perm)) else {
            continue;
        };
        let (Ok(kv), Ok(ku)) = (k.eval(&t), k.eval(&u)) else {
            continue;
        };
        if !kv.approx_eq(&ku, MEAN_LIKE_TOL) {
            return PropertyVerdict::falsified(
                Property::Symmetric,
                VerdictWitness::pair(&t, &u),
                format!(
                    "{} vs {} after permutation",
                    kv.render_plain(),
                    ku.render_plain()
                ),
                tested,
                cfg.seed,
            );
        }
    }
    if tested == 0 {
        PropertyVerdict::inconclusive(Property::Symmetric, "no admissible samples", cfg.seed)
    } else {
        PropertyVerdict::holds(Property::Symmetric, tested, cfg.seed)
    }
}

fn diagonal_tuple(k: &MeanFunction, a: &Real) -> Option<RealTuple> {
    let n = match k.arity() {
        Arity::Fixed(n) => n,
        Arity::Variadic { min } => min.max(2),
    };
    RealTuple::new(vec![a.clone(); n]).ok()
}

/// `K(a, ..., a) = a` on sampled diagonal points.
pub fn check_reflexive(
    k: &MeanFunction,
    box_: &DomainBox,
    cfg: &ClassifyConfig,
) -> PropertyVerdict {
    if box_.is_degenerate() {
        return PropertyVerdict::inconclusive(Property::Reflexive, "degenerate box", cfg.seed);
    }
    let Ok(sampler) = box_.grid_sampler(cfg.grid_exp) else {
        return PropertyVerdict::inconclusive(Property::Reflexive, "unsampleable box", cfg.seed);
    };
    let mut rng = SeededRng::new(cfg.seed);
    let mut tested = 0u64;
    for _ in 0..cfg.budget.min(2000) {
        let a = Real::from_decimal(&sampler.coordinate(&mut rng));
        let Some(t) = diagonal_tuple(k, &a) else {
            continue;
        };
        if !k.in_domain(&t) {
            continue;
        }
        let Ok(v) = k.eval(&t) else { continue };
        tested += 1;
        if !v.approx_eq(&a, MEAN_LIKE_TOL) {
            return PropertyVerdict::falsified(
                Property::Reflexive,
                VerdictWitness::tuple(&t),
                format!(
                    "diagonal value {} at a = {}",
                    v.render_plain(),
                    a.render_plain()
                ),
                tested,
                cfg.seed,
            );
        }
    }
    if tested == 0 {
        PropertyVerdict::inconclusive(Property::Reflexive, "no admissible diagonals", cfg.seed)
    } else {
        PropertyVerdict::holds(Property::Reflexive, tested, cfg.seed)
    }
}

/// `b = K(a,...,a)` implies `K(b,...,b) = b`, on sampled diagonals.
pub fn check_semi_reflexive(
    k: &MeanFunction,
    box_: &DomainBox,
    cfg: &ClassifyConfig,
) -> PropertyVerdict {
    if box_.is_degenerate() {
        return PropertyVerdict::inconclusive(Property::SemiReflexive, "degenerate box", cfg.seed);
    }
    let Ok(sampler) = box_.grid_sampler(cfg.grid_exp) else {
        return PropertyVerdict::inconclusive(
            Property::SemiReflexive,
            "unsampleable box",
            cfg.seed,
        );
    };
    let mut rng = SeededRng::new(cfg.seed);
    let mut tested = 0u64;
    for _ in 0..cfg.budget.min(2000) {
        let a = Real::from_decimal(&sampler.coordinate(&mut rng));
        match semi_reflexive_defect(k, &a) {
            None => continue,
            Some((_, _, true)) => tested += 1,
            Some((t, detail, false)) => {
                return PropertyVerdict::falsified(
                    Property::SemiReflexive,
                    VerdictWitness::tuple(&t),
                    detail,
                    tested + 1,
                    cfg.seed,
                );
            }
        }
    }
    if tested == 0 {
        PropertyVerdict::inconclusive(Property::SemiReflexive, "no admissible diagonals", cfg.seed)
    } else {
        PropertyVerdict::holds(Property::SemiReflexive, tested, cfg.seed)
    }
}

/// Two-step diagonal evaluation; `None` when any step leaves the domain.
fn semi_reflexive_defect(k: &MeanFunction, a: &Real) -> Option<(RealTuple, String, bool)> {
    let t = diagonal_tuple(k, a)?;
    if !k.in_domain(&t) {
        return None;
    }
    let b = k.eval(&t).ok()?;
    let u = diagonal_tuple(k, &b)?;
    if !k.in_domain(&u) {
        return None;
    }
    let v = k.eval(&u).ok()?;
    let ok = v.approx_eq(&b, MEAN_LIKE_TOL);
    let detail = format!(
        "K(a..a) = {}, K(b..b) = {} at a = {}",
        b.render_plain(),
        v.render_plain(),
        a.render_plain()
    );
    Some((t, detail, ok))
}

/// Strong envelope: `K <= min` for right-flavored entries, `max <= K` for
/// left-flavored ones.
pub fn check_strong(
    k: &MeanFunction,
    class: MeanClass,
    box_: &DomainBox,
    cfg: &ClassifyConfig,
) -> PropertyVerdict {
    if box_.is_degenerate() {
        return PropertyVerdict::inconclusive(Property::Strong, "degenerate box", cfg.seed);
    }
    let upper_version = matches!(class, MeanClass::LeftMean);
    let Ok(sampler) = box_.grid_sampler(cfg.grid_exp) else {
        return PropertyVerdict::inconclusive(Property::Strong, "unsampleable box", cfg.seed);
    };
    let mut rng = SeededRng::new(cfg.seed);
    let mut tested = 0u64;
    for _ in 0..cfg.budget {
        let n = sampler.sample_arity(&mut rng).max(2);
        let scaled = sampler.draw_scaled(&mut rng, n);
        let xs = sampler.f64_of(&scaled);
        let Some(v) = k.eval_f64(&xs) else { continue };
        tested += 1;
        let lo = xs.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let scale = 1f64.max(lo.abs()).max(hi.abs());
        let fine = if upper_version {
            v >= hi + SCREEN_MARGIN * scale
        } else {
            v <= lo - SCREEN_MARGIN * scale
        };
        if fine {
            continue;
        }
        let Ok(t) = sampler.tuple_of(&scaled) else {
            continue;
        };
        let Ok(v) = k.eval(&t) else { continue };
        let ok = if upper_version {
            v.ge_with_tol(&t.max_value(), MEAN_LIKE_TOL)
        } else {
            v.le_with_tol(&t.min_value(), MEAN_LIKE_TOL)
        };
        if !ok {
            return PropertyVerdict::falsified(
                Property::Strong,
                VerdictWitness::tuple(&t),
                format!("value {} crosses the inner envelope", v.render_plain()),
                tested,
                cfg.seed,
            );
        }
    }
    if tested == 0 {
        PropertyVerdict::inconclusive(Property::Strong, "no admissible samples", cfg.seed)
    } else {
        PropertyVerdict::holds(Property::Strong, tested, cfg.seed)
    }
}

/// One-sided (or full) continuity probes at a single point: shrinking
/// perturbation grids, falsified when the two finest admissible scales both
/// stay away from K(t).
pub fn check_continuity_at(
    k: &MeanFunction,
    t: &RealTuple,
    side: ProbeSide,
    property: Property,
    seed: u64,
) -> PropertyVerdict {
    let Ok(base) = k.eval(t) else {
        return PropertyVerdict::inconclusive(property, "base point outside the domain", seed);
    };
    let base_f = base.to_f64();
    let xs = t.to_f64_vec();
    let n = xs.len();
    let mut per_scale: Vec<Option<f64>> = Vec::new();
    for &scale in PROBE_SCALES.iter() {
        let mut dirs: Vec<Vec<f64>> = Vec::new();
        let signs: &[f64] = match side {
            ProbeSide::Left => &[-1.0],
            ProbeSide::Right => &[1.0],
            ProbeSide::Full => &[-1.0, 1.0],
        };
        for &sgn in signs {
            dirs.push(vec![sgn; n]);
            for i in 0..n {
                let mut d = vec![0.0; n];
                d[i] = sgn;
                dirs.push(d);
            }
        }
        let mut worst: Option<f64> = None;
        for d in dirs {
            let probe: Vec<f64> = xs.iter().zip(&d).map(|(x, di)| x + di * scale).collect();
            if let Some(v) = k.eval_f64(&probe) {
                let diff = (v - base_f).abs();
                worst = Some(worst.map_or(diff, |w: f64| w.max(diff)));
            }
        }
        per_scale.push(worst);
    }
    let fine: Vec<f64> = per_scale.iter().rev().flatten().cloned().take(2).collect();
    if fine.len() < 2 {
        return PropertyVerdict::inconclusive(
            property,
            "no admissible probes at fine scales",
            seed,
        );
    }
    if fine.iter().all(|d| *d > CONTINUITY_TOL) {
        PropertyVerdict::falsified(
            property,
            VerdictWitness::tuple(t),
            format!("residual {:.3e} at the finest scales", fine[0]),
            PROBE_SCALES.len() as u64,
            seed,
        )
    } else {
        PropertyVerdict::holds(property, PROBE_SCALES.len() as u64, seed)
    }
}

/// Continuity at sampled points; one-sided checks also probe points snapped
/// to coarse decimal grids, where truncation discontinuities live.
pub fn check_continuity_sampled(
    k: &MeanFunction,
    box_: &DomainBox,
    side: ProbeSide,
    property: Property,
    cfg: &ClassifyConfig,
) -> PropertyVerdict {
    if box_.is_degenerate() {
        return PropertyVerdict::inconclusive(property, "degenerate box", cfg.seed);
    }
    let Ok(sampler) = box_.grid_sampler(cfg.grid_exp) else {
        return PropertyVerdict::inconclusive(property, "unsampleable box", cfg.seed);
    };
    let mut rng = SeededRng::new(cfg.seed);
    let mut tested = 0u64;
    let points = 12.min(cfg.budget);
    let mut candidates: Vec<RealTuple> = Vec::new();
    for _ in 0..points {
        if let Some(t) = sample_in_domain(k, &sampler, &mut rng) {
            candidates.push(t);
        }
    }
    if side != ProbeSide::Full {
        // Lattice-snapped companions for the one-sided checks.
        let snapped: Vec<RealTuple> = candidates
            .iter()
            .take(4)
            .filter_map(|t| {
                for g in [-1i64, 0, 1, 2, 3] {
                    let s = t.map(|v| v.floor_at_scale(g));
                    if box_.contains_tuple(&s) && k.in_domain(&s) {
                        return Some(s);
                    }
                }
                None
            })
            .collect();
        candidates.extend(snapped);
    }
    for t in &candidates {
        let verdict = check_continuity_at(k, t, side, property, cfg.seed);
        match verdict.status {
            VerdictStatus::Falsified => return verdict,
            VerdictStatus::HoldsOnSample => tested += 1,
            VerdictStatus::Inconclusive => {}
        }
    }
    if tested == 0 {
        PropertyVerdict::inconclusive(property, "no conclusive probe points", cfg.seed)
    } else {
        PropertyVerdict::holds(property, tested, cfg.seed)
    }
}

/// Punctured-diagonal probes around `(a, ..., a)`: the limit must be `a`
/// itself.
pub fn check_mean_continuity_at(k: &MeanFunction, a: &Real, seed: u64) -> PropertyVerdict {
    let property = Property::MeanContinuous;
    let Some(t0) = diagonal_tuple(k, a) else {
        return PropertyVerdict::inconclusive(property, "arity unavailable", seed);
    };
    let n = t0.len();
    let a_f = a.to_f64();
    let mut per_scale: Vec<Option<f64>> = Vec::new();
    for &scale in PROBE_SCALES.iter() {
        let mut patterns: Vec<Vec<f64>> = Vec::new();
        let mut up = vec![a_f + scale; n];
        up[n - 1] = a_f - scale;
        patterns.push(up);
        let mut one = vec![a_f; n];
        one[0] = a_f + scale;
        patterns.push(one);
        let mut low = vec![a_f; n];
        low[n - 1] = a_f - scale;
        patterns.push(low);
        let mut skew = vec![a_f + 0.5 * scale; n];
        skew[0] = a_f - scale;
        patterns.push(skew);
        let mut worst: Option<f64> = None;
        for p in patterns {
            if let Some(v) = k.eval_f64(&p) {
                let diff = (v - a_f).abs();
                worst = Some(worst.map_or(diff, |w: f64| w.max(diff)));
            }
        }
        per_scale.push(worst);
    }
    let fine: Vec<f64> = per_scale.iter().rev().flatten().cloned().take(2).collect();
    if fine.len() < 2 {
        return PropertyVerdict::inconclusive(
            property,
            "no admissible probes near the diagonal",
            seed,
        );
    }
    if fine.iter().all(|d| *d > CONTINUITY_TOL) {
        PropertyVerdict::falsified(
            property,
            VerdictWitness::tuple(&t0),
            format!("punctured limit misses a by {:.3e}", fine[0]),
            PROBE_SCALES.len() as u64,
            seed,
        )
    } else {
        PropertyVerdict::holds(property, PROBE_SCALES.len() as u64, seed)
    }
}

pub fn check_mean_continuity_sampled(
    k: &MeanFunction,
    box_: &DomainBox,
    cfg: &ClassifyConfig,
) -> PropertyVerdict {
    if box_.is_degenerate() {
        return PropertyVerdict::inconclusive(Property::MeanContinuous, "degenerate box", cfg.seed);
    }
    let Ok(sampler) = box_.grid_sampler(cfg.grid_exp) else {
        return PropertyVerdict::inconclusive(
            Property::MeanContinuous,
            "unsampleable box",
            cfg.seed,
        );
    };
    let mut rng = SeededRng::new(cfg.seed);
    let mut tested = 0u64;
    for _ in 0..12.min(cfg.budget) {
        let a = sampler.coordinate(&mut rng);
        let verdict = check_mean_continuity_at(k, &Real::from_decimal(&a), cfg.seed);
        match verdict.status {
            VerdictStatus::Falsified => return verdict,
            VerdictStatus::HoldsOnSample => tested += 1,
            VerdictStatus::Inconclusive => {}
        }
    }
    if tested == 0 {
        PropertyVerdict::inconclusive(
            Property::MeanContinuous,
            "no conclusive diagonals",
            cfg.seed,
        )
    } else {
        PropertyVerdict::holds(Property::MeanContinuous, tested, cfg.seed)
    }
}

/// One-sided fixed-argument iteration `a_{n+1} = K(a_n, b)` (right flavor)
/// or `b_{n+1} = K(a, b_n)` (left flavor) must be monotone for every start.
/// Iterates leaving the box stop the sample, per the range requirement.
pub fn check_quasi_monotone(
    k: &MeanFunction,
    class: MeanClass,
    box_: &DomainBox,
    cfg: &ClassifyConfig,
    max_iter: usize,
) -> PropertyVerdict {
    let property = Property::QuasiMonotone;
    if box_.is_degenerate() {
        return PropertyVerdict::inconclusive(property, "degenerate box", cfg.seed);
    }
    let right_flavor = !matches!(class, MeanClass::LeftMean);
    let Ok(sampler) = box_.grid_sampler(cfg.grid_exp) else {
        return PropertyVerdict::inconclusive(property, "unsampleable box", cfg.seed);
    };
    let mut rng = SeededRng::new(cfg.seed);
    let mut conclusive = 0u64;
    for _ in 0..cfg.budget.min(400) {
        let x = sampler.coordinate(&mut rng);
        let y = sampler.coordinate(&mut rng);
        let (a, b) = if x <= y { (x, y) } else { (y, x) };
        let a = Real::from_decimal(&a);
        let b = Real::from_decimal(&b);
        let mut cur = if right_flavor { a.clone() } else { b.clone() };
        let mut ups = false;
        let mut downs = false;
        let mut steps = 0usize;
        for _ in 0..max_iter {
            let t = if right_flavor {
                RealTuple::new(vec![cur.clone(), b.clone()])
            } else {
                RealTuple::new(vec![a.clone(), cur.clone()])
            };
            let Ok(t) = t else { break };
            if !k.in_domain(&t) {
                break;
            }
            let Ok(next) = k.eval(&t) else { break };
            let next = next.clamp_precision(192);
            if !box_.contains_value(&next) {
                break;
            }
            let d = next.sub(&cur).to_f64();
            if d > cfg.tol {
                ups = true;
            } else if d < -cfg.tol {
                downs = true;
            } else {
                steps += 1;
                break;
            }
            cur = next;
            steps += 1;
        }
        if steps < 3 {
            continue;
        }
        conclusive += 1;
        if ups && downs {
            let w = RealTuple::new(vec![a, b]).expect("two entries");
            return PropertyVerdict::falsified(
                property,
                VerdictWitness::tuple(&w),
                "iteration both rises and falls".to_string(),
                conclusive,
                cfg.seed,
            );
        }
    }
    if conclusive == 0 {
        PropertyVerdict::inconclusive(property, "all iterations too short", cfg.seed)
    } else {
        PropertyVerdict::holds(property, conclusive, cfg.seed)
    }
}

/// Injectivity of `x -> K(x, b)` (right) or `y -> K(a, y)` (left) on an
/// evaluation grid.
pub fn check_injective(
    k: &MeanFunction,
    right_flavor: bool,
    fixed: &ExactDecimal,
    box_: &DomainBox,
    grid: usize,
) -> PropertyVerdict {
    let property = if right_flavor {
        Property::RightInjective
    } else {
        Property::LeftInjective
    };
    let Some((lo, hi)) = box_.finite_bounds() else {
        return PropertyVerdict::inconclusive(property, "needs a finite box", 0);
    };
    let fixed_r = Real::from_decimal(fixed);
    let (from, to) = if right_flavor {
        (lo.to_f64(), fixed.to_f64())
    } else {
        (fixed.to_f64(), hi.to_f64())
    };
    if from >= to || from.is_nan() || to.is_nan() {
        return PropertyVerdict::inconclusive(property, "empty grid interval", 0);
    }
    let mut values: Vec<(f64, f64)> = Vec::new();
    for i in 0..=grid {
        let x = from + (to - from) * i as f64 / grid as f64;
        let t = if right_flavor {
            RealTuple::from_f64(&[x, fixed_r.to_f64()])
        } else {
            RealTuple::from_f64(&[fixed_r.to_f64(), x])
        };
        let Ok(t) = t else { continue };
        if !k.in_domain(&t) {
            continue;
        }
        if let Ok(v) = k.eval(&t) {
            values.push((x, v.to_f64()));
        }
    }
    if values.len() < 2 {
        return PropertyVerdict::inconclusive(property, "grid left the domain", 0);
    }
    let mut sorted = values.clone();
    sorted.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal));
    for w in sorted.windows(2) {
        let ((x1, v1), (x2, v2)) = (w[0], w[1]);
        if x1 != x2 && (v1 - v2).abs() <= 1e-12 * 1f64.max(v1.abs()) {
            let (ta, tb) = if right_flavor {
                (
                    RealTuple::from_f64(&[x1, fixed_r.to_f64()]).expect("pair"),
                    RealTuple::from_f64(&[x2, fixed_r.to_f64()]).expect("pair"),
                )
            } else {
                (
                    RealTuple::from_f64(&[fixed_r.to_f64(), x1]).expect("pair"),
                    RealTuple::from_f64(&[fixed_r.to_f64(), x2]).expect("pair"),
                )
            };
            return PropertyVerdict::falsified(
                property,
                VerdictWitness::pair(&ta, &tb),
                format!("equal values {v1} at distinct arguments"),
                values.len() as u64,
                0,
            );
        }
    }
    PropertyVerdict::holds(property, values.len() as u64, 0)
}

#[derive(Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FixedSet {
    Point(f64),
    Interval(f64, f64),
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Gap {
    pub lo: f64,
    pub hi: f64,
    pub sign: i8,
}

/// Fixed-point structure of `x -> K(x, b)` on the box interval: the fixed
/// set, the open gaps between its pieces, each gap's constant sign, and
/// whether gaps whose images meet carry matching signs.
#[derive(Clone, Debug, Serialize)]
pub struct FixedPointDecomposition {
    pub b: f64,
    pub fixed: Vec<FixedSet>,
    pub gaps: Vec<Gap>,
    pub sign_rule_holds: bool,
}

pub fn fixed_point_decomposition(
    k: &MeanFunction,
    b: &ExactDecimal,
    box_: &DomainBox,
    grid: usize,
) -> Result<FixedPointDecomposition, MeanError> {
    let (lo_d, hi_d) = box_
        .finite_bounds()
        .ok_or_else(|| MeanError::Construction("needs a finite box".into()))?;
    let (lo, hi) = (lo_d.to_f64(), hi_d.to_f64());
    let b_f = b.to_f64();
    let g = |x: f64| -> Option<f64> { k.eval_f64(&[x, b_f]).map(|v| v - x) };
    let eps = 1e-9;
    let step = (hi - lo) / grid as f64;
    let mut samples: Vec<(f64, f64)> = Vec::with_capacity(grid + 1);
    for i in 0..=grid {
        let x = lo + step * i as f64;
        match g(x) {
            Some(v) => samples.push((x, v)),
            None => continue,
        }
    }
    if samples.len() < 2 {
        return Err(MeanError::EmptyDomain);
    }
    // Zero runs become intervals or isolated points; sign changes between
    // nonzero neighbors are bisected to isolated roots.
    let mut fixed: Vec<FixedSet> = Vec::new();
    let mut i = 0usize;
    while i < samples.len() {
        if samples[i].1.abs() <= eps {
            let start = i;
            while i + 1 < samples.len() && samples[i + 1].1.abs() <= eps {
                i += 1;
            }
            if i > start {
                fixed.push(FixedSet::Interval(samples[start].0, samples[i].0));
            } else {
                fixed.push(FixedSet::Point(samples[start].0));
            }
        } else if i + 1 < samples.len()
            && samples[i + 1].1.abs() > eps
            && samples[i].1 * samples[i + 1].1 < 0.0
        {
            let root = bisect_root(&g, samples[i].0, samples[i + 1].0);
            fixed.push(FixedSet::Point(root));
        }
        i += 1;
    }
    // Open gaps between consecutive fixed pieces, tagged by sign.
    let mut boundaries: Vec<(f64, f64)> = Vec::new();
    let mut cursor = lo;
    for f in &fixed {
        let (a, b2) = match f {
            FixedSet::Point(x) => (*x, *x),
            FixedSet::Interval(a, b2) => (*a, *b2),
        };
        if a > cursor + step * 0.5 {
            boundaries.push((cursor, a));
        }
        cursor = cursor.max(b2);
    }
    if cursor < hi - step * 0.5 {
        boundaries.push((cursor, hi));
    }
    let mut gaps = Vec::new();
    for (a, b2) in boundaries {
        let mut sign = 0i8;
        let mut consistent = true;
        for frac in [0.25, 0.5, 0.75] {
            let x = a + (b2 - a) * frac;
            if let Some(v) = g(x) {
                let s = if v > 0.0 { 1 } else { -1 };
                if sign == 0 {
                    sign = s;
                } else if sign != s {
                    consistent = false;
                }
            }
        }
        if !consistent {
            sign = 0;
        }
        gaps.push(Gap {
            lo: a,
            hi: b2,
            sign,
        });
    }
    // If the image of a gap meets another gap, their signs must match.
    let mut sign_rule_holds = true;
    for gi in &gaps {
        let mut img_lo = f64::INFINITY;
        let mut img_hi = f64::NEG_INFINITY;
        for j in 1..32 {
            let x = gi.lo + (gi.hi - gi.lo) * j as f64 / 32.0;
            if let Some(v) = k.eval_f64(&[x, b_f]) {
                img_lo = img_lo.min(v);
                img_hi = img_hi.max(v);
            }
        }
        if img_lo > img_hi {
            continue;
        }
        for gj in &gaps {
            if img_hi > gj.lo
                && img_lo < gj.hi
                && gi.sign != 0
                && gj.sign != 0
                && gi.sign != gj.sign
            {
                sign_rule_holds = false;
            }
        }
    }
    Ok(FixedPointDecomposition {
        b: b_f,
        fixed,
        gaps,
        sign_rule_holds,
    })
}

fn bisect_root(g: &impl Fn(f64) -> Option<f64>, mut lo: f64, mut hi: f64) -> f64 {
    let f_lo = g(lo).unwrap_or(0.0);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        let v = g(mid).unwrap_or(0.0);
        if (hi - lo).abs() <= 1e-10 {
            break;
        }
        if (v > 0.0) == (f_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

// ---------------------------------------------------------------------------
// Declared-vs-tested matrix
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expectation {
    Holds,
    Falsified,
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixRow {
    pub property: Property,
    pub expected: Expectation,
    pub status: VerdictStatus,
    pub confirmed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<VerdictWitness>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub schema: &'static str,
    pub id: String,
    pub budget: u64,
    pub seed: u64,
    pub verdicts: Vec<PropertyVerdict>,
    pub matrix: Vec<MatrixRow>,
    pub all_confirmed: bool,
}

impl ClassificationReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!(self)
    }
}

fn row_from_verdict(property: Property, expected: Expectation, v: PropertyVerdict) -> MatrixRow {
    let confirmed = match expected {
        Expectation::Holds => v.status == VerdictStatus::HoldsOnSample,
        Expectation::Falsified => v.status == VerdictStatus::Falsified,
    };
    MatrixRow {
        property,
        expected,
        status: v.status,
        confirmed,
        witness: v.witness,
        detail: v.detail,
    }
}

fn run_positive(entry: &CatalogEntry, property: Property, cfg: &ClassifyConfig) -> PropertyVerdict {
    let k = &entry.mean;
    let b = &entry.default_box;
    match property {
        Property::LeftMean => check_left_mean(k, b, cfg),
        Property::RightMean => check_right_mean(k, b, cfg),
        Property::Mean => check_mean(k, b, cfg),
        Property::Strict => check_strict(k, entry.declared_class, b, cfg),
        Property::Monotone => check_monotone(k, b, cfg),
        Property::Symmetric => check_symmetric(k, b, cfg),
        Property::Reflexive => check_reflexive(k, b, cfg),
        Property::SemiReflexive => check_semi_reflexive(k, b, cfg),
        Property::Strong => check_strong(k, entry.declared_class, b, cfg),
        Property::Continuous => check_continuity_sampled(k, b, ProbeSide::Full, property, cfg),
        Property::LeftContinuous => check_continuity_sampled(k, b, ProbeSide::Left, property, cfg),
        Property::RightContinuous => {
            check_continuity_sampled(k, b, ProbeSide::Right, property, cfg)
        }
        Property::MeanContinuous => check_mean_continuity_sampled(k, b, cfg),
        Property::QuasiMonotone => check_quasi_monotone(k, entry.declared_class, b, cfg, 64),
        other => PropertyVerdict::inconclusive(other, "no sampled checker", cfg.seed),
    }
}

fn run_negation(
    entry: &CatalogEntry,
    property: Property,
    witness: &Witness,
    cfg: &ClassifyConfig,
) -> PropertyVerdict {
    let k = &entry.mean;
    match witness {
        Witness::Search => run_positive(entry, property, cfg),
        Witness::Tuple(t) => {
            let Ok(v) = k.eval(t) else {
                return PropertyVerdict::inconclusive(
                    property,
                    "stored witness left the domain",
                    cfg.seed,
                );
            };
            let violated = match property {
                Property::LeftMean => !v.ge_with_tol(&t.min_value(), MEAN_LIKE_TOL),
                Property::RightMean => !v.le_with_tol(&t.max_value(), MEAN_LIKE_TOL),
                Property::Mean => {
                    !v.ge_with_tol(&t.min_value(), MEAN_LIKE_TOL)
                        || !v.le_with_tol(&t.max_value(), MEAN_LIKE_TOL)
                }
                Property::Strict => {
                    v.cmp_value(&t.min_value()) != std::cmp::Ordering::Greater
                        || v.cmp_value(&t.max_value()) != std::cmp::Ordering::Less
                }
                Property::Strong => !v.le_with_tol(&t.min_value(), MEAN_LIKE_TOL),
                _ => false,
            };
            if violated {
                PropertyVerdict::falsified(
                    property,
                    VerdictWitness::tuple(t),
                    format!("value {}", v.render_plain()),
                    1,
                    cfg.seed,
                )
            } else {
                PropertyVerdict::holds(property, 1, cfg.seed)
            }
        }
        Witness::Pair(t, u) => {
            let (Ok(vt), Ok(vu)) = (k.eval(t), k.eval(u)) else {
                return PropertyVerdict::inconclusive(
                    property,
                    "stored witness left the domain",
                    cfg.seed,
                );
            };
            let ordered = t
                .values()
                .iter()
                .zip(u.values())
                .all(|(a, b)| a.cmp_value(b) != std::cmp::Ordering::Greater);
            if ordered && !vt.le_with_tol(&vu, MEAN_LIKE_TOL) {
                PropertyVerdict::falsified(
                    property,
                    VerdictWitness::pair(t, u),
                    format!("{} > {}", vt.render_plain(), vu.render_plain()),
                    1,
                    cfg.seed,
                )
            } else {
                PropertyVerdict::holds(property, 1, cfg.seed)
            }
        }
        Witness::Diagonal(a) => {
            let a = Real::from_decimal(a);
            match property {
                Property::Reflexive => {
                    let Some(t) = diagonal_tuple(k, &a) else {
                        return PropertyVerdict::inconclusive(
                            property,
                            "arity unavailable",
                            cfg.seed,
                        );
                    };
                    match k.eval(&t) {
                        Ok(v) if !v.approx_eq(&a, MEAN_LIKE_TOL) => PropertyVerdict::falsified(
                            property,
                            VerdictWitness::tuple(&t),
                            format!("diagonal value {}", v.render_plain()),
                            1,
                            cfg.seed,
                        ),
                        Ok(_) => PropertyVerdict::holds(property, 1, cfg.seed),
                        Err(_) => PropertyVerdict::inconclusive(
                            property,
                            "diagonal outside domain",
                            cfg.seed,
                        ),
                    }
                }
                Property::SemiReflexive => match semi_reflexive_defect(k, &a) {
                    Some((t, detail, false)) => PropertyVerdict::falsified(
                        property,
                        VerdictWitness::tuple(&t),
                        detail,
                        1,
                        cfg.seed,
                    ),
                    Some((_, _, true)) => PropertyVerdict::holds(property, 1, cfg.seed),
                    None => {
                        PropertyVerdict::inconclusive(property, "diagonal outside domain", cfg.seed)
                    }
                },
                Property::MeanContinuous => check_mean_continuity_at(k, &a, cfg.seed),
                other => {
                    PropertyVerdict::inconclusive(other, "diagonal witness unsupported", cfg.seed)
                }
            }
        }
        Witness::Point(t) => {
            let side = match property {
                Property::LeftContinuous => ProbeSide::Left,
                Property::RightContinuous => ProbeSide::Right,
                _ => ProbeSide::Full,
            };
            check_continuity_at(k, t, side, property, cfg.seed)
        }
    }
}

fn class_rows(entry: &CatalogEntry, cfg: &ClassifyConfig) -> Vec<MatrixRow> {
    let mut rows = Vec::new();
    match entry.declared_class {
        MeanClass::Mean => {
            rows.push(row_from_verdict(
                Property::Mean,
                Expectation::Holds,
                check_mean(&entry.mean, &entry.default_box, cfg),
            ));
        }
        MeanClass::LeftMean => rows.push(row_from_verdict(
            Property::LeftMean,
            Expectation::Holds,
            check_left_mean(&entry.mean, &entry.default_box, cfg),
        )),
        MeanClass::RightMean => rows.push(row_from_verdict(
            Property::RightMean,
            Expectation::Holds,
            check_right_mean(&entry.mean, &entry.default_box, cfg),
        )),
        MeanClass::AQuasi | MeanClass::MQuasi | MeanClass::None => {}
    }
    // Documented envelope-escape bounds for the not-quite-quasi entries.
    match (&entry.quasi_spec, entry.declared_class) {
        (Some(QuasiSpec::Additive(bound)), _) => {
            let est = a_quasi_constant(
                &entry.mean,
                &entry.default_box,
                &SearchConfig::new(cfg.budget.min(4000), cfg.seed),
            );
            let (confirmed, detail, status) = match est {
                Ok(e) => {
                    let ok = !e.diverging && e.lower_bound <= bound.to_f64() + 1e-9;
                    (
                        ok,
                        format!(
                            "witnessed {} against bound {}",
                            e.lower_bound,
                            bound.render_plain()
                        ),
                        if ok {
                            VerdictStatus::HoldsOnSample
                        } else {
                            VerdictStatus::Falsified
                        },
                    )
                }
                Err(e) => (false, e.to_string(), VerdictStatus::Inconclusive),
            };
            rows.push(MatrixRow {
                property: Property::AQuasiBound,
                expected: Expectation::Holds,
                status,
                confirmed,
                witness: None,
                detail,
            });
        }
        (Some(QuasiSpec::MultiplicativePerArity), _) => {
            let mut ok = true;
            let mut details = Vec::new();
            for n in [2usize, 3, 4] {
                let restricted = entry.mean.restrict_arity(n);
                let mut b = entry.default_box.clone();
                b.arity = Arity::Fixed(n);
                match m_quasi_constant(
                    &restricted,
                    &b,
                    &SearchConfig::new(cfg.budget.min(2000), cfg.seed),
                ) {
                    Ok(e) => {
                        let bound = 1.0 / (n as f64 - 1.0);
                        if e.diverging || e.lower_bound > bound + 1e-9 {
                            ok = false;
                        }
                        details.push(format!("n={n}: {} <= {}", e.lower_bound, bound));
                    }
                    Err(err) => {
                        ok = false;
                        details.push(format!("n={n}: {err}"));
                    }
                }
            }
            rows.push(MatrixRow {
                property: Property::MQuasiBound,
                expected: Expectation::Holds,
                status: if ok {
                    VerdictStatus::HoldsOnSample
                } else {
                    VerdictStatus::Falsified
                },
                confirmed: ok,
                witness: None,
                detail: details.join("; "),
            });
        }
        (None, _) => {}
    }
    rows
}

/// Tests every declared property and every declared negation of an entry.
pub fn classify_entry(entry: &CatalogEntry, cfg: &ClassifyConfig) -> ClassificationReport {
    let mut matrix = class_rows(entry, cfg);
    for p in &entry.declared_properties {
        matrix.push(row_from_verdict(
            *p,
            Expectation::Holds,
            run_positive(entry, *p, cfg),
        ));
    }
    for (p, w) in &entry.declared_negations {
        matrix.push(row_from_verdict(
            *p,
            Expectation::Falsified,
            run_negation(entry, *p, w, cfg),
        ));
    }
    let all_confirmed = matrix.iter().all(|r| r.confirmed);
    ClassificationReport {
        schema: "quasimean/1",
        id: entry.id.clone(),
        budget: cfg.budget,
        seed: cfg.seed,
        verdicts: Vec::new(),
        matrix,
        all_confirmed,
    }
}

/// The full battery: every standard checker regardless of declarations,
/// plus the declared-vs-tested matrix.
pub fn classify_full(entry: &CatalogEntry, cfg: &ClassifyConfig) -> ClassificationReport {
    let k = &entry.mean;
    let b = &entry.default_box;
    let mut verdicts = vec![
        check_left_mean(k, b, cfg),
        check_right_mean(k, b, cfg),
        check_mean(k, b, cfg),
        check_strict(k, entry.declared_class, b, cfg),
        check_monotone(k, b, cfg),
        check_symmetric(k, b, cfg),
        check_reflexive(k, b, cfg),
        check_semi_reflexive(k, b, cfg),
        check_strong(k, entry.declared_class, b, cfg),
        check_continuity_sampled(k, b, ProbeSide::Full, Property::Continuous, cfg),
        check_continuity_sampled(k, b, ProbeSide::Left, Property::LeftContinuous, cfg),
        check_continuity_sampled(k, b, ProbeSide::Right, Property::RightContinuous, cfg),
        check_mean_continuity_sampled(k, b, cfg),
    ];
    if matches!(k.arity(), Arity::Fixed(2))
        || matches!(k.arity(), Arity::Variadic { min } if min <= 2)
    {
        verdicts.push(check_quasi_monotone(k, entry.declared_class, b, cfg, 64));
    }
    let mut report = classify_entry(entry, cfg);
    report.verdicts = verdicts;
    report
}
