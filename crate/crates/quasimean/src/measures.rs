//! Numerical estimators for how far a function is from being a mean: the
//! absolute and range-normalized envelope-defect suprema, the violation-set
//! volume fraction, and the additive/multiplicative envelope constants.
//!
//! Suprema are estimated from below: seeded uniform sampling, an optional
//! deterministic hill-climb around the best witness, and exact replay of the
//! stored witness so every reported bound is reproducible.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::MeanError;
use crate::mean::MeanFunction;
use crate::real::{pow10_bigint, ExactDecimal, Real};
use crate::rng::SeededRng;
use crate::tuple::{DomainBox, RealTuple};

/// Running suprema beyond this are reported as diverging; sampling cannot
/// certify an infinite supremum, the flag records strong evidence.
pub const DIVERGENCE_THRESHOLD: f64 = 1e6;

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub budget: u64,
    pub seed: u64,
    /// Run the deterministic coordinate/diagonal refinement pass.
    pub refine: bool,
    /// Decimal grid for stored witnesses: coordinates are snapped to
    /// multiples of 10^-grid_exp and re-verified exactly.
    pub grid_exp: i64,
}

impl SearchConfig {
    pub fn new(budget: u64, seed: u64) -> Self {
        SearchConfig {
            budget,
            seed,
            refine: true,
            grid_exp: 12,
        }
    }

    pub fn scan_only(budget: u64, seed: u64) -> Self {
        SearchConfig {
            refine: false,
            ..Self::new(budget, seed)
        }
    }
}

/// One side of a defect supremum: the witness tuple and the exact defect it
/// replays to.
#[derive(Clone, Debug, Serialize)]
pub struct SideWitness {
    #[serde(serialize_with = "ser_tuple")]
    pub tuple: RealTuple,
    pub defect: f64,
}

fn ser_tuple<S: serde::Serializer>(t: &RealTuple, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(t.len()))?;
    for v in t.values() {
        seq.serialize_element(&v.render_plain())?;
    }
    seq.end()
}

/// Largest witnessed defect value with its witnesses.
#[derive(Clone, Debug, Serialize)]
pub struct SupEstimate {
    pub measure: String,
    pub lower_bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub above_witness: Option<SideWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub below_witness: Option<SideWitness>,
    pub samples: u64,
    pub seed: u64,
    pub diverging: bool,
}

impl SupEstimate {
    /// Re-evaluates the stored witnesses; true when each side's defect is
    /// reproduced (exactly for exact functions, to f64 round-off otherwise).
    pub fn replay(&self, k: &MeanFunction, objective: Objective) -> bool {
        let check = |w: &Option<SideWitness>, side: Side| -> bool {
            match w {
                None => true,
                Some(sw) => match objective.eval_real(k, &sw.tuple, side) {
                    Some(v) => (v.to_f64() - sw.defect).abs() <= 1e-9 * 1f64.max(sw.defect.abs()),
                    None => false,
                },
            }
        };
        check(&self.above_witness, Side::Above) && check(&self.below_witness, Side::Below)
    }
}

/// Monte Carlo estimate of a proportion with its binomial confidence
/// half-width (normal approximation, z = 1.96).
#[derive(Clone, Debug, Serialize)]
pub struct MeasureEstimate {
    pub measure: String,
    pub value: f64,
    pub half_width: f64,
    pub samples: u64,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Above,
    Below,
}

/// Which defect functional a supremum search maximizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Objective {
    /// `(K - max)+` and `(min - K)+` separately, summed in the bound.
    Absolute,
    /// The same defects normalized by `max - min`; constant tuples skipped.
    RangeNormalized,
    /// `max((K - max)+, (min - K)+)`: the additive envelope constant.
    Additive,
    /// The additive defect normalized by `max|a_i|`.
    Multiplicative,
}

impl Objective {
    fn eval_f64(&self, k: &MeanFunction, xs: &[f64], side: Side) -> Option<f64> {
        let v = k.eval_f64(xs)?;
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        let mut absmax = 0.0f64;
        for &x in xs {
            lo = lo.min(x);
            hi = hi.max(x);
            absmax = absmax.max(x.abs());
        }
        let raw = match side {
            Side::Above => (v - hi).max(0.0),
            Side::Below => (lo - v).max(0.0),
        };
        match self {
            Objective::Absolute | Objective::Additive => Some(raw),
            Objective::RangeNormalized => {
                let range = hi - lo;
                if range <= 0.0 {
                    None
                } else {
                    Some(raw / range)
                }
            }
            Objective::Multiplicative => {
                if absmax <= 0.0 {
                    None
                } else {
                    Some(raw / absmax)
                }
            }
        }
    }

    /// Exact-aware evaluation used when replaying a stored witness.
    pub fn eval_real(&self, k: &MeanFunction, t: &RealTuple, side: Side) -> Option<Real> {
        let v = k.eval(t).ok()?;
        let lo = t.min_value();
        let hi = t.max_value();
        let raw = match side {
            Side::Above => v.sub(&hi).positive_part(),
            Side::Below => lo.sub(&v).positive_part(),
        };
        match self {
            Objective::Absolute | Objective::Additive => Some(raw),
            Objective::RangeNormalized => {
                let range = hi.sub(&lo);
                if range == Real::zero() {
                    None
                } else {
                    raw.div(&range).ok()
                }
            }
            Objective::Multiplicative => {
                let absmax = t
                    .values()
                    .iter()
                    .fold(Real::zero(), |acc, v| acc.max_value(&v.abs()));
                if absmax == Real::zero() {
                    None
                } else {
                    raw.div(&absmax).ok()
                }
            }
        }
    }
}

struct SideBest {
    value: f64,
    point: Vec<f64>,
}

impl SideBest {
    fn new() -> Self {
        SideBest {
            value: 0.0,
            point: Vec::new(),
        }
    }

    fn offer(&mut self, value: f64, point: &[f64]) {
        if value > self.value {
            self.value = value;
            self.point = point.to_vec();
        }
    }
}

fn sample_point(
    rng: &mut SeededRng,
    box_: &DomainBox,
    n: usize,
    lo: f64,
    hi: f64,
    near_diagonal: bool,
) -> Vec<f64> {
    let _ = box_;
    if near_diagonal {
        let center = rng.range_f64(lo, hi);
        let spread = 10f64.powf(-(1.0 + 8.0 * rng.unit_f64()));
        (0..n)
            .map(|_| (center + spread * (rng.unit_f64() - 0.5) * 2.0).clamp(lo, hi))
            .collect()
    } else {
        (0..n).map(|_| rng.range_f64(lo, hi)).collect()
    }
}

const GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Golden-section maximization over `[lo, hi]`; returns the best evaluated
/// point, including the endpoints and the start. Unevaluable points lose.
fn golden_max(f: impl Fn(f64) -> Option<f64>, lo: f64, hi: f64, iters: usize) -> (f64, f64) {
    let g = |x: f64| f(x).unwrap_or(f64::NEG_INFINITY);
    let mut best = (lo, g(lo));
    let consider = |best: &mut (f64, f64), x: f64, v: f64| {
        if v > best.1 {
            *best = (x, v);
        }
    };
    consider(&mut best, hi, g(hi));
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - GOLDEN * (b - a);
    let mut x2 = a + GOLDEN * (b - a);
    let mut f1 = g(x1);
    let mut f2 = g(x2);
    consider(&mut best, x1, f1);
    consider(&mut best, x2, f2);
    for _ in 0..iters {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + GOLDEN * (b - a);
            f2 = g(x2);
            consider(&mut best, x2, f2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - GOLDEN * (b - a);
            f1 = g(x1);
            consider(&mut best, x1, f1);
        }
    }
    best
}

/// Line maximization robust to the sawtooth shapes these defects have: a
/// coarse even scan locates the best bucket, golden-section polishes inside
/// it. Returns the best evaluated point.
fn line_max(f: impl Fn(f64) -> Option<f64>, lo: f64, hi: f64) -> (f64, f64) {
    const COARSE: usize = 256;
    let mut best = (lo, f(lo).unwrap_or(f64::NEG_INFINITY));
    for i in 0..=COARSE {
        let x = lo + (hi - lo) * i as f64 / COARSE as f64;
        let v = f(x).unwrap_or(f64::NEG_INFINITY);
        if v > best.1 {
            best = (x, v);
        }
    }
    let h = (hi - lo) / COARSE as f64;
    let (gx, gv) = golden_max(&f, (best.0 - h).max(lo), (best.0 + h).min(hi), 64);
    if gv > best.1 {
        best = (gx, gv);
    }
    best
}

/// Coordinate-wise and diagonal ascent from the scan winner. Never returns
/// a point worse than the start.
fn refine(
    k: &MeanFunction,
    objective: Objective,
    side: Side,
    lo: f64,
    hi: f64,
    start: &[f64],
    start_value: f64,
) -> (Vec<f64>, f64) {
    let mut point = start.to_vec();
    let mut value = start_value;
    for _round in 0..12 {
        let before = value;
        for i in 0..point.len() {
            let p = point.clone();
            let eval_at = |x: f64| {
                let mut q = p.clone();
                q[i] = x;
                objective.eval_f64(k, &q, side)
            };
            let (bx, bv) = line_max(eval_at, lo, hi);
            if bv > value {
                point[i] = bx;
                value = bv;
            }
        }
        // Diagonal sweep: shift every coordinate together.
        let pmin = point.iter().cloned().fold(f64::INFINITY, f64::min);
        let pmax = point.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let (s_lo, s_hi) = (lo - pmin, hi - pmax);
        if s_lo < s_hi {
            let p = point.clone();
            let eval_at = |s: f64| {
                let q: Vec<f64> = p.iter().map(|x| x + s).collect();
                objective.eval_f64(k, &q, side)
            };
            let (bs, bv) = line_max(eval_at, s_lo, s_hi);
            if bv > value {
                for x in point.iter_mut() {
                    *x += bs;
                }
                value = bv;
            }
        }
        if value <= before * (1.0 + 1e-12) && value <= before + 1e-15 {
            break;
        }
    }
    (point, value)
}

/// Snaps a point to the witness grid and re-evaluates the objective
/// exactly; `None` when no snapped neighbor still witnesses anything.
/// Witnesses often hug discontinuity edges, so rounding toward the nearest
/// grid point can step over the edge; the floor and ceiling snaps cover
/// approaches from either side.
fn verify_witness(
    k: &MeanFunction,
    objective: Objective,
    side: Side,
    point: &[f64],
    grid_exp: i64,
) -> Option<SideWitness> {
    let scale = 10f64.powi(grid_exp as i32);
    let mut best: Option<SideWitness> = None;
    for mode in 0..3 {
        let decimals: Vec<ExactDecimal> = point
            .iter()
            .map(|x| {
                let s = x * scale;
                let q = match mode {
                    0 => s.floor(),
                    1 => s.round(),
                    _ => s.ceil(),
                } as i128;
                ExactDecimal::from_bigint(BigInt::from(q)).mul(&ExactDecimal::pow10(-grid_exp))
            })
            .collect();
        let Ok(tuple) = RealTuple::from_decimals(&decimals) else {
            continue;
        };
        let Some(defect) = objective.eval_real(k, &tuple, side) else {
            continue;
        };
        let defect = defect.to_f64();
        if defect > 0.0 && best.as_ref().map(|b| defect > b.defect).unwrap_or(true) {
            best = Some(SideWitness { tuple, defect });
        }
    }
    best
}

fn sup_search(
    measure: &str,
    k: &MeanFunction,
    box_: &DomainBox,
    cfg: &SearchConfig,
    objective: Objective,
    near_diagonal_share: bool,
) -> Result<SupEstimate, MeanError> {
    let (lo_d, hi_d) = box_
        .finite_bounds()
        .ok_or_else(|| MeanError::Construction("defect search needs a finite box".into()))?;
    let (lo, hi) = (lo_d.to_f64(), hi_d.to_f64());
    let mut rng = SeededRng::new(cfg.seed);
    let mut above = SideBest::new();
    let mut below = SideBest::new();
    let mut admissible = 0u64;
    let mut diverging = false;
    for i in 0..cfg.budget {
        let n = box_.sample_arity(&mut rng).max(2);
        let near = near_diagonal_share && i % 2 == 1;
        let xs = sample_point(&mut rng, box_, n, lo, hi, near);
        let mut seen = false;
        if let Some(v) = objective.eval_f64(k, &xs, Side::Above) {
            above.offer(v, &xs);
            seen = true;
        }
        if let Some(v) = objective.eval_f64(k, &xs, Side::Below) {
            below.offer(v, &xs);
            seen = true;
        }
        if seen {
            admissible += 1;
        }
        if above.value.max(below.value) > DIVERGENCE_THRESHOLD {
            diverging = true;
            break;
        }
    }
    if admissible == 0 {
        return Err(MeanError::EmptyDomain);
    }
    let mut finish = |best: &SideBest, side: Side| -> Option<SideWitness> {
        if best.point.is_empty() || best.value <= 0.0 {
            return None;
        }
        let scan = verify_witness(k, objective, side, &best.point, cfg.grid_exp);
        if !cfg.refine {
            return scan;
        }
        let (rp, rv) = refine(k, objective, side, lo, hi, &best.point, best.value);
        if rv > DIVERGENCE_THRESHOLD {
            diverging = true;
        }
        let refined = verify_witness(k, objective, side, &rp, cfg.grid_exp);
        match (scan, refined) {
            (Some(a), Some(b)) => Some(if b.defect >= a.defect { b } else { a }),
            (a, b) => b.or(a),
        }
    };
    let above_witness = finish(&above, Side::Above);
    let below_witness = finish(&below, Side::Below);
    let bound = |w: &Option<SideWitness>| w.as_ref().map(|s| s.defect).unwrap_or(0.0);
    let lower_bound = match objective {
        Objective::Absolute | Objective::RangeNormalized => {
            bound(&above_witness) + bound(&below_witness)
        }
        Objective::Additive | Objective::Multiplicative => {
            bound(&above_witness).max(bound(&below_witness))
        }
    };
    Ok(SupEstimate {
        measure: measure.to_string(),
        lower_bound,
        above_witness,
        below_witness,
        samples: cfg.budget,
        seed: cfg.seed,
        diverging,
    })
}

/// Estimate of `sup (K - max)+  +  sup (min - K)+` over the box.
pub fn mdist(
    k: &MeanFunction,
    box_: &DomainBox,
    cfg: &SearchConfig,
) -> Result<SupEstimate, MeanError> {
    sup_search("mdist", k, box_, cfg, Objective::Absolute, false)
}

/// Range-normalized variant; the sampler also probes near-diagonal tuples
/// with spreads down to 1e-9, where these suprema typically blow up.
pub fn mdistp(
    k: &MeanFunction,
    box_: &DomainBox,
    cfg: &SearchConfig,
) -> Result<SupEstimate, MeanError> {
    sup_search("mdistp", k, box_, cfg, Objective::RangeNormalized, true)
}

/// Smallest witnessed additive envelope constant.
pub fn a_quasi_constant(
    k: &MeanFunction,
    box_: &DomainBox,
    cfg: &SearchConfig,
) -> Result<SupEstimate, MeanError> {
    sup_search("a-quasi-constant", k, box_, cfg, Objective::Additive, false)
}

/// Smallest witnessed multiplicative envelope constant; the box must keep
/// away from the all-zero tuple.
pub fn m_quasi_constant(
    k: &MeanFunction,
    box_: &DomainBox,
    cfg: &SearchConfig,
) -> Result<SupEstimate, MeanError> {
    sup_search(
        "m-quasi-constant",
        k,
        box_,
        cfg,
        Objective::Multiplicative,
        false,
    )
}

/// Monte Carlo estimate of the volume fraction where K escapes the envelope:
/// proportion with `K > max` plus proportion with `K < min`.
pub fn mdista(
    k: &MeanFunction,
    box_: &DomainBox,
    samples: u64,
    seed: u64,
) -> Result<MeasureEstimate, MeanError> {
    let (lo_d, hi_d) = box_
        .finite_bounds()
        .ok_or_else(|| MeanError::Construction("mdista needs a finite box".into()))?;
    let (lo, hi) = (lo_d.to_f64(), hi_d.to_f64());
    let n = match box_.arity {
        crate::tuple::Arity::Fixed(n) => n,
        crate::tuple::Arity::Variadic { .. } => {
            return Err(MeanError::Construction(
                "mdista needs a fixed arity box".into(),
            ))
        }
    };
    let mut rng = SeededRng::new(seed);
    let mut violations = 0u64;
    let mut admissible = 0u64;
    let mut xs = vec![0.0f64; n];
    for _ in 0..samples {
        let mut mn = f64::INFINITY;
        let mut mx = f64::NEG_INFINITY;
        for x in xs.iter_mut() {
            *x = rng.range_f64(lo, hi);
            mn = mn.min(*x);
            mx = mx.max(*x);
        }
        if let Some(v) = k.eval_f64(&xs) {
            admissible += 1;
            let guard = 1e-12 * 1f64.max(mx.abs());
            if v > mx + guard || v < mn - guard {
                violations += 1;
            }
        }
    }
    if admissible == 0 {
        return Err(MeanError::EmptyDomain);
    }
    let p = violations as f64 / samples as f64;
    let half_width = 1.96 * (p * (1.0 - p) / samples as f64).sqrt();
    Ok(MeasureEstimate {
        measure: "mdista".to_string(),
        value: p,
        half_width,
        samples,
        seed,
    })
}

/// Closed-form violation fraction of the two-variable floor mean on the
/// unit box `[1, 2]^2`: `(4/10^m)(1 - 1/10^m)`. Oracle for the estimator.
pub fn mdista_exact_floor(m: i64) -> Real {
    let p = if m >= 0 {
        BigRational::new(BigInt::from(1), pow10_bigint(m as u64))
    } else {
        BigRational::from_integer(pow10_bigint((-m) as u64))
    };
    let four = BigRational::from_integer(BigInt::from(4));
    Real::Exact(&four * &p * (BigRational::from_integer(BigInt::from(1)) - &p))
}
