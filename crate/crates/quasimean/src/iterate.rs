//! Iterative procedures: composition, Gauss-style compounding of two
//! functions, the one-sided iterated powers and their idempotent closure,
//! the pairwise 3-variable extension, and the onset index for the n-1
//! divisor mean along a sequence.
//!
//! Iterations evaluate through `MeanFunction::eval_total`, the formula
//! extension, so truncation-family entries keep iterating through their
//! bookkeeping exclusion zone exactly as the worked traces require.

use serde::Serialize;
use serde_json::json;

use crate::catalog::{CatalogEntry, MeanClass};
use crate::error::MeanError;
use crate::mean::MeanFunction;
use crate::real::{ExactDecimal, Real};
use crate::tuple::{Arity, RealTuple};

/// Iterates larger than this many bits degrade to f64; bounded-denominator
/// values (truncation grids) stay exact, polynomial blowups do not.
const PRECISION_BITS: u64 = 512;

#[derive(Clone, Debug)]
pub struct IterateConfig {
    pub tol: f64,
    pub max_steps: usize,
    /// Iterates below this abort with a `Diverged` verdict.
    pub floor: f64,
}

impl Default for IterateConfig {
    fn default() -> Self {
        IterateConfig {
            tol: 1e-12,
            max_steps: 10_000,
            floor: -1e9,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum IterationVerdict {
    Converged { limit: String },
    ConstantAfter { step: usize, value: String },
    Diverged,
    BudgetExhausted,
}

/// The full row sequence of an iteration with its convergence verdict.
#[derive(Clone, Debug)]
pub struct IterationTrace {
    pub rows: Vec<Vec<Real>>,
    pub verdict: IterationVerdict,
    pub limit: Option<Real>,
    pub tolerance: f64,
    pub max_steps: usize,
    /// Closure runs verify `K(limit, b) = limit` after the fact.
    pub fixed_point_verified: Option<bool>,
}

impl IterationTrace {
    pub fn converged(&self) -> bool {
        matches!(
            self.verdict,
            IterationVerdict::Converged { .. } | IterationVerdict::ConstantAfter { .. }
        )
    }

    /// CSV export: `step,a,b[,c]`.
    pub fn to_csv(&self) -> String {
        let width = self.rows.first().map(|r| r.len()).unwrap_or(0);
        let header = match width {
            2 => "step,a,b".to_string(),
            3 => "step,a,b,c".to_string(),
            _ => {
                let cols: Vec<String> = (0..width).map(|i| format!("x{i}")).collect();
                format!("step,{}", cols.join(","))
            }
        };
        let mut out = header;
        for (i, row) in self.rows.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(Real::render_plain).collect();
            out.push('\n');
            out.push_str(&format!("{i},{}", cells.join(",")));
        }
        out
    }

    pub fn verdict_json(&self) -> serde_json::Value {
        json!({
            "schema": "quasimean/1",
            "verdict": self.verdict,
            "limit": self.limit.as_ref().map(Real::render_plain),
            "steps": self.rows.len().saturating_sub(1),
            "tolerance": self.tolerance,
            "max_steps": self.max_steps,
            "fixed_point_verified": self.fixed_point_verified,
        })
    }
}

fn rows_equal(a: &[Real], b: &[Real]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x == y)
}

fn spread(row: &[Real]) -> f64 {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in row {
        let x = v.to_f64();
        lo = lo.min(x);
        hi = hi.max(x);
    }
    hi - lo
}

fn pair(a: &Real, b: &Real) -> Result<RealTuple, MeanError> {
    RealTuple::new(vec![a.clone(), b.clone()])
}

/// `t -> K0(K1(t), ..., Kn(t))`; every part must share an envelope side,
/// which the result inherits.
pub fn compose(k0: &CatalogEntry, ks: &[CatalogEntry]) -> Result<CatalogEntry, MeanError> {
    if ks.is_empty() {
        return Err(MeanError::Construction(
            "composition needs inner functions".into(),
        ));
    }
    let n = ks.len();
    if !k0.mean.arity().accepts(n) {
        return Err(MeanError::Construction(format!(
            "outer function {} cannot take {n} values",
            k0.mean.id()
        )));
    }
    let mut side = k0.declared_class;
    for e in ks {
        side = merge_side(side, e.declared_class)?;
    }
    let ids: Vec<&str> = ks.iter().map(|e| e.mean.id()).collect();
    let id = format!("compose({};{})", k0.mean.id(), ids.join(","));
    let outer = k0.mean.clone();
    let inner: Vec<MeanFunction> = ks.iter().map(|e| e.mean.clone()).collect();
    let inner2 = inner.clone();
    let outer2 = outer.clone();
    let mean = MeanFunction::new(
        id.clone(),
        Arity::Fixed(n),
        format!(
            "tuples admitted by every inner function and the image by {}",
            outer.id()
        ),
        std::sync::Arc::new(move |t: &RealTuple| {
            let imgs: Option<Vec<Real>> = inner.iter().map(|k| k.eval(t).ok()).collect();
            match imgs {
                Some(v) => RealTuple::new(v)
                    .map(|u| outer.in_domain(&u))
                    .unwrap_or(false),
                None => false,
            }
        }),
        std::sync::Arc::new(move |t: &RealTuple| {
            let imgs: Result<Vec<Real>, MeanError> = inner2.iter().map(|k| k.eval(t)).collect();
            outer2.eval(&RealTuple::new(imgs?)?)
        }),
    );
    Ok(CatalogEntry {
        id,
        mean,
        declared_class: side,
        declared_properties: vec![],
        declared_negations: vec![],
        quasi_spec: None,
        default_box: ks[0].default_box.clone(),
    })
}

fn merge_side(a: MeanClass, b: MeanClass) -> Result<MeanClass, MeanError> {
    use MeanClass::*;
    Ok(match (a, b) {
        (Mean, x) | (x, Mean) => x,
        (LeftMean, LeftMean) => LeftMean,
        (RightMean, RightMean) => RightMean,
        _ => {
            return Err(MeanError::Contract(
                "composition requires all parts on the same envelope side".into(),
            ))
        }
    })
}

/// Pairwise compounding of `K <= M`: `a' = K(a, b)`, `b' = M(a, b)`. The
/// common limit is the compounded value; the upper sequence must decrease.
pub fn compound(
    k: &MeanFunction,
    m: &MeanFunction,
    a: &ExactDecimal,
    b: &ExactDecimal,
    cfg: &IterateConfig,
) -> Result<IterationTrace, MeanError> {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    let mut cur_a = Real::from_decimal(lo);
    let mut cur_b = Real::from_decimal(hi);
    let mut rows = vec![vec![cur_a.clone(), cur_b.clone()]];
    for step in 0..cfg.max_steps {
        let t = pair(&cur_a, &cur_b)?;
        let ka = k.eval_total(&t)?.clamp_precision(PRECISION_BITS);
        let mb = m.eval_total(&t)?.clamp_precision(PRECISION_BITS);
        if !ka.le_with_tol(&mb, 1e-12) {
            return Err(MeanError::Contract(format!(
                "lower function exceeded upper at step {step}: {} > {}",
                ka.render_plain(),
                mb.render_plain()
            )));
        }
        if mb.cmp_value(&cur_b) == std::cmp::Ordering::Greater {
            rows.push(vec![ka, mb]);
            return Ok(trace(rows, IterationVerdict::Diverged, None, cfg, None));
        }
        let next = vec![ka.clone(), mb.clone()];
        let last = rows.last().expect("nonempty");
        if rows_equal(&next, last) {
            rows.push(next);
            let n = rows.len() - 2;
            let verdict = IterationVerdict::ConstantAfter {
                step: n,
                value: mb.render_plain(),
            };
            return Ok(trace(rows, verdict, Some(mb), cfg, None));
        }
        rows.push(next);
        if spread(rows.last().expect("nonempty")) <= cfg.tol {
            // Exact constancy takes precedence over tolerance convergence.
            let t2 = pair(&ka, &mb)?;
            let ka2 = k.eval_total(&t2)?.clamp_precision(PRECISION_BITS);
            let mb2 = m.eval_total(&t2)?.clamp_precision(PRECISION_BITS);
            if ka2 == ka && mb2 == mb {
                let n = rows.len() - 1;
                let verdict = IterationVerdict::ConstantAfter {
                    step: n,
                    value: mb.render_plain(),
                };
                return Ok(trace(rows, verdict, Some(mb), cfg, None));
            }
            let verdict = IterationVerdict::Converged {
                limit: mb.render_plain(),
            };
            return Ok(trace(rows, verdict, Some(mb), cfg, None));
        }
        cur_a = ka;
        cur_b = mb;
    }
    Ok(trace(
        rows,
        IterationVerdict::BudgetExhausted,
        None,
        cfg,
        None,
    ))
}

fn trace(
    rows: Vec<Vec<Real>>,
    verdict: IterationVerdict,
    limit: Option<Real>,
    cfg: &IterateConfig,
    fixed_point_verified: Option<bool>,
) -> IterationTrace {
    IterationTrace {
        rows,
        verdict,
        limit,
        tolerance: cfg.tol,
        max_steps: cfg.max_steps,
        fixed_point_verified,
    }
}

/// n-fold one-sided iteration: `x_0 = K(lo, hi)`, `x_{k+1} = K(x_k, hi)`.
pub fn iterated(
    k: &MeanFunction,
    n: usize,
    a: &ExactDecimal,
    b: &ExactDecimal,
) -> Result<Real, MeanError> {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    let hi = Real::from_decimal(hi);
    let mut x = k.eval_total(&pair(&Real::from_decimal(lo), &hi)?)?;
    for _ in 0..n {
        x = k
            .eval_total(&pair(&x, &hi)?)?
            .clamp_precision(PRECISION_BITS);
    }
    Ok(x)
}

/// Limit of the one-sided iteration, with the fixed-point property of the
/// limit verified after the fact.
pub fn idempotent_closure(
    k: &MeanFunction,
    a: &ExactDecimal,
    b: &ExactDecimal,
    cfg: &IterateConfig,
) -> Result<IterationTrace, MeanError> {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    let hi = Real::from_decimal(hi);
    let mut x = k.eval_total(&pair(&Real::from_decimal(lo), &hi)?)?;
    let mut rows = vec![
        vec![Real::from_decimal(lo), hi.clone()],
        vec![x.clone(), hi.clone()],
    ];
    for _ in 0..cfg.max_steps {
        let next = k
            .eval_total(&pair(&x, &hi)?)?
            .clamp_precision(PRECISION_BITS);
        if next.to_f64() < cfg.floor {
            rows.push(vec![next, hi.clone()]);
            return Ok(trace(rows, IterationVerdict::Diverged, None, cfg, None));
        }
        let constant = next == x;
        let close = next.sub(&x).abs().to_f64() <= cfg.tol;
        rows.push(vec![next.clone(), hi.clone()]);
        if constant || close {
            let check = k.eval_total(&pair(&next, &hi)?)?;
            let verified = check.sub(&next).abs().to_f64() <= cfg.tol;
            let verdict = if constant {
                IterationVerdict::ConstantAfter {
                    step: rows.len() - 2,
                    value: next.render_plain(),
                }
            } else {
                IterationVerdict::Converged {
                    limit: next.render_plain(),
                }
            };
            return Ok(trace(rows, verdict, Some(next), cfg, Some(verified)));
        }
        x = next;
    }
    Ok(trace(
        rows,
        IterationVerdict::BudgetExhausted,
        None,
        cfg,
        None,
    ))
}

/// Pairwise 3-variable extension: from sorted `(a, b, c)` iterate
/// `(K(a,b), K(a,c), K(b,c))` until the rows settle.
pub fn extend3(
    k: &MeanFunction,
    a: &ExactDecimal,
    b: &ExactDecimal,
    c: &ExactDecimal,
    cfg: &IterateConfig,
) -> Result<IterationTrace, MeanError> {
    let mut vals = [a.clone(), b.clone(), c.clone()];
    vals.sort();
    let mut row: Vec<Real> = vals.iter().map(Real::from_decimal).collect();
    let mut rows = vec![row.clone()];
    for _ in 0..cfg.max_steps {
        let next = vec![
            k.eval_total(&pair(&row[0], &row[1])?)?
                .clamp_precision(PRECISION_BITS),
            k.eval_total(&pair(&row[0], &row[2])?)?
                .clamp_precision(PRECISION_BITS),
            k.eval_total(&pair(&row[1], &row[2])?)?
                .clamp_precision(PRECISION_BITS),
        ];
        if next.iter().any(|v| v.to_f64() < cfg.floor) {
            rows.push(next);
            return Ok(trace(rows, IterationVerdict::Diverged, None, cfg, None));
        }
        if rows_equal(&next, &row) {
            rows.push(next);
            let n = rows.len() - 2;
            let value = row[2].render_plain();
            return Ok(trace(
                rows,
                IterationVerdict::ConstantAfter { step: n, value },
                Some(row[2].clone()),
                cfg,
                None,
            ));
        }
        rows.push(next.clone());
        // Converged means the last two rows agree coordinatewise and the
        // row has pinched together; spread alone misses rows that drift
        // downward in lockstep.
        let movement = next
            .iter()
            .zip(&row)
            .map(|(a, b)| a.sub(b).abs().to_f64())
            .fold(0.0f64, f64::max);
        if spread(&next) <= cfg.tol && movement <= cfg.tol {
            let probe = vec![
                k.eval_total(&pair(&next[0], &next[1])?)?
                    .clamp_precision(PRECISION_BITS),
                k.eval_total(&pair(&next[0], &next[2])?)?
                    .clamp_precision(PRECISION_BITS),
                k.eval_total(&pair(&next[1], &next[2])?)?
                    .clamp_precision(PRECISION_BITS),
            ];
            let limit = next[2].clone();
            if rows_equal(&probe, &next) {
                let n = rows.len() - 1;
                let verdict = IterationVerdict::ConstantAfter {
                    step: n,
                    value: limit.render_plain(),
                };
                return Ok(trace(rows, verdict, Some(limit), cfg, None));
            }
            let verdict = IterationVerdict::Converged {
                limit: limit.render_plain(),
            };
            return Ok(trace(rows, verdict, Some(limit), cfg, None));
        }
        row = next;
    }
    Ok(trace(
        rows,
        IterationVerdict::BudgetExhausted,
        None,
        cfg,
        None,
    ))
}

/// Smallest prefix length at which the n-1 divisor value of a positive
/// sequence drops inside the envelope; `None` when no prefix in the data
/// qualifies. `assume_divergent` documents the caller's promise that the
/// sequence grows without bound, in which case `None` means the data ran
/// out before the guaranteed onset.
pub fn bessel_onset(
    seq: &[ExactDecimal],
    assume_divergent: bool,
) -> Result<Option<usize>, MeanError> {
    let _ = assume_divergent;
    if seq.iter().any(|d| d.sign() <= 0) {
        return Err(MeanError::Domain(
            "sequence entries must be strictly positive".into(),
        ));
    }
    if seq.len() < 2 {
        return Ok(None);
    }
    let mut sum = Real::from_decimal(&seq[0]);
    let mut max = Real::from_decimal(&seq[0]);
    for (i, d) in seq.iter().enumerate().skip(1) {
        let v = Real::from_decimal(d);
        sum = sum.add(&v);
        max = max.max_value(&v);
        let n = i + 1;
        let value = sum.div_int(n as i64 - 1);
        if value.cmp_value(&max) != std::cmp::Ordering::Greater {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;
    use crate::mean::any_domain;
    use std::sync::Arc;

    fn dec(s: &str) -> ExactDecimal {
        s.parse().unwrap()
    }

    fn mean(id: &str) -> MeanFunction {
        Catalog::construct(id).unwrap().mean
    }

    #[test]
    fn compose_examples() {
        let a = Catalog::construct("arith").unwrap();
        let same = compose(&a, &[a.clone(), a.clone()]).unwrap();
        let t = RealTuple::parse(&["1", "5"]).unwrap();
        assert_eq!(same.mean.eval(&t).unwrap(), Real::from_int(3));

        let mn = Catalog::construct("min").unwrap();
        let fa = Catalog::construct("floor-arith?m=0").unwrap();
        let composed = compose(&mn, &[mn.clone(), fa.clone()]).unwrap();
        let t = RealTuple::parse(&["1.9", "2.1"]).unwrap();
        assert_eq!(composed.mean.eval(&t).unwrap(), Real::ratio(3, 2));
        assert_eq!(composed.declared_class, MeanClass::RightMean);

        let bp = Catalog::construct("bessel-plus").unwrap();
        assert!(compose(&bp, &[fa.clone(), bp.clone()]).is_err());
    }

    #[test]
    fn composed_truncations_keep_the_upper_envelope() {
        let fa = Catalog::construct("floor-arith?m=0").unwrap();
        let composed = compose(&fa, &[fa.clone(), fa.clone()]).unwrap();
        let verdict = crate::classify::check_right_mean(
            &composed.mean,
            &composed.default_box,
            &crate::classify::ClassifyConfig::new(1000, 0),
        );
        assert_eq!(
            verdict.status,
            crate::classify::VerdictStatus::HoldsOnSample
        );
    }

    #[test]
    fn compound_arithmetic_with_itself() {
        let a = mean("arith");
        let tr = compound(&a, &a, &dec("1"), &dec("3"), &IterateConfig::default()).unwrap();
        assert!(tr.converged());
        assert_eq!(tr.limit.unwrap(), Real::from_int(2));
        assert_eq!(tr.rows.len(), 2);
    }

    #[test]
    fn compound_truncation_pair_from_the_worked_example() {
        let k = mean("floor-arith?m=0");
        let m = mean("floor-arith?m=1");
        let tr = compound(&k, &m, &dec("1"), &dec("2"), &IterateConfig::default()).unwrap();
        assert!(tr.converged());
        let limit = tr.limit.clone().unwrap();
        assert!(
            limit.cmp_value(&Real::one()) != std::cmp::Ordering::Less,
            "limit {limit}"
        );

        let tr = compound(&k, &m, &dec("0.9"), &dec("1.9"), &IterateConfig::default()).unwrap();
        assert!(tr.converged());
        let limit = tr.limit.clone().unwrap();
        assert!(limit.to_f64() < 0.75, "limit {limit}");
        // The upper sequence never increases along the trace.
        for w in tr.rows.windows(2) {
            assert!(w[1][1].cmp_value(&w[0][1]) != std::cmp::Ordering::Greater);
            assert!(w[1][0].cmp_value(&w[1][1]) != std::cmp::Ordering::Greater);
        }
    }

    #[test]
    fn compound_geometric_arithmetic_reaches_the_classical_limit() {
        // Independent oracle: the plain two-sequence iteration in f64.
        let (mut x, mut y) = (1.0f64, 2.0f64);
        for _ in 0..40 {
            let g = (x * y).sqrt();
            let a = 0.5 * (x + y);
            x = g;
            y = a;
        }
        let expected = y;
        let g = mean("geometric");
        let a = mean("arith");
        let tr = compound(&g, &a, &dec("1"), &dec("2"), &IterateConfig::default()).unwrap();
        assert!(tr.converged());
        let limit = tr.limit.unwrap().to_f64();
        assert!((limit - expected).abs() < 1e-10, "{limit} vs {expected}");
        assert!((limit - 1.4567910310469068).abs() < 1e-9);
    }

    #[test]
    fn compound_contract_violation_when_sides_swapped() {
        let g = mean("geometric");
        let a = mean("arith");
        let r = compound(&a, &g, &dec("1"), &dec("2"), &IterateConfig::default());
        assert!(matches!(r, Err(MeanError::Contract(_))));
    }

    #[test]
    fn compound_divergence_detected() {
        let up = MeanFunction::new(
            "oversum",
            Arity::Fixed(2),
            "anything",
            any_domain(),
            Arc::new(|t: &RealTuple| Ok(t.get(0).add(t.get(1)))),
        );
        let id_min = mean("min");
        let tr = compound(
            &id_min,
            &up,
            &dec("1"),
            &dec("2"),
            &IterateConfig::default(),
        )
        .unwrap();
        assert!(matches!(tr.verdict, IterationVerdict::Diverged));
    }

    #[test]
    fn iterated_powers() {
        let mx = mean("max");
        for n in [0usize, 1, 5] {
            assert_eq!(
                iterated(&mx, n, &dec("1"), &dec("3")).unwrap(),
                Real::from_int(3)
            );
        }
        let a = mean("arith");
        assert_eq!(
            iterated(&a, 1, &dec("1"), &dec("3")).unwrap(),
            Real::ratio(5, 2)
        );
        // Right-idempotent functions are fixed by the iteration.
        let mn = mean("min");
        for n in [0usize, 3] {
            assert_eq!(
                iterated(&mn, n, &dec("1"), &dec("3")).unwrap(),
                Real::from_int(1)
            );
        }
    }

    #[test]
    fn closure_of_min_square() {
        let k = mean("min-square");
        let tr = idempotent_closure(&k, &dec("1"), &dec("2"), &IterateConfig::default()).unwrap();
        assert!(tr.converged());
        assert_eq!(tr.limit.unwrap(), Real::one());
        assert_eq!(tr.fixed_point_verified, Some(true));

        let tr =
            idempotent_closure(&k, &dec("0.999"), &dec("2"), &IterateConfig::default()).unwrap();
        assert!(tr.converged());
        assert!(tr.limit.unwrap().to_f64() < 1e-6);
        assert_eq!(tr.fixed_point_verified, Some(true));
    }

    #[test]
    fn closure_of_averaging_walks_to_the_upper_end() {
        let a = mean("arith");
        let tr = idempotent_closure(&a, &dec("1"), &dec("3"), &IterateConfig::default()).unwrap();
        assert!(tr.converged());
        assert!((tr.limit.unwrap().to_f64() - 3.0).abs() < 1e-9);
        assert_eq!(tr.fixed_point_verified, Some(true));
    }

    #[test]
    fn extend3_floor_mean_reproduces_the_worked_rows() {
        let k = mean("floor-arith?m=0");
        let tr = extend3(
            &k,
            &dec("1.1"),
            &dec("2.1"),
            &dec("3.1"),
            &IterateConfig::default(),
        )
        .unwrap();
        let expect = [
            vec![Real::ratio(3, 2), Real::from_int(2), Real::ratio(5, 2)],
            vec![Real::ratio(3, 2), Real::ratio(3, 2), Real::from_int(2)],
            vec![Real::from_int(1), Real::ratio(3, 2), Real::ratio(3, 2)],
            vec![Real::from_int(1), Real::from_int(1), Real::from_int(1)],
        ];
        for (i, row) in expect.iter().enumerate() {
            assert_eq!(&tr.rows[i + 1], row, "row {}", i + 1);
        }
        assert_eq!(tr.limit.unwrap(), Real::one());
        assert!(matches!(tr.verdict, IterationVerdict::ConstantAfter { .. }));

        let tr = extend3(
            &k,
            &dec("0.9"),
            &dec("1.9"),
            &dec("2.9"),
            &IterateConfig::default(),
        )
        .unwrap();
        assert_eq!(tr.limit.unwrap(), Real::zero());
        let steps: Vec<Vec<Real>> = vec![
            vec![Real::ratio(1, 2), Real::from_int(1), Real::ratio(3, 2)],
            vec![Real::ratio(1, 2), Real::ratio(1, 2), Real::from_int(1)],
            vec![Real::zero(), Real::ratio(1, 2), Real::ratio(1, 2)],
            vec![Real::zero(), Real::zero(), Real::zero()],
        ];
        for (i, row) in steps.iter().enumerate() {
            assert_eq!(&tr.rows[i + 1], row, "row {}", i + 1);
        }

        let tr = extend3(
            &k,
            &dec("1"),
            &dec("2"),
            &dec("3"),
            &IterateConfig::default(),
        )
        .unwrap();
        assert_eq!(tr.limit.unwrap(), Real::one());
    }

    #[test]
    fn extend3_of_arithmetic_gives_back_the_three_variable_mean() {
        let a = mean("arith");
        let tr = extend3(
            &a,
            &dec("1.1"),
            &dec("2.1"),
            &dec("3.1"),
            &IterateConfig::default(),
        )
        .unwrap();
        assert!(tr.converged());
        assert!((tr.limit.unwrap().to_f64() - 2.1).abs() < 1e-10);
        // Rows stay ordered and the upper entry never increases.
        for w in tr.rows.windows(2) {
            assert!(w[1][2].cmp_value(&w[0][2]) != std::cmp::Ordering::Greater);
        }
        for row in &tr.rows {
            assert!(row[0].cmp_value(&row[1]) != std::cmp::Ordering::Greater);
            assert!(row[1].cmp_value(&row[2]) != std::cmp::Ordering::Greater);
        }
    }

    #[test]
    fn extend3_divergence_example() {
        let drop = MeanFunction::new(
            "average-minus-one",
            Arity::Fixed(2),
            "anything",
            any_domain(),
            Arc::new(|t: &RealTuple| Ok(t.get(0).add(t.get(1)).div_int(2).sub(&Real::one()))),
        );
        let cfg = IterateConfig {
            floor: -50.0,
            ..Default::default()
        };
        let tr = extend3(&drop, &dec("0"), &dec("1"), &dec("2"), &cfg).unwrap();
        assert!(matches!(tr.verdict, IterationVerdict::Diverged));
    }

    #[test]
    fn onset_index_examples() {
        let seq: Vec<ExactDecimal> = (1..=10).map(|i| dec(&i.to_string())).collect();
        assert_eq!(bessel_onset(&seq, true).unwrap(), Some(3));

        let mut flat = vec![dec("1")];
        flat.extend(std::iter::repeat_with(|| dec("2")).take(200));
        assert_eq!(bessel_onset(&flat, false).unwrap(), None);

        assert!(bessel_onset(&[dec("1"), dec("-2")], false).is_err());
    }

    #[test]
    fn csv_and_verdict_exports() {
        let k = mean("floor-arith?m=0");
        let tr = extend3(
            &k,
            &dec("1.1"),
            &dec("2.1"),
            &dec("3.1"),
            &IterateConfig::default(),
        )
        .unwrap();
        let csv = tr.to_csv();
        assert!(csv.starts_with("step,a,b,c\n0,1.1,2.1,3.1"));
        assert!(csv.contains("\n4,1,1,1"));
        let v = tr.verdict_json();
        assert_eq!(v["limit"], "1");
        assert_eq!(v["schema"], "quasimean/1");
    }
}
