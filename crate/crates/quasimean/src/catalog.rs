//! The registry of concrete quasi-means, each one a `MeanFunction` plus the
//! class and properties it is documented to have. The classify module tests
//! every declared flag; nothing here is assumed beyond what a falsifier can
//! replay.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::json;

use crate::error::MeanError;
use crate::mean::{
    any_domain, arithmetic_mean, geometric_mean, harmonic_mean, negative_domain, positive_domain,
    power_mean, quasi_arithmetic_mean, GeneratorFunction, MeanFunction,
};
use crate::real::{pow10_bigint, ExactDecimal, Real};
use crate::tuple::{Arity, DomainBox, RealTuple};

/// Envelope classification a function is documented to satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MeanClass {
    Mean,
    LeftMean,
    RightMean,
    AQuasi,
    MQuasi,
    None,
}

/// Pointwise properties tracked by the classifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    LeftMean,
    RightMean,
    Mean,
    Strict,
    Monotone,
    Symmetric,
    Reflexive,
    SemiReflexive,
    Continuous,
    LeftContinuous,
    RightContinuous,
    MeanContinuous,
    Strong,
    QuasiMonotone,
    RightInjective,
    LeftInjective,
    AQuasiBound,
    MQuasiBound,
}

/// Stored counterexample material for a documented negation.
#[derive(Clone, Debug)]
pub enum Witness {
    /// One input tuple exhibiting the violation.
    Tuple(RealTuple),
    /// Ordered pair `t <= u` coordinatewise with `K(t) > K(u)`.
    Pair(RealTuple, RealTuple),
    /// Diagonal base value for reflexivity-flavored violations.
    Diagonal(ExactDecimal),
    /// Point at which a one-sided continuity probe fails.
    Point(RealTuple),
    /// No stored material: search the default box.
    Search,
}

/// Envelope slack documented for functions that are not quasi-means.
#[derive(Clone, Debug)]
pub enum QuasiSpec {
    /// Escapes the envelope by at most this additive constant.
    Additive(Real),
    /// Escapes by at most `K * max|a_i|` with `K = 1/(n-1)` at arity `n`.
    MultiplicativePerArity,
}

/// A registered function together with its documented classification.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: String,
    pub mean: MeanFunction,
    pub declared_class: MeanClass,
    pub declared_properties: Vec<Property>,
    pub declared_negations: Vec<(Property, Witness)>,
    pub quasi_spec: Option<QuasiSpec>,
    pub default_box: DomainBox,
}

impl CatalogEntry {
    pub fn listing(&self) -> serde_json::Value {
        let (name, params) = split_id(&self.id);
        json!({
            "id": self.id,
            "name": name,
            "parameters": params,
            "declared_class": self.declared_class,
            "declared_properties": self.declared_properties,
            "declared_negations": self.declared_negations.iter().map(|(p, _)| p).collect::<Vec<_>>(),
            "arity": self.mean.arity().describe(),
            "domain": self.mean.domain_desc(),
            "default_box": self.default_box.describe(),
        })
    }
}

fn split_id(id: &str) -> (String, BTreeMap<String, String>) {
    match id.split_once('?') {
        None => (id.to_string(), BTreeMap::new()),
        Some((name, q)) => {
            let mut map = BTreeMap::new();
            for pair in q.split('&').filter(|p| !p.is_empty()) {
                let (k, v) = pair.split_once('=').unwrap_or((pair, ""));
                map.insert(k.to_string(), v.to_string());
            }
            (name.to_string(), map)
        }
    }
}

fn pow10_real(m: i64) -> Real {
    Real::from_decimal(&ExactDecimal::pow10(m))
}

fn pow10_f64(m: i64) -> f64 {
    10f64.powi(m as i32)
}

/// `k / (n * 10^m)` as an exact rational.
fn scaled_ratio(sum: BigInt, m: i64, n: usize) -> BigRational {
    if m >= 0 {
        BigRational::new(sum, BigInt::from(n as i64) * pow10_bigint(m as u64))
    } else {
        BigRational::new(sum * pow10_bigint((-m) as u64), BigInt::from(n as i64))
    }
}

fn dec(s: &str) -> ExactDecimal {
    s.parse().expect("literal decimal")
}

fn tup(entries: &[&str]) -> RealTuple {
    RealTuple::parse(entries).expect("literal tuple")
}

/// `v * 10^-m` as a decimal, for building witnesses at scale m.
fn scale_dec(v: &str, m: i64) -> ExactDecimal {
    dec(v).mul(&ExactDecimal::pow10(-m))
}

fn scale_tup(entries: &[&str], m: i64) -> RealTuple {
    let vals: Vec<ExactDecimal> = entries.iter().map(|v| scale_dec(v, m)).collect();
    RealTuple::from_decimals(&vals).expect("literal tuple")
}

fn scaled_box(m: i64) -> DomainBox {
    DomainBox::closed(
        scale_dec("1", m),
        scale_dec("4", m),
        Arity::Variadic { min: 1 },
    )
    .expect("scaled box")
}

// ---------------------------------------------------------------------------
// Digit truncation family
// ---------------------------------------------------------------------------

/// Mean of the coordinatewise `floor(10^m x)/10^m` values, exact for exact
/// inputs; `None` when any entry is approximate.
fn floor_mean_value(t: &RealTuple, m: i64, ceil: bool) -> Real {
    let mut sum = BigInt::zero();
    let mut exact = true;
    for v in t.values() {
        if !v.is_exact() {
            exact = false;
            break;
        }
        let k = if ceil {
            v.ceil_scaled_int(m)
        } else {
            v.floor_scaled_int(m)
        };
        sum += k.expect("exact entries always floor");
    }
    if exact {
        return Real::Exact(scaled_ratio(sum, m, t.len()));
    }
    let p = pow10_f64(m);
    let s: f64 = t
        .values()
        .iter()
        .map(|v| {
            let x = v.to_f64() * p;
            if ceil {
                x.ceil()
            } else {
                x.floor()
            }
        })
        .sum();
    Real::Approx(s / (t.len() as f64 * p))
}

fn truncation_domain_holds(t: &RealTuple, m: i64, ceil: bool) -> bool {
    t.values().iter().any(|v| {
        let k = if ceil {
            v.ceil_scaled_int(m)
        } else {
            v.floor_scaled_int(m)
        };
        match k {
            Some(k) => !k.is_zero(),
            None => false,
        }
    })
}

fn truncation_fast(xs: &[f64], m: i64, ceil: bool, require_domain: bool) -> Option<f64> {
    let p = pow10_f64(m);
    let mut sum = 0.0;
    let mut nonzero = false;
    for &x in xs {
        let k = if ceil {
            (x * p).ceil()
        } else {
            (x * p).floor()
        };
        if k != 0.0 {
            nonzero = true;
        }
        sum += k;
    }
    if require_domain && !nonzero {
        return None;
    }
    Some(sum / (xs.len() as f64 * p))
}

/// Arithmetic mean of truncated digits: right-mean, exact decimals in,
/// exact rationals out.
pub fn floor_arith(m: i64) -> MeanFunction {
    MeanFunction::new(
        format!("floor-arith?m={m}"),
        Arity::Variadic { min: 1 },
        format!("tuples with some floor(10^{m} a_i) != 0"),
        Arc::new(move |t: &RealTuple| truncation_domain_holds(t, m, false)),
        Arc::new(move |t: &RealTuple| Ok(floor_mean_value(t, m, false))),
    )
    .with_total(Arc::new(move |t: &RealTuple| {
        Ok(floor_mean_value(t, m, false))
    }))
    .with_fast(Arc::new(move |xs: &[f64]| {
        truncation_fast(xs, m, false, true)
    }))
}

/// Ceiling counterpart: left-mean.
pub fn ceil_arith(m: i64) -> MeanFunction {
    MeanFunction::new(
        format!("ceil-arith?m={m}"),
        Arity::Variadic { min: 1 },
        format!("tuples with some ceil(10^{m} a_i) != 0"),
        Arc::new(move |t: &RealTuple| truncation_domain_holds(t, m, true)),
        Arc::new(move |t: &RealTuple| Ok(floor_mean_value(t, m, true))),
    )
    .with_total(Arc::new(move |t: &RealTuple| {
        Ok(floor_mean_value(t, m, true))
    }))
    .with_fast(Arc::new(move |xs: &[f64]| {
        truncation_fast(xs, m, true, true)
    }))
}

/// Floor mean shifted up one grid step: left-mean.
pub fn shifted_floor(m: i64) -> MeanFunction {
    let step = pow10_real(-m);
    let step2 = step.clone();
    MeanFunction::new(
        format!("shifted-floor?m={m}"),
        Arity::Variadic { min: 1 },
        format!("tuples with some floor(10^{m} a_i) != 0"),
        Arc::new(move |t: &RealTuple| truncation_domain_holds(t, m, false)),
        Arc::new(move |t: &RealTuple| Ok(floor_mean_value(t, m, false).add(&step))),
    )
    .with_total(Arc::new(move |t: &RealTuple| {
        Ok(floor_mean_value(t, m, false).add(&step2))
    }))
    .with_fast(Arc::new(move |xs: &[f64]| {
        truncation_fast(xs, m, false, true).map(|v| v + pow10_f64(-m))
    }))
}

/// Ceiling mean shifted down one grid step: right-mean.
pub fn shifted_ceil(m: i64) -> MeanFunction {
    let step = pow10_real(-m);
    let step2 = step.clone();
    MeanFunction::new(
        format!("shifted-ceil?m={m}"),
        Arity::Variadic { min: 1 },
        format!("tuples with some ceil(10^{m} a_i) != 0"),
        Arc::new(move |t: &RealTuple| truncation_domain_holds(t, m, true)),
        Arc::new(move |t: &RealTuple| Ok(floor_mean_value(t, m, true).sub(&step))),
    )
    .with_total(Arc::new(move |t: &RealTuple| {
        Ok(floor_mean_value(t, m, true).sub(&step2))
    }))
    .with_fast(Arc::new(move |xs: &[f64]| {
        truncation_fast(xs, m, true, true).map(|v| v - pow10_f64(-m))
    }))
}

/// Average of the floor and ceiling means; escapes the envelope on both
/// sides by at most half a grid step.
pub fn star_arith(m: i64) -> MeanFunction {
    MeanFunction::new(
        format!("star-arith?m={m}"),
        Arity::Variadic { min: 1 },
        format!("tuples with some floor and some ceil of 10^{m} a_i nonzero"),
        Arc::new(move |t: &RealTuple| {
            truncation_domain_holds(t, m, false) && truncation_domain_holds(t, m, true)
        }),
        Arc::new(move |t: &RealTuple| {
            Ok(floor_mean_value(t, m, false)
                .add(&floor_mean_value(t, m, true))
                .div_int(2))
        }),
    )
    .with_total(Arc::new(move |t: &RealTuple| {
        Ok(floor_mean_value(t, m, false)
            .add(&floor_mean_value(t, m, true))
            .div_int(2))
    }))
    .with_fast(Arc::new(move |xs: &[f64]| {
        let a = truncation_fast(xs, m, false, true)?;
        let b = truncation_fast(xs, m, true, true)?;
        Some(0.5 * (a + b))
    }))
}

/// Geometric mean of truncated digits. The domain requires every
/// coordinate to survive truncation, not just one.
pub fn floor_geometric(m: i64) -> MeanFunction {
    MeanFunction::new(
        format!("floor-geometric?m={m}"),
        Arity::Variadic { min: 1 },
        format!("positive tuples with every floor(10^{m} a_i) != 0"),
        Arc::new(move |t: &RealTuple| {
            t.values().iter().all(|v| {
                v.cmp_value(&Real::zero()) == std::cmp::Ordering::Greater
                    && v.floor_scaled_int(m)
                        .map(|k| k.is_positive())
                        .unwrap_or(false)
            })
        }),
        Arc::new(move |t: &RealTuple| {
            let truncated = t.map(|v| v.floor_at_scale(m));
            geometric_mean(&truncated)
        }),
    )
    .with_fast(Arc::new(move |xs: &[f64]| {
        let p = pow10_f64(m);
        let mut log_sum = 0.0;
        for &x in xs {
            let k = (x * p).floor();
            if k < 1.0 || k.is_nan() {
                return None;
            }
            log_sum += (k / p).ln();
        }
        Some((log_sum / xs.len() as f64).exp())
    }))
}

/// Coordinatewise approximation from below composed with a continuous mean.
/// With the floor rule and the arithmetic mean this reproduces the floor
/// mean on its full natural domain.
pub fn approx_mean(inner: MeanFunction, rule: &str, m: i64) -> Result<MeanFunction, MeanError> {
    let id = format!("approx-mean?inner={}&m={m}&rule={rule}", inner.id());
    match rule {
        "floor" => {
            let inner2 = inner.clone();
            let inner3 = inner.clone();
            Ok(MeanFunction::new(
                id,
                inner.arity(),
                format!(
                    "tuples whose floor(10^{m} .) image lies in dom {}",
                    inner.id()
                ),
                Arc::new(move |t: &RealTuple| inner.in_domain(&t.map(|v| v.floor_at_scale(m)))),
                Arc::new(move |t: &RealTuple| inner2.eval(&t.map(|v| v.floor_at_scale(m)))),
            )
            .with_fast(Arc::new(move |xs: &[f64]| {
                let p = pow10_f64(m);
                let mapped: Vec<f64> = xs.iter().map(|x| (x * p).floor() / p).collect();
                inner3.eval_f64(&mapped)
            })))
        }
        "identity" => {
            let inner2 = inner.clone();
            let inner3 = inner.clone();
            Ok(MeanFunction::new(
                id,
                inner.arity(),
                inner.domain_desc().to_string(),
                Arc::new(move |t: &RealTuple| inner.in_domain(t)),
                Arc::new(move |t: &RealTuple| inner2.eval(t)),
            )
            .with_fast(Arc::new(move |xs: &[f64]| inner3.eval_f64(xs))))
        }
        other => Err(MeanError::Construction(format!(
            "unknown approximation rule {other:?}"
        ))),
    }
}

// ---------------------------------------------------------------------------
// Statistics-flavored quasi-means
// ---------------------------------------------------------------------------

fn sum_real(t: &RealTuple) -> Real {
    t.values().iter().fold(Real::zero(), |acc, v| acc.add(v))
}

/// Sum over n-1 on positive entries: a left-mean.
pub fn bessel_plus() -> MeanFunction {
    MeanFunction::new(
        "bessel-plus",
        Arity::Variadic { min: 2 },
        "strictly positive entries",
        positive_domain(),
        Arc::new(|t: &RealTuple| Ok(sum_real(t).div_int(t.len() as i64 - 1))),
    )
    .with_fast(Arc::new(|xs: &[f64]| {
        if xs.iter().any(|&x| x <= 0.0) {
            return None;
        }
        Some(xs.iter().sum::<f64>() / (xs.len() as f64 - 1.0))
    }))
}

/// Sum over n-1 on negative entries: a right-mean.
pub fn bessel_minus() -> MeanFunction {
    MeanFunction::new(
        "bessel-minus",
        Arity::Variadic { min: 2 },
        "strictly negative entries",
        negative_domain(),
        Arc::new(|t: &RealTuple| Ok(sum_real(t).div_int(t.len() as i64 - 1))),
    )
    .with_fast(Arc::new(|xs: &[f64]| {
        if xs.iter().any(|&x| x >= 0.0) {
            return None;
        }
        Some(xs.iter().sum::<f64>() / (xs.len() as f64 - 1.0))
    }))
}

/// Sum over n-1 with no sign restriction; not a quasi-mean, but its
/// envelope escape is bounded by max|a_i|/(n-1).
pub fn bessel_unrestricted() -> MeanFunction {
    MeanFunction::new(
        "bessel",
        Arity::Variadic { min: 2 },
        "any real entries",
        any_domain(),
        Arc::new(|t: &RealTuple| Ok(sum_real(t).div_int(t.len() as i64 - 1))),
    )
    .with_fast(Arc::new(|xs: &[f64]| {
        Some(xs.iter().sum::<f64>() / (xs.len() as f64 - 1.0))
    }))
}

/// Root mean square with the n-1 divisor, on positive entries.
pub fn unbiased_deviation() -> MeanFunction {
    MeanFunction::new(
        "unbiased-deviation",
        Arity::Variadic { min: 2 },
        "strictly positive entries",
        positive_domain(),
        Arc::new(|t: &RealTuple| {
            let sq = t.map(|v| v.mul(v));
            sum_real(&sq).div_int(t.len() as i64 - 1).sqrt()
        }),
    )
    .with_fast(Arc::new(|xs: &[f64]| {
        if xs.iter().any(|&x| x <= 0.0) {
            return None;
        }
        Some((xs.iter().map(|x| x * x).sum::<f64>() / (xs.len() as f64 - 1.0)).sqrt())
    }))
}

#[derive(Clone, Copy)]
enum Trim {
    Smallest,
    Largest,
    Both,
}

fn trimmed(kind: Trim, id: &str) -> MeanFunction {
    MeanFunction::new(
        id,
        Arity::Variadic { min: 3 },
        "strictly positive entries, three or more",
        positive_domain(),
        Arc::new(move |t: &RealTuple| {
            let s = t.sorted();
            let n = s.len();
            let range = match kind {
                Trim::Smallest => 1..n,
                Trim::Largest => 0..n - 1,
                Trim::Both => 1..n - 1,
            };
            let sum = s.values()[range]
                .iter()
                .fold(Real::zero(), |acc, v| acc.add(v));
            Ok(sum.div_int(n as i64))
        }),
    )
}

/// Drop the smallest entry, divide by the full n.
pub fn trimmed_k1() -> MeanFunction {
    trimmed(Trim::Smallest, "trimmed-k1")
}

/// Drop the largest entry, divide by the full n.
pub fn trimmed_k2() -> MeanFunction {
    trimmed(Trim::Largest, "trimmed-k2")
}

/// Drop both extremes, divide by the full n.
pub fn trimmed_k3() -> MeanFunction {
    trimmed(Trim::Both, "trimmed-k3")
}

// ---------------------------------------------------------------------------
// Physics and conjugation
// ---------------------------------------------------------------------------

/// Total resistance of parallel resistors: a strong right-mean.
pub fn parallel_resistance() -> MeanFunction {
    MeanFunction::new(
        "parallel-resistance",
        Arity::Variadic { min: 1 },
        "strictly positive entries",
        positive_domain(),
        Arc::new(|t: &RealTuple| {
            let sum = t
                .values()
                .iter()
                .try_fold(Real::zero(), |acc, v| v.recip().map(|r| acc.add(&r)))?;
            sum.recip()
        }),
    )
    .with_fast(Arc::new(|xs: &[f64]| {
        if xs.iter().any(|&x| x <= 0.0) {
            return None;
        }
        Some(1.0 / xs.iter().map(|x| 1.0 / x).sum::<f64>())
    }))
}

/// `f^-1 ( L(f(a_1), ..., f(a_n)) )`: inherits the envelope side of `L`.
pub fn conjugate(f: GeneratorFunction, inner: MeanFunction) -> MeanFunction {
    let id = format!("conjugate?f={}&inner={}", f.name(), inner.id());
    let f2 = f.clone();
    let inner2 = inner.clone();
    let map_images = move |t: &RealTuple, f: &GeneratorFunction| -> Result<RealTuple, MeanError> {
        RealTuple::new(t.values().iter().map(|v| f.apply(v)).collect())
    };
    let map2 = map_images;
    MeanFunction::new(
        id,
        inner.arity(),
        format!(
            "tuples whose image under {} lies in dom {}",
            f.name(),
            inner.id()
        ),
        Arc::new(move |t: &RealTuple| {
            map_images(t, &f)
                .map(|imgs| inner.in_domain(&imgs))
                .unwrap_or(false)
        }),
        Arc::new(move |t: &RealTuple| {
            let imgs = map2(t, &f2)?;
            let v = inner2.eval(&imgs)?;
            Ok(Real::Approx(f2.invert(v.to_f64())?))
        }),
    )
}

/// Power-mean analogue with the n-1 divisor; x = 0 takes the (n-1)-th root
/// of the full product.
pub fn power_quasi(x: f64) -> MeanFunction {
    MeanFunction::new(
        format!("power-quasi?x={x}"),
        Arity::Variadic { min: 2 },
        "strictly positive entries",
        positive_domain(),
        Arc::new(move |t: &RealTuple| {
            let n = t.len() as i64;
            if x == 0.0 {
                let prod: f64 = t.values().iter().map(|v| v.to_f64().ln()).sum();
                return Ok(Real::Approx((prod / (n as f64 - 1.0)).exp()));
            }
            if x == 1.0 {
                return Ok(sum_real(t).div_int(n - 1));
            }
            let sum: f64 = t.values().iter().map(|v| v.to_f64().powf(x)).sum();
            Ok(Real::Approx((sum / (n as f64 - 1.0)).powf(1.0 / x)))
        }),
    )
    .with_fast(Arc::new(move |xs: &[f64]| {
        if xs.iter().any(|&v| v <= 0.0) {
            return None;
        }
        let n1 = xs.len() as f64 - 1.0;
        if x == 0.0 {
            Some((xs.iter().map(|v| v.ln()).sum::<f64>() / n1).exp())
        } else {
            Some((xs.iter().map(|v| v.powf(x)).sum::<f64>() / n1).powf(1.0 / x))
        }
    }))
}

/// Generator conjugation of the floor mean.
pub fn conjugate_floor(f: GeneratorFunction, m: i64) -> MeanFunction {
    let f2 = f.clone();
    MeanFunction::new(
        format!("conjugate-floor?f={}&m={m}", f.name()),
        Arity::Variadic { min: 1 },
        format!("tuples with some floor(10^{m} f(a_i)) != 0"),
        Arc::new(move |t: &RealTuple| {
            t.values().iter().any(|v| {
                f.apply(v)
                    .floor_scaled_int(m)
                    .map(|k| !k.is_zero())
                    .unwrap_or(false)
            })
        }),
        Arc::new(move |t: &RealTuple| {
            let imgs = RealTuple::new(t.values().iter().map(|v| f2.apply(v)).collect())?;
            let v = floor_mean_value(&imgs, m, false);
            Ok(Real::Approx(f2.invert(v.to_f64())?))
        }),
    )
}

// ---------------------------------------------------------------------------
// Assorted constructions
// ---------------------------------------------------------------------------

/// Applies the inner mean to the positive entries only; 0 when there are
/// none. A left-mean that loses monotonicity.
pub fn positive_filter(inner: MeanFunction) -> Result<MeanFunction, MeanError> {
    match inner.arity() {
        Arity::Variadic { .. } => {}
        Arity::Fixed(_) => {
            return Err(MeanError::Construction(
                "positive-filter needs a variadic symmetric inner mean".into(),
            ))
        }
    }
    let inner2 = inner.clone();
    Ok(MeanFunction::new(
        format!("positive-filter?inner={}", inner.id()),
        Arity::Variadic { min: 1 },
        "any real entries",
        any_domain(),
        Arc::new(move |t: &RealTuple| {
            let positives: Vec<Real> = t
                .values()
                .iter()
                .filter(|v| v.cmp_value(&Real::zero()) == std::cmp::Ordering::Greater)
                .cloned()
                .collect();
            if positives.is_empty() {
                return Ok(Real::zero());
            }
            inner2.eval(&RealTuple::new(positives)?)
        }),
    ))
}

/// `sqrt(a^2 + b^2) / 2`: a right-mean on the positive quadrant.
pub fn half_quadratic() -> MeanFunction {
    MeanFunction::new(
        "half-quadratic",
        Arity::Fixed(2),
        "two strictly positive entries",
        positive_domain(),
        Arc::new(|t: &RealTuple| {
            let a = t.get(0);
            let b = t.get(1);
            a.mul(a).add(&b.mul(b)).sqrt().map(|v| v.div_int(2))
        }),
    )
    .with_fast(Arc::new(|xs: &[f64]| {
        if xs[0] <= 0.0 || xs[1] <= 0.0 {
            return None;
        }
        Some((xs[0] * xs[0] + xs[1] * xs[1]).sqrt() / 2.0)
    }))
}

fn chain_sum(t: &RealTuple) -> Real {
    let mut prefix = Real::one();
    let mut sum = Real::zero();
    for v in t.values() {
        prefix = prefix.mul(v);
        sum = sum.add(&prefix);
    }
    sum
}

fn unit_domain() -> crate::mean::DomainFn {
    Arc::new(|t: &RealTuple| {
        t.values().iter().all(|v| {
            v.cmp_value(&Real::zero()) != std::cmp::Ordering::Less
                && v.cmp_value(&Real::one()) != std::cmp::Ordering::Greater
        })
    })
}

fn ge1_domain() -> crate::mean::DomainFn {
    Arc::new(|t: &RealTuple| {
        t.values()
            .iter()
            .all(|v| v.cmp_value(&Real::one()) != std::cmp::Ordering::Less)
    })
}

/// Average of the prefix products a1 + a1 a2 + ... ; order sensitive.
/// `dom` picks the restriction: "ge1" for entries >= 1, "unit" for [0, 1].
pub fn product_chain(dom: &str) -> Result<MeanFunction, MeanError> {
    let (domain, desc): (crate::mean::DomainFn, _) = match dom {
        "ge1" => (ge1_domain(), "entries >= 1"),
        "unit" => (unit_domain(), "entries in [0, 1]"),
        other => {
            return Err(MeanError::Construction(format!(
                "unknown restriction {other:?}"
            )))
        }
    };
    Ok(MeanFunction::new(
        format!("product-chain?dom={dom}"),
        Arity::Variadic { min: 1 },
        desc,
        domain,
        Arc::new(|t: &RealTuple| Ok(chain_sum(t).div_int(t.len() as i64))),
    ))
}

/// n-th root of the prefix product average.
pub fn product_chain_root(dom: &str) -> Result<MeanFunction, MeanError> {
    let (domain, desc): (crate::mean::DomainFn, _) = match dom {
        "ge1" => (ge1_domain(), "entries >= 1"),
        "unit" => (unit_domain(), "entries in [0, 1]"),
        other => {
            return Err(MeanError::Construction(format!(
                "unknown restriction {other:?}"
            )))
        }
    };
    Ok(MeanFunction::new(
        format!("product-chain-root?dom={dom}"),
        Arity::Variadic { min: 1 },
        desc,
        domain,
        Arc::new(|t: &RealTuple| {
            let v = chain_sum(t).div_int(t.len() as i64);
            v.powf(1.0 / t.len() as f64)
        }),
    ))
}

/// `(a+b) / (2 + max - min)`: reflexive right-mean, not monotone.
pub fn range_penalized_a() -> MeanFunction {
    MeanFunction::new(
        "range-penalized-a",
        Arity::Fixed(2),
        "two strictly positive entries",
        positive_domain(),
        Arc::new(|t: &RealTuple| {
            let spread = t.max_value().sub(&t.min_value());
            sum_real(t).div(&Real::from_int(2).add(&spread))
        }),
    )
    .with_fast(Arc::new(|xs: &[f64]| {
        if xs[0] <= 0.0 || xs[1] <= 0.0 {
            return None;
        }
        Some((xs[0] + xs[1]) / (2.0 + (xs[0] - xs[1]).abs()))
    }))
}

/// `(a+b) / (2 + 1/(max - min))` off the diagonal, `a` on it: reflexive
/// right-mean that is not continuous.
pub fn range_penalized_b() -> MeanFunction {
    MeanFunction::new(
        "range-penalized-b",
        Arity::Fixed(2),
        "two strictly positive entries",
        positive_domain(),
        Arc::new(|t: &RealTuple| {
            let spread = t.max_value().sub(&t.min_value());
            if spread == Real::zero() {
                return Ok(t.get(0).clone());
            }
            sum_real(t).div(&Real::from_int(2).add(&spread.recip()?))
        }),
    )
    .with_fast(Arc::new(|xs: &[f64]| {
        if xs[0] <= 0.0 || xs[1] <= 0.0 {
            return None;
        }
        let spread = (xs[0] - xs[1]).abs();
        if spread == 0.0 {
            Some(xs[0])
        } else {
            Some((xs[0] + xs[1]) / (2.0 + 1.0 / spread))
        }
    }))
}

/// The continuous quasi-monotone right-mean on the unit square that is not
/// monotone. Symmetric; written for min <= max.
pub fn quasi_monotone_example() -> MeanFunction {
    MeanFunction::new(
        "quasi-monotone-example",
        Arity::Fixed(2),
        "two entries in [0, 1]",
        unit_domain(),
        Arc::new(|t: &RealTuple| {
            let lo = t.min_value();
            let hi = t.max_value();
            if hi == Real::zero() {
                return Ok(Real::zero());
            }
            // hi * 2 (lo/hi)^2 below the half diagonal, the mirrored
            // parabola above it; both equal hi/2 at lo = hi/2.
            if lo.cmp_value(&hi.div_int(2)) != std::cmp::Ordering::Greater {
                lo.mul(&lo).div(&hi).map(|v| v.mul(&Real::from_int(2)))
            } else {
                let gap = hi.sub(&lo);
                Ok(hi.sub(&gap.mul(&gap).mul(&Real::from_int(2)).div(&hi)?))
            }
        }),
    )
    .with_fast(Arc::new(|xs: &[f64]| {
        let lo = xs[0].min(xs[1]);
        let hi = xs[0].max(xs[1]);
        if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) {
            return None;
        }
        if hi == 0.0 {
            return Some(0.0);
        }
        if lo <= hi / 2.0 {
            Some(2.0 * lo * lo / hi)
        } else {
            Some(hi - 2.0 * (hi - lo) * (hi - lo) / hi)
        }
    }))
}

/// `a - ab + a^2 b` on the unit square; its fixed point set in the first
/// coordinate collapses from the whole interval to {0, 1} as b leaves 0.
pub fn fixed_point_example() -> MeanFunction {
    MeanFunction::new(
        "fixed-point-example",
        Arity::Fixed(2),
        "two entries in [0, 1]",
        unit_domain(),
        Arc::new(|t: &RealTuple| {
            let a = t.get(0);
            let b = t.get(1);
            Ok(a.sub(&a.mul(b)).add(&a.mul(a).mul(b)))
        }),
    )
    .with_fast(Arc::new(|xs: &[f64]| {
        let (a, b) = (xs[0], xs[1]);
        if !(0.0..=1.0).contains(&a) || !(0.0..=1.0).contains(&b) {
            return None;
        }
        Some(a - a * b + a * a * b)
    }))
}

/// `min(a^2, b)` on [0, 2]^2; the iterated-closure example whose limit
/// function is discontinuous.
pub fn min_square() -> MeanFunction {
    MeanFunction::new(
        "min-square",
        Arity::Fixed(2),
        "two entries in [0, 2]",
        Arc::new(|t: &RealTuple| {
            t.values().iter().all(|v| {
                v.cmp_value(&Real::zero()) != std::cmp::Ordering::Less
                    && v.cmp_value(&Real::from_int(2)) != std::cmp::Ordering::Greater
            })
        }),
        Arc::new(|t: &RealTuple| {
            let a = t.get(0);
            Ok(a.mul(a).min_value(t.get(1)))
        }),
    )
}

// ---------------------------------------------------------------------------
// Ordinary means as registered functions
// ---------------------------------------------------------------------------

pub fn arith() -> MeanFunction {
    MeanFunction::new(
        "arith",
        Arity::Variadic { min: 1 },
        "any real entries",
        any_domain(),
        Arc::new(|t: &RealTuple| Ok(arithmetic_mean(t))),
    )
    .with_fast(Arc::new(|xs: &[f64]| {
        Some(xs.iter().sum::<f64>() / xs.len() as f64)
    }))
}

pub fn geometric() -> MeanFunction {
    MeanFunction::new(
        "geometric",
        Arity::Variadic { min: 1 },
        "strictly positive entries",
        positive_domain(),
        Arc::new(|t: &RealTuple| geometric_mean(t)),
    )
    .with_fast(Arc::new(|xs: &[f64]| {
        if xs.iter().any(|&x| x <= 0.0) {
            return None;
        }
        Some((xs.iter().map(|x| x.ln()).sum::<f64>() / xs.len() as f64).exp())
    }))
}

pub fn harmonic() -> MeanFunction {
    MeanFunction::new(
        "harmonic",
        Arity::Variadic { min: 1 },
        "strictly positive entries",
        positive_domain(),
        Arc::new(|t: &RealTuple| harmonic_mean(t)),
    )
}

pub fn power(x: f64) -> MeanFunction {
    MeanFunction::new(
        format!("power?x={x}"),
        Arity::Variadic { min: 1 },
        "strictly positive entries",
        positive_domain(),
        Arc::new(move |t: &RealTuple| power_mean(t, x)),
    )
}

pub fn quasi_arith(f: GeneratorFunction) -> MeanFunction {
    let (lo, hi) = f.bracket();
    let f2 = f.clone();
    MeanFunction::new(
        format!("quasi-arith?f={}", f.name()),
        Arity::Variadic { min: 1 },
        format!("entries inside the generator bracket [{lo}, {hi}]"),
        Arc::new(move |t: &RealTuple| {
            t.values().iter().all(|v| {
                let x = v.to_f64();
                x >= lo && x <= hi
            })
        }),
        Arc::new(move |t: &RealTuple| quasi_arithmetic_mean(t, &f2)),
    )
}

pub fn min_mean() -> MeanFunction {
    MeanFunction::new(
        "min",
        Arity::Variadic { min: 1 },
        "any real entries",
        any_domain(),
        Arc::new(|t: &RealTuple| Ok(t.min_value())),
    )
    .with_fast(Arc::new(|xs: &[f64]| xs.iter().cloned().reduce(f64::min)))
}

pub fn max_mean() -> MeanFunction {
    MeanFunction::new(
        "max",
        Arity::Variadic { min: 1 },
        "any real entries",
        any_domain(),
        Arc::new(|t: &RealTuple| Ok(t.max_value())),
    )
    .with_fast(Arc::new(|xs: &[f64]| xs.iter().cloned().reduce(f64::max)))
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    /// Every family at its canonical parameters; truncation families at
    /// m in {-1, 0, 1, 2}.
    pub fn standard() -> Catalog {
        let mut entries = Vec::new();
        for id in Self::standard_ids() {
            entries.push(Self::construct(&id).expect("standard id constructs"));
        }
        Catalog { entries }
    }

    pub fn standard_ids() -> Vec<String> {
        let mut ids: Vec<String> = vec![
            "min",
            "max",
            "arith",
            "geometric",
            "harmonic",
            "power?x=2",
            "quasi-arith?f=square",
            "bessel-plus",
            "bessel-minus",
            "bessel",
            "unbiased-deviation",
            "trimmed-k1",
            "trimmed-k2",
            "trimmed-k3",
            "parallel-resistance",
            "conjugate?f=square&inner=bessel-plus",
            "power-quasi?x=1",
            "conjugate-floor?f=square&m=0",
            "positive-filter?inner=arith",
            "half-quadratic",
            "product-chain?dom=ge1",
            "product-chain?dom=unit",
            "product-chain-root?dom=ge1",
            "product-chain-root?dom=unit",
            "range-penalized-a",
            "range-penalized-b",
            "approx-mean?inner=arith&rule=floor&m=0",
            "quasi-monotone-example",
            "fixed-point-example",
            "min-square",
        ]
        .into_iter()
        .map(String::from)
        .collect();
        for m in [-1i64, 0, 1, 2] {
            for fam in [
                "floor-arith",
                "ceil-arith",
                "shifted-floor",
                "shifted-ceil",
                "star-arith",
                "floor-geometric",
            ] {
                ids.push(format!("{fam}?m={m}"));
            }
        }
        ids
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get(&self, id: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    /// JSON listing of every registered entry.
    pub fn listing_json(&self) -> serde_json::Value {
        json!({
            "schema": "quasimean/1",
            "entries": self.entries.iter().map(|e| e.listing()).collect::<Vec<_>>(),
        })
    }

    /// Builds an entry from a string id with URL-style parameters. Unknown
    /// parameter names are errors, not defaults.
    pub fn construct(id: &str) -> Result<CatalogEntry, MeanError> {
        let (name, mut params) = split_id(id);
        let entry = build_entry(&name, &mut params)?;
        if let Some(key) = params.keys().next() {
            return Err(MeanError::Construction(format!(
                "unknown parameter {key:?} for {name}"
            )));
        }
        Ok(entry)
    }
}

fn take_i64(
    params: &mut BTreeMap<String, String>,
    key: &str,
    default: i64,
) -> Result<i64, MeanError> {
    match params.remove(key) {
        None => Ok(default),
        Some(v) => v.parse().map_err(|_| {
            MeanError::Construction(format!("parameter {key}={v:?} is not an integer"))
        }),
    }
}

fn take_f64(
    params: &mut BTreeMap<String, String>,
    key: &str,
    default: f64,
) -> Result<f64, MeanError> {
    match params.remove(key) {
        None => Ok(default),
        Some(v) => {
            if let Some((p, q)) = v.split_once('/') {
                let p: f64 = p.parse().map_err(|_| bad_num(key, &v))?;
                let q: f64 = q.parse().map_err(|_| bad_num(key, &v))?;
                return Ok(p / q);
            }
            v.parse().map_err(|_| bad_num(key, &v))
        }
    }
}

fn bad_num(key: &str, v: &str) -> MeanError {
    MeanError::Construction(format!("parameter {key}={v:?} is not a number"))
}

fn take_str(params: &mut BTreeMap<String, String>, key: &str, default: &str) -> String {
    params.remove(key).unwrap_or_else(|| default.to_string())
}

fn positive_box() -> DomainBox {
    DomainBox::closed_str("0.1", "10", Arity::Variadic { min: 1 })
}

fn entry(
    mean: MeanFunction,
    class: MeanClass,
    props: &[Property],
    negs: Vec<(Property, Witness)>,
    default_box: DomainBox,
) -> CatalogEntry {
    CatalogEntry {
        id: mean.id().to_string(),
        mean,
        declared_class: class,
        declared_properties: props.to_vec(),
        declared_negations: negs,
        quasi_spec: None,
        default_box,
    }
}

fn build_entry(
    name: &str,
    params: &mut BTreeMap<String, String>,
) -> Result<CatalogEntry, MeanError> {
    use Property as P;
    let e = match name {
        "min" => entry(
            min_mean(),
            MeanClass::Mean,
            &[
                P::Monotone,
                P::Symmetric,
                P::Continuous,
                P::Reflexive,
                P::Strong,
            ],
            vec![(P::Strict, Witness::Tuple(tup(&["1", "2"])))],
            DomainBox::closed_str("-10", "10", Arity::Variadic { min: 1 }),
        ),
        "max" => entry(
            max_mean(),
            MeanClass::Mean,
            &[P::Monotone, P::Symmetric, P::Continuous, P::Reflexive],
            vec![(P::Strict, Witness::Tuple(tup(&["1", "2"])))],
            DomainBox::closed_str("-10", "10", Arity::Variadic { min: 1 }),
        ),
        "arith" => entry(
            arith(),
            MeanClass::Mean,
            &[
                P::Strict,
                P::Monotone,
                P::Symmetric,
                P::Continuous,
                P::Reflexive,
                P::MeanContinuous,
            ],
            vec![],
            DomainBox::closed_str("-10", "10", Arity::Variadic { min: 1 }),
        ),
        "geometric" => entry(
            geometric(),
            MeanClass::Mean,
            &[
                P::Strict,
                P::Monotone,
                P::Symmetric,
                P::Continuous,
                P::Reflexive,
            ],
            vec![],
            positive_box(),
        ),
        "harmonic" => entry(
            harmonic(),
            MeanClass::Mean,
            &[
                P::Strict,
                P::Monotone,
                P::Symmetric,
                P::Continuous,
                P::Reflexive,
            ],
            vec![],
            positive_box(),
        ),
        "power" => {
            let x = take_f64(params, "x", 2.0)?;
            entry(
                power(x),
                MeanClass::Mean,
                &[
                    P::Strict,
                    P::Monotone,
                    P::Symmetric,
                    P::Continuous,
                    P::Reflexive,
                ],
                vec![],
                positive_box(),
            )
        }
        "quasi-arith" => {
            let f = GeneratorFunction::by_name(&take_str(params, "f", "identity"))?;
            let b = match f.name() {
                "square" | "ln" => positive_box(),
                _ => DomainBox::closed_str("-10", "10", Arity::Variadic { min: 1 }),
            };
            entry(
                quasi_arith(f),
                MeanClass::Mean,
                &[
                    P::Strict,
                    P::Monotone,
                    P::Symmetric,
                    P::Continuous,
                    P::Reflexive,
                ],
                vec![],
                b,
            )
        }
        "bessel-plus" => entry(
            bessel_plus(),
            MeanClass::LeftMean,
            &[P::Strict, P::Monotone, P::Symmetric, P::Continuous],
            vec![
                (P::RightMean, Witness::Tuple(tup(&["1", "2"]))),
                (P::Reflexive, Witness::Diagonal(dec("1"))),
            ],
            positive_box(),
        ),
        "bessel-minus" => entry(
            bessel_minus(),
            MeanClass::RightMean,
            &[P::Strict, P::Monotone, P::Symmetric, P::Continuous],
            vec![
                (P::LeftMean, Witness::Tuple(tup(&["-1", "-2"]))),
                (P::Reflexive, Witness::Diagonal(dec("-1"))),
            ],
            DomainBox::closed_str("-10", "-0.1", Arity::Variadic { min: 1 }),
        ),
        "bessel" => {
            let mut e = entry(
                bessel_unrestricted(),
                MeanClass::MQuasi,
                &[P::Monotone, P::Symmetric, P::Continuous],
                vec![
                    (P::RightMean, Witness::Tuple(tup(&["1", "2"]))),
                    (P::LeftMean, Witness::Tuple(tup(&["-1", "-2"]))),
                ],
                DomainBox::closed_str("-5", "5", Arity::Variadic { min: 1 }),
            );
            e.quasi_spec = Some(QuasiSpec::MultiplicativePerArity);
            e
        }
        "unbiased-deviation" => entry(
            unbiased_deviation(),
            MeanClass::LeftMean,
            &[P::Strict, P::Monotone, P::Symmetric, P::Continuous],
            vec![
                (P::RightMean, Witness::Tuple(tup(&["1", "1"]))),
                (P::Reflexive, Witness::Diagonal(dec("1"))),
            ],
            positive_box(),
        ),
        "trimmed-k1" => entry(
            trimmed_k1(),
            MeanClass::RightMean,
            &[P::Symmetric],
            vec![(P::LeftMean, Witness::Tuple(tup(&["10", "11", "12"])))],
            positive_box(),
        ),
        "trimmed-k2" => entry(
            trimmed_k2(),
            MeanClass::RightMean,
            &[P::Symmetric],
            vec![(P::LeftMean, Witness::Tuple(tup(&["10", "11", "12"])))],
            positive_box(),
        ),
        "trimmed-k3" => entry(
            trimmed_k3(),
            MeanClass::RightMean,
            &[P::Symmetric],
            vec![(P::LeftMean, Witness::Tuple(tup(&["10", "11", "12"])))],
            positive_box(),
        ),
        "parallel-resistance" => entry(
            parallel_resistance(),
            MeanClass::RightMean,
            &[P::Strong, P::Monotone, P::Symmetric, P::Continuous],
            vec![
                (P::LeftMean, Witness::Tuple(tup(&["1", "1"]))),
                (P::Reflexive, Witness::Diagonal(dec("1"))),
            ],
            positive_box(),
        ),
        "floor-arith" => {
            let m = take_i64(params, "m", 0)?;
            entry(
                floor_arith(m),
                MeanClass::RightMean,
                &[
                    P::Strict,
                    P::Monotone,
                    P::Symmetric,
                    P::RightContinuous,
                    P::SemiReflexive,
                ],
                vec![
                    (P::LeftMean, Witness::Tuple(scale_tup(&["1.9", "2.1"], m))),
                    (P::Reflexive, Witness::Diagonal(scale_dec("2.1", m))),
                    (P::MeanContinuous, Witness::Diagonal(scale_dec("2.1", m))),
                    (
                        P::LeftContinuous,
                        Witness::Point(scale_tup(&["2", "3.5"], m)),
                    ),
                    (P::Continuous, Witness::Point(scale_tup(&["2", "3.5"], m))),
                    (P::Strong, Witness::Tuple(scale_tup(&["1", "3"], m))),
                ],
                scaled_box(m),
            )
        }
        "ceil-arith" => {
            let m = take_i64(params, "m", 0)?;
            entry(
                ceil_arith(m),
                MeanClass::LeftMean,
                &[
                    P::Strict,
                    P::Monotone,
                    P::Symmetric,
                    P::LeftContinuous,
                    P::SemiReflexive,
                ],
                vec![
                    (P::RightMean, Witness::Tuple(scale_tup(&["1.9", "2.1"], m))),
                    (P::Reflexive, Witness::Diagonal(scale_dec("2.1", m))),
                    (P::MeanContinuous, Witness::Diagonal(scale_dec("2.1", m))),
                    (
                        P::RightContinuous,
                        Witness::Point(scale_tup(&["2", "3.5"], m)),
                    ),
                    (P::Continuous, Witness::Point(scale_tup(&["2", "3.5"], m))),
                ],
                scaled_box(m),
            )
        }
        "shifted-floor" => {
            let m = take_i64(params, "m", 0)?;
            entry(
                shifted_floor(m),
                MeanClass::LeftMean,
                &[P::Strict, P::Monotone, P::Symmetric, P::RightContinuous],
                vec![
                    (P::RightMean, Witness::Tuple(scale_tup(&["1", "2"], m))),
                    (P::Reflexive, Witness::Diagonal(scale_dec("2.1", m))),
                    (P::SemiReflexive, Witness::Diagonal(scale_dec("2.1", m))),
                    (P::MeanContinuous, Witness::Diagonal(scale_dec("2.1", m))),
                    (
                        P::LeftContinuous,
                        Witness::Point(scale_tup(&["2", "3.5"], m)),
                    ),
                    (P::Continuous, Witness::Point(scale_tup(&["2", "3.5"], m))),
                ],
                scaled_box(m),
            )
        }
        "shifted-ceil" => {
            let m = take_i64(params, "m", 0)?;
            entry(
                shifted_ceil(m),
                MeanClass::RightMean,
                &[P::Strict, P::Monotone, P::Symmetric, P::LeftContinuous],
                vec![
                    (P::LeftMean, Witness::Tuple(scale_tup(&["2.1", "3"], m))),
                    (P::Reflexive, Witness::Diagonal(scale_dec("1.9", m))),
                    (P::SemiReflexive, Witness::Diagonal(scale_dec("1.9", m))),
                    (P::MeanContinuous, Witness::Diagonal(scale_dec("1.9", m))),
                    (
                        P::RightContinuous,
                        Witness::Point(scale_tup(&["2", "3.5"], m)),
                    ),
                    (P::Continuous, Witness::Point(scale_tup(&["2", "3.5"], m))),
                ],
                scaled_box(m),
            )
        }
        "star-arith" => {
            let m = take_i64(params, "m", 0)?;
            let mut e = entry(
                star_arith(m),
                MeanClass::AQuasi,
                &[P::Monotone, P::Symmetric],
                vec![
                    (P::RightMean, Witness::Tuple(scale_tup(&["2", "2.1"], m))),
                    (P::LeftMean, Witness::Tuple(scale_tup(&["1.9", "2"], m))),
                ],
                scaled_box(m),
            );
            e.quasi_spec = Some(QuasiSpec::Additive(Real::ratio(1, 2).mul(&pow10_real(-m))));
            e
        }
        "floor-geometric" => {
            let m = take_i64(params, "m", 0)?;
            entry(
                floor_geometric(m),
                MeanClass::RightMean,
                &[P::Monotone, P::Symmetric],
                vec![(P::LeftMean, Witness::Tuple(scale_tup(&["1.5", "2.5"], m)))],
                scaled_box(m),
            )
        }
        "approx-mean" => {
            let m = take_i64(params, "m", 0)?;
            let rule = take_str(params, "rule", "floor");
            let inner_id = take_str(params, "inner", "arith");
            let inner = Catalog::construct(&inner_id)?;
            entry(
                approx_mean(inner.mean, &rule, m)?,
                MeanClass::RightMean,
                &[P::Monotone, P::Symmetric],
                if rule == "floor" {
                    vec![(P::LeftMean, Witness::Tuple(scale_tup(&["1.9", "2.1"], m)))]
                } else {
                    vec![]
                },
                scaled_box(m),
            )
        }
        "conjugate" => {
            let f = GeneratorFunction::by_name(&take_str(params, "f", "identity"))?;
            let inner_id = take_str(params, "inner", "bessel-plus");
            let inner = Catalog::construct(&inner_id)?;
            let class = inner.declared_class;
            let negs = match class {
                MeanClass::LeftMean => vec![(P::RightMean, Witness::Search)],
                MeanClass::RightMean => vec![(P::LeftMean, Witness::Search)],
                _ => vec![],
            };
            entry(
                conjugate(f, inner.mean),
                class,
                &[P::Strict, P::Monotone, P::Symmetric],
                negs,
                positive_box(),
            )
        }
        "power-quasi" => {
            let x = take_f64(params, "x", 1.0)?;
            entry(
                power_quasi(x),
                MeanClass::LeftMean,
                &[P::Strict, P::Monotone, P::Symmetric, P::Continuous],
                vec![
                    (P::RightMean, Witness::Tuple(tup(&["2", "3", "4"]))),
                    (P::Reflexive, Witness::Diagonal(dec("1"))),
                ],
                positive_box(),
            )
        }
        "conjugate-floor" => {
            let m = take_i64(params, "m", 0)?;
            let f = GeneratorFunction::by_name(&take_str(params, "f", "identity"))?;
            entry(
                conjugate_floor(f, m),
                MeanClass::RightMean,
                &[P::Strict, P::Monotone, P::Symmetric, P::Continuous],
                vec![(P::Reflexive, Witness::Diagonal(dec("1.5")))],
                DomainBox::closed_str("1", "4", Arity::Variadic { min: 1 }),
            )
        }
        "positive-filter" => {
            let inner_id = take_str(params, "inner", "arith");
            let inner = Catalog::construct(&inner_id)?;
            entry(
                positive_filter(inner.mean)?,
                MeanClass::LeftMean,
                &[P::Symmetric, P::LeftContinuous],
                vec![
                    (
                        P::Monotone,
                        Witness::Pair(tup(&["-1", "2", "3"]), tup(&["1", "2", "3"])),
                    ),
                    (P::RightMean, Witness::Tuple(tup(&["-1", "-2"]))),
                    // Entries crossing into positivity change the filtered
                    // set: at (0, 2) the value is 2, the right limit is 1.
                    (P::RightContinuous, Witness::Point(tup(&["0", "2"]))),
                ],
                DomainBox::closed_str("-5", "5", Arity::Variadic { min: 1 }),
            )
        }
        "half-quadratic" => entry(
            half_quadratic(),
            MeanClass::RightMean,
            &[P::Strict, P::Monotone, P::Symmetric, P::Continuous],
            vec![
                (P::LeftMean, Witness::Tuple(tup(&["1", "1"]))),
                (P::Reflexive, Witness::Diagonal(dec("1"))),
            ],
            positive_box(),
        ),
        "product-chain" => {
            let dom = take_str(params, "dom", "ge1");
            let (class, neg, b) = if dom == "ge1" {
                (
                    MeanClass::LeftMean,
                    vec![
                        (P::RightMean, Witness::Tuple(tup(&["2", "2"]))),
                        (P::Reflexive, Witness::Diagonal(dec("2"))),
                    ],
                    DomainBox::closed_str("1", "3", Arity::Variadic { min: 1 }),
                )
            } else {
                (
                    MeanClass::RightMean,
                    vec![
                        (P::LeftMean, Witness::Tuple(tup(&["0.5", "0.5"]))),
                        (P::Reflexive, Witness::Diagonal(dec("0.5"))),
                    ],
                    DomainBox::closed_str("0", "1", Arity::Variadic { min: 1 }),
                )
            };
            entry(product_chain(&dom)?, class, &[P::Continuous], neg, b)
        }
        "product-chain-root" => {
            let dom = take_str(params, "dom", "ge1");
            let (class, neg, b) = if dom == "ge1" {
                (
                    MeanClass::RightMean,
                    vec![
                        (P::LeftMean, Witness::Tuple(tup(&["2", "2"]))),
                        (P::Reflexive, Witness::Diagonal(dec("2"))),
                    ],
                    DomainBox::closed_str("1", "3", Arity::Variadic { min: 1 }),
                )
            } else {
                (
                    MeanClass::LeftMean,
                    vec![
                        (P::RightMean, Witness::Tuple(tup(&["0.5", "0.5"]))),
                        (P::Reflexive, Witness::Diagonal(dec("0.5"))),
                    ],
                    DomainBox::closed_str("0", "1", Arity::Variadic { min: 1 }),
                )
            };
            entry(product_chain_root(&dom)?, class, &[P::Continuous], neg, b)
        }
        "range-penalized-a" => entry(
            range_penalized_a(),
            MeanClass::RightMean,
            &[
                P::Strict,
                P::Symmetric,
                P::Continuous,
                P::Reflexive,
                P::MeanContinuous,
            ],
            vec![
                (
                    P::Monotone,
                    Witness::Pair(tup(&["2", "3"]), tup(&["2", "4"])),
                ),
                (P::LeftMean, Witness::Tuple(tup(&["2", "4"]))),
            ],
            positive_box(),
        ),
        "range-penalized-b" => entry(
            range_penalized_b(),
            MeanClass::RightMean,
            &[P::Strict, P::Symmetric, P::Reflexive],
            vec![
                (P::Continuous, Witness::Point(tup(&["1", "1"]))),
                (P::MeanContinuous, Witness::Diagonal(dec("1"))),
                (P::LeftMean, Witness::Tuple(tup(&["10", "11"]))),
            ],
            positive_box(),
        ),
        "quasi-monotone-example" => entry(
            quasi_monotone_example(),
            MeanClass::RightMean,
            &[P::Symmetric, P::Continuous, P::QuasiMonotone],
            vec![(
                P::Monotone,
                Witness::Pair(tup(&["0.2", "0.4"]), tup(&["0.2", "1"])),
            )],
            DomainBox::closed_str("0", "1", Arity::Fixed(2)),
        ),
        "fixed-point-example" => entry(
            fixed_point_example(),
            MeanClass::RightMean,
            &[P::Continuous],
            vec![(P::Reflexive, Witness::Diagonal(dec("0.5")))],
            DomainBox::closed_str("0", "1", Arity::Fixed(2)),
        ),
        "min-square" => entry(
            min_square(),
            MeanClass::RightMean,
            &[P::Continuous],
            vec![(P::Reflexive, Witness::Diagonal(dec("0.5")))],
            DomainBox::closed_str("0", "2", Arity::Fixed(2)),
        ),
        other => {
            return Err(MeanError::Construction(format!(
                "unknown catalog id {other:?}"
            )))
        }
    };
    Ok(e)
}
