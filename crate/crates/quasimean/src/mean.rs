//! The `MeanFunction` abstraction, generator functions for quasi-arithmetic
//! means, the ordinary means, and one-sided truncation.

use std::sync::Arc;

use crate::error::MeanError;
use crate::real::Real;
use crate::tuple::{Arity, RealTuple};

/// Comparison slack applied only when a value is inexact.
pub const MEAN_LIKE_TOL: f64 = 1e-12;

pub type EvalFn = Arc<dyn Fn(&RealTuple) -> Result<Real, MeanError> + Send + Sync>;
type ExactMap = Arc<dyn Fn(&Real) -> Option<Real> + Send + Sync>;
pub type DomainFn = Arc<dyn Fn(&RealTuple) -> bool + Send + Sync>;
pub type FastFn = Arc<dyn Fn(&[f64]) -> Option<f64> + Send + Sync>;

/// A named, parameterized real function of tuples: the universal currency of
/// the toolkit. Evaluation is pure and deterministic; values are shared
/// behind `Arc` so functions are cheap to clone and safe to use concurrently.
#[derive(Clone)]
pub struct MeanFunction {
    id: String,
    arity: Arity,
    domain: DomainFn,
    domain_desc: String,
    eval_fn: EvalFn,
    total_fn: Option<EvalFn>,
    fast_fn: Option<FastFn>,
}

impl MeanFunction {
    pub fn new(
        id: impl Into<String>,
        arity: Arity,
        domain_desc: impl Into<String>,
        domain: DomainFn,
        eval_fn: EvalFn,
    ) -> Self {
        MeanFunction {
            id: id.into(),
            arity,
            domain,
            domain_desc: domain_desc.into(),
            eval_fn,
            total_fn: None,
            fast_fn: None,
        }
    }

    /// Formula extension used by the iteration operators; evaluates the
    /// defining formula on its natural domain even where the registered
    /// domain excludes a tuple for bookkeeping reasons.
    pub fn with_total(mut self, f: EvalFn) -> Self {
        self.total_fn = Some(f);
        self
    }

    /// Screening path for samplers; must agree with `eval` up to f64
    /// rounding wherever both are defined.
    pub fn with_fast(mut self, f: FastFn) -> Self {
        self.fast_fn = Some(f);
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn arity(&self) -> Arity {
        self.arity
    }

    pub fn domain_desc(&self) -> &str {
        &self.domain_desc
    }

    pub fn in_domain(&self, t: &RealTuple) -> bool {
        self.arity.accepts(t.len()) && (self.domain)(t)
    }

    pub fn eval(&self, t: &RealTuple) -> Result<Real, MeanError> {
        if !self.arity.accepts(t.len()) {
            return Err(MeanError::Arity {
                expected: self.arity.describe(),
                got: t.len(),
            });
        }
        if !(self.domain)(t) {
            return Err(MeanError::Domain(format!(
                "{} rejects {}: domain is {}",
                self.id, t, self.domain_desc
            )));
        }
        (self.eval_fn)(t)
    }

    /// Evaluation used by iterative procedures; identical to `eval` unless
    /// the entry declares a formula extension.
    pub fn eval_total(&self, t: &RealTuple) -> Result<Real, MeanError> {
        if !self.arity.accepts(t.len()) {
            return Err(MeanError::Arity {
                expected: self.arity.describe(),
                got: t.len(),
            });
        }
        match &self.total_fn {
            Some(f) => f(t),
            None => {
                if !(self.domain)(t) {
                    return Err(MeanError::Domain(format!(
                        "{} rejects {}: domain is {}",
                        self.id, t, self.domain_desc
                    )));
                }
                (self.eval_fn)(t)
            }
        }
    }

    /// Fast screening evaluation; `None` when out of domain or unsupported.
    pub fn eval_f64(&self, xs: &[f64]) -> Option<f64> {
        if !self.arity.accepts(xs.len()) {
            return None;
        }
        if let Some(f) = &self.fast_fn {
            return f(xs);
        }
        let t = RealTuple::from_f64(xs).ok()?;
        if !(self.domain)(&t) {
            return None;
        }
        (self.eval_fn)(&t).ok().map(|v| v.to_f64())
    }

    /// Restriction to a fixed arity; keeps evaluation, narrows acceptance.
    pub fn restrict_arity(&self, n: usize) -> MeanFunction {
        let mut m = self.clone();
        m.id = format!("{}|{}", self.id, n);
        m.arity = Arity::Fixed(n);
        m
    }
}

impl std::fmt::Debug for MeanFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MeanFunction")
            .field("id", &self.id)
            .field("arity", &self.arity)
            .field("domain", &self.domain_desc)
            .finish()
    }
}

/// Accept-everything domain predicate.
pub fn any_domain() -> DomainFn {
    Arc::new(|_t: &RealTuple| true)
}

/// All entries strictly positive.
pub fn positive_domain() -> DomainFn {
    Arc::new(|t: &RealTuple| {
        t.values()
            .iter()
            .all(|v| v.cmp_value(&Real::zero()) == std::cmp::Ordering::Greater)
    })
}

/// All entries strictly negative.
pub fn negative_domain() -> DomainFn {
    Arc::new(|t: &RealTuple| {
        t.values()
            .iter()
            .all(|v| v.cmp_value(&Real::zero()) == std::cmp::Ordering::Less)
    })
}

pub fn min_of(t: &RealTuple) -> Real {
    t.min_value()
}

pub fn max_of(t: &RealTuple) -> Real {
    t.max_value()
}

/// Arithmetic mean; exact whenever every entry is exact.
pub fn arithmetic_mean(t: &RealTuple) -> Real {
    let sum = t.values().iter().fold(Real::zero(), |acc, v| acc.add(v));
    sum.div_int(t.len() as i64)
}

pub fn geometric_mean(t: &RealTuple) -> Result<Real, MeanError> {
    require_positive(t)?;
    let product: f64 = t.values().iter().map(|v| v.to_f64().ln()).sum();
    Ok(Real::Approx((product / t.len() as f64).exp()))
}

/// Harmonic mean; exact for exact inputs since only reciprocals and sums
/// are involved.
pub fn harmonic_mean(t: &RealTuple) -> Result<Real, MeanError> {
    require_positive(t)?;
    let sum = t
        .values()
        .iter()
        .try_fold(Real::zero(), |acc, v| v.recip().map(|r| acc.add(&r)))?;
    Real::from_int(t.len() as i64).div(&sum)
}

/// x-th power mean; the x = 0 case is the geometric mean.
pub fn power_mean(t: &RealTuple, x: f64) -> Result<Real, MeanError> {
    require_positive(t)?;
    if x == 0.0 {
        return geometric_mean(t);
    }
    if x == 1.0 {
        return Ok(arithmetic_mean(t));
    }
    let sum: f64 = t.values().iter().map(|v| v.to_f64().powf(x)).sum();
    Ok(Real::Approx((sum / t.len() as f64).powf(1.0 / x)))
}

fn require_positive(t: &RealTuple) -> Result<(), MeanError> {
    if t.values()
        .iter()
        .any(|v| v.cmp_value(&Real::zero()) != std::cmp::Ordering::Greater)
    {
        Err(MeanError::Domain(
            "entries must be strictly positive".into(),
        ))
    } else {
        Ok(())
    }
}

/// A one-variable continuous increasing function with a numeric inverse,
/// the `f` of a quasi-arithmetic mean.
#[derive(Clone)]
pub struct GeneratorFunction {
    name: String,
    forward: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    exact_forward: Option<ExactMap>,
    bracket: (f64, f64),
}

impl GeneratorFunction {
    /// Builds a generator, checking increasing monotonicity on the bracket
    /// by sampled finite differences.
    pub fn new(
        name: impl Into<String>,
        forward: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        bracket: (f64, f64),
    ) -> Result<Self, MeanError> {
        let name = name.into();
        let (lo, hi) = bracket;
        if lo >= hi || !lo.is_finite() || !hi.is_finite() {
            return Err(MeanError::Construction(format!(
                "generator {name}: bracket must be a finite nonempty interval"
            )));
        }
        let steps = 64;
        let mut prev = forward(lo);
        for i in 1..=steps {
            let x = lo + (hi - lo) * i as f64 / steps as f64;
            let y = forward(x);
            if !matches!(y.partial_cmp(&prev), Some(std::cmp::Ordering::Greater)) {
                return Err(MeanError::Construction(format!(
                    "generator {name}: not increasing near x = {x}"
                )));
            }
            prev = y;
        }
        Ok(GeneratorFunction {
            name,
            forward,
            exact_forward: None,
            bracket,
        })
    }

    fn with_exact(mut self, f: ExactMap) -> Self {
        self.exact_forward = Some(f);
        self
    }

    pub fn identity() -> Self {
        GeneratorFunction::new("identity", Arc::new(|x| x), (-1e9, 1e9))
            .unwrap()
            .with_exact(Arc::new(|v: &Real| Some(v.clone())))
    }

    /// x^2 on the nonnegative half line.
    pub fn square() -> Self {
        GeneratorFunction::new("square", Arc::new(|x: f64| x * x), (0.0, 1e6))
            .unwrap()
            .with_exact(Arc::new(|v: &Real| {
                if v.cmp_value(&Real::zero()) == std::cmp::Ordering::Less {
                    None
                } else {
                    Some(v.mul(v))
                }
            }))
    }

    pub fn ln() -> Self {
        GeneratorFunction::new("ln", Arc::new(|x: f64| x.ln()), (1e-9, 1e9)).unwrap()
    }

    pub fn by_name(name: &str) -> Result<Self, MeanError> {
        match name {
            "identity" => Ok(Self::identity()),
            "square" => Ok(Self::square()),
            "ln" => Ok(Self::ln()),
            other => Err(MeanError::Construction(format!(
                "unknown generator {other:?}"
            ))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn bracket(&self) -> (f64, f64) {
        self.bracket
    }

    /// Forward application; exact when the generator has an exact form and
    /// the input is exact.
    pub fn apply(&self, v: &Real) -> Real {
        if v.is_exact() {
            if let Some(exact) = &self.exact_forward {
                if let Some(out) = exact(v) {
                    return out;
                }
            }
        }
        Real::Approx((self.forward)(v.to_f64()))
    }

    pub fn apply_f64(&self, x: f64) -> f64 {
        (self.forward)(x)
    }

    /// Numeric inverse by bisection on the bracket: 200 iterations max,
    /// relative tolerance 1e-12, residual verified to 1e-10.
    pub fn invert(&self, y: f64) -> Result<f64, MeanError> {
        let (mut lo, mut hi) = self.bracket;
        let f_lo = (self.forward)(lo);
        let f_hi = (self.forward)(hi);
        if y < f_lo || y > f_hi {
            return Err(MeanError::Bracket(format!(
                "generator {}: target {y} outside image [{f_lo}, {f_hi}] of the bracket",
                self.name
            )));
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if (self.forward)(mid) < y {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-12 * 1f64.max(mid.abs()) {
                break;
            }
        }
        let x = 0.5 * (lo + hi);
        let residual = ((self.forward)(x) - y).abs();
        if residual > 1e-10 * 1f64.max(y.abs()) {
            return Err(MeanError::Bracket(format!(
                "generator {}: inversion residual {residual} too large at y = {y}",
                self.name
            )));
        }
        Ok(x)
    }
}

impl std::fmt::Debug for GeneratorFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GeneratorFunction")
            .field("name", &self.name)
            .field("bracket", &self.bracket)
            .finish()
    }
}

/// f^-1 of the arithmetic mean of the images under f.
pub fn quasi_arithmetic_mean(t: &RealTuple, f: &GeneratorFunction) -> Result<Real, MeanError> {
    let images: Vec<Real> = t.values().iter().map(|v| f.apply(v)).collect();
    let mean = arithmetic_mean(&RealTuple::new(images)?);
    Ok(Real::Approx(f.invert(mean.to_f64())?))
}

/// Whether `min(t) <= K(t) <= max(t)` at this specific tuple. Exact
/// comparison when the value is exact, `MEAN_LIKE_TOL` slack otherwise.
pub fn is_mean_like(k: &MeanFunction, t: &RealTuple) -> Result<bool, MeanError> {
    let v = k.eval(t)?;
    Ok(value_is_mean_like(&v, t))
}

/// The envelope test for an already computed value.
pub fn value_is_mean_like(v: &Real, t: &RealTuple) -> bool {
    let lo = t.min_value();
    let hi = t.max_value();
    v.ge_with_tol(&lo, MEAN_LIKE_TOL) && v.le_with_tol(&hi, MEAN_LIKE_TOL)
}

/// Clamps a function into the envelope on both sides, which always yields a
/// mean-like function with the original behavior kept inside the envelope.
pub fn truncate_to_mean(k: &MeanFunction) -> MeanFunction {
    let inner = k.clone();
    let inner_total = k.clone();
    let inner_fast = k.clone();
    let truncated = MeanFunction::new(
        format!("truncate({})", k.id()),
        k.arity(),
        k.domain_desc().to_string(),
        {
            let k = k.clone();
            Arc::new(move |t: &RealTuple| k.in_domain(t))
        },
        Arc::new(move |t: &RealTuple| {
            let v = inner.eval(t)?;
            Ok(v.max_value(&t.min_value()).min_value(&t.max_value()))
        }),
    )
    .with_fast(Arc::new(move |xs: &[f64]| {
        let v = inner_fast.eval_f64(xs)?;
        let lo = xs.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Some(v.max(lo).min(hi))
    }));
    truncated.with_total(Arc::new(move |t: &RealTuple| {
        let v = inner_total.eval_total(t)?;
        Ok(v.max_value(&t.min_value()).min_value(&t.max_value()))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tup(entries: &[&str]) -> RealTuple {
        RealTuple::parse(entries).unwrap()
    }

    #[test]
    fn functions_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<MeanFunction>();
        assert_send_sync::<GeneratorFunction>();
        assert_send_sync::<crate::catalog::CatalogEntry>();
    }

    #[test]
    fn arithmetic_mean_is_exact() {
        assert_eq!(arithmetic_mean(&tup(&["2.1", "3"])), Real::ratio(51, 20));
        assert_eq!(arithmetic_mean(&tup(&["2.1", "3"])).render(), "2.55");
        assert_eq!(
            arithmetic_mean(&tup(&["1", "2", "3", "6"])),
            Real::from_int(3)
        );
        let a = tup(&["1.7", "1.7", "1.7"]);
        assert_eq!(arithmetic_mean(&a), Real::ratio(17, 10));
    }

    #[test]
    fn geometric_and_power_means() {
        let g = geometric_mean(&tup(&["100", "1"])).unwrap();
        assert!((g.to_f64() - 10.0).abs() < 1e-12);
        let p1 = power_mean(&tup(&["2", "3", "4"]), 1.0).unwrap();
        assert_eq!(p1, Real::from_int(3));
        let p2 = power_mean(&tup(&["2", "3", "4"]), 2.0).unwrap();
        let expected = (29.0f64 / 3.0).sqrt();
        assert!((p2.to_f64() - expected).abs() < 1e-12);
        assert!(geometric_mean(&tup(&["1", "-1"])).is_err());
    }

    #[test]
    fn harmonic_mean_exact() {
        let h = harmonic_mean(&tup(&["3", "6"])).unwrap();
        assert_eq!(h, Real::from_int(4));
    }

    #[test]
    fn power_mean_monotone_in_exponent() {
        let t = tup(&["0.7", "2", "5.3", "9"]);
        let xs = [-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0];
        let mut prev = f64::NEG_INFINITY;
        for x in xs {
            let v = power_mean(&t, x).unwrap().to_f64();
            assert!(v >= prev - 1e-10, "power mean not monotone at x = {x}");
            prev = v;
        }
    }

    #[test]
    fn quasi_arithmetic_examples() {
        let id = GeneratorFunction::identity();
        let v = quasi_arithmetic_mean(&tup(&["1", "2", "3"]), &id).unwrap();
        assert!((v.to_f64() - 2.0).abs() < 1e-12);

        let sq = GeneratorFunction::square();
        let v = quasi_arithmetic_mean(&tup(&["2", "3", "4"]), &sq).unwrap();
        let p2 = power_mean(&tup(&["2", "3", "4"]), 2.0).unwrap();
        assert!((v.to_f64() - p2.to_f64()).abs() < 1e-10);

        let ln = GeneratorFunction::ln();
        let v = quasi_arithmetic_mean(&tup(&["1", "4"]), &ln).unwrap();
        assert!((v.to_f64() - 2.0).abs() < 1e-10);
    }

    #[test]
    fn decreasing_generator_rejected() {
        let r = GeneratorFunction::new("reciprocal", Arc::new(|x: f64| 1.0 / x), (0.1, 10.0));
        assert!(r.is_err());
    }

    #[test]
    fn truncation_clamps_to_the_violated_side() {
        let bp = crate::catalog::Catalog::construct("bessel-plus")
            .unwrap()
            .mean;
        let clamped = truncate_to_mean(&bp);
        assert_eq!(clamped.eval(&tup(&["1", "2"])).unwrap(), Real::from_int(2));
        let pr = crate::catalog::Catalog::construct("parallel-resistance")
            .unwrap()
            .mean;
        let clamped = truncate_to_mean(&pr);
        assert_eq!(clamped.eval(&tup(&["3", "6"])).unwrap(), Real::from_int(3));
        let a = crate::catalog::Catalog::construct("arith").unwrap().mean;
        let clamped = truncate_to_mean(&a);
        for t in [tup(&["1", "2", "3"]), tup(&["-4", "0.5"])] {
            assert_eq!(clamped.eval(&t).unwrap(), a.eval(&t).unwrap());
        }
    }

    #[test]
    fn inversion_hits_declared_tolerance() {
        let sq = GeneratorFunction::square();
        for y in [0.25, 2.0, 25.0, 1e4] {
            let x = sq.invert(y).unwrap();
            assert!((x * x - y).abs() <= 1e-10 * 1f64.max(y.abs()));
        }
        assert!(sq.invert(-1.0).is_err());
    }
}
