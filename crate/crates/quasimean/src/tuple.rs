//! Input tuples, arity specifications and sampling boxes.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::MeanError;
use crate::real::{ExactDecimal, Real};
use crate::rng::SeededRng;

/// A nonempty ordered tuple of real values.
#[derive(Clone, Debug, PartialEq)]
pub struct RealTuple {
    values: Vec<Real>,
}

impl RealTuple {
    pub fn new(values: Vec<Real>) -> Result<Self, MeanError> {
        if values.is_empty() {
            return Err(MeanError::Construction(
                "a tuple needs at least one entry".into(),
            ));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(MeanError::Construction(
                "tuple entries must be finite".into(),
            ));
        }
        Ok(RealTuple { values })
    }

    pub fn from_decimals(decimals: &[ExactDecimal]) -> Result<Self, MeanError> {
        Self::new(decimals.iter().map(Real::from_decimal).collect())
    }

    pub fn from_f64(values: &[f64]) -> Result<Self, MeanError> {
        Self::new(values.iter().map(|v| Real::Approx(*v)).collect())
    }

    /// Parses each entry as an exact decimal.
    pub fn parse(entries: &[&str]) -> Result<Self, MeanError> {
        let decimals: Result<Vec<ExactDecimal>, _> =
            entries.iter().map(|s| ExactDecimal::from_str(s)).collect();
        Self::from_decimals(&decimals?)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[Real] {
        &self.values
    }

    pub fn get(&self, i: usize) -> &Real {
        &self.values[i]
    }

    pub fn min_value(&self) -> Real {
        self.values
            .iter()
            .skip(1)
            .fold(self.values[0].clone(), |acc, v| acc.min_value(v))
    }

    pub fn max_value(&self) -> Real {
        self.values
            .iter()
            .skip(1)
            .fold(self.values[0].clone(), |acc, v| acc.max_value(v))
    }

    /// Ascending copy; several estimators assume sorted input.
    pub fn sorted(&self) -> RealTuple {
        let mut v = self.values.clone();
        v.sort_by(|a, b| a.cmp_value(b));
        RealTuple { values: v }
    }

    pub fn is_constant(&self) -> bool {
        self.values.iter().all(|v| *v == self.values[0])
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.values.iter().map(Real::to_f64).collect()
    }

    pub fn map(&self, f: impl Fn(&Real) -> Real) -> RealTuple {
        RealTuple {
            values: self.values.iter().map(f).collect(),
        }
    }

    pub fn render_plain(&self) -> String {
        self.values
            .iter()
            .map(Real::render_plain)
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for RealTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.render_plain())
    }
}

/// Arity requirement of a mean: a fixed tuple length or any length above a
/// minimum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Arity {
    Fixed(usize),
    Variadic { min: usize },
}

impl Arity {
    pub fn accepts(&self, n: usize) -> bool {
        match self {
            Arity::Fixed(k) => *k == n,
            Arity::Variadic { min } => n >= *min,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Arity::Fixed(k) => format!("exactly {k}"),
            Arity::Variadic { min } => format!("at least {min}"),
        }
    }
}

/// One endpoint of a sampling interval.
#[derive(Clone, Debug, PartialEq)]
pub enum Bound {
    NegInf,
    Finite(ExactDecimal),
    PosInf,
}

/// Per-coordinate interval constraint plus an arity, used for sampling and
/// falsification.
#[derive(Clone, Debug)]
pub struct DomainBox {
    pub lower: Bound,
    pub upper: Bound,
    pub lower_open: bool,
    pub upper_open: bool,
    pub arity: Arity,
}

impl DomainBox {
    pub fn closed(lo: ExactDecimal, hi: ExactDecimal, arity: Arity) -> Result<Self, MeanError> {
        if lo > hi {
            return Err(MeanError::Construction(
                "box lower bound exceeds upper bound".into(),
            ));
        }
        Ok(DomainBox {
            lower: Bound::Finite(lo),
            upper: Bound::Finite(hi),
            lower_open: false,
            upper_open: false,
            arity,
        })
    }

    /// Convenience constructor from decimal strings, e.g. `("1", "2", 2)`.
    pub fn closed_str(lo: &str, hi: &str, arity: Arity) -> Self {
        Self::closed(lo.parse().unwrap(), hi.parse().unwrap(), arity).expect("valid literal box")
    }

    pub fn finite_bounds(&self) -> Option<(&ExactDecimal, &ExactDecimal)> {
        match (&self.lower, &self.upper) {
            (Bound::Finite(a), Bound::Finite(b)) => Some((a, b)),
            _ => None,
        }
    }

    pub fn lo_f64(&self) -> f64 {
        match &self.lower {
            Bound::NegInf => f64::NEG_INFINITY,
            Bound::Finite(d) => d.to_f64(),
            Bound::PosInf => f64::INFINITY,
        }
    }

    pub fn hi_f64(&self) -> f64 {
        match &self.upper {
            Bound::NegInf => f64::NEG_INFINITY,
            Bound::Finite(d) => d.to_f64(),
            Bound::PosInf => f64::INFINITY,
        }
    }

    pub fn contains_value(&self, v: &Real) -> bool {
        let lo_ok = match &self.lower {
            Bound::NegInf => true,
            Bound::PosInf => false,
            Bound::Finite(d) => {
                let l = Real::from_decimal(d);
                match v.cmp_value(&l) {
                    std::cmp::Ordering::Less => false,
                    std::cmp::Ordering::Equal => !self.lower_open,
                    std::cmp::Ordering::Greater => true,
                }
            }
        };
        if !lo_ok {
            return false;
        }
        match &self.upper {
            Bound::PosInf => true,
            Bound::NegInf => false,
            Bound::Finite(d) => {
                let u = Real::from_decimal(d);
                match v.cmp_value(&u) {
                    std::cmp::Ordering::Greater => false,
                    std::cmp::Ordering::Equal => !self.upper_open,
                    std::cmp::Ordering::Less => true,
                }
            }
        }
    }

    pub fn contains_tuple(&self, t: &RealTuple) -> bool {
        self.arity.accepts(t.len()) && t.values().iter().all(|v| self.contains_value(v))
    }

    /// Degenerate boxes (single point) admit no non-constant tuples.
    pub fn is_degenerate(&self) -> bool {
        match self.finite_bounds() {
            Some((a, b)) => a == b,
            None => false,
        }
    }

    /// Arity used when drawing samples: the fixed one, or a spread of small
    /// arities for variadic entries.
    pub fn sample_arity(&self, rng: &mut SeededRng) -> usize {
        match self.arity {
            Arity::Fixed(k) => k,
            Arity::Variadic { min } => {
                let lo = min.max(2);
                lo + rng.below(5) as usize
            }
        }
    }

    /// Precomputed decimal-grid sampler over this box.
    pub fn grid_sampler(&self, grid_exp: i64) -> Result<GridSampler, MeanError> {
        let (lo, hi) = self
            .finite_bounds()
            .ok_or_else(|| MeanError::Construction("sampling needs finite box bounds".into()))?;
        let lo_scaled: i64 = lo
            .ceil_at_scale(grid_exp)
            .try_into()
            .map_err(|_| MeanError::Construction("box bound too large for the grid".into()))?;
        let hi_scaled: i64 = hi
            .floor_at_scale(grid_exp)
            .try_into()
            .map_err(|_| MeanError::Construction("box bound too large for the grid".into()))?;
        if hi_scaled < lo_scaled {
            return Err(MeanError::Construction(
                "box narrower than the sampling grid".into(),
            ));
        }
        let mut lo_s = lo_scaled;
        let mut hi_s = hi_scaled;
        if self.lower_open && ExactDecimal::from_scaled(lo_s, -grid_exp) == *lo {
            lo_s += 1;
        }
        if self.upper_open && ExactDecimal::from_scaled(hi_s, -grid_exp) == *hi {
            hi_s -= 1;
        }
        if hi_s < lo_s {
            return Err(MeanError::Construction(
                "open box narrower than the grid".into(),
            ));
        }
        Ok(GridSampler {
            lo_scaled: lo_s,
            steps: (hi_s - lo_s) as u64,
            grid_exp,
            arity: self.arity,
        })
    }

    /// Draws one coordinate on the decimal grid `10^-grid_exp`, inside the
    /// interval, honoring open endpoints.
    pub fn sample_coordinate(
        &self,
        rng: &mut SeededRng,
        grid_exp: i64,
    ) -> Result<ExactDecimal, MeanError> {
        Ok(self.grid_sampler(grid_exp)?.coordinate(rng))
    }

    /// Draws a full tuple on the decimal grid.
    pub fn sample_tuple(&self, rng: &mut SeededRng, grid_exp: i64) -> Result<RealTuple, MeanError> {
        let s = self.grid_sampler(grid_exp)?;
        let n = self.sample_arity(rng);
        s.tuple(rng, n)
    }

    pub fn describe(&self) -> String {
        let lo = match (&self.lower, self.lower_open) {
            (Bound::NegInf, _) => "(-inf".to_string(),
            (Bound::Finite(d), true) => format!("({d}"),
            (Bound::Finite(d), false) => format!("[{d}"),
            (Bound::PosInf, _) => "(+inf".to_string(),
        };
        let hi = match (&self.upper, self.upper_open) {
            (Bound::PosInf, _) => "+inf)".to_string(),
            (Bound::Finite(d), true) => format!("{d})"),
            (Bound::Finite(d), false) => format!("{d}]"),
            (Bound::NegInf, _) => "-inf)".to_string(),
        };
        format!("{lo}, {hi} arity {}", self.arity.describe())
    }
}

/// Decimal-grid sampler with the box arithmetic done once up front;
/// drawing a coordinate is one random integer plus one small decimal.
#[derive(Clone, Debug)]
pub struct GridSampler {
    lo_scaled: i64,
    steps: u64,
    grid_exp: i64,
    arity: Arity,
}

impl GridSampler {
    pub fn coordinate(&self, rng: &mut SeededRng) -> ExactDecimal {
        let k = if self.steps == 0 {
            0
        } else {
            rng.below(self.steps + 1)
        };
        ExactDecimal::from_scaled(self.lo_scaled + k as i64, -self.grid_exp)
    }

    /// Raw grid indices; the cheap currency for screening loops that only
    /// materialize exact tuples on demand.
    pub fn draw_scaled(&self, rng: &mut SeededRng, n: usize) -> Vec<i64> {
        (0..n)
            .map(|_| {
                let k = if self.steps == 0 {
                    0
                } else {
                    rng.below(self.steps + 1)
                };
                self.lo_scaled + k as i64
            })
            .collect()
    }

    pub fn max_scaled(&self) -> i64 {
        self.lo_scaled + self.steps as i64
    }

    pub fn min_scaled(&self) -> i64 {
        self.lo_scaled
    }

    pub fn f64_of(&self, scaled: &[i64]) -> Vec<f64> {
        let g = 10f64.powi(self.grid_exp as i32);
        scaled.iter().map(|k| *k as f64 / g).collect()
    }

    pub fn tuple_of(&self, scaled: &[i64]) -> Result<RealTuple, MeanError> {
        let vals: Vec<ExactDecimal> = scaled
            .iter()
            .map(|k| ExactDecimal::from_scaled(*k, -self.grid_exp))
            .collect();
        RealTuple::from_decimals(&vals)
    }

    pub fn sample_arity(&self, rng: &mut SeededRng) -> usize {
        match self.arity {
            Arity::Fixed(k) => k,
            Arity::Variadic { min } => min.max(2) + rng.below(5) as usize,
        }
    }

    pub fn tuple(&self, rng: &mut SeededRng, n: usize) -> Result<RealTuple, MeanError> {
        let vals: Vec<ExactDecimal> = (0..n).map(|_| self.coordinate(rng)).collect();
        RealTuple::from_decimals(&vals)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn min_max_of_tuples() {
        let t = RealTuple::parse(&["1", "2", "3"]).unwrap();
        assert_eq!(t.min_value(), Real::from_int(1));
        assert_eq!(t.max_value(), Real::from_int(3));
        let s = RealTuple::parse(&["5"]).unwrap();
        assert_eq!(s.min_value(), Real::from_int(5));
        assert_eq!(s.max_value(), Real::from_int(5));
        let n = RealTuple::parse(&["-1", "-2"]).unwrap();
        assert_eq!(n.min_value(), Real::from_int(-2));
        assert_eq!(n.max_value(), Real::from_int(-1));
    }

    #[test]
    fn empty_tuple_rejected() {
        assert!(RealTuple::new(vec![]).is_err());
    }

    #[test]
    fn box_membership_respects_open_endpoints() {
        let mut b = DomainBox::closed_str("0", "1", Arity::Fixed(2));
        b.lower_open = true;
        assert!(!b.contains_value(&Real::zero()));
        assert!(b.contains_value(&Real::one()));
        assert!(b.contains_value(&Real::ratio(1, 2)));
    }

    #[test]
    fn sampling_stays_inside_and_is_deterministic() {
        let b = DomainBox::closed_str("1", "2", Arity::Fixed(3));
        let mut r1 = SeededRng::new(11);
        let mut r2 = SeededRng::new(11);
        for _ in 0..50 {
            let t1 = b.sample_tuple(&mut r1, 6).unwrap();
            let t2 = b.sample_tuple(&mut r2, 6).unwrap();
            assert_eq!(t1, t2);
            assert!(b.contains_tuple(&t1));
        }
    }
}
