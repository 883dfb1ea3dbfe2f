//! Sampled invariants of the iteration operators: monotonicity of the
//! 3-variable extension in its inputs, finite termination on functions
//! with a discrete range, strictness of the compounded value, and the
//! fixed-point property of idempotent closures.

use quasimean::catalog::Catalog;
use quasimean::iterate::{compound, extend3, idempotent_closure, IterateConfig, IterationVerdict};
use quasimean::real::{ExactDecimal, Real};
use quasimean::rng::SeededRng;

fn dec_grid(rng: &mut SeededRng) -> ExactDecimal {
    ExactDecimal::from_scaled(10_000 + rng.below(40_000) as i64, -4)
}

#[test]
fn extension_limit_is_monotone_in_the_inputs() {
    let k = Catalog::construct("floor-arith?m=0").unwrap().mean;
    let cfg = IterateConfig::default();
    let mut rng = SeededRng::new(31);
    for _ in 0..1000 {
        let mut lo: Vec<ExactDecimal> = (0..3).map(|_| dec_grid(&mut rng)).collect();
        lo.sort();
        let hi: Vec<ExactDecimal> = lo
            .iter()
            .map(|v| v.add(&ExactDecimal::from_scaled(rng.below(20_000) as i64, -4)))
            .collect();
        let t_lo = extend3(&k, &lo[0], &lo[1], &lo[2], &cfg).unwrap();
        let t_hi = extend3(&k, &hi[0], &hi[1], &hi[2], &cfg).unwrap();
        let (Some(a), Some(b)) = (t_lo.limit, t_hi.limit) else {
            panic!("extension failed to settle")
        };
        assert!(
            a.cmp_value(&b) != std::cmp::Ordering::Greater,
            "limit decreased: {} vs {}",
            a.render_plain(),
            b.render_plain()
        );
    }
}

#[test]
fn discrete_range_extensions_become_constant_in_finitely_many_steps() {
    let cfg = IterateConfig::default();
    let mut rng = SeededRng::new(32);
    for m in [0i64, 1] {
        let k = Catalog::construct(&format!("floor-arith?m={m}"))
            .unwrap()
            .mean;
        for _ in 0..300 {
            let mut v: Vec<ExactDecimal> = (0..3).map(|_| dec_grid(&mut rng)).collect();
            v.sort();
            let tr = extend3(&k, &v[0], &v[1], &v[2], &cfg).unwrap();
            assert!(
                matches!(tr.verdict, IterationVerdict::ConstantAfter { .. }),
                "m={m}: expected exact constancy, got {:?} from {:?}",
                tr.verdict,
                v.iter().map(|d| d.to_string()).collect::<Vec<_>>()
            );
        }
    }
}

#[test]
fn compounded_value_stays_strictly_below_the_upper_input() {
    let cfg = IterateConfig::default();
    let mut rng = SeededRng::new(33);
    let f0 = Catalog::construct("floor-arith?m=0").unwrap().mean;
    let f1 = Catalog::construct("floor-arith?m=1").unwrap().mean;
    let g = Catalog::construct("geometric").unwrap().mean;
    let a_mean = Catalog::construct("arith").unwrap().mean;
    for _ in 0..300 {
        let x = dec_grid(&mut rng);
        let y = x.add(&ExactDecimal::from_scaled(1 + rng.below(30_000) as i64, -4));
        let tr = compound(&f0, &f1, &x, &y, &cfg).unwrap();
        let limit = tr.limit.expect("settles");
        assert!(
            limit.cmp_value(&Real::from_decimal(&y)) == std::cmp::Ordering::Less,
            "limit {} not below {}",
            limit.render_plain(),
            y
        );
        let tr = compound(&g, &a_mean, &x, &y, &cfg).unwrap();
        let limit = tr.limit.expect("settles").to_f64();
        assert!(limit < y.to_f64());
        assert!(limit > x.to_f64());
    }
}

#[test]
fn closure_limits_are_fixed_points() {
    let cfg = IterateConfig::default();
    let mut rng = SeededRng::new(34);
    let ms = Catalog::construct("min-square").unwrap().mean;
    for _ in 0..200 {
        let a = ExactDecimal::from_scaled(rng.below(20_000) as i64, -4);
        let b = a.add(&ExactDecimal::from_scaled(rng.below(10_000) as i64, -4));
        if b > "2".parse().unwrap() {
            continue;
        }
        let tr = idempotent_closure(&ms, &a, &b, &cfg).unwrap();
        if tr.converged() {
            assert_eq!(tr.fixed_point_verified, Some(true), "from ({a}, {b})");
        }
    }
}
