//! Seeded property suites for the digit-truncation family: the ordering
//! chain, scaling and step bounds, the discrete range, the one-sided
//! associativity defect, and the mean-likeness threshold. All comparisons
//! on this family are exact rational comparisons.

use num_bigint::BigInt;
use num_rational::BigRational;

use quasimean::catalog::Catalog;
use quasimean::mean::{arithmetic_mean, MeanFunction};
use quasimean::real::{ExactDecimal, Real};
use quasimean::rng::SeededRng;
use quasimean::tuple::{Arity, DomainBox, RealTuple};

fn family(m: i64) -> [MeanFunction; 5] {
    let get = |name: &str| Catalog::construct(&format!("{name}?m={m}")).unwrap().mean;
    [
        get("shifted-ceil"),
        get("floor-arith"),
        get("ceil-arith"),
        get("shifted-floor"),
        get("star-arith"),
    ]
}

fn sample_tuple(rng: &mut SeededRng, arity: usize) -> RealTuple {
    // Decimals in [10, 50] with up to 4 fractional digits: inside every
    // domain for m in {-1, 0, 1, 2}.
    let vals: Vec<ExactDecimal> = (0..arity)
        .map(|_| ExactDecimal::from_scaled(100_000 + rng.below(400_000) as i64, -4))
        .collect();
    RealTuple::from_decimals(&vals).unwrap()
}

#[test]
fn ordering_chain_holds_exactly() {
    let mut rng = SeededRng::new(0);
    for m in [-1i64, 0, 1, 2] {
        let [sc, fa, ca, sf, _] = family(m);
        let step = Real::from_decimal(&ExactDecimal::pow10(-m));
        for round in 0..1000 {
            let n = 2 + rng.below(5) as usize;
            let mut t = sample_tuple(&mut rng, n);
            // The bracketing argument is sign independent; exercise the
            // negative side too.
            if round % 2 == 1 {
                t = t.map(|v| v.neg());
            }
            let a = arithmetic_mean(&t);
            let v_sc = sc.eval(&t).unwrap();
            let v_fa = fa.eval(&t).unwrap();
            let v_ca = ca.eval(&t).unwrap();
            let v_sf = sf.eval(&t).unwrap();
            let lo = a.sub(&step);
            let hi = a.add(&step);
            let chain = [&lo, &v_sc, &v_fa, &a, &v_ca, &v_sf, &hi];
            for w in chain.windows(2) {
                assert!(
                    w[0].cmp_value(w[1]) != std::cmp::Ordering::Greater,
                    "chain broken at m={m} on {t}: {} > {}",
                    w[0].render_plain(),
                    w[1].render_plain()
                );
            }
        }
    }
}

#[test]
fn resolution_monotonicity_in_m() {
    let mut rng = SeededRng::new(1);
    for m in [-1i64, 0, 1] {
        let fa_m = Catalog::construct(&format!("floor-arith?m={m}"))
            .unwrap()
            .mean;
        let fa_m1 = Catalog::construct(&format!("floor-arith?m={}", m + 1))
            .unwrap()
            .mean;
        let ca_m = Catalog::construct(&format!("ceil-arith?m={m}"))
            .unwrap()
            .mean;
        let ca_m1 = Catalog::construct(&format!("ceil-arith?m={}", m + 1))
            .unwrap()
            .mean;
        for _ in 0..1000 {
            let n = 2 + rng.below(4) as usize;
            let t = sample_tuple(&mut rng, n);
            let f0 = fa_m.eval(&t).unwrap();
            let f1 = fa_m1.eval(&t).unwrap();
            assert!(
                f0.cmp_value(&f1) != std::cmp::Ordering::Greater,
                "floor chain at m={m}"
            );
            let c0 = ca_m.eval(&t).unwrap();
            let c1 = ca_m1.eval(&t).unwrap();
            assert!(
                c1.cmp_value(&c0) != std::cmp::Ordering::Greater,
                "ceil chain at m={m}"
            );
        }
    }
}

#[test]
fn truncation_error_is_at_most_one_grid_step() {
    let mut rng = SeededRng::new(2);
    for m in [-1i64, 0, 1, 2] {
        let fa = Catalog::construct(&format!("floor-arith?m={m}"))
            .unwrap()
            .mean;
        let ca = Catalog::construct(&format!("ceil-arith?m={m}"))
            .unwrap()
            .mean;
        let step = Real::from_decimal(&ExactDecimal::pow10(-m));
        for _ in 0..1000 {
            let n = 2 + rng.below(4) as usize;
            let t = sample_tuple(&mut rng, n);
            let a = arithmetic_mean(&t);
            let diff_floor = a.sub(&fa.eval(&t).unwrap());
            assert!(diff_floor.cmp_value(&step) != std::cmp::Ordering::Greater);
            let diff_ceil = ca.eval(&t).unwrap().sub(&a);
            assert!(diff_ceil.cmp_value(&step) != std::cmp::Ordering::Greater);
        }
    }
}

#[test]
fn range_is_the_discrete_grid_and_every_grid_point_is_attained() {
    let mut rng = SeededRng::new(3);
    for m in [-1i64, 0, 1, 2] {
        let fa = Catalog::construct(&format!("floor-arith?m={m}"))
            .unwrap()
            .mean;
        for _ in 0..500 {
            let n = 2 + rng.below(4) as usize;
            let t = sample_tuple(&mut rng, n);
            let v = fa.eval(&t).unwrap();
            // v * n * 10^m must be an integer, exactly.
            let r = v.as_exact().expect("exact family");
            let scaled = r
                * BigRational::from_integer(BigInt::from(n as i64))
                * BigRational::from_integer(BigInt::from(10).pow(m.unsigned_abs() as u32))
                    .pow(if m >= 0 { 1 } else { -1 });
            assert!(
                scaled.is_integer(),
                "m={m} n={n}: {} not on the grid",
                v.render_plain()
            );
        }
    }
    // Attainment: mean of (1, ..., 1, k - n + 1) over floors is k/n.
    let fa0 = Catalog::construct("floor-arith?m=0").unwrap().mean;
    for n in 2usize..=6 {
        for k in -20i64..=20 {
            let mut vals = vec![ExactDecimal::from_int(1); n - 1];
            vals.push(ExactDecimal::from_int(k - n as i64 + 1));
            let t = RealTuple::from_decimals(&vals).unwrap();
            let v = fa0.eval(&t).unwrap();
            assert_eq!(
                v,
                Real::ratio(k, n as i64),
                "attainment failed at n={n} k={k}"
            );
        }
    }
}

#[test]
fn partial_associativity_defect_is_one_sided() {
    let mut rng = SeededRng::new(4);
    let m = 0i64;
    let fa = Catalog::construct("floor-arith?m=0").unwrap().mean;
    for _ in 0..1000 {
        let n = 3 + rng.below(3) as usize;
        let k = 2 + rng.below((n - 1) as u64) as usize;
        let t = sample_tuple(&mut rng, n);
        let head = RealTuple::new(t.values()[..k].to_vec()).unwrap();
        let inner = fa.eval(&head).unwrap();
        let mut nested = vec![inner; k];
        nested.extend_from_slice(&t.values()[k..]);
        let nested = RealTuple::new(nested).unwrap();
        let lhs = fa.eval(&nested).unwrap();
        let rhs = fa.eval(&t).unwrap();
        assert!(
            lhs.cmp_value(&rhs) != std::cmp::Ordering::Greater,
            "nested value {} exceeded flat value {}",
            lhs.render_plain(),
            rhs.render_plain()
        );
    }
    let _ = m;
    // The witness where equality fails: one 2, then ones, then n at the
    // grid scale. The nested pass truncates the inner mean down a step.
    let n = 5usize;
    let k = 3usize;
    let mut vals = vec![ExactDecimal::from_int(2)];
    vals.extend(vec![ExactDecimal::from_int(1); k - 1]);
    vals.extend(vec![ExactDecimal::from_int(1); n - k - 1]);
    vals.push(ExactDecimal::from_int(n as i64));
    // Order: (2, 1, .., 1, n) with the 2 inside the first k entries.
    let t = RealTuple::from_decimals(&vals).unwrap();
    let flat = fa.eval(&t).unwrap();
    let head = RealTuple::new(t.values()[..k].to_vec()).unwrap();
    let inner = fa.eval(&head).unwrap();
    let mut nested = vec![inner; k];
    nested.extend_from_slice(&t.values()[k..]);
    let lhs = fa.eval(&RealTuple::new(nested).unwrap()).unwrap();
    assert!(
        lhs.cmp_value(&flat) == std::cmp::Ordering::Less,
        "expected a strict defect: {} vs {}",
        lhs.render_plain(),
        flat.render_plain()
    );
}

#[test]
fn mean_likeness_threshold_in_m() {
    let mut rng = SeededRng::new(5);
    for _ in 0..500 {
        let n = 2 + rng.below(4) as usize;
        let t = sample_tuple(&mut rng, n).sorted();
        let lo = t.min_value();
        let hi = t.max_value();
        if lo == hi {
            continue;
        }
        let span = hi.sub(&lo).to_f64();
        let threshold = (n as f64 / span).log10() + 1.0;
        let m = threshold.ceil() as i64 + 1;
        let fa = Catalog::construct(&format!("floor-arith?m={m}"))
            .unwrap()
            .mean;
        let v = fa.eval(&t).unwrap();
        assert!(
            v.cmp_value(&lo) != std::cmp::Ordering::Less
                && v.cmp_value(&hi) != std::cmp::Ordering::Greater,
            "not mean-like at m={m} on {t}"
        );
    }
}

#[test]
fn running_mean_approaches_the_constant_value() {
    // A sequence converging to 1.37 from above: the running truncated
    // means settle onto the truncated constant at an explicit 1/n rate.
    let m = 1i64;
    let fa = Catalog::construct("floor-arith?m=1").unwrap().mean;
    let alpha = ExactDecimal::from_scaled(137, -2);
    let target = Real::from_decimal(&alpha).floor_at_scale(m);
    let mut vals: Vec<ExactDecimal> = Vec::new();
    for n in [100usize, 1000, 10000] {
        while vals.len() < n {
            let k = vals.len() + 1;
            // alpha + 1/k as an exact decimal at 6 digits.
            let bump = ExactDecimal::from_scaled((1_000_000 / k as i64).max(1), -6);
            vals.push(alpha.add(&bump));
        }
        let t = RealTuple::from_decimals(&vals).unwrap();
        let v = fa.eval(&t).unwrap();
        let err = v.sub(&target).abs().to_f64();
        // Terms with k <= 33 truncate above the limit cell; each adds at
        // most (1/k + 0.07) to the sum, so the running error is below
        // (H_33 + 0.07 * 33) / n < 7 / n.
        let bound = 7.0 / n as f64;
        assert!(err <= bound, "n={n}: error {err} above window {bound}");
    }
}

#[test]
fn truncated_means_are_means_on_wide_tuples() {
    // Restricting to tuples with spread >= 1 makes the m = 1 floor mean an
    // ordinary mean: the falsifier finds no witness.
    let fa = Catalog::construct("floor-arith?m=1").unwrap().mean;
    let mut rng = SeededRng::new(6);
    for _ in 0..2000 {
        let n = 2 + rng.below(3) as usize;
        let mut t = sample_tuple(&mut rng, n);
        loop {
            let spread = t.max_value().sub(&t.min_value()).to_f64();
            if spread >= 1.0 {
                break;
            }
            t = sample_tuple(&mut rng, n);
        }
        let v = fa.eval(&t).unwrap();
        assert!(v.cmp_value(&t.min_value()) != std::cmp::Ordering::Less);
        assert!(v.cmp_value(&t.max_value()) != std::cmp::Ordering::Greater);
    }
}

#[test]
fn truncated_geometric_never_exceeds_the_geometric_mean() {
    let mut rng = SeededRng::new(9);
    for m in [0i64, 1] {
        let gm = Catalog::construct(&format!("floor-geometric?m={m}"))
            .unwrap()
            .mean;
        let g = Catalog::construct("geometric").unwrap().mean;
        for _ in 0..500 {
            let n = 2 + rng.below(3) as usize;
            let t = sample_tuple(&mut rng, n);
            if !gm.in_domain(&t) {
                continue;
            }
            let a = gm.eval(&t).unwrap().to_f64();
            let b = g.eval(&t).unwrap().to_f64();
            assert!(a <= b + 1e-12 * b.abs().max(1.0), "m={m}: {a} > {b} on {t}");
        }
    }
}

#[test]
fn mean_like_everywhere_for_true_means_under_falsification() {
    let mut rng = SeededRng::new(7);
    let box_ = DomainBox::closed_str("0.1", "10", Arity::Variadic { min: 1 });
    for id in [
        "arith",
        "geometric",
        "harmonic",
        "power?x=2",
        "quasi-arith?f=square",
    ] {
        let k = Catalog::construct(id).unwrap().mean;
        for _ in 0..500 {
            let t = box_.sample_tuple(&mut rng, 4).unwrap();
            if !k.in_domain(&t) || t.len() < 2 {
                continue;
            }
            assert!(
                quasimean::mean::is_mean_like(&k, &t).unwrap(),
                "{id} escaped the envelope at {t}"
            );
        }
    }
}

#[test]
fn truncation_of_catalog_entries_is_always_mean_like() {
    let mut rng = SeededRng::new(8);
    for id in [
        "bessel-plus",
        "floor-arith?m=0",
        "star-arith?m=0",
        "parallel-resistance",
    ] {
        let e = Catalog::construct(id).unwrap();
        let clamped = quasimean::mean::truncate_to_mean(&e.mean);
        for _ in 0..500 {
            let Ok(t) = e.default_box.sample_tuple(&mut rng, 6) else {
                continue;
            };
            if !clamped.in_domain(&t) || t.len() < 2 {
                continue;
            }
            assert!(
                quasimean::mean::is_mean_like(&clamped, &t).unwrap(),
                "{id} at {t}"
            );
        }
    }
}
