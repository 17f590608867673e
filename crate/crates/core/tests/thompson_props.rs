use proptest::prelude::*;
use tfp::hpd::{
    congruence, matrix_power, random_nonsingular_with, random_pd_in_ball, seeded_rng, PdMatrix,
};
use tfp::thompson::{coincide, distance, w_ratio};

const TOL: f64 = 1e-9;

fn pd(n: usize, seed: u64) -> PdMatrix {
    random_pd_in_ball(n, 2.5, seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn metric_axioms(n in 2usize..=4, s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let (a, b, c) = (pd(n, s1), pd(n, s2), pd(n, s3));
        let ab = distance(&a, &b).unwrap();
        prop_assert!(ab >= 0.0);
        prop_assert_eq!(ab, distance(&b, &a).unwrap());
        prop_assert!(distance(&a, &a).unwrap() <= 1e-12);
        prop_assert!(coincide(&a, &a).unwrap());
        let ac = distance(&a, &c).unwrap();
        let cb = distance(&c, &b).unwrap();
        prop_assert!(ab <= ac + cb + TOL, "{ab} > {ac} + {cb}");
    }

    #[test]
    fn inversion_and_congruence_invariance(n in 2usize..=4, s1 in any::<u64>(), s2 in any::<u64>()) {
        let (a, b) = (pd(n, s1), pd(n, s2));
        let d = distance(&a, &b).unwrap();
        let inv = distance(&matrix_power(&a, -1.0).unwrap(), &matrix_power(&b, -1.0).unwrap()).unwrap();
        prop_assert!((inv - d).abs() <= TOL * d.max(1.0));

        let m = random_nonsingular_with(&mut seeded_rng(s1 ^ s2), n, 0.5);
        let ma = PdMatrix::new(congruence(&m, a.hermitian()).unwrap()).unwrap();
        let mb = PdMatrix::new(congruence(&m, b.hermitian()).unwrap()).unwrap();
        let dm = distance(&ma, &mb).unwrap();
        prop_assert!((dm - d).abs() <= TOL * d.max(1.0), "{dm} vs {d}");
    }

    #[test]
    fn power_contracts(n in 2usize..=4, s1 in any::<u64>(), s2 in any::<u64>(), r in -1.0f64..=1.0) {
        prop_assume!(r != 0.0);
        let (a, b) = (pd(n, s1), pd(n, s2));
        let d = distance(&a, &b).unwrap();
        let dr = distance(&matrix_power(&a, r).unwrap(), &matrix_power(&b, r).unwrap()).unwrap();
        prop_assert!(dr <= r.abs() * d + TOL);
    }

    #[test]
    fn sums_contract(n in 2usize..=4, seeds in prop::array::uniform4(any::<u64>())) {
        let [a, b, c, d] = seeds.map(|s| pd(n, s));
        let lhs = distance(&a.add(&b).unwrap(), &c.add(&d).unwrap()).unwrap();
        let rhs = distance(&a, &c).unwrap().max(distance(&b, &d).unwrap());
        prop_assert!(lhs <= rhs + TOL);
    }

    #[test]
    fn diagonal_closed_form(a in prop::collection::vec(1e-3f64..1e3, 2..=4), b in prop::collection::vec(1e-3f64..1e3, 4)) {
        let b = &b[..a.len()];
        let expected = a.iter().zip(b).map(|(x, y)| (x / y).ln().abs()).fold(0.0, f64::max);
        let d = distance(&PdMatrix::from_diag(&a).unwrap(), &PdMatrix::from_diag(b).unwrap()).unwrap();
        prop_assert!((d - expected).abs() <= 1e-12 * expected.max(1.0), "{d} vs {expected}");
    }
}

#[test]
fn scalar_multiples() {
    let a = pd(3, 9);
    let w = w_ratio(&a.scale(5.0).unwrap(), &a).unwrap();
    assert!((w - 5.0).abs() < 1e-12);
    assert!((distance(&a.scale(0.5).unwrap(), &a).unwrap() - 2f64.ln()).abs() < 1e-12);
}
