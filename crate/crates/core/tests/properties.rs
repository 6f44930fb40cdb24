use hzl::contour::{winding, Contour};
use hzl::perturb::{eps_sharp, eps_star, eta, local_model_linear, LocalModel};
use hzl::portrait::chromatic_index;
use hzl::random::{random_regular, rng};
use hzl::{CensusOptions, Complex64, ComplexPolynomial, RationalFunction, Sense};
use proptest::prelude::*;

fn complex(range: f64) -> impl Strategy<Value = Complex64> {
    (-range..range, -range..range).prop_map(|(re, im)| Complex64::new(re, im))
}

fn polynomial(max_degree: usize) -> impl Strategy<Value = ComplexPolynomial> {
    prop::collection::vec(complex(1.0), 2..=max_degree + 1).prop_map(ComplexPolynomial::new)
}

proptest! {
    #[test]
    fn thresholds_are_ordered(n in 3usize..12, c_abs in 1e-2f64..1e3) {
        let star = eps_star(n, c_abs).unwrap();
        let sharp = eps_sharp(n, c_abs).unwrap();
        prop_assert!(sharp > 0.0 && sharp <= star);
    }

    #[test]
    fn local_model_points_solve_and_interlace(n in 3usize..9, c_abs in 0.1f64..200.0, frac in 0.01f64..0.99) {
        let eps = frac * eps_sharp(n, c_abs).unwrap();
        let m = LocalModel::new(n, Complex64::new(c_abs, 0.0), eps).unwrap();
        let s = eps.sqrt();
        let e = eta(n);
        prop_assert!(s / e < m.rho1 && m.rho1 < s && s < m.rho2 && m.rho2 < e * s && m.rho2 < m.rho3);
        for w in m.zeros() {
            prop_assert!(m.defining_residual(w) <= 1e-10 * (1.0 + eps));
        }
        let zeros = m.zeros();
        for w in &zeros[..n] {
            prop_assert_eq!(m.sense(*w).sense, Sense::Preserving);
        }
        for w in &zeros[n..2 * n] {
            prop_assert_eq!(m.sense(*w).sense, Sense::Reversing);
        }
    }

    #[test]
    fn local_model_rotates_with_c(n in 3usize..8, c_abs in 0.1f64..50.0, phi in -3.1f64..3.1) {
        let eps = 0.5 * eps_sharp(n, c_abs).unwrap();
        let real = LocalModel::new(n, Complex64::new(c_abs, 0.0), eps).unwrap();
        let rotated = LocalModel::new(n, Complex64::from_polar(c_abs, phi), eps).unwrap();
        let rot = Complex64::from_polar(1.0, -phi / n as f64);
        for (a, b) in real.zeros().iter().zip(rotated.zeros()) {
            prop_assert!((rot * a - b).norm() <= 1e-12 * (1.0 + a.norm()));
            prop_assert!(rotated.defining_residual(b) <= 1e-10);
        }
    }

    #[test]
    fn linear_model_points_solve(c in complex(3.0), eps in 1e-6f64..1e-1) {
        prop_assume!((c.norm() - 1.0).abs() > 1e-3 && c.norm() > 1e-3);
        let points = local_model_linear(c, eps).unwrap();
        prop_assert_eq!(points.len(), if c.norm() < 1.0 { 4 } else { 2 });
        for (w, _) in points {
            let g = c * w * w + eps - w.norm_sqr();
            prop_assert!(g.norm() <= 1e-12 * (1.0 + eps));
        }
    }

    #[test]
    fn roots_rebuild_polynomial(roots in prop::collection::vec(complex(2.0), 1..7)) {
        let p = ComplexPolynomial::from_roots(&roots);
        let found = p.roots().unwrap();
        prop_assert_eq!(found.len(), roots.len());
        for z in &found {
            prop_assert!(p.eval(*z).norm() <= 1e-8 * (1.0 + p.max_modulus()));
        }
    }

    #[test]
    fn winding_is_additive_over_products(p in polynomial(4), q in polynomial(4), center in complex(0.5), radius in 0.2f64..2.0) {
        let circle = Contour::circle(center, radius);
        let pq = &p * &q;
        if let (Ok(a), Ok(b), Ok(ab)) = (winding(&p, &circle), winding(&q, &circle), winding(&pq, &circle)) {
            prop_assert_eq!(ab.value, a.value + b.value);
        }
    }

    #[test]
    fn chromatic_index_matches_winding(p in polynomial(5), center in complex(0.5), radius in 0.2f64..2.0) {
        if let Ok(w) = winding(&p, &Contour::circle(center, radius)) {
            if let Ok(chi) = chromatic_index(&p, center, radius, 12) {
                prop_assert_eq!(chi, w.value);
            }
        }
    }

    #[test]
    fn added_pole_is_exact(num in polynomial(3), z0 in complex(1.0), eps in complex(1.0), k in 1usize..4, z in complex(2.0)) {
        prop_assume!(!num.is_zero() && eps.norm() > 1e-3 && (z - z0).norm() > 0.1);
        let r = RationalFunction::polynomial(num);
        let f = r.add_pole(z0, eps, k).unwrap();
        let expected = r.eval(z).unwrap() + eps / (z - z0).powu(k as u32);
        let got = f.eval(z).unwrap();
        prop_assert!((got - expected).norm() <= 1e-9 * (1.0 + expected.norm()));
    }

    #[test]
    fn rational_json_round_trips(num in polynomial(3), den in polynomial(3)) {
        prop_assume!(den.degree().is_some());
        if let Ok(r) = RationalFunction::new(num, den) {
            let text = serde_json::to_string(&r).unwrap();
            let back: RationalFunction = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn census_respects_bound(seed in 0u64..1_000_000, degree in 2usize..4) {
        let (_, census) = random_regular(&mut rng(seed), degree, &CensusOptions::default()).unwrap();
        prop_assert!(census.trusted());
        prop_assert!(census.count() <= 5 * (degree - 1));
        let sum: i64 = census.zeros.iter().filter_map(|z| z.sense.index()).map(i64::from).sum();
        prop_assert_eq!(sum, census.audit.sum_indices);
    }
}
