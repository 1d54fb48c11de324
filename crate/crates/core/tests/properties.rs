mod common;

use bargmann_toeplitz::composition::{
    compose_gaussian, compose_sequences, moyal_gaussian, recognize_gaussian, CompositionStatus,
};
use bargmann_toeplitz::operators::{extension_apply, in_natural_domain, toeplitz_apply};
use bargmann_toeplitz::quadrature::{LaguerreRule, QuadratureSpec};
use bargmann_toeplitz::spaces::{fock_inner, from_sequence, reproduce_at, to_sequence, FockPolynomial};
use bargmann_toeplitz::spectra::{eigen_sequence, quadrature_eigen};
use bargmann_toeplitz::symbols::{classify, Decision, GaussianRadialSymbol, PolynomialRadialSymbol, RadialSymbol};
use common::{c, eval_direct};
use num_complex::Complex64;
use proptest::prelude::*;

fn complex(radius: f64) -> impl Strategy<Value = Complex64> {
    (-radius..radius, -radius..radius).prop_map(|(re, im)| c(re, im))
}

fn poly(max_degree: usize) -> impl Strategy<Value = FockPolynomial> {
    prop::collection::vec(complex(2.0), 1..=max_degree + 1).prop_map(FockPolynomial::new)
}

/// `k` with `Re k > 1/2`.
fn k_in_p() -> impl Strategy<Value = Complex64> {
    (0.5f64..3.0, -2.0f64..2.0)
        .prop_filter("Re k > 1/2", |(re, _)| *re > 0.5)
        .prop_map(|(re, im)| c(re, im))
}

fn ulps_close(x: Complex64, y: Complex64, steps: usize) -> bool {
    (x - y).norm() <= 4.0 * f64::EPSILON * (steps + 1) as f64 * y.norm().max(x.norm())
}

#[test]
fn implication_chain_on_corpus() {
    for (name, sym) in common::full_corpus() {
        let r = classify(&sym, 12);
        if r.in_folland.is_yes() {
            assert!(r.in_coburn.is_yes(), "{name}");
        }
        if r.in_coburn.is_yes() {
            assert!(r.in_p.is_yes(), "{name}");
        }
        if r.in_p.is_yes() {
            assert!(r.in_l1_inf.is_yes(), "{name}");
        }
    }
}

#[test]
fn quadrature_agrees_with_closed_forms() {
    let spec = QuadratureSpec::new(200).unwrap();
    for (name, g, exact) in common::gaussian_corpus() {
        let sym: RadialSymbol = g.into();
        for n in 0..=20 {
            let q = quadrature_eigen(&sym, n, &spec).unwrap();
            assert!((q - exact(n)).norm() < 1e-8, "{name}, n = {n}: {q} vs {}", exact(n));
        }
    }
    for (name, p) in common::polynomial_corpus() {
        let sym: RadialSymbol = p.clone().into();
        for n in 0..=20 {
            let q = quadrature_eigen(&sym, n, &spec).unwrap();
            let exact = common::polynomial_spectrum(&p, n);
            assert!((q - exact).norm() < 1e-8 * exact.norm().max(1.0), "{name}, n = {n}");
        }
    }
}

#[test]
fn degree_exactness_up_to_64_nodes() {
    for q in 1..=64 {
        let rule = LaguerreRule::new(q);
        for j in 0..2 * q {
            let ln_fact: f64 = (1..=j).map(|i| (i as f64).ln()).sum();
            let s: f64 = rule
                .nodes()
                .iter()
                .zip(rule.ln_weights())
                .map(|(&t, &lw)| (lw + j as f64 * t.ln() - ln_fact).exp())
                .sum();
            assert!((s - 1.0).abs() < 1e-12, "Q = {q}, j = {j}: {s}");
        }
    }
}

#[test]
fn compose_verdict_follows_re_ab_on_grid() {
    let axis: Vec<f64> = (0..=12).map(|i| -2.0 + i as f64 / 3.0).collect();
    let re_axis: Vec<f64> = (1..=12).map(|i| 0.5 + i as f64 / 6.0).collect();
    for &ar in &re_axis {
        for &ai in &axis {
            for &br in &re_axis {
                for &bi in &axis {
                    let (a, b) = (c(ar, ai), c(br, bi));
                    let v = compose_gaussian(&GaussianRadialSymbol::gamma(a), &GaussianRadialSymbol::gamma(b)).unwrap();
                    assert_eq!(v.status == CompositionStatus::ClosedInP, (a * b).re > 0.5, "a = {a}, b = {b}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn gaussian_classification_is_exact(re in -1.0f64..2.0, im in -2.0f64..2.0) {
        let r = classify(&RadialSymbol::gamma(c(re, im)), 12);
        prop_assert_eq!(r.in_p, Decision::from_bool(re > 0.5));
        prop_assert_eq!(r.in_l1_inf, Decision::from_bool(re > 0.0));
    }

    #[test]
    fn p_membership_matches_square_integrability(re in -1.0f64..2.0, im in -2.0f64..2.0) {
        // |φ|² t^n e^{-t} = |k|² t^n e^{(2 Re σ - 1) t}: finite iff 2 Re σ < 1.
        let k = c(re, im);
        let sigma = c(1.0, 0.0) - k;
        let integrable = 2.0 * sigma.re - 1.0 < 0.0;
        let sym = RadialSymbol::gamma(k);
        prop_assert_eq!(classify(&sym, 12).in_p.is_yes(), integrable);
        for n in 0..=5 {
            prop_assert_eq!(in_natural_domain(&sym, &FockPolynomial::basis(n)).is_yes(), integrable);
        }
    }

    #[test]
    fn sequence_products_match_moyal(a in k_in_p(), b in k_in_p()) {
        let ga = GaussianRadialSymbol::gamma(a);
        let gb = GaussianRadialSymbol::gamma(b);
        let rhs = compose_sequences(&eigen_sequence(&ga.into(), 40).unwrap(), &eigen_sequence(&gb.into(), 40).unwrap());
        match eigen_sequence(&moyal_gaussian(&ga, &gb).into(), 40) {
            Ok(lhs) => {
                for (n, (x, y)) in lhs.values().iter().zip(rhs.values()).enumerate() {
                    prop_assert!(ulps_close(*x, *y, 2 * n), "n = {}: {} vs {}", n, x, y);
                }
            }
            // γ_ab has no moments when Re(ab) <= 0; the product sequence is
            // still (ab)^-n.
            Err(e) => {
                prop_assert!((a * b).re <= 0.0, "{}", e);
                let ab = a * b;
                for (n, y) in rhs.values().iter().enumerate() {
                    prop_assert!(ulps_close(ab.powi(-(n as i32)), *y, 4 * n + 4), "n = {}", n);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn geometric_tail_of_gamma(k in k_in_p()) {
        let e = eigen_sequence(&RadialSymbol::gamma(k), 40).unwrap();
        for (n, w) in e.values().windows(2).enumerate() {
            prop_assert!(ulps_close(w[1] * k, w[0], 1), "n = {}", n);
        }
    }

    #[test]
    fn eigen_sequence_is_linear(
        p in prop::collection::vec(-3.0f64..3.0, 1..5),
        q in prop::collection::vec(-3.0f64..3.0, 1..5),
        alpha in complex(2.0),
        beta in complex(2.0),
        amp in complex(2.0),
        amp2 in complex(2.0),
        sigma in complex(0.4),
    ) {
        let p = PolynomialRadialSymbol::from_real(&p);
        let q = PolynomialRadialSymbol::from_real(&q);
        let len = p.coefficients().len().max(q.coefficients().len());
        let at = |v: &[Complex64], i: usize| v.get(i).copied().unwrap_or_default();
        let sum = PolynomialRadialSymbol::new(
            (0..len).map(|i| alpha * at(p.coefficients(), i) + beta * at(q.coefficients(), i)).collect(),
        );
        let es = eigen_sequence(&sum.into(), 10).unwrap();
        let ep = eigen_sequence(&p.into(), 10).unwrap();
        let eq = eigen_sequence(&q.into(), 10).unwrap();
        for n in 0..=10 {
            let expected = alpha * ep.values()[n] + beta * eq.values()[n];
            let mass = (alpha.norm() * ep.values()[n].norm() + beta.norm() * eq.values()[n].norm()).max(1.0);
            prop_assert!((es.values()[n] - expected).norm() <= 64.0 * f64::EPSILON * mass * 1e2);
        }
        // Gaussians sharing an exponent add through their amplitudes.
        let g1 = GaussianRadialSymbol::new(amp, sigma);
        let g2 = GaussianRadialSymbol::new(amp2, sigma);
        let gs = GaussianRadialSymbol::new(alpha * amp + beta * amp2, sigma);
        let e1 = eigen_sequence(&g1.into(), 10).unwrap();
        let e2 = eigen_sequence(&g2.into(), 10).unwrap();
        let es = eigen_sequence(&gs.into(), 10).unwrap();
        for n in 0..=10 {
            let expected = alpha * e1.values()[n] + beta * e2.values()[n];
            prop_assert!((es.values()[n] - expected).norm() <= 1e-12 * (1.0 + expected.norm()));
        }
    }

    #[test]
    fn unitarity_is_exact(f in poly(12), g in poly(12)) {
        prop_assert_eq!(fock_inner(&f, &g), to_sequence(&f).inner(&to_sequence(&g)));
    }

    #[test]
    fn sequence_round_trip_is_exact(f in poly(20)) {
        prop_assert_eq!(from_sequence(&to_sequence(&f)), f);
    }

    #[test]
    fn exponent_algebra(a in complex(3.0), b in complex(3.0)) {
        // Amplitudes 2a, 2b keep the inputs out of the γ form.
        let ga = GaussianRadialSymbol::new(2.0 * a, c(1.0, 0.0) - a);
        let gb = GaussianRadialSymbol::new(2.0 * b, c(1.0, 0.0) - b);
        let p = moyal_gaussian(&ga, &gb);
        let target = c(1.0, 0.0) - a * b;
        let scale = 1.0 + (1.0 + a.norm()) * (1.0 + b.norm());
        prop_assert!((p.exponent() - target).norm() <= 8.0 * f64::EPSILON * scale);
        prop_assert_eq!(p.amplitude(), 4.0 * a * b);
    }

    #[test]
    fn recognition_round_trip(amp in complex(3.0), rate_re in 0.05f64..3.0, rate_im in -2.0f64..2.0) {
        prop_assume!(amp.norm() > 1e-3);
        let g = GaussianRadialSymbol::new(amp, c(1.0 - rate_re, -rate_im));
        let r = recognize_gaussian(&eigen_sequence(&g.into(), 12).unwrap(), 1e-12).unwrap();
        prop_assert!((r.amplitude() - g.amplitude()).norm() <= 1e-12 * g.amplitude().norm());
        prop_assert!((r.exponent() - g.exponent()).norm() <= 1e-12 * (1.0 + g.exponent().norm()));
    }

    #[test]
    fn gamma_recognition_round_trip(k in k_in_p()) {
        let r = recognize_gaussian(&eigen_sequence(&RadialSymbol::gamma(k), 12).unwrap(), 1e-12).unwrap();
        let found = r.as_gamma().unwrap();
        prop_assert!((found - k).norm() <= 1e-12 * k.norm());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn reproducing_property(f in poly(10), r in 0.0f64..2.0, theta in 0.0f64..std::f64::consts::TAU) {
        let z = Complex64::from_polar(r, theta);
        let v = reproduce_at(&f, z, &QuadratureSpec::default()).unwrap();
        let direct = eval_direct(&f, z);
        prop_assert!((v - direct).norm() < 1e-8 * direct.norm().max(1.0), "{} vs {}", v, direct);
    }

    #[test]
    fn toeplitz_on_p_is_diagonal(k in k_in_p(), n in 0usize..=12) {
        let sym = RadialSymbol::gamma(k);
        prop_assume!(classify(&sym, 25).in_p.is_yes());
        let out = toeplitz_apply(&sym, &FockPolynomial::basis(n), &QuadratureSpec::default()).unwrap();
        let expected = FockPolynomial::basis(n).scale(k.powi(-(n as i32)));
        prop_assert!(out.distance(&expected) < 1e-8, "residual {}", out.distance(&expected));
    }

    #[test]
    fn extension_agrees_on_natural_domain(k in k_in_p(), f in poly(6)) {
        let sym = RadialSymbol::gamma(k);
        prop_assume!(in_natural_domain(&sym, &f).is_yes());
        let spec = QuadratureSpec::default();
        let direct = toeplitz_apply(&sym, &f, &spec).unwrap();
        let diagonal = extension_apply(&sym, &f, &spec).unwrap();
        prop_assert!(direct.distance(&diagonal) < 1e-8, "residual {}", direct.distance(&diagonal));
    }

    #[test]
    fn toeplitz_is_linear_and_scales(
        k in k_in_p(),
        f in poly(4),
        g in poly(4),
        alpha in complex(2.0),
        beta in complex(2.0),
    ) {
        let spec = QuadratureSpec::default();
        let sym = RadialSymbol::gamma(k);
        let lhs = toeplitz_apply(&sym, &f.scale(alpha).add(&g.scale(beta)), &spec).unwrap();
        let tf = toeplitz_apply(&sym, &f, &spec).unwrap();
        let tg = toeplitz_apply(&sym, &g, &spec).unwrap();
        let rhs = tf.scale(alpha).add(&tg.scale(beta));
        prop_assert!(lhs.distance(&rhs) < 1e-9 * (1.0 + rhs.norm_sqr().sqrt()));
        let scaled = toeplitz_apply(&sym.scale(alpha), &f, &spec).unwrap();
        prop_assert!(scaled.distance(&tf.scale(alpha)) < 1e-9 * (1.0 + tf.norm_sqr().sqrt()));
    }
}
