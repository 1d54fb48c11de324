//! The bundled `demo` report.

use bargmann_toeplitz::composition::{compose_gaussian_to, moyal_gaussian, moyal_partial_sum};
use bargmann_toeplitz::error::Result;
use bargmann_toeplitz::operators::{equivalence_report, Verdict, DEFAULT_TOLERANCE};
use bargmann_toeplitz::quadrature::QuadratureSpec;
use bargmann_toeplitz::spectra::eigen_sequence_with;
use bargmann_toeplitz::symbols::{classify, GaussianRadialSymbol, RadialSymbol};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::Rendered;

/// Basis indices checked by the equivalence runs; kept small so the demo is quick.
const VERIFY_MAX: usize = 6;

fn verdict_line(v: &Verdict) -> String {
    match v {
        Verdict::Equivalent => "equivalent".into(),
        Verdict::NotEquivalent { reason } => format!("not equivalent ({reason})"),
        Verdict::Undecidable { reason } => format!("undecidable ({reason})"),
    }
}

fn fmt(z: Complex64) -> String {
    format!("{}{:+}i", z.re, z.im)
}

pub fn run(n_max: usize, spec: &QuadratureSpec) -> Result<Rendered> {
    let mut text = String::new();
    let verify_n = n_max.min(VERIFY_MAX);

    text.push_str("gamma_k sweep\n");
    let mut sweep = Vec::new();
    for k in [
        Complex64::new(2.0, 0.0),
        Complex64::new(std::f64::consts::E, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(0.6, -0.8),
        Complex64::new(0.8, -0.9),
        Complex64::new(0.4, 0.0),
        Complex64::new(0.3, 1.2),
    ] {
        let sym = RadialSymbol::gamma(k);
        let class = classify(&sym, 2 * n_max as u32 + 1);
        let spectrum = eigen_sequence_with(&sym, n_max, spec)?;
        let report = equivalence_report(&sym, verify_n, DEFAULT_TOLERANCE, spec);
        text.push_str(&format!(
            "  k = {:<22} L1_inf {:<3} P {:<3} |phi_{n_max}| = {:.3e}  {}\n",
            fmt(k),
            class.in_l1_inf.to_string(),
            class.in_p.to_string(),
            spectrum.values()[n_max].norm(),
            verdict_line(&report.verdict)
        ));
        sweep.push(json!({
            "k": { "re": k.re, "im": k.im },
            "classification": class,
            "spectrum": spectrum,
            "equivalence": report,
        }));
    }

    let unimodular: RadialSymbol = GaussianRadialSymbol::unimodular_outside_p().into();
    let class = classify(&unimodular, 2 * n_max as u32 + 1);
    let spectrum = eigen_sequence_with(&unimodular, n_max, spec)?;
    let max_dev = spectrum.values().iter().map(|v| (v.norm() - 1.0).abs()).fold(0.0, f64::max);
    let report = equivalence_report(&unimodular, verify_n, DEFAULT_TOLERANCE, spec);
    text.push_str(&format!(
        "unimodular symbol e^((1/2 + i sqrt3/2) r^2)\n  L1_inf {}  P {}  max ||phi_n| - 1| = {max_dev:.1e}\n  {}\n",
        class.in_l1_inf,
        class.in_p,
        verdict_line(&report.verdict)
    ));
    let unimodular_json = json!({
        "classification": class,
        "spectrum": spectrum,
        "max_modulus_deviation": max_dev,
        "equivalence": report,
    });

    let thermal: RadialSymbol = GaussianRadialSymbol::maxwell_boltzmann(1.0).into();
    let spectrum = eigen_sequence_with(&thermal, n_max, spec)?;
    let max_err = spectrum
        .values()
        .iter()
        .enumerate()
        .map(|(n, v)| (v - Complex64::new((-0.5 - n as f64).exp(), 0.0)).norm())
        .fold(0.0, f64::max);
    text.push_str(&format!(
        "maxwell-boltzmann, beta = 1\n  max |phi_n - e^(-1/2) e^(-n)| = {max_err:.1e}\n"
    ));
    let thermal_json = json!({ "beta": 1.0, "spectrum": spectrum, "max_error": max_err });

    let a = GaussianRadialSymbol::gamma(Complex64::new(0.6, -0.8));
    let b = GaussianRadialSymbol::gamma(Complex64::new(0.6, 0.8));
    let square = compose_gaussian_to(&a, &a, n_max)?;
    let pair = compose_gaussian_to(&a, &b, n_max)?;
    text.push_str(&format!(
        "coburn counterexample, a = 0.6-0.8i\n  a * a:       {}\n  a * conj(a): {}\n",
        square.status, pair.status
    ));

    let (g2, g3) = (
        GaussianRadialSymbol::gamma(Complex64::new(2.0, 0.0)),
        GaussianRadialSymbol::gamma(Complex64::new(3.0, 0.0)),
    );
    let product = moyal_gaussian(&g2, &g3);
    let w = Complex64::new(0.5, 0.0);
    let partial = moyal_partial_sum(&g2, &g3, 40, w);
    let moyal_err = (partial - product.eval(w.norm())).norm();
    text.push_str(&format!(
        "moyal product gamma_2 * gamma_3 = gamma_{}\n  partial sum K = 40 at w = 0.5 differs by {moyal_err:.1e}\n",
        fmt(product.as_gamma().unwrap_or_default())
    ));

    let json: Value = json!({
        "gamma_sweep": sweep,
        "unimodular": unimodular_json,
        "maxwell_boltzmann": thermal_json,
        "coburn": { "square": square, "conjugate_pair": pair },
        "moyal": {
            "product": RadialSymbol::from(product),
            "partial_sum_terms": 40,
            "w": { "re": w.re, "im": w.im },
            "partial_sum_error": moyal_err,
        },
    });
    Ok(Rendered { json, csv: None, text })
}
