#![allow(dead_code)]

use bargmann_toeplitz::spaces::FockPolynomial;
use bargmann_toeplitz::symbols::{
    EnvelopedSymbol, Evaluator, GaussianRadialSymbol, PolynomialRadialSymbol, RadialSymbol,
};
use num_complex::Complex64;
use rand::Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Gaussian members with their closed-form spectra, independent of the library.
pub fn gaussian_corpus() -> Vec<(&'static str, GaussianRadialSymbol, Box<dyn Fn(usize) -> Complex64>)> {
    let gamma = |k: Complex64| -> Box<dyn Fn(usize) -> Complex64> { Box::new(move |n| k.powi(-(n as i32))) };
    let w = c(0.5, -(3f64.sqrt()) / 2.0);
    vec![
        ("gamma_2", GaussianRadialSymbol::gamma(c(2.0, 0.0)), gamma(c(2.0, 0.0))),
        ("gamma_e", GaussianRadialSymbol::gamma(c(std::f64::consts::E, 0.0)), gamma(c(std::f64::consts::E, 0.0))),
        ("gamma_0.6-0.8i", GaussianRadialSymbol::gamma(c(0.6, -0.8)), gamma(c(0.6, -0.8))),
        ("gamma_0.8-0.9i", GaussianRadialSymbol::gamma(c(0.8, -0.9)), gamma(c(0.8, -0.9))),
        (
            "maxwell_boltzmann_1",
            GaussianRadialSymbol::maxwell_boltzmann(1.0),
            Box::new(|n| c((-0.5 - n as f64).exp(), 0.0)),
        ),
        (
            "unimodular",
            GaussianRadialSymbol::unimodular_outside_p(),
            Box::new(move |n| w.powi(-(n as i32 + 1))),
        ),
    ]
}

/// Polynomials in `r²` with spectra `Σ p_m (n+m)!/n!`.
pub fn polynomial_corpus() -> Vec<(&'static str, PolynomialRadialSymbol)> {
    vec![
        ("r^2", PolynomialRadialSymbol::r_squared()),
        ("1+2r^2-0.5r^4", PolynomialRadialSymbol::from_real(&[1.0, 2.0, -0.5])),
    ]
}

pub fn polynomial_spectrum(p: &PolynomialRadialSymbol, n: usize) -> Complex64 {
    p.coefficients()
        .iter()
        .enumerate()
        .map(|(m, coef)| coef * (1..=m).map(|j| (n + j) as f64).product::<f64>())
        .sum()
}

/// `cos(r) e^{-r²/2}`, evaluated as a black box under the envelope `e^0`.
pub fn black_box_symbol() -> RadialSymbol {
    EnvelopedSymbol::new(Evaluator::custom(|r| c(r.cos() * (-0.5 * r * r).exp(), 0.0)), 1.0, 0.0)
        .unwrap()
        .into()
}

pub fn full_corpus() -> Vec<(String, RadialSymbol)> {
    let mut out: Vec<(String, RadialSymbol)> =
        gaussian_corpus().into_iter().map(|(name, g, _)| (name.to_string(), g.into())).collect();
    out.extend(polynomial_corpus().into_iter().map(|(name, p)| (name.to_string(), p.into())));
    out.push(("cos_black_box".to_string(), black_box_symbol()));
    out
}

pub fn random_complex<R: Rng>(rng: &mut R, radius: f64) -> Complex64 {
    c(rng.gen_range(-radius..radius), rng.gen_range(-radius..radius))
}

pub fn random_poly<R: Rng>(rng: &mut R, max_degree: usize) -> FockPolynomial {
    let degree = rng.gen_range(0..=max_degree);
    FockPolynomial::new((0..=degree).map(|_| random_complex(rng, 1.0)).collect())
}

/// Direct evaluation `Σ c_n z^n / √n!`.
pub fn eval_direct(poly: &FockPolynomial, z: Complex64) -> Complex64 {
    let mut fact = 1.0f64;
    poly.coeffs()
        .iter()
        .enumerate()
        .map(|(n, a)| {
            if n > 0 {
                fact *= n as f64;
            }
            a * z.powu(n as u32) / fact.sqrt()
        })
        .sum()
}
