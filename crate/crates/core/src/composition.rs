//! Products of radial Toeplitz operators through their spectra, and the
//! Moyal-type product of Gaussian symbols.

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::spectra::{self, EigenSequence, Method, Tail};
use crate::symbols::{classify, Decision, GaussianRadialSymbol, RadialSymbol};

/// Entries computed by [`compose_gaussian`]; the geometric tail carries the rest.
pub const DEFAULT_SEQUENCE_LEN: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CompositionStatus {
    #[serde(rename = "closed_in_P")]
    ClosedInP,
    #[serde(rename = "not_toeplitz_in_P")]
    NotToeplitzInP,
    Unrecognized,
}

impl std::fmt::Display for CompositionStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CompositionStatus::ClosedInP => "closed_in_P",
            CompositionStatus::NotToeplitzInP => "not_toeplitz_in_P",
            CompositionStatus::Unrecognized => "unrecognized",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompositionVerdict {
    pub product_sequence: EigenSequence,
    pub recognized_symbol: Option<GaussianRadialSymbol>,
    pub status: CompositionStatus,
    pub reason: String,
}

impl Serialize for CompositionVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            status: CompositionStatus,
            reason: &'a str,
            #[serde(skip_serializing_if = "Option::is_none")]
            symbol: Option<RadialSymbol>,
            sequence: &'a EigenSequence,
        }
        Wire {
            status: self.status,
            reason: &self.reason,
            symbol: self.recognized_symbol.map(RadialSymbol::from),
            sequence: &self.product_sequence,
        }
        .serialize(s)
    }
}

impl CompositionVerdict {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("verdicts always serialize")
    }
}

/// `{φ_n ψ_n}`. A shorter input is extended through its geometric tail;
/// without one the product stops where that input ends.
pub fn compose_sequences(e1: &EigenSequence, e2: &EigenSequence) -> EigenSequence {
    let values: Vec<Complex64> = (0..e1.len().max(e2.len()))
        .map_while(|n| Some(e1.value(n)? * e2.value(n)?))
        .collect();
    let tail = match (e1.tail(), e2.tail()) {
        (Some(Tail::Geometric { ratio: a }), Some(Tail::Geometric { ratio: b })) => {
            Some(Tail::Geometric { ratio: a * b })
        }
        _ => None,
    };
    let method = match (e1.method(), e2.method()) {
        (Method::ClosedForm, Method::ClosedForm) => Method::ClosedForm,
        _ => Method::Quadrature,
    };
    EigenSequence::new(values, method, tail).expect("both inputs are non-empty")
}

/// The Gaussian symbol whose spectrum is `eig`, if `eig` is geometric.
///
/// Every ratio `v_{n+1}/v_n` must agree with the first one to relative
/// tolerance `tol`. The result is in `γ_k` form when `v_0 = 1/k`.
pub fn recognize_gaussian(eig: &EigenSequence, tol: f64) -> Option<GaussianRadialSymbol> {
    let v = eig.values();
    if v.len() < 3 || v.iter().any(|x| x.norm() == 0.0 || !x.is_finite()) {
        return None;
    }
    let q = v[1] / v[0];
    if v.windows(2).any(|w| (w[1] / w[0] - q).norm() > tol * q.norm()) {
        return None;
    }
    let rate = Complex64::new(1.0, 0.0) / q;
    if rate.re <= 0.0 {
        return None;
    }
    let amplitude = v[0] * rate;
    if (amplitude - rate).norm() <= tol * rate.norm() {
        Some(GaussianRadialSymbol::gamma(rate))
    } else {
        Some(GaussianRadialSymbol::new(amplitude, Complex64::new(1.0, 0.0) - rate))
    }
}

/// Product of two diagonal operators given only their spectra.
///
/// A geometric product whose fitted Gaussian lies in `𝒫` is `closed_in_P`.
/// Anything else is `unrecognized`: outside the Gaussian factors there is no
/// inverse from sequences to symbols to rule representability out.
pub fn compose_spectra(e1: &EigenSequence, e2: &EigenSequence, tol: f64) -> CompositionVerdict {
    let product_sequence = compose_sequences(e1, e2);
    match recognize_gaussian(&product_sequence, tol) {
        Some(g) if classify(&g.into(), 8).in_p == Decision::Yes => CompositionVerdict {
            reason: format!("geometric product with ratio 1/{}, the spectrum of a Gaussian symbol in P", fmt(g.rate())),
            product_sequence,
            recognized_symbol: Some(g),
            status: CompositionStatus::ClosedInP,
        },
        Some(g) => CompositionVerdict {
            reason: format!(
                "geometric product fits a Gaussian with rate {} outside P; no verdict beyond Gaussian factors",
                fmt(g.rate())
            ),
            product_sequence,
            recognized_symbol: None,
            status: CompositionStatus::Unrecognized,
        },
        None => CompositionVerdict {
            reason: "product sequence is not geometric".into(),
            product_sequence,
            recognized_symbol: None,
            status: CompositionStatus::Unrecognized,
        },
    }
}

/// `T_{γ_a} T_{γ_b}` with [`DEFAULT_SEQUENCE_LEN`] explicit entries.
pub fn compose_gaussian(ga: &GaussianRadialSymbol, gb: &GaussianRadialSymbol) -> Result<CompositionVerdict> {
    compose_gaussian_to(ga, gb, DEFAULT_SEQUENCE_LEN - 1)
}

/// `T_{γ_a} T_{γ_b}` with the product sequence listed up to `n_max`.
///
/// The product has spectrum `(ab)^{-n}`, which is the spectrum of `γ_{ab}`.
/// It is a Toeplitz operator with symbol in `𝒫` exactly when `Re(ab) > 1/2`.
pub fn compose_gaussian_to(
    ga: &GaussianRadialSymbol,
    gb: &GaussianRadialSymbol,
    n_max: usize,
) -> Result<CompositionVerdict> {
    let a = factor_parameter(ga, "first")?;
    let b = factor_parameter(gb, "second")?;
    let ea = spectra::eigen_sequence(&RadialSymbol::gamma(a), n_max)?;
    let eb = spectra::eigen_sequence(&RadialSymbol::gamma(b), n_max)?;
    let product_sequence = compose_sequences(&ea, &eb);
    let ab = a * b;
    let verdict = if ab.re > 0.5 {
        let symbol = GaussianRadialSymbol::gamma(ab);
        debug_assert_eq!(classify(&symbol.into(), 8).in_p, Decision::Yes);
        CompositionVerdict {
            product_sequence,
            recognized_symbol: Some(symbol),
            status: CompositionStatus::ClosedInP,
            reason: format!("Re(ab) = {} > 1/2: the product is the Toeplitz operator of gamma_ab, ab = {}", ab.re, fmt(ab)),
        }
    } else {
        CompositionVerdict {
            product_sequence,
            recognized_symbol: None,
            status: CompositionStatus::NotToeplitzInP,
            reason: format!(
                "Re(ab) = {} <= 1/2: the product spectrum (ab)^-n with ab = {} belongs to gamma_ab, which is not in P, \
                 so the product is not a Toeplitz operator with symbol in P",
                ab.re,
                fmt(ab)
            ),
        }
    };
    Ok(verdict)
}

fn factor_parameter(g: &GaussianRadialSymbol, which: &str) -> Result<Complex64> {
    match g.as_gamma() {
        Some(k) if k.re > 0.5 => Ok(k),
        Some(k) => Err(Error::DomainViolation(format!(
            "{which} factor gamma_k has Re k = {} <= 1/2 and is outside P",
            k.re
        ))),
        None => Err(Error::DomainViolation(format!(
            "{which} factor is not of the form k e^((1-k) r^2)"
        ))),
    }
}

fn fmt(z: Complex64) -> String {
    format!("{}{:+}i", z.re, z.im)
}

/// `(c₁ e^{σ₁ r²}) ⋄ (c₂ e^{σ₂ r²}) = c₁c₂ e^{(σ₁ + σ₂ - σ₁σ₂) r²}`.
///
/// For `γ_a`, `γ_b` this is `γ_{ab}`.
pub fn moyal_gaussian(ga: &GaussianRadialSymbol, gb: &GaussianRadialSymbol) -> GaussianRadialSymbol {
    if let (Some(a), Some(b)) = (ga.as_gamma(), gb.as_gamma()) {
        return GaussianRadialSymbol::gamma(a * b);
    }
    let (s1, s2) = (ga.exponent(), gb.exponent());
    GaussianRadialSymbol::new(ga.amplitude() * gb.amplitude(), s1 + s2 - s1 * s2)
}

/// `Σ_{k≤K} ((-1)^k / k!) ∂^k φ_a · ∂̄^k φ_b` at `w`.
///
/// With `∂^k(c e^{σ|w|²}) = c σ^k w̄^k e^{σ|w|²}` the `k`-th term is the
/// previous one times `-σ_a σ_b |w|² / k`.
pub fn moyal_partial_sum(ga: &GaussianRadialSymbol, gb: &GaussianRadialSymbol, k_max: usize, w: Complex64) -> Complex64 {
    let t = w.norm_sqr();
    let mut term = ga.eval(w.norm()) * gb.eval(w.norm());
    let step = -ga.exponent() * gb.exponent() * t;
    let mut sum = term;
    for k in 1..=k_max {
        term *= step / k as f64;
        sum += term;
    }
    sum
}
