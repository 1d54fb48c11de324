//! Radial phase-space symbols `φ(|w|)` and their class membership.
//!
//! Three families are supported:
//!
//! * [`GaussianRadialSymbol`]: `c · e^{σ r²}`, which houses the `γ_k` family
//!   `k e^{(1-k) r²}` and every closed-form example used in this crate;
//! * [`PolynomialRadialSymbol`]: `Σ p_m r^{2m}`;
//! * [`EnvelopedSymbol`]: a black-box evaluator with a declared growth bound
//!   `|φ(r)| <= C e^{δ r²}`.
//!
//! Class decisions ([`classify`]) are analytic. For Gaussian and polynomial
//! symbols they are exact; for enveloped symbols they follow from the
//! envelope alone, and sampled moments are reported as evidence only.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::de::Error as _;
use serde::ser::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::complex_json;
use crate::error::{Error, Result};
use crate::quadrature::{self, QuadratureSpec};

/// Scaled contributions below `e^{-745}` vanish in `f64`.
pub(crate) const LN_NEGLIGIBLE: f64 = -745.0;

const ENVELOPE_SLACK: f64 = 1e-10;

/// Trivalent answer used wherever a finite computation cannot settle a
/// question about an integral over the whole plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Yes,
    No,
    Undecidable,
}

impl Decision {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Decision::Yes
        } else {
            Decision::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Decision::Yes
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Yes => "yes",
            Decision::No => "no",
            Decision::Undecidable => "undecidable",
        })
    }
}

/// `φ(r) = c · e^{σ r²}`.
///
/// The decay rate `1 - σ` that governs every moment integral is kept
/// alongside the exponent. When the symbol is built with [`Self::gamma`] the
/// rate is `k` itself, so spectra `k^{-n}` are computed from `k` and not from
/// the rounded value of `1 - (1 - k)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianRadialSymbol {
    amplitude: Complex64,
    exponent: Complex64,
    gamma_k: Option<Complex64>,
}

impl GaussianRadialSymbol {
    pub fn new(amplitude: Complex64, exponent: Complex64) -> Self {
        GaussianRadialSymbol {
            amplitude,
            exponent,
            gamma_k: None,
        }
    }

    /// `γ_k(r) = k e^{(1-k) r²}`, whose spectrum is `{k^{-n}}`.
    pub fn gamma(k: Complex64) -> Self {
        GaussianRadialSymbol {
            amplitude: k,
            exponent: Complex64::new(1.0, 0.0) - k,
            gamma_k: Some(k),
        }
    }

    /// Thermal state of the harmonic oscillator at inverse temperature
    /// `beta`: `e^{β/2} e^{(1 - e^β) r²}`, with spectrum `e^{-β/2} e^{-βn}`.
    pub fn maxwell_boltzmann(beta: f64) -> Self {
        GaussianRadialSymbol::new(
            Complex64::new((beta / 2.0).exp(), 0.0),
            Complex64::new(1.0 - beta.exp(), 0.0),
        )
    }

    /// `e^{(1/2 + i√3/2) r²}`: integrable against every moment, with a
    /// unimodular spectrum, yet `u_0` is outside the natural domain of its
    /// Toeplitz operator.
    pub fn unimodular_outside_p() -> Self {
        GaussianRadialSymbol::new(
            Complex64::new(1.0, 0.0),
            Complex64::new(0.5, 3f64.sqrt() / 2.0),
        )
    }

    pub fn amplitude(&self) -> Complex64 {
        self.amplitude
    }

    pub fn exponent(&self) -> Complex64 {
        self.exponent
    }

    /// `1 - σ`: the moments `∫ φ(√t) t^n e^{-t} dt` converge iff its real
    /// part is positive.
    pub fn rate(&self) -> Complex64 {
        self.gamma_k
            .unwrap_or_else(|| Complex64::new(1.0, 0.0) - self.exponent)
    }

    /// `Some(k)` when the symbol is `γ_k`, either by construction or because
    /// `amplitude + exponent == 1` up to rounding.
    pub fn as_gamma(&self) -> Option<Complex64> {
        if let Some(k) = self.gamma_k {
            return Some(k);
        }
        let defect = (self.amplitude + self.exponent - 1.0).norm();
        let scale = 1.0 + self.amplitude.norm() + self.exponent.norm();
        (defect <= 8.0 * f64::EPSILON * scale).then_some(self.amplitude)
    }

    pub fn scale(&self, alpha: Complex64) -> Self {
        GaussianRadialSymbol::new(self.amplitude * alpha, self.exponent)
    }

    pub fn eval(&self, r: f64) -> Complex64 {
        self.amplitude * (self.exponent * (r * r)).exp()
    }

    fn eval_scaled(&self, t: f64, ln_scale: f64) -> Complex64 {
        if self.amplitude == Complex64::new(0.0, 0.0) {
            return Complex64::new(0.0, 0.0);
        }
        self.amplitude * (self.exponent * t + ln_scale).exp()
    }
}

/// `φ(r) = Σ_m p_m r^{2m}`; trailing zero coefficients are dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialRadialSymbol {
    coefficients: Vec<Complex64>,
}

impl PolynomialRadialSymbol {
    pub fn new(mut coefficients: Vec<Complex64>) -> Self {
        while coefficients.last() == Some(&Complex64::new(0.0, 0.0)) {
            coefficients.pop();
        }
        PolynomialRadialSymbol { coefficients }
    }

    pub fn from_real(coefficients: &[f64]) -> Self {
        Self::new(coefficients.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// `φ(r) = r²`.
    pub fn r_squared() -> Self {
        Self::from_real(&[0.0, 1.0])
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// Degree in `r²`; the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn scale(&self, alpha: Complex64) -> Self {
        Self::new(self.coefficients.iter().map(|p| p * alpha).collect())
    }

    /// Value at `t = r²`.
    pub fn eval_t(&self, t: f64) -> Complex64 {
        self.coefficients
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, p| acc * t + p)
    }

    pub fn eval(&self, r: f64) -> Complex64 {
        self.eval_t(r * r)
    }
}

/// `coeff · r^power · e^{exponent · r²}`, one term of a serializable
/// black-box evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpTerm {
    #[serde(with = "complex_json")]
    pub coeff: Complex64,
    #[serde(default)]
    pub power: u32,
    #[serde(with = "complex_json")]
    pub exponent: Complex64,
}

impl ExpTerm {
    fn ln_scaled(&self, t: f64, ln_scale: f64) -> Complex64 {
        if self.coeff == Complex64::new(0.0, 0.0) || (t == 0.0 && self.power > 0) {
            return Complex64::new(0.0, 0.0);
        }
        let radial = if self.power == 0 {
            0.0
        } else {
            0.5 * self.power as f64 * t.ln()
        };
        self.coeff * (self.exponent * t + radial + ln_scale).exp()
    }
}

type RadialFn = dyn Fn(f64) -> Complex64 + Send + Sync;

/// Evaluation rule of an [`EnvelopedSymbol`].
#[derive(Clone)]
pub enum Evaluator {
    /// Sum of [`ExpTerm`]s; round-trips through JSON.
    Terms(Vec<ExpTerm>),
    /// Arbitrary function of `r`; usable from Rust but not serializable.
    Custom(Arc<RadialFn>),
}

impl Evaluator {
    pub fn custom<F>(f: F) -> Self
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        Evaluator::Custom(Arc::new(f))
    }
}

impl fmt::Debug for Evaluator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evaluator::Terms(terms) => f.debug_tuple("Terms").field(terms).finish(),
            Evaluator::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

/// Black-box symbol with a declared bound `|φ(r)| <= C e^{δ r²}`.
///
/// The bound is checked at every point where the evaluator is called.
#[derive(Debug, Clone)]
pub struct EnvelopedSymbol {
    evaluator: Evaluator,
    envelope_c: f64,
    envelope_delta: f64,
}

impl EnvelopedSymbol {
    pub fn new(evaluator: Evaluator, envelope_c: f64, envelope_delta: f64) -> Result<Self> {
        if !(envelope_c > 0.0 && envelope_c.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "envelope constant must be positive and finite, got {envelope_c}"
            )));
        }
        if !envelope_delta.is_finite() {
            return Err(Error::InvalidInput("envelope delta must be finite".into()));
        }
        Ok(EnvelopedSymbol {
            evaluator,
            envelope_c,
            envelope_delta,
        })
    }

    pub fn evaluator(&self) -> &Evaluator {
        &self.evaluator
    }

    pub fn envelope_c(&self) -> f64 {
        self.envelope_c
    }

    pub fn envelope_delta(&self) -> f64 {
        self.envelope_delta
    }

    fn ln_bound(&self, t: f64) -> f64 {
        self.envelope_c.ln() + self.envelope_delta * t
    }

    /// `φ(√t) / (C e^{δt})`, which the envelope requires to have modulus at
    /// most one.
    fn normalized(&self, t: f64) -> Result<Complex64> {
        let ln_bound = self.ln_bound(t);
        let nu = match &self.evaluator {
            Evaluator::Terms(terms) => terms.iter().map(|term| term.ln_scaled(t, -ln_bound)).sum(),
            Evaluator::Custom(f) => f(t.sqrt()) * (-ln_bound).exp(),
        };
        let modulus = nu.norm();
        if modulus.is_nan() || modulus > 1.0 + ENVELOPE_SLACK {
            return Err(Error::EnvelopeViolation {
                r: t.sqrt(),
                modulus: modulus * ln_bound.exp(),
                bound: ln_bound.exp(),
            });
        }
        Ok(nu)
    }

    pub fn eval(&self, r: f64) -> Result<Complex64> {
        let t = r * r;
        Ok(self.normalized(t)? * self.ln_bound(t).exp())
    }

    fn eval_scaled(&self, t: f64, ln_scale: f64) -> Result<Complex64> {
        let ln_total = self.ln_bound(t) + ln_scale;
        if ln_total < LN_NEGLIGIBLE {
            return Ok(Complex64::new(0.0, 0.0));
        }
        Ok(self.normalized(t)? * ln_total.exp())
    }
}

/// A radial symbol `φ(|w|)`.
#[derive(Debug, Clone)]
pub enum RadialSymbol {
    Gaussian(GaussianRadialSymbol),
    Polynomial(PolynomialRadialSymbol),
    Enveloped(EnvelopedSymbol),
}

impl From<GaussianRadialSymbol> for RadialSymbol {
    fn from(s: GaussianRadialSymbol) -> Self {
        RadialSymbol::Gaussian(s)
    }
}

impl From<PolynomialRadialSymbol> for RadialSymbol {
    fn from(s: PolynomialRadialSymbol) -> Self {
        RadialSymbol::Polynomial(s)
    }
}

impl From<EnvelopedSymbol> for RadialSymbol {
    fn from(s: EnvelopedSymbol) -> Self {
        RadialSymbol::Enveloped(s)
    }
}

impl RadialSymbol {
    pub fn gamma(k: Complex64) -> Self {
        GaussianRadialSymbol::gamma(k).into()
    }

    pub fn eval(&self, r: f64) -> Result<Complex64> {
        eval_symbol(self, r)
    }

    /// `φ(√t) · e^{ln_scale}`, combined before exponentiating so that
    /// quadrature terms neither overflow nor turn into `0 · ∞`.
    pub(crate) fn eval_scaled(&self, t: f64, ln_scale: f64) -> Result<Complex64> {
        match self {
            RadialSymbol::Gaussian(g) => Ok(g.eval_scaled(t, ln_scale)),
            RadialSymbol::Polynomial(p) => Ok(p.eval_t(t) * ln_scale.exp()),
            RadialSymbol::Enveloped(e) => e.eval_scaled(t, ln_scale),
        }
    }

    /// `α φ`. Enveloped symbols keep their evaluator and widen `C` by `|α|`.
    pub fn scale(&self, alpha: Complex64) -> Self {
        match self {
            RadialSymbol::Gaussian(g) => g.scale(alpha).into(),
            RadialSymbol::Polynomial(p) => p.scale(alpha).into(),
            RadialSymbol::Enveloped(e) => {
                let evaluator = match &e.evaluator {
                    Evaluator::Terms(terms) => Evaluator::Terms(
                        terms
                            .iter()
                            .map(|t| ExpTerm {
                                coeff: t.coeff * alpha,
                                ..*t
                            })
                            .collect(),
                    ),
                    Evaluator::Custom(f) => {
                        let f = Arc::clone(f);
                        Evaluator::custom(move |r| alpha * f(r))
                    }
                };
                RadialSymbol::Enveloped(EnvelopedSymbol {
                    evaluator,
                    envelope_c: e.envelope_c * alpha.norm().max(f64::MIN_POSITIVE),
                    envelope_delta: e.envelope_delta,
                })
            }
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("symbol JSON: {e}")))
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string(self).map_err(|e| Error::InvalidInput(e.to_string()))
    }
}

/// `φ(r)` for `r >= 0`.
pub fn eval_symbol(sym: &RadialSymbol, r: f64) -> Result<Complex64> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::InvalidInput(format!("radius must be finite and >= 0, got {r}")));
    }
    match sym {
        RadialSymbol::Gaussian(g) => Ok(g.eval(r)),
        RadialSymbol::Polynomial(p) => Ok(p.eval(r)),
        RadialSymbol::Enveloped(e) => e.eval(r),
    }
}

// ---------------------------------------------------------------------------
// JSON schema

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum SymbolJson {
    Gaussian {
        #[serde(default, with = "complex_json::option", skip_serializing_if = "Option::is_none")]
        k: Option<Complex64>,
        #[serde(default, with = "complex_json::option", skip_serializing_if = "Option::is_none")]
        amplitude: Option<Complex64>,
        #[serde(default, with = "complex_json::option", skip_serializing_if = "Option::is_none")]
        exponent: Option<Complex64>,
    },
    Polynomial {
        #[serde(with = "complex_json::vec")]
        coefficients: Vec<Complex64>,
    },
    Enveloped {
        terms: Vec<ExpTerm>,
        envelope: EnvelopeJson,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EnvelopeJson {
    c: f64,
    delta: f64,
}

impl Serialize for RadialSymbol {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let json = match self {
            RadialSymbol::Gaussian(g) => SymbolJson::Gaussian {
                k: g.gamma_k,
                amplitude: Some(g.amplitude),
                exponent: Some(g.exponent),
            },
            RadialSymbol::Polynomial(p) => SymbolJson::Polynomial {
                coefficients: p.coefficients.clone(),
            },
            RadialSymbol::Enveloped(e) => match &e.evaluator {
                Evaluator::Terms(terms) => SymbolJson::Enveloped {
                    terms: terms.clone(),
                    envelope: EnvelopeJson {
                        c: e.envelope_c,
                        delta: e.envelope_delta,
                    },
                },
                Evaluator::Custom(_) => {
                    return Err(S::Error::custom("custom evaluators cannot be serialized"))
                }
            },
        };
        json.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RadialSymbol {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match SymbolJson::deserialize(d)? {
            SymbolJson::Gaussian {
                k: Some(k),
                amplitude,
                exponent,
            } => {
                let g = GaussianRadialSymbol::gamma(k);
                let consistent = amplitude.is_none_or(|a| a == g.amplitude)
                    && exponent.is_none_or(|e| (e - g.exponent).norm() <= 4.0 * f64::EPSILON * (1.0 + k.norm()));
                if !consistent {
                    return Err(D::Error::custom(
                        "gaussian symbol: `k` disagrees with amplitude/exponent",
                    ));
                }
                Ok(g.into())
            }
            SymbolJson::Gaussian {
                k: None,
                amplitude: Some(a),
                exponent: Some(e),
            } => Ok(GaussianRadialSymbol::new(a, e).into()),
            SymbolJson::Gaussian { .. } => Err(D::Error::custom(
                "gaussian symbol needs either `k` or both `amplitude` and `exponent`",
            )),
            SymbolJson::Polynomial { coefficients } => {
                Ok(PolynomialRadialSymbol::new(coefficients).into())
            }
            SymbolJson::Enveloped { terms, envelope } => {
                EnvelopedSymbol::new(Evaluator::Terms(terms), envelope.c, envelope.delta)
                    .map(Into::into)
                    .map_err(D::Error::custom)
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Classification

/// A sampled moment `∫ |φ(r)| r^m e^{-r²} dr`, reported for black-box
/// symbols. Evidence only: a finite quadrature sum says nothing about
/// integrability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentSample {
    pub m: u32,
    pub value: f64,
}

/// Membership of a radial symbol in the integrable set `L¹∞` (all moments
/// `∫ |φ| r^m e^{-r²} dr` finite), in the class `𝒫` (every `u_n` lies in
/// the natural domain), in Folland's class and in Coburn's class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub in_l1_inf: Decision,
    /// Largest `m` for which the moment was shown finite analytically.
    pub verified_moment: Option<u32>,
    pub in_p: Decision,
    pub in_folland: Decision,
    pub in_coburn: Decision,
    pub reasons: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub moment_samples: Vec<MomentSample>,
}

impl ClassificationReport {
    /// Folland ⊂ Coburn ⊂ 𝒫 ⊂ L¹∞, propagated in both directions.
    fn enforce_chain(&mut self) {
        if self.in_folland.is_yes() {
            self.in_coburn = Decision::Yes;
        }
        if self.in_coburn.is_yes() {
            self.in_p = Decision::Yes;
        }
        if self.in_p.is_yes() {
            self.in_l1_inf = Decision::Yes;
        }
        if self.in_l1_inf == Decision::No {
            self.in_p = Decision::No;
        }
        if self.in_p == Decision::No {
            self.in_coburn = Decision::No;
        }
        if self.in_coburn == Decision::No {
            self.in_folland = Decision::No;
        }
    }
}

/// `ln Γ((m + 1) / 2)` by the half-integer recurrence.
fn ln_gamma_half(m: u32) -> f64 {
    // Γ(1/2) = √π, Γ(1) = 1, Γ(x + 1) = x Γ(x).
    let (mut x, mut acc) = if m % 2 == 0 {
        (0.5, 0.5 * std::f64::consts::PI.ln())
    } else {
        (1.0, 0.0)
    };
    let target = (m as f64 + 1.0) / 2.0;
    while x < target {
        acc += x.ln();
        x += 1.0;
    }
    acc
}

/// `∫_0^∞ r^m e^{-s r²} dr = Γ((m+1)/2) / (2 s^{(m+1)/2})`, in log form.
fn ln_gaussian_moment(m: u32, s: f64) -> f64 {
    ln_gamma_half(m) - std::f64::consts::LN_2 - 0.5 * (m as f64 + 1.0) * s.ln()
}

/// Decides class membership. `m_max` bounds the moments checked and
/// reported; for the Gaussian and polynomial families the verdicts are exact
/// regardless.
pub fn classify(sym: &RadialSymbol, m_max: u32) -> ClassificationReport {
    let mut report = match sym {
        RadialSymbol::Gaussian(g) => classify_gaussian(g, m_max),
        RadialSymbol::Polynomial(p) => classify_polynomial(p, m_max),
        RadialSymbol::Enveloped(e) => classify_enveloped(e, m_max),
    };
    report.enforce_chain();
    report
}

fn classify_gaussian(g: &GaussianRadialSymbol, m_max: u32) -> ClassificationReport {
    if g.amplitude == Complex64::new(0.0, 0.0) {
        return ClassificationReport {
            in_l1_inf: Decision::Yes,
            verified_moment: Some(m_max),
            in_p: Decision::Yes,
            in_folland: Decision::Yes,
            in_coburn: Decision::Yes,
            reasons: vec!["zero symbol".into()],
            moment_samples: Vec::new(),
        };
    }
    // |φ(r)| e^{-r²} = |c| e^{-s r²} with s = Re(1 - σ).
    let s = g.rate().re;
    let mut reasons = Vec::new();
    let in_l1_inf = s > 0.0;
    let verified_moment = if in_l1_inf {
        let ln_last = g.amplitude.norm().ln() + ln_gaussian_moment(m_max, s);
        reasons.push(format!(
            "Re(1 - sigma) = {s} > 0: moment m = {m_max} equals |c| Gamma((m+1)/2) / (2 s^((m+1)/2)) = {:e}",
            ln_last.exp()
        ));
        Some(m_max)
    } else {
        reasons.push(format!(
            "Re(1 - sigma) = {s} <= 0: |phi(r)| r^m e^(-r^2) is not integrable for any m"
        ));
        None
    };
    // |φ u_n|² e^{-r²} ~ r^{2n} e^{(2 Re σ - 1) r²}: integrable iff Re σ < 1/2.
    // The same exponent decides |φ e^{w z̄}|² and the envelope δ = Re σ.
    let in_p = s > 0.5;
    if in_p {
        reasons.push(format!(
            "Re(sigma) = {} < 1/2: |phi u_n|^2 and |phi K_z|^2 integrable for every n and z, growth exponent below 1/2",
            1.0 - s
        ));
    } else {
        reasons.push(format!(
            "Re(sigma) = {} >= 1/2: |phi u_0|^2 e^(-r^2) does not decay, u_0 outside the natural domain",
            1.0 - s
        ));
    }
    let d = Decision::from_bool(in_p);
    ClassificationReport {
        in_l1_inf: Decision::from_bool(in_l1_inf),
        verified_moment,
        in_p: d,
        in_folland: d,
        in_coburn: d,
        reasons,
        moment_samples: Vec::new(),
    }
}

fn classify_polynomial(p: &PolynomialRadialSymbol, m_max: u32) -> ClassificationReport {
    // |Σ p_j r^{2j}| <= Σ |p_j| r^{2j}, and every r^k e^{-r²} is integrable.
    let bound: f64 = p
        .coefficients
        .iter()
        .enumerate()
        .map(|(j, c)| c.norm() * ln_gaussian_moment(m_max + 2 * j as u32, 1.0).exp())
        .sum();
    ClassificationReport {
        in_l1_inf: Decision::Yes,
        verified_moment: Some(m_max),
        in_p: Decision::Yes,
        in_folland: Decision::Yes,
        in_coburn: Decision::Yes,
        reasons: vec![
            format!(
                "polynomial of degree {} in r^2: moment m = {m_max} bounded by {bound:e}",
                p.degree()
            ),
            "polynomial growth is below C e^(delta r^2) for every delta > 0".into(),
        ],
        moment_samples: Vec::new(),
    }
}

fn classify_enveloped(e: &EnvelopedSymbol, m_max: u32) -> ClassificationReport {
    let delta = e.envelope_delta;
    let mut reasons = Vec::new();

    let spec = QuadratureSpec::default();
    let rule = quadrature::rule(spec.node_count);
    let mut samples = Vec::new();
    let mut violation = None;
    // With t = r²: ∫ |φ(r)| r^m e^{-r²} dr = ½ ∫ |φ(√t)| t^{(m-1)/2} e^{-t} dt.
    'moments: for m in 0..=m_max {
        let mut total = 0.0;
        for (&t, &lw) in rule.nodes().iter().zip(rule.ln_weights()) {
            let ln_scale = lw + 0.5 * (m as f64 - 1.0) * t.ln();
            match e.eval_scaled(t, ln_scale) {
                Ok(v) => total += v.norm(),
                Err(err) => {
                    violation = Some(err);
                    break 'moments;
                }
            }
        }
        samples.push(MomentSample {
            m,
            value: 0.5 * total,
        });
    }

    if let Some(err) = violation {
        reasons.push(format!("declared envelope is inconsistent with the evaluator: {err}"));
        return ClassificationReport {
            in_l1_inf: Decision::Undecidable,
            verified_moment: None,
            in_p: Decision::Undecidable,
            in_folland: Decision::Undecidable,
            in_coburn: Decision::Undecidable,
            reasons,
            moment_samples: samples,
        };
    }

    let (in_l1_inf, verified_moment) = if delta < 1.0 {
        let s = 1.0 - delta;
        reasons.push(format!(
            "envelope delta = {delta} < 1: moment m = {m_max} bounded by C Gamma((m+1)/2) / (2 (1-delta)^((m+1)/2)) = {:e}",
            (e.envelope_c.ln() + ln_gaussian_moment(m_max, s)).exp()
        ));
        (Decision::Yes, Some(m_max))
    } else {
        reasons.push(format!(
            "envelope delta = {delta} >= 1 bounds no moment; sampled moments are evidence only"
        ));
        (Decision::Undecidable, None)
    };

    let small = if delta < 0.5 {
        reasons.push(format!(
            "envelope delta = {delta} < 1/2: Folland's bound holds, hence Coburn and P"
        ));
        Decision::Yes
    } else {
        reasons.push(format!(
            "envelope delta = {delta} >= 1/2: the bound does not settle P, Folland or Coburn membership"
        ));
        Decision::Undecidable
    };

    ClassificationReport {
        in_l1_inf,
        verified_moment,
        in_p: small,
        in_folland: small,
        in_coburn: small,
        reasons,
        moment_samples: samples,
    }
}
