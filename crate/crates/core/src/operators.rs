//! Radial Toeplitz operators and their diagonal realization on `l²`.
//!
//! [`toeplitz_apply`] computes the Bargmann projection `P(φψ)` from matrix
//! elements obtained by polar quadrature; [`diagonal_apply`] multiplies `l²`
//! sequences by the eigenvalue sequence. The two agree exactly when the
//! symbol lies in `𝒫`, which [`equivalence_report`] checks numerically on
//! the basis `u_n`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{self, QuadratureSpec};
use crate::spaces::{self, angular_nodes, FockPolynomial, L2Sequence};
use crate::spectra::{self, EigenSequence, Tail};
use crate::symbols::{classify, Decision, RadialSymbol};

/// Rows computed above the input degree by [`toeplitz_apply`].
pub const LEAKAGE_ROWS: usize = 2;

/// Default residual tolerance for [`equivalence_report`].
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

/// `D̃_φ {ψ_n} = {φ_n ψ_n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalOperator {
    eigen: EigenSequence,
}

impl DiagonalOperator {
    pub fn new(eigen: EigenSequence) -> Self {
        DiagonalOperator { eigen }
    }

    pub fn from_symbol(sym: &RadialSymbol, n_max: usize, spec: &QuadratureSpec) -> Result<Self> {
        spectra::eigen_sequence_with(sym, n_max, spec).map(Self::new)
    }

    pub fn eigen(&self) -> &EigenSequence {
        &self.eigen
    }
}

/// Facts about a diagonal product that a finite truncation cannot show.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DomainWarning {
    /// Both tails are geometric and `|ratio_φ · ratio_ψ| >= 1`: the full
    /// product `{φ_n ψ_n}` is not in `l²`, so the input lies outside the
    /// domain of `D̃_φ`.
    UnboundedTailProduct { modulus: f64 },
    /// The multiplier had fewer entries than the sequence and no known tail;
    /// the missing entries were taken as zero.
    PaddedMultiplier { known: usize, needed: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalApplication {
    pub sequence: L2Sequence,
    pub warnings: Vec<DomainWarning>,
}

/// Entrywise product. The result keeps the length of `seq`.
pub fn diagonal_apply(op: &DiagonalOperator, seq: &L2Sequence) -> DiagonalApplication {
    let mut warnings = Vec::new();
    let needed = seq.len();
    if needed > op.eigen.len() && op.eigen.tail().is_none() {
        warnings.push(DomainWarning::PaddedMultiplier {
            known: op.eigen.len(),
            needed,
        });
    }
    let entries = seq
        .entries()
        .iter()
        .enumerate()
        .map(|(n, psi)| op.eigen.value(n).unwrap_or(Complex64::new(0.0, 0.0)) * psi)
        .collect();
    let mut sequence = L2Sequence::new(entries);
    if let (Some(Tail::Geometric { ratio: a }), Some(Tail::Geometric { ratio: b })) =
        (op.eigen.tail(), seq.tail())
    {
        let ratio = a * b;
        if ratio.norm() >= 1.0 {
            warnings.push(DomainWarning::UnboundedTailProduct {
                modulus: ratio.norm(),
            });
        }
        sequence = sequence.with_tail(Tail::Geometric { ratio });
    }
    DiagonalApplication { sequence, warnings }
}

/// The extension `T̃_φ = U⁻¹ D̃_φ U` applied to a polynomial.
pub fn extension_apply(sym: &RadialSymbol, poly: &FockPolynomial, spec: &QuadratureSpec) -> Result<FockPolynomial> {
    let op = DiagonalOperator::from_symbol(sym, poly.degree(), spec)?;
    let image = diagonal_apply(&op, &spaces::to_sequence(poly));
    Ok(spaces::from_sequence(&image.sequence))
}

/// `⟨m|A_φ|n⟩ = ∫ φ(|w|) (w̄^m/√m!) (w^n/√n!) dμ(w)` by polar quadrature.
///
/// The radial factor `φ(√t) t^{(m+n)/2} / √(m! n!)` and the weight are
/// combined in log space; the angular factor `e^{i(n-m)θ}` is summed on the
/// trapezoid nodes.
pub fn anti_wick_matrix_element(
    sym: &RadialSymbol,
    m: usize,
    n: usize,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    spectra::ensure_integrable(sym)?;
    let angular = angular_nodes(m.max(n));
    let ln_norm = 0.5 * (spectra::ln_factorial(m) + spectra::ln_factorial(n));
    let half_power = 0.5 * (m + n) as f64;
    let angular_sum: Complex64 = (0..angular)
        .map(|j| {
            let p = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / angular as f64);
            p.conj().powu(m as u32) * p.powu(n as u32)
        })
        .sum::<Complex64>()
        / angular as f64;
    spaces::converged(spec, |radial| {
        let rule = quadrature::rule(radial);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut mass = 0.0;
        for (&t, &lw) in rule.nodes().iter().zip(rule.ln_weights()) {
            let term = sym.eval_scaled(t, lw + half_power * t.ln() - ln_norm)?;
            acc += term * angular_sum;
            mass += term.norm();
        }
        Ok((acc, mass))
    })
}

/// Whether `φψ ∈ L²(ℂ, dμ)`.
///
/// For radial `φ` the angular integral separates the basis terms:
/// `‖φψ‖² = Σ_n |c_n|² (1/n!) ∫ |φ(√t)|² t^n e^{-t} dt`. Each term is
/// finite iff the growth of `|φ|²` is below `e^{t}`, which is decided from the
/// exponent or the envelope, never from a quadrature.
pub fn in_natural_domain(sym: &RadialSymbol, poly: &FockPolynomial) -> Decision {
    if poly.coeffs().iter().all(|c| *c == Complex64::new(0.0, 0.0)) {
        return Decision::Yes;
    }
    match sym {
        RadialSymbol::Gaussian(g) => {
            // |φ|² e^{-t} = |c|² e^{-(2 Re(1-σ) - 1) t}.
            Decision::from_bool(g.amplitude() == Complex64::new(0.0, 0.0) || g.rate().re > 0.5)
        }
        RadialSymbol::Polynomial(_) => Decision::Yes,
        RadialSymbol::Enveloped(e) => {
            if e.envelope_delta() < 0.5 {
                Decision::Yes
            } else {
                Decision::Undecidable
            }
        }
    }
}

/// `T_φ ψ = P(φψ)`, coefficient by coefficient:
/// `(T_φ ψ)_k = Σ_m ⟨k|A_φ|m⟩ c_m` with every matrix element obtained by
/// quadrature, including the off-diagonal ones and [`LEAKAGE_ROWS`] rows
/// above the degree of `ψ`.
pub fn toeplitz_apply(sym: &RadialSymbol, poly: &FockPolynomial, spec: &QuadratureSpec) -> Result<FockPolynomial> {
    match in_natural_domain(sym, poly) {
        Decision::Yes => {}
        Decision::No => {
            return Err(Error::DomainViolation(
                "phi * psi is not square integrable against dmu".into(),
            ))
        }
        Decision::Undecidable => {
            return Err(Error::DomainViolation(
                "natural-domain membership cannot be decided from the envelope".into(),
            ))
        }
    }
    let rows = poly.degree() + 1 + LEAKAGE_ROWS;
    let mut out = vec![Complex64::new(0.0, 0.0); rows];
    for (m, c) in poly.coeffs().iter().enumerate() {
        if *c == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (k, slot) in out.iter_mut().enumerate() {
            *slot += anti_wick_matrix_element(sym, k, m, spec)? * c;
        }
    }
    Ok(FockPolynomial::new(out))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Equivalent,
    NotEquivalent { reason: String },
    Undecidable { reason: String },
}

/// Outcome of comparing `T_φ` with `U⁻¹ D̃_φ U` on `u_0 … u_{n_max}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub symbol_in_p: Decision,
    pub max_tested_n: usize,
    /// `‖T_φ u_n - φ_n u_n‖` for each tested `n`.
    pub per_n_residual: Vec<f64>,
    pub tolerance: f64,
    pub verdict: Verdict,
    /// Whether the extension `T̃_φ` is defined (the symbol is in `L¹∞`).
    pub extension_defined: Decision,
    pub notes: Vec<String>,
}

pub fn equivalence_report(
    sym: &RadialSymbol,
    n_max: usize,
    tol: f64,
    spec: &QuadratureSpec,
) -> EquivalenceReport {
    let class = classify(sym, 2 * n_max as u32 + 1);
    let mut report = EquivalenceReport {
        symbol_in_p: class.in_p,
        max_tested_n: n_max,
        per_n_residual: Vec::new(),
        tolerance: tol,
        verdict: Verdict::Equivalent,
        extension_defined: class.in_l1_inf,
        notes: Vec::new(),
    };
    match class.in_p {
        Decision::Yes => {
            report.notes.push("T_phi = U^-1 D_phi U is expected on the whole polynomial span".into());
            report.verdict = residual_verdict(sym, n_max, tol, spec, &mut report.per_n_residual);
        }
        Decision::No => {
            let outside = (0..=n_max.max(0))
                .find(|&m| in_natural_domain(sym, &FockPolynomial::basis(m)) == Decision::No);
            let reason = match outside {
                Some(m) => format!("u_{m} outside natural domain of T_phi"),
                None => format!("symbol outside P, although u_0..u_{n_max} lie in the natural domain"),
            };
            report.verdict = Verdict::NotEquivalent { reason };
            report.notes.push(match class.in_l1_inf {
                Decision::Yes => {
                    "only the extension T~_phi = U^-1 D~_phi U is defined on the basis polynomials".into()
                }
                _ => "the symbol is not in L1_inf: neither T_phi nor D~_phi is defined on u_n".into(),
            });
        }
        Decision::Undecidable => {
            report.verdict = Verdict::Undecidable {
                reason: "membership in P cannot be decided from the declared envelope".into(),
            };
        }
    }
    report
}

fn residual_verdict(
    sym: &RadialSymbol,
    n_max: usize,
    tol: f64,
    spec: &QuadratureSpec,
    residuals: &mut Vec<f64>,
) -> Verdict {
    let eigen = match spectra::eigen_sequence_with(sym, n_max, spec) {
        Ok(e) => e,
        Err(e) => {
            return Verdict::Undecidable {
                reason: format!("eigenvalues unavailable: {e}"),
            }
        }
    };
    for n in 0..=n_max {
        let basis = FockPolynomial::basis(n);
        let image = match toeplitz_apply(sym, &basis, spec) {
            Ok(p) => p,
            Err(e) => {
                return Verdict::Undecidable {
                    reason: format!("T_phi u_{n} could not be computed: {e}"),
                }
            }
        };
        residuals.push(image.distance(&basis.scale(eigen.values()[n])));
    }
    match residuals.iter().enumerate().find(|(_, r)| !(**r < tol)) {
        None => Verdict::Equivalent,
        Some((n, r)) => Verdict::NotEquivalent {
            reason: format!("residual {r:e} at u_{n} exceeds tolerance {tol:e}"),
        },
    }
}

impl EquivalenceReport {
    /// Plain-text rendering for terminals.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("symbol in P:        {}\n", self.symbol_in_p));
        out.push_str(&format!("extension defined:  {}\n", self.extension_defined));
        out.push_str(&format!("tested n:           0..={}\n", self.max_tested_n));
        for (n, r) in self.per_n_residual.iter().enumerate() {
            out.push_str(&format!("  residual u_{n:<3} {r:.3e}\n"));
        }
        out.push_str(&match &self.verdict {
            Verdict::Equivalent => format!("verdict:            equivalent (tol {:e})\n", self.tolerance),
            Verdict::NotEquivalent { reason } => format!("verdict:            not equivalent: {reason}\n"),
            Verdict::Undecidable { reason } => format!("verdict:            undecidable: {reason}\n"),
        });
        for note in &self.notes {
            out.push_str(&format!("note: {note}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::{GaussianRadialSymbol, PolynomialRadialSymbol};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn identity_multiplier_leaves_sequences_alone() {
        let op = DiagonalOperator::from_symbol(&RadialSymbol::gamma(c(1.0, 0.0)), 3, &spec()).unwrap();
        let seq = L2Sequence::new(vec![c(1.0, 2.0), c(-3.0, 0.5), c(0.0, 1.0)]);
        assert_eq!(diagonal_apply(&op, &seq).sequence, seq);
    }

    #[test]
    fn gamma_two_halves_each_entry() {
        let op = DiagonalOperator::from_symbol(&RadialSymbol::gamma(c(2.0, 0.0)), 3, &spec()).unwrap();
        let out = diagonal_apply(&op, &L2Sequence::new(vec![c(1.0, 0.0); 4]));
        assert_eq!(
            out.sequence.entries(),
            &[c(1.0, 0.0), c(0.5, 0.0), c(0.25, 0.0), c(0.125, 0.0)]
        );
        assert!(out.warnings.is_empty());
    }

    #[test]
    fn thermal_state_on_number_states() {
        let rho: RadialSymbol = GaussianRadialSymbol::maxwell_boltzmann(1.0).into();
        let op = DiagonalOperator::from_symbol(&rho, 6, &spec()).unwrap();
        for n in 0..=6 {
            let out = diagonal_apply(&op, &spaces::to_sequence(&FockPolynomial::basis(n)));
            let expected = (-0.5f64).exp() * (-(n as f64)).exp();
            assert!((out.sequence.entries()[n] - c(expected, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn unbounded_tail_product_is_flagged() {
        let op = DiagonalOperator::from_symbol(&RadialSymbol::gamma(c(0.7, 0.0)), 3, &spec()).unwrap();
        let seq = L2Sequence::new(vec![c(1.0, 0.0); 4]).with_tail(Tail::Geometric { ratio: c(0.9, 0.0) });
        let out = diagonal_apply(&op, &seq);
        assert!(matches!(out.warnings[..], [DomainWarning::UnboundedTailProduct { .. }]));
        let seq = L2Sequence::new(vec![c(1.0, 0.0); 4]).with_tail(Tail::Geometric { ratio: c(0.5, 0.0) });
        assert!(diagonal_apply(&op, &seq).warnings.is_empty());
    }

    #[test]
    fn short_multiplier_extends_through_tail_or_warns() {
        let op = DiagonalOperator::from_symbol(&RadialSymbol::gamma(c(2.0, 0.0)), 1, &spec()).unwrap();
        let out = diagonal_apply(&op, &L2Sequence::new(vec![c(1.0, 0.0); 4]));
        assert_eq!(out.sequence.entries()[3], c(0.125, 0.0));
        let op = DiagonalOperator::from_symbol(&PolynomialRadialSymbol::r_squared().into(), 1, &spec()).unwrap();
        let out = diagonal_apply(&op, &L2Sequence::new(vec![c(1.0, 0.0); 4]));
        assert_eq!(out.warnings, vec![DomainWarning::PaddedMultiplier { known: 2, needed: 4 }]);
    }

    #[test]
    fn off_diagonal_vanishes() {
        let s = RadialSymbol::gamma(c(2.0, 0.0));
        assert!(anti_wick_matrix_element(&s, 0, 1, &spec()).unwrap().norm() < 1e-9);
        let p: RadialSymbol = PolynomialRadialSymbol::r_squared().into();
        assert!(anti_wick_matrix_element(&p, 3, 1, &spec()).unwrap().norm() < 1e-9);
    }

    #[test]
    fn diagonal_element_of_gamma_two() {
        let v = anti_wick_matrix_element(&RadialSymbol::gamma(c(2.0, 0.0)), 2, 2, &spec()).unwrap();
        assert!((v - c(0.25, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn natural_domain_decisions() {
        let ex: RadialSymbol = GaussianRadialSymbol::unimodular_outside_p().into();
        assert_eq!(in_natural_domain(&ex, &FockPolynomial::basis(0)), Decision::No);
        let good = RadialSymbol::gamma(c(0.8, -0.9));
        let poly = FockPolynomial::new(vec![c(1.0, 0.0), c(0.0, 2.0), c(-1.0, 1.0)]);
        assert_eq!(in_natural_domain(&good, &poly), Decision::Yes);
        // |k| > 1 and 0 < Re k < 1/2: only the zero polynomial survives.
        let trivial = RadialSymbol::gamma(c(0.3, 1.2));
        assert_eq!(in_natural_domain(&trivial, &poly), Decision::No);
        assert_eq!(in_natural_domain(&trivial, &FockPolynomial::new(vec![c(0.0, 0.0); 3])), Decision::Yes);
    }

    #[test]
    fn toeplitz_identity_and_gamma_two() {
        let psi = FockPolynomial::new(vec![c(1.0, 0.0), c(0.5, -0.5), c(0.0, 2.0)]);
        let same = toeplitz_apply(&RadialSymbol::gamma(c(1.0, 0.0)), &psi, &spec()).unwrap();
        assert!(same.distance(&psi) < 1e-10);

        let out = toeplitz_apply(&RadialSymbol::gamma(c(2.0, 0.0)), &FockPolynomial::basis(3), &spec()).unwrap();
        assert!(out.distance(&FockPolynomial::basis(3).scale(c(0.125, 0.0))) < 1e-8);
        assert_eq!(out.degree(), 3 + LEAKAGE_ROWS);
    }

    #[test]
    fn toeplitz_rejects_out_of_domain_input() {
        let ex: RadialSymbol = GaussianRadialSymbol::unimodular_outside_p().into();
        let err = toeplitz_apply(&ex, &FockPolynomial::basis(0), &spec()).unwrap_err();
        assert!(matches!(err, Error::DomainViolation(_)));
        // The extension is still defined there.
        let ext = extension_apply(&ex, &FockPolynomial::basis(0), &spec()).unwrap();
        assert!((ext.coeffs()[0].norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn thermal_toeplitz_on_number_states() {
        let rho: RadialSymbol = GaussianRadialSymbol::maxwell_boltzmann(1.0).into();
        for n in 0..=5 {
            let out = toeplitz_apply(&rho, &FockPolynomial::basis(n), &spec()).unwrap();
            let expected = (-0.5f64).exp() * (-(n as f64)).exp();
            assert!(out.distance(&FockPolynomial::basis(n).scale(c(expected, 0.0))) < 1e-8);
        }
    }

    #[test]
    fn equivalence_verdicts() {
        let r = equivalence_report(&RadialSymbol::gamma(c(2.0, 0.0)), 6, DEFAULT_TOLERANCE, &spec());
        assert_eq!(r.verdict, Verdict::Equivalent);
        assert_eq!(r.per_n_residual.len(), 7);

        let ex: RadialSymbol = GaussianRadialSymbol::unimodular_outside_p().into();
        let r = equivalence_report(&ex, 6, DEFAULT_TOLERANCE, &spec());
        match &r.verdict {
            Verdict::NotEquivalent { reason } => assert!(reason.contains("u_0")),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(r.extension_defined, Decision::Yes);
        assert!(r.render_text().contains("not equivalent"));

        let r = equivalence_report(&RadialSymbol::gamma(c(0.8, -0.9)), 6, DEFAULT_TOLERANCE, &spec());
        assert_eq!(r.verdict, Verdict::Equivalent);
    }
}
