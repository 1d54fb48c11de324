//! Truncated Segal-Bargmann space `F²(ℂ, dμ)`, `dμ = π⁻¹ e^{-|z|²} d²z`, and
//! its image in `l²`.
//!
//! Elements are stored in the orthonormal basis `u_n(z) = z^n / √n!`, which
//! is exactly the `l²` image under `U`. Integrals over the plane use polar
//! coordinates: Gauss-Laguerre in `t = r²` times a uniform trapezoid in the
//! angle, so `∫ f dμ = (2π)⁻¹ ∫_0^{2π} ∫_0^∞ f(√t e^{iθ}) e^{-t} dt dθ`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::complex_json;
use crate::error::{Error, Result};
use crate::quadrature::{self, QuadratureSpec};
use crate::spectra::Tail;

/// Radius of the disk on which [`reproduce_at`] is validated.
pub const REPRODUCING_DISK: f64 = 2.0;

/// Angular trapezoid nodes used for integrands of degree `degree` in `w` and
/// `w̄`. The floor of 64 keeps aliasing of `e^{z w̄}` negligible on the
/// reproducing disk for low-degree inputs.
pub fn angular_nodes(degree: usize) -> usize {
    (4 * (degree + 1)).max(64)
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// `u_0(z), …, u_n(z)` by `u_k = u_{k-1} z / √k`.
pub(crate) fn basis_values(z: Complex64, n: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut u = Complex64::new(1.0, 0.0);
    out.push(u);
    for k in 1..=n {
        u = u * z / (k as f64).sqrt();
        out.push(u);
    }
    out
}

/// `ψ(z) = Σ c_n u_n(z)`, truncated at `N = coeffs.len() - 1`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FockPolynomial {
    coeffs: Vec<Complex64>,
}

impl FockPolynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        FockPolynomial { coeffs }
    }

    /// `u_n`.
    pub fn basis(n: usize) -> Self {
        let mut coeffs = vec![zero(); n + 1];
        coeffs[n] = Complex64::new(1.0, 0.0);
        FockPolynomial { coeffs }
    }

    /// From Maclaurin coefficients `a_n` of `Σ a_n z^n`: `c_n = a_n √n!`.
    pub fn from_monomials(monomials: &[Complex64]) -> Self {
        let mut sqrt_fact = 1.0;
        let coeffs = monomials
            .iter()
            .enumerate()
            .map(|(n, a)| {
                if n > 0 {
                    sqrt_fact *= (n as f64).sqrt();
                }
                a * sqrt_fact
            })
            .collect();
        FockPolynomial { coeffs }
    }

    /// Truncation of the normalized coherent state
    /// `u_w(z) = e^{-|w|²/2} e^{wz}`: `c_n = e^{-|w|²/2} w^n / √n!`.
    pub fn coherent(w: Complex64, n_max: usize) -> Self {
        let norm = (-0.5 * w.norm_sqr()).exp();
        FockPolynomial {
            coeffs: basis_values(w, n_max).into_iter().map(|u| u * norm).collect(),
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Truncation degree `N`.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Maclaurin coefficients `c_n / √n!`.
    pub fn monomial_coefficients(&self) -> Vec<Complex64> {
        let mut sqrt_fact = 1.0;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if n > 0 {
                    sqrt_fact *= (n as f64).sqrt();
                }
                c / sqrt_fact
            })
            .collect()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        basis_values(z, self.degree())
            .iter()
            .zip(&self.coeffs)
            .map(|(u, c)| u * c)
            .sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn scale(&self, alpha: Complex64) -> Self {
        FockPolynomial::new(self.coeffs.iter().map(|c| c * alpha).collect())
    }

    /// Sum, zero-padding the shorter truncation.
    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let at = |v: &[Complex64], n: usize| v.get(n).copied().unwrap_or_else(zero);
        FockPolynomial::new((0..len).map(|n| at(&self.coeffs, n) + at(&other.coeffs, n)).collect())
    }

    /// `‖self - other‖` in `F²`.
    pub fn distance(&self, other: &Self) -> f64 {
        self.add(&other.scale(Complex64::new(-1.0, 0.0))).norm_sqr().sqrt()
    }
}

impl Serialize for FockPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        complex_json::vec::serialize(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for FockPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        complex_json::vec::deserialize(d).map(FockPolynomial::new)
    }
}

/// `(ψ_0, …, ψ_N)` in `l²`, with optional knowledge of the tail.
///
/// JSON carries the entries only.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct L2Sequence {
    entries: Vec<Complex64>,
    tail: Option<Tail>,
}

impl L2Sequence {
    pub fn new(entries: Vec<Complex64>) -> Self {
        L2Sequence { entries, tail: None }
    }

    pub fn with_tail(mut self, tail: Tail) -> Self {
        self.tail = Some(tail);
        self
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn tail(&self) -> Option<Tail> {
        self.tail
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `Σ conj(self_n) other_n`, zero-padding the shorter sequence.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// CSV with header `n,re,im,modulus`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,re,im,modulus\n");
        for (n, v) in self.entries.iter().enumerate() {
            out.push_str(&format!("{n},{},{},{}\n", v.re, v.im, v.norm()));
        }
        out
    }
}

impl Serialize for L2Sequence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        complex_json::vec::serialize(&self.entries, s)
    }
}

impl<'de> Deserialize<'de> for L2Sequence {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        complex_json::vec::deserialize(d).map(L2Sequence::new)
    }
}

/// `U ψ = {ψ^{(n)}(0) / √n!}`; in the `u`-basis this is the coefficient list.
pub fn to_sequence(poly: &FockPolynomial) -> L2Sequence {
    L2Sequence::new(poly.coeffs.clone())
}

/// `U⁻¹ {ψ_n} = Σ ψ_n u_n`.
pub fn from_sequence(seq: &L2Sequence) -> FockPolynomial {
    FockPolynomial::new(seq.entries.clone())
}

/// `(f, g) = ∫ conj(f) g dμ = Σ conj(f_n) g_n`.
pub fn fock_inner(f: &FockPolynomial, g: &FockPolynomial) -> Complex64 {
    f.coeffs
        .iter()
        .zip(&g.coeffs)
        .map(|(a, b)| a.conj() * b)
        .sum()
}

/// `⟨z̄|w⟩ = e^{-|z|²/2} e^{-|w|²/2} e^{zw}`.
pub fn coherent_overlap(z: Complex64, w: Complex64) -> Complex64 {
    (z * w - 0.5 * (z.norm_sqr() + w.norm_sqr())).exp()
}

/// `∫_ℂ f dμ` on `radial_nodes × angular_nodes` polar nodes, together with
/// the absolute mass `Σ |weight · f|`. Nodes whose weight underflows are
/// skipped.
pub fn polar_integrate<F>(f: F, radial_nodes: usize, angular_nodes: usize) -> (Complex64, f64)
where
    F: Fn(Complex64) -> Complex64,
{
    let rule = quadrature::rule(radial_nodes);
    let phases: Vec<Complex64> = (0..angular_nodes)
        .map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / angular_nodes as f64))
        .collect();
    let mut acc = zero();
    let mut mass = 0.0;
    for (&t, &lw) in rule.nodes().iter().zip(rule.ln_weights()) {
        let w = lw.exp() / angular_nodes as f64;
        if w == 0.0 {
            continue;
        }
        let r = t.sqrt();
        for p in &phases {
            let term = f(p * r) * w;
            acc += term;
            mass += term.norm();
        }
    }
    (acc, mass)
}

/// Runs `integrate` with `Q` and `2Q` radial nodes and returns the finer
/// value when the two agree.
pub(crate) fn converged<F>(spec: &QuadratureSpec, integrate: F) -> Result<Complex64>
where
    F: Fn(usize) -> Result<(Complex64, f64)>,
{
    let (coarse, coarse_mass) = integrate(spec.node_count)?;
    let (fine, fine_mass) = integrate(2 * spec.node_count)?;
    let difference = (coarse - fine).norm();
    if !spec.accepts(difference, fine.norm(), coarse_mass.max(fine_mass)) {
        return Err(Error::NonConvergent {
            nodes: spec.node_count,
            doubled: 2 * spec.node_count,
            difference,
            tolerance: spec.tolerance,
        });
    }
    Ok(fine)
}

/// `(K_z̄, ψ) = ∫ e^{z w̄} ψ(w) dμ(w)` by polar quadrature; equals `ψ(z)`.
pub fn reproduce_at(poly: &FockPolynomial, z: Complex64, spec: &QuadratureSpec) -> Result<Complex64> {
    if !(z.norm() <= REPRODUCING_DISK) {
        return Err(Error::InvalidInput(format!(
            "|z| = {} lies outside the validated disk |z| <= {REPRODUCING_DISK}",
            z.norm()
        )));
    }
    let angular = angular_nodes(poly.degree());
    converged(spec, |radial| {
        Ok(polar_integrate(|w| (z * w.conj()).exp() * poly.eval(w), radial, angular))
    })
}

/// `M_{mn} = π⁻¹ ∫ ⟨m|z⟩⟨z|n⟩ d²z` for `m, n <= n_max`; the identity when
/// the coherent states resolve the identity.
pub fn resolution_of_identity(n_max: usize, spec: &QuadratureSpec) -> Result<Vec<Vec<Complex64>>> {
    let angular = angular_nodes(2 * n_max);
    // ⟨n|z⟩ = e^{-|z|²/2} u_n(z); the Gaussian factors combine into dμ.
    (0..=n_max)
        .map(|m| {
            (0..=n_max)
                .map(|n| {
                    converged(spec, |radial| {
                        Ok(polar_integrate(
                            |z| {
                                let u = basis_values(z, m.max(n));
                                u[m] * u[n].conj()
                            },
                            radial,
                            angular,
                        ))
                    })
                })
                .collect()
        })
        .collect()
}
