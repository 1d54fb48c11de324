//! Eigenvalue sequences `φ_n = (2/n!) ∫_0^∞ φ(r) r^{2n+1} e^{-r²} dr` of
//! radial symbols.
//!
//! With `t = r²` the integral becomes `(1/n!) ∫_0^∞ φ(√t) t^n e^{-t} dt`.
//! Gaussian and polynomial symbols have closed forms; the Gauss-Laguerre
//! route in [`quadrature_eigen`] is computed independently of them and is
//! what black-box symbols fall back to.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complex_json;
use crate::error::{Error, Result};
use crate::quadrature;
use crate::symbols::{GaussianRadialSymbol, PolynomialRadialSymbol, RadialSymbol};

pub use crate::quadrature::{laguerre_nodes, LaguerreRule, QuadratureKind, QuadratureSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Quadrature,
}

/// Known behaviour of the sequence beyond the stored entries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Tail {
    /// `values[n + 1] = ratio · values[n]` for every `n`.
    Geometric {
        #[serde(with = "complex_json")]
        ratio: Complex64,
    },
}

impl Tail {
    pub fn ratio(&self) -> Complex64 {
        match self {
            Tail::Geometric { ratio } => *ratio,
        }
    }
}

/// `φ_0, …, φ_N` together with how they were obtained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenSequence {
    #[serde(with = "complex_json::vec")]
    values: Vec<Complex64>,
    method: Method,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tail: Option<Tail>,
}

impl EigenSequence {
    pub fn new(values: Vec<Complex64>, method: Method, tail: Option<Tail>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidInput("an eigen sequence needs at least one value".into()));
        }
        Ok(EigenSequence { values, method, tail })
    }

    /// Geometric sequence `first · ratio^n`, `n = 0..len`, built by repeated
    /// multiplication.
    pub fn geometric(first: Complex64, ratio: Complex64, len: usize, method: Method) -> Result<Self> {
        let values = std::iter::successors(Some(first), |v| Some(v * ratio))
            .take(len)
            .collect();
        Self::new(values, method, Some(Tail::Geometric { ratio }))
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn tail(&self) -> Option<Tail> {
        self.tail
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `φ_n`, extrapolated through a geometric tail past the stored range.
    pub fn value(&self, n: usize) -> Option<Complex64> {
        if let Some(v) = self.values.get(n) {
            return Some(*v);
        }
        let Tail::Geometric { ratio } = self.tail?;
        let last = self.values.len() - 1;
        let mut v = self.values[last];
        for _ in last..n {
            v *= ratio;
        }
        Some(v)
    }

    /// Copy with exactly `len` entries, extended through the tail when one is
    /// known. Returns `None` when extension is needed but no tail is known.
    pub fn resized(&self, len: usize) -> Option<Self> {
        let values = (0..len.max(1)).map(|n| self.value(n)).collect::<Option<Vec<_>>>()?;
        Some(EigenSequence {
            values,
            method: self.method,
            tail: self.tail,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("eigen sequences always serialize")
    }

    /// CSV with header `n,re,im,modulus`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["n", "re", "im", "modulus"]).expect("in-memory write");
        for (n, v) in self.values.iter().enumerate() {
            w.write_record([
                n.to_string(),
                v.re.to_string(),
                v.im.to_string(),
                v.norm().to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ASCII output")
    }
}

/// `φ_0 ..= φ_{n_max}`: closed form for Gaussian and polynomial symbols,
/// quadrature with the default [`QuadratureSpec`] for enveloped ones.
pub fn eigen_sequence(sym: &RadialSymbol, n_max: usize) -> Result<EigenSequence> {
    eigen_sequence_with(sym, n_max, &QuadratureSpec::default())
}

/// As [`eigen_sequence`], with the quadrature used for enveloped symbols.
pub fn eigen_sequence_with(
    sym: &RadialSymbol,
    n_max: usize,
    spec: &QuadratureSpec,
) -> Result<EigenSequence> {
    match sym {
        RadialSymbol::Gaussian(g) => gaussian_sequence(g, n_max),
        RadialSymbol::Polynomial(p) => Ok(polynomial_sequence(p, n_max)),
        RadialSymbol::Enveloped(_) => {
            let values = (0..=n_max)
                .map(|n| quadrature_eigen(sym, n, spec))
                .collect::<Result<Vec<_>>>()?;
            EigenSequence::new(values, Method::Quadrature, None)
        }
    }
}

/// `c e^{σ r²}` gives `φ_n = c (1 - σ)^{-(n+1)}`; for `γ_k` this is `k^{-n}`.
fn gaussian_sequence(g: &GaussianRadialSymbol, n_max: usize) -> Result<EigenSequence> {
    let rate = g.rate();
    if rate.re <= 0.0 {
        return Err(Error::DivergentMoment(format!(
            "Re(1 - sigma) = {} <= 0, the moments of c e^(sigma r^2) diverge",
            rate.re
        )));
    }
    let ratio = Complex64::new(1.0, 0.0) / rate;
    let first = if g.as_gamma().is_some() && g.amplitude() == rate {
        Complex64::new(1.0, 0.0)
    } else {
        g.amplitude() * ratio
    };
    EigenSequence::geometric(first, ratio, n_max + 1, Method::ClosedForm)
}

/// `Σ_m p_m r^{2m}` gives `φ_n = Σ_m p_m (n+m)!/n!`.
fn polynomial_sequence(p: &PolynomialRadialSymbol, n_max: usize) -> EigenSequence {
    let values = (0..=n_max)
        .map(|n| {
            let mut rising = 1.0;
            let mut acc = Complex64::new(0.0, 0.0);
            for (m, coeff) in p.coefficients().iter().enumerate() {
                if m > 0 {
                    rising *= (n + m) as f64;
                }
                acc += coeff * rising;
            }
            acc
        })
        .collect();
    EigenSequence {
        values,
        method: Method::ClosedForm,
        tail: None,
    }
}

/// Rejects symbols whose moments are not known to be finite. Quadrature of a
/// divergent integral still returns a number, so this check is analytic.
pub(crate) fn ensure_integrable(sym: &RadialSymbol) -> Result<()> {
    match sym {
        RadialSymbol::Gaussian(g) if g.amplitude() != Complex64::new(0.0, 0.0) && g.rate().re <= 0.0 => {
            Err(Error::DivergentMoment(format!(
                "Re(1 - sigma) = {} <= 0, the moments of c e^(sigma r^2) diverge",
                g.rate().re
            )))
        }
        RadialSymbol::Enveloped(e) if e.envelope_delta() >= 1.0 => Err(Error::DivergentMoment(format!(
            "envelope delta = {} >= 1 does not bound the moments",
            e.envelope_delta()
        ))),
        _ => Ok(()),
    }
}

pub(crate) fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|j| (j as f64).ln()).sum()
}

/// `(1/n!) Σ_i w_i φ(√t_i) t_i^n` for an `nodes`-point rule, with the
/// `t^n / n!` factor and the weight combined in log space. Also returns the
/// absolute mass `Σ_i |term_i|`.
fn laguerre_moment(sym: &RadialSymbol, n: usize, nodes: usize) -> Result<(Complex64, f64)> {
    let rule = quadrature::rule(nodes);
    let ln_fact = ln_factorial(n);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut mass = 0.0;
    for (&t, &lw) in rule.nodes().iter().zip(rule.ln_weights()) {
        let term = sym.eval_scaled(t, lw + n as f64 * t.ln() - ln_fact)?;
        acc += term;
        mass += term.norm();
    }
    Ok((acc, mass))
}

/// Gauss-Laguerre value of `φ_n`, accepted when the `Q`- and `2Q`-node rules
/// agree within `spec.tolerance`.
pub fn quadrature_eigen(sym: &RadialSymbol, n: usize, spec: &QuadratureSpec) -> Result<Complex64> {
    ensure_integrable(sym)?;
    let (coarse, coarse_mass) = laguerre_moment(sym, n, spec.node_count)?;
    let (fine, fine_mass) = laguerre_moment(sym, n, 2 * spec.node_count)?;
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
