//! Command-line literals: complex numbers, symbols and polynomials.

use std::path::Path;

use bargmann_toeplitz::error::{Error, Result};
use bargmann_toeplitz::spaces::FockPolynomial;
use bargmann_toeplitz::symbols::{GaussianRadialSymbol, PolynomialRadialSymbol, RadialSymbol};
use num_complex::Complex64;

fn invalid(msg: String) -> Error {
    Error::InvalidInput(msg)
}

/// Parses `a`, `bi`, `a+bi`, `a-bi` (also `i`, `-i`), with no spaces.
pub fn complex(s: &str) -> Result<Complex64> {
    let bad = || invalid(format!("cannot parse complex literal {s:?}; expected a+bi"));
    let s = s.trim();
    if s.is_empty() || s.contains(char::is_whitespace) {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // The imaginary part starts at the last sign that is not an exponent sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&j| matches!(bytes[j], b'+' | b'-') && !matches!(bytes[j - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(j) => (&body[..j], &body[j..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().map_err(|_| bad())?,
    };
    let re = re.parse::<f64>().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

fn complex_list(s: &str) -> Result<Vec<Complex64>> {
    s.split(',').map(complex).collect()
}

/// A symbol from a shorthand, inline JSON, or a path to a JSON file.
///
/// Shorthands: `gamma:<k>`, `gaussian:<c>,<sigma>`, `maxwell:<beta>`,
/// `poly:<p0>,<p1>,...` (coefficients of `r^0, r^2, ...`) and `unimodular`.
pub fn symbol(spec: &str) -> Result<RadialSymbol> {
    let spec = spec.trim();
    if spec.starts_with('{') {
        return RadialSymbol::from_json(spec);
    }
    if spec == "unimodular" {
        return Ok(GaussianRadialSymbol::unimodular_outside_p().into());
    }
    if let Some((kind, args)) = spec.split_once(':') {
        match kind {
            "gamma" => return Ok(RadialSymbol::gamma(complex(args)?)),
            "gaussian" => {
                return match complex_list(args)?[..] {
                    [c, sigma] => Ok(GaussianRadialSymbol::new(c, sigma).into()),
                    _ => Err(invalid(format!("gaussian needs two values, got {args:?}"))),
                }
            }
            "maxwell" => {
                let beta: f64 = args
                    .parse()
                    .map_err(|_| invalid(format!("cannot parse inverse temperature {args:?}")))?;
                if !(beta.is_finite() && beta > 0.0) {
                    return Err(invalid(format!("inverse temperature must be positive, got {beta}")));
                }
                return Ok(GaussianRadialSymbol::maxwell_boltzmann(beta).into());
            }
            "poly" => return Ok(PolynomialRadialSymbol::new(complex_list(args)?).into()),
            _ => {}
        }
    }
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| invalid(format!("reading {spec}: {e}")))?;
        return RadialSymbol::from_json(&text);
    }
    Err(invalid(format!(
        "unrecognized symbol {spec:?}; use gamma:K, gaussian:C,SIGMA, maxwell:BETA, poly:P0,P1,.., unimodular, inline JSON or a file path"
    )))
}

/// A polynomial as `u_n` coefficients: `basis:N`, a comma list, or a JSON array.
pub fn polynomial(spec: &str) -> Result<FockPolynomial> {
    let spec = spec.trim();
    if let Some(n) = spec.strip_prefix("basis:") {
        let n: usize = n.parse().map_err(|_| invalid(format!("cannot parse basis index {n:?}")))?;
        return Ok(FockPolynomial::basis(n));
    }
    if spec.starts_with('[') {
        return serde_json::from_str(spec).map_err(|e| invalid(format!("polynomial JSON: {e}")));
    }
    let coeffs = complex_list(spec)?;
    Ok(FockPolynomial::new(coeffs))
}
