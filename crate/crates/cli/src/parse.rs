//! Polynomial file parsing.
//!
//! Text format: one coefficient per line as "re im", index order
//! k = 0..n. Components are decimals or exact rationals "p/q"; blank
//! lines and lines starting with '#' are skipped. A JSON array of
//! [re, im] pairs (numbers or rational strings) is also accepted.
//! Rational inputs are preserved exactly.

use std::path::Path;

use num_complex::Complex64;
use num_rational::BigRational;
use serde_json::Value;

use smale_core::exact::{rational_to_f64, ExactPoly, ExtComplex, QuadExt};
use smale_core::poly::ComplexPolynomial;

#[derive(Debug)]
pub struct ParsedPoly {
    pub float: ComplexPolynomial,
    /// Present when every component was an exact rational.
    pub exact: Option<ExactPoly>,
}

enum Component {
    Exact(BigRational),
    Float(f64),
}

impl Component {
    fn to_f64(&self) -> f64 {
        match self {
            Component::Exact(r) => rational_to_f64(r),
            Component::Float(f) => *f,
        }
    }
}

fn parse_component(token: &str) -> Result<Component, String> {
    if let Some((num, den)) = token.split_once('/') {
        let n = num
            .trim()
            .parse::<i128>()
            .map_err(|_| format!("bad rational numerator '{num}'"))?;
        let d = den
            .trim()
            .parse::<i128>()
            .map_err(|_| format!("bad rational denominator '{den}'"))?;
        if d == 0 {
            return Err("zero denominator".to_string());
        }
        return Ok(Component::Exact(BigRational::new(n.into(), d.into())));
    }
    if let Ok(n) = token.parse::<i128>() {
        return Ok(Component::Exact(BigRational::from_integer(n.into())));
    }
    token
        .parse::<f64>()
        .map(Component::Float)
        .map_err(|_| format!("expected a number or p/q rational, found '{token}'"))
}

pub fn parse_polynomial_file(path: &Path) -> Result<ParsedPoly, String> {
    let content = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_polynomial_str(&content)
}

pub fn parse_polynomial_str(content: &str) -> Result<ParsedPoly, String> {
    let trimmed = content.trim_start();
    let pairs: Vec<(Component, Component)> = if trimmed.starts_with('[') {
        parse_json_form(trimmed)?
    } else {
        parse_text_form(content)?
    };
    if pairs.is_empty() {
        return Err("no coefficients found".to_string());
    }

    let float = ComplexPolynomial::new(
        pairs
            .iter()
            .map(|(re, im)| Complex64::new(re.to_f64(), im.to_f64()))
            .collect(),
    );
    let all_exact = pairs
        .iter()
        .all(|(re, im)| matches!(re, Component::Exact(_)) && matches!(im, Component::Exact(_)));
    let exact = all_exact.then(|| {
        ExactPoly::new(
            pairs
                .iter()
                .map(|(re, im)| {
                    let r = match re {
                        Component::Exact(r) => r.clone(),
                        Component::Float(_) => unreachable!(),
                    };
                    let i = match im {
                        Component::Exact(r) => r.clone(),
                        Component::Float(_) => unreachable!(),
                    };
                    ExtComplex::new(QuadExt::from_rational(r), QuadExt::from_rational(i))
                })
                .collect(),
        )
    });
    Ok(ParsedPoly { float, exact })
}

fn parse_text_form(content: &str) -> Result<Vec<(Component, Component)>, String> {
    let mut pairs = Vec::new();
    for (lineno, line) in content.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(format!(
                "line {}: expected 're im', found '{line}'",
                lineno + 1
            ));
        }
        let re = parse_component(tokens[0]).map_err(|e| format!("line {}: {e}", lineno + 1))?;
        let im = parse_component(tokens[1]).map_err(|e| format!("line {}: {e}", lineno + 1))?;
        pairs.push((re, im));
    }
    Ok(pairs)
}

fn parse_json_form(content: &str) -> Result<Vec<(Component, Component)>, String> {
    let value: Value =
        serde_json::from_str(content).map_err(|e| format!("invalid JSON polynomial: {e}"))?;
    let arr = value
        .as_array()
        .ok_or_else(|| "JSON polynomial must be an array of [re, im] pairs".to_string())?;
    let mut pairs = Vec::new();
    for (k, entry) in arr.iter().enumerate() {
        let pair = entry
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| format!("entry {k}: expected a [re, im] pair"))?;
        let mut comps = Vec::with_capacity(2);
        for part in pair {
            let comp = match part {
                Value::String(s) => parse_component(s).map_err(|e| format!("entry {k}: {e}"))?,
                Value::Number(n) => {
                    if let Some(i) = n.as_i64() {
                        Component::Exact(BigRational::from_integer(i.into()))
                    } else {
                        Component::Float(n.as_f64().ok_or_else(|| {
                            format!("entry {k}: number out of range")
                        })?)
                    }
                }
                _ => return Err(format!("entry {k}: expected number or rational string")),
            };
            comps.push(comp);
        }
        let im = comps.pop().expect("two components");
        let re = comps.pop().expect("two components");
        pairs.push((re, im));
    }
    Ok(pairs)
}

/// Writes an exact polynomial in the text input format, one "re im" pair
/// per line. Components of the form a + b√3 with b ≠ 0 are emitted as
/// decimals since the input grammar is rational-only.
pub fn exact_poly_to_text(p: &ExactPoly) -> String {
    let mut out = String::new();
    for c in p.coeffs() {
        let re = quadext_token(&c.re);
        let im = quadext_token(&c.im);
        out.push_str(&format!("{re} {im}\n"));
    }
    out
}

fn quadext_token(q: &QuadExt) -> String {
    if q.is_rational() {
        format!("{}/{}", q.a.numer(), q.a.denom())
    } else {
        format!("{:.17}", q.to_f64())
    }
}
