//! Polynomials over box domains and exact minimization of bivariate
//! quadratics over rectangles.
//!
//! Used for two jobs: carrying the substitution xₖ = 1 − 2wₖ that maps
//! [−1, 1] cosines onto [0, 1] box variables, and certifying that the
//! quadratic bracket factors appearing in the h-chain are nonnegative on
//! their whole domain by exact enumeration of corners, edge stationary
//! points, and the interior stationary point.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::{rat, rational_to_f64};
use crate::trig::{TrigError, TrigPoly};

pub const BOX_VARS: usize = 4;

/// Domain annotation for a [`BoxPoly`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum BoxDomain {
    /// wₖ ∈ [0, 1]
    Unit,
    /// xₖ ∈ [−1, 1]
    Symmetric,
}

impl BoxDomain {
    pub fn bounds(&self) -> (BigRational, BigRational) {
        match self {
            BoxDomain::Unit => (BigRational::zero(), BigRational::one()),
            BoxDomain::Symmetric => (-BigRational::one(), BigRational::one()),
        }
    }
}

/// Sparse polynomial in up to four box variables with exact rational
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxPoly {
    terms: BTreeMap<[u8; BOX_VARS], BigRational>,
    pub domain: BoxDomain,
}

fn add_term(terms: &mut BTreeMap<[u8; BOX_VARS], BigRational>, m: [u8; BOX_VARS], c: BigRational) {
    if c.is_zero() {
        return;
    }
    let entry = terms.entry(m).or_insert_with(BigRational::zero);
    *entry += c;
    if entry.is_zero() {
        terms.remove(&m);
    }
}

impl BoxPoly {
    pub fn zero(domain: BoxDomain) -> Self {
        BoxPoly { terms: BTreeMap::new(), domain }
    }

    pub fn constant(c: BigRational, domain: BoxDomain) -> Self {
        let mut terms = BTreeMap::new();
        add_term(&mut terms, [0; BOX_VARS], c);
        BoxPoly { terms, domain }
    }

    pub fn from_int(n: i64, domain: BoxDomain) -> Self {
        Self::constant(rat(n, 1), domain)
    }

    /// Variable wᵢ (1-based, 1..=4).
    pub fn var(i: usize, domain: BoxDomain) -> Result<Self, TrigError> {
        if !(1..=BOX_VARS).contains(&i) {
            return Err(TrigError::BadIndex(i));
        }
        let mut m = [0u8; BOX_VARS];
        m[i - 1] = 1;
        let mut terms = BTreeMap::new();
        add_term(&mut terms, m, BigRational::one());
        Ok(BoxPoly { terms, domain })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &[u8; BOX_VARS]) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8; BOX_VARS], &BigRational)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &BoxPoly) -> BoxPoly {
        debug_assert_eq!(self.domain, other.domain);
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, *m, c.clone());
        }
        BoxPoly { terms, domain: self.domain }
    }

    pub fn add_assign(&mut self, other: &BoxPoly) {
        debug_assert_eq!(self.domain, other.domain);
        for (m, c) in &other.terms {
            add_term(&mut self.terms, *m, c.clone());
        }
    }

    pub fn sub(&self, other: &BoxPoly) -> BoxPoly {
        self.add(&other.scale(&rat(-1, 1)))
    }

    pub fn scale(&self, c: &BigRational) -> BoxPoly {
        if c.is_zero() {
            return BoxPoly::zero(self.domain);
        }
        BoxPoly {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
            domain: self.domain,
        }
    }

    pub fn mul(&self, other: &BoxPoly) -> BoxPoly {
        debug_assert_eq!(self.domain, other.domain);
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut m = [0u8; BOX_VARS];
                for k in 0..BOX_VARS {
                    m[k] = m1[k] + m2[k];
                }
                add_term(&mut terms, m, c1 * c2);
            }
        }
        BoxPoly { terms, domain: self.domain }
    }

    pub fn square(&self) -> BoxPoly {
        self.mul(self)
    }

    pub fn eval(&self, w: &[f64; BOX_VARS]) -> f64 {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut v = rational_to_f64(c);
            for k in 0..BOX_VARS {
                for _ in 0..m[k] {
                    v *= w[k];
                }
            }
            acc += v;
        }
        acc
    }

    pub fn eval_exact(&self, w: &[BigRational; BOX_VARS]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for k in 0..BOX_VARS {
                for _ in 0..m[k] {
                    v *= &w[k];
                }
            }
            acc += v;
        }
        acc
    }

    /// One term per line, "num/den : e1 e2 e3 e4", in term order.
    pub fn to_text(&self, limit: usize) -> String {
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            if limit > 0 && idx >= limit {
                let _ = writeln!(out, "... ({} more terms)", self.terms.len() - idx);
                break;
            }
            let _ = write!(out, "{}/{} :", c.numer(), c.denom());
            for k in 0..BOX_VARS {
                let _ = write!(out, " {}", m[k]);
            }
            let _ = writeln!(out);
        }
        out
    }
}

/// Exact substitution xₖ = 1 − 2wₖ applied to a sin-free TrigPoly over
/// variables 1..4, yielding a polynomial on the unit box.
pub fn substitute_box(p: &TrigPoly) -> Result<BoxPoly, TrigError> {
    if let Some(k) = p.first_y_var() {
        return Err(TrigError::ResidualYVariable(k));
    }
    if let Some(v) = p.max_var() {
        if v > BOX_VARS {
            return Err(TrigError::UnsupportedShape(format!(
                "variable x{v} has no box image; only x1..x4 are mapped"
            )));
        }
    }
    let mut out = BoxPoly::zero(BoxDomain::Unit);
    // 1 − 2wₖ per variable
    let subs: Vec<BoxPoly> = (1..=BOX_VARS)
        .map(|i| {
            BoxPoly::from_int(1, BoxDomain::Unit)
                .sub(&BoxPoly::var(i, BoxDomain::Unit).unwrap().scale(&rat(2, 1)))
        })
        .collect();
    for (m, c) in p.terms() {
        let mut term = BoxPoly::constant(c.clone(), BoxDomain::Unit);
        for k in 0..BOX_VARS {
            for _ in 0..m.xs[k] {
                term = term.mul(&subs[k]);
            }
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// Interprets a sin-free TrigPoly over x-variables 1..4 directly as a
/// polynomial on [−1, 1]⁴ (no change of variables).
pub fn from_x_poly(p: &TrigPoly) -> Result<BoxPoly, TrigError> {
    if let Some(k) = p.first_y_var() {
        return Err(TrigError::ResidualYVariable(k));
    }
    if let Some(v) = p.max_var() {
        if v > BOX_VARS {
            return Err(TrigError::UnsupportedShape(format!(
                "variable x{v} exceeds the box arity"
            )));
        }
    }
    let mut out = BoxPoly::zero(BoxDomain::Symmetric);
    for (m, c) in p.terms() {
        let mut mono = [0u8; BOX_VARS];
        mono.copy_from_slice(&m.xs[..BOX_VARS]);
        out = out.add(&BoxPoly {
            terms: [(mono, c.clone())].into_iter().collect(),
            domain: BoxDomain::Symmetric,
        });
    }
    Ok(out)
}

/// Exact minimum of a polynomial of degree ≤ 2 in each of at most two
/// active variables over its box, by enumerating corners, edge stationary
/// points, and the interior stationary point.
pub fn box_quadratic_min(p: &BoxPoly) -> Result<BigRational, TrigError> {
    let mut active: Vec<usize> = Vec::new();
    for (m, _) in p.terms() {
        for k in 0..BOX_VARS {
            if m[k] > 2 {
                return Err(TrigError::UnsupportedShape(format!(
                    "degree {} in variable {} exceeds 2",
                    m[k],
                    k + 1
                )));
            }
            if m[k] > 0 && !active.contains(&k) {
                active.push(k);
            }
        }
    }
    if active.len() > 2 {
        return Err(TrigError::UnsupportedShape(format!(
            "{} active variables exceed 2",
            active.len()
        )));
    }
    active.sort_unstable();
    let (lo, hi) = p.domain.bounds();

    let coef = |eu: u8, ev: u8| -> BigRational {
        let mut m = [0u8; BOX_VARS];
        if let Some(&u) = active.first() {
            m[u] = eu;
        }
        if let Some(&v) = active.get(1) {
            m[v] = ev;
        }
        p.coefficient(&m)
    };

    if active.is_empty() {
        return Ok(coef(0, 0));
    }

    if active.len() == 1 {
        // c0 + c1·u + c2·u²
        let c0 = coef(0, 0);
        let c1 = coef(1, 0);
        let c2 = coef(2, 0);
        let q = |u: &BigRational| &c0 + &c1 * u + &c2 * u * u;
        let mut best = q(&lo).min(q(&hi));
        if !c2.is_zero() {
            let vertex = -&c1 / (rat(2, 1) * &c2);
            if vertex >= lo && vertex <= hi {
                best = best.min(q(&vertex));
            }
        }
        return Ok(best);
    }

    // Two variables u, v: q(u,v) = c00 + c10 u + c01 v + c20 u² + c02 v² + c11 uv
    let c00 = coef(0, 0);
    let c10 = coef(1, 0);
    let c01 = coef(0, 1);
    let c20 = coef(2, 0);
    let c02 = coef(0, 2);
    let c11 = coef(1, 1);
    let q = |u: &BigRational, v: &BigRational| {
        &c00 + &c10 * u + &c01 * v + &c20 * u * u + &c02 * v * v + &c11 * u * v
    };

    let mut candidates: Vec<(BigRational, BigRational)> = Vec::new();
    for u in [&lo, &hi] {
        for v in [&lo, &hi] {
            candidates.push((u.clone(), v.clone()));
        }
    }
    // Edges u = const: stationary v = −(c01 + c11 u)/(2 c02)
    if !c02.is_zero() {
        for u in [&lo, &hi] {
            let v = -(&c01 + &c11 * u) / (rat(2, 1) * &c02);
            if v >= lo && v <= hi {
                candidates.push((u.clone(), v));
            }
        }
    }
    // Edges v = const: stationary u = −(c10 + c11 v)/(2 c20)
    if !c20.is_zero() {
        for v in [&lo, &hi] {
            let u = -(&c10 + &c11 * v) / (rat(2, 1) * &c20);
            if u >= lo && u <= hi {
                candidates.push((u, v.clone()));
            }
        }
    }
    // Interior stationary point: solve 2c20 u + c11 v = −c10, c11 u + 2c02 v = −c01.
    let det = rat(4, 1) * &c20 * &c02 - &c11 * &c11;
    if !det.is_zero() {
        let u = (-&c10 * rat(2, 1) * &c02 + &c01 * &c11) / &det;
        let v = (-&c01 * rat(2, 1) * &c20 + &c10 * &c11) / &det;
        if u >= lo && u <= hi && v >= lo && v <= hi {
            candidates.push((u, v));
        }
    }

    let mut best: Option<BigRational> = None;
    for (u, v) in candidates {
        let val = q(&u, &v);
        best = Some(match best {
            Some(b) => b.min(val),
            None => val,
        });
    }
    Ok(best.expect("candidate list is never empty"))
}
