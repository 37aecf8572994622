//! Exact sparse polynomials in cos φ₁..cos φ₅, sin φ₁..sin φ₅ with
//! big-rational coefficients, kept in a canonical normal form modulo the
//! relations sin²φᵢ = 1 − cos²φᵢ.
//!
//! Writing xᵢ = cos φᵢ and yᵢ = sin φᵢ, every polynomial is reduced so
//! that each yᵢ appears with exponent 0 or 1; the rewriting yᵢ² → 1 − xᵢ²
//! is confluent, so the stored term map is a unique representative and
//! structural equality decides polynomial identity.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{rat, rational_to_f64, QuadExt};

pub const NVARS: usize = 5;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TrigError {
    #[error("variable index {0} out of range 1..=5")]
    BadIndex(usize),
    #[error("polynomial still contains sin variable y{0}")]
    ResidualYVariable(usize),
    #[error("unsupported polynomial shape: {0}")]
    UnsupportedShape(String),
}

/// Monomial ∏ xᵢ^exᵢ · ∏ yᵢ^eyᵢ with every eyᵢ ∈ {0, 1}; the y exponents
/// are packed into a bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub xs: [u8; NVARS],
    pub ys: u8,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { xs: [0; NVARS], ys: 0 };

    pub fn total_degree(&self) -> u32 {
        self.xs.iter().map(|&e| e as u32).sum::<u32>() + self.ys.count_ones()
    }

    fn y_exp(&self, k: usize) -> u8 {
        (self.ys >> k) & 1
    }
}

impl Ord for Monomial {
    /// Graded lexicographic on (ex₁..ex₅, ey₁..ey₅).
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.xs.cmp(&other.xs))
            .then_with(|| {
                for k in 0..NVARS {
                    let c = self.y_exp(k).cmp(&other.y_exp(k));
                    if c != std::cmp::Ordering::Equal {
                        return c;
                    }
                }
                std::cmp::Ordering::Equal
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in normal form; zero coefficients are never stored,
/// so two values are equal iff their term maps are identical.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TrigPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

fn check_index(i: usize) -> Result<usize, TrigError> {
    if (1..=NVARS).contains(&i) {
        Ok(i - 1)
    } else {
        Err(TrigError::BadIndex(i))
    }
}

fn add_term(terms: &mut BTreeMap<Monomial, BigRational>, m: Monomial, c: BigRational) {
    if c.is_zero() {
        return;
    }
    let entry = terms.entry(m).or_insert_with(BigRational::zero);
    *entry += c;
    if entry.is_zero() {
        terms.remove(&m);
    }
}

impl TrigPoly {
    pub fn zero() -> Self {
        TrigPoly::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        add_term(&mut terms, Monomial::ONE, c);
        TrigPoly { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(rat(n, 1))
    }

    /// xᵢ = cos φᵢ, index 1-based.
    pub fn x(i: usize) -> Result<Self, TrigError> {
        let k = check_index(i)?;
        let mut m = Monomial::ONE;
        m.xs[k] = 1;
        let mut terms = BTreeMap::new();
        add_term(&mut terms, m, BigRational::one());
        Ok(TrigPoly { terms })
    }

    /// yᵢ = sin φᵢ, index 1-based.
    pub fn y(i: usize) -> Result<Self, TrigError> {
        let k = check_index(i)?;
        let m = Monomial { xs: [0; NVARS], ys: 1 << k };
        let mut terms = BTreeMap::new();
        add_term(&mut terms, m, BigRational::one());
        Ok(TrigPoly { terms })
    }

    /// x_{ij} = cos φᵢ − cos φⱼ.
    pub fn x_diff(i: usize, j: usize) -> Result<Self, TrigError> {
        if i == j {
            return Err(TrigError::BadIndex(j));
        }
        Ok(Self::x(i)?.sub(&Self::x(j)?))
    }

    /// y_{ij} = sin φᵢ − sin φⱼ.
    pub fn y_diff(i: usize, j: usize) -> Result<Self, TrigError> {
        if i == j {
            return Err(TrigError::BadIndex(j));
        }
        Ok(Self::y(i)?.sub(&Self::y(j)?))
    }

    /// dᵢ = 1 − cos φᵢ.
    pub fn d(i: usize) -> Result<Self, TrigError> {
        Ok(Self::from_int(1).sub(&Self::x(i)?))
    }

    /// bᵢ = 1 − 2 cos φᵢ.
    pub fn b(i: usize) -> Result<Self, TrigError> {
        Ok(Self::from_int(1).sub(&Self::x(i)?.scale(&rat(2, 1))))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Coefficient of ∏ xᵢ^exᵢ · ∏ yᵢ (1-based index lists, y indices
    /// listed at most once each).
    pub fn coefficient_of(&self, x_exps: &[(usize, u8)], y_vars: &[usize]) -> BigRational {
        let mut m = Monomial::ONE;
        for &(i, e) in x_exps {
            m.xs[i - 1] = e;
        }
        for &i in y_vars {
            m.ys |= 1 << (i - 1);
        }
        self.coefficient(&m)
    }

    pub fn add(&self, other: &TrigPoly) -> TrigPoly {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, *m, c.clone());
        }
        TrigPoly { terms }
    }

    pub fn add_assign(&mut self, other: &TrigPoly) {
        for (m, c) in &other.terms {
            add_term(&mut self.terms, *m, c.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &TrigPoly) {
        for (m, c) in &other.terms {
            add_term(&mut self.terms, *m, -c.clone());
        }
    }

    pub fn sub(&self, other: &TrigPoly) -> TrigPoly {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, *m, -c.clone());
        }
        TrigPoly { terms }
    }

    pub fn neg(&self) -> TrigPoly {
        TrigPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> TrigPoly {
        if c.is_zero() {
            return TrigPoly::zero();
        }
        TrigPoly {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    /// Product in normal form: any yᵢ² arising from the term products is
    /// rewritten to 1 − xᵢ² on the fly.
    pub fn mul(&self, other: &TrigPoly) -> TrigPoly {
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let coef = c1 * c2;
                let overlap = m1.ys & m2.ys;
                let ys = m1.ys ^ m2.ys;
                let mut xs = [0u8; NVARS];
                for k in 0..NVARS {
                    xs[k] = m1.xs[k] + m2.xs[k];
                }
                // Expand ∏_{k ∈ overlap} (1 − xₖ²) over submasks.
                let mut sub = overlap;
                loop {
                    let mut xs2 = xs;
                    let mut bits = sub;
                    while bits != 0 {
                        let k = bits.trailing_zeros() as usize;
                        xs2[k] += 2;
                        bits &= bits - 1;
                    }
                    let signed = if sub.count_ones() % 2 == 0 {
                        coef.clone()
                    } else {
                        -coef.clone()
                    };
                    add_term(&mut terms, Monomial { xs: xs2, ys }, signed);
                    if sub == 0 {
                        break;
                    }
                    sub = (sub - 1) & overlap;
                }
            }
        }
        TrigPoly { terms }
    }

    pub fn square(&self) -> TrigPoly {
        self.mul(self)
    }

    /// Substitutes xᵢ = cos φᵢ, yᵢ = sin φᵢ and evaluates in floats.
    pub fn eval_at(&self, angles: &[f64; NVARS]) -> f64 {
        let cos: Vec<f64> = angles.iter().map(|a| a.cos()).collect();
        let sin: Vec<f64> = angles.iter().map(|a| a.sin()).collect();
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut v = rational_to_f64(c);
            for k in 0..NVARS {
                for _ in 0..m.xs[k] {
                    v *= cos[k];
                }
                if m.y_exp(k) == 1 {
                    v *= sin[k];
                }
            }
            acc += v;
        }
        acc
    }

    /// Exact evaluation at points whose cosines and sines lie in Q(√3),
    /// e.g. φ ∈ {0, ±π/3, π}.
    pub fn eval_exact(&self, xs: &[QuadExt; NVARS], ys: &[QuadExt; NVARS]) -> QuadExt {
        let mut acc = QuadExt::zero();
        for (m, c) in &self.terms {
            let mut v = QuadExt::from_rational(c.clone());
            for k in 0..NVARS {
                for _ in 0..m.xs[k] {
                    v = v * xs[k].clone();
                }
                if m.y_exp(k) == 1 {
                    v = v * ys[k].clone();
                }
            }
            acc = acc + v;
        }
        acc
    }

    /// Renames variable k to perm[k]; permuting a normal form yields a
    /// normal form, so the result stays canonical.
    pub fn permute_vars(&self, perm: &[usize; NVARS]) -> TrigPoly {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut xs = [0u8; NVARS];
            let mut ys = 0u8;
            for k in 0..NVARS {
                xs[perm[k]] = m.xs[k];
                if m.y_exp(k) == 1 {
                    ys |= 1 << perm[k];
                }
            }
            add_term(&mut terms, Monomial { xs, ys }, c.clone());
        }
        TrigPoly { terms }
    }

    /// The image under φᵢ → −φᵢ (every sin negated): each term picks up
    /// (−1)^(number of y factors).
    pub fn negate_y(&self) -> TrigPoly {
        TrigPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let c = if m.ys.count_ones() % 2 == 0 { c.clone() } else { -c.clone() };
                    (*m, c)
                })
                .collect(),
        }
    }

    /// True when no sin variable appears.
    pub fn is_x_only(&self) -> bool {
        self.terms.keys().all(|m| m.ys == 0)
    }

    /// The cofactor C(x) of the monomial yᵢyⱼ: the sum of all terms whose
    /// sin part is exactly yᵢyⱼ, with that part stripped.
    pub fn y_pair_cofactor(&self, i: usize, j: usize) -> Result<TrigPoly, TrigError> {
        let ki = check_index(i)?;
        let kj = check_index(j)?;
        if ki == kj {
            return Err(TrigError::BadIndex(j));
        }
        let mask = (1u8 << ki) | (1 << kj);
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.ys == mask {
                add_term(&mut terms, Monomial { xs: m.xs, ys: 0 }, c.clone());
            }
        }
        Ok(TrigPoly { terms })
    }

    /// Lowest 1-based index of a sin variable still present, if any.
    pub fn first_y_var(&self) -> Option<usize> {
        self.terms
            .keys()
            .filter(|m| m.ys != 0)
            .map(|m| m.ys.trailing_zeros() as usize + 1)
            .min()
    }

    /// Highest 1-based variable index that occurs (in x or y).
    pub fn max_var(&self) -> Option<usize> {
        self.terms
            .keys()
            .flat_map(|m| {
                (0..NVARS).filter(move |&k| m.xs[k] > 0 || m.y_exp(k) == 1)
            })
            .max()
            .map(|k| k + 1)
    }

    /// One term per line, "num/den : ex1..ex5 ey1..ey5", in term order.
    /// At most `limit` lines are emitted (0 = no limit).
    pub fn to_text(&self, limit: usize) -> String {
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            if limit > 0 && idx >= limit {
                let _ = writeln!(out, "... ({} more terms)", self.terms.len() - idx);
                break;
            }
            let _ = write!(out, "{}/{} :", c.numer(), c.denom());
            for k in 0..NVARS {
                let _ = write!(out, " {}", m.xs[k]);
            }
            for k in 0..NVARS {
                let _ = write!(out, " {}", m.y_exp(k));
            }
            let _ = writeln!(out);
        }
        out
    }

    /// Largest absolute coefficient value, for scaling diagnostics.
    pub fn max_abs_coefficient(&self) -> BigRational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

/// A complex-valued trigonometric polynomial split into real and
/// imaginary parts; zⱼ = e^{iφⱼ} enters as xⱼ + i·yⱼ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexTrig {
    pub re: TrigPoly,
    pub im: TrigPoly,
}

impl ComplexTrig {
    pub fn zero() -> Self {
        ComplexTrig { re: TrigPoly::zero(), im: TrigPoly::zero() }
    }

    pub fn constant(c: BigRational) -> Self {
        ComplexTrig { re: TrigPoly::constant(c), im: TrigPoly::zero() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// zⱼ = cos φⱼ + i sin φⱼ, 1-based index.
    pub fn z(i: usize) -> Result<Self, TrigError> {
        Ok(ComplexTrig { re: TrigPoly::x(i)?, im: TrigPoly::y(i)? })
    }

    pub fn add(&self, other: &ComplexTrig) -> ComplexTrig {
        ComplexTrig { re: self.re.add(&other.re), im: self.im.add(&other.im) }
    }

    pub fn sub(&self, other: &ComplexTrig) -> ComplexTrig {
        ComplexTrig { re: self.re.sub(&other.re), im: self.im.sub(&other.im) }
    }

    pub fn mul(&self, other: &ComplexTrig) -> ComplexTrig {
        ComplexTrig {
            re: self.re.mul(&other.re).sub(&self.im.mul(&other.im)),
            im: self.re.mul(&other.im).add(&self.im.mul(&other.re)),
        }
    }

    pub fn scale(&self, c: &BigRational) -> ComplexTrig {
        ComplexTrig { re: self.re.scale(c), im: self.im.scale(c) }
    }

    /// |·|² = re² + im², a real TrigPoly.
    pub fn norm_sq(&self) -> TrigPoly {
        self.re.square().add(&self.im.square())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_poly(rng: &mut ChaCha8Rng, nterms: usize) -> TrigPoly {
        let mut p = TrigPoly::zero();
        for _ in 0..nterms {
            let mut factor = TrigPoly::constant(rat(rng.gen_range(-9i64..=9), rng.gen_range(1..=4)));
            for _ in 0..rng.gen_range(0..4) {
                let i = rng.gen_range(1..=5);
                let f = if rng.gen_bool(0.5) { TrigPoly::x(i).unwrap() } else { TrigPoly::y(i).unwrap() };
                factor = factor.mul(&f);
            }
            p = p.add(&factor);
        }
        p
    }

    fn random_angles(rng: &mut ChaCha8Rng) -> [f64; 5] {
        let mut a = [0.0; 5];
        for v in &mut a {
            *v = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        }
        a
    }

    #[test]
    fn symbol_constructors() {
        let d1 = TrigPoly::d(1).unwrap();
        assert_eq!(d1.coefficient(&Monomial::ONE), rat(1, 1));
        assert_eq!(d1.coefficient_of(&[(1, 1)], &[]), rat(-1, 1));
        assert_eq!(d1.num_terms(), 2);

        let b3 = TrigPoly::b(3).unwrap();
        assert_eq!(b3.coefficient(&Monomial::ONE), rat(1, 1));
        assert_eq!(b3.coefficient_of(&[(3, 1)], &[]), rat(-2, 1));

        let x12 = TrigPoly::x_diff(1, 2).unwrap();
        let same = [0.7, 0.7, 0.0, 0.0, 0.0];
        assert_eq!(x12.eval_at(&same), 0.0);

        assert_eq!(TrigPoly::x(0).unwrap_err(), TrigError::BadIndex(0));
        assert_eq!(TrigPoly::y(6).unwrap_err(), TrigError::BadIndex(6));
        assert_eq!(TrigPoly::x_diff(2, 2).unwrap_err(), TrigError::BadIndex(2));
    }

    #[test]
    fn pythagorean_reduction() {
        let y1 = TrigPoly::y(1).unwrap();
        let sq = y1.square();
        // y₁² = 1 − x₁²
        assert_eq!(sq.coefficient(&Monomial::ONE), rat(1, 1));
        assert_eq!(sq.coefficient_of(&[(1, 2)], &[]), rat(-1, 1));
        assert_eq!(sq.num_terms(), 2);

        // (y₁y₂)² = (1−x₁²)(1−x₂²)
        let y1y2 = TrigPoly::y(1).unwrap().mul(&TrigPoly::y(2).unwrap());
        let sq2 = y1y2.square();
        let expect = sq.mul(&TrigPoly::y(2).unwrap().square());
        assert_eq!(sq2, expect);
        assert!(sq2.is_x_only());

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let a = random_angles(&mut rng);
            let direct = (a[0].sin() * a[1].sin()).powi(2);
            assert!((sq2.eval_at(&a) - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn add_cancel_is_structural_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let p = random_poly(&mut rng, 6);
            let q = random_poly(&mut rng, 6);
            assert_eq!(p.add(&q.sub(&q)), p);
            assert!(p.add(&p.scale(&rat(-1, 1))).is_zero());
        }
    }

    #[test]
    fn eval_at_known_points() {
        let x1 = TrigPoly::x(1).unwrap();
        assert_eq!(x1.eval_at(&[0.0, 1.0, 2.0, 3.0, -1.0]), 1.0);

        let mut dprod = TrigPoly::from_int(1);
        for i in 1..=5 {
            dprod = dprod.mul(&TrigPoly::d(i).unwrap());
        }
        let third = std::f64::consts::PI / 3.0;
        let v = dprod.eval_at(&[third; 5]);
        assert!((v - 0.5f64.powi(5)).abs() < 1e-12);

        let pyth = TrigPoly::y(1)
            .unwrap()
            .square()
            .add(&TrigPoly::x(1).unwrap().square())
            .sub(&TrigPoly::from_int(1));
        assert!(pyth.is_zero());
    }

    #[test]
    fn mul_matches_numeric_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let p = random_poly(&mut rng, 5);
            let q = random_poly(&mut rng, 5);
            let prod = p.mul(&q);
            for _ in 0..20 {
                let a = random_angles(&mut rng);
                let lhs = prod.eval_at(&a);
                let rhs = p.eval_at(&a) * q.eval_at(&a);
                assert!(
                    (lhs - rhs).abs() <= 1e-9 * (1.0 + lhs.abs().max(rhs.abs())),
                    "{lhs} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn normal_form_is_idempotent_under_identity_ops() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let p = random_poly(&mut rng, 10);
        let one = TrigPoly::from_int(1);
        assert_eq!(p.mul(&one), p);
        assert_eq!(p.add(&TrigPoly::zero()), p);
        // every stored y exponent is already 0/1 and survives a pass
        for (m, _) in p.terms() {
            assert!(m.ys < 32);
        }
    }

    #[test]
    fn exact_eval_at_pi_thirds() {
        // x₁² + y₁² − 1 evaluates to exactly 0 at φ = π/3.
        let pyth = TrigPoly::x(1)
            .unwrap()
            .square()
            .add(&TrigPoly::y(1).unwrap().square())
            .sub(&TrigPoly::from_int(1));
        let half = QuadExt::from_rational(rat(1, 2));
        let s3h = QuadExt::sqrt3_times(rat(1, 2));
        let xs = [half.clone(), QuadExt::one(), QuadExt::one(), QuadExt::one(), QuadExt::one()];
        let ys = [s3h, QuadExt::zero(), QuadExt::zero(), QuadExt::zero(), QuadExt::zero()];
        assert!(pyth.eval_exact(&xs, &ys).is_zero());
    }

    #[test]
    fn permutation_and_sign_flip() {
        let p = TrigPoly::x(1)
            .unwrap()
            .mul(&TrigPoly::y(2).unwrap())
            .add(&TrigPoly::y(3).unwrap());
        // swap vars 1 and 2 (0-based perm)
        let perm = [1usize, 0, 2, 3, 4];
        let q = p.permute_vars(&perm);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..10 {
            let a = random_angles(&mut rng);
            let swapped = [a[1], a[0], a[2], a[3], a[4]];
            assert!((q.eval_at(&swapped) - p.eval_at(&a)).abs() < 1e-12);
        }
        let r = p.negate_y();
        for _ in 0..10 {
            let a = random_angles(&mut rng);
            let negated = a.map(|v| -v);
            assert!((r.eval_at(&negated) - p.eval_at(&a)).abs() < 1e-12);
        }
    }

    #[test]
    fn text_serialization_format() {
        let p = TrigPoly::from_int(2)
            .add(&TrigPoly::x(1).unwrap().scale(&rat(-1, 3)))
            .add(&TrigPoly::y(5).unwrap());
        let text = p.to_text(0);
        let lines: Vec<&str> = text.lines().collect();
        // graded lex on (ex1..ex5, ey1..ey5): the y5 monomial's exponent
        // tuple (0,...,0,1) precedes the x1 monomial's (1,0,...,0)
        assert_eq!(lines[0], "2/1 : 0 0 0 0 0 0 0 0 0 0");
        assert_eq!(lines[1], "1/1 : 0 0 0 0 0 0 0 0 0 1");
        assert_eq!(lines[2], "-1/3 : 1 0 0 0 0 0 0 0 0 0");
    }

    #[test]
    fn complex_trig_norm() {
        let z1 = ComplexTrig::z(1).unwrap();
        // |z₁|² = x₁² + y₁² = 1
        assert_eq!(z1.norm_sq(), TrigPoly::from_int(1));
        // z₁·conj is not expressible directly; check |z₁·z₂|² = 1 too
        let prod = z1.mul(&ComplexTrig::z(2).unwrap());
        assert_eq!(prod.norm_sq(), TrigPoly::from_int(1));
    }
}
