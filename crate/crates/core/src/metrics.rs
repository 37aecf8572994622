//! Mean value quantities of complex polynomials: the extreme critical
//! ratios T(f) and S(f), the minimal critical modulus α_f, the restricted
//! maximum Λ_f over the minimal circle, the integral representation of
//! f(w)/w, and the closed-form extremal polynomials.

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::exact::{rat, ExactPoly, ExtComplex, QuadExt};
use crate::poly::{ComplexPolynomial, PolyError};

/// Critical points whose modulus is within this relative factor of the
/// minimal one count as lying on the minimal circle for Λ_f. Exact ties
/// never happen in floating point.
pub const LAMBDA_TIE_REL: f64 = 1e-8;

/// A critical point ζ of f with its multiplicity and the ratio f(ζ)/ζ.
#[derive(Debug, Clone)]
pub struct CriticalPoint {
    pub zeta: Complex64,
    pub multiplicity: usize,
    pub ratio: Complex64,
}

/// The critical points of a polynomial, with ratios attached.
#[derive(Debug, Clone)]
pub struct CriticalSet {
    pub points: Vec<CriticalPoint>,
    pub residual_bound: f64,
    pub source: ComplexPolynomial,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriticalPointInfo {
    pub re: f64,
    pub im: f64,
    pub multiplicity: usize,
    pub ratio_abs: f64,
}

/// T, S, α and Λ for one polynomial.
#[derive(Debug, Clone, Serialize)]
pub struct MetricsReport {
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(rename = "S")]
    pub s: f64,
    pub alpha: f64,
    pub lambda: f64,
    pub critical_points: Vec<CriticalPointInfo>,
}

/// Roots of f' with the ratios f(ζ)/ζ attached.
pub fn critical_set(f: &ComplexPolynomial, tol: f64) -> Result<CriticalSet, PolyError> {
    let df = f.derivative();
    let roots = df.roots(tol)?;
    let points = roots
        .roots
        .iter()
        .map(|&(zeta, multiplicity)| {
            let ratio = if zeta.norm() > 0.0 {
                f.eval(zeta) / zeta
            } else {
                // ζ = 0 cannot occur for members of the class (f'(0) = 1);
                // report the limit f'(0) for robustness on other inputs.
                df.eval(Complex64::new(0.0, 0.0))
            };
            CriticalPoint { zeta, multiplicity, ratio }
        })
        .collect();
    Ok(CriticalSet {
        points,
        residual_bound: roots.residual_bound,
        source: f.clone(),
    })
}

/// T = min |f(ζ)/ζ|, S = max |f(ζ)/ζ|, α = min |ζ|, Λ = max |f(ζ)/ζ|
/// over critical points with |ζ| on the minimal circle.
pub fn metrics(f: &ComplexPolynomial, tol: f64) -> Result<MetricsReport, PolyError> {
    let cs = critical_set(f, tol)?;
    Ok(metrics_of_critical_set(&cs))
}

pub fn metrics_of_critical_set(cs: &CriticalSet) -> MetricsReport {
    let mut t = f64::INFINITY;
    let mut s = 0.0f64;
    let mut alpha = f64::INFINITY;
    for p in &cs.points {
        let r = p.ratio.norm();
        t = t.min(r);
        s = s.max(r);
        alpha = alpha.min(p.zeta.norm());
    }
    let mut lambda = 0.0f64;
    for p in &cs.points {
        if p.zeta.norm() <= alpha * (1.0 + LAMBDA_TIE_REL) {
            lambda = lambda.max(p.ratio.norm());
        }
    }
    MetricsReport {
        t,
        s,
        alpha,
        lambda,
        critical_points: cs
            .points
            .iter()
            .map(|p| CriticalPointInfo {
                re: p.zeta.re,
                im: p.zeta.im,
                multiplicity: p.multiplicity,
                ratio_abs: p.ratio.norm(),
            })
            .collect(),
    }
}

/// Result of evaluating f(w)/w through the termwise-integrated form
/// ∫₀¹ f'(tw) dt.
#[derive(Debug, Clone)]
pub struct IntegralRatio {
    pub value: Complex64,
    /// Set when w = 0 and the limit f'(0) was returned instead.
    pub limit_at_origin: bool,
    /// |value − f(w)/w| from direct evaluation (0 when at the origin).
    pub direct_gap: f64,
    /// |value − Simpson quadrature of ∫₀¹ f'(tw) dt|.
    pub quadrature_gap: f64,
}

/// Evaluates f(w)/w as ∫₀¹ f'(tw) dt by exact termwise integration
/// (Σ cₖ w^(k−1)), cross-checking against direct evaluation and a
/// composite Simpson rule with `quad_points` panels.
pub fn integral_ratio(f: &ComplexPolynomial, w: Complex64, quad_points: usize) -> IntegralRatio {
    let df = f.derivative();
    if w.norm() == 0.0 {
        return IntegralRatio {
            value: df.eval(Complex64::new(0.0, 0.0)),
            limit_at_origin: true,
            direct_gap: 0.0,
            quadrature_gap: 0.0,
        };
    }
    // Termwise: ∫₀¹ Σ k cₖ (tw)^(k−1) dt = Σ cₖ w^(k−1)
    let mut value = Complex64::new(0.0, 0.0);
    let mut pw = Complex64::new(1.0, 0.0);
    for k in 1..=f.degree() {
        value += f.coeff(k) * pw;
        pw *= w;
    }
    let direct_gap = (value - f.eval(w) / w).norm();
    let n = quad_points.max(2) & !1usize; // even panel count
    let h = 1.0 / n as f64;
    let mut quad = df.eval(Complex64::new(0.0, 0.0)) + df.eval(w);
    for i in 1..n {
        let t = i as f64 * h;
        let weight = if i % 2 == 1 { 4.0 } else { 2.0 };
        quad += weight * df.eval(t * w);
    }
    quad *= h / 3.0;
    IntegralRatio {
        value,
        limit_at_origin: false,
        direct_gap,
        quadrature_gap: (value - quad).norm(),
    }
}

/// Outcome of the critical-point divided-difference bound
/// max_ζ |(f(z)−f(ζ))/(z−ζ)| ≥ (1/n)·tan(π/4n)·|f'(z)|.
#[derive(Debug, Clone, Serialize)]
pub struct DubininCheck {
    pub best_ratio: f64,
    pub bound: f64,
    pub pass: bool,
}

pub fn dubinin_check(
    f: &ComplexPolynomial,
    z: Complex64,
    tol: f64,
) -> Result<DubininCheck, PolyError> {
    let n = f.degree();
    let cs = critical_set(f, 1e-12)?;
    let mut best_ratio = 0.0f64;
    for p in &cs.points {
        let denom = z - p.zeta;
        if denom.norm() == 0.0 {
            continue;
        }
        let r = ((f.eval(z) - f.eval(p.zeta)) / denom).norm();
        best_ratio = best_ratio.max(r);
    }
    let bound = (1.0 / n as f64)
        * (std::f64::consts::PI / (4.0 * n as f64)).tan()
        * f.derivative().eval(z).norm();
    Ok(DubininCheck { best_ratio, bound, pass: best_ratio >= bound - tol })
}

/// An extremal polynomial together with its critical points, all exact.
#[derive(Debug, Clone)]
pub struct ExtremalExact {
    pub poly: ExactPoly,
    /// (ζ, multiplicity) pairs; together they account for all six
    /// critical points.
    pub critical_points: Vec<(ExtComplex, usize)>,
}

impl ExtremalExact {
    /// Exact squared ratios |f(ζ)/ζ|² per critical point.
    pub fn ratio_squares(&self) -> Vec<QuadExt> {
        self.critical_points
            .iter()
            .map(|(zeta, _)| {
                let ratio = self.poly.eval(zeta) / zeta.clone();
                ratio.abs_sq()
            })
            .collect()
    }

    /// Exact (T², S², α², Λ²).
    pub fn metrics_squared(&self) -> (QuadExt, QuadExt, QuadExt, QuadExt) {
        let ratios = self.ratio_squares();
        let moduli: Vec<QuadExt> = self
            .critical_points
            .iter()
            .map(|(z, _)| z.abs_sq())
            .collect();
        let t2 = ratios.iter().cloned().min().expect("nonempty critical set");
        let s2 = ratios.iter().cloned().max().expect("nonempty critical set");
        let alpha2 = moduli.iter().cloned().min().expect("nonempty critical set");
        let lambda2 = ratios
            .iter()
            .zip(moduli.iter())
            .filter(|(_, m)| **m == alpha2)
            .map(|(r, _)| r.clone())
            .max()
            .expect("minimal circle is nonempty");
        (t2, s2, alpha2, lambda2)
    }

    /// Exact residual check: f'(ζ) must be identically zero at every
    /// listed critical point.
    pub fn critical_points_verified(&self) -> bool {
        let df = self.poly.derivative();
        self.critical_points.iter().all(|(z, _)| df.eval(z).is_zero())
    }
}

/// g₁(z) = (1/7a)·(1 − (1−az)⁷), the unique extremal class: single
/// critical point 1/a of multiplicity 6, ratio of modulus 1/7.
pub fn extremal_g1_exact(a: &ExtComplex) -> ExtremalExact {
    assert!(!a.is_zero(), "scale must be nonzero");
    // 1 − (1−az)^7, then divide by 7a.
    let base = ExactPoly::linear_pow(ExtComplex::one(), -a.clone(), 7);
    let one = ExactPoly::new(vec![ExtComplex::one()]);
    let scale = (ExtComplex::from_int(7) * a.clone()).inv();
    let poly = one.sub(&base).scale(&scale);
    ExtremalExact {
        poly,
        critical_points: vec![(a.inv(), 6)],
    }
}

/// g₂,₃(z) = (1/(42q²a))·((7q−1)(1−(1−aqz)⁶) + 6qaz(1−aqz)⁶) with
/// q = e^{±iπ/3}; critical points 1/a (simple) and 1/(aq)
/// (multiplicity 5).
pub fn extremal_g23_exact(a: &ExtComplex, sign: i8) -> ExtremalExact {
    assert!(!a.is_zero(), "scale must be nonzero");
    let q = ExtComplex::sixth_root_q(sign);
    let aq = a.clone() * q.clone();
    // (1 − aqz)^6
    let pow6 = ExactPoly::linear_pow(ExtComplex::one(), -aq.clone(), 6);
    let one = ExactPoly::new(vec![ExtComplex::one()]);
    let seven_q_minus_1 = ExtComplex::from_int(7) * q.clone() - ExtComplex::one();
    let term1 = one.sub(&pow6).scale(&seven_q_minus_1);
    // 6qaz·(1 − aqz)^6
    let z = ExactPoly::new(vec![ExtComplex::zero(), ExtComplex::one()]);
    let term2 = z
        .mul(&pow6)
        .scale(&(ExtComplex::from_int(6) * q.clone() * a.clone()));
    let denom = (ExtComplex::from_int(42) * q.clone() * q.clone() * a.clone()).inv();
    let poly = term1.add(&term2).scale(&denom);
    ExtremalExact {
        poly,
        critical_points: vec![(a.inv(), 1), (aq.inv(), 5)],
    }
}

/// Float-coefficient g₁ for arbitrary complex scale.
pub fn extremal_g1(a: Complex64) -> Result<ComplexPolynomial, PolyError> {
    if a.norm() == 0.0 {
        return Err(PolyError::ZeroScale);
    }
    // cₖ = (−1)^(k+1) C(7,k) a^(k−1) / 7 for k = 1..7
    let mut coeffs = vec![Complex64::new(0.0, 0.0); 8];
    let mut pw = Complex64::new(1.0, 0.0);
    for k in 1..=7usize {
        let binom = binomial(7, k) as f64;
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        coeffs[k] = sign * binom / 7.0 * pw;
        pw *= a;
    }
    Ok(ComplexPolynomial::new(coeffs))
}

/// Float-coefficient g₂,₃ for arbitrary complex scale.
pub fn extremal_g23(a: Complex64, sign: i8) -> Result<ComplexPolynomial, PolyError> {
    if a.norm() == 0.0 {
        return Err(PolyError::ZeroScale);
    }
    let q = Complex64::from_polar(1.0, sign.signum() as f64 * std::f64::consts::PI / 3.0);
    let aq = a * q;
    // (1 − aqz)^6 coefficients
    let mut pow6 = [Complex64::new(0.0, 0.0); 7];
    for (k, c) in pow6.iter_mut().enumerate() {
        *c = binomial(6, k) as f64 * (-aq).powu(k as u32);
    }
    let mut coeffs = vec![Complex64::new(0.0, 0.0); 8];
    let seven_q_minus_1 = 7.0 * q - 1.0;
    // (7q−1)(1 − (1−aqz)^6)
    coeffs[0] += seven_q_minus_1 * (1.0 - pow6[0]);
    for k in 1..=6 {
        coeffs[k] -= seven_q_minus_1 * pow6[k];
    }
    // 6qaz(1−aqz)^6
    for k in 0..=6 {
        coeffs[k + 1] += 6.0 * q * a * pow6[k];
    }
    let denom = 42.0 * q * q * a;
    for c in &mut coeffs {
        *c /= denom;
    }
    Ok(ComplexPolynomial::new(coeffs))
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc = 1u64;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// Uniform sample from the class: c₀ = 0, c₁ = 1, c₂..cₙ i.i.d. uniform
/// on the disc of radius 2, with cₙ resampled while |cₙ| < 10⁻³ to keep
/// the degree honest.
pub fn random_in_class<R: Rng>(n: usize, rng: &mut R) -> ComplexPolynomial {
    assert!(n >= 2);
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
    coeffs[1] = Complex64::new(1.0, 0.0);
    for c in coeffs.iter_mut().take(n).skip(2) {
        *c = random_in_disc(2.0, rng);
    }
    loop {
        let c = random_in_disc(2.0, rng);
        if c.norm() >= 1e-3 {
            coeffs[n] = c;
            break;
        }
    }
    ComplexPolynomial::new(coeffs)
}

pub fn random_in_disc<R: Rng>(radius: f64, rng: &mut R) -> Complex64 {
    let r = radius * rng.gen_range(0.0f64..1.0).sqrt();
    let theta = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
    Complex64::from_polar(r, theta)
}

/// (√43/42)², the exact squared maximal ratio of the g₂,₃ family.
pub fn g23_s_squared() -> QuadExt {
    QuadExt::from_rational(rat(43, 1764))
}

/// (1/7)², the exact squared ratio at the distinguished critical point.
pub fn one_seventh_squared() -> QuadExt {
    QuadExt::from_rational(rat(1, 49))
}

/// Verifies that q(z) = p(az)/a leaves T and S unchanged; used by the
/// property suite.
pub fn rescale_invariance_gap(
    f: &ComplexPolynomial,
    a: Complex64,
    tol: f64,
) -> Result<(f64, f64), PolyError> {
    let m0 = metrics(f, tol)?;
    let m1 = metrics(&f.rescale(a)?, tol)?;
    Ok(((m0.t - m1.t).abs(), (m0.s - m1.s).abs()))
}
