//! Complex polynomial arithmetic and root finding with multiplicity
//! handling.
//!
//! Roots are located by simultaneous Aberth–Ehrlich iteration; if the
//! iteration fails to settle within its budget, a complex Hessenberg QR
//! sweep on the companion matrix takes over. Nearby approximations are
//! then merged into multiple roots, since a root of multiplicity m is
//! only determined to accuracy tol^(1/m) from residuals of size tol.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PolyError {
    #[error("root finding did not converge within the iteration budget (best residual {best_residual:.3e})")]
    NonConvergence {
        best_residual: f64,
        /// Best iterate reached when the budget ran out.
        best_roots: Vec<Complex64>,
    },
    #[error("operation undefined for the zero polynomial")]
    DegenerateInput,
    #[error("rescale factor must be nonzero")]
    ZeroScale,
}

/// Dense complex polynomial; `coeffs[k]` multiplies z^k. Trailing zero
/// coefficients are trimmed, so a nonzero polynomial has a nonzero
/// leading coefficient and `degree()` is the index of the last nonzero
/// coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPolynomial {
    coeffs: Vec<Complex64>,
}

impl ComplexPolynomial {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().map_or(false, |c| c.re == 0.0 && c.im == 0.0) {
            coeffs.pop();
        }
        ComplexPolynomial { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&r| Complex64::new(r, 0.0)).collect())
    }

    pub fn zero() -> Self {
        ComplexPolynomial { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero polynomial; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_else(|| Complex64::new(0.0, 0.0))
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Evaluates p and p' in one Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> ComplexPolynomial {
        if self.coeffs.len() <= 1 {
            return ComplexPolynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * k as f64)
            .collect();
        ComplexPolynomial::new(coeffs)
    }

    /// q(z) = p(a·z)/a, the scaling that preserves f(0) = 0, f'(0) = 1;
    /// coefficient rule c_k ↦ a^(k−1)·c_k.
    pub fn rescale(&self, a: Complex64) -> Result<ComplexPolynomial, PolyError> {
        if a.re == 0.0 && a.im == 0.0 {
            return Err(PolyError::ZeroScale);
        }
        // a^(k−1) accumulated from k = 1 so that c₁ maps exactly to c₁.
        let mut pow = Complex64::new(1.0, 0.0);
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if k == 0 {
                    c / a
                } else {
                    let out = c * pow;
                    pow *= a;
                    out
                }
            })
            .collect();
        Ok(ComplexPolynomial::new(coeffs))
    }

    /// Membership in the class of degree-n maps with f(0) = 0, f'(0) = 1,
    /// up to `tol` on the two pinned coefficients.
    pub fn is_in_class(&self, n: usize, tol: f64) -> bool {
        !self.is_zero()
            && self.degree() == n
            && self.coeff(0).norm() <= tol
            && (self.coeff(1) - Complex64::new(1.0, 0.0)).norm() <= tol
    }

    /// Σ |c_k|·|z|^k, the natural residual scale of p near z.
    pub fn residual_scale(&self, z: Complex64) -> f64 {
        let r = z.norm();
        let mut scale = 0.0;
        let mut pw = 1.0;
        for c in &self.coeffs {
            scale += c.norm() * pw;
            pw *= r;
        }
        scale.max(f64::MIN_POSITIVE)
    }

    /// All complex roots with multiplicities. See [`RootSet`].
    pub fn roots(&self, tol: f64) -> Result<RootSet, PolyError> {
        find_roots(self, tol)
    }
}

/// Roots of a polynomial, with detected multiplicities. The reported
/// `residual_bound` satisfies |p(r)| ≤ residual_bound · Σ|c_k||r|^k for
/// every reported root r.
#[derive(Debug, Clone)]
pub struct RootSet {
    pub roots: Vec<(Complex64, usize)>,
    pub residual_bound: f64,
}

impl RootSet {
    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|&(_, m)| m).sum()
    }

    /// Rebuilds lead·∏(z − r)^m for cross-checking against the source
    /// polynomial.
    pub fn reconstruct(&self, lead: Complex64) -> ComplexPolynomial {
        let mut coeffs = vec![lead];
        for &(r, m) in &self.roots {
            for _ in 0..m {
                // multiply by (z - r)
                let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
                for (k, c) in coeffs.iter().enumerate() {
                    next[k + 1] += c;
                    next[k] -= c * r;
                }
                coeffs = next;
            }
        }
        ComplexPolynomial::new(coeffs)
    }
}

const MAX_ABERTH_ITERS: usize = 400;
const QR_ITERS_PER_EIGENVALUE: usize = 60;

fn find_roots(p: &ComplexPolynomial, tol: f64) -> Result<RootSet, PolyError> {
    assert!(tol > 0.0, "tolerance must be positive");
    if p.is_zero() {
        return Err(PolyError::DegenerateInput);
    }
    if p.degree() == 0 {
        return Ok(RootSet { roots: Vec::new(), residual_bound: 0.0 });
    }

    // Split off exact roots at the origin.
    let mut coeffs = p.coeffs.clone();
    let mut zero_mult = 0usize;
    while coeffs[0].norm() == 0.0 && coeffs.len() > 1 {
        coeffs.remove(0);
        zero_mult += 1;
    }
    let reduced = ComplexPolynomial::new(coeffs);

    let approx = if reduced.degree() == 0 {
        Vec::new()
    } else if reduced.degree() == 1 {
        vec![-reduced.coeff(0) / reduced.coeff(1)]
    } else {
        match aberth(&reduced) {
            Ok(zs) => zs,
            Err(best) => {
                // Stalled simultaneous iteration: fall back to companion
                // matrix eigenvalues, keeping whichever result is better.
                match companion_eigenvalues(&reduced) {
                    Some(eigs) => {
                        let polished = polish_all(&reduced, eigs);
                        if max_rel_residual(&reduced, &polished)
                            < max_rel_residual(&reduced, &best)
                        {
                            polished
                        } else {
                            best
                        }
                    }
                    None => best,
                }
            }
        }
    };

    let residual = max_rel_residual(&reduced, &approx);
    if residual > 1e-6 {
        return Err(PolyError::NonConvergence {
            best_residual: residual,
            best_roots: approx,
        });
    }

    // Cluster nearby approximations into multiple roots.
    let scale = approx
        .iter()
        .map(|z| z.norm())
        .fold(1.0f64, f64::max);
    let mut clusters = cluster_roots(&approx, tol, scale);

    // A cluster of size m estimates its root best through the centroid;
    // polishing against p^(m−1) (where the root is simple) then restores
    // full accuracy.
    for cl in &mut clusters {
        if cl.1 >= 2 {
            cl.0 = polish_multiple(&reduced, cl.0, cl.1);
        }
    }

    let mut roots = Vec::new();
    if zero_mult > 0 {
        roots.push((Complex64::new(0.0, 0.0), zero_mult));
    }
    roots.extend(clusters.iter().map(|&(z, m)| (z, m)));
    roots.sort_by(|a, b| {
        (a.0.re, a.0.im)
            .partial_cmp(&(b.0.re, b.0.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });

    let mut residual_bound = 100.0 * f64::EPSILON;
    for &(r, _) in &roots {
        let rel = p.eval(r).norm() / p.residual_scale(r);
        residual_bound = residual_bound.max(rel);
    }

    Ok(RootSet { roots, residual_bound })
}

fn max_rel_residual(p: &ComplexPolynomial, zs: &[Complex64]) -> f64 {
    zs.iter()
        .map(|&z| p.eval(z).norm() / p.residual_scale(z))
        .fold(0.0f64, f64::max)
}

/// Simultaneous Aberth–Ehrlich iteration. Returns Err with the best
/// iterate when the residual target is not hit within the budget.
fn aberth(p: &ComplexPolynomial) -> Result<Vec<Complex64>, Vec<Complex64>> {
    let d = p.degree();
    let lead = p.coeff(d);
    let c0 = p.coeff(0);

    // Start on a circle between the root radius bounds, rotated off any
    // axis of symmetry of the coefficients.
    let radius = if c0.norm() > 0.0 {
        (c0.norm() / lead.norm()).powf(1.0 / d as f64)
    } else {
        1.0
    };
    let cauchy = 1.0
        + p.coeffs[..d]
            .iter()
            .map(|c| (c / lead).norm())
            .fold(0.0f64, f64::max);
    let r = radius.clamp(1e-3, cauchy);
    let mut zs: Vec<Complex64> = (0..d)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / d as f64 + 0.4;
            Complex64::from_polar(r, theta)
        })
        .collect();

    let stop = 40.0 * f64::EPSILON;
    for _ in 0..MAX_ABERTH_ITERS {
        let mut moved = 0.0f64;
        let mut worst = 0.0f64;
        for j in 0..d {
            let z = zs[j];
            let (pv, dv) = p.eval_with_derivative(z);
            let rel = pv.norm() / p.residual_scale(z);
            worst = worst.max(rel);
            if rel <= stop {
                continue;
            }
            let newton = if dv.norm() > 0.0 {
                pv / dv
            } else {
                // Stationary point of p: nudge off it.
                zs[j] += Complex64::new(1e-8 * (1.0 + z.norm()), 1e-8);
                continue;
            };
            let mut sum = Complex64::new(0.0, 0.0);
            for (k, zk) in zs.iter().enumerate() {
                if k != j {
                    let diff = z - zk;
                    if diff.norm() > 0.0 {
                        sum += 1.0 / diff;
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * sum;
            let step = if denom.norm() > 1e-290 { newton / denom } else { newton };
            zs[j] = z - step;
            moved = moved.max(step.norm() / (1.0 + z.norm()));
        }
        if worst <= stop || moved <= f64::EPSILON {
            let final_res = max_rel_residual(p, &zs);
            if final_res <= stop * 4.0 {
                return Ok(zs);
            }
        }
    }
    let res = max_rel_residual(p, &zs);
    if res <= 1e3 * f64::EPSILON {
        Ok(zs)
    } else {
        Err(zs)
    }
}

fn polish_all(p: &ComplexPolynomial, mut zs: Vec<Complex64>) -> Vec<Complex64> {
    for z in zs.iter_mut() {
        for _ in 0..20 {
            let (pv, dv) = p.eval_with_derivative(*z);
            if dv.norm() == 0.0 || pv.norm() <= 2.0 * f64::EPSILON * p.residual_scale(*z) {
                break;
            }
            *z -= pv / dv;
        }
    }
    zs
}

/// Newton iteration on p^(m−1), where a multiplicity-m root of p is
/// simple.
fn polish_multiple(p: &ComplexPolynomial, start: Complex64, m: usize) -> Complex64 {
    let mut q = p.clone();
    for _ in 0..m.saturating_sub(1) {
        q = q.derivative();
    }
    let mut z = start;
    for _ in 0..40 {
        let (pv, dv) = q.eval_with_derivative(z);
        if dv.norm() == 0.0 {
            break;
        }
        let step = pv / dv;
        z -= step;
        if step.norm() <= f64::EPSILON * (1.0 + z.norm()) {
            break;
        }
    }
    z
}

/// Multiplicity-aware clustering, top down: a set of m approximations
/// counts as one multiplicity-m root when it is connected at radius
/// tol^(1/m)·scale — the attainable accuracy of a multiplicity-m root.
/// Components that are too spread for their size are re-split with the
/// smaller radius of their own size.
fn cluster_roots(zs: &[Complex64], tol: f64, scale: f64) -> Vec<(Complex64, usize)> {
    let mut out = Vec::new();
    split_cluster(zs, tol, scale, &mut out);
    out
}

fn split_cluster(pts: &[Complex64], tol: f64, scale: f64, out: &mut Vec<(Complex64, usize)>) {
    let m = pts.len();
    if m == 0 {
        return;
    }
    if m == 1 {
        out.push((pts[0], 1));
        return;
    }
    let radius = 4.0 * tol.powf(1.0 / m as f64) * scale;
    let comps = single_linkage(pts, radius);
    if comps.len() == 1 {
        // One component at the radius matching its size: a single root,
        // estimated by the centroid (which cancels the leading error term
        // of a symmetric cluster).
        let mut centroid = Complex64::new(0.0, 0.0);
        for z in pts {
            centroid += z;
        }
        out.push((centroid / m as f64, m));
    } else {
        for comp in comps {
            split_cluster(&comp, tol, scale, out);
        }
    }
}

fn single_linkage(pts: &[Complex64], radius: f64) -> Vec<Vec<Complex64>> {
    let n = pts.len();
    let mut assigned = vec![false; n];
    let mut comps = Vec::new();
    for start in 0..n {
        if assigned[start] {
            continue;
        }
        let mut stack = vec![start];
        let mut comp = Vec::new();
        assigned[start] = true;
        while let Some(i) = stack.pop() {
            comp.push(pts[i]);
            for j in 0..n {
                if !assigned[j] && (pts[i] - pts[j]).norm() <= radius {
                    assigned[j] = true;
                    stack.push(j);
                }
            }
        }
        comps.push(comp);
    }
    comps
}

/// Eigenvalues of the monic companion matrix via explicit single-shift
/// QR on the Hessenberg form, deflating converged eigenvalues off the
/// bottom of the active window.
fn companion_eigenvalues(p: &ComplexPolynomial) -> Option<Vec<Complex64>> {
    let d = p.degree();
    let lead = p.coeff(d);
    let mut h = vec![vec![Complex64::new(0.0, 0.0); d]; d];
    for i in 1..d {
        h[i][i - 1] = Complex64::new(1.0, 0.0);
    }
    for i in 0..d {
        h[i][d - 1] = -p.coeff(i) / lead;
    }

    let negligible = |h: &Vec<Vec<Complex64>>, i: usize| {
        h[i][i - 1].norm() <= f64::EPSILON * (h[i - 1][i - 1].norm() + h[i][i].norm() + 1e-12)
    };

    let mut eigs = Vec::with_capacity(d);
    let mut hi = d;
    let mut iters = 0usize;
    let mut stagnant = 0usize;
    while hi > 0 {
        if hi == 1 {
            eigs.push(h[0][0]);
            break;
        }
        if negligible(&h, hi - 1) {
            eigs.push(h[hi - 1][hi - 1]);
            hi -= 1;
            stagnant = 0;
            continue;
        }
        iters += 1;
        stagnant += 1;
        if iters > QR_ITERS_PER_EIGENVALUE * d {
            return None;
        }

        // Active window [lo, hi): ends at the first negligible
        // subdiagonal above the bottom.
        let mut lo = hi - 1;
        while lo > 0 && !negligible(&h, lo) {
            lo -= 1;
        }

        // Wilkinson shift from the trailing 2x2 block, with a periodic
        // exceptional shift to break symmetry stalls.
        let a = h[hi - 2][hi - 2];
        let b = h[hi - 2][hi - 1];
        let c = h[hi - 1][hi - 2];
        let e = h[hi - 1][hi - 1];
        let shift = if stagnant % 12 == 0 {
            e + Complex64::new(1.5 * c.norm(), 0.5 * c.norm())
        } else {
            let tr = a + e;
            let det = a * e - b * c;
            let disc = (tr * tr - 4.0 * det).sqrt();
            let l1 = (tr + disc) / 2.0;
            let l2 = (tr - disc) / 2.0;
            if (l1 - e).norm() < (l2 - e).norm() {
                l1
            } else {
                l2
            }
        };

        // Explicit shifted QR via Givens rotations on the window.
        for i in lo..hi {
            h[i][i] -= shift;
        }
        let mut rot = Vec::with_capacity(hi - lo);
        for k in lo..hi - 1 {
            let x = h[k][k];
            let y = h[k + 1][k];
            let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
            if r == 0.0 {
                rot.push((Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)));
                continue;
            }
            let cth = x.conj() / r;
            let sth = y.conj() / r;
            for col in k..hi {
                let hk = h[k][col];
                let hk1 = h[k + 1][col];
                h[k][col] = cth * hk + sth * hk1;
                h[k + 1][col] = -sth.conj() * hk + cth.conj() * hk1;
            }
            rot.push((cth, sth));
        }
        for (idx, &(cth, sth)) in rot.iter().enumerate() {
            let k = lo + idx;
            for row in lo..(k + 2).min(hi) {
                let hk = h[row][k];
                let hk1 = h[row][k + 1];
                h[row][k] = hk * cth.conj() + hk1 * sth.conj();
                h[row][k + 1] = -hk * sth + hk1 * cth;
            }
        }
        for i in lo..hi {
            h[i][i] += shift;
        }
    }
    Some(eigs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// f = (1/7)(1 − (1−z)^7) as floats.
    fn g1_float() -> ComplexPolynomial {
        crate::metrics::extremal_g1_exact(&crate::exact::ExtComplex::one()).poly.to_float()
    }

    #[test]
    fn eval_identity_poly() {
        let p = ComplexPolynomial::from_real(&[0.0, 1.0]);
        assert_eq!(p.eval(c(5.0, 0.0)), c(5.0, 0.0));
    }

    #[test]
    fn eval_extremal_at_one_is_one_seventh() {
        let p = g1_float();
        let v = p.eval(c(1.0, 0.0));
        assert!((v - c(1.0 / 7.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn eval_matches_term_by_term_sum() {
        // p = z + z^7 at 0.5; oracle is naive term summation.
        let p = ComplexPolynomial::from_real(&[0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        let z = c(0.5, 0.0);
        let mut oracle = Complex64::new(0.0, 0.0);
        for (k, ck) in p.coeffs().iter().enumerate() {
            oracle += ck * z.powu(k as u32);
        }
        assert!((p.eval(z) - oracle).norm() < 1e-16);
        assert!((p.eval(z) - c(0.5 + 0.5f64.powi(7), 0.0)).norm() < 1e-16);
    }

    #[test]
    fn derivative_power_rule() {
        let p = ComplexPolynomial::from_real(&[0.0, 1.0]);
        assert_eq!(p.derivative().coeffs(), &[c(1.0, 0.0)]);

        let cz7 = ComplexPolynomial::new(vec![
            c(0.0, 0.0),
            c(1.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(2.0, -1.0),
        ]);
        let d = cz7.derivative();
        assert_eq!(d.coeff(0), c(1.0, 0.0));
        assert_eq!(d.coeff(6), c(14.0, -7.0));
        assert_eq!(d.degree(), 6);
    }

    #[test]
    fn derivative_of_extremal_is_sixth_power() {
        // Chain-rule oracle: expand (1−z)^6 and compare coefficients.
        let d = g1_float().derivative();
        let mut expect = ComplexPolynomial::from_real(&[1.0]);
        for _ in 0..6 {
            let lin = ComplexPolynomial::from_real(&[1.0, -1.0]);
            let mut coeffs = vec![c(0.0, 0.0); expect.coeffs().len() + 1];
            for (i, a) in expect.coeffs().iter().enumerate() {
                for (j, b) in lin.coeffs().iter().enumerate() {
                    coeffs[i + j] += a * b;
                }
            }
            expect = ComplexPolynomial::new(coeffs);
        }
        for k in 0..=6 {
            assert!((d.coeff(k) - expect.coeff(k)).norm() < 1e-14, "coeff {k}");
        }
    }

    #[test]
    fn roots_of_simple_sextic() {
        // 1 + 7z^6: six simple roots of modulus 7^(-1/6).
        let p = ComplexPolynomial::from_real(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 7.0]);
        let rs = p.roots(1e-12).unwrap();
        assert_eq!(rs.roots.len(), 6);
        let want = 7f64.powf(-1.0 / 6.0);
        for &(z, m) in &rs.roots {
            assert_eq!(m, 1);
            assert!((z.norm() - want).abs() < 1e-10);
            assert!(p.eval(z).norm() < 1e-10);
        }
    }

    #[test]
    fn roots_multiplicity_six() {
        // (1−z)^6 → single root 1 with multiplicity 6.
        let p = ComplexPolynomial::from_real(&[1.0, -6.0, 15.0, -20.0, 15.0, -6.0, 1.0]);
        let rs = p.roots(1e-12).unwrap();
        assert_eq!(rs.roots.len(), 1);
        let (z, m) = rs.roots[0];
        assert_eq!(m, 6);
        assert!((z - c(1.0, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn roots_quadratic() {
        let p = ComplexPolynomial::from_real(&[-1.0, 0.0, 1.0]);
        let rs = p.roots(1e-12).unwrap();
        assert_eq!(rs.roots.len(), 2);
        assert!((rs.roots[0].0 - c(-1.0, 0.0)).norm() < 1e-12);
        assert!((rs.roots[1].0 - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn roots_zero_poly_is_degenerate() {
        assert!(matches!(
            ComplexPolynomial::zero().roots(1e-12),
            Err(PolyError::DegenerateInput)
        ));
    }

    #[test]
    fn rescale_rules() {
        let p = ComplexPolynomial::from_real(&[0.0, 1.0]);
        let q = p.rescale(c(3.0, 1.0)).unwrap();
        assert_eq!(q.coeffs(), p.coeffs());

        let p = ComplexPolynomial::from_real(&[0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        let q = p.rescale(c(2.0, 0.0)).unwrap();
        assert_eq!(q.coeff(7), c(64.0, 0.0));
        // Cross-check by evaluation: q(z) = p(az)/a.
        let a = c(2.0, 0.0);
        for z in [c(0.3, 0.1), c(-0.5, 0.7)] {
            assert!((q.eval(z) - p.eval(a * z) / a).norm() < 1e-12);
        }

        assert!(matches!(p.rescale(c(0.0, 0.0)), Err(PolyError::ZeroScale)));
    }

    #[test]
    fn rescale_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let p = crate::metrics::random_in_class(7, &mut rng);
            let a = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            if a.norm() < 0.1 {
                continue;
            }
            let back = p.rescale(a).unwrap().rescale(1.0 / a).unwrap();
            for k in 0..=7 {
                assert!((back.coeff(k) - p.coeff(k)).norm() < 1e-9 * (1.0 + p.coeff(k).norm()));
            }
        }
    }

    #[test]
    fn class_membership() {
        let p = ComplexPolynomial::from_real(&[0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 3.0]);
        assert!(p.is_in_class(7, 1e-12));
        let q = ComplexPolynomial::from_real(&[0.0, 0.0, 1.0]);
        assert!(!q.is_in_class(7, 1e-12));
        assert!(g1_float().is_in_class(7, 1e-12));
    }

    #[test]
    fn derivative_commutes_with_rescale() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let p = crate::metrics::random_in_class(6, &mut rng);
            let a = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            if a.norm() < 0.1 {
                continue;
            }
            let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            // d/dz [p(az)/a] = p'(az)
            let lhs = p.rescale(a).unwrap().derivative().eval(z);
            let rhs = p.derivative().eval(a * z);
            assert!((lhs - rhs).norm() < 1e-9 * (1.0 + rhs.norm()));
        }
    }

    #[test]
    fn derivative_root_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let n = rng.gen_range(2..=7);
            let p = crate::metrics::random_in_class(n, &mut rng);
            let rs = p.derivative().roots(1e-12).unwrap();
            assert_eq!(rs.total_multiplicity(), n - 1);
        }
    }

    #[test]
    fn root_product_reconstruction() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..200 {
            let d = rng.gen_range(2..=8);
            let mut coeffs: Vec<Complex64> = (0..d)
                .map(|_| c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
                .collect();
            coeffs.push(c(1.0, 0.0)); // monic
            let p = ComplexPolynomial::new(coeffs);
            let rs = p.roots(1e-12).unwrap();
            let rebuilt = rs.reconstruct(p.coeff(p.degree()));
            let scale: f64 = p.coeffs().iter().map(|c| c.norm()).fold(1.0, f64::max);
            for k in 0..=p.degree() {
                let diff = (rebuilt.coeff(k) - p.coeff(k)).norm();
                assert!(
                    diff <= 10.0 * rs.residual_bound * scale,
                    "coeff {k} differs by {diff:.3e} (residual bound {:.3e})",
                    rs.residual_bound
                );
            }
        }
    }

    #[test]
    fn companion_fallback_agrees_with_aberth() {
        let p = ComplexPolynomial::from_real(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 7.0]);
        let eigs = companion_eigenvalues(&p).unwrap();
        assert_eq!(eigs.len(), 6);
        for z in eigs {
            assert!(p.eval(z).norm() < 1e-8, "residual {}", p.eval(z).norm());
        }
    }
}
