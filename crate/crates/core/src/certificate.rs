//! The exact certificate: builds S², g = 25200(S² − 1/49) and the five
//! nonnegative sums J₁..J₅ symbolically, verifies the decomposition
//! g = J₁+J₂+J₃+J₄+J₅ down to the structurally zero residual, and runs
//! the full h-chain for the four-variable integrand comparison
//! |b| > |a|, bracket nonnegativity included.
//!
//! Every symbolic quantity is double-checked against an independent
//! numeric path (adaptive quadrature of the defining integrals, or a
//! direct floating-point transcription of the defining sums) before the
//! exact comparison runs, so transcription errors surface as numeric
//! mismatches rather than as mysterious nonzero residuals.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Signed;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::boxpoly::{box_quadratic_min, from_x_poly, substitute_box, BoxDomain, BoxPoly};
use crate::exact::{rat, QuadExt};
use crate::metrics::random_in_disc;
use crate::trig::{ComplexTrig, TrigPoly};

/// Overall scale of the certificate polynomial g.
pub const CERT_SCALE: i64 = 25200;

/// How many residual terms are dumped into failure reports.
pub const RESIDUAL_DUMP_LIMIT: usize = 200;

// ───────────────────────── index sets ─────────────────────────

/// The four index families the certificate sums range over (0-based):
/// all 120 permutations of {0..4}, the 30 ordered pairs of disjoint
/// unordered pairs, the 10 unordered pairs, and the 20 singleton-plus-
/// triple combinations.
#[derive(Debug, Clone)]
pub struct IndexSets {
    pub perms: Vec<[usize; 5]>,
    pub pair_pairs: Vec<([usize; 2], [usize; 2])>,
    pub pairs: Vec<[usize; 2]>,
    pub one_three: Vec<(usize, [usize; 3])>,
}

impl IndexSets {
    pub fn new() -> Self {
        let mut perms = Vec::with_capacity(120);
        for a in 0..5usize {
            for b in 0..5 {
                if b == a {
                    continue;
                }
                for c in 0..5 {
                    if c == a || c == b {
                        continue;
                    }
                    for d in 0..5 {
                        if d == a || d == b || d == c {
                            continue;
                        }
                        let e = 10 - a - b - c - d;
                        perms.push([a, b, c, d, e]);
                    }
                }
            }
        }

        let mut pairs = Vec::with_capacity(10);
        for i in 0..5usize {
            for j in (i + 1)..5 {
                pairs.push([i, j]);
            }
        }

        let mut pair_pairs = Vec::with_capacity(30);
        for p in &pairs {
            for q in &pairs {
                if p.iter().all(|i| !q.contains(i)) {
                    pair_pairs.push((*p, *q));
                }
            }
        }

        let mut one_three = Vec::with_capacity(20);
        for k1 in 0..5usize {
            let rest: Vec<usize> = (0..5).filter(|&i| i != k1).collect();
            for skip in 0..4 {
                let mut triple = [0usize; 3];
                let mut idx = 0;
                for (pos, &v) in rest.iter().enumerate() {
                    if pos != skip {
                        triple[idx] = v;
                        idx += 1;
                    }
                }
                one_three.push((k1, triple));
            }
        }

        IndexSets { perms, pair_pairs, pairs, one_three }
    }
}

impl Default for IndexSets {
    fn default() -> Self {
        Self::new()
    }
}

// ───────────────────────── symbolic builders ─────────────────────────

fn linear_conv(ts: &[ComplexTrig], z: &ComplexTrig) -> Vec<ComplexTrig> {
    // multiply Σ ts[k]·t^k by (1 − z·t)
    let mut out = vec![ComplexTrig::zero(); ts.len() + 1];
    for (k, c) in ts.iter().enumerate() {
        out[k] = out[k].add(c);
        out[k + 1] = out[k + 1].sub(&z.mul(c));
    }
    out
}

fn integrate_t_poly(ts: &[ComplexTrig]) -> ComplexTrig {
    let mut f = ComplexTrig::zero();
    for (k, c) in ts.iter().enumerate() {
        f = f.add(&c.scale(&rat(1, (k + 1) as i64)));
    }
    f
}

/// S² as an exact trigonometric polynomial: expand
/// (1−t)(1−z₁t)···(1−z₅t) in t, integrate termwise over [0,1], and take
/// the squared modulus of the resulting complex value.
pub fn build_s_squared() -> TrigPoly {
    let mut ts = vec![ComplexTrig::one()];
    for j in 1..=5 {
        ts = linear_conv(&ts, &ComplexTrig::z(j).expect("valid index"));
    }
    ts = linear_conv(&ts, &ComplexTrig::one());
    integrate_t_poly(&ts).norm_sq()
}

/// g = 25200·(S² − 1/49); the constant 25200/49 stays rational.
pub fn build_g() -> TrigPoly {
    build_s_squared()
        .scale(&rat(CERT_SCALE, 1))
        .sub(&TrigPoly::constant(rat(CERT_SCALE, 49)))
}

/// Which scoping of the 1/16 prefactor in the J₂ display is in force.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum J2Reading {
    /// 1/16 multiplies all three permutation-sum groups.
    PrefactorAllGroups,
    /// 1/16 multiplies only the first group.
    PrefactorFirstGroup,
}

impl J2Reading {
    pub fn label(&self) -> &'static str {
        match self {
            J2Reading::PrefactorAllGroups => "prefactor-all-groups",
            J2Reading::PrefactorFirstGroup => "prefactor-first-group",
        }
    }
}

struct Symbols {
    d: Vec<TrigPoly>,
    b: Vec<TrigPoly>,
    xdiff_sq: Vec<Vec<TrigPoly>>,
    ydiff_sq: Vec<Vec<TrigPoly>>,
}

fn symbols() -> Symbols {
    let d: Vec<TrigPoly> = (1..=5).map(|i| TrigPoly::d(i).unwrap()).collect();
    let b: Vec<TrigPoly> = (1..=5).map(|i| TrigPoly::b(i).unwrap()).collect();
    let mut xdiff_sq = vec![vec![TrigPoly::zero(); 5]; 5];
    let mut ydiff_sq = vec![vec![TrigPoly::zero(); 5]; 5];
    for i in 0..5 {
        for j in 0..5 {
            if i != j {
                xdiff_sq[i][j] = TrigPoly::x_diff(i + 1, j + 1).unwrap().square();
                ydiff_sq[i][j] = TrigPoly::y_diff(i + 1, j + 1).unwrap().square();
            }
        }
    }
    Symbols { d, b, xdiff_sq, ydiff_sq }
}

/// Literal transcription of Jₖ over the index sets, k ∈ 1..=5. J₂ uses
/// the reading selected by [`select_j2_reading`] by default.
pub fn build_j(k: usize, sets: &IndexSets) -> TrigPoly {
    match k {
        1 => build_j1(sets),
        2 => build_j2(sets, J2Reading::PrefactorAllGroups),
        3 => build_j3(sets),
        4 => build_j4(sets),
        5 => build_j5(sets),
        _ => panic!("J index {k} out of range 1..=5"),
    }
}

fn build_j1(sets: &IndexSets) -> TrigPoly {
    let sy = symbols();
    let mut acc = TrigPoly::zero();
    for p in &sets.perms {
        let ddd = sy.d[p[0]].mul(&sy.d[p[1]]).mul(&sy.d[p[2]]);
        acc.add_assign(&ddd.mul(&sy.ydiff_sq[p[3]][p[4]]).scale(&rat(115, 6)));

        let bsum = sy.b[p[0]].add(&sy.b[p[1]]).add(&sy.b[p[2]]);
        acc.add_assign(
            &bsum
                .square()
                .mul(&sy.d[p[3]].mul(&sy.d[p[4]]))
                .scale(&rat(11, 12)),
        );

        let btail = sy.b[p[3]].add(&sy.b[p[4]]);
        acc.add_assign(&ddd.mul(&btail.square()).scale(&rat(205, 48)));

        let dsum = sy.d[p[0]].add(&sy.d[p[1]]).add(&sy.d[p[2]]);
        let inner = sy.b[p[3]]
            .square()
            .mul(&sy.b[p[4]].square())
            .scale(&rat(19, 1))
            .add(&sy.ydiff_sq[p[3]][p[4]].scale(&rat(96, 1)));
        acc.add_assign(&dsum.mul(&inner).scale(&rat(1, 144)));
    }
    for (e, f) in &sets.pair_pairs {
        acc.add_assign(
            &sy.xdiff_sq[e[0]][e[1]]
                .mul(&sy.ydiff_sq[f[0]][f[1]])
                .scale(&rat(4, 1)),
        );
    }
    acc
}

fn build_j2(sets: &IndexSets, reading: J2Reading) -> TrigPoly {
    let sy = symbols();
    let mut acc = TrigPoly::zero();
    for p in &sets.perms {
        let head = TrigPoly::from_int(4).add(&sy.d[p[0]].scale(&rat(15, 1)));
        let g1 = head
            .mul(&sy.ydiff_sq[p[1]][p[2]].mul(&sy.ydiff_sq[p[3]][p[4]]))
            .scale(&rat(2, 1));
        let bsum = sy.b[p[1]]
            .add(&sy.b[p[2]])
            .add(&sy.b[p[3]])
            .add(&sy.b[p[4]]);
        let g2 = sy.d[p[0]].mul(&bsum.square()).scale(&rat(3, 8));
        let dsum = sy.d[p[1]]
            .add(&sy.d[p[2]])
            .add(&sy.d[p[3]])
            .add(&sy.d[p[4]]);
        let g3 = sy.b[p[0]].square().mul(&dsum).scale(&rat(43, 12));
        match reading {
            J2Reading::PrefactorAllGroups => {
                acc.add_assign(&g1.add(&g2).add(&g3).scale(&rat(1, 16)));
            }
            J2Reading::PrefactorFirstGroup => {
                acc.add_assign(&g1.scale(&rat(1, 16)));
                acc.add_assign(&g2);
                acc.add_assign(&g3);
            }
        }
    }
    for (k1, triple) in &sets.one_three {
        let ddd = sy.d[triple[0]].mul(&sy.d[triple[1]]).mul(&sy.d[triple[2]]);
        acc.add_assign(&sy.b[*k1].square().mul(&ddd).scale(&rat(25, 4)));
    }
    acc
}

fn build_j3(sets: &IndexSets) -> TrigPoly {
    let sy = symbols();
    let mut acc = TrigPoly::zero();
    for (e, f) in &sets.pair_pairs {
        let diff = sy.b[e[0]].mul(&sy.b[e[1]]).sub(&sy.b[f[0]].mul(&sy.b[f[1]]));
        acc.add_assign(&diff.square().scale(&rat(1, 4)));
    }
    acc
}

fn build_j4(sets: &IndexSets) -> TrigPoly {
    let sy = symbols();
    let mut acc = TrigPoly::zero();
    for t in &sets.pairs {
        let term = sy.xdiff_sq[t[0]][t[1]]
            .scale(&rat(7, 1))
            .add(&sy.ydiff_sq[t[0]][t[1]].scale(&rat(10, 1)));
        acc.add_assign(&term.scale(&rat(2, 1)));
    }
    acc
}

fn build_j5(sets: &IndexSets) -> TrigPoly {
    let sy = symbols();
    let mut acc = TrigPoly::zero();
    for p in &sets.perms {
        let dtail = sy.d[p[3]].add(&sy.d[p[4]]);
        let bmix = sy.b[p[0]].add(&sy.b[p[1]].mul(&sy.b[p[2]]));
        let t1 = bmix.square().mul(&dtail).scale(&rat(7, 1));
        let t2 = sy.d[p[0]]
            .square()
            .mul(&sy.ydiff_sq[p[1]][p[2]])
            .mul(&dtail)
            .scale(&rat(720, 1));
        acc.add_assign(&t1.add(&t2).scale(&rat(1, 192)));
    }
    acc
}

// ───────────────────────── numeric oracles ─────────────────────────

/// Adaptive Simpson quadrature for complex integrands on [0, 1].
pub fn adaptive_simpson<F: Fn(f64) -> Complex64>(f: &F, tol: f64) -> Complex64 {
    fn simpson(fa: Complex64, fm: Complex64, fb: Complex64, h: f64) -> Complex64 {
        (fa + 4.0 * fm + fb) * (h / 6.0)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> Complex64>(
        f: &F,
        a: f64,
        b: f64,
        fa: Complex64,
        fm: Complex64,
        fb: Complex64,
        whole: Complex64,
        tol: f64,
        depth: usize,
    ) -> Complex64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, m - a);
        let right = simpson(fm, frm, fb, b - m);
        let delta = left + right - whole;
        if depth == 0 || delta.norm() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let fa = f(0.0);
    let fm = f(0.5);
    let fb = f(1.0);
    let whole = simpson(fa, fm, fb, 1.0);
    recurse(f, 0.0, 1.0, fa, fm, fb, whole, tol, 40)
}

/// ∫₀¹ (1−t)·∏(1−zⱼt) dt by adaptive quadrature of the product form.
pub fn s_integral_quadrature(zs: &[Complex64; 5]) -> Complex64 {
    adaptive_simpson(
        &|t| {
            let mut v = Complex64::new(1.0 - t, 0.0);
            for z in zs {
                v *= Complex64::new(1.0, 0.0) - z * t;
            }
            v
        },
        1e-13,
    )
}

/// The a and b integrands of the four-variable comparison, by adaptive
/// quadrature: a carries the extra factor t.
pub fn ab_integral_quadrature(zs: &[Complex64; 4]) -> (Complex64, Complex64) {
    let prod = |t: f64| {
        let mut v = Complex64::new(1.0 - t, 0.0);
        for z in zs {
            v *= Complex64::new(1.0, 0.0) - z * t;
        }
        v
    };
    let a = adaptive_simpson(&|t| t * prod(t), 1e-13);
    let b = adaptive_simpson(&prod, 1e-13);
    (a, b)
}

/// The a and b integrals by exact termwise integration of the expanded
/// t-polynomial (independent of the quadrature path).
pub fn ab_integral_coefficients(zs: &[Complex64; 4]) -> (Complex64, Complex64) {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for z in zs {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (k, ck) in c.iter().enumerate() {
            next[k] += ck;
            next[k + 1] -= z * ck;
        }
        c = next;
    }
    // multiply by (1 − t)
    let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
    for (k, ck) in c.iter().enumerate() {
        next[k] += ck;
        next[k + 1] -= ck;
    }
    let c = next;
    let mut b = Complex64::new(0.0, 0.0);
    let mut a = Complex64::new(0.0, 0.0);
    for (k, ck) in c.iter().enumerate() {
        b += ck / (k + 1) as f64;
        a += ck / (k + 2) as f64;
    }
    (a, b)
}

fn angles_to_circle(angles: &[f64]) -> Vec<Complex64> {
    angles.iter().map(|&p| Complex64::from_polar(1.0, p)).collect()
}

/// g(φ) through the quadrature path.
pub fn numeric_g(angles: &[f64; 5]) -> f64 {
    let zs = angles_to_circle(angles);
    let v = s_integral_quadrature(&[zs[0], zs[1], zs[2], zs[3], zs[4]]);
    CERT_SCALE as f64 * (v.norm_sqr() - 1.0 / 49.0)
}

/// Floating-point transcription of Jₖ straight from the defining sums.
pub fn numeric_j(k: usize, sets: &IndexSets, angles: &[f64; 5], reading: J2Reading) -> f64 {
    let x: Vec<f64> = angles.iter().map(|a| a.cos()).collect();
    let y: Vec<f64> = angles.iter().map(|a| a.sin()).collect();
    let d: Vec<f64> = x.iter().map(|v| 1.0 - v).collect();
    let b: Vec<f64> = x.iter().map(|v| 1.0 - 2.0 * v).collect();
    let xd = |i: usize, j: usize| x[i] - x[j];
    let yd = |i: usize, j: usize| y[i] - y[j];
    match k {
        1 => {
            let mut s = 0.0;
            for p in &sets.perms {
                s += 115.0 / 6.0 * d[p[0]] * d[p[1]] * d[p[2]] * yd(p[3], p[4]).powi(2);
                s += 11.0 / 12.0
                    * (b[p[0]] + b[p[1]] + b[p[2]]).powi(2)
                    * d[p[3]]
                    * d[p[4]];
                s += 205.0 / 48.0 * d[p[0]] * d[p[1]] * d[p[2]] * (b[p[3]] + b[p[4]]).powi(2);
                s += 1.0 / 144.0
                    * (d[p[0]] + d[p[1]] + d[p[2]])
                    * (19.0 * b[p[3]].powi(2) * b[p[4]].powi(2) + 96.0 * yd(p[3], p[4]).powi(2));
            }
            for (e, f) in &sets.pair_pairs {
                s += 4.0 * xd(e[0], e[1]).powi(2) * yd(f[0], f[1]).powi(2);
            }
            s
        }
        2 => {
            let mut s = 0.0;
            for p in &sets.perms {
                let g1 = 2.0
                    * (15.0 * d[p[0]] + 4.0)
                    * yd(p[1], p[2]).powi(2)
                    * yd(p[3], p[4]).powi(2);
                let g2 = 3.0 / 8.0
                    * d[p[0]]
                    * (b[p[1]] + b[p[2]] + b[p[3]] + b[p[4]]).powi(2);
                let g3 = 43.0 / 12.0
                    * b[p[0]].powi(2)
                    * (d[p[1]] + d[p[2]] + d[p[3]] + d[p[4]]);
                s += match reading {
                    J2Reading::PrefactorAllGroups => (g1 + g2 + g3) / 16.0,
                    J2Reading::PrefactorFirstGroup => g1 / 16.0 + g2 + g3,
                };
            }
            for (k1, t) in &sets.one_three {
                s += 25.0 / 4.0 * b[*k1].powi(2) * d[t[0]] * d[t[1]] * d[t[2]];
            }
            s
        }
        3 => {
            let mut s = 0.0;
            for (e, f) in &sets.pair_pairs {
                s += 0.25 * (b[e[0]] * b[e[1]] - b[f[0]] * b[f[1]]).powi(2);
            }
            s
        }
        4 => {
            let mut s = 0.0;
            for t in &sets.pairs {
                s += 2.0 * (7.0 * xd(t[0], t[1]).powi(2) + 10.0 * yd(t[0], t[1]).powi(2));
            }
            s
        }
        5 => {
            let mut s = 0.0;
            for p in &sets.perms {
                let dtail = d[p[3]] + d[p[4]];
                s += (7.0 * (b[p[0]] + b[p[1]] * b[p[2]]).powi(2) * dtail
                    + 720.0 * d[p[0]].powi(2) * yd(p[1], p[2]).powi(2) * dtail)
                    / 192.0;
            }
            s
        }
        _ => panic!("J index {k} out of range 1..=5"),
    }
}

// ───────────────────────── lemma quantities ─────────────────────────

/// The exact four-variable integrand comparison: |a|², |b|², the scaled
/// difference 11025(|b|² − |a|²), and the hard-coded display expansion it
/// must reproduce.
#[derive(Debug, Clone)]
pub struct LemmaIntegrands {
    pub a_sq: TrigPoly,
    pub b_sq: TrigPoly,
    /// 11025·(|b|² − |a|²) in normal form.
    pub scaled_diff: TrigPoly,
    /// The display expansion, transcribed term group by term group.
    pub display: TrigPoly,
}

/// Expands a = ∫₀¹ t(1−t)∏(1−zₖt) dt and b = ∫₀¹ (1−t)∏(1−zₖt) dt over
/// four angle variables and forms 11025(|b|² − |a|²).
pub fn build_lemma_integrands() -> LemmaIntegrands {
    let mut ts = vec![ComplexTrig::one()];
    for j in 1..=4 {
        ts = linear_conv(&ts, &ComplexTrig::z(j).expect("valid index"));
    }
    ts = linear_conv(&ts, &ComplexTrig::one()); // the (1−t) factor
    let b = integrate_t_poly(&ts);
    // the a-integrand has one extra power of t: ∫ t^(k+1) = 1/(k+2)
    let mut a = ComplexTrig::zero();
    for (k, c) in ts.iter().enumerate() {
        a = a.add(&c.scale(&rat(1, (k + 2) as i64)));
    }
    let a_sq = a.norm_sq();
    let b_sq = b.norm_sq();
    let scaled_diff = b_sq.sub(&a_sq).scale(&rat(11025, 1));
    LemmaIntegrands { a_sq, b_sq, scaled_diff, display: lemma_display() }
}

/// The displayed expansion of 11025(|b|² − |a|²).
fn lemma_display() -> TrigPoly {
    let x: Vec<TrigPoly> = (1..=4).map(|i| TrigPoly::x(i).unwrap()).collect();
    let y: Vec<TrigPoly> = (1..=4).map(|i| TrigPoly::y(i).unwrap()).collect();
    let mut p = TrigPoly::from_int(3730);
    p.add_assign(&x[0].mul(&x[1]).mul(&x[2]).mul(&x[3]).scale(&rat(1064, 1)));
    for xi in &x {
        p.sub_assign(&xi.scale(&rat(2359, 1)));
    }
    p.add_assign(&y[0].mul(&y[1]).mul(&y[2]).mul(&y[3]).scale(&rat(84, 1)));
    for i in 0..4 {
        for j in (i + 1)..4 {
            p.add_assign(&x[i].mul(&x[j]).scale(&rat(1701, 1)));
            p.sub_assign(&y[i].mul(&y[j]).scale(&rat(329, 1)));
        }
    }
    for i in 0..4 {
        for j in (i + 1)..4 {
            for k in (j + 1)..4 {
                p.sub_assign(&x[i].mul(&x[j]).mul(&x[k]).scale(&rat(1316, 1)));
            }
        }
    }
    for i in 0..4 {
        for j in (i + 1)..4 {
            for k in 0..4 {
                if k != i && k != j {
                    p.add_assign(&x[k].mul(&y[i]).mul(&y[j]).scale(&rat(238, 1)));
                }
            }
        }
    }
    for i in 0..4 {
        for j in (i + 1)..4 {
            let rest: Vec<usize> = (0..4).filter(|&k| k != i && k != j).collect();
            p.sub_assign(
                &x[rest[0]]
                    .mul(&x[rest[1]])
                    .mul(&y[i])
                    .mul(&y[j])
                    .scale(&rat(182, 1)),
            );
        }
    }
    p
}

/// (i, j) ↦ complementary (k, l) for the six bracket subtractions, in
/// display order.
const BRACKET_PAIRS: [((usize, usize), (usize, usize)); 6] = [
    ((1, 2), (3, 4)),
    ((1, 3), (2, 4)),
    ((1, 4), (2, 3)),
    ((2, 3), (1, 4)),
    ((2, 4), (1, 3)),
    ((3, 4), (1, 2)),
];

/// 301 − 238xₖ + 14xₖ² − 238xₗ + 182xₖxₗ + 14xₗ² (1-based indices).
fn bracket_poly(k: usize, l: usize) -> TrigPoly {
    let xk = TrigPoly::x(k).unwrap();
    let xl = TrigPoly::x(l).unwrap();
    let mut p = TrigPoly::from_int(301);
    p.sub_assign(&xk.scale(&rat(238, 1)));
    p.add_assign(&xk.square().scale(&rat(14, 1)));
    p.sub_assign(&xl.scale(&rat(238, 1)));
    p.add_assign(&xk.mul(&xl).scale(&rat(182, 1)));
    p.add_assign(&xl.square().scale(&rat(14, 1)));
    p
}

fn numeric_bracket(u: f64, v: f64) -> f64 {
    301.0 - 238.0 * u + 14.0 * u * u - 238.0 * v + 182.0 * u * v + 14.0 * v * v
}

/// h evaluated from the display, in floats (mirror of the symbolic
/// transcription, used only as an oracle).
pub fn numeric_h(angles: &[f64; 4]) -> f64 {
    let zs = angles_to_circle(angles);
    let (a, b) = ab_integral_quadrature(&[zs[0], zs[1], zs[2], zs[3]]);
    11025.0 * (b.norm_sqr() - a.norm_sqr())
}

pub fn numeric_h1(angles: &[f64; 4]) -> f64 {
    let y: Vec<f64> = angles.iter().map(|a| a.sin()).collect();
    numeric_h(angles)
        - 7.0
            * ((y[0] - y[1]).powi(2) * (y[2] - y[3]).powi(2)
                + (y[0] - y[2]).powi(2) * (y[1] - y[3]).powi(2)
                + (y[0] - y[3]).powi(2) * (y[2] - y[1]).powi(2))
}

pub fn numeric_h2(angles: &[f64; 4]) -> f64 {
    let x: Vec<f64> = angles.iter().map(|a| a.cos()).collect();
    let y: Vec<f64> = angles.iter().map(|a| a.sin()).collect();
    let mut v = numeric_h1(angles);
    for ((i, j), (k, l)) in BRACKET_PAIRS {
        v -= 0.5 * numeric_bracket(x[k - 1], x[l - 1]) * (y[i - 1] - y[j - 1]).powi(2);
    }
    v
}

// ───────────────────────── h₂ display groups ─────────────────────────

/// One atom of a manifestly nonnegative product on [0, 1]⁴.
enum Atom {
    /// A box variable wᵢ (1-based), nonnegative on the unit box.
    Var(usize),
    /// The square of an arbitrary polynomial.
    Square(BoxPoly),
}

/// coefficient · ∏ atoms, with coefficient ≥ 0 checked.
struct NonnegProduct {
    coef: BigRational,
    atoms: Vec<Atom>,
}

impl NonnegProduct {
    fn poly(&self) -> BoxPoly {
        let mut p = BoxPoly::constant(self.coef.clone(), BoxDomain::Unit);
        for a in &self.atoms {
            match a {
                Atom::Var(i) => p = p.mul(&BoxPoly::var(*i, BoxDomain::Unit).unwrap()),
                Atom::Square(q) => p = p.mul(&q.square()),
            }
        }
        p
    }

    fn manifestly_nonnegative(&self) -> bool {
        !self.coef.is_negative()
    }
}

/// A displayed summand group of h₂ with its nonnegativity evidence.
pub struct H2Group {
    pub description: String,
    products: Vec<NonnegProduct>,
}

impl H2Group {
    pub fn poly(&self) -> BoxPoly {
        let mut p = BoxPoly::zero(BoxDomain::Unit);
        for prod in &self.products {
            p.add_assign(&prod.poly());
        }
        p
    }

    pub fn manifestly_nonnegative(&self) -> bool {
        self.products.iter().all(|p| p.manifestly_nonnegative())
    }
}

fn wvar(i: usize) -> BoxPoly {
    BoxPoly::var(i, BoxDomain::Unit).unwrap()
}

fn wdiff(i: usize, j: usize) -> BoxPoly {
    wvar(i).sub(&wvar(j))
}

/// The displayed h₂ decomposition: constant 216, the w₁w₂w₃w₄ term, and
/// the four structured groups, each a sum of products of box variables
/// and squares with positive coefficients.
pub fn h2_display_groups() -> Vec<H2Group> {
    let mut groups = Vec::new();

    groups.push(H2Group {
        description: "constant 216".to_string(),
        products: vec![NonnegProduct { coef: rat(216, 1), atoms: vec![] }],
    });

    groups.push(H2Group {
        description: "17024·w1·w2·w3·w4".to_string(),
        products: vec![NonnegProduct {
            coef: rat(17024, 1),
            atoms: vec![Atom::Var(1), Atom::Var(2), Atom::Var(3), Atom::Var(4)],
        }],
    });

    let mut lin = Vec::new();
    for i in 1..=4 {
        lin.push(NonnegProduct { coef: rat(70, 1), atoms: vec![Atom::Var(i)] });
    }
    for i in 1..=4 {
        for j in (i + 1)..=4 {
            lin.push(NonnegProduct {
                coef: rat(70, 1),
                atoms: vec![Atom::Square(wdiff(i, j))],
            });
        }
    }
    groups.push(H2Group {
        description: "70·(Σ wi + Σ (wi−wj)²)".to_string(),
        products: lin,
    });

    // 112·Σ (wk + wl)·(wi − wj)² over complementary pairs
    let mut sums = Vec::new();
    for ((i, j), (k, l)) in BRACKET_PAIRS {
        for v in [k, l] {
            sums.push(NonnegProduct {
                coef: rat(112, 1),
                atoms: vec![Atom::Var(v), Atom::Square(wdiff(i, j))],
            });
        }
    }
    groups.push(H2Group {
        description: "112·Σ (wk+wl)·(wi−wj)² over complementary pairs".to_string(),
        products: sums,
    });

    // 56·Σ_m (pair products of the complement)·((5wm−1)² + wm²)
    let mut fives = Vec::new();
    for m in 1..=4usize {
        let rest: Vec<usize> = (1..=4).filter(|&i| i != m).collect();
        let pairs = [
            (rest[0], rest[1]),
            (rest[0], rest[2]),
            (rest[1], rest[2]),
        ];
        let five = wvar(m)
            .scale(&rat(5, 1))
            .sub(&BoxPoly::from_int(1, BoxDomain::Unit));
        for (i, j) in pairs {
            fives.push(NonnegProduct {
                coef: rat(56, 1),
                atoms: vec![Atom::Var(i), Atom::Var(j), Atom::Square(five.clone())],
            });
            fives.push(NonnegProduct {
                coef: rat(56, 1),
                atoms: vec![Atom::Var(i), Atom::Var(j), Atom::Square(wvar(m))],
            });
        }
    }
    groups.push(H2Group {
        description: "56·Σ (wiwj+wiwk+wjwk)·((5wm−1)² + wm²)".to_string(),
        products: fives,
    });

    let mut quads = Vec::new();
    for i in 1..=4usize {
        for j in (i + 1)..=4 {
            let q = wvar(i)
                .mul(&wvar(j))
                .scale(&rat(4, 1))
                .sub(&BoxPoly::from_int(1, BoxDomain::Unit));
            quads.push(NonnegProduct { coef: rat(14, 1), atoms: vec![Atom::Square(q)] });
        }
    }
    groups.push(H2Group {
        description: "14·Σ (4wiwj−1)²".to_string(),
        products: quads,
    });

    groups
}

// ───────────────────────── report types ─────────────────────────

#[derive(Debug, Clone, Serialize)]
pub struct OracleSample {
    pub angles: Vec<f64>,
    pub discrepancy: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentitySection {
    pub pass: bool,
    pub j2_reading: String,
    pub j2_reading_gap: f64,
    pub numeric_max_discrepancy: f64,
    pub residual_terms: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_dump: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaExpansionSection {
    pub pass: bool,
    pub display_matched_verbatim: bool,
    pub constant_term: String,
    pub x1x2x3x4_coefficient: String,
    pub residual_terms: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_dump: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HChainStep {
    pub step: String,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_min: Option<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct H2TermVerdict {
    pub term: String,
    pub nonnegative: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EqualityZero {
    pub point: String,
    pub exact_zero: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EqualitySection {
    pub pass: bool,
    pub exact_zeros: Vec<EqualityZero>,
    pub positive_samples: usize,
    pub min_positive: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaVerification {
    pub pass: bool,
    pub expansion: LemmaExpansionSection,
    pub h_chain: Vec<HChainStep>,
    pub h2_terms: Vec<H2TermVerdict>,
}

/// The full machine-readable verdict.
#[derive(Debug, Clone, Serialize)]
pub struct CertificateReport {
    pub identity_id1: IdentitySection,
    pub lemma_expansion: LemmaExpansionSection,
    pub h_chain: Vec<HChainStep>,
    pub h2_terms: Vec<H2TermVerdict>,
    pub equality_cases: EqualitySection,
    pub numeric_oracle: Vec<OracleSample>,
    pub pass: bool,
}

// ───────────────────────── verifications ─────────────────────────

fn random_angles<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n)
        .map(|_| rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
        .collect()
}

/// Validates the J₂ prefactor scoping numerically before any symbolic
/// work: the reading whose numeric sum matches g − (J₁+J₃+J₄+J₅) wins.
pub fn select_j2_reading(sets: &IndexSets, seed: u64) -> (J2Reading, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gap_all = 0.0f64;
    let mut gap_first = 0.0f64;
    for _ in 0..24 {
        let a = random_angles(&mut rng, 5);
        let angles = [a[0], a[1], a[2], a[3], a[4]];
        let g = numeric_g(&angles);
        let other: f64 = [1usize, 3, 4, 5]
            .iter()
            .map(|&k| numeric_j(k, sets, &angles, J2Reading::PrefactorAllGroups))
            .sum();
        let target = g - other;
        let ja = numeric_j(2, sets, &angles, J2Reading::PrefactorAllGroups);
        let jf = numeric_j(2, sets, &angles, J2Reading::PrefactorFirstGroup);
        let scale = 1.0f64.max(target.abs());
        gap_all = gap_all.max((ja - target).abs() / scale);
        gap_first = gap_first.max((jf - target).abs() / scale);
    }
    if gap_all <= gap_first {
        (J2Reading::PrefactorAllGroups, gap_all)
    } else {
        (J2Reading::PrefactorFirstGroup, gap_first)
    }
}

/// Exact check of g = J₁+J₂+J₃+J₄+J₅, preceded by the numeric oracle at
/// `oracle_samples` seeded tuples.
pub fn verify_identity_id1(oracle_samples: usize, seed: u64) -> (IdentitySection, Vec<OracleSample>) {
    let sets = IndexSets::new();
    let (reading, gap) = select_j2_reading(&sets, seed);

    let g = build_g();

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);
    let mut oracle = Vec::with_capacity(oracle_samples);
    let mut max_disc = 0.0f64;
    for _ in 0..oracle_samples {
        let a = random_angles(&mut rng, 5);
        let angles = [a[0], a[1], a[2], a[3], a[4]];
        let sym = g.eval_at(&angles);
        let num = numeric_g(&angles);
        let disc = (sym - num).abs() / 1.0f64.max(num.abs());
        max_disc = max_disc.max(disc);
        oracle.push(OracleSample { angles: a, discrepancy: disc });
    }

    let mut jsum = TrigPoly::zero();
    for k in [1usize, 3, 4, 5] {
        jsum.add_assign(&build_j(k, &sets));
    }
    jsum.add_assign(&build_j2(&sets, reading));

    let residual = g.sub(&jsum);
    let pass = residual.is_zero();
    let section = IdentitySection {
        pass,
        j2_reading: reading.label().to_string(),
        j2_reading_gap: gap,
        numeric_max_discrepancy: max_disc,
        residual_terms: residual.num_terms(),
        residual_dump: if pass {
            None
        } else {
            Some(residual.to_text(RESIDUAL_DUMP_LIMIT))
        },
    };
    (section, oracle)
}

/// Runs the whole h-chain exactly: display match, the h → h₁ step, the
/// six bracket minimizations, y-elimination, the w-substitution match
/// against the displayed h₂, and the per-group nonnegativity verdicts.
pub fn verify_lemma1() -> LemmaVerification {
    let li = build_lemma_integrands();

    let residual = li.scaled_diff.sub(&li.display);
    let matched = residual.is_zero();
    let expansion = LemmaExpansionSection {
        pass: matched,
        display_matched_verbatim: matched,
        constant_term: li.scaled_diff.coefficient_of(&[], &[]).to_string(),
        x1x2x3x4_coefficient: li
            .scaled_diff
            .coefficient_of(&[(1, 1), (2, 1), (3, 1), (4, 1)], &[])
            .to_string(),
        residual_terms: residual.num_terms(),
        residual_dump: if matched {
            None
        } else {
            Some(residual.to_text(RESIDUAL_DUMP_LIMIT))
        },
    };

    let mut h_chain = Vec::new();

    // h → h₁: subtract the three products of squared sin differences.
    let h = li.scaled_diff.clone();
    let mut sub1 = TrigPoly::zero();
    for ((i, j), (k, l)) in [((1, 2), (3, 4)), ((1, 3), (2, 4)), ((1, 4), (3, 2))] {
        sub1.add_assign(
            &TrigPoly::y_diff(i, j)
                .unwrap()
                .square()
                .mul(&TrigPoly::y_diff(k, l).unwrap().square()),
        );
    }
    sub1 = sub1.scale(&rat(7, 1));
    let h1 = h.sub(&sub1);
    h_chain.push(HChainStep {
        step: "h_minus_h1".to_string(),
        detail: "h − h₁ equals 7·Σ (yi−yj)²(yk−yl)², a sum of products of squares".to_string(),
        exact_min: None,
        pass: h.sub(&h1) == sub1,
    });

    // Each yᵢyⱼ cofactor of h₁ must be the negated bracket, and each
    // bracket must be nonnegative on [−1,1]².
    let mut brackets_ok = true;
    for ((i, j), (k, l)) in BRACKET_PAIRS {
        let bracket = bracket_poly(k, l);
        let cof = h1.y_pair_cofactor(i, j).unwrap();
        let cof_matches = cof == bracket.neg();
        let min = from_x_poly(&bracket)
            .ok()
            .and_then(|b| box_quadratic_min(&b).ok());
        let (min_str, nonneg) = match &min {
            Some(v) => (v.to_string(), !v.is_negative()),
            None => ("unavailable".to_string(), false),
        };
        let pass = cof_matches && nonneg;
        brackets_ok &= pass;
        h_chain.push(HChainStep {
            step: format!("bracket_y{i}y{j}"),
            detail: format!(
                "coefficient of y{i}y{j} in h₁ is −(301 − 238x{k} + 14x{k}² − 238x{l} + 182x{k}x{l} + 14x{l}²); cofactor match: {cof_matches}"
            ),
            exact_min: Some(min_str),
            pass,
        });
    }

    // Subtract (1/2)·bracket·(yᵢ−yⱼ)² for the six pairs; all sin
    // variables must cancel exactly.
    let mut h2pre = h1.clone();
    for ((i, j), (k, l)) in BRACKET_PAIRS {
        let term = bracket_poly(k, l)
            .mul(&TrigPoly::y_diff(i, j).unwrap().square())
            .scale(&rat(1, 2));
        h2pre.sub_assign(&term);
    }
    let y_free = h2pre.is_x_only();
    h_chain.push(HChainStep {
        step: "y_elimination".to_string(),
        detail: "after the six bracket subtractions the result depends only on x1..x4"
            .to_string(),
        exact_min: None,
        pass: y_free,
    });

    // Substitute xₖ = 1 − 2wₖ and compare with the displayed h₂.
    let groups = h2_display_groups();
    let mut h2_match = false;
    let mut h2_terms = Vec::new();
    if y_free {
        let h2 = substitute_box(&h2pre).expect("sin variables already eliminated");
        let mut display_total = BoxPoly::zero(BoxDomain::Unit);
        for g in &groups {
            let poly = g.poly();
            display_total.add_assign(&poly);
            h2_terms.push(H2TermVerdict {
                term: g.description.clone(),
                nonnegative: g.manifestly_nonnegative(),
            });
        }
        h2_match = h2 == display_total;
        h_chain.push(HChainStep {
            step: "h2_matches_display".to_string(),
            detail: format!(
                "w-substituted polynomial equals the displayed h₂ (display constant group 216, canonical constant {}, w1w2w3w4 coefficient {})",
                h2.coefficient(&[0, 0, 0, 0]),
                h2.coefficient(&[1, 1, 1, 1])
            ),
            exact_min: None,
            pass: h2_match,
        });
    } else {
        h_chain.push(HChainStep {
            step: "h2_matches_display".to_string(),
            detail: "skipped: sin variables survived the elimination step".to_string(),
            exact_min: None,
            pass: false,
        });
    }

    let terms_ok = h2_terms.iter().all(|t| t.nonnegative) && !h2_terms.is_empty();
    let pass = matched && brackets_ok && y_free && h2_match && terms_ok
        && h_chain.iter().all(|s| s.pass);
    LemmaVerification { pass, expansion, h_chain, h2_terms }
}

/// The three equality points of the torus minimization, checked in exact
/// Q(√3) arithmetic, plus strict positivity on a seeded random panel.
pub fn verify_equality_cases(samples: usize, seed: u64) -> EqualitySection {
    let g = build_g();
    let mut exact_zeros = Vec::new();
    let mut all_zero = true;
    for (label, x, y) in [
        ("phi=0", QuadExt::one(), QuadExt::zero()),
        (
            "phi=pi/3",
            QuadExt::from_rational(rat(1, 2)),
            QuadExt::sqrt3_times(rat(1, 2)),
        ),
        (
            "phi=-pi/3",
            QuadExt::from_rational(rat(1, 2)),
            QuadExt::sqrt3_times(rat(-1, 2)),
        ),
    ] {
        let xs = [x.clone(), x.clone(), x.clone(), x.clone(), x.clone()];
        let ys = [y.clone(), y.clone(), y.clone(), y.clone(), y.clone()];
        let v = g.eval_exact(&xs, &ys);
        let exact_zero = v.is_zero();
        all_zero &= exact_zero;
        exact_zeros.push(EqualityZero { point: label.to_string(), exact_zero });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_positive = f64::INFINITY;
    let mut positive = true;
    for _ in 0..samples {
        let a = random_angles(&mut rng, 5);
        let v = g.eval_at(&[a[0], a[1], a[2], a[3], a[4]]);
        min_positive = min_positive.min(v);
        positive &= v > 0.0;
    }

    EqualitySection {
        pass: all_zero && positive,
        exact_zeros,
        positive_samples: samples,
        min_positive,
    }
}

/// Runs every certificate check and assembles the report.
pub fn verify_certificate(oracle_samples: usize, equality_samples: usize, seed: u64) -> CertificateReport {
    let (identity_id1, numeric_oracle) = verify_identity_id1(oracle_samples, seed);
    let lemma = verify_lemma1();
    let equality_cases = verify_equality_cases(equality_samples, seed.wrapping_add(1));
    let pass = identity_id1.pass && lemma.pass && equality_cases.pass;
    CertificateReport {
        identity_id1,
        lemma_expansion: lemma.expansion,
        h_chain: lemma.h_chain,
        h2_terms: lemma.h2_terms,
        equality_cases,
        numeric_oracle,
        pass,
    }
}

// ───────────────────── sampled boundary consequence ─────────────────────

/// Sampled check that |b| > |a| and |b| > 1/6 on the closed unit
/// polydisc.
#[derive(Debug, Clone, Serialize)]
pub struct Prop1Summary {
    pub samples: usize,
    pub violations_b_gt_a: usize,
    pub violations_b_gt_one_sixth: usize,
    pub min_abs_b_minus_abs_a: f64,
    pub min_abs_b: f64,
    pub pass: bool,
}

pub fn sample_prop1(samples: usize, seed: u64) -> Prop1Summary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations_ab = 0usize;
    let mut violations_b = 0usize;
    let mut min_gap = f64::INFINITY;
    let mut min_b = f64::INFINITY;
    for _ in 0..samples {
        let zs: [Complex64; 4] = std::array::from_fn(|_| random_in_disc(1.0, &mut rng));
        let (a, b) = ab_integral_coefficients(&zs);
        let gap = b.norm() - a.norm();
        min_gap = min_gap.min(gap);
        min_b = min_b.min(b.norm());
        if gap <= 0.0 {
            violations_ab += 1;
        }
        if b.norm() <= 1.0 / 6.0 {
            violations_b += 1;
        }
    }
    Prop1Summary {
        samples,
        violations_b_gt_a: violations_ab,
        violations_b_gt_one_sixth: violations_b,
        min_abs_b_minus_abs_a: min_gap,
        min_abs_b: min_b,
        pass: violations_ab == 0 && violations_b == 0,
    }
}

// ───────────────────── symbolic/numeric cross-checks ─────────────────────

#[derive(Debug, Clone, Serialize)]
pub struct OracleEntry {
    pub quantity: String,
    pub max_rel_discrepancy: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub samples: usize,
    pub seed: u64,
    pub entries: Vec<OracleEntry>,
    pub pass: bool,
}

/// Compares every built symbolic quantity against its independent
/// numeric evaluation at seeded random tuples; pass means every maximum
/// relative discrepancy is below `tol`.
pub fn oracle_crosscheck(samples: usize, seed: u64, tol: f64) -> OracleReport {
    let sets = IndexSets::new();
    let s_sq = build_s_squared();
    let g = build_g();
    let js: Vec<TrigPoly> = (1..=5).map(|k| build_j(k, &sets)).collect();
    let li = build_lemma_integrands();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names = [
        "S^2", "g", "J1", "J2", "J3", "J4", "J5", "|a|^2", "|b|^2", "h", "h1", "h2",
    ];
    let mut max_disc = vec![0.0f64; names.len()];

    // h₂ both ways: the box polynomial from the chain, against the
    // numeric chain transcription.
    let mut h2pre = li.scaled_diff.clone();
    let mut sub1 = TrigPoly::zero();
    for ((i, j), (k, l)) in [((1, 2), (3, 4)), ((1, 3), (2, 4)), ((1, 4), (3, 2))] {
        sub1.add_assign(
            &TrigPoly::y_diff(i, j)
                .unwrap()
                .square()
                .mul(&TrigPoly::y_diff(k, l).unwrap().square()),
        );
    }
    h2pre.sub_assign(&sub1.scale(&rat(7, 1)));
    let h1_sym = h2pre.clone();
    for ((i, j), (k, l)) in BRACKET_PAIRS {
        h2pre.sub_assign(
            &bracket_poly(k, l)
                .mul(&TrigPoly::y_diff(i, j).unwrap().square())
                .scale(&rat(1, 2)),
        );
    }
    let h2_box = substitute_box(&h2pre).ok();

    let rel = |sym: f64, num: f64| (sym - num).abs() / 1.0f64.max(sym.abs().max(num.abs()));

    for _ in 0..samples {
        let a5 = random_angles(&mut rng, 5);
        let angles5 = [a5[0], a5[1], a5[2], a5[3], a5[4]];
        let zs5: Vec<Complex64> = angles_to_circle(&a5);
        let s_num = s_integral_quadrature(&[zs5[0], zs5[1], zs5[2], zs5[3], zs5[4]]).norm_sqr();
        max_disc[0] = max_disc[0].max(rel(s_sq.eval_at(&angles5), s_num));
        max_disc[1] = max_disc[1].max(rel(g.eval_at(&angles5), numeric_g(&angles5)));
        for (k, j) in js.iter().enumerate() {
            max_disc[2 + k] = max_disc[2 + k].max(rel(
                j.eval_at(&angles5),
                numeric_j(k + 1, &sets, &angles5, J2Reading::PrefactorAllGroups),
            ));
        }

        let angles4 = [a5[0], a5[1], a5[2], a5[3]];
        let angles4in5 = [a5[0], a5[1], a5[2], a5[3], 0.0];
        let zs4 = [zs5[0], zs5[1], zs5[2], zs5[3]];
        let (a_num, b_num) = ab_integral_quadrature(&zs4);
        max_disc[7] = max_disc[7].max(rel(li.a_sq.eval_at(&angles4in5), a_num.norm_sqr()));
        max_disc[8] = max_disc[8].max(rel(li.b_sq.eval_at(&angles4in5), b_num.norm_sqr()));
        max_disc[9] =
            max_disc[9].max(rel(li.scaled_diff.eval_at(&angles4in5), numeric_h(&angles4)));
        max_disc[10] = max_disc[10].max(rel(h1_sym.eval_at(&angles4in5), numeric_h1(&angles4)));
        if let Some(h2) = &h2_box {
            let w = angles4.map(|p| (1.0 - p.cos()) / 2.0);
            max_disc[11] = max_disc[11].max(rel(h2.eval(&w), numeric_h2(&angles4)));
        }
    }

    let entries: Vec<OracleEntry> = names
        .iter()
        .zip(max_disc.iter())
        .map(|(n, &d)| OracleEntry { quantity: n.to_string(), max_rel_discrepancy: d })
        .collect();
    let pass = entries.iter().all(|e| e.max_rel_discrepancy < tol);
    OracleReport { samples, seed, entries, pass }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trig::Monomial;

    #[test]
    fn index_set_cardinalities() {
        let sets = IndexSets::new();
        assert_eq!(sets.perms.len(), 120);
        assert_eq!(sets.pair_pairs.len(), 30);
        assert_eq!(sets.pairs.len(), 10);
        assert_eq!(sets.one_three.len(), 20);
        for (p, q) in &sets.pair_pairs {
            let mut all: Vec<usize> = p.iter().chain(q.iter()).copied().collect();
            all.sort_unstable();
            all.dedup();
            assert_eq!(all.len(), 4);
        }
        for (k1, t) in &sets.one_three {
            let mut all = vec![*k1, t[0], t[1], t[2]];
            all.sort_unstable();
            all.dedup();
            assert_eq!(all.len(), 4);
        }
        // permutations are distinct
        let mut seen = sets.perms.clone();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), 120);
    }

    #[test]
    fn s_squared_at_equality_points() {
        let s_sq = build_s_squared();
        let ones = [QuadExt::one(), QuadExt::one(), QuadExt::one(), QuadExt::one(), QuadExt::one()];
        let zeros = [QuadExt::zero(), QuadExt::zero(), QuadExt::zero(), QuadExt::zero(), QuadExt::zero()];
        assert_eq!(
            s_sq.eval_exact(&ones, &zeros),
            QuadExt::from_rational(rat(1, 49))
        );

        let half = QuadExt::from_rational(rat(1, 2));
        let s3h = QuadExt::sqrt3_times(rat(1, 2));
        let halves = [half.clone(), half.clone(), half.clone(), half.clone(), half.clone()];
        let sines = [s3h.clone(), s3h.clone(), s3h.clone(), s3h.clone(), s3h];
        assert_eq!(
            s_sq.eval_exact(&halves, &sines),
            QuadExt::from_rational(rat(1, 49))
        );
    }

    #[test]
    fn s_squared_at_all_pi_is_400_over_49() {
        // ∫₀¹(1−t)(1+t)⁵ dt = 20/7, so S² = 400/49 there.
        let s_sq = build_s_squared();
        let minus = QuadExt::from_rational(rat(-1, 1));
        let xs = [minus.clone(), minus.clone(), minus.clone(), minus.clone(), minus];
        let ys = [QuadExt::zero(), QuadExt::zero(), QuadExt::zero(), QuadExt::zero(), QuadExt::zero()];
        assert_eq!(
            s_sq.eval_exact(&xs, &ys),
            QuadExt::from_rational(rat(400, 49))
        );
        // cross-check through the quadrature oracle
        let z = Complex64::new(-1.0, 0.0);
        let v = s_integral_quadrature(&[z, z, z, z, z]);
        assert!((v.re - 20.0 / 7.0).abs() < 1e-11);
        assert!(v.im.abs() < 1e-12);
    }

    #[test]
    fn s_squared_matches_quadrature_at_random_tuples() {
        let s_sq = build_s_squared();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..25 {
            let a = random_angles(&mut rng, 5);
            let angles = [a[0], a[1], a[2], a[3], a[4]];
            let zs: Vec<Complex64> = angles_to_circle(&a);
            let v = s_integral_quadrature(&[zs[0], zs[1], zs[2], zs[3], zs[4]]).norm_sqr();
            let sym = s_sq.eval_at(&angles);
            assert!((sym - v).abs() < 1e-10 * 1.0f64.max(v.abs()), "{sym} vs {v}");
        }
    }

    #[test]
    fn g_vanishes_at_equality_points_and_is_positive_elsewhere() {
        let eq = verify_equality_cases(200, 9);
        assert!(eq.pass);
        assert_eq!(eq.exact_zeros.len(), 3);
        assert!(eq.exact_zeros.iter().all(|z| z.exact_zero));
        assert!(eq.min_positive > 0.0);
    }

    #[test]
    fn g_at_all_pi() {
        // g = 25200·(400/49 − 1/49) = 25200·399/49 = 205200 exactly.
        let g = build_g();
        let minus = QuadExt::from_rational(rat(-1, 1));
        let xs = [minus.clone(), minus.clone(), minus.clone(), minus.clone(), minus];
        let ys = [QuadExt::zero(), QuadExt::zero(), QuadExt::zero(), QuadExt::zero(), QuadExt::zero()];
        assert_eq!(g.eval_exact(&xs, &ys), QuadExt::from_rational(rat(205200, 1)));
    }

    #[test]
    fn j4_vanishes_when_all_angles_equal() {
        let sets = IndexSets::new();
        let j4 = build_j(4, &sets);
        for phi in [0.3f64, -1.2, 2.5] {
            assert!(j4.eval_at(&[phi; 5]).abs() < 1e-12);
        }
    }

    #[test]
    fn all_j_vanish_at_zero_angles() {
        let sets = IndexSets::new();
        let ones = [QuadExt::one(), QuadExt::one(), QuadExt::one(), QuadExt::one(), QuadExt::one()];
        let zeros = [QuadExt::zero(), QuadExt::zero(), QuadExt::zero(), QuadExt::zero(), QuadExt::zero()];
        for k in 1..=5 {
            let j = build_j(k, &sets);
            assert!(j.eval_exact(&ones, &zeros).is_zero(), "J{k} at all zeros");
        }
    }

    #[test]
    fn j_values_are_nonnegative_at_random_tuples() {
        let sets = IndexSets::new();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let js: Vec<TrigPoly> = (1..=5).map(|k| build_j(k, &sets)).collect();
        for _ in 0..100 {
            let a = random_angles(&mut rng, 5);
            let angles = [a[0], a[1], a[2], a[3], a[4]];
            for (k, j) in js.iter().enumerate() {
                let v = j.eval_at(&angles);
                assert!(v >= -1e-9, "J{} = {v} at {angles:?}", k + 1);
            }
        }
    }

    #[test]
    fn j2_reading_selection_prefers_all_groups() {
        let sets = IndexSets::new();
        let (reading, gap) = select_j2_reading(&sets, 1);
        assert_eq!(reading, J2Reading::PrefactorAllGroups);
        assert!(gap < 1e-6, "gap {gap}");
    }

    #[test]
    fn identity_residual_is_structurally_zero() {
        let (section, oracle) = verify_identity_id1(100, 2024);
        assert!(section.pass, "residual has {} terms", section.residual_terms);
        assert_eq!(section.residual_terms, 0);
        assert_eq!(oracle.len(), 100);
        assert!(section.numeric_max_discrepancy < 1e-8);
    }

    #[test]
    fn perturbed_j1_leaves_nonzero_residual() {
        let sets = IndexSets::new();
        let g = build_g();
        let mut jsum = TrigPoly::zero();
        for k in 1..=5 {
            jsum.add_assign(&build_j(k, &sets));
        }
        // nudge the first J₁ group coefficient by 1/1000
        let sy_d1 = TrigPoly::d(1).unwrap();
        let sy_d2 = TrigPoly::d(2).unwrap();
        let sy_d3 = TrigPoly::d(3).unwrap();
        let y45 = TrigPoly::y_diff(4, 5).unwrap().square();
        jsum.add_assign(
            &sy_d1
                .mul(&sy_d2)
                .mul(&sy_d3)
                .mul(&y45)
                .scale(&rat(1, 1000)),
        );
        let residual = g.sub(&jsum);
        assert!(!residual.is_zero());
        assert!(!residual.to_text(RESIDUAL_DUMP_LIMIT).is_empty());
    }

    #[test]
    fn g_is_symmetric_under_permutations_and_conjugation() {
        let g = build_g();
        let sets = IndexSets::new();
        for p in &sets.perms {
            assert_eq!(g.permute_vars(p), g);
        }
        assert_eq!(g.negate_y(), g);
    }

    #[test]
    fn lemma_expansion_values() {
        let li = build_lemma_integrands();
        assert_eq!(li.scaled_diff.coefficient(&Monomial::ONE), rat(3730, 1));
        assert_eq!(
            li.scaled_diff
                .coefficient_of(&[(1, 1), (2, 1), (3, 1), (4, 1)], &[]),
            rat(1064, 1)
        );
        assert_eq!(
            li.scaled_diff.coefficient_of(&[], &[1, 2, 3, 4]),
            rat(84, 1)
        );
        assert_eq!(li.scaled_diff.coefficient_of(&[(1, 1)], &[]), rat(-2359, 1));
        assert_eq!(
            li.scaled_diff.coefficient_of(&[(1, 1), (2, 1)], &[]),
            rat(1701, 1)
        );
        assert_eq!(li.scaled_diff.coefficient_of(&[], &[1, 2]), rat(-329, 1));
        assert_eq!(
            li.scaled_diff
                .coefficient_of(&[(1, 1), (2, 1), (3, 1)], &[]),
            rat(-1316, 1)
        );
        assert_eq!(
            li.scaled_diff.coefficient_of(&[(3, 1)], &[1, 2]),
            rat(238, 1)
        );
        assert_eq!(
            li.scaled_diff.coefficient_of(&[(3, 1), (4, 1)], &[1, 2]),
            rat(-182, 1)
        );
    }

    #[test]
    fn lemma_value_at_unit_point() {
        // all zₖ = 1: b = 1/6, a = 1/42, 11025(1/36 − 1/1764) = 300
        let li = build_lemma_integrands();
        let ones = [QuadExt::one(), QuadExt::one(), QuadExt::one(), QuadExt::one(), QuadExt::one()];
        let zeros = [QuadExt::zero(), QuadExt::zero(), QuadExt::zero(), QuadExt::zero(), QuadExt::zero()];
        assert_eq!(
            li.b_sq.eval_exact(&ones, &zeros),
            QuadExt::from_rational(rat(1, 36))
        );
        assert_eq!(
            li.a_sq.eval_exact(&ones, &zeros),
            QuadExt::from_rational(rat(1, 1764))
        );
        assert_eq!(
            li.scaled_diff.eval_exact(&ones, &zeros),
            QuadExt::from_rational(rat(300, 1))
        );
    }

    #[test]
    fn lemma_chain_verifies() {
        let v = verify_lemma1();
        assert!(v.expansion.display_matched_verbatim);
        assert_eq!(v.expansion.constant_term, "3730");
        assert_eq!(v.expansion.x1x2x3x4_coefficient, "1064");
        for step in &v.h_chain {
            assert!(step.pass, "step {} failed: {}", step.step, step.detail);
            if let Some(min) = &step.exact_min {
                assert_eq!(min, "35");
            }
        }
        assert!(v.h2_terms.iter().all(|t| t.nonnegative));
        assert!(v.pass);
    }

    #[test]
    fn h2_display_constants() {
        let groups = h2_display_groups();
        // The display's standalone constant group is 216; expanding the
        // 14·(4wiwj−1)² group adds 6·14 = 84, so the canonical constant
        // term is 300 — consistent with h at w = 0 (all zk = 1).
        assert_eq!(groups[0].poly(), BoxPoly::from_int(216, BoxDomain::Unit));
        let mut total = BoxPoly::zero(BoxDomain::Unit);
        for g in &groups {
            total.add_assign(&g.poly());
        }
        assert_eq!(total.coefficient(&[0, 0, 0, 0]), rat(300, 1));
        assert_eq!(total.coefficient(&[1, 1, 1, 1]), rat(17024, 1));
    }

    #[test]
    fn prop1_sampled_consequence_holds() {
        let s = sample_prop1(2000, 31);
        assert!(s.pass, "violations: {} / {}", s.violations_b_gt_a, s.violations_b_gt_one_sixth);
        assert!(s.min_abs_b > 1.0 / 6.0);
    }

    #[test]
    fn oracle_crosscheck_is_tight() {
        let report = oracle_crosscheck(30, 77, 1e-8);
        assert!(report.pass, "{:?}", report.entries);
    }

    #[test]
    fn ab_coefficient_path_matches_quadrature() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let zs: [Complex64; 4] = std::array::from_fn(|_| random_in_disc(1.0, &mut rng));
            let (a1, b1) = ab_integral_coefficients(&zs);
            let (a2, b2) = ab_integral_quadrature(&zs);
            assert!((a1 - a2).norm() < 1e-11);
            assert!((b1 - b2).norm() < 1e-11);
        }
    }

    #[test]
    fn full_certificate_report_passes() {
        let report = verify_certificate(25, 200, 7);
        assert!(report.pass);
        assert!(report.identity_id1.pass);
        assert!(report.lemma_expansion.pass);
        assert!(report.equality_cases.pass);
        // report serializes
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("\"pass\":true"));
    }
}
