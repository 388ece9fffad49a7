//! Generators for structured elements and their commuting partners.
#![allow(dead_code)]

use chiso::classify::screw;
use chiso::heisenberg::{dilation_matrix, rotation_matrix, translation_matrix, HeisElement};
use chiso::linalg::svd::kernel;
use chiso::linalg::{
    random_element_with, random_unitary, vadd, vdot, vnorm, vsub, FormKind, GroupElement, HermitianForm, Matrix,
};
use chiso::models::convert_element;

use chiso::C64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn phase(a: f64) -> C64 {
    C64::from_polar(1.0, a)
}

fn circ_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

/// `k` angles pairwise at least `sep` apart on the circle, each at least
/// `sep` away from every angle in `avoid`.
pub fn angles(rng: &mut Rng8, k: usize, sep: f64, avoid: &[f64]) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..k).map(|_| rng.random_range(-PI..PI)).collect();
        let ok = (0..k)
            .all(|i| (0..i).all(|j| circ_dist(v[i], v[j]) >= sep) && avoid.iter().all(|a| circ_dist(v[i], *a) >= sep));
        if ok {
            return v;
        }
    }
}

/// Random composition of `total` into positive parts.
pub fn composition(rng: &mut Rng8, total: usize) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut left = total;
    while left > 0 {
        let p = rng.random_range(1..=left);
        parts.push(p);
        left -= p;
    }
    parts
}

pub fn block_diag(blocks: &[Matrix]) -> Matrix {
    let size: usize = blocks.iter().map(|b| b.rows()).sum();
    let mut m = Matrix::zeros(size, size);
    let mut at = 0;
    for b in blocks {
        m.set_block(at, at, b);
        at += b.rows();
    }
    m
}

pub fn scalar_matrix(k: usize, z: C64) -> Matrix {
    Matrix::identity(k).scale(z)
}

/// Unitary `Q` whose first column is the unit vector along `v`.
pub fn frame_with(v: &[C64]) -> Matrix {
    let k = v.len();
    let mut cols = vec![v.iter().map(|z| z / vnorm(v)).collect::<Vec<_>>()];
    for e in 0..k {
        let mut w = vec![C64::new(0.0, 0.0); k];
        w[e] = C64::new(1.0, 0.0);
        for q in &cols {
            let p = vdot(q, &w);
            for (wi, qi) in w.iter_mut().zip(q) {
                *wi -= qi * p;
            }
        }
        let nw = vnorm(&w);
        if nw > 1e-6 && cols.len() < k {
            cols.push(w.iter().map(|z| z / nw).collect());
        }
    }
    Matrix::from_columns(&cols)
}

/// A few eigen-angles shared by all blocks of one element: values either
/// coincide exactly or sit at least 0.3 apart, and 1 is an exact eigenvalue
/// or well separated from it. Independent random phases would occasionally
/// land within rounding distance of each other and give numerically defective
/// elements.
pub struct AnglePool(Vec<f64>);

impl AnglePool {
    pub fn new(rng: &mut Rng8) -> Self {
        let levels = rng.random_range(1..=3);
        let mut pool = angles(rng, levels, 0.3, &[0.0]);
        if rng.random_bool(0.3) {
            pool[0] = 0.0;
        }
        AnglePool(pool)
    }

    pub fn pick(&self, rng: &mut Rng8, k: usize) -> Vec<f64> {
        (0..k).map(|_| self.0[rng.random_range(0..self.0.len())]).collect()
    }

    /// `Q·diag(phases)·Q*` with phases from the pool and a random unitary `Q`.
    pub fn unitary(&self, rng: &mut Rng8, k: usize) -> Matrix {
        if k == 0 {
            return Matrix::identity(0);
        }
        let d: Vec<C64> = self.pick(rng, k).into_iter().map(phase).collect();
        let q = random_unitary(k, 1.0, rng);
        &(&q * &Matrix::from_diag(&d)) * &q.adjoint()
    }
}

/// Random unitary fixing the unit vector along `v`.
pub fn unitary_fixing(rng: &mut Rng8, pool: &AnglePool, v: &[C64]) -> Matrix {
    let q = frame_with(v);
    let k = v.len();
    let inner = pool.unitary(rng, k - 1);
    let d = block_diag(&[Matrix::identity(1), inner]);
    &(&q * &d) * &q.adjoint()
}

pub fn unitary(rng: &mut Rng8, k: usize) -> Matrix {
    if k == 0 {
        Matrix::identity(0)
    } else {
        random_unitary(k, 1.0, rng)
    }
}

pub fn random_vec(rng: &mut Rng8, k: usize, scale: f64) -> Vec<C64> {
    (0..k).map(|_| c(rng.random_range(-scale..scale), rng.random_range(-scale..scale))).collect()
}

/// Random vector of norm at least 0.5.
pub fn random_vec_away(rng: &mut Rng8, k: usize) -> Vec<C64> {
    loop {
        let v = random_vec(rng, k, 1.0);
        if vnorm(&v) >= 0.5 {
            return v;
        }
    }
}

/// Non-zero `σ` with `Im(τ*σ) = 0` and `‖σ‖ ∈ [0.5, 1.5]`.
pub fn isotropic_partner(rng: &mut Rng8, tau: &[C64]) -> Vec<C64> {
    loop {
        let raw = random_vec_away(rng, tau.len());
        let sigma = isotropic_to(tau, &raw);
        let size = vnorm(&sigma);
        if size > 1e-3 {
            let target = rng.random_range(0.5..1.5);
            return sigma.iter().map(|z| z * (target / size)).collect();
        }
    }
}

/// Makes `sigma` isotropic to `tau` and sizes its component in `ker(V − I)`:
/// that component decides whether `R_V T_σ` has a Jordan block of size 3, so
/// it is either removed or kept at norm ≥ 0.5, never left small.
pub fn shaped_shift(rng: &mut Rng8, v: &Matrix, tau: &[C64], sigma: &[C64]) -> Vec<C64> {
    let fixed = kernel(&v.shift(C64::new(1.0, 0.0)), 1e-8, Some(1.0));
    let project = |x: &[C64]| fixed.mul_vec(&fixed.adjoint().mul_vec(x));
    let sigma = isotropic_to(tau, sigma);
    let along = project(&sigma);
    let rest = vsub(&sigma, &along);
    let size = vnorm(&along);
    if fixed.cols() == 0 || rng.random_bool(0.3) || size < 1e-3 {
        return rest;
    }
    let target = rng.random_range(0.5..1.5);
    let scaled: Vec<C64> = along.iter().map(|z| z * (target / size)).collect();
    vadd(&rest, &scaled)
}

/// Removes the component of `sigma` that breaks isotropy with `tau`.
pub fn isotropic_to(tau: &[C64], sigma: &[C64]) -> Vec<C64> {
    let t2: f64 = tau.iter().map(|z| z.norm_sqr()).sum();
    if t2 == 0.0 {
        return sigma.to_vec();
    }
    let k = vdot(tau, sigma).im / t2;
    sigma.iter().zip(tau).map(|(s, t)| s - C64::new(0.0, k) * t).collect()
}

/// An element together with the data of its construction at `∞` (second form).
#[derive(Debug, Clone)]
pub struct Structured {
    pub g: GroupElement,
    pub partner: GroupElement,
    /// Horizontal part of the translation, for elements built at `∞`.
    pub tau: Vec<C64>,
}

fn random_scalar(rng: &mut Rng8) -> C64 {
    if rng.random_bool(0.5) {
        C64::new(1.0, 0.0)
    } else {
        phase(rng.random_range(-PI..PI))
    }
}

/// `U(p−1,1)` element in the first form of size `p`: elliptic or hyperbolic,
/// with unit eigenvalues from the pool.
fn indefinite_block(rng: &mut Rng8, pool: &AnglePool, p: usize) -> Matrix {
    let phi = phase(pool.pick(rng, 1)[0]);
    if p == 1 {
        return scalar_matrix(1, phi);
    }
    let form = HermitianForm::first(p - 1);
    let core = if rng.random_bool(0.5) {
        let d: Vec<C64> = pool.pick(rng, p).into_iter().map(phase).collect();
        GroupElement::new(form.clone(), Matrix::from_diag(&d), 1e-12).unwrap()
    } else {
        let r = rng.random_range(1.5..3.0);
        let mut g = dilation_matrix(r, p - 1).unwrap();
        if p > 2 {
            g = &g * &rotation_matrix(&pool.unitary(rng, p - 2)).unwrap();
        }
        convert_element(&g.scaled(phi), &form, 1e-10).unwrap()
    };
    let h = random_element_with(&form, 0.6, rng);
    core.conjugate_by(&h).unwrap().into_matrix()
}

/// Elliptic `t` in the first form with negative cluster of size `neg` and
/// the remaining multiplicities `others`, plus a random element of its centralizer.
pub fn elliptic_pair(rng: &mut Rng8, neg: usize, others: &[usize]) -> Structured {
    let n = neg + others.iter().sum::<usize>() - 1;
    let th = angles(rng, 1 + others.len(), 0.35, &[]);
    let pool = AnglePool::new(rng);
    let mut t_blocks = vec![scalar_matrix(neg, phase(th[0]))];
    let mut s_blocks = vec![indefinite_block(rng, &pool, neg)];
    for (i, &k) in others.iter().enumerate() {
        t_blocks.push(scalar_matrix(k, phase(th[i + 1])));
        s_blocks.push(pool.unitary(rng, k));
    }
    let f = HermitianForm::first(n);
    Structured {
        g: GroupElement::new(f.clone(), block_diag(&t_blocks), 1e-10).unwrap(),
        partner: GroupElement::new(f, block_diag(&s_blocks), 1e-9).unwrap(),
        tau: Vec::new(),
    }
}

pub fn random_elliptic_shape(rng: &mut Rng8, n: usize, min_clusters: usize) -> (usize, Vec<usize>) {
    loop {
        let parts = composition(rng, n + 1);
        if parts.len() >= min_clusters {
            return (parts[0], parts[1..].to_vec());
        }
    }
}

/// A factor in `[lo, hi]` or its reciprocal.
pub fn stretch(rng: &mut Rng8, lo: f64, hi: f64) -> f64 {
    let r = rng.random_range(lo..hi);
    if rng.random_bool(0.5) {
        r
    } else {
        1.0 / r
    }
}

/// Hyperbolic `μ D_r R_U` with a partner `ν D_ρ R_V`, `V` commuting with `U`.
/// Strict elements use `U` with eigenvalues `±1` only.
pub fn hyperbolic_pair(rng: &mut Rng8, n: usize, strict: bool) -> Structured {
    let shape = if strict {
        let plus = rng.random_range(0..=n - 1);
        [plus, n - 1 - plus].into_iter().filter(|&k| k > 0).collect::<Vec<_>>()
    } else {
        composition(rng, n - 1)
    };
    let th = if strict {
        let start = if rng.random_bool(0.5) { 0.0 } else { PI };
        vec![start, start + PI]
    } else {
        angles(rng, shape.len(), 0.35, &[0.0, PI])
    };
    let pool = AnglePool::new(rng);
    let mut u_blocks = Vec::new();
    let mut v_blocks = Vec::new();
    for (i, &k) in shape.iter().enumerate() {
        u_blocks.push(scalar_matrix(k, phase(th[i])));
        v_blocks.push(pool.unitary(rng, k));
    }
    let r = stretch(rng, 1.5, 3.0);
    let rho = if rng.random_bool(0.3) { 1.0 } else { stretch(rng, 1.5, 2.5) };
    let u = block_diag(&u_blocks);
    let v = block_diag(&v_blocks);
    let t = (&dilation_matrix(r, n).unwrap() * &rotation_matrix(&u).unwrap()).scaled(random_scalar(rng));
    let s = (&dilation_matrix(rho, n).unwrap() * &rotation_matrix(&v).unwrap()).scaled(random_scalar(rng));
    Structured { g: t, partner: s, tau: Vec::new() }
}

/// Translation `μ T_(τ,t)` and a random element of its centralizer.
pub fn translation_pair(rng: &mut Rng8, n: usize, vertical: bool) -> Structured {
    let k = n - 1;
    let tau = if vertical { vec![C64::new(0.0, 0.0); k] } else { random_vec_away(rng, k) };
    let tval = rng.random_range(0.5..2.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    let t = translation_matrix(&HeisElement { tau: tau.clone(), t: tval }, n).unwrap().scaled(random_scalar(rng));

    let shape = rng.random_range(0..4);
    let pool = AnglePool::new(rng);
    let v = if shape == 0 {
        Matrix::identity(k)
    } else if vertical {
        pool.unitary(rng, k)
    } else {
        unitary_fixing(rng, &pool, &tau)
    };
    let sigma = if shape == 1 {
        vec![C64::new(0.0, 0.0); k]
    } else {
        let raw = random_vec(rng, k, 1.0);
        shaped_shift(rng, &v, &tau, &raw)
    };
    let s = if shape == 2 && rng.random_bool(0.5) {
        // boundary elliptic: a rotation about a vertical chain through another point
        let rho = HeisElement { tau: random_vec(rng, k, 1.0), t: rng.random_range(-2.0..2.0) };
        rotated_about(&v, &rho)
    } else {
        screw(&v, &HeisElement { tau: sigma, t: rng.random_range(-2.0..2.0) }).unwrap()
    };
    Structured { g: t, partner: s.scaled(random_scalar(rng)), tau }
}

/// Ellipto-parabolic `μ R_U T_(τ,t)` with `Uτ = τ`, and a partner
/// `ν R_V T_(σ,s)` with `VU = UV`, `Uσ = σ`, `Vτ = τ`, `Im(τ*σ) = 0`.
pub fn ellipto_pair(rng: &mut Rng8, n: usize) -> Structured {
    let k = n - 1;
    // vertical type needs only U ≠ I; the other type needs a fixed direction
    let vertical = k == 1 || rng.random_bool(0.5);
    // eigenvalue-1 block of U (size `ones`), rest in clusters away from 1
    let ones = if vertical { rng.random_range(0..k) } else { rng.random_range(1..k) };
    let rest = composition(rng, k - ones);
    let th = angles(rng, rest.len(), 0.35, &[0.0]);
    let q = unitary(rng, k);
    let mut u_blocks = vec![Matrix::identity(ones)];
    let mut v_blocks = Vec::new();
    for (i, &m) in rest.iter().enumerate() {
        u_blocks.push(scalar_matrix(m, phase(th[i])));
    }
    let u_diag = block_diag(&u_blocks);
    let u = &(&q * &u_diag) * &q.adjoint();

    // τ, σ live in the 1-eigenspace of U: the first `ones` columns of q
    let in_ones = |rng: &mut Rng8| -> Vec<C64> {
        let coeffs = random_vec_away(rng, ones);
        let mut v = vec![C64::new(0.0, 0.0); k];
        for (j, a) in coeffs.iter().enumerate() {
            for i in 0..k {
                v[i] += q[(i, j)] * a;
            }
        }
        v
    };
    let tau = if vertical { vec![C64::new(0.0, 0.0); k] } else { in_ones(rng) };
    let tval = if vertical { rng.random_range(0.5..2.0) } else { rng.random_range(-2.0..2.0) };
    let t = screw(&u, &HeisElement { tau: tau.clone(), t: tval }).unwrap().scaled(random_scalar(rng));

    // V: block-unitary on U's eigenspaces, fixing τ inside the 1-block
    let pool = AnglePool::new(rng);
    let ones_block = if ones == 0 {
        Matrix::identity(0)
    } else if vertical {
        pool.unitary(rng, ones)
    } else {
        let coords: Vec<C64> = (0..ones).map(|j| (0..k).map(|i| q[(i, j)].conj() * tau[i]).sum()).collect();
        unitary_fixing(rng, &pool, &coords)
    };
    v_blocks.push(ones_block);
    for &m in &rest {
        v_blocks.push(pool.unitary(rng, m));
    }
    let v_diag = block_diag(&v_blocks);
    let choice = rng.random_range(0..4);
    let v = if choice == 0 { Matrix::identity(k) } else { &(&q * &v_diag) * &q.adjoint() };
    let sigma = if ones == 0 || choice == 1 {
        vec![C64::new(0.0, 0.0); k]
    } else {
        let raw = in_ones(rng);
        shaped_shift(rng, &v, &tau, &raw)
    };
    let s = if choice == 2 && ones > 0 && rng.random_bool(0.5) {
        let rho = HeisElement { tau: in_ones(rng), t: rng.random_range(-2.0..2.0) };
        rotated_about(&v, &rho)
    } else {
        screw(&v, &HeisElement { tau: sigma, t: rng.random_range(-2.0..2.0) }).unwrap()
    };
    Structured { g: t, partner: s.scaled(random_scalar(rng)), tau }
}

/// `T_ρ R_V T_ρ⁻¹`.
pub fn rotated_about(v: &Matrix, rho: &HeisElement) -> GroupElement {
    rotation_matrix(v).unwrap().conjugate_by(&translation_matrix(rho, v.rows() + 1).unwrap()).unwrap()
}

/// Conjugates both elements by a random member and optionally moves to the first form.
pub fn disguise(rng: &mut Rng8, pair: &Structured, scale: f64) -> (GroupElement, GroupElement) {
    let form = pair.g.form().clone();
    let h = random_element_with(&form, scale, rng);
    let mut t = pair.g.conjugate_by(&h).unwrap();
    let mut s = pair.partner.conjugate_by(&h).unwrap();
    if rng.random_bool(0.5) {
        let target = match form.kind() {
            FormKind::First => HermitianForm::second(form.n()),
            FormKind::Second => HermitianForm::first(form.n()),
        };
        t = convert_element(&t, &target, 1e-8).unwrap();
        s = convert_element(&s, &target, 1e-8).unwrap();
    }
    (s, t)
}

/// `D_r·g` for `r` bounded away from 1: still fixes `∞`, now hyperbolic,
/// and never commutes with a parabolic element fixing `∞`.
pub fn stretched(rng: &mut Rng8, g: &GroupElement) -> GroupElement {
    let r = stretch(rng, 1.3, 2.0);
    &dilation_matrix(r, g.n()).unwrap() * g
}
