//! Ergodic actions of finite groups on full matrix algebras, their spectral
//! spaces and eigenmatrices, and full bimodule structures on `H_v (x) F`.
//!
//! An element of `L(H) (x) F` with `F = M_n` is stored as a `(dim H * n)`
//! square matrix, block `(i, j)` being the `F`-entry at `(i, j)`.  Module maps
//! `H (x) F -> H' (x) F` act by left multiplication on the `C^n` factor.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{check_representation, kernel, orthonormalize};
use crate::matrix::Matrix;
use crate::rep::Rep;
use crate::report::CheckResult;
use crate::scalar::Scalar;
use crate::surd::Surd;

mod classify;
mod induced;

pub use classify::{classify_pairs, module_intertwiners, Candidate, CandidateSummary, Classification, PairClass};
pub use induced::{
    bimodule_maps, evaluate_at_identity, induced_multiplicity, left_tensor, restricted_multiplicity, tensor_at_identity, InducedMap,
    InducedSystem,
};

/// `k -> Ad pi(k)` on `M_n`, with `pi` a projective unitary representation.
#[derive(Clone, Debug)]
pub struct ErgodicAction<S> {
    group: Arc<FiniteGroup>,
    n: usize,
    pi: Vec<Matrix<S>>,
    cocycle: Vec<Vec<S>>,
    superop: Vec<Matrix<S>>,
    fixed_dim: usize,
}

impl<S: Scalar> ErgodicAction<S> {
    /// One unitary per group element.  Fails unless `Ad pi` is an ergodic action.
    pub fn new(group: Arc<FiniteGroup>, pi: Vec<Matrix<S>>) -> Result<Self> {
        let ord = group.order();
        if pi.len() != ord {
            return Err(Error::ShapeMismatch(format!("{} unitaries for a group of order {ord}", pi.len())));
        }
        let n = pi[0].rows();
        for (g, u) in pi.iter().enumerate() {
            if u.shape() != (n, n) || !u.is_unitary() {
                return Err(Error::NotARepresentation(format!("pi({g}) is not an {n}x{n} unitary")));
            }
        }
        let mut cocycle = vec![vec![S::zero(); ord]; ord];
        for g in 0..ord {
            for h in 0..ord {
                let p = &(&pi[g] * &pi[h]) * &pi[group.mul(g, h)].adjoint();
                let c = p.get(0, 0).clone();
                let ok = p.approx_eq(&Matrix::identity(n).scale(&c)) && c.norm_sqr().approx_eq(&S::one());
                if !ok {
                    return Err(Error::NotARepresentation(format!("pi({g}) pi({h}) is not a phase times pi(gh)")));
                }
                cocycle[g][h] = c;
            }
        }
        let superop: Vec<Matrix<S>> = pi.iter().map(|u| u.kron(&u.conj())).collect();
        check_representation(&superop, group.table())?;
        let gens = group.generators().to_vec();
        let fixed_dim = fixed_space(n * n, &gens, |g| superop[g].clone()).len();
        if fixed_dim != 1 {
            return Err(Error::NotErgodic(fixed_dim));
        }
        Ok(ErgodicAction { group, n, pi, cocycle, superop, fixed_dim })
    }

    /// Unitaries for the generators, extended along the group's spanning tree.
    pub fn from_generators(group: Arc<FiniteGroup>, images: &[Matrix<S>]) -> Result<Self> {
        if images.len() != group.generators().len() {
            return Err(Error::ShapeMismatch(format!(
                "{} images for {} generators",
                images.len(),
                group.generators().len()
            )));
        }
        let n = images.first().map(|m| m.rows()).unwrap_or(1);
        let pi = group.extend(images, Matrix::identity(n), |a, b| a * b);
        Self::new(group, pi)
    }

    /// The action on `F = C`.
    pub fn trivial(group: Arc<FiniteGroup>) -> Self {
        let pi = vec![Matrix::identity(1); group.order()];
        Self::new(group, pi).expect("trivial action on the scalars")
    }

    /// `Ad` of a genuine representation; ergodic iff the representation is irreducible.
    pub fn adjoint(rep: &Rep<S>) -> Result<Self> {
        Self::new(rep.group().clone(), rep.matrices().to_vec())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// `F = M_n`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn unitary(&self, g: usize) -> &Matrix<S> {
        &self.pi[g]
    }

    /// `pi(g) pi(h) = c(g, h) pi(gh)`.
    pub fn cocycle(&self, g: usize, h: usize) -> &S {
        &self.cocycle[g][h]
    }

    pub fn is_projective(&self) -> bool {
        self.cocycle.iter().flatten().any(|c| !c.approx_eq(&S::one()))
    }

    /// Dimension of the fixed-point algebra; always 1 once constructed.
    pub fn fixed_algebra_dim(&self) -> usize {
        self.fixed_dim
    }

    pub fn beta(&self, g: usize, f: &Matrix<S>) -> Matrix<S> {
        &(&self.pi[g] * f) * &self.pi[g].adjoint()
    }

    /// `beta_g` on row-major `vec(F)`.
    pub fn superop(&self, g: usize) -> &Matrix<S> {
        &self.superop[g]
    }

    /// `(1 (x) pi(g)) X (1 (x) pi(g))^*` for `X` in `L(H, H') (x) F`.
    pub fn beta_amp(&self, g: usize, x: &Matrix<S>) -> Matrix<S> {
        let (r, c) = (x.rows() / self.n, x.cols() / self.n);
        let left = Matrix::identity(r).kron(&self.pi[g]);
        let right = Matrix::identity(c).kron(&self.pi[g].adjoint());
        &(&left * x) * &right
    }

    /// Normalised trace on `F`.
    pub fn trace(&self, f: &Matrix<S>) -> S {
        f.trace() / S::from_i64(self.n as i64)
    }

    /// Checks the cocycle against a supplied one.
    pub fn has_cocycle(&self, expected: &[Vec<S>]) -> bool {
        expected.len() == self.cocycle.len()
            && expected.iter().zip(&self.cocycle).all(|(a, b)| a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.approx_eq(y)))
    }

    fn check_rep(&self, v: &Rep<S>) -> Result<()> {
        if v.group().table() != self.group.table() {
            return Err(Error::ShapeMismatch(format!("representation of {} for an action of {}", v.group().name(), self.group.name())));
        }
        Ok(())
    }
}

/// Weyl pair on `C^n` for `Z/n x Z/n`: shift and clock unitaries.
pub fn weyl_pair<S: Scalar>(n: usize) -> (Matrix<S>, Matrix<S>) {
    let shift = Matrix::from_fn(n, n, |i, j| if i == (j + 1) % n { S::one() } else { S::zero() });
    let clock = Matrix::diag(&(0..n).map(|k| S::from_surd(&crate::rep::root_of_unity(n, k))).collect::<Vec<_>>());
    (shift, clock)
}

/// Matrix unit `e_ab` of `M_n`.
pub fn matrix_unit<S: Scalar>(n: usize, a: usize, b: usize) -> Matrix<S> {
    let mut m = Matrix::zeros(n, n);
    m.set(a, b, S::one());
    m
}

/// Basis of the common fixed vectors of `g -> act(g)` over the generators.
pub(crate) fn fixed_space<S: Scalar>(dim: usize, gens: &[usize], act: impl Fn(usize) -> Matrix<S>) -> Vec<Vec<S>> {
    let id = Matrix::identity(dim);
    let mut system: Matrix<S> = Matrix::zeros(0, dim);
    for &g in gens {
        system = system.vstack(&(&act(g) - &id));
    }
    if gens.is_empty() {
        system = Matrix::zeros(1, dim);
    }
    kernel(&system)
}

fn sqrt_of(n: usize) -> Result<Surd> {
    Surd::from_i64(n as i64).sqrt_real().ok_or_else(|| Error::NoExactSqrt(n.to_string()))
}

/// The copies of `v` inside `F`: vectors `xi = sum_i psi_i (x) T(psi_i)^*` fixed by `v (x) beta`.
#[derive(Clone, Debug)]
pub struct SpectralSpace<S> {
    pub rep: Rep<S>,
    /// `basis[j][i] = T_j(psi_i)^*`, orthonormal for `<S, T> = sum_i S(psi_i) T(psi_i)^*`.
    pub basis: Vec<Vec<Matrix<S>>>,
}

impl<S: Scalar> SpectralSpace<S> {
    pub fn mult(&self) -> usize {
        self.basis.len()
    }

    /// `T_j : H_v -> F` as the list `T_j(psi_i)`.
    pub fn map(&self, j: usize) -> Vec<Matrix<S>> {
        self.basis[j].iter().map(|f| f.adjoint()).collect()
    }
}

pub fn spectral_space<S: Scalar>(v: &Rep<S>, act: &ErgodicAction<S>) -> Result<SpectralSpace<S>> {
    act.check_rep(v)?;
    let (d, n) = (v.dim(), act.n());
    let raw = fixed_space(d * n * n, act.group().generators(), |g| v.matrix(g).kron(act.superop(g)));
    // <xi, xi>_F = (|xi|^2 / n) 1 on fixed vectors, by ergodicity
    let scale = S::from_surd(&sqrt_of(n)?);
    let basis = orthonormalize(&raw, None)?
        .into_iter()
        .map(|x| {
            (0..d)
                .map(|i| Matrix::from_vec(n, n, x[i * n * n..(i + 1) * n * n].to_vec()).scale(&scale))
                .collect()
        })
        .collect();
    Ok(SpectralSpace { rep: v.clone(), basis })
}

/// `Z_v` in `L(L_v, H_v) (x) F` and `E_v = Z_v Z_v^*`.
#[derive(Clone, Debug)]
pub struct Eigenmatrix<S> {
    pub rep: Rep<S>,
    pub n: usize,
    pub mult: usize,
    pub z: Matrix<S>,
    pub e: Matrix<S>,
}

impl<S: Scalar> Eigenmatrix<S> {
    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn is_unitary(&self) -> bool {
        self.mult == self.dim() && self.z.is_unitary()
    }

    /// `(Tr (x) tr)(E_v)`.
    pub fn trace_weight(&self) -> S {
        self.e.trace() / S::from_i64(self.n as i64)
    }

    /// `zeta(f) = Z_v (1 (x) f) Z_v^*`.
    pub fn zeta(&self, f: &Matrix<S>) -> Matrix<S> {
        let mid = Matrix::identity(self.mult).kron(f);
        &(&self.z * &mid) * &self.z.adjoint()
    }
}

pub fn eigenmatrix<S: Scalar>(v: &Rep<S>, act: &ErgodicAction<S>) -> Result<Eigenmatrix<S>> {
    let sp = spectral_space(v, act)?;
    Ok(eigenmatrix_of(&sp, act.n()))
}

pub fn eigenmatrix_of<S: Scalar>(sp: &SpectralSpace<S>, n: usize) -> Eigenmatrix<S> {
    let (d, m) = (sp.rep.dim(), sp.mult());
    let mut z = Matrix::zeros(d * n, m * n);
    for (j, xi) in sp.basis.iter().enumerate() {
        for (i, f) in xi.iter().enumerate() {
            z.set_block(i * n, j * n, f);
        }
    }
    let e = if m == 0 { Matrix::zeros(d * n, d * n) } else { &z * &z.adjoint() };
    Eigenmatrix { rep: sp.rep.clone(), n, mult: m, z, e }
}

/// Checks `Z^* Z = 1`, covariance, the trace weight and the unitarity criterion.
pub fn verify_eigenmatrix<S: Scalar>(em: &Eigenmatrix<S>, act: &ErgodicAction<S>) -> Vec<CheckResult> {
    let item = format!("dim {} mult {}", em.dim(), em.mult);
    let mut out = Vec::new();
    let zz = &em.z.adjoint() * &em.z;
    let id = Matrix::identity(em.mult * em.n);
    out.push(CheckResult::new("Z^* Z = 1", "eigenmatrix-isometry", item.clone(), zz.approx_eq(&id), zz.residual(&id)));
    let mut res = 0.0f64;
    let mut ok = true;
    for k in 0..act.group().order() {
        let lhs = act.beta_amp(k, &em.z);
        let rhs = &em.rep.matrix(k).adjoint().kron(&Matrix::identity(em.n)) * &em.z;
        ok &= lhs.approx_eq(&rhs);
        res = res.max(lhs.residual(&rhs));
    }
    out.push(CheckResult::new("beta_k(Z) = (v(k)^* x 1) Z", "eigenmatrix-covariance", item.clone(), ok, res));
    let w = em.trace_weight();
    let m = S::from_i64(em.mult as i64);
    out.push(CheckResult::new("(Tr x tr)(E_v) = mult", "eigenprojection-trace", item.clone(), w.approx_eq(&m), (w - m).abs_f64()));
    let full = em.mult == em.dim();
    out.push(CheckResult::new("Z unitary iff mult = dim", "eigenmatrix-unitary", item.clone(), em.z.is_unitary() == full, 0.0));
    out.push(CheckResult::new("mult <= dim", "multiplicity-bound", item, em.mult <= em.dim(), 0.0));
    out
}

/// A projection `E >= E_v` with a left action `eta` of `F` on `E(H_v (x) F)`.
#[derive(Clone, Debug)]
pub struct FullStructure<S> {
    pub rep: Rep<S>,
    pub n: usize,
    pub e: Matrix<S>,
    /// `eta(e_ab)` at index `a * n + b`.
    pub eta: Vec<Matrix<S>>,
    /// The pair `(z, W)` it was built from, if any.
    pub pair: Option<(Rep<S>, Matrix<S>)>,
}

impl<S: Scalar> FullStructure<S> {
    pub fn eta(&self, f: &Matrix<S>) -> Matrix<S> {
        let dn = self.e.rows();
        let mut acc = Matrix::zeros(dn, dn);
        for a in 0..self.n {
            for b in 0..self.n {
                let c = f.get(a, b);
                if !c.is_zero() {
                    acc = &acc + &self.eta[a * self.n + b].scale(c);
                }
            }
        }
        acc
    }

    /// `E = E_v + W W^*`, `eta(f) = zeta(f) + W (1 (x) f) W^*`.
    pub fn from_pair(em: &Eigenmatrix<S>, z: &Rep<S>, w: &Matrix<S>) -> Result<Self> {
        let n = em.n;
        if w.rows() != em.z.rows() || w.cols() != z.dim() * n {
            return Err(Error::ShapeMismatch(format!("W is {:?}, expected ({}, {})", w.shape(), em.z.rows(), z.dim() * n)));
        }
        let e = &em.e + &(w * &w.adjoint());
        let eta = units(n)
            .map(|f| {
                let mid = Matrix::identity(z.dim()).kron(&f);
                &em.zeta(&f) + &(&(w * &mid) * &w.adjoint())
            })
            .collect();
        Ok(FullStructure { rep: em.rep.clone(), n, e, eta, pair: Some((z.clone(), w.clone())) })
    }

    /// `E` with `eta(f) = E (1 (x) f) E`; a full structure only when `F` is commutative or `E = E_v`.
    pub fn compressed(em: &Eigenmatrix<S>, e: Matrix<S>) -> Self {
        let d = em.dim();
        let eta = units(em.n).map(|f| &(&e * &Matrix::identity(d).kron(&f)) * &e).collect();
        FullStructure { rep: em.rep.clone(), n: em.n, e, eta, pair: None }
    }
}

fn units<S: Scalar>(n: usize) -> impl Iterator<Item = Matrix<S>> {
    (0..n * n).map(move |k| matrix_unit(n, k / n, k % n))
}

/// The minimal full bimodule `X_v` with left action `zeta`.
pub fn canonical_full_bimodule<S: Scalar>(v: &Rep<S>, act: &ErgodicAction<S>) -> Result<(FullStructure<S>, Eigenmatrix<S>)> {
    let em = eigenmatrix(v, act)?;
    if em.mult == 0 {
        return Err(Error::EmptySpectrum(format!("representation of dimension {}", v.dim())));
    }
    let eta = units(act.n()).map(|f| em.zeta(&f)).collect();
    Ok((FullStructure { rep: v.clone(), n: act.n(), e: em.e.clone(), eta, pair: None }, em))
}

struct Acc {
    ok: bool,
    res: f64,
}

impl Acc {
    fn new() -> Self {
        Acc { ok: true, res: 0.0 }
    }

    fn cmp<S: Scalar>(&mut self, a: &Matrix<S>, b: &Matrix<S>) {
        self.ok &= a.approx_eq(b);
        self.res = self.res.max(a.residual(b));
    }

    fn result(self, identity: &str, tag: &str, item: &str) -> CheckResult {
        CheckResult::new(identity, tag, item, self.ok, self.res)
    }
}

/// Conditions of a full bimodule structure on `E(H_v (x) F)`, one line each.
pub fn verify_full_structure<S: Scalar>(s: &FullStructure<S>, em: &Eigenmatrix<S>, act: &ErgodicAction<S>) -> Vec<CheckResult> {
    let n = act.n();
    let d = s.rep.dim();
    let item = format!("dim {} rank {}", d, rank_over_f(&s.e, n));
    let mut out = Vec::new();
    let vk = |k: usize| s.rep.matrix(k).kron(act.unitary(k));
    let ad = |k: usize, x: &Matrix<S>| {
        let u = vk(k);
        &(&u * x) * &u.adjoint()
    };

    let mut a = Acc::new();
    a.cmp(&s.e.adjoint(), &s.e);
    a.cmp(&(&s.e * &s.e), &s.e);
    out.push(a.result("E = E^* = E^2", "projection", &item));

    let mut a = Acc::new();
    a.cmp(&(&s.e * &em.e), &em.e);
    out.push(a.result("E >= E_v", "dominates-eigenprojection", &item));

    let mut a = Acc::new();
    for k in 0..act.group().order() {
        a.cmp(&ad(k, &s.e), &s.e);
    }
    out.push(a.result("Ad v(k) x beta_k (E) = E", "projection-invariance", &item));

    let mut a = Acc::new();
    for k in 0..act.group().order() {
        for (idx, f) in units::<S>(n).enumerate() {
            a.cmp(&s.eta(&act.beta(k, &f)), &ad(k, &s.eta[idx]));
        }
    }
    out.push(a.result("eta(beta_k f) = Ad v(k) x beta_k (eta f)", "left-covariance", &item));

    let mut a = Acc::new();
    for f in units::<S>(n) {
        let lhs = &s.eta(&f) * &em.z;
        let rhs = &em.z * &Matrix::identity(em.mult).kron(&f);
        a.cmp(&lhs, &rhs);
    }
    out.push(a.result("eta(f) Z_v = Z_v (1 x f)", "fullness", &item));

    let mut a = Acc::new();
    a.cmp(&s.eta(&Matrix::identity(n)), &s.e);
    for x in 0..n * n {
        let ex = &s.eta[x];
        a.cmp(&ex.adjoint(), &s.eta[(x % n) * n + x / n]);
        a.cmp(&(&(&s.e * ex) * &s.e), ex);
        for y in 0..n * n {
            let prod = ex * &s.eta[y];
            let want = if x % n == y / n { s.eta[(x / n) * n + y % n].clone() } else { Matrix::zeros(d * n, d * n) };
            a.cmp(&prod, &want);
        }
    }
    out.push(a.result("eta unital *-homomorphism into E L E", "unital-star-homomorphism", &item));

    if let Some((z, w)) = &s.pair {
        let item = format!("{item} z dim {}", z.dim());
        let mut a = Acc::new();
        a.cmp(&(&w.adjoint() * &em.z), &Matrix::zeros(w.cols(), em.z.cols()));
        out.push(a.result("W^* Z_v = 0", "pair-orthogonality", &item));
        out.push(CheckResult::new("dim z <= dim v - mult v", "pair-dimension", item.clone(), z.dim() + em.mult <= d, 0.0));
        let mut a = Acc::new();
        a.cmp(&(&w.adjoint() * w), &Matrix::identity(z.dim() * n));
        for k in 0..act.group().order() {
            let lhs = act.beta_amp(k, w);
            let rhs = &(&s.rep.matrix(k).adjoint().kron(&Matrix::identity(n)) * w) * &z.matrix(k).kron(&Matrix::identity(n));
            a.cmp(&lhs, &rhs);
        }
        out.push(a.result("W isometric module intertwiner", "pair-intertwiner", &item));
    }
    out
}

/// `Z_v^* eta(f) Z_v = 1 (x) f`: through `Z_v`, `X_v` is the trivial bimodule `L_v (x) F`.
pub fn verify_canonical_equivalence<S: Scalar>(s: &FullStructure<S>, em: &Eigenmatrix<S>) -> CheckResult {
    let mut a = Acc::new();
    for f in units::<S>(s.n) {
        let lhs = &(&em.z.adjoint() * &s.eta(&f)) * &em.z;
        a.cmp(&lhs, &Matrix::identity(em.mult).kron(&f));
    }
    a.result("Z_v^* eta(f) Z_v = 1 x f", "canonical-equivalence", &format!("mult {}", em.mult))
}

/// `q` with `Tr(E) = q n`; the rank of `E(H (x) F)` as a free `F`-module.
pub fn rank_over_f<S: Scalar>(e: &Matrix<S>, n: usize) -> usize {
    let t = e.trace().to_c64().re / n as f64;
    t.round().max(0.0) as usize
}
