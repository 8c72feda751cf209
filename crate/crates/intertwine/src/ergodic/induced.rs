//! The induced system `Ind(F) = {f : G -> F, f(kg) = beta_k(f(g))}` with `G`
//! acting by right translation, and the evaluation functor `T -> T(1)`.

use super::{eigenmatrix, fixed_space, spectral_space, sqrt_of, Acc, ErgodicAction, FullStructure};
use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::linalg::orthonormalize;
use crate::matrix::Matrix;
use crate::rep::Rep;
use crate::report::CheckResult;
use crate::scalar::Scalar;

/// A function `G -> L(H, H') (x) F`, stored at every group element.
#[derive(Clone, Debug, PartialEq)]
pub struct InducedMap<S> {
    pub values: Vec<Matrix<S>>,
}

impl<S: Scalar> InducedMap<S> {
    pub fn at(&self, g: usize) -> &Matrix<S> {
        &self.values[g]
    }

    pub fn shape(&self) -> (usize, usize) {
        self.values[0].shape()
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.values.len() == other.values.len() && self.values.iter().zip(&other.values).all(|(a, b)| a.approx_eq(b))
    }

    pub fn residual(&self, other: &Self) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| a.residual(b)).fold(0.0, f64::max)
    }

    pub fn compose(&self, other: &Self) -> Self {
        InducedMap { values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect() }
    }

    pub fn adjoint(&self) -> Self {
        InducedMap { values: self.values.iter().map(|a| a.adjoint()).collect() }
    }
}

#[derive(Clone, Debug)]
pub struct InducedSystem<S> {
    sub: Subgroup,
    act: ErgodicAction<S>,
    /// Representatives `t_j` of the right cosets `K t_j`.
    reps: Vec<usize>,
    /// `g = k t_j` as `(j, k)` with `k` indexed in `K`.
    coset: Vec<(usize, usize)>,
}

impl<S: Scalar> InducedSystem<S> {
    pub fn new(sub: Subgroup, act: ErgodicAction<S>) -> Result<Self> {
        if sub.group.table() != act.group().table() {
            return Err(Error::NotASubgroup(format!(
                "action of {} does not live on {}",
                act.group().name(),
                sub.group.name()
            )));
        }
        let g = sub.parent.clone();
        let mut coset = vec![(usize::MAX, 0); g.order()];
        let mut reps = Vec::new();
        for x in 0..g.order() {
            if coset[x].0 != usize::MAX {
                continue;
            }
            let j = reps.len();
            reps.push(x);
            for (k, &e) in sub.embedding.iter().enumerate() {
                coset[g.mul(e, x)] = (j, k);
            }
        }
        Ok(InducedSystem { sub, act, reps, coset })
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.sub
    }

    pub fn action(&self) -> &ErgodicAction<S> {
        &self.act
    }

    pub fn cosets(&self) -> usize {
        self.reps.len()
    }

    /// Complex dimension of `Ind(F)`.
    pub fn dim(&self) -> usize {
        self.reps.len() * self.act.n() * self.act.n()
    }

    fn n(&self) -> usize {
        self.act.n()
    }

    /// Extend values at the coset representatives to a function on `G`.
    pub fn extend(&self, at_reps: &[Matrix<S>]) -> InducedMap<S> {
        let values = self
            .coset
            .iter()
            .map(|&(j, k)| self.act.beta_amp(k, &at_reps[j]))
            .collect();
        InducedMap { values }
    }

    /// Basis of `Ind(F)`: matrix units at one coset, transported along `K`.
    pub fn algebra_basis(&self) -> Vec<InducedMap<S>> {
        let n = self.n();
        let r = self.cosets();
        let mut out = Vec::new();
        for j in 0..r {
            for a in 0..n * n {
                let vals: Vec<Matrix<S>> = (0..r)
                    .map(|l| if l == j { super::matrix_unit(n, a / n, a % n) } else { Matrix::zeros(n, n) })
                    .collect();
                out.push(self.extend(&vals));
            }
        }
        out
    }

    /// `(rho_h f)(g) = f(gh)`.
    pub fn rho(&self, h: usize, f: &InducedMap<S>) -> InducedMap<S> {
        let g = &self.sub.parent;
        InducedMap { values: (0..g.order()).map(|x| f.values[g.mul(x, h)].clone()).collect() }
    }

    /// Invariant state: the Haar average of the normalised trace.
    pub fn state(&self, f: &InducedMap<S>) -> S {
        let acc = f.values.iter().fold(S::zero(), |a, m| a + self.act.trace(m));
        acc / S::from_i64(f.values.len() as i64)
    }

    /// The coordinate operator of `X -> (a(h) x pi) X(. h) (b(h) x pi)^*` on maps `G -> L(H_b, H_a) (x) F`,
    /// coordinates being the values at coset representatives.
    fn coordinate_action(&self, a: &Rep<S>, b: &Rep<S>, h: usize) -> Matrix<S> {
        let n = self.n();
        let block = a.dim() * n * b.dim() * n;
        let r = self.cosets();
        let g = &self.sub.parent;
        let mut out = Matrix::zeros(r * block, r * block);
        for (j, &t) in self.reps.iter().enumerate() {
            let (l, k) = self.coset[g.mul(t, h)];
            let left = a.matrix(h).kron(self.act.unitary(k));
            let right = b.matrix(h).kron(self.act.unitary(k));
            out.set_block(j * block, l * block, &left.kron(&right.conj()));
        }
        out
    }

    fn from_coordinates(&self, x: &[S], rows: usize, cols: usize) -> InducedMap<S> {
        let size = rows * cols;
        let at: Vec<Matrix<S>> = (0..self.cosets()).map(|j| Matrix::from_vec(rows, cols, x[j * size..(j + 1) * size].to_vec())).collect();
        self.extend(&at)
    }

    /// `Z^rho_v` computed from the fixed vectors of `v (x) rho`, as a function on `G`.
    pub fn eigenmatrix(&self, v: &Rep<S>) -> Result<(usize, InducedMap<S>)> {
        let n = self.n();
        let d = v.dim();
        let triv = Rep::trivial(v.group().clone());
        let raw = fixed_space(self.cosets() * d * n * n, self.sub.parent.generators(), |h| self.coordinate_action(v, &triv, h));
        // <xi, xi> = |x|^2 / (r n) at the coset representatives
        let scale = S::from_surd(&sqrt_of(self.cosets() * n)?);
        let basis = orthonormalize(&raw, None)?;
        let m = basis.len();
        let cols: Vec<InducedMap<S>> = basis
            .iter()
            .map(|x| {
                let y: Vec<S> = x.iter().map(|c| c.clone() * scale.clone()).collect();
                self.from_coordinates(&y, d * n, n)
            })
            .collect();
        let values = (0..self.sub.parent.order())
            .map(|g| {
                let mut z = Matrix::zeros(d * n, m * n);
                for (j, c) in cols.iter().enumerate() {
                    z.set_block(0, j * n, c.at(g));
                }
                z
            })
            .collect();
        Ok((m, InducedMap { values }))
    }

    /// `A'(g) = (v'(g)^* x 1) A (v(g) x 1)`.
    pub fn lift(&self, a: &Matrix<S>, v: &Rep<S>, vp: &Rep<S>) -> Result<InducedMap<S>> {
        let n = self.n();
        if a.shape() != (vp.dim() * n, v.dim() * n) {
            return Err(Error::ShapeMismatch(format!("{:?} for ({}, {})", a.shape(), v.dim(), vp.dim())));
        }
        let id = Matrix::identity(n);
        let values = (0..self.sub.parent.order())
            .map(|g| &(&vp.matrix(g).adjoint().kron(&id) * a) * &v.matrix(g).kron(&id))
            .collect();
        Ok(InducedMap { values })
    }

    /// Module intertwiners `(v (x) rho, v' (x) rho)` computed directly on `G`.
    pub fn module_intertwiners(&self, v: &Rep<S>, vp: &Rep<S>) -> Vec<InducedMap<S>> {
        let n = self.n();
        let (rows, cols) = (vp.dim() * n, v.dim() * n);
        fixed_space(self.cosets() * rows * cols, self.sub.parent.generators(), |h| self.coordinate_action(vp, v, h))
            .into_iter()
            .map(|x| self.from_coordinates(&x, rows, cols))
            .collect()
    }

    /// `T(kg) = beta_k(T(g))` and `T(gh) = v'(h)^* T(g) v(h)`.
    pub fn is_intertwiner(&self, t: &InducedMap<S>, v: &Rep<S>, vp: &Rep<S>) -> bool {
        let g = &self.sub.parent;
        let id = Matrix::identity(self.n());
        for x in 0..g.order() {
            for (k, &e) in self.sub.embedding.iter().enumerate() {
                if !t.at(g.mul(e, x)).approx_eq(&self.act.beta_amp(k, t.at(x))) {
                    return false;
                }
            }
            for &h in g.generators() {
                let rhs = &(&vp.matrix(h).adjoint().kron(&id) * t.at(x)) * &v.matrix(h).kron(&id);
                if !t.at(g.mul(x, h)).approx_eq(&rhs) {
                    return false;
                }
            }
        }
        true
    }

    /// `eta~(f)(g) = (u(g)^* x 1) eta(f(g)) (u(g) x 1)`.
    pub fn induced_left(&self, eta: &FullStructure<S>, u: &Rep<S>, f: &InducedMap<S>) -> InducedMap<S> {
        let id = Matrix::identity(self.n());
        let values = (0..self.sub.parent.order())
            .map(|g| {
                let ug = u.matrix(g).kron(&id);
                &(&ug.adjoint() * &eta.eta(f.at(g))) * &ug
            })
            .collect();
        InducedMap { values }
    }

    /// The `(i, j)` block of an operator-valued map, as an element of `Ind(F)`.
    fn entry(&self, t: &InducedMap<S>, i: usize, j: usize) -> InducedMap<S> {
        let n = self.n();
        InducedMap { values: t.values.iter().map(|m| m.submatrix(i * n, j * n, n, n)).collect() }
    }

    /// `T (x) S` over `Ind(F)`, with `S` a bimodule map into `u'` carrying `eta~_{u'}`.
    pub fn tensor(&self, t: &InducedMap<S>, s: &InducedMap<S>, eta_target: &FullStructure<S>, up: &Rep<S>) -> InducedMap<S> {
        let n = self.n();
        let (a, b) = (t.shape().0 / n, t.shape().1 / n);
        let mut entries = Vec::new();
        for r in 0..a {
            for c in 0..b {
                entries.push(self.induced_left(eta_target, up, &self.entry(t, r, c)));
            }
        }
        let values = (0..self.sub.parent.order())
            .map(|g| left_tensor(a, b, s.at(g), |r, c| entries[r * b + c].at(g).clone()))
            .collect();
        InducedMap { values }
    }
}

/// The matrix of `T (x) S` on `(H (x) L) (x) C`: block `(r, s)` is `eta(t_rs) S`.
pub fn left_tensor<S: Scalar>(a: usize, b: usize, s: &Matrix<S>, eta_entry: impl Fn(usize, usize) -> Matrix<S>) -> Matrix<S> {
    let (sr, sc) = s.shape();
    let mut out = Matrix::zeros(a * sr, b * sc);
    for r in 0..a {
        for c in 0..b {
            out.set_block(r * sr, c * sc, &(&eta_entry(r, c) * s));
        }
    }
    out
}

/// `T(1) (x) S(1)` over `F`.
pub fn tensor_at_identity<S: Scalar>(t1: &Matrix<S>, s1: &Matrix<S>, eta: &FullStructure<S>) -> Matrix<S> {
    let n = eta.n;
    let (a, b) = (t1.rows() / n, t1.cols() / n);
    left_tensor(a, b, s1, |r, c| eta.eta(&t1.submatrix(r * n, c * n, n, n)))
}

impl<S: Scalar> InducedSystem<S> {
    /// `Z^rho_v(g) = (v(g)^* x 1) Z^beta_{v|K}` up to a unitary of `L_v`, and the matching
    /// eigenprojection identity, at every group element.
    pub fn verify_eigenmatrix_formula(&self, v: &Rep<S>) -> Result<Vec<CheckResult>> {
        let n = self.n();
        let (m, zr) = self.eigenmatrix(v)?;
        let vk = v.restrict(&self.sub);
        let zb = eigenmatrix(&vk, &self.act)?;
        let item = format!("dim {} mult {}", v.dim(), m);
        let mut out = vec![CheckResult::new("mult^rho(v) = mult^beta(v|K)", "induced-multiplicity", item.clone(), m == zb.mult, 0.0)];
        if m != zb.mult {
            return Ok(out);
        }
        let id = Matrix::identity(n);
        let formula = InducedMap {
            values: (0..self.sub.parent.order()).map(|g| &v.matrix(g).adjoint().kron(&id) * &zb.z).collect(),
        };
        let mut cov = Acc::new();
        if m > 0 {
            let triv_m = Rep::new(v.group().clone(), vec![Matrix::identity(m); v.group().order()])?;
            cov.ok &= self.is_intertwiner(&formula, &triv_m, v);
        }
        out.push(cov.result("(v(g)^* x 1) Z^beta is a v (x) rho eigenmatrix", "induced-eigenmatrix-covariance", &item));
        // basis change between the two orthonormal bases of L_v
        let u = &formula.at(0).adjoint() * zr.at(0);
        let mut a = Acc::new();
        a.cmp(&(&u.adjoint() * &u), &Matrix::identity(m * n));
        for g in 0..self.sub.parent.order() {
            a.cmp(zr.at(g), &(formula.at(g) * &u));
        }
        let mut scalar = Acc::new();
        for i in 0..m {
            for j in 0..m {
                let blk = u.submatrix(i * n, j * n, n, n);
                scalar.cmp(&blk, &id.scale(blk.get(0, 0)));
            }
        }
        out.push(scalar.result("Z^rho(1)^* Z' lies in L(L_v) x 1", "induced-basis-change", &item));
        out.push(a.result("Z^rho(g) = (v(g)^* x 1) Z^beta U", "induced-eigenmatrix", &item));
        let mut e = Acc::new();
        for g in 0..self.sub.parent.order() {
            let vg = v.matrix(g).kron(&id);
            let lhs = zr.at(g) * &zr.at(g).adjoint();
            let rhs = &(&vg.adjoint() * &zb.e) * &vg;
            e.cmp(&lhs, &rhs);
        }
        out.push(e.result("E^rho(g) = (v(g)^* x 1) E^beta (v(g) x 1)", "induced-eigenprojection", &item));
        Ok(out)
    }

    /// Evaluation `T -> T(1)` on `(v (x) rho, v' (x) rho)`: lands in the `K`-intertwiners,
    /// inverts the lift, and matches dimensions.
    pub fn verify_evaluation(&self, v: &Rep<S>, vp: &Rep<S>) -> Vec<CheckResult> {
        let item = format!("({}, {})", v.dim(), vp.dim());
        let ts = self.module_intertwiners(v, vp);
        let (vk, vpk) = (v.restrict(&self.sub), vp.restrict(&self.sub));
        let ks = super::classify::module_intertwiners(&vk, &vpk, &self.act);
        let mut lands = Acc::new();
        let mut round = Acc::new();
        for t in &ts {
            let t1 = evaluate_at_identity(t);
            lands.ok &= is_k_intertwiner(&self.act, &t1, &vk, &vpk);
            match self.lift(&t1, v, vp) {
                Ok(back) => {
                    round.ok &= back.approx_eq(t);
                    round.res = round.res.max(back.residual(t));
                }
                Err(_) => round.ok = false,
            }
        }
        let mut inverse = Acc::new();
        for a in &ks {
            match self.lift(a, v, vp) {
                Ok(t) => {
                    inverse.ok &= self.is_intertwiner(&t, v, vp);
                    inverse.cmp(&evaluate_at_identity(&t), a);
                }
                Err(_) => inverse.ok = false,
            }
        }
        vec![
            lands.result("T(1) in (v|K x beta, v'|K x beta)", "evaluation-target", &item),
            round.result("(T(1))' = T", "evaluation-round-trip", &item),
            inverse.result("A' intertwines and A'(1) = A", "evaluation-inverse", &item),
            CheckResult::new("dim (v x rho, v' x rho) = dim (v|K x beta, v'|K x beta)", "evaluation-full-faithful", item, ts.len() == ks.len(), 0.0),
        ]
    }
}

/// `T -> T(1)`.
pub fn evaluate_at_identity<S: Scalar>(t: &InducedMap<S>) -> Matrix<S> {
    t.at(0).clone()
}

fn is_k_intertwiner<S: Scalar>(act: &ErgodicAction<S>, a: &Matrix<S>, v: &Rep<S>, vp: &Rep<S>) -> bool {
    let id = Matrix::identity(act.n());
    (0..act.group().order()).all(|k| {
        let rhs = &(&vp.matrix(k).adjoint().kron(&id) * a) * &v.matrix(k).kron(&id);
        act.beta_amp(k, a).approx_eq(&rhs)
    })
}

/// Bimodule maps among the `K`-module intertwiners `(u|K x beta, u'|K x beta)`.
pub fn bimodule_maps<S: Scalar>(act: &ErgodicAction<S>, eta: &FullStructure<S>, eta_p: &FullStructure<S>) -> Vec<Matrix<S>> {
    let n = act.n();
    let ms = super::classify::module_intertwiners(&eta.rep, &eta_p.rep, act);
    if ms.is_empty() {
        return ms;
    }
    let mut rows = Vec::new();
    for idx in 0..n * n {
        for m in &ms {
            rows.push((m * &eta.eta[idx]) - (&eta_p.eta[idx] * m));
        }
    }
    let size = rows[0].rows() * rows[0].cols();
    let per = ms.len();
    let mut sys = Matrix::zeros(n * n * size, per);
    for (r, d) in rows.iter().enumerate() {
        let (blk, col) = (r / per, r % per);
        for (k, x) in d.data().iter().enumerate() {
            sys.set(blk * size + k, col, x.clone());
        }
    }
    crate::linalg::kernel(&sys)
        .into_iter()
        .map(|c| {
            let mut acc = Matrix::zeros(ms[0].rows(), ms[0].cols());
            for (m, x) in ms.iter().zip(&c) {
                acc = &acc + &m.scale(x);
            }
            acc
        })
        .collect()
}

impl<S: Scalar> InducedSystem<S> {
    /// Bimodule maps survive evaluation, and `(T (x) S)(1) = T(1) (x) S(1)`, with
    /// `T (x) S` assembled from the induced left action at every `g`.
    pub fn verify_tensoriality(
        &self,
        (v, vp): (&Rep<S>, &Rep<S>),
        (u, up): (&Rep<S>, &Rep<S>),
        (eta_u, eta_up): (&FullStructure<S>, &FullStructure<S>),
        coeffs: &[S],
    ) -> Vec<CheckResult> {
        let item = format!("T: ({}, {}) S: ({}, {})", v.dim(), vp.dim(), u.dim(), up.dim());
        let ts = self.module_intertwiners(v, vp);
        let bs = bimodule_maps(&self.act, eta_u, eta_up);
        let basis = self.algebra_basis();
        let mut preserved = Acc::new();
        let mut lifted = Vec::new();
        for a in &bs {
            let Ok(s) = self.lift(a, u, up) else {
                preserved.ok = false;
                continue;
            };
            for f in &basis {
                let lhs = s.compose(&self.induced_left(eta_u, u, f));
                let rhs = self.induced_left(eta_up, up, f).compose(&s);
                preserved.ok &= lhs.approx_eq(&rhs);
                preserved.res = preserved.res.max(lhs.residual(&rhs));
            }
            lifted.push(s);
        }
        let pick = |items: &[InducedMap<S>], shift: usize| -> Option<InducedMap<S>> {
            if items.is_empty() {
                return None;
            }
            let mut values = vec![Matrix::zeros(items[0].shape().0, items[0].shape().1); items[0].values.len()];
            for (i, t) in items.iter().enumerate() {
                let c = coeffs.get((i + shift) % coeffs.len().max(1)).cloned().unwrap_or_else(S::one);
                for (acc, x) in values.iter_mut().zip(&t.values) {
                    *acc = &*acc + &x.scale(&c);
                }
            }
            Some(InducedMap { values })
        };
        let mut tens = Acc::new();
        let mut lift_ok = Acc::new();
        if let (Some(t), Some(s)) = (pick(&ts, 0), pick(&lifted, 1)) {
            let ts_map = self.tensor(&t, &s, eta_up, up);
            let at1 = tensor_at_identity(&evaluate_at_identity(&t), &evaluate_at_identity(&s), eta_up);
            tens.cmp(&evaluate_at_identity(&ts_map), &at1);
            let (vu, vpup) = (v.tensor(u), vp.tensor(up));
            match self.lift(&at1, &vu, &vpup) {
                Ok(back) => {
                    lift_ok.ok &= back.approx_eq(&ts_map);
                    lift_ok.res = back.residual(&ts_map);
                }
                Err(_) => lift_ok.ok = false,
            }
        }
        vec![
            preserved.result("S(1) bimodule => S bimodule over Ind(F)", "evaluation-bimodule-maps", &item),
            CheckResult::new("bimodule maps exist", "evaluation-bimodule-maps", item.clone(), !bs.is_empty(), 0.0),
            tens.result("(T x S)(1) = T(1) x S(1)", "evaluation-tensoriality", &item),
            lift_ok.result("T x S = (T(1) x S(1))'", "evaluation-tensoriality", &item),
        ]
    }
}

/// Spectral multiplicity of `v` for `rho`, from the fixed vectors only.
pub fn induced_multiplicity<S: Scalar>(sys: &InducedSystem<S>, v: &Rep<S>) -> Result<usize> {
    Ok(sys.eigenmatrix(v)?.0)
}

/// `K`-level spectral multiplicity of `v|K`.
pub fn restricted_multiplicity<S: Scalar>(sys: &InducedSystem<S>, v: &Rep<S>) -> Result<usize> {
    Ok(spectral_space(&v.restrict(&sys.sub), &sys.act)?.mult())
}
