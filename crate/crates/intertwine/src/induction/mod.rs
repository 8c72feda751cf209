//! The spectral algebra and induced bimodules of a pair `(tau, mu)`:
//! `tau: A -> Hilb` strict, `mu: A -> M` quasitensor.
//!
//! An element of the bimodule over a sequence `u_1..u_n` is kept in normal
//! form: for each irreducible label `v`, a list of arrows
//! `X_{v,k} in (mu_v, mu_u_1 x ... x mu_u_n)`, one per basis vector `e_k` of
//! `tau_v`, standing for `sum_k X_{v,k} x e_k`.  The spectral algebra is the
//! empty sequence.

mod ind;
mod swan;

pub use ind::{FlatSpace, IndHom};

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::category::{bullet, tensor_solution, Arrow, Category, ConjugateSolution};
use crate::error::{Error, Result};
use crate::functor::{Functor, SrcObj, TgtObj};
use crate::hilb::Hilb;
use crate::matrix::Matrix;
use crate::quasitensor::image_solution;
use crate::rep::Rep;
use crate::repcat::{Forgetful, RepCat};
use crate::scalar::Scalar;

/// A normal-form element of a bimodule (or of the spectral algebra).
#[derive(Clone, Debug)]
pub struct Element<S, A, O> {
    pub seq: Vec<A>,
    pub target: O,
    pub comps: BTreeMap<usize, Vec<Arrow<S, O>>>,
}

impl<S: Scalar, A: Clone + PartialEq, O: Clone + PartialEq + std::fmt::Debug> Element<S, A, O> {
    pub fn is_zero(&self) -> bool {
        self.comps.values().all(|xs| xs.iter().all(|x| x.is_zero()))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.target == other.target, "adding elements of different bimodules");
        let mut out = self.clone();
        for (k, xs) in &other.comps {
            match out.comps.get_mut(k) {
                Some(ys) => {
                    for (y, x) in ys.iter_mut().zip(xs) {
                        *y = y.add(x);
                    }
                }
                None => {
                    out.comps.insert(*k, xs.clone());
                }
            }
        }
        out.prune();
        out
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = self.clone();
        for xs in out.comps.values_mut() {
            for x in xs.iter_mut() {
                *x = x.scale(s);
            }
        }
        out.prune();
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn prune(&mut self) {
        self.comps.retain(|_, xs| !xs.iter().all(|x| x.is_zero()));
    }

    /// Largest entry of the difference, or infinity across bimodules.
    pub fn residual(&self, other: &Self) -> f64 {
        if self.target != other.target {
            return f64::INFINITY;
        }
        let d = self.sub(other);
        d.comps
            .values()
            .flat_map(|xs| xs.iter().map(|x| x.matrix.max_abs()))
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.target == other.target && self.sub(other).is_zero()
    }

    /// Labels with a nonzero component.
    pub fn labels(&self) -> Vec<usize> {
        self.comps.keys().copied().collect()
    }
}

pub type Elem<S, T, M> = Element<S, SrcObj<S, T>, TgtObj<S, M>>;
type AObj<S, T> = SrcObj<S, T>;
type MObj<S, M> = TgtObj<S, M>;

/// The data `(A, tau, mu)` with cached label solutions.
pub struct Induction<S, T, M>
where
    S: Scalar,
    T: Functor<S, Tgt = Hilb<S>>,
    M: Functor<S, Src = T::Src>,
{
    tau: Arc<T>,
    mu: Arc<M>,
    labels: Vec<AObj<S, T>>,
    unit_label: usize,
    conj_label: Vec<usize>,
    sols: Vec<ConjugateSolution<S, AObj<S, T>>>,
    hats: Vec<ConjugateSolution<S, MObj<S, M>>>,
    /// `tau(Rbar_v)` as a `d_v x d_vbar` matrix: `j_v e_k = sum_j rbar[k][j] e_j`.
    rbar: Vec<Matrix<S>>,
    dims: Vec<usize>,
    /// The representation of the dual group on each `tau_v`, when known.
    action: Option<Vec<Rep<S>>>,
}

impl<S, T, M> Induction<S, T, M>
where
    S: Scalar,
    T: Functor<S, Tgt = Hilb<S>>,
    M: Functor<S, Src = T::Src>,
{
    pub fn new(tau: Arc<T>, mu: Arc<M>) -> Result<Self> {
        let a = tau.src();
        let labels = a.irreducibles();
        let unit_label = labels
            .iter()
            .position(|l| *l == a.unit())
            .ok_or_else(|| Error::BackendMismatch("the unit is not a label".into()))?;
        let mut sols = Vec::new();
        let mut conj_label = Vec::new();
        let mut hats = Vec::new();
        let mut rbar = Vec::new();
        let mut dims = Vec::new();
        for l in &labels {
            let sol = a.solution(l)?;
            let c = labels
                .iter()
                .position(|x| *x == sol.conj)
                .ok_or_else(|| Error::NoConjugate(a.describe(l)))?;
            let d = tau.map_obj(l);
            let dc = tau.map_obj(&sol.conj);
            let rb = tau.map_arrow(&sol.rbar)?.matrix.reshape(d, dc);
            hats.push(image_solution(mu.as_ref(), &sol)?);
            sols.push(sol);
            conj_label.push(c);
            rbar.push(rb);
            dims.push(d);
        }
        Ok(Induction { tau, mu, labels, unit_label, conj_label, sols, hats, rbar, dims, action: None })
    }

    /// Attach the representations of the dual group on the spaces `tau_v`.
    pub fn with_action(mut self, reps: Vec<Rep<S>>) -> Result<Self> {
        if reps.len() != self.labels.len() || reps.iter().zip(&self.dims).any(|(r, d)| r.dim() != *d) {
            return Err(Error::ShapeMismatch("one representation per label".into()));
        }
        self.action = Some(reps);
        Ok(self)
    }

    pub fn tau(&self) -> &Arc<T> {
        &self.tau
    }
    pub fn mu(&self) -> &Arc<M> {
        &self.mu
    }
    pub fn labels(&self) -> &[AObj<S, T>] {
        &self.labels
    }
    pub fn label_dim(&self, v: usize) -> usize {
        self.dims[v]
    }
    pub fn conj_label(&self, v: usize) -> usize {
        self.conj_label[v]
    }
    pub fn unit_label(&self) -> usize {
        self.unit_label
    }
    pub fn label_solution(&self, v: usize) -> &ConjugateSolution<S, AObj<S, T>> {
        &self.sols[v]
    }
    pub fn action(&self) -> Option<&[Rep<S>]> {
        self.action.as_deref()
    }

    fn a(&self) -> &T::Src {
        self.tau.src()
    }
    fn m(&self) -> &M::Tgt {
        self.mu.tgt()
    }

    /// Drop unit entries from a sequence.
    pub fn clean(&self, seq: &[AObj<S, T>]) -> Vec<AObj<S, T>> {
        let unit = self.a().unit();
        seq.iter().filter(|x| **x != unit).cloned().collect()
    }

    /// `mu_u_1 x ... x mu_u_n`.
    pub fn target_of(&self, seq: &[AObj<S, T>]) -> MObj<S, M> {
        let m = self.m();
        seq.iter().fold(m.unit(), |acc, u| m.tensor_obj(&acc, &self.mu.map_obj(u)))
    }

    pub fn zero(&self, seq: &[AObj<S, T>]) -> Elem<S, T, M> {
        let seq = self.clean(seq);
        let target = self.target_of(&seq);
        Element { seq, target, comps: BTreeMap::new() }
    }

    fn accumulate(&self, e: &mut Elem<S, T, M>, v: usize, x: &Arrow<S, MObj<S, M>>, coeffs: &[S]) {
        let m = self.m();
        let slot = e.comps.entry(v).or_insert_with(|| {
            let z = m.zero_arrow(&self.mu.map_obj(&self.labels[v]), &e.target);
            vec![z; self.dims[v]]
        });
        for (s, c) in slot.iter_mut().zip(coeffs) {
            if !c.is_zero() {
                *s = s.add(&x.scale(c));
            }
        }
    }

    /// The class of `m x psi` with `m in (mu_v, mu_seq)`, `psi in tau_v`.
    pub fn raw(&self, seq: &[AObj<S, T>], v: &AObj<S, T>, m: &Arrow<S, MObj<S, M>>, psi: &[S]) -> Result<Elem<S, T, M>> {
        let fus = self.a().fusion(v)?;
        self.raw_with(seq, m, psi, &fus)
    }

    /// As `raw`, decomposing `v` with the given fusion isometries.
    pub fn raw_with(
        &self,
        seq: &[AObj<S, T>],
        m: &Arrow<S, MObj<S, M>>,
        psi: &[S],
        fusion: &[(usize, Arrow<S, AObj<S, T>>)],
    ) -> Result<Elem<S, T, M>> {
        let mut out = self.zero(seq);
        if m.target != out.target {
            return Err(Error::ShapeMismatch("arrow does not land in the bimodule target".into()));
        }
        let mc = self.m();
        for (k, w) in fusion {
            let mw = mc.compose(m, &self.mu.map_arrow(w)?)?;
            let tw = self.tau.map_arrow(w)?.matrix;
            if tw.rows() != psi.len() {
                return Err(Error::ShapeMismatch("vector does not lie in tau_v".into()));
            }
            let coeffs: Vec<S> = (0..tw.cols())
                .map(|j| (0..psi.len()).fold(S::zero(), |acc, i| acc + tw.get(i, j).conj() * psi[i].clone()))
                .collect();
            self.accumulate(&mut out, *k, &mw, &coeffs);
        }
        out.prune();
        Ok(out)
    }

    /// `1_iota x 1`.
    pub fn unit(&self) -> Result<Elem<S, T, M>> {
        let m = self.m();
        self.raw(&[], &self.a().unit(), &m.identity(&m.unit()), &[S::one()])
    }

    /// `x_psi = 1_{mu_u} x psi` in the bimodule over `u`.
    pub fn x(&self, u: &AObj<S, T>, psi: &[S]) -> Result<Elem<S, T, M>> {
        let m = self.m();
        self.raw(std::slice::from_ref(u), u, &m.identity(&self.mu.map_obj(u)), psi)
    }

    /// `x_i` for the standard basis of `tau_u`.
    pub fn x_basis(&self, u: &AObj<S, T>) -> Result<Vec<Elem<S, T, M>>> {
        let d = self.tau.map_obj(u);
        (0..d).map(|i| self.x(u, &unit_vector(d, i))).collect()
    }

    /// `B x e_k` over all hom-basis arrows `B in (mu_v, mu_seq)` and labels `v`.
    pub fn spanning_set(&self, seq: &[AObj<S, T>]) -> Result<Vec<Elem<S, T, M>>> {
        let target = self.target_of(&self.clean(seq));
        let mut out = Vec::new();
        for (v, l) in self.labels.iter().enumerate() {
            for b in self.m().hom_basis(&self.mu.map_obj(l), &target)? {
                for k in 0..self.dims[v] {
                    let mut e = self.zero(seq);
                    let mut coeffs = vec![S::zero(); self.dims[v]];
                    coeffs[k] = S::one();
                    self.accumulate(&mut e, v, &b, &coeffs);
                    e.prune();
                    out.push(e);
                }
            }
        }
        Ok(out)
    }

    /// The product `xi eta` of the sequence bimodules, without a comparison map.
    pub fn seq_mul(&self, a: &Elem<S, T, M>, b: &Elem<S, T, M>) -> Result<Elem<S, T, M>> {
        let (ac, mc) = (self.a(), self.m());
        let mut seq = a.seq.clone();
        seq.extend(b.seq.iter().cloned());
        let mut out = self.zero(&seq);
        if out.target != mc.tensor_obj(&a.target, &b.target) {
            return Err(Error::ShapeMismatch("product target".into()));
        }
        for (&w, la) in &a.comps {
            for (&v, mb) in &b.comps {
                let (lw, lv) = (&self.labels[w], &self.labels[v]);
                let mts = mc.adjoint(&self.mu.mu_tilde(lw, lv)?);
                let dv = self.dims[v];
                for (x, f) in ac.fusion(&ac.tensor_obj(lw, lv))? {
                    let g = mc.compose(&mts, &self.mu.map_arrow(&f)?)?;
                    let tf = self.tau.map_arrow(&f)?.matrix;
                    for (k, lk) in la.iter().enumerate() {
                        if lk.is_zero() {
                            continue;
                        }
                        for (l, ml) in mb.iter().enumerate() {
                            if ml.is_zero() {
                                continue;
                            }
                            let coeffs: Vec<S> = (0..self.dims[x]).map(|j| tf.get(k * dv + l, j).conj()).collect();
                            if coeffs.iter().all(|c| c.is_zero()) {
                                continue;
                            }
                            let arrow = mc.compose(&mc.tensor(lk, ml), &g)?;
                            self.accumulate(&mut out, x, &arrow, &coeffs);
                        }
                    }
                }
            }
        }
        out.prune();
        Ok(out)
    }

    /// `xi . eta` for bimodules over single objects (or the algebra):
    /// the sequence product followed by `lambda(mu~_{u,u'})`.
    pub fn dot(&self, a: &Elem<S, T, M>, b: &Elem<S, T, M>) -> Result<Elem<S, T, M>> {
        let p = self.seq_mul(a, b)?;
        match (a.seq.len(), b.seq.len()) {
            (0, _) | (_, 0) => Ok(p),
            (1, 1) => {
                let (u, v) = (&a.seq[0], &b.seq[0]);
                let uv = self.a().tensor_obj(u, v);
                self.lambda(&self.mu.mu_tilde(u, v)?, &p, &[uv])
            }
            _ => Err(Error::ShapeMismatch("dot is defined on bimodules over objects".into())),
        }
    }

    /// `lambda(Y)(M x psi) = (Y M) x psi`, landing in the bimodule over `seq`.
    pub fn lambda(&self, y: &Arrow<S, MObj<S, M>>, e: &Elem<S, T, M>, seq: &[AObj<S, T>]) -> Result<Elem<S, T, M>> {
        let mut out = self.zero(seq);
        if y.source != e.target || y.target != out.target {
            return Err(Error::ShapeMismatch("lambda: arrow does not match the bimodules".into()));
        }
        let mc = self.m();
        for (&v, xs) in &e.comps {
            let ys = xs.iter().map(|x| mc.compose(y, x)).collect::<Result<Vec<_>>>()?;
            out.comps.insert(v, ys);
        }
        out.prune();
        Ok(out)
    }

    /// `j psi = (psi^* x 1) tau(Rbar)` for a solution of `u`.
    pub fn j(&self, sol: &ConjugateSolution<S, AObj<S, T>>, psi: &[S]) -> Result<Vec<S>> {
        let d = self.tau.map_obj(&sol.object);
        let dc = self.tau.map_obj(&sol.conj);
        let rb = self.tau.map_arrow(&sol.rbar)?.matrix;
        Ok((0..dc)
            .map(|j| (0..d).fold(S::zero(), |acc, k| acc + psi[k].conj() * rb.get(k * dc + j, 0).clone()))
            .collect())
    }

    /// The solution for `mu_u_1 x ... x mu_u_n` built from image solutions.
    pub fn hat_solution(&self, sols: &[ConjugateSolution<S, AObj<S, T>>]) -> Result<ConjugateSolution<S, MObj<S, M>>> {
        let m = self.m();
        let mut acc = m.solution(&m.unit())?;
        for s in sols {
            let h = image_solution(self.mu.as_ref(), s)?;
            acc = if acc.object == m.unit() { h } else { tensor_solution(m, &acc, &h)? };
        }
        Ok(acc)
    }

    /// `(M x psi)^* = M^bullet x j_v psi`, with bullets taken against `hat`
    /// on the target; the result lives over `new_seq`.
    pub fn star_hat(
        &self,
        e: &Elem<S, T, M>,
        hat: &ConjugateSolution<S, MObj<S, M>>,
        new_seq: &[AObj<S, T>],
    ) -> Result<Elem<S, T, M>> {
        if hat.object != e.target {
            return Err(Error::ShapeMismatch("star: solution is not for the bimodule target".into()));
        }
        let mut out = self.zero(new_seq);
        if out.target != hat.conj {
            return Err(Error::ShapeMismatch("star: conjugate sequence does not match the solution".into()));
        }
        let mc = self.m();
        for (&v, xs) in &e.comps {
            let vb = self.conj_label[v];
            for (k, x) in xs.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let xb = bullet(mc, x, &self.hats[v], hat)?;
                self.accumulate(&mut out, vb, &xb, &self.rbar[v].row(k));
            }
        }
        out.prune();
        Ok(out)
    }

    /// The adjoint over a sequence with one solution per entry; the result
    /// lives over the reversed sequence of conjugates.
    pub fn star(&self, e: &Elem<S, T, M>, sols: &[ConjugateSolution<S, AObj<S, T>>]) -> Result<Elem<S, T, M>> {
        if sols.len() != e.seq.len() || sols.iter().zip(&e.seq).any(|(s, u)| s.object != *u) {
            return Err(Error::ShapeMismatch("star: one solution per sequence entry".into()));
        }
        let hat = self.hat_solution(sols)?;
        let conj: Vec<_> = sols.iter().rev().map(|s| s.conj.clone()).collect();
        self.star_hat(e, &hat, &conj)
    }

    /// Adjoint with the cached solutions of the sequence entries.
    pub fn star_default(&self, e: &Elem<S, T, M>) -> Result<Elem<S, T, M>> {
        let sols = e.seq.iter().map(|u| self.a().solution(u)).collect::<Result<Vec<_>>>()?;
        self.star(e, &sols)
    }

    /// `<xi, xi'> = lambda(Rhat^*)(xi^* xi')`; for a single object this is
    /// `lambda(mu(R)^*)(xi^* . xi')`.
    pub fn inner(
        &self,
        a: &Elem<S, T, M>,
        b: &Elem<S, T, M>,
        sols: &[ConjugateSolution<S, AObj<S, T>>],
    ) -> Result<Elem<S, T, M>> {
        if a.target != b.target {
            return Err(Error::ShapeMismatch("inner product across bimodules".into()));
        }
        let sa = self.star(a, sols)?;
        if sols.len() == 1 {
            let p = self.dot(&sa, b)?;
            let r = self.mu.map_arrow(&sols[0].r)?;
            self.lambda(&self.m().adjoint(&r), &p, &[])
        } else {
            let p = self.seq_mul(&sa, b)?;
            let hat = self.hat_solution(sols)?;
            self.lambda(&self.m().adjoint(&hat.r), &p, &[])
        }
    }

    pub fn inner_default(&self, a: &Elem<S, T, M>, b: &Elem<S, T, M>) -> Result<Elem<S, T, M>> {
        let sols = a.seq.iter().map(|u| self.a().solution(u)).collect::<Result<Vec<_>>>()?;
        self.inner(a, b, &sols)
    }

    /// The inner product from the normal forms alone:
    /// `sum (Rhat_v^* (1 x M^* M') mu~^*_{vbar,v'}) x (j_v psi x psi')`.
    /// Depends only on the target object.
    pub fn inner_formula(&self, a: &Elem<S, T, M>, b: &Elem<S, T, M>) -> Result<Elem<S, T, M>> {
        if a.target != b.target {
            return Err(Error::ShapeMismatch("inner product across bimodules".into()));
        }
        let (ac, mc) = (self.a(), self.m());
        let mut out = self.zero(&[]);
        for (&v, xs) in &a.comps {
            let vb = self.conj_label[v];
            let lvb = &self.labels[vb];
            let rs = mc.adjoint(&self.hats[v].r);
            let one = mc.identity(&self.mu.map_obj(lvb));
            for (&v2, ys) in &b.comps {
                let lv2 = &self.labels[v2];
                let obj = ac.tensor_obj(lvb, lv2);
                let mts = mc.adjoint(&self.mu.mu_tilde(lvb, lv2)?);
                let (dvb, dv2) = (self.dims[vb], self.dims[v2]);
                for (k, x) in xs.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let xs_ = mc.adjoint(x);
                    for (l, y) in ys.iter().enumerate() {
                        if y.is_zero() {
                            continue;
                        }
                        let arrow = mc.compose_all(&[&rs, &mc.tensor(&one, &mc.compose(&xs_, y)?), &mts])?;
                        let mut psi = vec![S::zero(); dvb * dv2];
                        for j in 0..dvb {
                            psi[j * dv2 + l] = self.rbar[v].get(k, j).clone();
                        }
                        out = out.add(&self.raw(&[], &obj, &arrow, &psi)?);
                    }
                }
            }
        }
        Ok(out)
    }

    /// The invariant state: the coefficient of the unit label.
    pub fn state(&self, c: &Elem<S, T, M>) -> Result<S> {
        if !c.seq.is_empty() {
            return Err(Error::ShapeMismatch("the state is defined on the spectral algebra".into()));
        }
        Ok(match c.comps.get(&self.unit_label) {
            Some(xs) => self.m().scalar_value(&xs[0]),
            None => S::zero(),
        })
    }

    /// Scalar Gram matrix `[omega(<xi_i, xi_j>)]`.
    pub fn state_gram(&self, family: &[Elem<S, T, M>]) -> Result<Matrix<S>> {
        let n = family.len();
        let mut g = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = self.state(&self.inner_formula(&family[i], &family[j])?)?;
                g.set(j, i, v.conj());
                g.set(i, j, v);
            }
        }
        Ok(g)
    }
}

/// The context `Rep(G) -> Hilb` (forgetful) and `mu`, with the action of `G`
/// on each irreducible attached.
pub fn group_context<S, M>(g: Arc<RepCat<S>>, mu: Arc<M>) -> Result<Induction<S, Forgetful<S>, M>>
where
    S: Scalar,
    M: Functor<S, Src = RepCat<S>>,
{
    let tau = Arc::new(Forgetful::new(g.clone()));
    let n = g.irreducibles().len();
    let reps = (0..n).map(|k| g.label_rep(k)).collect();
    Induction::new(tau, mu)?.with_action(reps)
}

pub fn unit_vector<S: Scalar>(n: usize, i: usize) -> Vec<S> {
    let mut v = vec![S::zero(); n];
    v[i] = S::one();
    v
}
