//! Fixed vectors, the isomorphisms behind fullness of `Ind`, and brute-force
//! intertwiner spaces on the finite-dimensional bimodules of a finite group.

use crate::category::{Arrow, Category};
use crate::error::{Error, Result};
use crate::functor::Functor;
use crate::hilb::Hilb;
use crate::linalg::{inverse, kernel, rank};
use crate::matrix::Matrix;
use crate::quasitensor::multi_mu;
use crate::report::CheckResult;
use crate::scalar::Scalar;

use super::swan::kron;
use super::{unit_vector, AObj, Elem, Induction, MObj};

/// Hom-space data for `(Ind mu_u, Ind mu_v)`.
#[derive(Clone, Debug)]
pub struct IndHom<S, O> {
    /// `dim (mu_u, mu_v)` from the target category.
    pub direct: usize,
    /// Dimension of the fixed vectors of the bimodule over `(v, ubar)`.
    pub fixed: usize,
    /// `delta gamma = 1` and `gamma delta = 1` on bases.
    pub round_trip: bool,
    /// The fixed vectors `gamma(T) x 1` for a basis `T` of `(mu_u, mu_v)`.
    pub images: Vec<Arrow<S, O>>,
}

/// A coordinate system on the bimodule over a sequence:
/// basis vectors `B^v_i x e_k` ordered by label, hom-basis index, then `k`.
pub struct FlatSpace<S, A, O> {
    pub seq: Vec<A>,
    pub target: O,
    /// `(label, hom basis, inverse Gram matrix of the basis, offset)`.
    blocks: Vec<(usize, Vec<Arrow<S, O>>, Matrix<S>, usize)>,
    pub dim: usize,
}

impl<S, T, M> Induction<S, T, M>
where
    S: Scalar,
    T: Functor<S, Tgt = Hilb<S>>,
    M: Functor<S, Src = T::Src>,
{
    /// The fixed vectors `T x 1_iota`, `T in (iota, mu_seq)`.
    pub fn fixed_vectors(&self, seq: &[AObj<S, T>]) -> Result<Vec<Elem<S, T, M>>> {
        let m = self.m();
        let target = self.target_of(&self.clean(seq));
        let mut out = Vec::new();
        for t in m.hom_basis(&m.unit(), &target)? {
            let mut e = self.zero(seq);
            e.comps.insert(self.unit_label, vec![t]);
            out.push(e);
        }
        Ok(out)
    }

    /// `gamma: (mu_u, mu_v) -> (iota, mu_v x mu_ubar)`, `T -> (T x 1) Rbarhat_u`, its
    /// inverse `X -> (1 x Rhat_u^*)(X x 1)`, and the dimension comparison.
    pub fn ind_hom(&self, u: &[AObj<S, T>], v: &[AObj<S, T>]) -> Result<IndHom<S, MObj<S, M>>> {
        let (a, m) = (self.a(), self.m());
        let (u, v) = (self.clean(u), self.clean(v));
        let sols = u.iter().map(|x| a.solution(x)).collect::<Result<Vec<_>>>()?;
        let hat = self.hat_solution(&sols)?;
        let (mu_u, mu_v) = (self.target_of(&u), self.target_of(&v));
        let basis = m.hom_basis(&mu_u, &mu_v)?;
        let gamma = |t: &Arrow<S, MObj<S, M>>| m.compose(&m.tensor(t, &m.identity(&hat.conj)), &hat.rbar);
        let delta = |x: &Arrow<S, MObj<S, M>>| {
            m.compose(&m.tensor(&m.identity(&mu_v), &m.adjoint(&hat.r)), &m.tensor(x, &m.identity(&mu_u)))
        };
        let images = basis.iter().map(gamma).collect::<Result<Vec<_>>>()?;
        let fixed = m.hom_basis(&m.unit(), &m.tensor_obj(&mu_v, &hat.conj))?;
        let mut round_trip = true;
        for (t, g) in basis.iter().zip(&images) {
            round_trip &= delta(g)?.approx_eq(t);
        }
        for x in &fixed {
            round_trip &= gamma(&delta(x)?)?.approx_eq(x);
        }
        Ok(IndHom { direct: basis.len(), fixed: fixed.len(), round_trip, images })
    }

    /// Fixed vectors commute with the given algebra elements.
    pub fn verify_fixed_central(&self, seq: &[AObj<S, T>], algebra: &[Elem<S, T, M>]) -> Result<CheckResult> {
        let mut res: f64 = 0.0;
        for f in self.fixed_vectors(seq)? {
            for c in algebra {
                res = res.max(self.seq_mul(c, &f)?.residual(&self.seq_mul(&f, c)?));
            }
        }
        let item = seq.iter().map(|x| self.a().describe(x)).collect::<Vec<_>>().join(", ");
        Ok(CheckResult::new("c . F = F . c", "fixed-vectors-central", format!("({item})"), res <= crate::scalar::eps(), res))
    }

    /// Coordinates on the bimodule over `seq`.
    pub fn flat(&self, seq: &[AObj<S, T>]) -> Result<FlatSpace<S, AObj<S, T>, MObj<S, M>>> {
        let m = self.m();
        let seq = self.clean(seq);
        let target = self.target_of(&seq);
        let mut blocks = Vec::new();
        let mut off = 0;
        for (v, l) in self.labels.iter().enumerate() {
            let b = m.hom_basis(&self.mu.map_obj(l), &target)?;
            if b.is_empty() {
                continue;
            }
            let n = b.len();
            let gram = Matrix::from_fn(n, n, |i, j| b[i].matrix.hs_inner(&b[j].matrix));
            let gi = inverse(&gram)?;
            blocks.push((v, b, gi, off));
            off += n * self.dims[v];
        }
        Ok(FlatSpace { seq, target, blocks, dim: off })
    }

    pub fn coords(&self, fs: &FlatSpace<S, AObj<S, T>, MObj<S, M>>, e: &Elem<S, T, M>) -> Result<Vec<S>> {
        if e.target != fs.target {
            return Err(Error::ShapeMismatch("coordinates in another bimodule".into()));
        }
        let mut out = vec![S::zero(); fs.dim];
        for (v, b, gi, off) in &fs.blocks {
            let d = self.dims[*v];
            if let Some(xs) = e.comps.get(v) {
                for (k, x) in xs.iter().enumerate() {
                    let rhs: Vec<S> = b.iter().map(|bi| bi.matrix.hs_inner(&x.matrix)).collect();
                    let c = gi * &Matrix::col_vec(rhs);
                    for i in 0..b.len() {
                        out[off + i * d + k] = c.get(i, 0).clone();
                    }
                }
            }
        }
        let covered: usize = fs.blocks.iter().map(|(v, ..)| *v).filter(|v| e.comps.contains_key(v)).count();
        if covered != e.comps.len() {
            return Err(Error::ShapeMismatch("element has a label outside the coordinate system".into()));
        }
        Ok(out)
    }

    pub fn from_coords(&self, fs: &FlatSpace<S, AObj<S, T>, MObj<S, M>>, c: &[S]) -> Elem<S, T, M> {
        let mut e = self.zero(&fs.seq);
        for (v, b, _, off) in &fs.blocks {
            let d = self.dims[*v];
            for (i, bi) in b.iter().enumerate() {
                let coeffs: Vec<S> = (0..d).map(|k| c[off + i * d + k].clone()).collect();
                self.accumulate(&mut e, *v, bi, &coeffs);
            }
        }
        e.prune();
        e
    }

    /// Matrix of a linear map between bimodules in flat coordinates.
    pub fn flat_map(
        &self,
        src: &FlatSpace<S, AObj<S, T>, MObj<S, M>>,
        tgt: &FlatSpace<S, AObj<S, T>, MObj<S, M>>,
        f: impl Fn(&Elem<S, T, M>) -> Result<Elem<S, T, M>>,
    ) -> Result<Matrix<S>> {
        let mut cols = Vec::with_capacity(src.dim);
        for j in 0..src.dim {
            let e = self.from_coords(src, &unit_vector(src.dim, j));
            cols.push(self.coords(tgt, &f(&e)?)?);
        }
        Ok(Matrix::from_columns(tgt.dim, &cols))
    }

    /// The action `M x psi -> M x v(g) psi` of a group element.
    pub fn flat_action(&self, fs: &FlatSpace<S, AObj<S, T>, MObj<S, M>>, g: usize) -> Result<Matrix<S>> {
        let reps = self.action.as_ref().ok_or_else(|| Error::Unsupported("no group action attached".into()))?;
        let mut out = Matrix::zeros(fs.dim, fs.dim);
        for (v, b, _, off) in &fs.blocks {
            let d = self.dims[*v];
            for i in 0..b.len() {
                out.set_block(off + i * d, off + i * d, reps[*v].matrix(g));
            }
        }
        Ok(out)
    }

    fn generators(&self) -> Result<Vec<usize>> {
        let reps = self.action.as_ref().ok_or_else(|| Error::Unsupported("no group action attached".into()))?;
        Ok(reps[0].group().generators().to_vec())
    }

    /// Basis of `{X : B_i X = X A_i}` for pairs `(A_i, B_i)` of square matrices.
    fn commutant(pairs: &[(Matrix<S>, Matrix<S>)], na: usize, nb: usize) -> Vec<Matrix<S>> {
        let id_a: Matrix<S> = Matrix::identity(na);
        let id_b: Matrix<S> = Matrix::identity(nb);
        let mut system: Option<Matrix<S>> = None;
        for (a, b) in pairs {
            let eq = &id_b.kron(&a.transpose()) - &b.kron(&id_a);
            system = Some(match system {
                None => eq,
                Some(s) => s.vstack(&eq),
            });
        }
        match system {
            None => (0..na * nb).map(|k| Matrix::from_vec(nb, na, unit_vector(na * nb, k))).collect(),
            Some(s) => kernel(&s).into_iter().map(|v| Matrix::from_vec(nb, na, v)).collect(),
        }
    }

    /// Right-module maps commuting with the group action, by brute force.
    pub fn module_intertwiners(
        &self,
        u: &[AObj<S, T>],
        v: &[AObj<S, T>],
        algebra: &[Elem<S, T, M>],
    ) -> Result<Vec<Matrix<S>>> {
        let (fu, fv) = (self.flat(u)?, self.flat(v)?);
        let mut pairs = Vec::new();
        for g in self.generators()? {
            pairs.push((self.flat_action(&fu, g)?, self.flat_action(&fv, g)?));
        }
        for c in algebra {
            pairs.push((
                self.flat_map(&fu, &fu, |e| self.seq_mul(e, c))?,
                self.flat_map(&fv, &fv, |e| self.seq_mul(e, c))?,
            ));
        }
        Ok(Self::commutant(&pairs, fu.dim, fv.dim))
    }

    /// Every module intertwiner commutes with the left action, and their number
    /// equals `dim (mu_u, mu_v)`.
    pub fn verify_module_intertwiners(
        &self,
        u: &[AObj<S, T>],
        v: &[AObj<S, T>],
        algebra: &[Elem<S, T, M>],
    ) -> Result<Vec<CheckResult>> {
        let (fu, fv) = (self.flat(u)?, self.flat(v)?);
        let ts = self.module_intertwiners(u, v, algebra)?;
        let mut res: f64 = 0.0;
        for c in algebra {
            let lu = self.flat_map(&fu, &fu, |e| self.seq_mul(c, e))?;
            let lv = self.flat_map(&fv, &fv, |e| self.seq_mul(c, e))?;
            for t in &ts {
                res = res.max((t * &lu).residual(&(&lv * t)));
            }
        }
        let a = self.a();
        let item = format!(
            "({}) -> ({})",
            u.iter().map(|x| a.describe(x)).collect::<Vec<_>>().join(", "),
            v.iter().map(|x| a.describe(x)).collect::<Vec<_>>().join(", ")
        );
        let direct = self.m().hom_basis(&self.target_of(&self.clean(u)), &self.target_of(&self.clean(v)))?.len();
        Ok(vec![
            CheckResult::new("module intertwiners are bimodule maps", "module-maps-bimodule", item.clone(), res <= crate::scalar::eps(), res),
            CheckResult::new("dim module maps = dim (mu_u, mu_v)", "ind-full", item, ts.len() == direct, 0.0)
                .with_note(format!("{} module maps, {} arrows", ts.len(), direct)),
        ])
    }

    /// Group intertwiners `tau_v -> P H` into the bimodule over `seq`, cut down by
    /// `lambda(p)` when `p` is given; returns the dimension.
    pub fn hom_into(&self, v: usize, seq: &[AObj<S, T>], p: Option<&Arrow<S, MObj<S, M>>>) -> Result<usize> {
        let reps = self.action.as_ref().ok_or_else(|| Error::Unsupported("no group action attached".into()))?;
        let fs = self.flat(seq)?;
        let mut pairs = Vec::new();
        for g in self.generators()? {
            pairs.push((reps[v].matrix(g).clone(), self.flat_action(&fs, g)?));
        }
        let xs = Self::commutant(&pairs, self.dims[v], fs.dim);
        match p {
            None => Ok(xs.len()),
            Some(p) => {
                let seq = fs.seq.clone();
                let pm = self.flat_map(&fs, &fs, |e| self.lambda(p, e, &seq))?;
                let cols: Vec<Vec<S>> = xs.iter().map(|x| (&pm * x).into_data()).collect();
                if cols.is_empty() {
                    return Ok(0);
                }
                Ok(rank(&Matrix::from_columns(fs.dim * self.dims[v], &cols)))
            }
        }
    }

    /// Frobenius counts for an irreducible label `v` and a sequence:
    /// (slots at `v`, group intertwiners into the bimodule, fixed vectors over `(vbar, seq)`).
    pub fn frobenius(&self, v: usize, seq: &[AObj<S, T>]) -> Result<(usize, usize, usize)> {
        let m = self.m();
        let target = self.target_of(&self.clean(seq));
        let slots = m.hom_basis(&self.mu.map_obj(&self.labels[v]), &target)?.len();
        let brute = self.hom_into(v, seq, None)?;
        let mut s2 = vec![self.labels[self.conj_label[v]].clone()];
        s2.extend(seq.iter().cloned());
        let fixed = self.fixed_vectors(&s2)?.len();
        Ok((slots, brute, fixed))
    }

    /// `lambda(mu~_{u,u'})(xi eta) = xi . eta` and
    /// `<xi eta, xi' eta'> = <eta, <xi, xi'> eta'>`.
    pub fn verify_products(
        &self,
        xis: &[Elem<S, T, M>],
        etas: &[Elem<S, T, M>],
    ) -> Result<Vec<CheckResult>> {
        let tol = crate::scalar::eps();
        let (mut r1, mut r2) = (0.0f64, 0.0f64);
        for (i, a) in xis.iter().enumerate() {
            for (j, b) in etas.iter().enumerate() {
                let p = self.seq_mul(a, b)?;
                if a.seq.len() == 1 && b.seq.len() == 1 {
                    let (u, v) = (&a.seq[0], &b.seq[0]);
                    let uv = self.a().tensor_obj(u, v);
                    let l = self.lambda(&self.mu.mu_tilde(u, v)?, &p, &[uv])?;
                    r1 = r1.max(l.residual(&self.dot(a, b)?));
                }
                for a2 in &xis[i..] {
                    for b2 in &etas[j..] {
                        let lhs = self.inner_formula(&p, &self.seq_mul(a2, b2)?)?;
                        let rhs = self.inner_formula(b, &self.seq_mul(&self.inner_formula(a, a2)?, b2)?)?;
                        r2 = r2.max(lhs.residual(&rhs));
                    }
                }
            }
        }
        Ok(vec![
            CheckResult::new("lambda(mu~) (xi eta) = xi . eta", "product-compatibility", "corpus", r1 <= tol, r1),
            CheckResult::new("<xi eta, xi' eta'> = <eta, <xi, xi'> eta'>", "product-isometry", "corpus", r2 <= tol, r2),
        ])
    }

    /// Writes `M x psi` over `(u, seq')` as `sum_j x_j eta_j` with
    /// `eta_j = T' x (j_u e_j x psi)`; returns the residual of the reconstruction.
    pub fn product_decomposition(
        &self,
        u: &AObj<S, T>,
        rest: &[AObj<S, T>],
        v: &AObj<S, T>,
        mm: &Arrow<S, MObj<S, M>>,
        psi: &[S],
    ) -> Result<f64> {
        let (a, m) = (self.a(), self.m());
        let sol = a.solution(u)?;
        let hat = crate::quasitensor::image_solution(self.mu.as_ref(), &sol)?;
        let mut seq = vec![u.clone()];
        seq.extend(rest.iter().cloned());
        let target_rest = self.target_of(&self.clean(rest));
        let elem = self.raw(&seq, v, mm, psi)?;
        // T = (Rhat^* x 1)(1_{mu_ubar} x M), T' = T mu~^*_{ubar,v}
        let t = m.compose(
            &m.tensor(&m.adjoint(&hat.r), &m.identity(&target_rest)),
            &m.tensor(&m.identity(&hat.conj), mm),
        )?;
        let tp = m.compose(&t, &m.adjoint(&self.mu.mu_tilde(&sol.conj, v)?))?;
        let ubv = a.tensor_obj(&sol.conj, v);
        let d = self.tau.map_obj(u);
        let mut total = self.zero(&seq);
        for j in 0..d {
            let e = unit_vector(d, j);
            let eta = self.raw(rest, &ubv, &tp, &kron(&self.j(&sol, &e)?, psi))?;
            total = total.add(&self.seq_mul(&self.x(u, &e)?, &eta)?);
        }
        Ok(total.residual(&elem))
    }

    /// `Rhat_seq = mu~^*_{seqbar,seq} mu(R_seq)` for the product solutions.
    pub fn verify_sequence_solution(&self, seq: &[AObj<S, T>]) -> Result<CheckResult> {
        let (a, m) = (self.a(), self.m());
        let sols = seq.iter().map(|x| a.solution(x)).collect::<Result<Vec<_>>>()?;
        let hat = self.hat_solution(&sols)?;
        let mut prod = sols[0].clone();
        for s in &sols[1..] {
            prod = crate::category::tensor_solution(a, &prod, s)?;
        }
        let mut all: Vec<_> = sols.iter().rev().map(|s| s.conj.clone()).collect();
        all.extend(seq.iter().cloned());
        let lhs = m.compose(&m.adjoint(&multi_mu(self.mu.as_ref(), &all)?), &self.mu.map_arrow(&prod.r)?)?;
        let item = seq.iter().map(|x| a.describe(x)).collect::<Vec<_>>().join(", ");
        Ok(CheckResult::new(
            "Rhat = mu~^* mu(R) for sequences",
            "sequence-image-solution",
            format!("({item})"),
            lhs.approx_eq(&hat.r),
            lhs.residual(&hat.r),
        ))
    }
}
