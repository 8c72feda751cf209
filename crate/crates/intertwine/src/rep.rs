//! Unitary representations of finite groups, intertwiner spaces and decomposition.

use std::sync::Arc;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::linalg::{self, check_representation, kernel, orthogonalize};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::surd::Surd;

#[derive(Clone, Debug)]
pub struct Rep<S> {
    group: Arc<FiniteGroup>,
    mats: Vec<Matrix<S>>,
}

impl<S: Scalar> Rep<S> {
    /// One matrix per group element; checked to be a unitary homomorphism.
    pub fn new(group: Arc<FiniteGroup>, mats: Vec<Matrix<S>>) -> Result<Self> {
        check_representation(&mats, group.table())?;
        if let Some(g) = mats.iter().position(|m| !m.is_unitary()) {
            return Err(Error::NotARepresentation(format!("rho({g}) is not unitary")));
        }
        Ok(Rep { group, mats })
    }

    pub fn from_generators(group: Arc<FiniteGroup>, images: Vec<Matrix<S>>) -> Result<Self> {
        if images.len() != group.generators().len() {
            return Err(Error::NotARepresentation(format!(
                "{} generator images for {} generators",
                images.len(),
                group.generators().len()
            )));
        }
        let n = images.first().map(|m| m.rows()).unwrap_or(1);
        let mats = group.extend(&images, Matrix::identity(n), |a, b| a * b);
        Self::new(group, mats)
    }

    pub fn trivial(group: Arc<FiniteGroup>) -> Self {
        let mats = vec![Matrix::identity(1); group.order()];
        Rep { group, mats }
    }

    /// Left regular representation on `C[G]`.
    pub fn regular(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let mats = (0..n)
            .map(|g| {
                let mut m = Matrix::zeros(n, n);
                for h in 0..n {
                    m.set(group.mul(g, h), h, S::one());
                }
                m
            })
            .collect();
        Rep { group, mats }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }
    pub fn dim(&self) -> usize {
        self.mats[0].rows()
    }
    pub fn matrix(&self, g: usize) -> &Matrix<S> {
        &self.mats[g]
    }
    pub fn matrices(&self) -> &[Matrix<S>] {
        &self.mats
    }

    pub fn conj(&self) -> Self {
        Rep { group: self.group.clone(), mats: self.mats.iter().map(|m| m.conj()).collect() }
    }

    pub fn is_real(&self) -> bool {
        self.mats.iter().all(|m| m.data().iter().all(|x| x.is_real()))
    }

    pub fn tensor(&self, other: &Self) -> Self {
        assert!(Arc::ptr_eq(&self.group, &other.group), "tensor of representations of different groups");
        let mats = self.mats.iter().zip(&other.mats).map(|(a, b)| a.kron(b)).collect();
        Rep { group: self.group.clone(), mats }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mats = self.mats.iter().zip(&other.mats).map(|(a, b)| a.direct_sum(b)).collect();
        Rep { group: self.group.clone(), mats }
    }

    pub fn restrict(&self, sub: &Subgroup) -> Self {
        assert!(Arc::ptr_eq(&self.group, &sub.parent), "restriction to a subgroup of another group");
        let mats = sub.embedding.iter().map(|&g| self.mats[g].clone()).collect();
        Rep { group: sub.group.clone(), mats }
    }

    /// `Ind_K^G` of a representation of `K`, on functions over the left cosets
    /// `t_i K`: block `(i, j)` of `g` is `w(t_i^-1 g t_j)` when that lies in `K`.
    pub fn induce(&self, sub: &Subgroup) -> Self {
        assert!(Arc::ptr_eq(&self.group, &sub.group), "induction from a different subgroup");
        let g = &sub.parent;
        let ts = sub.left_transversal();
        let (d, r) = (self.dim(), ts.len());
        let mats = (0..g.order())
            .map(|x| {
                let mut m = Matrix::zeros(d * r, d * r);
                for (i, &ti) in ts.iter().enumerate() {
                    for (j, &tj) in ts.iter().enumerate() {
                        if let Some(k) = sub.locate(g.mul(g.mul(g.inv(ti), x), tj)) {
                            m.set_block(i * d, j * d, &self.mats[k]);
                        }
                    }
                }
                m
            })
            .collect();
        Rep { group: g.clone(), mats }
    }

    /// `rho o phi` for a homomorphism `phi: H -> G` given elementwise.
    pub fn pullback(&self, group: Arc<FiniteGroup>, phi: &[usize]) -> Result<Self> {
        let mats = phi.iter().map(|&g| self.mats[g].clone()).collect();
        Self::new(group, mats)
    }

    /// `U^* rho U` for an isometry `U` onto an invariant subspace.
    pub fn compress(&self, u: &Matrix<S>) -> Self {
        let ua = u.adjoint();
        let mats = self.mats.iter().map(|m| &(&ua * m) * u).collect();
        Rep { group: self.group.clone(), mats }
    }

    pub fn character(&self) -> Vec<S> {
        self.mats.iter().map(|m| m.trace()).collect()
    }

    pub fn cast<T: Scalar>(&self) -> Option<Rep<T>> {
        let mats = self.mats.iter().map(|m| m.cast::<T>()).collect::<Option<Vec<_>>>()?;
        Some(Rep { group: self.group.clone(), mats })
    }
}

impl Rep<Surd> {
    pub fn lower<T: Scalar>(&self) -> Rep<T> {
        Rep { group: self.group.clone(), mats: self.mats.iter().map(lower_matrix).collect() }
    }
}

pub fn lower_matrix<T: Scalar>(m: &Matrix<Surd>) -> Matrix<T> {
    Matrix::from_vec(m.rows(), m.cols(), m.data().iter().map(T::from_surd).collect())
}

/// `(1/|G|) sum_g conj(a(g)) b(g)`.
pub fn character_inner<S: Scalar>(a: &[S], b: &[S]) -> S {
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b) {
        acc = acc + x.conj() * y.clone();
    }
    acc / S::from_i64(a.len() as i64)
}

/// Basis of `{T : T a(g) = b(g) T}` from the generator equations.
pub fn intertwiners<S: Scalar>(a: &Rep<S>, b: &Rep<S>) -> Vec<Matrix<S>> {
    let (na, nb) = (a.dim(), b.dim());
    let gens = a.group().generators();
    if gens.is_empty() {
        return (0..nb * na)
            .map(|k| {
                let mut m = Matrix::zeros(nb, na);
                m.set(k / na, k % na, S::one());
                m
            })
            .collect();
    }
    let id_a: Matrix<S> = Matrix::identity(na);
    let id_b: Matrix<S> = Matrix::identity(nb);
    let mut system: Option<Matrix<S>> = None;
    for &g in gens {
        // row-major vec: vec(T A) = (I x A^T) vec T, vec(B T) = (B x I) vec T
        let eq = &id_b.kron(&a.matrix(g).transpose()) - &b.matrix(g).kron(&id_a);
        system = Some(match system {
            None => eq,
            Some(s) => s.vstack(&eq),
        });
    }
    kernel(&system.expect("at least one generator"))
        .into_iter()
        .map(|v| Matrix::from_vec(nb, na, v))
        .collect()
}

/// Mutually orthogonal isometries `lambda -> rho` spanning `(lambda, rho)`, for irreducible `lambda`.
pub fn isotypic_isometries<S: Scalar>(lambda: &Rep<S>, rho: &Rep<S>) -> Result<Vec<Matrix<S>>> {
    let basis = intertwiners(lambda, rho);
    let (nb, na) = (rho.dim(), lambda.dim());
    let vecs: Vec<Vec<S>> = basis.into_iter().map(|m| m.into_data()).collect();
    let d = S::from_i64(na as i64);
    orthogonalize(&vecs, None)?
        .into_iter()
        .map(|(v, n)| {
            // T^*T = (tr T^*T / d) 1 by Schur
            let c = (n / d.clone())
                .sqrt_real()
                .ok_or_else(|| Error::NoExactSqrt("isometry normalisation".into()))?;
            let m = Matrix::from_vec(nb, na, v).scale(&c.inv());
            Ok(m)
        })
        .collect()
}

pub fn is_irreducible<S: Scalar>(rho: &Rep<S>) -> bool {
    intertwiners(rho, rho).len() == 1
}

/// Multiplicity of each irrep in `rho`, by the dimension of the intertwiner space.
pub fn multiplicities<S: Scalar>(rho: &Rep<S>, irreps: &[Rep<S>]) -> Vec<usize> {
    irreps.iter().map(|l| intertwiners(l, rho).len()).collect()
}

/// Every one-dimensional representation, found by trying roots of unity on the
/// generators.  Needs generator orders dividing 24 (the exact roots available).
pub fn linear_characters(group: &Arc<FiniteGroup>) -> Result<Vec<Rep<Surd>>> {
    let gens = group.generators();
    let orders: Vec<usize> = gens.iter().map(|&g| group.element_order(g)).collect();
    if let Some(o) = orders.iter().find(|&&o| 24 % o != 0) {
        return Err(Error::Unsupported(format!("exact roots of unity of order {o}")));
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let imgs: Vec<Matrix<Surd>> = choice
            .iter()
            .zip(&orders)
            .map(|(&c, &o)| Matrix::scalar(root_of_unity(o, c)))
            .collect();
        if let Ok(r) = Rep::from_generators(group.clone(), imgs) {
            out.push(r);
        }
        // odometer
        let mut k = 0;
        loop {
            if k == choice.len() {
                return Ok(out);
            }
            choice[k] += 1;
            if choice[k] < orders[k] {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// `exp(2 pi i k / n)` for `n` dividing 24.
pub fn root_of_unity(n: usize, k: usize) -> Surd {
    assert!(n > 0 && 24 % n == 0, "no exact root of unity of order {n}");
    let e = (k % n) * (24 / n);
    let q = |a: i64, b: i64| Surd::from_ratio(a, b);
    let (s2, s6) = (Surd::sqrt_int(2), Surd::sqrt_int(6));
    // exp(i pi / 12)
    let z = (s6.clone() + s2.clone()) * q(1, 4) + Surd::i() * (s6 - s2) * q(1, 4);
    let mut acc = Surd::from_i64(1);
    for _ in 0..e {
        acc = acc * z.clone();
    }
    acc
}

/// Irreducible unitary representations in double precision, by splitting the
/// regular representation with a random self-adjoint element of its commutant.
/// The trivial representation comes first.
pub fn float_irreps(group: &Arc<FiniteGroup>, seed: u64) -> Result<Vec<Rep<Complex<f64>>>> {
    type C = Complex<f64>;
    let n = group.order();
    let reg: Rep<C> = Rep::regular(group.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = Matrix::<C>::from_fn(n, n, |_, _| C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    x = &x + &x.adjoint();
    let mut h = Matrix::<C>::zeros(n, n);
    for m in reg.matrices() {
        h = &h + &(&(&m.adjoint() * &x) * m);
    }
    let (vals, vecs) = linalg::eigh(&h);
    let tol = 1e-6 * vals.iter().fold(1.0f64, |a, v| a.max(v.abs()));
    let mut found: Vec<Rep<C>> = Vec::new();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && (vals[end] - vals[start]).abs() < tol {
            end += 1;
        }
        let cols: Vec<Vec<C>> = (start..end).map(|j| vecs.col(j)).collect();
        let u = Matrix::from_columns(n, &cols);
        let sub = reg.compress(&u);
        let chi = sub.character();
        let new = !found.iter().any(|f| {
            let c = character_inner(&f.character(), &chi);
            (c.re - 1.0).abs() < 1e-6
        });
        if new {
            found.push(Rep::new(group.clone(), sub.matrices().to_vec()).map_err(|_| {
                Error::Unsupported("eigenspace of the commutant is not invariant; retry with another seed".into())
            })?);
        }
        start = end;
    }
    let total: usize = found.iter().map(|r| r.dim() * r.dim()).sum();
    if total != n {
        return Err(Error::Unsupported(format!("found irreps of total square dimension {total}, expected {n}")));
    }
    found.sort_by_key(|r| {
        let triv = r.dim() == 1 && r.matrices().iter().all(|m| (m.get(0, 0).re - 1.0).abs() < 1e-9);
        (!triv, r.dim())
    });
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{int_from_real, matrix_group};

    fn s3() -> Arc<FiniteGroup> {
        let r = int_from_real(&[0, 0, 1, 1, 0, 0, 0, 1, 0]);
        let s = int_from_real(&[0, 1, 0, 1, 0, 0, 0, 0, 1]);
        Arc::new(matrix_group("S3", 3, &[r, s], &["r", "s"]).unwrap().0)
    }

    #[test]
    fn roots_of_unity() {
        for n in [1, 2, 3, 4, 6, 8, 12, 24] {
            let z = root_of_unity(n, 1);
            let mut p = Surd::from_i64(1);
            for _ in 0..n {
                p = p * z.clone();
            }
            assert_eq!(p, Surd::from_i64(1), "order {n}");
        }
        assert_eq!(root_of_unity(3, 1), Surd::omega());
    }

    #[test]
    fn s3_characters_and_float_irreps() {
        let g = s3();
        assert_eq!(linear_characters(&g).unwrap().len(), 2);
        let irr = float_irreps(&g, 7).unwrap();
        assert_eq!(irr.iter().map(|r| r.dim()).collect::<Vec<_>>(), vec![1, 1, 2]);
        for r in &irr {
            assert!(is_irreducible(r));
        }
    }

    #[test]
    fn isometries_are_orthogonal() {
        let g = s3();
        let perm: Rep<Surd> = Rep::regular(g.clone());
        let std = Rep::<Surd>::from_generators(
            g.clone(),
            vec![
                Matrix::diag(&[Surd::omega(), Surd::omega() * Surd::omega()]),
                Matrix::from_i64(2, 2, &[0, 1, 1, 0]),
            ],
        )
        .unwrap();
        let w = isotypic_isometries(&std, &perm).unwrap();
        assert_eq!(w.len(), 2);
        assert!((&w[0].adjoint() * &w[1]).is_zero());
        assert!(w[0].is_isometry());
    }

    #[test]
    fn induced_from_trivial_subgroup_is_regular() {
        let g = s3();
        let triv = g.trivial_subgroup();
        let ind = Rep::<Surd>::trivial(triv.group.clone()).induce(&triv);
        check_representation(ind.matrices(), g.table()).unwrap();
        assert_eq!(ind.character(), Rep::<Surd>::regular(g).character());
    }
}
