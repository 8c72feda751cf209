//! Finite-dimensional Hilbert spaces, objects labelled by their dimension.

use std::marker::PhantomData;

use crate::category::{Arrow, Category, ConjugateSolution};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Debug, Default)]
pub struct Hilb<S> {
    _s: PhantomData<S>,
}

impl<S: Scalar> Hilb<S> {
    pub fn new() -> Self {
        Hilb { _s: PhantomData }
    }

    pub fn arrow(&self, m: Matrix<S>) -> Arrow<S, usize> {
        Arrow::new(m.cols(), m.rows(), m)
    }
}

/// `sum_k e_k x e_k` in `C^n x C^n`.
pub fn canonical_vector<S: Scalar>(n: usize) -> Matrix<S> {
    Matrix::identity(n).vec()
}

impl<S: Scalar> Category<S> for Hilb<S> {
    type Obj = usize;

    fn name(&self) -> String {
        "Hilb".into()
    }
    fn unit(&self) -> usize {
        1
    }
    fn tensor_obj(&self, a: &usize, b: &usize) -> usize {
        a * b
    }
    fn conj_obj(&self, a: &usize) -> usize {
        *a
    }
    fn describe(&self, a: &usize) -> String {
        format!("C^{a}")
    }
    fn identity(&self, a: &usize) -> Arrow<S, usize> {
        Arrow::new(*a, *a, Matrix::identity(*a))
    }
    fn zero_arrow(&self, s: &usize, t: &usize) -> Arrow<S, usize> {
        Arrow::new(*s, *t, Matrix::zeros(*t, *s))
    }
    fn compose(&self, f: &Arrow<S, usize>, g: &Arrow<S, usize>) -> Result<Arrow<S, usize>> {
        if f.source != g.target {
            return Err(Error::ShapeMismatch(format!("compose C^{} after C^{}", f.source, g.target)));
        }
        Ok(Arrow::new(g.source, f.target, &f.matrix * &g.matrix))
    }
    fn tensor(&self, f: &Arrow<S, usize>, g: &Arrow<S, usize>) -> Arrow<S, usize> {
        Arrow::new(f.source * g.source, f.target * g.target, f.matrix.kron(&g.matrix))
    }
    fn adjoint(&self, f: &Arrow<S, usize>) -> Arrow<S, usize> {
        Arrow::new(f.target, f.source, f.matrix.adjoint())
    }
    fn hom_basis(&self, s: &usize, t: &usize) -> Result<Vec<Arrow<S, usize>>> {
        let mut out = Vec::with_capacity(s * t);
        for i in 0..*t {
            for j in 0..*s {
                let mut m = Matrix::zeros(*t, *s);
                m.set(i, j, S::one());
                out.push(Arrow::new(*s, *t, m));
            }
        }
        Ok(out)
    }
    fn solution(&self, a: &usize) -> Result<ConjugateSolution<S, usize>> {
        let v = canonical_vector::<S>(*a);
        Ok(ConjugateSolution {
            object: *a,
            conj: *a,
            r: Arrow::new(1, a * a, v.clone()),
            rbar: Arrow::new(1, a * a, v),
            standard: true,
        })
    }
    fn irreducibles(&self) -> Vec<usize> {
        vec![1]
    }
    fn fusion(&self, a: &usize) -> Result<Vec<(usize, Arrow<S, usize>)>> {
        Ok((0..*a)
            .map(|k| {
                let mut m = Matrix::zeros(*a, 1);
                m.set(k, 0, S::one());
                (0, Arrow::new(1, *a, m))
            })
            .collect())
    }
    fn scalar_value(&self, f: &Arrow<S, usize>) -> S {
        assert_eq!(f.matrix.shape(), (1, 1), "not an arrow of the unit object");
        f.matrix.get(0, 0).clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::*;
    use crate::surd::Surd;

    #[test]
    fn hilb_solutions() {
        let h = Hilb::<Surd>::new();
        let s = h.solution(&3).unwrap();
        assert!(solves_conjugate_equations(&h, &s));
        assert!(is_standard(&h, &s).unwrap());
        assert_eq!(intrinsic_dimension(&h, &3).unwrap(), Surd::from_i64(3));
        let st = standard_solution(&h, &3).unwrap();
        assert!(st.standard);
        assert_eq!(st.r, s.r);
    }

    #[test]
    fn scaled_solution_fails() {
        let h = Hilb::<Surd>::new();
        let mut s = h.solution(&2).unwrap();
        s.r = s.r.scale(&Surd::from_i64(2));
        assert!(!solves_conjugate_equations(&h, &s));
    }

    #[test]
    fn bullet_is_entrywise_conjugation() {
        let h = Hilb::<Surd>::new();
        let a = h.arrow(Matrix::from_vec(
            2,
            3,
            (0..6).map(|k| Surd::from_i64(k) + Surd::i() * Surd::from_i64(k * k)).collect(),
        ));
        let b = bullet(&h, &a, &h.solution(&3).unwrap(), &h.solution(&2).unwrap()).unwrap();
        assert_eq!(b.matrix, a.matrix.conj());
    }
}
