//! Arrows, solutions of the conjugate equations, and the operations every
//! C*-tensor category back end shares.

use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::report::CheckResult;
use crate::scalar::Scalar;

/// A morphism `source -> target`.
///
/// For concrete back ends `matrix` is the linear map itself; diagrammatic
/// back ends store a coefficient column over their basis of the hom space.
#[derive(Clone, PartialEq, Debug)]
pub struct Arrow<S, O> {
    pub source: O,
    pub target: O,
    pub matrix: Matrix<S>,
}

impl<S: Scalar, O: Clone + PartialEq + Debug> Arrow<S, O> {
    pub fn new(source: O, target: O, matrix: Matrix<S>) -> Self {
        Arrow { source, target, matrix }
    }

    fn same_hom(&self, other: &Self) {
        assert!(
            self.source == other.source && self.target == other.target,
            "arrows live in different hom spaces: {:?}->{:?} vs {:?}->{:?}",
            self.source,
            self.target,
            other.source,
            other.target
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_hom(other);
        Arrow::new(self.source.clone(), self.target.clone(), &self.matrix + &other.matrix)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_hom(other);
        Arrow::new(self.source.clone(), self.target.clone(), &self.matrix - &other.matrix)
    }

    pub fn scale(&self, s: &S) -> Self {
        Arrow::new(self.source.clone(), self.target.clone(), self.matrix.scale(s))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.matrix.approx_eq(&other.matrix)
    }

    pub fn residual(&self, other: &Self) -> f64 {
        if self.source != other.source || self.target != other.target {
            return f64::INFINITY;
        }
        self.matrix.residual(&other.matrix)
    }
}

/// A pair `R in (iota, conj x object)`, `Rbar in (iota, object x conj)`.
#[derive(Clone, PartialEq, Debug)]
pub struct ConjugateSolution<S, O> {
    pub object: O,
    pub conj: O,
    pub r: Arrow<S, O>,
    pub rbar: Arrow<S, O>,
    pub standard: bool,
}

/// A strict C*-tensor category with conjugates.
pub trait Category<S: Scalar>: Send + Sync {
    type Obj: Clone + Eq + Hash + Debug + Send + Sync;

    fn name(&self) -> String;
    fn unit(&self) -> Self::Obj;
    fn tensor_obj(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Obj;
    fn conj_obj(&self, a: &Self::Obj) -> Self::Obj;
    fn describe(&self, a: &Self::Obj) -> String {
        format!("{a:?}")
    }

    fn identity(&self, a: &Self::Obj) -> Arrow<S, Self::Obj>;
    fn zero_arrow(&self, s: &Self::Obj, t: &Self::Obj) -> Arrow<S, Self::Obj>;
    /// `f o g`, with `g` applied first.
    fn compose(&self, f: &Arrow<S, Self::Obj>, g: &Arrow<S, Self::Obj>) -> Result<Arrow<S, Self::Obj>>;
    fn tensor(&self, f: &Arrow<S, Self::Obj>, g: &Arrow<S, Self::Obj>) -> Arrow<S, Self::Obj>;
    fn adjoint(&self, f: &Arrow<S, Self::Obj>) -> Arrow<S, Self::Obj>;
    fn hom_basis(&self, s: &Self::Obj, t: &Self::Obj) -> Result<Vec<Arrow<S, Self::Obj>>>;

    /// The fixed (cached) standard solution used for `a` everywhere.
    fn solution(&self, a: &Self::Obj) -> Result<ConjugateSolution<S, Self::Obj>>;

    /// Irreducible labels known to the back end.
    fn irreducibles(&self) -> Vec<Self::Obj>;

    /// Isometries `w_i in (irreducibles()[k_i], a)` with `sum w_i w_i^* = 1`.
    fn fusion(&self, a: &Self::Obj) -> Result<Vec<(usize, Arrow<S, Self::Obj>)>>;

    /// The number `f` for `f in (iota, iota)`.
    fn scalar_value(&self, f: &Arrow<S, Self::Obj>) -> S;

    /// `f o g o ...`, the last arrow applied first.
    fn compose_all(&self, fs: &[&Arrow<S, Self::Obj>]) -> Result<Arrow<S, Self::Obj>> {
        let mut acc = (*fs.last().expect("empty composite")).clone();
        for f in fs.iter().rev().skip(1) {
            acc = self.compose(f, &acc)?;
        }
        Ok(acc)
    }

    fn tensor_all(&self, fs: &[&Arrow<S, Self::Obj>]) -> Arrow<S, Self::Obj> {
        let mut acc = (*fs.first().expect("empty tensor product")).clone();
        for f in &fs[1..] {
            acc = self.tensor(&acc, f);
        }
        acc
    }

    fn tensor_objs(&self, xs: &[Self::Obj]) -> Self::Obj {
        xs.iter().fold(self.unit(), |acc, x| self.tensor_obj(&acc, x))
    }

    fn dim_hom(&self, s: &Self::Obj, t: &Self::Obj) -> Result<usize> {
        Ok(self.hom_basis(s, t)?.len())
    }
}

/// `(Rbar^* x 1_u) o (1_u x R) = 1_u` and `(R^* x 1_ubar) o (1_ubar x Rbar) = 1_ubar`.
pub fn verify_conjugate_equations<S: Scalar, C: Category<S>>(
    cat: &C,
    sol: &ConjugateSolution<S, C::Obj>,
) -> Result<Vec<CheckResult>> {
    let u = &sol.object;
    let ub = &sol.conj;
    let item = cat.describe(u);
    let lhs1 = cat.compose(
        &cat.tensor(&cat.adjoint(&sol.rbar), &cat.identity(u)),
        &cat.tensor(&cat.identity(u), &sol.r),
    )?;
    let id_u = cat.identity(u);
    let lhs2 = cat.compose(
        &cat.tensor(&cat.adjoint(&sol.r), &cat.identity(ub)),
        &cat.tensor(&cat.identity(ub), &sol.rbar),
    )?;
    let id_ub = cat.identity(ub);
    Ok(vec![
        CheckResult::new("zigzag on u", "conjugate-equations", item.clone(), lhs1.approx_eq(&id_u), lhs1.residual(&id_u)),
        CheckResult::new("zigzag on conj u", "conjugate-equations", item, lhs2.approx_eq(&id_ub), lhs2.residual(&id_ub)),
    ])
}

pub fn solves_conjugate_equations<S: Scalar, C: Category<S>>(
    cat: &C,
    sol: &ConjugateSolution<S, C::Obj>,
) -> bool {
    verify_conjugate_equations(cat, sol).map_or(false, |cs| cs.iter().all(|c| c.passed()))
}

/// Traciality `R^* (1 x Y) R = Rbar^* (Y x 1) Rbar` over a basis of `(u, u)`.
pub fn is_standard<S: Scalar, C: Category<S>>(cat: &C, sol: &ConjugateSolution<S, C::Obj>) -> Result<bool> {
    for y in cat.hom_basis(&sol.object, &sol.object)? {
        let (l, r) = traces(cat, sol, &y)?;
        if !l.approx_eq(&r) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Left and right traces `R^*(1 x Y)R`, `Rbar^*(Y x 1)Rbar` of `Y in (u, u)`.
pub fn traces<S: Scalar, C: Category<S>>(
    cat: &C,
    sol: &ConjugateSolution<S, C::Obj>,
    y: &Arrow<S, C::Obj>,
) -> Result<(S, S)> {
    let l = cat.compose_all(&[&cat.adjoint(&sol.r), &cat.tensor(&cat.identity(&sol.conj), y), &sol.r])?;
    let r = cat.compose_all(&[&cat.adjoint(&sol.rbar), &cat.tensor(y, &cat.identity(&sol.conj)), &sol.rbar])?;
    Ok((cat.scalar_value(&l), cat.scalar_value(&r)))
}

/// `||R||^2` for the cached standard solution.
pub fn intrinsic_dimension<S: Scalar, C: Category<S>>(cat: &C, u: &C::Obj) -> Result<S> {
    let sol = cat.solution(u)?;
    Ok(cat.scalar_value(&cat.compose(&cat.adjoint(&sol.r), &sol.r)?))
}

/// The solution `(Rbar, R)` for the conjugate object.
pub fn conjugate_solution<S: Scalar, O: Clone>(sol: &ConjugateSolution<S, O>) -> ConjugateSolution<S, O> {
    ConjugateSolution {
        object: sol.conj.clone(),
        conj: sol.object.clone(),
        r: sol.rbar.clone(),
        rbar: sol.r.clone(),
        standard: sol.standard,
    }
}

/// Product solution for `u x v`:
/// `R = (1_vbar x R_u x 1_v) o R_v`, `Rbar = (1_u x Rbar_v x 1_ubar) o Rbar_u`.
pub fn tensor_solution<S: Scalar, C: Category<S>>(
    cat: &C,
    su: &ConjugateSolution<S, C::Obj>,
    sv: &ConjugateSolution<S, C::Obj>,
) -> Result<ConjugateSolution<S, C::Obj>> {
    let r = cat.compose(
        &cat.tensor_all(&[&cat.identity(&sv.conj), &su.r, &cat.identity(&sv.object)]),
        &sv.r,
    )?;
    let rbar = cat.compose(
        &cat.tensor_all(&[&cat.identity(&su.object), &sv.rbar, &cat.identity(&su.conj)]),
        &su.rbar,
    )?;
    Ok(ConjugateSolution {
        object: cat.tensor_obj(&su.object, &sv.object),
        conj: cat.tensor_obj(&sv.conj, &su.conj),
        r,
        rbar,
        standard: su.standard && sv.standard,
    })
}

/// The antilinear map `A -> A^bullet` from `(v, u)` to `(vbar, ubar)`:
/// `(R_v^* x 1_ubar) o (1_vbar x A^* x 1_ubar) o (1_vbar x Rbar_u)`.
pub fn bullet<S: Scalar, C: Category<S>>(
    cat: &C,
    a: &Arrow<S, C::Obj>,
    sol_source: &ConjugateSolution<S, C::Obj>,
    sol_target: &ConjugateSolution<S, C::Obj>,
) -> Result<Arrow<S, C::Obj>> {
    if a.source != sol_source.object || a.target != sol_target.object {
        return Err(Error::ShapeMismatch("bullet: solutions do not match the arrow".into()));
    }
    let vb = &sol_source.conj;
    let ub = &sol_target.conj;
    cat.compose_all(&[
        &cat.tensor(&cat.adjoint(&sol_source.r), &cat.identity(ub)),
        &cat.tensor_all(&[&cat.identity(vb), &cat.adjoint(a), &cat.identity(ub)]),
        &cat.tensor(&cat.identity(vb), &sol_target.rbar),
    ])
}

/// Standard solution assembled from the fusion of `u` into irreducibles:
/// `R = sum_i (w_i^bullet x w_i) R_i`, `Rbar = sum_i (w_i x w_i^bullet) Rbar_i`.
///
/// The cached solutions of `u` and of the irreducible labels supply the
/// conjugate object and the maps `w_i^bullet`.
pub fn standard_solution<S: Scalar, C: Category<S>>(cat: &C, u: &C::Obj) -> Result<ConjugateSolution<S, C::Obj>> {
    let reference = cat.solution(u)?;
    let labels = cat.irreducibles();
    let ub = reference.conj.clone();
    let mut r = cat.zero_arrow(&cat.unit(), &cat.tensor_obj(&ub, u));
    let mut rbar = cat.zero_arrow(&cat.unit(), &cat.tensor_obj(u, &ub));
    for (k, w) in cat.fusion(u)? {
        let sc = cat.solution(&labels[k])?;
        let wb = bullet(cat, &w, &sc, &reference)?;
        r = r.add(&cat.compose(&cat.tensor(&wb, &w), &sc.r)?);
        rbar = rbar.add(&cat.compose(&cat.tensor(&w, &wb), &sc.rbar)?);
    }
    let mut sol = ConjugateSolution { object: u.clone(), conj: ub, r, rbar, standard: false };
    sol.standard = is_standard(cat, &sol)?;
    Ok(sol)
}
