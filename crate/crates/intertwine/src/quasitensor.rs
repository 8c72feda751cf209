//! Quasitensor functors: identity, composition, image solutions and the
//! executable form of the axioms and of the bullet identities for `mu_tilde`.

use std::sync::Arc;

use crate::category::{bullet, conjugate_solution, is_standard, tensor_solution, Arrow, Category, ConjugateSolution};
use crate::error::Result;
use crate::functor::{Functor, FunctorKind, SrcObj, TgtObj};
use crate::report::CheckResult;
use crate::scalar::Scalar;

/// The identity functor of a category.
pub struct IdentityFunctor<C> {
    cat: Arc<C>,
}

impl<C> IdentityFunctor<C> {
    pub fn new(cat: Arc<C>) -> Self {
        IdentityFunctor { cat }
    }
}

impl<S: Scalar, C: Category<S>> Functor<S> for IdentityFunctor<C> {
    type Src = C;
    type Tgt = C;

    fn src(&self) -> &C {
        &self.cat
    }
    fn tgt(&self) -> &C {
        &self.cat
    }
    fn name(&self) -> String {
        format!("Id({})", self.cat.name())
    }
    fn kind(&self) -> FunctorKind {
        FunctorKind::Strict
    }
    fn map_obj(&self, u: &C::Obj) -> C::Obj {
        u.clone()
    }
    fn map_arrow(&self, a: &Arrow<S, C::Obj>) -> Result<Arrow<S, C::Obj>> {
        Ok(a.clone())
    }
    fn mu_tilde(&self, u: &C::Obj, v: &C::Obj) -> Result<Arrow<S, C::Obj>> {
        Ok(self.cat.identity(&self.cat.tensor_obj(u, v)))
    }
}

/// `g o f` with comparison maps `g(f~_{u,v}) o g~_{f u, f v}`.
pub struct Composite<F, G> {
    f: Arc<F>,
    g: Arc<G>,
}

impl<F, G> Composite<F, G> {
    pub fn new(g: Arc<G>, f: Arc<F>) -> Self {
        Composite { f, g }
    }
    pub fn inner(&self) -> &Arc<F> {
        &self.f
    }
    pub fn outer(&self) -> &Arc<G> {
        &self.g
    }
}

impl<S, F, G> Functor<S> for Composite<F, G>
where
    S: Scalar,
    F: Functor<S>,
    G: Functor<S, Src = F::Tgt>,
{
    type Src = F::Src;
    type Tgt = G::Tgt;

    fn src(&self) -> &F::Src {
        self.f.src()
    }
    fn tgt(&self) -> &G::Tgt {
        self.g.tgt()
    }
    fn name(&self) -> String {
        format!("{} o {}", self.g.name(), self.f.name())
    }
    fn kind(&self) -> FunctorKind {
        use FunctorKind::*;
        match (self.f.kind(), self.g.kind()) {
            (Strict, Strict) => Strict,
            (Quasitensor, _) | (_, Quasitensor) => Quasitensor,
            _ => Relaxed,
        }
    }
    fn map_obj(&self, u: &SrcObj<S, F>) -> TgtObj<S, G> {
        self.g.map_obj(&self.f.map_obj(u))
    }
    fn map_arrow(&self, a: &Arrow<S, SrcObj<S, F>>) -> Result<Arrow<S, TgtObj<S, G>>> {
        self.g.map_arrow(&self.f.map_arrow(a)?)
    }
    fn mu_tilde(&self, u: &SrcObj<S, F>, v: &SrcObj<S, F>) -> Result<Arrow<S, TgtObj<S, G>>> {
        let inner = self.g.map_arrow(&self.f.mu_tilde(u, v)?)?;
        let outer = self.g.mu_tilde(&self.f.map_obj(u), &self.f.map_obj(v))?;
        self.g.tgt().compose(&inner, &outer)
    }
}

/// A functor whose comparison map on one pair of objects is rescaled.
/// Used to exhibit failures of the axioms.
pub struct Perturbed<F: Functor<S>, S: Scalar> {
    inner: Arc<F>,
    pair: (SrcObj<S, F>, SrcObj<S, F>),
    factor: S,
}

impl<S: Scalar, F: Functor<S>> Perturbed<F, S> {
    pub fn new(inner: Arc<F>, u: SrcObj<S, F>, v: SrcObj<S, F>, factor: S) -> Self {
        Perturbed { inner, pair: (u, v), factor }
    }
}

impl<S: Scalar, F: Functor<S>> Functor<S> for Perturbed<F, S> {
    type Src = F::Src;
    type Tgt = F::Tgt;

    fn src(&self) -> &F::Src {
        self.inner.src()
    }
    fn tgt(&self) -> &F::Tgt {
        self.inner.tgt()
    }
    fn name(&self) -> String {
        format!("perturbed {}", self.inner.name())
    }
    fn kind(&self) -> FunctorKind {
        self.inner.kind()
    }
    fn map_obj(&self, u: &SrcObj<S, F>) -> TgtObj<S, F> {
        self.inner.map_obj(u)
    }
    fn map_arrow(&self, a: &Arrow<S, SrcObj<S, F>>) -> Result<Arrow<S, TgtObj<S, F>>> {
        self.inner.map_arrow(a)
    }
    fn mu_tilde(&self, u: &SrcObj<S, F>, v: &SrcObj<S, F>) -> Result<Arrow<S, TgtObj<S, F>>> {
        let m = self.inner.mu_tilde(u, v)?;
        if (u, v) == (&self.pair.0, &self.pair.1) {
            Ok(m.scale(&self.factor))
        } else {
            Ok(m)
        }
    }
}

/// `mu~_{u_1,...,u_n}`, nested to the left.  The identity for `n = 1`.
pub fn multi_mu<S: Scalar, F: Functor<S>>(f: &F, seq: &[SrcObj<S, F>]) -> Result<Arrow<S, TgtObj<S, F>>> {
    let (a, t) = (f.src(), f.tgt());
    match seq.len() {
        0 => Ok(t.identity(&t.unit())),
        1 => Ok(t.identity(&f.map_obj(&seq[0]))),
        n => {
            let head = &seq[..n - 1];
            let last = &seq[n - 1];
            let prefix = a.tensor_objs(head);
            let inner = multi_mu(f, head)?;
            t.compose(&f.mu_tilde(&prefix, last)?, &t.tensor(&inner, &t.identity(&f.map_obj(last))))
        }
    }
}

/// `mu~_{u_1,...,u_n}`, nested to the right.
pub fn multi_mu_right<S: Scalar, F: Functor<S>>(f: &F, seq: &[SrcObj<S, F>]) -> Result<Arrow<S, TgtObj<S, F>>> {
    let (a, t) = (f.src(), f.tgt());
    match seq.len() {
        0 => Ok(t.identity(&t.unit())),
        1 => Ok(t.identity(&f.map_obj(&seq[0]))),
        _ => {
            let first = &seq[0];
            let tail = &seq[1..];
            let suffix = a.tensor_objs(tail);
            let inner = multi_mu_right(f, tail)?;
            t.compose(&f.mu_tilde(first, &suffix)?, &t.tensor(&t.identity(&f.map_obj(first)), &inner))
        }
    }
}

/// `Rhat = mu~*_{ubar,u} mu(R)`, `Rbarhat = mu~*_{u,ubar} mu(Rbar)`.
pub fn image_solution<S: Scalar, F: Functor<S>>(
    f: &F,
    sol: &ConjugateSolution<S, SrcObj<S, F>>,
) -> Result<ConjugateSolution<S, TgtObj<S, F>>> {
    let t = f.tgt();
    let (u, ub) = (&sol.object, &sol.conj);
    let r = t.compose(&t.adjoint(&f.mu_tilde(ub, u)?), &f.map_arrow(&sol.r)?)?;
    let rbar = t.compose(&t.adjoint(&f.mu_tilde(u, ub)?), &f.map_arrow(&sol.rbar)?)?;
    let mut out = ConjugateSolution { object: f.map_obj(u), conj: f.map_obj(ub), r, rbar, standard: false };
    out.standard = is_standard(t, &out).unwrap_or(false);
    Ok(out)
}

fn check<S: Scalar, O: Clone + PartialEq + std::fmt::Debug>(
    identity: &str,
    tag: &str,
    item: String,
    lhs: &Arrow<S, O>,
    rhs: &Arrow<S, O>,
) -> CheckResult {
    CheckResult::new(identity, tag, item, lhs.approx_eq(rhs), lhs.residual(rhs))
}

/// Every axiom of a quasitensor functor on the given objects and arrows.
///
/// Triples of objects are taken over the whole list; naturality uses every
/// ordered pair of arrows, and functoriality every composable pair.
pub fn verify_quasitensor_axioms<S: Scalar, F: Functor<S>>(
    f: &F,
    objects: &[SrcObj<S, F>],
    arrows: &[Arrow<S, SrcObj<S, F>>],
) -> Result<Vec<CheckResult>> {
    let (a, t) = (f.src(), f.tgt());
    let mut out = Vec::new();
    let d = |x: &SrcObj<S, F>| a.describe(x);

    let mu_unit = f.map_obj(&a.unit());
    out.push(CheckResult::new(
        "mu(unit) = unit",
        "unit-object",
        format!("{}", a.name()),
        mu_unit == t.unit(),
        0.0,
    ));

    for u in objects {
        let one = t.identity(&f.map_obj(u));
        let unit = a.unit();
        out.push(check("mu~(u, unit) = 1", "unit-constraint", d(u), &f.mu_tilde(u, &unit)?, &one));
        out.push(check("mu~(unit, u) = 1", "unit-constraint", d(u), &f.mu_tilde(&unit, u)?, &one));
    }

    for u in objects {
        for v in objects {
            let m = f.mu_tilde(u, v)?;
            let item = format!("({}, {})", d(u), d(v));
            let mm = t.compose(&t.adjoint(&m), &m)?;
            out.push(check("mu~* mu~ = 1", "isometry", item.clone(), &mm, &t.identity(&mm.source)));
            match f.kind() {
                FunctorKind::Relaxed | FunctorKind::Strict => {
                    let mm2 = t.compose(&m, &t.adjoint(&m))?;
                    out.push(check("mu~ mu~* = 1", "unitarity", item.clone(), &mm2, &t.identity(&mm2.source)));
                }
                FunctorKind::Quasitensor => {}
            }
            if f.kind() == FunctorKind::Strict {
                let id = t.identity(&m.source);
                let ok = m.source == m.target && m.approx_eq(&id);
                out.push(CheckResult::new("mu~ = 1", "strictness", item, ok, if ok { 0.0 } else { m.residual(&id) }));
            }
        }
    }

    for u in objects {
        for v in objects {
            for w in objects {
                let item = format!("({}, {}, {})", d(u), d(v), d(w));
                let (mu, mw) = (f.map_obj(u), f.map_obj(w));
                let uv = a.tensor_obj(u, v);
                let vw = a.tensor_obj(v, w);
                // mu~*_{u,vw} mu~_{uv,w} = (1 x mu~_{v,w}) (mu~*_{u,v} x 1)
                let lhs = t.compose(&t.adjoint(&f.mu_tilde(u, &vw)?), &f.mu_tilde(&uv, w)?)?;
                let rhs = t.compose(
                    &t.tensor(&t.identity(&mu), &f.mu_tilde(v, w)?),
                    &t.tensor(&t.adjoint(&f.mu_tilde(u, v)?), &t.identity(&mw)),
                )?;
                out.push(check("commuting square", "commuting-square", item.clone(), &lhs, &rhs));
                let l = t.compose(&f.mu_tilde(&uv, w)?, &t.tensor(&f.mu_tilde(u, v)?, &t.identity(&mw)))?;
                let r = t.compose(&f.mu_tilde(u, &vw)?, &t.tensor(&t.identity(&mu), &f.mu_tilde(v, w)?))?;
                out.push(check("associativity", "associativity", item, &l, &r));
            }
        }
    }

    for (i, s) in arrows.iter().enumerate() {
        for (j, tt) in arrows.iter().enumerate() {
            let item = format!("arrows #{i} x #{j}");
            let lhs = t.compose(&f.map_arrow(&a.tensor(s, tt))?, &f.mu_tilde(&s.source, &tt.source)?)?;
            let rhs = t.compose(
                &f.mu_tilde(&s.target, &tt.target)?,
                &t.tensor(&f.map_arrow(s)?, &f.map_arrow(tt)?),
            )?;
            out.push(check("mu(S x T) mu~ = mu~ (mu S x mu T)", "naturality", item.clone(), &lhs, &rhs));
            if s.source == tt.target {
                let l = f.map_arrow(&a.compose(s, tt)?)?;
                let r = t.compose(&f.map_arrow(s)?, &f.map_arrow(tt)?)?;
                out.push(check("mu(S T) = mu(S) mu(T)", "functoriality", item, &l, &r));
            }
        }
        let l = f.map_arrow(&a.adjoint(s))?;
        let r = t.adjoint(&f.map_arrow(s)?);
        out.push(check("mu(S*) = mu(S)*", "functoriality", format!("arrow #{i}"), &l, &r));
    }
    Ok(out)
}

/// Solution for `x x y` built from solutions of `x` and `y`.
fn product<S: Scalar, C: Category<S>>(
    cat: &C,
    sx: &ConjugateSolution<S, C::Obj>,
    sy: &ConjugateSolution<S, C::Obj>,
) -> Result<ConjugateSolution<S, C::Obj>> {
    tensor_solution(cat, sx, sy)
}

/// The bullet identities for comparison maps, and `R^bullet = R`, for one pair `(u, v)`.
///
/// `extra` supplies arrows `M in (mu_u, mu_u')`, `N in (mu_v, mu_v')` with
/// their source/target objects for the conjugated-product identity.
pub fn verify_appendix_identities<S: Scalar, F: Functor<S>>(
    f: &F,
    u: &SrcObj<S, F>,
    v: &SrcObj<S, F>,
    extra: Option<(&SrcObj<S, F>, &SrcObj<S, F>, &Arrow<S, TgtObj<S, F>>, &Arrow<S, TgtObj<S, F>>)>,
) -> Result<Vec<CheckResult>> {
    let (a, t) = (f.src(), f.tgt());
    let item = format!("({}, {})", a.describe(u), a.describe(v));
    let mut out = Vec::new();
    let (su, sv) = (a.solution(u)?, a.solution(v)?);
    let (hu, hv) = (image_solution(f, &su)?, image_solution(f, &sv)?);
    // solution of mu_u x mu_v from the image solutions, and of mu_{u x v} from the product solution
    let h_prod = product(t, &hu, &hv)?;
    let h_uv = image_solution(f, &tensor_solution(a, &su, &sv)?)?;
    let (ub, vb) = (su.conj.clone(), sv.conj.clone());

    let m = f.mu_tilde(u, v)?;
    let mb = bullet(t, &m, &h_prod, &h_uv)?;
    let expect = f.mu_tilde(&vb, &ub)?;
    out.push(check("bullet of mu~(u,v) = mu~(vbar,ubar)", "bullet-of-mu-tilde", item.clone(), &mb, &expect));
    let ms = t.adjoint(&m);
    let msb = bullet(t, &ms, &h_uv, &h_prod)?;
    out.push(check(
        "bullet of mu~*(u,v) = mu~*(vbar,ubar)",
        "bullet-of-mu-tilde",
        item.clone(),
        &msb,
        &t.adjoint(&expect),
    ));

    if let Some((u2, v2, mm, nn)) = extra {
        let (su2, sv2) = (a.solution(u2)?, a.solution(v2)?);
        let (hu2, hv2) = (image_solution(f, &su2)?, image_solution(f, &sv2)?);
        let h_uv2 = image_solution(f, &tensor_solution(a, &su2, &sv2)?)?;
        let x = t.compose_all(&[&f.mu_tilde(u2, v2)?, &t.tensor(mm, nn), &t.adjoint(&m)])?;
        let lhs = bullet(t, &x, &h_uv, &h_uv2)?;
        let mb = bullet(t, mm, &hu, &hu2)?;
        let nb = bullet(t, nn, &hv, &hv2)?;
        let rhs = t.compose_all(&[
            &f.mu_tilde(&sv2.conj, &su2.conj)?,
            &t.tensor(&nb, &mb),
            &t.adjoint(&f.mu_tilde(&vb, &ub)?),
        ])?;
        out.push(check("bullet of a conjugated product", "bullet-of-conjugated-product", item.clone(), &lhs, &rhs));
    }

    // R^bullet = R with the conjugate solution on ubar and the product on ubar x u
    for (cat_item, cat_check) in [(a.describe(u), r_bullet(a, &su)?)] {
        out.push(cat_check.with_item(&cat_item));
    }
    out.push(r_bullet(t, &hu)?.with_item(&format!("image of {}", a.describe(u))));
    Ok(out)
}

fn r_bullet<S: Scalar, C: Category<S>>(cat: &C, sol: &ConjugateSolution<S, C::Obj>) -> Result<CheckResult> {
    let unit = cat.solution(&cat.unit())?;
    let conj = conjugate_solution(sol);
    let prod = tensor_solution(cat, &conj, sol)?;
    let rb = bullet(cat, &sol.r, &unit, &prod)?;
    let rsb = bullet(cat, &cat.adjoint(&sol.r), &prod, &unit)?;
    let ok = rb.approx_eq(&sol.r) && rsb.approx_eq(&cat.adjoint(&sol.r));
    let res = rb.residual(&sol.r).max(rsb.residual(&cat.adjoint(&sol.r)));
    Ok(CheckResult::new("R bullet = R", "bullet-of-R", String::new(), ok, res))
}

trait WithItem {
    fn with_item(self, item: &str) -> Self;
}

impl WithItem for CheckResult {
    fn with_item(mut self, item: &str) -> Self {
        self.item = item.to_string();
        self
    }
}

/// `mu(A)^bullet = mu(A^bullet)` for `A in (x, y)` with image solutions.
pub fn bullet_commutes<S: Scalar, F: Functor<S>>(f: &F, arrow: &Arrow<S, SrcObj<S, F>>) -> Result<CheckResult> {
    let (a, t) = (f.src(), f.tgt());
    let (sx, sy) = (a.solution(&arrow.source)?, a.solution(&arrow.target)?);
    let lhs = bullet(t, &f.map_arrow(arrow)?, &image_solution(f, &sx)?, &image_solution(f, &sy)?)?;
    let rhs = f.map_arrow(&bullet(a, arrow, &sx, &sy)?)?;
    Ok(check(
        "mu(A) bullet = mu(A bullet)",
        "bullet-naturality",
        format!("{} -> {}", a.describe(&arrow.source), a.describe(&arrow.target)),
        &lhs,
        &rhs,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::builtin_pair;
    use crate::category::solves_conjugate_equations;
    use crate::repcat::{Invariants, RepCat, Restriction};
    use crate::surd::Surd;

    fn s3_a3() -> (Arc<RepCat<Surd>>, Arc<Restriction<Surd>>) {
        let p = builtin_pair("S3", "A3").unwrap();
        let g = Arc::new(RepCat::with_irreps(p.g.group.clone(), &p.g.irreps).unwrap());
        let r = Arc::new(Restriction::new(g.clone(), p.sub.clone(), &p.k.irreps).unwrap());
        (g, r)
    }

    #[test]
    fn restriction_and_composite_pass() {
        let (g, res) = s3_a3();
        let std = g.find("std").unwrap();
        let sgn = g.find("sgn").unwrap();
        let objs = vec![vec![], vec![std], vec![sgn], vec![std, sgn]];
        let arrows: Vec<_> = g.hom_basis(&vec![std, std], &vec![std, std]).unwrap();
        for c in verify_quasitensor_axioms(res.as_ref(), &objs, &arrows).unwrap() {
            assert!(c.passed(), "{c:?}");
        }
        let inv = Arc::new(Invariants::new(res.target_arc().clone()));
        let comp = Composite::new(inv, res.clone());
        for c in verify_quasitensor_axioms(&comp, &objs, &arrows).unwrap() {
            assert!(c.passed(), "{c:?}");
        }
        for c in verify_appendix_identities(&comp, &vec![std], &vec![std], None).unwrap() {
            assert!(c.passed(), "{c:?}");
        }
    }

    #[test]
    fn perturbation_breaks_isometry() {
        let (g, res) = s3_a3();
        let std = g.find("std").unwrap();
        let p = Perturbed::new(res, vec![std], vec![std], Surd::from_i64(2));
        let cs = verify_quasitensor_axioms(&p, &[vec![std]], &[]).unwrap();
        assert!(cs.iter().any(|c| c.tag == "isometry" && c.failed()));
    }

    #[test]
    fn image_solutions_and_multi_mu() {
        let (g, res) = s3_a3();
        let std = g.find("std").unwrap();
        let sol = g.solution(&vec![std, std]).unwrap();
        let img = image_solution(res.as_ref(), &sol).unwrap();
        assert!(solves_conjugate_equations(res.tgt(), &img));
        let inv = Arc::new(Invariants::new(res.target_arc().clone()));
        let comp = Composite::new(inv, res.clone());
        let seq = vec![vec![std], vec![std], vec![std]];
        let l = multi_mu(&comp, &seq).unwrap();
        let r = multi_mu_right(&comp, &seq).unwrap();
        assert!(l.approx_eq(&r));
    }

    #[test]
    fn s4_a4_composite() {
        let p = builtin_pair("S4", "A4").unwrap();
        let g = Arc::new(RepCat::with_irreps(p.g.group.clone(), &p.g.irreps).unwrap());
        let res = Arc::new(Restriction::new(g.clone(), p.sub.clone(), &p.k.irreps).unwrap());
        let inv = Arc::new(Invariants::new(res.target_arc().clone()));
        let comp = Composite::new(inv, res);
        let (std2, std3) = (g.find("std2").unwrap(), g.find("std3").unwrap());
        let objs = vec![vec![std2], vec![std3], vec![std2, std3]];
        let arrows = g.hom_basis(&vec![std3, std3], &vec![std2]).unwrap();
        let cs = verify_quasitensor_axioms(&comp, &objs, &arrows).unwrap();
        assert!(cs.iter().all(|c| c.passed()));
        for c in verify_appendix_identities(&comp, &vec![std2], &vec![std3], None).unwrap() {
            assert!(c.passed(), "{c:?}");
        }
    }

    #[test]
    fn tau_f_pseudoreal() {
        use crate::matrix::Matrix;
        use crate::tl::{TemperleyLieb, TlVariant};
        let t = Arc::new(TemperleyLieb::new(TlVariant::Pseudoreal, Surd::from_i64(2)));
        let f = t.embed_tau_f(Matrix::from_i64(2, 2, &[0, 1, -1, 0])).unwrap();
        let x = t.generator();
        let objs = vec![vec![], x.clone(), t.power(2)];
        let arrows = vec![t.e(2, 0).unwrap(), t.identity(&t.power(2))];
        for c in verify_quasitensor_axioms(&f, &objs, &arrows).unwrap() {
            assert!(c.passed(), "{c:?}");
        }
        for c in verify_appendix_identities(&f, &x, &x, None).unwrap() {
            assert!(c.passed(), "{c:?}");
        }
        assert!(bullet_commutes(&f, &t.e(2, 0).unwrap()).unwrap().passed());
    }
}
