//! `Rep(G)` for a finite group: objects are words in an alphabet of unitary
//! representations, arrows are intertwiners between the tensor products.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::category::{tensor_solution, Arrow, Category, ConjugateSolution};
use crate::error::{Error, Result};
use crate::functor::{Functor, FunctorKind};
use crate::group::{FiniteGroup, Subgroup};
use crate::hilb::Hilb;
use crate::matrix::Matrix;
use crate::rep::{intertwiners, isotypic_isometries, Rep};
use crate::scalar::Scalar;

pub type Word = Vec<usize>;

#[derive(Clone, Debug)]
pub struct Letter<S> {
    pub name: String,
    pub rep: Rep<S>,
    pub conj: usize,
    /// Invariant vector in `conj x self`.
    pub r: Matrix<S>,
    /// Invariant vector in `self x conj`.
    pub rbar: Matrix<S>,
}

type FusionList<S> = Arc<Vec<(usize, Matrix<S>)>>;

pub struct RepCat<S: Scalar> {
    group: Arc<FiniteGroup>,
    letters: Vec<Letter<S>>,
    /// Letters standing for the non-trivial irreducible labels.
    labels: Vec<usize>,
    reps: Mutex<HashMap<Word, Arc<Rep<S>>>>,
    fusions: Mutex<HashMap<Word, FusionList<S>>>,
    solutions: Mutex<HashMap<Word, ConjugateSolution<S, Word>>>,
}

impl<S: Scalar> Clone for RepCat<S> {
    fn clone(&self) -> Self {
        RepCat {
            group: self.group.clone(),
            letters: self.letters.clone(),
            labels: self.labels.clone(),
            reps: Mutex::new(HashMap::new()),
            fusions: Mutex::new(HashMap::new()),
            solutions: Mutex::new(HashMap::new()),
        }
    }
}

fn is_trivial<S: Scalar>(r: &Rep<S>) -> bool {
    r.dim() == 1 && r.matrices().iter().all(|m| m.get(0, 0).approx_eq(&S::one()))
}

impl<S: Scalar> RepCat<S> {
    pub fn new(group: Arc<FiniteGroup>) -> Self {
        RepCat {
            group,
            letters: Vec::new(),
            labels: Vec::new(),
            reps: Mutex::new(HashMap::new()),
            fusions: Mutex::new(HashMap::new()),
            solutions: Mutex::new(HashMap::new()),
        }
    }

    /// Category whose labels are the given complete list of irreps.  The
    /// trivial one is represented by the empty word, not by a letter.
    pub fn with_irreps(group: Arc<FiniteGroup>, irreps: &[(String, Rep<S>)]) -> Result<Self> {
        let mut cat = Self::new(group);
        for (name, rep) in irreps {
            if is_trivial(rep) {
                continue;
            }
            if cat.find(name).is_some() {
                // already present as the conjugate of an earlier label
                let l = cat.find(name).expect("present");
                cat.labels.push(l);
                continue;
            }
            let l = cat.add_irrep(name, rep.clone())?;
            cat.labels.push(l);
        }
        let total: usize = 1 + cat.labels.iter().map(|&l| cat.letters[l].rep.dim().pow(2)).sum::<usize>();
        if total != cat.group.order() {
            return Err(Error::NotARepresentation(format!(
                "irreducible labels have total square dimension {total}, group order {}",
                cat.group.order()
            )));
        }
        Ok(cat)
    }

    /// Add an irreducible letter.  If it is equivalent to its conjugate the
    /// letter is its own conjugate with `R = vec(J)`, `Rbar = +-R` for the
    /// unitary `J` intertwining; otherwise a letter `name~` is added as well.
    pub fn add_irrep(&mut self, name: &str, rep: Rep<S>) -> Result<usize> {
        self.check_group(&rep)?;
        let cr = rep.conj();
        let js = intertwiners(&cr, &rep);
        match js.len() {
            0 => {
                let i = self.letters.len();
                let r = Matrix::identity(rep.dim()).vec();
                self.letters.push(Letter { name: name.into(), rep, conj: i + 1, r: r.clone(), rbar: r.clone() });
                self.letters.push(Letter { name: format!("{name}~"), rep: cr, conj: i, r: r.clone(), rbar: r });
                Ok(i)
            }
            1 => {
                let mut j = js.into_iter().next().expect("one intertwiner");
                let c = (j.adjoint() * &j).trace() / S::from_i64(rep.dim() as i64);
                let c = c.sqrt_real().ok_or_else(|| Error::NoExactSqrt("unitary intertwiner".into()))?;
                j = j.scale(&c.inv());
                self.add_self_conjugate(name, rep, &j)
            }
            _ => Err(Error::NotARepresentation(format!("{name} is not irreducible"))),
        }
    }

    /// Add a letter `u = ubar` with `R = vec(J)`; `J` must be unitary, satisfy
    /// `rho(g) J rho(g)^T = J` and `J conj(J) = eps 1` with `eps = +-1`.
    pub fn add_self_conjugate(&mut self, name: &str, rep: Rep<S>, j: &Matrix<S>) -> Result<usize> {
        self.check_group(&rep)?;
        let n = rep.dim();
        if j.shape() != (n, n) || !j.is_unitary() {
            return Err(Error::ShapeMismatch(format!("{name}: J must be a unitary {n}x{n} matrix")));
        }
        for m in rep.matrices() {
            if !(&(m * j) * &m.transpose()).approx_eq(j) {
                return Err(Error::NoConjugate(format!("{name}: J is not invariant")));
            }
        }
        let jj = j * &j.conj();
        let sign = if jj.approx_eq(&Matrix::identity(n)) {
            S::one()
        } else if jj.approx_eq(&Matrix::identity(n).scale(&-S::one())) {
            -S::one()
        } else {
            return Err(Error::VariantMismatch(format!("{name}: J conj(J) is not +-1")));
        };
        let r = j.vec();
        let i = self.letters.len();
        self.letters.push(Letter { name: name.into(), rep, conj: i, rbar: r.scale(&sign), r });
        Ok(i)
    }

    /// Add a raw letter pair, trusting the caller's solution.
    pub fn push_letter(&mut self, letter: Letter<S>) -> usize {
        self.letters.push(letter);
        self.clear_caches();
        self.letters.len() - 1
    }

    fn clear_caches(&self) {
        self.reps.lock().expect("cache").clear();
        self.fusions.lock().expect("cache").clear();
        self.solutions.lock().expect("cache").clear();
    }

    fn check_group(&self, rep: &Rep<S>) -> Result<()> {
        if !Arc::ptr_eq(rep.group(), &self.group) && rep.group().table() != self.group.table() {
            return Err(Error::NotARepresentation("representation of a different group".into()));
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }
    pub fn letters(&self) -> &[Letter<S>] {
        &self.letters
    }
    pub fn letter(&self, i: usize) -> &Letter<S> {
        &self.letters[i]
    }
    pub fn find(&self, name: &str) -> Option<usize> {
        self.letters.iter().position(|l| l.name == name)
    }

    /// Parse whitespace- or `x`-separated letter names; `1` is the unit.
    pub fn word(&self, text: &str) -> Result<Word> {
        text.split(|c: char| c.is_whitespace() || c == '*')
            .filter(|t| !t.is_empty() && *t != "1" && *t != "x")
            .map(|t| self.find(t).ok_or_else(|| Error::Parse(format!("unknown letter {t}"))))
            .collect()
    }

    pub fn dim(&self, w: &Word) -> usize {
        w.iter().map(|&l| self.letters[l].rep.dim()).product()
    }

    pub fn realize(&self, w: &Word) -> Arc<Rep<S>> {
        if let Some(r) = self.reps.lock().expect("cache").get(w) {
            return r.clone();
        }
        let rep = match w.split_last() {
            None => Rep::trivial(self.group.clone()),
            Some((&last, rest)) if rest.is_empty() => self.letters[last].rep.clone(),
            Some((&last, rest)) => self.realize(&rest.to_vec()).tensor(&self.letters[last].rep),
        };
        let rep = Arc::new(rep);
        self.reps.lock().expect("cache").insert(w.clone(), rep.clone());
        rep
    }

    /// Checks `T rho_s(g) = rho_t(g) T` on every group element.
    pub fn is_intertwiner(&self, a: &Arrow<S, Word>) -> bool {
        let (rs, rt) = (self.realize(&a.source), self.realize(&a.target));
        (0..self.group.order()).all(|g| (&a.matrix * rs.matrix(g)).approx_eq(&(rt.matrix(g) * &a.matrix)))
    }

    pub fn label_rep(&self, k: usize) -> Rep<S> {
        if k == 0 {
            Rep::trivial(self.group.clone())
        } else {
            self.letters[self.labels[k - 1]].rep.clone()
        }
    }

    fn fusion_matrices(&self, w: &Word) -> Result<FusionList<S>> {
        if let Some(f) = self.fusions.lock().expect("cache").get(w) {
            return Ok(f.clone());
        }
        let rho = self.realize(w);
        let mut out = Vec::new();
        for k in 0..=self.labels.len() {
            for m in isotypic_isometries(&self.label_rep(k), &rho)? {
                out.push((k, m));
            }
        }
        let total: usize = out.iter().map(|(_, m)| m.cols()).sum();
        if total != rho.dim() {
            return Err(Error::NotARepresentation(format!(
                "labels do not exhaust {}: {total} of {} dimensions",
                self.describe(w),
                rho.dim()
            )));
        }
        let out = Arc::new(out);
        self.fusions.lock().expect("cache").insert(w.clone(), out.clone());
        Ok(out)
    }

    fn label_word(&self, k: usize) -> Word {
        if k == 0 {
            Vec::new()
        } else {
            vec![self.labels[k - 1]]
        }
    }
}

impl<S: Scalar> Category<S> for RepCat<S> {
    type Obj = Word;

    fn name(&self) -> String {
        format!("Rep({})", self.group.name())
    }
    fn unit(&self) -> Word {
        Vec::new()
    }
    fn tensor_obj(&self, a: &Word, b: &Word) -> Word {
        let mut w = a.clone();
        w.extend_from_slice(b);
        w
    }
    fn conj_obj(&self, a: &Word) -> Word {
        a.iter().rev().map(|&l| self.letters[l].conj).collect()
    }
    fn describe(&self, a: &Word) -> String {
        if a.is_empty() {
            "1".into()
        } else {
            a.iter().map(|&l| self.letters[l].name.as_str()).collect::<Vec<_>>().join(" x ")
        }
    }
    fn identity(&self, a: &Word) -> Arrow<S, Word> {
        Arrow::new(a.clone(), a.clone(), Matrix::identity(self.dim(a)))
    }
    fn zero_arrow(&self, s: &Word, t: &Word) -> Arrow<S, Word> {
        Arrow::new(s.clone(), t.clone(), Matrix::zeros(self.dim(t), self.dim(s)))
    }
    fn compose(&self, f: &Arrow<S, Word>, g: &Arrow<S, Word>) -> Result<Arrow<S, Word>> {
        if f.source != g.target {
            return Err(Error::ShapeMismatch(format!(
                "compose ({}) after ({})",
                self.describe(&f.source),
                self.describe(&g.target)
            )));
        }
        Ok(Arrow::new(g.source.clone(), f.target.clone(), &f.matrix * &g.matrix))
    }
    fn tensor(&self, f: &Arrow<S, Word>, g: &Arrow<S, Word>) -> Arrow<S, Word> {
        Arrow::new(
            self.tensor_obj(&f.source, &g.source),
            self.tensor_obj(&f.target, &g.target),
            f.matrix.kron(&g.matrix),
        )
    }
    fn adjoint(&self, f: &Arrow<S, Word>) -> Arrow<S, Word> {
        Arrow::new(f.target.clone(), f.source.clone(), f.matrix.adjoint())
    }
    fn hom_basis(&self, s: &Word, t: &Word) -> Result<Vec<Arrow<S, Word>>> {
        let fs = self.fusion_matrices(s)?;
        let ft = self.fusion_matrices(t)?;
        let mut out = Vec::new();
        for (kt, wt) in ft.iter() {
            for (ks, ws) in fs.iter() {
                if kt == ks {
                    out.push(Arrow::new(s.clone(), t.clone(), wt * &ws.adjoint()));
                }
            }
        }
        Ok(out)
    }
    fn solution(&self, a: &Word) -> Result<ConjugateSolution<S, Word>> {
        if let Some(s) = self.solutions.lock().expect("cache").get(a) {
            return Ok(s.clone());
        }
        let sol = match a.split_last() {
            None => ConjugateSolution {
                object: Vec::new(),
                conj: Vec::new(),
                r: Arrow::new(Vec::new(), Vec::new(), Matrix::identity(1)),
                rbar: Arrow::new(Vec::new(), Vec::new(), Matrix::identity(1)),
                standard: true,
            },
            Some((&l, rest)) if rest.is_empty() => {
                let lt = &self.letters[l];
                ConjugateSolution {
                    object: vec![l],
                    conj: vec![lt.conj],
                    r: Arrow::new(Vec::new(), vec![lt.conj, l], lt.r.clone()),
                    rbar: Arrow::new(Vec::new(), vec![l, lt.conj], lt.rbar.clone()),
                    standard: true,
                }
            }
            Some((&l, rest)) => tensor_solution(self, &self.solution(&rest.to_vec())?, &self.solution(&vec![l])?)?,
        };
        self.solutions.lock().expect("cache").insert(a.clone(), sol.clone());
        Ok(sol)
    }
    fn irreducibles(&self) -> Vec<Word> {
        (0..=self.labels.len()).map(|k| self.label_word(k)).collect()
    }
    fn fusion(&self, a: &Word) -> Result<Vec<(usize, Arrow<S, Word>)>> {
        Ok(self
            .fusion_matrices(a)?
            .iter()
            .map(|(k, m)| (*k, Arrow::new(self.label_word(*k), a.clone(), m.clone())))
            .collect())
    }
    fn scalar_value(&self, f: &Arrow<S, Word>) -> S {
        assert_eq!(f.matrix.shape(), (1, 1), "not an endomorphism of a one-dimensional object");
        f.matrix.get(0, 0).clone()
    }
}

/// Restriction `Rep(G) -> Rep(K)`: letter `l` goes to letter `offset + l`.
pub struct Restriction<S: Scalar> {
    src: Arc<RepCat<S>>,
    tgt: Arc<RepCat<S>>,
    offset: usize,
    sub: Subgroup,
}

impl<S: Scalar> Restriction<S> {
    /// `k_irreps` label the target; restricted copies of every `G` letter follow them.
    pub fn new(src: Arc<RepCat<S>>, sub: Subgroup, k_irreps: &[(String, Rep<S>)]) -> Result<Self> {
        if !Arc::ptr_eq(src.group(), &sub.parent) && src.group().table() != sub.parent.table() {
            return Err(Error::NotASubgroup("subgroup of another group".into()));
        }
        let mut k = RepCat::with_irreps(sub.group.clone(), k_irreps)?;
        let offset = k.letters().len();
        for l in src.letters() {
            let rep = restrict_to(&l.rep, &sub);
            k.push_letter(Letter {
                name: format!("{}|", l.name),
                rep,
                conj: l.conj + offset,
                r: l.r.clone(),
                rbar: l.rbar.clone(),
            });
        }
        Ok(Restriction { src, tgt: Arc::new(k), offset, sub })
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.sub
    }
    pub fn target_arc(&self) -> &Arc<RepCat<S>> {
        &self.tgt
    }
    pub fn source_arc(&self) -> &Arc<RepCat<S>> {
        &self.src
    }
}

fn restrict_to<S: Scalar>(rep: &Rep<S>, sub: &Subgroup) -> Rep<S> {
    let mats = sub.embedding.iter().map(|&g| rep.matrix(g).clone()).collect();
    Rep::new(sub.group.clone(), mats).expect("restriction of a representation")
}

impl<S: Scalar> Functor<S> for Restriction<S> {
    type Src = RepCat<S>;
    type Tgt = RepCat<S>;

    fn src(&self) -> &RepCat<S> {
        &self.src
    }
    fn tgt(&self) -> &RepCat<S> {
        &self.tgt
    }
    fn name(&self) -> String {
        format!("Res^{}_{}", self.src.group().name(), self.tgt.group().name())
    }
    fn kind(&self) -> FunctorKind {
        FunctorKind::Strict
    }
    fn map_obj(&self, u: &Word) -> Word {
        u.iter().map(|l| l + self.offset).collect()
    }
    fn map_arrow(&self, a: &Arrow<S, Word>) -> Result<Arrow<S, Word>> {
        Ok(Arrow::new(self.map_obj(&a.source), self.map_obj(&a.target), a.matrix.clone()))
    }
    fn mu_tilde(&self, u: &Word, v: &Word) -> Result<Arrow<S, Word>> {
        let w = self.map_obj(&self.src.tensor_obj(u, v));
        Ok(self.tgt.identity(&w))
    }
}

/// The forgetful functor `Rep(G) -> Hilb`.
pub struct Forgetful<S: Scalar> {
    src: Arc<RepCat<S>>,
    tgt: Hilb<S>,
}

impl<S: Scalar> Forgetful<S> {
    pub fn new(src: Arc<RepCat<S>>) -> Self {
        Forgetful { src, tgt: Hilb::new() }
    }
}

impl<S: Scalar> Functor<S> for Forgetful<S> {
    type Src = RepCat<S>;
    type Tgt = Hilb<S>;

    fn src(&self) -> &RepCat<S> {
        &self.src
    }
    fn tgt(&self) -> &Hilb<S> {
        &self.tgt
    }
    fn name(&self) -> String {
        format!("Forget({})", self.src.group().name())
    }
    fn kind(&self) -> FunctorKind {
        FunctorKind::Strict
    }
    fn map_obj(&self, u: &Word) -> usize {
        self.src.dim(u)
    }
    fn map_arrow(&self, a: &Arrow<S, Word>) -> Result<Arrow<S, usize>> {
        Ok(Arrow::new(self.src.dim(&a.source), self.src.dim(&a.target), a.matrix.clone()))
    }
    fn mu_tilde(&self, u: &Word, v: &Word) -> Result<Arrow<S, usize>> {
        Ok(self.tgt.identity(&(self.src.dim(u) * self.src.dim(v))))
    }
}

/// `Rep(K) -> Hilb`, `x -> (1, x)`: each object goes to its invariant vectors.
pub struct Invariants<S: Scalar> {
    src: Arc<RepCat<S>>,
    tgt: Hilb<S>,
    bases: Mutex<HashMap<Word, Arc<Matrix<S>>>>,
}

impl<S: Scalar> Invariants<S> {
    pub fn new(src: Arc<RepCat<S>>) -> Self {
        Invariants { src, tgt: Hilb::new(), bases: Mutex::new(HashMap::new()) }
    }

    /// Orthonormal basis of the invariant vectors of `x`, as columns.
    pub fn basis(&self, x: &Word) -> Result<Arc<Matrix<S>>> {
        if let Some(b) = self.bases.lock().expect("cache").get(x) {
            return Ok(b.clone());
        }
        let cols: Vec<Vec<S>> = self
            .src
            .fusion_matrices(x)?
            .iter()
            .filter(|(k, _)| *k == 0)
            .map(|(_, m)| m.col(0))
            .collect();
        let b = Arc::new(Matrix::from_columns(self.src.dim(x), &cols));
        self.bases.lock().expect("cache").insert(x.clone(), b.clone());
        Ok(b)
    }
}

impl<S: Scalar> Functor<S> for Invariants<S> {
    type Src = RepCat<S>;
    type Tgt = Hilb<S>;

    fn src(&self) -> &RepCat<S> {
        &self.src
    }
    fn tgt(&self) -> &Hilb<S> {
        &self.tgt
    }
    fn name(&self) -> String {
        format!("Fix({})", self.src.group().name())
    }
    fn kind(&self) -> FunctorKind {
        FunctorKind::Quasitensor
    }
    fn map_obj(&self, u: &Word) -> usize {
        self.basis(u).map(|b| b.cols()).unwrap_or(0)
    }
    fn map_arrow(&self, a: &Arrow<S, Word>) -> Result<Arrow<S, usize>> {
        let (bs, bt) = (self.basis(&a.source)?, self.basis(&a.target)?);
        let m = &(&bt.adjoint() * &a.matrix) * &*bs;
        Ok(Arrow::new(bs.cols(), bt.cols(), m))
    }
    fn mu_tilde(&self, u: &Word, v: &Word) -> Result<Arrow<S, usize>> {
        let (bu, bv) = (self.basis(u)?, self.basis(v)?);
        let buv = self.basis(&self.src.tensor_obj(u, v))?;
        let m = &buv.adjoint() * &bu.kron(&bv);
        Ok(Arrow::new(bu.cols() * bv.cols(), buv.cols(), m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{builtin_group, builtin_pair};
    use crate::category::*;
    use crate::surd::Surd;

    fn cat(name: &str) -> RepCat<Surd> {
        let d = builtin_group(name).unwrap();
        RepCat::with_irreps(d.group.clone(), &d.irreps).unwrap()
    }

    #[test]
    fn letters_and_conjugates() {
        let c = cat("S3");
        // sgn and std are self-conjugate
        assert_eq!(c.letters().len(), 2);
        let q = cat("Q8");
        let std = q.find("std").unwrap();
        let l = q.letter(std);
        assert_eq!(l.rbar, l.r.scale(&Surd::from_i64(-1)));
        let z = cat("Z3");
        assert_eq!(z.letters().len(), 4);
    }

    #[test]
    fn solutions_are_standard() {
        for name in ["S3", "Q8", "Z3", "S4"] {
            let c = cat(name);
            for l in 0..c.letters().len() {
                let s = c.solution(&vec![l]).unwrap();
                assert!(solves_conjugate_equations(&c, &s), "{name} letter {l}");
                assert!(is_standard(&c, &s).unwrap());
            }
        }
    }

    #[test]
    fn hom_dimensions_match_characters() {
        let c = cat("S3");
        let std = c.find("std").unwrap();
        let w = vec![std, std];
        assert_eq!(c.dim_hom(&w, &w).unwrap(), 3);
        for a in c.hom_basis(&w, &vec![std]).unwrap() {
            assert!(c.is_intertwiner(&a));
        }
        assert_eq!(intrinsic_dimension(&c, &w).unwrap(), Surd::from_i64(4));
    }

    #[test]
    fn invariants_functor() {
        let p = builtin_pair("S3", "A3").unwrap();
        let g = Arc::new(RepCat::with_irreps(p.g.group.clone(), &p.g.irreps).unwrap());
        let res = Restriction::new(g.clone(), p.sub.clone(), &p.k.irreps).unwrap();
        let k = res.target_arc().clone();
        let inv = Invariants::new(k.clone());
        let std = res.map_obj(&vec![g.find("std").unwrap()]);
        assert_eq!(inv.map_obj(&std), 0);
        assert_eq!(inv.map_obj(&k.tensor_obj(&std, &std)), 2);
        let mu = inv.mu_tilde(&std, &std).unwrap();
        assert_eq!(mu.matrix.shape(), (2, 0));
    }
}
