//! Temperley-Lieb categories: planar matchings with loop value `d`.
//!
//! Three variants share the diagram machinery.  `Real` has `Rbar = R`;
//! `Pseudoreal` has `Rbar = -R`, and composing straightens every turn-back
//! with a sign so that the zigzag equals `-1` (this is what makes `(R, -R)`
//! solve the conjugate equations).  `TwoColored` has strands coloured by
//! `u` and `ubar` with cups `S in (iota, ubar u)` and `Sbar in (iota, u ubar)`.
//!
//! Points of a diagram `s -> t` are numbered bottom row left to right, then
//! top row left to right.  Arrows store coefficient columns over the
//! canonical list of diagrams returned by [`TemperleyLieb::basis`].

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::category::{tensor_solution, Arrow, Category, ConjugateSolution};
use crate::error::{Error, Result};
use crate::functor::{Functor, FunctorKind};
use crate::hilb::Hilb;
use crate::linalg::inverse;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TlVariant {
    Real,
    Pseudoreal,
    TwoColored,
}

/// A word in the generators; `true` marks the conjugate colour.
pub type TlWord = Vec<bool>;

/// A perfect matching: `pair[p]` is the partner of point `p`.
pub type Diagram = Vec<usize>;

#[derive(Debug)]
pub struct HomBasis {
    pub diagrams: Vec<Diagram>,
    index: HashMap<Diagram, usize>,
}

pub struct TemperleyLieb<S> {
    variant: TlVariant,
    d: S,
    bases: Mutex<HashMap<(TlWord, TlWord), Arc<HomBasis>>>,
    solutions: Mutex<HashMap<TlWord, ConjugateSolution<S, TlWord>>>,
}

/// Quantum integers `[0] = 0, [1] = 1, [n+1] = d[n] - [n-1]`.
pub fn quantum_integer<S: Scalar>(n: usize, d: &S) -> S {
    let (mut a, mut b) = (S::zero(), S::one());
    if n == 0 {
        return a;
    }
    for _ in 1..n {
        let c = d.clone() * b.clone() - a;
        a = b;
        b = c;
    }
    b
}

/// Non-crossing perfect matchings of `n` points on a circle.
fn circle_matchings(n: usize) -> Vec<Vec<usize>> {
    fn rec(points: &[usize], out: &mut Vec<Vec<(usize, usize)>>) {
        if points.is_empty() {
            out.push(Vec::new());
            return;
        }
        let first = points[0];
        for k in (1..points.len()).step_by(2) {
            let mut inner = Vec::new();
            rec(&points[1..k], &mut inner);
            let mut outer = Vec::new();
            rec(&points[k + 1..], &mut outer);
            for a in &inner {
                for b in &outer {
                    let mut m = vec![(first, points[k])];
                    m.extend(a.iter().copied());
                    m.extend(b.iter().copied());
                    out.push(m);
                }
            }
        }
    }
    if n % 2 == 1 {
        return Vec::new();
    }
    let pts: Vec<usize> = (0..n).collect();
    let mut raw = Vec::new();
    rec(&pts, &mut raw);
    raw.into_iter()
        .map(|pairs| {
            let mut m = vec![0; n];
            for (a, b) in pairs {
                m[a] = b;
                m[b] = a;
            }
            m
        })
        .collect()
}

impl<S: Scalar> TemperleyLieb<S> {
    pub fn new(variant: TlVariant, d: S) -> Self {
        TemperleyLieb {
            variant,
            d,
            bases: Mutex::new(HashMap::new()),
            solutions: Mutex::new(HashMap::new()),
        }
    }

    pub fn variant(&self) -> TlVariant {
        self.variant
    }

    pub fn loop_value(&self) -> &S {
        &self.d
    }

    /// The generator `u` as a one-letter word.
    pub fn generator(&self) -> TlWord {
        vec![false]
    }

    /// `u^n` in the single-colour variants.
    pub fn power(&self, n: usize) -> TlWord {
        vec![false; n]
    }

    fn check_word(&self, w: &TlWord) -> Result<()> {
        if self.variant != TlVariant::TwoColored && w.iter().any(|&c| c) {
            return Err(Error::VariantMismatch("conjugate colour in a single-colour category".into()));
        }
        Ok(())
    }

    /// The canonical basis of diagrams for `(s, t)`.
    pub fn basis(&self, s: &TlWord, t: &TlWord) -> Arc<HomBasis> {
        let key = (s.clone(), t.clone());
        if let Some(b) = self.bases.lock().unwrap().get(&key) {
            return b.clone();
        }
        let (ns, nt) = (s.len(), t.len());
        let n = ns + nt;
        // circular order: bottom left-to-right, then top right-to-left
        let circ_to_point = |c: usize| if c < ns { c } else { ns + (nt - 1 - (c - ns)) };
        let colour = |p: usize| if p < ns { s[p] } else { t[p - ns] };
        let mut diagrams: Vec<Diagram> = circle_matchings(n)
            .into_iter()
            .map(|cm| {
                let mut m = vec![0; n];
                for c in 0..n {
                    m[circ_to_point(c)] = circ_to_point(cm[c]);
                }
                m
            })
            .filter(|m| {
                (0..n).all(|p| {
                    let q = m[p];
                    let same_row = (p < ns) == (q < ns);
                    if same_row {
                        self.variant != TlVariant::TwoColored || colour(p) != colour(q)
                    } else {
                        colour(p) == colour(q)
                    }
                })
            })
            .collect();
        diagrams.sort();
        let index = diagrams.iter().cloned().enumerate().map(|(i, d)| (d, i)).collect();
        let b = Arc::new(HomBasis { diagrams, index });
        self.bases.lock().unwrap().insert(key, b.clone());
        b
    }

    pub fn diagram_arrow(&self, s: &TlWord, t: &TlWord, d: &Diagram) -> Arrow<S, TlWord> {
        let b = self.basis(s, t);
        let i = *b.index.get(d).expect("diagram is not in the basis");
        let mut m = Matrix::zeros(b.diagrams.len(), 1);
        m.set(i, 0, S::one());
        Arrow::new(s.clone(), t.clone(), m)
    }

    /// Compose basis diagrams `a o b`; returns the resulting diagram,
    /// the number of closed loops and the sign from straightened turn-backs.
    fn compose_diagrams(&self, a: &Diagram, b: &Diagram, ns: usize, nm: usize, nt: usize) -> (Diagram, usize, bool) {
        let signed = self.variant == TlVariant::Pseudoreal;
        let mut out = vec![usize::MAX; ns + nt];
        let mut seen_mid = vec![false; nm];
        let mut negative = false;
        // walk a path; side false = in b, true = in a
        let row_of = |in_a: bool, p: usize| -> (bool, usize) {
            // returns (is_top_row, position within row)
            if in_a {
                if p < nm { (false, p) } else { (true, p - nm) }
            } else if p < ns {
                (false, p)
            } else {
                (true, p - ns)
            }
        };
        let walk = |start_in_a: bool, start: usize, seen_mid: &mut Vec<bool>| -> (usize, usize, usize, usize) {
            // returns (end point in result numbering, arcs, reversed arcs, _)
            let (mut in_a, mut p) = (start_in_a, start);
            let mut arcs = 0;
            let mut rev = 0;
            loop {
                let q = if in_a { a[p] } else { b[p] };
                let (rp, ip) = row_of(in_a, p);
                let (rq, iq) = row_of(in_a, q);
                if rp == rq {
                    arcs += 1;
                    if iq < ip {
                        rev += 1;
                    }
                }
                if in_a {
                    if q >= nm {
                        return (ns + (q - nm), arcs, rev, 0);
                    }
                    seen_mid[q] = true;
                    in_a = false;
                    p = ns + q;
                } else {
                    if q < ns {
                        return (q, arcs, rev, 0);
                    }
                    seen_mid[q - ns] = true;
                    in_a = true;
                    p = q - ns;
                }
            }
        };
        for start in 0..ns + nt {
            if out[start] != usize::MAX {
                continue;
            }
            let (end, arcs, rev, _) = if start < ns {
                walk(false, start, &mut seen_mid)
            } else {
                walk(true, nm + (start - ns), &mut seen_mid)
            };
            out[start] = end;
            out[end] = start;
            if signed {
                let through = (start < ns) != (end < ns);
                let mut s = if through { arcs / 2 + rev } else { (arcs - 1) / 2 + rev };
                if !through && end < start {
                    s += 1;
                }
                negative ^= s % 2 == 1;
            }
        }
        let mut loops = 0;
        for k in 0..nm {
            if seen_mid[k] {
                continue;
            }
            loops += 1;
            // closed loop through the middle row
            let (mut in_a, mut p) = (false, ns + k);
            let (mut arcs, mut rev) = (0usize, 0usize);
            loop {
                let q = if in_a { a[p] } else { b[p] };
                arcs += 1;
                let (_, ip) = row_of(in_a, p);
                let (_, iq) = row_of(in_a, q);
                if iq < ip {
                    rev += 1;
                }
                let mid = if in_a { q } else { q - ns };
                seen_mid[mid] = true;
                if in_a {
                    in_a = false;
                    p = ns + q;
                } else {
                    in_a = true;
                    p = q - ns;
                }
                if !in_a && p == ns + k {
                    break;
                }
            }
            if signed && (arcs / 2 + rev) % 2 == 1 {
                negative = !negative;
            }
        }
        (out, loops, negative)
    }

    fn tensor_diagrams(a: &Diagram, b: &Diagram, s1: usize, t1: usize, s2: usize, t2: usize) -> Diagram {
        let _ = t2;
        let ma = |p: usize| if p < s1 { p } else { s1 + s2 + (p - s1) };
        let mb = |q: usize| if q < s2 { s1 + q } else { s1 + s2 + t1 + (q - s2) };
        let n = a.len() + b.len();
        let mut out = vec![0; n];
        for p in 0..a.len() {
            out[ma(p)] = ma(a[p]);
        }
        for q in 0..b.len() {
            out[mb(q)] = mb(b[q]);
        }
        out
    }

    fn generator_solution(&self, letter: bool) -> ConjugateSolution<S, TlWord> {
        let cup = |w: TlWord| self.diagram_arrow(&vec![], &w, &vec![1, 0]);
        match self.variant {
            TlVariant::Real => {
                let r = cup(vec![false, false]);
                ConjugateSolution { object: vec![false], conj: vec![false], r: r.clone(), rbar: r, standard: true }
            }
            TlVariant::Pseudoreal => {
                let r = cup(vec![false, false]);
                let rbar = r.scale(&-S::one());
                ConjugateSolution { object: vec![false], conj: vec![false], r, rbar, standard: true }
            }
            TlVariant::TwoColored => {
                let s = cup(vec![true, false]);
                let sbar = cup(vec![false, true]);
                if letter {
                    ConjugateSolution { object: vec![true], conj: vec![false], r: sbar, rbar: s, standard: true }
                } else {
                    ConjugateSolution { object: vec![false], conj: vec![true], r: s, rbar: sbar, standard: true }
                }
            }
        }
    }

    /// `R R^*` on strands `i, i+1` of `u^n`.
    pub fn e(&self, n: usize, i: usize) -> Result<Arrow<S, TlWord>> {
        let sol = self.generator_solution(false);
        let cupcap = self.compose(&sol.r, &self.adjoint(&sol.r))?;
        let left = self.identity(&self.power(i));
        let right = self.identity(&self.power(n - i - 2));
        Ok(self.tensor_all(&[&left, &cupcap, &right]))
    }

    /// The Jones-Wenzl idempotent `f_n in (u^n, u^n)`.
    pub fn jones_wenzl(&self, n: usize) -> Result<Arrow<S, TlWord>> {
        if self.variant == TlVariant::TwoColored {
            return Err(Error::VariantMismatch("Jones-Wenzl projections need a single colour".into()));
        }
        let mut f = self.identity(&self.power(n.min(1)));
        for k in 1..n {
            let qk = quantum_integer(k, &self.d);
            let qk1 = quantum_integer(k + 1, &self.d);
            if qk1.is_negligible() {
                return Err(Error::SingularQuantumInteger(k + 1));
            }
            let f1 = self.tensor(&f, &self.identity(&self.generator()));
            let e = self.e(k + 1, k - 1)?;
            let m = self.compose_all(&[&f1, &e, &f1])?;
            f = f1.sub(&m.scale(&(qk / qk1)));
        }
        Ok(f)
    }

    /// Nested cups: the product solution `R` for `u^j`.
    fn nested_cup(&self, j: usize) -> Result<Arrow<S, TlWord>> {
        Ok(self.solution(&self.power(j))?.r)
    }

    /// Isometries `w_k in (u^k, u^{m+n})` with `w_k^* w_k = f_k` and
    /// `sum_k w_k w_k^* = f_m x f_n`, for `k = |m-n|, ..., m+n` in steps of 2.
    pub fn fusion_tl(&self, m: usize, n: usize) -> Result<Vec<(usize, Arrow<S, TlWord>)>> {
        if self.variant == TlVariant::TwoColored {
            return Err(Error::VariantMismatch("fusion of Jones-Wenzl labels needs a single colour".into()));
        }
        let fmn = self.tensor(&self.jones_wenzl(m)?, &self.jones_wenzl(n)?);
        let mut out = Vec::new();
        for j in 0..=m.min(n) {
            let k = m + n - 2 * j;
            let fk = self.jones_wenzl(k)?;
            let cups = self.tensor_all(&[
                &self.identity(&self.power(m - j)),
                &self.nested_cup(j)?,
                &self.identity(&self.power(n - j)),
            ]);
            let v = self.compose_all(&[&fmn, &cups, &fk])?;
            let vv = self.compose(&self.adjoint(&v), &v)?;
            let id_index = {
                let w = self.power(k);
                let b = self.basis(&w, &w);
                let id: Diagram = (0..2 * k).map(|p| if p < k { p + k } else { p - k }).collect();
                b.index[&id]
            };
            let lambda = vv.matrix.get(id_index, 0).clone();
            if lambda.is_negligible() {
                return Err(Error::SingularQuantumInteger(k + 1));
            }
            if !vv.approx_eq(&fk.scale(&lambda)) {
                return Err(Error::Unsupported("trivalent vertex is not a multiple of the projection".into()));
            }
            let root = lambda
                .sqrt_real()
                .ok_or_else(|| Error::NoExactSqrt(lambda.to_string()))?;
            out.push((k, v.scale(&root.inv())));
        }
        out.reverse();
        Ok(out)
    }

    /// The fibre functor `tau_F` into Hilbert spaces for an admissible `F`.
    pub fn embed_tau_f(self: &Arc<Self>, f: Matrix<S>) -> Result<TauF<S>> {
        TauF::new(self.clone(), f)
    }
}

impl<S: Scalar> Category<S> for TemperleyLieb<S> {
    type Obj = TlWord;

    fn name(&self) -> String {
        format!("TL({:?}, d={})", self.variant, self.d)
    }
    fn unit(&self) -> TlWord {
        Vec::new()
    }
    fn tensor_obj(&self, a: &TlWord, b: &TlWord) -> TlWord {
        let mut w = a.clone();
        w.extend(b);
        w
    }
    fn conj_obj(&self, a: &TlWord) -> TlWord {
        a.iter()
            .rev()
            .map(|&c| if self.variant == TlVariant::TwoColored { !c } else { c })
            .collect()
    }
    fn describe(&self, a: &TlWord) -> String {
        if a.is_empty() {
            return "iota".into();
        }
        a.iter().map(|&c| if c { "ubar" } else { "u" }).collect::<Vec<_>>().join(".")
    }
    fn identity(&self, a: &TlWord) -> Arrow<S, TlWord> {
        let n = a.len();
        let id: Diagram = (0..2 * n).map(|p| if p < n { p + n } else { p - n }).collect();
        self.diagram_arrow(a, a, &id)
    }
    fn zero_arrow(&self, s: &TlWord, t: &TlWord) -> Arrow<S, TlWord> {
        Arrow::new(s.clone(), t.clone(), Matrix::zeros(self.basis(s, t).diagrams.len(), 1))
    }
    fn compose(&self, f: &Arrow<S, TlWord>, g: &Arrow<S, TlWord>) -> Result<Arrow<S, TlWord>> {
        if f.source != g.target {
            return Err(Error::ShapeMismatch(format!(
                "compose {} after {}",
                self.describe(&f.source),
                self.describe(&g.target)
            )));
        }
        let (s, m, t) = (&g.source, &g.target, &f.target);
        let bf = self.basis(m, t);
        let bg = self.basis(s, m);
        let bo = self.basis(s, t);
        let mut out = Matrix::<S>::zeros(bo.diagrams.len(), 1);
        for (i, a) in bf.diagrams.iter().enumerate() {
            let ca = f.matrix.get(i, 0);
            if ca.is_zero() {
                continue;
            }
            for (j, b) in bg.diagrams.iter().enumerate() {
                let cb = g.matrix.get(j, 0);
                if cb.is_zero() {
                    continue;
                }
                let (dgm, loops, neg) = self.compose_diagrams(a, b, s.len(), m.len(), t.len());
                let mut c = ca.clone() * cb.clone();
                for _ in 0..loops {
                    c = c * self.d.clone();
                }
                if neg {
                    c = -c;
                }
                let k = bo.index[&dgm];
                let v = out.get(k, 0).clone() + c;
                out.set(k, 0, v);
            }
        }
        Ok(Arrow::new(s.clone(), t.clone(), out))
    }
    fn tensor(&self, f: &Arrow<S, TlWord>, g: &Arrow<S, TlWord>) -> Arrow<S, TlWord> {
        let s = self.tensor_obj(&f.source, &g.source);
        let t = self.tensor_obj(&f.target, &g.target);
        let bf = self.basis(&f.source, &f.target);
        let bg = self.basis(&g.source, &g.target);
        let bo = self.basis(&s, &t);
        let mut out = Matrix::<S>::zeros(bo.diagrams.len(), 1);
        for (i, a) in bf.diagrams.iter().enumerate() {
            let ca = f.matrix.get(i, 0);
            if ca.is_zero() {
                continue;
            }
            for (j, b) in bg.diagrams.iter().enumerate() {
                let cb = g.matrix.get(j, 0);
                if cb.is_zero() {
                    continue;
                }
                let dgm = Self::tensor_diagrams(
                    a,
                    b,
                    f.source.len(),
                    f.target.len(),
                    g.source.len(),
                    g.target.len(),
                );
                let k = bo.index[&dgm];
                let v = out.get(k, 0).clone() + ca.clone() * cb.clone();
                out.set(k, 0, v);
            }
        }
        Arrow::new(s, t, out)
    }
    fn adjoint(&self, f: &Arrow<S, TlWord>) -> Arrow<S, TlWord> {
        let (ns, nt) = (f.source.len(), f.target.len());
        let bf = self.basis(&f.source, &f.target);
        let bo = self.basis(&f.target, &f.source);
        // old bottom point p becomes new top point nt + p; old top q becomes q - ns
        let flip = |p: usize| if p < ns { nt + p } else { p - ns };
        let mut out = Matrix::zeros(bo.diagrams.len(), 1);
        for (i, a) in bf.diagrams.iter().enumerate() {
            let c = f.matrix.get(i, 0);
            if c.is_zero() {
                continue;
            }
            let mut dgm = vec![0; ns + nt];
            for p in 0..ns + nt {
                dgm[flip(p)] = flip(a[p]);
            }
            out.set(bo.index[&dgm], 0, c.conj());
        }
        Arrow::new(f.target.clone(), f.source.clone(), out)
    }
    fn hom_basis(&self, s: &TlWord, t: &TlWord) -> Result<Vec<Arrow<S, TlWord>>> {
        self.check_word(s)?;
        self.check_word(t)?;
        let b = self.basis(s, t);
        Ok(b.diagrams.iter().map(|d| self.diagram_arrow(s, t, d)).collect())
    }
    fn solution(&self, a: &TlWord) -> Result<ConjugateSolution<S, TlWord>> {
        self.check_word(a)?;
        if let Some(s) = self.solutions.lock().unwrap().get(a) {
            return Ok(s.clone());
        }
        let sol = match a.len() {
            0 => ConjugateSolution {
                object: vec![],
                conj: vec![],
                r: self.identity(&vec![]),
                rbar: self.identity(&vec![]),
                standard: true,
            },
            1 => self.generator_solution(a[0]),
            n => {
                let head = self.solution(&a[..n - 1].to_vec())?;
                let tail = self.solution(&a[n - 1..].to_vec())?;
                tensor_solution(self, &head, &tail)?
            }
        };
        self.solutions.lock().unwrap().insert(a.clone(), sol.clone());
        Ok(sol)
    }
    fn irreducibles(&self) -> Vec<TlWord> {
        match self.variant {
            TlVariant::TwoColored => vec![vec![], vec![false], vec![true]],
            _ => vec![vec![], vec![false]],
        }
    }
    fn fusion(&self, a: &TlWord) -> Result<Vec<(usize, Arrow<S, TlWord>)>> {
        let labels = self.irreducibles();
        match labels.iter().position(|l| l == a) {
            Some(k) => Ok(vec![(k, self.identity(a))]),
            None => Err(Error::Unsupported(
                "words of length two or more split over Jones-Wenzl labels; use fusion_tl".into(),
            )),
        }
    }
    fn scalar_value(&self, f: &Arrow<S, TlWord>) -> S {
        assert!(f.source.is_empty() && f.target.is_empty(), "not an arrow of the unit object");
        f.matrix.get(0, 0).clone()
    }
}

/// The strict fibre functor `TL -> Hilb` attached to an admissible matrix `F`.
pub struct TauF<S> {
    tl: Arc<TemperleyLieb<S>>,
    hilb: Hilb<S>,
    n: usize,
    /// Cup tensor for `R` or `S`: `T[a][b] = F[b][a]`.
    cup: Matrix<S>,
    /// Cup tensor for `Sbar` (two-coloured variant only).
    cup_bar: Matrix<S>,
}

impl<S: Scalar> TauF<S> {
    pub fn new(tl: Arc<TemperleyLieb<S>>, f: Matrix<S>) -> Result<Self> {
        if !f.is_square() {
            return Err(Error::NotAdmissible("F must be square".into()));
        }
        let n = f.rows();
        let ffs = &f * &f.adjoint();
        let ffs_inv = inverse(&ffs).map_err(|_| Error::NotAdmissible("F is singular".into()))?;
        let (t1, t2) = (ffs.trace(), ffs_inv.trace());
        let d = tl.loop_value().clone();
        if !t1.approx_eq(&d) || !t2.approx_eq(&d) {
            return Err(Error::NotAdmissible(format!("Tr(FF*) = {t1}, Tr((FF*)^-1) = {t2}, d = {d}")));
        }
        let ffbar = &f * &f.conj();
        let id = Matrix::identity(n);
        match tl.variant() {
            TlVariant::Real if !ffbar.approx_eq(&id) => {
                return Err(Error::VariantMismatch("real variant needs F Fbar = 1".into()))
            }
            TlVariant::Pseudoreal if !ffbar.approx_eq(&-id.clone()) => {
                return Err(Error::VariantMismatch("pseudoreal variant needs F Fbar = -1".into()))
            }
            _ => {}
        }
        let g = inverse(&f.conj())?;
        Ok(TauF { tl, hilb: Hilb::new(), n, cup: f.transpose(), cup_bar: g.transpose() })
    }

    fn arc_tensor(&self, left_bar: bool, right_bar: bool) -> &Matrix<S> {
        match (self.tl.variant(), left_bar, right_bar) {
            (TlVariant::TwoColored, false, true) => &self.cup_bar,
            _ => &self.cup,
        }
    }

    fn eval_diagram(&self, s: &TlWord, t: &TlWord, dgm: &Diagram) -> Matrix<S> {
        let (ns, nt, n) = (s.len(), t.len(), self.n);
        let rows = n.pow(nt as u32);
        let cols = n.pow(s.len() as u32);
        let mut out = Matrix::<S>::zeros(rows, cols);
        let colour = |p: usize| if p < ns { s[p] } else { t[p - ns] };
        let pairs: Vec<(usize, usize)> = (0..ns + nt).filter(|&p| p < dgm[p]).map(|p| (p, dgm[p])).collect();
        let mut idx = vec![0usize; ns + nt];
        let total = n.pow(pairs.len() as u32 * 2);
        for code in 0..total {
            let mut c = code;
            let mut ok = true;
            let mut val = S::one();
            for &(p, q) in &pairs {
                let x = c % n;
                c /= n;
                let y = c % n;
                c /= n;
                let through = (p < ns) != (q < ns);
                if through {
                    if x != y {
                        ok = false;
                        break;
                    }
                    idx[p] = x;
                    idx[q] = x;
                } else {
                    idx[p] = x;
                    idx[q] = y;
                    let tens = self.arc_tensor(colour(p), colour(q));
                    let v = tens.get(x, y).clone();
                    let v = if p < ns { v.conj() } else { v };
                    if v.is_zero() {
                        ok = false;
                        break;
                    }
                    val = val * v;
                }
            }
            if !ok {
                continue;
            }
            let row = (0..nt).fold(0, |acc, j| acc * n + idx[ns + j]);
            let col = (0..ns).fold(0, |acc, j| acc * n + idx[j]);
            let cur = out.get(row, col).clone();
            out.set(row, col, cur + val);
        }
        out
    }
}

impl<S: Scalar> Functor<S> for TauF<S> {
    type Src = TemperleyLieb<S>;
    type Tgt = Hilb<S>;

    fn src(&self) -> &TemperleyLieb<S> {
        &self.tl
    }
    fn tgt(&self) -> &Hilb<S> {
        &self.hilb
    }
    fn name(&self) -> String {
        format!("tau_F on {}", self.tl.name())
    }
    fn kind(&self) -> FunctorKind {
        FunctorKind::Strict
    }
    fn map_obj(&self, u: &TlWord) -> usize {
        self.n.pow(u.len() as u32)
    }
    fn map_arrow(&self, a: &Arrow<S, TlWord>) -> Result<Arrow<S, usize>> {
        let b = self.tl.basis(&a.source, &a.target);
        let mut out = Matrix::zeros(self.map_obj(&a.target), self.map_obj(&a.source));
        for (i, d) in b.diagrams.iter().enumerate() {
            let c = a.matrix.get(i, 0);
            if c.is_zero() {
                continue;
            }
            out = &out + &self.eval_diagram(&a.source, &a.target, d).scale(c);
        }
        Ok(self.hilb.arrow(out))
    }
    fn mu_tilde(&self, u: &TlWord, v: &TlWord) -> Result<Arrow<S, usize>> {
        Ok(self.hilb.identity(&self.map_obj(&self.tl.tensor_obj(u, v))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::*;
    use crate::surd::Surd;

    fn tl(v: TlVariant) -> TemperleyLieb<Surd> {
        TemperleyLieb::new(v, Surd::from_i64(2))
    }

    #[test]
    fn catalan_counts() {
        let t = tl(TlVariant::Real);
        let counts: Vec<usize> = (0..6).map(|n| t.basis(&t.power(n), &t.power(n)).diagrams.len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14, 42]);
        let c = tl(TlVariant::TwoColored);
        assert_eq!(c.basis(&vec![false, true], &vec![false, true]).diagrams.len(), 2);
        assert_eq!(c.basis(&vec![false, false], &vec![false, false]).diagrams.len(), 1);
    }

    #[test]
    fn conjugate_equations_all_variants() {
        for v in [TlVariant::Real, TlVariant::Pseudoreal, TlVariant::TwoColored] {
            let t = tl(v);
            let sol = t.solution(&t.generator()).unwrap();
            assert!(solves_conjugate_equations(&t, &sol), "{v:?}");
            assert_eq!(intrinsic_dimension(&t, &t.generator()).unwrap(), Surd::from_i64(2));
            let mut bad = sol.clone();
            bad.r = bad.r.scale(&Surd::from_i64(2));
            assert!(!solves_conjugate_equations(&t, &bad));
        }
    }

    #[test]
    fn pseudoreal_zigzag_is_minus_one() {
        let t = tl(TlVariant::Pseudoreal);
        let r = t.solution(&t.generator()).unwrap().r;
        let u = t.identity(&t.generator());
        let z = t.compose(&t.tensor(&t.adjoint(&r), &u), &t.tensor(&u, &r)).unwrap();
        assert_eq!(z, u.scale(&Surd::from_i64(-1)));
    }

    #[test]
    fn jones_wenzl_properties() {
        let t = tl(TlVariant::Real);
        let f2 = t.jones_wenzl(2).unwrap();
        let r = t.solution(&t.generator()).unwrap().r;
        assert!(t.compose(&f2, &r).unwrap().is_zero());
        for n in 1..=4 {
            let f = t.jones_wenzl(n).unwrap();
            assert_eq!(t.compose(&f, &f).unwrap(), f);
            assert_eq!(t.adjoint(&f), f);
            for i in 0..n.saturating_sub(1) {
                assert!(t.compose(&f, &t.e(n, i).unwrap()).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn singular_quantum_integer() {
        let t = TemperleyLieb::new(TlVariant::Real, Surd::sqrt_int(2));
        assert!(t.jones_wenzl(3).is_ok());
        assert_eq!(t.jones_wenzl(4).unwrap_err(), Error::SingularQuantumInteger(4));
    }

    #[test]
    fn fusion_of_one_and_one() {
        let t = tl(TlVariant::Real);
        let fus = t.fusion_tl(1, 1).unwrap();
        assert_eq!(fus.iter().map(|x| x.0).collect::<Vec<_>>(), vec![0, 2]);
        let mut total = t.zero_arrow(&t.power(2), &t.power(2));
        for (k, w) in &fus {
            assert_eq!(t.compose(&t.adjoint(w), w).unwrap(), t.jones_wenzl(*k).unwrap());
            total = total.add(&t.compose(w, &t.adjoint(w)).unwrap());
        }
        assert_eq!(total, t.identity(&t.power(2)));
        let fus = t.fusion_tl(0, 2).unwrap();
        assert_eq!(fus.len(), 1);
        assert_eq!(fus[0].1, t.jones_wenzl(2).unwrap());
    }

    #[test]
    fn tau_f_rejects_bad_f() {
        let t = Arc::new(tl(TlVariant::Real));
        let f: Matrix<Surd> = Matrix::diag(&[Surd::from_i64(2), Surd::from_ratio(1, 2)]);
        assert!(matches!(t.embed_tau_f(f), Err(Error::NotAdmissible(_))));
        let j: Matrix<Surd> = Matrix::from_i64(2, 2, &[0, 1, -1, 0]);
        assert!(matches!(t.embed_tau_f(j), Err(Error::VariantMismatch(_))));
    }
}
