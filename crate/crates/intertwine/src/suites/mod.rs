//! Named verification suites.  Each turns a piece of data (a category, a
//! subgroup pair, an ergodic action) into a list of checks; the CLI reads the
//! data from a config file and the acceptance harness from the builtin library.

mod ergodic;
mod induction;
mod run;

pub use ergodic::*;
pub use induction::*;
pub use run::*;

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::builtin::GroupPair;
use crate::category::{intrinsic_dimension, is_standard, verify_conjugate_equations, Arrow, Category};
use crate::error::{Error, Result};
use crate::functor::Functor;
use crate::group::Subgroup;
use crate::induction::{group_context, Induction};
use crate::matrix::Matrix;
use crate::quasitensor::{bullet_commutes, verify_appendix_identities, verify_quasitensor_axioms, Composite};
use crate::rep::Rep;
use crate::repcat::{Forgetful, Invariants, RepCat, Restriction, Word};
use crate::report::CheckResult;
use crate::scalar::Scalar;
use crate::tl::{TemperleyLieb, TlVariant};

/// Every suite name the CLI accepts, in run order.
pub const SUITES: &[&str] = &[
    "conjugate",
    "tl",
    "quasitensor",
    "appendix",
    "positivity",
    "swan",
    "spectral",
    "quotient",
    "fullness",
    "ind",
    "products",
    "frobenius",
    "eigenmatrix",
    "induced",
    "evaluation",
    "classify",
    "su2",
];

pub type GroupCtx<S> = Induction<S, Forgetful<S>, Restriction<S>>;
pub type Spectral<S> = Composite<Restriction<S>, Invariants<S>>;
pub type SpectralCtx<S> = Induction<S, Forgetful<S>, Spectral<S>>;

/// `Rep(G)` with restriction to `Rep(K)`.
#[derive(Clone)]
pub struct PairSetting<S: Scalar> {
    pub label: String,
    pub cat: Arc<RepCat<S>>,
    pub res: Arc<Restriction<S>>,
    pub g_irreps: Vec<(String, Rep<S>)>,
    pub sub: Subgroup,
    pub k_irreps: Vec<(String, Rep<S>)>,
}

impl<S: Scalar> PairSetting<S> {
    pub fn new(label: &str, g_irreps: Vec<(String, Rep<S>)>, sub: Subgroup, k_irreps: Vec<(String, Rep<S>)>) -> Result<Self> {
        let cat = Arc::new(RepCat::with_irreps(sub.parent.clone(), &g_irreps)?);
        let res = Arc::new(Restriction::new(cat.clone(), sub.clone(), &k_irreps)?);
        Ok(PairSetting { label: label.to_string(), cat, res, g_irreps, sub, k_irreps })
    }

    pub fn from_builtin(p: &GroupPair) -> Result<Self> {
        let lower = |xs: &[(String, Rep<crate::Surd>)]| xs.iter().map(|(n, r)| (n.clone(), r.lower::<S>())).collect();
        let label = format!("{}/{}", p.g.group.name(), p.sub.group.name());
        Self::new(&label, lower(&p.g.irreps), p.sub.clone(), lower(&p.k.irreps))
    }

    /// Letter names separated by spaces; `triv` and `1` are the unit.
    pub fn word(&self, text: &str) -> Result<Word> {
        let cleaned: Vec<&str> = text.split_whitespace().filter(|t| *t != "triv").collect();
        self.cat.word(&cleaned.join(" "))
    }

    pub fn words(&self, texts: &[String]) -> Result<Vec<Word>> {
        texts.iter().map(|t| self.word(t)).collect()
    }

    pub fn context(&self) -> Result<GroupCtx<S>> {
        group_context(self.cat.clone(), self.res.clone())
    }

    /// The restriction followed by taking `K`-invariants: the spectral functor of `G/K`.
    pub fn spectral_functor(&self) -> Arc<Spectral<S>> {
        let inv = Arc::new(Invariants::new(self.res.target_arc().clone()));
        Arc::new(Composite::new(inv, self.res.clone()))
    }

    pub fn spectral_context(&self) -> Result<SpectralCtx<S>> {
        group_context(self.cat.clone(), self.spectral_functor())
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small Gaussian-integer coefficient in `[-3, 3] + i[-1, 1]`.
pub fn small_coeff<S: Scalar>(r: &mut ChaCha8Rng) -> S {
    let re = S::from_i64(r.gen_range(-3..=3));
    let im = S::from_i64(r.gen_range(-1..=1));
    re + S::i() * im
}

/// All hom-space basis arrows between the given objects, followed by seeded
/// random combinations inside the nonzero hom spaces, `n` arrows in total.
pub fn arrow_corpus<S: Scalar, C: Category<S>>(cat: &C, objects: &[C::Obj], n: usize, seed: u64) -> Result<Vec<Arrow<S, C::Obj>>> {
    let mut spaces = Vec::new();
    for s in objects {
        for t in objects {
            let b = cat.hom_basis(s, t)?;
            if !b.is_empty() {
                spaces.push(b);
            }
        }
    }
    if spaces.is_empty() {
        return Ok(Vec::new());
    }
    let mut out: Vec<_> = spaces.iter().flatten().take(n).cloned().collect();
    let mut r = rng(seed);
    while out.len() < n {
        let b = &spaces[r.gen_range(0..spaces.len())];
        let mut a = b[0].scale(&small_coeff(&mut r));
        for x in &b[1..] {
            a = a.add(&x.scale(&small_coeff(&mut r)));
        }
        if !a.is_zero() {
            out.push(a);
        }
    }
    Ok(out)
}

fn note_all(cs: Vec<CheckResult>, note: &str) -> Vec<CheckResult> {
    cs.into_iter().map(|c| c.with_note(note)).collect()
}

fn failed_with(identity: &str, tag: &str, item: &str, e: &Error) -> CheckResult {
    CheckResult::new(identity, tag, item, false, f64::INFINITY).with_note(e.to_string())
}

/// Conjugate equations, standardness and `||R||^2` against an expected dimension.
pub fn conjugate_checks<S: Scalar, C: Category<S>>(cat: &C, objects: &[(C::Obj, Option<S>)]) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for (u, want) in objects {
        let sol = cat.solution(u)?;
        out.extend(verify_conjugate_equations(cat, &sol)?);
        out.push(CheckResult::new("R*(1 x Y)R = Rbar*(Y x 1)Rbar", "standard-solution", cat.describe(u), is_standard(cat, &sol)?, 0.0));
        if let Some(want) = want {
            let d = intrinsic_dimension(cat, u)?;
            let res = (d.clone() - want.clone()).abs_f64();
            out.push(
                CheckResult::new("||R||^2 = d(u)", "intrinsic-dimension", cat.describe(u), d.approx_eq(want), res)
                    .with_note(format!("d = {d}")),
            );
        }
    }
    Ok(out)
}

/// Every irreducible of `G`, with the unit and one product: the intrinsic
/// dimension of a group representation is its vector-space dimension.
pub fn group_conjugate_suite<S: Scalar>(cat: &RepCat<S>) -> Result<Vec<CheckResult>> {
    let mut objs: Vec<(Word, Option<S>)> = vec![(Vec::new(), Some(S::one()))];
    for w in cat.irreducibles() {
        if !w.is_empty() {
            objs.push((w.clone(), Some(S::from_i64(cat.dim(&w) as i64))));
        }
    }
    if let Some((w, _)) = objs.iter().rev().find(|(w, _)| !w.is_empty()).cloned() {
        let ww = cat.tensor_obj(&w, &w);
        let d = S::from_i64(cat.dim(&ww) as i64);
        objs.push((ww, Some(d)));
    }
    Ok(note_all(conjugate_checks(cat, &objs)?, &cat.name()))
}

/// The TL generator `x` has dimension `d`, `x x x` dimension `d^2`.
pub fn tl_conjugate_suite<S: Scalar>(tl: &TemperleyLieb<S>) -> Result<Vec<CheckResult>> {
    let d = tl.loop_value().clone();
    let x = tl.generator();
    let xb = tl.conj_obj(&x);
    let objs = vec![
        (tl.unit(), Some(S::one())),
        (x.clone(), Some(d.clone())),
        (xb.clone(), Some(d.clone())),
        (tl.tensor_obj(&x, &xb), Some(d.clone() * d)),
    ];
    Ok(note_all(conjugate_checks(tl, &objs)?, &tl.name()))
}

/// Admissibility of `F`, then conjugate equations, quasitensor axioms and the
/// bullet identities for the fibre functor `tau_F`.
pub fn tl_suite<S: Scalar>(variant: TlVariant, d: S, f: &Matrix<S>) -> Result<Vec<CheckResult>> {
    let tl = Arc::new(TemperleyLieb::new(variant, d));
    let mut out = tl_conjugate_suite(&tl)?;
    let item = format!("F ({}x{}) on {}", f.rows(), f.cols(), tl.name());
    let tau = match tl.embed_tau_f(f.clone()) {
        Ok(t) => {
            out.push(CheckResult::new("Tr FF* = Tr (FF*)^-1 = d, F Fbar = +-1", "admissibility", item, true, 0.0));
            t
        }
        Err(e) => {
            out.push(failed_with("Tr FF* = Tr (FF*)^-1 = d, F Fbar = +-1", "admissibility", &item, &e));
            return Ok(out);
        }
    };
    let x = tl.generator();
    let x2 = tl.tensor_obj(&x, &tl.conj_obj(&x));
    let objs = vec![tl.unit(), x.clone(), x2.clone()];
    let mut arrows = vec![tl.e(2, 0)?, tl.identity(&tl.power(2))];
    if variant != TlVariant::TwoColored {
        arrows.push(tl.jones_wenzl(2)?);
    }
    out.extend(note_all(verify_quasitensor_axioms(&tau, &objs, &arrows)?, &tau.name()));
    out.extend(note_all(verify_appendix_identities(&tau, &x, &x, None)?, &tau.name()));
    for a in &arrows {
        out.push(bullet_commutes(&tau, a)?.with_note(tau.name()));
    }
    Ok(out)
}

/// Quasitensor axioms for the restriction and for the spectral functor
/// (restriction followed by invariants) on one corpus.
pub fn quasitensor_suite<S: Scalar>(p: &PairSetting<S>, objects: &[Word], arrows: &[Arrow<S, Word>]) -> Result<Vec<CheckResult>> {
    let mut out = note_all(verify_quasitensor_axioms(p.res.as_ref(), objects, arrows)?, &p.res.name());
    let sf = p.spectral_functor();
    out.extend(note_all(verify_quasitensor_axioms(sf.as_ref(), objects, arrows)?, &sf.name()));
    Ok(out)
}

/// Appendix bullet identities over all ordered pairs of nonunit objects,
/// with a target-side arrow on each factor, and `mu(A)^bullet = mu(A^bullet)`.
pub fn appendix_suite<S: Scalar>(p: &PairSetting<S>, objects: &[Word], arrows: &[Arrow<S, Word>]) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    out.extend(appendix_for(p.res.as_ref(), objects, arrows)?);
    out.extend(appendix_for(p.spectral_functor().as_ref(), objects, arrows)?);
    Ok(out)
}

fn appendix_for<S: Scalar, F: Functor<S, Src = RepCat<S>>>(f: &F, objects: &[Word], arrows: &[Arrow<S, Word>]) -> Result<Vec<CheckResult>> {
    let t = f.tgt();
    let mut out = Vec::new();
    for u in objects.iter().filter(|w| !w.is_empty()) {
        for v in objects.iter().filter(|w| !w.is_empty()) {
            let (mu, mv) = (f.map_obj(u), f.map_obj(v));
            let mm = t.hom_basis(&mu, &mu)?.pop();
            let nn = t.hom_basis(&mv, &mv)?.pop();
            let extra = match (&mm, &nn) {
                (Some(m), Some(n)) => Some((u, v, m, n)),
                _ => None,
            };
            out.extend(verify_appendix_identities(f, u, v, extra)?);
        }
    }
    for a in arrows {
        out.push(bullet_commutes(f, a)?);
    }
    Ok(note_all(out, &f.name()))
}
