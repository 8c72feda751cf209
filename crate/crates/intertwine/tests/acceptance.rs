//! Acceptance harness: one PASS/FAIL line per criterion, non-zero exit if any fails.
//!
//! Derived quantities are recomputed here from character tables, group
//! functions, weight multisets and projective characters, independently of the
//! routines under test.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::Instant;

use nalgebra::DMatrix;
use num_traits::{ToPrimitive, Zero};

use intertwine::builtin::{builtin_group, builtin_pair};
use intertwine::category::{intrinsic_dimension, Category};
use intertwine::config::RunConfig;
use intertwine::ergodic::{eigenmatrix, ErgodicAction};
use intertwine::functor::Functor;
use intertwine::group::{FiniteGroup, Subgroup};
use intertwine::induction::unit_vector;
use intertwine::matrix::Matrix;
use intertwine::rep::{intertwiners, Rep};
use intertwine::repcat::{RepCat, Word};
use intertwine::report::{CheckResult, Status};
use intertwine::suites::*;
use intertwine::tl::{TemperleyLieb, TlVariant};
use intertwine::{Scalar, Surd, F64};

/// Largest residual tolerated in floating mode.
const FLOAT_TOL: f64 = 1e-9;
/// Smallest eigenvalue tolerated for a floating Gram matrix.
const LAMBDA_TOL: f64 = -1e-10;
const ARROWS: usize = 20;
const ELEMENTS: usize = 10;
const SEED: u64 = 2024;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn lib<T>(r: intertwine::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Every check passed, with residual exactly zero (`tol = None`) or at most `tol`.
fn all_pass(cs: &[CheckResult], tol: Option<f64>, what: &str) -> Result<(usize, f64), String> {
    ensure(!cs.is_empty(), format!("{what}: no checks ran"))?;
    let mut worst = 0.0f64;
    for c in cs {
        if c.status != Status::Pass {
            return Err(format!("{what}: {:?} [{}] {} :: {} {}", c.status, c.tag, c.identity, c.item, c.note.clone().unwrap_or_default()));
        }
        let ok = match tol {
            None => c.residual == 0.0,
            Some(t) => c.residual <= t,
        };
        ensure(ok, format!("{what}: residual {:.3e} on [{}] {}", c.residual, c.tag, c.item))?;
        worst = worst.max(c.residual);
    }
    Ok((cs.len(), worst))
}

fn with_tag<'a>(cs: &'a [CheckResult], tag: &str) -> Vec<&'a CheckResult> {
    cs.iter().filter(|c| c.tag == tag).collect()
}

fn count(s: &Surd) -> Result<i64, String> {
    let q = s.as_rational().ok_or_else(|| format!("{s} is not rational"))?;
    ensure(q.is_integer(), format!("{s} is not an integer"))?;
    q.to_integer().to_i64().ok_or_else(|| format!("{s} overflows"))
}

fn pair<S: Scalar>(g: &str, k: &str) -> Result<PairSetting<S>, String> {
    lib(builtin_pair(g, k).and_then(|p| PairSetting::from_builtin(&p)))
}

fn words<S: Scalar>(p: &PairSetting<S>, xs: &[&str]) -> Result<Vec<Word>, String> {
    xs.iter().map(|x| lib(p.word(x))).collect()
}

// ------------------------------------------------------------ oracles

/// Character of a representation, straight from its matrices.
fn chi(r: &Rep<Surd>) -> Vec<Surd> {
    (0..r.group().order()).map(|g| r.matrix(g).trace()).collect()
}

fn inner_on(group_order: usize, a: &[Surd], b: &[Surd]) -> Surd {
    a.iter().zip(b).fold(Surd::zero(), |acc, (x, y)| acc + x.conj() * y.clone()) / Surd::from_i64(group_order as i64)
}

/// Induced character by the coset-free formula `(1/|K|) sum_x chi_w(x^-1 g x)`.
fn induced_character(g: &FiniteGroup, sub: &Subgroup, cw: &[Surd]) -> Vec<Surd> {
    (0..g.order())
        .map(|x0| {
            let mut s = Surd::zero();
            for x in 0..g.order() {
                let y = g.mul(g.mul(g.inv(x), x0), x);
                if let Some(k) = sub.embedding.iter().position(|&e| e == y) {
                    s = s + cw[k].clone();
                }
            }
            s / Surd::from_i64(sub.embedding.len() as i64)
        })
        .collect()
}

/// Multiplicity of `v` in `Ad pi` from `Tr Ad pi(g) = |Tr pi(g)|^2`.
fn projective_mult(v: &Rep<Surd>, act: &ErgodicAction<Surd>) -> Result<i64, String> {
    let g = act.group();
    let cv = chi(v);
    let ad: Vec<Surd> = (0..g.order())
        .map(|x| {
            let t = act.unitary(x).trace();
            t.conj() * t
        })
        .collect();
    count(&inner_on(g.order(), &cv, &ad))
}

/// SU(2) weights (doubled) of `v_a` as a multiset.
fn weights(a: i64) -> Vec<i64> {
    (0..=a).map(|k| a - 2 * k).collect()
}

fn tensor_weights(x: &[i64], y: &[i64]) -> Vec<i64> {
    x.iter().flat_map(|a| y.iter().map(move |b| a + b)).collect()
}

/// Multiplicities of highest weights, peeling the largest weight repeatedly.
fn decompose(mut ws: Vec<i64>) -> Vec<(i64, i64)> {
    let mut out: Vec<(i64, i64)> = Vec::new();
    while let Some(&top) = ws.iter().max() {
        for w in weights(top) {
            let i = ws.iter().position(|&x| x == w).expect("weight multiset of a representation");
            ws.swap_remove(i);
        }
        match out.iter_mut().find(|(h, _)| *h == top) {
            Some(e) => e.1 += 1,
            None => out.push((top, 1)),
        }
    }
    out.sort();
    out
}

fn hom_dim(a: &[(i64, i64)], b: &[(i64, i64)]) -> i64 {
    a.iter().map(|(h, m)| m * b.iter().find(|(k, _)| k == h).map(|x| x.1).unwrap_or(0)).sum()
}

// ------------------------------------------------------------ criteria

fn conjugate() -> Outcome {
    let mut n = 0;
    let s3 = pair::<Surd>("S3", "A3")?;
    n += all_pass(&lib(group_conjugate_suite(&s3.cat))?, None, "S3")?.0;
    let a4 = lib(builtin_group("A4"))?;
    let a4cat = lib(RepCat::with_irreps(a4.group.clone(), &a4.irreps))?;
    n += all_pass(&lib(group_conjugate_suite(&a4cat))?, None, "A4")?.0;
    for v in [TlVariant::Real, TlVariant::Pseudoreal] {
        let tl = TemperleyLieb::new(v, Surd::from_i64(2));
        n += all_pass(&lib(tl_conjugate_suite(&tl))?, None, &tl.name())?.0;
        let d = lib(intrinsic_dimension(&tl, &tl.generator()))?;
        ensure(d == Surd::from_i64(2), format!("TL generator has dimension {d}"))?;
    }
    let std = words(&s3, &["std"])?.remove(0);
    let d = lib(intrinsic_dimension(s3.cat.as_ref(), &std))?;
    ensure(d == Surd::from_i64(2), format!("S3 std has dimension {d}"))?;
    let d = lib(intrinsic_dimension(s3.cat.as_ref(), &s3.cat.unit()))?;
    ensure(d == Surd::from_i64(1), format!("unit has dimension {d}"))?;
    Ok(format!("{n} checks, d(TL x) = 2, d(std) = 2, d(unit) = 1, residual 0"))
}

struct Corpus {
    g: &'static str,
    k: &'static str,
    objects: &'static [&'static str],
    arrow_objects: &'static [&'static str],
}

const CORPORA: &[Corpus] = &[
    Corpus { g: "S3", k: "A3", objects: &["triv", "sgn", "std"], arrow_objects: &["triv", "sgn", "std", "std std"] },
    Corpus { g: "S4", k: "A4", objects: &["triv", "sgn", "std2"], arrow_objects: &["triv", "sgn", "std2", "std3"] },
];

fn corpus_checks<S: Scalar>(c: &Corpus, appendix: bool) -> Result<(Vec<CheckResult>, usize), String> {
    let p = pair::<S>(c.g, c.k)?;
    let objs = words(&p, c.objects)?;
    let arrows = lib(arrow_corpus(p.cat.as_ref(), &words(&p, c.arrow_objects)?, ARROWS, SEED))?;
    ensure(arrows.len() >= ARROWS, format!("{}/{}: only {} arrows", c.g, c.k, arrows.len()))?;
    let cs = if appendix { appendix_suite(&p, &objs, &arrows) } else { quasitensor_suite(&p, &objs, &arrows) };
    Ok((lib(cs)?, arrows.len()))
}

fn quasitensor() -> Outcome {
    let mut parts = Vec::new();
    for c in CORPORA {
        let (cs, na) = corpus_checks::<Surd>(c, false)?;
        let (n, _) = all_pass(&cs, None, &format!("{}/{} exact", c.g, c.k))?;
        // both the restriction and the composite with invariants are covered
        let notes: std::collections::BTreeSet<_> = cs.iter().filter_map(|x| x.note.clone()).collect();
        ensure(notes.len() == 2, format!("expected restriction and composite, got {notes:?}"))?;
        let (cf, _) = corpus_checks::<F64>(c, false)?;
        let (nf, wf) = all_pass(&cf, Some(FLOAT_TOL), &format!("{}/{} f64", c.g, c.k))?;
        parts.push(format!("{}/{}: {na} arrows, {n} exact checks at 0, {nf} f64 checks max {wf:.1e}", c.g, c.k));
    }
    Ok(parts.join("; "))
}

fn appendix() -> Outcome {
    let mut parts = Vec::new();
    for c in CORPORA {
        let (cs, _) = corpus_checks::<Surd>(c, true)?;
        let (n, _) = all_pass(&cs, None, &format!("{}/{}", c.g, c.k))?;
        for t in ["bullet-of-mu-tilde", "bullet-of-R", "bullet-naturality"] {
            ensure(!with_tag(&cs, t).is_empty(), format!("no {t} checks"))?;
        }
        parts.push(format!("{}/{}: {n} exact checks", c.g, c.k));
    }
    Ok(parts.join("; "))
}

fn min_eigenvalue(g: &Matrix<F64>) -> f64 {
    let n = g.rows();
    let m = DMatrix::from_fn(n, n, |i, j| *g.get(i, j));
    m.symmetric_eigenvalues().iter().cloned().fold(f64::INFINITY, f64::min)
}

fn positivity() -> Outcome {
    let objects = ["triv", "sgn", "std", "std std"];
    let p = pair::<Surd>("S3", "A3")?;
    let ctx = lib(p.context())?;
    let cs = lib(positivity_suite(&ctx, &p.cat, &words(&p, &objects)?, ELEMENTS, SEED))?;
    all_pass(&cs, Some(FLOAT_TOL), "exact")?;
    ensure(with_tag(&cs, "positivity").len() == objects.len(), "an LDL certificate is missing")?;
    let pf = pair::<F64>("S3", "A3")?;
    let ctxf = lib(pf.context())?;
    let mut worst = f64::INFINITY;
    for (name, u) in objects.iter().zip(words(&pf, &objects)?) {
        let family = lib(element_corpus(&ctxf, &u, ELEMENTS, SEED))?;
        ensure(family.len() >= ELEMENTS, format!("{name}: corpus of {}", family.len()))?;
        let l = min_eigenvalue(&lib(ctxf.state_gram(&family))?);
        ensure(l >= LAMBDA_TOL, format!("{name}: lambda_min = {l:e}"))?;
        worst = worst.min(l);
    }
    Ok(format!("4 objects, exact LDL certificates, min lambda_min {worst:.2e}"))
}

fn swan() -> Outcome {
    let p = pair::<Surd>("S3", "A3")?;
    let ctx = lib(p.context())?;
    let cs = lib(swan_suite(&ctx, &p.cat, &words(&p, &["sgn", "std", "std std"])?, ELEMENTS, SEED))?;
    let (n, _) = all_pass(&cs, None, "restriction")?;
    let sp = lib(spectral_suite(&p))?;
    all_pass(&sp, None, "spectral")?;
    // A3-fixed vectors from the character: std has none, sgn has one
    let sctx = lib(p.spectral_context())?;
    let k = &p.sub;
    for (name, fixed) in [("std", 0), ("sgn", 1)] {
        let r = p.g_irreps.iter().find(|(n, _)| n == name).ok_or("missing irreducible")?.1.restrict(k);
        let oracle = count(&inner_on(k.group.order(), &chi(&r), &vec![Surd::from_i64(1); k.group.order()]))?;
        ensure(oracle == fixed, format!("character count for {name}"))?;
        let u = words(&p, &[name])?.remove(0);
        let span = lib(sctx.spanning_set(&[u]))?;
        ensure(span.is_empty() == (oracle == 0), format!("{name}: spectral bimodule of size {} but {oracle} fixed vectors", span.len()))?;
    }
    Ok(format!("{n} Swan checks exact, std gives the zero bimodule under the spectral functor"))
}

fn quotient() -> Outcome {
    let p = pair::<Surd>("S3", "A3")?;
    let ctx = lib(p.context())?;
    let cs = lib(quotient_suite(&ctx, &p.cat, &words(&p, &["std", "sgn"])?))?;
    all_pass(&cs, None, "closed form")?;
    // group-function model: c is a function on G, x_i(g) the columns of u(g)
    let reps = ctx.action().ok_or("no action attached")?;
    let ev = |e: &intertwine::induction::Element<Surd, Word, Word>, g: usize| -> Surd {
        let mut s = Surd::zero();
        for (v, xs) in &e.comps {
            let vg = reps[*v].matrix(g);
            for (k, x) in xs.iter().enumerate() {
                let y = &x.matrix * &Matrix::col_vec(vg.col(k));
                if y.rows() > 0 {
                    s = s + y.get(0, 0).clone();
                }
            }
        }
        s
    };
    let u = words(&p, &["std"])?.remove(0);
    let urep = &reps[ctx.labels().iter().position(|l| *l == u).ok_or("std is not a label")?];
    let xs = lib(ctx.x_basis(&u))?;
    let k = p.res.tgt();
    let mut n = 0;
    for (v, l) in ctx.labels().iter().enumerate() {
        for t in lib(k.hom_basis(&p.res.map_obj(l), &k.unit()))? {
            for kk in 0..ctx.label_dim(v) {
                let c = lib(ctx.raw(&[], l, &t, &unit_vector(ctx.label_dim(v), kk)))?;
                for i in 0..xs.len() {
                    for j in 0..xs.len() {
                        let lhs = lib(ctx.inner_formula(&xs[i], &lib(ctx.dot(&c, &xs[j]))?))?;
                        for g in 0..urep.group().order() {
                            let m = urep.matrix(g);
                            let want = (0..m.rows()).fold(Surd::zero(), |acc, r| acc + m.get(r, i).conj() * ev(&c, g) * m.get(r, j).clone());
                            ensure(ev(&lhs, g) == want, format!("<x_{i}, c x_{j}> at g = {g}"))?;
                            n += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{} closed-form checks, {n} pointwise group-function checks, exact", cs.len()))
}

fn fullness() -> Outcome {
    let p = pair::<Surd>("S3", "A3")?;
    let ctx = lib(p.context())?;
    let seqs = sequences(&words(&p, &["sgn", "std"])?, 2);
    let cs = lib(fullness_suite(&ctx, &seqs, ELEMENTS, SEED))?;
    let (n, _) = all_pass(&cs, None, "S3/A3")?;
    Ok(format!("{} sequences, {n} checks", seqs.len()))
}

fn ind() -> Outcome {
    let p = pair::<Surd>("S3", "A3")?;
    let ctx = lib(p.context())?;
    // A3 = {e, r, r^2}: sgn restricts to (1,1,1), std to (2,-1,-1)
    let table = |name: &str| -> [i64; 3] {
        match name {
            "sgn" => [1, 1, 1],
            "std" => [2, -1, -1],
            _ => [1, 1, 1],
        }
    };
    let letters = ["triv", "sgn", "std"];
    let mut seqs: Vec<Vec<&str>> = vec![vec![]];
    let mut layer: Vec<Vec<&str>> = vec![vec![]];
    for _ in 0..3 {
        layer = layer.iter().flat_map(|s| letters.iter().map(move |l| [s.clone(), vec![*l]].concat())).collect();
        seqs.extend(layer.iter().cloned());
    }
    let mut pairs = 0;
    for a in &seqs {
        for b in &seqs {
            let ca = a.iter().fold([1i64; 3], |acc, n| { let t = table(n); [acc[0] * t[0], acc[1] * t[1], acc[2] * t[2]] });
            let cb = b.iter().fold([1i64; 3], |acc, n| { let t = table(n); [acc[0] * t[0], acc[1] * t[1], acc[2] * t[2]] });
            let s: i64 = (0..3).map(|i| ca[i] * cb[i]).sum();
            ensure(s % 3 == 0, "character inner product is not an integer")?;
            let oracle = (s / 3) as usize;
            let wa: Vec<Word> = words(&p, a)?.into_iter().filter(|w| !w.is_empty()).collect();
            let wb: Vec<Word> = words(&p, b)?.into_iter().filter(|w| !w.is_empty()).collect();
            let h = lib(ctx.ind_hom(&wa, &wb))?;
            ensure(
                h.direct == oracle && h.fixed == oracle && h.round_trip,
                format!("{a:?} -> {b:?}: hom {} fixed {} oracle {oracle}", h.direct, h.fixed),
            )?;
            pairs += 1;
        }
    }
    let cs = lib(ind_suite(&p, &ctx, &words(&p, &letters)?, 3))?;
    all_pass(&cs, None, "suite")?;
    Ok(format!("{pairs} sequence pairs (length <= 3) match the A3 character table"))
}

fn products() -> Outcome {
    let p = pair::<Surd>("S3", "A3")?;
    let ctx = lib(p.context())?;
    let pairs: Vec<(Word, Word)> = [("std", "std"), ("sgn", "std"), ("std", "sgn")]
        .iter()
        .map(|(a, b)| Ok((lib(p.word(a))?, lib(p.word(b))?)))
        .collect::<Result<_, String>>()?;
    let cs = lib(products_suite(&ctx, &pairs, ELEMENTS, SEED))?;
    let (n, _) = all_pass(&cs, None, "S3/A3")?;
    ensure(with_tag(&cs, "product-reconstruction").len() == pairs.len(), "reconstruction missing")?;
    Ok(format!("{n} checks over {} pairs", pairs.len()))
}

fn frobenius() -> Outcome {
    let mut parts = Vec::new();
    for (g, k, seqs) in [("S3", "A3", vec![vec!["sgn"], vec!["std"], vec!["std", "std"]]), ("S4", "A4", vec![vec!["sgn"], vec!["std2"]])] {
        let bp = lib(builtin_pair(g, k))?;
        let mut n = 0;
        for (un, u) in &bp.g.irreps {
            for (wn, w) in &bp.k.irreps {
                let cu = chi(&u.restrict(&bp.sub));
                let left = count(&inner_on(bp.k.group.order(), &cu, &chi(w)))?;
                let ind = induced_character(&bp.g.group, &bp.sub, &chi(w));
                let right = count(&inner_on(bp.g.group.order(), &chi(u), &ind))?;
                let a = intertwiners(&u.restrict(&bp.sub), w).len() as i64;
                let b = intertwiners(u, &w.induce(&bp.sub)).len() as i64;
                ensure(left == right && a == left && b == right, format!("{g}/{k} ({un}, {wn}): oracle {left}/{right}, computed {a}/{b}"))?;
                n += 1;
            }
        }
        let p = pair::<Surd>(g, k)?;
        let ctx = lib(p.context())?;
        let ws: Vec<Vec<Word>> = seqs.iter().map(|s| words(&p, s)).collect::<Result<_, _>>()?;
        all_pass(&lib(frobenius_suite(&p, &ctx, &ws))?, None, &format!("{g}/{k}"))?;
        parts.push(format!("{g}/{k}: {n} irreducible pairs"));
    }
    Ok(parts.join("; "))
}

fn weyl_v4() -> Result<(ErgodicAction<Surd>, Vec<(String, Rep<Surd>)>), String> {
    let v4 = lib(builtin_group("V4"))?;
    let (x, z) = intertwine::ergodic::weyl_pair::<Surd>(2);
    let act = lib(ErgodicAction::from_generators(v4.group.clone(), &[x, z]))?;
    Ok((act, v4.irreps))
}

fn eigen() -> Outcome {
    let (act, irreps) = weyl_v4()?;
    let cs = lib(eigenmatrix_suite(&act, &irreps, 16, SEED))?;
    all_pass(&cs, None, "V4 on M2")?;
    ensure(with_tag(&cs, "ergodicity").len() == 1, "ergodicity not certified")?;
    ensure(with_tag(&cs, "unique-full-structure").len() == 4, "uniqueness not confirmed for all four characters")?;
    ensure(with_tag(&cs, "eigenprojection-trace").len() == 4, "trace checks missing")?;
    for (name, v) in &irreps {
        let oracle = projective_mult(v, &act)?;
        let em = lib(eigenmatrix(v, &act))?;
        ensure(oracle == 1 && em.mult == 1 && v.dim() == 1, format!("{name}: mult {} oracle {oracle}", em.mult))?;
        ensure(em.z.is_unitary(), format!("{name}: Z not unitary"))?;
        ensure(em.trace_weight() == Surd::from_i64(oracle), format!("{name}: Tr(E) = {}", em.trace_weight()))?;
    }
    Ok(format!("4 characters of mult 1 = dim, {} checks exact", cs.len()))
}

fn shipped_config() -> Result<intertwine::config::Setting<Surd>, String> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../intertwine-cli/configs/d4_v4_weyl.json");
    let cfg = lib(RunConfig::from_path(&path))?;
    lib(cfg.resolve::<Surd>())
}

fn induced() -> Outcome {
    let set = shipped_config()?;
    let d = set.induced.first().ok_or("config has no induced system")?;
    let cs = lib(induced_suite(&d.system, &d.g_irreps))?;
    all_pass(&cs, None, &d.id)?;
    ensure(with_tag(&cs, "induced-eigenmatrix").len() == d.g_irreps.len(), "formula not checked for every irreducible")?;
    // mult^rho(v) = mult^beta(v|K) from projective characters of the K-action
    let act = d.system.action();
    for (name, v) in &d.g_irreps {
        let oracle = projective_mult(&v.restrict(d.system.subgroup()), act)?;
        let (m, _) = lib(d.system.eigenmatrix(v))?;
        ensure(m as i64 == oracle, format!("{name}: mult {m}, oracle {oracle}"))?;
    }
    Ok(format!("{}: {} irreducibles, every group element, residual 0", d.id, d.g_irreps.len()))
}

fn su2() -> Outcome {
    let rs: Vec<u32> = (1..=5).collect();
    let (cs, reports) = lib(su2_suite(&rs))?;
    all_pass(&cs, None, "SU(2)")?;
    for rep in &reports {
        let r = rep.r as i64;
        let beta = decompose(tensor_weights(&weights(r), &weights(r)));
        let want: Vec<(u32, usize)> = beta.iter().map(|&(h, m)| (h as u32, m as usize)).collect();
        ensure(rep.spectrum == want, format!("r = {r}: spectrum {:?} vs {want:?}", rep.spectrum))?;
        let v1b = decompose(tensor_weights(&weights(1), &weights(r)));
        let v2b = decompose(tensor_weights(&weights(2), &weights(r)));
        ensure(hom_dim(&v1b, &v1b) == 2 && rep.self_hom_v1 == 2, format!("r = {r}: self hom {}", rep.self_hom_v1))?;
        ensure(hom_dim(&v1b, &v2b) == 0 && rep.hom_v1_v2 == 0, format!("r = {r}: cross hom {}", rep.hom_v1_v2))?;
        ensure(rep.analyses[1].certificate.is_some(), format!("r = {r}: no certificate for v_2"))?;
    }
    Ok("r = 1..5: spectra, hom dims 2 and 0, nonexistence certificates".into())
}

fn evaluation() -> Outcome {
    let set = shipped_config()?;
    let d = set.induced.first().ok_or("config has no induced system")?;
    let cs = lib(evaluation_suite(&d.system, &d.g_irreps, &d.tensor_with, &d.coeffs))?;
    all_pass(&cs, None, &d.id)?;
    for t in ["evaluation-round-trip", "evaluation-tensoriality"] {
        ensure(!with_tag(&cs, t).is_empty(), format!("no {t} checks"))?;
    }
    Ok(format!("{} checks exact", cs.len()))
}

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("conjugate equations and intrinsic dimensions", conjugate),
        ("quasitensor axioms on arrow corpora", quasitensor),
        ("bullet identities on arrow corpora", appendix),
        ("positivity of inner products", positivity),
        ("Swan freeness and spectral support", swan),
        ("quotient left action", quotient),
        ("fixed vectors central, intertwiners lift", fullness),
        ("Ind full and faithful", ind),
        ("multiplication isometry and reconstruction", products),
        ("Frobenius reciprocity", frobenius),
        ("Weyl action eigenmatrices", eigen),
        ("induced eigenmatrix formula", induced),
        ("SU(2) adjoint actions", su2),
        ("evaluation functor", evaluation),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let secs = t.elapsed().as_secs_f64();
        match out {
            Ok(detail) => println!("criterion {:>2} PASS {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
