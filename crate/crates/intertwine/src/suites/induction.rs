use std::collections::BTreeSet;

use crate::category::Category;
use crate::error::Result;
use crate::functor::Functor;
use crate::induction::{unit_vector, Elem, Induction};
use crate::linalg::psd_certificate;
use crate::rep::{character_inner, intertwiners};
use crate::repcat::{Forgetful, RepCat, Restriction, Word};
use crate::report::CheckResult;
use crate::scalar::{eps, Scalar};

use super::{rng, small_coeff, PairSetting};

type Ctx<S, M> = Induction<S, Forgetful<S>, M>;
type E<S, M> = Elem<S, Forgetful<S>, M>;

fn seq_of(u: &Word) -> Vec<Word> {
    if u.is_empty() {
        Vec::new()
    } else {
        vec![u.clone()]
    }
}

fn seq_name<S: Scalar>(cat: &RepCat<S>, seq: &[Word]) -> String {
    let parts: Vec<String> = seq.iter().map(|w| cat.describe(w)).collect();
    format!("({})", parts.join(", "))
}

/// The spanning set over `u`, the `x_i`, then random combinations up to `size`.
pub fn element_corpus<S, M>(ctx: &Ctx<S, M>, u: &Word, size: usize, seed: u64) -> Result<Vec<E<S, M>>>
where
    S: Scalar,
    M: Functor<S, Src = RepCat<S>>,
{
    let span = ctx.spanning_set(&seq_of(u))?;
    if span.is_empty() {
        return Ok(span);
    }
    let mut out = span.clone();
    if !u.is_empty() {
        out.extend(ctx.x_basis(u)?);
    }
    let mut r = rng(seed);
    while out.len() < size {
        let mut e = ctx.zero(&seq_of(u));
        for b in &span {
            e = e.add(&b.scale(&small_coeff(&mut r)));
        }
        if !e.is_zero() {
            out.push(e);
        }
    }
    Ok(out)
}

/// Two routes to `<xi, eta>` agree, and the scalar Gram matrix of a corpus is
/// positive semidefinite (exact `LDL*` verdict in exact mode).
pub fn positivity_suite<S, M>(ctx: &Ctx<S, M>, cat: &RepCat<S>, objects: &[Word], size: usize, seed: u64) -> Result<Vec<CheckResult>>
where
    S: Scalar,
    M: Functor<S, Src = RepCat<S>>,
{
    let mut out = Vec::new();
    for u in objects {
        let item = cat.describe(u);
        let fam = element_corpus(ctx, u, size, seed)?;
        if fam.is_empty() {
            out.push(CheckResult::skipped("omega(<xi, xi>) >= 0", "positivity", item, "zero bimodule"));
            continue;
        }
        let mut res: f64 = 0.0;
        for a in &fam {
            for b in &fam {
                res = res.max(ctx.inner_default(a, b)?.residual(&ctx.inner_formula(a, b)?));
            }
        }
        out.push(CheckResult::new("<xi, eta> by star and product = closed formula", "inner-product-routes", item.clone(), res <= eps(), res));
        let cert = psd_certificate(&ctx.state_gram(&fam)?)?;
        let note = format!("n = {}, lambda_min = {:.3e}, exact = {:?}", fam.len(), cert.lambda_min, cert.exact_psd);
        out.push(
            CheckResult::new("[omega(<xi_i, xi_j>)] >= 0", "positivity", item.clone(), cert.is_psd(), (-cert.lambda_min).max(0.0))
                .with_note(note),
        );
        out.push(CheckResult::new(
            "lambda_min >= -1e-10",
            "positivity-float",
            item,
            cert.lambda_min >= -1e-10,
            (-cert.lambda_min).max(0.0),
        ));
    }
    Ok(out)
}

/// Swan projection, isometry, and orthonormality `<x_i, x_j> = delta_ij 1`.
pub fn swan_suite<S, M>(ctx: &Ctx<S, M>, cat: &RepCat<S>, objects: &[Word], size: usize, seed: u64) -> Result<Vec<CheckResult>>
where
    S: Scalar,
    M: Functor<S, Src = RepCat<S>>,
{
    let mut out = Vec::new();
    for u in objects.iter().filter(|u| !u.is_empty()) {
        out.extend(ctx.verify_swan(u)?);
        out.extend(ctx.verify_swan_isometry(u, &element_corpus(ctx, u, size, seed)?)?);
        let xs = ctx.x_basis(u)?;
        let (unit, zero) = (ctx.unit()?, ctx.zero(&[]));
        let mut res: f64 = 0.0;
        for (i, a) in xs.iter().enumerate() {
            for (j, b) in xs.iter().enumerate() {
                let want = if i == j { &unit } else { &zero };
                res = res.max(ctx.inner_formula(a, b)?.residual(want));
            }
        }
        out.push(CheckResult::new("<x_i, x_j> = delta_ij", "x-orthonormal", cat.describe(u), res <= eps(), res));
    }
    Ok(out)
}

/// For the spectral functor of `G/K`: the algebra has dimension `[G:K]` and an
/// irreducible gives a nonzero bimodule iff its restriction has `K`-fixed vectors
/// (counted by characters).
pub fn spectral_suite<S: Scalar>(p: &PairSetting<S>) -> Result<Vec<CheckResult>> {
    let ctx = p.spectral_context()?;
    let mut out = Vec::new();
    let alg = ctx.spanning_set(&[])?.len();
    out.push(
        CheckResult::new("dim C = [G:K]", "spectral-algebra", p.label.clone(), alg == p.sub.index(), 0.0)
            .with_note(format!("dim = {alg}")),
    );
    for w in p.cat.irreducibles().into_iter().filter(|w| !w.is_empty()) {
        let chi = p.cat.realize(&w).restrict(&p.sub).character();
        let ones = vec![S::one(); chi.len()];
        let fixed = character_inner(&ones, &chi).abs_f64().round() as usize;
        let span = ctx.spanning_set(&[w.clone()])?;
        let item = p.cat.describe(&w);
        out.push(
            CheckResult::new("H_u = 0 iff u|K has no fixed vector", "spectral-support", item.clone(), span.is_empty() == (fixed == 0), 0.0)
                .with_note(format!("fixed = {fixed}, spanning = {}", span.len())),
        );
        if !span.is_empty() {
            out.extend(ctx.verify_swan_isometry(&w, &span)?);
        }
    }
    Ok(out)
}

/// `<x_i, c x_j>` by products and inner products against the closed formula,
/// for `c` ranging over the basis coefficients of the algebra.
pub fn quotient_suite<S, M>(ctx: &Ctx<S, M>, cat: &RepCat<S>, objects: &[Word]) -> Result<Vec<CheckResult>>
where
    S: Scalar,
    M: Functor<S, Src = RepCat<S>>,
{
    let mu = ctx.mu();
    let m = mu.tgt();
    let mut out = Vec::new();
    for u in objects.iter().filter(|u| !u.is_empty()) {
        let xs = ctx.x_basis(u)?;
        let mut res: f64 = 0.0;
        let mut count = 0;
        for (v, l) in ctx.labels().iter().enumerate() {
            for t in m.hom_basis(&mu.map_obj(l), &m.unit())? {
                for k in 0..ctx.label_dim(v) {
                    let phi = unit_vector::<S>(ctx.label_dim(v), k);
                    let c = ctx.raw(&[], l, &t, &phi)?;
                    for i in 0..xs.len() {
                        for j in 0..xs.len() {
                            let lhs = ctx.inner_formula(&xs[i], &ctx.dot(&c, &xs[j])?)?;
                            let closed = ctx.left_action_formula(u, i, j, l, &t, &phi)?;
                            res = res.max(lhs.residual(&closed));
                            count += 1;
                        }
                    }
                }
            }
        }
        out.push(
            CheckResult::new("<x_i, c x_j> = closed formula", "quotient-left-action", cat.describe(u), res <= eps(), res)
                .with_note(format!("{count} coefficients")),
        );
    }
    Ok(out)
}

/// Fixed vectors commute with the algebra; module intertwiners are bimodule maps.
pub fn fullness_suite<S, M>(ctx: &Ctx<S, M>, seqs: &[Vec<Word>], size: usize, seed: u64) -> Result<Vec<CheckResult>>
where
    S: Scalar,
    M: Functor<S, Src = RepCat<S>>,
{
    let corpus = element_corpus(ctx, &Vec::new(), size, seed)?;
    let span = ctx.spanning_set(&[])?;
    let mut out = Vec::new();
    for s in seqs {
        out.push(ctx.verify_fixed_central(s, &corpus)?);
    }
    for u in seqs {
        for v in seqs {
            out.extend(ctx.verify_module_intertwiners(u, v, &span)?);
        }
    }
    Ok(out)
}

/// Sequences of length at most `max_len` over `letters`, with the unit removed
/// and duplicates dropped.
pub fn sequences(letters: &[Word], max_len: usize) -> Vec<Vec<Word>> {
    let mut all: Vec<Vec<Word>> = vec![Vec::new()];
    let mut layer: Vec<Vec<Word>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|s| {
                letters.iter().map(move |l| {
                    let mut t = s.clone();
                    t.push(l.clone());
                    t
                })
            })
            .collect();
        all.extend(layer.iter().cloned());
    }
    let mut seen = BTreeSet::new();
    all.into_iter()
        .map(|s| s.into_iter().filter(|w| !w.is_empty()).collect::<Vec<_>>())
        .filter(|s| seen.insert(s.clone()))
        .collect()
}

/// `dim Hom_K(u|, v|)` from restricted characters.
pub fn restricted_hom_dim<S: Scalar>(p: &PairSetting<S>, u: &[Word], v: &[Word]) -> usize {
    let chi = |seq: &[Word]| p.cat.realize(&seq.concat()).restrict(&p.sub).character();
    character_inner(&chi(u), &chi(v)).abs_f64().round() as usize
}

/// `dim (Ind mu_u, Ind mu_v)` through fixed vectors against `dim (mu_u, mu_v)`
/// and the character count, over all pairs of sequences.
pub fn ind_suite<S: Scalar>(p: &PairSetting<S>, ctx: &Ctx<S, Restriction<S>>, letters: &[Word], max_len: usize) -> Result<Vec<CheckResult>> {
    let seqs = sequences(letters, max_len);
    let mut out = Vec::new();
    for u in &seqs {
        for v in &seqs {
            let h = ctx.ind_hom(u, v)?;
            let oracle = restricted_hom_dim(p, u, v);
            let ok = h.direct == h.fixed && h.fixed == oracle && h.round_trip;
            out.push(
                CheckResult::new(
                    "dim (Ind u, Ind v) = dim (mu_u, mu_v)",
                    "ind-full-faithful",
                    format!("{} -> {}", seq_name(&p.cat, u), seq_name(&p.cat, v)),
                    ok,
                    0.0,
                )
                .with_note(format!("hom {}, fixed {}, characters {}", h.direct, h.fixed, oracle)),
            );
        }
    }
    Ok(out)
}

/// Products are isometric, and every basis element of the bimodule over
/// `(u, u')` is rebuilt from products.
pub fn products_suite<S, M>(ctx: &Ctx<S, M>, pairs: &[(Word, Word)], size: usize, seed: u64) -> Result<Vec<CheckResult>>
where
    S: Scalar,
    M: Functor<S, Src = RepCat<S>>,
{
    let mu = ctx.mu();
    let m = mu.tgt();
    let mut out = Vec::new();
    for (u, u2) in pairs {
        let xis = element_corpus(ctx, u, size, seed)?;
        let etas = element_corpus(ctx, u2, size, seed + 1)?;
        out.extend(ctx.verify_products(&xis[..xis.len().min(3)], &etas[..etas.len().min(2)])?);
        let rest = seq_of(u2);
        let target = m.tensor_obj(&mu.map_obj(u), &ctx.target_of(&rest));
        let mut res: f64 = 0.0;
        let mut count = 0;
        for (v, l) in ctx.labels().iter().enumerate() {
            for mm in m.hom_basis(&mu.map_obj(l), &target)? {
                for k in 0..ctx.label_dim(v) {
                    res = res.max(ctx.product_decomposition(u, &rest, l, &mm, &unit_vector(ctx.label_dim(v), k))?);
                    count += 1;
                }
            }
        }
        let a = mu.src();
        out.push(
            CheckResult::new(
                "basis element = sum of products",
                "product-reconstruction",
                format!("({}, {})", a.describe(u), a.describe(u2)),
                res <= eps(),
                res,
            )
            .with_note(format!("{count} basis elements")),
        );
        let mut seq = seq_of(u);
        seq.extend(rest);
        if !seq.is_empty() {
            out.push(ctx.verify_sequence_solution(&seq)?);
        }
    }
    Ok(out)
}

/// `dim (u|K, w) = dim (u, Ind w)` with `Ind w` built from cosets, for all
/// irreducibles; then the bimodule form of the same reciprocity over `seqs`.
pub fn frobenius_suite<S, M>(p: &PairSetting<S>, ctx: &Ctx<S, M>, seqs: &[Vec<Word>]) -> Result<Vec<CheckResult>>
where
    S: Scalar,
    M: Functor<S, Src = RepCat<S>>,
{
    let mut out = Vec::new();
    for (un, u) in &p.g_irreps {
        let ur = u.restrict(&p.sub);
        for (wn, w) in &p.k_irreps {
            let a = intertwiners(&ur, w).len();
            let b = intertwiners(u, &w.induce(&p.sub)).len();
            out.push(
                CheckResult::new("dim (u|K, w) = dim (u, Ind w)", "frobenius", format!("({un}, {wn})"), a == b, 0.0)
                    .with_note(format!("{a} vs {b}")),
            );
        }
    }
    for (v, l) in ctx.labels().iter().enumerate() {
        for s in seqs {
            let (slots, brute, fixed) = ctx.frobenius(v, s)?;
            out.push(
                CheckResult::new(
                    "dim (mu_v, mu_s) = dim (v, H_s) = dim fixed (vbar, s)",
                    "frobenius-bimodule",
                    format!("{} into {}", p.cat.describe(l), seq_name(&p.cat, s)),
                    slots == brute && brute == fixed,
                    0.0,
                )
                .with_note(format!("{slots}, {brute}, {fixed}")),
            );
        }
    }
    Ok(out)
}
