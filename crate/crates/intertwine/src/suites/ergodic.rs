use crate::ergodic::{
    canonical_full_bimodule, classify_pairs, eigenmatrix, verify_canonical_equivalence, verify_eigenmatrix,
    verify_full_structure, Classification, ErgodicAction, FullStructure, InducedSystem,
};
use crate::error::{Error, Result};
use crate::rep::Rep;
use crate::report::CheckResult;
use crate::scalar::Scalar;
use crate::su2;

/// Ergodicity, the eigenmatrix identities for every irreducible, the canonical
/// full structure, and uniqueness of the full structure at full multiplicity.
pub fn eigenmatrix_suite<S: Scalar>(act: &ErgodicAction<S>, irreps: &[(String, Rep<S>)], bound: usize, seed: u64) -> Result<Vec<CheckResult>> {
    let mut out = vec![CheckResult::new(
        "dim fixed algebra = 1",
        "ergodicity",
        format!("{} on M_{}", act.group().name(), act.n()),
        act.fixed_algebra_dim() == 1,
        0.0,
    )];
    let plain: Vec<Rep<S>> = irreps.iter().map(|(_, r)| r.clone()).collect();
    for (name, v) in irreps {
        let em = eigenmatrix(v, act)?;
        let note = format!("{name}: mult {} of dim {}", em.mult, v.dim());
        out.extend(verify_eigenmatrix(&em, act).into_iter().map(|c| c.with_note(note.clone())));
        if em.mult == 0 {
            continue;
        }
        let (s, em) = canonical_full_bimodule(v, act)?;
        out.extend(verify_full_structure(&s, &em, act).into_iter().map(|c| c.with_note(note.clone())));
        out.push(verify_canonical_equivalence(&s, &em).with_note(note.clone()));
        if em.mult == v.dim() {
            let c = classify_pairs(v, act, &plain, bound, seed)?;
            let ok = c.candidates.is_empty() && c.admits_full_structure();
            out.push(CheckResult::new("mult = dim => X_v is the only full structure", "unique-full-structure", name.clone(), ok, 0.0));
        }
    }
    Ok(out)
}

/// The induced eigenmatrix formula at every group element, for each irreducible of `G`.
pub fn induced_suite<S: Scalar>(sys: &InducedSystem<S>, g_irreps: &[(String, Rep<S>)]) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for (name, v) in g_irreps {
        out.extend(sys.verify_eigenmatrix_formula(v)?.into_iter().map(|c| c.with_note(name.clone())));
    }
    Ok(out)
}

/// Round trip and full faithfulness of evaluation at the identity over all
/// pairs, then tensoriality with the canonical structures of the chosen irreducibles.
pub fn evaluation_suite<S: Scalar>(
    sys: &InducedSystem<S>,
    g_irreps: &[(String, Rep<S>)],
    tensor_with: &[String],
    coeffs: &[S],
) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for (a, v) in g_irreps {
        for (b, vp) in g_irreps {
            out.extend(sys.verify_evaluation(v, vp).into_iter().map(|c| c.with_note(format!("{a} -> {b}"))));
        }
    }
    let sub = sys.subgroup();
    for name in tensor_with {
        let u = g_irreps
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, r)| r)
            .ok_or_else(|| Error::Parse(format!("unknown irreducible {name}")))?;
        let eu: FullStructure<S> = canonical_full_bimodule(&u.restrict(sub), sys.action())?.0;
        for (a, v) in g_irreps {
            for (b, vp) in g_irreps {
                let cs = sys.verify_tensoriality((v, vp), (u, u), (&eu, &eu), coeffs);
                out.extend(cs.into_iter().map(|c| c.with_note(format!("{a} -> {b}, S on {name}"))));
            }
        }
    }
    Ok(out)
}

/// `(z, W)` classification with checks on every representative that is exact.
pub fn classify_suite<S: Scalar>(
    name: &str,
    v: &Rep<S>,
    act: &ErgodicAction<S>,
    irreps: &[Rep<S>],
    bound: usize,
    seed: u64,
) -> Result<(Vec<CheckResult>, Classification<S>)> {
    let c = classify_pairs(v, act, irreps, bound, seed)?;
    let mut out = Vec::new();
    match c.require_exhaustive() {
        Ok(()) => out.push(CheckResult::new("every candidate searched", "search-bound", name, true, 0.0)),
        Err(e) => out.push(CheckResult::skipped("every candidate searched", "search-bound", name, &e.to_string())),
    }
    if c.mult > 0 {
        let (s, em) = canonical_full_bimodule(v, act)?;
        out.extend(verify_full_structure(&s, &em, act).into_iter().map(|r| r.with_note(format!("{name}: canonical"))));
    }
    for k in c.full_structures() {
        let labels = format!("{name}: z = {:?}", k.labels);
        match k.class.as_ref().and_then(|cl| cl.w.as_ref()) {
            Some(w) => {
                let s = FullStructure::from_pair(&c.eigen, &k.z, w)?;
                out.extend(verify_full_structure(&s, &c.eigen, act).into_iter().map(|r| r.with_note(labels.clone())));
            }
            None => out.push(CheckResult::skipped(
                "representative satisfies the structure conditions",
                "pair-representative",
                labels,
                "representative only in floating point",
            )),
        }
    }
    Ok((out, c))
}

/// Spectrum and hom dimensions of the SU(2) adjoint actions, with verdicts for
/// `v_1` and `v_2`.
pub fn su2_suite(rs: &[u32]) -> Result<(Vec<CheckResult>, Vec<su2::Su2Report>)> {
    let mut out = Vec::new();
    let mut reports = Vec::new();
    for &r in rs {
        let rep = su2::su2_adjoint_report(r)?;
        let item = format!("r = {r}");
        let want: Vec<(u32, usize)> = (0..=r).map(|k| (2 * k, 1)).collect();
        out.push(CheckResult::new("spectrum of beta_r = v_0 + v_2 + ... + v_2r", "su2-spectrum", item.clone(), rep.spectrum == want, 0.0));
        // independent count: v_1 x v_r = v_{r-1} + v_{r+1}, so (v_1 x v_r, v_1 x v_r) has dim 2
        out.push(CheckResult::new("dim (v_1 x beta, v_1 x beta) = 2", "su2-hom-dims", item.clone(), rep.self_hom_v1 == 2, 0.0));
        out.push(CheckResult::new("dim (v_1 x beta, v_2 x beta) = 0", "su2-hom-dims", item.clone(), rep.hom_v1_v2 == 0, 0.0));
        let (a1, a2) = (&rep.analyses[0], &rep.analyses[1]);
        out.push(
            CheckResult::new("v_1 x beta has full structures", "su2-verdict", item.clone(), a1.admits_full_structure, 0.0)
                .with_note(format!("moduli dim {:?}", a1.moduli_dim)),
        );
        out.push(
            CheckResult::new(
                "v_2 x beta has no full structure",
                "su2-verdict",
                item,
                !a2.admits_full_structure && a2.certificate.is_some(),
                0.0,
            )
            .with_note(a2.certificate.clone().unwrap_or_default()),
        );
        reports.push(rep);
    }
    Ok((out, reports))
}
