use std::f64::consts::PI;

use intertwine::builtin::{builtin_group, builtin_pair, GroupData};
use intertwine::ergodic::*;
use intertwine::matrix::Matrix;
use intertwine::rep::Rep;
use intertwine::su2;
use intertwine::{Scalar, Surd};

fn irreps(d: &GroupData) -> Vec<Rep<Surd>> {
    d.irreps.iter().map(|(_, r)| r.clone()).collect()
}

fn klein_weyl() -> (GroupData, ErgodicAction<Surd>) {
    let data = builtin_group("V4").unwrap();
    let (x, z) = weyl_pair::<Surd>(2);
    let act = ErgodicAction::from_generators(data.group.clone(), &[x, z]).unwrap();
    (data, act)
}

fn d4_weyl() -> (intertwine::builtin::GroupPair, InducedSystem<Surd>) {
    let p = builtin_pair("D4", "V4").unwrap();
    let (x, z) = weyl_pair::<Surd>(2);
    let act = ErgodicAction::from_generators(p.sub.group.clone(), &[x, z]).unwrap();
    let sys = InducedSystem::new(p.sub.clone(), act).unwrap();
    (p, sys)
}

fn paulis() -> Vec<Matrix<Surd>> {
    let i = Surd::i();
    let (o, z) = (Surd::from_i64(1), Surd::from_i64(0));
    vec![
        Matrix::identity(2),
        Matrix::from_rows(vec![vec![z.clone(), o.clone()], vec![o.clone(), z.clone()]]),
        Matrix::from_rows(vec![vec![z.clone(), -i.clone()], vec![i, z.clone()]]),
        Matrix::from_rows(vec![vec![o.clone(), z.clone()], vec![z, -o]]),
    ]
}

#[test]
fn weyl_spectral_spaces_are_pauli_lines() {
    let (data, act) = klein_weyl();
    let ps = paulis();
    // each Pauli matrix is a joint eigenvector of the action; record its eigencharacter
    let eigen: Vec<Vec<Surd>> = ps
        .iter()
        .map(|p| {
            (0..4)
                .map(|k| {
                    let b = act.beta(k, p);
                    let lam = (&p.adjoint() * &b).trace() / Surd::from_i64(2);
                    assert_eq!(b, p.scale(&lam));
                    lam
                })
                .collect()
        })
        .collect();
    for v in irreps(&data) {
        let sp = spectral_space(&v, &act).unwrap();
        assert_eq!(sp.mult(), 1);
        let f = &sp.basis[0][0];
        // fixed vector: chi(k) beta_k(f) = f, so f is the Pauli with eigencharacter conj(chi)
        let want: Vec<Surd> = (0..4).map(|k| v.matrix(k).get(0, 0).conj()).collect();
        let idx = eigen.iter().position(|e| *e == want).expect("some Pauli carries the character");
        let p = &ps[idx];
        let phase = (&p.adjoint() * f).get(0, 0).clone();
        assert_eq!(f, &p.scale(&phase));
        assert_eq!(phase.norm_sqr(), Surd::from_i64(1));
        let em = eigenmatrix(&v, &act).unwrap();
        assert!(em.is_unitary());
        assert_eq!(em.trace_weight(), Surd::from_i64(1));
        let c = classify_pairs(&v, &act, &irreps(&data), 8, 0).unwrap();
        assert!(c.candidates.is_empty() && c.admits_full_structure());
    }
}

#[test]
fn eigenmatrix_identities_on_sums() {
    let (data, act) = klein_weyl();
    let ir = irreps(&data);
    let v = ir[0].direct_sum(&ir[3]).direct_sum(&ir[3]);
    let em = eigenmatrix(&v, &act).unwrap();
    assert_eq!(em.mult, 3);
    for c in verify_eigenmatrix(&em, &act) {
        assert!(c.passed(), "{c:?}");
    }
    let (s, em) = canonical_full_bimodule(&v, &act).unwrap();
    assert!(verify_full_structure(&s, &em, &act).iter().all(|c| c.passed()));
    assert!(verify_canonical_equivalence(&s, &em).passed());
}

#[test]
fn adjoint_s3_low_multiplicity() {
    let data = builtin_group("S3").unwrap();
    let std = data.irrep("std").unwrap();
    let act = ErgodicAction::adjoint(std).unwrap();
    let em = eigenmatrix(std, &act).unwrap();
    assert_eq!(em.mult, 1);
    assert!(!em.is_unitary());
    assert_eq!(em.trace_weight(), Surd::from_i64(1));
    assert!(verify_eigenmatrix(&em, &act).iter().all(|c| c.passed()));
    let (s, em) = canonical_full_bimodule(std, &act).unwrap();
    assert!(verify_full_structure(&s, &em, &act).iter().all(|c| c.passed()));
    // smaller irreducibles have full multiplicity, so X_std has no proper extension
    let c = classify_pairs(std, &act, &irreps(&data), 8, 0).unwrap();
    assert!(c.exhaustive() && c.no_proper_extension());
    assert!(c.candidates.iter().all(|k| k.spectral_columns == Some(true)));
    // E = 1 with the compressed left action satisfies everything but fullness
    let bad = FullStructure::compressed(&em, Matrix::identity(4));
    let res = verify_full_structure(&bad, &em, &act);
    assert!(res.iter().all(|c| c.passed() == (c.tag != "fullness")));
}

#[test]
fn binary_adjoint_has_a_torus_of_structures() {
    // Q8 acting by Ad of its two-dimensional irrep: std is outside the spectrum and
    // (std x beta, std x beta) is commutative of dimension 4
    let data = builtin_group("Q8").unwrap();
    let std = data.irrep("std").unwrap();
    let act = ErgodicAction::adjoint(std).unwrap();
    let c = classify_pairs(std, &act, &irreps(&data), 16, 7).unwrap();
    assert_eq!(c.mult, 0);
    let full: Vec<_> = c.full_structures().collect();
    assert_eq!(full.len(), 1);
    assert_eq!(full[0].hom_dim, 4);
    assert_eq!(full[0].class.as_ref().unwrap().moduli_dim(), 3);
    assert!(c.candidates.iter().filter(|k| k.z.dim() == 1 || k.labels.len() > 1).all(|k| k.class.is_none()));
    // the identity is one representative: the trivial bimodule
    let s = FullStructure::from_pair(&c.eigen, std, &Matrix::identity(4)).unwrap();
    assert!(verify_full_structure(&s, &c.eigen, &act).iter().all(|r| r.passed()));
}

#[test]
fn search_bound_marks_partial() {
    let data = builtin_group("Q8").unwrap();
    let std = data.irrep("std").unwrap();
    let act = ErgodicAction::adjoint(std).unwrap();
    let c = classify_pairs(std, &act, &irreps(&data), 2, 7).unwrap();
    assert!(!c.exhaustive());
    assert!(matches!(c.require_exhaustive(), Err(intertwine::Error::SearchBoundExceeded(_))));
}

#[test]
fn induction_from_the_whole_group_is_trivial() {
    let p = builtin_pair("S3", "S3").unwrap();
    let std = p.k.irrep("std").unwrap();
    let act = ErgodicAction::adjoint(std).unwrap();
    let sys = InducedSystem::new(p.sub.clone(), act.clone()).unwrap();
    assert_eq!(sys.dim(), 4);
    for (_, v) in &p.g.irreps {
        assert_eq!(induced_multiplicity(&sys, v).unwrap(), spectral_space(&v.restrict(&p.sub), &act).unwrap().mult());
    }
}

#[test]
fn scalar_induction_counts_fixed_vectors() {
    for (g, k) in [("S3", "A3"), ("S3", "Z2"), ("D4", "Z4"), ("S4", "A4")] {
        let p = builtin_pair(g, k).unwrap();
        let sys = InducedSystem::new(p.sub.clone(), ErgodicAction::<Surd>::trivial(p.sub.group.clone())).unwrap();
        assert_eq!(sys.dim(), p.sub.index());
        for (name, v) in &p.g.irreps {
            // character oracle: dim of K-fixed vectors
            let chi = v.character();
            let sum = p.sub.embedding.iter().fold(Surd::from_i64(0), |a, &e| a + chi[e].clone());
            let want = sum / Surd::from_i64(p.sub.group.order() as i64);
            let m = induced_multiplicity(&sys, v).unwrap();
            assert_eq!(Surd::from_i64(m as i64), want, "{g}/{k} {name}");
        }
    }
}

#[test]
fn induced_eigenmatrix_formula_is_exact() {
    let (p, sys) = d4_weyl();
    assert_eq!(sys.dim(), 8);
    for (name, v) in &p.g.irreps {
        for c in sys.verify_eigenmatrix_formula(v).unwrap() {
            assert!(c.passed() && c.residual == 0.0, "{name} {c:?}");
        }
    }
}

#[test]
fn evaluation_functor_is_full_faithful_and_invertible() {
    let (p, sys) = d4_weyl();
    let ir: Vec<&Rep<Surd>> = p.g.irreps.iter().map(|(_, r)| r).collect();
    for v in &ir {
        for vp in &ir {
            for c in sys.verify_evaluation(v, vp) {
                assert!(c.passed(), "{c:?}");
            }
        }
    }
    let std = p.g.irrep("std").unwrap();
    let id = sys.lift(&Matrix::identity(4), std, std).unwrap();
    assert!(sys.is_intertwiner(&id, std, std));
    assert_eq!(evaluate_at_identity(&id), Matrix::identity(4));
}

#[test]
fn evaluation_is_tensorial() {
    let (p, sys) = d4_weyl();
    let act = sys.action().clone();
    let std = p.g.irrep("std").unwrap();
    let chi = &p.g.irreps[2].1;
    let coeffs: Vec<Surd> = [1, -2, 3, 1].iter().map(|&x| Surd::from_i64(x)).collect();
    let structure = |u: &Rep<Surd>| canonical_full_bimodule(&u.restrict(&p.sub), &act).unwrap().0;
    let (es, ec) = (structure(std), structure(chi));
    for (v, vp) in [(std, std), (chi, std), (std, chi)] {
        for (u, up, eu, eup) in [(std, std, &es, &es), (chi, chi, &ec, &ec)] {
            for c in sys.verify_tensoriality((v, vp), (u, up), (eu, eup), &coeffs) {
                assert!(c.passed(), "{c:?}");
            }
        }
    }
}

/// `dim Hom` between SU(2) representations from the Weyl integration formula.
fn weyl_integral(labels: &[u32]) -> f64 {
    let steps = 4000;
    let h = PI / steps as f64;
    let mut acc = 0.0;
    for s in 1..steps {
        let t = s as f64 * h;
        let mut f = t.sin().powi(2);
        for &j in labels {
            f *= ((j + 1) as f64 * t).sin() / t.sin();
        }
        acc += f;
    }
    2.0 / PI * acc * h
}

#[test]
fn su2_adjoint_matches_weyl_integration() {
    for r in 1..=5u32 {
        let rep = su2::su2_adjoint_report(r).unwrap();
        for j in 0..=2 * r + 1 {
            let want = weyl_integral(&[j, r, r]).round() as usize;
            assert_eq!(su2::multiplicity(j, r).unwrap(), want, "r={r} j={j}");
        }
        let labels: Vec<u32> = rep.spectrum.iter().map(|(j, _)| *j).collect();
        assert_eq!(labels, (0..=r).map(|k| 2 * k).collect::<Vec<_>>());
        assert!(rep.spectrum.iter().all(|(_, m)| *m == 1));
        // (v1 x beta, v1 x beta) ~ (v1 x v1, v_r x v_r) and (v1 x beta, v2 x beta) ~ (v2 x v1, v_r x v_r)
        assert_eq!(rep.self_hom_v1, weyl_integral(&[1, 1, r, r]).round() as usize);
        assert_eq!(rep.self_hom_v1, 2);
        assert_eq!(rep.hom_v1_v2, weyl_integral(&[2, 1, r, r]).round() as usize);
        assert_eq!(rep.hom_v1_v2, 0);
        assert!(rep.analyses[0].admits_full_structure);
        assert_eq!(rep.analyses[0].moduli_dim, Some(1));
        assert!(!rep.analyses[1].admits_full_structure);
    }
}
