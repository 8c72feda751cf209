use std::sync::Arc;

use intertwine::builtin::builtin_pair;
use intertwine::category::{conjugate_solution, Category};
use intertwine::functor::Functor;
use intertwine::induction::{group_context, unit_vector, Element, Induction};
use intertwine::linalg::psd_certificate;
use intertwine::matrix::Matrix;
use intertwine::quasitensor::Composite;
use intertwine::repcat::{Forgetful, Invariants, RepCat, Restriction, Word};
use intertwine::{Scalar, Surd};
use num_traits::{One, Zero};

type Ctx = Induction<Surd, Forgetful<Surd>, Restriction<Surd>>;
type E = Element<Surd, Word, Word>;

fn context(g: &str, k: &str) -> (Arc<RepCat<Surd>>, Arc<Restriction<Surd>>, Ctx) {
    let p = builtin_pair(g, k).unwrap();
    let cat = Arc::new(RepCat::with_irreps(p.g.group.clone(), &p.g.irreps).unwrap());
    let res = Arc::new(Restriction::new(cat.clone(), p.sub.clone(), &p.k.irreps).unwrap());
    let ctx = group_context(cat.clone(), res.clone()).unwrap();
    (cat, res, ctx)
}

/// `M x psi -> (g -> M v(g) psi)`: the element as a function on the group.
fn ev(ctx: &Ctx, e: &E, g: usize) -> Vec<Surd> {
    let reps = ctx.action().unwrap();
    let n = e.comps.values().next().map(|xs| xs[0].matrix.rows()).unwrap_or(0);
    let mut out = vec![Surd::zero(); n];
    for (v, xs) in &e.comps {
        let vg = reps[*v].matrix(g);
        for (k, x) in xs.iter().enumerate() {
            let col = Matrix::col_vec(vg.col(k));
            let y = &x.matrix * &col;
            for (o, yi) in out.iter_mut().zip(y.data()) {
                *o = o.clone() + yi.clone();
            }
        }
    }
    out
}

fn ev_scalar(ctx: &Ctx, c: &E, g: usize) -> Surd {
    ev(ctx, c, g).first().cloned().unwrap_or_else(Surd::zero)
}

fn order(ctx: &Ctx) -> usize {
    ctx.action().unwrap()[0].group().order()
}

fn corpus(ctx: &Ctx, u: &Word) -> Vec<E> {
    let mut out = ctx.spanning_set(&[u.clone()]).unwrap();
    let xs = ctx.x_basis(u).unwrap();
    for (i, x) in xs.iter().enumerate() {
        out.push(x.scale(&Surd::from_i64(i as i64 + 2)).add(&out[0]));
    }
    out
}

#[test]
fn algebra_is_functions_on_cosets() {
    let (_, _, ctx) = context("S3", "A3");
    let basis = ctx.spanning_set(&[]).unwrap();
    assert_eq!(basis.len(), 2);
    let unit = ctx.unit().unwrap();
    assert_eq!(ctx.state(&unit).unwrap(), Surd::one());
    for a in &basis {
        assert!(ctx.dot(&unit, a).unwrap().approx_eq(a));
        let s = ctx.star_default(a).unwrap();
        for g in 0..6 {
            assert_eq!(ev_scalar(&ctx, &s, g), ev_scalar(&ctx, a, g).conj());
        }
        let haar = (0..6).fold(Surd::zero(), |acc, g| acc + ev_scalar(&ctx, a, g)) / Surd::from_i64(6);
        assert_eq!(ctx.state(a).unwrap(), haar);
        for b in &basis {
            let p = ctx.dot(a, b).unwrap();
            for g in 0..6 {
                assert_eq!(ev_scalar(&ctx, &p, g), ev_scalar(&ctx, a, g) * ev_scalar(&ctx, b, g));
            }
        }
    }
}

#[test]
fn relations_and_fusion_choice() {
    let (g, res, ctx) = context("S3", "A3");
    let std = g.find("std").unwrap();
    let u = vec![std];
    let v = vec![std, std];
    let k = res.tgt();
    let m = &k.hom_basis(&res.map_obj(&v), &res.map_obj(&u)).unwrap()[0];
    for a in g.hom_basis(&v, &v).unwrap() {
        for i in 0..4 {
            let psi = unit_vector::<Surd>(4, i);
            let lhs = ctx.raw(std::slice::from_ref(&u), &v, &k.compose(m, &res.map_arrow(&a).unwrap()).unwrap(), &psi).unwrap();
            let tpsi = (&a.matrix * &Matrix::col_vec(psi.clone())).into_data();
            let rhs = ctx.raw(std::slice::from_ref(&u), &v, m, &tpsi).unwrap();
            assert!(lhs.approx_eq(&rhs));
        }
    }
    // a second family of fusion isometries, rotated inside the multiplicity spaces
    let fus = g.fusion(&v).unwrap();
    let (c, s) = (Surd::from_ratio(3, 5), Surd::from_ratio(4, 5));
    let mut rotated = fus.clone();
    for i in 0..fus.len() {
        for j in (i + 1)..fus.len() {
            if fus[i].0 == fus[j].0 && fus[i].1.source == fus[j].1.source {
                rotated[i].1 = fus[i].1.scale(&c).add(&fus[j].1.scale(&s));
                rotated[j].1 = fus[j].1.scale(&c).sub(&fus[i].1.scale(&s));
            }
        }
    }
    for i in 0..4 {
        let psi = unit_vector::<Surd>(4, i);
        let a = ctx.raw_with(std::slice::from_ref(&u), m, &psi, &fus).unwrap();
        let b = ctx.raw_with(std::slice::from_ref(&u), m, &psi, &rotated).unwrap();
        assert!(a.approx_eq(&b));
    }
}

#[test]
fn inner_products_agree_and_are_positive() {
    let (g, _, ctx) = context("S3", "A3");
    let (std, sgn) = (g.find("std").unwrap(), g.find("sgn").unwrap());
    for u in [vec![], vec![sgn], vec![std], vec![std, std]] {
        let fam = corpus(&ctx, &u);
        for a in &fam {
            for b in &fam {
                let r1 = ctx.inner_default(a, b).unwrap();
                let r2 = ctx.inner_formula(a, b).unwrap();
                assert!(r1.approx_eq(&r2), "routes differ over {u:?}");
                for gg in 0..6 {
                    let (ea, eb) = (ev(&ctx, a, gg), ev(&ctx, b, gg));
                    let want = ea.iter().zip(&eb).fold(Surd::zero(), |acc, (x, y)| acc + x.conj() * y.clone());
                    assert_eq!(ev_scalar(&ctx, &r2, gg), want);
                }
            }
        }
        let gram = ctx.state_gram(&fam).unwrap();
        assert!(psd_certificate(&gram).unwrap().is_psd());
    }
}

#[test]
fn star_laws() {
    let (g, _, ctx) = context("S3", "A3");
    let std = g.find("std").unwrap();
    let u = vec![std];
    let sol = g.solution(&u).unwrap();
    let fam = corpus(&ctx, &u);
    for a in &fam {
        let s = ctx.star(a, &[sol.clone()]).unwrap();
        let ss = ctx.star(&s, &[conjugate_solution(&sol)]).unwrap();
        assert!(ss.approx_eq(a));
        for b in &fam[..3] {
            let lhs = ctx.star(&ctx.dot(a, b).unwrap(), &[intertwine::category::tensor_solution(&*g, &sol, &sol).unwrap()]);
            let rhs = ctx.dot(&ctx.star(b, &[sol.clone()]).unwrap(), &s).unwrap();
            assert!(lhs.unwrap().approx_eq(&rhs));
        }
    }
}

#[test]
fn pseudoreal_double_star_needs_the_conjugate_solution() {
    let (g, _, ctx) = context("Q8", "Z4");
    let std = g.find("std").unwrap();
    let u = vec![std];
    let sol = g.solution(&u).unwrap();
    assert_eq!(sol.conj, u);
    assert_eq!(sol.rbar, sol.r.scale(&Surd::from_i64(-1)));
    for a in corpus(&ctx, &u) {
        let s = ctx.star(&a, &[sol.clone()]).unwrap();
        let again = ctx.star(&s, &[sol.clone()]).unwrap();
        assert!(again.approx_eq(&a.scale(&Surd::from_i64(-1))));
        let right = ctx.star(&s, &[conjugate_solution(&sol)]).unwrap();
        assert!(right.approx_eq(&a));
    }
}

#[test]
fn swan_is_unitary_for_restriction() {
    let (g, _, ctx) = context("S3", "A3");
    for name in ["sgn", "std"] {
        let u = vec![g.find(name).unwrap()];
        for c in ctx.verify_swan(&u).unwrap() {
            assert!(c.passed(), "{c:?}");
        }
        for c in ctx.verify_swan_isometry(&u, &corpus(&ctx, &u)).unwrap() {
            assert!(c.passed(), "{c:?}");
        }
        let xs = ctx.x_basis(&u).unwrap();
        for (i, a) in xs.iter().enumerate() {
            for (j, b) in xs.iter().enumerate() {
                let ip = ctx.inner_formula(a, b).unwrap();
                let want = if i == j { ctx.unit().unwrap() } else { ctx.zero(&[]) };
                assert!(ip.approx_eq(&want));
            }
        }
    }
}

#[test]
fn left_multiplication_identities() {
    let (g, res, ctx) = context("S3", "A3");
    let std = g.find("std").unwrap();
    let sgn = g.find("sgn").unwrap();
    let z = vec![std];
    let u = vec![sgn];
    let zu = vec![std, sgn];
    let phi = vec![Surd::from_i64(1), Surd::from_i64(-2)];
    let psi = vec![Surd::from_ratio(1, 3), Surd::from_i64(1)];
    let xi = corpus(&ctx, &u)[1].clone();
    let eta = corpus(&ctx, &zu)[2].clone();
    let k = res.tgt();
    let y = k.identity(&res.map_obj(&u));
    let arrow = g.hom_basis(&z, &z).unwrap()[0].clone();
    let cs = ctx
        .verify_left_multiplication(&z, &u, &phi, &psi, &xi, &eta, Some((&u, &y)), Some(&arrow))
        .unwrap();
    assert_eq!(cs.len(), 5);
    for c in cs {
        assert!(c.passed(), "{c:?}");
    }
    let a = g.fusion(&vec![std, std]).unwrap()[0].1.clone();
    let fam = corpus(&ctx, &a.source);
    assert!(ctx.verify_naturality(&a, &fam).unwrap().passed());
}

#[test]
fn quotient_left_action() {
    let (g, res, ctx) = context("S3", "A3");
    let std = g.find("std").unwrap();
    let u = vec![std];
    let reps = ctx.action().unwrap();
    let ustd = &reps[ctx.labels().iter().position(|l| *l == u).unwrap()];
    let k = res.tgt();
    let xs = ctx.x_basis(&u).unwrap();
    for (v, l) in ctx.labels().iter().enumerate() {
        for t in k.hom_basis(&res.map_obj(l), &k.unit()).unwrap() {
            for kk in 0..ctx.label_dim(v) {
                let phi = unit_vector::<Surd>(ctx.label_dim(v), kk);
                let c = ctx.raw(&[], l, &t, &phi).unwrap();
                for i in 0..2 {
                    for j in 0..2 {
                        let lhs = ctx.inner_formula(&xs[i], &ctx.dot(&c, &xs[j]).unwrap()).unwrap();
                        let closed = ctx.left_action_formula(&u, i, j, l, &t, &phi).unwrap();
                        assert!(lhs.approx_eq(&closed));
                        for gg in 0..order(&ctx) {
                            let m = ustd.matrix(gg);
                            let want = (0..2).fold(Surd::zero(), |acc, r| {
                                acc + m.get(r, i).conj() * ev_scalar(&ctx, &c, gg) * m.get(r, j).clone()
                            });
                            assert_eq!(ev_scalar(&ctx, &lhs, gg), want);
                        }
                    }
                }
            }
        }
    }
}

/// `dim Hom_K(u|, v|)` from the characters of the builtin matrices.
fn restricted_hom_dim(pair: &intertwine::builtin::GroupPair, u: &[&str], v: &[&str]) -> usize {
    let chi = |names: &[&str], g: usize| {
        names.iter().fold(Surd::one(), |acc, n| acc * pair.g.irrep(n).unwrap().matrix(g).trace())
    };
    let emb = &pair.sub.embedding;
    let s = emb.iter().fold(Surd::zero(), |acc, &g| acc + chi(u, g).conj() * chi(v, g));
    let s = s / Surd::from_i64(emb.len() as i64);
    s.as_rational().unwrap().to_integer().try_into().unwrap()
}

#[test]
fn ind_is_full_on_short_sequences() {
    let (g, _, ctx) = context("S3", "A3");
    let pair = builtin_pair("S3", "A3").unwrap();
    let word = |ns: &[&str]| -> Word { ns.iter().filter(|n| **n != "triv").map(|n| g.find(n).unwrap()).collect() };
    let seqs: Vec<Vec<&str>> = vec![vec![], vec!["std"], vec!["sgn"], vec!["std", "sgn"], vec!["std", "std"]];
    for su in &seqs {
        for sv in &seqs {
            let u: Vec<Word> = su.iter().map(|n| word(&[n])).collect();
            let v: Vec<Word> = sv.iter().map(|n| word(&[n])).collect();
            let h = ctx.ind_hom(&u, &v).unwrap();
            let oracle = restricted_hom_dim(&pair, su, sv);
            assert_eq!((h.direct, h.fixed), (oracle, oracle), "{su:?} -> {sv:?}");
            assert!(h.round_trip);
        }
    }
}

#[test]
fn module_maps_and_frobenius() {
    let (g, _, ctx) = context("S3", "A3");
    let std = g.find("std").unwrap();
    let sgn = g.find("sgn").unwrap();
    let alg = ctx.spanning_set(&[]).unwrap();
    let u = vec![vec![std]];
    let v = vec![vec![std], vec![sgn]];
    for c in ctx.verify_module_intertwiners(&u, &v, &alg).unwrap() {
        assert!(c.passed(), "{c:?}");
    }
    assert!(ctx.verify_fixed_central(&[vec![std], vec![std]], &alg).unwrap().passed());
    for lab in 0..ctx.labels().len() {
        let (a, b, c) = ctx.frobenius(lab, &[vec![std]]).unwrap();
        assert_eq!((a, a), (b, c));
    }
}

#[test]
fn products_are_isometric_and_onto() {
    let (g, res, ctx) = context("S3", "A3");
    let std = g.find("std").unwrap();
    let sgn = g.find("sgn").unwrap();
    let xis = corpus(&ctx, &vec![std]);
    let etas = corpus(&ctx, &vec![sgn]);
    for c in ctx.verify_products(&xis[..3], &etas[..2]).unwrap() {
        assert!(c.passed(), "{c:?}");
    }
    let k = res.tgt();
    let rest = vec![vec![std]];
    let tgt = k.tensor_obj(&res.map_obj(&vec![std]), &res.map_obj(&vec![std]));
    for (v, l) in ctx.labels().iter().enumerate() {
        for mm in k.hom_basis(&res.map_obj(l), &tgt).unwrap() {
            let psi = unit_vector::<Surd>(ctx.label_dim(v), 0);
            assert_eq!(ctx.product_decomposition(&vec![std], &rest, l, &mm, &psi).unwrap(), 0.0);
        }
    }
    assert!(ctx.verify_sequence_solution(&[vec![std], vec![sgn]]).unwrap().passed());
}

#[test]
fn spectral_functor_kills_non_spectral_irreps() {
    let p = builtin_pair("S3", "A3").unwrap();
    let cat = Arc::new(RepCat::with_irreps(p.g.group.clone(), &p.g.irreps).unwrap());
    let res = Arc::new(Restriction::new(cat.clone(), p.sub.clone(), &p.k.irreps).unwrap());
    let inv = Arc::new(Invariants::new(res.target_arc().clone()));
    let spec = Arc::new(Composite::new(inv, res));
    let ctx = group_context(cat.clone(), spec).unwrap();
    let std = cat.find("std").unwrap();
    assert!(ctx.spanning_set(&[vec![std]]).unwrap().is_empty());
    assert_eq!(ctx.spanning_set(&[]).unwrap().len(), 2);
    let sgn = cat.find("sgn").unwrap();
    for c in ctx.verify_swan(&vec![sgn]).unwrap() {
        assert!(c.passed(), "{c:?}");
    }
}
