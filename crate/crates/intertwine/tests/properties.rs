use intertwine::builtin::{builtin_group, builtin_pair};
use intertwine::config::{parse_scalar, RunConfig};
use intertwine::ergodic::{eigenmatrix, ErgodicAction};
use intertwine::matrix::Matrix;
use intertwine::rep::{intertwiners, Rep};
use intertwine::su2;
use intertwine::{Scalar, Surd};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn surd() -> impl Strategy<Value = Surd> {
    (-6i64..=6, 1i64..=4, -3i64..=3, -2i64..=2, prop::sample::select(vec![2u64, 3, 5])).prop_map(|(p, q, a, b, r)| {
        Surd::from_ratio(p, q) + Surd::from_i64(a) * Surd::sqrt_int(r) + Surd::i() * Surd::from_i64(b)
    })
}

fn matrix(n: usize) -> impl Strategy<Value = Matrix<Surd>> {
    prop::collection::vec(surd(), n * n).prop_map(move |xs| Matrix::from_rows(xs.chunks(n).map(|c| c.to_vec()).collect()))
}

/// Direct sum with the given multiplicities (empty multiplicities give `None`).
fn sum_of(irreps: &[(String, Rep<Surd>)], mults: &[usize]) -> Option<Rep<Surd>> {
    let mut out: Option<Rep<Surd>> = None;
    for ((_, r), &m) in irreps.iter().zip(mults) {
        for _ in 0..m {
            out = Some(match out {
                None => r.clone(),
                Some(x) => x.direct_sum(r),
            });
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn surd_field_laws(a in surd(), b in surd(), c in surd()) {
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!((a.clone() * b.clone()).conj(), a.conj() * b.conj());
        if !a.is_zero() {
            prop_assert_eq!(a.clone() * a.inverse().unwrap(), Surd::one());
        }
    }

    #[test]
    fn matrix_adjoint_and_kron(a in matrix(2), b in matrix(2), c in matrix(2), d in matrix(2)) {
        prop_assert_eq!((&a * &b).adjoint(), &b.adjoint() * &a.adjoint());
        prop_assert_eq!(&a.kron(&b) * &c.kron(&d), (&a * &c).kron(&(&b * &d)));
    }

    #[test]
    fn rational_strings_round_trip(p in -1000i64..1000, q in 1i64..1000, im in -50i64..50) {
        let v = serde_json::json!([format!("{p}/{q}"), im]);
        let want = Surd::from_ratio(p, q) + Surd::i() * Surd::from_i64(im);
        prop_assert_eq!(parse_scalar(&v, "x").unwrap(), want);
    }

    #[test]
    fn su2_fusion(a in 0u32..12, b in 0u32..12, c in 0u32..8) {
        let ab = su2::fuse(a, b).unwrap();
        prop_assert_eq!(su2::dim(&ab), (a as usize + 1) * (b as usize + 1));
        prop_assert_eq!(&ab, &su2::fuse(b, a).unwrap());
        let left = su2::tensor(&ab, &su2::irrep(c)).unwrap();
        let right = su2::tensor(&su2::irrep(a), &su2::fuse(b, c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn frobenius_on_random_sums(
        which in prop::sample::select(vec![("S3", "A3"), ("S3", "Z2"), ("D4", "V4"), ("Q8", "Z4")]),
        gm in prop::collection::vec(0usize..=2, 5),
        km in prop::collection::vec(0usize..=1, 4),
    ) {
        let p = builtin_pair(which.0, which.1).unwrap();
        let (Some(u), Some(w)) = (sum_of(&p.g.irreps, &gm), sum_of(&p.k.irreps, &km)) else { return Ok(()) };
        let ind = w.induce(&p.sub);
        prop_assert_eq!(ind.dim(), w.dim() * p.sub.index());
        prop_assert_eq!(intertwiners(&u.restrict(&p.sub), &w).len(), intertwiners(&u, &ind).len());
    }

    #[test]
    fn adjoint_multiplicities(which in prop::sample::select(vec![("S3", "std"), ("D4", "std"), ("Q8", "std"), ("S4", "std3"), ("S4", "std2")])) {
        // Ad of an irreducible is ergodic; sum dim(v) mult(v) = n^2 and mult(v) <= dim(v)
        let g = builtin_group(which.0).unwrap();
        let r = g.irrep(which.1).unwrap();
        let act = ErgodicAction::adjoint(r).unwrap();
        prop_assert_eq!(act.fixed_algebra_dim(), 1);
        let mut total = 0;
        for (_, v) in &g.irreps {
            let em = eigenmatrix(v, &act).unwrap();
            prop_assert!(em.mult <= v.dim());
            prop_assert_eq!(em.trace_weight(), Surd::from_i64(em.mult as i64));
            total += em.mult * v.dim();
        }
        prop_assert_eq!(total, r.dim() * r.dim());
    }

    #[test]
    fn evaluation_round_trip(coeffs in prop::collection::vec((-3i64..=3, -2i64..=2), 1..6), a in 0usize..5, b in 0usize..5) {
        let path = std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../intertwine-cli/configs/d4_v4_weyl.json");
        let set = RunConfig::from_path(&path).unwrap().resolve::<Surd>().unwrap();
        let d = &set.induced[0];
        let (v, vp) = (&d.g_irreps[a % d.g_irreps.len()].1, &d.g_irreps[b % d.g_irreps.len()].1);
        let ts = d.system.module_intertwiners(v, vp);
        if ts.is_empty() {
            return Ok(());
        }
        let (rows, cols) = ts[0].at(0).shape();
        let mut at1 = Matrix::<Surd>::zeros(rows, cols);
        let cs: Vec<Surd> = ts.iter().zip(coeffs.iter().cycle()).map(|(_, (x, y))| Surd::from_i64(*x) + Surd::i() * Surd::from_i64(*y)).collect();
        for (t, c) in ts.iter().zip(&cs) {
            at1 = &at1 + &t.at(0).scale(c);
        }
        let lifted = d.system.lift(&at1, v, vp).unwrap();
        prop_assert!(d.system.is_intertwiner(&lifted, v, vp));
        prop_assert_eq!(lifted.at(0), &at1);
        for g in 0..v.group().order() {
            let mut want = Matrix::<Surd>::zeros(rows, cols);
            for (t, c) in ts.iter().zip(&cs) {
                want = &want + &t.at(g).scale(c);
            }
            prop_assert_eq!(lifted.at(g), &want);
        }
    }
}
