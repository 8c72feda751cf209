//! Small groups with exact irreducible representations, and subgroup pairs.
//!
//! Every realisation is chosen so that matrix entries lie in `Q(i, omega)`,
//! which keeps norms rational in exact runs.  `S4` is the rotation group of
//! the cube, so its three-dimensional irreps are signed permutation matrices.

use std::collections::HashMap;
use std::sync::Arc;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::group::{cyclic, int_from_real, matrix_group, monomial_permutation, permutation_sign, FiniteGroup, IntMatrix, Subgroup};
use crate::matrix::Matrix;
use crate::rep::{linear_characters, Rep};
use crate::scalar::Scalar;
use crate::surd::Surd;

#[derive(Clone, Debug)]
pub struct GroupData {
    pub group: Arc<FiniteGroup>,
    /// Named irreducible representations, trivial first.
    pub irreps: Vec<(String, Rep<Surd>)>,
}

impl GroupData {
    pub fn irrep(&self, name: &str) -> Option<&Rep<Surd>> {
        self.irreps.iter().find(|(n, _)| n == name).map(|(_, r)| r)
    }
}

#[derive(Clone, Debug)]
pub struct GroupPair {
    pub g: GroupData,
    pub k: GroupData,
    pub sub: Subgroup,
}

pub const GROUPS: &[&str] = &["Z2", "Z3", "Z4", "Z6", "V4", "S3", "S4", "A4", "D4", "Q8"];

pub const PAIRS: &[(&str, &str)] = &[
    ("S3", "A3"),
    ("S3", "Z2"),
    ("S4", "A4"),
    ("D4", "V4"),
    ("D4", "Z4"),
    ("Q8", "Z4"),
];

fn to_surd(m: &IntMatrix, n: usize) -> Matrix<Surd> {
    Matrix::from_vec(
        n,
        n,
        m.iter()
            .map(|z| Surd::from_i64(z.re) + Surd::i() * Surd::from_i64(z.im))
            .collect(),
    )
}

fn defining(group: &Arc<FiniteGroup>, elems: &[IntMatrix], n: usize) -> Result<Rep<Surd>> {
    Rep::new(group.clone(), elems.iter().map(|m| to_surd(m, n)).collect())
}

fn named_linear(group: &Arc<FiniteGroup>, names: &[&str]) -> Result<Vec<(String, Rep<Surd>)>> {
    let chars = linear_characters(group)?;
    Ok(chars
        .into_iter()
        .enumerate()
        .map(|(k, r)| {
            let name = names.get(k).map(|s| s.to_string()).unwrap_or_else(|| if k == 0 { "triv".into() } else { format!("chi{k}") });
            (name, r)
        })
        .collect())
}

fn s3_data() -> Result<(GroupData, Vec<IntMatrix>)> {
    let r = int_from_real(&[0, 0, 1, 1, 0, 0, 0, 1, 0]);
    let s = int_from_real(&[0, 1, 0, 1, 0, 0, 0, 0, 1]);
    let (g, elems) = matrix_group("S3", 3, &[r, s], &["r", "s"])?;
    let g = Arc::new(g);
    let sgn = Rep::new(
        g.clone(),
        elems
            .iter()
            .map(|m| Matrix::scalar(Surd::from_i64(permutation_sign(&monomial_permutation(3, m)))))
            .collect(),
    )?;
    let w = Surd::omega();
    let std = Rep::from_generators(
        g.clone(),
        vec![Matrix::diag(&[w.clone(), w.clone() * w]), Matrix::from_i64(2, 2, &[0, 1, 1, 0])],
    )?;
    let data = GroupData {
        irreps: vec![("triv".into(), Rep::trivial(g.clone())), ("sgn".into(), sgn), ("std".into(), std)],
        group: g,
    };
    Ok((data, elems))
}

fn s4_data() -> Result<(GroupData, Vec<IntMatrix>)> {
    let a = int_from_real(&[0, -1, 0, 1, 0, 0, 0, 0, 1]);
    let b = int_from_real(&[0, 0, 1, 1, 0, 0, 0, 1, 0]);
    let (g, elems) = matrix_group("S4", 3, &[a, b], &["a", "b"])?;
    let g = Arc::new(g);
    let (s3, s3_elems) = s3_data()?;
    let index: HashMap<&IntMatrix, usize> = s3_elems.iter().enumerate().map(|(i, m)| (m, i)).collect();
    // the permutation of the coordinate axes is a surjection onto S3 with kernel V4
    let to_s3: Vec<usize> = elems
        .iter()
        .map(|m| {
            let abs: IntMatrix = m.iter().map(|z| Complex::new(z.re.abs(), 0)).collect();
            index[&abs]
        })
        .collect();
    let sgn = s3.irrep("sgn").expect("S3 sign").pullback(g.clone(), &to_s3)?;
    let std2 = s3.irrep("std").expect("S3 std").pullback(g.clone(), &to_s3)?;
    let std3 = defining(&g, &elems, 3)?;
    let std3s = sgn.tensor(&std3);
    let data = GroupData {
        irreps: vec![
            ("triv".into(), Rep::trivial(g.clone())),
            ("sgn".into(), sgn),
            ("std2".into(), std2),
            ("std3".into(), std3),
            ("std3s".into(), std3s),
        ],
        group: g,
    };
    Ok((data, elems))
}

fn d4_data() -> Result<(GroupData, Vec<IntMatrix>)> {
    let r = int_from_real(&[0, -1, 1, 0]);
    let s = int_from_real(&[1, 0, 0, -1]);
    let (g, elems) = matrix_group("D4", 2, &[r, s], &["r", "s"])?;
    let g = Arc::new(g);
    let mut irreps = named_linear(&g, &["triv"])?;
    irreps.push(("std".into(), defining(&g, &elems, 2)?));
    Ok((GroupData { group: g, irreps }, elems))
}

fn q8_data() -> Result<(GroupData, Vec<IntMatrix>)> {
    let c = |re: i64, im: i64| Complex::new(re, im);
    let i = vec![c(0, 1), c(0, 0), c(0, 0), c(0, -1)];
    let j = vec![c(0, 0), c(1, 0), c(-1, 0), c(0, 0)];
    let (g, elems) = matrix_group("Q8", 2, &[i, j], &["i", "j"])?;
    let g = Arc::new(g);
    let mut irreps = named_linear(&g, &["triv"])?;
    irreps.push(("std".into(), defining(&g, &elems, 2)?));
    Ok((GroupData { group: g, irreps }, elems))
}

fn klein_data() -> Result<GroupData> {
    let a = int_from_real(&[-1, 0, 0, 1]);
    let b = int_from_real(&[1, 0, 0, -1]);
    let (g, _) = matrix_group("V4", 2, &[a, b], &["a", "b"])?;
    let g = Arc::new(g);
    let irreps = named_linear(&g, &["triv"])?;
    Ok(GroupData { group: g, irreps })
}

fn abelian_data(group: Arc<FiniteGroup>) -> Result<GroupData> {
    let irreps = named_linear(&group, &["triv"])?;
    Ok(GroupData { group, irreps })
}

pub fn builtin_group(name: &str) -> Result<GroupData> {
    match name {
        "S3" => Ok(s3_data()?.0),
        "S4" => Ok(s4_data()?.0),
        "A4" => Ok(builtin_pair("S4", "A4")?.k),
        "D4" => Ok(d4_data()?.0),
        "Q8" => Ok(q8_data()?.0),
        "V4" | "Klein" => klein_data(),
        _ => {
            if let Some(n) = name.strip_prefix('Z').and_then(|s| s.parse::<usize>().ok()) {
                abelian_data(Arc::new(cyclic(n)?.0))
            } else {
                Err(Error::InvalidGroup(format!("unknown group {name}")))
            }
        }
    }
}

fn abelian_sub(g: GroupData, name: &str, elements: &[usize]) -> Result<GroupPair> {
    let sub = g.group.subgroup(name, elements)?;
    let k = abelian_data(sub.group.clone())?;
    Ok(GroupPair { g, k, sub })
}

fn find_elem(elems: &[IntMatrix], m: &IntMatrix) -> usize {
    elems.iter().position(|e| e == m).expect("element of the group")
}

/// A builtin group with a builtin subgroup.  `K = 1` and `K = G` work for any builtin `G`.
pub fn builtin_pair(g_name: &str, k_name: &str) -> Result<GroupPair> {
    match (g_name, k_name) {
        ("S3", "A3") => {
            let (g, _) = s3_data()?;
            let r = g.group.generators()[0];
            let els = g.group.generated(&[r]);
            abelian_sub(g, "A3", &els)
        }
        ("S3", "Z2") => {
            let (g, _) = s3_data()?;
            let s = g.group.generators()[1];
            let els = g.group.generated(&[s]);
            abelian_sub(g, "Z2", &els)
        }
        ("S4", "A4") => {
            let (g, _) = s4_data()?;
            let sgn = g.irrep("sgn").expect("sign").clone();
            let even: Vec<usize> = (0..g.group.order())
                .filter(|&x| *sgn.matrix(x).get(0, 0) == Surd::from_i64(1))
                .collect();
            let sub = g.group.subgroup("A4", &even)?;
            let kg = sub.group.clone();
            let std2 = g.irrep("std2").expect("std2").restrict(&sub);
            // on A4 the two-dimensional irrep of S4 is diagonal: a sum of the omega characters
            let entry = |i: usize| -> Result<Rep<Surd>> {
                Rep::new(kg.clone(), std2.matrices().iter().map(|m| Matrix::scalar(m.get(i, i).clone())).collect())
            };
            let k = GroupData {
                irreps: vec![
                    ("triv".into(), Rep::trivial(kg.clone())),
                    ("omega".into(), entry(0)?),
                    ("omegabar".into(), entry(1)?),
                    ("std3".into(), g.irrep("std3").expect("std3").restrict(&sub)),
                ],
                group: kg,
            };
            Ok(GroupPair { g, k, sub })
        }
        ("D4", "V4") => {
            let (g, elems) = d4_data()?;
            let r2 = find_elem(&elems, &int_from_real(&[-1, 0, 0, -1]));
            let s = find_elem(&elems, &int_from_real(&[1, 0, 0, -1]));
            let els = g.group.generated(&[r2, s]);
            abelian_sub(g, "V4", &els)
        }
        ("D4", "Z4") => {
            let (g, _) = d4_data()?;
            let r = g.group.generators()[0];
            let els = g.group.generated(&[r]);
            abelian_sub(g, "Z4", &els)
        }
        ("Q8", "Z4") => {
            let (g, _) = q8_data()?;
            let i = g.group.generators()[0];
            let els = g.group.generated(&[i]);
            abelian_sub(g, "Z4", &els)
        }
        (gn, "1") => {
            let g = builtin_group(gn)?;
            let sub = g.group.trivial_subgroup();
            let k = GroupData { irreps: vec![("triv".into(), Rep::trivial(sub.group.clone()))], group: sub.group.clone() };
            Ok(GroupPair { g, k, sub })
        }
        (gn, kn) if gn == kn => {
            let g = builtin_group(gn)?;
            let all: Vec<usize> = (0..g.group.order()).collect();
            let sub = g.group.subgroup(kn, &all)?;
            let irreps = g.irreps.iter().map(|(n, r)| (n.clone(), r.restrict(&sub))).collect();
            let k = GroupData { irreps, group: sub.group.clone() };
            Ok(GroupPair { g, k, sub })
        }
        _ => Err(Error::NotASubgroup(format!("no builtin embedding of {k_name} in {g_name}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{character_inner, is_irreducible};

    fn complete(d: &GroupData) {
        let n = d.group.order();
        let total: usize = d.irreps.iter().map(|(_, r)| r.dim() * r.dim()).sum();
        assert_eq!(total, n, "{}", d.group.name());
        for (i, (_, a)) in d.irreps.iter().enumerate() {
            assert!(is_irreducible(a));
            for (j, (_, b)) in d.irreps.iter().enumerate() {
                let c = character_inner(&a.character(), &b.character());
                assert_eq!(c, Surd::from_i64((i == j) as i64));
            }
        }
        assert!(d.irreps[0].1.dim() == 1 && d.irreps[0].1.matrices().iter().all(|m| m.get(0, 0) == &Surd::from_i64(1)));
    }

    #[test]
    fn builtin_irreps_are_complete() {
        for name in GROUPS {
            complete(&builtin_group(name).unwrap());
        }
    }

    #[test]
    fn pairs_are_complete() {
        for (g, k) in PAIRS {
            let p = builtin_pair(g, k).unwrap();
            complete(&p.k);
            assert_eq!(p.sub.group.order() * p.sub.index(), p.g.group.order());
        }
        assert_eq!(builtin_pair("S3", "1").unwrap().sub.index(), 6);
        assert!(builtin_pair("S3", "Q8").is_err());
    }

    #[test]
    fn orders() {
        let o = |n: &str| builtin_group(n).unwrap().group.order();
        assert_eq!((o("S3"), o("S4"), o("A4"), o("D4"), o("Q8"), o("V4")), (6, 24, 12, 8, 8, 4));
    }
}
