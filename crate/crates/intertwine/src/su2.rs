//! Representations of SU(2) by highest weight only: `v_j` has dimension `j + 1`
//! and tensor products follow the Clebsch-Gordan rule.  Enough to analyse the
//! adjoint actions `beta_r` on `M_{r+1}` through hom-space dimensions.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest label any computation may produce.
pub const MAX_LABEL: u32 = 256;

/// A finite direct sum `sum m_j v_j`.
pub type Multiset = BTreeMap<u32, usize>;

pub fn irrep(j: u32) -> Multiset {
    BTreeMap::from([(j, 1)])
}

pub fn dim(m: &Multiset) -> usize {
    m.iter().map(|(j, k)| (*j as usize + 1) * k).sum()
}

/// `v_a (x) v_b = v_|a-b| + v_|a-b|+2 + ... + v_a+b`.
pub fn fuse(a: u32, b: u32) -> Result<Multiset> {
    if a + b > MAX_LABEL {
        return Err(Error::TruncationExceeded(MAX_LABEL as usize));
    }
    let mut out = Multiset::new();
    let mut j = a.abs_diff(b);
    while j <= a + b {
        *out.entry(j).or_default() += 1;
        j += 2;
    }
    Ok(out)
}

pub fn tensor(x: &Multiset, y: &Multiset) -> Result<Multiset> {
    let mut out = Multiset::new();
    for (&a, &m) in x {
        for (&b, &n) in y {
            for (j, k) in fuse(a, b)? {
                *out.entry(j).or_default() += m * n * k;
            }
        }
    }
    Ok(out)
}

pub fn hom_dim(x: &Multiset, y: &Multiset) -> usize {
    x.iter().map(|(j, m)| m * y.get(j).copied().unwrap_or(0)).sum()
}

/// `beta_r` as a representation on `M_{r+1}` with its trace inner product: `v_r (x) v_r`.
pub fn adjoint_spectrum(r: u32) -> Result<Multiset> {
    fuse(r, r)
}

/// `dim (z (x) beta, v (x) beta) = dim (v (x) z^-, beta)`, every `v_j` being self-conjugate.
pub fn module_hom_dim(z: &Multiset, v: &Multiset, r: u32) -> Result<usize> {
    Ok(hom_dim(&tensor(v, z)?, &adjoint_spectrum(r)?))
}

pub fn multiplicity(j: u32, r: u32) -> Result<usize> {
    Ok(adjoint_spectrum(r)?.get(&j).copied().unwrap_or(0))
}

/// Multisets of total dimension exactly `d`, built from labels up to `d - 1`.
fn multisets_of_dim(d: usize) -> Vec<Multiset> {
    fn go(d: usize, max_label: u32, cur: &mut Vec<u32>, out: &mut Vec<Multiset>) {
        if d == 0 {
            let mut m = Multiset::new();
            for &j in cur.iter() {
                *m.entry(j).or_default() += 1;
            }
            out.push(m);
            return;
        }
        for j in (0..=max_label).rev() {
            let dj = j as usize + 1;
            if dj <= d {
                cur.push(j);
                go(d - dj, j, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if d > 0 {
        go(d, (d - 1) as u32, &mut Vec::new(), &mut out);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateReport {
    pub z: Vec<u32>,
    /// Contains an irreducible of full multiplicity, which the isometry would have to kill.
    pub excluded: bool,
    pub hom_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VReport {
    pub label: u32,
    pub dim: usize,
    pub mult: usize,
    pub deficit: usize,
    pub candidates: Vec<CandidateReport>,
    pub admits_full_structure: bool,
    /// Real dimension of structures modulo equivalence, when they exist.
    pub moduli_dim: Option<usize>,
    pub verdict: String,
    pub certificate: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Su2Report {
    pub r: u32,
    pub spectrum: Vec<(u32, usize)>,
    /// `dim (v_1 (x) beta_r, v_1 (x) beta_r)`.
    pub self_hom_v1: usize,
    /// `dim (v_1 (x) beta_r, v_2 (x) beta_r)`.
    pub hom_v1_v2: usize,
    pub analyses: Vec<VReport>,
}

/// Full bimodule structures on `v_j (x) beta_r` through pairs `(z, W)` with `dim z = dim v - mult v`.
///
/// Only a `z` built of one irreducible with all commutant blocks of size one is
/// parametrised; the moduli of other cases are left as `None`.
pub fn analyse(j: u32, r: u32) -> Result<VReport> {
    let spectrum = adjoint_spectrum(r)?;
    let v = irrep(j);
    let d = j as usize + 1;
    let mult = spectrum.get(&j).copied().unwrap_or(0);
    let deficit = d - mult;
    let full_mult: Vec<u32> = spectrum.iter().filter(|(l, m)| **m == **l as usize + 1).map(|(l, _)| *l).collect();
    let mut candidates = Vec::new();
    for z in multisets_of_dim(deficit) {
        let excluded = z.keys().any(|l| full_mult.contains(l));
        let hom = module_hom_dim(&z, &v, r)?;
        candidates.push(CandidateReport { z: z.iter().flat_map(|(l, m)| std::iter::repeat(*l).take(*m)).collect(), excluded, hom_dim: hom });
    }
    let live: Vec<&CandidateReport> = candidates.iter().filter(|c| !c.excluded).collect();
    let (admits, moduli, verdict, certificate) = if deficit == 0 {
        (true, Some(0), "full multiplicity: unique full structure".to_string(), None)
    } else if live.iter().all(|c| c.hom_dim == 0) {
        let cert = live
            .iter()
            .map(|c| format!("dim (v{:?} (x) beta_{r}, v{j} (x) beta_{r}) = 0", c.z))
            .collect::<Vec<_>>()
            .join("; ");
        (false, None, "no full bimodule structure".to_string(), Some(cert))
    } else {
        // z = v_j with mult 0: W is a unitary of the commutative algebra (v_j x v_r, v_j x v_r),
        // of dimension hom_dim, modulo the circle of (z, z)
        let single = live.iter().find(|c| c.z.len() == 1 && c.hom_dim > 0);
        let commutative = mult == 0 && single.is_some_and(|c| c.z == vec![j]);
        let moduli = if commutative { single.map(|c| c.hom_dim - 1) } else { None };
        (true, moduli, "full bimodule structures exist".to_string(), None)
    };
    Ok(VReport { label: j, dim: d, mult, deficit, candidates, admits_full_structure: admits, moduli_dim: moduli, verdict, certificate })
}

pub fn su2_adjoint_report(r: u32) -> Result<Su2Report> {
    if r == 0 {
        return Err(Error::Unsupported("the adjoint action needs r >= 1".into()));
    }
    let spectrum = adjoint_spectrum(r)?;
    Ok(Su2Report {
        r,
        spectrum: spectrum.iter().map(|(j, m)| (*j, *m)).collect(),
        self_hom_v1: module_hom_dim(&irrep(1), &irrep(1), r)?,
        hom_v1_v2: module_hom_dim(&irrep(1), &irrep(2), r)?,
        analyses: vec![analyse(1, r)?, analyse(2, r)?],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clebsch_gordan() {
        assert_eq!(fuse(1, 1).unwrap(), BTreeMap::from([(0, 1), (2, 1)]));
        assert_eq!(fuse(3, 1).unwrap(), BTreeMap::from([(2, 1), (4, 1)]));
        assert_eq!(dim(&fuse(4, 3).unwrap()), 20);
        assert_eq!(fuse(200, 100), Err(Error::TruncationExceeded(256)));
    }

    #[test]
    fn partitions() {
        let m = multisets_of_dim(3);
        assert_eq!(m.len(), 3);
        assert!(m.iter().all(|x| dim(x) == 3));
    }

    #[test]
    fn r_one_report() {
        let rep = su2_adjoint_report(1).unwrap();
        assert_eq!(rep.spectrum, vec![(0, 1), (2, 1)]);
        assert_eq!((rep.self_hom_v1, rep.hom_v1_v2), (2, 0));
        let v1 = &rep.analyses[0];
        assert!(v1.admits_full_structure);
        assert_eq!(v1.moduli_dim, Some(1));
        let v2 = &rep.analyses[1];
        assert!(!v2.admits_full_structure && v2.certificate.is_some());
    }
}
