//! Intermediate full bimodules `X_v <= Y <= H_v (x) F` as pairs `(z, W)`.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{eigenmatrix, fixed_space, ErgodicAction, Eigenmatrix};
use crate::error::{Error, Result};
use crate::linalg::{inverse_sqrt_pd, kernel, rank};
use crate::matrix::Matrix;
use crate::rep::Rep;
use crate::scalar::Scalar;

const TRIALS: usize = 6;

/// One class of pairs: a representative and the class invariants.
#[derive(Clone, Debug)]
pub struct PairClass<S> {
    /// Exact isometry when the normalisation stays in the field.
    pub w: Option<Matrix<S>>,
    pub w_float: Matrix<Complex<f64>>,
    /// `W W^*`, which depends only on the class.
    pub projection: Matrix<Complex<f64>>,
    /// Real dimension of the isometries in the constrained space, near `W`.
    pub solution_dim: usize,
    /// Real dimension of the unitary group of `(z, z)`.
    pub gauge_dim: usize,
}

impl<S> PairClass<S> {
    /// Real dimension of the set of classes near this one.
    pub fn moduli_dim(&self) -> usize {
        self.solution_dim.saturating_sub(self.gauge_dim)
    }
}

#[derive(Clone, Debug)]
pub struct Candidate<S> {
    /// Indices into the irreducible list, nondecreasing.
    pub labels: Vec<usize>,
    pub z: Rep<S>,
    /// `dim (z (x) beta, v (x) beta)`.
    pub hom_dim: usize,
    /// Dimension after imposing `W^* Z_v = 0`.
    pub constrained_dim: usize,
    pub class: Option<PairClass<S>>,
    /// For irreducible `z` of full multiplicity: `W Z_z` lands in `X_v` for every `W`.
    pub spectral_columns: Option<bool>,
    pub partial: bool,
    pub note: String,
}

#[derive(Clone, Debug)]
pub struct Classification<S> {
    pub dim: usize,
    pub mult: usize,
    pub eigen: Eigenmatrix<S>,
    pub candidates: Vec<Candidate<S>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateSummary {
    pub z: Vec<String>,
    pub hom_dim: usize,
    pub constrained_dim: usize,
    pub exists: bool,
    pub full: bool,
    pub moduli_dim: Option<usize>,
    pub partial: bool,
    pub note: String,
}

impl<S: Scalar> Classification<S> {
    pub fn deficit(&self) -> usize {
        self.dim - self.mult
    }

    pub fn exhaustive(&self) -> bool {
        self.candidates.iter().all(|c| !c.partial)
    }

    pub fn require_exhaustive(&self) -> Result<()> {
        match self.candidates.iter().find(|c| c.partial) {
            Some(c) => Err(Error::SearchBoundExceeded(format!("candidate {:?}: {}", c.labels, c.note))),
            None => Ok(()),
        }
    }

    /// Candidates with `dim z = dim v - mult v` that admit an isometry.
    pub fn full_structures(&self) -> impl Iterator<Item = &Candidate<S>> {
        let d = self.deficit();
        self.candidates.iter().filter(move |c| c.z.dim() == d && c.class.is_some())
    }

    /// `v (x) beta` has a full structure: either mult = dim, or some candidate works.
    pub fn admits_full_structure(&self) -> bool {
        self.deficit() == 0 || self.full_structures().next().is_some()
    }

    /// No proper extension of `X_v` exists among the searched candidates.
    pub fn no_proper_extension(&self) -> bool {
        self.candidates.iter().all(|c| c.class.is_none())
    }

    pub fn summary(&self, names: &[String]) -> Vec<CandidateSummary> {
        let d = self.deficit();
        self.candidates
            .iter()
            .map(|c| CandidateSummary {
                z: c.labels.iter().map(|&i| names.get(i).cloned().unwrap_or_else(|| i.to_string())).collect(),
                hom_dim: c.hom_dim,
                constrained_dim: c.constrained_dim,
                exists: c.class.is_some(),
                full: c.z.dim() == d,
                moduli_dim: c.class.as_ref().map(|k| k.moduli_dim()),
                partial: c.partial,
                note: c.note.clone(),
            })
            .collect()
    }
}

/// Multisets of irreducibles with total dimension in `1..=max`.
fn multisets(dims: &[usize], max: usize) -> Vec<Vec<usize>> {
    fn go(dims: &[usize], start: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for i in start..dims.len() {
            if dims[i] <= left {
                cur.push(i);
                out.push(cur.clone());
                go(dims, i, left - dims[i], cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(dims, 0, max, &mut Vec::new(), &mut out);
    out
}

fn direct_sum<S: Scalar>(reps: &[&Rep<S>]) -> Rep<S> {
    let mut acc = reps[0].clone();
    for r in &reps[1..] {
        acc = acc.direct_sum(r);
    }
    acc
}

/// Basis of `(z (x) beta, v (x) beta)` as `(dim v * n) x (dim z * n)` matrices.
pub fn module_intertwiners<S: Scalar>(z: &Rep<S>, v: &Rep<S>, act: &ErgodicAction<S>) -> Vec<Matrix<S>> {
    let n = act.n();
    let (rows, cols) = (v.dim() * n, z.dim() * n);
    // (v x pi) W (z x pi)^* = W, row-major vec
    fixed_space(rows * cols, act.group().generators(), |g| {
        v.matrix(g).kron(act.unitary(g)).kron(&z.matrix(g).kron(act.unitary(g)).conj())
    })
    .into_iter()
    .map(|x| Matrix::from_vec(rows, cols, x))
    .collect()
}

fn combine<S: Scalar>(basis: &[Matrix<S>], coeffs: &[S]) -> Matrix<S> {
    let mut acc = Matrix::zeros(basis[0].rows(), basis[0].cols());
    for (b, c) in basis.iter().zip(coeffs) {
        acc = &acc + &b.scale(c);
    }
    acc
}

fn random_coeffs<S: Scalar>(rng: &mut ChaCha8Rng, p: usize) -> Vec<S> {
    (0..p)
        .map(|_| S::from_i64(rng.gen_range(-3..=3)) + S::i() * S::from_i64(rng.gen_range(-3..=3)))
        .collect()
}

/// Real dimension of `{X in span : W^* X + X^* W = 0}`.
fn tangent_dim(w: &Matrix<Complex<f64>>, span: &[Matrix<Complex<f64>>]) -> usize {
    let i = Complex::new(0.0, 1.0);
    let real_basis: Vec<Matrix<Complex<f64>>> = span.iter().flat_map(|b| [b.clone(), b.scale(&i)]).collect();
    let rows = 2 * w.cols() * w.cols();
    let mut m = Matrix::zeros(rows, real_basis.len());
    for (j, y) in real_basis.iter().enumerate() {
        let h = &(&w.adjoint() * y) + &(&y.adjoint() * w);
        for (k, x) in h.data().iter().enumerate() {
            m.set(2 * k, j, Complex::new(x.re, 0.0));
            m.set(2 * k + 1, j, Complex::new(x.im, 0.0));
        }
    }
    real_basis.len() - rank(&m)
}

fn normalise<S: Scalar>(w: &Matrix<S>) -> Option<Matrix<S>> {
    let g = &w.adjoint() * w;
    let c = g.get(0, 0).clone();
    if !g.approx_eq(&Matrix::identity(g.rows()).scale(&c)) {
        return None;
    }
    let r = c.sqrt_real()?;
    Some(w.scale(&r.inv()))
}

/// Pairs `(z, W)` for `v`: `W` an isometric module intertwiner `z (x) beta -> v (x) beta`
/// with `W^* Z_v = 0` and `dim z <= dim v - mult v`.  Intertwiner spaces larger than
/// `bound` are not searched and mark the report partial.
pub fn classify_pairs<S: Scalar>(
    v: &Rep<S>,
    act: &ErgodicAction<S>,
    irreps: &[Rep<S>],
    bound: usize,
    seed: u64,
) -> Result<Classification<S>> {
    let em = eigenmatrix(v, act)?;
    let n = act.n();
    let d = v.dim();
    let deficit = d - em.mult;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dims: Vec<usize> = irreps.iter().map(|r| r.dim()).collect();
    let mut candidates = Vec::new();
    for labels in multisets(&dims, deficit) {
        let z = direct_sum(&labels.iter().map(|&i| &irreps[i]).collect::<Vec<_>>());
        let raw = module_intertwiners(&z, v, act);
        let hom_dim = raw.len();
        let spectral_columns = if labels.len() == 1 {
            let ez = eigenmatrix(&z, act)?;
            ez.is_unitary().then(|| raw.iter().all(|w| {
                let c = w * &ez.z;
                (&em.e * &c).approx_eq(&c)
            }))
        } else {
            None
        };
        let constrained: Vec<Matrix<S>> = if raw.is_empty() {
            Vec::new()
        } else if em.mult == 0 {
            raw
        } else {
            let zs = em.z.adjoint();
            let mut sys = Matrix::zeros(em.z.cols() * z.dim() * n, raw.len());
            for (j, w) in raw.iter().enumerate() {
                for (k, x) in (&zs * w).into_data().into_iter().enumerate() {
                    sys.set(k, j, x);
                }
            }
            kernel(&sys).into_iter().map(|c| combine(&raw, &c)).collect()
        };
        let p = constrained.len();
        let mut cand = Candidate {
            labels,
            z: z.clone(),
            hom_dim,
            constrained_dim: p,
            class: None,
            spectral_columns,
            partial: false,
            note: String::new(),
        };
        if p == 0 {
            cand.note = if hom_dim == 0 {
                "module intertwiner space is zero".into()
            } else {
                "no intertwiner is orthogonal to Z_v".into()
            };
        } else if p > bound {
            cand.partial = true;
            cand.note = format!("constrained space of dimension {p} exceeds the search bound {bound}");
        } else {
            let target = z.dim() * n;
            let mut found = None;
            for _ in 0..TRIALS {
                let w = combine(&constrained, &random_coeffs(&mut rng, p));
                if rank(&(&w.adjoint() * &w)) == target {
                    found = Some(w);
                    break;
                }
            }
            match found {
                None => {
                    cand.note = format!("W^* W singular at {TRIALS} generic points of the constrained space");
                }
                Some(w) => {
                    let exact = normalise(&w);
                    let wf = w.to_c64();
                    let w_float = match &exact {
                        Some(e) => e.to_c64(),
                        None => &wf * &inverse_sqrt_pd(&(&wf.adjoint() * &wf))?,
                    };
                    let span: Vec<_> = constrained.iter().map(|b| b.to_c64()).collect();
                    let solution_dim = tangent_dim(&w_float, &span);
                    let gauge_dim = crate::rep::intertwiners(&z, &z).len();
                    let projection = &w_float * &w_float.adjoint();
                    cand.note = "isometry found by polar decomposition of a generic element".into();
                    cand.class = Some(PairClass { w: exact, w_float, projection, solution_dim, gauge_dim });
                }
            }
        }
        candidates.push(cand);
    }
    Ok(Classification { dim: d, mult: em.mult, eigen: em, candidates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::builtin_group;
    use crate::ergodic::{verify_full_structure, weyl_pair, FullStructure};
    use crate::surd::Surd;

    #[test]
    fn multisets_respect_the_bound() {
        assert_eq!(multisets(&[1, 1, 2], 2), vec![vec![0], vec![0, 0], vec![0, 1], vec![1], vec![1, 1], vec![2]]);
        assert!(multisets(&[2], 1).is_empty());
    }

    #[test]
    fn full_multiplicity_is_unique() {
        let data = builtin_group("V4").unwrap();
        let (x, z) = weyl_pair::<Surd>(2);
        let act = ErgodicAction::from_generators(data.group.clone(), &[x, z]).unwrap();
        let irreps: Vec<_> = data.irreps.iter().map(|(_, r)| r.clone()).collect();
        let v = irreps[1].direct_sum(&irreps[2]);
        let c = classify_pairs(&v, &act, &irreps, 8, 1).unwrap();
        assert_eq!(c.deficit(), 0);
        assert!(c.candidates.is_empty() && c.admits_full_structure());
    }

    #[test]
    fn adjoint_s3_std_has_no_extension() {
        let data = builtin_group("S3").unwrap();
        let std = data.irrep("std").unwrap();
        let act = ErgodicAction::adjoint(std).unwrap();
        let irreps: Vec<_> = data.irreps.iter().map(|(_, r)| r.clone()).collect();
        let c = classify_pairs(std, &act, &irreps, 8, 1).unwrap();
        assert_eq!((c.mult, c.deficit()), (1, 1));
        assert_eq!(c.candidates.len(), 2);
        for cand in &c.candidates {
            assert!(cand.hom_dim > 0);
            assert_eq!(cand.constrained_dim, 0);
            assert_eq!(cand.spectral_columns, Some(true));
        }
        assert!(c.no_proper_extension() && !c.admits_full_structure());
    }

    #[test]
    fn adjoint_s3_double_std_pairs_verify() {
        // v = std + std has mult 2 < 4
        let data = builtin_group("S3").unwrap();
        let std = data.irrep("std").unwrap();
        let act = ErgodicAction::adjoint(std).unwrap();
        let irreps: Vec<_> = data.irreps.iter().map(|(_, r)| r.clone()).collect();
        let v = std.direct_sum(std);
        let c = classify_pairs(&v, &act, &irreps, 16, 3).unwrap();
        assert_eq!((c.mult, c.deficit()), (2, 2));
        assert_eq!(c.candidates.len(), 6);
        for cand in c.candidates.iter().filter(|c| c.class.is_some()) {
            let k = cand.class.as_ref().unwrap();
            if let Some(w) = &k.w {
                let s = FullStructure::from_pair(&c.eigen, &cand.z, w).unwrap();
                for r in verify_full_structure(&s, &c.eigen, &act) {
                    assert!(r.passed(), "{r:?}");
                }
            }
        }
    }
}
