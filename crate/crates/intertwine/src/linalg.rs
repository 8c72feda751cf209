//! Kernels, Gram-Schmidt, positivity certificates and group averaging.

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{eps, Scalar};

/// Reduced row echelon form in place; returns pivot columns.
///
/// Elimination skips zero entries, which matters for the sparse
/// intertwiner systems built from permutation-like matrices.
pub fn rref<S: Scalar>(m: &mut Matrix<S>) -> Vec<usize> {
    let (rows, cols) = m.shape();
    let scale = m.max_abs().max(1.0);
    let tiny = |x: &S| {
        if S::EXACT {
            x.is_zero()
        } else {
            x.abs_f64() <= eps() * scale
        }
    };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let mut best: Option<(usize, f64)> = None;
        for i in r..rows {
            let v = m.get(i, c);
            if !tiny(v) {
                let a = v.abs_f64();
                if S::EXACT {
                    best = Some((i, a));
                    break;
                }
                if best.map_or(true, |(_, b)| a > b) {
                    best = Some((i, a));
                }
            }
        }
        let Some((p, _)) = best else {
            for i in r..rows {
                m.set(i, c, S::zero());
            }
            continue;
        };
        if p != r {
            for j in 0..cols {
                let a = m.get(p, j).clone();
                let b = m.get(r, j).clone();
                m.set(p, j, b);
                m.set(r, j, a);
            }
        }
        let inv = m.get(r, c).inv();
        for j in c..cols {
            let v = m.get(r, j).clone();
            if !v.is_zero() {
                m.set(r, j, v * inv.clone());
            }
        }
        m.set(r, c, S::one());
        let nz: Vec<usize> = (c + 1..cols).filter(|&j| !m.get(r, j).is_zero()).collect();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = m.get(i, c).clone();
            if f.is_zero() {
                continue;
            }
            for &j in &nz {
                let v = m.get(i, j).clone() - f.clone() * m.get(r, j).clone();
                m.set(i, j, v);
            }
            m.set(i, c, S::zero());
        }
        pivots.push(c);
        r += 1;
    }
    if !S::EXACT {
        for i in r..rows {
            for j in 0..cols {
                m.set(i, j, S::zero());
            }
        }
    }
    pivots
}

/// Basis of the null space of `m`, one vector per free column.
pub fn kernel<S: Scalar>(m: &Matrix<S>) -> Vec<Vec<S>> {
    let cols = m.cols();
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for f in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![S::zero(); cols];
        v[f] = S::one();
        for (r, &p) in pivots.iter().enumerate() {
            let x = a.get(r, f);
            if !x.is_zero() {
                v[p] = -x.clone();
            }
        }
        out.push(v);
    }
    out
}

pub fn rank<S: Scalar>(m: &Matrix<S>) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Indices of a maximal independent subset of the columns.
pub fn independent_columns<S: Scalar>(m: &Matrix<S>) -> Vec<usize> {
    let mut a = m.clone();
    rref(&mut a)
}

/// Some solution of `a x = b`, or `None` if inconsistent.
pub fn solve<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Option<Matrix<S>> {
    assert_eq!(a.rows(), b.rows());
    let n = a.cols();
    let mut aug = a.hstack(b);
    let pivots = rref(&mut aug);
    if pivots.iter().any(|&p| p >= n) {
        return None;
    }
    let mut x = Matrix::zeros(n, b.cols());
    for (r, &p) in pivots.iter().enumerate() {
        for j in 0..b.cols() {
            x.set(p, j, aug.get(r, n + j).clone());
        }
    }
    if !S::EXACT && !(a * &x).approx_eq(b) {
        let res = (a * &x).residual(b);
        if res > eps().sqrt() {
            return None;
        }
    }
    Some(x)
}

pub fn inverse<S: Scalar>(m: &Matrix<S>) -> Result<Matrix<S>> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch(format!("inverse of {}x{}", m.rows(), m.cols())));
    }
    let n = m.rows();
    let mut aug = m.hstack(&Matrix::identity(n));
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(Error::Singular);
    }
    Ok(aug.submatrix(0, n, n, n))
}

fn form<S: Scalar>(gram: Option<&Matrix<S>>, x: &[S], y: &[S]) -> S {
    match gram {
        None => Matrix::dot(x, y),
        Some(g) => {
            let gy = g * &Matrix::col_vec(y.to_vec());
            Matrix::dot(x, gy.data())
        }
    }
}

/// Gram-Schmidt with respect to `<x, y> = x^* G y` (identity if `gram` is None).
///
/// All vectors are first orthogonalised without square roots and only then
/// normalised, so exact runs stay in the smallest field that holds the data.
/// Vectors that become null are dropped.
pub fn orthonormalize<S: Scalar>(vs: &[Vec<S>], gram: Option<&Matrix<S>>) -> Result<Vec<Vec<S>>> {
    let ortho = orthogonalize(vs, gram)?;
    ortho
        .into_iter()
        .map(|(v, n)| {
            let r = n
                .sqrt_real()
                .ok_or_else(|| Error::NoExactSqrt(n.to_string()))?;
            let inv = r.inv();
            Ok(v.into_iter().map(|x| x * inv.clone()).collect())
        })
        .collect()
}

/// Mutually orthogonal vectors spanning the same space, with their squared norms.
pub fn orthogonalize<S: Scalar>(vs: &[Vec<S>], gram: Option<&Matrix<S>>) -> Result<Vec<(Vec<S>, S)>> {
    let mut out: Vec<(Vec<S>, S)> = Vec::new();
    let scale = vs
        .iter()
        .map(|v| form(gram, v, v).abs_f64())
        .fold(1.0, f64::max);
    for v in vs {
        let mut w = v.clone();
        // two passes keep floating runs orthogonal to working precision
        let passes = if S::EXACT { 1 } else { 2 };
        for _ in 0..passes {
            for (o, n) in &out {
                let c = form(gram, o, &w) / n.clone();
                if c.is_zero() {
                    continue;
                }
                for (wi, oi) in w.iter_mut().zip(o) {
                    *wi = wi.clone() - c.clone() * oi.clone();
                }
            }
        }
        let n = form(gram, &w, &w);
        let re = n.re();
        let null = if S::EXACT { re.is_zero() } else { re.abs_f64() <= eps() * scale };
        if null {
            continue;
        }
        if re.real_sign() < 0 {
            return Err(Error::NotPsd(re.to_c64().re));
        }
        out.push((w, re));
    }
    Ok(out)
}

/// Hermitian eigen-decomposition in double precision, ascending eigenvalues.
pub fn eigh<S: Scalar>(m: &Matrix<S>) -> (Vec<f64>, Matrix<Complex<f64>>) {
    let n = m.rows();
    let dm = DMatrix::from_fn(n, n, |i, j| m.get(i, j).to_c64());
    let dm = (&dm + dm.adjoint()) * Complex::new(0.5, 0.0);
    let e = dm.symmetric_eigen();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| e.eigenvalues[a].partial_cmp(&e.eigenvalues[b]).unwrap());
    let vals = idx.iter().map(|&i| e.eigenvalues[i]).collect();
    let vecs = Matrix::from_fn(n, n, |i, j| e.eigenvectors[(i, idx[j])]);
    (vals, vecs)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PsdCertificate<S> {
    /// Smallest eigenvalue in double precision.
    pub lambda_min: f64,
    /// For exact scalars: the verdict of an exact LDL* factorisation.
    pub exact_psd: Option<bool>,
    /// Pivots of the exact factorisation (empty for floats).
    pub pivots: Vec<S>,
}

impl<S: Scalar> PsdCertificate<S> {
    pub fn is_psd(&self) -> bool {
        self.exact_psd.unwrap_or(self.lambda_min >= -eps())
    }
}

/// Smallest eigenvalue of a hermitian matrix, plus an exact verdict when exact.
pub fn psd_certificate<S: Scalar>(m: &Matrix<S>) -> Result<PsdCertificate<S>> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch(format!("{}x{} is not square", m.rows(), m.cols())));
    }
    if !m.is_hermitian() {
        return Err(Error::NotHermitian(m.residual(&m.adjoint())));
    }
    let lambda_min = if m.rows() == 0 { 0.0 } else { eigh(m).0[0] };
    if !S::EXACT {
        return Ok(PsdCertificate { lambda_min, exact_psd: None, pivots: Vec::new() });
    }
    let (ok, pivots) = ldl_psd(m);
    Ok(PsdCertificate { lambda_min, exact_psd: Some(ok), pivots })
}

/// Exact LDL* with diagonal pivoting; decides positive semidefiniteness.
fn ldl_psd<S: Scalar>(m: &Matrix<S>) -> (bool, Vec<S>) {
    let mut a = m.clone();
    let mut active: Vec<usize> = (0..m.rows()).collect();
    let mut pivots = Vec::new();
    while !active.is_empty() {
        let pos = active.iter().position(|&i| a.get(i, i).real_sign() > 0);
        let Some(pos) = pos else {
            if active.iter().any(|&i| a.get(i, i).real_sign() < 0) {
                return (false, pivots);
            }
            let rest_zero = active
                .iter()
                .all(|&i| active.iter().all(|&j| a.get(i, j).is_zero()));
            return (rest_zero, pivots);
        };
        let k = active.remove(pos);
        let d = a.get(k, k).clone();
        let dinv = d.inv();
        for &i in &active {
            let f = a.get(i, k).clone() * dinv.clone();
            if f.is_zero() {
                continue;
            }
            for &j in &active {
                let v = a.get(i, j).clone() - f.clone() * a.get(k, j).clone();
                a.set(i, j, v);
            }
        }
        pivots.push(d);
    }
    (true, pivots)
}

/// Averaging operator `(1/|G|) sum_g rho(g)` over a full family of matrices.
///
/// `table[g][h]` is the index of `gh`.  The family must be a representation.
pub fn group_average<S: Scalar>(family: &[Matrix<S>], table: &[Vec<usize>]) -> Result<Matrix<S>> {
    check_representation(family, table)?;
    let n = family[0].rows();
    let mut acc = Matrix::zeros(n, n);
    for m in family {
        acc = &acc + m;
    }
    Ok(acc.scale(&S::from_ratio(1, family.len() as i64)))
}

pub fn check_representation<S: Scalar>(family: &[Matrix<S>], table: &[Vec<usize>]) -> Result<()> {
    if family.is_empty() || family.len() != table.len() {
        return Err(Error::NotARepresentation(format!(
            "{} matrices for a group of order {}",
            family.len(),
            table.len()
        )));
    }
    let n = family[0].rows();
    if family.iter().any(|m| m.shape() != (n, n)) {
        return Err(Error::NotARepresentation("matrices of different shapes".into()));
    }
    for g in 0..family.len() {
        for h in 0..family.len() {
            let lhs = &family[g] * &family[h];
            if !lhs.approx_eq(&family[table[g][h]]) {
                return Err(Error::NotARepresentation(format!(
                    "rho({g}) rho({h}) != rho({})",
                    table[g][h]
                )));
            }
        }
    }
    Ok(())
}

/// Inverse square root of a positive definite matrix (floating scalars only).
pub fn inverse_sqrt_pd<S: Scalar>(m: &Matrix<S>) -> Result<Matrix<S>> {
    if S::EXACT {
        return Err(Error::Unsupported("matrix square roots need floating scalars".into()));
    }
    let (vals, vecs) = eigh(m);
    if vals.iter().any(|&v| v <= eps()) {
        return Err(Error::Singular);
    }
    let n = m.rows();
    let d = Matrix::diag(&vals.iter().map(|v| Complex::new(1.0 / v.sqrt(), 0.0)).collect::<Vec<_>>());
    let r = &(&vecs * &d) * &vecs.adjoint();
    let _ = n;
    r.cast::<S>().ok_or_else(|| Error::Unsupported("cast".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surd::Surd;

    type C = Complex<f64>;

    #[test]
    fn kernel_of_rank_one() {
        let m: Matrix<Surd> = Matrix::from_i64(2, 3, &[1, 2, 3, 2, 4, 6]);
        let k = kernel(&m);
        assert_eq!(k.len(), 2);
        for v in k {
            let mv = &m * &Matrix::col_vec(v);
            assert!(mv.is_zero());
        }
    }

    #[test]
    fn psd_examples() {
        let m: Matrix<C> = Matrix::from_i64(2, 2, &[2, -1, -1, 2]);
        assert!((psd_certificate(&m).unwrap().lambda_min - 1.0).abs() < 1e-12);
        let m: Matrix<Surd> = Matrix::from_i64(2, 2, &[1, 2, 2, 1]);
        let c = psd_certificate(&m).unwrap();
        assert!((c.lambda_min + 1.0).abs() < 1e-12);
        assert_eq!(c.exact_psd, Some(false));
        let m: Matrix<Surd> = Matrix::from_i64(2, 2, &[1, 1, 1, 1]);
        assert_eq!(psd_certificate(&m).unwrap().exact_psd, Some(true));
        let m: Matrix<Surd> = Matrix::from_i64(2, 2, &[0, 1, 1, 0]);
        assert_eq!(psd_certificate(&m).unwrap().exact_psd, Some(false));
        let m: Matrix<C> = Matrix::from_i64(2, 2, &[1, 2, 0, 1]);
        assert!(matches!(psd_certificate(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn orthonormalize_exact() {
        let vs: Vec<Vec<Surd>> = vec![
            vec![Surd::from_i64(1), Surd::from_i64(1), Surd::from_i64(0)],
            vec![Surd::from_i64(1), Surd::from_i64(0), Surd::from_i64(1)],
            vec![Surd::from_i64(2), Surd::from_i64(1), Surd::from_i64(1)],
        ];
        let on = orthonormalize(&vs, None).unwrap();
        assert_eq!(on.len(), 2);
        let m = Matrix::from_columns(3, &on);
        assert!(m.is_isometry());
    }

    #[test]
    fn indefinite_gram_is_rejected() {
        let g: Matrix<C> = Matrix::diag(&[C::new(1.0, 0.0), C::new(-1.0, 0.0)]);
        let vs = vec![vec![C::new(0.0, 0.0), C::new(1.0, 0.0)]];
        assert!(matches!(orthonormalize(&vs, Some(&g)), Err(Error::NotPsd(_))));
    }

    #[test]
    fn group_average_of_swap() {
        let e: Matrix<Surd> = Matrix::identity(2);
        let s: Matrix<Surd> = Matrix::from_i64(2, 2, &[0, 1, 1, 0]);
        let table = vec![vec![0, 1], vec![1, 0]];
        let p = group_average(&[e.clone(), s.clone()], &table).unwrap();
        assert_eq!(p, Matrix::from_vec(2, 2, vec![Surd::from_ratio(1, 2); 4]));
        let bad = group_average(&[e, Matrix::from_i64(2, 2, &[2, 0, 0, 1])], &table);
        assert!(matches!(bad, Err(Error::NotARepresentation(_))));
    }
}
