//! Singular value decomposition via one-sided (Hestenes) Jacobi
//! rotations.
//!
//! Jacobi was chosen over bidiagonalization because it delivers high
//! relative accuracy on the small singular values the joint-factorization
//! equivalence tests compare, it is deterministic for a fixed input, and
//! it stays simple under a generic scalar. Matrices here are at most a few
//! hundred rows/columns, where Jacobi is perfectly competitive.

use crate::error::{CoreError, CoreResult};
use crate::matrix::{dot, Matrix};
use crate::qr::complete_orthonormal_columns;
use crate::scalar::Scalar;

const MAX_SWEEPS: usize = 48;

/// Thin SVD `m = u * diag(s) * v^T` with `min(rows, cols)` columns.
#[derive(Debug, Clone)]
pub struct Svd<T: Scalar> {
    pub u: Matrix<T>,
    pub singular_values: Vec<T>,
    pub v: Matrix<T>,
}

/// Rank-`r` truncated SVD: the `r` leading left singular vectors, the
/// `r` leading singular values (non-increasing) and the matching right
/// singular vectors.
///
/// Left singular vectors follow a fixed sign convention (largest-magnitude
/// entry non-negative) and columns associated with an exactly zero
/// singular value are completed deterministically against the standard
/// basis, so the result is reproducible bit for bit.
pub fn truncated_svd<T: Scalar>(
    m: &Matrix<T>,
    r: usize,
) -> CoreResult<(Matrix<T>, Vec<T>, Matrix<T>)> {
    let k = m.rows().min(m.cols());
    if r == 0 || r > k {
        return Err(CoreError::RankOutOfRange(format!(
            "r = {} for a {}x{} matrix",
            r,
            m.rows(),
            m.cols()
        )));
    }
    if m.values().iter().any(|v| !v.is_finite()) {
        return Err(CoreError::NonFinite("svd input"));
    }
    let svd = jacobi_svd(m, true);
    let u = truncate_and_complete(&svd.u, &svd.singular_values, r);
    let v = truncate_and_complete(&svd.v, &svd.singular_values, r);
    let s = svd.singular_values[..r].to_vec();
    Ok((u, s, v))
}

/// Leading left singular vectors only; skips the right-vector
/// accumulation on the hot path. Also reports all `min(rows, cols)`
/// singular values so callers can detect rank deficiency.
pub fn left_singular_basis<T: Scalar>(
    m: &Matrix<T>,
    r: usize,
) -> CoreResult<(Matrix<T>, Vec<T>)> {
    let k = m.rows().min(m.cols());
    if r == 0 || r > m.rows() {
        return Err(CoreError::RankOutOfRange(format!(
            "r = {} for a {}x{} matrix",
            r,
            m.rows(),
            m.cols()
        )));
    }
    if m.values().iter().any(|v| !v.is_finite()) {
        return Err(CoreError::NonFinite("svd input"));
    }
    // r may exceed min(rows, cols) here (a caller can ask for more basis
    // vectors than the matrix has columns); the surplus is completed
    // deterministically.
    let svd = jacobi_svd(m, false);
    let mut padded = Matrix::zeros(m.rows(), r);
    for j in 0..r.min(k) {
        padded.column_mut(j).copy_from_slice(svd.u.column(j));
    }
    let mut valid: Vec<bool> = (0..r)
        .map(|j| j < k && svd.singular_values[j] > T::zero())
        .collect();
    complete_orthonormal_columns(&mut padded, &mut valid);
    Ok((padded, svd.singular_values))
}

/// All singular values of `m`, non-increasing.
pub fn singular_values<T: Scalar>(m: &Matrix<T>) -> CoreResult<Vec<T>> {
    if m.values().iter().any(|v| !v.is_finite()) {
        return Err(CoreError::NonFinite("svd input"));
    }
    Ok(jacobi_svd(m, false).singular_values)
}

/// Moore-Penrose pseudo-inverse with singular values below
/// `rel_threshold * s_max` treated as zero.
pub fn pseudo_inverse<T: Scalar>(m: &Matrix<T>, rel_threshold: T) -> CoreResult<Matrix<T>> {
    let k = m.rows().min(m.cols());
    let (u, s, v) = truncated_svd(m, k)?;
    let cutoff = s.first().copied().unwrap_or(T::zero()) * rel_threshold;
    // v * diag(1/s) * u^T, dropping negligible directions
    let mut scaled = Matrix::zeros(v.rows(), k);
    for j in 0..k {
        if s[j] > cutoff && s[j] > T::zero() {
            let inv = T::one() / s[j];
            let src = v.column(j);
            let dst = scaled.column_mut(j);
            for (d, &x) in dst.iter_mut().zip(src) {
                *d = x * inv;
            }
        }
    }
    scaled.matmul_nt(&u)
}

fn truncate_and_complete<T: Scalar>(m: &Matrix<T>, s: &[T], r: usize) -> Matrix<T> {
    let mut out = m.truncate_columns(r);
    let mut valid: Vec<bool> = (0..r).map(|j| s[j] > T::zero()).collect();
    complete_orthonormal_columns(&mut out, &mut valid);
    out
}

/// Full thin SVD by one-sided Jacobi. Singular values are sorted
/// non-increasing; ties keep the lower original column first. When
/// `want_v` is false and the input is at least as tall as it is wide, the
/// rotation accumulation for `v` is skipped.
fn jacobi_svd<T: Scalar>(m: &Matrix<T>, want_v: bool) -> Svd<T> {
    if m.rows() >= m.cols() {
        let (cols, norms, rot) = orthogonalize_columns(m, want_v);
        assemble(m.rows(), m.cols(), cols, norms, rot, false)
    } else {
        // Work on the transpose: left vectors of m are the accumulated
        // rotations of the transposed problem.
        let t = m.transpose();
        let (cols, norms, rot) = orthogonalize_columns(&t, true);
        assemble(m.rows(), m.cols(), cols, norms, rot, true)
    }
}

/// Orthogonalizes the columns of `m` (rows >= cols) in place with cyclic
/// Jacobi rotations. Returns the worked column buffer, the final column
/// norms, and (optionally) the accumulated rotation matrix.
fn orthogonalize_columns<T: Scalar>(
    m: &Matrix<T>,
    accumulate: bool,
) -> (Matrix<T>, Vec<T>, Option<Matrix<T>>) {
    let n = m.cols();
    let rows = m.rows();
    let mut work = m.clone();
    let mut rot = if accumulate {
        Some(Matrix::identity(n))
    } else {
        None
    };
    let mut sq: Vec<T> = (0..n).map(|j| dot(work.column(j), work.column(j))).collect();
    let tol = T::epsilon();

    for _sweep in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                let app = sq[p];
                let aqq = sq[q];
                let apq = dot(work.column(p), work.column(q));
                if apq.abs() <= tol * (app * aqq).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (aqq - app) / (T::cst(2.0) * apq);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;

                let (np, nq) = rotate_pair(&mut work, p, q, c, s, rows);
                sq[p] = np;
                sq[q] = nq;
                if let Some(r) = rot.as_mut() {
                    rotate_pair(r, p, q, c, s, n);
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let norms: Vec<T> = (0..n).map(|j| dot(work.column(j), work.column(j)).sqrt()).collect();
    (work, norms, rot)
}

/// Applies the rotation `[c -s; s c]` to columns `p` and `q`, returning
/// their new squared norms.
fn rotate_pair<T: Scalar>(
    m: &mut Matrix<T>,
    p: usize,
    q: usize,
    c: T,
    s: T,
    rows: usize,
) -> (T, T) {
    debug_assert!(p < q);
    let values = m.values_mut();
    let (head, tail) = values.split_at_mut(q * rows);
    let colp = &mut head[p * rows..p * rows + rows];
    let colq = &mut tail[..rows];
    let mut np = T::zero();
    let mut nq = T::zero();
    for (a, b) in colp.iter_mut().zip(colq.iter_mut()) {
        let x = *a;
        let y = *b;
        let xn = c * x - s * y;
        let yn = s * x + c * y;
        *a = xn;
        *b = yn;
        np += xn * xn;
        nq += yn * yn;
    }
    (np, nq)
}

fn assemble<T: Scalar>(
    orig_rows: usize,
    orig_cols: usize,
    worked: Matrix<T>,
    norms: Vec<T>,
    rot: Option<Matrix<T>>,
    transposed: bool,
) -> Svd<T> {
    let k = orig_rows.min(orig_cols);
    let mut order: Vec<usize> = (0..norms.len()).collect();
    order.sort_by(|&a, &b| {
        norms[b]
            .partial_cmp(&norms[a])
            .expect("finite norms")
            .then(a.cmp(&b))
    });

    let normalized = |src: &Matrix<T>, j: usize, norm: T, dst: &mut [T]| {
        if norm > T::zero() {
            let inv = T::one() / norm;
            for (d, &x) in dst.iter_mut().zip(src.column(j)) {
                *d = x * inv;
            }
        }
    };

    let mut singular_values = Vec::with_capacity(k);
    let mut u = Matrix::zeros(orig_rows, k);
    let mut v = Matrix::zeros(orig_cols, k);
    for (out_j, &src_j) in order.iter().take(k).enumerate() {
        singular_values.push(norms[src_j]);
        if transposed {
            // worked holds m^T * rotations = (right vectors * sigma); the
            // accumulated rotations are the left vectors of m.
            let rot = rot.as_ref().expect("transposed path accumulates");
            u.column_mut(out_j).copy_from_slice(rot.column(src_j));
            normalized(&worked, src_j, norms[src_j], v.column_mut(out_j));
        } else {
            normalized(&worked, src_j, norms[src_j], u.column_mut(out_j));
            if let Some(rot) = rot.as_ref() {
                v.column_mut(out_j).copy_from_slice(rot.column(src_j));
            }
        }
    }

    // Sign convention: largest-magnitude entry of each left vector made
    // non-negative (first occurrence wins), right vector flipped in sync.
    for j in 0..k {
        let col = u.column(j);
        let mut imax = 0;
        let mut best = T::zero();
        for (i, &x) in col.iter().enumerate() {
            if x.abs() > best {
                best = x.abs();
                imax = i;
            }
        }
        if col[imax] < T::zero() {
            for x in u.column_mut(j) {
                *x = -*x;
            }
            for x in v.column_mut(j) {
                *x = -*x;
            }
        }
    }

    Svd {
        u,
        singular_values,
        v,
    }
}
