//! QR-style orthonormalization via modified Gram-Schmidt.

use crate::error::{CoreError, CoreResult};
use crate::matrix::{dot, Matrix};
use crate::scalar::Scalar;

/// Orthonormal basis `Q` (same dimensions as `m`, `rows >= cols`) whose
/// column space contains the column space of `m`.
///
/// Rank-deficient directions are replaced deterministically by
/// Gram-Schmidt against the standard basis vectors in index order, so `Q`
/// always has exactly orthonormal columns.
pub fn orthonormal_basis_qr<T: Scalar>(m: &Matrix<T>) -> CoreResult<Matrix<T>> {
    if m.rows() < m.cols() {
        return Err(CoreError::NotTall {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if m.values().iter().any(|v| !v.is_finite()) {
        return Err(CoreError::NonFinite("qr input"));
    }
    let mut q = m.clone();
    let mut valid = vec![false; m.cols()];
    let deficiency_tol = T::epsilon() * T::cst(64.0);

    for j in 0..m.cols() {
        let original_norm = dot(q.column(j), q.column(j)).sqrt();
        project_out_accepted(&mut q, j, &valid);
        let norm = dot(q.column(j), q.column(j)).sqrt();
        if norm > original_norm * deficiency_tol && norm > T::zero() {
            let inv = T::one() / norm;
            for x in q.column_mut(j) {
                *x = *x * inv;
            }
            valid[j] = true;
        } else {
            for x in q.column_mut(j) {
                *x = T::zero();
            }
        }
    }
    complete_orthonormal_columns(&mut q, &mut valid);
    Ok(q)
}

/// Two-pass modified Gram-Schmidt of column `j` against the accepted
/// columns before it.
fn project_out_accepted<T: Scalar>(q: &mut Matrix<T>, j: usize, valid: &[bool]) {
    let rows = q.rows();
    for _pass in 0..2 {
        for k in 0..j {
            if !valid[k] {
                continue;
            }
            let coeff = dot(q.column(k), q.column(j));
            let values = q.values_mut();
            let (head, tail) = values.split_at_mut(j * rows);
            let colk = &head[k * rows..k * rows + rows];
            let colj = &mut tail[..rows];
            for (x, &y) in colj.iter_mut().zip(colk) {
                *x = *x - coeff * y;
            }
        }
    }
}

/// Replaces the columns not marked valid with vectors obtained by
/// Gram-Schmidt of the standard basis `e_0, e_1, ...` (in index order)
/// against everything already accepted. Deterministic; panics only if the
/// matrix has more columns than rows, which callers exclude.
pub(crate) fn complete_orthonormal_columns<T: Scalar>(q: &mut Matrix<T>, valid: &mut [bool]) {
    let rows = q.rows();
    let cols = q.cols();
    debug_assert!(cols <= rows);
    let accept_tol = T::cst(1e-6);
    let mut next_basis = 0usize;

    for j in 0..cols {
        if valid[j] {
            continue;
        }
        loop {
            assert!(
                next_basis < rows,
                "standard basis exhausted while completing an orthonormal set"
            );
            let mut candidate = vec![T::zero(); rows];
            candidate[next_basis] = T::one();
            next_basis += 1;
            for _pass in 0..2 {
                for k in 0..cols {
                    if k == j || !valid[k] {
                        continue;
                    }
                    let coeff = dot(q.column(k), &candidate);
                    for (c, &y) in candidate.iter_mut().zip(q.column(k)) {
                        *c = *c - coeff * y;
                    }
                }
            }
            let norm = dot(&candidate, &candidate).sqrt();
            if norm > accept_tol {
                let inv = T::one() / norm;
                for (dst, &c) in q.column_mut(j).iter_mut().zip(&candidate) {
                    *dst = c * inv;
                }
                valid[j] = true;
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_wide_matrices() {
        let m = Matrix::<f64>::zeros(2, 3);
        assert!(matches!(
            orthonormal_basis_qr(&m),
            Err(CoreError::NotTall { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn orthonormal_input_spans_same_space() {
        let m = Matrix::from_rows(&[&[1.0, 0.0], &[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        let q = orthonormal_basis_qr(&m).unwrap();
        // projector difference should vanish
        let pm = m.matmul_nt(&m).unwrap();
        let pq = q.matmul_nt(&q).unwrap();
        assert!(pm.sub(&pq).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn residual_vanishes_for_full_rank_input() {
        let m = Matrix::from_rows(&[
            &[1.0, 2.0, 0.5],
            &[0.0, 1.0, -1.0],
            &[2.0, -1.0, 0.25],
            &[1.0, 1.0, 1.0],
            &[-3.0, 0.5, 2.0],
            &[0.5, 0.5, 0.5],
        ])
        .unwrap();
        let q = orthonormal_basis_qr(&m).unwrap();
        assert!(q.orthonormality_defect() < 1e-12);
        let r = q.matmul_tn(&m).unwrap();
        let rec = q.matmul(&r).unwrap();
        assert!(rec.sub(&m).unwrap().max_abs() < 1e-10);
    }

    #[test]
    fn duplicated_column_still_yields_orthonormal_basis() {
        let m = Matrix::from_rows(&[&[1.0, 1.0], &[2.0, 2.0], &[0.5, 0.5]]).unwrap();
        let q = orthonormal_basis_qr(&m).unwrap();
        assert!(q.orthonormality_defect() < 1e-12);
    }

    #[test]
    fn zero_matrix_completes_to_standard_basis() {
        let m = Matrix::<f64>::zeros(4, 2);
        let q = orthonormal_basis_qr(&m).unwrap();
        assert_eq!(q[(0, 0)], 1.0);
        assert_eq!(q[(1, 1)], 1.0);
        assert!(q.orthonormality_defect() < 1e-15);
    }
}
