//! Shared helpers and independent oracles for the integration tests.
//! Everything here recomputes results from definitions (nested loops,
//! dense eigendecomposition, alternating least squares) rather than
//! reusing the library's fast paths.

use fedtucker_core::{orthonormal_basis_qr, DenseTensor64, Matrix64, Shape};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_tensor(extents: &[usize], rng: &mut ChaCha8Rng) -> DenseTensor64 {
    let shape = Shape::new(extents.to_vec()).unwrap();
    let values = (0..shape.numel())
        .map(|_| rng.random_range(-1.0..1.0))
        .collect();
    DenseTensor64::from_values(shape, values).unwrap()
}

pub fn random_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix64 {
    let values = (0..rows * cols)
        .map(|_| rng.random_range(-1.0..1.0))
        .collect();
    Matrix64::from_values(rows, cols, values).unwrap()
}

/// Random matrix with orthonormal columns.
pub fn random_orthonormal(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix64 {
    orthonormal_basis_qr(&random_matrix(rows, cols, rng)).unwrap()
}

/// Brute-force mode-k product contracting against the columns of `m`
/// (the reconstruction-direction product), evaluated entry by entry from
/// the definition.
pub fn ttm_t_oracle(t: &DenseTensor64, m: &Matrix64, mode: usize) -> DenseTensor64 {
    let d = t.order();
    assert_eq!(m.cols(), t.shape().extent(mode));
    let mut extents = t.shape().extents().to_vec();
    extents[mode] = m.rows();
    let shape = Shape::new(extents).unwrap();
    let mut out = DenseTensor64::zeros(shape);

    let mut out_index = vec![0usize; d];
    for _ in 0..out.numel() {
        let mut acc = 0.0;
        let mut in_index = out_index.clone();
        for i in 0..m.cols() {
            in_index[mode] = i;
            acc += t.get(&in_index) * m[(out_index[mode], i)];
        }
        out.set(&out_index.clone(), acc);
        for j in 0..d {
            out_index[j] += 1;
            if out_index[j] < out.shape().extent(j) {
                break;
            }
            out_index[j] = 0;
        }
    }
    out
}

/// Symmetric Jacobi eigendecomposition, used as the independent oracle
/// for singular values/vectors via the Gram matrix `m^T m`.
pub fn sym_eig_oracle(a: &Matrix64) -> (Vec<f64>, Matrix64) {
    assert_eq!(a.rows(), a.cols());
    let n = a.rows();
    let mut w = a.clone();
    let mut v = Matrix64::identity(n);
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                off = off.max(w[(p, q)].abs());
            }
        }
        if off < 1e-14 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = w[(p, q)];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (w[(q, q)] - w[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (1.0 + theta * theta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..n {
                    let wip = w[(i, p)];
                    let wiq = w[(i, q)];
                    w[(i, p)] = c * wip - s * wiq;
                    w[(i, q)] = s * wip + c * wiq;
                }
                for j in 0..n {
                    let wpj = w[(p, j)];
                    let wqj = w[(q, j)];
                    w[(p, j)] = c * wpj - s * wqj;
                    w[(q, j)] = s * wpj + c * wqj;
                }
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = c * vip - s * viq;
                    v[(i, q)] = s * vip + c * viq;
                }
            }
        }
    }
    let mut pairs: Vec<(f64, usize)> = (0..n).map(|i| (w[(i, i)], i)).collect();
    pairs.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    let mut eigvals = Vec::with_capacity(n);
    let mut eigvecs = Matrix64::zeros(n, n);
    for (j, &(val, src)) in pairs.iter().enumerate() {
        eigvals.push(val);
        for i in 0..n {
            eigvecs[(i, j)] = v[(i, src)];
        }
    }
    (eigvals, eigvecs)
}

/// Singular values of `a` via the eigendecomposition of the Gram matrix.
pub fn singular_values_oracle(a: &Matrix64) -> Vec<f64> {
    let gram = if a.rows() <= a.cols() {
        a.matmul_nt(a).unwrap()
    } else {
        a.matmul_tn(a).unwrap()
    };
    let (eig, _) = sym_eig_oracle(&gram);
    eig.into_iter().map(|l| l.max(0.0).sqrt()).collect()
}

/// Horizontal concatenation `[a b ...]`.
pub fn hstack(blocks: &[Matrix64]) -> Matrix64 {
    let rows = blocks[0].rows();
    let cols: usize = blocks.iter().map(|b| b.cols()).sum();
    let mut out = Matrix64::zeros(rows, cols);
    let mut at = 0;
    for b in blocks {
        assert_eq!(b.rows(), rows);
        for j in 0..b.cols() {
            out.column_mut(at + j).copy_from_slice(b.column(j));
        }
        at += b.cols();
    }
    out
}
