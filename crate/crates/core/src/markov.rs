//! Block Toeplitz matrices of Markov parameters and the kernel-inclusion
//! test on them.

use serde::{Deserialize, Serialize};

use crate::error::{mismatch, Result};
use crate::exactlin::{kernel_basis, Matrix, Rational};
use crate::system::SystemSextuple;

/// Lower block-triangular Toeplitz matrix with `D` on the diagonal and
/// `C A^{i-1-j} B` in block `(i, j)` for `i > j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToeplitzChain {
    pub k: usize,
    pub block_rows: usize,
    pub block_cols: usize,
    pub matrix: Matrix,
}

impl ToeplitzChain {
    pub fn block(&self, i: usize, j: usize) -> Matrix {
        self.matrix.submatrix(i * self.block_rows, j * self.block_cols, self.block_rows, self.block_cols)
    }

    /// The chain for `k - 1`: drop the first block row and column.
    pub fn shrink(&self) -> Option<ToeplitzChain> {
        let k = self.k.checked_sub(1)?;
        let (br, bc) = (self.block_rows, self.block_cols);
        Some(ToeplitzChain {
            k,
            block_rows: br,
            block_cols: bc,
            matrix: self.matrix.submatrix(br, bc, (k + 1) * br, (k + 1) * bc),
        })
    }
}

pub fn toeplitz(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix, k: usize) -> Result<ToeplitzChain> {
    let n = a.rows();
    if a.cols() != n || b.rows() != n || c.cols() != n || d.shape() != (c.rows(), b.cols()) {
        return Err(mismatch(
            "toeplitz",
            "A n x n, B n x m, C p x n, D p x m",
            format!("{:?} {:?} {:?} {:?}", a.shape(), b.shape(), c.shape(), d.shape()),
        ));
    }
    let (p, m) = d.shape();
    // markov[i] = C A^i B
    let mut markov = Vec::with_capacity(k);
    let mut power_b = b.clone();
    for _ in 0..k {
        markov.push(c * &power_b);
        power_b = a * &power_b;
    }
    let mut matrix = Matrix::zeros((k + 1) * p, (k + 1) * m);
    for i in 0..=k {
        for j in 0..=i {
            let blk = if i == j { d } else { &markov[i - 1 - j] };
            for r in 0..p {
                for s in 0..m {
                    matrix.set(i * p + r, j * m + s, blk.get(r, s).clone());
                }
            }
        }
    }
    Ok(ToeplitzChain {
        k,
        block_rows: p,
        block_cols: m,
        matrix,
    })
}

/// Outcome of checking `Ker M^k_{C,D} ⊆ Ker M^k_{E,F}` for `k = 0..=kmax`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelInclusionReport {
    pub holds: bool,
    pub kmax: usize,
    pub failing_k: Option<usize>,
    /// Stacked kernel vector `(q_0, ..., q_k)` violating the inclusion.
    #[serde(with = "crate::format::serde_rational::opt_vec")]
    pub witness: Option<Vec<Rational>>,
    /// The same vector as input coefficients of `q(s) = q_0 s^k + ... + q_k`.
    #[serde(with = "crate::format::serde_rational::opt_nested")]
    pub input_direction: Option<Vec<Vec<Rational>>>,
}

pub fn kernel_inclusion_upto(sys: &SystemSextuple, kmax: usize) -> Result<KernelInclusionReport> {
    let m = sys.m();
    for k in 0..=kmax {
        let cd = toeplitz(sys.a(), sys.b(), sys.c(), sys.d(), k)?;
        let ef = toeplitz(sys.a(), sys.b(), sys.e(), sys.f(), k)?;
        let ker = kernel_basis(&cd.matrix);
        for v in ker.basis_vectors() {
            let image = ef.matrix.mul_vec(&v)?;
            if image.iter().any(|x| !num_traits::Zero::is_zero(x)) {
                let input_direction = v.chunks(m.max(1)).map(<[Rational]>::to_vec).collect();
                return Ok(KernelInclusionReport {
                    holds: false,
                    kmax,
                    failing_k: Some(k),
                    witness: Some(v),
                    input_direction: Some(input_direction),
                });
            }
        }
    }
    Ok(KernelInclusionReport {
        holds: true,
        kmax,
        failing_k: None,
        witness: None,
        input_direction: None,
    })
}

/// Default horizon `n + m`.
pub fn default_kmax(sys: &SystemSextuple) -> usize {
    sys.n() + sys.m()
}
