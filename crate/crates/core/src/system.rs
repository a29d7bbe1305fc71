//! The plant `x' = Ax + Bu, y = Cx + Du, z = Ex + Fu`.

use crate::error::{mismatch, Result};
use crate::exactlin::Matrix;

/// A dimension-checked sextuple `(A, B, C, D, E, F)` with state dimension
/// `n`, input dimension `m`, measured output `p` and estimated output `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemSextuple {
    a: Matrix,
    b: Matrix,
    c: Matrix,
    d: Matrix,
    e: Matrix,
    f: Matrix,
}

impl SystemSextuple {
    pub fn new(a: Matrix, b: Matrix, c: Matrix, d: Matrix, e: Matrix, f: Matrix) -> Result<Self> {
        let n = a.rows();
        if a.cols() != n {
            return Err(mismatch("A", format!("{n}x{n}"), fmt_shape(&a)));
        }
        let m = b.cols();
        let p = c.rows();
        let q = e.rows();
        let check = |name: &'static str, mat: &Matrix, rows: usize, cols: usize| {
            if mat.shape() != (rows, cols) {
                Err(mismatch(name, format!("{rows}x{cols}"), fmt_shape(mat)))
            } else {
                Ok(())
            }
        };
        check("B", &b, n, m)?;
        check("C", &c, p, n)?;
        check("D", &d, p, m)?;
        check("E", &e, q, n)?;
        check("F", &f, q, m)?;
        Ok(Self { a, b, c, d, e, f })
    }

    /// Known-input plant `(A, C, E)` with no input channel.
    pub fn without_input(a: Matrix, c: Matrix, e: Matrix) -> Result<Self> {
        let n = a.rows();
        let (p, q) = (c.rows(), e.rows());
        Self::new(a, Matrix::zeros(n, 0), c, Matrix::zeros(p, 0), e, Matrix::zeros(q, 0))
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn m(&self) -> usize {
        self.b.cols()
    }

    pub fn p(&self) -> usize {
        self.c.rows()
    }

    pub fn q(&self) -> usize {
        self.e.rows()
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &Matrix {
        &self.b
    }

    pub fn c(&self) -> &Matrix {
        &self.c
    }

    pub fn d(&self) -> &Matrix {
        &self.d
    }

    pub fn e(&self) -> &Matrix {
        &self.e
    }

    pub fn f(&self) -> &Matrix {
        &self.f
    }

    /// `[E F]`
    pub fn ef(&self) -> Matrix {
        self.e.hstack(&self.f).expect("E and F share rows")
    }

    /// `[C D]`
    pub fn cd(&self) -> Matrix {
        self.c.hstack(&self.d).expect("C and D share rows")
    }

    /// Same plant with a different estimated output `z = E'x + F'u`.
    pub fn with_output(&self, e: Matrix, f: Matrix) -> Result<Self> {
        Self::new(self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone(), e, f)
    }

    /// `z = x`
    pub fn with_state_output(&self) -> Self {
        let (n, m) = (self.n(), self.m());
        self.with_output(Matrix::identity(n), Matrix::zeros(n, m))
            .expect("state output shape")
    }

    /// `z = u`
    pub fn with_input_output(&self) -> Self {
        let (n, m) = (self.n(), self.m());
        self.with_output(Matrix::zeros(m, n), Matrix::identity(m))
            .expect("input output shape")
    }

    /// Drops the input channel (known-input reduction).
    pub fn known_input_reduction(&self) -> Self {
        Self::without_input(self.a.clone(), self.c.clone(), self.e.clone()).expect("same A, C, E")
    }

    /// Rank of the controllability matrix equals `n`.
    pub fn is_controllable(&self) -> bool {
        let n = self.n();
        let mut blocks = self.b.clone();
        let mut power = self.b.clone();
        for _ in 1..n {
            power = &self.a * &power;
            blocks = blocks.hstack(&power).expect("n rows");
        }
        blocks.rank() == n
    }
}

fn fmt_shape(m: &Matrix) -> String {
    format!("{}x{}", m.rows(), m.cols())
}
