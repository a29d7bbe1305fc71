use std::fmt;
use std::ops::{Add, Mul, Sub};


use super::poly::{poly_gcd, Polynomial};
use crate::error::{mismatch, Result};
use crate::exactlin::{Matrix, Rational};

/// Matrix of polynomials in `s`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Polynomial::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Polynomial::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Polynomial) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial>>, cols: usize) -> Result<Self> {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            if row.len() != cols {
                return Err(mismatch("PolyMatrix::from_rows", cols, row.len()));
            }
            data.extend(row);
        }
        Ok(Self { rows: r, cols, data })
    }

    /// Constant polynomial matrix.
    pub fn from_constant(m: &Matrix) -> Self {
        Self::from_fn(m.rows(), m.cols(), |i, j| Polynomial::constant(m.get(i, j).clone()))
    }

    /// `s * lead + constant` for equally shaped constant matrices.
    pub fn pencil(lead: &Matrix, constant: &Matrix) -> Result<Self> {
        if lead.shape() != constant.shape() {
            return Err(mismatch(
                "PolyMatrix::pencil",
                format!("{:?}", lead.shape()),
                format!("{:?}", constant.shape()),
            ));
        }
        Ok(Self::from_fn(lead.rows(), lead.cols(), |i, j| {
            Polynomial::new(vec![constant.get(i, j).clone(), lead.get(i, j).clone()])
        }))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Polynomial) {
        self.data[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Polynomial::is_zero)
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.data.iter().filter_map(Polynomial::degree).max()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn hstack(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.rows != rhs.rows {
            return Err(mismatch("PolyMatrix::hstack", self.rows, rhs.rows));
        }
        Ok(Self::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                rhs.get(i, j - self.cols).clone()
            }
        }))
    }

    pub fn vstack(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != rhs.cols {
            return Err(mismatch("PolyMatrix::vstack", self.cols, rhs.cols));
        }
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Ok(Self {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn checked_mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != rhs.rows {
            return Err(mismatch("PolyMatrix product", self.cols, rhs.rows));
        }
        let mut out = PolyMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn eval(&self, x: &Rational) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).eval(x))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[target] += factor * row[source]`
    pub fn add_row_multiple(&mut self, target: usize, source: usize, factor: &Polynomial) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let src = self.get(source, j);
            if src.is_zero() {
                continue;
            }
            let v = self.get(target, j) + &(factor * src);
            self.set(target, j, v);
        }
    }

    /// `col[target] += factor * col[source]`
    pub fn add_col_multiple(&mut self, target: usize, source: usize, factor: &Polynomial) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let src = self.get(i, source);
            if src.is_zero() {
                continue;
            }
            let v = self.get(i, target) + &(factor * src);
            self.set(i, target, v);
        }
    }

    pub fn scale_row(&mut self, row: usize, k: &Rational) {
        for j in 0..self.cols {
            let v = self.get(row, j).scale(k);
            self.set(row, j, v);
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination; every division
    /// is exact in Q[s].
    pub fn det(&self) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(mismatch("PolyMatrix::det", "square", format!("{:?}", self.shape())));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Polynomial::one());
        }
        let mut m = self.clone();
        let mut sign = false;
        let mut prev = Polynomial::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m.get(i, k).is_zero()) else {
                    return Ok(Polynomial::zero());
                };
                m.swap_rows(k, p);
                sign = !sign;
            }
            let pivot = m.get(k, k).clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&pivot * m.get(i, j)) - &(m.get(i, k) * m.get(k, j));
                    m.set(i, j, num.exact_div(&prev)?);
                }
                m.set(i, k, Polynomial::zero());
            }
            prev = pivot;
        }
        let d = m.get(n - 1, n - 1).clone();
        Ok(if sign { -&d } else { d })
    }
}

/// Rank over the field of rational functions Q(s).
///
/// Fraction-free elimination: the pivot row is combined into the rows below
/// without division, and each updated row is divided by the gcd of its
/// entries to keep degrees down.
pub fn normal_rank(p: &PolyMatrix) -> usize {
    let mut m = p.clone();
    let (rows, cols) = m.shape();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        // lowest-degree pivot keeps the growth small
        let Some(pr) = (rank..rows)
            .filter(|&i| !m.get(i, c).is_zero())
            .min_by_key(|&i| m.get(i, c).degree())
        else {
            continue;
        };
        m.swap_rows(rank, pr);
        let pivot = m.get(rank, c).clone();
        for i in rank + 1..rows {
            let a = m.get(i, c).clone();
            if a.is_zero() {
                continue;
            }
            for j in c..cols {
                let v = &(&pivot * m.get(i, j)) - &(&a * m.get(rank, j));
                m.set(i, j, v);
            }
            strip_row_content(&mut m, i, c);
        }
        rank += 1;
    }
    rank
}

fn strip_row_content(m: &mut PolyMatrix, row: usize, from_col: usize) {
    let mut g: Option<Polynomial> = None;
    for j in from_col..m.cols() {
        let e = m.get(row, j);
        if e.is_zero() {
            continue;
        }
        g = Some(match g {
            None => e.monic(),
            Some(acc) => poly_gcd(&acc, e).expect("nonzero operand"),
        });
        if g.as_ref().is_some_and(Polynomial::is_constant) {
            break;
        }
    }
    if let Some(g) = g {
        if !g.is_constant() {
            for j in from_col..m.cols() {
                let v = m.get(row, j).exact_div(&g).expect("gcd divides every entry");
                m.set(row, j, v);
            }
        }
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMatrix{}x{}", self.rows, self.cols)?;
        f.debug_list()
            .entries((0..self.rows).map(|i| {
                (0..self.cols).map(|j| self.get(i, j).to_string()).collect::<Vec<_>>()
            }))
            .finish()
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "[{}]", cells.join(", "))?;
            if i + 1 < self.rows {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

impl Mul for &PolyMatrix {
    type Output = PolyMatrix;

    fn mul(self, rhs: &PolyMatrix) -> PolyMatrix {
        self.checked_mul(rhs).expect("PolyMatrix product dimensions")
    }
}

impl Add for &PolyMatrix {
    type Output = PolyMatrix;

    fn add(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.shape(), rhs.shape(), "PolyMatrix sum dimensions");
        PolyMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + rhs.get(i, j))
    }
}

impl Sub for &PolyMatrix {
    type Output = PolyMatrix;

    fn sub(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.shape(), rhs.shape(), "PolyMatrix difference dimensions");
        PolyMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - rhs.get(i, j))
    }
}
