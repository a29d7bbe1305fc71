//! Explicit rational-function solutions of `[M N] P = [E F]`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::decide::{strong_star_functional_detectable, strongly_functional_detectable};
use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Rational};
use crate::polymat::{build_system_matrices, normal_rank, poly_gcd, smith_form, PolyMatrix, Polynomial};
use crate::stability::{is_hurwitz, HurwitzReport};
use crate::system::SystemSextuple;

/// Reduced fraction `num / den` with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero("rational function"));
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = poly_gcd(&num, &den)?;
        let mut num = num.exact_div(&g)?;
        let mut den = den.exact_div(&g)?;
        let lc = den.leading().expect("nonzero").recip();
        if !lc.is_one() {
            num = num.scale(&lc);
            den = den.scale(&lc);
        }
        Ok(Self { num, den })
    }

    pub fn zero() -> Self {
        Self {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn from_poly(p: Polynomial) -> Self {
        Self {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Finite limit as `|s| -> ∞`.
    pub fn is_proper(&self) -> bool {
        self.num.degree().unwrap_or(0) <= self.den.degree().unwrap_or(0)
    }

    /// `deg num - deg den`, or `None` for zero.
    pub fn relative_degree_excess(&self) -> Option<i64> {
        Some(self.num.degree()? as i64 - self.den.degree()? as i64)
    }

    pub fn eval_complex(&self, s: num_complex::Complex64) -> num_complex::Complex64 {
        self.num.eval_complex(s) / self.den.eval_complex(s)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;

    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::new(num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;

    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;

    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;

    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

/// Dense matrix of reduced rational functions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunctionMatrix {
    rows: usize,
    cols: usize,
    data: Vec<RationalFunction>,
}

impl RationalFunctionMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![RationalFunction::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RationalFunction) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_poly_matrix(p: &PolyMatrix) -> Self {
        Self::from_fn(p.rows(), p.cols(), |i, j| RationalFunction::from_poly(p.get(i, j).clone()))
    }

    pub fn from_constant(m: &Matrix) -> Self {
        Self::from_fn(m.rows(), m.cols(), |i, j| RationalFunction::constant(m.get(i, j).clone()))
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

    pub fn get(&self, i: usize, j: usize) -> &RationalFunction {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RationalFunction) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[RationalFunction] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RationalFunction::is_zero)
    }

    pub fn columns(&self, start: usize, count: usize) -> Self {
        Self::from_fn(self.rows, count, |i, j| self.get(i, start + j).clone())
    }

    pub fn checked_mul(&self, rhs: &RationalFunctionMatrix) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(crate::error::mismatch("rational matrix product", self.cols, rhs.rows));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
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

    pub fn checked_sub(&self, rhs: &RationalFunctionMatrix) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(crate::error::mismatch(
                "rational matrix difference",
                format!("{:?}", self.shape()),
                format!("{:?}", rhs.shape()),
            ));
        }
        Ok(Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - rhs.get(i, j)))
    }

    pub fn eval_complex(&self, s: num_complex::Complex64) -> Vec<Vec<num_complex::Complex64>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).eval_complex(s)).collect())
            .collect()
    }
}

impl fmt::Display for RationalFunctionMatrix {
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

/// Properness, pole polynomial and stability of a rational matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub proper: bool,
    #[serde(with = "crate::format::serde_poly")]
    pub pole_polynomial: Polynomial,
    pub stable: bool,
    pub pole_report: HurwitzReport,
}

pub fn classify(mn: &RationalFunctionMatrix) -> Result<Classification> {
    let proper = mn.entries().iter().all(RationalFunction::is_proper);
    let pole_polynomial = mn
        .entries()
        .iter()
        .try_fold(Polynomial::one(), |acc, e| acc.lcm(e.den()))?;
    let pole_report = is_hurwitz(&pole_polynomial)?;
    Ok(Classification {
        proper,
        stable: pole_report.is_hurwitz,
        pole_polynomial,
        pole_report,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub solvable_over_field: bool,
    /// `[M N]`, present exactly when solvable.
    #[serde(with = "crate::format::serde_rfmatrix::opt")]
    pub mn: Option<RationalFunctionMatrix>,
    pub residual_zero: bool,
    pub classification: Option<Classification>,
    pub normal_rank_p: usize,
    /// `(n + p) - normrank P`: degrees of freedom of the solution family.
    pub left_kernel_dim: usize,
    pub n: usize,
}

impl WitnessReport {
    pub fn is_proper(&self) -> bool {
        self.classification.as_ref().is_some_and(|c| c.proper)
    }

    pub fn is_stable(&self) -> bool {
        self.classification.as_ref().is_some_and(|c| c.stable)
    }

    pub fn m_part(&self) -> Option<RationalFunctionMatrix> {
        self.mn.as_ref().map(|mn| mn.columns(0, self.n))
    }

    pub fn n_part(&self) -> Option<RationalFunctionMatrix> {
        self.mn.as_ref().map(|mn| mn.columns(self.n, mn.cols() - self.n))
    }
}

/// Canonical solution of `X P = [E F]` over Q(s) through the Smith form.
///
/// With `U P V = S`, the equation becomes `(X U^{-1}) S = [E F] V`; it is
/// consistent iff `[E F] V` vanishes on the zero columns of `S`, and then
/// `X = [E F] V S^† U` where `S^†` inverts the nonzero diagonal.
pub fn solve_over_field(sys: &SystemSextuple) -> Result<WitnessReport> {
    let (p, _) = build_system_matrices(sys);
    let smith = smith_form(&p);
    let rank = smith.rank();
    let (rows, cols) = p.shape();
    let ef = PolyMatrix::from_constant(&sys.ef());
    let g = &ef * &smith.v;
    let consistent = (0..g.rows()).all(|i| (rank..cols).all(|j| g.get(i, j).is_zero()));
    let left_kernel_dim = rows - normal_rank(&p);
    if !consistent {
        return Ok(WitnessReport {
            solvable_over_field: false,
            mn: None,
            residual_zero: false,
            classification: None,
            normal_rank_p: rank,
            left_kernel_dim,
            n: sys.n(),
        });
    }
    let mut pinv = RationalFunctionMatrix::zeros(cols, rows);
    for (k, alpha) in smith.invariant_polys.iter().enumerate() {
        pinv.set(k, k, RationalFunction::new(Polynomial::one(), alpha.clone())?);
    }
    let g = RationalFunctionMatrix::from_poly_matrix(&g);
    let u = RationalFunctionMatrix::from_poly_matrix(&smith.u);
    let mn = g.checked_mul(&pinv)?.checked_mul(&u)?;
    let residual = mn
        .checked_mul(&RationalFunctionMatrix::from_poly_matrix(&p))?
        .checked_sub(&RationalFunctionMatrix::from_constant(&sys.ef()))?;
    let residual_zero = residual.is_zero();
    let classification = classify(&mn)?;
    Ok(WitnessReport {
        solvable_over_field: true,
        mn: Some(mn),
        residual_zero,
        classification: Some(classification),
        normal_rank_p: rank,
        left_kernel_dim,
        n: sys.n(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub consistent: bool,
    pub strongly_detectable: bool,
    pub strong_star_detectable: bool,
    pub solvable_over_field: bool,
    pub residual_zero: bool,
    pub witness_proper_stable: bool,
}

/// One-directional checks between the verdicts and the constructed witness:
/// strong detectability needs field solvability, and a proper stable
/// witness certifies both verdicts. A particular witness may still be
/// improper or unstable when some other solution is not.
pub fn decision_consistency(sys: &SystemSextuple) -> Result<ConsistencyReport> {
    let strong = strongly_functional_detectable(sys)?.holds;
    let star = strong_star_functional_detectable(sys)?.holds;
    let w = solve_over_field(sys)?;
    let witness_proper_stable = w.is_proper() && w.is_stable();
    let mut consistent = !strong || w.solvable_over_field;
    consistent &= !star || strong;
    consistent &= !witness_proper_stable || (strong && star);
    consistent &= !w.solvable_over_field || w.residual_zero;
    Ok(ConsistencyReport {
        consistent,
        strongly_detectable: strong,
        strong_star_detectable: star,
        solvable_over_field: w.solvable_over_field,
        residual_zero: w.residual_zero,
        witness_proper_stable,
    })
}

/// Multiplies every entry by `1 / (tau s + 1)^k`, with `k` the largest
/// excess of numerator over denominator degree, so the result is proper.
/// Returns the filtered matrix and `k`.
pub fn properize(mn: &RationalFunctionMatrix, tau: &Rational) -> Result<(RationalFunctionMatrix, usize)> {
    if tau <= &Rational::zero() {
        return Err(Error::InvalidScenario("filter time constant must be positive".into()));
    }
    let k = mn
        .entries()
        .iter()
        .filter_map(RationalFunction::relative_degree_excess)
        .max()
        .unwrap_or(0)
        .max(0) as usize;
    let filter_den = Polynomial::new(vec![Rational::one(), tau.clone()]).pow(k);
    let filter = RationalFunction::new(Polynomial::one(), filter_den)?;
    let out = RationalFunctionMatrix::from_fn(mn.rows(), mn.cols(), |i, j| mn.get(i, j) * &filter);
    Ok((out, k))
}
