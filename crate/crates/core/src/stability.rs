//! Exact root-location tests over the closed right half-plane.
//!
//! The antistable region is `Re s >= 0`, so imaginary-axis roots count as
//! unstable and a degenerate Routh array is a failure rather than a special
//! case to resolve.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::Rational;
use crate::polymat::{poly_gcd, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HurwitzFailure {
    NonpositiveCoefficient,
    RouthDegeneracy,
    SignChange,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HurwitzReport {
    pub is_hurwitz: bool,
    pub failure_reason: Option<HurwitzFailure>,
    #[serde(with = "crate::format::serde_rational::vec")]
    pub routh_first_column: Vec<Rational>,
}

/// Routh test: every root of `p` has strictly negative real part.
///
/// Nonzero constants pass (no roots).
pub fn is_hurwitz(p: &Polynomial) -> Result<HurwitzReport> {
    let Some(degree) = p.degree() else {
        return Err(Error::ZeroPolynomial("is_hurwitz"));
    };
    let p = if p.leading().is_some_and(Signed::is_negative) { -p } else { p.clone() };
    if degree == 0 {
        return Ok(HurwitzReport {
            is_hurwitz: true,
            failure_reason: None,
            routh_first_column: vec![p.coeff(0)],
        });
    }
    if p.coeffs().iter().any(|c| !c.is_positive()) {
        return Ok(HurwitzReport {
            is_hurwitz: false,
            failure_reason: Some(HurwitzFailure::NonpositiveCoefficient),
            routh_first_column: Vec::new(),
        });
    }

    // descending coefficients a_n, a_{n-1}, ..., a_0
    let desc: Vec<Rational> = p.coeffs().iter().rev().cloned().collect();
    let width = degree / 2 + 1;
    let row_from = |start: usize| -> Vec<Rational> {
        (0..width)
            .map(|k| desc.get(start + 2 * k).cloned().unwrap_or_else(Rational::zero))
            .collect()
    };
    let mut prev = row_from(0);
    let mut cur = row_from(1);
    let mut first_column = vec![prev[0].clone(), cur[0].clone()];

    for _ in 2..=degree {
        if cur[0].is_zero() {
            return Ok(HurwitzReport {
                is_hurwitz: false,
                failure_reason: Some(HurwitzFailure::RouthDegeneracy),
                routh_first_column: first_column,
            });
        }
        let next: Vec<Rational> = (0..width)
            .map(|j| {
                let a = prev.get(j + 1).cloned().unwrap_or_else(Rational::zero);
                let b = cur.get(j + 1).cloned().unwrap_or_else(Rational::zero);
                (&cur[0] * &a - &prev[0] * &b) / &cur[0]
            })
            .collect();
        first_column.push(next[0].clone());
        prev = cur;
        cur = next;
    }

    let failure = first_column.iter().find(|v| !v.is_positive()).map(|v| {
        if v.is_zero() {
            HurwitzFailure::RouthDegeneracy
        } else {
            HurwitzFailure::SignChange
        }
    });
    Ok(HurwitzReport {
        is_hurwitz: failure.is_none(),
        failure_reason: failure,
        routh_first_column: first_column,
    })
}

/// Result of comparing the closed-right-half-plane root multisets of two
/// polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AntistableComparison {
    pub equal: bool,
    #[serde(with = "crate::format::serde_poly")]
    pub gcd: Polynomial,
    #[serde(with = "crate::format::serde_poly")]
    pub left_quotient: Polynomial,
    #[serde(with = "crate::format::serde_poly")]
    pub right_quotient: Polynomial,
    pub left_report: HurwitzReport,
    pub right_report: HurwitzReport,
}

/// Equality of the antistable root multisets of `p` and `q`.
///
/// With `g = gcd(p, q)` the quotients `p/g` and `q/g` are coprime, so their
/// antistable parts agree only when both are empty; `g` contributes the same
/// roots to each side.
pub fn antistable_parts_equal(p: &Polynomial, q: &Polynomial) -> Result<AntistableComparison> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial("antistable_parts_equal"));
    }
    let g = poly_gcd(p, q)?;
    let left_quotient = p.exact_div(&g)?;
    let right_quotient = q.exact_div(&g)?;
    let left_report = is_hurwitz(&left_quotient)?;
    let right_report = is_hurwitz(&right_quotient)?;
    Ok(AntistableComparison {
        equal: left_report.is_hurwitz && right_report.is_hurwitz,
        gcd: g,
        left_quotient,
        right_quotient,
        left_report,
        right_report,
    })
}
