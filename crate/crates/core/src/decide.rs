//! Decision procedures for functional detectability and its strong
//! variants, each returning a verdict with the exact objects that justify it.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exactlin::{kernel_basis, Matrix, Rational};
use crate::geometry::{strong_star_inclusion, StrongStarCertificate};
use crate::markov::{default_kmax, kernel_inclusion_upto, KernelInclusionReport};
use crate::polymat::{
    build_system_matrices, normal_rank, output_decoupling_zero_polynomial, poly_gcd,
    zero_polynomial, PolyMatrix, Polynomial,
};
use crate::stability::{antistable_parts_equal, is_hurwitz, AntistableComparison, HurwitzReport};
use crate::system::SystemSextuple;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    FunctionalDetectable,
    StronglyFunctionalDetectable,
    StrongStarFunctionalDetectable,
    HautusStrongDetectable,
    HautusStrongStarDetectable,
    AsymptStrongLeftInvertible,
    AsymptStrongStarLeftInvertible,
    DarouachFixedOrder,
}

impl Property {
    pub const ALL: [Property; 8] = [
        Property::FunctionalDetectable,
        Property::StronglyFunctionalDetectable,
        Property::StrongStarFunctionalDetectable,
        Property::HautusStrongDetectable,
        Property::HautusStrongStarDetectable,
        Property::AsymptStrongLeftInvertible,
        Property::AsymptStrongStarLeftInvertible,
        Property::DarouachFixedOrder,
    ];

    /// Short tag used in terminal output.
    pub fn short(self) -> &'static str {
        match self {
            Property::FunctionalDetectable => "functional",
            Property::StronglyFunctionalDetectable => "strong",
            Property::StrongStarFunctionalDetectable => "strong-star",
            Property::HautusStrongDetectable => "hautus-strong",
            Property::HautusStrongStarDetectable => "hautus-strong-star",
            Property::AsymptStrongLeftInvertible => "left-invertible",
            Property::AsymptStrongStarLeftInvertible => "left-invertible-star",
            Property::DarouachFixedOrder => "fixed-order",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Property::FunctionalDetectable => "functional detectable",
            Property::StronglyFunctionalDetectable => "strongly functional detectable",
            Property::StrongStarFunctionalDetectable => "strong-star functional detectable",
            Property::HautusStrongDetectable => "strongly detectable (state)",
            Property::HautusStrongStarDetectable => "strong-star detectable (state)",
            Property::AsymptStrongLeftInvertible => "asymptotically strongly left invertible",
            Property::AsymptStrongStarLeftInvertible => "asymptotically strong-star left invertible",
            Property::DarouachFixedOrder => "fixed-order functional observer conditions",
        }
    }
}

/// A named yes/no condition that contributed to a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub holds: bool,
}

/// Witness for a failed constant kernel inclusion `Ker L ⊆ Ker R`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelInclusion {
    pub holds: bool,
    #[serde(with = "crate::format::serde_matrix")]
    pub left: Matrix,
    #[serde(with = "crate::format::serde_matrix")]
    pub right: Matrix,
    #[serde(with = "crate::format::serde_rational::opt_vec")]
    pub violating_vector: Option<Vec<Rational>>,
}

pub fn constant_kernel_inclusion(left: &Matrix, right: &Matrix) -> Result<KernelInclusion> {
    let ker = kernel_basis(left);
    let mut violating_vector = None;
    for v in ker.basis_vectors() {
        if right.mul_vec(&v)?.iter().any(|x| !num_traits::Zero::is_zero(x)) {
            violating_vector = Some(v);
            break;
        }
    }
    Ok(KernelInclusion {
        holds: violating_vector.is_none(),
        left: left.clone(),
        right: right.clone(),
        violating_vector,
    })
}

/// Everything needed to re-check a verdict without rerunning the decision.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub conditions: Vec<Condition>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failing_condition: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal_rank_p: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal_rank_pe: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "crate::format::serde_poly::opt")]
    pub zero_polynomial_p: Option<Polynomial>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "crate::format::serde_poly::opt")]
    pub zero_polynomial_pe: Option<Polynomial>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "crate::format::serde_poly::opt")]
    pub output_decoupling_polynomial: Option<Polynomial>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antistable: Option<AntistableComparison>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hurwitz: Option<HurwitzReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strong_star: Option<StrongStarCertificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub toeplitz: Option<KernelInclusionReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel_inclusion: Option<KernelInclusion>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduced: Option<Box<Certificate>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Certificate {
    fn push(&mut self, name: &str, holds: bool) {
        self.conditions.push(Condition {
            name: name.to_string(),
            holds,
        });
        if !holds && self.failing_condition.is_none() {
            self.failing_condition = Some(name.to_string());
        }
    }

    fn all_hold(&self) -> bool {
        self.conditions.iter().all(|c| c.holds)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub property: Property,
    pub holds: bool,
    pub certificate: Certificate,
}

impl Verdict {
    fn from_certificate(property: Property, certificate: Certificate) -> Self {
        Verdict {
            property,
            holds: certificate.all_hold(),
            certificate,
        }
    }
}

/// Normal-rank equality of `P` and `P_e` plus equal antistable invariant
/// zeros (with multiplicity).
pub fn strongly_functional_detectable(sys: &SystemSextuple) -> Result<Verdict> {
    let (p, pe) = build_system_matrices(sys);
    let mut cert = Certificate::default();
    let rank_p = normal_rank(&p);
    let rank_pe = normal_rank(&pe);
    let zp = zero_polynomial(&p);
    let zpe = zero_polynomial(&pe);
    let cmp = antistable_parts_equal(&zp, &zpe)?;
    cert.push("normal_rank_equal", rank_p == rank_pe);
    cert.push("antistable_zeros_equal", cmp.equal);
    cert.normal_rank_p = Some(rank_p);
    cert.normal_rank_pe = Some(rank_pe);
    cert.zero_polynomial_p = Some(zp);
    cert.zero_polynomial_pe = Some(zpe);
    cert.antistable = Some(cmp);
    if sys.q() == 0 {
        cert.notes.push("no estimated output: holds vacuously".into());
    }
    Ok(Verdict::from_certificate(Property::StronglyFunctionalDetectable, cert))
}

/// Strong detectability plus existence of a proper solution of
/// `[M N] P = [E F]`.
pub fn strong_star_functional_detectable(sys: &SystemSextuple) -> Result<Verdict> {
    let strong = strongly_functional_detectable(sys)?;
    let mut cert = strong.certificate;
    let geo = strong_star_inclusion(sys)?;
    let toe = kernel_inclusion_upto(sys, default_kmax(sys))?;
    cert.push("proper_solution_exists", geo.holds);
    if geo.holds != toe.holds {
        cert.notes.push(format!(
            "geometric test ({}) and Toeplitz test up to k = {} ({}) disagree",
            geo.holds, toe.kmax, toe.holds
        ));
    }
    cert.strong_star = Some(geo);
    cert.toeplitz = Some(toe);
    Ok(Verdict::from_certificate(Property::StrongStarFunctionalDetectable, cert))
}

/// Known-input case: the strong test applied to `(A, C, E)` with the input
/// channel removed.
pub fn functional_detectable(sys: &SystemSextuple) -> Result<Verdict> {
    let reduced = strongly_functional_detectable(&sys.known_input_reduction())?;
    let mut cert = Certificate::default();
    cert.push("reduced_system_strongly_detectable", reduced.holds);
    cert.reduced = Some(Box::new(reduced.certificate));
    Ok(Verdict::from_certificate(Property::FunctionalDetectable, cert))
}

fn input_column(sys: &SystemSextuple) -> Matrix {
    (-sys.b()).vstack(sys.d()).expect("B, D share columns")
}

/// State reconstruction: `normrank P = n + rank [-B; D]` and every invariant
/// zero in the open left half-plane. `E`, `F` are ignored.
pub fn hautus_strong_detectable(sys: &SystemSextuple) -> Result<Verdict> {
    let (p, _) = build_system_matrices(sys);
    let rank_p = normal_rank(&p);
    let target = sys.n() + input_column(sys).rank();
    let zp = zero_polynomial(&p);
    let hw = is_hurwitz(&zp)?;
    let mut cert = Certificate::default();
    cert.push("normal_rank_is_n_plus_rank_input", rank_p == target);
    cert.push("invariant_zeros_stable", hw.is_hurwitz);
    cert.normal_rank_p = Some(rank_p);
    cert.target_rank = Some(target);
    cert.zero_polynomial_p = Some(zp);
    cert.hurwitz = Some(hw);
    Ok(Verdict::from_certificate(Property::HautusStrongDetectable, cert))
}

/// Adds `Ker [D 0; CB D] ⊆ Ker [0 0; B 0]` to the strong detectability test.
pub fn hautus_strong_star_detectable(sys: &SystemSextuple) -> Result<Verdict> {
    let strong = hautus_strong_detectable(sys)?;
    let mut cert = strong.certificate;
    let (n, m, p) = (sys.n(), sys.m(), sys.p());
    let cb = sys.c() * sys.b();
    let left = Matrix::block2x2(sys.d(), &Matrix::zeros(p, m), &cb, sys.d())?;
    let right = Matrix::block2x2(&Matrix::zeros(n, m), &Matrix::zeros(n, m), sys.b(), &Matrix::zeros(n, m))?;
    let inc = constant_kernel_inclusion(&left, &right)?;
    cert.push("kernel_inclusion_first_markov", inc.holds);
    cert.kernel_inclusion = Some(inc);
    Ok(Verdict::from_certificate(Property::HautusStrongStarDetectable, cert))
}

/// Input reconstruction: `normrank P = n + m` and the invariant zeros that
/// are not output-decoupling zeros lie in the open left half-plane.
///
/// The removal is multiplicity-wise: the zero polynomial is divided by its
/// gcd with the output-decoupling polynomial.
pub fn asympt_strong_left_invertible(sys: &SystemSextuple) -> Result<Verdict> {
    let (p, _) = build_system_matrices(sys);
    let rank_p = normal_rank(&p);
    let target = sys.n() + sys.m();
    let zp = zero_polynomial(&p);
    let od = output_decoupling_zero_polynomial(sys);
    let g = poly_gcd(&zp, &od)?;
    let quotient = zp.exact_div(&g)?;
    let hw = is_hurwitz(&quotient)?;
    let mut cert = Certificate::default();
    cert.push("normal_rank_is_n_plus_m", rank_p == target);
    cert.push("non_decoupling_zeros_stable", hw.is_hurwitz);
    cert.normal_rank_p = Some(rank_p);
    cert.target_rank = Some(target);
    cert.zero_polynomial_p = Some(zp);
    cert.output_decoupling_polynomial = Some(od);
    cert.hurwitz = Some(hw);
    cert.notes.push(format!(
        "decoupling zeros removed with multiplicity via gcd = {g}, remaining factor {quotient}"
    ));
    Ok(Verdict::from_certificate(Property::AsymptStrongLeftInvertible, cert))
}

/// Adds `rank D = m`.
pub fn asympt_strong_star_left_invertible(sys: &SystemSextuple) -> Result<Verdict> {
    let strong = asympt_strong_left_invertible(sys)?;
    let mut cert = strong.certificate;
    cert.push("feedthrough_full_column_rank", sys.d().rank() == sys.m());
    Ok(Verdict::from_certificate(Property::AsymptStrongStarLeftInvertible, cert))
}

/// `[E F 0; C D 0; CA CB D]`
fn fixed_order_stack(sys: &SystemSextuple) -> Result<Matrix> {
    let (m, p, q) = (sys.m(), sys.p(), sys.q());
    let row1 = sys.ef().hstack(&Matrix::zeros(q, m))?;
    let row2 = sys.cd().hstack(&Matrix::zeros(p, m))?;
    let ca = sys.c() * sys.a();
    let cb = sys.c() * sys.b();
    let row3 = ca.hstack(&cb)?.hstack(sys.d())?;
    row1.vstack(&row2)?.vstack(&row3)
}

/// Fixed-order (order `q`) functional observer conditions: the kernel
/// inclusion into `Ker [EA EB F]` and the rank equality over the closed right
/// half-plane. The latter is decided exactly through normal ranks and
/// antistable zeros, never by sampling `s`.
pub fn darouach_fixed_order(sys: &SystemSextuple) -> Result<Verdict> {
    let (n, m, p, q) = (sys.n(), sys.m(), sys.p(), sys.q());
    let stack = fixed_order_stack(sys)?;
    let ea = sys.e() * sys.a();
    let eb = sys.e() * sys.b();
    let target = ea.hstack(&eb)?.hstack(sys.f())?;
    let inc = constant_kernel_inclusion(&stack, &target)?;

    // [E(sI - A), -EB, 0; C, D, 0; CA, CB, D]
    let lead = sys.e().hstack(&Matrix::zeros(q, 2 * m))?;
    let lead = lead.vstack(&Matrix::zeros(2 * p, n + 2 * m))?;
    let top = (-&ea).hstack(&-&eb)?.hstack(&Matrix::zeros(q, m))?;
    let rest = stack.submatrix(q, 0, 2 * p, n + 2 * m);
    let constant = top.vstack(&rest)?;
    let pencil = PolyMatrix::pencil(&lead, &constant)?;
    let rank_pencil = normal_rank(&pencil);
    let rank_stack = stack.rank();
    let zl = zero_polynomial(&pencil);
    let zr = zero_polynomial(&PolyMatrix::from_constant(&stack));
    let cmp = antistable_parts_equal(&zl, &zr)?;

    let mut cert = Certificate::default();
    cert.push("kernel_inclusion_fixed_order", inc.holds);
    cert.push("rank_equality_closed_rhp", rank_pencil == rank_stack && cmp.equal);
    cert.normal_rank_p = Some(rank_pencil);
    cert.target_rank = Some(rank_stack);
    cert.zero_polynomial_p = Some(zl);
    cert.zero_polynomial_pe = Some(zr);
    cert.antistable = Some(cmp);
    cert.kernel_inclusion = Some(inc);
    if !sys.is_controllable() {
        cert.notes.push("plant is not controllable; the fixed-order conditions are reported regardless".into());
    }
    Ok(Verdict::from_certificate(Property::DarouachFixedOrder, cert))
}

/// Runs the procedure for a single property.
pub fn decide(property: Property, sys: &SystemSextuple) -> Result<Verdict> {
    match property {
        Property::FunctionalDetectable => functional_detectable(sys),
        Property::StronglyFunctionalDetectable => strongly_functional_detectable(sys),
        Property::StrongStarFunctionalDetectable => strong_star_functional_detectable(sys),
        Property::HautusStrongDetectable => hautus_strong_detectable(sys),
        Property::HautusStrongStarDetectable => hautus_strong_star_detectable(sys),
        Property::AsymptStrongLeftInvertible => asympt_strong_left_invertible(sys),
        Property::AsymptStrongStarLeftInvertible => asympt_strong_star_left_invertible(sys),
        Property::DarouachFixedOrder => darouach_fixed_order(sys),
    }
}

/// The three general verdicts: functional, strong, strong-star.
pub fn check_all(sys: &SystemSextuple) -> Result<Vec<Verdict>> {
    Ok(vec![
        functional_detectable(sys)?,
        strongly_functional_detectable(sys)?,
        strong_star_functional_detectable(sys)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(a: &[&[i64]], b: &[&[i64]], c: &[&[i64]], d: &[&[i64]], e: &[&[i64]], f: &[&[i64]]) -> SystemSextuple {
        SystemSextuple::new(
            Matrix::from_ints(a),
            Matrix::from_ints(b),
            Matrix::from_ints(c),
            Matrix::from_ints(d),
            Matrix::from_ints(e),
            Matrix::from_ints(f),
        )
        .unwrap()
    }

    #[test]
    fn measured_output_is_always_estimable() {
        let s = sys(&[&[1, 2], &[0, 3]], &[&[1], &[1]], &[&[1, 0]], &[&[0]], &[&[1, 0]], &[&[0]]);
        for v in check_all(&s).unwrap() {
            assert!(v.holds, "{:?}", v.property);
        }
    }

    #[test]
    fn unobservable_unstable_mode_fails_state_detection() {
        let s = SystemSextuple::without_input(Matrix::from_ints(&[[1]]), Matrix::from_ints(&[[0]]), Matrix::from_ints(&[[1]])).unwrap();
        let v = hautus_strong_detectable(&s).unwrap();
        assert!(!v.holds);
        assert_eq!(v.certificate.failing_condition.as_deref(), Some("invariant_zeros_stable"));
    }

    #[test]
    fn first_order_hautus_example() {
        let s = sys(&[&[-1]], &[&[1]], &[&[1]], &[&[0]], &[&[1]], &[&[0]]);
        let v = hautus_strong_detectable(&s).unwrap();
        assert!(v.holds);
        assert_eq!(v.certificate.normal_rank_p, Some(2));
        assert_eq!(v.certificate.target_rank, Some(2));
        assert_eq!(v.certificate.zero_polynomial_p, Some(Polynomial::one()));
    }

    #[test]
    fn empty_estimated_output_is_vacuous() {
        let s = SystemSextuple::new(
            Matrix::from_ints(&[[1]]),
            Matrix::from_ints(&[[1]]),
            Matrix::zeros(0, 1),
            Matrix::zeros(0, 1),
            Matrix::zeros(0, 1),
            Matrix::zeros(0, 1),
        )
        .unwrap();
        assert!(check_all(&s).unwrap().iter().all(|v| v.holds));
    }

    #[test]
    fn full_rank_feedthrough_with_full_output_is_strong_star() {
        let s = sys(&[&[-1, 0], &[0, -2]], &[&[1], &[0]], &[&[1, 0], &[0, 1]], &[&[1], &[0]], &[&[1, 1]], &[&[0]]);
        assert!(hautus_strong_star_detectable(&s).unwrap().holds);
        assert!(asympt_strong_star_left_invertible(&s).unwrap().holds);
    }
}
