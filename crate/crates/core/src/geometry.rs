//! Extended system and invariant-subspace computations behind the
//! properness (strong-star) test.

use serde::{Deserialize, Serialize};

use crate::error::{mismatch, Error, Result};
use crate::exactlin::{image_basis, kernel_basis, preimage, Matrix, Subspace};
use crate::system::SystemSextuple;

/// `A_e = [A B; 0 0]`, `B_e = [0; I_m]`, `C_e = [C D]`, `EF_e = [E F]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedSystem {
    pub a_e: Matrix,
    pub b_e: Matrix,
    pub c_e: Matrix,
    pub ef_e: Matrix,
}

pub fn extend(sys: &SystemSextuple) -> ExtendedSystem {
    let (n, m) = (sys.n(), sys.m());
    let a_e = Matrix::block2x2(sys.a(), sys.b(), &Matrix::zeros(m, n), &Matrix::zeros(m, m))
        .expect("consistent plant");
    let b_e = Matrix::zeros(n, m).vstack(&Matrix::identity(m)).expect("m columns");
    ExtendedSystem {
        a_e,
        b_e,
        c_e: sys.cd(),
        ef_e: sys.ef(),
    }
}

/// Supremal `(A_e, B_e)`-invariant subspace inside `k`, by the decreasing
/// iteration `V^0 = K`, `V^{i+1} = K ∩ A_e^{-1}(Im B_e + V^i)`.
///
/// Returns the limit and the number of strict decreases before it. The
/// iteration is capped at `dim K + 1` passes and a missing fixed point is an
/// error.
pub fn vstar(a_e: &Matrix, b_e: &Matrix, k: &Subspace) -> Result<(Subspace, usize)> {
    let d = k.ambient_dim();
    if a_e.shape() != (d, d) {
        return Err(mismatch("vstar A_e", format!("{d}x{d}"), format!("{:?}", a_e.shape())));
    }
    if b_e.rows() != d {
        return Err(mismatch("vstar B_e rows", d, b_e.rows()));
    }
    let im_b = image_basis(b_e);
    let mut current = k.clone();
    for step in 0..=k.dim() {
        let next = k.intersect(&preimage(a_e, &im_b.sum(&current)?)?)?;
        debug_assert!(next.is_subspace_of(&current)?, "V-star sequence must not grow");
        if next == current {
            return Ok((current, step));
        }
        current = next;
    }
    Err(Error::NoFixedPoint(k.dim() + 1))
}

/// Reachable subspace of the extended system with the trajectory held in
/// `k`: `R^0 = K ∩ Im B_e`, `R^{i+1} = K ∩ (A_e R^i + Im B_e)`.
///
/// The sequence grows, so it settles within `dim K` steps.
pub fn constrained_reachable(a_e: &Matrix, b_e: &Matrix, k: &Subspace) -> Result<(Subspace, usize)> {
    let d = k.ambient_dim();
    if a_e.shape() != (d, d) || b_e.rows() != d {
        return Err(mismatch("constrained_reachable", d, format!("{:?}", a_e.shape())));
    }
    let im_b = image_basis(b_e);
    let mut current = k.intersect(&im_b)?;
    for step in 0..=k.dim() {
        let next = k.intersect(&current.image_under(a_e)?.sum(&im_b)?)?;
        debug_assert!(current.is_subspace_of(&next)?, "reachable sequence must not shrink");
        if next == current {
            return Ok((current, step));
        }
        current = next;
    }
    Err(Error::NoFixedPoint(k.dim() + 1))
}

/// Certificate of the properness test for `[M N] P = [E F]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongStarCertificate {
    pub holds: bool,
    /// Trajectories of the extended system that keep `C_e ψ = 0` sweep out
    /// this subspace; properness needs it inside `Ker [E F]`.
    #[serde(with = "crate::format::serde_subspace")]
    pub reachable_in_ker_cd: Subspace,
    pub reachable_steps: usize,
    #[serde(with = "crate::format::serde_subspace")]
    pub ker_ef: Subspace,
    #[serde(with = "crate::format::serde_subspace")]
    pub vstar_cd: Subspace,
    #[serde(with = "crate::format::serde_subspace")]
    pub vstar_ef: Subspace,
    #[serde(with = "crate::format::serde_subspace")]
    pub vstar_cd_cap_im_be: Subspace,
    #[serde(with = "crate::format::serde_subspace")]
    pub vstar_ef_cap_im_be: Subspace,
    /// `V*_{C,D} ∩ Im B_e ⊆ V*_{E,F} ∩ Im B_e`, reported for reference.
    pub vstar_intersection_inclusion: bool,
}

/// Decides whether `[M N] P = [E F]` admits a proper solution.
///
/// The verdict is `R* ⊆ Ker [E F]`, where `R*` is the largest set of
/// extended states reachable from the origin along trajectories with
/// `C_e ψ_i = 0`. That is the finite form of `Ker M^k_{C,D} ⊆ Ker M^k_{E,F}`
/// for every `k`. The supremal invariant subspaces and their intersections
/// with `Im B_e` go into the certificate as well.
pub fn strong_star_inclusion(sys: &SystemSextuple) -> Result<StrongStarCertificate> {
    let ext = extend(sys);
    let ker_cd = kernel_basis(&ext.c_e);
    let ker_ef = kernel_basis(&ext.ef_e);
    let (reach, reachable_steps) = constrained_reachable(&ext.a_e, &ext.b_e, &ker_cd)?;
    let holds = reach.is_subspace_of(&ker_ef)?;

    let im_b = image_basis(&ext.b_e);
    let (vstar_cd, _) = vstar(&ext.a_e, &ext.b_e, &ker_cd)?;
    let (vstar_ef, _) = vstar(&ext.a_e, &ext.b_e, &ker_ef)?;
    let vstar_cd_cap_im_be = vstar_cd.intersect(&im_b)?;
    let vstar_ef_cap_im_be = vstar_ef.intersect(&im_b)?;
    let vstar_intersection_inclusion = vstar_cd_cap_im_be.is_subspace_of(&vstar_ef_cap_im_be)?;

    Ok(StrongStarCertificate {
        holds,
        reachable_in_ker_cd: reach,
        reachable_steps,
        ker_ef,
        vstar_cd,
        vstar_ef,
        vstar_cd_cap_im_be,
        vstar_ef_cap_im_be,
        vstar_intersection_inclusion,
    })
}
