//! Polynomials over Q, polynomial matrices, normal rank and Smith form.

mod matrix;
mod poly;
mod smith;

pub use matrix::{normal_rank, PolyMatrix};
pub use poly::{poly_gcd, Polynomial};
pub use smith::{smith_form, zero_polynomial, SmithDecomposition};

use crate::system::SystemSextuple;

/// Rosenbrock matrices `P = [sI - A, -B; C, D]` and `P_e = [P; E F]`.
pub fn build_system_matrices(sys: &SystemSextuple) -> (PolyMatrix, PolyMatrix) {
    let n = sys.n();
    let lead = crate::exactlin::Matrix::identity(n);
    let top_left = PolyMatrix::pencil(&lead, &-sys.a()).expect("square A");
    let top = top_left
        .hstack(&PolyMatrix::from_constant(&-sys.b()))
        .expect("B has n rows");
    let bottom = PolyMatrix::from_constant(&sys.c().hstack(sys.d()).expect("C, D share rows"));
    let p = top.vstack(&bottom).expect("consistent widths");
    let ef = PolyMatrix::from_constant(&sys.e().hstack(sys.f()).expect("E, F share rows"));
    let pe = p.vstack(&ef).expect("consistent widths");
    (p, pe)
}

/// `[sI - A; C]`.
pub fn observability_pencil(sys: &SystemSextuple) -> PolyMatrix {
    let n = sys.n();
    let top = PolyMatrix::pencil(&crate::exactlin::Matrix::identity(n), &-sys.a()).expect("square A");
    top.vstack(&PolyMatrix::from_constant(sys.c())).expect("C has n columns")
}

/// Zero polynomial of `[sI - A; C]`; its roots are the (A, C)-unobservable
/// eigenvalues.
pub fn output_decoupling_zero_polynomial(sys: &SystemSextuple) -> Polynomial {
    zero_polynomial(&observability_pencil(sys))
}
