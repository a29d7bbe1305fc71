
use super::matrix::PolyMatrix;
use super::poly::Polynomial;

/// `U * P * V = S` with `U`, `V` unimodular and `S` the Smith form of `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: PolyMatrix,
    pub s: PolyMatrix,
    pub v: PolyMatrix,
    /// Nonzero diagonal entries of `S`, monic, each dividing the next.
    pub invariant_polys: Vec<Polynomial>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.invariant_polys.len()
    }

    /// Re-checks every structural claim by exact arithmetic.
    pub fn verify(&self, p: &PolyMatrix) -> bool {
        let (r, c) = p.shape();
        if self.u.shape() != (r, r) || self.v.shape() != (c, c) || self.s.shape() != (r, c) {
            return false;
        }
        if &(&self.u * p) * &self.v != self.s {
            return false;
        }
        let unimodular = |m: &PolyMatrix| m.det().is_ok_and(|d| !d.is_zero() && d.is_constant());
        if !unimodular(&self.u) || !unimodular(&self.v) {
            return false;
        }
        let k = self.invariant_polys.len();
        for i in 0..r {
            for j in 0..c {
                let e = self.s.get(i, j);
                let expected = if i == j && i < k {
                    &self.invariant_polys[i]
                } else {
                    &Polynomial::zero()
                };
                if e != expected {
                    return false;
                }
            }
        }
        self.invariant_polys.iter().all(Polynomial::is_monic)
            && self.invariant_polys.windows(2).all(|w| w[0].divides(&w[1]))
    }
}

/// Smith normal form by gcd-driven elementary row and column operations.
///
/// At each diagonal position the lowest-degree entry of the trailing block is
/// moved to the pivot, the pivot row and column are reduced by division with
/// remainder, and any entry the pivot fails to divide is folded into the
/// pivot row. Degrees strictly drop on every restart, so the loop ends.
pub fn smith_form(p: &PolyMatrix) -> SmithDecomposition {
    let (rows, cols) = p.shape();
    let mut s = p.clone();
    let mut u = PolyMatrix::identity(rows);
    let mut v = PolyMatrix::identity(cols);
    let mut invariant_polys = Vec::new();

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_degree_entry(&s, t) else {
            break;
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            let pivot = s.get(t, t).clone();
            for i in t + 1..rows {
                if s.get(i, t).is_zero() {
                    continue;
                }
                let (q, r) = s.get(i, t).div_rem(&pivot).expect("nonzero pivot");
                let neg_q = -&q;
                s.add_row_multiple(i, t, &neg_q);
                u.add_row_multiple(i, t, &neg_q);
                dirty |= !r.is_zero();
            }
            for j in t + 1..cols {
                if s.get(t, j).is_zero() {
                    continue;
                }
                let (q, r) = s.get(t, j).div_rem(&pivot).expect("nonzero pivot");
                let neg_q = -&q;
                s.add_col_multiple(j, t, &neg_q);
                v.add_col_multiple(j, t, &neg_q);
                dirty |= !r.is_zero();
            }
            if dirty {
                // a remainder of lower degree than the pivot is now in row/col t
                let (pi, pj) = min_degree_in_cross(&s, t);
                s.swap_rows(t, pi);
                u.swap_rows(t, pi);
                s.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !pivot.divides(s.get(i, j))));
            match offender {
                Some(i) => {
                    s.add_row_multiple(t, i, &Polynomial::one());
                    u.add_row_multiple(t, i, &Polynomial::one());
                }
                None => break,
            }
        }

        let lc = s.get(t, t).leading().expect("nonzero pivot").recip();
        s.scale_row(t, &lc);
        u.scale_row(t, &lc);
        invariant_polys.push(s.get(t, t).clone());
    }

    SmithDecomposition {
        u,
        s,
        v,
        invariant_polys,
    }
}

fn min_degree_entry(s: &PolyMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            if let Some(d) = s.get(i, j).degree() {
                if best.is_none_or(|(_, _, bd)| d < bd) {
                    best = Some((i, j, d));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn min_degree_in_cross(s: &PolyMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t, s.get(t, t).degree().expect("nonzero pivot"));
    for i in t + 1..s.rows() {
        if let Some(d) = s.get(i, t).degree() {
            if d < best.2 {
                best = (i, t, d);
            }
        }
    }
    for j in t + 1..s.cols() {
        if let Some(d) = s.get(t, j).degree() {
            if d < best.2 {
                best = (t, j, d);
            }
        }
    }
    (best.0, best.1)
}

/// Monic product of the nonzero invariant polynomials; its roots are the
/// invariant zeros with multiplicity.
pub fn zero_polynomial(p: &PolyMatrix) -> Polynomial {
    smith_form(p)
        .invariant_polys
        .iter()
        .fold(Polynomial::one(), |acc, a| &acc * a)
}
