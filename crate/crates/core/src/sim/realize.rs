use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::exactlin::rational::to_f64;
use crate::polymat::Polynomial;
use crate::witness::{classify, RationalFunctionMatrix};

/// Observer `ξ' = Gξ + Hy`, `ẑ = Qξ + Ry` of order `ν = rows(G)`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateSpaceRealization {
    pub g: DMatrix<f64>,
    pub h: DMatrix<f64>,
    pub q: DMatrix<f64>,
    pub r: DMatrix<f64>,
}

impl StateSpaceRealization {
    pub fn new(g: DMatrix<f64>, h: DMatrix<f64>, q: DMatrix<f64>, r: DMatrix<f64>) -> Result<Self> {
        let nu = g.nrows();
        let ok = g.ncols() == nu
            && h.nrows() == nu
            && q.ncols() == nu
            && r.nrows() == q.nrows()
            && r.ncols() == h.ncols();
        if !ok {
            return Err(crate::error::mismatch(
                "observer realization",
                "G nu x nu, H nu x p, Q q x nu, R q x p",
                format!("{:?} {:?} {:?} {:?}", g.shape(), h.shape(), q.shape(), r.shape()),
            ));
        }
        Ok(Self { g, h, q, r })
    }

    /// Memoryless observer `ẑ = R y`.
    pub fn static_gain(r: DMatrix<f64>) -> Self {
        let (q, p) = r.shape();
        Self {
            g: DMatrix::zeros(0, 0),
            h: DMatrix::zeros(0, p),
            q: DMatrix::zeros(q, 0),
            r,
        }
    }

    pub fn order(&self) -> usize {
        self.g.nrows()
    }

    pub fn input_dim(&self) -> usize {
        self.h.ncols()
    }

    pub fn output_dim(&self) -> usize {
        self.q.nrows()
    }

    /// `Q (sI - G)^{-1} H + R` at a complex point.
    pub fn transfer_at(&self, s: num_complex::Complex64) -> DMatrix<num_complex::Complex64> {
        let c = |m: &DMatrix<f64>| m.map(|v| num_complex::Complex64::new(v, 0.0));
        let nu = self.order();
        let r = c(&self.r);
        if nu == 0 {
            return r;
        }
        let resolvent = DMatrix::<num_complex::Complex64>::identity(nu, nu) * s - c(&self.g);
        let x = resolvent.lu().solve(&c(&self.h)).expect("s is not an eigenvalue of G");
        c(&self.q) * x + r
    }

    /// Largest real part among the eigenvalues of `G`; `-inf` when `ν = 0`.
    pub fn spectral_abscissa(&self) -> f64 {
        spectral_abscissa(&self.g)
    }
}

pub fn spectral_abscissa(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 0 {
        return f64::NEG_INFINITY;
    }
    m.complex_eigenvalues()
        .iter()
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Column-wise controllable-canonical realization of a proper stable
/// transfer matrix.
///
/// Column `j` uses the monic lcm `d_j` of its denominators: a companion block
/// for `d_j`, input vector `e_last`, and output rows given by the remainders
/// of `N_ij d_j` modulo `d_j`. The quotients form `R = N(∞)`.
pub fn realize(n: &RationalFunctionMatrix) -> Result<StateSpaceRealization> {
    let class = classify(n)?;
    if !class.proper {
        return Err(Error::NotProper(format!(
            "some entry has numerator degree above denominator degree (pole polynomial {})",
            class.pole_polynomial
        )));
    }
    if !class.stable {
        return Err(Error::NotStable(format!(
            "pole polynomial {} has a root with nonnegative real part",
            class.pole_polynomial
        )));
    }
    let (q, p) = n.shape();
    let mut blocks = Vec::with_capacity(p);
    for j in 0..p {
        let den = (0..q).try_fold(Polynomial::one(), |acc, i| acc.lcm(n.get(i, j).den()))?;
        let nu = den.degree().unwrap_or(0);
        let mut q_rows = DMatrix::zeros(q, nu);
        let mut r_col = vec![0.0; q];
        for i in 0..q {
            let e = n.get(i, j);
            let scaled = e.num() * &den.exact_div(e.den())?;
            let (quot, rem) = scaled.div_rem(&den)?;
            debug_assert!(quot.is_constant());
            r_col[i] = to_f64(&quot.coeff(0));
            for k in 0..nu {
                q_rows[(i, k)] = to_f64(&rem.coeff(k));
            }
        }
        let mut g = DMatrix::zeros(nu, nu);
        for k in 0..nu.saturating_sub(1) {
            g[(k, k + 1)] = 1.0;
        }
        if nu > 0 {
            for k in 0..nu {
                g[(nu - 1, k)] = -to_f64(&den.coeff(k));
            }
        }
        blocks.push((g, q_rows, r_col));
    }
    let total: usize = blocks.iter().map(|b| b.0.nrows()).sum();
    let mut g = DMatrix::zeros(total, total);
    let mut h = DMatrix::zeros(total, p);
    let mut qm = DMatrix::zeros(q, total);
    let mut r = DMatrix::zeros(q, p);
    let mut offset = 0;
    for (j, (gj, qj, rj)) in blocks.into_iter().enumerate() {
        let nu = gj.nrows();
        g.view_mut((offset, offset), (nu, nu)).copy_from(&gj);
        if nu > 0 {
            h[(offset + nu - 1, j)] = 1.0;
        }
        qm.view_mut((0, offset), (q, nu)).copy_from(&qj);
        for i in 0..q {
            r[(i, j)] = rj[i];
        }
        offset += nu;
    }
    StateSpaceRealization::new(g, h, qm, r)
}
