//! Numerical oracle: the truncated weighted-shift representation of the
//! disc.
//!
//! For real `0 < q0 < 1`, `γ0 > 0`, `z` acts on `ℓ²(ℕ)` as a weighted
//! shift `z e_k = s_k e_{k+1}` with `s_k² = γ0 [k+1]_{q0}`, and `z*` as its
//! transpose. Truncating to `D` basis vectors breaks the disc relation only
//! in the top corner. A PBW monomial of total degree `M` applied to `e_k`
//! first lowers, then raises, and never leaves the truncated space when
//! `k ≤ D − 1 − M`; those columns are compared.

use nalgebra::DMatrix;
use num::{BigRational, ToPrimitive};

use crate::disc::DiscElement;
use crate::scalar::Scalar;
use crate::Error;

/// A scalar times an ordered product of disc elements, evaluated factor by
/// factor.
pub type Product = (Scalar, Vec<DiscElement>);

/// Entrywise tolerance of [`check_identity`], applied as
/// `|x − y| ≤ TOL · max(1, |x|, |y|)`.
pub const TOLERANCE: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct FockRep {
    dim: usize,
    q0: BigRational,
    g0: BigRational,
    z: DMatrix<f64>,
}

impl FockRep {
    pub fn new(q0: BigRational, g0: BigRational, dim: usize) -> Result<Self, Error> {
        let zero = BigRational::from_integer(0.into());
        let one = BigRational::from_integer(1.into());
        if q0 <= zero || q0 >= one {
            return Err(Error::InvalidFockParameters(format!(
                "q0 = {q0} must lie in (0, 1)"
            )));
        }
        if g0 <= zero {
            return Err(Error::InvalidFockParameters(format!(
                "gamma0 = {g0} must be positive"
            )));
        }
        if dim == 0 {
            return Err(Error::InvalidFockParameters(
                "dimension must be positive".into(),
            ));
        }
        let qf = q0.to_f64().expect("finite");
        let gf = g0.to_f64().expect("finite");
        let mut z = DMatrix::zeros(dim, dim);
        for k in 0..dim.saturating_sub(1) {
            z[(k + 1, k)] = Self::weight_sq(qf, gf, k).sqrt();
        }
        Ok(FockRep { dim, q0, g0, z })
    }

    /// Convenience constructor from `(num, den)` pairs.
    pub fn from_ratios(q: (i64, i64), g: (i64, i64), dim: usize) -> Result<Self, Error> {
        FockRep::new(
            BigRational::new(q.0.into(), q.1.into()),
            BigRational::new(g.0.into(), g.1.into()),
            dim,
        )
    }

    /// `s_k² = γ0 (1 − q0^{k+1}) / (1 − q0)`.
    pub fn weight_sq(q0: f64, g0: f64, k: usize) -> f64 {
        g0 * (1.0 - q0.powi(k as i32 + 1)) / (1.0 - q0)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn q0(&self) -> &BigRational {
        &self.q0
    }

    pub fn gamma0(&self) -> &BigRational {
        &self.g0
    }

    pub fn z(&self) -> &DMatrix<f64> {
        &self.z
    }

    /// Matrix of `u` with `z ↦ Z`, `z* ↦ Zᵀ`, multiplied in PBW order.
    pub fn evaluate(&self, u: &DiscElement) -> Result<DMatrix<f64>, Error> {
        let zt = self.z.transpose();
        let top_i = u.terms().map(|(m, _)| m.i).max().unwrap_or(0) as usize;
        let top_j = u.terms().map(|(m, _)| m.j).max().unwrap_or(0) as usize;
        let powers = |base: &DMatrix<f64>, top: usize| {
            let mut v = vec![DMatrix::identity(self.dim, self.dim)];
            for _ in 0..top {
                let next = v.last().unwrap() * base;
                v.push(next);
            }
            v
        };
        let zp = powers(&self.z, top_i);
        let ztp = powers(&zt, top_j);
        let mut out = DMatrix::zeros(self.dim, self.dim);
        for (m, c) in u.terms() {
            let c = c.substitute(&self.q0, &self.g0)?.to_f64().expect("finite");
            out += (&zp[m.i as usize] * &ztp[m.j as usize]) * c;
        }
        Ok(out)
    }

    /// Matrix of `Σ c · u_1 ⋯ u_k`, multiplying the factor matrices.
    pub fn evaluate_products(&self, terms: &[Product]) -> Result<DMatrix<f64>, Error> {
        let mut out = DMatrix::zeros(self.dim, self.dim);
        for (c, factors) in terms {
            let mut m = DMatrix::identity(self.dim, self.dim) * self.number(c)?;
            for f in factors {
                m *= self.evaluate(f)?;
            }
            out += m;
        }
        Ok(out)
    }

    fn number(&self, c: &Scalar) -> Result<f64, Error> {
        Ok(c.substitute(&self.q0, &self.g0)?.to_f64().expect("finite"))
    }

    /// Like [`FockRep::deviation`] for sums of products. The safe band is
    /// set by the largest summed total degree of a product.
    pub fn deviation_products(
        &self,
        lhs: &[Product],
        rhs: &[Product],
    ) -> Result<(f64, usize), Error> {
        let degree = lhs
            .iter()
            .chain(rhs)
            .map(|(_, fs)| fs.iter().map(DiscElement::max_total_degree).sum::<u32>())
            .max()
            .unwrap_or(0);
        if self.dim as u32 <= degree {
            return Err(Error::DimensionTooSmall {
                dim: self.dim,
                degree,
            });
        }
        let cols = self.dim - degree as usize;
        Ok((
            max_deviation(
                &self.evaluate_products(lhs)?,
                &self.evaluate_products(rhs)?,
                cols,
            ),
            cols,
        ))
    }

    /// Largest entrywise deviation between `u` and `v` on the
    /// truncation-safe columns, together with the number of columns used.
    pub fn deviation(&self, u: &DiscElement, v: &DiscElement) -> Result<(f64, usize), Error> {
        let diff = u - v;
        let degree = diff.max_total_degree();
        if self.dim as u32 <= degree {
            return Err(Error::DimensionTooSmall {
                dim: self.dim,
                degree,
            });
        }
        let cols = self.dim - degree as usize;
        Ok((
            max_deviation(&self.evaluate(u)?, &self.evaluate(v)?, cols),
            cols,
        ))
    }
}

fn max_deviation(mu: &DMatrix<f64>, mv: &DMatrix<f64>, cols: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for c in 0..cols {
        for r in 0..mu.nrows() {
            let (x, y) = (mu[(r, c)], mv[(r, c)]);
            let scale = 1f64.max(x.abs()).max(y.abs());
            worst = worst.max((x - y).abs() / scale);
        }
    }
    worst
}

/// Whether `u` and `v` agree numerically on the truncation-safe band.
pub fn check_identity(u: &DiscElement, v: &DiscElement, rep: &FockRep) -> Result<bool, Error> {
    let (dev, _) = rep.deviation(u, v)?;
    Ok(dev <= TOLERANCE)
}

/// [`check_identity`] for sums of products evaluated factor by factor.
pub fn check_products(lhs: &[Product], rhs: &[Product], rep: &FockRep) -> Result<bool, Error> {
    let (dev, _) = rep.deviation_products(lhs, rhs)?;
    Ok(dev <= TOLERANCE)
}
