//! Dense univariate polynomials over ℚ.
//!
//! Used as the coefficient ring when a bivariate polynomial in `(q, γ)` is
//! viewed as a polynomial in `γ` over `ℚ[q]` during GCD computation.

use num::{BigInt, BigRational, Integer, One, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct QPoly {
    /// Ascending coefficients; no trailing zeros.
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly {
            coeffs: vec![BigRational::one()],
        }
    }

    pub fn from_vec(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRational::zero();
        let coeffs = (0..len)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
            .collect();
        QPoly::from_vec(coeffs)
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::from_vec(out)
    }

    pub fn scale(&self, c: &BigRational) -> QPoly {
        QPoly::from_vec(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &QPoly) -> (QPoly, QPoly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (QPoly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (QPoly::from_vec(quot), QPoly::from_vec(rem))
    }

    pub fn monic(&self) -> QPoly {
        match self.lead() {
            None => QPoly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Monic GCD; `gcd(0, 0) = 0`.
    ///
    /// Runs a primitive pseudo-remainder sequence over ℤ after a modular
    /// test that settles the coprime case.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return QPoly::one();
        }
        let a = integer_primitive(&self.coeffs);
        let b = integer_primitive(&other.coeffs);
        if coprime_mod_p(&a, &b) {
            return QPoly::one();
        }
        let (mut a, mut b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        while !b.is_empty() {
            if b.len() == 1 {
                return QPoly::one();
            }
            let r = integer_primitive_int(&pseudo_remainder(&a, &b));
            a = b;
            b = r;
        }
        QPoly::from_vec(a.into_iter().map(BigRational::from_integer).collect()).monic()
    }
}

/// Primitive integer polynomial proportional to `coeffs`.
fn integer_primitive(coeffs: &[BigRational]) -> Vec<BigInt> {
    let den = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * &den).to_integer()).collect();
    integer_primitive_int(&ints)
}

fn integer_primitive_int(coeffs: &[BigInt]) -> Vec<BigInt> {
    let mut v = coeffs.to_vec();
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.iter().map(|c| c / &g).collect()
}

fn pseudo_remainder(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let top = r.len() - 1;
        let lr = r[top].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (i, c) in b.iter().enumerate() {
            r[top - db + i] -= &lr * c;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
        r = integer_primitive_int(&r);
    }
    r
}

const PRIME: u64 = 2_305_843_009_213_693_951;

fn mod_p(c: &BigInt) -> u64 {
    let p = BigInt::from(PRIME);
    let m = c.mod_floor(&p);
    m.to_u64().expect("reduced below the prime")
}

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn inv_mod(a: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a, PRIME - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        e >>= 1;
    }
    acc
}

/// True only if `a` and `b` are certainly coprime over ℚ: their images mod
/// a prime not dividing either leading coefficient have a constant GCD.
fn coprime_mod_p(a: &[BigInt], b: &[BigInt]) -> bool {
    let reduce = |v: &[BigInt]| v.iter().map(mod_p).collect::<Vec<u64>>();
    let (mut x, mut y) = (reduce(a), reduce(b));
    if x.last() == Some(&0) || y.last() == Some(&0) {
        return false;
    }
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    while !y.is_empty() {
        if y.len() == 1 {
            return true;
        }
        let inv = inv_mod(*y.last().unwrap());
        let dy = y.len() - 1;
        while x.len() > dy {
            let top = x.len() - 1;
            let c = mul_mod(x[top], inv);
            for (i, &d) in y.iter().enumerate() {
                let sub = mul_mod(c, d);
                x[top - dy + i] = (x[top - dy + i] + PRIME - sub) % PRIME;
            }
            trim(&mut x);
        }
        std::mem::swap(&mut x, &mut y);
    }
    false
}
