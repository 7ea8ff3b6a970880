//! Exact power-series engine over arbitrary-precision rationals.
//!
//! Everything here is a finite truncation of a formal power series in `s`
//! with `BigRational` coefficients. Arithmetic is exact through the stated
//! truncation order; square roots of `1 - c s^2` are expanded through the
//! binomial series. The walk-counting functions return plain big integers
//! (the rational arithmetic must cancel exactly; a surviving denominator is
//! reported as an error rather than rounded away).
//!
//! Counting conventions, for a `(q+1)`-regular tree rooted at a center:
//!
//! * `p_tree[l]` — closed walks of length `l` from the root (zero for odd `l`);
//! * `p_tilde[k]` — closed walks of length `2k` from the root that avoid the
//!   root strictly between the endpoints (first returns);
//! * `p_hat[l]` — closed walks of length `l` from the root with one fixed
//!   root direction prohibited at every visit to the root.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    /// Reciprocal of a series with vanishing constant term.
    ZeroConstantTerm,
    /// Geodesic length below 3: no such geodesic exists in a simple graph.
    InvalidLength { m: usize },
    /// Rational arithmetic left a denominator where an integer was promised.
    NonIntegerCoefficient { exponent: usize },
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::ZeroConstantTerm => {
                write!(f, "series reciprocal requires a nonzero constant term")
            }
            SeriesError::InvalidLength { m } => {
                write!(f, "geodesic length {m} is below the minimum of 3")
            }
            SeriesError::NonIntegerCoefficient { exponent } => {
                write!(f, "coefficient of s^{exponent} is not an integer")
            }
        }
    }
}

impl core::error::Error for SeriesError {}

/// Truncated power series with exact rational coefficients.
///
/// `coeffs[l]` is the coefficient of `s^l`; the truncation order is
/// `coeffs.len() - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<BigRational>,
}

impl Series {
    pub fn new(coeffs: Vec<BigRational>) -> Series {
        assert!(!coeffs.is_empty(), "series needs at least the constant term");
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Series {
        Series {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn constant(c: BigRational, order: usize) -> Series {
        let mut s = Series::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// Truncation order (highest retained exponent).
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, l: usize) -> &BigRational {
        &self.coeffs[l]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn add(&self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|l| &self.coeffs[l] + &rhs.coeffs[l])
            .collect();
        Series { coeffs }
    }

    pub fn sub(&self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|l| &self.coeffs[l] - &rhs.coeffs[l])
            .collect();
        Series { coeffs }
    }

    pub fn scale(&self, factor: &BigRational) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Product truncated to the smaller operand order.
    pub fn mul(&self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Series { coeffs }
    }

    /// Multiplicative inverse through the truncation order.
    pub fn reciprocal(&self) -> Result<Series, SeriesError> {
        if self.coeffs[0].is_zero() {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let inv0 = self.coeffs[0].recip();
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len()];
        coeffs[0] = inv0.clone();
        for n in 1..self.coeffs.len() {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &coeffs[n - k];
                }
            }
            coeffs[n] = -(&inv0 * acc);
        }
        Ok(Series { coeffs })
    }

    /// Formal derivative d/ds; the order drops by one.
    pub fn derivative(&self) -> Series {
        if self.coeffs.len() == 1 {
            return Series::zero(0);
        }
        let coeffs = (1..self.coeffs.len())
            .map(|l| &self.coeffs[l] * BigRational::from_integer(BigInt::from(l)))
            .collect();
        Series { coeffs }
    }

    /// Multiplication by `s^k`, truncating at the original order.
    pub fn shift_up(&self, k: usize) -> Series {
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len()];
        for l in k..self.coeffs.len() {
            coeffs[l] = self.coeffs[l - k].clone();
        }
        Series { coeffs }
    }

    /// Integer power by repeated multiplication.
    pub fn pow(&self, m: usize) -> Series {
        let mut acc = Series::constant(BigRational::one(), self.order());
        for _ in 0..m {
            acc = acc.mul(self);
        }
        acc
    }

    /// Binomial expansion of `(1 - c s^2)^(1/2)` (or its reciprocal when
    /// `invert` is set), exact through `order`.
    pub fn sqrt_one_minus(c: &BigRational, order: usize, invert: bool) -> Series {
        let mut coeffs = vec![BigRational::zero(); order + 1];
        // Running binomial coefficient binom(alpha, k) with alpha = +-1/2.
        let alpha = BigRational::new(
            BigInt::from(if invert { -1 } else { 1 }),
            BigInt::from(2),
        );
        let mut binom = BigRational::one();
        let mut power = BigRational::one(); // (-c)^k
        for k in 0..=(order / 2) {
            coeffs[2 * k] = &binom * &power;
            let kk = BigRational::from_integer(BigInt::from(k));
            binom *= (&alpha - &kk) / (kk + BigRational::one());
            power *= -c;
        }
        Series { coeffs }
    }

    /// Extracts the coefficients as integers, failing if any denominator
    /// survived.
    pub fn integer_coeffs(&self) -> Result<Vec<BigInt>, SeriesError> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(exponent, c)| {
                if c.denom().is_one() {
                    Ok(c.numer().clone())
                } else {
                    Err(SeriesError::NonIntegerCoefficient { exponent })
                }
            })
            .collect()
    }
}

/// Closed-walk counts on the `(q+1)`-regular tree, all derived exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeWalkTable {
    pub q: usize,
    /// `p_tree[l]`: closed walks of length `l` from the root.
    pub p_tree: Vec<BigInt>,
    /// `p_tilde[k]`: first returns of length `2k`; entry 0 is 0.
    pub p_tilde: Vec<BigInt>,
    /// `p_hat[l]`: closed walks with one root direction prohibited.
    pub p_hat: Vec<BigInt>,
}

/// The `k`-th Catalan number, exactly.
pub fn catalan(k: usize) -> BigInt {
    // Cat_{k+1} = Cat_k * 2(2k+1) / (k+2), always an exact division.
    let mut cat = BigInt::one();
    for i in 0..k {
        cat = cat * BigInt::from(2 * (2 * i + 1)) / BigInt::from(i + 2);
    }
    cat
}

/// First-return counts on the `(q+1)`-regular tree: entry `k >= 1` is
/// `(q+1) q^(k-1) Cat_{k-1}`, the number of closed walks of length `2k` from
/// the root touching the root only at the endpoints. Entry 0 is 0.
pub fn first_return_counts(q: usize, k_max: usize) -> Vec<BigInt> {
    assert!(q >= 1, "branching number q must be at least 1");
    let mut out = vec![BigInt::zero(); k_max + 1];
    let mut q_pow = BigInt::one();
    for k in 1..=k_max {
        out[k] = BigInt::from(q + 1) * &q_pow * catalan(k - 1);
        q_pow *= BigInt::from(q);
    }
    out
}

/// The first-return generating function as a series in `s`: coefficient of
/// `s^(2k)` is `first_return_counts(q)[k]`.
fn f_tilde(q: usize, order: usize) -> Series {
    let counts = first_return_counts(q, order / 2);
    let mut coeffs = vec![BigRational::zero(); order + 1];
    for (k, c) in counts.iter().enumerate() {
        if 2 * k <= order {
            coeffs[2 * k] = BigRational::from_integer(c.clone());
        }
    }
    Series::new(coeffs)
}

/// All closed-walk tables on the `(q+1)`-regular tree through length `l_max`.
///
/// `p_tree` is the coefficient sequence of the renewal reciprocal
/// `1 / (1 - f_tilde)`; `p_hat` of `1 / (1 - q/(q+1) * f_tilde)`.
pub fn tree_walk_counts(q: usize, l_max: usize) -> TreeWalkTable {
    assert!(q >= 1, "branching number q must be at least 1");
    let ft = f_tilde(q, l_max);
    let one = Series::constant(BigRational::one(), l_max);
    let p_tree = one
        .sub(&ft)
        .reciprocal()
        .expect("1 - f_tilde has constant term 1")
        .integer_coeffs()
        .expect("tree walk counts are integers");
    let p_tilde = first_return_counts(q, l_max / 2);
    let p_hat = prohibited_direction_counts(q, l_max);
    TreeWalkTable {
        q,
        p_tree,
        p_tilde,
        p_hat,
    }
}

/// Closed-walk counts from the tree root with one fixed root direction
/// prohibited: the coefficient sequence of `1 / (1 - q/(q+1) * f_tilde)`.
pub fn prohibited_direction_counts(q: usize, l_max: usize) -> Vec<BigInt> {
    assert!(q >= 1, "branching number q must be at least 1");
    let ratio = BigRational::new(BigInt::from(q), BigInt::from(q + 1));
    let ft = f_tilde(q, l_max).scale(&ratio);
    Series::constant(BigRational::one(), l_max)
        .sub(&ft)
        .reciprocal()
        .expect("1 - q/(q+1) f_tilde has constant term 1")
        .integer_coeffs()
        .expect("prohibited-direction counts are integers")
}

/// The series `u(s) = s * (prohibited-direction generating function)`; its
/// `m`-th power generates trajectory counts per homotopy class.
fn class_base(q: usize, l_max: usize) -> Series {
    let ratio = BigRational::new(BigInt::from(q), BigInt::from(q + 1));
    let ft = f_tilde(q, l_max).scale(&ratio);
    let f_hat = Series::constant(BigRational::one(), l_max)
        .sub(&ft)
        .reciprocal()
        .expect("constant term 1");
    f_hat.shift_up(1)
}

/// Number of closed trajectories of length `l` homotopic to a fixed geodesic
/// of length `m`: entry `l` of the returned sequence, the coefficient of
/// `s^l` in `u(s)^m`.
pub fn trajectory_class_coefficients(
    q: usize,
    m: usize,
    l_max: usize,
) -> Result<Vec<BigInt>, SeriesError> {
    assert!(q >= 1, "branching number q must be at least 1");
    if m < 3 {
        return Err(SeriesError::InvalidLength { m });
    }
    class_base(q, l_max).pow(m).integer_coeffs()
}

/// Number of closed paths of length `l` homotopic to a fixed geodesic
/// trajectory of length `m`, per unit of primitive length: the coefficient of
/// `s^l` in `(1 - 4 q s^2)^(-1/2) * u(s)^m`. Zero for `l < m` or
/// `l != m (mod 2)`.
pub fn homotopy_class_coefficients(
    q: usize,
    m: usize,
    l_max: usize,
) -> Result<Vec<BigInt>, SeriesError> {
    assert!(q >= 1, "branching number q must be at least 1");
    if m < 3 {
        return Err(SeriesError::InvalidLength { m });
    }
    let c = BigRational::from_integer(BigInt::from(4 * q));
    let kernel = Series::sqrt_one_minus(&c, l_max, true);
    class_base(q, l_max).pow(m).mul(&kernel).integer_coeffs()
}
