use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::rational::{format_rational, int, Rational};

/// Univariate polynomial over ℚ, coefficients lowest degree first.
/// The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x - a`
    pub fn linear(a: Rational) -> Self {
        Self::new(vec![-a, Rational::one()])
    }

    pub fn monomial(c: Rational, deg: usize) -> Self {
        let mut v = vec![Rational::zero(); deg + 1];
        v[deg] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        Self::new(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * int(i as i64)).collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &Matrix) -> Result<Matrix> {
        m.require_square()?;
        let n = m.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * m) + &Matrix::identity(n).scale(c);
        }
        Ok(acc)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.coeffs.len() - 1;
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let f = &r[i] / &lc;
            for (j, c) in d.coeffs.iter().enumerate() {
                let v = &r[i - dd + j] - &f * c;
                r[i - dd + j] = v;
            }
            q[i - dd] = f;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Exact quotient when `d` divides `self`.
    pub fn exact_div(&self, d: &RatPoly) -> Option<RatPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Scales to a primitive integer polynomial with positive leading
    /// coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let l = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &l).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        ints.into_iter().map(|c| c / &g * &sign).collect()
    }

    pub fn from_integers(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let coef = format_rational(&a);
            match (i, a.is_one()) {
                (0, _) => write!(f, "{coef}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{coef}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{coef}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

/// `det(xI − m)` by the Faddeev–LeVerrier recurrence, exact over ℚ.
pub fn char_poly(m: &Matrix) -> Result<RatPoly> {
    m.require_square()?;
    let n = m.rows();
    // coeffs[k] is the coefficient of x^k; c_n = 1.
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk = Matrix::zeros(n, n);
    for k in 1..=n {
        let shifted = &mk + &Matrix::identity(n).scale(&coeffs[n + 1 - k]);
        mk = m * &shifted;
        coeffs[n - k] = -mk.trace() / int(k as i64);
    }
    Ok(RatPoly::new(coeffs))
}

/// Companion matrix of a monic polynomial (last column holds −a₀…−a_{d−1}).
pub fn companion(p: &RatPoly) -> Result<Matrix> {
    let d = p.degree().ok_or(Error::ZeroPolynomial)?;
    let p = p.monic();
    let mut m = Matrix::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = Rational::one();
    }
    for i in 0..d {
        m[(i, d - 1)] = -p.coeff(i);
    }
    Ok(m)
}
