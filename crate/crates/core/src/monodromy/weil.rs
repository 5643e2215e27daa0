//! Deciding whether an irreducible rational polynomial is a Weil polynomial
//! of some integer weight.
//!
//! The exact conditions are checked first: the constant term must have
//! absolute value `q^{j·deg/2}`, and `x^deg · g(q^j/x)` must be proportional to
//! `g`. Only then are the complex roots located numerically (Durand–Kerner on
//! fixed-point big integers, `PRECISION_BITS` bits after the point) and their
//! squared moduli compared against `q^j`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, pow_i, Rational};
use crate::ratlin::RatPoly;

/// Roughly 115 decimal digits.
pub const PRECISION_BITS: u32 = 384;
const MAX_ITERATIONS: usize = 2000;

/// `10⁻²⁰`.
pub fn default_tolerance() -> Rational {
    Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), 20))
}

/// Returns the weight `j` such that every complex root of `g` has squared
/// modulus `q^j`, or [`Error::NotPure`]. `tol` bounds the relative error
/// `| |λ|² − q^j | / q^j` accepted in the numeric stage.
pub fn weil_weight(g: &RatPoly, q: i64, tol: &Rational) -> Result<i64> {
    weil_analysis(g, q, tol).map(|a| a.weight)
}

#[derive(Clone, Debug)]
pub struct WeilAnalysis {
    pub weight: i64,
    /// Largest observed relative deviation of a squared root modulus from `q^j`.
    pub max_relative_deviation: Rational,
}

pub fn weil_analysis(g: &RatPoly, q: i64, tol: &Rational) -> Result<WeilAnalysis> {
    if q < 2 {
        return Err(Error::BadQ(q));
    }
    let not_pure = |reason: String| Error::NotPure { factor: g.to_string(), reason };
    let d = match g.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(not_pure("constant polynomial has no roots".into())),
        Some(d) => d as i64,
    };
    if !g.is_monic() {
        return Err(Error::Precondition("weil_weight expects a monic polynomial".into()));
    }
    let c0 = g.coeff(0);
    if c0.is_zero() {
        return Err(not_pure("zero is a root".into()));
    }
    let q_rat = int(q);
    // |c0|² = q^{j·d}
    let e = exact_log(&(&c0 * &c0), q).ok_or_else(|| {
        not_pure(format!("|constant term| = {} is not a power of √{q}", format_rational(&c0.abs())))
    })?;
    if e % d != 0 {
        return Err(not_pure(format!("|constant term|² = {q}^{e} with {e} not divisible by degree {d}")));
    }
    let j = e / d;
    // x^d g(q^j/x) has x^k coefficient a_{d−k} q^{j(d−k)}; it must equal a_0 · g.
    for k in 0..=d {
        let lhs = g.coeff((d - k) as usize) * pow_i(&q_rat, j * (d - k));
        let rhs = &c0 * g.coeff(k as usize);
        if lhs != rhs {
            return Err(not_pure(format!("roots are not closed under λ ↦ {q}^{j}/λ")));
        }
    }
    let target = pow_i(&q_rat, j);
    let roots = complex_roots(g).map_err(not_pure)?;
    let mut worst = Rational::zero();
    for r in &roots {
        let dev = ((r.norm_sqr() - &target) / &target).abs();
        if dev > worst {
            worst = dev;
        }
    }
    if &worst > tol {
        let approx = worst.numer().bits() as i64 - worst.denom().bits() as i64;
        return Err(not_pure(format!(
            "a root has squared modulus off from {q}^{j} by relative error ≈ 2^{approx}"
        )));
    }
    Ok(WeilAnalysis { weight: j, max_relative_deviation: worst })
}

/// `e` with `x = q^e` exactly, if any.
fn exact_log(x: &Rational, q: i64) -> Option<i64> {
    let qb = BigInt::from(q);
    let (mut n, mut dn) = (x.numer().abs(), x.denom().clone());
    let mut e = 0i64;
    if n.is_zero() {
        return None;
    }
    while n > BigInt::one() {
        let (quo, rem) = n.div_rem(&qb);
        if !rem.is_zero() {
            return None;
        }
        n = quo;
        e += 1;
    }
    while dn > BigInt::one() {
        let (quo, rem) = dn.div_rem(&qb);
        if !rem.is_zero() {
            return None;
        }
        dn = quo;
        e -= 1;
    }
    // Both can't be nontrivial for a reduced fraction unless q | gcd.
    Some(e)
}

/// Fixed-point complex number: value = (re + i·im) / 2^PRECISION_BITS.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedComplex {
    re: BigInt,
    im: BigInt,
}

impl FixedComplex {
    fn from_rational(x: &Rational) -> Self {
        let scaled = x * Rational::from_integer(BigInt::one() << PRECISION_BITS);
        FixedComplex { re: scaled.round().to_integer(), im: BigInt::zero() }
    }

    fn from_f64(re: f64, im: f64) -> Self {
        let s = |x: f64| {
            let r = Rational::from_float(x).expect("finite");
            (r * Rational::from_integer(BigInt::one() << PRECISION_BITS)).round().to_integer()
        };
        FixedComplex { re: s(re), im: s(im) }
    }

    fn add(&self, o: &Self) -> Self {
        FixedComplex { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    fn sub(&self, o: &Self) -> Self {
        FixedComplex { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    fn mul(&self, o: &Self) -> Self {
        FixedComplex {
            re: (&self.re * &o.re - &self.im * &o.im) >> PRECISION_BITS,
            im: (&self.re * &o.im + &self.im * &o.re) >> PRECISION_BITS,
        }
    }

    fn div(&self, o: &Self) -> Option<Self> {
        let den = &o.re * &o.re + &o.im * &o.im;
        if den.is_zero() {
            return None;
        }
        let re = ((&self.re * &o.re + &self.im * &o.im) << PRECISION_BITS) / &den;
        let im = ((&self.im * &o.re - &self.re * &o.im) << PRECISION_BITS) / &den;
        Some(FixedComplex { re, im })
    }

    fn max_abs_component(&self) -> BigInt {
        self.re.abs().max(self.im.abs())
    }

    /// Exact `|z|²` of the fixed-point value, as a rational.
    pub fn norm_sqr(&self) -> Rational {
        let num = &self.re * &self.re + &self.im * &self.im;
        Rational::new(num, BigInt::one() << (2 * PRECISION_BITS))
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let den = Rational::from_integer(BigInt::one() << PRECISION_BITS);
        let re = Rational::new(self.re.clone(), BigInt::one()) / &den;
        let im = Rational::new(self.im.clone(), BigInt::one()) / &den;
        (re.to_f64().unwrap_or(f64::NAN), im.to_f64().unwrap_or(f64::NAN))
    }
}

/// All complex roots of a squarefree monic polynomial via Durand–Kerner.
pub fn complex_roots(g: &RatPoly) -> std::result::Result<Vec<FixedComplex>, String> {
    let d = g.degree().ok_or("zero polynomial")?;
    let g = g.monic();
    if d == 0 {
        return Ok(Vec::new());
    }
    let coeffs: Vec<FixedComplex> = g.coeffs().iter().map(FixedComplex::from_rational).collect();
    let eval = |z: &FixedComplex| {
        coeffs.iter().rev().fold(
            FixedComplex { re: BigInt::zero(), im: BigInt::zero() },
            |acc, c| acc.mul(z).add(c),
        )
    };
    // Cauchy bound on the root radius.
    let radius = g
        .coeffs()
        .iter()
        .take(d)
        .map(|c| c.abs())
        .fold(Rational::zero(), |a, b| if b > a { b } else { a })
        + Rational::one();
    let radius = num_traits::ToPrimitive::to_f64(&radius).unwrap_or(1e300).min(1e150);
    let mut z: Vec<FixedComplex> = (0..d)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.4;
            FixedComplex::from_f64(radius * angle.cos(), radius * angle.sin())
        })
        .collect();
    // Steps below 2^-300 in absolute size.
    let threshold = BigInt::one() << (PRECISION_BITS - 300);
    for _ in 0..MAX_ITERATIONS {
        let mut biggest = BigInt::zero();
        for i in 0..d {
            let mut den = FixedComplex::from_rational(&Rational::one());
            for j in 0..d {
                if i != j {
                    den = den.mul(&z[i].sub(&z[j]));
                }
            }
            let Some(step) = eval(&z[i]).div(&den) else {
                // Coincident iterates: nudge and continue.
                z[i] = z[i].add(&FixedComplex::from_f64(1e-3, 1e-3));
                biggest = threshold.clone() + 1;
                continue;
            };
            let size = step.max_abs_component();
            if size > biggest {
                biggest = size;
            }
            z[i] = z[i].sub(&step);
        }
        if biggest < threshold {
            return Ok(z);
        }
    }
    Err(format!("root iteration did not converge in {MAX_ITERATIONS} steps"))
}
