//! Scalar helpers on top of [`num_rational::BigRational`].
//!
//! `BigRational` is always reduced with a positive denominator, so derived
//! equality is structural equality of the reduced form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_bigint(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Canonical text form: `"n"` for integers, `"n/d"` otherwise.
pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `"n"` or `"n/d"` (optional sign on the numerator only).
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let n: BigInt = parse_int(num).ok_or_else(bad)?;
    match den {
        None => Ok(Rational::from_integer(n)),
        Some(d) => {
            if d.starts_with(['+', '-']) {
                return Err(bad());
            }
            let d: BigInt = parse_int(d).ok_or_else(bad)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Like [`parse_rational`] but also accepts exact decimals such as `"0.25"`
/// and scientific notation such as `"1e-20"`. Used for tolerances only.
pub fn parse_decimal_or_rational(s: &str) -> Result<Rational, Error> {
    let t = s.trim();
    if t.contains('/') || !(t.contains('.') || t.contains(['e', 'E'])) {
        return parse_rational(t);
    }
    let bad = || Error::Parse(format!("malformed decimal {s:?}"));
    let (mantissa, exp) = match t.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (ip, fp) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(bad());
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{ip}{fp}0").parse::<BigInt>().map_err(|_| bad())? / 10;
    let scale = exp - fp.len() as i32;
    let ten = BigInt::from(10);
    let mut value = if scale >= 0 {
        Rational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        value = -value;
    }
    Ok(value)
}

fn parse_int(s: &str) -> Option<BigInt> {
    let body = s.strip_prefix(['+', '-']).unwrap_or(s);
    if body.is_empty() || !body.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Integer power with a possibly negative exponent.
pub fn pow_i(base: &Rational, exp: i64) -> Rational {
    let p = num_traits::pow(base.clone(), exp.unsigned_abs() as usize);
    if exp < 0 {
        p.recip()
    } else {
        p
    }
}

pub fn floor_int(x: &Rational) -> BigInt {
    x.floor().to_integer()
}

/// Positive gcd of a family of rationals; zero entries are ignored.
/// Returns `None` when every entry is zero.
pub fn rational_gcd<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> Option<Rational> {
    let mut acc: Option<Rational> = None;
    for x in xs {
        if x.is_zero() {
            continue;
        }
        let x = x.abs();
        acc = Some(match acc {
            None => x,
            Some(a) => {
                // gcd(a/b, c/d) = gcd(a d, c b) / (b d)
                let num = (a.numer() * x.denom()).gcd(&(x.numer() * a.denom()));
                Rational::new(num, a.denom() * x.denom())
            }
        });
    }
    acc
}

pub fn is_integer_multiple(x: &Rational, unit: &Rational) -> bool {
    (x / unit).is_integer()
}

pub fn binomial2(a: &BigInt) -> BigInt {
    (a * (a - BigInt::one())) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_normalizes() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("6/8").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-6/8").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert_eq!(format_rational(&parse_rational("6/8").unwrap()), "3/4");
        assert_eq!(format_rational(&parse_rational("10/5").unwrap()), "2");
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", "1/0", "a", "1/", "/2", "1.5", "1/-2", "--1", "1/2/3", "0x10"] {
            assert!(parse_rational(s).is_err(), "{s}");
        }
    }

    #[test]
    fn decimals_for_tolerances() {
        assert_eq!(parse_decimal_or_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_decimal_or_rational("1e-3").unwrap(), rat(1, 1000));
        assert_eq!(parse_decimal_or_rational("2.5E2").unwrap(), int(250));
        assert_eq!(parse_decimal_or_rational("-.5").unwrap(), rat(-1, 2));
        assert_eq!(
            parse_decimal_or_rational("1/100000000000000000000").unwrap(),
            parse_decimal_or_rational("1e-20").unwrap()
        );
        assert!(parse_decimal_or_rational("1e").is_err());
        assert!(parse_decimal_or_rational(".").is_err());
    }

    #[test]
    fn gcd_of_rationals() {
        let xs = [rat(3, 4), rat(1, 2), int(1), int(0)];
        assert_eq!(rational_gcd(&xs), Some(rat(1, 4)));
        assert_eq!(rational_gcd(&[int(-2)]), Some(int(2)));
        assert_eq!(rational_gcd(&[int(0)]), None);
    }

    #[test]
    fn binomial_handles_negatives() {
        assert_eq!(binomial2(&BigInt::from(2)), BigInt::from(1));
        assert_eq!(binomial2(&BigInt::from(-1)), BigInt::from(1));
        assert_eq!(binomial2(&BigInt::from(0)), BigInt::from(0));
    }
}
