//! Factorization of rational polynomials into monic irreducibles.
//!
//! Squarefree parts come from Yun's algorithm over ℚ. Each squarefree part is
//! made primitive over ℤ and factored with the classical Zassenhaus scheme:
//! Berlekamp factorization modulo a small good prime, linear Hensel lifting
//! past the Mignotte bound, then exhaustive recombination of the lifted
//! factors. Recombination is exponential in the number of modular factors,
//! which is fine at the intended scale (degree ≲ 20) and slow beyond it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::RatPoly;
use crate::error::{Error, Result};

/// Monic irreducible factors with multiplicities, sorted by degree and then
/// coefficients so the output is deterministic.
pub fn factor_rational(p: &RatPoly) -> Result<Vec<(RatPoly, u32)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(&p.monic()) {
        let ints = part.primitive_integer();
        for f in factor_squarefree_integer(&ints) {
            out.push((RatPoly::from_integers(&f).monic(), mult));
        }
    }
    out.sort_by(|(a, _), (b, _)| {
        a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs()))
    });
    Ok(out)
}

/// Yun's algorithm. Input must be monic and nonzero; constant parts are
/// dropped.
pub fn squarefree_decomposition(f: &RatPoly) -> Vec<(RatPoly, u32)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.exact_div(&a0).expect("gcd divides");
    let c = df.exact_div(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        b = b.exact_div(&a).expect("gcd divides");
        let c = d.exact_div(&a).expect("gcd divides");
        d = &c - &b.derivative();
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

/// Irreducible factors over ℤ of a primitive squarefree polynomial with
/// positive leading coefficient.
pub fn factor_squarefree_integer(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let f = trim(f.to_vec());
    let n = f.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![f];
    }
    let (p, modular) = choose_prime(&f);
    if modular.len() == 1 {
        return vec![f];
    }
    let bound = coefficient_bound(&f);
    let p_big = BigInt::from(p);
    let mut k = 1u32;
    let mut modulus = p_big.clone();
    while modulus <= &bound * 2 {
        modulus *= &p_big;
        k += 1;
    }
    let lifted = hensel_lift_all(&f, &modular, p, k);
    recombine(f, lifted, &modulus)
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

/// `|lc| · 2ⁿ · (n+1) · max|fᵢ|`, an upper bound for `lc · g` over every
/// integer factor `g` of `f` (Mignotte, with ‖f‖₂ ≤ (n+1)·max|fᵢ|).
fn coefficient_bound(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    let max = f.iter().map(|c| c.abs()).max().unwrap();
    let lc = f[n].abs();
    lc * (BigInt::one() << n) * BigInt::from(n + 1) * max
}

const PRIMES: &[u64] = &[
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
    193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283,
    293, 307, 311, 313, 317, 331, 337, 347, 349, 353, 359, 367, 373, 379, 383, 389, 397, 401,
    409, 419, 421, 431, 433, 439, 443, 449, 457, 461, 463, 467, 479, 487, 491, 499, 503, 509,
    521, 523, 541, 547, 557, 563, 569, 571, 577, 587, 593, 599, 601, 607, 613, 617, 619, 631,
    641, 643, 647, 653, 659, 661, 673, 677, 683, 691, 701, 709, 719, 727, 733, 739, 743, 751,
    757, 761, 769, 773, 787, 797, 809, 811, 821, 823, 827, 829, 839, 853, 857, 859, 863, 877,
    881, 883, 887, 907, 911, 919, 929, 937, 941, 947, 953, 967, 971, 977, 983, 991, 997,
];

/// Picks, among the first few primes where `f` stays squarefree of full
/// degree, the one giving the fewest modular factors.
fn choose_prime(f: &[BigInt]) -> (u64, Vec<Vec<u64>>) {
    let mut best: Option<(u64, Vec<Vec<u64>>)> = None;
    let mut tried = 0;
    for &p in PRIMES {
        let fp = fp::reduce(f, p);
        if fp.len() != f.len() {
            continue;
        }
        let g = fp::gcd(&fp, &fp::derivative(&fp, p), p);
        if g.len() != 1 {
            continue;
        }
        let monic = fp::monic(&fp, p);
        let factors = fp::berlekamp(&monic, p);
        let better = !matches!(&best, Some((_, b)) if factors.len() >= b.len());
        if better {
            best = Some((p, factors));
        }
        tried += 1;
        if tried == 5 || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    // A squarefree polynomial over ℚ has nonzero discriminant, which only
    // finitely many primes divide; the table is far longer than needed for
    // the supported degrees.
    best.expect("no good prime found in table")
}

fn modp(x: &BigInt, m: &BigInt) -> BigInt {
    x.mod_floor(m)
}

fn zpoly_reduce(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    trim(a.iter().map(|c| modp(c, m)).collect())
}

fn zpoly_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zpoly_reduce(&out, m)
}

fn to_big(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

fn to_small(v: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    fp::trim(v.iter().map(|c| modp(c, &pb).to_u64().unwrap()).collect())
}

/// Lifts `F ≡ g0·h0 (mod p)` to `F ≡ g·h (mod p^k)` with `g`, `h` monic,
/// where `F` is monic modulo `p^k`.
fn hensel_pair(big_f: &[BigInt], g0: &[u64], h0: &[u64], p: u64, k: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let (s, t) = fp::bezout(g0, h0, p);
    let pb = BigInt::from(p);
    let mut g = to_big(g0);
    let mut h = to_big(h0);
    let mut pk = pb.clone();
    for _ in 1..k {
        let next = &pk * &pb;
        let gh = zpoly_mul(&g, &h, &next);
        let f_next = zpoly_reduce(big_f, &next);
        let len = f_next.len().max(gh.len());
        let diff: Vec<BigInt> = (0..len)
            .map(|i| {
                let a = f_next.get(i).cloned().unwrap_or_default();
                let b = gh.get(i).cloned().unwrap_or_default();
                modp(&(a - b), &next) / &pk
            })
            .collect();
        let e = to_small(&diff, p);
        let dg = fp::rem(&fp::mul(&t, &e, p), g0, p);
        let dh = fp::rem(&fp::mul(&s, &e, p), h0, p);
        for (i, c) in dg.iter().enumerate() {
            g[i] += &pk * BigInt::from(*c);
        }
        for (i, c) in dh.iter().enumerate() {
            h[i] += &pk * BigInt::from(*c);
        }
        pk = next;
    }
    (g, h)
}

fn hensel_lift_all(f: &[BigInt], factors: &[Vec<u64>], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    let modulus = num_traits::pow(BigInt::from(p), k as usize);
    let lc_inv = fp_inverse_big(f.last().unwrap(), &modulus);
    let monic: Vec<BigInt> = f.iter().map(|c| modp(&(c * &lc_inv), &modulus)).collect();
    lift_tree(&monic, factors, p, k)
}

fn lift_tree(big_f: &[BigInt], factors: &[Vec<u64>], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        let modulus = num_traits::pow(BigInt::from(p), k as usize);
        return vec![zpoly_reduce(big_f, &modulus)];
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let g0 = left.iter().fold(vec![1u64], |acc, x| fp::mul(&acc, x, p));
    let h0 = right.iter().fold(vec![1u64], |acc, x| fp::mul(&acc, x, p));
    let (g, h) = hensel_pair(big_f, &g0, &h0, p, k);
    let mut out = lift_tree(&g, left, p, k);
    out.extend(lift_tree(&h, right, p, k));
    out
}

fn fp_inverse_big(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    modp(&e.x, m)
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = modp(c, m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if v.last().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
    v.into_iter().map(|c| c / &g * &sign).collect()
}

/// Exact division over ℤ, `None` if `d ∤ f`.
fn zdiv(f: &[BigInt], d: &[BigInt]) -> Option<Vec<BigInt>> {
    let dd = d.len() - 1;
    if f.len() < d.len() {
        return None;
    }
    let mut r = f.to_vec();
    let lc = d.last().unwrap();
    let mut q = vec![BigInt::zero(); f.len() - dd];
    for i in (dd..r.len()).rev() {
        let (qi, rem) = r[i].div_rem(lc);
        if !rem.is_zero() {
            return None;
        }
        if !qi.is_zero() {
            for (j, c) in d.iter().enumerate() {
                r[i - dd + j] -= &qi * c;
            }
        }
        q[i - dd] = qi;
    }
    r.iter().all(Zero::is_zero).then_some(q)
}

fn recombine(mut f: Vec<BigInt>, mut lifted: Vec<Vec<BigInt>>, modulus: &BigInt) -> Vec<Vec<BigInt>> {
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut progressed = false;
        for subset in Subsets::new(lifted.len(), size) {
            let lc = f.last().unwrap().clone();
            let prod = subset
                .iter()
                .fold(vec![lc], |acc, &i| zpoly_mul(&acc, &lifted[i], modulus));
            let cand = primitive(prod.iter().map(|c| symmetric(c, modulus)).collect());
            if let Some(q) = zdiv(&f, &cand) {
                f = primitive(q);
                found.push(cand);
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, g)| g)
                    .collect();
                progressed = true;
                break;
            }
        }
        if !progressed {
            size += 1;
        }
    }
    if f.len() > 1 {
        found.push(f);
    }
    found
}

/// k-subsets of 0..n in lexicographic order.
struct Subsets {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Subsets {
    fn new(n: usize, k: usize) -> Self {
        Subsets { n, idx: (0..k).collect(), done: k > n }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let cur = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(cur)
    }
}

/// Dense polynomials over 𝔽ₚ for small primes, lowest degree first.
pub(crate) mod fp {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::ToPrimitive;

    pub fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    pub fn reduce(f: &[BigInt], p: u64) -> Vec<u64> {
        let pb = BigInt::from(p);
        trim(f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        pow(a, p - 2, p)
    }

    pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1u64;
        a %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * a % p;
            }
            a = a * a % p;
            e >>= 1;
        }
        acc
    }

    pub fn monic(f: &[u64], p: u64) -> Vec<u64> {
        let li = inv(*f.last().unwrap(), p);
        f.iter().map(|c| c * li % p).collect()
    }

    pub fn derivative(f: &[u64], p: u64) -> Vec<u64> {
        trim(f.iter().enumerate().skip(1).map(|(i, c)| (i as u64 % p) * c % p).collect())
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
                .collect(),
        )
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    pub fn div_rem(a: &[u64], d: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let dd = d.len() - 1;
        if a.len() <= dd {
            return (Vec::new(), a.to_vec());
        }
        let li = inv(d[dd], p);
        let mut r = a.to_vec();
        let mut q = vec![0u64; a.len() - dd];
        for i in (dd..r.len()).rev() {
            let f = r[i] * li % p;
            if f == 0 {
                continue;
            }
            for (j, c) in d.iter().enumerate() {
                r[i - dd + j] = (r[i - dd + j] + p - f * c % p) % p;
            }
            q[i - dd] = f;
        }
        r.truncate(dd);
        (trim(q), trim(r))
    }

    pub fn rem(a: &[u64], d: &[u64], p: u64) -> Vec<u64> {
        div_rem(a, d, p).1
    }

    /// Monic gcd.
    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        if a.is_empty() {
            a
        } else {
            monic(&a, p)
        }
    }

    /// `(s, t)` with `s·a + t·b = 1` for coprime `a`, `b`.
    pub fn bezout(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = div_rem(&r0, &r1, p);
            let s2 = sub(&s0, &mul(&q, &s1, p), p);
            let t2 = sub(&t0, &mul(&q, &t1, p), p);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        debug_assert_eq!(r0.len(), 1, "bezout inputs must be coprime");
        let c = inv(r0[0], p);
        let scale = |v: Vec<u64>| trim(v.into_iter().map(|x| x * c % p).collect());
        (scale(s0), scale(t0))
    }

    /// Berlekamp factorization of a monic squarefree polynomial.
    pub fn berlekamp(f: &[u64], p: u64) -> Vec<Vec<u64>> {
        let n = f.len() - 1;
        if n <= 1 {
            return vec![f.to_vec()];
        }
        // Row i of Q holds x^{ip} mod f.
        let xp = powmod_x(p, f, p);
        let mut q = vec![vec![0u64; n]; n];
        let mut cur = vec![1u64];
        for row in q.iter_mut() {
            for (j, c) in cur.iter().enumerate() {
                row[j] = *c;
            }
            cur = rem(&mul(&cur, &xp, p), f, p);
        }
        // g^p ≡ g  ⇔  (Q − I)ᵀ g = 0.
        let mut a = vec![vec![0u64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let v = if i == j { (q[i][j] + p - 1) % p } else { q[i][j] };
                a[j][i] = v;
            }
        }
        let basis = nullspace(a, p);
        let r = basis.len();
        let mut factors = vec![f.to_vec()];
        for v in basis.iter() {
            if factors.len() == r {
                break;
            }
            let v = trim(v.clone());
            if v.len() <= 1 {
                continue;
            }
            let mut next = Vec::new();
            for u in factors {
                if u.len() <= 2 {
                    next.push(u);
                    continue;
                }
                let mut rest = u;
                for s in 0..p {
                    if rest.len() <= 2 {
                        break;
                    }
                    let shifted = sub(&v, &[s], p);
                    let g = gcd(&rest, &shifted, p);
                    if g.len() > 1 && g.len() < rest.len() {
                        rest = div_rem(&rest, &g, p).0;
                        next.push(g);
                    }
                }
                next.push(monic(&rest, p));
            }
            factors = next;
        }
        factors.sort();
        factors
    }

    fn powmod_x(e: u64, f: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut base = rem(&[0, 1], f, p);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &base, p), f, p);
            }
            base = rem(&mul(&base, &base, p), f, p);
            e >>= 1;
        }
        acc
    }

    fn nullspace(mut a: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
        let rows = a.len();
        let cols = a[0].len();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(pr) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
            a.swap(r, pr);
            let li = inv(a[r][c], p);
            for j in 0..cols {
                a[r][j] = a[r][j] * li % p;
            }
            for i in 0..rows {
                if i != r && a[i][c] != 0 {
                    let f = a[i][c];
                    for j in 0..cols {
                        a[i][j] = (a[i][j] + p - f * a[r][j] % p) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows {
                break;
            }
        }
        (0..cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![0u64; cols];
                v[free] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - a[i][free]) % p;
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn p(c: &[i64]) -> RatPoly {
        RatPoly::from_i64(c)
    }

    fn product(factors: &[(RatPoly, u32)]) -> RatPoly {
        factors.iter().fold(RatPoly::one(), |acc, (f, m)| &acc * &f.pow(*m))
    }

    #[test]
    fn spec_examples() {
        assert_eq!(factor_rational(&p(&[-1, 0, 1])).unwrap(), vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1)]);
        assert_eq!(factor_rational(&p(&[5, -1, 1])).unwrap(), vec![(p(&[5, -1, 1]), 1)]);
        let f = &p(&[-1, 1]).pow(2) * &p(&[-5, 1]);
        assert_eq!(factor_rational(&f).unwrap(), vec![(p(&[-5, 1]), 1), (p(&[-1, 1]), 2)]);
        assert!(matches!(factor_rational(&RatPoly::zero()), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn constant_has_no_factors() {
        assert!(factor_rational(&RatPoly::constant(int(7))).unwrap().is_empty());
    }

    #[test]
    fn swinnerton_dyer_style_irreducible() {
        // x^4 - 10x^2 + 1 is irreducible over ℚ but splits modulo every prime.
        let f = p(&[1, 0, -10, 0, 1]);
        assert_eq!(factor_rational(&f).unwrap(), vec![(f, 1)]);
    }

    #[test]
    fn cyclotomic_split() {
        // x^12 - 1 = Φ1 Φ2 Φ3 Φ4 Φ6 Φ12
        let mut c = vec![0i64; 13];
        c[0] = -1;
        c[12] = 1;
        let f = p(&c);
        let fs = factor_rational(&f).unwrap();
        assert_eq!(fs.len(), 6);
        assert_eq!(product(&fs), f);
        assert!(fs.contains(&(p(&[1, 0, -1, 0, 1]), 1)));
    }

    #[test]
    fn non_monic_rational_input() {
        // (2x + 1)(3x^2 - 5)/7
        let f = (&p(&[1, 2]) * &p(&[-5, 0, 3])).scale(&crate::rational::rat(1, 7));
        let fs = factor_rational(&f).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(product(&fs), f.monic());
    }

    #[test]
    fn berlekamp_counts_roots() {
        // x^3 - x = x(x-1)(x+1) over F_5
        let fs = fp::berlekamp(&[0, 4, 0, 1], 5);
        assert_eq!(fs.len(), 3);
    }

    #[test]
    fn subsets_enumerate() {
        let all: Vec<_> = Subsets::new(4, 2).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 1]);
        assert_eq!(all[5], vec![2, 3]);
        assert_eq!(Subsets::new(2, 3).count(), 0);
    }
}
