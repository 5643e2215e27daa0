use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::ratlin::{char_poly, factor_rational, kernel, Matrix, RatPoly, Subspace};

use super::weil::weil_weight;

/// A Frobenius lift acting on ℚᵈ, together with the residue field size `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusData {
    phi_matrix: Matrix,
    q: i64,
}

impl FrobeniusData {
    pub fn new(phi_matrix: Matrix, q: i64) -> Result<Self> {
        phi_matrix.require_square()?;
        if q < 2 || !is_prime_power(q) {
            return Err(Error::BadQ(q));
        }
        if phi_matrix.det()?.is_zero() {
            return Err(Error::SingularFrobenius);
        }
        Ok(FrobeniusData { phi_matrix, q })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.phi_matrix
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.phi_matrix.rows()
    }
}

pub fn is_prime_power(q: i64) -> bool {
    if q < 2 {
        return false;
    }
    let mut n = q;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            return n == 1;
        }
        p += 1;
    }
    true
}

/// `V = ⊕_j W'_j`, keyed by weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDecomposition {
    ambient_dim: usize,
    components: BTreeMap<i64, Subspace>,
}

impl WeightDecomposition {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn components(&self) -> &BTreeMap<i64, Subspace> {
        &self.components
    }

    pub fn weights(&self) -> Vec<i64> {
        self.components.keys().copied().collect()
    }

    /// Optional strict mode: every weight must lie in `[0, 2i]`.
    pub fn check_range(&self, i: i64) -> Result<()> {
        for &w in self.components.keys() {
            if w < 0 || w > 2 * i {
                return Err(Error::WeightOutOfRange { weight: w, max: 2 * i });
            }
        }
        Ok(())
    }
}

/// Irreducible factors of `char_poly(m)` grouped by Weil weight, each factor
/// listed once with its multiplicity.
pub fn factor_weights(m: &Matrix, q: i64, tol: &Rational) -> Result<BTreeMap<i64, Vec<(RatPoly, u32)>>> {
    let mut out: BTreeMap<i64, Vec<(RatPoly, u32)>> = BTreeMap::new();
    for (f, mult) in factor_rational(&char_poly(m)?)? {
        let w = weil_weight(&f, q, tol)?;
        out.entry(w).or_default().push((f, mult));
    }
    Ok(out)
}

/// Generalized eigenspaces of Φ grouped by weight: `W'_j = ker P_j(Φ)^d` where
/// `P_j` is the product of the weight-`j` irreducible factors.
pub fn weight_decomposition(f: &FrobeniusData, tol: &Rational) -> Result<WeightDecomposition> {
    let d = f.dim();
    let groups = factor_weights(f.matrix(), f.q(), tol)?;
    let mut components = BTreeMap::new();
    for (w, factors) in groups {
        let p = factors.iter().fold(RatPoly::one(), |acc, (g, _)| &acc * g);
        let m = p.eval_matrix(f.matrix())?.pow(d as u32)?;
        components.insert(w, kernel(&m));
    }
    Ok(WeightDecomposition { ambient_dim: d, components })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::ratlin::companion;
    use crate::monodromy::weil::default_tolerance;

    fn e(n: usize, i: usize) -> Vec<Rational> {
        let mut v = vec![int(0); n];
        v[i] = int(1);
        v
    }

    #[test]
    fn diagonal_splits_by_weight() {
        let f = FrobeniusData::new(Matrix::diagonal(&[int(1), int(5)]), 5).unwrap();
        let w = weight_decomposition(&f, &default_tolerance()).unwrap();
        assert_eq!(w.weights(), vec![0, 2]);
        assert_eq!(w.components()[&0], Subspace::span(&[e(2, 0)], 2).unwrap());
        assert_eq!(w.components()[&2], Subspace::span(&[e(2, 1)], 2).unwrap());
    }

    #[test]
    fn companion_is_single_weight_one() {
        let phi = companion(&RatPoly::from_i64(&[5, -1, 1])).unwrap();
        let w = weight_decomposition(&FrobeniusData::new(phi, 5).unwrap(), &default_tolerance()).unwrap();
        assert_eq!(w.weights(), vec![1]);
        assert_eq!(w.components()[&1], Subspace::full(2));
    }

    #[test]
    fn unipotent_is_generalized_eigenspace() {
        let phi = Matrix::from_i64(&[&[1, 1], &[0, 1]]);
        let w = weight_decomposition(&FrobeniusData::new(phi, 5).unwrap(), &default_tolerance()).unwrap();
        assert_eq!(w.weights(), vec![0]);
        assert_eq!(w.components()[&0], Subspace::full(2));
    }

    #[test]
    fn not_pure_aborts() {
        let phi = companion(&RatPoly::from_i64(&[1, -3, 1])).unwrap();
        let err = weight_decomposition(&FrobeniusData::new(phi, 5).unwrap(), &default_tolerance());
        assert!(matches!(err, Err(Error::NotPure { .. })));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FrobeniusData::new(Matrix::zeros(2, 2), 5), Err(Error::SingularFrobenius));
        assert_eq!(FrobeniusData::new(Matrix::identity(2), 6), Err(Error::BadQ(6)));
        assert_eq!(FrobeniusData::new(Matrix::identity(2), 1), Err(Error::BadQ(1)));
        assert!(FrobeniusData::new(Matrix::identity(2), 9).is_ok());
        assert!(FrobeniusData::new(Matrix::zeros(0, 0), 5).is_ok());
    }

    #[test]
    fn strict_range() {
        let f = FrobeniusData::new(Matrix::diagonal(&[int(1), int(25)]), 5).unwrap();
        let w = weight_decomposition(&f, &default_tolerance()).unwrap();
        assert!(w.check_range(2).is_ok());
        assert_eq!(w.check_range(1), Err(Error::WeightOutOfRange { weight: 4, max: 2 }));
    }
}
