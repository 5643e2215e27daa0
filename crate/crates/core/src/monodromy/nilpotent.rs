use num_traits::One;

use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::ratlin::Matrix;

/// A nilpotent endomorphism of ℚᵈ together with its nilpotency index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentOperator {
    n_matrix: Matrix,
    nilpotency_index: u32,
}

impl NilpotentOperator {
    pub fn new(n_matrix: Matrix) -> Result<Self> {
        n_matrix.require_square()?;
        let d = n_matrix.rows();
        let mut power = Matrix::identity(d);
        for e in 0..=d as u32 {
            if power.is_zero() {
                return Ok(NilpotentOperator { n_matrix, nilpotency_index: e });
            }
            power = &power * &n_matrix;
        }
        Err(Error::NotNilpotent)
    }

    pub fn zero(d: usize) -> Self {
        Self::new(Matrix::zeros(d, d)).expect("zero is nilpotent")
    }

    pub fn matrix(&self) -> &Matrix {
        &self.n_matrix
    }

    pub fn dim(&self) -> usize {
        self.n_matrix.rows()
    }

    /// Smallest `e` with `Nᵉ = 0`; zero only in dimension 0.
    pub fn nilpotency_index(&self) -> u32 {
        self.nilpotency_index
    }

    pub fn scaled(&self, c: &Rational) -> Result<Self> {
        Self::new(self.n_matrix.scale(c))
    }

    pub fn power(&self, k: u32) -> Matrix {
        self.n_matrix.pow(k).expect("square")
    }
}

/// `log(u) = Σ_{k≥1} (−1)^{k+1} (u − I)^k / k`, a finite sum for unipotent `u`.
pub fn log_unipotent(u: &Matrix) -> Result<NilpotentOperator> {
    u.require_square()?;
    let d = u.rows();
    let m = u - &Matrix::identity(d);
    let m = NilpotentOperator::new(m).map_err(|e| match e {
        Error::NotNilpotent => Error::NotUnipotent,
        other => other,
    })?;
    let mut acc = Matrix::zeros(d, d);
    let mut power = Matrix::identity(d);
    for k in 1..m.nilpotency_index().max(1) as i64 {
        power = &power * m.matrix();
        let sign = if k % 2 == 1 { int(1) } else { int(-1) };
        acc = &acc + &power.scale(&(sign / int(k)));
    }
    NilpotentOperator::new(acc)
}

/// `exp(N) = Σ N^k / k!`.
pub fn exp_nilpotent(n: &NilpotentOperator) -> Matrix {
    let d = n.dim();
    let mut acc = Matrix::identity(d);
    let mut term = Matrix::identity(d);
    for k in 1..n.nilpotency_index().max(1) as i64 {
        term = (&term * n.matrix()).scale(&(Rational::one() / int(k)));
        acc = &acc + &term;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn log_examples() {
        assert!(log_unipotent(&Matrix::identity(3)).unwrap().matrix().is_zero());
        let u = Matrix::from_i64(&[&[1, 1], &[0, 1]]);
        assert_eq!(log_unipotent(&u).unwrap().matrix(), &Matrix::from_i64(&[&[0, 1], &[0, 0]]));
        let u = Matrix::from_i64(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]);
        let n = log_unipotent(&u).unwrap();
        let mut expect = Matrix::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        expect[(0, 2)] = rat(-1, 2);
        assert_eq!(n.matrix(), &expect);
        assert_eq!(exp_nilpotent(&n), u);
    }

    #[test]
    fn non_unipotent_rejected() {
        let u = Matrix::from_i64(&[&[2, 0], &[0, 1]]);
        assert_eq!(log_unipotent(&u), Err(Error::NotUnipotent));
        assert!(matches!(log_unipotent(&Matrix::zeros(1, 2)), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn nilpotency_index() {
        assert_eq!(NilpotentOperator::zero(0).nilpotency_index(), 0);
        assert_eq!(NilpotentOperator::zero(3).nilpotency_index(), 1);
        let j3 = Matrix::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(NilpotentOperator::new(j3).unwrap().nilpotency_index(), 3);
        assert_eq!(NilpotentOperator::new(Matrix::identity(2)), Err(Error::NotNilpotent));
    }
}
