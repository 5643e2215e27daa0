use num_traits::Zero;

use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// A subspace of ℚⁿ stored by its reduced row-echelon basis.
///
/// The echelon basis is unique, so `==` on `Subspace` is equality of
/// subspaces.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace { ambient_dim: n, basis: Matrix::zeros(0, n) }
    }

    pub fn full(n: usize) -> Self {
        Subspace { ambient_dim: n, basis: Matrix::identity(n) }
    }

    /// Span of the rows of `m`.
    pub fn row_span(m: &Matrix) -> Self {
        let r = m.rref();
        let k = r.pivots.len();
        let rows = (0..k).map(|i| r.matrix.row(i).to_vec()).collect();
        Subspace { ambient_dim: m.cols(), basis: Matrix::from_rows(rows, m.cols()).unwrap() }
    }

    pub fn span(vectors: &[Vec<Rational>], n: usize) -> Result<Self> {
        Ok(Self::row_span(&Matrix::from_rows(vectors.to_vec(), n)?))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// Canonical basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.row_vecs()
    }

    fn check_same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of ℚ^{} and ℚ^{}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same_ambient(other)?;
        let mut rows = self.basis.row_vecs();
        rows.extend(other.basis.row_vecs());
        Subspace::span(&rows, self.ambient_dim)
    }

    /// Intersection as the annihilator of the sum of annihilators.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same_ambient(other)?;
        let mut rows = self.orthogonal().basis.row_vecs();
        rows.extend(other.orthogonal().basis.row_vecs());
        let stacked = Matrix::from_rows(rows, self.ambient_dim)?;
        Ok(kernel(&stacked))
    }

    /// True when `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_same_ambient(other)?;
        Ok(other.basis.row_vecs().iter().all(|v| self.contains_vector(v)))
    }

    pub fn contains_vector(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "vector length mismatch");
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Reduces `v` against the echelon basis; the result is zero iff `v` lies
    /// in the subspace.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut w = v.to_vec();
        for i in 0..self.basis.rows() {
            let row = self.basis.row(i);
            let p = row.iter().position(|x| !x.is_zero()).expect("echelon row is nonzero");
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (wj, rj) in w.iter_mut().zip(row) {
                if !rj.is_zero() {
                    *wj -= &f * rj;
                }
            }
        }
        w
    }

    /// Standard-dot-product orthogonal complement.
    pub fn orthogonal(&self) -> Subspace {
        kernel(&self.basis)
    }

    /// `m · self`, the image of the subspace under a linear map.
    pub fn map(&self, m: &Matrix) -> Result<Subspace> {
        if m.cols() != self.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "map with {} columns applied to a subspace of ℚ^{}",
                m.cols(),
                self.ambient_dim
            )));
        }
        let rows: Vec<_> = self.basis.row_vecs().iter().map(|v| m.mul_vec(v)).collect();
        Subspace::span(&rows, m.rows())
    }

    /// Vectors that extend a basis of `sub` to a basis of `self`. Requires
    /// `sub ⊆ self`. The choice is deterministic: echelon rows of `self` are
    /// taken greedily.
    pub fn complement_of(&self, sub: &Subspace) -> Result<Vec<Vec<Rational>>> {
        if !self.contains(sub)? {
            return Err(Error::Precondition("complement_of requires a subspace".into()));
        }
        let mut acc = sub.clone();
        let mut out = Vec::new();
        for v in self.basis.row_vecs() {
            if !acc.contains_vector(&v) {
                acc = acc.sum(&Subspace::span(std::slice::from_ref(&v), self.ambient_dim)?)?;
                out.push(v);
            }
        }
        Ok(out)
    }
}

/// `{v : m v = 0}`.
pub fn kernel(m: &Matrix) -> Subspace {
    let n = m.cols();
    let r = m.rref();
    let free: Vec<usize> = (0..n).filter(|c| !r.pivots.contains(c)).collect();
    let rows: Vec<Vec<Rational>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = num_traits::One::one();
            for (i, &p) in r.pivots.iter().enumerate() {
                v[p] = -r.matrix[(i, f)].clone();
            }
            v
        })
        .collect();
    Subspace::span(&rows, n).expect("kernel vectors have ambient length")
}

/// Column span of `m`.
pub fn image(m: &Matrix) -> Subspace {
    Subspace::row_span(&m.transpose())
}

pub fn subspace_sum(u: &Subspace, v: &Subspace) -> Result<Subspace> {
    u.sum(v)
}

pub fn subspace_intersect(u: &Subspace, v: &Subspace) -> Result<Subspace> {
    u.intersect(v)
}

pub fn contains(u: &Subspace, v: &Subspace) -> Result<bool> {
    u.contains(v)
}

/// Coordinates of `v` in the (linearly independent) family `basis`, or `None`
/// when `v` is outside its span.
pub fn coordinates(basis: &[Vec<Rational>], v: &[Rational]) -> Option<Vec<Rational>> {
    let n = v.len();
    let k = basis.len();
    // Solve Bᵀ x = v via the augmented matrix [Bᵀ | v].
    let mut aug = Matrix::zeros(n, k + 1);
    for (j, b) in basis.iter().enumerate() {
        for i in 0..n {
            aug[(i, j)] = b[i].clone();
        }
    }
    for i in 0..n {
        aug[(i, k)] = v[i].clone();
    }
    let r = aug.rref();
    if r.pivots.contains(&k) || r.pivots.len() < k {
        return None;
    }
    Some((0..k).map(|i| r.matrix[(i, k)].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn e(n: usize, i: usize) -> Vec<Rational> {
        let mut v = vec![int(0); n];
        v[i] = int(1);
        v
    }

    fn span(vs: &[Vec<Rational>], n: usize) -> Subspace {
        Subspace::span(vs, n).unwrap()
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&Matrix::zeros(3, 3)), Subspace::full(3));
        assert_eq!(kernel(&Matrix::identity(3)), Subspace::zero(3));
        let j = Matrix::from_i64(&[&[0, 1], &[0, 0]]);
        assert_eq!(kernel(&j), span(&[e(2, 0)], 2));
    }

    #[test]
    fn image_examples() {
        assert_eq!(image(&Matrix::identity(4)), Subspace::full(4));
        assert_eq!(image(&Matrix::zeros(3, 2)), Subspace::zero(3));
        let j = Matrix::from_i64(&[&[0, 1], &[0, 0]]);
        assert_eq!(image(&j), span(&[e(2, 0)], 2));
    }

    #[test]
    fn sum_examples() {
        let u = span(&[vec![int(1), int(2), int(3)]], 3);
        assert_eq!(u.sum(&Subspace::zero(3)).unwrap(), u);
        assert_eq!(span(&[e(2, 0)], 2).sum(&span(&[e(2, 1)], 2)).unwrap(), Subspace::full(2));
        let e1pe2 = vec![int(1), int(1), int(0)];
        assert_eq!(
            span(&[e(3, 0)], 3).sum(&span(&[e1pe2], 3)).unwrap(),
            span(&[e(3, 0), e(3, 1)], 3)
        );
    }

    #[test]
    fn intersect_examples() {
        let u = span(&[vec![int(1), int(2), int(3)], e(3, 2)], 3);
        assert_eq!(u.intersect(&Subspace::full(3)).unwrap(), u);
        assert_eq!(span(&[e(2, 0)], 2).intersect(&span(&[e(2, 1)], 2)).unwrap(), Subspace::zero(2));
        let a = span(&[e(3, 0), e(3, 1)], 3);
        let b = span(&[e(3, 1), e(3, 2)], 3);
        assert_eq!(a.intersect(&b).unwrap(), span(&[e(3, 1)], 3));
    }

    #[test]
    fn contains_examples() {
        let any = span(&[vec![int(4), int(-1)]], 2);
        assert!(Subspace::full(2).contains(&any).unwrap());
        assert!(!Subspace::zero(2).contains(&span(&[e(2, 0)], 2)).unwrap());
        let e12 = span(&[e(3, 0), e(3, 1)], 3);
        assert!(e12.contains(&span(&[vec![int(1), int(1), int(0)]], 3)).unwrap());
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Subspace::full(2);
        let b = Subspace::full(3);
        assert!(matches!(a.sum(&b), Err(Error::DimensionMismatch(_))));
        assert!(matches!(a.intersect(&b), Err(Error::DimensionMismatch(_))));
        assert!(matches!(a.contains(&b), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn coordinates_solve_and_reject() {
        let basis = vec![vec![int(1), int(1)], vec![int(0), int(1)]];
        assert_eq!(coordinates(&basis, &[int(2), int(5)]), Some(vec![int(2), int(3)]));
        assert_eq!(coordinates(&[vec![int(1), int(0)]], &[int(0), int(1)]), None);
    }

    #[test]
    fn complement_extends_basis() {
        let sub = span(&[vec![int(1), int(1), int(0)]], 3);
        let c = Subspace::full(3).complement_of(&sub).unwrap();
        assert_eq!(c.len(), 2);
        let mut all = c.clone();
        all.push(vec![int(1), int(1), int(0)]);
        assert_eq!(span(&all, 3), Subspace::full(3));
    }
}
