use crate::error::{Error, Result};
use crate::ratlin::{image, kernel, Matrix, Subspace};

use super::nilpotent::NilpotentOperator;
use super::weight::WeightDecomposition;

/// An exhaustive, separated, increasing ℤ-indexed filtration of ℚⁿ.
///
/// Stored in normalized form: `lo` is the first index with a nonzero piece
/// and `hi` the first index whose piece is the whole space, so two equal
/// filtrations compare equal with `==`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    ambient_dim: usize,
    lo: i64,
    hi: i64,
    pieces: Vec<Subspace>,
}

impl Filtration {
    pub fn trivial(ambient_dim: usize) -> Self {
        Filtration { ambient_dim, lo: 0, hi: 0, pieces: Vec::new() }
    }

    /// Builds from explicit pieces for `first..first + pieces.len()`; indices
    /// below are taken as `{0}` and indices above as the whole space.
    pub fn from_pieces(ambient_dim: usize, first: i64, pieces: Vec<Subspace>) -> Result<Self> {
        if pieces.iter().any(|p| p.ambient_dim() != ambient_dim) {
            return Err(Error::DimensionMismatch("filtration piece ambient".into()));
        }
        let mut prev = Subspace::zero(ambient_dim);
        for p in pieces.iter().chain(std::iter::once(&Subspace::full(ambient_dim))) {
            if !p.contains(&prev)? {
                return Err(Error::Precondition("filtration pieces must increase".into()));
            }
            prev = p.clone();
        }
        let lo_off = pieces.iter().position(|p| !p.is_zero()).unwrap_or(pieces.len());
        let hi_off = pieces.iter().position(Subspace::is_full).unwrap_or(pieces.len());
        if ambient_dim == 0 {
            return Ok(Self::trivial(0));
        }
        let kept = pieces[lo_off..hi_off.max(lo_off)].to_vec();
        let lo = first + lo_off as i64;
        Ok(Filtration { ambient_dim, lo, hi: lo + kept.len() as i64, pieces: kept })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// First index with a nonzero piece.
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// First index whose piece is the whole space.
    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn piece(&self, j: i64) -> Subspace {
        if j < self.lo {
            Subspace::zero(self.ambient_dim)
        } else if j >= self.hi {
            Subspace::full(self.ambient_dim)
        } else {
            self.pieces[(j - self.lo) as usize].clone()
        }
    }

    pub fn graded_dim(&self, j: i64) -> usize {
        self.piece(j).dim() - self.piece(j - 1).dim()
    }

    /// Indices with a nonzero graded piece, ascending.
    pub fn jumps(&self) -> Vec<i64> {
        (self.lo..=self.hi).filter(|&j| self.graded_dim(j) > 0).collect()
    }

    /// `j ↦ F_{j+k}`.
    pub fn shifted(&self, k: i64) -> Filtration {
        Filtration { lo: self.lo - k, hi: self.hi - k, ..self.clone() }
    }

    /// Basis vectors of a complement of `F_{j-1}` inside `F_j`.
    pub fn graded_basis(&self, j: i64) -> Vec<Vec<crate::Rational>> {
        self.piece(j)
            .complement_of(&self.piece(j - 1))
            .expect("filtration is increasing")
    }
}

/// `Fil_j = Σ_{a − b = j} ker N^{a+1} ∩ Im N^b`, centered at 0.
pub fn monodromy_filtration(n: &NilpotentOperator) -> Filtration {
    let d = n.dim();
    let e = n.nilpotency_index() as i64;
    if d == 0 {
        return Filtration::trivial(0);
    }
    let powers: Vec<Matrix> = (0..=e as u32 + 1).map(|k| n.power(k)).collect();
    let kernels: Vec<Subspace> = powers.iter().map(kernel).collect();
    let images: Vec<Subspace> = powers.iter().map(image).collect();
    let ker = |a: i64| &kernels[a.min(e) as usize];
    let im = |b: i64| &images[b.min(e) as usize];
    let pieces = (-e..=e)
        .map(|j| {
            let mut acc = Subspace::zero(d);
            for a in j.max(0)..=j + e {
                let b = a - j;
                let term = ker(a + 1).intersect(im(b)).expect("same ambient");
                acc = acc.sum(&term).expect("same ambient");
            }
            acc
        })
        .collect();
    Filtration::from_pieces(d, -e, pieces).expect("monodromy filtration is increasing")
}

/// `W_m = ⊕_{j ≤ m} W'_j`.
pub fn weight_filtration(w: &WeightDecomposition) -> Filtration {
    let d = w.ambient_dim();
    let weights: Vec<i64> = w.components().keys().copied().collect();
    let (Some(&lo), Some(&hi)) = (weights.first(), weights.last()) else {
        return Filtration::trivial(d);
    };
    let mut acc = Subspace::zero(d);
    let pieces = (lo..=hi)
        .map(|m| {
            if let Some(c) = w.components().get(&m) {
                acc = acc.sum(c).expect("same ambient");
            }
            acc.clone()
        })
        .collect();
    Filtration::from_pieces(d, lo, pieces).expect("weight filtration is increasing")
}
