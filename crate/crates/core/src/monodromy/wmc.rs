use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::ratlin::{coordinates, Matrix};

use super::filtration::{monodromy_filtration, weight_filtration, Filtration};
use super::nilpotent::NilpotentOperator;
use super::weight::{factor_weights, weight_decomposition, FrobeniusData};

/// `N·Φ = q·Φ·N`.
pub fn check_commutation(n: &NilpotentOperator, f: &FrobeniusData) -> Result<bool> {
    if n.dim() != f.dim() {
        return Err(Error::DimensionMismatch(format!("N is {0}x{0}, Φ is {1}x{1}", n.dim(), f.dim())));
    }
    let lhs = n.matrix() * f.matrix();
    let rhs = (f.matrix() * n.matrix()).scale(&int(f.q()));
    Ok(lhs == rhs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `NΦ ≠ qΦN`.
    Commutation,
    /// `Fil_j ≠ W_{i+j}`.
    FiltrationMismatch { j: i64, monodromy_dim: usize, weight_dim: usize },
    /// Φ does not preserve `Fil_j`, so it has no induced action on `gr_j`.
    NotStable { j: i64 },
    /// An eigenvalue on `gr_j` has the wrong weight.
    GradedWeight { j: i64, weight: i64, expected: i64 },
    /// A characteristic-polynomial factor is not pure of any integer weight.
    NotPure { j: Option<i64>, detail: String },
    /// The subspace comparison and the graded-weight computation disagree.
    ChecksDisagree { filtrations_equal: bool, graded_ok: bool },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Commutation => write!(f, "N·Φ ≠ q·Φ·N"),
            Violation::FiltrationMismatch { j, monodromy_dim, weight_dim } => write!(
                f,
                "filtration mismatch at j={j}: dim Fil_j = {monodromy_dim}, dim W_(i+j) = {weight_dim}"
            ),
            Violation::NotStable { j } => write!(f, "Φ does not preserve Fil_{j}"),
            Violation::GradedWeight { j, weight, expected } => {
                write!(f, "gr_{j} carries weight {weight}, expected {expected}")
            }
            Violation::NotPure { j: Some(j), detail } => write!(f, "gr_{j}: {detail}"),
            Violation::NotPure { j: None, detail } => write!(f, "Φ: {detail}"),
            Violation::ChecksDisagree { filtrations_equal, graded_ok } => write!(
                f,
                "subspace comparison ({filtrations_equal}) disagrees with graded weights ({graded_ok})"
            ),
        }
    }
}

#[derive(Clone, Debug)]
pub struct WmcReport {
    pub commutation_ok: bool,
    pub filtrations_equal: bool,
    /// `j ↦ [(weight, multiplicity)]` for each nonzero `gr_j` of the
    /// monodromy filtration, multiplicities counted as dimensions.
    pub graded_weights: BTreeMap<i64, Vec<(i64, usize)>>,
    pub violations: Vec<Violation>,
    pub monodromy: Filtration,
    /// `None` when the weight decomposition could not be formed.
    pub weight: Option<Filtration>,
}

impl WmcReport {
    pub fn passed(&self) -> bool {
        self.commutation_ok && self.filtrations_equal && self.violations.is_empty()
    }
}

/// Matrix of the map induced by `m` on `gr_j` of `fil`, in the basis
/// [`Filtration::graded_basis`]. `None` when `m` does not preserve the
/// filtration at `j` or `j − 1`.
pub fn induced_on_graded(fil: &Filtration, m: &Matrix, j: i64) -> Option<Matrix> {
    let below = fil.piece(j - 1);
    let here = fil.piece(j);
    for s in [&below, &here] {
        if !s.contains(&s.map(m).ok()?).ok()? {
            return None;
        }
    }
    let lower = below.basis_vectors();
    let comp = fil.graded_basis(j);
    let mut full_basis = lower.clone();
    full_basis.extend(comp.iter().cloned());
    let k = comp.len();
    let mut out = Matrix::zeros(k, k);
    for (col, c) in comp.iter().enumerate() {
        let image = m.mul_vec(c);
        let coords = coordinates(&full_basis, &image)?;
        for row in 0..k {
            out[(row, col)] = coords[lower.len() + row].clone();
        }
    }
    Some(out)
}

/// Compares `Fil_j` with `W_{i+j}` as subspaces and, independently, computes
/// the weights of Φ on every `gr_j` of the monodromy filtration.
pub fn check_wmc(n: &NilpotentOperator, f: &FrobeniusData, i: i64, tol: &Rational) -> Result<WmcReport> {
    let commutation_ok = check_commutation(n, f)?;
    let mut violations = Vec::new();
    if !commutation_ok {
        violations.push(Violation::Commutation);
    }
    let monodromy = monodromy_filtration(n);

    let weight = match weight_decomposition(f, tol) {
        Ok(w) => Some(weight_filtration(&w)),
        Err(Error::NotPure { factor, reason }) => {
            violations.push(Violation::NotPure { j: None, detail: format!("{factor}: {reason}") });
            None
        }
        Err(e) => return Err(e),
    };

    let mut filtrations_equal = false;
    if let Some(w) = &weight {
        let shifted = w.shifted(i);
        filtrations_equal = shifted == monodromy;
        if !filtrations_equal {
            let lo = monodromy.lo().min(shifted.lo()) - 1;
            let hi = monodromy.hi().max(shifted.hi()) + 1;
            for j in lo..=hi {
                let a = monodromy.piece(j);
                let b = shifted.piece(j);
                if a != b {
                    violations.push(Violation::FiltrationMismatch {
                        j,
                        monodromy_dim: a.dim(),
                        weight_dim: b.dim(),
                    });
                }
            }
        }
    }

    let mut graded_weights = BTreeMap::new();
    let mut graded_ok = true;
    for j in monodromy.jumps() {
        let Some(induced) = induced_on_graded(&monodromy, f.matrix(), j) else {
            violations.push(Violation::NotStable { j });
            graded_ok = false;
            continue;
        };
        match factor_weights(&induced, f.q(), tol) {
            Ok(groups) => {
                let list: Vec<(i64, usize)> = groups
                    .iter()
                    .map(|(w, fs)| {
                        let dim = fs.iter().map(|(g, m)| g.degree().unwrap_or(0) * *m as usize).sum();
                        (*w, dim)
                    })
                    .collect();
                for &(w, _) in &list {
                    if w != i + j {
                        violations.push(Violation::GradedWeight { j, weight: w, expected: i + j });
                        graded_ok = false;
                    }
                }
                graded_weights.insert(j, list);
            }
            Err(Error::NotPure { factor, reason }) => {
                violations.push(Violation::NotPure { j: Some(j), detail: format!("{factor}: {reason}") });
                graded_ok = false;
            }
            Err(e) => return Err(e),
        }
    }

    if commutation_ok && weight.is_some() && filtrations_equal != graded_ok {
        violations.push(Violation::ChecksDisagree { filtrations_equal, graded_ok });
    }

    Ok(WmcReport { commutation_ok, filtrations_equal, graded_weights, violations, monodromy, weight })
}

/// `N·W_m ⊆ W_{m−2}` for every `m`.
pub fn check_weight_lowering(n: &NilpotentOperator, w: &Filtration) -> Result<bool> {
    for m in w.lo() - 1..=w.hi() + 2 {
        let image = w.piece(m).map(n.matrix())?;
        if !w.piece(m - 2).contains(&image)? {
            return Ok(false);
        }
    }
    Ok(true)
}
