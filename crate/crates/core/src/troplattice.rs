//! Lattices in ℚʳ, hypercube formal models of tori and their quotients,
//! special-fiber dual graphs, and level bookkeeping along a Frobenius tower.
//!
//! A hypercube model of width `α` covers ℝʳ by the closed cubes
//! `e·α + [0, α]ʳ`, `e ∈ ℤʳ`. The lattice acts on the model when `α` divides
//! it, and the quotient's special fiber has one component per cube orbit.
//! Along a tower the width at level `n` is `α/pⁿ`; multiplication by `p`
//! scales level-`n+1` cubes onto level-`n` cubes.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{floor_int, format_rational, from_bigint, rational_gcd, Rational};
use crate::ratlin::Matrix;

/// Full-rank lattice `Λ ⊂ ℚʳ`; the columns of `generators` are the images
/// `ℓ(m_1), …, ℓ(m_r)` of a basis of `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalLattice {
    generators: Matrix,
}

impl TropicalLattice {
    pub fn new(generators: Matrix) -> Result<Self> {
        generators.require_square()?;
        if generators.rows() == 0 || generators.det()?.is_zero() {
            return Err(Error::RankDeficient);
        }
        Ok(TropicalLattice { generators })
    }

    /// Rank-1 lattice `λℤ`.
    pub fn rank_one(lambda: Rational) -> Result<Self> {
        Self::new(Matrix::from_vec(1, 1, vec![lambda])?)
    }

    pub fn rank(&self) -> usize {
        self.generators.rows()
    }

    pub fn generators(&self) -> &Matrix {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> Vec<Rational> {
        self.generators.column(i)
    }

    /// `|det G|`, the covolume.
    pub fn covolume(&self) -> Rational {
        self.generators.det().expect("square").abs()
    }

    /// Hermite normal form of the generator columns: lower triangular, positive
    /// diagonal, entries left of the diagonal reduced into `[0, diagonal)`.
    /// Two generator matrices span the same lattice iff their forms agree.
    pub fn hermite_normal_form(&self) -> Matrix {
        let r = self.rank();
        let den = self.generators.entries().iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let mut a: Vec<Vec<BigInt>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| (&self.generators[(i, j)] * from_bigint(den.clone())).to_integer())
                    .collect()
            })
            .collect();
        column_hnf(&mut a);
        let scale = Rational::from_integer(den);
        let rows = a
            .into_iter()
            .map(|row| row.into_iter().map(|x| from_bigint(x) / &scale).collect())
            .collect();
        Matrix::from_rows(rows, r).expect("square")
    }
}

/// In-place column-style HNF of a nonsingular square integer matrix.
fn column_hnf(a: &mut [Vec<BigInt>]) {
    let n = a.len();
    let col_op = |a: &mut [Vec<BigInt>], j: usize, k: usize, (p, q, r, s): (&BigInt, &BigInt, &BigInt, &BigInt)| {
        // (col_j, col_k) ← (p·col_j + q·col_k, r·col_j + s·col_k)
        for row in a.iter_mut() {
            let (x, y) = (row[j].clone(), row[k].clone());
            row[j] = p * &x + q * &y;
            row[k] = r * &x + s * &y;
        }
    };
    for i in 0..n {
        // Clear row i to the right of the diagonal.
        for k in i + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let x = a[i][i].clone();
            let y = a[i][k].clone();
            let e = x.extended_gcd(&y);
            let (u, v) = (e.x, e.y);
            let (xg, yg) = (&x / &e.gcd, &y / &e.gcd);
            col_op(a, i, k, (&u, &v, &-yg, &xg));
        }
        if a[i][i].is_negative() {
            for row in a.iter_mut() {
                row[i] = -row[i].clone();
            }
        }
        let d = a[i][i].clone();
        for k in 0..i {
            let f = a[i][k].div_floor(&d);
            if f.is_zero() {
                continue;
            }
            for row in a.iter_mut() {
                let v = &row[k] - &f * &row[i];
                row[k] = v;
            }
        }
    }
}

/// Side length `α > 0` of the hypercubes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellWidth(Rational);

impl CellWidth {
    pub fn new(alpha: Rational) -> Result<Self> {
        if alpha.is_positive() {
            Ok(CellWidth(alpha))
        } else {
            Err(Error::NonPositiveWidth)
        }
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    /// `α / pⁿ`.
    pub fn refine(&self, p: u64, n: u32) -> CellWidth {
        let pn = num_traits::pow(BigInt::from(p), n as usize);
        CellWidth(&self.0 / from_bigint(pn))
    }

    /// `α / m`.
    pub fn divide_by(&self, m: u64) -> CellWidth {
        CellWidth(&self.0 / from_bigint(BigInt::from(m)))
    }
}

impl fmt::Display for CellWidth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

/// Largest `α` with `Λ ⊂ αℤʳ`: the positive gcd of all generator coordinates.
pub fn max_dividing_width(lat: &TropicalLattice) -> CellWidth {
    let g = rational_gcd(lat.generators.entries()).expect("full-rank lattice has a nonzero entry");
    CellWidth(g)
}

/// `Λ ⊂ αℤʳ`.
pub fn divides(alpha: &CellWidth, lat: &TropicalLattice) -> bool {
    lat.generators.entries().iter().all(|x| (x / &alpha.0).is_integer())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypercubeModel {
    pub rank: usize,
    pub alpha: CellWidth,
}

/// Cell containing a point, with faces flagged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellIndex {
    pub e: Vec<BigInt>,
    /// `true` where `u_i/α` is an integer, i.e. the point lies on the face
    /// shared with the neighbouring cell `e − e_i`.
    pub on_boundary: Vec<bool>,
}

/// `e = ⌊u/α⌋` componentwise.
pub fn cell_index(u: &[Rational], alpha: &CellWidth) -> CellIndex {
    let scaled: Vec<Rational> = u.iter().map(|x| x / &alpha.0).collect();
    CellIndex {
        e: scaled.iter().map(floor_int).collect(),
        on_boundary: scaled.iter().map(|x| x.is_integer()).collect(),
    }
}

/// Closed-cube membership, `eα ≤ u ≤ (e+1)α` in every coordinate.
pub fn in_closed_cell(u: &[Rational], e: &[BigInt], alpha: &CellWidth) -> bool {
    u.len() == e.len()
        && u.iter().zip(e).all(|(x, ei)| {
            let lo = from_bigint(ei.clone()) * &alpha.0;
            let hi = from_bigint(ei + 1) * &alpha.0;
            &lo <= x && x <= &hi
        })
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Quotient of the width-`α/pⁿ` hypercube model by the lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientModel {
    lattice: TropicalLattice,
    alpha: CellWidth,
    p: u64,
    level: u32,
}

impl QuotientModel {
    pub fn new(lattice: TropicalLattice, alpha: CellWidth, p: u64, level: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let w = alpha.refine(p, level);
        if !divides(&w, &lattice) {
            return Err(Error::ModelDoesNotExist { alpha: w.to_string() });
        }
        Ok(QuotientModel { lattice, alpha, p, level })
    }

    pub fn lattice(&self) -> &TropicalLattice {
        &self.lattice
    }

    /// Base width `α` (level 0).
    pub fn alpha(&self) -> &CellWidth {
        &self.alpha
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// `α/pⁿ`.
    pub fn width(&self) -> CellWidth {
        self.alpha.refine(self.p, self.level)
    }

    pub fn at_level(&self, level: u32) -> Result<QuotientModel> {
        QuotientModel::new(self.lattice.clone(), self.alpha.clone(), self.p, level)
    }

    /// Rank-1 period `k = |λ|/α`, in cells at level 0.
    pub fn period_cells(&self) -> Result<i64> {
        self.require_rank_one()?;
        let k = self.lattice.generators[(0, 0)].abs() / self.alpha.value();
        k.to_integer().to_i64().ok_or(Error::Overflow("period"))
    }

    /// Residue modulus `k·pⁿ` at this level (rank 1).
    pub fn modulus(&self) -> Result<i64> {
        let k = self.period_cells()?;
        let pn = (self.p as i64).checked_pow(self.level).ok_or(Error::Overflow("p^n"))?;
        k.checked_mul(pn).ok_or(Error::Overflow("k·p^n"))
    }

    fn require_rank_one(&self) -> Result<()> {
        if self.lattice.rank() == 1 {
            Ok(())
        } else {
            Err(Error::Unsupported(format!("rank {} (only rank 1 is supported)", self.lattice.rank())))
        }
    }
}

/// Number of special-fiber components, `|det G| / (α/pⁿ)ʳ`.
pub fn quotient_components(q: &QuotientModel) -> BigInt {
    let w = q.width();
    let vol = num_traits::pow(w.value().clone(), q.lattice.rank());
    let c = q.lattice.covolume() / vol;
    debug_assert!(c.is_integer());
    c.to_integer()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    pub vertices: Vec<i64>,
    /// `(a, b, multiplicity)` with `a ≤ b`; `a == b` is a loop.
    pub edges: Vec<(i64, i64, u32)>,
}

impl DualGraph {
    /// Degree with loops counted twice.
    pub fn degree(&self, v: i64) -> u32 {
        self.edges
            .iter()
            .map(|&(a, b, m)| if a == v && b == v { 2 * m } else if a == v || b == v { m } else { 0 })
            .sum()
    }

    pub fn edge_count(&self) -> u32 {
        self.edges.iter().map(|e| e.2).sum()
    }

    /// Graphviz rendering; one `--` line per edge, repeated by multiplicity.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph special_fiber {\n");
        for v in &self.vertices {
            s.push_str(&format!("  {v} [label=\"P1 (cell {v})\"];\n"));
        }
        for &(a, b, m) in &self.edges {
            for _ in 0..m {
                s.push_str(&format!("  {a} -- {b};\n"));
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Cycle of `P¹`s for a rank-1 quotient: consecutive cells share a face and
/// the last is glued to the first by the lattice.
pub fn dual_graph(q: &QuotientModel) -> Result<DualGraph> {
    q.require_rank_one()?;
    let c = q.modulus()?;
    let vertices: Vec<i64> = (0..c).collect();
    let edges = match c {
        1 => vec![(0, 0, 1)],
        2 => vec![(0, 1, 2)],
        _ => (0..c).map(|i| {
            let j = (i + 1) % c;
            (i.min(j), i.max(j), 1)
        }).collect(),
    };
    Ok(DualGraph { vertices, edges })
}

/// Image of a level-`n+1` cell under the tower map to level `n` (rank 1).
pub fn tower_project(e: i64, q: &QuotientModel) -> Result<i64> {
    let upper = q.at_level(q.level + 1)?.modulus()?;
    if !(0..upper).contains(&e) {
        return Err(Error::InvalidResidue { index: e, modulus: upper });
    }
    Ok(e % q.modulus()?)
}

/// All level-`n+m` cells over the level-`n` cell `e` (rank 1), ascending.
pub fn tower_preimages(e: i64, q: &QuotientModel, steps: u32) -> Result<Vec<i64>> {
    let modulus = q.modulus()?;
    if !(0..modulus).contains(&e) {
        return Err(Error::InvalidResidue { index: e, modulus });
    }
    let count = (q.p as i64).checked_pow(steps).ok_or(Error::Overflow("p^m"))?;
    q.at_level(q.level.checked_add(steps).ok_or(Error::Overflow("level"))?)?.modulus()?;
    Ok((0..count).map(|t| e + t * modulus).collect())
}

/// Canonical tropical description of a quotient model. Towers built from the
/// same lattice and widths have equal descriptors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Descriptor {
    pub rank: usize,
    pub hnf: Matrix,
    pub alpha: CellWidth,
    pub p: u64,
    pub level: u32,
    pub components: BigInt,
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "r={};hnf={};alpha={};p={};n={};components={}",
            self.rank, self.hnf, self.alpha, self.p, self.level, self.components
        )
    }
}

pub fn descriptor(q: &QuotientModel) -> Descriptor {
    Descriptor {
        rank: q.lattice.rank(),
        hnf: q.lattice.hermite_normal_form(),
        alpha: q.alpha.clone(),
        p: q.p,
        level: q.level,
        components: quotient_components(q),
    }
}
