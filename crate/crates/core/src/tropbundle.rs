//! Valuation-level data of line bundles on totally degenerate abeloids and
//! the piecewise-affine functions that witness formal models of them.
//!
//! A bundle is recorded by the lattice basis `m_i` (columns of `G`), the
//! integer matrix `D` of `σ` in the dual basis, and the valuations
//! `v_i = ℓ(χ(m_i))`. The induced form is `S = GᵀD`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{binomial2, format_rational, from_bigint, int, Rational};
use crate::ratlin::Matrix;
use crate::troplattice::{divides, CellWidth, TropicalLattice};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleData {
    lattice: TropicalLattice,
    sigma: Matrix,
    chi_vals: Vec<Rational>,
    form: Matrix,
    /// Ampleness of the abelian-part bundle, supplied by the caller. Trivially
    /// true in the totally degenerate case.
    pub abelian_part_ample: bool,
}

impl BundleData {
    pub fn new(lattice: TropicalLattice, sigma: Matrix, chi_vals: Vec<Rational>) -> Result<Self> {
        let r = lattice.rank();
        if sigma.rows() != r || sigma.cols() != r || chi_vals.len() != r {
            return Err(Error::DimensionMismatch(format!(
                "rank {r} lattice with {}x{} sigma and {} chi values",
                sigma.rows(),
                sigma.cols(),
                chi_vals.len()
            )));
        }
        if !sigma.is_integral() {
            return Err(Error::NonIntegralSigma);
        }
        let form = &lattice.generators().transpose() * &sigma;
        if !form.is_symmetric() {
            return Err(Error::AsymmetricForm);
        }
        Ok(BundleData { lattice, sigma, chi_vals, form, abelian_part_ample: true })
    }

    /// Rank-1 bundle with `λ`, degree `d` and `v = ℓ(χ(m))`.
    pub fn rank_one(lambda: Rational, d: i64, v: Rational) -> Result<Self> {
        Self::new(TropicalLattice::rank_one(lambda)?, Matrix::from_i64(&[&[d]]), vec![v])
    }

    pub fn lattice(&self) -> &TropicalLattice {
        &self.lattice
    }

    pub fn sigma(&self) -> &Matrix {
        &self.sigma
    }

    pub fn chi_vals(&self) -> &[Rational] {
        &self.chi_vals
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }
}

/// `z(u) = slope·u + constant`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineFunction {
    pub slope: Vec<Rational>,
    pub constant: Rational,
}

impl AffineFunction {
    pub fn eval(&self, u: &[Rational]) -> Rational {
        self.slope.iter().zip(u).map(|(a, b)| a * b).sum::<Rational>() + &self.constant
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.slope.iter().all(Zero::is_zero)
    }
}

/// `S = GᵀD`, with `S_ij` the valuation of `⟨m_i, σ(m_j)⟩`.
pub fn form_matrix(b: &BundleData) -> Matrix {
    b.form.clone()
}

/// Leading principal minors of `S`, smallest first.
pub fn leading_minors(b: &BundleData) -> Vec<Rational> {
    (1..=b.rank()).map(|k| b.form.leading(k).det().expect("square")).collect()
}

/// Positive definiteness of `S` by Sylvester's criterion.
pub fn ample_check(b: &BundleData) -> bool {
    leading_minors(b).iter().all(Signed::is_positive)
}

/// Full ampleness: `S` positive definite and the abelian part ample.
pub fn ample_with_abelian_part(b: &BundleData) -> bool {
    b.abelian_part_ample && ample_check(b)
}

/// `ℓ(χ(Σ aᵢmᵢ)) = Σ aᵢvᵢ + Σ_{i<j} aᵢaⱼSᵢⱼ + Σ C(aᵢ,2)Sᵢᵢ`.
pub fn chi_valuation(b: &BundleData, a: &[BigInt]) -> Rational {
    assert_eq!(a.len(), b.rank(), "coefficient vector length");
    let s = &b.form;
    let mut acc = Rational::zero();
    for (i, ai) in a.iter().enumerate() {
        acc += from_bigint(ai.clone()) * &b.chi_vals[i];
        acc += from_bigint(binomial2(ai)) * &s[(i, i)];
        for (j, aj) in a.iter().enumerate().skip(i + 1) {
            acc += from_bigint(ai * aj) * &s[(i, j)];
        }
    }
    acc
}

/// Tropicalization of `c_m` for `m = Σ aᵢmᵢ`: slope `D·a`, constant
/// `ℓ(χ(m))`.
pub fn z_affine(b: &BundleData, a: &[BigInt]) -> AffineFunction {
    let av: Vec<Rational> = a.iter().map(|x| from_bigint(x.clone())).collect();
    AffineFunction { slope: b.sigma.mul_vec(&av), constant: chi_valuation(b, a) }
}

/// Data of `L^{⊗n}`: `(nD, n·v)`.
pub fn tensor_power(b: &BundleData, n: u32) -> BundleData {
    let c = int(n as i64);
    BundleData::new(
        b.lattice.clone(),
        b.sigma.scale(&c),
        b.chi_vals.iter().map(|v| v * &c).collect(),
    )
    .map(|mut t| {
        t.abelian_part_ample = b.abelian_part_ample;
        t
    })
    .expect("scaling preserves symmetry and integrality")
}

fn require_model(b: &BundleData, alpha: &CellWidth) -> Result<()> {
    if divides(alpha, &b.lattice) {
        Ok(())
    } else {
        Err(Error::ModelDoesNotExist { alpha: alpha.to_string() })
    }
}

/// Whether the bundle extends to the width-`α` model: every `vᵢ ∈ αℤ`.
/// Checking generators suffices because `S` has entries in `αℤ` whenever
/// `α` divides the lattice.
pub fn extends_to(b: &BundleData, alpha: &CellWidth) -> Result<bool> {
    require_model(b, alpha)?;
    Ok(b.chi_vals.iter().all(|v| (v / alpha.value()).is_integer()))
}

/// Smallest `n ≥ 0` with [`extends_to`]`(b, α/pⁿ)`.
pub fn minimal_level(b: &BundleData, alpha: &CellWidth, p: u64) -> Result<u32> {
    require_model(b, alpha)?;
    if !crate::troplattice::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let pb = BigInt::from(p);
    let mut level = 0u32;
    let mut coprime = Vec::new();
    for v in &b.chi_vals {
        let mut den = (v / alpha.value()).denom().clone();
        let mut n = 0u32;
        while den.is_multiple_of(&pb) {
            den /= &pb;
            n += 1;
        }
        if !den.is_one() {
            coprime.push(den);
        }
        level = level.max(n);
    }
    if coprime.is_empty() {
        return Ok(level);
    }
    let mut factors: Vec<BigInt> = coprime.iter().flat_map(small_prime_factors).collect();
    factors.sort();
    factors.dedup();
    Err(Error::NoPLevel {
        alpha: alpha.to_string(),
        p,
        factors: factors.iter().map(ToString::to_string).collect(),
    })
}

/// Prime factors by trial division up to 10⁶; an unfactored cofactor is
/// returned as-is.
fn small_prime_factors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut d = BigInt::from(2);
    let limit = BigInt::from(1_000_000);
    while &d * &d <= n && d <= limit {
        if n.is_multiple_of(&d) {
            out.push(d.clone());
            while n.is_multiple_of(&d) {
                n /= &d;
            }
        }
        d += 1;
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

/// Rank-1 continuous piecewise-affine function on ℝ, affine on each cell
/// `[jα, (j+1)α]`, given by its slopes over one period `[0, λ)` and its value
/// at 0. It extends to all of ℝ by `f(u+λ) = f(u) + d·u + v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalSection {
    pub alpha: CellWidth,
    /// Positive period `λ`.
    pub lambda: Rational,
    pub slopes: Vec<Rational>,
    pub base_value: Rational,
    /// Slope increment per period (`d`).
    pub slope_increment: Rational,
    /// Value increment per period (`v`).
    pub value_increment: Rational,
}

impl TropicalSection {
    pub fn period_cells(&self) -> usize {
        self.slopes.len()
    }

    /// Affine piece on cell `j ∈ ℤ`, obtained from the stored period by the
    /// stored periodicity rule.
    pub fn piece(&self, j: i64) -> AffineFunction {
        let k = self.slopes.len() as i64;
        let (t, j0) = j.div_mod_floor(&k);
        let (s0, c0) = self.base_piece(j0 as usize);
        let t = int(t);
        let d = &self.slope_increment;
        let lam = &self.lambda;
        // f(w) = f(w − tλ) + t·v + d·t·(w − tλ) + d·λ·t(t−1)/2
        let slope = &s0 + d * &t;
        let constant = c0 - &s0 * &t * lam + &t * &self.value_increment - d * &t * &t * lam
            + d * lam * &t * (&t - int(1)) / int(2);
        AffineFunction { slope: vec![slope], constant }
    }

    /// `(slope, constant)` on cell `j` of the base period, constants fixed by
    /// continuity from `base_value`.
    fn base_piece(&self, j: usize) -> (Rational, Rational) {
        let a = self.alpha.value();
        let mut value = self.base_value.clone();
        for s in &self.slopes[..j] {
            value += s * a;
        }
        let left = int(j as i64) * a;
        let s = self.slopes[j].clone();
        let c = value - &s * &left;
        (s, c)
    }

    pub fn value_at(&self, u: &Rational) -> Rational {
        let j = (u / self.alpha.value()).floor().to_integer().to_i64().expect("cell index fits i64");
        self.piece(j).eval(std::slice::from_ref(u))
    }
}

/// Rank-1 data normalized to a positive generator: `(λ, d, v)`.
fn positive_rank_one(b: &BundleData) -> Result<(Rational, Rational, Rational)> {
    if b.rank() != 1 {
        return Err(Error::Precondition(format!("rank {} section (rank 1 required)", b.rank())));
    }
    let lambda = b.lattice.generators()[(0, 0)].clone();
    let d = b.sigma[(0, 0)].clone();
    if lambda.is_positive() {
        Ok((lambda, d, b.chi_vals[0].clone()))
    } else {
        // Switch to the generator −m: ℓ(χ(−m)) = −v + S₁₁, and D is unchanged.
        let v = chi_valuation(b, &[BigInt::from(-1)]);
        Ok((-lambda, d, v))
    }
}

/// Balanced witness `f`: slopes `⌊N/k⌋`, with the first `N − k⌊N/k⌋` cells
/// one higher, where `N = v/α` and `k = λ/α`; `f(0) = 0`.
pub fn construct_f(b: &BundleData, alpha: &CellWidth) -> Result<TropicalSection> {
    let (lambda, d, v) = positive_rank_one(b)?;
    if !extends_to(b, alpha)? {
        return Err(Error::Precondition(format!(
            "bundle does not extend to the width-{alpha} model"
        )));
    }
    let k = (&lambda / alpha.value()).to_integer();
    let total = (&v / alpha.value()).to_integer();
    let (base, rem) = total.div_mod_floor(&k);
    let k_usize = k.to_usize().ok_or(Error::Overflow("period cells"))?;
    let rem = rem.to_usize().expect("remainder below k");
    let slopes = (0..k_usize)
        .map(|j| from_bigint(if j < rem { &base + 1 } else { base.clone() }))
        .collect();
    Ok(TropicalSection {
        alpha: alpha.clone(),
        lambda,
        slopes,
        base_value: Rational::zero(),
        slope_increment: d,
        value_increment: v,
    })
}

/// Data at one face `u` between the cells on either side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceTransition {
    pub position: Rational,
    pub left_cell: i64,
    pub right_cell: i64,
    /// `s_left − s_right`.
    pub slope_difference: Rational,
    /// Valuation of the transition function, `f_left − f_right`, as an
    /// affine function of `u`; it vanishes at the face iff `f` is continuous
    /// there.
    pub transition: AffineFunction,
    pub value_left: Rational,
    pub value_right: Rational,
    pub continuous: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionReport {
    pub integer_slopes: bool,
    pub width_matches: bool,
    pub periodicity_data_matches: bool,
    /// `Σ sⱼ·α = v`, equivalently `f(λ) = f(0) + z_λ(0)`.
    pub period_sum_ok: bool,
    pub continuous: bool,
    pub faces: Vec<FaceTransition>,
    pub diagnostics: Vec<String>,
}

impl SectionReport {
    pub fn passed(&self) -> bool {
        self.integer_slopes
            && self.width_matches
            && self.periodicity_data_matches
            && self.period_sum_ok
            && self.continuous
    }
}

/// Checks `f` against the bundle: integer slopes, continuity at every face of
/// one period and its translate, and `f(u+λ) = f(u) + z_λ(u)` cell by cell.
///
/// Cells `0..k` use the stored slopes; cells `k..2k` are translates defined
/// by the bundle's own `z_λ`, so the face at `λ` tests periodicity.
pub fn verify_section(b: &BundleData, f: &TropicalSection) -> Result<SectionReport> {
    let (lambda, d, v) = positive_rank_one(b)?;
    let mut diagnostics = Vec::new();
    let alpha = f.alpha.value();
    let integer_slopes = f.slopes.iter().all(|s| s.is_integer());
    if !integer_slopes {
        diagnostics.push("non-integer slope".to_string());
    }
    let k_rat = &lambda / alpha;
    let width_matches = f.lambda == lambda
        && k_rat.is_integer()
        && k_rat.to_integer() == BigInt::from(f.slopes.len())
        && divides(&f.alpha, &b.lattice);
    if !width_matches {
        diagnostics.push(format!(
            "section has {} cells of width {} over period {}, bundle period is {}",
            f.slopes.len(),
            f.alpha,
            format_rational(&f.lambda),
            format_rational(&lambda)
        ));
        return Ok(SectionReport {
            integer_slopes,
            width_matches,
            periodicity_data_matches: false,
            period_sum_ok: false,
            continuous: false,
            faces: Vec::new(),
            diagnostics,
        });
    }
    let periodicity_data_matches = f.slope_increment == d && f.value_increment == v;
    if !periodicity_data_matches {
        diagnostics.push(format!(
            "section periodicity (d={}, v={}) differs from bundle (d={}, v={})",
            format_rational(&f.slope_increment),
            format_rational(&f.value_increment),
            format_rational(&d),
            format_rational(&v)
        ));
    }
    let k = f.slopes.len() as i64;
    let sum: Rational = f.slopes.iter().sum::<Rational>() * alpha;
    let period_sum_ok = sum == v;
    if !period_sum_ok {
        diagnostics.push(format!(
            "Σ s_j·α = {} but z_λ(0) = {}",
            format_rational(&sum),
            format_rational(&v)
        ));
    }

    let z = AffineFunction { slope: vec![d.clone()], constant: v.clone() };
    let lam = lambda.clone();
    // Cells −1..2k: −1 and k..2k are translates through the bundle's z_λ.
    let piece = |j: i64| -> AffineFunction {
        if (0..k).contains(&j) {
            let (s, c) = f.base_piece(j as usize);
            AffineFunction { slope: vec![s], constant: c }
        } else if j >= k {
            // f(w) = f(w − λ) + z(w − λ)
            let (s, c) = f.base_piece((j - k) as usize);
            let slope = &s + &z.slope[0];
            let constant = c - &s * &lam + &z.constant - &z.slope[0] * &lam;
            AffineFunction { slope: vec![slope], constant }
        } else {
            // f(w) = f(w + λ) − z(w)
            let (s, c) = f.base_piece((j + k) as usize);
            let slope = &s - &z.slope[0];
            let constant = c + &s * &lam - &z.constant;
            AffineFunction { slope: vec![slope], constant }
        }
    };
    let mut faces = Vec::new();
    for j in 0..=k {
        let position = int(j) * alpha;
        let left = piece(j - 1);
        let right = piece(j);
        let u = std::slice::from_ref(&position);
        let value_left = left.eval(u);
        let value_right = right.eval(u);
        let transition = AffineFunction {
            slope: vec![&left.slope[0] - &right.slope[0]],
            constant: &left.constant - &right.constant,
        };
        faces.push(FaceTransition {
            slope_difference: transition.slope[0].clone(),
            continuous: value_left == value_right,
            position,
            left_cell: j - 1,
            right_cell: j,
            transition,
            value_left,
            value_right,
        });
    }
    // Interior faces of the translate period mirror those of the base period.
    for j in k + 1..2 * k {
        let position = int(j) * alpha;
        let u = std::slice::from_ref(&position);
        let (l, r) = (piece(j - 1), piece(j));
        if l.eval(u) != r.eval(u) {
            diagnostics.push(format!("discontinuity at translated face u = {}", format_rational(&position)));
        }
    }
    let continuous = faces.iter().all(|fc| fc.continuous)
        && !diagnostics.iter().any(|d| d.starts_with("discontinuity"));
    for fc in faces.iter().filter(|fc| !fc.continuous) {
        diagnostics.push(format!(
            "discontinuity at u = {}: {} vs {}",
            format_rational(&fc.position),
            format_rational(&fc.value_left),
            format_rational(&fc.value_right)
        ));
    }
    Ok(SectionReport {
        integer_slopes,
        width_matches,
        periodicity_data_matches,
        period_sum_ok,
        continuous,
        faces,
        diagnostics,
    })
}

/// Valuation-level necessary condition for a degree-0 rank-1 bundle to be
/// trivial: `v ∈ λℤ`.
pub fn degree0_triviality_necessary(b: &BundleData) -> Result<bool> {
    if b.rank() != 1 || !b.sigma.is_zero() {
        return Err(Error::Precondition("rank 1 with σ = 0 required".into()));
    }
    let lambda = &b.lattice.generators()[(0, 0)];
    Ok((&b.chi_vals[0] / lambda).is_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn tate(lambda: i64, d: i64, v: Rational) -> BundleData {
        BundleData::rank_one(int(lambda), d, v).unwrap()
    }

    fn width(a: Rational) -> CellWidth {
        CellWidth::new(a).unwrap()
    }

    fn big(a: &[i64]) -> Vec<BigInt> {
        a.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn form_examples() {
        assert_eq!(form_matrix(&tate(2, 3, int(0))), Matrix::from_i64(&[&[6]]));
        assert!(form_matrix(&tate(2, 0, int(0))).is_zero());
        let lat = TropicalLattice::new(Matrix::diagonal(&[int(1), int(2)])).unwrap();
        let err = BundleData::new(lat, Matrix::from_i64(&[&[2, 1], &[1, 1]]), vec![int(0), int(0)]);
        assert_eq!(err, Err(Error::AsymmetricForm));
    }

    #[test]
    fn sigma_must_be_integral() {
        let lat = TropicalLattice::rank_one(int(2)).unwrap();
        let sigma = Matrix::from_vec(1, 1, vec![rat(1, 2)]).unwrap();
        assert_eq!(BundleData::new(lat, sigma, vec![int(0)]), Err(Error::NonIntegralSigma));
    }

    #[test]
    fn ampleness() {
        assert!(ample_check(&tate(2, 1, int(0))));
        assert!(!ample_check(&tate(2, 0, int(0))));
        let lat = TropicalLattice::new(Matrix::identity(2)).unwrap();
        let b = BundleData::new(lat, Matrix::from_i64(&[&[2, 3], &[3, 2]]), vec![int(0), int(0)]).unwrap();
        assert!(!ample_check(&b));
        assert_eq!(leading_minors(&b), vec![int(2), int(-5)]);
        let mut b = tate(2, 1, int(0));
        b.abelian_part_ample = false;
        assert!(ample_check(&b) && !ample_with_abelian_part(&b));
    }

    #[test]
    fn chi_valuation_examples() {
        let b = tate(2, 1, int(3));
        assert_eq!(chi_valuation(&b, &big(&[1])), int(3));
        assert_eq!(chi_valuation(&b, &big(&[2])), int(8));
        assert_eq!(chi_valuation(&b, &big(&[0])), int(0));
    }

    #[test]
    fn z_examples() {
        assert!(z_affine(&tate(2, 0, int(0)), &big(&[1])).is_zero());
        let z = z_affine(&tate(2, 1, int(0)), &big(&[1]));
        assert_eq!(z, AffineFunction { slope: vec![int(1)], constant: int(0) });
        let p = 5;
        let z = z_affine(&tate(2, 0, rat(1, p)), &big(&[1]));
        assert_eq!(z, AffineFunction { slope: vec![int(0)], constant: rat(1, p) });
    }

    #[test]
    fn tensor_power_examples() {
        let b = tate(2, 1, int(3));
        assert_eq!(tensor_power(&b, 1), b);
        let t = tensor_power(&b, 5);
        assert_eq!((t.sigma()[(0, 0)].clone(), t.chi_vals()[0].clone()), (int(5), int(15)));
        let t = tensor_power(&tate(2, 0, rat(1, 2)), 2);
        assert_eq!(t.chi_vals()[0], int(1));
    }

    #[test]
    fn extension_examples() {
        let p = 5;
        assert!(extends_to(&tate(2, 0, int(0)), &width(int(1))).unwrap());
        assert!(!extends_to(&tate(2, 0, rat(1, p)), &width(int(1))).unwrap());
        assert!(extends_to(&tate(2, 0, rat(1, p)), &width(rat(1, p))).unwrap());
        assert!(matches!(
            extends_to(&tate(2, 0, int(0)), &width(int(4))),
            Err(Error::ModelDoesNotExist { .. })
        ));
    }

    #[test]
    fn minimal_level_examples() {
        assert_eq!(minimal_level(&tate(2, 0, int(0)), &width(int(1)), 5).unwrap(), 0);
        assert_eq!(minimal_level(&tate(2, 0, rat(1, 5)), &width(int(1)), 5).unwrap(), 1);
        assert_eq!(minimal_level(&tate(2, 0, rat(1, 25)), &width(int(1)), 5).unwrap(), 2);
        match minimal_level(&tate(2, 0, rat(1, 3)), &width(int(1)), 2) {
            Err(Error::NoPLevel { factors, .. }) => assert_eq!(factors, vec!["3".to_string()]),
            other => panic!("{other:?}"),
        }
        match minimal_level(&tate(2, 0, rat(1, 12)), &width(int(1)), 2) {
            Err(Error::NoPLevel { factors, .. }) => assert_eq!(factors, vec!["3".to_string()]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn construct_examples() {
        let f = construct_f(&tate(2, 0, int(0)), &width(int(1))).unwrap();
        assert_eq!(f.slopes, vec![int(0), int(0)]);
        let p = 3;
        let b = tate(2, 0, rat(1, p));
        let f = construct_f(&b, &width(rat(1, p))).unwrap();
        let mut expect = vec![int(0); 2 * p as usize];
        expect[0] = int(1);
        assert_eq!(f.slopes, expect);
        assert!(verify_section(&b, &f).unwrap().passed());
        let b = tate(1, 1, int(1));
        let f = construct_f(&b, &width(int(1))).unwrap();
        assert_eq!(f.slopes, vec![int(1)]);
        assert_eq!(f.slope_increment, int(1));
        assert!(verify_section(&b, &f).unwrap().passed());
        assert!(construct_f(&tate(2, 0, rat(1, p)), &width(int(1))).is_err());
    }

    #[test]
    fn balanced_distribution_with_negative_total() {
        // v/α = −3 over k = 2 cells: slopes (−1, −2) since ⌊−3/2⌋ = −2, remainder 1.
        let b = tate(2, 0, int(-3));
        let f = construct_f(&b, &width(int(1))).unwrap();
        assert_eq!(f.slopes, vec![int(-1), int(-2)]);
        assert!(verify_section(&b, &f).unwrap().passed());
    }

    #[test]
    fn negative_generator_is_normalized() {
        // λ = −2 with d = 1: S = −2, and the positive generator has v' = −v + S.
        let b = BundleData::rank_one(int(-2), 1, int(4)).unwrap();
        let f = construct_f(&b, &width(int(1))).unwrap();
        assert_eq!(f.lambda, int(2));
        assert_eq!(f.value_increment, int(-6));
        assert!(verify_section(&b, &f).unwrap().passed());
    }

    #[test]
    fn tent_function_section() {
        let b = tate(2, 0, int(0));
        let f = TropicalSection {
            alpha: width(int(1)),
            lambda: int(2),
            slopes: vec![int(1), int(-1)],
            base_value: int(0),
            slope_increment: int(0),
            value_increment: int(0),
        };
        let r = verify_section(&b, &f).unwrap();
        assert!(r.passed(), "{:?}", r.diagnostics);
        let mid = r.faces.iter().find(|fc| fc.position == int(1)).unwrap();
        assert_eq!(mid.slope_difference, int(2));
        assert_eq!(mid.value_left, int(1));
        assert_eq!(mid.transition, AffineFunction { slope: vec![int(2)], constant: int(-2) });
        assert!(mid.transition.eval(&[int(1)]).is_zero());
    }

    #[test]
    fn periodicity_failure() {
        let b = tate(2, 0, int(0));
        let f = TropicalSection {
            alpha: width(int(1)),
            lambda: int(2),
            slopes: vec![int(1), int(0)],
            base_value: int(0),
            slope_increment: int(0),
            value_increment: int(0),
        };
        let r = verify_section(&b, &f).unwrap();
        assert!(!r.passed());
        assert!(!r.period_sum_ok);
        assert!(!r.continuous);
    }

    #[test]
    fn non_integer_slopes_fail() {
        let b = tate(2, 0, int(1));
        let f = TropicalSection {
            alpha: width(int(1)),
            lambda: int(2),
            slopes: vec![rat(1, 2), rat(1, 2)],
            base_value: int(0),
            slope_increment: int(0),
            value_increment: int(1),
        };
        let r = verify_section(&b, &f).unwrap();
        assert!(!r.integer_slopes && r.continuous && !r.passed());
    }

    #[test]
    fn section_extension_is_periodic() {
        let b = tate(2, 1, int(3));
        let f = construct_f(&b, &width(int(1))).unwrap();
        for u in [rat(-7, 3), int(0), rat(1, 2), int(5), rat(11, 2)] {
            let lhs = f.value_at(&(&u + int(2)));
            let rhs = f.value_at(&u) + int(1) * &u + int(3);
            assert_eq!(lhs, rhs, "u = {u}");
        }
    }

    #[test]
    fn triviality_condition() {
        assert!(degree0_triviality_necessary(&tate(2, 0, int(4))).unwrap());
        assert!(!degree0_triviality_necessary(&tate(2, 0, int(1))).unwrap());
        assert!(degree0_triviality_necessary(&tate(2, 0, int(0))).unwrap());
        assert!(degree0_triviality_necessary(&tate(2, 1, int(0))).is_err());
    }
}
