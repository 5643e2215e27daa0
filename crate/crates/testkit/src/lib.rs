//! Seeded generators and independent oracles shared by the test suites.
//!
//! The oracles deliberately avoid the code paths they check: filtrations
//! come from a known Jordan basis, widths from exhaustive divisor search,
//! bundle valuations from stepping one generator at a time, and sections
//! from sampled values.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wmtrop_core::monodromy::{Filtration, FrobeniusData, NilpotentOperator};
use wmtrop_core::rational::{from_bigint, int, pow_i, rat};
use wmtrop_core::ratlin::{Matrix, Subspace};
use wmtrop_core::tropbundle::{chi_valuation, BundleData, TropicalSection};
use wmtrop_core::troplattice::TropicalLattice;
use wmtrop_core::Rational;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational<R: Rng>(rng: &mut R, bound: i64, max_den: i64) -> Rational {
    rat(rng.gen_range(-bound..=bound), rng.gen_range(1..=max_den))
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64, max_den: i64) -> Matrix {
    let data = (0..rows * cols).map(|_| small_rational(rng, bound, max_den)).collect();
    Matrix::from_vec(rows, cols, data).expect("sized data")
}

pub fn random_invertible<R: Rng>(rng: &mut R, d: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, d, d, 3, 2);
        if !m.det().expect("square").is_zero() {
            return m;
        }
    }
}

/// Product of random elementary integer row operations.
pub fn random_unimodular<R: Rng>(rng: &mut R, d: usize) -> Matrix {
    let mut m = Matrix::identity(d);
    if d < 2 {
        return m;
    }
    for _ in 0..2 * d {
        let i = rng.gen_range(0..d);
        let mut j = rng.gen_range(0..d - 1);
        if j >= i {
            j += 1;
        }
        let c = int(rng.gen_range(-2..=2));
        for col in 0..d {
            let add = &c * &m[(j, col)];
            m[(i, col)] += add;
        }
    }
    m
}

/// Random composition of `d` into parts of size at most `max_part`.
pub fn random_partition<R: Rng>(rng: &mut R, d: usize, max_part: usize) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut left = d;
    while left > 0 {
        let s = rng.gen_range(1..=left.min(max_part));
        parts.push(s);
        left -= s;
    }
    parts
}

pub fn random_subspace<R: Rng>(rng: &mut R, n: usize, k: usize) -> Subspace {
    let vs: Vec<Vec<Rational>> =
        (0..k).map(|_| (0..n).map(|_| small_rational(rng, 3, 2)).collect()).collect();
    Subspace::span(&vs, n).expect("ambient dim")
}

fn jordan_block_sum(blocks: &[usize]) -> Matrix {
    let d = blocks.iter().sum();
    let mut j = Matrix::zeros(d, d);
    let mut off = 0;
    for &s in blocks {
        for t in 1..s {
            j[(off + t - 1, off + t)] = int(1);
        }
        off += s;
    }
    j
}

/// Nilpotent `N = P J P⁻¹` with its Jordan basis (columns of `P`) retained.
#[derive(Clone, Debug)]
pub struct JordanNilpotent {
    pub operator: NilpotentOperator,
    pub basis: Matrix,
    pub blocks: Vec<usize>,
}

pub fn random_nilpotent<R: Rng>(rng: &mut R, d: usize) -> JordanNilpotent {
    let mut blocks = random_partition(rng, d, d.max(1));
    blocks.shuffle(rng);
    let p = random_invertible(rng, d);
    let pinv = p.inverse().expect("square").expect("invertible");
    let n = &(&p * &jordan_block_sum(&blocks)) * &pinv;
    JordanNilpotent { operator: NilpotentOperator::new(n).expect("conjugate of nilpotent"), basis: p, blocks }
}

/// Filtration read off a Jordan basis: in a block `e_1 ← e_2 ← … ← e_s`
/// (so `N e_1 = 0`), the vector `e_t` sits in degree `2t − s − 1`.
pub fn jordan_filtration(j: &JordanNilpotent) -> Filtration {
    let d = j.basis.rows();
    if d == 0 {
        return Filtration::trivial(0);
    }
    let mut tagged: Vec<(i64, Vec<Rational>)> = Vec::new();
    let mut col = 0;
    for &s in &j.blocks {
        for t in 1..=s {
            tagged.push((2 * t as i64 - s as i64 - 1, j.basis.column(col)));
            col += 1;
        }
    }
    let e = *j.blocks.iter().max().expect("nonempty") as i64 - 1;
    let pieces = (-e - 1..=e)
        .map(|deg| {
            let vs: Vec<Vec<Rational>> =
                tagged.iter().filter(|(w, _)| *w <= deg).map(|(_, v)| v.clone()).collect();
            Subspace::span(&vs, d).expect("ambient dim")
        })
        .collect();
    Filtration::from_pieces(d, -e - 1, pieces).expect("increasing")
}

fn kron(x: &Matrix, y: &Matrix) -> Matrix {
    let (rx, cx, ry, cy) = (x.rows(), x.cols(), y.rows(), y.cols());
    let mut out = Matrix::zeros(rx * ry, cx * cy);
    for i in 0..rx {
        for j in 0..cx {
            for k in 0..ry {
                for l in 0..cy {
                    out[(i * ry + k, j * cy + l)] = &x[(i, j)] * &y[(k, l)];
                }
            }
        }
    }
    out
}

fn block_diag(ms: &[Matrix]) -> Matrix {
    let d = ms.iter().map(Matrix::rows).sum();
    let mut out = Matrix::zeros(d, d);
    let mut off = 0;
    for m in ms {
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out[(off + i, off + j)] = m[(i, j)].clone();
            }
        }
        off += m.rows();
    }
    out
}

/// Rational matrix whose eigenvalues are all Weil numbers of weight `w`:
/// `±q^{w/2}` for even `w` (sometimes), otherwise the companion matrix of
/// `x² − a x + q^w` with `a² < 4q^w`.
pub fn pure_block<R: Rng>(rng: &mut R, q: i64, w: i64) -> Matrix {
    if w % 2 == 0 && rng.gen_bool(0.5) {
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        return Matrix::diagonal(&[int(sign) * pow_i(&int(q), w / 2)]);
    }
    let qw = q.pow(w as u32);
    let mut bound = 0i64;
    while (bound + 1) * (bound + 1) < 4 * qw {
        bound += 1;
    }
    let a = rng.gen_range(-bound..=bound);
    // companion of x² − a x + q^w
    Matrix::from_i64(&[&[0, -qw], &[1, a]])
}

/// `(N, Φ)` with `NΦ = qΦN`, built from chains `A ⊗ diag(1, q, …, q^{s−1})`
/// against `I ⊗ J_s` and then conjugated by a random rational change of
/// basis. When `degree` is set every chain is centred so that WMC holds in
/// that cohomological degree.
#[derive(Clone, Debug)]
pub struct MonodromyPair {
    pub n: NilpotentOperator,
    pub frobenius: FrobeniusData,
    pub degree: Option<i64>,
}

pub fn random_pair<R: Rng>(rng: &mut R, max_dim: usize, q: i64, degree: Option<i64>) -> MonodromyPair {
    let mut ns = Vec::new();
    let mut phis = Vec::new();
    let mut dim = 0;
    loop {
        let max_s = match degree {
            Some(i) => (i + 1).max(1) as usize,
            None => 4,
        }
        .min(4);
        let s = rng.gen_range(1..=max_s);
        let w0 = match degree {
            Some(i) => i - s as i64 + 1,
            None => rng.gen_range(0..=3),
        };
        let a = pure_block(rng, q, w0);
        if dim + a.rows() * s > max_dim {
            if dim > 0 {
                break;
            }
            continue;
        }
        let scales: Vec<Rational> = (0..s).map(|k| pow_i(&int(q), k as i64)).collect();
        phis.push(kron(&a, &Matrix::diagonal(&scales)));
        ns.push(kron(&Matrix::identity(a.rows()), &jordan_block_sum(&[s])));
        dim += a.rows() * s;
        if rng.gen_bool(0.3) {
            break;
        }
    }
    let p = random_invertible(rng, dim);
    let pinv = p.inverse().expect("square").expect("invertible");
    let conj = |m: &Matrix| &(&p * m) * &pinv;
    MonodromyPair {
        n: NilpotentOperator::new(conj(&block_diag(&ns))).expect("nilpotent"),
        frobenius: FrobeniusData::new(conj(&block_diag(&phis)), q).expect("invertible"),
        degree,
    }
}

/// Full-rank lattice with small rational generator entries.
pub fn random_lattice<R: Rng>(rng: &mut R, r: usize) -> TropicalLattice {
    loop {
        let g = random_matrix(rng, r, r, 12, 6);
        if let Ok(lat) = TropicalLattice::new(g) {
            return lat;
        }
    }
}

/// Largest `α > 0` with every generator coordinate in `αℤ`, by clearing
/// denominators and testing integer divisors from the top down.
pub fn brute_force_width(lat: &TropicalLattice) -> Rational {
    let g = lat.generators();
    let den = g.entries().iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = g
        .entries()
        .iter()
        .map(|x| (x * from_bigint(den.clone())).to_integer().abs())
        .filter(|x| !x.is_zero())
        .collect();
    let top = ints.iter().min().expect("nonsingular lattice has a nonzero entry").clone();
    let mut c = top;
    while c > BigInt::from(1) {
        if ints.iter().all(|x| (x % &c).is_zero()) {
            break;
        }
        c -= 1;
    }
    from_bigint(c) / from_bigint(den)
}

/// Valuation-level bundle data with `G = c·U`, `S = c·T` and `D = U⁻ᵀ T`,
/// for `U` unimodular and `T` symmetric integral, so `S = GᵀD` is symmetric.
/// The `v_i` have denominators drawn from small powers of `p` and `extra`.
pub fn random_bundle<R: Rng>(rng: &mut R, r: usize, p: u64, extra: &[i64]) -> BundleData {
    let u = random_unimodular(rng, r);
    let c = rat(rng.gen_range(1..=6), rng.gen_range(1..=4));
    let mut t = Matrix::zeros(r, r);
    for i in 0..r {
        for j in i..r {
            let x = int(rng.gen_range(-3..=3));
            t[(i, j)] = x.clone();
            t[(j, i)] = x;
        }
    }
    let u_inv_t = u.inverse().expect("square").expect("unimodular").transpose();
    let d = &u_inv_t * &t;
    let mut dens: Vec<i64> = (0..3).map(|k| (p as i64).pow(k)).collect();
    dens.extend_from_slice(extra);
    let v = (0..r)
        .map(|_| rat(rng.gen_range(-10..=10), *dens.choose(rng).expect("nonempty")))
        .collect();
    let lat = TropicalLattice::new(u.scale(&c)).expect("unimodular times nonzero scalar");
    BundleData::new(lat, d, v).expect("symmetric by construction")
}

pub fn random_int_vector<R: Rng>(rng: &mut R, r: usize, bound: i64) -> Vec<BigInt> {
    (0..r).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect()
}

/// `ℓ(χ(Σ aᵢmᵢ))` by walking from 0 one generator at a time, using
/// `ℓχ(m + mᵢ) = ℓχ(m) + vᵢ + (a·S)ᵢ` and its inverse step.
pub fn chi_by_steps(b: &BundleData, a: &[BigInt]) -> Rational {
    let g = b.lattice().generators();
    // Sᵢⱼ = ⟨mᵢ, σ(mⱼ)⟩ = Σ_k G_kᵢ D_kⱼ, accumulated without the library form.
    let pairing = |x: &[Rational], j: usize| -> Rational {
        let m: Vec<Rational> = (0..b.rank()).map(|k| (0..b.rank()).map(|i| &g[(k, i)] * &x[i]).sum()).collect();
        (0..b.rank()).map(|k| &m[k] * &b.sigma()[(k, j)]).sum()
    };
    let mut cur = vec![Rational::zero(); b.rank()];
    let mut val = Rational::zero();
    for (j, aj) in a.iter().enumerate() {
        let steps = aj.abs().to_u64().expect("small coefficient");
        for _ in 0..steps {
            if aj.is_positive() {
                val += &b.chi_vals()[j] + pairing(&cur, j);
                cur[j] += int(1);
            } else {
                cur[j] -= int(1);
                val -= &b.chi_vals()[j] + pairing(&cur, j);
            }
        }
    }
    val
}

/// Samples the section at every corner and midpoint of `[0, λ]` from the
/// slopes alone, extends to `[λ, 2λ]` through `f(u+λ) = f(u) + d·u + v`, and
/// checks integer slopes, continuity at `λ`, affinity on every translated
/// cell and agreement of the declared periodicity with the bundle.
pub fn section_oracle(b: &BundleData, f: &TropicalSection) -> bool {
    let lambda = b.lattice().generators()[(0, 0)].clone();
    let (lambda, d, v) = if lambda.is_positive() {
        (lambda, b.sigma()[(0, 0)].clone(), b.chi_vals()[0].clone())
    } else {
        (-lambda, b.sigma()[(0, 0)].clone(), chi_valuation(b, &[BigInt::from(-1)]))
    };
    if f.lambda != lambda || f.slope_increment != d || f.value_increment != v {
        return false;
    }
    if !f.slopes.iter().all(|s| s.is_integer()) {
        return false;
    }
    let a = f.alpha.value().clone();
    let k = f.slopes.len();
    if &a * int(k as i64) != lambda {
        return false;
    }
    let half = rat(1, 2);
    // Sampled points u_t = t·α/2 on [0, λ]; values by integrating slopes.
    let mut samples = vec![f.base_value.clone()];
    for s in &f.slopes {
        let last = samples.last().expect("nonempty").clone();
        samples.push(&last + s * &a * &half);
        samples.push(&last + s * &a);
    }
    let translate = |t: usize| -> Rational {
        let u = int(t as i64) * &a * &half;
        &samples[t] + &d * u + &v
    };
    // Continuity at λ: left limit from the base period, right value from the
    // translate of 0.
    if samples[2 * k] != translate(0) {
        return false;
    }
    // Each translated cell must be affine with integer slope s + d.
    for c in 0..k {
        let (l, m, r) = (translate(2 * c), translate(2 * c + 1), translate(2 * c + 2));
        if &m * int(2) != &l + &r {
            return false;
        }
        if !((&r - &l) / &a).is_integer() {
            return false;
        }
    }
    true
}
