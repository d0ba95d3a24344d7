//! Independent cross-check by explicit linear algebra over a prime field.
//!
//! Nothing in this module consults the lattice-walk algorithms. It plants
//! actual random points in the projective plane over `F_p`, writes down the
//! vanishing conditions of a fat point subscheme as a matrix on monomial
//! coefficients, and measures dimensions by Gaussian elimination:
//!
//! * `dim I(Z)_t` is the corank of the conditions matrix in degree `t`;
//! * the kernel and cokernel of multiplication by the linear forms are the
//!   corank and cocorank of the matrix sending a basis of `I(Z)_t` times
//!   `{x, y, z}` into degree `t + 1`;
//! * freeness from fixed curves is certified by restricting a basis to a
//!   random line and checking that the restrictions share no common factor.
//!
//! All these dimensions can only grow when the points degenerate, so the
//! oracle runs several independent trials and takes the minimum, reporting
//! any disagreement between trials.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{invariant, Error, Result};
use crate::picard::MAX_POINTS;
use crate::resolution::{plane_forms, render_resolution, syzygies_from_generators};

/// Default modulus: a prime large enough that random points behave
/// generically and every degree in range stays far below the characteristic.
pub const DEFAULT_PRIME: u64 = 1_000_003;

/// Parameters of an oracle run.
#[derive(Debug, Clone, Serialize)]
pub struct OracleConfig {
    /// Field modulus; must be prime, at least 1009, and below `2^31`.
    pub prime: u64,
    /// Seed for the point sampler; each trial uses its own stream.
    pub seed: u64,
    /// Number of independent point configurations; at least one.
    pub trials: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            prime: DEFAULT_PRIME,
            seed: 0x0fa7_0b5e,
            trials: 3,
        }
    }
}

impl OracleConfig {
    /// Checks the modulus and trial count, returning `self` unchanged.
    ///
    /// The floor of 1009 keeps every falling factorial and Euler factor used
    /// by the derivative conditions nonzero for all degrees this crate
    /// handles; the ceiling keeps products inside `u64`.
    pub fn validated(self) -> Result<Self> {
        if self.trials == 0 {
            return Err(Error::OracleConfig {
                reason: "trial count must be at least 1".into(),
            });
        }
        if self.prime < 1009 {
            return Err(Error::OracleConfig {
                reason: format!("modulus {} is below the floor 1009", self.prime),
            });
        }
        if self.prime >= 1 << 31 {
            return Err(Error::OracleConfig {
                reason: format!("modulus {} does not fit in 31 bits", self.prime),
            });
        }
        if !is_prime(self.prime) {
            return Err(Error::OracleConfig {
                reason: format!("modulus {} is not prime", self.prime),
            });
        }
        Ok(self)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A measured dimension: the generic (minimum) value plus every trial's raw
/// reading, so disagreements stay visible.
#[derive(Debug, Clone, Serialize)]
pub struct Measurement {
    pub value: u64,
    pub per_trial: Vec<u64>,
}

impl Measurement {
    fn from_trials(per_trial: Vec<u64>) -> Self {
        let value = per_trial.iter().copied().min().expect("at least one trial");
        Measurement { value, per_trial }
    }

    pub fn unanimous(&self) -> bool {
        self.per_trial.iter().all(|&v| v == self.value)
    }
}

/// Kernel and cokernel of multiplication by the linear forms, as measured on
/// random points.
#[derive(Debug, Clone, Serialize)]
pub struct MuMeasurement {
    pub ker: Measurement,
    pub cok: Measurement,
}

/// Everything the oracle can say about one fat point subscheme: section
/// dimensions and multiplication ranks per degree, the initial degree, the
/// degree where the fixed part disappears, and the Betti numbers they imply.
#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub mults: Vec<i64>,
    pub prime: u64,
    pub seed: u64,
    pub trials: usize,
    pub alpha: i64,
    pub beta: i64,
    pub ideal_dims: BTreeMap<i64, u64>,
    pub mu_kernels: BTreeMap<i64, u64>,
    pub mu_cokernels: BTreeMap<i64, u64>,
    pub generators: BTreeMap<i64, u64>,
    pub syzygies: BTreeMap<i64, u64>,
    pub display: String,
    pub disagreements: Vec<String>,
}

// ---------------------------------------------------------------------------
// Prime field arithmetic and dense linear algebra.

/// The field `F_p` for a modulus below `2^31`, so products fit in `u64`.
#[derive(Debug, Clone, Copy)]
struct Field {
    p: u64,
}

impl Field {
    fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    fn inv(self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p), "inverting zero");
        self.pow(a, self.p - 2)
    }
}

/// Dense row-major matrix over `F_p`.
struct Matrix {
    rows: usize,
    cols: usize,
    a: Vec<u64>,
}

impl Matrix {
    fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            a: vec![0; rows * cols],
        }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.a[i * self.cols..(i + 1) * self.cols]
    }

    fn set(&mut self, i: usize, j: usize, v: u64) {
        self.a[i * self.cols + j] = v;
    }

    /// Rank by forward elimination; consumes the matrix.
    fn rank(mut self, f: Field) -> usize {
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&i| self.a[i * self.cols + col] != 0)
            else {
                continue;
            };
            self.swap_rows(rank, pivot);
            let inv = f.inv(self.a[rank * self.cols + col]);
            for i in rank + 1..self.rows {
                let lead = self.a[i * self.cols + col];
                if lead == 0 {
                    continue;
                }
                let factor = f.mul(lead, inv);
                let (top, bottom) = self.a.split_at_mut(i * self.cols);
                let src = &top[rank * self.cols..(rank + 1) * self.cols];
                let dst = &mut bottom[..self.cols];
                for (d, &s) in dst.iter_mut().zip(src).skip(col) {
                    *d = f.sub(*d, f.mul(factor, s));
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// Basis of the right kernel `{v : Mv = 0}` via reduced row echelon form.
    fn kernel_basis(mut self, f: Field) -> Vec<Vec<u64>> {
        let mut pivots: Vec<usize> = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pivot) = (row..self.rows).find(|&i| self.a[i * self.cols + col] != 0)
            else {
                continue;
            };
            self.swap_rows(row, pivot);
            let inv = f.inv(self.a[row * self.cols + col]);
            for j in col..self.cols {
                let v = self.a[row * self.cols + j];
                self.a[row * self.cols + j] = f.mul(v, inv);
            }
            for i in 0..self.rows {
                if i == row {
                    continue;
                }
                let lead = self.a[i * self.cols + col];
                if lead == 0 {
                    continue;
                }
                for j in col..self.cols {
                    let v = f.mul(lead, self.a[row * self.cols + j]);
                    self.a[i * self.cols + j] = f.sub(self.a[i * self.cols + j], v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        let mut basis = Vec::with_capacity(self.cols - pivots.len());
        let mut next_pivot = 0;
        for free in 0..self.cols {
            if next_pivot < pivots.len() && pivots[next_pivot] == free {
                next_pivot += 1;
                continue;
            }
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.sub(0, self.a[r * self.cols + free]);
            }
            basis.push(v);
        }
        basis
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for col in 0..self.cols {
            self.a.swap(i * self.cols + col, j * self.cols + col);
        }
    }
}

// ---------------------------------------------------------------------------
// Monomials and derivative conditions.

/// Exponent triples `(a, b, c)` with `a + b + c = t`, in a fixed order.
fn monomials(t: i64) -> Vec<(u32, u32, u32)> {
    let t = u32::try_from(t).expect("nonnegative degree");
    let mut out = Vec::with_capacity(((t + 1) * (t + 2) / 2) as usize);
    for a in (0..=t).rev() {
        for b in (0..=t - a).rev() {
            out.push((a, b, t - a - b));
        }
    }
    out
}

/// Falling factorial `n (n-1) ... (n-k+1)` in the field.
fn falling(f: Field, n: u32, k: u32) -> u64 {
    let mut acc = 1;
    for step in 0..k {
        acc = f.mul(acc, (n - step) as u64);
    }
    acc
}

/// One random configuration of points, with the machinery to measure it.
struct Trial {
    field: Field,
    mults: Vec<i64>,
    points: Vec<[u64; 3]>,
    rng: ChaCha8Rng,
}

impl Trial {
    fn new(mults: &[i64], cfg: &OracleConfig, trial_index: u64) -> Self {
        let field = Field { p: cfg.prime };
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(trial_index + 1);
        let points = loop {
            let candidate: Vec<[u64; 3]> = (0..mults.len())
                .map(|_| [rng.gen_range(0..field.p), rng.gen_range(0..field.p), 1])
                .collect();
            let distinct = candidate
                .iter()
                .enumerate()
                .all(|(i, p)| candidate[..i].iter().all(|q| q != p));
            if distinct {
                break candidate;
            }
        };
        Trial {
            field,
            mults: mults.to_vec(),
            points,
            rng,
        }
    }

    /// Vanishing conditions in degree `t`: for each point of multiplicity
    /// `m`, one row per partial derivative of order `min(m - 1, t)`.
    ///
    /// For homogeneous forms of degree `t < p`, Euler's identity makes the
    /// vanishing of all order-`k` partials at a point imply the vanishing of
    /// all lower orders, so the top order alone suffices; when `t < m - 1`
    /// the order-`t` partials are the coefficients themselves and correctly
    /// force the zero form.
    fn conditions_matrix(&self, t: i64) -> Matrix {
        let f = self.field;
        let mons = monomials(t);
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for (point, &m) in self.points.iter().zip(&self.mults) {
            if m == 0 {
                continue;
            }
            let order = (m - 1).min(t) as u32;
            let powers: Vec<Vec<u64>> = point
                .iter()
                .map(|&coord| {
                    let mut pw = vec![1u64; (t + 1) as usize];
                    for i in 1..pw.len() {
                        pw[i] = f.mul(pw[i - 1], coord);
                    }
                    pw
                })
                .collect();
            for (i, j, k) in monomials(order as i64) {
                let row = mons
                    .iter()
                    .map(|&(a, b, c)| {
                        if a < i || b < j || c < k {
                            return 0;
                        }
                        let coeff = f.mul(
                            f.mul(falling(f, a, i), falling(f, b, j)),
                            falling(f, c, k),
                        );
                        let value = f.mul(
                            f.mul(powers[0][(a - i) as usize], powers[1][(b - j) as usize]),
                            powers[2][(c - k) as usize],
                        );
                        f.mul(coeff, value)
                    })
                    .collect();
                rows.push(row);
            }
        }
        let mut mat = Matrix::zero(rows.len(), mons.len());
        for (i, row) in rows.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                mat.set(i, j, v);
            }
        }
        mat
    }

    fn ideal_dim(&self, t: i64) -> u64 {
        if t < 0 {
            return 0;
        }
        let mat = self.conditions_matrix(t);
        (mat.cols - mat.rank(self.field)) as u64
    }

    fn ideal_basis(&self, t: i64) -> Vec<Vec<u64>> {
        if t < 0 {
            return Vec::new();
        }
        self.conditions_matrix(t).kernel_basis(self.field)
    }

    /// Kernel and cokernel dimensions of multiplication by `{x, y, z}` from
    /// degree `t` into degree `t + 1`, using this trial's own bases.
    fn mu_dims(&self, t: i64) -> (u64, u64) {
        let dim_next = self.ideal_dim(t + 1);
        if t < 0 {
            return (0, dim_next);
        }
        let basis = self.ideal_basis(t);
        if basis.is_empty() {
            return (0, dim_next);
        }
        let mons = monomials(t);
        let mons_next = monomials(t + 1);
        let index_next: BTreeMap<(u32, u32, u32), usize> = mons_next
            .iter()
            .enumerate()
            .map(|(i, &m)| (m, i))
            .collect();
        let mut mat = Matrix::zero(3 * basis.len(), mons_next.len());
        for (b, vec) in basis.iter().enumerate() {
            for (m, &coef) in mons.iter().zip(vec) {
                if coef == 0 {
                    continue;
                }
                let images = [
                    (m.0 + 1, m.1, m.2),
                    (m.0, m.1 + 1, m.2),
                    (m.0, m.1, m.2 + 1),
                ];
                for (axis, img) in images.into_iter().enumerate() {
                    let col = index_next[&img];
                    let row = 3 * b + axis;
                    let old = mat.row(row)[col];
                    mat.set(row, col, self.field.add(old, coef));
                }
            }
        }
        let dim_here = basis.len() as u64;
        let rank = mat.rank(self.field) as u64;
        (3 * dim_here - rank, dim_next - rank)
    }

    /// Certifies that the degree-`t` piece has no fixed curve by restricting
    /// a basis to random lines and checking for a trivial common factor.
    ///
    /// A fixed curve restricts to a positive-degree common factor on every
    /// line it does not contain, so a zero-degree common factor on any one
    /// line is a proof of freeness. Lines are retried a few times because a
    /// single unlucky line through two base points can show a spurious
    /// common root.
    fn fixed_part_is_trivial(&mut self, t: i64) -> bool {
        let f = self.field;
        let basis = self.ideal_basis(t);
        if basis.is_empty() {
            return false;
        }
        if t == 0 {
            return true;
        }
        'lines: for _ in 0..4 {
            let a: [u64; 3] = [
                self.rng.gen_range(0..f.p),
                self.rng.gen_range(0..f.p),
                1,
            ];
            let b: [u64; 3] = [self.rng.gen_range(0..f.p), 1, 0];
            // Coordinates on the line are a + s b; precompute powers of the
            // three coordinate restrictions as polynomials in s.
            let coord_powers: Vec<Vec<Vec<u64>>> = (0..3)
                .map(|axis| {
                    let linear = vec![a[axis], b[axis]];
                    let mut pows = vec![vec![1u64]];
                    for k in 1..=t as usize {
                        pows.push(poly_mul(f, &pows[k - 1], &linear));
                    }
                    pows
                })
                .collect();
            let mons = monomials(t);
            let mut gcd: Vec<u64> = Vec::new();
            let mut min_u_power = t;
            let mut saw_nonzero = false;
            for vec in &basis {
                let mut restricted = vec![0u64; t as usize + 1];
                for (&(x, y, z), &coef) in mons.iter().zip(vec) {
                    if coef == 0 {
                        continue;
                    }
                    let mut term = poly_mul(
                        f,
                        &coord_powers[0][x as usize],
                        &coord_powers[1][y as usize],
                    );
                    term = poly_mul(f, &term, &coord_powers[2][z as usize]);
                    for (r, c) in restricted.iter_mut().zip(term) {
                        *r = f.add(*r, f.mul(coef, c));
                    }
                }
                let restricted = poly_trim(restricted);
                if restricted.is_empty() {
                    // The whole section vanishes on this line; pick another.
                    continue 'lines;
                }
                saw_nonzero = true;
                min_u_power = min_u_power.min(t - (restricted.len() as i64 - 1));
                gcd = poly_gcd(f, gcd, restricted);
                if gcd.len() == 1 && min_u_power == 0 {
                    return true;
                }
            }
            if saw_nonzero && gcd.len() == 1 && min_u_power == 0 {
                return true;
            }
        }
        false
    }
}

fn poly_mul(f: Field, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

/// Drops trailing zeros; the zero polynomial becomes the empty vector.
fn poly_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Monic gcd of dense univariate polynomials; empty means zero.
fn poly_gcd(f: Field, mut a: Vec<u64>, mut b: Vec<u64>) -> Vec<u64> {
    while !b.is_empty() {
        let rem = poly_rem(f, &a, &b);
        a = b;
        b = rem;
    }
    if let Some(&lead) = a.last() {
        let inv = f.inv(lead);
        for c in &mut a {
            *c = f.mul(*c, inv);
        }
    }
    a
}

fn poly_rem(f: Field, a: &[u64], b: &[u64]) -> Vec<u64> {
    debug_assert!(!b.is_empty());
    let mut rem = a.to_vec();
    let lead_inv = f.inv(*b.last().expect("nonzero divisor"));
    while rem.len() >= b.len() {
        let Some(&lead) = rem.last() else { break };
        if lead == 0 {
            rem.pop();
            continue;
        }
        let factor = f.mul(lead, lead_inv);
        let shift = rem.len() - b.len();
        for (i, &c) in b.iter().enumerate() {
            let v = f.mul(factor, c);
            rem[shift + i] = f.sub(rem[shift + i], v);
        }
        rem.pop();
    }
    poly_trim(rem)
}

// ---------------------------------------------------------------------------
// Public measurements.

fn check_scheme(mults: &[i64]) -> Result<()> {
    if mults.len() > MAX_POINTS {
        return Err(Error::PointCountOutOfRange { r: mults.len() });
    }
    if let Some(&m) = mults.iter().find(|&&m| m < 0) {
        return Err(Error::Precondition {
            operation: "oracle",
            reason: format!("multiplicity {m} is negative"),
        });
    }
    Ok(())
}

/// Measures `dim I(Z)_t` on `cfg.trials` random configurations.
pub fn ideal_dimension(mults: &[i64], t: i64, cfg: &OracleConfig) -> Result<Measurement> {
    check_scheme(mults)?;
    let cfg = cfg.clone().validated()?;
    let per_trial = (0..cfg.trials)
        .map(|i| Trial::new(mults, &cfg, i as u64).ideal_dim(t))
        .collect();
    Ok(Measurement::from_trials(per_trial))
}

/// Measures the kernel and cokernel of multiplication from degree `t` to
/// degree `t + 1` on `cfg.trials` random configurations.
pub fn multiplication_dims(mults: &[i64], t: i64, cfg: &OracleConfig) -> Result<MuMeasurement> {
    check_scheme(mults)?;
    let cfg = cfg.clone().validated()?;
    let mut kers = Vec::with_capacity(cfg.trials);
    let mut coks = Vec::with_capacity(cfg.trials);
    for i in 0..cfg.trials {
        let (ker, cok) = Trial::new(mults, &cfg, i as u64).mu_dims(t);
        kers.push(ker);
        coks.push(cok);
    }
    Ok(MuMeasurement {
        ker: Measurement::from_trials(kers),
        cok: Measurement::from_trials(coks),
    })
}

/// Measures the full resolution data of a fat point subscheme: section
/// dimensions, multiplication ranks, initial degree, fixed-part-free degree,
/// and the graded Betti numbers they determine.
///
/// The table covers degrees `0..=t_max` when given, and otherwise runs five
/// past the measured `beta`.
pub fn resolve(mults: &[i64], t_max: Option<i64>, cfg: &OracleConfig) -> Result<OracleReport> {
    check_scheme(mults)?;
    let cfg = cfg.clone().validated()?;
    let total: i64 = mults.iter().sum();
    let cap = total + 3;
    let mut trials: Vec<Trial> = (0..cfg.trials)
        .map(|i| Trial::new(mults, &cfg, i as u64))
        .collect();
    let mut dims: Vec<BTreeMap<i64, u64>> = vec![BTreeMap::new(); trials.len()];
    let mut consensus: BTreeMap<i64, u64> = BTreeMap::new();
    let mut alpha: Option<i64> = None;
    let mut beta: Option<i64> = None;
    let mut t = 0;
    loop {
        for (trial, table) in trials.iter().zip(&mut dims) {
            table.insert(t, trial.ideal_dim(t));
        }
        let value = dims.iter().map(|table| table[&t]).min().expect("trials >= 1");
        consensus.insert(t, value);
        if alpha.is_none() && value > 0 {
            alpha = Some(t);
        }
        if alpha.is_some() && beta.is_none() && value > 0 {
            let certified = trials
                .iter_mut()
                .zip(&dims)
                .filter(|(_, table)| table[&t] == value)
                .any(|(trial, _)| trial.fixed_part_is_trivial(t));
            if certified {
                beta = Some(t);
            }
        }
        let done = match (beta, t_max) {
            (Some(b), None) => t >= b + 5,
            (Some(b), Some(user)) => t >= user.max(b + 5),
            (None, _) => false,
        };
        if done {
            break;
        }
        t += 1;
        invariant!(
            beta.is_some() || t <= cap,
            "oracle resolve",
            "no fixed-part-free degree found up to {cap} for {mults:?}"
        );
    }
    let alpha = alpha.expect("alpha found before beta");
    let beta = beta.expect("loop exits only with beta set");
    let window_end = t;

    let mut mu_kernels: BTreeMap<i64, u64> = BTreeMap::new();
    let mut mu_cokernels: BTreeMap<i64, u64> = BTreeMap::new();
    let mut mu_trials: BTreeMap<i64, (Vec<u64>, Vec<u64>)> = BTreeMap::new();
    for t in 0..window_end {
        let mut kers = Vec::with_capacity(trials.len());
        let mut coks = Vec::with_capacity(trials.len());
        for trial in &trials {
            let (ker, cok) = trial.mu_dims(t);
            kers.push(ker);
            coks.push(cok);
        }
        mu_kernels.insert(t, kers.iter().copied().min().expect("trials >= 1"));
        mu_cokernels.insert(t, coks.iter().copied().min().expect("trials >= 1"));
        mu_trials.insert(t, (kers, coks));
    }

    // Betti numbers from the measurements: a generator in degree t for each
    // cokernel dimension of the step into t, syzygies by Hilbert bookkeeping.
    let mut generators: BTreeMap<i64, u64> = BTreeMap::new();
    if consensus.get(&0).copied().unwrap_or(0) > 0 {
        generators.insert(0, consensus[&0]);
    }
    for t in 1..=window_end {
        let from_mu = mu_cokernels.get(&(t - 1)).copied().unwrap_or(0);
        if from_mu > 0 {
            generators.insert(t, from_mu);
        }
    }
    let syzygies = syzygies_from_generators(
        "oracle resolve",
        &generators,
        |t| consensus.get(&t).copied().unwrap_or(0),
        window_end,
    )?;
    for (map, label) in [(&generators, "generator"), (&syzygies, "syzygy")] {
        for (&t, &count) in map {
            invariant!(
                count == 0 || t <= beta + 2,
                "oracle resolve",
                "{label} in degree {t} beyond beta + 2 = {}",
                beta + 2
            );
        }
    }
    let nu_total: u64 = generators.values().sum();
    let s_total: u64 = syzygies.values().sum();
    invariant!(
        nu_total == s_total + 1,
        "oracle resolve",
        "rank bookkeeping failed: {nu_total} generators vs {s_total} syzygies"
    );
    for t in 0..=window_end {
        let predicted: i64 = generators
            .iter()
            .map(|(&j, &n)| n as i64 * plane_forms(t - j))
            .sum::<i64>()
            - syzygies
                .iter()
                .map(|(&j, &n)| n as i64 * plane_forms(t - j))
                .sum::<i64>();
        invariant!(
            predicted == consensus[&t] as i64,
            "oracle resolve",
            "Hilbert identity fails in degree {t}: predicted {predicted}, measured {}",
            consensus[&t]
        );
    }

    let mut disagreements = Vec::new();
    for (&t, value) in &consensus {
        let raw: Vec<u64> = dims.iter().map(|table| table[&t]).collect();
        if raw.iter().any(|v| v != value) {
            disagreements.push(format!("dim I_{t}: trials {raw:?}, consensus {value}"));
        }
    }
    for (&t, (kers, coks)) in &mu_trials {
        if kers.iter().any(|v| v != &mu_kernels[&t]) {
            disagreements.push(format!(
                "mu kernel at {t}: trials {kers:?}, consensus {}",
                mu_kernels[&t]
            ));
        }
        if coks.iter().any(|v| v != &mu_cokernels[&t]) {
            disagreements.push(format!(
                "mu cokernel at {t}: trials {coks:?}, consensus {}",
                mu_cokernels[&t]
            ));
        }
    }

    let display = render_resolution(&generators, &syzygies);
    // The bookkeeping above always runs out to beta + 5; the report honors a
    // caller-chosen table extent.
    let (ideal_dims, mu_kernels, mu_cokernels) = match t_max {
        None => (consensus, mu_kernels, mu_cokernels),
        Some(user) => (
            consensus.into_iter().filter(|&(t, _)| t <= user).collect(),
            mu_kernels.into_iter().filter(|&(t, _)| t < user).collect(),
            mu_cokernels.into_iter().filter(|&(t, _)| t < user).collect(),
        ),
    };
    Ok(OracleReport {
        mults: mults.to_vec(),
        prime: cfg.prime,
        seed: cfg.seed,
        trials: cfg.trials,
        alpha,
        beta,
        ideal_dims,
        mu_kernels,
        mu_cokernels,
        generators,
        syzygies,
        display,
        disagreements,
    })
}
