//! The divisor class lattice of a blow-up of the projective plane.
//!
//! For `X` the blow-up of `P^2` at `r <= 8` general points, `Cl(X)` is the
//! free abelian group on the pullback `L` of a line and the exceptional
//! curves `E_1, ..., E_r`. The intersection form is diagonal in this basis:
//! `L.L = 1`, `E_i.E_i = -1`, and distinct basis elements are orthogonal.
//! A class is stored as `d L - m_1 E_1 - ... - m_r E_r`, so that the class
//! of plane curves of degree `d` with multiplicity `m_i` at the `i`-th point
//! has nonnegative coordinates, and `F.E_i = m_i`.
//!
//! The module also provides the canonical class `K = -3L + E_1 + ... + E_r`,
//! the Weyl group action generated by the degree-raising Cremona reflection
//! `s_0` and the coordinate transpositions `s_1, ..., s_{r-1}`, reduction to
//! the fundamental chamber, and the enumeration of the classes of
//! exceptional curves (smooth rational curves of self-intersection -1),
//! which is finite exactly because `r <= 8`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported number of blown-up points.
///
/// For `r <= 8` the exceptional curves form a finite set and `-K` is ample;
/// past 8 both fail and the methods of this crate do not apply.
pub const MAX_POINTS: usize = 8;

/// A divisor class `d L - m_1 E_1 - ... - m_r E_r` on a blow-up of the
/// plane at `r` points, `0 <= r <= 8`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DivisorClass {
    degree: i64,
    mults: Vec<i64>,
}

impl DivisorClass {
    /// Builds `degree L - sum mults[i] E_{i+1}`. Errors when more than
    /// [`MAX_POINTS`] multiplicities are supplied.
    pub fn new(degree: i64, mults: Vec<i64>) -> Result<Self> {
        if mults.len() > MAX_POINTS {
            return Err(Error::PointCountOutOfRange { r: mults.len() });
        }
        Ok(DivisorClass { degree, mults })
    }

    /// The zero class on the blow-up at `r` points.
    pub fn zero(r: usize) -> Result<Self> {
        DivisorClass::new(0, vec![0; r])
    }

    /// The class `L` of the pullback of a line.
    pub fn line(r: usize) -> Result<Self> {
        DivisorClass::new(1, vec![0; r])
    }

    /// The class of the exceptional curve `E_i` (1-indexed).
    pub fn exceptional(r: usize, i: usize) -> Result<Self> {
        if i == 0 || i > r {
            return Err(Error::Precondition {
                operation: "exceptional",
                reason: format!("index {i} not in 1..={r}"),
            });
        }
        let mut mults = vec![0; r];
        mults[i - 1] = -1;
        DivisorClass::new(0, mults)
    }

    /// Coefficient of `L`.
    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// The multiplicities `m_1, ..., m_r`; `self.F.E_i = m_i`.
    pub fn mults(&self) -> &[i64] {
        &self.mults
    }

    /// Number of blown-up points this class lives on.
    pub fn points(&self) -> usize {
        self.mults.len()
    }

    pub fn is_zero(&self) -> bool {
        self.degree == 0 && self.mults.iter().all(|&m| m == 0)
    }

    /// Intersection number with respect to the diagonal form
    /// `L.L = 1`, `E_i.E_i = -1`.
    ///
    /// Panics when the two classes live on blow-ups at different numbers of
    /// points; intersecting across surfaces is a programming error.
    pub fn intersect(&self, other: &DivisorClass) -> i64 {
        assert_eq!(
            self.points(),
            other.points(),
            "intersection of classes with different point counts"
        );
        let mut n = self.degree * other.degree;
        for (a, b) in self.mults.iter().zip(&other.mults) {
            n -= a * b;
        }
        n
    }

    pub fn self_intersection(&self) -> i64 {
        self.intersect(self)
    }

    /// The class scaled by an integer.
    pub fn scaled(&self, k: i64) -> DivisorClass {
        DivisorClass {
            degree: self.degree * k,
            mults: self.mults.iter().map(|m| m * k).collect(),
        }
    }

    /// Componentwise exact division, or `None` when some coordinate is not
    /// divisible by `k`.
    pub fn divided_exactly(&self, k: i64) -> Option<DivisorClass> {
        assert!(k != 0, "division of a divisor class by zero");
        if self.degree % k != 0 || self.mults.iter().any(|m| m % k != 0) {
            return None;
        }
        Some(DivisorClass {
            degree: self.degree / k,
            mults: self.mults.iter().map(|m| m / k).collect(),
        })
    }

    /// Removes the coordinate of the `i`-th point (1-indexed), passing to
    /// the blow-up at `r - 1` points. Only meaningful when `m_i = 0`, i.e.
    /// the class is a pullback from the smaller surface.
    pub fn dropping_point(&self, i: usize) -> DivisorClass {
        assert!(i >= 1 && i <= self.points(), "point index out of range");
        assert_eq!(
            self.mults[i - 1], 0,
            "dropping a point with nonzero multiplicity"
        );
        let mut mults = self.mults.clone();
        mults.remove(i - 1);
        DivisorClass {
            degree: self.degree,
            mults,
        }
    }

    /// Returns the class with multiplicities stably sorted in nonincreasing
    /// order together with the permutation used: entry `k` of the
    /// permutation is the original position of the multiplicity now at `k`.
    pub fn sorted_descending(&self) -> (DivisorClass, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.mults.len()).collect();
        order.sort_by_key(|&i| -self.mults[i]);
        let mults = order.iter().map(|&i| self.mults[i]).collect();
        (
            DivisorClass {
                degree: self.degree,
                mults,
            },
            order,
        )
    }

    /// Sort key giving the deterministic enumeration order used throughout:
    /// by degree, then by sorted multiplicities, then by the raw
    /// multiplicity vector.
    pub fn enumeration_key(&self) -> (i64, Vec<i64>, Vec<i64>) {
        let mut sorted = self.mults.clone();
        sorted.sort_unstable_by_key(|&m| -m);
        (self.degree, sorted, self.mults.clone())
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, other: &DivisorClass) -> DivisorClass {
        assert_eq!(
            self.points(),
            other.points(),
            "sum of classes with different point counts"
        );
        DivisorClass {
            degree: self.degree + other.degree,
            mults: self
                .mults
                .iter()
                .zip(&other.mults)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, other: &DivisorClass) -> DivisorClass {
        assert_eq!(
            self.points(),
            other.points(),
            "difference of classes with different point counts"
        );
        DivisorClass {
            degree: self.degree - other.degree,
            mults: self
                .mults
                .iter()
                .zip(&other.mults)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        self.scaled(-1)
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, other: DivisorClass) -> DivisorClass {
        &self + &other
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, other: DivisorClass) -> DivisorClass {
        &self - &other
    }
}

impl fmt::Display for DivisorClass {
    /// Canonical notation `d;m1,m2,...,mr` (for `r = 0` just `d;`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.degree)?;
        for (i, m) in self.mults.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl FromStr for DivisorClass {
    type Err = Error;

    /// Parses `d;m1,m2,...,mr` with optional spaces. A missing semicolon or
    /// an empty multiplicity list denotes `r = 0`.
    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let (deg_part, mult_part) = match s.split_once(';') {
            Some((d, m)) => (d, m),
            None => (s, ""),
        };
        let degree: i64 = deg_part
            .trim()
            .parse()
            .map_err(|_| parse_err("degree is not an integer"))?;
        let mult_part = mult_part.trim();
        let mults = if mult_part.is_empty() {
            Vec::new()
        } else {
            mult_part
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<i64>()
                        .map_err(|_| parse_err("multiplicity is not an integer"))
                })
                .collect::<Result<Vec<i64>>>()?
        };
        DivisorClass::new(degree, mults)
    }
}

impl Serialize for DivisorClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for DivisorClass {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// The canonical class `K = -3L + E_1 + ... + E_r`.
pub fn canonical_class(r: usize) -> Result<DivisorClass> {
    DivisorClass::new(-3, vec![-1; r])
}

/// Applies the `index`-th Weyl group generator to `f`.
///
/// Index 0 is the Cremona reflection in `L - E_1 - E_2 - E_3` (defined for
/// `r >= 3`): it adds `(f . v) v` for `v = L - E_1 - E_2 - E_3`, which is an
/// involution because `v.v = -2`. Index `i` with `1 <= i < r` transposes the
/// multiplicities `m_i` and `m_{i+1}`. Every generator preserves the
/// intersection form and the canonical class, hence all cohomology.
pub fn apply_reflection(index: usize, f: &DivisorClass) -> Result<DivisorClass> {
    let r = f.points();
    if index == 0 {
        if r < 3 {
            return Err(Error::ReflectionIndex { index, r });
        }
        let c = f.degree - f.mults[0] - f.mults[1] - f.mults[2];
        let mut mults = f.mults.clone();
        mults[0] += c;
        mults[1] += c;
        mults[2] += c;
        Ok(DivisorClass {
            degree: f.degree + c,
            mults,
        })
    } else if index < r {
        let mut mults = f.mults.clone();
        mults.swap(index - 1, index);
        Ok(DivisorClass {
            degree: f.degree,
            mults,
        })
    } else {
        Err(Error::ReflectionIndex { index, r })
    }
}

/// Terminal state of [`weyl_reduce`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChamberCase {
    /// `w(F).L < 0`: the reduced class has negative degree, so `h^0 = 0`.
    NegativeDegree,
    /// The reduced class meets an exceptional or boundary curve negatively
    /// (after sorting, its last multiplicity is negative, or at `r <= 2` it
    /// lies outside the degenerate chamber).
    NegativeOnCurve,
    /// The reduced class lies in the fundamental chamber: sorted
    /// multiplicities are nonnegative and `d >= m_1 + m_2 + m_3` (at
    /// `r <= 2`, `d` at least the sum of the first `min(r, 2)` sorted
    /// multiplicities).
    Chamber,
}

impl fmt::Display for ChamberCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self {
            ChamberCase::NegativeDegree => "i",
            ChamberCase::NegativeOnCurve => "ii",
            ChamberCase::Chamber => "iii",
        };
        write!(f, "{tag}")
    }
}

/// One step of a Weyl chamber reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum ReductionStep {
    /// Multiplicities were stably sorted; entry `k` of `permutation` is the
    /// original position of the multiplicity moved to position `k`.
    Sorted { permutation: Vec<usize> },
    /// A Weyl generator was applied (always index 0 inside `weyl_reduce`).
    ReflectionApplied { index: usize },
    /// The loop stopped in the given terminal case.
    Terminal { case: ChamberCase },
}

/// Ordered record of the steps taken by [`weyl_reduce`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
}

/// Reduces `f` toward the fundamental chamber of the Weyl group action.
///
/// Repeatedly sorts the multiplicities in nonincreasing order and, while the
/// sorted class has `d >= 0`, no negative multiplicity, and (for `r >= 3`)
/// `d < m_1 + m_2 + m_3`, applies the Cremona reflection `s_0`, which
/// strictly lowers the degree. The loop always terminates, in exactly one of
/// the three [`ChamberCase`] states. The reduced class is Weyl-equivalent to
/// `f`, so it has the same self-intersection, product with `K`, and
/// cohomology.
pub fn weyl_reduce(f: &DivisorClass) -> (DivisorClass, ChamberCase, ReductionTrace) {
    let r = f.points();
    let mut current = f.clone();
    let mut steps = Vec::new();
    let case = loop {
        let (sorted, permutation) = current.sorted_descending();
        if permutation.iter().enumerate().any(|(k, &p)| k != p) {
            steps.push(ReductionStep::Sorted { permutation });
        }
        current = sorted;
        if current.degree < 0 {
            break ChamberCase::NegativeDegree;
        }
        if current.mults.last().is_some_and(|&m| m < 0) {
            break ChamberCase::NegativeOnCurve;
        }
        let top: i64 = current.mults.iter().take(3).sum();
        if r >= 3 {
            if current.degree >= top {
                break ChamberCase::Chamber;
            }
            current = apply_reflection(0, &current).expect("s_0 exists for r >= 3");
            steps.push(ReductionStep::ReflectionApplied { index: 0 });
        } else {
            // No degree-raising reflection exists. The degenerate chamber is
            // spanned by L, L - E_1, 2L - E_1 - E_2; a nonnegative sorted
            // class outside it meets the boundary class L - E_1 (- E_2)
            // negatively and cannot be reduced further.
            if current.degree >= top {
                break ChamberCase::Chamber;
            }
            break ChamberCase::NegativeOnCurve;
        }
    };
    steps.push(ReductionStep::Terminal { case });
    (current, case, ReductionTrace { steps })
}

/// Closure of `seed` under all Weyl group generators, in enumeration order.
pub fn reflection_orbit(seed: &DivisorClass) -> Result<Vec<DivisorClass>> {
    let r = seed.points();
    let mut orbit: BTreeSet<DivisorClass> = BTreeSet::new();
    let mut frontier = vec![seed.clone()];
    orbit.insert(seed.clone());
    let start = if r >= 3 { 0 } else { 1 };
    while let Some(f) = frontier.pop() {
        for index in start..r {
            let image = apply_reflection(index, &f)?;
            if orbit.insert(image.clone()) {
                frontier.push(image);
            }
        }
    }
    let mut list: Vec<DivisorClass> = orbit.into_iter().collect();
    list.sort_by_cached_key(DivisorClass::enumeration_key);
    Ok(list)
}

/// Number of exceptional curve classes on the blow-up at `r` points.
pub const EXCEPTIONAL_COUNTS: [usize; 9] = [0, 1, 3, 6, 10, 16, 27, 56, 240];

fn distinct_permutations(pattern: &[i64], r: usize) -> BTreeSet<Vec<i64>> {
    let mut padded = pattern.to_vec();
    padded.resize(r, 0);
    padded.sort_unstable();
    let mut out = BTreeSet::new();
    // The padded patterns have at most 8 entries, so enumerating in
    // next-permutation order is cheap and yields each arrangement once.
    loop {
        out.insert(padded.clone());
        // Classic next-permutation on the sorted vector.
        let Some(i) = (0..padded.len().saturating_sub(1))
            .rev()
            .find(|&i| padded[i] < padded[i + 1])
        else {
            break;
        };
        let j = (i + 1..padded.len())
            .rev()
            .find(|&j| padded[j] > padded[i])
            .expect("successor exists");
        padded.swap(i, j);
        padded[i + 1..].reverse();
    }
    out
}

fn build_exceptionals(r: usize) -> Vec<DivisorClass> {
    let mut classes: Vec<DivisorClass> = Vec::new();
    if r == 8 {
        // The 240 classes are the orbit of E_8 under the Weyl group; the
        // closure stabilizes quickly and the count is asserted below.
        let seed = DivisorClass::exceptional(8, 8).expect("valid index");
        classes = reflection_orbit(&seed).expect("orbit of a valid class");
    } else {
        let mut patterns: Vec<(i64, Vec<i64>)> = Vec::new();
        if r >= 1 {
            patterns.push((0, vec![-1]));
        }
        if r >= 2 {
            patterns.push((1, vec![1, 1]));
        }
        if r >= 5 {
            patterns.push((2, vec![1, 1, 1, 1, 1]));
        }
        if r >= 7 {
            patterns.push((3, vec![2, 1, 1, 1, 1, 1, 1]));
        }
        for (degree, pattern) in patterns {
            for mults in distinct_permutations(&pattern, r) {
                classes.push(DivisorClass { degree, mults });
            }
        }
        classes.sort_by_cached_key(DivisorClass::enumeration_key);
    }
    assert_eq!(
        classes.len(),
        EXCEPTIONAL_COUNTS[r],
        "exceptional curve count at r = {r}"
    );
    for e in &classes {
        debug_assert_eq!(e.self_intersection(), -1);
        debug_assert_eq!(
            e.intersect(&canonical_class(r).expect("r <= 8")),
            -1,
            "exceptional class must meet K in -1"
        );
    }
    classes
}

/// The blow-up of the plane at `r` general points, with its distinguished
/// divisor classes precomputed.
#[derive(Debug)]
pub struct SurfaceModel {
    r: usize,
    canonical: DivisorClass,
    exceptionals: Vec<DivisorClass>,
    cubics: Vec<DivisorClass>,
    nef_generators: Vec<DivisorClass>,
}

/// Sorted multiplicity patterns of the generators of the nef cone at
/// `r = 7`; the model stores every index permutation of each.
const NEF_GENERATOR_PATTERNS_R7: [(i64, [i64; 7]); 20] = [
    (1, [0, 0, 0, 0, 0, 0, 0]),
    (2, [1, 1, 1, 0, 0, 0, 0]),
    (3, [2, 1, 1, 1, 1, 0, 0]),
    (4, [2, 2, 2, 1, 1, 1, 0]),
    (4, [3, 1, 1, 1, 1, 1, 1]),
    (5, [3, 2, 2, 2, 1, 1, 1]),
    (5, [2, 2, 2, 2, 2, 2, 0]),
    (6, [3, 3, 2, 2, 2, 2, 1]),
    (7, [3, 3, 3, 3, 2, 2, 2]),
    (8, [3, 3, 3, 3, 3, 3, 3]),
    (1, [1, 0, 0, 0, 0, 0, 0]),
    (2, [1, 1, 1, 1, 0, 0, 0]),
    (3, [2, 1, 1, 1, 1, 1, 0]),
    (4, [2, 2, 2, 1, 1, 1, 1]),
    (5, [2, 2, 2, 2, 2, 2, 1]),
    (3, [1, 1, 1, 1, 1, 1, 0]),
    (4, [2, 2, 1, 1, 1, 1, 1]),
    (5, [2, 2, 2, 2, 2, 1, 1]),
    (6, [3, 2, 2, 2, 2, 2, 2]),
    (3, [1, 1, 1, 1, 1, 1, 1]),
];

impl SurfaceModel {
    /// The shared model for the blow-up at `r` points.
    pub fn for_points(r: usize) -> Result<&'static SurfaceModel> {
        static MODELS: OnceLock<Vec<SurfaceModel>> = OnceLock::new();
        if r > MAX_POINTS {
            return Err(Error::PointCountOutOfRange { r });
        }
        let models = MODELS.get_or_init(|| (0..=MAX_POINTS).map(SurfaceModel::build).collect());
        Ok(&models[r])
    }

    fn build(r: usize) -> SurfaceModel {
        let canonical = canonical_class(r).expect("r <= 8");
        let exceptionals = build_exceptionals(r);
        let mut cubics = Vec::new();
        let mut nef_generators = Vec::new();
        if r == 7 {
            // C_i: the cubic with a double point at p_i, through the rest.
            for i in 0..7 {
                let mut mults = vec![1; 7];
                mults[i] = 2;
                cubics.push(DivisorClass { degree: 3, mults });
            }
            let mut seen = BTreeSet::new();
            for (degree, pattern) in NEF_GENERATOR_PATTERNS_R7 {
                for mults in distinct_permutations(&pattern, 7) {
                    seen.insert(DivisorClass { degree, mults });
                }
            }
            nef_generators = seen.into_iter().collect();
            nef_generators.sort_by_cached_key(DivisorClass::enumeration_key);
        }
        SurfaceModel {
            r,
            canonical,
            exceptionals,
            cubics,
            nef_generators,
        }
    }

    pub fn points(&self) -> usize {
        self.r
    }

    pub fn canonical(&self) -> &DivisorClass {
        &self.canonical
    }

    /// All exceptional curve classes, in enumeration order.
    pub fn exceptionals(&self) -> &[DivisorClass] {
        &self.exceptionals
    }

    /// At `r = 7`: the seven cubics `C_1, ..., C_7`, where `C_i` has
    /// multiplicity 2 at the `i`-th point and 1 at the others. Empty for
    /// other `r`.
    pub fn cubics(&self) -> &[DivisorClass] {
        &self.cubics
    }

    /// At `r = 7`: the generators of the nef cone, all index permutations
    /// included. Empty for other `r`.
    pub fn nef_generators(&self) -> &[DivisorClass] {
        &self.nef_generators
    }
}

/// The exceptional curve classes on the blow-up at `r` points, in
/// enumeration order.
pub fn exceptional_curves(r: usize) -> Result<&'static [DivisorClass]> {
    Ok(SurfaceModel::for_points(r)?.exceptionals())
}

/// Compares two classes in enumeration order.
pub fn enumeration_cmp(a: &DivisorClass, b: &DivisorClass) -> Ordering {
    a.enumeration_key().cmp(&b.enumeration_key())
}
