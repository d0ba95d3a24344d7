//! Kernel and cokernel of multiplication by the linear forms.
//!
//! For a class `F` on the blow-up at `r <= 7` general points, the bilinear
//! map `mu_F : H^0(F) (x) H^0(L) -> H^0(F + L)` multiplies sections by the
//! three coordinates. Its kernel and cokernel dimensions differ by the
//! index `lambda' = h^0(F + L) - 3 h^0(F)`, so it suffices to compute the
//! kernel, which is invariant under the moves performed here:
//!
//! * removing fixed components leaves the image of `mu_F` unchanged;
//! * subtracting a perpendicular exceptional curve of degree two or more
//!   drops `h^0` by exactly one without changing the kernel;
//! * a point of multiplicity zero can be forgotten entirely;
//! * a class perpendicular to a line splits the kernel into the two pieces
//!   obtained by removing the line through either of its two fattest points.
//!
//! The walk ends at a class with at most one section (kernel zero), a
//! multiple of a pencil, or an ample class, where the kernel is known in
//! closed form. A separate fast path covers nef classes at seven points by
//! the count of perpendicular plane cubics, with eight exceptional orbits.

use serde::Serialize;

use crate::cohom::{h0, h1, is_ample, is_nef, strip_fixed_components};
use crate::error::{invariant, Error, Result};
use crate::picard::{DivisorClass, SurfaceModel};

/// One move in the kernel computation, in the order performed.
///
/// Point indices are positions on the class at the time of the step; after
/// a contraction the later indices shift down.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum MuStep {
    /// At most one section: the kernel is zero.
    FewSections { sections: u64 },
    /// Removed the fixed exceptional curves from the class.
    StrippedFixed { removed: Vec<DivisorClass> },
    /// Subtracted a perpendicular exceptional curve of degree at least two.
    SubtractedPerpendicular { curve: DivisorClass },
    /// Forgot a point of multiplicity zero (1-indexed).
    ContractedPoint { index: usize },
    /// Terminal split at a perpendicular line through points `first` and
    /// `second`; `parts` are the section counts of the two reduced classes.
    SplitAtLine {
        first: usize,
        second: usize,
        parts: [u64; 2],
    },
    /// Terminal multiple of a pencil; `lines` says whether the pencil is a
    /// pencil of lines, the one case with nonzero kernel.
    Pencil {
        multiple: i64,
        base: DivisorClass,
        lines: bool,
    },
    /// Terminal ample class, where the map is surjective.
    Ample { class: DivisorClass },
}

/// Kernel and cokernel of `mu_F` together with the invariants that explain
/// them and the moves that led there.
#[derive(Debug, Clone, Serialize)]
pub struct MuReport {
    pub class: DivisorClass,
    pub h0: u64,
    /// `h^0(F + L)`.
    pub h0_shifted: u64,
    pub ker: u64,
    pub cok: u64,
    /// `h^0(F + L) - 3 h^0(F)`, the difference `cok - ker`.
    pub lambda_prime: i64,
    /// `max(0, lambda_prime)`.
    pub lambda: u64,
    /// Number of the seven perpendicular plane cubics, when `r = 7`.
    pub perpendicular_cubics: Option<u64>,
    /// `ker = 0` or `cok = 0`.
    pub maximal_rank: bool,
    pub trace: Vec<MuStep>,
}

/// `lambda'(F) = h^0(F + L) - 3 h^0(F)`, the cokernel minus the kernel.
pub fn lambda_prime(f: &DivisorClass) -> i64 {
    let line = DivisorClass::line(f.points()).expect("class point count is supported");
    h0(&(f + &line)) as i64 - 3 * h0(f) as i64
}

/// Number of the seven cubics through six of the points, doubled at the
/// seventh, that `f` meets in zero. Defined for `r = 7`.
pub fn perpendicular_cubic_count(f: &DivisorClass) -> Result<u64> {
    if f.points() != 7 {
        return Err(Error::Precondition {
            operation: "perpendicular_cubic_count",
            reason: format!("needs seven points, got {}", f.points()),
        });
    }
    let model = SurfaceModel::for_points(7).expect("r = 7");
    Ok(model
        .cubics()
        .iter()
        .filter(|c| f.intersect(c) == 0)
        .count() as u64)
}

/// Computes the kernel and cokernel dimensions of `mu_F` for `r <= 7`.
pub fn mu_dims(f: &DivisorClass) -> Result<MuReport> {
    mu_dims_choosing(f, |_| 0)
}

/// `mu_dims` with a pluggable choice among equally valid moves; the result
/// does not depend on the choices.
fn mu_dims_choosing(
    f: &DivisorClass,
    mut choose: impl FnMut(usize) -> usize,
) -> Result<MuReport> {
    let r = f.points();
    if r > 7 {
        return Err(Error::Unsupported {
            operation: "mu_dims",
            r,
        });
    }
    let line = DivisorClass::line(r).expect("r <= 7");
    let sections = h0(f);
    let shifted = h0(&(f + &line));
    let lambda_prime = shifted as i64 - 3 * sections as i64;
    let mut trace = Vec::new();
    let ker = kernel_dimension(f.clone(), &mut trace, &mut choose)?;
    let cok = lambda_prime + ker as i64;
    invariant!(
        cok >= 0,
        "mu_dims",
        "negative cokernel {cok} for {f} (kernel {ker})"
    );
    let cok = cok as u64;
    let perpendicular_cubics = match r {
        7 => Some(perpendicular_cubic_count(f)?),
        _ => None,
    };
    Ok(MuReport {
        class: f.clone(),
        h0: sections,
        h0_shifted: shifted,
        ker,
        cok,
        lambda_prime,
        lambda: lambda_prime.max(0) as u64,
        perpendicular_cubics,
        maximal_rank: ker == 0 || cok == 0,
        trace,
    })
}

/// The kernel-preserving walk. Every branch either terminates with a known
/// kernel or strictly decreases `h^0`, the point count, or the degree, so
/// the walk is finite.
fn kernel_dimension(
    mut f: DivisorClass,
    trace: &mut Vec<MuStep>,
    choose: &mut impl FnMut(usize) -> usize,
) -> Result<u64> {
    'start: loop {
        let sections = h0(&f);
        if sections <= 1 {
            trace.push(MuStep::FewSections { sections });
            return Ok(0);
        }
        let (free, fixed) = strip_fixed_components(&f)?;
        if !fixed.is_empty() {
            trace.push(MuStep::StrippedFixed { removed: fixed });
        }
        // A class free of fixed components meets every curve nonnegatively.
        f = free;
        loop {
            let model = SurfaceModel::for_points(f.points()).expect("r <= 7");
            let conics: Vec<&DivisorClass> = model
                .exceptionals()
                .iter()
                .filter(|e| e.degree() >= 2 && f.intersect(e) == 0)
                .collect();
            if !conics.is_empty() {
                let e = conics[choose(conics.len())];
                trace.push(MuStep::SubtractedPerpendicular { curve: e.clone() });
                let before = h0(&f);
                f = &f - e;
                let after = h0(&f);
                invariant!(
                    after + 1 == before,
                    "mu_dims",
                    "subtracting {e} changed h^0 from {before} to {after}"
                );
                continue 'start;
            }
            let idle: Vec<usize> = (1..=f.points())
                .filter(|&i| f.mults()[i - 1] == 0)
                .collect();
            if !idle.is_empty() {
                let index = idle[choose(idle.len())];
                trace.push(MuStep::ContractedPoint { index });
                f = f.dropping_point(index);
                continue;
            }
            let mut lines: Vec<(usize, usize)> = Vec::new();
            for i in 1..=f.points() {
                for j in i + 1..=f.points() {
                    if f.degree() == f.mults()[i - 1] + f.mults()[j - 1] {
                        lines.push((i, j));
                    }
                }
            }
            if !lines.is_empty() {
                let (i, j) = lines[choose(lines.len())];
                // Perpendicularity of the line forces m_i and m_j to carry
                // the two largest multiplicity values on this nef class.
                let parts = [i, j].map(|p| {
                    let mut mults = f.mults().to_vec();
                    mults[p - 1] -= 1;
                    let reduced =
                        DivisorClass::new(f.degree() - 1, mults).expect("same point count");
                    h0(&reduced)
                });
                trace.push(MuStep::SplitAtLine {
                    first: i,
                    second: j,
                    parts,
                });
                return Ok(parts[0] + parts[1]);
            }
            let square = f.self_intersection();
            if square == 0 {
                let canonical_drop = -f.intersect(model.canonical());
                invariant!(
                    canonical_drop > 0 && canonical_drop % 2 == 0,
                    "mu_dims",
                    "pencil candidate {f} has odd or nonpositive -K.F = {canonical_drop}"
                );
                let multiple = canonical_drop / 2;
                let base = f.divided_exactly(multiple);
                let Some(base) = base else {
                    return Err(Error::Invariant {
                        operation: "mu_dims",
                        reason: format!("{f} is not {multiple} times a pencil class"),
                    });
                };
                invariant!(
                    base.self_intersection() == 0
                        && base.intersect(model.canonical()) == -2,
                    "mu_dims",
                    "pencil base {base} is not a rational pencil"
                );
                let lines = base.degree() == 1;
                trace.push(MuStep::Pencil {
                    multiple,
                    base,
                    lines,
                });
                return Ok(if lines { multiple as u64 } else { 0 });
            }
            invariant!(
                square > 0,
                "mu_dims",
                "fixed-component-free class {f} has negative self-intersection"
            );
            invariant!(
                is_ample(&f)?,
                "mu_dims",
                "class {f} with positive square is not ample"
            );
            let line = DivisorClass::line(f.points()).expect("r <= 7");
            let ker = 3 * h0(&f) as i64 - h0(&(&f + &line)) as i64;
            invariant!(
                ker > 0,
                "mu_dims",
                "ample class {f} must have positive kernel, got {ker}"
            );
            trace.push(MuStep::Ample { class: f.clone() });
            return Ok(ker as u64);
        }
    }
}

/// The eight nef orbits at seven points where the cokernel is not
/// `max(t, lambda)`: degree and nonincreasing multiplicities.
const FAST_PATH_EXCEPTIONS: [(i64, [i64; 7]); 8] = [
    (0, [0, 0, 0, 0, 0, 0, 0]),
    (4, [2, 2, 2, 1, 1, 1, 1]),
    (5, [2, 2, 2, 2, 2, 2, 1]),
    (7, [3, 3, 3, 3, 2, 2, 2]),
    (8, [3, 3, 3, 3, 3, 3, 3]),
    (10, [4, 4, 4, 4, 4, 3, 3]),
    (13, [5, 5, 5, 5, 5, 5, 4]),
    (16, [6, 6, 6, 6, 6, 6, 6]),
];

/// Kernel and cokernel of `mu_F` for a nef class at seven points, in closed
/// form: `cok = max(t, lambda)` with `t` the perpendicular cubic count,
/// except on eight orbits where `cok = lambda` and the kernel vanishes.
pub fn fast_mu_nef7(f: &DivisorClass) -> Result<(u64, u64)> {
    if f.points() != 7 || !is_nef(f) {
        return Err(Error::Precondition {
            operation: "fast_mu_nef7",
            reason: format!("{f} is not a nef class on seven points"),
        });
    }
    let t = perpendicular_cubic_count(f)?;
    let lp = lambda_prime(f);
    let lambda = lp.max(0) as u64;
    let (sorted, _) = f.sorted_descending();
    let exceptional = FAST_PATH_EXCEPTIONS
        .iter()
        .any(|(d, m)| sorted.degree() == *d && sorted.mults() == m);
    let cok = match exceptional {
        true => lambda,
        false => t.max(lambda),
    };
    let ker = cok as i64 - lp;
    invariant!(
        ker >= 0,
        "fast_mu_nef7",
        "negative kernel {ker} for {f}"
    );
    Ok((ker as u64, cok))
}

/// Predicts rank failure of `mu_F` for a nef class at seven points: the
/// perpendicular cubics must exist, and removing them all must leave a nef
/// class that still wants more sections than three times its own.
pub fn max_rank_failure_nef7(f: &DivisorClass) -> Result<bool> {
    if f.points() != 7 || !is_nef(f) {
        return Err(Error::Precondition {
            operation: "max_rank_failure_nef7",
            reason: format!("{f} is not a nef class on seven points"),
        });
    }
    let model = SurfaceModel::for_points(7).expect("r = 7");
    let perpendicular: Vec<&DivisorClass> = model
        .cubics()
        .iter()
        .filter(|c| f.intersect(c) == 0)
        .collect();
    if perpendicular.is_empty() {
        return Ok(false);
    }
    let mut reduced = f.clone();
    for c in perpendicular {
        reduced = &reduced - c;
    }
    Ok(is_nef(&reduced) && lambda_prime(&reduced) < 0)
}

/// Lower and upper bounds for the kernel of `mu_F`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct KernelBounds {
    pub lower: u64,
    pub upper: u64,
}

/// Bounds the kernel of `mu_F` for an effective class with `h^1 = 0` on at
/// least two points, using only section counts of nearby classes.
///
/// With points sorted so the two largest multiplicities come first, and
/// writing `l_i = h^0(F - (L - E_i))` and `q_1 = h^0(F - E_1)`:
///
/// * `ker >= max(0, 2 h^0(F) - deg F - 2, l_1 + l_2)`;
/// * `ker <= min(l_1 + q_1, l_1 + l_2 + h^0(F + L - E_1 - E_2) - h^0(F))`.
pub fn kernel_bounds(f: &DivisorClass) -> Result<KernelBounds> {
    if f.points() < 2 {
        return Err(Error::Precondition {
            operation: "kernel_bounds",
            reason: format!("needs at least two points, got {}", f.points()),
        });
    }
    let sections = h0(f);
    if sections == 0 {
        return Err(Error::Precondition {
            operation: "kernel_bounds",
            reason: format!("{f} is not effective"),
        });
    }
    if h1(f) != 0 {
        return Err(Error::Precondition {
            operation: "kernel_bounds",
            reason: format!("{f} has h^1 = {}", h1(f)),
        });
    }
    let (sorted, _) = f.sorted_descending();
    let d = sorted.degree();
    let reduce_line = |through: usize| {
        let mut mults = sorted.mults().to_vec();
        mults[through] -= 1;
        DivisorClass::new(d - 1, mults).expect("same point count")
    };
    let l1 = h0(&reduce_line(0));
    let l2 = h0(&reduce_line(1));
    let e1 = DivisorClass::exceptional(sorted.points(), 1).expect("r >= 2");
    let q1 = h0(&(&sorted - &e1));
    let mut shifted_mults = sorted.mults().to_vec();
    shifted_mults[0] += 1;
    shifted_mults[1] += 1;
    let shifted = DivisorClass::new(d + 1, shifted_mults).expect("same point count");
    let lower = 0i64
        .max(2 * sections as i64 - d - 2)
        .max((l1 + l2) as i64) as u64;
    let upper = ((l1 + q1) as i64)
        .min((l1 + l2) as i64 + h0(&shifted) as i64 - sections as i64);
    invariant!(
        (lower as i64) <= upper,
        "kernel_bounds",
        "bounds crossed for {f}: {lower} > {upper}"
    );
    Ok(KernelBounds {
        lower,
        upper: upper as u64,
    })
}

/// Rank failure test for a nonzero nef class perpendicular to a line
/// through its two fattest points: the map fails maximal rank exactly when
/// removing the line through the fattest point leaves sections and removing
/// the line through the other end leaves unwanted cohomology.
pub fn rank_failure_at_perpendicular_line(f: &DivisorClass) -> Result<bool> {
    if f.points() < 2 || f.is_zero() || !is_nef(f) {
        return Err(Error::Precondition {
            operation: "rank_failure_at_perpendicular_line",
            reason: format!("{f} is not a nonzero nef class on at least two points"),
        });
    }
    let (sorted, _) = f.sorted_descending();
    let d = sorted.degree();
    if d != sorted.mults()[0] + sorted.mults()[1] {
        return Err(Error::Precondition {
            operation: "rank_failure_at_perpendicular_line",
            reason: format!("{f} is not perpendicular to a line through its fattest points"),
        });
    }
    let reduce_line = |through: usize| {
        let mut mults = sorted.mults().to_vec();
        mults[through] -= 1;
        DivisorClass::new(d - 1, mults).expect("same point count")
    };
    Ok(h0(&reduce_line(0)) > 0 && h1(&reduce_line(1)) > 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohom::nef_classes_sorted;
    use crate::testutil::{random_class, SplitMix};

    fn cls(s: &str) -> DivisorClass {
        s.parse().expect("test class parses")
    }

    fn dims(s: &str) -> (u64, u64) {
        let report = mu_dims(&cls(s)).unwrap();
        (report.ker, report.cok)
    }

    #[test]
    fn classes_with_few_sections() {
        assert_eq!(dims("2;1,1,1,1,1,1,1"), (0, 3));
        assert_eq!(dims("0;0,0,0,0,0,0,0"), (0, 0));
        assert_eq!(dims("2;1,1,1,1,1,0,0"), (0, 2));
        assert_eq!(dims("-1;0,0"), (0, 1));
    }

    #[test]
    fn perpendicular_conic_subtraction() {
        let report = mu_dims(&cls("4;2,2,2,1,1,1,1")).unwrap();
        assert_eq!((report.ker, report.cok), (0, 2));
        assert!(report
            .trace
            .iter()
            .any(|s| matches!(s, MuStep::SubtractedPerpendicular { curve } if curve.degree() == 2)));
    }

    #[test]
    fn perpendicular_conic_comes_before_the_cubic() {
        // This class is perpendicular to conics and to six of the cubics;
        // the scan takes a conic and lands on a single section.
        let report = mu_dims(&cls("5;2,2,2,2,2,2,1")).unwrap();
        assert_eq!((report.ker, report.cok), (0, 3));
        assert!(report
            .trace
            .iter()
            .any(|s| matches!(s, MuStep::SubtractedPerpendicular { curve } if curve.degree() == 2)));
    }

    #[test]
    fn the_canonical_shift_fails_maximal_rank() {
        let report = mu_dims(&cls("6;3,2,2,2,2,2,2")).unwrap();
        assert_eq!((report.ker, report.cok), (1, 1));
        assert!(!report.maximal_rank);
        assert_eq!(report.perpendicular_cubics, Some(1));
        // Here the only perpendicular curve of higher degree is a cubic.
        assert!(report
            .trace
            .iter()
            .any(|s| matches!(s, MuStep::SubtractedPerpendicular { curve } if curve.degree() == 3)));
    }

    #[test]
    fn pencils_of_lines_have_full_kernel() {
        for m in 1..=5 {
            let f = DivisorClass::new(m, vec![m]).unwrap();
            let report = mu_dims(&f).unwrap();
            assert_eq!(report.ker, m as u64, "pencil multiple {m}");
            assert_eq!(report.cok, 0);
            assert!(report
                .trace
                .iter()
                .any(|s| matches!(s, MuStep::Pencil { lines: true, .. })));
        }
    }

    #[test]
    fn conic_pencils_have_no_kernel() {
        // Twice the conic pencil through four points is perpendicular to
        // every line between them, so the walk ends at a line split whose
        // two parts are both empty.
        let report = mu_dims(&cls("4;2,2,2,2")).unwrap();
        assert_eq!((report.ker, report.cok), (0, 0));
        assert!(report
            .trace
            .iter()
            .any(|s| matches!(s, MuStep::SplitAtLine { parts: [0, 0], .. })));
    }

    #[test]
    fn split_at_a_perpendicular_line() {
        let report = mu_dims(&cls("4;2,2,1,1,1,1,1")).unwrap();
        assert_eq!((report.ker, report.cok), (2, 0));
        assert!(report
            .trace
            .iter()
            .any(|s| matches!(s, MuStep::SplitAtLine { parts: [1, 1], .. })));
    }

    #[test]
    fn contraction_chain_down_to_the_plane() {
        let report = mu_dims(&cls("1;0,0,0,0,0,0,0")).unwrap();
        assert_eq!((report.ker, report.cok), (3, 0));
        let contractions = report
            .trace
            .iter()
            .filter(|s| matches!(s, MuStep::ContractedPoint { .. }))
            .count();
        assert_eq!(contractions, 7);
        assert!(report
            .trace
            .iter()
            .any(|s| matches!(s, MuStep::Ample { .. })));
    }

    #[test]
    fn the_largest_exception_walks_the_whole_chain() {
        let report = mu_dims(&cls("16;6,6,6,6,6,6,6")).unwrap();
        assert_eq!((report.ker, report.cok), (0, 6));
        assert_eq!(report.perpendicular_cubics, Some(7));
    }

    #[test]
    fn a_line_type_failure() {
        let f = cls("7;4,3,2,2,2,2,2");
        let report = mu_dims(&f).unwrap();
        assert_eq!((report.ker, report.cok), (2, 1));
        assert!(!report.maximal_rank);
        assert!(rank_failure_at_perpendicular_line(&f).unwrap());
        assert!(max_rank_failure_nef7(&f).unwrap());
    }

    #[test]
    fn no_failure_at_a_harmless_line() {
        let f = cls("4;2,2,1,1,1,1,1");
        assert!(!rank_failure_at_perpendicular_line(&f).unwrap());
        assert!(!max_rank_failure_nef7(&f).unwrap());
    }

    #[test]
    fn ample_classes_keep_positive_kernel_and_surject() {
        let report = mu_dims(&cls("3;1,1,1,1,1,1,1")).unwrap();
        assert_eq!((report.ker, report.cok), (1, 0));
        assert_eq!(report.perpendicular_cubics, Some(0));
    }

    #[test]
    fn fast_path_matches_the_walk_on_named_classes() {
        for s in [
            "0;0,0,0,0,0,0,0",
            "4;2,2,2,1,1,1,1",
            "5;2,2,2,2,2,2,1",
            "16;6,6,6,6,6,6,6",
            "6;3,2,2,2,2,2,2",
            "3;1,1,1,1,1,1,1",
            "4;2,2,1,1,1,1,1",
            "7;4,3,2,2,2,2,2",
            "8;3,3,3,3,3,3,3",
            "1;0,0,0,0,0,0,0",
        ] {
            let f = cls(s);
            let report = mu_dims(&f).unwrap();
            let (ker, cok) = fast_mu_nef7(&f).unwrap();
            assert_eq!((ker, cok), (report.ker, report.cok), "fast path on {s}");
        }
    }

    #[test]
    fn fast_path_exception_invariants() {
        let expected: [(u64, u64); 8] = [
            (7, 0),
            (3, 2),
            (6, 3),
            (4, 3),
            (7, 4),
            (5, 4),
            (6, 5),
            (7, 6),
        ];
        for ((d, m), (t, lambda)) in FAST_PATH_EXCEPTIONS.iter().zip(expected) {
            let f = DivisorClass::new(*d, m.to_vec()).unwrap();
            assert_eq!(perpendicular_cubic_count(&f).unwrap(), t, "t of {f}");
            assert_eq!(lambda_prime(&f).max(0) as u64, lambda, "lambda of {f}");
            assert!(t > lambda, "exception {f} must have t > lambda");
            let (ker, cok) = fast_mu_nef7(&f).unwrap();
            assert_eq!(ker, 0, "kernel of exception {f}");
            assert_eq!(cok, lambda, "cokernel of exception {f}");
        }
    }

    #[test]
    fn fast_path_requires_nef_seven_point_classes() {
        assert!(fast_mu_nef7(&cls("1;1,1,0,0,0,0,0")).is_err());
        assert!(fast_mu_nef7(&cls("2;1,1")).is_err());
    }

    #[test]
    fn mu_rejects_eight_points() {
        assert!(matches!(
            mu_dims(&cls("3;1,1,1,1,1,1,1,1")),
            Err(Error::Unsupported { .. })
        ));
    }

    #[test]
    fn mu_is_choice_independent() {
        let mut rng = SplitMix::new(0x6d75);
        for _ in 0..150 {
            let r = (rng.next() % 8) as usize;
            let f = random_class(&mut rng, r);
            let expected = mu_dims(&f).unwrap();
            let mut picks = SplitMix::new(rng.next());
            let randomized = mu_dims_choosing(&f, |n| (picks.next() as usize) % n).unwrap();
            assert_eq!(
                (randomized.ker, randomized.cok),
                (expected.ker, expected.cok),
                "choice-dependent mu on {f}"
            );
        }
    }

    #[test]
    fn fast_path_matches_on_all_small_nef_classes() {
        for f in nef_classes_sorted(7, 8).unwrap() {
            let report = mu_dims(&f).unwrap();
            let (ker, cok) = fast_mu_nef7(&f).unwrap();
            assert_eq!((ker, cok), (report.ker, report.cok), "fast path on {f}");
            assert_eq!(
                max_rank_failure_nef7(&f).unwrap(),
                !report.maximal_rank,
                "failure prediction on {f}"
            );
        }
    }

    #[test]
    fn kernel_bounds_sandwich_known_kernels() {
        let k7 = cls("3;1,1,1,1,1,1,1");
        let b = kernel_bounds(&k7).unwrap();
        assert_eq!((b.lower, b.upper), (1, 1));
        let line7 = cls("1;0,0,0,0,0,0,0");
        let b = kernel_bounds(&line7).unwrap();
        assert_eq!((b.lower, b.upper), (3, 3));
        let conic2 = cls("2;1,1");
        let b = kernel_bounds(&conic2).unwrap();
        assert_eq!((b.lower, b.upper), (4, 4));
    }

    #[test]
    fn kernel_bounds_preconditions() {
        assert!(kernel_bounds(&cls("2;2")).is_err());
        assert!(kernel_bounds(&cls("-1;0,0")).is_err());
        assert!(kernel_bounds(&cls("0;-2,0")).is_err());
    }

    #[test]
    fn bounds_contain_the_kernel_on_random_good_classes() {
        let mut rng = SplitMix::new(0xb0bb);
        let mut seen = 0;
        for _ in 0..2500 {
            let r = 2 + (rng.next() % 6) as usize;
            let f = random_class(&mut rng, r);
            if h0(&f) == 0 || h1(&f) != 0 {
                continue;
            }
            seen += 1;
            let bounds = kernel_bounds(&f).unwrap();
            let report = mu_dims(&f).unwrap();
            assert!(
                bounds.lower <= report.ker && report.ker <= bounds.upper,
                "kernel {} of {f} outside [{}, {}]",
                report.ker,
                bounds.lower,
                bounds.upper
            );
        }
        assert!(seen > 150, "sample too thin: {seen}");
    }
}
