//! Cohomology of divisor classes on blow-ups of the plane at general points.
//!
//! Everything rests on three facts about the blow-up `X` of `P^2` at
//! `r <= 8` general points. First, Riemann-Roch on a rational surface reads
//! `chi(F) = (F.F - K.F)/2 + 1`. Second, a class `F` with `F.E < 0` for an
//! exceptional curve `E` has `E` in the base locus of `|F|`, so
//! `h^0(F) = h^0(F - E)`; once no exceptional curve is met negatively and
//! the degree is nonnegative, `h^1 = 0` and `h^0 = max(0, chi)`. Third,
//! Serre duality gives `h^2(F) = h^0(K - F)`. Together these compute all
//! three cohomology dimensions exactly, by subtracting exceptional curves
//! until the class is either visibly empty or in good position.
//!
//! The same reduction underlies the effectivity, nef, and ample tests and
//! the splitting of an effective class into its free and fixed parts.

use crate::error::{Error, Result};
use crate::picard::{canonical_class, DivisorClass, SurfaceModel};

/// Euler characteristic `chi(F) = (F.F - K.F)/2 + 1` from Riemann-Roch.
pub fn chi(f: &DivisorClass) -> i64 {
    let k = canonical_class(f.points()).expect("class point count is supported");
    let numerator = f.self_intersection() - f.intersect(&k);
    assert_eq!(numerator % 2, 0, "chi numerator is always even");
    numerator / 2 + 1
}

/// `h^0` computed by exceptional-curve reduction.
///
/// While the degree is nonnegative and some exceptional curve is met
/// negatively, that curve is a fixed component and may be subtracted without
/// changing `h^0`; each subtraction strictly decreases the potential
/// `3 deg + sum max(0, -m_i)`, which is nonnegative whenever a subtraction
/// happens, so the loop terminates. A class of negative degree has no
/// sections, and a class meeting every exceptional curve nonnegatively has
/// `h^0 = max(0, chi)`.
pub fn h0(f: &DivisorClass) -> u64 {
    h0_choosing(f, |_| 0)
}

/// `h^0` with a pluggable choice among the exceptional curves currently met
/// negatively; the result does not depend on the choice.
fn h0_choosing(f: &DivisorClass, mut choose: impl FnMut(usize) -> usize) -> u64 {
    let model = SurfaceModel::for_points(f.points()).expect("class point count is supported");
    let mut f = f.clone();
    loop {
        if f.degree() < 0 {
            return 0;
        }
        let negatives: Vec<&DivisorClass> = model
            .exceptionals()
            .iter()
            .filter(|e| f.intersect(e) < 0)
            .collect();
        match negatives.is_empty() {
            true => return chi(&f).max(0) as u64,
            false => f = &f - negatives[choose(negatives.len())],
        }
    }
}

/// `h^2(F) = h^0(K - F)` by Serre duality.
pub fn h2(f: &DivisorClass) -> u64 {
    let k = canonical_class(f.points()).expect("class point count is supported");
    h0(&(&k - f))
}

/// `h^1 = h^0 + h^2 - chi`, which is nonnegative because the other three
/// terms are exact.
pub fn h1(f: &DivisorClass) -> u64 {
    let value = h0(f) as i64 + h2(f) as i64 - chi(f);
    assert!(value >= 0, "h^1 must be nonnegative, got {value} for {f}");
    value as u64
}

/// True iff `f` meets every curve on the surface nonnegatively.
///
/// For `r >= 2` the effective cone is generated by the exceptional curves,
/// so it suffices that `f.L >= 0` and `f.E >= 0` for every enumerated
/// exceptional class; at `r <= 1` the explicit cones are `d >= m_1 >= 0`
/// and `d >= 0`.
pub fn is_nef(f: &DivisorClass) -> bool {
    let model = SurfaceModel::for_points(f.points()).expect("class point count is supported");
    match f.points() {
        0 => f.degree() >= 0,
        1 => f.degree() >= f.mults()[0] && f.mults()[0] >= 0,
        _ => f.degree() >= 0 && model.exceptionals().iter().all(|e| f.intersect(e) >= 0),
    }
}

/// True iff `f` is ample (Nakai-Moishezon: positive self-intersection and
/// positive against every curve). Supported for `r <= 7`, where for
/// `3 <= r <= 7` it is equivalent to `f + K` being nef.
pub fn is_ample(f: &DivisorClass) -> Result<bool> {
    let r = f.points();
    if r > 7 {
        return Err(Error::Unsupported {
            operation: "is_ample",
            r,
        });
    }
    let model = SurfaceModel::for_points(r).expect("r <= 7");
    Ok(match r {
        0 => f.degree() > 0,
        1 => f.degree() > f.mults()[0] && f.mults()[0] > 0,
        _ => {
            f.degree() > 0
                && f.self_intersection() > 0
                && model.exceptionals().iter().all(|e| f.intersect(e) > 0)
        }
    })
}

/// True iff `f` is the class of an effective divisor, i.e. `h^0(f) > 0`.
pub fn is_effective(f: &DivisorClass) -> bool {
    h0(f) > 0
}

/// Splits an effective class into its fixed-component-free part and the
/// multiset of fixed exceptional curves.
///
/// An exceptional curve `E` is a fixed component of `|F|` exactly when
/// `h^0(F - E) = h^0(F)` (every section is divisible by the section cutting
/// `E`). Only exceptional curves can occur: an irreducible fixed curve is
/// met negatively by the class, hence has negative self-intersection, and on
/// these surfaces such curves are exceptional. Each removal lowers `-K.F`
/// by one, which stays nonnegative on effective classes, so the scan
/// terminates.
///
/// Errors when `h^0(f) = 0`.
pub fn strip_fixed_components(f: &DivisorClass) -> Result<(DivisorClass, Vec<DivisorClass>)> {
    strip_choosing(f, |_| 0)
}

fn strip_choosing(
    f: &DivisorClass,
    mut choose: impl FnMut(usize) -> usize,
) -> Result<(DivisorClass, Vec<DivisorClass>)> {
    if h0(f) == 0 {
        return Err(Error::Precondition {
            operation: "strip_fixed_components",
            reason: format!("{f} is not effective"),
        });
    }
    let model = SurfaceModel::for_points(f.points()).expect("class point count is supported");
    let mut free = f.clone();
    let mut fixed = Vec::new();
    loop {
        let h = h0(&free);
        let candidates: Vec<&DivisorClass> = model
            .exceptionals()
            .iter()
            .filter(|e| h0(&(&free - e)) == h)
            .collect();
        if candidates.is_empty() {
            break;
        }
        let e = candidates[choose(candidates.len())];
        free = &free - e;
        fixed.push(e.clone());
    }
    fixed.sort_by_cached_key(DivisorClass::enumeration_key);
    Ok((free, fixed))
}

/// All nef classes of degree at most `max_degree` with nonincreasing
/// multiplicities, in enumeration order. Since every quantity in this crate
/// is invariant under permuting the points, these are canonical
/// representatives of all nef classes up to that symmetry.
pub fn nef_classes_sorted(r: usize, max_degree: i64) -> Result<Vec<DivisorClass>> {
    if r > crate::picard::MAX_POINTS {
        return Err(Error::PointCountOutOfRange { r });
    }
    let mut out = Vec::new();
    let mut prefix: Vec<i64> = Vec::with_capacity(r);
    for d in 0..=max_degree {
        descend(d, r, &mut prefix, &mut out);
    }
    out.sort_by_cached_key(DivisorClass::enumeration_key);
    return Ok(out);

    fn descend(d: i64, r: usize, prefix: &mut Vec<i64>, out: &mut Vec<DivisorClass>) {
        if prefix.len() == 2 && prefix[0] + prefix[1] > d {
            // Sorted classes with m_1 + m_2 > d meet a line through the two
            // fattest points negatively; the whole subtree is non-nef.
            return;
        }
        if prefix.len() == r {
            let f = DivisorClass::new(d, prefix.clone()).expect("r <= 8");
            if is_nef(&f) {
                out.push(f);
            }
            return;
        }
        let hi = prefix.last().copied().unwrap_or(d);
        for m in 0..=hi {
            prefix.push(m);
            descend(d, r, prefix, out);
            prefix.pop();
        }
    }
}
