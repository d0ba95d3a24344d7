//! Minimal free resolutions of fat point ideals.
//!
//! A fat point subscheme `Z = m_1 p_1 + ... + m_r p_r` at general points of
//! the plane has a homogeneous ideal `I(Z)` whose degree-`t` piece has
//! dimension `h^0` of the class `(t; m_1, ..., m_r)`. Its minimal free
//! resolution is determined by two ingredients this crate already computes:
//!
//! * the number of minimal generators in degree `t` is the cokernel of the
//!   multiplication map out of degree `t - 1`;
//! * the syzygy counts then follow from the Hilbert function by pure
//!   bookkeeping, since the alternating sum of the free modules must
//!   reproduce `dim I(Z)_t` in every degree.
//!
//! The interesting range is bracketed by `alpha`, the first degree with a
//! nonzero form, and `beta`, the first degree where the linear system has
//! no fixed curve; all generators and syzygies live at most two past
//! `beta`, which is asserted.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cohom::{h0, strip_fixed_components};
use crate::error::{invariant, Error, Result};
use crate::mu::mu_dims;
use crate::picard::{DivisorClass, MAX_POINTS};

/// A fat point subscheme of the plane: nonnegative multiplicities at up to
/// seven general points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FatPointScheme {
    mults: Vec<i64>,
}

impl FatPointScheme {
    pub fn new(mults: Vec<i64>) -> Result<Self> {
        if mults.len() > MAX_POINTS {
            return Err(Error::PointCountOutOfRange { r: mults.len() });
        }
        if mults.len() > 7 {
            return Err(Error::Unsupported {
                operation: "resolution",
                r: mults.len(),
            });
        }
        if let Some(&m) = mults.iter().find(|&&m| m < 0) {
            return Err(Error::Precondition {
                operation: "FatPointScheme::new",
                reason: format!("multiplicity {m} is negative"),
            });
        }
        Ok(FatPointScheme { mults })
    }

    pub fn points(&self) -> usize {
        self.mults.len()
    }

    pub fn mults(&self) -> &[i64] {
        &self.mults
    }

    /// Total multiplicity, an upper bound for every degree of interest.
    fn total(&self) -> i64 {
        self.mults.iter().sum()
    }

    /// The divisor class of plane curves of degree `t` through `Z`.
    pub fn degree_class(&self, t: i64) -> DivisorClass {
        DivisorClass::new(t, self.mults.clone()).expect("r <= 7")
    }

    /// `dim I(Z)_t`.
    pub fn hilbert(&self, t: i64) -> u64 {
        if t < 0 {
            return 0;
        }
        h0(&self.degree_class(t))
    }

    /// Initial degree: the least `t` with a nonzero form through `Z`.
    pub fn alpha(&self) -> i64 {
        let bound = self.total();
        (0..=bound)
            .find(|&t| self.hilbert(t) > 0)
            .expect("the product of lines through the points is a section")
    }

    /// The least degree at or past `alpha` where the linear system carries
    /// no fixed curve. Freeness is monotone in the degree from here on.
    pub fn beta(&self) -> Result<i64> {
        let bound = self.total() + 2;
        for t in self.alpha()..=bound {
            let (_, fixed) = strip_fixed_components(&self.degree_class(t))?;
            if fixed.is_empty() {
                return Ok(t);
            }
        }
        Err(Error::Invariant {
            operation: "beta",
            reason: format!("no fixed-curve-free degree up to {bound} for {:?}", self.mults),
        })
    }

    /// The minimal free resolution `0 -> F_1 -> F_0 -> I(Z) -> 0`.
    pub fn resolve(&self) -> Result<ResolutionSummary> {
        let alpha = self.alpha();
        let beta = self.beta()?;
        let window_end = beta + 5;
        let mut generators: BTreeMap<i64, u64> = BTreeMap::new();
        if self.hilbert(0) > 0 {
            generators.insert(0, self.hilbert(0));
        }
        for t in 1..=window_end {
            let cok = mu_dims(&self.degree_class(t - 1))?.cok;
            if cok > 0 {
                generators.insert(t, cok);
            }
        }
        let syzygies =
            syzygies_from_generators("resolve", &generators, |t| self.hilbert(t), window_end)?;
        for (map, label) in [(&generators, "generator"), (&syzygies, "syzygy")] {
            for &t in map.keys() {
                invariant!(
                    t <= beta + 2,
                    "resolve",
                    "{label} in degree {t} beyond beta + 2 = {}",
                    beta + 2
                );
            }
        }
        let nu_total: u64 = generators.values().sum();
        let s_total: u64 = syzygies.values().sum();
        invariant!(
            nu_total == s_total + 1,
            "resolve",
            "rank bookkeeping failed: {nu_total} generators vs {s_total} syzygies"
        );
        let display = render_resolution(&generators, &syzygies);
        let hilbert = (0..=beta + 2).map(|t| (t, self.hilbert(t))).collect();
        Ok(ResolutionSummary {
            r: self.points(),
            mults: self.mults.clone(),
            alpha,
            beta,
            degenerate: self.total() == 0,
            hilbert,
            generators,
            syzygies,
            display,
        })
    }
}

/// The resolved shape of a fat point ideal.
#[derive(Debug, Clone, Serialize)]
pub struct ResolutionSummary {
    pub r: usize,
    pub mults: Vec<i64>,
    pub alpha: i64,
    pub beta: i64,
    /// True for the empty subscheme, whose ideal is the whole ring.
    pub degenerate: bool,
    /// `dim I(Z)_t` for `t` up to `beta + 2`.
    pub hilbert: BTreeMap<i64, u64>,
    /// Minimal generator counts by degree (nonzero entries only).
    pub generators: BTreeMap<i64, u64>,
    /// Syzygy counts by degree (nonzero entries only).
    pub syzygies: BTreeMap<i64, u64>,
    /// Human-readable resolution, e.g. `0 -> 2R(-3) -> 3R(-2) -> I -> 0`.
    pub display: String,
}

/// `dim R_e` for the polynomial ring in three variables: the number of
/// plane forms of degree `e`, zero for negative `e`.
pub(crate) fn plane_forms(e: i64) -> i64 {
    if e < 0 {
        0
    } else {
        (e + 1) * (e + 2) / 2
    }
}

/// Syzygy counts forced by generator counts and the Hilbert function.
///
/// In every degree the free modules must satisfy
/// `dim I_t = sum_j nu_j dim R_{t-j} - sum_j s_j dim R_{t-j}`, which
/// determines `s_t` degree by degree; a negative forced value means the
/// inputs are inconsistent. Returns the nonzero counts.
pub(crate) fn syzygies_from_generators(
    operation: &'static str,
    generators: &BTreeMap<i64, u64>,
    hilbert: impl Fn(i64) -> u64,
    window_end: i64,
) -> Result<BTreeMap<i64, u64>> {
    let mut nonzero = BTreeMap::new();
    let mut dense: Vec<u64> = Vec::new();
    for t in 0..=window_end {
        let mut predicted: i64 = generators
            .iter()
            .map(|(&j, &n)| n as i64 * plane_forms(t - j))
            .sum();
        for (j, &s) in dense.iter().enumerate() {
            predicted -= s as i64 * plane_forms(t - j as i64);
        }
        let forced = predicted - hilbert(t) as i64;
        invariant!(
            forced >= 0,
            operation,
            "negative syzygy count {forced} forced in degree {t}"
        );
        dense.push(forced as u64);
        if forced > 0 {
            nonzero.insert(t, forced as u64);
        }
    }
    Ok(nonzero)
}

/// Renders `0 -> F_1 -> F_0 -> I -> 0` with counts and twists, e.g.
/// `0 -> R(-4)+R(-5) -> 3R(-3) -> I -> 0`.
pub(crate) fn render_resolution(
    generators: &BTreeMap<i64, u64>,
    syzygies: &BTreeMap<i64, u64>,
) -> String {
    fn side(map: &BTreeMap<i64, u64>) -> String {
        if map.is_empty() {
            return "0".to_string();
        }
        map.iter()
            .map(|(&t, &n)| {
                let module = if t == 0 {
                    "R(0)".to_string()
                } else {
                    format!("R(-{t})")
                };
                match n {
                    1 => module,
                    _ => format!("{n}{module}"),
                }
            })
            .collect::<Vec<_>>()
            .join("+")
    }
    format!("0 -> {} -> {} -> I -> 0", side(syzygies), side(generators))
}
