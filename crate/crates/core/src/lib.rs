//! Exact arithmetic for fat point subschemes of the projective plane.
//!
//! A fat point subscheme `Z = m_1 p_1 + ... + m_r p_r` supported at `r <= 8`
//! general points corresponds, on the surface `X` obtained by blowing up the
//! points, to divisor classes `F_t = t L - m_1 E_1 - ... - m_r E_r`, where
//! `L` is the pullback of a line and the `E_i` are the exceptional curves.
//! The graded pieces of the ideal `I(Z)` are the spaces of global sections
//! `Γ(O_X(F_t))`, so Hilbert functions, numbers of minimal generators, and
//! syzygies of `I(Z)` reduce to cohomology of divisor classes on `X` and to
//! the rank of the multiplication map `μ_F : Γ(F) ⊗ Γ(L) → Γ(F + L)`.
//!
//! The crate computes all of these exactly:
//!
//! * [`picard`] — the divisor class lattice of `X`, its intersection form,
//!   Weyl group reflections, and the (finitely many) exceptional curve
//!   classes;
//! * [`cohom`] — `h^0`, `h^1`, `h^2` of any divisor class, plus nef, ample,
//!   and effectivity tests and fixed-component removal;
//! * [`mu`] — kernel and cokernel dimensions of `μ_F` for `r <= 7`, the
//!   closed-form cokernel formula for nef classes at `r = 7`, and diagnostic
//!   kernel bounds;
//! * [`resolution`] — Hilbert function, initial degree, generator and syzygy
//!   degrees of `I(Z)`, assembled into the minimal free resolution
//!   `0 → F_1 → F_0 → I(Z) → 0`;
//! * [`oracle`] — an independent check: explicit vanishing conditions at
//!   random points over a prime field, with every dimension recovered from
//!   dense modular Gaussian elimination.
//!
//! All results assume the points are in general position.

pub mod cohom;
pub mod error;
pub mod mu;
pub mod oracle;
pub mod picard;
pub mod resolution;
#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use picard::DivisorClass;
