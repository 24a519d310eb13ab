// SPDX-License-Identifier: Apache-2.0

//! Numerical thresholds shared across modules.
//!
//! | Group | Value | Used for |
//! |-------|-------|----------|
//! | structural | 1e-12 | Hermiticity, orthonormality, exact parameter ties |
//! | spectral | 1e-10 | PSD drift, unit trace, support of `ln ρ` |
//! | identities | 1e-8 | relations that hold exactly in exact arithmetic |
//! | proved inequalities | 1e-10 | one-sided slack on a proved bound |
//! | optimizer equalities | 1e-4 | values that rely on a non-convex search |

/// Elementwise slack when testing `A = A*`.
pub const HERMITIAN: f64 = 1e-12;

/// Eigenvalues in `[-PSD, 0)` are clipped to zero; anything lower is rejected.
pub const PSD: f64 = 1e-10;

/// Allowed deviation of a state's trace from one.
pub const UNIT_TRACE: f64 = 1e-10;

/// Eigenvalues of a reference state at or below this are treated as outside
/// its support when evaluating relative entropy.
pub const SUPPORT: f64 = 1e-10;

/// Orthonormality and completeness of bases and POVMs.
pub const STRUCTURE: f64 = 1e-10;

/// Ties between `|λᵢ|` in the qubit translation condition and canonical form.
pub const AXIS_TIE: f64 = 1e-12;

/// Identities that are exact in exact arithmetic.
pub const IDENTITY: f64 = 1e-8;

/// One-sided slack for inequalities with a complete proof.
pub const PROVED_INEQUALITY: f64 = 1e-10;

/// Absolute slack for equalities that depend on a global optimizer.
pub const OPTIMIZER_EQUALITY: f64 = 1e-4;

/// Lower-bound direction of multiplicativity, which is exact once the
/// product of the factors' maximizers is fed into the product channel.
pub const PRODUCT_LOWER_BOUND: f64 = 1e-8;

/// Capacity additivity gap in nats.
pub const ADDITIVITY: f64 = 2e-3;
