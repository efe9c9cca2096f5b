//! Exact and numerical checks for extremal Kähler metrics on blow-ups.
//!
//! The crate is organised by the object being computed:
//!
//! * [`geometry`]: moment polytopes, corner chops and the toric Futaki functional;
//! * [`actions`]: linear isometric actions on ℙ^m, the invariant algebra and its
//!   splitting, and the three admissibility conditions for blowing up points;
//! * [`classes`]: cohomology classes on blow-ups of ℙ² and their ε-families;
//! * [`radial`]: U(m)-invariant Kähler potentials, scalar curvature and the
//!   scalar-flat model metric on the blow-up of ℂ^m;
//! * [`biharmonic`]: per-mode biharmonic extensions and the matching operator;
//! * [`report`]: scenario analysis and the built-in verification suites.
//!
//! Most algorithms are generic over [`scalar::Field`] and run either exactly
//! over [`Rational`] or approximately over `f64`; the aliases below fix the
//! exact instantiation.

pub mod actions;
pub mod biharmonic;
pub mod classes;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod lp;
pub mod radial;
pub mod report;
pub mod scalar;

pub use scalar::{Field, Rational};

/// Exact polytope, the form used for all Futaki computations.
pub type DelzantPolytope = geometry::Polytope<Rational>;
pub type ExactPoint = geometry::LatticePoint<Rational>;
pub type GaussianRational = actions::Gaussian<Rational>;
pub type HermitianGenerator = actions::Hermitian<Rational>;
pub type ProjectivePoint = actions::ProjPoint<Rational>;
