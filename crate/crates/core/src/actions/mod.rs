//! Linear isometric actions on `(ℙ^m, ω_FS)`.
//!
//! Hamiltonian Killing fields are modelled by Hermitian matrices: `A` generates
//! `z ↦ e^{iAt} z` with mean-zero potential `z*Az/|z|² − tr A/(m+1)`.

mod algebra;
mod conditions;
mod gaussian;
mod hermitian;
mod lift;

pub use algebra::{
    invariant_algebra, moment_against, moment_at, split_algebra, torus_dim_at_fixed_point,
    FixedPointTorus, GroupSpec, LieSplit, MomentVector,
};
pub use conditions::{
    check_condition_i, check_condition_ii, check_condition_iii, csc_predictor, moment_matrix,
    moment_sum, orbit_classes, ConditionI, ConditionII, ConditionIII, Feasibility,
};
pub use gaussian::Gaussian;
pub use hermitian::{fs_potential, hermitian_dot, l2_pairing, Hermitian, ProjPoint};
pub use lift::{lift_zero_on_divisor, LiftZeros, QuadraticRoot};
