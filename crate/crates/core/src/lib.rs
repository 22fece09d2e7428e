//! Exact-arithmetic Landau-Ginzburg Hodge numbers for rational elliptic
//! surfaces `f : Z -> P^1` whose fiber at infinity is of Kodaira type `I_d`,
//! `0 <= d <= 9`.
//!
//! The pipeline, bottom up:
//!
//! - [`matrix`], [`subspace`]: dense linear algebra over `Q`.
//! - [`nilpotent`], [`filtration`]: Jordan data, unipotent logarithms and the
//!   monodromy weight filtration.
//! - [`les`]: dimension chasing in long exact sequences.
//! - [`lattice`]: the intersection lattice of the wheel at infinity.
//! - [`surface`]: cohomology tables and the explicit monodromy on
//!   `H_2(Y, Y_b)`.
//! - [`hodge`]: the `h`, `f` and mirror tables and the checks relating them.
//! - [`exec`]: batch evaluation, parallel with the `parallel` feature.

pub mod error;
pub mod exec;
pub mod filtration;
pub mod hodge;
pub mod lattice;
pub mod les;
pub mod matrix;
pub mod nilpotent;
pub mod random;
pub mod rational;
pub mod subspace;
pub mod surface;

pub use error::{Error, Result};
pub use filtration::{verify_filtration_axioms, weight_filtration, FiltrationReport, WeightFiltration};
pub use hodge::{check_all, f_table, h_table, i_obstruction, x_hodge_table, ConjectureReport, HodgeTable};
pub use lattice::{restriction_surjective, section_augmented_det, wheel_gram, WheelLattice};
pub use les::{euler_check, solve, ChaseSolution, ChaseStatus, ExactSequenceSpec};
pub use matrix::RationalMatrix;
pub use nilpotent::{jordan_profile, unipotent_log, NilpotentProfile};
pub use rational::Rational;
pub use subspace::Subspace;
pub use surface::{build_surface_model, fano_type, MonodromyAssembly, SurfaceModel};
