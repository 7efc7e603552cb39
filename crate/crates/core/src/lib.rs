//! Generalized Fermat curves and their field of moduli over `ℝ`.
//!
//! A generalized Fermat curve of type `(k, n)` is the fiber product
//! `x₁ᵏ + x₂ᵏ + x₃ᵏ = 0`, `λⱼ x₁ᵏ + x₂ᵏ + x_{j+3}ᵏ = 0` in `ℙⁿ`, a
//! `(ℤ/k)ⁿ`-cover of the sphere branched over `∞, 0, 1, λ₁, …, λ_{n−2}`.
//! The crate decides whether such a curve is isomorphic to its conjugate
//! and, if so, whether it is definable over `ℝ`.

pub mod config;
pub mod curve;
pub mod error;
pub mod io;
pub mod lift;
mod linalg;
pub mod literal;
pub mod moduli;
pub mod perm;
pub mod sphere;

pub use config::{ConeConfiguration, ConfigSymmetry, Orientation, OrbitTypeSolution};
pub use curve::{genus, CurvePoint, FermatCurve};
pub use error::{Error, Result};
pub use lift::{enumerate_lifts, is_curve_automorphism, solve_lift_constants, CurveAutomorphism, LiftFamily};
pub use moduli::{classify, ModuliClassification, Settings, Verdict};
pub use perm::Permutation;
pub use sphere::{Complex, ExtendedMobius, SpherePoint};
