//! Exact arithmetic for closures under the fixed-parameter extrapolation
//! `a * b = (1 - lambda) a + lambda b`, strong PV classification, cut-and-project
//! model sets, density certificates, the polynomial groupoid and planar
//! polygon closures.

pub mod interval;
pub mod poly;
pub mod contfrac;
pub mod field;
pub mod roots;
pub mod spv;
pub mod derivation;
pub mod starset;
pub mod modelset;
pub mod density;
pub mod qpoly;
pub mod shapes;
pub mod data;
pub mod verify;

pub type Rat = num_rational::BigRational;

pub use interval::{ComplexBox, RationalInterval};
pub use poly::IntPolynomial;
pub use field::{make_context, make_context_at, ring_arith, AlgebraError, Context, Enclosure, FieldElement, NumberField, RingOp};
pub use derivation::{replay_derivation, Derivation, ReplayError};
pub use starset::{closure_rank, convexity_witness, derivation_search, saturate_region, PointSet, SearchBudget};
pub use modelset::{enumerate_radius, member, ModelSetSpec, Window};
pub use spv::{classify_spv, polygon_lambda, quadratic_from_mn};
pub use qpoly::{membership, to_star_basis, from_star_basis, MembershipVerdict, StarBasis};
pub use shapes::{cyclotomic_context, lambda_n_element, planar_closure, polygon_vertices, PlanarSet};
