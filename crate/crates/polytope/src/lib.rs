//! Exact laboratory for family-variable polytopes on a handful of nodes:
//! facet lists, validity and rank certification, lifting, faces, a small
//! double-description hull and an extended formulation with projection.

pub mod catalog;
pub mod dd;
pub mod error;
pub mod extended;
pub mod faces;
pub mod ineq;
pub mod rank;
pub mod space;
pub mod transform;
pub mod verify;

pub use catalog::{catalog_facets, permutation_orbit, CatalogEntry, FacetCatalog, FacetClass};
pub use error::{PolyError, Result};
pub use extended::{build_extended_model, project_with_multipliers, ExtendedModel};
pub use ineq::LinearInequality;
pub use space::FamilyPolytope;
pub use verify::{check_coeff_monotonicity, check_monotone_form, facet_rank, verify_validity};
