//! Exact constructions around determinantal representations of plane
//! curves: degeneracy curves of bundle sections on ℙ², tangent maps of the
//! degeneracy-curve map, multiplication maps of the associated ideals, the
//! ℙ¹×ℙ¹ determinant map, and dimension-count audits.
//!
//! Everything is computed over ℚ with exact arithmetic; every verdict is a
//! rank of an explicit matrix.

pub mod audit;
pub mod biproj;
pub mod detrep;
pub mod error;
pub mod ideal;
pub mod linalg;
pub mod poly;
pub mod random;
pub mod tangent;

pub use audit::{
    det_degree, h0_bundle, h0_p2, inequality_audit, select_e_d, AuditRow, BundleSpec, Family,
};
pub use biproj::{dpsi_report, monomial_cover_check, psi, QuadSections};
pub use detrep::{det_poly, is_gpli, wedge_curve, BundleSection, PolyMatrix};
pub use error::{Error, Result};
pub use ideal::{containment_degree, diagram_crosscheck, mult_map_report, u_generators, USpace};
pub use linalg::{ExactMatrix, LinearMapReport, Membership};
pub use poly::{bimono_basis, mono_basis, BigradedPoly, HomPoly, Mono22, Mono3, Rat};
pub use tangent::{section_space, smoothness_check, tangent_map, SectionSpace, TangentReport};
