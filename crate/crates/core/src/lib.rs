//! Exact commutative algebra for linkage of Cohen-Macaulay ideals.
//!
//! Polynomials over `QQ` (or `QQ(params)`), Gröbner bases, syzygies and
//! free resolutions, comparison morphisms between a Koszul complex and a
//! resolution, and the Euclid/resultant pipeline that produces the symbolic
//! data of elementary residue currents for codimension-two complete
//! intersections.

pub mod coeff;
pub mod complexes;
pub mod error;
pub mod groebner;
pub mod io;
pub mod linchange;
pub mod linkage;
pub mod modules;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod qpoly;
pub mod ring;
pub mod weier;

pub use coeff::Coeff;
pub use error::{Error, PolyError};
pub use groebner::{
    buchberger, eliminate, ideal_codim, ideal_colon, ideal_intersect, ideal_member, normal_form, DivisionResult,
    Ideal,
};
pub use complexes::{
    free_resolution, is_cohen_macaulay, koszul_complex, verify_exactness, ChainComplex, FreeResolution, KoszulComplex,
};
pub use linchange::{apply_linear_change, LinearChange};
pub use linkage::{
    comparison_morphism, det_transform_member, generic_ci, link_decomposition_check, membership_via_link,
    ComplexMorphism, LinkageReport,
};
pub use modules::{lift_through, syzygy_matrix, ModuleElement, PolyMatrix};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::{parse_poly, ParseError};
pub use poly::Poly;
pub use ring::{Ring, RingRef};
pub use weier::{
    current_recipe, extended_euclid, resultant_sylvester, weierstrass_ready, CurrentRecipe, WeierstrassForm,
};
