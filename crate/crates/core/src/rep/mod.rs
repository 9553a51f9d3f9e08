//! Representations, homomorphisms, bricks and semibricks.

mod bricks;
mod enumerate;
mod hom;
mod parse;
mod representation;

pub use bricks::{
    end_dim, extract_brick, extract_semibrick, hom_table, is_brick, is_hom_orthogonal, is_semibrick,
    BrickExtraction, SemibrickCertificate, SemibrickExtraction, SemibrickFailure,
};
pub use enumerate::{
    automorphism_count, filter_indices, find_first, is_indecomposable, is_isomorphic, iso_test,
    space_size, subspace_count, subspaces, vector_at,
};
pub use hom::{hom_basis, hom_dim, map_image, HomBasis, MapImage, ModuleMap};
pub use parse::{format_rep, parse_matrix, parse_matrix_literal, parse_rep, RepText};
pub use representation::{validate_rep, RelationViolation, Representation};

