//! Fiberwise jets, graded cohomology of linear Poisson structures and the
//! degree-by-degree normal form of the vertical part.
//!
//! The coboundary is `δ = [𝒱⁽¹⁾, ·]` with the crate's Schouten bracket; on
//! functions `δ(f) = −𝒱⁽¹⁾♯(df)`.

mod cohomology;
mod jets;
mod lie;
mod normal_form;

pub use cohomology::{
    coboundary_matrix, h1_graded, solve_homological, CohomologyReport, HomologicalSolution,
};
pub use jets::{is_fiberwise_linear, jet_split, liouville_field, truncate, JetDecomposition};
pub use lie::LieAlgebraSpec;
pub use normal_form::{
    linearize_connection_part, linearize_vertical, pushforward, solve_connection_change,
    ConnectionChange, LinearizationResult, Obstruction,
};
