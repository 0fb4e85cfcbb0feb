//! Exact node reliability and node cop-win reliability of small graphs.
//!
//! The crate counts connected and cop-win induced subgraphs, builds the
//! corresponding generating and reliability polynomials, decides exactly
//! whether one reliability function dominates another on `[0, 1]`, and
//! searches exhaustively generated graph classes for uniformly most reliable
//! members.

pub mod canon;
pub mod copwin;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod poly;
pub mod relpoly;
pub mod roots;
pub mod sturm;
pub mod umr;
pub mod verify;

pub use canon::{canonical_form, canonical_key, CanonicalKey};
pub use copwin::{has_long_induced_cycle, is_chordal, is_copwin, is_copwin_game, DismantleTrace};
pub use enumerate::{enumerate, enumerate_count, GenSpec};
pub use error::{Error, Result};
pub use families::{classify_bicyclic, BicyclicType, FamilySpec};
pub use graph::{Graph, VertexSet, MAX_VERTICES};
pub use graph6::{emit_graph6, parse_graph6, parse_graph6_lines};
pub use poly::{CoeffPoly, RatPoly};
pub use relpoly::{
    coeff_dominates, connected_set_counts, copwin_set_counts, count_vector, cs_poly, cs_poly_pivot,
    cw_poly, mobius_bridge, nrel_direct, nrel_pivot, reliability_poly, PivotCache,
    ReliabilityMeasure,
};
pub use roots::{complex_roots, disk_scan, DiskSummary, RootReport};
pub use umr::{dominance, find_umr, verify_conjecture_h, DominanceReport, UmrReport, Verdict};
