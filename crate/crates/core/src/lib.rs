//! Finite loop algebra: validated multiplication tables, right-associated
//! powers and bracketing analysis, a battery of Jordan-loop power identities,
//! exhaustive enumeration up to isomorphism, and a structured certificate
//! that every Jordan loop of order 9 is a group.

pub mod canon;
pub mod certify;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod groups;
pub mod identities;
pub mod partial;
pub mod power;
pub mod search;
pub mod subloop;
pub mod table;

pub use canon::{are_isomorphic, canonical_form, canonical_labeling, CanonicalForm};
pub use enumerate::{enumerate_loops, find_power_witness, Enumeration, SearchConfig, SearchStats};
pub use certify::{certify_order9, complete_partial, Order9Certificate};
pub use error::{Error, Result};
pub use identities::{run_default_suite, run_full_suite, LemmaId, LemmaReport, Status};
pub use partial::PartialTable;
pub use power::{bracket_sets, rpow, ElementSet, PowerProfile};
pub use subloop::{
    all_subloops, diagonal_stats, has_nontrivial_involution, monogenic_subloop, square_root_map,
    Subloop,
};
pub use table::{ElementId, LoopTable, IDENTITY};
