//! Measuring how far a preference system is from admitting a master list,
//! and using small distances to enumerate stable matchings and to find
//! popular matchings with bounded instability.
//!
//! A preference system is an undirected graph in which every vertex weakly
//! orders its neighbours. It admits a master list when one weak order of all
//! vertices restricts to every vertex's preferences.

mod cycles;
pub mod distances;
pub mod error;
pub mod fas;
pub mod format;
pub mod generators;
pub mod matching;
pub mod oracle;
pub mod popular;
pub mod prefdigraph;
pub mod system;

pub use distances::{
    build_auxiliary_digraph, delta_edge_2approx, delta_edge_exact, delta_swap, delta_vert_exact,
    AuxiliaryDigraph, EdgeWitness, SwapWitness, VertexWitness,
};
pub use error::{Error, Result};
pub use fas::{is_acyclic, min_fas, min_strict_hitting, ArcSet};
pub use format::{parse_instance, serialize_instance};
pub use matching::{
    blocking_edges, brute_force_stable, enum_bp_edge_modulator, enum_bp_vertex_modulator, enum_stable,
    optimize_over_stable, unique_stable_ml, BlockingSet, Direction, Matching, Modulator, Objective,
};
pub use popular::{compare, is_popular, solve_mupmic, solve_mupmic_auto, MupmicInstance, MupmicSolution, VoteTally};
pub use prefdigraph::{
    admits_master_list, build_digraph, find_strict_cycle, is_consistent, ArcKind, LabeledArc, MasterList,
    PreferenceDigraph,
};
pub use system::{
    instance_swap_distance, swap_distance_orders, DistanceValue, Edge, PreferenceSystem, Swap, VertexId, WeakOrder,
};
