//! Brute-force semantics used to validate the synthesis engines: query evaluation over
//! graph and relational databases, exhaustive view search, fold membership and sampled
//! coherence checks. Nothing here uses the containment procedures of the engines.

mod brute;
mod coherence;
mod graph;
pub mod random;
mod relational;

pub use brute::{
    brute_fold_member, brute_view_existence_rpq, fold_length_bound, relation_depth, word_views_capture, BruteOutcome,
    WordViews,
};
pub use coherence::{
    coherence_soundness_sample, cq_coherence_on, cq_coherence_soundness_sample, path_coherence_on, CoherenceFailure,
    CoherenceOutcome, PathViews,
};
pub use graph::{eval_2rpq, eval_by_paths, eval_rpq, GraphDatabase};
pub use relational::{
    canonical_db, contained_by_canonical, eval_cq, eval_ucq, ucq_contained_by_canonical, RelInstance, Tuple,
};
