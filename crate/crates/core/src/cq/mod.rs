//! View synthesis for conjunctive queries and their unions: containment mappings,
//! substitution of views and a bounded search over candidate bodies.

mod candidates;
mod hom;
mod substitute;
mod synth;

pub use candidates::cq_candidates;
pub use hom::{cq_contains, find_hom, ucq_contains, ucq_uncontained, Hom};
pub use substitute::{cq_substitute, cq_views_from_defs, CqView, CqViews};
pub use synth::{
    cq_capture_check, cq_records, synthesize_cq, CqMappingCheck, CqSearchConfig, CqSynthesis, SynthesisBounds,
    ViewKind,
};
