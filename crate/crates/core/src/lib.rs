//! Outer automorphism groups of mapping tori `H ⋊_φ Z` over finite base
//! groups, with an independent brute-force oracle, plus a bounded relator
//! enumerator for automorphism groups of finitely presented groups.

pub mod abstract_group;
pub mod aut;
pub mod error;
pub mod par;
pub mod perm;
pub mod relators;
pub mod theorem;
pub mod torus;

pub use abstract_group::{iso_test, AbstractGroup, GroupSummary, Subgroup};
pub use aut::{compute_aut, inner, project_out, Automorphism, OutGroup, OuterClass};
pub use error::{Error, Result};
pub use perm::{parse_group, ElementId, FiniteGroup, Permutation};
pub use relators::{
    enumerate_aut_relators, parse_aut_generators, parse_presentation, word_problem_bfs, AutGeneratorSet, Budgets,
    FreeWord, PermutationModel, Presentation, WordProblem,
};
pub use torus::{DirectOut, Eps, MappingTorus, TorusAut, TorusElement, TorusForm};
pub use theorem::{analyze, check_hypotheses, cross_validate, AnalyzeOptions, Caps, Report, TheoremReport};
