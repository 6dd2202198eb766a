//! Constructive allocation procedures.

pub mod envy;
pub mod identical;
pub mod matching;
pub mod rounds;
pub mod three_agents;

pub use envy::{build_envy_graph, eliminate_envy_cycles, Elimination, EnvyGraph, Rotation};
pub use identical::allocate_identical_leximin;
pub use matching::{matching_weight, max_weight_matching};
pub use rounds::{allocate_matching, AllocationRun, GuaranteeClass, MatchingRound};
pub use three_agents::{allocate_three_agents, Case, DivideAndChoose};
