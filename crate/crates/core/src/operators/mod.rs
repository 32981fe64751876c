//! Operators on representations: γ_d splits, the first-part tree, the O
//! swap, and searches built from them.

mod closure;
mod gamma;
mod oswap;
mod tree;

pub use closure::{
    applications, closure, coprime_path_search, find_unreachable, two_step_ceiling, ClosureLimits, ClosureResult,
    CoprimePath, GapReport, Operator, OperatorApplication, OperatorSet,
};
pub use gamma::{gamma_children, gamma_parts, gamma_split, GammaChoice};
pub use oswap::{o_swap, o_swap_at, OParams};
pub use tree::{collisions, first_part_tree, lower_bound_s, FirstPartOutcome, FirstPartTree, TreeNode};
