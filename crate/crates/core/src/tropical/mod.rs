//! Matrix algebra over tropical semirings: closures, residuation, Bellman
//! equations and shortest paths.

mod matrix;
mod paths;

pub use matrix::{TropicalLinearError, TropicalMatrix};
pub use paths::{
    bellman, bellman_homogeneous, find_shortest_path, kleene_star, search_least_distances,
    solve_lae, solve_lai, PathResult,
};
