//! Exact matchings in balanced red/blue colorings of `K_{2n,2n}`.
//!
//! Every vertex of the complete bipartite graph `K_{2n,2n}` meets `n` red and
//! `n` blue edges. For every even `k` there is a perfect matching with exactly
//! `k` red edges; for odd `k` there is one unless the blue graph is two
//! disjoint copies of `K_{n,n}`. [`solver::solve`] constructs the matching or
//! returns a [`DisconnectionCertificate`] exhibiting that split.
//!
//! ```
//! use exact_matching::generator::make_circulant_instance;
//! use exact_matching::solver::{solve, SolveResult};
//!
//! let c = make_circulant_instance(3);
//! let SolveResult::Found { count, .. } = solve(&c, 5).unwrap() else { unreachable!() };
//! assert_eq!(count.red, 5);
//! ```

pub mod blue_matcher;
pub mod cli;
pub mod coloring;
pub mod generator;
pub mod io;
pub mod oracle;
pub mod permanent;
pub mod solver;

pub use coloring::{
    count_colors, validate_coloring, verify_certificate, BalancedColoring, Color, ColorCount,
    DisconnectionCertificate, Matching,
};
pub use solver::{solve, SolveResult};
