//! Exact symbolic integrability checker for translationally invariant
//! spin chains with two- and three-site interactions.

pub mod catalog;
pub mod charge_solver;
pub mod cli;
pub mod criteria;
pub mod errors;
pub mod frustration;
pub mod lattice;
pub mod linalg;
pub mod operator;
pub mod pauli;
pub mod poly;

pub use errors::{Result, SpinError};

// run the guide's code blocks as doc-tests so the book stays in sync
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }
    chapter!(introduction, "../../../book/src/introduction.md");
    chapter!(pauli_strings, "../../../book/src/pauli-strings.md");
    chapter!(operators, "../../../book/src/operators.md");
    chapter!(ring_calculus, "../../../book/src/ring-calculus.md");
    chapter!(criteria, "../../../book/src/criteria.md");
    chapter!(charges, "../../../book/src/charges.md");
    chapter!(frustration_graphs, "../../../book/src/frustration-graphs.md");
    chapter!(catalog, "../../../book/src/catalog.md");
    chapter!(cli, "../../../book/src/cli.md");
}
