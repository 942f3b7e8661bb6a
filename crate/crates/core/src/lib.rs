//! Exact-arithmetic calculus of derivation-based differential forms over
//! finite-dimensional unital associative algebras given by rational structure
//! constants.
//!
//! The building blocks: dense rational linear algebra with canonical echelon
//! subspaces (`matrix`, `subspace`), algebras and their derivation Lie algebras
//! (`algebra`, `catalog`), the Chevalley complex of Der(A) with the full
//! insertion / Lie-derivative / bracket calculus (`chevalley`), universal
//! differential forms with their own graded-derivation calculus (`forms`),
//! bimodules and the diagonal functor (`bimodule`), the factorization of
//! universal forms onto derivation-based forms (`derforms`), and the
//! classification of graded derivations of the Chevalley algebra (`classify`).

pub mod algebra;
pub mod bimodule;
pub mod catalog;
pub mod chevalley;
pub mod classify;
pub mod derforms;
pub mod forms;
pub mod matrix;
pub mod rat;
pub mod report;
pub mod subspace;

pub use matrix::Matrix;
pub use rat::Rat;
pub use subspace::Subspace;
