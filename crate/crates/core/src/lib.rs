//! Exact computations with symmetric powers of symmetric-group modules
//! over prime fields.
//!
//! The crate builds explicit matrix models of the modules `M^(n-1,1)`,
//! `S^(n-1,1)` and `D^(n-1,1)` of the symmetric group over GF(p), equips
//! their symmetric algebras with multiplication, truncated comultiplication
//! and divided-power differential operators, and from those constructs and
//! verifies explicit splitting maps between consecutive symmetric powers.
//! On top of the matrix layer sit formal representation-ring formulas for
//! the symmetric powers, Young-module expansions with p-Kostka data, and
//! vertex classification of the Young summands.
//!
//! Everything is exact: all verification reduces to matrix identities over
//! GF(p), and all outputs are deterministic.

pub mod acceptance;
pub mod combinatorics;
pub mod error;
pub mod gf;
pub mod modact;
pub mod repring;
pub mod spechtmod;
pub mod splitters;
pub mod symalg;
pub mod vertexcalc;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
