//! Graph models of the untyped λ-calculus, computed.
//!
//! * [`term`]: λ-terms, parsing, β-reduction, α-equivalence and a Gödel
//!   numeration of α-classes.
//! * [`pair`]: finite partial pairs `(A, c_A)`, the subpair order, unions,
//!   automorphisms and closure under a coding.
//! * [`semantics`]: exact interpretation of terms inside a finite pair.
//! * [`completion`]: the free completion `E_A`, its rank stratification and
//!   the canonical morphism into any extending graph model.
//! * [`graph`]: rank-bounded approximation of interpretations in `E_A`,
//!   membership search, witness subpairs and (in)equation verdicts.
//! * [`minimal`]: the minimum graph model built from all finite pairs, and
//!   counterexample search over its components.
//! * [`cli`]: the `gml` command line.
//!
//! ```
//! use gml::completion::Completion;
//! use gml::graph::check_inequation;
//! use gml::pair::PartialPair;
//! use gml::term::parse;
//!
//! let p = PartialPair::build([0], [(vec![0], 0, 0)]).unwrap();
//! let c = Completion::new(p);
//! let v = check_inequation(&parse("T").unwrap(), &parse("F").unwrap(), &c, 2, 4).unwrap();
//! assert!(v.fails());
//! assert_eq!(v.witness().unwrap().to_string(), "({0},({},0))");
//! ```

pub mod cli;
pub mod completion;
pub mod error;
pub mod graph;
pub mod minimal;
pub mod natural;
pub mod pair;
pub mod semantics;
pub mod term;

pub use error::{Error, Result};
