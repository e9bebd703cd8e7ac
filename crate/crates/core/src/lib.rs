//! Quasi-shuffle Hopf algebras on the letters `z[i,j]` (second subscript
//! taken mod `r`) and exact evaluation of multiple harmonic sums whose
//! arguments are `r`-th roots of unity.
//!
//! ```
//! use euler_core::{parse_element, EulerAlgebra, HarmonicEvaluator, Word};
//!
//! let alg = EulerAlgebra::new(3).unwrap();
//! let x = parse_element("z[1,1]", 3).unwrap();
//! let y = parse_element("z[1,2] z[2,1]", 3).unwrap();
//! assert_eq!(alg.star(&x, &y).unwrap().len(), 5);
//!
//! let ev = HarmonicEvaluator::new(1).unwrap();
//! let h = ev.eval_a(&Word::from_pairs(&[(1, 0)], 1).unwrap(), 3).unwrap();
//! assert_eq!(h.to_string(), "11/6");
//! ```

pub mod algebra;
pub mod cyclotomic;
pub mod error;
pub mod harmonic;
pub mod symmetric;
pub mod text;
pub mod words;

pub use algebra::{AlgebraElement, EulerAlgebra, TensorElement};
pub use cyclotomic::{Approximation, CyclotomicField, CyclotomicNumber, Rational};
pub use error::{Error, Result};
pub use harmonic::{HarmonicEvaluator, HarmonicValue, SumKind};
pub use symmetric::{IntegerPartition, SetPartition};
pub use text::{parse_element, parse_tensor};
pub use words::{Composition, Letter, LetterOrder, Lexicographic, Word};
