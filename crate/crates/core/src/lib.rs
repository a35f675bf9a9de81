//! Classical and three-variable Kauffman brackets, the quotient ring they
//! live in, and a search harness over knot tables.

pub mod bracket3;
pub mod classical;
pub mod diagram;
pub mod error;
pub mod poly;
pub mod quotient;
pub mod search;
pub mod statesum;

pub use bracket3::{
    ambient3, bracket3, bracket3_raw, curl_factors, tl_evaluate, CurlFactors, Engine, TLElement,
};
pub use classical::{f_invariant, kauffman_bracket, Laurent};
pub use diagram::{closure, parse_braid, parse_pd, BraidWord, Diagram, Presentation, Sign};
pub use error::{Error, Result};
pub use poly::{Monomial, MonomialOrder, Polynomial, Var};
pub use quotient::{ideal, normal_form, specialize_classical, NormalForm};
