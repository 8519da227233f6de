//! Exact arithmetic: base-field scalars, sparse multivariate polynomials,
//! reduced rational functions, univariate polynomials over K, the coefficient
//! ring A, the expression parser, a linear solver over K, and seeded sampling.

pub mod coeff;
pub mod field;
pub mod linalg;
pub mod multipoly;
pub mod parser;
pub mod ratfunc;
pub mod sample;
pub mod unipoly;
pub mod vars;

pub use coeff::{CoeffElem, CoeffError, CoeffRing};
pub use field::{set_fp_modulus, Fp, Scalar};
pub use linalg::solve_linear;
pub use multipoly::{poly_gcd, Monomial, MultiPoly};
pub use parser::{parse_expr, Ast, ParseError};
pub use ratfunc::{ArithError, RatFunc};
pub use sample::SampleBounds;
pub use unipoly::UniPoly;
pub use vars::{VarId, VarRegistry};
