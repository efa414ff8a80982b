//! Operator expressions: parsing, symbolic normal ordering and evaluation.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | atom
//! atom    := number ('/' number)? | 'M' | 'i' | 'sqrt2'
//!          | 'X(' j ')' | 'D(' j ')' | 'Dup(' j ')' | 'E(' j ')' | 'Pi(' j ')'
//!          | 'L(' i ',' j ')' | 'B(' i ',' j ')' | 'K(' i ',' j ')'
//!          | 'dirac' | 'vector' | 'laplace' | 'r2' | 'euler'
//!          | '(' expr ')' | '[' expr ',' expr ']'
//! ```

mod ast;
mod corpus;
mod eval;
mod normal;

pub use ast::{parse, parse_identity, Expr, Named};
pub use corpus::{golden_corpus, GoldenIdentity};
pub use eval::{evaluate, verify_identity, IdentityCheck};
pub use normal::{normal_order, normal_order_with, Letter, MPoly, NormalForm};
