//! First-order formulas over the language of groups with parameter
//! constants: syntax, concrete notation and model checking.

mod ast;
mod cayley;
mod eval;
mod parse;
mod print;

pub use ast::{Formula, Term};
pub use cayley::{cayley_formula, param_name, CayleyFormula};
pub use eval::{EvalError, Evaluator};
pub use parse::{parse_formula, Dialect, FormulaParser, ParseError};
pub use print::{print_formula, print_term};
