pub mod commands;
pub mod eval;
pub mod parse;

pub use commands::{run, run_with, MAX_CLI_BOUND};
pub use eval::{eval_expr, EvalContext, EvalError};
pub use parse::{parse_expr, Expr, ParseError};
