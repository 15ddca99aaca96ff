//! Session engine: a persistent environment, section execution and output
//! selection.

mod env;
mod eval;
mod output;
mod value;

pub use env::{Binding, Environment};
pub use eval::{apply_space_decl, clear_environment, execute_section, print_command, EvalError};
pub use output::{Diagnostic, ExecutionResult, Output, Severity};
pub use value::{number_style, Value};
