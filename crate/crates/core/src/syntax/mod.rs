//! ATeX front end: tokenizer, parser and printers.

pub mod ast;
pub mod commands;
pub mod lexer;
pub mod parser;
pub mod printer;

use thiserror::Error;

pub use ast::{AstNode, BinOp, ConfigKey, Program, RelOp, Statement};
pub use commands::{classify, is_print_like, CommandClass};
pub use lexer::{tokenize, LexError, Token, TokenKind};
pub use parser::{parse, ParseError};
pub use printer::{
    latex_array, latex_is_balanced, latex_text, print_latex, print_latex_program, print_mathpar,
    print_program,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl SyntaxError {
    pub fn position(&self) -> (u32, u32) {
        match self {
            SyntaxError::Lex(e) => e.position(),
            SyntaxError::Parse(e) => e.position(),
        }
    }
}

/// Tokenizes and parses in one step.
pub fn parse_source(source: &str) -> Result<Program, SyntaxError> {
    Ok(parse(&tokenize(source)?)?)
}
