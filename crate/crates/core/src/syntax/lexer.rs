//! ATeX tokenizer.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    /// `\name`: functions, constants and operator words.
    Command,
    Identifier,
    /// Integer or decimal literal.
    Number,
    Operator,
    Punct,
    /// `"..."`, quotes included in the lexeme.
    QuotedText,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub line: u32,
    pub column: u32,
}

impl Token {
    pub fn is(&self, kind: TokenKind, lexeme: &str) -> bool {
        self.kind == kind && self.lexeme == lexeme
    }

    pub fn is_punct(&self, p: &str) -> bool {
        self.is(TokenKind::Punct, p)
    }

    pub fn is_op(&self, op: &str) -> bool {
        self.is(TokenKind::Operator, op)
    }

    /// Command name without its backslash.
    pub fn command_name(&self) -> Option<&str> {
        match self.kind {
            TokenKind::Command => Some(&self.lexeme[1..]),
            _ => None,
        }
    }

    /// Body of a quoted-text token.
    pub fn text(&self) -> &str {
        self.lexeme.trim_start_matches('"').trim_end_matches('"')
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.lexeme)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexError {
    #[error("unterminated quoted text starting at {line}:{column}")]
    UnterminatedQuote { line: u32, column: u32 },
    #[error("illegal character '{ch}' at {line}:{column}")]
    IllegalCharacter { ch: char, line: u32, column: u32 },
}

impl LexError {
    pub fn position(&self) -> (u32, u32) {
        match self {
            LexError::UnterminatedQuote { line, column }
            | LexError::IllegalCharacter { line, column, .. } => (*line, *column),
        }
    }
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: u32,
    column: u32,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn take_while(&mut self, buf: &mut String, pred: impl Fn(char) -> bool) {
        while let Some(c) = self.peek() {
            if !pred(c) {
                break;
            }
            buf.push(c);
            self.bump();
        }
    }
}

pub fn tokenize(source: &str) -> Result<Vec<Token>, LexError> {
    let mut cur = Cursor {
        chars: source.chars().peekable(),
        line: 1,
        column: 1,
    };
    let mut tokens = Vec::new();
    while let Some(c) = cur.peek() {
        let (line, column) = (cur.line, cur.column);
        let mut lexeme = String::new();
        let kind = match c {
            c if c.is_whitespace() => {
                cur.bump();
                continue;
            }
            '\\' => {
                cur.bump();
                lexeme.push('\\');
                cur.take_while(&mut lexeme, |c| c.is_ascii_alphabetic());
                if lexeme.len() == 1 {
                    return Err(LexError::IllegalCharacter {
                        ch: '\\',
                        line,
                        column,
                    });
                }
                TokenKind::Command
            }
            c if c.is_ascii_alphabetic() => {
                cur.take_while(&mut lexeme, |c| c.is_ascii_alphanumeric() || c == '_');
                TokenKind::Identifier
            }
            c if c.is_ascii_digit() => {
                cur.take_while(&mut lexeme, |c| c.is_ascii_digit());
                if cur.peek() == Some('.') {
                    let mut ahead = cur.chars.clone();
                    ahead.next();
                    if ahead.next().is_some_and(|d| d.is_ascii_digit()) {
                        lexeme.push('.');
                        cur.bump();
                        cur.take_while(&mut lexeme, |c| c.is_ascii_digit());
                    }
                }
                TokenKind::Number
            }
            '"' => {
                cur.bump();
                lexeme.push('"');
                cur.take_while(&mut lexeme, |c| c != '"');
                if cur.bump().is_none() {
                    return Err(LexError::UnterminatedQuote { line, column });
                }
                lexeme.push('"');
                TokenKind::QuotedText
            }
            '<' | '>' => {
                cur.bump();
                lexeme.push(c);
                if cur.peek() == Some('=') {
                    cur.bump();
                    lexeme.push('=');
                }
                TokenKind::Operator
            }
            '+' | '-' | '*' | '/' | '^' | '=' => {
                cur.bump();
                lexeme.push(c);
                TokenKind::Operator
            }
            '(' | ')' | '[' | ']' | '{' | '}' | ',' | ';' => {
                cur.bump();
                lexeme.push(c);
                TokenKind::Punct
            }
            other => {
                return Err(LexError::IllegalCharacter {
                    ch: other,
                    line,
                    column,
                })
            }
        };
        tokens.push(Token {
            kind,
            lexeme,
            line,
            column,
        });
    }
    Ok(tokens)
}
