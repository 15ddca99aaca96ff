//! Recursive-descent parser for ATeX.
//!
//! Precedence, loosest first: assignment, relations, `+`/`-`, unary minus,
//! `*`/`/`/juxtaposition, `^` (right-associative).

use thiserror::Error;

use super::ast::{AstNode, BinOp, ConfigKey, Program, RelOp, Statement};
use super::commands::{classify, CommandClass};
use super::lexer::{Token, TokenKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: unexpected token '{lexeme}'{hint}")]
    UnexpectedToken {
        lexeme: String,
        hint: String,
        line: u32,
        column: u32,
    },
    #[error("{line}:{column}: unexpected end of input after '{lexeme}'")]
    UnexpectedEnd {
        lexeme: String,
        line: u32,
        column: u32,
    },
    #[error("{line}:{column}: unknown command '{lexeme}'")]
    UnknownCommand {
        lexeme: String,
        line: u32,
        column: u32,
    },
    #[error("{line}:{column}: unbalanced '{lexeme}'")]
    UnbalancedParens {
        lexeme: String,
        line: u32,
        column: u32,
    },
}

impl ParseError {
    pub fn position(&self) -> (u32, u32) {
        match self {
            ParseError::UnexpectedToken { line, column, .. }
            | ParseError::UnexpectedEnd { line, column, .. }
            | ParseError::UnknownCommand { line, column, .. }
            | ParseError::UnbalancedParens { line, column, .. } => (*line, *column),
        }
    }

    pub fn lexeme(&self) -> &str {
        match self {
            ParseError::UnexpectedToken { lexeme, .. }
            | ParseError::UnexpectedEnd { lexeme, .. }
            | ParseError::UnknownCommand { lexeme, .. }
            | ParseError::UnbalancedParens { lexeme, .. } => lexeme,
        }
    }
}

type PResult<T> = Result<T, ParseError>;

struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
}

fn closing(open: &str) -> &'static str {
    match open {
        "(" => ")",
        "[" => "]",
        _ => "}",
    }
}

impl<'t> Parser<'t> {
    fn peek(&self) -> Option<&'t Token> {
        self.tokens.get(self.pos)
    }

    fn peek_at(&self, offset: usize) -> Option<&'t Token> {
        self.tokens.get(self.pos + offset)
    }

    fn bump(&mut self) -> Option<&'t Token> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(tok: &Token, hint: &str) -> ParseError {
        ParseError::UnexpectedToken {
            lexeme: tok.lexeme.clone(),
            hint: if hint.is_empty() {
                String::new()
            } else {
                format!(": {hint}")
            },
            line: tok.line,
            column: tok.column,
        }
    }

    fn end_error(&self) -> ParseError {
        match self.tokens.last() {
            Some(t) => ParseError::UnexpectedEnd {
                lexeme: t.lexeme.clone(),
                line: t.line,
                column: t.column,
            },
            None => ParseError::UnexpectedEnd {
                lexeme: String::new(),
                line: 1,
                column: 1,
            },
        }
    }

    fn next_or_end(&mut self) -> PResult<&'t Token> {
        self.bump().ok_or_else(|| self.end_error())
    }

    fn expect_ident(&mut self, what: &str) -> PResult<&'t Token> {
        let t = self.next_or_end()?;
        if t.kind == TokenKind::Identifier {
            Ok(t)
        } else {
            Err(Self::unexpected(t, &format!("expected {what}")))
        }
    }

    fn expect_punct(&mut self, p: &str) -> PResult<()> {
        let t = self.next_or_end()?;
        if t.is_punct(p) {
            Ok(())
        } else {
            Err(Self::unexpected(t, &format!("expected '{p}'")))
        }
    }

    /// Consumes the closer matching `open`; a missing closer is reported at
    /// the opener.
    fn expect_close(&mut self, open: &Token) -> PResult<()> {
        let want = closing(&open.lexeme);
        match self.peek() {
            Some(t) if t.is_punct(want) => {
                self.pos += 1;
                Ok(())
            }
            Some(t) if !t.is_punct(";") && t.kind != TokenKind::QuotedText => {
                Err(Self::unexpected(t, &format!("expected '{want}'")))
            }
            _ => Err(ParseError::UnbalancedParens {
                lexeme: open.lexeme.clone(),
                line: open.line,
                column: open.column,
            }),
        }
    }

    fn program(&mut self) -> PResult<Program> {
        let mut statements = Vec::new();
        while let Some(tok) = self.peek() {
            if tok.is_punct(";") {
                self.pos += 1;
                continue;
            }
            if tok.kind == TokenKind::QuotedText {
                self.pos += 1;
                statements.push(Statement {
                    node: AstNode::Text(tok.text().to_string()),
                    line: tok.line,
                    column: tok.column,
                });
                continue;
            }
            let node = self.statement()?;
            statements.push(Statement {
                node,
                line: tok.line,
                column: tok.column,
            });
            match self.peek() {
                None => {}
                Some(t) if t.is_punct(";") || t.kind == TokenKind::QuotedText => {}
                Some(t) if t.is_punct(")") || t.is_punct("]") || t.is_punct("}") => {
                    return Err(ParseError::UnbalancedParens {
                        lexeme: t.lexeme.clone(),
                        line: t.line,
                        column: t.column,
                    })
                }
                Some(t) => return Err(Self::unexpected(t, "expected ';'")),
            }
        }
        Ok(Program { statements })
    }

    fn statement(&mut self) -> PResult<AstNode> {
        let first = self.peek().expect("caller checked");
        let assigns =
            first.kind == TokenKind::Identifier && self.peek_at(1).is_some_and(|t| t.is_op("="));
        if !assigns {
            return self.expression();
        }
        self.pos += 2;
        match first.lexeme.as_str() {
            "SPACE" => {
                let algebra = self.expect_ident("an algebra name")?.lexeme.clone();
                self.expect_punct("[")?;
                let mut variables = Vec::new();
                loop {
                    variables.push(self.expect_ident("a variable name")?.lexeme.clone());
                    let t = self.next_or_end()?;
                    if t.is_punct("]") {
                        break;
                    }
                    if !t.is_punct(",") {
                        return Err(Self::unexpected(t, "expected ',' or ']'"));
                    }
                }
                Ok(AstNode::SpaceDecl { algebra, variables })
            }
            "FLOATPOS" => {
                let t = self.next_or_end()?;
                let value = match t.kind {
                    TokenKind::Number => t.lexeme.parse::<u32>().ok(),
                    _ => None,
                };
                let value = value
                    .ok_or_else(|| Self::unexpected(t, "FLOATPOS takes a nonnegative integer"))?;
                Ok(AstNode::ConfigDecl {
                    key: ConfigKey::FloatPos,
                    value,
                })
            }
            target => Ok(AstNode::Assign {
                target: target.to_string(),
                value: Box::new(self.expression()?),
            }),
        }
    }

    fn relation_op(tok: &Token) -> Option<RelOp> {
        match (tok.kind, tok.lexeme.as_str()) {
            (TokenKind::Operator, "=") => Some(RelOp::Eq),
            (TokenKind::Operator, "<") => Some(RelOp::Lt),
            (TokenKind::Operator, ">") => Some(RelOp::Gt),
            (TokenKind::Operator, "<=")
            | (TokenKind::Command, "\\le")
            | (TokenKind::Command, "\\leq") => Some(RelOp::Le),
            (TokenKind::Operator, ">=")
            | (TokenKind::Command, "\\ge")
            | (TokenKind::Command, "\\geq") => Some(RelOp::Ge),
            _ => None,
        }
    }

    fn expression(&mut self) -> PResult<AstNode> {
        let lhs = self.additive()?;
        let Some(op) = self.peek().and_then(Self::relation_op) else {
            return Ok(lhs);
        };
        self.pos += 1;
        let rhs = self.additive()?;
        if let Some(t) = self.peek().filter(|t| Self::relation_op(t).is_some()) {
            return Err(Self::unexpected(t, "relations do not chain"));
        }
        Ok(AstNode::Relation {
            op,
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        })
    }

    fn additive(&mut self) -> PResult<AstNode> {
        let mut lhs = self.signed()?;
        while let Some(t) = self.peek() {
            let op = if t.is_op("+") {
                BinOp::Add
            } else if t.is_op("-") {
                BinOp::Sub
            } else {
                break;
            };
            self.pos += 1;
            let rhs = self.signed()?;
            lhs = AstNode::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn signed(&mut self) -> PResult<AstNode> {
        match self.peek() {
            Some(t) if t.is_op("-") => {
                self.pos += 1;
                Ok(AstNode::Neg(Box::new(self.signed()?)))
            }
            Some(t) if t.is_op("+") => {
                self.pos += 1;
                self.signed()
            }
            _ => self.multiplicative(),
        }
    }

    fn starts_implicit_factor(tok: &Token) -> bool {
        match tok.kind {
            TokenKind::Identifier => true,
            TokenKind::Punct => tok.lexeme == "(" || tok.lexeme == "{",
            TokenKind::Command => matches!(
                classify(&tok.lexeme[1..]),
                Some(
                    CommandClass::Function
                        | CommandClass::Constant
                        | CommandClass::NoncommutativeSymbol
                )
            ),
            _ => false,
        }
    }

    fn multiplicative(&mut self) -> PResult<AstNode> {
        let mut lhs = self.power()?;
        while let Some(t) = self.peek() {
            let op = if t.is_op("*")
                || (t.kind == TokenKind::Command
                    && classify(&t.lexeme[1..]) == Some(CommandClass::Product))
            {
                self.pos += 1;
                BinOp::Mul
            } else if t.is_op("/") {
                self.pos += 1;
                BinOp::Div
            } else if Self::starts_implicit_factor(t) {
                BinOp::Mul
            } else {
                break;
            };
            let rhs = self.power()?;
            lhs = AstNode::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn power(&mut self) -> PResult<AstNode> {
        let base = self.primary()?;
        if self.peek().is_some_and(|t| t.is_op("^")) {
            self.pos += 1;
            let exp = self.exponent()?;
            return Ok(AstNode::binary(BinOp::Pow, base, exp));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> PResult<AstNode> {
        if self.peek().is_some_and(|t| t.is_op("-")) {
            self.pos += 1;
            return Ok(AstNode::Neg(Box::new(self.exponent()?)));
        }
        self.power()
    }

    fn delimited_list(&mut self, open: &Token) -> PResult<Vec<AstNode>> {
        let want = closing(&open.lexeme);
        let mut items = Vec::new();
        if self.peek().is_some_and(|t| t.is_punct(want)) {
            self.pos += 1;
            return Ok(items);
        }
        loop {
            items.push(self.expression()?);
            match self.peek() {
                Some(t) if t.is_punct(",") => self.pos += 1,
                _ => {
                    self.expect_close(open)?;
                    return Ok(items);
                }
            }
        }
    }

    fn primary(&mut self) -> PResult<AstNode> {
        let tok = self.next_or_end()?;
        match tok.kind {
            TokenKind::Number => Ok(AstNode::Number(tok.lexeme.clone())),
            TokenKind::Identifier => Ok(AstNode::Var(tok.lexeme.clone())),
            TokenKind::Punct if tok.lexeme == "(" || tok.lexeme == "{" => {
                let inner = self.expression()?;
                self.expect_close(tok)?;
                Ok(inner)
            }
            TokenKind::Punct if tok.lexeme == "[" => Ok(AstNode::List(self.delimited_list(tok)?)),
            TokenKind::Punct if matches!(tok.lexeme.as_str(), ")" | "]" | "}") => {
                Err(ParseError::UnbalancedParens {
                    lexeme: tok.lexeme.clone(),
                    line: tok.line,
                    column: tok.column,
                })
            }
            TokenKind::Command => self.command(tok),
            _ => Err(Self::unexpected(tok, "expected an expression")),
        }
    }

    fn command(&mut self, tok: &'t Token) -> PResult<AstNode> {
        let name = &tok.lexeme[1..];
        match classify(name) {
            None => Err(ParseError::UnknownCommand {
                lexeme: tok.lexeme.clone(),
                line: tok.line,
                column: tok.column,
            }),
            Some(CommandClass::Constant | CommandClass::NoncommutativeSymbol) => {
                Ok(AstNode::Var(tok.lexeme.clone()))
            }
            Some(CommandClass::Relation | CommandClass::Product) => {
                Err(Self::unexpected(tok, "expected an expression"))
            }
            Some(CommandClass::Function) => {
                let open = match self.peek() {
                    Some(t) if t.is_punct("(") => {
                        self.pos += 1;
                        t
                    }
                    _ => {
                        return Err(Self::unexpected(
                            tok,
                            &format!("{} needs a parenthesized argument list", tok.lexeme),
                        ))
                    }
                };
                let args = self.delimited_list(open)?;
                let differential = if name == "int" {
                    self.differential()
                } else {
                    None
                };
                Ok(AstNode::Call {
                    name: name.to_string(),
                    args,
                    differential,
                })
            }
        }
    }

    /// `d x` or `dx` after `\int(...)`.
    fn differential(&mut self) -> Option<String> {
        let t = self.peek()?;
        if t.kind != TokenKind::Identifier {
            return None;
        }
        if t.lexeme == "d" {
            let v = self
                .peek_at(1)
                .filter(|v| v.kind == TokenKind::Identifier)?;
            self.pos += 2;
            return Some(v.lexeme.clone());
        }
        let rest = t.lexeme.strip_prefix('d')?;
        if rest.len() == 1 && rest.starts_with(|c: char| c.is_ascii_alphabetic()) {
            self.pos += 1;
            return Some(rest.to_string());
        }
        None
    }
}

pub fn parse(tokens: &[Token]) -> Result<Program, ParseError> {
    Parser { tokens, pos: 0 }.program()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::lexer::tokenize;

    fn parse_src(src: &str) -> Result<Program, ParseError> {
        parse(&tokenize(src).unwrap())
    }

    fn single(src: &str) -> AstNode {
        let p = parse_src(src).unwrap();
        assert_eq!(p.statements.len(), 1, "{src}");
        p.statements.into_iter().next().unwrap().node
    }

    fn n(s: &str) -> AstNode {
        AstNode::number(s)
    }
    fn v(s: &str) -> AstNode {
        AstNode::var(s)
    }
    fn mul(a: AstNode, b: AstNode) -> AstNode {
        AstNode::binary(BinOp::Mul, a, b)
    }
    fn pow(a: AstNode, b: AstNode) -> AstNode {
        AstNode::binary(BinOp::Pow, a, b)
    }
    fn add(a: AstNode, b: AstNode) -> AstNode {
        AstNode::binary(BinOp::Add, a, b)
    }

    #[test]
    fn cube_of_binomial() {
        assert_eq!(
            single("f = (2x^2 + 1)^3;"),
            AstNode::assign(
                "f",
                pow(add(mul(n("2"), pow(v("x"), n("2"))), n("1")), n("3"))
            )
        );
    }

    #[test]
    fn derivative_order_argument() {
        assert_eq!(
            single("\\D(l, x^2)"),
            AstNode::call("D", vec![v("l"), pow(v("x"), n("2"))])
        );
    }

    #[test]
    fn bare_identifier() {
        assert_eq!(single("x"), v("x"));
    }

    #[test]
    fn implicit_multiplication_forms() {
        assert_eq!(
            single("x^4y^3"),
            mul(pow(v("x"), n("4")), pow(v("y"), n("3")))
        );
        assert_eq!(
            single("5x(y^3 + x)"),
            mul(mul(n("5"), v("x")), add(pow(v("y"), n("3")), v("x")))
        );
        assert_eq!(single("a b"), mul(v("a"), v("b")));
        assert_eq!(
            single("(x+1)^2(x-3)"),
            mul(
                pow(add(v("x"), n("1")), n("2")),
                AstNode::binary(BinOp::Sub, v("x"), n("3"))
            )
        );
    }

    #[test]
    fn unary_minus_sits_below_products() {
        assert_eq!(single("-2x"), AstNode::Neg(Box::new(mul(n("2"), v("x")))));
        assert_eq!(single("-x^2"), AstNode::Neg(Box::new(pow(v("x"), n("2")))));
    }

    #[test]
    fn integral_differential() {
        assert_eq!(
            single("l = \\int(f) d x"),
            AstNode::assign(
                "l",
                AstNode::Call {
                    name: "int".into(),
                    args: vec![v("f")],
                    differential: Some("x".into())
                }
            )
        );
        let AstNode::Call { differential, .. } = single("\\int(f) dy") else {
            panic!()
        };
        assert_eq!(differential.as_deref(), Some("y"));
    }

    #[test]
    fn declarations() {
        assert_eq!(
            single("SPACE = ZMaxMult[x, y]"),
            AstNode::SpaceDecl {
                algebra: "ZMaxMult".into(),
                variables: vec!["x".into(), "y".into()]
            }
        );
        assert_eq!(
            single("FLOATPOS = 2"),
            AstNode::ConfigDecl {
                key: ConfigKey::FloatPos,
                value: 2
            }
        );
    }

    #[test]
    fn relations_inside_calls() {
        let node = single("\\solve((x + 1)^2(x - 3)(x + 5) \\ge 0)");
        let AstNode::Call { args, .. } = node else {
            panic!()
        };
        assert!(matches!(args[0], AstNode::Relation { op: RelOp::Ge, .. }));
    }

    #[test]
    fn text_comments_separate_statements() {
        let p = parse_src("a = 1 \"then\" b = 2").unwrap();
        let nodes: Vec<_> = p.nodes().cloned().collect();
        assert_eq!(
            nodes,
            vec![
                AstNode::assign("a", n("1")),
                AstNode::Text("then".into()),
                AstNode::assign("b", n("2"))
            ]
        );
    }

    #[test]
    fn matrices() {
        assert_eq!(
            single("[[1, 2], [3, -\\infty]]"),
            AstNode::List(vec![
                AstNode::List(vec![n("1"), n("2")]),
                AstNode::List(vec![n("3"), AstNode::Neg(Box::new(v("\\infty")))])
            ])
        );
    }

    #[test]
    fn error_positions_name_the_token() {
        let e = parse_src("a = 1;\nb = \\foo(2)").unwrap_err();
        assert_eq!(
            e,
            ParseError::UnknownCommand {
                lexeme: "\\foo".into(),
                line: 2,
                column: 5
            }
        );
        let e = parse_src("f = (x + 1").unwrap_err();
        assert!(matches!(
            e,
            ParseError::UnbalancedParens {
                line: 1,
                column: 5,
                ..
            }
        ));
        let e = parse_src("x + 1)").unwrap_err();
        assert!(matches!(
            e,
            ParseError::UnbalancedParens {
                line: 1,
                column: 6,
                ..
            }
        ));
        let e = parse_src("x + * 2").unwrap_err();
        assert_eq!(e.lexeme(), "*");
        assert!(e.to_string().contains("'*'"));
        let e = parse_src("x +").unwrap_err();
        assert!(matches!(e, ParseError::UnexpectedEnd { .. }));
    }

    #[test]
    fn commands_need_parentheses() {
        assert!(matches!(
            parse_src("\\sin x"),
            Err(ParseError::UnexpectedToken { .. })
        ));
    }

    #[test]
    fn implicit_product_stops_at_separators() {
        let p = parse_src("a = x; y").unwrap();
        assert_eq!(p.statements.len(), 2);
        let node = single("\\solve(x = y)");
        let AstNode::Call { args, .. } = node else {
            panic!()
        };
        assert!(matches!(args[0], AstNode::Relation { .. }));
    }
}
