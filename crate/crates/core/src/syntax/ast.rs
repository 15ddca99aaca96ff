//! Syntax tree for ATeX programs.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelOp {
    Eq,
    Le,
    Ge,
    Lt,
    Gt,
}

impl RelOp {
    pub fn mathpar(self) -> &'static str {
        match self {
            RelOp::Eq => "=",
            RelOp::Le => "\\le",
            RelOp::Ge => "\\ge",
            RelOp::Lt => "<",
            RelOp::Gt => ">",
        }
    }

    pub fn latex(self) -> &'static str {
        match self {
            RelOp::Eq => "=",
            RelOp::Le => "\\leq",
            RelOp::Ge => "\\geq",
            RelOp::Lt => "<",
            RelOp::Gt => ">",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConfigKey {
    FloatPos,
}

#[derive(Debug, Clone, PartialEq)]
pub enum AstNode {
    /// Decimal literal kept verbatim; the active space decides its meaning.
    Number(String),
    /// Identifier, or a backslash constant such as `\infty` (backslash kept).
    Var(String),
    Assign {
        target: String,
        value: Box<AstNode>,
    },
    Binary {
        op: BinOp,
        lhs: Box<AstNode>,
        rhs: Box<AstNode>,
    },
    Neg(Box<AstNode>),
    /// Command call; `name` has no backslash. `differential` holds `x` from
    /// `\int(f) d x`.
    Call {
        name: String,
        args: Vec<AstNode>,
        differential: Option<String>,
    },
    List(Vec<AstNode>),
    Relation {
        op: RelOp,
        lhs: Box<AstNode>,
        rhs: Box<AstNode>,
    },
    SpaceDecl {
        algebra: String,
        variables: Vec<String>,
    },
    ConfigDecl {
        key: ConfigKey,
        value: u32,
    },
    Text(String),
}

impl AstNode {
    pub fn number(lit: &str) -> AstNode {
        AstNode::Number(lit.to_string())
    }

    pub fn var(name: &str) -> AstNode {
        AstNode::Var(name.to_string())
    }

    pub fn binary(op: BinOp, lhs: AstNode, rhs: AstNode) -> AstNode {
        AstNode::Binary {
            op,
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        }
    }

    pub fn call(name: &str, args: Vec<AstNode>) -> AstNode {
        AstNode::Call {
            name: name.to_string(),
            args,
            differential: None,
        }
    }

    pub fn assign(target: &str, value: AstNode) -> AstNode {
        AstNode::Assign {
            target: target.to_string(),
            value: Box::new(value),
        }
    }

    pub fn is_statement_only(&self) -> bool {
        matches!(
            self,
            AstNode::Assign { .. }
                | AstNode::SpaceDecl { .. }
                | AstNode::ConfigDecl { .. }
                | AstNode::Text(_)
        )
    }
}

/// A top-level statement with the position of its first token.
#[derive(Debug, Clone)]
pub struct Statement {
    pub node: AstNode,
    pub line: u32,
    pub column: u32,
}

/// Positions are metadata; two statements are equal when their trees are.
impl PartialEq for Statement {
    fn eq(&self, other: &Self) -> bool {
        self.node == other.node
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Program {
    pub statements: Vec<Statement>,
}

impl Program {
    pub fn nodes(&self) -> impl Iterator<Item = &AstNode> {
        self.statements.iter().map(|s| &s.node)
    }
}
