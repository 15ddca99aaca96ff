//! AST printers: Mathpar source that re-parses to the same tree, and LaTeX.

use super::ast::{AstNode, BinOp, ConfigKey, Program, RelOp};

fn precedence(node: &AstNode) -> u8 {
    match node {
        AstNode::Assign { .. } | AstNode::SpaceDecl { .. } | AstNode::ConfigDecl { .. } => 0,
        AstNode::Relation { .. } => 1,
        AstNode::Binary {
            op: BinOp::Add | BinOp::Sub,
            ..
        } => 2,
        AstNode::Neg(_) => 3,
        AstNode::Binary {
            op: BinOp::Mul | BinOp::Div,
            ..
        } => 4,
        AstNode::Binary { op: BinOp::Pow, .. } => 5,
        _ => 6,
    }
}

/// Statement form: a bare `v = e` relation would re-parse as an assignment,
/// so its left side gets parentheses.
pub fn print_mathpar(node: &AstNode) -> String {
    match node {
        AstNode::Relation {
            op: RelOp::Eq,
            lhs,
            rhs,
        } if matches!(**lhs, AstNode::Var(_)) => {
            format!("({}) = {}", expr(lhs), wrap(rhs, 2))
        }
        _ => expr(node),
    }
}

pub fn print_program(program: &Program) -> String {
    program
        .nodes()
        .map(|n| match n {
            AstNode::Text(t) => format!("\"{t}\""),
            n => format!("{};", print_mathpar(n)),
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn wrap(node: &AstNode, min: u8) -> String {
    if precedence(node) < min {
        format!("({})", expr(node))
    } else {
        expr(node)
    }
}

fn join(items: &[AstNode]) -> String {
    items.iter().map(expr).collect::<Vec<_>>().join(", ")
}

fn exponent(node: &AstNode) -> String {
    match node {
        AstNode::Neg(inner) => format!("-{}", exponent(inner)),
        n => wrap(n, 5),
    }
}

fn expr(node: &AstNode) -> String {
    match node {
        AstNode::Number(s) | AstNode::Var(s) => s.clone(),
        AstNode::Assign { target, value } => format!("{target} = {}", expr(value)),
        AstNode::Binary { op, lhs, rhs } => match op {
            BinOp::Add => format!("{} + {}", wrap(lhs, 2), wrap(rhs, 3)),
            BinOp::Sub => format!("{} - {}", wrap(lhs, 2), wrap(rhs, 3)),
            BinOp::Mul => format!("{}*{}", wrap(lhs, 4), wrap(rhs, 5)),
            BinOp::Div => format!("{}/{}", wrap(lhs, 4), wrap(rhs, 5)),
            BinOp::Pow => format!("{}^{}", wrap(lhs, 6), exponent(rhs)),
        },
        AstNode::Neg(inner) => format!("-{}", wrap(inner, 3)),
        AstNode::Call {
            name,
            args,
            differential,
        } => match differential {
            Some(v) => format!("\\{name}({}) d {v}", join(args)),
            None => format!("\\{name}({})", join(args)),
        },
        AstNode::List(items) => format!("[{}]", join(items)),
        AstNode::Relation { op, lhs, rhs } => {
            format!("{} {} {}", wrap(lhs, 2), op.mathpar(), wrap(rhs, 2))
        }
        AstNode::SpaceDecl { algebra, variables } => {
            format!("SPACE = {algebra}[{}]", variables.join(", "))
        }
        AstNode::ConfigDecl {
            key: ConfigKey::FloatPos,
            value,
        } => format!("FLOATPOS = {value}"),
        AstNode::Text(t) => format!("\"{t}\""),
    }
}

pub fn print_latex(node: &AstNode) -> String {
    latex(node)
}

pub fn print_latex_program(program: &Program) -> String {
    program
        .nodes()
        .map(latex)
        .collect::<Vec<_>>()
        .join(";\\\\\n")
}

/// Escapes characters that are active in LaTeX text mode.
pub fn latex_text(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\textbackslash{}"),
            '{' | '}' | '$' | '&' | '#' | '_' | '%' => {
                out.push('\\');
                out.push(c);
            }
            '^' => out.push_str("\\^{}"),
            '~' => out.push_str("\\~{}"),
            c => out.push(c),
        }
    }
    out
}

fn latex_wrap(node: &AstNode, min: u8) -> String {
    if precedence(node) < min {
        format!("\\left({}\\right)", latex(node))
    } else {
        latex(node)
    }
}

fn latex_join(items: &[AstNode]) -> String {
    items.iter().map(latex).collect::<Vec<_>>().join(", ")
}

fn latex_function(name: &str) -> String {
    match name {
        "sin" | "cos" | "ln" | "exp" => format!("\\{name}"),
        "tg" | "ctg" => format!("\\operatorname{{{name}}}"),
        _ => format!("\\mathrm{{{name}}}"),
    }
}

fn latex_var(name: &str) -> String {
    match name {
        "\\i" => "\\mathbf{i}".to_string(),
        n if n.starts_with('\\') => n.to_string(),
        n => {
            let escaped = n.replace('_', "\\_");
            if n.chars().count() > 1 {
                format!("\\mathit{{{escaped}}}")
            } else {
                escaped
            }
        }
    }
}

/// `[[..],[..]]` with equal-length rows renders as a matrix.
fn as_matrix(items: &[AstNode]) -> Option<Vec<&[AstNode]>> {
    let rows: Vec<&[AstNode]> = items
        .iter()
        .map(|i| match i {
            AstNode::List(r) if !r.is_empty() => Some(r.as_slice()),
            _ => None,
        })
        .collect::<Option<_>>()?;
    let width = rows.first()?.len();
    rows.iter().all(|r| r.len() == width).then_some(rows)
}

pub fn latex_array<S: AsRef<str>>(rows: &[Vec<S>]) -> String {
    let width = rows.first().map_or(0, |r| r.len());
    let body = rows
        .iter()
        .map(|r| r.iter().map(|c| c.as_ref()).collect::<Vec<_>>().join(" & "))
        .collect::<Vec<_>>()
        .join(" \\\\ ");
    format!(
        "\\left(\\begin{{array}}{{{}}}{body}\\end{{array}}\\right)",
        "c".repeat(width)
    )
}

fn latex(node: &AstNode) -> String {
    match node {
        AstNode::Number(s) => s.clone(),
        AstNode::Var(s) => latex_var(s),
        AstNode::Assign { target, value } => format!("{} = {}", latex_var(target), latex(value)),
        AstNode::Binary { op, lhs, rhs } => match op {
            BinOp::Add => format!("{} + {}", latex_wrap(lhs, 2), latex_wrap(rhs, 3)),
            BinOp::Sub => format!("{} - {}", latex_wrap(lhs, 2), latex_wrap(rhs, 3)),
            BinOp::Mul => {
                let right = latex_wrap(rhs, 5);
                let sep = if right.starts_with(|c: char| c.is_ascii_digit() || c == '-') {
                    " \\cdot "
                } else {
                    " "
                };
                format!("{}{sep}{right}", latex_wrap(lhs, 4))
            }
            BinOp::Div => format!("\\frac{{{}}}{{{}}}", latex(lhs), latex(rhs)),
            BinOp::Pow => format!("{}^{{{}}}", latex_wrap(lhs, 6), latex(rhs)),
        },
        AstNode::Neg(inner) => format!("-{}", latex_wrap(inner, 3)),
        AstNode::Call {
            name,
            args,
            differential,
        } => match (name.as_str(), differential) {
            ("int", Some(v)) => format!("\\int {} \\, d{v}", latex_wrap(&args[0], 3)),
            _ => format!(
                "{}\\left({}\\right)",
                latex_function(name),
                latex_join(args)
            ),
        },
        AstNode::List(items) => match as_matrix(items) {
            Some(rows) => {
                let cells: Vec<Vec<String>> =
                    rows.iter().map(|r| r.iter().map(latex).collect()).collect();
                latex_array(&cells)
            }
            None => format!("\\left[{}\\right]", latex_join(items)),
        },
        AstNode::Relation { op, lhs, rhs } => format!(
            "{} {} {}",
            latex_wrap(lhs, 2),
            op.latex(),
            latex_wrap(rhs, 2)
        ),
        AstNode::SpaceDecl { algebra, variables } => format!(
            "\\mathrm{{SPACE}} = \\mathrm{{{algebra}}}[{}]",
            variables
                .iter()
                .map(|v| latex_var(v))
                .collect::<Vec<_>>()
                .join(", ")
        ),
        AstNode::ConfigDecl {
            key: ConfigKey::FloatPos,
            value,
        } => format!("\\mathrm{{FLOATPOS}} = {value}"),
        AstNode::Text(t) => format!("\\text{{{}}}", latex_text(t)),
    }
}

/// True when `{}` nest properly and every `\begin{env}` has its `\end{env}`.
pub fn latex_is_balanced(s: &str) -> bool {
    let mut depth = 0i64;
    let mut envs: Vec<&str> = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'\\' => {
                let rest = &s[i..];
                for (kw, open) in [("\\begin{", true), ("\\end{", false)] {
                    if let Some(tail) = rest.strip_prefix(kw) {
                        if let Some(close) = tail.find('}') {
                            let env = &tail[..close];
                            if open {
                                envs.push(env);
                            } else if envs.pop() != Some(env) {
                                return false;
                            }
                        }
                    }
                }
                // Skip the escaped character so `\{` is not counted.
                i += if rest.len() > 1 && matches!(bytes[i + 1], b'{' | b'}' | b'\\') {
                    2
                } else {
                    1
                };
                continue;
            }
            b'{' => depth += 1,
            b'}' => {
                depth -= 1;
                if depth < 0 {
                    return false;
                }
            }
            _ => {}
        }
        i += 1;
    }
    depth == 0 && envs.is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{lexer::tokenize, parser::parse};

    fn reparse(src: &str) -> Program {
        parse(&tokenize(src).unwrap()).unwrap()
    }

    fn round_trip(src: &str) {
        let p = reparse(src);
        let printed = print_program(&p);
        assert_eq!(reparse(&printed), p, "{src} -> {printed}");
    }

    #[test]
    fn simple_forms() {
        assert_eq!(
            print_mathpar(&AstNode::assign("c", AstNode::number("9"))),
            "c = 9"
        );
        let sq = AstNode::binary(BinOp::Pow, AstNode::var("x"), AstNode::number("2"));
        assert_eq!(print_mathpar(&sq), "x^2");
        assert_eq!(print_latex(&AstNode::number("2")), "2");
    }

    #[test]
    fn paper_scripts_round_trip() {
        for src in [
            "SPACE = R64[x, y]; f = \\sin(x^2 + \\tg(y^3 + x)); g = \\value(f, [1, 2]); \\print(g);",
            "SPACE = Q[x]; f = (2x^2 + 1)^3; l = \\int(f) d x; dl = \\D(l, x); d2l = \\D(l, x^2);",
            "SPACE = R[x, y]; f = x^2 + 5x(y^3 + x);",
            "SPACE = C64[x]; FLOATPOS = 2; b = \\solve(x^4 + 2x + 1 = 0);",
            "b = \\solve((x + 1)^2(x - 3)(x + 5) \\ge 0);",
            "\\gbasis(x^4y^3 + 2xy^2 + 3x + 1, x^3y^2 + x^2, x^4y + z^2+xy^4 + 3);",
            "SPACE = ZMaxMult[x, y]; a = 2; b = 9; c = a + b; d = a b; \\print(c, d)",
            "\"comment\" x = -y^-2; (x) = 3; a - (b - c); -(a + b)*c; x^-(a+b); (x^2)^3",
            "A = [[0, -\\infty], [-\\infty, 0]]; \\solveLAETropic(A, [3, 7])",
        ] {
            round_trip(src);
        }
    }

    #[test]
    fn latex_forms() {
        let p = reparse("l = 8/7 x^7; \\tg(x) \\ge 0; [[1, 2], [3, 4]]; \\i");
        let out: Vec<String> = p.nodes().map(print_latex).collect();
        assert_eq!(out[0], "l = \\frac{8}{7} x^{7}");
        assert_eq!(out[1], "\\operatorname{tg}\\left(x\\right) \\geq 0");
        assert_eq!(
            out[2],
            "\\left(\\begin{array}{cc}1 & 2 \\\\ 3 & 4\\end{array}\\right)"
        );
        assert_eq!(out[3], "\\mathbf{i}");
        assert!(out.iter().all(|s| latex_is_balanced(s)));
    }

    #[test]
    fn balance_checker() {
        assert!(latex_is_balanced("\\{-1\\}\\cup[3, \\infty)"));
        assert!(!latex_is_balanced("\\frac{1}{2"));
        assert!(!latex_is_balanced("\\begin{array}{c}1"));
    }
}
