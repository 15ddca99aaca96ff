//! Runtime values and their two renderings.

use num_complex::Complex64;

use crate::poly::{format_number, Expr, Markup, NumberStyle};
use crate::solve::{IntervalSet, RootList, SolutionMatrix};
use crate::space::{
    format_complex, format_float, format_tropical, rounds_to_zero, ClassicalDomain, Scalar,
    SpaceContext,
};
use crate::syntax::{latex_array, latex_text};
use crate::tropical::{PathResult, TropicalMatrix};

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    /// Classical or tropical scalar.
    Scalar(Scalar),
    /// Polynomial or elementary-function expression.
    Expr(Expr),
    Matrix(TropicalMatrix),
    Intervals(IntervalSet),
    Roots(RootList),
    Solutions(SolutionMatrix),
    Path(PathResult),
    List(Vec<Value>),
    Text(String),
}

pub fn number_style(ctx: &SpaceContext) -> NumberStyle {
    match ctx.domain() {
        Some(ClassicalDomain::Z | ClassicalDomain::Q) => NumberStyle::Exact,
        _ => NumberStyle::Fixed(ctx.floatpos),
    }
}

fn complex_latex_plain(c: Complex64, fp: u32) -> String {
    let re_zero = rounds_to_zero(c.re, fp);
    let im_zero = rounds_to_zero(c.im, fp);
    let unit = "\\mathbf{i}";
    match (re_zero, im_zero) {
        (_, true) => format_float(if re_zero { 0.0 } else { c.re }, fp),
        (true, false) => format!("{}{unit}", format_float(c.im, fp)),
        (false, false) => format!(
            "{}{}{}{unit}",
            format_float(c.re, fp),
            if c.im < 0.0 { '-' } else { '+' },
            format_float(c.im.abs(), fp)
        ),
    }
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Expr(_) => "expression",
            Value::Matrix(_) => "matrix",
            Value::Intervals(_) => "interval set",
            Value::Roots(_) => "root list",
            Value::Solutions(_) => "solution matrix",
            Value::Path(_) => "path",
            Value::List(_) => "list",
            Value::Text(_) => "text",
        }
    }

    pub fn render(&self, ctx: &SpaceContext, markup: Markup) -> String {
        let fp = ctx.floatpos;
        let style = number_style(ctx);
        match self {
            Value::Scalar(Scalar::Tropical(t)) => format_tropical(t, fp),
            Value::Scalar(s) => format_number(&s.to_number().expect("classical"), style, markup),
            Value::Expr(e) => e.render(&ctx.variables, style, markup),
            Value::Matrix(m) => match markup {
                Markup::Mathpar => m.render_mathpar(fp),
                Markup::Latex => m.render_latex(fp),
            },
            Value::Intervals(set) => set.render(fp),
            Value::Roots(roots) => {
                let items: Vec<String> = roots
                    .expanded()
                    .into_iter()
                    .map(|c| match markup {
                        Markup::Mathpar => format_complex(c, fp, markup.imaginary_unit()),
                        Markup::Latex => complex_latex_plain(c, fp),
                    })
                    .collect();
                bracket(&items, markup)
            }
            Value::Solutions(sol) => match markup {
                Markup::Mathpar => {
                    let rows: Vec<String> = sol
                        .rows
                        .iter()
                        .map(|r| {
                            let cells: Vec<String> =
                                r.iter().map(|c| format_complex(*c, fp, "\\i")).collect();
                            format!("[{}]", cells.join(","))
                        })
                        .collect();
                    format!("[{}]", rows.join(","))
                }
                Markup::Latex => {
                    let cells: Vec<Vec<String>> = sol
                        .rows
                        .iter()
                        .map(|r| r.iter().map(|c| complex_latex_plain(*c, fp)).collect())
                        .collect();
                    if cells.is_empty() {
                        "\\emptyset".into()
                    } else {
                        latex_array(&cells)
                    }
                }
            },
            Value::Path(p) => match markup {
                Markup::Mathpar => p.render_mathpar(fp),
                Markup::Latex => p.render_latex(fp),
            },
            Value::List(items) => {
                let parts: Vec<String> = items.iter().map(|v| v.render(ctx, markup)).collect();
                bracket(&parts, markup)
            }
            Value::Text(s) => match markup {
                Markup::Mathpar => s.clone(),
                Markup::Latex => format!("\\text{{{}}}", latex_text(s)),
            },
        }
    }
}

fn bracket(items: &[String], markup: Markup) -> String {
    match markup {
        Markup::Mathpar => format!("[{}]", items.join(",")),
        Markup::Latex => format!("\\left[{}\\right]", items.join(", ")),
    }
}
