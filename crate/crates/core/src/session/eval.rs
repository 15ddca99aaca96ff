//! Statement execution and expression evaluation against an [`Environment`].

use num_traits::ToPrimitive;
use thiserror::Error;

use super::env::Environment;
use super::output::{Diagnostic, ExecutionResult, Output, Severity};
use super::value::Value;
use crate::cancel::{CancelToken, Cancelled};
use crate::poly::{factor_expr, Expr, ExprError, Func, Markup, Poly};
use crate::solve::{
    groebner_basis, rational_system, solve_inequality, solve_nae, solve_univariate, SolveError,
};
use crate::space::{
    parse_decimal, resolve_algebra, scalar_arith, ArithOp, ClassicalDomain, Coefficient, Number,
    Scalar, ScalarError, SpaceContext, SpaceError, TropicalError, TropicalScalar,
    TropicalSignature,
};
use crate::syntax::{is_print_like, parse_source, AstNode, BinOp, ConfigKey, RelOp};
use crate::tropical::{self, TropicalLinearError, TropicalMatrix};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("unbound identifier '{0}'")]
    UnboundIdentifier(String),
    #[error("wrong space: {0}")]
    WrongSpace(String),
    #[error("\\{command} expects {expected} argument(s), got {got}")]
    Arity {
        command: String,
        expected: &'static str,
        got: usize,
    },
    #[error("{0}")]
    Type(String),
    #[error("{0} is out of scope")]
    Unsupported(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Tropical(#[from] TropicalLinearError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Cancelled(#[from] Cancelled),
}

impl From<TropicalError> for EvalError {
    fn from(e: TropicalError) -> Self {
        EvalError::Scalar(ScalarError::Tropical(e))
    }
}

type Result<T> = std::result::Result<T, EvalError>;

/// Parses and runs `source` as one section.
///
/// Statements run in order. The first failing statement stops the section;
/// bindings made before it stay. When no print-like statement ran, the value
/// of the last statement is the only output.
pub fn execute_section(
    env: &mut Environment,
    source: &str,
    cancel: &CancelToken,
) -> ExecutionResult {
    env.touch();
    let mut result = ExecutionResult::default();
    let program = match parse_source(source) {
        Ok(p) => p,
        Err(e) => {
            let (line, column) = e.position();
            result.diagnostics.push(Diagnostic {
                severity: Severity::Error,
                message: e.to_string(),
                line,
                column,
            });
            return result;
        }
    };
    let mut ev = Evaluator {
        env,
        cancel,
        outputs: Vec::new(),
        printed: false,
    };
    let mut last = None;
    let mut failed = false;
    for stmt in &program.statements {
        let step = ev
            .cancel
            .check()
            .map_err(EvalError::from)
            .and_then(|_| ev.statement(&stmt.node));
        match step {
            Ok(out) => last = out,
            Err(e) => {
                result.diagnostics.push(Diagnostic {
                    severity: Severity::Error,
                    message: e.to_string(),
                    line: stmt.line,
                    column: stmt.column,
                });
                failed = true;
                break;
            }
        }
    }
    result.outputs = std::mem::take(&mut ev.outputs);
    if !ev.printed && !failed {
        result.outputs.extend(last);
    }
    result
}

/// Outputs for `\print(args)`: identifiers are labelled with their name.
pub fn print_command(
    env: &mut Environment,
    args: &[AstNode],
    cancel: &CancelToken,
) -> Result<Vec<Output>> {
    let mut ev = Evaluator {
        env,
        cancel,
        outputs: Vec::new(),
        printed: false,
    };
    ev.print(args)?;
    Ok(ev.outputs)
}

/// Handles `SPACE = ...` and `FLOATPOS = n`. Bindings are kept.
pub fn apply_space_decl(env: &mut Environment, decl: &AstNode) -> Result<()> {
    match decl {
        AstNode::SpaceDecl { algebra, variables } => {
            let mut ctx = SpaceContext::new(resolve_algebra(algebra)?, variables.clone())?;
            ctx.floatpos = env.space.floatpos;
            env.space = ctx;
            Ok(())
        }
        AstNode::ConfigDecl {
            key: ConfigKey::FloatPos,
            value,
        } => {
            env.space.floatpos = *value;
            Ok(())
        }
        other => Err(EvalError::Type(format!("not a declaration: {other:?}"))),
    }
}

pub fn clear_environment(env: &mut Environment) {
    env.clear();
}

struct Evaluator<'a> {
    env: &'a mut Environment,
    cancel: &'a CancelToken,
    outputs: Vec<Output>,
    printed: bool,
}

fn arity(command: &str, expected: &'static str, got: usize) -> EvalError {
    EvalError::Arity {
        command: command.to_string(),
        expected,
        got,
    }
}

/// Splits `name` into a product of space variables, longest names first.
fn split_identifier(name: &str, vars: &[String]) -> Option<Vec<usize>> {
    if name.is_empty() {
        return Some(Vec::new());
    }
    let mut candidates: Vec<(usize, &String)> = vars
        .iter()
        .enumerate()
        .filter(|(_, v)| name.starts_with(v.as_str()))
        .collect();
    candidates.sort_by_key(|(_, v)| std::cmp::Reverse(v.len()));
    for (i, v) in candidates {
        if let Some(mut rest) = split_identifier(&name[v.len()..], vars) {
            rest.insert(0, i);
            return Some(rest);
        }
    }
    None
}

fn small_int(n: &Number) -> Option<i64> {
    n.as_rational()
        .filter(|r| r.is_integer())
        .and_then(|r| r.to_integer().to_i64())
}

impl Evaluator<'_> {
    fn ctx(&self) -> &SpaceContext {
        &self.env.space
    }

    fn nvars(&self) -> usize {
        self.env.space.nvars()
    }

    fn tropical_sig(&self) -> Option<TropicalSignature> {
        self.env.space.algebra.tropical()
    }

    fn domain(&self) -> Option<ClassicalDomain> {
        self.env.space.domain()
    }

    fn output(&self, label: Option<String>, value: &Value, ctx: &SpaceContext) -> Output {
        Output {
            label,
            mathpar: value.render(ctx, Markup::Mathpar),
            latex: value.render(ctx, Markup::Latex),
        }
    }

    fn statement(&mut self, node: &AstNode) -> Result<Option<Output>> {
        match node {
            AstNode::SpaceDecl { .. } => {
                apply_space_decl(self.env, node)?;
                let text = Value::Text(self.env.space.to_string());
                Ok(Some(self.output(
                    Some("SPACE".into()),
                    &text,
                    &self.env.space.clone(),
                )))
            }
            AstNode::ConfigDecl { value, .. } => {
                apply_space_decl(self.env, node)?;
                let text = Value::Text(value.to_string());
                Ok(Some(self.output(
                    Some("FLOATPOS".into()),
                    &text,
                    &self.env.space.clone(),
                )))
            }
            AstNode::Text(s) => Ok(Some(self.output(
                None,
                &Value::Text(s.clone()),
                &self.env.space.clone(),
            ))),
            AstNode::Assign { target, value } => {
                let v = self.eval(value)?;
                self.env.bind(target, v.clone());
                Ok(Some(self.output(
                    Some(target.clone()),
                    &v,
                    &self.env.space.clone(),
                )))
            }
            AstNode::Call { name, args, .. } if is_print_like(name) => {
                self.print(args)?;
                Ok(None)
            }
            other => {
                let v = self.eval(other)?;
                Ok(Some(self.output(None, &v, &self.env.space.clone())))
            }
        }
    }

    fn print(&mut self, args: &[AstNode]) -> Result<()> {
        self.printed = true;
        for arg in args {
            let (label, value, mut ctx) = match arg {
                AstNode::Var(name) if self.env.is_bound(name) => {
                    let value = self.lookup(name)?;
                    let ctx = self.env.get(name).expect("bound").context.clone();
                    (Some(name.clone()), value, ctx)
                }
                AstNode::Var(name) => (Some(name.clone()), self.eval(arg)?, self.ctx().clone()),
                other => (None, self.eval(other)?, self.ctx().clone()),
            };
            ctx.floatpos = self.env.space.floatpos;
            let out = self.output(label, &value, &ctx);
            self.outputs.push(out);
        }
        Ok(())
    }

    /// A bound value, re-checked against the active space.
    fn lookup(&self, name: &str) -> Result<Value> {
        let b = self
            .env
            .get(name)
            .ok_or_else(|| EvalError::UnboundIdentifier(name.to_string()))?;
        if b.context.compatible(self.ctx()) {
            return Ok(b.value.clone());
        }
        match &b.value {
            Value::Scalar(s) => Ok(Value::Scalar(s.coerce(&self.ctx().algebra).map_err(
                |_| {
                    EvalError::WrongSpace(format!(
                        "'{name}' belongs to {} and cannot be used in {}",
                        b.context,
                        self.ctx()
                    ))
                },
            )?)),
            Value::Expr(e) if !e.has_variables() && self.domain().is_some() => {
                let n = e.evaluate(&vec![Number::zero(); e.nvars()])?;
                let s = Scalar::from_number(self.domain().expect("classical"), &n)?;
                Ok(Value::Scalar(s))
            }
            _ => Err(EvalError::WrongSpace(format!(
                "'{name}' was computed in {} but the space is now {}",
                b.context,
                self.ctx()
            ))),
        }
    }

    fn literal(&self, lit: &str) -> Result<Value> {
        let r = parse_decimal(lit)
            .ok_or_else(|| EvalError::Type(format!("malformed number '{lit}'")))?;
        let n = Number::Rational(r);
        match &self.ctx().algebra {
            crate::space::AlgebraTag::Tropical(sig) => {
                Ok(Value::Scalar(Scalar::Tropical(sig.finite(&n)?)))
            }
            crate::space::AlgebraTag::Classical(d) => {
                Ok(Value::Scalar(Scalar::from_number(*d, &n)?))
            }
        }
    }

    fn constant(&self, name: &str) -> Result<Value> {
        if let Some(sig) = self.tropical_sig() {
            return match name {
                "\\infty" => {
                    let t = TropicalScalar::PlusInfinity;
                    sig.validate(&t)?;
                    Ok(Value::Scalar(Scalar::Tropical(t)))
                }
                _ => Err(EvalError::WrongSpace(format!(
                    "{name} is not an element of {sig}"
                ))),
            };
        }
        let d = self.domain().expect("classical");
        let n = match name {
            "\\pi" => Number::Real(std::f64::consts::PI),
            "\\i" => Number::imaginary_unit(),
            "\\infty" => {
                return Err(EvalError::Type(
                    "\\infty is only a value in tropical spaces; use it inside intervals".into(),
                ))
            }
            _ => return Err(EvalError::UnboundIdentifier(name.to_string())),
        };
        Ok(Value::Scalar(Scalar::from_number(d, &n)?))
    }

    fn variable(&self, index: usize) -> Result<Value> {
        if let Some(sig) = self.tropical_sig() {
            return Err(EvalError::WrongSpace(format!(
                "'{}' is a variable of {sig}; tropical polynomials are not supported",
                self.ctx().variables[index]
            )));
        }
        Ok(Value::Expr(Expr::Poly(Poly::variable(self.nvars(), index))))
    }

    fn identifier(&self, name: &str) -> Result<Value> {
        if name.starts_with('\\') {
            return self.constant(name);
        }
        if self.env.is_bound(name) {
            return self.lookup(name);
        }
        if let Some(i) = self.ctx().var_index(name) {
            return self.variable(i);
        }
        match split_identifier(name, &self.ctx().variables) {
            Some(parts) if parts.len() > 1 => self.product_of_variables(&parts, 1),
            _ => Err(EvalError::UnboundIdentifier(name.to_string())),
        }
    }

    /// `v1 v2 ... vk^last_exp`.
    fn product_of_variables(&self, parts: &[usize], last_exp: u32) -> Result<Value> {
        let mut acc = Poly::one(self.nvars());
        for (k, &i) in parts.iter().enumerate() {
            let v = match self.variable(i)? {
                Value::Expr(Expr::Poly(p)) => p,
                _ => unreachable!("classical variable"),
            };
            let e = if k + 1 == parts.len() { last_exp } else { 1 };
            acc = acc.mul(&v.pow(e));
        }
        Ok(Value::Expr(Expr::Poly(acc)))
    }

    fn eval(&mut self, node: &AstNode) -> Result<Value> {
        self.cancel.check()?;
        match node {
            AstNode::Number(lit) => self.literal(lit),
            AstNode::Var(name) => self.identifier(name),
            AstNode::Neg(inner) => {
                let v = self.eval(inner)?;
                self.negate(v)
            }
            AstNode::Binary { op, lhs, rhs } => {
                if let (BinOp::Pow, AstNode::Var(name)) = (op, lhs.as_ref()) {
                    if let Some(v) = self.split_power(name, rhs)? {
                        return Ok(v);
                    }
                }
                let a = self.eval(lhs)?;
                let b = self.eval(rhs)?;
                self.arith(*op, a, b)
            }
            AstNode::Call {
                name,
                args,
                differential,
            } => self.call(name, args, differential.as_deref()),
            AstNode::List(items) => {
                let values = items
                    .iter()
                    .map(|i| self.eval(i))
                    .collect::<Result<Vec<_>>>()?;
                match self.tropical_sig() {
                    Some(sig) => Ok(Value::Matrix(self.matrix_from_list(sig, values)?)),
                    None => Ok(Value::List(values)),
                }
            }
            AstNode::Relation { .. } => Err(EvalError::Type(
                "a relation can only be used inside \\solve".into(),
            )),
            AstNode::Text(s) => Ok(Value::Text(s.clone())),
            AstNode::Assign { .. } | AstNode::SpaceDecl { .. } | AstNode::ConfigDecl { .. } => Err(
                EvalError::Type("assignments and declarations are statements, not values".into()),
            ),
        }
    }

    /// `xy^2` parses as one identifier raised to 2; the exponent belongs to `y`.
    fn split_power(&mut self, name: &str, exponent: &AstNode) -> Result<Option<Value>> {
        if name.starts_with('\\')
            || self.env.is_bound(name)
            || self.ctx().var_index(name).is_some()
            || self.tropical_sig().is_some()
        {
            return Ok(None);
        }
        let Some(parts) = split_identifier(name, &self.ctx().variables) else {
            return Ok(None);
        };
        if parts.len() < 2 {
            return Ok(None);
        }
        let e = self.eval(exponent)?;
        let n = self.exponent(&e)?;
        let n = u32::try_from(n).map_err(|_| {
            EvalError::Type("negative powers of variables are not polynomials".into())
        })?;
        self.product_of_variables(&parts, n).map(Some)
    }

    fn exponent(&self, v: &Value) -> Result<i64> {
        let n = match v {
            Value::Scalar(Scalar::Tropical(TropicalScalar::Finite(n))) => n.clone(),
            Value::Scalar(s) => s.to_number().expect("classical"),
            Value::Expr(e) => e
                .constant_value()
                .ok_or_else(|| EvalError::Type("exponents must be integer constants".into()))?,
            other => {
                return Err(EvalError::Type(format!(
                    "a {} cannot be an exponent",
                    other.kind()
                )))
            }
        };
        small_int(&n).ok_or_else(|| EvalError::Type("exponents must be integer constants".into()))
    }

    fn negate(&self, v: Value) -> Result<Value> {
        match v {
            Value::Scalar(Scalar::Tropical(t)) => {
                let sig = self
                    .tropical_sig()
                    .expect("tropical scalar in tropical space");
                let n = t.negated();
                sig.validate(&n)?;
                Ok(Value::Scalar(Scalar::Tropical(n)))
            }
            Value::Scalar(s) => {
                let n = s.to_number().expect("classical").negated();
                Ok(Value::Scalar(Scalar::from_number(
                    self.domain().expect("classical"),
                    &n,
                )?))
            }
            Value::Expr(e) => Ok(Value::Expr(e.neg())),
            other => Err(EvalError::Type(format!("cannot negate a {}", other.kind()))),
        }
    }

    fn as_expr(&self, v: &Value) -> Result<Expr> {
        match v {
            Value::Expr(e) => Ok(e.clone()),
            Value::Scalar(Scalar::Tropical(_)) => Err(EvalError::WrongSpace(
                "tropical value in a classical expression".into(),
            )),
            Value::Scalar(s) => Ok(Expr::constant(
                self.nvars(),
                s.to_number().expect("classical"),
            )),
            other => Err(EvalError::Type(format!(
                "expected an expression, got a {}",
                other.kind()
            ))),
        }
    }

    fn arith(&self, op: BinOp, a: Value, b: Value) -> Result<Value> {
        if let Some(sig) = self.tropical_sig() {
            return self.tropical_arith(sig, op, a, b);
        }
        let aop = match op {
            BinOp::Add => ArithOp::Add,
            BinOp::Sub => ArithOp::Sub,
            BinOp::Mul => ArithOp::Mul,
            BinOp::Div => ArithOp::Div,
            BinOp::Pow => ArithOp::Pow,
        };
        if let (Value::Scalar(x), Value::Scalar(y)) = (&a, &b) {
            return Ok(Value::Scalar(scalar_arith(&self.ctx().algebra, aop, x, y)?));
        }
        let x = self.as_expr(&a)?;
        Ok(Value::Expr(match op {
            BinOp::Add => x.add(&self.as_expr(&b)?),
            BinOp::Sub => x.sub(&self.as_expr(&b)?),
            BinOp::Mul => x.mul(&self.as_expr(&b)?),
            BinOp::Div => x.div(&self.as_expr(&b)?)?,
            BinOp::Pow => {
                let n = self.exponent(&b)?;
                let p = x.pow(
                    u32::try_from(n.unsigned_abs())
                        .map_err(|_| EvalError::Type("exponent too large".into()))?,
                );
                if n < 0 {
                    Expr::constant(self.nvars(), Number::one()).div(&p)?
                } else {
                    p
                }
            }
        }))
    }

    fn tropical_arith(
        &self,
        sig: TropicalSignature,
        op: BinOp,
        a: Value,
        b: Value,
    ) -> Result<Value> {
        let scalar_op =
            |op: ArithOp, x: &Scalar, y: &Scalar| scalar_arith(&self.ctx().algebra, op, x, y);
        match (op, a, b) {
            (BinOp::Pow, Value::Scalar(x), e) => {
                let n = self.exponent(&e)?;
                if n < 0 {
                    let inv = Scalar::Tropical(sig.inverse(match &x {
                        Scalar::Tropical(t) => t,
                        _ => unreachable!("tropical space"),
                    })?);
                    return Ok(Value::Scalar(scalar_op(
                        ArithOp::Pow,
                        &inv,
                        &Scalar::from(-n),
                    )?));
                }
                Ok(Value::Scalar(scalar_op(
                    ArithOp::Pow,
                    &x,
                    &Scalar::from(n),
                )?))
            }
            (BinOp::Pow, Value::Matrix(m), e) => {
                let n = self.exponent(&e)?;
                if n < 0 {
                    return Err(EvalError::Type(
                        "matrix powers need a nonnegative exponent".into(),
                    ));
                }
                let mut acc = TropicalMatrix::identity(sig, m.rows());
                for _ in 0..n {
                    acc = acc.mul(&m)?;
                }
                Ok(Value::Matrix(acc))
            }
            (BinOp::Sub, ..) => Err(EvalError::Scalar(ScalarError::DomainMismatch(format!(
                "subtraction is not defined in {sig}"
            )))),
            (op, Value::Scalar(x), Value::Scalar(y)) => {
                let aop = match op {
                    BinOp::Add => ArithOp::Add,
                    BinOp::Mul => ArithOp::Mul,
                    _ => ArithOp::Div,
                };
                Ok(Value::Scalar(scalar_op(aop, &x, &y)?))
            }
            (BinOp::Add, Value::Matrix(x), Value::Matrix(y)) => Ok(Value::Matrix(x.add(&y)?)),
            (BinOp::Mul, Value::Matrix(x), Value::Matrix(y)) => Ok(Value::Matrix(x.mul(&y)?)),
            (BinOp::Mul, Value::Scalar(Scalar::Tropical(s)), Value::Matrix(m))
            | (BinOp::Mul, Value::Matrix(m), Value::Scalar(Scalar::Tropical(s))) => {
                let rows = m
                    .row_vecs()
                    .into_iter()
                    .map(|r| {
                        r.iter()
                            .map(|v| sig.mul(&s, v))
                            .collect::<std::result::Result<Vec<_>, _>>()
                    })
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                Ok(Value::Matrix(TropicalMatrix::from_rows(sig, rows)?))
            }
            (op, a, b) => Err(EvalError::Type(format!(
                "{op:?} is not defined between a {} and a {}",
                a.kind(),
                b.kind()
            ))),
        }
    }

    fn tropical_entry(v: &Value) -> Result<TropicalScalar> {
        match v {
            Value::Scalar(Scalar::Tropical(t)) => Ok(t.clone()),
            other => Err(EvalError::Type(format!(
                "matrix entries must be scalars, got a {}",
                other.kind()
            ))),
        }
    }

    /// A list of lists is a matrix; a flat list is a column.
    fn matrix_from_list(
        &self,
        sig: TropicalSignature,
        values: Vec<Value>,
    ) -> Result<TropicalMatrix> {
        if !values.is_empty()
            && values
                .iter()
                .all(|v| matches!(v, Value::Matrix(m) if m.cols() == 1))
        {
            let rows = values
                .iter()
                .map(|v| match v {
                    Value::Matrix(m) => Ok(m.column_vec(0)),
                    _ => unreachable!(),
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(TropicalMatrix::from_rows(sig, rows)?);
        }
        let col = values
            .iter()
            .map(Self::tropical_entry)
            .collect::<Result<Vec<_>>>()?;
        Ok(TropicalMatrix::column(sig, col)?)
    }

    fn classical_only(&self, command: &str) -> Result<ClassicalDomain> {
        self.domain().ok_or_else(|| {
            EvalError::WrongSpace(format!(
                "\\{command} needs a classical space, not {}",
                self.ctx()
            ))
        })
    }

    fn tropical_only(&self, command: &str) -> Result<TropicalSignature> {
        self.tropical_sig().ok_or_else(|| {
            EvalError::WrongSpace(format!(
                "\\{command} needs a tropical space, not {}",
                self.ctx()
            ))
        })
    }

    fn call(&mut self, name: &str, args: &[AstNode], differential: Option<&str>) -> Result<Value> {
        if let Some(f) = Func::from_name(name) {
            return self.function(f, args);
        }
        match name {
            "print" | "prints" => Err(EvalError::Type(format!(
                "\\{name} can only be used as a statement"
            ))),
            "plot" => Err(EvalError::Unsupported("plotting".into())),
            "value" => self.value(args),
            "Factor" => {
                self.classical_only(name)?;
                let [arg] = args else {
                    return Err(arity(name, "1", args.len()));
                };
                match self.eval(arg)? {
                    Value::Expr(e) => Ok(Value::Expr(factor_expr(&e))),
                    other @ Value::Scalar(_) => Ok(other),
                    other => Err(EvalError::Type(format!("cannot factor a {}", other.kind()))),
                }
            }
            "int" => self.integrate(args, differential),
            "D" => self.derivative(args),
            "solve" => self.solve(args),
            "gbasis" => self.gbasis(args),
            "solveNAE" => self.solve_nae(args),
            "solveLAETropic" | "solveLAITropic" => {
                self.tropical_only(name)?;
                let [a, b] = args else {
                    return Err(arity(name, "2", args.len()));
                };
                let a = self.matrix_arg(a)?;
                let b = self.column_arg(b)?;
                let x = if name == "solveLAETropic" {
                    tropical::solve_lae(&a, &b)?
                } else {
                    tropical::solve_lai(&a, &b)?
                };
                Ok(Value::Matrix(x))
            }
            "BellmanEquation" => {
                self.tropical_only(name)?;
                match args {
                    [a] => {
                        let a = self.matrix_arg(a)?;
                        Ok(Value::Matrix(tropical::bellman_homogeneous(
                            &a,
                            self.cancel,
                        )?))
                    }
                    [a, b] => {
                        let a = self.matrix_arg(a)?;
                        let b = self.column_arg(b)?;
                        Ok(Value::Matrix(tropical::bellman(&a, &b, self.cancel)?))
                    }
                    _ => Err(arity(name, "1 or 2", args.len())),
                }
            }
            "searchLeastDistances" => {
                self.tropical_only(name)?;
                let [a] = args else {
                    return Err(arity(name, "1", args.len()));
                };
                let a = self.matrix_arg(a)?;
                Ok(Value::Matrix(tropical::search_least_distances(
                    &a,
                    self.cancel,
                )?))
            }
            "findTheShortestPath" => {
                self.tropical_only(name)?;
                let [a, i, j] = args else {
                    return Err(arity(name, "3", args.len()));
                };
                let a = self.matrix_arg(a)?;
                let n = a.rows();
                let i = self.node_index(i, n)?;
                let j = self.node_index(j, n)?;
                Ok(Value::Path(tropical::find_shortest_path(
                    &a,
                    i,
                    j,
                    self.cancel,
                )?))
            }
            other => Err(EvalError::Unsupported(format!("\\{other}"))),
        }
    }

    fn function(&mut self, f: Func, args: &[AstNode]) -> Result<Value> {
        self.classical_only(f.name())?;
        let [arg] = args else {
            return Err(arity(f.name(), "1", args.len()));
        };
        match self.eval(arg)? {
            Value::Scalar(s) => {
                let n = f.apply(&s.to_number().expect("classical"))?;
                let d = self.domain().expect("classical");
                Ok(Value::Scalar(Scalar::from_number(d, &n)?))
            }
            Value::Expr(e) => Ok(Value::Expr(Expr::apply(f, e))),
            other => Err(EvalError::Type(format!(
                "\\{} cannot take a {}",
                f.name(),
                other.kind()
            ))),
        }
    }

    fn value(&mut self, args: &[AstNode]) -> Result<Value> {
        self.classical_only("value")?;
        let (f, subs) = match args {
            [f] => (f, Vec::new()),
            [f, AstNode::List(items)] => (f, items.clone()),
            [f, single] => (f, vec![single.clone()]),
            _ => return Err(arity("value", "1 or 2", args.len())),
        };
        let e = match self.eval(f)? {
            Value::Expr(e) => e,
            s @ Value::Scalar(_) => return Ok(s),
            other => {
                return Err(EvalError::Type(format!(
                    "\\value needs an expression, got a {}",
                    other.kind()
                )))
            }
        };
        let n = self.nvars();
        if subs.len() > n {
            return Err(ExprError::Arity {
                expected: n,
                got: subs.len(),
            }
            .into());
        }
        let mut table: Vec<Option<Expr>> = vec![None; n];
        for (slot, node) in table.iter_mut().zip(&subs) {
            let v = self.eval(node)?;
            *slot = Some(self.as_expr(&v)?);
        }
        let out = e.substitute(&table);
        if out.has_variables() {
            return Ok(Value::Expr(out));
        }
        let number = out.evaluate(&vec![Number::zero(); n])?;
        Ok(Value::Scalar(Scalar::from_number(
            self.domain().expect("classical"),
            &number,
        )?))
    }

    /// Name of a differentiation or integration variable.
    fn variable_index(&self, name: &str) -> Result<usize> {
        self.ctx()
            .var_index(name)
            .ok_or_else(|| EvalError::Type(format!("'{name}' is not a variable of {}", self.ctx())))
    }

    fn default_variable(&self, e: &Expr, command: &str) -> Result<usize> {
        let used: Vec<usize> = match e {
            Expr::Poly(p) => p.variables_used(),
            _ => (0..self.nvars()).collect(),
        };
        match (used.as_slice(), self.nvars()) {
            ([i], _) => Ok(*i),
            (_, 1) | ([], _) => Ok(0),
            _ => Err(EvalError::Type(format!(
                "\\{command} needs the variable when several occur"
            ))),
        }
    }

    fn integrate(&mut self, args: &[AstNode], differential: Option<&str>) -> Result<Value> {
        self.classical_only("int")?;
        let [arg] = args else {
            return Err(arity("int", "1", args.len()));
        };
        let v = self.eval(arg)?;
        let e = self.as_expr(&v)?;
        let p = e.as_poly().ok_or(ExprError::NonPolynomialIntegrand)?;
        let idx = match differential {
            Some(name) => self.variable_index(name)?,
            None => self.default_variable(&e, "int")?,
        };
        Ok(Value::Expr(Expr::Poly(p.integrate(idx))))
    }

    /// `\D(f)`, `\D(f, x)`, `\D(f, x^n)` and `\D(f, x, n)`.
    fn derivative(&mut self, args: &[AstNode]) -> Result<Value> {
        self.classical_only("D")?;
        if args.is_empty() || args.len() > 3 {
            return Err(arity("D", "1 to 3", args.len()));
        }
        let v = self.eval(&args[0])?;
        let e = self.as_expr(&v)?;
        let (idx, mut order) = match args.get(1) {
            None => (self.default_variable(&e, "D")?, 1),
            Some(AstNode::Var(name)) => (self.variable_index(name)?, 1),
            Some(AstNode::Binary {
                op: BinOp::Pow,
                lhs,
                rhs,
            }) => match (lhs.as_ref(), rhs.as_ref()) {
                (AstNode::Var(name), AstNode::Number(k)) => (
                    self.variable_index(name)?,
                    k.parse::<u32>().map_err(|_| {
                        EvalError::Type("derivative order must be a positive integer".into())
                    })?,
                ),
                _ => return Err(EvalError::Type("write the variable as x or x^n".into())),
            },
            Some(_) => return Err(EvalError::Type("write the variable as x or x^n".into())),
        };
        if let Some(n) = args.get(2) {
            let k = self.eval(n)?;
            order = u32::try_from(self.exponent(&k)?)
                .map_err(|_| EvalError::Type("derivative order must be positive".into()))?;
        }
        let mut out = e;
        for _ in 0..order {
            self.cancel.check()?;
            out = out.derivative(idx);
        }
        Ok(Value::Expr(out))
    }

    fn solve(&mut self, args: &[AstNode]) -> Result<Value> {
        let domain = self.classical_only("solve")?;
        let [arg] = args else {
            return Err(arity("solve", "1", args.len()));
        };
        let (op, e) = match arg {
            AstNode::Relation { op, lhs, rhs } => {
                let l = self.eval(lhs)?;
                let r = self.eval(rhs)?;
                (*op, self.as_expr(&l)?.sub(&self.as_expr(&r)?))
            }
            other => {
                let v = self.eval(other)?;
                (RelOp::Eq, self.as_expr(&v)?)
            }
        };
        let p = e.as_poly().ok_or_else(|| {
            EvalError::Type("\\solve handles polynomial equations and inequalities".into())
        })?;
        let idx = match p.variables_used().as_slice() {
            [] => 0,
            [i] => *i,
            _ => return Err(SolveError::NotUnivariate.into()),
        };
        let coeffs = p.to_univariate(idx).ok_or(SolveError::NotUnivariate)?;
        if op == RelOp::Eq {
            return Ok(Value::Roots(solve_univariate(&coeffs, self.cancel)?));
        }
        if domain == ClassicalDomain::C64 {
            return Err(EvalError::WrongSpace(
                "inequalities need a real space".into(),
            ));
        }
        Ok(Value::Intervals(solve_inequality(
            &coeffs,
            op,
            self.cancel,
        )?))
    }

    fn polynomial_args(&mut self, command: &str, args: &[AstNode]) -> Result<Vec<Poly>> {
        self.classical_only(command)?;
        let nodes: Vec<AstNode> = match args {
            [AstNode::List(items)] => items.clone(),
            _ => args.to_vec(),
        };
        if nodes.is_empty() {
            return Err(arity(command, "at least 1", 0));
        }
        let mut out = Vec::with_capacity(nodes.len());
        for n in &nodes {
            let v = self.eval(n)?;
            match self.as_expr(&v)? {
                Expr::Poly(p) => out.push(p),
                _ => return Err(EvalError::Type(format!("\\{command} takes polynomials"))),
            }
        }
        Ok(out)
    }

    fn gbasis(&mut self, args: &[AstNode]) -> Result<Value> {
        let polys = self.polynomial_args("gbasis", args)?;
        let system = rational_system(&polys).ok_or(SolveError::ComplexCoefficients)?;
        let basis = groebner_basis(&system, self.cancel)?;
        Ok(Value::List(
            basis
                .iter()
                .map(|g| {
                    Value::Expr(Expr::Poly(
                        g.map_coefficients(|c| Number::Rational(c.clone())),
                    ))
                })
                .collect(),
        ))
    }

    fn solve_nae(&mut self, args: &[AstNode]) -> Result<Value> {
        let polys = self.polynomial_args("solveNAE", args)?;
        let system = rational_system(&polys).ok_or(SolveError::ComplexCoefficients)?;
        Ok(Value::Solutions(solve_nae(&system, self.cancel)?))
    }

    fn matrix_arg(&mut self, node: &AstNode) -> Result<TropicalMatrix> {
        let sig = self.tropical_sig().expect("checked by caller");
        match self.eval(node)? {
            Value::Matrix(m) => Ok(m),
            Value::Scalar(Scalar::Tropical(t)) => {
                Ok(TropicalMatrix::from_rows(sig, vec![vec![t]])?)
            }
            other => Err(EvalError::Type(format!(
                "expected a matrix, got a {}",
                other.kind()
            ))),
        }
    }

    /// Column vectors may be written as `[a, b]` or `[[a], [b]]`.
    fn column_arg(&mut self, node: &AstNode) -> Result<TropicalMatrix> {
        let m = self.matrix_arg(node)?;
        if m.cols() == 1 || m.rows() != 1 {
            return Ok(m);
        }
        Ok(TropicalMatrix::column(m.signature, m.row_vecs().remove(0))?)
    }

    fn node_index(&mut self, node: &AstNode, n: usize) -> Result<usize> {
        let v = self.eval(node)?;
        let k = self.exponent(&v)?;
        if k < 1 || k as usize > n {
            return Err(TropicalLinearError::IndexOutOfRange {
                index: k.max(0) as usize,
                n,
            }
            .into());
        }
        Ok(k as usize - 1)
    }
}
