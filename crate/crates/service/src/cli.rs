//! `run` and `repl` front ends.

use std::io::{BufRead, Write};

use mathpar::cancel::CancelToken;
use mathpar::poly::Markup;
use mathpar::session::{execute_section, Environment, ExecutionResult};
use mathpar::space::SpaceContext;

/// Flags shared by `run` and `repl`.
#[derive(Debug, Clone, Default)]
pub struct Options {
    pub latex: bool,
    pub space: Option<String>,
    pub floatpos: Option<u32>,
}

impl Options {
    fn markup(&self) -> Markup {
        if self.latex {
            Markup::Latex
        } else {
            Markup::Mathpar
        }
    }

    /// The starting environment; fails on a malformed `--space`.
    pub fn environment(&self) -> Result<Environment, String> {
        let mut space = match &self.space {
            Some(s) => SpaceContext::parse(s).map_err(|e| format!("--space {s}: {e}"))?,
            None => SpaceContext::default(),
        };
        if let Some(fp) = self.floatpos {
            space.floatpos = fp;
        }
        Ok(Environment::with_space(space))
    }
}

fn report(
    result: &ExecutionResult,
    markup: Markup,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<()> {
    for line in result.lines(markup) {
        writeln!(out, "{line}")?;
    }
    for d in &result.diagnostics {
        writeln!(
            err,
            "{:?} at {}:{}: {}",
            d.severity, d.line, d.column, d.message
        )?;
    }
    Ok(())
}

/// Executes a whole file as one section. Returns the process exit code.
pub fn run_file(
    path: &std::path::Path,
    opts: &Options,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let source = match std::fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "cannot read {}: {e}", path.display());
            return 2;
        }
    };
    let mut env = match opts.environment() {
        Ok(env) => env,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            return 2;
        }
    };
    let result = execute_section(&mut env, &source, &CancelToken::new());
    let _ = report(&result, opts.markup(), out, err);
    i32::from(result.has_errors())
}

/// Reads groups of lines ended by a blank line and runs each as a section
/// against one environment. Returns 1 if any section reported an error.
pub fn repl(
    input: &mut dyn BufRead,
    opts: &Options,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let mut env = match opts.environment() {
        Ok(env) => env,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            return 2;
        }
    };
    let mut any_error = false;
    let mut group = String::new();
    let mut run_group =
        |group: &mut String, env: &mut Environment, out: &mut dyn Write, err: &mut dyn Write| {
            if group.trim().is_empty() {
                group.clear();
                return;
            }
            let result = execute_section(env, group, &CancelToken::new());
            any_error |= result.has_errors();
            let _ = report(&result, opts.markup(), out, err);
            let _ = out.flush();
            group.clear();
        };
    let mut line = String::new();
    loop {
        line.clear();
        match input.read_line(&mut line) {
            Ok(0) | Err(_) => break,
            Ok(_) if line.trim().is_empty() => run_group(&mut group, &mut env, out, err),
            Ok(_) => group.push_str(&line),
        }
    }
    run_group(&mut group, &mut env, out, err);
    i32::from(any_error)
}
