//! Univariate polynomial inequalities over the reals by sign chart.

use super::roots::solve_univariate;
use super::SolveError;
use crate::cancel::CancelToken;
use crate::space::{format_float, Coefficient, Number};
use crate::syntax::RelOp;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound {
    NegInf,
    Finite(f64),
    PosInf,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: Bound,
    pub hi: Bound,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn point(x: f64) -> Self {
        Interval {
            lo: Bound::Finite(x),
            hi: Bound::Finite(x),
            lo_closed: true,
            hi_closed: true,
        }
    }

    pub fn is_point(&self) -> bool {
        matches!((self.lo, self.hi), (Bound::Finite(a), Bound::Finite(b)) if a == b)
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = match self.lo {
            Bound::NegInf => true,
            Bound::Finite(a) => x > a || (self.lo_closed && x == a),
            Bound::PosInf => false,
        };
        let below = match self.hi {
            Bound::PosInf => true,
            Bound::Finite(b) => x < b || (self.hi_closed && x == b),
            Bound::NegInf => false,
        };
        above && below
    }
}

/// Disjoint, ascending, non-adjacent components.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct IntervalSet {
    pub components: Vec<Interval>,
}

impl IntervalSet {
    pub fn real_line() -> Self {
        IntervalSet {
            components: vec![Interval {
                lo: Bound::NegInf,
                hi: Bound::PosInf,
                lo_closed: false,
                hi_closed: false,
            }],
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.components.iter().any(|c| c.contains(x))
    }

    /// `(-\infty, -5]\cup\{-1\}\cup[3, \infty)`; the same text serves both
    /// output modes.
    pub fn render(&self, floatpos: u32) -> String {
        if self.components.is_empty() {
            return "\\emptyset".into();
        }
        self.components
            .iter()
            .map(|c| {
                if c.is_point() {
                    format!("\\{{{}\\}}", endpoint(c.lo, floatpos))
                } else {
                    format!(
                        "{}{}, {}{}",
                        if c.lo_closed { '[' } else { '(' },
                        endpoint(c.lo, floatpos),
                        endpoint(c.hi, floatpos),
                        if c.hi_closed { ']' } else { ')' }
                    )
                }
            })
            .collect::<Vec<_>>()
            .join("\\cup")
    }
}

fn endpoint(b: Bound, floatpos: u32) -> String {
    match b {
        Bound::NegInf => "-\\infty".into(),
        Bound::PosInf => "\\infty".into(),
        Bound::Finite(v) if v.fract() == 0.0 && v.abs() < 1e15 => format!("{}", v as i64),
        Bound::Finite(v) => format_float(v, floatpos),
    }
}

fn holds(op: RelOp, sign: i8) -> bool {
    match op {
        RelOp::Gt => sign > 0,
        RelOp::Ge => sign >= 0,
        RelOp::Lt => sign < 0,
        RelOp::Le => sign <= 0,
        RelOp::Eq => sign == 0,
    }
}

/// Solution set of `p(x) op 0` for real ascending coefficients `p`.
pub fn solve_inequality(
    coeffs: &[Number],
    op: RelOp,
    cancel: &CancelToken,
) -> Result<IntervalSet, SolveError> {
    if coeffs.iter().any(|c| !c.is_real()) {
        return Err(SolveError::ComplexCoefficients);
    }
    let mut coeffs = coeffs.to_vec();
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    let Some(lead) = coeffs.last() else {
        return Ok(if holds(op, 0) {
            IntervalSet::real_line()
        } else {
            IntervalSet::default()
        });
    };
    let lead_sign: i8 = if lead.is_negative() { -1 } else { 1 };
    let real_roots = if coeffs.len() > 1 {
        solve_univariate(&coeffs, cancel)?.real_roots()
    } else {
        Vec::new()
    };

    // Pieces left to right: gap, root, gap, ..., root, gap.
    let k = real_roots.len();
    let mut gap_signs = vec![lead_sign; k + 1];
    for i in (0..k).rev() {
        let flip = real_roots[i].1 % 2 == 1;
        gap_signs[i] = if flip {
            -gap_signs[i + 1]
        } else {
            gap_signs[i + 1]
        };
    }
    let mut components: Vec<Interval> = Vec::new();
    let mut current: Option<Interval> = None;
    for i in 0..=k {
        let lo = if i == 0 {
            Bound::NegInf
        } else {
            Bound::Finite(real_roots[i - 1].0)
        };
        let hi = if i == k {
            Bound::PosInf
        } else {
            Bound::Finite(real_roots[i].0)
        };
        if holds(op, gap_signs[i]) {
            current = Some(match current.take() {
                Some(mut c) => {
                    c.hi = hi;
                    c.hi_closed = false;
                    c
                }
                None => Interval {
                    lo,
                    hi,
                    lo_closed: false,
                    hi_closed: false,
                },
            });
        } else if let Some(c) = current.take() {
            components.push(c);
        }
        if i < k {
            let r = real_roots[i].0;
            if holds(op, 0) {
                current = Some(match current.take() {
                    Some(mut c) => {
                        c.hi_closed = true;
                        c
                    }
                    None => Interval::point(r),
                });
            } else if let Some(c) = current.take() {
                components.push(c);
            }
        }
    }
    components.extend(current);
    Ok(IntervalSet { components })
}
