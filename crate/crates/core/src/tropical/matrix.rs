use thiserror::Error;

use crate::cancel::Cancelled;
use crate::space::{format_tropical, TropicalError, TropicalScalar, TropicalSignature};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TropicalLinearError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrices over {0} and {1} cannot be combined")]
    SignatureMismatch(String, String),
    #[error("the closure diverges: the matrix has a cycle that keeps improving")]
    StarDiverges,
    #[error("A x = b has no solution; the greatest subsolution is {}", .subsolution.render_mathpar(2))]
    NoSolution { subsolution: Box<TropicalMatrix> },
    #[error("node {to} cannot be reached from node {from}")]
    Unreachable { from: usize, to: usize },
    #[error("node index {index} is outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error(transparent)]
    Scalar(#[from] TropicalError),
    #[error(transparent)]
    Cancelled(#[from] Cancelled),
}

/// Dense row-major matrix over one tropical signature.
#[derive(Debug, Clone, PartialEq)]
pub struct TropicalMatrix {
    pub signature: TropicalSignature,
    rows: usize,
    cols: usize,
    data: Vec<TropicalScalar>,
}

type Result<T> = std::result::Result<T, TropicalLinearError>;

impl TropicalMatrix {
    pub fn from_rows(signature: TropicalSignature, rows: Vec<Vec<TropicalScalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(TropicalLinearError::DimensionMismatch(
                "rows have different lengths".into(),
            ));
        }
        let data: Vec<TropicalScalar> = rows.into_iter().flatten().collect();
        for v in &data {
            signature.validate(v)?;
        }
        Ok(TropicalMatrix {
            signature,
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn column(signature: TropicalSignature, values: Vec<TropicalScalar>) -> Result<Self> {
        Self::from_rows(signature, values.into_iter().map(|v| vec![v]).collect())
    }

    pub fn filled(
        signature: TropicalSignature,
        rows: usize,
        cols: usize,
        v: TropicalScalar,
    ) -> Self {
        TropicalMatrix {
            signature,
            rows,
            cols,
            data: vec![v; rows * cols],
        }
    }

    pub fn zeros(signature: TropicalSignature, rows: usize, cols: usize) -> Self {
        Self::filled(signature, rows, cols, signature.zero())
    }

    pub fn identity(signature: TropicalSignature, n: usize) -> Self {
        let mut m = Self::zeros(signature, n, n);
        for i in 0..n {
            m.set(i, i, signature.unit());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &TropicalScalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: TropicalScalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row_vecs(&self) -> Vec<Vec<TropicalScalar>> {
        (0..self.rows)
            .map(|r| self.data[r * self.cols..(r + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn column_vec(&self, c: usize) -> Vec<TropicalScalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    fn same_signature(&self, other: &Self) -> Result<()> {
        if self.signature != other.signature {
            return Err(TropicalLinearError::SignatureMismatch(
                self.signature.name(),
                other.signature.name(),
            ));
        }
        Ok(())
    }

    /// Entrywise ⊕.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_signature(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(TropicalLinearError::DimensionMismatch(format!(
                "{}x{} ⊕ {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let sig = self.signature;
        Ok(TropicalMatrix {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| sig.add(a, b))
                .collect(),
            ..self.clone()
        })
    }

    fn product(
        &self,
        other: &Self,
        mul: impl Fn(&TropicalScalar, &TropicalScalar) -> Result<TropicalScalar>,
    ) -> Result<Self> {
        self.same_signature(other)?;
        if self.cols != other.rows {
            return Err(TropicalLinearError::DimensionMismatch(format!(
                "{}x{} ⊗ {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let sig = self.signature;
        let mut out = Self::zeros(sig, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = sig.zero();
                for k in 0..self.cols {
                    acc = sig.add(&acc, &mul(self.get(i, k), other.get(k, j))?);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// ⊗-⊕ matrix product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let sig = self.signature;
        self.product(other, |a, b| Ok(sig.mul(a, b)?))
    }

    /// Product in which the additive identity absorbs; used when one side may
    /// hold the residuation top element.
    pub fn mul_absorbing(&self, other: &Self) -> Result<Self> {
        let sig = self.signature;
        self.product(other, |a, b| Ok(sig.mul_absorbing(a, b)))
    }

    /// Componentwise ⊕-order.
    pub fn le(&self, other: &Self) -> bool {
        self.data
            .iter()
            .zip(&other.data)
            .all(|(a, b)| self.signature.le(a, b))
    }

    pub fn render_mathpar(&self, floatpos: u32) -> String {
        let rows: Vec<String> = self
            .row_vecs()
            .iter()
            .map(|r| {
                format!(
                    "[{}]",
                    r.iter()
                        .map(|v| format_tropical(v, floatpos))
                        .collect::<Vec<_>>()
                        .join(",")
                )
            })
            .collect();
        format!("[{}]", rows.join(","))
    }

    pub fn render_latex(&self, floatpos: u32) -> String {
        if self.cols == 0 {
            return "\\emptyset".into();
        }
        let cells: Vec<Vec<String>> = self
            .row_vecs()
            .iter()
            .map(|r| r.iter().map(|v| format_tropical(v, floatpos)).collect())
            .collect();
        crate::syntax::latex_array(&cells)
    }
}
