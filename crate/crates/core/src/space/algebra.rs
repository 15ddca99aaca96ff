//! Algebra names and the active SPACE.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("unknown algebra '{0}'")]
    UnknownAlgebra(String),
    #[error("invalid tropical signature '{0}': addition and multiplication are the same lattice operation")]
    InvalidSignature(String),
    #[error("variable '{0}' is declared twice")]
    DuplicateVariable(String),
    #[error("a space needs at least one variable")]
    NoVariables,
}

/// Classical coefficient domains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassicalDomain {
    /// Arbitrary-precision integers.
    Z,
    /// Exact rationals.
    Q,
    /// Reals, backed by exact rationals and displayed with FLOATPOS digits.
    R,
    /// IEEE doubles.
    R64,
    /// Complex doubles.
    C64,
}

impl ClassicalDomain {
    pub fn name(self) -> &'static str {
        match self {
            ClassicalDomain::Z => "Z",
            ClassicalDomain::Q => "Q",
            ClassicalDomain::R => "R",
            ClassicalDomain::R64 => "R64",
            ClassicalDomain::C64 => "C64",
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(
            self,
            ClassicalDomain::Z | ClassicalDomain::Q | ClassicalDomain::R
        )
    }

    pub fn is_floating(self) -> bool {
        !self.is_exact()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Carrier {
    Z,
    R,
    R64,
}

impl Carrier {
    pub fn name(self) -> &'static str {
        match self {
            Carrier::Z => "Z",
            Carrier::R => "R",
            Carrier::R64 => "R64",
        }
    }
}

/// The operation playing the role of tropical addition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AddOp {
    Max,
    Min,
}

impl AddOp {
    pub fn name(self) -> &'static str {
        match self {
            AddOp::Max => "Max",
            AddOp::Min => "Min",
        }
    }

    pub fn dual(self) -> AddOp {
        match self {
            AddOp::Max => AddOp::Min,
            AddOp::Min => AddOp::Max,
        }
    }
}

/// The operation playing the role of tropical multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MulOp {
    Plus,
    Mult,
    Max,
    Min,
}

impl MulOp {
    pub fn name(self) -> &'static str {
        match self {
            MulOp::Plus => "Plus",
            MulOp::Mult => "Mult",
            MulOp::Max => "Max",
            MulOp::Min => "Min",
        }
    }

    /// Plus and Mult have inverses on finite nonzero elements; the lattice
    /// operations do not.
    pub fn is_invertible(self) -> bool {
        matches!(self, MulOp::Plus | MulOp::Mult)
    }
}

/// Carrier set plus the operations standing in for `+` and `×`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TropicalSignature {
    pub carrier: Carrier,
    pub add: AddOp,
    pub mul: MulOp,
}

impl TropicalSignature {
    pub fn new(carrier: Carrier, add: AddOp, mul: MulOp) -> Result<Self, SpaceError> {
        let sig = TropicalSignature { carrier, add, mul };
        match (add, mul) {
            (AddOp::Max, MulOp::Max) | (AddOp::Min, MulOp::Min) => {
                Err(SpaceError::InvalidSignature(sig.name()))
            }
            _ => Ok(sig),
        }
    }

    pub fn name(&self) -> String {
        format!(
            "{}{}{}",
            self.carrier.name(),
            self.add.name(),
            self.mul.name()
        )
    }

    /// Every valid signature: 3 carriers × 6 operation pairs.
    pub fn catalog() -> Vec<TropicalSignature> {
        let mut out = Vec::with_capacity(18);
        for carrier in [Carrier::Z, Carrier::R, Carrier::R64] {
            for add in [AddOp::Max, AddOp::Min] {
                for mul in [MulOp::Plus, MulOp::Mult, MulOp::Max, MulOp::Min] {
                    if let Ok(sig) = TropicalSignature::new(carrier, add, mul) {
                        out.push(sig);
                    }
                }
            }
        }
        out
    }

    pub fn is_semifield(&self) -> bool {
        self.mul.is_invertible()
    }
}

impl fmt::Display for TropicalSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgebraTag {
    Classical(ClassicalDomain),
    Tropical(TropicalSignature),
}

impl AlgebraTag {
    pub fn name(&self) -> String {
        match self {
            AlgebraTag::Classical(d) => d.name().to_string(),
            AlgebraTag::Tropical(s) => s.name(),
        }
    }

    pub fn classical(&self) -> Option<ClassicalDomain> {
        match self {
            AlgebraTag::Classical(d) => Some(*d),
            AlgebraTag::Tropical(_) => None,
        }
    }

    pub fn tropical(&self) -> Option<TropicalSignature> {
        match self {
            AlgebraTag::Tropical(s) => Some(*s),
            AlgebraTag::Classical(_) => None,
        }
    }
}

impl fmt::Display for AlgebraTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl std::str::FromStr for AlgebraTag {
    type Err = SpaceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        resolve_algebra(s)
    }
}

fn strip_any<'a, T: Copy>(s: &'a str, options: &[(&str, T)]) -> Option<(T, &'a str)> {
    options
        .iter()
        .find_map(|(prefix, v)| s.strip_prefix(prefix).map(|rest| (*v, rest)))
}

/// Maps an algebra name to its tag.
///
/// Tropical names are `<carrier><add><mul>`, e.g. `ZMaxMult` or `R64MinPlus`.
pub fn resolve_algebra(name: &str) -> Result<AlgebraTag, SpaceError> {
    let classical = match name {
        "Z" => Some(ClassicalDomain::Z),
        "Q" => Some(ClassicalDomain::Q),
        "R" => Some(ClassicalDomain::R),
        "R64" => Some(ClassicalDomain::R64),
        "C64" => Some(ClassicalDomain::C64),
        _ => None,
    };
    if let Some(d) = classical {
        return Ok(AlgebraTag::Classical(d));
    }
    let unknown = || SpaceError::UnknownAlgebra(name.to_string());
    // R64 must be tried before R.
    let (carrier, rest) = strip_any(
        name,
        &[("R64", Carrier::R64), ("Z", Carrier::Z), ("R", Carrier::R)],
    )
    .ok_or_else(unknown)?;
    let (add, rest) =
        strip_any(rest, &[("Max", AddOp::Max), ("Min", AddOp::Min)]).ok_or_else(unknown)?;
    let mul = match rest {
        "Plus" => MulOp::Plus,
        "Mult" => MulOp::Mult,
        "Max" => MulOp::Max,
        "Min" => MulOp::Min,
        _ => return Err(unknown()),
    };
    TropicalSignature::new(carrier, add, mul).map(AlgebraTag::Tropical)
}

pub const DEFAULT_FLOATPOS: u32 = 2;

/// The active algebraic environment.
///
/// Variables are listed in ascending significance: the first is the smallest
/// and the last the most significant in lexicographic orders.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpaceContext {
    pub algebra: AlgebraTag,
    pub variables: Vec<String>,
    pub floatpos: u32,
}

impl Default for SpaceContext {
    fn default() -> Self {
        SpaceContext {
            algebra: AlgebraTag::Classical(ClassicalDomain::R64),
            variables: ["x", "y", "z", "t"].iter().map(|s| s.to_string()).collect(),
            floatpos: DEFAULT_FLOATPOS,
        }
    }
}

impl SpaceContext {
    pub fn new(algebra: AlgebraTag, variables: Vec<String>) -> Result<Self, SpaceError> {
        if variables.is_empty() {
            return Err(SpaceError::NoVariables);
        }
        for (i, v) in variables.iter().enumerate() {
            if variables[..i].contains(v) {
                return Err(SpaceError::DuplicateVariable(v.clone()));
            }
        }
        Ok(SpaceContext {
            algebra,
            variables,
            floatpos: DEFAULT_FLOATPOS,
        })
    }

    /// Parses `Name[v1, ..., vk]`.
    pub fn parse(spec: &str) -> Result<Self, SpaceError> {
        let spec = spec.trim();
        let (name, vars) = match spec.split_once('[') {
            Some((name, rest)) => {
                let inner = rest
                    .strip_suffix(']')
                    .ok_or_else(|| SpaceError::UnknownAlgebra(spec.to_string()))?;
                let vars = inner
                    .split(',')
                    .map(|v| v.trim().to_string())
                    .filter(|v| !v.is_empty())
                    .collect();
                (name.trim(), vars)
            }
            None => (spec, Vec::new()),
        };
        let algebra = resolve_algebra(name)?;
        SpaceContext::new(algebra, vars)
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    pub fn domain(&self) -> Option<ClassicalDomain> {
        self.algebra.classical()
    }

    /// Same algebra and variables; FLOATPOS is display-only and ignored.
    pub fn compatible(&self, other: &SpaceContext) -> bool {
        self.algebra == other.algebra && self.variables == other.variables
    }
}

impl fmt::Display for SpaceContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.algebra, self.variables.join(", "))
    }
}
