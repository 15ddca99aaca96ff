//! The registered backslash vocabulary.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandClass {
    /// Called with a parenthesized argument list.
    Function,
    /// Stands alone as a value: `\infty`, `\pi`, `\i`, Greek letters.
    Constant,
    /// Capitalized names reserved for noncommutative algebra elements.
    NoncommutativeSymbol,
    Relation,
    Product,
}

pub const FUNCTIONS: &[&str] = &[
    "print",
    "prints",
    "plot",
    "value",
    "Factor",
    "int",
    "D",
    "solve",
    "gbasis",
    "solveNAE",
    "solveLAETropic",
    "solveLAITropic",
    "BellmanEquation",
    "searchLeastDistances",
    "findTheShortestPath",
    "sin",
    "cos",
    "tg",
    "ctg",
    "ln",
    "exp",
];

const CONSTANTS: &[&str] = &[
    "infty", "pi", "i", "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta",
    "iota", "kappa", "lambda", "mu", "nu", "xi", "rho", "sigma", "tau", "upsilon", "phi", "chi",
    "psi", "omega",
];

pub fn classify(name: &str) -> Option<CommandClass> {
    if FUNCTIONS.contains(&name) {
        return Some(CommandClass::Function);
    }
    if CONSTANTS.contains(&name) {
        return Some(CommandClass::Constant);
    }
    match name {
        "le" | "leq" | "ge" | "geq" => return Some(CommandClass::Relation),
        "cdot" | "times" => return Some(CommandClass::Product),
        _ => {}
    }
    if name.starts_with(|c: char| c.is_ascii_uppercase()) {
        return Some(CommandClass::NoncommutativeSymbol);
    }
    None
}

/// Names whose output statements count as printing.
pub fn is_print_like(name: &str) -> bool {
    matches!(name, "print" | "prints")
}
