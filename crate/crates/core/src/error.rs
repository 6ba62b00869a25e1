use std::fmt;

use thiserror::Error;

/// Location of a problem in source text (1-based line and column).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SourceSpan {
    pub file: Option<String>,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.file {
            Some(file) => write!(f, "{file}:{}:{}", self.line, self.column),
            None => write!(f, "{}:{}", self.line, self.column),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
#[error("{span}: {message}{}", expected_suffix(.expected))]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
    pub expected: Vec<String>,
}

fn expected_suffix(expected: &[String]) -> String {
    if expected.is_empty() {
        String::new()
    } else {
        format!(" (expected one of: {})", expected.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
#[error("{}{message}", .span.as_ref().map(|s| format!("{s}: ")).unwrap_or_default())]
pub struct ValidationError {
    pub span: Option<SourceSpan>,
    pub message: String,
}

impl ValidationError {
    pub fn new(message: impl Into<String>) -> Self {
        ValidationError {
            span: None,
            message: message.into(),
        }
    }

    pub fn at(span: SourceSpan, message: impl Into<String>) -> Self {
        ValidationError {
            span: Some(span),
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error("atom {0} is not in the signature")]
    UnknownAtom(String),
    #[error("query contains variable {0}; queries must be ground")]
    NonGroundQuery(String),

    #[error("grounding would produce {count} instances, above the cap of {cap}")]
    GroundingExplosion { count: u128, cap: usize },
    #[error("domain {0} is empty")]
    EmptyDomain(String),
    #[error("unknown domain {0}")]
    UnknownDomain(String),
    #[error("builtin evaluation failed: {0}")]
    Builtin(String),

    #[error("{atoms} atoms exceed the enumeration cap of {cap}")]
    UniverseExplosion { atoms: usize, cap: usize },
    #[error("minimality check over {atoms} atoms exceeds the subset cap of {cap}")]
    SubsetExplosion { atoms: usize, cap: usize },
    #[error("loop enumeration exceeds the cap of {cap} loops")]
    LoopExplosion { cap: usize },
    #[error("search exceeded the budget of {cap} nodes")]
    SearchBudget { cap: u64 },

    #[error("no stable model satisfies every hard rule")]
    NoHardConsistentModel,
    #[error("the condition has probability zero")]
    ConditionHasZeroProbability,
    #[error("the program has no stable model")]
    NoStableModel,
    #[error("program is not tight (positive dependency graph has a cycle)")]
    NotTight,
    #[error("ProbLog program is not well-defined: total choice {0} yields {1} stable models")]
    NotWellDefined(String, usize),
    #[error("probability 0 declared for {0}")]
    ZeroProbabilityDeclared(String),
    #[error("no consistent interpretation is a stable model together with its total choice")]
    EmptySmDoublePrime,
    #[error("P-log program has no possible world")]
    Inconsistent,
    #[error("every possible world has unnormalized probability 0")]
    AllZeroMeasure,
    #[error("default probability undefined for {0}: no unassigned value remains")]
    DefaultProbabilityUndefined(String),
    #[error("invalid program:\n{}", .0.join("\n"))]
    Diagnostics(Vec<String>),
    #[error("property violated: {0}")]
    PropertyViolation(String),
}

impl Error {
    /// Parse and validation problems are input errors; everything else is semantic.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse(_)
                | Error::Validation(_)
                | Error::UnknownAtom(_)
                | Error::NonGroundQuery(_)
                | Error::UnknownDomain(_)
                | Error::EmptyDomain(_)
                | Error::Diagnostics(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
