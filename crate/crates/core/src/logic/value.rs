use std::fmt;

/// A ground object constant or domain value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Int(i64),
    Sym(String),
}

impl Value {
    pub fn sym(s: impl Into<String>) -> Self {
        Value::Sym(s.into())
    }

    /// The Boolean `t` value.
    pub fn t() -> Self {
        Value::Sym("t".to_string())
    }

    /// The Boolean `f` value.
    pub fn f() -> Self {
        Value::Sym("f".to_string())
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Value::Int(i) => Some(*i),
            Value::Sym(_) => None,
        }
    }

    pub fn is_true_value(&self) -> bool {
        matches!(self, Value::Sym(s) if s == "t")
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(i) => write!(f, "{i}"),
            Value::Sym(s) => f.write_str(s),
        }
    }
}

impl From<i64> for Value {
    fn from(i: i64) -> Self {
        Value::Int(i)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Sym(s.to_string())
    }
}

/// A ground atom `c(args)=v`. A missing value is the Boolean reading `c(args)=t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundAtom {
    pub symbol: String,
    pub args: Vec<Value>,
    pub value: Option<Value>,
}

impl GroundAtom {
    pub fn new(symbol: impl Into<String>, args: Vec<Value>) -> Self {
        GroundAtom {
            symbol: symbol.into(),
            args,
            value: None,
        }
    }

    pub fn prop(symbol: impl Into<String>) -> Self {
        GroundAtom::new(symbol, Vec::new())
    }

    pub fn with_value(symbol: impl Into<String>, args: Vec<Value>, value: Value) -> Self {
        GroundAtom {
            symbol: symbol.into(),
            args,
            value: Some(value),
        }
    }

    /// The constant `c(args)` this atom assigns a value to.
    pub fn constant(&self) -> ConstantKey {
        ConstantKey {
            symbol: self.symbol.clone(),
            args: self.args.clone(),
        }
    }

    /// The assigned value, reading a missing value as `t`.
    pub fn value_or_true(&self) -> Value {
        self.value.clone().unwrap_or_else(Value::t)
    }
}

impl fmt::Display for GroundAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_application(f, &self.symbol, &self.args)?;
        if let Some(v) = &self.value {
            write!(f, "={v}")?;
        }
        Ok(())
    }
}

/// A ground constant `c(args)` of a multi-valued signature.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConstantKey {
    pub symbol: String,
    pub args: Vec<Value>,
}

impl ConstantKey {
    pub fn atom(&self, value: Option<Value>) -> GroundAtom {
        GroundAtom {
            symbol: self.symbol.clone(),
            args: self.args.clone(),
            value,
        }
    }
}

impl fmt::Display for ConstantKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_application(f, &self.symbol, &self.args)
    }
}

pub(crate) fn write_application<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    symbol: &str,
    args: &[T],
) -> fmt::Result {
    f.write_str(symbol)?;
    if !args.is_empty() {
        f.write_str("(")?;
        for (i, a) in args.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")?;
    }
    Ok(())
}
