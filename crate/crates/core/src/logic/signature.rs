use indexmap::IndexMap;

use super::value::{GroundAtom, Value};
use crate::error::{Error, Result, ValidationError};

/// Reserved domain name for `{t, f}`.
pub const BOOL_DOMAIN: &str = "bool";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DomainSpec {
    /// Inclusive integer interval `lo..hi`.
    Range(i64, i64),
    Set(Vec<Value>),
}

impl DomainSpec {
    pub fn values(&self) -> Vec<Value> {
        match self {
            DomainSpec::Range(lo, hi) => (*lo..=*hi).map(Value::Int).collect(),
            DomainSpec::Set(vs) => vs.clone(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            DomainSpec::Range(lo, hi) => (hi - lo + 1).max(0) as usize,
            DomainSpec::Set(vs) => vs.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Value range of a declared constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Range {
    Boolean,
    Domain(String),
}

/// `#const c(d1,...,dk) : range.`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstDecl {
    pub args: Vec<String>,
    pub range: Range,
}

/// Finite sorts, typed variables and declared multi-valued constants.
/// Symbols that are used but not declared are plain propositional predicates.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Signature {
    pub domains: IndexMap<String, DomainSpec>,
    pub vars: IndexMap<String, String>,
    pub constants: IndexMap<String, ConstDecl>,
}

impl Signature {
    pub fn domain_values(&self, name: &str) -> Result<Vec<Value>> {
        if name == BOOL_DOMAIN {
            return Ok(vec![Value::t(), Value::f()]);
        }
        self.domains
            .get(name)
            .map(DomainSpec::values)
            .ok_or_else(|| Error::UnknownDomain(name.to_string()))
    }

    pub fn is_boolean(&self, symbol: &str) -> bool {
        matches!(self.constants.get(symbol), Some(ConstDecl { range: Range::Boolean, .. }))
    }

    /// Atom values of a declared constant, with `t` of a Boolean constant written as `None`.
    pub fn const_values(&self, symbol: &str) -> Result<Option<Vec<Option<Value>>>> {
        let Some(decl) = self.constants.get(symbol) else {
            return Ok(None);
        };
        Ok(Some(match &decl.range {
            Range::Boolean => vec![None, Some(Value::f())],
            Range::Domain(d) => self.domain_values(d)?.into_iter().map(Some).collect(),
        }))
    }

    /// Rewrites `c=t` to `c` unless `c` is declared over a non-Boolean domain.
    pub fn normalize(&self, mut atom: GroundAtom) -> GroundAtom {
        let multi_valued = matches!(self.constants.get(&atom.symbol), Some(ConstDecl { range: Range::Domain(_), .. }));
        if matches!(&atom.value, Some(v) if v.is_true_value()) && !multi_valued {
            atom.value = None;
        }
        atom
    }

    /// Every ground atom of every declared constant, in declaration order.
    pub fn declared_atoms(&self) -> Result<Vec<GroundAtom>> {
        let mut out = Vec::new();
        for (symbol, decl) in &self.constants {
            let values = self.const_values(symbol)?.unwrap_or_default();
            let arg_domains = decl
                .args
                .iter()
                .map(|d| self.domain_values(d))
                .collect::<Result<Vec<_>>>()?;
            for args in cartesian(&arg_domains) {
                for v in &values {
                    out.push(GroundAtom {
                        symbol: symbol.clone(),
                        args: args.clone(),
                        value: v.clone(),
                    });
                }
            }
        }
        Ok(out)
    }

    pub fn validate(&self) -> std::result::Result<(), ValidationError> {
        for (name, dom) in &self.domains {
            if name == BOOL_DOMAIN {
                return Err(ValidationError::new(format!("domain name `{BOOL_DOMAIN}` is reserved")));
            }
            if dom.is_empty() {
                return Err(ValidationError::new(format!("domain {name} is empty")));
            }
            let vals = dom.values();
            for (i, v) in vals.iter().enumerate() {
                if vals[..i].contains(v) {
                    return Err(ValidationError::new(format!("domain {name} repeats value {v}")));
                }
            }
        }
        let known = |d: &str| d == BOOL_DOMAIN || self.domains.contains_key(d);
        for (var, d) in &self.vars {
            if !known(d) {
                return Err(ValidationError::new(format!("variable {var} ranges over unknown domain {d}")));
            }
        }
        for (c, decl) in &self.constants {
            for d in &decl.args {
                if !known(d) {
                    return Err(ValidationError::new(format!("constant {c} uses unknown domain {d}")));
                }
            }
            if let Range::Domain(d) = &decl.range {
                if !known(d) {
                    return Err(ValidationError::new(format!("constant {c} has unknown range {d}")));
                }
            }
        }
        Ok(())
    }

    /// Merges declarations of `other` that are missing here.
    pub fn merge(&mut self, other: &Signature) {
        for (k, v) in &other.domains {
            self.domains.entry(k.clone()).or_insert_with(|| v.clone());
        }
        for (k, v) in &other.vars {
            self.vars.entry(k.clone()).or_insert_with(|| v.clone());
        }
        for (k, v) in &other.constants {
            self.constants.entry(k.clone()).or_insert_with(|| v.clone());
        }
    }
}

/// Cartesian product in lexicographic order (first list most significant).
pub fn cartesian(lists: &[Vec<Value>]) -> Vec<Vec<Value>> {
    let mut out = vec![Vec::new()];
    for list in lists {
        let mut next = Vec::with_capacity(out.len() * list.len());
        for prefix in &out {
            for v in list {
                let mut p = prefix.clone();
                p.push(v.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dice_sig() -> Signature {
        let mut s = Signature::default();
        s.domains.insert("die".into(), DomainSpec::Set(vec!["d1".into(), "d2".into()]));
        s.domains.insert("face".into(), DomainSpec::Range(1, 6));
        s.constants.insert(
            "roll".into(),
            ConstDecl {
                args: vec!["die".into()],
                range: Range::Domain("face".into()),
            },
        );
        s.constants.insert(
            "even".into(),
            ConstDecl {
                args: vec!["die".into()],
                range: Range::Boolean,
            },
        );
        s
    }

    #[test]
    fn declared_atoms_cover_domain_product() {
        let atoms = dice_sig().declared_atoms().unwrap();
        assert_eq!(atoms.len(), 12 + 4);
        assert_eq!(atoms[0].to_string(), "roll(d1)=1");
        assert_eq!(atoms[11].to_string(), "roll(d2)=6");
        assert_eq!(atoms[12].to_string(), "even(d1)");
        assert_eq!(atoms[13].to_string(), "even(d1)=f");
    }

    #[test]
    fn boolean_true_value_is_normalized() {
        let s = dice_sig();
        let a = GroundAtom::with_value("even", vec!["d1".into()], Value::t());
        assert_eq!(s.normalize(a).value, None);
    }

    #[test]
    fn validation_rejects_duplicates_and_empty() {
        let mut s = Signature::default();
        s.domains.insert("d".into(), DomainSpec::Set(vec!["a".into(), "a".into()]));
        assert!(s.validate().is_err());
        let mut s = Signature::default();
        s.domains.insert("d".into(), DomainSpec::Range(3, 1));
        assert!(s.validate().is_err());
        assert!(dice_sig().validate().is_ok());
    }
}
