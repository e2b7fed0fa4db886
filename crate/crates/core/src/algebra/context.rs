use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Ordered, duplicate-free list of variable names shared by every
/// polynomial built over it. Cloning is cheap.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VarContext {
    names: Arc<[String]>,
}

impl VarContext {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().trim().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || !is_identifier(n) {
                return Err(Error::ContextError(format!("invalid variable name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(Error::ContextError(format!("duplicate variable {n}")));
            }
        }
        Ok(VarContext { names: names.into() })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::ContextError(format!("unknown variable {name}")))
    }

    /// New context with `name` prepended, as the highest-precedence variable.
    pub fn with_leading(&self, name: &str) -> Result<Self> {
        if self.index_of(name).is_some() {
            return Err(Error::ContextError(format!("variable {name} already in context")));
        }
        let mut v = vec![name.to_string()];
        v.extend(self.names.iter().cloned());
        VarContext::new(&v)
    }

    pub fn without(&self, name: &str) -> Result<Self> {
        self.require(name)?;
        let v: Vec<&String> = self.names.iter().filter(|n| *n != name).collect();
        VarContext::new(&v)
    }
}

impl fmt::Debug for VarContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VarContext({})", self.names.join(", "))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
