//! Ring descriptors: polynomial variables over `QQ` or `QQ(params)`.

use std::fmt;
use std::sync::Arc;

use crate::error::PolyError;

/// `QQ[vars]` or `QQ(params)[vars]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
    params: Vec<String>,
}

pub type RingRef = Arc<Ring>;

pub(crate) fn valid_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new<S: AsRef<str>>(vars: &[S], params: &[S]) -> Result<RingRef, PolyError> {
        let vars: Vec<String> = vars.iter().map(|s| s.as_ref().to_string()).collect();
        let params: Vec<String> = params.iter().map(|s| s.as_ref().to_string()).collect();
        let mut seen = std::collections::HashSet::new();
        for n in vars.iter().chain(params.iter()) {
            if !valid_ident(n) {
                return Err(PolyError::BadRing(format!("invalid variable name `{n}`")));
            }
            if !seen.insert(n.clone()) {
                return Err(PolyError::BadRing(format!("duplicate variable `{n}`")));
            }
        }
        Ok(Arc::new(Ring { vars, params }))
    }

    /// `QQ[vars]`.
    pub fn rational<S: AsRef<str>>(vars: &[S]) -> RingRef {
        Self::new(vars, &[]).expect("valid variable names")
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn param_index(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|v| v == name)
    }

    /// Parse a `ring x,y,z over QQ` or `ring X,Z over QQ(Y)` header line.
    pub fn parse_header(line: &str) -> Result<RingRef, PolyError> {
        let bad = || PolyError::BadRing(format!("malformed ring header `{}`", line.trim()));
        let rest = line.trim().strip_prefix("ring").ok_or_else(bad)?;
        let (vars, field) = rest.split_once(" over ").ok_or_else(bad)?;
        let vars: Vec<&str> = vars.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        let field = field.trim();
        let params: Vec<&str> = if field == "QQ" {
            Vec::new()
        } else {
            let inner = field
                .strip_prefix("QQ(")
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(bad)?;
            inner.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
        };
        if vars.is_empty() {
            return Err(bad());
        }
        Self::new(&vars, &params)
    }

    /// Ring with the given variables moved (in order) to the end of the
    /// parameter block. Returns the new ring and, for each old variable, its
    /// new variable index (or `None` if it became a parameter).
    pub fn promote(&self, which: &[usize]) -> (RingRef, Vec<Option<usize>>) {
        let mut vars = Vec::new();
        let mut map = Vec::new();
        for (i, v) in self.vars.iter().enumerate() {
            if which.contains(&i) {
                map.push(None);
            } else {
                map.push(Some(vars.len()));
                vars.push(v.clone());
            }
        }
        let mut params = self.params.clone();
        for &i in which {
            params.push(self.vars[i].clone());
        }
        (Arc::new(Ring { vars, params }), map)
    }

    /// Same parameters, extra variable prepended.
    pub fn with_leading_var(&self, name: &str) -> RingRef {
        let mut vars = vec![name.to_string()];
        vars.extend(self.vars.iter().cloned());
        Arc::new(Ring { vars, params: self.params.clone() })
    }

    pub fn renamed(&self, vars: Vec<String>) -> Result<RingRef, PolyError> {
        Self::new(&vars, &self.params)
    }

    /// A variable name not clashing with any existing name.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        while self.vars.contains(&name) || self.params.contains(&name) {
            name.push('_');
        }
        name
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ring {} over QQ", self.vars.join(","))?;
        if !self.params.is_empty() {
            write!(f, "({})", self.params.join(","))?;
        }
        Ok(())
    }
}
