use std::fmt;
use std::sync::Arc;

use crate::arith::Field;

use super::MPolyError;

#[derive(Debug, PartialEq, Eq, Hash)]
struct RingDesc {
    field: Field,
    vars: Vec<String>,
}

/// Polynomial ring context: coefficient field plus ordered variable names.
/// Variable `0` is the largest in every term order.
#[derive(Clone)]
pub struct Ring(Arc<RingDesc>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Ring {}

impl std::hash::Hash for Ring {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({self})")
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.0.field, self.0.vars.join(","))
    }
}

impl Ring {
    pub fn new<S: AsRef<str>>(field: &Field, vars: &[S]) -> Result<Ring, MPolyError> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().trim().to_string()).collect();
        let symbols = field.symbols();
        for (i, v) in vars.iter().enumerate() {
            let valid = v
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(MPolyError::BadVariable(format!(
                    "{v:?} is not a valid name"
                )));
            }
            if vars[..i].contains(v) {
                return Err(MPolyError::BadVariable(format!("{v} listed twice")));
            }
            if symbols.contains(v) {
                return Err(MPolyError::BadVariable(format!(
                    "{v} is already a symbol of the field {field}"
                )));
            }
        }
        Ok(Ring(Arc::new(RingDesc {
            field: field.clone(),
            vars,
        })))
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    /// The same variables over another field.
    pub fn with_field(&self, field: &Field) -> Result<Ring, MPolyError> {
        Ring::new(field, self.vars())
    }

    /// A ring over the same field keeping only the variables at `keep`.
    pub fn subring(&self, keep: &[usize]) -> Result<Ring, MPolyError> {
        let vars: Vec<&str> = keep.iter().map(|&i| self.0.vars[i].as_str()).collect();
        Ring::new(self.field(), &vars)
    }
}
