use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::AlgebraError;

/// Ordered, immutable list of variable names. Every polynomial carries a
/// shared handle to the table it was built over.
pub struct VarTable {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

/// Shared handle to a variable table; two rings are compatible when their
/// tables list the same names in the same order.
pub type Ring = Arc<VarTable>;

impl VarTable {
    pub fn new<I, S>(names: I) -> Result<Ring, AlgebraError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || !is_identifier(n) {
                return Err(AlgebraError::InvalidVariable(n.clone()));
            }
            if index.insert(n.clone(), i).is_some() {
                return Err(AlgebraError::DuplicateVariable(n.clone()));
            }
        }
        Ok(Arc::new(VarTable { names, index }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// A new table with `extra` appended (names already present are skipped).
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Result<Ring, AlgebraError> {
        let mut names = self.names.clone();
        for e in extra {
            if self.index_of(e.as_ref()).is_none() {
                names.push(e.as_ref().to_string());
            }
        }
        VarTable::new(names)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || a.names == b.names
}

impl PartialEq for VarTable {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for VarTable {}

impl fmt::Debug for VarTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.names).finish()
    }
}

impl fmt::Display for VarTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates() {
        assert!(matches!(
            VarTable::new(["x", "y", "x"]),
            Err(AlgebraError::DuplicateVariable(_))
        ));
        assert!(VarTable::new(["2x"]).is_err());
    }

    #[test]
    fn lookup_and_extend() {
        let r = VarTable::new(["a21", "b1"]).unwrap();
        assert_eq!(r.index_of("b1"), Some(1));
        let r2 = r.extended(&["b1", "u"]).unwrap();
        assert_eq!(r2.names(), &["a21", "b1", "u"]);
        assert!(!same_ring(&r, &r2));
    }
}
