use std::fmt;
use std::sync::Arc;

use super::{ExprError, Result};

/// An ordered list of distinct coordinate names.
///
/// Cloning is cheap; charts compare by their name lists.
#[derive(Clone)]
pub struct Chart {
    names: Arc<[String]>,
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Chart {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(ExprError::EmptyChart);
        }
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(ExprError::InvalidIdentifier(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(ExprError::DuplicateCoordinate(name.clone()));
            }
        }
        Ok(Self {
            names: names.into(),
        })
    }

    /// `prefix1, ..., prefixN`.
    pub fn numbered(prefix: &str, dim: usize) -> Result<Self> {
        Self::new((1..=dim).map(|i| format!("{prefix}{i}")))
    }

    /// Concatenation of several charts; names must stay distinct.
    pub fn product(parts: &[&Chart]) -> Result<Self> {
        Self::new(parts.iter().flat_map(|c| c.names.iter().cloned()))
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub(crate) fn ensure_same(&self, other: &Chart) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(ExprError::ChartMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl PartialEq for Chart {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for Chart {}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names.join(", "))
    }
}

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chart({self})")
    }
}
