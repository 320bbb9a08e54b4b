use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::Error;

impl TryFrom<Vec<String>> for Space {
    type Error = Error;
    fn try_from(labels: Vec<String>) -> Result<Self, Error> {
        Space::new(labels)
    }
}

impl From<Space> for Vec<String> {
    fn from(s: Space) -> Self {
        s.labels.as_ref().clone()
    }
}

/// A finite-dimensional space with an ordered basis of distinct labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Space {
    labels: Arc<Vec<String>>,
}

impl Space {
    pub fn new(labels: Vec<String>) -> Result<Self, Error> {
        let mut seen = std::collections::HashSet::with_capacity(labels.len());
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::Shape(format!("duplicate basis label {l:?}")));
            }
        }
        Ok(Space { labels: Arc::new(labels) })
    }

    /// Labels known to be distinct (constructed programmatically).
    pub(crate) fn from_unique(labels: Vec<String>) -> Self {
        debug_assert!({
            let s: std::collections::HashSet<_> = labels.iter().collect();
            s.len() == labels.len()
        });
        Space { labels: Arc::new(labels) }
    }

    /// Basis `prefix0, prefix1, ...`.
    pub fn numbered(prefix: &str, dim: usize) -> Self {
        Space::from_unique((0..dim).map(|i| format!("{prefix}{i}")).collect())
    }

    pub fn zero() -> Self {
        Space::from_unique(Vec::new())
    }

    /// One-dimensional space spanned by `1`.
    pub fn ground() -> Self {
        Space::from_unique(vec!["1".into()])
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_map(&self) -> HashMap<&str, usize> {
        self.labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect()
    }

    /// Tensor product; basis index `i * other.dim() + j`, label `x⊗y`.
    pub fn tensor(&self, other: &Space) -> Space {
        let mut labels = Vec::with_capacity(self.dim() * other.dim());
        for a in self.labels.iter() {
            for b in other.labels.iter() {
                labels.push(format!("{a}⊗{b}"));
            }
        }
        match Space::new(labels) {
            Ok(s) => s,
            // ambiguous concatenation; fall back to bracketed labels
            Err(_) => {
                let mut labels = Vec::with_capacity(self.dim() * other.dim());
                for a in self.labels.iter() {
                    for b in other.labels.iter() {
                        labels.push(format!("({a})⊗({b})"));
                    }
                }
                Space::from_unique(labels)
            }
        }
    }

    pub fn tensor_all(spaces: &[&Space]) -> Space {
        match spaces.split_first() {
            None => Space::ground(),
            Some((first, rest)) => rest.iter().fold((*first).clone(), |acc, s| acc.tensor(s)),
        }
    }

    /// Direct sum, labels disambiguated by the given tags when they clash.
    pub fn direct_sum(&self, other: &Space, tags: (&str, &str)) -> Space {
        Space::concat(&[(tags.0, self), (tags.1, other)])
    }

    /// Concatenated basis. Labels are kept when they stay distinct, otherwise
    /// each is prefixed by its part's tag, otherwise by the part's position.
    pub fn concat(parts: &[(&str, &Space)]) -> Space {
        let plain: Vec<String> = parts.iter().flat_map(|(_, s)| s.labels.iter().cloned()).collect();
        if let Ok(s) = Space::new(plain) {
            return s;
        }
        let tagged: Vec<String> =
            parts.iter().flat_map(|(t, s)| s.labels.iter().map(move |l| format!("{t}{l}"))).collect();
        if let Ok(s) = Space::new(tagged) {
            return s;
        }
        Space::from_unique(
            parts
                .iter()
                .enumerate()
                .flat_map(|(k, (_, s))| s.labels.iter().map(move |l| format!("#{k}:{l}")))
                .collect(),
        )
    }

    pub fn relabel(&self, f: impl Fn(&str) -> String) -> Result<Space, Error> {
        Space::new(self.labels.iter().map(|l| f(l)).collect())
    }
}
