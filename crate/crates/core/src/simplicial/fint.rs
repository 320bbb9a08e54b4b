use std::fmt;

use serde::Serialize;

use crate::error::Error;

/// A morphism `[m] -> [n]` of finite intervals: a monotone map
/// `{0..m} -> {0..n}` with `f(0) = 0` and `f(m) = n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FintMorphism {
    source: usize,
    target: usize,
    values: Vec<usize>,
}

impl FintMorphism {
    pub fn new(source: usize, target: usize, values: Vec<usize>) -> Result<Self, Error> {
        if values.len() != source + 1 {
            return Err(Error::Shape(format!("[{source}] has {} points, got {} values", source + 1, values.len())));
        }
        if values[0] != 0 || values[source] != target {
            return Err(Error::Invalid(format!("endpoints must go to 0 and {target}")));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Invalid("values are not monotone".into()));
        }
        Ok(FintMorphism { source, target, values })
    }

    pub fn identity(n: usize) -> Self {
        FintMorphism { source: n, target: n, values: (0..=n).collect() }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// For each unit interval `[j−1, j]` of the source, the unit intervals
    /// `k ∈ (f(j−1), f(j)]` of the target it covers (1-based).
    pub fn groups(&self) -> Vec<std::ops::Range<usize>> {
        self.values.windows(2).map(|w| w[0] + 1..w[1] + 1).collect()
    }

    /// Inverse of [`FintMorphism::groups`]: the source interval covering each target interval.
    pub fn group_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.target];
        for (j, g) in self.groups().into_iter().enumerate() {
            for k in g {
                out[k - 1] = j;
            }
        }
        out
    }
}

impl fmt::Display for FintMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(usize::to_string).collect();
        write!(f, "[{}]→[{}]({})", self.source, self.target, vals.join(","))
    }
}

/// Every morphism `[m] -> [n]`, in lexicographic order of values.
pub fn fint_homset(m: usize, n: usize) -> Vec<FintMorphism> {
    if m == 0 {
        return if n == 0 { vec![FintMorphism::identity(0)] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut inner = vec![0usize; m - 1];
    loop {
        let mut values = Vec::with_capacity(m + 1);
        values.push(0);
        values.extend(&inner);
        values.push(n);
        out.push(FintMorphism { source: m, target: n, values });
        // next non-decreasing sequence with entries in 0..=n
        let Some(pos) = (0..inner.len()).rev().find(|&i| inner[i] < n) else { break };
        let v = inner[pos] + 1;
        for x in &mut inner[pos..] {
            *x = v;
        }
    }
    out
}

/// `g ∘ f`.
pub fn fint_compose(g: &FintMorphism, f: &FintMorphism) -> Result<FintMorphism, Error> {
    if f.target != g.source {
        return Err(Error::Shape(format!("cannot compose {g} after {f}")));
    }
    Ok(FintMorphism { source: f.source, target: g.target, values: f.values.iter().map(|&i| g.values[i]).collect() })
}

/// `f ⊗ g: [m₁ + m₂] -> [n₁ + n₂]`, gluing the right end of the first
/// interval to the left end of the second.
pub fn fint_tensor(f: &FintMorphism, g: &FintMorphism) -> FintMorphism {
    let mut values = f.values.clone();
    values.extend(g.values[1..].iter().map(|&v| v + f.target));
    FintMorphism { source: f.source + g.source, target: f.target + g.target, values }
}
