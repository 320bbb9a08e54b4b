use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::linalg::elim::kernel_basis;
use crate::linalg::{rank, LinearMap, Space};

/// A bounded cochain complex of finite-dimensional spaces, `d: C^n -> C^{n+1}`.
///
/// Only nonzero components are stored; the differential in degree `n` is
/// stored when both `C^n` and `C^{n+1}` are nonzero and the map is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ComplexJson", into = "ComplexJson")]
pub struct CochainComplex {
    components: BTreeMap<i64, Space>,
    differentials: BTreeMap<i64, LinearMap>,
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    components: BTreeMap<i64, Space>,
    differentials: BTreeMap<i64, LinearMap>,
}

impl TryFrom<ComplexJson> for CochainComplex {
    type Error = Error;
    fn try_from(c: ComplexJson) -> Result<Self, Error> {
        CochainComplex::new(c.components, c.differentials)
    }
}

impl From<CochainComplex> for ComplexJson {
    fn from(c: CochainComplex) -> Self {
        ComplexJson { components: c.components, differentials: c.differentials }
    }
}

impl CochainComplex {
    /// Checks shapes and `d ∘ d = 0`.
    pub fn new(components: BTreeMap<i64, Space>, differentials: BTreeMap<i64, LinearMap>) -> Result<Self, Error> {
        let c = Self::new_unchecked(components, differentials);
        for (n, d) in &c.differentials {
            if d.domain() != &c.space(*n) || d.codomain() != &c.space(n + 1) {
                return Err(Error::Shape(format!("differential in degree {n} has the wrong spaces")));
            }
        }
        if let Some(n) = c.d_squared_failure() {
            return Err(Error::Invalid(format!("d∘d ≠ 0 starting in degree {n}")));
        }
        Ok(c)
    }

    pub(crate) fn new_unchecked(
        components: BTreeMap<i64, Space>,
        differentials: BTreeMap<i64, LinearMap>,
    ) -> Self {
        let components: BTreeMap<i64, Space> = components.into_iter().filter(|(_, s)| s.dim() > 0).collect();
        let differentials = differentials
            .into_iter()
            .filter(|(n, d)| !d.is_zero() && components.contains_key(n) && components.contains_key(&(n + 1)))
            .collect();
        CochainComplex { components, differentials }
    }

    /// Builds a complex from per-degree spaces and a closure giving `d^n`.
    pub fn from_fn(
        components: BTreeMap<i64, Space>,
        mut d: impl FnMut(i64, &Space, &Space) -> LinearMap,
    ) -> Result<Self, Error> {
        let mut diffs = BTreeMap::new();
        let degrees: Vec<i64> = components.keys().copied().collect();
        for n in degrees {
            if let Some(next) = components.get(&(n + 1)) {
                diffs.insert(n, d(n, &components[&n], next));
            }
        }
        CochainComplex::new(components, diffs)
    }

    pub fn zero() -> Self {
        CochainComplex { components: BTreeMap::new(), differentials: BTreeMap::new() }
    }

    /// A single space in degree `n` with zero differential.
    pub fn concentrated(n: i64, space: Space) -> Self {
        Self::new_unchecked(BTreeMap::from([(n, space)]), BTreeMap::new())
    }

    pub fn space(&self, n: i64) -> Space {
        self.components.get(&n).cloned().unwrap_or_else(Space::zero)
    }

    pub fn dim(&self, n: i64) -> usize {
        self.components.get(&n).map_or(0, Space::dim)
    }

    /// `d^n: C^n -> C^{n+1}`.
    pub fn d(&self, n: i64) -> LinearMap {
        match self.differentials.get(&n) {
            Some(d) => d.clone(),
            None => LinearMap::zero(&self.space(n), &self.space(n + 1)),
        }
    }

    pub fn components(&self) -> &BTreeMap<i64, Space> {
        &self.components
    }

    /// Smallest and largest degree with a nonzero component.
    pub fn support(&self) -> Option<(i64, i64)> {
        Some((*self.components.keys().next()?, *self.components.keys().next_back()?))
    }

    pub fn total_dim(&self) -> usize {
        self.components.values().map(Space::dim).sum()
    }

    fn d_squared_failure(&self) -> Option<i64> {
        self.differentials.iter().find_map(|(n, d)| {
            let next = self.differentials.get(&(n + 1))?;
            (!next.compose(d).ok()?.is_zero()).then_some(*n)
        })
    }

    pub fn rank_d(&self, n: i64) -> usize {
        self.differentials.get(&n).map_or(0, rank)
    }

    /// `dim H^n = dim C^n − rank d^n − rank d^{n−1}`, over the support.
    pub fn cohomology_dims(&self) -> BTreeMap<i64, usize> {
        self.components.keys().map(|&n| (n, self.cohomology_dim(n))).collect()
    }

    pub fn cohomology_dim(&self, n: i64) -> usize {
        self.dim(n) - self.rank_d(n) - self.rank_d(n - 1)
    }

    pub fn is_acyclic(&self) -> bool {
        self.cohomology_dims().values().all(|d| *d == 0)
    }

    /// Basis of the cocycles `Z^n`, as vectors in `C^n`.
    pub fn cocycles(&self, n: i64) -> Vec<crate::linalg::SVec> {
        kernel_basis(&self.d(n))
    }

    /// Brutal truncation: components in degrees `>= k` only.
    pub fn truncate_below(&self, k: i64) -> CochainComplex {
        CochainComplex {
            components: self.components.range(k..).map(|(n, s)| (*n, s.clone())).collect(),
            differentials: self.differentials.range(k..).map(|(n, d)| (*n, d.clone())).collect(),
        }
    }

    /// The complex shifted so that `C[k]^n = C^{n+k}`, with differential `(−1)^k d`.
    pub fn shift(&self, k: i64) -> CochainComplex {
        let sign = crate::linalg::scalar::sign(k);
        CochainComplex {
            components: self.components.iter().map(|(n, s)| (n - k, s.clone())).collect(),
            differentials: self.differentials.iter().map(|(n, d)| (n - k, d.scale(&sign))).collect(),
        }
    }
}
