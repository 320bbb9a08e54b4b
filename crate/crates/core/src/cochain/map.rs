use std::collections::BTreeMap;

use serde::Serialize;

use super::complex::CochainComplex;
use crate::error::Error;
use crate::linalg::elim::Echelon;
use crate::linalg::LinearMap;

/// A degree-0 chain map between cochain complexes.
#[derive(Clone, Debug)]
pub struct ComplexMap {
    source: CochainComplex,
    target: CochainComplex,
    layers: BTreeMap<i64, LinearMap>,
}

/// Per-degree comparison of cohomology under a chain map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeComparison {
    pub degree: i64,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiIsoReport {
    pub is_quasi_iso: bool,
    pub degrees: Vec<DegreeComparison>,
}

impl ComplexMap {
    /// Checks shapes and `f ∘ d = d ∘ f` in every degree.
    pub fn new(
        source: CochainComplex,
        target: CochainComplex,
        layers: BTreeMap<i64, LinearMap>,
    ) -> Result<Self, Error> {
        let f = ComplexMap::new_unchecked(source, target, layers);
        for (n, l) in &f.layers {
            if l.domain() != &f.source.space(*n) || l.codomain() != &f.target.space(*n) {
                return Err(Error::Shape(format!("layer in degree {n} has the wrong spaces")));
            }
        }
        if let Some(n) = f.commutation_failure() {
            return Err(Error::Invalid(format!("not a chain map in degree {n}")));
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(
        source: CochainComplex,
        target: CochainComplex,
        layers: BTreeMap<i64, LinearMap>,
    ) -> Self {
        let layers = layers
            .into_iter()
            .filter(|(n, l)| !l.is_zero() && source.dim(*n) > 0 && target.dim(*n) > 0)
            .collect();
        ComplexMap { source, target, layers }
    }

    pub fn from_fn(
        source: &CochainComplex,
        target: &CochainComplex,
        mut f: impl FnMut(i64) -> LinearMap,
    ) -> Result<Self, Error> {
        let layers = source.components().keys().filter(|n| target.dim(**n) > 0).map(|&n| (n, f(n))).collect();
        ComplexMap::new(source.clone(), target.clone(), layers)
    }

    pub fn identity(c: &CochainComplex) -> Self {
        let layers = c.components().iter().map(|(n, s)| (*n, LinearMap::identity(s))).collect();
        ComplexMap { source: c.clone(), target: c.clone(), layers }
    }

    pub fn source(&self) -> &CochainComplex {
        &self.source
    }

    pub fn target(&self) -> &CochainComplex {
        &self.target
    }

    pub fn layer(&self, n: i64) -> LinearMap {
        match self.layers.get(&n) {
            Some(l) => l.clone(),
            None => LinearMap::zero(&self.source.space(n), &self.target.space(n)),
        }
    }

    /// Image of the `i`-th basis vector of `source^n`.
    pub fn image(&self, n: i64, i: usize) -> crate::linalg::SVec {
        self.layers.get(&n).map(|l| l.col(i).clone()).unwrap_or_default()
    }

    /// First degree where `d_target ∘ f^n ≠ f^{n+1} ∘ d_source`, if any.
    pub fn commutation_failure(&self) -> Option<i64> {
        let mut degrees: Vec<i64> = self.source.components().keys().copied().collect();
        degrees.extend(self.target.components().keys().copied());
        degrees.sort_unstable();
        degrees.dedup();
        degrees.into_iter().find(|&n| {
            let lhs = self.target.d(n).compose_unchecked(&self.layer(n));
            let rhs = self.layer(n + 1).compose_unchecked(&self.source.d(n));
            !lhs.same_entries(&rhs)
        })
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ComplexMap) -> Result<ComplexMap, Error> {
        if other.target != self.source {
            return Err(Error::Shape("composing chain maps with mismatched complexes".into()));
        }
        let layers = other
            .layers
            .keys()
            .map(|&n| Ok((n, self.layer(n).compose(&other.layer(n))?)))
            .collect::<Result<_, Error>>()?;
        Ok(ComplexMap::new_unchecked(other.source.clone(), self.target.clone(), layers))
    }

    /// Agreement of all layers as matrices.
    pub fn same_layers(&self, other: &ComplexMap) -> bool {
        let mut degrees: Vec<i64> = self.layers.keys().chain(other.layers.keys()).copied().collect();
        degrees.sort_unstable();
        degrees.dedup();
        degrees.iter().all(|&n| self.layer(n).same_entries(&other.layer(n)))
    }

    /// Rank of the induced map `H^n(source) -> H^n(target)`:
    /// `rank [f·Z^n | im d^{n−1}] − rank d^{n−1}`.
    pub fn cohomology_rank(&self, n: i64) -> usize {
        let f = self.layer(n);
        let boundaries = self.target.d(n - 1);
        let mut ech = Echelon::new();
        for c in boundaries.cols() {
            ech.push(c);
        }
        let base = ech.rank();
        for z in self.source.cocycles(n) {
            ech.push(&f.apply(&z));
        }
        ech.rank() - base
    }

    pub fn quasi_iso_report(&self) -> QuasiIsoReport {
        let mut degrees: Vec<i64> =
            self.source.components().keys().chain(self.target.components().keys()).copied().collect();
        degrees.sort_unstable();
        degrees.dedup();
        let degrees: Vec<DegreeComparison> = degrees
            .into_iter()
            .map(|n| DegreeComparison {
                degree: n,
                source_dim: self.source.cohomology_dim(n),
                target_dim: self.target.cohomology_dim(n),
                rank: self.cohomology_rank(n),
            })
            .collect();
        let is_quasi_iso = degrees.iter().all(|d| d.rank == d.source_dim && d.rank == d.target_dim);
        QuasiIsoReport { is_quasi_iso, degrees }
    }

    /// The report restricted to degrees in `lo ..= hi`.
    pub fn quasi_iso_report_in(&self, lo: i64, hi: i64) -> QuasiIsoReport {
        let degrees: Vec<DegreeComparison> =
            self.quasi_iso_report().degrees.into_iter().filter(|d| d.degree >= lo && d.degree <= hi).collect();
        let is_quasi_iso = degrees.iter().all(|d| d.rank == d.source_dim && d.rank == d.target_dim);
        QuasiIsoReport { is_quasi_iso, degrees }
    }

    pub fn is_quasi_iso(&self) -> bool {
        self.quasi_iso_report().is_quasi_iso
    }
}
