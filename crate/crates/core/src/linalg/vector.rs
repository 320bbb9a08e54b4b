use std::collections::BTreeMap;

use num_traits::Zero;

use super::scalar::Scalar;

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SVec(Vec<(usize, Scalar)>);

impl SVec {
    pub fn new() -> Self {
        SVec(Vec::new())
    }

    pub fn unit(i: usize) -> Self {
        SVec(vec![(i, super::scalar::one())])
    }

    pub fn from_dense(v: &[Scalar]) -> Self {
        SVec(v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect())
    }

    /// Accepts unsorted input with repeats; sums duplicates and drops zeros.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, x) in pairs {
            *acc.entry(i).or_insert_with(Scalar::zero) += x;
        }
        SVec(acc.into_iter().filter(|(_, x)| !x.is_zero()).collect())
    }

    pub fn to_dense(&self, n: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); n];
        for (i, x) in &self.0 {
            v[*i] = x.clone();
        }
        v
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<(usize, Scalar)> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize) -> Scalar {
        match self.0.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(k) => self.0[k].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &Scalar) -> SVec {
        if c.is_zero() {
            return SVec::new();
        }
        SVec(self.0.iter().map(|(i, x)| (*i, x * c)).collect())
    }

    /// `self + c * other`
    pub fn add_scaled(&self, c: &Scalar, other: &SVec) -> SVec {
        if c.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i >= a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, &b[j].1 * c));
                j += 1;
            } else {
                let s = &a[i].1 + &b[j].1 * c;
                if !s.is_zero() {
                    out.push((a[i].0, s));
                }
                i += 1;
                j += 1;
            }
        }
        SVec(out)
    }

    pub fn add(&self, other: &SVec) -> SVec {
        self.add_scaled(&super::scalar::one(), other)
    }

    pub fn sub(&self, other: &SVec) -> SVec {
        self.add_scaled(&-super::scalar::one(), other)
    }

    pub fn dot(&self, other: &SVec) -> Scalar {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        let mut s = Scalar::zero();
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    s += &a[i].1 * &b[j].1;
                    i += 1;
                    j += 1;
                }
            }
        }
        s
    }

    /// Reindexes entries through `f`; `None` drops the entry.
    pub fn map_indices(&self, f: impl Fn(usize) -> Option<usize>) -> SVec {
        SVec::from_pairs(self.0.iter().filter_map(|(i, x)| f(*i).map(|j| (j, x.clone()))))
    }
}

/// Accumulator for building sparse vectors out of many contributions.
#[derive(Default, Debug, Clone)]
pub struct Accum(BTreeMap<usize, Scalar>);

impl Accum {
    pub fn new() -> Self {
        Accum(BTreeMap::new())
    }

    pub fn add(&mut self, i: usize, x: Scalar) {
        if x.is_zero() {
            return;
        }
        let e = self.0.entry(i).or_insert_with(Scalar::zero);
        *e += x;
    }

    pub fn add_vec(&mut self, c: &Scalar, v: &SVec) {
        for (i, x) in v.entries() {
            self.add(*i, c * x);
        }
    }

    pub fn finish(self) -> SVec {
        SVec(self.0.into_iter().filter(|(_, x)| !x.is_zero()).collect())
    }
}
