use num_traits::Zero;

use super::scalar::{self, Scalar};
use super::space::Space;
use super::vector::{Accum, SVec};
use crate::error::Error;
use serde::{Deserialize, Serialize};

/// Interchange form: row labels, column labels and `[row, col, "p/q"]` triples.
#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: Space,
    cols: Space,
    entries: Vec<(usize, usize, String)>,
}

impl TryFrom<MatrixJson> for LinearMap {
    type Error = Error;
    fn try_from(m: MatrixJson) -> Result<Self, Error> {
        let mut cols = vec![Vec::new(); m.cols.dim()];
        for (i, j, x) in m.entries {
            if i >= m.rows.dim() || j >= m.cols.dim() {
                return Err(Error::Shape(format!("entry ({i}, {j}) outside a {}x{} matrix", m.rows.dim(), m.cols.dim())));
            }
            cols[j].push((i, scalar::parse_scalar(&x)?));
        }
        LinearMap::new(m.cols, m.rows, cols.into_iter().map(SVec::from_pairs).collect())
    }
}

impl From<LinearMap> for MatrixJson {
    fn from(m: LinearMap) -> Self {
        let mut entries = Vec::with_capacity(m.nnz());
        for (j, c) in m.cols.iter().enumerate() {
            for (i, x) in c.entries() {
                entries.push((*i, j, scalar::format_scalar(x)));
            }
        }
        entries.sort();
        MatrixJson { rows: m.codomain, cols: m.domain, entries }
    }
}

/// Linear map between labelled spaces, stored column by column
/// (column `j` is the image of the `j`-th domain basis vector).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct LinearMap {
    domain: Space,
    codomain: Space,
    cols: Vec<SVec>,
}

impl LinearMap {
    pub fn new(domain: Space, codomain: Space, cols: Vec<SVec>) -> Result<Self, Error> {
        if cols.len() != domain.dim() {
            return Err(Error::Shape(format!(
                "{} columns for a domain of dimension {}",
                cols.len(),
                domain.dim()
            )));
        }
        if let Some(m) = cols.iter().filter_map(|c| c.max_index()).max() {
            if m >= codomain.dim() {
                return Err(Error::Shape(format!("row index {m} outside codomain of dimension {}", codomain.dim())));
            }
        }
        Ok(LinearMap { domain, codomain, cols })
    }

    pub(crate) fn from_cols(domain: Space, codomain: Space, cols: Vec<SVec>) -> Self {
        debug_assert_eq!(cols.len(), domain.dim());
        LinearMap { domain, codomain, cols }
    }

    pub fn from_fn(domain: &Space, codomain: &Space, f: impl FnMut(usize) -> SVec) -> Self {
        let cols = (0..domain.dim()).map(f).collect();
        LinearMap::from_cols(domain.clone(), codomain.clone(), cols)
    }

    pub fn zero(domain: &Space, codomain: &Space) -> Self {
        LinearMap::from_cols(domain.clone(), codomain.clone(), vec![SVec::new(); domain.dim()])
    }

    pub fn identity(space: &Space) -> Self {
        LinearMap::from_fn(space, space, SVec::unit)
    }

    /// From a dense row-major matrix.
    pub fn from_rows(domain: &Space, codomain: &Space, rows: &[Vec<Scalar>]) -> Result<Self, Error> {
        if rows.len() != codomain.dim() || rows.iter().any(|r| r.len() != domain.dim()) {
            return Err(Error::Shape("dense matrix does not match spaces".into()));
        }
        Ok(LinearMap::from_fn(domain, codomain, |j| {
            SVec::from_pairs(rows.iter().enumerate().map(|(i, r)| (i, r[j].clone())))
        }))
    }

    pub fn from_int_rows(domain: &Space, codomain: &Space, rows: &[Vec<i64>]) -> Result<Self, Error> {
        let rows: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&x| scalar::int(x)).collect()).collect();
        LinearMap::from_rows(domain, codomain, &rows)
    }

    /// A linear functional `space -> k`.
    pub fn covector(space: &Space, values: &[Scalar]) -> Self {
        LinearMap::from_fn(space, &Space::ground(), |j| SVec::from_pairs([(0, values[j].clone())]))
    }

    /// The map `k -> space` sending 1 to `v`.
    pub fn point(space: &Space, v: &SVec) -> Self {
        LinearMap::from_cols(Space::ground(), space.clone(), vec![v.clone()])
    }

    pub fn domain(&self) -> &Space {
        &self.domain
    }

    pub fn codomain(&self) -> &Space {
        &self.codomain
    }

    pub fn nrows(&self) -> usize {
        self.codomain.dim()
    }

    pub fn ncols(&self) -> usize {
        self.domain.dim()
    }

    pub fn col(&self, j: usize) -> &SVec {
        &self.cols[j]
    }

    pub fn cols(&self) -> &[SVec] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.cols[j].get(i)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(SVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SVec::is_zero)
    }

    pub fn with_spaces(&self, domain: &Space, codomain: &Space) -> Result<Self, Error> {
        if domain.dim() != self.domain.dim() || codomain.dim() != self.codomain.dim() {
            return Err(Error::Shape("relabelling must keep dimensions".into()));
        }
        Ok(LinearMap::from_cols(domain.clone(), codomain.clone(), self.cols.clone()))
    }

    pub fn apply(&self, v: &SVec) -> SVec {
        let mut acc = Accum::new();
        for (j, x) in v.entries() {
            acc.add_vec(x, &self.cols[*j]);
        }
        acc.finish()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap, Error> {
        if other.codomain.dim() != self.domain.dim() {
            return Err(Error::Shape(format!(
                "cannot compose: inner dimensions {} and {}",
                other.codomain.dim(),
                self.domain.dim()
            )));
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &LinearMap) -> LinearMap {
        let cols = other.cols.iter().map(|c| self.apply(c)).collect();
        LinearMap::from_cols(other.domain.clone(), self.codomain.clone(), cols)
    }

    fn check_same_shape(&self, other: &LinearMap) -> Result<(), Error> {
        if self.domain.dim() != other.domain.dim() || self.codomain.dim() != other.codomain.dim() {
            return Err(Error::Shape(format!(
                "shape mismatch: {}x{} vs {}x{}",
                self.nrows(),
                self.ncols(),
                other.nrows(),
                other.ncols()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &LinearMap) -> Result<LinearMap, Error> {
        self.add_scaled(&scalar::one(), other)
    }

    pub fn sub(&self, other: &LinearMap) -> Result<LinearMap, Error> {
        self.add_scaled(&-scalar::one(), other)
    }

    pub fn add_scaled(&self, c: &Scalar, other: &LinearMap) -> Result<LinearMap, Error> {
        self.check_same_shape(other)?;
        let cols = self.cols.iter().zip(&other.cols).map(|(a, b)| a.add_scaled(c, b)).collect();
        Ok(LinearMap::from_cols(self.domain.clone(), self.codomain.clone(), cols))
    }

    pub fn scale(&self, c: &Scalar) -> LinearMap {
        let cols = self.cols.iter().map(|a| a.scale(c)).collect();
        LinearMap::from_cols(self.domain.clone(), self.codomain.clone(), cols)
    }

    /// Kronecker product `self ⊗ other : A⊗C -> B⊗D`.
    pub fn kron(&self, other: &LinearMap) -> LinearMap {
        let domain = self.domain.tensor(&other.domain);
        let codomain = self.codomain.tensor(&other.codomain);
        let nd = other.codomain.dim();
        let mut cols = Vec::with_capacity(domain.dim());
        for a in &self.cols {
            for b in &other.cols {
                let mut v = Vec::with_capacity(a.nnz() * b.nnz());
                for (i, x) in a.entries() {
                    for (k, y) in b.entries() {
                        v.push((i * nd + k, x * y));
                    }
                }
                cols.push(SVec::from_pairs(v));
            }
        }
        LinearMap::from_cols(domain, codomain, cols)
    }

    pub fn kron_all(maps: &[&LinearMap]) -> LinearMap {
        let mut it = maps.iter();
        let first = (*it.next().expect("at least one factor")).clone();
        it.fold(first, |acc, m| acc.kron(m))
    }

    pub fn transpose(&self) -> LinearMap {
        LinearMap::from_cols(self.codomain.clone(), self.domain.clone(), self.rows())
    }

    /// Rows as sparse vectors indexed by domain position.
    pub fn rows(&self) -> Vec<SVec> {
        let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.nrows()];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c.entries() {
                rows[*i].push((j, x.clone()));
            }
        }
        rows.into_iter().map(SVec::from_pairs).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut m = vec![vec![Scalar::zero(); self.ncols()]; self.nrows()];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c.entries() {
                m[*i][j] = x.clone();
            }
        }
        m
    }

    /// Same matrix entries, ignoring labels.
    pub fn same_entries(&self, other: &LinearMap) -> bool {
        self.ncols() == other.ncols() && self.nrows() == other.nrows() && self.cols == other.cols
    }

    /// Horizontal concatenation `[self | other]` (shared codomain).
    pub fn hcat(&self, other: &LinearMap) -> Result<LinearMap, Error> {
        if self.nrows() != other.nrows() {
            return Err(Error::Shape("hcat needs equal row counts".into()));
        }
        let domain = self.domain.direct_sum(&other.domain, ("L:", "R:"));
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        Ok(LinearMap::from_cols(domain, self.codomain.clone(), cols))
    }

    /// Vertical stacking (shared domain).
    pub fn vcat(&self, other: &LinearMap) -> Result<LinearMap, Error> {
        if self.ncols() != other.ncols() {
            return Err(Error::Shape("vcat needs equal column counts".into()));
        }
        let off = self.nrows();
        let codomain = self.codomain.direct_sum(&other.codomain, ("T:", "B:"));
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut e = a.entries().to_vec();
                e.extend(b.entries().iter().map(|(i, x)| (i + off, x.clone())));
                SVec::from_pairs(e)
            })
            .collect();
        Ok(LinearMap::from_cols(self.domain.clone(), codomain, cols))
    }

    /// Restricts the domain to the listed basis vectors (in order).
    pub fn select_cols(&self, idx: &[usize], domain: &Space) -> LinearMap {
        LinearMap::from_cols(domain.clone(), self.codomain.clone(), idx.iter().map(|&j| self.cols[j].clone()).collect())
    }
}

/// Permutation of tensor factors: `⊗_k V_k -> ⊗_k V_{perm[k]}`.
pub fn permute_factors(factors: &[&Space], perm: &[usize]) -> LinearMap {
    assert_eq!(factors.len(), perm.len());
    let dims: Vec<usize> = factors.iter().map(|s| s.dim()).collect();
    let domain = Space::tensor_all(factors);
    let out: Vec<&Space> = perm.iter().map(|&k| factors[k]).collect();
    let codomain = Space::tensor_all(&out);
    let out_dims: Vec<usize> = perm.iter().map(|&k| dims[k]).collect();
    let n = domain.dim();
    let mut cols = Vec::with_capacity(n);
    let mut digits = vec![0usize; dims.len()];
    for j in 0..n {
        let mut r = j;
        for k in (0..dims.len()).rev() {
            digits[k] = r % dims[k];
            r /= dims[k];
        }
        let mut idx = 0;
        for (k, &p) in perm.iter().enumerate() {
            idx = idx * out_dims[k] + digits[p];
        }
        cols.push(SVec::unit(idx));
    }
    LinearMap::from_cols(domain, codomain, cols)
}

/// `V ⊗ W -> W ⊗ V`.
pub fn swap(a: &Space, b: &Space) -> LinearMap {
    permute_factors(&[a, b], &[1, 0])
}
