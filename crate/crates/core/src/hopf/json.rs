use serde::{Deserialize, Serialize};

use super::algebra::{Bialgebra, HopfAlgebra};
use crate::error::Error;
use crate::linalg::scalar::{format_scalar, parse_scalar};
use crate::linalg::{Accum, LinearMap, SVec, Space};

/// File form of a (Hopf) bialgebra.
///
/// `m` entries `[i, j, k, c]` mean `e_i · e_j ∋ c e_k`; `delta` entries
/// `[i, j, k, c]` mean `Δ(e_i) ∋ c e_j ⊗ e_k`; `unit` and `counit` are dense;
/// `antipode` is a dense matrix of rows.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HopfJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub dim: usize,
    pub labels: Vec<String>,
    pub m: Vec<(usize, usize, usize, String)>,
    pub delta: Vec<(usize, usize, usize, String)>,
    pub unit: Vec<String>,
    pub counit: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<Vec<Vec<String>>>,
}

fn dense(v: &SVec, n: usize) -> Vec<String> {
    v.to_dense(n).iter().map(format_scalar).collect()
}

impl From<&Bialgebra> for HopfJson {
    fn from(b: &Bialgebra) -> Self {
        let n = b.dim();
        let triples = |map: &LinearMap, by_col: bool| {
            let mut out = Vec::new();
            for (j, col) in map.cols().iter().enumerate() {
                for (i, c) in col.entries() {
                    let t = if by_col { (j / n, j % n, *i) } else { (j, i / n, i % n) };
                    out.push((t.0, t.1, t.2, format_scalar(c)));
                }
            }
            out
        };
        HopfJson {
            kind: Some("bialgebra".into()),
            dim: n,
            labels: b.space().labels().to_vec(),
            m: triples(b.m(), true),
            delta: triples(b.delta(), false),
            unit: dense(b.unit(), n),
            counit: (0..n).map(|j| format_scalar(&b.counit().get(0, j))).collect(),
            antipode: None,
        }
    }
}

impl From<&HopfAlgebra> for HopfJson {
    fn from(h: &HopfAlgebra) -> Self {
        let mut j = HopfJson::from(&h.bialgebra);
        j.kind = Some("hopf".into());
        j.antipode = Some(h.antipode.to_dense().iter().map(|r| r.iter().map(format_scalar).collect()).collect());
        j
    }
}

fn scalar_at(s: &str, path: &str) -> Result<crate::linalg::Scalar, Error> {
    parse_scalar(s).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

impl HopfJson {
    pub fn to_bialgebra(&self) -> Result<Bialgebra, Error> {
        let n = self.dim;
        if self.labels.len() != n {
            return Err(Error::Parse(format!("labels: expected {n}, found {}", self.labels.len())));
        }
        let space = Space::new(self.labels.clone()).map_err(|e| Error::Parse(format!("labels: {e}")))?;
        let bb = space.tensor(&space);
        let mut mcols: Vec<Accum> = (0..n * n).map(|_| Accum::new()).collect();
        for (t, (i, j, k, c)) in self.m.iter().enumerate() {
            if *i >= n || *j >= n || *k >= n {
                return Err(Error::Parse(format!("m[{t}]: index out of range")));
            }
            mcols[i * n + j].add(*k, scalar_at(c, &format!("m[{t}]"))?);
        }
        let mut dcols: Vec<Accum> = (0..n).map(|_| Accum::new()).collect();
        for (t, (i, j, k, c)) in self.delta.iter().enumerate() {
            if *i >= n || *j >= n || *k >= n {
                return Err(Error::Parse(format!("delta[{t}]: index out of range")));
            }
            dcols[*i].add(j * n + k, scalar_at(c, &format!("delta[{t}]"))?);
        }
        if self.unit.len() != n || self.counit.len() != n {
            return Err(Error::Parse(format!("unit and counit need {n} entries")));
        }
        let unit = SVec::from_dense(
            &self.unit.iter().enumerate().map(|(i, s)| scalar_at(s, &format!("unit[{i}]"))).collect::<Result<Vec<_>, _>>()?,
        );
        let counit_vals =
            self.counit.iter().enumerate().map(|(i, s)| scalar_at(s, &format!("counit[{i}]"))).collect::<Result<Vec<_>, _>>()?;
        let m = LinearMap::new(bb.clone(), space.clone(), mcols.into_iter().map(Accum::finish).collect())?;
        let delta = LinearMap::new(space.clone(), bb, dcols.into_iter().map(Accum::finish).collect())?;
        let counit = LinearMap::covector(&space, &counit_vals);
        Bialgebra::new(space, m, unit, delta, counit)
    }

    pub fn to_hopf(&self) -> Result<HopfAlgebra, Error> {
        let b = self.to_bialgebra()?;
        let rows = self.antipode.as_ref().ok_or_else(|| Error::Parse("antipode: missing".into()))?;
        let parsed = rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r.iter().enumerate().map(|(j, s)| scalar_at(s, &format!("antipode[{i}][{j}]"))).collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let s = LinearMap::from_rows(b.space(), b.space(), &parsed)
            .map_err(|e| Error::Parse(format!("antipode: {e}")))?;
        HopfAlgebra::new(b, s)
    }
}
