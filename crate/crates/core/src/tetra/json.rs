use serde::{Deserialize, Serialize};

use super::tetramodule::Tetramodule;
use crate::error::Error;
use crate::hopf::{builtin, Bialgebra, HopfAlgebra, HopfJson};
use crate::linalg::scalar::{format_scalar, parse_scalar};
use crate::linalg::{Accum, LinearMap, Space};

/// A builtin name (`"sweedler"`, `"group_algebra(2)"`, …) or an inline algebra.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BaseRef {
    Builtin(String),
    Inline(Box<HopfJson>),
}

impl BaseRef {
    /// The bialgebra, and its antipode when one is known.
    pub fn resolve(&self) -> Result<(Bialgebra, Option<HopfAlgebra>), Error> {
        match self {
            BaseRef::Builtin(name) => {
                let h = builtin(name)?;
                Ok((h.bialgebra.clone(), Some(h)))
            }
            BaseRef::Inline(j) if j.antipode.is_some() => {
                let h = j.to_hopf()?;
                Ok((h.bialgebra.clone(), Some(h)))
            }
            BaseRef::Inline(j) => Ok((j.to_bialgebra()?, None)),
        }
    }
}

type Triples = Vec<(usize, usize, usize, String)>;

/// File form of a tetramodule.
///
/// `ml` entries `[a, m, k, c]` mean `e_a · e_m ∋ c e_k`; `mr` entries
/// `[m, a, k, c]` mean `e_m · e_a ∋ c e_k`; `dl` entries `[m, a, k, c]` mean
/// `Δ_ℓ(e_m) ∋ c e_a ⊗ e_k`; `dr` entries `[m, k, a, c]` mean
/// `Δ_r(e_m) ∋ c e_k ⊗ e_a`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TetraJson {
    pub base: BaseRef,
    pub dim: usize,
    pub labels: Vec<String>,
    pub ml: Triples,
    pub mr: Triples,
    pub dl: Triples,
    pub dr: Triples,
}

/// `X⊗Y -> Z` as `[x, y, z, c]`.
fn product_triples(map: &LinearMap, ny: usize) -> Triples {
    let mut out = Vec::new();
    for (j, col) in map.cols().iter().enumerate() {
        for (k, c) in col.entries() {
            out.push((j / ny, j % ny, *k, format_scalar(c)));
        }
    }
    out
}

/// `Z -> X⊗Y` as `[z, x, y, c]`.
fn coproduct_triples(map: &LinearMap, ny: usize) -> Triples {
    let mut out = Vec::new();
    for (j, col) in map.cols().iter().enumerate() {
        for (i, c) in col.entries() {
            out.push((j, i / ny, i % ny, format_scalar(c)));
        }
    }
    out
}

fn read_map(
    name: &str,
    triples: &Triples,
    dims: (usize, usize, usize),
    coproduct: bool,
    dom: &Space,
    cod: &Space,
) -> Result<LinearMap, Error> {
    let (n0, n1, n2) = dims;
    let mut cols: Vec<Accum> = (0..dom.dim()).map(|_| Accum::new()).collect();
    for (t, (a, b, c, x)) in triples.iter().enumerate() {
        if *a >= n0 || *b >= n1 || *c >= n2 {
            return Err(Error::Parse(format!("{name}[{t}]: index out of range")));
        }
        let x = parse_scalar(x).map_err(|e| Error::Parse(format!("{name}[{t}]: {e}")))?;
        if coproduct {
            cols[*a].add(b * n2 + c, x);
        } else {
            cols[a * n1 + b].add(*c, x);
        }
    }
    LinearMap::new(dom.clone(), cod.clone(), cols.into_iter().map(Accum::finish).collect())
}

impl TetraJson {
    pub fn new(t: &Tetramodule, base: BaseRef) -> Self {
        let (nb, nm) = (t.base().dim(), t.dim());
        TetraJson {
            base,
            dim: nm,
            labels: t.space().labels().to_vec(),
            ml: product_triples(t.ml(), nm),
            mr: product_triples(t.mr(), nb),
            dl: coproduct_triples(t.dl(), nm),
            dr: coproduct_triples(t.dr(), nb),
        }
    }

    /// The tetramodule (shapes checked, axioms not) and the base antipode if known.
    pub fn to_tetramodule(&self) -> Result<(Tetramodule, Option<HopfAlgebra>), Error> {
        let (b, h) = self.base.resolve()?;
        let (nb, nm) = (b.dim(), self.dim);
        if self.labels.len() != nm {
            return Err(Error::Parse(format!("labels: expected {nm}, found {}", self.labels.len())));
        }
        let space = Space::new(self.labels.clone()).map_err(|e| Error::Parse(format!("labels: {e}")))?;
        let bm = b.space().tensor(&space);
        let mb = space.tensor(b.space());
        let ml = read_map("ml", &self.ml, (nb, nm, nm), false, &bm, &space)?;
        let mr = read_map("mr", &self.mr, (nm, nb, nm), false, &mb, &space)?;
        let dl = read_map("dl", &self.dl, (nm, nb, nm), true, &space, &bm)?;
        let dr = read_map("dr", &self.dr, (nm, nm, nb), true, &space, &mb)?;
        Ok((Tetramodule::new(b, space, ml, mr, dl, dr)?, h))
    }
}
