use std::collections::BTreeMap;

use super::complex::CochainComplex;
use super::map::ComplexMap;
use crate::error::Error;
use crate::linalg::scalar::sign;
use crate::linalg::{LinearMap, SVec, Space};

/// Mapping cone of `f: A -> B`: `C^n = A^{n+1} ⊕ B^n`, `d(a, b) = (−d a, f a + d b)`.
pub fn cone(f: &ComplexMap) -> CochainComplex {
    let (a, b) = (f.source(), f.target());
    let mut degrees: Vec<i64> = a.components().keys().map(|n| n - 1).chain(b.components().keys().copied()).collect();
    degrees.sort_unstable();
    degrees.dedup();
    let spaces: BTreeMap<i64, Space> =
        degrees.iter().map(|&n| (n, a.space(n + 1).direct_sum(&b.space(n), ("a:", "b:")))).collect();
    let mut diffs = BTreeMap::new();
    for &n in &degrees {
        let (an1, bn) = (a.dim(n + 1), b.dim(n));
        let (da, db, fl) = (a.d(n + 1), b.d(n), f.layer(n + 1));
        let target = spaces.get(&(n + 1)).cloned().unwrap_or_else(|| a.space(n + 2).direct_sum(&b.space(n + 1), ("a:", "b:")));
        let an2 = a.dim(n + 2);
        let d = LinearMap::from_fn(&spaces[&n], &target, |j| {
            if j < an1 {
                let top = da.col(j).scale(&sign(1));
                let bottom = fl.col(j).map_indices(|i| Some(i + an2));
                top.add(&bottom)
            } else {
                debug_assert!(j - an1 < bn);
                db.col(j - an1).map_indices(|i| Some(i + an2))
            }
        });
        diffs.insert(n, d);
    }
    CochainComplex::new_unchecked(spaces, diffs)
}

/// Where the summand `A^p ⊗ B^q` sits inside `(A ⊗ B)^{p+q}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub p: i64,
    pub q: i64,
    pub offset: usize,
    pub dim_a: usize,
    pub dim_b: usize,
}

/// Tensor product complex with its index table.
#[derive(Clone, Debug)]
pub struct TensorComplex {
    pub complex: CochainComplex,
    pub blocks: BTreeMap<i64, Vec<Block>>,
}

impl TensorComplex {
    pub fn block(&self, p: i64, q: i64) -> Option<&Block> {
        self.blocks.get(&(p + q))?.iter().find(|b| b.p == p)
    }

    /// Position of `a_i ⊗ b_j` with `a_i ∈ A^p`, `b_j ∈ B^q`.
    pub fn index(&self, p: i64, i: usize, q: i64, j: usize) -> Option<usize> {
        let b = self.block(p, q)?;
        Some(b.offset + i * b.dim_b + j)
    }

    /// Inverse of [`TensorComplex::index`] in total degree `n`.
    pub fn locate(&self, n: i64, k: usize) -> Option<(i64, usize, i64, usize)> {
        let b = self.blocks.get(&n)?.iter().find(|b| k >= b.offset && k < b.offset + b.dim_a * b.dim_b)?;
        let r = k - b.offset;
        Some((b.p, r / b.dim_b, b.q, r % b.dim_b))
    }
}

/// Graded tensor product with `d(a ⊗ b) = da ⊗ b + (−1)^{|a|} a ⊗ db`.
pub fn tensor_complexes(a: &CochainComplex, b: &CochainComplex) -> TensorComplex {
    let mut blocks: BTreeMap<i64, Vec<Block>> = BTreeMap::new();
    let mut spaces: BTreeMap<i64, Vec<(String, Space)>> = BTreeMap::new();
    for (&p, sa) in a.components() {
        for (&q, sb) in b.components() {
            let list = blocks.entry(p + q).or_default();
            let offset = list.last().map_or(0, |l: &Block| l.offset + l.dim_a * l.dim_b);
            list.push(Block { p, q, offset, dim_a: sa.dim(), dim_b: sb.dim() });
            spaces.entry(p + q).or_default().push((format!("[{p},{q}]"), sa.tensor(sb)));
        }
    }
    let spaces: BTreeMap<i64, Space> = spaces
        .into_iter()
        .map(|(n, parts)| {
            let refs: Vec<(&str, &Space)> = parts.iter().map(|(t, s)| (t.as_str(), s)).collect();
            (n, Space::concat(&refs))
        })
        .collect();
    let index_of = |p: i64, i: usize, q: i64, j: usize| -> usize {
        let b = blocks[&(p + q)].iter().find(|b| b.p == p).expect("block");
        b.offset + i * b.dim_b + j
    };
    let mut diffs = BTreeMap::new();
    for (&n, list) in &blocks {
        let Some(next) = spaces.get(&(n + 1)) else { continue };
        let mut cols = Vec::with_capacity(spaces[&n].dim());
        for blk in list {
            let (da, db) = (a.d(blk.p), b.d(blk.q));
            let s = sign(blk.p);
            for i in 0..blk.dim_a {
                for j in 0..blk.dim_b {
                    let mut col = Vec::new();
                    for (i2, x) in da.col(i).entries() {
                        col.push((index_of(blk.p + 1, *i2, blk.q, j), x.clone()));
                    }
                    for (j2, y) in db.col(j).entries() {
                        col.push((index_of(blk.p, i, blk.q + 1, *j2), &s * y));
                    }
                    cols.push(SVec::from_pairs(col));
                }
            }
        }
        diffs.insert(n, LinearMap::from_cols(spaces[&n].clone(), next.clone(), cols));
    }
    TensorComplex { complex: CochainComplex::new_unchecked(spaces, diffs), blocks }
}

/// `f ⊗ g` between tensor complexes (degree-0 maps, so no Koszul sign).
pub fn tensor_maps(
    f: &ComplexMap,
    g: &ComplexMap,
    source: &TensorComplex,
    target: &TensorComplex,
) -> Result<ComplexMap, Error> {
    let mut layers = BTreeMap::new();
    for (&n, list) in &source.blocks {
        let dom = source.complex.space(n);
        let cod = target.complex.space(n);
        let mut cols = Vec::with_capacity(dom.dim());
        for blk in list {
            let (fp, gq) = (f.layer(blk.p), g.layer(blk.q));
            for i in 0..blk.dim_a {
                for j in 0..blk.dim_b {
                    let mut col = Vec::new();
                    for (i2, x) in fp.col(i).entries() {
                        for (j2, y) in gq.col(j).entries() {
                            let k = target
                                .index(blk.p, *i2, blk.q, *j2)
                                .ok_or_else(|| Error::Shape("target tensor complex lacks a block".into()))?;
                            col.push((k, x * y));
                        }
                    }
                    cols.push(SVec::from_pairs(col));
                }
            }
        }
        layers.insert(n, LinearMap::new(dom, cod, cols)?);
    }
    ComplexMap::new(source.complex.clone(), target.complex.clone(), layers)
}
