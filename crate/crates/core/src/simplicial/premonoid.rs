use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::algebra::DgAlgebra;
use super::fint::{fint_compose, fint_homset, fint_tensor, FintMorphism};
use crate::cochain::{tensor_complexes, CochainComplex, ComplexMap, QuasiIsoReport, TensorComplex};
use crate::dgcat::Elem;
use crate::linalg::{Accum, SVec, Scalar};

/// A functor `Δ_fint^op -> complexes` truncated at level `nmax`, with colax maps.
///
/// `action[f]` for `f: [m] -> [n]` is `F(f): X_n -> X_m`. `colax[(m, n)]` is
/// `β_{m,n}: X_{m+n} -> X_m ⊗ X_n` (target laid out by `tensor_complexes`),
/// for `m, n ≥ 1`, and `alpha: X_0 -> ℚ`.
#[derive(Clone, Debug)]
pub struct LeinsterPreMonoid {
    pub levels: Vec<CochainComplex>,
    pub algebras: Option<Vec<DgAlgebra>>,
    pub action: BTreeMap<FintMorphism, ComplexMap>,
    pub colax: BTreeMap<(usize, usize), ComplexMap>,
    pub alpha: ComplexMap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Classification {
    Monoid,
    PreMonoid,
    Invalid,
}

#[derive(Clone, Debug, Serialize)]
pub struct ColaxVerdict {
    pub m: usize,
    pub n: usize,
    pub report: QuasiIsoReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct LeinsterReport {
    pub nmax: usize,
    pub window: (i64, i64),
    pub morphisms: usize,
    pub composable_pairs: usize,
    pub functoriality: Vec<String>,
    pub multiplicativity: Vec<String>,
    pub coherence: Vec<String>,
    pub colax: Vec<ColaxVerdict>,
    pub alpha: QuasiIsoReport,
    pub classification: Classification,
}

impl LeinsterPreMonoid {
    pub fn nmax(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }
}

type Pairs = HashMap<(Elem, Elem), Scalar>;
type Triples = HashMap<(Elem, Elem, Elem), Scalar>;

fn decode(t: &TensorComplex, n: i64, v: &SVec) -> Pairs {
    let mut out = Pairs::new();
    for (k, x) in v.entries() {
        let (p, i, q, j) = t.locate(n, *k).expect("index inside the tensor complex");
        *out.entry(((p, i), (q, j))).or_default() += x;
    }
    out.retain(|_, x| !num_traits::Zero::is_zero(x));
    out
}

fn clean<K: std::hash::Hash + Eq>(mut m: HashMap<K, Scalar>) -> HashMap<K, Scalar> {
    m.retain(|_, x| !num_traits::Zero::is_zero(x));
    m
}

fn basis(c: &CochainComplex) -> impl Iterator<Item = Elem> + '_ {
    c.components().iter().flat_map(|(&n, s)| (0..s.dim()).map(move |i| (n, i)))
}

/// Checks functoriality, multiplicativity (when algebras are given), colax
/// coherence, and which colax maps are quasi-isomorphisms in `lo ..= hi`.
pub fn validate_leinster(p: &LeinsterPreMonoid, window: (i64, i64)) -> LeinsterReport {
    let nmax = p.nmax();
    let mut functoriality = Vec::new();
    let mut multiplicativity = Vec::new();
    let mut coherence = Vec::new();

    let mut morphisms = 0;
    for a in 0..=nmax {
        for b in 0..=nmax {
            for f in fint_homset(a, b) {
                morphisms += 1;
                match p.action.get(&f) {
                    None => functoriality.push(format!("F({f}) is missing")),
                    Some(map) => {
                        if map.source() != &p.levels[b] || map.target() != &p.levels[a] {
                            functoriality.push(format!("F({f}) does not map X_{b} to X_{a}"));
                        }
                    }
                }
            }
        }
    }
    for n in 0..=nmax {
        if let Some(map) = p.action.get(&FintMorphism::identity(n)) {
            if !map.same_layers(&ComplexMap::identity(&p.levels[n])) {
                functoriality.push(format!("F(id_[{n}]) is not the identity"));
            }
        }
    }

    let mut composable_pairs = 0;
    if functoriality.is_empty() {
        for a in 0..=nmax {
            for b in 0..=nmax {
                for f in fint_homset(a, b) {
                    for c in 0..=nmax {
                        for g in fint_homset(b, c) {
                            composable_pairs += 1;
                            let gf = fint_compose(&g, &f).expect("composable");
                            let lhs = &p.action[&gf];
                            let rhs = p.action[&f].compose(&p.action[&g]).expect("matching levels");
                            if !lhs.same_layers(&rhs) {
                                functoriality.push(format!("F(g∘f) ≠ F(f)∘F(g) at [{c}] → [{a}] for f = {f}, g = {g}"));
                            }
                        }
                    }
                }
            }
        }
    }

    if let Some(algebras) = &p.algebras {
        if functoriality.is_empty() {
            for (f, map) in &p.action {
                let (src, tgt) = (&algebras[f.target()], &algebras[f.source()]);
                let unit_image = apply(map, 0, src.unit());
                if &unit_image != tgt.unit() {
                    multiplicativity.push(format!("F({f}) does not preserve the unit"));
                }
                // products landing outside the realized degrees vanish on both sides
                let c = src.complex();
                let images: HashMap<Elem, SVec> = basis(c).map(|x| (x, map.image(x.0, x.1))).collect();
                'pairs: for (&p, sp) in c.components() {
                    for (&q, sq) in c.components() {
                        if c.dim(p + q) == 0 && tgt.complex().dim(p + q) == 0 {
                            continue;
                        }
                        for i in 0..sp.dim() {
                            for j in 0..sq.dim() {
                                let (x, y) = ((p, i), (q, j));
                                let lhs = apply(map, p + q, &src.mul_basis(x, y));
                                let rhs = tgt.mul(p, &images[&x], q, &images[&y]);
                                if lhs != rhs {
                                    multiplicativity.push(format!("F({f}) is not multiplicative"));
                                    break 'pairs;
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    let tensors: BTreeMap<(usize, usize), TensorComplex> =
        p.colax.keys().map(|&(m, n)| ((m, n), tensor_complexes(&p.levels[m], &p.levels[n]))).collect();
    for (&(m, n), beta) in &p.colax {
        if beta.source() != &p.levels[m + n] || beta.target() != &tensors[&(m, n)].complex {
            coherence.push(format!("β_{{{m},{n}}} has the wrong source or target"));
        }
    }
    for m in 1..nmax {
        for n in 1..=nmax - m {
            if !p.colax.contains_key(&(m, n)) {
                coherence.push(format!("β_{{{m},{n}}} is missing"));
            }
        }
    }
    if coherence.is_empty() {
        coassociativity(p, &tensors, &mut coherence);
        if functoriality.is_empty() {
            naturality(p, &tensors, &mut coherence);
        }
    }

    let (lo, hi) = window;
    let colax: Vec<ColaxVerdict> =
        p.colax.iter().map(|(&(m, n), b)| ColaxVerdict { m, n, report: b.quasi_iso_report_in(lo, hi) }).collect();
    let alpha = p.alpha.quasi_iso_report_in(lo, hi);
    let classification = if !(functoriality.is_empty() && multiplicativity.is_empty() && coherence.is_empty()) {
        Classification::Invalid
    } else if alpha.is_quasi_iso && colax.iter().all(|v| v.report.is_quasi_iso) {
        Classification::Monoid
    } else {
        Classification::PreMonoid
    };
    LeinsterReport {
        nmax,
        window,
        morphisms,
        composable_pairs,
        functoriality,
        multiplicativity,
        coherence,
        colax,
        alpha,
        classification,
    }
}

fn apply(map: &ComplexMap, n: i64, v: &SVec) -> SVec {
    let mut acc = Accum::new();
    for (i, x) in v.entries() {
        acc.add_vec(x, &map.image(n, *i));
    }
    acc.finish()
}

/// `(β_{l,m} ⊗ 1) β_{l+m,n} = (1 ⊗ β_{m,n}) β_{l,m+n}` on every basis vector.
fn coassociativity(p: &LeinsterPreMonoid, t: &BTreeMap<(usize, usize), TensorComplex>, out: &mut Vec<String>) {
    let nmax = p.nmax();
    for l in 1..=nmax {
        for m in 1..=nmax {
            for n in 1..=nmax {
                if l + m + n > nmax {
                    continue;
                }
                let (outer_l, inner_l) = (&p.colax[&(l + m, n)], &p.colax[&(l, m)]);
                let (outer_r, inner_r) = (&p.colax[&(l, m + n)], &p.colax[&(m, n)]);
                for e in basis(&p.levels[l + m + n]) {
                    let mut left = Triples::new();
                    for ((a, b), x) in decode(&t[&(l + m, n)], e.0, &outer_l.image(e.0, e.1)) {
                        for ((a1, a2), y) in decode(&t[&(l, m)], a.0, &inner_l.image(a.0, a.1)) {
                            *left.entry((a1, a2, b)).or_default() += &x * y;
                        }
                    }
                    let mut right = Triples::new();
                    for ((a, b), x) in decode(&t[&(l, m + n)], e.0, &outer_r.image(e.0, e.1)) {
                        for ((b1, b2), y) in decode(&t[&(m, n)], b.0, &inner_r.image(b.0, b.1)) {
                            *right.entry((a, b1, b2)).or_default() += &x * y;
                        }
                    }
                    if clean(left) != clean(right) {
                        out.push(format!("coassociativity fails for ({l}, {m}, {n})"));
                        break;
                    }
                }
            }
        }
    }
}

/// `β_{m',n'} F(f ⊗ g) = (F(f) ⊗ F(g)) β_{m,n}` for `f: [m'] -> [m]`, `g: [n'] -> [n]`.
fn naturality(p: &LeinsterPreMonoid, t: &BTreeMap<(usize, usize), TensorComplex>, out: &mut Vec<String>) {
    for (&(m, n), beta) in &p.colax {
        for (&(m2, n2), beta2) in &p.colax {
            for f in fint_homset(m2, m) {
                for g in fint_homset(n2, n) {
                    let fg = fint_tensor(&f, &g);
                    let (ff, fg_map, gg) = (&p.action[&f], &p.action[&fg], &p.action[&g]);
                    for e in basis(&p.levels[m + n]) {
                        let left = decode(&t[&(m2, n2)], e.0, &apply(beta2, e.0, &fg_map.image(e.0, e.1)));
                        let mut right = Pairs::new();
                        for ((a, b), x) in decode(&t[&(m, n)], e.0, &beta.image(e.0, e.1)) {
                            for (i, y) in ff.image(a.0, a.1).entries() {
                                for (j, z) in gg.image(b.0, b.1).entries() {
                                    *right.entry(((a.0, *i), (b.0, *j))).or_default() += &x * y * z;
                                }
                            }
                        }
                        if left != clean(right) {
                            out.push(format!("β is not natural for f = {f}, g = {g}"));
                            break;
                        }
                    }
                }
            }
        }
    }
}
