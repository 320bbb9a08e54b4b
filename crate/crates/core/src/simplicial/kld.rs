use std::collections::BTreeMap;

use serde::Serialize;

use crate::dgcat::{generalized_quotient, DgCat, DgCategory, DgCategoryBuilder, PCat, QuotientOptions};
use crate::error::Error;
use crate::linalg::elim::kernel_of_rows;
use crate::linalg::{int, LinearMap, SVec, Space};

/// A bounded complex of modules over `R = ℚ[x, y]/(x², y²)`: per degree a
/// space with the actions of `x` and `y`, and an `R`-linear differential.
#[derive(Clone, Debug)]
struct Module {
    spaces: BTreeMap<i64, Space>,
    actions: BTreeMap<i64, [LinearMap; 2]>,
    d: BTreeMap<i64, LinearMap>,
}

impl Module {
    fn dim(&self, k: i64) -> usize {
        self.spaces.get(&k).map_or(0, Space::dim)
    }

    fn action(&self, k: i64, g: usize) -> LinearMap {
        self.actions[&k][g].clone()
    }

    fn d(&self, k: i64) -> LinearMap {
        match self.d.get(&k) {
            Some(m) => m.clone(),
            None => LinearMap::zero(&self.space(k), &self.space(k + 1)),
        }
    }

    fn space(&self, k: i64) -> Space {
        self.spaces.get(&k).cloned().unwrap_or_else(Space::zero)
    }

    fn range(&self) -> (i64, i64) {
        (*self.spaces.keys().next().expect("nonzero module"), *self.spaces.keys().last().expect("nonzero module"))
    }
}

/// `R` with basis `1, x, y, xy`.
fn free() -> (Space, [LinearMap; 2]) {
    let s = Space::new(vec!["1".into(), "x".into(), "y".into(), "xy".into()]).expect("labels");
    let x = LinearMap::from_fn(&s, &s, |j| match j {
        0 => SVec::unit(1),
        2 => SVec::unit(3),
        _ => SVec::new(),
    });
    let y = LinearMap::from_fn(&s, &s, |j| match j {
        0 => SVec::unit(2),
        1 => SVec::unit(3),
        _ => SVec::new(),
    });
    (s, [x, y])
}

/// `A = R/(x − y) = ℚ[t]/(t²)`, the diagonal bimodule.
fn diagonal() -> (Space, [LinearMap; 2]) {
    let s = Space::new(vec!["1".into(), "t".into()]).expect("labels");
    let t = LinearMap::from_fn(&s, &s, |j| if j == 0 { SVec::unit(1) } else { SVec::new() });
    (s, [t.clone(), t])
}

/// Multiplication by `x + c·y` on `R`.
fn mult(c: i64) -> LinearMap {
    let (_, [x, y]) = free();
    x.add_scaled(&int(c), &y).expect("same shape")
}

/// The exact complex `0 -> K -> P_length -> … -> P_0 -> A -> 0` with
/// `P_i = R` and differentials alternating `x − y`, `x + y`, closed at the
/// bottom by the kernel `K = (x − c·y)R` of the last one, `A` in degree 0.
fn resolution_complex(length: usize) -> Module {
    let (r, ra) = free();
    let (a, aa) = diagonal();
    let mut spaces = BTreeMap::new();
    let mut actions = BTreeMap::new();
    let mut d = BTreeMap::new();
    let bottom = -(length as i64) - 1;
    // P_i sits in degree −i−1 and is followed by multiplication by x + c_i·y
    let c = |i: i64| if i % 2 == 0 { -1 } else { 1 };
    for k in bottom..=-1 {
        spaces.insert(k, r.relabel(|l| format!("{l}@{}", -k - 1)).expect("labels"));
        actions.insert(k, ra.clone());
    }
    for k in bottom..-1 {
        d.insert(k, mult(c(-k - 2)).with_spaces(&spaces[&k], &spaces[&(k + 1)]).expect("shape"));
    }
    // K with basis v = x − c·y, w = xy: x·v = −c·w, y·v = w
    let cl = c(length as i64 - 1);
    let k = Space::new(vec!["v".into(), "w".into()]).expect("labels");
    let kx = LinearMap::from_fn(&k, &k, |j| if j == 0 { SVec::from_pairs([(1, int(-cl))]) } else { SVec::new() });
    let ky = LinearMap::from_fn(&k, &k, |j| if j == 0 { SVec::unit(1) } else { SVec::new() });
    let inclusion = LinearMap::from_fn(&k, &spaces[&bottom], |j| {
        if j == 0 {
            SVec::from_pairs([(1, int(1)), (2, int(-cl))])
        } else {
            SVec::unit(3)
        }
    });
    spaces.insert(bottom - 1, k);
    actions.insert(bottom - 1, [kx, ky]);
    d.insert(bottom - 1, inclusion);
    let augmentation = LinearMap::from_fn(&spaces[&-1], &a, |j| match j {
        0 => SVec::unit(0),
        1 | 2 => SVec::unit(1),
        _ => SVec::new(),
    });
    spaces.insert(0, a);
    actions.insert(0, aa);
    d.insert(-1, augmentation);
    Module { spaces, actions, d }
}

/// `P_length -> … -> P_0`, the truncated free resolution of `A` on its own.
fn truncated_resolution(length: usize) -> Module {
    let full = resolution_complex(length);
    let range = -(length as i64) - 1..-1;
    fn shift<T>(m: BTreeMap<i64, T>, range: &std::ops::Range<i64>, last: i64) -> BTreeMap<i64, T> {
        m.into_iter().filter(|(k, _)| range.contains(k) || *k == last).map(|(k, v)| (k + 1, v)).collect()
    }
    Module {
        spaces: shift(full.spaces, &range, -1),
        actions: shift(full.actions, &range, -1),
        d: shift(full.d, &range, -2),
    }
}

fn diagonal_module() -> Module {
    let (a, aa) = diagonal();
    Module { spaces: BTreeMap::from([(0, a)]), actions: BTreeMap::from([(0, aa)]), d: BTreeMap::new() }
}

/// `Hom_R(X, Y)` in one degree: a basis of tuples `(φ_k: X^k -> Y^{k+n})` of
/// `R`-linear maps, flattened as `Σ_k` blocks of column-major matrices.
struct HomDegree {
    blocks: Vec<(i64, usize, usize, usize)>,
    free: Vec<usize>,
    basis: Vec<SVec>,
}

impl HomDegree {
    fn new(x: &Module, y: &Module, n: i64) -> Self {
        let (lo, hi) = x.range();
        let mut blocks = Vec::new();
        let mut len = 0;
        for k in lo..=hi {
            let (dx, dy) = (x.dim(k), y.dim(k + n));
            if dx > 0 && dy > 0 {
                blocks.push((k, dx, dy, len));
                len += dx * dy;
            }
        }
        // φ g_X = g_Y φ for both generators
        let mut rows = Vec::new();
        for &(k, dx, dy, off) in &blocks {
            for g in 0..2 {
                let (gx, gy) = (x.action(k, g), y.action(k + n, g).rows());
                for col in 0..dx {
                    for row in 0..dy {
                        let mut acc = crate::linalg::Accum::new();
                        for (j, s) in gx.col(col).entries() {
                            acc.add(off + j * dy + row, s.clone());
                        }
                        for (i, s) in gy[row].entries() {
                            acc.add(off + col * dy + i, -s.clone());
                        }
                        rows.push(acc.finish());
                    }
                }
            }
        }
        let (free, basis) = kernel_of_rows(&rows, len);
        HomDegree { blocks, free, basis }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of an `R`-linear tuple in the kernel basis.
    fn coordinates(&self, v: &SVec) -> SVec {
        SVec::from_pairs(self.free.iter().enumerate().map(|(c, &f)| (c, v.get(f))))
    }

    fn block(&self, v: &SVec, k: i64) -> Option<LinearMap> {
        let &(_, dx, dy, off) = self.blocks.iter().find(|b| b.0 == k)?;
        let cols = (0..dx)
            .map(|c| SVec::from_pairs((0..dy).map(|r| (r, v.get(off + c * dy + r))).filter(|(_, s)| !num_traits::Zero::is_zero(s))))
            .collect();
        Some(LinearMap::new(Space::numbered("s", dx), Space::numbered("t", dy), cols).expect("block shape"))
    }

    fn flatten(&self, maps: &BTreeMap<i64, LinearMap>) -> SVec {
        let mut acc = crate::linalg::Accum::new();
        for &(k, _, dy, off) in &self.blocks {
            if let Some(m) = maps.get(&k) {
                for (c, col) in m.cols().iter().enumerate() {
                    for (r, s) in col.entries() {
                        acc.add(off + c * dy + r, s.clone());
                    }
                }
            }
        }
        acc.finish()
    }
}

/// The dg category of complexes of `A`-bimodules, i.e. `R`-modules, on three
/// objects: the unit `e`, modelled by the truncated free resolution of the
/// diagonal bimodule, the diagonal bimodule `A` itself, and the acyclic
/// complex `J` that closes the resolution up.
pub fn bimodule_model(length: usize) -> Result<DgCategory, Error> {
    let modules = [truncated_resolution(length), diagonal_module(), resolution_complex(length)];
    let names = vec!["e".to_string(), "A".to_string(), "J".to_string()];
    let span = length as i64 + 2;
    let mut homs: BTreeMap<(usize, usize, i64), HomDegree> = BTreeMap::new();
    for (i, x) in modules.iter().enumerate() {
        for (j, y) in modules.iter().enumerate() {
            for n in -span..=span {
                let h = HomDegree::new(x, y, n);
                if h.dim() > 0 {
                    homs.insert((i, j, n), h);
                }
            }
        }
    }
    let mut b = DgCategoryBuilder::new(names);
    for i in 0..3 {
        for j in 0..3 {
            let (x, y) = (&modules[i], &modules[j]);
            let spaces: BTreeMap<i64, Space> = homs
                .iter()
                .filter(|((a, c, _), _)| *a == i && *c == j)
                .map(|(&(_, _, n), h)| (n, Space::numbered(&format!("h{n}_"), h.dim())))
                .collect();
            let complex = crate::cochain::CochainComplex::from_fn(spaces, |n, s, t| {
                let (src, tgt) = (&homs[&(i, j, n)], &homs[&(i, j, n + 1)]);
                let cols = src
                    .basis
                    .iter()
                    .map(|phi| {
                        // dφ = d_Y φ − (−1)^n φ d_X
                        let mut maps = BTreeMap::new();
                        let (lo, hi) = x.range();
                        for k in lo - 1..=hi {
                            let mut total: Option<LinearMap> = None;
                            if let Some(p) = src.block(phi, k) {
                                let m = y.d(k + n).with_spaces(&Space::numbered("t", y.dim(k + n)), &Space::numbered("t", y.dim(k + n + 1))).expect("shape");
                                total = Some(m.compose(&p).expect("shape"));
                            }
                            if let Some(p) = src.block(phi, k + 1) {
                                let dx = x.d(k).with_spaces(&Space::numbered("s", x.dim(k)), &Space::numbered("s", x.dim(k + 1))).expect("shape");
                                let term = p.compose(&dx).expect("shape").scale(&crate::linalg::scalar::sign(n + 1));
                                total = Some(match total {
                                    Some(t) => t.add(&term).expect("shape"),
                                    None => term,
                                });
                            }
                            if let Some(t) = total {
                                maps.insert(k, t);
                            }
                        }
                        tgt.coordinates(&tgt.flatten(&maps))
                    })
                    .collect();
                LinearMap::new(s.clone(), t.clone(), cols).expect("Hom differential shape")
            })?;
            b.set_hom(i, j, complex);
        }
    }
    // composition ψ∘φ, blockwise
    for ((x, y, n), h1) in &homs {
        for ((y2, z, m), h2) in &homs {
            if y2 != y {
                continue;
            }
            let Some(h3) = homs.get(&(*x, *z, n + m)) else { continue };
            for (fi, phi) in h1.basis.iter().enumerate() {
                for (gi, psi) in h2.basis.iter().enumerate() {
                    let mut maps = BTreeMap::new();
                    for &(k, _, _, _) in &h1.blocks {
                        if let (Some(p), Some(q)) = (h1.block(phi, k), h2.block(psi, k + n)) {
                            maps.insert(k, q.compose(&p).expect("shape"));
                        }
                    }
                    let v = h3.coordinates(&h3.flatten(&maps));
                    if !v.is_zero() {
                        b.set_product(*x, *y, *z, (*m, gi), (*n, fi), v);
                    }
                }
            }
        }
    }
    for (o, module) in modules.iter().enumerate() {
        let h = &homs[&(o, o, 0)];
        let ids: BTreeMap<i64, LinearMap> =
            module.spaces.iter().map(|(&k, s)| (k, LinearMap::identity(&Space::numbered("s", s.dim())))).collect();
        b.set_unit(o, h.coordinates(&h.flatten(&ids)));
    }
    b.build()
}

#[derive(Clone, Debug, Serialize)]
pub struct KldReport {
    pub length: usize,
    pub window: (i64, i64),
    pub level_cap: usize,
    /// `dim H^n End(e)` in the quotient, for `n` in the window.
    pub cohomology: BTreeMap<i64, usize>,
    /// `dim H^n Hom(e, A)` in the quotient.
    pub to_diagonal: BTreeMap<i64, usize>,
    pub hom_dim: usize,
}

/// `H^n End(e)` in `Dr(model / J)` for `n` in the window, with at most
/// `level_cap` letters `ε`.
pub fn kld_desk_check(length: usize, window: (i64, i64), level_cap: usize) -> Result<KldReport, Error> {
    let model = bimodule_model(length)?;
    let p = PCat::new(model, vec![vec![2]])?;
    let q = generalized_quotient(&p, QuotientOptions { window, level_cap: Some(level_cap) })?;
    let end = q.hom(0, 0);
    let cohomology = (window.0..=window.1).map(|n| (n, end.cohomology_dim(n))).collect();
    let to_diagonal = (window.0..=window.1).map(|n| (n, q.hom(0, 1).cohomology_dim(n))).collect();
    Ok(KldReport { length, window, level_cap, cohomology, to_diagonal, hom_dim: end.total_dim() })
}
