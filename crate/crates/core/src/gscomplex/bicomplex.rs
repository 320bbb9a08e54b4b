use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Error;
use crate::hopf::Bialgebra;
use crate::linalg::scalar::sign;
use crate::linalg::subquotient::kernel_of;
use crate::linalg::{permute_factors, rank, LinearMap, SVec, Scalar, Space, SubQuotient};

/// `C^{p,q} = Hom(B^{⊗p}, B^{⊗q})` for `1 ≤ p ≤ pmax`, `1 ≤ q ≤ qmax`, with
/// the Hochschild differential `d_h` (coefficients `B^{⊗q}` with the diagonal
/// bimodule structure) and the coHochschild differential `d_v` (coefficients
/// `B^{⊗p}` with the diagonal bicomodule structure).
///
/// A cochain `f` is stored column-major: entry `(r, c)` (output basis `r`,
/// input basis `c`) sits at `c · dim B^q + r`.
pub struct GsBicomplex {
    base: Bialgebra,
    pmax: usize,
    qmax: usize,
    dh: BTreeMap<(usize, usize), LinearMap>,
    dv: BTreeMap<(usize, usize), LinearMap>,
}

fn power(s: &Space, k: usize) -> Space {
    if k == 0 {
        return Space::ground();
    }
    Space::tensor_all(&vec![s; k])
}

fn id_power(s: &Space, k: usize) -> LinearMap {
    LinearMap::identity(&power(s, k))
}

/// `Δ^{(q)}: B -> B^{⊗q}`.
fn iterated_coproduct(b: &Bialgebra, q: usize) -> LinearMap {
    let mut d = b.identity();
    for k in 1..q {
        d = b.delta().kron(&id_power(b.space(), k - 1)).compose_unchecked(&d);
    }
    d
}

/// `m^{(p)}: B^{⊗p} -> B`.
fn iterated_product(b: &Bialgebra, p: usize) -> LinearMap {
    let mut m = b.identity();
    for k in 1..p {
        m = b.m().compose_unchecked(&m.kron(&b.identity()));
        debug_assert_eq!(m.ncols(), b.dim().pow(k as u32 + 1));
    }
    m
}

/// `(x₁…x_k, y₁…y_k) ↦ (x₁,y₁,…,x_k,y_k)` on `B^{⊗2k}`.
fn interleave(s: &Space, k: usize) -> LinearMap {
    let perm: Vec<usize> = (0..2 * k).map(|i| if i % 2 == 0 { i / 2 } else { k + i / 2 }).collect();
    permute_factors(&vec![s; 2 * k], &perm)
}

/// `(x₁,y₁,…,x_k,y_k) ↦ (x₁…x_k, y₁…y_k)`.
fn deinterleave(s: &Space, k: usize) -> LinearMap {
    let perm: Vec<usize> = (0..2 * k).map(|i| if i < k { 2 * i } else { 2 * (i - k) + 1 }).collect();
    permute_factors(&vec![s; 2 * k], &perm)
}

fn mult_power(b: &Bialgebra, k: usize) -> LinearMap {
    LinearMap::kron_all(&vec![b.m(); k])
}

/// `a·(y₁⊗…⊗y_q) = a₁y₁ ⊗ … ⊗ a_qy_q` as `B ⊗ B^{⊗q} -> B^{⊗q}`.
fn left_action(b: &Bialgebra, q: usize) -> LinearMap {
    let spread = iterated_coproduct(b, q).kron(&id_power(b.space(), q));
    mult_power(b, q).compose_unchecked(&interleave(b.space(), q)).compose_unchecked(&spread)
}

/// `(y₁⊗…⊗y_q)·a` as `B^{⊗q} ⊗ B -> B^{⊗q}`.
fn right_action(b: &Bialgebra, q: usize) -> LinearMap {
    let spread = id_power(b.space(), q).kron(&iterated_coproduct(b, q));
    mult_power(b, q).compose_unchecked(&interleave(b.space(), q)).compose_unchecked(&spread)
}

/// `x ↦ x₍₁₎ ⊗ x₍₂₎` on `B^{⊗p}`: `(m^{(p)} ⊗ id)` or `(id ⊗ m^{(p)})` after
/// splitting every factor.
fn coactions(b: &Bialgebra, p: usize) -> (LinearMap, LinearMap) {
    let split = deinterleave(b.space(), p).compose_unchecked(&LinearMap::kron_all(&vec![b.delta(); p]));
    let (mp, idp) = (iterated_product(b, p), id_power(b.space(), p));
    (mp.kron(&idp).compose_unchecked(&split), idp.kron(&mp).compose_unchecked(&split))
}

/// `id^{i} ⊗ g ⊗ id^{rest}`.
fn at_slot(s: &Space, before: usize, g: &LinearMap, after: usize) -> LinearMap {
    let mut parts: Vec<LinearMap> = Vec::new();
    if before > 0 {
        parts.push(id_power(s, before));
    }
    parts.push(g.clone());
    if after > 0 {
        parts.push(id_power(s, after));
    }
    LinearMap::kron_all(&parts.iter().collect::<Vec<_>>())
}

/// Accumulates columns of a map between cells.
struct CellMap {
    cols: Vec<Vec<(usize, Scalar)>>,
}

impl CellMap {
    fn new(n: usize) -> Self {
        CellMap { cols: vec![Vec::new(); n] }
    }

    fn finish(self, from: usize, to: usize) -> LinearMap {
        let cols = self.cols.into_iter().map(SVec::from_pairs).collect();
        LinearMap::new(Space::numbered("c", from), Space::numbered("c", to), cols).expect("shape")
    }
}

fn hochschild(b: &Bialgebra, p: usize, q: usize) -> LinearMap {
    let n = b.dim();
    let (np, nq) = (n.pow(p as u32), n.pow(q as u32));
    let (act_l, act_r) = (left_action(b, q), right_action(b, q));
    let faces: Vec<Vec<SVec>> = (1..=p).map(|i| at_slot(b.space(), i - 1, b.m(), p - i).rows()).collect();
    let mut out = CellMap::new(np * nq);
    for c in 0..np {
        for r in 0..nq {
            let col = &mut out.cols[c * nq + r];
            for a in 0..n {
                for (row, x) in act_l.col(a * nq + r).entries() {
                    col.push(((a * np + c) * nq + row, x.clone()));
                }
            }
            for (i, rows) in faces.iter().enumerate() {
                let s = sign(i as i64 + 1);
                for (j, x) in rows[c].entries() {
                    col.push((j * nq + r, x * &s));
                }
            }
            let s = sign(p as i64 + 1);
            for a in 0..n {
                for (row, x) in act_r.col(r * n + a).entries() {
                    col.push(((c * n + a) * nq + row, x * &s));
                }
            }
        }
    }
    out.finish(np * nq, np * n * nq)
}

fn cohochschild(b: &Bialgebra, p: usize, q: usize) -> LinearMap {
    let n = b.dim();
    let (np, nq) = (n.pow(p as u32), n.pow(q as u32));
    let nq1 = nq * n;
    let (rho_l, rho_r) = coactions(b, p);
    // group coaction terms by the B^{⊗p} component
    let mut left: Vec<Vec<(usize, usize, Scalar)>> = vec![Vec::new(); np];
    let mut right: Vec<Vec<(usize, usize, Scalar)>> = vec![Vec::new(); np];
    for j in 0..np {
        for (i, x) in rho_l.col(j).entries() {
            left[i % np].push((j, i / np, x.clone()));
        }
        for (i, x) in rho_r.col(j).entries() {
            right[i / n].push((j, i % n, x.clone()));
        }
    }
    let cofaces: Vec<LinearMap> = (1..=q).map(|i| at_slot(b.space(), i - 1, b.delta(), q - i)).collect();
    let mut out = CellMap::new(np * nq);
    for c in 0..np {
        for r in 0..nq {
            let col = &mut out.cols[c * nq + r];
            for (j, a, x) in &left[c] {
                col.push((j * nq1 + a * nq + r, x.clone()));
            }
            for (i, d) in cofaces.iter().enumerate() {
                let s = sign(i as i64 + 1);
                for (row, x) in d.col(r).entries() {
                    col.push((c * nq1 + row, x * &s));
                }
            }
            let s = sign(q as i64 + 1);
            for (j, a, x) in &right[c] {
                col.push((j * nq1 + r * n + a, x * &s));
            }
        }
    }
    out.finish(np * nq, np * nq1)
}

impl GsBicomplex {
    pub fn new(base: &Bialgebra, pmax: usize, qmax: usize) -> Result<Self, Error> {
        if pmax < 2 || qmax < 2 {
            return Err(Error::Invalid(format!("window ({pmax},{qmax}) is too small; need at least (2,2)")));
        }
        let failures = base.validate();
        if !failures.is_empty() {
            let names: Vec<String> = failures.iter().map(|f| f.axiom.to_string()).collect();
            return Err(Error::Invalid(format!("not a bialgebra: {}", names.join(", "))));
        }
        let mut dh = BTreeMap::new();
        let mut dv = BTreeMap::new();
        for p in 1..=pmax {
            for q in 1..=qmax {
                if p < pmax {
                    dh.insert((p, q), hochschild(base, p, q));
                }
                if q < qmax {
                    dv.insert((p, q), cohochschild(base, p, q));
                }
            }
        }
        Ok(GsBicomplex { base: base.clone(), pmax, qmax, dh, dv })
    }

    pub fn base(&self) -> &Bialgebra {
        &self.base
    }

    pub fn window(&self) -> (usize, usize) {
        (self.pmax, self.qmax)
    }

    pub fn cell_dim(&self, p: usize, q: usize) -> usize {
        self.base.dim().pow((p + q) as u32)
    }

    /// `d_h: C^{p,q} -> C^{p+1,q}` (needs `p < pmax`).
    pub fn dh(&self, p: usize, q: usize) -> Option<&LinearMap> {
        self.dh.get(&(p, q))
    }

    /// `d_v: C^{p,q} -> C^{p,q+1}` (needs `q < qmax`).
    pub fn dv(&self, p: usize, q: usize) -> Option<&LinearMap> {
        self.dv.get(&(p, q))
    }

    /// Cells where `d_h² = 0`, `d_v² = 0` or `d_h d_v = d_v d_h` fails.
    pub fn identity_failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for p in 1..=self.pmax {
            for q in 1..=self.qmax {
                if let (Some(a), Some(b)) = (self.dh(p, q), self.dh(p + 1, q)) {
                    if !b.compose_unchecked(a).is_zero() {
                        out.push(format!("d_h² ≠ 0 on C^{{{p},{q}}}"));
                    }
                }
                if let (Some(a), Some(b)) = (self.dv(p, q), self.dv(p, q + 1)) {
                    if !b.compose_unchecked(a).is_zero() {
                        out.push(format!("d_v² ≠ 0 on C^{{{p},{q}}}"));
                    }
                }
                if let (Some(h), Some(v), Some(h2), Some(v2)) =
                    (self.dh(p, q), self.dv(p, q), self.dh(p, q + 1), self.dv(p + 1, q))
                {
                    if !h2.compose_unchecked(v).same_entries(&v2.compose_unchecked(h)) {
                        out.push(format!("d_h d_v ≠ d_v d_h on C^{{{p},{q}}}"));
                    }
                }
            }
        }
        out
    }

    /// Cells `(p, q)` with `p + q = n + 1` inside the window.
    pub fn cells(&self, n: usize) -> Vec<(usize, usize)> {
        (1..=self.pmax).filter(|&p| n + 1 > p && n + 1 - p >= 1 && n + 1 - p <= self.qmax).map(|p| (p, n + 1 - p)).collect()
    }

    /// Largest total degree whose neighbouring cells all lie in the window.
    pub fn max_complete_degree(&self) -> usize {
        self.pmax.min(self.qmax) - 1
    }

    /// The normalized subspace of `C^{p,q}`: cochains vanishing when any
    /// input is `1` and killed by `ε` in every output slot.
    pub fn normalized_cell(&self, p: usize, q: usize) -> SubQuotient {
        let b = &self.base;
        let (n, s) = (b.dim(), b.space());
        let (np, nq) = (n.pow(p as u32), n.pow(q as u32));
        let units: Vec<Vec<SVec>> = (1..=p).map(|i| at_slot(s, i - 1, &b.unit_map(), p - i).rows()).collect();
        let counits: Vec<LinearMap> = (1..=q).map(|j| at_slot(s, j - 1, b.counit(), q - j)).collect();
        let (nu, ne) = (np / n, nq / n);
        let rows_total = p * nu * nq + q * np * ne;
        let mut out = CellMap::new(np * nq);
        for c in 0..np {
            for r in 0..nq {
                let col = &mut out.cols[c * nq + r];
                let mut off = 0;
                for u in &units {
                    for (j, x) in u[c].entries() {
                        col.push((off + j * nq + r, x.clone()));
                    }
                    off += nu * nq;
                }
                for e in &counits {
                    for (row, x) in e.col(r).entries() {
                        col.push((off + c * ne + row, x.clone()));
                    }
                    off += np * ne;
                }
            }
        }
        kernel_of(&out.finish(np * nq, rows_total))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GsCohomology {
    pub window: (usize, usize),
    pub normalized: bool,
    /// Total degree `n = p + q − 1` to `dim H^n`.
    pub dims: BTreeMap<usize, usize>,
    /// Cochain dimension per reported degree.
    pub cochains: BTreeMap<usize, usize>,
    /// The normalized cells are closed under the differentials.
    pub subcomplex_closed: bool,
}

/// Total differential `D = d_h + (−1)^p d_v` from degree `n` to `n + 1`,
/// with optional per-cell inclusions and retractions.
fn total_differential(g: &GsBicomplex, n: usize, cells: &BTreeMap<(usize, usize), SubQuotient>) -> (LinearMap, bool) {
    let (src, dst) = (g.cells(n), g.cells(n + 1));
    let dim = |c: &(usize, usize)| cells.get(c).map_or(g.cell_dim(c.0, c.1), |s| s.space.dim());
    let mut offsets = BTreeMap::new();
    let mut total = 0;
    for c in &dst {
        offsets.insert(*c, total);
        total += dim(c);
    }
    let mut closed = true;
    let mut cols = Vec::new();
    for &(p, q) in &src {
        let mut blocks: Vec<(usize, LinearMap)> = Vec::new();
        if let Some(h) = g.dh(p, q) {
            blocks.push((offsets[&(p + 1, q)], restrict(h, cells.get(&(p, q)), cells.get(&(p + 1, q)), &mut closed)));
        }
        if let Some(v) = g.dv(p, q) {
            let v = v.scale(&sign(p as i64));
            blocks.push((offsets[&(p, q + 1)], restrict(&v, cells.get(&(p, q)), cells.get(&(p, q + 1)), &mut closed)));
        }
        for j in 0..dim(&(p, q)) {
            let mut e = Vec::new();
            for (off, m) in &blocks {
                e.extend(m.col(j).entries().iter().map(|(i, x)| (off + i, x.clone())));
            }
            cols.push(SVec::from_pairs(e));
        }
    }
    let from: usize = src.iter().map(dim).sum();
    (LinearMap::new(Space::numbered("t", from), Space::numbered("t", total), cols).expect("shape"), closed)
}

fn restrict(m: &LinearMap, from: Option<&SubQuotient>, to: Option<&SubQuotient>, closed: &mut bool) -> LinearMap {
    match (from, to) {
        (Some(a), Some(b)) => {
            let image = m.compose_unchecked(&a.structure);
            let back = b.splitting.compose_unchecked(&image);
            if !b.structure.compose_unchecked(&back).same_entries(&image) {
                *closed = false;
            }
            back
        }
        _ => m.clone(),
    }
}

/// `dim H^n` of the total complex for every degree the window determines.
pub fn gs_cohomology(g: &GsBicomplex, normalized: bool) -> GsCohomology {
    let top = g.max_complete_degree();
    let mut cells = BTreeMap::new();
    if normalized {
        for n in 1..=top + 1 {
            for (p, q) in g.cells(n) {
                cells.insert((p, q), g.normalized_cell(p, q));
            }
        }
    }
    let mut closed = true;
    let mut ranks = BTreeMap::new();
    for n in 1..=top {
        let (d, ok) = total_differential(g, n, &cells);
        closed &= ok;
        ranks.insert(n, rank(&d));
    }
    let mut dims = BTreeMap::new();
    let mut cochains = BTreeMap::new();
    for n in 1..=top {
        let c: usize =
            g.cells(n).iter().map(|(p, q)| cells.get(&(*p, *q)).map_or(g.cell_dim(*p, *q), |s| s.space.dim())).sum();
        let below = if n > 1 { ranks[&(n - 1)] } else { 0 };
        dims.insert(n, c - ranks[&n] - below);
        cochains.insert(n, c);
    }
    GsCohomology { window: g.window(), normalized, dims, cochains, subcomplex_closed: closed }
}
