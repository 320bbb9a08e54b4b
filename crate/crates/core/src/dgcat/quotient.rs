use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};

use super::category::{hom_basis, DgCat, DgCategory, Elem};
use super::tensor::{numbered_labels, PCat};
use crate::cochain::CochainComplex;
use crate::error::Error;
use crate::linalg::scalar::sign;
use crate::linalg::{Accum, LinearMap, SVec, Scalar, Space};

/// A basis morphism of a quotient category:
/// `f_n ε^{S_n}_{Y_n} f_{n−1} … ε^{S_1}_{Y_1} f_0`.
///
/// `morphs[k] = f_k ∈ Hom(Y_k, Y_{k+1})` with `Y_0` the source and `Y_{n+1}`
/// the target; `objects[k−1] = Y_k`; `marks[k−1] = S_k` as a bit mask over the
/// marked subcategories.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    pub morphs: Vec<Elem>,
    pub objects: Vec<usize>,
    pub marks: Vec<u64>,
}

impl Chain {
    pub fn plain(f: Elem) -> Chain {
        Chain { morphs: vec![f], objects: Vec::new(), marks: Vec::new() }
    }

    /// Number of ε letters.
    pub fn level(&self) -> usize {
        self.objects.len()
    }

    pub fn degree(&self) -> i64 {
        self.morphs.iter().map(|m| m.0).sum::<i64>() - self.marks.iter().map(|m| m.count_ones() as i64).sum::<i64>()
    }

    /// The object at position `k` (0 = source, `level + 1` = target).
    pub fn object(&self, k: usize, source: usize, target: usize) -> usize {
        if k == 0 {
            source
        } else if k == self.level() + 1 {
            target
        } else {
            self.objects[k - 1]
        }
    }
}

/// Degree window and optional cap on the number of ε letters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuotientOptions {
    pub window: (i64, i64),
    pub level_cap: Option<usize>,
}

impl QuotientOptions {
    pub fn window(lo: i64, hi: i64) -> Self {
        QuotientOptions { window: (lo, hi), level_cap: None }
    }
}

/// A Hom complex of the quotient with its chain basis.
#[derive(Debug)]
pub struct QuotientHom {
    pub complex: CochainComplex,
    pub chains: BTreeMap<i64, Vec<Chain>>,
    pub index: HashMap<Chain, Elem>,
}

/// The (generalized) Drinfeld quotient `C/(C_1, …, C_k)`, realized in a
/// degree window. Components are built for degrees `lo−1 ..= hi+1`, so
/// cohomology is exact in `lo ..= hi`.
pub struct QuotientCategory {
    base: Arc<DgCategory>,
    marked: Vec<Vec<usize>>,
    masks: Vec<u64>,
    opts: QuotientOptions,
    top_degree: i64,
    homs: Vec<OnceLock<QuotientHom>>,
}

impl std::fmt::Debug for QuotientCategory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("QuotientCategory")
            .field("objects", &self.base.objects())
            .field("marked", &self.marked)
            .field("opts", &self.opts)
            .finish()
    }
}

/// Generalized Drinfeld quotient of a marked dg category.
pub fn generalized_quotient(p: &PCat, opts: QuotientOptions) -> Result<QuotientCategory, Error> {
    let (lo, hi) = opts.window;
    if lo > 0 || hi < 0 {
        return Err(Error::Invalid(format!("window {lo}:{hi} must contain degree 0")));
    }
    if p.marked.len() > 63 {
        return Err(Error::Invalid("at most 63 marked subcategories".into()));
    }
    let base = &p.category;
    let n = base.len();
    let top_degree = (0..n)
        .flat_map(|x| (0..n).filter_map(move |y| base.hom(x, y).support().map(|s| s.1)))
        .max()
        .unwrap_or(0);
    if top_degree > 0 && opts.level_cap.is_none() {
        return Err(Error::Invalid(
            "Hom complexes with positive degrees need an explicit level cap".into(),
        ));
    }
    Ok(QuotientCategory {
        base: Arc::new(base.clone()),
        marked: p.marked.clone(),
        masks: p.masks(),
        opts,
        top_degree,
        homs: (0..n * n).map(|_| OnceLock::new()).collect(),
    })
}

/// Drinfeld quotient `C/C_0` (one marked subcategory).
pub fn drinfeld_quotient(c: &DgCategory, c0: &[usize], window: (i64, i64)) -> Result<QuotientCategory, Error> {
    if c0.is_empty() {
        return Err(Error::Invalid("the killed subcategory is empty".into()));
    }
    generalized_quotient(&PCat::new(c.clone(), vec![c0.to_vec()])?, QuotientOptions::window(window.0, window.1))
}

fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut s = mask;
    let mut done = mask == 0;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let cur = s;
        if s == 0 {
            done = true;
            return None;
        }
        s = (s - 1) & mask;
        Some(cur)
    })
}

fn members(mask: u64) -> Vec<u32> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

impl QuotientCategory {
    pub fn base(&self) -> &Arc<DgCategory> {
        &self.base
    }

    pub fn marked(&self) -> &[Vec<usize>] {
        &self.marked
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    pub fn options(&self) -> QuotientOptions {
        self.opts
    }

    /// Degrees in which cohomology is exact.
    pub fn valid_window(&self) -> (i64, i64) {
        self.opts.window
    }

    pub fn is_level_truncated(&self) -> bool {
        self.opts.level_cap.is_some()
    }

    pub fn quotient_hom(&self, x: usize, y: usize) -> &QuotientHom {
        self.homs[x * self.base.len() + y].get_or_init(|| self.build_hom(x, y))
    }

    pub fn chain(&self, x: usize, y: usize, e: Elem) -> &Chain {
        &self.quotient_hom(x, y).chains[&e.0][e.1]
    }

    pub fn index_of(&self, x: usize, y: usize, c: &Chain) -> Option<Elem> {
        self.quotient_hom(x, y).index.get(c).copied()
    }

    /// Sums chains into a vector of `Hom(x, y)`; chains outside the realized
    /// window are dropped.
    pub fn chains_to_vec(&self, x: usize, y: usize, terms: impl IntoIterator<Item = (Chain, Scalar)>) -> SVec {
        let h = self.quotient_hom(x, y);
        let mut acc = Accum::new();
        for (c, s) in terms {
            if let Some(&(_, k)) = h.index.get(&c) {
                acc.add(k, s);
            }
        }
        acc.finish()
    }

    fn degree_range(&self) -> (i64, i64) {
        (self.opts.window.0 - 1, self.opts.window.1 + 1)
    }

    fn enumerate(&self, x: usize, y: usize) -> Vec<Chain> {
        let (lo, hi) = self.degree_range();
        let n = self.base.len();
        let marked_objects: Vec<usize> = (0..n).filter(|&o| self.masks[o] != 0).collect();
        let gain = (self.top_degree - 1).max(0);
        let mut out = Vec::new();
        let mut stack: Vec<(usize, Chain, i64)> =
            vec![(x, Chain { morphs: Vec::new(), objects: Vec::new(), marks: Vec::new() }, 0)];
        while let Some((cur, partial, deg)) = stack.pop() {
            for f in hom_basis(self.base.as_ref(), cur, y) {
                let d = deg + f.0;
                if d >= lo && d <= hi {
                    let mut c = partial.clone();
                    c.morphs.push(f);
                    out.push(c);
                }
            }
            let level = partial.level();
            if self.opts.level_cap.is_some_and(|cap| level >= cap) {
                continue;
            }
            let remaining = self.opts.level_cap.map_or(0, |cap| cap - level - 1) as i64;
            for &yk in &marked_objects {
                for f in hom_basis(self.base.as_ref(), cur, yk) {
                    for s in submasks(self.masks[yk]) {
                        let nd = deg + f.0 - s.count_ones() as i64;
                        if nd + remaining * gain + self.top_degree < lo {
                            continue;
                        }
                        let mut c = partial.clone();
                        c.morphs.push(f);
                        c.objects.push(yk);
                        c.marks.push(s);
                        stack.push((yk, c, nd));
                    }
                }
            }
        }
        out.sort_by(|a, b| (a.level(), a).cmp(&(b.level(), b)));
        out
    }

    fn label(&self, x: usize, y: usize, c: &Chain) -> String {
        let single = self.marked.len() == 1;
        let mut parts = Vec::new();
        for k in (0..c.morphs.len()).rev() {
            let (a, b) = (c.object(k, x, y), c.object(k + 1, x, y));
            let f = c.morphs[k];
            parts.push(self.base.hom(a, b).space(f.0).label(f.1).to_string());
            if k >= 1 {
                let obj = &self.base.objects()[c.objects[k - 1]];
                if single {
                    parts.push(format!("ε({obj})"));
                } else {
                    let s: Vec<String> = members(c.marks[k - 1]).iter().map(|i| (i + 1).to_string()).collect();
                    parts.push(format!("ε{{{}}}({obj})", s.join(",")));
                }
            }
        }
        parts.join("·")
    }

    fn build_hom(&self, x: usize, y: usize) -> QuotientHom {
        let mut chains: BTreeMap<i64, Vec<Chain>> = BTreeMap::new();
        for c in self.enumerate(x, y) {
            chains.entry(c.degree()).or_default().push(c);
        }
        let mut index = HashMap::new();
        let mut spaces = BTreeMap::new();
        for (&n, list) in &chains {
            for (k, c) in list.iter().enumerate() {
                index.insert(c.clone(), (n, k));
            }
            let labels: Vec<String> = list.iter().map(|c| self.label(x, y, c)).collect();
            spaces.insert(n, Space::new(labels.clone()).unwrap_or_else(|_| numbered_labels(&labels)));
        }
        let mut diffs = BTreeMap::new();
        for (&n, list) in &chains {
            let Some(next) = spaces.get(&(n + 1)) else { continue };
            let cols = list
                .iter()
                .map(|c| {
                    let mut acc = Accum::new();
                    for (t, s) in self.differential_terms(x, y, c) {
                        let (_, k) = index[&t];
                        acc.add(k, s);
                    }
                    acc.finish()
                })
                .collect();
            diffs.insert(n, LinearMap::new(spaces[&n].clone(), next.clone(), cols).expect("quotient differential"));
        }
        let complex = CochainComplex::new(spaces, diffs).expect("quotient differential squares to zero");
        QuotientHom { complex, chains, index }
    }

    /// `d` of a chain as a list of chains with coefficients (Leibniz rule over
    /// the word, `dε^S = Σ_t (−1)^{|S|−1−t} ε^{S∖s_t}`, `ε^∅ = id`).
    pub fn differential_terms(&self, x: usize, y: usize, c: &Chain) -> Vec<(Chain, Scalar)> {
        let mut out = Vec::new();
        let mut left_deg = 0i64;
        for k in (0..c.morphs.len()).rev() {
            let f = c.morphs[k];
            let (a, b) = (c.object(k, x, y), c.object(k + 1, x, y));
            for (i, v) in self.base.hom(a, b).d(f.0).col(f.1).entries() {
                let mut t = c.clone();
                t.morphs[k] = (f.0 + 1, *i);
                out.push((t, sign(left_deg) * v));
            }
            left_deg += f.0;
            if k == 0 {
                break;
            }
            let s = c.marks[k - 1];
            let ms = members(s);
            let m = ms.len() as i64;
            for (t_idx, bit) in ms.iter().enumerate() {
                let coeff = sign(left_deg + m - 1 - t_idx as i64);
                if m >= 2 {
                    let mut t = c.clone();
                    t.marks[k - 1] = s & !(1u64 << bit);
                    out.push((t, coeff));
                } else {
                    // dε = id: contract f_k ∘ f_{k−1}
                    let g = c.morphs[k - 1];
                    let src = c.object(k - 1, x, y);
                    let v = self.base.compose(src, a, b, f, g);
                    for (i, w) in v.entries() {
                        let mut t = c.clone();
                        t.morphs.splice(k - 1..=k, [(f.0 + g.0, *i)]);
                        t.objects.remove(k - 1);
                        t.marks.remove(k - 1);
                        out.push((t, &coeff * w));
                    }
                }
            }
            left_deg -= m;
        }
        out
    }

    /// `g ∘ f` of chains: concatenation, merging the adjacent base morphisms.
    pub fn concat(&self, x: usize, y: usize, z: usize, g: &Chain, f: &Chain) -> Vec<(Chain, Scalar)> {
        let last = *f.morphs.last().expect("nonempty chain");
        let first = g.morphs[0];
        let src = f.object(f.level(), x, y);
        let dst = g.object(1, y, z);
        let merged = self.base.compose(src, y, dst, first, last);
        merged
            .entries()
            .iter()
            .map(|(i, s)| {
                let mut morphs = f.morphs[..f.morphs.len() - 1].to_vec();
                morphs.push((first.0 + last.0, *i));
                morphs.extend_from_slice(&g.morphs[1..]);
                let mut objects = f.objects.clone();
                objects.extend_from_slice(&g.objects);
                let mut marks = f.marks.clone();
                marks.extend_from_slice(&g.marks);
                (Chain { morphs, objects, marks }, s.clone())
            })
            .collect()
    }

    /// Image of a base morphism vector as length-0 chains.
    pub fn include_vec(&self, x: usize, y: usize, deg: i64, v: &SVec) -> SVec {
        self.chains_to_vec(x, y, v.entries().iter().map(|(i, s)| (Chain::plain((deg, *i)), s.clone())))
    }
}

impl DgCat for QuotientCategory {
    fn objects(&self) -> &[String] {
        self.base.objects()
    }

    fn hom(&self, x: usize, y: usize) -> &CochainComplex {
        &self.quotient_hom(x, y).complex
    }

    fn compose(&self, x: usize, y: usize, z: usize, g: Elem, f: Elem) -> SVec {
        let (cg, cf) = (self.chain(y, z, g).clone(), self.chain(x, y, f).clone());
        self.chains_to_vec(x, z, self.concat(x, y, z, &cg, &cf))
    }

    fn unit(&self, x: usize) -> SVec {
        self.include_vec(x, x, 0, &self.base.unit(x))
    }

    fn floor(&self) -> Option<i64> {
        Some(self.degree_range().0)
    }

    fn ceiling(&self) -> Option<i64> {
        Some(self.opts.window.1)
    }
}
