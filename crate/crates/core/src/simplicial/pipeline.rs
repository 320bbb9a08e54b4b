use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use super::algebra::DgAlgebra;
use super::fint::{fint_homset, FintMorphism};
use super::monoidal::StrictMonoidal;
use super::premonoid::{validate_leinster, LeinsterPreMonoid, LeinsterReport};
use crate::cochain::{tensor_complexes, CochainComplex, ComplexMap};
use crate::dgcat::{
    chain_hom_map, colax_hom_map, generalized_quotient, hom_basis, tensor_pcat, unit_category, DgCat, Elem, PCat,
    QuotientCategory, QuotientOptions, TensorCategory,
};
use crate::error::Error;
use crate::linalg::{int, LinearMap, SVec, Space};

#[derive(Clone, Copy, Debug)]
pub struct PipelineOptions {
    pub nmax: usize,
    pub window: (i64, i64),
    /// Needed when some Hom complex has positive degrees.
    pub level_cap: Option<usize>,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { nmax: 3, window: (-6, 0), level_cap: None }
    }
}

pub struct PipelineOutput {
    pub premonoid: LeinsterPreMonoid,
    pub report: LeinsterReport,
    pub summary: PipelineSummary,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineSummary {
    pub nmax: usize,
    pub window: (i64, i64),
    /// `e⊗…⊗e` at each level.
    pub basepoints: Vec<String>,
    /// `dim H^k End(e^{⊗n})` for `k` in the window.
    pub cohomology: Vec<BTreeMap<i64, usize>>,
    /// Every level vanishes one degree above the window, so that cohomology
    /// of `X_m ⊗ X_n` is exact in the window and the β verdicts are too.
    pub tensor_exact: bool,
}

/// One level of the construction: the marked category `(M^{⊗n}; J⊗M…, …, …M⊗J)`,
/// its quotient and the basepoint `e^{⊗n}`.
struct Level {
    pcat: PCat,
    quotient: Arc<QuotientCategory>,
    base: usize,
    /// Hom basis of `M^{⊗n}` by factor tuples.
    keys: HashMap<(usize, usize), HashMap<Vec<Elem>, Elem>>,
}

impl Level {
    fn factors(&self, n: usize, k: usize, x: usize) -> Vec<usize> {
        (0..n).map(|i| x / k.pow((n - 1 - i) as u32) % k).collect()
    }

    fn key(&self, n: usize, x: usize, y: usize, e: Elem) -> Vec<Elem> {
        if n == 0 {
            Vec::new()
        } else {
            self.pcat.category.key(x, y, e)
        }
    }
}

fn index_of(factors: &[usize], k: usize) -> usize {
    factors.iter().fold(0, |acc, &x| acc * k + x)
}

/// `[n] ↦ End_{Dr(M^{⊗n})}(e^{⊗n})` as a pre-monoid of dg algebras, with the
/// face and degeneracy maps induced by `⊙` and the colax maps induced by the
/// comparison `Dr(P ⊗ Q) -> Dr(P) ⊗ Dr(Q)`.
pub fn deligne_pipeline(m: &StrictMonoidal, j: &[usize], opts: PipelineOptions) -> Result<PipelineOutput, Error> {
    let failures = m.ideal_failures(j);
    if !failures.is_empty() {
        return Err(Error::Invalid(format!("not a two-sided ideal: {}", failures.join("; "))));
    }
    let k = m.len();
    let e = m.unit();
    let qopts = QuotientOptions { window: opts.window, level_cap: opts.level_cap };
    let first = PCat::new(m.category().clone(), vec![j.to_vec()])?;
    let mut pcats = vec![PCat::new(unit_category(), Vec::new())?, first.clone()];
    for n in 2..=opts.nmax {
        pcats.push(tensor_pcat(&pcats[n - 1], &first)?);
    }
    pcats.truncate(opts.nmax + 1);
    let mut levels = Vec::new();
    for (n, pcat) in pcats.into_iter().enumerate() {
        let quotient = Arc::new(generalized_quotient(&pcat, qopts)?);
        let c = &pcat.category;
        let mut keys = HashMap::new();
        for x in 0..c.len() {
            for y in 0..c.len() {
                let table: HashMap<Vec<Elem>, Elem> = hom_basis(c, x, y)
                    .into_iter()
                    .map(|el| (if n == 0 { Vec::new() } else { c.key(x, y, el) }, el))
                    .collect();
                keys.insert((x, y), table);
            }
        }
        let base = if n == 0 { 0 } else { index_of(&vec![e; n], k) };
        levels.push(Level { pcat, quotient, base, keys });
    }

    let complexes: Vec<CochainComplex> = levels.iter().map(|l| l.quotient.hom(l.base, l.base).clone()).collect();
    let algebras: Vec<DgAlgebra> = levels.iter().map(|l| DgAlgebra::endomorphisms(l.quotient.as_ref(), l.base)).collect();

    let mut action = BTreeMap::new();
    for a in 0..=opts.nmax {
        for b in 0..=opts.nmax {
            for f in fint_homset(a, b) {
                let map = face_map(m, &levels[b], &levels[a], &f)?;
                action.insert(f, map);
            }
        }
    }

    let mut colax = BTreeMap::new();
    for p in 1..opts.nmax {
        for q in 1..=opts.nmax - p {
            let (lp, lq, lpq) = (&levels[p], &levels[q], &levels[p + q]);
            let target = TensorCategory::new(lp.quotient.clone(), lq.quotient.clone());
            let raw = colax_hom_map(&lpq.quotient, &lp.quotient, &lq.quotient, &target, (lpq.base, lpq.base))?;
            // re-index from the key-sorted tensor basis to the block layout
            let t = tensor_complexes(&complexes[p], &complexes[q]);
            let pairs = &target.tensor_hom(lpq.base, lpq.base).pairs;
            let beta = ComplexMap::from_fn(&complexes[p + q], &t.complex, |d| {
                let layer = raw.layer(d);
                let cols = (0..complexes[p + q].dim(d))
                    .map(|i| {
                        let v = if i < layer.ncols() { layer.col(i).clone() } else { SVec::new() };
                        SVec::from_pairs(v.entries().iter().map(|(r, s)| {
                            let (u, w) = pairs[&d][*r];
                            (t.index(u.0, u.1, w.0, w.1).expect("block"), s.clone())
                        }))
                    })
                    .collect();
                LinearMap::new(complexes[p + q].space(d), t.complex.space(d), cols).expect("colax layer shape")
            })?;
            colax.insert((p, q), beta);
        }
    }

    let ground = CochainComplex::concentrated(0, Space::ground());
    let alpha = ComplexMap::from_fn(&complexes[0], &ground, |_| {
        LinearMap::from_fn(&complexes[0].space(0), &Space::ground(), |_| SVec::from_pairs([(0, int(1))]))
    })?;

    let (lo, hi) = opts.window;
    let summary = PipelineSummary {
        nmax: opts.nmax,
        window: opts.window,
        basepoints: levels.iter().map(|l| l.quotient.objects()[l.base].clone()).collect(),
        cohomology: complexes.iter().map(|c| (lo..=hi).map(|d| (d, c.cohomology_dim(d))).collect()).collect(),
        tensor_exact: complexes.iter().all(|c| c.dim(hi + 1) == 0),
    };
    let premonoid = LeinsterPreMonoid { levels: complexes, algebras: Some(algebras), action, colax, alpha };
    let report = validate_leinster(&premonoid, opts.window);
    Ok(PipelineOutput { premonoid, report, summary })
}

/// `F(f): End(e^{⊗n}) -> End(e^{⊗m})` for `f: [m] -> [n]`: output factor `j`
/// is the `⊙`-product of the input factors in group `j` (`e` when empty), and
/// `ε^S ↦ ε^{f(S)}` when `S` meets each group at most once, `0` otherwise.
fn face_map(m: &StrictMonoidal, src: &Level, tgt: &Level, f: &FintMorphism) -> Result<ComplexMap, Error> {
    let (n, mm) = (f.target(), f.source());
    let k = m.len();
    let e = m.unit();
    let groups = f.groups();
    let group_of = f.group_of();
    let nobj = src.pcat.category.len();
    let object_map: Vec<usize> = (0..nobj)
        .map(|x| {
            let xs = src.factors(n, k, x);
            let out: Vec<usize> =
                groups.iter().map(|g| xs[g.start - 1..g.end - 1].iter().fold(e, |acc, &o| m.obj(acc, o))).collect();
            if mm == 0 {
                0
            } else {
                index_of(&out, k)
            }
        })
        .collect();
    if object_map[src.base] != tgt.base {
        return Err(Error::Invalid(format!("F({f}) does not preserve the basepoint")));
    }
    let c = m.category();
    let morph = |x: usize, y: usize, el: Elem| -> SVec {
        let (xs, ys) = (src.factors(n, k, x), src.factors(n, k, y));
        let key = src.key(n, x, y, el);
        // ⊙-product of each group, bracketed from the left
        let mut parts: Vec<(i64, SVec)> = Vec::with_capacity(groups.len());
        for g in &groups {
            let (mut ox, mut oy, mut deg, mut v) = (e, e, 0, c.unit(e));
            for i in g.start - 1..g.end - 1 {
                let a = key[i];
                v = m.mul_vec((ox, oy), (xs[i], ys[i]), (deg, &v), (a.0, &SVec::unit(a.1)));
                ox = m.obj(ox, xs[i]);
                oy = m.obj(oy, ys[i]);
                deg += a.0;
            }
            parts.push((deg, v));
        }
        let (fx, fy) = (object_map[x], object_map[y]);
        let table = &tgt.keys[&(fx, fy)];
        let mut terms: Vec<(Vec<Elem>, crate::linalg::Scalar)> = vec![(Vec::new(), int(1))];
        for (deg, v) in &parts {
            let mut next = Vec::new();
            for (w, s) in &terms {
                for (i, t) in v.entries() {
                    let mut w2 = w.clone();
                    w2.push((*deg, *i));
                    next.push((w2, s * t));
                }
            }
            terms = next;
        }
        let mut acc = crate::linalg::Accum::new();
        for (w, s) in terms {
            if let Some(&(_, idx)) = table.get(&w) {
                acc.add(idx, s);
            }
        }
        acc.finish()
    };
    let marks = |s: u64| -> Option<(u64, crate::linalg::Scalar)> {
        let mut out = 0u64;
        for (i, &g) in group_of.iter().enumerate() {
            if s & (1 << i) != 0 {
                if out & (1 << g) != 0 {
                    return None;
                }
                out |= 1 << g;
            }
        }
        Some((out, int(1)))
    };
    chain_hom_map(&src.quotient, &tgt.quotient, &object_map, morph, marks, (src.base, src.base))
}
