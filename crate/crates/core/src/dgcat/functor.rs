use std::collections::BTreeMap;

use serde::Serialize;

use super::category::{compose_vecs, hom_basis, DgCat, Elem, Violation};
use super::quotient::{drinfeld_quotient, generalized_quotient, Chain, QuotientCategory, QuotientOptions};
use super::tensor::PCat;
use crate::cochain::{ComplexMap, QuasiIsoReport};
use crate::error::Error;
use crate::linalg::scalar::one;
use crate::linalg::{solve, Accum, LinearMap, SVec, Scalar, Space};

/// A dg functor between (possibly truncated) dg categories, stored as one
/// chain map per pair of source objects. Hom complexes are cut below the
/// larger of the two floors.
#[derive(Clone, Debug)]
pub struct DgFunctor {
    object_map: Vec<usize>,
    floor: Option<i64>,
    ceiling: Option<i64>,
    homs: Vec<ComplexMap>,
}

fn max_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, y) => x.or(y),
    }
}

fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    }
}

impl DgFunctor {
    /// Builds the functor from the images of basis morphisms; fails if some
    /// Hom map is not a chain map.
    pub fn from_basis(
        source: &dyn DgCat,
        target: &dyn DgCat,
        object_map: Vec<usize>,
        mut image: impl FnMut(usize, usize, Elem) -> SVec,
    ) -> Result<DgFunctor, Error> {
        let n = source.objects().len();
        if object_map.len() != n || object_map.iter().any(|&o| o >= target.objects().len()) {
            return Err(Error::Shape("object map does not match the categories".into()));
        }
        let floor = max_opt(source.floor(), target.floor());
        let ceiling = min_opt(source.ceiling(), target.ceiling());
        let mut homs = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                homs.push(hom_component(source, target, (x, y), (object_map[x], object_map[y]), |e| image(x, y, e))?);
            }
        }
        Ok(DgFunctor { object_map, floor, ceiling, homs })
    }

    pub fn object_map(&self) -> &[usize] {
        &self.object_map
    }

    pub fn floor(&self) -> Option<i64> {
        self.floor
    }

    /// Degrees in which the Hom comparisons are exact: `(floor + 1, ceiling)`.
    pub fn window(&self) -> (Option<i64>, Option<i64>) {
        (self.floor.map(|f| f + 1), self.ceiling)
    }

    pub fn hom(&self, x: usize, y: usize) -> &ComplexMap {
        &self.homs[x * self.object_map.len() + y]
    }

    /// Image of a basis morphism.
    pub fn apply(&self, x: usize, y: usize, e: Elem) -> SVec {
        let layer = self.hom(x, y).layer(e.0);
        if e.1 < layer.ncols() {
            layer.col(e.1).clone()
        } else {
            SVec::new()
        }
    }

    /// Image of a homogeneous vector.
    pub fn apply_vec(&self, x: usize, y: usize, deg: i64, v: &SVec) -> SVec {
        let mut acc = Accum::new();
        for (i, s) in v.entries() {
            acc.add_vec(s, &self.apply(x, y, (deg, *i)));
        }
        acc.finish()
    }

    /// `self ∘ other`, cut at the larger floor.
    pub fn compose(&self, other: &DgFunctor) -> Result<DgFunctor, Error> {
        let n = other.object_map.len();
        let floor = max_opt(self.floor, other.floor);
        let ceiling = min_opt(self.ceiling, other.ceiling);
        let cut = floor.unwrap_or(i64::MIN);
        let mut homs = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let f = other.hom(x, y);
                let g = self.hom(other.object_map[x], other.object_map[y]);
                let src = f.source().truncate_below(cut);
                let tgt = g.target().truncate_below(cut);
                let mut layers = BTreeMap::new();
                for &deg in src.components().keys() {
                    let fl = f.layer(deg);
                    let gl = g.layer(deg);
                    if fl.codomain() != gl.domain() {
                        return Err(Error::Shape("composing functors through different categories".into()));
                    }
                    layers.insert(deg, gl.compose(&fl)?);
                }
                homs.push(ComplexMap::new(src, tgt, layers)?);
            }
        }
        let object_map = other.object_map.iter().map(|&o| self.object_map[o]).collect();
        Ok(DgFunctor { object_map, floor, ceiling, homs })
    }

    /// Same object map and the same matrices on every Hom.
    pub fn same_as(&self, other: &DgFunctor) -> bool {
        self.object_map == other.object_map
            && self.homs.iter().zip(&other.homs).all(|(a, b)| a.same_layers(b))
    }
}

/// One Hom component `Hom(x, y) -> Hom(fx, fy)` of a functor given on basis
/// morphisms, cut below the larger of the two floors.
pub fn hom_component(
    source: &dyn DgCat,
    target: &dyn DgCat,
    (x, y): (usize, usize),
    (fx, fy): (usize, usize),
    mut image: impl FnMut(Elem) -> SVec,
) -> Result<ComplexMap, Error> {
    let cut = max_opt(source.floor(), target.floor()).unwrap_or(i64::MIN);
    let src = source.hom(x, y).truncate_below(cut);
    let tgt = target.hom(fx, fy).truncate_below(cut);
    let mut layers = BTreeMap::new();
    for (&deg, space) in src.components() {
        let cols = (0..space.dim()).map(|i| image((deg, i))).collect();
        let layer = LinearMap::new(space.clone(), tgt.space(deg), cols).map_err(|e| {
            Error::Shape(format!("image of Hom({}, {}) in degree {deg}: {e}", source.objects()[x], source.objects()[y]))
        })?;
        layers.insert(deg, layer);
    }
    ComplexMap::new(src, tgt, layers)
        .map_err(|e| Error::Invalid(format!("Hom({}, {}): {e}", source.objects()[x], source.objects()[y])))
}

/// Checks `F(g ∘ f) = F(g) ∘ F(f)` and `F(1) = 1` above the floor.
pub fn check_functor(source: &dyn DgCat, target: &dyn DgCat, f: &DgFunctor) -> Vec<Violation> {
    let n = source.objects().len();
    let cut = f.floor().unwrap_or(i64::MIN);
    let obj = |i: usize| source.objects()[i].clone();
    let fo = f.object_map();
    let mut out = Vec::new();
    for x in 0..n {
        if cut <= 0 {
            let mut acc = Accum::new();
            for (i, c) in source.unit(x).entries() {
                acc.add_vec(c, &f.apply(x, x, (0, *i)));
            }
            if acc.finish() != target.unit(fo[x]) {
                out.push(Violation { law: "unit".into(), detail: format!("F(1_{}) ≠ 1", obj(x)) });
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let fs = hom_basis(source, x, y);
            for z in 0..n {
                for g in hom_basis(source, y, z) {
                    for &h in &fs {
                        if g.0 < cut || h.0 < cut || g.0 + h.0 < cut {
                            continue;
                        }
                        let lhs = {
                            let v = source.compose(x, y, z, g, h);
                            let mut acc = Accum::new();
                            for (i, c) in v.entries() {
                                acc.add_vec(c, &f.apply(x, z, (g.0 + h.0, *i)));
                            }
                            acc.finish()
                        };
                        let rhs = compose_vecs(
                            target,
                            fo[x],
                            fo[y],
                            fo[z],
                            (g.0, &f.apply(y, z, g)),
                            (h.0, &f.apply(x, y, h)),
                        );
                        if lhs != rhs {
                            out.push(Violation {
                                law: "composition".into(),
                                detail: format!(
                                    "F(g∘f) ≠ F(g)∘F(f) for g = {} in Hom({}, {}), f = {} in Hom({}, {})",
                                    source.hom(y, z).space(g.0).label(g.1),
                                    obj(y),
                                    obj(z),
                                    source.hom(x, y).space(h.0).label(h.1),
                                    obj(x),
                                    obj(y)
                                ),
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

/// Quasi-iso comparison of one Hom complex.
#[derive(Clone, Debug, Serialize)]
pub struct HomComparison {
    pub source: String,
    pub target: String,
    pub report: QuasiIsoReport,
}

/// How a target object was reached up to homotopy equivalence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Image,
    ZeroObject,
    Isomorphism,
    Missing,
}

#[derive(Clone, Debug, Serialize)]
pub struct EssentialImage {
    pub object: String,
    pub preimage: Option<String>,
    pub witness: Witness,
}

/// Outcome of a quasi-equivalence check.
#[derive(Clone, Debug, Serialize)]
pub struct QuasiEquivalenceReport {
    pub window: (Option<i64>, Option<i64>),
    pub homs: Vec<HomComparison>,
    pub essential_image: Vec<EssentialImage>,
    pub quasi_fully_faithful: bool,
    /// `H^0(F)` essentially surjective; `None` if degree 0 lies outside the window
    /// or degree −1 is cut off.
    pub essentially_surjective: Option<bool>,
    pub passed: bool,
}

/// Hom-wise quasi-isomorphism in the exact window plus essential
/// surjectivity on `H^0`.
pub fn quasi_equivalence_check(source: &dyn DgCat, target: &dyn DgCat, f: &DgFunctor) -> QuasiEquivalenceReport {
    let n = source.objects().len();
    let window = f.window();
    let (lo, hi) = (window.0.unwrap_or(i64::MIN), window.1.unwrap_or(i64::MAX));
    let mut homs = Vec::new();
    for x in 0..n {
        for y in 0..n {
            homs.push(HomComparison {
                source: source.objects()[x].clone(),
                target: source.objects()[y].clone(),
                report: f.hom(x, y).quasi_iso_report_in(lo, hi),
            });
        }
    }
    let quasi_fully_faithful = homs.iter().all(|h| h.report.is_quasi_iso);
    let h0_exact = lo <= 0 && hi >= 0;
    let mut essential_image = Vec::new();
    let mut essentially_surjective = None;
    if h0_exact {
        for t in 0..target.objects().len() {
            let found = essential_preimage(target, f.object_map(), t);
            essential_image.push(EssentialImage {
                object: target.objects()[t].clone(),
                preimage: found.1.map(|s| source.objects()[s].clone()),
                witness: found.0,
            });
        }
        essentially_surjective = Some(essential_image.iter().all(|e| e.witness != Witness::Missing));
    }
    let passed = quasi_fully_faithful && essentially_surjective != Some(false);
    QuasiEquivalenceReport { window, homs, essential_image, quasi_fully_faithful, essentially_surjective, passed }
}

fn is_zero_object(c: &dyn DgCat, t: usize) -> bool {
    let h = c.hom(t, t);
    solve(&h.d(-1), &c.unit(t)).is_some()
}

fn essential_preimage(target: &dyn DgCat, object_map: &[usize], t: usize) -> (Witness, Option<usize>) {
    if let Some(s) = object_map.iter().position(|&o| o == t) {
        return (Witness::Image, Some(s));
    }
    let t_zero = is_zero_object(target, t);
    for (s, &fs) in object_map.iter().enumerate() {
        let s_zero = is_zero_object(target, fs);
        if t_zero && s_zero {
            return (Witness::ZeroObject, Some(s));
        }
        if t_zero != s_zero {
            continue;
        }
        let candidates = target.hom(fs, t).cocycles(0);
        let mut tries: Vec<SVec> = candidates.clone();
        for i in 0..candidates.len() {
            for j in i + 1..candidates.len() {
                tries.push(candidates[i].add(&candidates[j]));
                tries.push(candidates[i].sub(&candidates[j]));
            }
        }
        if tries.iter().any(|u| has_homotopy_inverse(target, fs, t, u)) {
            return (Witness::Isomorphism, Some(s));
        }
    }
    (Witness::Missing, None)
}

/// Is the closed degree-0 morphism `u: a -> b` invertible in `H^0`?
/// Solves `dv = 0`, `v∘u − 1 = d b_1`, `u∘v − 1 = d b_2` for `(v, b_1, b_2)`.
fn has_homotopy_inverse(c: &dyn DgCat, a: usize, b: usize, u: &SVec) -> bool {
    let (hba, haa, hbb) = (c.hom(b, a), c.hom(a, a), c.hom(b, b));
    let (n1, n2, n3) = (hba.dim(1), haa.dim(0), hbb.dim(0));
    let mut cols = Vec::new();
    for i in 0..hba.dim(0) {
        let e = SVec::unit(i);
        let dv = hba.d(0).apply(&e);
        let vu = compose_vecs(c, a, b, a, (0, &e), (0, u));
        let uv = compose_vecs(c, b, a, b, (0, u), (0, &e));
        cols.push(stack(&[(&dv, 0), (&vu, n1), (&uv, n1 + n2)]));
    }
    let minus = -one();
    for j in 0..haa.dim(-1) {
        let db = haa.d(-1).apply(&SVec::unit(j)).scale(&minus);
        cols.push(stack(&[(&db, n1)]));
    }
    for k in 0..hbb.dim(-1) {
        let db = hbb.d(-1).apply(&SVec::unit(k)).scale(&minus);
        cols.push(stack(&[(&db, n1 + n2)]));
    }
    let rhs = stack(&[(&c.unit(a), n1), (&c.unit(b), n1 + n2)]);
    let m = LinearMap::new(Space::numbered("x", cols.len()), Space::numbered("r", n1 + n2 + n3), cols)
        .expect("block system");
    solve(&m, &rhs).is_some()
}

fn stack(parts: &[(&SVec, usize)]) -> SVec {
    let mut acc = Accum::new();
    for (v, off) in parts {
        for (i, s) in v.entries() {
            acc.add(i + off, s.clone());
        }
    }
    acc.finish()
}

/// The localization functor `C -> C/(C_1, …)`, identity on objects.
pub fn inclusion_functor(q: &QuotientCategory) -> Result<DgFunctor, Error> {
    let base = q.base().clone();
    DgFunctor::from_basis(base.as_ref(), q, (0..base.len()).collect(), |x, y, e| {
        q.include_vec(x, y, e.0, &SVec::unit(e.1))
    })
}

/// A functor between quotients acting letter by letter: base morphisms via
/// `morph`, objects via `object_map`, and `ε^S ↦ c·ε^{S'}` via `marks`
/// (`None` sends the chain to zero).
pub fn chain_functor(
    source: &QuotientCategory,
    target: &QuotientCategory,
    object_map: Vec<usize>,
    morph: impl Fn(usize, usize, Elem) -> SVec,
    marks: impl Fn(u64) -> Option<(u64, Scalar)>,
) -> Result<DgFunctor, Error> {
    let om = object_map.clone();
    DgFunctor::from_basis(source, target, object_map, |x, y, e| chain_image(source, target, &om, &morph, &marks, x, y, e))
}

/// The component of [`chain_functor`] on a single Hom complex.
pub fn chain_hom_map(
    source: &QuotientCategory,
    target: &QuotientCategory,
    object_map: &[usize],
    morph: impl Fn(usize, usize, Elem) -> SVec,
    marks: impl Fn(u64) -> Option<(u64, Scalar)>,
    (x, y): (usize, usize),
) -> Result<ComplexMap, Error> {
    hom_component(source, target, (x, y), (object_map[x], object_map[y]), |e| {
        chain_image(source, target, object_map, &morph, &marks, x, y, e)
    })
}

#[allow(clippy::too_many_arguments)]
fn chain_image(
    source: &QuotientCategory,
    target: &QuotientCategory,
    om: &[usize],
    morph: &impl Fn(usize, usize, Elem) -> SVec,
    marks: &impl Fn(u64) -> Option<(u64, Scalar)>,
    x: usize,
    y: usize,
    e: Elem,
) -> SVec {
    let c = source.chain(x, y, e);
    let mut coeff = one();
    let mut new_marks = Vec::with_capacity(c.marks.len());
    for &m in &c.marks {
        match marks(m) {
            Some((m2, s)) => {
                coeff *= s;
                new_marks.push(m2);
            }
            None => return SVec::new(),
        }
    }
    let objects: Vec<usize> = c.objects.iter().map(|&o| om[o]).collect();
    let mut terms: Vec<(Vec<Elem>, Scalar)> = vec![(Vec::new(), coeff)];
    for (k, &f) in c.morphs.iter().enumerate() {
        let img = morph(c.object(k, x, y), c.object(k + 1, x, y), f);
        let mut next = Vec::new();
        for (ms, s) in &terms {
            for (i, v) in img.entries() {
                let mut ms2 = ms.clone();
                ms2.push((f.0, *i));
                next.push((ms2, s * v));
            }
        }
        terms = next;
    }
    target.chains_to_vec(
        om[x],
        om[y],
        terms
            .into_iter()
            .map(|(morphs, s)| (Chain { morphs, objects: objects.clone(), marks: new_marks.clone() }, s)),
    )
}

/// The functor `C/(C_1, …) -> C'/(C'_1, …)` induced by a functor of the
/// bases that sends each `C_i` into `C'_i`.
pub fn induced_quotient_functor(
    source: &QuotientCategory,
    target: &QuotientCategory,
    base: &DgFunctor,
) -> Result<DgFunctor, Error> {
    if source.marked().len() != target.marked().len() {
        return Err(Error::Invalid("the quotients kill different numbers of subcategories".into()));
    }
    for (i, m) in source.marked().iter().enumerate() {
        if m.iter().any(|&o| !target.marked()[i].contains(&base.object_map()[o])) {
            return Err(Error::Invalid(format!("marked subcategory {} is not preserved", i + 1)));
        }
    }
    chain_functor(source, target, base.object_map().to_vec(), |x, y, e| base.apply(x, y, e), |m| Some((m, one())))
}

/// `Ψ: C/(C_1, …, C_k) -> C/(C_1 ∪ … ∪ C_k)`, `ε^i ↦ ε` and `ε^S ↦ 0` for `|S| ≥ 2`.
pub struct PsiComparison {
    pub source: QuotientCategory,
    pub target: QuotientCategory,
    pub functor: DgFunctor,
    pub report: QuasiEquivalenceReport,
}

pub fn psi_comparison(p: &PCat, window: (i64, i64)) -> Result<PsiComparison, Error> {
    let source = generalized_quotient(p, QuotientOptions::window(window.0, window.1))?;
    let mut union: Vec<usize> = p.marked.iter().flatten().copied().collect();
    union.sort_unstable();
    union.dedup();
    let target = drinfeld_quotient(&p.category, &union, window)?;
    let functor = chain_functor(
        &source,
        &target,
        (0..p.category.len()).collect(),
        |_, _, e| SVec::unit(e.1),
        |m| (m.count_ones() == 1).then(|| (1, one())),
    )?;
    let report = quasi_equivalence_check(&source, &target, &functor);
    Ok(PsiComparison { source, target, functor, report })
}
