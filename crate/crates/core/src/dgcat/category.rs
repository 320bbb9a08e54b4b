use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::cochain::CochainComplex;
use crate::error::Error;
use crate::linalg::scalar::{format_scalar, parse_scalar, sign};
use crate::linalg::{Accum, LinearMap, SVec, Scalar, Space};

/// A homogeneous basis element of a Hom complex: `(degree, index in that degree)`.
pub type Elem = (i64, usize);

/// Read access to a dg category with finitely many objects.
///
/// Hom complexes may be truncated from below: when `floor()` is `Some(f)`,
/// components below `f` are omitted and composites landing there are dropped.
/// Components from `f` upwards are complete as spaces, so cohomology is exact
/// in degrees `> f`.
pub trait DgCat: Send + Sync {
    fn objects(&self) -> &[String];
    fn hom(&self, x: usize, y: usize) -> &CochainComplex;
    /// `g ∘ f` for `f ∈ Hom(x, y)` and `g ∈ Hom(y, z)`, as a vector in `Hom(x, z)^{|g|+|f|}`.
    fn compose(&self, x: usize, y: usize, z: usize, g: Elem, f: Elem) -> SVec;
    /// The identity of `x`, in `Hom(x, x)^0`.
    fn unit(&self, x: usize) -> SVec;
    fn floor(&self) -> Option<i64> {
        None
    }
    /// Highest degree in which Hom cohomology is exact, when bounded.
    fn ceiling(&self) -> Option<i64> {
        None
    }
    /// Ordering key used to lay out tensor products so that they associate strictly.
    fn key(&self, _x: usize, _y: usize, e: Elem) -> Vec<Elem> {
        vec![e]
    }

    fn object_index(&self, label: &str) -> Option<usize> {
        self.objects().iter().position(|o| o == label)
    }
}

/// All basis elements of `Hom(x, y)`, by ascending degree.
pub fn hom_basis(c: &dyn DgCat, x: usize, y: usize) -> Vec<Elem> {
    c.hom(x, y).components().iter().flat_map(|(&n, s)| (0..s.dim()).map(move |i| (n, i))).collect()
}

/// Bilinear extension of composition to homogeneous vectors.
pub fn compose_vecs(c: &dyn DgCat, x: usize, y: usize, z: usize, g: (i64, &SVec), f: (i64, &SVec)) -> SVec {
    let mut acc = Accum::new();
    for (i, a) in g.1.entries() {
        for (j, b) in f.1.entries() {
            let v = c.compose(x, y, z, (g.0, *i), (f.0, *j));
            acc.add_vec(&(a * b), &v);
        }
    }
    acc.finish()
}

type CompKey = (usize, usize, usize, i64, i64);

/// A finite dg category given by Hom complexes and composition structure constants.
#[derive(Clone, Debug)]
pub struct DgCategory {
    objects: Vec<String>,
    homs: Vec<CochainComplex>,
    /// `(x, y, z, |g|, |f|)` ↦ map `Hom(y,z)^{|g|} ⊗ Hom(x,y)^{|f|} -> Hom(x,z)`, column `g·dim + f`.
    comp: HashMap<CompKey, LinearMap>,
    units: Vec<SVec>,
    keys: HashMap<(usize, usize, i64), Vec<Vec<Elem>>>,
}

impl DgCat for DgCategory {
    fn objects(&self) -> &[String] {
        &self.objects
    }

    fn hom(&self, x: usize, y: usize) -> &CochainComplex {
        &self.homs[x * self.objects.len() + y]
    }

    fn compose(&self, x: usize, y: usize, z: usize, g: Elem, f: Elem) -> SVec {
        match self.comp.get(&(x, y, z, g.0, f.0)) {
            Some(m) => m.col(g.1 * self.hom(x, y).dim(f.0) + f.1).clone(),
            None => SVec::new(),
        }
    }

    fn unit(&self, x: usize) -> SVec {
        self.units[x].clone()
    }

    fn key(&self, x: usize, y: usize, e: Elem) -> Vec<Elem> {
        match self.keys.get(&(x, y, e.0)) {
            Some(k) => k[e.1].clone(),
            None => vec![e],
        }
    }
}

impl DgCategory {
    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn composition_table(&self) -> &HashMap<CompKey, LinearMap> {
        &self.comp
    }

    /// Literal equality of objects, Hom complexes, units and composition constants.
    pub fn same_data(&self, other: &DgCategory) -> bool {
        if self.objects != other.objects || self.homs != other.homs || self.units != other.units {
            return false;
        }
        let nonzero = |m: &HashMap<CompKey, LinearMap>| -> BTreeMap<CompKey, LinearMap> {
            m.iter().filter(|(_, v)| !v.is_zero()).map(|(k, v)| (*k, v.clone())).collect()
        };
        nonzero(&self.comp) == nonzero(&other.comp)
    }

    /// Number of nonzero composition structure constants.
    pub fn composition_entries(&self) -> usize {
        self.comp.values().map(LinearMap::nnz).sum()
    }

    /// Copies any (complete) dg category into structure-constant form.
    pub fn materialize(c: &dyn DgCat) -> Result<DgCategory, Error> {
        if c.floor().is_some() {
            return Err(Error::Invalid("cannot tabulate a truncated dg category".into()));
        }
        let n = c.objects().len();
        let mut b = DgCategoryBuilder::new(c.objects().to_vec());
        for x in 0..n {
            for y in 0..n {
                b.set_hom(x, y, c.hom(x, y).clone());
            }
        }
        for x in 0..n {
            b.set_unit(x, c.unit(x));
            for y in 0..n {
                for z in 0..n {
                    for g in hom_basis(c, y, z) {
                        for f in hom_basis(c, x, y) {
                            let v = c.compose(x, y, z, g, f);
                            if !v.is_zero() {
                                b.set_product(x, y, z, g, f, v);
                            }
                        }
                    }
                }
            }
        }
        let mut cat = b.build()?;
        for x in 0..n {
            for y in 0..n {
                for (&deg, s) in c.hom(x, y).components() {
                    let keys: Vec<Vec<Elem>> = (0..s.dim()).map(|i| c.key(x, y, (deg, i))).collect();
                    if keys.iter().enumerate().any(|(i, k)| k != &vec![(deg, i)]) {
                        cat.keys.insert((x, y, deg), keys);
                    }
                }
            }
        }
        Ok(cat)
    }

    /// Full subcategory on the given objects (in the given order).
    pub fn full_subcategory(&self, objs: &[usize]) -> Result<DgCategory, Error> {
        let mut b = DgCategoryBuilder::new(objs.iter().map(|&o| self.objects[o].clone()).collect());
        for (i, &x) in objs.iter().enumerate() {
            b.set_unit(i, self.units[x].clone());
            for (j, &y) in objs.iter().enumerate() {
                b.set_hom(i, j, self.hom(x, y).clone());
                for (k, &z) in objs.iter().enumerate() {
                    for g in hom_basis(self, y, z) {
                        for f in hom_basis(self, x, y) {
                            let v = self.compose(x, y, z, g, f);
                            if !v.is_zero() {
                                b.set_product(i, j, k, g, f, v);
                            }
                        }
                    }
                }
            }
        }
        b.build()
    }
}

/// Incremental construction of a [`DgCategory`]; missing Homs are zero.
#[derive(Clone, Debug)]
pub struct DgCategoryBuilder {
    objects: Vec<String>,
    homs: Vec<CochainComplex>,
    products: HashMap<CompKey, BTreeMap<usize, SVec>>,
    units: Vec<Option<SVec>>,
}

impl DgCategoryBuilder {
    pub fn new(objects: Vec<String>) -> Self {
        let n = objects.len();
        DgCategoryBuilder {
            objects,
            homs: vec![CochainComplex::zero(); n * n],
            products: HashMap::new(),
            units: vec![None; n],
        }
    }

    pub fn set_hom(&mut self, x: usize, y: usize, c: CochainComplex) -> &mut Self {
        let n = self.objects.len();
        self.homs[x * n + y] = c;
        self
    }

    /// Records `g ∘ f = value` for basis elements `f ∈ Hom(x,y)`, `g ∈ Hom(y,z)`.
    pub fn set_product(&mut self, x: usize, y: usize, z: usize, g: Elem, f: Elem, value: SVec) -> &mut Self {
        let n = self.objects.len();
        let dim_f = self.homs[x * n + y].dim(f.0);
        self.products.entry((x, y, z, g.0, f.0)).or_default().insert(g.1 * dim_f + f.1, value);
        self
    }

    pub fn set_unit(&mut self, x: usize, unit: SVec) -> &mut Self {
        self.units[x] = Some(unit);
        self
    }

    /// Declares identities of every object to be the given degree-0 basis
    /// element, and fills in the unit composition constants.
    pub fn identity_units(&mut self, units: &[usize]) -> &mut Self {
        let n = self.objects.len();
        for (x, &u) in units.iter().enumerate() {
            self.set_unit(x, SVec::unit(u));
            for y in 0..n {
                for (&deg, s) in self.homs[x * n + y].clone().components() {
                    for i in 0..s.dim() {
                        self.set_product(x, x, y, (deg, i), (0, u), SVec::unit(i));
                        self.set_product(x, y, y, (0, units[y]), (deg, i), SVec::unit(i));
                    }
                }
            }
        }
        self
    }

    pub fn build(self) -> Result<DgCategory, Error> {
        let n = self.objects.len();
        let mut seen = std::collections::HashSet::new();
        if !self.objects.iter().all(|o| seen.insert(o)) {
            return Err(Error::Invalid("duplicate object label".into()));
        }
        let mut comp = HashMap::new();
        for ((x, y, z, a, b), cols) in self.products {
            let (g_sp, f_sp) = (self.homs[y * n + z].space(a), self.homs[x * n + y].space(b));
            let target = self.homs[x * n + z].space(a + b);
            let dom = g_sp.tensor(&f_sp);
            let mut all = vec![SVec::new(); dom.dim()];
            for (k, v) in cols {
                if k >= all.len() {
                    return Err(Error::Shape(format!("product index out of range for ({x},{y},{z})")));
                }
                all[k] = v;
            }
            comp.insert((x, y, z, a, b), LinearMap::new(dom, target, all)?);
        }
        let units = self
            .units
            .into_iter()
            .enumerate()
            .map(|(x, u)| u.ok_or_else(|| Error::Invalid(format!("object {} has no unit", self.objects[x]))))
            .collect::<Result<Vec<_>, _>>()?;
        for (x, u) in units.iter().enumerate() {
            if u.max_index().is_some_and(|m| m >= self.homs[x * n + x].dim(0)) {
                return Err(Error::Shape(format!("unit of {} outside Hom^0", self.objects[x])));
            }
        }
        Ok(DgCategory { objects: self.objects, homs: self.homs, comp, units, keys: HashMap::new() })
    }
}

/// One violated law, with the offending data in words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: String,
    pub detail: String,
}

/// Checks units, unit laws, Leibniz rule, associativity and the degree bound.
/// In truncated categories only composites of degree `>= floor` are checked.
pub fn validate_dg_category(c: &dyn DgCat) -> Vec<Violation> {
    let n = c.objects().len();
    let obj = |i: usize| c.objects()[i].clone();
    let floor = c.floor().unwrap_or(i64::MIN);
    let mut out = Vec::new();
    let mut push = |law: &str, detail: String| out.push(Violation { law: law.into(), detail });
    for x in 0..n {
        for y in 0..n {
            if let Some((_, top)) = c.hom(x, y).support() {
                if top > 0 {
                    push("degree bound", format!("Hom({},{}) has degree {top} > 0", obj(x), obj(y)));
                }
            }
        }
    }
    for x in 0..n {
        let u = c.unit(x);
        if !c.hom(x, x).d(0).apply(&u).is_zero() {
            push("closed unit", format!("d(1_{}) ≠ 0", obj(x)));
        }
        for y in 0..n {
            for f in hom_basis(c, x, y) {
                let left = compose_vecs(c, x, y, y, (0, &c.unit(y)), (f.0, &SVec::unit(f.1)));
                let right = compose_vecs(c, x, x, y, (f.0, &SVec::unit(f.1)), (0, &u));
                if left != SVec::unit(f.1) || right != SVec::unit(f.1) {
                    push("unit law", format!("basis element {:?} of Hom({},{})", f, obj(x), obj(y)));
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (hxy, hyz, hxz) = (c.hom(x, y), c.hom(y, z), c.hom(x, z));
                for g in hom_basis(c, y, z) {
                    for f in hom_basis(c, x, y) {
                        if g.0 + f.0 < floor {
                            continue;
                        }
                        let gf = c.compose(x, y, z, g, f);
                        let lhs = hxz.d(g.0 + f.0).apply(&gf);
                        let dg = hyz.d(g.0).col(g.1).clone();
                        let df = hxy.d(f.0).col(f.1).clone();
                        let t1 = compose_vecs(c, x, y, z, (g.0 + 1, &dg), (f.0, &SVec::unit(f.1)));
                        let t2 = compose_vecs(c, x, y, z, (g.0, &SVec::unit(g.1)), (f.0 + 1, &df));
                        if lhs != t1.add_scaled(&sign(g.0), &t2) {
                            push("Leibniz", format!("g={g:?}, f={f:?} over {}→{}→{}", obj(x), obj(y), obj(z)));
                        }
                        for w in 0..n {
                            for h in hom_basis(c, z, w) {
                                if h.0 + g.0 + f.0 < floor {
                                    continue;
                                }
                                let a = compose_vecs(c, x, z, w, (h.0, &SVec::unit(h.1)), (g.0 + f.0, &gf));
                                let hg = c.compose(y, z, w, h, g);
                                let b = compose_vecs(c, x, y, w, (h.0 + g.0, &hg), (f.0, &SVec::unit(f.1)));
                                if a != b {
                                    push(
                                        "associativity",
                                        format!("h={h:?}, g={g:?}, f={f:?} over {}→{}→{}→{}", obj(x), obj(y), obj(z), obj(w)),
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
pub(crate) struct HomJson {
    pub source: String,
    pub target: String,
    pub complex: CochainComplex,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct ProductJson {
    pub source: String,
    pub middle: String,
    pub target: String,
    pub left_degree: i64,
    pub right_degree: i64,
    /// `[g, f, k, coefficient]`: the `k`-th coordinate of `g ∘ f`.
    pub entries: Vec<(usize, usize, usize, String)>,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct UnitJson {
    pub object: String,
    pub entries: Vec<(usize, String)>,
}

/// Interchange form of a finite dg category.
#[derive(Serialize, Deserialize)]
pub struct DgCategoryJson {
    pub(crate) objects: Vec<String>,
    pub(crate) homs: Vec<HomJson>,
    pub(crate) products: Vec<ProductJson>,
    pub(crate) units: Vec<UnitJson>,
}

impl From<&DgCategory> for DgCategoryJson {
    fn from(c: &DgCategory) -> Self {
        let n = c.len();
        let name = |i: usize| c.objects[i].clone();
        let mut homs = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if c.hom(x, y).total_dim() > 0 {
                    homs.push(HomJson { source: name(x), target: name(y), complex: c.hom(x, y).clone() });
                }
            }
        }
        let mut keys: Vec<&CompKey> = c.comp.keys().collect();
        keys.sort();
        let mut products = Vec::new();
        for k in keys {
            let (x, y, z, a, b) = *k;
            let m = &c.comp[k];
            let dim_f = c.hom(x, y).dim(b);
            let mut entries = Vec::new();
            for (col, v) in m.cols().iter().enumerate() {
                for (i, s) in v.entries() {
                    entries.push((col / dim_f, col % dim_f, *i, format_scalar(s)));
                }
            }
            if !entries.is_empty() {
                products.push(ProductJson {
                    source: name(x),
                    middle: name(y),
                    target: name(z),
                    left_degree: a,
                    right_degree: b,
                    entries,
                });
            }
        }
        let units = (0..n)
            .map(|x| UnitJson {
                object: name(x),
                entries: c.units[x].entries().iter().map(|(i, s)| (*i, format_scalar(s))).collect(),
            })
            .collect();
        DgCategoryJson { objects: c.objects.clone(), homs, products, units }
    }
}

impl DgCategoryJson {
    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    /// Stored nonzero coefficients: differentials, products and units.
    pub fn entry_count(&self) -> usize {
        let d: usize = self.homs.iter().map(|h| h.complex.components().keys().map(|&n| h.complex.d(n).nnz()).sum::<usize>()).sum();
        let p: usize = self.products.iter().map(|p| p.entries.len()).sum();
        let u: usize = self.units.iter().map(|u| u.entries.len()).sum();
        d + p + u
    }
}

impl TryFrom<DgCategoryJson> for DgCategory {
    type Error = Error;
    fn try_from(j: DgCategoryJson) -> Result<Self, Error> {
        let idx: HashMap<String, usize> = j.objects.iter().enumerate().map(|(i, o)| (o.clone(), i)).collect();
        let find = |o: &str, field: &str| {
            idx.get(o).copied().ok_or_else(|| Error::Parse(format!("{field}: unknown object {o:?}")))
        };
        let mut b = DgCategoryBuilder::new(j.objects.clone());
        for (k, h) in j.homs.into_iter().enumerate() {
            let (x, y) = (find(&h.source, &format!("homs[{k}].source"))?, find(&h.target, &format!("homs[{k}].target"))?);
            b.set_hom(x, y, h.complex);
        }
        for (k, p) in j.products.into_iter().enumerate() {
            let x = find(&p.source, &format!("products[{k}].source"))?;
            let y = find(&p.middle, &format!("products[{k}].middle"))?;
            let z = find(&p.target, &format!("products[{k}].target"))?;
            let mut per: BTreeMap<(usize, usize), Vec<(usize, Scalar)>> = BTreeMap::new();
            for (e, (g, f, i, s)) in p.entries.into_iter().enumerate() {
                let s = parse_scalar(&s).map_err(|err| Error::Parse(format!("products[{k}].entries[{e}]: {err}")))?;
                per.entry((g, f)).or_default().push((i, s));
            }
            for ((g, f), v) in per {
                b.set_product(x, y, z, (p.left_degree, g), (p.right_degree, f), SVec::from_pairs(v));
            }
        }
        for (k, u) in j.units.into_iter().enumerate() {
            let x = find(&u.object, &format!("units[{k}].object"))?;
            let v = u
                .entries
                .into_iter()
                .map(|(i, s)| Ok((i, parse_scalar(&s).map_err(|e| Error::Parse(format!("units[{k}]: {e}")))?)))
                .collect::<Result<Vec<_>, Error>>()?;
            b.set_unit(x, SVec::from_pairs(v));
        }
        b.build()
    }
}

/// A complex with one basis vector per listed `(degree, label)` and the given
/// differential entries `(source index, target index, coefficient)` per degree.
pub fn small_complex(
    basis: &[(i64, &str)],
    d: &[(i64, usize, usize, Scalar)],
) -> Result<CochainComplex, Error> {
    let mut labels: BTreeMap<i64, Vec<String>> = BTreeMap::new();
    for (deg, l) in basis {
        labels.entry(*deg).or_default().push(l.to_string());
    }
    let spaces: BTreeMap<i64, Space> =
        labels.into_iter().map(|(k, v)| Space::new(v).map(|s| (k, s))).collect::<Result<_, _>>()?;
    CochainComplex::from_fn(spaces, |n, dom, cod| {
        let mut cols = vec![Vec::new(); dom.dim()];
        for (deg, j, i, c) in d {
            if *deg == n {
                cols[*j].push((*i, c.clone()));
            }
        }
        LinearMap::from_fn(dom, cod, |j| SVec::from_pairs(cols[j].clone()))
    })
}
