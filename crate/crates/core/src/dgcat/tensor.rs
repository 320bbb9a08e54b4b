use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};

use super::category::{DgCat, DgCategory, Elem};
use crate::cochain::CochainComplex;
use crate::error::Error;
use crate::linalg::scalar::sign;
use crate::linalg::{Accum, LinearMap, SVec, Space};

/// Hom complex of a tensor category with its pair tables.
#[derive(Debug)]
pub struct TensorHom {
    pub complex: CochainComplex,
    /// Basis in each degree as pairs (left element, right element).
    pub pairs: BTreeMap<i64, Vec<(Elem, Elem)>>,
    pub index: HashMap<(Elem, Elem), Elem>,
    keys: BTreeMap<i64, Vec<Vec<Elem>>>,
}

/// `C ⊗ D`: objects are pairs (index `c·|D| + d`, label `c⊗d`), Homs are
/// tensor products of Hom complexes and
/// `(a ⊗ b) ∘ (a' ⊗ b') = (−1)^{|b||a'|} (a a') ⊗ (b b')`.
///
/// Each Hom basis is sorted by the concatenated keys of the factors, which
/// makes `(C ⊗ D) ⊗ E` and `C ⊗ (D ⊗ E)` literally equal.
pub struct TensorCategory {
    left: Arc<dyn DgCat>,
    right: Arc<dyn DgCat>,
    objects: Vec<String>,
    floor: Option<i64>,
    homs: Vec<OnceLock<TensorHom>>,
}

impl TensorCategory {
    pub fn new(left: Arc<dyn DgCat>, right: Arc<dyn DgCat>) -> Self {
        let mut objects = Vec::new();
        for a in left.objects() {
            for b in right.objects() {
                objects.push(format!("{a}⊗{b}"));
            }
        }
        // with Homs concentrated in degrees <= 0, a tensor degree n only
        // needs factor degrees >= n
        let floor = match (left.floor(), right.floor()) {
            (None, None) => None,
            (a, b) => Some(a.unwrap_or(i64::MIN).max(b.unwrap_or(i64::MIN))),
        };
        let homs = (0..objects.len() * objects.len()).map(|_| OnceLock::new()).collect();
        TensorCategory { left, right, objects, floor, homs }
    }

    pub fn left(&self) -> &Arc<dyn DgCat> {
        &self.left
    }

    pub fn right(&self) -> &Arc<dyn DgCat> {
        &self.right
    }

    pub fn split(&self, x: usize) -> (usize, usize) {
        let m = self.right.objects().len();
        (x / m, x % m)
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        a * self.right.objects().len() + b
    }

    pub fn tensor_hom(&self, x: usize, y: usize) -> &TensorHom {
        self.homs[x * self.objects.len() + y].get_or_init(|| self.build_hom(x, y))
    }

    /// Position of `u ⊗ w`, if it lies above the floor.
    pub fn pair_index(&self, x: usize, y: usize, u: Elem, w: Elem) -> Option<Elem> {
        self.tensor_hom(x, y).index.get(&(u, w)).copied()
    }

    /// `u ⊗ w` for homogeneous vectors in the factor Homs.
    pub fn pair_vec(&self, x: usize, y: usize, u: (i64, &SVec), w: (i64, &SVec)) -> SVec {
        let th = self.tensor_hom(x, y);
        let mut acc = Accum::new();
        for (i, a) in u.1.entries() {
            for (j, b) in w.1.entries() {
                if let Some(&(_, k)) = th.index.get(&((u.0, *i), (w.0, *j))) {
                    acc.add(k, a * b);
                }
            }
        }
        acc.finish()
    }

    fn build_hom(&self, x: usize, y: usize) -> TensorHom {
        let ((a, b), (a2, b2)) = (self.split(x), self.split(y));
        let (l, r) = (self.left.hom(a, a2), self.right.hom(b, b2));
        let floor = self.floor.unwrap_or(i64::MIN);
        let mut entries: BTreeMap<i64, Vec<(Vec<Elem>, Elem, Elem, String)>> = BTreeMap::new();
        for (&p, sl) in l.components() {
            for (&q, sr) in r.components() {
                if p + q < floor {
                    continue;
                }
                for i in 0..sl.dim() {
                    for j in 0..sr.dim() {
                        let mut key = self.left.key(a, a2, (p, i));
                        key.extend(self.right.key(b, b2, (q, j)));
                        entries.entry(p + q).or_default().push((
                            key,
                            (p, i),
                            (q, j),
                            format!("{}⊗{}", sl.label(i), sr.label(j)),
                        ));
                    }
                }
            }
        }
        let mut pairs = BTreeMap::new();
        let mut index = HashMap::new();
        let mut keys = BTreeMap::new();
        let mut spaces = BTreeMap::new();
        for (n, mut list) in entries {
            list.sort_by(|u, v| u.0.cmp(&v.0));
            for (k, (_, u, w, _)) in list.iter().enumerate() {
                index.insert((*u, *w), (n, k));
            }
            let labels: Vec<String> = list.iter().map(|e| e.3.clone()).collect();
            spaces.insert(n, Space::new(labels.clone()).unwrap_or_else(|_| numbered_labels(&labels)));
            keys.insert(n, list.iter().map(|e| e.0.clone()).collect());
            pairs.insert(n, list.into_iter().map(|e| (e.1, e.2)).collect::<Vec<_>>());
        }
        let mut diffs = BTreeMap::new();
        for (&n, list) in &pairs {
            let Some(next) = spaces.get(&(n + 1)) else { continue };
            let cols = list
                .iter()
                .map(|&(u, w)| {
                    let mut acc = Accum::new();
                    for (i, c) in l.d(u.0).col(u.1).entries() {
                        if let Some(&(_, k)) = index.get(&((u.0 + 1, *i), w)) {
                            acc.add(k, c.clone());
                        }
                    }
                    let s = sign(u.0);
                    for (j, c) in r.d(w.0).col(w.1).entries() {
                        if let Some(&(_, k)) = index.get(&(u, (w.0 + 1, *j))) {
                            acc.add(k, &s * c);
                        }
                    }
                    acc.finish()
                })
                .collect();
            diffs.insert(n, LinearMap::new(spaces[&n].clone(), next.clone(), cols).expect("tensor differential"));
        }
        let complex = CochainComplex::new_unchecked(spaces, diffs);
        TensorHom { complex, pairs, index, keys }
    }
}

pub(crate) fn numbered_labels(labels: &[String]) -> Space {
    Space::new(labels.iter().enumerate().map(|(k, l)| format!("#{k}:{l}")).collect()).expect("numbered labels are distinct")
}

impl DgCat for TensorCategory {
    fn objects(&self) -> &[String] {
        &self.objects
    }

    fn hom(&self, x: usize, y: usize) -> &CochainComplex {
        &self.tensor_hom(x, y).complex
    }

    fn compose(&self, x: usize, y: usize, z: usize, g: Elem, f: Elem) -> SVec {
        let ((a, b), (a1, b1), (a2, b2)) = (self.split(x), self.split(y), self.split(z));
        let (gu, gw) = self.tensor_hom(y, z).pairs[&g.0][g.1];
        let (fu, fw) = self.tensor_hom(x, y).pairs[&f.0][f.1];
        let uu = self.left.compose(a, a1, a2, gu, fu);
        let ww = self.right.compose(b, b1, b2, gw, fw);
        self.pair_vec(x, z, (gu.0 + fu.0, &uu), (gw.0 + fw.0, &ww)).scale(&sign(gw.0 * fu.0))
    }

    fn unit(&self, x: usize) -> SVec {
        let (a, b) = self.split(x);
        self.pair_vec(x, x, (0, &self.left.unit(a)), (0, &self.right.unit(b)))
    }

    fn floor(&self) -> Option<i64> {
        self.floor
    }

    fn ceiling(&self) -> Option<i64> {
        match (self.left.ceiling(), self.right.ceiling()) {
            (None, None) => None,
            (a, b) => Some(a.unwrap_or(i64::MAX).min(b.unwrap_or(i64::MAX))),
        }
    }

    fn key(&self, x: usize, y: usize, e: Elem) -> Vec<Elem> {
        self.tensor_hom(x, y).keys[&e.0][e.1].clone()
    }
}

/// `C ⊗ D` in structure-constant form.
pub fn tensor_dgcat(c: &DgCategory, d: &DgCategory) -> Result<DgCategory, Error> {
    let t = TensorCategory::new(Arc::new(c.clone()), Arc::new(d.clone()));
    DgCategory::materialize(&t)
}

/// The one-object category with `Hom = k` in degree 0.
pub fn unit_category() -> DgCategory {
    let mut b = super::category::DgCategoryBuilder::new(vec!["*".into()]);
    b.set_hom(0, 0, CochainComplex::concentrated(0, Space::new(vec!["1".into()]).expect("label")));
    b.identity_units(&[0]);
    b.build().expect("unit category")
}

/// A dg category with an ordered list of marked full subcategories.
#[derive(Clone, Debug)]
pub struct PCat {
    pub category: DgCategory,
    pub marked: Vec<Vec<usize>>,
}

impl PCat {
    pub fn new(category: DgCategory, marked: Vec<Vec<usize>>) -> Result<PCat, Error> {
        for m in &marked {
            if m.iter().any(|&o| o >= category.len()) {
                return Err(Error::Invalid("marked object outside the category".into()));
            }
        }
        let marked = marked
            .into_iter()
            .map(|mut m| {
                m.sort_unstable();
                m.dedup();
                m
            })
            .collect();
        Ok(PCat { category, marked })
    }

    /// Bit mask of the marked subsets containing each object.
    pub fn masks(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.category.len()];
        for (s, m) in self.marked.iter().enumerate() {
            for &o in m {
                out[o] |= 1 << s;
            }
        }
        out
    }
}

/// `(C; C_1..C_n) ⊗ (D; D_1..D_m) = (C ⊗ D; C_1⊗D, …, C_n⊗D, C⊗D_1, …, C⊗D_m)`.
pub fn tensor_pcat(x: &PCat, y: &PCat) -> Result<PCat, Error> {
    let category = tensor_dgcat(&x.category, &y.category)?;
    let (nc, nd) = (x.category.len(), y.category.len());
    let mut marked = Vec::new();
    for ci in &x.marked {
        marked.push(ci.iter().flat_map(|&c| (0..nd).map(move |d| c * nd + d)).collect());
    }
    for dj in &y.marked {
        marked.push((0..nc).flat_map(|c| dj.iter().map(move |&d| c * nd + d)).collect());
    }
    PCat::new(category, marked)
}
