use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cochain::CochainComplex;
use crate::dgcat::{check_functor, hom_basis, small_complex, DgCat, DgCategory, DgCategoryBuilder, DgCategoryJson, DgFunctor, Elem, TensorCategory};
use crate::error::Error;
use crate::linalg::scalar::{format_scalar, parse_scalar};
use crate::linalg::{int, Accum, SVec, Space};

/// A dg category with a strictly associative, strictly unital product
/// `⊙: M ⊗ M -> M` given as a dg functor.
pub struct StrictMonoidal {
    category: Arc<DgCategory>,
    unit: usize,
    square: TensorCategory,
    product: DgFunctor,
}

impl std::fmt::Debug for StrictMonoidal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("StrictMonoidal").field("objects", &self.category.objects()).field("unit", &self.unit).finish()
    }
}

impl StrictMonoidal {
    /// `objects[x][y] = x ⊙ y`; `morph(x, y, x', y', a, b)` is `a ⊙ b` for
    /// `a: x -> y`, `b: x' -> y'`, as a vector of `Hom(x⊙x', y⊙y')`.
    /// Fails unless the result is a strict monoidal dg category.
    pub fn new(
        category: DgCategory,
        unit: usize,
        objects: &[Vec<usize>],
        morph: impl Fn(usize, usize, usize, usize, Elem, Elem) -> SVec,
    ) -> Result<Self, Error> {
        let n = category.len();
        if unit >= n || objects.len() != n || objects.iter().any(|row| row.len() != n || row.iter().any(|&o| o >= n)) {
            return Err(Error::Shape("product table does not match the objects".into()));
        }
        let category = Arc::new(category);
        let square = TensorCategory::new(category.clone(), category.clone());
        let object_map: Vec<usize> = (0..n * n).map(|xy| objects[xy / n][xy % n]).collect();
        let product = DgFunctor::from_basis(&square, category.as_ref(), object_map, |xx, yy, e| {
            let ((x, x2), (y, y2)) = (square.split(xx), square.split(yy));
            let (a, b) = square.tensor_hom(xx, yy).pairs[&e.0][e.1];
            morph(x, y, x2, y2, a, b)
        })?;
        let m = StrictMonoidal { category, unit, square, product };
        let failures = m.validate();
        if !failures.is_empty() {
            return Err(Error::Invalid(format!("not a strict monoidal dg category: {}", failures.join("; "))));
        }
        Ok(m)
    }

    pub fn category(&self) -> &DgCategory {
        &self.category
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn len(&self) -> usize {
        self.category.len()
    }

    pub fn is_empty(&self) -> bool {
        self.category.is_empty()
    }

    /// `x ⊙ y`.
    pub fn obj(&self, x: usize, y: usize) -> usize {
        self.product.object_map()[self.square.join(x, y)]
    }

    /// `a ⊙ b` for basis morphisms `a: x -> y`, `b: x2 -> y2`.
    pub fn mul(&self, (x, y): (usize, usize), (x2, y2): (usize, usize), a: Elem, b: Elem) -> SVec {
        let (xx, yy) = (self.square.join(x, x2), self.square.join(y, y2));
        match self.square.pair_index(xx, yy, a, b) {
            Some(e) => self.product.apply(xx, yy, e),
            None => SVec::new(),
        }
    }

    /// `⊙` on homogeneous vectors.
    pub(crate) fn mul_vec(&self, (x, y): (usize, usize), (x2, y2): (usize, usize), a: (i64, &SVec), b: (i64, &SVec)) -> SVec {
        let mut acc = Accum::new();
        for (i, s) in a.1.entries() {
            for (j, t) in b.1.entries() {
                acc.add_vec(&(s * t), &self.mul((x, y), (x2, y2), (a.0, *i), (b.0, *j)));
            }
        }
        acc.finish()
    }

    /// Violations of functoriality, strict associativity and strict unitality.
    pub fn validate(&self) -> Vec<String> {
        let mut out: Vec<String> =
            check_functor(&self.square, self.category.as_ref(), &self.product).into_iter().map(|v| format!("⊙ is not a functor ({}): {}", v.law, v.detail)).collect();
        let n = self.len();
        let c = self.category.as_ref();
        let name = |x: usize| c.objects()[x].clone();
        for x in 0..n {
            if self.obj(self.unit, x) != x || self.obj(x, self.unit) != x {
                out.push(format!("{} is not a strict unit for {}", name(self.unit), name(x)));
            }
            for y in 0..n {
                for z in 0..n {
                    if self.obj(self.obj(x, y), z) != self.obj(x, self.obj(y, z)) {
                        out.push(format!("({0}⊙{1})⊙{2} ≠ {0}⊙({1}⊙{2})", name(x), name(y), name(z)));
                    }
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        let e = self.unit;
        let one = c.unit(e);
        for x in 0..n {
            for y in 0..n {
                for a in hom_basis(c, x, y) {
                    let av = SVec::unit(a.1);
                    if self.mul_vec((e, e), (x, y), (0, &one), (a.0, &av)) != av
                        || self.mul_vec((x, y), (e, e), (a.0, &av), (0, &one)) != av
                    {
                        out.push(format!("the unit does not act trivially on a morphism {} -> {}", name(x), name(y)));
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for x2 in 0..n {
                    for y2 in 0..n {
                        for x3 in 0..n {
                            for y3 in 0..n {
                                self.check_associativity((x, y), (x2, y2), (x3, y3), &mut out);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    fn check_associativity(&self, p: (usize, usize), q: (usize, usize), r: (usize, usize), out: &mut Vec<String>) {
        let c = self.category.as_ref();
        let pq = (self.obj(p.0, q.0), self.obj(p.1, q.1));
        let qr = (self.obj(q.0, r.0), self.obj(q.1, r.1));
        for a in hom_basis(c, p.0, p.1) {
            for b in hom_basis(c, q.0, q.1) {
                let ab = self.mul(p, q, a, b);
                for cc in hom_basis(c, r.0, r.1) {
                    let left = self.mul_vec(pq, r, (a.0 + b.0, &ab), (cc.0, &SVec::unit(cc.1)));
                    let bc = self.mul(q, r, b, cc);
                    let right = self.mul_vec(p, qr, (a.0, &SVec::unit(a.1)), (b.0 + cc.0, &bc));
                    if left != right {
                        out.push(format!(
                            "(a⊙b)⊙c ≠ a⊙(b⊙c) on morphisms out of {}, {}, {}",
                            c.objects()[p.0],
                            c.objects()[q.0],
                            c.objects()[r.0]
                        ));
                        return;
                    }
                }
            }
        }
    }

    /// Objects of `j` are sent into `j` by `x ⊙ -` and `- ⊙ x` for every `x`.
    pub fn ideal_failures(&self, j: &[usize]) -> Vec<String> {
        let c = self.category.as_ref();
        let mut out = Vec::new();
        for &o in j {
            for x in 0..self.len() {
                for (l, r) in [(x, o), (o, x)] {
                    let p = self.obj(l, r);
                    if !j.contains(&p) {
                        out.push(format!("{}⊙{} = {} is outside the ideal", c.objects()[l], c.objects()[r], c.objects()[p]));
                    }
                }
            }
        }
        out
    }
}

/// One object `e` with `End(e) = ℚ`.
pub fn trivial_monoidal() -> StrictMonoidal {
    let mut b = DgCategoryBuilder::new(vec!["e".into()]);
    b.set_hom(0, 0, CochainComplex::concentrated(0, Space::new(vec!["1".into()]).expect("label")));
    b.identity_units(&[0]);
    let c = b.build().expect("one object");
    StrictMonoidal::new(c, 0, &[vec![0]], |_, _, _, _, _, _| SVec::unit(0)).expect("trivial monoidal structure")
}

/// Objects `e`, `a` with `End(e) = ℚ`, `End(a) = ℚ⟨1, h⟩`, `|h| = −1`,
/// `dh = 1`, no maps between `e` and `a`, and `a⊙a = a⊙e = e⊙a = a`,
/// `1⊙h = h⊙1 = h`, `h⊙h = 0`.
pub fn absorbing_monoidal() -> StrictMonoidal {
    let mut b = DgCategoryBuilder::new(vec!["e".into(), "a".into()]);
    b.set_hom(0, 0, CochainComplex::concentrated(0, Space::new(vec!["1".into()]).expect("label")));
    let end_a = small_complex(&[(-1, "h"), (0, "1")], &[(-1, 0, 0, int(1))]).expect("End(a)");
    b.set_hom(1, 1, end_a);
    b.identity_units(&[0, 0]);
    let c = b.build().expect("two objects");
    let objects = vec![vec![0, 1], vec![1, 1]];
    StrictMonoidal::new(c, 0, &objects, |x, _, x2, _, a, b| {
        match (x, x2) {
            (0, _) => SVec::unit(b.1),
            (_, 0) => SVec::unit(a.1),
            _ => match (a.0, b.0) {
                (0, 0) | (-1, 0) | (0, -1) => SVec::unit(0),
                _ => SVec::new(),
            },
        }
    })
    .expect("absorbing monoidal structure")
}

/// Objects `e ≅ a` with every Hom equal to `ℚ` in degree 0, `a⊙a = a⊙e = e⊙a = a`,
/// and the product of the unique basis morphisms equal to the unique basis morphism.
pub fn chaotic_monoidal() -> StrictMonoidal {
    let mut b = DgCategoryBuilder::new(vec!["e".into(), "a".into()]);
    for x in 0..2 {
        for y in 0..2 {
            b.set_hom(x, y, CochainComplex::concentrated(0, Space::new(vec![format!("{x}{y}")]).expect("label")));
        }
    }
    for x in 0..2 {
        for y in 0..2 {
            for z in 0..2 {
                b.set_product(x, y, z, (0, 0), (0, 0), SVec::unit(0));
            }
        }
    }
    b.identity_units(&[0, 0]);
    let c = b.build().expect("two isomorphic objects");
    StrictMonoidal::new(c, 0, &[vec![0, 1], vec![1, 1]], |_, _, _, _, _, _| SVec::unit(0)).expect("chaotic monoidal structure")
}

/// Serialized form: the category, the unit, the product on objects and the
/// nonzero values of `a ⊙ b` on basis morphisms.
#[derive(Serialize, Deserialize)]
pub struct StrictMonoidalJson {
    pub category: DgCategoryJson,
    pub unit: String,
    /// `[x, y, x ⊙ y]` by label.
    pub objects: Vec<[String; 3]>,
    pub morphisms: Vec<MorphismProduct>,
    /// Labels of the ideal to be killed.
    #[serde(default)]
    pub ideal: Vec<String>,
}

/// `a ⊙ b = Σ c_k e_k` for `a ∈ Hom(source[0], target[0])^{a.0}`,
/// `b ∈ Hom(source[1], target[1])^{b.0}`.
#[derive(Serialize, Deserialize)]
pub struct MorphismProduct {
    pub source: [String; 2],
    pub target: [String; 2],
    pub a: (i64, usize),
    pub b: (i64, usize),
    pub value: Vec<(usize, String)>,
}

impl StrictMonoidalJson {
    pub fn new(m: &StrictMonoidal, ideal: &[usize]) -> Self {
        let c = m.category();
        let names = c.objects();
        let n = m.len();
        let mut objects = Vec::new();
        let mut morphisms = Vec::new();
        for x in 0..n {
            for x2 in 0..n {
                objects.push([names[x].clone(), names[x2].clone(), names[m.obj(x, x2)].clone()]);
                for y in 0..n {
                    for y2 in 0..n {
                        for a in hom_basis(c, x, y) {
                            for b in hom_basis(c, x2, y2) {
                                let v = m.mul((x, y), (x2, y2), a, b);
                                if !v.is_zero() {
                                    morphisms.push(MorphismProduct {
                                        source: [names[x].clone(), names[x2].clone()],
                                        target: [names[y].clone(), names[y2].clone()],
                                        a,
                                        b,
                                        value: v.entries().iter().map(|(k, s)| (*k, format_scalar(s))).collect(),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        StrictMonoidalJson {
            category: DgCategoryJson::from(c),
            unit: names[m.unit()].clone(),
            objects,
            morphisms,
            ideal: ideal.iter().map(|&o| names[o].clone()).collect(),
        }
    }

    /// The monoidal category and the ideal.
    pub fn build(self) -> Result<(StrictMonoidal, Vec<usize>), Error> {
        let category = DgCategory::try_from(self.category)?;
        let find = |l: &str| category.object_index(l).ok_or_else(|| Error::Parse(format!("unknown object {l}")));
        let n = category.len();
        let mut table = vec![vec![usize::MAX; n]; n];
        for [x, y, z] in &self.objects {
            table[find(x)?][find(y)?] = find(z)?;
        }
        if table.iter().flatten().any(|&o| o == usize::MAX) {
            return Err(Error::Parse("the product table on objects is incomplete".into()));
        }
        let mut values: BTreeMap<(usize, usize, usize, usize, Elem, Elem), SVec> = BTreeMap::new();
        for (t, p) in self.morphisms.iter().enumerate() {
            let key = (find(&p.source[0])?, find(&p.target[0])?, find(&p.source[1])?, find(&p.target[1])?, p.a, p.b);
            let mut acc = Accum::new();
            for (k, s) in &p.value {
                acc.add(*k, parse_scalar(s).map_err(|e| Error::Parse(format!("morphisms[{t}]: {e}")))?);
            }
            values.insert(key, acc.finish());
        }
        let unit = find(&self.unit)?;
        let ideal = self.ideal.iter().map(|l| find(l)).collect::<Result<Vec<_>, _>>()?;
        let m = StrictMonoidal::new(category, unit, &table, |x, y, x2, y2, a, b| {
            values.get(&(x, y, x2, y2, a, b)).cloned().unwrap_or_default()
        })?;
        Ok((m, ideal))
    }
}
