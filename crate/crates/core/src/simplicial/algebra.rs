use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::cochain::CochainComplex;
use crate::dgcat::{DgCat, Elem};
use crate::error::Error;
use crate::linalg::scalar::{format_scalar, parse_scalar, sign};
use crate::linalg::{int, Accum, LinearMap, SVec, Space};

/// A unital dg algebra: a complex with a degree-0 product `A^p ⊗ A^q -> A^{p+q}`
/// (column `i · dim A^q + j`) and a unit in `A^0`.
#[derive(Clone, Debug, PartialEq)]
pub struct DgAlgebra {
    complex: CochainComplex,
    products: BTreeMap<(i64, i64), LinearMap>,
    unit: SVec,
}

impl DgAlgebra {
    pub fn new(complex: CochainComplex, products: BTreeMap<(i64, i64), LinearMap>, unit: SVec) -> Result<Self, Error> {
        for (&(p, q), m) in &products {
            if m.ncols() != complex.dim(p) * complex.dim(q) || m.nrows() != complex.dim(p + q) {
                return Err(Error::Shape(format!("product of degrees {p} and {q} has the wrong shape")));
            }
        }
        if unit.max_index().is_some_and(|i| i >= complex.dim(0)) {
            return Err(Error::Shape("unit outside degree 0".into()));
        }
        Ok(DgAlgebra { complex, products, unit })
    }

    /// The ground field in degree 0.
    pub fn ground() -> Self {
        let s = Space::new(vec!["1".into()]).expect("label");
        let m = LinearMap::from_fn(&s.tensor(&s), &s, |_| SVec::unit(0));
        DgAlgebra { complex: CochainComplex::concentrated(0, s), products: BTreeMap::from([((0, 0), m)]), unit: SVec::unit(0) }
    }

    /// `ℚ[x]/(x²)` in degree 0.
    pub fn dual_numbers() -> Self {
        let s = Space::new(vec!["1".into(), "x".into()]).expect("labels");
        let m = LinearMap::from_fn(&s.tensor(&s), &s, |j| match j {
            0 => SVec::unit(0),
            1 | 2 => SVec::unit(1),
            _ => SVec::new(),
        });
        DgAlgebra { complex: CochainComplex::concentrated(0, s), products: BTreeMap::from([((0, 0), m)]), unit: SVec::unit(0) }
    }

    /// `End(x)` of a dg category, with `a · b = a ∘ b`.
    pub fn endomorphisms(c: &dyn DgCat, x: usize) -> Self {
        let complex = c.hom(x, x).clone();
        let mut products = BTreeMap::new();
        for (&p, sp) in complex.components() {
            for (&q, sq) in complex.components() {
                let target = complex.space(p + q);
                if target.dim() == 0 {
                    continue;
                }
                let cols = (0..sp.dim() * sq.dim()).map(|k| c.compose(x, x, x, (p, k / sq.dim()), (q, k % sq.dim()))).collect();
                let m = LinearMap::new(sp.tensor(sq), target, cols).expect("composition shape");
                products.insert((p, q), m);
            }
        }
        DgAlgebra { complex, products, unit: c.unit(x) }
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn unit(&self) -> &SVec {
        &self.unit
    }

    /// `e^p_i · e^q_j`.
    pub fn mul_basis(&self, a: Elem, b: Elem) -> SVec {
        match self.products.get(&(a.0, b.0)) {
            Some(m) => m.col(a.1 * self.complex.dim(b.0) + b.1).clone(),
            None => SVec::new(),
        }
    }

    pub fn mul(&self, p: i64, a: &SVec, q: i64, b: &SVec) -> SVec {
        let mut acc = Accum::new();
        for (i, x) in a.entries() {
            for (j, y) in b.entries() {
                acc.add_vec(&(x * y), &self.mul_basis((p, *i), (q, *j)));
            }
        }
        acc.finish()
    }

    fn basis(&self) -> Vec<Elem> {
        self.complex.components().iter().flat_map(|(&n, s)| (0..s.dim()).map(move |i| (n, i))).collect()
    }

    /// Violated laws: unit, associativity, Leibniz rule.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.complex.d(0).apply(&self.unit).is_zero() {
            out.push("the unit is not closed".into());
        }
        let basis = self.basis();
        for &a in &basis {
            let e = SVec::unit(a.1);
            if self.mul(0, &self.unit, a.0, &e) != e || self.mul(a.0, &e, 0, &self.unit) != e {
                out.push(format!("unit law fails on {}", self.label(a)));
            }
        }
        for &a in &basis {
            for &b in &basis {
                let ab = self.mul_basis(a, b);
                for &c in &basis {
                    let left = self.mul(a.0 + b.0, &ab, c.0, &SVec::unit(c.1));
                    let right = self.mul(a.0, &SVec::unit(a.1), b.0 + c.0, &self.mul_basis(b, c));
                    if left != right {
                        out.push(format!("associativity fails on ({}, {}, {})", self.label(a), self.label(b), self.label(c)));
                    }
                }
                // d(ab) = da·b + (−1)^{|a|} a·db
                let lhs = self.complex.d(a.0 + b.0).apply(&ab);
                let da = self.complex.d(a.0).col(a.1).clone();
                let db = self.complex.d(b.0).col(b.1).clone();
                let rhs = self
                    .mul(a.0 + 1, &da, b.0, &SVec::unit(b.1))
                    .add_scaled(&sign(a.0), &self.mul(a.0, &SVec::unit(a.1), b.0 + 1, &db));
                if lhs != rhs {
                    out.push(format!("Leibniz rule fails on ({}, {})", self.label(a), self.label(b)));
                }
            }
        }
        out
    }

    fn label(&self, e: Elem) -> String {
        format!("{}@{}", self.complex.space(e.0).label(e.1), e.0)
    }
}

#[derive(Serialize, Deserialize)]
pub struct DgAlgebraJson {
    pub complex: CochainComplex,
    /// `(index in degree 0, coefficient)`.
    pub unit: Vec<(usize, String)>,
    /// `(p, i, q, j, k, c)`: `e^p_i · e^q_j` has coefficient `c` on `e^{p+q}_k`.
    pub products: Vec<(i64, usize, i64, usize, usize, String)>,
}

impl DgAlgebraJson {
    pub fn new(a: &DgAlgebra) -> Self {
        let mut products = Vec::new();
        for (&(p, q), m) in &a.products {
            let dq = a.complex.dim(q);
            for (col, v) in m.cols().iter().enumerate() {
                for (k, x) in v.entries() {
                    products.push((p, col / dq, q, col % dq, *k, format_scalar(x)));
                }
            }
        }
        let unit = a.unit.entries().iter().map(|(i, x)| (*i, format_scalar(x))).collect();
        DgAlgebraJson { complex: a.complex.clone(), unit, products }
    }

    pub fn to_algebra(&self) -> Result<DgAlgebra, Error> {
        let c = &self.complex;
        let mut cols: BTreeMap<(i64, i64), Vec<Accum>> = BTreeMap::new();
        for (t, (p, i, q, j, k, x)) in self.products.iter().enumerate() {
            let (dp, dq, dr) = (c.dim(*p), c.dim(*q), c.dim(p + q));
            if *i >= dp || *j >= dq || *k >= dr {
                return Err(Error::Parse(format!("products[{t}]: index out of range")));
            }
            let x = parse_scalar(x).map_err(|e| Error::Parse(format!("products[{t}]: {e}")))?;
            let entry = cols.entry((*p, *q)).or_insert_with(|| (0..dp * dq).map(|_| Accum::new()).collect());
            entry[i * dq + j].add(*k, x);
        }
        let mut products = BTreeMap::new();
        for ((p, q), accs) in cols {
            let cols = accs.into_iter().map(Accum::finish).collect();
            products.insert((p, q), LinearMap::new(c.space(p).tensor(&c.space(q)), c.space(p + q), cols)?);
        }
        let mut unit = Accum::new();
        for (t, (i, x)) in self.unit.iter().enumerate() {
            unit.add(*i, parse_scalar(x).map_err(|e| Error::Parse(format!("unit[{t}]: {e}")))?);
        }
        DgAlgebra::new(c.clone(), products, unit.finish())
    }
}

/// `A^{⊗n}` with the word basis: in each degree, words `(a_1, …, a_n)` of
/// homogeneous basis elements, in lexicographic order, and
/// `d(a_1⊗…⊗a_n) = Σ_k (−1)^{|a_1|+…+|a_{k−1}|} a_1⊗…⊗da_k⊗…⊗a_n`.
#[derive(Clone, Debug)]
pub struct TensorPower {
    pub complex: CochainComplex,
    pub words: BTreeMap<i64, Vec<Vec<Elem>>>,
    pub index: HashMap<Vec<Elem>, Elem>,
}

impl TensorPower {
    pub fn new(a: &CochainComplex, n: usize) -> Self {
        let letters: Vec<Elem> = a.components().iter().flat_map(|(&d, s)| (0..s.dim()).map(move |i| (d, i))).collect();
        let mut all: Vec<Vec<Elem>> = vec![Vec::new()];
        for _ in 0..n {
            all = all.into_iter().flat_map(|w| letters.iter().map(move |l| [w.clone(), vec![*l]].concat())).collect();
        }
        let mut words: BTreeMap<i64, Vec<Vec<Elem>>> = BTreeMap::new();
        for w in all {
            words.entry(w.iter().map(|l| l.0).sum()).or_default().push(w);
        }
        let mut index = HashMap::new();
        for (&d, list) in words.iter_mut() {
            list.sort();
            for (i, w) in list.iter().enumerate() {
                index.insert(w.clone(), (d, i));
            }
        }
        let spaces: BTreeMap<i64, Space> = words
            .iter()
            .map(|(&d, list)| {
                let labels = list
                    .iter()
                    .map(|w| {
                        if w.is_empty() {
                            "1".to_string()
                        } else {
                            w.iter().map(|l| a.space(l.0).label(l.1).to_string()).collect::<Vec<_>>().join("⊗")
                        }
                    })
                    .collect();
                (d, Space::new(labels).unwrap_or_else(|_| Space::numbered("w", list.len())))
            })
            .collect();
        let complex = CochainComplex::from_fn(spaces, |d, src, tgt| {
            let cols = words[&d]
                .iter()
                .map(|w| {
                    let mut acc = Accum::new();
                    let mut before = 0;
                    for (k, l) in w.iter().enumerate() {
                        let s = sign(before);
                        for (j, x) in a.d(l.0).col(l.1).entries() {
                            let mut w2 = w.clone();
                            w2[k] = (l.0 + 1, *j);
                            acc.add(index[&w2].1, &s * x);
                        }
                        before += l.0;
                    }
                    acc.finish()
                })
                .collect();
            LinearMap::new(src.clone(), tgt.clone(), cols).expect("word differential shape")
        })
        .expect("tensor power of a complex");
        TensorPower { complex, words, index }
    }

    /// The basis element for a word.
    pub fn word(&self, e: Elem) -> &[Elem] {
        &self.words[&e.0][e.1]
    }

    /// Expands `Σ c · (v_1 ⊗ … ⊗ v_n)` for homogeneous vectors `v_k` into the word basis.
    pub fn expand(&self, factors: &[(i64, SVec)]) -> SVec {
        let mut terms: Vec<(Vec<Elem>, crate::linalg::Scalar)> = vec![(Vec::new(), int(1))];
        for (d, v) in factors {
            let mut next = Vec::new();
            for (w, c) in &terms {
                for (i, x) in v.entries() {
                    let mut w2 = w.clone();
                    w2.push((*d, *i));
                    next.push((w2, c * x));
                }
            }
            terms = next;
        }
        let mut acc = Accum::new();
        for (w, c) in terms {
            acc.add(self.index[&w].1, c);
        }
        acc.finish()
    }
}
