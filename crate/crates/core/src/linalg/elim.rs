//! Fraction-free sparse elimination.
//!
//! Rows are kept as primitive integer vectors (content divided out after every
//! combination step). Combining `r` with pivot row `p` at column `c` is
//! `p[c] * r - r[c] * p`, so no fractions ever appear during elimination;
//! rationals are only formed when reading off kernel vectors or solutions.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::map::LinearMap;
use super::scalar::Scalar;
use super::vector::SVec;

type IRow = Vec<(usize, BigInt)>;

fn to_int_row(v: &SVec) -> IRow {
    let mut l = BigInt::one();
    for (_, x) in v.entries() {
        l = l.lcm(x.denom());
    }
    let mut row: IRow = v.entries().iter().map(|(i, x)| (*i, x.numer() * (&l / x.denom()))).collect();
    normalize(&mut row);
    row
}

fn normalize(row: &mut IRow) {
    if row.is_empty() {
        return;
    }
    let mut g = BigInt::zero();
    for (_, x) in row.iter() {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    let neg = row[0].1.is_negative();
    if !g.is_one() || neg {
        let g = if neg { -g } else { g };
        for (_, x) in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

fn get(row: &IRow, c: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&c, |(j, _)| *j).ok().map(|k| &row[k].1)
}

/// `a * r - b * p`
fn combine(a: &BigInt, r: &IRow, b: &BigInt, p: &IRow) -> IRow {
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        if j >= p.len() || (i < r.len() && r[i].0 < p[j].0) {
            out.push((r[i].0, a * &r[i].1));
            i += 1;
        } else if i >= r.len() || p[j].0 < r[i].0 {
            out.push((p[j].0, -(b * &p[j].1)));
            j += 1;
        } else {
            let s = a * &r[i].1 - b * &p[j].1;
            if !s.is_zero() {
                out.push((r[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    normalize(&mut out);
    out
}

/// Row echelon form built incrementally.
#[derive(Default)]
pub struct Echelon {
    rows: Vec<IRow>,
    pivot_of: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    fn reduce(&self, mut row: IRow) -> IRow {
        while let Some((lead, lv)) = row.first().cloned() {
            match self.pivot_of.get(&lead) {
                Some(&k) => {
                    let p = &self.rows[k];
                    let pv = &p[0].1;
                    let g = pv.gcd(&lv);
                    row = combine(&(pv / &g), &row, &(&lv / &g), p);
                }
                None => break,
            }
        }
        row
    }

    /// Inserts a row; returns true if it increased the rank.
    pub fn push(&mut self, v: &SVec) -> bool {
        let row = self.reduce(to_int_row(v));
        if row.is_empty() {
            return false;
        }
        self.pivot_of.insert(row[0].0, self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, v: &SVec) -> bool {
        self.reduce(to_int_row(v)).is_empty()
    }

    pub fn basis(&self) -> Vec<SVec> {
        self.rows.iter().map(|r| SVec::from_pairs(r.iter().map(|(i, x)| (*i, BigRational::from_integer(x.clone()))))).collect()
    }

    /// Reduced echelon rows as rational vectors, sorted by pivot column.
    pub fn reduced_basis(self) -> Vec<SVec> {
        self.into_reduced()
            .into_iter()
            .map(|r| SVec::from_pairs(r.into_iter().map(|(i, x)| (i, BigRational::from_integer(x)))))
            .collect()
    }

    /// Reduced row echelon form: every pivot column is zero outside its pivot row.
    fn into_reduced(mut self) -> Vec<IRow> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&k| self.rows[k][0].0);
        for oi in (0..order.len()).rev() {
            let k = order[oi];
            let c = self.rows[k][0].0;
            for &kj in &order[..oi] {
                if let Some(b) = get(&self.rows[kj], c).cloned() {
                    let p = &self.rows[k];
                    let a = &p[0].1;
                    let g = a.gcd(&b);
                    let new = combine(&(a / &g), &self.rows[kj], &(&b / &g), p);
                    self.rows[kj] = new;
                }
            }
        }
        order.into_iter().map(|k| std::mem::take(&mut self.rows[k])).collect()
    }
}

pub fn rank_of(vectors: &[SVec]) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.push(v);
    }
    e.rank()
}

pub fn rank(m: &LinearMap) -> usize {
    // rank of the transpose; columns are already materialized
    rank_of(m.cols())
}

/// Basis of the column space (as primitive integer vectors).
pub fn image_basis(m: &LinearMap) -> Vec<SVec> {
    let mut e = Echelon::new();
    for c in m.cols() {
        e.push(c);
    }
    e.basis()
}

fn rref_of_rows(rows: &[SVec]) -> Vec<IRow> {
    let mut e = Echelon::new();
    for r in rows {
        e.push(r);
    }
    e.into_reduced()
}

/// Basis of the null space `{x : m x = 0}`; one vector per free column.
pub fn kernel_basis(m: &LinearMap) -> Vec<SVec> {
    kernel_of_rows(&m.rows(), m.ncols()).1
}

/// Free columns (ascending) and the matching kernel vectors; the vector for
/// free column `f` is 1 at `f` and 0 at every other free column.
pub fn kernel_of_rows(rows: &[SVec], ncols: usize) -> (Vec<usize>, Vec<SVec>) {
    let rref = rref_of_rows(rows);
    let mut is_pivot = vec![false; ncols];
    for r in &rref {
        is_pivot[r[0].0] = true;
    }
    let mut kern: HashMap<usize, Vec<(usize, Scalar)>> = HashMap::new();
    for f in (0..ncols).filter(|&f| !is_pivot[f]) {
        kern.insert(f, vec![(f, Scalar::one())]);
    }
    for r in &rref {
        let (c, p) = (&r[0].0, &r[0].1);
        for (f, a) in &r[1..] {
            kern.get_mut(f).expect("non-pivot entry in reduced row").push((*c, -BigRational::new(a.clone(), p.clone())));
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|f| !is_pivot[*f]).collect();
    let vecs = free.iter().map(|f| SVec::from_pairs(kern.remove(f).unwrap())).collect();
    (free, vecs)
}

/// Some `x` with `m x = target`, or `None` when the target is not in the image.
pub fn solve(m: &LinearMap, target: &SVec) -> Option<SVec> {
    let n = m.ncols();
    let t = m.rows();
    let aug: Vec<SVec> = t
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            let b = target.get(i);
            let mut e = r.into_entries();
            if !b.is_zero() {
                e.push((n, b));
            }
            SVec::from_pairs(e)
        })
        .collect();
    let rref = rref_of_rows(&aug);
    let mut x = Vec::new();
    for r in &rref {
        let (c, p) = (r[0].0, &r[0].1);
        if c == n {
            return None;
        }
        if let Some(b) = get(r, n) {
            x.push((c, BigRational::new(b.clone(), p.clone())));
        }
    }
    Some(SVec::from_pairs(x))
}

/// Two-sided inverse of a square map, if it is invertible.
pub fn inverse(m: &LinearMap) -> Option<LinearMap> {
    if m.nrows() != m.ncols() || rank(m) != m.ncols() {
        return None;
    }
    let cols = (0..m.nrows()).map(|i| solve(m, &SVec::unit(i))).collect::<Option<Vec<_>>>()?;
    LinearMap::new(m.codomain().clone(), m.domain().clone(), cols).ok()
}

/// Determinant by fraction-free (Bareiss) elimination on a dense square matrix.
pub fn determinant(rows: &[Vec<Scalar>]) -> Scalar {
    let n = rows.len();
    if n == 0 {
        return Scalar::one();
    }
    // clear denominators row by row
    let mut scale = Scalar::one();
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            scale *= BigRational::from_integer(l.clone());
            r.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return Scalar::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    BigRational::from_integer(sign * &a[n - 1][n - 1]) / scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::int;
    use crate::linalg::space::Space;

    fn m(rows: &[Vec<i64>]) -> LinearMap {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        LinearMap::from_int_rows(&Space::numbered("x", c), &Space::numbered("y", r), rows).unwrap()
    }

    #[test]
    fn identity_and_proportional_rank() {
        assert_eq!(rank(&m(&[vec![1, 0], vec![0, 1]])), 2);
        assert_eq!(rank(&m(&[vec![1, 2], vec![2, 4]])), 1);
    }

    #[test]
    fn kernel_of_row_vector() {
        let k = kernel_basis(&m(&[vec![1, 1]]));
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert_eq!(v.get(0), -v.get(1));
        assert!(m(&[vec![1, 1]]).apply(v).is_zero());
    }

    #[test]
    fn zero_map_kernel_is_everything() {
        let z = LinearMap::zero(&Space::numbered("a", 3), &Space::numbered("b", 2));
        assert_eq!(kernel_basis(&z).len(), 3);
        assert_eq!(rank(&z), 0);
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let id = LinearMap::identity(&Space::numbered("e", 3));
        let v = SVec::from_pairs([(0, int(2)), (2, int(-5))]);
        assert_eq!(solve(&id, &v), Some(v.clone()));
        let z = LinearMap::zero(&Space::numbered("a", 2), &Space::numbered("b", 2));
        assert_eq!(solve(&z, &SVec::unit(1)), None);
        assert_eq!(solve(&z, &SVec::new()), Some(SVec::new()));
    }

    #[test]
    fn bareiss_matches_small_determinants() {
        let a = vec![vec![int(2), int(1)], vec![int(7), int(4)]];
        assert_eq!(determinant(&a), int(1));
        let sing = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(determinant(&sing), int(0));
    }
}
