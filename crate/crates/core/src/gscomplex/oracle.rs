use num_traits::Zero;
use serde::Serialize;

use crate::hopf::Bialgebra;
use crate::linalg::elim::kernel_of_rows;
use crate::linalg::{rank_of, Accum, SVec, Scalar};

#[derive(Clone, Debug, Serialize)]
pub struct DeformationCount {
    /// Pairs `(δm, δΔ)` solving the linearized bialgebra axioms.
    pub infinitesimal: usize,
    /// Those coming from `φ` with `φ(1) = 0`, `εφ = 0`.
    pub trivial: usize,
    pub dim: usize,
}

/// Structure constants as nested tables.
struct Tables {
    n: usize,
    /// `m[a][b]` is `e_a e_b`.
    m: Vec<Vec<Vec<(usize, Scalar)>>>,
    /// `d[a]` lists `(j, k, c)` with `Δ(e_a) ∋ c e_j⊗e_k`.
    d: Vec<Vec<(usize, usize, Scalar)>>,
    unit: Vec<(usize, Scalar)>,
    counit: Vec<(usize, Scalar)>,
}

impl Tables {
    fn new(b: &Bialgebra) -> Self {
        let n = b.dim();
        let m = (0..n)
            .map(|a| (0..n).map(|c| b.m().col(a * n + c).entries().to_vec()).collect())
            .collect();
        let d = (0..n)
            .map(|a| b.delta().col(a).entries().iter().map(|(i, x)| (i / n, i % n, x.clone())).collect())
            .collect();
        let counit = (0..n).map(|a| (a, b.counit().get(0, a))).filter(|(_, x)| !x.is_zero()).collect();
        Tables { n, m, d, unit: b.unit().entries().to_vec(), counit }
    }
}

/// Unknown layout: `δm(e_a, e_b)_k` then `δΔ(e_a)_{jk}`.
struct Unknowns {
    n: usize,
}

impl Unknowns {
    fn dm(&self, a: usize, b: usize, k: usize) -> usize {
        (a * self.n + b) * self.n + k
    }

    fn dd(&self, a: usize, j: usize, k: usize) -> usize {
        self.n.pow(3) + (a * self.n + j) * self.n + k
    }

    fn count(&self) -> usize {
        2 * self.n.pow(3)
    }
}

/// Counts first-order deformations of `(m, Δ)` with `1` and `ε` fixed,
/// modulo those induced by linear automorphisms `id + tφ`, by solving the
/// linearized axioms entry by entry.
pub fn deformation_oracle(b: &Bialgebra) -> DeformationCount {
    let t = Tables::new(b);
    let u = Unknowns { n: t.n };
    let n = t.n;
    let mut eqs: Vec<SVec> = Vec::new();
    let mut push = |acc: Accum| {
        let v = acc.finish();
        if !v.is_zero() {
            eqs.push(v);
        }
    };
    // associativity: a δm(b,c) − δm(ab,c) + δm(a,bc) − δm(a,b) c = 0
    for a in 0..n {
        for bb in 0..n {
            for c in 0..n {
                let mut rows: Vec<Accum> = (0..n).map(|_| Accum::new()).collect();
                for x in 0..n {
                    for (k, s) in &t.m[a][x] {
                        rows[*k].add(u.dm(bb, c, x), s.clone());
                    }
                    for (k, s) in &t.m[x][c] {
                        rows[*k].add(u.dm(a, bb, x), -s.clone());
                    }
                }
                for (y, s) in &t.m[a][bb] {
                    for (k, row) in rows.iter_mut().enumerate() {
                        row.add(u.dm(*y, c, k), -s.clone());
                    }
                }
                for (y, s) in &t.m[bb][c] {
                    for (k, row) in rows.iter_mut().enumerate() {
                        row.add(u.dm(a, *y, k), s.clone());
                    }
                }
                rows.into_iter().for_each(&mut push);
            }
        }
    }
    // coassociativity: (Δ⊗1)δΔ + (δΔ⊗1)Δ − (1⊗Δ)δΔ − (1⊗δΔ)Δ = 0
    for a in 0..n {
        let mut rows: Vec<Accum> = (0..n * n * n).map(|_| Accum::new()).collect();
        let idx = |j: usize, k: usize, l: usize| (j * n + k) * n + l;
        for x in 0..n {
            for l in 0..n {
                for (j, k, s) in &t.d[x] {
                    rows[idx(*j, *k, l)].add(u.dd(a, x, l), s.clone());
                }
            }
            for j in 0..n {
                for (k, l, s) in &t.d[x] {
                    rows[idx(j, *k, *l)].add(u.dd(a, j, x), -s.clone());
                }
            }
        }
        for (x, l, s) in &t.d[a] {
            for j in 0..n {
                for k in 0..n {
                    rows[idx(j, k, *l)].add(u.dd(*x, j, k), s.clone());
                }
            }
        }
        for (j, x, s) in &t.d[a] {
            for k in 0..n {
                for l in 0..n {
                    rows[idx(*j, k, l)].add(u.dd(*x, k, l), -s.clone());
                }
            }
        }
        rows.into_iter().for_each(&mut push);
    }
    // compatibility: δΔ(ab) + Δ(δm(a,b)) = δm_{B⊗B}(Δa, Δb) + δΔ(a)Δ(b) + Δ(a)δΔ(b)
    for a in 0..n {
        for bb in 0..n {
            let mut rows: Vec<Accum> = (0..n * n).map(|_| Accum::new()).collect();
            for (y, s) in &t.m[a][bb] {
                for j in 0..n {
                    for k in 0..n {
                        rows[j * n + k].add(u.dd(*y, j, k), s.clone());
                    }
                }
            }
            for x in 0..n {
                for (j, k, s) in &t.d[x] {
                    rows[j * n + k].add(u.dm(a, bb, x), s.clone());
                }
            }
            for (p, q, s1) in &t.d[a] {
                for (r, w, s2) in &t.d[bb] {
                    let s12 = s1 * s2;
                    for (k, s3) in &t.m[*q][*w] {
                        for j in 0..n {
                            rows[j * n + k].add(u.dm(*p, *r, j), -(&s12 * s3));
                        }
                    }
                    for (j, s3) in &t.m[*p][*r] {
                        for k in 0..n {
                            rows[j * n + k].add(u.dm(*q, *w, k), -(&s12 * s3));
                        }
                    }
                }
            }
            // one coproduct perturbed: (x₁y₁)⊗(x₂y₂)
            for (r, w, s2) in &t.d[bb] {
                for p in 0..n {
                    for q in 0..n {
                        for (j, s3) in &t.m[p][*r] {
                            for (k, s4) in &t.m[q][*w] {
                                rows[j * n + k].add(u.dd(a, p, q), -(s2 * s3 * s4));
                            }
                        }
                    }
                }
            }
            for (p, q, s1) in &t.d[a] {
                for r in 0..n {
                    for w in 0..n {
                        for (j, s3) in &t.m[*p][r] {
                            for (k, s4) in &t.m[*q][w] {
                                rows[j * n + k].add(u.dd(bb, r, w), -(s1 * s3 * s4));
                            }
                        }
                    }
                }
            }
            rows.into_iter().for_each(&mut push);
        }
    }
    // 1 and ε stay fixed
    for x in 0..n {
        for k in 0..n {
            let mut left = Accum::new();
            let mut right = Accum::new();
            for (i, s) in &t.unit {
                left.add(u.dm(*i, x, k), s.clone());
                right.add(u.dm(x, *i, k), s.clone());
            }
            push(left);
            push(right);
        }
        for y in 0..n {
            let mut counit = Accum::new();
            let mut unit = Accum::new();
            let mut first = Accum::new();
            let mut second = Accum::new();
            for (k, s) in &t.counit {
                counit.add(u.dm(x, y, *k), s.clone());
                first.add(u.dd(x, *k, y), s.clone());
                second.add(u.dd(x, y, *k), s.clone());
            }
            for (i, s) in &t.unit {
                unit.add(u.dd(*i, x, y), s.clone());
            }
            for acc in [counit, unit, first, second] {
                push(acc);
            }
        }
    }
    let (_, solutions) = kernel_of_rows(&eqs, u.count());
    let infinitesimal = solutions.len();

    // φ with φ(1) = 0 and εφ = 0; φ(e_a)_x at a·n + x
    let mut constraints: Vec<SVec> = Vec::new();
    for x in 0..n {
        let mut acc = Accum::new();
        for (i, s) in &t.unit {
            acc.add(i * n + x, s.clone());
        }
        constraints.push(acc.finish());
    }
    for a in 0..n {
        let mut acc = Accum::new();
        for (x, s) in &t.counit {
            acc.add(a * n + x, s.clone());
        }
        constraints.push(acc.finish());
    }
    let (_, phis) = kernel_of_rows(&constraints, n * n);
    let phi_of = |phi: &SVec, a: usize, x: usize| phi.get(a * n + x);
    let trivial_vectors: Vec<SVec> = phis
        .iter()
        .map(|phi| {
            let mut acc = Accum::new();
            // δm = m(φ⊗1) + m(1⊗φ) − φm
            for a in 0..n {
                for bb in 0..n {
                    for x in 0..n {
                        let pa = phi_of(phi, a, x);
                        if !pa.is_zero() {
                            for (k, s) in &t.m[x][bb] {
                                acc.add(u.dm(a, bb, *k), &pa * s);
                            }
                        }
                        let pb = phi_of(phi, bb, x);
                        if !pb.is_zero() {
                            for (k, s) in &t.m[a][x] {
                                acc.add(u.dm(a, bb, *k), &pb * s);
                            }
                        }
                    }
                    for (y, s) in &t.m[a][bb] {
                        for k in 0..n {
                            acc.add(u.dm(a, bb, k), -(s * phi_of(phi, *y, k)));
                        }
                    }
                }
            }
            // δΔ = Δφ − (φ⊗1)Δ − (1⊗φ)Δ
            for a in 0..n {
                for x in 0..n {
                    let pa = phi_of(phi, a, x);
                    if !pa.is_zero() {
                        for (j, k, s) in &t.d[x] {
                            acc.add(u.dd(a, *j, *k), &pa * s);
                        }
                    }
                }
                for (x, k, s) in &t.d[a] {
                    for j in 0..n {
                        acc.add(u.dd(a, j, *k), -(s * phi_of(phi, *x, j)));
                    }
                }
                for (j, x, s) in &t.d[a] {
                    for k in 0..n {
                        acc.add(u.dd(a, *j, k), -(s * phi_of(phi, *x, k)));
                    }
                }
            }
            acc.finish()
        })
        .collect();
    let trivial = rank_of(&trivial_vectors);
    DeformationCount { infinitesimal, trivial, dim: infinitesimal - trivial }
}
