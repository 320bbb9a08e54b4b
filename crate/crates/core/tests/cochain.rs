use std::collections::BTreeMap;

use dgq::cochain::{cone, lambda_complex, lambda_maps, tensor_complexes, CochainComplex, ComplexMap, Lambda};
use dgq::linalg::scalar::int;
use dgq::linalg::{determinant, LinearMap, SVec, Scalar, Space};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn map_from(rows: &[Vec<i64>], dom: &Space, cod: &Space) -> LinearMap {
    LinearMap::from_int_rows(dom, cod, rows).unwrap()
}

/// Rank as the size of the largest nonvanishing minor.
fn minor_rank(m: &[Vec<i64>]) -> usize {
    let (r, c) = (m.len(), m.first().map_or(0, Vec::len));
    for k in (1..=r.min(c)).rev() {
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let sub: Vec<Vec<Scalar>> = rows.iter().map(|&i| cols.iter().map(|&j| int(m[i][j])).collect()).collect();
                if determinant(&sub) != int(0) {
                    return k;
                }
            }
        }
    }
    0
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << n)).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
}

/// Direct sum of `singles[n]` copies of ℚ in degree n and `pairs[n]` copies of
/// ℚ --id--> ℚ in degrees n, n+1, with each component scrambled by a random
/// invertible change of basis. Cohomology is `singles`.
fn random_complex(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> (CochainComplex, BTreeMap<i64, usize>) {
    let singles: BTreeMap<i64, usize> = (lo..=hi).map(|n| (n, rng.gen_range(0..2))).collect();
    let pairs: BTreeMap<i64, usize> = (lo..hi).map(|n| (n, rng.gen_range(0..2))).collect();
    // component n: singles, then pair-starts at n, then pair-ends from n-1
    let dims: BTreeMap<i64, (usize, usize, usize)> = (lo..=hi)
        .map(|n| (n, (singles[&n], *pairs.get(&n).unwrap_or(&0), *pairs.get(&(n - 1)).unwrap_or(&0))))
        .collect();
    let mut spaces = BTreeMap::new();
    let mut change = BTreeMap::new();
    for (&n, &(s, a, b)) in &dims {
        let dim = s + a + b;
        let sp = Space::numbered(&format!("c{n}_"), dim);
        // unit lower-triangular times unit upper-triangular: invertible
        let mut l = vec![vec![0i64; dim]; dim];
        let mut u = vec![vec![0i64; dim]; dim];
        for i in 0..dim {
            l[i][i] = 1;
            u[i][i] = 1;
            for j in 0..i {
                l[i][j] = rng.gen_range(-2..=2);
                u[j][i] = rng.gen_range(-2..=2);
            }
        }
        let lm = map_from(&l, &sp, &sp);
        let um = map_from(&u, &sp, &sp);
        change.insert(n, lm.compose(&um).unwrap());
        spaces.insert(n, sp);
    }
    let inverse = |m: &LinearMap| -> LinearMap {
        let sp = m.domain().clone();
        LinearMap::from_fn(&sp, &sp, |j| dgq::linalg::solve(m, &SVec::unit(j)).unwrap())
    };
    let c = CochainComplex::from_fn(spaces.clone(), |n, dom, cod| {
        let (s, a, _) = dims[&n];
        let (s1, _, _) = dims[&(n + 1)];
        let (_, a1, _) = dims[&(n + 1)];
        let plain = LinearMap::from_fn(dom, cod, |j| {
            if j >= s && j < s + a {
                SVec::unit(s1 + a1 + (j - s))
            } else {
                SVec::new()
            }
        });
        change[&(n + 1)].compose(&plain).unwrap().compose(&inverse(&change[&n])).unwrap()
    })
    .unwrap();
    (c, singles)
}

#[test]
fn isomorphism_differential_is_acyclic() {
    let k = Space::numbered("x", 1);
    let c = CochainComplex::new(
        BTreeMap::from([(0, k.clone()), (1, Space::numbered("y", 1))]),
        BTreeMap::from([(0, map_from(&[vec![1]], &k, &Space::numbered("y", 1)))]),
    )
    .unwrap();
    assert!(c.is_acyclic());
}

#[test]
fn zero_differential_gives_component_dims() {
    let c = CochainComplex::new(
        BTreeMap::from([(-1, Space::numbered("a", 2)), (0, Space::numbered("b", 3))]),
        BTreeMap::new(),
    )
    .unwrap();
    assert_eq!(c.cohomology_dims(), BTreeMap::from([(-1, 2), (0, 3)]));
}

#[test]
fn three_term_complex_matches_minor_ranks() {
    let (a, b, c) = (Space::numbered("a", 2), Space::numbered("b", 3), Space::numbered("c", 1));
    let d0 = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
    let d1 = vec![vec![1, 1, -1]];
    let cx = CochainComplex::new(
        BTreeMap::from([(0, a.clone()), (1, b.clone()), (2, c.clone())]),
        BTreeMap::from([(0, map_from(&d0, &a, &b)), (1, map_from(&d1, &b, &c))]),
    )
    .unwrap();
    let (r0, r1) = (minor_rank(&d0), minor_rank(&d1));
    assert_eq!(cx.cohomology_dims(), BTreeMap::from([(0, 2 - r0), (1, 3 - r1 - r0), (2, 1 - r1)]));
}

#[test]
fn d_squared_nonzero_rejected() {
    let k = Space::numbered("x", 1);
    let one = map_from(&[vec![1]], &k, &k);
    let err = CochainComplex::new(BTreeMap::from([(0, k.clone()), (1, k.clone()), (2, k.clone())]), BTreeMap::from([(0, one.clone()), (1, one)]));
    assert!(err.is_err());
}

#[test]
fn lambda_complexes_are_acyclic_with_binomial_dims() {
    for n in 1..=8usize {
        let c = lambda_complex(n).unwrap();
        let mut binom = 1usize;
        for l in 0..=n {
            assert_eq!(c.dim(-(l as i64)), binom, "n={n} l={l}");
            binom = binom * (n - l) / (l + 1);
        }
        assert!(c.is_acyclic(), "n={n}");
    }
    assert!(lambda_complex(0).is_err());
}

#[test]
fn homotopy_operator_commutator_is_scalar() {
    let lam = Lambda::standard(4).unwrap();
    let h = lam.homotopy();
    for l in 0..=4i64 {
        let deg = -l;
        let sp = lam.complex.space(deg);
        let dh = match h.get(&deg) {
            Some(hm) => lam.complex.d(deg - 1).compose(hm).unwrap(),
            None => LinearMap::zero(&sp, &sp),
        };
        let hd = match h.get(&(deg + 1)) {
            Some(hm) => hm.compose(&lam.complex.d(deg)).unwrap(),
            None => LinearMap::zero(&sp, &sp),
        };
        let comm = dh.add(&hd).unwrap();
        assert!(comm.same_entries(&LinearMap::identity(&sp).scale(&int(4))), "degree {deg}");
    }
}

#[test]
fn cone_of_identity_is_acyclic_and_of_zero_is_not() {
    let k = CochainComplex::concentrated(0, Space::numbered("x", 1));
    assert!(cone(&ComplexMap::identity(&k)).is_acyclic());
    let z = ComplexMap::from_fn(&k, &k, |_| LinearMap::zero(&k.space(0), &k.space(0))).unwrap();
    assert_eq!(cone(&z).cohomology_dims(), BTreeMap::from([(-1, 1), (0, 1)]));
}

#[test]
fn psi_cone_is_acyclic() {
    let maps = lambda_maps(3, 1).unwrap();
    assert!(maps.psi_left.is_quasi_iso());
    assert!(cone(&maps.psi_left).is_acyclic());
    let four = lambda_maps(4, 1).unwrap();
    assert!(four.psi_left.is_quasi_iso());
}

#[test]
fn unit_complex_is_tensor_unit() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (a, _) = random_complex(&mut rng, -2, 1);
    let unit = CochainComplex::concentrated(0, Space::ground());
    let t = tensor_complexes(&a, &unit).complex;
    assert_eq!(t.cohomology_dims(), a.cohomology_dims());
    for n in -2..=1 {
        assert_eq!(t.dim(n), a.dim(n));
        assert!(t.d(n).same_entries(&a.d(n)));
    }
}

#[test]
fn tensor_of_one_generator_lambdas() {
    let u = lambda_complex(1).unwrap();
    let t = tensor_complexes(&u, &u).complex;
    assert_eq!((t.dim(0), t.dim(-1), t.dim(-2)), (1, 2, 1));
    assert!(t.is_acyclic());
}

#[test]
fn kunneth_on_random_complexes() {
    let mut rng = ChaCha8Rng::seed_from_u64(20240611);
    for _ in 0..12 {
        let (a, ha) = random_complex(&mut rng, -2, 1);
        let (b, hb) = random_complex(&mut rng, -1, 2);
        let t = tensor_complexes(&a, &b).complex;
        for n in -3..=3 {
            let expect: usize = ha.iter().map(|(p, x)| x * hb.get(&(n - p)).copied().unwrap_or(0)).sum();
            assert_eq!(t.cohomology_dim(n), expect, "degree {n}");
        }
        assert_eq!(a.cohomology_dims().into_iter().filter(|(_, d)| *d > 0).collect::<BTreeMap<_, _>>(),
                   ha.into_iter().filter(|(_, d)| *d > 0).collect());
    }
}

#[test]
fn quasi_iso_agrees_with_cone_acyclicity() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut corpus: Vec<ComplexMap> = Vec::new();
    for _ in 0..6 {
        let (a, _) = random_complex(&mut rng, -2, 1);
        corpus.push(ComplexMap::identity(&a));
        corpus.push(ComplexMap::from_fn(&a, &a, |n| LinearMap::zero(&a.space(n), &a.space(n))).unwrap());
        corpus.push(ComplexMap::from_fn(&a, &a, |n| LinearMap::identity(&a.space(n)).scale(&int(2))).unwrap());
        let z = CochainComplex::zero();
        corpus.push(ComplexMap::from_fn(&a, &z, |n| LinearMap::zero(&a.space(n), &Space::zero())).unwrap());
    }
    for (n, m) in [(1, 1), (2, 1), (2, 3)] {
        let maps = lambda_maps(n, m).unwrap();
        corpus.extend([maps.beta, maps.psi_left, maps.psi_sum, maps.sigma]);
    }
    for f in &corpus {
        assert_eq!(f.is_quasi_iso(), cone(f).is_acyclic());
    }
}

#[test]
fn beta_sign_is_pinned_by_chain_map_equation() {
    let maps = lambda_maps(1, 1).unwrap();
    let (p, i) = (maps.left.locate(1), maps.right.locate(1));
    let pos = maps.product.index(p.0, p.1, i.0, i.1).unwrap();
    let col = maps.beta.layer(-2).col(0).clone();
    assert_eq!(col, SVec::from_pairs([(pos, int(1))]));
    // flipping the sign on v1∧w1 breaks the chain-map property
    let src = maps.sum.complex.clone();
    let tgt = maps.product.complex.clone();
    let layers: BTreeMap<i64, LinearMap> = (-2..=0)
        .map(|n| {
            let l = maps.beta.layer(n);
            (n, if n == -2 { l.scale(&int(-1)) } else { l })
        })
        .collect();
    assert!(ComplexMap::new(src, tgt, layers).is_err());
}

#[test]
fn sigma_values_and_triangle() {
    let maps = lambda_maps(2, 3).unwrap();
    assert!(maps.report.triangle_commutes);
    assert!(maps.report.beta_quasi_iso && maps.report.psi_quasi_iso && maps.report.sigma_quasi_iso);
    let s = &maps.sigma;
    assert!(s.layer(-2).is_zero());
    assert_eq!(s.layer(-1).col(0), &SVec::unit(0));
    assert_eq!(s.layer(-1).col(1), &SVec::unit(0));
}

#[test]
fn complex_json_round_trip() {
    let c = lambda_complex(3).unwrap();
    let text = serde_json::to_string(&c).unwrap();
    let back: CochainComplex = serde_json::from_str(&text).unwrap();
    assert_eq!(back, c);
}
