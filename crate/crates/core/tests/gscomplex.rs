use dgq::gscomplex::{deformation_oracle, gs_cohomology, GsBicomplex};
use dgq::hopf::{group_algebra, random_basis_change, sweedler, trivial, Bialgebra, HopfAlgebra};
use dgq::linalg::elim::kernel_of_rows;
use dgq::linalg::{int, LinearMap, SVec, Scalar, Space};

fn corpus() -> Vec<(&'static str, HopfAlgebra)> {
    vec![("Q", trivial()), ("Z2", group_algebra(2).unwrap()), ("Z3", group_algebra(3).unwrap()), ("sweedler", sweedler())]
}

/// Basis `g^a x^b` (`a < 4`, `b < 2`) with `gx = −xg`, `x² = 0`,
/// `g` group-like and `Δx = x⊗1 + g⊗x`. It admits the lifting `x² = t(1 − g²)`.
fn pointed8() -> Bialgebra {
    let s = Space::numbered("e", 8);
    let idx = |a: usize, b: usize| a % 4 + 4 * b;
    let m = LinearMap::from_fn(&s.tensor(&s), &s, |j| {
        let (l, r) = (j / 8, j % 8);
        let (a, b, c, d) = (l % 4, l / 4, r % 4, r / 4);
        if b + d > 1 {
            return SVec::new();
        }
        let sg = if b * c % 2 == 1 { -1 } else { 1 };
        SVec::from_pairs([(idx(a + c, b + d), int(sg))])
    });
    let d = LinearMap::from_fn(&s, &s.tensor(&s), |j| {
        let (a, b) = (j % 4, j / 4);
        if b == 0 {
            SVec::unit(idx(a, 0) * 8 + idx(a, 0))
        } else {
            SVec::from_pairs([(idx(a, 1) * 8 + idx(a, 0), int(1)), (idx(a + 1, 0) * 8 + idx(a, 1), int(1))])
        }
    });
    let e = LinearMap::covector(&s, &(0..8).map(|j| int(i64::from(j < 4))).collect::<Vec<_>>());
    Bialgebra::new(s, m, SVec::unit(0), d, e).unwrap()
}

/// Linear maps `D: B -> B` that are both derivations and coderivations,
/// solved entry by entry. Unknown `a·n + x` is the `e_x` coefficient of `D(e_a)`.
fn derivation_coderivations(b: &Bialgebra) -> usize {
    let n = b.dim();
    let term = |i: usize, s: &Scalar| SVec::from_pairs([(i, s.clone())]);
    let mut equations: Vec<SVec> = Vec::new();
    for a in 0..n {
        for c in 0..n {
            // D(ac) − D(a)c − aD(c)
            let mut rows = vec![SVec::new(); n];
            for (y, s) in b.mul(&SVec::unit(a), &SVec::unit(c)).entries() {
                for (k, row) in rows.iter_mut().enumerate() {
                    *row = row.add(&term(y * n + k, s));
                }
            }
            for x in 0..n {
                for (k, s) in b.mul(&SVec::unit(x), &SVec::unit(c)).entries() {
                    rows[*k] = rows[*k].sub(&term(a * n + x, s));
                }
                for (k, s) in b.mul(&SVec::unit(a), &SVec::unit(x)).entries() {
                    rows[*k] = rows[*k].sub(&term(c * n + x, s));
                }
            }
            equations.extend(rows);
        }
        // ΔD(a) − (D⊗1 + 1⊗D)Δ(a)
        let mut rows = vec![SVec::new(); n * n];
        for x in 0..n {
            for (k, s) in b.delta().col(x).entries() {
                rows[*k] = rows[*k].add(&term(a * n + x, s));
            }
        }
        for (k, s) in b.delta().col(a).entries() {
            let (l, r) = (k / n, k % n);
            for x in 0..n {
                rows[x * n + r] = rows[x * n + r].sub(&term(l * n + x, s));
                rows[l * n + x] = rows[l * n + x].sub(&term(r * n + x, s));
            }
        }
        equations.extend(rows);
    }
    kernel_of_rows(&equations, n * n).1.len()
}

#[test]
fn differentials_square_to_zero_and_commute() {
    for (name, h) in corpus() {
        let g = GsBicomplex::new(&h.bialgebra, 3, 3).unwrap();
        assert!(g.identity_failures().is_empty(), "{name}: {:?}", g.identity_failures());
    }
    let g = GsBicomplex::new(&group_algebra(2).unwrap().bialgebra, 4, 4).unwrap();
    assert!(g.identity_failures().is_empty());
}

#[test]
fn degree_two_matches_the_deformation_oracle() {
    for (name, h) in corpus() {
        let oracle = deformation_oracle(&h.bialgebra);
        let g = GsBicomplex::new(&h.bialgebra, 4, 4).unwrap();
        let c = gs_cohomology(&g, false);
        assert_eq!(c.dims[&2], oracle.dim, "{name}: {oracle:?}");
    }
}

#[test]
fn a_liftable_pointed_hopf_algebra_has_second_cohomology() {
    let b = pointed8();
    assert!(b.validate().is_empty());
    let oracle = deformation_oracle(&b);
    assert_eq!(oracle.dim, 1);
    let g = GsBicomplex::new(&b, 3, 3).unwrap();
    assert_eq!(gs_cohomology(&g, false).dims[&2], 1);
    assert_eq!(gs_cohomology(&g, true).dims[&2], 1);
}

#[test]
fn degree_one_counts_derivation_coderivations() {
    for (name, h) in corpus() {
        let g = GsBicomplex::new(&h.bialgebra, 3, 3).unwrap();
        assert_eq!(gs_cohomology(&g, false).dims[&1], derivation_coderivations(&h.bialgebra), "{name}");
    }
    assert_eq!(derivation_coderivations(&sweedler().bialgebra), 1);
}

#[test]
fn normalized_and_unnormalized_agree() {
    for (name, h) in corpus() {
        let g = GsBicomplex::new(&h.bialgebra, 4, 4).unwrap();
        let (full, norm) = (gs_cohomology(&g, false), gs_cohomology(&g, true));
        assert!(norm.subcomplex_closed, "{name}");
        assert_eq!(full.dims, norm.dims, "{name}");
        assert!(norm.cochains.values().zip(full.cochains.values()).all(|(a, b)| a <= b));
    }
    // only the corner survives over the ground field
    let g = GsBicomplex::new(&trivial().bialgebra, 3, 3).unwrap();
    assert!(gs_cohomology(&g, true).cochains.values().all(|&c| c == 0));
}

#[test]
fn cohomology_is_basis_independent() {
    for (name, h) in [("Z2", group_algebra(2).unwrap()), ("sweedler", sweedler())] {
        let g = GsBicomplex::new(&h.bialgebra, 3, 3).unwrap();
        let base = gs_cohomology(&g, false).dims;
        for seed in [1, 7] {
            let p = random_basis_change(h.space(), seed);
            let moved = h.bialgebra.conjugate(&p).unwrap();
            let g = GsBicomplex::new(&moved, 3, 3).unwrap();
            assert_eq!(gs_cohomology(&g, false).dims, base, "{name} seed {seed}");
            assert_eq!(gs_cohomology(&g, true).dims, base, "{name} seed {seed} normalized");
        }
    }
}

#[test]
fn only_complete_degrees_are_reported() {
    let b = sweedler().bialgebra;
    let g = GsBicomplex::new(&b, 3, 3).unwrap();
    assert_eq!(gs_cohomology(&g, false).dims.keys().copied().collect::<Vec<_>>(), vec![1, 2]);
    let g = GsBicomplex::new(&b, 2, 4).unwrap();
    assert_eq!(gs_cohomology(&g, false).dims.keys().copied().collect::<Vec<_>>(), vec![1]);
    assert_eq!(g.cells(2), vec![(1, 2), (2, 1)]);
    assert_eq!(g.cells(3), vec![(1, 3), (2, 2)]);
}

#[test]
fn bad_input_is_rejected() {
    let b = sweedler().bialgebra;
    assert!(GsBicomplex::new(&b, 1, 4).is_err());
    assert!(GsBicomplex::new(&b, 4, 1).is_err());
    // x primitive with x² = 0 is not a bialgebra in characteristic zero
    let s = Space::new(vec!["1".into(), "x".into()]).unwrap();
    let m = LinearMap::from_fn(&s.tensor(&s), &s, |j| match j {
        0 => SVec::unit(0),
        1 | 2 => SVec::unit(1),
        _ => SVec::new(),
    });
    let d = LinearMap::from_fn(&s, &s.tensor(&s), |j| if j == 0 { SVec::unit(0) } else { SVec::from_pairs([(1, int(1)), (2, int(1))]) });
    let bad = Bialgebra::new(s.clone(), m, SVec::unit(0), d, LinearMap::covector(&s, &[int(1), int(0)])).unwrap();
    assert!(GsBicomplex::new(&bad, 3, 3).is_err());
}
