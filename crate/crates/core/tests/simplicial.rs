mod common;

use std::collections::BTreeMap;

use dgq::cochain::{CochainComplex, ComplexMap};
use dgq::linalg::{LinearMap, SVec, Space};
use dgq::simplicial::{
    absorbing_monoidal, chaotic_monoidal, deligne_pipeline, fint_compose, fint_homset, fint_tensor, kld_desk_check, leinster_nerve, leinster_nerve_unchecked,
    trivial_monoidal, validate_leinster, Classification, DgAlgebra, DgAlgebraJson, FintMorphism, PipelineOptions,
    StrictMonoidal, StrictMonoidalJson,
};

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Brute force: every map `{0..m} -> {0..n}`, kept when monotone with fixed endpoints.
fn brute_force_count(m: usize, n: usize) -> usize {
    let total = (n + 1).pow(m as u32 + 1);
    (0..total)
        .filter(|&code| {
            let vals: Vec<usize> = (0..=m).map(|i| code / (n + 1).pow(i as u32) % (n + 1)).collect();
            vals[0] == 0 && vals[m] == n && vals.windows(2).all(|w| w[0] <= w[1])
        })
        .count()
}

#[test]
fn homsets_have_the_expected_sizes() {
    for n in 0..=5 {
        assert_eq!(fint_homset(1, n).len(), 1);
    }
    assert_eq!(fint_homset(2, 1).len(), 2);
    for m in 1..=5 {
        for n in 0..=5 {
            let hom = fint_homset(m, n);
            assert_eq!(hom.len(), binomial(n + m - 1, m - 1), "[{m}] -> [{n}]");
            assert_eq!(hom.len(), brute_force_count(m, n), "[{m}] -> [{n}]");
        }
    }
    assert_eq!(fint_homset(0, 0).len(), 1);
    assert!(fint_homset(0, 2).is_empty());
}

#[test]
fn composition_and_tensor_are_strict() {
    let hom = |a, b| fint_homset(a, b);
    for a in 0..=3 {
        for b in 0..=3 {
            for f in hom(a, b) {
                assert_eq!(fint_compose(&FintMorphism::identity(b), &f).unwrap(), f);
                assert_eq!(fint_compose(&f, &FintMorphism::identity(a)).unwrap(), f);
                for c in 0..=3 {
                    for g in hom(b, c) {
                        for d in 0..=3 {
                            for h in hom(c, d) {
                                let left = fint_compose(&h, &fint_compose(&g, &f).unwrap()).unwrap();
                                let right = fint_compose(&fint_compose(&h, &g).unwrap(), &f).unwrap();
                                assert_eq!(left, right);
                            }
                        }
                    }
                }
            }
        }
    }
    // (f ⊗ g) ∘ (f' ⊗ g') = (f ∘ f') ⊗ (g ∘ g') and associativity of ⊗
    for (a, b, c) in [(1, 2, 3), (2, 1, 2), (2, 2, 1)] {
        for f1 in hom(a, b) {
            for f2 in hom(b, c) {
                for g1 in hom(b, a) {
                    for g2 in hom(a, c) {
                        let lhs = fint_compose(&fint_tensor(&f2, &g2), &fint_tensor(&f1, &g1)).unwrap();
                        let rhs = fint_tensor(&fint_compose(&f2, &f1).unwrap(), &fint_compose(&g2, &g1).unwrap());
                        assert_eq!(lhs, rhs);
                        let x = fint_tensor(&fint_tensor(&f1, &g1), &f2);
                        let y = fint_tensor(&f1, &fint_tensor(&g1, &f2));
                        assert_eq!(x, y);
                    }
                }
            }
        }
    }
    assert!(fint_compose(&FintMorphism::identity(2), &FintMorphism::identity(1)).is_err());
    assert!(FintMorphism::new(2, 1, vec![0, 1, 0]).is_err());
    assert!(FintMorphism::new(2, 1, vec![0, 1]).is_err());
}

#[test]
fn nerve_of_the_ground_field_is_constant() {
    let p = leinster_nerve(&DgAlgebra::ground(), 4).unwrap();
    assert!(p.levels.iter().all(|l| l.total_dim() == 1));
    assert!(p.action.values().all(|f| f.same_layers(&ComplexMap::identity(f.source()))));
    let r = validate_leinster(&p, (-2, 2));
    assert_eq!(r.classification, Classification::Monoid);
    assert!(r.composable_pairs > 0);
}

#[test]
fn nerve_of_dual_numbers_is_a_monoid() {
    let a = DgAlgebra::dual_numbers();
    let p = leinster_nerve(&a, 4).unwrap();
    for (n, l) in p.levels.iter().enumerate() {
        assert_eq!(l.total_dim(), 1 << n);
    }
    let r = validate_leinster(&p, (-2, 2));
    assert!(r.functoriality.is_empty() && r.coherence.is_empty(), "{r:?}");
    assert_eq!(r.classification, Classification::Monoid);
    // x⊗x⊗x ↦ 0 and 1⊗1⊗x ↦ x
    let f = FintMorphism::new(1, 3, vec![0, 3]).unwrap();
    let x = p.action[&f].image(0, 7);
    assert!(x.is_zero());
    assert_eq!(p.action[&f].image(0, 1), SVec::unit(1));
}

fn lopsided() -> DgAlgebra {
    // basis 1, x, y with x·x = y and every other product of generators zero,
    // except y·x = x: then (xx)x = x but x(xx) = 0
    let s = Space::new(vec!["1".into(), "x".into(), "y".into()]).unwrap();
    let m = LinearMap::from_fn(&s.tensor(&s), &s, |j| {
        let (l, r) = (j / 3, j % 3);
        match (l, r) {
            (0, k) | (k, 0) => SVec::unit(k),
            (1, 1) => SVec::unit(2),
            (2, 1) => SVec::unit(1),
            _ => SVec::new(),
        }
    });
    DgAlgebra::new(CochainComplex::concentrated(0, s), BTreeMap::from([((0, 0), m)]), SVec::unit(0)).unwrap()
}

#[test]
fn a_non_associative_product_is_caught() {
    let a = lopsided();
    assert!(a.validate().iter().any(|f| f.contains("associativity")));
    assert!(leinster_nerve(&a, 3).is_err());
    let r = validate_leinster(&leinster_nerve_unchecked(&a, 3), (0, 0));
    assert_eq!(r.classification, Classification::Invalid);
    assert!(r.functoriality.iter().any(|f| f.contains("[3] → [1]")), "{:?}", r.functoriality);
}

#[test]
fn a_seeded_non_quasi_iso_colax_map_gives_a_pre_monoid() {
    let mut p = leinster_nerve(&DgAlgebra::dual_numbers(), 3).unwrap();
    // all β scaled by zero: coherence is homogeneous in β, weak equivalence is lost
    for beta in p.colax.values_mut() {
        *beta = ComplexMap::new(beta.source().clone(), beta.target().clone(), BTreeMap::new()).unwrap();
    }
    let r = validate_leinster(&p, (0, 0));
    assert!(r.coherence.is_empty(), "{:?}", r.coherence);
    assert!(r.colax.iter().all(|v| !v.report.is_quasi_iso));
    assert_eq!(r.classification, Classification::PreMonoid);
}

#[test]
fn algebra_json_round_trips() {
    let a = DgAlgebra::dual_numbers();
    let text = serde_json::to_string(&DgAlgebraJson::new(&a)).unwrap();
    let back: DgAlgebraJson = serde_json::from_str(&text).unwrap();
    assert_eq!(back.to_algebra().unwrap(), a);
    assert!(DgAlgebra::ground().validate().is_empty());
}

#[test]
fn pipeline_on_the_trivial_model_is_constant() {
    let out = deligne_pipeline(&trivial_monoidal(), &[], PipelineOptions::default()).unwrap();
    let r = &out.report;
    assert!(r.functoriality.is_empty() && r.multiplicativity.is_empty() && r.coherence.is_empty(), "{r:?}");
    assert_eq!(r.classification, Classification::Monoid);
    for level in &out.premonoid.levels {
        assert_eq!(level.total_dim(), 1);
    }
    assert!(out.summary.tensor_exact);
    assert_eq!(out.summary.basepoints, vec!["*", "e", "e⊗e", "e⊗e⊗e"]);
}

#[test]
fn pipeline_on_the_absorbing_model() {
    let m = absorbing_monoidal();
    let out = deligne_pipeline(&m, &[1], PipelineOptions { nmax: 3, window: (-6, 0), level_cap: None }).unwrap();
    let r = &out.report;
    assert!(r.functoriality.is_empty() && r.multiplicativity.is_empty() && r.coherence.is_empty(), "{r:?}");
    assert_eq!(out.summary.cohomology[1][&0], 1);
    assert!(out.summary.cohomology[1].iter().all(|(&d, &h)| d == 0 || h == 0));
    let pairs: Vec<(usize, usize)> = r.colax.iter().map(|v| (v.m, v.n)).collect();
    assert_eq!(pairs, vec![(1, 1), (1, 2), (2, 1)]);
    assert!(r.colax.iter().all(|v| v.report.is_quasi_iso));
    assert_eq!(r.classification, Classification::Monoid);
}

#[test]
fn pipeline_rejects_bad_input() {
    let m = absorbing_monoidal();
    // e ⊙ a = a leaves {e}
    assert!(deligne_pipeline(&m, &[0], PipelineOptions::default()).is_err());
    let c = m.category().clone();
    // all morphism products zero: the unit does not act trivially
    assert!(StrictMonoidal::new(c.clone(), 0, &[vec![0, 1], vec![1, 0]], |_, _, _, _, _, _| dgq::linalg::SVec::new()).is_err());
    assert!(StrictMonoidal::new(c, 1, &[vec![0, 1], vec![1, 1]], |_, _, _, _, _, _| dgq::linalg::SVec::new()).is_err());
}

#[test]
fn monoidal_json_round_trips() {
    let m = absorbing_monoidal();
    let text = serde_json::to_string(&StrictMonoidalJson::new(&m, &[1])).unwrap();
    let (back, ideal) = serde_json::from_str::<StrictMonoidalJson>(&text).unwrap().build().unwrap();
    assert_eq!(ideal, vec![1]);
    assert!(back.category().same_data(m.category()));
    assert_eq!(back.obj(1, 0), 1);
}

#[test]
fn pipeline_kills_an_object_isomorphic_to_the_unit() {
    let m = chaotic_monoidal();
    let out = deligne_pipeline(&m, &[1], PipelineOptions { nmax: 3, window: (-2, 0), level_cap: None }).unwrap();
    let r = &out.report;
    assert!(r.functoriality.is_empty() && r.multiplicativity.is_empty() && r.coherence.is_empty(), "{r:?}");
    // e ≅ a, so End(e^n) becomes acyclic for n ≥ 1
    for n in 1..=3 {
        assert!(out.premonoid.levels[n].total_dim() > 1);
        assert!(out.summary.cohomology[n].values().all(|&h| h == 0), "{:?}", out.summary.cohomology);
    }
    assert_eq!(r.classification, Classification::Monoid);
}

#[test]
fn hochschild_oracle_sanity() {
    // HH of ℚ: ℚ in degree 0; HH of ℚ[t]/(t²) in char 0: 2, then 1 in every degree
    let ground = vec![vec![vec![1]]];
    assert_eq!(common::truncated_hochschild(&ground, 3), vec![1, 0, 0, 0]);
    let hh = common::truncated_hochschild(&common::dual_numbers_table(), 5);
    assert_eq!(hh[..5], [2, 1, 1, 1, 1]);
    // cut after an odd degree the last cochain space survives whole
    assert_eq!(hh[5], 2);
}

#[test]
fn quotient_end_of_the_unit_matches_truncated_hochschild() {
    let oracle = common::truncated_hochschild(&common::dual_numbers_table(), 4);
    let r = kld_desk_check(4, (0, 4), 1).unwrap();
    for n in 0..=4 {
        assert_eq!(r.to_diagonal[&n], oracle[n as usize], "Hom(e, A) in degree {n}");
    }
    for n in 1..=4 {
        assert_eq!(r.cohomology[&n], oracle[n as usize], "End(e) in degree {n}");
    }
    // the truncated resolution also carries End of its bottom kernel in degree 0
    assert_eq!(r.cohomology[&0], oracle[0] + 2);
}
