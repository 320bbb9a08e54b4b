use dgq::hopf::{group_algebra, sweedler, trivial, HopfAlgebra};
use dgq::linalg::{LinearMap, SVec, Space};
use dgq::monoidal2::{
    braiding, compare_products, eckmann_hilton, exactness_check, external_product, internal_product, kernel_sequence,
    lambda_prime, split_sequence, unit_comparisons, Variant,
};
use dgq::tetra::{free_tetramodule, generator_factorization, regular_tetramodule, tetra_decomposition_report, Tetramodule};

fn free(h: &HopfAlgebra, nw: usize) -> Tetramodule {
    free_tetramodule(&h.bialgebra, &Space::numbered("w", nw))
}

fn small_corpus() -> Vec<(&'static str, HopfAlgebra)> {
    vec![("Q", trivial()), ("Z2", group_algebra(2).unwrap()), ("sweedler", sweedler())]
}

#[test]
fn external_products_are_tetramodules() {
    for (name, h) in small_corpus() {
        let mods = [regular_tetramodule(&h.bialgebra), free(&h, 1), free(&h, 0)];
        for m in &mods {
            for n in &mods {
                for v in [Variant::One, Variant::Two] {
                    let e = external_product(m, n, v).unwrap();
                    assert_eq!(e.dim(), m.dim() * n.dim());
                    assert!(e.validate().is_empty(), "{name} {v}: {:?}", e.validate());
                }
            }
        }
    }
    let z2 = group_algebra(2).unwrap();
    let b = regular_tetramodule(&z2.bialgebra);
    assert_eq!(external_product(&b, &b, Variant::One).unwrap().dim(), 4);
    assert!(external_product(&b, &regular_tetramodule(&sweedler().bialgebra), Variant::One).is_err());
}

/// Regular and free tetramodules are free right modules and cofree right
/// comodules of rank `dim M / dim B`, so both products have dimension
/// `(dim M / dim B) · dim N`.
#[test]
fn internal_product_dimensions() {
    for (name, h) in small_corpus() {
        let nb = h.dim();
        let mods = [regular_tetramodule(&h.bialgebra), free(&h, 1), free(&h, 2), free(&h, 0)];
        for m in &mods {
            for n in &mods[..2] {
                for v in [Variant::One, Variant::Two] {
                    let p = internal_product(m, n, v).unwrap();
                    assert!(p.ill_defined.is_empty(), "{name} {v}: {:?}", p.ill_defined);
                    assert_eq!(p.dim(), m.dim() / nb * n.dim(), "{name} {v}");
                    assert!(p.product.validate().is_empty(), "{name} {v}");
                }
            }
        }
    }
    let b = regular_tetramodule(&sweedler().bialgebra);
    assert_eq!(internal_product(&b, &b, Variant::Two).unwrap().dim(), 4);
}

#[test]
fn the_regular_module_is_a_unit_for_both_products() {
    for (name, h) in small_corpus() {
        for m in [regular_tetramodule(&h.bialgebra), free(&h, 1)] {
            for c in unit_comparisons(&m).unwrap() {
                assert!(c.well_defined && c.invertible && c.morphism, "{name}: {c:?}");
            }
        }
    }
}

#[test]
fn product_comparison_on_regular_modules_records_the_mismatch() {
    let h = group_algebra(2).unwrap();
    let b = regular_tetramodule(&h.bialgebra);
    let r = compare_products(&b, &b, &h).unwrap();
    assert_eq!((r.dim_product_1, r.dim_product_2, r.predicted), (2, 2, 4));
    assert!(r.products_agree && !r.prediction_holds && !r.certified);
    assert!(r.isomorphism_found);
    let q = trivial();
    let r = compare_products(&free(&q, 1), &free(&q, 2), &q).unwrap();
    assert_eq!((r.dim_product_1, r.dim_product_2, r.predicted), (2, 2, 2));
    assert!(r.certified && r.decompositions_hold);
}

#[test]
fn product_comparison_on_free_modules() {
    let z2 = group_algebra(2).unwrap();
    let r = compare_products(&free(&z2, 1), &free(&z2, 1), &z2).unwrap();
    // coinvariants g⊗w⊗g and 1⊗w⊗1 double the prediction
    assert_eq!((r.dim_product_1, r.dim_m0, r.predicted), (8, 2, 16));
    assert!(r.isomorphism_found && !r.certified);
    let s = sweedler();
    let r = compare_products(&free(&s, 1), &free(&s, 1), &s).unwrap();
    assert_eq!((r.dim_product_1, r.dim_product_2, r.predicted), (64, 64, 64));
    assert!(r.isomorphism_found && r.certified);
    assert!(!r.decompositions_hold);
}

#[test]
fn lambda_prime_is_an_involution() {
    let s = sweedler();
    let (b, n0, p0) = (s.space(), Space::numbered("n", 2), Space::numbered("p", 3));
    let l = lambda_prime(b, &n0, &p0);
    let back = lambda_prime(b, &p0, &n0);
    assert_eq!(back.compose(&l).unwrap().with_spaces(l.domain(), l.domain()).unwrap(), LinearMap::identity(l.domain()));
    // (b⊗n₀)⊗(p₀⊗b′) with b = x, n₀ = 1, p₀ = 2, b′ = g goes to (g⊗p₀)⊗(n₀⊗x)
    let src = ((2 * 2 + 1) * 3 + 2) * 4 + 1;
    let dst = ((3 + 2) * 2 + 1) * 4 + 2;
    assert_eq!(l.col(src), &SVec::unit(dst));
    let r = braiding(&free(&s, 1), &free(&s, 1), &s).unwrap().report;
    assert!(r.lambda_prime_involution);
}

#[test]
fn braiding_over_the_ground_field() {
    let q = trivial();
    let br = braiding(&free(&q, 2), &free(&q, 3), &q).unwrap();
    let r = br.report;
    assert!(r.available && r.descends == Some(true));
    assert_eq!(r.lambda_invertible, Some(true));
    assert_eq!(r.lambda_squared_identity, Some(true));
}

#[test]
fn free_modules_fall_back_to_their_generators() {
    let z2 = group_algebra(2).unwrap();
    let f = free(&z2, 1);
    let d = tetra_decomposition_report(&f, &z2).unwrap();
    assert!(!d.report.recipe_inverts_phi);
    let g = generator_factorization(&f, &d).unwrap();
    assert_eq!(g.coinvariants.space.dim(), 1);
    assert!(g.phi.compose(&g.beta).unwrap().same_entries(&f.identity()));
    let r = braiding(&f, &f, &z2).unwrap().report;
    assert!(r.available && r.lambda_prime_involution && r.descends == Some(true));
    assert_eq!(r.factorization, vec!["generators", "generators"]);
    assert_eq!(r.lambda_invertible, Some(true));
    // the regular module has M₀ = ℚ·1, so B⊗M₀⊗B is too big
    let reg = regular_tetramodule(&z2.bialgebra);
    let d = tetra_decomposition_report(&reg, &z2).unwrap();
    assert!(generator_factorization(&reg, &d).is_none());
    let r = braiding(&reg, &f, &z2).unwrap().report;
    assert!(!r.available && r.reason.is_some());
}

#[test]
fn eckmann_hilton_on_free_modules() {
    let z2 = group_algebra(2).unwrap();
    let f = free(&z2, 1);
    let (eta, r) = eckmann_hilton(&f, &f, &f, &f, &z2).unwrap();
    assert!(r.available && r.invertible && r.carriers_bijective);
    // 2·1·2·1·2·1·2·1·2
    assert_eq!((r.dim_source, r.rank), (32, 32));
    assert_eq!(r.literal_well_defined, Some(false));
    assert!(r.tetramodule_map);
    assert_eq!(eta.unwrap().ncols(), 32);
    let reg = regular_tetramodule(&z2.bialgebra);
    let (eta, r) = eckmann_hilton(&f, &reg, &f, &f, &z2).unwrap();
    assert!(eta.is_none() && !r.available);
}

#[test]
fn eckmann_hilton_over_the_ground_field() {
    let q = trivial();
    let u = regular_tetramodule(&q.bialgebra);
    let (eta, r) = eckmann_hilton(&u, &u, &u, &u, &q).unwrap();
    assert!(r.invertible && r.tetramodule_map);
    assert_eq!(r.literal_well_defined, Some(true));
    assert_eq!(eta.unwrap().to_dense(), vec![vec![dgq::linalg::int(1)]]);
    let z = free(&q, 0);
    let (eta, r) = eckmann_hilton(&u, &z, &u, &u, &q).unwrap();
    assert!(r.available && r.invertible && r.dim_source == 0 && eta.unwrap().is_zero());
    let (_, r) = eckmann_hilton(&free(&q, 2), &free(&q, 1), &free(&q, 3), &free(&q, 1), &q).unwrap();
    assert!(r.invertible && r.dim_source == 6);
}

fn multiplication(h: &HopfAlgebra) -> (Tetramodule, Tetramodule, LinearMap) {
    let b = &h.bialgebra;
    let f = free(h, 1);
    let reg = regular_tetramodule(b);
    let nb = b.dim();
    let mult = LinearMap::from_fn(f.space(), reg.space(), |j| b.mul(&SVec::unit(j / nb), &SVec::unit(j % nb)));
    (f, reg, mult)
}

#[test]
fn exactness_on_split_sequences() {
    for (name, h) in small_corpus() {
        let ses = split_sequence(&free(&h, 1), &regular_tetramodule(&h.bialgebra)).unwrap();
        assert!(ses.splitting().unwrap().is_some());
        for v in [Variant::One, Variant::Two] {
            let r = exactness_check(&free(&h, 1), &ses, v).unwrap();
            assert!(r.passed, "{name} {v}: {r:?}");
        }
    }
}

#[test]
fn exactness_on_a_non_split_sequence() {
    let s = sweedler();
    let (f, reg, mult) = multiplication(&s);
    let ses = kernel_sequence(&f, &reg, &mult).unwrap();
    assert!(ses.defects().is_empty());
    assert_eq!(ses.left.dim(), 12);
    assert!(ses.splitting().unwrap().is_none());
    for v in [Variant::One, Variant::Two] {
        let r = exactness_check(&free(&s, 1), &ses, v).unwrap();
        assert!(r.passed, "{v}: {r:?}");
    }
}

#[test]
fn bad_sequences_are_rejected() {
    let h = group_algebra(2).unwrap();
    let mut ses = split_sequence(&free(&h, 1), &regular_tetramodule(&h.bialgebra)).unwrap();
    ses.g = LinearMap::zero(ses.middle.space(), ses.right.space());
    let err = exactness_check(&free(&h, 1), &ses, Variant::One).unwrap_err();
    assert!(err.to_string().contains("rank"));
    // a linear but non-equivariant map
    let (f, reg, _) = multiplication(&h);
    let proj = LinearMap::from_fn(f.space(), reg.space(), |j| if j % 2 == 0 { SVec::unit(j / 2 % 2) } else { SVec::new() });
    let bad = split_sequence(&f, &reg).map(|mut s| {
        s.g = proj.with_spaces(f.space(), reg.space()).unwrap().compose(&LinearMap::from_fn(s.middle.space(), f.space(), |j| if j < 4 { SVec::unit(j) } else { SVec::new() })).unwrap();
        s
    });
    assert!(!bad.unwrap().defects().is_empty());
}
