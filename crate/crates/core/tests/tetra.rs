use dgq::hopf::{builtin, group_algebra, sweedler, trivial, HopfAlgebra};
use dgq::linalg::{image_basis, kernel_basis, rank_of, LinearMap, SVec, Space};
use dgq::tetra::{
    coinvariants, free_hopf_module, free_tetramodule, fundamental_decomposition, left_hopf_module, regular_hopf_module,
    regular_tetramodule, tetra_decomposition_report, tetra_homs, two_sided_coinvariants, validate_tetramodule, BaseRef,
    TetraJson,
};

fn corpus() -> Vec<(&'static str, HopfAlgebra)> {
    vec![
        ("Q", trivial()),
        ("Z2", group_algebra(2).unwrap()),
        ("Z3", group_algebra(3).unwrap()),
        ("sweedler", sweedler()),
    ]
}

/// Index of `x ⊗ w ⊗ y` in `B ⊗ W ⊗ B`.
fn idx(nb: usize, nw: usize, x: usize, w: usize, y: usize) -> usize {
    (x * nw + w) * nb + y
}

fn span_equal(a: &[SVec], b: &[SVec]) -> bool {
    let mut both = a.to_vec();
    both.extend(b.iter().cloned());
    rank_of(a) == rank_of(b) && rank_of(&both) == rank_of(a)
}

#[test]
fn regular_and_free_tetramodules_validate() {
    for (name, h) in corpus() {
        let b = &h.bialgebra;
        assert!(validate_tetramodule(&regular_tetramodule(b)).is_empty(), "{name} regular");
        for nw in 0..3 {
            let f = free_tetramodule(b, &Space::numbered("w", nw));
            assert_eq!(f.dim(), b.dim() * b.dim() * nw);
            assert!(validate_tetramodule(&f).is_empty(), "{name} free {nw}: {:?}", f.validate());
        }
    }
    assert_eq!(regular_tetramodule(&trivial().bialgebra).dim(), 1);
}

#[test]
fn seeded_fault_in_right_coaction_is_reported() {
    let t = regular_tetramodule(&sweedler().bialgebra);
    // Δ_r(x) gains a stray g⊗g term
    let extra = LinearMap::from_fn(t.space(), &t.space().tensor(t.space()), |j| if j == 2 { SVec::unit(5) } else { SVec::new() });
    let bad = t.with_structure(t.ml().clone(), t.mr().clone(), t.dl().clone(), t.dr().add(&extra).unwrap()).unwrap();
    let failures = validate_tetramodule(&bad);
    assert!(failures.iter().any(|f| f.axiom == "right coaction of left action"), "{failures:?}");
}

/// Group-like elements with their inverses, by basis index.
fn group_likes(name: &str, nb: usize) -> Vec<(usize, usize)> {
    match name {
        "sweedler" => vec![(0, 0), (1, 1)],
        _ => (0..nb).map(|k| (k, (nb - k) % nb)).collect(),
    }
}

/// `Δ_ℓ(a⊗w⊗a⁻¹) = aa⁻¹ ⊗ (a⊗w⊗a⁻¹)` for group-like `a`, and these span
/// the two-sided coinvariants of the diagonal free module.
#[test]
fn free_tetramodule_coinvariants_come_from_group_likes() {
    for (name, h) in corpus() {
        let b = &h.bialgebra;
        assert_eq!(b.unit(), &SVec::unit(0));
        let nb = b.dim();
        for nw in 0..3 {
            let f = free_tetramodule(b, &Space::numbered("w", nw));
            let m0 = two_sided_coinvariants(&f);
            let want: Vec<SVec> = group_likes(name, nb)
                .into_iter()
                .flat_map(|(a, inv)| (0..nw).map(move |w| SVec::unit(idx(nb, nw, a, w, inv))))
                .collect();
            assert_eq!(m0.space.dim(), want.len(), "{name}");
            assert!(span_equal(&image_basis(&m0.structure), &want), "{name}");
        }
    }
}

#[test]
fn hopf_module_coinvariants() {
    for (name, h) in corpus() {
        let reg = regular_hopf_module(&h);
        assert!(reg.validate().is_empty(), "{name}");
        let c = coinvariants(&reg);
        assert_eq!(c.space.dim(), 1);
        assert!(span_equal(&image_basis(&c.structure), &[SVec::unit(0)]));
        let free = free_hopf_module(&h, &Space::numbered("w", 2));
        assert!(free.validate().is_empty());
        let c = coinvariants(&free);
        // 1 ⊗ w_k sits at index k
        assert!(span_equal(&image_basis(&c.structure), &[SVec::unit(0), SVec::unit(1)]), "{name}");
        assert_eq!(coinvariants(&free_hopf_module(&h, &Space::zero())).space.dim(), 0);
    }
}

#[test]
fn one_sided_decomposition_is_exact() {
    let mut corpus = corpus();
    corpus.push(("sweedler_double", builtin("sweedler_double").unwrap()));
    for (name, h) in corpus {
        let mut modules = vec![regular_hopf_module(&h)];
        if h.dim() <= 4 {
            modules.extend((0..3).map(|k| free_hopf_module(&h, &Space::numbered("w", k))));
        }
        for m in modules {
            let d = fundamental_decomposition(&m).unwrap();
            assert!(d.report.passed, "{name}: {:?}", d.report);
            assert_eq!(d.alpha.ncols(), h.dim() * d.report.dim_coinvariants);
        }
    }
    let d = fundamental_decomposition(&free_hopf_module(&sweedler(), &Space::numbered("w", 2))).unwrap();
    assert_eq!((d.report.dim_module, d.report.dim_coinvariants), (8, 2));
}

#[test]
fn decomposition_rejects_a_non_hopf_base() {
    let mut h = sweedler();
    h.antipode = LinearMap::identity(h.space());
    assert!(fundamental_decomposition(&regular_hopf_module(&h)).is_err());
}

#[test]
fn left_half_of_a_free_tetramodule_decomposes() {
    for (name, h) in corpus() {
        let f = free_tetramodule(&h.bialgebra, &Space::numbered("w", 1));
        let m = left_hopf_module(&f, &h).unwrap();
        assert!(m.validate().is_empty(), "{name}");
        let d = fundamental_decomposition(&m).unwrap();
        assert!(d.report.passed, "{name}");
        assert_eq!(d.report.dim_coinvariants, h.dim());
    }
}

#[test]
fn two_sided_report_on_regular_module_records_the_rank_defect() {
    let h = group_algebra(2).unwrap();
    let r = tetra_decomposition_report(&regular_tetramodule(&h.bialgebra), &h).unwrap().report;
    assert_eq!((r.dim_coinvariants, r.source_dim, r.rank_phi), (1, 4, 2));
    assert!(!r.phi_injective && r.phi_surjective);
    let q = trivial();
    let r = tetra_decomposition_report(&regular_tetramodule(&q.bialgebra), &q).unwrap().report;
    assert!(r.phi_injective && r.phi_surjective && r.recipe_inverts_phi);
}

/// On `x⊗w⊗y` the two-sided projection is `S(y)⊗w⊗S(x)`, computed here
/// straight from the antipode matrix.
#[test]
fn two_sided_projection_on_free_modules() {
    for (name, h) in corpus() {
        let b = &h.bialgebra;
        let nb = b.dim();
        let f = free_tetramodule(b, &Space::numbered("w", 1));
        let d = tetra_decomposition_report(&f, &h).unwrap();
        assert!(d.report.phi_surjective, "{name}");
        assert_eq!(d.report.phi_injective, nb == 1, "{name}");
        for x in 0..nb {
            for y in 0..nb {
                let mut want = Vec::new();
                for (sy, cy) in h.antipode.col(y).entries() {
                    for (sx, cx) in h.antipode.col(x).entries() {
                        want.push((idx(nb, 1, *sy, 0, *sx), cy * cx));
                    }
                }
                assert_eq!(d.projection.col(idx(nb, 1, x, 0, y)), &SVec::from_pairs(want), "{name} {x} {y}");
            }
        }
        assert_eq!(d.report.recipe_inverts_phi, nb == 1, "{name}");
    }
}

#[test]
fn endomorphisms_of_the_unit_are_scalars() {
    for (name, h) in corpus() {
        let r = regular_tetramodule(&h.bialgebra);
        let homs = tetra_homs(&r, &r).unwrap();
        assert_eq!(homs.len(), 1, "{name}");
        assert!(r.morphism_failures(&homs[0], &r).is_empty());
    }
}

#[test]
fn multiplication_map_and_its_kernel() {
    let h = sweedler();
    let b = &h.bialgebra;
    let f = free_tetramodule(b, &Space::numbered("w", 1));
    let reg = regular_tetramodule(b);
    // x⊗w⊗y ↦ xy
    let mult = LinearMap::from_fn(f.space(), reg.space(), |j| b.mul(&SVec::unit(j / 4), &SVec::unit(j % 4)));
    assert!(f.morphism_failures(&mult, &reg).is_empty());
    let ker = kernel_basis(&mult);
    let inc = LinearMap::new(Space::numbered("k", ker.len()), f.space().clone(), ker).unwrap();
    let k = f.restrict(&inc).unwrap();
    assert_eq!(k.dim(), 12);
    assert!(k.validate().is_empty());
    let sum = f.direct_sum(&reg).unwrap();
    assert!(sum.validate().is_empty());
    let not_closed = LinearMap::new(Space::numbered("k", 1), f.space().clone(), vec![SVec::unit(idx(4, 1, 2, 0, 0))]).unwrap();
    assert!(f.restrict(&not_closed).is_err());
}

#[test]
fn json_round_trip() {
    let h = sweedler();
    let t = free_tetramodule(&h.bialgebra, &Space::numbered("w", 1));
    let j = TetraJson::new(&t, BaseRef::Builtin("sweedler".into()));
    let text = serde_json::to_string(&j).unwrap();
    let back: TetraJson = serde_json::from_str(&text).unwrap();
    let (t2, h2) = back.to_tetramodule().unwrap();
    assert_eq!(t2, t);
    assert_eq!(h2.unwrap(), h);
    let inline = TetraJson::new(&t, BaseRef::Inline(Box::new((&h).into())));
    let (t3, _) = serde_json::from_str::<TetraJson>(&serde_json::to_string(&inline).unwrap())
        .unwrap()
        .to_tetramodule()
        .unwrap();
    assert_eq!(t3, t);
    let mut broken = j.clone();
    broken.ml.push((9, 0, 0, "1".into()));
    assert!(broken.to_tetramodule().unwrap_err().to_string().contains("ml["));
}
