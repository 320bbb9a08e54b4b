//! Acceptance run: one line per criterion with its verdict and wall time.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use dgq::cochain::{lambda_complex, CochainComplex};
use dgq::dgcat::{
    colax_beta, colax_coassociativity, generalized_quotient, hom_basis, psi_comparison, quasi_equivalence_check,
    two_object_example, two_object_pcat, validate_dg_category, DgCat, DgCategory, QuotientOptions,
};
use dgq::gscomplex::{deformation_oracle, gs_cohomology, GsBicomplex};
use dgq::hopf::{builtin, random_basis_change, validate_bialgebra, validate_hopf, HopfAlgebra};
use dgq::linalg::{rank_of, LinearMap, Scalar, Space};
use dgq::monoidal2::{
    braiding, compare_products, eckmann_hilton, exactness_check, lambda_prime, multiplication_sequence, split_sequence,
    Variant,
};
use dgq::simplicial::{
    absorbing_monoidal, chaotic_monoidal, deligne_pipeline, fint_homset, kld_desk_check, leinster_nerve, trivial_monoidal,
    validate_leinster, Classification, DgAlgebra, PipelineOptions,
};
use dgq::tetra::{
    free_hopf_module, free_tetramodule, fundamental_decomposition, regular_hopf_module, regular_tetramodule,
    two_sided_coinvariants, Tetramodule,
};

fn integer(s: &Scalar) -> i128 {
    assert!(s.is_integer(), "non-integer entry {s}");
    i128::try_from(s.to_integer()).expect("entry fits in i128")
}

fn dense(m: &LinearMap) -> Vec<Vec<i128>> {
    m.to_dense().iter().map(|r| r.iter().map(integer).collect()).collect()
}

/// `dim H^n` from integer ranks of the differentials, independent of the
/// library's elimination.
fn oracle_cohomology(c: &CochainComplex, n: i64) -> usize {
    let r = |k: i64| if c.dim(k) == 0 || c.dim(k + 1) == 0 { 0 } else { common::int_rank(dense(&c.d(k))) };
    c.dim(n) - r(n) - r(n - 1)
}

/// `Hom(a, b)` modulo composites through the killed objects, for a category
/// concentrated in degree 0.
fn verdier_h0(c: &DgCategory, killed: &[usize], a: usize, b: usize) -> usize {
    let mut through = Vec::new();
    for &k in killed {
        for f in hom_basis(c, a, k) {
            for g in hom_basis(c, k, b) {
                through.push(c.compose(a, k, b, g, f));
            }
        }
    }
    c.hom(a, b).dim(0) - rank_of(&through)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Monotone maps `{0..m} -> {0..n}` fixing both endpoints, by enumeration.
fn interval_maps(m: usize, n: usize) -> usize {
    (0..(n + 1).pow(m as u32 + 1))
        .filter(|&code| {
            let v: Vec<usize> = (0..=m).map(|i| code / (n + 1).pow(i as u32) % (n + 1)).collect();
            v[0] == 0 && v[m] == n && v.windows(2).all(|w| w[0] <= w[1])
        })
        .count()
}

fn hopf(name: &str) -> HopfAlgebra {
    builtin(name).unwrap()
}

fn free(h: &HopfAlgebra, k: usize) -> Tetramodule {
    free_tetramodule(&h.bialgebra, &Space::numbered("w", k))
}

fn c1_lambda_acyclic() -> String {
    for n in 1..=8 {
        let c = lambda_complex(n).unwrap();
        assert_eq!(c.total_dim(), 1 << n);
        for (&k, _) in c.components() {
            assert_eq!(c.cohomology_dim(k), 0, "Λ({n}) degree {k}");
            assert_eq!(oracle_cohomology(&c, k), 0, "Λ({n}) degree {k}, integer oracle");
        }
    }
    "n = 1..8".into()
}

fn c2_drinfeld_kill() -> String {
    let c = two_object_example();
    let q = generalized_quotient(&two_object_pcat(1), QuotientOptions::window(-6, 0)).unwrap();
    assert!(validate_dg_category(&q).is_empty());
    for n in -6..=0 {
        assert_eq!(q.hom(1, 1).cohomology_dim(n), 0, "Y,Y degree {n}");
        assert_eq!(q.hom(0, 1).cohomology_dim(n), 0, "X,Y degree {n}");
        assert_eq!(q.hom(0, 0).cohomology_dim(n), usize::from(n == 0), "X,X degree {n}");
        for (a, b) in [(0, 0), (0, 1), (1, 1)] {
            assert_eq!(q.hom(a, b).cohomology_dim(n), oracle_cohomology(q.hom(a, b), n), "({a},{b}) degree {n}");
        }
    }
    for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        assert_eq!(q.hom(a, b).cohomology_dim(0), verdier_h0(&c, &[1], a, b), "H⁰ ({a},{b})");
    }
    format!("H⁰ End(X) = {}, window -6..0", q.hom(0, 0).cohomology_dim(0))
}

fn c3_psi() -> String {
    let cmp = psi_comparison(&two_object_pcat(2), (-5, 0)).unwrap();
    assert!(cmp.report.homs.iter().all(|h| h.report.is_quasi_iso));
    assert!(cmp.report.passed);
    for x in 0..2 {
        for y in 0..2 {
            for n in -5..=0 {
                let (s, t) = (cmp.source.hom(x, y), cmp.target.hom(x, y));
                assert_eq!(oracle_cohomology(s, n), oracle_cohomology(t, n), "({x},{y}) degree {n}");
            }
        }
    }
    format!("{} Hom pairs quasi-isomorphic", cmp.report.homs.len())
}

fn c4_colax() -> String {
    let x = two_object_pcat(1);
    let beta = colax_beta(&x, &x, QuotientOptions::window(-4, 0)).unwrap();
    let report = quasi_equivalence_check(beta.source.as_ref(), beta.target.as_ref(), &beta.functor);
    assert!(report.passed, "{report:?}");
    let co = colax_coassociativity(&x, &x, &x, QuotientOptions::window(-2, 0)).unwrap();
    assert!(co.passed && co.mismatched_homs.is_empty(), "{co:?}");
    format!("β quasi-equivalence in -4..0, coassociative on {} objects", co.objects)
}

fn c5_hopf_axioms() -> String {
    for name in ["trivial", "z2", "z3", "sweedler", "sweedler_double"] {
        let h = hopf(name);
        assert!(validate_bialgebra(&h.bialgebra).is_empty(), "{name}");
        assert!(validate_hopf(&h).is_empty(), "{name}");
    }
    // S²(x) = −x straight from the antipode matrix
    let h = hopf("sweedler");
    let x = h.space().labels().iter().position(|l| l == "x").expect("sweedler has x");
    let s = dense(&h.antipode);
    let n = s.len();
    let s2: Vec<i128> = (0..n).map(|i| (0..n).map(|k| s[i][k] * s[k][x]).sum()).collect();
    let want: Vec<i128> = (0..n).map(|i| if i == x { -1 } else { 0 }).collect();
    assert_eq!(s2, want);
    "5 algebras, S²(x) = −x".into()
}

fn c6_fundamental_theorem() -> String {
    let mut checked = 0;
    for name in ["trivial", "z2", "z3", "sweedler", "sweedler_double"] {
        let h = hopf(name);
        let mut modules = vec![regular_hopf_module(&h)];
        modules.extend((1..=2).map(|k| free_hopf_module(&h, &Space::numbered("w", k))));
        for m in &modules {
            let d = fundamental_decomposition(m).unwrap();
            let r = &d.report;
            assert!(r.alpha_beta_identity && r.beta_alpha_identity, "{name}: {r:?}");
            assert_eq!(r.dim_base * r.dim_coinvariants, r.dim_module, "{name}");
            checked += 1;
        }
    }
    format!("{checked} Hopf modules")
}

fn c7_products() -> String {
    let h = hopf("sweedler");
    let nb = h.bialgebra.dim();
    for (a, b) in [(1, 1), (1, 2), (2, 1)] {
        let (m, n) = (free(&h, a), free(&h, b));
        let p = compare_products(&m, &n, &h).unwrap();
        // both modules are free of rank dim M / dim B on the right
        assert_eq!(p.dim_product_1, m.dim() * n.dim() / nb);
        assert_eq!(p.dim_product_1, p.dim_product_2);
        // M₀ is spanned by g^k⊗w⊗g^{−k} over the two group-likes 1, g
        assert_eq!((p.dim_m0, p.dim_n0), (2 * a, 2 * b));
        assert_eq!(two_sided_coinvariants(&m).space.dim(), 2 * a);
        assert_eq!(p.dim_product_1, 16 * p.dim_m0 * p.dim_n0);
        assert!(p.prediction_holds && p.isomorphism_found, "{a},{b}: {p:?}");
    }
    let z2 = hopf("z2");
    let r = regular_tetramodule(&z2.bialgebra);
    let p = compare_products(&r, &r, &z2).unwrap();
    assert_eq!((p.dim_product_1, p.dim_product_2, p.predicted), (2, 2, 4));
    assert!(p.products_agree && !p.prediction_holds);
    "free over sweedler 64/128 = 16·M₀·N₀; regular over ℚ[ℤ/2] records 2 ≠ 4".into()
}

fn c8_braiding() -> String {
    let mut ranks = Vec::new();
    for name in ["z2", "sweedler"] {
        let h = hopf(name);
        for (n0, p0) in [(1, 1), (2, 3)] {
            let (a, b) = (Space::numbered("n", n0), Space::numbered("p", p0));
            let l = lambda_prime(h.space(), &a, &b);
            let back = lambda_prime(h.space(), &b, &a);
            assert!(back.compose(&l).unwrap().same_entries(&LinearMap::identity(l.domain())), "{name}");
        }
        let f = free(&h, 1);
        let br = braiding(&f, &f, &h).unwrap().report;
        assert!(br.lambda_prime_involution && br.available, "{name}: {br:?}");
        let (eta, r) = eckmann_hilton(&f, &f, &f, &f, &h).unwrap();
        // the carrier B⊗W⊗B⊗W⊗B⊗W⊗B⊗W⊗B with every W one-dimensional
        let dim = h.bialgebra.dim().pow(5);
        assert_eq!((r.dim_source, r.dim_target), (dim, dim), "{name}");
        assert!(r.invertible && r.rank == dim, "{name}: {r:?}");
        assert_eq!(dgq::linalg::rank(&eta.unwrap()), dim);
        ranks.push(format!("{name} {}/{dim}", r.rank));
    }
    format!("η rank {}", ranks.join(", "))
}

fn c9_exactness() -> String {
    let h = hopf("sweedler");
    let n = free(&h, 1);
    let split = split_sequence(&free(&h, 1), &free(&h, 2)).unwrap();
    let non_split = multiplication_sequence(&h.bialgebra).unwrap();
    assert!(split.splitting().unwrap().is_some());
    assert!(non_split.splitting().unwrap().is_none());
    for (label, ses) in [("split", &split), ("non-split", &non_split)] {
        for v in [Variant::One, Variant::Two] {
            let r = exactness_check(&n, ses, v).unwrap();
            assert!(r.passed, "{label} {v}: {r:?}");
        }
    }
    "split and non-split, both variants".into()
}

fn c10_gs_oracle() -> String {
    let mut out = Vec::new();
    for name in ["trivial", "z2", "z3", "sweedler"] {
        let h = hopf(name);
        let start = Instant::now();
        let g = GsBicomplex::new(&h.bialgebra, 4, 4).unwrap();
        let c = gs_cohomology(&g, false);
        let oracle = deformation_oracle(&h.bialgebra);
        assert_eq!(c.dims[&2], oracle.dim, "{name}");
        out.push(format!("{name} H²={} in {:.1}s", c.dims[&2], start.elapsed().as_secs_f64()));
    }
    out.join(", ")
}

fn c11_gs_invariance() -> String {
    let h = hopf("z2");
    let base = gs_cohomology(&GsBicomplex::new(&h.bialgebra, 4, 4).unwrap(), false).dims;
    for seed in [1, 2, 3] {
        let moved = h.bialgebra.conjugate(&random_basis_change(h.space(), seed)).unwrap();
        assert_eq!(gs_cohomology(&GsBicomplex::new(&moved, 4, 4).unwrap(), false).dims, base, "seed {seed}");
    }
    format!("ℚ[ℤ/2] seeds 1..3, dims {base:?}")
}

fn c12_nerve() -> String {
    let levels = 4;
    for m in 1..=levels {
        for n in 0..=levels {
            assert_eq!(fint_homset(m, n).len(), binomial(n + m - 1, m - 1), "[{m}] -> [{n}]");
        }
    }
    for m in 0..=levels {
        for n in 0..=levels {
            assert_eq!(fint_homset(m, n).len(), interval_maps(m, n), "[{m}] -> [{n}]");
        }
    }
    let p = leinster_nerve(&DgAlgebra::dual_numbers(), levels).unwrap();
    let r = validate_leinster(&p, (-2, 2));
    assert!(r.functoriality.is_empty(), "{:?}", r.functoriality);
    let mut pairs = 0;
    for a in 0..=levels {
        for b in 0..=levels {
            for c in 0..=levels {
                pairs += interval_maps(a, b) * interval_maps(b, c);
            }
        }
    }
    assert_eq!(r.composable_pairs, pairs);
    format!("{pairs} composable pairs")
}

fn c13_pipeline() -> String {
    let opts = PipelineOptions { nmax: 3, window: (-6, 0), level_cap: None };
    for (name, m, ideal) in [("trivial", trivial_monoidal(), vec![]), ("absorbing", absorbing_monoidal(), vec![1])] {
        let out = deligne_pipeline(&m, &ideal, opts).unwrap();
        let r = &out.report;
        assert!(r.colax.iter().all(|v| v.report.is_quasi_iso), "{name}");
        assert!(r.functoriality.is_empty() && r.multiplicativity.is_empty() && r.coherence.is_empty(), "{name}");
        assert_eq!(r.classification, Classification::Monoid, "{name}");
    }
    let chaotic = deligne_pipeline(&chaotic_monoidal(), &[1], PipelineOptions { window: (-2, 0), ..opts }).unwrap();
    assert_eq!(chaotic.report.classification, Classification::Monoid);

    let oracle = common::truncated_hochschild(&common::dual_numbers_table(), 4);
    let k = kld_desk_check(4, (0, 4), 1).unwrap();
    for n in 0..=4 {
        assert_eq!(k.to_diagonal[&n], oracle[n as usize], "Hom(e, A) degree {n}");
    }
    for n in 1..=4 {
        assert_eq!(k.cohomology[&n], oracle[n as usize], "End(e) degree {n}");
    }
    format!("monoids; HH(ℚ[t]/t²) = {:?} in 0..4", &oracle[..5])
}

type Criterion = (&'static str, fn() -> String, Option<u64>);

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("1 Λ-acyclicity", c1_lambda_acyclic, Some(5)),
        ("2 Drinfeld quotient kill-test", c2_drinfeld_kill, Some(5)),
        ("3 Ψ comparison", c3_psi, None),
        ("4 colax β", c4_colax, None),
        ("5 Hopf axioms", c5_hopf_axioms, Some(10)),
        ("6 fundamental theorem", c6_fundamental_theorem, None),
        ("7 tetramodule products", c7_products, None),
        ("8 braiding and η", c8_braiding, Some(60)),
        ("9 exactness", c9_exactness, None),
        ("10 GS oracle agreement", c10_gs_oracle, None),
        ("11 GS basis invariance", c11_gs_invariance, None),
        ("12 nerve functoriality", c12_nerve, Some(10)),
        ("13 pipeline and Hochschild check", c13_pipeline, None),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    let total = Instant::now();
    for (name, run, budget) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run));
        let took = start.elapsed();
        let over = budget.filter(|&b| took > Duration::from_secs(b));
        let (verdict, details) = match (result, over) {
            (Ok(d), None) => ("PASS", d),
            (Ok(d), Some(b)) => ("FAIL", format!("{d}; over the {b} s budget")),
            (Err(e), _) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panicked".into());
                ("FAIL", msg)
            }
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!("{verdict}  {name:<34} {:>8.2}s  {details}", took.as_secs_f64());
    }
    println!("{failed} failed, total {:.1}s", total.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
