use dgq::hopf::{
    builtin, group_algebra, opposite, random_basis_change, sweedler, tensor_hopf, trivial, validate_bialgebra,
    validate_hopf, Bialgebra, HopfAlgebra, HopfJson,
};
use dgq::linalg::scalar::int;
use dgq::linalg::{LinearMap, SVec, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Plain nested-array structure constants.
struct Tables {
    n: usize,
    m: Vec<Vec<Vec<Scalar>>>,     // m[i][j][k]
    delta: Vec<Vec<Vec<Scalar>>>, // delta[i][j][k]
    unit: Vec<Scalar>,
    counit: Vec<Scalar>,
    s: Vec<Vec<Scalar>>, // s[i][k]: S(e_i) ∋ s[i][k] e_k
}

fn tables(h: &HopfAlgebra) -> Tables {
    let b = &h.bialgebra;
    let n = b.dim();
    let z = || int(0);
    let mut m = vec![vec![vec![z(); n]; n]; n];
    let mut delta = vec![vec![vec![z(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                m[i][j][k] = b.m().get(k, i * n + j);
                delta[i][j][k] = b.delta().get(j * n + k, i);
            }
        }
    }
    let s = (0..n).map(|i| (0..n).map(|k| h.antipode.get(k, i)).collect()).collect();
    Tables {
        n,
        m,
        delta,
        unit: b.unit().to_dense(n),
        counit: (0..n).map(|j| b.counit().get(0, j)).collect(),
        s,
    }
}

/// Element-wise check of the bialgebra and antipode identities on basis elements.
fn oracle_ok(t: &Tables) -> bool {
    let n = t.n;
    let z = || int(0);
    let mul = |a: &[Scalar], b: &[Scalar]| {
        let mut out = vec![z(); n];
        for i in 0..n {
            for j in 0..n {
                if a[i] == z() || b[j] == z() {
                    continue;
                }
                for k in 0..n {
                    out[k] += &a[i] * &b[j] * &t.m[i][j][k];
                }
            }
        }
        out
    };
    let e = |i: usize| (0..n).map(|k| if k == i { int(1) } else { z() }).collect::<Vec<_>>();
    // associativity and unit
    for i in 0..n {
        if mul(&t.unit, &e(i)) != e(i) || mul(&e(i), &t.unit) != e(i) {
            return false;
        }
        for j in 0..n {
            for k in 0..n {
                if mul(&mul(&e(i), &e(j)), &e(k)) != mul(&e(i), &mul(&e(j), &e(k))) {
                    return false;
                }
            }
        }
    }
    // coassociativity, counit: compare (Δ⊗1)Δ and (1⊗Δ)Δ as 3-tensors
    for i in 0..n {
        let mut l = vec![z(); n * n * n];
        let mut r = vec![z(); n * n * n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for x in 0..n {
                        l[(a * n + b) * n + c] += &t.delta[i][x][c] * &t.delta[x][a][b];
                        r[(a * n + b) * n + c] += &t.delta[i][a][x] * &t.delta[x][b][c];
                    }
                }
            }
        }
        if l != r {
            return false;
        }
        for a in 0..n {
            let mut left = z();
            let mut right = z();
            for x in 0..n {
                left += &t.counit[x] * &t.delta[i][x][a];
                right += &t.counit[x] * &t.delta[i][a][x];
            }
            let want = if a == i { int(1) } else { z() };
            if left != want || right != want {
                return false;
            }
        }
    }
    // Δ(e_i e_j) = Δ(e_i) Δ(e_j), ε multiplicative
    for i in 0..n {
        for j in 0..n {
            let p = mul(&e(i), &e(j));
            for a in 0..n {
                for b in 0..n {
                    let mut lhs = z();
                    for k in 0..n {
                        lhs += &p[k] * &t.delta[k][a][b];
                    }
                    let mut rhs = z();
                    for a1 in 0..n {
                        for b1 in 0..n {
                            for a2 in 0..n {
                                for b2 in 0..n {
                                    let c = &t.delta[i][a1][b1] * &t.delta[j][a2][b2];
                                    if c != z() {
                                        rhs += c * &t.m[a1][a2][a] * &t.m[b1][b2][b];
                                    }
                                }
                            }
                        }
                    }
                    if lhs != rhs {
                        return false;
                    }
                }
            }
            let eps_p: Scalar = (0..n).map(|k| &p[k] * &t.counit[k]).sum();
            if eps_p != &t.counit[i] * &t.counit[j] {
                return false;
            }
        }
    }
    // antipode: Σ x₁ S(x₂) = Σ S(x₁) x₂ = ε(x)1
    for i in 0..n {
        let mut l = vec![z(); n];
        let mut r = vec![z(); n];
        for a in 0..n {
            for b in 0..n {
                let c = &t.delta[i][a][b];
                if *c == z() {
                    continue;
                }
                let sl = mul(&e(a), &t.s[b]);
                let sr = mul(&t.s[a], &e(b));
                for k in 0..n {
                    l[k] += c * &sl[k];
                    r[k] += c * &sr[k];
                }
            }
        }
        let want: Vec<Scalar> = t.unit.iter().map(|u| u * &t.counit[i]).collect();
        if l != want || r != want {
            return false;
        }
    }
    true
}

fn corpus() -> Vec<(&'static str, HopfAlgebra)> {
    vec![
        ("Q", trivial()),
        ("Z2", group_algebra(2).unwrap()),
        ("Z3", group_algebra(3).unwrap()),
        ("sweedler", sweedler()),
        ("sweedler⊗sweedler^op", tensor_hopf(&sweedler(), &opposite(&sweedler()))),
    ]
}

#[test]
fn builtins_pass_every_axiom() {
    for (name, h) in corpus() {
        assert!(validate_bialgebra(&h.bialgebra).is_empty(), "{name}");
        assert!(validate_hopf(&h).is_empty(), "{name}: {:?}", validate_hopf(&h));
        // the element-wise oracle is O(n⁸); keep it to the small algebras
        if h.dim() <= 4 {
            assert!(oracle_ok(&tables(&h)), "{name}");
        }
    }
}

#[test]
fn validator_agrees_with_elementwise_oracle_on_perturbations() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let bases = [group_algebra(2).unwrap(), sweedler(), group_algebra(3).unwrap()];
    let mut broken = 0;
    for round in 0..60 {
        let h = &bases[round % bases.len()];
        let j = HopfJson::from(h);
        let mut j2 = j.clone();
        let n = j.dim;
        match rng.gen_range(0..4) {
            0 => {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                j2.m.push((a, b, c, "1".into()));
            }
            1 => {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                j2.delta.push((a, b, c, "-1".into()));
            }
            2 => {
                let (r, c) = (rng.gen_range(0..n), rng.gen_range(0..n));
                let rows = j2.antipode.as_mut().unwrap();
                rows[r][c] = if rows[r][c] == "0" { "1".into() } else { "0".into() };
            }
            _ => {
                let k = rng.gen_range(0..n);
                j2.counit[k] = if j2.counit[k] == "0" { "1".into() } else { "0".into() };
            }
        }
        let h2 = j2.to_hopf().unwrap();
        let matrix_ok = validate_hopf(&h2).is_empty();
        assert_eq!(matrix_ok, oracle_ok(&tables(&h2)), "round {round}");
        broken += usize::from(!matrix_ok);
    }
    assert!(broken > 30);
}

#[test]
fn sweedler_antipode_has_order_four() {
    let h = sweedler();
    let s2 = h.antipode_squared();
    let x = SVec::unit(2);
    assert_eq!(s2.apply(&x), x.scale(&int(-1)));
    assert_eq!(s2.compose(&s2).unwrap(), LinearMap::identity(h.space()));
    let z2 = builtin("group_algebra(2)").unwrap();
    assert_eq!(z2.antipode, LinearMap::identity(z2.space()));
    assert_eq!(builtin("trivial").unwrap().dim(), 1);
    assert!(builtin("mystery").is_err());
}

#[test]
fn wrong_antipode_is_reported() {
    let mut h = sweedler();
    h.antipode = LinearMap::identity(h.space());
    let failures = validate_hopf(&h);
    assert!(failures.iter().any(|f| f.axiom.starts_with("antipode")));
}

#[test]
fn opposites_and_tensor_products() {
    let s = sweedler();
    assert_eq!(opposite(&opposite(&s)), s);
    let z3 = group_algebra(3).unwrap();
    assert_eq!(opposite(&z3), z3);
    assert!(validate_hopf(&opposite(&s)).is_empty());
    assert_eq!(opposite(&s).antipode, s.antipode);
    let d = tensor_hopf(&s, &opposite(&s));
    assert_eq!(d.dim(), 16);
    let q_s = tensor_hopf(&trivial(), &s);
    assert!(q_s.bialgebra.m().same_entries(s.bialgebra.m()));
    assert!(q_s.bialgebra.delta().same_entries(s.bialgebra.delta()));
    assert!(q_s.antipode.same_entries(&s.antipode));
    for (_, a) in corpus() {
        for (_, b) in corpus().into_iter().take(4) {
            assert_eq!(tensor_hopf(&a, &b).dim(), a.dim() * b.dim());
        }
    }
}

#[test]
fn conjugation_preserves_validity() {
    for (name, h) in corpus().into_iter().take(4) {
        for seed in 0..3 {
            let p = random_basis_change(h.space(), seed);
            let c = h.conjugate(&p).unwrap();
            assert!(validate_hopf(&c).is_empty(), "{name} seed {seed}");
        }
    }
}

#[test]
fn json_round_trip() {
    for (name, h) in corpus() {
        let text = serde_json::to_string(&HopfJson::from(&h)).unwrap();
        let back: HopfJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_hopf().unwrap(), h, "{name}");
    }
    let bad = r#"{"dim": 1, "labels": ["1"], "m": [[0,0,0,"x"]], "delta": [], "unit": ["1"], "counit": ["1"]}"#;
    let err = serde_json::from_str::<HopfJson>(bad).unwrap().to_bialgebra().unwrap_err();
    assert!(err.to_string().contains("m[0]"));
}

#[test]
fn bialgebra_without_antipode_still_validates() {
    let b: Bialgebra = sweedler().bialgebra;
    assert!(b.validate().is_empty());
}
