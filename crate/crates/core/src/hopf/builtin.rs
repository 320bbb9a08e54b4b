use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::algebra::{Bialgebra, HopfAlgebra};
use crate::error::Error;
use crate::linalg::scalar::{int, one};
use crate::linalg::{LinearMap, SVec, Space};

/// Assembles a Hopf algebra from basis-level rules.
fn from_rules(
    labels: Vec<String>,
    mul: impl Fn(usize, usize) -> SVec,
    delta: impl Fn(usize) -> SVec,
    counit: impl Fn(usize) -> i64,
    antipode: impl Fn(usize) -> SVec,
) -> HopfAlgebra {
    let space = Space::new(labels).expect("distinct labels");
    let n = space.dim();
    let bb = space.tensor(&space);
    let m = LinearMap::from_fn(&bb, &space, |k| mul(k / n, k % n));
    let d = LinearMap::from_fn(&space, &bb, delta);
    let eps = LinearMap::from_fn(&space, &Space::ground(), |i| SVec::from_pairs([(0, int(counit(i)))]));
    let s = LinearMap::from_fn(&space, &space, antipode);
    let b = Bialgebra::new(space, m, SVec::unit(0), d, eps).expect("shapes");
    HopfAlgebra::new(b, s).expect("shapes")
}

/// The ground field `ℚ`.
pub fn trivial() -> HopfAlgebra {
    group_algebra(1).expect("n = 1")
}

/// `ℚ[ℤ/n]` with basis `1, g, …, g^{n−1}`, `Δg = g⊗g`, `S(g) = g^{−1}`.
pub fn group_algebra(n: usize) -> Result<HopfAlgebra, Error> {
    if n == 0 {
        return Err(Error::Invalid("group order must be at least 1".into()));
    }
    let labels = (0..n)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{k}"),
        })
        .collect();
    Ok(from_rules(
        labels,
        |a, b| SVec::unit((a + b) % n),
        |a| SVec::unit(a * n + a),
        |_| 1,
        |a| SVec::unit((n - a) % n),
    ))
}

/// Sweedler's algebra: basis `1, g, x, gx`, `g² = 1`, `x² = 0`, `xg = −gx`,
/// `Δg = g⊗g`, `Δx = x⊗1 + g⊗x`, `ε(g) = 1`, `ε(x) = 0`, `S(g) = g`, `S(x) = −gx`.
pub fn sweedler() -> HopfAlgebra {
    // basis index 2b + a ↔ g^a x^b
    let idx = |a: usize, b: usize| 2 * b + a;
    let split = |i: usize| (i % 2, i / 2);
    let mul = move |i: usize, j: usize| {
        let ((a, b), (c, d)) = (split(i), split(j));
        if b + d > 1 {
            return SVec::new();
        }
        let sign = if b * c % 2 == 1 { -1 } else { 1 };
        SVec::from_pairs([(idx((a + c) % 2, b + d), int(sign))])
    };
    let pair = |l: usize, r: usize| l * 4 + r;
    let delta = move |i: usize| match i {
        0 => SVec::unit(pair(0, 0)),
        1 => SVec::unit(pair(1, 1)),
        // Δx = x⊗1 + g⊗x
        2 => SVec::from_pairs([(pair(2, 0), one()), (pair(1, 2), one())]),
        // Δ(gx) = gx⊗g + 1⊗gx
        _ => SVec::from_pairs([(pair(3, 1), one()), (pair(0, 3), one())]),
    };
    let antipode = |i: usize| match i {
        0 => SVec::unit(0),
        1 => SVec::unit(1),
        2 => SVec::from_pairs([(3, int(-1))]),
        _ => SVec::unit(2),
    };
    from_rules(
        ["1", "g", "x", "gx"].iter().map(|s| s.to_string()).collect(),
        mul,
        delta,
        |i| if i < 2 { 1 } else { 0 },
        antipode,
    )
}

/// Looks up `trivial`, `sweedler` or `group_algebra(n)` / `z<n>`.
pub fn builtin(name: &str) -> Result<HopfAlgebra, Error> {
    let name = name.trim();
    match name {
        "trivial" | "Q" | "ℚ" => return Ok(trivial()),
        "sweedler" => return Ok(sweedler()),
        "sweedler_double" | "sweedler⊗sweedler^op" => return Ok(sweedler().tensor(&sweedler().opposite())),
        _ => {}
    }
    let order = name
        .strip_prefix("group_algebra(")
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| name.strip_prefix("group_algebra:"))
        .or_else(|| name.strip_prefix('z'))
        .or_else(|| name.strip_prefix('Z'));
    match order.map(str::parse::<usize>) {
        Some(Ok(n)) => group_algebra(n),
        _ => Err(Error::Invalid(format!("unknown builtin Hopf algebra '{name}'"))),
    }
}

/// A random invertible change of basis (product of unitriangular matrices
/// with small integer entries), reproducible from the seed.
pub fn random_basis_change(space: &Space, seed: u64) -> LinearMap {
    let n = space.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lower = vec![vec![0i64; n]; n];
    let mut upper = vec![vec![0i64; n]; n];
    for i in 0..n {
        lower[i][i] = 1;
        upper[i][i] = 1;
        for j in 0..i {
            lower[i][j] = rng.gen_range(-2..=2);
            upper[j][i] = rng.gen_range(-2..=2);
        }
    }
    let l = LinearMap::from_int_rows(space, space, &lower).expect("square");
    let u = LinearMap::from_int_rows(space, space, &upper).expect("square");
    l.compose(&u).expect("square")
}
