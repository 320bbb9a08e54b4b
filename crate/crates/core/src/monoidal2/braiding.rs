use serde::Serialize;

use super::products::{internal_product, InternalProduct, Variant};
use crate::error::Error;
use crate::hopf::HopfAlgebra;
use crate::linalg::{inverse, permute_factors, rank, LinearMap, Space};
use crate::tetra::{generator_factorization, tetra_decomposition_report, TetraDecomposition, Tetramodule};

/// `λ′: (B⊗N₀)⊗(P₀⊗B) -> (B⊗P₀)⊗(N₀⊗B)`, `(b⊗n₀)⊗(p₀⊗b′) ↦ (b′⊗p₀)⊗(n₀⊗b)`.
pub fn lambda_prime(b: &Space, n0: &Space, p0: &Space) -> LinearMap {
    permute_factors(&[b, n0, p0, b], &[3, 2, 1, 0])
}

#[derive(Clone, Debug, Serialize)]
pub struct BraidingReport {
    pub available: bool,
    pub reason: Option<String>,
    pub dim_n0: usize,
    pub dim_p0: usize,
    /// How `N` and `P` were factorized: `recipe` (the antipode recipe inverts
    /// `Φ`) or `generators` (`Φ` restricted to a subspace of `M₀` is bijective).
    pub factorization: Vec<String>,
    /// `λ′_{PN} ∘ λ′_{NP} = id`.
    pub lambda_prime_involution: bool,
    pub descends: Option<bool>,
    pub lambda_invertible: Option<bool>,
    /// `λ_{PN} ∘ λ_{NP} = id`.
    pub lambda_squared_identity: Option<bool>,
}

pub struct Braiding {
    pub lambda_prime: LinearMap,
    /// `λ: N⊗₁P -> P⊗₁N` with the two products, when available.
    pub lambda: Option<(LinearMap, InternalProduct, InternalProduct)>,
    pub report: BraidingReport,
}

/// `λ = (actions) ∘ λ′ ∘ (β_N ⊗ β_P)` between the ⊗₁ products. The free
/// carrier of `N⊗₁P` is `B⊗N₀⊗B⊗P₀⊗B`; λ′ moves the outer factors and the
/// coinvariants and keeps the middle `B` in place.
fn lambda_between(
    n: &Tetramodule,
    p: &Tetramodule,
    dn: &TetraDecomposition,
    dp: &TetraDecomposition,
    np: &InternalProduct,
    pn: &InternalProduct,
) -> (LinearMap, bool) {
    let b = n.base();
    let (bs, ib) = (b.space(), b.identity());
    let (n0, p0) = (&dn.coinvariants, &dp.coinvariants);
    let merge = LinearMap::kron_all(&[&ib, &LinearMap::identity(&n0.space), b.m(), &LinearMap::identity(&p0.space), &ib]);
    let split = merge.compose_unchecked(&dn.beta.kron(&dp.beta));
    let relation = n.mr().kron(&p.identity()).sub(&n.identity().kron(p.ml())).expect("same shape");
    let descends = split.compose_unchecked(&relation).is_zero();
    let step1 = split.compose_unchecked(&np.presentation.splitting);
    let step2 = permute_factors(&[bs, &n0.space, bs, &p0.space, bs], &[4, 3, 2, 1, 0]);
    // n₀ ⊗ b ↦ n₀·b
    let right_act = n.mr().compose_unchecked(&n0.structure.kron(&ib));
    let step3 = pn.presentation.structure.compose_unchecked(&dp.phi.kron(&right_act));
    (step3.compose_unchecked(&step2).compose_unchecked(&step1), descends)
}

/// The recipe decomposition when it inverts `Φ`, otherwise a factorization
/// through generators.
fn factorize(t: &Tetramodule, h: &HopfAlgebra) -> Result<(TetraDecomposition, &'static str), Error> {
    let d = tetra_decomposition_report(t, h)?;
    if d.report.recipe_inverts_phi {
        return Ok((d, "recipe"));
    }
    Ok(match generator_factorization(t, &d) {
        Some(g) => (g, "generators"),
        None => (d, "none"),
    })
}

pub fn braiding(n: &Tetramodule, p: &Tetramodule, h: &HopfAlgebra) -> Result<Braiding, Error> {
    if n.base() != p.base() {
        return Err(Error::Invalid("tetramodules over different bialgebras".into()));
    }
    let (dn, how_n) = factorize(n, h)?;
    let (dp, how_p) = factorize(p, h)?;
    let bs = n.base().space();
    let (n0, p0) = (&dn.coinvariants.space, &dp.coinvariants.space);
    let lp = lambda_prime(bs, n0, p0);
    let involution = lambda_prime(bs, p0, n0).compose_unchecked(&lp).same_entries(&LinearMap::identity(lp.domain()));
    let mut report = BraidingReport {
        available: false,
        reason: None,
        dim_n0: n0.dim(),
        dim_p0: p0.dim(),
        factorization: [how_n, how_p].iter().map(|s| s.to_string()).collect(),
        lambda_prime_involution: involution,
        descends: None,
        lambda_invertible: None,
        lambda_squared_identity: None,
    };
    let failing: Vec<&str> =
        [("N", how_n), ("P", how_p)].iter().filter(|(_, how)| *how == "none").map(|(name, _)| *name).collect();
    if !failing.is_empty() {
        report.reason = Some(format!("{} has no factorization B⊗V⊗B ≅ M with V ⊂ M₀", failing.join(" and ")));
        return Ok(Braiding { lambda_prime: lp, lambda: None, report });
    }
    let np = internal_product(n, p, Variant::One)?;
    let pn = internal_product(p, n, Variant::One)?;
    let (lam, d1) = lambda_between(n, p, &dn, &dp, &np, &pn);
    let (back, d2) = lambda_between(p, n, &dp, &dn, &pn, &np);
    let r = rank(&lam);
    report.available = true;
    report.descends = Some(d1 && d2);
    report.lambda_invertible = Some(r == np.dim() && r == pn.dim());
    report.lambda_squared_identity =
        Some(back.compose_unchecked(&lam).same_entries(&LinearMap::identity(&np.presentation.space)));
    Ok(Braiding { lambda_prime: lp, lambda: Some((lam, np, pn)), report })
}

#[derive(Clone, Debug, Serialize)]
pub struct EckmannHiltonReport {
    pub available: bool,
    pub reason: Option<String>,
    /// `id_M ⊗₁ λ ⊗₁ id_Q` respects the ⊗₁ relations. λ swaps the outer
    /// factors, so this fails unless `B = ℚ`.
    pub literal_well_defined: Option<bool>,
    pub dim_source: usize,
    pub dim_target: usize,
    /// Both factorized carriers map bijectively onto the four-fold products.
    pub carriers_bijective: bool,
    pub rank: usize,
    pub invertible: bool,
    /// η commutes with the tetramodule structure maps.
    pub tetramodule_map: bool,
}

/// `((X⊗₁Y)⊗₁Z)⊗₁W` with its projection from and section into `X⊗Y⊗Z⊗W`.
fn fourfold(ms: [&Tetramodule; 4]) -> Result<(Space, LinearMap, LinearMap), Error> {
    let a = internal_product(ms[0], ms[1], Variant::One)?;
    let b = internal_product(&a.product, ms[2], Variant::One)?;
    let c = internal_product(&b.product, ms[3], Variant::One)?;
    let (i2, i3) = (ms[2].identity(), ms[3].identity());
    let pi = c
        .presentation
        .structure
        .compose_unchecked(&b.presentation.structure.kron(&i3))
        .compose_unchecked(&LinearMap::kron_all(&[&a.presentation.structure, &i2, &i3]));
    let sigma = LinearMap::kron_all(&[&a.presentation.splitting, &i2, &i3])
        .compose_unchecked(&b.presentation.splitting.kron(&i3))
        .compose_unchecked(&c.presentation.splitting);
    Ok((c.presentation.space.clone(), pi, sigma))
}

/// `Φ: B⊗X₀⊗B⊗Y₀⊗B⊗Z₀⊗B⊗W₀⊗B -> ((X⊗₁Y)⊗₁Z)⊗₁W`, each inner `B`
/// acting on the right of the factor before it.
fn carrier_map(ds: [&TetraDecomposition; 4], b: &crate::hopf::Bialgebra, pi: &LinearMap) -> LinearMap {
    let lead = |d: &TetraDecomposition| {
        d.phi.compose_unchecked(&LinearMap::kron_all(&[&b.unit_map(), &LinearMap::identity(&d.coinvariants.space), &b.identity()]))
    };
    let (f1, f2, f3) = (lead(ds[1]), lead(ds[2]), lead(ds[3]));
    pi.compose_unchecked(&LinearMap::kron_all(&[&ds[0].phi, &f1, &f2, &f3]))
}

/// `η: M⊗₁N⊗₁P⊗₁Q -> M⊗₁P⊗₁N⊗₁Q`. On the factorized carriers
/// `b⊗m₀⊗c₁⊗n₀⊗c₂⊗p₀⊗c₃⊗q₀⊗b′ ↦ b⊗m₀⊗c₃⊗p₀⊗c₂⊗n₀⊗c₁⊗q₀⊗b′`: λ′ on the
/// data of `N` and `P`, the outer factors of `M` and `Q` fixed.
pub fn eckmann_hilton(
    m: &Tetramodule,
    n: &Tetramodule,
    p: &Tetramodule,
    q: &Tetramodule,
    h: &HopfAlgebra,
) -> Result<(Option<LinearMap>, EckmannHiltonReport), Error> {
    if [n, p, q].iter().any(|t| t.base() != m.base()) {
        return Err(Error::Invalid("tetramodules over different bialgebras".into()));
    }
    let mut report = EckmannHiltonReport {
        available: false,
        reason: None,
        literal_well_defined: None,
        dim_source: 0,
        dim_target: 0,
        carriers_bijective: false,
        rank: 0,
        invertible: false,
        tetramodule_map: false,
    };
    let mut ds = Vec::new();
    let mut missing = Vec::new();
    for (name, t) in [("M", m), ("N", n), ("P", p), ("Q", q)] {
        let (d, how) = factorize(t, h)?;
        if how == "none" {
            missing.push(name);
        }
        ds.push(d);
    }
    if !missing.is_empty() {
        report.reason = Some(format!("{} has no factorization B⊗V⊗B ≅ M with V ⊂ M₀", missing.join(", ")));
        return Ok((None, report));
    }
    let (xs, pi_x, sigma_x) = fourfold([m, n, p, q])?;
    let (ys, pi_y, _) = fourfold([m, p, n, q])?;
    if let Some((lam, np, pn)) = braiding(n, p, h)?.lambda {
        let lift = pn.presentation.splitting.compose_unchecked(&lam).compose_unchecked(&np.presentation.structure);
        let middle = LinearMap::kron_all(&[&m.identity(), &lift, &q.identity()]);
        let literal = pi_y.compose_unchecked(&middle).compose_unchecked(&sigma_x);
        report.literal_well_defined = Some(literal.compose_unchecked(&pi_x).same_entries(&pi_y.compose_unchecked(&middle)));
    }
    let b = m.base();
    let phi_x = carrier_map([&ds[0], &ds[1], &ds[2], &ds[3]], b, &pi_x);
    let phi_y = carrier_map([&ds[0], &ds[2], &ds[1], &ds[3]], b, &pi_y);
    report.available = true;
    report.dim_source = xs.dim();
    report.dim_target = ys.dim();
    let Some(phi_x_inv) = (phi_x.domain().dim() == xs.dim()).then(|| inverse(&phi_x)).flatten() else {
        report.reason = Some("the factorized carrier of M⊗₁N⊗₁P⊗₁Q is not isomorphic to it".into());
        return Ok((None, report));
    };
    report.carriers_bijective = phi_y.domain().dim() == ys.dim() && rank(&phi_y) == ys.dim();
    let bs = b.space();
    let v: Vec<&Space> = ds.iter().map(|d| &d.coinvariants.space).collect();
    let swap = permute_factors(&[bs, v[0], bs, v[1], bs, v[2], bs, v[3], bs], &[0, 1, 6, 5, 4, 3, 2, 7, 8]);
    let eta = phi_y.compose_unchecked(&swap).compose_unchecked(&phi_x_inv);
    report.rank = rank(&eta);
    report.invertible = report.carriers_bijective && report.rank == xs.dim() && report.rank == ys.dim();
    let source = fourfold_product([m, n, p, q])?;
    let target = fourfold_product([m, p, n, q])?;
    report.tetramodule_map = source.morphism_failures(&eta, &target).is_empty();
    Ok((Some(eta), report))
}

fn fourfold_product(ms: [&Tetramodule; 4]) -> Result<Tetramodule, Error> {
    let a = internal_product(ms[0], ms[1], Variant::One)?;
    let b = internal_product(&a.product, ms[2], Variant::One)?;
    Ok(internal_product(&b.product, ms[3], Variant::One)?.product)
}
