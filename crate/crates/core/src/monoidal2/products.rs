use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;
use crate::hopf::{AxiomFailure, HopfAlgebra};
use crate::linalg::{permute_factors, rank, subquotient, LinearMap, Mode, SubQuotient};
use crate::tetra::{find_isomorphism, tetra_decomposition_report, two_sided_coinvariants, Tetramodule};

/// Which of the two monoidal products.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Variant {
    One,
    Two,
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "1" => Ok(Variant::One),
            "2" => Ok(Variant::Two),
            other => Err(Error::Usage(format!("product variant must be 1 or 2, not '{other}'"))),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::One => "1",
            Variant::Two => "2",
        })
    }
}

fn same_base(m: &Tetramodule, n: &Tetramodule) -> Result<(), Error> {
    if m.base() != n.base() {
        return Err(Error::Invalid("tetramodules over different bialgebras".into()));
    }
    Ok(())
}

/// `M ⊠ᵥ N` on `M ⊗ N`.
///
/// Variant 1: `a·(m⊠n) = am⊠n`, `(m⊠n)·a = m⊠na`,
/// `Δ_ℓ(m⊠n) = m₋₁n₋₁ ⊗ (m₀⊠n₀)`, `Δ_r(m⊠n) = (m₀⊠n₀) ⊗ m₁n₁`.
/// Variant 2: `a·(m⊠n) = a₁m⊠a₂n`, `(m⊠n)·a = ma₁⊠na₂`,
/// `Δ_ℓ(m⊠n) = m₋₁ ⊗ (m₀⊠n)`, `Δ_r(m⊠n) = (m⊠n₀) ⊗ n₁`.
pub fn external_product(m: &Tetramodule, n: &Tetramodule, variant: Variant) -> Result<Tetramodule, Error> {
    same_base(m, n)?;
    let b = m.base();
    let (bs, ms, ns) = (b.space(), m.space(), n.space());
    let (im, inn) = (m.identity(), n.identity());
    let space = ms.tensor(ns);
    let (ml, mr, dl, dr) = match variant {
        Variant::One => {
            let ml = m.ml().kron(&inn);
            let mr = im.kron(n.mr());
            let dl = LinearMap::kron_all(&[b.m(), &im, &inn])
                .compose_unchecked(&permute_factors(&[bs, ms, bs, ns], &[0, 2, 1, 3]))
                .compose_unchecked(&m.dl().kron(n.dl()));
            let dr = LinearMap::kron_all(&[&im, &inn, b.m()])
                .compose_unchecked(&permute_factors(&[ms, bs, ns, bs], &[0, 2, 1, 3]))
                .compose_unchecked(&m.dr().kron(n.dr()));
            (ml, mr, dl, dr)
        }
        Variant::Two => {
            let ml = m
                .ml()
                .kron(n.ml())
                .compose_unchecked(&permute_factors(&[bs, bs, ms, ns], &[0, 2, 1, 3]))
                .compose_unchecked(&LinearMap::kron_all(&[b.delta(), &im, &inn]));
            let mr = m
                .mr()
                .kron(n.mr())
                .compose_unchecked(&permute_factors(&[ms, ns, bs, bs], &[0, 2, 1, 3]))
                .compose_unchecked(&LinearMap::kron_all(&[&im, &inn, b.delta()]));
            (ml, mr, m.dl().kron(&inn), im.kron(n.dr()))
        }
    };
    Tetramodule::new(b.clone(), space, ml, mr, dl, dr)
}

/// `M ⊗ᵥ N` with its presentation inside `M ⊠ᵥ N`.
#[derive(Clone, Debug)]
pub struct InternalProduct {
    pub variant: Variant,
    /// The ambient external product.
    pub external: Tetramodule,
    /// Projection from (variant 1) or inclusion into (variant 2) the ambient.
    pub presentation: SubQuotient,
    pub product: Tetramodule,
    /// Structure maps that fail to descend (variant 1) or restrict (variant 2).
    pub ill_defined: Vec<AxiomFailure>,
}

impl InternalProduct {
    pub fn dim(&self) -> usize {
        self.product.dim()
    }
}

fn require_zero(out: &mut Vec<AxiomFailure>, what: &str, m: &LinearMap) {
    if !m.is_zero() {
        out.push(AxiomFailure { axiom: what.into(), detail: format!("{} nonzero entries", m.nnz()) });
    }
}

/// Variant 1 is the quotient of `M⊠₁N` by `ma⊠n − m⊠an`; variant 2 is the
/// subspace of `M⊠₂N` where `(Δ_r⊗id) = (id⊗Δ_ℓ)`. Induced structures are
/// checked to be well defined.
pub fn internal_product(m: &Tetramodule, n: &Tetramodule, variant: Variant) -> Result<InternalProduct, Error> {
    same_base(m, n)?;
    let ext = external_product(m, n, variant)?;
    let ib = m.base().identity();
    let (im, inn) = (m.identity(), n.identity());
    let mut ill = Vec::new();
    let (presentation, product) = match variant {
        Variant::One => {
            let f = m.mr().kron(&inn);
            let g = im.kron(n.ml());
            let rel = f.sub(&g)?;
            let q = subquotient(&f, &g, Mode::Coequalizer)?;
            let (pi, sigma) = (&q.structure, &q.splitting);
            require_zero(&mut ill, "left action descends", &pi.compose_unchecked(ext.ml()).compose_unchecked(&ib.kron(&rel)));
            require_zero(&mut ill, "right action descends", &pi.compose_unchecked(ext.mr()).compose_unchecked(&rel.kron(&ib)));
            require_zero(&mut ill, "left coaction descends", &ib.kron(pi).compose_unchecked(ext.dl()).compose_unchecked(&rel));
            require_zero(&mut ill, "right coaction descends", &pi.kron(&ib).compose_unchecked(ext.dr()).compose_unchecked(&rel));
            let t = Tetramodule::new(
                m.base().clone(),
                q.space.clone(),
                pi.compose_unchecked(ext.ml()).compose_unchecked(&ib.kron(sigma)),
                pi.compose_unchecked(ext.mr()).compose_unchecked(&sigma.kron(&ib)),
                ib.kron(pi).compose_unchecked(ext.dl()).compose_unchecked(sigma),
                pi.kron(&ib).compose_unchecked(ext.dr()).compose_unchecked(sigma),
            )?;
            (q, t)
        }
        Variant::Two => {
            let f = m.dr().kron(&inn);
            let g = im.kron(n.dl());
            let eq = f.sub(&g)?;
            let e = subquotient(&f, &g, Mode::Equalizer)?;
            let (iota, rho) = (&e.structure, &e.splitting);
            require_zero(&mut ill, "left action restricts", &eq.compose_unchecked(ext.ml()).compose_unchecked(&ib.kron(iota)));
            require_zero(&mut ill, "right action restricts", &eq.compose_unchecked(ext.mr()).compose_unchecked(&iota.kron(&ib)));
            require_zero(&mut ill, "left coaction restricts", &ib.kron(&eq).compose_unchecked(ext.dl()).compose_unchecked(iota));
            require_zero(&mut ill, "right coaction restricts", &eq.kron(&ib).compose_unchecked(ext.dr()).compose_unchecked(iota));
            let t = Tetramodule::new(
                m.base().clone(),
                e.space.clone(),
                rho.compose_unchecked(ext.ml()).compose_unchecked(&ib.kron(iota)),
                rho.compose_unchecked(ext.mr()).compose_unchecked(&iota.kron(&ib)),
                ib.kron(rho).compose_unchecked(ext.dl()).compose_unchecked(iota),
                rho.kron(&ib).compose_unchecked(ext.dr()).compose_unchecked(iota),
            )?;
            (e, t)
        }
    };
    Ok(InternalProduct { variant, external: ext, presentation, product, ill_defined: ill })
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductComparison {
    pub dim_base: usize,
    pub dim_product_1: usize,
    pub dim_product_2: usize,
    pub dim_m0: usize,
    pub dim_n0: usize,
    /// `dim B · dim B · dim M₀ · dim N₀`.
    pub predicted: usize,
    pub products_agree: bool,
    pub prediction_holds: bool,
    /// Both two-sided decompositions are inverse pairs.
    pub decompositions_hold: bool,
    /// Rank of `M⊗₂N -> M⊠N -> M⊗₁N`.
    pub rank_canonical: usize,
    /// Rank of `B⊗B⊗M₀⊗N₀ -> M⊗₁N`, `b⊗b′⊗m₀⊗n₀ ↦ [b·m₀ ⊠ n₀·b′]`.
    pub rank_free_map: usize,
    /// An explicit tetramodule isomorphism `M⊗₂N -> M⊗₁N` was found.
    pub isomorphism_found: bool,
    /// Dimensions match the prediction and the isomorphism is exhibited.
    pub certified: bool,
}

/// Compares `M⊗₁N`, `M⊗₂N` and `B⊗B⊗M₀⊗N₀` with exact ranks, and looks for
/// a tetramodule isomorphism between the two products.
pub fn compare_products(m: &Tetramodule, n: &Tetramodule, h: &HopfAlgebra) -> Result<ProductComparison, Error> {
    same_base(m, n)?;
    let p1 = internal_product(m, n, Variant::One)?;
    let p2 = internal_product(m, n, Variant::Two)?;
    let dm = tetra_decomposition_report(m, h)?;
    let dn = tetra_decomposition_report(n, h)?;
    let (m0, n0) = (two_sided_coinvariants(m), two_sided_coinvariants(n));
    let b = m.base();
    let ib = b.identity();
    let predicted = b.dim() * b.dim() * m0.space.dim() * n0.space.dim();
    // M⊗₂N ⊂ M⊗N -> M⊗₁N (the ambients coincide as vector spaces)
    let canonical = p1.presentation.structure.compose_unchecked(&p2.presentation.structure);
    // b ⊗ b′ ⊗ m₀ ⊗ n₀ -> (b·m₀) ⊗ (n₀·b′)
    let bs = b.space();
    let reorder = permute_factors(&[bs, bs, &m0.space, &n0.space], &[0, 2, 3, 1]);
    let act = m
        .ml()
        .compose_unchecked(&ib.kron(&m0.structure))
        .kron(&n.mr().compose_unchecked(&n0.structure.kron(&ib)));
    let free_map = p1.presentation.structure.compose_unchecked(&act).compose_unchecked(&reorder);
    let (rc, rf) = (rank(&canonical), rank(&free_map));
    let (d1, d2) = (p1.dim(), p2.dim());
    let decompositions_hold = dm.report.recipe_inverts_phi && dn.report.recipe_inverts_phi;
    let well_defined = p1.ill_defined.is_empty() && p2.ill_defined.is_empty();
    let iso = well_defined && find_isomorphism(&p2.product, &p1.product, 4, 0)?.is_some();
    let certified = d1 == d2 && d1 == predicted && iso;
    Ok(ProductComparison {
        dim_base: b.dim(),
        dim_product_1: d1,
        dim_product_2: d2,
        dim_m0: m0.space.dim(),
        dim_n0: n0.space.dim(),
        predicted,
        products_agree: d1 == d2,
        prediction_holds: d1 == predicted && d2 == predicted,
        decompositions_hold,
        rank_canonical: rc,
        rank_free_map: rf,
        isomorphism_found: iso,
        certified,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct UnitComparison {
    pub variant: Variant,
    /// `true` for `B ⊗ᵥ M`, `false` for `M ⊗ᵥ B`.
    pub unit_on_left: bool,
    pub well_defined: bool,
    pub invertible: bool,
    pub morphism: bool,
}

/// The comparisons `B⊗₁M -> M`, `M⊗₁B -> M` induced by the actions and
/// `M -> B⊗₂M`, `M -> M⊗₂B` induced by the coactions.
pub fn unit_comparisons(m: &Tetramodule) -> Result<Vec<UnitComparison>, Error> {
    let unit = crate::tetra::regular_tetramodule(m.base());
    let mut out = Vec::new();
    for variant in [Variant::One, Variant::Two] {
        for unit_on_left in [true, false] {
            let p = if unit_on_left {
                internal_product(&unit, m, variant)?
            } else {
                internal_product(m, &unit, variant)?
            };
            let q = &p.presentation;
            let c = match variant {
                Variant::One => {
                    let act = if unit_on_left { m.ml() } else { m.mr() };
                    let map = act.compose_unchecked(&q.splitting);
                    let well_defined = map.compose_unchecked(&q.structure).same_entries(act);
                    let morphism = p.product.morphism_failures(&map, m).is_empty();
                    UnitComparison { variant, unit_on_left, well_defined, invertible: rank(&map) == m.dim() && p.dim() == m.dim(), morphism }
                }
                Variant::Two => {
                    let co = if unit_on_left { m.dl() } else { m.dr() };
                    let map = q.splitting.compose_unchecked(co);
                    let well_defined = q.structure.compose_unchecked(&map).same_entries(co);
                    let morphism = m.morphism_failures(&map, &p.product).is_empty();
                    UnitComparison { variant, unit_on_left, well_defined, invertible: rank(&map) == m.dim() && p.dim() == m.dim(), morphism }
                }
            };
            out.push(c);
        }
    }
    Ok(out)
}
