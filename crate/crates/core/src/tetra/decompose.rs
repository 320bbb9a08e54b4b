use serde::Serialize;

use super::tetramodule::{cast, Tetramodule};
use crate::error::Error;
use crate::hopf::HopfAlgebra;
use crate::linalg::subquotient::subspace_cut_out_by;
use num_traits::Zero;

use crate::linalg::{inverse, rank, LinearMap, SVec, Space, SubQuotient};

#[derive(Clone, Debug, Serialize)]
pub struct TetraDecompositionReport {
    pub dim_base: usize,
    pub dim_module: usize,
    pub dim_coinvariants: usize,
    /// `dim B · dim B · dim M₀`, the dimension of the source of `Φ`.
    pub source_dim: usize,
    pub rank_phi: usize,
    pub phi_injective: bool,
    pub phi_surjective: bool,
    pub projection_into_coinvariants: bool,
    pub projection_idempotent: bool,
    pub phi_beta_identity: bool,
    pub beta_phi_identity: bool,
    /// `β` lands in `B⊗M₀⊗B` and is a two-sided inverse of `Φ`.
    pub recipe_inverts_phi: bool,
}

/// Two-sided coinvariants and the maps of the two-sided decomposition.
#[derive(Clone, Debug)]
pub struct TetraDecomposition {
    pub coinvariants: SubQuotient,
    /// `Φ: B⊗M₀⊗B -> M`, `b⊗m₀⊗b′ ↦ b·m₀·b′`.
    pub phi: LinearMap,
    /// `β = (id⊗P⊗id) ∘ Δ_ℓΔ_r`, retracted onto `B⊗M₀⊗B`.
    pub beta: LinearMap,
    /// `P = m_ℓm_r ∘ (S⊗id⊗S) ∘ Δ_ℓΔ_r`.
    pub projection: LinearMap,
    pub report: TetraDecompositionReport,
}

/// `M₀ = {m : Δ_ℓ(m) = 1⊗m, Δ_r(m) = m⊗1}`.
pub fn two_sided_coinvariants(t: &Tetramodule) -> SubQuotient {
    let b = t.base();
    let im = t.identity();
    let left = t.dl().sub(&b.unit_map().kron(&im)).expect("same shape");
    let right = t.dr().sub(&im.kron(&b.unit_map())).expect("same shape");
    let mut eqs = left.rows();
    eqs.extend(right.rows());
    subspace_cut_out_by(t.space(), &eqs)
}

/// Builds `Φ` and the candidate inverse over `B ⊗ B^op` and reports what
/// holds. Nothing is asserted: on some tetramodules the maps are not inverse.
pub fn tetra_decomposition_report(t: &Tetramodule, h: &HopfAlgebra) -> Result<TetraDecomposition, Error> {
    if *t.base() != h.bialgebra {
        return Err(Error::Invalid("the Hopf algebra does not match the tetramodule base".into()));
    }
    let b = &h.bialgebra;
    let (bs, ib, im) = (b.space(), b.identity(), t.identity());
    let co = two_sided_coinvariants(t);
    let (inc, ret) = (&co.structure, &co.splitting);
    let carrier = Space::tensor_all(&[bs, &co.space, bs]);
    // b ⊗ m ⊗ b′ ↦ (b·m)·b′
    let act_both = t.mr().compose_unchecked(&t.ml().kron(&ib));
    let phi = cast(&act_both.compose_unchecked(&LinearMap::kron_all(&[&ib, inc, &ib])), &carrier, t.space());
    // m ↦ m₋₁ ⊗ m₀ ⊗ m₁
    let both_co = ib.kron(t.dr()).compose_unchecked(t.dl());
    let s = &h.antipode;
    let projection = act_both.compose_unchecked(&LinearMap::kron_all(&[s, &im, s])).compose_unchecked(&both_co);
    let squeeze = ret.compose_unchecked(&projection);
    let beta = cast(&LinearMap::kron_all(&[&ib, &squeeze, &ib]).compose_unchecked(&both_co), t.space(), &carrier);

    let into = inc.compose_unchecked(&squeeze).same_entries(&projection);
    let idempotent = projection.compose_unchecked(&projection).same_entries(&projection);
    let r = rank(&phi);
    let pb = phi.compose_unchecked(&beta).same_entries(&im);
    let bp = beta.compose_unchecked(&phi).same_entries(&LinearMap::identity(&carrier));
    let report = TetraDecompositionReport {
        dim_base: b.dim(),
        dim_module: t.dim(),
        dim_coinvariants: co.space.dim(),
        source_dim: carrier.dim(),
        rank_phi: r,
        phi_injective: r == carrier.dim(),
        phi_surjective: r == t.dim(),
        projection_into_coinvariants: into,
        projection_idempotent: idempotent,
        phi_beta_identity: pb,
        beta_phi_identity: bp,
        recipe_inverts_phi: into && pb && bp,
    };
    Ok(TetraDecomposition { coinvariants: co, phi, beta, projection, report })
}

/// A factorization `B⊗V⊗B ≅ M` through a subspace `V ⊂ M₀`, for modules on
/// which the recipe does not invert `Φ`. `V` is grown greedily along the basis
/// of `M₀`, keeping `Φ` injective; the result is returned only when `Φ` on
/// `B⊗V⊗B` is bijective, and `β` is then its exact inverse.
pub fn generator_factorization(t: &Tetramodule, d: &TetraDecomposition) -> Option<TetraDecomposition> {
    let (nb, k) = (t.base().dim(), d.coinvariants.space.dim());
    let columns = |chosen: &[usize]| -> Vec<usize> {
        let mut idx = Vec::new();
        for x in 0..nb {
            for &v in chosen {
                for y in 0..nb {
                    idx.push((x * k + v) * nb + y);
                }
            }
        }
        idx
    };
    let mut chosen = Vec::new();
    for v in 0..k {
        if nb * nb * chosen.len() >= t.dim() {
            break;
        }
        chosen.push(v);
        let idx = columns(&chosen);
        if rank(&d.phi.select_cols(&idx, &Space::numbered("c", idx.len()))) < idx.len() {
            chosen.pop();
        }
    }
    if nb * nb * chosen.len() != t.dim() {
        return None;
    }
    let bs = t.base().space();
    let labels: Vec<String> = chosen.iter().map(|&v| d.coinvariants.space.labels()[v].clone()).collect();
    let v_space = Space::new(labels).ok()?;
    let structure = d.coinvariants.structure.select_cols(&chosen, &v_space);
    let retract_rows = d.coinvariants.splitting.rows();
    let splitting = LinearMap::from_fn(t.space(), &v_space, |j| {
        SVec::from_pairs(chosen.iter().enumerate().map(|(i, &v)| (i, retract_rows[v].get(j))).filter(|(_, s)| !s.is_zero()))
    });
    let carrier = Space::tensor_all(&[bs, &v_space, bs]);
    let phi = d.phi.select_cols(&columns(&chosen), &carrier);
    let beta = inverse(&phi)?;
    let mut report = d.report.clone();
    report.dim_coinvariants = chosen.len();
    report.source_dim = carrier.dim();
    report.rank_phi = carrier.dim();
    report.phi_injective = true;
    report.phi_surjective = true;
    report.phi_beta_identity = true;
    report.beta_phi_identity = true;
    report.recipe_inverts_phi = false;
    let coinvariants = SubQuotient { mode: d.coinvariants.mode, space: v_space, structure, splitting };
    Some(TetraDecomposition { coinvariants, phi, beta, projection: d.projection.clone(), report })
}
