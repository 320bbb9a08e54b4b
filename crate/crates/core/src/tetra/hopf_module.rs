use serde::Serialize;

use super::tetramodule::{cast, compare, Tetramodule};
use crate::error::Error;
use crate::hopf::{AxiomFailure, HopfAlgebra};
use crate::linalg::subquotient::kernel_of;
use crate::linalg::{permute_factors, rank, LinearMap, Space, SubQuotient};

/// A left Hopf module: a left `H`-module and left `H`-comodule with
/// `Δ_ℓ(a·m) = a₁m₋₁ ⊗ a₂m₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfModule {
    base: HopfAlgebra,
    space: Space,
    action: LinearMap,
    coaction: LinearMap,
}

impl HopfModule {
    /// Checks shapes only; see [`HopfModule::validate`].
    pub fn new(base: HopfAlgebra, space: Space, action: LinearMap, coaction: LinearMap) -> Result<Self, Error> {
        let (h, m) = (base.dim(), space.dim());
        if action.nrows() != m || action.ncols() != h * m {
            return Err(Error::Shape(format!("action must be {m}×{}", h * m)));
        }
        if coaction.nrows() != h * m || coaction.ncols() != m {
            return Err(Error::Shape(format!("coaction must be {}×{m}", h * m)));
        }
        let hm = base.space().tensor(&space);
        Ok(HopfModule { action: cast(&action, &hm, &space), coaction: cast(&coaction, &space, &hm), base, space })
    }

    pub fn base(&self) -> &HopfAlgebra {
        &self.base
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn action(&self) -> &LinearMap {
        &self.action
    }

    pub fn coaction(&self) -> &LinearMap {
        &self.coaction
    }

    pub fn validate(&self) -> Vec<AxiomFailure> {
        let mut out = Vec::new();
        let b = &self.base.bialgebra;
        let (ih, im) = (b.identity(), LinearMap::identity(&self.space));
        let (act, co) = (&self.action, &self.coaction);
        let mut check = |axiom: &str, lhs: LinearMap, rhs: LinearMap| compare(&mut out, axiom, &lhs, &rhs);
        check(
            "action associative",
            act.compose_unchecked(&b.m().kron(&im)),
            act.compose_unchecked(&ih.kron(act)),
        );
        check("action unital", act.compose_unchecked(&b.unit_map().kron(&im)), im.clone());
        check(
            "coaction coassociative",
            b.delta().kron(&im).compose_unchecked(co),
            ih.kron(co).compose_unchecked(co),
        );
        check("coaction counital", b.counit().kron(&im).compose_unchecked(co), im);
        let hs = b.space();
        let p = permute_factors(&[hs, hs, hs, &self.space], &[0, 2, 1, 3]);
        check(
            "coaction of action",
            co.compose_unchecked(act),
            b.m().kron(act).compose_unchecked(&p).compose_unchecked(&b.delta().kron(co)),
        );
        out
    }
}

/// `H` acting and coacting on itself.
pub fn regular_hopf_module(h: &HopfAlgebra) -> HopfModule {
    let b = &h.bialgebra;
    HopfModule::new(h.clone(), b.space().clone(), b.m().clone(), b.delta().clone()).expect("shapes")
}

/// `H ⊗ W` with `a·(x⊗w) = ax⊗w` and `Δ_ℓ(x⊗w) = x₁ ⊗ (x₂⊗w)`.
pub fn free_hopf_module(h: &HopfAlgebra, w: &Space) -> HopfModule {
    let b = &h.bialgebra;
    let iw = LinearMap::identity(w);
    let space = b.space().tensor(w);
    HopfModule::new(h.clone(), space, b.m().kron(&iw), b.delta().kron(&iw)).expect("shapes")
}

/// The left half `(m_ℓ, Δ_ℓ)` of a tetramodule over the bialgebra of `h`.
pub fn left_hopf_module(t: &Tetramodule, h: &HopfAlgebra) -> Result<HopfModule, Error> {
    if *t.base() != h.bialgebra {
        return Err(Error::Invalid("the Hopf algebra does not match the tetramodule base".into()));
    }
    HopfModule::new(h.clone(), t.space().clone(), t.ml().clone(), t.dl().clone())
}

/// `M_Δ = {m : Δ_ℓ(m) = 1⊗m}` with inclusion and a retraction.
pub fn coinvariants(m: &HopfModule) -> SubQuotient {
    let one_tensor = m.base.bialgebra.unit_map().kron(&LinearMap::identity(&m.space));
    kernel_of(&m.coaction.sub(&one_tensor).expect("same shape"))
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub dim_base: usize,
    pub dim_module: usize,
    pub dim_coinvariants: usize,
    pub projection_into_coinvariants: bool,
    pub projection_idempotent: bool,
    pub projection_image_is_coinvariants: bool,
    pub alpha_beta_identity: bool,
    pub beta_alpha_identity: bool,
    pub passed: bool,
}

/// `α: H⊗M_Δ -> M`, `β: M -> H⊗M_Δ`, `P: M -> M` and the exact checks.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub coinvariants: SubQuotient,
    pub alpha: LinearMap,
    pub beta: LinearMap,
    pub projection: LinearMap,
    pub report: DecompositionReport,
}

/// `α(b⊗m′) = b·m′`, `P = m_ℓ ∘ (S⊗id) ∘ Δ_ℓ`, `β = (id⊗P) ∘ Δ_ℓ`.
pub fn fundamental_decomposition(m: &HopfModule) -> Result<Decomposition, Error> {
    let h = &m.base;
    if let Some(f) = h.validate().first() {
        return Err(Error::Invalid(format!("base is not a Hopf algebra: {} ({})", f.axiom, f.detail)));
    }
    let b = &h.bialgebra;
    let ih = b.identity();
    let im = LinearMap::identity(&m.space);
    let co = coinvariants(m);
    let (inc, ret) = (&co.structure, &co.splitting);
    let hc = b.space().tensor(&co.space);
    let alpha = cast(&m.action.compose_unchecked(&ih.kron(inc)), &hc, &m.space);
    let projection = m.action.compose_unchecked(&h.antipode.kron(&im)).compose_unchecked(&m.coaction);
    let beta = cast(&ih.kron(&ret.compose_unchecked(&projection)).compose_unchecked(&m.coaction), &m.space, &hc);

    let into = inc.compose_unchecked(&ret.compose_unchecked(&projection)).same_entries(&projection);
    let idempotent = projection.compose_unchecked(&projection).same_entries(&projection);
    let onto = into && rank(&projection) == co.space.dim();
    let ab = alpha.compose_unchecked(&beta).same_entries(&im);
    let ba = beta.compose_unchecked(&alpha).same_entries(&LinearMap::identity(&hc));
    let report = DecompositionReport {
        dim_base: h.dim(),
        dim_module: m.dim(),
        dim_coinvariants: co.space.dim(),
        projection_into_coinvariants: into,
        projection_idempotent: idempotent,
        projection_image_is_coinvariants: onto,
        alpha_beta_identity: ab,
        beta_alpha_identity: ba,
        passed: into && idempotent && onto && ab && ba,
    };
    Ok(Decomposition { coinvariants: co, alpha, beta, projection, report })
}
