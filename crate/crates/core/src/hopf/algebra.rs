use serde::Serialize;

use crate::error::Error;
use crate::linalg::{inverse, permute_factors, rank, swap, LinearMap, SVec, Space};

/// A finite-dimensional bialgebra given by structure tensors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bialgebra {
    space: Space,
    m: LinearMap,
    unit: SVec,
    delta: LinearMap,
    counit: LinearMap,
}

/// A bialgebra with an antipode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfAlgebra {
    pub bialgebra: Bialgebra,
    pub antipode: LinearMap,
}

/// One failed identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomFailure {
    pub axiom: String,
    pub detail: String,
}

/// Reinterprets `m` between spaces of the same dimensions (tensor spaces
/// built in different bracketings carry different labels).
fn cast(m: &LinearMap, dom: &Space, cod: &Space) -> LinearMap {
    m.with_spaces(dom, cod).expect("same dimensions")
}

impl Bialgebra {
    /// Checks shapes only; see [`Bialgebra::validate`] for the axioms.
    pub fn new(space: Space, m: LinearMap, unit: SVec, delta: LinearMap, counit: LinearMap) -> Result<Self, Error> {
        let n = space.dim();
        let bb = space.tensor(&space);
        if m.ncols() != n * n || m.nrows() != n {
            return Err(Error::Shape(format!("multiplication must be {n}×{}", n * n)));
        }
        if delta.ncols() != n || delta.nrows() != n * n {
            return Err(Error::Shape(format!("coproduct must be {}×{n}", n * n)));
        }
        if counit.ncols() != n || counit.nrows() != 1 {
            return Err(Error::Shape(format!("counit must be 1×{n}")));
        }
        if unit.max_index().is_some_and(|i| i >= n) {
            return Err(Error::Shape("unit vector out of range".into()));
        }
        Ok(Bialgebra {
            m: cast(&m, &bb, &space),
            delta: cast(&delta, &space, &bb),
            counit: cast(&counit, &space, &Space::ground()),
            space,
            unit,
        })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn m(&self) -> &LinearMap {
        &self.m
    }

    pub fn unit(&self) -> &SVec {
        &self.unit
    }

    pub fn delta(&self) -> &LinearMap {
        &self.delta
    }

    pub fn counit(&self) -> &LinearMap {
        &self.counit
    }

    /// `B ⊗ B`.
    pub fn square(&self) -> Space {
        self.space.tensor(&self.space)
    }

    /// `η: k -> B`.
    pub fn unit_map(&self) -> LinearMap {
        LinearMap::point(&self.space, &self.unit)
    }

    pub fn identity(&self) -> LinearMap {
        LinearMap::identity(&self.space)
    }

    /// Product of two vectors.
    pub fn mul(&self, a: &SVec, b: &SVec) -> SVec {
        let n = self.dim();
        let mut acc = crate::linalg::Accum::new();
        for (i, x) in a.entries() {
            for (j, y) in b.entries() {
                acc.add_vec(&(x * y), self.m.col(i * n + j));
            }
        }
        acc.finish()
    }

    /// `(B^{⊗4} -> B^{⊗4})`: swaps the middle factors.
    fn middle_swap(&self) -> LinearMap {
        let s = &self.space;
        permute_factors(&[s, s, s, s], &[0, 2, 1, 3])
    }

    /// `m_{B⊗B} = (m ⊗ m) ∘ σ_23`.
    pub fn m_square(&self) -> LinearMap {
        let bb = self.square();
        let mm = self.m.kron(&self.m);
        cast(&mm.compose_unchecked(&self.middle_swap()), &bb.tensor(&bb), &bb)
    }

    /// `Δ_{B⊗B} = σ_23 ∘ (Δ ⊗ Δ)`.
    pub fn delta_square(&self) -> LinearMap {
        let bb = self.square();
        let dd = self.delta.kron(&self.delta);
        cast(&self.middle_swap().compose_unchecked(&dd), &bb, &bb.tensor(&bb))
    }

    /// Every axiom failure; empty for a bialgebra.
    pub fn validate(&self) -> Vec<AxiomFailure> {
        let mut out = Vec::new();
        let mut check = |axiom: &str, lhs: LinearMap, rhs: LinearMap| {
            if !lhs.same_entries(&rhs) {
                let bad = (0..lhs.ncols()).find(|&j| lhs.col(j) != rhs.col(j)).unwrap_or(0);
                out.push(AxiomFailure { axiom: axiom.into(), detail: format!("differs on basis tensor {bad}") });
            }
        };
        let id = self.identity();
        let eta = self.unit_map();
        check(
            "associativity",
            self.m.compose_unchecked(&self.m.kron(&id)),
            self.m.compose_unchecked(&id.kron(&self.m)),
        );
        check("left unit", self.m.compose_unchecked(&eta.kron(&id)), id.clone());
        check("right unit", self.m.compose_unchecked(&id.kron(&eta)), id.clone());
        check(
            "coassociativity",
            self.delta.kron(&id).compose_unchecked(&self.delta),
            id.kron(&self.delta).compose_unchecked(&self.delta),
        );
        check("left counit", self.counit.kron(&id).compose_unchecked(&self.delta), id.clone());
        check("right counit", id.kron(&self.counit).compose_unchecked(&self.delta), id.clone());
        check(
            "coproduct multiplicative",
            self.delta.compose_unchecked(&self.m),
            self.m_square().compose_unchecked(&self.delta.kron(&self.delta)),
        );
        check("counit multiplicative", self.counit.compose_unchecked(&self.m), self.counit.kron(&self.counit));
        check("coproduct of unit", self.delta.compose_unchecked(&eta), eta.kron(&eta));
        check("counit of unit", self.counit.compose_unchecked(&eta), LinearMap::identity(&Space::ground()));
        out
    }

    /// `m^op = m ∘ σ`, `Δ^op = σ ∘ Δ`.
    pub fn opposite(&self) -> Bialgebra {
        let sw = swap(&self.space, &self.space);
        Bialgebra {
            space: self.space.clone(),
            m: self.m.compose_unchecked(&sw),
            unit: self.unit.clone(),
            delta: sw.compose_unchecked(&self.delta),
            counit: self.counit.clone(),
        }
    }

    /// Componentwise structure on `C ⊗ D`.
    pub fn tensor(&self, other: &Bialgebra) -> Bialgebra {
        let space = self.space.tensor(&other.space);
        let ss = space.tensor(&space);
        let (c, d) = (&self.space, &other.space);
        // (C⊗D)⊗(C⊗D) -> (C⊗C)⊗(D⊗D) and back
        let to_split = permute_factors(&[c, d, c, d], &[0, 2, 1, 3]);
        let from_split = permute_factors(&[c, c, d, d], &[0, 2, 1, 3]);
        let m = cast(&self.m.kron(&other.m).compose_unchecked(&to_split), &ss, &space);
        let delta = cast(&from_split.compose_unchecked(&self.delta.kron(&other.delta)), &space, &ss);
        let counit = cast(&self.counit.kron(&other.counit), &space, &Space::ground());
        let unit = LinearMap::point(c, &self.unit).kron(&LinearMap::point(d, &other.unit)).col(0).clone();
        Bialgebra { space, m, unit, delta, counit }
    }

    /// Structure constants in the basis given by the columns of `p`
    /// (`p` must be invertible).
    pub fn conjugate(&self, p: &LinearMap) -> Result<Bialgebra, Error> {
        let pi = inverse(p).ok_or_else(|| Error::Invalid("change of basis is not invertible".into()))?;
        let (p, pi) = (cast(p, &self.space, &self.space), cast(&pi, &self.space, &self.space));
        Ok(Bialgebra {
            space: self.space.clone(),
            m: pi.compose_unchecked(&self.m).compose_unchecked(&p.kron(&p)),
            unit: pi.apply(&self.unit),
            delta: pi.kron(&pi).compose_unchecked(&self.delta).compose_unchecked(&p),
            counit: self.counit.compose_unchecked(&p),
        })
    }
}

impl HopfAlgebra {
    pub fn new(bialgebra: Bialgebra, antipode: LinearMap) -> Result<Self, Error> {
        let n = bialgebra.dim();
        if antipode.nrows() != n || antipode.ncols() != n {
            return Err(Error::Shape(format!("antipode must be {n}×{n}")));
        }
        let antipode = cast(&antipode, bialgebra.space(), bialgebra.space());
        Ok(HopfAlgebra { bialgebra, antipode })
    }

    pub fn dim(&self) -> usize {
        self.bialgebra.dim()
    }

    pub fn space(&self) -> &Space {
        self.bialgebra.space()
    }

    /// Bialgebra axioms, antipode axioms and the derived antipode identities.
    pub fn validate(&self) -> Vec<AxiomFailure> {
        let mut out = self.bialgebra.validate();
        let b = &self.bialgebra;
        let s = &self.antipode;
        let id = b.identity();
        let sw = swap(b.space(), b.space());
        let eta_eps = b.unit_map().compose_unchecked(b.counit());
        let mut check = |axiom: &str, lhs: LinearMap, rhs: LinearMap| {
            if !lhs.same_entries(&rhs) {
                let bad = (0..lhs.ncols()).find(|&j| lhs.col(j) != rhs.col(j)).unwrap_or(0);
                out.push(AxiomFailure { axiom: axiom.into(), detail: format!("differs on basis tensor {bad}") });
            }
        };
        check("antipode right", b.m().compose_unchecked(&id.kron(s)).compose_unchecked(b.delta()), eta_eps.clone());
        check("antipode left", b.m().compose_unchecked(&s.kron(&id)).compose_unchecked(b.delta()), eta_eps);
        check(
            "antipode anti-multiplicative",
            s.compose_unchecked(b.m()),
            b.m().compose_unchecked(&sw).compose_unchecked(&s.kron(s)),
        );
        check(
            "antipode anti-comultiplicative",
            b.delta().compose_unchecked(s),
            s.kron(s).compose_unchecked(&sw).compose_unchecked(b.delta()),
        );
        check("counit of antipode", b.counit().compose_unchecked(s), b.counit().clone());
        check("antipode of unit", s.compose_unchecked(&b.unit_map()), b.unit_map());
        if rank(s) != b.dim() {
            out.push(AxiomFailure { axiom: "antipode invertible".into(), detail: format!("rank {}", rank(s)) });
        }
        out
    }

    /// Opposite algebra and coalgebra with the same antipode.
    pub fn opposite(&self) -> HopfAlgebra {
        HopfAlgebra { bialgebra: self.bialgebra.opposite(), antipode: self.antipode.clone() }
    }

    /// `C ⊗ D` with antipode `S_C ⊗ S_D`.
    pub fn tensor(&self, other: &HopfAlgebra) -> HopfAlgebra {
        let bialgebra = self.bialgebra.tensor(&other.bialgebra);
        let antipode = cast(&self.antipode.kron(&other.antipode), bialgebra.space(), bialgebra.space());
        HopfAlgebra { bialgebra, antipode }
    }

    pub fn conjugate(&self, p: &LinearMap) -> Result<HopfAlgebra, Error> {
        let bialgebra = self.bialgebra.conjugate(p)?;
        let pi = inverse(p).ok_or_else(|| Error::Invalid("change of basis is not invertible".into()))?;
        let sp = self.space();
        let antipode = cast(&pi, sp, sp).compose_unchecked(&self.antipode).compose_unchecked(&cast(p, sp, sp));
        Ok(HopfAlgebra { bialgebra, antipode })
    }

    /// `S ∘ S`.
    pub fn antipode_squared(&self) -> LinearMap {
        self.antipode.compose_unchecked(&self.antipode)
    }
}

pub fn validate_bialgebra(b: &Bialgebra) -> Vec<AxiomFailure> {
    b.validate()
}

pub fn validate_hopf(h: &HopfAlgebra) -> Vec<AxiomFailure> {
    h.validate()
}

pub fn opposite(h: &HopfAlgebra) -> HopfAlgebra {
    h.opposite()
}

pub fn tensor_hopf(c: &HopfAlgebra, d: &HopfAlgebra) -> HopfAlgebra {
    c.tensor(d)
}
