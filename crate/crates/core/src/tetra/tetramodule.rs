use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::hopf::{AxiomFailure, Bialgebra};
use crate::linalg::scalar::int;
use crate::linalg::{kernel_basis, permute_factors, rank, solve, LinearMap, SVec, Space};

/// Bimodule and bicomodule over a bialgebra `B` with the four mixed
/// compatibilities between actions and coactions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tetramodule {
    base: Bialgebra,
    space: Space,
    ml: LinearMap,
    mr: LinearMap,
    dl: LinearMap,
    dr: LinearMap,
}

pub(crate) fn cast(m: &LinearMap, dom: &Space, cod: &Space) -> LinearMap {
    m.with_spaces(dom, cod).expect("same dimensions")
}

/// Records a failure when two maps differ.
pub(crate) fn compare(out: &mut Vec<AxiomFailure>, axiom: &str, lhs: &LinearMap, rhs: &LinearMap) {
    if !lhs.same_entries(rhs) {
        let bad = (0..lhs.ncols()).find(|&j| lhs.col(j) != rhs.col(j)).unwrap_or(0);
        out.push(AxiomFailure { axiom: axiom.into(), detail: format!("differs on basis tensor {bad}") });
    }
}

fn shape(name: &str, m: &LinearMap, rows: usize, cols: usize) -> Result<(), Error> {
    if m.nrows() != rows || m.ncols() != cols {
        return Err(Error::Shape(format!("{name} must be {rows}×{cols}, found {}×{}", m.nrows(), m.ncols())));
    }
    Ok(())
}

impl Tetramodule {
    /// Checks shapes only; see [`Tetramodule::validate`].
    pub fn new(
        base: Bialgebra,
        space: Space,
        ml: LinearMap,
        mr: LinearMap,
        dl: LinearMap,
        dr: LinearMap,
    ) -> Result<Self, Error> {
        let (b, m) = (base.dim(), space.dim());
        shape("left action", &ml, m, b * m)?;
        shape("right action", &mr, m, m * b)?;
        shape("left coaction", &dl, b * m, m)?;
        shape("right coaction", &dr, m * b, m)?;
        let bm = base.space().tensor(&space);
        let mb = space.tensor(base.space());
        Ok(Tetramodule {
            ml: cast(&ml, &bm, &space),
            mr: cast(&mr, &mb, &space),
            dl: cast(&dl, &space, &bm),
            dr: cast(&dr, &space, &mb),
            base,
            space,
        })
    }

    pub fn base(&self) -> &Bialgebra {
        &self.base
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// `m_ℓ: B⊗M -> M`.
    pub fn ml(&self) -> &LinearMap {
        &self.ml
    }

    /// `m_r: M⊗B -> M`.
    pub fn mr(&self) -> &LinearMap {
        &self.mr
    }

    /// `Δ_ℓ: M -> B⊗M`.
    pub fn dl(&self) -> &LinearMap {
        &self.dl
    }

    /// `Δ_r: M -> M⊗B`.
    pub fn dr(&self) -> &LinearMap {
        &self.dr
    }

    pub fn identity(&self) -> LinearMap {
        LinearMap::identity(&self.space)
    }

    /// The same data with the structure maps replaced (shapes rechecked).
    pub fn with_structure(&self, ml: LinearMap, mr: LinearMap, dl: LinearMap, dr: LinearMap) -> Result<Self, Error> {
        Tetramodule::new(self.base.clone(), self.space.clone(), ml, mr, dl, dr)
    }

    /// Every failed identity; empty for a tetramodule.
    pub fn validate(&self) -> Vec<AxiomFailure> {
        let mut out = Vec::new();
        let b = &self.base;
        let (bs, ms) = (b.space(), &self.space);
        let (ib, im) = (b.identity(), self.identity());
        let (mul, delta) = (b.m(), b.delta());
        let (eta, eps) = (b.unit_map(), b.counit());
        let (ml, mr, dl, dr) = (&self.ml, &self.mr, &self.dl, &self.dr);
        let mut check = |axiom: &str, lhs: LinearMap, rhs: LinearMap| compare(&mut out, axiom, &lhs, &rhs);

        check(
            "left action associative",
            ml.compose_unchecked(&mul.kron(&im)),
            ml.compose_unchecked(&ib.kron(ml)),
        );
        check("left action unital", ml.compose_unchecked(&eta.kron(&im)), im.clone());
        check(
            "right action associative",
            mr.compose_unchecked(&mr.kron(&ib)),
            mr.compose_unchecked(&im.kron(mul)),
        );
        check("right action unital", mr.compose_unchecked(&im.kron(&eta)), im.clone());
        check("actions commute", mr.compose_unchecked(&ml.kron(&ib)), ml.compose_unchecked(&ib.kron(mr)));

        check(
            "left coaction coassociative",
            delta.kron(&im).compose_unchecked(dl),
            ib.kron(dl).compose_unchecked(dl),
        );
        check("left coaction counital", eps.kron(&im).compose_unchecked(dl), im.clone());
        check(
            "right coaction coassociative",
            dr.kron(&ib).compose_unchecked(dr),
            im.kron(delta).compose_unchecked(dr),
        );
        check("right coaction counital", im.kron(eps).compose_unchecked(dr), im.clone());
        check("coactions commute", dl.kron(&ib).compose_unchecked(dr), ib.kron(dr).compose_unchecked(dl));

        // Δ_ℓ(a·m) = a₁m₋₁ ⊗ a₂m₀
        let p = permute_factors(&[bs, bs, bs, ms], &[0, 2, 1, 3]);
        check(
            "left coaction of left action",
            dl.compose_unchecked(ml),
            mul.kron(ml).compose_unchecked(&p).compose_unchecked(&delta.kron(dl)),
        );
        // Δ_ℓ(m·a) = m₋₁a₁ ⊗ m₀a₂
        let p = permute_factors(&[bs, ms, bs, bs], &[0, 2, 1, 3]);
        check(
            "left coaction of right action",
            dl.compose_unchecked(mr),
            mul.kron(mr).compose_unchecked(&p).compose_unchecked(&dl.kron(delta)),
        );
        // Δ_r(a·m) = a₁m₀ ⊗ a₂m₁
        let p = permute_factors(&[bs, bs, ms, bs], &[0, 2, 1, 3]);
        check(
            "right coaction of left action",
            dr.compose_unchecked(ml),
            ml.kron(mul).compose_unchecked(&p).compose_unchecked(&delta.kron(dr)),
        );
        // Δ_r(m·a) = m₀a₁ ⊗ m₁a₂
        let p = permute_factors(&[ms, bs, bs, bs], &[0, 2, 1, 3]);
        check(
            "right coaction of right action",
            dr.compose_unchecked(mr),
            mr.kron(mul).compose_unchecked(&p).compose_unchecked(&dr.kron(delta)),
        );
        out
    }

    /// Failures of `f: self -> other` to commute with the four structures.
    pub fn morphism_failures(&self, f: &LinearMap, other: &Tetramodule) -> Vec<AxiomFailure> {
        let mut out = Vec::new();
        if f.ncols() != self.dim() || f.nrows() != other.dim() {
            out.push(AxiomFailure { axiom: "shape".into(), detail: format!("{}×{}", f.nrows(), f.ncols()) });
            return out;
        }
        for (axiom, lhs, rhs) in morphism_equations(self, other, f) {
            compare(&mut out, axiom, &lhs, &rhs);
        }
        out
    }

    /// `M ⊕ N` with componentwise structure.
    pub fn direct_sum(&self, other: &Tetramodule) -> Result<Tetramodule, Error> {
        if self.base != other.base {
            return Err(Error::Invalid("direct sum needs a common base".into()));
        }
        let space = self.space.direct_sum(&other.space, ("L:", "R:"));
        let i1 = LinearMap::from_fn(&self.space, &space, SVec::unit);
        let i2 = LinearMap::from_fn(&other.space, &space, |j| SVec::unit(self.dim() + j));
        let (p1, p2) = (i1.transpose(), i2.transpose());
        let ib = self.base.identity();
        let both = |f: &LinearMap, g: &LinearMap, pre: [LinearMap; 2], post: [LinearMap; 2]| {
            post[0]
                .compose_unchecked(f)
                .compose_unchecked(&pre[0])
                .add(&post[1].compose_unchecked(g).compose_unchecked(&pre[1]))
                .expect("same shape")
        };
        let ml = both(&self.ml, &other.ml, [ib.kron(&p1), ib.kron(&p2)], [i1.clone(), i2.clone()]);
        let mr = both(&self.mr, &other.mr, [p1.kron(&ib), p2.kron(&ib)], [i1.clone(), i2.clone()]);
        let dl = both(&self.dl, &other.dl, [p1.clone(), p2.clone()], [ib.kron(&i1), ib.kron(&i2)]);
        let dr = both(&self.dr, &other.dr, [p1, p2], [i1.kron(&ib), i2.kron(&ib)]);
        Tetramodule::new(self.base.clone(), space, ml, mr, dl, dr)
    }

    /// The sub-tetramodule carried by the image of an injective `inclusion: S -> M`;
    /// errors unless the image is closed under all four structures.
    pub fn restrict(&self, inclusion: &LinearMap) -> Result<Tetramodule, Error> {
        let sub = inclusion.domain().clone();
        let ib = self.base.identity();
        let lift = |f: &LinearMap, pre: &LinearMap, post_incl: &LinearMap, name: &str| -> Result<LinearMap, Error> {
            let img = f.compose_unchecked(pre);
            let cols = img
                .cols()
                .iter()
                .map(|c| solve(post_incl, c).ok_or_else(|| Error::Invalid(format!("subspace not closed under {name}"))))
                .collect::<Result<Vec<_>, _>>()?;
            LinearMap::new(pre.domain().clone(), post_incl.domain().clone(), cols)
        };
        if inclusion.nrows() != self.dim() || !kernel_basis(inclusion).is_empty() {
            return Err(Error::Invalid("inclusion is not injective".into()));
        }
        let ml = lift(&self.ml, &ib.kron(inclusion), inclusion, "the left action")?;
        let mr = lift(&self.mr, &inclusion.kron(&ib), inclusion, "the right action")?;
        let dl = lift(&self.dl, inclusion, &ib.kron(inclusion), "the left coaction")?;
        let dr = lift(&self.dr, inclusion, &inclusion.kron(&ib), "the right coaction")?;
        Tetramodule::new(self.base.clone(), sub, ml, mr, dl, dr)
    }
}

/// The four linear equations saying `f: m -> n` is a morphism, as (lhs, rhs) pairs.
fn morphism_equations(m: &Tetramodule, n: &Tetramodule, f: &LinearMap) -> Vec<(&'static str, LinearMap, LinearMap)> {
    let ib = m.base.identity();
    vec![
        ("left action", f.compose_unchecked(&m.ml), n.ml.compose_unchecked(&ib.kron(f))),
        ("right action", f.compose_unchecked(&m.mr), n.mr.compose_unchecked(&f.kron(&ib))),
        ("left coaction", ib.kron(f).compose_unchecked(&m.dl), n.dl.compose_unchecked(f)),
        ("right coaction", f.kron(&ib).compose_unchecked(&m.dr), n.dr.compose_unchecked(f)),
    ]
}

/// A basis of the space of tetramodule morphisms `m -> n`.
pub fn tetra_homs(m: &Tetramodule, n: &Tetramodule) -> Result<Vec<LinearMap>, Error> {
    if m.base != n.base {
        return Err(Error::Invalid("morphisms need a common base".into()));
    }
    let (dm, dn) = (m.dim(), n.dim());
    let unknowns = Space::numbered("f", dm * dn);
    let unit = |u: usize| LinearMap::from_fn(&m.space, &n.space, |j| if j == u / dn { SVec::unit(u % dn) } else { SVec::new() });
    // column u: all four defects of the elementary matrix u, flattened
    let mut cols = Vec::with_capacity(dm * dn);
    let mut rows = 0;
    for u in 0..dm * dn {
        let e = unit(u);
        let mut entries = Vec::new();
        let mut off = 0;
        for (_, lhs, rhs) in morphism_equations(m, n, &e) {
            let d = lhs.sub(&rhs).expect("same shape");
            for (j, c) in d.cols().iter().enumerate() {
                for (i, x) in c.entries() {
                    entries.push((off + j * d.nrows() + i, x.clone()));
                }
            }
            off += d.nrows() * d.ncols();
        }
        rows = off;
        cols.push(SVec::from_pairs(entries));
    }
    let system = LinearMap::new(unknowns, Space::numbered("eq", rows), cols)?;
    Ok(kernel_basis(&system)
        .into_iter()
        .map(|v| {
            let mut mcols = vec![Vec::new(); dm];
            for (u, x) in v.entries() {
                mcols[u / dn].push((u % dn, x.clone()));
            }
            LinearMap::from_cols(m.space.clone(), n.space.clone(), mcols.into_iter().map(SVec::from_pairs).collect())
        })
        .collect())
}

/// `B` with `m_ℓ = m_r = m` and `Δ_ℓ = Δ_r = Δ`.
pub fn regular_tetramodule(b: &Bialgebra) -> Tetramodule {
    Tetramodule::new(b.clone(), b.space().clone(), b.m().clone(), b.m().clone(), b.delta().clone(), b.delta().clone())
        .expect("shapes")
}

/// `B ⊗ W ⊗ B` with actions on the outer factors and the diagonal coactions
/// `Δ_ℓ(x⊗w⊗y) = x₁y₁ ⊗ (x₂⊗w⊗y₂)`, `Δ_r(x⊗w⊗y) = (x₁⊗w⊗y₁) ⊗ x₂y₂`.
pub fn free_tetramodule(b: &Bialgebra, w: &Space) -> Tetramodule {
    let bs = b.space();
    let (ib, iw) = (b.identity(), LinearMap::identity(w));
    let space = Space::tensor_all(&[bs, w, bs]);
    let ml = LinearMap::kron_all(&[b.m(), &iw, &ib]);
    let mr = LinearMap::kron_all(&[&ib, &iw, b.m()]);
    let split = LinearMap::kron_all(&[b.delta(), &iw, b.delta()]);
    let dl = LinearMap::kron_all(&[b.m(), &ib, &iw, &ib])
        .compose_unchecked(&permute_factors(&[bs, bs, w, bs, bs], &[0, 3, 1, 2, 4]))
        .compose_unchecked(&split);
    let dr = LinearMap::kron_all(&[&ib, &iw, &ib, b.m()])
        .compose_unchecked(&permute_factors(&[bs, bs, w, bs, bs], &[0, 2, 3, 1, 4]))
        .compose_unchecked(&split);
    Tetramodule::new(b.clone(), space, ml, mr, dl, dr).expect("shapes")
}

pub fn validate_tetramodule(t: &Tetramodule) -> Vec<AxiomFailure> {
    t.validate()
}

/// Searches seeded integer combinations of a basis of tetramodule morphisms
/// `m -> n` for an invertible one. `None` means none of the attempts was
/// invertible (not a proof that no isomorphism exists).
pub fn find_isomorphism(m: &Tetramodule, n: &Tetramodule, attempts: usize, seed: u64) -> Result<Option<LinearMap>, Error> {
    if m.dim() != n.dim() {
        return Ok(None);
    }
    let homs = tetra_homs(m, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..attempts {
        let mut f = LinearMap::zero(&m.space, &n.space);
        for h in &homs {
            f = f.add_scaled(&int(rng.gen_range(-9..=9)), h)?;
        }
        if rank(&f) == m.dim() {
            return Ok(Some(f));
        }
    }
    Ok(None)
}
