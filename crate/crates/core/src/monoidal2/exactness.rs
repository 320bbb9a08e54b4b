use serde::Serialize;

use super::products::{internal_product, InternalProduct, Variant};
use crate::error::Error;
use crate::linalg::{kernel_basis, rank, solve, LinearMap, Mode, SVec, Space};
use crate::hopf::Bialgebra;
use crate::tetra::{free_tetramodule, regular_tetramodule, tetra_homs, Tetramodule};

/// `0 -> left --f--> middle --g--> right -> 0`.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub left: Tetramodule,
    pub middle: Tetramodule,
    pub right: Tetramodule,
    pub f: LinearMap,
    pub g: LinearMap,
}

impl ShortExactSequence {
    /// Every reason the data is not a short exact sequence of tetramodules.
    pub fn defects(&self) -> Vec<String> {
        let mut out = Vec::new();
        let (a, b, c) = (self.left.dim(), self.middle.dim(), self.right.dim());
        if self.f.ncols() != a || self.f.nrows() != b || self.g.ncols() != b || self.g.nrows() != c {
            out.push(format!("map shapes do not fit dimensions {a}, {b}, {c}"));
            return out;
        }
        for x in self.left.morphism_failures(&self.f, &self.middle) {
            out.push(format!("f does not preserve the {}", x.axiom));
        }
        for x in self.middle.morphism_failures(&self.g, &self.right) {
            out.push(format!("g does not preserve the {}", x.axiom));
        }
        let report = exactness_of(&self.f, &self.g);
        if !report.composite_zero {
            out.push("g ∘ f ≠ 0".into());
        }
        if report.rank_f != a {
            out.push(format!("f has rank {} on a space of dimension {a}", report.rank_f));
        }
        if report.rank_g != c {
            out.push(format!("g has rank {} onto a space of dimension {c}", report.rank_g));
        }
        if report.rank_f + report.rank_g != b {
            out.push(format!("image of f ≠ kernel of g (ranks {} + {} ≠ {b})", report.rank_f, report.rank_g));
        }
        out
    }

    /// A tetramodule section `s` of `g`, when one exists.
    pub fn splitting(&self) -> Result<Option<LinearMap>, Error> {
        let homs = tetra_homs(&self.right, &self.middle)?;
        let flat = |m: &LinearMap| {
            let rows = m.nrows();
            SVec::from_pairs(m.cols().iter().enumerate().flat_map(|(j, c)| c.entries().iter().map(move |(i, x)| (j * rows + i, x.clone()))))
        };
        let c = self.right.dim();
        let cols: Vec<SVec> = homs.iter().map(|h| flat(&self.g.compose(h).expect("shapes"))).collect();
        let system = LinearMap::new(Space::numbered("c", homs.len()), Space::numbered("e", c * c), cols)?;
        let Some(coeffs) = solve(&system, &flat(&LinearMap::identity(self.right.space()))) else {
            return Ok(None);
        };
        let mut s = LinearMap::zero(self.right.space(), self.middle.space());
        for (k, x) in coeffs.entries() {
            s = s.add_scaled(x, &homs[*k])?;
        }
        Ok(Some(s))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SequenceExactness {
    pub dims: (usize, usize, usize),
    pub rank_f: usize,
    pub rank_g: usize,
    pub composite_zero: bool,
    pub exact: bool,
}

fn exactness_of(f: &LinearMap, g: &LinearMap) -> SequenceExactness {
    let (a, b, c) = (f.ncols(), f.nrows(), g.nrows());
    let (rf, rg) = (rank(f), rank(g));
    let composite_zero = g.compose_unchecked(f).is_zero();
    SequenceExactness {
        dims: (a, b, c),
        rank_f: rf,
        rank_g: rg,
        composite_zero,
        exact: composite_zero && rf == a && rg == c && rf + rg == b,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    /// `(−) ⊗ᵥ N`.
    Left,
    /// `N ⊗ᵥ (−)`.
    Right,
}

#[derive(Clone, Debug, Serialize)]
pub struct SideReport {
    pub side: Side,
    pub maps_well_defined: bool,
    pub ill_defined_products: usize,
    pub sequence: SequenceExactness,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactnessReport {
    pub variant: Variant,
    pub sides: Vec<SideReport>,
    pub passed: bool,
}

/// The map `X ⊗ᵥ N -> Y ⊗ᵥ N` (or `N ⊗ᵥ X -> N ⊗ᵥ Y`) induced by `u: X -> Y`,
/// and whether it is compatible with the presentations.
fn induced(u: &LinearMap, side: Side, n: &Tetramodule, src: &InternalProduct, dst: &InternalProduct) -> (LinearMap, bool) {
    let ambient = match side {
        Side::Left => u.kron(&n.identity()),
        Side::Right => n.identity().kron(u),
    };
    let (s, d) = (&src.presentation, &dst.presentation);
    match s.mode {
        Mode::Coequalizer => {
            let map = d.structure.compose_unchecked(&ambient).compose_unchecked(&s.splitting);
            let ok = map.compose_unchecked(&s.structure).same_entries(&d.structure.compose_unchecked(&ambient));
            (map, ok)
        }
        Mode::Equalizer => {
            let map = d.splitting.compose_unchecked(&ambient).compose_unchecked(&s.structure);
            let ok = d.structure.compose_unchecked(&map).same_entries(&ambient.compose_unchecked(&s.structure));
            (map, ok)
        }
    }
}

/// Applies `(−) ⊗ᵥ N` and `N ⊗ᵥ (−)` to a verified short exact sequence and
/// checks the results with exact ranks.
pub fn exactness_check(n: &Tetramodule, ses: &ShortExactSequence, variant: Variant) -> Result<ExactnessReport, Error> {
    let defects = ses.defects();
    if !defects.is_empty() {
        return Err(Error::Invalid(format!("not a short exact sequence of tetramodules: {}", defects.join("; "))));
    }
    let mut sides = Vec::new();
    for side in [Side::Left, Side::Right] {
        let product = |t: &Tetramodule| match side {
            Side::Left => internal_product(t, n, variant),
            Side::Right => internal_product(n, t, variant),
        };
        let (pa, pb, pc) = (product(&ses.left)?, product(&ses.middle)?, product(&ses.right)?);
        let (f, okf) = induced(&ses.f, side, n, &pa, &pb);
        let (g, okg) = induced(&ses.g, side, n, &pb, &pc);
        let ill = pa.ill_defined.len() + pb.ill_defined.len() + pc.ill_defined.len();
        sides.push(SideReport { side, maps_well_defined: okf && okg, ill_defined_products: ill, sequence: exactness_of(&f, &g) });
    }
    let passed = sides.iter().all(|s| s.maps_well_defined && s.ill_defined_products == 0 && s.sequence.exact);
    Ok(ExactnessReport { variant, sides, passed })
}

/// `0 -> M -> M ⊕ M′ -> M′ -> 0`.
pub fn split_sequence(m: &Tetramodule, m2: &Tetramodule) -> Result<ShortExactSequence, Error> {
    let middle = m.direct_sum(m2)?;
    let a = m.dim();
    let f = LinearMap::from_fn(m.space(), middle.space(), SVec::unit);
    let g = LinearMap::from_fn(middle.space(), m2.space(), |j| if j >= a { SVec::unit(j - a) } else { SVec::new() });
    Ok(ShortExactSequence { left: m.clone(), middle, right: m2.clone(), f, g })
}

/// `0 -> ker g -> M -> N -> 0` for a surjective tetramodule morphism `g`.
pub fn kernel_sequence(m: &Tetramodule, n: &Tetramodule, g: &LinearMap) -> Result<ShortExactSequence, Error> {
    let ker = kernel_basis(g);
    let inc = LinearMap::new(Space::numbered("k", ker.len()), m.space().clone(), ker)?;
    let left = m.restrict(&inc)?;
    Ok(ShortExactSequence { left, middle: m.clone(), right: n.clone(), f: inc, g: g.clone() })
}

/// `0 -> ker μ -> F -> B -> 0` with `F` free on one generator and
/// `μ(x⊗w⊗y) = xy`; it does not split over Sweedler's algebra.
pub fn multiplication_sequence(b: &Bialgebra) -> Result<ShortExactSequence, Error> {
    let f = free_tetramodule(b, &Space::numbered("w", 1));
    let reg = regular_tetramodule(b);
    let n = b.dim();
    let mu = LinearMap::from_fn(f.space(), reg.space(), |j| b.mul(&SVec::unit(j / n), &SVec::unit(j % n)));
    kernel_sequence(&f, &reg, &mu)
}
