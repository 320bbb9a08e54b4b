use super::elim::{kernel_of_rows, Echelon};
use super::map::LinearMap;
use super::space::Space;
use super::vector::SVec;
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Equalizer,
    Coequalizer,
}

/// A subspace with its inclusion, or a quotient with its projection.
///
/// `structure` is the inclusion `E -> A` (equalizer) or projection `B -> Q`
/// (coequalizer). `splitting` is a one-sided inverse: a retraction `A -> E`
/// with `splitting ∘ structure = id`, or a section `Q -> B` with
/// `structure ∘ splitting = id`. Basis labels of the result are the labels of
/// the ambient basis vectors that represent it.
#[derive(Clone, Debug)]
pub struct SubQuotient {
    pub mode: Mode,
    pub space: Space,
    pub structure: LinearMap,
    pub splitting: LinearMap,
}

/// Equalizer `ker(f - g)` or coequalizer `codomain / im(f - g)`.
pub fn subquotient(f: &LinearMap, g: &LinearMap, mode: Mode) -> Result<SubQuotient, Error> {
    let diff = f.sub(g)?;
    Ok(match mode {
        Mode::Equalizer => kernel_of(&diff),
        Mode::Coequalizer => cokernel_of(&diff),
    })
}

/// Kernel of `m` with inclusion and retraction.
pub fn kernel_of(m: &LinearMap) -> SubQuotient {
    subspace_cut_out_by(m.domain(), &m.rows())
}

/// The subspace of `ambient` on which every equation (a covector row) vanishes.
pub fn subspace_cut_out_by(ambient: &Space, equations: &[SVec]) -> SubQuotient {
    let (free, basis) = kernel_of_rows(equations, ambient.dim());
    let space = Space::from_unique(free.iter().map(|&f| ambient.label(f).to_string()).collect());
    let inclusion = LinearMap::from_cols(space.clone(), ambient.clone(), basis);
    let mut pos = vec![None; ambient.dim()];
    for (k, &f) in free.iter().enumerate() {
        pos[f] = Some(k);
    }
    let retraction = LinearMap::from_fn(ambient, &space, |j| match pos[j] {
        Some(k) => SVec::unit(k),
        None => SVec::new(),
    });
    SubQuotient { mode: Mode::Equalizer, space, structure: inclusion, splitting: retraction }
}

/// Cokernel of `m` (its codomain modulo its image) with projection and section.
pub fn cokernel_of(m: &LinearMap) -> SubQuotient {
    quotient_by(m.codomain(), m.cols())
}

/// Quotient of `ambient` by the span of `relations`.
pub fn quotient_by(ambient: &Space, relations: &[SVec]) -> SubQuotient {
    let n = ambient.dim();
    let mut ech = Echelon::new();
    for r in relations {
        ech.push(r);
    }
    let rows = ech.reduced_basis();
    let mut is_pivot = vec![false; n];
    for r in &rows {
        is_pivot[r.entries()[0].0] = true;
    }
    let kept: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
    let mut pos = vec![usize::MAX; n];
    for (k, &j) in kept.iter().enumerate() {
        pos[j] = k;
    }
    let space = Space::from_unique(kept.iter().map(|&j| ambient.label(j).to_string()).collect());
    let mut cols: Vec<SVec> = (0..n).map(|j| if is_pivot[j] { SVec::new() } else { SVec::unit(pos[j]) }).collect();
    for r in &rows {
        let (c, p) = r.entries()[0].clone();
        cols[c] = SVec::from_pairs(r.entries()[1..].iter().map(|(f, a)| (pos[*f], -(a / &p))));
    }
    let projection = LinearMap::from_cols(ambient.clone(), space.clone(), cols);
    let section = LinearMap::from_fn(&space, ambient, |k| SVec::unit(kept[k]));
    SubQuotient { mode: Mode::Coequalizer, space, structure: projection, splitting: section }
}

impl SubQuotient {
    /// Map induced on subquotients by `f: ambient_self -> ambient_other`, assuming
    /// `f` is compatible (maps the subspace into the subspace, or relations into relations).
    pub fn induced(&self, f: &LinearMap, other: &SubQuotient) -> Result<LinearMap, Error> {
        match (self.mode, other.mode) {
            (Mode::Equalizer, Mode::Equalizer) => other.splitting.compose(&f.compose(&self.structure)?),
            (Mode::Coequalizer, Mode::Coequalizer) => other.structure.compose(&f.compose(&self.splitting)?),
            _ => Err(Error::Shape("induced map needs two subquotients of the same kind".into())),
        }
    }
}
