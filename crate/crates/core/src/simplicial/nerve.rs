use std::collections::BTreeMap;

use super::algebra::{DgAlgebra, TensorPower};
use super::fint::fint_homset;
use super::premonoid::LeinsterPreMonoid;
use crate::cochain::{tensor_complexes, CochainComplex, ComplexMap};
use crate::error::Error;
use crate::linalg::{LinearMap, SVec, Space};

/// The nerve `[n] ↦ A^{⊗n}` of a unital associative dg algebra, truncated at `nmax`.
pub fn leinster_nerve(a: &DgAlgebra, nmax: usize) -> Result<LeinsterPreMonoid, Error> {
    let failures = a.validate();
    if !failures.is_empty() {
        return Err(Error::Invalid(format!("not a unital associative dg algebra: {}", failures.join("; "))));
    }
    Ok(leinster_nerve_unchecked(a, nmax))
}

/// [`leinster_nerve`] without validating the algebra. Products of more than
/// two factors are bracketed from the left.
pub fn leinster_nerve_unchecked(a: &DgAlgebra, nmax: usize) -> LeinsterPreMonoid {
    let powers: Vec<TensorPower> = (0..=nmax).map(|n| TensorPower::new(a.complex(), n)).collect();
    let levels: Vec<CochainComplex> = powers.iter().map(|p| p.complex.clone()).collect();

    let mut action = BTreeMap::new();
    for m in 0..=nmax {
        for n in 0..=nmax {
            for f in fint_homset(m, n) {
                let (src, tgt) = (&powers[n], &powers[m]);
                let groups = f.groups();
                let map = ComplexMap::from_fn(&src.complex, &tgt.complex, |d| {
                    let cols = src.words[&d]
                        .iter()
                        .map(|w| {
                            let factors: Vec<(i64, SVec)> = groups
                                .iter()
                                .map(|g| {
                                    let mut deg = 0;
                                    let mut v = a.unit().clone();
                                    for l in &w[g.start - 1..g.end - 1] {
                                        v = a.mul(deg, &v, l.0, &SVec::unit(l.1));
                                        deg += l.0;
                                    }
                                    (deg, v)
                                })
                                .collect();
                            tgt.expand(&factors)
                        })
                        .collect();
                    LinearMap::new(src.complex.space(d), tgt.complex.space(d), cols).expect("word map shape")
                })
                .expect("products of factors commute with d");
                action.insert(f, map);
            }
        }
    }

    let mut colax = BTreeMap::new();
    for m in 1..nmax {
        for n in 1..=nmax - m {
            let t = tensor_complexes(&levels[m], &levels[n]);
            let src = &powers[m + n];
            let beta = ComplexMap::from_fn(&src.complex, &t.complex, |d| {
                let cols = src.words[&d]
                    .iter()
                    .map(|w| {
                        let (l, r) = (powers[m].index[&w[..m]], powers[n].index[&w[m..]]);
                        SVec::unit(t.index(l.0, l.1, r.0, r.1).expect("block"))
                    })
                    .collect();
                LinearMap::new(src.complex.space(d), t.complex.space(d), cols).expect("split shape")
            })
            .expect("splitting words is a chain map");
            colax.insert((m, n), beta);
        }
    }

    let ground = CochainComplex::concentrated(0, Space::ground());
    let alpha = ComplexMap::from_fn(&levels[0], &ground, |_| LinearMap::from_fn(&levels[0].space(0), &Space::ground(), |_| SVec::unit(0)))
        .expect("X_0 is the ground field");
    LeinsterPreMonoid { levels, algebras: None, action, colax, alpha }
}
