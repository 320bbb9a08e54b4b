use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::complex::CochainComplex;
use super::map::ComplexMap;
use super::ops::{tensor_complexes, tensor_maps, TensorComplex};
use crate::error::Error;
use crate::linalg::scalar::{int, sign};
use crate::linalg::{LinearMap, SVec, Space};

/// Exterior algebra complex on named generators: `Λ^ℓ` in degree `−ℓ`,
/// `d(e_{i1}∧…∧e_{iℓ}) = Σ_s (−1)^{s−1} e_{i1}∧…ê_{is}…∧e_{iℓ}`.
#[derive(Clone, Debug)]
pub struct Lambda {
    pub names: Vec<String>,
    pub complex: CochainComplex,
    /// Subsets (as bit masks) in basis order, per exterior degree `ℓ`.
    subsets: Vec<Vec<u64>>,
    position: HashMap<u64, usize>,
}

impl Lambda {
    pub fn new(names: &[&str]) -> Result<Lambda, Error> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Invalid("an exterior complex needs at least one generator".into()));
        }
        if n > 63 {
            return Err(Error::Invalid("too many generators".into()));
        }
        let mut subsets = vec![Vec::new(); n + 1];
        for mask in 0u64..(1u64 << n) {
            subsets[mask.count_ones() as usize].push(mask);
        }
        let mut position = HashMap::new();
        for level in &subsets {
            for (k, m) in level.iter().enumerate() {
                position.insert(*m, k);
            }
        }
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let label = |m: u64| -> String {
            if m == 0 {
                "1".to_string()
            } else {
                (0..n).filter(|i| m >> i & 1 == 1).map(|i| names[i].as_str()).collect::<Vec<_>>().join("∧")
            }
        };
        let spaces: BTreeMap<i64, Space> = subsets
            .iter()
            .enumerate()
            .map(|(l, level)| (-(l as i64), Space::new(level.iter().map(|m| label(*m)).collect())))
            .map(|(d, s)| s.map(|s| (d, s)))
            .collect::<Result<_, Error>>()?;
        let complex = CochainComplex::from_fn(spaces, |deg, dom, cod| {
            let l = (-deg) as usize;
            LinearMap::from_fn(dom, cod, |j| {
                let m = subsets[l][j];
                let members: Vec<usize> = (0..n).filter(|i| m >> i & 1 == 1).collect();
                SVec::from_pairs(
                    members.iter().enumerate().map(|(s, i)| (position[&(m & !(1 << i))], sign(s as i64))),
                )
            })
        })?;
        Ok(Lambda { names, complex, subsets, position })
    }

    /// `Λ•(V)` for `dim V = n` with generators `e1..en`.
    pub fn standard(n: usize) -> Result<Lambda, Error> {
        let names: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
        Lambda::new(&names.iter().map(String::as_str).collect::<Vec<_>>())
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    /// Degree and basis position of the wedge of the generators in `mask`.
    pub fn locate(&self, mask: u64) -> (i64, usize) {
        (-(mask.count_ones() as i64), self.position[&mask])
    }

    pub fn subset(&self, degree: i64, k: usize) -> u64 {
        self.subsets[(-degree) as usize][k]
    }

    /// `h(ω) = (e1 + … + en) ∧ ω`, as maps `Λ^ℓ -> Λ^{ℓ+1}` keyed by source degree.
    pub fn homotopy(&self) -> BTreeMap<i64, LinearMap> {
        let n = self.rank();
        let mut out = BTreeMap::new();
        for l in 0..n {
            let deg = -(l as i64);
            let (dom, cod) = (self.complex.space(deg), self.complex.space(deg - 1));
            out.insert(
                deg,
                LinearMap::from_fn(&dom, &cod, |j| {
                    let m = self.subsets[l][j];
                    SVec::from_pairs((0..n).filter(|i| m >> i & 1 == 0).map(|i| {
                        let before = (m & ((1u64 << i) - 1)).count_ones();
                        (self.position[&(m | 1 << i)], sign(before as i64))
                    }))
                }),
            );
        }
        out
    }
}

/// `Λ•(V)` with `dim V = n`.
pub fn lambda_complex(n: usize) -> Result<CochainComplex, Error> {
    Ok(Lambda::standard(n)?.complex)
}

/// The comparison maps between exterior complexes and the commutation check
/// `σ ∘ (Ψ_V ⊗ Ψ_W) ∘ β_{V,W} = Ψ_{V⊕W}`.
#[derive(Clone, Debug)]
pub struct LambdaMaps {
    pub sum: Lambda,
    pub left: Lambda,
    pub right: Lambda,
    pub product: TensorComplex,
    pub beta: ComplexMap,
    pub psi_left: ComplexMap,
    pub psi_right: ComplexMap,
    pub psi_sum: ComplexMap,
    pub sigma: ComplexMap,
    pub report: LambdaReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct LambdaReport {
    pub beta_quasi_iso: bool,
    pub psi_quasi_iso: bool,
    pub sigma_quasi_iso: bool,
    pub triangle_commutes: bool,
}

/// `Ψ: Λ•(V) -> Λ•(U)` onto a one-generator complex: `1 ↦ 1`, `e_i ↦ e`, higher wedges to 0.
pub fn psi_map(src: &Lambda, tgt: &Lambda) -> Result<ComplexMap, Error> {
    if tgt.rank() != 1 {
        return Err(Error::Invalid("Ψ targets a one-generator exterior complex".into()));
    }
    ComplexMap::from_fn(&src.complex, &tgt.complex, |deg| {
        let (dom, cod) = (src.complex.space(deg), tgt.complex.space(deg));
        match deg {
            0 | -1 => LinearMap::from_fn(&dom, &cod, |_| SVec::unit(0)),
            _ => LinearMap::zero(&dom, &cod),
        }
    })
}

pub fn lambda_maps(n: usize, m: usize) -> Result<LambdaMaps, Error> {
    let vn: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let wn: Vec<String> = (1..=m).map(|i| format!("w{i}")).collect();
    let all: Vec<&str> = vn.iter().chain(wn.iter()).map(String::as_str).collect();
    let sum = Lambda::new(&all)?;
    let left = Lambda::new(&vn.iter().map(String::as_str).collect::<Vec<_>>())?;
    let right = Lambda::new(&wn.iter().map(String::as_str).collect::<Vec<_>>())?;
    let product = tensor_complexes(&left.complex, &right.complex);

    // β(e_S) = e_{S∩V} ⊗ e_{S∩W}; the V generators precede the W generators,
    // so the unshuffle sign is always +1.
    let vmask = (1u64 << n) - 1;
    let beta = ComplexMap::from_fn(&sum.complex, &product.complex, |deg| {
        let (dom, cod) = (sum.complex.space(deg), product.complex.space(deg));
        LinearMap::from_fn(&dom, &cod, |j| {
            let s = sum.subset(deg, j);
            let (p, i) = left.locate(s & vmask);
            let (q, k) = right.locate(s >> n);
            SVec::from_pairs([(product.index(p, i, q, k).expect("block"), int(1))])
        })
    })?;

    let u = Lambda::new(&["e"])?;
    let u1 = Lambda::new(&["e'"])?;
    let u2 = Lambda::new(&["e''"])?;
    let psi_left = psi_map(&left, &u)?;
    let psi_right = psi_map(&right, &u1)?;
    let psi_sum = psi_map(&sum, &u2)?;
    let uu = tensor_complexes(&u.complex, &u1.complex);
    // σ(1⊗1) = 1, σ(e⊗1) = σ(1⊗e') = e'', σ(e⊗e') = 0.
    let sigma = ComplexMap::from_fn(&uu.complex, &u2.complex, |deg| {
        let (dom, cod) = (uu.complex.space(deg), u2.complex.space(deg));
        match deg {
            0 | -1 => LinearMap::from_fn(&dom, &cod, |_| SVec::unit(0)),
            _ => LinearMap::zero(&dom, &cod),
        }
    })?;
    let psi_pair = tensor_maps(&psi_left, &psi_right, &product, &uu)?;
    let around = sigma.compose(&psi_pair)?.compose(&beta)?;
    let report = LambdaReport {
        beta_quasi_iso: beta.is_quasi_iso(),
        psi_quasi_iso: psi_left.is_quasi_iso() && psi_right.is_quasi_iso() && psi_sum.is_quasi_iso(),
        sigma_quasi_iso: sigma.is_quasi_iso(),
        triangle_commutes: around.same_layers(&psi_sum),
    };
    Ok(LambdaMaps { sum, left, right, product, beta, psi_left, psi_right, psi_sum, sigma, report })
}
