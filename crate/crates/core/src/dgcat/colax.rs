use std::sync::Arc;

use serde::Serialize;

use super::category::{DgCat, Elem};
use super::functor::{hom_component, DgFunctor};
use crate::cochain::ComplexMap;
use super::quotient::{generalized_quotient, Chain, QuotientCategory, QuotientOptions};
use super::tensor::{tensor_pcat, PCat, TensorCategory};
use crate::error::Error;
use crate::linalg::scalar::{one, sign};
use crate::linalg::{SVec, Scalar};

/// Collapses a word `f_n ε^{S_n}_{Y_n} … ε^{S_1}_{Y_1} f_0` of a quotient into
/// a vector, composing neighbours around every `ε^∅ = id`.
pub fn word_vec(q: &QuotientCategory, x: usize, y: usize, morphs: &[Elem], objects: &[usize], marks: &[u64]) -> SVec {
    let base = q.base();
    let mut terms: Vec<(Chain, Scalar)> = vec![(Chain::plain(morphs[0]), one())];
    for k in 1..morphs.len() {
        let (yk, next) = (objects[k - 1], if k == morphs.len() - 1 { y } else { objects[k] });
        if marks[k - 1] != 0 {
            for (c, _) in terms.iter_mut() {
                c.objects.push(yk);
                c.marks.push(marks[k - 1]);
                c.morphs.push(morphs[k]);
            }
            continue;
        }
        let mut merged = Vec::new();
        for (c, s) in terms {
            let last = *c.morphs.last().expect("nonempty");
            let src = c.objects.last().copied().unwrap_or(x);
            let v = base.compose(src, yk, next, morphs[k], last);
            for (i, w) in v.entries() {
                let mut c2 = c.clone();
                *c2.morphs.last_mut().expect("nonempty") = (last.0 + morphs[k].0, *i);
                merged.push((c2, &s * w));
            }
        }
        terms = merged;
    }
    q.chains_to_vec(x, y, terms)
}

/// `β: Dr(x ⊗ y) -> Dr(x) ⊗ Dr(y)` on basis chains:
/// `a ⊗ b ↦ a ⊗ b` and `ε^S_{(c,d)} ↦ (−1)^{|S_C||S_D|} ε^{S_C}_c ⊗ ε^{S_D}_d`,
/// extended multiplicatively with Koszul signs.
pub fn colax_functor(
    source: &QuotientCategory,
    left: &Arc<QuotientCategory>,
    right: &Arc<QuotientCategory>,
    target: &TensorCategory,
) -> Result<DgFunctor, Error> {
    let decode = TensorCategory::new(left.base().clone(), right.base().clone());
    let same_base = decode.objects() == source.objects()
        && (0..source.objects().len())
            .all(|x| (0..source.objects().len()).all(|y| decode.hom(x, y) == source.base().hom(x, y)));
    if !same_base || target.objects() != source.objects() {
        return Err(Error::Invalid("the source base is not the tensor product of the factor bases".into()));
    }
    let n = source.objects().len();
    DgFunctor::from_basis(source, target, (0..n).collect(), |x, y, e| colax_image(source, left, right, target, &decode, x, y, e))
}

/// The component of [`colax_functor`] on `Hom(x, y)` alone.
pub fn colax_hom_map(
    source: &QuotientCategory,
    left: &Arc<QuotientCategory>,
    right: &Arc<QuotientCategory>,
    target: &TensorCategory,
    (x, y): (usize, usize),
) -> Result<ComplexMap, Error> {
    let decode = TensorCategory::new(left.base().clone(), right.base().clone());
    if decode.objects() != source.objects() || target.objects() != source.objects() || decode.hom(x, y) != source.base().hom(x, y) {
        return Err(Error::Invalid("the source base is not the tensor product of the factor bases".into()));
    }
    hom_component(source, target, (x, y), (x, y), |e| colax_image(source, left, right, target, &decode, x, y, e))
}

#[allow(clippy::too_many_arguments)]
fn colax_image(
    source: &QuotientCategory,
    left: &QuotientCategory,
    right: &QuotientCategory,
    target: &TensorCategory,
    decode: &TensorCategory,
    x: usize,
    y: usize,
    e: Elem,
) -> SVec {
    let kx = left.marked().len() as u32;
    let low = (1u64 << kx) - 1;
    let c = source.chain(x, y, e);
    let (mut lm, mut rm) = (Vec::new(), Vec::new());
    let (mut lo, mut ro) = (Vec::new(), Vec::new());
    let (mut ls, mut rs) = (Vec::new(), Vec::new());
    // letter degrees in word order, left to right
    let mut letters: Vec<(i64, i64)> = Vec::new();
    let mut coeff = one();
    for k in (0..c.morphs.len()).rev() {
        let (a, b) = (c.object(k, x, y), c.object(k + 1, x, y));
        let (u, w) = decode.tensor_hom(a, b).pairs[&c.morphs[k].0][c.morphs[k].1];
        lm.push(u);
        rm.push(w);
        letters.push((u.0, w.0));
        if k == 0 {
            break;
        }
        let s = c.marks[k - 1];
        let (sc, sd) = (s & low, s >> kx);
        let (p, q) = (sc.count_ones() as i64, sd.count_ones() as i64);
        coeff *= sign(p * q);
        let (oc, od) = decode.split(c.objects[k - 1]);
        lo.push(oc);
        ro.push(od);
        ls.push(sc);
        rs.push(sd);
        letters.push((-p, -q));
    }
    let mut q_left = 0i64;
    let mut exponent = 0i64;
    for &(p, q) in &letters {
        exponent += p * q_left;
        q_left += q;
    }
    coeff *= sign(exponent);
    for v in [&mut lm, &mut rm] {
        v.reverse();
    }
    for v in [&mut lo, &mut ro] {
        v.reverse();
    }
    for v in [&mut ls, &mut rs] {
        v.reverse();
    }
    let ((xa, xb), (ya, yb)) = (decode.split(x), decode.split(y));
    let lv = word_vec(left, xa, ya, &lm, &lo, &ls);
    let rv = word_vec(right, xb, yb, &rm, &ro, &rs);
    let (pl, pr) = (letters.iter().map(|l| l.0).sum::<i64>(), letters.iter().map(|l| l.1).sum::<i64>());
    target.pair_vec(x, y, (pl, &lv), (pr, &rv)).scale(&coeff)
}

/// The colax comparison for two marked categories, with its categories.
pub struct ColaxBeta {
    pub source: Arc<QuotientCategory>,
    pub left: Arc<QuotientCategory>,
    pub right: Arc<QuotientCategory>,
    pub target: Arc<TensorCategory>,
    pub functor: DgFunctor,
}

pub fn colax_beta(x: &PCat, y: &PCat, opts: QuotientOptions) -> Result<ColaxBeta, Error> {
    let left = Arc::new(generalized_quotient(x, opts)?);
    let right = Arc::new(generalized_quotient(y, opts)?);
    let source = Arc::new(generalized_quotient(&tensor_pcat(x, y)?, opts)?);
    let target = Arc::new(TensorCategory::new(left.clone(), right.clone()));
    let functor = colax_functor(&source, &left, &right, &target)?;
    Ok(ColaxBeta { source, left, right, target, functor })
}

/// `id_C` as a functor.
pub fn identity_functor(c: &dyn DgCat) -> Result<DgFunctor, Error> {
    DgFunctor::from_basis(c, c, (0..c.objects().len()).collect(), |_, _, e| SVec::unit(e.1))
}

/// `F ⊗ G: C ⊗ D -> C' ⊗ D'`.
pub fn tensor_functor(
    f: &DgFunctor,
    g: &DgFunctor,
    source: &TensorCategory,
    target: &TensorCategory,
) -> Result<DgFunctor, Error> {
    let n = source.objects().len();
    let object_map = (0..n)
        .map(|x| {
            let (a, b) = source.split(x);
            target.join(f.object_map()[a], g.object_map()[b])
        })
        .collect();
    DgFunctor::from_basis(source, target, object_map, |x, y, e| {
        let ((a, b), (a2, b2)) = (source.split(x), source.split(y));
        let (u, w) = source.tensor_hom(x, y).pairs[&e.0][e.1];
        let (fu, gw) = (f.apply(a, a2, u), g.apply(b, b2, w));
        let (fx, fy) = (
            target.join(f.object_map()[a], g.object_map()[b]),
            target.join(f.object_map()[a2], g.object_map()[b2]),
        );
        target.pair_vec(fx, fy, (u.0, &fu), (w.0, &gw))
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CoassociativityReport {
    pub objects: usize,
    pub mismatched_homs: Vec<(String, String)>,
    pub passed: bool,
}

/// Compares `(β_{x,y} ⊗ id) ∘ β_{x⊗y,z}` with `(id ⊗ β_{y,z}) ∘ β_{x,y⊗z}`
/// on every Hom of `Dr(x ⊗ y ⊗ z)`.
pub fn colax_coassociativity(x: &PCat, y: &PCat, z: &PCat, opts: QuotientOptions) -> Result<CoassociativityReport, Error> {
    let q = |p: &PCat| generalized_quotient(p, opts).map(Arc::new);
    let (qx, qy, qz) = (q(x)?, q(y)?, q(z)?);
    let xy = tensor_pcat(x, y)?;
    let yz = tensor_pcat(y, z)?;
    let (qxy, qyz) = (q(&xy)?, q(&yz)?);
    let xyz = tensor_pcat(&xy, z)?;
    let x_yz = tensor_pcat(x, &yz)?;
    if !xyz.category.same_data(&x_yz.category) || xyz.marked != x_yz.marked {
        return Err(Error::Invalid("the two bracketings of the triple tensor product differ".into()));
    }
    let qxyz = q(&xyz)?;

    let dyn_arc = |a: &Arc<QuotientCategory>| -> Arc<dyn DgCat> { a.clone() };
    // (xy)z path
    let t_xy_z = TensorCategory::new(dyn_arc(&qxy), dyn_arc(&qz));
    let beta_xy_z = colax_functor(&qxyz, &qxy, &qz, &t_xy_z)?;
    let t_xy = Arc::new(TensorCategory::new(dyn_arc(&qx), dyn_arc(&qy)));
    let beta_xy = colax_functor(&qxy, &qx, &qy, &t_xy)?;
    let t3a = TensorCategory::new(t_xy.clone(), dyn_arc(&qz));
    let path_a = tensor_functor(&beta_xy, &identity_functor(qz.as_ref())?, &t_xy_z, &t3a)?.compose(&beta_xy_z)?;
    // x(yz) path
    let t_x_yz = TensorCategory::new(dyn_arc(&qx), dyn_arc(&qyz));
    let beta_x_yz = colax_functor(&qxyz, &qx, &qyz, &t_x_yz)?;
    let t_yz = Arc::new(TensorCategory::new(dyn_arc(&qy), dyn_arc(&qz)));
    let beta_yz = colax_functor(&qyz, &qy, &qz, &t_yz)?;
    let t3b = TensorCategory::new(dyn_arc(&qx), t_yz.clone());
    let path_b = tensor_functor(&identity_functor(qx.as_ref())?, &beta_yz, &t_x_yz, &t3b)?.compose(&beta_x_yz)?;

    let n = qxyz.objects().len();
    let mut mismatched_homs = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let (fa, fb) = (path_a.hom(a, b), path_b.hom(a, b));
            let same_complex = fa.target().components() == fb.target().components();
            if !same_complex || !fa.same_layers(fb) || path_a.object_map()[a] != path_b.object_map()[a] {
                mismatched_homs.push((qxyz.objects()[a].clone(), qxyz.objects()[b].clone()));
            }
        }
    }
    let passed = mismatched_homs.is_empty();
    Ok(CoassociativityReport { objects: n, mismatched_homs, passed })
}
