use super::category::{small_complex, DgCategory, DgCategoryBuilder};
use super::tensor::PCat;
use crate::linalg::scalar::int;

/// `{X, Y}` with `Hom(X, Y) = k·f` in degree 0 and `Hom(Y, X) = 0`.
pub fn two_object_example() -> DgCategory {
    let mut b = DgCategoryBuilder::new(vec!["X".into(), "Y".into()]);
    b.set_hom(0, 0, small_complex(&[(0, "1_X")], &[]).expect("complex"));
    b.set_hom(1, 1, small_complex(&[(0, "1_Y")], &[]).expect("complex"));
    b.set_hom(0, 1, small_complex(&[(0, "f")], &[]).expect("complex"));
    b.identity_units(&[0, 0]);
    b.build().expect("two-object example")
}

/// The two-object example with `Y` marked `copies` times.
pub fn two_object_pcat(copies: usize) -> PCat {
    PCat::new(two_object_example(), vec![vec![1]; copies]).expect("marks")
}

/// One object with `End = span{1, u, v}`, `|u| = −1`, `du = v`, all products of
/// `u` and `v` zero. Quasi-isomorphic to `k`.
pub fn contractible_pair_algebra() -> DgCategory {
    let mut b = DgCategoryBuilder::new(vec!["*".into()]);
    b.set_hom(0, 0, small_complex(&[(-1, "u"), (0, "1"), (0, "v")], &[(-1, 0, 1, int(1))]).expect("complex"));
    b.identity_units(&[0]);
    b.build().expect("contractible pair algebra")
}
