//! Shared fixtures for unit tests.

use crate::algebra::Algebra;
use crate::field::FieldSpec;
use crate::linalg::Tensor3;
use crate::products::MatchedPair;

/// The 3-dimensional algebra with [e1,e3] = e2, [e3,e3] = e1.
pub fn three_dim(field: FieldSpec) -> Algebra {
    Algebra::from_int_entries(field, 3, &[(0, 2, 1, 1), (2, 2, 0, 1)]).unwrap()
}

/// sl2 with basis (e, f, h): [e,f] = h, [h,e] = 2e, [h,f] = -2f.
pub fn sl2(field: FieldSpec) -> Algebra {
    Algebra::from_int_entries(
        field,
        3,
        &[
            (0, 1, 2, 1),
            (1, 0, 2, -1),
            (2, 0, 0, 2),
            (0, 2, 0, -2),
            (2, 1, 1, -2),
            (1, 2, 1, 2),
        ],
    )
    .unwrap()
}

/// The 2-dim Lie algebra [e2,e1] = e2 = -[e1,e2].
pub fn two_dim_lie(field: FieldSpec) -> Algebra {
    Algebra::from_int_entries(field, 2, &[(1, 0, 1, 1), (0, 1, 1, -1)]).unwrap()
}

/// The 2-dim Leibniz algebra k: [F1,F1] = F2, [F2,F1] = F2.
pub fn k_algebra(field: FieldSpec) -> Algebra {
    Algebra::from_int_entries(field, 2, &[(0, 0, 1, 1), (1, 0, 1, 1)]).unwrap()
}

/// The matched pair of the 2-dim Lie algebra acting on a 2-dim abelian
/// space: f1 <| e1 = f1, f2 <| e1 = f2, f1 |> e1 = e2, e1 <- f1 = -e2,
/// e1 -> f1 = -f1.
pub fn sample_matched_pair(field: FieldSpec) -> MatchedPair {
    let g = two_dim_lie(field);
    let h = Algebra::from_int_entries(field, 2, &[]).unwrap();
    let la = Tensor3::from_int_entries(field, (2, 2, 2), &[(0, 0, 0, 1), (1, 0, 1, 1)]).unwrap();
    let ra = Tensor3::from_int_entries(field, (2, 2, 2), &[(0, 0, 1, 1)]).unwrap();
    let lh = Tensor3::from_int_entries(field, (2, 2, 2), &[(0, 0, 1, -1)]).unwrap();
    let rh = Tensor3::from_int_entries(field, (2, 2, 2), &[(0, 0, 0, -1)]).unwrap();
    MatchedPair::new(g, h, la, ra, lh, rh).unwrap()
}
