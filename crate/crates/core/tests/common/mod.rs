//! Shared fixtures for the integration and acceptance suites: the reference
//! algebras and the parametric four-dimensional families with their flag
//! datums.

#![allow(dead_code)]

use leibniz_core::algebra::Algebra;
use leibniz_core::field::{FieldSpec, Scalar};
use leibniz_core::flags::{FlagDatum, FlagDatum1, FlagDatum2};
use leibniz_core::linalg::{Matrix, Tensor3, Vector};
use leibniz_core::products::MatchedPair;

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

pub fn abelian(field: FieldSpec, dim: usize) -> Algebra {
    Algebra::from_int_entries(field, dim, &[]).unwrap()
}

/// The matched pair of the 2-dim Lie algebra acting on a 2-dim abelian
/// space: f1 <| e1 = f1, f2 <| e1 = f2, f1 |> e1 = e2, e1 <- f1 = -e2,
/// e1 -> f1 = -f1.
pub fn sample_matched_pair(field: FieldSpec) -> MatchedPair {
    let g = two_dim_lie(field);
    let h = abelian(field, 2);
    let la = Tensor3::from_int_entries(field, (2, 2, 2), &[(0, 0, 0, 1), (1, 0, 1, 1)]).unwrap();
    let ra = Tensor3::from_int_entries(field, (2, 2, 2), &[(0, 0, 1, 1)]).unwrap();
    let lh = Tensor3::from_int_entries(field, (2, 2, 2), &[(0, 0, 1, -1)]).unwrap();
    let rh = Tensor3::from_int_entries(field, (2, 2, 2), &[(0, 0, 0, -1)]).unwrap();
    MatchedPair::new(g, h, la, ra, lh, rh).unwrap()
}

fn s(field: FieldSpec, text: &str) -> Scalar {
    field.parse_scalar(text).unwrap()
}

/// Builds a 4-dim algebra over basis (e1, e2, e3, x) from sparse scalar
/// entries; the table must satisfy the Leibniz identity.
fn table(field: FieldSpec, entries: Vec<(usize, usize, usize, Scalar)>) -> Algebra {
    let tensor = Tensor3::from_entries(field, (4, 4, 4), &entries).unwrap();
    Algebra::new(field, 4, tensor).expect("printed table is a Leibniz algebra")
}

fn mat3(field: FieldSpec, rows: [[Scalar; 3]; 3]) -> Matrix {
    let vecs: Vec<Vector> = rows
        .into_iter()
        .map(|r| Vector::new(field, r.into_iter().collect()))
        .collect();
    Matrix::from_rows(field, &vecs)
}

fn vec3(field: FieldSpec, v: [Scalar; 3]) -> Vector {
    Vector::new(field, v.into_iter().collect())
}

/// First family: bracket table and flag datum of
/// `[e1,x] = b1 e2, [e3,x] = b1 e1 + b2 e2, [x,x] = b1 d1 e1 + c e2,
/// [x,e3] = d1 e1 + d2 e2` on top of the base algebra.
pub fn family_g11(field: FieldSpec, params: [&str; 5]) -> (Algebra, FlagDatum) {
    let [b1, b2, c, d1, d2] = params.map(|t| s(field, t));
    let z = field.zero();
    let alg = table(
        field,
        vec![
            (0, 2, 1, field.one()),
            (2, 2, 0, field.one()),
            (0, 3, 1, b1.clone()),
            (2, 3, 0, b1.clone()),
            (2, 3, 1, b2.clone()),
            (3, 3, 0, &b1 * &d1),
            (3, 3, 1, c.clone()),
            (3, 2, 0, d1.clone()),
            (3, 2, 1, d2.clone()),
        ],
    );
    let fd = FlagDatum::First(FlagDatum1 {
        g0: vec3(field, [&b1 * &d1, c, z.clone()]),
        alpha: z.clone(),
        lambda: vec3(field, [z.clone(), z.clone(), z.clone()]),
        d: mat3(
            field,
            [
                [z.clone(), z.clone(), d1],
                [z.clone(), z.clone(), d2],
                [z.clone(), z.clone(), z.clone()],
            ],
        ),
        delta: mat3(
            field,
            [
                [z.clone(), z.clone(), b1.clone()],
                [b1, z.clone(), b2],
                [z.clone(), z.clone(), z],
            ],
        ),
    });
    (alg, fd)
}

/// Second family (b1 invertible): `[e1,x] = 2b1 e1 + b2 e2,
/// [e2,x] = 3b1 e2, [e3,x] = b2 e1 + b3 e2 + b1 e3,
/// [x,x] = (2 b1 d + b2^2 - b1 b3) e1 + c e2, [x,e3] = b2 e1 + d e2 - b1 e3`.
pub fn family_g12(field: FieldSpec, params: [&str; 5]) -> (Algebra, FlagDatum) {
    let [b1, b2, b3, c, d] = params.map(|t| s(field, t));
    assert!(!b1.is_zero());
    let z = field.zero();
    let two = field.integer(2);
    let three = field.integer(3);
    let g0_e1 = &(&(&two * &b1) * &d) + &(&(&b2 * &b2) - &(&b1 * &b3));
    let alg = table(
        field,
        vec![
            (0, 2, 1, field.one()),
            (2, 2, 0, field.one()),
            (0, 3, 0, &two * &b1),
            (0, 3, 1, b2.clone()),
            (1, 3, 1, &three * &b1),
            (2, 3, 0, b2.clone()),
            (2, 3, 1, b3.clone()),
            (2, 3, 2, b1.clone()),
            (3, 3, 0, g0_e1.clone()),
            (3, 3, 1, c.clone()),
            (3, 2, 0, b2.clone()),
            (3, 2, 1, d.clone()),
            (3, 2, 2, -&b1),
        ],
    );
    let fd = FlagDatum::First(FlagDatum1 {
        g0: vec3(field, [g0_e1, c, z.clone()]),
        alpha: z.clone(),
        lambda: vec3(field, [z.clone(), z.clone(), z.clone()]),
        d: mat3(
            field,
            [
                [z.clone(), z.clone(), b2.clone()],
                [z.clone(), z.clone(), d],
                [z.clone(), z.clone(), -&b1],
            ],
        ),
        delta: mat3(
            field,
            [
                [&two * &b1, z.clone(), b2.clone()],
                [b2, &three * &b1, b3],
                [z.clone(), z.clone(), b1],
            ],
        ),
    });
    (alg, fd)
}

/// Third family (lambda0 invertible): `[e1,x] = a/l0 e2, [e3,x] = a/l0 e1,
/// [x,x] = a/l0 (d1 e1 + d2 e2 - a e3) + a x,
/// [x,e3] = d1 e1 + d2 e2 - a e3 + l0 x`.
pub fn family_g13(field: FieldSpec, params: [&str; 4]) -> (Algebra, FlagDatum) {
    let [alpha, lambda0, d1, d2] = params.map(|t| s(field, t));
    let l0_inv = lambda0.inv().expect("lambda0 must be invertible");
    let z = field.zero();
    let al = &alpha * &l0_inv;
    let alg = table(
        field,
        vec![
            (0, 2, 1, field.one()),
            (2, 2, 0, field.one()),
            (0, 3, 1, al.clone()),
            (2, 3, 0, al.clone()),
            (3, 3, 0, &al * &d1),
            (3, 3, 1, &al * &d2),
            (3, 3, 2, -&(&al * &alpha)),
            (3, 3, 3, alpha.clone()),
            (3, 2, 0, d1.clone()),
            (3, 2, 1, d2.clone()),
            (3, 2, 2, -&alpha),
            (3, 2, 3, lambda0.clone()),
        ],
    );
    let fd = FlagDatum::First(FlagDatum1 {
        g0: vec3(field, [&al * &d1, &al * &d2, -&(&al * &alpha)]),
        alpha: alpha.clone(),
        lambda: vec3(field, [z.clone(), z.clone(), lambda0]),
        d: mat3(
            field,
            [
                [z.clone(), z.clone(), d1],
                [z.clone(), z.clone(), d2],
                [z.clone(), z.clone(), -&alpha],
            ],
        ),
        delta: mat3(
            field,
            [
                [z.clone(), z.clone(), al.clone()],
                [al, z.clone(), z.clone()],
                [z.clone(), z.clone(), z],
            ],
        ),
    });
    (alg, fd)
}

fn g21_maps(field: FieldSpec, nu0: &Scalar, d1: &Scalar, d2: &Scalar, d3: &Scalar) -> (Matrix, Matrix) {
    let n_inv = nu0.inv().expect("nu0 must be invertible");
    let z = field.zero();
    let two = field.integer(2);
    let d = mat3(
        field,
        [
            [z.clone(), z.clone(), d1.clone()],
            [z.clone(), z.clone(), d2.clone()],
            [z.clone(), z.clone(), d3.clone()],
        ],
    );
    // Delta = [[0,0,-d1+2/n d3],[d3/n,0,-d2+d1/n-d3/n^2],[0,0,-d3]]
    let delta = mat3(
        field,
        [
            [
                z.clone(),
                z.clone(),
                &-d1 + &(&(&two * &n_inv) * d3),
            ],
            [
                &n_inv * d3,
                z.clone(),
                &(&-d2 + &(&n_inv * d1)) - &(&(&n_inv * &n_inv) * d3),
            ],
            [z.clone(), z.clone(), -d3],
        ],
    );
    (d, delta)
}

/// Fourth family (nu0 invertible): kind-2 datum with
/// `[x,e3] = d1 e1 + d2 e2 + d3 e3 - nu0 x`.
pub fn family_g21(field: FieldSpec, params: [&str; 4]) -> (Algebra, FlagDatum) {
    let [nu0, d1, d2, d3] = params.map(|t| s(field, t));
    let n_inv = nu0.inv().expect("nu0 must be invertible");
    let z = field.zero();
    let two = field.integer(2);
    let n2 = &n_inv * &n_inv;
    let g0_e1 = &n2 * &(&d3 * &d3);
    let g0_e2 = &(&n2 * &(&d1 * &d3)) - &(&(&n2 * &n_inv) * &(&d3 * &d3));
    let alg = table(
        field,
        vec![
            (0, 2, 1, field.one()),
            (2, 2, 0, field.one()),
            (0, 3, 1, &n_inv * &d3),
            (2, 3, 0, &-&d1 + &(&(&two * &n_inv) * &d3)),
            (2, 3, 1, -&(&(&d2 - &(&n_inv * &d1)) + &(&n2 * &d3))),
            (2, 3, 2, -&d3),
            (2, 3, 3, nu0.clone()),
            (3, 3, 0, g0_e1.clone()),
            (3, 3, 1, g0_e2.clone()),
            (3, 2, 0, d1.clone()),
            (3, 2, 1, d2.clone()),
            (3, 2, 2, d3.clone()),
            (3, 2, 3, -&nu0),
        ],
    );
    let (d, delta) = g21_maps(field, &nu0, &d1, &d2, &d3);
    let fd = FlagDatum::Second(FlagDatum2 {
        g0: vec3(field, [g0_e1, g0_e2, z.clone()]),
        nu: vec3(field, [z.clone(), z, nu0]),
        d,
        delta,
    });
    (alg, fd)
}

/// Characteristic-2 variant of the fourth family, with a free `c` in `[x,x]`.
pub fn family_g22(field: FieldSpec, params: [&str; 5]) -> (Algebra, FlagDatum) {
    assert_eq!(field.modulus(), Some(2), "this family needs characteristic 2");
    let [c, nu0, d1, d2, d3] = params.map(|t| s(field, t));
    let n_inv = nu0.inv().expect("nu0 must be invertible");
    let z = field.zero();
    let n2 = &n_inv * &n_inv;
    let g0_e1 = &n2 * &(&d3 * &d3);
    let alg = table(
        field,
        vec![
            (0, 2, 1, field.one()),
            (2, 2, 0, field.one()),
            (0, 3, 1, &n_inv * &d3),
            (2, 3, 0, -&d1),
            (2, 3, 1, -&(&(&d2 - &(&n_inv * &d1)) + &(&n2 * &d3))),
            (2, 3, 2, -&d3),
            (2, 3, 3, nu0.clone()),
            (3, 3, 0, g0_e1.clone()),
            (3, 3, 1, c.clone()),
            (3, 2, 0, d1.clone()),
            (3, 2, 1, d2.clone()),
            (3, 2, 2, d3.clone()),
            (3, 2, 3, -&nu0),
        ],
    );
    let (d, delta) = g21_maps(field, &nu0, &d1, &d2, &d3);
    let fd = FlagDatum::Second(FlagDatum2 {
        g0: vec3(field, [g0_e1, c, z.clone()]),
        nu: vec3(field, [z.clone(), z, nu0]),
        d,
        delta,
    });
    (alg, fd)
}
