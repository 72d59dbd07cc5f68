//! Homomorphism and isomorphism checking, the `(r, v)` parametrization of
//! morphisms between unified products over the same algebra, and the
//! equivalence / cohomologous relations on extending data.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::{tuple_at, tuple_count, Matrix, Tensor3, Vector};
use crate::products::{AxiomReport, AxiomResult, AxiomWitness, ExtendingDatum};
use crate::Budget;

/// First basis pair on which a linear map fails to preserve brackets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomWitness {
    pub left: usize,
    pub right: usize,
    pub lhs: Vector,
    pub rhs: Vector,
}

/// Bracket preservation on all basis pairs; `None` means `phi` is a
/// homomorphism.
pub fn homomorphism_witness(a: &Algebra, b: &Algebra, phi: &Matrix) -> Result<Option<HomWitness>> {
    if a.field() != b.field() || phi.field() != a.field() {
        return Err(Error::FieldMismatch {
            expected: a.field(),
            found: b.field(),
        });
    }
    if phi.rows() != b.dim() || phi.cols() != a.dim() {
        return Err(Error::DimensionMismatch {
            context: format!(
                "morphism matrix {}x{} between dimensions {} and {}",
                phi.rows(),
                phi.cols(),
                a.dim(),
                b.dim()
            ),
        });
    }
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let lhs = phi.apply(&a.bracket_basis(i, j));
            let rhs = b.bracket_eval(&phi.col(i), &phi.col(j))?;
            if lhs != rhs {
                return Ok(Some(HomWitness {
                    left: i,
                    right: j,
                    lhs,
                    rhs,
                }));
            }
        }
    }
    Ok(None)
}

pub fn is_homomorphism(a: &Algebra, b: &Algebra, phi: &Matrix) -> Result<bool> {
    Ok(homomorphism_witness(a, b, phi)?.is_none())
}

pub fn is_isomorphism(a: &Algebra, b: &Algebra, phi: &Matrix) -> Result<bool> {
    Ok(is_homomorphism(a, b, phi)? && phi.is_invertible())
}

/// The pair `(r, v)` describing a g-stabilizing linear map
/// `psi(g, x) = (g + r(x), v(x))` between product spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismWitness {
    /// `V -> g`, columns are images.
    pub r: Matrix,
    /// `V -> V`.
    pub v: Matrix,
}

impl MorphismWitness {
    pub fn identity(field: FieldSpec, n: usize, m: usize) -> Self {
        MorphismWitness {
            r: Matrix::zero(field, n, m),
            v: Matrix::identity(field, m),
        }
    }

    /// Assembles `psi` as an (n+m) x (n+m) matrix on the block basis.
    pub fn psi_matrix(&self, n: usize, m: usize) -> Matrix {
        let field = self.r.field();
        let mut psi = Matrix::zero(field, n + m, n + m);
        for i in 0..n {
            psi.set(i, i, field.one());
        }
        for x in 0..m {
            for i in 0..n {
                psi.set(i, n + x, self.r.get(i, x).clone());
            }
            for y in 0..m {
                psi.set(n + y, n + x, self.v.get(y, x).clone());
            }
        }
        psi
    }
}

/// Equivalence flavour: `Equiv` allows any automorphism `v` of `V`
/// (stabilizes g); `Cohom` fixes `v = id` (stabilizes g and co-stabilizes V).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquivMode {
    Equiv,
    Cohom,
}

/// Evaluates the six morphism conditions for `psi_(r,v)` between the unified
/// products of `d` and `d2` (same algebra, same complement dimension).
pub fn check_ml_conditions(
    d: &ExtendingDatum,
    d2: &ExtendingDatum,
    w: &MorphismWitness,
) -> Result<AxiomReport> {
    if d.g() != d2.g() || d.v_dim() != d2.v_dim() {
        return Err(Error::DimensionMismatch {
            context: "datums must share the algebra and the complement dimension".into(),
        });
    }
    let n = d.g().dim();
    let m = d.v_dim();
    let field = d.field();
    if w.r.rows() != n || w.r.cols() != m || w.v.rows() != m || w.v.cols() != m {
        return Err(Error::DimensionMismatch {
            context: "witness shapes (r: n x m, v: m x m)".into(),
        });
    }
    let gu = |i: usize| Vector::unit(field, n, i);
    let vu = |i: usize| Vector::unit(field, m, i);
    let gbr = |a: &Vector, b: &Vector| d.g().bracket().eval(a, b);

    let mut entries = Vec::with_capacity(6);
    // (ML1) v(g -> x) = g ->' v(x)
    entries.push(axiom("ML1", &[n, m], |ix| {
        let (g, x) = (gu(ix[0]), vu(ix[1]));
        let lhs = w.v.apply(&d.rh().eval(&g, &x));
        let rhs = d2.rh().eval(&g, &w.v.col(ix[1]));
        (lhs, rhs)
    }));
    // (ML2) v(x <| g) = v(x) <|' g
    entries.push(axiom("ML2", &[m, n], |ix| {
        let (x, g) = (vu(ix[0]), gu(ix[1]));
        let lhs = w.v.apply(&d.la().eval(&x, &g));
        let rhs = d2.la().eval(&w.v.col(ix[0]), &g);
        (lhs, rhs)
    }));
    // (ML3) x |> g + r(x <| g) = [r(x), g] + v(x) |>' g
    entries.push(axiom("ML3", &[m, n], |ix| {
        let (x, g) = (vu(ix[0]), gu(ix[1]));
        let lhs = d.ra().eval(&x, &g).add(&w.r.apply(&d.la().eval(&x, &g)));
        let rhs = gbr(&w.r.col(ix[0]), &g).add(&d2.ra().eval(&w.v.col(ix[0]), &g));
        (lhs, rhs)
    }));
    // (ML4) g <- x + r(g -> x) = [g, r(x)] + g <-' v(x)
    entries.push(axiom("ML4", &[n, m], |ix| {
        let (g, x) = (gu(ix[0]), vu(ix[1]));
        let lhs = d.lh().eval(&g, &x).add(&w.r.apply(&d.rh().eval(&g, &x)));
        let rhs = gbr(&g, &w.r.col(ix[1])).add(&d2.lh().eval(&g, &w.v.col(ix[1])));
        (lhs, rhs)
    }));
    // (ML5) v({x,y}) = r(x) ->' v(y) + v(x) <|' r(y) + {v(x), v(y)}'
    entries.push(axiom("ML5", &[m, m], |ix| {
        let (x, y) = (vu(ix[0]), vu(ix[1]));
        let (vx, vy) = (w.v.col(ix[0]), w.v.col(ix[1]));
        let lhs = w.v.apply(&d.vb().eval(&x, &y));
        let rhs = d2
            .rh()
            .eval(&w.r.col(ix[0]), &vy)
            .add(&d2.la().eval(&vx, &w.r.col(ix[1])))
            .add(&d2.vb().eval(&vx, &vy));
        (lhs, rhs)
    }));
    // (ML6) f(x,y) + r({x,y}) = [r(x), r(y)] + r(x) <-' v(y)
    //       + v(x) |>' r(y) + f'(v(x), v(y))
    entries.push(axiom("ML6", &[m, m], |ix| {
        let (x, y) = (vu(ix[0]), vu(ix[1]));
        let (vx, vy) = (w.v.col(ix[0]), w.v.col(ix[1]));
        let (rx, ry) = (w.r.col(ix[0]), w.r.col(ix[1]));
        let lhs = d.f().eval(&x, &y).add(&w.r.apply(&d.vb().eval(&x, &y)));
        let rhs = gbr(&rx, &ry)
            .add(&d2.lh().eval(&rx, &vy))
            .add(&d2.ra().eval(&vx, &ry))
            .add(&d2.f().eval(&vx, &vy));
        (lhs, rhs)
    }));
    Ok(AxiomReport::from_entries(entries))
}

fn axiom(
    id: &'static str,
    arity: &[usize],
    mut eval: impl FnMut(&[usize]) -> (Vector, Vector),
) -> AxiomResult {
    let total: usize = arity.iter().product();
    let mut idx = vec![0usize; arity.len()];
    for counter in 0..total {
        let mut rem = counter;
        for pos in (0..arity.len()).rev() {
            idx[pos] = rem % arity[pos];
            rem /= arity[pos];
        }
        let (lhs, rhs) = eval(&idx);
        if lhs != rhs {
            return AxiomResult {
                id,
                pass: false,
                witness: Some(AxiomWitness {
                    indices: idx,
                    lhs,
                    rhs,
                }),
            };
        }
    }
    AxiomResult {
        id,
        pass: true,
        witness: None,
    }
}

/// Rewrites a datum through a pair `(r, v)` with invertible `v`; the result
/// is equivalent to the input by construction.
pub fn apply_datum_equivalence(
    d2: &ExtendingDatum,
    r: &Matrix,
    v: &Matrix,
) -> Result<ExtendingDatum> {
    let n = d2.g().dim();
    let m = d2.v_dim();
    let field = d2.field();
    let v_inv = v.invert().ok_or(Error::NotInvertible)?;
    if r.rows() != n || r.cols() != m {
        return Err(Error::DimensionMismatch {
            context: "r must map V into g".into(),
        });
    }
    let gu = |i: usize| Vector::unit(field, n, i);
    let gbr = |a: &Vector, b: &Vector| d2.g().bracket().eval(a, b);

    let mut la = Tensor3::zero(field, (m, n, m));
    let mut ra = Tensor3::zero(field, (m, n, n));
    let mut lh = Tensor3::zero(field, (n, m, n));
    let mut rh = Tensor3::zero(field, (n, m, m));
    let mut f = Tensor3::zero(field, (m, m, n));
    let mut vb = Tensor3::zero(field, (m, m, m));

    for x in 0..m {
        let vx = v.col(x);
        let rx = r.col(x);
        for g in 0..n {
            let eg = gu(g);
            // x <| g = v^-1(v(x) <|' g)
            let la_fiber = v_inv.apply(&d2.la().eval(&vx, &eg));
            la.set_fiber(x, g, &la_fiber);
            // x |> g = [r(x), g] + v(x) |>' g - r(x <| g)
            let ra_fiber = gbr(&rx, &eg)
                .add(&d2.ra().eval(&vx, &eg))
                .sub(&r.apply(&la_fiber));
            ra.set_fiber(x, g, &ra_fiber);
            // g -> x = v^-1(g ->' v(x))
            let rh_fiber = v_inv.apply(&d2.rh().eval(&eg, &vx));
            rh.set_fiber(g, x, &rh_fiber);
            // g <- x = [g, r(x)] + g <-' v(x) - r(g -> x)
            let lh_fiber = gbr(&eg, &rx)
                .add(&d2.lh().eval(&eg, &vx))
                .sub(&r.apply(&rh_fiber));
            lh.set_fiber(g, x, &lh_fiber);
        }
        for y in 0..m {
            let vy = v.col(y);
            let ry = r.col(y);
            // {x, y} = v^-1(r(x) ->' v(y) + v(x) <|' r(y) + {v(x), v(y)}')
            let vb_fiber = v_inv.apply(
                &d2.rh()
                    .eval(&rx, &vy)
                    .add(&d2.la().eval(&vx, &ry))
                    .add(&d2.vb().eval(&vx, &vy)),
            );
            vb.set_fiber(x, y, &vb_fiber);
            // f(x, y) = [r(x), r(y)] + r(x) <-' v(y) + v(x) |>' r(y)
            //           + f'(v(x), v(y)) - r({x, y})
            let f_fiber = gbr(&rx, &ry)
                .add(&d2.lh().eval(&rx, &vy))
                .add(&d2.ra().eval(&vx, &ry))
                .add(&d2.f().eval(&vx, &vy))
                .sub(&r.apply(&vb_fiber));
            f.set_fiber(x, y, &f_fiber);
        }
    }
    ExtendingDatum::new(d2.g().clone(), m, la, ra, lh, rh, f, vb)
}

/// Searches a witness pair for the equivalence (any invertible `v`) or the
/// cohomologous relation (`v = id`, which additionally requires the `la` and
/// `rh` tensors to agree). Exhaustive over prime fields, deterministic: `v`
/// lexicographic (invertible only), then `r` lexicographic.
pub fn datum_equivalent(
    d: &ExtendingDatum,
    d2: &ExtendingDatum,
    mode: EquivMode,
    budget: &Budget,
) -> Result<Option<MorphismWitness>> {
    if d.g() != d2.g() || d.v_dim() != d2.v_dim() {
        return Ok(None);
    }
    let FieldSpec::Prime(p) = d.field() else {
        return Err(Error::UnsupportedEnumeration);
    };
    let n = d.g().dim();
    let m = d.v_dim();
    let field = d.field();
    let r_total = tuple_count(p, n * m);

    let try_r = |v: &Matrix| -> Result<Option<MorphismWitness>> {
        for r_idx in 0..r_total {
            let r = Matrix::from_flat(field, n, m, &tuple_at(field, n * m, r_idx));
            let w = MorphismWitness { r, v: v.clone() };
            if check_ml_conditions(d, d2, &w)?.pass() {
                return Ok(Some(w));
            }
        }
        Ok(None)
    };

    match mode {
        EquivMode::Cohom => {
            if d.la() != d2.la() || d.rh() != d2.rh() {
                return Ok(None);
            }
            budget.admit(r_total)?;
            try_r(&Matrix::identity(field, m))
        }
        EquivMode::Equiv => {
            let v_total = tuple_count(p, m * m);
            budget.admit(v_total.saturating_mul(r_total))?;
            for v_idx in 0..v_total {
                let v = Matrix::from_flat(field, m, m, &tuple_at(field, m * m, v_idx));
                if !v.is_invertible() {
                    continue;
                }
                if let Some(w) = try_r(&v)? {
                    return Ok(Some(w));
                }
            }
            Ok(None)
        }
    }
}

/// Structural invariants used as an isomorphism prefilter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuralInvariants {
    pub dim: usize,
    pub derived_dim: usize,
    pub center_dim: usize,
    pub der_dim: usize,
    pub ader_dim: usize,
    pub lie: bool,
    pub abelian: bool,
    pub perfect: bool,
}

pub fn invariants(a: &Algebra) -> StructuralInvariants {
    StructuralInvariants {
        dim: a.dim(),
        derived_dim: a.derived_subspace().dim(),
        center_dim: a.center().dim(),
        der_dim: a.derivations().len(),
        ader_dim: a.anti_derivations().len(),
        lie: a.is_lie(),
        abelian: a.is_abelian(),
        perfect: a.is_perfect(),
    }
}

/// Outcome of an isomorphism search. `NotIsomorphic` is a definite negative
/// (invariant mismatch or exhausted search); `Undecided` is returned when
/// the search space exceeds the budget or the field admits no enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoOutcome {
    Isomorphic(Matrix),
    NotIsomorphic,
    Undecided(String),
}

/// Order of GL(n, p), saturating on overflow.
pub fn gl_order(p: u64, n: usize) -> u128 {
    let Some(pn) = (p as u128).checked_pow(n as u32) else {
        return u128::MAX;
    };
    (0..n).fold(1u128, |acc, i| {
        acc.saturating_mul(pn - (p as u128).pow(i as u32))
    })
}

/// Invariant prefilter followed by exhaustive search over invertible
/// matrices in lexicographic order; the first isomorphism found is returned.
pub fn iso_search(a: &Algebra, b: &Algebra, budget: &Budget) -> Result<IsoOutcome> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch {
            expected: a.field(),
            found: b.field(),
        });
    }
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            context: format!("dimensions {} and {}", a.dim(), b.dim()),
        });
    }
    if invariants(a) != invariants(b) {
        return Ok(IsoOutcome::NotIsomorphic);
    }
    let FieldSpec::Prime(p) = a.field() else {
        return Ok(IsoOutcome::Undecided(
            "isomorphism search over the rationals is not enumerable; supply a candidate".into(),
        ));
    };
    let n = a.dim();
    if gl_order(p, n) > budget.max_candidates as u128 {
        return Ok(IsoOutcome::Undecided(format!(
            "|GL({n}, {p})| = {} exceeds the budget {}",
            gl_order(p, n),
            budget.max_candidates
        )));
    }
    let total = tuple_count(p, n * n);
    for idx in 0..total {
        let phi = Matrix::from_flat(a.field(), n, n, &tuple_at(a.field(), n * n, idx));
        if !phi.is_invertible() {
            continue;
        }
        if homomorphism_witness(a, b, &phi)?.is_none() {
            return Ok(IsoOutcome::Isomorphic(phi));
        }
    }
    Ok(IsoOutcome::NotIsomorphic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Subspace;
    use crate::products::{bicrossed_product, unified_product, validate_extending_structure};
    use crate::testutil::{k_algebra, sample_matched_pair, three_dim, two_dim_lie};

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    #[test]
    fn identity_and_zero_maps_are_homomorphisms() {
        let a = three_dim(q());
        assert!(is_homomorphism(&a, &a, &Matrix::identity(q(), 3)).unwrap());
        assert!(is_homomorphism(&a, &a, &Matrix::zero(q(), 3, 3)).unwrap());
        assert!(is_isomorphism(&a, &a, &Matrix::identity(q(), 3)).unwrap());
        assert!(!is_isomorphism(&a, &a, &Matrix::zero(q(), 3, 3)).unwrap());
    }

    #[test]
    fn printed_iso_into_deformed_algebra() {
        // psi(F1) = f1 + f2, psi(F2) = f2 maps k onto the algebra with
        // [f2, f1] = f2 only.
        let k = k_algebra(q());
        let hr = Algebra::from_int_entries(q(), 2, &[(1, 0, 1, 1)]).unwrap();
        let psi = Matrix::from_int_rows(q(), &[&[1, 0], &[1, 1]]);
        assert!(is_isomorphism(&k, &hr, &psi).unwrap());
    }

    #[test]
    fn ml_conditions_identity_pass() {
        let mp = sample_matched_pair(q());
        let d = mp.datum().clone();
        let w = MorphismWitness::identity(q(), 2, 2);
        assert!(check_ml_conditions(&d, &d, &w).unwrap().pass());
        // Zero (r, v) passes ML on the trivial datum: a morphism that is
        // not an isomorphism.
        let t = ExtendingDatum::trivial(two_dim_lie(q()), 2);
        let w0 = MorphismWitness {
            r: Matrix::zero(q(), 2, 2),
            v: Matrix::zero(q(), 2, 2),
        };
        assert!(check_ml_conditions(&t, &t, &w0).unwrap().pass());
        assert!(!w0.v.is_invertible());
        let psi = w0.psi_matrix(2, 2);
        let p = unified_product(&t);
        assert!(is_homomorphism(&p, &p, &psi).unwrap());
        assert!(!is_isomorphism(&p, &p, &psi).unwrap());
    }

    #[test]
    fn ml_matches_assembled_psi() {
        let field = FieldSpec::prime(3).unwrap();
        let g = two_dim_lie(field);
        let d2 = ExtendingDatum::trivial(g, 1);
        assert!(validate_extending_structure(&d2).pass());
        let r = Matrix::from_int_rows(field, &[&[1], &[2]]);
        let v = Matrix::from_int_rows(field, &[&[2]]);
        let d = apply_datum_equivalence(&d2, &r, &v).unwrap();
        assert!(validate_extending_structure(&d).pass());
        let w = MorphismWitness {
            r: r.clone(),
            v: v.clone(),
        };
        assert!(check_ml_conditions(&d, &d2, &w).unwrap().pass());
        let psi = w.psi_matrix(2, 1);
        let pa = unified_product(&d);
        let pb = unified_product(&d2);
        assert!(is_isomorphism(&pa, &pb, &psi).unwrap());
        // And the datums are detected as equivalent by search.
        let found = datum_equivalent(&d, &d2, EquivMode::Equiv, &Budget::default())
            .unwrap()
            .unwrap();
        assert!(check_ml_conditions(&d, &d2, &found).unwrap().pass());
    }

    #[test]
    fn cohom_requires_matching_actions() {
        let field = FieldSpec::prime(3).unwrap();
        let g = two_dim_lie(field);
        let trivial = ExtendingDatum::trivial(g.clone(), 1);
        let with_action = ExtendingDatum::new(
            g.clone(),
            1,
            Tensor3::from_int_entries(field, (1, 2, 1), &[(0, 0, 0, 1)]).unwrap(),
            Tensor3::zero(field, (1, 2, 2)),
            Tensor3::zero(field, (2, 1, 2)),
            Tensor3::zero(field, (2, 1, 1)),
            Tensor3::zero(field, (1, 1, 2)),
            Tensor3::zero(field, (1, 1, 1)),
        )
        .unwrap();
        assert_eq!(
            datum_equivalent(&trivial, &with_action, EquivMode::Cohom, &Budget::default())
                .unwrap(),
            None
        );
    }

    #[test]
    fn iso_search_finds_and_refutes() {
        let f3 = FieldSpec::prime(3).unwrap();
        let k = k_algebra(f3);
        let found = iso_search(&k, &k, &Budget::default()).unwrap();
        let IsoOutcome::Isomorphic(phi) = found else {
            panic!("self-isomorphism not found");
        };
        assert!(is_isomorphism(&k, &k, &phi).unwrap());

        let abelian = Algebra::from_int_entries(f3, 2, &[]).unwrap();
        assert_eq!(
            iso_search(&abelian, &k, &Budget::default()).unwrap(),
            IsoOutcome::NotIsomorphic
        );

        // Budget exhaustion is reported, never silently false.
        let tight = Budget::with_max_candidates(3);
        assert!(matches!(
            iso_search(&k, &k, &tight).unwrap(),
            IsoOutcome::Undecided(_)
        ));

        // Rational search without a candidate is undecided once invariants
        // agree.
        let kq = k_algebra(q());
        assert!(matches!(
            iso_search(&kq, &kq, &Budget::default()).unwrap(),
            IsoOutcome::Undecided(_)
        ));
    }

    #[test]
    fn bicrossed_blocks_are_subalgebras() {
        let mp = sample_matched_pair(q());
        let xi = bicrossed_product(&mp);
        let xi = Algebra::new(q(), 4, xi.bracket().clone()).unwrap();
        let g_block = Subspace::coordinate(q(), 4, &[0, 1]);
        let h_block = Subspace::coordinate(q(), 4, &[2, 3]);
        assert!(xi.induced_subalgebra(&g_block).is_ok());
        assert!(xi.induced_subalgebra(&h_block).is_ok());
        assert!(g_block.intersects_trivially(&h_block));
        assert!(g_block.sum(&h_block).is_full());
    }
}
