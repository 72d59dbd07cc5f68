//! Leibniz algebras presented by structure constants, together with the
//! identity checker, structural predicates and the derivation-type solvers.

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::{tuple_at, tuple_count, Matrix, Subspace, Tensor3, Vector};
use crate::{Budget, Shard};

/// First failing triple of the Leibniz identity, with both evaluated sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizWitness {
    pub left: usize,
    pub middle: usize,
    pub right: usize,
    pub lhs: Vector,
    pub rhs: Vector,
}

/// A finite-dimensional algebra given by its structure-constant tensor:
/// entry `(i, j, l)` is the coefficient of `e_l` in `[e_i, e_j]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Algebra {
    field: FieldSpec,
    dim: usize,
    bracket: Tensor3,
    names: Option<Vec<String>>,
}

impl Algebra {
    /// Checked constructor: rejects tensors violating the Leibniz identity.
    pub fn new(field: FieldSpec, dim: usize, bracket: Tensor3) -> Result<Self> {
        let a = Algebra::new_unchecked(field, dim, bracket)?;
        match a.check_leibniz() {
            Ok(()) => Ok(a),
            Err(witness) => Err(Error::NotLeibniz { witness }),
        }
    }

    /// Unchecked constructor for raw product candidates and negative tests.
    pub fn new_unchecked(field: FieldSpec, dim: usize, bracket: Tensor3) -> Result<Self> {
        if bracket.dims() != (dim, dim, dim) {
            return Err(Error::DimensionMismatch {
                context: format!("bracket tensor {:?} for dimension {dim}", bracket.dims()),
            });
        }
        if bracket.field() != field {
            return Err(Error::FieldMismatch {
                expected: field,
                found: bracket.field(),
            });
        }
        Ok(Algebra {
            field,
            dim,
            bracket,
            names: None,
        })
    }

    /// Checked constructor from sparse integer entries `(i, j, l, value)`.
    pub fn from_int_entries(
        field: FieldSpec,
        dim: usize,
        entries: &[(usize, usize, usize, i64)],
    ) -> Result<Self> {
        let bracket = Tensor3::from_int_entries(field, (dim, dim, dim), entries)?;
        Algebra::new(field, dim, bracket)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        self.names = Some(names);
        self
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bracket(&self) -> &Tensor3 {
        &self.bracket
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        self.bracket.fiber(i, j)
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket_eval(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        if x.field() != self.field || y.field() != self.field {
            return Err(Error::FieldMismatch {
                expected: self.field,
                found: if x.field() != self.field { x.field() } else { y.field() },
            });
        }
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "bracket arguments of lengths {} and {} in dimension {}",
                    x.len(),
                    y.len(),
                    self.dim
                ),
            });
        }
        Ok(self.bracket.eval(x, y))
    }

    /// Checks `[e_i, [e_j, e_l]] = [[e_i, e_j], e_l] - [[e_i, e_l], e_j]` on
    /// all basis triples; returns the first failing triple.
    pub fn check_leibniz(&self) -> std::result::Result<(), LeibnizWitness> {
        for i in 0..self.dim {
            let ei = Vector::unit(self.field, self.dim, i);
            for j in 0..self.dim {
                for l in 0..self.dim {
                    let lhs = self.bracket.eval(&ei, &self.bracket.fiber(j, l));
                    let el = Vector::unit(self.field, self.dim, l);
                    let ej = Vector::unit(self.field, self.dim, j);
                    let rhs = self
                        .bracket
                        .eval(&self.bracket.fiber(i, j), &el)
                        .sub(&self.bracket.eval(&self.bracket.fiber(i, l), &ej));
                    if lhs != rhs {
                        return Err(LeibnizWitness {
                            left: i,
                            middle: j,
                            right: l,
                            lhs,
                            rhs,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Alternating on a spanning set: `[e_i, e_i] = 0` and
    /// `[e_i, e_j] + [e_j, e_i] = 0`. Equivalent to `[x, x] = 0` for all x.
    pub fn is_lie(&self) -> bool {
        for i in 0..self.dim {
            if !self.bracket.fiber(i, i).is_zero() {
                return false;
            }
            for j in (i + 1)..self.dim {
                if !self.bracket.fiber(i, j).add(&self.bracket.fiber(j, i)).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.is_zero()
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_subspace().is_full()
    }

    /// Span of all brackets `[e_i, e_j]`.
    pub fn derived_subspace(&self) -> Subspace {
        let mut rows = Vec::with_capacity(self.dim * self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let w = self.bracket.fiber(i, j);
                if !w.is_zero() {
                    rows.push(w);
                }
            }
        }
        Subspace::from_rows(self.field, self.dim, &rows)
    }

    /// The center `{g : [g, x] = [x, g] = 0 for all x}`.
    pub fn center(&self) -> Subspace {
        let n = self.dim;
        let mut sys = Matrix::zero(self.field, 2 * n * n, n);
        for i in 0..n {
            for l in 0..n {
                for j in 0..n {
                    // [v, e_i]_l = sum_j v_j T[j, i, l]
                    sys.set(i * n + l, j, self.bracket.get(j, i, l).clone());
                    // [e_i, v]_l = sum_j v_j T[i, j, l]
                    sys.set(n * n + i * n + l, j, self.bracket.get(i, j, l).clone());
                }
            }
        }
        Subspace::from_rows(self.field, n, &sys.kernel())
    }

    /// The matrix of `[v, -]`: column `g` is `[v, e_g]`.
    pub fn ad_left(&self, v: &Vector) -> Matrix {
        let n = self.dim;
        let cols: Vec<Vector> = (0..n)
            .map(|g| self.bracket.eval(v, &Vector::unit(self.field, n, g)))
            .collect();
        Matrix::from_cols(self.field, &cols)
    }

    /// The matrix of `[-, v]`: column `g` is `[e_g, v]`.
    pub fn ad_right(&self, v: &Vector) -> Matrix {
        let n = self.dim;
        let cols: Vec<Vector> = (0..n)
            .map(|g| self.bracket.eval(&Vector::unit(self.field, n, g), v))
            .collect();
        Matrix::from_cols(self.field, &cols)
    }

    /// The right annihilator `{v : [x, v] = 0 for all x}`.
    pub fn right_annihilator(&self) -> Subspace {
        let n = self.dim;
        let mut sys = Matrix::zero(self.field, n * n, n);
        for i in 0..n {
            for l in 0..n {
                for j in 0..n {
                    sys.set(i * n + l, j, self.bracket.get(i, j, l).clone());
                }
            }
        }
        Subspace::from_rows(self.field, n, &sys.kernel())
    }

    pub fn is_two_sided_ideal(&self, s: &Subspace) -> Result<bool> {
        if s.ambient() != self.dim || s.field() != self.field {
            return Err(Error::DimensionMismatch {
                context: "ideal candidate in a different space".into(),
            });
        }
        for v in s.basis_vectors() {
            for i in 0..self.dim {
                let ei = Vector::unit(self.field, self.dim, i);
                if !s.contains(&self.bracket.eval(&v, &ei)) {
                    return Ok(false);
                }
                if !s.contains(&self.bracket.eval(&ei, &v)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Quotient by a two-sided ideal. The quotient basis is the coset family
    /// of the unit vectors at the non-pivot coordinates of the ideal; the
    /// returned matrix projects ambient coordinates onto that basis.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(Algebra, Matrix)> {
        if !self.is_two_sided_ideal(ideal)? {
            return Err(Error::NotIdeal);
        }
        let n = self.dim;
        let k = ideal.dim();
        let q = n - k;
        let pivots = ideal.pivots();
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        debug_assert_eq!(free.len(), q);

        // Basis-change matrix: ideal basis then coset representatives.
        let mut cols = Vec::with_capacity(n);
        for v in ideal.basis_vectors() {
            cols.push(v);
        }
        for &c in &free {
            cols.push(Vector::unit(self.field, n, c));
        }
        let b = Matrix::from_cols(self.field, &cols);
        let b_inv = b.invert().ok_or(Error::NotIdeal)?;
        let mut proj = Matrix::zero(self.field, q, n);
        for r in 0..q {
            for c in 0..n {
                proj.set(r, c, b_inv.get(k + r, c).clone());
            }
        }

        let mut tensor = Tensor3::zero(self.field, (q, q, q));
        for (a, &fa) in free.iter().enumerate() {
            for (b_idx, &fb) in free.iter().enumerate() {
                let w = self.bracket.fiber(fa, fb);
                tensor.set_fiber(a, b_idx, &proj.apply(&w));
            }
        }
        let quot = Algebra::new(self.field, q, tensor)?;
        Ok((quot, proj))
    }

    /// Canonical basis of the derivation space
    /// `{M : M[g,h] = [Mg,h] + [g,Mh]}`.
    pub fn derivations(&self) -> Vec<Matrix> {
        let sys = self.derivation_system(true);
        sys.kernel()
            .iter()
            .map(|flat| Matrix::from_flat(self.field, self.dim, self.dim, flat))
            .collect()
    }

    /// Canonical basis of the anti-derivation space
    /// `{M : M[g,h] = [Mg,h] - [Mh,g]}`.
    pub fn anti_derivations(&self) -> Vec<Matrix> {
        let sys = self.derivation_system(false);
        sys.kernel()
            .iter()
            .map(|flat| Matrix::from_flat(self.field, self.dim, self.dim, flat))
            .collect()
    }

    /// Linear system whose kernel is Der (derivation = true) or ADer.
    /// Unknown M is flattened row-major: M[a][b] at index a*n + b.
    fn derivation_system(&self, derivation: bool) -> Matrix {
        let n = self.dim;
        let mut sys = Matrix::zero(self.field, n * n * n, n * n);
        for i in 0..n {
            for j in 0..n {
                let w = self.bracket.fiber(i, j);
                for l in 0..n {
                    let row = (i * n + j) * n + l;
                    // M([e_i, e_j])_l = sum_b M[l][b] w_b
                    for b in 0..n {
                        let cur = sys.get(row, l * n + b).clone();
                        sys.set(row, l * n + b, &cur + w.get(b));
                    }
                    // -[M e_i, e_j]_l = -sum_a M[a][i] T[a, j, l]
                    for a in 0..n {
                        let col = a * n + i;
                        let cur = sys.get(row, col).clone();
                        sys.set(row, col, &cur - self.bracket.get(a, j, l));
                    }
                    if derivation {
                        // -[e_i, M e_j]_l = -sum_a M[a][j] T[i, a, l]
                        for a in 0..n {
                            let col = a * n + j;
                            let cur = sys.get(row, col).clone();
                            sys.set(row, col, &cur - self.bracket.get(i, a, l));
                        }
                    } else {
                        // +[M e_j, e_i]_l = sum_a M[a][j] T[a, i, l]
                        for a in 0..n {
                            let col = a * n + j;
                            let cur = sys.get(row, col).clone();
                            sys.set(row, col, &cur + self.bracket.get(a, i, l));
                        }
                    }
                }
            }
        }
        sys
    }

    /// Structure constants induced on a subspace closed under the bracket.
    pub fn induced_subalgebra(&self, sub: &Subspace) -> Result<Algebra> {
        let k = sub.dim();
        let mut tensor = Tensor3::zero(self.field, (k, k, k));
        let basis = sub.basis_vectors();
        for (a, va) in basis.iter().enumerate() {
            for (b, vb) in basis.iter().enumerate() {
                let w = self.bracket.eval(va, vb);
                let coords = sub.coords_of(&w).ok_or(Error::NotSubalgebra)?;
                tensor.set_fiber(a, b, &coords);
            }
        }
        Algebra::new(self.field, k, tensor)
    }

    /// The Leibniz algebra on `g (x) g` for a Lie algebra `g`, with
    /// `[x(x)y, a(x)b] = [x,[a,b]](x)y + x(x)[y,[a,b]]`.
    pub fn tensor_square(&self) -> Result<Algebra> {
        if !self.is_lie() {
            return Err(Error::Document(
                "tensor-square construction requires a Lie algebra".into(),
            ));
        }
        let n = self.dim;
        let mut tensor = Tensor3::zero(self.field, (n * n, n * n, n * n));
        for i in 0..n {
            let ei = Vector::unit(self.field, n, i);
            for j in 0..n {
                let ej = Vector::unit(self.field, n, j);
                for a in 0..n {
                    for b in 0..n {
                        let inner = self.bracket.fiber(a, b);
                        let u = self.bracket.eval(&ei, &inner);
                        let v = self.bracket.eval(&ej, &inner);
                        let mut fiber = Vector::zero(self.field, n * n);
                        for c in 0..n {
                            let cur = &fiber.get(c * n + j).clone() + u.get(c);
                            fiber.set(c * n + j, cur);
                            let cur = &fiber.get(i * n + c).clone() + v.get(c);
                            fiber.set(i * n + c, cur);
                        }
                        tensor.set_fiber(i * n + j, a * n + b, &fiber);
                    }
                }
            }
        }
        Algebra::new(self.field, n * n, tensor)
    }
}

/// A triple `(g0, D, Delta)` where `Delta` is a derivation, `D` an
/// anti-derivation, and the four pointing identities hold.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PointedDoubleDerivation {
    pub g0: Vector,
    pub d: Matrix,
    pub delta: Matrix,
}

/// First failing identity of a pointed-double-derivation candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityWitness {
    pub identity: &'static str,
    pub indices: Vec<usize>,
    pub lhs: Vector,
    pub rhs: Vector,
}

impl Algebra {
    /// Membership predicate for pointed double derivations; works over any
    /// field.
    pub fn pointed_double_derivation_check(
        &self,
        cand: &PointedDoubleDerivation,
    ) -> std::result::Result<(), IdentityWitness> {
        let n = self.dim;
        let zero = Vector::zero(self.field, n);
        let fail = |identity, indices, lhs: Vector, rhs: Vector| IdentityWitness {
            identity,
            indices,
            lhs,
            rhs,
        };

        // D(g0) = 0
        let dg0 = cand.d.apply(&cand.g0);
        if !dg0.is_zero() {
            return Err(fail("D(g0) = 0", vec![], dg0, zero));
        }
        // [g, g0] = 0
        for g in 0..n {
            let eg = Vector::unit(self.field, n, g);
            let w = self.bracket.eval(&eg, &cand.g0);
            if !w.is_zero() {
                return Err(fail("[g, g0] = 0", vec![g], w, zero));
            }
        }
        // [g, D(h) + Delta(h)] = 0
        let sum = cand.d.add(&cand.delta);
        for h in 0..n {
            let sh = sum.col(h);
            for g in 0..n {
                let eg = Vector::unit(self.field, n, g);
                let w = self.bracket.eval(&eg, &sh);
                if !w.is_zero() {
                    return Err(fail("[g, D(h) + Delta(h)] = 0", vec![g, h], w, zero));
                }
            }
        }
        // D^2 + D Delta = 0
        let m1 = cand.d.mul(&cand.d).add(&cand.d.mul(&cand.delta));
        if !m1.is_zero() {
            return Err(fail(
                "D^2 + D Delta = 0",
                vec![],
                m1.flatten(),
                Vector::zero(self.field, n * n),
            ));
        }
        // D^2 + Delta D = [g0, -]
        let m2 = cand.d.mul(&cand.d).add(&cand.delta.mul(&cand.d));
        for g in 0..n {
            let eg = Vector::unit(self.field, n, g);
            let rhs = self.bracket.eval(&cand.g0, &eg);
            let lhs = m2.col(g);
            if lhs != rhs {
                return Err(fail("D^2 + Delta D = [g0, -]", vec![g], lhs, rhs));
            }
        }
        // Delta is a derivation, D an anti-derivation.
        for g in 0..n {
            let eg = Vector::unit(self.field, n, g);
            for h in 0..n {
                let eh = Vector::unit(self.field, n, h);
                let w = self.bracket.fiber(g, h);
                let lhs = cand.delta.apply(&w);
                let rhs = self
                    .bracket
                    .eval(&cand.delta.col(g), &eh)
                    .add(&self.bracket.eval(&eg, &cand.delta.col(h)));
                if lhs != rhs {
                    return Err(fail("Delta derivation", vec![g, h], lhs, rhs));
                }
                let lhs = cand.d.apply(&w);
                let rhs = self
                    .bracket
                    .eval(&cand.d.col(g), &eh)
                    .sub(&self.bracket.eval(&cand.d.col(h), &eg));
                if lhs != rhs {
                    return Err(fail("D anti-derivation", vec![g, h], lhs, rhs));
                }
            }
        }
        Ok(())
    }

    /// Exact set of pointed double derivations over a prime field.
    ///
    /// Linear constraints (derivation laws and the coupling
    /// `[g, (D + Delta)(h)] = 0`, `[g, g0] = 0`) are solved first; the
    /// residual parameter space is enumerated and filtered through the
    /// nonlinear identities.
    pub fn double_derivations(
        &self,
        budget: &Budget,
        shard: Option<Shard>,
    ) -> Result<Vec<PointedDoubleDerivation>> {
        let FieldSpec::Prime(p) = self.field else {
            return Err(Error::UnsupportedEnumeration);
        };
        let n = self.dim;

        // Joint linear system over (D, Delta): D flattened first.
        let der = self.derivation_system(true);
        let ader = self.derivation_system(false);
        let rows = ader.rows() + der.rows() + n * n * n;
        let mut sys = Matrix::zero(self.field, rows, 2 * n * n);
        for r in 0..ader.rows() {
            for c in 0..n * n {
                sys.set(r, c, ader.get(r, c).clone());
            }
        }
        for r in 0..der.rows() {
            for c in 0..n * n {
                sys.set(ader.rows() + r, n * n + c, der.get(r, c).clone());
            }
        }
        // [e_g, (D + Delta) e_h]_l = sum_a (D + Delta)[a][h] T[g, a, l]
        let base = ader.rows() + der.rows();
        for g in 0..n {
            for h in 0..n {
                for l in 0..n {
                    let row = base + (g * n + h) * n + l;
                    for a in 0..n {
                        let t = self.bracket.get(g, a, l).clone();
                        sys.set(row, a * n + h, t.clone());
                        sys.set(row, n * n + a * n + h, t);
                    }
                }
            }
        }
        let params = sys.kernel();
        let g0_space = self.right_annihilator();

        let k = params.len();
        let r = g0_space.dim();
        let total = tuple_count(p, k + r);
        budget.admit(total)?;
        let range = shard.map_or(0..total, |s| s.range(total));

        let g0_count = tuple_count(p, r);
        let mut out = Vec::new();
        let mut current_param: Option<u128> = None;
        let mut d = Matrix::zero(self.field, n, n);
        let mut delta = Matrix::zero(self.field, n, n);
        let mut m1_zero = false;
        let mut m2 = Matrix::zero(self.field, n, n);
        for idx in range {
            let param_idx = idx / g0_count;
            if current_param != Some(param_idx) {
                current_param = Some(param_idx);
                let coords = tuple_at(self.field, k, param_idx);
                let mut flat = Vector::zero(self.field, 2 * n * n);
                for (t, basis_vec) in params.iter().enumerate() {
                    flat.add_scaled(basis_vec, coords.get(t));
                }
                d = Matrix::from_flat(self.field, n, n, &flat.slice(0..n * n));
                delta = Matrix::from_flat(self.field, n, n, &flat.slice(n * n..2 * n * n));
                let dd = d.mul(&d);
                m1_zero = dd.add(&d.mul(&delta)).is_zero();
                m2 = dd.add(&delta.mul(&d));
            }
            if !m1_zero {
                continue;
            }
            let g0_coords = tuple_at(self.field, r, idx % g0_count);
            let g0 = g0_space.vector_from_coords(&g0_coords);
            if !d.apply(&g0).is_zero() {
                continue;
            }
            // D^2 + Delta D = [g0, -] column by column.
            let mut ok = true;
            for g in 0..n {
                let eg = Vector::unit(self.field, n, g);
                if m2.col(g) != self.bracket.eval(&g0, &eg) {
                    ok = false;
                    break;
                }
            }
            if ok {
                out.push(PointedDoubleDerivation {
                    g0,
                    d: d.clone(),
                    delta: delta.clone(),
                });
            }
        }
        Ok(out)
    }
}

/// True when `phi` restricts to the identity on the first `g_dim`
/// coordinates.
pub fn stabilizes(phi: &Matrix, g_dim: usize) -> bool {
    let field = phi.field();
    (0..g_dim).all(|j| phi.col(j) == Vector::unit(field, phi.rows(), j))
}

/// True when the projection onto the last `v_dim` coordinates commutes with
/// `phi`.
pub fn costabilizes(phi: &Matrix, g_dim: usize, v_dim: usize) -> bool {
    let field = phi.field();
    let n = g_dim + v_dim;
    if phi.rows() != n || phi.cols() != n {
        return false;
    }
    for j in 0..n {
        for r in g_dim..n {
            let expected = if r == j { field.one() } else { field.zero() };
            if *phi.get(r, j) != expected {
                return false;
            }
        }
    }
    true
}
