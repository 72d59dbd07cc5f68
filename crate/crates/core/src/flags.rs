//! Codimension-one extending structures: flag datums of both kinds, their
//! axiom checkers, the bijection with extending data, staged enumeration
//! over prime fields, and classification under the stabilizing (`Equiv`)
//! and co-stabilizing (`Cohom`) relations.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{tuple_at, tuple_count, Matrix, Subspace, Tensor3, Vector};
use crate::morphisms::EquivMode;
use crate::products::{
    unified_product, AxiomReport, AxiomResult, AxiomWitness,
    ExtendingDatum,
};
use crate::{Budget, Shard};

/// Witness-rule conventions used by the equivalence search; part of every
/// classification report so the exact identities checked are visible.
pub const EQUIV_RULE_KIND1: &str = "g0 = q^2 g0' + [G,G] + q D'(G) + q Delta'(G) - q alpha' G - lambda'(G) G; alpha = q alpha' + lambda'(G); D = q D' + [G,-] - lambda'(.) G; Delta = q Delta' + [-,G]";
pub const EQUIV_RULE_KIND2: &str = "g0 = q^2 g0' + [G,G] + q D'(G) + q Delta'(G); D = q D' + [G,-] + nu'(.) G; Delta = q Delta' + [-,G] - nu'(.) G";

/// Datum `(g0, alpha, lambda, D, Delta)` for a codimension-one extension
/// with trivial `g -> x` action.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FlagDatum1 {
    pub g0: Vector,
    pub alpha: Scalar,
    pub lambda: Vector,
    pub d: Matrix,
    pub delta: Matrix,
}

/// Datum `(g0, nu, D, Delta)` with `nu` nonzero.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FlagDatum2 {
    pub g0: Vector,
    pub nu: Vector,
    pub d: Matrix,
    pub delta: Matrix,
}

/// Either kind; the two kinds are never equivalent to each other.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FlagDatum {
    First(FlagDatum1),
    Second(FlagDatum2),
}

impl FlagDatum {
    pub fn kind(&self) -> u8 {
        match self {
            FlagDatum::First(_) => 1,
            FlagDatum::Second(_) => 2,
        }
    }
}

struct AxiomAcc {
    id: &'static str,
    failure: Option<AxiomWitness>,
}

impl AxiomAcc {
    fn new(id: &'static str) -> Self {
        AxiomAcc { id, failure: None }
    }

    fn require(&mut self, indices: &[usize], lhs: Vector, rhs: Vector) {
        if self.failure.is_none() && lhs != rhs {
            self.failure = Some(AxiomWitness {
                indices: indices.to_vec(),
                lhs,
                rhs,
            });
        }
    }

    fn require_scalar(&mut self, indices: &[usize], lhs: Scalar, rhs: Scalar) {
        let field = lhs.field();
        self.require(
            indices,
            Vector::new(field, vec![lhs]),
            Vector::new(field, vec![rhs]),
        );
    }

    fn finish(self) -> AxiomResult {
        AxiomResult {
            id: self.id,
            pass: self.failure.is_none(),
            witness: self.failure,
        }
    }
}

/// Evaluates (F1)-(F7) on all basis pairs.
pub fn flag1_check(a: &Algebra, fd: &FlagDatum1) -> AxiomReport {
    let n = a.dim();
    let field = a.field();
    let gu = |i: usize| Vector::unit(field, n, i);
    let br = |x: &Vector, y: &Vector| a.bracket().eval(x, y);
    let lam = |v: &Vector| fd.lambda.dot(v);
    let zero_s = field.zero();

    // (F1) lambda([g,h]) = 0; lambda(D(g)) + alpha lambda(g) = 0;
    //      lambda(Delta(g)) = 0
    let mut f1 = AxiomAcc::new("F1");
    for g in 0..n {
        for h in 0..n {
            f1.require_scalar(&[g, h], lam(&a.bracket_basis(g, h)), zero_s.clone());
        }
        f1.require_scalar(
            &[g],
            &lam(&fd.d.col(g)) + &(&fd.alpha * &lam(&gu(g))),
            zero_s.clone(),
        );
        f1.require_scalar(&[g], lam(&fd.delta.col(g)), zero_s.clone());
    }

    // (F2) D(g0) = -alpha g0; lambda(g0) = -alpha^2; alpha Delta(g) = -[g, g0]
    let mut f2 = AxiomAcc::new("F2");
    f2.require(&[], fd.d.apply(&fd.g0), fd.g0.scale(&-&fd.alpha));
    f2.require_scalar(&[], lam(&fd.g0), -&(&fd.alpha * &fd.alpha));
    for g in 0..n {
        f2.require(
            &[g],
            fd.delta.col(g).scale(&fd.alpha),
            br(&gu(g), &fd.g0).neg(),
        );
    }

    // (F3) [g, Delta(h)] + [g, D(h)] = -lambda(h) Delta(g)
    let mut f3 = AxiomAcc::new("F3");
    for g in 0..n {
        for h in 0..n {
            let lhs = br(&gu(g), &fd.delta.col(h)).add(&br(&gu(g), &fd.d.col(h)));
            let rhs = fd.delta.col(g).scale(&-&lam(&gu(h)));
            f3.require(&[g, h], lhs, rhs);
        }
    }

    // (F4) D^2(g) + D(Delta(g)) = -lambda(g) g0
    let m4 = fd.d.mul(&fd.d).add(&fd.d.mul(&fd.delta));
    let mut f4 = AxiomAcc::new("F4");
    for g in 0..n {
        f4.require(&[g], m4.col(g), fd.g0.scale(&-&lam(&gu(g))));
    }

    // (F5) D^2(g) + Delta(D(g)) = alpha D(g) + [g0, g] - 2 lambda(g) g0
    let m5 = fd.d.mul(&fd.d).add(&fd.delta.mul(&fd.d));
    let two = field.integer(2);
    let mut f5 = AxiomAcc::new("F5");
    for g in 0..n {
        let rhs = fd
            .d
            .col(g)
            .scale(&fd.alpha)
            .add(&br(&fd.g0, &gu(g)))
            .sub(&fd.g0.scale(&(&two * &lam(&gu(g)))));
        f5.require(&[g], m5.col(g), rhs);
    }

    // (F6) Delta([g,h]) = [Delta(g), h] + [g, Delta(h)]
    let mut f6 = AxiomAcc::new("F6");
    for g in 0..n {
        for h in 0..n {
            let lhs = fd.delta.apply(&a.bracket_basis(g, h));
            let rhs = br(&fd.delta.col(g), &gu(h)).add(&br(&gu(g), &fd.delta.col(h)));
            f6.require(&[g, h], lhs, rhs);
        }
    }

    // (F7) D([g,h]) = [D(g), h] - [D(h), g] + lambda(g) D(h) - lambda(h) D(g)
    let mut f7 = AxiomAcc::new("F7");
    for g in 0..n {
        for h in 0..n {
            let lhs = fd.d.apply(&a.bracket_basis(g, h));
            let rhs = br(&fd.d.col(g), &gu(h))
                .sub(&br(&fd.d.col(h), &gu(g)))
                .add(&fd.d.col(h).scale(&lam(&gu(g))))
                .sub(&fd.d.col(g).scale(&lam(&gu(h))));
            f7.require(&[g, h], lhs, rhs);
        }
    }

    AxiomReport::from_entries(vec![
        f1.finish(),
        f2.finish(),
        f3.finish(),
        f4.finish(),
        f5.finish(),
        f6.finish(),
        f7.finish(),
    ])
}

/// Evaluates (G1)-(G5) on all basis pairs; `nu` must be nonzero.
pub fn flag2_check(a: &Algebra, fd: &FlagDatum2) -> Result<AxiomReport> {
    if fd.nu.is_zero() {
        return Err(Error::ZeroNu);
    }
    let n = a.dim();
    let field = a.field();
    let gu = |i: usize| Vector::unit(field, n, i);
    let br = |x: &Vector, y: &Vector| a.bracket().eval(x, y);
    let nu = |v: &Vector| fd.nu.dot(v);
    let zero_s = field.zero();
    let zero_v = Vector::zero(field, n);

    // (G1) nu([g,h]) = 0; [g, g0] = 0; D(g0) = 0; nu(g0) = 0
    let mut g1 = AxiomAcc::new("G1");
    for g in 0..n {
        for h in 0..n {
            g1.require_scalar(&[g, h], nu(&a.bracket_basis(g, h)), zero_s.clone());
        }
        g1.require(&[g], br(&gu(g), &fd.g0), zero_v.clone());
    }
    g1.require(&[], fd.d.apply(&fd.g0), zero_v.clone());
    g1.require_scalar(&[], nu(&fd.g0), zero_s.clone());

    // (G2) [g, Delta(h)] + [g, D(h)] = 0; nu(D(g)) + nu(Delta(g)) = 0
    let mut g2 = AxiomAcc::new("G2");
    for g in 0..n {
        for h in 0..n {
            let lhs = br(&gu(g), &fd.delta.col(h)).add(&br(&gu(g), &fd.d.col(h)));
            g2.require(&[g, h], lhs, zero_v.clone());
        }
        g2.require_scalar(
            &[g],
            &nu(&fd.d.col(g)) + &nu(&fd.delta.col(g)),
            zero_s.clone(),
        );
    }

    // (G3) D^2(g) + D(Delta(g)) = 0; D^2(g) + Delta(D(g)) = [g0,g] + 2 nu(g) g0
    let m3a = fd.d.mul(&fd.d).add(&fd.d.mul(&fd.delta));
    let m3b = fd.d.mul(&fd.d).add(&fd.delta.mul(&fd.d));
    let two = field.integer(2);
    let mut g3 = AxiomAcc::new("G3");
    for g in 0..n {
        g3.require(&[g], m3a.col(g), zero_v.clone());
        let rhs = br(&fd.g0, &gu(g)).add(&fd.g0.scale(&(&two * &nu(&gu(g)))));
        g3.require(&[g], m3b.col(g), rhs);
    }

    // (G4) Delta([g,h]) = [Delta(g),h] + [g,Delta(h)] + nu(h) Delta(g)
    //      + nu(g) D(h)
    let mut g4 = AxiomAcc::new("G4");
    for g in 0..n {
        for h in 0..n {
            let lhs = fd.delta.apply(&a.bracket_basis(g, h));
            let rhs = br(&fd.delta.col(g), &gu(h))
                .add(&br(&gu(g), &fd.delta.col(h)))
                .add(&fd.delta.col(g).scale(&nu(&gu(h))))
                .add(&fd.d.col(h).scale(&nu(&gu(g))));
            g4.require(&[g, h], lhs, rhs);
        }
    }

    // (G5) D([g,h]) = [D(g),h] - [D(h),g] - nu(g) D(h) + nu(h) D(g)
    let mut g5 = AxiomAcc::new("G5");
    for g in 0..n {
        for h in 0..n {
            let lhs = fd.d.apply(&a.bracket_basis(g, h));
            let rhs = br(&fd.d.col(g), &gu(h))
                .sub(&br(&fd.d.col(h), &gu(g)))
                .sub(&fd.d.col(h).scale(&nu(&gu(g))))
                .add(&fd.d.col(g).scale(&nu(&gu(h))));
            g5.require(&[g, h], lhs, rhs);
        }
    }

    Ok(AxiomReport::from_entries(vec![
        g1.finish(),
        g2.finish(),
        g3.finish(),
        g4.finish(),
        g5.finish(),
    ]))
}

/// The extending datum of a flag datum (complement dimension 1).
pub fn flag_to_datum(a: &Algebra, fd: &FlagDatum) -> Result<ExtendingDatum> {
    let n = a.dim();
    let field = a.field();
    let mut la = Tensor3::zero(field, (1, n, 1));
    let mut ra = Tensor3::zero(field, (1, n, n));
    let mut lh = Tensor3::zero(field, (n, 1, n));
    let mut rh = Tensor3::zero(field, (n, 1, 1));
    let mut f = Tensor3::zero(field, (1, 1, n));
    let mut vb = Tensor3::zero(field, (1, 1, 1));
    match fd {
        FlagDatum::First(fd) => {
            // x <| g = lambda(g) x, x |> g = D(g), f(x,x) = g0,
            // g <- x = Delta(g), g -> x = 0, {x,x} = alpha x
            for g in 0..n {
                la.set(0, g, 0, fd.lambda.get(g).clone());
                ra.set_fiber(0, g, &fd.d.col(g));
                lh.set_fiber(g, 0, &fd.delta.col(g));
            }
            f.set_fiber(0, 0, &fd.g0);
            vb.set(0, 0, 0, fd.alpha.clone());
        }
        FlagDatum::Second(fd) => {
            if fd.nu.is_zero() {
                return Err(Error::ZeroNu);
            }
            // x <| g = -nu(g) x, x |> g = D(g), f(x,x) = g0,
            // g <- x = Delta(g), g -> x = nu(g) x, {x,x} = 0
            for g in 0..n {
                la.set(0, g, 0, -fd.nu.get(g));
                ra.set_fiber(0, g, &fd.d.col(g));
                lh.set_fiber(g, 0, &fd.delta.col(g));
                rh.set(g, 0, 0, fd.nu.get(g).clone());
            }
            f.set_fiber(0, 0, &fd.g0);
        }
    }
    ExtendingDatum::new(a.clone(), 1, la, ra, lh, rh, f, vb)
}

/// The codimension-one product of a flag datum, as a checked algebra.
pub fn flag_product(a: &Algebra, fd: &FlagDatum) -> Result<Algebra> {
    let datum = flag_to_datum(a, fd)?;
    let raw = unified_product(&datum);
    Algebra::new(raw.field(), raw.dim(), raw.bracket().clone())
}

/// Complete sets F1(g) and F2(g) over a prime field, with the covector and
/// the (D, Delta) laws solved linearly per stratum and the residual
/// parameters enumerated and filtered through the remaining axioms.
///
/// Output order is deterministic: strata by covector coordinates
/// (lexicographic), then residual parameters (D/Delta kernel coordinates,
/// then alpha, then g0) in lexicographic order.
pub fn enumerate_flag_datums(
    a: &Algebra,
    budget: &Budget,
    shard: Option<Shard>,
) -> Result<(Vec<FlagDatum1>, Vec<FlagDatum2>)> {
    let FieldSpec::Prime(p) = a.field() else {
        return Err(Error::UnsupportedEnumeration);
    };
    if a.dim() > budget.flag_dim_cap {
        return Err(Error::DimensionCapExceeded {
            dim: a.dim(),
            cap: budget.flag_dim_cap,
        });
    }
    let n = a.dim();
    let field = a.field();

    // Covectors vanishing on the derived subspace.
    let derived = a.derived_subspace();
    let cov_space = if derived.dim() == 0 {
        Subspace::full(field, n)
    } else {
        Subspace::from_rows(field, n, &derived.basis().kernel())
    };
    let cov_count = tuple_count(p, cov_space.dim());

    struct Stratum {
        kind: u8,
        cov: Vector,
        params: Vec<Vector>,
        g0_space: Subspace,
        block: u128,
        total: u128,
    }

    let mut strata = Vec::new();
    // Kind 1 strata (lambda arbitrary in the covector space).
    for c in 0..cov_count {
        let coords = tuple_at(field, cov_space.dim(), c);
        let lambda = cov_space.vector_from_coords(&coords);
        let params = flag1_linear_kernel(a, &lambda);
        let g0_space = Subspace::full(field, n);
        let block = tuple_count(p, 1 + n);
        let total = tuple_count(p, params.len()) * block;
        strata.push(Stratum {
            kind: 1,
            cov: lambda,
            params,
            g0_space,
            block,
            total,
        });
    }
    // Kind 2 strata (nu nonzero in the covector space).
    for c in 1..cov_count {
        let coords = tuple_at(field, cov_space.dim(), c);
        let nu = cov_space.vector_from_coords(&coords);
        if nu.is_zero() {
            continue;
        }
        let params = flag2_linear_kernel(a, &nu);
        let g0_space = flag2_g0_space(a, &nu);
        let block = tuple_count(p, g0_space.dim());
        let total = tuple_count(p, params.len()) * block;
        strata.push(Stratum {
            kind: 2,
            cov: nu,
            params,
            g0_space,
            block,
            total,
        });
    }

    let grand_total: u128 = strata.iter().map(|s| s.total).sum();
    budget.admit(grand_total)?;
    let range = shard.map_or(0..grand_total, |s| s.range(grand_total));

    let mut first = Vec::new();
    let mut second = Vec::new();
    let mut offset: u128 = 0;
    let g0_count1 = tuple_count(p, n);
    for stratum in &strata {
        let lo = range.start.max(offset);
        let hi = range.end.min(offset + stratum.total);
        if lo >= hi {
            offset += stratum.total;
            continue;
        }
        let k = stratum.params.len();
        let lambda_zero = stratum.cov.is_zero();
        let mut idx = lo - offset;
        let local_hi = hi - offset;
        let mut current_param: Option<u128> = None;
        let mut d = Matrix::zero(field, n, n);
        let mut delta = Matrix::zero(field, n, n);
        let mut m4 = Matrix::zero(field, n, n);
        let mut m5 = Matrix::zero(field, n, n);
        while idx < local_hi {
            let param_idx = idx / stratum.block;
            if current_param != Some(param_idx) {
                current_param = Some(param_idx);
                let coords = tuple_at(field, k, param_idx);
                let mut flat = Vector::zero(field, 2 * n * n);
                for (t, basis_vec) in stratum.params.iter().enumerate() {
                    flat.add_scaled(basis_vec, coords.get(t));
                }
                d = Matrix::from_flat(field, n, n, &flat.slice(0..n * n));
                delta = Matrix::from_flat(field, n, n, &flat.slice(n * n..2 * n * n));
                let dd = d.mul(&d);
                m4 = dd.add(&d.mul(&delta));
                m5 = dd.add(&delta.mul(&d));
                let params_ok = if stratum.kind == 1 {
                    flag1_param_filter(a, &stratum.cov, &d, &delta)
                } else {
                    flag2_param_filter(a, &stratum.cov, &d, &delta, &m4)
                };
                if !params_ok {
                    idx = (param_idx + 1) * stratum.block;
                    continue;
                }
            }
            let rem = idx % stratum.block;
            if stratum.kind == 1 {
                let alpha_idx = rem / g0_count1;
                let alpha = Scalar::Residue {
                    value: alpha_idx as u64,
                    p,
                };
                if !flag1_alpha_filter(a, &stratum.cov, &d, &alpha, lambda_zero) {
                    idx = param_idx * stratum.block + (alpha_idx + 1) * g0_count1;
                    continue;
                }
                let g0 = tuple_at(field, n, rem % g0_count1);
                if flag1_g0_filter(a, &stratum.cov, &d, &delta, &m4, &m5, &alpha, &g0) {
                    first.push(FlagDatum1 {
                        g0,
                        alpha,
                        lambda: stratum.cov.clone(),
                        d: d.clone(),
                        delta: delta.clone(),
                    });
                }
            } else {
                let g0 = stratum.g0_space.vector_from_coords(&tuple_at(
                    field,
                    stratum.g0_space.dim(),
                    rem,
                ));
                if flag2_g0_filter(a, &stratum.cov, &d, &m5, &g0) {
                    second.push(FlagDatum2 {
                        g0,
                        nu: stratum.cov.clone(),
                        d: d.clone(),
                        delta: delta.clone(),
                    });
                }
            }
            idx += 1;
        }
        offset += stratum.total;
    }
    Ok((first, second))
}

/// Kernel of the (F6, F7) joint linear system in (D, Delta); D flattened
/// first.
fn flag1_linear_kernel(a: &Algebra, lambda: &Vector) -> Vec<Vector> {
    let n = a.dim();
    let field = a.field();
    let t = a.bracket();
    let mut sys = Matrix::zero(field, 2 * n * n * n, 2 * n * n);
    let dcol = |r: usize, c: usize| r * n + c;
    let del = |r: usize, c: usize| n * n + r * n + c;
    for i in 0..n {
        for j in 0..n {
            let w = t.fiber(i, j);
            for l in 0..n {
                // (F7) D(w) - [D e_i, e_j] + [D e_j, e_i]
                //      - lambda_i D(e_j) + lambda_j D(e_i) = 0
                let row = (i * n + j) * n + l;
                for b in 0..n {
                    bump(&mut sys, row, dcol(l, b), w.get(b));
                }
                for x in 0..n {
                    let t1 = -t.get(x, j, l);
                    bump(&mut sys, row, dcol(x, i), &t1);
                    bump(&mut sys, row, dcol(x, j), t.get(x, i, l));
                }
                bump(&mut sys, row, dcol(l, j), &-lambda.get(i));
                bump(&mut sys, row, dcol(l, i), lambda.get(j));
                // (F6) Delta(w) - [Delta e_i, e_j] - [e_i, Delta e_j] = 0
                let row = n * n * n + (i * n + j) * n + l;
                for b in 0..n {
                    bump(&mut sys, row, del(l, b), w.get(b));
                }
                for x in 0..n {
                    let t1 = -t.get(x, j, l);
                    bump(&mut sys, row, del(x, i), &t1);
                    let t2 = -t.get(i, x, l);
                    bump(&mut sys, row, del(x, j), &t2);
                }
            }
        }
    }
    sys.kernel()
}

/// Kernel of the (G4, G5) joint linear system in (D, Delta).
fn flag2_linear_kernel(a: &Algebra, nu: &Vector) -> Vec<Vector> {
    let n = a.dim();
    let field = a.field();
    let t = a.bracket();
    let mut sys = Matrix::zero(field, 2 * n * n * n, 2 * n * n);
    let dcol = |r: usize, c: usize| r * n + c;
    let del = |r: usize, c: usize| n * n + r * n + c;
    for i in 0..n {
        for j in 0..n {
            let w = t.fiber(i, j);
            for l in 0..n {
                // (G5) D(w) - [D e_i, e_j] + [D e_j, e_i]
                //      + nu_i D(e_j) - nu_j D(e_i) = 0
                let row = (i * n + j) * n + l;
                for b in 0..n {
                    bump(&mut sys, row, dcol(l, b), w.get(b));
                }
                for x in 0..n {
                    let t1 = -t.get(x, j, l);
                    bump(&mut sys, row, dcol(x, i), &t1);
                    bump(&mut sys, row, dcol(x, j), t.get(x, i, l));
                }
                bump(&mut sys, row, dcol(l, j), nu.get(i));
                bump(&mut sys, row, dcol(l, i), &-nu.get(j));
                // (G4) Delta(w) - [Delta e_i, e_j] - [e_i, Delta e_j]
                //      - nu_j Delta(e_i) - nu_i D(e_j) = 0
                let row = n * n * n + (i * n + j) * n + l;
                for b in 0..n {
                    bump(&mut sys, row, del(l, b), w.get(b));
                }
                for x in 0..n {
                    let t1 = -t.get(x, j, l);
                    bump(&mut sys, row, del(x, i), &t1);
                    let t2 = -t.get(i, x, l);
                    bump(&mut sys, row, del(x, j), &t2);
                }
                bump(&mut sys, row, del(l, i), &-nu.get(j));
                bump(&mut sys, row, dcol(l, j), &-nu.get(i));
            }
        }
    }
    sys.kernel()
}

fn bump(sys: &mut Matrix, row: usize, col: usize, delta: &Scalar) {
    if !delta.is_zero() {
        let cur = sys.get(row, col).clone();
        sys.set(row, col, &cur + delta);
    }
}

/// g0 candidates for kind 2: `[g, g0] = 0` for all g and `nu(g0) = 0`.
fn flag2_g0_space(a: &Algebra, nu: &Vector) -> Subspace {
    let n = a.dim();
    let field = a.field();
    let t = a.bracket();
    let mut sys = Matrix::zero(field, n * n + 1, n);
    for i in 0..n {
        for l in 0..n {
            for j in 0..n {
                sys.set(i * n + l, j, t.get(i, j, l).clone());
            }
        }
    }
    for j in 0..n {
        sys.set(n * n, j, nu.get(j).clone());
    }
    Subspace::from_rows(field, n, &sys.kernel())
}

/// Residual checks independent of alpha and g0: (F3) and the
/// `lambda(Delta(g)) = 0` part of (F1).
fn flag1_param_filter(a: &Algebra, lambda: &Vector, d: &Matrix, delta: &Matrix) -> bool {
    let n = a.dim();
    let field = a.field();
    for g in 0..n {
        if !lambda.dot(&delta.col(g)).is_zero() {
            return false;
        }
    }
    let sum = d.add(delta);
    for h in 0..n {
        let sh = sum.col(h);
        let lam_h = lambda.get(h).clone();
        for g in 0..n {
            let eg = Vector::unit(field, n, g);
            let lhs = a.bracket().eval(&eg, &sh);
            let rhs = delta.col(g).scale(&-&lam_h);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Alpha-level part of (F1); for a zero lambda the only surviving alpha is 0
/// because `lambda(g0) = -alpha^2` then forces `alpha^2 = 0`.
fn flag1_alpha_filter(
    a: &Algebra,
    lambda: &Vector,
    d: &Matrix,
    alpha: &Scalar,
    lambda_zero: bool,
) -> bool {
    if lambda_zero {
        return alpha.is_zero();
    }
    let n = a.dim();
    for g in 0..n {
        let lg = lambda.get(g);
        let unit = Vector::unit(a.field(), n, g);
        let _ = unit;
        let lhs = &lambda.dot(&d.col(g)) + &(alpha * lg);
        if !lhs.is_zero() {
            return false;
        }
    }
    true
}

/// Remaining identities (F2), (F4), (F5) for a full candidate.
#[allow(clippy::too_many_arguments)]
fn flag1_g0_filter(
    a: &Algebra,
    lambda: &Vector,
    d: &Matrix,
    delta: &Matrix,
    m4: &Matrix,
    m5: &Matrix,
    alpha: &Scalar,
    g0: &Vector,
) -> bool {
    let n = a.dim();
    let field = a.field();
    // lambda(g0) = -alpha^2
    if lambda.dot(g0) != -&(alpha * alpha) {
        return false;
    }
    // alpha Delta(g) = -[g, g0]
    for g in 0..n {
        let eg = Vector::unit(field, n, g);
        if delta.col(g).scale(alpha) != a.bracket().eval(&eg, g0).neg() {
            return false;
        }
    }
    // D(g0) = -alpha g0
    if d.apply(g0) != g0.scale(&-alpha) {
        return false;
    }
    // F4 and F5
    let two = field.integer(2);
    for g in 0..n {
        let lg = lambda.get(g);
        if m4.col(g) != g0.scale(&-lg) {
            return false;
        }
        let eg = Vector::unit(field, n, g);
        let rhs = d
            .col(g)
            .scale(alpha)
            .add(&a.bracket().eval(g0, &eg))
            .sub(&g0.scale(&(&two * lg)));
        if m5.col(g) != rhs {
            return false;
        }
    }
    true
}

/// Residual checks independent of g0: (G2) and the first half of (G3).
fn flag2_param_filter(a: &Algebra, nu: &Vector, d: &Matrix, delta: &Matrix, m3a: &Matrix) -> bool {
    let n = a.dim();
    let field = a.field();
    if !m3a.is_zero() {
        return false;
    }
    for g in 0..n {
        if !(&nu.dot(&d.col(g)) + &nu.dot(&delta.col(g))).is_zero() {
            return false;
        }
    }
    let sum = d.add(delta);
    for h in 0..n {
        let sh = sum.col(h);
        for g in 0..n {
            let eg = Vector::unit(field, n, g);
            if !a.bracket().eval(&eg, &sh).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Remaining identities for kind 2: `D(g0) = 0` and the second half of (G3).
fn flag2_g0_filter(a: &Algebra, nu: &Vector, d: &Matrix, m3b: &Matrix, g0: &Vector) -> bool {
    let n = a.dim();
    let field = a.field();
    if !d.apply(g0).is_zero() {
        return false;
    }
    let two = field.integer(2);
    for g in 0..n {
        let eg = Vector::unit(field, n, g);
        let rhs = a
            .bracket()
            .eval(g0, &eg)
            .add(&g0.scale(&(&two * nu.get(g))));
        if m3b.col(g) != rhs {
            return false;
        }
    }
    true
}

/// Witness for the codimension-one equivalence relations: a scale `q` (1 in
/// `Cohom` mode) and an element `G` of the algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagEquivWitness {
    pub q: Scalar,
    pub g: Vector,
}

/// Searches a witness pair `(q, G)` relating two flag datums of the same
/// kind. Kind-1 datums must share `lambda`, kind-2 datums must share `nu`;
/// datums of different kinds are never equivalent. `Cohom` mode fixes
/// `q = 1`. The search runs `q` ascending, then `G` lexicographic.
pub fn flags_equivalent(
    a: &Algebra,
    fd: &FlagDatum,
    fd2: &FlagDatum,
    mode: EquivMode,
) -> Result<Option<FlagEquivWitness>> {
    let FieldSpec::Prime(p) = a.field() else {
        return Err(Error::UnsupportedEnumeration);
    };
    let n = a.dim();
    let field = a.field();
    let q_values: Vec<u64> = match mode {
        EquivMode::Cohom => vec![1],
        EquivMode::Equiv => (1..p).collect(),
    };
    match (fd, fd2) {
        (FlagDatum::First(x), FlagDatum::First(y)) => {
            if x.lambda != y.lambda {
                return Ok(None);
            }
            for qv in q_values {
                let q = Scalar::Residue { value: qv, p };
                for g_idx in 0..tuple_count(p, n) {
                    let big_g = tuple_at(field, n, g_idx);
                    if flag1_related(a, x, y, &q, &big_g) {
                        return Ok(Some(FlagEquivWitness { q, g: big_g }));
                    }
                }
            }
            Ok(None)
        }
        (FlagDatum::Second(x), FlagDatum::Second(y)) => {
            if x.nu != y.nu {
                return Ok(None);
            }
            for qv in q_values {
                let q = Scalar::Residue { value: qv, p };
                for g_idx in 0..tuple_count(p, n) {
                    let big_g = tuple_at(field, n, g_idx);
                    if flag2_related(a, x, y, &q, &big_g) {
                        return Ok(Some(FlagEquivWitness { q, g: big_g }));
                    }
                }
            }
            Ok(None)
        }
        _ => Ok(None),
    }
}

/// The kind-1 witness identities at a fixed pair `(q, G)`; the primed datum
/// is the second argument.
fn flag1_related(a: &Algebra, x: &FlagDatum1, y: &FlagDatum1, q: &Scalar, big_g: &Vector) -> bool {
    let lam_g = y.lambda.dot(big_g);
    // alpha = q alpha' + lambda'(G)
    if x.alpha != &(q * &y.alpha) + &lam_g {
        return false;
    }
    // D = q D' + [G, -] - lambda'(.) G
    let target_d = y
        .d
        .scale(q)
        .add(&a.ad_left(big_g))
        .sub(&Matrix::outer(big_g, &y.lambda));
    if x.d != target_d {
        return false;
    }
    // Delta = q Delta' + [-, G]
    let target_delta = y.delta.scale(q).add(&a.ad_right(big_g));
    if x.delta != target_delta {
        return false;
    }
    // g0 = q^2 g0' + [G,G] + q D'(G) + q Delta'(G) - q alpha' G - lambda'(G) G
    let target_g0 = y
        .g0
        .scale(&(q * q))
        .add(&a.bracket().eval(big_g, big_g))
        .add(&y.d.apply(big_g).scale(q))
        .add(&y.delta.apply(big_g).scale(q))
        .sub(&big_g.scale(&(q * &y.alpha)))
        .sub(&big_g.scale(&lam_g));
    x.g0 == target_g0
}

/// The kind-2 witness identities at a fixed pair `(q, G)`.
fn flag2_related(a: &Algebra, x: &FlagDatum2, y: &FlagDatum2, q: &Scalar, big_g: &Vector) -> bool {
    // D = q D' + [G, -] + nu'(.) G
    let target_d = y
        .d
        .scale(q)
        .add(&a.ad_left(big_g))
        .add(&Matrix::outer(big_g, &y.nu));
    if x.d != target_d {
        return false;
    }
    // Delta = q Delta' + [-, G] - nu'(.) G
    let target_delta = y
        .delta
        .scale(q)
        .add(&a.ad_right(big_g))
        .sub(&Matrix::outer(big_g, &y.nu));
    if x.delta != target_delta {
        return false;
    }
    // g0 = q^2 g0' + [G,G] + q D'(G) + q Delta'(G)
    let target_g0 = y
        .g0
        .scale(&(q * q))
        .add(&a.bracket().eval(big_g, big_g))
        .add(&y.d.apply(big_g).scale(q))
        .add(&y.delta.apply(big_g).scale(q));
    x.g0 == target_g0
}

/// One equivalence class: its first representative in enumeration order and
/// its size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagClass {
    pub representative: FlagDatum,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagClassification {
    pub mode: EquivMode,
    pub f1_count: usize,
    pub f2_count: usize,
    pub classes: Vec<FlagClass>,
}

impl FlagClassification {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }
}

/// Partitions an already-enumerated set of flag datums by the chosen
/// relation. Each datum is compared against one representative per existing
/// class (the relations are equivalences, verified separately by the test
/// suite).
pub fn classify_flag_set(
    a: &Algebra,
    all: &[FlagDatum],
    mode: EquivMode,
) -> Result<Vec<FlagClass>> {
    let mut classes: Vec<FlagClass> = Vec::new();
    for fd in all {
        let mut placed = false;
        for class in classes.iter_mut() {
            if flags_equivalent(a, fd, &class.representative, mode)?.is_some() {
                class.size += 1;
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(FlagClass {
                representative: fd.clone(),
                size: 1,
            });
        }
    }
    Ok(classes)
}

/// Enumerates all flag datums and partitions them by the chosen relation.
pub fn classify_flags(a: &Algebra, mode: EquivMode, budget: &Budget) -> Result<FlagClassification> {
    let (first, second) = enumerate_flag_datums(a, budget, None)?;
    let f1_count = first.len();
    let f2_count = second.len();
    let all: Vec<FlagDatum> = first
        .into_iter()
        .map(FlagDatum::First)
        .chain(second.into_iter().map(FlagDatum::Second))
        .collect();
    let classes = classify_flag_set(a, &all, mode)?;
    Ok(FlagClassification {
        mode,
        f1_count,
        f2_count,
        classes,
    })
}

/// Driver for multi-step extensions: repeatedly applies the codimension-one
/// machinery, returning every algebra reachable in exactly `steps` steps.
/// No de-duplication is attempted.
pub fn iterate_flag_extensions(a: &Algebra, steps: usize, budget: &Budget) -> Result<Vec<Algebra>> {
    let mut level = vec![a.clone()];
    for _ in 0..steps {
        let mut next = Vec::new();
        for alg in &level {
            let (first, second) = enumerate_flag_datums(alg, budget, None)?;
            for fd in first.into_iter().map(FlagDatum::First) {
                next.push(flag_product(alg, &fd)?);
            }
            for fd in second.into_iter().map(FlagDatum::Second) {
                next.push(flag_product(alg, &fd)?);
            }
        }
        level = next;
    }
    Ok(level)
}

/// Extracts the flag datum of a validated codimension-one extending datum.
pub fn datum_to_flag(d: &ExtendingDatum) -> Result<FlagDatum> {
    if d.v_dim() != 1 {
        return Err(Error::DimensionMismatch {
            context: "flag extraction needs a one-dimensional complement".into(),
        });
    }
    let n = d.g().dim();
    let field = d.field();
    let mut nu = Vector::zero(field, n);
    for g in 0..n {
        nu.set(g, d.rh().get(g, 0, 0).clone());
    }
    let mut dmat = Matrix::zero(field, n, n);
    let mut delta = Matrix::zero(field, n, n);
    for g in 0..n {
        for l in 0..n {
            dmat.set(l, g, d.ra().get(0, g, l).clone());
            delta.set(l, g, d.lh().get(g, 0, l).clone());
        }
    }
    let g0 = d.f().fiber(0, 0);
    if nu.is_zero() {
        let mut lambda = Vector::zero(field, n);
        for g in 0..n {
            lambda.set(g, d.la().get(0, g, 0).clone());
        }
        Ok(FlagDatum::First(FlagDatum1 {
            g0,
            alpha: d.vb().get(0, 0, 0).clone(),
            lambda,
            d: dmat,
            delta,
        }))
    } else {
        Ok(FlagDatum::Second(FlagDatum2 {
            g0,
            nu,
            d: dmat,
            delta,
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::products::validate_extending_structure;
    use crate::testutil::{sl2, three_dim};

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    fn zero_flag1(a: &Algebra) -> FlagDatum1 {
        FlagDatum1 {
            g0: Vector::zero(a.field(), a.dim()),
            alpha: a.field().zero(),
            lambda: Vector::zero(a.field(), a.dim()),
            d: Matrix::zero(a.field(), a.dim(), a.dim()),
            delta: Matrix::zero(a.field(), a.dim(), a.dim()),
        }
    }

    #[test]
    fn zero_flag_datum_passes_and_maps_to_trivial_datum() {
        let a = three_dim(q());
        let fd = zero_flag1(&a);
        assert!(flag1_check(&a, &fd).pass());
        let d = flag_to_datum(&a, &FlagDatum::First(fd)).unwrap();
        assert!(validate_extending_structure(&d).pass());
        assert!(d.la().is_zero() && d.ra().is_zero() && d.f().is_zero());
    }

    #[test]
    fn flag2_rejects_zero_nu() {
        let a = three_dim(q());
        let fd = FlagDatum2 {
            g0: Vector::zero(q(), 3),
            nu: Vector::zero(q(), 3),
            d: Matrix::zero(q(), 3, 3),
            delta: Matrix::zero(q(), 3, 3),
        };
        assert!(matches!(flag2_check(&a, &fd), Err(Error::ZeroNu)));
    }

    #[test]
    fn perfect_algebra_forces_g1_failure() {
        let a = sl2(q());
        let fd = FlagDatum2 {
            g0: Vector::zero(q(), 3),
            nu: Vector::from_ints(q(), &[1, 0, 0]),
            d: Matrix::zero(q(), 3, 3),
            delta: Matrix::zero(q(), 3, 3),
        };
        let report = flag2_check(&a, &fd).unwrap();
        assert!(!report.result("G1").unwrap().pass);
    }

    #[test]
    fn enumerate_small_abelian_f2() {
        let f2 = FieldSpec::prime(2).unwrap();
        let a = Algebra::from_int_entries(f2, 1, &[]).unwrap();
        let (first, second) = enumerate_flag_datums(&a, &Budget::default(), None).unwrap();
        for fd in &first {
            assert!(flag1_check(&a, fd).pass());
            assert!(flag_product(&a, &FlagDatum::First(fd.clone())).is_ok());
        }
        for fd in &second {
            assert!(flag2_check(&a, fd).unwrap().pass());
            assert!(flag_product(&a, &FlagDatum::Second(fd.clone())).is_ok());
        }
        assert!(!first.is_empty());
        assert!(!second.is_empty());
    }

    #[test]
    fn enumeration_agrees_with_validator_on_tiny_cases() {
        // All valid v_dim = 1 datums are exactly the images of flag datums.
        let f3 = FieldSpec::prime(3).unwrap();
        let a = Algebra::from_int_entries(f3, 1, &[]).unwrap();
        let mut valid: Vec<ExtendingDatum> = Vec::new();
        for d in ExtendingDatum::enumerate(&a, 1, None).unwrap() {
            if validate_extending_structure(&d).pass() {
                valid.push(d);
            }
        }
        let (first, second) = enumerate_flag_datums(&a, &Budget::default(), None).unwrap();
        let mut images: Vec<ExtendingDatum> = Vec::new();
        for fd in first.into_iter().map(FlagDatum::First) {
            images.push(flag_to_datum(&a, &fd).unwrap());
        }
        for fd in second.into_iter().map(FlagDatum::Second) {
            images.push(flag_to_datum(&a, &fd).unwrap());
        }
        valid.sort();
        images.sort();
        assert_eq!(valid, images);
        for d in &valid {
            let fd = datum_to_flag(d).unwrap();
            assert_eq!(flag_to_datum(&a, &fd).unwrap(), *d);
        }
    }

    #[test]
    fn self_equivalence_uses_trivial_witness() {
        let f3 = FieldSpec::prime(3).unwrap();
        let a = three_dim(f3);
        let fd = FlagDatum::First(zero_flag1(&a));
        let w = flags_equivalent(&a, &fd, &fd, EquivMode::Equiv)
            .unwrap()
            .unwrap();
        assert!(w.q.is_one());
        assert!(w.g.is_zero());
        let w = flags_equivalent(&a, &fd, &fd, EquivMode::Cohom)
            .unwrap()
            .unwrap();
        assert!(w.q.is_one());
    }

    #[test]
    fn kind_mismatch_and_lambda_mismatch_are_inequivalent() {
        let f3 = FieldSpec::prime(3).unwrap();
        let a = three_dim(f3);
        let (first, second) = enumerate_flag_datums(&a, &Budget::default(), None).unwrap();
        let fd1 = FlagDatum::First(first[0].clone());
        let fd2 = FlagDatum::Second(second[0].clone());
        assert!(flags_equivalent(&a, &fd1, &fd2, EquivMode::Equiv)
            .unwrap()
            .is_none());
        let with_lambda = first
            .iter()
            .find(|fd| !fd.lambda.is_zero())
            .expect("a nonzero lambda stratum");
        assert!(flags_equivalent(
            &a,
            &FlagDatum::First(first[0].clone()),
            &FlagDatum::First(with_lambda.clone()),
            EquivMode::Equiv
        )
        .unwrap()
        .is_none());
    }

    #[test]
    fn flag_extension_driver_grows_dimension() {
        let f2 = FieldSpec::prime(2).unwrap();
        let a = Algebra::from_int_entries(f2, 1, &[]).unwrap();
        let level2 = iterate_flag_extensions(&a, 2, &Budget::default()).unwrap();
        assert!(!level2.is_empty());
        for alg in level2.iter().take(20) {
            assert_eq!(alg.dim(), 3);
            assert!(alg.check_leibniz().is_ok());
        }
    }
}
