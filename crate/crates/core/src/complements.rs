//! Deformation maps of a matched pair, r-deformations, graph complements,
//! and the classification of complements of a subalgebra inside a
//! factorization (the factorization index).

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::{tuple_at, tuple_count, Matrix, Subspace, Tensor3, Vector};
use crate::morphisms::is_homomorphism;
use crate::products::{bicrossed_product, validate_matched_pair, MatchedPair};
use crate::{Budget, Shard};

/// First basis pair violating the deformation-map identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationWitness {
    pub x: usize,
    pub y: usize,
    pub lhs: Vector,
    pub rhs: Vector,
}

/// Checks `r({x,y}) - [r(x), r(y)] = x |> r(y) + r(x) <- y
/// - r(x <| r(y) + r(x) -> y)` on all basis pairs of `h`; `None` means `r`
/// is a deformation map.
pub fn deformation_check(mp: &MatchedPair, r: &Matrix) -> Result<Option<DeformationWitness>> {
    let d = mp.datum();
    let n = d.g().dim();
    let m = d.v_dim();
    let field = d.field();
    if r.rows() != n || r.cols() != m || r.field() != field {
        return Err(Error::DimensionMismatch {
            context: "deformation map must send h into g".into(),
        });
    }
    let gbr = |a: &Vector, b: &Vector| d.g().bracket().eval(a, b);
    for x in 0..m {
        let ex = Vector::unit(field, m, x);
        let rx = r.col(x);
        for y in 0..m {
            let ey = Vector::unit(field, m, y);
            let ry = r.col(y);
            let lhs = r.apply(&d.vb().eval(&ex, &ey)).sub(&gbr(&rx, &ry));
            let inner = d.la().eval(&ex, &ry).add(&d.rh().eval(&rx, &ey));
            let rhs = d
                .ra()
                .eval(&ex, &ry)
                .add(&d.lh().eval(&rx, &ey))
                .sub(&r.apply(&inner));
            if lhs != rhs {
                return Ok(Some(DeformationWitness { x, y, lhs, rhs }));
            }
        }
    }
    Ok(None)
}

/// `h` with the deformed bracket `[x,y]_r = {x,y} + x <| r(y) + r(x) -> y`.
/// The Leibniz identity of the result is re-verified, not assumed.
pub fn r_deformation(mp: &MatchedPair, r: &Matrix) -> Result<Algebra> {
    if deformation_check(mp, r)?.is_some() {
        return Err(Error::NotDeformationMap);
    }
    let d = mp.datum();
    let m = d.v_dim();
    let field = d.field();
    let mut tensor = Tensor3::zero(field, (m, m, m));
    for x in 0..m {
        let ex = Vector::unit(field, m, x);
        let rx = r.col(x);
        for y in 0..m {
            let ey = Vector::unit(field, m, y);
            let fiber = d
                .vb()
                .eval(&ex, &ey)
                .add(&d.la().eval(&ex, &r.col(y)))
                .add(&d.rh().eval(&rx, &ey));
            tensor.set_fiber(x, y, &fiber);
        }
    }
    Algebra::new(field, m, tensor)
}

/// The graph `{(r(x), x)}` inside the bicrossed product; verified to be a
/// complement of the g block whose induced bracket table equals the
/// r-deformation.
pub fn graph_complement(mp: &MatchedPair, r: &Matrix) -> Result<Subspace> {
    let deformed = r_deformation(mp, r)?;
    let d = mp.datum();
    let n = d.g().dim();
    let m = d.v_dim();
    let field = d.field();
    let product = bicrossed_product(mp);
    let rows: Vec<Vector> = (0..m)
        .map(|x| r.col(x).concat(&Vector::unit(field, m, x)))
        .collect();

    // Closure: brackets of graph rows stay in the graph, and the structure
    // constants in the graph basis reproduce the r-deformation. Coordinates
    // in the graph basis can be read off the V block.
    for (x, wx) in rows.iter().enumerate() {
        for (y, wy) in rows.iter().enumerate() {
            let w = product.bracket_eval(wx, wy)?;
            let coords = w.slice(n..n + m);
            let mut rebuilt = Vector::zero(field, n + m);
            for t in 0..m {
                rebuilt.add_scaled(&rows[t], coords.get(t));
            }
            if rebuilt != w {
                return Err(Error::NotSubalgebra);
            }
            if coords != deformed.bracket_basis(x, y) {
                return Err(Error::NotDeformationMap);
            }
        }
    }

    let graph = Subspace::from_rows(field, n + m, &rows);
    let g_block = Subspace::coordinate(field, n + m, &(0..n).collect::<Vec<_>>());
    if !graph.intersects_trivially(&g_block) || !graph.sum(&g_block).is_full() {
        return Err(Error::NotComplement);
    }
    Ok(graph)
}

/// All deformation maps of the matched pair, in lexicographic matrix order.
pub fn enumerate_deformation_maps(
    mp: &MatchedPair,
    budget: &Budget,
    shard: Option<Shard>,
) -> Result<Vec<Matrix>> {
    let d = mp.datum();
    let FieldSpec::Prime(p) = d.field() else {
        return Err(Error::UnsupportedEnumeration);
    };
    let n = d.g().dim();
    let m = d.v_dim();
    let total = tuple_count(p, n * m);
    budget.admit(total)?;
    let range = shard.map_or(0..total, |s| s.range(total));
    let mut out = Vec::new();
    for idx in range {
        let r = Matrix::from_flat(d.field(), n, m, &tuple_at(d.field(), n * m, idx));
        if deformation_check(mp, &r)?.is_none() {
            out.push(r);
        }
    }
    Ok(out)
}

/// Searches an automorphism `sigma` of `h` relating two deformation maps:
///
/// ```text
/// sigma({x,y}) - {sigma x, sigma y} =
///     sigma(x) <| R(sigma y) + R(sigma x) -> sigma(y)
///     - sigma(x <| r(y)) - sigma(r(x) -> y)
/// ```
///
/// A found witness is independently confirmed to be an isomorphism of the
/// two deformed algebras.
pub fn deformations_equivalent(
    mp: &MatchedPair,
    r: &Matrix,
    r2: &Matrix,
) -> Result<Option<Matrix>> {
    let d = mp.datum();
    let FieldSpec::Prime(p) = d.field() else {
        return Err(Error::UnsupportedEnumeration);
    };
    let m = d.v_dim();
    let field = d.field();
    let total = tuple_count(p, m * m);
    for idx in 0..total {
        let sigma = Matrix::from_flat(field, m, m, &tuple_at(field, m * m, idx));
        if !sigma.is_invertible() {
            continue;
        }
        if deformation_sigma_related(mp, r, r2, &sigma) {
            let ha = r_deformation(mp, r)?;
            let hb = r_deformation(mp, r2)?;
            if !is_homomorphism(&ha, &hb, &sigma)? {
                return Err(Error::Document(
                    "equivalence witness failed the independent morphism check".into(),
                ));
            }
            return Ok(Some(sigma));
        }
    }
    Ok(None)
}

fn deformation_sigma_related(mp: &MatchedPair, r: &Matrix, r2: &Matrix, sigma: &Matrix) -> bool {
    let d = mp.datum();
    let m = d.v_dim();
    let field = d.field();
    for x in 0..m {
        let ex = Vector::unit(field, m, x);
        let sx = sigma.col(x);
        for y in 0..m {
            let ey = Vector::unit(field, m, y);
            let sy = sigma.col(y);
            let lhs = sigma
                .apply(&d.vb().eval(&ex, &ey))
                .sub(&d.vb().eval(&sx, &sy));
            let rhs = d
                .la()
                .eval(&sx, &r2.apply(&sy))
                .add(&d.rh().eval(&r2.apply(&sx), &sy))
                .sub(&sigma.apply(&d.la().eval(&ex, &r.col(y))))
                .sub(&sigma.apply(&d.rh().eval(&r.col(x), &ey)));
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// The canonical matched pair of a factorization `e = g + h` with trivial
/// intersection: actions obtained by splitting brackets through the
/// projection onto `g` along `h`.
pub fn canonical_matched_pair(e: &Algebra, g_sub: &Subspace, h_sub: &Subspace) -> Result<MatchedPair> {
    let ne = e.dim();
    let field = e.field();
    if g_sub.ambient() != ne || h_sub.ambient() != ne {
        return Err(Error::DimensionMismatch {
            context: "subspaces must live in the ambient space".into(),
        });
    }
    if !g_sub.intersects_trivially(h_sub) || !g_sub.sum(h_sub).is_full() {
        return Err(Error::NotComplement);
    }
    let g_alg = e.induced_subalgebra(g_sub).map_err(|_| Error::NotSubalgebra)?;
    let h_alg = e.induced_subalgebra(h_sub).map_err(|_| Error::NotComplement)?;
    let n = g_alg.dim();
    let m = h_alg.dim();

    // Coordinates of any ambient vector in the combined basis (g then h).
    let mut cols = g_sub.basis_vectors();
    cols.extend(h_sub.basis_vectors());
    let b = Matrix::from_cols(field, &cols);
    let b_inv = b.invert().ok_or(Error::NotComplement)?;
    let split = |w: &Vector| -> (Vector, Vector) {
        let coords = b_inv.apply(w);
        (coords.slice(0..n), coords.slice(n..n + m))
    };

    let mut la = Tensor3::zero(field, (m, n, m));
    let mut ra = Tensor3::zero(field, (m, n, n));
    let mut lh = Tensor3::zero(field, (n, m, n));
    let mut rh = Tensor3::zero(field, (n, m, m));
    let g_basis = g_sub.basis_vectors();
    let h_basis = h_sub.basis_vectors();
    for (xi, x) in h_basis.iter().enumerate() {
        for (gj, g) in g_basis.iter().enumerate() {
            let (gp, hp) = split(&e.bracket_eval(x, g)?);
            ra.set_fiber(xi, gj, &gp);
            la.set_fiber(xi, gj, &hp);
            let (gp, hp) = split(&e.bracket_eval(g, x)?);
            lh.set_fiber(gj, xi, &gp);
            rh.set_fiber(gj, xi, &hp);
        }
    }
    let mp = MatchedPair::new(g_alg, h_alg, la, ra, lh, rh)?;
    let report = validate_matched_pair(&mp);
    if !report.pass() {
        return Err(Error::AxiomViolation {
            axiom: report.first_failure().map(|r| r.id).unwrap_or("MP"),
        });
    }
    Ok(mp)
}

/// One isomorphism class of complements: the first deformation map in
/// lexicographic order, the class size, and the deformed algebra.
#[derive(Clone, Debug)]
pub struct ComplementClass {
    pub representative: Matrix,
    pub size: usize,
    pub deformed: Algebra,
}

#[derive(Clone, Debug)]
pub struct FactorizationReport {
    pub matched_pair: MatchedPair,
    pub deformation_count: usize,
    pub classes: Vec<ComplementClass>,
}

impl FactorizationReport {
    pub fn index(&self) -> usize {
        self.classes.len()
    }
}

/// Builds the canonical matched pair of the factorization, enumerates its
/// deformation maps and partitions them by the equivalence; the class count
/// is the factorization index.
pub fn factorization_index(
    e: &Algebra,
    g_sub: &Subspace,
    h_sub: &Subspace,
    budget: &Budget,
) -> Result<FactorizationReport> {
    let mp = canonical_matched_pair(e, g_sub, h_sub)?;
    let maps = enumerate_deformation_maps(&mp, budget, None)?;
    let mut classes: Vec<ComplementClass> = Vec::new();
    for r in &maps {
        let mut placed = false;
        for class in classes.iter_mut() {
            if deformations_equivalent(&mp, r, &class.representative)?.is_some() {
                class.size += 1;
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(ComplementClass {
                representative: r.clone(),
                size: 1,
                deformed: r_deformation(&mp, r)?,
            });
        }
    }
    Ok(FactorizationReport {
        matched_pair: mp,
        deformation_count: maps.len(),
        classes,
    })
}
