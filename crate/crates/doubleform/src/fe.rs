//! Piecewise-polynomial double-form spaces on simplicial triangulations:
//! local extension of trace-free face forms into cells, global basis
//! assembly with single-valued traces, degree-of-freedom tables, and the
//! closed-form dimension counts they must match.

use std::collections::{BTreeMap, BTreeSet};

use crate::double::{basis_pairs, binom_i128, eigenvalue, valid_summands, DoubleCovector};
use crate::extension::{extend, ExtendError};
use crate::linalg::Mat;
use crate::poly::{Coords, PolyDoubleForm};
use crate::scalar::Scalar;
use crate::simplex::{
    facet_trace, trace_to_simplex, vanishing_trace_basis, SimplexForm,
};

/// A pure simplicial complex: every cell has the same dimension, and the
/// face set is whatever subset enumeration produces. Only the face poset
/// matters; no manifoldness is assumed.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplicialComplex {
    num_vertices: usize,
    cells: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    pub fn new(num_vertices: usize, cells: Vec<Vec<usize>>) -> Self {
        assert!(!cells.is_empty(), "complex needs at least one cell");
        let n = cells[0].len();
        for c in &cells {
            assert_eq!(c.len(), n, "cells must share one dimension");
            assert!(c.windows(2).all(|w| w[0] < w[1]), "cell vertices must increase");
            assert!(c.iter().all(|&v| v < num_vertices), "vertex index out of range");
        }
        SimplicialComplex { num_vertices, cells }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    /// Dimension N of the cells.
    pub fn dimension(&self) -> usize {
        self.cells[0].len() - 1
    }

    /// Every nonempty face of every cell, ordered by dimension then
    /// lexicographically.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut set: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
        for cell in &self.cells {
            for mask in 1u32..(1 << cell.len()) {
                let face: Vec<usize> = cell
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &v)| v)
                    .collect();
                set.insert((face.len(), face));
            }
        }
        set.into_iter().map(|(_, f)| f).collect()
    }

    pub fn faces_of_dim(&self, l: usize) -> Vec<Vec<usize>> {
        self.faces().into_iter().filter(|f| f.len() == l + 1).collect()
    }

    /// Indices of the cells whose vertex set contains the face.
    pub fn cells_containing(&self, face: &[usize]) -> Vec<usize> {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, c)| face.iter().all(|v| c.contains(v)))
            .map(|(i, _)| i)
            .collect()
    }
}

/// One element of the geometric-decomposition basis: owned by a face, with
/// a local form on every cell containing that face (zero elsewhere).
#[derive(Clone, Debug, PartialEq)]
pub struct GlobalBasisElement<S> {
    pub owner_face: Vec<usize>,
    /// cell index → local form in that cell's canonical coordinates
    pub local: BTreeMap<usize, SimplexForm<S>>,
    pub p: usize,
    pub q: usize,
    pub m: usize,
    pub r: u32,
    /// position within the owner face's trace-free basis
    pub local_index: usize,
}

/// Extends a trace-free form on the face F into a containing cell C.
///
/// The extension theorem produces a homogeneous form in F's barycentric
/// variables with vanishing hyperplane traces. Adding the vertices of C∖F
/// (in increasing global order) only injects those variables into a larger
/// coordinate set, one step at a time; the composite injection is the same
/// for every insertion order, so the chain is computed in one pullback. The
/// result restricts to φ̄ on F and to zero on every face of C missing a
/// vertex of F.
pub fn local_extend_chain<S: Scalar>(
    phi: &SimplexForm<S>,
    cell: &[usize],
    m: usize,
    r: u32,
) -> Result<SimplexForm<S>, ExtendError> {
    let f = phi.vertices();
    assert!(f.iter().all(|v| cell.contains(v)), "cell must contain the face");
    assert!(cell.windows(2).all(|w| w[0] < w[1]), "cell vertices must increase");
    if f.len() == cell.len() {
        // E restricted to its own face is the inclusion
        return Ok(phi.clone());
    }
    let on_cell = ambient_extension(phi, cell, m, r)?;
    Ok(trace_to_simplex(&on_cell, cell.len() - 1).relabel(cell.to_vec()))
}

/// The ambient λ-expression behind the chain: F's extension with its
/// barycentric variables injected into C's (λ^F_j = λ^C_{pos(F_j)}, zero
/// elsewhere). Restricting it to C reproduces `local_extend_chain`.
pub fn ambient_extension<S: Scalar>(
    phi: &SimplexForm<S>,
    cell: &[usize],
    m: usize,
    r: u32,
) -> Result<PolyDoubleForm<S>, ExtendError> {
    let f = phi.vertices().to_vec();
    assert!(f.iter().all(|v| cell.contains(v)), "cell must contain the face");
    let (p, q) = (phi.form().p(), phi.form().q());
    let ext = extend(phi, p, q, m, r)?.form;
    let nc = cell.len();
    let mut a = Mat::<S>::zeros(f.len(), nc);
    for (j, v) in f.iter().enumerate() {
        let pos = cell.iter().position(|w| w == v).unwrap();
        a.set(j, pos, S::one());
    }
    let b = vec![S::zero(); f.len()];
    Ok(ext.pullback_affine(&a, &b).with_coords(Coords::Lambda))
}

/// The geometric-decomposition basis of 𝓟_r Λ^{p,q}_m(𝒯): one element per
/// (face, trace-free basis element of that face), extended into every cell
/// containing the face.
pub fn global_basis<S: Scalar>(
    complex: &SimplicialComplex,
    p: usize,
    q: usize,
    m: usize,
    r: u32,
) -> Result<Vec<GlobalBasisElement<S>>, ExtendError> {
    if r == 0 && m == q {
        return Err(ExtendError::ExtensionUnavailable);
    }
    // reference trace-free bases, one per face dimension
    let mut reference: BTreeMap<usize, Vec<SimplexForm<S>>> = BTreeMap::new();
    let mut out = Vec::new();
    for face in complex.faces() {
        let l = face.len() - 1;
        let basis = reference
            .entry(l)
            .or_insert_with(|| {
                if crate::double::valid_summands(p, q, l).contains(&m) {
                    vanishing_trace_basis::<S>(p, q, m, r, l)
                } else {
                    Vec::new()
                }
            })
            .clone();
        for (local_index, reference_form) in basis.iter().enumerate() {
            let owned = reference_form.relabel(face.clone());
            let mut local = BTreeMap::new();
            for ci in complex.cells_containing(&face) {
                let ext = local_extend_chain(&owned, &complex.cells()[ci], m, r)?;
                local.insert(ci, ext);
            }
            out.push(GlobalBasisElement {
                owner_face: face.clone(),
                local,
                p,
                q,
                m,
                r,
                local_index,
            });
        }
    }
    Ok(out)
}

/// Pullback of a cell-local form onto a sub-face given by global vertices,
/// dropping the complementary vertices one at a time.
pub fn trace_to_face<S: Scalar>(phi: &SimplexForm<S>, face: &[usize]) -> SimplexForm<S> {
    let mut cur = phi.clone();
    while cur.vertices().len() > face.len() {
        let role = cur
            .vertices()
            .iter()
            .position(|v| !face.contains(v))
            .expect("face must be a subset of the form's vertex set");
        cur = facet_trace(&cur, role);
    }
    assert_eq!(cur.vertices(), face, "face is not a subset of the simplex");
    cur
}

/// Outcome of the cross-cell trace consistency check.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SingleValuedReport {
    /// (basis element index, cell a, cell b, shared face) for each mismatch
    pub violations: Vec<(usize, usize, usize, Vec<usize>)>,
    pub pairs_checked: usize,
}

impl SingleValuedReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verifies that every basis element induces a single-valued trace on every
/// face shared by two cells. Cells without a stored local form contribute
/// the zero form.
pub fn check_single_valued<S: Scalar>(
    basis: &[GlobalBasisElement<S>],
    complex: &SimplicialComplex,
) -> SingleValuedReport {
    let mut report = SingleValuedReport::default();
    let cells = complex.cells();
    for a in 0..cells.len() {
        for b in (a + 1)..cells.len() {
            let shared: Vec<usize> =
                cells[a].iter().copied().filter(|v| cells[b].contains(v)).collect();
            if shared.is_empty() {
                continue;
            }
            report.pairs_checked += 1;
            for (idx, elem) in basis.iter().enumerate() {
                let (p, q) = (elem.p, elem.q);
                let side = |ci: usize| -> SimplexForm<S> {
                    match elem.local.get(&ci) {
                        Some(f) => trace_to_face(f, &shared),
                        None => SimplexForm::new(
                            shared.len() - 1,
                            shared.clone(),
                            crate::poly::PolyDoubleForm::zero(
                                shared.len() - 1,
                                p,
                                q,
                                Coords::Affine,
                            ),
                        ),
                    }
                };
                if side(a) != side(b) {
                    report.violations.push((idx, a, b, shared.clone()));
                }
            }
        }
    }
    report
}

fn ratio_product(num: i128, den: i128, factors: &[i128]) -> i128 {
    let total: i128 = factors.iter().product::<i128>() * num;
    assert_eq!(total % den, 0, "dimension formula must divide exactly");
    total / den
}

/// dim 𝓟̊₀Λ^{p,q}_m(T^n), the trace-free constant-coefficient space:
/// ((p−q+2m+1)/(p+m+1))·C(n+1, q−m)·C(q−m−1, n−p−m).
pub fn dim_trace_free(p: usize, q: usize, m: usize, n: usize) -> i128 {
    let lo = if q > p { q - p } else { 0 };
    assert!(m >= lo && m + 1 <= q, "m out of range for the trace-free count");
    let (p, q, m, n) = (p as i128, q as i128, m as i128, n as i128);
    ratio_product(
        p - q + 2 * m + 1,
        p + m + 1,
        &[binom_i128(n + 1, q - m), binom_i128(q - m - 1, n - p - m)],
    )
}

/// dim 𝓟₀Λ^{p,q}_m(T^n), the full constant-coefficient summand:
/// ((p−q+2m+1)/(p+m+1))·C(n+1, q−m)·C(n, p+m).
pub fn dim_full(p: usize, q: usize, m: usize, n: usize) -> i128 {
    let lo = if q > p { q - p } else { 0 };
    assert!(m >= lo, "m out of range for the summand count");
    let (p, q, m, n) = (p as i128, q as i128, m as i128, n as i128);
    ratio_product(
        p - q + 2 * m + 1,
        p + m + 1,
        &[binom_i128(n + 1, q - m), binom_i128(n, p + m)],
    )
}

/// dim 𝓗̊₀Λ^{p,q}_m(ℝ^{n+1}), homogeneous degree-0 forms on the ambient
/// space with vanishing traces on every coordinate hyperplane.
pub fn dim_ring(p: usize, q: usize, m: usize, n: usize) -> i128 {
    let lo = if q > p { q - p } else { 0 };
    assert!(m >= lo, "m out of range for the ring count");
    if m + 1 <= q {
        let (p, q, m, n) = (p as i128, q as i128, m as i128, n as i128);
        ratio_product(
            p - q + 2 * m + 1,
            q - m,
            &[binom_i128(n + 1, q - m - 1), binom_i128(q - m, n + 1 - p - m)],
        )
    } else if m == q && p + q == n + 1 {
        1
    } else {
        0
    }
}

/// Basis of 𝓗̊₀Λ^{p,q}_m(ℝ^{n+1}) by rank: constant forms in the m-summand
/// with vanishing pullback to every coordinate hyperplane. A constant term
/// survives the trace onto {λ_i = 0} exactly when i avoids both index sets,
/// so the trace constraints pin the coefficients of all non-covering pairs.
pub fn ring_basis<S: Scalar>(p: usize, q: usize, m: usize, n: usize) -> Vec<DoubleCovector<S>> {
    let d = n + 1;
    assert!(
        valid_summands(p, q, d).contains(&m),
        "invalid summand m={m} for ({p},{q}) forms in dimension {d}"
    );
    let pairs = basis_pairs(d, p, q);
    let ncols = pairs.len();
    if ncols == 0 {
        return Vec::new();
    }

    let mut rows: Vec<Vec<S>> = Vec::new();
    let lam = S::from_int(eigenvalue(p, q, m));
    let images: Vec<Vec<S>> = pairs
        .iter()
        .map(|(i, j)| {
            let e = DoubleCovector::<S>::basis(d, i.clone(), j.clone());
            e.bianchi_s().bianchi_s_star().sub(&e.scale(&lam)).to_vec()
        })
        .collect();
    for r in 0..ncols {
        rows.push((0..ncols).map(|c| images[c][r].clone()).collect());
    }
    for (c, (i, j)) in pairs.iter().enumerate() {
        let covering = (0..d as u8).all(|v| i.contains(v) || j.contains(v));
        if !covering {
            let mut row = vec![S::zero(); ncols];
            row[c] = S::one();
            rows.push(row);
        }
    }
    Mat::from_rows(rows)
        .nullspace_basis()
        .into_iter()
        .map(|v| DoubleCovector::from_vec(d, p, q, &v))
        .collect()
}

/// Degrees of freedom per face dimension for the lowest-order space:
/// l ↦ dim 𝓟̊₀Λ^{p,q}_m(T^l), keeping only nonzero entries up to N.
pub fn dof_table(p: usize, q: usize, m: usize, big_n: usize) -> BTreeMap<usize, i128> {
    let lo = if q > p { q - p } else { 0 };
    assert!(m >= lo && m + 1 <= q, "DOF tables need max(0, q−p) ≤ m ≤ q−1");
    let mut out = BTreeMap::new();
    for l in 0..=big_n {
        let c = dim_trace_free(p, q, m, l);
        if c != 0 {
            out.insert(l, c);
        }
    }
    out
}

/// Checks Σ_l C(n+1, l+1)·dim 𝓟̊₀(T^l) = dim 𝓟₀(T^n): the DOF counts on
/// the faces of one n-simplex assemble to the full local space.
pub fn verify_dof_sum(p: usize, q: usize, m: usize, n: usize) -> bool {
    let total: i128 = (0..=n)
        .map(|l| binom_i128(n as i128 + 1, l as i128 + 1) * dim_trace_free(p, q, m, l))
        .sum();
    total == dim_full(p, q, m, n)
}

/// The (p, q, m) rows of the lowest-order dimension table, in print order.
pub fn table_rows() -> Vec<(usize, usize, usize)> {
    vec![
        (1, 1, 0),
        (2, 1, 0),
        (2, 2, 0),
        (2, 2, 1),
        (3, 2, 0),
        (3, 2, 1),
        (3, 3, 0),
        (3, 3, 1),
        (3, 3, 2),
    ]
}
