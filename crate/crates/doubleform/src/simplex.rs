//! Double forms on the standard simplex T^n and the trace maps that connect
//! neighbouring dimensions.
//!
//! T^n sits in ℝ^{n+1} as {λ_i ≥ 0, Σλ_i = 1}. Because the barycentric
//! presentation is redundant (Σ dλ_i = 0), forms on T^n are normalized to
//! canonical affine coordinates t_1..t_n obtained by eliminating λ_0. The
//! vertex-label sequence records which barycentric role each coordinate
//! plays, so traces onto facets keep a consistent identity.

use crate::double::{basis_pairs, eigenvalue, valid_summands};
use crate::linalg::Mat;
use crate::poly::{monomials_up_to, Coords, Monomial, PolyDoubleForm};
use crate::scalar::Scalar;

/// A (p,q)-form with polynomial coefficients on a simplex of intrinsic
/// dimension n, expressed in canonical coordinates t_1..t_n.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplexForm<S> {
    n: usize,
    vertices: Vec<usize>,
    form: PolyDoubleForm<S>,
}

impl<S: Scalar> SimplexForm<S> {
    pub fn new(n: usize, vertices: Vec<usize>, form: PolyDoubleForm<S>) -> Self {
        assert_eq!(vertices.len(), n + 1, "need n+1 vertex labels");
        assert!(vertices.windows(2).all(|w| w[0] < w[1]), "vertex labels must increase");
        assert_eq!(form.dim(), n, "form dimension must match the simplex");
        assert_eq!(form.coords(), Coords::Affine, "simplex forms use affine coordinates");
        SimplexForm { n, vertices, form }
    }

    /// The standard simplex with vertex labels 0..=n.
    pub fn standard(n: usize, form: PolyDoubleForm<S>) -> Self {
        SimplexForm::new(n, (0..=n).collect(), form)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn form(&self) -> &PolyDoubleForm<S> {
        &self.form
    }

    pub fn is_zero(&self) -> bool {
        self.form.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.vertices, other.vertices, "simplex mismatch");
        SimplexForm { n: self.n, vertices: self.vertices.clone(), form: self.form.add(&other.form) }
    }

    pub fn scale(&self, f: &S) -> Self {
        SimplexForm { n: self.n, vertices: self.vertices.clone(), form: self.form.scale(f) }
    }

    /// Same local form, relabelled to live on another vertex set of equal
    /// dimension (used when a reference basis is moved onto a mesh face).
    pub fn relabel(&self, vertices: Vec<usize>) -> Self {
        SimplexForm::new(self.n, vertices, self.form.clone())
    }
}

/// Pullback under the inclusion of the coordinate hyperplane {λ_i = 0}:
/// substitutes λ_i = 0, deletes every term whose index sets mention i, and
/// renumbers the remaining variables to 0..d-2 preserving order.
pub fn trace_hyperplane<S: Scalar>(phi: &PolyDoubleForm<S>, i: usize) -> PolyDoubleForm<S> {
    let d = phi.dim();
    assert!(i < d, "hyperplane index out of range");
    let mut out = PolyDoubleForm::zero(d - 1, phi.p(), phi.q(), phi.coords());
    let shift = |a: u8| if (a as usize) < i { a } else { a - 1 };
    for ((m, ii, jj), c) in phi.terms() {
        if m.exps()[i] > 0 || ii.contains(i as u8) || jj.contains(i as u8) {
            continue;
        }
        let mut exps: Vec<u32> = m.exps().to_vec();
        exps.remove(i);
        out.add_term(Monomial::new(exps), ii.relabel(shift), jj.relabel(shift), c.clone());
    }
    out
}

/// The affine map ℝ^n → ℝ^{n+1} parametrizing {Σλ = 1} by the canonical
/// coordinates: λ_0 = 1 − Σ t_j, λ_j = t_j.
fn simplex_chart<S: Scalar>(n: usize) -> (Mat<S>, Vec<S>) {
    let mut a = Mat::zeros(n + 1, n);
    for j in 0..n {
        a.set(0, j, -S::one());
        a.set(j + 1, j, S::one());
    }
    let mut b = vec![S::zero(); n + 1];
    b[0] = S::one();
    (a, b)
}

/// Pullback of a form on ℝ^{n+1} to the standard simplex T^n: substitutes
/// λ_0 = 1 − Σ t_j, dλ_0 = −Σ dt_j, λ_j = t_j.
pub fn trace_to_simplex<S: Scalar>(phi: &PolyDoubleForm<S>, n: usize) -> SimplexForm<S> {
    assert_eq!(phi.dim(), n + 1, "form must live in n+1 barycentric variables");
    let (a, b) = simplex_chart::<S>(n);
    SimplexForm::standard(n, phi.pullback_affine(&a, &b).with_coords(Coords::Affine))
}

/// Re-expresses a simplex form in barycentric variables λ_0..λ_n. The
/// substitution t_j = λ_j + shift_j (1 − Σλ) restricts to the identity on
/// the simplex for any choice of shifts; shift = 0 is the standard lift.
/// Different shifts produce different λ-expressions with the same trace,
/// which is exactly what homogenization-independence tests need.
pub fn lift_to_lambda<S: Scalar>(phi: &SimplexForm<S>, shift: &[S]) -> PolyDoubleForm<S> {
    let n = phi.n();
    assert_eq!(shift.len(), n, "one shift per canonical coordinate");
    let mut a = Mat::zeros(n, n + 1);
    let mut b = vec![S::zero(); n];
    for j in 0..n {
        for i in 0..=n {
            let mut e = if i == j + 1 { S::one() } else { S::zero() };
            e = e - shift[j].clone();
            a.set(j, i, e);
        }
        b[j] = shift[j].clone();
    }
    phi.form().pullback_affine(&a, &b).with_coords(Coords::Lambda)
}

/// The standard lift with all shifts zero: t_j ↦ λ_j.
pub fn lift_to_lambda_standard<S: Scalar>(phi: &SimplexForm<S>) -> PolyDoubleForm<S> {
    lift_to_lambda(phi, &vec![S::zero(); phi.n()])
}

/// Trace onto the facet opposite barycentric role i, in the facet's own
/// canonical coordinates, with the inherited vertex order.
pub fn facet_trace<S: Scalar>(phi: &SimplexForm<S>, i: usize) -> SimplexForm<S> {
    let n = phi.n();
    assert!(n >= 1, "a point has no facets");
    assert!(i <= n, "facet role out of range");
    let mut vertices = phi.vertices().to_vec();
    vertices.remove(i);
    let traced = if i >= 1 {
        // role i is the coordinate t_i; set it (and dt_i) to zero
        trace_hyperplane(phi.form(), i - 1)
    } else {
        // role 0 is λ_0 = 1 − Σ t_j; on the facet the old t_1 becomes the
        // eliminated coordinate of the smaller simplex
        let (a, b) = simplex_chart::<S>(n - 1);
        phi.form().pullback_affine(&a, &b)
    };
    SimplexForm::new(n - 1, vertices, traced.with_coords(Coords::Affine))
}

/// Deterministic enumeration of the coefficient basis of 𝓟_r Λ^{p,q}(T^n):
/// monomials of degree ≤ r (graded order) crossed with index pairs.
pub fn poly_space_monomials(n: usize, r: u32) -> Vec<Monomial> {
    monomials_up_to(n, r)
}

/// Canonical basis of 𝓟̊_r Λ^{p,q}_m(T^n): the m-summand elements whose
/// traces on all n+1 facets vanish. Basis vectors follow the reduced-echelon
/// convention of `nullspace_basis`.
pub fn vanishing_trace_basis<S: Scalar>(
    p: usize,
    q: usize,
    m: usize,
    r: u32,
    n: usize,
) -> Vec<SimplexForm<S>> {
    assert!(
        valid_summands(p, q, n).contains(&m),
        "invalid summand m={m} for ({p},{q}) forms in dimension {n}"
    );
    let monos = poly_space_monomials(n, r);
    let pairs = basis_pairs(n, p, q);
    let ncols = monos.len() * pairs.len();
    if ncols == 0 {
        return Vec::new();
    }

    let basis_form = |col: usize| -> PolyDoubleForm<S> {
        let (mi, pi) = (col / pairs.len(), col % pairs.len());
        let mut f = PolyDoubleForm::zero(n, p, q, Coords::Affine);
        let (ii, jj) = &pairs[pi];
        f.add_term(monos[mi].clone(), ii.clone(), jj.clone(), S::one());
        f
    };

    let mut rows: Vec<Vec<S>> = Vec::new();
    let mut push_block = |images: Vec<Vec<S>>| {
        // images[col] is the constraint-space vector of basis element col;
        // transpose into rows of the constraint matrix
        if images.is_empty() {
            return;
        }
        let h = images[0].len();
        for rrow in 0..h {
            rows.push((0..ncols).map(|c| images[c][rrow].clone()).collect());
        }
    };

    // membership in the m-summand: (s*s − λ_m) φ = 0
    let lam = S::from_int(eigenvalue(p, q, m));
    let summand_images: Vec<Vec<S>> = (0..ncols)
        .map(|c| {
            let f = basis_form(c);
            f.bianchi_s().bianchi_s_star().sub(&f.scale(&lam)).vectorize(&monos)
        })
        .collect();
    push_block(summand_images);

    // vanishing trace on every facet
    if n >= 1 {
        let monos_f = poly_space_monomials(n - 1, r);
        let pairs_f = basis_pairs(n - 1, p, q);
        if !monos_f.is_empty() && !pairs_f.is_empty() {
            for role in 0..=n {
                let images: Vec<Vec<S>> = (0..ncols)
                    .map(|c| {
                        let sf = SimplexForm::standard(n, basis_form(c));
                        facet_trace(&sf, role).form().vectorize(&monos_f)
                    })
                    .collect();
                push_block(images);
            }
        }
    }

    let mat = if rows.is_empty() {
        Mat::zeros(1, ncols)
    } else {
        Mat::from_rows(rows)
    };
    mat.nullspace_basis()
        .into_iter()
        .map(|v| {
            SimplexForm::standard(
                n,
                PolyDoubleForm::from_vector(n, p, q, Coords::Affine, &monos, &v),
            )
        })
        .collect()
}
