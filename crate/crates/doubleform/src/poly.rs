//! Double forms with polynomial coefficients: the left/right exterior
//! derivatives and Koszul contractions, pointwise lifts of the constant
//! algebra, homogenization, and affine pullbacks. Terms are kept in graded
//! lexicographic monomial order, then left index, then right index.

use std::collections::BTreeMap;
use std::fmt;

use crate::double::DoubleCovector;
use crate::exterior::Multicovector;
use crate::linalg::Mat;
use crate::multiindex::MultiIndex;
use crate::scalar::Scalar;

/// Exponent vector of a monomial in `dim` variables.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(dim: usize) -> Self {
        Monomial(vec![0; dim])
    }

    pub fn var(dim: usize, i: usize) -> Self {
        let mut e = vec![0; dim];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn n_vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.0.len(), other.0.len(), "variable count mismatch");
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Divide by the i-th variable if possible.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        if self.0[i] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[i] -= 1;
        Some(Monomial(e))
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut e = self.0.clone();
        e[i] += 1;
        Monomial(e)
    }

    /// Delete the i-th variable slot (for restriction to a hyperplane).
    pub fn remove_var(&self, i: usize) -> Monomial {
        let mut e = self.0.clone();
        e.remove(i);
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.degree(), &self.0).cmp(&(other.degree(), &other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials in `dim` variables of total degree exactly `deg`, grlex order.
pub fn monomials_of_degree(dim: usize, deg: u32) -> Vec<Monomial> {
    fn rec(dim: usize, deg: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if dim == 1 {
            let mut full = prefix.clone();
            full.push(deg);
            out.push(full);
            return;
        }
        for first in 0..=deg {
            prefix.push(first);
            rec(dim - 1, deg - first, prefix, out);
            prefix.pop();
        }
    }
    if dim == 0 {
        return if deg == 0 { vec![Monomial(vec![])] } else { Vec::new() };
    }
    let mut raw = Vec::new();
    rec(dim, deg, &mut Vec::new(), &mut raw);
    let mut out: Vec<Monomial> = raw.into_iter().map(Monomial).collect();
    out.sort();
    out
}

/// All monomials of total degree at most `deg`, grlex order.
pub fn monomials_up_to(dim: usize, deg: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for r in 0..=deg {
        out.extend(monomials_of_degree(dim, r));
    }
    out
}

/// Scalar polynomial in `dim` variables.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<S> {
    dim: usize,
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> Poly<S> {
    pub fn zero(dim: usize) -> Self {
        Poly { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: S) -> Self {
        let mut p = Poly::zero(dim);
        p.add_term(Monomial::one(dim), c);
        p
    }

    pub fn one(dim: usize) -> Self {
        Poly::constant(dim, S::one())
    }

    pub fn var(dim: usize, i: usize) -> Self {
        let mut p = Poly::zero(dim);
        p.add_term(Monomial::var(dim, i), S::one());
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Monomial, c: S) {
        assert_eq!(m.n_vars(), self.dim, "variable count mismatch");
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(S::zero);
        *e = e.clone() + c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, f: &S) -> Self {
        let mut out = Poly::zero(self.dim);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone() * f.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut out = Poly::zero(self.dim);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Poly::one(self.dim);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }
}

/// Presentation of the coordinate system a form is written in. Operations are
/// agnostic to it; it travels through serialization so outputs stay labeled.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Coords {
    /// Barycentric-style coordinates λ_0..λ_{d-1} on an ambient space.
    Lambda,
    /// Square-root coordinates u_0..u_{d-1} upstairs of the sphere lift.
    U,
    /// Canonical affine chart t_1..t_d of a simplex.
    Affine,
}

impl Coords {
    pub fn var_prefix(&self) -> &'static str {
        match self {
            Coords::Lambda => "λ",
            Coords::U => "u",
            Coords::Affine => "t",
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Coords::Lambda => "lambda",
            Coords::U => "u",
            Coords::Affine => "affine",
        }
    }

    pub fn parse(s: &str) -> Option<Coords> {
        match s {
            "lambda" => Some(Coords::Lambda),
            "u" => Some(Coords::U),
            "affine" => Some(Coords::Affine),
            _ => None,
        }
    }
}

/// A (p, q) double form with polynomial coefficients in `dim` variables.
///
/// As with constant-coefficient forms, zero forms of equal dimension compare
/// equal and absorb into sums regardless of nominal bidegree or coordinate
/// tag; boundary cases of the degree-shifting operators rely on this.
#[derive(Clone, Debug)]
pub struct PolyDoubleForm<S> {
    dim: usize,
    p: usize,
    q: usize,
    coords: Coords,
    terms: BTreeMap<(Monomial, MultiIndex, MultiIndex), S>,
}

impl<S: PartialEq> PartialEq for PolyDoubleForm<S> {
    fn eq(&self, other: &Self) -> bool {
        if self.dim != other.dim {
            return false;
        }
        if self.terms.is_empty() && other.terms.is_empty() {
            return true;
        }
        (self.p, self.q, self.coords) == (other.p, other.q, other.coords)
            && self.terms == other.terms
    }
}

impl<S: Scalar> PolyDoubleForm<S> {
    pub fn zero(dim: usize, p: usize, q: usize, coords: Coords) -> Self {
        PolyDoubleForm { dim, p, q, coords, terms: BTreeMap::new() }
    }

    /// A constant-coefficient form viewed as a polynomial one.
    pub fn from_constant(c: &DoubleCovector<S>, coords: Coords) -> Self {
        let mut out = PolyDoubleForm::zero(c.dim(), c.p(), c.q(), coords);
        for ((i, j), v) in c.terms() {
            out.add_term(Monomial::one(c.dim()), i.clone(), j.clone(), v.clone());
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn coords(&self) -> Coords {
        self.coords
    }

    pub fn with_coords(mut self, coords: Coords) -> Self {
        self.coords = coords;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, MultiIndex, MultiIndex), &S)> {
        self.terms.iter()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial, i: &MultiIndex, j: &MultiIndex) -> S {
        self.terms
            .get(&(m.clone(), i.clone(), j.clone()))
            .cloned()
            .unwrap_or_else(S::zero)
    }

    pub fn add_term(&mut self, m: Monomial, i: MultiIndex, j: MultiIndex, c: S) {
        assert_eq!(m.n_vars(), self.dim, "variable count mismatch");
        assert_eq!(i.degree(), self.p, "left degree mismatch");
        assert_eq!(j.degree(), self.q, "right degree mismatch");
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((m, i, j)).or_insert_with(S::zero);
        *e = e.clone() + c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        if self.terms.is_empty() {
            return other.clone();
        }
        if other.terms.is_empty() {
            return self.clone();
        }
        assert_eq!((self.p, self.q), (other.p, other.q), "shape mismatch");
        let mut out = self.clone();
        for ((m, i, j), c) in &other.terms {
            out.add_term(m.clone(), i.clone(), j.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, f: &S) -> Self {
        let mut out = PolyDoubleForm::zero(self.dim, self.p, self.q, self.coords);
        for ((m, i, j), c) in &self.terms {
            out.add_term(m.clone(), i.clone(), j.clone(), c.clone() * f.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        let mut out = PolyDoubleForm::zero(self.dim, self.p, self.q, self.coords);
        for ((ma, i, j), c) in &self.terms {
            out.add_term(ma.mul(m), i.clone(), j.clone(), c.clone());
        }
        out
    }

    pub fn mul_poly(&self, p: &Poly<S>) -> Self {
        assert_eq!(self.dim, p.dim(), "dimension mismatch");
        let mut out = PolyDoubleForm::zero(self.dim, self.p, self.q, self.coords);
        for ((ma, i, j), c) in &self.terms {
            for (mb, cb) in p.terms() {
                out.add_term(ma.mul(mb), i.clone(), j.clone(), c.clone() * cb.clone());
            }
        }
        out
    }

    /// Apply a constant-coefficient operator to the form part of every term.
    pub fn apply_pointwise(
        &self,
        (new_p, new_q): (usize, usize),
        op: impl Fn(&DoubleCovector<S>) -> DoubleCovector<S>,
    ) -> Self {
        let mut out = PolyDoubleForm::zero(self.dim, new_p, new_q, self.coords);
        for ((m, i, j), c) in &self.terms {
            let base = DoubleCovector::basis(self.dim, i.clone(), j.clone());
            let image = op(&base);
            assert_eq!((image.p(), image.q()), (new_p, new_q), "operator changed type unexpectedly");
            for ((k, l), v) in image.terms() {
                out.add_term(m.clone(), k.clone(), l.clone(), c.clone() * v.clone());
            }
        }
        out
    }

    pub fn bianchi_s(&self) -> Self {
        let q = self.q.saturating_sub(1);
        self.apply_pointwise((self.p + 1, if self.q == 0 { 0 } else { q }), |f| f.bianchi_s())
    }

    pub fn bianchi_s_star(&self) -> Self {
        let p = self.p.saturating_sub(1);
        self.apply_pointwise((if self.p == 0 { 0 } else { p }, self.q + 1), |f| f.bianchi_s_star())
    }

    pub fn transpose_tau(&self) -> Self {
        self.apply_pointwise((self.q, self.p), |f| f.transpose_tau())
    }

    pub fn double_hodge(&self) -> Self {
        self.apply_pointwise((self.dim - self.p, self.dim - self.q), |f| f.double_hodge())
    }

    pub fn double_hodge_inv(&self) -> Self {
        self.apply_pointwise((self.dim - self.p, self.dim - self.q), |f| f.double_hodge_inv())
    }

    pub fn project_summand(&self, m: usize) -> Self {
        self.apply_pointwise((self.p, self.q), |f| f.project_summand(m))
    }

    pub fn double_wedge(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut out =
            PolyDoubleForm::zero(self.dim, self.p + other.p, self.q + other.q, self.coords);
        for ((ma, i, j), a) in &self.terms {
            for ((mb, k, l), b) in &other.terms {
                let Some((ik, si)) = i.merge(k) else { continue };
                let Some((jl, sj)) = j.merge(l) else { continue };
                let sign = crate::scalar::sign_scalar::<S>(si * sj);
                out.add_term(ma.mul(mb), ik, jl, sign * a.clone() * b.clone());
            }
        }
        out
    }

    /// Tensor product of two single (right-degree-zero) forms, placing the
    /// first in the left factor and the second in the right factor.
    pub fn outer_product(&self, other: &Self) -> Self {
        assert_eq!(self.q, 0, "left operand must have q = 0");
        assert_eq!(other.q, 0, "right operand must have q = 0");
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut out = PolyDoubleForm::zero(self.dim, self.p, other.p, self.coords);
        for ((ma, i, _), a) in &self.terms {
            for ((mb, k, _), b) in &other.terms {
                out.add_term(ma.mul(mb), i.clone(), k.clone(), a.clone() * b.clone());
            }
        }
        out
    }

    /// Left exterior derivative: d_L(f · dx^{I,J}) = (df ∧ dx^I) ⊗ dx^J.
    pub fn d_left(&self) -> Self {
        let mut out = PolyDoubleForm::zero(self.dim, self.p + 1, self.q, self.coords);
        for ((m, i, j), c) in &self.terms {
            for v in 0..self.dim {
                let Some(dm) = m.div_var(v) else { continue };
                let Some((ni, sign)) = i.insert(v as u8) else { continue };
                let factor = S::from_int(m.exps()[v] as i64) * crate::scalar::sign_scalar::<S>(sign);
                out.add_term(dm, ni, j.clone(), c.clone() * factor);
            }
        }
        out
    }

    /// Right exterior derivative: d_R(f · dx^{I,J}) = dx^I ⊗ (df ∧ dx^J).
    pub fn d_right(&self) -> Self {
        let mut out = PolyDoubleForm::zero(self.dim, self.p, self.q + 1, self.coords);
        for ((m, i, j), c) in &self.terms {
            for v in 0..self.dim {
                let Some(dm) = m.div_var(v) else { continue };
                let Some((nj, sign)) = j.insert(v as u8) else { continue };
                let factor = S::from_int(m.exps()[v] as i64) * crate::scalar::sign_scalar::<S>(sign);
                out.add_term(dm, i.clone(), nj, c.clone() * factor);
            }
        }
        out
    }

    /// Left Koszul contraction against the position field: multiplies by x_i
    /// while contracting the left factor.
    pub fn koszul_left(&self) -> Self {
        if self.p == 0 {
            return PolyDoubleForm::zero(self.dim, 0, self.q, self.coords);
        }
        let mut out = PolyDoubleForm::zero(self.dim, self.p - 1, self.q, self.coords);
        for ((m, i, j), c) in &self.terms {
            for v in 0..self.dim {
                let Some((ni, sign)) = i.remove(v as u8) else { continue };
                out.add_term(
                    m.mul_var(v),
                    ni,
                    j.clone(),
                    c.clone() * crate::scalar::sign_scalar::<S>(sign),
                );
            }
        }
        out
    }

    /// Right Koszul contraction.
    pub fn koszul_right(&self) -> Self {
        if self.q == 0 {
            return PolyDoubleForm::zero(self.dim, self.p, 0, self.coords);
        }
        let mut out = PolyDoubleForm::zero(self.dim, self.p, self.q - 1, self.coords);
        for ((m, i, j), c) in &self.terms {
            for v in 0..self.dim {
                let Some((nj, sign)) = j.remove(v as u8) else { continue };
                out.add_term(
                    m.mul_var(v),
                    i.clone(),
                    nj,
                    c.clone() * crate::scalar::sign_scalar::<S>(sign),
                );
            }
        }
        out
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|(m, _, _)| m.degree()).max().unwrap_or(0)
    }

    /// True when every term has total degree exactly r (the zero form is
    /// homogeneous of every degree).
    pub fn is_homogeneous_of(&self, r: u32) -> bool {
        self.terms.keys().all(|(m, _, _)| m.degree() == r)
    }

    /// Multiply each term of degree < r by the appropriate power of
    /// (x_0 + .. + x_{d-1}), so the result is homogeneous of degree r and
    /// agrees with the input on the affine slice {Σ x_i = 1}.
    pub fn homogenize(&self, r: u32) -> Self {
        assert!(self.max_degree() <= r, "degree exceeds homogenization target");
        let sum: Poly<S> = {
            let mut s = Poly::zero(self.dim);
            for v in 0..self.dim {
                s = s.add(&Poly::var(self.dim, v));
            }
            s
        };
        let mut out = PolyDoubleForm::zero(self.dim, self.p, self.q, self.coords);
        for ((m, i, j), c) in &self.terms {
            let gap = r - m.degree();
            let filler = sum.pow(gap);
            for (fm, fc) in filler.terms() {
                out.add_term(m.mul(fm), i.clone(), j.clone(), c.clone() * fc.clone());
            }
        }
        out
    }

    /// Pull back through the affine map x ↦ A x + b, where the form lives on
    /// the codomain (dimension = rows of A) and the result on the domain
    /// (dimension = columns of A).
    pub fn pullback_affine(&self, a: &Mat<S>, b: &[S]) -> Self {
        assert_eq!(a.rows(), self.dim, "matrix rows must match the form dimension");
        assert_eq!(b.len(), self.dim, "offset length must match the form dimension");
        let dom = a.cols();
        // pulled-back coordinate functions and coordinate differentials
        let coord_polys: Vec<Poly<S>> = (0..self.dim)
            .map(|i| {
                let mut p = Poly::constant(dom, b[i].clone());
                for jv in 0..dom {
                    let coeff = a.get(i, jv).clone();
                    if !coeff.is_zero() {
                        p = p.add(&Poly::var(dom, jv).scale(&coeff));
                    }
                }
                p
            })
            .collect();
        let coord_diffs: Vec<Multicovector<S>> = (0..self.dim)
            .map(|i| {
                let mut w = Multicovector::zero(dom, 1);
                for jv in 0..dom {
                    let coeff = a.get(i, jv).clone();
                    if !coeff.is_zero() {
                        w.add_term(MultiIndex::from_usizes(&[jv]), coeff);
                    }
                }
                w
            })
            .collect();
        let pull_index = |idx: &MultiIndex| -> Multicovector<S> {
            let mut acc = Multicovector::basis(dom, MultiIndex::empty());
            for &i in idx.indices() {
                acc = acc.wedge(&coord_diffs[i as usize]);
            }
            acc
        };
        let mut out = PolyDoubleForm::zero(dom, self.p, self.q, self.coords);
        for ((m, i, j), c) in &self.terms {
            let mut coeff = Poly::constant(dom, c.clone());
            for (v, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    coeff = coeff.mul(&coord_polys[v].pow(e));
                }
            }
            let left = pull_index(i);
            let right = pull_index(j);
            for (mi, mc) in coeff.terms() {
                for (k, kv) in left.terms() {
                    for (l, lv) in right.terms() {
                        out.add_term(
                            mi.clone(),
                            k.clone(),
                            l.clone(),
                            mc.clone() * kv.clone() * lv.clone(),
                        );
                    }
                }
            }
        }
        out
    }

    /// Coefficient vector over monomials × index pairs, in the given monomial
    /// enumeration.
    pub fn vectorize(&self, monos: &[Monomial]) -> Vec<S> {
        let pairs = crate::double::basis_pairs(self.dim, self.p, self.q);
        let mut out = Vec::with_capacity(monos.len() * pairs.len());
        for m in monos {
            for (i, j) in &pairs {
                out.push(self.coeff(m, i, j));
            }
        }
        out
    }

    pub fn from_vector(
        dim: usize,
        p: usize,
        q: usize,
        coords: Coords,
        monos: &[Monomial],
        v: &[S],
    ) -> Self {
        let pairs = crate::double::basis_pairs(dim, p, q);
        assert_eq!(v.len(), monos.len() * pairs.len(), "coefficient vector length mismatch");
        let mut out = PolyDoubleForm::zero(dim, p, q, coords);
        let mut it = v.iter();
        for m in monos {
            for (i, j) in &pairs {
                let c = it.next().unwrap();
                out.add_term(m.clone(), i.clone(), j.clone(), c.clone());
            }
        }
        out
    }
}

impl<S: Scalar> fmt::Display for PolyDoubleForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let prefix = self.coords.var_prefix();
        let mut first = true;
        for ((m, i, j), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (v, &e) in m.exps().iter().enumerate() {
                if e == 1 {
                    write!(f, " {prefix}{v}")?;
                } else if e > 1 {
                    write!(f, " {prefix}{v}^{e}")?;
                }
            }
            let fmt_idx = |idx: &MultiIndex| -> String {
                if idx.degree() == 0 {
                    "1".to_string()
                } else {
                    idx.indices()
                        .iter()
                        .map(|k| format!("d{prefix}{k}"))
                        .collect::<Vec<_>>()
                        .join("∧")
                }
            };
            write!(f, " {}⊗{}", fmt_idx(i), fmt_idx(j))?;
        }
        Ok(())
    }
}
