//! Constant-coefficient double forms: elements of Λ^p ⊗ Λ^q with the trace
//! maps s and s*, the factor swap τ, the doubled Hodge star ⊛, the doubled
//! wedge ⩕, the inclusion i^{p,q} of alternating forms, and the exact
//! eigenspace decomposition of s*s.

use std::collections::BTreeMap;

use crate::exterior::Multicovector;
use crate::multiindex::{splits, subsets, MultiIndex};
use crate::scalar::{sign_scalar, Scalar};

/// A (p, q) double form in dimension d with coefficients on the orthonormal
/// basis dx^I ⊗ dx^J, I and J increasing.
///
/// The zero form is polymorphic: operators that step outside the valid
/// bidegree range (s on a (p,0) form, say) return a zero form whose nominal
/// type no longer matters, so equality and addition treat all zero forms of
/// one dimension as interchangeable.
#[derive(Clone, Debug)]
pub struct DoubleCovector<S> {
    dim: usize,
    p: usize,
    q: usize,
    terms: BTreeMap<(MultiIndex, MultiIndex), S>,
}

impl<S: PartialEq> PartialEq for DoubleCovector<S> {
    fn eq(&self, other: &Self) -> bool {
        if self.dim != other.dim {
            return false;
        }
        if self.terms.is_empty() && other.terms.is_empty() {
            return true;
        }
        (self.p, self.q) == (other.p, other.q) && self.terms == other.terms
    }
}

impl<S: Scalar> DoubleCovector<S> {
    pub fn zero(dim: usize, p: usize, q: usize) -> Self {
        DoubleCovector { dim, p, q, terms: BTreeMap::new() }
    }

    /// The basis element dx^I ⊗ dx^J.
    pub fn basis(dim: usize, i: MultiIndex, j: MultiIndex) -> Self {
        assert!(i.max_index().map_or(true, |m| (m as usize) < dim), "left index out of range");
        assert!(j.max_index().map_or(true, |m| (m as usize) < dim), "right index out of range");
        let (p, q) = (i.degree(), j.degree());
        let mut terms = BTreeMap::new();
        terms.insert((i, j), S::one());
        DoubleCovector { dim, p, q, terms }
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(MultiIndex, MultiIndex), &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: &MultiIndex, j: &MultiIndex) -> S {
        self.terms.get(&(i.clone(), j.clone())).cloned().unwrap_or_else(S::zero)
    }

    pub fn add_term(&mut self, i: MultiIndex, j: MultiIndex, coeff: S) {
        assert_eq!(i.degree(), self.p, "left degree mismatch");
        assert_eq!(j.degree(), self.q, "right degree mismatch");
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(S::zero);
        *entry = entry.clone() + coeff;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        // zero forms act as the additive identity of any type
        if self.terms.is_empty() {
            return other.clone();
        }
        if other.terms.is_empty() {
            return self.clone();
        }
        assert_eq!((self.p, self.q), (other.p, other.q), "shape mismatch");
        let mut out = self.clone();
        for ((i, j), c) in &other.terms {
            out.add_term(i.clone(), j.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, factor: &S) -> Self {
        let mut out = self.clone();
        out.terms = out
            .terms
            .into_iter()
            .map(|(k, c)| (k, c * factor.clone()))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// s(α ⊗ β) = Σ_i (dx^i ∧ α) ⊗ (e_i ⨼ β), raising p and lowering q.
    pub fn bianchi_s(&self) -> Self {
        if self.q == 0 {
            return DoubleCovector::zero(self.dim, self.p + 1, 0);
        }
        let mut out = DoubleCovector::zero(self.dim, self.p + 1, self.q - 1);
        for ((i, j), c) in &self.terms {
            for idx in 0..self.dim as u8 {
                let Some((ni, si)) = i.insert(idx) else { continue };
                let Some((nj, sj)) = j.remove(idx) else { continue };
                out.add_term(ni, nj, sign_scalar::<S>(si * sj) * c.clone());
            }
        }
        out
    }

    /// s*(α ⊗ β) = Σ_i (e_i ⨼ α) ⊗ (dx^i ∧ β), the adjoint of s.
    pub fn bianchi_s_star(&self) -> Self {
        if self.p == 0 {
            return DoubleCovector::zero(self.dim, 0, self.q + 1);
        }
        let mut out = DoubleCovector::zero(self.dim, self.p - 1, self.q + 1);
        for ((i, j), c) in &self.terms {
            for idx in 0..self.dim as u8 {
                let Some((ni, si)) = i.remove(idx) else { continue };
                let Some((nj, sj)) = j.insert(idx) else { continue };
                out.add_term(ni, nj, sign_scalar::<S>(si * sj) * c.clone());
            }
        }
        out
    }

    /// τ swaps the two factors.
    pub fn transpose_tau(&self) -> Self {
        let mut out = DoubleCovector::zero(self.dim, self.q, self.p);
        for ((i, j), c) in &self.terms {
            out.add_term(j.clone(), i.clone(), c.clone());
        }
        out
    }

    /// ⊛ = ⋆ ⊗ ⋆, the Hodge star on each factor.
    pub fn double_hodge(&self) -> Self {
        let d = self.dim;
        assert!(self.p <= d && self.q <= d, "degree exceeds dimension");
        let mut out = DoubleCovector::zero(d, d - self.p, d - self.q);
        for ((i, j), c) in &self.terms {
            let ic = i.complement(d);
            let jc = j.complement(d);
            let (_, si) = i.merge(&ic).expect("complement disjoint");
            let (_, sj) = j.merge(&jc).expect("complement disjoint");
            out.add_term(ic, jc, sign_scalar::<S>(si * sj) * c.clone());
        }
        out
    }

    /// Inverse of ⊛: the sign (-1)^{p(d-p)+q(d-q)} times ⊛, where (p, q) is
    /// the type of the argument.
    pub fn double_hodge_inv(&self) -> Self {
        let d = self.dim;
        let exp = self.p * (d - self.p) + self.q * (d - self.q);
        let star = self.double_hodge();
        if exp % 2 == 0 {
            star
        } else {
            star.neg()
        }
    }

    /// ⩕, the doubled wedge: (α⊗β) ⩕ (γ⊗δ) = (α∧γ) ⊗ (β∧δ).
    pub fn double_wedge(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut out = DoubleCovector::zero(self.dim, self.p + other.p, self.q + other.q);
        if out.p > self.dim || out.q > self.dim {
            return out;
        }
        for ((i, j), a) in &self.terms {
            for ((k, l), b) in &other.terms {
                let Some((ik, si)) = i.merge(k) else { continue };
                let Some((jl, sj)) = j.merge(l) else { continue };
                out.add_term(ik, jl, sign_scalar::<S>(si * sj) * a.clone() * b.clone());
            }
        }
        out
    }

    /// ∧, the collapse Λ^{p,q} → Λ^{p+q} multiplying the two factors.
    pub fn wedge_collapse(&self) -> Multicovector<S> {
        let mut out = Multicovector::zero(self.dim, self.p + self.q);
        if self.p + self.q > self.dim {
            return out;
        }
        for ((i, j), c) in &self.terms {
            if let Some((merged, sign)) = i.merge(j) {
                out.add_term(merged, sign_scalar::<S>(sign) * c.clone());
            }
        }
        out
    }

    /// Frame inner product; the dx^I ⊗ dx^J basis is orthonormal.
    pub fn inner_product(&self, other: &Self) -> S {
        assert_eq!((self.dim, self.p, self.q), (other.dim, other.p, other.q), "shape mismatch");
        let mut acc = S::zero();
        for (k, a) in &self.terms {
            if let Some(b) = other.terms.get(k) {
                acc = acc + a.clone() * b.clone();
            }
        }
        acc
    }

    /// The scalar part of a (0, 0) form.
    pub fn scalar_part(&self) -> S {
        assert_eq!((self.p, self.q), (0, 0), "not a (0,0) form");
        self.coeff(&MultiIndex::empty(), &MultiIndex::empty())
    }

    /// Projection onto the eigenspace of s*s with eigenvalue m(m+p-q+1),
    /// computed by Lagrange interpolation across the valid summands. Panics
    /// if m is not a valid summand index for (p, q, dim).
    pub fn project_summand(&self, m: usize) -> Self {
        let valid = valid_summands(self.p, self.q, self.dim);
        assert!(valid.contains(&m), "summand {m} invalid for ({}, {}) in dim {}", self.p, self.q, self.dim);
        let lambda = |mm: usize| eigenvalue(self.p, self.q, mm);
        let mut out = self.clone();
        for &other in &valid {
            if other == m {
                continue;
            }
            // out <- (s*s - λ_other) out / (λ_m - λ_other)
            let sso = out.bianchi_s().bianchi_s_star();
            let num = sso.sub(&out.scale(&S::from_int(lambda(other))));
            let denom = S::from_int(lambda(m) - lambda(other));
            out = num.scale(&(S::one() / denom));
        }
        out
    }

    /// Coefficient vector over the full increasing-pair basis.
    pub fn to_vec(&self) -> Vec<S> {
        basis_pairs(self.dim, self.p, self.q)
            .iter()
            .map(|(i, j)| self.coeff(i, j))
            .collect()
    }

    pub fn from_vec(dim: usize, p: usize, q: usize, v: &[S]) -> Self {
        let pairs = basis_pairs(dim, p, q);
        assert_eq!(pairs.len(), v.len(), "coefficient vector length mismatch");
        let mut out = DoubleCovector::zero(dim, p, q);
        for ((i, j), c) in pairs.into_iter().zip(v) {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

/// Enumerate the (I, J) basis pairs of Λ^{p,q} in lexicographic order
/// (I first, then J).
pub fn basis_pairs(dim: usize, p: usize, q: usize) -> Vec<(MultiIndex, MultiIndex)> {
    let mut out = Vec::new();
    for i in subsets(dim, p) {
        for j in subsets(dim, q) {
            out.push((i.clone(), j));
        }
    }
    out
}

/// dim Λ^{p,q} over a d-dimensional space.
pub fn space_dim(dim: usize, p: usize, q: usize) -> usize {
    binom(dim, p) * binom(dim, q)
}

/// Eigenvalue of s*s on the m-th summand of Λ^{p,q}: m(m + p - q + 1).
pub fn eigenvalue(p: usize, q: usize, m: usize) -> i64 {
    let (p, q, m) = (p as i64, q as i64, m as i64);
    m * (m + p - q + 1)
}

/// The m with Λ^{p,q}_m nonzero: max{0, q-p} <= m <= min{q, d-p}.
pub fn valid_summands(p: usize, q: usize, d: usize) -> Vec<usize> {
    if p > d || q > d {
        return Vec::new();
    }
    let lo = q.saturating_sub(p);
    let hi = q.min(d - p);
    (lo..=hi).collect()
}

/// dim Λ^{p,q}_m = (p - q + 2m + 1)/(p + m + 1) · C(d, p+m) · C(d+1, q-m).
pub fn summand_dim(p: usize, q: usize, m: usize, d: usize) -> usize {
    if !valid_summands(p, q, d).contains(&m) {
        return 0;
    }
    let (pi, qi, mi) = (p as i128, q as i128, m as i128);
    let num = (pi - qi + 2 * mi + 1) * binom_i128(d as i128, pi + mi) * binom_i128(d as i128 + 1, qi - mi);
    let den = pi + mi + 1;
    assert!(num % den == 0, "summand dimension must be integral");
    (num / den) as usize
}

/// i^{p,q}: Λ^{p+q} → Λ^{p,q}, splitting each index set across the two
/// factors with shuffle signs. Degenerate degrees (p > k, i.e. q < 0) give
/// the zero form.
pub fn include_ipq<S: Scalar>(omega: &Multicovector<S>, p: usize, q: usize) -> DoubleCovector<S> {
    let k = omega.degree();
    assert_eq!(p + q, k, "p + q must equal the form degree");
    let mut out = DoubleCovector::zero(omega.dim(), p, q);
    for (kidx, c) in omega.terms() {
        for (i, j, sign) in splits(kidx, p) {
            out.add_term(i, j, sign_scalar::<S>(sign) * c.clone());
        }
    }
    out
}

pub fn binom(n: usize, k: usize) -> usize {
    binom_i128(n as i128, k as i128) as usize
}

/// Binomial coefficient, 0 outside the Pascal triangle.
pub fn binom_i128(n: i128, k: i128) -> i128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type D = DoubleCovector<Rational>;

    fn mi(v: &[usize]) -> MultiIndex {
        MultiIndex::from_usizes(v)
    }

    fn b(d: usize, i: &[usize], j: &[usize]) -> D {
        D::basis(d, mi(i), mi(j))
    }

    #[test]
    fn s_examples() {
        // s(dx^0 ⊗ dx^1) = -dx^{01} ⊗ 1
        assert_eq!(b(2, &[0], &[1]).bianchi_s(), b(2, &[0, 1], &[]).neg());
        // s(dx^{01} ⊗ dx^{02}) = -dx^{012} ⊗ dx^0 in dim 3
        assert_eq!(
            b(3, &[0, 1], &[0, 2]).bianchi_s(),
            b(3, &[0, 1, 2], &[0]).neg()
        );
    }

    #[test]
    fn s_star_example() {
        // s*(dx^{01} ⊗ 1) = dx^1 ⊗ dx^0 - dx^0 ⊗ dx^1
        let got = b(2, &[0, 1], &[]).bianchi_s_star();
        let want = b(2, &[1], &[0]).sub(&b(2, &[0], &[1]));
        assert_eq!(got, want);
    }

    #[test]
    fn s_adjoint_example() {
        let phi = b(2, &[0], &[1]);
        let psi = b(2, &[0, 1], &[]);
        let lhs = phi.bianchi_s().inner_product(&psi);
        let rhs = phi.inner_product(&psi.bianchi_s_star());
        assert_eq!(lhs, Rational::from_int(-1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn s_adjoint_on_bases() {
        for d in 1..=4usize {
            for p in 0..=d.min(3) {
                for q in 1..=d.min(3) {
                    for (i, j) in basis_pairs(d, p, q) {
                        let phi = D::basis(d, i, j);
                        for (k, l) in basis_pairs(d, p + 1, q - 1) {
                            let psi = D::basis(d, k, l);
                            assert_eq!(
                                phi.bianchi_s().inner_product(&psi),
                                phi.inner_product(&psi.bianchi_s_star())
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn commutator_identity() {
        // ss* - s*s = (p - q) id
        for d in 1..=4usize {
            for p in 0..=d {
                for q in 0..=d {
                    for (i, j) in basis_pairs(d, p, q) {
                        let phi = D::basis(d, i, j);
                        let lhs = phi.bianchi_s_star().bianchi_s().sub(&phi.bianchi_s().bianchi_s_star());
                        let rhs = phi.scale(&Rational::from_int(p as i64 - q as i64));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn tau_and_double_hodge_examples() {
        assert_eq!(b(2, &[0], &[1]).transpose_tau(), b(2, &[1], &[0]));
        // ⊛(dx^0 ⊗ dx^1) = -dx^1 ⊗ dx^0 in dim 2
        assert_eq!(b(2, &[0], &[1]).double_hodge(), b(2, &[1], &[0]).neg());
        // ⊛⊛ = (-1)^{p(d-p)+q(d-q)}: (1,0) in dim 2 picks up -1
        let phi = b(2, &[0], &[]);
        assert_eq!(phi.double_hodge().double_hodge(), phi.neg());
        assert_eq!(phi.double_hodge_inv().double_hodge(), phi);
        assert_eq!(phi.double_hodge().double_hodge_inv(), phi);
    }

    #[test]
    fn double_wedge_example() {
        let lhs = b(2, &[0], &[1]).double_wedge(&b(2, &[1], &[0]));
        assert_eq!(lhs, b(2, &[0, 1], &[0, 1]).neg());
    }

    #[test]
    fn inner_product_via_star_wedge() {
        // ⟨φ, ψ⟩ = ⊛⁻¹(φ ⩕ ⊛ψ) on Λ^{p,q}, checked across a small range
        for d in 1..=3usize {
            for p in 0..=d {
                for q in 0..=d {
                    for (i, j) in basis_pairs(d, p, q) {
                        let phi = D::basis(d, i, j);
                        for (k, l) in basis_pairs(d, p, q) {
                            let psi = D::basis(d, k, l);
                            let direct = phi.inner_product(&psi);
                            let via = phi.double_wedge(&psi.double_hodge()).double_hodge_inv().scalar_part();
                            assert_eq!(direct, via);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn include_example() {
        let omega = Multicovector::<Rational>::basis(2, mi(&[0, 1]));
        let inc = include_ipq(&omega, 1, 1);
        assert_eq!(inc, b(2, &[0], &[1]).sub(&b(2, &[1], &[0])));
        // s and the inclusion: s i^{1,1} = (-1)^1 (1+1) i^{2,0}
        let lhs = inc.bianchi_s();
        let rhs = include_ipq(&omega, 2, 0).scale(&Rational::from_int(-2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn include_collapse_inverse() {
        // ∧ i^{p,q} = C(k, p) on Λ^k
        for d in 1..=4usize {
            for k in 0..=d {
                for p in 0..=k {
                    for kidx in crate::multiindex::subsets(d, k) {
                        let omega = Multicovector::<Rational>::basis(d, kidx);
                        let collapsed = include_ipq(&omega, p, k - p).wedge_collapse();
                        let expect = omega.scale(&Rational::from_int(binom(k, p) as i64));
                        assert_eq!(collapsed, expect);
                    }
                }
            }
        }
    }

    #[test]
    fn collapse_intertwines_s() {
        // ∧ s = (-1)^p q ∧ and ∧ s* = (-1)^{p-1} p ∧
        let phi = b(3, &[0], &[1, 2]);
        let lhs = phi.bianchi_s().wedge_collapse();
        let rhs = phi.wedge_collapse().scale(&Rational::from_int(-2));
        assert_eq!(lhs, rhs);
        let psi = b(2, &[0, 1], &[]);
        let lhs = psi.bianchi_s_star().wedge_collapse();
        let rhs = psi.wedge_collapse().scale(&Rational::from_int(-2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn valid_summand_ranges() {
        assert_eq!(valid_summands(1, 1, 2), vec![0, 1]);
        assert_eq!(valid_summands(2, 1, 2), vec![0]);
        assert_eq!(valid_summands(0, 2, 2), vec![2]);
        assert_eq!(valid_summands(3, 1, 2), Vec::<usize>::new());
        assert_eq!(valid_summands(2, 2, 5), vec![0, 1, 2]);
    }

    #[test]
    fn projectors_resolve_identity() {
        for d in 1..=4usize {
            for p in 0..=d.min(3) {
                for q in 0..=d.min(3) {
                    let valid = valid_summands(p, q, d);
                    for (i, j) in basis_pairs(d, p, q) {
                        let phi = D::basis(d, i, j);
                        let mut acc = D::zero(d, p, q);
                        for &m in &valid {
                            let pm = phi.project_summand(m);
                            // eigenvector check: s*s pm = λ_m pm
                            let ss = pm.bianchi_s().bianchi_s_star();
                            assert_eq!(ss, pm.scale(&Rational::from_int(eigenvalue(p, q, m))));
                            acc = acc.add(&pm);
                        }
                        assert_eq!(acc, phi, "projectors must sum to the identity");
                    }
                }
            }
        }
    }

    #[test]
    fn projector_splits_the_worked_example() {
        // dx^0 ⊗ dx^1 in dim 2 splits into symmetric (m=0) and skew (m=1)
        let phi = b(2, &[0], &[1]);
        let p0 = phi.project_summand(0);
        let p1 = phi.project_summand(1);
        let half = Rational::ratio(1, 2);
        let sym = b(2, &[0], &[1]).add(&b(2, &[1], &[0])).scale(&half);
        let skw = b(2, &[0], &[1]).sub(&b(2, &[1], &[0])).scale(&half);
        assert_eq!(p0, sym);
        assert_eq!(p1, skw);
    }

    #[test]
    fn summand_dims_match_projector_rank() {
        for d in 1..=4usize {
            for p in 0..=d {
                for q in 0..=d {
                    for m in valid_summands(p, q, d) {
                        let vecs: Vec<Vec<Rational>> = basis_pairs(d, p, q)
                            .into_iter()
                            .map(|(i, j)| D::basis(d, i, j).project_summand(m).to_vec())
                            .collect();
                        let rank = crate::linalg::span_rank(&vecs);
                        assert_eq!(rank, summand_dim(p, q, m, d), "(p,q,m,d)=({p},{q},{m},{d})");
                    }
                }
            }
        }
    }

    #[test]
    fn tau_acts_by_parity_on_diagonal_summands() {
        for d in 1..=3usize {
            for p in 0..=d {
                for m in valid_summands(p, p, d) {
                    for (i, j) in basis_pairs(d, p, p) {
                        let pm = D::basis(d, i, j).project_summand(m);
                        let tau = pm.transpose_tau();
                        let signed = if m % 2 == 0 { pm.clone() } else { pm.neg() };
                        assert_eq!(tau, signed);
                    }
                }
            }
        }
    }

    #[test]
    fn image_of_include_is_top_summand() {
        for d in 1..=4usize {
            for k in 0..=d {
                for p in 0..=k {
                    let q = k - p;
                    if !valid_summands(p, q, d).contains(&q) {
                        continue;
                    }
                    for kidx in crate::multiindex::subsets(d, k) {
                        let omega = Multicovector::<Rational>::basis(d, kidx);
                        let inc = include_ipq(&omega, p, q);
                        assert_eq!(inc.project_summand(q), inc);
                    }
                }
            }
        }
    }

    #[test]
    fn binom_edges() {
        assert_eq!(binom(5, 2), 10);
        assert_eq!(binom(3, 0), 1);
        assert_eq!(binom(2, 3), 0);
        assert_eq!(binom_i128(-1, 0), 0);
        assert_eq!(binom_i128(4, -1), 0);
    }
}
