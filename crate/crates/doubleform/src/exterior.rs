//! Constant-coefficient exterior algebra: multicovectors over a d-dimensional
//! space with the standard orthonormal frame, wedge products, contractions,
//! and the Hodge star.

use std::collections::BTreeMap;

use crate::multiindex::{subsets, MultiIndex};
use crate::scalar::{sign_scalar, Scalar};

/// A k-covector in dimension d, stored as coefficients on the increasing
/// basis dx^I.
///
/// Zero covectors of the same dimension compare equal and add regardless of
/// their nominal degree, so degree-boundary operators can return plain
/// zeroes.
#[derive(Clone, Debug)]
pub struct Multicovector<S> {
    dim: usize,
    degree: usize,
    terms: BTreeMap<MultiIndex, S>,
}

impl<S: PartialEq> PartialEq for Multicovector<S> {
    fn eq(&self, other: &Self) -> bool {
        if self.dim != other.dim {
            return false;
        }
        if self.terms.is_empty() && other.terms.is_empty() {
            return true;
        }
        self.degree == other.degree && self.terms == other.terms
    }
}

impl<S: Scalar> Multicovector<S> {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Multicovector { dim, degree, terms: BTreeMap::new() }
    }

    /// The basis covector dx^I.
    pub fn basis(dim: usize, index: MultiIndex) -> Self {
        assert!(index.max_index().map_or(true, |m| (m as usize) < dim), "index out of range");
        let mut terms = BTreeMap::new();
        terms.insert(index.clone(), S::one());
        Multicovector { dim, degree: index.degree(), terms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, index: &MultiIndex) -> S {
        self.terms.get(index).cloned().unwrap_or_else(S::zero)
    }

    pub fn add_term(&mut self, index: MultiIndex, coeff: S) {
        assert_eq!(index.degree(), self.degree, "degree mismatch");
        let entry = self.terms.entry(index).or_insert_with(S::zero);
        *entry = entry.clone() + coeff;
        self.prune();
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        if self.terms.is_empty() {
            return other.clone();
        }
        if other.terms.is_empty() {
            return self.clone();
        }
        assert_eq!(self.degree, other.degree, "degree mismatch");
        let mut out = self.clone();
        for (i, c) in &other.terms {
            out.add_term(i.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, factor: &S) -> Self {
        let mut out = self.clone();
        out.terms = out
            .terms
            .into_iter()
            .map(|(i, c)| (i, c * factor.clone()))
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

    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut out = Multicovector::zero(self.dim, self.degree + other.degree);
        if out.degree > self.dim {
            return out;
        }
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                if let Some((merged, sign)) = i.merge(j) {
                    out.add_term(merged, sign_scalar::<S>(sign) * a.clone() * b.clone());
                }
            }
        }
        out
    }

    /// Contraction e_i ⨼ self against the i-th frame vector.
    pub fn contract(&self, i: u8) -> Self {
        assert!((i as usize) < self.dim, "index out of range");
        assert!(self.degree > 0, "cannot contract a 0-covector");
        let mut out = Multicovector::zero(self.dim, self.degree - 1);
        for (idx, c) in &self.terms {
            if let Some((rest, sign)) = idx.remove(i) {
                out.add_term(rest, sign_scalar::<S>(sign) * c.clone());
            }
        }
        out
    }

    /// Hodge star for the standard orthonormal frame: dx^I ∧ ⋆dx^I = volume.
    pub fn hodge(&self) -> Self {
        let mut out = Multicovector::zero(self.dim, self.dim - self.degree);
        for (idx, c) in &self.terms {
            let comp = idx.complement(self.dim);
            let (_, sign) = idx.merge(&comp).expect("complement is disjoint");
            out.add_term(comp, sign_scalar::<S>(sign) * c.clone());
        }
        out
    }

    /// Frame inner product (the increasing basis is orthonormal).
    pub fn inner(&self, other: &Self) -> S {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        assert_eq!(self.degree, other.degree, "degree mismatch");
        let mut acc = S::zero();
        for (i, a) in &self.terms {
            if let Some(b) = other.terms.get(i) {
                acc = acc + a.clone() * b.clone();
            }
        }
        acc
    }

    /// Coefficient vector over the full increasing basis of Λ^degree.
    pub fn to_vec(&self) -> Vec<S> {
        subsets(self.dim, self.degree).iter().map(|i| self.coeff(i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type C = Multicovector<Rational>;

    fn b(d: usize, idx: &[usize]) -> C {
        C::basis(d, MultiIndex::from_usizes(idx))
    }

    #[test]
    fn contraction_examples() {
        let dx01 = b(2, &[0, 1]);
        assert_eq!(dx01.contract(0), b(2, &[1]));
        assert_eq!(dx01.contract(1), b(2, &[0]).neg());
    }

    #[test]
    fn hodge_examples_dim3() {
        assert_eq!(b(3, &[0]).hodge(), b(3, &[1, 2]));
        assert_eq!(b(3, &[1]).hodge(), b(3, &[0, 2]).neg());
        assert_eq!(b(3, &[2]).hodge(), b(3, &[0, 1]));
        assert_eq!(b(3, &[]).hodge(), b(3, &[0, 1, 2]));
    }

    #[test]
    fn wedge_with_star_is_volume() {
        for d in 1..=5usize {
            for k in 0..=d {
                for idx in subsets(d, k) {
                    let a = C::basis(d, idx);
                    let vol = a.wedge(&a.hodge());
                    let expected = C::basis(d, MultiIndex::from_usizes(
                        &(0..d).collect::<Vec<_>>(),
                    ));
                    assert_eq!(vol, expected);
                }
            }
        }
    }

    #[test]
    fn double_hodge_sign() {
        for d in 1..=6usize {
            for k in 0..=d {
                for idx in subsets(d, k) {
                    let a = C::basis(d, idx);
                    let twice = a.hodge().hodge();
                    let sign = if (k * (d - k)) % 2 == 0 { a.clone() } else { a.neg() };
                    assert_eq!(twice, sign);
                }
            }
        }
    }

    #[test]
    fn wedge_contract_trace_identity() {
        // Σ_i dx^i ∧ (e_i ⨼ α) = k α
        for d in 1..=6usize {
            for k in 1..=d {
                for idx in subsets(d, k) {
                    let a = C::basis(d, idx);
                    let mut acc = C::zero(d, k);
                    for i in 0..d as u8 {
                        let e_i = b(d, &[i as usize]);
                        acc = acc.add(&e_i.wedge(&a.contract(i)));
                    }
                    assert_eq!(acc, a.scale(&Rational::from_int(k as i64)));
                }
            }
        }
    }

    #[test]
    fn wedge_anticommutes() {
        let a = b(4, &[0, 2]).add(&b(4, &[1, 3]).scale(&Rational::ratio(1, 2)));
        let c = b(4, &[1]).add(&b(4, &[3]).neg());
        let ac = a.wedge(&c);
        let ca = c.wedge(&a);
        // (-1)^{2*1} = +1
        assert_eq!(ac, ca);
        let e = b(4, &[0]);
        assert_eq!(c.wedge(&e), e.wedge(&c).neg());
    }

    #[test]
    fn contract_is_antiderivation() {
        let a = b(4, &[0, 1]);
        let c = b(4, &[2]).add(&b(4, &[0]));
        for i in 0..4u8 {
            let lhs = a.wedge(&c).contract(i);
            let rhs = a.contract(i).wedge(&c).add(&a.wedge(&c.contract(i)));
            // deg a = 2, so the sign on the second term is +1
            assert_eq!(lhs, rhs, "i = {i}");
        }
    }
}
