//! Transfer of double forms between a simplex and the covering sphere
//! octant under the substitution λ_i = u_i².
//!
//! Forms on the λ side use barycentric-style coordinates λ_0..λ_{d-1}; the
//! sphere side uses ambient coordinates u_0..u_{d-1} restricted to the unit
//! sphere. The tangential Hodge stars on the sphere are implemented purely
//! algebraically through the ambient star and the position covector
//! ν = Σ u_i du^i, so everything stays in exact arithmetic.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::exterior::Multicovector;
use crate::multiindex::MultiIndex;
use crate::poly::{Coords, Monomial, PolyDoubleForm};
use crate::scalar::Scalar;

/// Failure modes of the sphere-to-simplex direction.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SphereError {
    /// Some term has odd total parity in some variable, so it cannot be
    /// expressed in the squared coordinates.
    #[error("form is not even in variable u_{0}")]
    ParityError(usize),
    /// A monomial is missing the requested factor.
    #[error("a coefficient monomial has no factor u_{0}")]
    NotDivisible(usize),
    /// After pairing du^i factors with u_i's, a residual exponent came out
    /// odd. Cannot happen for inputs produced by the documented pipeline;
    /// kept as a loud failure rather than a silent wrong answer.
    #[error("internal: odd residual exponent in variable u_{0} after pairing")]
    OddResidue(usize),
}

/// ν = Σ_i u_i du^i, the position covector, as a (1,0) double form in u.
pub fn tautological_covector<S: Scalar>(dim: usize) -> PolyDoubleForm<S> {
    let mut nu = PolyDoubleForm::zero(dim, 1, 0, Coords::U);
    for i in 0..dim {
        nu.add_term(
            Monomial::var(dim, i),
            MultiIndex::new(vec![i as u8]),
            MultiIndex::empty(),
            S::one(),
        );
    }
    nu
}

/// Pullback under Φ(u) = (u_0², ..., u_{d-1}²): substitutes λ_i = u_i² and
/// dλ_i = 2 u_i du^i term by term. Index sets survive unchanged; each term
/// picks up 2^{p+q} and one extra u_i per differential factor.
pub fn sphere_pullback<S: Scalar>(phi: &PolyDoubleForm<S>) -> PolyDoubleForm<S> {
    let two_pow = S::from_int(1i64 << (phi.p() + phi.q()));
    let mut out = PolyDoubleForm::zero(phi.dim(), phi.p(), phi.q(), Coords::U);
    for ((mono, i, j), c) in phi.terms() {
        let mut exps: Vec<u32> = mono.exps().to_vec();
        for idx in exps.iter_mut() {
            *idx *= 2;
        }
        for &a in i.indices() {
            exps[a as usize] += 1;
        }
        for &a in j.indices() {
            exps[a as usize] += 1;
        }
        out.add_term(Monomial::new(exps), i.clone(), j.clone(), c.clone() * two_pow.clone());
    }
    out
}

/// True when every term of ψ has even total parity in every variable,
/// counting the monomial exponent plus one for each appearance of the
/// variable in either index set.
pub fn is_even<S: Scalar>(psi: &PolyDoubleForm<S>) -> bool {
    psi.terms().all(|((mono, i, j), _)| {
        (0..psi.dim()).all(|v| {
            let mut t = mono.exps()[v];
            if i.contains(v as u8) {
                t += 1;
            }
            if j.contains(v as u8) {
                t += 1;
            }
            t % 2 == 0
        })
    })
}

/// Divides by u_N = u_0 u_1 ... u_{d-1}. Every coefficient monomial must
/// contain every variable.
pub fn divide_un<S: Scalar>(psi: &PolyDoubleForm<S>) -> Result<PolyDoubleForm<S>, SphereError> {
    let mut out = PolyDoubleForm::zero(psi.dim(), psi.p(), psi.q(), psi.coords());
    for ((mono, i, j), c) in psi.terms() {
        let mut exps: Vec<u32> = mono.exps().to_vec();
        for (v, e) in exps.iter_mut().enumerate() {
            if *e == 0 {
                return Err(SphereError::NotDivisible(v));
            }
            *e -= 1;
        }
        out.add_term(Monomial::new(exps), i.clone(), j.clone(), c.clone());
    }
    Ok(out)
}

/// Multiplies by u_N = u_0 u_1 ... u_{d-1}.
pub fn mul_un<S: Scalar>(psi: &PolyDoubleForm<S>) -> PolyDoubleForm<S> {
    let mut out = PolyDoubleForm::zero(psi.dim(), psi.p(), psi.q(), psi.coords());
    for ((mono, i, j), c) in psi.terms() {
        let mut exps: Vec<u32> = mono.exps().to_vec();
        for e in exps.iter_mut() {
            *e += 1;
        }
        out.add_term(Monomial::new(exps), i.clone(), j.clone(), c.clone());
    }
    out
}

/// Ambient Hodge star applied to the left index set of a (k,0) form with
/// polynomial coefficients.
fn hodge_left<S: Scalar>(alpha: &PolyDoubleForm<S>) -> PolyDoubleForm<S> {
    assert_eq!(alpha.q(), 0, "hodge_left expects a (k,0) form");
    let d = alpha.dim();
    let mut out = PolyDoubleForm::zero(d, d - alpha.p(), 0, alpha.coords());
    for ((mono, i, _), c) in alpha.terms() {
        let star: Multicovector<S> = Multicovector::basis(d, i.clone()).hodge();
        for (ic, sc) in star.terms() {
            out.add_term(mono.clone(), ic.clone(), MultiIndex::empty(), c.clone() * sc.clone());
        }
    }
    out
}

/// Tangential Hodge star on the sphere for a single-factor form:
/// ⋆_S α = ⋆_ℝ(ν ∧ α), with α a (k,0) form in u. The result has
/// degree d-1-k, matching a star on the (d-1)-sphere.
pub fn star_sphere<S: Scalar>(alpha: &PolyDoubleForm<S>) -> PolyDoubleForm<S> {
    assert_eq!(alpha.q(), 0, "star_sphere expects a (k,0) form");
    let nu = tautological_covector::<S>(alpha.dim());
    hodge_left(&nu.double_wedge(alpha))
}

/// The same star through the Koszul route: ⋆_S α = (-1)^k κ(⋆_ℝ α).
pub fn star_sphere_koszul<S: Scalar>(alpha: &PolyDoubleForm<S>) -> PolyDoubleForm<S> {
    assert_eq!(alpha.q(), 0, "star_sphere expects a (k,0) form");
    let k = alpha.p();
    let signed = hodge_left(alpha).koszul_left();
    if k % 2 == 0 {
        signed
    } else {
        signed.neg()
    }
}

/// Tangential double star ⊛_S = ⋆_S ⊗ ⋆_S, applied factor by factor.
/// Index-set stars are cached across terms since many terms share them.
pub fn double_star_sphere<S: Scalar>(psi: &PolyDoubleForm<S>) -> PolyDoubleForm<S> {
    let d = psi.dim();
    let (p, q) = (psi.p(), psi.q());
    let mut cache: BTreeMap<(usize, MultiIndex), PolyDoubleForm<S>> = BTreeMap::new();
    let mut star_of = |deg: usize, idx: &MultiIndex| -> PolyDoubleForm<S> {
        cache
            .entry((deg, idx.clone()))
            .or_insert_with(|| {
                let mut base = PolyDoubleForm::zero(d, deg, 0, Coords::U);
                base.add_term(Monomial::one(d), idx.clone(), MultiIndex::empty(), S::one());
                star_sphere(&base)
            })
            .clone()
    };
    let mut out = PolyDoubleForm::zero(d, d - 1 - p, d - 1 - q, Coords::U);
    for ((mono, i, j), c) in psi.terms() {
        let left = star_of(p, i);
        let right = star_of(q, j);
        let prod = left.outer_product(&right).mul_monomial(mono).scale(c);
        out = out.add(&prod);
    }
    out
}

/// The double star through the Koszul route:
/// ⊛_S ψ = (-1)^{p+q} κ_L κ_R (⊛_ℝ ψ).
pub fn double_star_sphere_koszul<S: Scalar>(psi: &PolyDoubleForm<S>) -> PolyDoubleForm<S> {
    let k = psi.p() + psi.q();
    let signed = psi.double_hodge().koszul_left().koszul_right();
    if k % 2 == 0 {
        signed
    } else {
        signed.neg()
    }
}

/// Pushforward to the λ side: inverts the substitution λ_i = u_i² on forms
/// divisible by u_N. Each du^i factor pairs with one u_i to become ½ dλ_i,
/// and the leftover even powers become λ exponents.
pub fn sphere_pushforward<S: Scalar>(
    psi: &PolyDoubleForm<S>,
) -> Result<PolyDoubleForm<S>, SphereError> {
    let d = psi.dim();
    for ((mono, i, j), _) in psi.terms() {
        for v in 0..d {
            let mut t = mono.exps()[v];
            if i.contains(v as u8) {
                t += 1;
            }
            if j.contains(v as u8) {
                t += 1;
            }
            if t % 2 != 0 {
                return Err(SphereError::ParityError(v));
            }
        }
        if let Some(v) = mono.exps().iter().position(|&e| e == 0) {
            return Err(SphereError::NotDivisible(v));
        }
    }
    let mut out = PolyDoubleForm::zero(d, psi.p(), psi.q(), Coords::Lambda);
    for ((mono, i, j), c) in psi.terms() {
        let mut exps: Vec<u32> = mono.exps().to_vec();
        let mut halves = 0usize;
        for &a in i.indices() {
            exps[a as usize] -= 1;
            halves += 1;
        }
        for &a in j.indices() {
            exps[a as usize] -= 1;
            halves += 1;
        }
        for (v, e) in exps.iter_mut().enumerate() {
            if *e % 2 != 0 {
                return Err(SphereError::OddResidue(v));
            }
            *e /= 2;
        }
        let coeff = c.clone() * S::ratio(1, 1i64 << halves);
        out.add_term(Monomial::new(exps), i.clone(), j.clone(), coeff);
    }
    Ok(out)
}
