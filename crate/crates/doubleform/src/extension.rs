//! The vanishing-trace extension operator: takes a trace-free (p,q)-form on
//! the standard simplex T^n and produces a homogeneous-polynomial double form
//! on ℝ^{n+1} in the same eigensummand whose restriction to every coordinate
//! hyperplane vanishes and whose restriction to T^n is the input.
//!
//! The construction transfers the form to the covering sphere octant via
//! λ_i = u_i², applies the tangential double star, strips the common factor
//! u_N = u_0...u_n, smooths with d_L d_R, and undoes the star, scaling by
//! 1/C with C = (2r+p+m+1)(2r+q−m). The single genuinely inextensible case
//! is r = 0, m = q, where the second factor of C vanishes.

use thiserror::Error;

use crate::double::{eigenvalue, valid_summands};
use crate::poly::PolyDoubleForm;
use crate::scalar::Scalar;
use crate::simplex::{facet_trace, lift_to_lambda_standard, trace_hyperplane, SimplexForm};
use crate::sphere::{divide_un, double_star_sphere, mul_un, sphere_pullback, sphere_pushforward};
use crate::Rational;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ExtendError {
    /// r = 0 and m = q: the scaling constant C has a zero factor and no
    /// vanishing trace extension exists.
    #[error("no vanishing-trace extension exists for r = 0, m = q")]
    ExtensionUnavailable,
    /// The input fails the vanishing-trace precondition on some facet (or,
    /// equivalently, the lifted form fails divisibility on the sphere).
    #[error("facet trace does not vanish (role {0})")]
    TraceNotVanishing(usize),
    /// The input is not an eigenvector of s*s for the requested m.
    #[error("form is not in the m = {0} summand")]
    SummandMismatch(usize),
}

/// The output of a successful extension.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionResult<S> {
    /// Homogeneous degree-r form on ℝ^{n+1} in λ-coordinates.
    pub form: PolyDoubleForm<S>,
    /// The scaling constant C = (2r+p+m+1)(2r+q−m).
    pub constant_c: Rational,
}

/// C = (2r+p+m+1)(2r+q−m) as exact integers.
pub fn extension_constant(p: usize, q: usize, m: usize, r: u32) -> (i64, i64) {
    let r = r as i64;
    let (p, q, m) = (p as i64, q as i64, m as i64);
    (2 * r + p + m + 1, 2 * r + q - m)
}

/// Extends a trace-free form on T^n to a vanishing-trace form on ℝ^{n+1}.
///
/// Preconditions checked eagerly: φ̄ has polynomial degree ≤ r, lies in the
/// m-summand, and has vanishing trace on every facet. The zero form extends
/// to zero by linearity even where the theorem's constant degenerates.
pub fn extend<S: Scalar>(
    phi: &SimplexForm<S>,
    p: usize,
    q: usize,
    m: usize,
    r: u32,
) -> Result<ExtensionResult<S>, ExtendError> {
    let n = phi.n();
    assert_eq!((phi.form().p(), phi.form().q()), (p, q), "bidegree mismatch");
    assert!(
        valid_summands(p, q, n).contains(&m),
        "invalid summand m={m} for ({p},{q}) forms on a {n}-simplex"
    );
    assert!(phi.form().max_degree() <= r, "polynomial degree exceeds r");

    let (c1, c2) = extension_constant(p, q, m, r);
    if phi.is_zero() {
        return Ok(ExtensionResult {
            form: PolyDoubleForm::zero(n + 1, p, q, crate::poly::Coords::Lambda),
            constant_c: Rational::from_int(c1 * c2),
        });
    }

    // eager checks: summand membership ...
    let lam = S::from_int(eigenvalue(p, q, m));
    let ss = phi.form().bianchi_s().bianchi_s_star();
    if ss != phi.form().scale(&lam) {
        return Err(ExtendError::SummandMismatch(m));
    }
    // ... and vanishing facet traces (vacuous on a point)
    if n >= 1 {
        for role in 0..=n {
            if !facet_trace(phi, role).is_zero() {
                return Err(ExtendError::TraceNotVanishing(role));
            }
        }
    }
    if c2 == 0 {
        return Err(ExtendError::ExtensionUnavailable);
    }

    let form = extension_pipeline(phi, r)
        .scale(&S::ratio(if (p + q) % 2 == 0 { 1 } else { -1 }, c1 * c2));
    Ok(ExtensionResult { form, constant_c: Rational::from_int(c1 * c2) })
}

/// The raw pipeline without the (−1)^k/C normalization:
/// Φ_* [ u_N ⊛⁻¹ d_L d_R ( u_N⁻¹ ⊛_S Φ*(homogenized lift) ) ].
fn extension_pipeline<S: Scalar>(phi: &SimplexForm<S>, r: u32) -> PolyDoubleForm<S> {
    pipeline_from_lift(&lift_to_lambda_standard(phi).homogenize(r))
}

/// Same pipeline starting from an already lifted, homogeneous representative.
/// The output depends only on the restriction of the lift to the simplex.
pub(crate) fn pipeline_from_lift<S: Scalar>(lifted: &PolyDoubleForm<S>) -> PolyDoubleForm<S> {
    let on_sphere = sphere_pullback(lifted);
    let starred = double_star_sphere(&on_sphere);
    let stripped = divide_un(&starred)
        .expect("trace-free forms transfer to sphere forms divisible by u_N");
    let smoothed = stripped.d_left().d_right();
    let unstarred = smoothed.double_hodge_inv();
    sphere_pushforward(&mul_un(&unstarred))
        .expect("pipeline output is even and divisible by u_N")
}

/// Diagnostic record for `extend_check`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtendDiagnostics {
    pub constant_factors: (i64, i64),
    pub available: bool,
    pub summand_ok: bool,
    pub traces_vanish: bool,
    /// For successful runs: the three invariants of the result.
    pub restricts_to_input: Option<bool>,
    pub hyperplane_traces_vanish: Option<bool>,
    pub in_summand: Option<bool>,
    pub homogeneous_of_r: Option<bool>,
}

/// Runs `extend` when legal and re-verifies every promised property of the
/// output; reports the exceptional case instead of failing.
pub fn extend_check<S: Scalar>(
    phi: &SimplexForm<S>,
    p: usize,
    q: usize,
    m: usize,
    r: u32,
) -> ExtendDiagnostics {
    let n = phi.n();
    let (c1, c2) = extension_constant(p, q, m, r);
    let lam = S::from_int(eigenvalue(p, q, m));
    let summand_ok =
        phi.form().bianchi_s().bianchi_s_star() == phi.form().scale(&lam);
    let traces_vanish = n == 0 || (0..=n).all(|role| facet_trace(phi, role).is_zero());
    let mut diag = ExtendDiagnostics {
        constant_factors: (c1, c2),
        available: c2 != 0 || phi.is_zero(),
        summand_ok,
        traces_vanish,
        restricts_to_input: None,
        hyperplane_traces_vanish: None,
        in_summand: None,
        homogeneous_of_r: None,
    };
    if !(diag.available && summand_ok && traces_vanish) {
        return diag;
    }
    let Ok(res) = extend(phi, p, q, m, r) else {
        diag.available = false;
        return diag;
    };
    let back = crate::simplex::trace_to_simplex(&res.form, n);
    diag.restricts_to_input = Some(&back == phi);
    diag.hyperplane_traces_vanish =
        Some((0..=n).all(|i| trace_hyperplane(&res.form, i).is_zero()));
    diag.in_summand = Some(res.form.project_summand(m) == res.form);
    diag.homogeneous_of_r = Some(res.form.is_homogeneous_of(r));
    diag
}
