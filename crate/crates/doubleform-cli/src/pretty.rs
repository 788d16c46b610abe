//! Human-readable rendering of double forms.
//!
//! Factors are written dλ_i, joined by ∧ inside each exterior slot and by ⊗
//! between the two slots. A τ-symmetric form with p = q is folded into the
//! symmetric product ⊙ = ½(⊗ + swap), so c(dλ_i⊗dλ_j + dλ_j⊗dλ_i) prints as
//! 2c dλ_i⊙dλ_j. Simplex forms are lifted to barycentric coordinates and the
//! roles are labelled with the simplex's global vertex numbers.

use doubleform::multiindex::MultiIndex;
use doubleform::poly::{Monomial, PolyDoubleForm};
use doubleform::simplex::{lift_to_lambda_standard, SimplexForm};
use doubleform::{Rational, Scalar};

pub fn render_simplex(phi: &SimplexForm<Rational>) -> String {
    render_poly(&lift_to_lambda_standard(phi), phi.vertices())
}

/// `labels[i]` names coordinate role i; pass `0..dim` for ambient forms.
pub fn render_poly(phi: &PolyDoubleForm<Rational>, labels: &[usize]) -> String {
    assert_eq!(labels.len(), phi.dim(), "one label per coordinate");
    if phi.is_zero() {
        return "0".into();
    }
    let prefix = phi.coords().var_prefix();
    let scalar_valued = phi.p() == 0 && phi.q() == 0;
    let symmetric =
        phi.p() == phi.q() && !scalar_valued && *phi == phi.transpose_tau();
    let two = Rational::from_int(2);

    let mut pieces: Vec<(Rational, String)> = Vec::new();
    for ((mono, i, j), c) in phi.terms() {
        let mut c = c.clone();
        let tensor = if scalar_valued {
            String::new()
        } else if symmetric {
            if i > j {
                continue; // folded into the (i, j) ≤ (j, i) partner
            }
            if i < j {
                c = c * two.clone();
            }
            format!("{}⊙{}", slot(prefix, i, labels), slot(prefix, j, labels))
        } else {
            format!("{}⊗{}", slot(prefix, i, labels), slot(prefix, j, labels))
        };
        let mono_s = monomial_str(prefix, mono, labels);
        let body = match (mono_s.is_empty(), tensor.is_empty()) {
            (true, true) => String::new(),
            (true, false) => tensor,
            (false, true) => mono_s,
            (false, false) => format!("{mono_s} {tensor}"),
        };
        pieces.push((c, body));
    }
    join_signed(&pieces)
}

fn slot(prefix: &str, idx: &MultiIndex, labels: &[usize]) -> String {
    if idx.degree() == 0 {
        return "1".into();
    }
    idx.indices()
        .iter()
        .map(|&i| format!("d{prefix}_{}", labels[i as usize]))
        .collect::<Vec<_>>()
        .join("∧")
}

fn monomial_str(prefix: &str, mono: &Monomial, labels: &[usize]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in mono.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("{prefix}_{}", labels[i])),
            _ => parts.push(format!("{prefix}_{}^{e}", labels[i])),
        }
    }
    parts.join(" ")
}

fn join_signed(pieces: &[(Rational, String)]) -> String {
    let zero = Rational::from_int(0);
    let one = Rational::from_int(1);
    let mut out = String::new();
    for (k, (c, body)) in pieces.iter().enumerate() {
        let neg = *c < zero;
        let abs = if neg { -c.clone() } else { c.clone() };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if abs != one || body.is_empty() {
            out.push_str(&abs.to_string());
            if !body.is_empty() {
                out.push(' ');
            }
        }
        out.push_str(body);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}
