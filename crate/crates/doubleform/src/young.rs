//! Young diagrams as an independent oracle: hook-length dimension counts
//! for the summands Λ^{p,q}_m and for the vanishing-trace spaces, plus the
//! symmetrizer realization of the summand projection on expanded tensors.

use std::collections::BTreeMap;

use crate::double::{valid_summands, DoubleCovector};
use crate::multiindex::MultiIndex;
use crate::scalar::Scalar;

/// A Young diagram stored as weakly decreasing column heights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YoungDiagram {
    columns: Vec<usize>,
}

impl YoungDiagram {
    pub fn from_columns(columns: Vec<usize>) -> Self {
        let columns: Vec<usize> = columns.into_iter().filter(|&c| c > 0).collect();
        assert!(
            columns.windows(2).all(|w| w[0] >= w[1]),
            "column heights must be weakly decreasing"
        );
        YoungDiagram { columns }
    }

    pub fn from_rows(rows: Vec<usize>) -> Self {
        Self::from_columns(conjugate(&rows))
    }

    pub fn columns(&self) -> &[usize] {
        &self.columns
    }

    /// Row lengths (the conjugate partition).
    pub fn rows(&self) -> Vec<usize> {
        conjugate(&self.columns)
    }

    pub fn boxes(&self) -> usize {
        self.columns.iter().sum()
    }

    /// Height of the first column (0 for the empty diagram).
    pub fn height(&self) -> usize {
        self.columns.first().copied().unwrap_or(0)
    }

    /// Product of the hook lengths over all boxes.
    pub fn hook_product(&self) -> i128 {
        let rows = self.rows();
        let mut prod: i128 = 1;
        for (i, &len) in rows.iter().enumerate() {
            for j in 0..len {
                let arm = len - 1 - j;
                let leg = self.columns[j] - 1 - i;
                prod *= (arm + leg + 1) as i128;
            }
        }
        prod
    }
}

fn conjugate(parts: &[usize]) -> Vec<usize> {
    let max = parts.iter().copied().max().unwrap_or(0);
    (0..max)
        .map(|i| parts.iter().filter(|&&p| p > i).count())
        .collect()
}

fn factorial(n: usize) -> i128 {
    (1..=n as i128).product()
}

/// The two-column diagram of the summand Λ^{p,q}_m: heights p+m and q−m.
pub fn diagram_summand(p: usize, q: usize, m: usize) -> YoungDiagram {
    assert!(m <= q, "m can be at most q");
    assert!(p + m >= q - m, "columns must be weakly decreasing");
    YoungDiagram::from_columns(vec![p + m, q - m])
}

/// The diagram whose standard tableaux count dim 𝓟̊₀Λ^{p,q}_m(T^n):
/// columns n+1−(q−m) and n+1−(p+m), plus p+q−(n+1) single-box columns.
pub fn diagram_trace_free(p: usize, q: usize, m: usize, n: usize) -> YoungDiagram {
    let lo = if q > p { q - p } else { 0 };
    assert!(m >= lo && m < q, "m out of range");
    assert!(n + 1 >= q - m + 1 && n + 1 >= p + m + 1, "m must be admissible on T^n");
    assert!(p + q >= n + 1, "the vanishing-trace space is zero here");
    let p1 = n + 1 - (q - m);
    let q1 = n + 1 - (p + m);
    let r1 = p + q - (n + 1);
    let mut cols = vec![p1, q1];
    cols.extend(std::iter::repeat(1).take(r1));
    YoungDiagram::from_columns(cols)
}

/// GL(d) dimension of the irreducible with this shape: Π(d−i+j) over boxes
/// (i, j), divided by the hook product. Zero when the diagram is taller
/// than d.
pub fn hook_dim_gl(diagram: &YoungDiagram, d: usize) -> i128 {
    if diagram.height() > d {
        return 0;
    }
    let rows = diagram.rows();
    let mut num: i128 = 1;
    for (i, &len) in rows.iter().enumerate() {
        for j in 0..len {
            num *= d as i128 - (i as i128 + 1) + (j as i128 + 1);
        }
    }
    let hooks = diagram.hook_product();
    assert_eq!(num % hooks, 0, "hook quotient must be integral");
    num / hooks
}

/// Number of standard Young tableaux: (#boxes)! over the hook product.
pub fn hook_dim_sym(diagram: &YoungDiagram) -> i128 {
    let hooks = diagram.hook_product();
    let num = factorial(diagram.boxes());
    assert_eq!(num % hooks, 0, "hook quotient must be integral");
    num / hooks
}

/// The constant (r+p+m)(r+q−m−1) of the κ_Lκ_R d_Ld_R eigenvalue identity,
/// computed purely from hook products: the symmetrizer of the d_Ld_R-image
/// diagram factors through the symmetrizer of the summand diagram, with the
/// degree-(r−2) symmetric part contributing (r−2)!.
pub fn kkdd_constant_via_hooks(p: usize, q: usize, m: usize, r: u32) -> i128 {
    assert!(r >= 2, "the hook identity needs r at least 2");
    assert!(m <= q && p + m >= q - m, "m out of range");
    let r = r as usize;
    let mut rows = vec![r];
    rows.extend(std::iter::repeat(2).take(q - m));
    rows.extend(std::iter::repeat(1).take(p + 2 * m - q));
    let image = YoungDiagram::from_rows(rows);
    let summand = diagram_summand(p, q, m);
    let den = factorial(r - 2) * summand.hook_product();
    let num = image.hook_product();
    assert_eq!(num % den, 0, "hook quotient must be integral");
    num / den
}

// --- expanded-tensor symmetrizers -----------------------------------------

type Tensor<S> = BTreeMap<Vec<u8>, S>;

fn tensor_add<S: Scalar>(t: &mut Tensor<S>, key: Vec<u8>, c: S) {
    let entry = t.entry(key).or_insert_with(S::zero);
    *entry = entry.clone() + c;
    // zeros are pruned at read-back
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i32)> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    fn rec(k: usize, idx: &mut Vec<usize>, sign: i32, out: &mut Vec<(Vec<usize>, i32)>) {
        if k == idx.len() {
            out.push((idx.clone(), sign));
            return;
        }
        for i in k..idx.len() {
            idx.swap(k, i);
            rec(k + 1, idx, if i == k { sign } else { -sign }, out);
            idx.swap(k, i);
        }
    }
    rec(0, &mut idx, 1, &mut out);
    out
}

/// Unnormalized antisymmetrization of the slots [lo, lo+len).
fn antisymmetrize<S: Scalar>(t: &Tensor<S>, lo: usize, len: usize) -> Tensor<S> {
    let mut out = Tensor::new();
    for (perm, sign) in permutations(len) {
        for (key, c) in t {
            let mut nk = key.clone();
            for (i, &pi) in perm.iter().enumerate() {
                nk[lo + i] = key[lo + pi];
            }
            tensor_add(&mut out, nk, crate::scalar::sign_scalar::<S>(sign) * c.clone());
        }
    }
    out
}

/// Unnormalized symmetrization of one pair of slots: t + swap(t).
fn symmetrize_pair<S: Scalar>(t: &Tensor<S>, a: usize, b: usize) -> Tensor<S> {
    let mut out = t.clone();
    for (key, c) in t {
        let mut nk = key.clone();
        nk.swap(a, b);
        tensor_add(&mut out, nk, c.clone());
    }
    out
}

fn expand<S: Scalar>(phi: &DoubleCovector<S>) -> Tensor<S> {
    let (p, q) = (phi.p(), phi.q());
    let mut out = Tensor::new();
    for ((i, j), c) in phi.terms() {
        let iv = i.indices();
        let jv = j.indices();
        for (pi, si) in permutations(p) {
            for (pj, sj) in permutations(q) {
                let mut key = Vec::with_capacity(p + q);
                key.extend(pi.iter().map(|&a| iv[a]));
                key.extend(pj.iter().map(|&a| jv[a]));
                tensor_add(
                    &mut out,
                    key,
                    crate::scalar::sign_scalar::<S>(si * sj) * c.clone(),
                );
            }
        }
    }
    out
}

fn read_back<S: Scalar>(t: &Tensor<S>, dim: usize, p: usize, q: usize) -> DoubleCovector<S> {
    let mut out = DoubleCovector::zero(dim, p, q);
    for (key, c) in t {
        if c.is_zero() {
            continue;
        }
        let (i, j) = key.split_at(p);
        if i.windows(2).all(|w| w[0] < w[1]) && j.windows(2).all(|w| w[0] < w[1]) {
            out.add_term(
                MultiIndex::new(i.to_vec()),
                MultiIndex::new(j.to_vec()),
                c.clone(),
            );
        }
    }
    out
}

/// Symmetrizer route to the summand projection: antisymmetrize the first
/// p+m indices of the expanded tensor, symmetrize the q−m corresponding
/// left/right index pairs, antisymmetrize the first p+m indices again, and
/// antisymmetrize the last q. Dividing by the hook-product constant (times
/// p! for the block expansion of the input) recovers the projection onto
/// Λ^{p,q}_m exactly.
pub fn young_project<S: Scalar>(phi: &DoubleCovector<S>, m: usize) -> DoubleCovector<S> {
    let (d, p, q) = (phi.dim(), phi.p(), phi.q());
    assert!(d <= 4 && p + q <= 5, "symmetrizer expansion is cost guarded");
    assert!(valid_summands(p, q, d).contains(&m), "invalid summand");
    let mut t = expand(phi);
    t = antisymmetrize(&t, 0, p + m);
    for a in 0..(q - m) {
        t = symmetrize_pair(&t, a, p + m + a);
    }
    t = antisymmetrize(&t, 0, p + m);
    t = antisymmetrize(&t, p, q);
    let constant = factorial(p) * young_projection_constant(p, q, m);
    read_back(&t, d, p, q).scale(&S::ratio(1, constant as i64))
}

/// The constant by which the symmetrizer composition scales the summand:
/// the hook product of the summand diagram times m!(p−q+2m)!/(p−q+m)!, the
/// accumulated s*s eigenvalues.
pub fn young_projection_constant(p: usize, q: usize, m: usize) -> i128 {
    let hooks = diagram_summand(p, q, m).hook_product();
    let lo = p + m - q; // p-q+m, nonnegative for admissible m
    let climb: i128 = ((lo + 1)..=(lo + m)).map(|v| v as i128).product();
    hooks * factorial(m) * climb
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::double::{basis_pairs, include_ipq, summand_dim};
    use crate::exterior::Multicovector;
    use crate::fe::{dim_full, dim_trace_free, table_rows};
    use crate::poly::{Coords, Monomial, PolyDoubleForm};
    use crate::Rational;

    type D = DoubleCovector<Rational>;

    #[test]
    fn diagram_basics() {
        let d = YoungDiagram::from_rows(vec![3, 2]);
        assert_eq!(d.columns(), &[2, 2, 1]);
        assert_eq!(d.rows(), vec![3, 2]);
        assert_eq!(d.boxes(), 5);
        assert_eq!(d.height(), 2);
        // hooks of (3,2): 4,3,1 / 2,1
        assert_eq!(d.hook_product(), 24);
        assert_eq!(YoungDiagram::from_columns(vec![2, 0]).columns(), &[2]);
    }

    #[test]
    #[should_panic(expected = "weakly decreasing")]
    fn diagram_rejects_increasing_columns() {
        YoungDiagram::from_columns(vec![1, 2]);
    }

    #[test]
    fn summand_diagrams() {
        assert_eq!(diagram_summand(1, 1, 0).columns(), &[1, 1]);
        assert_eq!(diagram_summand(2, 2, 0).columns(), &[2, 2]);
        assert_eq!(diagram_summand(2, 2, 1).columns(), &[3, 1]);
    }

    #[test]
    fn trace_free_diagrams() {
        assert_eq!(diagram_trace_free(1, 1, 0, 1).rows(), vec![2]);
        assert_eq!(diagram_trace_free(2, 1, 0, 2).rows(), vec![2, 1]);
        let d = diagram_trace_free(2, 2, 0, 3);
        assert_eq!(d.columns(), &[2, 2]);
        assert_eq!(hook_dim_sym(&d), 2);
    }

    #[test]
    fn gl_dimensions() {
        assert_eq!(hook_dim_gl(&YoungDiagram::from_columns(vec![1, 1]), 3), 6);
        assert_eq!(hook_dim_gl(&YoungDiagram::from_columns(vec![2, 2]), 3), 6);
        assert_eq!(hook_dim_gl(&YoungDiagram::from_columns(vec![2, 2]), 4), 20);
        // taller than the space: zero
        assert_eq!(hook_dim_gl(&YoungDiagram::from_columns(vec![3]), 2), 0);
    }

    #[test]
    fn sym_dimensions() {
        assert_eq!(hook_dim_sym(&YoungDiagram::from_rows(vec![2, 1])), 2);
        assert_eq!(hook_dim_sym(&YoungDiagram::from_rows(vec![2])), 1);
        assert_eq!(hook_dim_sym(&YoungDiagram::from_rows(vec![2, 2])), 2);
    }

    #[test]
    fn gl_hook_count_matches_eigenspace_dimension() {
        for p in 0..=4usize {
            for q in 0..=4usize {
                for d in 0..=6usize {
                    for m in valid_summands(p, q, d) {
                        let diag = diagram_summand(p, q, m);
                        assert_eq!(
                            hook_dim_gl(&diag, d),
                            summand_dim(p, q, m, d) as i128,
                            "({p},{q},{m},{d})"
                        );
                        // and against the closed form used by the tables
                        assert_eq!(hook_dim_gl(&diag, d), dim_full(p, q, m, d));
                    }
                }
            }
        }
    }

    #[test]
    fn tableaux_count_matches_trace_free_dimension() {
        // all table rows, every listed simplex dimension
        for &(p, q, m) in &table_rows() {
            for n in 0..=6usize {
                if n + 1 < p + m + 1 || p + q < n + 1 {
                    continue;
                }
                let diag = diagram_trace_free(p, q, m, n);
                assert_eq!(
                    hook_dim_sym(&diag),
                    dim_trace_free(p, q, m, n),
                    "({p},{q},{m},{n})"
                );
            }
        }
    }

    #[test]
    fn image_diagram_hook_product_closed_form() {
        // hooks of (r+2, 2^{q-1}, 1^{p-q}) = (p+r+1)/(p-q+1) · (q+r)/q · p!q!r!
        for p in 1..=4usize {
            for q in 1..=p {
                for r in 0..=3usize {
                    let mut rows = vec![r + 2];
                    rows.extend(std::iter::repeat(2).take(q - 1));
                    rows.extend(std::iter::repeat(1).take(p - q));
                    let hooks = YoungDiagram::from_rows(rows).hook_product();
                    let expect_num = (p + r + 1) as i128
                        * (q + r) as i128
                        * factorial(p)
                        * factorial(q)
                        * factorial(r);
                    let expect_den = ((p - q + 1) * q) as i128;
                    assert_eq!(hooks * expect_den, expect_num, "({p},{q},{r})");
                }
            }
        }
    }

    #[test]
    fn kkdd_constants() {
        assert_eq!(kkdd_constant_via_hooks(1, 1, 0, 2), 6);
        assert_eq!(kkdd_constant_via_hooks(0, 0, 0, 2), 2);
        for p in 0..=3usize {
            for q in 0..=3usize {
                let lo = q.saturating_sub(p);
                for m in lo..=q {
                    if p + m < q - m {
                        continue;
                    }
                    for r in 2..=4u32 {
                        let expect =
                            (r as i128 + (p + m) as i128) * (r as i128 + q as i128 - m as i128 - 1);
                        assert_eq!(
                            kkdd_constant_via_hooks(p, q, m, r),
                            expect,
                            "({p},{q},{m},{r})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn kkdd_matches_operator_eigenvalue() {
        // build a kernel element of H_2 Λ^{1,1}_0 over 3 variables as
        // κ_Lκ_R of a constant (2,2)-form projected to its m = 0 part
        let mut seed = PolyDoubleForm::<Rational>::zero(3, 2, 2, Coords::Lambda);
        seed.add_term(
            Monomial::one(3),
            MultiIndex::from_usizes(&[0, 1]),
            MultiIndex::from_usizes(&[0, 1]),
            Rational::from_int(1),
        );
        let psi = seed.project_summand(0);
        let phi = psi.koszul_left().koszul_right();
        assert!(!phi.is_zero());
        assert!(phi.koszul_left().is_zero());
        assert!(phi.koszul_right().is_zero());
        let lhs = phi.d_left().d_right().koszul_left().koszul_right();
        let c = kkdd_constant_via_hooks(1, 1, 0, 2);
        assert_eq!(c, 6);
        assert_eq!(lhs, phi.scale(&Rational::from_int(c as i64)));
    }

    #[test]
    fn young_project_symmetric_example() {
        // dx^0 ⊗ dx^1: the symmetrizer yields dx^0⊗dx^1 + dx^1⊗dx^0, and
        // the constant for (1,1,0) is 2
        assert_eq!(factorial(1) * young_projection_constant(1, 1, 0), 2);
        let mut phi = D::zero(2, 1, 1);
        phi.add_term(
            MultiIndex::from_usizes(&[0]),
            MultiIndex::from_usizes(&[1]),
            Rational::from_int(1),
        );
        let projected = young_project(&phi, 0);
        let mut want = D::zero(2, 1, 1);
        want.add_term(
            MultiIndex::from_usizes(&[0]),
            MultiIndex::from_usizes(&[1]),
            Rational::ratio(1, 2),
        );
        want.add_term(
            MultiIndex::from_usizes(&[1]),
            MultiIndex::from_usizes(&[0]),
            Rational::ratio(1, 2),
        );
        assert_eq!(projected, want);
        assert_eq!(projected, phi.project_summand(0));
    }

    #[test]
    fn young_project_matches_projection_on_all_basis_forms() {
        for d in 1..=4usize {
            for p in 0..=3usize {
                for q in 0..=3usize {
                    if p + q > 4 || p > d || q > d {
                        continue;
                    }
                    for m in valid_summands(p, q, d) {
                        for (i, j) in basis_pairs(d, p, q) {
                            let phi = D::basis(d, i, j);
                            assert_eq!(
                                young_project(&phi, m),
                                phi.project_summand(m),
                                "({d},{p},{q},{m})"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn young_project_handles_five_index_case() {
        // one spot check at the cost-guard boundary p+q = 5
        let mut phi = D::zero(4, 3, 2);
        phi.add_term(
            MultiIndex::from_usizes(&[0, 1, 2]),
            MultiIndex::from_usizes(&[1, 3]),
            Rational::from_int(1),
        );
        for m in valid_summands(3, 2, 4) {
            assert_eq!(young_project(&phi, m), phi.project_summand(m), "m={m}");
        }
    }

    #[test]
    fn included_forms_are_fixed_by_top_projection() {
        for d in 1..=3usize {
            for k in 0..=d.min(3) {
                for p in 0..=k {
                    let q = k - p;
                    if q > d || !valid_summands(p, q, d).contains(&q) {
                        continue;
                    }
                    for idx in crate::multiindex::subsets(d, k) {
                        let omega = Multicovector::<Rational>::basis(d, idx);
                        let inc = include_ipq(&omega, p, q);
                        if inc.is_zero() {
                            continue;
                        }
                        assert_eq!(young_project(&inc, q), inc, "({d},{p},{q})");
                    }
                }
            }
        }
    }
}
