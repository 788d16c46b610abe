//! End-to-end runs through the public surface: the worked Regge example,
//! assembly on a two-cell mesh, and suite determinism.

use doubleform::check::{run_suite, Suite};
use doubleform::extension::extend;
use doubleform::fe::{check_single_valued, global_basis, SimplicialComplex};
use doubleform::json;
use doubleform::multiindex::MultiIndex;
use doubleform::poly::{Coords, Monomial, PolyDoubleForm};
use doubleform::simplex::SimplexForm;
use doubleform::{Rational, Scalar};

#[test]
fn regge_extension_roundtrips_through_json() {
    // dt⊗dt on the unit interval, constant coefficient 1
    let mut dt2 = PolyDoubleForm::<Rational>::zero(1, 1, 1, Coords::Affine);
    dt2.add_term(
        Monomial::one(1),
        MultiIndex::new(vec![0]),
        MultiIndex::new(vec![0]),
        Rational::from_int(1),
    );
    let phi = SimplexForm::standard(1, dt2);
    let ext = extend(&phi, 1, 1, 0, 0).expect("m = 0 < q so the extension exists");

    let mut expected = PolyDoubleForm::<Rational>::zero(2, 1, 1, Coords::Lambda);
    let half = Rational::ratio(-1, 2);
    expected.add_term(
        Monomial::one(2),
        MultiIndex::new(vec![0]),
        MultiIndex::new(vec![1]),
        half.clone(),
    );
    expected.add_term(
        Monomial::one(2),
        MultiIndex::new(vec![1]),
        MultiIndex::new(vec![0]),
        half,
    );
    assert_eq!(ext.form, expected);
    assert_eq!(ext.constant_c, Rational::from_int(2));

    let text = serde_json::to_string(&json::extension_result_to_json(&ext)).unwrap();
    let back: json::ExtensionResultJson = serde_json::from_str(&text).unwrap();
    assert_eq!(json::poly_from_json(&back.form).unwrap(), ext.form);
    assert_eq!(back.constant_c, "2");
}

#[test]
fn triangle_pair_regge_assembly_is_single_valued() {
    let mesh = SimplicialComplex::new(4, vec![vec![0, 1, 2], vec![1, 2, 3]]);
    let basis = global_basis::<Rational>(&mesh, 1, 1, 0, 0).unwrap();
    // one element per edge
    assert_eq!(basis.len(), 5);
    assert!(basis.iter().all(|e| e.owner_face.len() == 2));
    let report = check_single_valued(&basis, &mesh);
    assert!(report.is_ok(), "violations: {:?}", report.violations);
    assert!(report.pairs_checked > 0);
}

#[test]
fn suite_reports_replay_deterministically() {
    let a = run_suite(Suite::Algebra, 2, 1, 11);
    let b = run_suite(Suite::Algebra, 2, 1, 11);
    assert_eq!(a, b);
    assert!(a.passed(), "failures: {:?}", a.failures);
    assert!(a.cases > 0);
}
