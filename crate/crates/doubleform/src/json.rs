//! JSON encoding of the exact types. Rationals travel as reduced "a/b"
//! strings (plain "a" for integers), index sets as strictly increasing
//! arrays, and term lists in the canonical map order of the core types, so
//! identical inputs serialize byte-identically.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::double::DoubleCovector;
use crate::extension::ExtensionResult;
use crate::fe::{GlobalBasisElement, SimplicialComplex};
use crate::multiindex::MultiIndex;
use crate::poly::{Coords, Monomial, PolyDoubleForm};
use crate::simplex::SimplexForm;
use crate::Rational;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("bad rational literal {0:?}")]
    BadCoeff(String),
    #[error("unknown coords tag {0:?}")]
    BadCoords(String),
    #[error("{0}")]
    Invalid(String),
}

fn coeff_string(c: &Rational) -> String {
    c.to_string()
}

fn coeff_parse(s: &str) -> Result<Rational, JsonError> {
    s.parse::<Rational>().map_err(|_| JsonError::BadCoeff(s.to_string()))
}

fn check_increasing(v: &[u8], what: &str) -> Result<(), JsonError> {
    if v.windows(2).all(|w| w[0] < w[1]) {
        Ok(())
    } else {
        Err(JsonError::Invalid(format!("{what} must be strictly increasing: {v:?}")))
    }
}

#[derive(Serialize, Deserialize)]
pub struct CovectorTermJson {
    #[serde(rename = "I")]
    pub i: Vec<u8>,
    #[serde(rename = "J")]
    pub j: Vec<u8>,
    pub coeff: String,
}

#[derive(Serialize, Deserialize)]
pub struct CovectorJson {
    pub dim: usize,
    pub p: usize,
    pub q: usize,
    pub terms: Vec<CovectorTermJson>,
}

pub fn covector_to_json(phi: &DoubleCovector<Rational>) -> CovectorJson {
    CovectorJson {
        dim: phi.dim(),
        p: phi.p(),
        q: phi.q(),
        terms: phi
            .terms()
            .map(|((i, j), c)| CovectorTermJson {
                i: i.indices().to_vec(),
                j: j.indices().to_vec(),
                coeff: coeff_string(c),
            })
            .collect(),
    }
}

pub fn covector_from_json(js: &CovectorJson) -> Result<DoubleCovector<Rational>, JsonError> {
    let mut out = DoubleCovector::zero(js.dim, js.p, js.q);
    for t in &js.terms {
        check_increasing(&t.i, "I")?;
        check_increasing(&t.j, "J")?;
        if t.i.len() != js.p || t.j.len() != js.q {
            return Err(JsonError::Invalid(format!(
                "index sets must have sizes ({}, {})",
                js.p, js.q
            )));
        }
        if t.i.iter().chain(&t.j).any(|&v| v as usize >= js.dim) {
            return Err(JsonError::Invalid("index out of range".into()));
        }
        out.add_term(
            MultiIndex::new(t.i.clone()),
            MultiIndex::new(t.j.clone()),
            coeff_parse(&t.coeff)?,
        );
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
pub struct PolyTermJson {
    pub monomial: Vec<u32>,
    #[serde(rename = "I")]
    pub i: Vec<u8>,
    #[serde(rename = "J")]
    pub j: Vec<u8>,
    pub coeff: String,
}

#[derive(Serialize, Deserialize)]
pub struct PolyFormJson {
    pub dim: usize,
    pub p: usize,
    pub q: usize,
    pub coords: String,
    pub terms: Vec<PolyTermJson>,
}

pub fn poly_to_json(phi: &PolyDoubleForm<Rational>) -> PolyFormJson {
    PolyFormJson {
        dim: phi.dim(),
        p: phi.p(),
        q: phi.q(),
        coords: phi.coords().as_str().to_string(),
        terms: phi
            .terms()
            .map(|((mono, i, j), c)| PolyTermJson {
                monomial: mono.exps().to_vec(),
                i: i.indices().to_vec(),
                j: j.indices().to_vec(),
                coeff: coeff_string(c),
            })
            .collect(),
    }
}

pub fn poly_from_json(js: &PolyFormJson) -> Result<PolyDoubleForm<Rational>, JsonError> {
    let coords =
        Coords::parse(&js.coords).ok_or_else(|| JsonError::BadCoords(js.coords.clone()))?;
    let mut out = PolyDoubleForm::zero(js.dim, js.p, js.q, coords);
    for t in &js.terms {
        check_increasing(&t.i, "I")?;
        check_increasing(&t.j, "J")?;
        if t.i.len() != js.p || t.j.len() != js.q {
            return Err(JsonError::Invalid(format!(
                "index sets must have sizes ({}, {})",
                js.p, js.q
            )));
        }
        if t.monomial.len() != js.dim {
            return Err(JsonError::Invalid(format!(
                "monomial needs one exponent per variable ({})",
                js.dim
            )));
        }
        if t.i.iter().chain(&t.j).any(|&v| v as usize >= js.dim) {
            return Err(JsonError::Invalid("index out of range".into()));
        }
        out.add_term(
            Monomial::new(t.monomial.clone()),
            MultiIndex::new(t.i.clone()),
            MultiIndex::new(t.j.clone()),
            coeff_parse(&t.coeff)?,
        );
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
pub struct SimplexFormJson {
    pub n: usize,
    pub vertices: Vec<usize>,
    #[serde(flatten)]
    pub form: PolyFormJson,
}

pub fn simplex_to_json(phi: &SimplexForm<Rational>) -> SimplexFormJson {
    SimplexFormJson {
        n: phi.n(),
        vertices: phi.vertices().to_vec(),
        form: poly_to_json(phi.form()),
    }
}

pub fn simplex_from_json(js: &SimplexFormJson) -> Result<SimplexForm<Rational>, JsonError> {
    let form = poly_from_json(&js.form)?;
    if form.coords() != Coords::Affine {
        return Err(JsonError::Invalid("simplex forms use the affine chart".into()));
    }
    if form.dim() != js.n {
        return Err(JsonError::Invalid(format!(
            "a form on T^{} needs {} coordinates, found {}",
            js.n,
            js.n,
            form.dim()
        )));
    }
    if js.vertices.len() != js.n + 1 {
        return Err(JsonError::Invalid(format!(
            "T^{} has {} vertices, found {}",
            js.n,
            js.n + 1,
            js.vertices.len()
        )));
    }
    if !js.vertices.windows(2).all(|w| w[0] < w[1]) {
        return Err(JsonError::Invalid("vertices must be strictly increasing".into()));
    }
    Ok(SimplexForm::new(js.n, js.vertices.clone(), form))
}

#[derive(Serialize, Deserialize)]
pub struct MeshJson {
    pub num_vertices: usize,
    pub cells: Vec<Vec<usize>>,
}

pub fn mesh_from_json(js: &MeshJson) -> Result<SimplicialComplex, JsonError> {
    if js.cells.is_empty() {
        return Err(JsonError::Invalid("a mesh needs at least one cell".into()));
    }
    let len = js.cells[0].len();
    for c in &js.cells {
        if c.len() != len {
            return Err(JsonError::Invalid("cells must share one dimension".into()));
        }
        if !c.windows(2).all(|w| w[0] < w[1]) {
            return Err(JsonError::Invalid("cell vertices must be strictly increasing".into()));
        }
        if c.iter().any(|&v| v >= js.num_vertices) {
            return Err(JsonError::Invalid("cell vertex out of range".into()));
        }
    }
    Ok(SimplicialComplex::new(js.num_vertices, js.cells.clone()))
}

pub fn mesh_to_json(t: &SimplicialComplex) -> MeshJson {
    MeshJson {
        num_vertices: t.num_vertices(),
        cells: t.cells().to_vec(),
    }
}

#[derive(Serialize, Deserialize)]
pub struct LocalFormJson {
    pub cell: usize,
    pub form: SimplexFormJson,
}

#[derive(Serialize, Deserialize)]
pub struct BasisElementJson {
    pub owner_face: Vec<usize>,
    pub p: usize,
    pub q: usize,
    pub m: usize,
    pub r: u32,
    pub local_index: usize,
    pub local: Vec<LocalFormJson>,
}

pub fn basis_element_to_json(e: &GlobalBasisElement<Rational>) -> BasisElementJson {
    BasisElementJson {
        owner_face: e.owner_face.clone(),
        p: e.p,
        q: e.q,
        m: e.m,
        r: e.r,
        local_index: e.local_index,
        local: e
            .local
            .iter()
            .map(|(&cell, form)| LocalFormJson {
                cell,
                form: simplex_to_json(form),
            })
            .collect(),
    }
}

#[derive(Serialize, Deserialize)]
pub struct ExtensionResultJson {
    pub form: PolyFormJson,
    pub constant_c: String,
}

pub fn extension_result_to_json(r: &ExtensionResult<Rational>) -> ExtensionResultJson {
    ExtensionResultJson {
        form: poly_to_json(&r.form),
        constant_c: coeff_string(&r.constant_c),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    #[test]
    fn rational_strings() {
        assert_eq!(coeff_string(&Rational::ratio(-1, 2)), "-1/2");
        assert_eq!(coeff_string(&Rational::from_int(3)), "3");
        assert_eq!(coeff_parse("-1/2").unwrap(), Rational::ratio(-1, 2));
        assert_eq!(coeff_parse("7").unwrap(), Rational::from_int(7));
        assert_eq!(coeff_parse("4/6").unwrap(), Rational::ratio(2, 3));
        assert!(coeff_parse("1/0").is_err());
        assert!(coeff_parse("x").is_err());
    }

    #[test]
    fn covector_roundtrip() {
        let mut phi = DoubleCovector::<Rational>::zero(3, 2, 1);
        phi.add_term(
            MultiIndex::from_usizes(&[0, 2]),
            MultiIndex::from_usizes(&[1]),
            Rational::ratio(5, 3),
        );
        let js = covector_to_json(&phi);
        let text = serde_json::to_string(&js).unwrap();
        let back: CovectorJson = serde_json::from_str(&text).unwrap();
        assert_eq!(covector_from_json(&back).unwrap(), phi);
    }

    #[test]
    fn covector_rejects_misshapen_input() {
        let text = r#"{"dim":2,"p":1,"q":1,"terms":[{"I":[1,0],"J":[0],"coeff":"1"}]}"#;
        let js: CovectorJson = serde_json::from_str(text).unwrap();
        assert!(covector_from_json(&js).is_err());
        let text = r#"{"dim":2,"p":1,"q":1,"terms":[{"I":[0],"J":[5],"coeff":"1"}]}"#;
        let js: CovectorJson = serde_json::from_str(text).unwrap();
        assert!(covector_from_json(&js).is_err());
    }

    #[test]
    fn poly_roundtrip_and_determinism() {
        let mut phi = PolyDoubleForm::<Rational>::zero(2, 1, 1, Coords::Lambda);
        phi.add_term(
            Monomial::new(vec![1, 0]),
            MultiIndex::from_usizes(&[0]),
            MultiIndex::from_usizes(&[1]),
            Rational::ratio(-1, 2),
        );
        phi.add_term(
            Monomial::new(vec![0, 0]),
            MultiIndex::from_usizes(&[1]),
            MultiIndex::from_usizes(&[0]),
            Rational::from_int(2),
        );
        let a = serde_json::to_string(&poly_to_json(&phi)).unwrap();
        let b = serde_json::to_string(&poly_to_json(&phi)).unwrap();
        assert_eq!(a, b);
        let back: PolyFormJson = serde_json::from_str(&a).unwrap();
        assert_eq!(poly_from_json(&back).unwrap(), phi);
    }

    #[test]
    fn unknown_coords_tag_is_rejected() {
        let text = r#"{"dim":1,"p":0,"q":0,"coords":"polar","terms":[]}"#;
        let js: PolyFormJson = serde_json::from_str(text).unwrap();
        assert!(matches!(poly_from_json(&js), Err(JsonError::BadCoords(_))));
    }

    #[test]
    fn simplex_form_roundtrip() {
        let mut f = PolyDoubleForm::<Rational>::zero(1, 1, 1, Coords::Affine);
        f.add_term(
            Monomial::new(vec![0]),
            MultiIndex::from_usizes(&[0]),
            MultiIndex::from_usizes(&[0]),
            Rational::from_int(1),
        );
        let phi = SimplexForm::new(1, vec![2, 7], f);
        let text = serde_json::to_string(&simplex_to_json(&phi)).unwrap();
        // the flattened payload keeps the PolyDoubleForm fields at top level
        assert!(text.contains("\"vertices\":[2,7]"));
        assert!(text.contains("\"coords\":\"affine\""));
        let back: SimplexFormJson = serde_json::from_str(&text).unwrap();
        assert_eq!(simplex_from_json(&back).unwrap(), phi);
    }

    #[test]
    fn mesh_roundtrip_and_validation() {
        let text = r#"{"num_vertices":4,"cells":[[0,1,2],[1,2,3]]}"#;
        let js: MeshJson = serde_json::from_str(text).unwrap();
        let mesh = mesh_from_json(&js).unwrap();
        assert_eq!(mesh.dimension(), 2);
        let text = r#"{"num_vertices":3,"cells":[[0,2,1]]}"#;
        let js: MeshJson = serde_json::from_str(text).unwrap();
        assert!(mesh_from_json(&js).is_err());
    }
}
