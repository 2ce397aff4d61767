//! Algebra files: a JSON document giving a basis, a scalar regime, the
//! nonzero structure constants product by product, and optionally some
//! named one-parameter families of elements.
//!
//! Rational constants are serialized as strings (`"3"`, `"-1/2"`) and
//! parsed exactly; absent products are zero. Loading instantiates the
//! algebra in its declared regime and keeps the families as exact rational
//! data — they are verified lazily, by whoever wants to rely on them.

use std::path::Path;
use std::str::FromStr;

use num::{BigInt, BigRational, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::AlgebraError;
use crate::scalar::{PrimeField, Rationals};
use crate::sets::ParametricElement;

/// Scalar regime declaration: the string `"rational"` or an object
/// `{"prime_field": p}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarSpec {
    Prime { prime_field: u64 },
    Name(String),
}

/// One nonzero product `left · right = Σ coeff · basis`, coefficients as
/// exact rational strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub left: String,
    pub right: String,
    pub result: Vec<(String, String)>,
}

/// Domain of a named family: a full line or the `t ≥ 0` ray.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyDomain {
    Line,
    Ray,
}

/// A named one-parameter family `base + t · direction` shipped alongside an
/// algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyEntry {
    pub name: String,
    pub base: Vec<String>,
    pub direction: Vec<String>,
    pub domain: FamilyDomain,
}

/// The on-disk document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub dim: usize,
    pub scalar: ScalarSpec,
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub products: Vec<ProductEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub families: Vec<FamilyEntry>,
}

/// A family with its coordinates parsed.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedFamily {
    pub name: String,
    pub base: Vec<BigRational>,
    pub direction: Vec<BigRational>,
    pub domain: FamilyDomain,
}

impl NamedFamily {
    /// The family as a parametric element (the ray domain is a restriction
    /// the caller applies when sampling; the coordinates are the same).
    pub fn as_parametric(&self) -> ParametricElement {
        ParametricElement::line(&self.base, &self.direction)
    }
}

/// A parsed algebra file instantiated in its declared scalar regime.
#[derive(Debug, Clone)]
pub enum LoadedAlgebra {
    Rational {
        algebra: Algebra<Rationals>,
        families: Vec<NamedFamily>,
    },
    Prime {
        algebra: Algebra<PrimeField>,
        families: Vec<NamedFamily>,
    },
}

impl LoadedAlgebra {
    pub fn name(&self) -> &str {
        match self {
            LoadedAlgebra::Rational { algebra, .. } => algebra.name(),
            LoadedAlgebra::Prime { algebra, .. } => algebra.name(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            LoadedAlgebra::Rational { algebra, .. } => algebra.dim(),
            LoadedAlgebra::Prime { algebra, .. } => algebra.dim(),
        }
    }

    pub fn scalar_label(&self) -> String {
        match self {
            LoadedAlgebra::Rational { .. } => "rational".to_string(),
            LoadedAlgebra::Prime { algebra, .. } => {
                format!("GF({})", algebra.f().modulus())
            }
        }
    }

    pub fn families(&self) -> &[NamedFamily] {
        match self {
            LoadedAlgebra::Rational { families, .. } => families,
            LoadedAlgebra::Prime { families, .. } => families,
        }
    }
}

/// Parses an exact rational string (`"3"`, `"-1/2"`); zero denominators are
/// rejected rather than left to panic downstream.
pub fn parse_rational(s: &str) -> Result<BigRational, AlgebraError> {
    let bad = |detail: String| AlgebraError::Parse {
        line: 0,
        col: 0,
        msg: format!("bad rational {s:?}: {detail}"),
    };
    let trimmed = s.trim();
    let (numer_text, denom_text) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (trimmed, None),
    };
    let numer = BigInt::from_str(numer_text).map_err(|e| bad(e.to_string()))?;
    match denom_text {
        None => Ok(BigRational::from_integer(numer)),
        Some(d) => {
            let denom = BigInt::from_str(d).map_err(|e| bad(e.to_string()))?;
            if denom.is_zero() {
                return Err(bad("zero denominator".to_string()));
            }
            Ok(BigRational::new(numer, denom))
        }
    }
}

fn semantic(msg: String) -> AlgebraError {
    AlgebraError::Parse { line: 0, col: 0, msg }
}

fn label_index(basis: &[String], label: &str) -> Result<usize, AlgebraError> {
    basis
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| semantic(format!("product references unknown label {label:?}")))
}

fn parsed_table(file: &AlgebraFile) -> Result<Vec<(usize, usize, usize, BigRational)>, AlgebraError> {
    if file.basis.len() != file.dim {
        return Err(AlgebraError::DimensionMismatch(format!(
            "dim says {} but {} basis labels are given",
            file.dim,
            file.basis.len()
        )));
    }
    let mut table = Vec::new();
    for entry in &file.products {
        let i = label_index(&file.basis, &entry.left)?;
        let j = label_index(&file.basis, &entry.right)?;
        for (label, value) in &entry.result {
            let k = label_index(&file.basis, label)?;
            table.push((i, j, k, parse_rational(value)?));
        }
    }
    Ok(table)
}

fn parsed_families(file: &AlgebraFile) -> Result<Vec<NamedFamily>, AlgebraError> {
    let mut out = Vec::new();
    for fam in &file.families {
        if fam.base.len() != file.dim || fam.direction.len() != file.dim {
            return Err(AlgebraError::DimensionMismatch(format!(
                "family {:?} must give {} coordinates for base and direction",
                fam.name, file.dim
            )));
        }
        let parse_all = |v: &[String]| -> Result<Vec<BigRational>, AlgebraError> {
            v.iter().map(|s| parse_rational(s)).collect()
        };
        out.push(NamedFamily {
            name: fam.name.clone(),
            base: parse_all(&fam.base)?,
            direction: parse_all(&fam.direction)?,
            domain: fam.domain,
        });
    }
    Ok(out)
}

/// Instantiates a parsed document in its declared scalar regime.
pub fn instantiate(file: &AlgebraFile) -> Result<LoadedAlgebra, AlgebraError> {
    let table = parsed_table(file)?;
    let families = parsed_families(file)?;
    match &file.scalar {
        ScalarSpec::Name(name) if name == "rational" => {
            let algebra = Algebra::from_table(
                Rationals,
                file.name.clone(),
                file.basis.clone(),
                &table,
            )?;
            Ok(LoadedAlgebra::Rational { algebra, families })
        }
        ScalarSpec::Name(other) => Err(AlgebraError::BadScalar(format!(
            "unknown scalar regime {other:?} (expected \"rational\" or {{\"prime_field\": p}})"
        ))),
        ScalarSpec::Prime { prime_field } => {
            let f = PrimeField::new(*prime_field)?;
            let reduced: Vec<(usize, usize, usize, u64)> = table
                .iter()
                .map(|(i, j, k, c)| Ok((*i, *j, *k, f.reduce_rational(c)?)))
                .collect::<Result<_, AlgebraError>>()?;
            let algebra =
                Algebra::from_table(f, file.name.clone(), file.basis.clone(), &reduced)?;
            Ok(LoadedAlgebra::Prime { algebra, families })
        }
    }
}

/// Parses JSON text to the document structure without instantiating it.
/// Syntax and shape errors carry the line and column straight from the
/// JSON parser.
pub fn parse_algebra_doc(text: &str) -> Result<AlgebraFile, AlgebraError> {
    serde_json::from_str(text).map_err(|e| AlgebraError::Parse {
        line: e.line(),
        col: e.column(),
        msg: e.to_string(),
    })
}

/// Parses the JSON text of an algebra file. Syntax and shape errors carry
/// the line and column straight from the JSON parser; semantic errors
/// (unknown labels, bad rationals) report position 0:0 with a message.
pub fn parse_algebra_str(text: &str) -> Result<LoadedAlgebra, AlgebraError> {
    instantiate(&parse_algebra_doc(text)?)
}

/// Reads and parses an algebra file from disk.
pub fn parse_algebra_file(path: &Path) -> Result<LoadedAlgebra, AlgebraError> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        AlgebraError::Invalid(format!("cannot read {}: {e}", path.display()))
    })?;
    parse_algebra_str(&text)
}

fn rational_products(alg: &Algebra<Rationals>) -> Vec<ProductEntry> {
    let mut products = Vec::new();
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let prod = alg.mul_el(&alg.basis_el(i), &alg.basis_el(j));
            let result: Vec<(String, String)> = prod
                .iter()
                .enumerate()
                .filter(|(_, c)| !num::Zero::is_zero(*c))
                .map(|(k, c)| (alg.labels()[k].clone(), c.to_string()))
                .collect();
            if !result.is_empty() {
                products.push(ProductEntry {
                    left: alg.labels()[i].clone(),
                    right: alg.labels()[j].clone(),
                    result,
                });
            }
        }
    }
    products
}

fn prime_products(alg: &Algebra<PrimeField>) -> Vec<ProductEntry> {
    let mut products = Vec::new();
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let prod = alg.mul_el(&alg.basis_el(i), &alg.basis_el(j));
            let result: Vec<(String, String)> = prod
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(k, c)| (alg.labels()[k].clone(), c.to_string()))
                .collect();
            if !result.is_empty() {
                products.push(ProductEntry {
                    left: alg.labels()[i].clone(),
                    right: alg.labels()[j].clone(),
                    result,
                });
            }
        }
    }
    products
}

fn family_entries(families: &[NamedFamily]) -> Vec<FamilyEntry> {
    families
        .iter()
        .map(|f| FamilyEntry {
            name: f.name.clone(),
            base: f.base.iter().map(|c| c.to_string()).collect(),
            direction: f.direction.iter().map(|c| c.to_string()).collect(),
            domain: f.domain,
        })
        .collect()
}

/// The on-disk document for a rational algebra, with optional families.
pub fn algebra_file_from_rational(
    alg: &Algebra<Rationals>,
    families: &[NamedFamily],
) -> AlgebraFile {
    AlgebraFile {
        name: alg.name().to_string(),
        dim: alg.dim(),
        scalar: ScalarSpec::Name("rational".to_string()),
        basis: (0..alg.dim()).map(|i| alg.labels()[i].clone()).collect(),
        products: rational_products(alg),
        families: family_entries(families),
    }
}

/// The on-disk document for a prime-field algebra.
pub fn algebra_file_from_prime(alg: &Algebra<PrimeField>) -> AlgebraFile {
    AlgebraFile {
        name: alg.name().to_string(),
        dim: alg.dim(),
        scalar: ScalarSpec::Prime {
            prime_field: alg.f().modulus(),
        },
        basis: (0..alg.dim()).map(|i| alg.labels()[i].clone()).collect(),
        products: prime_products(alg),
        families: Vec::new(),
    }
}

/// Pretty-printed JSON for an algebra document, newline-terminated.
pub fn render_algebra_file(file: &AlgebraFile) -> String {
    let mut text = serde_json::to_string_pretty(file).expect("document serializes");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BuiltinSpec;
    use crate::endo::{is_in_left_set, verify_parametric_family};
    use crate::sets::SetKind;

    fn build_q(spec: &str) -> Algebra<Rationals> {
        BuiltinSpec::parse(spec).unwrap().build(Rationals).unwrap()
    }

    #[test]
    fn round_trips_the_worked_example_exactly() {
        let lt2 = build_q("lower_triangular(2)");
        let families = vec![NamedFamily {
            name: "left-members".into(),
            base: vec![
                BigRational::from_integer(1.into()),
                BigRational::from_integer(0.into()),
                BigRational::from_integer(0.into()),
            ],
            direction: vec![
                BigRational::from_integer(0.into()),
                BigRational::from_integer(1.into()),
                BigRational::from_integer(0.into()),
            ],
            domain: FamilyDomain::Line,
        }];
        let file = algebra_file_from_rational(&lt2, &families);
        let text = render_algebra_file(&file);
        let loaded = parse_algebra_str(&text).unwrap();
        let LoadedAlgebra::Rational { algebra, families: fams } = loaded else {
            panic!("regime must round-trip");
        };
        assert_eq!(algebra.name(), lt2.name());
        assert_eq!(algebra.dim(), lt2.dim());
        for i in 0..lt2.dim() {
            assert_eq!(&algebra.labels()[i], &lt2.labels()[i]);
            for j in 0..lt2.dim() {
                assert_eq!(
                    algebra.mul_el(&algebra.basis_el(i), &algebra.basis_el(j)),
                    lt2.mul_el(&lt2.basis_el(i), &lt2.basis_el(j)),
                );
            }
        }
        assert_eq!(fams, families);
        // The shipped family really lies in the left set.
        assert!(verify_parametric_family(
            &algebra,
            &fams[0].as_parametric(),
            SetKind::L
        ));

        // The document itself round-trips structurally.
        let file_again: AlgebraFile = serde_json::from_str(&text).unwrap();
        assert_eq!(file_again, file);
    }

    #[test]
    fn prime_field_documents_round_trip() {
        let zp2 = BuiltinSpec::parse("zero_product(2)")
            .unwrap()
            .build(PrimeField::new(3).unwrap())
            .unwrap();
        let text = render_algebra_file(&algebra_file_from_prime(&zp2));
        let loaded = parse_algebra_str(&text).unwrap();
        assert_eq!(loaded.scalar_label(), "GF(3)");
        assert_eq!(loaded.dim(), 2);
        let LoadedAlgebra::Prime { algebra, .. } = loaded else {
            panic!("regime must round-trip");
        };
        assert!(is_in_left_set(&algebra, &[1, 2]));
    }

    #[test]
    fn negative_and_fractional_constants_parse_exactly() {
        let text = r#"{
            "name": "halves",
            "dim": 2,
            "scalar": "rational",
            "basis": ["u", "v"],
            "products": [
                {"left": "u", "right": "u", "result": [["u", "-1/2"], ["v", "3"]]}
            ]
        }"#;
        let LoadedAlgebra::Rational { algebra, .. } = parse_algebra_str(text).unwrap() else {
            panic!("rational regime");
        };
        let prod = algebra.mul_el(&algebra.basis_el(0), &algebra.basis_el(0));
        assert_eq!(prod[0], BigRational::new((-1).into(), 2.into()));
        assert_eq!(prod[1], BigRational::from_integer(3.into()));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_algebra_str("{\n  \"name\": \"x\",\n  oops\n}").unwrap_err();
        let AlgebraError::Parse { line, col, .. } = err else {
            panic!("want a parse error, got {err:?}");
        };
        assert_eq!(line, 3);
        assert!(col > 0);
    }

    #[test]
    fn semantic_errors_are_parse_errors_with_messages() {
        let unknown_label = r#"{
            "name": "x", "dim": 1, "scalar": "rational", "basis": ["e"],
            "products": [{"left": "e", "right": "f", "result": [["e", "1"]]}]
        }"#;
        let err = parse_algebra_str(unknown_label).unwrap_err();
        assert!(
            matches!(&err, AlgebraError::Parse { msg, .. } if msg.contains("unknown label \"f\"")),
            "{err:?}"
        );

        let bad_rational = r#"{
            "name": "x", "dim": 1, "scalar": "rational", "basis": ["e"],
            "products": [{"left": "e", "right": "e", "result": [["e", "1/0"]]}]
        }"#;
        assert!(matches!(
            parse_algebra_str(bad_rational).unwrap_err(),
            AlgebraError::Parse { .. }
        ));

        let bad_scalar = r#"{"name": "x", "dim": 1, "scalar": "real", "basis": ["e"]}"#;
        assert!(matches!(
            parse_algebra_str(bad_scalar).unwrap_err(),
            AlgebraError::BadScalar(_)
        ));

        let non_prime = r#"{"name": "x", "dim": 1, "scalar": {"prime_field": 6}, "basis": ["e"]}"#;
        assert!(matches!(
            parse_algebra_str(non_prime).unwrap_err(),
            AlgebraError::BadScalar(_)
        ));

        let wrong_dim = r#"{"name": "x", "dim": 2, "scalar": "rational", "basis": ["e"]}"#;
        assert!(matches!(
            parse_algebra_str(wrong_dim).unwrap_err(),
            AlgebraError::DimensionMismatch(_)
        ));
    }

    #[test]
    fn non_associative_tables_name_the_triple() {
        let text = r#"{
            "name": "broken",
            "dim": 2,
            "scalar": "rational",
            "basis": ["a", "b"],
            "products": [
                {"left": "a", "right": "a", "result": [["b", "1"]]},
                {"left": "b", "right": "a", "result": [["a", "1"]]}
            ]
        }"#;
        let err = parse_algebra_str(text).unwrap_err();
        assert!(matches!(err, AlgebraError::NonAssociative { .. }), "{err:?}");
    }

    #[test]
    fn denominators_must_be_invertible_mod_p() {
        let text = r#"{
            "name": "halves-mod-2",
            "dim": 1,
            "scalar": {"prime_field": 2},
            "basis": ["e"],
            "products": [{"left": "e", "right": "e", "result": [["e", "1/2"]]}]
        }"#;
        let err = parse_algebra_str(text).unwrap_err();
        assert!(matches!(err, AlgebraError::BadScalar(_)), "{err:?}");
    }
}
