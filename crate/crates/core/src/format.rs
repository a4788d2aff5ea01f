//! Output formats for generator sets: plain text, JSON and a Magma script.

use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::{Field, FieldElement};
use crate::canonical::{CanonicalCase, CanonicalGenerators};
use crate::error::{Error, Result};
use crate::lattice::LatticePoint;
use crate::toric::{MonomialForm, ToricGenerators};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    /// Integer or `a/b`.
    pub coeff: String,
    pub points: Vec<[i64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormJson {
    pub degree: usize,
    pub terms: Vec<TermJson>,
}

impl FormJson {
    pub fn from_form(form: &MonomialForm) -> Self {
        FormJson {
            degree: form.degree(),
            terms: form
                .terms()
                .map(|(m, c)| TermJson {
                    coeff: c.to_string(),
                    points: m.iter().map(|p| [p.x, p.y]).collect(),
                })
                .collect(),
        }
    }

    pub fn to_form(&self, field: Field, ambient: Arc<[LatticePoint]>) -> Result<MonomialForm> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let m = t.points.iter().map(|&[x, y]| LatticePoint::new(x, y)).collect();
                Ok((m, parse_coefficient(&t.coeff, field)?))
            })
            .collect::<Result<Vec<_>>>()?;
        MonomialForm::from_terms(field, self.degree, ambient, terms)
    }
}

fn parse_coefficient(s: &str, field: Field) -> Result<FieldElement> {
    let bad = || Error::parse(1, format!("bad coefficient '{s}'"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.trim().parse().map_err(|_| bad())?;
    let den: BigInt = den.trim().parse().map_err(|_| bad())?;
    FieldElement::from_ratio(field, &num, &den)
}

/// A generator file as emitted by `toric-ideal` or `canonical-ideal`.
///
/// Only `field`, `ambient` and `generators` are needed to read one back.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorFile {
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polygon: Option<Vec<[i64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<CanonicalCase>,
    pub quadric_count: usize,
    pub cubic_count: usize,
    #[serde(default)]
    pub quartic_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi_identity_checked: Option<bool>,
    pub ambient: Vec<[i64; 2]>,
    pub generators: Vec<FormJson>,
}

fn pairs(points: &[LatticePoint]) -> Vec<[i64; 2]> {
    points.iter().map(|p| [p.x, p.y]).collect()
}

impl GeneratorFile {
    pub fn from_toric(gens: &ToricGenerators, field: Field) -> Self {
        GeneratorFile {
            field: field.to_string(),
            f: None,
            polygon: Some(pairs(gens.polygon.vertices())),
            genus: None,
            case: None,
            quadric_count: gens.quadrics.len(),
            cubic_count: gens.cubics.len(),
            quartic_count: 0,
            chi_identity_checked: None,
            ambient: pairs(&gens.ambient()),
            generators: gens.all().map(FormJson::from_form).collect(),
        }
    }

    pub fn from_canonical(gens: &CanonicalGenerators) -> Self {
        GeneratorFile {
            field: gens.context.field().to_string(),
            f: Some(gens.context.f.to_string()),
            polygon: Some(pairs(gens.context.delta.vertices())),
            genus: Some(gens.genus()),
            case: Some(gens.case()),
            quadric_count: gens.counts.quadrics,
            cubic_count: gens.counts.cubics,
            quartic_count: gens.counts.quartics,
            chi_identity_checked: Some(gens.chi_identity_checked),
            ambient: pairs(&gens.context.ambient()),
            generators: gens.all().iter().map(FormJson::from_form).collect(),
        }
    }

    pub fn parse(src: &str) -> Result<Self> {
        serde_json::from_str(src).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("generator files serialize")
    }

    pub fn field(&self) -> Result<Field> {
        self.field.parse()
    }

    pub fn ambient(&self) -> Arc<[LatticePoint]> {
        let mut pts: Vec<LatticePoint> = self.ambient.iter().map(|&[x, y]| LatticePoint::new(x, y)).collect();
        pts.sort();
        pts.dedup();
        pts.into()
    }

    pub fn forms(&self) -> Result<Vec<MonomialForm>> {
        let field = self.field()?;
        let ambient = self.ambient();
        self.generators.iter().map(|g| g.to_form(field, ambient.clone())).collect()
    }
}

/// One generator per line.
pub fn text_generators<'a>(forms: impl IntoIterator<Item = &'a MonomialForm>) -> String {
    let mut out = String::new();
    for form in forms {
        writeln!(out, "{form}").unwrap();
    }
    out
}

/// `X_i_j`, with `m` marking a negative coordinate.
pub fn cas_variable(p: LatticePoint) -> String {
    let enc = |v: i64| if v < 0 { format!("m{}", -v) } else { v.to_string() };
    format!("X_{}_{}", enc(p.x), enc(p.y))
}

fn cas_form(form: &MonomialForm) -> String {
    if form.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in form.terms().enumerate() {
        let neg = c.is_negative();
        let abs = if neg { -c } else { c.clone() };
        out.push_str(match (k, neg) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        });
        let mut factors = Vec::new();
        if !abs.is_one() {
            factors.push(abs.to_string());
        }
        let mut i = 0;
        while i < m.len() {
            let j = m[i..].iter().take_while(|&&q| q == m[i]).count();
            let var = cas_variable(m[i]);
            factors.push(if j == 1 { var } else { format!("{var}^{j}") });
            i += j;
        }
        out.push_str(&factors.join("*"));
    }
    out
}

/// A Magma script defining the polynomial ring on `ambient` and the ideal
/// generated by `forms`.
pub fn magma_script<'a>(
    field: Field,
    ambient: &[LatticePoint],
    forms: impl IntoIterator<Item = &'a MonomialForm>,
) -> String {
    let ring = match field {
        Field::Rationals => "Rationals()".to_string(),
        Field::Prime(p) => format!("GF({p})"),
    };
    let vars: Vec<String> = ambient.iter().map(|&p| cas_variable(p)).collect();
    let gens: Vec<String> = forms.into_iter().map(cas_form).collect();
    let mut out = String::new();
    writeln!(out, "K := {ring};").unwrap();
    writeln!(out, "P<{}> := PolynomialRing(K, {});", vars.join(", "), vars.len()).unwrap();
    writeln!(out, "I := ideal<P |").unwrap();
    for (k, g) in gens.iter().enumerate() {
        let sep = if k + 1 == gens.len() { "" } else { "," };
        writeln!(out, "  {g}{sep}").unwrap();
    }
    writeln!(out, ">;").unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::canonical_ideal;
    use crate::laurent::parse_laurent;
    use crate::lattice::convex_hull;
    use crate::toric::toric_ideal;

    fn p(x: i64, y: i64) -> LatticePoint {
        LatticePoint::new(x, y)
    }

    #[test]
    fn variable_names() {
        assert_eq!(cas_variable(p(-1, 1)), "X_m1_1");
        assert_eq!(cas_variable(p(3, -12)), "X_3_m12");
        assert_eq!(cas_variable(p(0, 0)), "X_0_0");
    }

    #[test]
    fn magma_for_segre_quadric() {
        let square = convex_hull(&[p(0, 0), p(1, 0), p(0, 1), p(1, 1)]);
        let gens = toric_ideal(&square, Field::Rationals).unwrap();
        let script = magma_script(Field::Rationals, &gens.ambient(), gens.all());
        assert!(script.starts_with("K := Rationals();\nP<X_0_0, X_0_1, X_1_0, X_1_1> := PolynomialRing(K, 4);"));
        assert!(script.contains("  X_0_0*X_1_1 - X_0_1*X_1_0\n>;"));
    }

    #[test]
    fn magma_powers_and_coefficients() {
        let f = parse_laurent("x^4 + y^4 + 1 + 3*x*y", Field::Prime(101)).unwrap();
        let gens = canonical_ideal(&f).unwrap();
        let script = magma_script(gens.context.field(), &gens.context.ambient(), gens.all().iter());
        assert!(script.starts_with("K := GF(101);"));
        assert!(script.contains("X_1_1^"));
    }

    #[test]
    fn json_round_trip() {
        let f = parse_laurent("x^5 + y^5 + 1 + 2/3*x^2*y + x*y^3 - 7*x*y", Field::Rationals).unwrap();
        let gens = canonical_ideal(&f).unwrap();
        let file = GeneratorFile::from_canonical(&gens);
        let back = GeneratorFile::parse(&file.to_json()).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.case, Some(CanonicalCase::TwoSigmaQuintic));
        assert_eq!(back.forms().unwrap(), gens.all());
        let json: serde_json::Value = serde_json::from_str(&file.to_json()).unwrap();
        assert_eq!(json["case"], "two_sigma_quintic");
        assert_eq!(json["chi_identity_checked"], true);
        assert_eq!(json["generators"][0]["terms"][0]["points"][0], serde_json::json!([1, 1]));
    }

    #[test]
    fn toric_json_round_trip() {
        let tri = convex_hull(&[p(0, 1), p(7, 0), p(2, 4)]);
        let gens = toric_ideal(&tri, Field::Prime(10007)).unwrap();
        let file = GeneratorFile::from_toric(&gens, Field::Prime(10007));
        assert_eq!((file.quadric_count, file.cubic_count), (55, 1));
        let back = GeneratorFile::parse(&file.to_json()).unwrap();
        assert_eq!(back.field().unwrap(), Field::Prime(10007));
        assert_eq!(back.forms().unwrap(), gens.all().cloned().collect::<Vec<_>>());
    }

    #[test]
    fn malformed_json_reports_position() {
        let err = GeneratorFile::parse("{\n  \"field\": 3,").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let file = GeneratorFile {
            field: "Q".into(),
            f: None,
            polygon: None,
            genus: None,
            case: None,
            quadric_count: 1,
            cubic_count: 0,
            quartic_count: 0,
            chi_identity_checked: None,
            ambient: vec![[0, 0]],
            generators: vec![FormJson {
                degree: 2,
                terms: vec![TermJson {
                    coeff: "1/0".into(),
                    points: vec![[0, 0], [0, 0]],
                }],
            }],
        };
        assert!(file.forms().is_err());
    }
}
