//! JSON certificate interchange format.
//!
//! A certificate document carries a form (by name or as an inline
//! literal), the ambient space, and the pseudo-moments in one of two
//! encodings: `orbit` (named rational parameters, group-invariant
//! certificates only) or `dense` (every nonzero coordinate exactly
//! once). All numbers are strings in the exact `p/q` syntax — never
//! floats — so documents round-trip bit-exactly. `sqrt2` values are
//! accepted only where decomposition endpoints are expected.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use momentcert::exactnum::QuadExt;
use momentcert::forms::{named_form, parse_form_literal, Form, FormId, FormSpace, MultiIndex};
use momentcert::moments::PseudoMomentVector;
use momentcert::symmetry::{orbit_embed, param_names, OrbitParams};
use momentcert::Rational;
use serde::{Deserialize, Serialize};

#[derive(Debug)]
pub enum DocumentError {
    Json(String),
    BadForm(String),
    BadEncoding(String),
    BadValue { field: String, detail: String },
}

impl fmt::Display for DocumentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DocumentError::Json(e) => write!(f, "malformed JSON: {e}"),
            DocumentError::BadForm(e) => write!(f, "bad form: {e}"),
            DocumentError::BadEncoding(e) => write!(f, "bad encoding: {e}"),
            DocumentError::BadValue { field, detail } => write!(f, "bad value in {field}: {detail}"),
        }
    }
}

impl std::error::Error for DocumentError {}

fn bad_value(field: impl Into<String>, detail: impl fmt::Display) -> DocumentError {
    DocumentError::BadValue {
        field: field.into(),
        detail: detail.to_string(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Encoding {
    Orbit,
    Dense,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MomentEntry {
    pub exponent: Vec<u32>,
    pub value: String,
}

/// The on-disk certificate object.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateDocument {
    /// Form name (`motzkin`, `robinson`, `reznick8`, `choilam`) or an
    /// inline literal such as `x1^6 + -2*x1^3*x2^3 + x2^6`.
    pub form: String,
    pub n: usize,
    pub degree: usize,
    pub encoding: Encoding,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moments: Option<Vec<MomentEntry>>,
    /// Free-form provenance, e.g. the generating algorithm and seeds.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<BTreeMap<String, String>>,
}

/// A document resolved against the core types.
pub struct ResolvedCertificate {
    pub form: Form,
    pub form_id: Option<FormId>,
    pub vector: PseudoMomentVector<Rational>,
}

impl CertificateDocument {
    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| DocumentError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("document serializes");
        out.push('\n');
        out
    }

    /// Build an orbit-encoded document for a named form.
    pub fn from_orbit_params(
        params: &OrbitParams<Rational>,
        metadata: BTreeMap<String, String>,
    ) -> Self {
        let form = params.form();
        let space = form.space();
        let orbit = param_names(form)
            .iter()
            .zip(params.values())
            .map(|(name, v)| (name.to_string(), v.to_string()))
            .collect();
        CertificateDocument {
            form: form.name().to_string(),
            n: space.n,
            degree: space.degree,
            encoding: Encoding::Orbit,
            orbit: Some(orbit),
            moments: None,
            metadata: (!metadata.is_empty()).then_some(metadata),
        }
    }

    /// Build a dense document listing every nonzero coordinate.
    pub fn from_vector(
        form_name: &str,
        y: &PseudoMomentVector<Rational>,
        metadata: BTreeMap<String, String>,
    ) -> Self {
        let space = y.space();
        let moments = space
            .basis()
            .iter()
            .zip(y.values())
            .filter(|(_, v)| !v.is_zero())
            .map(|(alpha, v)| MomentEntry {
                exponent: alpha.0.clone(),
                value: v.to_string(),
            })
            .collect();
        CertificateDocument {
            form: form_name.to_string(),
            n: space.n,
            degree: space.degree,
            encoding: Encoding::Dense,
            orbit: None,
            moments: Some(moments),
            metadata: (!metadata.is_empty()).then_some(metadata),
        }
    }

    fn resolve_form(&self) -> Result<(Form, Option<FormId>), DocumentError> {
        let space = FormSpace::new(self.n, self.degree);
        if let Ok(id) = FormId::from_str(&self.form) {
            if id.space() != space {
                return Err(DocumentError::BadForm(format!(
                    "{} lives in {} variables, degree {}, but the document declares n = {}, degree = {}",
                    self.form,
                    id.space().n,
                    id.space().degree,
                    self.n,
                    self.degree
                )));
            }
            return Ok((named_form(id), Some(id)));
        }
        let form = parse_form_literal(&self.form, space)
            .map_err(|e| DocumentError::BadForm(e.to_string()))?;
        Ok((form, None))
    }

    /// Resolve into core types, validating every invariant of the
    /// encoding along the way.
    pub fn resolve(&self) -> Result<ResolvedCertificate, DocumentError> {
        let (form, form_id) = self.resolve_form()?;
        let space = form.space();
        let vector = match self.encoding {
            Encoding::Orbit => {
                let id = form_id.ok_or_else(|| {
                    DocumentError::BadEncoding(
                        "orbit encoding requires a named form".to_string(),
                    )
                })?;
                let params = self.parse_orbit_values::<Rational>(id)?;
                orbit_embed(&params)
            }
            Encoding::Dense => {
                let entries = self.moments.as_ref().ok_or_else(|| {
                    DocumentError::BadEncoding("dense encoding requires \"moments\"".to_string())
                })?;
                let index = space.index_map();
                let mut values = vec![Rational::zero(); space.dimension()];
                let mut seen = vec![false; space.dimension()];
                for entry in entries {
                    let field = format!("moments[{:?}]", entry.exponent);
                    if entry.exponent.len() != space.n
                        || entry.exponent.iter().sum::<u32>() as usize != space.degree
                    {
                        return Err(bad_value(
                            &field,
                            format!(
                                "exponent must have {} entries summing to {}",
                                space.n, space.degree
                            ),
                        ));
                    }
                    let pos = index[&MultiIndex(entry.exponent.clone())];
                    if seen[pos] {
                        return Err(bad_value(&field, "coordinate listed more than once"));
                    }
                    seen[pos] = true;
                    let value: Rational = entry
                        .value
                        .parse()
                        .map_err(|e| bad_value(&field, e))?;
                    if value.is_zero() {
                        return Err(bad_value(&field, "dense encoding lists nonzero values only"));
                    }
                    values[pos] = value;
                }
                PseudoMomentVector::new(space, values)
                    .map_err(|e| DocumentError::BadEncoding(e.to_string()))?
            }
        };
        Ok(ResolvedCertificate {
            form,
            form_id,
            vector,
        })
    }

    /// Resolve a decomposition endpoint: orbit-encoded named form whose
    /// values may live in `Q(sqrt 2)`.
    pub fn resolve_endpoint(&self) -> Result<OrbitParams<QuadExt>, DocumentError> {
        let (_, form_id) = self.resolve_form()?;
        let id = form_id.ok_or_else(|| {
            DocumentError::BadEncoding("endpoints must use a named form".to_string())
        })?;
        if self.encoding != Encoding::Orbit {
            return Err(DocumentError::BadEncoding(
                "endpoints use the orbit encoding".to_string(),
            ));
        }
        self.parse_orbit_values::<QuadExt>(id)
    }

    fn parse_orbit_values<T: momentcert::Scalar + FromStr>(
        &self,
        id: FormId,
    ) -> Result<OrbitParams<T>, DocumentError>
    where
        T::Err: fmt::Display,
    {
        let orbit = self.orbit.as_ref().ok_or_else(|| {
            DocumentError::BadEncoding("orbit encoding requires \"orbit\"".to_string())
        })?;
        let names = param_names(id);
        for key in orbit.keys() {
            if !names.contains(&key.as_str()) {
                return Err(bad_value(
                    format!("orbit.{key}"),
                    format!("{} takes parameters {:?}", id.name(), names),
                ));
            }
        }
        let mut values = Vec::with_capacity(names.len());
        for name in names {
            let text = orbit.get(*name).ok_or_else(|| {
                bad_value(format!("orbit.{name}"), "missing parameter")
            })?;
            values.push(
                text.parse::<T>()
                    .map_err(|e| bad_value(format!("orbit.{name}"), e))?,
            );
        }
        OrbitParams::new(id, values).map_err(|e| DocumentError::BadEncoding(e.to_string()))
    }
}
