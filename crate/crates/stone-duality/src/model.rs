//! The model document: one TOML file describing a carrier, algebra
//! generators, and optional topology / measure / function-algebra sections.
//! Every CLI command and check suite consumes this single format.
//!
//! Set literals are `{0 1 2}` or `co {0 1}` (commas optional); point labels
//! are naturals or bare symbols; scalars are rationals (`-3/2`) or Gaussian
//! rationals (`1+2i`). The exact grammar is documented in the README.

use std::collections::BTreeMap;
use std::path::Path;

use num::{BigRational, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraModel;
use crate::carrier::{Carrier, PointLabel, SymbolicSet};
use crate::error::{Error, Result};
use crate::exact::{parse_rational, Scalar, ScalarField};
use crate::function::{FnElement, QuasiNorm};
use crate::gelfand::{AlgebraSpan, SeminormedFnAlgebra};
use crate::measure::Measure;
use crate::topology::TopSpace;

/// The raw document, as serialized.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub carrier: CarrierSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub topology: Option<TopologySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measure: Option<MeasureSection>,
    #[serde(default, rename = "function-algebra", skip_serializing_if = "Option::is_none")]
    pub function_algebra: Option<FnAlgebraSection>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CarrierSection {
    /// `finite`, `nat`, or `omega`.
    pub kind: String,
    /// Finite: all points. Naturals: extra symbolic points (say a sequence
    /// limit). Omega: the named witnesses.
    #[serde(default)]
    pub points: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSection {
    #[serde(default)]
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum TopologySection {
    Finite {
        #[serde(default)]
        opens: Vec<String>,
    },
    CofiniteNat,
    ConvergentSeq,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureSection {
    #[serde(default)]
    pub atoms: BTreeMap<String, String>,
    #[serde(default)]
    pub diffuse: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FnAlgebraSection {
    /// `generated`, `full`, or `finitely-supported`.
    pub span: String,
    #[serde(default)]
    pub field: Option<String>,
    #[serde(default)]
    pub unital: Option<bool>,
    pub norm: NormSection,
    #[serde(default)]
    pub generators: Vec<FnLiteral>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum NormSection {
    Sup,
    ScaledSup { factor: String },
    WeightedSup {
        default: String,
        #[serde(default)]
        weights: BTreeMap<String, String>,
    },
    LimSup,
    SupSquared,
}

/// A function element literal: exceptional values over a default.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FnLiteral {
    #[serde(default)]
    pub values: BTreeMap<String, String>,
    #[serde(default)]
    pub default: Option<String>,
}

impl ModelDocument {
    pub fn from_toml(text: &str) -> Result<ModelDocument> {
        toml::from_str(text).map_err(|e| Error::Document(e.to_string()))
    }

    pub fn from_path(path: &Path) -> Result<ModelDocument> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Document(format!("{}: {e}", path.display())))?;
        ModelDocument::from_toml(&text)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string_pretty(self).map_err(|e| Error::Document(e.to_string()))
    }

    /// Resolves the document into typed objects, validating every reference.
    pub fn resolve(&self) -> Result<ResolvedModel> {
        let carrier = self.build_carrier()?;
        let generators = match &self.algebra {
            Some(a) => a
                .generators
                .iter()
                .map(|s| parse_set(&carrier, s))
                .collect::<Result<Vec<_>>>()?,
            None => Vec::new(),
        };
        let sigma = AlgebraModel::for_carrier(&carrier, generators)?;

        let topology = match &self.topology {
            None => None,
            Some(TopologySection::Finite { opens }) => {
                let opens =
                    opens.iter().map(|s| parse_set(&carrier, s)).collect::<Result<Vec<_>>>()?;
                Some(TopSpace::finite(&carrier, opens)?)
            }
            Some(TopologySection::CofiniteNat) => Some(TopSpace::cofinite_nat(&carrier)?),
            Some(TopologySection::ConvergentSeq) => Some(TopSpace::convergent_seq(&carrier)?),
        };

        let measure = match &self.measure {
            None => None,
            Some(m) => {
                let atoms = m
                    .atoms
                    .iter()
                    .map(|(k, v)| Ok((parse_label(k)?, parse_rational(v)?)))
                    .collect::<Result<Vec<_>>>()?;
                let diffuse = match &m.diffuse {
                    Some(d) => parse_rational(d)?,
                    None => BigRational::zero(),
                };
                Some(Measure::new(&carrier, atoms, diffuse)?)
            }
        };

        let fn_algebra = match &self.function_algebra {
            None => None,
            Some(section) => Some(resolve_fn_algebra(&carrier, section)?),
        };

        Ok(ResolvedModel {
            name: self.name.clone().unwrap_or_else(|| "model".into()),
            seed: self.seed.unwrap_or(0),
            carrier,
            sigma,
            topology,
            measure,
            fn_algebra,
        })
    }

    fn build_carrier(&self) -> Result<Carrier> {
        let points: Vec<PointLabel> =
            self.carrier.points.iter().map(|s| parse_label(s)).collect::<Result<_>>()?;
        match self.carrier.kind.as_str() {
            "finite" => Carrier::finite(points),
            "nat" => {
                for p in &points {
                    if matches!(p, PointLabel::Nat(_)) {
                        return Err(Error::Document(
                            "naturals are implicit on a nat carrier; list only extra symbols"
                                .into(),
                        ));
                    }
                }
                // name the prefix up to the largest natural the document mentions
                let prefix = self.mentioned_naturals_max().map_or(0, |m| m + 1);
                Ok(Carrier::naturals(prefix, points))
            }
            "omega" => {
                if points.is_empty() {
                    return Err(Error::Document("an omega carrier needs named witnesses".into()));
                }
                Ok(Carrier::omega(points))
            }
            other => Err(Error::Document(format!(
                "unknown carrier kind `{other}` (expected finite | nat | omega)"
            ))),
        }
    }

    fn mentioned_naturals_max(&self) -> Option<u64> {
        let mut max: Option<u64> = None;
        let mut note = |n: u64| max = Some(max.map_or(n, |m| m.max(n)));
        let mut scan_tokens = |s: &str| {
            for token in s.split(|c: char| !c.is_alphanumeric() && c != '_') {
                if !token.is_empty() && token.chars().all(|c| c.is_ascii_digit()) {
                    if let Ok(n) = token.parse::<u64>() {
                        note(n);
                    }
                }
            }
        };
        if let Some(a) = &self.algebra {
            a.generators.iter().for_each(|s| scan_tokens(s));
        }
        if let Some(TopologySection::Finite { opens }) = &self.topology {
            opens.iter().for_each(|s| scan_tokens(s));
        }
        if let Some(m) = &self.measure {
            m.atoms.keys().for_each(|s| scan_tokens(s));
        }
        if let Some(f) = &self.function_algebra {
            if let NormSection::WeightedSup { weights, .. } = &f.norm {
                weights.keys().for_each(|s| scan_tokens(s));
            }
            for g in &f.generators {
                g.values.keys().for_each(|s| scan_tokens(s));
            }
        }
        max
    }
}

fn resolve_fn_algebra(carrier: &Carrier, section: &FnAlgebraSection) -> Result<SeminormedFnAlgebra> {
    let field = match section.field.as_deref() {
        None | Some("real") => ScalarField::Real,
        Some("complex") => ScalarField::Complex,
        Some(other) => {
            return Err(Error::Document(format!(
                "unknown scalar field `{other}` (expected real | complex)"
            )))
        }
    };
    let norm = match &section.norm {
        NormSection::Sup => QuasiNorm::SupNorm,
        NormSection::ScaledSup { factor } => QuasiNorm::ScaledSup(parse_rational(factor)?),
        NormSection::WeightedSup { default, weights } => {
            let weights = weights
                .iter()
                .map(|(k, v)| Ok((parse_label(k)?, parse_rational(v)?)))
                .collect::<Result<BTreeMap<_, _>>>()?;
            QuasiNorm::WeightedSup { weights, default_weight: parse_rational(default)? }
        }
        NormSection::LimSup => QuasiNorm::LimSup,
        NormSection::SupSquared => QuasiNorm::SupSquared,
    };
    let (span, default_unital) = match section.span.as_str() {
        "generated" => {
            let generators = section
                .generators
                .iter()
                .map(|lit| parse_fn_literal(carrier, lit))
                .collect::<Result<Vec<_>>>()?;
            (AlgebraSpan::Generated { generators }, false)
        }
        "full" => (AlgebraSpan::Full, true),
        "finitely-supported" => (AlgebraSpan::FinitelySupported, false),
        other => {
            return Err(Error::Document(format!(
                "unknown span `{other}` (expected generated | full | finitely-supported)"
            )))
        }
    };
    let unital = section.unital.unwrap_or(default_unital);
    SeminormedFnAlgebra::new(carrier, span, norm, field, unital)
}

fn parse_fn_literal(carrier: &Carrier, lit: &FnLiteral) -> Result<FnElement> {
    let values = lit
        .values
        .iter()
        .map(|(k, v)| Ok((parse_label(k)?, Scalar::parse(v)?)))
        .collect::<Result<Vec<_>>>()?;
    let default = match &lit.default {
        Some(d) => Scalar::parse(d)?,
        None => Scalar::zero(),
    };
    FnElement::new(carrier, values, default)
}

/// Parses a point label: a natural number or a bare symbol.
pub fn parse_label(token: &str) -> Result<PointLabel> {
    let token = token.trim();
    if token.is_empty() {
        return Err(Error::Document("empty point label".into()));
    }
    if token == "∞" || token.eq_ignore_ascii_case("free") {
        return Err(Error::Document(
            "`∞`/`free` is reserved for spectrum carriers and cannot be a model point".into(),
        ));
    }
    if token.chars().all(|c| c.is_ascii_digit()) {
        token
            .parse::<u64>()
            .map(PointLabel::Nat)
            .map_err(|_| Error::Document(format!("natural `{token}` out of range")))
    } else {
        Ok(PointLabel::sym(token))
    }
}

/// Parses a set literal: `{0 1}`, `{a, b}`, `co {2}`, `{}`, `co {}`.
pub fn parse_set(carrier: &Carrier, text: &str) -> Result<SymbolicSet> {
    let s = text.trim();
    let (co, body) = match s.strip_prefix("co") {
        Some(rest) => (true, rest.trim_start()),
        None => (false, s),
    };
    let inner = body
        .strip_prefix('{')
        .and_then(|b| b.strip_suffix('}'))
        .ok_or_else(|| Error::Document(format!("set literal `{text}` must be braced")))?;
    let labels = inner
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(parse_label)
        .collect::<Result<Vec<_>>>()?;
    if co {
        carrier.co_set(labels)
    } else {
        carrier.positive_set(labels)
    }
}

/// Renders a set in the document grammar (inverse of [`parse_set`]).
pub fn render_set(set: &SymbolicSet) -> String {
    let items: Vec<String> = set.base().map(|p| p.to_string()).collect();
    if set.is_co() {
        format!("co {{{}}}", items.join(" "))
    } else {
        format!("{{{}}}", items.join(" "))
    }
}

/// A fully resolved model: every section validated against the carrier.
#[derive(Debug, Clone)]
pub struct ResolvedModel {
    pub name: String,
    pub seed: u64,
    pub carrier: Carrier,
    pub sigma: AlgebraModel,
    pub topology: Option<TopSpace>,
    pub measure: Option<Measure>,
    pub fn_algebra: Option<SeminormedFnAlgebra>,
}

impl ResolvedModel {
    pub fn from_path(path: &Path) -> Result<ResolvedModel> {
        ModelDocument::from_path(path)?.resolve()
    }

    pub fn from_toml(text: &str) -> Result<ResolvedModel> {
        ModelDocument::from_toml(text)?.resolve()
    }

    /// The atom partition of the generated picture, in canonical order.
    pub fn atoms_listing(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("model: {} ({})\n", self.name, self.sigma.kind()));
        out.push_str(&format!("carrier: {}\n", self.carrier));
        let atoms = self.sigma.generated().atoms();
        out.push_str(&format!("atoms ({}):\n", atoms.len()));
        for a in atoms {
            out.push_str(&format!("  {}\n", render_set(a)));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const NAT_DOC: &str = r#"
name = "nat-demo"
seed = 7

[carrier]
kind = "nat"

[algebra]
generators = ["{0}", "{1, 2}", "co {5}"]

[measure]
atoms = { "0" = "1/2", "3" = "1/4" }
diffuse = "1/4"

[function-algebra]
span = "full"
norm = { kind = "sup" }
"#;

    #[test]
    fn parse_and_resolve_nat_document() {
        let resolved = ResolvedModel::from_toml(NAT_DOC).unwrap();
        assert_eq!(resolved.name, "nat-demo");
        assert_eq!(resolved.seed, 7);
        // the named prefix covers the largest mentioned natural
        assert!(resolved.carrier.is_valid_label(&PointLabel::Nat(5)));
        assert!(resolved.carrier.named_points().any(|p| *p == PointLabel::Nat(5)));
        assert_eq!(resolved.sigma.generated().generators().len(), 3);
        assert!(resolved.measure.is_some());
        assert!(resolved.fn_algebra.is_some());
        assert!(resolved.topology.is_none());
    }

    #[test]
    fn set_literals_roundtrip() {
        let carrier = Carrier::naturals(6, []);
        for lit in ["{0 1}", "{}", "co {2}", "co {}"] {
            let set = parse_set(&carrier, lit).unwrap();
            let rendered = render_set(&set);
            assert_eq!(parse_set(&carrier, &rendered).unwrap(), set);
        }
        assert_eq!(
            parse_set(&carrier, "{1, 2}").unwrap(),
            carrier.positive_set([1u64, 2]).unwrap()
        );
    }

    #[test]
    fn document_roundtrips_through_toml() {
        let doc = ModelDocument::from_toml(NAT_DOC).unwrap();
        let text = doc.to_toml().unwrap();
        let again = ModelDocument::from_toml(&text).unwrap();
        let a = doc.resolve().unwrap();
        let b = again.resolve().unwrap();
        assert_eq!(a.atoms_listing(), b.atoms_listing());
        assert_eq!(a.seed, b.seed);
    }

    #[test]
    fn reserved_and_unknown_fields_rejected() {
        assert!(parse_label("free").is_err());
        assert!(parse_label("∞").is_err());
        let bad = "
[carrier]
kind = \"nat\"
bogus = 3
";
        assert!(ModelDocument::from_toml(bad).is_err());
    }

    #[test]
    fn empty_document_is_a_parse_error() {
        // no carrier section: surfaced as a document error, nothing runs
        assert!(matches!(ModelDocument::from_toml(""), Err(Error::Document(_))));
    }

    #[test]
    fn finite_document_with_topology() {
        let text = r#"
[carrier]
kind = "finite"
points = ["1", "2", "3"]

[algebra]
generators = ["{1}", "{2}", "{3}"]

[topology]
kind = "finite"
opens = ["{1 2}"]
"#;
        let resolved = ResolvedModel::from_toml(text).unwrap();
        assert!(resolved.topology.is_some());
        assert_eq!(resolved.sigma.generated().atoms().len(), 3);
        let listing = resolved.atoms_listing();
        assert!(listing.contains("atoms (3)"));
    }

    #[test]
    fn convergent_seq_document() {
        let text = r#"
[carrier]
kind = "nat"
points = ["ω"]

[topology]
kind = "convergent-seq"
"#;
        let resolved = ResolvedModel::from_toml(text).unwrap();
        assert!(matches!(resolved.topology, Some(TopSpace::ConvergentSeq { .. })));
    }

    #[test]
    fn omega_document() {
        let text = r#"
[carrier]
kind = "omega"
points = ["a", "b", "c"]

[measure]
atoms = { "a" = "1/4" }
diffuse = "3/4"
"#;
        let resolved = ResolvedModel::from_toml(text).unwrap();
        assert_eq!(resolved.carrier.named_count(), 3);
        assert_eq!(resolved.measure.unwrap().total(), BigRational::from_integer(1.into()));
    }
}
