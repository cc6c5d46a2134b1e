//! JSON documents read and written by the command line.

use serde::{Deserialize, Serialize};
use stabcat_core::order::{explicit_order, Phase};
use stabcat_core::stability::{FinestReport, HnFiltration, ValidationReport};
use stabcat_core::torsion::TorsionReport;
use stabcat_core::{Members, StabilityData, TorsionPair};

use crate::ambient_spec::Context;
use crate::error::CliError;

/// One piece; `members` are taken as given, `generators` are closed first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceDoc {
    pub phase: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub members: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<String>,
}

/// Stability data with pieces in ascending phase order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityDoc {
    pub ambient: String,
    pub phases: Vec<PieceDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionDoc {
    #[serde(rename = "T")]
    pub t: Vec<String>,
    #[serde(rename = "F")]
    pub f: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HnStepDoc {
    pub phase: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sub: Option<String>,
    pub factors: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HnDoc {
    pub object: String,
    pub steps: Vec<HnStepDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationDoc {
    pub ambient: String,
    pub valid: bool,
    pub finest: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub finest_witness: Option<[String; 3]>,
    pub hom_violations: Vec<[String; 2]>,
    pub hn_failures: Vec<String>,
    pub hn_ambiguous: Vec<String>,
    pub overlaps: Vec<String>,
    pub unclosed: Vec<String>,
    pub scope_size: usize,
    /// `WINDOW-VERIFIED` on windowed ambients, `VERIFIED` otherwise.
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionValidationDoc {
    pub ambient: String,
    pub valid: bool,
    pub hom_violations: Vec<[String; 2]>,
    pub t_not_perp: bool,
    pub f_not_perp: bool,
    pub not_quotient_closed: Vec<String>,
    pub not_sub_closed: Vec<String>,
    pub undecomposed: Vec<String>,
    pub label: String,
}

pub fn label(ctx: &Context) -> String {
    if ctx.amb.windowed() { "WINDOW-VERIFIED" } else { "VERIFIED" }.to_string()
}

fn pairs(v: &[(stabcat_core::Indec, stabcat_core::Indec)]) -> Vec<[String; 2]> {
    v.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect()
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

impl StabilityDoc {
    pub fn from_data(ctx: &Context, sd: &StabilityData) -> StabilityDoc {
        let phases = sd.pieces().iter().map(|(p, m)| PieceDoc { phase: p.to_string(), members: ctx.names(*m), generators: Vec::new() }).collect();
        StabilityDoc { ambient: ctx.amb.spec(), phases }
    }

    pub fn to_data(&self, ctx: &Context) -> Result<StabilityData, CliError> {
        let phases = self.phases.iter().map(|p| Phase::parse(&p.phase)).collect::<Result<Vec<_>, _>>()?;
        let mut pieces = Vec::new();
        for (phase, doc) in phases.iter().zip(&self.phases) {
            let mut m = ctx.members_of(&doc.members)?;
            if !doc.generators.is_empty() {
                m = m | ctx.closure_of(&doc.generators)?;
            }
            pieces.push((phase.clone(), m));
        }
        Ok(StabilityData::new(explicit_order(phases)?, pieces)?)
    }
}

impl TorsionDoc {
    pub fn from_pair(ctx: &Context, tp: &TorsionPair) -> TorsionDoc {
        TorsionDoc { t: ctx.names(tp.t), f: ctx.names(tp.f) }
    }

    pub fn to_pair(&self, ctx: &Context) -> Result<TorsionPair, CliError> {
        Ok(TorsionPair { t: ctx.members_of(&self.t)?, f: ctx.members_of(&self.f)? })
    }
}

impl HnDoc {
    pub fn from_filtration(h: &HnFiltration) -> HnDoc {
        HnDoc {
            object: h.object.to_string(),
            steps: h.steps.iter().map(|s| HnStepDoc { phase: s.phase.to_string(), sub: s.sub.map(|x| x.to_string()), factors: strings(&s.factors) }).collect(),
        }
    }
}

impl ValidationDoc {
    pub fn new(ctx: &Context, r: &ValidationReport, f: &FinestReport) -> ValidationDoc {
        ValidationDoc {
            ambient: ctx.amb.spec(),
            valid: r.valid,
            finest: f.finest,
            finest_witness: f.witness.as_ref().map(|(p, x, y)| [p.to_string(), x.to_string(), y.to_string()]),
            hom_violations: pairs(&r.hom_violations),
            hn_failures: strings(&r.hn_failures),
            hn_ambiguous: strings(&r.hn_ambiguous),
            overlaps: strings(&r.overlaps),
            unclosed: strings(&r.unclosed),
            scope_size: r.scope_size,
            label: label(ctx),
        }
    }
}

impl TorsionValidationDoc {
    pub fn new(ctx: &Context, r: &TorsionReport) -> TorsionValidationDoc {
        TorsionValidationDoc {
            ambient: ctx.amb.spec(),
            valid: r.valid,
            hom_violations: pairs(&r.hom_violations),
            t_not_perp: r.t_not_perp,
            f_not_perp: r.f_not_perp,
            not_quotient_closed: strings(&r.not_quotient_closed),
            not_sub_closed: strings(&r.not_sub_closed),
            undecomposed: strings(&r.undecomposed),
            label: label(ctx),
        }
    }
}

/// Renders a subcategory by its members, or `0` when empty.
pub fn show_members(ctx: &Context, m: Members) -> String {
    if m.is_empty() {
        return "0".into();
    }
    format!("<{}>", ctx.names(m).join(", "))
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("documents serialise")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient_spec::parse_ambient;
    use stabcat_core::stability::{enumerate_finest, FinestOptions};

    #[test]
    fn stability_round_trip() {
        for spec in ["an:3", "tube:2"] {
            let ctx = parse_ambient(spec).unwrap();
            for c in enumerate_finest(&ctx.amb, FinestOptions::default()).unwrap() {
                let doc = StabilityDoc::from_data(&ctx, &c.data);
                let text = to_json(&doc);
                let back: StabilityDoc = serde_json::from_str(&text).unwrap();
                assert_eq!(back, doc);
                assert_eq!(back.to_data(&ctx).unwrap(), c.data);
            }
        }
    }

    #[test]
    fn generators_are_closed() {
        let ctx = parse_ambient("tube:3").unwrap();
        let doc: StabilityDoc = serde_json::from_str(r#"{"ambient":"tube:3","phases":[{"phase":"1","generators":["S0","S1"]}]}"#).unwrap();
        let sd = doc.to_data(&ctx).unwrap();
        assert_eq!(ctx.names(sd.pieces()[0].1), ["S0^(1)@3", "S1^(1)@3", "S1^(2)@3"]);
    }
}
