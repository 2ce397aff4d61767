//! Analysis reports: one structured document covering classification, set
//! descriptions, annihilators, component structure, consequence checklists,
//! the exhaustive suite, and metric lines.
//!
//! The machine form is JSON with a schema version; `parse_json` of
//! `render_json` gives back an equal report, and rendering is
//! byte-deterministic for identical inputs. Rational numbers are always
//! carried as exact strings. The human form is plain text assembled from
//! the same data.

use num::BigRational;
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::classify::{ClassificationReport, ThreeValued, Verdict, VerdictReason};
use crate::error::AlgebraError;
use crate::metric::{
    CheckStatus, ComponentDescription, ComponentKind, DistanceBracket, ZemanekReport,
};
use crate::oracle::{SuiteStatus, TheoremSuiteReport};
use crate::scalar::{Field, PrimeField, Rationals};
use crate::sets::{AffineSubspace, ElementSetDescription, SetProvenance};

/// Version stamp carried by every machine-readable report.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

// ---------------------------------------------------------------------------
// Document structure
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSummary {
    pub name: String,
    pub dim: usize,
    pub scalar: String,
    pub unital: bool,
}

/// An element: exact coordinate strings plus the display form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointOut {
    pub coords: Vec<String>,
    pub display: String,
}

/// An affine subspace: coordinates as exact strings plus a display form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceOut {
    pub dimension: usize,
    pub base: Vec<String>,
    pub directions: Vec<Vec<String>>,
    pub display: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictOut {
    pub verdict: String,
    pub reason: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassificationSection {
    pub without_order: VerdictOut,
    pub nice: VerdictOut,
    pub very_nice: VerdictOut,
    pub semisimple: VerdictOut,
    pub semiprime: VerdictOut,
    pub unital: VerdictOut,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radical: Option<SubspaceOut>,
    pub center: SubspaceOut,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// One described element set, complete or not.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetSection {
    pub set: String,
    pub complete: bool,
    pub provenance: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<PointOut>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub families: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub subspaces: Vec<SubspaceOut>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnnihilatorSection {
    pub triple: SubspaceOut,
    pub two_sided: SubspaceOut,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSection {
    pub kind: String,
    pub representative: PointOut,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckRow {
    pub item: String,
    pub status: String,
    pub detail: String,
}

/// A titled list of pass/fail/skip rows (consequence checks, the
/// exhaustive suite).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChecklistSection {
    pub title: String,
    pub rows: Vec<CheckRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub banner: Option<String>,
    pub all_pass: bool,
}

/// One certified numeric result, bracket endpoints as exact strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricLine {
    pub item: String,
    pub lower: String,
    pub upper: String,
    pub detail: String,
}

/// The whole report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema_version: u32,
    pub algebra: AlgebraSummary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationSection>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sets: Vec<SetSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub annihilators: Option<AnnihilatorSection>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<ComponentSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub consequence_checks: Option<ChecklistSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite: Option<ChecklistSection>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub metrics: Vec<MetricLine>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    /// A report with only the algebra header filled in.
    pub fn new(algebra: AlgebraSummary) -> Report {
        Report {
            schema_version: REPORT_SCHEMA_VERSION,
            algebra,
            classification: None,
            sets: Vec::new(),
            annihilators: None,
            components: Vec::new(),
            consequence_checks: None,
            suite: None,
            metrics: Vec::new(),
            notes: Vec::new(),
        }
    }
}

// ---------------------------------------------------------------------------
// Converters from the analysis types
// ---------------------------------------------------------------------------

pub fn summary_rational(alg: &Algebra<Rationals>) -> AlgebraSummary {
    AlgebraSummary {
        name: alg.name().to_string(),
        dim: alg.dim(),
        scalar: "rational".to_string(),
        unital: alg.unit().is_some(),
    }
}

pub fn summary_prime(alg: &Algebra<PrimeField>) -> AlgebraSummary {
    AlgebraSummary {
        name: alg.name().to_string(),
        dim: alg.dim(),
        scalar: format!("GF({})", alg.f().modulus()),
        unital: alg.unit().is_some(),
    }
}

fn coords_out<F: Field>(f: &F, coords: &[F::El]) -> Vec<String> {
    coords.iter().map(|c| f.render(c)).collect()
}

fn point_out<F: Field>(alg: &Algebra<F>, coords: &[F::El]) -> PointOut {
    PointOut {
        coords: coords_out(alg.f(), coords),
        display: alg.render_element(coords),
    }
}

fn subspace_out<F: Field>(alg: &Algebra<F>, sub: &AffineSubspace<F>) -> SubspaceOut {
    let display = if sub.directions.is_empty() {
        alg.render_element(&sub.base)
    } else {
        let span = sub
            .directions
            .iter()
            .map(|d| alg.render_element(d))
            .collect::<Vec<_>>()
            .join(", ");
        let base = alg.render_element(&sub.base);
        if base == "0" {
            format!("span{{{span}}}")
        } else {
            format!("{base} + span{{{span}}}")
        }
    };
    SubspaceOut {
        dimension: sub.space_dim(),
        base: coords_out(alg.f(), &sub.base),
        directions: sub
            .directions
            .iter()
            .map(|d| coords_out(alg.f(), d))
            .collect(),
        display,
    }
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::True => "true",
        Verdict::False => "false",
        Verdict::Unknown => "unknown",
    }
}

fn reason_str(r: VerdictReason) -> &'static str {
    match r {
        VerdictReason::ExhaustiveProof => "exhaustive-proof",
        VerdictReason::Certificate => "certificate",
        VerdictReason::Counterexample => "counterexample",
        VerdictReason::NotFalsified => "not-falsified",
    }
}

fn verdict_out<F: Field>(alg: &Algebra<F>, v: &ThreeValued<F>) -> VerdictOut {
    VerdictOut {
        verdict: verdict_str(v.verdict).to_string(),
        reason: reason_str(v.reason).to_string(),
        witness: v.witness.as_ref().map(|w| alg.render_element(w)),
    }
}

fn classification_section<F: Field>(
    alg: &Algebra<F>,
    c: &ClassificationReport<F>,
) -> ClassificationSection {
    ClassificationSection {
        without_order: verdict_out(alg, &c.without_order),
        nice: verdict_out(alg, &c.nice),
        very_nice: verdict_out(alg, &c.very_nice),
        semisimple: verdict_out(alg, &c.semisimple),
        semiprime: verdict_out(alg, &c.semiprime),
        unital: verdict_out(alg, &c.unital),
        radical: c.radical.as_ref().map(|r| subspace_out(alg, r)),
        center: subspace_out(alg, &c.center),
        notes: c.notes.clone(),
    }
}

pub fn classification_section_rational(
    alg: &Algebra<Rationals>,
    c: &ClassificationReport<Rationals>,
) -> ClassificationSection {
    classification_section(alg, c)
}

pub fn classification_section_prime(
    alg: &Algebra<PrimeField>,
    c: &ClassificationReport<PrimeField>,
) -> ClassificationSection {
    classification_section(alg, c)
}

fn provenance_str(p: SetProvenance) -> &'static str {
    match p {
        SetProvenance::ExactSolve => "exact-solve",
        SetProvenance::FiniteFieldExhaustive => "finite-field-exhaustive",
        SetProvenance::PartialHeuristic => "partial-heuristic",
    }
}

/// A set description as a report section. Families are rendered strings
/// only for prime fields they do not occur; over the rationals the display
/// is canonical for complete descriptions.
pub fn set_section_rational(
    alg: &Algebra<Rationals>,
    desc: &ElementSetDescription<Rationals>,
) -> SetSection {
    SetSection {
        set: desc.set.label().to_string(),
        complete: desc.complete,
        provenance: provenance_str(desc.provenance).to_string(),
        points: desc.points.iter().map(|p| point_out(alg, p)).collect(),
        families: desc.families.iter().map(|f| f.render(alg)).collect(),
        subspaces: desc.subspaces.iter().map(|s| subspace_out(alg, s)).collect(),
        notes: desc.notes.clone(),
    }
}

pub fn set_section_prime(
    alg: &Algebra<PrimeField>,
    desc: &ElementSetDescription<PrimeField>,
) -> SetSection {
    SetSection {
        set: desc.set.label().to_string(),
        complete: desc.complete,
        provenance: provenance_str(desc.provenance).to_string(),
        points: desc.points.iter().map(|p| point_out(alg, p)).collect(),
        families: Vec::new(),
        subspaces: desc.subspaces.iter().map(|s| subspace_out(alg, s)).collect(),
        notes: desc.notes.clone(),
    }
}

pub fn annihilator_section<F: Field>(
    alg: &Algebra<F>,
    triple: &AffineSubspace<F>,
    two_sided: &AffineSubspace<F>,
) -> AnnihilatorSection {
    AnnihilatorSection {
        triple: subspace_out(alg, triple),
        two_sided: subspace_out(alg, two_sided),
    }
}

fn component_kind_str(k: ComponentKind) -> &'static str {
    match k {
        ComponentKind::Singleton => "singleton",
        ComponentKind::Unbounded => "unbounded",
    }
}

pub fn component_sections(
    alg: &Algebra<Rationals>,
    components: &[ComponentDescription],
) -> Vec<ComponentSection> {
    components
        .iter()
        .map(|c| ComponentSection {
            kind: component_kind_str(c.kind).to_string(),
            representative: point_out(alg, &c.representative),
            witness: c.witness.as_ref().map(|w| w.render(alg)),
            notes: c.notes.clone(),
        })
        .collect()
}

fn check_status_str(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "fail",
        CheckStatus::OutOfScope => "out-of-scope",
    }
}

pub fn checklist_from_zemanek(report: &ZemanekReport) -> ChecklistSection {
    ChecklistSection {
        title: "metric consequence checks".to_string(),
        rows: report
            .rows
            .iter()
            .map(|r| CheckRow {
                item: r.item.clone(),
                status: check_status_str(r.status).to_string(),
                detail: r.detail.clone(),
            })
            .collect(),
        banner: None,
        all_pass: report.all_testable_pass(),
    }
}

fn suite_status_str(s: SuiteStatus) -> &'static str {
    match s {
        SuiteStatus::Pass => "pass",
        SuiteStatus::Fail => "fail",
        SuiteStatus::Skipped => "skipped",
    }
}

pub fn checklist_from_suite(report: &TheoremSuiteReport) -> ChecklistSection {
    ChecklistSection {
        title: format!("exhaustive checks over GF({})", report.modulus),
        rows: report
            .rows
            .iter()
            .map(|r| CheckRow {
                item: r.item.clone(),
                status: suite_status_str(r.status).to_string(),
                detail: r.detail.clone(),
            })
            .collect(),
        banner: Some(report.banner.clone()),
        all_pass: report.all_pass(),
    }
}

/// A certified distance as a metric line; endpoints exact, approximate
/// decimal in the detail.
pub fn metric_line_from_bracket(item: &str, bracket: &DistanceBracket) -> MetricLine {
    MetricLine {
        item: item.to_string(),
        lower: bracket.lower.to_string(),
        upper: bracket.upper.to_string(),
        detail: format!("≈ [{:.9}, {:.9}]", bracket.lower_f64(), bracket.upper_f64()),
    }
}

/// An exact numeric metric line (no bracket width).
pub fn metric_line_exact(item: &str, value: &BigRational, detail: &str) -> MetricLine {
    MetricLine {
        item: item.to_string(),
        lower: value.to_string(),
        upper: value.to_string(),
        detail: detail.to_string(),
    }
}

// ---------------------------------------------------------------------------
// Rendering and parsing
// ---------------------------------------------------------------------------

/// Machine form: pretty JSON, newline-terminated, byte-deterministic for
/// equal reports.
pub fn render_json(report: &Report) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    text
}

/// Inverse of [`render_json`].
pub fn parse_json(text: &str) -> Result<Report, AlgebraError> {
    serde_json::from_str(text).map_err(|e| AlgebraError::Parse {
        line: e.line(),
        col: e.column(),
        msg: e.to_string(),
    })
}

fn push_checklist(out: &mut String, section: &ChecklistSection) {
    out.push_str(&format!(
        "{} ({}):\n",
        section.title,
        if section.all_pass { "all pass" } else { "FAILURES" }
    ));
    for row in &section.rows {
        out.push_str(&format!(
            "  [{:>12}] {}: {}\n",
            row.status, row.item, row.detail
        ));
    }
    if let Some(banner) = &section.banner {
        out.push_str(&format!("  note: {banner}\n"));
    }
}

/// Human form: plain text, assembled purely from the report data.
pub fn render_human(report: &Report) -> String {
    let mut out = String::new();
    let a = &report.algebra;
    out.push_str(&format!(
        "algebra {} (dim {}, {}{})\n",
        a.name,
        a.dim,
        a.scalar,
        if a.unital { ", unital" } else { "" }
    ));

    if let Some(c) = &report.classification {
        out.push_str("classification:\n");
        for (label, v) in [
            ("without order", &c.without_order),
            ("nice", &c.nice),
            ("very nice", &c.very_nice),
            ("semisimple", &c.semisimple),
            ("semiprime", &c.semiprime),
            ("unital", &c.unital),
        ] {
            out.push_str(&format!("  {label}: {} ({})", v.verdict, v.reason));
            if let Some(w) = &v.witness {
                out.push_str(&format!(", witness {w}"));
            }
            out.push('\n');
        }
        if let Some(r) = &c.radical {
            out.push_str(&format!("  radical: {}\n", r.display));
        }
        out.push_str(&format!("  center: {}\n", c.center.display));
        for note in &c.notes {
            out.push_str(&format!("  note: {note}\n"));
        }
    }

    for s in &report.sets {
        out.push_str(&format!(
            "set {}: {} ({})\n",
            s.set,
            if s.complete { "complete" } else { "INCOMPLETE" },
            s.provenance
        ));
        for p in &s.points {
            out.push_str(&format!("  point {}\n", p.display));
        }
        for f in &s.families {
            out.push_str(&format!("  family {f}\n"));
        }
        for sub in &s.subspaces {
            out.push_str(&format!("  subspace {}\n", sub.display));
        }
        for note in &s.notes {
            out.push_str(&format!("  note: {note}\n"));
        }
    }

    if let Some(ann) = &report.annihilators {
        out.push_str(&format!(
            "triple annihilator: {} (dim {})\n",
            ann.triple.display, ann.triple.dimension
        ));
        out.push_str(&format!(
            "two-sided annihilator: {} (dim {})\n",
            ann.two_sided.display, ann.two_sided.dimension
        ));
    }

    if !report.components.is_empty() {
        out.push_str(&format!("components ({}):\n", report.components.len()));
        for c in &report.components {
            out.push_str(&format!("  {} at {}", c.kind, c.representative.display));
            if let Some(w) = &c.witness {
                out.push_str(&format!(", witness {w}"));
            }
            out.push('\n');
            for note in &c.notes {
                out.push_str(&format!("    note: {note}\n"));
            }
        }
    }

    if let Some(section) = &report.consequence_checks {
        push_checklist(&mut out, section);
    }
    if let Some(section) = &report.suite {
        push_checklist(&mut out, section);
    }

    for m in &report.metrics {
        if m.lower == m.upper {
            out.push_str(&format!("{} = {}", m.item, m.lower));
        } else {
            out.push_str(&format!("{} in [{}, {}]", m.item, m.lower, m.upper));
        }
        if !m.detail.is_empty() {
            out.push_str(&format!("  ({})", m.detail));
        }
        out.push('\n');
    }

    for note in &report.notes {
        out.push_str(&format!("note: {note}\n"));
    }
    out
}
