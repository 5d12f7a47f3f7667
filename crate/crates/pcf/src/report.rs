//! Report emission: a structured JSON document and a flat CSV table.
//!
//! Numbers are written at full precision (shortest round-trip form); the
//! `*_display` columns of the table carry the 2-decimal rounding.

use pcf_core::risk::{Ratio, RiskReport};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Structured,
    Tabular,
}

/// The structured report: the engine output plus the labels needed to
/// present it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub model: String,
    pub currency_label: String,
    pub report: RiskReport,
}

pub fn emit(doc: &ReportDocument, format: Format) -> Vec<u8> {
    match format {
        Format::Structured => emit_structured(doc),
        Format::Tabular => emit_tabular(&doc.report),
    }
}

pub fn emit_structured(doc: &ReportDocument) -> Vec<u8> {
    to_json(doc)
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("report values always serialize");
    out.push(b'\n');
    out
}

pub fn parse_structured(bytes: &[u8]) -> serde_json::Result<ReportDocument> {
    serde_json::from_slice(bytes)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowKind {
    /// One (component, event type) pair.
    Cell,
    /// All events for one component.
    Component,
    /// All components for one event type.
    Event,
    /// All components of one line; the line id is in `component`.
    Line,
    /// Whole network.
    Total,
}

/// One CSV row. Column order is fixed by field order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TabularRow {
    pub component: String,
    pub event: String,
    pub pf: Option<f64>,
    pub pcf_direct: f64,
    pub pcf_indirect: f64,
    pub pcf_total: f64,
    /// A number or `undefined`.
    pub importance: String,
    pub pcf_total_display: String,
    pub importance_display: String,
    pub row_kind: RowKind,
}

pub const COLUMNS: [&str; 10] = [
    "component",
    "event",
    "pf",
    "pcf_direct",
    "pcf_indirect",
    "pcf_total",
    "importance",
    "pcf_total_display",
    "importance_display",
    "row_kind",
];

const UNDEFINED: &str = "undefined";

fn ratio_text(r: Ratio) -> (String, String) {
    match r {
        Ratio::Defined(v) => (v.to_string(), format!("{v:.2}")),
        Ratio::Undefined => (UNDEFINED.into(), UNDEFINED.into()),
    }
}

/// Parses the `importance` column back.
pub fn parse_ratio(text: &str) -> Option<Ratio> {
    if text == UNDEFINED {
        Some(Ratio::Undefined)
    } else {
        text.parse().ok().map(Ratio::Defined)
    }
}

pub fn tabular_rows(report: &RiskReport) -> Vec<TabularRow> {
    let row = |kind, component: &str, event: &str, pf, pcf: &pcf_core::risk::ProbableCost, importance| {
        let (importance, importance_display) = ratio_text(importance);
        TabularRow {
            component: component.into(),
            event: event.into(),
            pf,
            pcf_direct: pcf.direct,
            pcf_indirect: pcf.indirect,
            pcf_total: pcf.total,
            importance,
            pcf_total_display: format!("{:.2}", pcf.total),
            importance_display,
            row_kind: kind,
        }
    };
    let mut rows = Vec::new();
    for c in &report.cells {
        rows.push(row(RowKind::Cell, c.component.as_str(), c.event_type.as_str(), Some(c.pf), &c.probable_cost, c.importance));
    }
    for c in &report.components {
        rows.push(row(RowKind::Component, c.component.as_str(), "", Some(c.pf), &c.probable_cost, c.importance));
    }
    for e in &report.events {
        rows.push(row(RowKind::Event, "", e.event_type.as_str(), None, &e.probable_cost, e.importance));
    }
    for l in &report.lines {
        rows.push(row(RowKind::Line, l.line.as_str(), "", Some(l.pf), &l.probable_cost, l.importance));
    }
    let total_share = if report.total.total == 0.0 { Ratio::Undefined } else { Ratio::Defined(1.0) };
    rows.push(row(RowKind::Total, "", "", None, &report.total, total_share));
    rows
}

pub fn emit_tabular(report: &RiskReport) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in tabular_rows(report) {
        w.serialize(r).expect("writing to memory");
    }
    w.into_inner().expect("writing to memory")
}

pub fn parse_tabular(bytes: &[u8]) -> csv::Result<Vec<TabularRow>> {
    csv::Reader::from_reader(bytes).deserialize().collect()
}
