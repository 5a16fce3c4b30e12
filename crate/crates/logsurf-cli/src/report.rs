//! Structured reports. Every rational is serialized as an exact string.

use logsurf::classify::EpsVerdict;
use logsurf::mmp::{AleCurve, CurveVerdict, MmpRun, RedundantCurve, TwigInequality};
use logsurf::{format_rational, DualGraph, Rational, VertexSet};
use serde::Serialize;
use std::fmt::Write;

pub fn q(x: &Rational) -> String {
    format_rational(x)
}

pub fn ids(g: &DualGraph, set: &VertexSet) -> Vec<String> {
    set.iter().map(|&v| g.id(v).to_string()).collect()
}

pub fn ids_of(g: &DualGraph, order: &[usize]) -> Vec<String> {
    order.iter().map(|&v| g.id(v).to_string()).collect()
}

fn list(xs: &[String]) -> String {
    if xs.is_empty() {
        "{}".to_string()
    } else {
        format!("{{{}}}", xs.join(", "))
    }
}

/// A value attached to a vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub id: String,
    pub value: String,
}

impl Entry {
    pub fn new(g: &DualGraph, v: usize, value: &Rational) -> Self {
        Entry {
            id: g.id(v).to_string(),
            value: q(value),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EpsReport {
    pub eps: String,
    pub lc: bool,
    pub dlt: bool,
    pub witness: Option<Entry>,
    pub exceptional_witness: Option<Entry>,
    pub violations: Vec<Entry>,
    pub may_under_report: bool,
}

impl EpsReport {
    pub fn new(g: &DualGraph, v: &EpsVerdict) -> Self {
        EpsReport {
            eps: q(&v.eps),
            lc: v.is_lc,
            dlt: v.is_dlt,
            witness: v.witness.as_ref().map(|(w, c)| Entry::new(g, *w, c)),
            exceptional_witness: v
                .exceptional_witness
                .as_ref()
                .map(|(w, c)| Entry::new(g, *w, c)),
            violations: v
                .violations
                .iter()
                .map(|(w, c)| Entry::new(g, *w, c))
                .collect(),
            may_under_report: v.may_under_report,
        }
    }

    /// One line such as `not (1-r)-lc at eps = 1/10; witness T3 (cf 47/50)`.
    pub fn line(&self, label: &str) -> String {
        let lc = if self.lc {
            label.to_string()
        } else {
            format!("not {label}")
        };
        let dlt_label = label.replace("-lc", "-dlt");
        let dlt = if self.dlt {
            dlt_label
        } else {
            format!("not {dlt_label}")
        };
        let mut s = format!("{lc}, {dlt} at eps = {}", self.eps);
        if let Some(w) = &self.witness {
            let _ = write!(s, "; witness {} (total coefficient {})", w.id, w.value);
        }
        if let Some(w) = &self.exceptional_witness {
            let _ = write!(
                s,
                "; largest exceptional coefficient {} at {}",
                w.value, w.id
            );
        }
        if !self.violations.is_empty() {
            let items: Vec<String> = self
                .violations
                .iter()
                .map(|w| format!("{} ({})", w.id, w.value))
                .collect();
            let _ = write!(s, "; above 1 - eps at {}", items.join(", "));
        }
        if self.may_under_report {
            s.push_str("; the total coefficient may be under-reported");
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub id: String,
    pub self_intersection: String,
    pub k_pairing: String,
    pub log_pairing: String,
    pub kind: String,
    pub contraction_assumed: bool,
}

impl VerdictReport {
    pub fn new(g: &DualGraph, v: &CurveVerdict) -> Self {
        VerdictReport {
            id: g.id(v.vertex).to_string(),
            self_intersection: q(&v.self_int),
            k_pairing: q(&v.k_pairing),
            log_pairing: q(&v.log_pairing),
            kind: v.kind.to_string(),
            contraction_assumed: v.contraction_assumed,
        }
    }

    pub fn line(&self) -> String {
        let mut s = format!(
            "{}: C^2 = {}, K.C = {}, (K+B).C = {}, {}",
            self.id, self.self_intersection, self.k_pairing, self.log_pairing, self.kind
        );
        if self.contraction_assumed {
            s.push_str(" (contraction assumed)");
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub kind: String,
    pub steps: Vec<VerdictReport>,
    pub contracted: Vec<String>,
}

impl RunReport {
    pub fn new(run: &MmpRun) -> Self {
        let g = run.start.graph();
        RunReport {
            kind: run.kind.to_string(),
            steps: run
                .steps
                .iter()
                .map(|s| VerdictReport::new(g, &s.verdict))
                .collect(),
            contracted: ids(g, &run.final_contracted),
        }
    }

    pub fn text(&self, out: &mut String, indent: &str) {
        for (k, s) in self.steps.iter().enumerate() {
            let _ = writeln!(out, "{indent}{}. {}", k + 1, s.line());
        }
        let _ = writeln!(out, "{indent}contracted: {}", list(&self.contracted));
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InequalityReport {
    pub twigs: usize,
    pub delta: String,
    pub ind_transposed: String,
    pub beta_rest: String,
    pub lhs: String,
    pub rhs: String,
    pub image_self_intersection: String,
    pub image_pairing: String,
    pub predicted: String,
}

impl InequalityReport {
    pub fn new(t: &TwigInequality) -> Self {
        InequalityReport {
            twigs: t.twigs,
            delta: q(&t.delta),
            ind_transposed: q(&t.ind_transposed),
            beta_rest: q(&t.beta_rest),
            lhs: q(&t.lhs),
            rhs: q(&t.rhs),
            image_self_intersection: q(&t.image_self_int),
            image_pairing: q(&t.image_pairing),
            predicted: t.predicted.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RedundantReport {
    pub id: String,
    pub source: VerdictReport,
    pub image: VerdictReport,
    pub inequality: Option<InequalityReport>,
    pub cases: Vec<String>,
}

impl RedundantReport {
    pub fn new(g: &DualGraph, c: &RedundantCurve) -> Self {
        RedundantReport {
            id: g.id(c.vertex).to_string(),
            source: VerdictReport::new(g, &c.source),
            image: VerdictReport::new(g, &c.image),
            inequality: c.inequality.as_ref().map(InequalityReport::new),
            cases: c.cases.iter().map(ToString::to_string).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AleReport {
    pub id: String,
    pub kind: String,
    pub source: VerdictReport,
    pub image: VerdictReport,
    pub contact_value: Option<String>,
    pub cases: Vec<String>,
}

impl AleReport {
    pub fn new(g: &DualGraph, c: &AleCurve) -> Self {
        AleReport {
            id: g.id(c.vertex).to_string(),
            kind: c.kind.to_string(),
            source: VerdictReport::new(g, &c.source),
            image: VerdictReport::new(g, &c.image),
            contact_value: c.contact_value.as_ref().map(q),
            cases: c.cases.iter().map(ToString::to_string).collect(),
        }
    }
}

/// Renders a `(title, items)` list, one item per line.
pub fn section(out: &mut String, title: &str, items: impl IntoIterator<Item = String>) {
    let _ = writeln!(out, "{title}:");
    let mut any = false;
    for item in items {
        any = true;
        let _ = writeln!(out, "  {item}");
    }
    if !any {
        let _ = writeln!(out, "  (none)");
    }
}

pub fn set_line(xs: &[String]) -> String {
    list(xs)
}
