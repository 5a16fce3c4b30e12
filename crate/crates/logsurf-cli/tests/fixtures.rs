//! Every fixture parses and the engine reproduces the values recorded in its
//! `expect` block. The recorded values were derived by hand from the
//! configurations, independently of the engine.

mod common;

use common::{fixtures, id_set, names, Fixture};
use logsurf::classify::eps_check;
use logsurf::coefficients::coefficients_linear;
use logsurf::invariants::discriminant;
use logsurf::mmp::{
    almost_log_exceptional, almost_minimalize, enumerate_runs, log_exceptional, peel, redundant,
    CurveKind, Kind,
};
use logsurf::{parse_rational, Rational};
use logsurf_cli::document::vertex_set;
use num_traits::{One, Zero};
use std::collections::BTreeSet;

fn default_eps(f: &Fixture) -> Rational {
    f.model
        .uniform_r()
        .map_or_else(Rational::zero, |r| Rational::one() - r)
}

fn check_bool(
    failures: &mut Vec<String>,
    what: &str,
    expected: Option<bool>,
    actual: impl FnOnce() -> bool,
) {
    if let Some(e) = expected {
        let a = actual();
        if a != e {
            failures.push(format!("{what}: expected {e}, got {a}"));
        }
    }
}

fn check_set(
    failures: &mut Vec<String>,
    what: &str,
    expected: &Option<Vec<String>>,
    actual: impl FnOnce() -> BTreeSet<String>,
) {
    if let Some(e) = expected {
        let a = actual();
        if a != names(e) {
            failures.push(format!("{what}: expected {:?}, got {a:?}", names(e)));
        }
    }
}

fn check_runs(
    failures: &mut Vec<String>,
    f: &Fixture,
    kind: Kind,
    expected: &Option<Vec<Vec<String>>>,
) {
    let Some(e) = expected else { return };
    let expected: BTreeSet<BTreeSet<String>> = e.iter().map(|r| names(r)).collect();
    let runs = enumerate_runs(&f.model, kind, None).expect("enumeration");
    let actual: BTreeSet<BTreeSet<String>> =
        runs.finals.keys().map(|s| id_set(&f.model, s)).collect();
    if actual != expected {
        failures.push(format!(
            "runs of the {kind} kind: expected {expected:?}, got {actual:?}"
        ));
    }
}

fn failures_of(f: &Fixture) -> Vec<String> {
    let m = &f.model;
    let g = m.graph();
    let e = &f.doc.metadata.expect;
    let mut failures = Vec::new();

    if !e.coefficients.is_empty() {
        let cf = coefficients_linear(m).expect("coefficients");
        for (id, value) in &e.coefficients {
            let v = g.index_of(id).expect("known id");
            let expected = parse_rational(value).expect("exact value");
            if cf.get(v) != Some(&expected) {
                failures.push(format!("cf({id}): expected {value}, got {:?}", cf.get(v)));
            }
        }
    }
    for (set, value) in &e.discriminants {
        let s = vertex_set(m, set).expect("known ids");
        let d = discriminant(g, &s).to_string();
        if &d != value {
            failures.push(format!("d({set}): expected {value}, got {d}"));
        }
    }
    check_runs(&mut failures, f, Kind::First, &e.runs_first);
    check_runs(&mut failures, f, Kind::Second, &e.runs_second);

    let eps = default_eps(f);
    if e.lc.is_some() || e.dlt.is_some() {
        let v = eps_check(m, &eps).expect("eps check");
        check_bool(&mut failures, "lc", e.lc, || v.is_lc);
        check_bool(&mut failures, "dlt", e.dlt, || v.is_dlt);
    }
    let kinds = |kind: CurveKind| -> BTreeSet<String> {
        log_exceptional(m)
            .expect("verdicts")
            .iter()
            .filter(|v| v.kind == kind)
            .map(|v| g.id(v.vertex).to_string())
            .collect()
    };
    check_set(
        &mut failures,
        "log exceptional of the first kind",
        &e.log_exceptional_first,
        || kinds(CurveKind::First),
    );
    check_set(
        &mut failures,
        "log exceptional of the second kind",
        &e.log_exceptional_second,
        || kinds(CurveKind::Second),
    );

    check_set(&mut failures, "redundant", &e.redundant, || {
        let p = peel(m, Kind::First).expect("peeling");
        redundant(m, &p)
            .expect("redundant")
            .iter()
            .map(|c| g.id(c.vertex).to_string())
            .collect()
    });
    let ale = |kind: Kind, curve: CurveKind| -> BTreeSet<String> {
        let p = peel(m, kind).expect("peeling");
        almost_log_exceptional(m, &p)
            .expect("ale")
            .iter()
            .filter(|c| c.kind == curve)
            .map(|c| g.id(c.vertex).to_string())
            .collect()
    };
    check_set(&mut failures, "ale of the first kind", &e.ale_first, || {
        ale(Kind::First, CurveKind::First)
    });
    check_set(
        &mut failures,
        "ale of the second kind",
        &e.ale_second,
        || ale(Kind::Second, CurveKind::Second),
    );

    if e.almost_minimalization.is_some()
        || e.almost_minimal_lc.is_some()
        || e.almost_minimal_dlt.is_some()
    {
        let am = almost_minimalize(m, Kind::First).expect("almost minimalization");
        check_set(
            &mut failures,
            "almost minimalization",
            &e.almost_minimalization,
            || id_set(m, &am.am),
        );
        check_bool(
            &mut failures,
            "almost minimal lc",
            e.almost_minimal_lc,
            || am.almost_minimal_eps.is_lc,
        );
        check_bool(
            &mut failures,
            "almost minimal dlt",
            e.almost_minimal_dlt,
            || am.almost_minimal_eps.is_dlt,
        );
    }
    failures
}

#[test]
fn corpus_is_complete_and_annotated() {
    let all = fixtures();
    assert!(all.len() >= 14, "only {} fixtures", all.len());
    for f in &all {
        let md = &f.doc.metadata;
        assert!(!md.name.is_empty(), "{}: missing name", f.file);
        assert!(!md.source.is_empty(), "{}: missing source", f.file);
        assert!(!md.expect.is_empty(), "{}: no expected values", f.file);
    }
    let cubic = all
        .iter()
        .find(|f| f.file == "cuspidal_cubic.json")
        .expect("cuspidal cubic fixture");
    assert_eq!(cubic.model.graph().len(), 4);
}

#[test]
fn expectations_hold() {
    let mut report = Vec::new();
    for f in fixtures() {
        for failure in failures_of(&f) {
            report.push(format!("{}: {failure}", f.file));
        }
    }
    assert!(report.is_empty(), "{}", report.join("\n"));
}
