//! Subcommand implementations. Each command returns its exit code, plain
//! text output, and a JSON value carrying the same data, so the binary
//! stays a thin shell and the behavior is testable in-process.
//!
//! Exit codes: 0 all checks passed, 1 semantic failure (axiom violations,
//! failed verdicts, broken preconditions), 2 unreadable or unparseable
//! input, 3 guard exceeded.

use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use sgpd_core::axioms::{AxiomReport, Violation};
use sgpd_core::representation::{self, build_embedding};
use sgpd_core::semigroupoid::{RestrictionSemigroupoid, Semigroupoid};
use sgpd_core::structure;
use sgpd_core::szendrei::{self, SzError};

use crate::format::{self, BuiltStructure};

pub struct CmdOutput {
    pub code: i32,
    pub text: String,
    pub json: Value,
}

fn failure(code: i32, command: &str, message: String) -> CmdOutput {
    CmdOutput {
        code,
        text: format!("error: {message}\n"),
        json: json!({"command": command, "error": message}),
    }
}

fn read_structure(command: &str, path: &Path) -> Result<BuiltStructure, CmdOutput> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| failure(2, command, format!("{}: {e}", path.display())))?;
    let doc = format::parse(&text).map_err(|e| failure(2, command, e.to_string()))?;
    if doc.is_mapping() {
        return Err(failure(
            2,
            command,
            format!("{} is a mapping file, expected a structure", path.display()),
        ));
    }
    format::build(&doc).map_err(|e| failure(2, command, e.to_string()))
}

fn require_restriction(
    command: &str,
    built: BuiltStructure,
    path: &Path,
) -> Result<RestrictionSemigroupoid, CmdOutput> {
    match built {
        BuiltStructure::Restriction(rs) => Ok(rs),
        BuiltStructure::Plain(_) => Err(failure(
            1,
            command,
            format!("{} carries no star lines", path.display()),
        )),
    }
}

struct Mapping {
    source: RestrictionSemigroupoid,
    target: RestrictionSemigroupoid,
    map: sgpd_core::ElementMapping,
}

fn read_mapping(command: &str, path: &Path) -> Result<Mapping, CmdOutput> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| failure(2, command, format!("{}: {e}", path.display())))?;
    let doc = format::parse(&text).map_err(|e| failure(2, command, e.to_string()))?;
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let resolve = |spec: &Option<String>, what: &str| -> Result<PathBuf, CmdOutput> {
        spec.as_ref()
            .map(|s| dir.join(s))
            .ok_or_else(|| failure(2, command, format!("mapping file lacks a {what} line")))
    };
    let source_path = resolve(&doc.source, "source")?;
    let target_path = resolve(&doc.target, "target")?;
    let source = require_restriction(
        command,
        read_structure(command, &source_path)?,
        &source_path,
    )?;
    let target = require_restriction(
        command,
        read_structure(command, &target_path)?,
        &target_path,
    )?;
    let map = format::build_mapping(&doc, source.base(), target.base())
        .map_err(|e| failure(2, command, e.to_string()))?;
    Ok(Mapping {
        source,
        target,
        map,
    })
}

fn names(s: &Semigroupoid, ids: &[sgpd_core::ElementId]) -> Vec<String> {
    ids.iter().map(|&i| s.name(i).to_string()).collect()
}

/// One named check: verdict per rule id plus the violations behind it.
struct CheckBlock {
    id: &'static str,
    rules: Vec<&'static str>,
    report: AxiomReport,
}

fn render_blocks(s: &Semigroupoid, blocks: &[CheckBlock]) -> (bool, String, Value) {
    let mut text = String::new();
    let mut json_checks = Vec::new();
    let mut all_passed = true;
    for block in blocks {
        let violated = block.report.violated_rules();
        for rule in &block.rules {
            let fails: Vec<&Violation> = block
                .report
                .violations
                .iter()
                .filter(|v| v.rule == *rule)
                .collect();
            let verdict = if violated.contains(rule) {
                "fail"
            } else {
                "pass"
            };
            text.push_str(&format!("{rule}: {verdict}\n"));
            for v in &fails {
                text.push_str(&format!(
                    "  witness [{}] {}\n",
                    names(s, &v.witnesses).join(", "),
                    v.message
                ));
            }
            json_checks.push(json!({
                "check": block.id,
                "rule": rule,
                "verdict": verdict,
                "violations": fails.iter().map(|v| json!({
                    "witnesses": names(s, &v.witnesses),
                    "message": v.message,
                })).collect::<Vec<_>>(),
            }));
        }
        all_passed &= block.report.passed();
    }
    (all_passed, text, Value::Array(json_checks))
}

pub fn check(path: &Path) -> CmdOutput {
    let built = match read_structure("check", path) {
        Ok(b) => b,
        Err(out) => return out,
    };

    let mut blocks = Vec::new();
    let validation = built.base().validate();
    let mut text = format!(
        "validate: {}\n",
        if validation.passed() { "pass" } else { "fail" }
    );
    for issue in &validation.issues {
        text.push_str(&format!("  {issue}\n"));
    }
    blocks.push(CheckBlock {
        id: "assoc",
        rules: vec!["s1", "s2", "s3"],
        report: sgpd_core::axioms::check_associativity(built.base()),
    });
    if let BuiltStructure::Restriction(rs) = &built {
        blocks.push(CheckBlock {
            id: "left-restriction",
            rules: vec!["lr1", "lr2", "lr3", "lr4", "lr-dom"],
            report: sgpd_core::axioms::check_left_restriction(rs),
        });
        blocks.push(CheckBlock {
            id: "distinct-set",
            rules: vec!["ds-nonempty", "ds-idem", "ds-closed", "ds-order", "ds-meet"],
            report: sgpd_core::axioms::check_distinct_set(rs.base(), rs.distinct_set()),
        });
    }
    let (blocks_passed, block_text, json_checks) = render_blocks(built.base(), &blocks);
    let passed = validation.passed() && blocks_passed;
    text.push_str(&block_text);
    text.push_str(&format!(
        "result: {}\n",
        if passed { "pass" } else { "fail" }
    ));
    CmdOutput {
        code: i32::from(!passed),
        text,
        json: json!({
            "command": "check",
            "file": path.display().to_string(),
            "passed": passed,
            "validate": validation.issues,
            "checks": json_checks,
        }),
    }
}

fn fmt_set(s: &Semigroupoid, ids: &[sgpd_core::ElementId]) -> String {
    format!("{{{}}}", names(s, ids).join(","))
}

pub fn categorical(path: &Path) -> CmdOutput {
    let built = match read_structure("categorical", path) {
        Ok(b) => b,
        Err(out) => return out,
    };
    let base = built.base();
    match structure::check_categorical(base) {
        None => CmdOutput {
            code: 0,
            text: "categorical: yes\n".to_string(),
            json: json!({"command": "categorical", "categorical": true}),
        },
        Some(w) => {
            let text = format!(
                "NOT categorical; witness S^{}={} S^{}={}\n",
                base.name(w.s),
                fmt_set(base, &w.right_s),
                base.name(w.t),
                fmt_set(base, &w.right_t),
            );
            CmdOutput {
                code: 1,
                text,
                json: json!({
                    "command": "categorical",
                    "categorical": false,
                    "witness": {
                        "s": base.name(w.s),
                        "t": base.name(w.t),
                        "overlap": base.name(w.overlap),
                        "right_s": names(base, &w.right_s),
                        "right_t": names(base, &w.right_t),
                    },
                }),
            }
        }
    }
}

pub fn graph(path: &Path) -> CmdOutput {
    let built = match read_structure("graph", path) {
        Ok(b) => b,
        Err(out) => return out,
    };
    let base = built.base();
    match structure::graphing(base) {
        Err(e) => failure(1, "graph", e.to_string()),
        Ok(g) => {
            let mut text = format!("objects: {}\n", g.objects().join(" "));
            let mut arrows = Vec::new();
            for s in base.element_ids() {
                text.push_str(&format!(
                    "D({})={} R({})={}\n",
                    base.name(s),
                    g.object_name(g.dom_of(s)),
                    base.name(s),
                    g.object_name(g.ran_of(s)),
                ));
                arrows.push(json!({
                    "element": base.name(s),
                    "dom": g.object_name(g.dom_of(s)),
                    "ran": g.object_name(g.ran_of(s)),
                }));
            }
            CmdOutput {
                code: 0,
                text,
                json: json!({
                    "command": "graph",
                    "objects": g.objects(),
                    "arrows": arrows,
                }),
            }
        }
    }
}

pub fn szendrei_cmd(path: &Path, out_file: Option<&Path>, guard: usize) -> CmdOutput {
    let built = match read_structure("szendrei", path) {
        Ok(b) => b,
        Err(out) => return out,
    };
    let rs = match require_restriction("szendrei", built, path) {
        Ok(rs) => rs,
        Err(out) => return out,
    };
    let sz = match szendrei::build_sz(&rs, guard) {
        Ok(sz) => sz,
        Err(e @ SzError::GuardExceeded { .. }) => return failure(3, "szendrei", e.to_string()),
        Err(e) => return failure(1, "szendrei", e.to_string()),
    };
    let mut text = format::emit_restriction(&sz.table);
    let mut dict = Vec::new();
    for id in sz.table.element_ids() {
        let x = sz.element(id);
        let entry = format!(
            "({}, {})",
            fmt_set(rs.base(), &x.set.iter().copied().collect::<Vec<_>>()),
            rs.name(x.anchor)
        );
        text.push_str(&format!("# dict: {} = {}\n", sz.table.name(id), entry));
        dict.push(json!({"name": sz.table.name(id), "pair": entry}));
    }
    let json = json!({
        "command": "szendrei",
        "elements": sz.len(),
        "dict": dict,
    });
    if let Some(out_path) = out_file {
        if let Err(e) = std::fs::write(out_path, &text) {
            return failure(2, "szendrei", format!("{}: {e}", out_path.display()));
        }
        return CmdOutput {
            code: 0,
            text: format!("wrote {} elements to {}\n", sz.len(), out_path.display()),
            json,
        };
    }
    CmdOutput {
        code: 0,
        text,
        json,
    }
}

pub fn embed(path: &Path) -> CmdOutput {
    let built = match read_structure("embed", path) {
        Ok(b) => b,
        Err(out) => return out,
    };
    let rs = match require_restriction("embed", built, path) {
        Ok(rs) => rs,
        Err(out) => return out,
    };
    let lr = sgpd_core::axioms::check_left_restriction(&rs);
    if !lr.passed() {
        let (_, text, json_checks) = render_blocks(
            rs.base(),
            &[CheckBlock {
                id: "left-restriction",
                rules: vec!["lr1", "lr2", "lr3", "lr4", "lr-dom"],
                report: lr,
            }],
        );
        return CmdOutput {
            code: 1,
            text: format!("input is not left restriction\n{text}"),
            json: json!({"command": "embed", "passed": false, "checks": json_checks}),
        };
    }
    let e = match build_embedding(&rs) {
        Ok(e) => e,
        Err(err) => return failure(1, "embed", err.to_string()),
    };
    let mut text = String::new();
    let mut lines = Vec::new();
    for s in rs.element_ids() {
        let image = e.image(s);
        let entries: Vec<String> = image
            .map
            .entries()
            .map(|(k, v)| format!("{}->{}", e.pi.point_name(k), e.pi.point_name(v)))
            .collect();
        let line = format!(
            "alpha {} : {} -> {} ; {}",
            rs.name(s),
            e.pi.fiber_name(image.source_fiber),
            e.pi.fiber_name(image.target_fiber),
            entries.join(", "),
        );
        text.push_str(&line);
        text.push('\n');
        lines.push(line);
    }
    let report = representation::verify_embedding(&e);
    let (passed, block_text, json_checks) = render_blocks(
        rs.base(),
        &[CheckBlock {
            id: "embedding",
            rules: vec!["morphism", "rigid", "injective", "star"],
            report,
        }],
    );
    text.push_str(&block_text);
    CmdOutput {
        code: i32::from(!passed),
        text,
        json: json!({
            "command": "embed",
            "passed": passed,
            "alpha": lines,
            "checks": json_checks,
        }),
    }
}

pub fn factorize(path: &Path, guard: usize) -> CmdOutput {
    let mapping = match read_mapping("factorize", path) {
        Ok(m) => m,
        Err(out) => return out,
    };
    let pre = szendrei::check_premorphism(&mapping.source, &mapping.target, &mapping.map);
    if !pre.passed() {
        let (_, text, json_checks) = render_blocks(
            mapping.source.base(),
            &[CheckBlock {
                id: "premorphism",
                rules: vec!["pre-a", "pre-b", "pm1", "pm2", "pm3", "pm4", "pm5"],
                report: pre,
            }],
        );
        return CmdOutput {
            code: 1,
            text: format!("input is not a premorphism\n{text}"),
            json: json!({"command": "factorize", "passed": false, "checks": json_checks}),
        };
    }
    let sz = match szendrei::build_sz(&mapping.source, guard) {
        Ok(sz) => sz,
        Err(e @ SzError::GuardExceeded { .. }) => return failure(3, "factorize", e.to_string()),
        Err(e) => return failure(1, "factorize", e.to_string()),
    };
    let bar = match szendrei::factorize(&sz, &mapping.target, &mapping.map) {
        Ok(bar) => bar,
        Err(e) => return failure(1, "factorize", e.to_string()),
    };

    let mut text = String::new();
    let mut lines = Vec::new();
    for x in sz.table.element_ids() {
        let line = format!(
            "map: {} -> {}",
            sz.table.name(x),
            mapping.target.name(bar.apply(x))
        );
        text.push_str(&line);
        text.push('\n');
        lines.push(line);
    }

    let morphism_report =
        representation::check_restriction_morphism(&sz.table, &mapping.target, &bar);
    let factors = mapping
        .source
        .element_ids()
        .all(|s| bar.apply(sz.iota_id(s)) == mapping.map.apply(s));
    let round_trip = szendrei::premorphism_from_morphism(&sz, &mapping.target, &bar)
        .map(|phi| phi == mapping.map)
        .unwrap_or(false);
    let unique = szendrei::factorize(&sz, &mapping.target, &mapping.map)
        .map(|again| again == bar)
        .unwrap_or(false);

    let checks = [
        ("restriction-morphism", morphism_report.passed()),
        ("factors-through-iota", factors),
        ("premorphism-round-trip", round_trip),
        ("deterministic", unique),
    ];
    let mut passed = true;
    for (id, ok) in checks {
        text.push_str(&format!("{id}: {}\n", if ok { "pass" } else { "fail" }));
        passed &= ok;
    }
    CmdOutput {
        code: i32::from(!passed),
        text,
        json: json!({
            "command": "factorize",
            "passed": passed,
            "phibar": lines,
            "checks": checks.iter().map(|(id, ok)| json!({"rule": id, "verdict": if *ok {"pass"} else {"fail"}})).collect::<Vec<_>>(),
        }),
    }
}

pub fn naturality(path: &Path, guard: usize) -> CmdOutput {
    let mapping = match read_mapping("naturality", path) {
        Ok(m) => m,
        Err(out) => return out,
    };
    let morphism =
        representation::check_restriction_morphism(&mapping.source, &mapping.target, &mapping.map);
    if !morphism.passed() {
        return failure(
            1,
            "naturality",
            "input is not a restriction morphism".to_string(),
        );
    }
    let sz_source = match szendrei::build_sz(&mapping.source, guard) {
        Ok(sz) => sz,
        Err(e @ SzError::GuardExceeded { .. }) => return failure(3, "naturality", e.to_string()),
        Err(e) => return failure(1, "naturality", e.to_string()),
    };
    let sz_target = match szendrei::build_sz(&mapping.target, guard) {
        Ok(sz) => sz,
        Err(e @ SzError::GuardExceeded { .. }) => return failure(3, "naturality", e.to_string()),
        Err(e) => return failure(1, "naturality", e.to_string()),
    };
    let report = match szendrei::verify_naturality(&sz_source, &sz_target, &mapping.map) {
        Ok(r) => r,
        Err(e) => return failure(1, "naturality", e.to_string()),
    };
    let passed = report.passed();
    let mut text = String::new();
    text.push_str(&format!(
        "naturality: {}\n",
        if passed { "pass" } else { "fail" }
    ));
    for v in &report.violations {
        text.push_str(&format!(
            "  witness [{}] {}\n",
            names(sz_source.table.base(), &v.witnesses).join(", "),
            v.message
        ));
    }
    CmdOutput {
        code: i32::from(!passed),
        text,
        json: json!({
            "command": "naturality",
            "passed": passed,
            "violations": report.violations.iter().map(|v| json!({
                "witnesses": names(sz_source.table.base(), &v.witnesses),
                "message": v.message,
            })).collect::<Vec<_>>(),
        }),
    }
}
