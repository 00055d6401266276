//! Report rendering: a human-readable text format and a structured format
//! with one JSON record per check. Reports carry no timestamps or timing so
//! identical seeds yield byte-identical output.

use motivecalc_core::derived::Complex;
use motivecalc_core::exactla::fmt_rat;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Structured,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub suite: String,
    pub check: String,
    pub case: u64,
    pub digest: String,
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl CheckRecord {
    pub fn pass(&self) -> bool {
        self.verdict == "pass"
    }
}

/// FNV-1a, 64-bit, hex. Stable across runs and platforms.
pub fn fnv_digest(s: &str) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{h:016x}")
}

/// Canonical text rendering of a complex for digests: degrees, twists,
/// dimensions, operator and differential entries, in map order.
pub fn canonical_complex_string(k: &Complex) -> String {
    let mut out = String::new();
    for (p, term) in k.terms() {
        out.push_str(&format!("T{p}:"));
        for (m, rep) in term.graded().pieces() {
            out.push_str(&format!("{m}={};", rep.dim()));
        }
        for ((d, m), mat) in term.ops() {
            out.push_str(&format!("v{d}@{m}["));
            for r in 0..mat.rows() {
                for c in 0..mat.cols() {
                    out.push_str(&fmt_rat(mat.at(r, c)));
                    out.push(',');
                }
            }
            out.push(']');
        }
        out.push('|');
    }
    for (p, f) in k.diffs() {
        out.push_str(&format!("D{p}:"));
        for (m, mat) in &f.components {
            out.push_str(&format!("{m}["));
            for r in 0..mat.rows() {
                for c in 0..mat.cols() {
                    out.push_str(&fmt_rat(mat.at(r, c)));
                    out.push(',');
                }
            }
            out.push(']');
        }
        out.push('|');
    }
    out
}

pub fn digest_complexes(inputs: &[&Complex]) -> String {
    let mut s = String::new();
    for k in inputs {
        s.push_str(&canonical_complex_string(k));
        s.push('#');
    }
    fnv_digest(&s)
}

/// One line per record.
pub fn render_structured(records: &[CheckRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("record serializes"));
        out.push('\n');
    }
    out
}

/// Groups records per (suite, check) with pass counts; failures are listed
/// individually.
pub fn render_text(header: &str, records: &[CheckRecord]) -> String {
    let mut out = String::new();
    out.push_str(header);
    out.push('\n');
    let mut order: Vec<(String, String)> = Vec::new();
    for r in records {
        let key = (r.suite.clone(), r.check.clone());
        if !order.contains(&key) {
            order.push(key);
        }
    }
    for (suite, check) in order {
        let group: Vec<&CheckRecord> = records
            .iter()
            .filter(|r| r.suite == suite && r.check == check)
            .collect();
        let passed = group.iter().filter(|r| r.pass()).count();
        let total = group.len();
        let verdict = if passed == total { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "{verdict} {suite}/{check}: {passed}/{total} cases\n"
        ));
        for r in group.iter().filter(|r| !r.pass()) {
            out.push_str(&format!(
                "  case {} [{}]: {}\n",
                r.case,
                r.digest,
                if r.detail.is_empty() {
                    "failed"
                } else {
                    &r.detail
                }
            ));
        }
    }
    let failures = records.iter().filter(|r| !r.pass()).count();
    out.push_str(&format!(
        "summary: {} checks, {} failures\n",
        records.len(),
        failures
    ));
    out
}
