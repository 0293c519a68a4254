//! Report records and their table/JSON renderings.
//!
//! Every JSON report carries a schema version and lists its cells in
//! a deterministic order; the table form is the same data laid out
//! for reading. Wall times are attributed to the work unit that
//! produced the cell, which is one (x, y, d) row of shifts.

use serde::Serialize;
use std::fmt::Write as _;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Clone)]
pub struct VerificationCell {
    pub group: String,
    pub x: String,
    pub y: String,
    pub i: i64,
    pub d: i64,
    pub computed_dim: Option<usize>,
    pub expected_dim: usize,
    pub pass: bool,
    pub skipped: bool,
    pub wall_ms: u64,
}

#[derive(Serialize, Clone, Copy, Default)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn tally(cells: &[VerificationCell]) -> Summary {
        let mut s = Summary {
            total: cells.len(),
            ..Summary::default()
        };
        for c in cells {
            if c.skipped {
                s.skipped += 1;
            } else if c.pass {
                s.passed += 1;
            } else {
                s.failed += 1;
            }
        }
        s
    }

    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Serialize)]
pub struct CellReport {
    pub schema_version: u32,
    pub command: String,
    pub group: String,
    pub cells: Vec<VerificationCell>,
    pub summary: Summary,
}

impl CellReport {
    pub fn new(command: &str, group: &str, cells: Vec<VerificationCell>) -> CellReport {
        let summary = Summary::tally(&cells);
        CellReport {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            group: group.to_string(),
            cells,
            summary,
        }
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<10} {:<10} {:>4} {:>4} {:>6} {:>6}  {:<6} {:>8}",
            "x", "y", "i", "d", "dim", "expect", "status", "ms"
        );
        for c in &self.cells {
            let dim = c
                .computed_dim
                .map(|v| v.to_string())
                .unwrap_or_else(|| "-".to_string());
            let status = if c.skipped {
                "skip"
            } else if c.pass {
                "pass"
            } else {
                "FAIL"
            };
            let _ = writeln!(
                out,
                "{:<10} {:<10} {:>4} {:>4} {:>6} {:>6}  {:<6} {:>8}",
                c.x, c.y, c.i, c.d, dim, c.expected_dim, status, c.wall_ms
            );
        }
        let s = self.summary;
        let _ = writeln!(
            out,
            "{} cells: {} passed, {} failed, {} skipped",
            s.total, s.passed, s.failed, s.skipped
        );
        out
    }
}

#[derive(Serialize)]
pub struct CharacterRow {
    pub element: String,
    pub shifts: Vec<i64>,
}

#[derive(Serialize)]
pub struct CharacterReport {
    pub schema_version: u32,
    pub command: String,
    pub group: String,
    pub word: String,
    pub rank: usize,
    pub delta: Vec<CharacterRow>,
    pub nabla: Vec<CharacterRow>,
    pub consistent: bool,
}

impl CharacterReport {
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "word [{}], rank {}", self.word, self.rank);
        for (name, rows) in [("delta", &self.delta), ("nabla", &self.nabla)] {
            let _ = writeln!(out, "{} character:", name);
            for r in rows {
                let shifts = r
                    .shifts
                    .iter()
                    .map(|s| s.to_string())
                    .collect::<Vec<_>>()
                    .join(", ");
                let _ = writeln!(out, "  {:<12} [{}]", r.element, shifts);
            }
        }
        let _ = writeln!(
            out,
            "multiplicities {} the rank",
            if self.consistent { "match" } else { "MISMATCH" }
        );
        out
    }
}

#[derive(Serialize, Clone, Copy)]
pub struct DimCell {
    pub i: i64,
    pub d: i64,
    pub dim: Option<usize>,
    pub skipped: bool,
    pub wall_ms: u64,
}

#[derive(Serialize)]
pub struct DimReport {
    pub schema_version: u32,
    pub command: String,
    pub group: String,
    pub source: String,
    pub target: String,
    pub cells: Vec<DimCell>,
}

impl DimReport {
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "Hom([{}], [{}][i]) in degree d", self.source, self.target);
        let _ = writeln!(out, "{:>4} {:>4} {:>6} {:>8}", "i", "d", "dim", "ms");
        for c in &self.cells {
            let dim = c
                .dim
                .map(|v| v.to_string())
                .unwrap_or_else(|| "-".to_string());
            let _ = writeln!(out, "{:>4} {:>4} {:>6} {:>8}", c.i, c.d, dim, c.wall_ms);
        }
        out
    }
}

/// A yes/no verdict with a reading of what was found.
#[derive(Serialize, Clone)]
pub struct Verdict {
    pub subject: String,
    pub observed: String,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct VerdictReport {
    pub schema_version: u32,
    pub command: String,
    pub group: String,
    pub verdicts: Vec<Verdict>,
    pub all_pass: bool,
}

impl VerdictReport {
    pub fn new(command: &str, group: &str, verdicts: Vec<Verdict>) -> VerdictReport {
        let all_pass = verdicts.iter().all(|v| v.pass);
        VerdictReport {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            group: group.to_string(),
            verdicts,
            all_pass,
        }
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let width = self
            .verdicts
            .iter()
            .map(|v| v.subject.len())
            .max()
            .unwrap_or(8)
            .max(8);
        for v in &self.verdicts {
            let _ = writeln!(
                out,
                "{:<w$}  {:<6} {}",
                v.subject,
                if v.pass { "pass" } else { "FAIL" },
                v.observed,
                w = width
            );
        }
        let _ = writeln!(
            out,
            "{} checks: {}",
            self.verdicts.len(),
            if self.all_pass { "all pass" } else { "FAILURES" }
        );
        out
    }
}
