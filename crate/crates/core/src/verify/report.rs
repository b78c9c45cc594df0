use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    OutOfBudget,
}

impl Verdict {
    pub fn of(ok: bool) -> Self {
        if ok {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }

    /// Fails dominates out-of-budget, which dominates holds.
    pub fn combine(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fails, _) | (_, Fails) => Fails,
            (OutOfBudget, _) | (_, OutOfBudget) => OutOfBudget,
            _ => Holds,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::OutOfBudget => "out-of-budget",
        })
    }
}

/// Replayable evidence attached to a report.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WitnessData {
    /// A set of permutations in one-line notation.
    Permutations { degree: usize, members: Vec<Vec<usize>> },
    /// An ordered set family with the profile it was searched for.
    Family { ground_n: usize, k: usize, l1: usize, l2: usize, sets: Vec<Vec<usize>> },
    /// A degree `n` at which `S_n(patterns)` is not symmetric.
    Window { n: usize, patterns: Vec<Vec<usize>> },
    /// A Schur expansion as `(partition, coefficient)` pairs.
    Expansion { degree: usize, terms: Vec<(Vec<usize>, String)> },
    /// An exhaustive sweep of this size found nothing where something was
    /// expected.
    Missing { n: usize, size: usize },
    /// `|S_n(patterns)|` differs from the expected count.
    Count { n: usize, patterns: Vec<Vec<usize>>, found: u64, expected: u64 },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Witness {
    pub role: String,
    #[serde(flatten)]
    pub data: WitnessData,
}

impl Witness {
    pub fn new(role: impl Into<String>, data: WitnessData) -> Self {
        Self { role: role.into(), data }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.role)?;
        match &self.data {
            WitnessData::Permutations { members, .. } => write!(f, "{{{}}}", join_perms(members)),
            WitnessData::Family { ground_n, k, l1, l2, sets } => {
                let sets: Vec<String> = sets.iter().map(|s| format!("{{{}}}", join(s))).collect();
                write!(f, "({}) over [{ground_n}], k={k} l1={l1} l2={l2}", sets.join(", "))
            }
            WitnessData::Window { n, patterns } => {
                write!(f, "S_{n}({{{}}}) is not symmetric", join_perms(patterns))
            }
            WitnessData::Expansion { terms, .. } => {
                if terms.is_empty() {
                    return f.write_str("0");
                }
                for (i, (lambda, c)) in terms.iter().enumerate() {
                    let key = format!("s({})", join(lambda));
                    match (i, c.strip_prefix('-')) {
                        (0, Some(abs)) => write!(f, "-{}{key}", coefficient_prefix(abs))?,
                        (0, None) => write!(f, "{}{key}", coefficient_prefix(c))?,
                        (_, Some(abs)) => write!(f, " - {}{key}", coefficient_prefix(abs))?,
                        (_, None) => write!(f, " + {}{key}", coefficient_prefix(c))?,
                    }
                }
                Ok(())
            }
            WitnessData::Missing { n, size } => {
                write!(f, "no symmetric set of size {size} in S_{n}")
            }
            WitnessData::Count { n, patterns, found, expected } => {
                write!(f, "|S_{n}({{{}}})| = {found}, expected {expected}", join_perms(patterns))
            }
        }
    }
}

fn coefficient_prefix(abs: &str) -> String {
    if abs == "1" {
        String::new()
    } else {
        format!("{abs}·")
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn join_perms(perms: &[Vec<usize>]) -> String {
    perms.iter().map(|p| format!("[{}]", join(p))).collect::<Vec<_>>().join(", ")
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SubVerdict {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

impl SubVerdict {
    pub fn new(name: impl Into<String>, verdict: Verdict, detail: impl Into<String>) -> Self {
        Self { name: name.into(), verdict, detail: detail.into() }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct Stats {
    /// Backtracking nodes examined by family searches.
    pub nodes: u64,
    /// Candidate objects (pattern sets, permutations, windows) tested.
    pub candidates: u64,
    pub wall_ms: u64,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_name: String,
    pub parameters: Vec<(String, String)>,
    pub verdict: Verdict,
    /// Only part of the declared candidate space was examined.
    pub partial: bool,
    /// Sampling rather than exhaustion; a `holds` verdict is not a proof.
    pub evidence_only: bool,
    pub witnesses: Vec<Witness>,
    pub sub_verdicts: Vec<SubVerdict>,
    pub stats: Stats,
}

impl CheckReport {
    pub fn new(check_name: &str) -> Self {
        Self {
            check_name: check_name.into(),
            parameters: Vec::new(),
            verdict: Verdict::Holds,
            partial: false,
            evidence_only: false,
            witnesses: Vec::new(),
            sub_verdicts: Vec::new(),
            stats: Stats::default(),
        }
    }

    pub fn param(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.parameters.push((key.into(), value.to_string()));
        self
    }

    pub fn push_sub(&mut self, sub: SubVerdict) {
        self.sub_verdicts.push(sub);
    }

    /// The report with its stats block cleared, for comparing reruns.
    pub fn without_stats(&self) -> Self {
        Self { stats: Stats::default(), ..self.clone() }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let params: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(out, "check: {} ({})", self.check_name, params.join(", "));
        let mut flags = Vec::new();
        if self.partial {
            flags.push("partial");
        }
        if self.evidence_only {
            flags.push("evidence only");
        }
        if flags.is_empty() {
            let _ = writeln!(out, "verdict: {}", self.verdict);
        } else {
            let _ = writeln!(out, "verdict: {} [{}]", self.verdict, flags.join(", "));
        }
        for sub in &self.sub_verdicts {
            let _ = writeln!(out, "  {:<13} {}: {}", sub.verdict, sub.name, sub.detail);
        }
        if !self.witnesses.is_empty() {
            let _ = writeln!(out, "witnesses:");
            for w in &self.witnesses {
                let _ = writeln!(out, "  {w}");
            }
        }
        let _ = writeln!(
            out,
            "stats: candidates={} nodes={} wall_ms={}",
            self.stats.candidates, self.stats.nodes, self.stats.wall_ms
        );
        out
    }

    /// One row per sub-verdict, headed `check,sub_verdict,verdict,detail`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(["check", "sub_verdict", "verdict", "detail"]).map_err(io)?;
        for sub in &self.sub_verdicts {
            w.write_record([
                self.check_name.as_str(),
                sub.name.as_str(),
                &sub.verdict.to_string(),
                sub.detail.as_str(),
            ])
            .map_err(io)?;
        }
        w.write_record([self.check_name.as_str(), "overall", &self.verdict.to_string(), ""]).map_err(io)?;
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })
    }
}
