//! Records printed by the command line, in text or JSON form. Every JSON
//! record carries a `command` tag and writes rationals as strings.

use std::fmt::Write as _;

use geodstab_core::stability::StabilityReport;
use serde::{Deserialize, Serialize};

use crate::catalog::{CheckLine, WeightRecord};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightMultiplicity {
    pub labels: Vec<i64>,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleCasimir {
    pub labels: Vec<i64>,
    pub casimir: Rational,
    pub dimension: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub module: WeightRecord,
    pub multiplicity: u64,
    pub dimension: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DestabilizerRecord {
    pub module: WeightRecord,
    pub casimir: Rational,
    pub level: Rational,
    pub block: usize,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleRecord {
    pub rule: String,
    pub verdict: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntrySummary {
    pub name: String,
    pub expected_verdict: String,
    pub machine_checked: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kn_embedding: Option<String>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Output {
    Casimir {
        algebra: String,
        labels: Vec<i64>,
        scale: Rational,
        casimir: Rational,
    },
    Dim {
        algebra: String,
        labels: Vec<i64>,
        dimension: u64,
    },
    Weights {
        algebra: String,
        highest: Vec<i64>,
        dimension: u64,
        weights: Vec<WeightMultiplicity>,
    },
    Enumerate {
        algebra: String,
        max_casimir: Rational,
        scale: Rational,
        modules: Vec<ModuleCasimir>,
    },
    Branch {
        embedding: String,
        module: WeightRecord,
        dimension: u64,
        components: Vec<Component>,
    },
    Stability {
        entry: String,
        verdict: String,
        destabilizers: Vec<DestabilizerRecord>,
        index: u64,
        nullity: u64,
        killing_nullity: u64,
        rules: Vec<RuleRecord>,
    },
    Index {
        entry: String,
        index: u64,
        nullity: u64,
        killing_nullity: u64,
    },
    Lagrangian {
        verdict: String,
        rules: Vec<String>,
        index_lower_bound: u64,
    },
    CatalogList {
        entries: Vec<EntrySummary>,
    },
    CatalogValidate {
        passed: bool,
        checks: Vec<CheckLine>,
        unchecked: Vec<String>,
    },
}

impl Output {
    pub fn stability(entry: &str, r: &StabilityReport) -> Self {
        Output::Stability {
            entry: entry.to_string(),
            verdict: r.verdict.to_string(),
            destabilizers: r
                .destabilizers
                .iter()
                .map(|d| DestabilizerRecord {
                    module: WeightRecord::from(&d.weight),
                    casimir: Rational(d.casimir),
                    level: Rational(d.level),
                    block: d.block,
                    multiplicity: d.multiplicity,
                })
                .collect(),
            index: r.index,
            nullity: r.nullity,
            killing_nullity: r.killing_nullity,
            rules: r
                .rule_trace
                .iter()
                .map(|f| RuleRecord {
                    rule: f.rule.to_string(),
                    verdict: f.verdict.to_string(),
                    detail: f.detail.clone(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("output records serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        match self {
            Output::Casimir { casimir, .. } => writeln!(s, "{casimir}"),
            Output::Dim { dimension, .. } => writeln!(s, "{dimension}"),
            Output::Weights {
                algebra,
                highest,
                dimension,
                weights,
            } => {
                let _ = writeln!(s, "{algebra} {} dim {dimension}", labels(highest));
                weights
                    .iter()
                    .try_for_each(|w| writeln!(s, "  {} x{}", labels(&w.labels), w.multiplicity))
            }
            Output::Enumerate { modules, .. } => modules.iter().try_for_each(|m| {
                writeln!(s, "{}  c={}  dim={}", labels(&m.labels), m.casimir, m.dimension)
            }),
            Output::Branch {
                embedding,
                module,
                dimension,
                components,
            } => {
                let _ = writeln!(s, "{embedding}: {} (dim {dimension})", weight(module));
                components.iter().try_for_each(|c| {
                    writeln!(s, "  {} x{}  dim {}", weight(&c.module), c.multiplicity, c.dimension)
                })
            }
            Output::Stability {
                entry,
                verdict,
                destabilizers,
                index,
                nullity,
                killing_nullity,
                rules,
            } => {
                let _ = writeln!(s, "entry: {entry}");
                let _ = writeln!(s, "verdict: {verdict}");
                let _ = writeln!(s, "destabilizers:");
                if destabilizers.is_empty() {
                    let _ = writeln!(s, "  none");
                }
                for d in destabilizers {
                    let _ = writeln!(
                        s,
                        "  {} c={} < a={} (block {}, multiplicity {})",
                        weight(&d.module),
                        d.casimir,
                        d.level,
                        d.block,
                        d.multiplicity
                    );
                }
                let _ = writeln!(s, "index: {index}");
                let _ = writeln!(s, "nullity: {nullity}");
                let _ = writeln!(s, "killing nullity: {killing_nullity}");
                let _ = writeln!(s, "rules:");
                rules
                    .iter()
                    .try_for_each(|r| writeln!(s, "  {} -> {}: {}", r.rule, r.verdict, r.detail))
            }
            Output::Index {
                index,
                nullity,
                killing_nullity,
                ..
            } => writeln!(s, "index: {index}\nnullity: {nullity}\nkilling nullity: {killing_nullity}"),
            Output::Lagrangian {
                verdict,
                rules,
                index_lower_bound,
            } => {
                let _ = writeln!(s, "verdict: {verdict}");
                let _ = writeln!(s, "rules: {}", if rules.is_empty() { "none".into() } else { rules.join(", ") });
                writeln!(s, "index lower bound: {index_lower_bound}")
            }
            Output::CatalogList { entries } => entries.iter().try_for_each(|e| {
                let tag = if e.machine_checked { "" } else { " (not machine-checked)" };
                writeln!(s, "{:32} {:9}{tag}", e.name, e.expected_verdict)
            }),
            Output::CatalogValidate {
                passed,
                checks,
                unchecked,
            } => {
                for c in checks {
                    let _ = writeln!(
                        s,
                        "{} {} [{}]: {}",
                        if c.passed { "PASS" } else { "FAIL" },
                        c.subject,
                        c.check,
                        c.detail
                    );
                }
                for u in unchecked {
                    let _ = writeln!(s, "SKIP {u} [verdict-only record]");
                }
                let failed = checks.iter().filter(|c| !c.passed).count();
                writeln!(
                    s,
                    "{}: {} checks, {failed} failed",
                    if *passed { "ok" } else { "FAILED" },
                    checks.len()
                )
            }
        }
        .expect("writing to a String cannot fail");
        s
    }
}

fn labels(l: &[i64]) -> String {
    let parts: Vec<String> = l.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

fn weight(w: &WeightRecord) -> String {
    let mut parts: Vec<String> = w.labels.iter().map(|l| labels(l)).collect();
    if !w.charges.is_empty() {
        let q: Vec<String> = w.charges.iter().map(Rational::to_string).collect();
        parts.push(format!("q=({})", q.join(",")));
    }
    if parts.is_empty() {
        "()".into()
    } else {
        parts.join(" ")
    }
}
