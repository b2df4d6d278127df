//! Catalog of totally geodesic submanifolds with expected verdicts.
//!
//! The file is TOML with three record kinds: `[[embedding]]` (a subalgebra
//! given by a projection matrix), `[[entry]]` (a submanifold with its normal
//! blocks, referring to an embedding by name) and `[[grouping]]` (Euler
//! numbers of the polars of one ambient space, checked against the
//! Lefschetz number `2^rank`).

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use geodstab_core::branching::{CasimirScales, EmbeddingData, ReductiveDatum, ReductiveWeight};
use geodstab_core::rootsys::{parse_type, RootDatum, Weight};
use geodstab_core::stability::{analyze, Ambient, Character, Congruence, NormalBlock, StabilityReport};
use geodstab_core::{SubmanifoldSpec, Verdict, Q};
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::rational::Rational;

pub const BUNDLED: &str = include_str!("../data/catalog.toml");

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("catalog parse error: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("embedding `{name}`: {source}")]
    Embedding {
        name: String,
        source: geodstab_core::Error,
    },
    #[error("entry `{name}`: {message}")]
    Entry { name: String, message: String },
    #[error("duplicate {kind} name `{name}`")]
    Duplicate { kind: &'static str, name: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExpectedVerdict {
    Stable,
    Unstable,
}

impl From<ExpectedVerdict> for Verdict {
    fn from(v: ExpectedVerdict) -> Self {
        match v {
            ExpectedVerdict::Stable => Verdict::Stable,
            ExpectedVerdict::Unstable => Verdict::Unstable,
        }
    }
}

/// Labels per simple factor plus charges per circle factor.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightRecord {
    #[serde(default)]
    pub labels: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub charges: Vec<Rational>,
}

impl WeightRecord {
    pub fn to_weight(&self) -> ReductiveWeight {
        ReductiveWeight {
            labels: self.labels.iter().map(|l| Weight(l.clone())).collect(),
            charges: self.charges.iter().map(|c| c.0).collect(),
        }
    }
}

impl From<&ReductiveWeight> for WeightRecord {
    fn from(w: &ReductiveWeight) -> Self {
        WeightRecord {
            labels: w.labels.iter().map(|l| l.0.clone()).collect(),
            charges: w.charges.iter().map(|&c| Rational(c)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CongruenceRecord {
    pub coefficients: Vec<Rational>,
    pub modulus: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingRecord {
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    /// Simple factors of the source, e.g. `["B2"]`.
    #[serde(default)]
    pub source: Vec<String>,
    #[serde(default)]
    pub source_abelian: usize,
    #[serde(default)]
    pub target: Vec<String>,
    #[serde(default)]
    pub target_abelian: usize,
    pub projection: Vec<Vec<Rational>>,
    /// Per source factor; defaults to 1.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub casimir_scales: Vec<Rational>,
    /// Per source circle; defaults to 1.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub charge_scales: Vec<Rational>,
    /// Per source circle; defaults to 1.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub charge_steps: Vec<Rational>,
    /// Which source modules exist for the acting group.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub congruences: Vec<CongruenceRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterRecord {
    pub coefficients: Vec<Rational>,
    pub residue: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlatRecord {
    pub positive_curvature: bool,
}

fn one() -> u64 {
    1
}

fn is_one(x: &u64) -> bool {
    *x == 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockRecord {
    pub kn_module: WeightRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient_module: Option<WeightRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flat: Option<FlatRecord>,
    pub ambient_dim: u64,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub real_form_factor: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub character: Option<CharacterRecord>,
}

fn yes() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogEntry {
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    pub provenance: String,
    pub expected_verdict: ExpectedVerdict,
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub machine_checked: bool,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub parameters: BTreeMap<String, i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_index: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_nullity: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_killing_nullity: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kn_embedding: Option<String>,
    #[serde(default)]
    pub rank_n: usize,
    #[serde(default)]
    pub rank_m: usize,
    #[serde(default, skip_serializing_if = "is_false")]
    pub ambient_is_group: bool,
    #[serde(default, skip_serializing_if = "is_false")]
    pub subgroup: bool,
    #[serde(default, skip_serializing_if = "is_false")]
    pub ambient_is_bottom: bool,
    #[serde(default, skip_serializing_if = "is_false")]
    pub centralizer_discrete: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub euler_plus: Option<u64>,
    #[serde(default, rename = "block", skip_serializing_if = "Vec::is_empty")]
    pub blocks: Vec<BlockRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grouping {
    pub name: String,
    pub rank: u32,
    /// Euler numbers of all polars other than the base point.
    pub euler_plus: Vec<u64>,
    /// Entries whose `euler_plus` must appear in the list above.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub members: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogFile {
    #[serde(default, rename = "embedding", skip_serializing_if = "Vec::is_empty")]
    pub embeddings: Vec<EmbeddingRecord>,
    #[serde(default, rename = "entry", skip_serializing_if = "Vec::is_empty")]
    pub entries: Vec<CatalogEntry>,
    #[serde(default, rename = "grouping", skip_serializing_if = "Vec::is_empty")]
    pub groupings: Vec<Grouping>,
}

/// A parsed and validated catalog.
#[derive(Debug, Clone)]
pub struct Catalog {
    pub file: CatalogFile,
    embeddings: BTreeMap<String, (EmbeddingData, Vec<Congruence>)>,
    specs: BTreeMap<String, SubmanifoldSpec>,
}

fn reductive(types: &[String], abelian: usize) -> geodstab_core::Result<ReductiveDatum> {
    let factors = types
        .iter()
        .map(|t| parse_type(t).and_then(|(f, n)| RootDatum::new(f, n)))
        .collect::<geodstab_core::Result<Vec<_>>>()?;
    Ok(ReductiveDatum {
        factors,
        abelian_rank: abelian,
    })
}

fn or_ones(v: &[Rational], n: usize) -> Vec<Q> {
    if v.is_empty() {
        vec![Q::one(); n]
    } else {
        v.iter().map(|r| r.0).collect()
    }
}

fn qs(v: &[Rational]) -> Vec<Q> {
    v.iter().map(|r| r.0).collect()
}

impl EmbeddingRecord {
    pub fn build(&self) -> geodstab_core::Result<(EmbeddingData, Vec<Congruence>)> {
        let source = reductive(&self.source, self.source_abelian)?;
        let target = reductive(&self.target, self.target_abelian)?;
        let scales = CasimirScales {
            factors: or_ones(&self.casimir_scales, source.factors.len()),
            charges: or_ones(&self.charge_scales, source.abelian_rank),
        };
        let steps = or_ones(&self.charge_steps, source.abelian_rank);
        let projection = self.projection.iter().map(|r| qs(r)).collect();
        let emb = EmbeddingData::new(source, target, projection, scales, steps)?;
        let congruences = self
            .congruences
            .iter()
            .map(|c| Congruence {
                coefficients: qs(&c.coefficients),
                modulus: c.modulus,
            })
            .collect();
        Ok((emb, congruences))
    }
}

impl Catalog {
    pub fn parse(text: &str) -> Result<Self, CatalogError> {
        let file: CatalogFile = toml::from_str(text)?;
        Self::from_file(file)
    }

    pub fn load(path: &Path) -> Result<Self, CatalogError> {
        let text = std::fs::read_to_string(path).map_err(|source| CatalogError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn bundled() -> Self {
        Self::parse(BUNDLED).expect("bundled catalog is valid")
    }

    pub fn from_file(file: CatalogFile) -> Result<Self, CatalogError> {
        let mut embeddings = BTreeMap::new();
        for rec in &file.embeddings {
            let built = rec.build().map_err(|source| CatalogError::Embedding {
                name: rec.name.clone(),
                source,
            })?;
            if embeddings.insert(rec.name.clone(), built).is_some() {
                return Err(CatalogError::Duplicate {
                    kind: "embedding",
                    name: rec.name.clone(),
                });
            }
        }
        let mut specs = BTreeMap::new();
        let mut names = BTreeSet::new();
        for entry in &file.entries {
            if !names.insert(entry.name.clone()) {
                return Err(CatalogError::Duplicate {
                    kind: "entry",
                    name: entry.name.clone(),
                });
            }
            let err = |message: String| CatalogError::Entry {
                name: entry.name.clone(),
                message,
            };
            if entry.provenance.trim().is_empty() {
                return Err(err("provenance is empty".into()));
            }
            if !entry.machine_checked {
                continue;
            }
            let emb_name = entry
                .kn_embedding
                .as_ref()
                .ok_or_else(|| err("machine-checked entry needs kn_embedding".into()))?;
            let (emb, congruences) = embeddings
                .get(emb_name)
                .ok_or_else(|| err(format!("unknown embedding `{emb_name}`")))?;
            let spec = entry.to_spec(emb.clone(), congruences.clone()).map_err(err)?;
            spec.validate().map_err(|e| err(e.to_string()))?;
            specs.insert(entry.name.clone(), spec);
        }
        Ok(Catalog {
            file,
            embeddings,
            specs,
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(&self.file).expect("catalog model serializes")
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.file.entries
    }

    pub fn entry(&self, name: &str) -> Option<&CatalogEntry> {
        self.file.entries.iter().find(|e| e.name == name)
    }

    pub fn embedding(&self, name: &str) -> Option<&EmbeddingData> {
        self.embeddings.get(name).map(|(e, _)| e)
    }

    pub fn embedding_congruences(&self, name: &str) -> Option<&[Congruence]> {
        self.embeddings.get(name).map(|(_, c)| c.as_slice())
    }

    pub fn embedding_names(&self) -> impl Iterator<Item = &str> {
        self.embeddings.keys().map(String::as_str)
    }

    /// Engine data for a machine-checked entry.
    pub fn spec(&self, name: &str) -> Option<&SubmanifoldSpec> {
        self.specs.get(name)
    }

    pub fn specs(&self) -> impl Iterator<Item = &SubmanifoldSpec> {
        self.specs.values()
    }
}

impl CatalogEntry {
    fn to_spec(&self, embedding: EmbeddingData, congruences: Vec<Congruence>) -> Result<SubmanifoldSpec, String> {
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for (i, b) in self.blocks.iter().enumerate() {
            let ambient = match (&b.ambient_module, &b.flat) {
                (Some(m), None) => Ambient::Module(m.to_weight()),
                (None, Some(f)) => Ambient::Flat {
                    positive_curvature: f.positive_curvature,
                },
                _ => return Err(format!("block {i}: give exactly one of ambient_module and flat")),
            };
            blocks.push(NormalBlock {
                kn_module: b.kn_module.to_weight(),
                ambient,
                ambient_dim: b.ambient_dim,
                real_form_factor: b.real_form_factor,
                character: b.character.as_ref().map(|c| Character {
                    coefficients: qs(&c.coefficients),
                    residue: c.residue,
                }),
            });
        }
        if blocks.is_empty() {
            return Err("machine-checked entry has no normal blocks".into());
        }
        Ok(SubmanifoldSpec {
            name: self.name.clone(),
            embedding,
            blocks,
            rank_n: self.rank_n,
            rank_m: self.rank_m,
            ambient_is_group: self.ambient_is_group,
            subgroup: self.subgroup,
            ambient_is_bottom: self.ambient_is_bottom,
            centralizer_discrete: self.centralizer_discrete,
            euler_plus: self.euler_plus,
            congruences,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub subject: String,
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<CheckLine>,
    /// Entries recorded without engine data.
    pub unchecked: Vec<String>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckLine> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// `2^rank = 1 + sum of Euler numbers`.
pub fn lefschetz_holds(rank: u32, euler_plus: &[u64]) -> bool {
    1u128.checked_shl(rank).is_some_and(|l| l == 1 + euler_plus.iter().map(|&e| e as u128).sum::<u128>())
}

/// Recomputes every machine-checked verdict and checks every grouping.
pub fn validate(catalog: &Catalog) -> ValidationReport {
    let mut report = ValidationReport::default();
    for entry in catalog.entries() {
        let Some(spec) = catalog.spec(&entry.name) else {
            report.unchecked.push(entry.name.clone());
            continue;
        };
        match analyze(spec) {
            Ok(r) => check_entry(entry, &r, &mut report.checks),
            Err(e) => report.checks.push(CheckLine {
                subject: entry.name.clone(),
                check: "verdict".into(),
                passed: false,
                detail: e.to_string(),
            }),
        }
    }
    for g in &catalog.file.groupings {
        let total: u64 = g.euler_plus.iter().sum();
        report.checks.push(CheckLine {
            subject: g.name.clone(),
            check: "lefschetz".into(),
            passed: lefschetz_holds(g.rank, &g.euler_plus),
            detail: format!("2^{} vs 1 + {}", g.rank, total),
        });
        let mut pool = g.euler_plus.clone();
        for m in &g.members {
            let euler = catalog.entry(m).and_then(|e| e.euler_plus);
            let found = euler.and_then(|e| pool.iter().position(|&x| x == e));
            if let Some(i) = found {
                pool.swap_remove(i);
            }
            report.checks.push(CheckLine {
                subject: g.name.clone(),
                check: "member euler number".into(),
                passed: found.is_some(),
                detail: match euler {
                    Some(e) => format!("{m}: {e}"),
                    None => format!("{m}: missing entry or euler_plus"),
                },
            });
        }
    }
    report
}

fn check_entry(entry: &CatalogEntry, r: &StabilityReport, out: &mut Vec<CheckLine>) {
    let expected: Verdict = entry.expected_verdict.into();
    out.push(CheckLine {
        subject: entry.name.clone(),
        check: "verdict".into(),
        passed: r.verdict == expected,
        detail: format!("expected {expected}, computed {}", r.verdict),
    });
    let numbers = [
        ("index", entry.expected_index, r.index),
        ("nullity", entry.expected_nullity, r.nullity),
        ("killing nullity", entry.expected_killing_nullity, r.killing_nullity),
    ];
    for (what, want, got) in numbers {
        if let Some(want) = want {
            out.push(CheckLine {
                subject: entry.name.clone(),
                check: what.into(),
                passed: want == got,
                detail: format!("expected {want}, computed {got}"),
            });
        }
    }
}
