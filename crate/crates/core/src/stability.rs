//! Stability verdicts for compact totally geodesic submanifolds `N = G/K`.
//!
//! The normal space at the base point splits into simple `K`-modules, each
//! sitting inside a simple `G`-module with Casimir level `a_i`. A simple
//! `G`-module `V` contributes negative second variation to block `i` exactly
//! when `c(V) < a_i` and `V` restricted to `K` contains the block's module;
//! `c(V) = a_i` contributes to the nullity.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::branching::{decompose, EmbeddingData, ReductiveWeight};
use crate::error::{Error, Result};
use crate::rational::{integer_mod, Q};

/// Upper bound on candidate modules examined per block.
pub const DEFAULT_CANDIDATE_LIMIT: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Stable,
    Unstable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Stable => "stable",
            Verdict::Unstable => "unstable",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Parity filter for a disconnected isotropy group: a source weight `l`
/// passes when `coefficients . l` is an integer congruent to `residue` mod 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    pub coefficients: Vec<Q>,
    pub residue: i64,
}

impl Character {
    pub fn accepts(&self, coords: &[Q]) -> bool {
        dot(&self.coefficients, coords)
            .and_then(|v| integer_mod(&v, 2))
            .is_some_and(|r| r == self.residue.rem_euclid(2))
    }
}

/// Global-form constraint on which source modules exist:
/// `coefficients . l` must be an integer divisible by `modulus`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    pub coefficients: Vec<Q>,
    pub modulus: i64,
}

impl Congruence {
    pub fn accepts(&self, coords: &[Q]) -> bool {
        dot(&self.coefficients, coords)
            .and_then(|v| integer_mod(&v, self.modulus))
            .is_some_and(|r| r == 0)
    }
}

fn dot(a: &[Q], b: &[Q]) -> Option<Q> {
    (a.len() == b.len()).then(|| a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + *x * *y))
}

/// The simple `G`-module enclosing a normal block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ambient {
    Module(ReductiveWeight),
    /// Zero-level direction: a parallel normal field.
    Flat { positive_curvature: bool },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalBlock {
    pub kn_module: ReductiveWeight,
    pub ambient: Ambient,
    pub ambient_dim: u64,
    /// 1 or 2.
    pub real_form_factor: u64,
    pub character: Option<Character>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubmanifoldSpec {
    pub name: String,
    pub embedding: EmbeddingData,
    pub blocks: Vec<NormalBlock>,
    pub rank_n: usize,
    pub rank_m: usize,
    pub ambient_is_group: bool,
    /// `N` is a closed subgroup of the group manifold `M`.
    pub subgroup: bool,
    pub ambient_is_bottom: bool,
    pub centralizer_discrete: bool,
    pub euler_plus: Option<u64>,
    pub congruences: Vec<Congruence>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Destabilizer {
    pub weight: ReductiveWeight,
    pub casimir: Q,
    pub block: usize,
    pub level: Q,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Rule {
    CasimirComparison,
    FlatDirection,
    InvariantSection,
    EqualRankGroup,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::CasimirComparison => "casimir-comparison",
            Rule::FlatDirection => "flat-direction",
            Rule::InvariantSection => "invariant-section",
            Rule::EqualRankGroup => "equal-rank-group",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleFiring {
    pub rule: Rule,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityReport {
    pub verdict: Verdict,
    pub destabilizers: Vec<Destabilizer>,
    pub index: u64,
    pub nullity: u64,
    pub killing_nullity: u64,
    pub rule_trace: Vec<RuleFiring>,
}

impl SubmanifoldSpec {
    /// Checks shapes, dominance, positive levels, and that every block's
    /// ambient module passes its own filters and contains the block module.
    pub fn validate(&self) -> Result<()> {
        let e = &self.embedding;
        let bad = |msg: String| Err(Error::InvalidSpec(format!("{}: {msg}", self.name)));
        if self.rank_n > self.rank_m {
            return bad(format!("rank_n {} exceeds rank_m {}", self.rank_n, self.rank_m));
        }
        let width = e.source.total_rank();
        for c in &self.congruences {
            if c.coefficients.len() != width || c.modulus < 1 {
                return bad("congruence must have one coefficient per source coordinate and a positive modulus".into());
            }
        }
        for (i, b) in self.blocks.iter().enumerate() {
            e.target.check_weight(&b.kn_module)?;
            if !b.kn_module.is_dominant() {
                return bad(format!("block {i}: K-module {} is not dominant", b.kn_module));
            }
            if b.ambient_dim == 0 {
                return bad(format!("block {i}: ambient_dim must be positive"));
            }
            if !(1..=2).contains(&b.real_form_factor) {
                return bad(format!("block {i}: real_form_factor must be 1 or 2"));
            }
            if let Some(ch) = &b.character {
                if ch.coefficients.len() != width {
                    return bad(format!("block {i}: character needs {width} coefficients"));
                }
            }
            match &b.ambient {
                Ambient::Flat { .. } => {}
                Ambient::Module(p) => {
                    let level = e.casimir(p)?;
                    if !level.is_positive() {
                        return bad(format!("block {i}: ambient module has level 0; mark it flat"));
                    }
                    let coords = p.coords();
                    if let Some(ch) = &b.character {
                        if !ch.accepts(&coords) {
                            return bad(format!("block {i}: ambient module {p} fails the block character"));
                        }
                    }
                    if let Some(c) = self.congruences.iter().find(|c| !c.accepts(&coords)) {
                        return bad(format!(
                            "block {i}: ambient module {p} violates congruence mod {}",
                            c.modulus
                        ));
                    }
                    let m = decompose(e, p)?
                        .into_iter()
                        .find(|(w, _)| *w == b.kn_module)
                        .map_or(0, |(_, m)| m);
                    if m == 0 {
                        return bad(format!("block {i}: ambient module {p} does not contain {}", b.kn_module));
                    }
                }
            }
        }
        Ok(())
    }

    fn admits(&self, coords: &[Q]) -> bool {
        self.congruences.iter().all(|c| c.accepts(coords))
    }
}

/// Runs the Casimir comparison on every block. Includes index, nullity and
/// Killing nullity. Levels are multiplied by `level_factor` (1 for the
/// actual geometry).
pub fn casimir_verdict_scaled(
    spec: &SubmanifoldSpec,
    level_factor: Q,
    limit: usize,
) -> Result<StabilityReport> {
    spec.validate()?;
    let e = &spec.embedding;
    let mut destabilizers = Vec::new();
    let mut index = 0u64;
    let mut nullity = 0u64;
    let mut trace = Vec::new();
    let mut cache: BTreeMap<ReductiveWeight, Vec<(ReductiveWeight, u64)>> = BTreeMap::new();

    for (i, block) in spec.blocks.iter().enumerate() {
        let p = match &block.ambient {
            Ambient::Flat { positive_curvature } => {
                if !block.kn_module.is_trivial() {
                    continue;
                }
                if *positive_curvature {
                    destabilizers.push(Destabilizer {
                        weight: e.source.zero_weight(),
                        casimir: Q::zero(),
                        block: i,
                        level: Q::zero(),
                        multiplicity: 1,
                    });
                    index += block.real_form_factor;
                    trace.push(RuleFiring {
                        rule: Rule::FlatDirection,
                        verdict: Verdict::Unstable,
                        detail: format!("block {i}: parallel normal field with positive curvature"),
                    });
                } else {
                    nullity += block.real_form_factor;
                }
                continue;
            }
            Ambient::Module(p) => p,
        };
        let level = e.casimir(p)? * level_factor;
        let candidates = e.enumerate_source(level);
        if candidates.len() > limit {
            return Err(Error::EnumerationCeiling { block: i, limit });
        }
        for (lambda, c) in candidates {
            let coords = lambda.coords();
            if !spec.admits(&coords) {
                continue;
            }
            if let Some(ch) = &block.character {
                if !ch.accepts(&coords) {
                    continue;
                }
            }
            if !cache.contains_key(&lambda) {
                let d = decompose(e, &lambda)?;
                cache.insert(lambda.clone(), d);
            }
            let m = cache[&lambda]
                .iter()
                .find(|(w, _)| *w == block.kn_module)
                .map_or(0, |(_, m)| *m);
            if m == 0 {
                continue;
            }
            let weight = m * e.source.dimension_of(&lambda)? * block.real_form_factor;
            if c < level {
                index += weight;
                destabilizers.push(Destabilizer {
                    weight: lambda,
                    casimir: c,
                    block: i,
                    level,
                    multiplicity: m,
                });
            } else if c == level {
                nullity += weight;
            }
        }
    }

    let verdict = if destabilizers.is_empty() {
        Verdict::Stable
    } else {
        Verdict::Unstable
    };
    trace.insert(
        0,
        RuleFiring {
            rule: Rule::CasimirComparison,
            verdict,
            detail: format!("{} destabilizing module(s)", destabilizers.len()),
        },
    );
    Ok(StabilityReport {
        verdict,
        destabilizers,
        index,
        nullity,
        killing_nullity: spec.blocks.iter().map(|b| b.ambient_dim).sum(),
        rule_trace: trace,
    })
}

pub fn casimir_verdict(spec: &SubmanifoldSpec) -> Result<StabilityReport> {
    casimir_verdict_scaled(spec, Q::one(), DEFAULT_CANDIDATE_LIMIT)
}

/// `(index, nullity, killing_nullity)`.
pub fn index_nullity(spec: &SubmanifoldSpec) -> Result<(u64, u64, u64)> {
    let r = casimir_verdict(spec)?;
    Ok((r.index, r.nullity, r.killing_nullity))
}

/// A nonzero invariant normal field plus a discrete centralizer forces
/// instability.
pub fn invariant_section_check(spec: &SubmanifoldSpec) -> Option<Verdict> {
    if !spec.centralizer_discrete {
        return None;
    }
    let zero = spec.embedding.source.zero_weight().coords();
    spec.blocks
        .iter()
        .any(|b| {
            matches!(b.ambient, Ambient::Module(_))
                && b.kn_module.is_trivial()
                && b.character.as_ref().is_none_or(|c| c.accepts(&zero))
        })
        .then_some(Verdict::Unstable)
}

/// A closed subgroup of full rank in a centreless group manifold is stable.
pub fn equal_rank_check(spec: &SubmanifoldSpec) -> Option<Verdict> {
    (spec.ambient_is_group && spec.subgroup && spec.ambient_is_bottom && spec.rank_n == spec.rank_m)
        .then_some(Verdict::Stable)
}

/// Runs the engine and both shortcut rules, failing if a shortcut
/// disagrees with the engine.
pub fn analyze(spec: &SubmanifoldSpec) -> Result<StabilityReport> {
    let mut report = casimir_verdict(spec)?;
    let shortcuts = [
        (Rule::InvariantSection, invariant_section_check(spec)),
        (Rule::EqualRankGroup, equal_rank_check(spec)),
    ];
    for (rule, fired) in shortcuts {
        let Some(v) = fired else { continue };
        if v != report.verdict {
            return Err(Error::ShortcutDisagreement {
                rule: rule.as_str(),
                shortcut: v.as_str(),
                engine: report.verdict.as_str(),
            });
        }
        report.rule_trace.push(RuleFiring {
            rule,
            verdict: v,
            detail: String::from(match rule {
                Rule::InvariantSection => "trivial normal block, discrete centralizer",
                _ => "full-rank subgroup of a centreless group",
            }),
        });
    }
    Ok(report)
}
