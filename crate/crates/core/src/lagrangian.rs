//! Curvature rules for compact minimal totally real submanifolds of
//! Kählerian manifolds. Inputs are declared, not computed.

use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RicciSign {
    Positive,
    Nonpositive,
    #[default]
    Unknown,
}

/// Pointwise comparison of the restricted ambient curvature term with the
/// Ricci tensor of the submanifold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Comparison {
    /// `i*R^M <= R^N`
    LeRn,
    /// `i*R^M <= 2 R^N`
    Le2Rn,
    /// `i*R^M > 2 R^N`
    Gt2Rn,
    #[default]
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LagrangianInputs {
    pub ricci: RicciSign,
    pub betti1: u64,
    pub has_killing_field: bool,
    pub comparison: Comparison,
    pub identity_map_stable: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LagrangianVerdict {
    Stable,
    Unstable,
    Undecided,
}

impl LagrangianVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            LagrangianVerdict::Stable => "stable",
            LagrangianVerdict::Unstable => "unstable",
            LagrangianVerdict::Undecided => "undecided",
        }
    }
}

pub const RULE_POSITIVE_RICCI_BETTI: &str = "positive-ricci-with-first-betti";
pub const RULE_KILLING_FIELD: &str = "curvature-above-twice-ricci-with-killing-field";
pub const RULE_NONPOSITIVE_RICCI: &str = "nonpositive-ricci";
pub const RULE_BELOW_RICCI: &str = "curvature-below-ricci";
pub const RULE_BELOW_TWICE_RICCI: &str = "curvature-below-twice-ricci-with-stable-identity";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LagrangianReport {
    pub verdict: LagrangianVerdict,
    pub fired: Vec<&'static str>,
}

/// Applies every rule. A stable rule and an unstable rule firing together
/// means the declared inputs are inconsistent.
pub fn lagrangian_verdict(inputs: &LagrangianInputs) -> Result<LagrangianReport> {
    let mut unstable = Vec::new();
    if inputs.ricci == RicciSign::Positive && inputs.betti1 > 0 {
        unstable.push(RULE_POSITIVE_RICCI_BETTI);
    }
    if inputs.comparison == Comparison::Gt2Rn && inputs.has_killing_field {
        unstable.push(RULE_KILLING_FIELD);
    }
    let mut stable = Vec::new();
    if inputs.ricci == RicciSign::Nonpositive {
        stable.push(RULE_NONPOSITIVE_RICCI);
    }
    if inputs.comparison == Comparison::LeRn {
        stable.push(RULE_BELOW_RICCI);
    }
    if inputs.comparison == Comparison::Le2Rn && inputs.identity_map_stable == Some(true) {
        stable.push(RULE_BELOW_TWICE_RICCI);
    }
    match (stable.first(), unstable.first()) {
        (Some(s), Some(u)) => Err(Error::ContradictoryInputs {
            stable_rule: s,
            unstable_rule: u,
        }),
        (Some(_), None) => Ok(LagrangianReport {
            verdict: LagrangianVerdict::Stable,
            fired: stable,
        }),
        (None, Some(_)) => Ok(LagrangianReport {
            verdict: LagrangianVerdict::Unstable,
            fired: unstable,
        }),
        (None, None) => Ok(LagrangianReport {
            verdict: LagrangianVerdict::Undecided,
            fired: Vec::new(),
        }),
    }
}

/// Lower bound on the index from harmonic one-forms.
pub fn index_lower_bound(betti1: u64) -> u64 {
    betti1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truth_table() {
        let pos = LagrangianInputs {
            ricci: RicciSign::Positive,
            betti1: 1,
            ..Default::default()
        };
        assert_eq!(lagrangian_verdict(&pos).unwrap().verdict, LagrangianVerdict::Unstable);
        let nonpos = LagrangianInputs {
            ricci: RicciSign::Nonpositive,
            betti1: 3,
            has_killing_field: true,
            ..Default::default()
        };
        assert_eq!(lagrangian_verdict(&nonpos).unwrap().verdict, LagrangianVerdict::Stable);
        assert_eq!(
            lagrangian_verdict(&LagrangianInputs::default()).unwrap().verdict,
            LagrangianVerdict::Undecided
        );
    }

    #[test]
    fn comparison_rules() {
        let mut i = LagrangianInputs {
            comparison: Comparison::Le2Rn,
            ..Default::default()
        };
        assert_eq!(lagrangian_verdict(&i).unwrap().verdict, LagrangianVerdict::Undecided);
        i.identity_map_stable = Some(true);
        assert_eq!(lagrangian_verdict(&i).unwrap().fired, [RULE_BELOW_TWICE_RICCI]);
        i.comparison = Comparison::Gt2Rn;
        i.has_killing_field = true;
        assert_eq!(lagrangian_verdict(&i).unwrap().fired, [RULE_KILLING_FIELD]);
    }

    #[test]
    fn contradiction_names_both_rules() {
        let i = LagrangianInputs {
            ricci: RicciSign::Positive,
            betti1: 1,
            comparison: Comparison::LeRn,
            ..Default::default()
        };
        assert_eq!(
            lagrangian_verdict(&i).unwrap_err(),
            Error::ContradictoryInputs {
                stable_rule: RULE_BELOW_RICCI,
                unstable_rule: RULE_POSITIVE_RICCI_BETTI,
            }
        );
    }

    #[test]
    fn betti_bound() {
        assert_eq!(index_lower_bound(0), 0);
        assert_eq!(index_lower_bound(2), 2);
    }
}
