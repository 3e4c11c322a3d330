use thiserror::Error;

use crate::quantifier::{Family, QuantifierSpec};
use crate::term::{PropertySet, TermExpr};

/// `Q restriction are scope`, or `Q left vs right` for the comparative and
/// similarity families.
#[derive(Debug, Clone, PartialEq)]
pub struct Statement {
    pub quantifier: QuantifierSpec,
    pub restriction: TermExpr,
    pub scope: TermExpr,
}

impl Statement {
    pub fn new(quantifier: QuantifierSpec, restriction: TermExpr, scope: TermExpr) -> Self {
        Self {
            quantifier,
            restriction,
            scope,
        }
    }

    pub fn family(&self) -> Family {
        self.quantifier.family()
    }
}

/// The conclusion whose quantifier is to be inferred.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConclusionTemplate {
    pub family: Family,
    pub restriction: TermExpr,
    pub scope: TermExpr,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Syllogism {
    properties: PropertySet,
    universe: Option<f64>,
    premises: Vec<Statement>,
    conclusion: ConclusionTemplate,
}

impl Syllogism {
    pub fn new(
        properties: PropertySet,
        universe: Option<f64>,
        premises: Vec<Statement>,
        conclusion: ConclusionTemplate,
    ) -> Result<Self, SyllogismError> {
        if premises.is_empty() {
            return Err(SyllogismError::NoPremises);
        }
        if conclusion.family.is_logical() {
            return Err(SyllogismError::LogicalConclusion(conclusion.family));
        }
        if let Some(u) = universe {
            if !(u > 0.0 && u.is_finite()) {
                return Err(SyllogismError::BadUniverse(u));
            }
        }
        let terms = premises
            .iter()
            .flat_map(|p| [&p.restriction, &p.scope])
            .chain([&conclusion.restriction, &conclusion.scope]);
        for t in terms {
            for leaf in t.leaves() {
                if properties.index_of(leaf).is_none() {
                    return Err(SyllogismError::UndeclaredProperty(leaf.to_string()));
                }
            }
        }
        Ok(Self {
            properties,
            universe,
            premises,
            conclusion,
        })
    }

    pub fn properties(&self) -> &PropertySet {
        &self.properties
    }

    pub fn universe(&self) -> Option<f64> {
        self.universe
    }

    pub fn premises(&self) -> &[Statement] {
        &self.premises
    }

    pub fn conclusion(&self) -> &ConclusionTemplate {
        &self.conclusion
    }

    /// Same syllogism with the premises in a different order.
    pub fn with_premises(&self, premises: Vec<Statement>) -> Result<Self, SyllogismError> {
        Self::new(
            self.properties.clone(),
            self.universe,
            premises,
            self.conclusion.clone(),
        )
    }

    pub fn with_universe(&self, universe: Option<f64>) -> Result<Self, SyllogismError> {
        Self::new(
            self.properties.clone(),
            universe,
            self.premises.clone(),
            self.conclusion.clone(),
        )
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SyllogismError {
    #[error("a syllogism needs at least one premise")]
    NoPremises,
    #[error("conclusion must use a numeric family, not the logical `{0}`")]
    LogicalConclusion(Family),
    #[error("property `{0}` is not declared")]
    UndeclaredProperty(String),
    #[error("universe size must be a positive finite number, got {0}")]
    BadUniverse(f64),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_undeclared_and_empty() {
        let props = PropertySet::new(["a", "b"]).unwrap();
        let concl = ConclusionTemplate {
            family: Family::Absolute,
            restriction: TermExpr::prop("a"),
            scope: TermExpr::prop("b"),
        };
        let prem = Statement::new(
            QuantifierSpec::logical(Family::All).unwrap(),
            TermExpr::prop("a"),
            TermExpr::prop("c"),
        );
        assert_eq!(
            Syllogism::new(props.clone(), None, vec![prem], concl.clone()),
            Err(SyllogismError::UndeclaredProperty("c".into()))
        );
        assert_eq!(
            Syllogism::new(props.clone(), None, vec![], concl.clone()),
            Err(SyllogismError::NoPremises)
        );
        let logical = ConclusionTemplate {
            family: Family::Some,
            ..concl
        };
        let prem = Statement::new(
            QuantifierSpec::logical(Family::All).unwrap(),
            TermExpr::prop("a"),
            TermExpr::prop("b"),
        );
        assert!(matches!(
            Syllogism::new(props, None, vec![prem], logical),
            Err(SyllogismError::LogicalConclusion(Family::Some))
        ));
    }
}
