//! JSON document form of an engine: variables plus rules, editable without
//! touching code.

use serde::{Deserialize, Serialize};

use super::engine::Engine;
use super::error::FuzzyError;
use super::membership::MembershipFunction;
use super::rule::{Rule, RuleBase};
use super::variable::LinguisticVariable;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermDoc {
    pub label: String,
    pub kind: String,
    pub points: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VariableDoc {
    pub name: String,
    pub universe: [f64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
    pub terms: Vec<TermDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EngineDoc {
    pub variables: Vec<VariableDoc>,
    pub rules: Vec<Rule>,
}

impl TermDoc {
    fn to_membership(&self) -> Result<MembershipFunction, FuzzyError> {
        let p = &self.points;
        let want = |n: usize| -> Result<(), FuzzyError> {
            if p.len() == n {
                Ok(())
            } else {
                Err(FuzzyError::BadDocument {
                    detail: format!(
                        "term '{}': kind '{}' needs {} points, got {}",
                        self.label,
                        self.kind,
                        n,
                        p.len()
                    ),
                })
            }
        };
        match self.kind.replace('-', "_").as_str() {
            "triangle" => {
                want(3)?;
                MembershipFunction::triangle(p[0], p[1], p[2])
            }
            "trapezoid" => {
                want(4)?;
                MembershipFunction::trapezoid(p[0], p[1], p[2], p[3])
            }
            "left_shoulder" => {
                want(2)?;
                MembershipFunction::left_shoulder(p[0], p[1])
            }
            "right_shoulder" => {
                want(2)?;
                MembershipFunction::right_shoulder(p[0], p[1])
            }
            other => Err(FuzzyError::BadDocument {
                detail: format!("term '{}': unknown kind '{}'", self.label, other),
            }),
        }
    }

    fn from_membership(label: &str, mf: &MembershipFunction) -> Self {
        let (kind, points) = match *mf {
            MembershipFunction::Triangle(a, b, c) => ("triangle", vec![a, b, c]),
            MembershipFunction::Trapezoid(a, b, c, d) => ("trapezoid", vec![a, b, c, d]),
            MembershipFunction::LeftShoulder(a, b) => ("left_shoulder", vec![a, b]),
            MembershipFunction::RightShoulder(a, b) => ("right_shoulder", vec![a, b]),
        };
        Self {
            label: label.to_owned(),
            kind: kind.to_owned(),
            points,
        }
    }
}

impl EngineDoc {
    pub fn from_json(text: &str) -> Result<Self, FuzzyError> {
        serde_json::from_str(text).map_err(|e| FuzzyError::BadDocument {
            detail: e.to_string(),
        })
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("engine doc serializes")
    }

    pub fn to_engine(&self) -> Result<Engine, FuzzyError> {
        let mut variables = Vec::with_capacity(self.variables.len());
        for v in &self.variables {
            let mut terms = Vec::with_capacity(v.terms.len());
            for t in &v.terms {
                terms.push((t.label.clone(), t.to_membership()?));
            }
            variables.push(LinguisticVariable {
                name: v.name.clone(),
                universe: (v.universe[0], v.universe[1]),
                unit: v.unit.clone(),
                terms,
            });
        }
        Engine::new(variables, RuleBase::new(self.rules.clone()))
    }

    pub fn from_engine(engine: &Engine) -> Self {
        let variables = engine
            .inputs()
            .iter()
            .chain(engine.outputs())
            .map(|v| VariableDoc {
                name: v.name.clone(),
                universe: [v.universe.0, v.universe.1],
                unit: v.unit.clone(),
                terms: v
                    .terms
                    .iter()
                    .map(|(l, mf)| TermDoc::from_membership(l, mf))
                    .collect(),
            })
            .collect();
        Self {
            variables,
            rules: engine.rule_base().rules.clone(),
        }
    }
}

/// Parses a full engine straight from JSON text.
pub fn engine_from_json(text: &str) -> Result<Engine, FuzzyError> {
    EngineDoc::from_json(text)?.to_engine()
}

#[cfg(test)]
mod tests {
    use super::*;

    const DOC: &str = r#"{
      "variables": [
        {"name": "x", "universe": [0, 10], "unit": "m", "terms": [
          {"label": "low", "kind": "triangle", "points": [0, 0, 6]},
          {"label": "high", "kind": "right-shoulder", "points": [4, 10]}
        ]},
        {"name": "y", "universe": [0, 1], "terms": [
          {"label": "a", "kind": "trapezoid", "points": [0, 0, 1, 1]}
        ]}
      ],
      "rules": [
        {"if": [["x", "low"]], "then": [["y", "a"]]},
        {"if": [["x", "high"]], "then": [["y", "a"]]}
      ]
    }"#;

    #[test]
    fn document_round_trip() {
        let engine = engine_from_json(DOC).unwrap();
        assert_eq!(engine.inputs().len(), 1);
        assert_eq!(engine.outputs().len(), 1);
        let doc = EngineDoc::from_engine(&engine);
        let again = doc.to_engine().unwrap();
        assert_eq!(
            engine.infer_ordered(&[3.0]).unwrap(),
            again.infer_ordered(&[3.0]).unwrap()
        );
    }

    #[test]
    fn bad_kind_is_reported() {
        let r = EngineDoc::from_json(
            r#"{"variables":[{"name":"x","universe":[0,1],"terms":[{"label":"t","kind":"bell","points":[0,1]}]}],"rules":[]}"#,
        )
        .unwrap()
        .to_engine();
        assert!(matches!(r, Err(FuzzyError::BadDocument { .. })));
    }

    #[test]
    fn malformed_json_carries_location() {
        let err = EngineDoc::from_json("{ nope").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line"), "{msg}");
    }
}
