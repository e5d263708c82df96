use std::collections::HashMap;

use super::centroid::defuzzify_centroid;
use super::error::FuzzyError;
use super::rule::{Rule, RuleBase, ValidationReport};
use super::variable::LinguisticVariable;

/// Per-variable fuzzification result: `(term label, degree)` per term.
pub type FuzzifiedInput = HashMap<String, Vec<(String, f64)>>;

#[derive(Debug, Clone, Copy)]
struct ClauseIdx {
    var: usize,
    term: usize,
}

#[derive(Debug, Clone)]
struct CompiledRule {
    antecedent: Vec<ClauseIdx>,
    /// `(output index, term index)` pairs.
    consequents: Vec<(usize, usize)>,
}

/// An immutable Mamdani inference engine: min t-norm, clipping implication,
/// max aggregation per consequent term, and area-weighted centroid
/// defuzzification across terms. `infer` is pure and thread-safe.
#[derive(Debug, Clone)]
pub struct Engine {
    inputs: Vec<LinguisticVariable>,
    outputs: Vec<LinguisticVariable>,
    rule_base: RuleBase,
    compiled: Vec<CompiledRule>,
}

impl Engine {
    /// Builds and fully validates an engine. Variables referenced by rule
    /// consequents become outputs, the rest must appear in antecedents and
    /// become inputs.
    pub fn new(variables: Vec<LinguisticVariable>, rule_base: RuleBase) -> Result<Self, FuzzyError> {
        for v in &variables {
            v.validate()?;
        }
        if rule_base.is_empty() {
            return Err(FuzzyError::InvalidRuleBase {
                detail: "empty rule base".into(),
            });
        }

        let mut is_output = vec![false; variables.len()];
        let mut is_input = vec![false; variables.len()];
        let find = |name: &str| -> Result<usize, FuzzyError> {
            variables
                .iter()
                .position(|v| v.name == name)
                .ok_or_else(|| FuzzyError::UnknownVariable {
                    variable: name.to_owned(),
                })
        };
        for rule in &rule_base.rules {
            for (v, _) in &rule.antecedent {
                is_input[find(v)?] = true;
            }
            for (v, _) in &rule.consequents {
                is_output[find(v)?] = true;
            }
        }
        for (i, v) in variables.iter().enumerate() {
            if is_input[i] && is_output[i] {
                return Err(FuzzyError::InvalidRuleBase {
                    detail: format!("variable '{}' used as both input and output", v.name),
                });
            }
            if !is_input[i] && !is_output[i] {
                return Err(FuzzyError::InvalidRuleBase {
                    detail: format!("variable '{}' referenced by no rule", v.name),
                });
            }
        }

        let mut inputs = Vec::new();
        let mut outputs = Vec::new();
        let mut input_of = HashMap::new();
        let mut output_of = HashMap::new();
        for (i, v) in variables.into_iter().enumerate() {
            if is_output[i] {
                output_of.insert(v.name.clone(), outputs.len());
                outputs.push(v);
            } else {
                input_of.insert(v.name.clone(), inputs.len());
                inputs.push(v);
            }
        }

        let mut compiled = Vec::with_capacity(rule_base.len());
        for rule in &rule_base.rules {
            if rule.antecedent.is_empty() || rule.consequents.is_empty() {
                return Err(FuzzyError::InvalidRuleBase {
                    detail: "rule with empty antecedent or consequent".into(),
                });
            }
            let mut antecedent = Vec::with_capacity(rule.antecedent.len());
            for (v, t) in &rule.antecedent {
                let var = input_of[v.as_str()];
                let term = inputs[var]
                    .term_index(t)
                    .ok_or_else(|| FuzzyError::UnknownTerm {
                        variable: v.clone(),
                        term: t.clone(),
                    })?;
                antecedent.push(ClauseIdx { var, term });
            }
            let mut consequents = Vec::with_capacity(rule.consequents.len());
            for (v, t) in &rule.consequents {
                let out = output_of[v.as_str()];
                let term = outputs[out]
                    .term_index(t)
                    .ok_or_else(|| FuzzyError::UnknownTerm {
                        variable: v.clone(),
                        term: t.clone(),
                    })?;
                consequents.push((out, term));
            }
            compiled.push(CompiledRule {
                antecedent,
                consequents,
            });
        }

        Ok(Self {
            inputs,
            outputs,
            rule_base,
            compiled,
        })
    }

    pub fn inputs(&self) -> &[LinguisticVariable] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[LinguisticVariable] {
        &self.outputs
    }

    pub fn rule_base(&self) -> &RuleBase {
        &self.rule_base
    }

    pub fn input_index(&self, name: &str) -> Option<usize> {
        self.inputs.iter().position(|v| v.name == name)
    }

    pub fn output_index(&self, name: &str) -> Option<usize> {
        self.outputs.iter().position(|v| v.name == name)
    }

    /// Fuzzifies every input variable from `crisp` (ordered like
    /// [`inputs`](Self::inputs)).
    pub fn fuzzify_all(&self, crisp: &[f64]) -> Result<Vec<Vec<f64>>, FuzzyError> {
        if crisp.len() != self.inputs.len() {
            return Err(FuzzyError::MissingInput {
                variable: self
                    .inputs
                    .get(crisp.len())
                    .map(|v| v.name.clone())
                    .unwrap_or_else(|| "?".into()),
            });
        }
        self.inputs
            .iter()
            .zip(crisp)
            .map(|(v, &x)| v.degrees(x))
            .collect()
    }

    /// Activation of one rule: min over its antecedent clause degrees.
    pub fn fire_rule(&self, rule: &Rule, fuzzified: &FuzzifiedInput) -> Result<f64, FuzzyError> {
        let mut act: f64 = 1.0;
        for (var, term) in &rule.antecedent {
            let entries = fuzzified
                .get(var)
                .ok_or_else(|| FuzzyError::MissingInput {
                    variable: var.clone(),
                })?;
            let deg = entries
                .iter()
                .find(|(l, _)| l == term)
                .ok_or_else(|| FuzzyError::UnknownTerm {
                    variable: var.clone(),
                    term: term.clone(),
                })?
                .1;
            act = act.min(deg);
        }
        Ok(act)
    }

    /// Crisp outputs for crisp inputs in engine input order. Deterministic:
    /// identical inputs give bit-identical outputs.
    pub fn infer_ordered(&self, crisp: &[f64]) -> Result<Vec<f64>, FuzzyError> {
        let degrees = self.fuzzify_all(crisp)?;
        // max-aggregated activation per (output, term)
        let mut level: Vec<Vec<f64>> = self
            .outputs
            .iter()
            .map(|v| vec![0.0; v.terms.len()])
            .collect();
        for rule in &self.compiled {
            let mut act: f64 = 1.0;
            for c in &rule.antecedent {
                act = act.min(degrees[c.var][c.term]);
                if act == 0.0 {
                    break;
                }
            }
            if act > 0.0 {
                for &(out, term) in &rule.consequents {
                    if act > level[out][term] {
                        level[out][term] = act;
                    }
                }
            }
        }
        self.outputs
            .iter()
            .zip(&level)
            .map(|(var, levels)| {
                let clipped: Vec<(&str, f64)> = var
                    .terms
                    .iter()
                    .zip(levels)
                    .map(|((l, _), &a)| (l.as_str(), a))
                    .collect();
                defuzzify_centroid(var, &clipped)
            })
            .collect()
    }

    /// Name-keyed convenience wrapper over [`infer_ordered`](Self::infer_ordered).
    pub fn infer(&self, crisp: &HashMap<String, f64>) -> Result<HashMap<String, f64>, FuzzyError> {
        let mut ordered = Vec::with_capacity(self.inputs.len());
        for v in &self.inputs {
            let x = crisp.get(&v.name).ok_or_else(|| FuzzyError::MissingInput {
                variable: v.name.clone(),
            })?;
            ordered.push(*x);
        }
        let out = self.infer_ordered(&ordered)?;
        Ok(self
            .outputs
            .iter()
            .zip(out)
            .map(|(v, x)| (v.name.clone(), x))
            .collect())
    }

    /// Exhaustive sweep of an evenly spaced grid (`grid_resolution` points
    /// per input dimension, endpoints included): records grid points where no
    /// rule fires and antecedent conflicts.
    pub fn validate_rulebase(&self, grid_resolution: usize) -> ValidationReport {
        assert!(grid_resolution >= 2, "grid resolution must be at least 2");
        let axes: Vec<Vec<f64>> = self
            .inputs
            .iter()
            .map(|v| {
                let (lo, hi) = v.universe;
                (0..grid_resolution)
                    .map(|i| lo + (hi - lo) * i as f64 / (grid_resolution - 1) as f64)
                    .collect()
            })
            .collect();

        let mut gaps = Vec::new();
        let dims = self.inputs.len();
        let total = grid_resolution.pow(dims as u32);
        let mut point = vec![0.0; dims];
        for mut flat in 0..total {
            for (d, axis) in axes.iter().enumerate() {
                point[d] = axis[flat % grid_resolution];
                flat /= grid_resolution;
            }
            let degrees = self
                .fuzzify_all(&point)
                .expect("grid points are finite");
            let fired = self.compiled.iter().any(|rule| {
                rule.antecedent
                    .iter()
                    .all(|c| degrees[c.var][c.term] > 0.0)
            });
            if !fired {
                gaps.push(point.clone());
            }
        }

        let conflicts = self.rule_base.conflicts();
        ValidationReport {
            complete: gaps.is_empty(),
            gaps,
            conflicts,
            rule_count: self.rule_base.len(),
            grid_points: total,
        }
    }
}
