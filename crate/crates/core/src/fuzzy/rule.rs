use serde::{Deserialize, Serialize};

/// One if-then rule over named variables. Antecedent clauses are joined by
/// AND; consequents assign one term per referenced output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rule {
    /// `(variable, term)` clauses.
    #[serde(rename = "if")]
    pub antecedent: Vec<(String, String)>,
    /// `(output variable, term)` assignments.
    #[serde(rename = "then")]
    pub consequents: Vec<(String, String)>,
}

impl Rule {
    pub fn new(antecedent: &[(&str, &str)], consequents: &[(&str, &str)]) -> Self {
        let own = |xs: &[(&str, &str)]| {
            xs.iter()
                .map(|(a, b)| ((*a).to_owned(), (*b).to_owned()))
                .collect()
        };
        Self {
            antecedent: own(antecedent),
            consequents: own(consequents),
        }
    }

    /// Order-insensitive key for conflict detection.
    pub fn antecedent_key(&self) -> Vec<(String, String)> {
        let mut k = self.antecedent.clone();
        k.sort();
        k
    }

    pub fn consequent_key(&self) -> Vec<(String, String)> {
        let mut k = self.consequents.clone();
        k.sort();
        k
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct RuleBase {
    pub rules: Vec<Rule>,
}

impl RuleBase {
    pub fn new(rules: Vec<Rule>) -> Self {
        Self { rules }
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Pairs of rule indices sharing an antecedent but disagreeing on the
    /// consequents.
    pub fn conflicts(&self) -> Vec<(usize, usize)> {
        let keys: Vec<_> = self
            .rules
            .iter()
            .map(|r| (r.antecedent_key(), r.consequent_key()))
            .collect();
        let mut out = Vec::new();
        for i in 0..keys.len() {
            for j in i + 1..keys.len() {
                if keys[i].0 == keys[j].0 && keys[i].1 != keys[j].1 {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Result of the exhaustive grid sweep over the input space.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub complete: bool,
    /// Input vectors (one value per input variable, in engine order) where no
    /// rule fired.
    pub gaps: Vec<Vec<f64>>,
    /// Conflicting rule index pairs.
    pub conflicts: Vec<(usize, usize)>,
    pub rule_count: usize,
    pub grid_points: usize,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.complete && self.conflicts.is_empty()
    }
}
