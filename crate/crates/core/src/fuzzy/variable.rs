use serde::{Deserialize, Serialize};

use super::error::FuzzyError;
use super::membership::MembershipFunction;

/// A named crisp quantity partitioned into overlapping fuzzy terms.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LinguisticVariable {
    pub name: String,
    /// Closed interval `[lo, hi]` the variable lives on.
    pub universe: (f64, f64),
    /// Unit annotation, informational only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
    /// Ordered `(label, set)` pairs.
    pub terms: Vec<(String, MembershipFunction)>,
}

impl LinguisticVariable {
    pub fn new(
        name: impl Into<String>,
        universe: (f64, f64),
        unit: Option<&str>,
        terms: Vec<(&str, MembershipFunction)>,
    ) -> Result<Self, FuzzyError> {
        let var = Self {
            name: name.into(),
            universe,
            unit: unit.map(str::to_owned),
            terms: terms
                .into_iter()
                .map(|(l, m)| (l.to_owned(), m))
                .collect(),
        };
        var.validate()?;
        Ok(var)
    }

    /// Unique labels, supports inside the universe, and full coverage
    /// (`max` degree positive everywhere on the universe).
    pub fn validate(&self) -> Result<(), FuzzyError> {
        let err = |detail: String| FuzzyError::InvalidVariable {
            variable: self.name.clone(),
            detail,
        };
        let (lo, hi) = self.universe;
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(err(format!("bad universe [{lo}, {hi}]")));
        }
        if self.terms.is_empty() {
            return Err(err("no terms".into()));
        }
        for (i, (label, mf)) in self.terms.iter().enumerate() {
            mf.validated()?;
            if self.terms[..i].iter().any(|(l, _)| l == label) {
                return Err(err(format!("duplicate term label '{label}'")));
            }
            for p in mf.breakpoints() {
                if p < lo - 1e-12 || p > hi + 1e-12 {
                    return Err(err(format!(
                        "term '{label}' breakpoint {p} outside universe [{lo}, {hi}]"
                    )));
                }
            }
        }
        if let Some(gap) = self.coverage_gap() {
            return Err(err(format!("coverage gap near x = {gap}")));
        }
        Ok(())
    }

    /// Degree of every term at `x` (clamped to the universe), in term order.
    pub fn fuzzify(&self, x: f64) -> Result<Vec<(String, f64)>, FuzzyError> {
        Ok(self
            .degrees(x)?
            .into_iter()
            .enumerate()
            .map(|(i, d)| (self.terms[i].0.clone(), d))
            .collect())
    }

    /// Same as [`fuzzify`](Self::fuzzify) without the labels; hot-path form.
    pub fn degrees(&self, x: f64) -> Result<Vec<f64>, FuzzyError> {
        if !x.is_finite() {
            return Err(FuzzyError::NonFiniteInput {
                variable: self.name.clone(),
            });
        }
        let xc = x.clamp(self.universe.0, self.universe.1);
        Ok(self.terms.iter().map(|(_, mf)| mf.degree(xc)).collect())
    }

    pub fn term_index(&self, label: &str) -> Option<usize> {
        self.terms.iter().position(|(l, _)| l == label)
    }

    /// A point where no term has positive degree, if one exists.
    ///
    /// The max of piecewise-linear sets restricted to the span between two
    /// adjacent breakpoints is zero somewhere iff it is zero at an endpoint
    /// or at the midpoint, so checking those points is exact.
    fn coverage_gap(&self) -> Option<f64> {
        let (lo, hi) = self.universe;
        let mut xs: Vec<f64> = vec![lo, hi];
        for (_, mf) in &self.terms {
            for p in mf.breakpoints() {
                if p > lo && p < hi {
                    xs.push(p);
                }
            }
        }
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        xs.dedup();
        let covered = |x: f64| self.terms.iter().any(|(_, mf)| mf.degree(x) > 0.0);
        for w in xs.windows(2) {
            if !covered(w[0]) {
                return Some(w[0]);
            }
            let mid = 0.5 * (w[0] + w[1]);
            if !covered(mid) {
                return Some(mid);
            }
        }
        if !covered(hi) {
            return Some(hi);
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn distance_var() -> LinguisticVariable {
        LinguisticVariable::new(
            "distance",
            (0.0, 10.0),
            Some("m"),
            vec![
                ("near", MembershipFunction::triangle(0.0, 0.0, 4.0).unwrap()),
                ("mid", MembershipFunction::triangle(2.0, 5.0, 8.0).unwrap()),
                ("far", MembershipFunction::right_shoulder(6.0, 10.0).unwrap()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn fuzzify_peak_hits_one() {
        let v = distance_var();
        let d = v.fuzzify(5.0).unwrap();
        assert_eq!(d[1], ("mid".into(), 1.0));
        assert_eq!(d[0].1, 0.0);
    }

    #[test]
    fn fuzzify_clamps_below_universe() {
        let v = distance_var();
        assert_eq!(v.degrees(-3.0).unwrap(), v.degrees(0.0).unwrap());
        assert_eq!(v.degrees(42.0).unwrap(), v.degrees(10.0).unwrap());
    }

    #[test]
    fn crossover_of_mirrored_triangles_is_half() {
        let v = LinguisticVariable::new(
            "x",
            (0.0, 2.0),
            None,
            vec![
                ("a", MembershipFunction::triangle(0.0, 0.0, 2.0).unwrap()),
                ("b", MembershipFunction::triangle(0.0, 2.0, 2.0).unwrap()),
            ],
        )
        .unwrap();
        let d = v.degrees(1.0).unwrap();
        assert_eq!(d, vec![0.5, 0.5]);
    }

    #[test]
    fn non_finite_input_is_error() {
        assert!(distance_var().degrees(f64::NAN).is_err());
    }

    #[test]
    fn coverage_gap_detected() {
        let r = LinguisticVariable::new(
            "gappy",
            (0.0, 10.0),
            None,
            vec![
                ("lo", MembershipFunction::triangle(0.0, 0.0, 3.0).unwrap()),
                ("hi", MembershipFunction::right_shoulder(7.0, 9.0).unwrap()),
            ],
        );
        assert!(matches!(r, Err(FuzzyError::InvalidVariable { .. })));
    }

    #[test]
    fn touching_supports_gap_at_a_point() {
        // Supports touch at x=3 where both degrees are exactly zero.
        let r = LinguisticVariable::new(
            "touchy",
            (0.0, 6.0),
            None,
            vec![
                ("lo", MembershipFunction::triangle(0.0, 0.0, 3.0).unwrap()),
                ("hi", MembershipFunction::triangle(3.0, 6.0, 6.0).unwrap()),
            ],
        );
        assert!(r.is_err());
    }

    #[test]
    fn duplicate_labels_rejected() {
        let r = LinguisticVariable::new(
            "dup",
            (0.0, 1.0),
            None,
            vec![
                ("a", MembershipFunction::triangle(0.0, 0.0, 1.0).unwrap()),
                ("a", MembershipFunction::triangle(0.0, 1.0, 1.0).unwrap()),
            ],
        );
        assert!(r.is_err());
    }

    #[test]
    fn support_outside_universe_rejected() {
        let r = LinguisticVariable::new(
            "oob",
            (0.0, 1.0),
            None,
            vec![("a", MembershipFunction::triangle(0.0, 0.5, 1.5).unwrap())],
        );
        assert!(r.is_err());
    }
}
