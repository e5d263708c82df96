use super::error::FuzzyError;
use super::membership::MembershipFunction;
use super::variable::LinguisticVariable;

/// Area and first moment of `min(mf, level)` over the universe.
///
/// The clipped set is still piecewise linear, so both integrals are exact:
/// the set's breakpoints plus the clip crossings split the universe into
/// segments on which the integrand is a straight line.
pub fn clipped_area_moment(
    mf: &MembershipFunction,
    universe: (f64, f64),
    level: f64,
) -> (f64, f64) {
    let (lo, hi) = universe;
    let level = level.clamp(0.0, 1.0);
    if level == 0.0 {
        return (0.0, 0.0);
    }
    let mut xs: Vec<f64> = vec![lo, hi];
    for p in mf.breakpoints() {
        if p > lo && p < hi {
            xs.push(p);
        }
    }
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs.dedup();

    let mut area = 0.0;
    let mut moment = 0.0;
    for w in xs.windows(2) {
        let (x0, x1) = (w[0], w[1]);
        if x1 <= x0 {
            continue;
        }
        let (y0, y1) = (mf.degree(x0), mf.degree(x1));
        // Split where the raw line crosses the clip level.
        let mut pieces = [(x0, y0.min(level), x1, y1.min(level)), (0.0, 0.0, 0.0, 0.0)];
        let mut n = 1;
        if (y0 - level) * (y1 - level) < 0.0 {
            let xc = x0 + (level - y0) * (x1 - x0) / (y1 - y0);
            pieces[0] = (x0, y0.min(level), xc, level);
            pieces[1] = (xc, level, x1, y1.min(level));
            n = 2;
        }
        for &(a, ya, b, yb) in pieces.iter().take(n) {
            let (da, dm) = segment_area_moment(a, ya, b, yb);
            area += da;
            moment += dm;
        }
    }
    (area, moment)
}

/// Integrals of the straight line through `(x0, y0)-(x1, y1)`:
/// `∫ y dx` and `∫ x·y dx`.
fn segment_area_moment(x0: f64, y0: f64, x1: f64, y1: f64) -> (f64, f64) {
    let w = x1 - x0;
    if w <= 0.0 {
        return (0.0, 0.0);
    }
    let area = 0.5 * (y0 + y1) * w;
    // y(x) = y0 + s (x - x0) with s = (y1 - y0) / w
    let s = (y1 - y0) / w;
    let m = y0 * 0.5 * (x1 * x1 - x0 * x0)
        + s * ((x1.powi(3) - x0.powi(3)) / 3.0 - x0 * 0.5 * (x1 * x1 - x0 * x0));
    (area, m)
}

/// Crisp output by the area-weighted-centroid rule: each consequent term is
/// clipped at its activation, the clipped areas and their own centroid
/// abscissas are combined as `Σ AᵢWᵢ / Σ Aᵢ`. Overlapping terms contribute
/// independently.
pub fn defuzzify_centroid(
    output_var: &LinguisticVariable,
    clipped: &[(&str, f64)],
) -> Result<f64, FuzzyError> {
    let mut any_active = false;
    let mut total_area = 0.0;
    let mut total_moment = 0.0;
    for &(label, activation) in clipped {
        let idx = output_var
            .term_index(label)
            .ok_or_else(|| FuzzyError::UnknownTerm {
                variable: output_var.name.clone(),
                term: label.to_owned(),
            })?;
        if activation <= 0.0 {
            continue;
        }
        any_active = true;
        let (a, m) =
            clipped_area_moment(&output_var.terms[idx].1, output_var.universe, activation);
        total_area += a;
        total_moment += m;
    }
    if !any_active {
        return Err(FuzzyError::NoRuleFired {
            variable: output_var.name.clone(),
        });
    }
    if total_area <= 0.0 {
        return Err(FuzzyError::ZeroArea {
            variable: output_var.name.clone(),
        });
    }
    Ok(total_moment / total_area)
}
