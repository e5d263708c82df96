use serde::{Deserialize, Serialize};

use crate::error::NavError;
use crate::geom::{point_segment_distance, Vec2};
use crate::sensors::Obstacle;

/// Maximum deflection passes before the planner accepts a residual
/// intersection (pathological overlapping worlds).
const MAX_PASSES: usize = 16;
/// Waypoint budget; enclosed starts would otherwise deflect forever.
const MAX_WAYPOINTS: usize = 256;
/// Via points sit this factor outside the inflated radius so that sampled
/// arc chords stay clear of the disc.
const VIA_MARGIN: f64 = 1.05;
/// Arc sampling step (rad).
const ARC_STEP: f64 = 0.35;

/// An ordered polyline of waypoints with rough arrival estimates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlannedPath {
    pub waypoints: Vec<Vec2>,
    /// Estimated arrival time per waypoint (s), from the plan's creation
    /// time and a nominal cruise speed.
    pub timestamps: Vec<f64>,
    pub created_at: f64,
}

impl PlannedPath {
    pub fn length(&self) -> f64 {
        self.waypoints.windows(2).map(|w| w[0].distance(w[1])).sum()
    }

    /// Distance from `p` to the nearest point of the polyline.
    pub fn distance_to(&self, p: Vec2) -> f64 {
        if self.waypoints.len() == 1 {
            return p.distance(self.waypoints[0]);
        }
        self.waypoints
            .windows(2)
            .map(|w| point_segment_distance(p, w[0], w[1]))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Straight start-to-goal polyline deflected around inflated obstacle discs
/// via tangent points, with arc samples hugging each disc.
///
/// `inflation` is added to every obstacle radius (robot footprint plus
/// clearance). The goal inside an inflated disc is unreachable; a start
/// inside one gets a radial escape point first.
pub fn plan_path(
    start: Vec2,
    goal: Vec2,
    world: &[Obstacle],
    inflation: f64,
    now: f64,
    nominal_speed: f64,
) -> Result<PlannedPath, NavError> {
    if start.distance(goal) < 1e-9 {
        return Err(NavError::DegeneratePlan);
    }
    let raw: Vec<(Vec2, f64)> = world
        .iter()
        .map(|o| (o.center, o.radius + inflation))
        .collect();
    if raw.iter().any(|&(c, r)| goal.distance(c) < r) {
        return Err(NavError::UnreachableGoal);
    }

    let mut points = vec![start, goal];
    // Nudge the start out of any inflated disc it may already be inside.
    if let Some(&(c, r)) = raw.iter().find(|&&(c, r)| start.distance(c) < r) {
        let dir = if start.distance(c) < 1e-9 {
            (goal - c).normalized()
        } else {
            (start - c).normalized()
        };
        points.insert(1, c + dir * (r * VIA_MARGIN));
    }

    // Overlapping inflated discs leave no corridor between them; tangent
    // detours need each blocker to be a lone circle, so clusters collapse
    // into an enclosing circle unless that would swallow an endpoint.
    // Merged circles can overlap in turn, so run to a fixpoint.
    let mut discs = raw.clone();
    for _ in 0..8 {
        let merged = merge_overlapping(&discs, &[points[0], goal]);
        if merged.len() == discs.len() {
            discs = merged;
            break;
        }
        discs = merged;
    }

    'passes: for _ in 0..MAX_PASSES {
        let mut changed = false;

        // Detour vertices can land inside an overlapping disc; push any
        // interior vertex radially clear before deflecting segments.
        for i in 1..points.len().saturating_sub(1) {
            if let Some(&(c, r)) = discs
                .iter()
                .filter(|&&(c, r)| points[i].distance(c) < r)
                .max_by(|a, b| {
                    let da = a.1 - points[i].distance(a.0);
                    let db = b.1 - points[i].distance(b.0);
                    da.partial_cmp(&db).unwrap()
                })
            {
                let dir = if points[i].distance(c) < 1e-9 {
                    (goal - c).normalized()
                } else {
                    (points[i] - c).normalized()
                };
                points[i] = c + dir * (r * VIA_MARGIN);
                changed = true;
            }
        }

        let mut i = 0;
        while i + 1 < points.len() {
            if points.len() >= MAX_WAYPOINTS {
                break 'passes;
            }
            let (p, q) = (points[i], points[i + 1]);
            if let Some(&(c, r)) = deepest_blocking_disc(p, q, &discs) {
                let detour = detour_points(p, q, c, r * VIA_MARGIN);
                if detour.is_empty() {
                    i += 1;
                    continue;
                }
                points.splice(i + 1..i + 1, detour);
                changed = true;
            }
            i += 1;
        }
        if !changed {
            break;
        }
    }

    // Clusters that could not merge (an endpoint sat inside the enclosing
    // circle) can leave residual intrusions; push the polyline out of the
    // raw inflated discs point by point.
    repair_intrusions(&mut points, &raw, goal);

    // Drop consecutive duplicates.
    points.dedup_by(|a, b| a.distance(*b) < 1e-9);

    let mut timestamps = Vec::with_capacity(points.len());
    let mut t = now;
    timestamps.push(t);
    for w in points.windows(2) {
        t += w[0].distance(w[1]) / nominal_speed.max(1e-6);
        timestamps.push(t);
    }
    Ok(PlannedPath {
        waypoints: points,
        timestamps,
        created_at: now,
    })
}

/// Elastic-band cleanup: projects interior vertices out of any disc they
/// sit in and splits segments that still cut into a disc, inserting the
/// projected near-point. Endpoints stay fixed.
fn repair_intrusions(points: &mut Vec<Vec2>, discs: &[(Vec2, f64)], goal: Vec2) {
    for _ in 0..32 {
        let mut dirty = false;
        for i in 1..points.len().saturating_sub(1) {
            if let Some(&(c, r)) = discs
                .iter()
                .filter(|&&(c, r)| points[i].distance(c) < r)
                .max_by(|a, b| {
                    let da = a.1 - points[i].distance(a.0);
                    let db = b.1 - points[i].distance(b.0);
                    da.partial_cmp(&db).unwrap()
                })
            {
                let dir = if points[i].distance(c) < 1e-9 {
                    (goal - c).normalized()
                } else {
                    (points[i] - c).normalized()
                };
                points[i] = c + dir * (r * VIA_MARGIN);
                dirty = true;
            }
        }
        let mut i = 0;
        while i + 1 < points.len() && points.len() < MAX_WAYPOINTS {
            let (p, q) = (points[i], points[i + 1]);
            if let Some(&(c, r)) = deepest_blocking_disc(p, q, discs) {
                // insert the segment's near-point pushed out radially
                let ab = q - p;
                let t = ((c - p).dot(ab) / ab.norm_sq()).clamp(0.0, 1.0);
                let near = p + ab * t;
                let dir = if near.distance(c) < 1e-9 {
                    ab.normalized().perp()
                } else {
                    (near - c).normalized()
                };
                points.insert(i + 1, c + dir * (r * VIA_MARGIN));
                dirty = true;
            }
            i += 1;
        }
        if !dirty {
            break;
        }
    }
}

/// Clusters mutually overlapping discs and replaces each cluster by an
/// enclosing circle. A cluster whose enclosing circle would contain one of
/// `keep_out` (start/goal) stays unmerged.
fn merge_overlapping(discs: &[(Vec2, f64)], keep_out: &[Vec2]) -> Vec<(Vec2, f64)> {
    let n = discs.len();
    let mut cluster: Vec<usize> = (0..n).collect();
    fn root(cluster: &mut Vec<usize>, i: usize) -> usize {
        let mut r = i;
        while cluster[r] != r {
            r = cluster[r];
        }
        let mut c = i;
        while cluster[c] != r {
            let next = cluster[c];
            cluster[c] = r;
            c = next;
        }
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if discs[i].0.distance(discs[j].0) < discs[i].1 + discs[j].1 {
                let (a, b) = (root(&mut cluster, i), root(&mut cluster, j));
                cluster[a] = b;
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut group_of = vec![usize::MAX; n];
    for i in 0..n {
        let r = root(&mut cluster, i);
        if group_of[r] == usize::MAX {
            group_of[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[group_of[r]].push(i);
    }

    let mut out = Vec::new();
    for members in &groups {
        if members.len() == 1 {
            out.push(discs[members[0]]);
            continue;
        }
        let (c, r) = enclosing_circle(members.iter().map(|&i| discs[i]));
        if keep_out.iter().any(|p| p.distance(c) < r) {
            out.extend(members.iter().map(|&i| discs[i]));
        } else {
            out.push((c, r));
        }
    }
    out
}

/// Approximate smallest circle containing all given circles
/// (Badoiu-Clarkson style iteration on the farthest boundary point).
fn enclosing_circle(circles: impl Iterator<Item = (Vec2, f64)> + Clone) -> (Vec2, f64) {
    let mut center = Vec2::ZERO;
    let mut count = 0.0;
    for (c, _) in circles.clone() {
        center = center + c;
        count += 1.0;
    }
    center = center * (1.0 / count);
    for k in 1..=64usize {
        let (far_c, far_r, dist) = circles
            .clone()
            .map(|(c, r)| (c, r, center.distance(c) + r))
            .max_by(|a, b| a.2.partial_cmp(&b.2).unwrap())
            .expect("non-empty cluster");
        let dir = if center.distance(far_c) < 1e-12 {
            Vec2::new(1.0, 0.0)
        } else {
            (far_c - center).normalized()
        };
        let far_point = far_c + dir * far_r;
        center = center + (far_point - center) * (1.0 / (k as f64 + 1.0));
        let _ = dist;
    }
    let radius = circles
        .map(|(c, r)| center.distance(c) + r)
        .fold(0.0, f64::max);
    (center, radius * (1.0 + 1e-9))
}

fn deepest_blocking_disc<'a>(
    p: Vec2,
    q: Vec2,
    discs: &'a [(Vec2, f64)],
) -> Option<&'a (Vec2, f64)> {
    discs
        .iter()
        .filter(|&&(c, r)| segment_hits_disc(p, q, c, r))
        .max_by(|a, b| {
            let pa = a.1 - point_segment_distance(a.0, p, q);
            let pb = b.1 - point_segment_distance(b.0, p, q);
            pa.partial_cmp(&pb).unwrap()
        })
}

fn segment_hits_disc(p: Vec2, q: Vec2, c: Vec2, r: f64) -> bool {
    point_segment_distance(c, p, q) < r - 1e-12
}

/// Tangent-entry, arc-hug, tangent-exit via points around one disc, on the
/// side away from the disc center's offset from the segment.
fn detour_points(p: Vec2, q: Vec2, c: Vec2, r: f64) -> Vec<Vec2> {
    let lp = p.distance(c);
    let lq = q.distance(c);
    if lp < 1e-9 || lq < 1e-9 {
        return Vec::new();
    }
    // +1: pass clockwise around the disc (disc offset to the left), -1 the
    // mirror; ties pass clockwise.
    let side = if (q - p).cross(c - p) >= 0.0 { 1.0 } else { -1.0 };
    let spread_p = (r / lp).min(1.0).acos();
    let spread_q = (r / lq).min(1.0).acos();
    let angle_p = (p - c).angle() + side * spread_p;
    let angle_q = (q - c).angle() - side * spread_q;

    let mut out = vec![c + Vec2::from_angle(angle_p) * r];
    // shorter arc between the two touch angles
    let mut delta = crate::model::wrap_angle(angle_q - angle_p);
    if delta == 0.0 {
        delta = 1e-9;
    }
    let steps = (delta.abs() / ARC_STEP).ceil() as usize;
    for k in 1..steps {
        let a = angle_p + delta * k as f64 / steps as f64;
        out.push(c + Vec2::from_angle(a) * r);
    }
    out.push(c + Vec2::from_angle(angle_q) * r);
    out
}

/// Distance from each actual sample to the nearest point of the planned
/// polyline.
pub fn tracking_error(planned: &PlannedPath, actual: &[Vec2]) -> Vec<f64> {
    actual.iter().map(|&p| planned.distance_to(p)).collect()
}
