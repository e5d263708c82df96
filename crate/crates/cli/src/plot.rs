//! Hand-rolled SVG renderers for the three standard views: world/path,
//! commanded and actual wheel speeds over time, and tracking error with
//! replan markers.

use std::fmt::Write as _;

use fuzznav::geom::Vec2;
use fuzznav::sim::{tracking_series, SimEvent, TrajectoryLog};

const W: f64 = 860.0;
const H: f64 = 640.0;
const MARGIN: f64 = 56.0;

struct Frame {
    min: Vec2,
    max: Vec2,
}

impl Frame {
    fn grow(&mut self, p: Vec2) {
        self.min.x = self.min.x.min(p.x);
        self.min.y = self.min.y.min(p.y);
        self.max.x = self.max.x.max(p.x);
        self.max.y = self.max.y.max(p.y);
    }

    fn pad(&mut self, m: f64) {
        self.min = self.min - Vec2::new(m, m);
        self.max = self.max + Vec2::new(m, m);
    }

    /// World point to SVG pixel (y flipped), preserving aspect ratio.
    fn map(&self, p: Vec2) -> (f64, f64) {
        let span = self.max - self.min;
        let scale = ((W - 2.0 * MARGIN) / span.x).min((H - 2.0 * MARGIN) / span.y);
        (
            MARGIN + (p.x - self.min.x) * scale,
            H - MARGIN - (p.y - self.min.y) * scale,
        )
    }
}

fn fmt2(v: f64) -> String {
    format!("{:.2}", v)
}

fn polyline(out: &mut String, pts: impl Iterator<Item = (f64, f64)>, style: &str) {
    let coords: Vec<String> = pts.map(|(x, y)| format!("{},{}", fmt2(x), fmt2(y))).collect();
    let _ = writeln!(
        out,
        r#"<polyline fill="none" {} points="{}"/>"#,
        style,
        coords.join(" ")
    );
}

fn header(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(out, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="16">{}</text>"#,
        MARGIN, title
    );
}

/// World view: obstacles, planned path(s), executed trajectory, start and
/// goal markers.
pub fn path_svg(log: &TrajectoryLog) -> String {
    let mut frame = Frame {
        min: Vec2::new(f64::INFINITY, f64::INFINITY),
        max: Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
    };
    for k in &log.ticks {
        frame.grow(k.pose.position());
    }
    for p in &log.plans {
        for &w in &p.waypoints {
            frame.grow(w);
        }
    }
    for o in &log.obstacles {
        frame.grow(o.center + Vec2::new(o.radius, o.radius));
        frame.grow(o.center - Vec2::new(o.radius, o.radius));
    }
    frame.grow(log.goal);
    frame.pad(0.8);

    let mut out = String::new();
    header(&mut out, "planned path vs. executed trajectory");
    for o in &log.obstacles {
        let (cx, cy) = frame.map(o.center);
        let (rx, _) = frame.map(o.center + Vec2::new(o.radius, 0.0));
        let style = if o.is_moving() {
            r#"fill="#f2c9c9" stroke="#c66""#
        } else {
            r#"fill="#d9d9d9" stroke="#888""#
        };
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="{}" {}/>"#,
            fmt2(cx),
            fmt2(cy),
            fmt2(rx - cx),
            style
        );
    }
    // moving obstacles at their final positions, hollow
    for o in log.final_obstacles.iter().filter(|o| o.is_moving()) {
        let (cx, cy) = frame.map(o.center);
        let (rx, _) = frame.map(o.center + Vec2::new(o.radius, 0.0));
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="{}" fill="none" stroke="#c66" stroke-dasharray="4 3"/>"#,
            fmt2(cx),
            fmt2(cy),
            fmt2(rx - cx)
        );
    }
    for (i, plan) in log.plans.iter().enumerate() {
        let style = if i == 0 {
            r#"stroke="#2a7" stroke-width="2" stroke-dasharray="7 4""#
        } else {
            r#"stroke="#9c6" stroke-width="1" stroke-dasharray="4 4""#
        };
        polyline(
            &mut out,
            plan.waypoints.iter().map(|&p| frame.map(p)),
            style,
        );
    }
    polyline(
        &mut out,
        log.ticks.iter().map(|k| frame.map(k.pose.position())),
        r#"stroke="#226" stroke-width="2" class="trajectory""#,
    );
    let (sx, sy) = frame.map(log.ticks[0].pose.position());
    let (gx, gy) = frame.map(log.goal);
    let _ = writeln!(
        out,
        r#"<circle cx="{}" cy="{}" r="5" fill="#226"/><circle cx="{}" cy="{}" r="6" fill="none" stroke="#2a7" stroke-width="2.5"/>"#,
        fmt2(sx),
        fmt2(sy),
        fmt2(gx),
        fmt2(gy)
    );
    out.push_str("</svg>\n");
    out
}

/// Time-series helper mapping (t, value) into the chart area.
struct Chart {
    t_max: f64,
    v_min: f64,
    v_max: f64,
}

impl Chart {
    fn map(&self, t: f64, v: f64) -> (f64, f64) {
        let x = MARGIN + (t / self.t_max.max(1e-9)) * (W - 2.0 * MARGIN);
        let span = (self.v_max - self.v_min).max(1e-9);
        let y = H - MARGIN - ((v - self.v_min) / span) * (H - 2.0 * MARGIN);
        (x, y)
    }

    fn axes(&self, out: &mut String, y_label: &str) {
        let _ = writeln!(
            out,
            r#"<line x1="{m}" y1="{b}" x2="{r}" y2="{b}" stroke="#444"/><line x1="{m}" y1="{t}" x2="{m}" y2="{b}" stroke="#444"/>"#,
            m = MARGIN,
            r = W - MARGIN,
            t = MARGIN,
            b = H - MARGIN
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12">t (s), 0..{:.1}</text>"#,
            W - MARGIN - 120.0,
            H - MARGIN + 28.0,
            self.t_max
        );
        let _ = writeln!(
            out,
            r#"<text x="8" y="{}" font-family="sans-serif" font-size="12">{} {:.2}..{:.2}</text>"#,
            MARGIN - 12.0,
            y_label,
            self.v_min,
            self.v_max
        );
    }
}

/// Commanded and actual wheel speeds over time.
pub fn speeds_svg(log: &TrajectoryLog) -> String {
    let t_max = log.ticks.last().map(|k| k.t).unwrap_or(1.0);
    let mut v_min = 0.0f64;
    let mut v_max = 0.0f64;
    for k in &log.ticks {
        for v in [k.cmd.omega_left, k.cmd.omega_right, k.left.omega, k.right.omega] {
            v_min = v_min.min(v);
            v_max = v_max.max(v);
        }
    }
    let chart = Chart {
        t_max,
        v_min: v_min - 1.0,
        v_max: v_max + 1.0,
    };
    let mut out = String::new();
    header(&mut out, "wheel speeds: commanded vs. actual (rad/s)");
    chart.axes(&mut out, "rad/s");
    let series: [(&str, Box<dyn Fn(&fuzznav::sim::Tick) -> f64>); 4] = [
        (r##"stroke="#c62" stroke-width="1.7""##, Box::new(|k| k.cmd.omega_left)),
        (r##"stroke="#26c" stroke-width="1.7""##, Box::new(|k| k.cmd.omega_right)),
        (
            r##"stroke="#c62" stroke-width="1" stroke-dasharray="3 3""##,
            Box::new(|k| k.left.omega),
        ),
        (
            r##"stroke="#26c" stroke-width="1" stroke-dasharray="3 3""##,
            Box::new(|k| k.right.omega),
        ),
    ];
    for (style, f) in &series {
        polyline(
            &mut out,
            log.ticks.iter().map(|k| chart.map(k.t, f(k))),
            style,
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{}" y="40" font-family="sans-serif" font-size="12" fill="#c62">left</text><text x="{}" y="40" font-family="sans-serif" font-size="12" fill="#26c">right</text>"#,
        MARGIN,
        MARGIN + 40.0
    );
    out.push_str("</svg>\n");
    out
}

/// Tracking error against the active plan, with replan markers.
pub fn tracking_svg(log: &TrajectoryLog) -> String {
    let series = tracking_series(log);
    let t_max = series.last().map(|&(t, _)| t).unwrap_or(1.0);
    let e_max = series.iter().map(|&(_, e)| e).fold(0.0f64, f64::max);
    let chart = Chart {
        t_max,
        v_min: 0.0,
        v_max: (e_max * 1.15).max(0.1),
    };
    let mut out = String::new();
    header(&mut out, "tracking error (m) with replan markers");
    chart.axes(&mut out, "m");
    for e in &log.events {
        if let SimEvent::Replan { t } = e {
            let (x, _) = chart.map(*t, 0.0);
            let _ = writeln!(
                out,
                r#"<line x1="{x}" y1="{}" x2="{x}" y2="{}" stroke="#2a7" stroke-dasharray="2 4"/>"#,
                MARGIN,
                H - MARGIN,
                x = fmt2(x)
            );
        }
    }
    polyline(
        &mut out,
        series.iter().map(|&(t, e)| chart.map(t, e)),
        r##"stroke="#a22" stroke-width="1.7""##,
    );
    out.push_str("</svg>\n");
    out
}
