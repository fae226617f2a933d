use std::fmt::Write;

use crate::error::{Error, Result};
use crate::model::{build_distance_matrix, check_solution_feasibility, Instance, Node, Solution};

const CANVAS: f64 = 1000.0;
const MARGIN: f64 = 40.0;

const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
];

fn route_colour(index: usize) -> String {
    match PALETTE.get(index) {
        Some(c) => (*c).to_owned(),
        // Golden-angle hue steps keep later colours apart.
        None => format!("hsl({:.1},70%,40%)", (index as f64 * 137.508) % 360.0),
    }
}

/// Maps instance coordinates into the square canvas, keeping the aspect
/// ratio, centring the drawing and pointing y up.
struct Frame {
    min_x: f64,
    max_y: f64,
    scale: f64,
    pad_x: f64,
    pad_y: f64,
}

impl Frame {
    fn fit(instance: &Instance) -> Self {
        let (mut min_x, mut max_x, mut min_y, mut max_y) =
            (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for v in instance.vertices() {
            min_x = min_x.min(v.x);
            max_x = max_x.max(v.x);
            min_y = min_y.min(v.y);
            max_y = max_y.max(v.y);
        }
        let (w, h) = (max_x - min_x, max_y - min_y);
        let span = w.max(h);
        let avail = CANVAS - 2.0 * MARGIN;
        let scale = if span > 0.0 { avail / span } else { 1.0 };
        Frame {
            min_x,
            max_y,
            scale,
            pad_x: MARGIN + 0.5 * (avail - w * scale),
            pad_y: MARGIN + 0.5 * (avail - h * scale),
        }
    }

    fn map(&self, v: &Node) -> (f64, f64) {
        (
            self.pad_x + (v.x - self.min_x) * self.scale,
            self.pad_y + (self.max_y - v.y) * self.scale,
        )
    }
}

/// Renders `solution` as a standalone SVG document.
///
/// One polyline per route (depot → customers → depot), a square depot
/// marker, and a labelled circle per customer. Byte-identical for identical
/// input. Infeasible solutions are refused.
pub fn emit_svg(solution: &Solution, instance: &Instance) -> Result<String> {
    let matrix = build_distance_matrix(instance);
    let violations = check_solution_feasibility(solution, instance, &matrix);
    if !violations.is_empty() {
        return Err(Error::InfeasibleSolution(violations));
    }
    let frame = Frame::fit(instance);
    let mut svg = String::new();
    let w = &mut svg;

    // Writing to a String cannot fail.
    let _ = writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {CANVAS} {CANVAS}" width="{CANVAS}" height="{CANVAS}">"#
    );
    let _ = writeln!(
        w,
        "<title>{} ({}, cost {:.3})</title>",
        escape(&instance.name),
        solution.method,
        solution.total_cost
    );

    let _ = writeln!(w, r#"<g fill="none" stroke-width="3" stroke-linejoin="round">"#);
    let depot = frame.map(&instance.depot);
    for (r, route) in solution.routes.iter().enumerate() {
        let mut points = vec![depot];
        for &id in &route.customer_ids {
            let node = instance
                .customer(id)
                .expect("feasible solution only visits known customers");
            points.push(frame.map(node));
        }
        points.push(depot);
        let coords: Vec<String> = points.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let _ = writeln!(
            w,
            r#"<polyline class="route" data-route="{r}" stroke="{}" points="{}"/>"#,
            route_colour(r),
            coords.join(" ")
        );
    }
    let _ = writeln!(w, "</g>");

    let _ = writeln!(
        w,
        r#"<rect class="depot" x="{:.2}" y="{:.2}" width="16" height="16" fill="black"/>"#,
        depot.0 - 8.0,
        depot.1 - 8.0
    );
    let _ = writeln!(w, r#"<g font-family="sans-serif" font-size="12">"#);
    for c in &instance.customers {
        let (x, y) = frame.map(c);
        let _ = writeln!(
            w,
            r##"<circle class="customer" cx="{x:.2}" cy="{y:.2}" r="6" fill="white" stroke="#333"/>"##
        );
        let _ = writeln!(
            w,
            r#"<text x="{:.2}" y="{:.2}">{} ({})</text>"#,
            x + 8.0,
            y - 8.0,
            c.id,
            trim(c.demand)
        );
    }
    let _ = writeln!(w, "</g>");
    let _ = writeln!(w, "</svg>");
    Ok(svg)
}

fn trim(v: f64) -> String {
    let s = format!("{v:.2}");
    s.trim_end_matches('0').trim_end_matches('.').to_owned()
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
