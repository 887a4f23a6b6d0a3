//! SVG picture of a trajectory: a horizontal wall axis with fraction labels
//! and, above each change point, the Young diagram of the new state
//! annotated with its row and column counts.

use std::fmt::Write;

use crate::partition::Partition;
use crate::sign::PredictedTrajectory;
use crate::wallcross::{Trajectory, WallState};

const CELL: f64 = 8.0;
const MARGIN: f64 = 24.0;
const COLUMN_GAP: f64 = 28.0;
const LABEL_BAND: f64 = 48.0;

#[derive(Clone, Copy, Debug)]
pub struct RenderOptions {
    /// Draw a diagram at every wall instead of only at change points.
    pub every_wall: bool,
    pub cell: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            every_wall: false,
            cell: CELL,
        }
    }
}

fn diagram_width(p: &Partition, cell: f64) -> f64 {
    (p.first_part().max(1) as f64) * cell
}

fn diagram_height(p: &Partition, cell: f64) -> f64 {
    (p.len().max(1) as f64) * cell
}

fn draw_diagram(out: &mut String, p: &Partition, x: f64, y: f64, cell: f64) {
    for (i, &row) in p.parts().iter().enumerate() {
        for j in 0..row {
            let _ = writeln!(
                out,
                r#"<rect x="{:.1}" y="{:.1}" width="{cell:.1}" height="{cell:.1}" fill="white" stroke="black" stroke-width="0.6"/>"#,
                x + j as f64 * cell,
                y + i as f64 * cell,
            );
        }
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Renders `t` as a standalone SVG document.
pub fn render_svg(t: &Trajectory, opts: &RenderOptions) -> String {
    let picked: Vec<WallState> = if opts.every_wall {
        t.steps.clone()
    } else {
        t.change_points()
    };
    render_states(&t.start, &picked, opts)
}

/// Renders a predicted interval, starting from `(1^p)`.
pub fn render_prediction(pred: &PredictedTrajectory, opts: &RenderOptions) -> String {
    render_states(&Partition::column(pred.p), &pred.wall_states(), opts)
}

/// Draws `start` followed by one diagram per listed wall.
pub fn render_states(start: &Partition, states: &[WallState], opts: &RenderOptions) -> String {
    let cell = opts.cell;
    let mut columns: Vec<(String, &Partition)> = vec![("start".to_owned(), start)];
    columns.extend(states.iter().map(|s| (s.wall.to_string(), &s.after)));

    let widths: Vec<f64> = columns
        .iter()
        .map(|(_, p)| diagram_width(p, cell).max(40.0))
        .collect();
    let tallest = columns
        .iter()
        .map(|(_, p)| diagram_height(p, cell))
        .fold(0.0, f64::max);
    let total_width =
        MARGIN * 2.0 + widths.iter().sum::<f64>() + COLUMN_GAP * (widths.len() - 1) as f64;
    let axis_y = MARGIN + tallest + 20.0;
    let height = axis_y + LABEL_BAND;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{total_width:.0}" height="{height:.0}" font-family="monospace" font-size="10">"#
    );
    let _ = writeln!(
        out,
        r#"<line x1="{MARGIN}" y1="{axis_y:.1}" x2="{:.1}" y2="{axis_y:.1}" stroke="black"/>"#,
        total_width - MARGIN
    );
    let mut x = MARGIN;
    for ((label, p), w) in columns.iter().zip(&widths) {
        draw_diagram(&mut out, p, x, MARGIN, cell);
        let mid = x + w / 2.0;
        let _ = writeln!(
            out,
            r#"<line x1="{mid:.1}" y1="{:.1}" x2="{mid:.1}" y2="{:.1}" stroke="black"/>"#,
            axis_y - 4.0,
            axis_y + 4.0
        );
        let _ = writeln!(
            out,
            r#"<text x="{mid:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            axis_y + 16.0,
            escape(label)
        );
        let _ = writeln!(
            out,
            r#"<text x="{mid:.1}" y="{:.1}" text-anchor="middle">{} rows {} cols</text>"#,
            axis_y + 30.0,
            p.len(),
            p.first_part()
        );
        let _ = writeln!(
            out,
            r#"<text x="{mid:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            axis_y + 42.0,
            escape(&p.to_string())
        );
        x += w + COLUMN_GAP;
    }
    out.push_str("</svg>\n");
    out
}
