//! Minimal self-contained SVG rendering for sweep output. No dependencies,
//! fixed layout, deterministic text, so plot files are byte-stable.

use std::fmt::Write as _;

use cvteleport_core::SweepAxis;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 620.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 390.0;

/// Fidelity of the entangled channel at its measured operating point; drawn
/// as a cross so the classical curve can be compared against it.
const MARK_FIDELITY: f64 = 0.85;

fn fmt2(x: f64) -> String {
    format!("{x:.2}")
}

/// Renders the sweep as an SVG line chart with the measured operating point
/// marked. `rows` must be ordered by abscissa, as the sweep returns them.
pub fn render_sweep(rows: &[(f64, f64)], axis: SweepAxis) -> String {
    let lo = rows.first().map(|r| r.0).unwrap_or(0.0);
    let hi = rows.last().map(|r| r.0).unwrap_or(1.0);
    let span = (hi - lo).max(f64::MIN_POSITIVE);
    let px = |x: f64| LEFT + (x - lo) / span * (RIGHT - LEFT);
    let py = |f: f64| BOTTOM - f.clamp(0.0, 1.0) * (BOTTOM - TOP);

    let (x_label, mark_at) = match axis {
        SweepAxis::TauDb => ("input mixedness (dB)", 2.39),
        SweepAxis::AntisqueezeDb => ("input antisqueezing (dB)", 5.06),
    };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(svg, "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>");
    let _ = writeln!(
        svg,
        "<text x=\"{}\" y=\"18\" font-family=\"sans-serif\" font-size=\"14\" \
         text-anchor=\"middle\">classical-channel fidelity</text>",
        (LEFT + RIGHT) / 2.0
    );

    // Axes.
    let _ = writeln!(
        svg,
        "<path d=\"M {LEFT} {TOP} L {LEFT} {BOTTOM} L {RIGHT} {BOTTOM}\" \
         fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>"
    );

    // Y ticks every 0.25 fidelity.
    for i in 0..=4 {
        let f = f64::from(i) * 0.25;
        let y = py(f);
        let _ = writeln!(
            svg,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{LEFT}\" y2=\"{}\" stroke=\"black\"/>",
            LEFT - 5.0,
            fmt2(y),
            fmt2(y)
        );
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" \
             text-anchor=\"end\">{}</text>",
            LEFT - 9.0,
            fmt2(y + 4.0),
            fmt2(f)
        );
    }

    // X ticks at five even stops.
    for i in 0..=4 {
        let x_val = lo + f64::from(i) / 4.0 * (hi - lo);
        let x = px(x_val);
        let _ = writeln!(
            svg,
            "<line x1=\"{}\" y1=\"{BOTTOM}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>",
            fmt2(x),
            fmt2(x),
            BOTTOM + 5.0
        );
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" \
             text-anchor=\"middle\">{}</text>",
            fmt2(x),
            BOTTOM + 18.0,
            fmt2(x_val)
        );
    }

    // Axis labels.
    let _ = writeln!(
        svg,
        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" \
         text-anchor=\"middle\">{x_label}</text>",
        (LEFT + RIGHT) / 2.0,
        BOTTOM + 40.0
    );
    let _ = writeln!(
        svg,
        "<text x=\"18\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" \
         text-anchor=\"middle\" transform=\"rotate(-90 18 {})\">fidelity</text>",
        (TOP + BOTTOM) / 2.0,
        (TOP + BOTTOM) / 2.0
    );

    // The sweep itself.
    let points: Vec<String> = rows
        .iter()
        .map(|&(x, f)| format!("{},{}", fmt2(px(x)), fmt2(py(f))))
        .collect();
    let _ = writeln!(
        svg,
        "<polyline points=\"{}\" fill=\"none\" stroke=\"#1f6feb\" stroke-width=\"1.5\"/>",
        points.join(" ")
    );

    // Measured operating point, when it falls inside the plotted range.
    if (lo..=hi).contains(&mark_at) {
        let cx = px(mark_at);
        let cy = py(MARK_FIDELITY);
        for (dx, dy) in [(5.0, 5.0), (5.0, -5.0)] {
            let _ = writeln!(
                svg,
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" \
                 stroke=\"#d1242f\" stroke-width=\"1.8\"/>",
                fmt2(cx - dx),
                fmt2(cy - dy),
                fmt2(cx + dx),
                fmt2(cy + dy)
            );
        }
    }

    svg.push_str("</svg>\n");
    svg
}
