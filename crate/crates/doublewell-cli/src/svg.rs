//! Minimal static SVG line charts for run artifacts: one polyline per
//! chart plus dashed horizontal reference lines (barrier top and well
//! minima for mean-position plots). Deterministic text output.

/// A horizontal reference line with a stroke color.
pub struct RefLine {
    pub y: f64,
    pub color: &'static str,
    pub label: &'static str,
}

const WIDTH: f64 = 860.0;
const HEIGHT: f64 = 480.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 20.0;
const MARGIN_T: f64 = 30.0;
const MARGIN_B: f64 = 50.0;

fn map(
    v: f64,
    lo: f64,
    hi: f64,
    out_lo: f64,
    out_hi: f64,
) -> f64 {
    if hi == lo {
        return 0.5 * (out_lo + out_hi);
    }
    out_lo + (v - lo) / (hi - lo) * (out_hi - out_lo)
}

/// Renders `(times, values)` as a line chart with reference lines included
/// in the y-range.
pub fn line_chart(
    title: &str,
    y_label: &str,
    times: &[f64],
    values: &[f64],
    refs: &[RefLine],
) -> String {
    assert_eq!(times.len(), values.len());
    assert!(!times.is_empty(), "cannot chart an empty series");
    let (t_lo, t_hi) = (times[0], *times.last().unwrap());
    let mut y_lo = f64::INFINITY;
    let mut y_hi = f64::NEG_INFINITY;
    for &v in values.iter().chain(refs.iter().map(|r| &r.y)) {
        y_lo = y_lo.min(v);
        y_hi = y_hi.max(v);
    }
    let pad = 0.05 * (y_hi - y_lo).max(1e-12);
    y_lo -= pad;
    y_hi += pad;

    let x_of = |t: f64| map(t, t_lo, t_hi, MARGIN_L, WIDTH - MARGIN_R);
    let y_of = |v: f64| map(v, y_lo, y_hi, HEIGHT - MARGIN_B, MARGIN_T);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" \
         font-family=\"monospace\" font-size=\"13\">\n"
    ));
    svg.push_str(&format!(
        "  <text x=\"{}\" y=\"20\" text-anchor=\"middle\">{}</text>\n",
        WIDTH / 2.0,
        title
    ));
    // Axes.
    svg.push_str(&format!(
        "  <line x1=\"{MARGIN_L}\" y1=\"{0}\" x2=\"{1}\" y2=\"{0}\" stroke=\"black\"/>\n",
        HEIGHT - MARGIN_B,
        WIDTH - MARGIN_R
    ));
    svg.push_str(&format!(
        "  <line x1=\"{MARGIN_L}\" y1=\"{MARGIN_T}\" x2=\"{MARGIN_L}\" y2=\"{}\" stroke=\"black\"/>\n",
        HEIGHT - MARGIN_B
    ));
    // Axis extent labels.
    svg.push_str(&format!(
        "  <text x=\"{MARGIN_L}\" y=\"{}\" text-anchor=\"middle\">{t_lo:.1}</text>\n",
        HEIGHT - MARGIN_B + 20.0
    ));
    svg.push_str(&format!(
        "  <text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{t_hi:.1}</text>\n",
        WIDTH - MARGIN_R,
        HEIGHT - MARGIN_B + 20.0
    ));
    svg.push_str(&format!(
        "  <text x=\"{}\" y=\"{}\" text-anchor=\"end\">{y_lo:.2}</text>\n",
        MARGIN_L - 6.0,
        HEIGHT - MARGIN_B
    ));
    svg.push_str(&format!(
        "  <text x=\"{}\" y=\"{}\" text-anchor=\"end\">{y_hi:.2}</text>\n",
        MARGIN_L - 6.0,
        MARGIN_T + 5.0
    ));
    svg.push_str(&format!(
        "  <text x=\"{}\" y=\"{}\" text-anchor=\"middle\">t</text>\n",
        WIDTH / 2.0,
        HEIGHT - 10.0
    ));
    svg.push_str(&format!(
        "  <text x=\"18\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {0})\">{y_label}</text>\n",
        HEIGHT / 2.0
    ));
    // Reference lines.
    for r in refs {
        let y = y_of(r.y);
        svg.push_str(&format!(
            "  <line x1=\"{MARGIN_L}\" y1=\"{y:.2}\" x2=\"{}\" y2=\"{y:.2}\" stroke=\"{}\" \
             stroke-dasharray=\"6,4\"/>\n",
            WIDTH - MARGIN_R,
            r.color
        ));
        svg.push_str(&format!(
            "  <text x=\"{}\" y=\"{:.2}\" fill=\"{}\">{}</text>\n",
            WIDTH - MARGIN_R - 70.0,
            y - 4.0,
            r.color,
            r.label
        ));
    }
    // Data polyline.
    let mut points = String::new();
    for (&t, &v) in times.iter().zip(values) {
        points.push_str(&format!("{:.2},{:.2} ", x_of(t), y_of(v)));
    }
    svg.push_str(&format!(
        "  <polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"{}\"/>\n",
        points.trim_end()
    ));
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chart_contains_polyline_and_dashed_references() {
        let times: Vec<f64> = (0..100).map(|i| i as f64 * 0.1).collect();
        let values: Vec<f64> = times.iter().map(|t| t.sin()).collect();
        let svg = line_chart(
            "demo",
            "mean_x",
            &times,
            &values,
            &[
                RefLine { y: 3.69, color: "red", label: "barrier" },
                RefLine { y: 0.0, color: "gray", label: "left min" },
            ],
        );
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("polyline"));
        assert_eq!(svg.matches("stroke-dasharray").count(), 2);
        assert!(svg.contains("red"));
    }

    #[test]
    fn output_is_deterministic() {
        let times = vec![0.0, 1.0, 2.0];
        let values = vec![1.0, -1.0, 0.5];
        let a = line_chart("t", "y", &times, &values, &[]);
        let b = line_chart("t", "y", &times, &values, &[]);
        assert_eq!(a, b);
    }

    #[test]
    fn constant_series_does_not_divide_by_zero() {
        let times = vec![0.0, 1.0];
        let values = vec![2.0, 2.0];
        let svg = line_chart("flat", "y", &times, &values, &[]);
        assert!(!svg.contains("NaN"));
    }
}
