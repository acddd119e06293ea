//! Minimal static SVG plots.

use std::fmt::Write;

const SIZE: f64 = 600.0;
const PAD: f64 = 20.0;

/// Pixel value with at most three decimals.
fn coord(x: f64) -> String {
    let s = format!("{x:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.to_string() }
}

/// Plot canvas mapping a data box, centred, onto a square image with y
/// pointing up.
pub struct Canvas {
    min: [f64; 2],
    scale: f64,
    body: String,
}

impl Canvas {
    pub fn new(min: [f64; 2], max: [f64; 2]) -> Canvas {
        let span = (max[0] - min[0]).max(max[1] - min[1]).max(1e-12);
        let min = [
            0.5 * (min[0] + max[0]) - 0.5 * span,
            0.5 * (min[1] + max[1]) - 0.5 * span,
        ];
        Canvas {
            min,
            scale: (SIZE - 2.0 * PAD) / span,
            body: String::new(),
        }
    }

    /// Bounding box of the points, padded by 5%.
    pub fn fitting(points: &[[f64; 2]]) -> Canvas {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for p in points.iter().filter(|p| p[0].is_finite() && p[1].is_finite()) {
            for i in 0..2 {
                lo[i] = lo[i].min(p[i]);
                hi[i] = hi[i].max(p[i]);
            }
        }
        if !lo[0].is_finite() {
            return Canvas::new([-1.0, -1.0], [1.0, 1.0]);
        }
        let m = 0.05 * (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
        Canvas::new([lo[0] - m, lo[1] - m], [hi[0] + m, hi[1] + m])
    }

    fn px(&self, p: [f64; 2]) -> (String, String) {
        let x = PAD + (p[0] - self.min[0]) * self.scale;
        let y = SIZE - PAD - (p[1] - self.min[1]) * self.scale;
        (coord(x), coord(y))
    }

    pub fn circle(&mut self, center: [f64; 2], r: f64, style: &str) {
        let (cx, cy) = self.px(center);
        let r = coord(r * self.scale);
        let _ = writeln!(self.body, r#"<circle cx="{cx}" cy="{cy}" r="{r}" {style}/>"#);
    }

    pub fn polyline(&mut self, points: &[[f64; 2]], style: &str) {
        let pts: Vec<String> = points
            .iter()
            .map(|&p| {
                let (x, y) = self.px(p);
                format!("{x},{y}")
            })
            .collect();
        let _ = writeln!(self.body, r#"<polyline points="{}" fill="none" {style}/>"#, pts.join(" "));
    }

    pub fn polygon(&mut self, points: &[[f64; 2]], style: &str) {
        let pts: Vec<String> = points
            .iter()
            .map(|&p| {
                let (x, y) = self.px(p);
                format!("{x},{y}")
            })
            .collect();
        let _ = writeln!(self.body, r#"<polygon points="{}" {style}/>"#, pts.join(" "));
    }

    pub fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n\
             <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
            self.body
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coords_are_trimmed() {
        assert_eq!(coord(25.833), "25.833");
        assert_eq!(coord(20.0), "20");
        assert_eq!(coord(-0.0001), "0");
    }

    #[test]
    fn maps_box_corners_to_padded_frame() {
        let mut c = Canvas::new([-1.0, -1.0], [1.0, 1.0]);
        c.polyline(&[[-1.0, -1.0], [1.0, 1.0]], r#"stroke="black""#);
        c.circle([0.0, 0.0], 1.0, r#"fill="none""#);
        let s = c.finish();
        assert!(s.contains(r#"points="20,580 580,20""#));
        assert!(s.contains(r#"cx="300" cy="300" r="280""#));
        assert!(s.starts_with("<svg") && s.ends_with("</svg>\n"));
    }
}
