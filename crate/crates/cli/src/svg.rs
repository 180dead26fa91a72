use std::fmt::Write as _;

use pentagramma::poncelet::PonceletTrajectory;
use pentagramma::projection::PlanarPentagon;

const SIZE: f64 = 480.0;

struct Canvas {
    body: String,
    scale: f64,
}

impl Canvas {
    fn new(extent: f64) -> Self {
        Self {
            body: String::new(),
            scale: 0.45 * SIZE / extent,
        }
    }

    fn x(&self, x: f64) -> f64 {
        0.5 * SIZE + self.scale * x
    }

    fn y(&self, y: f64) -> f64 {
        0.5 * SIZE - self.scale * y
    }

    fn circle(&mut self, cx: f64, cy: f64, r: f64, style: &str) {
        let _ = writeln!(
            self.body,
            r#"  <circle cx="{:.4}" cy="{:.4}" r="{:.4}" {style}/>"#,
            self.x(cx),
            self.y(cy),
            self.scale * r
        );
    }

    fn ellipse(&mut self, rx: f64, ry: f64, style: &str) {
        let _ = writeln!(
            self.body,
            r#"  <ellipse cx="{:.4}" cy="{:.4}" rx="{:.4}" ry="{:.4}" {style}/>"#,
            self.x(0.0),
            self.y(0.0),
            self.scale * rx,
            self.scale * ry
        );
    }

    fn polyline(&mut self, points: &[[f64; 2]], style: &str) {
        let coords: Vec<String> = points
            .iter()
            .map(|p| format!("{:.4},{:.4}", self.x(p[0]), self.y(p[1])))
            .collect();
        let _ = writeln!(
            self.body,
            r#"  <polyline points="{}" {style}/>"#,
            coords.join(" ")
        );
    }

    fn finish(self) -> String {
        format!(
            concat!(
                "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n",
                "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{s}\" height=\"{s}\" viewBox=\"0 0 {s} {s}\">\n",
                "  <rect width=\"{s}\" height=\"{s}\" fill=\"white\"/>\n",
                "{body}</svg>\n"
            ),
            s = SIZE,
            body = self.body
        )
    }
}

/// Both circles and the chain of chords.
pub fn poncelet(t: &PonceletTrajectory) -> String {
    let c = t.config;
    let mut canvas = Canvas::new(c.outer());
    canvas.circle(
        0.0,
        0.0,
        c.outer(),
        r##"fill="none" stroke="#333" stroke-width="1.5""##,
    );
    canvas.circle(
        -c.offset(),
        0.0,
        c.inner(),
        r##"fill="none" stroke="#36c" stroke-width="1.5""##,
    );
    let vertices = t.vertices();
    canvas.polyline(&vertices, r##"fill="none" stroke="#c33" stroke-width="1""##);
    for v in &vertices {
        canvas.circle(v[0], v[1], 0.012 * c.outer(), r##"fill="#c33""##);
    }
    canvas.finish()
}

/// The ellipse through the projected vertices, the pentagon, and its pentagram.
pub fn pentagon(p: &PlanarPentagon) -> String {
    let (a, b) = p.axes;
    let mut canvas = Canvas::new(a.max(b));
    canvas.ellipse(a, b, r##"fill="none" stroke="#36c" stroke-width="1.5""##);
    let ring: Vec<[f64; 2]> = (0..=5).map(|j| p.points[j % 5]).collect();
    canvas.polyline(&ring, r##"fill="none" stroke="#333" stroke-width="1.5""##);
    let star: Vec<[f64; 2]> = (0..=5).map(|j| p.points[(2 * j) % 5]).collect();
    canvas.polyline(&star, r##"fill="none" stroke="#c33" stroke-width="1""##);
    for q in &p.points {
        canvas.circle(q[0], q[1], 0.015 * a.max(b), r##"fill="#333""##);
    }
    canvas.finish()
}
