//! Conic constructions for the normal forms and static SVG emission.
//!
//! A normal form `x^3 + x + q = 0` (q < 0) is solved geometrically as the
//! nontrivial intersection of the parabola `y = x^2` with the circle
//! `(x + q/2)^2 + y^2 = q^2/4`; the `x^3 - x + q' = 0` (q' > 0) case uses
//! the hyperbola `(x - q'/2)^2 - y^2 = q'^2/4`. Both conics pass through
//! the origin, and substituting `y = x^2` reduces each conic equation to
//! `x * (x^3 +/- x + q) = 0`.
//!
//! Figure style constants: 640x640 pixel canvas, axes in light gray,
//! parabola dark blue, conic dark red, intersection markers black,
//! stroke widths 1.0-1.5 px equivalent.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{NormalForm, ReducedForm, Sign};
use crate::iterative::{solve_reduced, SolveOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConicKind {
    Circle,
    Hyperbola,
}

/// The conic paired with `y = x^2` for one normal form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConicSystem {
    pub kind: ConicKind,
    /// `-q/2` for the circle, `q'/2` for the hyperbola; always > 0.
    pub center_x: f64,
    /// `q^2/4`: squared radius (circle) or squared semi-axis (hyperbola).
    pub half_param: f64,
    /// The normal-form constant after any reflection.
    pub q_value: f64,
    /// Set when the input had the wrong sign of q and was reflected
    /// through `x -> -x` first.
    pub reflected: bool,
}

/// Outcome of `build_conic`: `q = 0` collapses the conic to a point/line
/// pair through the origin and the equation to `x^3 +/- x = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Conic {
    Degenerate,
    System(ConicSystem),
}

/// Builds the conic for a normal form. The standing assumptions are
/// `q < 0` for the circle and `q' > 0` for the hyperbola; inputs with the
/// opposite sign are reflected through `x -> -x` (which flips the sign of
/// `x^3 +/- x`) and flagged.
pub fn build_conic(f: &NormalForm) -> Conic {
    if f.q == 0.0 {
        return Conic::Degenerate;
    }
    let (q, reflected) = match f.sign {
        Sign::Positive if f.q > 0.0 => (-f.q, true),
        Sign::Negative if f.q < 0.0 => (-f.q, true),
        _ => (f.q, false),
    };
    let (kind, center_x) = match f.sign {
        Sign::Positive => (ConicKind::Circle, -q / 2.0),
        Sign::Negative => (ConicKind::Hyperbola, q / 2.0),
    };
    Conic::System(ConicSystem { kind, center_x, half_param: q * q / 4.0, q_value: q, reflected })
}

/// Evaluates the conic's implicit equation (zero on the curve).
pub fn conic_residual(c: &ConicSystem, x: f64, y: f64) -> f64 {
    let dx = x - c.center_x;
    match c.kind {
        ConicKind::Circle => dx * dx + y * y - c.half_param,
        ConicKind::Hyperbola => dx * dx - y * y - c.half_param,
    }
}

/// All nontrivial intersections of the conic with `y = x^2`, found by
/// solving the underlying cubic with this crate's own solvers and lifting
/// each root onto the parabola. Ascending in x; the origin is excluded.
pub fn intersect_with_parabola(c: &ConicSystem) -> Result<Vec<(f64, f64)>> {
    let p = match c.kind {
        ConicKind::Circle => 1.0,
        ConicKind::Hyperbola => -1.0,
    };
    let r = ReducedForm::new(p, c.q_value)?;
    let report = solve_reduced(&r, &SolveOptions::default())?;
    if !report.errors.is_empty() {
        return Err(Error::Convergence { lo: f64::NAN, hi: f64::NAN, iterations: 0 });
    }
    Ok(report
        .roots
        .iter()
        .filter(|root| root.value != 0.0)
        .map(|root| (root.value, root.value * root.value))
        .collect())
}

/// A view rectangle in math coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Window {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Result<Self> {
        if !(x_min < x_max && y_min < y_max) {
            return Err(Error::InvalidInput(format!(
                "window must have positive extent, got [{x_min}, {x_max}] x [{y_min}, {y_max}]"
            )));
        }
        Ok(Window { x_min, x_max, y_min, y_max })
    }

    /// Square window centered to cover `[-h, h]` in both axes.
    pub fn square(h: f64) -> Result<Self> {
        Window::new(-h, h, -h, h)
    }
}

const CANVAS: f64 = 640.0;
const CURVE_SAMPLES: usize = 512;

/// Formats a value with 6 significant digits, deterministically.
fn fmt6(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return "0".into();
    }
    let mag = v.abs().log10().floor() as i32;
    let decimals = (5 - mag).clamp(0, 17) as usize;
    let s = format!("{v:.decimals$}");
    // strip trailing zeros (and a trailing dot) for stability across scales
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

struct Canvas {
    body: String,
    w: Window,
}

impl Canvas {
    fn new(w: Window) -> Self {
        Canvas { body: String::new(), w }
    }

    fn sx(&self) -> f64 {
        CANVAS / (self.w.x_max - self.w.x_min)
    }

    fn sy(&self) -> f64 {
        CANVAS / (self.w.y_max - self.w.y_min)
    }

    fn px(&self, x: f64) -> f64 {
        (x - self.w.x_min) * self.sx()
    }

    /// y-axis flipped to mathematical orientation.
    fn py(&self, y: f64) -> f64 {
        CANVAS - (y - self.w.y_min) * self.sy()
    }

    fn polyline(&mut self, pts: &[(f64, f64)], color: &str, width: f64) {
        if pts.len() < 2 {
            return;
        }
        let coords: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{},{}", fmt6(self.px(x)), fmt6(self.py(y))))
            .collect();
        self.body.push_str(&format!(
            "  <polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"{width}\" points=\"{}\"/>\n",
            coords.join(" ")
        ));
    }

    fn curve(&mut self, f: impl Fn(f64) -> f64, x_lo: f64, x_hi: f64, color: &str) {
        let pts: Vec<(f64, f64)> = (0..=CURVE_SAMPLES)
            .map(|i| {
                let x = x_lo + (x_hi - x_lo) * i as f64 / CURVE_SAMPLES as f64;
                (x, f(x))
            })
            .filter(|&(_, y)| y.is_finite())
            .collect();
        self.polyline(&pts, color, 1.5);
    }

    fn axes(&mut self) {
        let w = self.w;
        self.polyline(&[(w.x_min, 0.0), (w.x_max, 0.0)], "#bbbbbb", 1.0);
        self.polyline(&[(0.0, w.y_min), (0.0, w.y_max)], "#bbbbbb", 1.0);
    }

    /// Intersection marker carrying its math coordinates as data
    /// attributes for round-trip checks.
    fn mark(&mut self, x: f64, y: f64) {
        self.body.push_str(&format!(
            "  <circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"#000000\" data-x=\"{}\" data-y=\"{}\"/>\n",
            fmt6(self.px(x)),
            fmt6(self.py(y)),
            fmt6(x),
            fmt6(y)
        ));
    }

    fn finish(self, title: &str) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{c}\" height=\"{c}\" viewBox=\"0 0 {c} {c}\">\n  <title>{title}</title>\n  <rect width=\"{c}\" height=\"{c}\" fill=\"#ffffff\"/>\n{body}</svg>\n",
            c = CANVAS as u32,
            body = self.body
        )
    }
}

/// Renders the parabola, the conic, axes, and the marked intersections.
pub fn emit_svg(c: &Conic, window: Window) -> Result<String> {
    let mut cv = Canvas::new(window);
    cv.axes();
    cv.curve(|x| x * x, window.x_min, window.x_max, "#1f3d99");
    match c {
        Conic::Degenerate => {
            cv.mark(0.0, 0.0);
            Ok(cv.finish("degenerate conic (q = 0): root at the origin"))
        }
        Conic::System(sys) => {
            match sys.kind {
                ConicKind::Circle => {
                    let r = sys.half_param.sqrt();
                    let pts: Vec<(f64, f64)> = (0..=CURVE_SAMPLES)
                        .map(|i| {
                            let t = 2.0 * std::f64::consts::PI * i as f64 / CURVE_SAMPLES as f64;
                            (sys.center_x + r * t.cos(), r * t.sin())
                        })
                        .collect();
                    cv.polyline(&pts, "#992222", 1.5);
                }
                ConicKind::Hyperbola => {
                    let a = sys.half_param.sqrt();
                    // both branches: x = cx ± a*cosh(t), y = a*sinh(t)
                    let t_max = {
                        let reach = (window.x_max - window.x_min).abs() / a + 2.0;
                        reach.ln() + 1.0
                    };
                    for branch_sign in [1.0, -1.0] {
                        let pts: Vec<(f64, f64)> = (0..=CURVE_SAMPLES)
                            .map(|i| {
                                let t = -t_max + 2.0 * t_max * i as f64 / CURVE_SAMPLES as f64;
                                (sys.center_x + branch_sign * a * t.cosh(), a * t.sinh())
                            })
                            .collect();
                        cv.polyline(&pts, "#992222", 1.5);
                    }
                }
            }
            for (x, y) in intersect_with_parabola(sys)? {
                cv.mark(x, y);
            }
            let title = match sys.kind {
                ConicKind::Circle => "parabola and circle",
                ConicKind::Hyperbola => "parabola and hyperbola",
            };
            Ok(cv.finish(title))
        }
    }
}

/// The canonical-form split figure: the hump `alpha^2 - alpha^3`, the
/// monotone `alpha^3 + alpha`, and the level line `y = 4/27`.
pub fn emit_tusi_split_svg(window: Window) -> Result<String> {
    let mut cv = Canvas::new(window);
    cv.axes();
    cv.curve(|a| a * a - a * a * a, window.x_min, window.x_max, "#1f3d99");
    cv.curve(|a| a * a * a + a, window.x_min, window.x_max, "#992222");
    cv.polyline(&[(window.x_min, 4.0 / 27.0), (window.x_max, 4.0 / 27.0)], "#22aa44", 1.0);
    cv.mark(2.0 / 3.0, 4.0 / 27.0);
    Ok(cv.finish("cubic split: hump term, monotone term, level 4/27"))
}

/// The degree family `alpha^(n-1) - alpha^n` for `n = 2..=n_max`, each with
/// its maximizer marked.
pub fn emit_phi_family_svg(n_max: u32, window: Window) -> Result<String> {
    if n_max < 2 {
        return Err(Error::InvalidInput(format!("n_max must be >= 2, got {n_max}")));
    }
    let colors = ["#1f3d99", "#992222", "#22aa44", "#aa7722", "#771f99", "#227e99"];
    let mut cv = Canvas::new(window);
    cv.axes();
    for n in 2..=n_max {
        let color = colors[(n as usize - 2) % colors.len()];
        cv.curve(
            |a| crate::forms::phi_n(n, a),
            window.x_min.max(-0.25),
            window.x_max,
            color,
        );
        let (a_star, p_star) = crate::classify::maximizer(n);
        cv.mark(a_star, p_star);
    }
    Ok(cv.finish("degree family humps with maximizers"))
}
