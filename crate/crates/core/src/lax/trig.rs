//! Hyperbolic addition relations used in the proof of the Lax equation.

fn rel(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1.0)
}

/// Relative residuals of the three addition relations at (x, y):
///
/// 1/sh(x+y)·(1/sh²y − 1/sh²x) = ch y/(sh x sh²y) − ch x/(sh y sh²x),
/// e^{−x−y}/sh(x+y)·(1/sh²y − 1/sh²x) = −e^{−y}/(sh²x sh y) + e^{−x}/(sh²y sh x),
/// 1/sh(x+y)·(e^{−x−y} ch y/sh²y − ch x/sh²x) = e^{−x} ch y/(sh x sh²y) − 1/(sh y sh²x).
pub fn trig_identity_residuals(x: f64, y: f64) -> [f64; 3] {
    let (sx, sy, sxy) = (x.sinh(), y.sinh(), (x + y).sinh());
    let (cx, cy) = (x.cosh(), y.cosh());
    let (sx2, sy2) = (sx * sx, sy * sy);
    let diff = 1.0 / sy2 - 1.0 / sx2;
    let e = (-x - y).exp();
    [
        rel(diff / sxy, cy / (sx * sy2) - cx / (sy * sx2)),
        rel(e * diff / sxy, -(-y).exp() / (sx2 * sy) + (-x).exp() / (sy2 * sx)),
        rel(
            (e * cy / sy2 - cx / sx2) / sxy,
            (-x).exp() * cy / (sx * sy2) - 1.0 / (sy * sx2),
        ),
    ]
}
