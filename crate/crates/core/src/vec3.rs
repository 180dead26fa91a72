//! Minimal 3-vector helpers on `[f64; 3]`.

pub type Vec3 = [f64; 3];

pub fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn norm_sq(a: &Vec3) -> f64 {
    dot(a, a)
}

pub fn normalize(a: &Vec3) -> Vec3 {
    let n = norm_sq(a).sqrt();
    [a[0] / n, a[1] / n, a[2] / n]
}

/// `|a x b|^2 / (a . b)^2`, the squared tangent of the angle between `a` and `b`.
pub fn tan_sq_angle(a: &Vec3, b: &Vec3) -> f64 {
    let c = cross(a, b);
    let d = dot(a, b);
    norm_sq(&c) / (d * d)
}

/// `|a x b|^2 / (|a|^2 |b|^2)`, the squared sine of the angle between `a` and `b`.
pub fn sin_sq_angle(a: &Vec3, b: &Vec3) -> f64 {
    let c = cross(a, b);
    norm_sq(&c) / (norm_sq(a) * norm_sq(b))
}
