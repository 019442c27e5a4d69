//! Vector kinematics and closest-point-of-approach computations.
//!
//! Positions are in nautical miles, velocities in NM/h and times in hours.
//! Every aircraft flies a straight line `p + t·v` for `t >= 0`.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub const fn planar(x: f64, y: f64) -> Self {
        Vec3 { x, y, z: 0.0 }
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: Vec3) -> Vec3 {
        Vec3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y).hypot(self.z)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Unit vector along a heading: `theta` from the x-axis, `phi` from the
    /// z-axis, both in degrees.
    pub fn from_angles_deg(theta: f64, phi: f64) -> Vec3 {
        let (st, ct) = sin_cos_deg(theta);
        let (sp, cp) = sin_cos_deg(phi);
        Vec3::new(ct * sp, st * sp, cp)
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Vec3 {
    fn add_assign(&mut self, o: Vec3) {
        *self = *self + o;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        v * self
    }
}

/// Sine and cosine of an angle in degrees.
///
/// Multiples of 90° return exact values so that axis-aligned headings keep
/// their zero components exactly zero.
pub fn sin_cos_deg(deg: f64) -> (f64, f64) {
    let r = deg.rem_euclid(360.0);
    if r == 0.0 {
        (0.0, 1.0)
    } else if r == 90.0 {
        (1.0, 0.0)
    } else if r == 180.0 {
        (0.0, -1.0)
    } else if r == 270.0 {
        (-1.0, 0.0)
    } else {
        r.to_radians().sin_cos()
    }
}

/// Closest point of approach over the future half-line `t >= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cpa {
    /// Hours.
    pub t_cpa: f64,
    /// NM.
    pub d_min: f64,
}

pub fn cpa(p_i: Vec3, v_i: Vec3, p_j: Vec3, v_j: Vec3) -> Cpa {
    relative_cpa(p_i - p_j, v_i - v_j)
}

/// CPA for a relative position `dp` and relative velocity `dv`.
pub fn relative_cpa(dp: Vec3, dv: Vec3) -> Cpa {
    let a = dv.norm_squared();
    if a == 0.0 {
        return Cpa { t_cpa: 0.0, d_min: dp.norm() };
    }
    let t_cpa = (-dp.dot(dv) / a).max(0.0);
    Cpa { t_cpa, d_min: (dp + dv * t_cpa).norm() }
}

/// Time span over which two aircraft are closer than the safety distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConflictWindow {
    pub t_enter: f64,
    /// `None` when the pair never separates again (identical velocities).
    pub t_exit: Option<f64>,
}

impl ConflictWindow {
    pub fn is_unbounded(&self) -> bool {
        self.t_exit.is_none()
    }

    /// Length in hours, `None` when unbounded.
    pub fn length(&self) -> Option<f64> {
        self.t_exit.map(|exit| exit - self.t_enter)
    }
}

/// Maximal sub-interval of `[0, ∞)` where the pair's separation is below `d`.
///
/// Presence agrees with `cpa(..).d_min < d` by construction.
pub fn conflict_interval(p_i: Vec3, v_i: Vec3, p_j: Vec3, v_j: Vec3, d: f64) -> Option<ConflictWindow> {
    relative_conflict_interval(p_i - p_j, v_i - v_j, d)
}

pub fn relative_conflict_interval(dp: Vec3, dv: Vec3, d: f64) -> Option<ConflictWindow> {
    let closest = relative_cpa(dp, dv);
    if !(closest.d_min < d) {
        return None;
    }
    let a = dv.norm_squared();
    if a == 0.0 {
        return Some(ConflictWindow { t_enter: 0.0, t_exit: None });
    }

    // Roots of a t² + b t + c = 0. The discriminant is rebuilt from the
    // perpendicular miss distance of the infinite lines, b² - 4ac =
    // 4a (d² - d_line²), which avoids cancellation near tangency.
    let b = 2.0 * dp.dot(dv);
    let c = dp.norm_squared() - d * d;
    let t_line = -dp.dot(dv) / a;
    let d_line = (dp + dv * t_line).norm().min(d);
    let sqrt_disc = 2.0 * a.sqrt() * ((d - d_line) * (d + d_line)).sqrt();

    let q = -0.5 * (b + sqrt_disc.copysign(b));
    let (r1, r2) = if q == 0.0 {
        (t_line, t_line)
    } else {
        let (x, y) = (q / a, c / q);
        if x <= y { (x, y) } else { (y, x) }
    };
    Some(ConflictWindow { t_enter: r1.max(0.0), t_exit: Some(r2.max(closest.t_cpa)) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn head_on_meets_at_midpoint() {
        let c = cpa(Vec3::ZERO, Vec3::planar(480.0, 0.0), Vec3::planar(10.0, 0.0), Vec3::planar(-480.0, 0.0));
        assert!((c.t_cpa - 10.0 / 960.0).abs() < 1e-15);
        assert_eq!(c.d_min, 0.0);
    }

    #[test]
    fn equal_velocities_keep_distance() {
        let v = Vec3::new(100.0, -20.0, 3.0);
        let c = cpa(Vec3::ZERO, v, Vec3::planar(7.0, 0.0), v);
        assert_eq!(c.t_cpa, 0.0);
        assert_eq!(c.d_min, 7.0);
    }

    #[test]
    fn head_on_window() {
        let w = conflict_interval(
            Vec3::ZERO,
            Vec3::planar(480.0, 0.0),
            Vec3::planar(10.0, 0.0),
            Vec3::planar(-480.0, 0.0),
            5.0,
        )
        .unwrap();
        assert!((w.t_enter - 5.0 / 960.0).abs() < 1e-15);
        assert!((w.t_exit.unwrap() - 15.0 / 960.0).abs() < 1e-15);
    }

    #[test]
    fn parallel_outside_d_has_no_window() {
        let v = Vec3::planar(480.0, 0.0);
        assert!(conflict_interval(Vec3::ZERO, v, Vec3::planar(0.0, 7.0), v, 5.0).is_none());
    }

    #[test]
    fn permanent_violation_is_unbounded() {
        let v = Vec3::planar(480.0, 10.0);
        let w = conflict_interval(Vec3::ZERO, v, Vec3::planar(3.0, 0.0), v, 5.0).unwrap();
        assert_eq!(w.t_enter, 0.0);
        assert!(w.is_unbounded());
        assert_eq!(w.length(), None);
    }

    #[test]
    fn diverging_pair_has_no_window() {
        let w = conflict_interval(
            Vec3::ZERO,
            Vec3::planar(-400.0, 0.0),
            Vec3::planar(10.0, 0.0),
            Vec3::planar(400.0, 0.0),
            5.0,
        );
        assert!(w.is_none());
    }

    #[test]
    fn already_in_conflict_clips_at_zero() {
        // 3 NM apart and separating at 960 kt: inside until distance reaches 5
        let w = conflict_interval(
            Vec3::ZERO,
            Vec3::planar(-480.0, 0.0),
            Vec3::planar(3.0, 0.0),
            Vec3::planar(480.0, 0.0),
            5.0,
        )
        .unwrap();
        assert_eq!(w.t_enter, 0.0);
        assert!((w.t_exit.unwrap() - 2.0 / 960.0).abs() < 1e-15);
    }

    #[test]
    fn tangent_encounter_is_not_a_conflict() {
        // lines pass exactly D apart
        let w = conflict_interval(
            Vec3::planar(-100.0, 0.0),
            Vec3::planar(400.0, 0.0),
            Vec3::planar(100.0, 5.0),
            Vec3::planar(-400.0, 0.0),
            5.0,
        );
        assert!(w.is_none());
    }

    #[test]
    fn near_tangent_roots_are_accurate() {
        // miss distance 5 - 1e-9: roots t* ± sqrt(D² - d²)/|dv| computed in
        // extended form by hand
        let miss = 5.0 - 1e-9;
        let dp = Vec3::planar(-200.0, miss);
        let dv = Vec3::planar(800.0, 0.0);
        let w = relative_conflict_interval(dp, dv, 5.0).unwrap();
        let half = ((5.0 - miss) * (5.0 + miss)).sqrt() / 800.0;
        let t_star = 0.25;
        assert!((w.t_enter - (t_star - half)).abs() <= 1e-12 * t_star);
        assert!((w.t_exit.unwrap() - (t_star + half)).abs() <= 1e-12 * t_star);
    }

    #[test]
    fn axis_angles_are_exact() {
        assert_eq!(sin_cos_deg(90.0), (1.0, 0.0));
        assert_eq!(sin_cos_deg(-90.0), (-1.0, 0.0));
        assert_eq!(sin_cos_deg(450.0), (1.0, 0.0));
        let v = Vec3::from_angles_deg(37.0, 90.0);
        assert_eq!(v.z, 0.0);
        assert!((v.norm() - 1.0).abs() < 1e-15);
    }
}
