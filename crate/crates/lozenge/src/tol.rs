/// Comparison tolerance for point coordinates.
///
/// All tolerance-based comparisons in the crate go through this type; the
/// default `1e-9` is adequate because the shipped example groups have
/// well-separated fixed points at the depths used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tol(pub f64);

impl Default for Tol {
    fn default() -> Self {
        Tol(1e-9)
    }
}

impl Tol {
    pub const DEFAULT: Tol = Tol(1e-9);

    /// |a - b| <= eps.
    pub fn eq(self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.0
    }

    /// a < b - eps (strictly less with margin).
    pub fn lt(self, a: f64, b: f64) -> bool {
        a < b - self.0
    }

    /// a > b + eps.
    pub fn gt(self, a: f64, b: f64) -> bool {
        a > b + self.0
    }

    /// x inside the open interval (lo, hi) with margin eps on both sides.
    pub fn inside(self, x: f64, lo: f64, hi: f64) -> bool {
        self.gt(x, lo) && self.lt(x, hi)
    }

    /// Distance on R/Z.
    pub fn circle_dist(a: f64, b: f64) -> f64 {
        let d = (a - b).rem_euclid(1.0);
        d.min(1.0 - d)
    }

    /// Circle points within eps of each other.
    pub fn circle_eq(self, a: f64, b: f64) -> bool {
        Self::circle_dist(a, b) <= self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_with_margin() {
        let t = Tol(1e-9);
        assert!(t.inside(0.5, 0.0, 1.0));
        assert!(!t.inside(0.0, 0.0, 1.0));
        assert!(!t.inside(5e-10, 0.0, 1.0));
        assert!(t.inside(2e-9, 0.0, 1.0));
    }

    #[test]
    fn circle_distance_wraps() {
        assert!((Tol::circle_dist(0.95, 0.05) - 0.1).abs() < 1e-15);
        assert!((Tol::circle_dist(0.2, 0.7) - 0.5).abs() < 1e-15);
        assert_eq!(Tol::circle_dist(0.3, 0.3), 0.0);
    }
}
