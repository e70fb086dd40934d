use std::f64::consts::PI;

use crate::mobius::MobiusElement;

/// A point of the universal circle `R/Z`, kept in `[0, 1)`.
///
/// The boundary chart is the Cayley transform `x -> (x - i)/(x + i)` of the
/// upper-half-plane boundary `R u {inf}`; in angle coordinates that is
/// `angle(x) = (-atan2(1, x)/pi) mod 1`, a strictly increasing homeomorphism
/// with `angle(inf) = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CirclePoint {
    angle: f64,
}

impl CirclePoint {
    /// Wrap an angle into `[0, 1)`.
    pub fn new(angle: f64) -> Self {
        CirclePoint {
            angle: wrap_unit(angle),
        }
    }

    /// Chart a boundary point of `R u {inf}` onto the circle.
    pub fn from_boundary(x: f64) -> Self {
        CirclePoint {
            angle: boundary_to_angle(x),
        }
    }

    pub fn angle(self) -> f64 {
        self.angle
    }

    /// Inverse chart; angle 0 is the point at infinity.
    pub fn to_boundary(self) -> f64 {
        angle_to_boundary(self.angle)
    }
}

/// `[0, 1)` representative, guarding against `rem_euclid` rounding up to 1.
pub(crate) fn wrap_unit(x: f64) -> f64 {
    let v = x.rem_euclid(1.0);
    if v >= 1.0 {
        0.0
    } else {
        v
    }
}

pub(crate) fn boundary_to_angle(x: f64) -> f64 {
    if x.is_infinite() {
        return 0.0;
    }
    // arg((x - i)/(x + i)) = -2 atan2(1, x); divide by 2*pi and wrap.
    wrap_unit(-f64::atan2(1.0, x) / PI)
}

pub(crate) fn angle_to_boundary(angle: f64) -> f64 {
    let a = wrap_unit(angle);
    if a == 0.0 {
        return f64::INFINITY;
    }
    let (sin, cos) = (PI * a).sin_cos();
    -cos / sin
}

/// Boundary circle action of `g` on angle coordinates, `[0,1) -> [0,1)`.
pub fn circle_apply(g: &MobiusElement, t: f64) -> f64 {
    boundary_to_angle(g.apply_boundary(angle_to_boundary(t)))
}

/// A degree-one lift of the boundary circle action of `base`.
///
/// The evaluation contract is `g_hat(x) = lambda(g, x) + offset`, where
/// `lambda` is the canonical lift with `lambda(g, 0)` in `[0, 1)`. Lifts are
/// strictly increasing and commute with `x -> x + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedCircleMap {
    base: MobiusElement,
    offset: i64,
}

impl LiftedCircleMap {
    pub fn lift(base: &MobiusElement, offset: i64) -> Self {
        LiftedCircleMap {
            base: base.clone(),
            offset,
        }
    }

    pub fn base(&self) -> &MobiusElement {
        &self.base
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// Same underlying circle map, shifted by `delta` full turns.
    pub fn with_offset(&self, offset: i64) -> Self {
        LiftedCircleMap {
            base: self.base.clone(),
            offset,
        }
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        let mut n = x.floor();
        let mut t = x - n;
        if t >= 1.0 {
            // x just below an integer can round t up to 1.0
            t = 0.0;
            n += 1.0;
        }
        let v0 = circle_apply(&self.base, 0.0);
        let v = if t == 0.0 {
            v0
        } else {
            let w = circle_apply(&self.base, t);
            // unwrap: the image angle increases from v0 to v0 + 1 over one turn
            if w < v0 {
                w + 1.0
            } else {
                w
            }
        };
        n + v + self.offset as f64
    }

    /// The inverse deck transformation: the lift of `base^-1` with the offset
    /// that makes it the two-sided inverse of `self`.
    pub fn inverse(&self) -> LiftedCircleMap {
        let inv = self.base.inverse();
        let zero_image = LiftedCircleMap::lift(&inv, 0).evaluate(self.evaluate(0.0));
        LiftedCircleMap {
            base: inv,
            offset: -zero_image.round() as i64,
        }
    }
}
