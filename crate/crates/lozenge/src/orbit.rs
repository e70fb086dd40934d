use crate::circle::{circle_apply, wrap_unit, CirclePoint, LiftedCircleMap};
use crate::error::Error;
use crate::mobius::{ElementClass, MobiusElement};
use crate::tol::Tol;
use crate::Result;

/// A point of the orbit space in the exact strip model.
///
/// `u` is the lifted backward ideal point (unstable-leaf coordinate in
/// `L^u ~ R`), `s` the lifted forward ideal point (stable-leaf coordinate in
/// `L^s ~ R`); the strip condition is `s - 1 < u < s`. Stable leaves are the
/// lines `s = const`, unstable leaves `u = const`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitPoint {
    u: f64,
    s: f64,
}

impl OrbitPoint {
    pub fn new(u: f64, s: f64) -> Result<Self> {
        if !(s - 1.0 < u && u < s) {
            return Err(Error::DegeneratePair(format!(
                "({u}, {s}) violates the strip condition s-1 < u < s"
            )));
        }
        Ok(OrbitPoint { u, s })
    }

    pub fn u(self) -> f64 {
        self.u
    }

    pub fn s(self) -> f64 {
        self.s
    }

    /// Componentwise max-norm distance.
    pub fn dist_inf(self, other: OrbitPoint) -> f64 {
        (self.u - other.u).abs().max((self.s - other.s).abs())
    }

    /// Translate by the center: `(u, s) + (k, k) = eta^(2k)`.
    pub fn shift(self, k: i64) -> OrbitPoint {
        OrbitPoint {
            u: self.u + k as f64,
            s: self.s + k as f64,
        }
    }
}

/// Upper bound in `L^u` of the unstable leaves met by the stable leaf `s`.
pub fn eta_s(s: f64) -> f64 {
    s
}

/// Lower bound in `L^u` of the unstable leaves met by the stable leaf `s`.
pub fn eta_minus_u(s: f64) -> f64 {
    s - 1.0
}

/// Upper bound in `L^s` of the stable leaves met by the unstable leaf `u`.
pub fn eta_u(u: f64) -> f64 {
    u + 1.0
}

/// Lower bound in `L^s` of the stable leaves met by the unstable leaf `u`.
pub fn eta_minus_s(u: f64) -> f64 {
    u
}

/// The corner map `eta(u, s) = (s, u + 1)`: the intersection of the
/// upper-bound unstable leaf of `s` with the upper-bound stable leaf of `u`.
pub fn eta(o: OrbitPoint) -> OrbitPoint {
    OrbitPoint {
        u: o.s,
        s: o.u + 1.0,
    }
}

/// `eta^-1(u, s) = (s - 1, u)`.
pub fn eta_inverse(o: OrbitPoint) -> OrbitPoint {
    OrbitPoint {
        u: o.s - 1.0,
        s: o.u,
    }
}

/// `eta^i`; even powers are the center shifts `(u, s) + (i/2, i/2)`.
///
/// Each coordinate is produced by a single integer-float addition so that
/// consecutive lozenge ranges of a chain tile bit-exactly.
pub fn eta_iter(o: OrbitPoint, i: i64) -> OrbitPoint {
    let half = i.div_euclid(2);
    if i.rem_euclid(2) == 0 {
        o.shift(half)
    } else {
        OrbitPoint {
            u: o.s + half as f64,
            s: o.u + (half + 1) as f64,
        }
    }
}

/// The two ideal points of an orbit on the universal circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointPair {
    pub a_plus: CirclePoint,
    pub a_minus: CirclePoint,
}

impl PointPair {
    pub fn new(a_plus: CirclePoint, a_minus: CirclePoint) -> Self {
        PointPair { a_plus, a_minus }
    }

    /// The pair with forward and backward points exchanged.
    pub fn swapped(self) -> PointPair {
        PointPair {
            a_plus: self.a_minus,
            a_minus: self.a_plus,
        }
    }

    /// Image under the boundary action of `g`.
    pub fn apply(self, g: &MobiusElement) -> PointPair {
        PointPair {
            a_plus: CirclePoint::new(circle_apply(g, self.a_plus.angle())),
            a_minus: CirclePoint::new(circle_apply(g, self.a_minus.angle())),
        }
    }

    /// Both points of `self` within `tol` of the respective points of
    /// `other`, allowing the swapped matching.
    pub fn same_unordered(self, other: PointPair, tol: Tol) -> bool {
        let direct = tol.circle_eq(self.a_plus.angle(), other.a_plus.angle())
            && tol.circle_eq(self.a_minus.angle(), other.a_minus.angle());
        let crossed = tol.circle_eq(self.a_plus.angle(), other.a_minus.angle())
            && tol.circle_eq(self.a_minus.angle(), other.a_plus.angle());
        direct || crossed
    }
}

/// Projection of an orbit to the universal circle: `(s mod 1, u mod 1)`.
/// Invariant under `eta^2`; `eta` swaps the two points.
pub fn project_to_universal_circle(o: OrbitPoint) -> PointPair {
    PointPair {
        a_plus: CirclePoint::new(wrap_unit(o.s)),
        a_minus: CirclePoint::new(wrap_unit(o.u)),
    }
}

/// The unique representative of `angle + Z` inside the open unit window
/// `(hi - 1, hi)`. Returns the window's lower boundary value when the angle
/// is congruent to `hi` (the degenerate case callers must check).
fn lift_into_window(angle: f64, hi: f64) -> f64 {
    angle + ((hi - angle).ceil() - 1.0)
}

/// Action of a lifted deck transformation on the strip.
///
/// `s' = g_hat(s)`, and `u'` is the unique lift of `g(u mod 1)` in
/// `(s' - 1, s')`. Lifts with different offsets differ by the center action
/// `eta^(2k)`. Errors with `DegeneratePair` when the image of `u` lands
/// within `tol` of the window boundary, which cannot happen for genuine
/// group elements and signals numerical trouble.
pub fn act(g_hat: &LiftedCircleMap, o: OrbitPoint, tol: Tol) -> Result<OrbitPoint> {
    let s2 = g_hat.evaluate(o.s);
    let image_u = circle_apply(g_hat.base(), wrap_unit(o.u));
    let u2 = lift_into_window(image_u, s2);
    if u2 - (s2 - 1.0) <= tol.0 || s2 - u2 <= tol.0 {
        return Err(Error::DegeneratePair(format!(
            "image of u = {} collides with the image stable leaf {}",
            o.u, s2
        )));
    }
    OrbitPoint::new(u2, s2)
}

/// The periodic orbit point of a hyperbolic element together with the lift
/// of its boundary action that fixes the point.
///
/// `s0` is the attracting angle in `[0,1)`, `u0` the repelling angle lifted
/// into `(s0 - 1, s0)`; the offset of the returned lift is chosen so that
/// `g_hat(s0) = s0`.
pub fn orbit_of_element(g: &MobiusElement, tol: Tol) -> Result<(OrbitPoint, LiftedCircleMap)> {
    if g.classify() != ElementClass::Hyperbolic {
        return Err(Error::NotHyperbolic(g.word_string()));
    }
    let (att, rep) = g.axis_endpoints()?;
    let s0 = att.angle();
    let u0 = lift_into_window(rep.angle(), s0);
    if u0 - (s0 - 1.0) <= tol.0 || s0 - u0 <= tol.0 {
        return Err(Error::DegeneratePair(format!(
            "axis endpoints of `{}` are not separated",
            g.word_string()
        )));
    }
    let o = OrbitPoint::new(u0, s0)?;
    let raw = LiftedCircleMap::lift(g, 0);
    let offset = (s0 - raw.evaluate(s0)).round() as i64;
    Ok((o, raw.with_offset(offset)))
}

/// Which closed orbit an eta-iterate names: in this model `eta^2` is the
/// center, so iterates of equal parity project to the same closed orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitLabel {
    Even,
    Odd,
}

/// One entry of a double free homotopy class listing.
#[derive(Debug, Clone)]
pub struct DoubleClassEntry {
    pub index: i64,
    pub point: OrbitPoint,
    pub pair: PointPair,
    pub label: OrbitLabel,
}

/// The eta-iterates of the periodic orbit of `g` for `|i| <= range`,
/// annotated with their closed-orbit labels. Odd iterates carry the swapped
/// point pair: the same closed orbit traversed in the backwards flow
/// direction.
pub fn double_class(g: &MobiusElement, range: u32, tol: Tol) -> Result<Vec<DoubleClassEntry>> {
    let (o, _) = orbit_of_element(g, tol)?;
    let r = range as i64;
    let mut out = Vec::with_capacity((2 * r + 1) as usize);
    for i in -r..=r {
        let point = eta_iter(o, i);
        out.push(DoubleClassEntry {
            index: i,
            point,
            pair: project_to_universal_circle(point),
            label: if i.rem_euclid(2) == 0 {
                OrbitLabel::Even
            } else {
                OrbitLabel::Odd
            },
        });
    }
    Ok(out)
}
