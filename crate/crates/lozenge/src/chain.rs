use crate::circle::LiftedCircleMap;
use crate::error::Error;
use crate::group::GroupSpec;
use crate::mobius::MobiusElement;
use crate::orbit::{act, eta, eta_iter, OrbitPoint};
use crate::tol::Tol;
use crate::Result;

/// A lozenge of the strip model, determined by its corner `alpha`.
///
/// The opposite corner is `beta = eta(alpha)`; with `alpha = (u, s)` the
/// interior is the open coordinate rectangle
/// `{(u', s') : u < u' < s, s < s' < u + 1}`. The four sides are the open
/// half-leaf segments of the boundary; the remaining two rectangle corners
/// are ideal and do not belong to the orbit space. Under the orientation
/// convention of this crate every lozenge has type `(+,+,-,-)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lozenge {
    corner: OrbitPoint,
}

/// Verdict of an interior membership test at a fixed tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Inside,
    Outside,
    /// Within tolerance of a side: the test is untrustworthy at this epsilon.
    BoundaryAmbiguous,
}

/// The unique lozenge with corners `o` and `eta(o)`.
pub fn lozenge_of(o: OrbitPoint) -> Lozenge {
    Lozenge { corner: o }
}

impl Lozenge {
    pub fn corner(&self) -> OrbitPoint {
        self.corner
    }

    pub fn opposite_corner(&self) -> OrbitPoint {
        eta(self.corner)
    }

    /// Open range of unstable-leaf coordinates meeting the interior.
    pub fn u_range(&self) -> (f64, f64) {
        (self.corner.u(), self.corner.s())
    }

    /// Open range of stable-leaf coordinates meeting the interior.
    pub fn s_range(&self) -> (f64, f64) {
        (self.corner.s(), self.corner.u() + 1.0)
    }

    /// Interior membership with margin `tol`.
    ///
    /// Corner hits are `Outside`: a translate landing on a corner is the
    /// orbit of a corner, which by definition never lies in the open
    /// lozenge (the identity and stabilizer powers map corners to corners,
    /// and must not abort a simplicity search). Points within `tol` of a
    /// side otherwise report `BoundaryAmbiguous`.
    pub fn contains(&self, p: OrbitPoint, tol: Tol) -> Membership {
        let alpha = self.corner;
        let beta = self.opposite_corner();
        if p.dist_inf(alpha) <= tol.0 || p.dist_inf(beta) <= tol.0 {
            return Membership::Outside;
        }
        let (ulo, uhi) = self.u_range();
        let (slo, shi) = self.s_range();
        if tol.inside(p.u(), ulo, uhi) && tol.inside(p.s(), slo, shi) {
            return Membership::Inside;
        }
        if p.u() < ulo - tol.0
            || p.u() > uhi + tol.0
            || p.s() < slo - tol.0
            || p.s() > shi + tol.0
        {
            return Membership::Outside;
        }
        Membership::BoundaryAmbiguous
    }
}

/// A chain of lozenges `L_i` with corners `eta^i(base)` for `lo <= i < hi`.
///
/// Consecutive lozenges share exactly one corner and no side: their interior
/// coordinate ranges are disjoint open intervals by the model formulas.
#[derive(Debug, Clone, Copy)]
pub struct Chain {
    base: OrbitPoint,
    lo: i64,
    hi: i64,
}

impl Chain {
    pub fn new(base: OrbitPoint, lo: i64, hi: i64) -> Result<Self> {
        if lo >= hi {
            return Err(Error::InvalidRange(format!(
                "chain needs lo < hi, got [{lo}, {hi})"
            )));
        }
        Ok(Chain { base, lo, hi })
    }

    /// The chain `B(o, eta^n(o))` between an orbit and its n-th iterate.
    pub fn between(base: OrbitPoint, n: u32) -> Result<Self> {
        Chain::new(base, 0, n as i64)
    }

    pub fn base(&self) -> OrbitPoint {
        self.base
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn lozenge(&self, i: i64) -> Lozenge {
        lozenge_of(eta_iter(self.base, i))
    }

    pub fn lozenges(&self) -> impl Iterator<Item = (i64, Lozenge)> + '_ {
        (self.lo..self.hi).map(|i| (i, self.lozenge(i)))
    }

    /// Corner indices range one past the lozenge indices.
    pub fn corners(&self) -> impl Iterator<Item = (i64, OrbitPoint)> + '_ {
        (self.lo..=self.hi).map(|i| (i, eta_iter(self.base, i)))
    }

    /// Interior coordinate ranges of the `i`-th lozenge, with every endpoint
    /// produced by a single `base + integer` addition. Endpoints shared by
    /// consecutive lozenges are then bitwise equal and the exact tiling of
    /// the chain is visible to plain comparisons.
    pub fn coordinate_ranges(&self, i: i64) -> ((f64, f64), (f64, f64)) {
        let (u, s) = (self.base.u(), self.base.s());
        let m = i.div_euclid(2) as f64;
        if i.rem_euclid(2) == 0 {
            ((u + m, s + m), (s + m, u + (m + 1.0)))
        } else {
            ((s + m, u + (m + 1.0)), (u + (m + 1.0), s + (m + 1.0)))
        }
    }

    /// Exact side-disjointness: interiors of distinct lozenges have disjoint
    /// open u-ranges and s-ranges, so a stable or unstable leaf meets the
    /// interior of at most one lozenge of the chain.
    pub fn sides_disjoint(&self) -> bool {
        let ranges: Vec<((f64, f64), (f64, f64))> =
            (self.lo..self.hi).map(|i| self.coordinate_ranges(i)).collect();
        for (i, (u1, s1)) in ranges.iter().enumerate() {
            for (u2, s2) in ranges.iter().skip(i + 1) {
                let open_disjoint =
                    |a: (f64, f64), b: (f64, f64)| a.1 <= b.0 || b.1 <= a.0;
                if !open_disjoint(*u1, *u2) || !open_disjoint(*s1, *s2) {
                    return false;
                }
            }
        }
        true
    }
}

/// Executable form of the stabilized-lozenge property: given the lift fixing
/// the corner of `l`, check that it also fixes the opposite corner. Returns
/// `false` both on a genuine violation and when the precondition
/// `act(g0, corner) = corner` itself fails (callers can re-test it).
pub fn check_stabilized(g0: &LiftedCircleMap, l: &Lozenge, tol: Tol) -> bool {
    let beta = l.opposite_corner();
    match act(g0, beta, tol) {
        Ok(image) => image.dist_inf(beta) <= tol.0,
        Err(_) => false,
    }
}

/// A non-simplicity witness: a group element and center offset mapping a
/// chain corner into the interior of a chain lozenge.
#[derive(Debug, Clone)]
pub struct NonSimpleWitness {
    pub element: MobiusElement,
    pub offset: i64,
    pub corner_index: i64,
    pub lozenge_index: i64,
    pub image: OrbitPoint,
}

#[derive(Debug, Clone)]
pub enum SimplicityVerdict {
    NonSimple(NonSimpleWitness),
    NoWitnessUpTo(u32),
}

/// Depth-stamped outcome of the simplicity semi-decision.
///
/// `NoWitnessUpTo(depth)` is not a simplicity proof: the quantifier over the
/// fundamental group is realized as a bounded search.
#[derive(Debug, Clone)]
pub struct SimplicityCertificate {
    pub depth: u32,
    pub verdict: SimplicityVerdict,
}

impl SimplicityCertificate {
    pub fn is_simple_up_to_depth(&self) -> bool {
        matches!(self.verdict, SimplicityVerdict::NoWitnessUpTo(_))
    }

    /// Re-check a non-simplicity witness by direct membership with margin.
    /// Vacuously true for no-witness verdicts.
    pub fn reverify(&self, chain: &Chain, tol: Tol) -> bool {
        match &self.verdict {
            SimplicityVerdict::NoWitnessUpTo(_) => true,
            SimplicityVerdict::NonSimple(w) => {
                let lift = LiftedCircleMap::lift(&w.element, w.offset);
                let corner = eta_iter(chain.base(), w.corner_index);
                match act(&lift, corner, tol) {
                    Ok(image) => {
                        chain.lozenge(w.lozenge_index).contains(image, tol)
                            == Membership::Inside
                    }
                    Err(_) => false,
                }
            }
        }
    }
}

/// Bounded-depth simplicity semi-decision for a chain of lozenges.
///
/// For every element of the depth-bounded enumeration, every chain corner,
/// and every center offset that can place the image inside a chain lozenge
/// (two interval constraints of width below 1 leave at most a couple of
/// candidate offsets), test interior membership. The first witness in
/// canonical order (enumeration order, then corner, then lozenge, then
/// offset) is returned; any `BoundaryAmbiguous` membership aborts.
pub fn simplicity_check(
    chain: &Chain,
    group: &GroupSpec,
    depth: u32,
    tol: Tol,
) -> Result<SimplicityCertificate> {
    simplicity_check_in(chain, &group.enumerate_elements(depth)?, depth, tol)
}

/// As [`simplicity_check`] over a pre-enumerated element table; `depth` is
/// the stamp recorded on the certificate.
pub fn simplicity_check_in(
    chain: &Chain,
    elements: &[MobiusElement],
    depth: u32,
    tol: Tol,
) -> Result<SimplicityCertificate> {
    for h in elements {
        let lift0 = LiftedCircleMap::lift(h, 0);
        for (ci, corner) in chain.corners() {
            let image0 = match act(&lift0, corner, tol) {
                Ok(p) => p,
                Err(Error::DegeneratePair(msg)) => {
                    return Err(Error::AmbiguousGeometry(format!(
                        "image of corner {ci} under `{}` is degenerate: {msg}",
                        h.word_string()
                    )))
                }
                Err(e) => return Err(e),
            };
            for (li, lozenge) in chain.lozenges() {
                let (ulo, uhi) = lozenge.u_range();
                let (slo, shi) = lozenge.s_range();
                // k must satisfy ulo < image0.u + k < uhi and the s-analogue
                let lo_k = (ulo - image0.u())
                    .max(slo - image0.s())
                    .floor() as i64;
                let hi_k = (uhi - image0.u())
                    .min(shi - image0.s())
                    .ceil() as i64;
                for k in lo_k..=hi_k {
                    let image = image0.shift(k);
                    match lozenge.contains(image, tol) {
                        Membership::Inside => {
                            return Ok(SimplicityCertificate {
                                depth,
                                verdict: SimplicityVerdict::NonSimple(NonSimpleWitness {
                                    element: h.clone(),
                                    offset: k,
                                    corner_index: ci,
                                    lozenge_index: li,
                                    image,
                                }),
                            })
                        }
                        Membership::BoundaryAmbiguous => {
                            return Err(Error::AmbiguousGeometry(format!(
                                "`{}` offset {k} maps corner {ci} within tolerance of a side of lozenge {li}",
                                h.word_string()
                            )))
                        }
                        Membership::Outside => {}
                    }
                }
            }
        }
    }
    Ok(SimplicityCertificate {
        depth,
        verdict: SimplicityVerdict::NoWitnessUpTo(depth),
    })
}
