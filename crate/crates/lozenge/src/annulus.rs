use crate::circle::LiftedCircleMap;
use crate::error::Error;
use crate::group::GroupSpec;
use crate::mobius::MobiusElement;
use crate::orbit::{orbit_of_element, project_to_universal_circle, PointPair};
use crate::tol::Tol;
use crate::Result;

/// Default number of interior samples for sign-profile sweeps.
pub const DEFAULT_SIGN_SAMPLES: usize = 64;

/// The closed interval `I = [F_0, F_1]` of stable leaves between the leaf of
/// a periodic orbit and the leaf of its eta-image: `lo = s`, `hi = u + 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeafInterval {
    lo: f64,
    hi: f64,
}

impl LeafInterval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        let w = hi - lo;
        if !(0.0 < w && w < 1.0) {
            return Err(Error::InvalidRange(format!(
                "leaf interval [{lo}, {hi}] must have width in (0, 1)"
            )));
        }
        Ok(LeafInterval { lo, hi })
    }

    /// The interval of the annulus of `g`: from the stable leaf of its orbit
    /// point to the stable leaf of the eta-image.
    pub fn of_element(g: &MobiusElement, tol: Tol) -> Result<Self> {
        let (o, _) = orbit_of_element(g, tol)?;
        LeafInterval::new(o.s(), o.u() + 1.0)
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn width(self) -> f64 {
        self.hi - self.lo
    }

    /// Affine chart of the interval onto `[0, 1]`.
    pub fn normalize(self, x: f64) -> f64 {
        (x - self.lo) / self.width()
    }
}

/// How a translate of the leaf interval meets it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcClass {
    /// Generic transverse overlap: the self-intersection arc starts on one
    /// boundary of the annulus and ends in its interior.
    InteriorEnding,
    /// An image endpoint lands on a boundary leaf within tolerance; the two
    /// boundary components are identified there.
    BoundaryIdentification,
    /// A proper containment `h(I) c I` (or its mirror `I c h(I)`): the
    /// configuration that never occurs for genuine crossing data.
    StrictlyContained,
}

/// Sign of `h_hat(t) - t` on the open source overlap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignProfile {
    AllUp,
    AllDown,
    Mixed,
}

/// A self-intersection arc of the homotopy annulus: a deck transformation
/// `(element, offset)` whose translate of the leaf interval overlaps it, with
/// linked ideal pairs.
#[derive(Debug, Clone)]
pub struct CrossingArc {
    pub element: MobiusElement,
    pub offset: i64,
    /// `I n h^-1(I)`, normalized to the `[0,1]` chart of `I`.
    pub overlap_source: (f64, f64),
    /// `h(I) n I`, normalized.
    pub overlap_target: (f64, f64),
    pub classification: ArcClass,
    pub sign_profile: SignProfile,
    /// Raw (unnormalized) source overlap in leaf coordinates.
    pub source_raw: (f64, f64),
}

/// An enumerated `(h, k)` whose translate overlaps the interval but whose
/// ideal pairs are unlinked; kept for the crossing-iff-linking cross-check.
#[derive(Debug, Clone)]
pub struct UnlinkedOverlap {
    pub element: MobiusElement,
    pub offset: i64,
    pub overlap: (f64, f64),
}

/// Full result of a crossing scan.
#[derive(Debug, Clone)]
pub struct CrossingScan {
    pub interval: LeafInterval,
    pub pair: PointPair,
    pub arcs: Vec<CrossingArc>,
    pub unlinked: Vec<UnlinkedOverlap>,
}

/// All crossing arcs of the annulus of `g` up to enumeration depth.
pub fn crossing_elements(
    g: &MobiusElement,
    group: &GroupSpec,
    depth: u32,
    tol: Tol,
) -> Result<Vec<CrossingArc>> {
    Ok(crossing_scan(g, group, depth, tol)?.arcs)
}

/// Scan the enumeration for translates of the leaf interval that overlap it.
///
/// Every `(h, k)` with overlap longer than `tol` is kept: as an arc when the
/// ideal pairs of the orbit and its image are linked (transversality is
/// equivalent to linking), as an unlinked overlap otherwise. Powers of the
/// stabilizer and the identity are excluded: they fix the interval setwise
/// and realize the deck action of the annulus itself, not self-intersections.
pub fn crossing_scan(
    g: &MobiusElement,
    group: &GroupSpec,
    depth: u32,
    tol: Tol,
) -> Result<CrossingScan> {
    crossing_scan_in(g, &group.enumerate_elements(depth)?, tol)
}

/// As [`crossing_scan`] over a pre-enumerated element table.
pub fn crossing_scan_in(
    g: &MobiusElement,
    elements: &[MobiusElement],
    tol: Tol,
) -> Result<CrossingScan> {
    let (o, _) = orbit_of_element(g, tol)?;
    let interval = LeafInterval::new(o.s(), o.u() + 1.0)?;
    let pair = project_to_universal_circle(o);

    let mut arcs = Vec::new();
    let mut unlinked = Vec::new();
    for h in elements {
        let image_pair = pair.apply(h);
        // stabilizer powers (and the identity) share the axis endpoints
        if image_pair.same_unordered(pair, tol) {
            continue;
        }
        let lift0 = LiftedCircleMap::lift(h, 0);
        let (l0, h0) = (lift0.evaluate(interval.lo), lift0.evaluate(interval.hi));
        // k-window where [l0, h0] + k can overlap [lo, hi]
        let k_lo = (interval.lo - h0).floor() as i64;
        let k_hi = (interval.hi - l0).ceil() as i64;
        for k in k_lo..=k_hi {
            let (il, ih) = (l0 + k as f64, h0 + k as f64);
            let target = (il.max(interval.lo), ih.min(interval.hi));
            if target.1 - target.0 <= tol.0 {
                continue;
            }
            if !is_linked(&pair, &image_pair, tol)? {
                unlinked.push(UnlinkedOverlap {
                    element: h.clone(),
                    offset: k,
                    overlap: target,
                });
                continue;
            }
            let lift = lift0.with_offset(k);
            let inv = lift.inverse();
            let source = (
                inv.evaluate(interval.lo).max(interval.lo),
                inv.evaluate(interval.hi).min(interval.hi),
            );
            let classification = classify_arc(il, ih, interval, tol);
            let sign_profile =
                sign_profile_on(&lift, source, DEFAULT_SIGN_SAMPLES, tol).0;
            arcs.push(CrossingArc {
                element: h.clone(),
                offset: k,
                overlap_source: (
                    interval.normalize(source.0),
                    interval.normalize(source.1),
                ),
                overlap_target: (
                    interval.normalize(target.0),
                    interval.normalize(target.1),
                ),
                classification,
                sign_profile,
                source_raw: source,
            });
        }
    }
    Ok(CrossingScan {
        interval,
        pair,
        arcs,
        unlinked,
    })
}

/// Linking of two ideal pairs, local wrapper over the cocyl predicate with
/// the scan's error context.
fn is_linked(p: &PointPair, q: &PointPair, tol: Tol) -> Result<bool> {
    match crate::cocyl::linked(p, q, tol) {
        Ok(b) => Ok(b),
        Err(Error::DegeneratePoints(msg)) => Err(Error::AmbiguousGeometry(format!(
            "overlapping translate with degenerate ideal points: {msg}"
        ))),
        Err(e) => Err(e),
    }
}

/// Compare the translated endpoints `(il, ih) = h_hat([lo, hi])` against the
/// interval, with tolerance.
fn classify_arc(il: f64, ih: f64, interval: LeafInterval, tol: Tol) -> ArcClass {
    let (lo, hi) = (interval.lo, interval.hi);
    let lo_inside = tol.inside(il, lo, hi);
    let hi_inside = tol.inside(ih, lo, hi);
    if lo_inside && hi_inside {
        return ArcClass::StrictlyContained;
    }
    if il < lo - tol.0 && ih > hi + tol.0 {
        // mirrored containment I c h(I); the inverse element exhibits the
        // strict containment directly
        return ArcClass::StrictlyContained;
    }
    if tol.eq(il, lo) || tol.eq(il, hi) || tol.eq(ih, lo) || tol.eq(ih, hi) {
        return ArcClass::BoundaryIdentification;
    }
    ArcClass::InteriorEnding
}

/// Sample `h_hat(t) - t` on the open interval; returns the profile and the
/// smallest absolute displacement seen.
fn sign_profile_on(
    lift: &LiftedCircleMap,
    source: (f64, f64),
    samples: usize,
    tol: Tol,
) -> (SignProfile, f64) {
    let (a, b) = source;
    let w = b - a;
    if w <= 0.0 {
        return (SignProfile::AllUp, f64::INFINITY);
    }
    let mut min_abs = f64::INFINITY;
    let mut pos = false;
    let mut neg = false;
    let n = samples.max(2);
    // interior grid plus near-endpoint probes
    let mut ts: Vec<f64> = (0..n)
        .map(|i| a + w * (i as f64 + 0.5) / n as f64)
        .collect();
    ts.push(a + w * 1e-3);
    ts.push(b - w * 1e-3);
    for t in ts {
        let d = lift.evaluate(t) - t;
        min_abs = min_abs.min(d.abs());
        if d > tol.0 {
            pos = true;
        } else if d < -tol.0 {
            neg = true;
        } else {
            // a displacement inside the tolerance band counts as a sign change
            pos = true;
            neg = true;
        }
    }
    let profile = match (pos, neg) {
        (true, false) => SignProfile::AllUp,
        (false, true) => SignProfile::AllDown,
        _ => SignProfile::Mixed,
    };
    (profile, min_abs)
}

/// The executable Claim: no crossing arc exhibits a strict containment.
/// An empty arc list verifies vacuously.
pub fn verify_claim(arcs: &[CrossingArc]) -> bool {
    arcs.iter()
        .all(|a| a.classification != ArcClass::StrictlyContained)
}

/// A crossing arc placed on its own vertical fiber of the trivialized
/// annulus, with the measured displacement floor.
#[derive(Debug, Clone)]
pub struct ScheduledArc {
    pub arc: CrossingArc,
    pub vertical: f64,
    pub min_gap: f64,
}

/// Checkable trivialization data for the isotopy of the annulus.
///
/// `schedule_ok` holds when every arc has a one-sided sign profile with
/// displacement floor above tolerance: sliding the horizontal foliation then
/// never lets identified points catch up with each other.
#[derive(Debug, Clone)]
pub struct IsotopyCertificate {
    pub arcs: Vec<ScheduledArc>,
    pub schedule_ok: bool,
    /// Minimum displacement floor over all arcs; `+inf` when there are none.
    pub min_gap: f64,
}

/// Spread proposed vertical coordinates so that all are distinct, preserving
/// order of equal proposals by index.
pub fn assign_distinct_verticals(proposed: &[f64]) -> Vec<f64> {
    let n = proposed.len();
    if n == 0 {
        return Vec::new();
    }
    let min_sep = 1.0 / (2.0 * n as f64 + 2.0);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        proposed[i]
            .partial_cmp(&proposed[j])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(i.cmp(&j))
    });
    let mut out = vec![0.0; n];
    let mut prev = f64::NEG_INFINITY;
    for &i in &order {
        let v = proposed[i].max(prev + min_sep);
        out[i] = v;
        prev = v;
    }
    out
}

/// Build a trivialization certificate with the default sample grid.
pub fn build_trivialization(arcs: &[CrossingArc], tol: Tol) -> Result<IsotopyCertificate> {
    build_trivialization_with_samples(arcs, DEFAULT_SIGN_SAMPLES, tol)
}

/// Assign distinct vertical fibers to the arcs, re-sweep each arc's sign
/// profile on `samples` grid points, and certify the schedule. Refuses with
/// `MixedSignProfile` when a displacement changes sign on an open overlap:
/// the trivialization argument does not cover that configuration.
pub fn build_trivialization_with_samples(
    arcs: &[CrossingArc],
    samples: usize,
    tol: Tol,
) -> Result<IsotopyCertificate> {
    // natural proposal: the source midpoint; collisions get spread apart
    let proposed: Vec<f64> = arcs
        .iter()
        .map(|a| 0.5 * (a.overlap_source.0 + a.overlap_source.1))
        .collect();
    let verticals = assign_distinct_verticals(&proposed);

    let mut scheduled = Vec::with_capacity(arcs.len());
    let mut min_gap = f64::INFINITY;
    for (arc, &vertical) in arcs.iter().zip(&verticals) {
        let lift = LiftedCircleMap::lift(&arc.element, arc.offset);
        let (profile, gap) = sign_profile_on(&lift, arc.source_raw, samples, tol);
        if profile == SignProfile::Mixed {
            return Err(Error::MixedSignProfile(format!(
                "arc of `{}` offset {} changes displacement sign on its overlap",
                arc.element.word_string(),
                arc.offset
            )));
        }
        min_gap = min_gap.min(gap);
        scheduled.push(ScheduledArc {
            arc: CrossingArc {
                sign_profile: profile,
                ..arc.clone()
            },
            vertical,
            min_gap: gap,
        });
    }
    let schedule_ok = scheduled
        .iter()
        .all(|s| s.min_gap > tol.0 && s.arc.sign_profile != SignProfile::Mixed);
    Ok(IsotopyCertificate {
        arcs: scheduled,
        schedule_ok,
        min_gap,
    })
}
