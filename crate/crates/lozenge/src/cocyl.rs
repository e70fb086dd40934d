use std::collections::BTreeSet;

use crate::chain::{simplicity_check_in, Chain, SimplicityCertificate, SimplicityVerdict};
use crate::error::Error;
use crate::group::GroupSpec;
use crate::mobius::{ElementClass, MobiusElement};
use crate::orbit::{eta_iter, orbit_of_element, project_to_universal_circle, PointPair};
use crate::tol::Tol;
use crate::Result;

/// Two pairs on the universal circle are linked when they separate each
/// other: exactly one point of `q` lies in the open arc from `p.a_minus` to
/// `p.a_plus` in the positive orientation. Errors with `DegeneratePoints`
/// unless all four points are pairwise separated by more than `tol`.
pub fn linked(p: &PointPair, q: &PointPair, tol: Tol) -> Result<bool> {
    let pts = [
        p.a_minus.angle(),
        p.a_plus.angle(),
        q.a_minus.angle(),
        q.a_plus.angle(),
    ];
    for i in 0..4 {
        for j in (i + 1)..4 {
            if Tol::circle_dist(pts[i], pts[j]) <= tol.0 {
                return Err(Error::DegeneratePoints(format!(
                    "points {:.12} and {:.12} are separated by at most {}",
                    pts[i], pts[j], tol.0
                )));
            }
        }
    }
    let in_arc = |x: f64| -> bool {
        let span = (pts[1] - pts[0]).rem_euclid(1.0);
        let off = (x - pts[0]).rem_euclid(1.0);
        0.0 < off && off < span
    };
    Ok(in_arc(pts[2]) ^ in_arc(pts[3]))
}

/// A witness that the ideal pair of an orbit is linked with a translate.
#[derive(Debug, Clone)]
pub struct LinkingWitness {
    pub element: MobiusElement,
    pub pair: PointPair,
    pub image_pair: PointPair,
}

#[derive(Debug, Clone)]
pub enum LinkingOutcome {
    Witness(LinkingWitness),
    NoneUpTo(u32),
}

impl LinkingOutcome {
    pub fn found(&self) -> bool {
        matches!(self, LinkingOutcome::Witness(_))
    }
}

/// Search the enumeration for an element whose translate of the ideal pair
/// of `g`'s periodic orbit links with the pair itself.
///
/// Candidates whose image pair is not separated from the base pair (or has
/// collapsed onto itself) within tolerance are skipped deterministically:
/// they are the axis-sharing elements of the cyclic subgroup of `g`, which
/// never link with themselves, together with the contraction tails of long
/// words whose images land too close to a fixed point to test at the
/// working tolerance. The first witness in enumeration order is returned.
pub fn find_linking_witness(
    g: &MobiusElement,
    group: &GroupSpec,
    depth: u32,
    tol: Tol,
) -> Result<LinkingOutcome> {
    find_linking_witness_in(g, &group.enumerate_elements(depth)?, depth, tol)
}

/// As [`find_linking_witness`] over a pre-enumerated element table.
pub fn find_linking_witness_in(
    g: &MobiusElement,
    elements: &[MobiusElement],
    depth: u32,
    tol: Tol,
) -> Result<LinkingOutcome> {
    let (o, _) = orbit_of_element(g, tol)?;
    let pair = project_to_universal_circle(o);
    for h in elements {
        let image = pair.apply(h);
        if !pairs_separated(&pair, &image, tol) {
            continue;
        }
        if linked(&pair, &image, tol)? {
            return Ok(LinkingOutcome::Witness(LinkingWitness {
                element: h.clone(),
                pair,
                image_pair: image,
            }));
        }
    }
    Ok(LinkingOutcome::NoneUpTo(depth))
}

/// All four points of the two pairs pairwise separated by more than `tol`.
fn pairs_separated(p: &PointPair, q: &PointPair, tol: Tol) -> bool {
    let pts = [
        p.a_minus.angle(),
        p.a_plus.angle(),
        q.a_minus.angle(),
        q.a_plus.angle(),
    ];
    for i in 0..4 {
        for j in (i + 1)..4 {
            if Tol::circle_dist(pts[i], pts[j]) <= tol.0 {
                return false;
            }
        }
    }
    true
}

/// Homogeneous coordinates on the boundary `R u {inf}`.
fn homog(x: f64) -> (f64, f64) {
    if x.is_infinite() {
        (1.0, 0.0)
    } else {
        (x, 1.0)
    }
}

fn cross_det(p: (f64, f64), q: (f64, f64)) -> f64 {
    p.0 * q.1 - p.1 * q.0
}

/// Projective linking of two unordered boundary pairs: the cross-ratio sign
/// test, valid through the point at infinity.
fn axes_linked(a: (f64, f64), b: (f64, f64)) -> bool {
    let (x1, x2) = (homog(a.0), homog(a.1));
    let (y1, y2) = (homog(b.0), homog(b.1));
    cross_det(x1, y1) * cross_det(x2, y2) * cross_det(x1, y2) * cross_det(x2, y1) < 0.0
}

/// Chordal distance on `R u {inf}` (the round metric of the boundary
/// circle, up to a factor): `|x - y| / sqrt((1+x^2)(1+y^2))`.
fn chordal(x: f64, y: f64) -> f64 {
    match (x.is_infinite(), y.is_infinite()) {
        (true, true) => 0.0,
        (true, false) => 1.0 / (1.0 + y * y).sqrt(),
        (false, true) => 1.0 / (1.0 + x * x).sqrt(),
        (false, false) => (x - y).abs() / ((1.0 + x * x) * (1.0 + y * y)).sqrt(),
    }
}

/// Independent self-intersection oracle for the closed geodesic of `g`:
/// count conjugate axes `h . axis(g)` linking `axis(g)`, deduplicated modulo
/// the action of the cyclic group of `g` on conjugators and modulo the
/// `h <-> h^-1` symmetry, so the result is a lower bound on the geometric
/// self-intersection number. `0` means no crossing found up to `depth`.
///
/// This route never touches the strip model or the circle chart: axes come
/// from the quadratic formula on conjugated matrices and linking from a
/// cross-ratio sign, which is what makes it an independent check on the
/// lozenge and linking criteria.
pub fn self_intersection_oracle(
    g: &MobiusElement,
    group: &GroupSpec,
    depth: u32,
    tol: Tol,
) -> Result<u32> {
    self_intersection_oracle_in(g, &group.enumerate_elements(depth)?, tol)
}

/// As [`self_intersection_oracle`] over a pre-enumerated element table.
pub fn self_intersection_oracle_in(
    g: &MobiusElement,
    elements: &[MobiusElement],
    tol: Tol,
) -> Result<u32> {
    if g.classify() != ElementClass::Hyperbolic {
        return Err(Error::NotHyperbolic(g.word_string()));
    }
    let (att, rep) = g.fixed_boundary_points()?;
    // conjugate so the axis becomes (0, inf): sigma(x) = (x - rep)/(x - att);
    // g becomes z -> mu z with mu > 1 the derivative at the repelling point
    let sigma = |x: f64| -> f64 {
        if x.is_infinite() {
            return 1.0;
        }
        (x - rep) / (x - att)
    };
    let mu = {
        let [_, _, c, d] = g.matrix();
        if c.abs() < 1e-12 {
            let [a, _, _, dd] = g.matrix();
            let r = (a / dd).abs();
            if r > 1.0 {
                r
            } else {
                1.0 / r
            }
        } else {
            let der_rep = 1.0 / (c * rep + d).powi(2);
            der_rep.abs().max(1.0 / der_rep.abs())
        }
    };
    let log_mu = mu.ln();

    // crossing classes as (position mod translation length, shape) keys;
    // a class matches up to tolerance, with the position circular
    const KEY_EPS: f64 = 1e-6;
    let mut classes: Vec<[(f64, f64); 2]> = Vec::new();
    let key_close = |a: (f64, f64), b: (f64, f64)| -> bool {
        Tol::circle_dist(a.0, b.0) <= KEY_EPS && (a.1 - b.1).abs() <= KEY_EPS
    };
    for h in elements {
        if h.word().is_empty() {
            continue;
        }
        let conj = h.compose(g).compose(&h.inverse());
        let (p, q) = match conj.fixed_boundary_points() {
            Ok(t) => t,
            Err(_) => continue,
        };
        // skip axes not cleanly separated from the base axis: the elements
        // sharing it (which normalize <g> and are no crossing) and the
        // contraction tails of long conjugators, whose cross-ratio sign is
        // not trustworthy at the working tolerance
        let endpoints = [att, rep, p, q];
        let mut separated = true;
        for i in 0..4 {
            for j in (i + 1)..4 {
                if chordal(endpoints[i], endpoints[j]) <= tol.0 {
                    separated = false;
                }
            }
        }
        if !separated {
            continue;
        }
        if !axes_linked((att, rep), (p, q)) {
            continue;
        }
        // position along the axis mod the translation length, plus the
        // <g>-invariant shape ratio, identify the crossing point
        let key_of = |p: f64, q: f64| -> (f64, f64) {
            let (sp, sq) = (sigma(p), sigma(q));
            let pos = ((-sp * sq).ln() / (2.0 * log_mu)).rem_euclid(1.0);
            let shape = (sp / sq).abs().ln(); // <g>-invariant
            (pos, shape)
        };
        let direct = key_of(p, q);
        // the same geometric crossing seen from h^-1
        let hinv = h.inverse();
        let conj_inv = hinv.compose(g).compose(h);
        let mirrored = match conj_inv.fixed_boundary_points() {
            Ok((pi, qi)) => key_of(pi, qi),
            Err(_) => direct,
        };
        let class = [direct, mirrored];
        let seen = classes.iter().any(|c| {
            (key_close(c[0], direct) || key_close(c[1], direct))
                || (key_close(c[0], mirrored) || key_close(c[1], mirrored))
        });
        if !seen {
            classes.push(class);
        }
    }
    Ok(classes.len() as u32)
}

/// Bundle of the three criteria for one closed orbit.
///
/// The construction cross-checks the bundle: a lozenge non-simplicity
/// witness, a linking witness, and a positive oracle count must all appear
/// together (at matching depths) or not at all, else `InconsistentVerdicts`.
#[derive(Debug, Clone)]
pub struct CocylReport {
    pub word: String,
    pub lozenge_depth: u32,
    pub linking_depth: u32,
    pub oracle_depth: u32,
    pub partner_range: u32,
    pub simple_verdict: SimplicityCertificate,
    pub linking: LinkingOutcome,
    pub oracle_crossings: u32,
    /// Iterate indices `n` in `[1, partner_range]` whose chain
    /// `B(o, eta^n o)` shows no witness up to the lozenge depth: candidate
    /// co-cylindrical partners within the double class.
    pub partner_indices: BTreeSet<u32>,
}

impl CocylReport {
    pub fn is_simple_up_to_depth(&self) -> bool {
        self.simple_verdict.is_simple_up_to_depth()
    }
}

/// Assemble the co-cylindrical report of `g`: the simplicity verdict of the
/// one-lozenge chain, the linking search, the oracle count, and the partner
/// set, with the consistency invariant enforced.
pub fn cocyl_report(
    g: &MobiusElement,
    group: &GroupSpec,
    depth: u32,
    partner_range: u32,
    tol: Tol,
) -> Result<CocylReport> {
    cocyl_report_in(g, &group.enumerate_elements(depth)?, depth, partner_range, tol)
}

/// As [`cocyl_report`] over a pre-enumerated element table.
pub fn cocyl_report_in(
    g: &MobiusElement,
    elements: &[MobiusElement],
    depth: u32,
    partner_range: u32,
    tol: Tol,
) -> Result<CocylReport> {
    let (o, _) = orbit_of_element(g, tol)?;
    let simple_verdict = simplicity_check_in(&Chain::between(o, 1)?, elements, depth, tol)?;
    let linking = find_linking_witness_in(g, elements, depth, tol)?;
    let oracle_crossings = self_intersection_oracle_in(g, elements, tol)?;

    let non_simple = !simple_verdict.is_simple_up_to_depth();
    if non_simple != linking.found() || non_simple != (oracle_crossings >= 1) {
        return Err(Error::InconsistentVerdicts(format!(
            "word `{}` at depth {depth}: lozenge witness {}, linking witness {}, oracle {}",
            g.word_string(),
            non_simple,
            linking.found(),
            oracle_crossings
        )));
    }

    let mut partner_indices = BTreeSet::new();
    for n in 1..=partner_range {
        let cert = simplicity_check_in(&Chain::between(o, n)?, elements, depth, tol)?;
        if cert.is_simple_up_to_depth() {
            partner_indices.insert(n);
        }
    }

    Ok(CocylReport {
        word: g.word_string(),
        lozenge_depth: depth,
        linking_depth: depth,
        oracle_depth: depth,
        partner_range,
        simple_verdict,
        linking,
        oracle_crossings,
        partner_indices,
    })
}

/// Witness data for one base point of the shift check: the partner set and
/// the first witness tuple (word, offset, corner, lozenge) per non-simple
/// chain length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartnerSetWitnesses {
    pub partners: BTreeSet<u32>,
    pub witnesses: Vec<(u32, String, i64, i64, i64)>,
}

/// Pure comparison at the heart of the cardinality-shift check; split out so
/// broken shifts can be injected in tests.
pub fn shift_consistent(sets: &[PartnerSetWitnesses]) -> bool {
    sets.windows(2).all(|w| w[0] == w[1])
}

fn partner_sets_for_base(
    base: crate::orbit::OrbitPoint,
    elements: &[MobiusElement],
    depth: u32,
    partner_range: u32,
    tol: Tol,
) -> Result<PartnerSetWitnesses> {
    let mut partners = BTreeSet::new();
    let mut witnesses = Vec::new();
    for n in 1..=partner_range {
        let cert = simplicity_check_in(&Chain::between(base, n)?, elements, depth, tol)?;
        match cert.verdict {
            SimplicityVerdict::NoWitnessUpTo(_) => {
                partners.insert(n);
            }
            SimplicityVerdict::NonSimple(w) => {
                witnesses.push((
                    n,
                    w.element.word_string(),
                    w.offset,
                    w.corner_index,
                    w.lozenge_index,
                ));
            }
        }
    }
    Ok(PartnerSetWitnesses {
        partners,
        witnesses,
    })
}

/// Verify the equal-cardinality mechanism on the double class of `g`: the
/// partner sets computed from the base points `o`, `eta(o)` and `eta^2(o)`
/// must coincide, with the canonical witnesses transported element-wise by
/// the eta-shift (the shifted search finds the same witness tuples).
pub fn cardinality_shift_check(
    g: &MobiusElement,
    group: &GroupSpec,
    depth: u32,
    partner_range: u32,
    tol: Tol,
) -> Result<bool> {
    cardinality_shift_check_in(g, &group.enumerate_elements(depth)?, depth, partner_range, tol)
}

/// As [`cardinality_shift_check`] over a pre-enumerated element table.
pub fn cardinality_shift_check_in(
    g: &MobiusElement,
    elements: &[MobiusElement],
    depth: u32,
    partner_range: u32,
    tol: Tol,
) -> Result<bool> {
    let (o, _) = orbit_of_element(g, tol)?;
    let mut sets = Vec::new();
    for i in 0..3i64 {
        sets.push(partner_sets_for_base(
            eta_iter(o, i),
            elements,
            depth,
            partner_range,
            tol,
        )?);
    }
    Ok(shift_consistent(&sets))
}
