use std::fmt;

use crate::circle::CirclePoint;
use crate::error::Error;
use crate::Result;

/// Determinant drift tolerated at construction before rejecting a matrix,
/// with a hair of slack so inputs quoted at the decimal boundary (for
/// example `det = 0.999999999`) are still accepted after rounding.
const DET_EPS: f64 = 1e-9 + 1e-15;
/// An entry is treated as the leading nonzero for sign normalization once it
/// exceeds this; SL(2,R) matrices always have an entry of modulus >= 1/2.
const SIGN_EPS: f64 = 1e-12;
/// Trace band around 2 classified as parabolic.
const CLASS_EPS: f64 = 1e-9;
/// Matrix distance to +-Id under which an element counts as the identity.
const ID_EPS: f64 = 1e-9;

/// A freely reduced word in signed generator indices: `1` is the first
/// generator, `-1` its inverse, and so on.
pub type Word = Vec<i32>;

/// Freely reduce the concatenation of two words.
pub fn reduce_concat(left: &[i32], right: &[i32]) -> Word {
    let mut out: Word = left.to_vec();
    for &g in right {
        if out.last() == Some(&-g) {
            out.pop();
        } else {
            out.push(g);
        }
    }
    out
}

/// Render a word with letters: generator `i` is the `i`-th lowercase letter,
/// its inverse the uppercase one. The empty word renders as `<id>`.
pub fn word_string(word: &[i32]) -> String {
    if word.is_empty() {
        return "<id>".to_owned();
    }
    word.iter()
        .map(|&g| {
            let idx = (g.unsigned_abs() - 1) as u8;
            let base = if g > 0 { b'a' } else { b'A' };
            (base + idx) as char
        })
        .collect()
}

/// Trace classification of a boundary isometry.
///
/// `marginal` is set on a parabolic verdict whose trace is only within the
/// tolerance band of 2 rather than equal to it at machine precision; the
/// caller is told the verdict is a tolerance call.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementClass {
    Identity,
    Elliptic,
    Parabolic { marginal: bool },
    Hyperbolic,
}

/// A boundary-acting isometry: a sign-normalized real 2x2 matrix with
/// determinant 1, together with the freely reduced generator word that
/// produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct MobiusElement {
    m: [f64; 4],
    word: Word,
}

impl MobiusElement {
    /// Build from a row-major matrix `(a, b, c, d)` and a word. The matrix is
    /// renormalized to determinant exactly 1 and sign-normalized; rejected if
    /// the determinant is off by more than `1e-9`.
    pub fn new(m: [f64; 4], word: Word) -> Result<Self> {
        let det = m[0] * m[3] - m[1] * m[2];
        if !det.is_finite() || (det - 1.0).abs() > DET_EPS {
            return Err(Error::InvalidMatrix(format!(
                "determinant {det:.12} is not 1 within 1e-9"
            )));
        }
        let r = det.sqrt();
        let mut m = [m[0] / r, m[1] / r, m[2] / r, m[3] / r];
        sign_normalize(&mut m);
        Ok(MobiusElement { m, word })
    }

    /// Rebuild an element from already-normalized data (a cache or wire
    /// format). Validates the determinant and the sign convention but does
    /// not renormalize, so the exact stored bits are preserved.
    pub fn from_normalized(m: [f64; 4], word: Word) -> Result<Self> {
        let det = m[0] * m[3] - m[1] * m[2];
        if !det.is_finite() || (det - 1.0).abs() > DET_EPS {
            return Err(Error::InvalidMatrix(format!(
                "determinant {det:.12} is not 1 within 1e-9"
            )));
        }
        for &e in &m {
            if e.abs() > SIGN_EPS {
                if e < 0.0 {
                    return Err(Error::InvalidMatrix(
                        "matrix is not sign-normalized".to_owned(),
                    ));
                }
                break;
            }
        }
        Ok(MobiusElement { m, word })
    }

    pub fn identity() -> Self {
        MobiusElement {
            m: [1.0, 0.0, 0.0, 1.0],
            word: Vec::new(),
        }
    }

    pub fn matrix(&self) -> [f64; 4] {
        self.m
    }

    pub fn word(&self) -> &[i32] {
        &self.word
    }

    pub fn word_string(&self) -> String {
        word_string(&self.word)
    }

    pub fn trace(&self) -> f64 {
        self.m[0] + self.m[3]
    }

    /// Matrix product `self * other`, renormalized; the word is the reduced
    /// concatenation.
    pub fn compose(&self, other: &MobiusElement) -> MobiusElement {
        let [a, b, c, d] = self.m;
        let [p, q, r, s] = other.m;
        let mut m = [
            a * p + b * r,
            a * q + b * s,
            c * p + d * r,
            c * q + d * s,
        ];
        // det is 1 up to roundoff by construction; renormalize to keep the
        // |det - 1| < 1e-12 invariant through long products.
        let det = m[0] * m[3] - m[1] * m[2];
        let rt = det.sqrt();
        for e in &mut m {
            *e /= rt;
        }
        sign_normalize(&mut m);
        MobiusElement {
            m,
            word: reduce_concat(&self.word, &other.word),
        }
    }

    pub fn inverse(&self) -> MobiusElement {
        let [a, b, c, d] = self.m;
        let mut m = [d, -b, -c, a];
        sign_normalize(&mut m);
        MobiusElement {
            m,
            word: self.word.iter().rev().map(|g| -g).collect(),
        }
    }

    /// Projective matrix distance: `min(|M - N|_inf, |M + N|_inf)`.
    pub fn projective_distance(&self, other: &MobiusElement) -> f64 {
        let mut dm: f64 = 0.0;
        let mut dp: f64 = 0.0;
        for i in 0..4 {
            dm = dm.max((self.m[i] - other.m[i]).abs());
            dp = dp.max((self.m[i] + other.m[i]).abs());
        }
        dm.min(dp)
    }

    /// Classify by |trace|: above `2 + eps` hyperbolic, below `2 - eps`
    /// elliptic, the band in between parabolic. Matrices within `1e-9` of
    /// +-Id classify as the identity first.
    pub fn classify(&self) -> ElementClass {
        let id = MobiusElement::identity();
        if self.projective_distance(&id) < ID_EPS {
            return ElementClass::Identity;
        }
        let t = self.trace().abs();
        if t > 2.0 + CLASS_EPS {
            ElementClass::Hyperbolic
        } else if t < 2.0 - CLASS_EPS {
            ElementClass::Elliptic
        } else {
            ElementClass::Parabolic {
                marginal: (t - 2.0).abs() > 1e-12,
            }
        }
    }

    /// Boundary action on `R u {inf}`: `x -> (ax + b)/(cx + d)`, with
    /// `f64::INFINITY` standing for the point at infinity.
    pub fn apply_boundary(&self, x: f64) -> f64 {
        let [a, b, c, d] = self.m;
        if x.is_infinite() {
            return if c.abs() < SIGN_EPS {
                f64::INFINITY
            } else {
                a / c
            };
        }
        let den = c * x + d;
        if den.abs() < 1e-300 {
            return f64::INFINITY;
        }
        (a * x + b) / den
    }

    /// Fixed boundary points of a hyperbolic element, on `R u {inf}`,
    /// as `(attracting, repelling)`.
    pub fn fixed_boundary_points(&self) -> Result<(f64, f64)> {
        if self.classify() != ElementClass::Hyperbolic {
            return Err(Error::NotHyperbolic(self.word_string()));
        }
        let [a, b, c, d] = self.m;
        if c.abs() < SIGN_EPS {
            // Fixes inf and b/(d - a); inf is attracting iff |a| > 1.
            let finite = b / (d - a);
            return if a.abs() > 1.0 {
                Ok((f64::INFINITY, finite))
            } else {
                Ok((finite, f64::INFINITY))
            };
        }
        let tr = a + d;
        let disc = (tr * tr - 4.0).sqrt();
        let x1 = ((a - d) + disc) / (2.0 * c);
        let x2 = ((a - d) - disc) / (2.0 * c);
        // attracting where |g'(x)| = 1/(cx + d)^2 < 1
        if (c * x1 + d).abs() > 1.0 {
            Ok((x1, x2))
        } else {
            Ok((x2, x1))
        }
    }

    /// Axis endpoints in circle coordinates, `(attracting, repelling)`.
    pub fn axis_endpoints(&self) -> Result<(CirclePoint, CirclePoint)> {
        let (att, rep) = self.fixed_boundary_points()?;
        Ok((CirclePoint::from_boundary(att), CirclePoint::from_boundary(rep)))
    }
}

impl fmt::Display for MobiusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.m;
        write!(f, "{} [{a:.9} {b:.9}; {c:.9} {d:.9}]", self.word_string())
    }
}

fn sign_normalize(m: &mut [f64; 4]) {
    for &e in m.iter() {
        if e.abs() > SIGN_EPS {
            if e < 0.0 {
                for x in m.iter_mut() {
                    *x = -*x;
                }
            }
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen_a() -> MobiusElement {
        MobiusElement::new([1.0, 1.0, 1.0, 2.0], vec![1]).unwrap()
    }

    fn gen_b() -> MobiusElement {
        MobiusElement::new([1.0, -1.0, -1.0, 2.0], vec![2]).unwrap()
    }

    #[test]
    fn compose_identity_is_neutral() {
        let a = gen_a();
        let c = MobiusElement::identity().compose(&a);
        assert_eq!(c.word(), a.word());
        assert!(c.projective_distance(&a) < 1e-15);
    }

    #[test]
    fn compose_with_inverse_cancels() {
        let a = gen_a();
        let c = a.compose(&a.inverse());
        assert!(c.word().is_empty());
        assert!(c.projective_distance(&MobiusElement::identity()) < 1e-12);
    }

    #[test]
    fn compose_matches_direct_multiplication() {
        // oracle: plain matrix product of the modular-torus generators,
        // [[1,1],[1,2]] * [[1,-1],[-1,2]] = [[0,1],[-1,3]]
        let c = gen_a().compose(&gen_b());
        let expect = [0.0, 1.0, -1.0, 3.0];
        for (got, want) in c.matrix().iter().zip(&expect) {
            assert!((got - want).abs() < 1e-12, "{:?}", c.matrix());
        }
        assert_eq!(c.word(), &[1, 2]);
    }

    #[test]
    fn classification_by_trace() {
        assert_eq!(gen_a().classify(), ElementClass::Hyperbolic);
        let par = MobiusElement::new([1.0, 1.0, 0.0, 1.0], vec![]).unwrap();
        assert_eq!(par.classify(), ElementClass::Parabolic { marginal: false });
        let ell = MobiusElement::new([0.0, 1.0, -1.0, 0.0], vec![]).unwrap();
        assert_eq!(ell.classify(), ElementClass::Elliptic);
        assert_eq!(MobiusElement::identity().classify(), ElementClass::Identity);
    }

    #[test]
    fn tolerance_band_parabolic_is_marginal() {
        // trace 2 + (a-1)^2/a with a - 1 ~ 2.2e-5 puts |trace| - 2 ~ 5e-10:
        // inside the parabolic band but not parabolic at machine precision
        let a = 1.0000224f64;
        let m = MobiusElement::new([a, 1.0, 0.0, 1.0 / a], vec![]).unwrap();
        assert!((m.trace() - 2.0).abs() < 1e-9);
        assert_eq!(m.classify(), ElementClass::Parabolic { marginal: true });
    }

    #[test]
    fn commutator_of_modular_torus_pair_is_parabolic() {
        // oracle: A B A^-1 B^-1 = [[-1,0],[-6,-1]], trace -2
        let (a, b) = (gen_a(), gen_b());
        let k = a
            .compose(&b)
            .compose(&a.inverse())
            .compose(&b.inverse());
        assert!((k.trace().abs() - 2.0).abs() < 1e-12);
        assert!(matches!(k.classify(), ElementClass::Parabolic { .. }));
    }

    #[test]
    fn axis_of_a_is_golden_pair() {
        // oracle: fixed points of (x+1)/(x+2) solve x^2 + x - 1 = 0
        let (att, rep) = gen_a().fixed_boundary_points().unwrap();
        assert!((att - 0.618_033_988_749_894_9).abs() < 1e-12);
        assert!((rep + 1.618_033_988_749_895).abs() < 1e-12);
    }

    #[test]
    fn inverse_swaps_axis_endpoints() {
        let a = gen_a();
        let (att, rep) = a.fixed_boundary_points().unwrap();
        let (att_i, rep_i) = a.inverse().fixed_boundary_points().unwrap();
        assert!((att - rep_i).abs() < 1e-12);
        assert!((rep - att_i).abs() < 1e-12);
    }

    #[test]
    fn axis_of_parabolic_is_error() {
        let par = MobiusElement::new([1.0, 1.0, 0.0, 1.0], vec![]).unwrap();
        assert!(matches!(
            par.fixed_boundary_points(),
            Err(Error::NotHyperbolic(_))
        ));
    }

    #[test]
    fn axis_endpoints_fixed_by_boundary_action() {
        let a = gen_a();
        let (att, rep) = a.fixed_boundary_points().unwrap();
        assert!((a.apply_boundary(att) - att).abs() < 1e-9);
        assert!((a.apply_boundary(rep) - rep).abs() < 1e-9);
    }

    #[test]
    fn c_zero_hyperbolic_fixes_infinity() {
        let g = MobiusElement::new([2.0, 0.0, 0.0, 0.5], vec![]).unwrap();
        let (att, rep) = g.fixed_boundary_points().unwrap();
        assert!(att.is_infinite());
        assert_eq!(rep, 0.0);
    }

    #[test]
    fn rejects_far_from_unimodular() {
        assert!(MobiusElement::new([1.0, 0.0, 0.0, 0.9], vec![]).is_err());
        // det within 1e-9 of 1 is renormalized
        let near = MobiusElement::new([1.0, 0.0, 0.0, 1.0 - 1e-10], vec![]).unwrap();
        let det = {
            let [a, b, c, d] = near.matrix();
            a * d - b * c
        };
        assert!((det - 1.0).abs() < 1e-13);
    }

    #[test]
    fn word_rendering() {
        assert_eq!(word_string(&[1, 1, 2, 2]), "aabb");
        assert_eq!(word_string(&[1, -2]), "aB");
        assert_eq!(word_string(&[]), "<id>");
    }
}
