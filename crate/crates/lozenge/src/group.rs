use std::collections::HashMap;

use crate::error::Error;
use crate::mobius::{MobiusElement, Word};
use crate::Result;

/// Default cap on the projected number of freely reduced words enumerated.
pub const DEFAULT_ELEMENT_CAP: u128 = 1_000_000;

/// Projective matrix distance under which two enumerated elements are
/// considered the same group element.
const DEDUP_EPS: f64 = 1e-9;

/// A finitely generated Fuchsian group given by boundary-acting generators.
///
/// This is the concrete stand-in for the fundamental group: every "for all
/// h" quantifier in the calculus becomes a bounded search over the words of
/// this group.
#[derive(Debug, Clone)]
pub struct GroupSpec {
    name: String,
    generators: Vec<MobiusElement>,
    /// Boundary chart description; all built-in groups act on the
    /// upper-half-plane boundary charted by the Cayley transform.
    model: String,
}

impl GroupSpec {
    /// Build from row-major generator matrices. Generators must be genuine
    /// isometries (no generator may be the identity).
    pub fn new(name: &str, matrices: &[[f64; 4]]) -> Result<Self> {
        let mut generators = Vec::with_capacity(matrices.len());
        for (i, m) in matrices.iter().enumerate() {
            let g = MobiusElement::new(*m, vec![i as i32 + 1])?;
            if g.classify() == crate::mobius::ElementClass::Identity {
                return Err(Error::InvalidMatrix(format!(
                    "generator {} is the identity",
                    i + 1
                )));
            }
            generators.push(g);
        }
        if generators.is_empty() {
            return Err(Error::InvalidMatrix("no generators".to_owned()));
        }
        if generators.len() > 26 {
            // the word alphabet is one letter per generator
            return Err(Error::InvalidMatrix(format!(
                "{} generators exceed the 26-letter alphabet",
                generators.len()
            )));
        }
        Ok(GroupSpec {
            name: name.to_owned(),
            generators,
            model: "upper-half-plane boundary, Cayley chart".to_owned(),
        })
    }

    /// The once-punctured modular torus: the commutator subgroup of the
    /// modular group, free of rank 2.
    pub fn modular_torus() -> Self {
        GroupSpec::new(
            "modular-torus",
            &[[1.0, 1.0, 1.0, 2.0], [1.0, -1.0, -1.0, 2.0]],
        )
        .expect("built-in group")
    }

    /// Side-pairing translations of the regular hyperbolic octagon (genus-2
    /// surface group). Translation axes point in directions `k*pi/4` through
    /// the origin of the disk, translation length `2*arccosh(1 + sqrt 2)`;
    /// entries are evaluated to doubles.
    pub fn octagon_genus2() -> Self {
        let sq2 = std::f64::consts::SQRT_2;
        let alpha = 1.0 + sq2;
        let bmod = (2.0 + 2.0 * sq2).sqrt();
        let mut mats = Vec::new();
        for k in 0..4 {
            let th = (k as f64) * std::f64::consts::FRAC_PI_4;
            let b1 = bmod * th.cos();
            let b2 = bmod * th.sin();
            // SU(1,1) [[alpha, beta],[conj beta, alpha]] conjugated to SL(2,R)
            mats.push([alpha + b1, b2, b2, alpha - b1]);
        }
        GroupSpec::new("octagon-genus2", &mats).expect("built-in group")
    }

    /// Look up a built-in group by name.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "modular-torus" => Some(Self::modular_torus()),
            "octagon-genus2" => Some(Self::octagon_genus2()),
            _ => None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn model(&self) -> &str {
        &self.model
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[MobiusElement] {
        &self.generators
    }

    /// Parse a word over the group's alphabet: the `i`-th lowercase letter is
    /// generator `i`, the uppercase letter its inverse. The result is freely
    /// reduced.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let mut word: Word = Vec::with_capacity(s.len());
        for ch in s.chars() {
            let g = match ch {
                'a'..='z' => (ch as u8 - b'a') as i32 + 1,
                'A'..='Z' => -((ch as u8 - b'A') as i32 + 1),
                _ => {
                    return Err(Error::BadWord(format!(
                        "invalid letter `{ch}` in word `{s}`"
                    )))
                }
            };
            if g.unsigned_abs() as usize > self.rank() {
                return Err(Error::BadWord(format!(
                    "letter `{ch}` names generator {} but the group has rank {}",
                    g.unsigned_abs(),
                    self.rank()
                )));
            }
            if word.last() == Some(&-g) {
                word.pop();
            } else {
                word.push(g);
            }
        }
        Ok(word)
    }

    /// The element of a signed-index word.
    pub fn element_of(&self, word: &[i32]) -> Result<MobiusElement> {
        let mut m = MobiusElement::identity();
        for &g in word {
            let idx = g.unsigned_abs() as usize;
            if idx == 0 || idx > self.rank() {
                return Err(Error::BadWord(format!("generator index {g} out of range")));
            }
            let gen = &self.generators[idx - 1];
            let step = if g > 0 { gen.clone() } else { gen.inverse() };
            m = m.compose(&step);
        }
        Ok(m)
    }

    /// Parse a letter word and evaluate it.
    pub fn element_of_word(&self, s: &str) -> Result<MobiusElement> {
        self.element_of(&self.parse_word(s)?)
    }

    /// Number of freely reduced words of length at most `depth` over this
    /// alphabet (before deduplication).
    pub fn projected_count(&self, depth: u32) -> u128 {
        projected_count(self.rank(), depth)
    }

    /// All freely reduced words of length at most `depth`, evaluated and
    /// deduplicated projectively (matrix distance below `1e-9`, up to sign),
    /// in deterministic length-lexicographic order. The returned set is
    /// closed under inverse and always contains the identity.
    pub fn enumerate_elements(&self, depth: u32) -> Result<Vec<MobiusElement>> {
        self.enumerate_elements_capped(depth, DEFAULT_ELEMENT_CAP)
    }

    /// As [`enumerate_elements`](Self::enumerate_elements) with an explicit
    /// cap on the projected word count.
    pub fn enumerate_elements_capped(
        &self,
        depth: u32,
        cap: u128,
    ) -> Result<Vec<MobiusElement>> {
        let projected = self.projected_count(depth);
        if projected > cap {
            return Err(Error::DepthTooLarge {
                depth,
                projected,
                cap,
            });
        }

        // Signed alphabet in lexicographic order: a < A < b < B < ...
        let mut alphabet: Vec<i32> = Vec::with_capacity(2 * self.rank());
        for i in 1..=self.rank() as i32 {
            alphabet.push(i);
            alphabet.push(-i);
        }

        let mut dedup = DedupGrid::new();
        let mut out: Vec<MobiusElement> = Vec::new();
        let id = MobiusElement::identity();
        dedup.insert(&id, 0);
        out.push(id);

        // frontier holds indices into `out`... not usable since dedup may drop
        // words; keep the raw frontier of (word, matrix) pairs instead.
        let mut frontier: Vec<MobiusElement> = vec![MobiusElement::identity()];
        for _ in 0..depth {
            let mut next: Vec<MobiusElement> = Vec::with_capacity(frontier.len() * alphabet.len());
            for w in &frontier {
                for &g in &alphabet {
                    if w.word().last() == Some(&-g) {
                        continue;
                    }
                    let idx = g.unsigned_abs() as usize - 1;
                    let step = if g > 0 {
                        self.generators[idx].clone()
                    } else {
                        self.generators[idx].inverse()
                    };
                    let cand = w.compose(&step);
                    // frontier keeps every freely reduced word so longer words
                    // are still reachable; only the output is deduplicated
                    if dedup.try_insert(&cand, out.len()) {
                        out.push(cand.clone());
                    }
                    next.push(cand);
                }
            }
            frontier = next;
        }
        Ok(out)
    }
}

/// `sum_{l=0..depth} 2r * (2r-1)^(l-1)` with the l=0 term being 1.
pub fn projected_count(rank: usize, depth: u32) -> u128 {
    let r2 = 2u128 * rank as u128;
    if r2 == 0 {
        return 1;
    }
    let mut total: u128 = 1;
    let mut layer: u128 = 1;
    for l in 1..=depth {
        layer = if l == 1 {
            r2
        } else {
            layer.saturating_mul(r2 - 1)
        };
        total = total.saturating_add(layer);
    }
    total
}

/// Spatial hash over quantized matrix entries for projective deduplication.
struct DedupGrid {
    cells: HashMap<[i64; 4], Vec<usize>>,
    elements: Vec<MobiusElement>,
}

impl DedupGrid {
    const CELL: f64 = 1e-6;

    fn new() -> Self {
        DedupGrid {
            cells: HashMap::new(),
            elements: Vec::new(),
        }
    }

    fn key(m: &[f64; 4]) -> [i64; 4] {
        let mut k = [0i64; 4];
        for i in 0..4 {
            k[i] = (m[i] / Self::CELL).round() as i64;
        }
        k
    }

    fn insert(&mut self, e: &MobiusElement, _id: usize) {
        let idx = self.elements.len();
        self.elements.push(e.clone());
        self.cells.entry(Self::key(&e.matrix())).or_default().push(idx);
    }

    /// Insert unless an element within `DEDUP_EPS` (projectively) is present.
    fn try_insert(&mut self, e: &MobiusElement, id: usize) -> bool {
        let base = Self::key(&e.matrix());
        // probe the 3^4 neighborhood; sign-normalization already folds -M to M
        for d0 in -1..=1i64 {
            for d1 in -1..=1i64 {
                for d2 in -1..=1i64 {
                    for d3 in -1..=1i64 {
                        let k = [base[0] + d0, base[1] + d1, base[2] + d2, base[3] + d3];
                        if let Some(bucket) = self.cells.get(&k) {
                            for &i in bucket {
                                if self.elements[i].projective_distance(e) < DEDUP_EPS {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        self.insert(e, id);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projected_counts() {
        assert_eq!(projected_count(2, 0), 1);
        assert_eq!(projected_count(2, 1), 5);
        assert_eq!(projected_count(2, 2), 17);
        assert_eq!(projected_count(2, 3), 53);
        assert_eq!(projected_count(4, 3), 1 + 8 + 56 + 392);
    }

    #[test]
    fn depth_zero_is_identity_only() {
        let g = GroupSpec::modular_torus();
        let e = g.enumerate_elements(0).unwrap();
        assert_eq!(e.len(), 1);
        assert!(e[0].word().is_empty());
    }

    #[test]
    fn free_rank_two_counts() {
        let g = GroupSpec::modular_torus();
        assert_eq!(g.enumerate_elements(2).unwrap().len(), 17);
        // no coincidental matrix collisions at depth 3
        assert_eq!(g.enumerate_elements(3).unwrap().len(), 53);
    }

    #[test]
    fn octagon_collides_at_relator_length() {
        let g = GroupSpec::octagon_genus2();
        // oracle (independent enumeration): free through length 3, eight
        // coincidences among the 2744 words of length 4
        assert_eq!(g.enumerate_elements(3).unwrap().len(), 457);
        assert_eq!(g.enumerate_elements(4).unwrap().len(), 3193);
    }

    #[test]
    fn octagon_relator_closes() {
        let g = GroupSpec::octagon_genus2();
        let r = g.element_of_word("aBcDAbCd").unwrap();
        assert!(matches!(
            r.classify(),
            crate::mobius::ElementClass::Identity
        ));
    }

    #[test]
    fn enumeration_closed_under_inverse() {
        let g = GroupSpec::modular_torus();
        let elems = g.enumerate_elements(3).unwrap();
        for e in &elems {
            let inv = e.inverse();
            assert!(
                elems.iter().any(|f| f.projective_distance(&inv) < 1e-9),
                "inverse of {} missing",
                e.word_string()
            );
        }
    }

    #[test]
    fn deterministic_order() {
        let g = GroupSpec::modular_torus();
        let e = g.enumerate_elements(2).unwrap();
        let words: Vec<String> = e.iter().map(|x| x.word_string()).collect();
        assert_eq!(
            words,
            vec![
                "<id>", "a", "A", "b", "B", "aa", "ab", "aB", "AA", "Ab", "AB", "ba", "bA", "bb",
                "Ba", "BA", "BB"
            ]
        );
    }

    #[test]
    fn cap_is_enforced() {
        let g = GroupSpec::modular_torus();
        assert!(matches!(
            g.enumerate_elements_capped(10, 1000),
            Err(Error::DepthTooLarge { .. })
        ));
    }

    #[test]
    fn identity_generator_is_rejected() {
        assert!(GroupSpec::new("bad", &[[1.0, 0.0, 0.0, 1.0]]).is_err());
        assert!(GroupSpec::new("empty", &[]).is_err());
    }

    #[test]
    fn word_parsing() {
        let g = GroupSpec::modular_torus();
        assert_eq!(g.parse_word("aabb").unwrap(), vec![1, 1, 2, 2]);
        assert_eq!(g.parse_word("aB").unwrap(), vec![1, -2]);
        // free reduction on input
        assert_eq!(g.parse_word("abBA").unwrap(), Vec::<i32>::new());
        assert!(g.parse_word("xyz").is_err());
        assert!(g.parse_word("a b").is_err());
    }

    #[test]
    fn composition_associative_on_random_triples() {
        let g = GroupSpec::modular_torus();
        let elems = g.enumerate_elements(3).unwrap();
        // deterministic pseudo-random triples
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % elems.len() as u64) as usize
        };
        for _ in 0..200 {
            let (x, y, z) = (&elems[next()], &elems[next()], &elems[next()]);
            let left = x.compose(y).compose(z);
            let right = x.compose(&y.compose(z));
            assert!(left.projective_distance(&right) < 1e-9);
        }
    }
}
