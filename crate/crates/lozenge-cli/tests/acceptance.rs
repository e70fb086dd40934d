//! Acceptance suite: one test per criterion, each printing a PASS line and
//! holding its stated tolerance and runtime budget.
//!
//! The corpus statuses (simple vs non-simple closed geodesics on the
//! modular torus) were frozen from an independent brute-force computation:
//! conjugate-axis linking implemented separately from this crate's code
//! paths. Any disagreement between the three criteria and these statuses
//! fails the suite.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lozenge::{
    act, cardinality_shift_check_in, crossing_scan_in, double_class, eta, eta_inverse,
    find_linking_witness_in, linked, lozenge_of, orbit_of_element, project_to_universal_circle,
    self_intersection_oracle_in, simplicity_check_in, verify_claim, ArcClass, Chain,
    LiftedCircleMap, LinkingOutcome, MobiusElement, OrbitLabel, OrbitPoint, Tol,
};

/// (word, simple) with statuses from the independent oracle.
const CORPUS: [(&str, bool); 20] = [
    ("a", true),
    ("b", true),
    ("ab", true),
    ("aB", true),
    ("aab", true),
    ("abb", true),
    ("aaab", true),
    ("abbb", true),
    ("aabab", true),
    ("ababb", true),
    ("abab", true),
    ("aabb", false),
    ("aabbb", false),
    ("aaabb", false),
    ("abaB", false),
    ("aabaB", false),
    ("aabbab", false),
    ("aababb", false),
    ("abaBab", false),
    ("aabbaB", false),
];

const LOZENGE_DEPTH: u32 = 8;
const LINKING_DEPTH: u32 = 10;
const ORACLE_DEPTH: u32 = 8;

fn group() -> lozenge::GroupSpec {
    lozenge::GroupSpec::modular_torus()
}

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_1234_abcd)
}

fn random_strip_point(rng: &mut ChaCha8Rng) -> OrbitPoint {
    let s: f64 = rng.random_range(-4.0..4.0);
    let frac: f64 = rng.random_range(0.05..0.95);
    OrbitPoint::new(s - 1.0 + frac, s).unwrap()
}

fn elements_of(word: &str) -> MobiusElement {
    group().element_of_word(word).unwrap()
}

#[test]
fn criterion_01_strip_model_identity_suite() {
    let started = Instant::now();
    let mut rng = rng();
    for _ in 0..1000 {
        let o = random_strip_point(&mut rng);
        let f = eta(o);
        // image in the strip
        assert!(f.s() - 1.0 < f.u() && f.u() < f.s());
        // bijectivity
        assert!(eta_inverse(f).dist_inf(o) <= 1e-12);
        assert!(eta(eta_inverse(o)).dist_inf(o) <= 1e-12);
        // eta^2 = +(1,1)
        assert!(eta(eta(o)).dist_inf(o.shift(1)) <= 1e-12);
        // (eta^s)^-1 = eta^{-s} and (eta^u)^-1 = eta^{-u}
        let x = o.s();
        assert!((lozenge::eta_minus_s(lozenge::eta_s(x)) - x).abs() <= 1e-12);
        let y = o.u();
        assert!((lozenge::eta_minus_u(lozenge::eta_u(y)) - y).abs() <= 1e-12);
    }
    assert!(started.elapsed() < Duration::from_secs(1), "over budget");
    println!("ACCEPTANCE 1: PASS - strip-model identities exact to 1e-12 on 1000 points");
}

#[test]
fn criterion_02_equivariance_of_eta_under_the_group_action() {
    let started = Instant::now();
    let tol = Tol::DEFAULT;
    let g = group();
    let elements = g.enumerate_elements(4).unwrap();
    let mut rng = rng();
    for _ in 0..200 {
        let h = &elements[rng.random_range(0..elements.len())];
        let k = rng.random_range(-2i64..=2);
        let lift = LiftedCircleMap::lift(h, k);
        let o = random_strip_point(&mut rng);
        let lhs = eta(act(&lift, o, tol).unwrap());
        let rhs = act(&lift, eta(o), tol).unwrap();
        assert!(
            lhs.dist_inf(rhs) < 1e-9,
            "equivariance failed for {} k={k}",
            h.word_string()
        );
    }
    assert!(started.elapsed() < Duration::from_secs(5), "over budget");
    println!("ACCEPTANCE 2: PASS - eta commutes with 200 random lifted actions to 1e-9");
}

#[test]
fn criterion_03_triple_agreement_on_the_corpus() {
    let started = Instant::now();
    let tol = Tol::DEFAULT;
    let g = group();
    let shallow = g.enumerate_elements(LOZENGE_DEPTH).unwrap();
    let deep = g.enumerate_elements(LINKING_DEPTH).unwrap();
    for (word, expect_simple) in CORPUS {
        let el = elements_of(word);
        let (o, _) = orbit_of_element(&el, tol).unwrap();
        let chain = Chain::between(o, 1).unwrap();
        let loz =
            simplicity_check_in(&chain, &shallow, LOZENGE_DEPTH, tol).unwrap();
        let link = find_linking_witness_in(&el, &deep, LINKING_DEPTH, tol).unwrap();
        let oracle = self_intersection_oracle_in(&el, &shallow, tol).unwrap();

        let loz_simple = loz.is_simple_up_to_depth();
        let link_simple = !link.found();
        let oracle_simple = oracle == 0;
        assert_eq!(
            loz_simple, link_simple,
            "lozenge vs linking disagree on `{word}`"
        );
        assert_eq!(
            link_simple, oracle_simple,
            "linking vs oracle disagree on `{word}`"
        );
        assert_eq!(
            loz_simple, expect_simple,
            "criteria disagree with the frozen oracle status of `{word}`"
        );
        // non-simplicity witnesses re-verify with margin
        assert!(loz.reverify(&chain, tol), "witness fails reverification");
    }
    assert!(started.elapsed() < Duration::from_secs(60), "over budget");
    println!(
        "ACCEPTANCE 3: PASS - lozenge(d{LOZENGE_DEPTH}), linking(d{LINKING_DEPTH}), oracle(d{ORACLE_DEPTH}) agree on all 20 corpus words"
    );
}

#[test]
fn criterion_04_no_strictly_contained_translates() {
    let started = Instant::now();
    let tol = Tol::DEFAULT;
    let g = group();
    let elements = g.enumerate_elements(LOZENGE_DEPTH).unwrap();
    let mut checked = 0usize;
    for (word, simple) in CORPUS {
        let el = elements_of(word);
        let scan = crossing_scan_in(&el, &elements, tol).unwrap();
        if simple {
            // a simple closed geodesic has no transverse crossings
            assert!(
                scan.arcs.is_empty(),
                "simple `{word}` produced {} arcs",
                scan.arcs.len()
            );
            continue;
        }
        assert!(
            !scan.arcs.is_empty(),
            "non-simple `{word}` must have crossing arcs at depth {LOZENGE_DEPTH}"
        );
        for arc in &scan.arcs {
            assert_ne!(
                arc.classification,
                ArcClass::StrictlyContained,
                "`{word}`: translate of the leaf interval strictly contained"
            );
        }
        assert!(verify_claim(&scan.arcs), "claim fails on `{word}`");
        checked += scan.arcs.len();
    }
    assert!(checked > 0);
    assert!(started.elapsed() < Duration::from_secs(60), "over budget");
    println!(
        "ACCEPTANCE 4: PASS - zero strictly-contained arcs across {checked} arcs of the non-simple corpus"
    );
}

#[test]
fn criterion_05_crossing_iff_linking_exhaustive() {
    let started = Instant::now();
    let tol = Tol::DEFAULT;
    let g = group();
    let elements = g.enumerate_elements(6).unwrap();
    let mut arcs_total = 0usize;
    let mut rejected_total = 0usize;
    for (word, _) in CORPUS {
        let el = elements_of(word);
        let (o, _) = orbit_of_element(&el, tol).unwrap();
        let pair = project_to_universal_circle(o);
        let scan = crossing_scan_in(&el, &elements, tol).unwrap();
        // every emitted arc has linked ideal pairs and a genuine overlap
        for arc in &scan.arcs {
            let image = pair.apply(&arc.element);
            assert!(
                linked(&pair, &image, tol).unwrap(),
                "`{word}`: arc without linking"
            );
            let lift = LiftedCircleMap::lift(&arc.element, arc.offset);
            let (lo, hi) = (scan.interval.lo(), scan.interval.hi());
            let overlap =
                lift.evaluate(hi).min(hi) - lift.evaluate(lo).max(lo);
            assert!(overlap > tol.0, "`{word}`: arc without overlap");
        }
        // every rejected overlap is genuinely unlinked
        for rej in &scan.unlinked {
            let image = pair.apply(&rej.element);
            assert!(
                !linked(&pair, &image, tol).unwrap(),
                "`{word}`: unlinked overlap of `{}` actually links",
                rej.element.word_string()
            );
        }
        // independent census: count every (h, k) whose translate of the
        // interval overlaps it, straight from lift evaluations over a k
        // range that safely covers the possible window
        let (lo, hi) = (scan.interval.lo(), scan.interval.hi());
        let mut census = 0usize;
        for h in &elements {
            let image = pair.apply(h);
            if image.same_unordered(pair, tol) {
                continue;
            }
            let lift0 = LiftedCircleMap::lift(h, 0);
            let (l0, h0) = (lift0.evaluate(lo), lift0.evaluate(hi));
            for k in -4i64..=4 {
                let (il, ih) = (l0 + k as f64, h0 + k as f64);
                if ih.min(hi) - il.max(lo) > tol.0 {
                    census += 1;
                }
            }
        }
        assert_eq!(
            census,
            scan.arcs.len() + scan.unlinked.len(),
            "`{word}`: scan missed overlapping translates"
        );
        arcs_total += scan.arcs.len();
        rejected_total += scan.unlinked.len();
    }
    assert!(arcs_total > 0 && rejected_total > 0);
    assert!(started.elapsed() < Duration::from_secs(60), "over budget");
    println!(
        "ACCEPTANCE 5: PASS - arcs emitted iff pairs linked over {} overlapping translates at depth 6",
        arcs_total + rejected_total
    );
}

#[test]
fn criterion_06_chain_side_disjointness() {
    let started = Instant::now();
    let mut rng = rng();
    for _ in 0..100 {
        let base = random_strip_point(&mut rng);
        let chain = Chain::new(base, 0, 6).unwrap();
        assert!(chain.sides_disjoint(), "chain ranges overlap at {base:?}");
    }
    assert!(started.elapsed() < Duration::from_secs(5));
    println!("ACCEPTANCE 6: PASS - 100 random length-6 chains have exactly disjoint interiors");
}

#[test]
fn criterion_07_stabilized_lozenge() {
    let started = Instant::now();
    let tol = Tol::DEFAULT;
    let words = [
        "a", "b", "ab", "aB", "aab", "abb", "aabb", "aabab", "aaab", "ababb",
    ];
    for word in words {
        let el = elements_of(word);
        let (o, g0) = orbit_of_element(&el, tol).unwrap();
        assert!(act(&g0, o, tol).unwrap().dist_inf(o) <= 1e-9);
        assert!(
            lozenge::check_stabilized(&g0, &lozenge_of(o), tol),
            "`{word}` fails the stabilized-lozenge check"
        );
    }
    assert!(started.elapsed() < Duration::from_secs(5));
    println!("ACCEPTANCE 7: PASS - corner stabilizers fix the opposite corner for 10 words");
}

#[test]
fn criterion_08_double_class_structure() {
    let started = Instant::now();
    let tol = Tol::DEFAULT;
    let words = [
        "a", "b", "ab", "aB", "aab", "abb", "aabb", "aabab", "aaab", "ababb",
    ];
    for word in words {
        let el = elements_of(word);
        let entries = double_class(&el, 3, tol).unwrap();
        assert_eq!(entries.len(), 7);
        let base_pair = entries.iter().find(|e| e.index == 0).unwrap().pair;
        let mut labels = std::collections::BTreeSet::new();
        for e in &entries {
            labels.insert(format!("{:?}", e.label));
            // strip invariant for every iterate
            assert!(e.point.s() - 1.0 < e.point.u() && e.point.u() < e.point.s());
            let want = match e.label {
                OrbitLabel::Even => base_pair,
                OrbitLabel::Odd => base_pair.swapped(),
            };
            assert!(
                tol.circle_eq(e.pair.a_plus.angle(), want.a_plus.angle())
                    && tol.circle_eq(e.pair.a_minus.angle(), want.a_minus.angle()),
                "`{word}` iterate {} has the wrong pair",
                e.index
            );
            assert_eq!(
                e.label,
                if e.index.rem_euclid(2) == 0 {
                    OrbitLabel::Even
                } else {
                    OrbitLabel::Odd
                }
            );
        }
        assert_eq!(labels.len(), 2, "`{word}` must have exactly two orbit labels");
    }
    assert!(started.elapsed() < Duration::from_secs(5));
    println!("ACCEPTANCE 8: PASS - double classes carry two labels with swapped odd pairs");
}

#[test]
fn criterion_09_cardinality_shift_check_on_corpus() {
    let started = Instant::now();
    let tol = Tol::DEFAULT;
    let g = group();
    let elements = g.enumerate_elements(LOZENGE_DEPTH).unwrap();
    for (word, _) in CORPUS {
        let el = elements_of(word);
        assert!(
            cardinality_shift_check_in(&el, &elements, LOZENGE_DEPTH, 3, tol).unwrap(),
            "shift check fails on `{word}`"
        );
    }
    assert!(started.elapsed() < Duration::from_secs(60), "over budget");
    println!("ACCEPTANCE 9: PASS - partner sets are eta-shift invariant across the corpus");
}

#[test]
fn criterion_10_toroidal_contrast() {
    let started = Instant::now();
    let tol = Tol::DEFAULT;
    let g = group();
    let deep = g.enumerate_elements(LINKING_DEPTH).unwrap();
    let mut simple_count = 0;
    for (word, simple) in CORPUS {
        if !simple {
            continue;
        }
        let el = elements_of(word);
        match find_linking_witness_in(&el, &deep, LINKING_DEPTH, tol).unwrap() {
            LinkingOutcome::NoneUpTo(d) => assert_eq!(d, LINKING_DEPTH),
            LinkingOutcome::Witness(w) => panic!(
                "simple word `{word}` has linking witness `{}`",
                w.element.word_string()
            ),
        }
        simple_count += 1;
    }
    assert!(simple_count >= 6);
    assert!(started.elapsed() < Duration::from_secs(60), "over budget");
    println!(
        "ACCEPTANCE 10: PASS - {simple_count} simple words report none-up-to-{LINKING_DEPTH}: the universal linking statement fails in the geodesic-flow model"
    );
}

#[test]
fn criterion_11_cli_determinism() {
    let started = Instant::now();
    let dir1 = tempfile::tempdir().unwrap();
    let dir2 = tempfile::tempdir().unwrap();
    for dir in [dir1.path(), dir2.path()] {
        let out = std::process::Command::new(env!("CARGO_BIN_EXE_lozenge"))
            .args([
                "classify",
                "aabb",
                "--render",
                "--depth",
                "6",
                "--linking-depth",
                "6",
                "--out",
            ])
            .arg(dir)
            .env_remove("LOZENGE_CACHE_DIR")
            .output()
            .expect("binary runs");
        assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    }
    for name in [
        "classify-aabb.report.txt",
        "classify-aabb.svg",
        "classify-aabb.csv",
    ] {
        let a = std::fs::read(dir1.path().join(name)).unwrap();
        let b = std::fs::read(dir2.path().join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between runs");
        assert!(!a.is_empty());
    }
    assert!(started.elapsed() < Duration::from_secs(5), "over budget");
    println!("ACCEPTANCE 11: PASS - classify --render twice gives byte-identical report and SVG");
}
