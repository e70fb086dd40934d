//! Print the crossing-arc table of a word, with displacement samples along
//! each arc's overlap.
//!
//! Usage: `cargo run --example dump_arcs [word] [depth]`

use lozenge::{crossing_scan, GroupSpec, LiftedCircleMap, Tol};

fn main() {
    let tol = Tol::DEFAULT;
    let group = GroupSpec::modular_torus();
    let word = std::env::args().nth(1).unwrap_or_else(|| "aabb".into());
    let depth: u32 = std::env::args()
        .nth(2)
        .and_then(|s| s.parse().ok())
        .unwrap_or(6);
    let g = group.element_of_word(&word).unwrap();
    let scan = crossing_scan(&g, &group, depth, tol).unwrap();
    println!(
        "word {word} depth {depth}: interval [{:.6}, {:.6}], {} arcs, {} unlinked overlaps",
        scan.interval.lo(),
        scan.interval.hi(),
        scan.arcs.len(),
        scan.unlinked.len()
    );
    for a in &scan.arcs {
        let lift = LiftedCircleMap::lift(&a.element, a.offset);
        let (s0, s1) = a.source_raw;
        let mut line = String::new();
        for i in 0..12 {
            let t = s0 + (s1 - s0) * (i as f64 + 0.5) / 12.0;
            line.push_str(&format!("{:+.2e} ", lift.evaluate(t) - t));
        }
        println!(
            "  {:8} k={:+} class={:?} profile={:?} src=({:.4},{:.4}) tgt=({:.4},{:.4})",
            a.element.word_string(),
            a.offset,
            a.classification,
            a.sign_profile,
            a.overlap_source.0,
            a.overlap_source.1,
            a.overlap_target.0,
            a.overlap_target.1,
        );
        println!("      d(t): {line}");
    }
}
