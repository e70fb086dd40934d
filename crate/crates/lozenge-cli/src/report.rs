use std::fmt::Write as _;

use lozenge::GroupSpec;

/// Schema tag written at the top of every report.
pub const REPORT_SCHEMA: &str = "lozenge-report/1";

/// Fixed-precision float formatting used everywhere a report or rendering
/// prints a coordinate; reports must be byte-deterministic.
pub fn fmt_f(x: f64) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    format!("{x:.12}")
}

/// FNV-1a over the group name, rank, and generator matrix bits: the cache
/// and report fingerprint of a group.
pub fn group_fingerprint(group: &GroupSpec) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    let mut eat = |byte: u8| {
        h ^= byte as u64;
        h = h.wrapping_mul(0x100000001b3);
    };
    for b in group.name().bytes() {
        eat(b);
    }
    eat(0xff);
    eat(group.rank() as u8);
    for g in group.generators() {
        for e in g.matrix() {
            for b in e.to_bits().to_le_bytes() {
                eat(b);
            }
        }
    }
    format!("{h:016x}")
}

/// Line-oriented structured report with a schema header.
#[derive(Debug, Default)]
pub struct Report {
    body: String,
}

impl Report {
    pub fn new(command: &str, group: &GroupSpec) -> Self {
        let mut r = Report::bare(command);
        r.kv("group", group.name());
        r.kv("group-fingerprint", &group_fingerprint(group));
        r.kv("rank", &group.rank().to_string());
        r
    }

    /// Header-only report, used when an error precedes group resolution.
    pub fn bare(command: &str) -> Self {
        let mut r = Report::default();
        let _ = writeln!(r.body, "schema: {REPORT_SCHEMA}");
        r.kv("command", command);
        r
    }

    pub fn kv(&mut self, key: &str, value: &str) {
        let _ = writeln!(self.body, "{key}: {value}");
    }

    pub fn kvf(&mut self, key: &str, value: f64) {
        let v = fmt_f(value);
        self.kv(key, &v);
    }

    pub fn section(&mut self, name: &str) {
        let _ = writeln!(self.body, "-- {name} --");
    }

    pub fn line(&mut self, text: &str) {
        let _ = writeln!(self.body, "{text}");
    }

    pub fn finish(mut self, exit: i32) -> String {
        self.kv("exit", &exit.to_string());
        self.body
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting_is_fixed_width() {
        assert_eq!(fmt_f(0.5), "0.500000000000");
        assert_eq!(fmt_f(-1.25), "-1.250000000000");
        assert_eq!(fmt_f(f64::INFINITY), "inf");
    }

    #[test]
    fn fingerprint_distinguishes_builtins() {
        let a = group_fingerprint(&GroupSpec::modular_torus());
        let b = group_fingerprint(&GroupSpec::octagon_genus2());
        assert_ne!(a, b);
        assert_eq!(a.len(), 16);
        // stable across calls
        assert_eq!(a, group_fingerprint(&GroupSpec::modular_torus()));
    }

    #[test]
    fn report_layout() {
        let mut r = Report::new("info", &GroupSpec::modular_torus());
        r.kv("word", "ab");
        r.kvf("trace", 3.0);
        let text = r.finish(0);
        assert!(text.starts_with("schema: lozenge-report/1\ncommand: info\n"));
        assert!(text.ends_with("exit: 0\n"));
        assert!(text.contains("trace: 3.000000000000\n"));
    }
}
