use std::path::{Path, PathBuf};

use lozenge::{GroupSpec, MobiusElement, Word};

use crate::report::group_fingerprint;
use crate::CliError;

const CACHE_SCHEMA: &str = "lozenge-cache/1";

/// Environment variable overriding the cache directory.
pub const CACHE_ENV: &str = "LOZENGE_CACHE_DIR";

fn cache_path(dir: &Path, group: &GroupSpec, depth: u32) -> PathBuf {
    dir.join(format!("{}-d{}.elems", group_fingerprint(group), depth))
}

/// Enumerate through a persistent cache keyed by (group fingerprint, depth).
///
/// A hit reproduces the exact stored elements (bit-for-bit matrices), so
/// cached and fresh runs produce identical reports; a corrupt or mismatched
/// file is ignored and rebuilt.
pub fn cached_enumeration(
    group: &GroupSpec,
    depth: u32,
    cap: u128,
    dir: Option<&Path>,
) -> Result<Vec<MobiusElement>, CliError> {
    let path = dir.map(|d| cache_path(d, group, depth));
    if let Some(p) = &path {
        if let Some(elements) = try_load(p, group, depth) {
            return Ok(elements);
        }
    }
    let elements = group
        .enumerate_elements_capped(depth, cap)
        .map_err(CliError::Lib)?;
    if let Some(p) = &path {
        if let Some(parent) = p.parent() {
            let _ = std::fs::create_dir_all(parent);
        }
        let _ = std::fs::write(p, serialize(group, depth, &elements));
    }
    Ok(elements)
}

fn serialize(group: &GroupSpec, depth: u32, elements: &[MobiusElement]) -> String {
    let mut out = String::new();
    out.push_str(CACHE_SCHEMA);
    out.push('\n');
    out.push_str(&format!("group: {}\n", group.name()));
    out.push_str(&format!("fingerprint: {}\n", group_fingerprint(group)));
    out.push_str(&format!("depth: {depth}\n"));
    out.push_str(&format!("count: {}\n", elements.len()));
    for e in elements {
        let w = if e.word().is_empty() {
            "-".to_owned()
        } else {
            e.word_string()
        };
        let [a, b, c, d] = e.matrix();
        out.push_str(&format!(
            "{w} {:016x} {:016x} {:016x} {:016x}\n",
            a.to_bits(),
            b.to_bits(),
            c.to_bits(),
            d.to_bits()
        ));
    }
    out
}

fn try_load(path: &Path, group: &GroupSpec, depth: u32) -> Option<Vec<MobiusElement>> {
    let text = std::fs::read_to_string(path).ok()?;
    parse_cache(&text, group, depth)
}

/// Decode a cache file body against the expected group and depth. `None` on
/// any mismatch or corruption; the caller then re-enumerates.
pub fn parse_cache(text: &str, group: &GroupSpec, depth: u32) -> Option<Vec<MobiusElement>> {
    let mut lines = text.lines();
    if lines.next()? != CACHE_SCHEMA {
        return None;
    }
    if lines.next()? != format!("group: {}", group.name()) {
        return None;
    }
    if lines.next()? != format!("fingerprint: {}", group_fingerprint(group)) {
        return None;
    }
    if lines.next()? != format!("depth: {depth}") {
        return None;
    }
    let count: usize = lines.next()?.strip_prefix("count: ")?.parse().ok()?;
    let mut elements = Vec::with_capacity(count);
    for line in lines {
        let mut parts = line.split(' ');
        let word_str = parts.next()?;
        let word: Word = if word_str == "-" {
            Vec::new()
        } else {
            parse_letters(word_str)?
        };
        let mut m = [0f64; 4];
        for slot in &mut m {
            *slot = f64::from_bits(u64::from_str_radix(parts.next()?, 16).ok()?);
        }
        if parts.next().is_some() {
            return None;
        }
        elements.push(MobiusElement::from_normalized(m, word).ok()?);
    }
    if elements.len() != count {
        return None;
    }
    Some(elements)
}

fn parse_letters(s: &str) -> Option<Word> {
    let mut word = Vec::with_capacity(s.len());
    for ch in s.chars() {
        let g = match ch {
            'a'..='z' => (ch as u8 - b'a') as i32 + 1,
            'A'..='Z' => -((ch as u8 - b'A') as i32 + 1),
            _ => return None,
        };
        word.push(g);
    }
    Some(word)
}
