use std::path::Path;

use serde::Deserialize;

use lozenge::{group::DEFAULT_ELEMENT_CAP, GroupSpec, Tol};

use crate::CliError;

/// On-disk configuration. Every section is optional; command-line flags
/// override file values.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub group: Option<GroupSection>,
    pub search: Option<SearchSection>,
    pub render: Option<RenderSection>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSection {
    /// Built-in group name (`modular-torus`, `octagon-genus2`).
    pub name: Option<String>,
    /// Explicit generators as row-major `[a, b, c, d]` with `ad - bc = 1`.
    pub generators: Option<Vec<[f64; 4]>>,
    /// Label for explicit generator sets.
    pub label: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchSection {
    pub depth: Option<u32>,
    #[serde(rename = "linking-depth")]
    pub linking_depth: Option<u32>,
    #[serde(rename = "partner-range")]
    pub partner_range: Option<u32>,
    pub tolerance: Option<f64>,
    #[serde(rename = "max-elements")]
    pub max_elements: Option<u64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RenderSection {
    pub width: Option<u32>,
    pub height: Option<u32>,
    pub samples: Option<usize>,
}

/// Resolved run configuration.
#[derive(Debug, Clone)]
pub struct Config {
    pub group: GroupSpec,
    pub depth: u32,
    pub linking_depth: u32,
    pub partner_range: u32,
    pub tolerance: Tol,
    pub cap: u128,
    pub render: RenderOptions,
}

#[derive(Debug, Clone, Copy)]
pub struct RenderOptions {
    pub width: u32,
    pub height: u32,
    pub samples: usize,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            width: 800,
            height: 600,
            samples: 64,
        }
    }
}

pub const DEFAULT_DEPTH: u32 = 8;
pub const DEFAULT_LINKING_DEPTH: u32 = 10;
pub const DEFAULT_PARTNER_RANGE: u32 = 3;

/// Parse and validate a configuration file.
pub fn load_config(path: &Path) -> Result<Config, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let file: ConfigFile = toml::from_str(&text).map_err(|e| {
        // the toml error message carries line and column
        CliError::Parse(format!("{}: {e}", path.display()))
    })?;
    resolve(file)
}

/// Turn a parsed file into a validated configuration.
pub fn resolve(file: ConfigFile) -> Result<Config, CliError> {
    let group = match file.group {
        None => GroupSpec::modular_torus(),
        Some(g) => resolve_group(g)?,
    };
    let search = file.search.unwrap_or_default();
    let render = file.render.unwrap_or_default();
    let cap = search
        .max_elements
        .map(u128::from)
        .unwrap_or(DEFAULT_ELEMENT_CAP);
    let depth = search.depth.unwrap_or(DEFAULT_DEPTH);
    let linking_depth = search.linking_depth.unwrap_or(DEFAULT_LINKING_DEPTH);
    for d in [depth, linking_depth] {
        if group.projected_count(d) > cap {
            return Err(CliError::Validation(format!(
                "depth {d} projects {} words, over the cap {cap}",
                group.projected_count(d)
            )));
        }
    }
    let tolerance = match search.tolerance {
        None => Tol::DEFAULT,
        Some(t) if t > 0.0 && t < 1e-2 => Tol(t),
        Some(t) => {
            return Err(CliError::Validation(format!(
                "tolerance {t} out of range (0, 1e-2)"
            )))
        }
    };
    Ok(Config {
        group,
        depth,
        linking_depth,
        partner_range: search.partner_range.unwrap_or(DEFAULT_PARTNER_RANGE),
        tolerance,
        cap,
        render: RenderOptions {
            width: render.width.unwrap_or(800).clamp(64, 8192),
            height: render.height.unwrap_or(600).clamp(64, 8192),
            samples: render.samples.unwrap_or(64).clamp(4, 1 << 16),
        },
    })
}

pub fn resolve_group(g: GroupSection) -> Result<GroupSpec, CliError> {
    match (g.name, g.generators) {
        (Some(name), None) => GroupSpec::builtin(&name)
            .ok_or_else(|| CliError::Validation(format!("unknown group `{name}`"))),
        (None, Some(mats)) => {
            let label = g.label.unwrap_or_else(|| "custom".to_owned());
            GroupSpec::new(&label, &mats).map_err(|e| CliError::Validation(e.to_string()))
        }
        (Some(_), Some(_)) => Err(CliError::Validation(
            "give either a group name or explicit generators, not both".to_owned(),
        )),
        (None, None) => Err(CliError::Validation(
            "group section needs a name or generators".to_owned(),
        )),
    }
}
