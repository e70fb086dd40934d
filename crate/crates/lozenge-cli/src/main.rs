use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use lozenge::{
    annulus::build_trivialization_with_samples, cardinality_shift_check_in, cocyl_report_in,
    crossing_scan_in, find_linking_witness_in, orbit_of_element, simplicity_check_in,
    verify_claim, Chain, Error, GroupSpec, LinkingOutcome, MobiusElement, SimplicityVerdict, Tol,
};

use lozenge_cli::cache::{cached_enumeration, CACHE_ENV};
use lozenge_cli::config::{self, load_config, Config};
use lozenge_cli::render::{render_csv, render_svg, Marker, MarkerKind};
use lozenge_cli::report::{fmt_f, Report};
use lozenge_cli::{CliError, EXIT_INCONCLUSIVE, EXIT_OK, EXIT_VIOLATION};

#[derive(Parser)]
#[command(
    name = "lozenge",
    version,
    about = "Strip-model orbit calculus for geodesic flows of hyperbolic surfaces"
)]
struct Cli {
    /// Configuration file (TOML)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Built-in group name, overriding the config
    #[arg(long, global = true)]
    group: Option<String>,
    /// Enumeration depth for lozenge and oracle searches
    #[arg(long, global = true)]
    depth: Option<u32>,
    /// Enumeration depth for the linking search
    #[arg(long = "linking-depth", global = true)]
    linking_depth: Option<u32>,
    /// Largest eta-iterate tested for co-cylindrical partners
    #[arg(long = "partner-range", global = true)]
    partner_range: Option<u32>,
    /// Comparison tolerance override
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Also write SVG and CSV renderings
    #[arg(long, global = true)]
    render: bool,
    /// Output directory for reports and renderings
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Enumeration cache directory (or set LOZENGE_CACHE_DIR)
    #[arg(long = "cache-dir", global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Describe the configured group and its generators
    Info,
    /// Classify a word and run the co-cylindrical criteria on it
    Classify { word: String },
    /// The chain of lozenges over the orbit of a word
    Chain {
        word: String,
        /// Number of lozenges in the chain
        #[arg(long, default_value_t = 4)]
        n: u32,
    },
    /// Crossing arcs of the homotopy annulus and its trivialization
    Annulus { word: String },
    /// Full co-cylindrical report with partner set and shift check
    Cocyl { word: String },
    /// Render the strip, a chain, and its corners
    Render {
        word: String,
        #[arg(long, default_value_t = 4)]
        n: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            let code = e.exit_code();
            eprintln!("error: {e}");
            // errors are serialized into a report as well
            let mut r = Report::bare(command_name(&cli.command));
            r.kv("error", &e.to_string());
            let _ = write_artifact(&cli.out, &report_filename(&cli.command), &r.finish(code));
            code
        }
    };
    eprintln!("# elapsed-ms: {}", started.elapsed().as_millis());
    ExitCode::from(code as u8)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Info => "info",
        Command::Classify { .. } => "classify",
        Command::Chain { .. } => "chain",
        Command::Annulus { .. } => "annulus",
        Command::Cocyl { .. } => "cocyl",
        Command::Render { .. } => "render",
    }
}

fn command_word(c: &Command) -> Option<&str> {
    match c {
        Command::Info => None,
        Command::Classify { word }
        | Command::Chain { word, .. }
        | Command::Annulus { word }
        | Command::Cocyl { word }
        | Command::Render { word, .. } => Some(word),
    }
}

fn artifact_basename(c: &Command) -> String {
    match command_word(c) {
        None => command_name(c).to_owned(),
        Some(w) => {
            // words are letters when valid; anything else (which still gets
            // an error report) must not escape the output directory
            let safe: String = w
                .chars()
                .map(|ch| if ch.is_ascii_alphanumeric() { ch } else { '_' })
                .collect();
            format!("{}-{}", command_name(c), safe)
        }
    }
}

fn report_filename(c: &Command) -> String {
    format!("{}.report.txt", artifact_basename(c))
}

fn write_artifact(out: &Path, name: &str, content: &str) -> Result<(), CliError> {
    std::fs::create_dir_all(out)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", out.display())))?;
    let path = out.join(name);
    std::fs::write(&path, content)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn effective_config(cli: &Cli) -> Result<Config, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => load_config(path)?,
        None => config::resolve(config::ConfigFile::default())?,
    };
    if let Some(name) = &cli.group {
        cfg.group = GroupSpec::builtin(name)
            .ok_or_else(|| CliError::Validation(format!("unknown group `{name}`")))?;
    }
    if let Some(d) = cli.depth {
        cfg.depth = d;
    }
    if let Some(d) = cli.linking_depth {
        cfg.linking_depth = d;
    }
    if let Some(r) = cli.partner_range {
        cfg.partner_range = r;
    }
    if let Some(t) = cli.tolerance {
        if !(t > 0.0 && t < 1e-2) {
            return Err(CliError::Validation(format!(
                "tolerance {t} out of range (0, 1e-2)"
            )));
        }
        cfg.tolerance = Tol(t);
    }
    for d in [cfg.depth, cfg.linking_depth] {
        if cfg.group.projected_count(d) > cfg.cap {
            return Err(CliError::Validation(format!(
                "depth {d} projects {} words, over the cap {}",
                cfg.group.projected_count(d),
                cfg.cap
            )));
        }
    }
    Ok(cfg)
}

fn cache_dir(cli: &Cli) -> Option<PathBuf> {
    cli.cache_dir
        .clone()
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
}

fn run(cli: &Cli) -> Result<i32, CliError> {
    let cfg = effective_config(cli)?;
    let cache = cache_dir(cli);
    let (code, report, renderings) = match &cli.command {
        Command::Info => cmd_info(&cfg),
        Command::Classify { word } => cmd_classify(&cfg, word, cache.as_deref(), cli.render),
        Command::Chain { word, n } => cmd_chain(&cfg, word, *n, cli.render),
        Command::Annulus { word } => cmd_annulus(&cfg, word, cache.as_deref()),
        Command::Cocyl { word } => cmd_cocyl(&cfg, word, cache.as_deref()),
        Command::Render { word, n } => cmd_render(&cfg, word, *n, cache.as_deref()),
    }?;
    write_artifact(&cli.out, &report_filename(&cli.command), &report)?;
    print!("{report}");
    let base = artifact_basename(&cli.command);
    if let Some((svg, csv)) = renderings {
        write_artifact(&cli.out, &format!("{base}.svg"), &svg)?;
        write_artifact(&cli.out, &format!("{base}.csv"), &csv)?;
    }
    Ok(code)
}

type CommandOutput = (i32, String, Option<(String, String)>);

fn cmd_info(cfg: &Config) -> Result<CommandOutput, CliError> {
    let mut r = Report::new("info", &cfg.group);
    r.kv("model", cfg.group.model());
    r.kv("depth", &cfg.depth.to_string());
    r.kv("linking-depth", &cfg.linking_depth.to_string());
    r.kv("tolerance", &format!("{:e}", cfg.tolerance.0));
    r.kv(
        "projected-words-at-depth",
        &cfg.group.projected_count(cfg.depth).to_string(),
    );
    r.section("generators");
    for (i, g) in cfg.group.generators().iter().enumerate() {
        let [a, b, c, d] = g.matrix();
        r.line(&format!(
            "generator: {} matrix=[{} {} {} {}] trace={} class={}",
            (b'a' + i as u8) as char,
            fmt_f(a),
            fmt_f(b),
            fmt_f(c),
            fmt_f(d),
            fmt_f(g.trace()),
            class_name(g)
        ));
    }
    Ok((EXIT_OK, r.finish(EXIT_OK), None))
}

fn class_name(g: &MobiusElement) -> String {
    match g.classify() {
        lozenge::ElementClass::Identity => "identity".into(),
        lozenge::ElementClass::Elliptic => "elliptic".into(),
        lozenge::ElementClass::Hyperbolic => "hyperbolic".into(),
        lozenge::ElementClass::Parabolic { marginal: false } => "parabolic".into(),
        lozenge::ElementClass::Parabolic { marginal: true } => "parabolic (marginal)".into(),
    }
}

fn header(r: &mut Report, cfg: &Config, word: &str) {
    r.kv("word", word);
    r.kv("depth", &cfg.depth.to_string());
    r.kv("linking-depth", &cfg.linking_depth.to_string());
    r.kv("partner-range", &cfg.partner_range.to_string());
    r.kv("tolerance", &format!("{:e}", cfg.tolerance.0));
}

fn matrix_string(g: &MobiusElement) -> String {
    let [a, b, c, d] = g.matrix();
    format!("[{} {} {} {}]", fmt_f(a), fmt_f(b), fmt_f(c), fmt_f(d))
}

fn element_lines(r: &mut Report, g: &MobiusElement) {
    r.kv("matrix", &matrix_string(g));
    r.kvf("trace", g.trace());
    r.kv("class", &class_name(g));
}

fn cmd_classify(
    cfg: &Config,
    word: &str,
    cache: Option<&Path>,
    want_render: bool,
) -> Result<CommandOutput, CliError> {
    let g = cfg.group.element_of_word(word)?;
    let mut r = Report::new("classify", &cfg.group);
    header(&mut r, cfg, word);
    element_lines(&mut r, &g);
    if g.classify() != lozenge::ElementClass::Hyperbolic {
        r.kv("note", "not hyperbolic: no periodic orbit, no co-cylindrical data");
        return Ok((EXIT_OK, r.finish(EXIT_OK), None));
    }

    let tol = cfg.tolerance;
    let (o, _) = orbit_of_element(&g, tol)?;
    r.kvf("orbit-u", o.u());
    r.kvf("orbit-s", o.s());
    let pair = lozenge::project_to_universal_circle(o);
    r.kvf("pair-plus", pair.a_plus.angle());
    r.kvf("pair-minus", pair.a_minus.angle());

    let elements = cached_enumeration(&cfg.group, cfg.depth, cfg.cap, cache)?;
    let rep = cocyl_report_in(&g, &elements, cfg.depth, cfg.partner_range, tol)?;
    r.section("criteria");
    let mut witness_marker = None;
    match &rep.simple_verdict.verdict {
        SimplicityVerdict::NoWitnessUpTo(d) => {
            r.kv("lozenge-verdict", &format!("no-witness-up-to-{d}"));
        }
        SimplicityVerdict::NonSimple(w) => {
            r.kv("lozenge-verdict", "non-simple");
            r.kv(
                "lozenge-witness",
                &format!(
                    "word={} matrix={} offset={} corner={} lozenge={} image=({}, {})",
                    w.element.word_string(),
                    matrix_string(&w.element),
                    w.offset,
                    w.corner_index,
                    w.lozenge_index,
                    fmt_f(w.image.u()),
                    fmt_f(w.image.s())
                ),
            );
            witness_marker = Some(w.image);
        }
    }
    match &rep.linking {
        LinkingOutcome::NoneUpTo(d) => r.kv("linking-verdict", &format!("none-up-to-{d}")),
        LinkingOutcome::Witness(w) => r.kv(
            "linking-witness",
            &format!(
                "word={} matrix={} image-plus={} image-minus={}",
                w.element.word_string(),
                matrix_string(&w.element),
                fmt_f(w.image_pair.a_plus.angle()),
                fmt_f(w.image_pair.a_minus.angle())
            ),
        ),
    }
    r.kv("oracle-crossings", &rep.oracle_crossings.to_string());
    r.kv("partners", &partner_set_string(&rep.partner_indices));

    // deeper linking search at its own depth, reported separately
    if cfg.linking_depth > cfg.depth {
        let deep = cached_enumeration(&cfg.group, cfg.linking_depth, cfg.cap, cache)?;
        match find_linking_witness_in(&g, &deep, cfg.linking_depth, tol)? {
            LinkingOutcome::NoneUpTo(d) => {
                r.kv("linking-deep", &format!("none-up-to-{d}"));
            }
            LinkingOutcome::Witness(w) => {
                r.kv("linking-deep", &format!("word={}", w.element.word_string()));
            }
        }
    }

    let conclusive = rep.linking.found();
    r.kv(
        "verdict",
        if conclusive {
            "non-simple"
        } else {
            "simple-up-to-depth"
        },
    );
    let code = if conclusive { EXIT_OK } else { EXIT_INCONCLUSIVE };

    let renderings = if want_render {
        let chain = Chain::between(o, 1).map_err(CliError::Lib)?;
        let mut markers = corner_markers(&chain);
        if let Some(p) = witness_marker {
            markers.push(Marker {
                point: p,
                kind: MarkerKind::Witness,
                index: 0,
            });
        }
        Some((
            render_svg(&chain, &markers, cfg.render),
            render_csv(&chain, &markers),
        ))
    } else {
        None
    };
    Ok((code, r.finish(code), renderings))
}

fn partner_set_string(s: &std::collections::BTreeSet<u32>) -> String {
    if s.is_empty() {
        "-".to_owned()
    } else {
        s.iter()
            .map(|n| n.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn corner_markers(chain: &Chain) -> Vec<Marker> {
    chain
        .corners()
        .map(|(i, point)| Marker {
            point,
            kind: MarkerKind::Corner,
            index: i,
        })
        .collect()
}

fn cmd_chain(
    cfg: &Config,
    word: &str,
    n: u32,
    want_render: bool,
) -> Result<CommandOutput, CliError> {
    if n == 0 {
        return Err(CliError::Validation("chain needs n >= 1".to_owned()));
    }
    let g = cfg.group.element_of_word(word)?;
    let tol = cfg.tolerance;
    let (o, g0) = orbit_of_element(&g, tol)?;
    let chain = Chain::between(o, n).map_err(CliError::Lib)?;

    let mut r = Report::new("chain", &cfg.group);
    header(&mut r, cfg, word);
    element_lines(&mut r, &g);
    r.kv("lozenges", &n.to_string());
    r.section("corners");
    for (i, c) in chain.corners() {
        r.line(&format!("corner: {} u={} s={}", i, fmt_f(c.u()), fmt_f(c.s())));
    }
    r.section("lozenges");
    for (i, _) in chain.lozenges() {
        let ((ul, uh), (sl, sh)) = chain.coordinate_ranges(i);
        r.line(&format!(
            "lozenge: {} u-range=({}, {}) s-range=({}, {})",
            i,
            fmt_f(ul),
            fmt_f(uh),
            fmt_f(sl),
            fmt_f(sh)
        ));
    }
    let disjoint = chain.sides_disjoint();
    r.kv("sides-disjoint", if disjoint { "true" } else { "false" });
    let stabilized = lozenge::check_stabilized(&g0, &lozenge::lozenge_of(o), tol);
    r.kv("corner-stabilized", if stabilized { "true" } else { "false" });
    let code = if disjoint && stabilized {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    };

    let renderings = if want_render {
        let markers = corner_markers(&chain);
        Some((
            render_svg(&chain, &markers, cfg.render),
            render_csv(&chain, &markers),
        ))
    } else {
        None
    };
    Ok((code, r.finish(code), renderings))
}

fn cmd_render(
    cfg: &Config,
    word: &str,
    n: u32,
    cache: Option<&Path>,
) -> Result<CommandOutput, CliError> {
    if n == 0 {
        return Err(CliError::Validation("render needs n >= 1".to_owned()));
    }
    let g = cfg.group.element_of_word(word)?;
    let tol = cfg.tolerance;
    let (o, _) = orbit_of_element(&g, tol)?;
    let chain = Chain::between(o, n).map_err(CliError::Lib)?;

    let mut r = Report::new("render", &cfg.group);
    header(&mut r, cfg, word);
    element_lines(&mut r, &g);
    r.kv("lozenges", &n.to_string());

    // witness points of the simplicity search get painted over the chain
    let elements = cached_enumeration(&cfg.group, cfg.depth, cfg.cap, cache)?;
    let cert = simplicity_check_in(&chain, &elements, cfg.depth, tol)?;
    let mut markers = corner_markers(&chain);
    match &cert.verdict {
        SimplicityVerdict::NoWitnessUpTo(d) => {
            r.kv("lozenge-verdict", &format!("no-witness-up-to-{d}"));
        }
        SimplicityVerdict::NonSimple(w) => {
            r.kv("lozenge-verdict", "non-simple");
            r.kv(
                "witness-point",
                &format!("u={} s={}", fmt_f(w.image.u()), fmt_f(w.image.s())),
            );
            markers.push(Marker {
                point: w.image,
                kind: MarkerKind::Witness,
                index: 0,
            });
        }
    }
    let svg = render_svg(&chain, &markers, cfg.render);
    let csv = render_csv(&chain, &markers);
    r.kv("svg-bytes", &svg.len().to_string());
    r.kv("csv-bytes", &csv.len().to_string());
    Ok((EXIT_OK, r.finish(EXIT_OK), Some((svg, csv))))
}

fn cmd_annulus(cfg: &Config, word: &str, cache: Option<&Path>) -> Result<CommandOutput, CliError> {
    let g = cfg.group.element_of_word(word)?;
    let tol = cfg.tolerance;
    let elements = cached_enumeration(&cfg.group, cfg.depth, cfg.cap, cache)?;
    let scan = crossing_scan_in(&g, &elements, tol)?;

    let mut r = Report::new("annulus", &cfg.group);
    header(&mut r, cfg, word);
    element_lines(&mut r, &g);
    r.kvf("interval-lo", scan.interval.lo());
    r.kvf("interval-hi", scan.interval.hi());
    r.kv("arcs", &scan.arcs.len().to_string());
    r.kv("unlinked-overlaps", &scan.unlinked.len().to_string());
    r.section("arcs");
    for a in &scan.arcs {
        r.line(&format!(
            "arc: word={} offset={} class={} profile={} source=({}, {}) target=({}, {})",
            a.element.word_string(),
            a.offset,
            arc_class_name(a.classification),
            profile_name(a.sign_profile),
            fmt_f(a.overlap_source.0),
            fmt_f(a.overlap_source.1),
            fmt_f(a.overlap_target.0),
            fmt_f(a.overlap_target.1),
        ));
    }
    let claim = verify_claim(&scan.arcs);
    r.kv("claim-verified", if claim { "true" } else { "false" });
    if !claim {
        let code = EXIT_VIOLATION;
        return Ok((code, r.finish(code), None));
    }
    let code = match build_trivialization_with_samples(&scan.arcs, cfg.render.samples, tol) {
        Ok(cert) => {
            r.kv("certificate", if cert.schedule_ok { "ok" } else { "rejected" });
            r.kvf("min-gap", cert.min_gap);
            r.section("schedule");
            for s in &cert.arcs {
                r.line(&format!(
                    "fiber: word={} offset={} vertical={} min-gap={}",
                    s.arc.element.word_string(),
                    s.arc.offset,
                    fmt_f(s.vertical),
                    fmt_f(s.min_gap)
                ));
            }
            if scan.arcs.is_empty() {
                EXIT_INCONCLUSIVE // no crossings found up to this depth
            } else if cert.schedule_ok {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            }
        }
        Err(Error::MixedSignProfile(msg)) => {
            r.kv("certificate", "refused");
            r.kv("refusal", &msg);
            EXIT_INCONCLUSIVE
        }
        Err(e) => return Err(CliError::Lib(e)),
    };
    Ok((code, r.finish(code), None))
}

fn arc_class_name(c: lozenge::ArcClass) -> &'static str {
    match c {
        lozenge::ArcClass::InteriorEnding => "interior-ending",
        lozenge::ArcClass::BoundaryIdentification => "boundary-identification",
        lozenge::ArcClass::StrictlyContained => "strictly-contained",
    }
}

fn profile_name(p: lozenge::SignProfile) -> &'static str {
    match p {
        lozenge::SignProfile::AllUp => "all-up",
        lozenge::SignProfile::AllDown => "all-down",
        lozenge::SignProfile::Mixed => "mixed",
    }
}

fn cmd_cocyl(cfg: &Config, word: &str, cache: Option<&Path>) -> Result<CommandOutput, CliError> {
    let g = cfg.group.element_of_word(word)?;
    let tol = cfg.tolerance;
    let elements = cached_enumeration(&cfg.group, cfg.depth, cfg.cap, cache)?;
    let rep = cocyl_report_in(&g, &elements, cfg.depth, cfg.partner_range, tol)?;
    let shift_ok = cardinality_shift_check_in(&g, &elements, cfg.depth, cfg.partner_range, tol)?;

    let mut r = Report::new("cocyl", &cfg.group);
    header(&mut r, cfg, word);
    element_lines(&mut r, &g);
    r.section("criteria");
    r.kv(
        "lozenge-verdict",
        if rep.is_simple_up_to_depth() {
            "no-witness"
        } else {
            "non-simple"
        },
    );
    match &rep.linking {
        LinkingOutcome::NoneUpTo(d) => r.kv("linking-verdict", &format!("none-up-to-{d}")),
        LinkingOutcome::Witness(w) => r.kv(
            "linking-witness",
            &format!(
                "word={} matrix={}",
                w.element.word_string(),
                matrix_string(&w.element)
            ),
        ),
    }
    r.kv("oracle-crossings", &rep.oracle_crossings.to_string());
    r.kv("partners", &partner_set_string(&rep.partner_indices));
    r.kv("shift-check", if shift_ok { "true" } else { "false" });

    let deep = cached_enumeration(&cfg.group, cfg.linking_depth, cfg.cap, cache)?;
    match find_linking_witness_in(&g, &deep, cfg.linking_depth, tol)? {
        LinkingOutcome::NoneUpTo(d) => r.kv("linking-deep", &format!("none-up-to-{d}")),
        LinkingOutcome::Witness(w) => {
            r.kv("linking-deep", &format!("word={}", w.element.word_string()))
        }
    }

    let code = if !shift_ok {
        EXIT_VIOLATION
    } else if rep.linking.found() {
        EXIT_OK
    } else {
        EXIT_INCONCLUSIVE
    };
    Ok((code, r.finish(code), None))
}
