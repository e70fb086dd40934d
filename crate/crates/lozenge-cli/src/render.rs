use std::fmt::Write as _;

use lozenge::{Chain, OrbitPoint};

use crate::config::RenderOptions;
use crate::report::fmt_f;

/// A labeled point to paint over the strip.
pub struct Marker {
    pub point: OrbitPoint,
    pub kind: MarkerKind,
    pub index: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarkerKind {
    Corner,
    Witness,
}

/// Deterministic SVG of the strip in (s, u) axes: the diagonal band
/// `s - 1 < u < s` shaded, the chain's lozenges as rectangles, corners and
/// witness points as dots. Pixel coordinates are rounded to 6 decimals.
pub fn render_svg(chain: &Chain, markers: &[Marker], opts: RenderOptions) -> String {
    let (w, h) = (opts.width as f64, opts.height as f64);
    let margin = 40.0;

    // data extent over the chain and markers, with padding
    let mut s_min = f64::INFINITY;
    let mut s_max = f64::NEG_INFINITY;
    let mut u_min = f64::INFINITY;
    let mut u_max = f64::NEG_INFINITY;
    let mut grow = |u: f64, s: f64| {
        s_min = s_min.min(s);
        s_max = s_max.max(s);
        u_min = u_min.min(u);
        u_max = u_max.max(u);
    };
    for (_, l) in chain.lozenges() {
        let (ul, uh) = l.u_range();
        let (sl, sh) = l.s_range();
        grow(ul, sl);
        grow(uh, sh);
    }
    for m in markers {
        grow(m.point.u(), m.point.s());
    }
    let pad = 0.35;
    s_min -= pad;
    s_max += pad;
    u_min -= pad;
    u_max += pad;

    let sx = (w - 2.0 * margin) / (s_max - s_min);
    let sy = (h - 2.0 * margin) / (u_max - u_min);
    let px = |s: f64| margin + (s - s_min) * sx;
    let py = |u: f64| h - margin - (u - u_min) * sy;
    let c6 = |v: f64| format!("{v:.6}");

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        opts.width, opts.height, opts.width, opts.height
    );
    let _ = writeln!(out, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>");

    // the strip band between the diagonals u = s - 1 and u = s
    let band = [
        (px(s_min), py(s_min)),
        (px(s_max), py(s_max)),
        (px(s_max), py(s_max - 1.0)),
        (px(s_min), py(s_min - 1.0)),
    ];
    let pts: Vec<String> = band
        .iter()
        .map(|(x, y)| format!("{},{}", c6(*x), c6(*y)))
        .collect();
    let _ = writeln!(
        out,
        "<polygon points=\"{}\" fill=\"#dce9f5\" stroke=\"none\"/>",
        pts.join(" ")
    );
    let _ = writeln!(
        out,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#7a9cc0\" stroke-width=\"1\"/>",
        c6(px(s_min)),
        c6(py(s_min)),
        c6(px(s_max)),
        c6(py(s_max))
    );
    let _ = writeln!(
        out,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#7a9cc0\" stroke-width=\"1\"/>",
        c6(px(s_min)),
        c6(py(s_min - 1.0)),
        c6(px(s_max)),
        c6(py(s_max - 1.0))
    );

    // lozenges: rectangles x in [s, u+1], y in [u, s]
    for (i, l) in chain.lozenges() {
        let (sl, sh) = l.s_range();
        let (ul, uh) = l.u_range();
        let _ = writeln!(
            out,
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#f2c9a0\" fill-opacity=\"0.55\" stroke=\"#b06a2a\" stroke-width=\"1.2\"/>",
            c6(px(sl)),
            c6(py(uh)),
            c6((sh - sl) * sx),
            c6((uh - ul) * sy)
        );
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-size=\"12\" fill=\"#7a4a1d\">L{}</text>",
            c6(px(sl) + 4.0),
            c6(py(ul) - 6.0),
            i
        );
    }

    for m in markers {
        let (fill, r) = match m.kind {
            MarkerKind::Corner => ("#1d4e89", 4.0),
            MarkerKind::Witness => ("#c0392b", 5.0),
        };
        let _ = writeln!(
            out,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>",
            c6(px(m.point.s())),
            c6(py(m.point.u())),
            r,
            fill
        );
    }

    let _ = writeln!(out, "</svg>");
    out
}

/// CSV of every plotted coordinate, RFC-4180 style (CRLF, header row).
pub fn render_csv(chain: &Chain, markers: &[Marker]) -> String {
    let mut out = String::new();
    out.push_str("kind,index,u,s\r\n");
    for (i, corner) in chain.corners() {
        let _ = write!(
            out,
            "corner,{},{},{}\r\n",
            i,
            fmt_f(corner.u()),
            fmt_f(corner.s())
        );
    }
    for (i, l) in chain.lozenges() {
        let (ul, uh) = l.u_range();
        let (sl, sh) = l.s_range();
        let _ = write!(out, "lozenge-u-range,{},{},{}\r\n", i, fmt_f(ul), fmt_f(uh));
        let _ = write!(out, "lozenge-s-range,{},{},{}\r\n", i, fmt_f(sl), fmt_f(sh));
    }
    for m in markers {
        let kind = match m.kind {
            MarkerKind::Corner => "marker-corner",
            MarkerKind::Witness => "marker-witness",
        };
        let _ = write!(
            out,
            "{},{},{},{}\r\n",
            kind,
            m.index,
            fmt_f(m.point.u()),
            fmt_f(m.point.s())
        );
    }
    out
}
