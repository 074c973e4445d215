//! Deterministic SVG output. Coordinates are exact values converted to `f64`
//! only here, printed with a fixed number of decimals.

use std::fmt::Write;

use lacuna_core::kakeya::KakeyaReport;
use lacuna_core::tree::{DyadicTree, Vertex};
use lacuna_core::{Error, Result, Scalar};
use serde::{Deserialize, Serialize};

/// SVG units per unit length.
pub const SCALE: f64 = 512.0;
const MARGIN: f64 = 32.0;
const LEVEL_GAP: f64 = 48.0;
const NODE_RADIUS: f64 = 5.0;

const BACKGROUND: &str = "#ffffff";
const SLAB_NEAR: &str = "#eef3fb";
const SLAB_FAR: &str = "#fbf1ea";
const FILL_NEAR: &str = "#3d6fb6";
const FILL_FAR: &str = "#d0672b";
const STROKE: &str = "#1d2733";
const SPLIT_NODE: &str = "#c23b3b";
const PLAIN_NODE: &str = "#1d2733";

/// Anything `render` can draw. Trees are bare arrays of bit strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scene {
    Tree(DyadicTree),
    Kakeya(Box<KakeyaReport>),
}

pub fn render_scene(scene: &Scene) -> Result<String> {
    match scene {
        Scene::Tree(t) => render_tree(t),
        Scene::Kakeya(r) => Ok(render_kakeya(r)),
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    // Avoid "-0.000".
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0".into()
    } else {
        s
    }
}

fn header(out: &mut String, width: f64, height: f64) {
    let (w, h) = (num(width), num(height));
    writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#)
        .unwrap();
    writeln!(out, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="{BACKGROUND}"/>"#).unwrap();
}

/// Members on `[0, 2]` with the `[0, 1]` and `[1, 2]` slabs shaded apart.
pub fn render_kakeya(report: &KakeyaReport) -> String {
    let members = &report.set.members;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for m in members {
        for p in m.vertices() {
            lo = lo.min(p.y.approx());
            hi = hi.max(p.y.approx());
        }
    }
    let width = 2.0 * SCALE + 2.0 * MARGIN;
    let height = (hi - lo) * SCALE + 2.0 * MARGIN;
    let sx = |x: f64| MARGIN + x * SCALE;
    let sy = |y: f64| MARGIN + (hi - y) * SCALE;

    let mut out = String::new();
    header(&mut out, width, height);
    writeln!(
        out,
        r#"<defs><linearGradient id="slabs" gradientUnits="userSpaceOnUse" x1="{}" y1="0" x2="{}" y2="0"><stop offset="0.5" stop-color="{FILL_NEAR}"/><stop offset="0.5" stop-color="{FILL_FAR}"/></linearGradient></defs>"#,
        num(sx(0.0)),
        num(sx(2.0))
    )
    .unwrap();
    let top = num(sy(hi));
    let slab_h = num((hi - lo) * SCALE);
    writeln!(
        out,
        r#"<rect class="slab-near" x="{}" y="{top}" width="{}" height="{slab_h}" fill="{SLAB_NEAR}"/>"#,
        num(sx(0.0)),
        num(SCALE)
    )
    .unwrap();
    writeln!(
        out,
        r#"<rect class="slab-far" x="{}" y="{top}" width="{}" height="{slab_h}" fill="{SLAB_FAR}"/>"#,
        num(sx(1.0)),
        num(SCALE)
    )
    .unwrap();
    writeln!(out, r#"<g fill="url(#slabs)" fill-opacity="0.45" stroke="{STROKE}" stroke-width="0.5">"#).unwrap();
    for m in members {
        let pts: Vec<String> =
            m.vertices().iter().map(|p| format!("{},{}", num(sx(p.x.approx())), num(sy(p.y.approx())))).collect();
        writeln!(out, r#"<polygon points="{}"/>"#, pts.join(" ")).unwrap();
    }
    writeln!(out, "</g>").unwrap();
    writeln!(
        out,
        r#"<line x1="{x}" y1="{top}" x2="{x}" y2="{}" stroke="{STROKE}" stroke-dasharray="4 4"/>"#,
        num(sy(lo)),
        x = num(sx(1.0))
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="{}" y="{}" font-family="monospace" font-size="14" fill="{STROKE}">N={} k={} m1={} m2={}</text>"#,
        num(MARGIN),
        num(MARGIN - 10.0),
        report.n,
        report.depth,
        report.m1.to_text(),
        report.m2.to_text()
    )
    .unwrap();
    out.push_str("</svg>\n");
    out
}

/// Layered node-link diagram, root on top. A vertex of height `h` sits above
/// the middle of its dyadic interval; splitting vertices are highlighted.
pub fn render_tree(tree: &DyadicTree) -> Result<String> {
    if tree.is_empty() {
        return Err(Error::EmptySet);
    }
    if !tree.is_ancestor_closed() {
        let v = tree.vertices().find(|v| v.parent().is_some_and(|p| !tree.contains(&p))).expect("open tree");
        return Err(Error::NotAncestorClosed(v.to_string()));
    }
    let depth = tree.height().unwrap_or(0);
    let width = SCALE + 2.0 * MARGIN;
    let height = depth as f64 * LEVEL_GAP + 2.0 * MARGIN;
    let pos = |v: &Vertex| {
        let h = v.height();
        let idx = v.index_u64().map(|i| i as f64).unwrap_or_else(|| v.value().approx() * (h as f64).exp2());
        let x = MARGIN + (idx + 0.5) / (h as f64).exp2() * SCALE;
        (x, MARGIN + h as f64 * LEVEL_GAP)
    };
    let splits = tree.splitting_vertices();

    let mut out = String::new();
    header(&mut out, width, height);
    writeln!(out, r#"<g stroke="{STROKE}" stroke-width="1">"#).unwrap();
    for v in tree.vertices() {
        if let Some(p) = v.parent() {
            let ((x1, y1), (x2, y2)) = (pos(&p), pos(v));
            writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, num(x1), num(y1), num(x2), num(y2)).unwrap();
        }
    }
    writeln!(out, "</g>").unwrap();
    writeln!(out, "<g>").unwrap();
    for v in tree.vertices() {
        let (x, y) = pos(v);
        let fill = if splits.contains(v) { SPLIT_NODE } else { PLAIN_NODE };
        writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="{}" fill="{fill}"><title>{v}</title></circle>"#,
            num(x),
            num(y),
            num(NODE_RADIUS)
        )
        .unwrap();
    }
    writeln!(out, "</g>").unwrap();
    out.push_str("</svg>\n");
    Ok(out)
}
