//! Static SVG figures. Coordinates are printed with two decimals so the
//! output is byte-stable.

use std::f64::consts::PI;
use std::fmt::Write;

use achord::cordage::{contract, Cordage, Pulley};
use achord::curves::CombinatorialCurve;
use achord::LinearDiagram;

const STROKE: &str = "#222";
const CHORD: &str = "#b03a2e";
const EDGE: &str = "#1f618d";

struct Svg {
    body: String,
    width: f64,
    height: f64,
}

impl Svg {
    fn new(width: f64, height: f64) -> Self {
        Self {
            body: String::new(),
            width,
            height,
        }
    }

    fn circle(&mut self, x: f64, y: f64, r: f64, style: &str) {
        let _ = writeln!(self.body, r#"  <circle cx="{x:.2}" cy="{y:.2}" r="{r:.2}" {style}/>"#);
    }

    fn path(&mut self, d: &str, style: &str) {
        let _ = writeln!(self.body, r#"  <path d="{d}" {style}/>"#);
    }

    fn line(&mut self, a: (f64, f64), b: (f64, f64), style: &str) {
        let _ = writeln!(
            self.body,
            r#"  <line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" {style}/>"#,
            a.0, a.1, b.0, b.1
        );
    }

    fn text(&mut self, x: f64, y: f64, size: f64, s: &str) {
        let _ = writeln!(
            self.body,
            r#"  <text x="{x:.2}" y="{y:.2}" font-size="{size:.0}" font-family="monospace" text-anchor="middle" dominant-baseline="middle">{}</text>"#,
            escape(s)
        );
    }

    fn finish(self) -> String {
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\">\n{}</svg>\n",
            self.body,
            w = self.width,
            h = self.height
        )
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn polar(c: (f64, f64), r: f64, t: f64) -> (f64, f64) {
    (c.0 + r * t.cos(), c.1 + r * t.sin())
}

/// Angle of point `i` out of `m`, starting at the top and turning clockwise
/// on screen.
fn angle(i: usize, m: usize) -> f64 {
    -PI / 2.0 + 2.0 * PI * i as f64 / m as f64
}

fn label(c: u8) -> String {
    if c < 26 {
        ((b'a' + c) as char).to_string()
    } else {
        c.to_string()
    }
}

/// Chords of `word` inside the circle `(center, r)`; bends each chord
/// toward the center so parallel chords stay apart.
fn chords(svg: &mut Svg, word: &[u8], center: (f64, f64), r: f64, width: f64) {
    let m = word.len();
    let mut first = vec![usize::MAX; m];
    for (i, &c) in word.iter().enumerate() {
        let c = c as usize;
        if first[c] == usize::MAX {
            first[c] = i;
            continue;
        }
        let (p, q) = (polar(center, r, angle(first[c], m)), polar(center, r, angle(i, m)));
        let ctrl = (
            center.0 + 0.3 * ((p.0 + q.0) / 2.0 - center.0),
            center.1 + 0.3 * ((p.1 + q.1) / 2.0 - center.1),
        );
        svg.path(
            &format!("M {:.2} {:.2} Q {:.2} {:.2} {:.2} {:.2}", p.0, p.1, ctrl.0, ctrl.1, q.0, q.1),
            &format!(r#"fill="none" stroke="{CHORD}" stroke-width="{width:.1}""#),
        );
    }
}

fn diagram_at(svg: &mut Svg, d: &LinearDiagram, center: (f64, f64), r: f64, labels: bool) {
    svg.circle(center.0, center.1, r, &format!(r#"fill="none" stroke="{STROKE}" stroke-width="1.5""#));
    chords(svg, d.word(), center, r, 2.0);
    if !labels {
        return;
    }
    let m = d.len();
    for (i, &c) in d.word().iter().enumerate() {
        let p = polar(center, r, angle(i, m));
        svg.circle(p.0, p.1, 3.0, &format!(r#"fill="{STROKE}""#));
        let t = polar(center, r + 14.0, angle(i, m));
        svg.text(t.0, t.1, 12.0, &label(c));
    }
}

/// A circle with labeled endpoints and one arc per chord.
pub fn render_diagram(d: &LinearDiagram) -> String {
    let mut svg = Svg::new(320.0, 320.0);
    diagram_at(&mut svg, d, (160.0, 160.0), 120.0, true);
    svg.finish()
}

fn pulley_name(p: Pulley) -> String {
    match p {
        Pulley::T { n } => format!("T{n}"),
        Pulley::DStar { n } => format!("D*{n}"),
        Pulley::DPrime { k, l } => format!("D'{k},{l}"),
    }
}

struct Placed {
    x: f64,
    depth: usize,
    pulley: Option<Pulley>,
    children: Vec<usize>,
}

fn place(c: &Cordage, depth: usize, next_leaf: &mut f64, out: &mut Vec<Placed>) -> usize {
    let id = out.len();
    out.push(Placed {
        x: 0.0,
        depth,
        pulley: c.pulley(),
        children: Vec::new(),
    });
    match c {
        Cordage::Leaf => {
            out[id].x = *next_leaf;
            *next_leaf += 1.0;
        }
        Cordage::Node { children, .. } => {
            let kids: Vec<usize> = children.iter().map(|k| place(k, depth + 1, next_leaf, out)).collect();
            out[id].x = kids.iter().map(|&k| out[k].x).sum::<f64>() / kids.len().max(1) as f64;
            out[id].children = kids;
        }
    }
    id
}

/// The cordage as a plane tree with a small chord-diagram glyph on every
/// pulley, and the contracted diagram beside it.
pub fn render_cordage(c: &Cordage) -> String {
    let mut nodes = Vec::new();
    let mut leaves = 0.0;
    place(c, 0, &mut leaves, &mut nodes);
    let depth = nodes.iter().map(|n| n.depth).max().unwrap_or(0);
    let (dx, dy, margin) = (70.0, 80.0, 50.0);
    let tree_w = 2.0 * margin + dx * (leaves - 1.0).max(0.0);
    let pos = |n: &Placed| (margin + dx * n.x, margin + 40.0 + dy * n.depth as f64);
    let diagram_r = 90.0;
    let width = tree_w + 2.0 * diagram_r + 80.0;
    let height = (margin * 2.0 + 40.0 + dy * depth as f64).max(2.0 * diagram_r + 80.0);
    let mut svg = Svg::new(width, height);

    let root = pos(&nodes[0]);
    svg.line((root.0, margin - 10.0), root, &format!(r#"stroke="{STROKE}" stroke-width="1.5""#));
    svg.text(root.0, margin - 22.0, 12.0, "root");
    for n in &nodes {
        for &k in &n.children {
            svg.line(pos(n), pos(&nodes[k]), &format!(r#"stroke="{STROKE}" stroke-width="1.5""#));
        }
    }
    for n in &nodes {
        let p = pos(n);
        match n.pulley {
            None => svg.circle(p.0, p.1, 5.0, &format!(r#"fill="{STROKE}""#)),
            Some(pl) => {
                svg.circle(p.0, p.1, 20.0, r##"fill="#fff" stroke="#222" stroke-width="1.5""##);
                chords(&mut svg, pl.diagram().word(), p, 20.0, 1.2);
                svg.text(p.0 + 34.0, p.1 - 18.0, 11.0, &pulley_name(pl));
            }
        }
    }
    let d = contract(c);
    let center = (tree_w + 40.0 + diagram_r, height / 2.0);
    diagram_at(&mut svg, &d, center, diagram_r, true);
    svg.finish()
}

/// Vertex disks in a row, each with its chord diagram, ray stubs and the
/// edges of `α` drawn as cubic arcs between stub tips.
pub fn render_curve(curve: &CombinatorialCurve) -> String {
    let vertices = curve.map.vertices();
    let (r, stub, gap) = (40.0, 16.0, 170.0);
    let width = 2.0 * 110.0 + gap * (vertices.len().max(1) - 1) as f64;
    let mut svg = Svg::new(width, 300.0);
    let n = curve.ray_count();
    let mut dir = vec![0.0; n];
    let mut tip = vec![(0.0, 0.0); n];
    let mut centers = Vec::new();
    for (v, cyc) in vertices.iter().enumerate() {
        let c = (110.0 + gap * v as f64, 150.0);
        centers.push(c);
        for (i, &ray) in cyc.iter().enumerate() {
            dir[ray] = angle(i, cyc.len());
            tip[ray] = polar(c, r + stub, dir[ray]);
        }
    }
    for (r0, &r1) in curve.map.alpha.iter().enumerate() {
        if r0 < r1 {
            let (a, b) = (tip[r0], tip[r1]);
            let ca = polar(a, 70.0, dir[r0]);
            let cb = polar(b, 70.0, dir[r1]);
            svg.path(
                &format!(
                    "M {:.2} {:.2} C {:.2} {:.2} {:.2} {:.2} {:.2} {:.2}",
                    a.0, a.1, ca.0, ca.1, cb.0, cb.1, b.0, b.1
                ),
                &format!(r#"fill="none" stroke="{EDGE}" stroke-width="2""#),
            );
        }
    }
    let diagrams = curve.diagrams();
    for (v, cyc) in vertices.iter().enumerate() {
        let c = centers[v];
        svg.circle(c.0, c.1, r, r##"fill="#fff" stroke="#222" stroke-width="1.5""##);
        chords(&mut svg, diagrams[v].word(), c, r, 1.5);
        for &ray in cyc {
            svg.line(polar(c, r, dir[ray]), tip[ray], &format!(r#"stroke="{STROKE}" stroke-width="1.5""#));
            let t = polar(c, r + stub + 10.0, dir[ray]);
            svg.text(t.0, t.1, 10.0, &ray.to_string());
        }
        svg.text(c.0, c.1 + r + 48.0, 12.0, &format!("v{}", v + 1));
    }
    svg.finish()
}
