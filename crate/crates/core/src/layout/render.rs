use std::fmt::Write as _;

use super::Drawing;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Svg,
    Dot,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "svg" => Ok(Format::Svg),
            "dot" => Ok(Format::Dot),
            other => Err(format!("unknown format `{other}`; expected svg or dot")),
        }
    }
}

pub fn render(d: &Drawing, format: Format) -> String {
    match format {
        Format::Svg => render_svg(d),
        Format::Dot => render_dot(d),
    }
}

const UNIT: i64 = 40;
const MARGIN: i64 = 60;

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// SVG with the y axis flipped so larger elements sit higher on screen.
pub fn render_svg(d: &Drawing) -> String {
    let min_x = d.positions.iter().map(|p| p.0).min().unwrap_or(0);
    let max_x = d.positions.iter().map(|p| p.0).max().unwrap_or(0);
    let min_y = d.positions.iter().map(|p| p.1).min().unwrap_or(0);
    let max_y = d.positions.iter().map(|p| p.1).max().unwrap_or(0);
    let screen = |(x, y): (i64, i64)| ((x - min_x) * UNIT + MARGIN, (max_y - y) * UNIT + MARGIN);
    let width = (max_x - min_x) * UNIT + 2 * MARGIN;
    let height = (max_y - min_y) * UNIT + 2 * MARGIN;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    for &(a, b) in &d.edges {
        let (x1, y1) = screen(d.positions[a]);
        let (x2, y2) = screen(d.positions[b]);
        let _ = writeln!(
            out,
            r#"  <line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black" stroke-width="1"/>"#
        );
    }
    for (i, &p) in d.positions.iter().enumerate() {
        let (x, y) = screen(p);
        let _ = writeln!(
            out,
            r#"  <circle cx="{x}" cy="{y}" r="6" fill="white" stroke="black"/>"#
        );
        let _ = writeln!(
            out,
            r#"  <text x="{}" y="{}" font-family="sans-serif" font-size="11">{}</text>"#,
            x + 9,
            y - 9,
            xml_escape(&d.labels[i])
        );
    }
    out.push_str("</svg>\n");
    out
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz digraph with pinned node positions.
pub fn render_dot(d: &Drawing) -> String {
    let mut out = String::from("digraph order {\n  node [shape=circle];\n");
    for (i, &(x, y)) in d.positions.iter().enumerate() {
        let _ = writeln!(
            out,
            "  n{i} [label=\"{}\", pos=\"{x},{y}!\"];",
            dot_escape(&d.labels[i])
        );
    }
    for &(a, b) in &d.edges {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::{LayoutAlgorithm, LayoutOptions, Layered};
    use crate::order::Poset;

    #[test]
    fn chain_svg_has_one_circle_per_node() {
        let p = Poset::chain(vec!["a".into(), "b<c".into()]).unwrap();
        let svg = render_svg(&Layered.draw(&p, &LayoutOptions::default()));
        assert_eq!(svg.matches("<circle").count(), 2);
        assert!(svg.contains("b&lt;c"));
    }

    #[test]
    fn empty_documents() {
        let p = Poset::antichain(vec![]).unwrap();
        let d = Layered.draw(&p, &LayoutOptions::default());
        assert!(render_svg(&d).ends_with("</svg>\n"));
        assert_eq!(render_dot(&d), "digraph order {\n  node [shape=circle];\n}\n");
    }

    #[test]
    fn dot_pins_positions() {
        let p = Poset::chain(vec!["a".into(), "b".into()]).unwrap();
        let dot = render_dot(&Layered.draw(&p, &LayoutOptions::default()));
        assert!(dot.contains("pos=\"0,1!\""));
        assert!(dot.contains("n0 -> n1;"));
    }
}
