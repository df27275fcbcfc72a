use std::collections::BTreeSet;

use super::Drawing;

#[derive(Clone, Debug, PartialEq)]
pub struct Quality {
    /// Pairs of edges without a common endpoint that meet.
    pub crossings: usize,
    pub distinct_slopes: usize,
    /// Edges not pointing strictly upwards.
    pub downward_edges: usize,
    /// Smallest distance from a node to an edge not incident to it.
    pub min_node_edge_distance: Option<f64>,
}

type Pt = (i64, i64);

fn orient(a: Pt, b: Pt, c: Pt) -> i128 {
    let v = (b.0 - a.0) as i128 * (c.1 - a.1) as i128 - (b.1 - a.1) as i128 * (c.0 - a.0) as i128;
    v.signum()
}

fn on_segment(a: Pt, b: Pt, c: Pt) -> bool {
    c.0 >= a.0.min(b.0) && c.0 <= a.0.max(b.0) && c.1 >= a.1.min(b.1) && c.1 <= a.1.max(b.1)
}

fn segments_meet(p1: Pt, p2: Pt, q1: Pt, q2: Pt) -> bool {
    let (d1, d2) = (orient(q1, q2, p1), orient(q1, q2, p2));
    let (d3, d4) = (orient(p1, p2, q1), orient(p1, p2, q2));
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    (d1 == 0 && on_segment(q1, q2, p1))
        || (d2 == 0 && on_segment(q1, q2, p2))
        || (d3 == 0 && on_segment(p1, p2, q1))
        || (d4 == 0 && on_segment(p1, p2, q2))
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn point_segment(p: Pt, a: Pt, b: Pt) -> f64 {
    let (px, py) = (p.0 as f64, p.1 as f64);
    let (ax, ay, bx, by) = (a.0 as f64, a.1 as f64, b.0 as f64, b.1 as f64);
    let (dx, dy) = (bx - ax, by - ay);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((px - ax) * dx + (py - ay) * dy) / len2).clamp(0.0, 1.0)
    };
    ((px - ax - t * dx).powi(2) + (py - ay - t * dy).powi(2)).sqrt()
}

pub fn quality(d: &Drawing) -> Quality {
    let pos = &d.positions;
    let mut crossings = 0;
    for (i, &(a, b)) in d.edges.iter().enumerate() {
        for &(c, e) in &d.edges[i + 1..] {
            if a == c || a == e || b == c || b == e {
                continue;
            }
            if segments_meet(pos[a], pos[b], pos[c], pos[e]) {
                crossings += 1;
            }
        }
    }
    let slopes: BTreeSet<(i64, i64)> = d
        .edges
        .iter()
        .map(|&(a, b)| {
            let (mut dx, mut dy) = (pos[b].0 - pos[a].0, pos[b].1 - pos[a].1);
            let g = gcd(dx, dy).max(1);
            dx /= g;
            dy /= g;
            if dy < 0 || (dy == 0 && dx < 0) {
                (-dx, -dy)
            } else {
                (dx, dy)
            }
        })
        .collect();
    let downward_edges = d.edges.iter().filter(|&&(a, b)| pos[a].1 >= pos[b].1).count();
    let mut min_dist: Option<f64> = None;
    for v in 0..pos.len() {
        for &(a, b) in &d.edges {
            if v == a || v == b {
                continue;
            }
            let dist = point_segment(pos[v], pos[a], pos[b]);
            min_dist = Some(min_dist.map_or(dist, |m| m.min(dist)));
        }
    }
    Quality {
        crossings,
        distinct_slopes: slopes.len(),
        downward_edges,
        min_node_edge_distance: min_dist,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::{DimDraw, LayoutAlgorithm, LayoutOptions};
    use crate::order::Poset;

    #[test]
    fn chain_metrics() {
        let p = Poset::chain(vec!["a".into(), "b".into(), "c".into()]).unwrap();
        let q = quality(&DimDraw.draw(&p, &LayoutOptions::default()));
        assert_eq!((q.crossings, q.distinct_slopes, q.downward_edges), (0, 1, 0));
    }

    #[test]
    fn crossing_detection() {
        assert!(segments_meet((0, 0), (2, 2), (0, 2), (2, 0)));
        assert!(!segments_meet((0, 0), (0, 2), (1, 0), (1, 2)));
        assert!(segments_meet((0, 0), (0, 4), (0, 2), (0, 6)));
        assert_eq!(point_segment((1, 1), (0, 0), (2, 0)), 1.0);
    }
}
