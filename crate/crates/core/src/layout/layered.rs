use super::{base_drawing, Drawing, LayoutAlgorithm, LayoutOptions};
use crate::order::{heights, Poset};

/// Median sweeps of the crossing reduction.
pub const MEDIAN_SWEEPS: usize = 8;

/// Longest-path layers, median crossing reduction, integer grid.
pub struct Layered;

fn median(mut xs: Vec<usize>) -> Option<f64> {
    if xs.is_empty() {
        return None;
    }
    xs.sort_unstable();
    let m = xs.len() / 2;
    Some(if xs.len() % 2 == 1 {
        xs[m] as f64
    } else {
        (xs[m - 1] + xs[m]) as f64 / 2.0
    })
}

/// Reorders `layer` by the median position of each node's neighbours in
/// the adjacent layer; nodes without neighbours keep their slot.
fn reorder(layer: &mut Vec<usize>, neighbours: &[Vec<usize>], pos: &[usize]) {
    let keyed: Vec<(f64, usize, usize)> = layer
        .iter()
        .enumerate()
        .map(|(slot, &v)| {
            let key = median(neighbours[v].iter().map(|&u| pos[u]).collect()).unwrap_or(slot as f64);
            (key, slot, v)
        })
        .collect();
    let mut keyed = keyed;
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    *layer = keyed.into_iter().map(|(_, _, v)| v).collect();
}

impl LayoutAlgorithm for Layered {
    fn name(&self) -> &'static str {
        "layered"
    }

    fn draw(&self, p: &Poset, _opts: &LayoutOptions) -> Drawing {
        let n = p.len();
        let h = heights(p);
        let depth = h.iter().copied().max().unwrap_or(0);
        let mut layers: Vec<Vec<usize>> = vec![Vec::new(); depth];
        for a in 0..n {
            layers[h[a] - 1].push(a);
        }
        let mut lower = vec![Vec::new(); n];
        let mut upper = vec![Vec::new(); n];
        for &(a, b) in p.covers() {
            upper[a].push(b);
            lower[b].push(a);
        }
        let mut pos = vec![0; n];
        let place = |layers: &[Vec<usize>], pos: &mut [usize]| {
            for layer in layers {
                for (slot, &v) in layer.iter().enumerate() {
                    pos[v] = slot;
                }
            }
        };
        place(&layers, &mut pos);
        for sweep in 0..MEDIAN_SWEEPS {
            if sweep % 2 == 0 {
                for i in 1..layers.len() {
                    reorder(&mut layers[i], &lower, &pos);
                    place(&layers[i..=i], &mut pos);
                }
            } else {
                for i in (0..layers.len().saturating_sub(1)).rev() {
                    reorder(&mut layers[i], &upper, &pos);
                    place(&layers[i..=i], &mut pos);
                }
            }
        }
        let mut d = base_drawing(p, self.name());
        for (y, layer) in layers.iter().enumerate() {
            let width = layer.len() as i64;
            for (slot, &v) in layer.iter().enumerate() {
                d.positions[v] = (2 * slot as i64 - (width - 1), y as i64);
            }
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::quality;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("e{i}")).collect()
    }

    #[test]
    fn chain_has_one_node_per_layer() {
        let p = Poset::chain(names(3)).unwrap();
        let d = Layered.draw(&p, &LayoutOptions::default());
        let ys: Vec<i64> = d.positions.iter().map(|p| p.1).collect();
        assert_eq!(ys, vec![0, 1, 2]);
    }

    #[test]
    fn cube_layers() {
        let p = Poset::from_fn(names(8), |a, b| a & b == a).unwrap();
        let d = Layered.draw(&p, &LayoutOptions::default());
        let mut sizes = [0; 4];
        for &(_, y) in &d.positions {
            sizes[y as usize] += 1;
        }
        assert_eq!(sizes, [1, 3, 3, 1]);
        assert!(d.is_upward() && d.positions_distinct());
    }

    #[test]
    fn square_is_planar() {
        let p = Poset::from_fn(names(4), |a, b| a & b == a).unwrap();
        let d = Layered.draw(&p, &LayoutOptions::default());
        assert_eq!(quality(&d).crossings, 0);
    }
}
