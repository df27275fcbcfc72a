//! Upward drawings of finite posets.

mod dimdraw;
mod layered;
mod quality;
mod render;

use std::time::Duration;

pub use dimdraw::{DimDraw, DIMDRAW_PAIRS};
pub use layered::{Layered, MEDIAN_SWEEPS};
pub use quality::{quality, Quality};
pub use render::{render, render_dot, render_svg, Format};

use crate::order::{LinearExtension, Poset};
use crate::registry::Registry;

/// Integer node positions, with `y` growing upwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Drawing {
    pub names: Vec<String>,
    pub labels: Vec<String>,
    pub positions: Vec<(i64, i64)>,
    /// Covering pairs `(lower, upper)`.
    pub edges: Vec<(usize, usize)>,
    /// The two extensions behind a dimdraw layout; empty otherwise.
    pub extensions: Vec<LinearExtension>,
    /// The extensions form a realizer of the poset.
    pub exact_realizer: bool,
    pub algorithm: &'static str,
}

impl Drawing {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Every edge goes strictly upwards.
    pub fn is_upward(&self) -> bool {
        self.edges
            .iter()
            .all(|&(a, b)| self.positions[a].1 < self.positions[b].1)
    }

    /// No two nodes share a position.
    pub fn positions_distinct(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.positions.iter().all(|p| seen.insert(*p))
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.names.len());
        self.labels = labels;
        self
    }
}

#[derive(Clone, Copy, Debug)]
pub struct LayoutOptions {
    /// First seed of the sampled extension pairs.
    pub seed: u64,
    /// Budget for the exact dimension check inside dimdraw.
    pub budget: Duration,
}

impl Default for LayoutOptions {
    fn default() -> Self {
        LayoutOptions {
            seed: 0,
            budget: crate::dimension::DimensionOptions::default().budget,
        }
    }
}

pub trait LayoutAlgorithm: Send + Sync {
    fn name(&self) -> &'static str;
    fn draw(&self, p: &Poset, opts: &LayoutOptions) -> Drawing;
}

/// Layouts by name: `dimdraw` and `layered`.
pub fn layout_registry() -> Registry<dyn LayoutAlgorithm> {
    let mut r: Registry<dyn LayoutAlgorithm> = Registry::new("layout algorithm");
    r.register("dimdraw", Box::new(DimDraw));
    r.register("layered", Box::new(Layered));
    r
}

fn base_drawing(p: &Poset, algorithm: &'static str) -> Drawing {
    Drawing {
        names: p.elements().to_vec(),
        labels: p.elements().to_vec(),
        positions: vec![(0, 0); p.len()],
        edges: p.covers().to_vec(),
        extensions: Vec::new(),
        exact_realizer: false,
        algorithm,
    }
}
