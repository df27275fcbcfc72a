use std::collections::HashMap;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::BitSet;
use crate::registry::Registry;

use super::{keyed_topological_order, OrderError, Poset};

/// Element budget for exact counting and exact sampling.
pub const DEFAULT_COUNT_BUDGET: usize = 20;

/// A total order on the elements of a poset, listed bottom first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearExtension(pub Vec<usize>);

impl LinearExtension {
    pub fn order(&self) -> &[usize] {
        &self.0
    }

    /// `positions()[e]` is the rank of element `e`, starting at 0.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.0.len()];
        for (r, &e) in self.0.iter().enumerate() {
            pos[e] = r;
        }
        pos
    }

    pub fn names<'a>(&self, elements: &'a [String]) -> Vec<&'a str> {
        self.0.iter().map(|&e| elements[e].as_str()).collect()
    }
}

/// True iff `order` is a permutation of the elements of `p` that lists
/// every element after all elements below it.
pub fn is_linear_extension(p: &Poset, order: &[usize]) -> bool {
    let n = p.len();
    if order.len() != n {
        return false;
    }
    let mut pos = vec![usize::MAX; n];
    for (r, &e) in order.iter().enumerate() {
        if e >= n || pos[e] != usize::MAX {
            return false;
        }
        pos[e] = r;
    }
    p.strict_pairs().into_iter().all(|(a, b)| pos[a] < pos[b])
}

/// The poset whose order holds exactly where every given order agrees.
pub fn intersect_linear_orders(
    elements: &[String],
    orders: &[LinearExtension],
) -> Result<Poset, OrderError> {
    let n = elements.len();
    if orders.is_empty() && n > 1 {
        return Err(OrderError::ElementMismatch);
    }
    let mut positions = Vec::with_capacity(orders.len());
    for o in orders {
        let mut seen = vec![false; n];
        if o.0.len() != n || o.0.iter().any(|&e| e >= n || std::mem::replace(&mut seen[e], true)) {
            return Err(OrderError::ElementMismatch);
        }
        positions.push(o.positions());
    }
    Poset::from_fn(elements.to_vec(), |a, b| positions.iter().all(|pos| pos[a] <= pos[b]))
}

/// Repeatedly removes the minimal element with the smallest name.
pub fn greedy_linear_extension(p: &Poset) -> LinearExtension {
    let preds: Vec<BitSet> = (0..p.len()).map(|a| p.down_set(a).clone()).collect();
    let order = keyed_topological_order(&preds, |i| p.name(i).to_string())
        .expect("a poset has no cycles");
    LinearExtension(order)
}

fn check_budget(p: &Poset, budget: usize) -> Result<(), OrderError> {
    if p.len() > budget || p.len() > 64 {
        return Err(OrderError::BudgetExceeded {
            size: p.len(),
            budget: budget.min(64),
        });
    }
    Ok(())
}

/// Number of ways to complete a placed down-set, memoised per down-set.
struct DownSetCounter<'p> {
    poset: &'p Poset,
    /// Bitmask of strict predecessors per element.
    preds: Vec<u64>,
    full: u64,
    memo: HashMap<u64, u128>,
}

impl<'p> DownSetCounter<'p> {
    fn new(poset: &'p Poset) -> Self {
        let n = poset.len();
        let preds = (0..n)
            .map(|a| {
                poset
                    .down_set(a)
                    .iter()
                    .filter(|&b| b != a)
                    .fold(0u64, |m, b| m | 1 << b)
            })
            .collect();
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        DownSetCounter {
            poset,
            preds,
            full,
            memo: HashMap::new(),
        }
    }

    fn available(&self, placed: u64) -> impl Iterator<Item = usize> + '_ {
        (0..self.poset.len())
            .filter(move |&a| placed >> a & 1 == 0 && self.preds[a] & !placed == 0)
    }

    fn completions(&mut self, placed: u64) -> u128 {
        if placed == self.full {
            return 1;
        }
        if let Some(&c) = self.memo.get(&placed) {
            return c;
        }
        let next: Vec<usize> = self.available(placed).collect();
        let total = next
            .into_iter()
            .map(|a| self.completions(placed | 1 << a))
            .sum();
        self.memo.insert(placed, total);
        total
    }
}

/// Exact number of linear extensions by dynamic programming over
/// down-sets. Refuses posets larger than `budget` elements.
pub fn count_linear_extensions(p: &Poset, budget: usize) -> Result<u128, OrderError> {
    check_budget(p, budget)?;
    Ok(DownSetCounter::new(p).completions(0))
}

/// A sampler bound to one poset; may cache work across draws.
pub trait PreparedSampler {
    fn sample(&mut self, rng: &mut dyn RngCore) -> LinearExtension;
}

/// A linear-extension sampling strategy, selectable by name.
pub trait ExtensionSampler: Send + Sync {
    fn name(&self) -> &'static str;

    fn prepare<'p>(&self, p: &'p Poset) -> Result<Box<dyn PreparedSampler + 'p>, OrderError>;
}

/// Uniform sampling: each step picks an available element with
/// probability proportional to the number of completions it leaves.
#[derive(Clone, Debug)]
pub struct ExactSampler {
    pub budget: usize,
}

impl Default for ExactSampler {
    fn default() -> Self {
        ExactSampler {
            budget: DEFAULT_COUNT_BUDGET,
        }
    }
}

struct PreparedExact<'p> {
    counter: DownSetCounter<'p>,
}

impl PreparedSampler for PreparedExact<'_> {
    fn sample(&mut self, rng: &mut dyn RngCore) -> LinearExtension {
        let n = self.counter.poset.len();
        let mut placed = 0u64;
        let mut order = Vec::with_capacity(n);
        while order.len() < n {
            let total = self.counter.completions(placed);
            let mut r = rng.gen_range(0..total);
            let next: Vec<usize> = self.counter.available(placed).collect();
            let mut chosen = *next.last().expect("an unplaced element is always available");
            for a in next {
                let c = self.counter.completions(placed | 1 << a);
                if r < c {
                    chosen = a;
                    break;
                }
                r -= c;
            }
            placed |= 1 << chosen;
            order.push(chosen);
        }
        LinearExtension(order)
    }
}

impl ExtensionSampler for ExactSampler {
    fn name(&self) -> &'static str {
        "exact"
    }

    fn prepare<'p>(&self, p: &'p Poset) -> Result<Box<dyn PreparedSampler + 'p>, OrderError> {
        check_budget(p, self.budget)?;
        Ok(Box::new(PreparedExact {
            counter: DownSetCounter::new(p),
        }))
    }
}

/// Lazy adjacent-transposition Markov chain started from the greedy
/// extension. `steps: None` means `50 * n^3`.
#[derive(Clone, Debug, Default)]
pub struct McmcSampler {
    pub steps: Option<usize>,
}

impl McmcSampler {
    pub fn default_steps(n: usize) -> usize {
        50 * n * n * n
    }
}

struct PreparedMcmc<'p> {
    poset: &'p Poset,
    start: LinearExtension,
    steps: usize,
}

impl PreparedSampler for PreparedMcmc<'_> {
    fn sample(&mut self, rng: &mut dyn RngCore) -> LinearExtension {
        let mut order = self.start.0.clone();
        let n = order.len();
        if n < 2 {
            return LinearExtension(order);
        }
        for _ in 0..self.steps {
            let i = rng.gen_range(0..n - 1);
            let flip: bool = rng.gen();
            if flip && !self.poset.comparable(order[i], order[i + 1]) {
                order.swap(i, i + 1);
            }
        }
        LinearExtension(order)
    }
}

impl ExtensionSampler for McmcSampler {
    fn name(&self) -> &'static str {
        "mcmc"
    }

    fn prepare<'p>(&self, p: &'p Poset) -> Result<Box<dyn PreparedSampler + 'p>, OrderError> {
        let steps = self.steps.unwrap_or_else(|| Self::default_steps(p.len()));
        if steps == 0 {
            return Err(OrderError::InvalidSteps);
        }
        Ok(Box::new(PreparedMcmc {
            poset: p,
            start: greedy_linear_extension(p),
            steps,
        }))
    }
}

/// Samplers available by name: `exact` and `mcmc`.
pub fn sampler_registry() -> Registry<dyn ExtensionSampler> {
    let mut r: Registry<dyn ExtensionSampler> = Registry::new("linear-extension sampler");
    r.register("exact", Box::new(ExactSampler::default()));
    r.register("mcmc", Box::new(McmcSampler::default()));
    r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SamplingMethod {
    Exact,
    Mcmc { steps: usize },
}

/// One linear extension drawn with a ChaCha8 stream seeded by `seed`.
pub fn sample_linear_extension(
    p: &Poset,
    seed: u64,
    method: SamplingMethod,
) -> Result<LinearExtension, OrderError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut prepared = match method {
        SamplingMethod::Exact => ExactSampler::default().prepare(p)?,
        SamplingMethod::Mcmc { steps } => McmcSampler { steps: Some(steps) }.prepare(p)?,
    };
    Ok(prepared.sample(&mut rng))
}
