//! Random generators and brute-force oracles shared by the integration
//! tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use odsk_core::fca::FormalContext;
use odsk_core::omspace::FiniteMetric;
use odsk_core::order::Poset;
use rand::Rng;
use rust_decimal::Decimal;

pub fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Poset on `e0..` generated by the upper-triangular pairs `i < j` whose
/// bit is set, closed transitively.
pub fn poset_from_bits(n: usize, bits: &[bool]) -> Poset {
    let mut k = 0;
    let mut edges = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            edges[i][j] = bits.get(k).copied().unwrap_or(false);
            k += 1;
        }
    }
    // Warshall, independent of the library closure
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                if edges[i][m] && edges[m][j] {
                    edges[i][j] = true;
                }
            }
        }
    }
    Poset::from_fn(names("e", n), |a, b| a == b || edges[a][b]).unwrap()
}

pub fn random_poset<R: Rng>(rng: &mut R, max_n: usize) -> Poset {
    let n = rng.gen_range(1..=max_n);
    let density: f64 = rng.gen_range(0.1..0.6);
    let bits: Vec<bool> = (0..n * n).map(|_| rng.gen_bool(density)).collect();
    poset_from_bits(n, &bits)
}

pub fn context_from_bits(rows: usize, cols: usize, bits: &[bool]) -> FormalContext {
    FormalContext::from_fn(names("g", rows), names("m", cols), |g, m| bits[g * cols + m]).unwrap()
}

pub fn random_context<R: Rng>(rng: &mut R, rows: usize, cols: usize, density: f64) -> FormalContext {
    let bits: Vec<bool> = (0..rows * cols).map(|_| rng.gen_bool(density)).collect();
    context_from_bits(rows, cols, &bits)
}

/// Shortest-path closure of random integer edge weights.
pub fn random_metric<R: Rng>(rng: &mut R, n: usize) -> FiniteMetric {
    let mut d = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let w = rng.gen_range(1..100);
            d[i][j] = w;
            d[j][i] = w;
        }
    }
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                d[i][j] = d[i][j].min(d[i][m] + d[m][j]);
            }
        }
    }
    let d = d
        .into_iter()
        .map(|r| r.into_iter().map(Decimal::from).collect())
        .collect();
    FiniteMetric::new(names("p", n), d).unwrap()
}

/// Every concept as (extent, intent) index lists, from all attribute
/// subsets.
pub fn brute_concepts(ctx: &FormalContext) -> BTreeSet<(Vec<usize>, Vec<usize>)> {
    let (g, m) = (ctx.num_objects(), ctx.num_attributes());
    let mut out = BTreeSet::new();
    for mask in 0u64..(1 << m) {
        let extent: Vec<usize> = (0..g)
            .filter(|&x| (0..m).all(|y| mask & (1 << y) == 0 || ctx.incident(x, y)))
            .collect();
        let intent: Vec<usize> = (0..m)
            .filter(|&y| extent.iter().all(|&x| ctx.incident(x, y)))
            .collect();
        out.insert((extent, intent));
    }
    out
}

/// Number of cuts `A = (A^u)^l` of a poset.
pub fn brute_cuts(p: &Poset) -> usize {
    let n = p.len();
    let mut cuts = BTreeSet::new();
    for mask in 0u64..(1 << n) {
        let upper: Vec<usize> = (0..n)
            .filter(|&y| (0..n).all(|a| mask & (1 << a) == 0 || p.leq(a, y)))
            .collect();
        let lower: u64 = (0..n)
            .filter(|&x| upper.iter().all(|&y| p.leq(x, y)))
            .fold(0, |acc, x| acc | 1 << x);
        cuts.insert(lower);
    }
    cuts.len()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Linear extensions found by filtering all permutations.
pub fn brute_linear_extensions(p: &Poset) -> Vec<Vec<usize>> {
    permutations(p.len())
        .into_iter()
        .filter(|perm| {
            let mut pos = vec![0; perm.len()];
            for (i, &e) in perm.iter().enumerate() {
                pos[e] = i;
            }
            (0..p.len()).all(|a| (0..p.len()).all(|b| !p.lt(a, b) || pos[a] < pos[b]))
        })
        .collect()
}

/// Whether some `k` linear extensions intersect to exactly `p`.
pub fn has_realizer_of_size(p: &Poset, k: usize) -> bool {
    let n = p.len();
    let exts: Vec<Vec<usize>> = brute_linear_extensions(p)
        .into_iter()
        .map(|perm| {
            let mut pos = vec![0; n];
            for (i, &e) in perm.iter().enumerate() {
                pos[e] = i;
            }
            pos
        })
        .collect();
    fn go(p: &Poset, exts: &[Vec<usize>], start: usize, left: usize, chosen: &mut Vec<usize>) -> bool {
        if left == 0 {
            let n = p.len();
            return (0..n).all(|a| {
                (0..n).all(|b| p.leq(a, b) == chosen.iter().all(|&e| exts[e][a] <= exts[e][b]))
            });
        }
        for e in start..exts.len() {
            chosen.push(e);
            if go(p, exts, e, left - 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    k > 0 && go(p, &exts, 0, k, &mut Vec::new())
}

/// Largest antichain by subset scan.
pub fn brute_width(p: &Poset) -> usize {
    let n = p.len();
    (0u64..(1 << n))
        .filter(|&mask| {
            (0..n).all(|a| {
                (0..n).all(|b| a == b || mask & (1 << a) == 0 || mask & (1 << b) == 0 || !p.comparable(a, b))
            })
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Fewest antichains covering the poset, by backtracking colouring.
pub fn min_antichain_cover(p: &Poset) -> usize {
    let n = p.len();
    if n == 0 {
        return 0;
    }
    fn colour(p: &Poset, k: usize, i: usize, c: &mut Vec<usize>) -> bool {
        if i == p.len() {
            return true;
        }
        for col in 0..k {
            if (0..i).all(|j| c[j] != col || !p.comparable(i, j)) {
                c.push(col);
                if colour(p, k, i + 1, c) {
                    return true;
                }
                c.pop();
            }
        }
        false
    }
    (1..=n).find(|&k| colour(p, k, 0, &mut Vec::new())).unwrap()
}

/// `max(max_a min_b d, max_b min_a d)` written out directly.
pub fn brute_hausdorff(d: &FiniteMetric, a: &[usize], b: &[usize]) -> Decimal {
    let mut forward = Decimal::ZERO;
    for &x in a {
        let mut best: Option<Decimal> = None;
        for &y in b {
            let v = d.d(x, y);
            if best.is_none_or(|bv| v < bv) {
                best = Some(v);
            }
        }
        forward = forward.max(best.unwrap());
    }
    let mut backward = Decimal::ZERO;
    for &y in b {
        let mut best: Option<Decimal> = None;
        for &x in a {
            let v = d.d(x, y);
            if best.is_none_or(|bv| v < bv) {
                best = Some(v);
            }
        }
        backward = backward.max(best.unwrap());
    }
    forward.max(backward)
}

/// Chi-square statistic of `counts` against a uniform distribution.
pub fn chi_square(counts: &[usize]) -> f64 {
    let total: usize = counts.iter().sum();
    let expected = total as f64 / counts.len() as f64;
    counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum()
}

/// Upper 1% points of the chi-square distribution for 1..=6 degrees of
/// freedom.
pub const CHI2_CRIT_01: [f64; 6] = [6.635, 9.210, 11.345, 13.277, 15.086, 16.812];

/// The "N" poset: a < c, b < c, b < d.
pub fn n_poset() -> Poset {
    Poset::from_fn(names("e", 4), |x, y| x == y || matches!((x, y), (0, 2) | (1, 2) | (1, 3))).unwrap()
}

pub fn standard_example(k: usize) -> Poset {
    // a_i = i, b_i = k + i
    Poset::from_fn(names("s", 2 * k), |x, y| x == y || (x < k && y >= k && y - k != x)).unwrap()
}

pub fn boolean_cube(dim: u32) -> Poset {
    Poset::from_fn(names("c", 1 << dim), |a, b| a & b == a).unwrap()
}
