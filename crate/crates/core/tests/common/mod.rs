#![allow(dead_code)] // each test binary uses a different subset

//! Brute-force oracles for cross-checking the library's algorithms.
//!
//! Everything here is deliberately naive and shares no code with the
//! implementations under test: isomorphism by trying every vertex
//! bijection, colorability by trying every 0-1 assignment, and linear
//! feasibility by Fourier-Motzkin elimination instead of the simplex
//! method. Only usable on small inputs.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use mmp_core::generate::GenerationParams;
use mmp_core::{MmpDiagram, Rational};
use num_traits::Zero;

/// All permutations of 0..n, in no particular order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = vec![0usize; n];
    let mut used = vec![false; n];
    fn descend(
        pos: usize,
        n: usize,
        current: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if pos == n {
            out.push(current.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                current[pos] = v;
                descend(pos + 1, n, current, used, out);
                used[v] = false;
            }
        }
    }
    descend(0, n, &mut current, &mut used, &mut out);
    out
}

/// The diagram's blocks as a normalized set-of-sets: each block sorted,
/// blocks sorted, duplicates kept.
pub fn normalized_blocks(d: &MmpDiagram) -> Vec<Vec<usize>> {
    let mut blocks: Vec<Vec<usize>> = d
        .blocks()
        .iter()
        .map(|b| {
            let mut b = b.clone();
            b.sort_unstable();
            b
        })
        .collect();
    blocks.sort();
    blocks
}

fn permuted_blocks(blocks: &[Vec<usize>], perm: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = blocks
        .iter()
        .map(|b| {
            let mut b: Vec<usize> = b.iter().map(|&v| perm[v]).collect();
            b.sort_unstable();
            b
        })
        .collect();
    out.sort();
    out
}

/// Isomorphism by exhausting all vertex bijections.
pub fn brute_isomorphic(d1: &MmpDiagram, d2: &MmpDiagram) -> bool {
    if d1.vertex_count() != d2.vertex_count() || d1.block_count() != d2.block_count() {
        return false;
    }
    let target = normalized_blocks(d2);
    let source = normalized_blocks(d1);
    permutations(d1.vertex_count())
        .into_iter()
        .any(|perm| permuted_blocks(&source, &perm) == target)
}

/// Canonical key independent of the library's canonicalization: the
/// lexicographically smallest relabeling of the normalized block list.
pub fn brute_canonical_key(vertex_count: usize, blocks: &[Vec<usize>]) -> Vec<Vec<usize>> {
    permutations(vertex_count)
        .into_iter()
        .map(|perm| permuted_blocks(blocks, &perm))
        .min()
        .unwrap_or_default()
}

/// 0-1 colorability by trying all 2^n assignments.
pub fn brute_01_colorable(d: &MmpDiagram) -> bool {
    brute_count_01_states(d) > 0
}

/// Number of 0-1 states by trying all 2^n assignments. Only for small,
/// fully covered diagrams.
pub fn brute_count_01_states(d: &MmpDiagram) -> usize {
    let n = d.vertex_count();
    assert!(n <= 20, "brute-force colorability is exponential");
    (0u64..1 << n)
        .filter(|bits| {
            d.blocks()
                .iter()
                .all(|b| b.iter().filter(|&&v| bits >> v & 1 == 1).count() == 1)
        })
        .count()
}

/// One linear inequality sum(coeffs[i] * x_i) <= rhs, strict when `strict`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Inequality {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
    pub strict: bool,
}

impl Inequality {
    pub fn le(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Inequality { coeffs, rhs, strict: false }
    }

    pub fn lt(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Inequality { coeffs, rhs, strict: true }
    }
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Feasibility of a system of (possibly strict) linear inequalities by
/// Fourier-Motzkin elimination. Exact; exponential in the worst case.
pub fn fm_feasible(nvars: usize, mut cons: Vec<Inequality>) -> bool {
    for var in 0..nvars {
        let mut rest: Vec<Inequality> = Vec::new();
        // uppers: x_var <= rhs - sum(coeffs*x); lowers: x_var >= sum - rhs
        let mut uppers: Vec<Inequality> = Vec::new();
        let mut lowers: Vec<Inequality> = Vec::new();
        for mut c in cons {
            let lead = c.coeffs[var].clone();
            match lead.cmp(&Rational::zero()) {
                Ordering::Equal => rest.push(c),
                Ordering::Greater => {
                    for x in &mut c.coeffs {
                        *x /= &lead;
                    }
                    c.rhs /= &lead;
                    c.coeffs[var] = Rational::zero();
                    uppers.push(c);
                }
                Ordering::Less => {
                    let scale = -lead;
                    for x in &mut c.coeffs {
                        *x /= &scale;
                    }
                    c.rhs /= &scale;
                    c.coeffs[var] = Rational::zero();
                    lowers.push(c);
                }
            }
        }
        for u in &uppers {
            for l in &lowers {
                let coeffs: Vec<Rational> = u
                    .coeffs
                    .iter()
                    .zip(&l.coeffs)
                    .map(|(a, b)| a + b)
                    .collect();
                rest.push(Inequality {
                    coeffs,
                    rhs: &u.rhs + &l.rhs,
                    strict: u.strict || l.strict,
                });
            }
        }
        rest.sort();
        rest.dedup();
        cons = rest;
    }
    cons.iter().all(|c| {
        debug_assert!(c.coeffs.iter().all(Rational::is_zero));
        if c.strict {
            c.rhs > Rational::zero()
        } else {
            c.rhs >= Rational::zero()
        }
    })
}

/// The state polytope of a diagram as inequalities: each block sums to
/// exactly 1, every vertex value is nonnegative.
pub fn state_system(d: &MmpDiagram) -> Vec<Inequality> {
    let n = d.vertex_count();
    let mut cons = Vec::new();
    for block in d.blocks() {
        let mut coeffs = vec![Rational::zero(); n];
        for &v in block {
            coeffs[v] = q(1);
        }
        cons.push(Inequality::le(coeffs.clone(), q(1)));
        let neg: Vec<Rational> = coeffs.iter().map(|c| -c).collect();
        cons.push(Inequality::le(neg, q(-1)));
    }
    for v in 0..n {
        let mut coeffs = vec![Rational::zero(); n];
        coeffs[v] = q(-1);
        cons.push(Inequality::le(coeffs, q(0)));
    }
    cons
}

/// Probabilistic-state existence by Fourier-Motzkin.
pub fn fm_state_feasible(d: &MmpDiagram) -> bool {
    fm_feasible(d.vertex_count(), state_system(d))
}

/// Quantum-state admissibility by Fourier-Motzkin, mirroring the
/// definition: some state exists, and for every ordered pair (a, b) of
/// distinct vertices with the slice {m(a) = 1} nonempty, some state has
/// m(a) = 1 and m(b) < 1. Pairs whose slice is empty are vacuous.
pub fn fm_quantum_admits(d: &MmpDiagram) -> bool {
    let n = d.vertex_count();
    if !fm_state_feasible(d) {
        return false;
    }
    for a in 0..n {
        let mut pinned = state_system(d);
        let mut coeffs = vec![Rational::zero(); n];
        coeffs[a] = q(-1);
        pinned.push(Inequality::le(coeffs.clone(), q(-1))); // m(a) >= 1
        let pos: Vec<Rational> = coeffs.iter().map(|c| -c).collect();
        pinned.push(Inequality::le(pos, q(1))); // m(a) <= 1
        if !fm_feasible(n, pinned.clone()) {
            continue; // unreachable atom: all pairs from it are vacuous
        }
        for b in 0..n {
            if a == b {
                continue;
            }
            let mut strict = pinned.clone();
            let mut coeffs = vec![Rational::zero(); n];
            coeffs[b] = q(1);
            strict.push(Inequality::lt(coeffs, q(1))); // m(b) < 1
            if !fm_feasible(n, strict) {
                return false;
            }
        }
    }
    true
}

/// Every choice of `target` distinct sorted blocks over at most `maxv`
/// vertices, reduced to isomorphism classes by the brute canonical key.
/// Mirrors the generator's search space without sharing any of its code.
pub fn oracle_classes(p: &GenerationParams) -> BTreeSet<Vec<Vec<usize>>> {
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    for size in p.block_size_min..=p.block_size_max {
        subsets(p.max_vertices, size, &mut candidates);
    }
    candidates.sort();

    let mut classes = BTreeSet::new();
    let mut chosen: Vec<usize> = Vec::new();
    choose_blocks(&candidates, p, 0, &mut chosen, &mut classes);
    classes
}

fn subsets(n: usize, k: usize, out: &mut Vec<Vec<usize>>) {
    let mut current = Vec::with_capacity(k);
    fn descend(
        start: usize,
        n: usize,
        k: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for v in start..n {
            current.push(v);
            descend(v + 1, n, k, current, out);
            current.pop();
        }
    }
    descend(0, n, k, &mut current, out);
}

fn choose_blocks(
    candidates: &[Vec<usize>],
    p: &GenerationParams,
    start: usize,
    chosen: &mut Vec<usize>,
    classes: &mut BTreeSet<Vec<Vec<usize>>>,
) {
    if chosen.len() == p.target_blocks {
        record_class(candidates, p, chosen, classes);
        return;
    }
    for i in start..candidates.len() {
        chosen.push(i);
        choose_blocks(candidates, p, i + 1, chosen, classes);
        chosen.pop();
    }
}

fn record_class(
    candidates: &[Vec<usize>],
    p: &GenerationParams,
    chosen: &[usize],
    classes: &mut BTreeSet<Vec<Vec<usize>>>,
) {
    // compress the used vertices to 0..n
    let blocks: Vec<Vec<usize>> = chosen.iter().map(|&i| candidates[i].clone()).collect();
    let mut used: Vec<usize> = blocks.iter().flatten().copied().collect();
    used.sort_unstable();
    used.dedup();
    let compress = |v: usize| used.binary_search(&v).unwrap();
    let blocks: Vec<Vec<usize>> =
        blocks.iter().map(|b| b.iter().map(|&v| compress(v)).collect()).collect();

    let Ok(d) = MmpDiagram::new(used.len(), blocks.clone()) else {
        return;
    };
    if !d.validate().passed() {
        return;
    }
    if p.require_connected && !d.is_connected() {
        return;
    }
    if !p.filters.iter().all(|f| f.accepts(&d)) {
        return;
    }
    classes.insert(brute_canonical_key(used.len(), &blocks));
}
