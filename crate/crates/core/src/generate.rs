//! Isomorph-free exhaustive generation of MMP diagrams.
//!
//! The search grows diagrams one block at a time from the empty diagram and
//! keeps exactly one representative per isomorphism class by canonical
//! augmentation: at each node, candidate one-block extensions are
//! deduplicated to one per orbit of the parent's automorphism group, and a
//! child built by adding block `e` is kept only when `e` lies in the same
//! orbit of the child's automorphisms as the child's canonically chosen
//! removable block. Every class with the target block count is then emitted
//! along exactly one construction path, with no cross-run bookkeeping and no
//! global seen-set.
//!
//! Emission filters (connectivity, non-colorability, statelessness) never
//! prune the search tree: a diagram failing them may still extend to one
//! that passes, so they apply to emitted diagrams only.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::canon::{canonical_form, marked_key};
use crate::diagram::MmpDiagram;
use crate::states;

/// Parameters of a generation run.
#[derive(Debug, Clone)]
pub struct GenerationParams {
    /// Number of blocks in emitted diagrams.
    pub target_blocks: usize,
    /// Inclusive range of allowed block sizes.
    pub block_size_min: usize,
    pub block_size_max: usize,
    /// Upper bound on vertices, enforced during the search.
    pub max_vertices: usize,
    /// Emit only connected diagrams. Intermediate diagrams may be
    /// disconnected either way; connectivity is not preserved by block
    /// removal, so pruning on it would lose classes.
    pub require_connected: bool,
    /// Emission filters, conjunctive.
    pub filters: Vec<DiagramFilter>,
    /// Abort with [`GenerateError::BudgetExhausted`] after visiting this
    /// many search nodes. `None` means unlimited.
    pub max_nodes: Option<u64>,
}

impl GenerationParams {
    /// Connected diagrams of `target_blocks` blocks, all of size
    /// `block_size`, on at most `max_vertices` vertices.
    pub fn uniform(target_blocks: usize, block_size: usize, max_vertices: usize) -> Self {
        GenerationParams {
            target_blocks,
            block_size_min: block_size,
            block_size_max: block_size,
            max_vertices,
            require_connected: true,
            filters: Vec::new(),
            max_nodes: None,
        }
    }

    fn check(&self) -> Result<(), GenerateError> {
        if self.block_size_min < 1 || self.block_size_min > self.block_size_max {
            return Err(GenerateError::BadBlockSizeRange {
                min: self.block_size_min,
                max: self.block_size_max,
            });
        }
        Ok(())
    }
}

/// Predicates applied to emitted diagrams. Neither is monotone in the
/// direction that would allow pruning partial diagrams, so both act as
/// plain output filters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagramFilter {
    /// Keep diagrams without any classical 0-1 state.
    Non01Colorable,
    /// Keep diagrams without any probabilistic state.
    Stateless,
}

impl DiagramFilter {
    pub fn accepts(&self, d: &MmpDiagram) -> bool {
        match self {
            DiagramFilter::Non01Colorable => states::admits_01_state(d).is_none(),
            DiagramFilter::Stateless => states::admits_state(d).is_none(),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenerateError {
    #[error("block size range {min}..={max} is empty or starts below 1")]
    BadBlockSizeRange { min: usize, max: usize },
    #[error("search aborted after visiting {nodes} nodes")]
    BudgetExhausted { nodes: u64 },
}

/// A one-block extension: the new block, whose trailing `fresh_vertices`
/// entries are vertices the parent does not have.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub block: Vec<usize>,
    pub fresh_vertices: usize,
}

impl Extension {
    /// The parent with this block appended.
    pub fn apply(&self, d: &MmpDiagram) -> MmpDiagram {
        let mut blocks = d.blocks().to_vec();
        blocks.push(self.block.clone());
        MmpDiagram::new(d.vertex_count() + self.fresh_vertices, blocks)
            .expect("extension blocks are structurally valid")
    }
}

/// Candidate one-block extensions of `d` within the size bounds of `p`,
/// reduced to one representative per orbit of the automorphism group of
/// `d`. Every returned extension yields a valid MMP diagram; duplicates of
/// existing blocks are rejected. Deterministic order.
pub fn extensions(d: &MmpDiagram, p: &GenerationParams) -> Vec<Extension> {
    let n = d.vertex_count();
    let existing: Vec<BTreeSet<usize>> = d
        .blocks()
        .iter()
        .map(|b| b.iter().copied().collect())
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for size in p.block_size_min..=p.block_size_max {
        for fresh in 0..=size.min(p.max_vertices.saturating_sub(n)) {
            let old = size - fresh;
            if old > n {
                continue;
            }
            for subset in combinations(n, old) {
                let mut block = subset;
                block.extend(n..n + fresh);
                if fresh == 0 {
                    let as_set: BTreeSet<usize> = block.iter().copied().collect();
                    if existing.contains(&as_set) {
                        continue;
                    }
                }
                let e = Extension { block, fresh_vertices: fresh };
                let child = e.apply(d);
                if !child.validate().passed() {
                    continue;
                }
                let key = marked_key(&child, child.block_count() - 1);
                if seen.insert(key) {
                    out.push(e);
                }
            }
        }
    }
    out
}

/// Canonical-parent test: true when the just-added block (the last block of
/// `child`) lies in the same automorphism orbit as the child's canonically
/// chosen block, so that each isomorphism class survives along exactly one
/// construction path. `e` must be the extension that produced `child`.
pub fn is_canonical_extension(child: &MmpDiagram, e: &Extension) -> bool {
    let added = child.block_count() - 1;
    debug_assert_eq!(child.blocks()[added], e.block);
    let added_key = marked_key(child, added);
    (0..added).all(|b| marked_key(child, b) >= added_key)
}

/// Statistics of a [`scan`] run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOutcome {
    /// Search-tree nodes visited, including the root.
    pub nodes: u64,
    /// Diagrams passed to the visitor.
    pub emitted: u64,
    /// False when the visitor stopped the run early.
    pub completed: bool,
}

/// Depth-first canonical-augmentation scan from `d` up to
/// `p.target_blocks` blocks. Every emitted diagram satisfies the MMP
/// conditions, the size bounds, and all filters; starting from the empty
/// diagram, each isomorphism class is emitted exactly once. The visitor
/// returns whether to keep searching.
pub fn scan(
    d: &MmpDiagram,
    p: &GenerationParams,
    visit: &mut dyn FnMut(&MmpDiagram) -> bool,
) -> Result<ScanOutcome, GenerateError> {
    p.check()?;
    let mut outcome = ScanOutcome { nodes: 0, emitted: 0, completed: true };
    descend(d, p, visit, &mut outcome)?;
    Ok(outcome)
}

fn descend(
    d: &MmpDiagram,
    p: &GenerationParams,
    visit: &mut dyn FnMut(&MmpDiagram) -> bool,
    outcome: &mut ScanOutcome,
) -> Result<bool, GenerateError> {
    outcome.nodes += 1;
    if let Some(cap) = p.max_nodes {
        if outcome.nodes > cap {
            return Err(GenerateError::BudgetExhausted { nodes: outcome.nodes });
        }
    }
    if d.block_count() == p.target_blocks {
        if (!p.require_connected || d.is_connected())
            && p.filters.iter().all(|f| f.accepts(d))
        {
            outcome.emitted += 1;
            if !visit(d) {
                outcome.completed = false;
                return Ok(false);
            }
        }
        return Ok(true);
    }
    for e in extensions(d, p) {
        let child = e.apply(d);
        if is_canonical_extension(&child, &e) && !descend(&child, p, visit, outcome)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Collects the full isomorph-free catalogue for `p`, in the deterministic
/// scan order.
pub fn generate_all(p: &GenerationParams) -> Result<Vec<MmpDiagram>, GenerateError> {
    let mut out = Vec::new();
    scan(&MmpDiagram::empty(), p, &mut |d| {
        out.push(d.clone());
        true
    })?;
    Ok(out)
}

/// k-subsets of 0..n in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // advance the rightmost index that can still move
        let mut i = k;
        while i > 0 && idx[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Convenience for tests and callers deduplicating by hand.
pub fn canonical_text(d: &MmpDiagram) -> String {
    canonical_form(d).canonical_text
}
