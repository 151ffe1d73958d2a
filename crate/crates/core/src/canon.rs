//! Canonical labeling and isomorphism testing for MMP diagrams.
//!
//! Two diagrams are isomorphic when a vertex bijection maps the blocks of one
//! onto the blocks of the other; block order and vertex order within blocks
//! carry no meaning. The canonical form is the lexicographically smallest
//! relabeled block list reachable through an individualization-refinement
//! search over the vertex-block incidence structure.
//!
//! The search deliberately visits every leaf of the refinement tree instead
//! of pruning: each labeling that attains the minimal image corresponds to
//! exactly one automorphism, so the number of minimal leaves *is* the size of
//! the automorphism group. The cost is proportional to that group, which is
//! small for the diagram sizes this library targets.

use crate::diagram::MmpDiagram;

/// Canonical representative of an isomorphism class of diagrams.
///
/// `canonical_text` is invariant under any relabeling of vertices and any
/// reordering of blocks or of vertices within blocks, and is identical
/// across runs and platforms. For diagrams in which every vertex lies in a
/// block (condition 1), equal text is equivalent to isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    vertex_count: usize,
    canonical_blocks: Vec<Vec<usize>>,
    /// Serialized canonical relabeling, one diagram line.
    pub canonical_text: String,
    /// Order of the automorphism group; always at least 1 and a divisor
    /// of `vertex_count!`.
    pub automorphism_count: u64,
}

impl CanonicalForm {
    /// The canonically relabeled diagram itself.
    pub fn diagram(&self) -> MmpDiagram {
        MmpDiagram::new(self.vertex_count, self.canonical_blocks.clone())
            .expect("canonical blocks are structurally valid")
    }

    /// Blocks of the canonical relabeling: each sorted ascending, the list
    /// sorted lexicographically.
    pub fn canonical_blocks(&self) -> &[Vec<usize>] {
        &self.canonical_blocks
    }
}

/// Computes the canonical form of a diagram. Deterministic; independent of
/// vertex numbering and block order.
pub fn canonical_form(d: &MmpDiagram) -> CanonicalForm {
    let mut search = Search::new(d, None);
    search.run();
    let (blocks, _) = search.best.expect("search visits at least one leaf");
    let canonical_text = MmpDiagram::new(d.vertex_count(), blocks.clone())
        .expect("canonical blocks are structurally valid")
        .to_line();
    CanonicalForm {
        vertex_count: d.vertex_count(),
        canonical_blocks: blocks,
        canonical_text,
        automorphism_count: search.best_count,
    }
}

/// True when a vertex bijection maps the blocks of `d1` onto the blocks of
/// `d2`. Agrees with exhaustive bijection search.
pub fn are_isomorphic(d1: &MmpDiagram, d2: &MmpDiagram) -> bool {
    if d1.vertex_count() != d2.vertex_count() || d1.block_count() != d2.block_count() {
        return false;
    }
    let mut sizes1: Vec<usize> = d1.blocks().iter().map(Vec::len).collect();
    let mut sizes2: Vec<usize> = d2.blocks().iter().map(Vec::len).collect();
    sizes1.sort_unstable();
    sizes2.sort_unstable();
    if sizes1 != sizes2 {
        return false;
    }
    let c1 = canonical_form(d1);
    let c2 = canonical_form(d2);
    c1.canonical_blocks == c2.canonical_blocks
}

/// Invariant key of a diagram with one distinguished block: two marked
/// diagrams get equal keys exactly when an isomorphism maps one to the other
/// carrying mark to mark. Within a single diagram, two blocks get equal keys
/// exactly when an automorphism maps one to the other, which is what the
/// generator uses both to deduplicate candidate extensions and to test the
/// canonical-parent rule.
pub(crate) type MarkedKey = (Vec<Vec<usize>>, Vec<usize>);

pub(crate) fn marked_key(d: &MmpDiagram, marked_block: usize) -> MarkedKey {
    debug_assert!(marked_block < d.block_count());
    let mut search = Search::new(d, Some(marked_block));
    search.run();
    let (blocks, marked) = search.best.expect("search visits at least one leaf");
    (blocks, marked.expect("marked image tracked when a block is marked"))
}

/// Individualization-refinement search state. Vertices carry colors; the
/// refinement signature of a vertex is the multiset, over its incident
/// blocks, of (block size, marked flag, sorted co-vertex colors). A leaf is
/// a discrete coloring and doubles as a relabeling; the minimal relabeled
/// image over all leaves is the canonical form.
/// A candidate canonical image: the relabeled block list and, when a block
/// is marked, its relabeled image.
type CandidateImage = (Vec<Vec<usize>>, Option<Vec<usize>>);

struct Search<'a> {
    blocks: &'a [Vec<usize>],
    n: usize,
    marked: Option<usize>,
    vertex_blocks: Vec<Vec<usize>>,
    best: Option<CandidateImage>,
    best_count: u64,
}

impl<'a> Search<'a> {
    fn new(d: &'a MmpDiagram, marked: Option<usize>) -> Self {
        Search {
            blocks: d.blocks(),
            n: d.vertex_count(),
            marked,
            vertex_blocks: d.vertex_blocks(),
            best: None,
            best_count: 0,
        }
    }

    fn run(&mut self) {
        let colors = vec![0usize; self.n];
        self.descend(colors);
    }

    fn descend(&mut self, mut colors: Vec<usize>) {
        let classes = self.refine(&mut colors);
        if classes == self.n {
            self.record_leaf(&colors);
            return;
        }
        // Target cell: the smallest color with two or more members. Color
        // ranks are relabeling-invariant, so the choice is too.
        let target = (0..classes)
            .find(|&c| colors.iter().filter(|&&x| x == c).count() >= 2)
            .expect("a non-discrete coloring has a non-singleton class");
        let members: Vec<usize> = (0..self.n).filter(|&v| colors[v] == target).collect();
        for &v in &members {
            let mut child: Vec<usize> = colors
                .iter()
                .enumerate()
                .map(|(u, &c)| 2 * c + usize::from(c == target && u != v))
                .collect();
            normalize(&mut child);
            self.descend(child);
        }
    }

    /// Splits color classes by structure until stable. Stable in the strong
    /// sense: new colors sort by (old color, signature), so classes split
    /// but never reorder, and an individualized vertex keeps a color below
    /// the rest of its former class. Returns the number of classes.
    fn refine(&self, colors: &mut Vec<usize>) -> usize {
        if self.n == 0 {
            return 0;
        }
        let mut classes = colors.iter().max().unwrap() + 1;
        loop {
            let mut keyed: Vec<(usize, Signature, usize)> = (0..self.n)
                .map(|v| (colors[v], self.signature(v, colors), v))
                .collect();
            keyed.sort();
            let mut next = vec![0usize; self.n];
            let mut rank = 0;
            for i in 0..keyed.len() {
                if i > 0 && (keyed[i].0, &keyed[i].1) != (keyed[i - 1].0, &keyed[i - 1].1) {
                    rank += 1;
                }
                next[keyed[i].2] = rank;
            }
            let next_classes = rank + 1;
            *colors = next;
            if next_classes == classes || next_classes == self.n {
                return next_classes;
            }
            classes = next_classes;
        }
    }

    fn signature(&self, v: usize, colors: &[usize]) -> Signature {
        let mut sig: Signature = self.vertex_blocks[v]
            .iter()
            .map(|&bi| {
                let block = &self.blocks[bi];
                let mut co: Vec<usize> = block
                    .iter()
                    .filter(|&&u| u != v)
                    .map(|&u| colors[u])
                    .collect();
                co.sort_unstable();
                (block.len(), self.marked == Some(bi), co)
            })
            .collect();
        sig.sort();
        sig
    }

    fn record_leaf(&mut self, colors: &[usize]) {
        let mut image: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .map(|block| {
                let mut b: Vec<usize> = block.iter().map(|&v| colors[v]).collect();
                b.sort_unstable();
                b
            })
            .collect();
        let marked_image = self.marked.map(|m| image[m].clone());
        image.sort();
        let leaf = (image, marked_image);
        match &self.best {
            None => {
                self.best = Some(leaf);
                self.best_count = 1;
            }
            Some(best) => match leaf.cmp(best) {
                std::cmp::Ordering::Less => {
                    self.best = Some(leaf);
                    self.best_count = 1;
                }
                std::cmp::Ordering::Equal => self.best_count += 1,
                std::cmp::Ordering::Greater => {}
            },
        }
    }
}

type Signature = Vec<(usize, bool, Vec<usize>)>;

/// Rewrites arbitrary color values to consecutive ranks, preserving order.
fn normalize(colors: &mut [usize]) {
    let mut values: Vec<usize> = colors.to_vec();
    values.sort_unstable();
    values.dedup();
    for c in colors.iter_mut() {
        *c = values.binary_search(c).unwrap();
    }
}
