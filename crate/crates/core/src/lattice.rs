//! Pasting a diagram's blocks into a finite ortholattice, and checking
//! lattice laws on the result.
//!
//! Each block of k mutually orthogonal atoms spans a Boolean algebra 2^k;
//! the pasting glues these along shared subsets: (B1, S) and (B2, S) are the
//! same element whenever S lies in both blocks, every empty subset is the
//! common 0, every full block the common 1, and the identification is closed
//! so that equal elements have equal within-block complements. The order is
//! the transitive closure of subset order inside blocks.
//!
//! Because MMP diagrams relax the Greechie loop conditions, none of the
//! classical pasting guarantees apply, so nothing is assumed: partial-order
//! laws, existence of meets and joins, the orthocomplement laws and the
//! orthomodular law are all verified exhaustively at construction, and any
//! failure is returned as a diagnostic naming the offending elements rather
//! than a silently broken structure.

use std::collections::HashMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::diagram::MmpDiagram;
use crate::simplex::{LinearProgram, LpOutcome};
use crate::terms::{LatticeStatement, LatticeTerm, Relation};
use crate::Rational;

/// Largest admitted total of (block, subset) pairs. A single block of k
/// vertices alone contributes 2^k, so this caps block size near 11 while
/// leaving room for many small blocks.
const PAIR_CAP: u128 = 2048;

/// A finite orthomodular lattice pasted from a diagram. Successful
/// construction certifies: the order is a bounded partial order, all meets
/// and joins exist, ortho is an order-reversing involutive complement, and
/// the orthomodular law holds.
#[derive(Debug, Clone)]
pub struct OmlLattice {
    element_count: usize,
    zero: usize,
    one: usize,
    ortho: Vec<usize>,
    /// up[x] is the bitset of y with x ≤ y; down[y] the transpose.
    up: Vec<Vec<u64>>,
    down: Vec<Vec<u64>>,
    meet: Vec<usize>,
    join: Vec<usize>,
    atoms: Vec<usize>,
    atom_of_vertex: Vec<usize>,
    names: Vec<String>,
    /// (block, subset mask) pairs of each equivalence class.
    reps: Vec<Vec<(usize, u32)>>,
}

impl OmlLattice {
    pub fn element_count(&self) -> usize {
        self.element_count
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn ortho(&self, e: usize) -> usize {
        self.ortho[e]
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        bit(&self.up[x], y)
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.element_count + y]
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.element_count + y]
    }

    /// Minimal nonzero elements, ascending.
    pub fn atoms(&self) -> &[usize] {
        &self.atoms
    }

    pub fn is_atom(&self, e: usize) -> bool {
        self.atoms.binary_search(&e).is_ok()
    }

    /// Element of each diagram vertex, in vertex order.
    pub fn atom_of_vertex(&self) -> &[usize] {
        &self.atom_of_vertex
    }

    /// Human-readable element name: "0", "1", or the smallest vertex-set
    /// spelling among the element's representatives (such as "ab").
    pub fn element_name(&self, e: usize) -> &str {
        &self.names[e]
    }

    /// The vertex sets representing an element, one per (block, subset)
    /// pair, sorted and deduplicated.
    pub fn element_vertex_sets(&self, e: usize, d: &MmpDiagram) -> Vec<Vec<usize>> {
        let mut sets: Vec<Vec<usize>> = self.reps[e]
            .iter()
            .map(|&(b, mask)| {
                let block = &d.blocks()[b];
                (0..block.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| block[i])
                    .collect::<Vec<usize>>()
            })
            .map(|mut s| {
                s.sort_unstable();
                s
            })
            .collect();
        sets.sort();
        sets.dedup();
        sets
    }

    #[cfg(test)]
    fn corrupt_ortho(&mut self, e: usize, to: usize) {
        self.ortho[e] = to;
    }
}

/// Construction diagnostics: every way pasting a diagram can fail to be an
/// orthomodular lattice, each naming its witnesses.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LatticeDiagnostic {
    #[error("diagram violates the MMP conditions; refusing to paste")]
    InvalidDiagram,
    #[error("pasting needs {pairs} block-subset pairs, over the cap of {cap}")]
    TooLarge { pairs: u128, cap: u128 },
    #[error("identifications collapse 0 and 1 into one element")]
    ZeroOneCollapsed,
    #[error("vertices {v1} and {v2} paste to the same atom")]
    AtomsIdentified { v1: String, v2: String },
    #[error("vertex {vertex} pastes to {to} instead of an atom")]
    AtomVanished { vertex: String, to: String },
    #[error("order is not antisymmetric: {x} and {y} lie below each other")]
    NotAPartialOrder { x: String, y: String },
    #[error("{x} and {y} have no {op}; extremal common bounds: {candidates:?}")]
    NotALattice { op: &'static str, x: String, y: String, candidates: Vec<String> },
    #[error("orthocomplement maps {element} to itself")]
    OrthoIllDefined { element: String },
    #[error("orthocomplement does not reverse {x} =< {y}")]
    OrthoNotOrderReversing { x: String, y: String },
    #[error("complement laws fail at {element}")]
    OrthoLawFails { element: String },
    #[error("orthomodular law fails on the pair {x} =< {y}")]
    NotOrthomodular { x: String, y: String },
    #[error("lattice atoms do not coincide with pasted vertex atoms")]
    AtomSetMismatch,
}

/// Pastes the blocks of a valid diagram into an orthomodular lattice, or
/// explains why the result is not one. The empty diagram yields the trivial
/// one-element lattice (0 = 1) by convention.
pub fn build_lattice(d: &MmpDiagram) -> Result<OmlLattice, LatticeDiagnostic> {
    if !d.validate().passed() {
        return Err(LatticeDiagnostic::InvalidDiagram);
    }
    if d.block_count() == 0 {
        return Ok(trivial_lattice());
    }

    let blocks = d.blocks();
    let sizes: Vec<usize> = blocks.iter().map(Vec::len).collect();
    let pairs_total: u128 = sizes.iter().map(|&s| 1u128 << s).sum();
    if pairs_total > PAIR_CAP {
        return Err(LatticeDiagnostic::TooLarge { pairs: pairs_total, cap: PAIR_CAP });
    }

    // linear index for (block, mask)
    let mut base = vec![0usize; blocks.len()];
    for i in 1..blocks.len() {
        base[i] = base[i - 1] + (1 << sizes[i - 1]);
    }
    let total = pairs_total as usize;
    let pair_of = |b: usize, mask: u32| base[b] + mask as usize;

    let mut uf = UnionFind::new(total);

    // shared subsets across block pairs are the same element
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            let shared: Vec<(usize, usize)> = blocks[i]
                .iter()
                .enumerate()
                .filter_map(|(pi, v)| {
                    blocks[j].iter().position(|w| w == v).map(|pj| (pi, pj))
                })
                .collect();
            for t in 0u32..1 << shared.len() {
                let mut mask_i = 0u32;
                let mut mask_j = 0u32;
                for (k, &(pi, pj)) in shared.iter().enumerate() {
                    if t >> k & 1 == 1 {
                        mask_i |= 1 << pi;
                        mask_j |= 1 << pj;
                    }
                }
                uf.union(pair_of(i, mask_i), pair_of(j, mask_j));
            }
        }
    }
    // every full block is the common 1 (empty subsets are already the
    // common 0 through the loop above)
    for i in 1..blocks.len() {
        uf.union(pair_of(0, full_mask(sizes[0])), pair_of(i, full_mask(sizes[i])));
    }

    // close under within-block complementation: identified elements must
    // have identified complements
    let ortho_pair = |p: usize| {
        let b = base.partition_point(|&s| s <= p) - 1;
        let mask = (p - base[b]) as u32;
        pair_of(b, full_mask(sizes[b]) ^ mask)
    };
    loop {
        let mut changed = false;
        let mut ortho_root: HashMap<usize, usize> = HashMap::new();
        for p in 0..total {
            let rp = uf.find(p);
            let rq = uf.find(ortho_pair(p));
            match ortho_root.get(&rp) {
                None => {
                    ortho_root.insert(rp, rq);
                }
                Some(&prev) => {
                    if uf.find(prev) != rq {
                        uf.union(prev, rq);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }

    // equivalence classes become elements, numbered by smallest member
    let mut element_of_pair = vec![usize::MAX; total];
    let mut reps: Vec<Vec<(usize, u32)>> = Vec::new();
    for p in 0..total {
        let r = uf.find(p);
        if element_of_pair[r] == usize::MAX {
            element_of_pair[r] = reps.len();
            reps.push(Vec::new());
        }
        let e = element_of_pair[r];
        element_of_pair[p] = e;
        let b = base.partition_point(|&s| s <= p) - 1;
        reps[e].push((b, (p - base[b]) as u32));
    }
    let element_count = reps.len();
    let zero = element_of_pair[pair_of(0, 0)];
    let one = element_of_pair[pair_of(0, full_mask(sizes[0]))];
    if zero == one {
        return Err(LatticeDiagnostic::ZeroOneCollapsed);
    }

    let names = element_names(d, &reps, zero, one);
    let name = |e: usize| names[e].clone();

    // vertices must stay distinct atoms
    let mut atom_of_vertex = vec![usize::MAX; d.vertex_count()];
    for (b, block) in blocks.iter().enumerate() {
        for (pos, &v) in block.iter().enumerate() {
            let e = element_of_pair[pair_of(b, 1 << pos)];
            if atom_of_vertex[v] == usize::MAX {
                atom_of_vertex[v] = e;
            } else if atom_of_vertex[v] != e {
                // shared subsets rule makes singleton classes block-independent
                unreachable!("vertex {v} maps to two elements");
            }
        }
    }
    for (v, &e) in atom_of_vertex.iter().enumerate() {
        if e == zero || (e == one && d.vertex_count() >= 2) {
            return Err(LatticeDiagnostic::AtomVanished {
                vertex: d.vertex_label(v),
                to: name(e),
            });
        }
        if let Some(w) = atom_of_vertex[..v].iter().position(|&f| f == e) {
            return Err(LatticeDiagnostic::AtomsIdentified {
                v1: d.vertex_label(w),
                v2: d.vertex_label(v),
            });
        }
    }

    // order: subset order within blocks, closed transitively
    let words = element_count.div_ceil(64);
    let mut up = vec![vec![0u64; words]; element_count];
    for (b, &size) in sizes.iter().enumerate() {
        for mask in 0..full_mask(size) + 1 {
            let e_hi = element_of_pair[pair_of(b, mask)];
            // all submasks of mask, including 0 and mask itself
            let mut sub = mask;
            loop {
                set_bit(&mut up[element_of_pair[pair_of(b, sub)]], e_hi);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & mask;
            }
        }
    }
    for k in 0..element_count {
        for x in 0..element_count {
            if bit(&up[x], k) && x != k {
                let (row_x, row_k) = two_rows(&mut up, x, k);
                for (a, b) in row_x.iter_mut().zip(row_k.iter()) {
                    *a |= *b;
                }
            }
        }
    }
    for x in 0..element_count {
        for y in x + 1..element_count {
            if bit(&up[x], y) && bit(&up[y], x) {
                return Err(LatticeDiagnostic::NotAPartialOrder { x: name(x), y: name(y) });
            }
        }
    }
    let mut down = vec![vec![0u64; words]; element_count];
    for (x, up_row) in up.iter().enumerate() {
        for (y, down_row) in down.iter_mut().enumerate() {
            if bit(up_row, y) {
                set_bit(down_row, x);
            }
        }
    }

    // orthocomplement on classes; the congruence closure above makes it
    // single-valued, so only structural defects remain to check
    let mut ortho = vec![usize::MAX; element_count];
    for p in 0..total {
        let e = element_of_pair[p];
        let o = element_of_pair[ortho_pair(p)];
        debug_assert!(ortho[e] == usize::MAX || ortho[e] == o);
        ortho[e] = o;
    }
    for e in 0..element_count {
        debug_assert_eq!(ortho[ortho[e]], e);
        if ortho[e] == e {
            return Err(LatticeDiagnostic::OrthoIllDefined { element: name(e) });
        }
    }
    for x in 0..element_count {
        for y in 0..element_count {
            if bit(&up[x], y) && !bit(&up[ortho[y]], ortho[x]) {
                return Err(LatticeDiagnostic::OrthoNotOrderReversing { x: name(x), y: name(y) });
            }
        }
    }

    // meets and joins: unique extremal common bounds, or a diagnostic
    let mut meet = vec![0usize; element_count * element_count];
    let mut join = vec![0usize; element_count * element_count];
    let mut cand = vec![0u64; words];
    for x in 0..element_count {
        for y in x..element_count {
            for (c, (dx, dy)) in cand.iter_mut().zip(down[x].iter().zip(&down[y])) {
                *c = dx & dy;
            }
            let m = unique_extremum(&cand, &up).map_err(|ties| {
                LatticeDiagnostic::NotALattice {
                    op: "meet",
                    x: name(x),
                    y: name(y),
                    candidates: ties.iter().map(|&e| name(e)).collect(),
                }
            })?;
            for (c, (ux, uy)) in cand.iter_mut().zip(up[x].iter().zip(&up[y])) {
                *c = ux & uy;
            }
            let j = unique_extremum(&cand, &down).map_err(|ties| {
                LatticeDiagnostic::NotALattice {
                    op: "join",
                    x: name(x),
                    y: name(y),
                    candidates: ties.iter().map(|&e| name(e)).collect(),
                }
            })?;
            meet[x * element_count + y] = m;
            meet[y * element_count + x] = m;
            join[x * element_count + y] = j;
            join[y * element_count + x] = j;
        }
    }

    for x in 0..element_count {
        if meet[x * element_count + ortho[x]] != zero || join[x * element_count + ortho[x]] != one
        {
            return Err(LatticeDiagnostic::OrthoLawFails { element: name(x) });
        }
    }

    for x in 0..element_count {
        for y in 0..element_count {
            if bit(&up[x], y) {
                let om = join[x * element_count + meet[ortho[x] * element_count + y]];
                if om != y {
                    return Err(LatticeDiagnostic::NotOrthomodular { x: name(x), y: name(y) });
                }
            }
        }
    }

    // minimal nonzero elements; they must be exactly the vertex atoms
    let atoms: Vec<usize> = (0..element_count)
        .filter(|&e| {
            e != zero && (0..element_count).all(|z| !bit(&down[e], z) || z == zero || z == e)
        })
        .collect();
    let mut vertex_atoms: Vec<usize> = atom_of_vertex.clone();
    vertex_atoms.sort_unstable();
    if atoms != vertex_atoms {
        return Err(LatticeDiagnostic::AtomSetMismatch);
    }

    Ok(OmlLattice {
        element_count,
        zero,
        one,
        ortho,
        up,
        down,
        meet,
        join,
        atoms,
        atom_of_vertex,
        names,
        reps,
    })
}

fn trivial_lattice() -> OmlLattice {
    OmlLattice {
        element_count: 1,
        zero: 0,
        one: 0,
        ortho: vec![0],
        up: vec![vec![1]],
        down: vec![vec![1]],
        meet: vec![0],
        join: vec![0],
        atoms: Vec::new(),
        atom_of_vertex: Vec::new(),
        names: vec!["0=1".to_string()],
        reps: vec![Vec::new()],
    }
}

fn full_mask(size: usize) -> u32 {
    (1u32 << size) - 1
}

fn element_names(
    d: &MmpDiagram,
    reps: &[Vec<(usize, u32)>],
    zero: usize,
    one: usize,
) -> Vec<String> {
    reps.iter()
        .enumerate()
        .map(|(e, pairs)| {
            if e == zero {
                return "0".to_string();
            }
            if e == one {
                return "1".to_string();
            }
            pairs
                .iter()
                .map(|&(b, mask)| {
                    let block = &d.blocks()[b];
                    let mut vs: Vec<usize> = (0..block.len())
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| block[i])
                        .collect();
                    vs.sort_unstable();
                    vs.iter().map(|&v| d.vertex_label(v)).collect::<String>()
                })
                .min()
                .expect("every class has a representative")
        })
        .collect()
}

/// The unique maximal (for meets) or minimal (for joins) element of the
/// candidate set, or the list of tied extremal elements on failure.
/// `toward` holds, per element, the bitset of elements on the far side of
/// it: `up` rows when seeking a maximum, `down` rows when seeking a
/// minimum.
fn unique_extremum(cand: &[u64], toward: &[Vec<u64>]) -> Result<usize, Vec<usize>> {
    let mut extremal = Vec::new();
    for (e, toward_row) in toward.iter().enumerate() {
        if !bit(cand, e) {
            continue;
        }
        // e is extremal when no other candidate lies strictly beyond it
        let beyond = toward_row
            .iter()
            .zip(cand)
            .enumerate()
            .any(|(w, (t, c))| {
                let mut others = t & c;
                if w == e >> 6 {
                    others &= !(1u64 << (e & 63));
                }
                others != 0
            });
        if !beyond {
            extremal.push(e);
        }
    }
    match extremal.as_slice() {
        [only] => Ok(*only),
        _ => Err(extremal),
    }
}

fn bit(words: &[u64], i: usize) -> bool {
    words[i >> 6] >> (i & 63) & 1 == 1
}

fn set_bit(words: &mut [u64], i: usize) {
    words[i >> 6] |= 1 << (i & 63);
}

/// Borrows two distinct rows mutably/immutably for the closure loop.
fn two_rows(rows: &mut [Vec<u64>], a: usize, b: usize) -> (&mut Vec<u64>, &Vec<u64>) {
    debug_assert_ne!(a, b);
    if a < b {
        let (lo, hi) = rows.split_at_mut(b);
        (&mut lo[a], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(a);
        (&mut hi[0], &lo[b])
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // attach the larger root id under the smaller so class
            // numbering stays deterministic
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
}

/// Exhaustive orthomodularity check, usable on fixtures as well as built
/// lattices. `None` means the law holds; otherwise the failing pair x ≤ y.
pub fn check_orthomodular(l: &OmlLattice) -> Option<(usize, usize)> {
    let n = l.element_count();
    for x in 0..n {
        for y in 0..n {
            if l.leq(x, y) && l.join(x, l.meet(l.ortho(x), y)) != y {
                return Some((x, y));
            }
        }
    }
    None
}

/// Outcome of the superposition check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperpositionReport {
    /// Distinct atoms a, b with no third atom below a ∨ b.
    pub missing_superposition: Option<(usize, usize)>,
    /// Atoms (a, b, c) with c ≤ a ∨ b but a not below b ∨ c.
    pub exchange_failure: Option<(usize, usize, usize)>,
}

impl SuperpositionReport {
    pub fn holds(&self) -> bool {
        self.missing_superposition.is_none() && self.exchange_failure.is_none()
    }
}

/// Checks the superposition principle on the lattice's atoms: every pair of
/// distinct atoms has a third atom below its join, and superposition is
/// exchangeable (c below a ∨ b forces a below b ∨ c).
pub fn check_superposition(l: &OmlLattice) -> SuperpositionReport {
    let atoms = l.atoms();
    let mut missing = None;
    let mut exchange = None;
    'outer: for &a in atoms {
        for &b in atoms {
            if a == b {
                continue;
            }
            let join = l.join(a, b);
            let mut found = false;
            for &c in atoms {
                if c == a || c == b {
                    continue;
                }
                if l.leq(c, join) {
                    found = true;
                    if exchange.is_none() && !l.leq(a, l.join(b, c)) {
                        exchange = Some((a, b, c));
                    }
                }
            }
            if !found {
                missing = Some((a, b));
                break 'outer;
            }
        }
    }
    SuperpositionReport { missing_superposition: missing, exchange_failure: exchange }
}

/// True when some chain 0 < a < b < c < 1 exists, i.e. the lattice has
/// three strictly ordered elements strictly between its bounds.
pub fn check_minimal_length(l: &OmlLattice) -> bool {
    let n = l.element_count();
    if l.zero() == l.one() {
        return false;
    }
    // longest-chain heights over the strict order, in order of down-set size
    let mut order: Vec<usize> = (0..n).collect();
    let downset_size =
        |e: usize| l.down[e].iter().map(|w| w.count_ones() as usize).sum::<usize>();
    order.sort_by_key(|&e| downset_size(e));
    let mut height = vec![0usize; n];
    for &e in &order {
        for z in 0..n {
            if z != e && l.leq(z, e) {
                height[e] = height[e].max(height[z] + 1);
            }
        }
    }
    height[l.one()] >= 4
}

/// Verdict of the quantum state-set condition evaluated on lattice
/// elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeQuantumVerdict {
    pub admits: bool,
    /// On failure, elements (a, b) with a not below b such that every
    /// state with m(a) = 1 also has m(b) = 1.
    pub failing_pair: Option<(usize, usize)>,
}

/// The quantum state-set condition over all lattice elements, for
/// comparison with the atom-level verdict in the states module: for every
/// ordered pair of elements with a not below b, some diagram state has
/// m(a) = 1 and m(b) < 1, where states extend to elements by summing any
/// representative subset (the pasting identifications make the sum
/// independent of the representative). Pairs led by an element no state
/// raises to 1 hold vacuously; a stateless diagram fails outright,
/// mirroring the atom-level convention.
pub fn admits_quantum_states_on_lattice(
    d: &MmpDiagram,
    l: &OmlLattice,
) -> LatticeQuantumVerdict {
    let n = d.vertex_count();
    let base = || {
        let mut lp = LinearProgram::new(n);
        for block in d.blocks() {
            lp.add_unit_eq(block, Rational::one());
        }
        lp
    };
    if base().feasible_point().is_none() {
        return LatticeQuantumVerdict { admits: false, failing_pair: None };
    }
    let rep: Vec<Vec<usize>> = (0..l.element_count())
        .map(|e| {
            l.element_vertex_sets(e, d)
                .into_iter()
                .next()
                .unwrap_or_default()
        })
        .collect();
    for (a, rep_a) in rep.iter().enumerate() {
        let mut lp = base();
        lp.add_unit_eq(rep_a, Rational::one());
        if lp.feasible_point().is_none() {
            continue; // no state reaches m(a) = 1: pairs from a are vacuous
        }
        for (b, rep_b) in rep.iter().enumerate() {
            if l.leq(a, b) {
                continue; // monotonicity makes these pairs unseparable and exempt
            }
            let mut objective = vec![Rational::zero(); n];
            for &v in rep_b {
                objective[v] = Rational::one();
            }
            match lp.minimize(&objective) {
                LpOutcome::Optimal { value, .. } => {
                    if value >= Rational::one() {
                        return LatticeQuantumVerdict { admits: false, failing_pair: Some((a, b)) };
                    }
                }
                outcome => unreachable!("bounded feasible system, got {outcome:?}"),
            }
        }
    }
    LatticeQuantumVerdict { admits: true, failing_pair: None }
}

/// Budget for exhaustive statement evaluation.
#[derive(Debug, Clone, Copy)]
pub struct EvalBudget {
    pub max_variables: usize,
    pub max_assignments: u128,
}

impl Default for EvalBudget {
    fn default() -> Self {
        EvalBudget { max_variables: 4, max_assignments: 100_000_000 }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("statement has {count} variables, over the budget of {max}")]
    TooManyVariables { count: usize, max: usize },
    #[error("evaluation needs {required} assignments, over the budget of {max}")]
    TooManyAssignments { required: u128, max: u128 },
}

/// Result of exhaustively evaluating a statement over all assignments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalOutcome {
    pub holds: bool,
    /// First failing assignment, as (variable, element) pairs.
    pub counterexample: Option<Vec<(String, usize)>>,
}

/// Evaluates a statement over every assignment of its variables to lattice
/// elements, under the default budget.
pub fn holds_in(l: &OmlLattice, s: &LatticeStatement) -> Result<EvalOutcome, EvalError> {
    holds_in_with(l, s, &EvalBudget::default())
}

/// As [`holds_in`], with an explicit budget. Exceeding the budget is an
/// error, never a sampled verdict.
pub fn holds_in_with(
    l: &OmlLattice,
    s: &LatticeStatement,
    budget: &EvalBudget,
) -> Result<EvalOutcome, EvalError> {
    let vars = s.variables();
    if vars.len() > budget.max_variables {
        return Err(EvalError::TooManyVariables {
            count: vars.len(),
            max: budget.max_variables,
        });
    }
    let n = l.element_count() as u128;
    let required = n.pow(vars.len() as u32);
    if required > budget.max_assignments {
        return Err(EvalError::TooManyAssignments {
            required,
            max: budget.max_assignments,
        });
    }
    let lhs = compile(&s.lhs, &vars);
    let rhs = compile(&s.rhs, &vars);
    let mut assignment = vec![0usize; vars.len()];
    loop {
        let a = eval(&lhs, l, &assignment);
        let b = eval(&rhs, l, &assignment);
        let ok = match s.relation {
            Relation::Equal => a == b,
            Relation::Leq => l.leq(a, b),
        };
        if !ok {
            let counterexample = vars
                .iter()
                .cloned()
                .zip(assignment.iter().copied())
                .collect();
            return Ok(EvalOutcome { holds: false, counterexample: Some(counterexample) });
        }
        // odometer over assignments
        let mut i = 0;
        loop {
            if i == assignment.len() {
                return Ok(EvalOutcome { holds: true, counterexample: None });
            }
            assignment[i] += 1;
            if assignment[i] < l.element_count() {
                break;
            }
            assignment[i] = 0;
            i += 1;
        }
    }
}

/// Term with variables resolved to assignment slots.
enum Compiled {
    Const(bool),
    Var(usize),
    Ortho(Box<Compiled>),
    Meet(Box<Compiled>, Box<Compiled>),
    Join(Box<Compiled>, Box<Compiled>),
}

fn compile(t: &LatticeTerm, vars: &[String]) -> Compiled {
    match t {
        LatticeTerm::Zero => Compiled::Const(false),
        LatticeTerm::One => Compiled::Const(true),
        LatticeTerm::Var(name) => {
            Compiled::Var(vars.binary_search(name).expect("variable collected"))
        }
        LatticeTerm::Ortho(x) => Compiled::Ortho(Box::new(compile(x, vars))),
        LatticeTerm::Meet(a, b) => {
            Compiled::Meet(Box::new(compile(a, vars)), Box::new(compile(b, vars)))
        }
        LatticeTerm::Join(a, b) => {
            Compiled::Join(Box::new(compile(a, vars)), Box::new(compile(b, vars)))
        }
    }
}

fn eval(c: &Compiled, l: &OmlLattice, assignment: &[usize]) -> usize {
    match c {
        Compiled::Const(false) => l.zero(),
        Compiled::Const(true) => l.one(),
        Compiled::Var(slot) => assignment[*slot],
        Compiled::Ortho(x) => l.ortho(eval(x, l, assignment)),
        Compiled::Meet(a, b) => l.meet(eval(a, l, assignment), eval(b, l, assignment)),
        Compiled::Join(a, b) => l.join(eval(a, l, assignment), eval(b, l, assignment)),
    }
}
