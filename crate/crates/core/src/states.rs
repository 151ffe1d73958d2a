//! State admissibility on MMP diagrams.
//!
//! Three nested questions about a diagram, in decreasing strength:
//!
//! * classical 0-1 states: an assignment of 0/1 to vertices with exactly one
//!   1 per block — no two orthogonal atoms both 1, no block all 0. Diagrams
//!   without such a state are the combinatorial core of Kochen-Specker sets.
//! * probabilistic states: rational values in [0, 1] with every block
//!   summing to exactly 1.
//! * quantum state sets: for every ordered pair of distinct vertices (a, b)
//!   some state has m(a) = 1 and m(b) < 1, so that states separate atoms.
//!
//! The 0-1 search is complete backtracking with unit propagation; the other
//! two reduce to exact rational linear programs, so every verdict here is a
//! certificate rather than a numerical guess.

use num_traits::{One, Zero};

use crate::diagram::MmpDiagram;
use crate::simplex::{LinearProgram, LpOutcome};
use crate::Rational;

/// A classical 0-1 state: exactly one vertex per block carries the value 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZeroOneState {
    values: Vec<bool>,
}

impl ZeroOneState {
    /// The value of a vertex, as a boolean (true = 1).
    pub fn value(&self, v: usize) -> bool {
        self.values[v]
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    /// Checks the exactly-one-per-block rule against a diagram.
    pub fn satisfies(&self, d: &MmpDiagram) -> bool {
        self.values.len() == d.vertex_count()
            && d.blocks()
                .iter()
                .all(|b| b.iter().filter(|&&v| self.values[v]).count() == 1)
    }

    /// The same state viewed as a probabilistic one (values 0 and 1).
    pub fn to_probabilistic(&self) -> ProbabilisticState {
        ProbabilisticState {
            values: self
                .values
                .iter()
                .map(|&b| if b { Rational::one() } else { Rational::zero() })
                .collect(),
        }
    }
}

/// A probabilistic state: exact rational values with unit block sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbabilisticState {
    values: Vec<Rational>,
}

impl ProbabilisticState {
    pub fn value(&self, v: usize) -> &Rational {
        &self.values[v]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Checks nonnegativity and exact unit block sums against a diagram.
    pub fn satisfies(&self, d: &MmpDiagram) -> bool {
        self.values.len() == d.vertex_count()
            && self.values.iter().all(|x| *x >= Rational::zero())
            && d.blocks().iter().all(|b| {
                b.iter().map(|&v| &self.values[v]).sum::<Rational>() == Rational::one()
            })
    }

    /// Reinterprets as a 0-1 state when every value is 0 or 1.
    pub fn as_zero_one(&self) -> Option<ZeroOneState> {
        let values = self
            .values
            .iter()
            .map(|x| {
                if x.is_one() {
                    Some(true)
                } else if x.is_zero() {
                    Some(false)
                } else {
                    None
                }
            })
            .collect::<Option<Vec<bool>>>()?;
        Some(ZeroOneState { values })
    }
}

/// Searches for a 0-1 state; `Some` carries a witness satisfying the
/// exactly-one-per-block rule, `None` certifies that the complete
/// backtracking search exhausted every assignment.
pub fn admits_01_state(d: &MmpDiagram) -> Option<ZeroOneState> {
    let mut found = None;
    for_each_01_state(d, |s| {
        found = Some(s.clone());
        false
    });
    found
}

/// All distinct 0-1 states of a diagram, truncated at `limit`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub states: Vec<ZeroOneState>,
    /// True when more states exist beyond `states`.
    pub truncated: bool,
}

/// Enumerates 0-1 states in a deterministic order, stopping once `limit`
/// states are collected and one more is known to exist.
pub fn enumerate_01_states(d: &MmpDiagram, limit: usize) -> Enumeration {
    let mut states = Vec::new();
    let mut truncated = false;
    for_each_01_state(d, |s| {
        if states.len() == limit {
            truncated = true;
            return false;
        }
        states.push(s.clone());
        true
    });
    Enumeration { states, truncated }
}

/// Complete backtracking over 0-1 assignments with unit propagation: a block
/// containing a 1 forces its other vertices to 0; a block with all but one
/// vertex at 0 forces the last to 1. The callback returns whether to keep
/// searching. Vertices outside every block (invalid diagrams) are pinned
/// to 0 rather than doubling the count meaninglessly.
fn for_each_01_state(d: &MmpDiagram, mut visit: impl FnMut(&ZeroOneState) -> bool) {
    let n = d.vertex_count();
    let mut covered = vec![false; n];
    for block in d.blocks() {
        for &v in block {
            covered[v] = true;
        }
    }
    let values: Vec<Option<bool>> = covered
        .into_iter()
        .map(|c| if c { None } else { Some(false) })
        .collect();
    let search = SearchCtx { d };
    search.descend(values, &mut visit);
}

struct SearchCtx<'a> {
    d: &'a MmpDiagram,
}

impl SearchCtx<'_> {
    /// Runs propagation to fixpoint; returns false on contradiction.
    fn propagate(&self, values: &mut [Option<bool>]) -> bool {
        loop {
            let mut changed = false;
            for block in self.d.blocks() {
                let ones = block.iter().filter(|&&v| values[v] == Some(true)).count();
                let free: Vec<usize> =
                    block.iter().copied().filter(|&v| values[v].is_none()).collect();
                match ones {
                    0 if free.is_empty() => return false,
                    0 if free.len() == 1 => {
                        values[free[0]] = Some(true);
                        changed = true;
                    }
                    1 => {
                        for v in free {
                            values[v] = Some(false);
                            changed = true;
                        }
                    }
                    0 => {}
                    _ => return false,
                }
            }
            if !changed {
                return true;
            }
        }
    }

    /// Returns false when the visitor asked to stop.
    fn descend(&self, mut values: Vec<Option<bool>>, visit: &mut impl FnMut(&ZeroOneState) -> bool) -> bool {
        if !self.propagate(&mut values) {
            return true;
        }
        match values.iter().position(Option::is_none) {
            None => {
                let state = ZeroOneState {
                    values: values.iter().map(|v| v.unwrap()).collect(),
                };
                debug_assert!(state.satisfies(self.d));
                visit(&state)
            }
            Some(v) => {
                for val in [true, false] {
                    let mut child = values.clone();
                    child[v] = Some(val);
                    if !self.descend(child, visit) {
                        return false;
                    }
                }
                true
            }
        }
    }
}

/// Block-sum equalities of a diagram as a linear program over one
/// nonnegative variable per vertex. Unit block sums and nonnegativity
/// already confine every covered vertex to [0, 1].
fn block_sum_program(d: &MmpDiagram) -> LinearProgram {
    let mut lp = LinearProgram::new(d.vertex_count());
    for block in d.blocks() {
        lp.add_unit_eq(block, Rational::one());
    }
    lp
}

/// Exact feasibility of the probabilistic-state system; `Some` is a
/// concrete rational state, `None` an exact infeasibility verdict.
pub fn admits_state(d: &MmpDiagram) -> Option<ProbabilisticState> {
    let values = block_sum_program(d).feasible_point()?;
    let state = ProbabilisticState { values };
    debug_assert!(state.satisfies(d));
    Some(state)
}

/// Outcome of the quantum state-set condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumVerdict {
    /// True when every ordered pair of distinct vertices (a, b) has a state
    /// with m(a) = 1 and m(b) < 1.
    pub admits: bool,
    /// On failure, a pair (a, b) for which every state with m(a) = 1 also
    /// has m(b) = 1.
    pub failing_pair: Option<(usize, usize)>,
    /// Vertices a for which no state reaches m(a) = 1 at all; pairs led by
    /// such a vertex hold vacuously and are worth flagging.
    pub unreachable_atoms: Vec<usize>,
}

/// Decides the quantum state-set condition exactly: for each ordered pair
/// (a, b) of distinct vertices, minimize m(b) over states with m(a) = 1 and
/// demand a minimum strictly below 1. A diagram with no states at all is
/// reported as not admitting quantum states (rather than vacuously passing),
/// keeping this verdict at least as strong as plain state existence.
pub fn admits_quantum_states(d: &MmpDiagram) -> QuantumVerdict {
    let n = d.vertex_count();
    if admits_state(d).is_none() {
        return QuantumVerdict {
            admits: false,
            failing_pair: None,
            unreachable_atoms: (0..n).collect(),
        };
    }
    let mut unreachable = Vec::new();
    let mut failing = None;
    'outer: for a in 0..n {
        let mut lp = block_sum_program(d);
        lp.add_unit_eq(&[a], Rational::one());
        if lp.feasible_point().is_none() {
            unreachable.push(a);
            continue;
        }
        for b in 0..n {
            if b == a {
                continue;
            }
            let mut objective = vec![Rational::zero(); n];
            objective[b] = Rational::one();
            match lp.minimize(&objective) {
                LpOutcome::Optimal { value, .. } => {
                    if value >= Rational::one() {
                        failing = Some((a, b));
                        break 'outer;
                    }
                }
                outcome => unreachable!("bounded feasible system, got {outcome:?}"),
            }
        }
    }
    QuantumVerdict {
        admits: failing.is_none(),
        failing_pair: failing,
        unreachable_atoms: unreachable,
    }
}

/// The three admissibility checks bundled, with witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateClassification {
    pub admits_any_state: bool,
    pub admits_01_state: bool,
    pub admits_quantum_states: bool,
    /// Some vertex is never assigned probability 1 by any state.
    pub has_unreachable_atoms: bool,
    pub zero_one_witness: Option<ZeroOneState>,
    pub state_witness: Option<ProbabilisticState>,
    pub quantum_failing_pair: Option<(usize, usize)>,
}

/// Runs all three checks. The bundle is internally consistent: a 0-1 state
/// or a quantum verdict of true each imply state existence.
pub fn classify_state_space(d: &MmpDiagram) -> StateClassification {
    let state_witness = admits_state(d);
    let zero_one_witness = admits_01_state(d);
    let quantum = admits_quantum_states(d);
    StateClassification {
        admits_any_state: state_witness.is_some(),
        admits_01_state: zero_one_witness.is_some(),
        admits_quantum_states: quantum.admits,
        has_unreachable_atoms: !quantum.unreachable_atoms.is_empty(),
        zero_one_witness,
        state_witness,
        quantum_failing_pair: quantum.failing_pair,
    }
}
