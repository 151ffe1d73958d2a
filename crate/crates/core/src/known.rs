//! Published Kochen-Specker configurations, usable as fixtures, regression
//! anchors, and starting points for experiments.

use crate::vectors::VectorSet;
use crate::Rational;

/// Seven-vertex, five-block diagram realizable by seven rays in dimension
/// five; the smallest known diagram of triples with no 0-1 state.
pub const KS_7_IN_5D_DIAGRAM: &str = "abc,cde,efa,egb,dgf.";

/// Cabello's eighteen-vector, nine-block configuration in dimension four:
/// eighteen vertices in blocks of four, no 0-1 state, quantum states exist.
pub const KS_18_IN_4D_DIAGRAM: &str = "abcd,defg,ghij,jklm,mnop,pqra,bikr,celn,fhoq.";

/// Ten-vertex, four-block diagram of quadruples with no 0-1 state — the
/// smallest such block count. Whether it is realizable by real vectors in
/// dimension four is an open question; treat it as a solver stress case,
/// not a known KS set.
pub const TEN_IN_4D_CANDIDATE_DIAGRAM: &str = "abcd,defg,ghia,bfij,cehj.";

/// The seven five-dimensional integer rays realizing
/// [`KS_7_IN_5D_DIAGRAM`]. Entries are large because they were produced by
/// a recursive solver, not chosen for looks; orthogonality is exact.
pub fn ks_7_in_5d_vectors() -> VectorSet {
    from_integer_rows(
        5,
        &[
            &[608683911, 17315878, -22061625, -111556858, 20961326],
            &[3, 68, -123, 52, 4],
            &[1, 3, 5, 7, 11],
            &[11, -11, 11, -11, 4],
            &[1788, -8663, -1348, 8223, -2420],
            &[
                5791304343,
                -304905182408,
                -1387655556967,
                1686769435032,
                7600253389432,
            ],
            &[1, 1, 1, 1, 0],
        ],
    )
}

/// Cabello's eighteen four-dimensional rays with entries in {-1, 0, 1},
/// realizing [`KS_18_IN_4D_DIAGRAM`].
pub fn ks_18_in_4d_vectors() -> VectorSet {
    from_integer_rows(
        4,
        &[
            &[1, 0, 0, -1],
            &[0, 1, 1, 0],
            &[1, 1, -1, 1],
            &[1, -1, 1, 1],
            &[1, 1, 1, -1],
            &[0, 1, 0, 1],
            &[1, 0, -1, 0],
            &[0, 1, 0, -1],
            &[1, -1, 1, -1],
            &[1, 1, 1, 1],
            &[1, 1, -1, -1],
            &[1, -1, 0, 0],
            &[0, 0, 1, -1],
            &[0, 0, 1, 1],
            &[1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[0, 0, 1, 0],
            &[1, 0, 0, 1],
        ],
    )
}

fn from_integer_rows(dimension: usize, rows: &[&[i64]]) -> VectorSet {
    let mut set = VectorSet::new(dimension).expect("fixture dimension is positive");
    for (vertex, row) in rows.iter().enumerate() {
        let vector = row
            .iter()
            .map(|&n| Rational::from_integer(n.into()))
            .collect();
        set.insert(vertex, vector).expect("fixture vectors are well-formed");
    }
    set
}
