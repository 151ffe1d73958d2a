//! Exact rational linear algebra for the realization solver: null-space
//! bases via Gaussian elimination over arbitrary-precision rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::Rational;

/// Basis of the null space { x : r · x = 0 for every row r }, as
/// content-reduced integer-entry vectors. An empty `rows` slice yields the
/// standard basis.
pub(crate) fn null_space_basis(rows: &[Vec<Rational>], dim: usize) -> Vec<Vec<Rational>> {
    debug_assert!(rows.iter().all(|r| r.len() == dim));
    let mut m: Vec<Vec<Rational>> = rows.to_vec();

    // reduced row echelon form, tracking pivot columns
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..dim {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].clone();
        for entry in &mut m[row] {
            *entry /= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let (pivot, target) = if r < row {
                    let (head, tail) = m.split_at_mut(row);
                    (&tail[0], &mut head[r])
                } else {
                    let (head, tail) = m.split_at_mut(r);
                    (&head[row], &mut tail[0])
                };
                for (t, p) in target[col..].iter_mut().zip(&pivot[col..]) {
                    *t -= &f * p;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }

    // one basis vector per free column: that coordinate 1, other free
    // coordinates 0, pivots solved from their rows
    let mut basis = Vec::with_capacity(dim - pivot_cols.len());
    for free in (0..dim).filter(|c| !pivot_cols.contains(c)) {
        let mut x = vec![Rational::zero(); dim];
        x[free] = Rational::one();
        for (r, &p) in pivot_cols.iter().enumerate() {
            x[p] = -m[r][free].clone();
        }
        reduce_content(&mut x);
        basis.push(x);
    }
    basis
}

/// Scales a nonzero rational vector to coprime integer entries, in place.
/// The direction is unchanged; this only keeps printed entries small.
pub(crate) fn reduce_content(v: &mut [Rational]) {
    let mut denom_lcm = BigInt::one();
    for r in v.iter() {
        denom_lcm = denom_lcm.lcm(r.denom());
    }
    let mut numer_gcd = BigInt::zero();
    for r in v.iter() {
        numer_gcd = numer_gcd.gcd(&(r.numer() * &denom_lcm / r.denom()));
    }
    if numer_gcd.is_zero() {
        return;
    }
    let scale = Rational::new(denom_lcm, numer_gcd);
    for r in v.iter_mut() {
        *r *= &scale;
    }
}

/// Exact inner product.
pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
