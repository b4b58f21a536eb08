use std::collections::HashMap;

use crate::algebra::{monomial_basis, Monomial, MultiDegree};
use crate::linmat::{LinMatrix, SparseIntMatrix};
use crate::Result;

/// Position of each monomial in a basis.
pub(crate) fn basis_index(basis: &[Monomial]) -> HashMap<&Monomial, usize> {
    basis.iter().enumerate().map(|(i, m)| (m, i)).collect()
}

/// Matrix of `H^0(O(t))^cols -> H^0(O(t + e))^rows` induced by `m`, in the
/// monomial bases. Column `c * h0(t) + i` is the `i`-th basis monomial in
/// summand `c`; rows are indexed the same way on the target.
///
/// Coefficients must be integers; over `GF(p)` the stored representatives
/// are used.
pub fn global_sections_map(m: &LinMatrix, twist: &MultiDegree) -> Result<SparseIntMatrix> {
    let space = m.space();
    space.check_degree(twist)?;
    let src = monomial_basis(space, twist);
    let dst = monomial_basis(space, &twist.add(m.entry_degree()));
    let dst_idx = basis_index(&dst);
    let mut out = SparseIntMatrix::new(m.rows() * dst.len(), m.cols() * src.len());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let terms = m.get(r, c).integer_coefficients()?;
            for (i, s) in src.iter().enumerate() {
                for (mono, v) in &terms {
                    let j = dst_idx[&s.mul(mono)];
                    out.push(r * dst.len() + j, c * src.len() + i, *v);
                }
            }
        }
    }
    Ok(out)
}
