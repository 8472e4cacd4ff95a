use crate::gmodules::GModule;
use crate::integer::Integer;
use crate::zlattice::{constrained_kernel, constraints_into, FgAbelianGroup, IntMatrix, SparseMatrix, SparseRow, Subquotient};

use super::CohomologyError;

/// Cohomology of a cyclic group from its periodic resolution, with no
/// cochains: `H¹ = ker N / im(σ − 1)` and `H² = M^G / N·M`, where `σ` is the
/// smallest-index generator and `N = Σ σⁱ`.
pub fn cyclic_h_oracle(m: &GModule, degree: usize) -> Result<FgAbelianGroup, CohomologyError> {
    if !(1..=2).contains(&degree) {
        return Err(CohomologyError::DegreeCapped { degree });
    }
    let g = m.group();
    let sigma = g.cyclic_generator().ok_or(CohomologyError::NotCyclic)?;
    let r = m.rank();
    let mut norm = IntMatrix::zeros(r, r);
    for a in m.actions() {
        norm = norm.add(a);
    }
    let rels = m.underlying().relations().row_vecs();
    let rows = |mat: &IntMatrix| -> Vec<SparseRow> { SparseMatrix::from_dense(mat).row_iter().cloned().collect() };
    let (cycles, boundaries): (_, Vec<Vec<Integer>>) = if degree == 1 {
        let kernel = constrained_kernel(r, &constraints_into(m.underlying(), &rows(&norm)));
        let s1 = m.action(sigma).sub(&IntMatrix::identity(r));
        (kernel, s1.columns().into_iter().chain(rels).collect())
    } else {
        let s1 = m.action(sigma).sub(&IntMatrix::identity(r));
        let fixed = constrained_kernel(r, &constraints_into(m.underlying(), &rows(&s1)));
        (fixed, norm.columns().into_iter().chain(rels).collect())
    };
    Ok(Subquotient::new(cycles, boundaries)?.group().clone())
}
