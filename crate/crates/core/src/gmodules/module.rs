use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::integer::Integer;
use crate::zlattice::{
    constrained_kernel, constraints_into, FgAbelianGroup, IntMatrix, Lattice, SparseMatrix, SparseRow, Subquotient,
};

use super::group::{FiniteGroup, Subgroup};
use super::GModuleError;

/// A finite group acting by integer matrices on `Z^r / ⟨relations⟩`.
///
/// `action[g]` acts on ambient column vectors. The action laws are checked
/// modulo the relation lattice when the module is built.
#[derive(Clone)]
pub struct GModule {
    group: Arc<FiniteGroup>,
    underlying: FgAbelianGroup,
    action: Vec<IntMatrix>,
    uniquely_divisible: bool,
}

#[derive(Serialize, Deserialize)]
struct ModuleJson {
    ambient_rank: usize,
    #[serde(default)]
    relations: Vec<Vec<Integer>>,
    action: BTreeMap<String, Vec<Vec<Integer>>>,
}

impl GModule {
    pub fn new(
        group: Arc<FiniteGroup>,
        underlying: FgAbelianGroup,
        action: Vec<IntMatrix>,
    ) -> Result<Self, GModuleError> {
        let module = GModule { group, underlying, action, uniquely_divisible: false };
        module.verify()?;
        Ok(module)
    }

    /// Builds without checking the action laws; for constructions that are
    /// correct by design and too large to re-verify cheaply.
    pub(crate) fn new_unchecked(group: Arc<FiniteGroup>, underlying: FgAbelianGroup, action: Vec<IntMatrix>) -> Self {
        GModule { group, underlying, action, uniquely_divisible: false }
    }

    fn verify(&self) -> Result<(), GModuleError> {
        let n = self.group.order();
        let r = self.underlying.ambient_rank();
        if self.action.len() != n {
            return Err(GModuleError::DimensionMismatch { expected: n, found: self.action.len() });
        }
        if let Some(a) = self.action.iter().find(|a| a.rows() != r || a.cols() != r) {
            return Err(GModuleError::DimensionMismatch { expected: r, found: a.rows().max(a.cols()) });
        }
        let m = &self.underlying;
        let zero_mod_r = |mat: &IntMatrix| (0..mat.cols()).all(|j| m.is_zero_element(&mat.column(j)));
        if !zero_mod_r(&self.action[0].sub(&IntMatrix::identity(r))) {
            return Err(GModuleError::IdentityActsNontrivially);
        }
        let rel = m.relations().transpose();
        for (g, a) in self.action.iter().enumerate() {
            if rel.cols() > 0 && !zero_mod_r(&a.mul(&rel)) {
                return Err(GModuleError::RelationsNotPreserved { g });
            }
        }
        for g in 0..n {
            for h in 0..n {
                let lhs = self.action[g].mul(&self.action[h]);
                if !zero_mod_r(&lhs.sub(&self.action[self.group.mul(g, h)])) {
                    return Err(GModuleError::ActionNotHomomorphic { g, h });
                }
            }
        }
        Ok(())
    }

    /// Parses the module schema against an already-built group. The
    /// identity's action may be omitted.
    pub fn from_json(group: Arc<FiniteGroup>, json: &str) -> Result<Self, GModuleError> {
        let parsed: ModuleJson = serde_json::from_str(json).map_err(GModuleError::from_json)?;
        let r = parsed.ambient_rank;
        let to_matrix = |rows: &[Vec<Integer>], what: &str| -> Result<IntMatrix, GModuleError> {
            if let Some(row) = rows.iter().find(|row| row.len() != r) {
                return Err(GModuleError::Schema(format!("{what}: row of length {} in rank {r}", row.len())));
            }
            Ok(IntMatrix::from_rows(r, rows.to_vec()))
        };
        let relations = to_matrix(&parsed.relations, "relations")?;
        let mut action = vec![None; group.order()];
        for (key, rows) in &parsed.action {
            let g: usize = key
                .parse()
                .ok()
                .filter(|&g| g < group.order())
                .ok_or_else(|| GModuleError::Schema(format!("action key {key:?} is not an element index")))?;
            if rows.len() != r {
                return Err(GModuleError::Schema(format!("action {key}: {} rows in rank {r}", rows.len())));
            }
            action[g] = Some(to_matrix(rows, &format!("action {key}"))?);
        }
        if action[0].is_none() {
            action[0] = Some(IntMatrix::identity(r));
        }
        let action = action
            .into_iter()
            .enumerate()
            .map(|(g, a)| a.ok_or_else(|| GModuleError::Schema(format!("missing action for element {g}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let underlying = FgAbelianGroup::from_relations(r, relations)?;
        GModule::new(group, underlying, action)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let action = self
            .action
            .iter()
            .enumerate()
            .map(|(g, a)| (g.to_string(), a.row_vecs()))
            .collect();
        let json = ModuleJson {
            ambient_rank: self.rank(),
            relations: self.underlying.relations().row_vecs(),
            action,
        };
        serde_json::to_value(json).expect("plain data")
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn underlying(&self) -> &FgAbelianGroup {
        &self.underlying
    }

    pub fn rank(&self) -> usize {
        self.underlying.ambient_rank()
    }

    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    pub fn actions(&self) -> &[IntMatrix] {
        &self.action
    }

    /// Marks the module as standing for a uniquely divisible group (a
    /// Q-vector space), which is a caller assertion, not something checked.
    pub fn flag_uniquely_divisible(mut self) -> Self {
        self.uniquely_divisible = true;
        self
    }

    pub fn is_uniquely_divisible(&self) -> bool {
        self.uniquely_divisible
    }

    pub fn is_trivial_action(&self) -> bool {
        let id = IntMatrix::identity(self.rank());
        self.action.iter().all(|a| {
            let d = a.sub(&id);
            (0..d.cols()).all(|j| self.underlying.is_zero_element(&d.column(j)))
        })
    }

    /// Lattice `{x : g·x ≡ x (mod relations) for all g}`; generators suffice.
    pub fn fixed_lattice(&self) -> Lattice {
        self.fixed_lattice_under(self.group.generators())
    }

    pub(crate) fn fixed_lattice_under(&self, elements: &[usize]) -> Lattice {
        let r = self.rank();
        let id = IntMatrix::identity(r);
        let mut constraints = Vec::new();
        for &g in elements {
            let d = self.action[g].sub(&id);
            let rows: Vec<SparseRow> = SparseMatrix::from_dense(&d).row_iter().cloned().collect();
            constraints.extend(constraints_into(&self.underlying, &rows));
        }
        constrained_kernel(r, &constraints)
    }

    /// `M^G`.
    pub fn fixed_points(&self) -> FgAbelianGroup {
        Subquotient::new(self.fixed_lattice(), self.underlying.relations().row_vecs())
            .expect("relations are fixed")
            .group()
            .clone()
    }

    /// The same underlying group with the action restricted to `h`.
    pub fn restrict(&self, h: &Subgroup) -> Result<GModule, GModuleError> {
        if !h.parent().same_table(&self.group) {
            return Err(GModuleError::GroupMismatch);
        }
        let action = h.elements().iter().map(|&g| self.action[g].clone()).collect();
        Ok(GModule {
            group: h.as_group().clone(),
            underlying: self.underlying.clone(),
            action,
            uniquely_divisible: self.uniquely_divisible,
        })
    }

    /// `M^N` as a module over `G/N`, with the inclusion `M^N → M` on ambient
    /// coordinates (an `r × k` matrix).
    pub fn invariants_under(&self, n: &Subgroup) -> Result<(GModule, IntMatrix), GModuleError> {
        if !n.parent().same_table(&self.group) {
            return Err(GModuleError::GroupMismatch);
        }
        let q = n.quotient()?;
        let fixed = self.fixed_lattice_under(n.elements());
        let k = fixed.rank();
        let basis = fixed.basis().to_vec();
        let coords = |v: &[Integer]| fixed.coordinates(v).expect("fixed lattice is stable");
        let rel_rows: Vec<Vec<Integer>> = self.underlying.relations().row_vecs().iter().map(|v| coords(v)).collect();
        let underlying = FgAbelianGroup::from_relations(k, IntMatrix::from_rows(k, rel_rows))?;
        let action = (0..q.group().order())
            .map(|c| {
                let a = &self.action[q.representative(c)];
                let cols: Vec<Vec<Integer>> = basis.iter().map(|b| coords(&a.apply(b))).collect();
                IntMatrix::from_columns(k, &cols)
            })
            .collect();
        let module = GModule::new(q.group().clone(), underlying, action)?;
        Ok((module, IntMatrix::from_columns(self.rank(), &basis)))
    }

    // ---- constructions ----

    pub fn trivial(group: &Arc<FiniteGroup>, m: FgAbelianGroup) -> GModule {
        let r = m.ambient_rank();
        GModule::new_unchecked(group.clone(), m, vec![IntMatrix::identity(r); group.order()])
    }

    /// `ZG` with `g·e_h = e_{gh}`.
    pub fn regular(group: &Arc<FiniteGroup>) -> GModule {
        let n = group.order();
        let action = (0..n)
            .map(|g| {
                let mut a = IntMatrix::zeros(n, n);
                for h in 0..n {
                    a.set(group.mul(g, h), h, Integer::ONE);
                }
                a
            })
            .collect();
        GModule::new_unchecked(group.clone(), FgAbelianGroup::free(n), action)
    }

    /// `Z` with the nontrivial element of `C2` acting by −1.
    pub fn negation_lattice(n: usize) -> Result<GModule, GModuleError> {
        if n != 2 {
            return Err(GModuleError::Unsupported(format!("negation lattice of order {n}; only 2 is supported")));
        }
        let c2 = Arc::new(FiniteGroup::cyclic(2)?);
        let action = vec![IntMatrix::scalar(1, 1), IntMatrix::scalar(1, -1)];
        Ok(GModule::new_unchecked(c2, FgAbelianGroup::free(1), action))
    }

    /// `Ind_H^G M = ZG ⊗_{ZH} M` on `[G:H]` copies of `M`, the copies indexed
    /// by left cosets `g_j H` with `g_j` the smallest element of its coset.
    pub fn induced(h: &Subgroup, m: &GModule) -> Result<GModule, GModuleError> {
        if !h.as_group().same_table(&m.group) {
            return Err(GModuleError::GroupMismatch);
        }
        let g = h.parent();
        let reps = h.left_coset_reps();
        let k = reps.len();
        let r = m.rank();
        let rels = m.underlying.relations();
        let mut rel_rows = Vec::new();
        for j in 0..k {
            for row in rels.row_vecs() {
                let mut v = vec![Integer::ZERO; k * r];
                v[j * r..(j + 1) * r].clone_from_slice(&row);
                rel_rows.push(v);
            }
        }
        let underlying = FgAbelianGroup::from_relations(k * r, IntMatrix::from_rows(k * r, rel_rows))?;
        let action = (0..g.order())
            .map(|x| {
                let mut a = IntMatrix::zeros(k * r, k * r);
                for (j, &gj) in reps.iter().enumerate() {
                    let (jp, hh) = h.left_coset_decompose(&reps, g.mul(x, gj));
                    let block = &m.action[h.local_index(hh).expect("in subgroup")];
                    for s in 0..r {
                        for t in 0..r {
                            a.set(jp * r + s, j * r + t, block.get(s, t).clone());
                        }
                    }
                }
                a
            })
            .collect();
        Ok(GModule::new_unchecked(g.clone(), underlying, action))
    }

    pub fn direct_sum(ms: &[GModule]) -> Result<GModule, GModuleError> {
        let group = ms.first().ok_or(GModuleError::EmptySum)?.group.clone();
        if ms.iter().any(|m| !m.group.same_table(&group)) {
            return Err(GModuleError::GroupMismatch);
        }
        let total: usize = ms.iter().map(GModule::rank).sum();
        let mut rel_rows = Vec::new();
        let mut offset = 0;
        for m in ms {
            for row in m.underlying.relations().row_vecs() {
                let mut v = vec![Integer::ZERO; total];
                v[offset..offset + m.rank()].clone_from_slice(&row);
                rel_rows.push(v);
            }
            offset += m.rank();
        }
        let underlying = FgAbelianGroup::from_relations(total, IntMatrix::from_rows(total, rel_rows))?;
        let action = (0..group.order())
            .map(|g| IntMatrix::block_diagonal(&ms.iter().map(|m| &m.action[g]).collect::<Vec<_>>()))
            .collect();
        let mut sum = GModule::new_unchecked(group, underlying, action);
        sum.uniquely_divisible = ms.iter().all(|m| m.uniquely_divisible);
        Ok(sum)
    }

    /// The zero module over `group`.
    pub fn zero(group: &Arc<FiniteGroup>) -> GModule {
        GModule::trivial(group, FgAbelianGroup::trivial())
    }
}

impl fmt::Debug for GModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GModule(group {}, underlying {})", self.group, self.underlying)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(name: &str) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::builtin(name).unwrap())
    }

    #[test]
    fn regular_c2_swaps() {
        let m = GModule::regular(&group("C2"));
        assert_eq!(m.action(1), &IntMatrix::from_i64_rows(2, &[vec![0, 1], vec![1, 0]]));
        assert_eq!(m.fixed_points(), FgAbelianGroup::free(1));
        assert!(GModule::new(m.group().clone(), m.underlying().clone(), m.actions().to_vec()).is_ok());
    }

    #[test]
    fn fixed_points_of_basic_modules() {
        let neg = GModule::negation_lattice(2).unwrap();
        assert!(neg.fixed_points().is_trivial());
        let s3 = group("S3");
        let z4 = GModule::trivial(&s3, FgAbelianGroup::cyclic(4));
        assert_eq!(z4.fixed_points(), FgAbelianGroup::cyclic(4));
        assert!(GModule::zero(&s3).fixed_points().is_trivial());
        assert!(GModule::negation_lattice(3).is_err());
    }

    #[test]
    fn bad_actions_are_rejected() {
        let c2 = group("C2");
        let bad = GModule::new(c2.clone(), FgAbelianGroup::free(1), vec![IntMatrix::scalar(1, 1), IntMatrix::scalar(1, 2)]);
        assert!(matches!(bad, Err(GModuleError::ActionNotHomomorphic { g: 1, h: 1 })));
        // on Z/3, multiplication by 2 is an involution
        let ok = GModule::new(c2.clone(), FgAbelianGroup::cyclic(3), vec![IntMatrix::scalar(1, 1), IntMatrix::scalar(1, 2)]);
        assert!(ok.is_ok());
        let z2 = FgAbelianGroup::from_relations(2, IntMatrix::from_i64_rows(2, &[vec![2, 0]])).unwrap();
        let shear = IntMatrix::from_i64_rows(2, &[vec![1, 0], vec![1, 1]]);
        let bad = GModule::new(c2, z2, vec![IntMatrix::identity(2), shear]);
        assert!(matches!(bad, Err(GModuleError::RelationsNotPreserved { g: 1 })));
    }

    #[test]
    fn induced_from_trivial_subgroup_is_regular() {
        let c2 = group("C2");
        let h = Subgroup::trivial(&c2);
        let m = GModule::trivial(h.as_group(), FgAbelianGroup::free(1));
        let ind = GModule::induced(&h, &m).unwrap();
        assert_eq!(ind.actions(), GModule::regular(&c2).actions());
    }

    #[test]
    fn induced_c4_from_c2() {
        let c4 = group("C4");
        let h = Subgroup::new(&c4, &[0, 2]).unwrap();
        let m = GModule::trivial(h.as_group(), FgAbelianGroup::cyclic(2));
        let ind = GModule::induced(&h, &m).unwrap();
        assert!(GModule::new(ind.group().clone(), ind.underlying().clone(), ind.actions().to_vec()).is_ok());
        assert_eq!(ind.underlying(), &FgAbelianGroup::cyclic(2).direct_sum(&FgAbelianGroup::cyclic(2)));
        assert_eq!(ind.action(1), &IntMatrix::from_i64_rows(2, &[vec![0, 1], vec![1, 0]]));
    }

    #[test]
    fn induced_from_whole_group_is_same_module() {
        let s3 = group("S3");
        let whole = Subgroup::whole(&s3);
        let m = GModule::regular(whole.as_group());
        let ind = GModule::induced(&whole, &m).unwrap();
        assert_eq!(ind.actions(), m.actions());
    }

    #[test]
    fn json_round_trip() {
        let c2 = group("C2");
        let m = GModule::from_json(c2.clone(), r#"{"ambient_rank":1,"action":{"1":[[-1]]}}"#).unwrap();
        assert_eq!(m.action(1), &IntMatrix::scalar(1, -1));
        let back = GModule::from_json(c2.clone(), &m.to_json().to_string()).unwrap();
        assert_eq!(back.actions(), m.actions());
        assert!(GModule::from_json(c2.clone(), r#"{"ambient_rank":1,"action":{}}"#).is_err());
        assert!(GModule::from_json(c2, r#"{"ambient_rank":1,"action":{"7":[[1]]}}"#).is_err());
    }

    #[test]
    fn invariants_module_over_quotient() {
        let c4 = group("C4");
        // C4 acts on Z² by the rotation; the subgroup {0,2} acts by −1
        let rot = IntMatrix::from_i64_rows(2, &[vec![0, -1], vec![1, 0]]);
        let mut action = vec![IntMatrix::identity(2)];
        for _ in 1..4 {
            let next = rot.mul(action.last().unwrap());
            action.push(next);
        }
        let m = GModule::new(c4.clone(), FgAbelianGroup::free(2), action).unwrap();
        let n = Subgroup::new(&c4, &[0, 2]).unwrap();
        let (inv, incl) = m.invariants_under(&n).unwrap();
        assert!(inv.underlying().is_trivial());
        assert_eq!(incl.cols(), 0);
    }
}
