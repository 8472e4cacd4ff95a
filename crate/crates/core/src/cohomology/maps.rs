use serde::Serialize;

use crate::gmodules::{GModule, ModuleMap, ShortExactSequence, Subgroup};
use crate::integer::Integer;
use crate::zlattice::{is_exact_at, CongruenceSolver, FgAbelianGroup, GroupHom, IntMatrix};

use super::compute::Cohomology;
use super::model::{map_blocks, CochainModel};
use super::CohomologyError;

/// The map `Hⁿ(A) → Hⁿ(B)` induced by an ambient module map, for two
/// groups computed in the same model and degree.
pub fn induced_map(source: &Cohomology, target: &Cohomology, matrix: &IntMatrix) -> Result<GroupHom, CohomologyError> {
    let blocks = source.blocks();
    let cols = source
        .generators()
        .iter()
        .map(|c| {
            let image = map_blocks(matrix, &c.representative, blocks);
            target
                .class_of(&image)
                .ok_or_else(|| CohomologyError::Inconsistent("image of a cocycle is not a cocycle".into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GroupHom::new(
        source.group().clone(),
        target.group().clone(),
        IntMatrix::from_columns(target.group().num_generators(), &cols),
    )?)
}

/// Result of a connecting-map computation.
#[derive(Clone, Debug)]
pub struct ConnectingMap {
    pub map: GroupHom,
    /// Whether a second choice of lifts gave the same classes.
    pub well_defined: bool,
}

/// `δ: Hⁿ(C) → Hⁿ⁺¹(A)` for `0 → A → B → C → 0`: lift a cocycle blockwise
/// along `project`, apply `δ_B`, and pull back along `inject`.
pub fn connecting_map(
    ses: &ShortExactSequence,
    hc: &Cohomology,
    ha_next: &Cohomology,
) -> Result<ConnectingMap, CohomologyError> {
    let (b, c) = (ses.b(), ses.c());
    let n = hc.degree();
    let lift = CongruenceSolver::new(ses.project().matrix(), c.underlying().relations());
    let pull = CongruenceSolver::new(ses.inject().matrix(), b.underlying().relations());
    let dirs = lift.kernel_directions();
    // degree-0 cochains are single blocks in every model, so δ is taken in
    // the model of the target
    let delta_b = ha_next.model().coboundary(b, n);
    let rc = c.rank();
    let blocks = hc.blocks();
    let class_for = |z: &[Integer], shift: bool| -> Result<Vec<Integer>, CohomologyError> {
        let mut lifted = Vec::with_capacity(blocks * b.rank());
        for blk in 0..blocks {
            let mut y = lift
                .solve(&z[blk * rc..(blk + 1) * rc])
                .ok_or_else(|| CohomologyError::Inconsistent("projection is not surjective".into()))?;
            if shift {
                for d in &dirs {
                    for (yi, di) in y.iter_mut().zip(d) {
                        *yi += di;
                    }
                }
            }
            lifted.extend(y);
        }
        let w = delta_b.apply(&lifted);
        let rb = b.rank();
        let mut pulled = Vec::new();
        for blk in 0..ha_next.blocks() {
            let slice = if rb == 0 { &[][..] } else { &w[blk * rb..(blk + 1) * rb] };
            let a = pull
                .solve(slice)
                .ok_or_else(|| CohomologyError::Inconsistent("coboundary of the lift is not in the image of A".into()))?;
            pulled.extend(a);
        }
        ha_next
            .class_of(&pulled)
            .ok_or_else(|| CohomologyError::Inconsistent("pulled-back cochain is not a cocycle".into()))
    };
    let mut cols = Vec::new();
    let mut well_defined = true;
    for g in hc.generators() {
        let first = class_for(&g.representative, false)?;
        let second = class_for(&g.representative, true)?;
        well_defined &= first == second;
        cols.push(first);
    }
    let map = GroupHom::new(
        hc.group().clone(),
        ha_next.group().clone(),
        IntMatrix::from_columns(ha_next.group().num_generators(), &cols),
    )?;
    Ok(ConnectingMap { map, well_defined })
}

/// `0 → H⁰A → H⁰B → H⁰C → H¹A → H¹B → H¹C → H²A` with exactness checks.
#[derive(Clone, Debug)]
pub struct SixTermSequence {
    /// `H⁰A, H⁰B, H⁰C, H¹A, H¹B, H¹C, H²A`.
    pub groups: Vec<FgAbelianGroup>,
    /// The six maps between consecutive groups.
    pub maps: Vec<GroupHom>,
    /// Exactness at `H⁰A` (injectivity) and at the five interior nodes.
    pub exact_at: Vec<(String, bool)>,
    pub connecting_well_defined: bool,
}

impl SixTermSequence {
    pub fn is_exact(&self) -> bool {
        self.exact_at.iter().all(|(_, ok)| *ok)
    }

    /// `δ¹: H¹C → H²A`.
    pub fn second_connecting_map(&self) -> &GroupHom {
        &self.maps[5]
    }
}

pub const SIX_TERM_NODES: [&str; 7] = ["H0(A)", "H0(B)", "H0(C)", "H1(A)", "H1(B)", "H1(C)", "H2(A)"];

pub fn six_term_sequence(ses: &ShortExactSequence) -> Result<SixTermSequence, CohomologyError> {
    let model = CochainModel::resolution(ses.b());
    let (a, b, c) = (ses.a(), ses.b(), ses.c());
    let h = |m: &GModule, n: usize| Cohomology::compute(m, n, model.clone());
    let (h0a, h0b, h0c) = (h(a, 0)?, h(b, 0)?, h(c, 0)?);
    let (h1a, h1b, h1c) = (h(a, 1)?, h(b, 1)?, h(c, 1)?);
    let h2a = h(a, 2)?;
    let inj = ses.inject().matrix();
    let proj = ses.project().matrix();
    let i0 = induced_map(&h0a, &h0b, inj)?;
    let p0 = induced_map(&h0b, &h0c, proj)?;
    let d0 = connecting_map(ses, &h0c, &h1a)?;
    let i1 = induced_map(&h1a, &h1b, inj)?;
    let p1 = induced_map(&h1b, &h1c, proj)?;
    let d1 = connecting_map(ses, &h1c, &h2a)?;
    let maps = vec![i0, p0, d0.map, i1, p1, d1.map];
    let mut exact_at = vec![(SIX_TERM_NODES[0].to_string(), maps[0].is_injective())];
    for k in 1..6 {
        exact_at.push((SIX_TERM_NODES[k].to_string(), is_exact_at(&maps[k - 1], &maps[k])));
    }
    let groups = [&h0a, &h0b, &h0c, &h1a, &h1b, &h1c, &h2a].iter().map(|x| x.group().clone()).collect();
    Ok(SixTermSequence { groups, maps, exact_at, connecting_well_defined: d0.well_defined && d1.well_defined })
}

/// Restriction `Hⁿ(G, M) → Hⁿ(H, M)` in the bar model, `n ∈ {1, 2}`.
pub fn restriction(m: &GModule, h: &Subgroup, degree: usize) -> Result<GroupHom, CohomologyError> {
    if !(1..=2).contains(&degree) {
        return Err(CohomologyError::DegreeCapped { degree });
    }
    let res_m = m.restrict(h)?;
    let hg = Cohomology::compute(m, degree, CochainModel::Bar)?;
    let hh = Cohomology::compute(&res_m, degree, CochainModel::Bar)?;
    let o = m.group().order();
    let r = m.rank();
    let elems = h.elements();
    let tuples: Vec<usize> = if degree == 1 {
        elems.to_vec()
    } else {
        elems.iter().flat_map(|&x| elems.iter().map(move |&y| x * o + y)).collect()
    };
    let cols = hg
        .generators()
        .iter()
        .map(|c| {
            let f: Vec<Integer> =
                tuples.iter().flat_map(|&t| c.representative[t * r..(t + 1) * r].iter().cloned()).collect();
            hh.class_of(&f)
                .ok_or_else(|| CohomologyError::Inconsistent("restricted cochain is not a cocycle".into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GroupHom::new(
        hg.group().clone(),
        hh.group().clone(),
        IntMatrix::from_columns(hh.group().num_generators(), &cols),
    )?)
}

/// Inflation `H¹(G/N, M^N) → H¹(G, M)` in the bar model.
pub fn inflation(m: &GModule, n: &Subgroup) -> Result<GroupHom, CohomologyError> {
    let q = n.quotient()?;
    let (fixed, incl) = m.invariants_under(n)?;
    let hq = Cohomology::compute(&fixed, 1, CochainModel::Bar)?;
    let hg = Cohomology::compute(m, 1, CochainModel::Bar)?;
    let k = fixed.rank();
    let cols = hq
        .generators()
        .iter()
        .map(|c| {
            let f: Vec<Integer> = (0..m.group().order())
                .flat_map(|g| {
                    let coset = q.project(g);
                    incl.apply(&c.representative[coset * k..(coset + 1) * k])
                })
                .collect();
            hg.class_of(&f)
                .ok_or_else(|| CohomologyError::Inconsistent("inflated cochain is not a cocycle".into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GroupHom::new(
        hq.group().clone(),
        hg.group().clone(),
        IntMatrix::from_columns(hg.group().num_generators(), &cols),
    )?)
}

/// `0 → H¹(G/N, M^N) → H¹(G, M) → H¹(N, M)`.
#[derive(Clone, Debug)]
pub struct InflationRestriction {
    pub inflation: GroupHom,
    pub restriction: GroupHom,
    pub inflation_injective: bool,
    pub exact_in_middle: bool,
    pub composite_zero: bool,
}

impl InflationRestriction {
    pub fn is_exact(&self) -> bool {
        self.inflation_injective && self.exact_in_middle && self.composite_zero
    }
}

pub fn inflation_restriction(m: &GModule, n: &Subgroup) -> Result<InflationRestriction, CohomologyError> {
    let inflation = inflation(m, n)?;
    let restriction = restriction(m, n, 1)?;
    let composite_zero = restriction.compose(&inflation)?.is_zero();
    Ok(InflationRestriction {
        inflation_injective: inflation.is_injective(),
        exact_in_middle: is_exact_at(&inflation, &restriction),
        composite_zero,
        inflation,
        restriction,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ShapiroCheck {
    pub h1_induced: FgAbelianGroup,
    pub h1_over_subgroup: FgAbelianGroup,
    pub isomorphic: bool,
}

/// `H¹(G, Ind_H^G M)` against `H¹(H, M)`.
pub fn shapiro_check(h: &Subgroup, m: &GModule) -> Result<ShapiroCheck, CohomologyError> {
    let ind = GModule::induced(h, m)?;
    let h1_induced = super::h1(&ind)?;
    let h1_over_subgroup = super::h1(m)?;
    let isomorphic = h1_induced == h1_over_subgroup;
    Ok(ShapiroCheck { h1_induced, h1_over_subgroup, isomorphic })
}

/// Map on `Hⁿ` induced by a verified module map, computed in the resolution
/// model.
pub fn map_on_cohomology(f: &ModuleMap, degree: usize) -> Result<GroupHom, CohomologyError> {
    let model = CochainModel::resolution(f.source());
    let hs = Cohomology::compute(f.source(), degree, model.clone())?;
    let ht = Cohomology::compute(f.target(), degree, model)?;
    induced_map(&hs, &ht, f.matrix())
}
