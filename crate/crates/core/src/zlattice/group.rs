use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::integer::Integer;

use super::lattice::Lattice;
use super::matrix::IntMatrix;
use super::smith::smith_right_only;
use super::ZLatticeError;

/// A finitely generated abelian group `Z^ambient_rank / ⟨relations⟩`.
///
/// Construction runs a Smith normal form of the relation matrix and caches
/// the invariant factors together with the change of basis to canonical
/// coordinates. In canonical coordinates an element is a vector
/// `(t₁, …, t_k, f₁, …, f_free)` with `tᵢ` reduced modulo `dᵢ`; two ambient
/// vectors represent the same element iff their canonical coordinates agree.
#[derive(Clone)]
pub struct FgAbelianGroup {
    ambient_rank: usize,
    relations: IntMatrix,
    invariant_factors: Vec<Integer>,
    free_rank: usize,
    canonical: Arc<CanonicalBasis>,
}

#[derive(Debug)]
struct CanonicalBasis {
    /// Rows are the linear forms giving each canonical coordinate.
    to_canonical: IntMatrix,
    /// Columns are ambient representatives of the canonical generators.
    from_canonical: IntMatrix,
}

impl FgAbelianGroup {
    /// Presents `Z^ambient_rank` modulo the row span of `relations`.
    pub fn from_relations(ambient_rank: usize, relations: IntMatrix) -> Result<Self, ZLatticeError> {
        if relations.cols() != ambient_rank && relations.rows() != 0 {
            return Err(ZLatticeError::DimensionMismatch {
                expected: ambient_rank,
                found: relations.cols(),
            });
        }
        let relations = if relations.rows() == 0 {
            IntMatrix::zeros(0, ambient_rank)
        } else {
            relations
        };
        Ok(Self::build(ambient_rank, relations))
    }

    fn build(ambient_rank: usize, relations: IntMatrix) -> Self {
        let smith = smith_right_only(&relations);
        let diag = smith.diagonal();
        // x ∈ rowspace(R) ⟺ (Vᵀx)ᵢ ∈ dᵢZ, with dᵢ = 0 past the rank
        let mut invariant_factors = Vec::new();
        let mut torsion_rows = Vec::new();
        let mut free_rows = Vec::new();
        for i in 0..ambient_rank {
            let d = diag.get(i).cloned().unwrap_or(Integer::ZERO);
            if d.is_one() {
                continue;
            }
            if d.is_zero() {
                free_rows.push(i);
            } else {
                invariant_factors.push(d);
                torsion_rows.push(i);
            }
        }
        let order: Vec<usize> = torsion_rows.iter().chain(&free_rows).copied().collect();
        let vt = smith.v.transpose();
        let to_canonical =
            IntMatrix::from_rows(ambient_rank, order.iter().map(|&i| vt.row(i).to_vec()).collect());
        // (Vᵀ)^{-1} = (V^{-1})ᵀ; canonical generator i lifts to column i of it
        let vinv_t = smith.v_inv.transpose();
        let from_canonical =
            IntMatrix::from_columns(ambient_rank, &order.iter().map(|&i| vinv_t.column(i)).collect::<Vec<_>>());
        FgAbelianGroup {
            ambient_rank,
            relations,
            invariant_factors,
            free_rank: free_rows.len(),
            canonical: Arc::new(CanonicalBasis { to_canonical, from_canonical }),
        }
    }

    /// The group `⊕ Z/dᵢ ⊕ Z^free_rank` for arbitrary positive `orders`
    /// (entries equal to 1 contribute nothing), presented on one generator
    /// per cyclic factor.
    pub fn from_cyclic_orders(orders: &[Integer], free_rank: usize) -> Self {
        let k = orders.len();
        let mut rel = IntMatrix::zeros(k, k + free_rank);
        for (i, d) in orders.iter().enumerate() {
            rel.set(i, i, d.abs());
        }
        Self::build(k + free_rank, rel)
    }

    pub fn trivial() -> Self {
        Self::build(0, IntMatrix::zeros(0, 0))
    }

    pub fn free(rank: usize) -> Self {
        Self::build(rank, IntMatrix::zeros(0, rank))
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_cyclic_orders(&[Integer::from(n)], 0)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn invariant_factors(&self) -> &[Integer] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Number of canonical generators: torsion factors then free ones.
    pub fn num_generators(&self) -> usize {
        self.invariant_factors.len() + self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.num_generators() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Order of a finite group, `None` when the free rank is positive.
    pub fn order(&self) -> Option<Integer> {
        self.is_finite()
            .then(|| self.invariant_factors.iter().fold(Integer::ONE, |a, d| &a * d))
    }

    /// Largest invariant factor (1 for the trivial group); `None` if infinite.
    pub fn exponent(&self) -> Option<Integer> {
        self.is_finite()
            .then(|| self.invariant_factors.last().cloned().unwrap_or(Integer::ONE))
    }

    /// Modulus of canonical coordinate `i`: `dᵢ` for torsion, 0 for free.
    pub fn modulus(&self, i: usize) -> Integer {
        self.invariant_factors.get(i).cloned().unwrap_or(Integer::ZERO)
    }

    /// Whether every element is killed by `n`.
    pub fn annihilated_by(&self, n: &Integer) -> bool {
        self.is_finite() && self.invariant_factors.iter().all(|d| d.divides(n))
    }

    /// Canonical coordinates of an ambient vector.
    pub fn canonical(&self, x: &[Integer]) -> Vec<Integer> {
        let mut y = self.canonical.to_canonical.apply(x);
        for (yi, d) in y.iter_mut().zip(&self.invariant_factors) {
            *yi = yi.rem_euclid(d);
        }
        y
    }

    /// Linear forms computing canonical coordinates (before reduction), one
    /// row per canonical generator.
    pub fn canonical_forms(&self) -> &IntMatrix {
        &self.canonical.to_canonical
    }

    /// Reduces canonical coordinates in place.
    pub fn reduce_canonical(&self, y: &mut [Integer]) {
        for (yi, d) in y.iter_mut().zip(&self.invariant_factors) {
            *yi = yi.rem_euclid(d);
        }
    }

    /// Ambient representative of the `i`-th canonical generator.
    pub fn generator(&self, i: usize) -> Vec<Integer> {
        self.canonical.from_canonical.column(i)
    }

    /// Ambient representative of an element given in canonical coordinates.
    pub fn lift(&self, y: &[Integer]) -> Vec<Integer> {
        self.canonical.from_canonical.apply(y)
    }

    pub fn is_zero_element(&self, x: &[Integer]) -> bool {
        self.canonical(x).iter().all(Integer::is_zero)
    }

    /// Equality of elements modulo the relation lattice.
    pub fn same_element(&self, a: &[Integer], b: &[Integer]) -> bool {
        let diff: Vec<Integer> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.is_zero_element(&diff)
    }

    pub fn relation_lattice(&self) -> Lattice {
        Lattice::from_generators(self.ambient_rank, self.relations.row_vecs())
    }

    pub fn direct_sum(&self, other: &FgAbelianGroup) -> FgAbelianGroup {
        let orders: Vec<Integer> = self
            .invariant_factors
            .iter()
            .chain(&other.invariant_factors)
            .cloned()
            .collect();
        Self::from_cyclic_orders(&orders, self.free_rank + other.free_rank)
    }

    /// Presentation with one generator per canonical coordinate.
    pub fn normalized(&self) -> FgAbelianGroup {
        Self::from_cyclic_orders(&self.invariant_factors, self.free_rank)
    }
}

impl PartialEq for FgAbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        self.invariant_factors == other.invariant_factors && self.free_rank == other.free_rank
    }
}

impl Eq for FgAbelianGroup {}

impl fmt::Debug for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// `{"free_rank": n, "invariant_factors": [d1, ..., dk]}`
#[derive(Serialize, Deserialize)]
struct GroupJson {
    free_rank: usize,
    invariant_factors: Vec<Integer>,
}

impl Serialize for FgAbelianGroup {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GroupJson {
            free_rank: self.free_rank,
            invariant_factors: self.invariant_factors.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FgAbelianGroup {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let g = GroupJson::deserialize(deserializer)?;
        if g.invariant_factors.iter().any(|d| d <= &Integer::ONE) {
            return Err(serde::de::Error::custom("invariant factors must be at least 2"));
        }
        if g.invariant_factors.windows(2).any(|w| !w[0].divides(&w[1])) {
            return Err(serde::de::Error::custom("invariant factors must form a divisibility chain"));
        }
        Ok(FgAbelianGroup::from_cyclic_orders(&g.invariant_factors, g.free_rank))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    #[test]
    fn cyclic_orders_normalize() {
        let g = FgAbelianGroup::from_cyclic_orders(&ints(&[2, 3, 1, 4]), 1);
        assert_eq!(g.invariant_factors(), &ints(&[2, 12])[..]);
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.to_string(), "Z/2 ⊕ Z/12 ⊕ Z");
    }

    #[test]
    fn canonical_coordinates_detect_relations() {
        let rel = IntMatrix::from_i64_rows(2, &[vec![2, 4], vec![6, 8]]);
        let g = FgAbelianGroup::from_relations(2, rel).unwrap();
        assert_eq!(g.invariant_factors(), &ints(&[2, 4])[..]);
        assert!(g.is_zero_element(&ints(&[2, 4])));
        assert!(g.is_zero_element(&ints(&[4, 4])));
        assert!(!g.is_zero_element(&ints(&[1, 0])));
        assert!(g.same_element(&ints(&[1, 0]), &ints(&[3, 4])));
        for i in 0..g.num_generators() {
            let mut e = vec![Integer::ZERO; g.num_generators()];
            e[i] = Integer::ONE;
            assert_eq!(g.canonical(&g.generator(i)), e);
        }
    }

    #[test]
    fn json_shape() {
        let g = FgAbelianGroup::from_cyclic_orders(&ints(&[2, 2]), 1);
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"free_rank":1,"invariant_factors":[2,2]}"#);
        let back: FgAbelianGroup = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<FgAbelianGroup>(r#"{"free_rank":0,"invariant_factors":[2,3]}"#).is_err());
    }
}
