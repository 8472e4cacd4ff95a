use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::cohomology::FreeResolution;
use crate::integer::Integer;
use crate::zlattice::{FgAbelianGroup, IntMatrix};

use super::GModuleError;

/// A finite group given by its multiplication table; element 0 is the
/// identity.
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    generators: Vec<usize>,
    resolution: OnceLock<Arc<FreeResolution>>,
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    order: usize,
    table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    /// Verifies closure, identity at index 0, inverses and associativity.
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self, GModuleError> {
        let n = table.len();
        let bad = |msg: String| Err(GModuleError::InvalidTable(msg));
        if n == 0 {
            return bad("empty table".into());
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return bad(format!("row {a} has length {}, expected {n}", row.len()));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return bad(format!("row {a} contains out-of-range index {x}"));
            }
        }
        for a in 0..n {
            if table[0][a] != a || table[a][0] != a {
                return bad(format!("element 0 is not an identity for element {a}"));
            }
        }
        let mut inverses = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == 0) {
                Some(b) if table[b][a] == 0 => inverses[a] = b,
                _ => return bad(format!("element {a} has no two-sided inverse")),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return bad(format!("associativity fails for ({a}, {b}, {c})"));
                    }
                }
            }
        }
        let generators = greedy_generators(&table);
        Ok(FiniteGroup {
            name: name.into(),
            table,
            inverses,
            generators,
            resolution: OnceLock::new(),
        })
    }

    /// For tables that are group laws by construction; the full check only
    /// runs in debug builds on small tables.
    fn from_trusted_table(name: String, table: Vec<Vec<usize>>) -> Self {
        if cfg!(debug_assertions) && table.len() <= 64 {
            return Self::from_table(name, table).expect("built-in table is a group law");
        }
        let n = table.len();
        let inverses = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == 0).expect("inverse exists"))
            .collect();
        let generators = greedy_generators(&table);
        FiniteGroup { name, table, inverses, generators, resolution: OnceLock::new() }
    }

    pub fn from_json(json: &str) -> Result<Self, GModuleError> {
        let parsed: GroupJson = serde_json::from_str(json).map_err(GModuleError::from_json)?;
        if parsed.order != parsed.table.len() {
            return Err(GModuleError::InvalidTable(format!(
                "order {} does not match table with {} rows",
                parsed.order,
                parsed.table.len()
            )));
        }
        Self::from_table(format!("group of order {}", parsed.order), parsed.table)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GroupJson { order: self.order(), table: self.table.clone() }).expect("plain data")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// A generating set chosen greedily in index order.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// An element generating the whole group, if it is cyclic.
    pub fn cyclic_generator(&self) -> Option<usize> {
        (0..self.order()).find(|&a| self.element_order(a) == self.order())
    }

    /// Smallest subgroup containing `gens`, as sorted element indices.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        closure(&self.table, gens)
    }

    pub fn commutator_subgroup(&self) -> Vec<usize> {
        let n = self.order();
        let mut comms = BTreeSet::new();
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                let ba = self.mul(b, a);
                comms.insert(self.mul(ab, self.inverse(ba)));
            }
        }
        self.closure(&comms.into_iter().collect::<Vec<_>>())
    }

    /// `G/[G,G]`, presented on one generator per element with the relations
    /// `x_s + x_b = x_{sb}` for `s` in the generating set.
    pub fn abelianization(&self) -> FgAbelianGroup {
        let n = self.order();
        let mut rows = Vec::with_capacity(self.generators.len() * n + 1);
        let mut identity = vec![Integer::ZERO; n];
        identity[0] = Integer::ONE;
        rows.push(identity);
        for &s in &self.generators {
            for b in 0..n {
                let mut r = vec![Integer::ZERO; n];
                r[s] += Integer::ONE;
                r[b] += Integer::ONE;
                r[self.mul(s, b)] -= Integer::ONE;
                rows.push(r);
            }
        }
        FgAbelianGroup::from_relations(n, IntMatrix::from_rows(n, rows)).expect("square presentation")
    }

    pub(crate) fn resolution_cell(&self) -> &OnceLock<Arc<FreeResolution>> {
        &self.resolution
    }

    /// Structural equality of multiplication tables.
    pub fn same_table(&self, other: &FiniteGroup) -> bool {
        self.table == other.table
    }

    // ---- built-in groups ----

    /// `C_n`, element `i` being `rⁱ`.
    pub fn cyclic(n: usize) -> Result<Self, GModuleError> {
        if n == 0 {
            return Err(GModuleError::UnknownGroup("cyclic group of order 0".into()));
        }
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Ok(Self::from_trusted_table(format!("C{n}"), table))
    }

    /// Dihedral group of order `2n`; element `i + n·j` is `rⁱ sʲ`.
    pub fn dihedral(n: usize) -> Result<Self, GModuleError> {
        if n == 0 {
            return Err(GModuleError::UnknownGroup("dihedral group with n = 0".into()));
        }
        let elem = |i: usize, j: usize| i + n * j;
        let mut table = vec![vec![0; 2 * n]; 2 * n];
        for (a, row) in table.iter_mut().enumerate() {
            let (ai, aj) = (a % n, a / n);
            for (b, entry) in row.iter_mut().enumerate() {
                let (bi, bj) = (b % n, b / n);
                // s rᶜ = r⁻ᶜ s
                let i = if aj == 0 { (ai + bi) % n } else { (ai + n - bi) % n };
                *entry = elem(i, (aj + bj) % 2);
            }
        }
        Ok(Self::from_trusted_table(format!("D{n}"), table))
    }

    /// Symmetric group on `k` letters, permutations in lexicographic order
    /// with `(στ)(x) = σ(τ(x))`.
    pub fn symmetric(k: usize) -> Result<Self, GModuleError> {
        if !(1..=5).contains(&k) {
            return Err(GModuleError::UnknownGroup(format!("symmetric({k}) is not built in")));
        }
        let perms = permutations(k);
        let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).expect("permutation");
        let table = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| index(&t.iter().map(|&x| s[x]).collect::<Vec<_>>()))
                    .collect()
            })
            .collect();
        Ok(Self::from_trusted_table(format!("S{k}"), table))
    }

    /// Quaternion group, elements in the order `1, −1, i, −i, j, −j, k, −k`.
    pub fn quaternion8() -> Result<Self, GModuleError> {
        // unit part u ∈ {1,i,j,k} as 0..4; u_a u_b = sign · u_c
        const UNIT: [[(usize, bool); 4]; 4] = [
            [(0, false), (1, false), (2, false), (3, false)],
            [(1, false), (0, true), (3, false), (2, true)],
            [(2, false), (3, true), (0, true), (1, false)],
            [(3, false), (2, false), (1, true), (0, true)],
        ];
        let table = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let (c, neg) = UNIT[a / 2][b / 2];
                        let sign = (a % 2 == 1) ^ (b % 2 == 1) ^ neg;
                        2 * c + usize::from(sign)
                    })
                    .collect()
            })
            .collect();
        Ok(Self::from_trusted_table("Q8".into(), table))
    }

    /// Parses `C6`, `cyclic(6)`, `D4`, `dihedral(4)`, `S3`, `symmetric(3)`,
    /// `Q8` or `quaternion8`.
    pub fn builtin(name: &str) -> Result<Self, GModuleError> {
        let s: String = name.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_ascii_lowercase();
        if s == "q8" || s == "quaternion8" {
            return Self::quaternion8();
        }
        let unknown = || GModuleError::UnknownGroup(name.to_string());
        let (kind, arg) = if let Some(rest) = s.strip_suffix(')') {
            let (k, a) = rest.split_once('(').ok_or_else(unknown)?;
            (k.to_string(), a.to_string())
        } else {
            let split = s.find(|c: char| c.is_ascii_digit()).ok_or_else(unknown)?;
            (s[..split].to_string(), s[split..].to_string())
        };
        let n: usize = arg.parse().map_err(|_| unknown())?;
        match kind.as_str() {
            "c" | "cyclic" => Self::cyclic(n),
            "d" | "dihedral" => Self::dihedral(n),
            "s" | "symmetric" => Self::symmetric(n),
            _ => Err(unknown()),
        }
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order())
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// The eight groups used throughout the test batteries.
pub fn builtin_battery() -> Vec<Arc<FiniteGroup>> {
    ["C2", "C3", "C4", "C6", "S3", "D4", "Q8", "S4"]
        .iter()
        .map(|n| Arc::new(FiniteGroup::builtin(n).expect("built-in")))
        .collect()
}

fn closure(table: &[Vec<usize>], gens: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; table.len()];
    seen[0] = true;
    let mut elems = vec![0];
    let mut i = 0;
    while i < elems.len() {
        let x = elems[i];
        for &g in gens {
            let y = table[x][g];
            if !seen[y] {
                seen[y] = true;
                elems.push(y);
            }
        }
        i += 1;
    }
    elems.sort_unstable();
    elems
}

fn greedy_generators(table: &[Vec<usize>]) -> Vec<usize> {
    let n = table.len();
    let mut gens = Vec::new();
    let mut span = vec![0];
    for a in 1..n {
        if span.binary_search(&a).is_err() {
            gens.push(a);
            span = closure(table, &gens);
            if span.len() == n {
                break;
            }
        }
    }
    gens
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// A verified subgroup, given by a subset of the parent's element indices.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    elements: Vec<usize>,
    group: Arc<FiniteGroup>,
}

impl Subgroup {
    pub fn new(parent: &Arc<FiniteGroup>, elements: &[usize]) -> Result<Self, GModuleError> {
        let mut elems: Vec<usize> = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        let n = parent.order();
        if elems.first() != Some(&0) || elems.iter().any(|&x| x >= n) {
            return Err(GModuleError::NotASubgroup);
        }
        let pos = |x: usize| elems.binary_search(&x).ok();
        let mut table = Vec::with_capacity(elems.len());
        for &a in &elems {
            let mut row = Vec::with_capacity(elems.len());
            for &b in &elems {
                row.push(pos(parent.mul(a, b)).ok_or(GModuleError::NotASubgroup)?);
            }
            table.push(row);
        }
        let group = FiniteGroup::from_table(format!("subgroup of {}", parent.name()), table)
            .map_err(|_| GModuleError::NotASubgroup)?;
        Ok(Subgroup { parent: parent.clone(), elements: elems, group: Arc::new(group) })
    }

    pub fn generated_by(parent: &Arc<FiniteGroup>, gens: &[usize]) -> Result<Self, GModuleError> {
        if gens.iter().any(|&g| g >= parent.order()) {
            return Err(GModuleError::NotASubgroup);
        }
        Self::new(parent, &parent.closure(gens))
    }

    pub fn whole(parent: &Arc<FiniteGroup>) -> Self {
        Self::new(parent, &(0..parent.order()).collect::<Vec<_>>()).expect("whole group")
    }

    pub fn trivial(parent: &Arc<FiniteGroup>) -> Self {
        Self::new(parent, &[0]).expect("trivial subgroup")
    }

    /// Subgroups generated by at most two elements, by increasing order.
    /// For the built-in groups these are all the subgroups.
    pub fn two_generated(parent: &Arc<FiniteGroup>) -> Vec<Subgroup> {
        let n = parent.order();
        let mut sets = BTreeSet::new();
        for a in 0..n {
            for b in a..n {
                sets.insert(parent.closure(&[a, b]));
            }
        }
        let mut sets: Vec<Vec<usize>> = sets.into_iter().collect();
        sets.sort_by_key(Vec::len);
        sets.iter().map(|s| Self::new(parent, s).expect("closures are subgroups")).collect()
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    /// Parent indices, sorted; position `i` is element `i` of `as_group()`.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn as_group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    /// Position of a parent element inside the subgroup.
    pub fn local_index(&self, g: usize) -> Option<usize> {
        self.elements.binary_search(&g).ok()
    }

    pub fn is_normal(&self) -> bool {
        let p = &self.parent;
        (0..p.order()).all(|g| {
            let gi = p.inverse(g);
            self.elements.iter().all(|&n| self.contains(p.mul(p.mul(g, n), gi)))
        })
    }

    /// Smallest element of each left coset `gH`, in increasing order.
    pub fn left_coset_reps(&self) -> Vec<usize> {
        let p = &self.parent;
        let mut seen = vec![false; p.order()];
        let mut reps = Vec::new();
        for g in 0..p.order() {
            if seen[g] {
                continue;
            }
            reps.push(g);
            for &h in &self.elements {
                seen[p.mul(g, h)] = true;
            }
        }
        reps
    }

    /// For `g`, the coset index `j` with `g ∈ g_j H` and `h = g_j⁻¹ g ∈ H`.
    pub fn left_coset_decompose(&self, reps: &[usize], g: usize) -> (usize, usize) {
        let p = &self.parent;
        for (j, &r) in reps.iter().enumerate() {
            let h = p.mul(p.inverse(r), g);
            if self.contains(h) {
                return (j, h);
            }
        }
        unreachable!("cosets cover the group")
    }

    /// `G/N` for a normal subgroup.
    pub fn quotient(&self) -> Result<QuotientGroup, GModuleError> {
        if !self.is_normal() {
            return Err(GModuleError::NotNormal);
        }
        let reps = self.left_coset_reps();
        let p = &self.parent;
        let coset_of: Vec<usize> = (0..p.order()).map(|g| self.left_coset_decompose(&reps, g).0).collect();
        let table = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| coset_of[p.mul(a, b)]).collect())
            .collect();
        let group = FiniteGroup::from_table(format!("{}/N", p.name()), table)?;
        Ok(QuotientGroup { group: Arc::new(group), reps, coset_of })
    }
}

/// `G/N` together with the projection and coset representatives.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    group: Arc<FiniteGroup>,
    reps: Vec<usize>,
    coset_of: Vec<usize>,
}

impl QuotientGroup {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn project(&self, g: usize) -> usize {
        self.coset_of[g]
    }

    pub fn representative(&self, coset: usize) -> usize {
        self.reps[coset]
    }
}
