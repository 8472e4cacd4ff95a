use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::integer::{prime_power, Integer};
use crate::zlattice::{torsion_subgroup, FgAbelianGroup};

use super::PicardError;

/// `Q` or a finite field `F_{p^e}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldDescriptor {
    Rationals,
    Finite { p: u64, e: u32 },
}

impl FieldDescriptor {
    pub fn finite(q: u64) -> Result<Self, PicardError> {
        let (p, e) = prime_power(q).ok_or_else(|| PicardError::InvalidSpec(format!("{q} is not a prime power")))?;
        Ok(FieldDescriptor::Finite { p, e })
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDescriptor::Rationals => 0,
            FieldDescriptor::Finite { p, .. } => *p,
        }
    }

    /// `(k, +)` as a finitely generated group; `None` for `Q`.
    pub fn additive_group(&self) -> Option<FgAbelianGroup> {
        match self {
            FieldDescriptor::Rationals => None,
            FieldDescriptor::Finite { p, e } => {
                Some(FgAbelianGroup::from_cyclic_orders(&vec![Integer::from(*p); *e as usize], 0))
            }
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::Finite { p, e } => write!(f, "F_{}", p.pow(*e)),
        }
    }
}

/// Accepts `Q`, `F_q`, `F<q>` and `GF(q)`.
impl FromStr for FieldDescriptor {
    type Err = PicardError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldDescriptor::Rationals);
        }
        let digits = s
            .strip_prefix("F_")
            .or_else(|| s.strip_prefix('F'))
            .or_else(|| s.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')))
            .ok_or_else(|| PicardError::InvalidSpec(format!("unknown field {s:?}")))?;
        let q: u64 = digits
            .parse()
            .map_err(|_| PicardError::InvalidSpec(format!("unknown field {s:?}")))?;
        FieldDescriptor::finite(q)
    }
}

impl Serialize for FieldDescriptor {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A Picard group, finite or one of the divisible groups met in the
/// conductor-square families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PicDescription {
    Finite { group: FgAbelianGroup },
    #[serde(rename = "q_mod_z")]
    RationalsModZ,
    /// `⊕_{p ∈ primes} Z_{p^∞}`.
    #[serde(rename = "primary_divisible")]
    PrimaryDivisibleSum { primes: Vec<u64> },
    /// `(k, +)`.
    #[serde(rename = "additive_field")]
    AdditiveGroupOfField { field: FieldDescriptor },
}

impl PicDescription {
    /// The group itself when it is finitely generated.
    pub fn as_finite(&self) -> Option<FgAbelianGroup> {
        match self {
            PicDescription::Finite { group } => Some(group.clone()),
            PicDescription::AdditiveGroupOfField { field } => field.additive_group(),
            PicDescription::PrimaryDivisibleSum { primes } if primes.is_empty() => Some(FgAbelianGroup::trivial()),
            _ => None,
        }
    }
}

impl fmt::Display for PicDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PicDescription::Finite { group } => write!(f, "{group}"),
            PicDescription::RationalsModZ => write!(f, "Q/Z"),
            PicDescription::PrimaryDivisibleSum { primes } if primes.is_empty() => write!(f, "0"),
            PicDescription::PrimaryDivisibleSum { primes } => {
                let parts: Vec<String> = primes.iter().map(|p| format!("Z_{p}^∞")).collect();
                write!(f, "{}", parts.join(" ⊕ "))
            }
            PicDescription::AdditiveGroupOfField { field } => match field.additive_group() {
                Some(g) => write!(f, "({field}, +) ≅ {g}"),
                None => write!(f, "({field}, +)"),
            },
        }
    }
}

/// `_nP`, the elements of order dividing `n`.
pub fn pic_torsion(desc: &PicDescription, n: u64) -> Result<FgAbelianGroup, PicardError> {
    if n == 0 {
        return Err(PicardError::NonPositiveOrder);
    }
    let cyclic = |k: u64| FgAbelianGroup::cyclic(k);
    Ok(match desc {
        PicDescription::Finite { group } => {
            torsion_subgroup(group, &Integer::from(n)).map_err(|_| PicardError::NonPositiveOrder)?
        }
        PicDescription::RationalsModZ => cyclic(n),
        PicDescription::PrimaryDivisibleSum { primes } => {
            let mut part = 1;
            let mut rest = n;
            for &p in primes {
                while rest.is_multiple_of(p) {
                    rest /= p;
                    part *= p;
                }
            }
            cyclic(part)
        }
        PicDescription::AdditiveGroupOfField { field } => match field {
            FieldDescriptor::Rationals => FgAbelianGroup::trivial(),
            FieldDescriptor::Finite { p, .. } if n.is_multiple_of(*p) => field.additive_group().expect("finite field"),
            FieldDescriptor::Finite { .. } => FgAbelianGroup::trivial(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_fields() {
        assert_eq!("Q".parse::<FieldDescriptor>().unwrap(), FieldDescriptor::Rationals);
        assert_eq!("F_9".parse::<FieldDescriptor>().unwrap(), FieldDescriptor::Finite { p: 3, e: 2 });
        assert_eq!("GF(8)".parse::<FieldDescriptor>().unwrap(), FieldDescriptor::Finite { p: 2, e: 3 });
        assert_eq!("F4".parse::<FieldDescriptor>().unwrap().to_string(), "F_4");
        assert!("F_6".parse::<FieldDescriptor>().is_err());
        assert!("R".parse::<FieldDescriptor>().is_err());
    }

    #[test]
    fn torsion_examples() {
        assert_eq!(pic_torsion(&PicDescription::RationalsModZ, 12).unwrap(), FgAbelianGroup::cyclic(12));
        let dyadic = PicDescription::PrimaryDivisibleSum { primes: vec![2] };
        assert_eq!(pic_torsion(&dyadic, 12).unwrap(), FgAbelianGroup::cyclic(4));
        let q = PicDescription::AdditiveGroupOfField { field: FieldDescriptor::Rationals };
        assert!(pic_torsion(&q, 7).unwrap().is_trivial());
        let f9 = PicDescription::AdditiveGroupOfField { field: FieldDescriptor::Finite { p: 3, e: 2 } };
        assert_eq!(pic_torsion(&f9, 6).unwrap().invariant_factors(), &[Integer::from(3), Integer::from(3)][..]);
        assert!(pic_torsion(&f9, 4).unwrap().is_trivial());
        let fin = PicDescription::Finite { group: FgAbelianGroup::cyclic(12) };
        assert_eq!(pic_torsion(&fin, 8).unwrap(), FgAbelianGroup::cyclic(4));
        assert_eq!(pic_torsion(&fin, 0), Err(PicardError::NonPositiveOrder));
    }

    #[test]
    fn json_kinds() {
        let j = |d: &PicDescription| serde_json::to_string(d).unwrap();
        assert_eq!(j(&PicDescription::RationalsModZ), r#"{"kind":"q_mod_z"}"#);
        assert_eq!(
            j(&PicDescription::PrimaryDivisibleSum { primes: vec![2, 3] }),
            r#"{"kind":"primary_divisible","primes":[2,3]}"#
        );
        assert_eq!(
            j(&PicDescription::AdditiveGroupOfField { field: FieldDescriptor::Finite { p: 2, e: 2 } }),
            r#"{"kind":"additive_field","field":"F_4"}"#
        );
        assert_eq!(
            j(&PicDescription::Finite { group: FgAbelianGroup::cyclic(2) }),
            r#"{"kind":"finite","group":{"free_rank":0,"invariant_factors":[2]}}"#
        );
    }
}
