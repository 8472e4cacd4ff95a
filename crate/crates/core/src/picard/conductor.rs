//! Milnor squares `A → B`, `A/I → B/I` with `B/I ≅ D[t]/(t²)`.
//!
//! In both families `(B/I)* = D* × (1 + t·D)`, the constants `(A/I)*`
//! absorb the `D*` factor, and `Pic(A) ≅ (D, +)/S` where `S` is spanned by
//! the `t`-coefficients of the images of the units of `B`.
//!
//! * Cusp `k[T², T³] ⊂ k[T]`, `I = T²k[T]`: `B* = k*` maps into constants,
//!   so `S = 0` and `Pic(A) = (k, +)`.
//! * Node `D + (x−1)²B ⊂ B = D[x, x⁻¹]`, `t = x − 1`: `B* = {u·xʲ}` with
//!   `u ∈ D*`, and `xʲ ↦ 1 + j·t`, so `S = Z`. For `D = Z[1/m]` this uses
//!   `Z[1/m]* = ±⟨p : p | m⟩`; only its image in constants matters.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::integer::{prime_factors, Integer};
use crate::zlattice::FgAbelianGroup;

use super::descriptor::{FieldDescriptor, PicDescription};
use super::PicardError;

/// `Q` or `Z[1/m]` with `m ≥ 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeRing {
    Rationals,
    Localized { m: u64 },
}

impl NodeRing {
    pub fn localized(m: u64) -> Result<Self, PicardError> {
        if m < 2 {
            return Err(PicardError::InvalidSpec(format!("Z[1/m] needs m ≥ 2, got {m}")));
        }
        Ok(NodeRing::Localized { m })
    }
}

impl fmt::Display for NodeRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeRing::Rationals => write!(f, "Q"),
            NodeRing::Localized { m } => write!(f, "Z[1/{m}]"),
        }
    }
}

impl FromStr for NodeRing {
    type Err = PicardError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "Q" {
            return Ok(NodeRing::Rationals);
        }
        let m = s
            .strip_prefix("Z[1/")
            .and_then(|r| r.strip_suffix(']'))
            .and_then(|d| d.parse::<u64>().ok())
            .ok_or_else(|| PicardError::InvalidSpec(format!("unknown ring {s:?}")))?;
        NodeRing::localized(m)
    }
}

impl Serialize for NodeRing {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ConductorSquareSpec {
    Cusp { field: FieldDescriptor },
    Node { ring: NodeRing },
}

impl ConductorSquareSpec {
    /// From the CLI spelling: family `cusp` with a field, or `node` with a
    /// ring.
    pub fn parse(family: &str, ring: &str) -> Result<Self, PicardError> {
        match family {
            "cusp" => Ok(ConductorSquareSpec::Cusp { field: ring.parse()? }),
            "node" => Ok(ConductorSquareSpec::Node { ring: ring.parse()? }),
            other => Err(PicardError::InvalidSpec(format!("unknown family {other:?}"))),
        }
    }
}

/// `a + b·t` in `Z[t]/(t²)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualNumber {
    pub a: Integer,
    pub b: Integer,
}

impl DualNumber {
    pub fn new(a: i64, b: i64) -> Self {
        DualNumber { a: Integer::from(a), b: Integer::from(b) }
    }

    pub fn mul(&self, other: &DualNumber) -> DualNumber {
        DualNumber { a: &self.a * &other.a, b: &(&self.a * &other.b) + &(&self.b * &other.a) }
    }

    /// Defined when `a = ±1`.
    pub fn inverse(&self) -> Option<DualNumber> {
        if self.a.abs() != Integer::ONE {
            return None;
        }
        // (a + bt)⁻¹ = a⁻¹ − b·a⁻²·t and a⁻¹ = a
        Some(DualNumber { a: self.a.clone(), b: -&self.b })
    }

    pub fn pow(&self, j: i64) -> Option<DualNumber> {
        let base = if j < 0 { self.inverse()? } else { self.clone() };
        let mut acc = DualNumber::new(1, 0);
        for _ in 0..j.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Some(acc)
    }

    /// `b/a`, the coordinate in `1 + t·D` after splitting off the constant.
    pub fn principal_part(&self) -> Option<Integer> {
        self.inverse().map(|inv| &self.b * &inv.a)
    }
}

/// `(B/I)*` modulo `(A/I)*` and the image of `B*`, as `(D, +)/S`.
#[derive(Clone, Debug)]
pub struct UnitQuotient {
    pub spec: ConductorSquareSpec,
    /// Images in `B/I` of the non-constant unit generators of `B`.
    pub unit_images: Vec<(String, DualNumber)>,
}

impl UnitQuotient {
    pub fn for_spec(spec: ConductorSquareSpec) -> Self {
        let unit_images = match spec {
            ConductorSquareSpec::Cusp { .. } => Vec::new(),
            ConductorSquareSpec::Node { .. } => vec![("x".to_string(), DualNumber::new(1, 1))],
        };
        UnitQuotient { spec, unit_images }
    }

    /// Generator of `S ⊂ Z·1 ⊂ D`.
    pub fn span(&self) -> Integer {
        self.unit_images
            .iter()
            .map(|(_, u)| u.principal_part().expect("unit images have constant ±1"))
            .fold(Integer::ZERO, |g, x| g.gcd(&x))
    }

    pub fn pic(&self) -> Result<PicDescription, PicardError> {
        let s = self.span();
        match self.spec {
            ConductorSquareSpec::Cusp { field } => Ok(field_quotient(field, &s)),
            ConductorSquareSpec::Node { ring: NodeRing::Rationals } => Ok(field_quotient(FieldDescriptor::Rationals, &s)),
            ConductorSquareSpec::Node { ring: NodeRing::Localized { m } } if s.is_one() => {
                Ok(PicDescription::PrimaryDivisibleSum { primes: prime_factors(m) })
            }
            ConductorSquareSpec::Node { .. } => {
                Err(PicardError::InvalidSpec(format!("quotient by {s}·Z is not one of the described groups")))
            }
        }
    }
}

/// `(k, +)/s·Z`.
fn field_quotient(field: FieldDescriptor, s: &Integer) -> PicDescription {
    if s.is_zero() {
        return PicDescription::AdditiveGroupOfField { field };
    }
    match field {
        // Q/sZ ≅ Q/Z
        FieldDescriptor::Rationals => PicDescription::RationalsModZ,
        FieldDescriptor::Finite { p, .. } if s.mod_u64(p) == 0 => PicDescription::AdditiveGroupOfField { field },
        // s spans the prime field
        FieldDescriptor::Finite { p, e } => {
            let orders = vec![Integer::from(p); e as usize - 1];
            PicDescription::Finite { group: FgAbelianGroup::from_cyclic_orders(&orders, 0) }
        }
    }
}

/// `Pic(A)` for a cusp or node conductor square.
pub fn conductor_square_pic(spec: ConductorSquareSpec) -> Result<PicDescription, PicardError> {
    UnitQuotient::for_spec(spec).pic()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powers_of_x_are_one_plus_jt() {
        let x = DualNumber::new(1, 1);
        for j in -6..=6 {
            assert_eq!(x.pow(j).unwrap(), DualNumber::new(1, j));
        }
        assert_eq!(DualNumber::new(-1, 3).principal_part(), Some(Integer::from(-3)));
        assert!(DualNumber::new(2, 1).inverse().is_none());
    }

    #[test]
    fn family_examples() {
        let cusp = ConductorSquareSpec::parse("cusp", "F_9").unwrap();
        let pic = conductor_square_pic(cusp).unwrap();
        assert_eq!(pic.as_finite().unwrap(), FgAbelianGroup::from_cyclic_orders(&vec![Integer::from(3); 2], 0));
        let node_q = ConductorSquareSpec::parse("node", "Q").unwrap();
        assert_eq!(conductor_square_pic(node_q).unwrap(), PicDescription::RationalsModZ);
        let node6 = ConductorSquareSpec::parse("node", "Z[1/6]").unwrap();
        assert_eq!(conductor_square_pic(node6).unwrap(), PicDescription::PrimaryDivisibleSum { primes: vec![2, 3] });
        let cusp_q = ConductorSquareSpec::parse("cusp", "Q").unwrap();
        assert_eq!(
            conductor_square_pic(cusp_q).unwrap(),
            PicDescription::AdditiveGroupOfField { field: FieldDescriptor::Rationals }
        );
    }

    #[test]
    fn invalid_specs() {
        assert!(ConductorSquareSpec::parse("node", "Z[1/1]").is_err());
        assert!(ConductorSquareSpec::parse("node", "Z[1/0]").is_err());
        assert!(ConductorSquareSpec::parse("cusp", "F_10").is_err());
        assert!(ConductorSquareSpec::parse("tacnode", "Q").is_err());
        assert!(ConductorSquareSpec::parse("node", "F_4").is_err());
    }

    #[test]
    fn spec_json() {
        let spec = ConductorSquareSpec::Node { ring: NodeRing::Localized { m: 30 } };
        assert_eq!(serde_json::to_string(&spec).unwrap(), r#"{"family":"node","ring":"Z[1/30]"}"#);
    }
}
