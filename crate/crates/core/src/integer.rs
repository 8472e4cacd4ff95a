//! Arbitrary-precision integers with an inline representation for values that
//! fit in a machine word.
//!
//! Every operation is exact. Results that leave the `i64` range are promoted
//! to a heap-allocated [`BigInt`] and demoted again when they come back, so the
//! `Large` variant never holds a value that would fit in `Small`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Integer {
    Small(i64),
    Large(BigInt),
}

impl Integer {
    pub const ZERO: Integer = Integer::Small(0);
    pub const ONE: Integer = Integer::Small(1);

    fn from_big(b: BigInt) -> Integer {
        match b.to_i64() {
            Some(v) => Integer::Small(v),
            None => Integer::Large(b),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Integer::Small(v) => BigInt::from(*v),
            Integer::Large(b) => b.clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Integer::Small(v) => Some(*v),
            Integer::Large(_) => None,
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        match self {
            Integer::Small(v) if *v >= 0 => Some(*v as u64),
            Integer::Small(_) => None,
            Integer::Large(b) => b.to_u64(),
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        matches!(self, Integer::Small(0))
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        matches!(self, Integer::Small(1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Integer::Small(v) => *v < 0,
            Integer::Large(b) => b.is_negative(),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Integer::Small(v) => v.signum() as i32,
            Integer::Large(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn abs(&self) -> Integer {
        match self {
            Integer::Small(v) => match v.checked_abs() {
                Some(a) => Integer::Small(a),
                None => Integer::Large(BigInt::from(*v).abs()),
            },
            Integer::Large(b) => Integer::from_big(b.abs()),
        }
    }

    /// Compares absolute values.
    pub fn cmp_abs(&self, other: &Integer) -> Ordering {
        match (self, other) {
            (Integer::Small(a), Integer::Small(b)) => a.unsigned_abs().cmp(&b.unsigned_abs()),
            _ => self.to_big().abs().cmp(&other.to_big().abs()),
        }
    }

    /// Floor division `⌊self / d⌋`. Panics when `d` is zero.
    pub fn div_floor(&self, d: &Integer) -> Integer {
        assert!(!d.is_zero(), "division by zero");
        match (self, d) {
            (Integer::Small(a), Integer::Small(b)) if !(*a == i64::MIN && *b == -1) => {
                Integer::Small(a.div_floor(b))
            }
            _ => Integer::from_big(self.to_big().div_floor(&d.to_big())),
        }
    }

    /// Remainder in `[0, |d|)`.
    pub fn rem_euclid(&self, d: &Integer) -> Integer {
        assert!(!d.is_zero(), "division by zero");
        match (self, d) {
            (Integer::Small(a), Integer::Small(b)) if *b != i64::MIN => {
                Integer::Small(a.rem_euclid(b.abs()))
            }
            _ => {
                let m = d.to_big().abs();
                Integer::from_big(self.to_big().mod_floor(&m))
            }
        }
    }

    /// Exact quotient if `d` divides `self`.
    pub fn div_exact(&self, d: &Integer) -> Option<Integer> {
        if d.is_zero() {
            return if self.is_zero() { Some(Integer::ZERO) } else { None };
        }
        match (self, d) {
            (Integer::Small(a), Integer::Small(b)) if !(*a == i64::MIN && *b == -1) => {
                if a % b == 0 {
                    Some(Integer::Small(a / b))
                } else {
                    None
                }
            }
            _ => {
                let (q, r) = self.to_big().div_rem(&d.to_big());
                if r.is_zero() {
                    Some(Integer::from_big(q))
                } else {
                    None
                }
            }
        }
    }

    /// Quotient rounded to the nearest integer (ties toward −∞), so that the
    /// remainder `self − q·d` has absolute value at most `|d|/2`.
    pub fn div_round(&self, d: &Integer) -> Integer {
        let q = self.div_floor(d);
        let r = self - &(&q * d);
        // r has the sign of d; r - d is then the smaller remainder
        let twice = &r + &r;
        if twice.cmp_abs(d) == Ordering::Greater {
            q + Integer::ONE
        } else {
            q
        }
    }

    pub fn divides(&self, other: &Integer) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem_euclid(self).is_zero()
    }

    /// Non-negative gcd.
    pub fn gcd(&self, other: &Integer) -> Integer {
        match (self, other) {
            (Integer::Small(a), Integer::Small(b)) => {
                let g = a.unsigned_abs().gcd(&b.unsigned_abs());
                Integer::from(g)
            }
            _ => Integer::from_big(self.to_big().gcd(&other.to_big())),
        }
    }

    /// Non-negative lcm.
    pub fn lcm(&self, other: &Integer) -> Integer {
        if self.is_zero() || other.is_zero() {
            return Integer::ZERO;
        }
        let g = self.gcd(other);
        (self.div_exact(&g).expect("gcd divides") * other).abs()
    }

    /// Returns `(g, s, t)` with `g = s·self + t·other = gcd(self, other) ≥ 0`.
    pub fn extended_gcd(&self, other: &Integer) -> (Integer, Integer, Integer) {
        let (mut old_r, mut r) = (self.clone(), other.clone());
        let (mut old_s, mut s) = (Integer::ONE, Integer::ZERO);
        let (mut old_t, mut t) = (Integer::ZERO, Integer::ONE);
        while !r.is_zero() {
            let q = old_r.div_floor(&r);
            let next_r = &old_r - &(&q * &r);
            old_r = std::mem::replace(&mut r, next_r);
            let next_s = &old_s - &(&q * &s);
            old_s = std::mem::replace(&mut s, next_s);
            let next_t = &old_t - &(&q * &t);
            old_t = std::mem::replace(&mut t, next_t);
        }
        if old_r.is_negative() {
            (-old_r, -old_s, -old_t)
        } else {
            (old_r, old_s, old_t)
        }
    }

    pub fn pow(&self, mut exp: u32) -> Integer {
        let mut base = self.clone();
        let mut acc = Integer::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self -= a * b`, the inner step of every elimination loop.
    #[inline]
    pub fn sub_mul_assign(&mut self, a: &Integer, b: &Integer) {
        if let (Integer::Small(x), Integer::Small(y), Integer::Small(z)) = (&*self, a, b) {
            if let Some(v) = y.checked_mul(*z).and_then(|p| x.checked_sub(p)) {
                *self = Integer::Small(v);
                return;
            }
        }
        let v = self.to_big() - a.to_big() * b.to_big();
        *self = Integer::from_big(v);
    }

    /// `self += a * b`.
    #[inline]
    pub fn add_mul_assign(&mut self, a: &Integer, b: &Integer) {
        if let (Integer::Small(x), Integer::Small(y), Integer::Small(z)) = (&*self, a, b) {
            if let Some(v) = y.checked_mul(*z).and_then(|p| x.checked_add(p)) {
                *self = Integer::Small(v);
                return;
            }
        }
        let v = self.to_big() + a.to_big() * b.to_big();
        *self = Integer::from_big(v);
    }

    /// Residue modulo a word-sized prime, in `[0, p)`.
    pub fn mod_u64(&self, p: u64) -> u64 {
        match self {
            Integer::Small(v) => (*v as i128).rem_euclid(p as i128) as u64,
            Integer::Large(b) => b
                .mod_floor(&BigInt::from(p))
                .to_u64()
                .expect("residue fits"),
        }
    }
}

impl Default for Integer {
    fn default() -> Self {
        Integer::ZERO
    }
}

impl Zero for Integer {
    fn zero() -> Self {
        Integer::ZERO
    }
    fn is_zero(&self) -> bool {
        Integer::is_zero(self)
    }
}

impl One for Integer {
    fn one() -> Self {
        Integer::ONE
    }
}

macro_rules! from_prim {
    ($($t:ty),*) => {$(
        impl From<$t> for Integer {
            fn from(v: $t) -> Self {
                match i64::try_from(v) {
                    Ok(s) => Integer::Small(s),
                    Err(_) => Integer::Large(BigInt::from(v)),
                }
            }
        }
    )*};
}
from_prim!(i8, i16, i32, i64, isize, u8, u16, u32, u64, usize, i128, u128);

impl From<BigInt> for Integer {
    fn from(b: BigInt) -> Self {
        Integer::from_big(b)
    }
}

impl From<&BigInt> for Integer {
    fn from(b: &BigInt) -> Self {
        Integer::from_big(b.clone())
    }
}

impl PartialOrd for Integer {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Integer {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Integer::Small(a), Integer::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Integer::Small(v) => write!(f, "{v}"),
            Integer::Large(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Integer {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(Integer::from_big(BigInt::from_str(s.trim())?))
    }
}

// Serialized as a JSON number when it fits in an i64 and as a decimal string
// otherwise.
impl Serialize for Integer {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Integer::Small(v) => serializer.serialize_i64(*v),
            Integer::Large(b) => serializer.serialize_str(&b.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Integer {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct Visitor;
        impl serde::de::Visitor<'_> for Visitor {
            type Value = Integer;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: serde::de::Error>(self, v: i64) -> Result<Integer, E> {
                Ok(Integer::from(v))
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> Result<Integer, E> {
                Ok(Integer::from(v))
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> Result<Integer, E> {
                v.parse().map_err(E::custom)
            }
        }
        deserializer.deserialize_any(Visitor)
    }
}

impl Neg for Integer {
    type Output = Integer;
    fn neg(self) -> Integer {
        -&self
    }
}

impl Neg for &Integer {
    type Output = Integer;
    fn neg(self) -> Integer {
        match self {
            Integer::Small(v) => match v.checked_neg() {
                Some(n) => Integer::Small(n),
                None => Integer::Large(-BigInt::from(*v)),
            },
            Integer::Large(b) => Integer::from_big(-b),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident, $op:tt) => {
        impl $trait<&Integer> for &Integer {
            type Output = Integer;
            #[inline]
            fn $method(self, rhs: &Integer) -> Integer {
                if let (Integer::Small(a), Integer::Small(b)) = (self, rhs) {
                    if let Some(v) = a.$checked(*b) {
                        return Integer::Small(v);
                    }
                }
                Integer::from_big(self.to_big() $op rhs.to_big())
            }
        }
        impl $trait<Integer> for Integer {
            type Output = Integer;
            #[inline]
            fn $method(self, rhs: Integer) -> Integer {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Integer> for Integer {
            type Output = Integer;
            #[inline]
            fn $method(self, rhs: &Integer) -> Integer {
                (&self).$method(rhs)
            }
        }
        impl $trait<Integer> for &Integer {
            type Output = Integer;
            #[inline]
            fn $method(self, rhs: Integer) -> Integer {
                self.$method(&rhs)
            }
        }
    };
}
binop!(Add, add, checked_add, +);
binop!(Sub, sub, checked_sub, -);
binop!(Mul, mul, checked_mul, *);

macro_rules! assignop {
    ($trait:ident, $method:ident, $op:ident) => {
        impl $trait<&Integer> for Integer {
            #[inline]
            fn $method(&mut self, rhs: &Integer) {
                *self = (&*self).$op(rhs);
            }
        }
        impl $trait<Integer> for Integer {
            #[inline]
            fn $method(&mut self, rhs: Integer) {
                *self = (&*self).$op(&rhs);
            }
        }
    };
}
assignop!(AddAssign, add_assign, add);
assignop!(SubAssign, sub_assign, sub);
assignop!(MulAssign, mul_assign, mul);

impl std::iter::Sum for Integer {
    fn sum<I: Iterator<Item = Integer>>(iter: I) -> Self {
        iter.fold(Integer::ZERO, |a, b| a + b)
    }
}

impl<'a> std::iter::Sum<&'a Integer> for Integer {
    fn sum<I: Iterator<Item = &'a Integer>>(iter: I) -> Self {
        iter.fold(Integer::ZERO, |a, b| a + b)
    }
}

/// Distinct prime factors of `n` in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `(p, e)` with `q = p^e`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let ps = prime_factors(q);
    if ps.len() != 1 {
        return None;
    }
    let p = ps[0];
    let mut e = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        e += 1;
    }
    Some((p, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factoring_helpers() {
        assert_eq!(prime_factors(30), vec![2, 3, 5]);
        assert_eq!(prime_factors(1), Vec::<u64>::new());
        assert_eq!(prime_factors(49), vec![7]);
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    use proptest::prelude::*;

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Integer::from(i64::MAX) + Integer::ONE;
        assert!(matches!(big, Integer::Large(_)));
        let back = big - Integer::ONE;
        assert_eq!(back, Integer::Small(i64::MAX));
        let neg_min = -Integer::from(i64::MIN);
        assert!(matches!(neg_min, Integer::Large(_)));
    }

    #[test]
    fn extended_gcd_identity() {
        let (g, s, t) = Integer::from(240).extended_gcd(&Integer::from(-46));
        assert_eq!(g, Integer::from(2));
        assert_eq!(s * Integer::from(240) + t * Integer::from(-46), g);
    }

    #[test]
    fn serde_uses_strings_for_large_values() {
        let big = Integer::from(i64::MAX) * Integer::from(4);
        let json = serde_json::to_string(&big).unwrap();
        assert_eq!(json, "\"36893488147419103228\"");
        let back: Integer = serde_json::from_str(&json).unwrap();
        assert_eq!(back, big);
        let small: Integer = serde_json::from_str("-7").unwrap();
        assert_eq!(small, Integer::from(-7));
    }

    proptest! {
        #[test]
        fn arithmetic_matches_bigint(a in any::<i64>(), b in any::<i64>(), c in any::<i64>()) {
            let (x, y, z) = (Integer::from(a), Integer::from(b), Integer::from(c));
            let (bx, by, bz) = (BigInt::from(a), BigInt::from(b), BigInt::from(c));
            prop_assert_eq!((&x * &y).to_big(), &bx * &by);
            prop_assert_eq!((&x + &y).to_big(), &bx + &by);
            prop_assert_eq!((&x - &y).to_big(), &bx - &by);
            let mut w = x.clone();
            w.sub_mul_assign(&y, &z);
            prop_assert_eq!(w.to_big(), &bx - &by * &bz);
            if b != 0 {
                prop_assert_eq!(x.div_floor(&y).to_big(), bx.div_floor(&by));
                let r = x.rem_euclid(&y);
                prop_assert!(!r.is_negative() && r.cmp_abs(&y) == Ordering::Less);
                let q = x.div_round(&y);
                let rem = &x - &(&q * &y);
                prop_assert!((&rem + &rem).cmp_abs(&y) != Ordering::Greater);
            }
        }
    }
}
