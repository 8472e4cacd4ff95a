use std::fmt;

/// Exact field arithmetic shared by `F_p(α)` and `F_p(α)(γ)`.
pub trait FieldElement: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// The image of the integer `n`.
    fn from_int(&self, n: i64) -> Self;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }
}

fn reduce(n: i64, p: u64) -> u64 {
    n.rem_euclid(p as i64) as u64
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut e = p - 2;
    let mut base = a % p;
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// A polynomial in `α` over `F_p`, coefficients from low to high degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PrimePoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl PrimePoly {
    pub fn new(p: u64, coeffs: &[i64]) -> Self {
        Self::from_residues(p, coeffs.iter().map(|&c| reduce(c, p)).collect())
    }

    fn from_residues(p: u64, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PrimePoly { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        PrimePoly { p, coeffs: Vec::new() }
    }

    pub fn constant(p: u64, c: i64) -> Self {
        Self::new(p, &[c])
    }

    /// The variable `α`.
    pub fn variable(p: u64) -> Self {
        Self::new(p, &[0, 1])
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| (self.coeffs.get(i).unwrap_or(&0) + other.coeffs.get(i).unwrap_or(&0)) % self.p)
            .collect();
        Self::from_residues(self.p, c)
    }

    pub fn neg(&self) -> Self {
        Self::from_residues(self.p, self.coeffs.iter().map(|&c| (self.p - c) % self.p).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let mut c = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = (c[i + j] + mul_mod(a, b, self.p)) % self.p;
            }
        }
        Self::from_residues(self.p, c)
    }

    pub fn scale(&self, s: u64) -> Self {
        Self::from_residues(self.p, self.coeffs.iter().map(|&c| mul_mod(c, s, self.p)).collect())
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = inv_mod(d.leading(), self.p);
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; self.coeffs.len().saturating_sub(dd)];
        while r.len() > dd {
            let k = r.len() - 1 - dd;
            let c = mul_mod(*r.last().unwrap(), lead_inv, self.p);
            q[k] = c;
            for (i, &b) in d.coeffs.iter().enumerate() {
                r[k + i] = (r[k + i] + self.p - mul_mod(c, b, self.p)) % self.p;
            }
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        (Self::from_residues(self.p, q), Self::from_residues(self.p, r))
    }

    /// Monic greatest common divisor; zero only if both inputs are zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.leading(), self.p))
    }
}

impl fmt::Debug for PrimePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PrimePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coeffs.iter().map(|c| c.to_string()), "α")
    }
}

pub(crate) fn write_terms(f: &mut fmt::Formatter<'_>, coeffs: impl Iterator<Item = String>, var: &str) -> fmt::Result {
    let terms: Vec<String> = coeffs
        .enumerate()
        .filter(|(_, c)| c != "0")
        .map(|(i, c)| match i {
            0 => c,
            1 if c == "1" => var.to_string(),
            1 => format!("{c}·{var}"),
            _ if c == "1" => format!("{var}^{i}"),
            _ => format!("{c}·{var}^{i}"),
        })
        .collect();
    if terms.is_empty() {
        write!(f, "0")
    } else {
        write!(f, "{}", terms.join(" + "))
    }
}

/// An element of `F_p(α)`, kept reduced with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: PrimePoly,
    den: PrimePoly,
}

impl RationalFunction {
    /// `None` if the denominator is zero.
    pub fn new(num: PrimePoly, den: PrimePoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        let g = num.gcd(&den);
        let (num, den) = (num.div_rem(&g).0, den.div_rem(&g).0);
        let s = inv_mod(den.leading(), den.p);
        Some(RationalFunction { num: num.scale(s), den: den.scale(s) })
    }

    pub fn from_poly(num: PrimePoly) -> Self {
        let p = num.p;
        RationalFunction { num, den: PrimePoly::constant(p, 1) }
    }

    pub fn constant(p: u64, c: i64) -> Self {
        Self::from_poly(PrimePoly::constant(p, c))
    }

    /// The transcendental `α`.
    pub fn alpha(p: u64) -> Self {
        Self::from_poly(PrimePoly::variable(p))
    }

    pub fn characteristic(&self) -> u64 {
        self.num.p
    }

    pub fn numerator(&self) -> &PrimePoly {
        &self.num
    }

    pub fn denominator(&self) -> &PrimePoly {
        &self.den
    }

    /// Whether the element lies in `F_p`.
    pub fn is_constant(&self) -> bool {
        self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0)
    }
}

impl FieldElement for RationalFunction {
    fn zero_like(&self) -> Self {
        Self::constant(self.characteristic(), 0)
    }

    fn one_like(&self) -> Self {
        Self::constant(self.characteristic(), 1)
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::new(self.num.add(&other.num), self.den.clone()).expect("nonzero denominator");
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::new(num, self.den.mul(&other.den)).expect("nonzero denominator")
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den)).expect("nonzero denominator")
    }

    fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    fn inv(&self) -> Option<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    fn from_int(&self, n: i64) -> Self {
        Self::constant(self.characteristic(), n)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// `Σ cᵢγⁱ` in `F_p(α)[γ]/(γᵖ − α)`, a field since `γᵖ − α` is irreducible.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TowerElement {
    coords: Vec<RationalFunction>,
}

impl TowerElement {
    /// Pads `coords` to length `p`; `None` if there are more than `p`.
    pub fn new(p: u64, coords: Vec<RationalFunction>) -> Option<Self> {
        if coords.len() > p as usize || coords.iter().any(|c| c.characteristic() != p) {
            return None;
        }
        let mut coords = coords;
        coords.resize(p as usize, RationalFunction::constant(p, 0));
        Some(TowerElement { coords })
    }

    pub fn from_base(c: RationalFunction) -> Self {
        let p = c.characteristic();
        Self::new(p, vec![c]).expect("one coordinate")
    }

    pub fn constant(p: u64, c: i64) -> Self {
        Self::from_base(RationalFunction::constant(p, c))
    }

    /// `γ = α^{1/p}`.
    pub fn gamma(p: u64) -> Self {
        let mut coords = vec![RationalFunction::constant(p, 0); p as usize];
        coords[1] = RationalFunction::constant(p, 1);
        TowerElement { coords }
    }

    pub fn alpha(p: u64) -> Self {
        Self::from_base(RationalFunction::alpha(p))
    }

    pub fn characteristic(&self) -> u64 {
        self.coords.len() as u64
    }

    pub fn coordinates(&self) -> &[RationalFunction] {
        &self.coords
    }

    /// The coefficient of `γ⁰` when every other coordinate vanishes.
    pub fn as_base(&self) -> Option<&RationalFunction> {
        self.coords[1..].iter().all(|c| c.is_zero()).then(|| &self.coords[0])
    }
}

impl FieldElement for TowerElement {
    fn zero_like(&self) -> Self {
        Self::constant(self.characteristic(), 0)
    }

    fn one_like(&self) -> Self {
        Self::constant(self.characteristic(), 1)
    }

    fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    fn add(&self, other: &Self) -> Self {
        TowerElement { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a.add(b)).collect() }
    }

    fn sub(&self, other: &Self) -> Self {
        TowerElement { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a.sub(b)).collect() }
    }

    fn mul(&self, other: &Self) -> Self {
        let p = self.coords.len();
        let zero = self.coords[0].zero_like();
        let alpha = RationalFunction::alpha(p as u64);
        let mut out = vec![zero; p];
        for (i, a) in self.coords.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coords.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a.mul(b);
                if i + j < p {
                    out[i + j] = out[i + j].add(&ab);
                } else {
                    out[i + j - p] = out[i + j - p].add(&ab.mul(&alpha));
                }
            }
        }
        TowerElement { coords: out }
    }

    fn neg(&self) -> Self {
        TowerElement { coords: self.coords.iter().map(|c| c.neg()).collect() }
    }

    /// `x⁻¹ = x^{p−1} / x^p` with `x^p = Σ cᵢᵖαⁱ` in the base field.
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let p = self.characteristic();
        let head = self.pow(p - 1);
        let norm = head.mul(self);
        let base = norm.as_base().expect("p-th powers lie in the base field").inv()?;
        Some(head.mul(&Self::from_base(base)))
    }

    fn from_int(&self, n: i64) -> Self {
        Self::constant(self.characteristic(), n)
    }
}

impl fmt::Debug for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coords.iter().map(|c| c.to_string()), "γ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_poly_division() {
        let a = PrimePoly::new(5, &[1, 2, 3, 4]);
        let d = PrimePoly::new(5, &[2, 1]);
        let (q, r) = a.div_rem(&d);
        assert_eq!(q.mul(&d).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 1);
        let x = PrimePoly::variable(3);
        let x2m1 = PrimePoly::new(3, &[-1, 0, 1]);
        assert_eq!(x2m1.gcd(&x.sub(&PrimePoly::constant(3, 1))), PrimePoly::new(3, &[-1, 1]));
    }

    #[test]
    fn rational_functions_reduce() {
        let p = 3;
        let num = PrimePoly::new(p, &[-1, 0, 1]);
        let den = PrimePoly::new(p, &[2, 2]);
        let f = RationalFunction::new(num, den).unwrap();
        assert_eq!(f.denominator(), &PrimePoly::constant(p, 1));
        assert_eq!(f.numerator(), &PrimePoly::new(p, &[-2, 2]));
        let a = RationalFunction::alpha(p);
        let inv = a.inv().unwrap();
        assert!(a.mul(&inv).is_one());
        assert!(RationalFunction::new(PrimePoly::constant(p, 1), PrimePoly::zero(p)).is_none());
    }

    #[test]
    fn gamma_to_the_p_is_alpha() {
        for p in [2, 3, 5] {
            let g = TowerElement::gamma(p);
            assert_eq!(g.pow(p), TowerElement::alpha(p));
            let x = g.add(&TowerElement::alpha(p)).add(&TowerElement::constant(p, 1));
            assert!(x.mul(&x.inv().unwrap()).is_one());
        }
    }
}
