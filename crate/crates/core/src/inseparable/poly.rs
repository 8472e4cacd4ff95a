use std::fmt;

use super::field::{write_terms, FieldElement, TowerElement};

/// A univariate polynomial over a field, coefficients from low to high
/// degree with no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly<F> {
    coeffs: Vec<F>,
    zero: F,
}

/// A polynomial in `W = Z^r` over `F_p(α)(γ)`.
pub type WPolynomial = Poly<TowerElement>;

impl<F: FieldElement> Poly<F> {
    /// `zero` fixes the coefficient field.
    pub fn new(coeffs: Vec<F>, zero: &F) -> Self {
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs, zero: zero.zero_like() }
    }

    pub fn zero(field: &F) -> Self {
        Self::new(Vec::new(), field)
    }

    pub fn constant(c: F) -> Self {
        let zero = c.zero_like();
        Self::new(vec![c], &zero)
    }

    /// `c·Xᵏ`.
    pub fn monomial(c: F, k: usize) -> Self {
        let zero = c.zero_like();
        let mut coeffs = vec![zero.clone(); k];
        coeffs.push(c);
        Self::new(coeffs, &zero)
    }

    /// The variable.
    pub fn variable(field: &F) -> Self {
        Self::monomial(field.one_like(), 1)
    }

    pub fn coefficients(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Zero or of degree 0.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn field_zero(&self) -> &F {
        &self.zero
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect(), &self.zero)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(F::neg).collect(), &self.zero)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.mul(c)).collect(), &self.zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.zero);
        }
        let mut out = vec![self.zero.clone(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out, &self.zero)
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(self.zero.one_like());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// `None` on division by zero.
    pub fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let lead_inv = d.leading().inv()?;
        let mut r = self.coeffs.clone();
        let mut q = vec![self.zero.clone(); self.coeffs.len().saturating_sub(dd)];
        while r.len() > dd {
            let k = r.len() - 1 - dd;
            let c = r.last().unwrap().mul(&lead_inv);
            for (i, b) in d.coeffs.iter().enumerate() {
                r[k + i] = r[k + i].sub(&c.mul(b));
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        Some((Self::new(q, &self.zero), Self::new(r, &self.zero)))
    }

    pub fn monic(&self) -> Self {
        match self.leading().inv() {
            Some(s) => self.scale(&s),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `f(g(X))`.
    pub fn compose(&self, g: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(&self.zero), |acc, c| acc.mul(g).add(&Self::constant(c.clone())))
    }

    /// Formal derivative `d/dX`.
    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.mul(&c.from_int(i as i64))).collect(),
            &self.zero,
        )
    }
}

impl<F: FieldElement + fmt::Display> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |c: &F| {
            let s = c.to_string();
            if s.contains(' ') {
                format!("({s})")
            } else {
                s
            }
        };
        write_terms(f, self.coeffs.iter().map(wrap), "W")
    }
}

impl<F: FieldElement + fmt::Display> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
