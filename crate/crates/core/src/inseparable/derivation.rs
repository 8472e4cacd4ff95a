use super::field::{FieldElement, TowerElement};
use super::poly::WPolynomial;
use super::{check_prime_power, InseparableError, MAX_W_DEGREE};

/// `δ(Σ cᵢγⁱ) = Σ i·cᵢ·γⁱ`: the derivation with `δ(k) = 0`, `δ(γ) = γ`.
pub fn delta(e: &TowerElement) -> TowerElement {
    let p = e.characteristic();
    let coords = e.coordinates().iter().enumerate().map(|(i, c)| c.mul(&c.from_int(i as i64))).collect();
    TowerElement::new(p, coords).expect("same length")
}

/// Extends [`delta`] to `E[W]` by `δ(W) = W − W^q`.
pub fn delta_w(f: &WPolynomial, q: u64) -> Result<WPolynomial, InseparableError> {
    let p = f.field_zero().characteristic();
    check_prime_power(p, q)?;
    if let Some(d) = f.degree() {
        let out = d + q as usize - 1;
        if out > MAX_W_DEGREE {
            return Err(InseparableError::DegreeGuard { degree: out });
        }
    }
    let zero = f.field_zero();
    let coeffs: Vec<TowerElement> = f.coefficients().iter().map(delta).collect();
    let w = WPolynomial::variable(zero);
    let dw = w.sub(&w.pow(q));
    // Σ δ(a_j)·Wʲ + (Σ j·a_j·W^{j−1})·δ(W)
    Ok(WPolynomial::new(coeffs, zero).add(&f.derivative().mul(&dw)))
}

/// `Δ(f) = δ(f)/f` as a reduced fraction with monic denominator.
pub fn log_derivative(f: &WPolynomial, q: u64) -> Result<(WPolynomial, WPolynomial), InseparableError> {
    if f.is_zero() {
        return Err(InseparableError::ZeroInput);
    }
    let df = delta_w(f, q)?;
    let g = df.gcd(f);
    let (num, _) = df.div_rem(&g).expect("gcd of a nonzero polynomial");
    let (den, _) = f.div_rem(&g).expect("gcd of a nonzero polynomial");
    let lead = den.leading().inv().expect("nonzero denominator");
    Ok((num.scale(&lead), den.scale(&lead)))
}
