use serde::Serialize;

use super::derivation::{delta, log_derivative};
use super::field::{FieldElement, PrimePoly, RationalFunction, TowerElement};
use super::poly::{Poly, WPolynomial};
use super::{check_q, delta_w, InseparableError};

/// `f(α) ↦ f(b^q)`.
fn substitute_alpha(f: &PrimePoly, q: u64) -> PrimePoly {
    let p = f.characteristic();
    let mut coeffs = vec![0i64; f.degree().map_or(0, |d| d * q as usize + 1)];
    for (j, &c) in f.coefficients().iter().enumerate() {
        coeffs[j * q as usize] = c as i64;
    }
    PrimePoly::new(p, &coeffs)
}

/// The embedding `F_p(α)(γ) → F_p(b)`, `α ↦ b^q`, `γ ↦ b^r`.
fn embed(e: &TowerElement, q: u64, r: u64) -> RationalFunction {
    let p = e.characteristic();
    let b = RationalFunction::alpha(p);
    e.coordinates().iter().enumerate().fold(RationalFunction::constant(p, 0), |acc, (i, c)| {
        let num = substitute_alpha(c.numerator(), q);
        let den = substitute_alpha(c.denominator(), q);
        let c = RationalFunction::new(num, den).expect("nonzero denominator");
        acc.add(&c.mul(&b.pow(r * i as u64)))
    })
}

/// The polynomial identities behind `δ(W) = W − W^q`, checked in
/// `F_p(b)[Z]` with `β = b`, `γ = b^r`, `α = b^q`, `x = Z^q` and
/// `y = (Z^q − Z)/b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WIdentityCheck {
    /// `x − βy = Z`.
    pub z_recovered: bool,
    /// `x^r − γy^r = Z^r`.
    pub w_expansion: bool,
    /// `γy^r = Z^{rq} − Z^r`.
    pub gamma_y: bool,
    /// `δ(W) = −γy^r`, from `δx = δy = 0` and `δγ = γ`, equals the rule
    /// `W − W^q` of `E[W]` under `W ↦ Z^r`.
    pub delta_rule: bool,
}

impl WIdentityCheck {
    pub fn all(&self) -> bool {
        self.z_recovered && self.w_expansion && self.gamma_y && self.delta_rule
    }
}

pub fn check_w_identities(p: u64, q: u64) -> Result<WIdentityCheck, InseparableError> {
    let r = check_q(p, q)?;
    let b = RationalFunction::alpha(p);
    let zero = b.zero_like();
    let gamma = b.pow(r);
    let z = Poly::variable(&zero);
    let x = z.pow(q);
    let y = x.sub(&z).scale(&b.inv().expect("b ≠ 0"));
    let w = z.pow(r);
    let gamma_y_r = y.pow(r).scale(&gamma);
    let tower_zero = TowerElement::constant(p, 0);
    let rule = delta_w(&WPolynomial::variable(&tower_zero), q)?;
    let rule_in_z = Poly::new(rule.coefficients().iter().map(|c| embed(c, q, r)).collect(), &zero).compose(&w);
    Ok(WIdentityCheck {
        z_recovered: x.sub(&y.scale(&b)) == z,
        w_expansion: x.pow(r).sub(&gamma_y_r) == w,
        gamma_y: gamma_y_r == z.pow(r * q).sub(&w),
        delta_rule: gamma_y_r.neg() == rule_in_z,
    })
}

/// Whether every identity of [`check_w_identities`] holds exactly.
pub fn verify_w_identities(p: u64, q: u64) -> Result<bool, InseparableError> {
    Ok(check_w_identities(p, q)?.all())
}

/// `Δ(W − c₁^r) − Δ(W − c₂^r)`.
#[derive(Clone, Debug)]
pub struct Separation {
    pub log_derivatives: [WPolynomial; 2],
    pub difference: WPolynomial,
    pub w_degree: usize,
    /// `r · w_degree`, the degree in `Z = W^{1/r}`.
    pub z_degree: usize,
    pub nonconstant: bool,
}

pub fn class_separator(p: u64, q: u64, c1: &TowerElement, c2: &TowerElement) -> Result<Separation, InseparableError> {
    let r = check_q(p, q)?;
    for c in [c1, c2] {
        if c.characteristic() != p {
            return Err(InseparableError::CharacteristicMismatch { expected: p, found: c.characteristic() });
        }
    }
    if c1 == c2 {
        return Err(InseparableError::EqualInputs);
    }
    let zero = TowerElement::constant(p, 0);
    let w = WPolynomial::variable(&zero);
    let mut logs = Vec::with_capacity(2);
    for c in [c1, c2] {
        let cr = c.pow(r);
        if delta(&cr) != cr.sub(&cr.pow(q)) {
            return Err(InseparableError::Precondition(c.to_string()));
        }
        let (num, den) = log_derivative(&w.sub(&WPolynomial::constant(cr)), q)?;
        if !den.is_constant() {
            return Err(InseparableError::NotPolynomial);
        }
        logs.push(num.scale(&den.leading().inv().expect("monic")));
    }
    let difference = logs[0].sub(&logs[1]);
    let w_degree = difference.degree().unwrap_or(0);
    Ok(Separation {
        nonconstant: !difference.is_constant(),
        difference,
        w_degree,
        z_degree: r as usize * w_degree,
        log_derivatives: [logs[0].clone(), logs[1].clone()],
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SamuelVerdict {
    NotIsomorphic,
    Inconclusive,
}

/// `M₁ ≅ M₂` iff `Δ(b₁) − Δ(b₂) ∈ Δ(B*)`. With unit log-derivatives
/// asserted constant, a nonconstant difference rules out isomorphism;
/// anything else is left undecided.
pub fn samuel_criterion(
    b1_delta: &WPolynomial,
    b2_delta: &WPolynomial,
    unit_log_derivatives_constant: bool,
) -> SamuelVerdict {
    if unit_log_derivatives_constant && !b1_delta.sub(b2_delta).is_constant() {
        SamuelVerdict::NotIsomorphic
    } else {
        SamuelVerdict::Inconclusive
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairSeparation {
    pub c1: u64,
    pub c2: u64,
    pub w_degree: usize,
    pub z_degree: usize,
    pub verdict: SamuelVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeskScaleReport {
    pub p: u64,
    pub q: u64,
    pub r: u64,
    pub pairs: Vec<PairSeparation>,
    pub class_count: usize,
}

/// Separates the classes `M(a)^r`, `a ∈ F_p`, pairwise.
pub fn desk_scale_report(p: u64, q: u64) -> Result<DeskScaleReport, InseparableError> {
    let r = check_q(p, q)?;
    let mut label: Vec<u64> = (0..p).collect();
    let mut pairs = Vec::new();
    for a in 0..p {
        for b in a + 1..p {
            let s = class_separator(p, q, &TowerElement::constant(p, a as i64), &TowerElement::constant(p, b as i64))?;
            let verdict = samuel_criterion(&s.log_derivatives[0], &s.log_derivatives[1], true);
            if verdict == SamuelVerdict::Inconclusive {
                let (from, to) = (label[b as usize], label[a as usize]);
                label.iter_mut().filter(|l| **l == from).for_each(|l| *l = to);
            }
            pairs.push(PairSeparation { c1: a, c2: b, w_degree: s.w_degree, z_degree: s.z_degree, verdict });
        }
    }
    label.sort_unstable();
    label.dedup();
    Ok(DeskScaleReport { p, q, r, pairs, class_count: label.len() })
}

pub fn desk_scale_class_count(p: u64, q: u64) -> Result<usize, InseparableError> {
    Ok(desk_scale_report(p, q)?.class_count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(p: u64, c: i64) -> TowerElement {
        TowerElement::constant(p, c)
    }

    #[test]
    fn identities_hold() {
        for (p, q) in [(3, 3), (2, 4), (5, 5), (3, 9), (2, 8)] {
            let check = check_w_identities(p, q).unwrap();
            assert!(check.all(), "{p} {q}: {check:?}");
        }
        assert_eq!(verify_w_identities(3, 2), Err(InseparableError::QTooSmall { q: 2 }));
        assert_eq!(verify_w_identities(2, 2), Err(InseparableError::QTooSmall { q: 2 }));
        assert!(matches!(verify_w_identities(3, 27), Err(InseparableError::QGuard { .. })));
        assert!(matches!(verify_w_identities(3, 4), Err(InseparableError::NotPowerOfP { .. })));
        assert!(matches!(verify_w_identities(4, 16), Err(InseparableError::NotPrime { .. })));
    }

    #[test]
    fn embedding_respects_the_tower() {
        let (p, q, r) = (3, 9, 3);
        let g = TowerElement::gamma(p);
        assert_eq!(embed(&g.pow(p), q, r), embed(&TowerElement::alpha(p), q, r));
        let x = g.add(&TowerElement::alpha(p).inv().unwrap());
        let y = g.mul(&g).add(&k(p, 2));
        assert_eq!(embed(&x.mul(&y), q, r), embed(&x, q, r).mul(&embed(&y, q, r)));
    }

    #[test]
    fn separator_examples() {
        let s = class_separator(3, 3, &k(3, 0), &k(3, 1)).unwrap();
        assert!(s.nonconstant);
        assert_eq!((s.w_degree, s.z_degree), (1, 1));
        let s = class_separator(3, 9, &k(3, 0), &k(3, 2)).unwrap();
        assert_eq!((s.w_degree, s.z_degree), (7, 21));
        let s = class_separator(5, 5, &k(5, 1), &k(5, 3)).unwrap();
        assert_eq!((s.w_degree, s.z_degree), (3, 3));
        assert_eq!(class_separator(3, 3, &k(3, 1), &k(3, 1)).unwrap_err(), InseparableError::EqualInputs);
        let g = TowerElement::gamma(3);
        assert!(matches!(class_separator(3, 3, &g, &k(3, 1)), Err(InseparableError::Precondition(_))));
    }

    #[test]
    fn closed_form_of_log_derivative() {
        for (p, q) in [(2, 4), (3, 3), (3, 9), (5, 5)] {
            let r = q / p;
            let zero = k(p, 0);
            let w = WPolynomial::variable(&zero);
            for c in 0..p as i64 {
                let f = w.sub(&WPolynomial::constant(k(p, c).pow(r)));
                let (num, den) = log_derivative(&f, q).unwrap();
                assert!(den.is_constant() && den.leading().is_one());
                assert_eq!(num, WPolynomial::constant(k(p, 1)).sub(&f.pow(q - 1)));
            }
        }
    }

    #[test]
    fn samuel_verdicts() {
        let zero = k(3, 0);
        let w = WPolynomial::variable(&zero);
        let one = WPolynomial::constant(k(3, 1));
        assert_eq!(samuel_criterion(&w, &one, true), SamuelVerdict::NotIsomorphic);
        assert_eq!(samuel_criterion(&w, &w, true), SamuelVerdict::Inconclusive);
        assert_eq!(samuel_criterion(&one, &WPolynomial::zero(&zero), true), SamuelVerdict::Inconclusive);
        assert_eq!(samuel_criterion(&w, &one, false), SamuelVerdict::Inconclusive);
    }

    #[test]
    fn class_counts() {
        for (p, q) in [(3, 3), (5, 5), (2, 4), (3, 9)] {
            let report = desk_scale_report(p, q).unwrap();
            assert_eq!(report.class_count, p as usize);
            assert_eq!(report.pairs.len(), (p * (p - 1) / 2) as usize);
            assert!(report.pairs.iter().all(|s| s.z_degree == (report.r * (q - 2)) as usize));
        }
    }
}
