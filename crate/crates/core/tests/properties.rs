use proptest::prelude::*;

use pickernel::inseparable::{delta, log_derivative, FieldElement, PrimePoly, RationalFunction, TowerElement, WPolynomial};
use pickernel::integer::Integer;
use pickernel::picard::{pic_torsion, FieldDescriptor, PicDescription};
use pickernel::zlattice::{smith_normal_form, FgAbelianGroup, IntMatrix};

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-20i64..=20, c), r)
            .prop_map(move |rows| IntMatrix::from_i64_rows(c, &rows))
    })
}

fn rational(p: u64) -> impl Strategy<Value = RationalFunction> {
    (prop::collection::vec(0i64..p as i64, 1..=3), prop::collection::vec(0i64..p as i64, 0..=2)).prop_map(
        move |(num, mut den)| {
            den.push(1);
            RationalFunction::new(PrimePoly::new(p, &num), PrimePoly::new(p, &den)).expect("monic denominator")
        },
    )
}

fn tower(p: u64) -> impl Strategy<Value = TowerElement> {
    prop::collection::vec(rational(p), p as usize).prop_map(move |c| TowerElement::new(p, c).expect("p coordinates"))
}

/// Monic of degree at most 2, with coefficients in `F_p[γ]`.
fn w_poly(p: u64) -> impl Strategy<Value = WPolynomial> {
    let coeff = prop::collection::vec(0i64..p as i64, p as usize).prop_map(move |c| {
        let coords = c.iter().map(|&x| RationalFunction::constant(p, x)).collect();
        TowerElement::new(p, coords).expect("p coordinates")
    });
    prop::collection::vec(coeff, 1..=2).prop_map(move |mut c| {
        c.push(TowerElement::constant(p, 1));
        WPolynomial::new(c, &TowerElement::constant(p, 0))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn smith_form_is_a_unimodular_diagonalization(m in matrix()) {
        let snf = smith_normal_form(&m);
        prop_assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d.clone());
        prop_assert!(snf.u.determinant().abs().is_one());
        prop_assert!(snf.v.determinant().abs().is_one());
        prop_assert_eq!(snf.v.mul(&snf.v_inv), IntMatrix::identity(m.cols()));
        let diag = snf.diagonal();
        prop_assert!(diag.iter().all(|d| !d.is_negative()));
        prop_assert!(diag.windows(2).all(|w| w[0].divides(&w[1])));
        prop_assert_eq!(diag.iter().filter(|d| !d.is_zero()).count(), snf.rank);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn delta_is_a_derivation(x in tower(3), y in tower(3)) {
        prop_assert_eq!(delta(&x.mul(&y)), delta(&x).mul(&y).add(&x.mul(&delta(&y))));
        prop_assert_eq!(delta(&x.add(&y)), delta(&x).add(&delta(&y)));
    }

    #[test]
    fn delta_kills_pth_powers(x in tower(2)) {
        prop_assert!(delta(&x.pow(2)).is_zero());
    }

    #[test]
    fn log_derivative_is_additive(f in w_poly(3), g in w_poly(3)) {
        let q = 3;
        let (nf, df) = log_derivative(&f, q).unwrap();
        let (ng, dg) = log_derivative(&g, q).unwrap();
        let (nfg, dfg) = log_derivative(&f.mul(&g), q).unwrap();
        // nf/df + ng/dg = nfg/dfg
        prop_assert_eq!(nf.mul(&dg).add(&ng.mul(&df)).mul(&dfg), nfg.mul(&df).mul(&dg));
    }

    #[test]
    fn torsion_grows_along_divisibility(n in 1u64..=60, k in 1u64..=6, which in 0usize..4) {
        let desc = match which {
            0 => PicDescription::RationalsModZ,
            1 => PicDescription::PrimaryDivisibleSum { primes: vec![2, 3] },
            2 => PicDescription::AdditiveGroupOfField { field: FieldDescriptor::finite(9).unwrap() },
            _ => PicDescription::Finite { group: FgAbelianGroup::cyclic(12).direct_sum(&FgAbelianGroup::cyclic(2)) },
        };
        let small = pic_torsion(&desc, n).unwrap().order().unwrap();
        let large = pic_torsion(&desc, n * k).unwrap().order().unwrap();
        prop_assert!(small.divides(&large));
        prop_assert!(pic_torsion(&desc, n).unwrap().annihilated_by(&Integer::from(n)));
    }
}
