use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use segre_core::eddeg::{frobenius_ed_degree, generic_ed_degree, stabilization_onset};
use segre_core::exact::rational::derivative_closed_form;
use segre_core::hyperdet::{gkz_denominator, hyperdet_degree, sv_hyperdet_degree};
use segre_core::matrix::matrix_ed_polynomial;
use segre_core::polar::{
    chern_data_product, chern_data_projective_space_product, chern_data_smooth_hypersurface,
    delta0_product_with_hypersurface, dual_profile, polar_class, wz_hypersurface_expected,
};
use segre_core::{rational_derivative_eval, series_inverse_square, Exponent, Format, RationalMatrix, TruncatedPoly};

fn poly_strategy(caps: Vec<u32>) -> impl Strategy<Value = TruncatedPoly> {
    let exps = caps.clone();
    let term = (
        exps.iter().map(|&c| 0..=c).collect::<Vec<_>>(),
        -20i64..=20,
    );
    prop::collection::vec(term, 0..8).prop_map(move |terms| {
        TruncatedPoly::from_terms(&caps, terms.into_iter().map(|(e, c)| (Exponent::new(e), BigInt::from(c))))
            .unwrap()
    })
}

fn caps_strategy() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..=3, 1..=3)
}

fn triple() -> impl Strategy<Value = (TruncatedPoly, TruncatedPoly, TruncatedPoly)> {
    caps_strategy().prop_flat_map(|caps| (poly_strategy(caps.clone()), poly_strategy(caps.clone()), poly_strategy(caps)))
}

fn dims_strategy(max_d: usize, max_n: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..=max_n, 1..=max_d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((a, b, c) in triple()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        for (e, v) in (&a * &b).terms() {
            prop_assert!(!v.is_zero());
            prop_assert!(e.fits(a.caps()));
        }
    }

    #[test]
    fn inverse_square_is_two_sided(caps in prop::collection::vec(0u32..=6, 1..=4), omega in 1i64..=3) {
        let h = gkz_denominator(&caps, omega);
        let inv = series_inverse_square(&h).unwrap();
        let hh = &h * &h;
        prop_assert_eq!(&inv * &hh, TruncatedPoly::one(&caps));
        prop_assert_eq!(&hh * &inv, TruncatedPoly::one(&caps));
    }

    #[test]
    fn frobenius_is_symmetric(dims in dims_strategy(4, 3), seed in any::<u64>()) {
        let mut perm = dims.clone();
        // deterministic shuffle from the seed
        let n = perm.len();
        for i in (1..n).rev() {
            let j = (seed.rotate_left(i as u32) % (i as u64 + 1)) as usize;
            perm.swap(i, j);
        }
        let a = frobenius_ed_degree(&Format::new(dims).unwrap()).unwrap();
        let b = frobenius_ed_degree(&Format::new(perm).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn hyperdet_is_symmetric(dims in dims_strategy(4, 3)) {
        let mut rev = dims.clone();
        rev.reverse();
        prop_assert_eq!(
            hyperdet_degree(&Format::new(dims).unwrap()).unwrap(),
            hyperdet_degree(&Format::new(rev).unwrap()).unwrap()
        );
    }

    #[test]
    fn matrix_constant_term(rows in 1usize..=3, extra in 0usize..=2, raw in prop::collection::vec((-6i64..=6, 1i64..=4), 15)) {
        let cols = rows + extra;
        let entries: Vec<BigRational> = raw.iter().take(rows * cols)
            .map(|&(n, d)| BigRational::new(n.into(), d.into())).collect();
        let t = RationalMatrix::new(rows, cols, entries).unwrap();
        let poly = matrix_ed_polynomial(&t);
        prop_assert_eq!(poly.len(), rows + 1);
        let sign = if rows % 2 == 0 { BigRational::one() } else { -BigRational::one() };
        prop_assert_eq!(poly[rows].clone(), sign);
        let gram_det = t.gram().determinant().unwrap();
        prop_assert_eq!(poly[0].clone(), gram_det.clone());
        if extra == 0 {
            let det = t.determinant().unwrap();
            prop_assert_eq!(gram_det, &det * &det);
        }
    }
}

#[test]
fn partials_have_closed_form() {
    for d in 3..=8usize {
        for mask in 1u32..(1 << d) {
            let idx: Vec<usize> = (0..d).filter(|&i| mask >> i & 1 == 1).collect();
            assert_eq!(rational_derivative_eval(d, &idx).unwrap(), derivative_closed_form(d, idx.len()), "d={d} {idx:?}");
        }
    }
}

#[test]
fn weight_one_is_plain_hyperdet() {
    for d in 1..=4 {
        for dims in all_dims(d, 10) {
            let f = Format::new(dims).unwrap();
            assert_eq!(sv_hyperdet_degree(&f, 1).unwrap(), hyperdet_degree(&f).unwrap());
        }
    }
}

#[test]
fn discriminant_of_veronese() {
    for n in 0..=8u32 {
        for w in 1..=5u32 {
            let f = Format::new(vec![n]).unwrap();
            let want = BigInt::from(n + 1) * BigInt::from(w as i64 - 1).pow(n);
            assert_eq!(sv_hyperdet_degree(&f, w).unwrap(), want, "n={n} w={w}");
            let v = Format::with_weights(vec![n], vec![w]).unwrap();
            let gen = (BigInt::from(2 * w - 1).pow(n + 1) - BigInt::from(w - 1).pow(n + 1)) / w;
            assert_eq!(generic_ed_degree(&v).unwrap(), gen);
        }
    }
}

#[test]
fn factorial_and_eckart_young() {
    let mut fact = BigInt::one();
    for d in 1..=7u32 {
        fact *= d;
        assert_eq!(frobenius_ed_degree(&Format::cube(1, d as usize).unwrap()).unwrap(), fact);
    }
    for n in 0..=10 {
        assert_eq!(frobenius_ed_degree(&Format::new(vec![n, n]).unwrap()).unwrap(), BigInt::from(n + 1));
    }
    for n in 1..=20u32 {
        assert_eq!(generic_ed_degree(&Format::new(vec![1, n]).unwrap()).unwrap(), BigInt::from(4 * n + 2));
    }
}

fn all_dims(d: usize, max_sum: u32) -> Vec<Vec<u32>> {
    fn go(d: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for n in 0..=left {
            cur.push(n);
            go(d, left - n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, max_sum, &mut Vec::new(), &mut out);
    out
}

fn positive_sorted(max_sum: u32) -> Vec<Vec<u32>> {
    all_dims_up_to(max_sum)
        .into_iter()
        .filter(|v| v.windows(2).all(|w| w[0] >= w[1]) && v.iter().all(|&x| x > 0))
        .collect()
}

fn all_dims_up_to(max_sum: u32) -> Vec<Vec<u32>> {
    (1..=max_sum as usize).flat_map(|d| all_dims(d, max_sum)).collect()
}

#[test]
fn polar_classes_are_nonnegative() {
    for dims in positive_sorted(8) {
        let cd = chern_data_projective_space_product(&Format::new(dims.clone()).unwrap()).unwrap();
        for i in 0..=cd.dim() {
            assert!(!polar_class(&cd, i).unwrap().is_negative(), "{dims:?} delta_{i}");
        }
    }
}

#[test]
fn stabilization_holds_past_boundary() {
    for dims in positive_sorted(7) {
        let f = Format::new(dims.clone()).unwrap();
        let n = f.total_dim().unwrap();
        stabilization_onset(&f, n + 3).unwrap_or_else(|e| panic!("{dims:?}: {e}"));
    }
}

#[test]
fn wz_gate_matches_delta0() {
    for dims in positive_sorted(5) {
        let f = Format::new(dims.clone()).unwrap();
        let x = chern_data_projective_space_product(&f).unwrap();
        let profile = dual_profile(&x);
        let threshold = profile.dual_codim.saturating_sub(1);
        for n in threshold.saturating_sub(2)..=threshold + 2 {
            let q = chern_data_smooth_hypersurface(n, 2).unwrap();
            let prod = dual_profile(&chern_data_product(&x, &q).unwrap());
            assert_eq!(!prod.delta0().is_zero(), wz_hypersurface_expected(&profile, n), "{dims:?} n={n}");
        }
    }
}

#[test]
fn shortcut_matches_full_product() {
    let xs: Vec<Vec<u32>> = vec![vec![1], vec![2], vec![3], vec![1, 1], vec![2, 1], vec![1, 1, 1]];
    for dims in xs {
        let x = chern_data_projective_space_product(&Format::new(dims.clone()).unwrap()).unwrap();
        let m = x.dim();
        let mut stable: Option<BigInt> = None;
        for n in 0..=5 {
            for deg in [2u32, 3] {
                let y = chern_data_smooth_hypersurface(n, deg).unwrap();
                let full = dual_profile(&chern_data_product(&x, &y).unwrap()).delta0().clone();
                let short = delta0_product_with_hypersurface(&x, n, deg).unwrap();
                assert_eq!(full, short, "{dims:?} n={n} deg={deg}");
                if deg == 2 && n >= m {
                    let s = stable.get_or_insert_with(|| full.clone());
                    assert_eq!(&full, s, "{dims:?} n={n}");
                }
            }
        }
    }
}
