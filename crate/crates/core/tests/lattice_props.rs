use proptest::prelude::*;

use prodxform_core::lattice::*;
use prodxform_core::{Float, PrecisionContext};

fn families() -> [Family; 5] {
    [Family::Half, Family::Interior, Family::Mult, Family::Dispersion, Family::Even]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn back_substitution(n in 1u32..=32, m in 1u32..=32, t in 0.0f64..3.0, which in 0usize..5) {
        let ctx = PrecisionContext::default();
        let family = families()[which];
        let x = Float::with_val(256, family.x_min() as f64 + t);
        let sol = solve_spectrum(&LatticeSpec::new(n, m, x, family).unwrap(), &ctx).unwrap();
        prop_assert!(sol.back_substitution_residual() < ctx.exact_tol());
        prop_assert!(sol.alphas.iter().chain(&sol.betas).all(|a| *a >= 0u32));
    }

    #[test]
    fn reciprocities_hold_and_swap(n in 1u32..=12, m in 1u32..=12, t in 0.01f64..2.0) {
        let ctx = PrecisionContext::default();
        let x = Float::with_val(256, 2.0 + t);
        type Rec = fn(u32, u32, &Float, &PrecisionContext) -> prodxform_core::Result<prodxform_core::transforms::IdentityPair>;
        let recs: [Rec; 5] = [reciprocity_10, reciprocity_11, reciprocity_12, reciprocity_13, reciprocity_14];
        for rec in recs {
            let a = rec(n, m, &x, &ctx).unwrap();
            let b = rec(m, n, &x, &ctx).unwrap();
            prop_assert!(a.rel_residual() < ctx.exact_tol(), "{} ({n},{m}) {}", a.identity_id, a.rel_residual().to_f64());
            prop_assert_eq!(&a.lhs.value, &b.rhs.value);
            prop_assert_eq!(&a.rhs.value, &b.lhs.value);
        }
    }

    #[test]
    fn lemmas_close(m in 1u32..=16, alpha in -3.0f64..3.0, y in -4.0f64..4.0) {
        let ctx = PrecisionContext::default();
        let a = Float::with_val(256, alpha);
        let tol = ctx.exact_tol();
        prop_assert!(cos_product_lemma(m, &a, &ctx).unwrap().rel_residual() < tol);
        prop_assert!(cos_half_angle_product(m, &ctx).unwrap().rel_residual() < tol);
        if m >= 2 && alpha.abs() > 1e-3 {
            prop_assert!(sin_product_lemma(m, &a, &ctx).unwrap().rel_residual() < tol);
        }
        let p = shifted_cos_product_lemma(m, &a, &Float::with_val(256, y), &ctx).unwrap();
        // relative once the right side is away from zero
        prop_assert!(p.rel_residual() < 1e-60 || p.abs_residual() < 1e-70);
    }
}

#[test]
fn half_family_triple_oracle() {
    let ctx = PrecisionContext::default();
    let (n, m) = (3u32, 4u32);
    let x = Float::with_val(256, 2.8);
    let p = reciprocity_10(n, m, &x, &ctx).unwrap();
    let mut d = Float::with_val(320, 1u32);
    let pi = Float::with_val(320, rug::float::Constant::Pi);
    for j in 1..=n {
        for k in 1..=m {
            let a = (Float::with_val(320, &pi * (2 * j - 1)) / (2 * n)).cos();
            let b = (Float::with_val(320, &pi * (2 * k - 1)) / (2 * m)).cos();
            d *= Float::with_val(320, &x - a) - b;
        }
    }
    d <<= n * m;
    let rel = (Float::with_val(320, &p.lhs.value - &d) / &d).abs();
    assert!(rel < 1e-60);
}
