use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sdmap_core::exact::{poly_gcd, q, rational_roots, Polynomial, Rational, RationalFunction};
use sdmap_core::fields::{
    qpi_endomorphism, qpi_in_image, quad_conj, Field, FunctionField, ImageMembership, PrimeField, QuadraticField,
    RationalField, SampleField,
};
use sdmap_core::sd::{check_sd, sd_residual, Identity, QpiMap};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=20).prop_map(|(n, d)| q(n, d))
}

fn small_poly(max_deg: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(-6i64..=6, 0..=max_deg + 1).prop_map(|c| Polynomial::from_ints(&c))
}

fn nonzero_poly(max_deg: usize) -> impl Strategy<Value = Polynomial> {
    small_poly(max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

fn small_rf() -> impl Strategy<Value = RationalFunction> {
    (small_poly(3), nonzero_poly(2)).prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
}

fn axioms<F: SampleField>(field: &F, seed: u64, n: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..n {
        let (a, b, c) = (field.sample(&mut rng), field.sample(&mut rng), field.sample(&mut rng));
        let eq = |x: &F::Elem, y: &F::Elem| assert!(field.eq(x, y), "{} vs {} in {}", x, y, field.name());
        eq(&field.add(&a, &b), &field.add(&b, &a));
        eq(&field.mul(&a, &b), &field.mul(&b, &a));
        eq(&field.add(&field.add(&a, &b), &c), &field.add(&a, &field.add(&b, &c)));
        eq(&field.mul(&field.mul(&a, &b), &c), &field.mul(&a, &field.mul(&b, &c)));
        eq(&field.mul(&a, &field.add(&b, &c)), &field.add(&field.mul(&a, &b), &field.mul(&a, &c)));
        eq(&field.add(&a, &field.zero()), &a);
        eq(&field.mul(&a, &field.one()), &a);
        eq(&field.add(&a, &field.neg(&a)), &field.zero());
        eq(&field.sub(&a, &b), &field.add(&a, &field.neg(&b)));
        if !field.is_zero(&a) {
            eq(&field.mul(&a, &field.inv(&a).unwrap()), &field.one());
            eq(&field.mul(&field.div(&b, &a).unwrap(), &a), &b);
        } else {
            assert!(field.inv(&a).is_err());
        }
    }
}

#[test]
fn field_axioms_on_exact_carriers() {
    axioms(&RationalField::default(), 1, 1000);
    for d in [2, -1, -3, 5] {
        axioms(&QuadraticField::new(q(d, 1)).unwrap(), 2, 1000);
    }
    for p in [3, 5, 7, 101, 10007] {
        axioms(&PrimeField::new(p).unwrap(), 3, 1000);
    }
    axioms(&FunctionField::default(), 4, 1000);
}

#[test]
fn norm_is_multiplicative_and_conjugation_is_a_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for d in [2, -1, -3, 5] {
        let f = QuadraticField::new(q(d, 1)).unwrap();
        for _ in 0..1000 {
            let (z, w) = (f.sample(&mut rng), f.sample(&mut rng));
            let zw = f.mul(&z, &w);
            assert_eq!(zw.norm(), &z.norm() * &w.norm());
            assert_eq!(f.mul(&z, &quad_conj(&z)), f.elem(z.norm(), Rational::zero()));
            assert_eq!(quad_conj(&zw), f.mul(&quad_conj(&z), &quad_conj(&w)));
            assert_eq!(quad_conj(&f.add(&z, &w)), f.add(&quad_conj(&z), &quad_conj(&w)));
            assert_eq!(quad_conj(&quad_conj(&z)), z);
        }
    }
}

#[test]
fn qpi_maps_pass_the_equation() {
    let field = FunctionField::default();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let pairs = sdmap_core::fields::sample_pairs(&field, &mut rng, 200);
    for k in [2, 3] {
        assert!(check_sd(&field, &QpiMap { k }, &pairs).unwrap().passed());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rational_display_roundtrip(r in small_rational()) {
        let back: Rational = r.to_string().parse().unwrap();
        prop_assert_eq!(back, r);
    }

    #[test]
    fn gcd_is_monic_common_divisor(a in small_poly(4), b in small_poly(4), c in nonzero_poly(2)) {
        prop_assume!(!a.is_zero() || !b.is_zero());
        let (a, b) = (&a * &c, &b * &c);
        let g = poly_gcd(&a, &b).unwrap();
        prop_assert!(g.leading_coeff().unwrap().is_one());
        prop_assert!(a.exact_div(&g).unwrap().is_some());
        prop_assert!(b.exact_div(&g).unwrap().is_some());
        // the common factor survives
        prop_assert!(g.exact_div(&c.monic()).unwrap().is_some());
    }

    #[test]
    fn constructed_roots_are_found(roots in prop::collection::vec((-6i64..=6, 1i64..=3), 1..4)) {
        let mut p = Polynomial::one();
        for (n, d) in &roots {
            p = &p * &Polynomial::from_coeffs(vec![q(-n, *d), Rational::one()]);
        }
        let found = rational_roots(&p).unwrap();
        let mut expected: Vec<Rational> = roots.iter().map(|(n, d)| q(*n, *d)).collect();
        expected.sort();
        let mut flat: Vec<Rational> = found.iter().flat_map(|(r, m)| std::iter::repeat_n(r.clone(), *m)).collect();
        flat.sort();
        prop_assert_eq!(flat, expected);
        for (r, _) in &found {
            prop_assert!(p.eval(r).is_zero());
        }
    }

    #[test]
    fn canonical_form_is_idempotent(f in small_rf()) {
        let again = RationalFunction::new(f.num().clone(), f.den().clone()).unwrap();
        prop_assert_eq!(&again, &f);
        prop_assert!(f.den().leading_coeff().unwrap().is_one());
        if !f.num().is_zero() {
            prop_assert!(poly_gcd(f.num(), f.den()).unwrap().is_one());
        }
        let parsed: RationalFunction = f.to_string().parse().unwrap();
        prop_assert_eq!(parsed, f);
    }

    #[test]
    fn qpi_is_injective_multiplicative_and_lands_in_image(
        g in small_rf(), h in small_rf(), k in 2usize..=4,
    ) {
        let fg = qpi_endomorphism(k, &g).unwrap();
        let fh = qpi_endomorphism(k, &h).unwrap();
        prop_assert_eq!(qpi_endomorphism(k, &(&g * &h)).unwrap(), &fg * &fh);
        prop_assert_eq!(qpi_endomorphism(k, &(&g + &h)).unwrap(), &fg + &fh);
        prop_assert_eq!(fg == fh, g == h);
        if !g.is_zero() {
            prop_assert_eq!(qpi_in_image(k, &fg).unwrap(), ImageMembership::Yes);
        }
    }

    #[test]
    fn residual_zero_is_swap_symmetric_on_rationals(x in small_rational(), y in small_rational()) {
        prop_assume!(x != y);
        let f = RationalField::default();
        let a = sd_residual(&f, &Identity, &x, &y).unwrap();
        let b = sd_residual(&f, &Identity, &y, &x).unwrap();
        prop_assert_eq!(a.is_zero(), b.is_zero());
    }
}

#[test]
fn variable_is_outside_every_proper_image() {
    let x = RationalFunction::var();
    for k in 2..6 {
        assert_eq!(qpi_in_image(k, &x).unwrap(), ImageMembership::No { exponent: 1 });
    }
}
