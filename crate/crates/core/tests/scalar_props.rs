use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;
use triality_core::scalar::embed_float;
use triality_core::{QuadExt, Rational, Scalar};

fn rational() -> impl Strategy<Value = (i64, i64)> {
    (-1_000_000i64..1_000_000, 1i64..10_000)
}

fn wide() -> impl Strategy<Value = (i64, i64)> {
    prop_oneof![rational(), (any::<i64>(), 1i64..i64::MAX)]
}

fn r((n, d): (i64, i64)) -> Rational {
    Rational::new(n, d).unwrap()
}

fn oracle((n, d): (i64, i64)) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn big(x: &Rational) -> BigRational {
    BigRational::new(x.numer(), x.denom())
}

/// `(a, b)` standing for `a + b sqrt(3)`, multiplied by hand.
fn quad_oracle_mul(
    x: &(BigRational, BigRational),
    y: &(BigRational, BigRational),
) -> (BigRational, BigRational) {
    let three = BigRational::from_integer(3.into());
    (&x.0 * &y.0 + three * &x.1 * &y.1, &x.0 * &y.1 + &x.1 * &y.0)
}

fn quad(a: (i64, i64), b: (i64, i64)) -> QuadExt {
    QuadExt::new(r(a), r(b))
}

proptest! {
    #[test]
    fn rational_ops_match_bigrational(a in wide(), b in wide(), c in wide()) {
        let (x, y, z) = (r(a), r(b), r(c));
        let (bx, by, bz) = (oracle(a), oracle(b), oracle(c));
        prop_assert_eq!(big(&(x.clone() + y.clone())), &bx + &by);
        prop_assert_eq!(big(&(x.clone() - y.clone())), &bx - &by);
        prop_assert_eq!(big(&(x.clone() * y.clone())), &bx * &by);
        prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
        let fused = Rational::sum_of_products([(1, &x, &y), (-3, &y, &z), (1, &z, &x)].into_iter());
        prop_assert_eq!(big(&fused), &bx * &by - BigRational::from_integer(3.into()) * &by * &bz + &bz * &bx);
        if !bx.is_zero() {
            prop_assert_eq!(big(&x.try_inv().unwrap()), BigRational::from_integer(1.into()) / &bx);
        }
        prop_assert_eq!(x.to_f64(), bx.to_f64().unwrap());
    }

    #[test]
    fn rational_field_axioms(a in wide(), b in wide(), c in wide()) {
        let (x, y, z) = (r(a), r(b), r(c));
        prop_assert_eq!((x.clone() + y.clone()) + z.clone(), x.clone() + (y.clone() + z.clone()));
        prop_assert_eq!((x.clone() * y.clone()) * z.clone(), x.clone() * (y.clone() * z.clone()));
        prop_assert_eq!(x.clone() * (y.clone() + z.clone()), x.clone() * y.clone() + x.clone() * z.clone());
        prop_assert_eq!(x.clone() - x.clone(), Rational::zero());
    }

    #[test]
    fn quad_matches_hand_expansion(a in rational(), b in rational(), c in rational(), d in rational()) {
        let (x, y) = (quad(a, b), quad(c, d));
        let p = x.clone() * y.clone();
        let (ea, eb) = quad_oracle_mul(&(oracle(a), oracle(b)), &(oracle(c), oracle(d)));
        prop_assert_eq!(big(p.a()), ea);
        prop_assert_eq!(big(p.b()), eb);
        let s = x.clone() + y.clone();
        prop_assert_eq!(big(s.a()), oracle(a) + oracle(c));
        prop_assert_eq!(big(s.b()), oracle(b) + oracle(d));
    }

    #[test]
    fn quad_field_axioms(a in rational(), b in rational(), c in rational(), d in rational(), e in rational(), f in rational()) {
        let (x, y, z) = (quad(a, b), quad(c, d), quad(e, f));
        prop_assert_eq!((x.clone() * y.clone()) * z.clone(), x.clone() * (y.clone() * z.clone()));
        prop_assert_eq!(x.clone() * (y.clone() + z.clone()), x.clone() * y.clone() + x.clone() * z.clone());
        prop_assert_eq!((x.clone() * y.clone()).galois_conj(), x.galois_conj() * y.galois_conj());
        prop_assert_eq!((x.clone() * y.clone()).field_norm(), x.field_norm() * y.field_norm());
        if !x.is_zero() {
            prop_assert_eq!(x.clone() * x.try_inv().unwrap(), QuadExt::one());
        }
        let fused = QuadExt::sum_of_products(&[(1, &x, &y), (-1, &y, &z), (3, &z, &x)]);
        let slow = x.clone() * y.clone() - y.clone() * z.clone() + QuadExt::from_i64(3) * z.clone() * x.clone();
        prop_assert_eq!(fused, slow);
    }

    #[test]
    fn embed_float_is_a_homomorphism_up_to_rounding(a in rational(), b in rational(), c in rational(), d in rational()) {
        let (x, y) = (quad(a, b), quad(c, d));
        let (fx, fy) = (embed_float(&x).value(), embed_float(&y).value());
        let sum = embed_float(&(x.clone() + y.clone())).value();
        let prod = embed_float(&(x.clone() * y.clone())).value();
        let ulp = f64::EPSILON;
        let mag = |q: &QuadExt| q.a().to_f64().abs() + 3f64.sqrt() * q.b().to_f64().abs();
        prop_assert!((sum - (fx + fy)).abs() <= 4.0 * ulp * (mag(&x) + mag(&y)), "{} vs {}", sum, fx + fy);
        prop_assert!((prod - fx * fy).abs() <= 4.0 * ulp * mag(&x) * mag(&y), "{} vs {}", prod, fx * fy);
    }
}
