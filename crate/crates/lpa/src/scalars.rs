//! Exact commutative coefficient rings.
//!
//! Every algebra in this crate is an algebra over one of three rings:
//! arbitrary-precision integers, rationals (always in lowest terms with a
//! positive denominator), or integers mod n for some n >= 2. All arithmetic
//! is exact; there is no floating point anywhere.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// One of the three supported coefficient rings.
///
/// `IntegersMod(n)` requires n >= 2; use [`Ring::integers_mod`] to construct
/// it with the bound checked. All three rings are unital and commutative, and
/// carry the identity involution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    Rationals,
    IntegersMod(u64),
}

impl Ring {
    /// The ring Z/nZ. Panics if n < 2.
    pub fn integers_mod(n: u64) -> Ring {
        assert!(n >= 2, "modulus must be at least 2");
        Ring::IntegersMod(n)
    }

    /// Short code used in CLI output, e.g. `M_3(Q)`.
    pub fn code(&self) -> String {
        match self {
            Ring::Integers => "Z".to_string(),
            Ring::Rationals => "Q".to_string(),
            Ring::IntegersMod(n) => format!("Z/{n}"),
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::from_i64(*self, 0)
    }

    pub fn one(&self) -> Scalar {
        Scalar::from_i64(*self, 1)
    }

    /// Every nonzero element worth probing when testing that scalar multiples
    /// of a generator are nonzero: all nonzero residues for Z/n (zero divisors
    /// matter there), just 1 for Z and Q (both are torsion-free).
    pub fn probes(&self) -> Vec<Scalar> {
        match self {
            Ring::IntegersMod(n) => (1..*n).map(|r| Scalar::from_i64(*self, r as i64)).collect(),
            _ => vec![self.one()],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Value {
    Int(BigInt),
    Rat(BigRational),
    Mod(u64),
}

/// An exact element of a [`Ring`].
///
/// Rationals are stored reduced with positive denominator (`BigRational`
/// maintains this); residues are stored reduced into `[0, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    ring: Ring,
    value: Value,
}

fn mod_reduce(x: i64, n: u64) -> u64 {
    let n_i = n as i64;
    (((x % n_i) + n_i) % n_i) as u64
}

impl Scalar {
    pub fn from_i64(ring: Ring, x: i64) -> Scalar {
        let value = match ring {
            Ring::Integers => Value::Int(BigInt::from(x)),
            Ring::Rationals => Value::Rat(BigRational::from_integer(BigInt::from(x))),
            Ring::IntegersMod(n) => Value::Mod(mod_reduce(x, n)),
        };
        Scalar { ring, value }
    }

    /// The fraction p/q as an element of the rationals. Panics if q = 0.
    pub fn rational(p: i64, q: i64) -> Scalar {
        assert!(q != 0, "zero denominator");
        Scalar {
            ring: Ring::Rationals,
            value: Value::Rat(BigRational::new(BigInt::from(p), BigInt::from(q))),
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Int(x) => x.is_zero(),
            Value::Rat(x) => x.is_zero(),
            Value::Mod(x) => *x == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.value {
            Value::Int(x) => x.is_one(),
            Value::Rat(x) => x.is_one(),
            Value::Mod(x) => *x == 1,
        }
    }

    /// True when rendering should pull the sign out in front (`- 2 v` rather
    /// than `+ -2 v`). Residues are never negative.
    pub fn is_negative(&self) -> bool {
        match &self.value {
            Value::Int(x) => x.is_negative(),
            Value::Rat(x) => x.is_negative(),
            Value::Mod(_) => false,
        }
    }

    fn check_ring(&self, other: &Scalar) {
        assert!(
            self.ring == other.ring,
            "ring mismatch: {:?} vs {:?}",
            self.ring,
            other.ring
        );
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.check_ring(other);
        let value = match (&self.value, &other.value) {
            (Value::Int(a), Value::Int(b)) => Value::Int(a + b),
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a + b),
            (Value::Mod(a), Value::Mod(b)) => {
                let n = match self.ring {
                    Ring::IntegersMod(n) => n as u128,
                    _ => unreachable!(),
                };
                Value::Mod(((*a as u128 + *b as u128) % n) as u64)
            }
            _ => unreachable!("value/ring mismatch"),
        };
        Scalar { ring: self.ring, value }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.check_ring(other);
        let value = match (&self.value, &other.value) {
            (Value::Int(a), Value::Int(b)) => Value::Int(a * b),
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a * b),
            (Value::Mod(a), Value::Mod(b)) => {
                let n = match self.ring {
                    Ring::IntegersMod(n) => n as u128,
                    _ => unreachable!(),
                };
                Value::Mod(((*a as u128 * *b as u128) % n) as u64)
            }
            _ => unreachable!("value/ring mismatch"),
        };
        Scalar { ring: self.ring, value }
    }

    pub fn neg(&self) -> Scalar {
        let value = match &self.value {
            Value::Int(a) => Value::Int(-a),
            Value::Rat(a) => Value::Rat(-a),
            Value::Mod(a) => {
                let n = match self.ring {
                    Ring::IntegersMod(n) => n,
                    _ => unreachable!(),
                };
                Value::Mod(if *a == 0 { 0 } else { n - *a })
            }
        };
        Scalar { ring: self.ring, value }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    /// The image under the ring involution. All three rings carry the
    /// identity involution, so this is a no-op; it exists so that the algebra
    /// involutions spell out where conjugation would act.
    pub fn conjugate(&self) -> Scalar {
        self.clone()
    }

    /// Parse an integer or `p/q` literal into this ring. Fractions are only
    /// accepted over the rationals.
    pub fn parse(ring: Ring, text: &str) -> Result<Scalar, String> {
        if let Some((p, q)) = text.split_once('/') {
            if ring != Ring::Rationals {
                return Err(format!(
                    "fractional coefficient '{text}' requires the rational ring"
                ));
            }
            let p: i64 = p.parse().map_err(|_| format!("bad numerator in '{text}'"))?;
            let q: i64 = q.parse().map_err(|_| format!("bad denominator in '{text}'"))?;
            if q == 0 {
                return Err(format!("zero denominator in '{text}'"));
            }
            Ok(Scalar::rational(p, q))
        } else {
            let x: i64 = text.parse().map_err(|_| format!("bad integer '{text}'"))?;
            Ok(Scalar::from_i64(ring, x))
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Int(x) => write!(f, "{x}"),
            Value::Rat(x) => {
                if x.denom().is_one() {
                    write!(f, "{}", x.numer())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
            Value::Mod(x) => write!(f, "{x}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rational_addition_reduces() {
        let a = Scalar::rational(1, 2);
        let b = Scalar::rational(1, 3);
        assert_eq!(a.add(&b), Scalar::rational(5, 6));
        assert_eq!(a.add(&b).to_string(), "5/6");
    }

    #[test]
    fn rational_product_reduces() {
        let a = Scalar::rational(2, 3);
        let b = Scalar::rational(3, 4);
        assert_eq!(a.mul(&b), Scalar::rational(1, 2));
    }

    #[test]
    fn mod_four_wraps() {
        let m = Ring::integers_mod(4);
        let three = Scalar::from_i64(m, 3);
        let two = Scalar::from_i64(m, 2);
        assert_eq!(three.add(&two), Scalar::from_i64(m, 1));
        assert_eq!(two.mul(&two), Scalar::from_i64(m, 0));
        assert!(two.mul(&two).is_zero());
    }

    #[test]
    fn negative_residues_normalize() {
        let m = Ring::integers_mod(5);
        assert_eq!(Scalar::from_i64(m, -3), Scalar::from_i64(m, 2));
        assert_eq!(Scalar::from_i64(m, 2).neg(), Scalar::from_i64(m, 3));
    }

    #[test]
    fn display_round_trips_through_parse() {
        for s in [
            Scalar::rational(-7, 3),
            Scalar::from_i64(Ring::Rationals, 4),
            Scalar::from_i64(Ring::Integers, -12),
            Scalar::from_i64(Ring::integers_mod(9), 7),
        ] {
            let back = Scalar::parse(s.ring(), &s.to_string()).expect("parse of rendered scalar");
            assert_eq!(back, s);
        }
    }

    #[test]
    fn fraction_rejected_outside_rationals() {
        assert!(Scalar::parse(Ring::Integers, "1/2").is_err());
        assert!(Scalar::parse(Ring::integers_mod(7), "1/2").is_err());
    }

    #[test]
    fn probes_enumerate_nonzero_residues() {
        assert_eq!(Ring::integers_mod(4).probes().len(), 3);
        assert_eq!(Ring::Rationals.probes(), vec![Ring::Rationals.one()]);
    }

    fn scalar_in(ring: Ring) -> BoxedStrategy<Scalar> {
        match ring {
            Ring::Rationals => (any::<i32>(), 1i64..200)
                .prop_map(|(p, q)| Scalar::rational(p as i64, q))
                .boxed(),
            _ => any::<i32>().prop_map(move |x| Scalar::from_i64(ring, x as i64)).boxed(),
        }
    }

    fn all_rings() -> impl Strategy<Value = Ring> {
        prop_oneof![
            Just(Ring::Integers),
            Just(Ring::Rationals),
            (2u64..60).prop_map(Ring::IntegersMod),
        ]
    }

    proptest! {
        #[test]
        fn ring_axioms_hold_on_samples(
            (a, b, c) in all_rings().prop_flat_map(|r| {
                (scalar_in(r), scalar_in(r), scalar_in(r))
            })
        ) {
            // associativity and commutativity of both operations
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            // identities and inverses
            let ring = a.ring();
            prop_assert_eq!(a.add(&ring.zero()), a.clone());
            prop_assert_eq!(a.mul(&ring.one()), a.clone());
            prop_assert!(a.add(&a.neg()).is_zero());
            // distributivity
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }
    }
}
