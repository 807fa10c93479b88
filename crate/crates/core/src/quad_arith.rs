//! Exact arithmetic on numbers `sign * sqrt(m)` and on projective slopes
//! built from them.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Integer square root if `m` is a perfect square.
pub fn exact_sqrt(m: &BigInt) -> Option<BigInt> {
    if m.is_negative() {
        return None;
    }
    let t = m.sqrt();
    (&t * &t == *m).then_some(t)
}

pub fn is_square(m: &BigInt) -> bool {
    exact_sqrt(m).is_some()
}

fn sign_of(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// The real number `sign * sqrt(radicand)`.
///
/// The radicand is kept as given; `sqrt(8)` is not rewritten as `2*sqrt(2)`.
/// Since the radicand of a value is unique, field equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootInt {
    sign: i8,
    radicand: BigInt,
}

impl RootInt {
    pub fn new(sign: i8, radicand: BigInt) -> Result<Self> {
        let ok = match sign {
            0 => radicand.is_zero(),
            1 | -1 => radicand.is_positive(),
            _ => false,
        };
        if !ok {
            return Err(Error::Precondition(format!(
                "bad root: sign {sign}, radicand {radicand}"
            )));
        }
        Ok(RootInt { sign, radicand })
    }

    pub fn zero() -> Self {
        RootInt {
            sign: 0,
            radicand: BigInt::zero(),
        }
    }

    pub fn one() -> Self {
        RootInt {
            sign: 1,
            radicand: BigInt::one(),
        }
    }

    /// The integer `k` as a root (`sign(k) * sqrt(k^2)`).
    pub fn from_int<T: Into<BigInt>>(k: T) -> Self {
        let k = k.into();
        RootInt {
            sign: sign_of(&k),
            radicand: &k * &k,
        }
    }

    /// `+sqrt(m)` for `m >= 0`.
    pub fn sqrt<T: Into<BigInt>>(m: T) -> Self {
        let m = m.into();
        assert!(!m.is_negative(), "negative radicand");
        RootInt {
            sign: if m.is_zero() { 0 } else { 1 },
            radicand: m,
        }
    }

    /// `k * sqrt(m)`.
    pub fn scaled<K: Into<BigInt>, M: Into<BigInt>>(k: K, m: M) -> Self {
        Self::from_int(k) * Self::sqrt(m)
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// `x * |x|`, an integer carrying the sign of `x`.
    pub fn signed_square(&self) -> BigInt {
        match self.sign {
            1 => self.radicand.clone(),
            -1 => -&self.radicand,
            _ => BigInt::zero(),
        }
    }

    /// The value as an integer when the radicand is a perfect square.
    pub fn as_integer(&self) -> Option<BigInt> {
        exact_sqrt(&self.radicand).map(|t| if self.sign < 0 { -t } else { t })
    }

    pub fn abs(&self) -> Self {
        RootInt {
            sign: self.sign.abs(),
            radicand: self.radicand.clone(),
        }
    }

    /// Sum of two commensurable roots, `None` when `sqrt(m1 * m2)` is irrational.
    pub fn checked_add(&self, other: &RootInt) -> Option<RootInt> {
        if self.is_zero() {
            return Some(other.clone());
        }
        if other.is_zero() {
            return Some(self.clone());
        }
        let t = exact_sqrt(&(&self.radicand * &other.radicand))?;
        let cross = if self.sign == other.sign { t } else { -t };
        let radicand = &self.radicand + &other.radicand + cross * 2;
        let sign = match self.radicand.cmp(&other.radicand) {
            Ordering::Greater => self.sign,
            Ordering::Less => other.sign,
            Ordering::Equal if self.sign == other.sign => self.sign,
            Ordering::Equal => 0,
        };
        Some(RootInt { sign, radicand })
    }

    /// Writes the radicand as `k^2 * f` by trial division with small primes.
    /// `f` is square-free whenever the radicand has no repeated prime above 10^5.
    pub fn split(&self) -> (BigInt, BigInt) {
        let mut k = BigInt::one();
        let mut f = self.radicand.clone();
        if f.is_zero() {
            return (BigInt::zero(), BigInt::one());
        }
        if let Some(t) = exact_sqrt(&f) {
            return (t, BigInt::one());
        }
        let mut p = 2u64;
        while p <= 100_000 {
            let pb = BigInt::from(p);
            let p2 = &pb * &pb;
            if p2 > f {
                break;
            }
            while (&f % &p2).is_zero() {
                f /= &p2;
                k *= &pb;
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if let Some(t) = exact_sqrt(&f) {
            k *= t;
            f = BigInt::one();
        }
        (k, f)
    }

    pub fn to_f64(&self) -> f64 {
        f64::from(self.sign) * self.radicand.to_f64().unwrap_or(f64::INFINITY).sqrt()
    }
}

/// `root_mul` from the public API.
pub fn root_mul(x: &RootInt, y: &RootInt) -> RootInt {
    x.clone() * y.clone()
}

impl Mul for RootInt {
    type Output = RootInt;
    fn mul(self, rhs: RootInt) -> RootInt {
        RootInt {
            sign: self.sign * rhs.sign,
            radicand: self.radicand * rhs.radicand,
        }
    }
}

impl<'a> Mul<&'a RootInt> for &'a RootInt {
    type Output = RootInt;
    fn mul(self, rhs: &RootInt) -> RootInt {
        RootInt {
            sign: self.sign * rhs.sign,
            radicand: &self.radicand * &rhs.radicand,
        }
    }
}

impl Neg for RootInt {
    type Output = RootInt;
    fn neg(self) -> RootInt {
        RootInt {
            sign: -self.sign,
            radicand: self.radicand,
        }
    }
}

impl Ord for RootInt {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => match self.sign {
                1 => self.radicand.cmp(&other.radicand),
                -1 => other.radicand.cmp(&self.radicand),
                _ => Ordering::Equal,
            },
            o => o,
        }
    }
}

impl PartialOrd for RootInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RootInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (k, rest) = self.split();
        let k = if self.sign < 0 { -k } else { k };
        if rest.is_one() {
            write!(f, "{k}")
        } else {
            write!(f, "{k}*sqrt({rest})")
        }
    }
}

/// A point of the real projective line, `num / den`, with `den >= 0`.
/// `den = 0` is the single point at infinity.
#[derive(Clone, Debug)]
pub struct SlopeValue {
    num: RootInt,
    den: RootInt,
}

impl SlopeValue {
    pub fn new(num: RootInt, den: RootInt) -> Result<Self> {
        if num.is_zero() && den.is_zero() {
            return Err(Error::Precondition("slope 0/0".into()));
        }
        if den.is_zero() {
            return Ok(Self::infinity());
        }
        Ok(if den.sign < 0 {
            SlopeValue {
                num: -num,
                den: -den,
            }
        } else {
            SlopeValue { num, den }
        })
    }

    pub fn infinity() -> Self {
        SlopeValue {
            num: RootInt::one(),
            den: RootInt::zero(),
        }
    }

    pub fn zero() -> Self {
        SlopeValue {
            num: RootInt::zero(),
            den: RootInt::one(),
        }
    }

    /// The rational number `p / q`, `q != 0`.
    pub fn ratio<P: Into<BigInt>, Q: Into<BigInt>>(p: P, q: Q) -> Result<Self> {
        let q = q.into();
        if q.is_zero() {
            return Err(Error::Precondition("zero denominator".into()));
        }
        Self::new(RootInt::from_int(p), RootInt::from_int(q))
    }

    pub fn num(&self) -> &RootInt {
        &self.num
    }

    pub fn den(&self) -> &RootInt {
        &self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    pub fn neg(&self) -> Self {
        if self.is_infinite() {
            return self.clone();
        }
        SlopeValue {
            num: -self.num.clone(),
            den: self.den.clone(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_infinite() {
            f64::INFINITY
        } else {
            self.num.to_f64() / self.den.to_f64()
        }
    }

    /// Rewrites the value as `k*sqrt(f) / m` with an integer denominator.
    pub fn rationalized(&self) -> (RootInt, BigInt) {
        if self.is_infinite() {
            return (RootInt::one(), BigInt::zero());
        }
        let num = &self.num * &self.den;
        let den = self.den.radicand().clone();
        (num, den)
    }
}

/// Affine order on slopes: infinity sits above every finite value.
pub fn slope_compare(x: &SlopeValue, y: &SlopeValue) -> Ordering {
    match (x.is_infinite(), y.is_infinite()) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        (false, false) => (&x.num * &y.den).cmp(&(&y.num * &x.den)),
    }
}

impl PartialEq for SlopeValue {
    fn eq(&self, other: &Self) -> bool {
        slope_compare(self, other) == Ordering::Equal
    }
}

impl Eq for SlopeValue {}

impl Ord for SlopeValue {
    fn cmp(&self, other: &Self) -> Ordering {
        slope_compare(self, other)
    }
}

impl PartialOrd for SlopeValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SlopeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            return write!(f, "inf");
        }
        let (num, den) = self.rationalized();
        let (k, rest) = num.split();
        let k = if num.sign() < 0 { -k } else { k };
        let (k, den) = {
            let g = num_integer::Integer::gcd(&k, &den);
            if g.is_zero() {
                (k, den)
            } else {
                (k / &g, den / &g)
            }
        };
        let den = if k.is_zero() { BigInt::one() } else { den };
        if rest.is_one() || k.is_zero() {
            write!(f, "{k}")?;
        } else {
            write!(f, "{k}*sqrt({rest})")?;
        }
        if !den.is_one() {
            write!(f, "/{den}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SqrtSign {
    Plus,
    Minus,
    No,
}

/// Detects `lambda = +sqrt(ell)` or `-sqrt(ell)` exactly.
pub fn slope_is_sqrt(lambda: &SlopeValue, ell: &BigInt) -> SqrtSign {
    if lambda.is_infinite() || lambda.num.is_zero() {
        return SqrtSign::No;
    }
    if *lambda.num.radicand() != ell * lambda.den.radicand() {
        return SqrtSign::No;
    }
    if lambda.num.sign() > 0 {
        SqrtSign::Plus
    } else {
        SqrtSign::Minus
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(sign: i8, m: i64) -> RootInt {
        RootInt::new(sign, BigInt::from(m)).unwrap()
    }

    fn s(num: RootInt, den: RootInt) -> SlopeValue {
        SlopeValue::new(num, den).unwrap()
    }

    #[test]
    fn products() {
        assert_eq!(root_mul(&r(1, 2), &r(1, 2)), r(1, 4));
        assert_eq!(root_mul(&r(-1, 3), &r(1, 12)), r(-1, 36));
        assert_eq!(root_mul(&r(-1, 3), &r(1, 12)).as_integer(), Some(BigInt::from(-6)));
        assert_eq!(root_mul(&RootInt::zero(), &r(1, 5)), RootInt::zero());
    }

    #[test]
    fn rejects_malformed_roots() {
        assert!(RootInt::new(0, BigInt::from(3)).is_err());
        assert!(RootInt::new(1, BigInt::zero()).is_err());
        assert!(RootInt::new(2, BigInt::from(3)).is_err());
    }

    #[test]
    fn compare_examples() {
        let one = SlopeValue::ratio(1, 1).unwrap();
        assert_eq!(slope_compare(&one, &s(r(1, 2), RootInt::one())), Ordering::Less);
        assert_eq!(
            slope_compare(&s(r(-1, 3), RootInt::one()), &SlopeValue::zero()),
            Ordering::Less
        );
        assert_eq!(
            slope_compare(&SlopeValue::ratio(3, 2).unwrap(), &SlopeValue::ratio(4, 3).unwrap()),
            Ordering::Greater
        );
        let inf = SlopeValue::infinity();
        assert_eq!(slope_compare(&inf, &inf), Ordering::Equal);
        assert_eq!(slope_compare(&inf, &one), Ordering::Greater);
    }

    #[test]
    fn sqrt_detection() {
        let two = BigInt::from(2);
        assert_eq!(slope_is_sqrt(&s(r(1, 2), RootInt::one()), &two), SqrtSign::Plus);
        assert_eq!(
            slope_is_sqrt(&s(r(-1, 8), RootInt::from_int(2)), &two),
            SqrtSign::Minus
        );
        assert_eq!(slope_is_sqrt(&SlopeValue::ratio(3, 2).unwrap(), &two), SqrtSign::No);
    }

    #[test]
    fn sums_of_commensurable_roots() {
        // sqrt(2) + sqrt(8) = sqrt(18)
        assert_eq!(r(1, 2).checked_add(&r(1, 8)), Some(r(1, 18)));
        assert_eq!(r(1, 2).checked_add(&r(-1, 8)), Some(r(-1, 2)));
        assert_eq!(r(1, 5).checked_add(&r(-1, 5)), Some(RootInt::zero()));
        assert_eq!(r(1, 2).checked_add(&r(1, 3)), None);
    }

    #[test]
    fn negative_denominator_is_normalized() {
        let x = SlopeValue::ratio(3, -4).unwrap();
        assert_eq!(x.den().sign(), 1);
        assert_eq!(x, SlopeValue::ratio(-3, 4).unwrap());
        assert!(SlopeValue::new(RootInt::zero(), RootInt::zero()).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(r(1, 18).to_string(), "3*sqrt(2)");
        assert_eq!(r(-1, 36).to_string(), "-6");
        let x = s(r(1, 18), RootInt::from_int(4));
        assert_eq!(x.to_string(), "3*sqrt(2)/4");
        let y = s(RootInt::one(), RootInt::sqrt(2));
        assert_eq!(y.to_string(), "1*sqrt(2)/2");
        assert_eq!(SlopeValue::ratio(-14, 2).unwrap().to_string(), "-7");
    }

    fn arb_root() -> impl Strategy<Value = RootInt> {
        (-1i8..=1, 1i64..2000).prop_map(|(sg, m)| {
            if sg == 0 {
                RootInt::zero()
            } else {
                RootInt::new(sg, BigInt::from(m)).unwrap()
            }
        })
    }

    fn arb_slope() -> impl Strategy<Value = SlopeValue> {
        (arb_root(), 1i64..2000).prop_map(|(n, d)| SlopeValue::new(n, RootInt::sqrt(d)).unwrap())
    }

    proptest! {
        #[test]
        fn mul_is_commutative_and_associative(x in arb_root(), y in arb_root(), z in arb_root()) {
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!((&x * &y).sign(), x.sign() * y.sign());
        }

        #[test]
        fn compare_is_a_total_order(x in arb_slope(), y in arb_slope(), z in arb_slope()) {
            prop_assert_eq!(slope_compare(&x, &y), slope_compare(&y, &x).reverse());
            if x <= y && y <= z {
                prop_assert!(x <= z);
            }
        }

        #[test]
        fn compare_agrees_with_floats(x in arb_slope(), y in arb_slope()) {
            let (fx, fy) = (x.to_f64(), y.to_f64());
            if (fx - fy).abs() > 2f64.powi(-40) {
                prop_assert_eq!(slope_compare(&x, &y), fx.partial_cmp(&fy).unwrap());
            }
        }

        #[test]
        fn checked_add_matches_floats(k1 in -50i64..50, k2 in -50i64..50, f in 1i64..30) {
            let x = RootInt::scaled(k1, f);
            let y = RootInt::scaled(k2, f);
            let sum = x.checked_add(&y).unwrap();
            prop_assert_eq!(sum, RootInt::scaled(k1 + k2, f));
        }
    }
}
