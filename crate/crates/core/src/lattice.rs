//! Mukai vectors on an abelian surface with `NS = Z H`, `(H^2) = 2n`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::quad_arith::{RootInt, SlopeValue};

/// The polarization data `n = (H^2)/2` with its factorization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceParams {
    n: u64,
    prime_factors: Vec<(u64, u32)>,
}

impl SurfaceParams {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSurface);
        }
        Ok(SurfaceParams {
            n,
            prime_factors: factorize(n),
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn n_big(&self) -> BigInt {
        BigInt::from(self.n)
    }

    pub fn prime_factors(&self) -> &[(u64, u32)] {
        &self.prime_factors
    }

    /// All ordered pairs `(r, s)` of positive integers with `r * s = n`.
    pub fn divisor_pairs(&self) -> Vec<(u64, u64)> {
        (1..=self.n)
            .filter(|r| self.n.is_multiple_of(*r))
            .map(|r| (r, self.n / r))
            .collect()
    }

    /// Pairs `(r, s)` with `r * s = n` and `gcd(r, s) = 1`.
    pub fn unitary_pairs(&self) -> Vec<(u64, u64)> {
        self.divisor_pairs()
            .into_iter()
            .filter(|(r, s)| r.gcd(s) == 1)
            .collect()
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// A Mukai vector `(r, d H, a)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MukaiVector {
    pub r: BigInt,
    pub d: BigInt,
    pub a: BigInt,
}

impl MukaiVector {
    pub fn new<R: Into<BigInt>, D: Into<BigInt>, A: Into<BigInt>>(r: R, d: D, a: A) -> Self {
        MukaiVector {
            r: r.into(),
            d: d.into(),
            a: a.into(),
        }
    }

    pub fn zero() -> Self {
        Self::new(0, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.d.is_zero() && self.a.is_zero()
    }

    pub fn pairing(&self, w: &MukaiVector, ctx: &SurfaceParams) -> BigInt {
        ctx.n_big() * 2 * &self.d * &w.d - &self.r * &w.a - &w.r * &self.a
    }

    /// `<v, v> / 2 = n d^2 - r a`.
    pub fn ell(&self, ctx: &SurfaceParams) -> BigInt {
        ctx.n_big() * &self.d * &self.d - &self.r * &self.a
    }

    pub fn is_isotropic(&self, ctx: &SurfaceParams) -> bool {
        self.ell(ctx).is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.r.is_positive()
            || (self.r.is_zero() && self.d.is_positive())
            || (self.r.is_zero() && self.d.is_zero() && self.a.is_positive())
    }

    pub fn multiplicity(&self) -> BigInt {
        self.r.gcd(&self.d).gcd(&self.a)
    }

    pub fn is_primitive(&self) -> bool {
        self.multiplicity().is_one()
    }

    pub fn dual(&self) -> Self {
        Self::new(self.r.clone(), -&self.d, self.a.clone())
    }

    pub fn height(&self) -> BigInt {
        self.r.abs().max(self.d.abs()).max(self.a.abs())
    }

    pub fn scale<K: Into<BigInt>>(&self, k: K) -> Self {
        let k = k.into();
        Self::new(&self.r * &k, &self.d * &k, &self.a * &k)
    }

    /// The slope `(d sqrt(n) : r)`.
    pub fn slope(&self, ctx: &SurfaceParams) -> Result<SlopeValue> {
        if self.is_zero() {
            return Err(Error::ZeroVector);
        }
        if self.r.is_zero() {
            return Ok(SlopeValue::infinity());
        }
        SlopeValue::new(
            RootInt::scaled(self.d.clone(), ctx.n()),
            RootInt::from_int(self.r.clone()),
        )
    }
}

impl fmt::Display for MukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.r, self.d, self.a)
    }
}

impl Add for &MukaiVector {
    type Output = MukaiVector;
    fn add(self, o: &MukaiVector) -> MukaiVector {
        MukaiVector::new(&self.r + &o.r, &self.d + &o.d, &self.a + &o.a)
    }
}

impl Sub for &MukaiVector {
    type Output = MukaiVector;
    fn sub(self, o: &MukaiVector) -> MukaiVector {
        MukaiVector::new(&self.r - &o.r, &self.d - &o.d, &self.a - &o.a)
    }
}

impl Neg for &MukaiVector {
    type Output = MukaiVector;
    fn neg(self) -> MukaiVector {
        MukaiVector::new(-&self.r, -&self.d, -&self.a)
    }
}

pub fn mukai_pairing(v: &MukaiVector, w: &MukaiVector, ctx: &SurfaceParams) -> BigInt {
    v.pairing(w, ctx)
}

pub fn normalized_slope(v: &MukaiVector, ctx: &SurfaceParams) -> Result<SlopeValue> {
    v.slope(ctx)
}

/// `v = (a^2 r, a b, b^2 s)` with `a > 0` and `r s = n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropicDecomposition {
    pub a: BigInt,
    pub b: BigInt,
    pub r: u64,
    pub s: u64,
}

impl IsotropicDecomposition {
    pub fn reconstruct(&self) -> MukaiVector {
        MukaiVector::new(
            &self.a * &self.a * self.r,
            &self.a * &self.b,
            &self.b * &self.b * self.s,
        )
    }
}

pub fn decompose_isotropic(v: &MukaiVector, ctx: &SurfaceParams) -> Result<IsotropicDecomposition> {
    if !v.is_isotropic(ctx) {
        return Err(Error::NotIsotropic);
    }
    if !v.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    if !v.is_positive() {
        return Err(Error::NotPositive);
    }
    if v.r.is_zero() {
        return Err(Error::RankZero);
    }
    if v.d.is_zero() {
        // isotropy forces a = 0, primitivity r = 1
        return Ok(IsotropicDecomposition {
            a: BigInt::one(),
            b: BigInt::zero(),
            r: 1,
            s: ctx.n(),
        });
    }
    let a = v.r.gcd(&v.d);
    let b = &v.d / &a;
    let (r, rem_r) = v.r.div_rem(&(&a * &a));
    let (s, rem_s) = v.a.div_rem(&(&b * &b));
    let consistent = rem_r.is_zero() && rem_s.is_zero() && &r * &s == ctx.n_big();
    if !consistent {
        return Err(Error::NotIsotropic);
    }
    let to_u64 = |x: BigInt| u64::try_from(x).map_err(|_| Error::NotIsotropic);
    Ok(IsotropicDecomposition {
        a,
        b,
        r: to_u64(r)?,
        s: to_u64(s)?,
    })
}
