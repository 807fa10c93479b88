//! The group of matrices `[[a sqrt(r), b sqrt(s)], [c sqrt(s), d sqrt(r)]]`
//! with `r s = n` and determinant `+1` (or `-1` in the extended group).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{decompose_isotropic, MukaiVector, SurfaceParams};
use crate::quad_arith::RootInt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GElement {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
    r: u64,
    s: u64,
    det: i8,
}

impl GElement {
    /// Validates `r s = n`, `a d r - b c s = +-1` and fixes the sign so the
    /// first nonzero of `(a, b)` is positive.
    pub fn new<T: Into<BigInt>>(a: T, b: T, c: T, d: T, r: u64, s: u64, ctx: &SurfaceParams) -> Result<Self> {
        if r.checked_mul(s) != Some(ctx.n()) {
            return Err(Error::InconsistentElement(format!("r*s = {r}*{s} != n")));
        }
        Self::from_parts(a.into(), b.into(), c.into(), d.into(), r, s)
    }

    fn from_parts(a: BigInt, b: BigInt, c: BigInt, d: BigInt, r: u64, s: u64) -> Result<Self> {
        let det = &a * &d * r - &b * &c * s;
        let det = if det.is_one() {
            1
        } else if det == -BigInt::one() {
            -1
        } else {
            return Err(Error::InconsistentElement(format!("determinant {det}")));
        };
        let mut g = GElement { a, b, c, d, r, s, det };
        g.canonicalize();
        Ok(g)
    }

    fn canonicalize(&mut self) {
        if self.a.is_negative() || (self.a.is_zero() && self.b.is_negative()) {
            self.a = -&self.a;
            self.b = -&self.b;
            self.c = -&self.c;
            self.d = -&self.d;
        }
    }

    pub fn identity(ctx: &SurfaceParams) -> Self {
        GElement {
            a: BigInt::one(),
            b: BigInt::zero(),
            c: BigInt::zero(),
            d: BigInt::one(),
            r: 1,
            s: ctx.n(),
            det: 1,
        }
    }

    /// `diag(1, -1)`, the cohomological shadow of dualizing.
    pub fn dualizing(ctx: &SurfaceParams) -> Self {
        GElement {
            d: -BigInt::one(),
            det: -1,
            ..Self::identity(ctx)
        }
    }

    /// `[[1, sqrt(n)], [0, 1]]`.
    pub fn upper(ctx: &SurfaceParams) -> Self {
        GElement {
            b: BigInt::one(),
            ..Self::identity(ctx)
        }
    }

    /// `[[1, 0], [sqrt(n), 1]]`.
    pub fn lower(ctx: &SurfaceParams) -> Self {
        GElement {
            c: BigInt::one(),
            ..Self::identity(ctx)
        }
    }

    /// An element of type `(r, s)` for a unitary divisor pair, `gcd(r, s) = 1`.
    pub fn atkin_lehner(r: u64, s: u64, ctx: &SurfaceParams) -> Result<Self> {
        let (ri, si) = (r as i128, s as i128);
        let e = ri.extended_gcd(&si);
        if e.gcd != 1 {
            return Err(Error::InconsistentElement(format!("gcd({r},{s}) != 1")));
        }
        // x r + y s = 1, so [[x, -y], [1, 1]] has a d r - b c s = 1
        Self::new(
            BigInt::from(e.x),
            BigInt::from(-e.y),
            BigInt::one(),
            BigInt::one(),
            r,
            s,
            ctx,
        )
    }

    /// A generating set used for sampling: the two unipotents and one
    /// element per unitary divisor pair.
    pub fn generators(ctx: &SurfaceParams) -> Vec<Self> {
        let mut out = vec![Self::upper(ctx), Self::lower(ctx)];
        for (r, s) in ctx.unitary_pairs() {
            if r > 1 {
                out.push(Self::atkin_lehner(r, s, ctx).expect("unitary pair"));
            }
        }
        out
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }
    pub fn b(&self) -> &BigInt {
        &self.b
    }
    pub fn c(&self) -> &BigInt {
        &self.c
    }
    pub fn d(&self) -> &BigInt {
        &self.d
    }
    pub fn r(&self) -> u64 {
        self.r
    }
    pub fn s(&self) -> u64 {
        self.s
    }
    pub fn det(&self) -> i8 {
        self.det
    }
    pub fn n(&self) -> u64 {
        self.r * self.s
    }

    /// Matrix entries as exact roots, row major.
    pub fn entries(&self) -> [RootInt; 4] {
        [
            RootInt::scaled(self.a.clone(), self.r),
            RootInt::scaled(self.b.clone(), self.s),
            RootInt::scaled(self.c.clone(), self.s),
            RootInt::scaled(self.d.clone(), self.r),
        ]
    }

    /// Recovers the element from exact entries `[[x, y], [z, w]]`.
    pub fn from_entries(x: &RootInt, y: &RootInt, z: &RootInt, w: &RootInt, ctx: &SurfaceParams) -> Result<Self> {
        let bad = || Error::InconsistentElement("entries not of the required shape".into());
        for (r, s) in ctx.divisor_pairs() {
            let split = |e: &RootInt, m: u64| -> Option<BigInt> {
                let (q, rem) = e.radicand().div_rem(&BigInt::from(m));
                if !rem.is_zero() {
                    return None;
                }
                let k = crate::quad_arith::exact_sqrt(&q)?;
                Some(if e.sign() < 0 { -k } else { k })
            };
            let parts = (split(x, r), split(y, s), split(z, s), split(w, r));
            if let (Some(a), Some(b), Some(c), Some(d)) = parts {
                if let Ok(g) = Self::from_parts(a, b, c, d, r, s) {
                    return Ok(g);
                }
            }
        }
        Err(bad())
    }

    pub fn mul(&self, h: &GElement) -> Result<GElement> {
        if self.n() != h.n() {
            return Err(Error::InconsistentElement("different n".into()));
        }
        let p = self.r.gcd(&h.r);
        let q = self.s.gcd(&h.s);
        let (r1, s1) = (self.r / p, self.s / q);
        let (r1h, s1h) = (h.r / p, h.s / q);
        if r1h != s1 || s1h != r1 {
            return Err(Error::InconsistentElement("structure constants".into()));
        }
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (a2, b2, c2, d2) = (&h.a, &h.b, &h.c, &h.d);
        let na = a * a2 * p + b * c2 * q;
        let nb = a * b2 * r1 + b * d2 * s1;
        let nc = c * a2 * s1 + d * c2 * r1;
        let nd = c * b2 * q + d * d2 * p;
        Self::from_parts(na, nb, nc, nd, r1 * s1, p * q)
    }

    pub fn inverse(&self) -> GElement {
        let mut g = GElement {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
            ..self.clone()
        };
        g.canonicalize();
        g
    }

    pub fn pow(&self, m: i64) -> GElement {
        let base = if m < 0 { self.inverse() } else { self.clone() };
        let mut acc = GElement {
            a: BigInt::one(),
            b: BigInt::zero(),
            c: BigInt::zero(),
            d: BigInt::one(),
            r: 1,
            s: self.n(),
            det: 1,
        };
        for _ in 0..m.unsigned_abs() {
            acc = acc.mul(&base).expect("same group");
        }
        acc
    }

    /// Right action `v . g`, i.e. `tg X_v g`.
    pub fn act(&self, v: &MukaiVector) -> MukaiVector {
        let n = BigInt::from(self.n());
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (r, s) = (BigInt::from(self.r), BigInt::from(self.s));
        let (x, y, z) = (&v.r, &v.d, &v.a);
        let nr = a * a * &r * x + a * c * &n * y * 2 + c * c * &s * z;
        let nd = a * b * x + (a * d * &r + b * c * &s) * y + c * d * z;
        let na = b * b * &s * x + b * d * &n * y * 2 + d * d * &r * z;
        MukaiVector::new(nr, nd, na)
    }

    /// Integral 3x3 matrix whose columns are the images of the basis vectors.
    pub fn theta_3x3(&self) -> [[BigInt; 3]; 3] {
        let cols = [
            self.act(&MukaiVector::new(1, 0, 0)),
            self.act(&MukaiVector::new(0, 1, 0)),
            self.act(&MukaiVector::new(0, 0, 1)),
        ];
        let row = |f: fn(&MukaiVector) -> &BigInt| [f(&cols[0]).clone(), f(&cols[1]).clone(), f(&cols[2]).clone()];
        [row(|v| &v.r), row(|v| &v.d), row(|v| &v.a)]
    }

    /// Bit `i` is set iff the `i`-th prime of `n` divides `r`.
    pub fn phi(&self, ctx: &SurfaceParams) -> Vec<bool> {
        ctx.prime_factors().iter().map(|(p, _)| self.r.is_multiple_of(*p)).collect()
    }

    /// Conjugation by `diag(1, -1)`.
    pub fn conjugate_by_dualizing(&self) -> GElement {
        let mut g = GElement {
            b: -&self.b,
            c: -&self.c,
            ..self.clone()
        };
        g.canonicalize();
        g
    }
}

impl fmt::Display for GElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{},{},{})",
            self.a, self.b, self.c, self.d, self.r, self.s
        )
    }
}

pub fn det3(m: &[[BigInt; 3]; 3]) -> BigInt {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

pub fn mat3_mul(x: &[[BigInt; 3]; 3], y: &[[BigInt; 3]; 3]) -> [[BigInt; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| &x[i][k] * &y[k][j]).sum()))
}

pub fn g_identity(ctx: &SurfaceParams) -> GElement {
    GElement::identity(ctx)
}

pub fn g_mul(g: &GElement, h: &GElement) -> Result<GElement> {
    g.mul(h)
}

pub fn g_inverse(g: &GElement) -> GElement {
    g.inverse()
}

pub fn g_act(v: &MukaiVector, g: &GElement) -> MukaiVector {
    g.act(v)
}

pub fn g_phi(g: &GElement, ctx: &SurfaceParams) -> Vec<bool> {
    g.phi(ctx)
}

pub fn theta_3x3(g: &GElement) -> [[BigInt; 3]; 3] {
    g.theta_3x3()
}

/// The element sending `(1,0,0)` to `v1` and `(0,0,1)` to `v2`.
pub fn g_from_pair(v1: &MukaiVector, v2: &MukaiVector, ctx: &SurfaceParams) -> Result<GElement> {
    for v in [v1, v2] {
        if !v.is_isotropic(ctx) {
            return Err(Error::NotIsotropic);
        }
        if !v.is_positive() {
            return Err(Error::NotPositive);
        }
    }
    if v1.pairing(v2, ctx) != -BigInt::one() {
        return Err(Error::PairingNotMinusOne);
    }
    let e3 = MukaiVector::new(0, 0, 1);
    let n = ctx.n();
    // first row (a, b) with r, s
    let (a, b, r, s) = if *v1 == e3 {
        (BigInt::zero(), BigInt::one(), n, 1)
    } else {
        let dec = decompose_isotropic(v1, ctx)?;
        (dec.a, dec.b, dec.r, dec.s)
    };
    // second row (c, d) with v2 = (c^2 s, c d, d^2 r)
    let (c, d) = if *v2 == e3 {
        if r != 1 {
            return Err(Error::InconsistentElement("rank-zero partner needs r = 1".into()));
        }
        (BigInt::zero(), BigInt::one())
    } else {
        let dec = decompose_isotropic(v2, ctx)?;
        if dec.r != s || dec.s != r {
            return Err(Error::InconsistentElement("pair types do not match".into()));
        }
        (dec.a, dec.b)
    };
    let det = &a * &d * r - &b * &c * s;
    let (c, d) = if det.is_negative() { (-c, -d) } else { (c, d) };
    GElement::from_parts(a, b, c, d, r, s)
}

/// Cohomological data of an equivalence: its matrix, whether the kernel is
/// dualized, and the parity of the shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaDescriptor {
    pub g: GElement,
    pub dualized: bool,
    pub shift_parity: u8,
}

impl ThetaDescriptor {
    pub fn new(g: GElement) -> Self {
        ThetaDescriptor {
            g,
            dualized: false,
            shift_parity: 0,
        }
    }

    /// The same kernel read in the opposite direction: `[[d, b], [c, a]]`.
    pub fn reverse(&self) -> Self {
        let g = &self.g;
        let mut h = GElement {
            a: g.d.clone(),
            d: g.a.clone(),
            ..g.clone()
        };
        h.canonicalize();
        ThetaDescriptor { g: h, ..self.clone() }
    }

    /// Kernel replaced by its derived dual shifted by 2: off-diagonal signs flip.
    pub fn dual(&self) -> Self {
        ThetaDescriptor {
            g: self.g.conjugate_by_dualizing(),
            dualized: !self.dualized,
            shift_parity: self.shift_parity,
        }
    }

    /// The quasi-inverse, whose kernel is the reversed dual.
    pub fn inverse(&self) -> Self {
        ThetaDescriptor {
            g: self.g.inverse(),
            dualized: !self.dualized,
            shift_parity: self.shift_parity,
        }
    }
}

pub fn theta_dual(t: &ThetaDescriptor) -> ThetaDescriptor {
    t.dual()
}

pub fn theta_inverse(t: &ThetaDescriptor) -> ThetaDescriptor {
    t.inverse()
}
