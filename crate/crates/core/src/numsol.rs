//! Solutions of the numerical equation `v = +-(l2 v2 - l1 v1)` and the Pell
//! units governing their families.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::group_g::GElement;
use crate::lattice::{MukaiVector, SurfaceParams};
use crate::par::{self, Exec};
use crate::quad_arith::{exact_sqrt, is_square, RootInt};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountClass {
    AtMostOne,
    ZeroOrInfinite,
}

/// `(v1, v2, l1, l2, sign)` with `v = sign * (l2 v2 - l1 v1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumericalSolution {
    pub v1: MukaiVector,
    pub v2: MukaiVector,
    pub ell1: BigInt,
    pub ell2: BigInt,
    pub sign: i8,
}

impl NumericalSolution {
    /// The vector carrying the multiplicity `l` (the second one when `l = 1`).
    pub fn ell_side(&self) -> &MukaiVector {
        if self.ell1 > BigInt::one() {
            &self.v1
        } else {
            &self.v2
        }
    }

    /// Builds the solution whose multiplicity-`l` vector is `w`, provided
    /// `<w, v> = +-1` and `w` is positive primitive isotropic.
    pub fn from_ell_side(v: &MukaiVector, w: &MukaiVector, ctx: &SurfaceParams) -> Option<Self> {
        let ell = v.ell(ctx);
        let eps = w.pairing(v, ctx);
        let eps: i8 = if eps.is_one() {
            1
        } else if eps == -BigInt::one() {
            -1
        } else {
            return None;
        };
        if !w.is_positive() || !w.is_isotropic(ctx) || !w.is_primitive() {
            return None;
        }
        let partner = &w.scale(ell.clone()) - &v.scale(eps);
        if !partner.is_positive() {
            return None;
        }
        let lower = w.slope(ctx).ok()? < partner.slope(ctx).ok()?;
        let sol = if lower {
            NumericalSolution {
                v1: w.clone(),
                v2: partner,
                ell1: ell,
                ell2: BigInt::one(),
                sign: -eps,
            }
        } else {
            NumericalSolution {
                v1: partner,
                v2: w.clone(),
                ell1: BigInt::one(),
                ell2: ell,
                sign: eps,
            }
        };
        sol.validate(v, ctx).then_some(sol)
    }

    /// Checks every defining condition from scratch.
    pub fn validate(&self, v: &MukaiVector, ctx: &SurfaceParams) -> bool {
        let one = BigInt::one();
        let combo = &self.v2.scale(self.ell2.clone()) - &self.v1.scale(self.ell1.clone());
        let lhs = combo.scale(self.sign);
        let slopes = match (self.v1.slope(ctx), self.v2.slope(ctx)) {
            (Ok(a), Ok(b)) => a < b,
            _ => false,
        };
        lhs == *v
            && self.ell1.is_positive()
            && self.ell2.is_positive()
            && ((&self.ell1 - &one) * (&self.ell2 - &one)).is_zero()
            && self.v1.pairing(&self.v2, ctx) == -one
            && [&self.v1, &self.v2]
                .iter()
                .all(|w| w.is_positive() && w.is_primitive() && w.is_isotropic(ctx))
            && slopes
    }

    /// Image under a group element preserving `v` up to sign.
    pub fn transform(&self, g: &GElement, v: &MukaiVector, ctx: &SurfaceParams) -> Option<Self> {
        Self::from_ell_side(v, &g.act(self.ell_side()), ctx)
    }

    fn sort_key(&self) -> (BigInt, BigInt, MukaiVector, MukaiVector) {
        let w = self.ell_side();
        (w.r.clone(), w.d.abs(), self.v1.clone(), self.v2.clone())
    }
}

/// A primitive isotropic `w = (P^2 r1, P Q, Q^2 s1)` with `<w, v> = eps`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Candidate {
    pub p: BigInt,
    pub q: BigInt,
    pub r1: u64,
    pub s1: u64,
    pub eps: i8,
    pub w: MukaiVector,
}

/// All candidates with `P >= 0` and `P^2 r1 <= rank_bound`.
pub(crate) fn candidates(v: &MukaiVector, ctx: &SurfaceParams, rank_bound: &BigInt, exec: Exec) -> Vec<Candidate> {
    let n = ctx.n_big();
    let ell = v.ell(ctx);
    let mut out = Vec::new();
    if v.r.abs().is_one() && rank_bound >= &BigInt::zero() {
        out.push(Candidate {
            p: BigInt::zero(),
            q: BigInt::one(),
            r1: ctx.n(),
            s1: 1,
            eps: if v.r.is_positive() { -1 } else { 1 },
            w: MukaiVector::new(0, 0, 1),
        });
    }
    let mut tasks = Vec::new();
    for (r1, s1) in ctx.divisor_pairs() {
        let pmax = (rank_bound / r1).sqrt();
        let pmax = pmax.to_u64().unwrap_or(u64::MAX);
        tasks.extend((1..=pmax).map(|p| (r1, s1, p)));
    }
    let found = par::flat_map(exec, tasks, |(r1, s1, p)| {
        let p = BigInt::from(p);
        let mut qs: Vec<(BigInt, i8)> = Vec::new();
        if v.r.is_zero() {
            let den: BigInt = &n * &v.d * &p * 2;
            for eps in [1i8, -1] {
                let num = &v.a * r1 * &p * &p + eps;
                if !den.is_zero() && (&num % &den).is_zero() {
                    qs.push((num / &den, eps));
                }
            }
        } else {
            let den: BigInt = &v.r * s1;
            for eps in [1i8, -1] {
                let disc = &n * &ell * &p * &p - &den * eps;
                let Some(t) = exact_sqrt(&disc) else { continue };
                let mut roots = vec![&n * &v.d * &p + &t];
                if !t.is_zero() {
                    roots.push(&n * &v.d * &p - &t);
                }
                for num in roots {
                    if (&num % &den).is_zero() {
                        qs.push((num / &den, eps));
                    }
                }
            }
        }
        qs.into_iter()
            .filter_map(|(q, eps)| {
                let w = MukaiVector::new(&p * &p * r1, &p * &q, &q * &q * s1);
                let ok = w.is_primitive() && w.pairing(v, ctx) == BigInt::from(eps);
                ok.then(|| Candidate {
                    p: p.clone(),
                    q,
                    r1,
                    s1,
                    eps,
                    w,
                })
            })
            .collect()
    });
    out.extend(found);
    out
}

pub fn solution_count_class(v: &MukaiVector, ctx: &SurfaceParams) -> Result<CountClass> {
    let ell = v.ell(ctx);
    if !ell.is_positive() {
        return Err(Error::NonPositiveSquare);
    }
    Ok(if is_square(&(ell * ctx.n())) {
        CountClass::AtMostOne
    } else {
        CountClass::ZeroOrInfinite
    })
}

pub fn solve_numerical(v: &MukaiVector, ctx: &SurfaceParams, height_bound: &BigInt) -> Result<Vec<NumericalSolution>> {
    solve_numerical_with(v, ctx, height_bound, Exec::default())
}

/// All solutions whose `v1` has height at most `height_bound`, sorted by the
/// rank of the multiplicity-`l` vector.
pub fn solve_numerical_with(
    v: &MukaiVector,
    ctx: &SurfaceParams,
    height_bound: &BigInt,
    exec: Exec,
) -> Result<Vec<NumericalSolution>> {
    if !v.ell(ctx).is_positive() {
        return Err(Error::NonPositiveSquare);
    }
    // v1 is either w or l w - eps v, so rank(w) <= H + height(v) covers both
    let rank_bound = height_bound + v.height();
    let mut sols: Vec<NumericalSolution> = candidates(v, ctx, &rank_bound, exec)
        .into_iter()
        .filter_map(|c| NumericalSolution::from_ell_side(v, &c.w, ctx))
        .filter(|s| s.v1.height() <= *height_bound)
        .collect();
    sols.sort_by_key(|s| s.sort_key());
    sols.dedup();
    Ok(sols)
}

/// The solution whose multiplicity-`l` vector has the smallest rank.
pub fn minimal_rank_solution(v: &MukaiVector, ctx: &SurfaceParams, height_bound: &BigInt) -> Result<NumericalSolution> {
    solve_numerical(v, ctx, height_bound)?
        .into_iter()
        .next()
        .ok_or(Error::NoSolutionWithinBound)
}

/// Generator `q + p sqrt(l)` of the Pell-type group, `q^2 - l p^2 = epsilon`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellUnit {
    pub n: u64,
    pub ell: BigInt,
    pub p: RootInt,
    pub q: RootInt,
    pub epsilon: i8,
}

impl PellUnit {
    /// The matrix `[[q, l p], [p, q]]` as an element of the extended group.
    pub fn to_group_element(&self, ctx: &SurfaceParams) -> Result<GElement> {
        for (r1, s1) in ctx.divisor_pairs() {
            let coef = |x: &RootInt, m: u64| -> Option<BigInt> {
                let (k, rem) = x.radicand().div_rem(&BigInt::from(m));
                if !rem.is_zero() {
                    return None;
                }
                exact_sqrt(&k)
            };
            if let (Some(pp), Some(qq)) = (coef(&self.p, r1), coef(&self.q, s1)) {
                return GElement::new(qq.clone(), &self.ell * &pp, pp, qq, s1, r1, ctx);
            }
        }
        Err(Error::InconsistentElement("unit entries".into()))
    }
}

/// Smallest solution `X + Y sqrt(D)` of `X^2 - D Y^2 = 1` via continued fractions.
fn fundamental_plus_one(dd: &BigInt) -> (BigInt, BigInt) {
    let a0 = dd.sqrt();
    let (mut m, mut den, mut a) = (BigInt::zero(), BigInt::one(), a0.clone());
    let (mut h_prev, mut h) = (BigInt::one(), a0.clone());
    let (mut k_prev, mut k) = (BigInt::zero(), BigInt::one());
    loop {
        if &h * &h - dd * &k * &k == BigInt::one() {
            return (h, k);
        }
        m = &den * &a - &m;
        den = (dd - &m * &m) / &den;
        a = (&a0 + &m) / &den;
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
}

pub fn pell_fundamental(ctx: &SurfaceParams, ell: &BigInt) -> Result<PellUnit> {
    if ell <= &BigInt::one() {
        return Err(Error::Unsupported("ell must be at least 2".into()));
    }
    let dd = ell * ctx.n();
    if is_square(&dd) {
        return Err(Error::SquareDiscriminant);
    }
    let (x, y) = fundamental_plus_one(&dd);
    let unit = |p2: BigInt, q2: BigInt, eps: i8| PellUnit {
        n: ctx.n(),
        ell: ell.clone(),
        p: RootInt::sqrt(p2),
        q: RootInt::sqrt(q2),
        epsilon: eps,
    };
    // the generator is either the square root of x + y sqrt(D) or the unit itself
    if y.is_even() {
        for eps in [-1i8, 1] {
            let (q2, rq) = (&x + eps).div_rem(&BigInt::from(2));
            let (p2, rp) = (&x - eps).div_rem(&(ell * 2));
            if rq.is_zero() && rp.is_zero() && p2.is_positive() {
                let prod = &p2 * &q2;
                if (&prod % ctx.n()).is_zero() && is_square(&(prod / ctx.n())) {
                    return Ok(unit(p2, q2, eps));
                }
            }
        }
    }
    Ok(unit(&y * &y * ctx.n(), &x * &x, 1))
}

/// `[[b_m, l a_m], [a_m, b_m]] = [[q, l p], [p, q]]^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitPower {
    pub m: i64,
    pub a_m: RootInt,
    pub b_m: RootInt,
}

pub fn unit_power(u: &PellUnit, m: i64) -> UnitPower {
    let ell = RootInt::from_int(u.ell.clone());
    let lp = &ell * &u.p;
    let (mut a, mut b) = (RootInt::zero(), RootInt::one());
    for _ in 0..m.unsigned_abs() {
        let nb = (&u.q * &b).checked_add(&(&lp * &a)).expect("commensurable");
        let na = (&u.p * &b).checked_add(&(&u.q * &a)).expect("commensurable");
        a = na;
        b = nb;
    }
    if m < 0 && m % 2 != 0 && u.epsilon < 0 {
        // (a_{-m}, b_{-m}) = eps^m (-a_m, b_m)
        b = -b;
    } else if m < 0 {
        a = -a;
    }
    UnitPower { m, a_m: a, b_m: b }
}

/// Orders solutions by the rank of the multiplicity-`l` vector (then `|d|`).
pub fn compare_by_rank(x: &NumericalSolution, y: &NumericalSolution) -> Ordering {
    x.sort_key().cmp(&y.sort_key())
}
