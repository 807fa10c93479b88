//! Slope-driven decisions: WIT indices, image classes of sheaves with two
//! presentations, semi-homogeneous presentations and related checks.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{MukaiVector, SurfaceParams};
use crate::numsol::{candidates, Candidate};
use crate::par::Exec;
use crate::quad_arith::{slope_compare, RootInt, SlopeValue};

/// WIT index of a semi-homogeneous sheaf of slope `lambda_e` against a kernel
/// family of slope `mu0`.
pub fn wit_index(lambda_e: &SlopeValue, mu0: &SlopeValue) -> u8 {
    if slope_compare(lambda_e, mu0) == Ordering::Greater {
        0
    } else {
        2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ImageKind {
    Sheaf,
    TwoTermComplex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageClass {
    pub kind: ImageKind,
    /// Degrees `i` with `Phi^i(E) != 0`.
    pub nonvanishing: Vec<u8>,
}

/// Row of the image table containing `mu`. Requires
/// `mu_e1 < mu_e2 <= mu_f1 < mu_f2`.
pub fn image_class(
    mu_e1: &SlopeValue,
    mu_e2: &SlopeValue,
    mu_f1: &SlopeValue,
    mu_f2: &SlopeValue,
    mu: &SlopeValue,
) -> Result<ImageClass> {
    if !(mu_e1 < mu_e2 && mu_e2 <= mu_f1 && mu_f1 < mu_f2) {
        return Err(Error::Precondition("slopes must satisfy E1 < E2 <= F1 < F2".into()));
    }
    let (kind, nonvanishing) = if mu < mu_e1 {
        (ImageKind::Sheaf, vec![0])
    } else if mu < mu_e2 {
        (ImageKind::TwoTermComplex, vec![0, 1])
    } else if mu < mu_f1 {
        (ImageKind::Sheaf, vec![1])
    } else if mu < mu_f2 {
        (ImageKind::TwoTermComplex, vec![1, 2])
    } else {
        (ImageKind::Sheaf, vec![2])
    };
    Ok(ImageClass { kind, nonvanishing })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseTag {
    /// `0 -> E -> E1 -> E2 -> 0`
    A,
    /// `0 -> E -> E2 -> E1 -> 0`
    B,
    /// `0 -> E1 -> E2 -> E -> 0`
    C,
    /// `0 -> E2 -> E1 -> E -> 0`
    D,
}

impl CaseTag {
    /// The transform turning the presentation into an ideal-sheaf type one:
    /// whether it involves dualizing, and its shift.
    pub fn functor(self) -> (bool, i8) {
        match self {
            CaseTag::A => (true, 1),
            CaseTag::B => (false, -2),
            CaseTag::C => (true, 0),
            CaseTag::D => (false, -1),
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            CaseTag::A => "Ker(E1->E2)",
            CaseTag::B => "Ker(E2->E1)",
            CaseTag::C => "Coker(E1->E2)",
            CaseTag::D => "Coker(E2->E1)",
        }
    }

    fn from_signs(nonneg: bool, eps: i8) -> Self {
        match (nonneg, eps > 0) {
            (true, true) => CaseTag::A,
            (false, false) => CaseTag::B,
            (true, false) => CaseTag::C,
            (false, true) => CaseTag::D,
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            CaseTag::A => "a",
            CaseTag::B => "b",
            CaseTag::C => "c",
            CaseTag::D => "d",
        };
        f.write_str(c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationCase {
    pub tag: CaseTag,
    pub p1: RootInt,
    pub q1: RootInt,
    pub p2: RootInt,
    pub q2: RootInt,
    pub epsilon: i8,
    /// `v(E1) = l v1`.
    pub v1_total: MukaiVector,
    pub v2: MukaiVector,
    pub dualized: bool,
    pub shift: i8,
}

impl PresentationCase {
    /// `v` recovered from the exact sequence of the case.
    pub fn reconstruct(&self) -> MukaiVector {
        match self.tag {
            CaseTag::A | CaseTag::D => &self.v1_total - &self.v2,
            CaseTag::B | CaseTag::C => &self.v2 - &self.v1_total,
        }
    }
}

/// Integer parts of `p2 = P2 sqrt(s1)` and `q2 = Q2 sqrt(r1)`.
fn second_pair(v: &MukaiVector, c: &Candidate) -> (BigInt, BigInt) {
    let eps = BigInt::from(c.eps);
    let p2 = &eps * (&v.d * &c.p * c.r1 - &v.r * &c.q);
    let q2 = &eps * (&v.a * &c.p - &v.d * &c.q * c.s1);
    (p2, q2)
}

fn order_key(c: &Candidate) -> (BigInt, BigInt, i8) {
    (&c.p * &c.p * c.r1, &c.q * &c.q * c.s1, -c.eps)
}

/// Solutions of `<w, v> = +-1` ordered by `|p1|`, then `|q1|`, then `eps = +1` first.
pub(crate) fn minimal_candidate(v: &MukaiVector, ctx: &SurfaceParams, bound: &BigInt) -> Result<Candidate> {
    if !v.ell(ctx).is_positive() {
        return Err(Error::NonPositiveSquare);
    }
    candidates(v, ctx, bound, Exec::default())
        .into_iter()
        .min_by_key(order_key)
        .ok_or(Error::NoSolutionWithinBound)
}

fn build_case(v: &MukaiVector, ctx: &SurfaceParams, c: &Candidate) -> PresentationCase {
    let ell = v.ell(ctx);
    let (p2, q2) = second_pair(v, c);
    let nonneg = c.p.is_zero() || !p2.is_positive();
    let tag = CaseTag::from_signs(nonneg, c.eps);
    let (dualized, shift) = tag.functor();
    let v2 = MukaiVector::new(&p2 * &p2 * c.s1, &p2 * &q2, &q2 * &q2 * c.r1);
    PresentationCase {
        tag,
        p1: RootInt::scaled(c.p.clone(), c.r1),
        q1: RootInt::scaled(c.q.clone(), c.s1),
        p2: RootInt::scaled(p2, c.s1),
        q2: RootInt::scaled(q2, c.r1),
        epsilon: c.eps,
        v1_total: c.w.scale(ell),
        v2,
        dualized,
        shift,
    }
}

/// The candidate describing the same pair with the roles of `E1` and `E2`
/// exchanged (only meaningful when `l = 1`).
fn partner(v: &MukaiVector, c: &Candidate) -> Candidate {
    let (p2, q2) = second_pair(v, c);
    let (p, q) = if p2.is_negative() || (p2.is_zero() && q2.is_negative()) {
        (-p2, -q2)
    } else {
        (p2, q2)
    };
    let w = MukaiVector::new(&p * &p * c.s1, &p * &q, &q * &q * c.r1);
    Candidate {
        p,
        q,
        r1: c.s1,
        s1: c.r1,
        eps: -c.eps,
        w,
    }
}

pub fn presentation_case(v: &MukaiVector, ctx: &SurfaceParams, height_bound: &BigInt) -> Result<PresentationCase> {
    let mut c = minimal_candidate(v, ctx, height_bound)?;
    let ell = v.ell(ctx);
    if ell.is_one() {
        // both sides have multiplicity one; label them so that E1 has the smaller slope
        let other = partner(v, &c);
        if c.w.slope(ctx)? > other.w.slope(ctx)? {
            c = other;
        }
    }
    let case = build_case(v, ctx, &c);
    let e1 = c.w.clone();
    let consistent = case.reconstruct() == *v
        && e1.pairing(&case.v2, ctx) == -BigInt::one()
        && e1.is_isotropic(ctx)
        && case.v2.is_isotropic(ctx);
    if !consistent {
        return Err(Error::Precondition("presentation failed verification".into()));
    }
    Ok(case)
}

/// True iff `d'/r'` lies strictly outside `[d/r - T, d/r + T]` with
/// `T = sqrt(r + 1) / r * sqrt(l / n)`.
pub fn stable_image_bound(v: &MukaiVector, ctx: &SurfaceParams, vk: &MukaiVector) -> Result<bool> {
    if !vk.r.is_positive() {
        return Err(Error::RankZero);
    }
    if !v.r.is_positive() || !v.is_primitive() {
        return Err(Error::Precondition("v must be primitive of positive rank".into()));
    }
    let ell = v.ell(ctx);
    if !ell.is_positive() {
        return Err(Error::NonPositiveSquare);
    }
    let diff = &vk.d * &v.r - &v.d * &vk.r;
    let lhs = &diff * &diff * ctx.n();
    let rhs = (&v.r + 1) * ell * &vk.r * &vk.r;
    Ok(lhs > rhs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PoincareForm {
    A,
    B,
    C,
    D,
}

impl fmt::Display for PoincareForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            PoincareForm::A => "a",
            PoincareForm::B => "b",
            PoincareForm::C => "c",
            PoincareForm::D => "d",
        };
        f.write_str(c)
    }
}

impl PoincareForm {
    /// Template vector for the given `l` and `d`.
    pub fn template(self, ctx: &SurfaceParams, ell: &BigInt, d: &BigInt) -> MukaiVector {
        let d2n = d * d * ctx.n();
        match self {
            PoincareForm::A => MukaiVector::new(ell * &d2n - 1, ell * d, ell.clone()),
            PoincareForm::B => MukaiVector::new(&d2n - ell, d.clone(), 1),
            PoincareForm::C => MukaiVector::new(ell - &d2n, -d, -1),
            PoincareForm::D => MukaiVector::new(1, 0, -ell),
        }
    }
}

/// Templates matched by `v` for the given `l`.
pub fn poincare_forms(v: &MukaiVector, ctx: &SurfaceParams, ell: &BigInt) -> Vec<PoincareForm> {
    let mut out = Vec::new();
    if ell.is_positive() && (&v.d % ell).is_zero() {
        let d = &v.d / ell;
        if d.is_positive() && PoincareForm::A.template(ctx, ell, &d) == *v {
            out.push(PoincareForm::A);
        }
    }
    if v.d.is_positive() && PoincareForm::B.template(ctx, ell, &v.d) == *v {
        out.push(PoincareForm::B);
    }
    let neg = -&v.d;
    if neg.is_positive() && PoincareForm::C.template(ctx, ell, &neg) == *v {
        out.push(PoincareForm::C);
    }
    if PoincareForm::D.template(ctx, ell, &BigInt::zero()) == *v {
        out.push(PoincareForm::D);
    }
    out
}
