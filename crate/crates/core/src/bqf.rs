//! Binary quadratic forms `r x^2 + 2 d x y + a y^2` of discriminant
//! `l = d^2 - r a`: equivalence, canonical representatives, class lists and
//! the diagonalizing matrix attached to a Mukai vector on a principally
//! polarized surface.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{MukaiVector, SurfaceParams};
use crate::par::{self, Exec};
use crate::presentation::{minimal_candidate, CaseTag};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bqf {
    pub r: i64,
    pub d: i64,
    pub a: i64,
}

impl Bqf {
    pub const fn new(r: i64, d: i64, a: i64) -> Self {
        Bqf { r, d, a }
    }

    pub fn from_vector(v: &MukaiVector) -> Result<Self> {
        let conv = |x: &BigInt| x.to_i64().ok_or_else(|| Error::OutOfRange(format!("coefficient {x}")));
        Ok(Bqf::new(conv(&v.r)?, conv(&v.d)?, conv(&v.a)?))
    }

    pub fn discriminant(&self) -> i64 {
        self.d * self.d - self.r * self.a
    }

    pub fn height(&self) -> i64 {
        self.r.abs().max(self.d.abs()).max(self.a.abs())
    }

    /// `gcd(r, d, a)`, the content as a Mukai vector.
    pub fn vector_content(&self) -> i64 {
        self.r.gcd(&self.d).gcd(&self.a)
    }

    /// `gcd(r, 2d, a)`, the content of the form itself.
    pub fn form_content(&self) -> i64 {
        self.r.gcd(&(2 * self.d)).gcd(&self.a)
    }

    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.r * x * x + 2 * self.d * x * y + self.a * y * y
    }

    /// `tA F A` for the integer matrix `A = [[p, q], [s, t]]`.
    pub fn transform(&self, m: [[i64; 2]; 2]) -> Bqf {
        let [[p, q], [s, t]] = m;
        Bqf::new(
            self.eval(p, s),
            self.r * p * q + self.d * (p * t + q * s) + self.a * s * t,
            self.eval(q, t),
        )
    }

    pub fn neg(&self) -> Bqf {
        Bqf::new(-self.r, -self.d, -self.a)
    }

    /// Forms adjacent under the generating moves.
    fn moves(&self) -> [Bqf; 6] {
        let Bqf { r, d, a } = *self;
        [
            Bqf::new(r, r + d, r + 2 * d + a),
            Bqf::new(r, d - r, r - 2 * d + a),
            Bqf::new(a, d, r),
            Bqf::new(r, -d, a),
            Bqf::new(-r, -d, -a),
            Bqf::new(r + 2 * d + a, d + a, a),
        ]
    }

    /// Normalized shape: `r = a = 0 < d`, or `0 < r`, `0 <= 2d <= r <= -a`.
    pub fn in_region(&self) -> bool {
        (self.r == 0 && self.a == 0 && self.d > 0)
            || (self.r > 0 && 0 <= 2 * self.d && 2 * self.d <= self.r && self.r <= -self.a)
    }
}

impl fmt::Display for Bqf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (c, mono) in [(self.r, "x^2"), (2 * self.d, "xy"), (self.a, "y^2")] {
            if c == 0 {
                continue;
            }
            let coef = match c.abs() {
                1 => String::new(),
                k => k.to_string(),
            };
            let sign = if c < 0 {
                "-"
            } else if terms.is_empty() {
                ""
            } else {
                "+"
            };
            terms.push(format!("{sign}{coef}{mono}"));
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&terms.concat())
    }
}

pub fn bqf_discriminant(f: &Bqf) -> i64 {
    f.discriminant()
}

/// Greedy height descent by the unipotent moves and the swap.
fn descend(mut f: Bqf) -> Bqf {
    loop {
        let mut best = f;
        let mut push = |g: Bqf| {
            if g.height() < best.height() {
                best = g;
            }
        };
        if f.r != 0 {
            let k = Integer::div_floor(&-f.d, &f.r);
            for k in [k, k + 1] {
                push(f.transform([[1, k], [0, 1]]));
            }
        }
        if f.a != 0 {
            let k = Integer::div_floor(&-f.d, &f.a);
            for k in [k, k + 1] {
                push(f.transform([[1, 0], [k, 1]]));
            }
        }
        if best == f {
            return f;
        }
        f = best;
    }
}

/// The orbit of `f` under `GL(2, Z)` and `f -> -f`, restricted to forms of
/// height at most `max(6 l + 6, h)` where `h` is the height after descent.
pub fn bounded_orbit(f: &Bqf) -> Result<Vec<Bqf>> {
    let ell = f.discriminant();
    if ell < 0 {
        return Err(Error::NegativeDiscriminant);
    }
    let start = descend(*f);
    let bound = (6 * ell + 6).max(start.height());
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(g) = queue.pop_front() {
        for h in g.moves() {
            if h.height() <= bound && seen.insert(h) {
                queue.push_back(h);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

pub fn bqf_canonical(f: &Bqf) -> Result<Bqf> {
    let orbit = bounded_orbit(f)?;
    let region = orbit.iter().filter(|g| g.in_region()).min();
    Ok(*region.unwrap_or_else(|| orbit.iter().min().expect("orbit contains f")))
}

/// Equivalence under `GL(2, Z)` up to an overall sign.
pub fn bqf_equivalent(f: &Bqf, g: &Bqf) -> Result<bool> {
    if f.discriminant() != g.discriminant() {
        return Ok(false);
    }
    Ok(bqf_canonical(f)? == bqf_canonical(g)?)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassListOptions {
    /// Keep only forms with `gcd(r, 2d, a) = 1`.
    pub primitive_only: bool,
    /// Largest accepted discriminant.
    pub max_ell: Option<i64>,
}

pub const DEFAULT_MAX_ELL: i64 = 100;

/// Canonical representatives of the classes of forms with discriminant `l`
/// whose coefficient vector is primitive.
pub fn bqf_class_list(ell: i64, opts: ClassListOptions) -> Result<Vec<Bqf>> {
    let max = opts.max_ell.unwrap_or(DEFAULT_MAX_ELL);
    if ell < 1 || ell > max {
        return Err(Error::OutOfRange(format!("discriminant {ell} outside 1..={max}")));
    }
    let mut seeds = Vec::new();
    let root = ell.sqrt();
    if root * root == ell {
        seeds.push(Bqf::new(0, root, 0));
    }
    for d in 0..=root {
        let rest = ell - d * d;
        let mut r = (2 * d).max(1);
        while r * r <= rest {
            if (d * d - ell) % r == 0 {
                let f = Bqf::new(r, d, (d * d - ell) / r);
                if f.in_region() {
                    seeds.push(f);
                }
            }
            r += 1;
        }
    }
    seeds.retain(|f| f.vector_content() == 1 && (!opts.primitive_only || f.form_content() == 1));
    let canon: BTreeSet<Bqf> = seeds
        .iter()
        .map(bqf_canonical)
        .collect::<Result<_>>()?;
    Ok(canon.into_iter().collect())
}

/// Class lists for every `l` in `1..=ell_max`.
pub fn bqf_table(ell_max: i64, opts: ClassListOptions, exec: Exec) -> Result<Vec<(i64, Vec<Bqf>)>> {
    let rows = par::map(exec, (1..=ell_max).collect(), |l| bqf_class_list(l, opts).map(|c| (l, c)));
    rows.into_iter().collect()
}

pub type Mat2 = [[BigInt; 2]; 2];

fn mat_mul(x: &Mat2, y: &Mat2) -> Mat2 {
    std::array::from_fn(|i| std::array::from_fn(|j| &x[i][0] * &y[0][j] + &x[i][1] * &y[1][j]))
}

fn transpose(x: &Mat2) -> Mat2 {
    [[x[0][0].clone(), x[1][0].clone()], [x[0][1].clone(), x[1][1].clone()]]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BirationalRecipe {
    pub gamma: Mat2,
    pub p1: BigInt,
    pub q1: BigInt,
    pub p2: BigInt,
    pub q2: BigInt,
    pub v1: MukaiVector,
    pub v2: MukaiVector,
    pub epsilon: i8,
    pub dualized: bool,
    pub shift_parity: u8,
}

impl BirationalRecipe {
    /// `tg Q_v g` for the recipe's matrix.
    pub fn diagonalized(&self, v: &MukaiVector) -> Mat2 {
        let qv = [[v.r.clone(), v.d.clone()], [v.d.clone(), v.a.clone()]];
        mat_mul(&mat_mul(&transpose(&self.gamma), &qv), &self.gamma)
    }

    /// Checks `tg Q_v g = -eps diag(1, -l)`.
    pub fn verify(&self, v: &MukaiVector) -> bool {
        let ell = &v.d * &v.d - &v.r * &v.a;
        let e = BigInt::from(-self.epsilon);
        let expected = [[e.clone(), BigInt::zero()], [BigInt::zero(), -e * ell]];
        self.diagonalized(v) == expected
    }
}

pub fn birational_recipe(v: &MukaiVector, ctx: &SurfaceParams, height_bound: &BigInt) -> Result<BirationalRecipe> {
    if ctx.n() != 1 {
        return Err(Error::NotRankOneSurface);
    }
    let c = minimal_candidate(v, ctx, height_bound)?;
    let (r, d, a) = (&v.r, &v.d, &v.a);
    let (p1, q1) = (c.p.clone(), c.q.clone());
    let eps = BigInt::from(c.eps);
    let q2 = -&eps * (d * &q1 - a * &p1);
    let p2 = &eps * (d * &p1 - r * &q1);
    let gamma = [[q1.clone(), -q2.clone()], [-&p1, p2.clone()]];
    let nonneg = p1.is_zero() || !p2.is_positive();
    let tag = match (nonneg, c.eps > 0) {
        (true, true) => CaseTag::A,
        (false, false) => CaseTag::B,
        (true, false) => CaseTag::C,
        (false, true) => CaseTag::D,
    };
    let (dualized, shift) = tag.functor();
    let recipe = BirationalRecipe {
        gamma,
        v1: MukaiVector::new(&p1 * &p1, &p1 * &q1, &q1 * &q1),
        v2: MukaiVector::new(&p2 * &p2, &p2 * &q2, &q2 * &q2),
        p1,
        q1,
        p2,
        q2,
        epsilon: c.eps,
        dualized,
        shift_parity: shift.rem_euclid(2) as u8,
    };
    if !recipe.verify(v) {
        return Err(Error::Precondition("diagonalization identity failed".into()));
    }
    Ok(recipe)
}

/// Determinant of the recipe matrix, `+-1`.
pub fn gamma_det(g: &Mat2) -> BigInt {
    &g[0][0] * &g[1][1] - &g[0][1] * &g[1][0]
}

/// True when `x` is `+1` or `-1`.
pub fn is_unit(x: &BigInt) -> bool {
    x.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(r: i64, d: i64, a: i64) -> Bqf {
        Bqf::new(r, d, a)
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn mat(m: [[i64; 2]; 2]) -> Mat2 {
        m.map(|row| row.map(BigInt::from))
    }

    #[test]
    fn discriminants() {
        assert_eq!(f(1, 0, -2).discriminant(), 2);
        assert_eq!(f(0, 1, 0).discriminant(), 1);
        assert_eq!(f(2, 1, -2).discriminant(), 5);
    }

    #[test]
    fn display() {
        assert_eq!(f(0, 1, 0).to_string(), "2xy");
        assert_eq!(f(1, 0, -1).to_string(), "x^2-y^2");
        assert_eq!(f(2, 1, -2).to_string(), "2x^2+2xy-2y^2");
        assert_eq!(f(3, 1, -3).to_string(), "3x^2+2xy-3y^2");
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(bqf_canonical(&f(2, -2, -1)).unwrap(), f(1, 0, -6));
        assert_eq!(bqf_canonical(&f(0, 3, 0)).unwrap(), f(0, 3, 0));
        assert_eq!(bqf_canonical(&f(0, -3, 0)).unwrap(), f(0, 3, 0));
        assert_eq!(bqf_canonical(&f(1, 0, -2)).unwrap(), f(1, 0, -2));
        assert_eq!(bqf_canonical(&f(1, 0, 1)), Err(Error::NegativeDiscriminant));
    }

    #[test]
    fn canonical_handles_large_coefficients() {
        let g = f(1, 0, -7).transform([[13, 8], [21, 13]]);
        assert!(g.height() > 100);
        assert_eq!(bqf_canonical(&g).unwrap(), f(1, 0, -7));
    }

    #[test]
    fn equivalence_examples() {
        assert!(bqf_equivalent(&f(2, 0, -3), &f(1, 0, -6)).unwrap());
        assert!(!bqf_equivalent(&f(1, 0, -5), &f(2, 1, -2)).unwrap());
        assert!(bqf_equivalent(&f(3, 1, -3), &f(3, 1, -3)).unwrap());
        assert!(!bqf_equivalent(&f(1, 0, -5), &f(1, 0, -6)).unwrap());
    }

    #[test]
    fn class_list_examples() {
        let opts = ClassListOptions::default();
        assert_eq!(bqf_class_list(2, opts).unwrap(), vec![f(1, 0, -2)]);
        assert_eq!(bqf_class_list(5, opts).unwrap(), vec![f(1, 0, -5), f(2, 1, -2)]);
        assert_eq!(bqf_class_list(1, opts).unwrap(), vec![f(0, 1, 0), f(1, 0, -1)]);
        assert!(bqf_class_list(0, opts).is_err());
        assert!(bqf_class_list(101, opts).is_err());
        let strict = ClassListOptions { primitive_only: true, ..opts };
        assert_eq!(bqf_class_list(5, strict).unwrap(), vec![f(1, 0, -5)]);
    }

    /// Independent check: search all `A` in `GL(2, Z)` with entries in `[-5, 5]`.
    fn oracle_equivalent(x: &Bqf, y: &Bqf) -> bool {
        for p in -5..=5 {
            for q in -5..=5 {
                for s in -5..=5 {
                    for t in -5..=5 {
                        if (p * t - q * s).abs() != 1 {
                            continue;
                        }
                        let g = x.transform([[p, q], [s, t]]);
                        if g == *y || g.neg() == *y {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    #[test]
    fn class_lists_agree_with_matrix_oracle() {
        for ell in 1..=10i64 {
            let list = bqf_class_list(ell, ClassListOptions::default()).unwrap();
            for (i, x) in list.iter().enumerate() {
                for y in &list[i + 1..] {
                    assert!(!oracle_equivalent(x, y), "{x} ~ {y}");
                }
            }
            // every small primitive form lands on exactly one listed class
            for r in -4..=4 {
                for d in -4..=4 {
                    for a in -4..=4 {
                        let g = f(r, d, a);
                        if g.discriminant() != ell || g.vector_content() != 1 {
                            continue;
                        }
                        let hits: Vec<_> = list.iter().filter(|x| oracle_equivalent(x, &g)).collect();
                        assert_eq!(hits.len(), 1, "{g} for l={ell}");
                        assert_eq!(bqf_canonical(&g).unwrap(), *hits[0]);
                    }
                }
            }
        }
    }

    #[test]
    fn recipe_examples() {
        let c = SurfaceParams::new(1).unwrap();
        let v = MukaiVector::new(1, 1, -1);
        let rec = birational_recipe(&v, &c, &big(1000)).unwrap();
        assert_eq!(rec.gamma, mat([[1, -1], [0, 1]]));
        assert_eq!(rec.epsilon, -1);
        assert_eq!(rec.diagonalized(&v), mat([[1, 0], [0, -2]]));
        let rec = birational_recipe(&MukaiVector::new(1, 0, -3), &c, &big(1000)).unwrap();
        assert_eq!(rec.gamma, mat([[1, 0], [0, 1]]));
        assert_eq!(rec.epsilon, -1);
        assert_eq!(
            birational_recipe(&MukaiVector::new(2, 1, -2), &c, &big(1000)),
            Err(Error::NoSolutionWithinBound)
        );
        let c2 = SurfaceParams::new(2).unwrap();
        assert_eq!(birational_recipe(&v, &c2, &big(10)), Err(Error::NotRankOneSurface));
    }

    #[test]
    fn recipe_matrices_are_unimodular() {
        let c = SurfaceParams::new(1).unwrap();
        for r in -5i64..=5 {
            for d in -5i64..=5 {
                for a in -5i64..=5 {
                    let v = MukaiVector::new(r, d, a);
                    if !v.ell(&c).is_positive() {
                        continue;
                    }
                    if let Ok(rec) = birational_recipe(&v, &c, &big(5000)) {
                        assert!(rec.verify(&v));
                        assert!(is_unit(&gamma_det(&rec.gamma)));
                    }
                }
            }
        }
    }
}
