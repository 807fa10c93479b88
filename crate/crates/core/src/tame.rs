//! Slope intervals `I_m`, `I_m*` cut out by the unit powers `(a_m, b_m)`, and
//! the classification of a kernel slope against them.

use std::sync::RwLock;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::lattice::SurfaceParams;
use crate::numsol::{pell_fundamental, unit_power, PellUnit, UnitPower};
use crate::par::{self, Exec};
use crate::quad_arith::{slope_compare, slope_is_sqrt, RootInt, SlopeValue, SqrtSign};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// Pieces `(s, t]`.
    I,
    /// Pieces `[s, t)`.
    Istar,
}

/// A half-open piece. An infinite `lo` reads as `-inf`, an infinite `hi` as `+inf`;
/// both denote the single point at infinity when it is included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub lo: SlopeValue,
    pub hi: SlopeValue,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl Piece {
    fn new(lo: SlopeValue, hi: SlopeValue, flavor: Flavor) -> Self {
        let star = flavor == Flavor::Istar;
        Piece {
            lo,
            hi,
            lo_open: !star,
            hi_open: star,
        }
    }

    pub fn contains(&self, x: &SlopeValue) -> bool {
        if x.is_infinite() {
            return (self.hi.is_infinite() && !self.hi_open) || (self.lo.is_infinite() && !self.lo_open);
        }
        let above = self.lo.is_infinite() || {
            let o = slope_compare(&self.lo, x);
            if self.lo_open {
                o.is_lt()
            } else {
                o.is_le()
            }
        };
        let below = self.hi.is_infinite() || {
            let o = slope_compare(x, &self.hi);
            if self.hi_open {
                o.is_lt()
            } else {
                o.is_le()
            }
        };
        above && below
    }

    /// True when the affine interval has interior points.
    pub fn is_nonempty(&self) -> bool {
        self.lo.is_infinite() || self.hi.is_infinite() || self.lo < self.hi
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalSpec {
    pub m: i64,
    pub flavor: Flavor,
    pub pieces: Vec<Piece>,
}

impl IntervalSpec {
    pub fn contains(&self, x: &SlopeValue) -> bool {
        self.pieces.iter().any(|p| p.contains(x))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TameClassification {
    pub m_sheaf: Option<i64>,
    pub m_dual: Option<i64>,
    pub boundary: Option<SqrtSign>,
    /// Set when the slope lies in no interval of the searched range.
    pub needs_wider_range: bool,
}

/// Interval data for one `(n, l)`, with unit powers memoized on demand.
pub struct TameSystem {
    ell: BigInt,
    unit: PellUnit,
    powers: RwLock<Vec<UnitPower>>,
}

impl TameSystem {
    pub fn new(ctx: &SurfaceParams, ell: &BigInt) -> Result<Self> {
        let unit = pell_fundamental(ctx, ell)?;
        Ok(TameSystem {
            ell: ell.clone(),
            unit,
            powers: RwLock::new(Vec::new()),
        })
    }

    pub fn unit(&self) -> &PellUnit {
        &self.unit
    }

    fn power(&self, k: usize) -> UnitPower {
        if let Some(p) = self.powers.read().expect("lock").get(k) {
            return p.clone();
        }
        let mut w = self.powers.write().expect("lock");
        while w.len() <= k {
            let m = w.len() as i64;
            w.push(unit_power(&self.unit, m));
        }
        w[k].clone()
    }

    /// `b_k / a_k`.
    fn ba(&self, k: usize) -> SlopeValue {
        let p = self.power(k);
        SlopeValue::new(p.b_m, p.a_m).expect("nonzero")
    }

    /// `l a_k / b_k`.
    fn lab(&self, k: usize) -> SlopeValue {
        let p = self.power(k);
        SlopeValue::new(RootInt::from_int(self.ell.clone()) * p.a_m, p.b_m).expect("nonzero")
    }

    pub fn intervals(&self, m: i64, flavor: Flavor) -> IntervalSpec {
        let zero = SlopeValue::zero;
        let inf = SlopeValue::infinity;
        let pc = |lo: SlopeValue, hi: SlopeValue| Piece::new(lo, hi, flavor);
        let pieces = if self.unit.epsilon < 0 {
            match m {
                0 => vec![pc(zero(), self.ba(1)), pc(self.lab(1), inf())],
                -1 => vec![pc(inf(), self.lab(1).neg()), pc(self.ba(1).neg(), zero())],
                m if m > 0 && m % 2 == 1 => {
                    let k = ((m + 1) / 2) as usize;
                    vec![
                        pc(self.ba(2 * k - 1), self.lab(2 * k)),
                        pc(self.ba(2 * k), self.lab(2 * k - 1)),
                    ]
                }
                m if m > 0 => {
                    let k = (m / 2) as usize;
                    vec![
                        pc(self.lab(2 * k), self.ba(2 * k + 1)),
                        pc(self.lab(2 * k + 1), self.ba(2 * k)),
                    ]
                }
                m if (-m) % 2 == 1 => {
                    let k = ((-m - 1) / 2) as usize;
                    vec![
                        pc(self.ba(2 * k).neg(), self.lab(2 * k + 1).neg()),
                        pc(self.ba(2 * k + 1).neg(), self.lab(2 * k).neg()),
                    ]
                }
                m => {
                    let k = (-m / 2) as usize;
                    vec![
                        pc(self.lab(2 * k - 1).neg(), self.ba(2 * k).neg()),
                        pc(self.lab(2 * k).neg(), self.ba(2 * k - 1).neg()),
                    ]
                }
            }
        } else {
            match m {
                0 => vec![pc(zero(), self.lab(1)), pc(self.ba(1), inf())],
                -1 => vec![pc(inf(), self.ba(1).neg()), pc(self.lab(1).neg(), zero())],
                m if m > 0 => {
                    let k = m as usize;
                    vec![
                        pc(self.lab(k), self.lab(k + 1)),
                        pc(self.ba(k + 1), self.ba(k)),
                    ]
                }
                m => {
                    let k = (-m - 1) as usize;
                    vec![
                        pc(self.ba(k).neg(), self.ba(k + 1).neg()),
                        pc(self.lab(k + 1).neg(), self.lab(k).neg()),
                    ]
                }
            }
        };
        IntervalSpec { m, flavor, pieces }
    }

    pub fn classify(&self, lambda: &SlopeValue, m_range: (i64, i64)) -> TameClassification {
        let boundary = match slope_is_sqrt(lambda, &self.ell) {
            SqrtSign::No => None,
            s => Some(s),
        };
        if boundary.is_some() {
            return TameClassification {
                m_sheaf: None,
                m_dual: None,
                boundary,
                needs_wider_range: false,
            };
        }
        let find = |flavor| (m_range.0..=m_range.1).find(|&m| self.intervals(m, flavor).contains(lambda));
        let m_sheaf = find(Flavor::I);
        let m_dual = find(Flavor::Istar);
        TameClassification {
            m_sheaf,
            m_dual,
            boundary: None,
            needs_wider_range: m_sheaf.is_none() || m_dual.is_none(),
        }
    }

    pub fn classify_many(&self, lambdas: Vec<SlopeValue>, m_range: (i64, i64), exec: Exec) -> Vec<TameClassification> {
        par::map(exec, lambdas, |l| self.classify(&l, m_range))
    }
}

pub fn tame_intervals(ctx: &SurfaceParams, ell: &BigInt, m: i64, flavor: Flavor) -> Result<IntervalSpec> {
    Ok(TameSystem::new(ctx, ell)?.intervals(m, flavor))
}

pub fn classify_slope(
    lambda: &SlopeValue,
    ctx: &SurfaceParams,
    ell: &BigInt,
    m_range: (i64, i64),
) -> Result<TameClassification> {
    if m_range.0 > m_range.1 {
        return Err(Error::OutOfRange("empty m range".into()));
    }
    Ok(TameSystem::new(ctx, ell)?.classify(lambda, m_range))
}
