//! Nested families of partitions with pairwise distinct polynomial sums.
//!
//! Each level takes the chain of `W(k; r, s, t)` compositions with
//! `r + s = sigma`, adds a common shift to every part, and the members of
//! the family concatenate one chain member per level. With shifts large
//! enough, consecutive chain members at a coarse level differ by more than
//! the whole spread of the finer level, so all sums are distinct. At desk
//! scale the shifts and chain lengths are caller-controlled and the
//! distinctness is checked directly.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use super::shifted::{coefficient_ratio_ceiling, floor_sqrt_scaled, r_threshold};
use super::{f_hat, Polynomial};
use crate::pte::w_family;
use crate::{Composition, Error, Result};

/// One level of the construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaLevel {
    pub k: u32,
    pub sigma: u32,
    /// Added to every part of every chain member.
    pub shift: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaParams {
    /// Levels in concatenation order.
    pub levels: Vec<LambdaLevel>,
    /// Maximum number of family members.
    pub budget: usize,
}

pub const DEFAULT_LAMBDA_BUDGET: usize = 1_000_000;

impl LambdaParams {
    /// Levels `k = d-1, .., 2` for `f` of degree `d >= 3`, with shift
    /// `alpha R_k 2^k` and chain parameter
    /// `s_k = floor(2^((d-t)(t-1)/2 - t) sqrt(alpha R_{k-1}))`, `t = d - k`,
    /// unless `s_override[t-1]` replaces it.
    pub fn from_polynomial(f: &Polynomial, s_override: Option<&[u32]>) -> Result<Self> {
        let d = f.degree().unwrap_or(0) as u32;
        if d < 3 {
            return Err(Error::Constraint(format!("lambda family needs degree >= 3, got {d}")));
        }
        if let Some(s) = s_override {
            if s.len() != (d - 2) as usize {
                return Err(Error::Constraint(format!(
                    "expected {} chain sizes, got {}",
                    d - 2,
                    s.len()
                )));
            }
        }
        let alpha = coefficient_ratio_ceiling(f)?;
        let mut levels = Vec::new();
        for t in 1..=d - 2 {
            let k = d - t;
            let shift = (&alpha * r_threshold(f, k)?) << k as usize;
            let shift = shift
                .to_u64()
                .ok_or_else(|| Error::Constraint(format!("shift at level {k} exceeds u64")))?;
            let sigma = match s_override {
                Some(s) => s[(t - 1) as usize],
                None => {
                    let base = &alpha * r_threshold(f, k - 1)?;
                    let twice_exp = (d - t) as i64 * (t as i64 - 1) - 2 * t as i64;
                    floor_sqrt_scaled(&base, twice_exp)
                        .to_u32()
                        .ok_or_else(|| Error::Constraint(format!("s_{k} exceeds u32")))?
                }
            };
            levels.push(LambdaLevel { k, sigma, shift });
        }
        Ok(LambdaParams {
            levels,
            budget: DEFAULT_LAMBDA_BUDGET,
        })
    }
}

/// Values along one level's chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelSummary {
    pub level: LambdaLevel,
    /// Shifted chain members, in chain order.
    pub members: Vec<Composition>,
    /// `f̂` of each member.
    pub values: Vec<BigRational>,
    pub n: BigUint,
    /// Smallest `|v_{j+1} - v_j|` along the chain (`None` for one member).
    pub min_gap: Option<BigRational>,
    /// `max - min` over the chain.
    pub spread: BigRational,
}

/// Nesting inequality between consecutive levels: every step at the later
/// level is at least the spread of the earlier one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestingCheck {
    pub earlier_k: u32,
    pub later_k: u32,
    pub earlier_spread: BigRational,
    pub later_min_gap: Option<BigRational>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaFamily {
    pub levels: Vec<LevelSummary>,
    /// Common sum of every member.
    pub n: BigUint,
    /// `f̂` of every member, indexed in mixed radix with the first level
    /// varying slowest.
    pub values: Vec<BigRational>,
    pub distinct_count: usize,
    pub nesting: Vec<NestingCheck>,
}

impl LambdaFamily {
    pub fn all_distinct(&self) -> bool {
        self.distinct_count == self.values.len()
    }

    /// Chain index chosen at each level for member `index`.
    pub fn choice(&self, mut index: usize) -> Vec<usize> {
        let mut out = alloc::vec![0; self.levels.len()];
        for (slot, level) in out.iter_mut().zip(&self.levels).rev() {
            *slot = index % level.members.len();
            index /= level.members.len();
        }
        out
    }

    /// The concatenated composition of member `index`.
    pub fn member(&self, index: usize) -> Composition {
        let parts = self
            .choice(index)
            .into_iter()
            .zip(&self.levels)
            .flat_map(|(j, level)| level.members[j].parts.iter().copied())
            .collect();
        Composition::new(parts)
    }
}

fn summarize(f: &Polynomial, level: &LambdaLevel) -> Result<LevelSummary> {
    let mut members = Vec::new();
    for m in w_family(level.k, level.sigma)? {
        let parts = m
            .composition
            .parts
            .iter()
            .map(|&p| {
                p.checked_add(level.shift)
                    .ok_or_else(|| Error::Constraint("shifted part exceeds u64".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        members.push(Composition::new(parts));
    }
    let n = members[0].sum();
    if members.iter().any(|m| m.sum() != n) {
        return Err(Error::Verification(format!(
            "chain at level {} does not share one sum",
            level.k
        )));
    }
    let values: Vec<BigRational> = members
        .iter()
        .map(|m| f_hat(f, m.parts.iter().copied()))
        .collect();
    let min_gap = values.windows(2).map(|w| (&w[1] - &w[0]).abs()).min();
    let spread = values.iter().max().expect("nonempty") - values.iter().min().expect("nonempty");
    Ok(LevelSummary {
        level: level.clone(),
        members,
        values,
        n,
        min_gap,
        spread,
    })
}

/// Builds the family and checks distinctness and nesting on the actual
/// values.
pub fn lambda_family(f: &Polynomial, params: &LambdaParams) -> Result<LambdaFamily> {
    if params.levels.is_empty() {
        return Err(Error::Constraint("lambda family needs at least one level".into()));
    }
    let mut size: usize = 1;
    for level in &params.levels {
        let chain = (level.sigma as usize + 1) * (level.sigma as usize + 2) / 2;
        size = size
            .checked_mul(chain)
            .filter(|&s| s <= params.budget)
            .ok_or(Error::Ceiling {
                what: "lambda family size",
                value: size.saturating_mul(chain) as u64,
                max: params.budget as u64,
            })?;
    }
    let levels = params
        .levels
        .iter()
        .map(|l| summarize(f, l))
        .collect::<Result<Vec<_>>>()?;

    let mut values = alloc::vec![BigRational::default()];
    for level in &levels {
        values = values
            .iter()
            .flat_map(|acc| level.values.iter().map(move |v| acc + v))
            .collect();
    }
    let distinct_count = values.iter().collect::<BTreeSet<_>>().len();
    let n = levels.iter().map(|l| &l.n).sum();

    let nesting = levels
        .windows(2)
        .map(|w| {
            let holds = match &w[1].min_gap {
                Some(gap) => *gap >= w[0].spread,
                None => true,
            };
            NestingCheck {
                earlier_k: w[0].level.k,
                later_k: w[1].level.k,
                earlier_spread: w[0].spread.clone(),
                later_min_gap: w[1].min_gap.clone(),
                holds,
            }
        })
        .collect();

    Ok(LambdaFamily {
        levels,
        n,
        values,
        distinct_count,
        nesting,
    })
}
