use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::Polynomial;
use crate::{Error, Result};

pub const MAX_PARTITION_N: u32 = 120;

/// Nonincreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Constraint("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Constraint("partition parts must be nonincreasing".into()));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn n(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }
}

/// Partitions of `n` in reverse lexicographic order, optionally with every
/// part at most `max_part`.
#[derive(Clone, Debug)]
pub struct Partitions {
    next: Option<Vec<u32>>,
}

impl Partitions {
    /// `n = 0` yields the single empty partition.
    pub fn with_max_part(n: u32, max_part: u32) -> Self {
        if n > 0 && max_part == 0 {
            return Partitions { next: None };
        }
        let mut first = vec![max_part.min(n).max(1); (n / max_part.min(n).max(1)) as usize];
        let rem = n - first.iter().sum::<u32>();
        if rem > 0 {
            first.push(rem);
        }
        Partitions { next: Some(first) }
    }

    fn advance(cur: &[u32]) -> Option<Vec<u32>> {
        // Strip trailing ones, decrement the last part above one and refill
        // greedily with parts no larger than it.
        let ones = cur.iter().rev().take_while(|&&p| p == 1).count();
        let head_len = cur.len() - ones;
        if head_len == 0 {
            return None;
        }
        let mut next = cur[..head_len].to_vec();
        let last = next.pop().expect("head nonempty") - 1;
        let mut rem = ones as u32 + 1 + last;
        while rem > 0 {
            let part = last.min(rem);
            next.push(part);
            rem -= part;
        }
        Some(next)
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.next.take()?;
        self.next = Self::advance(&cur);
        Some(Partition { parts: cur })
    }
}

/// Every partition of `n`, largest first part first.
pub fn enumerate_partitions(n: u32) -> Result<Partitions> {
    if n == 0 || n > MAX_PARTITION_N {
        return Err(Error::Ceiling {
            what: "partition size n",
            value: n as u64,
            max: MAX_PARTITION_N as u64,
        });
    }
    Ok(Partitions::with_max_part(n, n))
}

/// `sum f(p)` over the parts.
pub fn f_hat<I>(f: &Polynomial, parts: I) -> BigRational
where
    I: IntoIterator,
    I::Item: Into<u64>,
{
    parts
        .into_iter()
        .map(|p| f.eval_int(&BigInt::from(p.into())))
        .sum()
}

/// `f(1), .., f(n)` scaled by the common denominator of `f`, so that sums
/// over parts stay in the integers.
struct ScaledValues {
    denominator: BigInt,
    values: Vec<BigInt>,
}

impl ScaledValues {
    fn new(f: &Polynomial, n: u32) -> Self {
        let denominator = f.common_denominator();
        let scaled = f.scale(&BigRational::from_integer(denominator.clone()));
        let values = (0..=n)
            .map(|x| scaled.eval_int(&BigInt::from(x)).to_integer())
            .collect();
        ScaledValues {
            denominator,
            values,
        }
    }

    fn sum(&self, parts: &[u32]) -> BigInt {
        parts.iter().map(|&p| &self.values[p as usize]).sum()
    }
}

/// Distinct values `f̂(λ)` over partitions of `n` whose largest part is
/// exactly `largest`.
pub fn fhat_values_with_largest_part(
    f: &Polynomial,
    n: u32,
    largest: u32,
) -> Result<BTreeSet<BigRational>> {
    if n > MAX_PARTITION_N || largest == 0 || largest > n {
        return Err(Error::Constraint(format!(
            "largest part {largest} invalid for n = {n}"
        )));
    }
    let table = ScaledValues::new(f, n);
    let head = &table.values[largest as usize];
    let sums: BTreeSet<BigInt> = Partitions::with_max_part(n - largest, largest)
        .map(|p| head + table.sum(p.parts()))
        .collect();
    Ok(sums
        .into_iter()
        .map(|s| BigRational::new(s, table.denominator.clone()))
        .collect())
}

/// `|{f̂(λ) : λ ⊢ n}|` by exhaustive enumeration.
pub fn distinct_fhat_count(f: &Polynomial, n: u32) -> Result<usize> {
    let table = ScaledValues::new(f, n);
    let values: BTreeSet<BigInt> = enumerate_partitions(n)?
        .map(|p| table.sum(p.parts()))
        .collect();
    Ok(values.len())
}
