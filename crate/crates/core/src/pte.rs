//! Thue-Morse splits of `{0, .., 2^k - 1}`, power sums, and the
//! block-concatenated compositions `W(k; r, s, t)`.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};

use crate::{Error, Result};

pub const MAX_PTE_K: u32 = 20;

/// `t_set` holds the integers in `[0, 2^k)` with odd binary digit sum,
/// `t_bar` those with even digit sum. Both are sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PtePair {
    pub k: u32,
    pub t_set: Vec<u64>,
    pub t_bar: Vec<u64>,
}

/// Builds the pair by the doubling recursion and checks it against the
/// digit-parity description.
pub fn pte_split(k: u32) -> Result<PtePair> {
    if k == 0 || k > MAX_PTE_K {
        return Err(Error::Ceiling {
            what: "PTE order k",
            value: k as u64,
            max: MAX_PTE_K as u64,
        });
    }
    // T_{j+1} = T_j  +  ({0..2^j} \ T_j) + 2^j
    let mut odd: Vec<u64> = Vec::new();
    for j in 0..k {
        let half = 1u64 << j;
        let mut in_set = alloc::vec![false; half as usize];
        for &x in &odd {
            in_set[x as usize] = true;
        }
        let upper: Vec<u64> = (0..half).filter(|&x| !in_set[x as usize]).map(|x| x + half).collect();
        odd.extend(upper);
    }
    let by_parity: Vec<u64> = (0..1u64 << k).filter(|x| x.count_ones() % 2 == 1).collect();
    if odd != by_parity {
        return Err(Error::Verification(format!(
            "Thue-Morse recursion disagrees with digit parity at k = {k}"
        )));
    }
    let t_bar = (0..1u64 << k).filter(|x| x.count_ones() % 2 == 0).collect();
    Ok(PtePair {
        k,
        t_set: odd,
        t_bar,
    })
}

/// `sum x^m` over `xs`, with `0^0 = 1`.
pub fn power_sum<I, T>(xs: I, m: u32) -> BigInt
where
    I: IntoIterator<Item = T>,
    BigInt: From<T>,
{
    xs.into_iter()
        .map(|x| num_traits::pow(BigInt::from(x), m as usize))
        .sum()
}

/// `S_{k+j}(T_k) - S_{k+j}(T̄_k)`.
pub fn pte_defect(k: u32, j: u32) -> Result<BigInt> {
    let pair = pte_split(k)?;
    Ok(power_sum(pair.t_set.iter().copied(), k + j) - power_sum(pair.t_bar.iter().copied(), k + j))
}

fn factorial(n: u32) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

fn choose2(n: u32) -> usize {
    (n as usize) * (n as usize).saturating_sub(1) / 2
}

/// Closed form of the leading defect: `(-1)^(k+1) k! 2^C(k,2)`.
pub fn leading_defect(k: u32) -> BigInt {
    let magnitude = BigInt::from(factorial(k) << choose2(k));
    if k % 2 == 1 {
        magnitude
    } else {
        -magnitude
    }
}

/// Upper bound on `|S_{k+j}(T_k) - S_{k+j}(T̄_k)|`: `(k+j)! 2^C(k+j+1, 2)`.
pub fn defect_bound(k: u32, j: u32) -> BigUint {
    factorial(k + j) << choose2(k + j + 1)
}

/// A finite sequence of nonnegative integers; order is significant.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Composition {
    pub parts: Vec<u64>,
}

impl Composition {
    pub fn new(parts: Vec<u64>) -> Self {
        Composition { parts }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn sum(&self) -> BigUint {
        self.parts.iter().map(|&p| BigUint::from(p)).sum()
    }

    /// Parts in nonincreasing order, zeros kept.
    pub fn sorted_desc(&self) -> Vec<u64> {
        let mut v = self.parts.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    /// The partition of [`Composition::sum`] formed by the positive parts.
    pub fn to_partition(&self) -> Result<crate::Partition> {
        let parts = self
            .sorted_desc()
            .into_iter()
            .filter(|&p| p > 0)
            .map(|p| {
                u32::try_from(p).map_err(|_| Error::Constraint(format!("part {p} exceeds u32")))
            })
            .collect::<Result<Vec<_>>>()?;
        crate::Partition::new(parts)
    }
}

/// One member of a `W` chain together with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WMember {
    pub r: u32,
    pub s: u32,
    pub t: u32,
    pub composition: Composition,
}

fn shifted(xs: &[u64], by: u64, out: &mut Vec<u64>) {
    out.extend(xs.iter().map(|&x| x + by));
}

/// `W(k; r, s, t)`: `T̄^r T^s`, then `T̄ + j 2^k` for `j = 1..=t`,
/// `T + (t+1) 2^k`, `T̄ + (j+t+1) 2^k` for `j = 1..=s-t`, and
/// `T + (j+s+1) 2^k` for `j = 1..=r`, where `T`, `T̄` are the sorted
/// Thue-Morse halves of order `k`.
pub fn w_sequence(k: u32, r: u32, s: u32, t: u32) -> Result<Composition> {
    if k < 2 {
        return Err(Error::Constraint(format!("W needs k >= 2, got {k}")));
    }
    if t > s {
        return Err(Error::Constraint(format!("W needs s >= t, got s = {s}, t = {t}")));
    }
    let pair = pte_split(k)?;
    let (odd, even) = (&pair.t_set, &pair.t_bar);
    let step = 1u64 << k;
    let mut parts = Vec::with_capacity(w_length(k, r + s));
    for _ in 0..r {
        shifted(even, 0, &mut parts);
    }
    for _ in 0..s {
        shifted(odd, 0, &mut parts);
    }
    for j in 1..=t as u64 {
        shifted(even, j * step, &mut parts);
    }
    shifted(odd, (t as u64 + 1) * step, &mut parts);
    for j in 1..=(s - t) as u64 {
        shifted(even, (j + t as u64 + 1) * step, &mut parts);
    }
    for j in 1..=r as u64 {
        shifted(odd, (j + s as u64 + 1) * step, &mut parts);
    }
    Ok(Composition { parts })
}

/// Number of parts of every `W(k; r, s, t)` with `r + s = sigma`.
pub fn w_length(k: u32, sigma: u32) -> usize {
    (1usize << (k - 1)) * (2 * sigma as usize + 1)
}

/// Sum of every `W(k; r, s, t)` with `r + s = sigma`:
/// `4^(k-1) (sigma^2 + 5 sigma + 3) - 2^(k-2) (2 sigma + 1)`.
pub fn w_sum(k: u32, sigma: u32) -> BigUint {
    let sigma = BigUint::from(sigma);
    let quad = &sigma * &sigma + 5u32 * &sigma + 3u32;
    let lin = 2u32 * &sigma + 1u32;
    (quad << (2 * (k as usize - 1))) - (lin << (k as usize - 2))
}

/// The chain `W(k;0,σ,0) -> W(k;0,σ,1) -> .. -> W(k;0,σ,σ) -> W(k;1,σ-1,0)
/// -> .. -> W(k;σ,0,0)`, all `(σ+1)(σ+2)/2` members.
///
/// Checks equal length and sum, and that each step swaps one copy of
/// `T_{k+1} + c` for `T̄_{k+1} + c`.
pub fn w_family(k: u32, sigma: u32) -> Result<Vec<WMember>> {
    let mut members = Vec::new();
    for r in 0..=sigma {
        let s = sigma - r;
        for t in 0..=s {
            members.push(WMember {
                r,
                s,
                t,
                composition: w_sequence(k, r, s, t)?,
            });
        }
    }
    let len = w_length(k, sigma);
    let sum = w_sum(k, sigma);
    for m in &members {
        if m.composition.len() != len || m.composition.sum() != sum {
            return Err(Error::Verification(format!(
                "W({k};{},{},{}) has length {} and sum {}, expected {len} and {sum}",
                m.r,
                m.s,
                m.t,
                m.composition.len(),
                m.composition.sum()
            )));
        }
    }
    let next = pte_split(k + 1)?;
    for w in members.windows(2) {
        if block_swap_shift(&w[0].composition, &w[1].composition, &next).is_none() {
            return Err(Error::Verification(format!(
                "W({k};{},{},{}) -> W({k};{},{},{}) is not a single block swap",
                w[0].r, w[0].s, w[0].t, w[1].r, w[1].s, w[1].t
            )));
        }
    }
    Ok(members)
}

/// Multiset differences `a - b` and `b - a`, each sorted.
fn multiset_difference(a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    a.sort_unstable();
    b.sort_unstable();
    let (mut only_a, mut only_b) = (Vec::new(), Vec::new());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) if x == y => {
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                only_a.push(*x);
                i += 1;
            }
            (Some(x), None) => {
                only_a.push(*x);
                i += 1;
            }
            (_, Some(y)) => {
                only_b.push(*y);
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    (only_a, only_b)
}

/// If `b` arises from `a` by replacing `next.t_set + c` with
/// `next.t_bar + c` (as multisets), returns `c`.
pub fn block_swap_shift(a: &Composition, b: &Composition, next: &PtePair) -> Option<u64> {
    let (only_a, only_b) = multiset_difference(&a.parts, &b.parts);
    if only_a.len() != next.t_set.len() || only_b.len() != next.t_bar.len() {
        return None;
    }
    // t_set of order >= 1 starts at 1, t_bar at 0.
    let c = only_b.first()?.checked_sub(next.t_bar[0])?;
    let matches = |got: &[u64], want: &[u64]| got.iter().zip(want).all(|(&g, &w)| g == w + c);
    (matches(&only_a, &next.t_set) && matches(&only_b, &next.t_bar)).then_some(c)
}
