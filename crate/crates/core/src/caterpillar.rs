//! Spiders `S(d;a,b)`, caterpillars `cat(d_1..d_t; m)`, and the per-joint
//! polynomials `f_k` with `|L^k(S(d;k,k))| = f_k(d) + 1/2`.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::graph::iterated_sizes;
use crate::shadowcount::lk_size_via_shadows;
use crate::treegen::canonical_code;
use crate::{Error, Graph, Limits, Polynomial, Result, WtTable};

fn to_u32(n: usize) -> Result<u32> {
    u32::try_from(n).map_err(|_| Error::Ceiling {
        what: "vertex label",
        value: n as u64,
        max: u32::MAX as u64,
    })
}

/// `S(d;a,b)`: a center with `d` pendant leaves and two pendant paths of
/// lengths `a` and `b`.
///
/// The center is 0, leaves are `1..=d`, the `a`-path follows outward from
/// the center, then the `b`-path.
pub fn star_graph(d: usize, a: usize, b: usize) -> Result<Graph> {
    let n = d + a + b + 1;
    to_u32(n)?;
    let mut edges = Vec::with_capacity(n - 1);
    for leaf in 1..=d {
        edges.push((0, leaf as u32));
    }
    let mut next = d + 1;
    for len in [a, b] {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next as u32));
            prev = next as u32;
            next += 1;
        }
    }
    Ok(Graph::from_sorted_edges(n, sorted(edges)))
}

fn sorted(mut edges: Vec<(u32, u32)>) -> Vec<(u32, u32)> {
    edges.sort_unstable();
    edges
}

/// A caterpillar: spine `v_0 .. v_{(t+1)m + pad}` with `parts[i-1]` leaves
/// on `v_{im}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CaterpillarSpec {
    pub parts: Vec<usize>,
    pub spacing: usize,
    pub pad: usize,
}

impl CaterpillarSpec {
    pub fn new(parts: Vec<usize>, spacing: usize, pad: usize) -> Result<Self> {
        let spec = CaterpillarSpec {
            parts,
            spacing,
            pad,
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        if self.spacing == 0 {
            return Err(Error::Constraint("caterpillar spacing must be positive".into()));
        }
        Ok(())
    }

    pub fn spine_length(&self) -> usize {
        (self.parts.len() + 1) * self.spacing + self.pad
    }

    pub fn vertex_count(&self) -> usize {
        self.spine_length() + 1 + self.parts.iter().sum::<usize>()
    }
}

pub fn caterpillar_graph(spec: &CaterpillarSpec) -> Result<Graph> {
    spec.validate()?;
    let n = spec.vertex_count();
    to_u32(n)?;
    let spine = spec.spine_length();
    let mut edges: Vec<(u32, u32)> = (0..spine as u32).map(|v| (v, v + 1)).collect();
    let mut next = spine as u32 + 1;
    for (i, &d) in spec.parts.iter().enumerate() {
        let joint = ((i + 1) * spec.spacing) as u32;
        for _ in 0..d {
            edges.push((joint, next));
            next += 1;
        }
    }
    Ok(Graph::from_sorted_edges(n, sorted(edges)))
}

/// Source of `|L^k(S(d;k,k))|`.
pub trait StarSizer {
    fn spider_lk_size(&self, d: usize, k: u32) -> Result<BigUint>;
}

impl<F> StarSizer for F
where
    F: Fn(usize, u32) -> Result<BigUint>,
{
    fn spider_lk_size(&self, d: usize, k: u32) -> Result<BigUint> {
        self(d, k)
    }
}

/// Iterates the line graph of the spider directly.
#[derive(Clone, Debug, Default)]
pub struct DirectSizer {
    pub limits: Limits,
}

impl StarSizer for DirectSizer {
    fn spider_lk_size(&self, d: usize, k: u32) -> Result<BigUint> {
        let g = star_graph(d, k as usize, k as usize)?;
        let mut seq = iterated_sizes(&g, k as usize, &self.limits)?;
        Ok(seq.terms.pop().expect("depth + 1 terms"))
    }
}

/// Sums table weights over connected subsets of the spider.
#[derive(Clone, Copy, Debug)]
pub struct ShadowSizer<'a> {
    pub table: &'a WtTable,
}

impl StarSizer for ShadowSizer<'_> {
    fn spider_lk_size(&self, d: usize, k: u32) -> Result<BigUint> {
        let g = star_graph(d, k as usize, k as usize)?;
        lk_size_via_shadows(&g, k as usize, self.table)
    }
}

/// `|L^k(cat(parts; 2k))|` with `pad` extra spine edges, assembled joint by
/// joint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatLkSize {
    pub total: BigUint,
    /// The part independent of the joints: `k + 1 + pad + (k - 1) t`.
    pub constant: BigUint,
}

pub fn cat_lk_size_formula<S: StarSizer + ?Sized>(
    parts: &[usize],
    k: u32,
    pad: usize,
    sizer: &S,
) -> Result<CatLkSize> {
    if k == 0 {
        return Err(Error::Constraint("joint decomposition needs k >= 1".into()));
    }
    if parts.is_empty() {
        return Err(Error::Constraint("joint decomposition needs at least one part".into()));
    }
    let t = parts.len() as u64;
    let k64 = k as u64;
    let constant = BigUint::from(k64 + 1 + pad as u64 + (k64 - 1) * t);
    let mut total = constant.clone();
    for &d in parts {
        total += sizer.spider_lk_size(d, k)?;
    }
    Ok(CatLkSize { total, constant })
}

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// `f_k` interpolated through `d = 0..=k+1` and checked at `d = k+2..=k+5`.
pub fn f_k_poly<S: StarSizer + ?Sized>(k: u32, sizer: &S) -> Result<Polynomial> {
    if k == 0 {
        return Err(Error::Constraint("f_k needs k >= 1".into()));
    }
    let sample = |d: usize| -> Result<BigRational> {
        Ok(rat(sizer.spider_lk_size(d, k)?) - half())
    };
    let nodes = (0..=k as usize + 1)
        .map(|d| Ok((rat(d as u64), sample(d)?)))
        .collect::<Result<Vec<_>>>()?;
    let f = Polynomial::interpolate(&nodes)?;
    for d in k as usize + 2..=k as usize + 5 {
        let expected = sample(d)?;
        if f.eval(&rat(d as u64)) != expected {
            return Err(Error::Verification(format!(
                "f_{k} interpolant misses the spider size at d = {d}"
            )));
        }
    }
    if f.degree() != Some(k as usize) {
        return Err(Error::Verification(format!(
            "f_{k} has degree {:?}, expected {k}",
            f.degree()
        )));
    }
    let floor = BigRational::new(BigInt::one(), factorial(k + 1));
    if *f.leading().expect("degree k") < floor {
        return Err(Error::Verification(format!(
            "leading coefficient of f_{k} is below 1/{}!",
            k + 1
        )));
    }
    Ok(f)
}

/// `|L^k(S(d;k,k))| - 1/2` as a polynomial in `d`, from the subtrees of the
/// spider through its center: `sum C(d,x) wt(S(x;p,q), k)` over
/// `x + p + q <= k`. Subtrees missing the center are paths on at most `k`
/// vertices or single leaves and weigh nothing at level `k >= 1`.
pub fn star_lk_poly_by_embeddings(k: u32, table: &WtTable) -> Result<Polynomial> {
    if k == 0 {
        return Err(Error::Constraint("embedding sum needs k >= 1".into()));
    }
    let ku = k as usize;
    let mut poly = Polynomial::constant(-half());
    for x in 0..=ku {
        let mut coeff = BigUint::zero();
        for p in 0..=ku - x {
            for q in 0..=ku - x - p {
                let code = canonical_code(&star_graph(x, p, q)?)?;
                let w = table.get(&code, k).ok_or_else(|| Error::MissingWeight {
                    code: code.as_bytes().to_vec(),
                    level: k,
                })?;
                coeff += w;
            }
        }
        poly = &poly + &Polynomial::binomial(x).scale(&rat(coeff));
    }
    Ok(poly)
}

/// Largest coefficient of `f_k` against its leading one, next to the
/// closed-form ceiling `(k+3)^(2k+3) 2^(k^2/2 + k + 4)` (floored when the
/// exponent is fractional).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffRatioReport {
    pub k: u32,
    pub actual_ratio: BigRational,
    pub paper_bound: BigUint,
}

impl CoeffRatioReport {
    pub fn holds(&self) -> bool {
        self.actual_ratio <= rat(self.paper_bound.clone())
    }
}

pub fn coeff_ratio_bound(k: u32) -> BigUint {
    let base = num_traits::pow(BigUint::from(k + 3), 2 * k as usize + 3);
    let twice_exp = (k * k + 2 * k + 8) as usize;
    if twice_exp.is_multiple_of(2) {
        base << (twice_exp / 2)
    } else {
        ((&base * &base) << twice_exp).sqrt()
    }
}

pub fn coeff_ratio_report<S: StarSizer + ?Sized>(k: u32, sizer: &S) -> Result<CoeffRatioReport> {
    let f = f_k_poly(k, sizer)?;
    let lead = f.leading().expect("degree k").clone();
    Ok(CoeffRatioReport {
        k,
        actual_ratio: f.max_abs_coeff() / lead,
        paper_bound: coeff_ratio_bound(k),
    })
}
