//! Graham sequences, the class census at small orders, and caterpillar
//! families that agree on `|L^j|` for `j <= k` and split at `k + 1`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;

use crate::caterpillar::{caterpillar_graph, f_k_poly, CaterpillarSpec, DirectSizer};
use crate::graph::iterated_sizes;
use crate::pte::{pte_defect, w_family, w_length, w_sum};
use crate::shadowcount::{build_wt_table, lk_size_via_shadows};
use crate::treegen::enumerate_tree_codes;
use crate::{Error, Graph, GrahamSequence, Limits, Result, TreeCode, WtTable};

/// How [`graham_sequence`] computes `|L^j|`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Method {
    /// Direct iteration, falling back to shadows past the resource limits.
    #[default]
    Auto,
    Direct,
    Shadow,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Method::Auto),
            "direct" => Ok(Method::Direct),
            "shadow" => Ok(Method::Shadow),
            other => Err(Error::Constraint(format!("unknown method {other:?}"))),
        }
    }
}

impl core::fmt::Display for Method {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            Method::Auto => "auto",
            Method::Direct => "direct",
            Method::Shadow => "shadow",
        })
    }
}

fn shadow_sequence(
    t: &Graph,
    depth: usize,
    limits: &Limits,
    table: Option<&WtTable>,
) -> Result<GrahamSequence> {
    let built;
    let table = match table {
        Some(table) if table.covers(depth as u32, t.vertex_count()) => table,
        _ => {
            built = build_wt_table(depth, depth + 1, limits)?;
            &built
        }
    };
    let terms = (0..=depth)
        .map(|j| lk_size_via_shadows(t, j, table))
        .collect::<Result<Vec<_>>>()?;
    Ok(GrahamSequence { terms })
}

/// `|L^0(t)|, .., |L^depth(t)|` for a tree `t`.
///
/// `table` is used by the shadow method when it covers `depth`; otherwise a
/// table is built on the spot.
pub fn graham_sequence(
    t: &Graph,
    depth: usize,
    method: Method,
    limits: &Limits,
    table: Option<&WtTable>,
) -> Result<GrahamSequence> {
    t.require_tree()?;
    match method {
        Method::Direct => iterated_sizes(t, depth, limits),
        Method::Shadow => shadow_sequence(t, depth, limits, table),
        Method::Auto => match iterated_sizes(t, depth, limits) {
            Ok(seq) => {
                #[cfg(debug_assertions)]
                if t.vertex_count() <= 12 && depth <= 4 {
                    let shadow = shadow_sequence(t, depth, limits, table)?;
                    debug_assert_eq!(seq, shadow, "direct and shadow sequences disagree");
                }
                Ok(seq)
            }
            Err(Error::ResourceLimit { .. }) => shadow_sequence(t, depth, limits, table),
            Err(e) => Err(e),
        },
    }
}

/// Grouping of the trees on `n` vertices by truncated Graham sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassReport {
    pub n: usize,
    pub depth: usize,
    pub tree_count: usize,
    pub class_count: usize,
    /// Groups of two or more non-isomorphic trees sharing a sequence, each
    /// sorted, the list sorted by first code.
    pub collisions: Vec<Vec<TreeCode>>,
}

impl ClassReport {
    pub fn separates_all(&self) -> bool {
        self.class_count == self.tree_count
    }
}

/// Groups already computed `(code, sequence)` pairs.
pub fn group_by_sequence(
    n: usize,
    depth: usize,
    sequences: Vec<(TreeCode, GrahamSequence)>,
) -> ClassReport {
    let tree_count = sequences.len();
    let mut groups: BTreeMap<GrahamSequence, Vec<TreeCode>> = BTreeMap::new();
    for (code, seq) in sequences {
        groups.entry(seq.truncated(depth)).or_default().push(code);
    }
    let class_count = groups.len();
    let mut collisions: Vec<Vec<TreeCode>> = groups
        .into_values()
        .filter(|g| g.len() > 1)
        .map(|mut g| {
            g.sort();
            g
        })
        .collect();
    collisions.sort();
    ClassReport {
        n,
        depth,
        tree_count,
        class_count,
        collisions,
    }
}

pub fn graham_classes(n: usize, depth: usize, limits: &Limits) -> Result<ClassReport> {
    let mut sequences = Vec::new();
    for code in enumerate_tree_codes(n)? {
        let seq = graham_sequence(&code.to_graph(), depth, Method::Direct, limits, None)?;
        sequences.push((code, seq));
    }
    Ok(group_by_sequence(n, depth, sequences))
}

/// Parameters of a `W(k; r, s, t)` caterpillar family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub k: u32,
    pub sigma: u32,
    pub spacing: usize,
    pub pad: usize,
}

impl FamilySpec {
    /// Spacing `2(k + 1)` and no padding.
    pub fn new(k: u32, sigma: u32) -> Result<Self> {
        let spec = FamilySpec {
            k,
            sigma,
            spacing: 2 * (k as usize + 1),
            pad: 0,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::Constraint(format!("family needs k >= 2, got {}", self.k)));
        }
        if self.spacing < 2 * (self.k as usize + 1) {
            return Err(Error::Constraint(format!(
                "spacing {} is below 2(k+1) = {}",
                self.spacing,
                2 * (self.k + 1)
            )));
        }
        Ok(())
    }

    pub fn part_count(&self) -> usize {
        w_length(self.k, self.sigma)
    }

    /// Vertex count shared by every member.
    pub fn vertex_count(&self) -> Result<usize> {
        let legs = w_sum(self.k, self.sigma)
            .to_usize()
            .ok_or_else(|| Error::Constraint("leg count exceeds usize".into()))?;
        Ok((self.part_count() + 1) * self.spacing + 1 + legs + self.pad)
    }

    /// Sets `pad` so that every member has `target` vertices.
    pub fn with_target_vertices(mut self, target: usize) -> Result<Self> {
        self.pad = 0;
        let base = self.vertex_count()?;
        self.pad = target.checked_sub(base).ok_or_else(|| {
            Error::Constraint(format!("target {target} is below the unpadded size {base}"))
        })?;
        Ok(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMember {
    pub r: u32,
    pub s: u32,
    pub t: u32,
    pub caterpillar: CaterpillarSpec,
}

pub fn family_members(spec: &FamilySpec) -> Result<Vec<FamilyMember>> {
    spec.validate()?;
    w_family(spec.k, spec.sigma)?
        .into_iter()
        .map(|m| {
            let parts = m
                .composition
                .parts
                .iter()
                .map(|&p| {
                    usize::try_from(p).map_err(|_| Error::Constraint(format!("part {p} exceeds usize")))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(FamilyMember {
                r: m.r,
                s: m.s,
                t: m.t,
                caterpillar: CaterpillarSpec::new(parts, spec.spacing, spec.pad)?,
            })
        })
        .collect()
}

/// Change in `|L^{k+1}|` from one chain member to the next:
/// `-lc(f_{k+1}) * (S_{k+1}(T_{k+1}) - S_{k+1}(T̄_{k+1}))`.
pub fn predicted_step(k: u32, limits: &Limits) -> Result<BigInt> {
    let f = f_k_poly(k + 1, &DirectSizer { limits: *limits })?;
    let step = -(f.leading().expect("degree k + 1") * num_rational::BigRational::from_integer(pte_defect(k + 1, 0)?));
    if !step.is_integer() {
        return Err(Error::Verification(format!("predicted step {step} is not an integer")));
    }
    Ok(step.to_integer())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemberReport {
    pub r: u32,
    pub s: u32,
    pub t: u32,
    pub parts: Vec<usize>,
    pub vertex_count: usize,
    pub sequence: GrahamSequence,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyReport {
    pub spec: FamilySpec,
    pub members: Vec<MemberReport>,
    pub equal_vertex_count: bool,
    /// `|L^j|` agrees across members for every `j <= k`.
    pub shared_prefix: bool,
    /// `|L^{k+1}|` is pairwise distinct.
    pub split_distinct: bool,
    pub expected_step: BigInt,
    /// Consecutive differences of `|L^{k+1}|` along the chain.
    pub steps: Vec<BigInt>,
    pub progression: bool,
}

impl FamilyReport {
    /// The first failed check, if any.
    pub fn failure(&self) -> Option<String> {
        if !self.equal_vertex_count {
            Some("members differ in vertex count".into())
        } else if !self.shared_prefix {
            Some(format!("members differ at some level <= {}", self.spec.k))
        } else if !self.split_distinct {
            Some(format!("members collide at level {}", self.spec.k + 1))
        } else if !self.progression {
            Some(format!(
                "level {} steps are not all {}",
                self.spec.k + 1,
                self.expected_step
            ))
        } else {
            None
        }
    }

    pub fn verified(&self) -> bool {
        self.failure().is_none()
    }
}

/// Checks the members against each other. `sequences[i]` must reach depth
/// `k + 1` for `members[i]`.
pub fn verify_family(
    spec: &FamilySpec,
    members: Vec<FamilyMember>,
    sequences: Vec<GrahamSequence>,
    expected_step: BigInt,
) -> Result<FamilyReport> {
    let k = spec.k as usize;
    if members.len() != sequences.len() || sequences.iter().any(|s| s.depth() < k + 1) {
        return Err(Error::Constraint("one sequence of depth k + 1 per member is required".into()));
    }
    let reports: Vec<MemberReport> = members
        .into_iter()
        .zip(sequences)
        .map(|(m, seq)| MemberReport {
            r: m.r,
            s: m.s,
            t: m.t,
            vertex_count: m.caterpillar.vertex_count(),
            parts: m.caterpillar.parts,
            sequence: seq.truncated(k + 1),
        })
        .collect();
    let first = &reports[0];
    let equal_vertex_count = reports.iter().all(|m| m.vertex_count == first.vertex_count);
    let shared_prefix = reports
        .iter()
        .all(|m| m.sequence.terms[..=k] == first.sequence.terms[..=k]);
    let split: Vec<&BigUint> = reports.iter().map(|m| &m.sequence.terms[k + 1]).collect();
    let mut sorted = split.clone();
    sorted.sort();
    sorted.dedup();
    let split_distinct = sorted.len() == split.len();
    let steps: Vec<BigInt> = split
        .windows(2)
        .map(|w| BigInt::from(w[1].clone()) - BigInt::from(w[0].clone()))
        .collect();
    let progression = steps.iter().all(|s| *s == expected_step);
    Ok(FamilyReport {
        spec: spec.clone(),
        members: reports,
        equal_vertex_count,
        shared_prefix,
        split_distinct,
        expected_step,
        steps,
        progression,
    })
}

/// Builds every member, computes its sequence to depth `k + 1` and
/// verifies the family.
pub fn build_family(
    spec: &FamilySpec,
    method: Method,
    limits: &Limits,
    table: Option<&WtTable>,
) -> Result<FamilyReport> {
    let members = family_members(spec)?;
    let depth = spec.k as usize + 1;
    let sequences = members
        .iter()
        .map(|m| graham_sequence(&caterpillar_graph(&m.caterpillar)?, depth, method, limits, table))
        .collect::<Result<Vec<_>>>()?;
    verify_family(spec, members, sequences, predicted_step(spec.k, limits)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;
    use alloc::vec::Vec;

    fn seq(g: &Graph, depth: usize, method: Method) -> Vec<u64> {
        graham_sequence(g, depth, method, &Limits::default(), None)
            .unwrap()
            .terms
            .iter()
            .map(|t| t.to_u64().unwrap())
            .collect()
    }

    #[test]
    fn sequence_examples() {
        for method in [Method::Auto, Method::Direct, Method::Shadow] {
            assert_eq!(seq(&Graph::star(3), 4, method), vec![4, 3, 3, 3, 3]);
            assert_eq!(seq(&Graph::path(7), 4, method), vec![8, 7, 6, 5, 4]);
            let cat = caterpillar_graph(&CaterpillarSpec::new(vec![3], 4, 0).unwrap()).unwrap();
            assert_eq!(seq(&cat, 2, method), vec![12, 11, 16]);
        }
    }

    #[test]
    fn method_names_round_trip() {
        for m in [Method::Auto, Method::Direct, Method::Shadow] {
            assert_eq!(m.to_string().parse::<Method>().unwrap(), m);
        }
        assert!("fast".parse::<Method>().is_err());
    }

    #[test]
    fn census_small() {
        let r = graham_classes(5, 3, &Limits::default()).unwrap();
        assert_eq!((r.tree_count, r.class_count), (3, 3));
        assert!(r.collisions.is_empty());
        let r = graham_classes(1, 0, &Limits::default()).unwrap();
        assert_eq!((r.tree_count, r.class_count), (1, 1));
    }

    #[test]
    fn census_reports_collisions_at_depth_zero() {
        let r = graham_classes(6, 0, &Limits::default()).unwrap();
        assert_eq!((r.tree_count, r.class_count), (6, 1));
        assert_eq!(r.collisions.len(), 1);
        assert_eq!(r.collisions[0].len(), 6);
        assert!(!r.separates_all());
    }

    #[test]
    fn family_k2_sigma2() {
        let spec = FamilySpec::new(2, 2).unwrap();
        let report = build_family(&spec, Method::Direct, &Limits::default(), None).unwrap();
        assert_eq!(report.members.len(), 6);
        assert!(report.members.iter().all(|m| m.parts.len() == 10));
        assert!(report.members.iter().all(|m| m.parts.iter().sum::<usize>() == 63));
        assert_eq!(report.expected_step, BigInt::from(-24));
        assert_eq!(report.failure(), None);
    }

    #[test]
    fn family_degenerate_and_padding() {
        let spec = FamilySpec::new(2, 0).unwrap();
        let report = build_family(&spec, Method::Direct, &Limits::default(), None).unwrap();
        assert_eq!(report.members.len(), 1);
        assert!(report.verified());

        let spec = FamilySpec::new(2, 1).unwrap();
        let base = spec.vertex_count().unwrap();
        let padded = spec.clone().with_target_vertices(base + 5).unwrap();
        assert_eq!(padded.pad, 5);
        let a = build_family(&spec, Method::Direct, &Limits::default(), None).unwrap();
        let b = build_family(&padded, Method::Direct, &Limits::default(), None).unwrap();
        assert!(a.verified() && b.verified());
        for (x, y) in a.members.iter().zip(&b.members) {
            assert_eq!((x.r, x.s, x.t), (y.r, y.s, y.t));
            for (p, q) in x.sequence.terms.iter().zip(&y.sequence.terms) {
                assert_eq!(q - p, BigUint::from(5u32));
            }
        }
        assert!(spec.with_target_vertices(base - 1).is_err());
    }

    #[test]
    fn family_spec_bounds() {
        assert!(FamilySpec::new(1, 1).is_err());
        let mut spec = FamilySpec::new(2, 1).unwrap();
        spec.spacing = 5;
        assert!(spec.validate().is_err());
    }
}
