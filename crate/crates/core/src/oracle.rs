//! Brute-force ground truth: every map is enumerated, orbits and stabilizers
//! are computed element by element, and faces are traced directly.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::cycle_index::{rational, CycleIndex};
use crate::domain::TypeDomain;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::PermutationGroup;
use crate::imbedding::imbedding_sum_with_group;
use crate::perm::{CycleType, Permutation};
use crate::rotation::{RotationEnumerator, RotationSystem};
use crate::series::Exponents;

pub const DEFAULT_MAP_CAP: u128 = 1_000_000;
pub const DEFAULT_GROUP_CAP: usize = 100_000;

/// Limits on the brute-force work a census may do.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusLimits {
    pub map_cap: u128,
    pub group_cap: usize,
}

impl Default for CensusLimits {
    fn default() -> Self {
        CensusLimits {
            map_cap: DEFAULT_MAP_CAP,
            group_cap: DEFAULT_GROUP_CAP,
        }
    }
}

/// One unlabeled imbedding: an orbit of maps under the automorphism group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapClass {
    /// Lexicographically least map of the orbit.
    pub representative: RotationSystem,
    pub orbit_size: usize,
    pub stabilizer: PermutationGroup,
    /// Cycle index of the stabilizer, on the census domain.
    pub stabilizer_index: CycleIndex,
    /// Face sizes in ascending order.
    pub regions: Vec<usize>,
    pub genus: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapCensus {
    pub group: PermutationGroup,
    pub map_count: u128,
    pub classes: Vec<MapClass>,
}

impl MapCensus {
    /// `Σ_M Z(Γ_M)`.
    pub fn stabilizer_sum(&self) -> Result<CycleIndex> {
        let degree = self
            .classes
            .first()
            .map_or(0, |c| c.stabilizer_index.degree());
        self.classes
            .iter()
            .try_fold(CycleIndex::zero(degree), |acc, c| acc.add(&c.stabilizer_index))
    }

    /// Class count per stabilizer order.
    pub fn stabilizer_orders(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for c in &self.classes {
            *out.entry(c.stabilizer.order()).or_insert(0) += 1;
        }
        out
    }

    /// Class count per genus.
    pub fn genus_histogram(&self) -> BTreeMap<u64, usize> {
        let mut out = BTreeMap::new();
        for c in &self.classes {
            *out.entry(c.genus).or_insert(0) += 1;
        }
        out
    }
}

pub fn census(g: &Graph, domain: &TypeDomain) -> Result<MapCensus> {
    census_with(g, domain, CensusLimits::default())
}

/// Orbit partition of all maps of `g`. Checks orbit-stabilizer for every
/// class and that the orbits exhaust the maps.
pub fn census_with(g: &Graph, domain: &TypeDomain, limits: CensusLimits) -> Result<MapCensus> {
    g.ensure_connected()?;
    let group = bounded_group(g, limits)?;
    domain.validate(&group)?;
    let maps = RotationEnumerator::with_cap(g, limits.map_cap)?;
    let map_count = maps.total();
    let mut seen: HashSet<RotationSystem> = HashSet::new();
    let mut classes = Vec::new();
    for m in maps {
        if seen.contains(&m) {
            continue;
        }
        let mut stabilizer = Vec::new();
        let mut orbit = BTreeSet::new();
        for gamma in group.elements() {
            let image = m.act_unchecked(gamma);
            if image == m {
                stabilizer.push(gamma.clone());
            }
            orbit.insert(image);
        }
        if orbit.len() * stabilizer.len() != group.order() {
            return Err(Error::Verification(format!(
                "orbit {} times stabilizer {} is not {}",
                orbit.len(),
                stabilizer.len(),
                group.order()
            )));
        }
        let stabilizer = PermutationGroup::from_elements_unchecked(g.vertex_count(), stabilizer);
        let stabilizer_index = domain_cycle_index(&stabilizer, domain, g)?;
        let trace = face_trace(g, &m)?;
        let representative = orbit.first().cloned().expect("orbit contains m");
        let orbit_size = orbit.len();
        seen.extend(orbit);
        classes.push(MapClass {
            representative,
            orbit_size,
            stabilizer,
            stabilizer_index,
            regions: trace.regions,
            genus: trace.genus,
        });
    }
    if seen.len() as u128 != map_count {
        return Err(Error::Verification(format!(
            "orbits cover {} of {map_count} maps",
            seen.len()
        )));
    }
    Ok(MapCensus {
        group,
        map_count,
        classes,
    })
}

fn bounded_group(g: &Graph, limits: CensusLimits) -> Result<PermutationGroup> {
    let group = g.automorphism_group()?;
    if group.order() > limits.group_cap {
        return Err(Error::CapExceeded {
            what: "automorphism group order",
            cap: limits.group_cap as u128,
        });
    }
    Ok(group)
}

fn domain_cycle_index(h: &PermutationGroup, domain: &TypeDomain, g: &Graph) -> Result<CycleIndex> {
    let mut counts: BTreeMap<CycleType, u64> = BTreeMap::new();
    for gamma in h.elements() {
        *counts.entry(domain.cycle_type(gamma)?).or_insert(0) += 1;
    }
    let order = h.order() as u64;
    Ok(CycleIndex::from_terms(
        domain.degree(g),
        counts.into_iter().map(|(ct, k)| (ct, rational(k, order))),
    )?
    .with_denominator(order))
}

/// Class count per stabilizer order without storing visited maps: a map
/// starts a class exactly when no automorphism sends it to a smaller map.
/// Memory stays constant; time is `maps × |Γ|`.
pub fn stabilizer_histogram_streaming(g: &Graph, limits: CensusLimits) -> Result<BTreeMap<usize, u128>> {
    g.ensure_connected()?;
    let group = bounded_group(g, limits)?;
    let mut out = BTreeMap::new();
    'maps: for m in RotationEnumerator::with_cap(g, limits.map_cap)? {
        let mut stabilizer = 0;
        for gamma in group.elements() {
            let image = m.act_unchecked(gamma);
            match image.cmp(&m) {
                std::cmp::Ordering::Less => continue 'maps,
                std::cmp::Ordering::Equal => stabilizer += 1,
                std::cmp::Ordering::Greater => {}
            }
        }
        *out.entry(stabilizer).or_insert(0) += 1;
    }
    Ok(out)
}

/// Termwise comparison of `Z(G)` with the census sum of stabilizer indexes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    pub imbedding_sum: CycleIndex,
    pub stabilizer_sum: CycleIndex,
    /// `Z(G) - Σ Z(Γ_M)`, nonzero monomials only.
    pub residuals: BTreeMap<CycleType, BigRational>,
    pub class_count: usize,
}

impl DecompositionReport {
    pub fn is_exact(&self) -> bool {
        self.residuals.is_empty()
    }
}

pub fn verify_decomposition(g: &Graph) -> Result<DecompositionReport> {
    verify_decomposition_with(g, &TypeDomain::Vertices, CensusLimits::default())
}

/// Census-backed check that `Z(G) = Σ_M Z(Γ_M)` termwise; any residual is an
/// error.
pub fn verify_decomposition_with(
    g: &Graph,
    domain: &TypeDomain,
    limits: CensusLimits,
) -> Result<DecompositionReport> {
    let report = decomposition_report(g, domain, limits)?;
    if !report.is_exact() {
        let parts: Vec<String> = report
            .residuals
            .iter()
            .map(|(ct, r)| format!("{}: {r}", ct.monomial()))
            .collect();
        return Err(Error::Verification(format!(
            "nonzero residuals {}",
            parts.join(", ")
        )));
    }
    Ok(report)
}

/// Like [`verify_decomposition_with`] but returns the report even when
/// residuals are nonzero.
pub fn decomposition_report(
    g: &Graph,
    domain: &TypeDomain,
    limits: CensusLimits,
) -> Result<DecompositionReport> {
    let c = census_with(g, domain, limits)?;
    let z = imbedding_sum_with_group(g, &c.group, domain)?;
    let sum = c.stabilizer_sum()?;
    let mut residuals = BTreeMap::new();
    let monomials: BTreeSet<&CycleType> = z.terms().chain(sum.terms()).map(|(ct, _)| ct).collect();
    for ct in monomials {
        let r = z.coefficient(ct) - sum.coefficient(ct);
        if !r.is_zero() {
            residuals.insert(ct.clone(), r);
        }
    }
    Ok(DecompositionReport {
        imbedding_sum: z,
        stabilizer_sum: sum,
        residuals,
        class_count: c.classes.len(),
    })
}

/// Builds the map fixed by `gamma` from seed rotations (vertex → cyclic
/// neighbor order): each seed is carried around its vertex orbit by
/// conjugation.
pub fn equivariant_map(
    g: &Graph,
    gamma: &Permutation,
    seeds: &BTreeMap<usize, Vec<usize>>,
) -> Result<RotationSystem> {
    let n = g.vertex_count();
    if gamma.degree() != n {
        return Err(Error::DegreeMismatch {
            left: n,
            right: gamma.degree(),
        });
    }
    if !g.is_automorphism(gamma) {
        return Err(Error::NotAutomorphism);
    }
    if let Some(&v) = seeds.keys().find(|&&v| v >= n) {
        return Err(Error::OutOfRange { index: v, size: n });
    }
    let mut rotations: Vec<Option<Vec<usize>>> = vec![None; n];
    for orbit in gamma.orbits() {
        let Some(&start) = orbit.iter().find(|v| seeds.contains_key(v)) else {
            return Err(Error::InconsistentSeed(format!(
                "no seed on the orbit of vertex {}",
                orbit[0] + 1
            )));
        };
        let mut v = start;
        let mut rot = seeds[&start].clone();
        loop {
            rotations[v] = Some(rot.clone());
            rot = rot.iter().map(|&x| gamma.apply(x)).collect();
            v = gamma.apply(v);
            if v == start {
                break;
            }
        }
        if !same_cycle(&rot, &seeds[&start]) {
            return Err(Error::InconsistentSeed(format!(
                "the seed at vertex {} is not fixed by γ^{}",
                start + 1,
                orbit.len()
            )));
        }
        for &u in &orbit {
            if let (Some(seed), Some(r)) = (seeds.get(&u), &rotations[u]) {
                if !same_cycle(seed, r) {
                    return Err(Error::InconsistentSeed(format!(
                        "seed at vertex {} disagrees with the propagated rotation",
                        u + 1
                    )));
                }
            }
        }
    }
    let m = RotationSystem::new(g, rotations.into_iter().map(Option::unwrap_or_default).collect())?;
    if m.act_unchecked(gamma) != m {
        return Err(Error::InconsistentSeed("result is not fixed by γ".into()));
    }
    Ok(m)
}

fn same_cycle(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    match b.iter().position(|&x| x == a[0]) {
        Some(shift) => a.iter().enumerate().all(|(i, &x)| b[(i + shift) % b.len()] == x),
        None => false,
    }
}

/// Face sizes and genus of a map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceTrace {
    pub regions: Vec<usize>,
    pub genus: u64,
}

/// Traces faces with the rule `(u, v) → (v, ρ_v(u))`. A graph without edges
/// has a single empty face.
pub fn face_trace(g: &Graph, m: &RotationSystem) -> Result<FaceTrace> {
    g.ensure_connected()?;
    if m.vertex_count() != g.vertex_count() {
        return Err(Error::DegreeMismatch {
            left: g.vertex_count(),
            right: m.vertex_count(),
        });
    }
    let mut visited: HashSet<(usize, usize)> = HashSet::new();
    let mut regions = Vec::new();
    for (u, v) in g.edges().into_iter().flat_map(|(a, b)| [(a, b), (b, a)]) {
        if visited.contains(&(u, v)) {
            continue;
        }
        let mut len = 0;
        let mut dart = (u, v);
        while visited.insert(dart) {
            len += 1;
            let (a, b) = dart;
            let next = m.successor(b, a).ok_or(Error::InvalidRotation(format!(
                "vertex {} has no successor for {}",
                b + 1,
                a + 1
            )))?;
            dart = (b, next);
        }
        if dart != (u, v) {
            return Err(Error::InvalidRotation("face trace did not close".into()));
        }
        regions.push(len);
    }
    if regions.is_empty() {
        regions.push(0);
    }
    regions.sort_unstable();
    let euler = g.vertex_count() as i64 - g.edge_count() as i64 + regions.len() as i64;
    let twice_genus = 2 - euler;
    if twice_genus < 0 || twice_genus % 2 != 0 {
        return Err(Error::Verification(format!("Euler characteristic {euler}")));
    }
    Ok(FaceTrace {
        regions,
        genus: (twice_genus / 2) as u64,
    })
}

pub fn genus_histogram(g: &Graph) -> Result<BTreeMap<u64, usize>> {
    Ok(census(g, &TypeDomain::Vertices)?.genus_histogram())
}

/// Number of maps each automorphism fixes, found by scanning every map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BurnsideScan {
    pub group_order: usize,
    pub fixed_counts: Vec<(Permutation, u128)>,
}

impl BurnsideScan {
    pub fn fixed_total(&self) -> u128 {
        self.fixed_counts.iter().map(|(_, c)| c).sum()
    }

    /// `(1/|Γ|) Σ_γ |F(γ)|`; an error if it is not an integer.
    pub fn class_count(&self) -> Result<u128> {
        let total = self.fixed_total();
        let order = self.group_order as u128;
        if !total.is_multiple_of(order) {
            return Err(Error::NonIntegral(format!("{total}/{order}")));
        }
        Ok(total / order)
    }
}

pub fn burnside_scan(g: &Graph, limits: CensusLimits) -> Result<BurnsideScan> {
    g.ensure_connected()?;
    let group = bounded_group(g, limits)?;
    let maps: Vec<RotationSystem> = RotationEnumerator::with_cap(g, limits.map_cap)?.collect();
    let fixed_counts = group
        .elements()
        .iter()
        .map(|gamma| {
            let fixed = maps.iter().filter(|m| &m.act_unchecked(gamma) == *m).count();
            (gamma.clone(), fixed as u128)
        })
        .collect();
    Ok(BurnsideScan {
        group_order: group.order(),
        fixed_counts,
    })
}

/// Orbits of vertex colorings with `colors` colors, summed over the census
/// classes with each class acted on by its stabilizer; keyed by how many
/// vertices get each color.
pub fn colored_map_counts(census: &MapCensus, colors: usize) -> Result<BTreeMap<Exponents, BigInt>> {
    let n = census.group.degree();
    if colors == 0 {
        return Err(Error::param("need at least one color"));
    }
    let total = (colors as u128)
        .checked_pow(n as u32)
        .filter(|&t| t <= DEFAULT_MAP_CAP)
        .ok_or(Error::CapExceeded {
            what: "coloring enumeration",
            cap: DEFAULT_MAP_CAP,
        })?;
    let mut out: BTreeMap<Exponents, BigInt> = BTreeMap::new();
    for class in &census.classes {
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        for index in 0..total {
            let coloring = decode(index, colors, n);
            if seen.contains(&coloring) {
                continue;
            }
            let mut weight = vec![0u32; colors];
            for &c in &coloring {
                weight[c] += 1;
            }
            for gamma in class.stabilizer.elements() {
                let mut image = vec![0; n];
                for (v, &c) in coloring.iter().enumerate() {
                    image[gamma.apply(v)] = c;
                }
                seen.insert(image);
            }
            *out.entry(weight).or_default() += 1;
        }
    }
    Ok(out)
}

fn decode(mut index: u128, base: usize, len: usize) -> Vec<usize> {
    let mut digits = vec![0; len];
    for d in digits.iter_mut().rev() {
        *d = (index % base as u128) as usize;
        index /= base as u128;
    }
    digits
}

#[derive(Serialize)]
struct ClassRecord<'a> {
    class: usize,
    orbit_size: usize,
    stabilizer_order: usize,
    stabilizer_cycle_index: String,
    regions: &'a [usize],
    genus: u64,
    representative: &'a RotationSystem,
}

/// JSON array with one object per class.
pub fn census_to_json(census: &MapCensus) -> serde_json::Value {
    let records: Vec<_> = census
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| ClassRecord {
            class: i + 1,
            orbit_size: c.orbit_size,
            stabilizer_order: c.stabilizer.order(),
            stabilizer_cycle_index: c.stabilizer_index.to_string(),
            regions: &c.regions,
            genus: c.genus,
            representative: &c.representative,
        })
        .collect();
    serde_json::to_value(records).expect("census records serialize")
}

/// CSV with columns `class,orbit_size,stabilizer_order,stabilizer_cycle_index,regions,genus`.
pub fn census_to_csv(census: &MapCensus) -> String {
    let mut out = String::from("class,orbit_size,stabilizer_order,stabilizer_cycle_index,regions,genus\n");
    for (i, c) in census.classes.iter().enumerate() {
        let regions: Vec<String> = c.regions.iter().map(usize::to_string).collect();
        out.push_str(&format!(
            "{},{},{},\"{}\",{},{}\n",
            i + 1,
            c.orbit_size,
            c.stabilizer.order(),
            c.stabilizer_index,
            regions.join(" "),
            c.genus
        ));
    }
    out
}
