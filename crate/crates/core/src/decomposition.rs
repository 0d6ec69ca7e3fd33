//! Splitting an imbedding sum into the cycle indexes of map-automorphism
//! groups: Möbius inversion when every group is cyclic, bounded integer
//! search otherwise.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Deserialize;

use crate::arith::{divisors, euler_phi, factorial, mobius, pow};
use crate::closed_forms::Family;
use crate::cycle_index::{cyclic_cycle_index, group_cycle_index, int, rational, CycleIndex, JsonTerm};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::{closure, PermutationGroup};
use crate::perm::{CycleType, Permutation};

/// `i_d = d Σ_{d|k|n} f(k)/φ(k) μ(k/d)` for every divisor `d` of `n`, where
/// `f(k)` is the coefficient of the monomial belonging to `k`. Divisors
/// missing from `f` count as zero.
pub fn mobius_invert(f: &BTreeMap<u64, BigRational>, n: u64) -> Result<BTreeMap<u64, BigInt>> {
    if let Some(k) = f.keys().find(|&&k| k == 0 || !n.is_multiple_of(k)) {
        return Err(Error::param(format!("{k} is not a divisor of {n}")));
    }
    let divs = divisors(n)?;
    let mut out = BTreeMap::new();
    for &d in &divs {
        let mut acc = BigRational::zero();
        for &k in divs.iter().filter(|&&k| k % d == 0) {
            let Some(c) = f.get(&k) else { continue };
            let mu = mobius(k / d)?;
            if mu != 0 {
                acc += c * rational(mu, euler_phi(k)?);
            }
        }
        acc *= int(d);
        if !acc.is_integer() {
            return Err(Error::NonIntegral(format!("i_{d} = {acc}")));
        }
        out.insert(d, acc.to_integer());
    }
    Ok(out)
}

/// Forward map of [`mobius_invert`]: `f(d) = Σ_{d|k|n} i_k φ(d)/k`.
pub fn mobius_forward(i: &BTreeMap<u64, BigInt>, n: u64) -> Result<BTreeMap<u64, BigRational>> {
    let mut out = BTreeMap::new();
    for d in divisors(n)? {
        let mut acc = BigRational::zero();
        for (&k, ik) in i.iter().filter(|(&k, _)| k % d == 0 && n.is_multiple_of(k)) {
            acc += int(ik.clone()) * rational(euler_phi(d)?, k);
        }
        out.insert(d, acc);
    }
    Ok(out)
}

/// Counts for the maps whose automorphism group is cyclic of order `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileEntry {
    pub unlabeled: BigInt,
    pub labeled_per_class: BigInt,
    pub labeled_total: BigInt,
}

/// `d`-fold symmetry counts for one member of a cyclic family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryProfile {
    pub family: Family,
    pub n: u64,
    pub group_order: BigInt,
    pub entries: BTreeMap<u64, ProfileEntry>,
}

impl SymmetryProfile {
    pub fn unlabeled_total(&self) -> BigInt {
        self.entries.values().map(|e| &e.unlabeled).sum()
    }

    pub fn labeled_total(&self) -> BigInt {
        self.entries.values().map(|e| &e.labeled_total).sum()
    }

    pub fn unlabeled(&self, d: u64) -> BigInt {
        self.entries.get(&d).map_or_else(BigInt::zero, |e| e.unlabeled.clone())
    }

    pub fn labeled(&self, d: u64) -> BigInt {
        self.entries.get(&d).map_or_else(BigInt::zero, |e| e.labeled_total.clone())
    }
}

/// Layout of a cyclic family member: which monomial belongs to each `d`.
struct CyclicShape {
    moved: u64,
    fixed: usize,
    group_order: BigInt,
    labeled_total: BigInt,
}

fn cyclic_shape(family: Family, n: u64) -> Result<CyclicShape> {
    let big = |x: num_bigint::BigUint| BigInt::from(x);
    let shape = match family {
        Family::Wheel if n >= 4 => CyclicShape {
            moved: n,
            fixed: 1,
            group_order: BigInt::from(2 * n),
            labeled_total: big(factorial(n - 1) * pow(2, n)),
        },
        Family::Bouquet if n >= 1 => CyclicShape {
            moved: 2 * n,
            fixed: 1,
            group_order: big(pow(2, n) * factorial(n)),
            labeled_total: big(factorial(2 * n - 1)),
        },
        Family::DirectedBouquet if n >= 1 => CyclicShape {
            moved: n,
            fixed: 0,
            group_order: big(factorial(n)),
            labeled_total: big(factorial(2 * n - 1)),
        },
        Family::RootedComplete if n >= 2 => CyclicShape {
            moved: n - 1,
            fixed: 1,
            group_order: big(factorial(n - 1)),
            labeled_total: big(num_traits::pow(factorial(n - 2), n as usize)),
        },
        Family::Complete => {
            return Err(Error::param(
                "the complete graph has non-cyclic map groups; use decompose_all",
            ))
        }
        _ => return Err(Error::param(format!("{family} is not defined for n = {n}"))),
    };
    Ok(shape)
}

/// Unlabeled and labeled `d`-fold symmetry counts for a cyclic family, from
/// its closed-form sum by Möbius inversion. The reassembly
/// `Σ_d i_d Z(C_d) = Z` and the labeled total are checked before returning.
pub fn profile(family: Family, n: u64) -> Result<SymmetryProfile> {
    if family == Family::RootedComplete && n == 1 {
        // K_1 has a single map and a trivial group.
        let one = ProfileEntry {
            unlabeled: BigInt::one(),
            labeled_per_class: BigInt::one(),
            labeled_total: BigInt::one(),
        };
        return Ok(SymmetryProfile {
            family,
            n,
            group_order: BigInt::one(),
            entries: BTreeMap::from([(1, one)]),
        });
    }
    let shape = cyclic_shape(family, n)?;
    let z = family.cycle_index(n)?;
    let mut f = BTreeMap::new();
    for d in divisors(shape.moved)? {
        let ct = CycleType::fixed_plus_uniform(shape.fixed, d as usize, (shape.moved / d) as usize);
        f.insert(d, z.coefficient(&ct));
    }
    let counts = mobius_invert(&f, shape.moved)?;

    let mut rebuilt = CycleIndex::zero(z.degree());
    let mut entries = BTreeMap::new();
    for (d, i_d) in counts {
        if i_d.is_negative() {
            return Err(Error::Verification(format!("negative i_{d} = {i_d}")));
        }
        let cyclic = cyclic_cycle_index(d, shape.moved / d, shape.fixed)?;
        rebuilt = rebuilt.add(&cyclic.scale(&int(i_d.clone())))?;
        let (per_class, rem) = shape.group_order.div_rem(&BigInt::from(d));
        if !rem.is_zero() {
            return Err(Error::Verification(format!("{d} does not divide the group order")));
        }
        entries.insert(
            d,
            ProfileEntry {
                labeled_total: &per_class * &i_d,
                unlabeled: i_d,
                labeled_per_class: per_class,
            },
        );
    }
    let profile = SymmetryProfile {
        family,
        n,
        group_order: shape.group_order,
        entries,
    };
    if rebuilt != z {
        return Err(Error::Verification(format!(
            "cyclic reassembly differs from the sum for {family} n={n}"
        )));
    }
    if profile.labeled_total() != shape.labeled_total {
        return Err(Error::Verification(format!(
            "labeled total {} differs from {}",
            profile.labeled_total(),
            shape.labeled_total
        )));
    }
    Ok(profile)
}

/// A possible map-automorphism group. Entries known only by cycle index have
/// no element list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateGroup {
    pub name: String,
    pub group: Option<PermutationGroup>,
    pub cycle_index: CycleIndex,
}

impl CandidateGroup {
    pub fn from_group(name: impl Into<String>, group: PermutationGroup) -> Self {
        CandidateGroup {
            name: name.into(),
            cycle_index: group_cycle_index(&group),
            group: Some(group),
        }
    }

    /// Generators in 1-based cycle notation.
    pub fn from_generators(name: impl Into<String>, degree: usize, generators: &[&str]) -> Result<Self> {
        let gens = generators
            .iter()
            .map(|g| Permutation::parse(g, degree))
            .collect::<Result<Vec<_>>>()?;
        Ok(CandidateGroup::from_group(name, closure(degree, &gens)?))
    }

    /// Index-only entry; the identity term must be `1/|G|`.
    pub fn from_cycle_index(name: impl Into<String>, cycle_index: CycleIndex) -> Result<Self> {
        let c = CandidateGroup {
            name: name.into(),
            group: None,
            cycle_index,
        };
        c.order()?;
        if !c.cycle_index.evaluate_at_ones().is_one() || !c.cycle_index.has_nonnegative_coefficients() {
            return Err(Error::NotGroupIndex(c.cycle_index.to_string()));
        }
        Ok(c)
    }

    pub fn order(&self) -> Result<u64> {
        if let Some(g) = &self.group {
            return Ok(g.order() as u64);
        }
        let id = CycleType::fixed_plus_uniform(self.cycle_index.degree(), 1, 0);
        let c = self.cycle_index.coefficient(&id);
        if c.is_zero() || !c.numer().is_one() {
            return Err(Error::NotGroupIndex(self.cycle_index.to_string()));
        }
        c.denom()
            .to_u64()
            .ok_or_else(|| Error::NotGroupIndex(self.cycle_index.to_string()))
    }

    pub fn degree(&self) -> usize {
        self.cycle_index.degree()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogEntry {
    name: String,
    #[serde(default)]
    generators: Option<Vec<String>>,
    #[serde(default)]
    cycle_index: Option<Vec<JsonTerm>>,
}

/// Loads `[{name, generators: [...]}, {name, cycle_index: [...]}, ...]`.
pub fn load_catalog(json: &str, degree: usize) -> Result<Vec<CandidateGroup>> {
    let entries: Vec<CatalogEntry> =
        serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    entries
        .into_iter()
        .map(|e| match (e.generators, e.cycle_index) {
            (Some(gens), None) => {
                let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
                CandidateGroup::from_generators(e.name, degree, &refs)
            }
            (None, Some(terms)) => {
                let z = CycleIndex::from_json(&terms, Some(degree))?;
                if z.degree() != degree {
                    return Err(Error::DegreeMismatch {
                        left: degree,
                        right: z.degree(),
                    });
                }
                CandidateGroup::from_cycle_index(e.name, z)
            }
            _ => Err(Error::Parse(format!(
                "catalog entry {:?} needs exactly one of generators or cycle_index",
                e.name
            ))),
        })
        .collect()
}

/// The six candidate groups for `K_5`: the Frobenius group `F` of order 20,
/// `C_5`, `E_1×C_4`, `E_1×C_2[E_2]`, `D_5` and `E_5`.
pub fn k5_catalog() -> Result<Vec<CandidateGroup>> {
    let catalog = vec![
        CandidateGroup::from_generators("F", 5, &["(1 2 3 4 5)", "(2 3 5 4)"])?,
        CandidateGroup::from_generators("C5", 5, &["(1 2 3 4 5)"])?,
        CandidateGroup::from_generators("E1xC4", 5, &["(2 3 4 5)"])?,
        CandidateGroup::from_generators("E1xC2[E2]", 5, &["(2 3)(4 5)"])?,
        CandidateGroup::from_generators("D5", 5, &["(1 2 3 4 5)", "(2 5)(3 4)"])?,
        CandidateGroup::from_group("E5", PermutationGroup::trivial(5)),
    ];
    let expected = CycleIndex::from_terms(
        5,
        [
            (CycleType::from_lengths(5, [1, 1, 1, 1, 1]), rational(1, 20)),
            (CycleType::from_lengths(5, [1, 2, 2]), rational(5, 20)),
            (CycleType::from_lengths(5, [1, 4]), rational(10, 20)),
            (CycleType::from_lengths(5, [5]), rational(4, 20)),
        ],
    )?;
    if catalog[0].cycle_index != expected {
        return Err(Error::Verification(format!(
            "Frobenius group cycle index is {}",
            catalog[0].cycle_index
        )));
    }
    Ok(catalog)
}

/// Largest parent group [`subgroups`] accepts.
pub const MAX_SUBGROUP_PARENT: usize = 120;

/// Every subgroup of `parent`, as closures of element pairs joined to a
/// fixpoint. Sorted by order, then elements.
pub fn subgroups(parent: &PermutationGroup) -> Result<Vec<PermutationGroup>> {
    if parent.order() > MAX_SUBGROUP_PARENT {
        return Err(Error::CapExceeded {
            what: "subgroup enumeration parent order",
            cap: MAX_SUBGROUP_PARENT as u128,
        });
    }
    let degree = parent.degree();
    let elems = parent.elements();
    let mut found: BTreeSet<Vec<Permutation>> = BTreeSet::new();
    for (i, a) in elems.iter().enumerate() {
        for b in &elems[i..] {
            found.insert(closure(degree, &[a.clone(), b.clone()])?.elements().to_vec());
        }
    }
    loop {
        let current: Vec<_> = found.iter().cloned().collect();
        let mut grew = false;
        for (i, a) in current.iter().enumerate() {
            for b in &current[i + 1..] {
                if a.iter().all(|x| b.binary_search(x).is_ok())
                    || b.iter().all(|x| a.binary_search(x).is_ok())
                {
                    continue;
                }
                let gens: Vec<_> = a.iter().chain(b.iter()).cloned().collect();
                grew |= found.insert(closure(degree, &gens)?.elements().to_vec());
            }
        }
        if !grew {
            break;
        }
    }
    let mut groups: Vec<_> = found
        .into_iter()
        .map(|e| PermutationGroup::from_elements_unchecked(degree, e))
        .collect();
    groups.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements().cmp(b.elements())));
    Ok(groups)
}

/// Subgroups of `parent` with distinct cycle indexes, named `H<order>` with a
/// letter suffix when several share an order.
pub fn subgroup_candidates(parent: &PermutationGroup) -> Result<Vec<CandidateGroup>> {
    let mut seen = BTreeSet::new();
    let mut by_order: BTreeMap<usize, Vec<PermutationGroup>> = BTreeMap::new();
    for h in subgroups(parent)? {
        if seen.insert(group_cycle_index(&h).to_string()) {
            by_order.entry(h.order()).or_default().push(h);
        }
    }
    let mut out = Vec::new();
    for (order, groups) in by_order {
        let many = groups.len() > 1;
        for (i, h) in groups.into_iter().enumerate() {
            let name = if many {
                format!("H{order}{}", (b'a' + i as u8) as char)
            } else {
                format!("H{order}")
            };
            out.push(CandidateGroup::from_group(name, h));
        }
    }
    Ok(out)
}

/// Why [`candidate_filter`] dropped a candidate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Exclusion {
    OrderDoesNotDivide { order: u64, bound: u64 },
    FixesAdjacentPair { element: Permutation },
    MonomialAbsent { monomial: String },
    WrongDegree,
}

/// Splits `candidates` into survivors and rejects, listing every reason a
/// candidate fails. A candidate is rejected when its order does not divide
/// `2e`, when a non-identity element fixes both ends of an edge, or when one
/// of its cycle types is absent from `z`.
pub fn candidate_filter_report(
    z: &CycleIndex,
    candidates: &[CandidateGroup],
    g: &Graph,
) -> (Vec<CandidateGroup>, Vec<(CandidateGroup, Vec<Exclusion>)>) {
    let bound = 2 * g.edge_count() as u64;
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    for c in candidates {
        let why = exclusions(z, c, g, bound);
        if why.is_empty() {
            kept.push(c.clone());
        } else {
            dropped.push((c.clone(), why));
        }
    }
    (kept, dropped)
}

pub fn candidate_filter(z: &CycleIndex, candidates: &[CandidateGroup], g: &Graph) -> Vec<CandidateGroup> {
    candidate_filter_report(z, candidates, g).0
}

fn exclusions(z: &CycleIndex, c: &CandidateGroup, g: &Graph, bound: u64) -> Vec<Exclusion> {
    if c.degree() != g.vertex_count() || c.degree() != z.degree() {
        return vec![Exclusion::WrongDegree];
    }
    let mut out = Vec::new();
    let order = c.order().unwrap_or(0);
    if order == 0 || bound == 0 || !bound.is_multiple_of(order) {
        out.push(Exclusion::OrderDoesNotDivide { order, bound });
    }
    if let Some(group) = &c.group {
        let fixes_edge = |p: &&Permutation| {
            !p.is_identity() && g.edges().iter().any(|&(u, v)| p.apply(u) == u && p.apply(v) == v)
        };
        if let Some(p) = group.elements().iter().find(fixes_edge) {
            out.push(Exclusion::FixesAdjacentPair { element: p.clone() });
        }
    }
    if let Some((ct, _)) = c.cycle_index.terms().find(|(ct, _)| z.coefficient(ct).is_zero()) {
        out.push(Exclusion::MonomialAbsent {
            monomial: ct.monomial(),
        });
    }
    out
}

/// Every nonnegative integer vector `i` with `Σ_k i_k Z(candidate_k) = z`
/// and `i_k >= lower[name_k]`, in lexicographic order of `i`.
pub fn decompose_all(
    z: &CycleIndex,
    candidates: &[CandidateGroup],
    lower: &BTreeMap<String, u64>,
) -> Result<Vec<Vec<u64>>> {
    if candidates.is_empty() {
        return Err(Error::param("decompose_all needs at least one candidate"));
    }
    if let Some(name) = lower.keys().find(|n| !candidates.iter().any(|c| &c.name == *n)) {
        return Err(Error::param(format!("constraint on unknown candidate {name:?}")));
    }
    for c in candidates {
        if c.degree() != z.degree() {
            return Err(Error::DegreeMismatch {
                left: z.degree(),
                right: c.degree(),
            });
        }
    }
    let monomials: Vec<CycleType> = z.terms().map(|(ct, _)| ct.clone()).collect();
    let target: Vec<BigRational> = z.terms().map(|(_, c)| c.clone()).collect();
    let mut contrib = Vec::new();
    let mut upper = Vec::new();
    for c in candidates {
        let outside = c.cycle_index.terms().any(|(ct, _)| z.coefficient(ct).is_zero());
        let row: Vec<BigRational> = monomials.iter().map(|m| c.cycle_index.coefficient(m)).collect();
        let bound = if outside {
            0
        } else {
            row.iter()
                .zip(&target)
                .filter(|(r, _)| r.is_positive())
                .map(|(r, t)| (t / r).floor().to_integer())
                .min()
                .and_then(|b| b.to_u64())
                .unwrap_or(0)
        };
        contrib.push(row);
        upper.push(bound);
    }
    let lows: Vec<u64> = candidates
        .iter()
        .map(|c| lower.get(&c.name).copied().unwrap_or(0))
        .collect();
    let search = Search {
        contrib: &contrib,
        upper: &upper,
        lower: &lows,
    };
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(candidates.len());
    search.run(target, &mut current, &mut out);
    Ok(out)
}

struct Search<'a> {
    contrib: &'a [Vec<BigRational>],
    upper: &'a [u64],
    lower: &'a [u64],
}

impl Search<'_> {
    fn run(&self, residual: Vec<BigRational>, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        let k = current.len();
        let row = &self.contrib[k];
        if k + 1 == self.contrib.len() {
            if let Some(x) = self.solve_last(&residual, row) {
                if x >= self.lower[k] && x <= self.upper[k] {
                    current.push(x);
                    out.push(current.clone());
                    current.pop();
                }
            }
            return;
        }
        let mut res = residual;
        for (r, c) in res.iter_mut().zip(row) {
            *r -= c * int(self.lower[k]);
        }
        for x in self.lower[k]..=self.upper[k] {
            if res.iter().any(|r| r.is_negative()) {
                break;
            }
            current.push(x);
            self.run(res.clone(), current, out);
            current.pop();
            for (r, c) in res.iter_mut().zip(row) {
                *r -= c;
            }
        }
    }

    /// The unique multiple of `row` equal to `residual`, if any.
    fn solve_last(&self, residual: &[BigRational], row: &[BigRational]) -> Option<u64> {
        let x = match row.iter().position(|c| !c.is_zero()) {
            Some(p) => residual[p].clone() / row[p].clone(),
            None => BigRational::zero(),
        };
        if !x.is_integer() || x.is_negative() {
            return None;
        }
        let ok = residual.iter().zip(row).all(|(r, c)| *r == c * &x);
        ok.then(|| x.to_integer().to_u64()).flatten()
    }
}

/// Labeled maps per class, `|Γ| / |Γ_M|`.
pub fn labeled_counts(stabilizer_orders: &[u64], group_order: &BigInt) -> Result<Vec<BigInt>> {
    stabilizer_orders
        .iter()
        .map(|&s| {
            if s == 0 {
                return Err(Error::ZeroArgument {
                    what: "stabilizer order",
                });
            }
            let (q, r) = group_order.div_rem(&BigInt::from(s));
            if r.is_zero() {
                Ok(q)
            } else {
                Err(Error::param(format!("{s} does not divide {group_order}")))
            }
        })
        .collect()
}
