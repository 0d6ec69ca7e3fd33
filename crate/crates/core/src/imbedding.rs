//! Fixed-set cardinalities and the imbedding sum
//! `Z(G) = (1/|Γ|) Σ_γ |F(γ)| s(γ)`.
//!
//! `|F(γ)|` is the product, over one representative `v` per vertex orbit of
//! `γ`, of the number of rotations at `v` fixed by `γ^{l(v,γ)}`. That local
//! count is `φ(d) (deg/d - 1)! d^{deg/d - 1}` when `γ^{l}` is `d`-regular on
//! `N(v)` and zero otherwise.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith;
use crate::cycle_index::CycleIndex;
use crate::domain::TypeDomain;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::PermutationGroup;
use crate::perm::{CycleType, Permutation};

/// Number of rotations at `v` fixed by conjugation with `p`, which must map
/// `N(v)` onto itself.
pub fn fixed_rotations_at_vertex(g: &Graph, v: usize, p: &Permutation) -> Result<BigUint> {
    let nbrs = g.neighbors(v);
    if nbrs.is_empty() {
        return Ok(BigUint::one());
    }
    let Some(d) = p.regular_order(nbrs)? else {
        return Ok(BigUint::zero());
    };
    let m = (nbrs.len() / d) as u64;
    let d = d as u64;
    Ok(BigUint::from(arith::euler_phi(d)?) * arith::factorial(m - 1) * arith::pow(d, m - 1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitFactor {
    /// Least vertex of the orbit.
    pub representative: usize,
    pub orbit_length: usize,
    pub local_count: BigUint,
}

/// Breakdown of `|F(γ)|`. Computation stops at the first zero factor, so
/// `per_orbit` may cover only a prefix of the orbits when `total` is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedSetReport {
    pub gamma: Permutation,
    pub per_orbit: Vec<OrbitFactor>,
    pub total: BigUint,
}

pub fn fixed_set_size(g: &Graph, gamma: &Permutation) -> Result<FixedSetReport> {
    if !g.is_automorphism(gamma) {
        return Err(Error::NotAutomorphism);
    }
    Ok(fixed_set_unchecked(g, gamma))
}

fn fixed_set_unchecked(g: &Graph, gamma: &Permutation) -> FixedSetReport {
    let mut per_orbit = Vec::new();
    let mut total = BigUint::one();
    for orbit in gamma.orbits() {
        let rep = orbit[0];
        let l = orbit.len();
        let power = gamma.pow(l as i64);
        let local = fixed_rotations_at_vertex(g, rep, &power)
            .expect("a power fixing v preserves N(v)");
        total *= &local;
        let zero = local.is_zero();
        per_orbit.push(OrbitFactor {
            representative: rep,
            orbit_length: l,
            local_count: local,
        });
        if zero {
            break;
        }
    }
    FixedSetReport {
        gamma: gamma.clone(),
        per_orbit,
        total,
    }
}

/// Imbedding sum over a precomputed automorphism group.
pub fn imbedding_sum_with_group(
    g: &Graph,
    group: &PermutationGroup,
    domain: &TypeDomain,
) -> Result<CycleIndex> {
    g.ensure_connected()?;
    domain.validate(group)?;
    let mut weights: BTreeMap<CycleType, BigUint> = BTreeMap::new();
    for gamma in group.elements() {
        let fixed = fixed_set_unchecked(g, gamma).total;
        if fixed.is_zero() {
            continue;
        }
        *weights.entry(domain.cycle_type(gamma)?).or_default() += fixed;
    }
    let order = BigInt::from(group.order());
    CycleIndex::from_terms(
        domain.degree(g),
        weights
            .into_iter()
            .map(|(ct, w)| (ct, BigRational::new(BigInt::from(w), order.clone()))),
    )
    .map(|z| z.with_denominator(order))
}

pub fn imbedding_sum(g: &Graph, domain: &TypeDomain) -> Result<CycleIndex> {
    imbedding_sum_with_group(g, &g.automorphism_group()?, domain)
}

/// `Σ_γ |F(γ)|` over the automorphism group, and the group order.
pub fn burnside_total(g: &Graph) -> Result<(BigUint, usize)> {
    g.ensure_connected()?;
    let group = g.automorphism_group()?;
    let sum = group
        .elements()
        .iter()
        .map(|gamma| fixed_set_unchecked(g, gamma).total)
        .sum();
    Ok((sum, group.order()))
}

/// Number of unlabeled imbeddings, `Z(G; 1)`.
///
/// Panics if the value is not an integer, which can only come from a bug in
/// the fixed-set computation.
pub fn unlabeled_count(g: &Graph) -> Result<BigInt> {
    let total = imbedding_sum(g, &TypeDomain::Vertices)?.evaluate_at_ones();
    assert!(total.is_integer(), "Z(G;1) = {total} is not integral");
    Ok(total.to_integer())
}
