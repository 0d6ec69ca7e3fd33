//! Rotation systems (maps) and their enumeration and automorphism action.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::Permutation;

/// Default bound on `∏_v (deg(v) - 1)!` for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_CAP: u128 = 10_000_000;

/// Per-vertex cyclic order of neighbors. Each cycle is stored starting at its
/// smallest neighbor, so equality of systems is equality of these lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct RotationSystem {
    rotations: Vec<Vec<usize>>,
}

impl TryFrom<Vec<Vec<usize>>> for RotationSystem {
    type Error = Error;

    fn try_from(rotations: Vec<Vec<usize>>) -> Result<Self> {
        for r in &rotations {
            let mut s = r.clone();
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidRotation(format!("{r:?} repeats a neighbor")));
            }
        }
        Ok(RotationSystem {
            rotations: rotations.into_iter().map(canonical_cycle).collect(),
        })
    }
}

impl From<RotationSystem> for Vec<Vec<usize>> {
    fn from(m: RotationSystem) -> Self {
        m.rotations
    }
}

fn canonical_cycle(mut cycle: Vec<usize>) -> Vec<usize> {
    if let Some(pos) = cycle
        .iter()
        .enumerate()
        .min_by_key(|(_, &x)| x)
        .map(|(i, _)| i)
    {
        cycle.rotate_left(pos);
    }
    cycle
}

impl RotationSystem {
    /// Validates that each rotation is a single cycle on exactly `N(v)`.
    pub fn new(g: &Graph, rotations: Vec<Vec<usize>>) -> Result<Self> {
        if rotations.len() != g.vertex_count() {
            return Err(Error::InvalidRotation(format!(
                "{} rotations for {} vertices",
                rotations.len(),
                g.vertex_count()
            )));
        }
        for (v, r) in rotations.iter().enumerate() {
            let mut sorted = r.clone();
            sorted.sort_unstable();
            if sorted != g.neighbors(v) {
                return Err(Error::InvalidRotation(format!(
                    "rotation at {v} is not a cyclic order of its neighbors"
                )));
            }
        }
        RotationSystem::try_from(rotations)
    }

    pub(crate) fn from_canonical(rotations: Vec<Vec<usize>>) -> Self {
        RotationSystem { rotations }
    }

    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotations[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotations
    }

    /// `ρ_v(u)`: the neighbor following `u` in the rotation at `v`.
    pub fn successor(&self, v: usize, u: usize) -> Option<usize> {
        let r = &self.rotations[v];
        r.iter().position(|&x| x == u).map(|i| r[(i + 1) % r.len()])
    }

    /// The rotation at `v` as a permutation of the whole vertex set.
    pub fn rotation_permutation(&self, v: usize) -> Permutation {
        Permutation::from_cycles(self.vertex_count(), &[self.rotations[v].as_slice()])
            .expect("rotation cycles are valid")
    }

    /// Action of an automorphism: the rotation at `γ(v)` becomes `γ ρ_v γ⁻¹`.
    pub fn act(&self, g: &Graph, gamma: &Permutation) -> Result<RotationSystem> {
        if gamma.degree() != self.vertex_count() {
            return Err(Error::DegreeMismatch {
                left: self.vertex_count(),
                right: gamma.degree(),
            });
        }
        if !g.is_automorphism(gamma) {
            return Err(Error::NotAutomorphism);
        }
        Ok(self.act_unchecked(gamma))
    }

    pub(crate) fn act_unchecked(&self, gamma: &Permutation) -> RotationSystem {
        let mut out = vec![Vec::new(); self.vertex_count()];
        for (v, r) in self.rotations.iter().enumerate() {
            out[gamma.apply(v)] = canonical_cycle(r.iter().map(|&x| gamma.apply(x)).collect());
        }
        RotationSystem { rotations: out }
    }

    /// 1-based text, `1:(2 3 4 5) 2:(3 4 5 1) ...`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for RotationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, r) in self.rotations.iter().enumerate() {
            if v > 0 {
                write!(f, " ")?;
            }
            let labels: Vec<String> = r.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "{}:({})", v + 1, labels.join(" "))?;
        }
        Ok(())
    }
}

/// `∏_v (deg(v) - 1)!`, the number of labeled imbeddings, or `None` on
/// overflow of `u128`.
pub fn labeled_count(g: &Graph) -> Option<u128> {
    (0..g.vertex_count()).try_fold(1u128, |acc, v| {
        let d = g.degree(v).max(1) as u128;
        (1..d).try_fold(acc, |a, k| a.checked_mul(k))
    })
}

/// All cyclic orders of `nbrs` that start at its smallest element, in
/// lexicographic order.
fn cyclic_orders(nbrs: &[usize]) -> Vec<Vec<usize>> {
    if nbrs.len() <= 1 {
        return vec![nbrs.to_vec()];
    }
    let first = nbrs[0];
    let rest = &nbrs[1..];
    let mut out = Vec::new();
    let mut current = vec![first];
    let mut used = vec![false; rest.len()];
    fn go(rest: &[usize], used: &mut [bool], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == rest.len() + 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            if !used[i] {
                used[i] = true;
                cur.push(rest[i]);
                go(rest, used, cur, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    go(rest, &mut used, &mut current, &mut out);
    out
}

/// Exhaustive, duplicate-free enumeration of the rotation systems of a graph,
/// in lexicographic order. Systems are addressable by index so disjoint index
/// ranges can be consumed independently.
#[derive(Debug, Clone)]
pub struct RotationEnumerator {
    choices: Vec<Vec<Vec<usize>>>,
    total: u128,
    next: u128,
    digits: Vec<usize>,
}

impl RotationEnumerator {
    pub fn new(g: &Graph) -> Result<Self> {
        RotationEnumerator::with_cap(g, DEFAULT_ENUMERATION_CAP)
    }

    pub fn with_cap(g: &Graph, cap: u128) -> Result<Self> {
        let total = labeled_count(g).filter(|&t| t <= cap).ok_or(Error::CapExceeded {
            what: "rotation system enumeration",
            cap,
        })?;
        let choices: Vec<_> = (0..g.vertex_count())
            .map(|v| cyclic_orders(g.neighbors(v)))
            .collect();
        Ok(RotationEnumerator {
            digits: vec![0; choices.len()],
            choices,
            total,
            next: 0,
        })
    }

    pub fn total(&self) -> u128 {
        self.total
    }

    /// The `index`-th system in lexicographic order.
    pub fn system_at(&self, mut index: u128) -> Option<RotationSystem> {
        if index >= self.total {
            return None;
        }
        let mut rotations = vec![Vec::new(); self.choices.len()];
        for v in (0..self.choices.len()).rev() {
            let base = self.choices[v].len() as u128;
            rotations[v] = self.choices[v][(index % base) as usize].clone();
            index /= base;
        }
        Some(RotationSystem::from_canonical(rotations))
    }

    /// Systems with indices in `range`.
    pub fn range(&self, range: std::ops::Range<u128>) -> impl Iterator<Item = RotationSystem> + '_ {
        range.filter_map(move |i| self.system_at(i))
    }
}

impl Iterator for RotationEnumerator {
    type Item = RotationSystem;

    fn next(&mut self) -> Option<RotationSystem> {
        if self.next >= self.total {
            return None;
        }
        let item = RotationSystem::from_canonical(
            self.digits
                .iter()
                .zip(&self.choices)
                .map(|(&d, c)| c[d].clone())
                .collect(),
        );
        self.next += 1;
        for v in (0..self.digits.len()).rev() {
            self.digits[v] += 1;
            if self.digits[v] < self.choices[v].len() {
                break;
            }
            self.digits[v] = 0;
        }
        Some(item)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}

/// Enumerates every rotation system of `g` under the default cap.
pub fn enumerate_rotation_systems(g: &Graph) -> Result<RotationEnumerator> {
    RotationEnumerator::new(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn k5_equivariant() -> RotationSystem {
        let g = Graph::complete(5).unwrap();
        RotationSystem::new(
            &g,
            vec![
                vec![1, 2, 3, 4],
                vec![2, 3, 4, 0],
                vec![3, 4, 0, 1],
                vec![4, 0, 1, 2],
                vec![0, 1, 2, 3],
            ],
        )
        .unwrap()
    }

    #[test]
    fn enumeration_counts() {
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(enumerate_rotation_systems(&k4).unwrap().count(), 16);
        let k5 = Graph::complete(5).unwrap();
        let all: HashSet<_> = enumerate_rotation_systems(&k5).unwrap().collect();
        assert_eq!(all.len(), 7776);
        let b2 = Graph::bouquet_model(2).unwrap();
        assert_eq!(enumerate_rotation_systems(&b2).unwrap().count(), 6);
    }

    #[test]
    fn count_matches_product_formula() {
        let graphs = [
            Graph::complete(2).unwrap(),
            Graph::complete(3).unwrap(),
            Graph::wheel(4).unwrap(),
            Graph::wheel(5).unwrap(),
            Graph::bouquet_model(3).unwrap(),
            Graph::directed_bouquet_model(3).unwrap(),
            Graph::rooted(&Graph::complete(4).unwrap(), 0).unwrap(),
        ];
        for g in &graphs {
            let e = enumerate_rotation_systems(g).unwrap();
            let expected = labeled_count(g).unwrap();
            assert_eq!(e.total(), expected);
            let items: Vec<_> = e.collect();
            assert_eq!(items.len() as u128, expected);
            assert!(items.windows(2).all(|w| w[0] < w[1]), "lexicographic and distinct");
        }
    }

    #[test]
    fn indexed_access_agrees_with_iteration() {
        let g = Graph::wheel(4).unwrap();
        let e = enumerate_rotation_systems(&g).unwrap();
        let by_index: Vec<_> = e.range(0..e.total()).collect();
        let by_iter: Vec<_> = e.clone().collect();
        assert_eq!(by_index, by_iter);
        assert!(e.system_at(e.total()).is_none());
    }

    #[test]
    fn cap_exceeded() {
        let k6 = Graph::complete(6).unwrap();
        assert!(matches!(
            RotationEnumerator::with_cap(&k6, 1000),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn action_examples() {
        let g = Graph::complete(5).unwrap();
        let m = k5_equivariant();
        assert_eq!(m.act(&g, &Permutation::identity(5)).unwrap(), m);
        let gamma = Permutation::parse("(1 2 3 4 5)", 5).unwrap();
        assert_eq!(m.act(&g, &gamma).unwrap(), m);
        let alpha = Permutation::parse("(2 5)(3 4)", 5).unwrap();
        let moved = m.act(&g, &alpha).unwrap();
        // (2 3 4 5) becomes (5 4 3 2) at vertex 1
        assert_eq!(moved.rotation(0), &[1, 4, 3, 2]);
        assert_ne!(moved.rotation(0), m.rotation(0));
    }

    #[test]
    fn action_rejects_non_automorphism() {
        let g = Graph::wheel(4).unwrap();
        let m = enumerate_rotation_systems(&g).unwrap().next().unwrap();
        let bad = Permutation::parse("(1 2)", 5).unwrap();
        assert_eq!(m.act(&g, &bad), Err(Error::NotAutomorphism));
    }

    #[test]
    fn action_is_a_group_action() {
        for g in [Graph::complete(4).unwrap(), Graph::wheel(5).unwrap()] {
            let group = g.automorphism_group().unwrap();
            let maps: Vec<_> = enumerate_rotation_systems(&g).unwrap().step_by(7).collect();
            for m in &maps {
                for a in group.elements().iter().step_by(3) {
                    for b in group.elements().iter().step_by(2) {
                        let ab = a.compose(b).unwrap();
                        let lhs = m.act(&g, &ab).unwrap();
                        let rhs = m.act(&g, b).unwrap().act(&g, a).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn validation_and_json() {
        let g = Graph::complete(3).unwrap();
        assert!(RotationSystem::new(&g, vec![vec![1, 2], vec![0, 2], vec![0]]).is_err());
        let m = RotationSystem::new(&g, vec![vec![2, 1], vec![0, 2], vec![1, 0]]).unwrap();
        assert_eq!(m.rotation(0), &[1, 2]);
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, "[[1,2],[0,2],[0,1]]");
        assert_eq!(serde_json::from_str::<RotationSystem>(&json).unwrap(), m);
        assert!(k5_equivariant().to_string().starts_with("1:(2 3 4 5) 2:("));
    }
}
