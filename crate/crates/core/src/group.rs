//! Permutation groups held as explicit element lists.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default bound on the number of elements produced by [`closure`].
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

#[derive(Debug, Clone)]
pub struct PermutationGroup {
    degree: usize,
    elements: Vec<Permutation>,
}

impl PermutationGroup {
    pub fn trivial(degree: usize) -> Self {
        PermutationGroup {
            degree,
            elements: vec![Permutation::identity(degree)],
        }
    }

    /// Caller guarantees `elements` is a group (closed, with identity).
    pub(crate) fn from_elements_unchecked(degree: usize, mut elements: Vec<Permutation>) -> Self {
        elements.sort();
        PermutationGroup { degree, elements }
    }

    /// Smallest group containing `generators`, capped at `cap` elements.
    pub fn generate(degree: usize, generators: &[Permutation], cap: usize) -> Result<Self> {
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let id = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(id.clone());
        queue.push_back(id);
        let mut elements = Vec::new();
        while let Some(e) = queue.pop_front() {
            for g in generators {
                let next = g.compose_unchecked(&e);
                if !seen.contains(&next) {
                    if seen.len() >= cap {
                        return Err(Error::CapExceeded {
                            what: "group closure",
                            cap: cap as u128,
                        });
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
            elements.push(e);
        }
        Ok(PermutationGroup::from_elements_unchecked(degree, elements))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements in increasing image-array order; the identity comes first.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    /// Exhaustive check of closure, identity and inverses.
    pub fn is_group(&self) -> bool {
        let id = Permutation::identity(self.degree);
        if !self.contains(&id) {
            return false;
        }
        self.elements.iter().all(|a| {
            self.contains(&a.inverse())
                && self
                    .elements
                    .iter()
                    .all(|b| self.contains(&a.compose_unchecked(b)))
        })
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order();
        self.elements.iter().any(|g| {
            let mut x = g.clone();
            let mut k = 1;
            while !x.is_identity() {
                x = g.compose_unchecked(&x);
                k += 1;
            }
            k == n
        })
    }

    pub fn is_subgroup_of(&self, parent: &PermutationGroup) -> bool {
        self.degree == parent.degree && self.elements.iter().all(|e| parent.contains(e))
    }
}

impl PartialEq for PermutationGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermutationGroup {}

/// Closure with the default cap.
pub fn closure(degree: usize, generators: &[Permutation]) -> Result<PermutationGroup> {
    PermutationGroup::generate(degree, generators, DEFAULT_CLOSURE_CAP)
}
