//! Which domain the cycle type `s(γ)` of an automorphism is recorded on.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::PermutationGroup;
use crate::perm::{CycleType, Permutation};

/// Cycle types are taken either on the vertices or on an indexed family of
/// objects the automorphisms permute (the loops of a directed bouquet).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeDomain {
    Vertices,
    Projected(Projection),
}

/// Family member `i` is represented by vertex `representatives[i]`; every
/// vertex that represents some member is listed in `member_of`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projection {
    representatives: Vec<usize>,
    member_of: Vec<Option<usize>>,
}

impl Projection {
    pub fn new(vertex_count: usize, representatives: Vec<usize>) -> Result<Self> {
        let mut member_of = vec![None; vertex_count];
        for (i, &v) in representatives.iter().enumerate() {
            if v >= vertex_count {
                return Err(Error::OutOfRange {
                    index: v,
                    size: vertex_count,
                });
            }
            if member_of[v].replace(i).is_some() {
                return Err(Error::param(format!("vertex {v} represents two members")));
            }
        }
        Ok(Projection {
            representatives,
            member_of,
        })
    }

    pub fn family_size(&self) -> usize {
        self.representatives.len()
    }

    /// Induced permutation of the family.
    pub fn project(&self, gamma: &Permutation) -> Result<Permutation> {
        if gamma.degree() != self.member_of.len() {
            return Err(Error::DegreeMismatch {
                left: self.member_of.len(),
                right: gamma.degree(),
            });
        }
        let images = self
            .representatives
            .iter()
            .map(|&v| {
                self.member_of[gamma.apply(v)].ok_or_else(|| {
                    Error::param("automorphism moves a representative outside the family")
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_images(images)
    }
}

impl TypeDomain {
    /// Size of the domain the cycle types live on.
    pub fn degree(&self, g: &Graph) -> usize {
        match self {
            TypeDomain::Vertices => g.vertex_count(),
            TypeDomain::Projected(p) => p.family_size(),
        }
    }

    pub fn permutation(&self, gamma: &Permutation) -> Result<Permutation> {
        match self {
            TypeDomain::Vertices => Ok(gamma.clone()),
            TypeDomain::Projected(p) => p.project(gamma),
        }
    }

    pub fn cycle_type(&self, gamma: &Permutation) -> Result<CycleType> {
        Ok(self.permutation(gamma)?.cycle_type())
    }

    /// Checks that the projection is a homomorphism on `group`: every pair
    /// when the group is small, otherwise every element against a spread of
    /// sixteen partners.
    pub fn validate(&self, group: &PermutationGroup) -> Result<()> {
        let TypeDomain::Projected(p) = self else {
            return Ok(());
        };
        let elems = group.elements();
        let step = if elems.len() <= 200 { 1 } else { elems.len() / 16 };
        let images: Vec<_> = elems.iter().map(|e| p.project(e)).collect::<Result<_>>()?;
        for (a, pa) in elems.iter().zip(&images) {
            for (b, pb) in elems.iter().zip(&images).step_by(step) {
                let lhs = p.project(&a.compose_unchecked(b))?;
                if lhs != pa.compose_unchecked(pb) {
                    return Err(Error::Verification(
                        "projection is not a homomorphism".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Action on the loops of a directed bouquet model, each loop identified by
/// its black subdivision vertex. Fails unless `g` is such a model.
pub fn loop_projection(g: &Graph) -> Result<TypeDomain> {
    let n = g.vertex_count().saturating_sub(1) / 2;
    if n == 0 || g != &Graph::directed_bouquet_model(n)? {
        return Err(Error::InvalidGraph("not a directed bouquet model".into()));
    }
    let reps = (0..n).map(|i| 2 * i + 1).collect();
    Ok(TypeDomain::Projected(Projection::new(g.vertex_count(), reps)?))
}
