//! Permutations of `0..n` and their cycle types.
//!
//! Composition convention: `a.compose(&b)` applies `b` first, then `a`, so
//! `a.compose(&b).apply(x) == a.apply(b.apply(x))`. Everything in the crate,
//! including conjugation and the action on rotation systems, is written
//! against this convention.
//!
//! Text form is cycle notation with 1-based labels, e.g. `(1 2 3)(4 5)`;
//! element `i` of the domain prints as `i + 1`. The JSON form is the 0-based
//! image array.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::from_images(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from its image array, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n {
                return Err(Error::OutOfRange { index: x, size: n });
            }
            if seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "{x} appears twice in image array"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation from disjoint cycles over `0..degree`.
    pub fn from_cycles<C: AsRef<[usize]>>(degree: usize, cycles: &[C]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            let cycle = cycle.as_ref();
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(Error::OutOfRange {
                        index: x,
                        size: degree,
                    });
                }
                if touched[x] {
                    return Err(Error::InvalidPermutation(format!(
                        "{x} appears in more than one cycle"
                    )));
                }
                touched[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parses 1-based cycle notation such as `(1 2 3)(4 5)`. Commas are
    /// accepted as separators; `()` or the empty string is the identity.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
            let close = body
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in {text:?}")))?;
            let mut cycle = Vec::new();
            for tok in body[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
            {
                let label: usize = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad label {tok:?}")))?;
                if label == 0 {
                    return Err(Error::Parse("labels are 1-based".into()));
                }
                cycle.push(label - 1);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = body[close + 1..].trim_start();
        }
        Permutation::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    fn check_degree(&self, other: &Permutation) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(())
    }

    /// `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        self.check_degree(other)?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// `self^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose_unchecked(&sq);
            }
            sq = sq.compose_unchecked(&sq);
            e >>= 1;
        }
        acc
    }

    /// `gamma ∘ self ∘ gamma⁻¹`. Each cycle `(x y ...)` of `self` becomes
    /// `(γx γy ...)`.
    pub fn conjugate_by(&self, gamma: &Permutation) -> Result<Permutation> {
        self.check_degree(gamma)?;
        let mut images = vec![0; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            images[gamma.images[x]] = gamma.images[y];
        }
        Ok(Permutation { images })
    }

    /// All orbits, including fixed points, each starting at its least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Non-trivial cycles only.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.orbits().into_iter().filter(|c| c.len() > 1).collect()
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::from_lengths(self.degree(), self.orbits().iter().map(Vec::len))
    }

    /// Length of the orbit containing `x`.
    pub fn orbit_length(&self, x: usize) -> Result<usize> {
        if x >= self.degree() {
            return Err(Error::OutOfRange {
                index: x,
                size: self.degree(),
            });
        }
        let mut len = 1;
        let mut y = self.images[x];
        while y != x {
            y = self.images[y];
            len += 1;
        }
        Ok(len)
    }

    /// Returns `d` when every orbit of `self` inside `subset` has size `d`.
    /// The empty set yields `None`.
    pub fn regular_order(&self, subset: &[usize]) -> Result<Option<usize>> {
        let set: BTreeSet<usize> = subset.iter().copied().collect();
        for &x in &set {
            if x >= self.degree() {
                return Err(Error::OutOfRange {
                    index: x,
                    size: self.degree(),
                });
            }
            if !set.contains(&self.images[x]) {
                return Err(Error::NotInvariant);
            }
        }
        let mut common = None;
        for &x in &set {
            let len = self.orbit_length(x)?;
            match common {
                None => common = Some(len),
                Some(d) if d != len => return Ok(None),
                _ => {}
            }
        }
        Ok(common)
    }

    /// Restriction to an invariant subset, reindexed by the subset's
    /// increasing order.
    pub fn restrict(&self, subset: &[usize]) -> Result<Permutation> {
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let images = sorted
            .iter()
            .map(|&x| {
                let y = *self.images.get(x).ok_or(Error::OutOfRange {
                    index: x,
                    size: self.degree(),
                })?;
                sorted.binary_search(&y).map_err(|_| Error::NotInvariant)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Permutation { images })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// `a ∘ b`, applying `b` first.
pub fn compose(a: &Permutation, b: &Permutation) -> Result<Permutation> {
    a.compose(b)
}

/// `γ ρ γ⁻¹`.
pub fn conjugate(rho: &Permutation, gamma: &Permutation) -> Result<Permutation> {
    rho.conjugate_by(gamma)
}

/// The monomial `∏ s_k^{j_k}` recording the orbit lengths of a permutation.
///
/// Ordering is the canonical term order used when rendering polynomials:
/// more 1-cycles first, then lexicographic on the `(k, j_k)` list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleType {
    parts: Vec<(usize, usize)>,
    degree: usize,
}

impl CycleType {
    pub fn from_lengths(degree: usize, lengths: impl IntoIterator<Item = usize>) -> Self {
        let mut counts = std::collections::BTreeMap::new();
        for len in lengths {
            *counts.entry(len).or_insert(0usize) += 1;
        }
        let parts: Vec<_> = counts.into_iter().collect();
        debug_assert_eq!(parts.iter().map(|(k, j)| k * j).sum::<usize>(), degree);
        CycleType { parts, degree }
    }

    /// From `(k, j_k)` pairs; pairs with `j_k = 0` are dropped.
    pub fn from_parts(parts: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut counts = std::collections::BTreeMap::new();
        for (k, j) in parts {
            if k == 0 {
                return Err(Error::param("cycle length must be at least 1"));
            }
            if j > 0 {
                *counts.entry(k).or_insert(0usize) += j;
            }
        }
        let parts: Vec<_> = counts.into_iter().collect();
        let degree = parts.iter().map(|(k, j)| k * j).sum();
        Ok(CycleType { parts, degree })
    }

    /// `s_1^{fixed} s_k^{count}`.
    pub fn fixed_plus_uniform(fixed: usize, k: usize, count: usize) -> Self {
        CycleType::from_parts([(1, fixed), (k, count)]).expect("k >= 1")
    }

    pub fn parts(&self) -> &[(usize, usize)] {
        &self.parts
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Multiplicity `j_k`.
    pub fn multiplicity(&self, k: usize) -> usize {
        self.parts
            .iter()
            .find(|(len, _)| *len == k)
            .map_or(0, |&(_, j)| j)
    }

    pub fn fixed_points(&self) -> usize {
        self.multiplicity(1)
    }

    /// Total number of cycles `Σ j_k`.
    pub fn cycle_count(&self) -> usize {
        self.parts.iter().map(|&(_, j)| j).sum()
    }

    /// Renders as `s1^4`, `s1*s3`, ...; the empty monomial is `1`.
    pub fn monomial(&self) -> String {
        if self.parts.is_empty() {
            return "1".to_string();
        }
        self.parts
            .iter()
            .map(|&(k, j)| {
                if j == 1 {
                    format!("s{k}")
                } else {
                    format!("s{k}^{j}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl Ord for CycleType {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .fixed_points()
            .cmp(&self.fixed_points())
            .then_with(|| self.parts.cmp(&other.parts))
            .then_with(|| self.degree.cmp(&other.degree))
    }
}

impl PartialOrd for CycleType {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.monomial())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(degree: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(degree, cycles).unwrap()
    }

    #[test]
    fn compose_examples() {
        let q = p(3, &[&[0, 1, 2]]);
        assert_eq!(Permutation::identity(3).compose(&q).unwrap(), q);
        let t = p(2, &[&[0, 1]]);
        assert!(t.compose(&t).unwrap().is_identity());
        assert_eq!(q.compose(&q).unwrap(), p(3, &[&[0, 2, 1]]));
    }

    #[test]
    fn compose_applies_right_first() {
        let a = p(3, &[&[0, 1]]);
        let b = p(3, &[&[1, 2]]);
        let ab = a.compose(&b).unwrap();
        for x in 0..3 {
            assert_eq!(ab.apply(x), a.apply(b.apply(x)));
        }
    }

    #[test]
    fn compose_degree_mismatch() {
        let e = Permutation::identity(3).compose(&Permutation::identity(4));
        assert_eq!(e, Err(Error::DegreeMismatch { left: 3, right: 4 }));
    }

    #[test]
    fn conjugate_k5_rotation() {
        let rho = Permutation::parse("(2 3 4 5)", 5).unwrap();
        let gamma = Permutation::parse("(1 2 3 4 5)", 5).unwrap();
        let c = conjugate(&rho, &gamma).unwrap();
        assert_eq!(c, Permutation::parse("(3 4 5 1)", 5).unwrap());
        assert_eq!(conjugate(&rho, &Permutation::identity(5)).unwrap(), rho);
    }

    #[test]
    fn cycle_type_examples() {
        let g = p(7, &[&[0, 1], &[2, 3], &[4, 5, 6]]);
        assert_eq!(g.cycle_type().monomial(), "s2^2*s3");
        assert_eq!(Permutation::identity(4).cycle_type().monomial(), "s1^4");
        assert_eq!(p(4, &[&[0, 1, 2, 3]]).cycle_type().monomial(), "s4");
    }

    #[test]
    fn orbit_lengths() {
        assert_eq!(Permutation::identity(3).orbit_length(2).unwrap(), 1);
        assert_eq!(p(5, &[&[0, 1, 2, 3, 4]]).orbit_length(0).unwrap(), 5);
        assert_eq!(p(5, &[&[0, 1], &[2, 3, 4]]).orbit_length(2).unwrap(), 3);
        assert!(Permutation::identity(3).orbit_length(3).is_err());
    }

    #[test]
    fn regular_orders() {
        assert_eq!(Permutation::identity(5).regular_order(&[1, 3]).unwrap(), Some(1));
        let q = p(4, &[&[0, 1], &[2, 3]]);
        assert_eq!(q.regular_order(&[0, 1, 2, 3]).unwrap(), Some(2));
        let r = p(5, &[&[0, 1], &[2, 3, 4]]);
        assert_eq!(r.regular_order(&[0, 1, 2, 3, 4]).unwrap(), None);
        assert_eq!(r.regular_order(&[0, 2]), Err(Error::NotInvariant));
    }

    #[test]
    fn text_round_trip() {
        let q = Permutation::parse("(1 2 3)(4 5)", 6).unwrap();
        assert_eq!(q.to_string(), "(1 2 3)(4 5)");
        assert_eq!(Permutation::parse("(1,2,3)", 3).unwrap().apply(0), 1);
        assert!(Permutation::parse("()", 3).unwrap().is_identity());
        assert!(Permutation::parse("(1 2", 3).is_err());
        assert!(Permutation::parse("(1 4)", 3).is_err());
        assert!(Permutation::parse("(1 2)(2 3)", 3).is_err());
    }

    #[test]
    fn json_is_image_array() {
        let q = p(3, &[&[0, 1, 2]]);
        assert_eq!(serde_json::to_string(&q).unwrap(), "[1,2,0]");
        let back: Permutation = serde_json::from_str("[1,2,0]").unwrap();
        assert_eq!(back, q);
        assert!(serde_json::from_str::<Permutation>("[0,0]").is_err());
    }

    #[test]
    fn canonical_term_order() {
        let s = |parts: &[(usize, usize)]| CycleType::from_parts(parts.iter().copied()).unwrap();
        let mut v = [s(&[(4, 1)]), s(&[(2, 2)]), s(&[(1, 1), (3, 1)]), s(&[(1, 4)])];
        v.sort();
        let rendered: Vec<_> = v.iter().map(|c| c.monomial()).collect();
        assert_eq!(rendered, ["s1^4", "s1*s3", "s2^2", "s4"]);
    }

    fn arb_perm(max: usize) -> impl Strategy<Value = Permutation> {
        (1..=max).prop_flat_map(|n| {
            Just((0..n).collect::<Vec<_>>())
                .prop_shuffle()
                .prop_map(|v| Permutation::from_images(v).unwrap())
        })
    }

    fn arb_pair(max: usize) -> impl Strategy<Value = (Permutation, Permutation)> {
        (1..=max).prop_flat_map(|n| {
            let one = Just((0..n).collect::<Vec<_>>()).prop_shuffle();
            (one.clone(), one).prop_map(|(a, b)| {
                (
                    Permutation::from_images(a).unwrap(),
                    Permutation::from_images(b).unwrap(),
                )
            })
        })
    }

    proptest! {
        #[test]
        fn conjugation_preserves_cycle_type((q, g) in arb_pair(9)) {
            prop_assert_eq!(conjugate(&q, &g).unwrap().cycle_type(), q.cycle_type());
        }

        #[test]
        fn inverse_cancels(q in arb_perm(9)) {
            prop_assert!(q.inverse().compose(&q).unwrap().is_identity());
            prop_assert!(q.compose(&q.inverse()).unwrap().is_identity());
        }

        #[test]
        fn conjugate_matches_product((q, g) in arb_pair(8)) {
            let direct = g.compose(&q).unwrap().compose(&g.inverse()).unwrap();
            prop_assert_eq!(conjugate(&q, &g).unwrap(), direct);
        }

        #[test]
        fn pow_matches_repeated_compose(q in arb_perm(8), k in 0i64..12) {
            let mut acc = Permutation::identity(q.degree());
            for _ in 0..k {
                acc = acc.compose(&q).unwrap();
            }
            prop_assert_eq!(q.pow(k), acc.clone());
            prop_assert_eq!(q.pow(-k), acc.inverse());
        }

        #[test]
        fn text_form_round_trips(q in arb_perm(9)) {
            prop_assert_eq!(Permutation::parse(&q.to_string(), q.degree()).unwrap(), q);
        }
    }
}
