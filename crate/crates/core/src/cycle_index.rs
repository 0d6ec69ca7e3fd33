//! Exact-rational polynomials in the cycle-type indeterminates `s_1, s_2, ...`.
//!
//! Group cycle indexes and imbedding sums share this representation.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::perm::CycleType;

/// A rational linear combination of cycle-type monomials of one common degree.
/// Zero coefficients are never stored.
///
/// An optional display denominator (usually a group order) only affects how
/// the polynomial is rendered; equality ignores it.
#[derive(Debug, Clone)]
pub struct CycleIndex {
    degree: usize,
    terms: BTreeMap<CycleType, BigRational>,
    denominator_hint: Option<BigInt>,
}

impl PartialEq for CycleIndex {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.terms == other.terms
    }
}

impl Eq for CycleIndex {}

pub(crate) fn rational(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

pub(crate) fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

impl CycleIndex {
    pub fn zero(degree: usize) -> Self {
        CycleIndex {
            degree,
            terms: BTreeMap::new(),
            denominator_hint: None,
        }
    }

    /// Prefers `den` as the factored-out denominator when rendering, provided
    /// it clears every coefficient.
    pub fn with_denominator(mut self, den: impl Into<BigInt>) -> Self {
        let den = den.into();
        self.denominator_hint = (den.is_positive()).then_some(den);
        self
    }

    /// Denominator pulled out front by the text rendering.
    pub fn display_denominator(&self) -> BigInt {
        let lcd = self.common_denominator();
        match &self.denominator_hint {
            Some(h) if !lcd.is_one() && h.is_multiple_of(&lcd) => h.clone(),
            _ => lcd,
        }
    }

    pub fn monomial(ct: CycleType, coefficient: BigRational) -> Self {
        let mut z = CycleIndex::zero(ct.degree());
        z.add_term(ct, coefficient).expect("degree matches by construction");
        z
    }

    pub fn from_terms(
        degree: usize,
        terms: impl IntoIterator<Item = (CycleType, BigRational)>,
    ) -> Result<Self> {
        let mut z = CycleIndex::zero(degree);
        for (ct, c) in terms {
            z.add_term(ct, c)?;
        }
        Ok(z)
    }

    /// Adds `coefficient · ct` in place.
    pub fn add_term(&mut self, ct: CycleType, coefficient: BigRational) -> Result<()> {
        if ct.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: ct.degree(),
            });
        }
        if coefficient.is_zero() {
            return Ok(());
        }
        let entry = self.terms.entry(ct).or_insert_with(BigRational::zero);
        *entry += coefficient;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&CycleType, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, ct: &CycleType) -> BigRational {
        self.terms.get(ct).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &CycleIndex) -> Result<CycleIndex> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        let mut out = self.clone();
        for (ct, c) in &other.terms {
            out.add_term(ct.clone(), c.clone())?;
        }
        out.denominator_hint = match (&self.denominator_hint, &other.denominator_hint) {
            (Some(a), Some(b)) => Some(a.lcm(b)),
            _ => None,
        };
        Ok(out)
    }

    pub fn sub(&self, other: &CycleIndex) -> Result<CycleIndex> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, q: &BigRational) -> CycleIndex {
        if q.is_zero() {
            return CycleIndex::zero(self.degree);
        }
        CycleIndex {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(ct, c)| (ct.clone(), c * q))
                .collect(),
            denominator_hint: None,
        }
    }

    /// Value with every `s_k := 1`: the sum of the coefficients.
    pub fn evaluate_at_ones(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |acc, c| acc + c)
    }

    /// Value with every `s_k := c`.
    pub fn substitute_constant(&self, c: u64) -> BigRational {
        self.terms.iter().fold(BigRational::zero(), |acc, (ct, coef)| {
            acc + coef * int(arith::pow(c, ct.cycle_count() as u64))
        })
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Least common denominator of the coefficients.
    pub fn common_denominator(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    pub fn to_json(&self) -> Result<Vec<JsonTerm>> {
        self.terms
            .iter()
            .map(|(ct, c)| {
                let num = c.numer().to_i128();
                let den = c.denom().to_i128();
                match (num, den) {
                    (Some(num), Some(den)) => Ok(JsonTerm {
                        cycles: ct.parts().iter().map(|&(k, j)| [k, j]).collect(),
                        num,
                        den,
                    }),
                    _ => Err(Error::param("coefficient exceeds 128-bit JSON range")),
                }
            })
            .collect()
    }

    /// Inverse of [`CycleIndex::to_json`]. An empty list needs `degree`.
    pub fn from_json(terms: &[JsonTerm], degree: Option<usize>) -> Result<CycleIndex> {
        let mut out: Option<CycleIndex> = degree.map(CycleIndex::zero);
        for t in terms {
            if t.den == 0 {
                return Err(Error::Parse("zero denominator".into()));
            }
            let ct = CycleType::from_parts(t.cycles.iter().map(|&[k, j]| (k, j)))?;
            let z = out.get_or_insert_with(|| CycleIndex::zero(ct.degree()));
            z.add_term(ct, rational(t.num, t.den))?;
        }
        out.ok_or_else(|| Error::Parse("empty term list without a degree".into()))
    }
}

/// One term of the JSON form: `{cycles: [[k, j_k], ...], num, den}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub cycles: Vec<[usize; 2]>,
    pub num: i128,
    pub den: i128,
}

/// Renders as `(1/24)*(16*s1^4 + 32*s1*s3 + 12*s2^2 + 12*s4)`, with
/// [`CycleIndex::display_denominator`] pulled out front; integral polynomials
/// omit the prefix.
impl fmt::Display for CycleIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let den = self.display_denominator();
        let mut body = String::new();
        for (i, (ct, c)) in self.terms.iter().enumerate() {
            let scaled = (c * int(den.clone())).to_integer();
            let (neg, mag) = (scaled.is_negative(), scaled.abs());
            match (i, neg) {
                (0, true) => body.push('-'),
                (0, false) => {}
                (_, true) => body.push_str(" - "),
                (_, false) => body.push_str(" + "),
            }
            let mono = ct.monomial();
            if mag.is_one() {
                body.push_str(&mono);
            } else if mono == "1" {
                body.push_str(&mag.to_string());
            } else {
                body.push_str(&format!("{mag}*{mono}"));
            }
        }
        if den.is_one() {
            f.write_str(&body)
        } else {
            write!(f, "(1/{den})*({body})")
        }
    }
}

/// `Z(Γ) = (1/|Γ|) Σ s(γ)`.
pub fn group_cycle_index(group: &PermutationGroup) -> CycleIndex {
    let mut counts: BTreeMap<CycleType, u64> = BTreeMap::new();
    for g in group.elements() {
        *counts.entry(g.cycle_type()).or_insert(0) += 1;
    }
    let order = group.order() as u64;
    CycleIndex::from_terms(
        group.degree(),
        counts.into_iter().map(|(ct, k)| (ct, rational(k, order))),
    )
    .expect("cycle types share the group degree")
    .with_denominator(order)
}

/// Cycle index of the cyclic group `C_d[E_blocks]` acting on `d·blocks`
/// points, alongside `fixed_points` points it fixes:
/// `(1/d) Σ_{k|d} φ(k) s_1^{fixed} s_k^{d·blocks/k}`.
pub fn cyclic_cycle_index(d: u64, blocks: u64, fixed_points: usize) -> Result<CycleIndex> {
    if d == 0 || blocks == 0 {
        return Err(Error::ZeroArgument {
            what: "cyclic_cycle_index",
        });
    }
    let moved = d * blocks;
    let mut z = CycleIndex::zero(fixed_points + moved as usize);
    for k in arith::divisors(d)? {
        let ct = CycleType::fixed_plus_uniform(fixed_points, k as usize, (moved / k) as usize);
        z.add_term(ct, rational(arith::euler_phi(k)?, d))?;
    }
    Ok(z.with_denominator(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::closure;
    use crate::perm::Permutation;

    fn ct(parts: &[(usize, usize)]) -> CycleType {
        CycleType::from_parts(parts.iter().copied()).unwrap()
    }

    fn poly(den: i64, terms: &[(&[(usize, usize)], i64)]) -> CycleIndex {
        let degree = ct(terms[0].0).degree();
        CycleIndex::from_terms(
            degree,
            terms.iter().map(|(p, c)| (ct(p), rational(*c, den))),
        )
        .unwrap()
    }

    fn z_k4() -> CycleIndex {
        poly(24, &[(&[(1, 4)], 16), (&[(1, 1), (3, 1)], 32), (&[(2, 2)], 12), (&[(4, 1)], 12)])
            .with_denominator(24)
    }

    fn gen(n: usize, cycles: &[&str]) -> PermutationGroup {
        let gens: Vec<_> = cycles.iter().map(|c| Permutation::parse(c, n).unwrap()).collect();
        closure(n, &gens).unwrap()
    }

    #[test]
    fn render_k4() {
        assert_eq!(
            z_k4().to_string(),
            "(1/24)*(16*s1^4 + 32*s1*s3 + 12*s2^2 + 12*s4)"
        );
        let w = poly(1, &[(&[(1, 5)], 12), (&[(1, 1), (2, 2)], 3), (&[(1, 1), (4, 1)], 1)]);
        assert_eq!(w.to_string(), "12*s1^5 + 3*s1*s2^2 + s1*s4");
        assert_eq!(CycleIndex::zero(3).to_string(), "0");
    }

    #[test]
    fn add_and_scale() {
        let a = z_k4();
        assert_eq!(a.add(&CycleIndex::zero(4)).unwrap(), a);
        let s = CycleIndex::monomial(ct(&[(1, 4)]), int(1));
        let half = s.scale(&rational(1, 2));
        assert_eq!(half.add(&half).unwrap(), s);
        assert!(a.sub(&a).unwrap().is_zero());
        assert!(a.add(&CycleIndex::zero(5)).is_err());
    }

    #[test]
    fn decomposition_of_k4_sums() {
        let a4 = group_cycle_index(&gen(4, &["(1 2 3)", "(2 3 4)"]));
        let c4 = group_cycle_index(&gen(4, &["(1 2 3 4)"]));
        let c3 = group_cycle_index(&gen(4, &["(2 3 4)"]));
        assert_eq!(a4.to_string(), "(1/12)*(s1^4 + 8*s1*s3 + 3*s2^2)");
        assert_eq!(c4.to_string(), "(1/4)*(s1^4 + s2^2 + 2*s4)");
        assert_eq!(c3.to_string(), "(1/3)*(s1^4 + 2*s1*s3)");
        assert_eq!(a4.add(&c4).unwrap().add(&c3).unwrap(), z_k4());
    }

    #[test]
    fn group_indexes() {
        assert_eq!(group_cycle_index(&PermutationGroup::trivial(4)).to_string(), "s1^4");
        let f = group_cycle_index(&gen(5, &["(1 2 3 4 5)", "(2 3 5 4)"]));
        assert_eq!(f.to_string(), "(1/20)*(s1^5 + 5*s1*s2^2 + 10*s1*s4 + 4*s5)");
        assert_eq!(f.evaluate_at_ones(), int(1));
    }

    #[test]
    fn cyclic_indexes() {
        assert_eq!(
            cyclic_cycle_index(4, 1, 0).unwrap().to_string(),
            "(1/4)*(s1^4 + s2^2 + 2*s4)"
        );
        assert_eq!(
            cyclic_cycle_index(3, 1, 1).unwrap().to_string(),
            "(1/3)*(s1^4 + 2*s1*s3)"
        );
        assert_eq!(cyclic_cycle_index(1, 6, 0).unwrap().to_string(), "s1^6");
        for d in 1..=12 {
            for blocks in 1..=3 {
                let z = cyclic_cycle_index(d, blocks, 1).unwrap();
                assert_eq!(z.evaluate_at_ones(), int(1));
            }
        }
    }

    #[test]
    fn evaluations() {
        assert_eq!(z_k4().evaluate_at_ones(), int(3));
        let c4 = cyclic_cycle_index(4, 1, 0).unwrap();
        assert_eq!(c4.substitute_constant(1), int(1));
        assert_eq!(c4.substitute_constant(6), int(336));
        let c3 = cyclic_cycle_index(3, 1, 0).unwrap();
        assert_eq!(c3.substitute_constant(2), int(4));
    }

    #[test]
    fn json_round_trip() {
        let z = z_k4();
        let json = serde_json::to_string(&z.to_json().unwrap()).unwrap();
        assert!(json.starts_with(r#"[{"cycles":[[1,4]],"num":2,"den":3}"#));
        let terms: Vec<JsonTerm> = serde_json::from_str(&json).unwrap();
        assert_eq!(CycleIndex::from_json(&terms, None).unwrap(), z);
        assert!(CycleIndex::from_json(&[], None).is_err());
        assert!(CycleIndex::from_json(&[], Some(3)).unwrap().is_zero());
    }
}
