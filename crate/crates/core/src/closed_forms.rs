//! Explicit imbedding-sum formulas for the complete, wheel, bouquet,
//! directed-bouquet and vertex-rooted complete families.
//!
//! Every sum walks the divisors in increasing order in exact arithmetic. The
//! engine in [`crate::imbedding`] is the cross-check for all of them.

use num_bigint::BigInt;
use num_rational::BigRational;

use std::fmt;
use std::str::FromStr;

use crate::arith::{divisors, euler_phi, factorial, pow};
use crate::cycle_index::CycleIndex;
use crate::domain::{loop_projection, TypeDomain};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::CycleType;

/// The graph families with explicit imbedding sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Complete,
    Wheel,
    Bouquet,
    DirectedBouquet,
    RootedComplete,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Complete,
        Family::Wheel,
        Family::Bouquet,
        Family::DirectedBouquet,
        Family::RootedComplete,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Complete => "complete",
            Family::Wheel => "wheel",
            Family::Bouquet => "bouquet",
            Family::DirectedBouquet => "directed_bouquet",
            Family::RootedComplete => "rooted_complete",
        }
    }

    /// Closed-form imbedding sum of the `n`-th member.
    pub fn cycle_index(self, n: u64) -> Result<CycleIndex> {
        match self {
            Family::Complete => z_complete(n),
            Family::Wheel => z_wheel(n),
            Family::Bouquet => z_bouquet(n),
            Family::DirectedBouquet => z_directed_bouquet(n),
            Family::RootedComplete => z_rooted_complete(n),
        }
    }

    /// Concrete model graph: `K_n`, `W_{n+1}` with hub 0, the subdivided
    /// bouquets, or `K_n` rooted at vertex 0.
    pub fn graph(self, n: u64) -> Result<Graph> {
        let n = usize::try_from(n).map_err(|_| Error::param("family parameter too large"))?;
        match self {
            Family::Complete => Graph::complete(n),
            Family::Wheel => Graph::wheel(n),
            Family::Bouquet => Graph::bouquet_model(n),
            Family::DirectedBouquet => Graph::directed_bouquet_model(n),
            Family::RootedComplete => Graph::rooted(&Graph::complete(n)?, 0),
        }
    }

    /// Domain the closed form records cycle types on: the loops for the
    /// directed bouquet, the vertices otherwise.
    pub fn domain(self, g: &Graph) -> Result<TypeDomain> {
        match self {
            Family::DirectedBouquet => loop_projection(g),
            _ => Ok(TypeDomain::Vertices),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::param(format!("unknown family {s:?}")))
    }
}

fn q(num: num_bigint::BigUint, den: num_bigint::BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn big(n: u64) -> num_bigint::BigUint {
    num_bigint::BigUint::from(n)
}

/// `Z(K_n)`, `n >= 2`:
/// `Σ_{d|n} (n-2)!^{n/d} / (d^{n/d} (n/d)!) s_d^{n/d}
///  + Σ_{d|n-1, d≠1} φ(d) (n-2)!^{(n-1)/d} / (n-1) s_1 s_d^{(n-1)/d}`.
pub fn z_complete(n: u64) -> Result<CycleIndex> {
    if n < 2 {
        return Err(Error::param("z_complete needs n >= 2"));
    }
    let f = factorial(n - 2);
    let mut z = CycleIndex::zero(n as usize);
    for d in divisors(n)? {
        let m = n / d;
        let num = num_traits::pow(f.clone(), m as usize);
        let den = pow(d, m) * factorial(m);
        z.add_term(CycleType::fixed_plus_uniform(0, d as usize, m as usize), q(num, den))?;
    }
    for d in divisors(n - 1)?.into_iter().filter(|&d| d != 1) {
        let m = (n - 1) / d;
        let num = big(euler_phi(d)?) * num_traits::pow(f.clone(), m as usize);
        z.add_term(
            CycleType::fixed_plus_uniform(1, d as usize, m as usize),
            q(num, big(n - 1)),
        )?;
    }
    Ok(z.with_denominator(BigInt::from(factorial(n))))
}

/// `Z(W_{n+1})` for `n >= 4`:
/// `(1/2n) Σ_{d|n} φ(d)²/d (2d)^{n/d} (n/d - 1)! s_1 s_d^{n/d}`, plus
/// `2^{n-3} (n/2 - 1)! s_1 s_2^{n/2}` when `n` is even.
pub fn z_wheel(n: u64) -> Result<CycleIndex> {
    if n < 4 {
        return Err(Error::param("z_wheel needs rim size n >= 4"));
    }
    let mut z = CycleIndex::zero(n as usize + 1);
    for d in divisors(n)? {
        let m = n / d;
        let phi = euler_phi(d)?;
        let num = big(phi * phi) * pow(2 * d, m) * factorial(m - 1);
        z.add_term(
            CycleType::fixed_plus_uniform(1, d as usize, m as usize),
            q(num, big(2 * n * d)),
        )?;
    }
    if n.is_multiple_of(2) {
        let extra = pow(2, n - 3) * factorial(n / 2 - 1);
        z.add_term(
            CycleType::fixed_plus_uniform(1, 2, n as usize / 2),
            q(extra, big(1)),
        )?;
    }
    Ok(z.with_denominator(2 * n))
}

/// `Z(B_n)` on the subdivided model (degree `2n + 1`), `n >= 1`:
/// `(1/2n) Σ_{d|n} φ(d) (2n/d)! d^{n/d} / (2^{n/d} (n/d)!) s_1 s_d^{2n/d}
///  + (1/2n) Σ_{d|n} Σ_{m=0}^{⌊(n-1)/2d⌋} φ(2d) (n/d)! d^m / ((n/d - 2m)! m!) s_1 s_{2d}^{n/d}`.
///
/// Monomials produced by both sums are merged.
pub fn z_bouquet(n: u64) -> Result<CycleIndex> {
    if n < 1 {
        return Err(Error::param("z_bouquet needs n >= 1"));
    }
    let mut z = CycleIndex::zero(2 * n as usize + 1);
    for d in divisors(n)? {
        let m = n / d;
        let num = big(euler_phi(d)?) * factorial(2 * m) * pow(d, m);
        let den = big(2 * n) * pow(2, m) * factorial(m);
        z.add_term(
            CycleType::fixed_plus_uniform(1, d as usize, 2 * m as usize),
            q(num, den),
        )?;
    }
    for d in divisors(n)? {
        let blocks = n / d;
        let phi = big(euler_phi(2 * d)?);
        for m in 0..=(n - 1) / (2 * d) {
            let num = phi.clone() * factorial(blocks) * pow(d, m);
            let den = big(2 * n) * factorial(blocks - 2 * m) * factorial(m);
            z.add_term(
                CycleType::fixed_plus_uniform(1, 2 * d as usize, blocks as usize),
                q(num, den),
            )?;
        }
    }
    Ok(z.with_denominator(BigInt::from(pow(2, n) * factorial(n))))
}

/// `Z` of the directed bouquet with cycle types on its `n` loops:
/// `Σ_{d|n} φ(d) (2n/d)! d^{n/d} / (2n (n/d)!) s_d^{n/d}`.
pub fn z_directed_bouquet(n: u64) -> Result<CycleIndex> {
    if n < 1 {
        return Err(Error::param("z_directed_bouquet needs n >= 1"));
    }
    let mut z = CycleIndex::zero(n as usize);
    for d in divisors(n)? {
        let m = n / d;
        let num = big(euler_phi(d)?) * factorial(2 * m) * pow(d, m);
        let den = big(2 * n) * factorial(m);
        z.add_term(CycleType::fixed_plus_uniform(0, d as usize, m as usize), q(num, den))?;
    }
    Ok(z.with_denominator(BigInt::from(factorial(n))))
}

/// `Z(K_n^*)`, `n >= 2`:
/// `(1/(n-1)) Σ_{d|n-1} φ(d) (n-2)!^{(n-1)/d} s_1 s_d^{(n-1)/d}`.
pub fn z_rooted_complete(n: u64) -> Result<CycleIndex> {
    if n < 2 {
        return Err(Error::param("z_rooted_complete needs n >= 2"));
    }
    let f = factorial(n - 2);
    let mut z = CycleIndex::zero(n as usize);
    for d in divisors(n - 1)? {
        let m = (n - 1) / d;
        let num = big(euler_phi(d)?) * num_traits::pow(f.clone(), m as usize);
        z.add_term(
            CycleType::fixed_plus_uniform(1, d as usize, m as usize),
            q(num, big(n - 1)),
        )?;
    }
    Ok(z.with_denominator(BigInt::from(factorial(n - 1))))
}

/// Ways to root the unlabeled imbeddings of `K_n` at one vertex:
/// `(1/(n-1)) Σ_{d|n-1} φ(d) (n-2)!^{(n-1)/d}`.
pub fn rooted_vertex_count(n: u64) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::param("rooted_vertex_count needs n >= 2"));
    }
    let f = factorial(n - 2);
    let mut sum = num_bigint::BigUint::from(0u32);
    for d in divisors(n - 1)? {
        sum += big(euler_phi(d)?) * num_traits::pow(f.clone(), ((n - 1) / d) as usize);
    }
    let (quot, rem) = num_integer::Integer::div_rem(&sum, &big(n - 1));
    if rem != big(0) {
        return Err(Error::NonIntegral(format!("{sum}/{}", n - 1)));
    }
    Ok(BigInt::from(quot))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle_index::int;
    use crate::imbedding::imbedding_sum;

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("torus".parse::<Family>().is_err());
    }

    #[test]
    fn engine_agrees_on_small_members() {
        for (f, n) in [
            (Family::Complete, 4),
            (Family::Wheel, 4),
            (Family::Bouquet, 2),
            (Family::DirectedBouquet, 3),
            (Family::RootedComplete, 4),
        ] {
            let g = f.graph(n).unwrap();
            let z = imbedding_sum(&g, &f.domain(&g).unwrap()).unwrap();
            assert_eq!(z, f.cycle_index(n).unwrap(), "{f} {n}");
        }
    }

    #[test]
    fn complete_displays() {
        assert_eq!(
            z_complete(4).unwrap().to_string(),
            "(1/24)*(16*s1^4 + 32*s1*s3 + 12*s2^2 + 12*s4)"
        );
        assert_eq!(
            z_complete(5).unwrap().to_string(),
            "(1/120)*(7776*s1^5 + 1080*s1*s2^2 + 360*s1*s4 + 144*s5)"
        );
        assert_eq!(z_complete(2).unwrap().to_string(), "(1/2)*(s1^2 + s2)");
        assert!(z_complete(1).is_err());
    }

    #[test]
    fn wheel_totals() {
        assert_eq!(z_wheel(4).unwrap().to_string(), "12*s1^5 + 3*s1*s2^2 + s1*s4");
        let totals: Vec<_> = (4..=8).map(|n| z_wheel(n).unwrap().evaluate_at_ones()).collect();
        let expected: Vec<_> = [16, 80, 666, 6588, 80886].into_iter().map(int).collect();
        assert_eq!(totals, expected);
        assert!(z_wheel(3).is_err());
    }

    #[test]
    fn bouquet_totals() {
        assert_eq!(
            z_bouquet(2).unwrap().to_string(),
            "(1/8)*(6*s1^5 + 6*s1*s2^2 + 4*s1*s4)"
        );
        let totals: Vec<_> = (1..=6).map(|n| z_bouquet(n).unwrap().evaluate_at_ones()).collect();
        let expected: Vec<_> = [1, 2, 5, 18, 105, 902].into_iter().map(int).collect();
        assert_eq!(totals, expected);
        assert!(z_bouquet(0).is_err());
    }

    #[test]
    fn directed_bouquet_forms() {
        assert_eq!(z_directed_bouquet(1).unwrap().to_string(), "s1");
        assert_eq!(z_directed_bouquet(2).unwrap().to_string(), "3*s1^2 + s2");
        assert_eq!(z_directed_bouquet(4).unwrap().evaluate_at_ones(), int(218));
    }

    #[test]
    fn rooted_totals() {
        assert_eq!(z_rooted_complete(4).unwrap().evaluate_at_ones(), int(4));
        assert_eq!(z_rooted_complete(5).unwrap().evaluate_at_ones(), int(336));
        assert_eq!(z_rooted_complete(6).unwrap().evaluate_at_ones(), int(1592544));
        assert_eq!(rooted_vertex_count(4).unwrap(), BigInt::from(4));
        assert_eq!(rooted_vertex_count(5).unwrap(), BigInt::from(336));
        assert_eq!(rooted_vertex_count(2).unwrap(), BigInt::from(1));
        assert!(rooted_vertex_count(1).is_err());
    }
}
