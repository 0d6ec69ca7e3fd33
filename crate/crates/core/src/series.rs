//! Figure and configuration counting series over weight variables
//! `w_1, ..., w_n`, and the substitution `s_k -> f(w_1^k, ..., w_n^k)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cycle_index::{int, CycleIndex};
use crate::error::{Error, Result};

/// Exponent tuple `(p_1, ..., p_n)`.
pub type Exponents = Vec<u32>;

/// Counts of figures by weight tuple. All coefficients are nonnegative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FigureSeries {
    arity: usize,
    terms: BTreeMap<Exponents, u64>,
}

impl FigureSeries {
    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (Exponents, u64)>) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != arity {
                return Err(Error::param(format!(
                    "weight tuple {e:?} does not have arity {arity}"
                )));
            }
            if c > 0 {
                *out.entry(e).or_insert(0) += c;
            }
        }
        Ok(FigureSeries { arity, terms: out })
    }

    /// One figure per color, color `i` having unit weight on axis `i`:
    /// `w_1 + w_2 + ... + w_k`.
    pub fn colors(k: usize) -> Self {
        let terms = (0..k).map(|i| {
            let mut e = vec![0; k];
            e[i] = 1;
            (e, 1)
        });
        FigureSeries::from_terms(k, terms).expect("unit vectors have arity k")
    }

    /// `c` weightless figures.
    pub fn constant(c: u64) -> Self {
        FigureSeries::from_terms(0, [(Vec::new(), c)]).expect("arity 0")
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &u64)> {
        self.terms.iter()
    }

    /// Number of figures, `f(1, ..., 1)`.
    pub fn count(&self) -> u64 {
        self.terms.values().sum()
    }

    /// `f(w_1^k, ..., w_n^k)`.
    fn powered(&self, k: u32) -> WeightSeries {
        WeightSeries {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, &c)| (e.iter().map(|p| p * k).collect(), int(c)))
                .collect(),
        }
    }
}

/// Rational coefficients by weight tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSeries {
    arity: usize,
    terms: BTreeMap<Exponents, BigRational>,
}

impl WeightSeries {
    pub fn zero(arity: usize) -> Self {
        WeightSeries {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        let mut s = WeightSeries::zero(arity);
        s.terms.insert(vec![0; arity], BigRational::one());
        s
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add_assign_scaled(&mut self, other: &WeightSeries, q: &BigRational) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c * q);
        }
    }

    pub fn mul(&self, other: &WeightSeries) -> WeightSeries {
        let mut out = WeightSeries::zero(self.arity);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, mut k: usize) -> WeightSeries {
        let mut acc = WeightSeries::one(self.arity);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `[w^exponents]`, zero when absent or of the wrong arity.
    pub fn coefficient(&self, exponents: &[u32]) -> BigRational {
        self.terms
            .get(exponents)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn evaluate_at_ones(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |a, c| a + c)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Integer coefficients, or an error naming the first fractional term.
    pub fn integer_terms(&self) -> Result<BTreeMap<Exponents, BigInt>> {
        self.terms
            .iter()
            .map(|(e, c)| {
                if c.is_integer() && !c.is_negative() {
                    Ok((e.clone(), c.to_integer()))
                } else {
                    Err(Error::NonIntegral(format!("coefficient {c} at {e:?}")))
                }
            })
            .collect()
    }

    /// Renders with the given variable names (one per axis), highest
    /// lexicographic exponent first: `3*b^4 + 4*b^3*w + ...`.
    pub fn render(&self, vars: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(axis, &p)| {
                    let name = vars
                        .get(axis)
                        .map(|s| s.to_string())
                        .unwrap_or_else(|| format!("w{}", axis + 1));
                    if p == 1 {
                        name
                    } else {
                        format!("{name}^{p}")
                    }
                })
                .collect();
            let coef = if mag.is_integer() {
                mag.to_integer().to_string()
            } else {
                format!("({mag})")
            };
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => out.push_str(&coef),
                (false, true) => out.push_str(&mono.join("*")),
                (false, false) => out.push_str(&format!("{coef}*{}", mono.join("*"))),
            }
        }
        out
    }
}

impl fmt::Display for WeightSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&[]))
    }
}

/// Pólya substitution: each `s_k^{j_k}` becomes `f(w_1^k, ..., w_n^k)^{j_k}`.
pub fn substitute(z: &CycleIndex, f: &FigureSeries) -> WeightSeries {
    let mut cache: HashMap<(usize, usize), WeightSeries> = HashMap::new();
    let mut out = WeightSeries::zero(f.arity());
    for (ct, coef) in z.terms() {
        let mut product = WeightSeries::one(f.arity());
        for &(k, j) in ct.parts() {
            let factor = cache
                .entry((k, j))
                .or_insert_with(|| f.powered(k as u32).pow(j));
            product = product.mul(factor);
        }
        out.add_assign_scaled(&product, coef);
    }
    out
}

/// `Z(s_k := c)` for every `k`.
pub fn substitute_constant(z: &CycleIndex, c: u64) -> BigRational {
    z.substitute_constant(c)
}

/// `[w^exponents] s`.
pub fn extract_coefficient(s: &WeightSeries, exponents: &[u32]) -> BigRational {
    s.coefficient(exponents)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle_index::{group_cycle_index, rational};
    use crate::group::{closure, PermutationGroup};
    use crate::perm::{CycleType, Permutation};
    use proptest::prelude::*;

    fn z_k4() -> CycleIndex {
        let ct = |p: &[(usize, usize)]| CycleType::from_parts(p.iter().copied()).unwrap();
        CycleIndex::from_terms(
            4,
            [
                (ct(&[(1, 4)]), rational(16, 24)),
                (ct(&[(1, 1), (3, 1)]), rational(32, 24)),
                (ct(&[(2, 2)]), rational(12, 24)),
                (ct(&[(4, 1)]), rational(12, 24)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn k4_two_colors() {
        let s = substitute(&z_k4(), &FigureSeries::colors(2));
        assert_eq!(s.render(&["b", "w"]), "3*b^4 + 4*b^3*w + 5*b^2*w^2 + 4*b*w^3 + 3*w^4");
        assert_eq!(extract_coefficient(&s, &[2, 2]), int(5));
        assert_eq!(extract_coefficient(&s, &[1, 3]), int(4));
        assert_eq!(extract_coefficient(&s, &[5, 0]), int(0));
    }

    #[test]
    fn constant_figure() {
        let s = substitute(&z_k4(), &FigureSeries::constant(2));
        assert_eq!(s.coefficient(&[]), int(19));
        assert_eq!(substitute_constant(&z_k4(), 2), int(19));
    }

    #[test]
    fn identity_gives_binomials() {
        let z = group_cycle_index(&PermutationGroup::trivial(5));
        let s = substitute(&z, &FigureSeries::colors(2));
        let binom = [1, 5, 10, 10, 5, 1];
        for (i, &b) in binom.iter().enumerate() {
            assert_eq!(s.coefficient(&[5 - i as u32, i as u32]), int(b));
        }
        assert_eq!(s.len(), 6);
    }

    #[test]
    fn figure_arity_checked() {
        assert!(FigureSeries::from_terms(2, [(vec![1], 1)]).is_err());
    }

    fn arb_group() -> impl Strategy<Value = PermutationGroup> {
        (2usize..=5).prop_flat_map(|n| {
            let perm = Just((0..n).collect::<Vec<_>>()).prop_shuffle();
            proptest::collection::vec(perm, 0..3).prop_map(move |gens| {
                let gens: Vec<_> = gens
                    .into_iter()
                    .map(|v| Permutation::from_images(v).unwrap())
                    .collect();
                closure(n, &gens).unwrap()
            })
        })
    }

    fn arb_figure() -> impl Strategy<Value = FigureSeries> {
        (1usize..=3).prop_flat_map(|arity| {
            let tuple = proptest::collection::vec(0u32..3, arity);
            proptest::collection::vec((tuple, 1u64..3), 1..4)
                .prop_map(move |terms| FigureSeries::from_terms(arity, terms).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn polya_series_is_integral(g in arb_group(), f in arb_figure()) {
            let z = group_cycle_index(&g);
            prop_assert_eq!(z.evaluate_at_ones(), int(1));
            let s = substitute(&z, &f);
            prop_assert!(s.integer_terms().is_ok());
        }

        #[test]
        fn ones_evaluation_commutes(g in arb_group(), f in arb_figure()) {
            let z = group_cycle_index(&g);
            let s = substitute(&z, &f);
            prop_assert_eq!(s.evaluate_at_ones(), substitute_constant(&z, f.count()));
        }

        #[test]
        fn two_color_series_is_palindromic(g in arb_group()) {
            let s = substitute(&group_cycle_index(&g), &FigureSeries::colors(2));
            for (e, c) in s.terms() {
                prop_assert_eq!(&s.coefficient(&[e[1], e[0]]), c);
            }
        }
    }
}
