//! Configuration counting series for a single map's symmetry group and for
//! all unlabeled imbeddings of a graph at once.

use num_bigint::BigInt;
use num_traits::One;

use crate::cycle_index::CycleIndex;
use crate::domain::TypeDomain;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::imbedding::imbedding_sum;
use crate::series::{substitute, FigureSeries, WeightSeries};

/// `Z(Γ_M; f)` for a group cycle index `gz`.
pub fn configurations_for_group(gz: &CycleIndex, f: &FigureSeries) -> Result<WeightSeries> {
    let total = gz.evaluate_at_ones();
    if !total.is_one() {
        return Err(Error::NotGroupIndex(total.to_string()));
    }
    let series = substitute(gz, f);
    series.integer_terms()?;
    Ok(series)
}

/// `Z(G; f)`: configurations among all unlabeled imbeddings of `g`.
pub fn configurations_for_graph(g: &Graph, f: &FigureSeries) -> Result<WeightSeries> {
    let z = imbedding_sum(g, &TypeDomain::Vertices)?;
    let series = substitute(&z, f);
    series.integer_terms()?;
    Ok(series)
}

/// Vertex colorings with `colors` interchangeable colors across all
/// unlabeled imbeddings: `Z(G; colors)`.
pub fn color_count(g: &Graph, colors: u64) -> Result<BigInt> {
    if colors == 0 {
        return Err(Error::param("color count needs at least one color"));
    }
    let v = imbedding_sum(g, &TypeDomain::Vertices)?.substitute_constant(colors);
    if !v.is_integer() {
        return Err(Error::NonIntegral(v.to_string()));
    }
    Ok(v.to_integer())
}

/// Parses a monomial such as `b^2w^2`, `b^1 w^4` or `b*w^3` against the
/// variable names `vars`; each name is one weight axis.
pub fn parse_monomial(text: &str, vars: &[String]) -> Result<Vec<u32>> {
    let mut exps = vec![0u32; vars.len()];
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
    let mut chars = cleaned.chars().peekable();
    while let Some(c) = chars.next() {
        let axis = vars
            .iter()
            .position(|v| v.len() == 1 && v.starts_with(c))
            .ok_or_else(|| Error::Parse(format!("unknown variable {c:?} in {text:?}")))?;
        let mut exp = 1u32;
        if chars.peek() == Some(&'^') {
            chars.next();
            let mut digits = String::new();
            while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                digits.push(*d);
                chars.next();
            }
            exp = digits
                .parse()
                .map_err(|_| Error::Parse(format!("missing exponent in {text:?}")))?;
        }
        exps[axis] += exp;
    }
    Ok(exps)
}
