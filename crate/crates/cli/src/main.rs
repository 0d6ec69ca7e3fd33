use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use imbedsum::closed_forms::Family;
use imbedsum::decomposition::{
    candidate_filter_report, decompose_all, k5_catalog, load_catalog, profile, subgroup_candidates,
    CandidateGroup, Exclusion, MAX_SUBGROUP_PARENT,
};
use imbedsum::graph::GraphJson;
use imbedsum::oracle::{
    burnside_scan, census_to_csv, census_to_json, census_with, decomposition_report, equivariant_map,
    face_trace, CensusLimits, MapCensus,
};
use imbedsum::polya::parse_monomial;
use imbedsum::series::{substitute, FigureSeries};
use imbedsum::tables::{compare, compute, parse_range, reference, TableId};
use imbedsum::{
    imbedding_sum_with_group, CycleIndex, Error, Graph, Permutation, PermutationGroup, RotationSystem,
    TypeDomain,
};

const EXIT_PRECONDITION: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_VERIFICATION: u8 = 4;

/// Exact imbedding sums, symmetry profiles and map censuses.
#[derive(Parser, Debug)]
#[command(name = "imbedsum", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Largest number of rotation systems a census may enumerate.
    #[arg(long, env = "IMBEDSUM_MAP_CAP", default_value_t = 1_000_000, global = true)]
    map_cap: u128,

    /// Largest automorphism group a census may act with.
    #[arg(long, default_value_t = 100_000, global = true)]
    group_cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the imbedding sum Z(G) and Z(G;1).
    Zsum(GraphSource),
    /// Substitute a figure series into Z(G).
    Polya {
        #[command(flatten)]
        source: GraphSource,
        /// Comma-separated single-letter figure names, one weight axis each.
        #[arg(long, default_value = "b,w")]
        figures: String,
        /// Print only the coefficient of this monomial, e.g. `b^2w^2`.
        #[arg(long)]
        extract: Option<String>,
    },
    /// Unlabeled and labeled d-fold symmetry counts for a cyclic family.
    Profile {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: u64,
    },
    /// Reproduce one of the symmetry tables and list cells that differ from
    /// the reference values.
    Tables {
        /// uWheel, lWheel, uBouquet, lBouquet, uBndirect, lBndirect, uK*n or lK*n.
        #[arg(long)]
        which: TableId,
        /// Column range such as `4..8`; defaults to the reference columns.
        #[arg(long)]
        n: Option<String>,
    },
    /// Decompose Z(G) into candidate group cycle indexes.
    Decompose {
        #[command(flatten)]
        source: GraphSource,
        /// JSON catalog; `k5` selects the built-in K_5 list. Without it every
        /// subgroup of a small automorphism group is a candidate.
        #[arg(long)]
        catalog: Option<String>,
        /// Lower bound such as `C5>=1`; repeatable.
        #[arg(long = "require")]
        require: Vec<String>,
    },
    /// Enumerate every map, partition into classes and check invariants.
    Oracle {
        #[command(flatten)]
        source: GraphSource,
        /// Exit with status 4 when any invariant fails.
        #[arg(long)]
        verify: bool,
    },
    /// Face sizes and genus of one map.
    Faces {
        #[command(flatten)]
        source: GraphSource,
        /// Automorphism in cycle notation; seeds are spread along its orbits.
        #[arg(long)]
        equivariant: Option<String>,
        /// Rotation at a vertex, `v:(a b c)`, 1-based; repeatable.
        #[arg(long = "seed")]
        seeds: Vec<String>,
    },
}

#[derive(Args, Debug)]
struct GraphSource {
    /// complete, wheel, bouquet, directed_bouquet or rooted_complete.
    #[arg(long, requires = "n", conflicts_with = "graph")]
    family: Option<Family>,
    #[arg(long)]
    n: Option<u64>,
    /// Graph file: JSON `{vertices, edges, colors}` or an edge list.
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Lib(Error),
    Usage(String),
    Failed(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Lib(Error::CapExceeded { .. }) => EXIT_CAP,
            CliError::Lib(Error::Verification(_)) | CliError::Failed(_) => EXIT_VERIFICATION,
            _ => EXIT_PRECONDITION,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Usage(m) | CliError::Failed(m) => f.write_str(m),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

struct Loaded {
    graph: Graph,
    family: Option<(Family, u64)>,
    domain: TypeDomain,
}

impl GraphSource {
    fn load(&self) -> CliResult<Loaded> {
        match (&self.family, self.n, &self.graph) {
            (Some(f), Some(n), None) => {
                let graph = f.graph(n)?;
                let domain = f.domain(&graph)?;
                Ok(Loaded {
                    graph,
                    family: Some((*f, n)),
                    domain,
                })
            }
            (None, _, Some(path)) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                let graph = if text.trim_start().starts_with('{') {
                    let j: GraphJson =
                        serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
                    Graph::from_json(&j)?
                } else {
                    Graph::parse_edge_list(&text)?
                };
                Ok(Loaded {
                    graph,
                    family: None,
                    domain: TypeDomain::Vertices,
                })
            }
            _ => Err(CliError::Usage(
                "give either --family with --n, or --graph".into(),
            )),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: &Cli) -> CliResult<String> {
    let limits = CensusLimits {
        map_cap: cli.map_cap,
        group_cap: cli.group_cap,
    };
    if limits.map_cap == 0 || limits.group_cap == 0 {
        return Err(CliError::Usage("caps must be positive".into()));
    }
    match &cli.command {
        Command::Zsum(source) => zsum(source, cli.format),
        Command::Polya {
            source,
            figures,
            extract,
        } => polya(source, figures, extract.as_deref(), cli.format),
        Command::Profile { family, n } => profile_cmd(*family, *n, cli.format),
        Command::Tables { which, n } => tables(*which, n.as_deref(), cli.format),
        Command::Decompose {
            source,
            catalog,
            require,
        } => decompose(source, catalog.as_deref(), require, cli.format),
        Command::Oracle { source, verify } => oracle(source, *verify, limits, cli.format),
        Command::Faces {
            source,
            equivariant,
            seeds,
        } => faces(source, equivariant.as_deref(), seeds, cli.format),
    }
}

/// Engine result, closed form, or both after checking they agree.
fn imbedding_sum_for(loaded: &Loaded) -> CliResult<(CycleIndex, &'static str)> {
    let closed = match loaded.family {
        // K_1* has no closed form; the engine alone covers it.
        Some((Family::RootedComplete, 1)) | None => None,
        Some((f, n)) => Some(f.cycle_index(n)?),
    };
    let engine = loaded
        .graph
        .automorphism_group()
        .and_then(|group| imbedding_sum_with_group(&loaded.graph, &group, &loaded.domain));
    match (engine, closed) {
        (Ok(z), Some(c)) if z == c => Ok((z, "engine, closed form")),
        (Ok(z), Some(c)) => Err(CliError::Failed(format!(
            "engine {z} differs from closed form {c}"
        ))),
        (Ok(z), None) => Ok((z, "engine")),
        (Err(Error::CapExceeded { .. }), Some(c)) => Ok((c, "closed form")),
        (Err(e), _) => Err(e.into()),
    }
}

fn zsum(source: &GraphSource, format: Format) -> CliResult<String> {
    let loaded = source.load()?;
    let (z, via) = imbedding_sum_for(&loaded)?;
    let total = z.evaluate_at_ones();
    Ok(match format {
        Format::Text => format!("Z(G) = {z}\nZ(G;1) = {total}\nsource: {via}\n"),
        Format::Json => pretty(&json!({
            "cycle_index": z.to_json()?,
            "text": z.to_string(),
            "total": total.to_string(),
            "source": via,
        })),
        Format::Csv => {
            let mut out = String::from("monomial,num,den\n");
            for (ct, c) in z.terms() {
                out += &format!("{},{},{}\n", ct.monomial(), c.numer(), c.denom());
            }
            out
        }
    })
}

fn polya(source: &GraphSource, figures: &str, extract: Option<&str>, format: Format) -> CliResult<String> {
    let loaded = source.load()?;
    let names: Vec<String> = figures.split(',').map(|s| s.trim().to_string()).collect();
    if names.iter().any(|n| n.chars().count() != 1 || !n.chars().all(char::is_alphabetic)) {
        return Err(CliError::Usage("figure names must be single letters".into()));
    }
    let (z, _) = imbedding_sum_for(&loaded)?;
    let series = substitute(&z, &FigureSeries::colors(names.len()));
    let terms = series.integer_terms()?;
    if let Some(query) = extract {
        let exps = parse_monomial(query, &names)?;
        let value = terms.get(&exps).cloned().unwrap_or_default();
        return Ok(match format {
            Format::Json => pretty(&json!({ "monomial": query, "coefficient": value.to_string() })),
            Format::Csv => format!("monomial,coefficient\n{query},{value}\n"),
            Format::Text => format!("{value}\n"),
        });
    }
    let vars: Vec<&str> = names.iter().map(String::as_str).collect();
    Ok(match format {
        Format::Text => format!("{}\n", series.render(&vars)),
        Format::Json => {
            let list: Vec<Value> = terms
                .iter()
                .rev()
                .map(|(e, c)| json!({ "exponents": e, "coefficient": c.to_string() }))
                .collect();
            pretty(&json!({ "figures": names, "terms": list }))
        }
        Format::Csv => {
            let mut out = format!("{},coefficient\n", names.join(","));
            for (e, c) in terms.iter().rev() {
                let cols: Vec<String> = e.iter().map(u32::to_string).collect();
                out += &format!("{},{c}\n", cols.join(","));
            }
            out
        }
    })
}

fn profile_cmd(family: Family, n: u64, format: Format) -> CliResult<String> {
    let p = profile(family, n)?;
    Ok(match format {
        Format::Text => {
            let mut out = format!("{family} n={n}, |Aut| = {}\n", p.group_order);
            out += &format!("{:>4} {:>16} {:>16} {:>18}\n", "d", "unlabeled", "labeled/class", "labeled");
            for (d, e) in &p.entries {
                out += &format!(
                    "{d:>4} {:>16} {:>16} {:>18}\n",
                    e.unlabeled, e.labeled_per_class, e.labeled_total
                );
            }
            out += &format!("{:>4} {:>16} {:>16} {:>18}\n", "sum", p.unlabeled_total(), "", p.labeled_total());
            out
        }
        Format::Csv => {
            let mut out = String::from("d,unlabeled,labeled_per_class,labeled\n");
            for (d, e) in &p.entries {
                out += &format!("{d},{},{},{}\n", e.unlabeled, e.labeled_per_class, e.labeled_total);
            }
            out
        }
        Format::Json => {
            let entries: Vec<Value> = p
                .entries
                .iter()
                .map(|(d, e)| {
                    json!({
                        "d": d,
                        "unlabeled": e.unlabeled.to_string(),
                        "labeled_per_class": e.labeled_per_class.to_string(),
                        "labeled": e.labeled_total.to_string(),
                    })
                })
                .collect();
            pretty(&json!({
                "family": family.name(),
                "n": n,
                "group_order": p.group_order.to_string(),
                "entries": entries,
                "unlabeled_total": p.unlabeled_total().to_string(),
                "labeled_total": p.labeled_total().to_string(),
            }))
        }
    })
}

fn tables(which: TableId, range: Option<&str>, format: Format) -> CliResult<String> {
    let ns = match range {
        Some(r) => parse_range(r)?,
        None => which.reference_columns(),
    };
    let table = compute(which, &ns)?;
    let diffs = compare(&table, &reference(which));
    Ok(match format {
        Format::Json => {
            let mut v = table.to_json();
            v["differences"] = diffs
                .iter()
                .map(|d| {
                    json!({
                        "n": d.n,
                        "row": d.row.map_or(Value::from("Total"), Value::from),
                        "reference": d.reference.to_string(),
                        "computed": d.computed.as_ref().map(ToString::to_string),
                    })
                })
                .collect();
            pretty(&v)
        }
        Format::Csv => {
            let mut out = table.to_csv();
            if !diffs.is_empty() {
                out += "\n# differences from reference values\n";
                for d in &diffs {
                    out += &format!("# {d}\n");
                }
            }
            out
        }
        Format::Text => {
            let mut out = table.to_text();
            if !diffs.is_empty() {
                out += "\ndifferences from reference values:\n";
                for d in &diffs {
                    out += &format!("  {d}\n");
                }
            }
            out
        }
    })
}

fn parse_requirement(text: &str) -> CliResult<(String, u64)> {
    let (name, min) = text
        .split_once(">=")
        .ok_or_else(|| CliError::Usage(format!("requirement {text:?} is not NAME>=K")))?;
    let min = min
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("bad bound in {text:?}")))?;
    Ok((name.trim().to_string(), min))
}

fn decompose(
    source: &GraphSource,
    catalog: Option<&str>,
    require: &[String],
    format: Format,
) -> CliResult<String> {
    let loaded = source.load()?;
    let g = &loaded.graph;
    let (z, _) = imbedding_sum_for(&loaded)?;
    if z.degree() != g.vertex_count() {
        return Err(CliError::Usage("decompose works on vertex cycle types only".into()));
    }
    let candidates: Vec<CandidateGroup> = match catalog {
        Some("k5") => k5_catalog()?,
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{path}: {e}")))?;
            load_catalog(&text, g.vertex_count())?
        }
        None => {
            let group = g.automorphism_group()?;
            if group.order() > MAX_SUBGROUP_PARENT {
                return Err(CliError::Usage(format!(
                    "automorphism group of order {} is too large for subgroup enumeration; pass --catalog",
                    group.order()
                )));
            }
            subgroup_candidates(&group)?
        }
    };
    let lower: BTreeMap<String, u64> = require
        .iter()
        .map(|r| parse_requirement(r))
        .collect::<CliResult<_>>()?;
    let (kept, dropped) = candidate_filter_report(&z, &candidates, g);
    if kept.is_empty() {
        return Err(CliError::Usage("every candidate was excluded".into()));
    }
    let solutions = decompose_all(&z, &kept, &lower)?;
    let names: Vec<&str> = kept.iter().map(|c| c.name.as_str()).collect();
    Ok(match format {
        Format::Text => {
            let mut out = String::new();
            for (c, why) in &dropped {
                let reasons: Vec<String> = why.iter().map(describe_exclusion).collect();
                out += &format!("excluded {}: {}\n", c.name, reasons.join("; "));
            }
            for c in &kept {
                out += &format!("candidate {}: order {}, {}\n", c.name, c.order()?, c.cycle_index);
            }
            out += &format!("{} solution(s)\n", solutions.len());
            for s in &solutions {
                let parts: Vec<String> = names.iter().zip(s).map(|(n, x)| format!("{n}={x}")).collect();
                out += &format!("  {}\n", parts.join(" "));
            }
            out
        }
        Format::Csv => {
            let mut out = format!("{}\n", names.join(","));
            for s in &solutions {
                let cols: Vec<String> = s.iter().map(u64::to_string).collect();
                out += &format!("{}\n", cols.join(","));
            }
            out
        }
        Format::Json => {
            let excluded: Vec<Value> = dropped
                .iter()
                .map(|(c, why)| {
                    json!({ "name": c.name, "reasons": why.iter().map(describe_exclusion).collect::<Vec<_>>() })
                })
                .collect();
            let sols: Vec<Value> = solutions
                .iter()
                .map(|s| {
                    let m: serde_json::Map<String, Value> =
                        names.iter().zip(s).map(|(n, x)| (n.to_string(), Value::from(*x))).collect();
                    Value::Object(m)
                })
                .collect();
            pretty(&json!({ "candidates": names, "excluded": excluded, "solutions": sols }))
        }
    })
}

fn describe_exclusion(e: &Exclusion) -> String {
    match e {
        Exclusion::OrderDoesNotDivide { order, bound } => format!("order {order} does not divide {bound}"),
        Exclusion::FixesAdjacentPair { element } => format!("{element} fixes two adjacent vertices"),
        Exclusion::MonomialAbsent { monomial } => format!("cycle type {monomial} is absent from Z(G)"),
        Exclusion::WrongDegree => "wrong degree".into(),
    }
}

fn oracle(source: &GraphSource, verify: bool, limits: CensusLimits, format: Format) -> CliResult<String> {
    let loaded = source.load()?;
    let g = &loaded.graph;
    let census = census_with(g, &loaded.domain, limits)?;
    let mut failures = Vec::new();
    let mut checks = Vec::new();
    if verify {
        let report = decomposition_report(g, &loaded.domain, limits)?;
        if report.is_exact() {
            checks.push("Z(G) equals the sum of stabilizer cycle indexes".to_string());
        } else {
            for (ct, r) in &report.residuals {
                failures.push(format!("residual {r} at {}", ct.monomial()));
            }
        }
        let orbit_total: u128 = census.classes.iter().map(|c| c.orbit_size as u128).sum();
        if orbit_total == census.map_count {
            checks.push(format!("orbit sizes sum to {} maps", census.map_count));
        } else {
            failures.push(format!("orbit sizes sum to {orbit_total}, not {}", census.map_count));
        }
        let order = census.group.order();
        if census.classes.iter().all(|c| c.orbit_size * c.stabilizer.order() == order) {
            checks.push("orbit size times stabilizer order equals |Aut| for every class".to_string());
        } else {
            failures.push("orbit-stabilizer product fails".to_string());
        }
        match burnside_scan(g, limits).and_then(|s| s.class_count()) {
            Ok(k) if k == census.classes.len() as u128 => {
                checks.push(format!("Burnside count {k} equals the class count"))
            }
            Ok(k) => failures.push(format!("Burnside count {k} differs from {}", census.classes.len())),
            Err(e) => failures.push(format!("Burnside scan: {e}")),
        }
        if let Some((f, n)) = loaded.family {
            if let Ok(closed) = f.cycle_index(n) {
                if closed == report.stabilizer_sum {
                    checks.push("closed form equals the census sum".to_string());
                } else {
                    failures.push("closed form differs from the census sum".to_string());
                }
            }
        }
    }
    let out = render_census(&census, &checks, &failures, format);
    if failures.is_empty() {
        Ok(out)
    } else {
        print!("{out}");
        Err(CliError::Failed(format!("{} check(s) failed", failures.len())))
    }
}

fn render_census(census: &MapCensus, checks: &[String], failures: &[String], format: Format) -> String {
    match format {
        Format::Csv => census_to_csv(census),
        Format::Json => pretty(&json!({
            "maps": census.map_count.to_string(),
            "group_order": census.group.order(),
            "classes": census_to_json(census),
            "passed": checks,
            "failed": failures,
        })),
        Format::Text => {
            let mut out = format!(
                "{} maps, |Aut| = {}, {} classes\n",
                census.map_count,
                census.group.order(),
                census.classes.len()
            );
            out += "class  orbit  |stab|  genus  regions  stabilizer cycle index\n";
            for (i, c) in census.classes.iter().enumerate() {
                let regions: Vec<String> = c.regions.iter().map(usize::to_string).collect();
                out += &format!(
                    "{:>5} {:>6} {:>7} {:>6}  {}  {}\n",
                    i + 1,
                    c.orbit_size,
                    c.stabilizer.order(),
                    c.genus,
                    regions.join(","),
                    c.stabilizer_index
                );
            }
            let hist: Vec<String> = census.genus_histogram().iter().map(|(g, k)| format!("{g}:{k}")).collect();
            out += &format!("genus histogram {{{}}}\n", hist.join(", "));
            let orders: Vec<String> =
                census.stabilizer_orders().iter().map(|(o, k)| format!("{o}:{k}")).collect();
            out += &format!("stabilizer orders {{{}}}\n", orders.join(", "));
            for c in checks {
                out += &format!("pass: {c}\n");
            }
            for f in failures {
                out += &format!("FAIL: {f}\n");
            }
            out
        }
    }
}

/// `v:(a b c)` with 1-based labels into a 0-based vertex and rotation.
fn parse_seed(text: &str) -> CliResult<(usize, Vec<usize>)> {
    let bad = || CliError::Usage(format!("seed {text:?} is not v:(a b c)"));
    let (v, cycle) = text.split_once(':').ok_or_else(bad)?;
    let v: usize = v.trim().parse().map_err(|_| bad())?;
    let body = cycle
        .trim()
        .strip_prefix('(')
        .and_then(|c| c.strip_suffix(')'))
        .ok_or_else(bad)?;
    let rot = body
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().ok().filter(|&x| x >= 1).map(|x| x - 1))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(bad)?;
    if v == 0 {
        return Err(bad());
    }
    Ok((v - 1, rot))
}

fn faces(source: &GraphSource, equivariant: Option<&str>, seeds: &[String], format: Format) -> CliResult<String> {
    let loaded = source.load()?;
    let g = &loaded.graph;
    let n = g.vertex_count();
    let seeds: BTreeMap<usize, Vec<usize>> = seeds.iter().map(|s| parse_seed(s)).collect::<CliResult<_>>()?;
    let gamma = match equivariant {
        Some(text) => Permutation::parse(text, n)?,
        None => Permutation::identity(n),
    };
    let m: RotationSystem = equivariant_map(g, &gamma, &seeds)?;
    let trace = face_trace(g, &m)?;
    let group: Option<PermutationGroup> = g.automorphism_group().ok();
    let stabilizer: Option<Vec<Permutation>> = group.map(|grp| {
        grp.elements()
            .iter()
            .filter(|p| m.act(g, p).is_ok_and(|img| img == m))
            .cloned()
            .collect()
    });
    Ok(match format {
        Format::Text => {
            let regions: Vec<String> = trace.regions.iter().map(usize::to_string).collect();
            let mut out = format!("rotation {m}\nregions {}\ngenus {}\n", regions.join(","), trace.genus);
            if let Some(stab) = &stabilizer {
                let elems: Vec<String> = stab.iter().map(ToString::to_string).collect();
                out += &format!("stabilizer order {}: {}\n", stab.len(), elems.join(" "));
            }
            out
        }
        Format::Csv => {
            let regions: Vec<String> = trace.regions.iter().map(usize::to_string).collect();
            let order = stabilizer.as_ref().map_or(String::new(), |s| s.len().to_string());
            format!("regions,genus,stabilizer_order\n{},{},{order}\n", regions.join(" "), trace.genus)
        }
        Format::Json => pretty(&json!({
            "rotation": m,
            "regions": trace.regions,
            "genus": trace.genus,
            "stabilizer": stabilizer.map(|s| s.iter().map(ToString::to_string).collect::<Vec<_>>()),
        })),
    })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}
