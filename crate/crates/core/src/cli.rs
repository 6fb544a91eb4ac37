//! Command-line front end. Exit codes: 0 success, 1 negative verdict,
//! 2 usage error, 3 runtime or budget error.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use fixedbitset::FixedBitSet;

use crate::balance::Balance;
use crate::ekr::{self, MultipartiteWitness};
use crate::exact::{self, UpperSource};
use crate::formats;
use crate::graph::{vertex_set, Graph};
use crate::kneser::{self, KneserGraph, KneserParams, Regime};
use crate::separators::{self, MinSeparator};
use crate::setsys::{self, choose};
use crate::treedec::{self, TreeDecomposition, Verdict};

#[derive(Parser, Debug)]
#[command(name = "kneser-tw", version, about = "Treewidth toolkit for Kneser graphs")]
struct Cli {
    /// Worker threads for the parallel searches (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    verb: Verb,
}

/// Graph source: a Kneser graph by parameters, or a `.gr` file.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = true)]
struct Source {
    #[arg(long, requires = "k", conflicts_with = "input")]
    n: Option<u32>,
    #[arg(long, requires = "n")]
    k: Option<u32>,
    /// Graph in `.gr` format.
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct Params {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Kind {
    Upper,
    Improved,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Write K(n,k) in `.gr` format.
    Gen {
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact treewidth by subset dynamic programming.
    Tw {
        #[command(flatten)]
        src: Source,
        /// Largest vertex count the exact solver accepts.
        #[arg(long, default_value_t = exact::DEFAULT_VERTEX_LIMIT)]
        cap: usize,
        /// Write the witness decomposition here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lower and upper treewidth bounds.
    Bounds {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a `.td` file against a graph.
    Validate {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_name = "FILE")]
        td: PathBuf,
    },
    /// Build a decomposition of K(n,k) from the explicit constructions.
    Decomp {
        #[command(flatten)]
        params: Params,
        #[arg(long, value_enum, default_value_t = Kind::Upper)]
        kind: Kind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Contract nested bags of a valid decomposition.
    Normalize {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_name = "FILE")]
        td: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check whether a vertex set is a p-separator and split the rest.
    Sep {
        #[command(flatten)]
        src: Source,
        /// 1-indexed vertices, separated by commas or spaces.
        #[arg(long)]
        set: String,
        #[arg(long, default_value = "2/3")]
        p: Balance,
    },
    /// Smallest p-separator by exhaustive search.
    Minsep {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value = "2/3")]
        p: Balance,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, default_value_t = separators::DEFAULT_SEARCH_BUDGET)]
        budget: u64,
    },
    /// Independence number by branch and bound.
    Ekr {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = ekr::DEFAULT_MIS_LIMIT)]
        cap: usize,
    },
    /// Largest |A||B| over cross-intersecting pairs.
    Cross {
        #[command(flatten)]
        params: Params,
        #[arg(long, default_value_t = ekr::DEFAULT_CROSS_LIMIT)]
        cap: usize,
    },
    /// Minimum c-shadow of m a-subsets of [b].
    Shadow {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        c: u32,
        /// Also run the exhaustive search and compare.
        #[arg(long)]
        brute: bool,
        #[arg(long, default_value_t = setsys::DEFAULT_SHADOW_BUDGET)]
        budget: u64,
    },
    /// Search for large balanced multipartite witnesses, or check one.
    Hunt {
        #[command(flatten)]
        params: Params,
        #[arg(long, default_value = "2/3")]
        p: Balance,
        /// Iterations of local search.
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Start from the star split into two classes.
        #[arg(long)]
        seeded: bool,
        /// Verify this witness file instead of searching.
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tables of treewidth values computed by the solvers.
    Report {
        /// 1: bounds for K(n,3); 2: exact values for K(n,2).
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        theorem: u8,
        #[arg(long, default_value_t = 7)]
        nmax: u32,
    },
}

enum Outcome {
    Ok,
    Fail,
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let out = io::stdout();
    let err = io::stderr();
    run(std::env::args_os(), &mut out.lock(), &mut err.lock())
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    if let Some(t) = cli.threads {
        // A second call in the same process fails; the first pool stays.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match dispatch(cli.verb, out, err) {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::Fail) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            3
        }
    }
}

fn kneser_params(n: u32, k: u32) -> Result<KneserParams> {
    Ok(KneserParams::new(n, k)?)
}

fn build(n: u32, k: u32) -> Result<KneserGraph> {
    Ok(kneser::build(kneser_params(n, k)?)?)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

enum Loaded {
    Kneser(KneserGraph),
    File(Graph),
}

impl Loaded {
    fn graph(&self) -> &Graph {
        match self {
            Loaded::Kneser(k) => k.graph(),
            Loaded::File(g) => g,
        }
    }
}

fn load(src: &Source) -> Result<Loaded> {
    match (src.n, src.k, &src.input) {
        (Some(n), Some(k), None) => Ok(Loaded::Kneser(build(n, k)?)),
        (None, None, Some(path)) => {
            let g = formats::parse_graph(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
            Ok(Loaded::File(g))
        }
        _ => bail!("give either --n and --k, or --in"),
    }
}

fn load_td(path: &Path) -> Result<TreeDecomposition> {
    formats::parse_td(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn parse_vertex_list(text: &str, order: usize) -> Result<FixedBitSet> {
    let mut ids = Vec::new();
    for tok in text.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        let v: usize = tok.parse().with_context(|| format!("bad vertex {tok:?}"))?;
        if v == 0 || v > order {
            bail!("vertex {v} is outside 1..={order}");
        }
        ids.push(v - 1);
    }
    Ok(vertex_set(order, ids))
}

fn one_indexed(set: impl IntoIterator<Item = usize>) -> String {
    set.into_iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" ")
}

fn source_name(s: UpperSource) -> &'static str {
    match s {
        UpperSource::MinDegree => "min-degree",
        UpperSource::MinFill => "min-fill",
        UpperSource::Seed => "construction",
    }
}

fn kneser_seed(g: &Loaded) -> Option<TreeDecomposition> {
    match g {
        Loaded::Kneser(k) if k.params().regime() == Regime::General => treedec::kneser_upper_decomposition(k).ok(),
        _ => None,
    }
}

fn dispatch(verb: Verb, out: &mut dyn Write, err: &mut dyn Write) -> Result<Outcome> {
    match verb {
        Verb::Gen { params, out: path } => {
            let g = build(params.n, params.k)?;
            let mut buf = Vec::new();
            kneser::export_graph(&g, &mut buf)?;
            emit(out, path.as_deref(), std::str::from_utf8(&buf)?)?;
            writeln!(err, "K({},{}): {} vertices, {} edges", params.n, params.k, g.order(), g.graph().size())?;
        }
        Verb::Tw { src, cap, out: path } => {
            let g = load(&src)?;
            let r = exact::treewidth_exact(g.graph(), cap)?;
            writeln!(out, "{}", r.upper)?;
            if let (Some(p), Some(td)) = (path, r.witness.as_ref()) {
                emit(out, Some(&p), &formats::td_to_string(td))?;
            }
        }
        Verb::Bounds { src, out: path } => {
            let g = load(&src)?;
            let seed = kneser_seed(&g);
            let b = exact::treewidth_bounds(g.graph(), seed.as_ref());
            writeln!(out, "lower {}", b.lower)?;
            writeln!(out, "upper {}", b.upper)?;
            writeln!(out, "source {}", source_name(b.upper_source))?;
            if let Some(p) = path {
                emit(out, Some(&p), &formats::td_to_string(&b.witness))?;
            }
        }
        Verb::Validate { src, td } => {
            let g = load(&src)?;
            let td = load_td(&td)?;
            match treedec::validate(g.graph(), &td) {
                Verdict::Valid { width } => writeln!(out, "valid width {width}")?,
                Verdict::Invalid(vs) => {
                    writeln!(out, "invalid")?;
                    for v in vs {
                        writeln!(out, "  {v}")?;
                    }
                    return Ok(Outcome::Fail);
                }
            }
        }
        Verb::Decomp { params, kind, out: path } => {
            let g = build(params.n, params.k)?;
            let td = match kind {
                Kind::Upper => treedec::kneser_upper_decomposition(&g)?,
                Kind::Improved => treedec::improved_decomposition(&g, None)?,
            };
            emit(out, path.as_deref(), &formats::td_to_string(&td))?;
            writeln!(err, "width {}", td.width()?)?;
        }
        Verb::Normalize { src, td, out: path } => {
            let g = load(&src)?;
            let td = load_td(&td)?;
            let norm = match treedec::normalize(g.graph(), &td) {
                Ok(t) => t,
                Err(e @ treedec::TdError::Invalid(_)) => {
                    writeln!(out, "invalid: {e}")?;
                    return Ok(Outcome::Fail);
                }
                Err(e) => return Err(e.into()),
            };
            emit(out, path.as_deref(), &formats::td_to_string(&norm))?;
            writeln!(err, "{} bags -> {} bags", td.num_bags(), norm.num_bags())?;
        }
        Verb::Sep { src, set, p } => {
            let g = load(&src)?;
            let x = parse_vertex_list(&set, g.graph().order())?;
            let report = separators::check_separator(g.graph(), &x, p);
            writeln!(out, "order {}", report.order())?;
            let sizes = report.component_sizes();
            writeln!(out, "components {}", sizes.iter().map(usize::to_string).collect::<Vec<_>>().join(" "))?;
            writeln!(out, "separator {}", if report.is_p_separator { "yes" } else { "no" })?;
            if !report.is_p_separator {
                return Ok(Outcome::Fail);
            }
            match separators::bipartition(&report) {
                Ok(bp) => {
                    writeln!(out, "A {}", one_indexed(bp.a.iter().copied()))?;
                    writeln!(out, "B {}", one_indexed(bp.b.iter().copied()))?;
                    writeln!(out, "half-split {}", bp.profile.half_split)?;
                    writeln!(out, "thirds {}", bp.profile.thirds)?;
                }
                Err(e) => writeln!(out, "bipartition: {e}")?,
            }
        }
        Verb::Minsep { src, p, cap, budget } => {
            let g = load(&src)?;
            let cap = cap.unwrap_or(g.graph().order());
            match separators::min_separator_order(g.graph(), p, cap, budget)? {
                MinSeparator::Found { order, witness } => {
                    writeln!(out, "{order}")?;
                    writeln!(out, "witness {}", one_indexed(witness.ones()))?;
                }
                MinSeparator::ExceedsCap { cap } => writeln!(out, "exceeds cap {cap}")?,
            }
        }
        Verb::Ekr { src, cap } => {
            let g = load(&src)?;
            let s = ekr::max_independent_set(g.graph(), cap)?;
            writeln!(out, "{}", s.count_ones(..))?;
            match &g {
                Loaded::Kneser(k) => {
                    let sets: Vec<String> = s.ones().map(|v| k.vertex(v).to_string()).collect();
                    writeln!(out, "{}", sets.join(" "))?;
                }
                Loaded::File(_) => writeln!(out, "{}", one_indexed(s.ones()))?,
            }
        }
        Verb::Cross { params, cap } => {
            let g = build(params.n, params.k)?;
            let opt = ekr::max_cross_product(g.graph(), cap)?;
            writeln!(out, "{}", opt.product)?;
            writeln!(out, "optima {}", opt.optima.len())?;
            let stars = opt.optima.iter().filter(|(a, b)| ekr::star_pair_element(&g, a, b).is_some()).count();
            writeln!(out, "star pairs {stars}")?;
            if opt.optima.iter().any(|(a, b)| !ekr::CrossPair::new(&g, a, b).within_bound()) {
                writeln!(out, "bound violated")?;
                return Ok(Outcome::Fail);
            }
        }
        Verb::Shadow { m, a, b, c, brute, budget } => {
            let fast = setsys::min_shadow_size(m, a, b, c)?;
            writeln!(out, "{fast}")?;
            if brute {
                let slow = setsys::brute_min_shadow(m, a, b, c, budget)?;
                writeln!(out, "brute {slow}")?;
                if slow != fast {
                    return Ok(Outcome::Fail);
                }
            }
        }
        Verb::Hunt { params, p, budget, seed, seeded, input, out: path } => {
            let kp = kneser_params(params.n, params.k)?;
            if let Some(file) = input {
                let classes = formats::parse_witness(&read(&file)?, kp.n)?;
                let v = ekr::verify_multipartite(&MultipartiteWitness { classes, p }, kp)?;
                writeln!(out, "size {}", v.size)?;
                writeln!(out, "bound {}", v.bound)?;
                if let Some((x, y)) = v.disjoint_pair {
                    writeln!(out, "disjoint {x} {y}")?;
                }
                writeln!(out, "largest class {}", v.largest_class)?;
                writeln!(out, "in scope {}", v.thresholds.separator_applies)?;
                if v.violation {
                    writeln!(out, "VIOLATION")?;
                }
                return Ok(if v.is_witness() && !v.violation { Outcome::Ok } else { Outcome::Fail });
            }
            let start = if seeded { Some(ekr::split_star_witness(kp, p)?) } else { None };
            let r = ekr::hunt_multipartite(kp, p, budget, seed, start.as_ref())?;
            writeln!(out, "{}", r.best)?;
            writeln!(out, "bound {}", r.bound)?;
            if !r.in_scope {
                writeln!(err, "note: ({},{}) at p={p} is below the thresholds", kp.n, kp.k)?;
            }
            if let (Some(p), Some(w)) = (path, r.witness.as_ref()) {
                emit(out, Some(&p), &formats::witness_to_string(&w.classes))?;
            }
            if r.alarm {
                writeln!(out, "ALARM")?;
                return Ok(Outcome::Fail);
            }
        }
        Verb::Report { theorem, nmax } => match theorem {
            2 => report_k2(out, nmax)?,
            1 => report_k3(out, nmax)?,
            _ => unreachable!("clap restricts the range"),
        },
    }
    Ok(Outcome::Ok)
}

fn report_k2(out: &mut dyn Write, nmax: u32) -> Result<()> {
    writeln!(out, "n\tvertices\ttw\tmethod")?;
    for n in 1..=nmax {
        let g = build(n, 2)?;
        if g.order() > exact::DEFAULT_VERTEX_LIMIT {
            let b = exact::treewidth_bounds(g.graph(), kneser_seed(&Loaded::Kneser(g.clone())).as_ref());
            writeln!(out, "{n}\t{}\t{}..{}\tbounds", g.order(), b.lower, b.upper)?;
            continue;
        }
        let r = exact::treewidth_exact(g.graph(), exact::DEFAULT_VERTEX_LIMIT)?;
        writeln!(out, "{n}\t{}\t{}\texact", g.order(), r.upper)?;
    }
    Ok(())
}

fn report_k3(out: &mut dyn Write, nmax: u32) -> Result<()> {
    writeln!(out, "n\tvertices\tlower\tupper\tsource\tC(n-1,3)-1\tthreshold")?;
    for n in 7..=nmax {
        let kp = kneser_params(n, 3)?;
        if kp.vertex_count() > exact::MIN_FILL_LIMIT as u64 {
            return Err(anyhow!("K({n},3) has {} vertices, too many for the bounds report", kp.vertex_count()));
        }
        let g = Loaded::Kneser(kneser::build(kp)?);
        let b = exact::treewidth_bounds(g.graph(), kneser_seed(&g).as_ref());
        let t = kneser::threshold_check(kp, Balance::two_thirds());
        writeln!(
            out,
            "{n}\t{}\t{}\t{}\t{}\t{}\t{}",
            g.graph().order(),
            b.lower,
            b.upper,
            source_name(b.upper_source),
            choose(n - 1, 3) - 1,
            if t.formula_applies { "met" } else { "below" }
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("kneser-tw").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn tw_of_k62() {
        let (code, out, _) = call(&["tw", "--n", "6", "--k", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out, "9\n");
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["tw"]).0, 2);
        assert_eq!(call(&["tw", "--n", "5"]).0, 2);
        assert_eq!(call(&["tw", "--n", "5", "--k", "2", "--in", "x.gr"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["sep", "--n", "5", "--k", "2", "--set", "1", "--p", "1/2"]).0, 2);
        assert_eq!(call(&["report", "--theorem", "4"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn runtime_errors_exit_three() {
        let (code, _, err) = call(&["tw", "--n", "8", "--k", "2"]);
        assert_eq!(code, 3);
        assert!(err.contains("28 vertices"));
    }

    #[test]
    fn report_k2_table() {
        let (code, out, _) = call(&["report", "--theorem", "2", "--nmax", "6"]);
        assert_eq!(code, 0);
        let tws: Vec<&str> = out.lines().skip(1).map(|l| l.split('\t').nth(2).unwrap()).collect();
        assert_eq!(tws, ["0", "0", "0", "1", "4", "9"]);
    }
}
