//! The `folim` command line.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::{Display, Write as _};
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::codec::{
    apply_interpretation, association_violations, depth, forest_decode, forest_encode, interval_to_pd, pd_to_interval,
    pw_decode_direct, pw_encode, pw_encode_randomized, pw_formulas, pw_scheme, PwTree,
};
use crate::families;
use crate::hintikka::{
    estimate_stone_measures, hanf_predict, k_position, local_types, structure_equivalent_d, type_census,
    word_to_string, HintikkaTypeId, StoneMeasureEstimate, TypeLabels, DEFAULT_EF_BUDGET,
};
use crate::logic::{parse_formula, stone_pairing, stone_pairing_mc, Formula};
use crate::major::{annotate_constants, check_epsilon, major_report, reports_to_csv};
use crate::sampler::{build_type_tree, compare_distribution, ModelingNode};
use crate::structures::io::{
    parse_forest, parse_graph, parse_interval_graph, parse_path_decomposition, parse_tree, write_forest, write_graph,
    write_interval_graph, write_path_decomposition, write_tree,
};
use crate::structures::{PlaneCTree, PlaneTree};

#[derive(Debug, Parser)]
#[command(name = "folim", version, about = "First-order limits of plane trees and bounded path-width graphs")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Paths,
    Stars,
    Fans,
    Caterpillars,
    RandomPw,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a tree, forest, interval graph, graph, path-width tree or path decomposition.
    Validate {
        input: PathBuf,
        /// Palette size for forest files.
        #[arg(long)]
        palette: Option<u32>,
        /// Graph to check a path decomposition against.
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Exact Stone pairing of a formula on a tree.
    StonePairing {
        tree: PathBuf,
        formula: String,
        /// Free variables in tuple order (comma separated); default is order of first occurrence.
        #[arg(long, value_delimiter = ',')]
        free: Option<Vec<String>>,
        #[arg(long)]
        decimal: bool,
    },
    /// Monte-Carlo estimate of a Stone pairing.
    StonePairingMc {
        tree: PathBuf,
        formula: String,
        #[arg(long, value_delimiter = ',')]
        free: Option<Vec<String>>,
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Census of local types of every node, as CSV.
    HintikkaCensus {
        tree: PathBuf,
        #[arg(short, long)]
        d: u32,
        #[arg(long)]
        gamma: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Canonical path word from `v` to `w` of length at most `k`.
    KPosition {
        tree: PathBuf,
        v: usize,
        w: usize,
        #[arg(short, long)]
        k: usize,
    },
    /// Whether two trees satisfy the same sentences of quantifier depth `d`.
    EfEquiv {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        d: u32,
        #[arg(long, default_value_t = DEFAULT_EF_BUDGET)]
        budget: u128,
    },
    /// Census comparison of two trees with counts truncated at `gamma`.
    HanfPredict {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        d: u32,
        #[arg(long)]
        gamma: usize,
    },
    /// ε-major nodes and the ε⁻² bound; exits 2 when the bound fails.
    Major {
        #[arg(required = true)]
        trees: Vec<PathBuf>,
        #[arg(long)]
        eps: Ratio<u64>,
        /// CSV report path.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Put major nodes on constants for every tree of a sequence directory.
    Annotate {
        dir: PathBuf,
        #[arg(long)]
        stages: u32,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Encode a colored forest as one plane tree.
    EncodeForest {
        forest: PathBuf,
        #[arg(long)]
        palette: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decode a plane tree back into a colored forest.
    DecodeForest {
        tree: PathBuf,
        #[arg(long)]
        palette: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Encode an interval graph as a path-width tree; exits 2 on a size, depth or association violation.
    EncodePw {
        graph: PathBuf,
        /// Break ties among longest intervals at random with this seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decode a path-width tree into a graph.
    DecodePw {
        tree: PathBuf,
        /// Also evaluate the decoding formulas and exit 2 if they disagree.
        #[arg(long)]
        check_formulas: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the decoding formulas for a palette of the given size.
    PwFormulas {
        #[arg(long)]
        palette_size: usize,
    },
    /// Turn a graph and a path decomposition into an interval graph.
    Pd2iv {
        graph: PathBuf,
        decomposition: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Path decomposition of an interval graph, one bag per segment.
    Iv2pd {
        graph: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write a family of trees (`.sexp`) or interval graphs (`.iv`) into a directory.
    GenFamily {
        family: Family,
        /// Sizes: nodes for trees, spine length for caterpillars, path length for fans, vertices for random-pw.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        legs: usize,
        #[arg(long, default_value_t = 2)]
        width: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        /// Graphs per size for random-pw.
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Discrete and continuous Stone-measure estimates from a sequence directory, as CSV.
    EstimateMeasures {
        dir: PathBuf,
        #[arg(short, long)]
        d: u32,
        #[arg(long, default_value_t = 32)]
        threshold: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Sample nodes of the truncated limit modeling and compare type frequencies with the estimate.
    LimitSample {
        dir: PathBuf,
        #[arg(short, long)]
        d: u32,
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 32)]
        threshold: usize,
        /// Depth of the comparison (below `d`); default `d - 1`.
        #[arg(long)]
        compare_depth: Option<u32>,
        /// CSV of sampled nodes.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Stone pairings of formulas along a sequence directory, as CSV.
    Converge {
        dir: PathBuf,
        #[arg(long = "formula", required = true)]
        formulas: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Bound(String),
}

fn usage<E: Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

type CliResult = Result<(), CliError>;

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            print!("{e}");
            return 0;
        }
        Err(e) => {
            let msg = e.to_string();
            eprintln!("error: {}", msg.trim_start_matches("error: ").trim_end());
            return 1;
        }
    };
    match dispatch(config.command) {
        Ok(()) => 0,
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            1
        }
        Err(CliError::Bound(m)) => {
            eprintln!("error: bound violation: {m}");
            2
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn read_tree(path: &Path) -> Result<PlaneCTree, CliError> {
    parse_tree(&read(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str) -> CliResult {
    let owned;
    let text = if text.ends_with('\n') {
        text
    } else {
        owned = format!("{text}\n");
        &owned
    };
    match output {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// `.sexp` files of a directory, numeric stems in numeric order before others.
fn sequence_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let entries = fs::read_dir(dir).map_err(|e| CliError::Usage(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "sexp"))
        .collect();
    files.sort_by_key(|p| {
        let stem = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        (stem.parse::<u64>().map_or((1, 0), |n| (0, n)), stem)
    });
    if files.is_empty() {
        return Err(CliError::Usage(format!("{}: no .sexp files", dir.display())));
    }
    Ok(files)
}

fn read_sequence(dir: &Path) -> Result<Vec<PlaneCTree>, CliError> {
    sequence_files(dir)?.iter().map(|p| read_tree(p)).collect()
}

/// Exact decimal expansion of `r` rounded half up to `places` digits.
pub fn decimal(r: Ratio<u128>, places: usize) -> String {
    let (n, d) = (*r.numer(), *r.denom());
    let mut int = n / d;
    let mut rem = n % d;
    let mut digits = Vec::with_capacity(places);
    for _ in 0..places {
        match rem.checked_mul(10) {
            Some(x) => {
                digits.push((x / d) as u8);
                rem = x % d;
            }
            None => return format!("{:.*}", places, n as f64 / d as f64),
        }
    }
    if rem >= d - rem {
        let mut i = digits.len();
        loop {
            if i == 0 {
                int += 1;
                break;
            }
            i -= 1;
            if digits[i] == 9 {
                digits[i] = 0;
            } else {
                digits[i] += 1;
                break;
            }
        }
    }
    let mut s = int.to_string();
    if places > 0 {
        s.push('.');
        s.extend(digits.iter().map(|&x| char::from(b'0' + x)));
    }
    s
}

/// Labels types by first occurrence over the nodes of `trees` in order.
fn labels_for(trees: &[&PlaneCTree], d: u32) -> TypeLabels {
    let mut labels = TypeLabels::default();
    for t in trees {
        for ty in local_types(t, d) {
            labels.label(ty);
        }
    }
    labels
}

fn label_of(labels: &mut TypeLabels, ty: HintikkaTypeId) -> String {
    format!("t{}", labels.label(ty))
}

fn dispatch(command: Command) -> CliResult {
    match command {
        Command::Validate { input, palette, graph } => validate(&input, palette, graph.as_deref()),
        Command::StonePairing { tree, formula, free, decimal: dec } => {
            let t = read_tree(&tree)?;
            let f = parse_formula(&formula).map_err(usage)?;
            let r = stone_pairing(&t, &f, free.as_deref()).map_err(usage)?;
            println!("{}", if dec { decimal(r, 12) } else { r.to_string() });
            Ok(())
        }
        Command::StonePairingMc { tree, formula, free, samples, seed } => {
            let t = read_tree(&tree)?;
            let f = parse_formula(&formula).map_err(usage)?;
            let mc = stone_pairing_mc(&t, &f, free.as_deref(), samples, seed).map_err(usage)?;
            println!("{:.6} ± {:.6} ({} samples)", mc.estimate, mc.stderr, mc.samples);
            Ok(())
        }
        Command::HintikkaCensus { tree, d, gamma, output } => {
            let t = read_tree(&tree)?;
            let mut census = type_census(&t, d);
            if let Some(g) = gamma {
                census = census.truncated(g);
            }
            let labels = labels_for(&[&t], d);
            let csv = census.to_csv(&|ty| format!("t{}", labels.get(ty).expect("every type occurs")));
            emit(output.as_deref(), &csv)
        }
        Command::KPosition { tree, v, w, k } => {
            let t = read_tree(&tree)?;
            if v >= t.len() || w >= t.len() {
                return Err(CliError::Usage(format!("node out of range (tree has {} nodes)", t.len())));
            }
            match k_position(t.tree(), v, w, k) {
                Some(word) => println!("{}", word_to_string(&word)),
                None => println!("none"),
            }
            Ok(())
        }
        Command::EfEquiv { a, b, d, budget } => {
            let (s, s2) = (read_tree(&a)?, read_tree(&b)?);
            println!("{}", structure_equivalent_d(&s, &s2, d, budget).map_err(usage)?);
            Ok(())
        }
        Command::HanfPredict { a, b, d, gamma } => {
            let (s, s2) = (read_tree(&a)?, read_tree(&b)?);
            println!("{}", hanf_predict(&s, &s2, d, gamma));
            Ok(())
        }
        Command::Major { trees, eps, output } => major(&trees, eps, output.as_deref()),
        Command::Annotate { dir, stages, output } => {
            let files = sequence_files(&dir)?;
            let seq: Vec<PlaneTree> =
                files.iter().map(|p| read_tree(p).map(|t| t.tree().clone())).collect::<Result<_, _>>()?;
            let ann = annotate_constants(&seq, stages);
            fs::create_dir_all(&output).map_err(usage)?;
            for (p, t) in files.iter().zip(&ann.trees) {
                emit(Some(&output.join(p.file_name().expect("listed file"))), &write_tree(t))?;
            }
            for (i, k) in ann.skipped {
                eprintln!("warning: tree {i} too small for step {k}");
            }
            Ok(())
        }
        Command::EncodeForest { forest, palette, output } => {
            let f = parse_forest(&read(&forest)?, palette).map_err(usage)?;
            emit(output.as_deref(), &write_tree(&forest_encode(&f).into()))
        }
        Command::DecodeForest { tree, palette, output } => {
            let t = read_tree(&tree)?;
            let f = forest_decode(t.tree(), palette).map_err(usage)?;
            if f.trees().is_empty() {
                return emit(output.as_deref(), "(forest)\n");
            }
            emit(output.as_deref(), &write_forest(&f))
        }
        Command::EncodePw { graph, seed, output } => encode_pw(&graph, seed, output.as_deref()),
        Command::DecodePw { tree, check_formulas, output } => {
            let t = PwTree::parse(&read(&tree)?).map_err(usage)?;
            let g = pw_decode_direct(&t).map_err(usage)?;
            if check_formulas {
                let out = apply_interpretation(&pw_scheme(t.palette().len()), &t.to_ctree()).map_err(usage)?;
                let mut edges: Vec<(usize, usize)> = out
                    .relation("edge")
                    .expect("scheme defines edge")
                    .iter()
                    .filter(|e| e[0] < e[1])
                    .map(|e| (e[0], e[1]))
                    .collect();
                edges.sort_unstable();
                if out.domain.len() != g.vertex_count() || edges != g.edges() {
                    return Err(CliError::Bound("decoding formulas disagree with the direct decoder".into()));
                }
            }
            emit(output.as_deref(), &write_graph(&g))
        }
        Command::PwFormulas { palette_size } => {
            if palette_size == 0 || palette_size > crate::codec::MAX_PALETTE {
                return Err(CliError::Usage(format!("palette size must lie in 1..={}", crate::codec::MAX_PALETTE)));
            }
            let f = pw_formulas(palette_size);
            println!("phi0 (x): {}", f.phi0);
            println!("phi_v (x y): {}", f.phi_v);
            println!("phi_e (x y): {}", f.phi_e);
            Ok(())
        }
        Command::Pd2iv { graph, decomposition, output } => {
            let g = parse_graph(&read(&graph)?).map_err(usage)?;
            let pd = parse_path_decomposition(&read(&decomposition)?).map_err(usage)?;
            emit(output.as_deref(), &write_interval_graph(&pd_to_interval(&g, &pd).map_err(usage)?))
        }
        Command::Iv2pd { graph, output } => {
            let h = parse_interval_graph(&read(&graph)?).map_err(usage)?;
            emit(output.as_deref(), &write_path_decomposition(&interval_to_pd(&h)))
        }
        Command::GenFamily { family, sizes, legs, width, density, count, seed, output } => {
            gen_family(family, &sizes, legs, width, density, count, seed, &output)
        }
        Command::EstimateMeasures { dir, d, threshold, output } => {
            let seq = read_sequence(&dir)?;
            let est = estimate_stone_measures(&seq, d, threshold);
            let mut labels = labels_for(&[seq.last().expect("nonempty")], d);
            for ty in est.mass_inconsistencies() {
                eprintln!("warning: type {} has finite count but positive mass", label_of(&mut labels, ty));
            }
            emit(output.as_deref(), &measures_csv(&est, &mut labels))
        }
        Command::LimitSample { dir, d, samples, seed, threshold, compare_depth, output } => {
            limit_sample(&dir, d, samples, seed, threshold, compare_depth, output.as_deref())
        }
        Command::Converge { dir, formulas, output } => converge(&dir, &formulas, output.as_deref()),
    }
}

fn validate(input: &Path, palette: Option<u32>, graph: Option<&Path>) -> CliResult {
    let text = read(input)?;
    let trimmed = text.trim_start();
    let summary = if trimmed.starts_with("(forest") {
        let p = palette.ok_or_else(|| CliError::Usage("forest files need --palette".into()))?;
        let f = parse_forest(&text, p).map_err(usage)?;
        format!("forest with {} trees and {} nodes", f.trees().len(), f.node_count())
    } else if text.contains("ctriple=") {
        let t = PwTree::parse(&text).map_err(usage)?;
        t.validate().map_err(usage)?;
        format!("path-width tree with {} nodes over {} colors", t.len(), t.palette().len())
    } else if trimmed.starts_with('(') {
        let t = parse_tree(&text).map_err(usage)?;
        format!("tree with {} nodes and {} constants", t.len(), t.constants().len())
    } else if trimmed.starts_with("palette") {
        let h = parse_interval_graph(&text).map_err(usage)?;
        format!("interval graph with {} vertices over {} colors", h.len(), h.palette().len())
    } else if trimmed.starts_with("n ") {
        let g = parse_graph(&text).map_err(usage)?;
        format!("graph with {} vertices and {} edges", g.vertex_count(), g.edge_count())
    } else {
        let pd = parse_path_decomposition(&text).map_err(usage)?;
        if let Some(gp) = graph {
            let g = parse_graph(&read(gp)?).map_err(usage)?;
            pd.validate(&g).map_err(usage)?;
        }
        format!("path decomposition with {} bags of width {}", pd.bags().len(), pd.width().map_or(-1, |w| w as i64))
    };
    println!("ok: {summary}");
    Ok(())
}

fn major(trees: &[PathBuf], eps: Ratio<u64>, output: Option<&Path>) -> CliResult {
    check_epsilon(eps).map_err(usage)?;
    let mut reports = Vec::new();
    for (i, p) in trees.iter().enumerate() {
        let t = read_tree(p)?;
        let r = major_report(t.tree(), eps);
        let nodes: Vec<String> = r.nodes.iter().map(ToString::to_string).collect();
        println!(
            "{}: major nodes [{}], bound {}, {}",
            p.display(),
            nodes.join(" "),
            r.bound,
            if r.pass { "pass" } else { "fail" }
        );
        reports.push((i, r));
    }
    if let Some(o) = output {
        emit(Some(o), &reports_to_csv(&reports))?;
    }
    match reports.iter().find(|(_, r)| !r.pass) {
        Some((i, r)) => Err(CliError::Bound(format!("tree {i} has {} majors, bound {}", r.nodes.len(), r.bound))),
        None => Ok(()),
    }
}

fn encode_pw(graph: &Path, seed: Option<u64>, output: Option<&Path>) -> CliResult {
    let h = parse_interval_graph(&read(graph)?).map_err(usage)?;
    let t = match seed {
        Some(s) => pw_encode_randomized(&h, &mut ChaCha8Rng::seed_from_u64(s)),
        None => pw_encode(&h),
    }
    .map_err(usage)?;
    let labels: Vec<u32> = h.vertices().iter().map(|v| v.label).collect();
    emit(output, &t.to_text(Some(&labels)))?;
    let a = h.palette().len();
    if t.len() > a * h.len() + 1 {
        return Err(CliError::Bound(format!("tree has {} nodes, bound {}", t.len(), a * h.len() + 1)));
    }
    if depth(&t) > a {
        return Err(CliError::Bound(format!("tree has depth {}, bound {a}", depth(&t))));
    }
    let bad = association_violations(&h, &t);
    if !bad.is_empty() {
        return Err(CliError::Bound(bad.join("; ")));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn gen_family(
    family: Family,
    sizes: &[usize],
    legs: usize,
    width: usize,
    density: f64,
    count: usize,
    seed: u64,
    output: &Path,
) -> CliResult {
    if sizes.contains(&0) {
        return Err(CliError::Usage("sizes must be positive".into()));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(CliError::Usage("density must lie in [0, 1]".into()));
    }
    fs::create_dir_all(output).map_err(usage)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut i = 0;
    let mut put = |ext: &str, text: String| {
        let p = output.join(format!("{i:04}.{ext}"));
        i += 1;
        emit(Some(&p), &text)
    };
    for &n in sizes {
        match family {
            Family::Paths => put("sexp", write_tree(&families::path(n).into()))?,
            Family::Stars => put("sexp", write_tree(&families::star(n - 1).into()))?,
            Family::Caterpillars => put("sexp", write_tree(&families::caterpillar(n, legs).into()))?,
            Family::Fans => {
                let (g, pd) = families::fan(n);
                put("iv", write_interval_graph(&pd_to_interval(&g, &pd).map_err(usage)?))?;
            }
            Family::RandomPw => {
                for _ in 0..count {
                    put("iv", write_interval_graph(&families::random_interval_graph(n, width, density, &mut rng)))?;
                }
            }
        }
    }
    Ok(())
}

fn measures_csv(est: &StoneMeasureEstimate, labels: &mut TypeLabels) -> String {
    let mut rows: Vec<(usize, String, String, usize)> = est
        .types
        .iter()
        .map(|(&ty, m)| (labels.label(ty), m.nu.to_string(), format!("{:.12}", m.mu), m.last_count))
        .collect();
    rows.sort();
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["type_id", "depth", "nu", "mu", "last_count"]).expect("in-memory write");
    for (l, nu, mu, c) in rows {
        w.write_record([format!("t{l}"), est.depth.to_string(), nu, mu, c.to_string()]).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

fn limit_sample(
    dir: &Path,
    d: u32,
    samples: u64,
    seed: u64,
    threshold: usize,
    compare_depth: Option<u32>,
    output: Option<&Path>,
) -> CliResult {
    if d == 0 {
        return Err(CliError::Usage("depth must be at least 1".into()));
    }
    let cd = compare_depth.unwrap_or(d - 1);
    if cd >= d {
        return Err(CliError::Usage("comparison depth must lie below the depth".into()));
    }
    let seq = read_sequence(dir)?;
    let estimates: Vec<StoneMeasureEstimate> = (0..=d).map(|k| estimate_stone_measures(&seq, k, threshold)).collect();
    let reference = seq.last().expect("nonempty sequence");
    let tree = build_type_tree(&estimates, reference, threshold).map_err(usage)?;
    for v in &tree.violations {
        eprintln!("warning: {v}");
    }
    let mut labels_d = labels_for(&[reference], d);
    let mut labels_c = labels_for(&[reference], cd);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts: BTreeMap<HintikkaTypeId, u64> = BTreeMap::new();
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["sample", "type_id", "kind", "index", "h", "s", "t"]).expect("in-memory write");
    for i in 0..samples {
        let node = tree.sample_node(&mut rng).map_err(usage)?;
        let ty = node.ty();
        let low = ty.restrict_to(cd).expect("comparison depth lies below");
        *counts.entry(low).or_default() += 1;
        let id = label_of(&mut labels_d, ty);
        let rec = match node {
            ModelingNode::Finite { index, .. } => {
                [i.to_string(), id, "finite".into(), index.to_string(), String::new(), String::new(), String::new()]
            }
            ModelingNode::Continuum { h, s, t, .. } => {
                [i.to_string(), id, "continuum".into(), String::new(), h.to_string(), s.to_string(), t.to_string()]
            }
        };
        w.write_record(rec).expect("in-memory write");
    }
    if let Some(o) = output {
        emit(Some(o), &String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8"))?;
    }
    let empirical: BTreeMap<HintikkaTypeId, f64> =
        counts.into_iter().map(|(ty, c)| (ty, c as f64 / samples as f64)).collect();
    let mut rows: Vec<(usize, f64, f64, f64)> = compare_distribution(&estimates[cd as usize], &empirical)
        .into_iter()
        .map(|(ty, mu, f, dev)| (labels_c.label(ty), mu, f, dev))
        .collect();
    rows.sort_by_key(|r| r.0);
    let mut table = String::from("type      mu_hat  empirical  deviation\n");
    for (l, mu, f, dev) in rows {
        let _ = writeln!(table, "{:<8} {:>7.4} {:>10.4} {:>10.4}", format!("t{l}"), mu, f, dev);
    }
    print!("{table}");
    Ok(())
}

fn converge(dir: &Path, formulas: &[String], output: Option<&Path>) -> CliResult {
    let seq = read_sequence(dir)?;
    let parsed: Vec<Formula> = formulas.iter().map(|f| parse_formula(f).map_err(usage)).collect::<Result<_, _>>()?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["formula", "index", "nodes", "pairing"]).expect("in-memory write");
    for (text, f) in formulas.iter().zip(&parsed) {
        for (i, t) in seq.iter().enumerate() {
            let r = stone_pairing(t, f, None).map_err(usage)?;
            w.write_record([text.clone(), i.to_string(), t.len().to_string(), decimal(r, 12)])
                .expect("in-memory write");
        }
    }
    emit(output, &String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8"))
}
