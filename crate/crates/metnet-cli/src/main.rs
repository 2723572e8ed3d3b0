//! `metnet` command line: seeded, reproducible analysis pipeline over a
//! metaphor-mapping corpus. All outputs are CSV/JSON plus a manifest with
//! the tool version, master seed, input digests, and flags; identical
//! invocations produce byte-identical output trees.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use metnet_core::clustering::{self, cluster_stability, role_distance, ward_hca_all};
use metnet_core::curvature::{curvature_histograms, ollivier_all};
use metnet_core::degree_stats::{degree_nullband, degree_scatter_stats, density_anticorrelation};
use metnet_core::embedding::{self, compare, paired_sample};
use metnet_core::graph::{degrees_multi, degrees_simple, CategorySizeTable, DegreeRecord};
use metnet_core::hist::{BinSpec, DegreeKind};
use metnet_core::ingest::{
    self, derive_category_sizes, parse_category_sizes, parse_corpus, parse_embeddings, Corpus,
    SelfLoopPolicy,
};
use metnet_core::motifs::{motif_significance, outward_transitivity, ClosureRule, MotifFlag};
use metnet_core::null_models::NullModel;
use metnet_core::persistence::{log_binned, multiplicity_distribution, persistence_test};
use metnet_core::report::RunManifest;

#[derive(Parser)]
#[command(name = "metnet", version, about = "Metaphor-network statistical analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Corpus CSV with header word,source,target,first_year,last_year
    #[arg(long)]
    corpus: PathBuf,
    /// Category size CSV `name,size`; derived from the corpus when absent
    #[arg(long)]
    sizes: Option<PathBuf>,
    /// Output directory (created if missing)
    #[arg(long)]
    out: PathBuf,
    /// Master seed for every stochastic step
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Null-model replicates
    #[arg(long, default_value_t = 1000)]
    replicates: u32,
    /// Attempted swaps per randomization (default 10 per edge)
    #[arg(long)]
    swaps: Option<u64>,
    /// Skip self-loop rows instead of failing
    #[arg(long)]
    skip_self_loops: bool,
    /// Additionally emit gnuplot scripts referencing the CSV outputs
    #[arg(long)]
    gnuplot: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphKind {
    Simple,
    Multi,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Er,
    ConfigSimple,
    ConfigMulti,
}

impl From<ModelArg> for NullModel {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Er => NullModel::Er,
            ModelArg::ConfigSimple => NullModel::ConfigSimple,
            ModelArg::ConfigMulti => NullModel::ConfigMulti,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse the corpus and report ingestion diagnostics
    IngestCheck {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Degree report per category
    Degrees {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value_t = GraphKind::Multi)]
        graph: GraphKind,
        /// Out-degree subset threshold for the in-vs-out correlation
        #[arg(long, default_value_t = 90)]
        threshold: u64,
        /// Density cut (fraction of the maximum) for the anti-correlation
        #[arg(long, default_value_t = 0.5)]
        frac: f64,
    },
    /// Degree histogram with null-model bands
    Nullband {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value_t = ModelArg::Er)]
        model: ModelArg,
        /// Histogram bin width
        #[arg(long, default_value_t = 1)]
        bin_width: u64,
    },
    /// Motif census and Z-scores at sizes 2 and 3
    Motifs {
        #[command(flatten)]
        common: CommonArgs,
        /// Restrict to one size (2 or 3)
        #[arg(long)]
        size: Option<u8>,
    },
    /// Outward transitivity per category
    Transitivity {
        #[command(flatten)]
        common: CommonArgs,
        /// Close 2-paths with v→w instead of w→v
        #[arg(long)]
        outward_closure: bool,
    },
    /// Edge-multiplicity distribution against the configuration ensemble
    Persistence {
        #[command(flatten)]
        common: CommonArgs,
        /// Exceedance threshold in standard deviations
        #[arg(long, default_value_t = 2.0)]
        sigma: f64,
    },
    /// Role-distance Ward clustering with ties-in-proximity enumeration
    Cluster {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = clustering::DEFAULT_CAP)]
        cap_dendrograms: usize,
        #[arg(long, default_value_t = clustering::DEFAULT_TIE_EPSILON)]
        tie_epsilon: f64,
    },
    /// Forman and Ollivier curvature per connected pair
    Curvature {
        #[command(flatten)]
        common: CommonArgs,
        /// Ollivier histogram bin width
        #[arg(long, default_value_t = 0.05)]
        ollivier_bin: f64,
    },
    /// Compare role distances with embedding distances
    EmbedCompare {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        embeddings: PathBuf,
        #[arg(long, default_value_t = 300)]
        dim: usize,
        #[arg(long, default_value_t = embedding::DEFAULT_BINS)]
        bins: usize,
    },
    /// Run every analysis into one output tree
    ReportAll {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        embeddings: Option<PathBuf>,
        #[arg(long, default_value_t = 300)]
        dim: usize,
        #[arg(long, default_value_t = embedding::DEFAULT_BINS)]
        bins: usize,
        #[arg(long, default_value_t = 90)]
        threshold: u64,
        #[arg(long, default_value_t = clustering::DEFAULT_CAP)]
        cap_dendrograms: usize,
    },
}

enum CliError {
    Input(String),
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<ingest::IngestError> for CliError {
    fn from(e: ingest::IngestError) -> Self {
        CliError::Input(e.to_string())
    }
}

macro_rules! internal_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Internal(e.to_string())
            }
        }
    )*};
}
internal_from!(
    metnet_core::graph::GraphError,
    metnet_core::null_models::NullModelError,
    metnet_core::motifs::MotifError,
    metnet_core::clustering::ClusterError,
    std::fmt::Error
);

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are not usage errors
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                std::process::exit(0);
            }
            eprintln!("{e}");
            std::process::exit(1);
        }
    };
    let started = Instant::now();
    match execute(cli.command) {
        Ok(()) => {
            eprintln!("done in {} ms", started.elapsed().as_millis());
        }
        Err(e) => {
            eprintln!("metnet: {}", e.message());
            std::process::exit(e.exit_code());
        }
    }
}

/// Accumulates outputs in memory; nothing touches the filesystem until the
/// whole run has succeeded, so failures leave no partial output tree.
struct OutputTree {
    dir: PathBuf,
    files: BTreeMap<String, String>,
    manifest: RunManifest,
}

impl OutputTree {
    fn new(common: &CommonArgs) -> Result<Self, CliError> {
        let mut manifest = RunManifest::new(common.seed);
        record_input(&mut manifest, "corpus", &common.corpus)?;
        if let Some(sizes) = &common.sizes {
            record_input(&mut manifest, "sizes", sizes)?;
        }
        manifest.record_flag("replicates", common.replicates);
        if let Some(s) = common.swaps {
            manifest.record_flag("swaps", s);
        }
        manifest.record_flag("skip_self_loops", common.skip_self_loops);
        Ok(OutputTree {
            dir: common.out.clone(),
            files: BTreeMap::new(),
            manifest,
        })
    }

    fn add(&mut self, module: &str, name: &str, content: String) {
        self.manifest.record_output(module, name);
        self.files.insert(name.to_string(), content);
    }

    fn write(mut self) -> Result<(), CliError> {
        self.files
            .insert("manifest.json".to_string(), self.manifest.to_json());
        std::fs::create_dir_all(&self.dir)
            .map_err(|e| CliError::Input(format!("cannot create {}: {e}", self.dir.display())))?;
        for (name, content) in &self.files {
            let path = self.dir.join(name);
            std::fs::write(&path, content)
                .map_err(|e| CliError::Internal(format!("writing {}: {e}", path.display())))?;
        }
        Ok(())
    }
}

fn record_input(manifest: &mut RunManifest, name: &str, path: &Path) -> Result<(), CliError> {
    manifest
        .record_input(name, path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_corpus(common: &CommonArgs) -> Result<Corpus, CliError> {
    let file = std::fs::File::open(&common.corpus)
        .map_err(|e| CliError::Input(format!("cannot open {}: {e}", common.corpus.display())))?;
    let policy = if common.skip_self_loops {
        SelfLoopPolicy::SkipAndCount
    } else {
        SelfLoopPolicy::Reject
    };
    Ok(parse_corpus(file, policy)?)
}

fn load_sizes(common: &CommonArgs, corpus: &Corpus) -> Result<(CategorySizeTable, bool), CliError> {
    match &common.sizes {
        Some(path) => {
            let file = std::fs::File::open(path)
                .map_err(|e| CliError::Input(format!("cannot open {}: {e}", path.display())))?;
            Ok((parse_category_sizes(file, &corpus.categories)?, false))
        }
        None => Ok((derive_category_sizes(corpus), true)),
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.9}")).unwrap_or_default()
}

fn degrees_csv(records: &[DegreeRecord], corpus: &Corpus) -> String {
    let mut s = String::from("category,in,out,size,in_density,out_density\n");
    for r in records {
        let _ = writeln!(
            s,
            "{},{},{},{},{:.9},{:.9}",
            corpus.categories.name(r.category),
            r.in_degree,
            r.out_degree,
            r.size,
            r.in_density,
            r.out_density
        );
    }
    s
}

fn motif_csv(report: &metnet_core::motifs::MotifReport) -> String {
    let mut s = String::from("class_code,label,n_real,rand_mean,rand_std,z,flag\n");
    for row in &report.rows {
        let flag = match row.flag {
            MotifFlag::Motif => "motif",
            MotifFlag::Antimotif => "antimotif",
            MotifFlag::NotSignificant => "ns",
            MotifFlag::Degenerate => "degenerate",
        };
        let _ = writeln!(
            s,
            "{},{},{},{:.9},{:.9},{},{}",
            row.class_code,
            row.label,
            row.n_real,
            row.rand_mean,
            row.rand_std,
            fmt_opt(row.z),
            flag
        );
    }
    s
}

fn run_degrees(
    out: &mut OutputTree,
    common: &CommonArgs,
    corpus: &Corpus,
    graph: GraphKind,
    threshold: u64,
    frac: f64,
) -> Result<(), CliError> {
    let (sizes, derived) = load_sizes(common, corpus)?;
    out.manifest.record_flag("sizes_derived", derived);
    let multi = metnet_core::DirectedMultigraph::from_records(
        corpus.categories.len() as u32,
        &corpus.records,
    );
    let records = match graph {
        GraphKind::Simple => degrees_simple(&multi.project_simple(), &sizes)?,
        GraphKind::Multi => degrees_multi(&multi, &sizes)?,
    };
    out.add("degrees", "degrees.csv", degrees_csv(&records, corpus));
    let scatter = degree_scatter_stats(&records, threshold);
    let density = density_anticorrelation(&records, frac);
    let mut scatter_csv = String::from("category,out_degree,in_degree\n");
    for (c, o, i) in &scatter.points {
        let _ = writeln!(
            scatter_csv,
            "{},{},{}",
            corpus.categories.name(metnet_core::CategoryId(*c)),
            o,
            i
        );
    }
    out.add("degrees", "degree_scatter.csv", scatter_csv);
    let summary = serde_json::json!({
        "overall_in_out_pearson": scatter.overall,
        "high_out_subset_pearson": scatter.high_out_subset,
        "threshold": threshold,
        "subset_size": scatter.subset_size,
        "density_anticorrelation": density.correlation,
        "density_frac": frac,
        "density_subset_size": density.subset_size,
        "both_high_categories": density
            .both_high
            .iter()
            .map(|&c| corpus.categories.name(metnet_core::CategoryId(c)))
            .collect::<Vec<_>>(),
    });
    out.add(
        "degrees",
        "degree_stats.json",
        serde_json::to_string_pretty(&summary).unwrap(),
    );
    Ok(())
}

fn run_nullband(
    out: &mut OutputTree,
    common: &CommonArgs,
    corpus: &Corpus,
    model: NullModel,
    bin_width: u64,
) -> Result<(), CliError> {
    let (sizes, _) = load_sizes(common, corpus)?;
    let multi = metnet_core::DirectedMultigraph::from_records(
        corpus.categories.len() as u32,
        &corpus.records,
    );
    out.manifest.record_flag("model", model.as_str());
    let spec = if bin_width <= 1 {
        BinSpec::Unit
    } else {
        BinSpec::Width(bin_width)
    };
    for which in [DegreeKind::Out, DegreeKind::In] {
        let band = degree_nullband(
            &multi,
            &sizes,
            which,
            model,
            common.replicates,
            common.swaps,
            common.seed,
            spec,
        )?;
        let tag = match which {
            DegreeKind::In => "in",
            DegreeKind::Out => "out",
        };
        let mut csv = String::from("degree,data_count,rand_mean,rand_std\n");
        for &(edge, count) in &band.data {
            let (m, s) = band
                .stats
                .get(spec.bin_of(edge) as i64)
                .unwrap_or((0.0, 0.0));
            let _ = writeln!(csv, "{edge},{count},{m:.9},{s:.9}");
        }
        out.add("nullband", &format!("nullband_{tag}.csv"), csv);
        out.add(
            "nullband",
            &format!("nullband_{tag}.json"),
            serde_json::to_string_pretty(&band).unwrap(),
        );
    }
    Ok(())
}

fn run_motifs(
    out: &mut OutputTree,
    common: &CommonArgs,
    corpus: &Corpus,
    size: Option<u8>,
) -> Result<(), CliError> {
    let simple = metnet_core::DirectedMultigraph::from_records(
        corpus.categories.len() as u32,
        &corpus.records,
    )
    .project_simple();
    let sizes: &[u8] = match size {
        Some(2) => &[2],
        Some(3) => &[3],
        Some(other) => {
            return Err(CliError::Input(format!(
                "unsupported motif size {other} (only 2 and 3)"
            )))
        }
        None => &[2, 3],
    };
    for &sz in sizes {
        let report = motif_significance(&simple, sz, common.replicates, common.swaps, common.seed)?;
        out.add("motifs", &format!("motifs_size{sz}.csv"), motif_csv(&report));
    }
    Ok(())
}

fn run_transitivity(
    out: &mut OutputTree,
    corpus: &Corpus,
    rule: ClosureRule,
) -> Result<(), CliError> {
    let simple = metnet_core::DirectedMultigraph::from_records(
        corpus.categories.len() as u32,
        &corpus.records,
    )
    .project_simple();
    let records = outward_transitivity(&simple, rule);
    let mut csv = String::from("category,paths,closed,T\n");
    for r in &records {
        let _ = writeln!(
            csv,
            "{},{},{},{}",
            corpus.categories.name(r.vertex),
            r.path_count,
            r.closed_count,
            fmt_opt(r.transitivity)
        );
    }
    out.add("transitivity", "transitivity.csv", csv);
    Ok(())
}

fn run_persistence(
    out: &mut OutputTree,
    common: &CommonArgs,
    corpus: &Corpus,
    sigma: f64,
) -> Result<(), CliError> {
    let multi = metnet_core::DirectedMultigraph::from_records(
        corpus.categories.len() as u32,
        &corpus.records,
    );
    let report = persistence_test(&multi, common.replicates, common.swaps, common.seed, sigma)?;
    let mut csv = String::from("multiplicity,data_count,rand_mean,rand_std\n");
    for b in &report.bins {
        let _ = writeln!(
            csv,
            "{},{},{:.9},{:.9}",
            b.multiplicity, b.data_count, b.rand_mean, b.rand_std
        );
    }
    out.add("persistence", "persistence.csv", csv);
    let dist = multiplicity_distribution(&multi);
    let mut logcsv = String::from("multiplicity_lo,multiplicity_hi,data_count\n");
    for (lo, hi, c) in log_binned(&dist, 2.0) {
        let _ = writeln!(logcsv, "{lo},{hi},{c}");
    }
    out.add("persistence", "persistence_logbins.csv", logcsv);
    out.add(
        "persistence",
        "persistence.json",
        serde_json::to_string_pretty(&report).unwrap(),
    );
    Ok(())
}

fn run_cluster(
    out: &mut OutputTree,
    corpus: &Corpus,
    cap: usize,
    tie_epsilon: f64,
) -> Result<(), CliError> {
    let simple = metnet_core::DirectedMultigraph::from_records(
        corpus.categories.len() as u32,
        &corpus.records,
    )
    .project_simple();
    let dist = role_distance(&simple);
    let ds = ward_hca_all(&dist, cap, tie_epsilon)?;
    out.manifest.record_flag("cap_dendrograms", cap);
    out.manifest.record_flag("tie_epsilon", tie_epsilon);
    let mut newick = String::new();
    for d in &ds.dendrograms {
        let _ = writeln!(
            newick,
            "{}",
            d.to_newick(|i| corpus
                .categories
                .name(metnet_core::CategoryId(i as u32))
                .replace([' ', ',', '(', ')', ':', ';'], "_"))
        );
    }
    out.add("cluster", "dendrograms.newick", newick);
    out.add(
        "cluster",
        "dendrograms.json",
        serde_json::to_string_pretty(&ds).unwrap(),
    );
    let rows = cluster_stability(&ds);
    let mut csv = String::from("leafset_hash,size,subtree_fraction,leafset_fraction,members\n");
    for r in &rows {
        let members = r
            .members
            .iter()
            .map(|&m| corpus.categories.name(metnet_core::CategoryId(m)))
            .collect::<Vec<_>>()
            .join("|");
        let _ = writeln!(
            csv,
            "{},{},{:.9},{:.9},{}",
            r.leafset_hash, r.size, r.subtree_fraction, r.leafset_fraction, members
        );
    }
    out.add("cluster", "stability.csv", csv);
    Ok(())
}

fn run_curvature(
    out: &mut OutputTree,
    corpus: &Corpus,
    ollivier_bin: f64,
) -> Result<(), CliError> {
    let multi = metnet_core::DirectedMultigraph::from_records(
        corpus.categories.len() as u32,
        &corpus.records,
    );
    let records = ollivier_all(&multi);
    let mut csv = String::from("source,target,multiplicity,forman,ollivier,ollivier_flag\n");
    for r in &records {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{}",
            corpus.categories.name(r.source),
            corpus.categories.name(r.target),
            r.multiplicity,
            r.forman,
            fmt_opt(r.ollivier),
            r.ollivier_flag.as_str()
        );
    }
    out.add("curvature", "curvature.csv", csv);
    let hists = curvature_histograms(&records, ollivier_bin);
    let mut fcsv = String::from("forman,count\n");
    for (&f, &c) in &hists.forman {
        let _ = writeln!(fcsv, "{f},{c}");
    }
    out.add("curvature", "curvature_forman_hist.csv", fcsv);
    let mut ocsv = String::from("ollivier_bin_lo,count\n");
    for &(lo, c) in &hists.ollivier {
        let _ = writeln!(ocsv, "{lo:.9},{c}");
    }
    out.add("curvature", "curvature_ollivier_hist.csv", ocsv);
    out.add(
        "curvature",
        "curvature_hist.json",
        serde_json::to_string_pretty(&hists).unwrap(),
    );
    Ok(())
}

fn run_embed_compare(
    out: &mut OutputTree,
    corpus: &Corpus,
    embeddings: &Path,
    dim: usize,
    bins: usize,
) -> Result<(), CliError> {
    record_input(&mut out.manifest, "embeddings", embeddings)?;
    out.manifest.record_flag("bins", bins);
    out.manifest.record_flag("dim", dim);
    let file = std::fs::File::open(embeddings)
        .map_err(|e| CliError::Input(format!("cannot open {}: {e}", embeddings.display())))?;
    let table = parse_embeddings(file, dim)?;
    let simple = metnet_core::DirectedMultigraph::from_records(
        corpus.categories.len() as u32,
        &corpus.records,
    )
    .project_simple();
    let dist = role_distance(&simple);
    let sample = paired_sample(&dist, &corpus.categories, &table);
    if sample.role_distance.len() < 2 {
        return Err(CliError::Input(
            "fewer than two category pairs have embedding vectors".to_string(),
        ));
    }
    let report = compare(&sample, bins);
    out.add(
        "embed-compare",
        "embed_compare.json",
        serde_json::to_string_pretty(&report).unwrap(),
    );
    let mut csv = String::from("cat_a,cat_b,role_distance,euclidean,cosine_dissimilarity\n");
    for (idx, &(a, b)) in sample.pairs.iter().enumerate() {
        let _ = writeln!(
            csv,
            "{},{},{:.9},{:.9},{:.9}",
            corpus.categories.name(a),
            corpus.categories.name(b),
            sample.role_distance[idx],
            sample.euclidean[idx],
            sample.cosine[idx]
        );
    }
    out.add("embed-compare", "embed_pairs.csv", csv);
    Ok(())
}

fn add_gnuplot(out: &mut OutputTree) {
    let mut gp = String::new();
    for (name, title, using) in [
        (
            "persistence.csv",
            "Edge multiplicity vs configuration ensemble",
            "1:2 with points, '' using 1:3:4 with errorbars",
        ),
        (
            "curvature_forman_hist.csv",
            "Forman curvature distribution",
            "1:2 with boxes",
        ),
        (
            "curvature_ollivier_hist.csv",
            "Ollivier curvature distribution",
            "1:2 with boxes",
        ),
        (
            "degree_scatter.csv",
            "Out-degree vs in-degree",
            "2:3 with points",
        ),
    ] {
        if out.files.contains_key(name) {
            let _ = writeln!(
                gp,
                "set title '{title}'\nset datafile separator ','\nplot '{name}' skip 1 using {using}\npause -1\n"
            );
        }
    }
    if !gp.is_empty() {
        out.add("plots", "plots.gp", gp);
    }
}

fn execute(command: Command) -> Result<(), CliError> {
    match command {
        Command::IngestCheck { common } => {
            let mut out = OutputTree::new(&common)?;
            let corpus = load_corpus(&common)?;
            let (sizes, derived) = load_sizes(&common, &corpus)?;
            let report = serde_json::json!({
                "records": corpus.records.len(),
                "categories": corpus.categories.len(),
                "skipped_self_loops": corpus.skipped_self_loops,
                "duplicate_rows": corpus.duplicate_rows,
                "sizes_derived": derived,
                "size_entries": sizes.len(),
            });
            out.add(
                "ingest",
                "ingest_report.json",
                serde_json::to_string_pretty(&report).unwrap(),
            );
            out.write()
        }
        Command::Degrees {
            common,
            graph,
            threshold,
            frac,
        } => {
            let mut out = OutputTree::new(&common)?;
            let corpus = load_corpus(&common)?;
            out.manifest.record_flag("threshold", threshold);
            out.manifest.record_flag("frac", frac);
            run_degrees(&mut out, &common, &corpus, graph, threshold, frac)?;
            if common.gnuplot {
                add_gnuplot(&mut out);
            }
            out.write()
        }
        Command::Nullband {
            common,
            model,
            bin_width,
        } => {
            let mut out = OutputTree::new(&common)?;
            let corpus = load_corpus(&common)?;
            run_nullband(&mut out, &common, &corpus, model.into(), bin_width)?;
            out.write()
        }
        Command::Motifs { common, size } => {
            let mut out = OutputTree::new(&common)?;
            let corpus = load_corpus(&common)?;
            run_motifs(&mut out, &common, &corpus, size)?;
            out.write()
        }
        Command::Transitivity {
            common,
            outward_closure,
        } => {
            let mut out = OutputTree::new(&common)?;
            let corpus = load_corpus(&common)?;
            let rule = if outward_closure {
                ClosureRule::Outward
            } else {
                ClosureRule::Inward
            };
            run_transitivity(&mut out, &corpus, rule)?;
            out.write()
        }
        Command::Persistence { common, sigma } => {
            let mut out = OutputTree::new(&common)?;
            let corpus = load_corpus(&common)?;
            out.manifest.record_flag("sigma", sigma);
            run_persistence(&mut out, &common, &corpus, sigma)?;
            if common.gnuplot {
                add_gnuplot(&mut out);
            }
            out.write()
        }
        Command::Cluster {
            common,
            cap_dendrograms,
            tie_epsilon,
        } => {
            let mut out = OutputTree::new(&common)?;
            let corpus = load_corpus(&common)?;
            run_cluster(&mut out, &corpus, cap_dendrograms, tie_epsilon)?;
            out.write()
        }
        Command::Curvature {
            common,
            ollivier_bin,
        } => {
            let mut out = OutputTree::new(&common)?;
            let corpus = load_corpus(&common)?;
            run_curvature(&mut out, &corpus, ollivier_bin)?;
            if common.gnuplot {
                add_gnuplot(&mut out);
            }
            out.write()
        }
        Command::EmbedCompare {
            common,
            embeddings,
            dim,
            bins,
        } => {
            let mut out = OutputTree::new(&common)?;
            let corpus = load_corpus(&common)?;
            run_embed_compare(&mut out, &corpus, &embeddings, dim, bins)?;
            out.write()
        }
        Command::ReportAll {
            common,
            embeddings,
            dim,
            bins,
            threshold,
            cap_dendrograms,
        } => {
            let mut out = OutputTree::new(&common)?;
            let corpus = load_corpus(&common)?;
            run_degrees(&mut out, &common, &corpus, GraphKind::Multi, threshold, 0.5)?;
            run_nullband(&mut out, &common, &corpus, NullModel::Er, 1)?;
            run_motifs(&mut out, &common, &corpus, None)?;
            run_transitivity(&mut out, &corpus, ClosureRule::Inward)?;
            run_persistence(&mut out, &common, &corpus, 2.0)?;
            run_cluster(
                &mut out,
                &corpus,
                cap_dendrograms,
                clustering::DEFAULT_TIE_EPSILON,
            )?;
            run_curvature(&mut out, &corpus, 0.05)?;
            if let Some(embeddings) = embeddings {
                run_embed_compare(&mut out, &corpus, &embeddings, dim, bins)?;
            }
            if common.gnuplot {
                add_gnuplot(&mut out);
            }
            out.write()
        }
    }
}
