use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use welbound_cli::format::{self, family_name, SystemBody, SystemDocument};
use welbound_cli::svg;
use welbound_cli::table;
use welbound_core::asymptotics::bound_table;
use welbound_core::collection::{find_partition, project_to_system, RowCollection};
use welbound_core::construct::{
    family_canonical, family_count, family_iterate, family_sample, family_verify,
    FamilyConfig,
};
use welbound_core::oracle::{
    count_marked_admissible, count_marked_admissible_naive, OracleConfig,
};
use welbound_core::{Family, Interval, PolygonSpec, ProperSystem};

#[derive(Parser)]
#[command(name = "welbound", about = "Interval systems of lattice polygons", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct FamilyArgs {
    /// square | pentagon | hexagonC | hexagonD
    #[arg(long)]
    family: Family,
    #[arg(long)]
    d: u32,
    #[arg(long)]
    d1: Option<u32>,
    #[arg(long)]
    d2: Option<u32>,
}

impl FamilyArgs {
    fn spec(&self, n: u32) -> PolygonSpec {
        PolygonSpec { family: self.family, d: self.d, d1: self.d1, d2: self.d2, n }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print m, the sigma profile, and the interval budget.
    Profile {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    /// Exhaustive enumeration counts (two independent strategies).
    Oracle {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 1)]
        n: u32,
        /// Branch-node budget for the enumerators.
        #[arg(long, default_value_t = 100_000_000)]
        node_budget: u64,
        /// Also run the naive enumerator and require agreement.
        #[arg(long)]
        cross_check: bool,
    },
    /// Family generation: count, iterate, or sample members.
    Construct {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 1)]
        n: u32,
        /// count | iterate | sample
        #[arg(long, default_value = "count")]
        mode: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of samples in sample mode.
        #[arg(long, default_value_t = 1)]
        count: u64,
        /// Cap on exhaustive iteration.
        #[arg(long, default_value_t = 1_000_000)]
        iterate_cap: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate the whole family and check projections, admissibility,
    /// distinctness, counts, and the two-sided partition criterion.
    Verify {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 1_000_000)]
        iterate_cap: u64,
    },
    /// Lower-bound table over a list of scales, as CSV.
    Bound {
        #[command(flatten)]
        family: FamilyArgs,
        /// Scales: comma list (64,128) or geometric a:b:x2.
        #[arg(long)]
        n_list: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render one family member as SVG.
    Render {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 1)]
        n: u32,
        /// Sample with this seed instead of the canonical member.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 0)]
        index: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// `a:b:x2` is the geometric progression a, 2a, ... capped at b; a plain
/// comma list is taken literally.
fn parse_n_list(text: &str) -> anyhow::Result<Vec<u32>> {
    if let Some((range, step)) = text.rsplit_once(':') {
        if let Some(ratio_str) = step.strip_prefix('x') {
            let (a, b) = range
                .split_once(':')
                .context("expected a:b:xR for a geometric scale list")?;
            let a: u32 = a.parse().context("invalid start of n list")?;
            let b: u32 = b.parse().context("invalid end of n list")?;
            let ratio: u32 = ratio_str.parse().context("invalid ratio of n list")?;
            if a == 0 || b < a || ratio < 2 {
                bail!("degenerate n list {text:?}");
            }
            let mut out = Vec::new();
            let mut v = a;
            while v <= b {
                out.push(v);
                match v.checked_mul(ratio) {
                    Some(next) => v = next,
                    None => break,
                }
            }
            return Ok(out);
        }
    }
    text.split(',')
        .map(|tok| tok.trim().parse().context("invalid n value"))
        .collect()
}

fn emit(out: &Option<PathBuf>, content: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)
            .with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn document(spec: &PolygonSpec, coll: &RowCollection) -> SystemDocument {
    let system = ProperSystem::new(
        coll.segments.iter().map(|s| Interval::new(s.xl, s.xr)).collect(),
    );
    SystemDocument { spec: *spec, body: SystemBody::Plain(system) }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Profile { family, n } => {
            let spec = family.spec(n);
            let profile = spec.profile()?;
            println!("family: {}", family_name(spec.family));
            println!("m: {}", profile.m);
            println!(
                "sigma: {}",
                profile.sigma.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
            );
            println!("boundary_length: {}", profile.boundary_length);
            println!("interval_budget: {}", profile.interval_budget());
        }
        Command::Oracle { family, n, node_budget, cross_check } => {
            let spec = family.spec(n);
            let profile = spec.profile()?;
            let cfg = OracleConfig { node_budget };
            let report = count_marked_admissible(&profile, &cfg)?;
            if cross_check {
                let naive = count_marked_admissible_naive(&profile, &cfg)?;
                if report.proper_count != naive.proper_count
                    || report.admissible_count != naive.admissible_count
                    || report.marked_admissible_count != naive.marked_admissible_count
                {
                    bail!("enumeration strategies disagree");
                }
                println!("cross_check: ok");
            }
            println!("proper: {}", report.proper_count);
            println!("admissible: {}", report.admissible_count);
            println!("marked_admissible: {}", report.marked_admissible_count);
        }
        Command::Construct { family, n, mode, seed, count, iterate_cap, out } => {
            let spec = family.spec(n);
            spec.validate()?;
            let cfg = FamilyConfig { iterate_cap };
            match mode.as_str() {
                "count" => {
                    let total = family_count(&spec)?;
                    emit(&out, &format!("{total}\n"))?;
                }
                "iterate" => {
                    let mut text = String::new();
                    for coll in family_iterate(&spec, &cfg)? {
                        text.push_str(&format::serialize(&document(&spec, &coll)));
                        text.push('\n');
                    }
                    emit(&out, &text)?;
                }
                "sample" => {
                    let mut text = String::new();
                    for index in 0..count {
                        let coll = family_sample(&spec, seed, index)?;
                        text.push_str(&format::serialize(&document(&spec, &coll)));
                        text.push('\n');
                    }
                    emit(&out, &text)?;
                }
                other => bail!("unknown construct mode {other:?} (count|iterate|sample)"),
            }
        }
        Command::Verify { family, n, iterate_cap } => {
            let spec = family.spec(n);
            let cfg = FamilyConfig { iterate_cap };
            let report = family_verify(&spec, &cfg)?;
            println!("generated: {}", report.generated);
            println!("expected: {}", report.expected);
            println!("distinct_projections: {}", report.distinct_projections);
            println!("partition_passes: {}", report.partition_passes);
            // A spot check that found partitions replay cleanly.
            let canonical = family_canonical(&spec)?;
            let profile = spec.profile()?;
            project_to_system(&canonical, &profile)
                .map_err(|v| anyhow::anyhow!("canonical member invalid: {v}"))?;
            if let Some(p) = find_partition(&canonical)? {
                println!("canonical_partition: {}", p.labels.len());
            } else {
                println!("canonical_partition: none");
            }
        }
        Command::Bound { family, n_list, out } => {
            let spec = family.spec(1);
            let scales = parse_n_list(&n_list)?;
            let report = bound_table(&spec, &scales)?;
            let csv = table::bound_csv(&spec, &report);
            match &report.fit {
                Some(fit) => eprintln!(
                    "fit: A = {}, B = {}",
                    table::format_significant(fit.a),
                    table::format_significant(fit.b)
                ),
                None => eprintln!("fit: insufficient points"),
            }
            emit(&out, &csv)?;
        }
        Command::Render { family, n, seed, index, out } => {
            let spec = family.spec(n);
            let coll = match seed {
                Some(seed) => family_sample(&spec, seed, index)?,
                None => family_canonical(&spec)?,
            };
            emit(&out, &svg::render(&coll))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
