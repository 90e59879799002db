use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polyweight_core::battery::{claim_input, example_battery, run_claim, BatteryReport};
use polyweight_core::ehrhart::{
    count_dilates, ehrhart_fit, real_fiber_size, verify_duality, verify_ehrhart_identity,
    weight_multiplicity, MultiplicityQuery,
};
use polyweight_core::exact::parse_rational_list;
use polyweight_core::polytope::{
    combinatorial_fingerprint, format_linear_form, h_to_v, polytope_dim, remove_redundant,
};
use polyweight_core::toric::{
    fan_fingerprint, facet_labels, hull_fan, normal_fan, singularity_report, Fan,
};
use polyweight_core::weights::{fm_polytope, polygon_hrep};
use polyweight_core::{json, Error, HPolytope, SideData, Vector};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "polyweight", version, about = "Weight polytopes of polygon and configuration spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Chart {
    Entry,
    Diag,
}

#[derive(Args)]
struct SideArgs {
    /// Dimension of the projective space the points live in.
    #[arg(long)]
    m: Option<usize>,
    /// Comma-separated side lengths, e.g. 3,3,3,3,4 or 1/2,3/2,...
    #[arg(long, allow_hyphen_values = true)]
    r: Option<String>,
    /// JSON file holding side data or a polytope.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct Source {
    #[command(flatten)]
    side: SideArgs,
    #[arg(long, value_enum)]
    chart: Option<Chart>,
}

#[derive(Subcommand)]
enum Command {
    /// H-representation of the weight polytope.
    Polytope(Source),
    /// Vertices of the weight polytope.
    Vertices(Source),
    /// Vertex cones with their lattice indices.
    Fan(Source),
    /// Singular vertices of the toric variety.
    Singular(Source),
    /// Divisor labels of polygon-space facets.
    Facets(SideArgs),
    /// Lattice-point counts of dilates and the Ehrhart fit.
    Ehrhart {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 4)]
        dilate: u64,
    },
    /// Weight multiplicity by Jacobi-Trudi.
    Mult {
        #[command(flatten)]
        side: SideArgs,
        #[arg(long, default_value_t = 1)]
        dilate: u64,
    },
    /// Lattice counts against weight multiplicities.
    VerifyIdentity {
        #[command(flatten)]
        side: SideArgs,
        #[arg(long, default_value_t = 3)]
        dilate: u64,
    },
    /// Invariants of the slice and of its dual.
    Dual {
        #[command(flatten)]
        side: SideArgs,
        #[arg(long, default_value_t = 3)]
        dilate: u64,
    },
    /// Size of the generic real fiber.
    Fibers {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Canonical face-lattice fingerprint.
    Fingerprint(Source),
    /// Worked-example battery.
    PaperExamples {
        /// Run one claim only.
        #[arg(long)]
        claim: Option<String>,
        #[command(flatten)]
        side: SideArgs,
    },
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::InvalidSideData(_)
            | Error::TooFewSides
            | Error::DimensionMismatch { .. }
            | Error::NonMonotoneLambda
            | Error::InvalidRowSums(_) => Failure::Usage(e.to_string()),
            other => Failure::Compute(other),
        }
    }
}

struct Report {
    json: Value,
    text: String,
    pass: bool,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report { json, text, pass: true }
    }
}

enum Input {
    Side(SideData),
    Polytope(HPolytope),
}

fn read_input(args: &SideArgs) -> Result<Input, Failure> {
    if let Some(path) = &args.input {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        return if value.get("r").is_some() {
            Ok(Input::Side(json::parse_side_data(&text)?))
        } else {
            Ok(Input::Polytope(json::parse_polytope(&text)?))
        };
    }
    match (&args.m, &args.r) {
        (Some(m), Some(r)) => Ok(Input::Side(SideData::new(*m, parse_rational_list(r)?)?)),
        _ => Err(Failure::Usage("give --m and --r, or --input".into())),
    }
}

fn read_side(args: &SideArgs) -> Result<SideData, Failure> {
    match read_input(args)? {
        Input::Side(s) => Ok(s),
        Input::Polytope(_) => Err(Failure::Usage("expected side data, found a polytope".into())),
    }
}

fn chart_polytope(s: &SideData, chart: Chart) -> Result<HPolytope, Error> {
    match chart {
        Chart::Diag if s.m() == 1 && s.n() >= 4 => remove_redundant(&polygon_hrep(s)?),
        Chart::Diag => Ok(fm_polytope(s)?.diag_chart),
        Chart::Entry => Ok(fm_polytope(s)?.entry_chart),
    }
}

fn resolve(source: &Source, default: Chart) -> Result<HPolytope, Failure> {
    match read_input(&source.side)? {
        Input::Side(s) => Ok(chart_polytope(&s, source.chart.unwrap_or(default))?),
        Input::Polytope(p) => Ok(p),
    }
}

fn point(v: &Vector) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn fan_of(p: &HPolytope) -> Result<Fan, Error> {
    match normal_fan(p) {
        Err(Error::NotFullDimensional) => hull_fan(p),
        other => other,
    }
}

fn run(command: &Command) -> Result<Report, Failure> {
    match command {
        Command::Polytope(source) => {
            let p = resolve(source, Chart::Diag)?;
            let mut lines: Vec<String> = p.inequalities().iter().map(|h| h.to_string()).collect();
            lines.extend(
                p.equalities()
                    .iter()
                    .map(|h| format!("{} = {}", format_linear_form(&h.normal), h.rhs)),
            );
            Ok(Report::ok(json::hpolytope(&p), lines.join("\n")))
        }
        Command::Vertices(source) => {
            let v = h_to_v(&resolve(source, Chart::Diag)?)?;
            let text = v.vertices().iter().map(point).collect::<Vec<_>>().join("\n");
            Ok(Report::ok(json::vpolytope(&v), text))
        }
        Command::Fan(source) => {
            let fan = fan_of(&resolve(source, Chart::Diag)?)?;
            let report = singularity_report(&fan);
            let text = report
                .entries
                .iter()
                .map(|e| {
                    let rays: Vec<String> = e
                        .rays
                        .iter()
                        .map(|r| format!("({})", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
                        .collect();
                    format!("{} rays {} index {} {}", point(&e.vertex), rays.join(" "), e.index, e.status.label())
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Report::ok(json::fan(&fan, &report), text))
        }
        Command::Singular(source) => {
            let report = singularity_report(&fan_of(&resolve(source, Chart::Diag)?)?);
            let singular: Vec<_> = report.singular().collect();
            let mut lines: Vec<String> = singular
                .iter()
                .map(|e| format!("{} {} index {}", point(&e.vertex), e.status.label(), e.index))
                .collect();
            lines.push(format!("{} singular of {} vertices", singular.len(), report.entries.len()));
            let json = json!({
                "vertices": report.entries.len(),
                "singular": singular.iter().map(|e| json!({
                    "vertex": json::vector(&e.vertex),
                    "status": e.status.label(),
                    "index": e.index.to_string(),
                })).collect::<Vec<_>>(),
            });
            Ok(Report::ok(json, lines.join("\n")))
        }
        Command::Facets(args) => {
            let s = read_side(args)?;
            let labels = facet_labels(&s, &remove_redundant(&polygon_hrep(&s)?)?)?;
            let text = labels
                .iter()
                .map(|l| {
                    let tags: Vec<String> = l.tags.iter().map(|t| t.to_string()).collect();
                    format!("{}  {}", l.facet, tags.join(" "))
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Report::ok(json::facet_labels(&labels), text))
        }
        Command::Ehrhart { source, dilate } => {
            let p = resolve(source, Chart::Entry)?;
            let counts = count_dilates(&p, *dilate)?;
            let dim = polytope_dim(&p)?;
            let mut lines: Vec<String> = counts
                .counts
                .iter()
                .enumerate()
                .map(|(t, c)| format!("t={t} {c}"))
                .collect();
            let fit = match ehrhart_fit(&counts, dim) {
                Ok(fit) => {
                    for (class, coeffs) in fit.coefficients.iter().enumerate() {
                        let cs: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
                        lines.push(format!("class {class} mod {}: {}", fit.period, cs.join(" ")));
                    }
                    json::ehrhart_fit(&fit)
                }
                Err(e @ Error::InsufficientSamples { .. }) => {
                    lines.push(format!("no fit: {e}"));
                    json::error(&e)
                }
                Err(e) => return Err(e.into()),
            };
            let json = json!({ "dim": dim, "counts": json::dilate_counts(&counts), "fit": fit });
            Ok(Report::ok(json, lines.join("\n")))
        }
        Command::Mult { side, dilate } => {
            let s = read_side(side)?;
            let m = weight_multiplicity(&MultiplicityQuery::from_side_data(&s, *dilate)?);
            Ok(Report::ok(json!({ "dilate": dilate, "multiplicity": m.to_string() }), m.to_string()))
        }
        Command::VerifyIdentity { side, dilate } => {
            let rows = verify_ehrhart_identity(&read_side(side)?, *dilate)?;
            let text = rows
                .iter()
                .map(|r| {
                    let status = if r.pass { "PASS" } else { "FAIL" };
                    format!("t={} lattice {} multiplicity {} {status}", r.dilate, r.lattice_count, r.multiplicity)
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Report {
                json: json::identity_rows(&rows),
                text,
                pass: rows.iter().all(|r| r.pass),
            })
        }
        Command::Dual { side, dilate } => {
            let report = verify_duality(&read_side(side)?, *dilate)?;
            let mut lines = vec![format!("{} <-> {}", report.primal, report.dual)];
            lines.extend(report.checks.iter().map(|c| {
                let status = if c.pass { "PASS" } else { "FAIL" };
                format!("{}: {} | {} {status}", c.name, c.primal, c.dual)
            }));
            Ok(Report {
                json: json::duality_report(&report),
                text: lines.join("\n"),
                pass: report.pass(),
            })
        }
        Command::Fibers { m, n } => {
            let size = real_fiber_size(*m, *n)?;
            Ok(Report::ok(json!({ "m": m, "n": n, "fiber_size": size.to_string() }), size.to_string()))
        }
        Command::Fingerprint(source) => {
            let p = resolve(source, Chart::Diag)?;
            let f = combinatorial_fingerprint(&p)?;
            let mut json = json!({ "combinatorial": json::combinatorial_fingerprint(&f) });
            let mut lines = vec![format!("dim {} vertices {} facets {}", f.dim, f.vertices, f.facets)];
            lines.extend(f.incidence.iter().cloned());
            if let Ok(fan) = fan_of(&p) {
                let ff = fan_fingerprint(&fan);
                let cones: Vec<String> = ff.cones.iter().map(|(k, i)| format!("{k}:{i}")).collect();
                lines.push(format!("cones {}", cones.join(" ")));
                json["fan"] = json::fan_fingerprint(&ff);
            }
            Ok(Report::ok(json, lines.join("\n")))
        }
        Command::PaperExamples { claim, side } => {
            let report = match claim {
                Some(id) => {
                    let s = if side.m.is_some() || side.r.is_some() || side.input.is_some() {
                        read_side(side)?
                    } else {
                        claim_input(id)?
                    };
                    BatteryReport {
                        claims: vec![run_claim(id, &s)?],
                    }
                }
                None => example_battery(),
            };
            let mut lines: Vec<String> = report
                .claims
                .iter()
                .map(|c| {
                    let status = if c.pass { "PASS" } else { "FAIL" };
                    format!("{status} {} [{}]: {} (expected {})", c.id, c.input, c.computed, c.expected)
                })
                .collect();
            lines.push(format!("{}/{} claims pass", report.passed(), report.claims.len()));
            Ok(Report {
                json: json::battery_report(&report),
                text: lines.join("\n"),
                pass: report.all_pass(),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(report) => {
            match cli.format {
                Format::Json => print!("{}", json::to_string(&report.json)),
                Format::Text => println!("{}", report.text),
            }
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(e)) => {
            match cli.format {
                Format::Json => print!("{}", json::to_string(&json::error(&e))),
                Format::Text => println!("error: {e}"),
            }
            ExitCode::from(1)
        }
    }
}
