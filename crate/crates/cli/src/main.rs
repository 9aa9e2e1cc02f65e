use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use ghilb::ggraph::{brute_force_fixed_points, enumerate_fixed_points, verify_count_identity};
use ghilb::group::age;
use ghilb::mckay::{intersection_matrix, mckay_matrices, quiver_dot};
use ghilb::toric::{
    build_fan, chart_cones, check_fan, check_smooth, fmt_ray, is_crepant_ray, lattices,
};
use ghilb::verify::{verify, VerifyConfig};
use ghilb::{build_group, AbelianGroup, Error, GroupSpec};

#[derive(Parser)]
#[command(
    name = "ghilb",
    version,
    about = "Torus-fixed points, fan and Koszul checks for G-Hilb of C^3"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Elements, characters, ages and junior elements.
    Group(Common),
    /// McKay quiver as DOT or JSON.
    Quiver {
        #[command(flatten)]
        common: Common,
        /// Emit the matrices as JSON instead of DOT.
        #[arg(long)]
        json: bool,
    },
    /// Torus-fixed points with their classification.
    FixedPoints(Common),
    /// The toric fan with per-cone smoothness and crepancy.
    Fan(Common),
    /// Run every check; exit 0 iff all pass.
    Verify(Common),
}

#[derive(Args)]
struct Common {
    /// Group spec, e.g. "7:1,2,4" or "2:1,1,0;2:1,0,1".
    #[arg(long)]
    group: String,
    /// Write the output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Largest |G| for the brute-force fixed-point search.
    #[arg(long, default_value_t = ghilb::ggraph::DEFAULT_ORACLE_CAP, value_parser = positive)]
    oracle_cap: usize,
    /// Random chart points per fixed point.
    #[arg(long, default_value_t = 5)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cap on the number of fixed-point pairs for Koszul homology.
    #[arg(long)]
    max_pairs: Option<usize>,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

enum Failure {
    Input(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Input(_) => Failure::Input(e.to_string()),
            _ => Failure::Verification(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn load(common: &Common) -> Result<AbelianGroup, Failure> {
    let spec: GroupSpec = common.group.parse()?;
    Ok(build_group(&spec)?)
}

fn emit(common: &Common, text: &str) -> Result<(), Failure> {
    match &common.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json(common: &Common, v: &Value) -> Result<(), Failure> {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    emit(common, &s)
}

fn cmd_group(common: &Common) -> Outcome {
    let g = load(common)?;
    let elements: Vec<Value> = g
        .elements()
        .iter()
        .map(|e| json!({ "element": e, "age": age(&g, e).to_string() }))
        .collect();
    let characters: Vec<&Vec<u32>> = g.characters().iter().map(|c| &c.fingerprint).collect();
    emit_json(
        common,
        &json!({
            "spec": g.spec().to_string(),
            "order": g.order(),
            "exponent": g.exponent(),
            "elements": elements,
            "characters": characters,
            "representatives": g.representatives(),
            "junior": g.junior_elements(),
        }),
    )
}

fn cmd_quiver(common: &Common, as_json: bool) -> Outcome {
    let g = load(common)?;
    if !as_json {
        return emit(common, &quiver_dot(&g));
    }
    emit_json(
        common,
        &json!({
            "spec": g.spec().to_string(),
            "tensor": mckay_matrices(&g),
            "intersection": intersection_matrix(&g),
        }),
    )
}

fn cmd_fixed_points(common: &Common) -> Outcome {
    let g = load(common)?;
    let points = enumerate_fixed_points(&g)?;
    let oracle = if g.order() <= common.oracle_cap {
        Some(brute_force_fixed_points(&g, common.oracle_cap)? == points)
    } else {
        None
    };
    let records: Vec<Value> = points
        .iter()
        .map(|p| {
            json!({
                "fixed_point": p.record(),
                "count_identity": verify_count_identity(p, g.order()),
            })
        })
        .collect();
    emit_json(
        common,
        &json!({
            "spec": g.spec().to_string(),
            "order": g.order(),
            "count": points.len(),
            "oracle_agrees": oracle,
            "fixed_points": records,
        }),
    )?;
    let ok = points.len() == g.order()
        && oracle != Some(false)
        && points.iter().all(|p| verify_count_identity(p, g.order()));
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification(
            "fixed-point enumeration check failed".into(),
        ))
    }
}

fn cmd_fan(common: &Common) -> Outcome {
    let g = load(common)?;
    let points = enumerate_fixed_points(&g)?;
    let pair = lattices(&g)?;
    let cones = chart_cones(&g, &points)?;
    let per_cone: Vec<Value> = cones
        .iter()
        .map(|c| {
            json!({
                "owner": c.owner,
                "dual_generators": c.dual_gens,
                "rays": c.rays.iter().map(fmt_ray).collect::<Vec<_>>(),
                "smooth": check_smooth(&pair, c),
                "crepant": c.rays.iter().all(|r| is_crepant_ray(&pair, r)),
            })
        })
        .collect();
    let report = check_fan(&g, &cones);
    let fan = build_fan(&g, &pair, cones.clone());
    emit_json(
        common,
        &json!({
            "spec": g.spec().to_string(),
            "cones": per_cone,
            "report": report,
            "fan": fan.as_ref().ok().map(|f| f.record(&g)),
        }),
    )?;
    fan.map(|_| ()).map_err(Failure::from)
}

fn cmd_verify(common: &Common) -> Outcome {
    let g = load(common)?;
    let cfg = VerifyConfig {
        oracle_cap: common.oracle_cap,
        samples: common.samples,
        seed: common.seed,
        max_pairs: common.max_pairs,
    };
    let report = verify(&g, &cfg)?;
    eprintln!("{report}");
    emit_json(
        common,
        &serde_json::to_value(&report).expect("report serializes"),
    )?;
    match report.first_failure() {
        None => Ok(()),
        Some(c) => Err(Failure::Verification(format!("{}: {}", c.name, c.detail))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Group(c) => cmd_group(c),
        Command::Quiver { common, json } => cmd_quiver(common, *json),
        Command::FixedPoints(c) => cmd_fixed_points(c),
        Command::Fan(c) => cmd_fan(c),
        Command::Verify(c) => cmd_verify(c),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
