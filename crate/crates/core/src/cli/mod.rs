//! Command-line front end. Inputs are builtin names or JSON (inline or a
//! file path); every command produces a [`RunReport`].

pub mod random;
mod report;
pub mod suite;

use std::ffi::OsString;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cohomology::cohomology;
use crate::gmodules::{coaugmentation_quotient, FiniteGroup, GModule, GModuleError};
use crate::inseparable::{check_w_identities, desk_scale_report};
use crate::picard::{
    conductor_square_pic, descent_kernel, group_ring_pic, kernel_torsion_bound_check, pic_torsion,
    ConductorSquareSpec, UnitModel,
};
use crate::zlattice::{FgAbelianGroup, IntMatrix};

pub use report::{render_text, Check, CommandError, ExitStatus, RunReport};

#[derive(Debug, Parser)]
#[command(name = "pickernel", version, about = "Group cohomology and Picard groups in exact arithmetic")]
#[command(arg_required_else_help = true)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Run a named acceptance suite instead of a command.
    #[arg(long, value_enum)]
    pub suite: Option<SuiteName>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteName {
    Paper,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hⁿ(G, M) for n ≤ 2.
    Cohomology {
        /// Builtin name (C6, D4, S3, Q8, ...), a JSON file or inline JSON.
        #[arg(long)]
        group: String,
        /// regular, trivial, coaugmentation, negation, a JSON file or inline JSON.
        #[arg(long)]
        module: String,
        #[arg(long)]
        degree: usize,
    },
    /// Descent kernel Ker[Pic(X) → Pic(Y)] = H¹(G, Γ(Y)*).
    Descent(DescentArgs),
    /// Picard group of a conductor square.
    Conductor {
        #[arg(long, value_enum)]
        family: Family,
        /// Q or Z[1/m], for the node.
        #[arg(long)]
        ring: Option<String>,
        /// F_q, for the cusp.
        #[arg(long)]
        field: Option<String>,
        /// Also report the n-torsion subgroup.
        #[arg(long)]
        torsion: Option<u64>,
    },
    /// Log-derivative separation of the classes M(a)^r in characteristic p.
    Inseparable {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
    },
}

#[derive(Debug, Args)]
#[group(skip)]
#[command(group = ArgGroup::new("source").required(true).multiple(false))]
pub struct DescentArgs {
    #[arg(long, value_enum, group = "source")]
    pub example: Option<Example>,
    /// K[L] for the coaugmentation quotient L of ZG.
    #[arg(long, group = "source")]
    pub group_ring: Option<String>,
    /// A unit model as a JSON file or inline JSON.
    #[arg(long, group = "source")]
    pub model: Option<String>,
    /// Check that the kernel is killed by this integer.
    #[arg(long)]
    pub bound: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Example {
    Circle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Node,
    Cusp,
}

/// A successful command: its result value and checks.
pub struct Outcome {
    pub result: Value,
    pub checks: Vec<Check>,
}

/// Parses `args` (program name first), runs, prints and returns the exit
/// code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitStatus::InputError.code() } else { 0 };
        }
    };
    if cli.suite.is_some() {
        if cli.command.is_some() {
            eprintln!("error: --suite cannot be combined with a subcommand");
            return ExitStatus::InputError.code();
        }
        let outcomes = suite::run_paper_suite();
        match cli.format {
            Format::Json => println!("{}", serde_json::to_string_pretty(&outcomes).expect("plain data")),
            Format::Text => {
                for o in &outcomes {
                    println!("{}", o.line());
                }
            }
        }
        return if outcomes.iter().all(|o| o.passed) { 0 } else { ExitStatus::CheckFailed.code() };
    }
    let Some(command) = cli.command else {
        eprintln!("error: a subcommand or --suite is required (see --help)");
        return ExitStatus::InputError.code();
    };
    let report = execute(&command);
    match cli.format {
        Format::Json => println!("{}", report.render_json()),
        Format::Text => print!("{}", report.render_text()),
    }
    if let Some(e) = &report.error {
        eprintln!("error: {e}");
    }
    report.exit_status.code()
}

pub fn execute(command: &Command) -> RunReport {
    let start = Instant::now();
    let (name, inputs, outcome) = match command {
        Command::Cohomology { group, module, degree } => (
            "cohomology",
            json!({"group": group, "module": module, "degree": degree}),
            cmd_cohomology(group, module, *degree),
        ),
        Command::Descent(args) => (
            "descent",
            json!({"example": args.example.map(|_| "circle"), "group_ring": args.group_ring,
                   "model": args.model, "bound": args.bound}),
            cmd_descent(args),
        ),
        Command::Conductor { family, ring, field, torsion } => (
            "conductor",
            json!({"family": family_name(*family), "ring": ring, "field": field, "torsion": torsion}),
            cmd_conductor(*family, ring.as_deref(), field.as_deref(), *torsion),
        ),
        Command::Inseparable { p, q } => ("inseparable", json!({"p": p, "q": q}), cmd_inseparable(*p, *q)),
    };
    let inputs = strip_nulls(inputs);
    let elapsed = (start.elapsed().as_secs_f64() * 1e6).round() / 1000.0;
    match outcome {
        Ok(o) => RunReport::completed(name, inputs, o.result, o.checks, elapsed),
        Err(e) => RunReport::failed(name, inputs, e, elapsed),
    }
}

fn strip_nulls(v: Value) -> Value {
    match v {
        Value::Object(m) => Value::Object(m.into_iter().filter(|(_, v)| !v.is_null()).collect()),
        v => v,
    }
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::Node => "node",
        Family::Cusp => "cusp",
    }
}

pub fn cmd_cohomology(group: &str, module: &str, degree: usize) -> Result<Outcome, CommandError> {
    let g = load_group(group)?;
    let m = load_module(&g, module)?;
    let h = cohomology(&m, degree)?;
    Ok(Outcome { result: to_value(&h), checks: Vec::new() })
}

pub fn cmd_descent(args: &DescentArgs) -> Result<Outcome, CommandError> {
    if let Some(name) = &args.group_ring {
        let g = load_group(name)?;
        let pic = group_ring_pic(&g)?;
        let mut checks = vec![
            Check::new("matches_abelianization", pic.matches_abelianization),
            Check::new("paths_agree", pic.paths_agree()),
        ];
        let mut result = to_value(&pic);
        if let Some(d) = args.bound {
            let holds = pic.pic.annihilated_by(&d.into());
            result["bound_holds"] = Value::Bool(holds);
            checks.push(Check::new("bound_holds", holds));
        }
        return Ok(Outcome { result, checks });
    }
    let model = match (&args.example, &args.model) {
        (Some(Example::Circle), _) => UnitModel::circle(),
        (None, Some(src)) => load_unit_model(src)?,
        (None, None) => return Err(CommandError::input("one of --example, --group-ring or --model is required")),
    };
    let kernel = descent_kernel(&model)?;
    let d = args.bound.unwrap_or(model.group().order() as u64);
    let holds = kernel_torsion_bound_check(&model, d)?;
    Ok(Outcome {
        result: json!({"descent_kernel": to_value(&kernel), "bound": d, "bound_holds": holds}),
        checks: vec![Check::new("bound_holds", holds)],
    })
}

pub fn cmd_conductor(
    family: Family,
    ring: Option<&str>,
    field: Option<&str>,
    torsion: Option<u64>,
) -> Result<Outcome, CommandError> {
    let arg = match (family, ring, field) {
        (Family::Node, Some(r), None) => r,
        (Family::Cusp, None, Some(f)) => f,
        (Family::Node, _, _) => return Err(CommandError::input("the node family takes --ring only")),
        (Family::Cusp, _, _) => return Err(CommandError::input("the cusp family takes --field only")),
    };
    let spec = ConductorSquareSpec::parse(family_name(family), arg)?;
    let pic = conductor_square_pic(spec)?;
    let mut result = json!({"pic": to_value(&pic)});
    if let Some(g) = pic.as_finite() {
        result["group"] = to_value(&g);
    }
    if let Some(n) = torsion {
        result["torsion"] = to_value(&pic_torsion(&pic, n)?);
    }
    Ok(Outcome { result, checks: Vec::new() })
}

pub fn cmd_inseparable(p: u64, q: u64) -> Result<Outcome, CommandError> {
    let identities = check_w_identities(p, q)?;
    let report = desk_scale_report(p, q)?;
    let expected_degree = (report.r * (q - 2)) as usize;
    let checks = vec![
        Check::new("identities", identities.all()),
        Check::new("pair_degrees", report.pairs.iter().all(|s| s.z_degree == expected_degree)),
        Check::new("class_count", report.class_count == p as usize),
    ];
    let mut result = to_value(&report);
    result["identities"] = to_value(&identities);
    result["expected_z_degree"] = json!(expected_degree);
    Ok(Outcome { result, checks })
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("plain data")
}

/// Inline JSON if it starts with `{`, else the contents of an existing file.
fn json_source(source: &str) -> Result<Option<String>, CommandError> {
    let s = source.trim_start();
    if s.starts_with('{') {
        return Ok(Some(source.to_string()));
    }
    let path = Path::new(source);
    if path.is_file() {
        return std::fs::read_to_string(path)
            .map(Some)
            .map_err(|e| CommandError::input(format!("cannot read {source}: {e}")));
    }
    Ok(None)
}

/// A builtin name, a JSON file or inline JSON `{"order", "table"}`.
pub fn load_group(source: &str) -> Result<Arc<FiniteGroup>, CommandError> {
    match json_source(source)? {
        Some(text) => Ok(Arc::new(FiniteGroup::from_json(&text)?)),
        None => Ok(Arc::new(FiniteGroup::builtin(source)?)),
    }
}

/// A named module or the JSON module schema, over `g`.
pub fn load_module(g: &Arc<FiniteGroup>, source: &str) -> Result<GModule, CommandError> {
    match source.trim().to_ascii_lowercase().as_str() {
        "regular" => return Ok(GModule::regular(g)),
        "trivial" => return Ok(GModule::trivial(g, FgAbelianGroup::free(1))),
        "coaugmentation" => return Ok(coaugmentation_quotient(g).0),
        "negation" => {
            if g.order() != 2 {
                return Err(CommandError::input("the negation lattice needs a group of order 2"));
            }
            let action = vec![IntMatrix::identity(1), IntMatrix::scalar(1, -1)];
            return Ok(GModule::new(g.clone(), FgAbelianGroup::free(1), action)?);
        }
        _ => {}
    }
    match json_source(source)? {
        Some(text) => Ok(GModule::from_json(g.clone(), &text)?),
        None => Err(CommandError::input(format!(
            "unknown module {source:?}: expected regular, trivial, coaugmentation, negation, a JSON file or inline JSON"
        ))),
    }
}

/// `{"group", "hilbert90_trivial_parts", "lattice_part", "finite_part"}`;
/// `group` is a builtin name or a group object, the parts use the module
/// schema and may be omitted.
pub fn load_unit_model(source: &str) -> Result<UnitModel, CommandError> {
    let text = json_source(source)?.ok_or_else(|| CommandError::input(format!("no such model file {source:?}")))?;
    let v: Value = serde_json::from_str(&text).map_err(GModuleError::from_json)?;
    let obj = v.as_object().ok_or_else(|| CommandError::input("unit model must be a JSON object"))?;
    if let Some(k) = obj
        .keys()
        .find(|k| !["group", "hilbert90_trivial_parts", "lattice_part", "finite_part"].contains(&k.as_str()))
    {
        return Err(CommandError::input(format!("schema error: unknown field {k:?} in unit model")));
    }
    let g = match obj.get("group") {
        Some(Value::String(name)) => load_group(name)?,
        Some(g @ Value::Object(_)) => Arc::new(FiniteGroup::from_json(&g.to_string())?),
        _ => return Err(CommandError::input("schema error: unit model needs a group")),
    };
    let parts = match obj.get("hilbert90_trivial_parts") {
        None => 0,
        Some(v) => v
            .as_u64()
            .ok_or_else(|| CommandError::input("schema error: hilbert90_trivial_parts must be a count"))?
            as usize,
    };
    let part = |key: &str| -> Result<GModule, CommandError> {
        match obj.get(key) {
            None | Some(Value::Null) => Ok(GModule::zero(&g)),
            Some(m) => Ok(GModule::from_json(g.clone(), &m.to_string())?),
        }
    };
    Ok(UnitModel::new(g.clone(), parts, part("lattice_part")?, part("finite_part")?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_modules() {
        let s3 = load_group("S3").unwrap();
        assert_eq!(cmd_cohomology("S3", "coaugmentation", 1).unwrap().result, json!({"free_rank": 0, "invariant_factors": [2]}));
        assert_eq!(load_module(&s3, "regular").unwrap().rank(), 6);
        assert_eq!(load_module(&s3, "negation").unwrap_err().status, ExitStatus::InputError);
        assert_eq!(load_module(&s3, "bogus").unwrap_err().status, ExitStatus::InputError);
    }

    #[test]
    fn degree_cap() {
        let e = cmd_cohomology("C2", "regular", 3).err().unwrap();
        assert_eq!(e.status, ExitStatus::InputError);
        assert!(e.message.contains("degree capped at 2"));
    }

    #[test]
    fn inline_models() {
        let m = r#"{"group": "C2", "hilbert90_trivial_parts": 1,
                    "lattice_part": {"ambient_rank": 1, "relations": [], "action": {"1": [[-1]]}}}"#;
        let model = load_unit_model(m).unwrap();
        assert_eq!(descent_kernel(&model).unwrap(), FgAbelianGroup::cyclic(2));
        let bad = r#"{"group": "C2", "lattice_part": {"ambient_rank": 1, "relations": [], "action": {"1": [[2]]}}}"#;
        assert_eq!(load_unit_model(bad).unwrap_err().status, ExitStatus::Inconsistent);
        let e = load_unit_model("{\"group\": ").unwrap_err();
        assert!(e.message.contains("line 1"), "{}", e.message);
    }

    #[test]
    fn conductor_flags() {
        let o = cmd_conductor(Family::Node, Some("Z[1/2]"), None, Some(12)).unwrap();
        assert_eq!(o.result["torsion"], json!({"free_rank": 0, "invariant_factors": [4]}));
        let o = cmd_conductor(Family::Cusp, None, Some("F_4"), None).unwrap();
        assert_eq!(o.result["group"], json!({"free_rank": 0, "invariant_factors": [2, 2]}));
        assert!(cmd_conductor(Family::Cusp, Some("Q"), None, None).is_err());
    }
}
