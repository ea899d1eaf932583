//! `neargroup`: search, construct, verify and classify near-group categories.
//!
//! Exit status is 0 when the command succeeds and every check passes, 1 when
//! a verification fails or a search comes back empty, and 2 for usage or
//! input errors. Reports go to stdout, data files to `--out`.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use neargroup::associator::fixtures;
use neargroup::associator::{construct_standard, NearGroupData};
use neargroup::braiding::{is_symmetric, search_braidings, twist_solutions};
use neargroup::classify::{classify_family, Family};
use neargroup::field::{field_from_pi, is_isomorphic, pi_from_field, prime_power, GaloisField};
use neargroup::obstruction::{check_trivial_group_candidate, trivial_group_verdict, TrivialGroupCandidate};
use neargroup::pentagon::{oracle::oracle_report, verify_all, VerificationReport};
use neargroup::pi::{find_all_pi, Pi};
use neargroup::{AbelianGroup, Cyclotomic};

/// Version of every JSON document this tool prints or writes.
const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "neargroup", version, about = "Near-group fusion categories in exact arithmetic")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct PiSource {
    /// Group descriptor such as `Z4` or `Z2xZ2`.
    #[arg(long)]
    group: Option<String>,
    /// Field size `q`; uses `G = Z/(q-1)` and the π of `x ↦ (1-x)⁻¹`.
    #[arg(long)]
    field: Option<u32>,
    /// π in cycle notation over element names, e.g. `(g g^2 g^3)`.
    #[arg(long)]
    pi: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List every valid π on a group.
    SearchPi {
        #[arg(long)]
        group: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rebuild the field from π and compare it with `F_q`.
    BuildField {
        #[command(flatten)]
        src: PiSource,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the standard associator data and write it as JSON.
    Construct {
        #[command(flatten)]
        src: PiSource,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check associator data against every pentagon family.
    Verify {
        #[arg(long)]
        input: PathBuf,
        /// Also run the tree-composition pentagon oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Enumerate braidings of associator data.
    Braidings {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 60)]
        root_bound: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the classification row of a small fusion rule.
    Classify {
        /// One of Z2k1, Z3k2, Z4k3.
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 60)]
        root_bound: i64,
    },
    /// Decide the trivial-group case for a given k, or check candidate data.
    Obstruction {
        #[arg(long)]
        k: usize,
        /// Candidate `{k, lambda, mu}` to test against the determinant relations.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Write the worked example data sets as JSON files.
    Fixtures {
        #[arg(long)]
        out: PathBuf,
    },
}

/// An error that maps to exit status 2.
#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type CmdResult = Result<Outcome, InputError>;

/// Result of a command: whether it passed, its text form, and its JSON form.
struct Outcome {
    passed: bool,
    text: String,
    json: Value,
}

fn envelope(command: &str, passed: bool, body: Value) -> Value {
    let mut v = json!({ "schema_version": REPORT_SCHEMA_VERSION, "command": command, "passed": passed });
    if let (Value::Object(dst), Value::Object(src)) = (&mut v, body) {
        dst.extend(src);
    }
    v
}

fn read_json(path: &Path) -> Result<Value, InputError> {
    let text = fs::read_to_string(path).map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| InputError(format!("{} is not valid JSON: {e}", path.display())))
}

fn write_json(path: &Path, v: &Value) -> Result<(), InputError> {
    let text = serde_json::to_string_pretty(v)?;
    fs::write(path, text + "\n").map_err(|e| InputError(format!("cannot write {}: {e}", path.display())))
}

fn load_data(path: &Path) -> Result<NearGroupData, InputError> {
    Ok(NearGroupData::from_json(&read_json(path)?)?)
}

fn resolve_pi(src: &PiSource) -> Result<Pi, InputError> {
    match (&src.field, &src.group) {
        (Some(_), Some(_)) => Err(InputError("give either --field or --group, not both".into())),
        (Some(q), None) => {
            if src.pi.is_some() {
                return Err(InputError("--pi needs --group".into()));
            }
            Ok(pi_from_field(*q)?.1)
        }
        (None, Some(g)) => {
            let group = AbelianGroup::parse(g)?;
            match &src.pi {
                Some(p) => Ok(Pi::parse_cycles(&group, p)?),
                None => find_all_pi(&group)
                    .into_iter()
                    .next()
                    .ok_or_else(|| InputError(format!("no valid π exists on {g}"))),
            }
        }
        (None, None) => Err(InputError("one of --field or --group is required".into())),
    }
}

fn search_pi(group: &str, out: Option<&Path>) -> CmdResult {
    let g = AbelianGroup::parse(group)?;
    let all = find_all_pi(&g);
    let cycles: Vec<String> = all.iter().map(Pi::cycle_notation).collect();
    let body = json!({ "group": g, "count": all.len(), "pis": cycles });
    if let Some(path) = out {
        write_json(path, &body)?;
    }
    let mut text = format!("{} valid π on {}\n", all.len(), group);
    for c in &cycles {
        text.push_str(&format!("  {c}\n"));
    }
    Ok(Outcome { passed: !all.is_empty(), text, json: envelope("search-pi", !all.is_empty(), body) })
}

fn build_field(src: &PiSource, out: Option<&Path>) -> CmdResult {
    let pi = resolve_pi(src)?;
    let table = field_from_pi(&pi)?;
    let q = table.size() as u32;
    let iso = prime_power(q).is_some() && is_isomorphic(&table, &GaloisField::new(q)?);
    let body = json!({ "pi": pi.cycle_notation(), "size": q, "isomorphic_to_standard": iso, "table": table });
    if let Some(path) = out {
        write_json(path, &body)?;
    }
    let name = |x: usize| if x == 0 { "0".to_string() } else { pi.group().element_name(x - 1) };
    let mut text = format!("field of size {q} from π = {}; isomorphic to F_{q}: {iso}\n", pi.cycle_notation());
    for (title, t) in [("+", &table.add), ("*", &table.mul)] {
        text.push_str(&format!("{title}:\n"));
        for row in t {
            let cells: Vec<String> = row.iter().map(|&x| format!("{:>5}", name(x))).collect();
            text.push_str(&cells.join(""));
            text.push('\n');
        }
    }
    Ok(Outcome { passed: iso, text, json: envelope("build-field", iso, body) })
}

fn construct(src: &PiSource, out: &Path) -> CmdResult {
    let pi = resolve_pi(src)?;
    let data = construct_standard(&pi)?;
    write_json(out, &data.to_json(true))?;
    let text = format!("wrote standard data for {} (k = {}) to {}\n", pi.cycle_notation(), data.k(), out.display());
    let body = json!({ "pi": pi.cycle_notation(), "k": data.k(), "out": out.display().to_string() });
    Ok(Outcome { passed: true, text, json: envelope("construct", true, body) })
}

fn verify(input: &Path, oracle: bool) -> CmdResult {
    let data = load_data(input)?;
    let families = verify_all(&data);
    let oracle_rep: Option<VerificationReport> = oracle.then(|| oracle_report(&data));
    let passed = families.passed() && oracle_rep.as_ref().is_none_or(VerificationReport::passed);
    let mut text = families.render_text();
    if let Some(o) = &oracle_rep {
        text.push_str(&format!("oracle: {} words, {} failures\n", o.families.len(), o.failure_count()));
    }
    text.push_str(if passed { "PASS\n" } else { "FAIL\n" });
    let body = json!({ "families": families, "oracle": oracle_rep });
    Ok(Outcome { passed, text, json: envelope("verify", passed, body) })
}

fn cyclotomic_text(v: &Cyclotomic) -> String {
    neargroup::classify::root_label(v)
}

fn braidings(input: &Path, bound: i64, out: Option<&Path>) -> CmdResult {
    let data = load_data(input)?;
    let search = search_braidings(&data, bound)?;
    let mut records = Vec::new();
    let mut text = format!(
        "{} candidates from the reduced hexagons, {} braidings (root order bound {})\n",
        search.candidates.len(),
        search.braidings.len(),
        search.order_bound
    );
    for b in &search.braidings {
        let symmetric = is_symmetric(&data, b)?;
        let twists = twist_solutions(&data, b)?;
        let psi: Vec<String> = b.psi.iter().map(cyclotomic_text).collect();
        let thetas: Vec<String> = twists.iter().map(|t| cyclotomic_text(&t.theta_m)).collect();
        text.push_str(&format!(
            "  σ3(ε) = {}, ψ = ({}), symmetric: {symmetric}, twists θ_m: [{}]\n",
            cyclotomic_text(&b.sigma3_eps),
            psi.join(", "),
            thetas.join(", ")
        ));
        records.push(json!({
            "sigma3_eps": b.sigma3_eps,
            "psi": b.psi,
            "symmetric": symmetric,
            "twists": twists.iter().map(|t| json!({ "theta_m": t.theta_m })).collect::<Vec<_>>(),
        }));
    }
    let passed = !records.is_empty();
    let body = json!({
        "candidates": search.candidates.len(),
        "order_bound": search.order_bound,
        "braidings": records,
    });
    if let Some(path) = out {
        write_json(path, &envelope("braidings", passed, body.clone()))?;
    }
    Ok(Outcome { passed, text, json: envelope("braidings", passed, body) })
}

fn classify(family: &str, bound: i64) -> CmdResult {
    let family: Family = family.parse()?;
    let row = classify_family(family, bound)?;
    let text = row.render();
    let body = json!({
        "row": row,
        "text": {
            "monoidal": row.monoidal_text(),
            "braidings": row.braidings_text(),
            "balance": row.balance_text(),
            "symmetry": row.symmetry_text(),
        }
    });
    Ok(Outcome { passed: true, text, json: envelope("classify", true, body) })
}

fn obstruction(k: usize, input: Option<&Path>) -> CmdResult {
    let v = trivial_group_verdict(k)?;
    let label = match v.verdict {
        neargroup::obstruction::Verdict::Obstructed => "Obstructed",
        neargroup::obstruction::Verdict::NotObstructed => "NotObstructed",
    };
    let mut text = format!("k = {k}: {label}\n  {}\n", v.witness.summary());
    let mut passed = true;
    let mut candidate = Value::Null;
    if let Some(path) = input {
        let cand: TrivialGroupCandidate = serde_json::from_value(read_json(path)?)?;
        if cand.k != k {
            return Err(InputError(format!("candidate has k = {} but --k is {k}", cand.k)));
        }
        let cand = TrivialGroupCandidate::new(cand.k, cand.lambda, cand.mu)?;
        let rep = check_trivial_group_candidate(&cand)?;
        passed = rep.passed();
        text.push_str(&rep.render_text());
        candidate = serde_json::to_value(&rep)?;
    }
    let body = json!({ "k": k, "verdict": v.verdict, "witness": v.witness, "summary": v.witness.summary(), "candidate": candidate });
    Ok(Outcome { passed, text, json: envelope("obstruction", passed, body) })
}

fn write_fixtures(out: &Path) -> CmdResult {
    fs::create_dir_all(out).map_err(|e| InputError(format!("cannot create {}: {e}", out.display())))?;
    let zeta = |j| Cyclotomic::root_of_unity(3, j);
    let sets = [
        ("z2k1_xi1", fixtures::z2k1(Cyclotomic::one())?),
        ("z2k1_xi_zeta3", fixtures::z2k1(zeta(1))?),
        ("z2k1_xi_zeta3_sq", fixtures::z2k1(zeta(2))?),
        ("z3k2_xi1", fixtures::z3k2(1)?),
        ("z3k2_xi_minus1", fixtures::z3k2(-1)?),
        ("z4k3", fixtures::z4k3()?),
    ];
    let mut files = Vec::new();
    for (name, data) in &sets {
        let path = out.join(format!("{name}.json"));
        write_json(&path, &data.to_json(true))?;
        files.push(path.display().to_string());
    }
    let text = files.iter().map(|f| format!("wrote {f}\n")).collect();
    Ok(Outcome { passed: true, text, json: envelope("fixtures", true, json!({ "files": files })) })
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::SearchPi { group, out } => search_pi(group, out.as_deref()),
        Command::BuildField { src, out } => build_field(src, out.as_deref()),
        Command::Construct { src, out } => construct(src, out),
        Command::Verify { input, oracle } => verify(input, *oracle),
        Command::Braidings { input, root_bound, out } => braidings(input, *root_bound, out.as_deref()),
        Command::Classify { family, root_bound } => classify(family, *root_bound),
        Command::Obstruction { k, input } => obstruction(*k, input.as_deref()),
        Command::Fixtures { out } => write_fixtures(out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(o) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&o.json).expect("report serializes"));
            } else {
                print!("{}", o.text);
            }
            ExitCode::from(if o.passed { 0 } else { 1 })
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
