use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use hyperweier::corpus::{corpus_to_json, generate_corpus, generate_simple, Counts};
use hyperweier::globalmodel::{
    analyze, bad_primes, AssembleOptions, SynthOptions, DEFAULT_MOBIUS_BUDGET,
};
use hyperweier::json::{
    class_group_to_json, curve_from_json, curve_to_json, elem_from_json, elem_to_json,
    field_from_flag, field_to_json, form_to_json, ideal_to_json, local_model_to_json,
    report_to_json, to_line, with_schema, CurveInput,
};
use hyperweier::localmin::{minimize_at_with, minimize_pointed_at, SearchOptions, DEFAULT_NODE_CAP};
use hyperweier::quadfield::{
    find_field_with_class_element_of_order, primes_above, ClassGroup, FieldSpec, FractionalIdeal,
};
use hyperweier::weier::{power_cover, quadratic_twist};
use hyperweier::{Error, Result};

/// Global integral Weierstrass equations for hyperelliptic curves.
#[derive(Parser, Debug)]
#[command(name = "weier", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct CurveArgs {
    /// Curve JSON: a file path, inline JSON, or "-" for stdin.
    #[arg(default_value = "-")]
    input: String,
    /// Field for curves that do not name one ("Q" or "imquad:-23").
    #[arg(long)]
    field: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Local models, classes and existence verdicts, with a global equation when one exists.
    Analyze {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        pointed: bool,
        #[arg(long, default_value_t = DEFAULT_MOBIUS_BUDGET)]
        mobius_budget: usize,
        #[arg(long, env = "WEIER_NODE_CAP", default_value_t = DEFAULT_NODE_CAP)]
        node_cap: usize,
    },
    /// Minimal local models at one rational prime, or at every bad prime.
    Minimize {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        prime: Option<u64>,
        /// Residue of omega picking one of two split primes.
        #[arg(long, requires = "prime", allow_hyphen_values = true)]
        s: Option<i64>,
        #[arg(long)]
        pointed: bool,
        #[arg(long, env = "WEIER_NODE_CAP", default_value_t = DEFAULT_NODE_CAP)]
        node_cap: usize,
    },
    /// Class group of Q(sqrt d).
    Classgroup {
        #[arg(short, allow_hyphen_values = true)]
        d: i64,
    },
    /// Discriminant of an equation.
    Disc {
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// Quadratic twist by delta.
    Twist {
        #[command(flatten)]
        curve: CurveArgs,
        /// A rational string, or a JSON pair [a, b] over an imaginary quadratic field.
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
    },
    /// The cover y^2 + Q(x^d) y = P(x^d), after scaling x by alpha.
    Cover {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(short)]
        d: usize,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        alpha: String,
    },
    /// Smallest |d| whose class group has an element of order n.
    Findfield {
        #[arg(short)]
        n: usize,
        #[arg(long, default_value_t = 2000)]
        max_d: i64,
    },
    /// Reproducible test curves.
    Corpus {
        #[arg(long)]
        seed: u64,
        /// Draw this many random curves over Q instead of the full corpus.
        #[arg(long, requires = "genus")]
        count: Option<usize>,
        #[arg(long, requires = "count")]
        genus: Option<usize>,
        /// Write one curve file per entry into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ObstructionNonSquareBundle | Error::ObstructionWClass => 2,
        Error::SearchBudgetExceeded(_) => 3,
        _ => 1,
    }
}

fn error_kind(e: &Error) -> String {
    let s = format!("{e:?}");
    s.split(['(', ' ']).next().unwrap_or_default().to_string()
}

fn error_json(e: &Error) -> Value {
    with_schema(json!({"error": {"kind": error_kind(e), "message": e.to_string()}}))
}

fn read_input(input: &str) -> Result<String> {
    let t = input.trim_start();
    if input == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(s)
    } else if t.starts_with('{') {
        Ok(input.to_string())
    } else {
        fs::read_to_string(input).map_err(|e| Error::Parse(format!("{input}: {e}")))
    }
}

fn read_curve(args: &CurveArgs) -> Result<CurveInput> {
    let flag = args.field.as_deref().map(field_from_flag).transpose()?;
    let text = read_input(&args.input)?;
    let mut v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    if let Some(f) = flag {
        match v.get("field") {
            None => {
                if let Value::Object(m) = &mut v {
                    m.insert("field".into(), field_to_json(f));
                }
            }
            Some(existing) if *existing != field_to_json(f) => {
                return Err(Error::Parse(format!("--field {f} disagrees with the curve's field")));
            }
            Some(_) => {}
        }
    } else if v.get("field").is_none() {
        if let Value::Object(m) = &mut v {
            m.insert("field".into(), field_to_json(FieldSpec::Rational));
        }
    }
    curve_from_json(&v)
}

fn parse_elem(field: FieldSpec, s: &str) -> Result<hyperweier::quadfield::KElement> {
    let v = match serde_json::from_str::<Value>(s) {
        Ok(v @ Value::Array(_)) => v,
        _ => Value::String(s.to_string()),
    };
    elem_from_json(field, &v)
}

/// The JSON document and the exit code.
fn run(cmd: Command) -> Result<(Value, u8)> {
    match cmd {
        Command::Analyze { curve, pointed, mobius_budget, node_cap } => {
            let c = read_curve(&curve)?;
            let pointed = pointed || c.equation.is_pointed();
            let opts = SynthOptions {
                assemble: AssembleOptions { pointed, node_cap, overrides: c.local_models },
                mobius_budget,
            };
            let report = analyze(&c.equation, &opts)?;
            let code = report.synthesis_error.as_ref().map_or(0, exit_code);
            Ok((with_schema(report_to_json(&report)), code))
        }
        Command::Minimize { curve, prime, s, pointed, node_cap } => {
            let c = read_curve(&curve)?;
            let eq = if pointed { c.equation.with_pointed(true)? } else { c.equation };
            let field = eq.field();
            let primes = match prime {
                None => bad_primes(&eq)?,
                Some(p) => {
                    let mut above = primes_above(field, &p.into());
                    if above.is_empty() {
                        return Err(Error::Parse(format!("{p} is not prime")));
                    }
                    if let Some(s) = s {
                        above.retain(|q| q.omega_residue() == Some(&s.into()));
                        if above.is_empty() {
                            return Err(Error::Parse(format!("no prime above {p} with s = {s}")));
                        }
                    }
                    above
                }
            };
            let search = SearchOptions { node_cap };
            let mut out = Vec::with_capacity(primes.len());
            for p in &primes {
                let lm = if pointed { minimize_pointed_at(&eq, p)? } else { minimize_at_with(&eq, p, search)? };
                out.push(local_model_to_json(&lm));
            }
            Ok((with_schema(json!({"curve": curve_to_json(&eq), "local_models": out})), 0))
        }
        Command::Classgroup { d } => {
            let field = FieldSpec::imquad(d)?;
            Ok((with_schema(class_group_to_json(&ClassGroup::new(field))), 0))
        }
        Command::Disc { curve } => {
            let c = read_curve(&curve)?;
            let eq = c.equation;
            let field = eq.field();
            let delta = eq.discriminant()?;
            let ideal = FractionalIdeal::principal(&delta)?;
            Ok((
                with_schema(json!({
                    "discriminant": elem_to_json(&delta, field),
                    "norm": hyperweier::rat::to_string(&delta.norm()),
                    "ideal": ideal_to_json(&ideal),
                })),
                0,
            ))
        }
        Command::Twist { curve, delta } => {
            let c = read_curve(&curve)?;
            let delta = parse_elem(c.equation.field(), &delta)?;
            let e = quadratic_twist(&c.equation, &delta)?;
            Ok((with_schema(curve_to_json(&e)), 0))
        }
        Command::Cover { curve, d, alpha } => {
            let c = read_curve(&curve)?;
            let alpha = parse_elem(c.equation.field(), &alpha)?;
            let e = power_cover(&c.equation, d, &alpha)?;
            Ok((with_schema(curve_to_json(&e)), 0))
        }
        Command::Findfield { n, max_d } => {
            let (field, form) = find_field_with_class_element_of_order(n, max_d)?;
            let cg = ClassGroup::new(field);
            let d = match field {
                FieldSpec::ImQuad { d } => d,
                FieldSpec::Rational => 1,
            };
            Ok((
                with_schema(json!({
                    "d": d,
                    "field": field_to_json(field),
                    "order": n,
                    "form": form_to_json(&form),
                    "class_number": cg.order(),
                    "class_structure": cg.structure(),
                })),
                0,
            ))
        }
        Command::Corpus { seed, count, genus, out } => {
            let entries = match (count, genus) {
                (Some(n), Some(g)) => generate_simple(seed, n, g),
                _ => generate_corpus(seed, Counts::default()),
            };
            match out {
                None => Ok((corpus_to_json(seed, &entries), 0)),
                Some(dir) => {
                    fs::create_dir_all(&dir).map_err(|e| Error::Parse(format!("{}: {e}", dir.display())))?;
                    let mut written = Vec::with_capacity(entries.len());
                    for e in &entries {
                        let path = dir.join(format!("{}.json", e.label));
                        let doc = with_schema(json!({
                            "label": e.label,
                            "family": e.family.name(),
                            "curve": curve_to_json(&e.curve),
                        }));
                        fs::write(&path, to_line(&doc)).map_err(|err| Error::Parse(format!("{}: {err}", path.display())))?;
                        written.push(path.display().to_string());
                    }
                    Ok((with_schema(json!({"seed": seed, "written": written})), 0))
                }
            }
        }
    }
}

fn emit(v: &Value) {
    let mut out = io::stdout().lock();
    let _ = out.write_all(to_line(v).as_bytes());
    let _ = out.flush();
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                e.exit();
            }
            let _ = e.print();
            emit(&error_json(&Error::Parse(e.kind().to_string())));
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok((v, code)) => {
            emit(&v);
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("weier: {e}");
            emit(&error_json(&e));
            ExitCode::from(exit_code(&e))
        }
    }
}
