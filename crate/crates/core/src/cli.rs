//! Command-line interface. Every command prints one JSON document with a
//! `schema_version` field; `--pretty` prints it as an indented table instead.

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::catalog::{self, laurent_token, Kind, OracleOutcome};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::johnson_morita::jm_check;
use crate::lefschetz::{alexander_report, dim_v, fibonacci_tqft_dim, Formula};
use crate::limits::Limits;
use crate::modular::{y_expand, ModularContext, Variant};
use crate::skein::{cut_bound_report, homology_from_linking, quantum_order, rt_invariant_5};
use crate::symplectic::TwistWord;

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_PARSE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;
/// Largest prime accepted on the command line.
pub const MAX_P: u32 = 13;

#[derive(Debug, Parser)]
#[command(name = "ltqft", version, about = "Jacobian TQFT, modular Lefschetz components and SO(3) invariants at a fifth root of unity")]
pub struct Cli {
    /// Indented human-readable output.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Resource limits, e.g. `genus=8,strands=24`.
    #[arg(long, global = true, value_name = "genus=G,strands=S")]
    pub limits: Option<String>,
    /// Run every loop on the calling thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormulaArg {
    Fn,
    Lefschetz,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Alexander polynomial of the mapping torus of a twist word.
    Alexander {
        #[arg(long)]
        genus: usize,
        /// Word file or `catalog:NAME`.
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value = "both")]
        formula: FormulaArg,
    },
    /// Mod-p image `Σ_k [k]_{±ζ} trace V̄^(k)`; `--sign` is the sign in `[k]_{±ζ}`.
    ModularAlexander {
        #[arg(long)]
        p: u32,
        #[arg(long, allow_hyphen_values = true)]
        sign: String,
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        word: String,
    },
    /// Exactness of the complex C(p, k) over every weight space.
    ComplexCheck {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        genus: usize,
    },
    /// Dimensions of the Lefschetz components, and of their mod-p quotients with `--p`.
    Dims {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        p: Option<u32>,
    },
    /// SO(3) invariant at ζ₅ of the surgered manifold.
    Rt5 {
        /// Diagram file or `catalog:NAME`.
        #[arg(long)]
        link: String,
    },
    /// (ζ₅ − 1)-adic order of the invariant.
    QuantumOrder {
        #[arg(long)]
        link: String,
    },
    /// Checks a claimed cut number against the quantum order.
    CutBound {
        #[arg(long)]
        link: String,
        #[arg(long)]
        claimed_cut: Option<u32>,
    },
    /// Johnson–Morita extension checks on random pairs.
    JmCheck {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        genus: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Recomputes derived catalog values with the brute-force evaluators.
    Oracle {
        /// Restrict to one catalog entry.
        #[arg(long)]
        entry: Option<String>,
    },
    /// Lists the catalog with expected values.
    CatalogList,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::LimitExceeded(_) | Error::GenusTooLarge(_) => EXIT_LIMIT,
        Error::Parse(_)
        | Error::MalformedDiagram(_)
        | Error::UnknownEntry(_)
        | Error::InvalidArgument(_)
        | Error::GenusMismatch(..)
        | Error::DegreeOutOfRange { .. } => EXIT_PARSE,
        _ => EXIT_INTERNAL,
    }
}

fn load_word(arg: &str, genus: usize, limits: &Limits) -> Result<TwistWord> {
    limits.check_genus(genus)?;
    let w = catalog::resolve_word(arg)?;
    if w.genus() != genus {
        return Err(Error::GenusMismatch(genus, w.genus()));
    }
    Ok(w)
}

fn check_p(p: u32) -> Result<()> {
    if p > MAX_P {
        return Err(Error::LimitExceeded(format!("p = {p} exceeds {MAX_P}")));
    }
    Ok(())
}

fn parse_sign(s: &str) -> Result<Variant> {
    // `+` is `[k]_{+ζ}`, which gives the minus image
    match s {
        "+" => Ok(Variant::Minus),
        "-" => Ok(Variant::Plus),
        _ => Err(Error::Parse(format!("sign must be + or -, got `{s}`"))),
    }
}

fn order_json(o: Option<u32>) -> Value {
    match o {
        Some(o) => json!(o),
        None => json!("inf"),
    }
}

/// Runs a parsed command and returns its JSON payload.
pub fn execute(cli: &Cli) -> Result<Value> {
    let limits = match &cli.limits {
        Some(s) => Limits::parse(s)?,
        None => Limits::default(),
    };
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    let mut out = match &cli.command {
        Command::Alexander { genus, word, formula } => {
            let w = load_word(word, *genus, &limits)?;
            let f = match formula {
                FormulaArg::Fn => Formula::Fn,
                FormulaArg::Lefschetz => Formula::Lefschetz,
                FormulaArg::Both => Formula::Both,
            };
            let r = alexander_report(&w.to_sp()?, f)?;
            json!({
                "command": "alexander",
                "genus": r.genus,
                "raw": laurent_token(&r.raw),
                "normalized": laurent_token(&r.normalized),
                "fn_formula": r.fn_formula.as_ref().map(laurent_token),
                "lefschetz_formula": r.lefschetz_formula.as_ref().map(laurent_token),
                "formulas_agree": r.formulas_agree,
            })
        }
        Command::ModularAlexander { p, sign, genus, word } => {
            check_p(*p)?;
            let variant = parse_sign(sign)?;
            let w = load_word(word, *genus, &limits)?;
            let ctx = ModularContext::new(*genus, exec)?;
            let v = ctx.modular_alexander(&w.to_sp()?, *p, variant)?;
            json!({
                "command": "modular-alexander",
                "p": p,
                "sign": sign,
                "variant": match variant { Variant::Plus => "plus", Variant::Minus => "minus" },
                "substitution": match variant { Variant::Plus => "t = zeta_p, q = -zeta_p", Variant::Minus => "t = -zeta_p, q = zeta_p" },
                "genus": genus,
                "y_coeffs": y_expand(&v),
            })
        }
        Command::ComplexCheck { p, k, genus } => {
            limits.check_genus(*genus)?;
            check_p(*p)?;
            let r = ModularContext::new(*genus, exec)?.complex_check(*p, *k)?;
            let mut v = serde_json::to_value(&r).map_err(|e| Error::Internal(e.to_string()))?;
            v["command"] = json!("complex-check");
            v
        }
        Command::Dims { genus, p } => {
            limits.check_genus(*genus)?;
            let mut v = Map::new();
            for k in 1..=genus + 1 {
                v.insert(k.to_string(), json!(dim_v(*genus, k)));
            }
            let mut doc = json!({"command": "dims", "genus": genus, "V": v});
            if let Some(p) = p {
                check_p(*p)?;
                let ctx = ModularContext::new(*genus, exec)?;
                let mut vb = Map::new();
                for k in 1..(*p as usize).min(genus + 2) {
                    let d = ctx.vbar_dim(k, *p)?;
                    vb.insert(k.to_string(), json!({"rank_gram": d.rank_gram, "alternating_sum": d.alternating_sum}));
                }
                doc["p"] = json!(p);
                doc["Vbar"] = Value::Object(vb);
                if *p == 5 {
                    doc["fibonacci_dim"] = json!(fibonacci_tqft_dim(*genus as u32));
                }
            }
            doc
        }
        Command::Rt5 { link } | Command::QuantumOrder { link } => {
            let d = catalog::resolve_link(link)?;
            let v = rt_invariant_5(&d, &limits, exec)?;
            let h = homology_from_linking(&d)?;
            let name = if matches!(cli.command, Command::Rt5 { .. }) { "rt5" } else { "quantum-order" };
            json!({
                "command": name,
                "link": d.name,
                "value": v.0,
                "order": order_json(quantum_order(&v)),
                "det_h1": h.det_h1,
                "beta1": h.beta1,
            })
        }
        Command::CutBound { link, claimed_cut } => {
            let d = catalog::resolve_link(link)?;
            let r = cut_bound_report(&d, *claimed_cut, &limits, exec)?;
            json!({
                "command": "cut-bound",
                "link": r.name,
                "value": r.value.0,
                "order": order_json(r.order),
                "beta1": r.beta1,
                "det_h1": r.det_h1,
                "claimed_cut": r.claimed_cut,
                "cut_bound_holds": r.cut_bound_holds,
                "s1xs2_order": r.s1xs2_order,
                "ratio_bound_holds": r.ratio_bound_holds,
            })
        }
        Command::JmCheck { p, k, genus, trials, seed } => {
            limits.check_genus(*genus)?;
            check_p(*p)?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let r = jm_check(*genus, *k, *p, *trials, &mut rng, exec)?;
            let mut v = serde_json::to_value(&r).map_err(|e| Error::Internal(e.to_string()))?;
            v["command"] = json!("jm-check");
            v["seed"] = json!(seed);
            v
        }
        Command::Oracle { entry } => {
            let names: Vec<String> = match entry {
                Some(n) => vec![n.clone()],
                None => catalog::names().into_iter().map(String::from).collect(),
            };
            let mut results = Vec::new();
            let mut all_ok = true;
            for n in &names {
                let e = catalog::load(n)?;
                for o in catalog::oracle_check(&e, &limits, exec)? {
                    all_ok &= o.outcome != OracleOutcome::Mismatch;
                    results.push(serde_json::to_value(&o).map_err(|e| Error::Internal(e.to_string()))?);
                }
            }
            json!({"command": "oracle", "checks": results, "all_match": all_ok})
        }
        Command::CatalogList => {
            let entries: Vec<Value> = catalog::list()?
                .into_iter()
                .map(|e| {
                    let expected: Vec<Value> = e
                        .expected
                        .iter()
                        .map(|x| json!({"quantity": x.quantity, "value": x.value, "provenance": x.provenance.to_string()}))
                        .collect();
                    json!({
                        "name": e.name,
                        "kind": match e.kind { Kind::FramedLink => "framed-link", Kind::TwistWord => "twist-word" },
                        "expected": expected,
                    })
                })
                .collect();
            json!({"command": "catalog-list", "entries": entries})
        }
    };
    out["schema_version"] = json!(SCHEMA_VERSION);
    Ok(out)
}

/// Renders the payload; JSON keys come out sorted.
pub fn render(v: &Value, pretty: bool) -> String {
    if pretty {
        let mut s = String::new();
        table(v, 0, &mut s);
        s
    } else {
        v.to_string()
    }
}

fn table(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if x.is_object() || x.as_array().is_some_and(|a| a.iter().any(|y| y.is_object())) {
                    out.push_str(&format!("{pad}{k}:\n"));
                    table(x, indent + 1, out);
                } else {
                    out.push_str(&format!("{pad}{k:<24} {x}\n"));
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                out.push_str(&format!("{pad}[{i}]\n"));
                table(x, indent + 1, out);
            }
        }
        x => out.push_str(&format!("{pad}{x}\n")),
    }
}

/// Parses `argv`, runs, prints and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(v) => {
            println!("{}", render(&v, cli.pretty));
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
