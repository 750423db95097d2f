use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use artin_core::coxeter::{CoxeterType, Family};
use artin_core::dual::{DualMonoid, NoncrossingPartition};
use artin_core::hecke::{HeckeAlgebra, KlTable};
use artin_core::mikado::svg::{partition_svg, wiring_svg, write_svg};
use artin_core::mikado::{count_mikado_a, count_mikado_b, type_b_letters_to_a, MikadoA};
use artin_core::tl::TemperleyLieb;
use artin_core::verify::{self, VerifyOptions, THEOREMS};
use artin_core::{BraidGroup, CoxeterElement, Error, Hecke, StandardCoxeterElement};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(name = "artin", version, about = "Exact computations and theorem sweeps for spherical Artin groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
struct GroupArgs {
    /// Family letter (A, B, D, I2, H3, F4) or a full descriptor such as A3 or I2(5).
    #[arg(long = "type")]
    ty: String,
    #[arg(long)]
    rank: Option<usize>,
    /// Dihedral parameter for I2.
    #[arg(long)]
    m: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a theorem sweep; `list` shows the ids.
    Verify {
        theorem: String,
        #[command(flatten)]
        group: GroupArgs,
        /// Generator order of one Coxeter element, 1-based, e.g. "1,2,3".
        #[arg(long)]
        coxeter: Option<String>,
        #[arg(long)]
        budget: Option<usize>,
        /// Also write the report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// List theorem ids and aliases.
    List,
    /// Count Mikado braids on n strands (A) or of type B_n.
    Count {
        #[arg(long = "type", value_enum)]
        ty: CountType,
        #[arg(long)]
        n: usize,
    },
    /// Garside normal form of a braid word, read from --word or stdin.
    NormalForm {
        #[command(flatten)]
        group: GroupArgs,
        /// JSON list of signed 1-based letters, e.g. "[-1,2,1]".
        #[arg(long)]
        word: Option<String>,
    },
    /// Lift a divisor of a Coxeter element to a simple dual braid.
    Embed {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        coxeter: String,
        /// A 1-based reduced word of the divisor; empty for the identity.
        #[arg(long, default_value = "")]
        divisor: String,
    },
    /// Render a braid word or a noncrossing partition (JSON) as SVG.
    Render {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Expand the image of a braid word in the C basis or the b_w basis.
    Expand {
        #[arg(long, value_enum)]
        basis: Basis,
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        word: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CountType {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
}

#[derive(Clone, Copy, ValueEnum)]
enum Basis {
    #[value(name = "C")]
    C,
    #[value(name = "TL")]
    Tl,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Resource(_) => EXIT_RESOURCE,
        Error::Io(_) | Error::Integrity(_) => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

fn group_type(args: &GroupArgs) -> artin_core::Result<CoxeterType> {
    let ty = args.ty.trim();
    match (ty, args.rank, args.m) {
        ("A", Some(n), _) => CoxeterType::a(n),
        ("B", Some(n), _) => CoxeterType::b(n),
        ("D", Some(n), _) => CoxeterType::d(n),
        ("I2", _, Some(m)) => CoxeterType::i2(m),
        ("A" | "B" | "D", None, _) => Err(Error::Parse(format!("type {ty} needs --rank"))),
        ("I2", _, None) => Err(Error::Parse("type I2 needs --m".into())),
        _ => ty.parse(),
    }
}

fn parse_list<T: std::str::FromStr>(s: &str) -> artin_core::Result<Vec<T>> {
    s.trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad list entry {t:?}"))))
        .collect()
}

fn ordering(s: &str) -> artin_core::Result<Vec<usize>> {
    parse_list::<usize>(s)?
        .into_iter()
        .map(|i| i.checked_sub(1).ok_or_else(|| Error::Parse("generators are 1-based".into())))
        .collect()
}

/// Writes pretty JSON to stdout; a closed pipe is not an error.
fn print(value: &Value) {
    let mut out = std::io::stdout().lock();
    let _ = serde_json::to_writer_pretty(&mut out, value).and_then(|()| writeln!(out).map_err(serde_json::Error::io));
}

fn run(cli: Cli) -> artin_core::Result<u8> {
    match cli.command {
        Command::Verify { theorem, group, coxeter, budget, json } => {
            let ty = group_type(&group)?;
            if budget.is_some() {
                eprintln!("warning: --budget raises the default size limits; sweeps may be slow");
            }
            let opts = VerifyOptions { ordering: coxeter.as_deref().map(ordering).transpose()?, budget };
            let start = Instant::now();
            let mut report = verify::verify(&theorem, ty, &opts)?;
            report.timing_ms = Some(start.elapsed().as_millis() as u64);
            let value = serde_json::to_value(&report).map_err(|e| Error::Integrity(e.to_string()))?;
            if let Some(path) = json {
                std::fs::write(path, serde_json::to_string_pretty(&value).expect("JSON values serialize"))?;
            }
            print(&value);
            Ok(if report.pass || report.evidence_only { 0 } else { EXIT_FAIL })
        }
        Command::List => {
            print(&serde_json::to_value(THEOREMS).expect("static table serializes"));
            Ok(0)
        }
        Command::Count { ty, n } => {
            let (name, count) = match ty {
                CountType::A => ("A", count_mikado_a(n)?),
                CountType::B => ("B", count_mikado_b(n)?),
            };
            print(&json!({ "type": name, "n": n, "count": count }));
            Ok(0)
        }
        Command::NormalForm { group, word } => {
            let ty = group_type(&group)?;
            let text = match word {
                Some(w) => w,
                None => {
                    let mut s = String::new();
                    std::io::stdin().read_to_string(&mut s)?;
                    s
                }
            };
            let letters: Vec<i32> = parse_list(&text)?;
            let b = BraidGroup::new(ty)?;
            let nf = b.normal_form(&letters)?;
            let nf_json = b.to_json(&nf);
            print(&json!({
                "group": ty.to_string(),
                "letters": letters,
                "inf": nf_json.inf,
                "factors": nf_json.factors,
                "rational": b.is_rational(&nf),
            }));
            Ok(0)
        }
        Command::Embed { group, coxeter, divisor } => {
            let ty = group_type(&group)?;
            let b = BraidGroup::new(ty)?;
            let g = b.group();
            let ord = ordering(&coxeter)?;
            let element = g.element_from_word(&ord)?;
            let dual = DualMonoid::new(&b, &StandardCoxeterElement { element, ordering: ord.clone() })?;
            let x = g.element_from_word(&ordering(&divisor)?)?;
            let nf = dual.embed_simple(x)?;
            let factors: Vec<Vec<usize>> = dual
                .t_reduced_factorization(x)?
                .into_iter()
                .map(|t| g.reduced_word(t).into_iter().map(|s| s + 1).collect())
                .collect();
            let nf_json = b.to_json(&nf);
            print(&json!({
                "group": ty.to_string(),
                "coxeter": ord.iter().map(|s| s + 1).collect::<Vec<_>>(),
                "divisor": g.reduced_word(x).into_iter().map(|s| s + 1).collect::<Vec<_>>(),
                "t_factorization": factors,
                "letters": b.to_letters(&nf),
                "normal_form": { "inf": nf_json.inf, "factors": nf_json.factors },
                "rational": b.is_rational(&nf),
            }));
            Ok(0)
        }
        Command::Render { input, out } => {
            let svg = render(&input)?;
            write_svg(&svg, &out)?;
            print(&json!({ "written": out.display().to_string() }));
            Ok(0)
        }
        Command::Expand { basis, group, word } => {
            let ty = group_type(&group)?;
            let letters: Vec<i32> = parse_list(&word)?;
            let b = BraidGroup::new(ty)?;
            b.check_letters(&letters)?;
            let g = b.group_arc().clone();
            let key = |w: CoxeterElement| -> String {
                let word = g.reduced_word(w);
                if word.is_empty() {
                    "e".into()
                } else {
                    word.iter().map(|s| (s + 1).to_string()).collect::<Vec<_>>().join(".")
                }
            };
            let (coeffs, positive) = match basis {
                Basis::C => {
                    let alg = HeckeAlgebra::new(g.clone());
                    let kl = KlTable::new(&alg)?;
                    let image: Hecke = alg.braid_image_a(&letters)?;
                    let exp = kl.expand_in_c(&image)?;
                    let positive = exp.values().all(|p| p.is_nonnegative());
                    (exp.into_iter().map(|(w, p)| (key(w), p.to_string())).collect::<Vec<_>>(), positive)
                }
                Basis::Tl => {
                    let tl = TemperleyLieb::new(g.clone())?;
                    let coords = tl.coordinates(&tl.omega(&letters)?);
                    let positive = coords.iter().all(|(&w, p)| {
                        if g.length(w) % 2 == 0 {
                            p.is_nonnegative()
                        } else {
                            (-p.clone()).is_nonnegative()
                        }
                    });
                    (coords.into_iter().map(|(w, p)| (key(w), p.to_string())).collect(), positive)
                }
            };
            let coefficients: serde_json::Map<String, Value> =
                coeffs.into_iter().map(|(k, v)| (k, Value::String(v))).collect();
            print(&json!({
                "group": ty.to_string(),
                "basis": match basis { Basis::C => "C", Basis::Tl => "TL" },
                "letters": letters,
                "coefficients": coefficients,
                "positive": positive,
            }));
            Ok(0)
        }
    }
}

/// A braid word `{"group", "letters"}` becomes a wiring diagram (types A and
/// B, the latter through `A_{2n−1}`); `{"sequence", "blocks"}` a partition.
fn render(input: &Path) -> artin_core::Result<String> {
    let text = std::fs::read_to_string(input)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    if value.get("blocks").is_some() {
        let p: NoncrossingPartition = serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
        if !p.is_noncrossing() {
            return Err(Error::Domain("partition is crossing".into()));
        }
        return Ok(partition_svg(&p));
    }
    let ty: CoxeterType = match value.get("group") {
        Some(Value::String(s)) => s.parse()?,
        Some(other) => serde_json::from_value(other.clone()).map_err(|e| Error::Parse(e.to_string()))?,
        None => return Err(Error::Parse("input needs \"group\" and \"letters\", or \"blocks\"".into())),
    };
    let letters: Vec<i32> = serde_json::from_value(value.get("letters").cloned().unwrap_or(Value::Null))
        .map_err(|e| Error::Parse(e.to_string()))?;
    BraidGroup::new(ty)?.check_letters(&letters)?;
    let (a_type, a_letters) = match ty.family {
        Family::A => (ty, letters),
        Family::B => (CoxeterType::a(2 * ty.rank - 1)?, type_b_letters_to_a(ty.rank, &letters)),
        _ => return Err(Error::TypeMismatch(format!("wiring diagrams exist in types A and B, not {ty}"))),
    };
    let b = BraidGroup::new(a_type)?;
    let nf = b.normal_form(&a_letters)?;
    Ok(wiring_svg(&MikadoA::new(&b)?.wiring(&nf)?))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
