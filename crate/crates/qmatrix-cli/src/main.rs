//! `qmatrix` — command-line front end for the quantized coordinate ring
//! library: normal forms, the coquasitriangular form on minor pairs,
//! commutation identities, quasicommutation detection, verification
//! sweeps, and Poisson brackets.
//!
//! Exit codes are a stable contract: 0 success, 1 usage or input error,
//! 2 verification failure, 3 internal assertion (exact divisibility).

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use qmatrix::poisson::{bracket_minors, semiclassical_bracket, CommutativePoly, PoissonVariant};
use qmatrix::relations::{
    gen_generator_minor_relation, gen_pair_relation, quasicommutation_exponent, sweep_verify,
    verify_relation, RelationKind, SweepConfig,
};
use qmatrix::rform::{r_minor_factored, r_oracle};
use qmatrix::{
    minor_element, parse_expression, parse_index_set, parse_set_pair, AlgebraElement, Error,
    IndexSet, Result,
};

#[derive(Parser)]
#[command(
    name = "qmatrix",
    version,
    about = "Exact computations in the quantized coordinate ring of n×n matrices"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Normalize an expression to its canonical form.
    Normalform {
        /// Expression in the shared grammar, e.g. `X[1,2]*X[1,1] - q*[12|12]`.
        expr: String,

        /// Ambient matrix size.
        #[arg(long)]
        n: usize,
    },

    /// Evaluate the coquasitriangular form on a pair of quantum minors.
    Rform {
        /// Ambient matrix size.
        #[arg(long)]
        n: usize,

        /// First minor as `rows|cols` (comma lists, or compact digits when n ≤ 9).
        #[arg(long)]
        left: String,

        /// Second minor as `rows|cols`.
        #[arg(long)]
        right: String,

        /// Evaluate with the recursive axiomatic oracle instead of the
        /// closed formula.
        #[arg(long)]
        oracle: bool,

        /// Print the factored form q^a · qhat^b · (-q)^c · ξ instead of the
        /// expanded polynomial (closed formula only).
        #[arg(long)]
        factored: bool,
    },

    /// Generate (and optionally verify) a commutation identity.
    Relation {
        /// Relation kind: T5.2, C5.4, T5.6, C5.7, T6.3, C6.4 (minor pairs)
        /// or E3.2, E3.3, E3.10, E3.12 (generator–minor).
        #[arg(long)]
        kind: String,

        /// Ambient matrix size.
        #[arg(long)]
        n: usize,

        /// Row set of the first minor.
        #[arg(long = "I")]
        set_i: Option<String>,

        /// Column set of the first minor.
        #[arg(long = "J")]
        set_j: Option<String>,

        /// Row set of the second minor (pair kinds only).
        #[arg(long = "M")]
        set_m: Option<String>,

        /// Column set of the second minor (pair kinds only).
        #[arg(long = "N")]
        set_n: Option<String>,

        /// Generator row (generator–minor kinds only).
        #[arg(long = "i")]
        gen_i: Option<usize>,

        /// Generator column (generator–minor kinds only).
        #[arg(long = "j")]
        gen_j: Option<usize>,

        /// Expand both sides to normal form and report the verdict.
        #[arg(long)]
        check: bool,
    },

    /// Detect quasicommutation of two minors and print the exponent.
    Quasi {
        /// Ambient matrix size.
        #[arg(long)]
        n: usize,

        /// Row set of the first minor.
        #[arg(long = "I")]
        set_i: String,

        /// Column set of the first minor.
        #[arg(long = "J")]
        set_j: String,

        /// Row set of the second minor.
        #[arg(long = "M")]
        set_m: String,

        /// Column set of the second minor.
        #[arg(long = "N")]
        set_n: String,
    },

    /// Run a bulk verification sweep over relation kinds.
    Verify {
        /// Ambient matrix size (≤ 4 exhaustive, 5–6 sampled).
        #[arg(long)]
        n: usize,

        /// Largest index-set cardinality to enumerate.
        #[arg(long, default_value_t = 3)]
        max_size: usize,

        /// `all` or a comma list of kinds, e.g. `T5.2,C5.4`.
        #[arg(long, default_value = "all")]
        kinds: String,

        /// Seed for the sampled regime.
        #[arg(long, default_value_t = 1)]
        seed: u64,

        /// Samples per kind in the sampled regime.
        #[arg(long, default_value_t = 200)]
        samples: usize,

        /// Worker threads (default: one per core).
        #[arg(long)]
        jobs: Option<usize>,
    },

    /// Poisson bracket of two classical minors.
    Poisson {
        /// Closed form to use: 7.6, 7.8, or 7.9 (aliases T7.3, T7.4, C7.5).
        #[arg(long, default_value = "7.9")]
        variant: String,

        /// Ambient matrix size.
        #[arg(long)]
        n: usize,

        /// Row set of the first minor.
        #[arg(long = "I")]
        set_i: String,

        /// Column set of the first minor.
        #[arg(long = "J")]
        set_j: String,

        /// Row set of the second minor.
        #[arg(long = "M")]
        set_m: String,

        /// Column set of the second minor.
        #[arg(long = "N")]
        set_n: String,

        /// Compute through the quantum side (scaled commutator at q = 1)
        /// instead of the closed formula.
        #[arg(long)]
        oracle: bool,
    },
}

fn main() {
    std::process::exit(real_main());
}

fn real_main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::NotDivisible { .. } => 3,
                _ => 1,
            }
        }
    }
}

fn element_json(elem: &AlgebraElement) -> serde_json::Value {
    json!({
        "n": elem.ambient(),
        "terms": elem
            .terms()
            .map(|(word, coeff)| json!({
                "coeff": coeff.to_json(),
                "word": word
                    .letters()
                    .iter()
                    .map(|g| json!([g.row, g.col]))
                    .collect::<Vec<_>>(),
            }))
            .collect::<Vec<_>>(),
        "text": elem.to_string(),
    })
}

fn poly_json(poly: &CommutativePoly) -> serde_json::Value {
    json!({
        "n": poly.ambient(),
        "terms": poly
            .terms()
            .map(|(mono, coeff)| json!({
                "coeff": coeff.to_string(),
                "monomial": mono
                    .vars()
                    .iter()
                    .map(|&((i, j), e)| json!([[i, j], e]))
                    .collect::<Vec<_>>(),
            }))
            .collect::<Vec<_>>(),
        "text": poly.to_string(),
    })
}

fn parse_kind_list(text: &str) -> Result<Vec<RelationKind>> {
    if text.eq_ignore_ascii_case("all") {
        return Ok(RelationKind::all().to_vec());
    }
    text.split(',')
        .map(|part| part.trim().parse::<RelationKind>())
        .collect()
}

fn required_set(value: &Option<String>, flag: &str, n: usize) -> Result<IndexSet> {
    let Some(text) = value else {
        return Err(Error::Precondition(format!("missing --{flag} for this kind")));
    };
    parse_index_set(text, n)
}

fn dispatch(cli: &Cli) -> Result<i32> {
    let json_mode = cli.format == Format::Json;
    match &cli.command {
        Command::Normalform { expr, n } => {
            let elem = parse_expression(expr, *n)?;
            if json_mode {
                println!("{}", element_json(&elem));
            } else {
                println!("{elem}");
            }
            Ok(0)
        }

        Command::Rform {
            n,
            left,
            right,
            oracle,
            factored,
        } => {
            if *oracle && *factored {
                return Err(Error::Precondition(
                    "--factored applies to the closed formula; omit --oracle".into(),
                ));
            }
            let (li, lj) = parse_set_pair(left, *n)?;
            let (ri, rj) = parse_set_pair(right, *n)?;
            if *oracle {
                let a = minor_element(&li, &lj)?;
                let b = minor_element(&ri, &rj)?;
                let value = r_oracle(&a, &b)?;
                if json_mode {
                    println!("{}", json!({"value": value.to_json(), "text": value.to_string()}));
                } else {
                    println!("{value}");
                }
                return Ok(0);
            }
            let factorization = r_minor_factored(&li, &lj, &ri, &rj)?;
            let value = factorization.expand();
            if json_mode {
                let mut body = json!({
                    "value": value.to_json(),
                    "text": value.to_string(),
                });
                if *factored {
                    body["factored"] = json!({
                        "zero": factorization.is_zero(),
                        "q_exp": factorization.q_exp(),
                        "qhat_exp": factorization.qhat_exp(),
                        "neg_q_exp": factorization.neg_q_exp(),
                        "xi_degrees": factorization.xi_factor_degrees(),
                        "text": factorization.to_string(),
                    });
                }
                println!("{body}");
            } else if *factored {
                println!("{factorization}");
            } else {
                println!("{value}");
            }
            Ok(0)
        }

        Command::Relation {
            kind,
            n,
            set_i,
            set_j,
            set_m,
            set_n,
            gen_i,
            gen_j,
            check,
        } => {
            let kind: RelationKind = kind.parse()?;
            let rel = if kind.is_pair_kind() {
                let i = required_set(set_i, "I", *n)?;
                let j = required_set(set_j, "J", *n)?;
                let m = required_set(set_m, "M", *n)?;
                let nn = required_set(set_n, "N", *n)?;
                gen_pair_relation(kind, &i, &j, &m, &nn)?
            } else {
                let (Some(gi), Some(gj)) = (gen_i, gen_j) else {
                    return Err(Error::Precondition(format!(
                        "{kind} needs --i and --j (generator position)"
                    )));
                };
                let rows = required_set(set_i, "I", *n)?;
                let cols = required_set(set_j, "J", *n)?;
                gen_generator_minor_relation(kind, *gi, *gj, &rows, &cols)?
            };
            let verified = check.then(|| verify_relation(&rel));
            if json_mode {
                let mut body = rel.to_json();
                if let Some(ok) = verified {
                    body["verified"] = json!(ok);
                }
                println!("{body}");
            } else {
                println!("{}", rel.to_text());
                if let Some(ok) = verified {
                    println!("{}", if ok { "VERIFIED" } else { "FAILED" });
                }
            }
            Ok(if verified == Some(false) { 2 } else { 0 })
        }

        Command::Quasi {
            n,
            set_i,
            set_j,
            set_m,
            set_n,
        } => {
            let i = parse_index_set(set_i, *n)?;
            let j = parse_index_set(set_j, *n)?;
            let m = parse_index_set(set_m, *n)?;
            let nn = parse_index_set(set_n, *n)?;
            let exponent = quasicommutation_exponent(&i, &j, &m, &nn)?;
            if json_mode {
                println!("{}", json!({ "exponent": exponent }));
            } else {
                match exponent {
                    Some(m) => println!("{m}"),
                    None => println!("no conclusion"),
                }
            }
            Ok(0)
        }

        Command::Verify {
            n,
            max_size,
            kinds,
            seed,
            samples,
            jobs,
        } => {
            let mut config = SweepConfig::new(*n, *max_size, parse_kind_list(kinds)?);
            config.seed = *seed;
            config.samples = *samples;
            if let Ok(raw) = std::env::var("QMATRIX_TERM_CEILING") {
                config.term_ceiling = raw.parse::<u64>().map_err(|_| {
                    Error::Precondition(format!("bad QMATRIX_TERM_CEILING value {raw:?}"))
                })?;
            }
            let report = match jobs {
                Some(threads) => rayon::ThreadPoolBuilder::new()
                    .num_threads(*threads)
                    .build()
                    .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?
                    .install(|| sweep_verify(&config))?,
                None => sweep_verify(&config)?,
            };
            if json_mode {
                println!(
                    "{}",
                    json!({
                        "n": report.n,
                        "max_size": report.max_size,
                        "kinds": report.kinds.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
                        "exhaustive": report.exhaustive,
                        "total": report.total,
                        "passed": report.passed,
                        "failed": report.failed,
                        "first_failure": report.first_failure,
                        "predicted_words": report.predicted_words,
                    })
                );
            } else {
                println!("{report}");
            }
            Ok(if report.all_passed() { 0 } else { 2 })
        }

        Command::Poisson {
            variant,
            n,
            set_i,
            set_j,
            set_m,
            set_n,
            oracle,
        } => {
            let variant: PoissonVariant = variant.parse()?;
            let i = parse_index_set(set_i, *n)?;
            let j = parse_index_set(set_j, *n)?;
            let m = parse_index_set(set_m, *n)?;
            let nn = parse_index_set(set_n, *n)?;
            let bracket = if *oracle {
                semiclassical_bracket(&i, &j, &m, &nn)?
            } else {
                bracket_minors(variant, &i, &j, &m, &nn)?
            };
            if json_mode {
                let mut body = poly_json(&bracket);
                body["variant"] = json!(variant.to_string());
                println!("{body}");
            } else {
                println!("{bracket}");
            }
            Ok(0)
        }
    }
}
