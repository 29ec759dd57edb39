//! Command-line front end: discriminants, fiber tables, residue covers,
//! blow-up censuses, and the full verification pipeline, over the
//! built-in example bundle or a bundle loaded from a JSON file.

use charpair::algebra::{FqElem, FqField, Ring};
use charpair::artinschreier::line_cover;
use charpair::blowup::resolution_report;
use charpair::bundle::{format_point, ConicBundle};
use charpair::error::{Error, Result};
use charpair::fixtures;
use charpair::groebner::{singular_scheme_length, GroebnerOptions, Length};
use charpair::poly::Polynomial;
use charpair::quadform::classify;
use charpair::verify::{run_pipeline, CheckStatus, PipelineConfig};
use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(
    name = "charpair",
    about = "Conic bundles over the projective plane in characteristic 2: \
             discriminants, fiber classification, residue covers, blow-ups"
)]
struct Cli {
    /// JSON file with a bundle to use instead of the built-in example.
    #[arg(long, global = true, value_name = "FILE")]
    fixture: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the discriminant of the bundle, optionally reduced mod a prime.
    Disc {
        /// Reduce the coefficients modulo this prime first.
        #[arg(long, value_name = "P")]
        prime: Option<u64>,
    },
    /// Reduce the bundle modulo a prime and print its data.
    ModP {
        #[arg(long, value_name = "P")]
        prime: u64,
    },
    /// Print the table of degenerate fibers over the prime field.
    Fibers {
        /// Prime to reduce an integral bundle by first.
        #[arg(long, value_name = "P", default_value_t = 2)]
        prime: u64,
    },
    /// Classify the fiber over one base point, given by coordinate codes.
    Classify {
        /// Base point as colon-separated element codes, e.g. 0:1:0.
        #[arg(long, value_name = "A:B:C")]
        point: String,
        /// Degree of the field extension the codes live in.
        #[arg(long, value_name = "K", default_value_t = 1)]
        field_degree: usize,
        /// Prime to reduce an integral bundle by first.
        #[arg(long, value_name = "P", default_value_t = 2)]
        prime: u64,
    },
    /// Analyze the double cover of a discriminant line and its residue class.
    Residue {
        /// The line, as a linear form in the base variables, e.g. "u+w".
        #[arg(long, value_name = "FORM")]
        line: String,
        /// Bound on field-extension degrees used in the search.
        #[arg(long, value_name = "K", default_value_t = 12)]
        kmax: usize,
    },
    /// Certify the discriminant geometrically irreducible modulo each prime.
    Irreducible {
        /// Comma-separated odd primes.
        #[arg(long, value_delimiter = ',', default_value = "3,5,7,11,13,17,19,23,29,31")]
        primes: Vec<u64>,
    },
    /// Resolve the singular points of the mod-2 total space by blow-ups.
    Blowup {
        /// Truncation order for the local models.
        #[arg(long, value_name = "N", default_value_t = 8)]
        series_order: u32,
        /// Comma-separated factors of the mod-2 discriminant.
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "u,w,u+w,(v^2+u*v+v*w+w^2)*u+v^3"
        )]
        factors: Vec<String>,
    },
    /// Run the full verification pipeline and report every check.
    Verify {
        /// Comma-separated odd primes for the irreducibility checks.
        #[arg(long, value_delimiter = ',', default_value = "3,5,7,11,13,17,19,23,29,31")]
        primes: Vec<u64>,
        /// Bound on field-extension degrees used in point searches.
        #[arg(long, value_name = "K", default_value_t = 12)]
        kmax: usize,
        /// Truncation order for the local models of the blow-up census.
        #[arg(long, value_name = "N", default_value_t = 8)]
        series_order: u32,
        /// Treat resource-skipped checks as non-fatal.
        #[arg(long)]
        allow_skips: bool,
        /// Write the report as JSON to this file.
        #[arg(long, value_name = "OUT")]
        json: Option<PathBuf>,
        /// Write the report as markdown to this file.
        #[arg(long, value_name = "OUT")]
        md: Option<PathBuf>,
    },
}

fn load_bundle(fixture: &Option<PathBuf>) -> Result<ConicBundle> {
    match fixture {
        None => Ok(fixtures::primary_bundle()),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
            fixtures::bundle_from_json_str(&text)
        }
    }
}

/// Reduces an integral bundle modulo `p`; passes a finite-field bundle
/// through untouched when its characteristic already matches.
fn bundle_mod(bundle: &ConicBundle, p: u64) -> Result<ConicBundle> {
    match bundle.ring() {
        Ring::Int => bundle.reduce_mod_p(&FqField::new(p, 1)?),
        Ring::Fq(f) if f.characteristic() == p => Ok(bundle.clone()),
        Ring::Fq(f) => Err(Error::Config(format!(
            "the bundle lives in characteristic {}, not {p}",
            f.characteristic()
        ))),
        Ring::Rat => Err(Error::Config(
            "reduction needs integer coefficients".into(),
        )),
    }
}

fn parse_point(text: &str, field: &Arc<FqField>) -> Result<Vec<FqElem>> {
    let mut coords = Vec::new();
    for part in text.split(':') {
        let code: u128 = part
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("bad coordinate code {part:?}")))?;
        if code >= field.order() as u128 {
            return Err(Error::Config(format!(
                "code {code} is out of range for a field of order {}",
                field.order()
            )));
        }
        coords.push(FqElem::from_code(field, code));
    }
    Ok(coords)
}

fn run(cli: &Cli) -> Result<bool> {
    let bundle = load_bundle(&cli.fixture)?;
    match &cli.command {
        Command::Disc { prime } => {
            let d = match prime {
                None => bundle.discriminant(),
                Some(p) => bundle_mod(&bundle, *p)?.discriminant(),
            };
            println!("{d}");
            Ok(true)
        }
        Command::ModP { prime } => {
            let b = bundle_mod(&bundle, *prime)?;
            let names = ["xx", "yy", "zz", "xy", "xz", "yz"];
            for (name, c) in names.iter().zip(b.coefficients()) {
                println!("a_{name} = {c}");
            }
            println!("disc = {}", b.discriminant());
            Ok(true)
        }
        Command::Fibers { prime } => {
            let b = bundle_mod(&bundle, *prime)?;
            let table = b.degenerate_fiber_table()?;
            for row in &table {
                println!("{}  {}", format_point(&row.point), row.class.label());
            }
            Ok(true)
        }
        Command::Classify {
            point,
            field_degree,
            prime,
        } => {
            let b = bundle_mod(&bundle, *prime)?;
            let field = FqField::new(*prime, *field_degree)?;
            let coords = parse_point(point, &field)?;
            let class = classify(&b.fiber_at(&coords)?)?;
            println!("{}  {}", format_point(&coords), class.label());
            Ok(true)
        }
        Command::Residue { line, kmax } => {
            let b = bundle_mod(&bundle, 2)?;
            let form = Polynomial::parse(line, b.base_vars(), b.ring())?;
            let cover = line_cover(&b, &form, *kmax)?;
            println!("line          {}", cover.line);
            println!("ramification  {}", format_point(&cover.ramification));
            println!("raw class     {}", cover.raw_class);
            println!("reduced       {}", cover.reduced);
            println!("class         {}", cover.class);
            Ok(true)
        }
        Command::Irreducible { primes } => {
            let opts = GroebnerOptions::default();
            let d = bundle.discriminant();
            let mut all = true;
            let mut primes = primes.clone();
            primes.sort_unstable();
            primes.dedup();
            for &p in &primes {
                if p == 2 || !is_prime_u64(p) {
                    return Err(Error::Config(format!("{p} is not an odd prime")));
                }
                let dp = d.reduce_mod_p(&FqField::new(p, 1)?)?;
                let deg = dp.total_degree();
                let len = singular_scheme_length(&dp, &opts)?;
                let ok = deg == Some(6) && matches!(len, Length::Finite(n) if n <= 1);
                all &= ok;
                let shown = match len {
                    Length::Finite(n) => n.to_string(),
                    Length::Infinite => "infinite".to_string(),
                };
                println!(
                    "p = {p:2}  degree {}  singular length {shown}  {}",
                    deg.map_or("?".to_string(), |d| d.to_string()),
                    if ok { "PASS" } else { "FAIL" }
                );
            }
            Ok(all)
        }
        Command::Blowup {
            series_order,
            factors,
        } => {
            let b = bundle_mod(&bundle, 2)?;
            let opts = GroebnerOptions::default();
            let parsed: Vec<Polynomial> = factors
                .iter()
                .map(|t| Polynomial::parse(t, b.base_vars(), b.ring()))
                .collect::<Result<_>>()?;
            let report = resolution_report(&b, &parsed, *series_order, &opts)?;
            println!("total singular length {}", report.total_singular_length);
            for chain in &report.chains {
                println!(
                    "base {} (degree {})  {}  contact {}  length {}",
                    format_point(&chain.base_point),
                    chain.field_degree,
                    chain.fiber_class.label(),
                    chain.contact_order,
                    chain.local_length
                );
                for (i, step) in chain.steps.iter().enumerate() {
                    println!("  blow-up {}: {} (rank {})", i + 1, step.kind, step.rank);
                }
            }
            println!();
            println!("{}", report.triviality_note);
            Ok(true)
        }
        Command::Verify {
            primes,
            kmax,
            series_order,
            allow_skips,
            json,
            md,
        } => {
            let config = PipelineConfig {
                primes: primes.clone(),
                kmax: *kmax,
                series_order: *series_order,
                opts: GroebnerOptions::default(),
                allow_skips: *allow_skips,
            };
            let report = run_pipeline(&bundle, &config)?;
            for check in &report.checks {
                println!("{:<32} {}  ({} ms)", check.name, check.status, check.millis);
                if check.status != CheckStatus::Pass {
                    println!("    {}", check.evidence);
                }
            }
            println!("overall: {}", if report.passed { "PASS" } else { "FAIL" });
            if let Some(path) = json {
                let text = serde_json::to_string_pretty(&report.to_json())
                    .expect("report serializes");
                std::fs::write(path, text).map_err(|e| {
                    Error::Config(format!("cannot write {}: {e}", path.display()))
                })?;
            }
            if let Some(path) = md {
                std::fs::write(path, report.to_markdown()).map_err(|e| {
                    Error::Config(format!("cannot write {}: {e}", path.display()))
                })?;
            }
            Ok(report.passed)
        }
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
