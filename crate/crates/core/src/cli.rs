//! Command-line front end: `check`, `spectrum`, `sums`, `search`, `catalog`.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{self, Family};
use crate::checker::{self, CheckReport, SpectralSums};
use crate::error::{Error, Result};
use crate::field::{find_default_modulus, Elem, Field};
use crate::func::{PolyTerms, VecFunc};
use crate::geometry;
use crate::spectrum::WalshRows;

/// Largest `n` for exhaustive monomial search.
pub const MONOMIAL_SEARCH_MAX_N: u32 = 8;
/// Random search may spend at most this many `F(x) + b x` evaluations.
pub const RANDOM_SEARCH_BUDGET: u64 = 1 << 34;
/// Catalog listings verify each instance up to this degree.
pub const CATALOG_VERIFY_MAX_N: u32 = 12;

#[derive(Debug, Parser)]
#[command(
    name = "opoly",
    version,
    about = "Decide and study o-polynomials over GF(2^n)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Shared {
    /// Extension degree (1..=16).
    #[arg(long)]
    pub n: u32,
    /// Reduction polynomial as a hex bitmask, e.g. 0x13.
    #[arg(long, value_parser = parse_hex)]
    pub modulus: Option<u32>,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    /// Write output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct FunctionArgs {
    /// `mono:<d>`, `poly:<exp>:<coef_hex>[,...]` or `table:@<path>`.
    #[arg(long = "fn", conflicts_with = "family")]
    pub function: Option<String>,
    /// Catalog family, e.g. `segre` or `translation(1)`.
    #[arg(long)]
    pub family: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SearchMode {
    Mono,
    Random,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every characterization and print the report.
    Check {
        #[command(flatten)]
        shared: Shared,
        #[command(flatten)]
        function: FunctionArgs,
        /// Also run the projective arc test (n <= 5).
        #[arg(long)]
        geometry: bool,
        /// Dump the candidate hyperoval points as CSV.
        #[arg(long)]
        points_out: Option<PathBuf>,
    },
    /// Walsh spectrum as CSV `u,v,W`.
    Spectrum {
        #[command(flatten)]
        shared: Shared,
        #[command(flatten)]
        function: FunctionArgs,
        /// Emit zero entries too.
        #[arg(long)]
        dense: bool,
    },
    /// All aggregate sums with their o-polynomial reference values.
    Sums {
        #[command(flatten)]
        shared: Shared,
        #[command(flatten)]
        function: FunctionArgs,
    },
    /// Search monomials or random tables for o-polynomials.
    Search {
        #[command(flatten)]
        shared: Shared,
        #[arg(long, value_enum, default_value = "mono")]
        mode: SearchMode,
        /// Number of random tables.
        #[arg(long, default_value_t = 100)]
        count: u64,
        /// Smallest exponent (monomial mode).
        #[arg(long)]
        from: Option<u64>,
        /// Largest exponent (monomial mode).
        #[arg(long)]
        to: Option<u64>,
    },
    /// List the classical families defined at this degree.
    Catalog {
        #[command(flatten)]
        shared: Shared,
    },
}

impl Command {
    pub fn shared(&self) -> &Shared {
        match self {
            Command::Check { shared, .. }
            | Command::Spectrum { shared, .. }
            | Command::Sums { shared, .. }
            | Command::Search { shared, .. }
            | Command::Catalog { shared } => shared,
        }
    }
}

pub fn parse_hex(s: &str) -> std::result::Result<u32, String> {
    let digits = s
        .trim()
        .strip_prefix("0x")
        .or_else(|| s.trim().strip_prefix("0X"))
        .unwrap_or(s.trim());
    u32::from_str_radix(digits, 16).map_err(|e| format!("bad hex value `{s}`: {e}"))
}

fn hex(v: u32) -> String {
    format!("{v:#x}")
}

pub fn build_field(n: u32, modulus: Option<u32>) -> Result<Field> {
    match modulus {
        Some(m) => Field::new(n, m),
        None => Field::new(n, find_default_modulus(n)?),
    }
}

/// Parses `mono:<d>`, `poly:<exp>:<coef_hex>[,...]` or `table:@<path>`.
pub fn parse_function(field: Field, spec: &str) -> Result<VecFunc> {
    let bad = |msg: &str| Error::Parse(format!("function `{spec}`: {msg}"));
    let (kind, body) = spec.split_once(':').ok_or_else(|| bad("missing `kind:`"))?;
    match kind {
        "mono" => {
            let d = body
                .parse()
                .map_err(|_| bad("exponent must be a decimal integer"))?;
            VecFunc::from_monomial(field, d)
        }
        "poly" => {
            let terms = body
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|term| {
                    let (exp, coef) = term
                        .split_once(':')
                        .ok_or_else(|| bad("term needs `exp:coef`"))?;
                    let exp = exp
                        .trim()
                        .parse()
                        .map_err(|_| bad("exponent must be decimal"))?;
                    Ok((exp, parse_hex(coef).map_err(|e| bad(&e))?))
                })
                .collect::<Result<Vec<_>>>()?;
            VecFunc::from_polynomial(field, &PolyTerms::new(terms)?)
        }
        "table" => {
            let path = body
                .strip_prefix('@')
                .ok_or_else(|| bad("expected `table:@<path>`"))?;
            read_table(field, Path::new(path))
        }
        _ => Err(bad("unknown kind (expected mono, poly or table)")),
    }
}

/// Reads `2^n` whitespace-separated hex values.
pub fn read_table(field: Field, path: &Path) -> Result<VecFunc> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let values = text
        .split_whitespace()
        .map(|tok| parse_hex(tok).map_err(Error::Parse))
        .collect::<Result<Vec<_>>>()?;
    VecFunc::from_table(field, values)
}

fn resolve_function(field: Field, args: &FunctionArgs) -> Result<(VecFunc, String)> {
    match (&args.function, &args.family) {
        (Some(spec), None) => Ok((parse_function(field, spec)?, spec.clone())),
        (None, Some(name)) => {
            let fam: Family = name.parse()?;
            let func = VecFunc::from_polynomial(field, &fam.terms(&field)?)?;
            Ok((func, format!("family:{fam}")))
        }
        _ => Err(Error::Parse(
            "exactly one of --fn or --family is required".into(),
        )),
    }
}

#[derive(Serialize)]
struct VerdictsJson {
    direct: bool,
    slopes: bool,
    walsh: bool,
    constants: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    geometry: Option<bool>,
}

#[derive(Serialize)]
struct ReportSumsJson {
    count_deficiency: String,
    walsh_excess: String,
    triple_sum: String,
    square_sum_total: String,
    moments: BTreeMap<String, String>,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    n: u32,
    modulus: String,
    function: &'a str,
    verdicts: VerdictsJson,
    sums: ReportSumsJson,
}

fn moments_json(moments: &[i128; 3]) -> BTreeMap<String, String> {
    (1..=3)
        .map(|j| (j.to_string(), moments[j - 1].to_string()))
        .collect()
}

/// The stable JSON form of a report.
pub fn report_json(report: &CheckReport, function: &str) -> String {
    let json = ReportJson {
        n: report.n,
        modulus: hex(report.modulus),
        function,
        verdicts: VerdictsJson {
            direct: report.verdict_direct,
            slopes: report.verdict_slopes,
            walsh: report.verdict_walsh,
            constants: report.verdict_constants,
            geometry: report.verdict_geometry,
        },
        sums: ReportSumsJson {
            count_deficiency: report.count_deficiency.to_string(),
            walsh_excess: report.walsh_excess.to_string(),
            triple_sum: report.triple_sum.to_string(),
            square_sum_total: report.square_sum_total.to_string(),
            moments: moments_json(&report.moments),
        },
    };
    serde_json::to_string_pretty(&json).expect("plain data serializes")
}

fn io_err(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn write_points(func: &VecFunc, path: &Path) -> Result<()> {
    let mut csv = String::from("x,y,z\n");
    for p in geometry::hyperoval_points(func) {
        let [x, y, z] = p.coords();
        csv.push_str(&format!("{},{},{}\n", hex(x), hex(y), hex(z)));
    }
    std::fs::write(path, csv).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn run_check(
    field: Field,
    function: &FunctionArgs,
    include_geometry: bool,
    points_out: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32> {
    let (func, label) = resolve_function(field, function)?;
    let report = checker::full_report(&func, include_geometry)?;
    if let Some(path) = points_out {
        write_points(&func, path)?;
    }
    writeln!(out, "{}", report_json(&report, &label)).map_err(io_err)?;
    Ok(if report.is_o_polynomial() { 0 } else { 1 })
}

/// Rows are streamed one component `v` at a time, so any `n` works.
pub fn run_spectrum(
    field: Field,
    function: &FunctionArgs,
    dense: bool,
    out: &mut dyn Write,
) -> Result<i32> {
    let (func, _) = resolve_function(field, function)?;
    let rows = WalshRows::new(&func);
    writeln!(out, "u,v,W").map_err(io_err)?;
    for v in field.elements() {
        for (u, w) in rows.row(v).into_iter().enumerate() {
            if dense || w != 0 {
                writeln!(out, "{u},{v},{w}").map_err(io_err)?;
            }
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct SquareSumJson {
    b: String,
    sum: String,
}

#[derive(Serialize)]
struct ReferenceJson {
    square_sum_total: String,
    square_sum_per_b: String,
    triple_sum: String,
}

#[derive(Serialize)]
struct SumsJson<'a> {
    n: u32,
    modulus: String,
    function: &'a str,
    triple_sum: String,
    square_sums: Vec<SquareSumJson>,
    square_sum_total: String,
    zero_row_energy: String,
    walsh_excess: String,
    moments: BTreeMap<String, String>,
    reference: ReferenceJson,
}

pub fn run_sums(field: Field, function: &FunctionArgs, out: &mut dyn Write) -> Result<i32> {
    let (func, label) = resolve_function(field, function)?;
    let sums = SpectralSums::compute(&func);
    let n = field.n();
    let q1 = (1i128 << n) - 1;
    let json = SumsJson {
        n,
        modulus: hex(field.modulus()),
        function: &label,
        triple_sum: sums.triple_sum().to_string(),
        square_sums: (1..field.order() as Elem)
            .map(|b| SquareSumJson {
                b: hex(b),
                sum: sums.square_sum(b).to_string(),
            })
            .collect(),
        square_sum_total: sums.square_sum_total().to_string(),
        zero_row_energy: sums.zero_row_energy().to_string(),
        walsh_excess: sums.walsh_excess().to_string(),
        moments: moments_json(&[sums.moment(1)?, sums.moment(2)?, sums.moment(3)?]),
        reference: ReferenceJson {
            square_sum_total: (q1 << (2 * n + 1)).to_string(),
            square_sum_per_b: (1i128 << (2 * n + 1)).to_string(),
            triple_sum: (q1 << (3 * n + 2)).to_string(),
        },
    };
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(&json).expect("plain data serializes")
    )
    .map_err(io_err)?;
    Ok(0)
}

#[derive(Serialize)]
struct MonomialSearchJson {
    n: u32,
    modulus: String,
    mode: &'static str,
    from: u64,
    to: u64,
    hits: Vec<u64>,
}

#[derive(Serialize)]
struct RandomHitJson {
    index: u64,
    table: Vec<String>,
}

#[derive(Serialize)]
struct RandomSearchJson {
    n: u32,
    modulus: String,
    mode: &'static str,
    seed: u64,
    count: u64,
    hits: Vec<RandomHitJson>,
}

/// Direct check as the filter, Walsh check as confirmation.
fn confirmed_hit(func: &VecFunc) -> Result<bool> {
    let direct = checker::check_direct(func);
    if direct != checker::check_walsh(func) {
        return Err(Error::Inconsistent(format!(
            "direct and Walsh checks disagree on {:?}",
            func.table()
        )));
    }
    Ok(direct)
}

pub fn run_search(
    field: Field,
    mode: SearchMode,
    range: (Option<u64>, Option<u64>),
    count: u64,
    seed: u64,
    out: &mut dyn Write,
) -> Result<i32> {
    let n = field.n();
    let json = match mode {
        SearchMode::Mono => {
            if n > MONOMIAL_SEARCH_MAX_N {
                return Err(Error::ResourceCap {
                    what: "exhaustive monomial search",
                    n,
                    max: MONOMIAL_SEARCH_MAX_N,
                    hint: "check individual exponents with `check`",
                });
            }
            let from = range.0.unwrap_or(1);
            let to = range.1.unwrap_or(field.group_order() - 1);
            if from > to || to > field.group_order() {
                return Err(Error::Parse(format!(
                    "exponent range {from}..={to} is empty or exceeds 2^n-1"
                )));
            }
            let flags = (from..=to)
                .into_par_iter()
                .map(|d| confirmed_hit(&VecFunc::from_monomial(field, d)?))
                .collect::<Result<Vec<bool>>>()?;
            let hits = (from..=to)
                .zip(flags)
                .filter(|&(_, hit)| hit)
                .map(|(d, _)| d)
                .collect();
            serde_json::to_string_pretty(&MonomialSearchJson {
                n,
                modulus: hex(field.modulus()),
                mode: "monomial",
                from,
                to,
                hits,
            })
        }
        SearchMode::Random => {
            let work = count.saturating_mul(1 << (2 * n));
            if work > RANDOM_SEARCH_BUDGET {
                return Err(Error::Parse(format!(
                    "{count} random tables at n = {n} exceed the search budget"
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let tables: Vec<Vec<Elem>> = (0..count)
                .map(|_| {
                    (0..field.order())
                        .map(|_| rng.gen_range(0..1 << n))
                        .collect()
                })
                .collect();
            let flags = tables
                .par_iter()
                .map(|t| confirmed_hit(&VecFunc::from_table(field, t.clone())?))
                .collect::<Result<Vec<bool>>>()?;
            let hits = tables
                .iter()
                .zip(flags)
                .enumerate()
                .filter(|(_, (_, hit))| *hit)
                .map(|(i, (t, _))| RandomHitJson {
                    index: i as u64,
                    table: t.iter().map(|&v| hex(v)).collect(),
                })
                .collect();
            serde_json::to_string_pretty(&RandomSearchJson {
                n,
                modulus: hex(field.modulus()),
                mode: "random",
                seed,
                count,
                hits,
            })
        }
    };
    writeln!(out, "{}", json.expect("plain data serializes")).map_err(io_err)?;
    Ok(0)
}

#[derive(Serialize)]
struct CatalogEntryJson {
    family: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    param: Option<u32>,
    label: String,
    terms: Vec<(u64, String)>,
    o_polynomial: Option<bool>,
}

pub fn run_catalog(field: Field, out: &mut dyn Write) -> Result<i32> {
    let entries = catalog::list_families(field.n())
        .into_iter()
        .map(|fam| {
            let terms = fam.terms(&field)?;
            let verified = if field.n() <= CATALOG_VERIFY_MAX_N {
                Some(checker::check_direct(&VecFunc::from_polynomial(
                    field, &terms,
                )?))
            } else {
                None
            };
            Ok(CatalogEntryJson {
                family: fam.name(),
                param: fam.param(),
                label: fam.to_string(),
                terms: terms.terms().iter().map(|&(e, c)| (e, hex(c))).collect(),
                o_polynomial: verified,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(&entries).expect("plain data serializes")
    )
    .map_err(io_err)?;
    Ok(0)
}

/// Dispatches one parsed command on a thread pool of the requested size.
/// Returns the process exit code; errors map to exit code 2 in `main`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let shared = cli.command.shared();
    let field = build_field(shared.n, shared.modulus)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(shared.threads)
        .build()
        .map_err(|e| Error::Io(e.to_string()))?;
    let mut buf = Vec::new();
    let code = pool.install(|| match &cli.command {
        Command::Check {
            function,
            geometry,
            points_out,
            ..
        } => run_check(field, function, *geometry, points_out.as_deref(), &mut buf),
        Command::Spectrum {
            function, dense, ..
        } => run_spectrum(field, function, *dense, &mut buf),
        Command::Sums { function, .. } => run_sums(field, function, &mut buf),
        Command::Search {
            mode,
            count,
            from,
            to,
            ..
        } => run_search(field, *mode, (*from, *to), *count, shared.seed, &mut buf),
        Command::Catalog { .. } => run_catalog(field, &mut buf),
    })?;
    out.write_all(&buf).map_err(io_err)?;
    Ok(code)
}

/// Runs a command line and captures its output; for tests and embedding.
pub fn run_args<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(_) => return (2, String::new()),
    };
    let mut buf = Vec::new();
    match execute(&cli, &mut buf) {
        Ok(code) => (code, String::from_utf8(buf).expect("utf-8 output")),
        Err(_) => (2, String::new()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(n: u32) -> Field {
        Field::with_default_modulus(n).unwrap()
    }

    #[test]
    fn hex_parsing() {
        assert_eq!(parse_hex("0x13"), Ok(0x13));
        assert_eq!(parse_hex("1b"), Ok(0x1b));
        assert!(parse_hex("xyz").is_err());
    }

    #[test]
    fn function_specs() {
        let f = gf(3);
        assert_eq!(
            parse_function(f, "mono:2").unwrap(),
            VecFunc::from_monomial(f, 2).unwrap()
        );
        let p = parse_function(f, "poly:3:1,1:0x2").unwrap();
        for x in f.elements() {
            assert_eq!(p.eval(x), f.pow(x, 3) ^ f.mul(2, x));
        }
        assert!(matches!(parse_function(f, "mono:x"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_function(f, "poly:3:1,3:2"),
            Err(Error::DuplicateExponent(3))
        ));
        assert!(matches!(parse_function(f, "sine:3"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_function(f, "table:nofile"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_function(f, "table:@/nonexistent/t"),
            Err(Error::Io(_))
        ));
    }

    #[test]
    fn table_files() {
        let dir = std::env::temp_dir().join(format!("opoly-table-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("sq.txt");
        std::fs::write(&path, "0 1 4 5\n6 7 0x2 3\n").unwrap();
        let f = Field::new(3, 0b1011).unwrap();
        let func = parse_function(f, &format!("table:@{}", path.display())).unwrap();
        assert_eq!(func, VecFunc::from_monomial(f, 2).unwrap());
        std::fs::write(&path, "0 1 4").unwrap();
        assert!(matches!(
            read_table(f, &path),
            Err(Error::TableLength { got: 3, .. })
        ));
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn field_selection() {
        assert_eq!(build_field(4, None).unwrap().modulus(), 0x13);
        assert_eq!(build_field(4, Some(0x19)).unwrap().modulus(), 0x19);
        assert!(build_field(4, Some(0x15)).is_err());
        assert!(build_field(17, None).is_err());
    }
}
