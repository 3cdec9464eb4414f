//! `hurwitz` command-line front end.
//!
//! Exit codes: 0 success / exists / valid, 1 non-existent / invalid / not
//! admissible, 2 usage or input error, 3 search cap exceeded.

pub mod record;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use hurwitz_core::{
    construct_witness, count_classes_with, cross_check_with, genus_from_profile, is_admissible, rh_genus,
    search_exists_with, verify_witness, Cycle, Error, Profile, RamificationData, SearchLimits, SearchOutcome,
    WitnessTuple,
};
use serde_json::json;

pub use record::{Checks, SearchRecord, WitnessRecord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_TOO_LARGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "hurwitz", version, about = "Monodromy witnesses for branched covers of the projective line")]
struct Cli {
    /// Output format; `json` writes one record per line.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check (d, n)-admissibility of ramification orders.
    Admissible(OrdersArgs),
    /// Riemann-Hurwitz genus of orders or of general profiles.
    Genus(GenusArgs),
    /// Build a verified monodromy tuple for orders [e_i, 1, ..., 1].
    Construct(OrdersArgs),
    /// Verify a witness record or an explicit tuple of cycles.
    Verify(VerifyArgs),
    /// Brute-force existence for arbitrary profiles.
    Search(SearchArgs),
    /// Count accepted tuples and their conjugation classes.
    Count(SearchArgs),
    /// Compare brute-force existence with the genus criterion.
    CrossCheck(CrossCheckArgs),
}

#[derive(Debug, Args)]
struct OrdersArgs {
    /// Degree of the cover.
    #[arg(long = "d")]
    degree: usize,
    /// Comma-separated ramification orders, e.g. 4,3,2.
    #[arg(long, value_delimiter = ',', required = true)]
    orders: Vec<usize>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("data").required(true).args(["orders", "profiles"]))]
struct GenusArgs {
    #[arg(long = "d")]
    degree: usize,
    #[arg(long, value_delimiter = ',')]
    orders: Option<Vec<usize>>,
    /// Semicolon-separated partitions, e.g. "[2,2];[2,2];[3,1]".
    #[arg(long)]
    profiles: Option<String>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["input", "record", "cycles"]))]
struct VerifyArgs {
    /// File holding one witness record per line, or `-` for stdin.
    #[arg(long)]
    input: Option<String>,
    /// A witness record given inline.
    #[arg(long)]
    record: Option<String>,
    /// Cycles of the tuple, e.g. "(1 2)(1 3)"; needs --d and --orders.
    #[arg(long, requires_all = ["degree", "orders"])]
    cycles: Option<String>,
    #[arg(long = "d")]
    degree: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    orders: Option<Vec<usize>>,
    /// Claimed genus; derived from the orders when omitted.
    #[arg(long, allow_hyphen_values = true)]
    genus: Option<i64>,
    /// Also require neighbouring cycles to share a moved point.
    #[arg(long)]
    strict: bool,
}

#[derive(Debug, Args)]
struct CapArgs {
    /// Override the oracle's degree cap.
    #[arg(long)]
    max_degree: Option<usize>,
    /// Required to raise the degree cap; also lifts the work cap.
    #[arg(long = "i-know-this-is-factorial")]
    acknowledge: bool,
}

impl CapArgs {
    fn limits(&self, base: SearchLimits) -> Result<SearchLimits, Error> {
        match self.max_degree {
            Some(d) => base.with_max_degree(d, self.acknowledge),
            None => Ok(base),
        }
    }
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long = "d")]
    degree: usize,
    #[arg(long)]
    profiles: String,
    #[command(flatten)]
    caps: CapArgs,
}

#[derive(Debug, Args)]
struct CrossCheckArgs {
    #[command(flatten)]
    data: OrdersArgs,
    #[command(flatten)]
    caps: CapArgs,
}

/// Parse `"[2,2];[2,2];[3,1]"` into a profile of degree `degree`.
pub fn parse_profile(degree: usize, text: &str) -> hurwitz_core::Result<Profile> {
    Profile::parse(degree, text)
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::TooLarge(_) => EXIT_TOO_LARGE,
        Error::ParityError(_)
        | Error::NegativeGenus(_)
        | Error::Vacuous
        | Error::NotAdmissible { .. }
        | Error::NotApplicable(_)
        | Error::ConstructionBug(_) => EXIT_NEGATIVE,
        _ => EXIT_USAGE,
    }
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    format: Format,
}

impl Io<'_> {
    fn fail(&mut self, err: &Error) -> io::Result<i32> {
        writeln!(self.err, "hurwitz: error: {err}")?;
        Ok(exit_code(err))
    }
}

/// Run the CLI on `args` (including the program name) and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let mut io = Io {
        out,
        err,
        format: cli.format,
    };
    let result = match cli.command {
        Command::Admissible(a) => admissible(&mut io, a),
        Command::Genus(a) => genus(&mut io, a),
        Command::Construct(a) => construct(&mut io, a),
        Command::Verify(a) => verify(&mut io, a),
        Command::Search(a) => search(&mut io, a, false),
        Command::Count(a) => search(&mut io, a, true),
        Command::CrossCheck(a) => cross_check(&mut io, a),
    };
    result.unwrap_or_else(|e| {
        let _ = writeln!(io.err, "hurwitz: i/o error: {e}");
        EXIT_USAGE
    })
}

fn join(orders: &[usize]) -> String {
    orders.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn admissible(io: &mut Io, a: OrdersArgs) -> io::Result<i32> {
    let ok = match is_admissible(a.degree, &a.orders) {
        Ok(ok) => ok,
        Err(e) => return io.fail(&e),
    };
    let genus = rh_genus(a.degree, &a.orders).ok();
    match io.format {
        Format::Json => writeln!(
            io.out,
            "{}",
            json!({"degree": a.degree, "orders": a.orders, "admissible": ok, "genus": genus})
        )?,
        Format::Text if ok => writeln!(io.out, "admissible (genus {})", genus.unwrap_or_default())?,
        Format::Text => writeln!(io.out, "not admissible")?,
    }
    Ok(if ok { EXIT_OK } else { EXIT_NEGATIVE })
}

fn genus(io: &mut Io, a: GenusArgs) -> io::Result<i32> {
    let (label, value) = match (&a.orders, &a.profiles) {
        (Some(orders), _) => ("orders", rh_genus(a.degree, orders).map(|g| (g, join(orders)))),
        (None, Some(text)) => (
            "profiles",
            parse_profile(a.degree, text).and_then(|p| genus_from_profile(&p).map(|g| (g, p.to_string()))),
        ),
        (None, None) => unreachable!("clap requires one of --orders / --profiles"),
    };
    let (g, data) = match value {
        Ok(v) => v,
        Err(e) => return io.fail(&e),
    };
    match io.format {
        Format::Json => writeln!(io.out, "{}", json!({"degree": a.degree, label: data, "genus": g}))?,
        Format::Text => writeln!(io.out, "g = {g}")?,
    }
    Ok(EXIT_OK)
}

fn write_witness(io: &mut Io, data: &RamificationData, witness: &WitnessTuple) -> io::Result<()> {
    match io.format {
        Format::Json => writeln!(io.out, "{}", WitnessRecord::new(data, witness).to_line()),
        Format::Text => {
            let genus = data.genus().map_or("undefined".to_string(), |g| g.to_string());
            writeln!(io.out, "degree {}", witness.degree())?;
            writeln!(io.out, "genus {genus}")?;
            writeln!(io.out, "orders {}", join(data.orders()))?;
            let cycles: Vec<String> = witness.cycles().iter().map(Cycle::to_string).collect();
            writeln!(io.out, "witness {}", cycles.join(" "))?;
            let checks: Vec<String> = witness
                .report()
                .checks()
                .iter()
                .map(|c| format!("{}={}", c.kind.name(), if c.passed { "pass" } else { "FAIL" }))
                .collect();
            writeln!(io.out, "checks {}", checks.join(" "))
        }
    }
}

fn construct(io: &mut Io, a: OrdersArgs) -> io::Result<i32> {
    let (_, witness) = match construct_witness(a.degree, &a.orders) {
        Ok(w) => w,
        Err(e) => return io.fail(&e),
    };
    let data = RamificationData::new(a.degree, a.orders).expect("constructed data is valid");
    write_witness(io, &data, &witness)?;
    Ok(EXIT_OK)
}

fn verify(io: &mut Io, a: VerifyArgs) -> io::Result<i32> {
    let mut inputs: Vec<Result<(RamificationData, WitnessTuple), Error>> = Vec::new();
    let mut lines = Vec::new();
    if let Some(path) = &a.input {
        let mut text = String::new();
        if path == "-" {
            io::stdin().read_to_string(&mut text)?;
        } else {
            text = match fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return io.fail(&Error::Parse(format!("{path}: {e}"))),
            };
        }
        lines.extend(text.lines().filter(|l| !l.trim().is_empty()).map(str::to_string));
    }
    if let Some(r) = &a.record {
        lines.push(r.clone());
    }
    for line in &lines {
        inputs.push(
            WitnessRecord::parse(line)
                .map_err(|e| Error::Parse(format!("witness record: {e}")))
                .and_then(|r| Ok((r.data()?, r.witness()?))),
        );
    }
    if let (Some(text), Some(d), Some(orders)) = (&a.cycles, a.degree, &a.orders) {
        inputs.push((|| {
            let mut data = RamificationData::new(d, orders.clone())?;
            if a.genus.is_some() {
                data = data.with_genus(a.genus);
            }
            let cycles = hurwitz_core::perm::parse_cycle_groups(text)?
                .into_iter()
                .map(|s| Cycle::new(d, s))
                .collect::<Result<Vec<_>, _>>()?;
            Ok((data, WitnessTuple::new(d, cycles)?))
        })());
    }
    if inputs.is_empty() {
        return io.fail(&Error::Parse("no witness given".into()));
    }

    let mut code = EXIT_OK;
    for input in inputs {
        let (data, witness) = match input {
            Ok(v) => v,
            Err(e) => return io.fail(&e),
        };
        let report = verify_witness(&witness, &data, a.strict);
        let witness = witness.certify(&data, a.strict);
        write_witness(io, &data, &witness)?;
        if !report.passed() {
            for c in report.failures() {
                writeln!(io.err, "hurwitz: {} check failed: {}", c.kind.name(), c.detail)?;
            }
            code = EXIT_NEGATIVE;
        }
    }
    Ok(code)
}

fn write_search(io: &mut Io, profile: &Profile, outcome: &SearchOutcome) -> io::Result<()> {
    match io.format {
        Format::Json => writeln!(
            io.out,
            "{}",
            SearchRecord::new(profile.degree(), profile.to_string(), outcome).to_line()
        ),
        Format::Text => {
            if outcome.exists {
                writeln!(io.out, "cover exists")?;
            } else {
                writeln!(io.out, "no cover exists")?;
            }
            writeln!(io.out, "tuples with first fixed {}", outcome.tuples_with_first_fixed)?;
            writeln!(io.out, "raw tuples {}", outcome.raw_tuple_count)?;
            if let Some(c) = outcome.class_count {
                writeln!(io.out, "conjugation classes {c}")?;
            }
            if let Some(w) = &outcome.witness {
                let perms: Vec<String> = w.iter().map(ToString::to_string).collect();
                writeln!(io.out, "witness {}", perms.join(" "))?;
            }
            Ok(())
        }
    }
}

fn search(io: &mut Io, a: SearchArgs, counting: bool) -> io::Result<i32> {
    let base = if counting {
        SearchLimits::counting()
    } else {
        SearchLimits::existence()
    };
    let outcome = a.caps.limits(base).and_then(|limits| {
        let profile = parse_profile(a.degree, &a.profiles)?;
        let outcome = if counting {
            count_classes_with(&profile, &limits)?
        } else {
            search_exists_with(&profile, true, &limits)?
        };
        Ok((profile, outcome))
    });
    let (profile, outcome) = match outcome {
        Ok(v) => v,
        Err(e) => return io.fail(&e),
    };
    write_search(io, &profile, &outcome)?;
    Ok(if outcome.exists { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cross_check(io: &mut Io, a: CrossCheckArgs) -> io::Result<i32> {
    let (d, orders) = (a.data.degree, &a.data.orders);
    let agree = match a
        .caps
        .limits(SearchLimits::existence())
        .and_then(|limits| cross_check_with(d, orders, &limits))
    {
        Ok(v) => v,
        Err(e) => return io.fail(&e),
    };
    let genus = rh_genus(d, orders).ok();
    let predicted = genus.is_some_and(|g| g >= 0);
    match io.format {
        Format::Json => writeln!(
            io.out,
            "{}",
            json!({"degree": d, "orders": orders, "genus": genus, "predicted": predicted, "agree": agree})
        )?,
        Format::Text if agree => writeln!(
            io.out,
            "agree: cover {}",
            if predicted { "exists" } else { "does not exist" }
        )?,
        Format::Text => writeln!(io.out, "DISAGREE: criterion predicts existence = {predicted}")?,
    }
    Ok(if agree { EXIT_OK } else { EXIT_NEGATIVE })
}
