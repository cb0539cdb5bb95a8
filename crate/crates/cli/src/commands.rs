use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use serde::Serialize;
use skewbrace::io::{self, FormatError, YbeInput};
use skewbrace::search::{self, SearchError};
use skewbrace::ybe::{self, YbeMap};
use skewbrace::{BraceError, SkewBrace, Sweep, Verdict};

use crate::{Cli, Command, Format};

/// Input and usage errors; all of them exit with status 2.
#[derive(Debug)]
pub enum CliError {
    Read(std::io::Error, String),
    Write(std::io::Error, String),
    Format(FormatError),
    Search(SearchError),
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Read(e, path) => write!(f, "cannot read {path}: {e}"),
            CliError::Write(e, path) => write!(f, "cannot write {path}: {e}"),
            CliError::Format(e) => write!(f, "{e}"),
            CliError::Search(e) => write!(f, "{e}"),
            CliError::Usage(msg) => f.write_str(msg),
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::Format(e)
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        CliError::Search(e)
    }
}

const SUCCESS: u8 = 0;
const FAILURE: u8 = 1;

pub fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    let sweep = Sweep::with_jobs(cli.jobs);
    let code = match &cli.command {
        Command::Verify { file } => verify(cli, &sweep, &read(file)?)?,
        Command::Maps { file, element } => maps(cli, &read(file)?, *element)?,
        Command::RMap { file } => rmap(cli, &read(file)?)?,
        Command::CheckYbe { file } => check_ybe(cli, &sweep, &read(file)?)?,
        Command::Enumerate { order, up_to_iso, oracle } => enumerate(cli, &sweep, *order, *up_to_iso, *oracle)?,
    };
    Ok(ExitCode::from(code))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Read(e, path.display().to_string()))
}

fn emit(cli: &Cli, content: &str) -> Result<(), CliError> {
    match &cli.output {
        Some(path) => fs::write(path, content).map_err(|e| CliError::Write(e, path.display().to_string())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// Parses a brace file; an incompatible pair is a mathematical failure
/// reported on stdout, not an input error.
fn load_brace(text: &str) -> Result<Result<SkewBrace, String>, CliError> {
    match io::parse_brace(text) {
        Ok(b) => Ok(Ok(b)),
        Err(FormatError::Brace(e @ BraceError::NotABrace(..))) => Ok(Err(e.to_string())),
        Err(e) => Err(e.into()),
    }
}

fn verify(cli: &Cli, sweep: &Sweep, text: &str) -> Result<u8, CliError> {
    let pair = io::parse_bigroup(text)?;
    let mut report = String::new();
    let mut failed = false;
    for (identity, verdict) in pair.identity_suite(sweep) {
        let status = match verdict {
            Verdict::Holds => "PASS".to_string(),
            Verdict::Fails(w) => {
                failed = true;
                format!("FAIL {w}")
            }
        };
        writeln!(report, "{:<22} {:<34} {status}", identity.name(), identity.formula()).unwrap();
        if cli.all_witnesses && !verdict.holds() {
            for w in pair.failures(identity) {
                writeln!(report, "    witness {w}").unwrap();
            }
        }
    }
    emit(cli, &report)?;
    Ok(if failed { FAILURE } else { SUCCESS })
}

#[derive(Serialize)]
struct MapsJson {
    n: usize,
    maps: Vec<ElementMaps>,
}

#[derive(Serialize)]
struct ElementMaps {
    element: usize,
    sigma: Vec<usize>,
    tau: Vec<usize>,
}

fn maps(cli: &Cli, text: &str, element: Option<usize>) -> Result<u8, CliError> {
    let brace = match load_brace(text)? {
        Ok(b) => b,
        Err(msg) => {
            println!("{msg}");
            return Ok(FAILURE);
        }
    };
    let n = brace.order();
    let elements: Vec<usize> = match element {
        Some(x) if x >= n => {
            return Err(CliError::Usage(format!("element {x} is out of range for order {n}")));
        }
        Some(x) => vec![x],
        None => (0..n).collect(),
    };
    let out = match cli.format.unwrap_or(Format::Text) {
        Format::Text => elements
            .iter()
            .map(|&x| format!("{x}: sigma={} tau={}\n", brace.sigma_perm(x), brace.tau_perm(x)))
            .collect(),
        Format::Json => {
            let maps = elements
                .iter()
                .map(|&x| ElementMaps {
                    element: x,
                    sigma: brace.sigma_perm(x).image().to_vec(),
                    tau: brace.tau_perm(x).image().to_vec(),
                })
                .collect();
            let mut s = serde_json::to_string(&MapsJson { n, maps }).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("element,map,image\n");
            for &x in &elements {
                let join = |img: &[usize]| img.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
                writeln!(s, "{x},sigma,{}", join(brace.sigma_perm(x).image())).unwrap();
                writeln!(s, "{x},tau,{}", join(brace.tau_perm(x).image())).unwrap();
            }
            s
        }
    };
    emit(cli, &out)?;
    Ok(SUCCESS)
}

fn rmap(cli: &Cli, text: &str) -> Result<u8, CliError> {
    let brace = match load_brace(text)? {
        Ok(b) => b,
        Err(msg) => {
            println!("{msg}");
            return Ok(FAILURE);
        }
    };
    let r = ybe::build_r(&brace);
    let out = match cli.format.unwrap_or(Format::Json) {
        Format::Json => io::rmap_to_json(&r),
        Format::Csv => io::rmap_to_csv(&r),
        Format::Text => return Err(CliError::Usage("r-map supports --format json or csv".into())),
    };
    emit(cli, &out)?;
    Ok(SUCCESS)
}

fn check_ybe(cli: &Cli, sweep: &Sweep, text: &str) -> Result<u8, CliError> {
    let r: YbeMap = match io::parse_ybe_input(text)? {
        YbeInput::Map(r) => r,
        YbeInput::Brace(pair) => match SkewBrace::new(pair.dot().clone(), pair.circ().clone()) {
            Ok(b) => ybe::build_r(&b),
            Err(e) => {
                println!("{e}");
                return Ok(FAILURE);
            }
        },
    };
    let verdict = ybe::check_ybe_with(&r, sweep);
    let mut report = String::new();
    match verdict {
        Verdict::Holds => writeln!(report, "yang-baxter    PASS").unwrap(),
        Verdict::Fails((a, b, c)) => {
            writeln!(
                report,
                "yang-baxter    FAIL ({a}, {b}, {c}): left {:?} != right {:?}",
                r.left_side(a, b, c),
                r.right_side(a, b, c)
            )
            .unwrap();
            if cli.all_witnesses {
                for (a, b, c) in ybe::ybe_failures(&r) {
                    writeln!(report, "    witness ({a}, {b}, {c})").unwrap();
                }
            }
        }
    }
    let yes_no = |v: bool| if v { "yes" } else { "no" };
    writeln!(report, "nondegenerate  {}", yes_no(ybe::check_nondegenerate(&r))).unwrap();
    writeln!(report, "bijective      {}", yes_no(ybe::check_bijective(&r))).unwrap();
    emit(cli, &report)?;
    Ok(if verdict.holds() { SUCCESS } else { FAILURE })
}

fn enumerate(cli: &Cli, sweep: &Sweep, order: usize, up_to_iso: bool, oracle: bool) -> Result<u8, CliError> {
    if matches!(cli.format, Some(Format::Csv | Format::Text)) {
        return Err(CliError::Usage("enumerate writes JSON catalogs only".into()));
    }
    let start = Instant::now();
    let catalog = if oracle {
        search::oracle_enumerate(order, up_to_iso)?
    } else {
        search::enumerate_braces_with(order, up_to_iso, sweep)?
    };
    let elapsed = start.elapsed().as_secs_f64();
    emit(cli, &io::catalog_to_json(&catalog))?;
    let summary =
        format!("order={} raw={} iso={} elapsed={elapsed:.3}s", order, catalog.raw_count(), catalog.iso_count());
    if cli.output.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(SUCCESS)
}
