//! Command-line front end. `run` parses arguments, executes one subcommand
//! and returns the exit status together with everything it printed.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::affine::{format_element, parse_coords, parse_element, ExtAffineElement};
use crate::coeffengine::Engine;
use crate::error::{Error, Result};
use crate::report::{build_report, render_element, render_table, to_json, SCHEMA};
use crate::rootdata::Family;
use crate::weylgroup::parse_word;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "phicoeff", version, about = "Coefficients of pro-p-Iwahori test functions for GL_n and GSp_2n")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the admissible set.
    Adm(Common),
    /// Increasing Bruhat paths and their root systems.
    Paths {
        #[command(flatten)]
        common: Common,
        /// One element, e.g. "t_(1,1,0,0) s_{2312}"; all admissible elements when omitted.
        #[arg(long)]
        w: Option<String>,
    },
    /// Coefficient report of one element, and its value when q, r and s are given.
    Coeff {
        #[command(flatten)]
        common: Common,
        /// Element, e.g. "t_(1,1,0,0) s_{2312}".
        #[arg(long)]
        w: String,
        #[command(flatten)]
        point: Point,
        /// Sample q used for the region scan.
        #[arg(long)]
        region_q: Option<u64>,
    },
    /// Coefficient table of the whole admissible set.
    Table {
        #[command(flatten)]
        common: Common,
        /// Sample q used for the region scan.
        #[arg(long)]
        region_q: Option<u64>,
    },
    /// Compare the path formula with the character-sum oracle on every
    /// admissible element and every residue vector.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Prime power q; every residue vector modulo q - 1 is compared.
        #[arg(long)]
        q: u64,
        /// Defaults to both r = 1 and r = 2.
        #[arg(long)]
        r: Option<u32>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// gl<n> or gsp<2n>, e.g. gl4, gsp6.
    #[arg(long)]
    pub group: String,
    /// Coweight in display coordinates, e.g. 1,1,0,0.
    #[arg(long, allow_hyphen_values = true)]
    pub mu: String,
    /// "preset" or a reduced word of the longest element.
    #[arg(long, default_value = "preset")]
    pub ordering: String,
    /// Assumption q = 1 mod m, written "q=1mod6", "q=1 mod 6" or "6".
    #[arg(long)]
    pub assume: Option<String>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<String>,
    /// Worker threads; all cores when omitted.
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct Point {
    /// Prime power q of the residue field.
    #[arg(long)]
    pub q: Option<u64>,
    /// Degree r of the extension, so t = q^r.
    #[arg(long)]
    pub r: Option<u32>,
    /// Residues of s modulo q - 1, e.g. 0,1,0,0.
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Exit status plus the text destined for standard output and error.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn parse_group(s: &str) -> Result<(Family, usize)> {
    let t = s.trim().to_ascii_lowercase().replace('_', "");
    let (family, rest) = if let Some(r) = t.strip_prefix("gsp") {
        (Family::GSp, r)
    } else if let Some(r) = t.strip_prefix("gl") {
        (Family::GL, r)
    } else {
        return Err(Error::Config(format!("unknown group '{s}'")));
    };
    let k: usize = rest.parse().map_err(|_| Error::Config(format!("unknown group '{s}'")))?;
    match family {
        Family::GSp if !k.is_multiple_of(2) => Err(Error::Config(format!("GSp needs an even size, got '{s}'"))),
        Family::GSp => Ok((family, k / 2)),
        Family::GL => Ok((family, k)),
    }
}

/// `m` from "q=1mod6", "q = 1 mod 6", "q≡1 mod 6" or "6".
pub fn parse_assumption(s: &str) -> Result<u64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let t = t.to_ascii_lowercase();
    let m = match t.split_once("mod") {
        Some((lhs, m)) => {
            let lhs = lhs.trim_start_matches('q').trim_start_matches('=').trim_start_matches('≡');
            if lhs != "1" {
                return Err(Error::Config(format!("assumption must read q = 1 mod m, got '{s}'")));
            }
            m
        }
        None => t.as_str(),
    };
    match m.parse::<u64>() {
        Ok(m) if m > 0 => Ok(m),
        _ => Err(Error::Config(format!("malformed assumption '{s}'"))),
    }
}

fn engine(c: &Common) -> Result<Engine> {
    let (family, n) = parse_group(&c.group)?;
    let mu = parse_coords(&c.mu)?;
    let word = match c.ordering.trim() {
        "preset" | "" => None,
        w => Some(parse_word(w)?),
    };
    Engine::build(family, n, &mu, word.as_deref())
}

fn assumption(c: &Common) -> Result<Option<u64>> {
    c.assume.as_deref().map(parse_assumption).transpose()
}

fn elements(e: &Engine, w: Option<&str>) -> Result<Vec<ExtAffineElement>> {
    match w {
        None => Ok(e.admissible_set()),
        Some(w) => Ok(vec![parse_element(&e.g, w)?]),
    }
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v).map_err(|e| Error::Invalid(e.to_string()))
}

#[derive(Serialize)]
struct AdmJson {
    schema: &'static str,
    group: String,
    mu: Vec<i64>,
    count: usize,
    elements: Vec<String>,
}

#[derive(Serialize)]
struct PathJson {
    w: String,
    paths: Vec<PathEntry>,
}

#[derive(Serialize)]
struct PathEntry {
    edges: Vec<String>,
    length: usize,
    roots: Vec<String>,
    rank: usize,
}

#[derive(Serialize)]
struct ValueJson {
    q: u64,
    r: u32,
    s: Vec<i64>,
    value: String,
}

#[derive(Serialize)]
struct CoeffJson {
    schema: &'static str,
    report: crate::report::Report,
    value: Option<ValueJson>,
}

#[derive(Serialize)]
struct VerifyJson {
    schema: &'static str,
    group: String,
    q: u64,
    r: Vec<u32>,
    comparisons: usize,
    mismatches: Vec<String>,
}

fn cmd_adm(c: &Common) -> Result<(i32, String)> {
    let e = engine(c)?;
    let adm = e.admissible_set();
    let names: Vec<String> = adm.iter().map(|w| format_element(&e.g, w)).collect();
    let out = match c.format {
        Format::Text => {
            let mut s = format!("{} elements\n", names.len());
            for n in &names {
                s.push_str(n);
                s.push('\n');
            }
            s
        }
        Format::Json => json(&AdmJson {
            schema: SCHEMA,
            group: e.g.datum.name(),
            mu: e.g.datum.display_coweight(&e.mu),
            count: names.len(),
            elements: names,
        })?,
    };
    Ok((EXIT_OK, out))
}

fn cmd_paths(c: &Common, w: Option<&str>) -> Result<(i32, String)> {
    let e = engine(c)?;
    let g = &e.g;
    let mut records = Vec::new();
    for x in elements(&e, w)? {
        let terms = e.path_terms(&x)?;
        records.push(PathJson {
            w: format_element(g, &x),
            paths: terms
                .iter()
                .map(|t| PathEntry {
                    edges: t.path.edge_names(g),
                    length: t.length(),
                    roots: t.root_system.labels(g),
                    rank: t.root_system.rank,
                })
                .collect(),
        });
    }
    let out = match c.format {
        Format::Json => json(&records)?,
        Format::Text => {
            let mut s = String::new();
            for r in &records {
                let _ = writeln!(s, "w: {} ({} paths)", r.w, r.paths.len());
                for (i, p) in r.paths.iter().enumerate() {
                    let _ = writeln!(
                        s,
                        "  D{}: E = {{{}}}; l = {}; J = {{{}}}; rank = {}",
                        i + 1,
                        p.edges.join(", "),
                        p.length,
                        p.roots.join(", "),
                        p.rank
                    );
                }
            }
            s
        }
    };
    Ok((EXIT_OK, out))
}

fn cmd_coeff(c: &Common, w: &str, point: &Point, region_q: Option<u64>) -> Result<(i32, String)> {
    let e = engine(c)?;
    let x = parse_element(&e.g, w)?;
    let value = match (point.q, point.r, point.s.as_deref()) {
        (None, None, None) => None,
        (Some(q), Some(r), Some(s)) => {
            if r == 0 {
                return Err(Error::Invalid("r must be at least 1".into()));
            }
            let s = parse_coords(s)?;
            let v = e.coefficient_value(&x, &s, q, r)?;
            Some(ValueJson { q, r, s, value: v.to_string() })
        }
        _ => return Err(Error::Config("coeff needs all of --q, --r and --s, or none of them".into())),
    };
    let report = build_report(&e, &[x], assumption(c)?, region_q)?;
    let out = match c.format {
        Format::Json => json(&CoeffJson { schema: SCHEMA, report, value })?,
        Format::Text => {
            let mut s = render_element(&report, &report.elements[0]);
            if let Some(v) = value {
                let res: Vec<String> = v.s.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(s, "Value at q = {}, r = {}, s = ({}): {}", v.q, v.r, res.join(","), v.value);
            }
            s
        }
    };
    Ok((EXIT_OK, out))
}

fn cmd_table(c: &Common, region_q: Option<u64>) -> Result<(i32, String)> {
    let e = engine(c)?;
    let report = build_report(&e, &e.admissible_set(), assumption(c)?, region_q)?;
    let out = match c.format {
        Format::Text => render_table(&report),
        Format::Json => to_json(&report)?,
    };
    Ok((EXIT_OK, out))
}

/// All residue vectors of `(ℤ/n)^d` in lexicographic order.
fn residues(n: u64, d: usize) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::with_capacity(d)];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..n as i64).map(move |k| {
                    let mut v = v.clone();
                    v.push(k);
                    v
                })
            })
            .collect();
    }
    out
}

fn cmd_verify(c: &Common, q: u64, r: Option<u32>) -> Result<(i32, String)> {
    if q < 3 {
        return Err(Error::Invalid(format!("verify needs q >= 3, got {q}")));
    }
    let rs = match r {
        Some(0) => return Err(Error::Invalid("r must be at least 1".into())),
        Some(r) => vec![r],
        None => vec![1, 2],
    };
    let e = engine(c)?;
    let d = e.d();
    crate::coeffengine::enumeration_guard(q - 1, d)?;
    let adm = e.admissible_set();
    let svecs = residues(q - 1, d);
    let per_w: Vec<Vec<String>> = adm
        .par_iter()
        .map(|w| -> Result<Vec<String>> {
            let terms = e.path_terms(w)?;
            let mut bad = Vec::new();
            for s in &svecs {
                let main = e.numerator(&terms, s, q)?;
                let oracle = e.bruteforce_numerator(&terms, w, s, q)?;
                for &r in &rs {
                    let a = crate::coeffengine::evaluate(&main, q, r, d);
                    let b = crate::coeffengine::evaluate(&oracle, q, r, d);
                    if a != b {
                        bad.push(format!("{} s={s:?} r={r}: formula {a} != oracle {b}", format_element(&e.g, w)));
                    }
                }
            }
            Ok(bad)
        })
        .collect::<Result<_>>()?;
    let mismatches: Vec<String> = per_w.into_iter().flatten().collect();
    let comparisons = adm.len() * svecs.len() * rs.len();
    let code = if mismatches.is_empty() { EXIT_OK } else { EXIT_VERIFY };
    let out = match c.format {
        Format::Json => json(&VerifyJson {
            schema: SCHEMA,
            group: e.g.datum.name(),
            q,
            r: rs,
            comparisons,
            mismatches,
        })?,
        Format::Text => {
            let mut s = String::new();
            for m in &mismatches {
                let _ = writeln!(s, "MISMATCH {m}");
            }
            let rs: Vec<String> = rs.iter().map(|r| r.to_string()).collect();
            let _ = writeln!(
                s,
                "{}: {} elements x {} residue vectors x r in {{{}}} = {} comparisons, {} mismatches",
                e.g.datum.name(),
                adm.len(),
                svecs.len(),
                rs.join(","),
                comparisons,
                mismatches.len()
            );
            s
        }
    };
    Ok((code, out))
}

fn execute(cmd: &Command) -> Result<(i32, String)> {
    match cmd {
        Command::Adm(c) => cmd_adm(c),
        Command::Paths { common, w } => cmd_paths(common, w.as_deref()),
        Command::Coeff { common, w, point, region_q } => cmd_coeff(common, w, point, *region_q),
        Command::Table { common, region_q } => cmd_table(common, *region_q),
        Command::Verify { common, q, r } => cmd_verify(common, *q, *r),
    }
}

fn common(cmd: &Command) -> &Common {
    match cmd {
        Command::Adm(c) => c,
        Command::Paths { common, .. }
        | Command::Coeff { common, .. }
        | Command::Table { common, .. }
        | Command::Verify { common, .. } => common,
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Invariant(_) => EXIT_VERIFY,
        _ => EXIT_INVALID,
    }
}

/// Runs one invocation; `args[0]` is the program name. Output destined for a
/// file named by `--out` is written there and not returned.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let c = common(&cli.command);
    let result = match c.jobs {
        Some(0) => Err(Error::Config("--jobs must be positive".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Config(e.to_string()))
            .and_then(|pool| pool.install(|| execute(&cli.command))),
        None => execute(&cli.command),
    };
    match result {
        Err(e) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
        Ok((code, text)) => match &c.out {
            None => Outcome { code, stdout: text, stderr: String::new() },
            Some(path) => match std::fs::write(path, &text) {
                Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
                Err(e) => Outcome {
                    code: EXIT_INVALID,
                    stdout: String::new(),
                    stderr: format!("error: cannot write {path}: {e}\n"),
                },
            },
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups() {
        assert_eq!(parse_group("gl4").unwrap(), (Family::GL, 4));
        assert_eq!(parse_group("GSp_6").unwrap(), (Family::GSp, 3));
        assert!(parse_group("gsp5").is_err());
        assert!(parse_group("so5").is_err());
    }

    #[test]
    fn assumptions() {
        for s in ["q=1mod6", "q = 1 mod 6", "q≡1 mod 6", "6"] {
            assert_eq!(parse_assumption(s).unwrap(), 6, "{s}");
        }
        assert!(parse_assumption("q=2mod6").is_err());
        assert!(parse_assumption("0").is_err());
    }

    #[test]
    fn residue_enumeration() {
        let r = residues(2, 3);
        assert_eq!(r.len(), 8);
        assert_eq!(r[1], vec![0, 0, 1]);
    }
}
