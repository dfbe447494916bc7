//! Command-line front end. Every command renders to a string; `main` prints it and
//! maps errors to exit codes.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::decomposition::{decomp_minimal, decomp_subregular, simple_singularity};
use crate::error::{Error, Result};
use crate::gln_springer::{psi, springer_image, Partition};
use crate::int_linalg::{cokernel, is_prime, tensor_f_dimension, AbelianGroup};
use crate::long_root_poset::LongRootPoset;
use crate::orbit_cohomology::{
    bad_torsion_report, from_poset, middle_via_lattice, rational_half_check,
};
use crate::root_system::{build, Series, TypeLabel};
use crate::weyl_oracle::{check_level_length, check_longest_element, check_reflection_length, DEFAULT_GUARD};

#[derive(Debug, Parser)]
#[command(name = "minorbit", version, about = "Cohomology of minimal nilpotent orbits and related decomposition numbers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct TypeArgs {
    /// Root system type, e.g. E8 or b4
    #[arg(long = "type", value_name = "LABEL")]
    pub type_label: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integral cohomology of the minimal orbit
    Cohomology(TypeArgs),
    /// Levels of the long roots and the matrices D_i
    Dmatrices(TypeArgs),
    /// P/Q of the root system and the coweight quotient of the long simple subsystem
    Fundgroup(TypeArgs),
    /// Decomposition numbers
    Decomp {
        #[command(subcommand)]
        which: DecompCommand,
    },
    /// Modular Springer correspondence for GL_n
    SpringerGln {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Check structural identities and, for small Weyl groups, the brute-force oracle
    Verify(TypeArgs),
    /// Cohomology tables for a standard range of types
    Tables {
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
}

#[derive(Debug, Args)]
pub struct DecompArgs {
    #[command(flatten)]
    pub target: TypeArgs,
    #[arg(long)]
    pub ell: u64,
}

#[derive(Debug, Subcommand)]
pub enum DecompCommand {
    /// d_{(x_min,1),(0,1)}
    Minimal(DecompArgs),
    /// d_{(x_reg,1),(x_subreg,rho)} for each rho
    Subregular(DecompArgs),
    /// Simple singularity data, with dim F (x) P/Q when --ell is given
    Simple {
        #[command(flatten)]
        target: TypeArgs,
        #[arg(long)]
        ell: Option<u64>,
    },
}

/// Process exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidType(_) | Error::Parse(_) => 2,
        Error::Domain(_) | Error::Refused(_) => 3,
        Error::InvariantFailure(_) => 4,
    }
}

fn parse_type(s: &str) -> Result<TypeLabel> {
    s.parse()
}

fn pretty(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

pub fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Cohomology(a) => cohomology(parse_type(&a.type_label)?, a.format),
        Command::Dmatrices(a) => dmatrices(parse_type(&a.type_label)?, a.format),
        Command::Fundgroup(a) => fundgroup(parse_type(&a.type_label)?, a.format),
        Command::Decomp { which } => decomp(which),
        Command::SpringerGln { n, ell, format } => springer(*n, *ell, *format),
        Command::Verify(a) => verify(parse_type(&a.type_label)?, a.format),
        Command::Tables { all, format } => {
            if !*all {
                return Err(Error::Parse("tables requires --all".into()));
            }
            tables(*format)
        }
    }
}

fn cohomology(t: TypeLabel, format: OutputFormat) -> Result<String> {
    let rs = build(t);
    let oc = from_poset(&rs, &LongRootPoset::new(&rs));
    Ok(match format {
        OutputFormat::Text => oc.render_text(),
        OutputFormat::Json => oc.to_json() + "\n",
    })
}

fn matrix_text(rows: &[Vec<i64>]) -> String {
    let width = rows
        .iter()
        .flatten()
        .map(|v| v.to_string().len())
        .max()
        .unwrap_or(1);
    rows.iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|v| format!("{v:>width$}")).collect();
            format!("    [{}]\n", cells.join(" "))
        })
        .collect()
}

fn dmatrices(t: TypeLabel, format: OutputFormat) -> Result<String> {
    let rs = build(t);
    let p = LongRootPoset::new(&rs);
    let names = |k: usize| -> Vec<String> { p.levels()[k].iter().map(|r| r.to_string()).collect() };
    match format {
        OutputFormat::Json => {
            let ds: Vec<_> = (1..p.d())
                .map(|i| {
                    json!({
                        "i": i,
                        "rows": names(i),
                        "cols": names(i - 1),
                        "matrix": p.d_matrix(i).expect("in range").to_i64_rows(),
                    })
                })
                .collect();
            let levels: Vec<_> = (0..p.d()).map(names).collect();
            Ok(pretty(json!({
                "type": t,
                "h_dual": p.h_dual(),
                "d": p.d(),
                "levels": levels,
                "D": ds,
            })))
        }
        OutputFormat::Text => {
            let mut out = format!("Long roots of {t} by level (h_dual = {}, d = {}):\n", p.h_dual(), p.d());
            for k in 0..p.d() {
                writeln!(out, "  {k:>3}: {}", names(k).join(" ")).unwrap();
            }
            for i in 1..p.d() {
                writeln!(out, "D_{i}: level {} -> level {i}", i - 1).unwrap();
                out.push_str(&matrix_text(&p.d_matrix(i)?.to_i64_rows()));
            }
            Ok(out)
        }
    }
}

fn fundgroup(t: TypeLabel, format: OutputFormat) -> Result<String> {
    let rs = build(t);
    let pq = cokernel(rs.cartan())?;
    let sub = rs.long_simple_subsystem();
    let cow = AbelianGroup::from_cyclic_orders(0, &middle_via_lattice(&rs));
    Ok(match format {
        OutputFormat::Json => pretty(json!({
            "type": t,
            "weight_quotient": pq.torsion,
            "long_simple_subsystem": sub,
            "coweight_quotient": cow.torsion,
        })),
        OutputFormat::Text => format!(
            "P/Q({t}) = {pq}\nlong simple subsystem: {sub}\nP^v/Q^v({sub}) = {cow}\n"
        ),
    })
}

fn decomp(which: &DecompCommand) -> Result<String> {
    match which {
        DecompCommand::Minimal(a) => {
            let t = parse_type(&a.target.type_label)?;
            let v = decomp_minimal(t, a.ell)?;
            Ok(match a.target.format {
                OutputFormat::Text => format!("{v}\n"),
                OutputFormat::Json => pretty(json!({"type": t, "ell": a.ell, "d": v})),
            })
        }
        DecompCommand::Subregular(a) => {
            let t = parse_type(&a.target.type_label)?;
            let m = decomp_subregular(t, a.ell)?;
            Ok(match a.target.format {
                OutputFormat::Text => {
                    let parts: Vec<String> = m.iter().map(|(k, v)| format!("{k}: {v}")).collect();
                    format!("{{{}}}\n", parts.join(", "))
                }
                OutputFormat::Json => {
                    let obj: serde_json::Map<String, serde_json::Value> =
                        m.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
                    pretty(json!({"type": t, "ell": a.ell, "d": obj}))
                }
            })
        }
        DecompCommand::Simple { target, ell } => {
            let t = parse_type(&target.type_label)?;
            let data = simple_singularity(t);
            let dim = match ell {
                Some(l) if !is_prime(*l) => return Err(Error::domain(format!("{l} is not prime"))),
                Some(l) => Some(tensor_f_dimension(&data.quotient, 0, *l)?),
                None => None,
            };
            Ok(match target.format {
                OutputFormat::Json => pretty(json!({
                    "gamma": data.gamma,
                    "gamma_hat": data.gamma_hat,
                    "symmetry_group": data.symmetry_group.to_string(),
                    "quotient": data.quotient,
                    "ell": ell,
                    "dim": dim,
                })),
                OutputFormat::Text => {
                    let mut s = format!(
                        "Gamma = {}, Gamma^ = {}, A(Gamma) = {}, P/Q = {}\n",
                        data.gamma,
                        data.gamma_hat,
                        data.symmetry_group,
                        AbelianGroup::from_cyclic_orders(0, &data.quotient)
                    );
                    if let (Some(l), Some(d)) = (ell, dim) {
                        writeln!(s, "dim F_{l} (x) P/Q = {d}").unwrap();
                    }
                    s
                }
            })
        }
    }
}

/// Partition in exponent notation, e.g. `2,1^2`.
fn compact(p: &Partition) -> String {
    let mut out = Vec::new();
    let parts = p.parts();
    let mut i = 0;
    while i < parts.len() {
        let run = parts[i..].iter().take_while(|&&x| x == parts[i]).count();
        out.push(if run == 1 { parts[i].to_string() } else { format!("{}^{run}", parts[i]) });
        i += run;
    }
    out.join(",")
}

fn springer(n: usize, ell: u64, format: OutputFormat) -> Result<String> {
    if !is_prime(ell) {
        return Err(Error::domain(format!("{ell} is not prime")));
    }
    let image = springer_image(n, ell)?;
    let mut pairs = Vec::new();
    for mu in crate::gln_springer::partitions(n) {
        if mu.is_ell_regular(ell) {
            pairs.push((psi(&mu, ell)?, mu));
        }
    }
    pairs.sort();
    Ok(match format {
        OutputFormat::Json => pretty(json!({
            "n": n,
            "ell": ell,
            "image": image.iter().map(compact).collect::<Vec<_>>(),
            "psi": pairs.iter().map(|(o, mu)| json!({"mu": compact(mu), "orbit": compact(o)})).collect::<Vec<_>>(),
        })),
        OutputFormat::Text => {
            let mut s = format!("GL_{n}, ell = {ell}\n");
            let names: Vec<String> = image.iter().rev().map(compact).collect();
            writeln!(s, "image: {{{}}}", names.join(", ")).unwrap();
            for (o, mu) in pairs.iter().rev() {
                writeln!(s, "  D^({}) -> ({})", compact(mu), compact(o)).unwrap();
            }
            s
        }
    })
}

fn verify(t: TypeLabel, format: OutputFormat) -> Result<String> {
    let rs = build(t);
    let poset = LongRootPoset::new(&rs);
    let oc = from_poset(&rs, &poset);
    let mut checks: Vec<(&str, Result<()>)> = Vec::new();
    checks.push(("cohomology invariants", oc.check_invariants()));
    checks.push(("bad-prime locality", bad_torsion_report(&oc).map(|_| ())));
    checks.push((
        "middle degree vs lattice",
        if oc.get(oc.d as i64).torsion == middle_via_lattice(&rs) && oc.get(oc.d as i64).free_rank == 0 {
            Ok(())
        } else {
            Err(Error::invariant("middle cohomology differs from the coweight quotient"))
        },
    ));
    checks.push((
        "rational classes vs degrees",
        if rational_half_check(&rs, &oc) {
            Ok(())
        } else {
            Err(Error::invariant("free classes below the middle do not match the degrees"))
        },
    ));
    let d = poset.d();
    let transposes = (1..d).all(|i| {
        poset.d_matrix(d - i).expect("in range") == &poset.d_matrix(i).expect("in range").transpose()
    });
    checks.push((
        "D_(d-i) = D_i^T",
        if transposes { Ok(()) } else { Err(Error::invariant("transpose symmetry fails")) },
    ));
    checks.push(("level = length on X", check_level_length(&rs, DEFAULT_GUARD)));
    checks.push(("reflection lengths", check_reflection_length(&rs, DEFAULT_GUARD)));
    checks.push(("longest element identities", check_longest_element(&rs, DEFAULT_GUARD)));

    let mut failure = None;
    let mut rows = Vec::new();
    for (name, r) in checks {
        let status = match &r {
            Ok(()) => "ok".to_string(),
            Err(Error::Refused(msg)) => format!("skipped ({msg})"),
            Err(e) => {
                if failure.is_none() {
                    failure = Some(e.clone());
                }
                format!("FAILED ({e})")
            }
        };
        rows.push((name, status));
    }
    let out = match format {
        OutputFormat::Json => pretty(json!({
            "type": t,
            "checks": rows.iter().map(|(n, s)| json!({"check": n, "status": s})).collect::<Vec<_>>(),
        })),
        OutputFormat::Text => {
            let mut s = format!("verify {t}\n");
            for (n, st) in &rows {
                writeln!(s, "  {n:<28} {st}").unwrap();
            }
            s
        }
    };
    match failure {
        Some(e) => {
            print!("{out}");
            Err(e)
        }
        None => Ok(out),
    }
}

/// Types covered by `tables --all`.
pub fn table_types() -> Vec<TypeLabel> {
    let mut out = Vec::new();
    for (series, lo) in [(Series::A, 1), (Series::B, 2), (Series::C, 2), (Series::D, 4)] {
        for rank in lo..=8 {
            out.push(TypeLabel::new(series, rank).expect("valid rank"));
        }
    }
    for (series, rank) in [(Series::E, 6), (Series::E, 7), (Series::E, 8), (Series::F, 4), (Series::G, 2)] {
        out.push(TypeLabel::new(series, rank).expect("valid rank"));
    }
    out
}

fn tables(format: OutputFormat) -> Result<String> {
    let types = table_types();
    let results: Vec<_> = std::thread::scope(|scope| {
        let handles: Vec<_> = types
            .iter()
            .map(|&t| {
                scope.spawn(move || {
                    let rs = build(t);
                    from_poset(&rs, &LongRootPoset::new(&rs))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    Ok(match format {
        OutputFormat::Text => results.iter().map(|oc| oc.render_text() + "\n").collect(),
        OutputFormat::Json => {
            let items: Vec<serde_json::Value> = results
                .iter()
                .map(|oc| serde_json::from_str(&oc.to_json()).expect("valid json"))
                .collect();
            pretty(serde_json::Value::Array(items))
        }
    })
}
