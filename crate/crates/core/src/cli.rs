//! Command-line front end. Every run is deterministic given its input and
//! flags; exit codes are 0 (success), 1 (a check failed) and 2 (bad input).

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::commutation::{CommutationMatrix, Field, FieldSpecialization};
use crate::dg::DgAlgebra;
use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::homology::{check_exactness, default_bound};
use crate::ideal::{MonomialIdeal, StabilityWitness, StableIdeal};
use crate::invariants::{
    betti_vector, graded_betti, invariants_json, poincare_series, projective_dimension, tor_regularity,
};
use crate::monoid::Monomial;
use crate::resolution::{
    build_resolution, check_quotient_relation, is_minimal, verify_ambient_complex, verify_complex,
};

#[derive(Debug, Parser)]
#[command(name = "skew-ek", version, about = "Resolutions of stable monomial ideals in skew polynomial rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the bases and differential matrices of the resolution.
    Resolve(CommonArgs),
    /// Check d² = 0, minimality and the quotient construction.
    Verify(CommonArgs),
    /// Betti numbers, projective dimension, regularity, series.
    Invariants(InvariantsArgs),
    /// Multiplication table of the DG algebra structure.
    DgTable(CommonArgs),
    /// Check Leibniz, associativity, color commutativity and odd squares.
    DgVerify(DgVerifyArgs),
    /// Certify exactness over a field specialization.
    HomologyCheck(HomologyArgs),
    /// Emit a family ideal as JSON.
    Family(FamilyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Symbolic,
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Ideal file: {"schema":1,"n":2,"generators":[[2,0],[1,1],[0,2]]}.
    #[arg(long, conflicts_with = "ideal", required_unless_present = "ideal")]
    input: Option<std::path::PathBuf>,
    /// Inline ideal JSON.
    #[arg(long)]
    ideal: Option<String>,
    #[arg(long, value_enum, default_value = "symbolic")]
    mode: Mode,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Numeric parameter values, e.g.
    /// {"n":2,"mode":"numeric","field":"Fp","prime":101,"q":{"1,2":3}}.
    #[arg(long)]
    commutation: Option<String>,
}

#[derive(Debug, Args)]
struct InvariantsArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Expand the series up to this degree (default: max generator degree + 5).
    #[arg(long)]
    max_degree: Option<usize>,
}

#[derive(Debug, Args)]
struct DgVerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Refuse algebras with more basis symbols than this.
    #[arg(long, default_value_t = 60)]
    max_basis: usize,
}

#[derive(Debug, Args)]
struct HomologyArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long, default_value_t = 1_000_003)]
    prime: u64,
    /// Seed for random nonzero parameter values in F_p.
    #[arg(long, default_value_t = 0)]
    q_seed: u64,
    /// Use q_ij = 1 (the commutative case) instead of random values.
    #[arg(long)]
    all_ones: bool,
    /// Multidegree box, e.g. "4,4" (default: generator maxima + 2).
    #[arg(long)]
    bound: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyKind {
    /// All monomials of degree d.
    PowerOfM,
    /// Generated by the w with deg(w) = max(w).
    #[value(name = "s-n")]
    SN,
    /// Stable closure of random monomials.
    Random,
}

#[derive(Debug, Args)]
struct FamilyArgs {
    #[arg(value_enum)]
    kind: FamilyKind,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    d: i64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 4)]
    gens: usize,
    #[arg(long, default_value_t = 4)]
    deg_cap: i64,
}

/// Parse `args` (including the program name) and run, writing to `out` and
/// `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {}", describe(&e));
            2
        }
    }
}

fn describe(e: &Error) -> String {
    match e {
        Error::NotStable {
            generator,
            index,
            missing,
        } => {
            let w = StabilityWitness {
                generator: generator.clone(),
                index: *index,
                missing: missing.clone(),
            };
            format!("ideal is not stable; witness {w}")
        }
        other => other.to_string(),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())
        .and_then(|_| if text.ends_with('\n') { Ok(()) } else { out.write_all(b"\n") })
        .map_err(|e| Error::Config(format!("cannot write output: {e}")))
}

fn emit_json(out: &mut dyn Write, value: &serde_json::Value) -> Result<()> {
    emit(out, &serde_json::to_string_pretty(value).expect("serializable"))
}

struct Loaded {
    ideal: MonomialIdeal,
    commutation: CommutationMatrix,
}

fn load(args: &CommonArgs, err: &mut dyn Write) -> Result<Loaded> {
    let text = match (&args.input, &args.ideal) {
        (Some(path), _) => std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?,
        (None, Some(inline)) => inline.clone(),
        (None, None) => return Err(Error::Parse("pass --input FILE or --ideal JSON".into())),
    };
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("ideal JSON: {e}")))?;
    let (ideal, removed) = MonomialIdeal::from_json(&value)?;
    if !removed.is_empty() {
        let dropped: Vec<String> = removed.iter().map(Monomial::render).collect();
        let _ = writeln!(err, "note: dropped non-minimal generators {}", dropped.join(", "));
    }
    let commutation = match &args.commutation {
        Some(text) => {
            let v: serde_json::Value =
                serde_json::from_str(text).map_err(|e| Error::Parse(format!("commutation JSON: {e}")))?;
            CommutationMatrix::from_json(&v)?
        }
        None => CommutationMatrix::Symbolic { n: ideal.n() },
    };
    if commutation.n() != ideal.n() {
        return Err(Error::Dimension {
            left: ideal.n(),
            right: commutation.n(),
        });
    }
    if args.mode == Mode::Numeric && !matches!(commutation, CommutationMatrix::Numeric(_)) {
        return Err(Error::Config("numeric mode needs --commutation with numeric values".into()));
    }
    Ok(Loaded { ideal, commutation })
}

fn numeric(loaded: &Loaded, mode: Mode) -> Option<&FieldSpecialization> {
    match (&loaded.commutation, mode) {
        (CommutationMatrix::Numeric(phi), Mode::Numeric) => Some(phi),
        _ => None,
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool> {
    match command {
        Command::Resolve(args) => {
            let loaded = load(&args, err)?;
            let complex = build_resolution(&loaded.ideal)?;
            let phi = numeric(&loaded, args.mode);
            match args.format {
                Format::Text => emit(out, &complex.render_text(phi)?)?,
                Format::Json => {
                    let mut v = complex.to_json();
                    v["commutation"] = loaded.commutation.to_json();
                    emit_json(out, &v)?
                }
            }
            Ok(true)
        }
        Command::Verify(args) => {
            let loaded = load(&args, err)?;
            let complex = build_resolution(&loaded.ideal)?;
            let stable = complex.ideal().clone();
            let square = verify_complex(&complex);
            let minimal = is_minimal(&complex);
            let quotient = check_quotient_relation(&stable);
            let ambient = verify_ambient_complex(&stable)?;
            let ok = square.is_ok() && minimal && quotient.is_ok() && ambient.is_none();
            let square_text = match &square.failure {
                None => "ok".to_string(),
                Some(f) => format!("d_{} ∘ d_{} has entry {} at ({}, {})", f.q, f.q + 1, f.surviving, f.row, f.col),
            };
            let quotient_text = match &quotient {
                Ok(()) => "ok".to_string(),
                Err(e) => e.to_string(),
            };
            let ambient_text = match &ambient {
                None => "ok".to_string(),
                Some(s) => format!("D∘D ≠ 0 on {s}"),
            };
            match args.format {
                Format::Text => emit(
                    out,
                    &format!(
                        "ideal {}\nranks {:?}\nd^2 = 0: {square_text}\nminimal: {}\nquotient relation: {quotient_text}\nambient D^2 = 0: {ambient_text}\nresult: {}\n",
                        stable.render(),
                        complex.ranks(),
                        if minimal { "ok" } else { "unit entry found" },
                        if ok { "pass" } else { "FAIL" }
                    ),
                )?,
                Format::Json => emit_json(
                    out,
                    &json!({
                        "schema": 1,
                        "ideal": stable.to_json(),
                        "ranks": complex.ranks(),
                        "d_squared_zero": square.is_ok(),
                        "d_squared_detail": square_text,
                        "minimal": minimal,
                        "quotient_relation": quotient.is_ok(),
                        "quotient_detail": quotient_text,
                        "ambient_d_squared_zero": ambient.is_none(),
                        "passed": ok,
                    }),
                )?,
            }
            Ok(ok)
        }
        Command::Invariants(args) => {
            let loaded = load(&args.common, err)?;
            let stable = StableIdeal::new(loaded.ideal)?;
            let top = tor_regularity(&stable)?;
            let expand_to = args.max_degree.unwrap_or(top as usize + 5);
            match args.common.format {
                Format::Json => emit_json(out, &invariants_json(&stable, expand_to)?)?,
                Format::Text => {
                    let graded: Vec<String> = graded_betti(&stable)
                        .into_iter()
                        .map(|((i, j), c)| format!("b_{i},{j} = {c}"))
                        .collect();
                    let series = poincare_series(&stable);
                    emit(
                        out,
                        &format!(
                            "ideal {}\nbetti {:?}\ngraded {}\npd {}\nreg {top}\nseries {}\nexpansion {:?}\n",
                            stable.render(),
                            betti_vector(&stable),
                            graded.join(", "),
                            projective_dimension(&stable)?,
                            series.render(),
                            series.expand(expand_to)
                        ),
                    )?
                }
            }
            Ok(true)
        }
        Command::DgTable(args) => {
            let loaded = load(&args, err)?;
            let alg = DgAlgebra::new(&loaded.ideal)?;
            match args.format {
                Format::Text => emit(out, &alg.render_table())?,
                Format::Json => emit_json(out, &alg.table_json())?,
            }
            Ok(true)
        }
        Command::DgVerify(args) => {
            let loaded = load(&args.common, err)?;
            let alg = DgAlgebra::new(&loaded.ideal)?;
            if alg.basis().len() > args.max_basis {
                return Err(Error::Config(format!(
                    "the algebra has {} basis symbols, above --max-basis {}",
                    alg.basis().len(),
                    args.max_basis
                )));
            }
            let checks = [
                alg.check_leibniz(),
                alg.check_associativity(),
                alg.check_color_commutativity(),
                alg.check_odd_squares(args.trials, args.seed),
            ];
            let ok = checks.iter().all(|c| c.passed());
            match args.common.format {
                Format::Text => {
                    let mut text = String::new();
                    for c in &checks {
                        match &c.failure {
                            None => text.push_str(&format!("{}: pass ({} cases)\n", c.name, c.cases)),
                            Some(f) => text.push_str(&format!("{}: FAIL {f}\n", c.name)),
                        }
                    }
                    emit(out, &text)?
                }
                Format::Json => emit_json(
                    out,
                    &json!({
                        "schema": 1,
                        "basis_size": alg.basis().len(),
                        "checks": checks.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
                        "passed": ok,
                    }),
                )?,
            }
            Ok(ok)
        }
        Command::HomologyCheck(args) => {
            let loaded = load(&args.common, err)?;
            let n = loaded.ideal.n();
            let phi = match (&loaded.commutation, args.all_ones) {
                (CommutationMatrix::Numeric(phi), _) => phi.clone(),
                (CommutationMatrix::Symbolic { .. }, true) => {
                    FieldSpecialization::all_ones(Field::prime(args.prime)?, n)
                }
                (CommutationMatrix::Symbolic { .. }, false) => {
                    FieldSpecialization::random_prime(args.prime, n, args.q_seed)?
                }
            };
            let bound = match &args.bound {
                Some(text) => parse_bound(text)?,
                None => default_bound(&loaded.ideal),
            };
            let report = check_exactness(&loaded.ideal, &phi, Some(&bound))?;
            match args.common.format {
                Format::Json => emit_json(out, &report.to_json())?,
                Format::Text => {
                    let mut text = format!(
                        "ideal {}\nfield {}\nbound {}\nmultidegrees checked {}\n",
                        loaded.ideal.render(),
                        phi.field().label(),
                        bound,
                        report.records.len()
                    );
                    match report.first_failure() {
                        None => text.push_str("exact: yes\n"),
                        Some(r) => text.push_str(&format!(
                            "exact: NO at {}: {}\n",
                            r.multidegree,
                            r.problems.join("; ")
                        )),
                    }
                    emit(out, &text)?
                }
            }
            Ok(report.is_exact())
        }
        Command::Family(args) => {
            let spec = match args.kind {
                FamilyKind::PowerOfM => FamilySpec::PowerOfM { n: args.n, d: args.d },
                FamilyKind::SN => FamilySpec::SN { n: args.n },
                FamilyKind::Random => FamilySpec::RandomStable {
                    n: args.n,
                    seed: args.seed,
                    gen_count: args.gens,
                    deg_cap: args.deg_cap,
                },
            };
            emit_json(out, &spec.build()?.to_json())?;
            Ok(true)
        }
    }
}

fn parse_bound(text: &str) -> Result<Monomial> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad bound {text:?}")))
        })
        .collect::<Result<Vec<_>>>()
        .map(Monomial::new)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("skew-ek").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    const EX: &str = r#"{"schema":1,"n":2,"generators":[[2,0],[1,1],[0,2]]}"#;

    #[test]
    fn resolve_text() {
        let (code, out, _) = call(&["resolve", "--ideal", EX]);
        assert_eq!(code, 0);
        assert!(out.contains("-q*x"), "{out}");
        assert!(out.contains("-q^2*x"));
    }

    #[test]
    fn resolve_numeric() {
        let comm = r#"{"n":2,"mode":"numeric","field":"Fp","prime":101,"q":{"1,2":3}}"#;
        let (code, out, _) = call(&["resolve", "--ideal", EX, "--mode", "numeric", "--commutation", comm]);
        assert_eq!(code, 0);
        assert!(out.contains("98*x"), "{out}");
        let (code, _, err) = call(&["resolve", "--ideal", EX, "--mode", "numeric"]);
        assert_eq!(code, 2);
        assert!(err.contains("numeric mode"));
    }

    #[test]
    fn unstable_input() {
        let (code, _, err) = call(&["resolve", "--ideal", r#"{"n":2,"generators":[[1,1]]}"#]);
        assert_eq!(code, 2);
        assert!(err.contains("(x*y, 1): x^2 ∉ I"), "{err}");
        let (code, _, _) = call(&["resolve", "--ideal", r#"{"schema":2,"n":1,"generators":[[1]]}"#]);
        assert_eq!(code, 2);
        let (code, _, _) = call(&["resolve"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn check_subcommands() {
        assert_eq!(call(&["verify", "--ideal", EX]).0, 0);
        assert_eq!(call(&["dg-verify", "--ideal", EX, "--trials", "20"]).0, 0);
        assert_eq!(call(&["homology-check", "--ideal", EX, "--bound", "3,3"]).0, 0);
        assert_eq!(call(&["dg-verify", "--ideal", EX, "--max-basis", "2"]).0, 2);
        let (code, out, _) = call(&["invariants", "--ideal", EX, "--format", "json", "--max-degree", "3"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["poincare"]["expansion"], json!([0, 0, 3, 4]));
    }

    #[test]
    fn family_round_trip() {
        let (code, out, _) = call(&["family", "power-of-m", "--n", "2", "--d", "2"]);
        assert_eq!(code, 0);
        let (code, again, _) = call(&["family", "power-of-m", "--n", "2", "--d", "2"]);
        assert_eq!((code, &again), (0, &out));
        let (code, table, _) = call(&["dg-table", "--ideal", &out]);
        assert_eq!(code, 0);
        assert!(table.contains("e(1;x^2)*q^-2*y^2"));
        let (code, out, _) = call(&["family", "s-n", "--n", "3"]);
        assert_eq!(code, 0);
        assert_eq!(call(&["verify", "--ideal", &out, "--format", "json"]).0, 0);
    }
}
