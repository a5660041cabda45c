//! `binform`: JSON front end to the binform library.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error.

use std::io::Write;
use std::ops::Range;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use binform::bounds::{class_bound, order_bound, BoundInputs};
use binform::census::{census_by_discriminant, fingerprint_spot_check, CensusFlags, CensusOptions};
use binform::equivalence::{find_equivalence_with, EquivalenceOptions};
use binform::family::family_inequivalence_check;
use binform::order::{invariant_order, mobius_image, order_discriminant, order_equal};
use binform::resultant::{discriminant, resultant};
use binform::roots::PRECISION_LADDER;
use binform::sunit::{sunit_solutions_with, verify_bs_bound, SUnitGroupSpec};
use binform::unit_resultant::resultant_unit_search_with;
use binform::weak::weak_equivalence_transform;
use binform::{BinaryForm, Exec, IntMatrix2};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "binform",
    version,
    about = "Integer binary forms up to GL2(Z)-equivalence",
    after_help = "Encodings:\n  form    r:a0,a1,...,ar   e.g. 3:1,0,0,-2 is X^3 - 2Y^3\n  matrix  a,b;c,d          acts by F(aX+bY, cX+dY)\n\n\
                  Output is one JSON document on stdout with a schema_version field.\n\
                  Big integers are decimal strings. Diagnostics go to stderr.\n\
                  Exit codes: 0 success, 1 domain error, 2 usage error."
)]
struct Cli {
    /// Worker threads; 1 runs sequentially. Defaults to all cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Discriminant of a form.
    Disc { form: BinaryForm },
    /// Resultant of two forms.
    Resultant { f: BinaryForm, g: BinaryForm },
    /// Substitute a matrix into a form.
    Act { form: BinaryForm, matrix: IntMatrix2 },
    /// Decide GL2(Z)-equivalence; on success U satisfies G = F_U.
    Equiv {
        f: BinaryForm,
        g: BinaryForm,
        /// Starting precision in bits; larger rungs of the default ladder follow.
        #[arg(long)]
        precision: Option<u32>,
    },
    /// Invariant order of an irreducible form.
    Order { form: BinaryForm },
    /// Compare invariant orders after identifying the two fields by a Moebius map.
    OrderEq {
        f: BinaryForm,
        g: BinaryForm,
        #[arg(long, default_value_t = 256)]
        precision: u32,
    },
    /// Forms in a coefficient box grouped by discriminant and split into classes.
    Census {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        height: u32,
        #[arg(long)]
        irreducible: bool,
        #[arg(long)]
        primitive: bool,
        #[arg(long)]
        squarefree: bool,
        /// Also enumerate forms with a0 = 0 and a1 > 0.
        #[arg(long)]
        leading_zero_band: bool,
        /// Write the report here too; a .csv extension selects CSV.
        #[arg(long)]
        out: Option<PathBuf>,
        /// JSONL cache of class assignments, read for resume and appended to.
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Compare order fingerprints of representatives sharing a discriminant.
        #[arg(long, value_name = "H")]
        spot_check: Option<u32>,
    },
    /// The family F(X, bX + aY) for b in LO..HI (HI exclusive) and its classes.
    Family {
        #[arg(long)]
        form: BinaryForm,
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        betas: Range<i64>,
    },
    /// Forms of degree s in the height box with resultant +-1 against F0.
    Runit {
        #[arg(long)]
        form: BinaryForm,
        #[arg(long)]
        deg: usize,
        #[arg(long)]
        height: u32,
    },
    /// Solutions of x + y = 1 in the group generated by -1 and the primes.
    Sunit {
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long)]
        bound: u32,
    },
    /// Explicit upper bounds on class counts for degree r and index c.
    Bound {
        #[arg(long)]
        degree: u64,
        #[arg(long)]
        c: u64,
    },
}

fn parse_range(s: &str) -> Result<Range<i64>, String> {
    let (lo, hi) = s.split_once("..").ok_or("expected LO..HI")?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("{e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("{e}"))?;
    if hi < lo {
        return Err("HI must be at least LO".into());
    }
    Ok(lo..hi)
}

enum Failure {
    Domain(String),
    Usage(String),
}

impl From<binform::Error> for Failure {
    fn from(e: binform::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn with_schema(mut v: Value) -> Value {
    v["schema_version"] = json!(SCHEMA_VERSION);
    v
}

fn run(cli: Cli, exec: Exec) -> Result<String, Failure> {
    let eq_opts = EquivalenceOptions {
        ladder: PRECISION_LADDER.to_vec(),
        exec,
    };
    let v = match cli.command {
        Command::Disc { form } => json!({
            "form": form.encode(),
            "disc": discriminant(&form).to_string(),
        }),
        Command::Resultant { f, g } => json!({
            "f": f.encode(),
            "g": g.encode(),
            "resultant": resultant(&f, &g).to_string(),
        }),
        Command::Act { form, matrix } => json!({
            "form": form.encode(),
            "matrix": matrix.to_string(),
            "det": matrix.det().to_string(),
            "result": form.transform(&matrix)?.encode(),
        }),
        Command::Equiv { f, g, precision } => {
            let mut opts = eq_opts;
            if let Some(p) = precision {
                if p < 64 {
                    return Err(Failure::Usage("--precision must be at least 64".into()));
                }
                opts.ladder = std::iter::once(p)
                    .chain(PRECISION_LADDER.iter().copied().filter(|&b| b > p))
                    .collect();
            }
            let verdict = find_equivalence_with(&f, &g, &opts)?;
            let mut v = verdict.to_json();
            if let Some(u) = &verdict.certificate {
                v["U"] = json!(u.to_string());
            }
            v["f"] = json!(f.encode());
            v["g"] = json!(g.encode());
            v
        }
        Command::Order { form } => {
            let o = invariant_order(&form)?;
            let mut v = o.to_json();
            v["form"] = json!(form.encode());
            v["discriminant"] = json!(order_discriminant(&o).to_string());
            v
        }
        Command::OrderEq { f, g, precision } => {
            let of = invariant_order(&f)?;
            let og = invariant_order(&g)?;
            let mut v = json!({ "f": f.encode(), "g": g.encode() });
            match weak_equivalence_transform(&f, &g, precision)? {
                Some(w) => {
                    // ⟨T⟩ sends θ_F to θ_G
                    let img = mobius_image(w.t.entries(), &of.min_poly)?;
                    let moved = og.reexpress_in(&img, &of.min_poly)?;
                    v["identified"] = json!(true);
                    v["T"] = json!(w.t.to_string());
                    v["equal"] = json!(order_equal(&of, &moved)?);
                }
                None => {
                    v["identified"] = json!(false);
                    v["equal"] = Value::Null;
                }
            }
            v
        }
        Command::Census {
            degree,
            height,
            irreducible,
            primitive,
            squarefree,
            leading_zero_band,
            out,
            cache,
            spot_check,
        } => {
            let flags = CensusFlags {
                irreducible,
                primitive,
                squarefree,
                leading_zero_band,
            };
            let opts = CensusOptions {
                equivalence: eq_opts,
                cache,
            };
            let start = Instant::now();
            let report = census_by_discriminant(degree, height, flags, &opts)?;
            eprintln!(
                "census: {} forms, {} classes in {:.2?}",
                report.form_count,
                report.class_count,
                start.elapsed()
            );
            let mut v = serde_json::to_value(&report).expect("plain data");
            if let Some(h) = spot_check {
                v["spot_check"] = serde_json::to_value(fingerprint_spot_check(&report, h)?).expect("plain data");
            }
            if let Some(path) = out {
                let body = if path.extension().is_some_and(|e| e == "csv") {
                    report.to_csv()?
                } else {
                    serde_json::to_string_pretty(&v).expect("plain data")
                };
                std::fs::write(&path, body)
                    .map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
            }
            v
        }
        Command::Family { form, a, betas } => family_inequivalence_check(&form, a, betas, &eq_opts)?.to_json(),
        Command::Runit { form, deg, height } => {
            let found = resultant_unit_search_with(&form, deg, height, exec)?;
            json!({
                "form": form.encode(),
                "degree": deg,
                "height": height,
                "count": found.len(),
                "companions": found.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            })
        }
        Command::Sunit { primes, bound } => {
            let group = SUnitGroupSpec::new(primes, bound)?;
            let sols = sunit_solutions_with(&group, exec);
            let check = verify_bs_bound(&group, &sols);
            json!({
                "primes": group.primes(),
                "exponent_bound": bound,
                "count": sols.len(),
                "rank": check.rank,
                "upper_bound": check.bound.to_string(),
                "within_bound": check.holds,
                "solutions": sols.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
            })
        }
        Command::Bound { degree, c } => {
            if degree < 2 {
                return Err(Failure::Usage("--degree must be at least 2".into()));
            }
            if c == 0 {
                return Err(Failure::Usage("--c must be positive".into()));
            }
            json!({
                "degree": degree,
                "c": c,
                "bound": class_bound(degree, c).to_string(),
                "order_bound": order_bound(degree).to_string(),
                "inputs": BoundInputs::new(degree, c),
            })
        }
    };
    Ok(serde_json::to_string_pretty(&with_schema(v)).expect("plain data"))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let exec = match cli.jobs {
        Some(0) => {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        Some(1) => Exec::Sequential,
        Some(n) => {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                eprintln!("warning: {e}");
            }
            Exec::Parallel
        }
        None => Exec::default(),
    };
    match run(cli, exec) {
        Ok(s) => {
            // a closed pipe downstream is not an error of this program
            let _ = writeln!(std::io::stdout().lock(), "{s}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
    }
}
