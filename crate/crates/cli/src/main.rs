mod artifact;
mod commands;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use laurent_core::error::{Error, ErrorClass, Result};

use artifact::{parse_field, RingDecl, RingKind};

const PREC_ENV: &str = "LAURENT_DEFAULT_PREC";

#[derive(Parser)]
#[command(
    name = "laurent",
    about = "Weierstrass division, sum-of-squares transfers, quadratic form \
             invariants, and blow-up valuations over truncated power series",
    arg_required_else_help = true
)]
struct Cli {
    /// Report style on stdout
    #[arg(long, global = true, value_parser = ["text", "structured"], default_value = "text")]
    format: String,

    /// Also write the structured artifact to this path
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Recorded in the artifact; every algorithm here is deterministic
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RingOpts {
    /// Input ring: multi, mixed, polyb, or uni
    #[arg(long)]
    ring: Option<String>,

    /// Comma-separated variable names
    #[arg(long)]
    vars: Option<String>,

    /// Coefficient field: q or q-sqrt:<d>
    #[arg(long, default_value = "q")]
    field: String,

    /// Precision for series inputs without an explicit O(...) marker
    #[arg(long)]
    prec: Option<usize>,
}

fn default_vars(ring: RingKind) -> Vec<String> {
    let names: &[&str] = match ring {
        RingKind::Multi => &["t1", "t2"],
        RingKind::Mixed | RingKind::Polyb => &["x", "t"],
        RingKind::Uni => &["t"],
    };
    names.iter().map(|s| (*s).to_string()).collect()
}

fn resolve_prec(flag: Option<usize>) -> Result<usize> {
    if let Some(p) = flag {
        return Ok(p);
    }
    match std::env::var(PREC_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::BadFormat(format!("bad {PREC_ENV} value `{s}`"))),
        Err(_) => Ok(8),
    }
}

impl RingOpts {
    fn decl(&self, default: RingKind, allowed: &[RingKind]) -> Result<RingDecl> {
        let ring = match &self.ring {
            Some(r) => RingKind::from_name(r)?,
            None => default,
        };
        if !allowed.contains(&ring) {
            return Err(Error::BadFormat(format!(
                "this command does not work in ring `{}`",
                ring.name()
            )));
        }
        let vars = match &self.vars {
            Some(v) => v.split(',').map(|s| s.trim().to_string()).collect(),
            None => default_vars(ring),
        };
        RingDecl::new(ring, vars, parse_field(&self.field)?, resolve_prec(self.prec)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Divide g by a tn-regular f: g = q*f + r with deg_tn r below the order
    Divide {
        g: String,
        f: String,
        #[command(flatten)]
        ring: RingOpts,
    },
    /// Factor f into a unit times a distinguished polynomial in tn
    Prepare {
        f: String,
        #[command(flatten)]
        ring: RingOpts,
    },
    /// Find one change of variables making every input tn-regular
    Regularize {
        #[arg(required = true)]
        inputs: Vec<String>,
        #[command(flatten)]
        ring: RingOpts,
    },
    /// Pull a stored sum-of-squares certificate into a polynomial subring
    SosTransfer {
        /// Transfer route
        #[arg(value_parser = ["lemma41", "lemma52", "prop53"])]
        variant: String,
        /// Stored sos-certificate file(s); prop53 accepts several
        #[arg(long, required = true, num_args = 1..)]
        cert: Vec<PathBuf>,
    },
    /// Unit-times-polynomial factorization in k[x][[t]]
    Factor {
        f: String,
        #[command(flatten)]
        ring: RingOpts,
    },
    /// Clear the shared denominator from a rational sum-of-squares representation
    CpDescend {
        f: String,
        den: String,
        #[arg(required = true)]
        num: Vec<String>,
        /// Polynomial variable
        #[arg(long, default_value = "x")]
        var: String,
        /// Coefficient field: q or q-sqrt:<d>
        #[arg(long, default_value = "q")]
        field: String,
    },
    /// Shortest sum-of-squares representation of a positive rational
    #[command(allow_negative_numbers = true)]
    SosLength { value: String },
    /// Minimal certificate for t^2 + a over the rational function field
    #[command(allow_negative_numbers = true)]
    Bridge { a: String },
    /// Quadratic form computations over the rationals
    #[command(subcommand)]
    Qform(QformCmd),
    /// Blow-up valuations at the origin
    #[command(subcommand)]
    Valuation(ValuationCmd),
    /// Re-check a stored artifact
    Verify { file: PathBuf },
}

#[derive(Subcommand)]
enum QformCmd {
    /// Hilbert symbol (a, b) at a place of the rationals
    #[command(allow_negative_numbers = true)]
    Hilbert {
        a: String,
        b: String,
        /// real, 2, or an odd prime
        #[arg(long)]
        place: String,
    },
    /// Isotropy of a diagonal form, with a witness in dimensions 2 to 5
    #[command(allow_negative_numbers = true)]
    Isotropic {
        #[arg(required = true)]
        entries: Vec<String>,
    },
    /// Whether the form's Witt class is torsion
    #[command(allow_negative_numbers = true)]
    Torsion {
        #[arg(required = true)]
        entries: Vec<String>,
    },
    /// Move binary torsion blocks into the polynomial subring
    Transfer {
        /// Stored qform-blocks file
        #[arg(long)]
        blocks: PathBuf,
    },
}

#[derive(Subcommand)]
enum ValuationCmd {
    /// Order of vanishing at the origin
    Origin {
        f: String,
        #[command(flatten)]
        ring: RingOpts,
    },
    /// Residue of f/g on the exceptional divisor of the first blow-up
    Residue {
        f: String,
        g: String,
        #[command(flatten)]
        ring: RingOpts,
    },
    /// Composite valuation through a point of the first exceptional divisor
    Blowup2 {
        f: String,
        g: Option<String>,
        /// Monic polynomial in u cutting out the point (degree 1 or 2)
        #[arg(long)]
        point: String,
        #[command(flatten)]
        ring: RingOpts,
    },
    /// Push a stored sum-of-squares certificate into the residue field
    SosResidue {
        /// Stored sos-certificate file over the series ring
        #[arg(long)]
        cert: PathBuf,
    },
}

const MULTI: &[RingKind] = &[RingKind::Multi];
const MIXED: &[RingKind] = &[RingKind::Mixed];

fn run(cli: &Cli) -> Result<commands::Output> {
    match &cli.command {
        Command::Divide { g, f, ring } => {
            commands::run_divide(&ring.decl(RingKind::Multi, MULTI)?, g, f)
        }
        Command::Prepare { f, ring } => {
            commands::run_prepare(&ring.decl(RingKind::Multi, MULTI)?, f)
        }
        Command::Regularize { inputs, ring } => {
            commands::run_regularize(&ring.decl(RingKind::Multi, MULTI)?, inputs)
        }
        Command::SosTransfer { variant, cert } => commands::run_sos_transfer(variant, cert),
        Command::Factor { f, ring } => {
            commands::run_factor(&ring.decl(RingKind::Mixed, MIXED)?, f)
        }
        Command::CpDescend { f, den, num, var, field } => {
            commands::run_cp_descend(var, &parse_field(field)?, f, den, num)
        }
        Command::SosLength { value } => commands::run_sos_length(value),
        Command::Bridge { a } => commands::run_bridge(a),
        Command::Qform(q) => match q {
            QformCmd::Hilbert { a, b, place } => commands::run_qform_hilbert(a, b, place),
            QformCmd::Isotropic { entries } => commands::run_qform_isotropic(entries),
            QformCmd::Torsion { entries } => commands::run_qform_torsion(entries),
            QformCmd::Transfer { blocks } => commands::run_qform_transfer(blocks),
        },
        Command::Valuation(v) => match v {
            ValuationCmd::Origin { f, ring } => {
                commands::run_valuation_origin(&ring.decl(RingKind::Multi, MULTI)?, f)
            }
            ValuationCmd::Residue { f, g, ring } => {
                commands::run_valuation_residue(&ring.decl(RingKind::Multi, MULTI)?, f, g)
            }
            ValuationCmd::Blowup2 { f, g, point, ring } => commands::run_valuation_blowup2(
                &ring.decl(RingKind::Multi, MULTI)?,
                f,
                g.as_deref(),
                point,
            ),
            ValuationCmd::SosResidue { cert } => commands::run_valuation_sos_residue(cert),
        },
        Command::Verify { file } => commands::run_verify(file),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(mut out) => {
            if let Some(seed) = cli.seed {
                out.artifact.push("seed", seed.to_string());
            }
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, out.artifact.to_text()) {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            if cli.format == "structured" {
                print!("{}", out.artifact.to_text());
            } else {
                println!("{}", out.summary);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.class() {
                ErrorClass::Input => 2,
                ErrorClass::Math => 3,
                ErrorClass::Precision => 4,
            })
        }
    }
}
