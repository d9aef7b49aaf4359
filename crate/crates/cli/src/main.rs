//! `zgraded`: command-line front end for the kernel.
//!
//! Inputs are files in the kernel's text formats; an algebra may also be
//! given inline (`"algebra n=2 gens 01*1 10*1 11*1 cap=3"`). Output is the
//! canonical text of the result, readable by the same parsers.
//!
//! Exit codes: 0 success, 2 parse error, 3 domain error, 4 internal
//! invariant failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use zgraded::action::corrupted_action;
use zgraded::gmatrix::is_identity;
use zgraded::text::{
    parse_algebra, parse_element, parse_matrix, parse_morphism, parse_point, parse_shape,
    write_matrix, write_point,
};
use zgraded::{
    canonical_action, check_action_axioms, gl0_dimension, sym_basis, Algebra, Convention, Error,
    ErrorKind,
};

#[derive(Parser)]
#[command(name = "zgraded", version, about = "Exact arithmetic over truncated Z2^n-Grassmann algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Graded dimension of the degree-0 matrices with the given row and column shapes.
    Dim { rows: String, cols: String },
    /// Inverse of a degree-0 matrix, verified before printing.
    Invert { matrix: PathBuf },
    /// Product of two matrices, or of two elements with --algebra.
    Mul {
        left: String,
        right: String,
        /// Read LEFT and RIGHT as element expressions in this algebra.
        #[arg(long)]
        algebra: Option<String>,
    },
    /// Image of a point under a morphism.
    Eval { morphism: PathBuf, point: PathBuf },
    /// Canonical action of a matrix on a point.
    Act { matrix: PathBuf, point: PathBuf },
    /// Randomized check of the action axioms.
    CheckAction {
        algebra: String,
        #[arg(long)]
        shape: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ConventionArg::Right)]
        convention: ConventionArg,
        #[arg(long, value_enum, default_value_t = SigmaArg::Canonical)]
        sigma: SigmaArg,
        /// Where to write the counterexample if an axiom fails.
        #[arg(long, default_value = "witness.txt")]
        witness: PathBuf,
    },
    /// The three invertibility criteria for a degree-0 matrix.
    CheckInvertible { matrix: PathBuf },
    /// Basis of the degree-k part of the graded symmetric algebra.
    Basis { algebra: String, k: usize },
    /// Composite OUTER ∘ INNER of two morphisms.
    Compose { outer: PathBuf, inner: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Right,
    Left,
}

#[derive(Clone, Copy, ValueEnum)]
enum SigmaArg {
    Canonical,
    Corrupt,
}

#[derive(Debug)]
enum Failure {
    Kernel(Error),
    Io(PathBuf, std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Kernel(e)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn algebra_arg(arg: &str) -> Result<Algebra, Failure> {
    if arg.trim_start().starts_with("algebra") {
        Ok(parse_algebra(arg)?)
    } else {
        Ok(parse_algebra(&read(Path::new(arg))?)?)
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    let out = match cli.command {
        Command::Dim { rows, cols } => {
            format!("{}\n", gl0_dimension(&parse_shape(&rows)?, &parse_shape(&cols)?)?)
        }
        Command::Invert { matrix } => {
            let x = parse_matrix(&read(&matrix)?)?;
            let inv = x.invert()?;
            if !is_identity(&x.mat_mul(&inv)?) {
                return Err(Error::Invariant("X·X⁻¹ is not the identity".into()).into());
            }
            write_matrix(&inv)
        }
        Command::Mul { left, right, algebra: Some(alg) } => {
            let alg = algebra_arg(&alg)?;
            let product = &parse_element(&alg, &left)? * &parse_element(&alg, &right)?;
            format!("{product}\n")
        }
        Command::Mul { left, right, algebra: None } => {
            let x = parse_matrix(&read(Path::new(&left))?)?;
            let y = parse_matrix(&read(Path::new(&right))?)?;
            write_matrix(&x.mat_mul(&y)?)
        }
        Command::Eval { morphism, point } => {
            let phi = parse_morphism(&read(&morphism)?)?;
            write_point(&phi.evaluate(&parse_point(&read(&point)?)?)?)
        }
        Command::Act { matrix, point } => {
            let x = parse_matrix(&read(&matrix)?)?;
            write_point(&canonical_action(&x, &parse_point(&read(&point)?)?)?)
        }
        Command::CheckAction {
            algebra,
            shape,
            samples,
            seed,
            convention,
            sigma,
            witness,
        } => {
            let alg = algebra_arg(&algebra)?;
            let shape = parse_shape(&shape)?;
            let convention = match convention {
                ConventionArg::Right => Convention::Right,
                ConventionArg::Left => Convention::Left,
            };
            let report = match sigma {
                SigmaArg::Canonical => {
                    check_action_axioms(canonical_action, &alg, &shape, samples, seed, convention)?
                }
                SigmaArg::Corrupt => {
                    check_action_axioms(corrupted_action, &alg, &shape, samples, seed, convention)?
                }
            };
            let mut out = report.to_string();
            if let Some(w) = &report.witness {
                fs::write(&witness, w.to_string()).map_err(|e| Failure::Io(witness.clone(), e))?;
                out.push_str(&format!("witness {}\n", witness.display()));
            }
            out
        }
        Command::CheckInvertible { matrix } => {
            let x = parse_matrix(&read(&matrix)?)?;
            format!(
                "diagonal bodies {}\ndiagonal blocks over Lambda {}\nbody matrix {}\n",
                x.is_invertible()?,
                x.diagonal_blocks_invertible_over_lambda()?,
                x.body_invertible()?
            )
        }
        Command::Basis { algebra, k } => {
            let space = algebra_arg(&algebra)?;
            sym_basis(&space, k)
                .iter()
                .map(|m| m.display(&space) + "\n")
                .collect()
        }
        Command::Compose { outer, inner } => {
            let psi = parse_morphism(&read(&outer)?)?;
            let phi = parse_morphism(&read(&inner)?)?;
            psi.compose(&phi)?.to_string()
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Io(path, e)) => {
            eprintln!("error: {}: {e}", path.display());
            ExitCode::from(2)
        }
        Err(Failure::Kernel(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.kind() {
                ErrorKind::Parse => 2,
                ErrorKind::Domain => 3,
                ErrorKind::Internal => 4,
            })
        }
    }
}
