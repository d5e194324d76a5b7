use std::f64::consts::PI;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gnomon::solid_angle::{
    default_corpus, evaluate_entry, parse_corpus, regular_vertex_solid_angle,
    trihedral_solid_angle, triple_product_solid_angle, validate_trihedral,
};
use gnomon::spherical::{excess_report, make_triangle, ExcessMethod};
use gnomon::{
    anth_magnitudes, parse_magnitude, side_diameter, Error, ErrorKind, RegularVertexFigure,
};
use serde::Serialize;
use serde_json::{json, Value};

mod output;

use output::Format;

#[derive(Parser)]
#[command(
    name = "gnomon",
    version,
    about = "Exact anthyphairesis, spherical excess and solid angles"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Read angle arguments in degrees instead of radians.
    #[arg(long, global = true)]
    degrees: bool,
    /// Significant digits for floating-point output.
    #[arg(long, default_value_t = 10, global = true, value_parser = clap::value_parser!(u32).range(1..=17))]
    precision: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reciprocal subtraction of two positive magnitudes, e.g. `anth "sqrt(2)" 1`.
    Anth {
        #[arg(allow_negative_numbers = true)]
        a: String,
        #[arg(allow_negative_numbers = true)]
        b: String,
        #[arg(long, default_value_t = gnomon::DEFAULT_MAX_TERMS)]
        max_terms: usize,
    },
    /// Table of side and diameter numbers.
    Sidediam {
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..=10_000))]
        count: u64,
    },
    /// Spherical triangles.
    Sphere {
        #[command(subcommand)]
        command: SphereCommand,
    },
    /// Solid angles of polyhedral vertices.
    Solid {
        #[command(subcommand)]
        command: SolidCommand,
    },
}

#[derive(Subcommand)]
enum SphereCommand {
    /// Spherical excess (area on the unit sphere) from three sides.
    Excess {
        #[arg(long, num_args = 3, required = true, allow_negative_numbers = true)]
        sides: Vec<f64>,
        #[arg(long, value_enum, default_value_t = Method::Lhuilier)]
        method: Method,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Girard,
    Lhuilier,
    Both,
    Mc,
}

#[derive(Subcommand)]
enum SolidCommand {
    /// Vertex with three given face angles.
    Trihedral {
        #[arg(num_args = 3, required = true, allow_negative_numbers = true)]
        faces: Vec<f64>,
    },
    /// Vertex with `n` congruent faces of apex angle `alpha`.
    Regular {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
    },
    /// Vertex solid angles of the Platonic solids or of a corpus file.
    Platonic {
        /// Entry name, or `all`.
        #[arg(default_value = "all")]
        name: String,
        /// JSON corpus of `{"name", "faces_at_vertex", "apex_angle_rad"}` entries.
        #[arg(long, env = "GNOMON_CORPUS")]
        data: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct TrihedralReport {
    faces: [f64; 3],
    solid_angle_sr: f64,
    triple_product_sr: f64,
    fraction_of_sphere: f64,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn run(cli: &Cli) -> gnomon::Result<Value> {
    let angle = |x: f64| if cli.degrees { x * (PI / 180.0) } else { x };
    match &cli.command {
        Command::Anth { a, b, max_terms } => {
            let a = parse_magnitude(a)?;
            let b = parse_magnitude(b)?;
            Ok(to_value(&anth_magnitudes(&a, &b, *max_terms)?))
        }
        Command::Sidediam { count } => Ok(to_value(&side_diameter::table(*count as usize))),
        Command::Sphere {
            command:
                SphereCommand::Excess {
                    sides,
                    method,
                    samples,
                    seed,
                },
        } => {
            let t = make_triangle(angle(sides[0]), angle(sides[1]), angle(sides[2]))?;
            let report = |m| excess_report(&t, m, *samples, *seed).map(|r| to_value(&r));
            match method {
                Method::Girard => report(ExcessMethod::Girard),
                Method::Lhuilier => report(ExcessMethod::Lhuilier),
                Method::Mc => report(ExcessMethod::Mc),
                Method::Both => Ok(Value::Array(vec![
                    report(ExcessMethod::Girard)?,
                    report(ExcessMethod::Lhuilier)?,
                ])),
            }
        }
        Command::Solid { command } => solid(command, angle),
    }
}

fn solid(command: &SolidCommand, angle: impl Fn(f64) -> f64) -> gnomon::Result<Value> {
    match command {
        SolidCommand::Trihedral { faces } => {
            let t = validate_trihedral(angle(faces[0]), angle(faces[1]), angle(faces[2]))?;
            let omega = trihedral_solid_angle(&t)?;
            let [u, v, w] = t.edges()?;
            let triple = triple_product_solid_angle(&u, &v, &w)?;
            Ok(to_value(&TrihedralReport {
                faces: t.faces(),
                solid_angle_sr: omega,
                triple_product_sr: triple.steradians,
                fraction_of_sphere: omega / (4.0 * PI),
            }))
        }
        SolidCommand::Regular { n, alpha } => {
            let fig = RegularVertexFigure::new(*n, angle(*alpha))?;
            let omega = regular_vertex_solid_angle(&fig)?;
            Ok(json!({
                "n": fig.n,
                "alpha": fig.alpha,
                "solid_angle_sr": omega,
                "fraction_of_sphere": omega / (4.0 * PI),
            }))
        }
        SolidCommand::Platonic { name, data } => {
            let corpus = match data {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(|e| {
                        Error::Domain(format!("cannot read corpus {}: {e}", path.display()))
                    })?;
                    parse_corpus(&text)?
                }
                None => default_corpus(),
            };
            if name.eq_ignore_ascii_case("all") {
                let rows = corpus
                    .iter()
                    .map(evaluate_entry)
                    .collect::<gnomon::Result<Vec<_>>>()?;
                return Ok(to_value(&rows));
            }
            let entry = corpus
                .iter()
                .find(|e| e.name.eq_ignore_ascii_case(name))
                .ok_or_else(|| {
                    Error::Domain(format!("no vertex figure named '{name}' in corpus"))
                })?;
            Ok(to_value(&evaluate_entry(entry)?))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(value) => {
            let text = output::render(&value, cli.format, cli.precision);
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).is_err() {
                return ExitCode::FAILURE;
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.kind() {
                ErrorKind::InvalidInput => 2,
                ErrorKind::Numeric => 3,
            })
        }
    }
}
