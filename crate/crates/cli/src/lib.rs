//! The `tri` command line: every subcommand reads and writes JSON.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;
use tri_core::triangulation::{pachner_23, pachner_32};
use tri_core::{
    build_layered, chi_star, enumerate_taut, monodromy_matrix, solve_angle, AngleVerdict,
    GluingTable, MonodromyWord, NormalVector, Triangulation,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NO_ANGLE: i32 = 3;
pub const EXIT_NO_SEMI_ANGLE: i32 = 4;

const FORMATS: &str = "\
Triangulation JSON:
  {\"tets\":[{\"nbr\":[t0,t1,t2,t3],\"perm\":[[..4..],[..4..],[..4..],[..4..]]}, ...]}
  Entry f of nbr/perm describes the gluing of face f, the face opposite
  vertex f: it is glued to tetrahedron nbr[f], and perm[f] lists the images
  of vertices 0..3, so face f lands on face perm[f][f]. The reverse gluing
  must carry the inverse permutation. Opposite edge pairs are numbered
  0 = {0,1}|{2,3}, 1 = {0,2}|{1,3}, 2 = {0,3}|{1,2}.

Normal class JSON (for `chi --class`):
  {\"tri\":[[\"p/q\",...]×k rows of 4],\"quad\":[[\"p/q\",...]×k rows of 3]}
  Row t of tri holds the triangles at vertices 0..3 of tetrahedron t; row t
  of quad holds the quadrilaterals separating pairs 0..2.

Rationals are strings \"p/q\", or \"p\" when q = 1. Angles are in units of pi.

Exit codes:
  0 success (angle: an angle structure exists)
  1 usage, file or parse error
  2 invalid triangulation
  3 no angle structure (a certificate is printed)
  4 no semi-angle structure";

#[derive(Debug, Parser)]
#[command(name = "tri", version, about = "Taut and angle structures on ideal triangulations")]
#[command(after_help = FORMATS)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a triangulation and print its edge classes and cusps.
    Validate { file: PathBuf },
    /// List every taut structure as an array of pi pairs, one per tetrahedron.
    Taut { file: PathBuf },
    /// Decide whether an angle structure exists.
    ///
    /// Prints {"status":"AngleStructure","witness":[["p/q"×3]×k]},
    /// {"status":"NoAngleStructure","cert":{"n":[...],"m":[...],"q":[[...]×k]}}
    /// or {"status":"NoSemiAngle"}.
    Angle { file: PathBuf },
    /// Evaluate the formal Euler characteristic of a normal class.
    Chi {
        file: PathBuf,
        /// Normal class JSON file.
        #[arg(long, value_name = "VECTOR_JSON")]
        class: PathBuf,
    },
    /// Build a layered once-punctured torus bundle from a word in R and L.
    Bundle {
        /// Monodromy word over {R, L}.
        #[arg(long)]
        word: String,
        /// Layer a cancelling pair before letter N (N = word length: at the end). Repeatable.
        #[arg(long = "insert", value_name = "N")]
        insert: Vec<usize>,
        /// Write the triangulation here and its taut structure next to it as <stem>.taut.json.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        /// Print the monodromy matrix and trace.
        #[arg(long)]
        matrix: bool,
    },
    /// Apply a 2-3 move across a face or a 3-2 move around an edge.
    #[command(group = clap::ArgGroup::new("move").required(true))]
    Pachner {
        file: PathBuf,
        /// 2-3 move across face F of tetrahedron T.
        #[arg(long, value_name = "T:F", group = "move")]
        face: Option<String>,
        /// 3-2 move around edge class E.
        #[arg(long, value_name = "E", group = "move")]
        edge: Option<usize>,
        /// Write the new triangulation here instead of stdout.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

/// A failed command: exit code plus the JSON object printed for it.
#[derive(Debug)]
struct Failure {
    code: i32,
    body: serde_json::Value,
    message: String,
}

impl Failure {
    fn usage(kind: &str, message: impl Into<String>) -> Failure {
        let message = message.into();
        Failure {
            code: EXIT_USAGE,
            body: json!({"error": kind, "message": message}),
            message,
        }
    }
}

fn to_line<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("output serializes") + "\n"
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage("io", format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::usage("io", format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Triangulation, Failure> {
    let text = read(path)?;
    let table = GluingTable::from_json(&text)
        .map_err(|e| Failure::usage("parse", format!("{}: {e}", path.display())))?;
    Triangulation::new(table).map_err(|e| {
        let message = e.to_string();
        Failure {
            code: EXIT_INVALID,
            body: json!({"valid": false, "error": message, "cell": e.cell()}),
            message,
        }
    })
}

/// Runs one command. Normal output goes to `out`, human-readable
/// diagnostics to `err`; the return value is the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let _ = write!(err, "{e}");
            let first = e.to_string().lines().next().unwrap_or_default().to_string();
            let _ = write!(out, "{}", to_line(&json!({"error": "usage", "message": first})));
            return EXIT_USAGE;
        }
    };
    match dispatch(cli.command) {
        Ok((code, text)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(f) => {
            let _ = writeln!(err, "tri: {}", f.message);
            let _ = out.write_all(to_line(&f.body).as_bytes());
            f.code
        }
    }
}

fn dispatch(command: Command) -> Result<(i32, String), Failure> {
    match command {
        Command::Validate { file } => {
            let tri = load(&file)?;
            Ok((EXIT_OK, to_line(&tri.report())))
        }
        Command::Taut { file } => {
            let tri = load(&file)?;
            Ok((EXIT_OK, to_line(&enumerate_taut(&tri))))
        }
        Command::Angle { file } => {
            let tri = load(&file)?;
            let sol = solve_angle(&tri).map_err(|e| Failure::usage("internal", e.to_string()))?;
            let code = match sol.verdict {
                AngleVerdict::AngleStructure { .. } => EXIT_OK,
                AngleVerdict::NoAngleStructure { .. } => EXIT_NO_ANGLE,
                AngleVerdict::NoSemiAngle => EXIT_NO_SEMI_ANGLE,
            };
            Ok((code, to_line(&sol.verdict)))
        }
        Command::Chi { file, class } => {
            let tri = load(&file)?;
            let text = read(&class)?;
            let v: NormalVector = serde_json::from_str(&text)
                .map_err(|e| Failure::usage("parse", format!("{}: {e}", class.display())))?;
            v.check_shape(tri.size())
                .map_err(|e| Failure::usage("shape", e.to_string()))?;
            Ok((EXIT_OK, to_line(&chi_star(&tri, &v))))
        }
        Command::Bundle {
            word,
            insert,
            output,
            matrix,
        } => bundle(&word, insert, output, matrix),
        Command::Pachner {
            file,
            face,
            edge,
            output,
        } => {
            let tri = load(&file)?;
            let moved = match (face, edge) {
                (Some(face), _) => {
                    let (t, f) = parse_face(&face)?;
                    pachner_23(&tri, t, f)
                }
                (None, Some(e)) => match tri.edge_classes().get(e) {
                    Some(class) => pachner_32(&tri, class),
                    None => return Err(Failure::usage("move", format!("edge class {e} does not exist"))),
                },
                (None, None) => unreachable!("clap requires one of --face, --edge"),
            }
            .map_err(|e| Failure::usage("move", e.to_string()))?;
            let text = moved.to_json() + "\n";
            match output {
                Some(path) => {
                    write(&path, &text)?;
                    Ok((EXIT_OK, to_line(&json!({"k": moved.size(), "output": path}))))
                }
                None => Ok((EXIT_OK, text)),
            }
        }
    }
}

fn parse_face(s: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::usage("usage", format!("--face expects T:F, got {s:?}"));
    let (t, f) = s.split_once(':').ok_or_else(bad)?;
    Ok((t.parse().map_err(|_| bad())?, f.parse().map_err(|_| bad())?))
}

/// `out.json` → `out.taut.json`.
pub fn taut_sidecar(path: &Path) -> PathBuf {
    path.with_extension("taut.json")
}

fn bundle(word: &str, insert: Vec<usize>, output: Option<PathBuf>, matrix: bool) -> Result<(i32, String), Failure> {
    let word: MonodromyWord = word
        .parse()
        .and_then(|w: MonodromyWord| w.with_insertions(insert))
        .map_err(|e| Failure::usage("word", e.to_string()))?;
    if matrix && output.is_none() {
        let m = monodromy_matrix(&word).map_err(|e| Failure::usage("word", e.to_string()))?;
        return Ok((EXIT_OK, to_line(&m)));
    }
    let built = build_layered(&word).map_err(|e| {
        let message = e.to_string();
        Failure {
            code: EXIT_INVALID,
            body: json!({"valid": false, "error": message}),
            message,
        }
    })?;
    let text = built.triangulation.to_json() + "\n";
    let Some(path) = output else {
        return Ok((EXIT_OK, text));
    };
    let sidecar = taut_sidecar(&path);
    write(&path, &text)?;
    write(&sidecar, &to_line(&built.taut))?;
    let mut summary = json!({
        "k": built.triangulation.size(),
        "output": path,
        "taut": sidecar,
    });
    if matrix {
        let m = monodromy_matrix(&word).map_err(|e| Failure::usage("word", e.to_string()))?;
        summary["monodromy"] = serde_json::to_value(m).expect("matrix serializes");
    }
    Ok((EXIT_OK, to_line(&summary)))
}
