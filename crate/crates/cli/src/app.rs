//! Argument parsing and the process entry point.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::{run_text, Check, Command, RMode};

/// Exact computations with Nichols algebras of diagonal type.
#[derive(Parser)]
#[command(name = "nichols", version)]
struct Cli {
    /// Also write the JSON report to this file (`-` for stdout).
    #[arg(long, global = true, value_name = "FILE")]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Positive roots in the convex order of the longest word.
    Roots { spec: PathBuf },
    /// Generalized Cartan matrix.
    Cartan { spec: PathBuf },
    /// Weyl groupoid orbit of the braiding.
    Orbit { spec: PathBuf },
    /// PBW root vectors and their Lyndon words.
    Pbw { spec: PathBuf },
    /// Graded dimensions against the root product.
    Hilbert { spec: PathBuf },
    /// Pairing scalars of the dual PBW generators.
    PairingCheck { spec: PathBuf },
    /// Universal R-matrix of the double over a finite group.
    Rmatrix {
        #[command(flatten)]
        mode: RModeArgs,
        spec: PathBuf,
    },
    /// Run one of the verification suites.
    Verify { check: CheckArg, spec: PathBuf },
}

#[derive(Args)]
#[group(multiple = false)]
struct RModeArgs {
    /// List the factors (default).
    #[arg(long)]
    factorized: bool,
    /// Compare with the module operators on two Verma modules.
    #[arg(long)]
    module: bool,
    /// Expand and check the quasitriangular axioms.
    #[arg(long)]
    expand: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckArg {
    Qybe,
    Hopf,
    Coideal,
    Duality,
    Canonical,
}

fn command(cmd: Cmd) -> (Command, PathBuf) {
    match cmd {
        Cmd::Roots { spec } => (Command::Roots, spec),
        Cmd::Cartan { spec } => (Command::Cartan, spec),
        Cmd::Orbit { spec } => (Command::Orbit, spec),
        Cmd::Pbw { spec } => (Command::Pbw, spec),
        Cmd::Hilbert { spec } => (Command::Hilbert, spec),
        Cmd::PairingCheck { spec } => (Command::PairingCheck, spec),
        Cmd::Rmatrix { mode, spec } => {
            let m = if mode.module {
                RMode::Module
            } else if mode.expand {
                RMode::Expand
            } else {
                RMode::Factorized
            };
            (Command::Rmatrix(m), spec)
        }
        Cmd::Verify { check, spec } => {
            let c = match check {
                CheckArg::Qybe => Check::Qybe,
                CheckArg::Hopf => Check::Hopf,
                CheckArg::Coideal => Check::Coideal,
                CheckArg::Duality => Check::Duality,
                CheckArg::Canonical => Check::Canonical,
            };
            (Command::Verify(c), spec)
        }
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code. Reports go to `out`, diagnostics to stderr.
pub fn main_with<I, T>(args: I, env_degree: Option<String>, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) => {
            eprint!("{e}");
            return 2;
        }
    };
    let (command, spec) = command(cli.command);
    let text = match std::fs::read_to_string(&spec) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", spec.display());
            return 2;
        }
    };
    let report = run_text(&command, &text, env_degree.as_deref());
    let mut stdout = report.text.clone();
    if let Some(path) = cli.json {
        let json = report.json_string();
        if path.as_os_str() == "-" {
            stdout.push_str(&json);
        } else if let Err(e) = std::fs::write(&path, json) {
            let _ = out.write_all(stdout.as_bytes());
            eprintln!("error: cannot write {}: {e}", path.display());
            return 2;
        }
    }
    if out.write_all(stdout.as_bytes()).is_err() {
        return 2;
    }
    report.status.exit_code()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec_file(name: &str, body: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("nichols-app-tests-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join(name);
        std::fs::write(&p, body).unwrap();
        p
    }

    fn run_env(args: &[&str], spec: &PathBuf, env: Option<&str>) -> (i32, String) {
        let mut argv: Vec<OsString> = vec!["nichols".into()];
        argv.extend(args.iter().map(OsString::from));
        argv.push(spec.clone().into());
        let mut out = Vec::new();
        let code = main_with(argv, env.map(String::from), &mut out);
        (code, String::from_utf8(out).unwrap())
    }

    fn run(args: &[&str], spec: &PathBuf) -> (i32, String) {
        run_env(args, spec, None)
    }

    const EXAMPLE: &str = r#"{"conductor": 10, "braiding": [[2, 4], [0, 5]]}"#;
    const RANK_ONE: &str = r#"{"conductor": 3, "braiding": [[1]]}"#;

    #[test]
    fn roots_of_the_example() {
        let spec = spec_file("example.json", EXAMPLE);
        let (code, out) = run(&["roots", "--json", "-"], &spec);
        assert_eq!(code, 0);
        assert!(out.contains("word 12121212"));
        let json: serde_json::Value = serde_json::from_str(&out[out.find('{').unwrap()..]).unwrap();
        assert_eq!(json["rank"], 2);
        let roots = json["roots"].as_array().unwrap();
        assert_eq!(roots.len(), 8);
        assert_eq!(roots[3]["coords"], serde_json::json!([5, 3]));
        assert_eq!(roots[3]["N_beta"], 2);
        // q = −1 in the power basis of ζ_10
        assert_eq!(roots[3]["q_beta"]["conductor"], 10);
        assert_eq!(roots[3]["q_beta"]["coeffs"][0], serde_json::json!([-1, 1]));
    }

    #[test]
    fn rank_one_has_a_single_root() {
        let spec = spec_file("rank1.json", RANK_ONE);
        let target = spec.with_extension("out.json");
        let (code, _) = run(&["roots", "--json", target.to_str().unwrap()], &spec);
        assert_eq!(code, 0);
        let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
        assert_eq!(json["roots"].as_array().unwrap().len(), 1);
        assert_eq!(json["roots"][0]["N_beta"], 3);
    }

    #[test]
    fn verify_qybe_rank_one() {
        let spec = spec_file("qybe.json", RANK_ONE);
        let (code, out) = run(&["verify", "qybe"], &spec);
        assert_eq!(code, 0);
        assert!(out.ends_with("PASS\n"));
    }

    #[test]
    fn output_is_deterministic() {
        let spec = spec_file("det.json", r#"{"conductor": 6, "braiding": [[3, 2], [0, 3]]}"#);
        for args in [&["pbw", "--json", "-"][..], &["verify", "canonical", "--json", "-"], &["orbit", "--json", "-"]] {
            let a = run(args, &spec);
            let b = run(args, &spec);
            assert_eq!(a.0, 0);
            assert_eq!(a.1, b.1);
        }
    }

    #[test]
    fn exit_codes() {
        let bad = spec_file("bad.json", r#"{"conductor": 3, "braiding": [[1, 2]]}"#);
        assert_eq!(run(&["roots"], &bad).0, 2);
        let garbage = spec_file("garbage.json", "not json");
        assert_eq!(run(&["cartan"], &garbage).0, 2);
        let missing = std::env::temp_dir().join("nichols-no-such-spec.json");
        assert_eq!(run(&["roots"], &missing).0, 2);
        assert_eq!(run(&["verify", "nothing"], &missing).0, 2);
        // ζ5 is not a value of a character of Z/2
        let group = spec_file(
            "group.json",
            r#"{"conductor": 5, "braiding": [[1]], "group": {"divisors": [2], "g": [[1]], "gamma": [[1]]}}"#,
        );
        let (code, out) = run(&["rmatrix", "--expand"], &group);
        assert_eq!(code, 2);
        assert!(out.contains("suggestion"));
        // the whole example algebra is too large for the module checks
        let example = spec_file("example-qybe.json", EXAMPLE);
        assert_eq!(run(&["verify", "qybe"], &example).0, 3);
        // a1 has infinite order: the window ends at the degree bound
        let free = spec_file("free.json", r#"{"conductor": 1, "braiding": [[0]], "options": {"max_degree": 3}}"#);
        let (code, out) = run(&["hilbert"], &free);
        assert_eq!(code, 0);
        assert!(out.contains("window: total degree <= 3"));
        // module weights must be nonzero
        let zero = spec_file(
            "zero-weight.json",
            r#"{"conductor": 3, "braiding": [[1]], "weights": [{"k": [[0, 0]], "l": [[0, 1]]}]}"#,
        );
        assert_eq!(run(&["verify", "qybe"], &zero).0, 2);
    }

    #[test]
    fn degree_bound_from_environment() {
        let spec = spec_file("env.json", EXAMPLE);
        let (code, out) = run_env(&["hilbert"], &spec, Some("4"));
        assert_eq!(code, 0);
        assert!(out.starts_with("window: total degree <= 4\n"));
        assert_eq!(run_env(&["hilbert"], &spec, Some("zero")).0, 2);
        // an explicit option wins over the environment
        let spec = spec_file(
            "env-opt.json",
            r#"{"conductor": 10, "braiding": [[2, 4], [0, 5]], "options": {"max_degree": 3}}"#,
        );
        let (_, out) = run_env(&["hilbert"], &spec, Some("5"));
        assert!(out.starts_with("window: total degree <= 3\n"));
    }

    #[test]
    fn rmatrix_modes() {
        let spec = spec_file(
            "rmat.json",
            r#"{"conductor": 6, "braiding": [[3, 5], [3, 3]], "group": {"divisors": [6], "g": [[1], [3]], "gamma": [[3], [5]]}}"#,
        );
        let (code, out) = run(&["rmatrix", "--factorized"], &spec);
        assert_eq!(code, 0);
        assert_eq!(out.matches("beta_").count(), 3);
        let (code, out) = run(&["rmatrix", "--module"], &spec);
        assert_eq!(code, 0);
        assert!(out.contains("factorized part acts as C_xy: true"));
        assert_eq!(run(&["rmatrix", "--module", "--expand"], &spec).0, 2);
    }

    #[test]
    fn verify_suites_pass_on_a2() {
        let spec = spec_file("a2.json", r#"{"conductor": 3, "braiding": [[1, 2], [0, 1]]}"#);
        for check in ["hopf", "coideal", "duality", "canonical"] {
            let (code, out) = run(&["verify", check], &spec);
            assert_eq!(code, 0, "{check}: {out}");
        }
        assert_eq!(run(&["pairing-check"], &spec).0, 0);
        assert_eq!(run(&["cartan"], &spec).1, "  2 -1\n -1  2\nPASS\n");
    }
}
