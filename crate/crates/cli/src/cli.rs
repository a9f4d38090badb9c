//! Command-line front end. `execute` does everything except touching the
//! process, so tests can drive it directly.

use clap::{Arg, ArgAction, ArgMatches, Command};

use crate::ast::TaskKind;
use crate::error::SessionError;
use crate::registry::paper_suite;
use crate::report::{run_session, RunOptions, RunOut};
use crate::tasks::Overrides;

/// What a run printed and how it should exit.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn command() -> Command {
    let kinds: Vec<&str> = TaskKind::ALL.iter().map(|k| k.as_str()).collect();
    let mut cmd = Command::new("ralab")
        .about("Exact checks for retractions, exponential maps and their invariants")
        .subcommand_required(true)
        .arg(Arg::new("file").long("file").short('f').global(true).help("Session file"))
        .arg(
            Arg::new("format")
                .long("format")
                .global(true)
                .value_parser(["json", "text"])
                .default_value("json"),
        )
        .arg(num_arg("degree", "Degree bound for invariants and principality searches"))
        .arg(num_arg("cap", "Iteration cap for nilpotency checks"))
        .arg(num_arg("order", "Truncation order for jets"))
        .arg(
            Arg::new("allow-unknown")
                .long("allow-unknown")
                .global(true)
                .action(ArgAction::SetTrue)
                .help("Exit 0 when the only non-pass results are unknown"),
        )
        .arg(
            Arg::new("timing")
                .long("timing")
                .global(true)
                .action(ArgAction::SetTrue)
                .help("Report elapsed milliseconds per task"),
        )
        .subcommand(Command::new("run").about("Run every task in a session").arg(Arg::new("path")))
        .subcommand(Command::new("print").about("Parse a session and print it back").arg(Arg::new("path")))
        .subcommand(
            Command::new("paper-suite")
                .about("Run the bundled examples")
                .arg(Arg::new("id").help("Run only this example")),
        )
        .after_help(format!("Task commands take object names and key=value options:\n  ralab lnd D cap=8 --file s.ral\nKinds: {}", kinds.join(", ")));
    for kind in TaskKind::ALL {
        cmd = cmd.subcommand(
            Command::new(kind.as_str())
                .about(format!("Run a single `{}` task against the session file", kind.as_str()))
                .arg(Arg::new("items").num_args(0..).help("Object names, then key=value options")),
        );
    }
    cmd
}

fn num_arg(name: &'static str, help: &'static str) -> Arg {
    Arg::new(name).long(name).global(true).value_parser(clap::value_parser!(u32)).help(help)
}

fn read(path: Option<&String>) -> Result<String, SessionError> {
    let path = path.ok_or_else(|| SessionError::Io("no session file given (use --file)".into()))?;
    std::fs::read_to_string(path).map_err(|e| SessionError::Io(format!("{path}: {e}")))
}

/// Builds a one-task session line from command-line words.
fn task_line(kind: &str, items: &[String]) -> String {
    let (opts, refs): (Vec<&String>, Vec<&String>) = items.iter().partition(|s| s.contains('='));
    let mut parts: Vec<String> = refs.iter().map(|s| s.to_string()).collect();
    for o in opts {
        let (k, v) = o.split_once('=').unwrap_or((o, ""));
        parts.push(format!("{} = {}", k.trim(), v.trim()));
    }
    format!("\ntask cli_task = {kind}({})\n", parts.join(", "))
}

fn render(out: &RunOut, m: &ArgMatches) -> Outcome {
    let text = m.get_one::<String>("format").map(String::as_str) == Some("text");
    Outcome {
        code: out.exit_code(m.get_flag("allow-unknown")),
        stdout: if text { out.to_text() } else { out.to_json() + "\n" },
        stderr: String::new(),
    }
}

fn dispatch(m: &ArgMatches) -> Result<Outcome, SessionError> {
    let opts = RunOptions {
        overrides: Overrides {
            degree: m.get_one("degree").copied(),
            cap: m.get_one("cap").copied(),
            order: m.get_one("order").copied(),
        },
        timing: m.get_flag("timing"),
    };
    let (name, sub) = m.subcommand().expect("a subcommand is required");
    let path = if matches!(name, "run" | "print") { sub.get_one::<String>("path") } else { None };
    // global args are propagated to the subcommand's matches
    let file = path.or_else(|| sub.get_one::<String>("file"));
    match name {
        "run" => Ok(render(&run_session(&read(file)?, opts)?, m)),
        "print" => {
            let session = crate::parse_session(&read(file)?)?;
            Ok(Outcome { stdout: session.to_string(), ..Outcome::default() })
        }
        "paper-suite" => {
            let id = sub.get_one::<String>("id").map(String::as_str);
            Ok(render(&paper_suite(id, opts)?, m))
        }
        kind => {
            let items: Vec<String> = sub.get_many::<String>("items").into_iter().flatten().cloned().collect();
            let mut text = read(file)?;
            // only the command-line task runs
            let session = crate::parse_session(&text)?;
            text = session
                .decls
                .iter()
                .filter(|d| !matches!(d.kind, crate::ast::DeclKind::Task(_)))
                .map(|d| d.to_string() + "\n")
                .collect();
            text.push_str(&task_line(kind, &items));
            Ok(render(&run_session(&text, opts)?, m))
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let m = match command().try_get_matches_from(args) {
        Ok(m) => m,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: rendered, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: rendered }
            };
        }
    };
    dispatch(&m).unwrap_or_else(|e| Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn command_definition_is_consistent() {
        command().debug_assert();
    }

    #[test]
    fn task_words_become_a_task() {
        let line = task_line("lnd", &["D".into(), "cap=8".into()]);
        assert_eq!(line.trim(), "task cli_task = lnd(D, cap = 8)");
    }

    #[test]
    fn unknown_example_exits_with_error() {
        let out = execute(["ralab", "paper-suite", "nope"]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("unknown example"));
    }
}
