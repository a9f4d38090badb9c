//! Machine-readable and human-readable task results.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use ralab_core::{Report, Status};
use serde::Serialize;

use crate::env::Env;
use crate::error::SessionError;
use crate::parser::parse_session;
use crate::tasks::{run_task, Overrides};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct WitnessOut {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TaskOut {
    pub id: String,
    pub kind: String,
    pub status: String,
    pub witnesses: Vec<WitnessOut>,
    pub anchors: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    #[serde(skip)]
    pub outcome: Option<Status>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RunOut {
    pub version: u32,
    pub tasks: Vec<TaskOut>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub overrides: Overrides,
    pub timing: bool,
}

fn task_out(id: &str, kind: &str, report: Report, anchors: &[String], elapsed: Option<u64>) -> TaskOut {
    TaskOut {
        id: id.to_string(),
        kind: kind.to_string(),
        status: report.status.as_str().to_string(),
        witnesses: report.witnesses.into_iter().map(|w| WitnessOut { name: w.name, value: w.value }).collect(),
        anchors: anchors.to_vec(),
        elapsed_ms: elapsed,
        outcome: Some(report.status),
    }
}

/// Parses, builds and runs every task of a session. Tasks run in
/// parallel; results keep declaration order.
pub fn run_session(text: &str, opts: RunOptions) -> Result<RunOut, SessionError> {
    let session = parse_session(text)?;
    let env = Env::build(&session)?;
    let tasks = env
        .tasks
        .par_iter()
        .map(|(id, pos, task)| {
            let start = Instant::now();
            let report = run_task(&env, task, *pos, opts.overrides);
            let elapsed = opts.timing.then(|| start.elapsed().as_millis() as u64);
            task_out(id, task.kind.as_str(), report, &task.anchors, elapsed)
        })
        .collect();
    Ok(RunOut { version: FORMAT_VERSION, tasks })
}

impl RunOut {
    pub fn status(&self) -> Status {
        self.tasks.iter().filter_map(|t| t.outcome).fold(Status::Pass, Status::and)
    }

    /// 0 all pass, 1 some failure, 2 some error, 3 some unknown (0 when
    /// unknowns are allowed).
    pub fn exit_code(&self, allow_unknown: bool) -> i32 {
        match self.status() {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
            Status::Unknown if allow_unknown => 0,
            Status::Unknown => 3,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for t in &self.tasks {
            let _ = write!(out, "[{}] {} ({})", t.status.to_uppercase(), t.id, t.kind);
            if let Some(ms) = t.elapsed_ms {
                let _ = write!(out, " {ms} ms");
            }
            out.push('\n');
            for a in &t.anchors {
                let _ = writeln!(out, "    # {a}");
            }
            for w in &t.witnesses {
                let _ = writeln!(out, "    {}: {}", w.name, w.value);
            }
        }
        out
    }

    pub fn append(&mut self, other: RunOut) {
        self.tasks.extend(other.tasks);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_status_priority() {
        let run = |text: &str| run_session(text, RunOptions::default()).unwrap();
        let ok = run("ring R = Q[x, y]\nsubalgebra A of R = [x^2]\ntask t = member(A, f = x^4)\n");
        assert_eq!(ok.exit_code(false), 0);
        let bad = run("ring R = Q[x, y]\nsubalgebra A of R = [x^2]\ntask t = member(A, f = x)\n");
        assert_eq!(bad.exit_code(false), 1);
        assert!(bad.to_json().contains("\"status\": \"fail\""));
        let err = run("ring R = Q[x, y]\nsubalgebra A of R = [x^2]\ntask t = member(A)\n");
        assert_eq!(err.exit_code(false), 2);
    }

    #[test]
    fn expect_mismatch_fails() {
        let text = "ring R = Q[x, y]\nderivation D on R { x -> y }\ntask t = apply(D, f = x^2)\n  expect \"value\" = \"2*x*y\"\n";
        let out = run_session(text, RunOptions::default()).unwrap();
        assert_eq!(out.tasks[0].status, "pass", "{}", out.to_text());
        let wrong = text.replace("2*x*y", "x*y");
        let out = run_session(&wrong, RunOptions::default()).unwrap();
        assert_eq!(out.tasks[0].status, "fail");
        assert!(out.tasks[0].witnesses.iter().any(|w| w.name == "expected value"));
    }
}
