//! Bundled example sessions, addressable by id.

use crate::error::SessionError;
use crate::report::{run_session, RunOptions, RunOut};

/// `(id, session text)` in suite order.
pub const EXAMPLES: [(&str, &str); 11] = [
    ("ex4.3", include_str!("../sessions/ex4.3.ral")),
    ("rem4.5", include_str!("../sessions/rem4.5.ral")),
    ("ex4.6", include_str!("../sessions/ex4.6.ral")),
    ("rem5.9", include_str!("../sessions/rem5.9.ral")),
    ("ex6.2", include_str!("../sessions/ex6.2.ral")),
    ("ex6.3", include_str!("../sessions/ex6.3.ral")),
    ("ex6.5", include_str!("../sessions/ex6.5.ral")),
    ("ex6.6", include_str!("../sessions/ex6.6.ral")),
    ("ex6.12", include_str!("../sessions/ex6.12.ral")),
    ("ex6.14", include_str!("../sessions/ex6.14.ral")),
    ("ex6.15", include_str!("../sessions/ex6.15.ral")),
];

pub fn example(id: &str) -> Result<&'static str, SessionError> {
    EXAMPLES
        .iter()
        .find(|(k, _)| *k == id)
        .map(|(_, text)| *text)
        .ok_or_else(|| SessionError::UnknownExample(id.to_string()))
}

/// Runs one bundled example, or all of them. Task ids are prefixed with
/// the example id.
pub fn paper_suite(id: Option<&str>, opts: RunOptions) -> Result<RunOut, SessionError> {
    let selected: Vec<(&str, &str)> = match id {
        Some(id) => vec![(id, example(id)?)],
        None => EXAMPLES.to_vec(),
    };
    let mut out = RunOut { version: crate::report::FORMAT_VERSION, tasks: Vec::new() };
    for (id, text) in selected {
        let mut run = run_session(text, opts)?;
        for t in &mut run.tasks {
            t.id = format!("{id}/{}", t.id);
        }
        out.append(run);
    }
    Ok(out)
}
