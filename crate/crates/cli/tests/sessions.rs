//! Parser robustness, printing round trips and suite determinism.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ralab::env::Env;
use ralab::registry::{paper_suite, EXAMPLES};
use ralab::report::{run_session, RunOptions};
use ralab::{parse_session, SessionError};

const ALPHABET: &[u8] = b"ring subalgebra derivation map ideal task anchor expect of over base Q[](){}<>=->,:/*+-^#\"\n 0123456789XYZabtu_.'";

fn mutate(rng: &mut ChaCha8Rng, text: &str) -> Vec<u8> {
    let mut bytes = text.as_bytes().to_vec();
    for _ in 0..rng.gen_range(1..4) {
        let i = rng.gen_range(0..=bytes.len());
        match rng.gen_range(0..3) {
            0 if i < bytes.len() => {
                bytes.remove(i);
            }
            1 if i < bytes.len() => bytes[i] = ALPHABET[rng.gen_range(0..ALPHABET.len())],
            _ => bytes.insert(i, ALPHABET[rng.gen_range(0..ALPHABET.len())]),
        }
    }
    bytes
}

/// Parsing never panics; whatever parses prints back to the same tree.
fn survive(bytes: &[u8]) -> bool {
    let text = String::from_utf8_lossy(bytes);
    match parse_session(&text) {
        Ok(session) => {
            let again = parse_session(&session.to_string()).expect("printed session parses");
            assert_eq!(again, session, "{text}");
            let _ = Env::build(&session);
            true
        }
        Err(_) => false,
    }
}

#[test]
fn fuzzed_inputs_never_panic() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut parsed = 0;
    for n in 0..10_000 {
        let bytes: Vec<u8> = if n % 2 == 0 {
            let len = rng.gen_range(0..120);
            (0..len)
                .map(|_| if rng.gen_bool(0.7) { ALPHABET[rng.gen_range(0..ALPHABET.len())] } else { rng.gen() })
                .collect()
        } else {
            let source = EXAMPLES[rng.gen_range(0..EXAMPLES.len())].1;
            mutate(&mut rng, source)
        };
        parsed += survive(&bytes) as usize;
    }
    // mutations of real sessions often still parse
    assert!(parsed > 100, "only {parsed} inputs parsed");
}

#[test]
fn bundled_sessions_print_and_parse_back() {
    for (id, text) in EXAMPLES {
        let session = parse_session(text).unwrap_or_else(|e| panic!("{id}: {e}"));
        let printed = session.to_string();
        assert_eq!(parse_session(&printed).unwrap(), session, "{id}");
        assert_eq!(parse_session(&printed).unwrap().to_string(), printed, "{id}");
    }
}

#[test]
fn suite_is_deterministic_and_complete() {
    let first = paper_suite(None, RunOptions::default()).unwrap();
    let second = paper_suite(None, RunOptions::default()).unwrap();
    assert_eq!(first.to_json(), second.to_json());
    assert_eq!(EXAMPLES.len(), 11);
    let ids: std::collections::BTreeSet<&str> =
        first.tasks.iter().map(|t| t.id.split('/').next().unwrap()).collect();
    assert_eq!(ids.len(), 11);
    let failing: Vec<&str> = first.tasks.iter().filter(|t| t.status != "pass").map(|t| t.id.as_str()).collect();
    assert!(failing.is_empty(), "{failing:?}\n{}", first.to_text());
    assert_eq!(first.exit_code(false), 0);
}

#[test]
fn single_example_and_unknown_id() {
    let out = paper_suite(Some("ex4.6"), RunOptions::default()).unwrap();
    assert!(out.tasks.iter().all(|t| t.id.starts_with("ex4.6/") && t.status == "pass"));
    assert!(matches!(paper_suite(Some("nope"), RunOptions::default()), Err(SessionError::UnknownExample(_))));
}

#[test]
fn small_cap_leaves_nilpotency_unknown() {
    let text = "ring B = Q[X, Y, Z] / (X*Y - Z^2)\nderivation D on B { Z -> X, Y -> 2*Z }\ntask t = lnd(D, cap = 2)\n";
    let out = run_session(text, RunOptions::default()).unwrap();
    assert_eq!(out.tasks[0].status, "unknown");
    assert_eq!(out.exit_code(false), 3);
    assert_eq!(out.exit_code(true), 0);
}

#[test]
fn command_line_tasks_use_the_session_objects() {
    let dir = std::env::temp_dir().join(format!("ralab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("circle.ral");
    std::fs::write(&path, ralab::registry::example("ex4.6").unwrap()).unwrap();
    let file = path.to_str().unwrap();

    let out = ralab::cli::execute(["ralab", "check-retraction", "pi", "--file", file]);
    assert_eq!(out.code, 0, "{}{}", out.stdout, out.stderr);
    assert!(out.stdout.contains("\"status\": \"pass\""));

    let out = ralab::cli::execute(["ralab", "lnd", "D", "--cap", "1", "--file", file, "--format", "text"]);
    assert_eq!(out.code, 3, "{}", out.stdout);
    assert!(out.stdout.starts_with("[UNKNOWN] cli_task (lnd)"));

    let out = ralab::cli::execute(["ralab", "member", "A", "f=X", "--file", file]);
    assert_eq!(out.code, 1);

    let out = ralab::cli::execute(["ralab", "print", file]);
    assert_eq!(parse_session(&out.stdout).unwrap(), parse_session(ralab::registry::example("ex4.6").unwrap()).unwrap());

    let out = ralab::cli::execute(["ralab", "run", "/nonexistent/file.ral"]);
    assert_eq!(out.code, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}
