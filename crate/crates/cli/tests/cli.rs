use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use sepdfa_core::solver::find_on_path;

fn sepdfa() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_sepdfa"));
    c.env_remove("RUST_LOG");
    c
}

fn solver() -> Option<String> {
    if let Ok(s) = std::env::var("SEPDFA_SOLVER") {
        if !s.trim().is_empty() {
            return Some(s);
        }
    }
    ["cadical", "kissat", "cryptominisat5", "varisat"]
        .into_iter()
        .find(|c| find_on_path(c).is_some())
        .map(String::from)
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn parity_file(dir: &Path, colours: &str, length: &str) -> String {
    let path = dir.join(format!("parity-{colours}-{length}.txt"));
    let o = run(sepdfa().args(["gen-parity", "-c", colours, "-l", length, "-o"]).arg(&path));
    assert_eq!(code(&o), 0);
    path.to_string_lossy().into_owned()
}

#[test]
fn parity_corpus_counts_labelled_words_only() {
    let o = run(sepdfa().args(["gen-parity", "--colours", "2", "--length", "3"]));
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("8 2"));
    assert_eq!(lines.count(), 8);
}

#[test]
fn parity_stats_lines() {
    let o = run(sepdfa().args(["gen-parity", "-c", "3", "-l", "4", "--stats"]));
    assert_eq!(stdout(&o), "3\t4\t51\t20\t111\t23\t28\n");

    let o = run(sepdfa().args(["gen-parity", "-c", "5", "-l", "7", "--stats"]));
    let fields: Vec<String> = stdout(&o).trim().split('\t').map(String::from).collect();
    assert_eq!(fields, ["5", "7", "30332", "9625", "53277", "438", "372"]);
}

#[test]
fn parity_rejects_short_lengths_and_budget_overflow() {
    let o = run(sepdfa().args(["gen-parity", "-c", "3", "-l", "3"]));
    assert_eq!(code(&o), 1);
    let o = run(sepdfa().args(["gen-parity", "-c", "3", "-l", "9", "--budget", "100"]));
    assert_eq!(code(&o), 1);
}

#[test]
fn mining_parity_reports_size_three() {
    let Some(solver) = solver() else { return };
    let dir = tempfile::tempdir().unwrap();
    let input = parity_file(dir.path(), "2", "3");
    let mut sizes = Vec::new();
    for mode in ["min3dfa", "ddfa", "apta"] {
        let o = run(sepdfa()
            .args(["mine", &input, "--safety", "--mode", mode, "--solver", &solver]));
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        let text = stdout(&o);
        assert!(text.contains("minimal size 3\n"), "{text}");
        sizes.push(text.lines().find(|l| l.starts_with("minimal size")).unwrap().to_string());
    }
    assert!(sizes.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn mined_dfa_file_verifies() {
    let Some(solver) = solver() else { return };
    let dir = tempfile::tempdir().unwrap();
    let samples = dir.path().join("s.txt");
    let hidden = dir.path().join("hidden.dfa");
    let o = run(sepdfa()
        .args(["gen-random", "-n", "4", "--seed", "5", "-o"])
        .arg(&samples)
        .arg("--dfa")
        .arg(&hidden));
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&samples).unwrap();
    assert!(text.starts_with("200 2\n"));

    let o = run(sepdfa().arg("verify").arg(&hidden).arg(&samples));
    assert_eq!(code(&o), 0);

    let mined = dir.path().join("mined.dfa");
    let o = run(sepdfa()
        .arg("mine")
        .arg(&samples)
        .args(["--solver", &solver, "--key-values", "-o"])
        .arg(&mined));
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let kv = stdout(&o);
    let n: usize = kv
        .lines()
        .find_map(|l| l.strip_prefix("minimal_size="))
        .unwrap()
        .parse()
        .unwrap();
    assert!(n <= 4);
    assert!(kv.contains("verified=true"));

    let o = run(sepdfa().arg("verify").arg(&mined).arg(&samples));
    assert_eq!(code(&o), 0);
}

#[test]
fn random_generation_is_reproducible() {
    let a = run(sepdfa().args(["gen-random", "-n", "6", "--seed", "42"]));
    let b = run(sepdfa().args(["gen-random", "-n", "6", "--seed", "42"]));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("300 2\n"));
    let c = run(sepdfa().args(["gen-random", "-n", "6", "--seed", "43"]));
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn verification_failures_list_words() {
    let dir = tempfile::tempdir().unwrap();
    let dfa = write(
        dir.path(),
        "reject.dfa",
        "states 1 initial 0 alphabet 2\nstate 0 R\ntrans 0 0 0\ntrans 0 1 0\n",
    );
    let samples = write(dir.path(), "s.txt", "2 2\n1 2 0 1\n0 1 1\n");
    let o = run(sepdfa().args(["verify", &dfa, &samples]));
    assert_eq!(code(&o), 5);
    assert_eq!(stdout(&o), "+ 0.1\n");

    let wide = write(dir.path(), "wide.txt", "1 3\n1 1 2\n");
    let o = run(sepdfa().args(["verify", &dfa, &wide]));
    assert_eq!(code(&o), 2);
}

#[test]
fn bad_inputs_are_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let conflict = write(dir.path(), "c.txt", "2 2\n1 1 0\n0 1 0\n");
    let o = run(sepdfa().args(["mine", &conflict]));
    assert_eq!(code(&o), 2);
    let o = run(sepdfa().args(["stats", "/nonexistent/samples.txt"]));
    assert_eq!(code(&o), 2);
}

#[test]
fn solver_problems_have_their_own_codes() {
    let dir = tempfile::tempdir().unwrap();
    let samples = write(dir.path(), "s.txt", "2 2\n1 1 0\n0 1 1\n");
    let o = run(sepdfa().args(["mine", &samples, "--solver", "sepdfa-no-such-solver"]));
    assert_eq!(code(&o), 3);

    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        let slow = dir.path().join("slow-solver");
        fs::write(&slow, "#!/bin/sh\nsleep 30\n").unwrap();
        fs::set_permissions(&slow, fs::Permissions::from_mode(0o755)).unwrap();
        let o = run(sepdfa()
            .args(["mine", &samples, "--timeout", "0.2", "--solver"])
            .arg(&slow));
        assert_eq!(code(&o), 4);
    }
}

#[test]
fn usage_errors_and_help() {
    let o = run(sepdfa().args(["mine", "x.txt", "--colours", "3"]));
    assert_eq!(code(&o), 1);
    let o = run(sepdfa().args(["gen-parity", "-c", "2", "-l", "3", "--stats", "-o", "x"]));
    assert_eq!(code(&o), 1);
    let o = run(sepdfa().arg("frobnicate"));
    assert_eq!(code(&o), 1);

    let o = run(sepdfa().args(["mine", "--help"]));
    assert_eq!(code(&o), 0);
    let help = stdout(&o);
    for flag in [
        "--mode",
        "--safety",
        "--no-symmetry-breaking",
        "--solver",
        "--timeout",
        "--n-start",
        "--n-max",
        "--output",
        "--key-values",
    ] {
        assert!(help.contains(flag), "missing {flag}");
    }
}

#[test]
fn stats_of_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = parity_file(dir.path(), "2", "3");
    let o = run(sepdfa().args(["stats", &input]));
    assert_eq!(
        stdout(&o),
        "alphabet\t2\npositives\t3\nnegatives\t5\napta\t15\nmin3dfa\t8\nddfa\t12\n"
    );
}
