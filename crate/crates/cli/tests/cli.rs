//! End-to-end checks of the command-line contract: exit codes, byte-stable
//! reports, and the file formats.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_shiftlab"))
}

fn workdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("shiftlab-cli-{name}-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, content).unwrap();
    path
}

fn fib_spec(dir: &Path) -> PathBuf {
    write(
        dir,
        "fib.shift",
        "type = substitution\nalphabet = 0 1\nrules = 0:01 1:0\n",
    )
}

fn full_spec(dir: &Path) -> PathBuf {
    write(dir, "full2.shift", "type = full\nalphabet = 0 1\n")
}

fn golden_spec(dir: &Path) -> PathBuf {
    write(dir, "golden.shift", "type = sft\nalphabet = 0 1\nforbidden = 11\n")
}

fn id_code(dir: &Path) -> PathBuf {
    write(dir, "id.code", "alphabet = 0 1\nl = 0\nr = 0\nmap 0 -> 0\nmap 1 -> 1\n")
}

fn shift1_code(dir: &Path) -> PathBuf {
    write(
        dir,
        "shift1.code",
        "alphabet = 0 1\nl = 0\nr = 1\nmap 00 -> 0\nmap 01 -> 1\nmap 10 -> 0\nmap 11 -> 1\n",
    )
}

fn shift2_code(dir: &Path) -> PathBuf {
    let mut body = String::from("alphabet = 0 1\nl = 0\nr = 2\n");
    for x in 0..8 {
        let (a, b, c) = ((x >> 2) & 1, (x >> 1) & 1, x & 1);
        body.push_str(&format!("map {a}{b}{c} -> {c}\n"));
    }
    write(dir, "shift2.code", &body)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code_of(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn language_lists_words_and_flags_empty() {
    let dir = workdir("language");
    let fib = fib_spec(&dir);
    let out = run(&["language", "--spec", fib.to_str().unwrap(), "--n", "3"]);
    assert_eq!(code_of(&out), 0);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout, "001\n010\n100\n101\n");

    let full = full_spec(&dir);
    let out = run(&["language", "--spec", full.to_str().unwrap(), "--n", "2"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 4);

    let bad = write(&dir, "bad.shift", "type = sft\nalphabet = 0 1\n");
    let out = run(&["language", "--spec", bad.to_str().unwrap(), "--n", "2"]);
    assert_eq!(code_of(&out), 2);

    let empty = write(
        &dir,
        "empty.shift",
        "type = sft\nalphabet = 0 1\nforbidden = 00 01 10 11\n",
    );
    let out = run(&["language", "--spec", empty.to_str().unwrap(), "--n", "3"]);
    assert_eq!(code_of(&out), 3);
}

#[test]
fn growth_emits_expected_counts() {
    let dir = workdir("growth");
    let golden = golden_spec(&dir);
    let out = run(&[
        "growth",
        "--spec",
        golden.to_str().unwrap(),
        "--rmax",
        "10",
    ]);
    assert_eq!(code_of(&out), 0);
    let stdout = String::from_utf8(out.stdout).unwrap();
    let counts: Vec<&str> = stdout
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap())
        .collect();
    assert_eq!(counts, ["2", "3", "5", "8", "13", "21", "34", "55", "89", "144"]);
}

#[test]
fn entropy_of_full_shift() {
    let dir = workdir("entropy");
    let full = full_spec(&dir);
    let out = run(&["entropy", "--spec", full.to_str().unwrap(), "--rmax", "5"]);
    assert_eq!(code_of(&out), 0);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("entropy = 0.693147"));
    assert!(stdout.contains("argmin = 1"));
}

#[test]
fn flat_distinguishes_exhaustion() {
    let dir = workdir("flat");
    let full = full_spec(&dir);
    let out = run(&[
        "flat", "--spec", full.to_str().unwrap(),
        "--margin", "1,1", "--eps", "0.1", "--cap", "40",
    ]);
    assert_eq!(code_of(&out), 3);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "n,eps_num,eps_den\n");

    let fib = fib_spec(&dir);
    let out = run(&[
        "flat", "--spec", fib.to_str().unwrap(),
        "--margin", "1,1", "--eps", "0.1", "--cap", "20",
    ]);
    assert_eq!(code_of(&out), 0);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("17,1,10"));
}

#[test]
fn autos_counts_and_writes_code_files() {
    let dir = workdir("autos");
    let full = full_spec(&dir);
    let outdir = dir.join("codes");
    let out = run(&[
        "autos", "--spec", full.to_str().unwrap(),
        "--radius", "0,0", "--outdir", outdir.to_str().unwrap(),
    ]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "2\n");
    assert_eq!(fs::read_dir(&outdir).unwrap().count(), 2);

    let fib = fib_spec(&dir);
    let out = run(&["autos", "--spec", fib.to_str().unwrap(), "--radius", "0,0"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "1\n");

    let out = run(&[
        "autos", "--spec", full.to_str().unwrap(),
        "--radius", "1,1", "--budget", "10",
    ]);
    assert_eq!(code_of(&out), 4);
}

#[test]
fn charmeas_pass_and_preconditions() {
    let dir = workdir("charmeas");
    let fib = fib_spec(&dir);
    let shift1 = shift1_code(&dir);
    let out = run(&[
        "charmeas", "--spec", fib.to_str().unwrap(),
        "--codes", shift1.to_str().unwrap(), "--n", "50", "--m", "5",
    ]);
    assert_eq!(code_of(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.lines().skip(1).all(|l| l.ends_with("true")));

    let out = run(&[
        "charmeas", "--spec", fib.to_str().unwrap(),
        "--codes", shift1.to_str().unwrap(), "--n", "50", "--m", "60",
    ]);
    assert_eq!(code_of(&out), 2);

    // flip is not an endomorphism here, so its code file cannot certify
    let flip = write(&dir, "flip.code", "alphabet = 0 1\nl = 0\nr = 0\nmap 0 -> 1\nmap 1 -> 0\n");
    let out = run(&[
        "charmeas", "--spec", fib.to_str().unwrap(),
        "--codes", flip.to_str().unwrap(), "--n", "10", "--m", "2",
    ]);
    assert_eq!(code_of(&out), 2);
}

#[test]
fn sofic_exit_codes() {
    let dir = workdir("sofic");
    let fib = fib_spec(&dir);
    let id = id_code(&dir);
    let s1 = shift1_code(&dir);
    let s2 = shift2_code(&dir);
    let codes = format!(
        "{},{},{}",
        id.to_str().unwrap(),
        s1.to_str().unwrap(),
        s2.to_str().unwrap()
    );
    let out = run(&[
        "sofic", "--spec", fib.to_str().unwrap(),
        "--codes", &codes, "--n", "12", "--margins", "0,2",
    ]);
    assert_eq!(code_of(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report = String::from_utf8(out.stdout).unwrap();
    assert!(report.contains("\"num\": 11"));
    assert!(report.contains("\"den\": 15"));

    let out = run(&[
        "sofic", "--spec", fib.to_str().unwrap(),
        "--codes", &codes, "--n", "2", "--margins", "0,2",
    ]);
    assert_eq!(code_of(&out), 5);

    let no_id = format!("{},{}", s1.to_str().unwrap(), s2.to_str().unwrap());
    let out = run(&[
        "sofic", "--spec", fib.to_str().unwrap(),
        "--codes", &no_id, "--n", "12", "--margins", "0,2",
    ]);
    assert_eq!(code_of(&out), 2);
}

#[test]
fn freq_and_recur() {
    let dir = workdir("freq");
    let fib = fib_spec(&dir);
    let out = run(&[
        "freq", "--spec", fib.to_str().unwrap(),
        "--schedule", "25,50", "--m", "1",
    ]);
    assert_eq!(code_of(&out), 0);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 3);

    let out = run(&["recur", "--spec", fib.to_str().unwrap(), "--n", "1", "--cap", "10"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "3\n");

    let full = full_spec(&dir);
    let out = run(&["recur", "--spec", full.to_str().unwrap(), "--n", "1", "--cap", "10"]);
    assert_eq!(code_of(&out), 3);
}

#[test]
fn reports_are_byte_stable() {
    let dir = workdir("stable");
    let fib = fib_spec(&dir);
    let s1 = shift1_code(&dir);
    let args = [
        "charmeas", "--spec", fib.to_str().unwrap(),
        "--codes", s1.to_str().unwrap(),
        "--n", "20", "--m", "3", "--format", "json",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(code_of(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());
}
