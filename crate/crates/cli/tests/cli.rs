use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

const M3: &str = "# diamond\n5\n0 1\n0 2\n0 3\n1 4\n2 4\n3 4\n";
const M2: &str = "4\n0 1\n0 2\n1 3\n2 3\n";
const L3: &str = "3\n0 1\n1 2\n";
const L4: &str = "4\n0 1\n1 2\n2 3\n";

fn latdiff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latdiff"))
        .args(args)
        .env_remove("LATDIFF_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Files(TempDir::new().unwrap())
    }

    fn write(&self, name: &str, text: &str) -> String {
        let p: PathBuf = self.0.path().join(name);
        fs::write(&p, text).unwrap();
        p.to_string_lossy().into_owned()
    }
}

#[test]
fn lattice_check_reports() {
    let f = Files::new();
    let o = latdiff(&["lattice-check", &f.write("m3.txt", M3)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "PASS n=5 bottom=0 top=4 distributive=false\n");

    let o = latdiff(&["lattice-check", &f.write("l4.txt", L4)]);
    assert_eq!(stdout(&o), "PASS n=4 bottom=0 top=3 distributive=true\n");

    let o = latdiff(&["lattice-check", &f.write("two_tops.txt", "3\n0 1\n0 2\n")]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("FAIL no-top"), "{}", stdout(&o));

    let o = latdiff(&["lattice-check", &f.write("bad.txt", "3\n0 1\n1 x\n")]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));

    let o = latdiff(&["lattice-check", "/nonexistent/lattice.txt"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn op_check_verdicts() {
    let f = Files::new();
    let m2 = f.write("m2.txt", M2);
    let o = latdiff(&["op-check", &m2, &f.write("theta.txt", "1 0 1 2\n")]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("weight 1: NOT a difference operator"));

    let o = latdiff(&["op-check", &m2, &f.write("phi_a.txt", "# Phi_a\n1 0 3 2\n")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("weight 1: difference operator"));

    let l3 = f.write("l3.txt", L3);
    let id = f.write("id.txt", "0 1 2\n");
    let o = latdiff(&["op-check", &l3, &id, "--weight", "0", "--weight", "-1"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("weight 0: derivation"));
    assert!(text.contains("weight -1: weight -1 operator"));
    assert!(text.contains("decreasing=true"));
    assert!(text.contains("idempotent=true"));

    let o = latdiff(&["op-check", &l3, &f.write("short.txt", "0 1\n")]);
    assert_eq!(code(&o), 2);
    let o = latdiff(&["op-check", &l3, &f.write("range.txt", "0 1 3\n")]);
    assert_eq!(code(&o), 2);
}

#[test]
fn enumerate_counts() {
    let run = |args: &[&str]| {
        let o = latdiff(args);
        assert_eq!(code(&o), 0, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        stdout(&o).trim().to_string()
    };
    assert_eq!(run(&["enumerate", "--family", "chain", "--n", "3", "--weight", "1"]), "17");
    assert_eq!(run(&["enumerate", "--family", "quasi", "--n", "4", "--weight", "1"]), "36");
    assert_eq!(run(&["enumerate", "--family", "chain", "--n", "4", "--fix", "3=3"]), "14");
    assert_eq!(
        run(&["enumerate", "--family", "chain", "--n", "4", "--fix", "3=1", "--at-least", "2=2"]),
        "14"
    );
    assert_eq!(run(&["enumerate", "--family", "quasi", "--n", "4", "--weight", "0"]), "9");
    assert_eq!(run(&["enumerate", "--family", "quasi", "--n", "5", "--weight", "-1"]), "21");
    assert_eq!(run(&["enumerate", "--family", "chain", "--n", "6", "--parallel"]), "1379");
}

#[test]
fn enumerate_budget_and_input_errors() {
    let o = latdiff(&["enumerate", "--family", "chain", "--n", "9"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget of 8"));

    let o = Command::new(env!("CARGO_BIN_EXE_latdiff"))
        .args(["enumerate", "--family", "chain", "--n", "9"])
        .env("LATDIFF_BUDGET", "9")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "119848");

    let o = latdiff(&["enumerate", "--family", "chain", "--n", "9", "--force"]);
    assert_eq!(stdout(&o).trim(), "119848");

    let o = latdiff(&["enumerate", "--family", "chain", "--n", "3", "--fix", "5=0"]);
    assert_eq!(code(&o), 2);
    let o = latdiff(&["enumerate", "--family", "quasi", "--n", "3"]);
    assert_eq!(code(&o), 2);
    let o = latdiff(&["enumerate", "--family", "chain", "--n", "3", "--fix", "1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn emitted_operators_round_trip_through_op_check() {
    let f = Files::new();
    let m3 = f.write("m3.txt", M3);
    let o = latdiff(&["enumerate", "--lattice", &m3, "--emit"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(text.lines().last().unwrap(), "# count 59");
    assert_eq!(lines.len(), 59);
    let mut sorted = lines.clone();
    sorted.sort_by_key(|l| l.split(' ').map(|t| t.parse::<usize>().unwrap()).collect::<Vec<_>>());
    assert_eq!(sorted, lines);
    for (i, line) in lines.iter().enumerate() {
        let op = f.write(&format!("op{i}.txt"), &format!("{line}\n"));
        let o = latdiff(&["op-check", &m3, &op]);
        assert_eq!(code(&o), 0, "{line}: {}", stdout(&o));
    }
}

#[test]
fn parallel_emission_matches_sequential() {
    let seq = latdiff(&["enumerate", "--family", "quasi", "--n", "6", "--emit"]);
    let par = latdiff(&["enumerate", "--family", "quasi", "--n", "6", "--emit", "--parallel"]);
    assert_eq!(seq.stdout, par.stdout);
}

#[test]
fn tables_match_and_are_byte_stable() {
    let o = latdiff(&["table", "chains", "--max-n", "10"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.lines().next().unwrap(), "n\tformula");
    assert_eq!(text.lines().last().unwrap(), "10\t537877");

    let o = latdiff(&["table", "quasi", "--max-n", "11"]);
    let quasi = stdout(&o);
    assert_eq!(quasi.lines().last().unwrap(), "11\t3791\t976\t2815");
    assert_eq!(quasi.lines().nth(1).unwrap(), "4\t—\t—\t—");

    let o = latdiff(&["table", "quasi", "--max-n", "7", "--brute"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(
        text,
        "n\tformula\tbrute\tmatch\tcubic_addend\tbinomial_addend\n\
         4\t—\t36\tn/a(formula n≥5)\t—\t—\n\
         5\t59\t59\tyes\t40\t19\n\
         6\t133\t133\tyes\t86\t47\n\
         7\t275\t275\tyes\t164\t111\n"
    );
    let again = latdiff(&["table", "quasi", "--max-n", "7", "--brute", "--parallel"]);
    assert_eq!(again.stdout, o.stdout);

    let o = latdiff(&["table", "chains", "--max-n", "8", "--brute"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().last().unwrap(), "8\t26870\t26870\tyes");

    let o = latdiff(&["table", "chains", "--brute"]);
    assert_eq!(code(&o), 3);
    assert!(o.stdout.is_empty());
}

#[test]
fn verify_suites() {
    let o = latdiff(&["verify", "--suite", "counterexamples", "--verbose"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.matches("    rejected:").count(), 7);
    assert_eq!(text.matches("    accepted:").count(), 2);

    let o = latdiff(&["verify", "--suite", "quasi-classification"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("PASS classification M_2 expected=36 observed=36"));
    assert!(text.contains("PASS classification M_4 expected=133 observed=133"));

    let o = latdiff(&["verify", "--suite", "weight-equivalence"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("12 passed, 0 failed\n"));

    let o = latdiff(&["verify", "--suite", "nonsense"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn classify_lists_families() {
    let o = latdiff(&["classify", "--family", "quasi", "--n", "4"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("operator\tfamilies\n"));
    assert!(text.contains("1 0 3 2\tphi_a\n"), "{text}");
    assert!(text.ends_with("# count 36\n"));
}
