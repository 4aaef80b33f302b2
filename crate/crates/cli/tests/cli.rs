use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};
use std::io::Write;

use cyclosynth::{diag_one, modulus_one_non_root, Context, Synthesizer, UnitaryRn};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cyclosynth"))
}

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = bin();
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("binary runs");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    } else {
        drop(child.stdin.take());
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn t_gate_json() -> String {
    let ctx = Context::new(4).unwrap();
    UnitaryRn::w(&ctx).to_json_string()
}

#[test]
fn synth_t_gate() {
    let o = run(&["synth", "--n", "4"], Some(&t_gate_json()));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "W\ntcount=1 m=1\n");
}

#[test]
fn phase_condition_exit_codes() {
    let o = run(&["phase-condition", "--n", "14"], None);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "false s=7\n");
    let o = run(&["phase-condition", "--n", "12"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "true s=3 t=1\n");
    let o = run(&["phase-condition", "--n", "7"], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn finite_lemma_command() {
    let o = run(&["check-finite-lemma", "--n", "8"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "true\n");
    let o = run(&["check-finite-lemma", "--n", "16"], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("n = 16"));
}

#[test]
fn verify_accepts_both_synthesis_methods() {
    for (n, seed, t) in [(4, 1, 3), (8, 2, 5), (12, 3, 4), (6, 4, 2)] {
        let matrix = tmp(&format!("m{n}-{seed}.json"));
        let o = run(
            &["random", "--n", &n.to_string(), "--seed", &seed.to_string(), "--target-tcount", &t.to_string(), "--output", matrix.to_str().unwrap()],
            None,
        );
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        for method in ["optimal", "ring"] {
            let o = run(&["synth", "--input", matrix.to_str().unwrap(), "--method", method], None);
            assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
            let out = stdout(&o);
            let mut lines = out.lines();
            let circuit = lines.next().unwrap();
            assert_eq!(lines.next().unwrap(), format!("tcount={t} m={}", lines_m(&out)));
            let o = run(&["verify", "--input", matrix.to_str().unwrap(), "--circuit-text", circuit], None);
            assert_eq!(o.status.code(), Some(0), "{method}: {}", stderr(&o));
            assert!(stdout(&o).starts_with("true"));
        }
        let o = run(&["ringsynth", "--input", matrix.to_str().unwrap()], None);
        assert_eq!(o.status.code(), Some(0));
        let circuit_file = tmp(&format!("c{n}-{seed}.txt"));
        fs::write(&circuit_file, stdout(&o).lines().next().unwrap()).unwrap();
        let o = run(&["verify", "--input", matrix.to_str().unwrap(), "--circuit", circuit_file.to_str().unwrap()], None);
        assert_eq!(o.status.code(), Some(0));
    }
}

fn lines_m(out: &str) -> String {
    let stats = out.lines().nth(1).unwrap();
    stats.split("m=").nth(1).unwrap().to_string()
}

#[test]
fn verify_rejects_wrong_circuits() {
    let o = run(&["verify", "--circuit-text", "H"], Some(&t_gate_json()));
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "false\n");
    let o = run(&["verify", "--circuit-text", "H X"], Some(&t_gate_json()));
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("\"X\""));
}

#[test]
fn outputs_are_deterministic() {
    let args = ["random", "--n", "16", "--seed", "99", "--target-tcount", "9"];
    let a = run(&args, None);
    let b = run(&args, None);
    assert_eq!(a.stdout, b.stdout);
    let s1 = run(&["synth", "--format", "json"], Some(&stdout(&a)));
    let s2 = run(&["synth", "--format", "json"], Some(&stdout(&b)));
    assert_eq!(s1.status.code(), Some(0));
    assert_eq!(s1.stdout, s2.stdout);
}

#[test]
fn batch_input_with_jobs() {
    let items: Vec<String> = (0..6)
        .map(|seed| {
            let syn = Synthesizer::new(8).unwrap();
            syn.random_unitary(3, seed).unwrap().0.to_json_string()
        })
        .collect();
    let batch = format!("[{}]", items.join(","));
    let one = run(&["tcount", "--jobs", "1"], Some(&batch));
    let many = run(&["tcount", "--jobs", "4"], Some(&batch));
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(stdout(&one), "3\n".repeat(6));
}

#[test]
fn malformed_inputs_name_the_field() {
    let cases = [
        (r#"{"n":4,"denom_exp":0,"entries":[[[1,0,0],[0,0,0,0]],[[0,0,0,0],[0,1,0,0]]]}"#, "entries[0][0]"),
        (r#"{"n":4,"denom_exp":0,"entries":[[[1,0,0,0],[0,0,0,0]],[[0,0,0,0],[0,1.5,0,0]]]}"#, "entries[1][1][1]"),
        (r#"{"n":4,"entries":[]}"#, "denom_exp"),
        (r#"{"n":5,"denom_exp":0,"entries":[]}"#, "n must be"),
        ("not json", "invalid JSON"),
    ];
    for (input, needle) in cases {
        let o = run(&["member"], Some(input));
        assert_eq!(o.status.code(), Some(2), "{input}");
        assert!(stderr(&o).contains(needle), "{input}: {}", stderr(&o));
    }
    let o = run(&["ringsynth", "--n", "16"], Some(&UnitaryRn::h0(&Context::new(16).unwrap()).to_json_string()));
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["synth", "--n", "8"], Some(&t_gate_json()));
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["synth", "--bogus"], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn non_members_exit_one() {
    let ctx = Context::new(14).unwrap();
    let u = diag_one(modulus_one_non_root(&ctx).unwrap()).unwrap();
    let o = run(&["member"], Some(&u.to_json_string()));
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("NotMember stage="));
    let o = run(&["member"], Some(&t_gate_json()));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "Member\nW\n");
}

#[test]
fn census_csv() {
    let o = run(&["fn-census", "--max", "14"], None);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 8);
    assert_eq!(lines[6], "14,false");
    assert_eq!(lines[7], "14,6,7");
}

#[test]
fn census_resumes_from_checkpoint() {
    let max = 250_000u64;
    let full = tmp("census-full.csv");
    let o = run(&["fn-census", "--max", &max.to_string(), "--output", full.to_str().unwrap(), "--jobs", "2"], None);
    assert_eq!(o.status.code(), Some(0));
    let expected = fs::read_to_string(&full).unwrap();

    let partial = tmp("census-partial.csv");
    let ck = tmp("census.ckpt");
    let first_block: String = expected.lines().take_while(|l| l.split(',').next().unwrap().parse::<u64>().unwrap() < 100_000).map(|l| format!("{l}\n")).collect();
    let satisfied = first_block.lines().filter(|l| l.ends_with("true")).count();
    let total = first_block.lines().count();
    fs::write(&partial, format!("{first_block}150000,tru")).unwrap();
    fs::write(
        &ck,
        format!(
            r#"{{"max":{max},"next":100000,"satisfied":{satisfied},"total":{total},"output_bytes":{}}}"#,
            first_block.len()
        ),
    )
    .unwrap();
    let o = run(
        &["fn-census", "--max", &max.to_string(), "--output", partial.to_str().unwrap(), "--checkpoint", ck.to_str().unwrap()],
        None,
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(fs::read_to_string(&partial).unwrap(), expected);
    let ck_text = fs::read_to_string(&ck).unwrap();
    assert!(ck_text.contains(&format!("\"next\":{}", max + 1)));

    let o = run(&["fn-census", "--max", "1000", "--output", partial.to_str().unwrap(), "--checkpoint", ck.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["fn-census", "--max", "1000", "--checkpoint", ck.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn approx_goes_to_stderr() {
    let o = run(&["tcount", "--approx"], Some(&t_gate_json()));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n");
    assert!(stderr(&o).contains("non-authoritative"));
    assert!(stderr(&o).contains("+0.707106781187+0.707106781187i"));
}
