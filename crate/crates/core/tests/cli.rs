use std::process::{Command, Output};

fn cyclorep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclorep")).args(args).output().unwrap()
}

fn stdout_ok(args: &[&str]) -> String {
    let out = cyclorep(args);
    assert!(out.status.success(), "{:?}: {}", args, String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    cyclorep(args).status.code().unwrap()
}

#[test]
fn generation_commands() {
    assert_eq!(stdout_ok(&["phi", "15"]), "x^8-x^7+x^5-x^4+x^3-x+1\n");
    assert_eq!(stdout_ok(&["phi", "1"]), "x-1\n");
    assert_eq!(stdout_ok(&["c", "105", "--stats"]), "x^105-1\ndegree: 105\nheight: 1\nterms: 2\n");
}

#[test]
fn factor_command() {
    assert_eq!(
        stdout_ok(&["factor", "x^105-1", "--vocab", "phi"]),
        "Phi_1 * Phi_3 * Phi_5 * Phi_7 * Phi_15 * Phi_21 * Phi_35 * Phi_105\n"
    );
    assert_eq!(stdout_ok(&["factor", "x^105-1", "--vocab", "c"]), "C_105\n");
    assert_eq!(stdout_ok(&["factor", "x^8+x^3+x^5+1"]), "Phi_2^2 * Phi_6 * Phi_10\n");
    let sq = stdout_ok(&["factor", "x^12-x^7-x^5+1", "--vocab", "plain", "--squarefree-only"]);
    assert!(sq.starts_with("(x-1)^2 * (x^10+2*x^9+"), "{sq}");
    assert_eq!(sq.matches(" * ").count(), 1);
}

#[test]
fn factor_output_round_trips() {
    let inputs = [
        "x^105-1",
        "x^8+x^5+x^3+1",
        "-4*x^9+4*x^6-8*x^3",
        "x^6+3*x^5-x^4+2*x-7",
        "x^128-x^112+x^80-x^64+x^48-x^16+1",
    ];
    for input in inputs {
        let f: cyclorep::SparsePoly = input.parse().unwrap();
        for vocab in ["plain", "phi", "c"] {
            for extra in [&[][..], &["--squarefree-only"][..]] {
                let mut args = vec!["factor", input, "--vocab", vocab];
                args.extend_from_slice(extra);
                let text = stdout_ok(&args);
                let parsed = cyclorep::cli::parse_input(text.trim()).unwrap();
                assert_eq!(parsed, f, "{args:?} -> {text}");
                // the text is itself accepted as input
                assert_eq!(stdout_ok(&["factor", text.trim(), "--vocab", vocab]), stdout_ok(&["factor", input, "--vocab", vocab]));
            }
        }
    }
}

#[test]
fn detect_command() {
    assert_eq!(
        stdout_ok(&["detect", "x^128-x^112+x^80-x^64+x^48-x^16+1"]),
        "cyclotomic: Phi_15 * Phi_30 * Phi_60 * Phi_120 * Phi_240\n"
    );
    assert!(stdout_ok(&["detect", "x^2-x-1"]).starts_with("not-cyclotomic"));
    assert_eq!(stdout_ok(&["detect", "x-1"]), "cyclotomic: Phi_1\n");
}

#[test]
fn size_command() {
    let out = stdout_ok(&["size", "x^105-1", "--vocab", "sparse", "-N", "8", "-K", "6"]);
    assert!(out.contains("measured_bits: 34\n"), "{out}");
    let measured = |vocab: &str| -> u64 {
        let out = stdout_ok(&["size", "x^105-1", "--vocab", vocab, "-N", "8", "-K", "6", "--csv"]);
        out.lines().nth(1).unwrap().split(',').nth(1).unwrap().parse().unwrap()
    };
    assert!(measured("c") * 3 < measured("dense"));
}

#[test]
fn encode_decode_files() {
    let dir = tempfile::tempdir().unwrap();
    for (input, vocab) in [("x^105-1", "phi"), ("x^3+1", "c"), ("x^8+x^5+x^3+1", "plain"), ("x^12-7", "sparse"), ("3*x^2+1", "dense")] {
        let path = dir.path().join(format!("{vocab}.cprep"));
        let path_s = path.to_str().unwrap();
        stdout_ok(&["encode", input, "--vocab", vocab, "-o", path_s, "-N", "8", "-K", "4"]);
        let decoded = stdout_ok(&["decode", path_s]);
        let expected = match vocab {
            "phi" | "c" | "plain" => stdout_ok(&["factor", input, "--vocab", vocab]),
            _ => format!("{}\n", input.parse::<cyclorep::SparsePoly>().unwrap()),
        };
        assert_eq!(decoded, expected);
    }
    let bad = dir.path().join("bad.cprep");
    std::fs::write(&bad, b"XX\x01\x01\x01\x08\x04\x00").unwrap();
    assert_eq!(code(&["decode", bad.to_str().unwrap()]), 3);
    assert_eq!(code(&["decode", dir.path().join("missing").to_str().unwrap()]), 1);
}

#[test]
fn file_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.txt");
    std::fs::write(&path, "x^128-x^112+x^80-x^64+x^48-x^16+1\n").unwrap();
    let arg = format!("@{}", path.display());
    assert_eq!(stdout_ok(&["factor", &arg]), "Phi_15 * Phi_30 * Phi_60 * Phi_120 * Phi_240\n");
}

#[test]
fn tables() {
    assert_eq!(stdout_ok(&["table", "1", "--max", "400", "--csv"]), "height,k,phi_k\n2,105,48\n3,385,240\n");
    let t2 = stdout_ok(&["table", "2", "--n", "105", "--csv"]);
    assert_eq!(t2.lines().count(), 13);
    assert!(t2.lines().any(|l| l.starts_with("sparse,expanded,") && l.ends_with(",21")));
    let t3 = stdout_ok(&["table", "3", "--p", "5", "--q", "7", "--csv"]);
    assert!(t3.lines().any(|l| l.starts_with("phi,square-free,") && l.ends_with(",24")));
    let text = stdout_ok(&["table", "3", "--p", "5", "--q", "7"]);
    assert!(text.starts_with("representation  form"));
}

#[test]
fn deterministic_output() {
    for args in [&["table", "2", "--n", "1365"][..], &["factor", "x^60-1", "--vocab", "c"], &["table", "1", "--max", "2000"]] {
        assert_eq!(stdout_ok(args), stdout_ok(args));
    }
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["phi", "0"]), 2);
    assert_eq!(code(&["phi", "-3"]), 2);
    assert_eq!(code(&["bogus"]), 2);
    assert_eq!(code(&["table", "1"]), 2);
    assert_eq!(code(&["factor", "x^-1"]), 4);
    assert_eq!(code(&["factor", "x+"]), 3);
    assert_eq!(code(&["factor", "0"]), 4);
    assert_eq!(code(&["size", "x^300-1", "--vocab", "sparse", "-N", "8"]), 4);
    assert_eq!(code(&["--help"]), 0);
}
