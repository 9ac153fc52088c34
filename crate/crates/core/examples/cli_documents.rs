//! Driving the command-line front end with a JSON document.

use starmorita::cli::{check_certificate, run};

const DOC: &str = r#"{
  "algebras": {"M": {"kind": "matrix", "n": 2}},
  "functionals": {"tr": {"algebra": "M", "density": [["1", "0"], ["0", "1"]]}},
  "representations": {"def": {"kind": "defining", "algebra": "M"}},
  "bimodules": {"X": {"kind": "free", "algebra": "M", "n": 2}}
}"#;

fn main() {
    let path = std::env::temp_dir().join(format!("starmorita-example-{}.json", std::process::id()));
    std::fs::write(&path, DOC).expect("writable temp dir");
    let doc = path.display().to_string();
    for argv in [
        vec!["validate"],
        vec!["gns", "M", "tr"],
        vec!["induce", "X", "def"],
        vec!["verify-bimodule", "X"],
        vec!["psd", "[[\"1\", \"2\"], [\"2\", \"1\"]]"],
    ] {
        let out = run(["starmorita", "--doc", &doc].into_iter().chain(argv.iter().copied()));
        print!("exit {} {}", out.exit_code, out.stderr);
        if out.exit_code == 1 {
            let report: serde_json::Value = serde_json::from_str(&out.stdout).expect("JSON report");
            let replay = check_certificate(&report).expect("well-formed certificate");
            println!("  certificate replay: {}", replay.summary);
        }
    }
    let _ = std::fs::remove_file(path);
}
