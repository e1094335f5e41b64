use std::path::PathBuf;
use std::process::Command;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("read {}: {e}", path.display()))
}

fn run(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_lpa")).args(args).output().unwrap();
    assert!(
        out.status.success(),
        "lpa {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn cases() -> Vec<(&'static str, Vec<String>)> {
    let s = |v: &[&str]| v.iter().map(|a| a.to_string()).collect::<Vec<_>>();
    vec![
        ("info_r1.txt", s(&["info", &fixture("r1.graph")])),
        ("info_r2.txt", s(&["info", &fixture("r2.graph")])),
        ("info_t.txt", s(&["info", &fixture("t.graph")])),
        ("info_a3.txt", s(&["info", &fixture("a3.graph")])),
        ("eq_ck2.txt", s(&["eq", &fixture("r2.graph"), "v", "e e* + f f*"])),
        ("eq_corner.txt", s(&["eq", &fixture("r2.graph"), "v", "e e*"])),
        ("classify_a3.txt", s(&["classify", &fixture("a3.graph")])),
        ("reduce_r2.txt", s(&["reduce", &fixture("r2.graph"), "v + e e*"])),
        ("isotropy_r2.txt", s(&["isotropy", &fixture("r2.graph"), ";(e,f)"])),
        ("isotropy_t.txt", s(&["isotropy", &fixture("t.graph"), "f"])),
    ]
}

#[test]
fn golden_outputs_are_byte_identical() {
    for (file, args) in cases() {
        let argrefs: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(run(&argrefs), golden(file), "output drifted for {file}");
    }
}
