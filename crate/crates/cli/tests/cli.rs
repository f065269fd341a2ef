use rootspan::affine_base::{AffineType, DiagramData};
use rootspan::elliptic_core::preset;
use rootspan_cli::{render_diagram, run, EXIT_INVALID, EXIT_OK, EXIT_USAGE};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("rootspan").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write_datum(dir: &tempfile::TempDir, case: usize, l: usize) -> String {
    let path = dir.path().join(format!("case{case}_l{l}.json"));
    let spec = preset(case, l).unwrap().to_spec();
    std::fs::write(&path, serde_json::to_string_pretty(&spec).unwrap()).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn mult_examples() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_datum(&dir, 10, 2);
    assert_eq!(call(&["mult", "--datum", &file, "--sigma", "2,0"]), (EXIT_OK, "2\n".into(), String::new()));
    assert_eq!(call(&["mult", "--datum", &file, "--sigma", "0,0"]), (EXIT_OK, "4\n".into(), String::new()));
    assert_eq!(call(&["mult", "--datum", &file, "--sigma", "-3,-5"]).1, "1\n");
}

#[test]
fn figure_grid() {
    let (code, out, _) = call(&["mult-table", "--preset", "case10", "--l", "2", "--p-range", "0..8", "--z-range", "0..9"]);
    assert_eq!(code, EXIT_OK);
    let rows: Vec<&str> = out.lines().take(9).collect();
    for (i, row) in rows.iter().enumerate() {
        let p = 8 - i as i64;
        let (label, cells) = row.split_once(" | ").unwrap();
        assert_eq!(label.trim().parse::<i64>().unwrap(), p);
        let cells: Vec<usize> = cells.split_whitespace().map(|c| c.parse().unwrap()).collect();
        assert_eq!(cells.len(), 10);
        for (z, &v) in cells.iter().enumerate() {
            let want = match (p, z) {
                (0, 0) => 4,
                _ if p % 2 == 1 => 1,
                _ if p % 4 == 0 => 3,
                _ if z % 2 == 0 => 2,
                _ => 3,
            };
            assert_eq!(v, want, "p={p} z={z}");
        }
    }
    assert!(out.contains("periodic modulo 4M"));
}

#[test]
fn json_round_trip_gives_identical_outputs() {
    let dir = tempfile::tempdir().unwrap();
    for (case, l) in [(1, 2), (5, 2), (10, 2), (8, 3)] {
        let file = write_datum(&dir, case, l);
        let name = format!("case{case}");
        let ls = l.to_string();
        let commands: [&[&str]; 7] = [
            &["classify"],
            &["base", "--direction", "1,1"],
            &["roots", "--box", "1"],
            &["mult", "--sigma", "2,3"],
            &["mult-table", "--p-range", "-2..2", "--z-range", "0..3"],
            &["verify", "--box", "2"],
            &["diagram"],
        ];
        for cmd in commands {
            for format in ["text", "json"] {
                let mut a: Vec<&str> = cmd.to_vec();
                a.extend(["--format", format, "--datum", &file]);
                let mut b: Vec<&str> = cmd.to_vec();
                b.extend(["--format", format, "--preset", &name, "--l", &ls]);
                let ra = call(&a);
                assert_eq!(ra.0, EXIT_OK, "{cmd:?} {}", ra.2);
                assert_eq!(ra, call(&b), "{cmd:?} case{case}");
                if format == "json" {
                    let v: serde_json::Value = serde_json::from_str(&ra.1).unwrap();
                    assert_eq!(v["schema"], 1);
                }
            }
        }
    }
}

#[test]
fn verify_passes_on_the_simply_laced_datum() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_datum(&dir, 1, 2);
    let (code, out, _) = call(&["verify", "--datum", &file, "--box", "3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().all(|l| l.starts_with("PASS")), "{out}");
}

#[test]
fn exit_codes() {
    assert_eq!(call(&[]).0, EXIT_USAGE);
    assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(call(&["mult", "--preset", "case10", "--sigma", "1"]).0, EXIT_USAGE);
    assert_eq!(call(&["mult", "--sigma", "1,1"]).0, EXIT_USAGE);
    assert_eq!(call(&["--help"]).0, EXIT_OK);
    assert_eq!(call(&["mult", "--preset", "case8", "--l", "2", "--sigma", "1,1"]).0, EXIT_INVALID);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    // The printed k(α₀) = 2 for the doubly starred D_3^(2) datum is rejected.
    std::fs::write(&bad, r#"{"type": "D_3^(2)", "l": 2, "k": [2, 1, 1], "g": [true, true, false]}"#).unwrap();
    let (code, _, err) = call(&["classify", "--datum", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("invalid datum"), "{err}");
    std::fs::write(&bad, "{").unwrap();
    assert_eq!(call(&["classify", "--datum", bad.to_str().unwrap()]).0, EXIT_INVALID);
    assert_eq!(call(&["classify", "--datum", "/nonexistent/datum.json"]).0, EXIT_INVALID);
}

#[test]
fn diagrams() {
    let first = |label: &str| render_diagram(&DiagramData::of_type(&label.parse::<AffineType>().unwrap())).lines().next().unwrap().to_string();
    assert_eq!(first("A_1^(1)"), "o <=> o");
    assert_eq!(first("C^(2)(2)"), "● <=> ●");
    assert_eq!(first("D_4^(3)"), "o --- o <≡ o");
    let a1 = render_diagram(&DiagramData::of_type(&"A_1^(1)".parse().unwrap()));
    assert_eq!(a1.lines().nth(1).unwrap(), "α1    α0");
    let (code, out, _) = call(&["diagram", "--affine", "D_4^(3)"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("o --- o <≡ o\n"));
}

#[test]
fn lie_check() {
    let (code, out, _) = call(&["lie-check"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().all(|l| l.starts_with("PASS")));
    assert_eq!(out.lines().count(), 6 * 4 + 2 + 3 + 4 + 3 + 4 + 2);
    let (code, out, _) = call(&["lie-check", "--preset", "case7"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert_eq!(call(&["lie-check", "--pairing", "2,1"]).0, EXIT_USAGE);
}
