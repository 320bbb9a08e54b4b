use std::path::Path;

use dgq::cli::{example, run, Check, DgCategoryDoc, Document, Format, Report, Verdict};
use dgq::hopf::builtin;
use dgq::simplicial::bimodule_model;

fn dgq(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("dgq").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write_example(dir: &Path, name: &str) -> String {
    let path = dir.join(format!("{}.json", name.replace(':', "_")));
    std::fs::write(&path, example(name).unwrap().to_json()).unwrap();
    path.to_str().unwrap().to_string()
}

const EXAMPLES: &[&str] = &[
    "trivial",
    "z2",
    "z3",
    "sweedler",
    "sweedler_double",
    "free-tetramodule:sweedler",
    "regular-tetramodule:z2",
    "two-object",
    "contractible-pair",
    "dual-numbers",
    "trivial-monoidal",
    "absorbing-monoidal",
    "chaotic-monoidal",
];

#[test]
fn every_builtin_round_trips() {
    for name in EXAMPLES {
        let doc = example(name).unwrap();
        let text = doc.to_json();
        let back = Document::parse(&text).unwrap();
        assert_eq!(back.kind(), doc.kind(), "{name}");
        assert_eq!(back.to_json(), text, "{name}");
    }
    for name in ["trivial", "z2", "z3", "sweedler", "sweedler_double"] {
        let Document::Hopf(j) = Document::parse(&example(name).unwrap().to_json()).unwrap() else { panic!("{name}") };
        assert_eq!(j.to_hopf().unwrap(), builtin(name).unwrap(), "{name}");
    }
}

#[test]
fn decimal_scalars_are_rejected_with_their_field() {
    let text = example("sweedler").unwrap().to_json();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["m"][3][3] = "0.5e1".into();
    let Document::Hopf(j) = Document::parse(&v.to_string()).unwrap() else { panic!() };
    let e = j.to_hopf().unwrap_err().to_string();
    assert!(e.contains("m[3]") && e.contains("0.5e1"), "{e}");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, v.to_string()).unwrap();
    let (code, _, err) = dgq(&["hopf", "check", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("m[3]"), "{err}");
}

#[test]
fn structural_errors_name_the_field_or_position() {
    let e = Document::parse("{\"kind\": \"hopf\", \"dim\": 1,\n \"labels\": [\"1\"] ,,}").err().unwrap().to_string();
    assert!(e.contains("line 2"), "{e}");
    let e = Document::parse("{\"kind\": \"hopf\", \"dim\": \"one\"}").err().unwrap().to_string();
    assert!(e.contains("dim"), "{e}");
    let e = Document::parse("{\"kind\": \"monoid\"}").err().unwrap().to_string();
    assert!(e.contains("unknown kind"), "{e}");
    let e = Document::parse("{\"dim\": 1}").err().unwrap().to_string();
    assert!(e.contains("kind"), "{e}");
}

#[test]
fn large_sparse_category_keeps_its_entries() {
    let c = bimodule_model(4).unwrap();
    let doc = DgCategoryDoc::new(&c, &[vec![2]]);
    let count = doc.category.entry_count();
    let text = Document::DgCategory(doc).to_json();
    let Document::DgCategory(back) = Document::parse(&text).unwrap() else { panic!() };
    assert_eq!(back.category.entry_count(), count);
    assert_eq!(back.category.objects(), ["e", "A", "J"]);
    assert_eq!(back.marked, vec![vec!["J".to_string()]]);
    let p = back.to_pcat().unwrap();
    let again = DgCategoryDoc::new(&p.category, &p.marked);
    assert_eq!(again.category.entry_count(), count);
    assert!(count > 10_000, "{count}");
}

#[test]
fn hopf_builtin_emits_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweedler.json");
    let (code, out, _) = dgq(&["hopf", "builtin", "sweedler", "--emit", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = dgq(&["hopf", "check", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("PASS  antipode axioms"));
}

#[test]
fn eh_check_on_free_sweedler_modules_passes() {
    let (code, out, err) = dgq(&["tetra", "eh-check"]);
    assert_eq!(code, 0, "{out}{err}");
    assert!(out.contains("rank=1024"), "{out}");
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let (code, out, err) = dgq(&["dg", "lambda", "--bogus"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("Usage:"), "{err}");
    let (code, out, _) = dgq(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("Exit status"));
}

#[test]
fn empty_report_is_a_header() {
    let r = Report::new("nothing");
    assert_eq!(r.emit(Format::Table), "== nothing\n");
    assert!(r.passed());
}

#[test]
fn json_reports_parse_back() {
    let mut r = Report::new("mixed");
    r.push(Check::new("holds", Verdict::Pass).number("rank", 12).number("dim", 12));
    r.push(Check::new("breaks", Verdict::Fail).details("1 ≠ 2"));
    r.push(Check::new("note", Verdict::Info).number("ratio", "-3/4"));
    assert!(!r.passed());
    let back: Report = serde_json::from_str(&r.emit(Format::Json)).unwrap();
    assert_eq!(back, r);
    let table = r.emit(Format::Table);
    assert!(table.lines().any(|l| l.starts_with("FAIL  breaks")), "{table}");
}

#[test]
fn a_failed_check_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let reg = write_example(dir.path(), "regular-tetramodule:z2");
    let (code, out, _) = dgq(&["tetra", "tensor", &reg, &reg]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("FAIL  dim = (dim B)²"), "{out}");
}

#[test]
fn output_is_deterministic() {
    let args = ["--format", "json", "--seed", "7", "gs", "cohomology", "z2", "--pmax", "2", "--qmax", "2", "--conjugate"];
    let (code, first, _) = dgq(&args);
    assert_eq!(code, 0, "{first}");
    let (_, second, _) = dgq(&args);
    assert_eq!(first, second);
    let r: Report = serde_json::from_str(&first).unwrap();
    assert!(r.checks.iter().any(|c| c.name == "invariant under change of basis"));
}

/// The exit-code contract over a corpus of commands.
#[test]
fn exit_codes_over_the_command_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let free = write_example(d, "free-tetramodule:sweedler");
    let dual = write_example(d, "dual-numbers");
    let two = write_example(d, "two-object");
    let mono = write_example(d, "trivial-monoidal");
    let sweedler = write_example(d, "sweedler");
    let missing = d.join("missing.json").to_str().unwrap().to_string();
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["hopf", "builtin", "z3"], 0),
        (vec!["hopf", "check", &sweedler], 0),
        (vec!["hopf", "check", &free], 2),
        (vec!["hopf", "check", &missing], 2),
        (vec!["hopf", "builtin", "nope"], 2),
        (vec!["tetra", "check", &free], 0),
        (vec!["tetra", "decompose", &free], 0),
        (vec!["tetra", "tensor", &free, &free], 0),
        (vec!["tetra", "exactness", &free], 0),
        (vec!["tetra", "exactness", &free, "--split", &free, &free], 0),
        (vec!["tetra", "eh-check", &free, &free], 2),
        (vec!["gs", "cohomology", "z2", "--oracle"], 0),
        (vec!["gs", "cohomology", &sweedler, "--pmax", "2", "--qmax", "2"], 0),
        (vec!["dg", "lambda", "--max", "3"], 0),
        (vec!["dg", "quotient"], 0),
        (vec!["dg", "quotient", &two, "--window", "-4:0"], 0),
        (vec!["dg", "quotient", "--window", "3:1"], 2),
        (vec!["dg", "psi-check"], 0),
        (vec!["nerve", "check", &dual, "--levels", "3"], 0),
        (vec!["nerve", "check", &two], 2),
        (vec!["pipeline", "run", &mono, "--nmax", "2"], 0),
        (vec!["example", "nope"], 2),
        (vec!["frobnicate"], 2),
    ];
    for (args, want) in cases {
        let (code, out, err) = dgq(&args);
        assert_eq!(code, want, "{args:?}\n{out}{err}");
        if want == 2 {
            assert!(!err.is_empty(), "{args:?}");
        }
    }
}

#[test]
fn marked_objects_are_checked() {
    let text = example("two-object").unwrap().to_json();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["marked"] = serde_json::json!([["Y", 3]]);
    let e = Document::parse(&v.to_string()).err().unwrap().to_string();
    assert!(e.contains("marked[0][1]"), "{e}");
    v["marked"] = serde_json::json!([["Z"]]);
    let Document::DgCategory(d) = Document::parse(&v.to_string()).unwrap() else { panic!() };
    let e = d.to_pcat().err().unwrap().to_string();
    assert!(e.contains("marked[0]") && e.contains("\"Z\""), "{e}");
}
