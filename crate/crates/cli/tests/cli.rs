use gasym::polynomial::parse_poly;
use gasym::spacecurve::{analyze_curve, Method, PipelineOptions};
use gasym_cli::doc::{self, Document};
use std::process::{Command, Output};

const E1: [&str; 2] = ["-x3^2 + 2*x1*x2 + x1*x3 - x2 + 2", "x3 - x1*x2 + x2^2"];
const E2: [&str; 2] = [
    "x1*x2^4 - x2^5 - 2*x1^2*x2^2 + 4*x1*x2^3 - 2*x2^4 + x1^3 - 3*x1^2*x2 + 3*x1*x2^2 - x2^3 - 4*x1*x2 + 4*x2^2 - 1",
    "x1^2*x2 + 2*x1*x2*x3 - x2^2*x3 + x2^2 + x1 - x2 + x3",
];
const CONJ: [&str; 2] = ["2*x1^3 + x1*x3^2 + x3^3 + 4*x3", "-x1^2 - x3^2 + x2"];

fn gasym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gasym"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn with_curve(cmd: &str, curve: [&str; 2], extra: &[&str]) -> Output {
    let mut args = vec![cmd, "--f1", curve[0], "--f2", curve[1]];
    args.extend_from_slice(extra);
    gasym(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn project_prints_lift_function() {
    let o = with_curve("project", E1, &[]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("h1 = x1*x2 - x2^2, h2 = 1"), "{out}");
    assert!(
        out.contains("projection fp = x1^2*x2^2 - 2*x1*x2^3 + x2^4"),
        "{out}"
    );
    assert!(out.contains("coordinate change: none"));
}

#[test]
fn parse_errors_carry_position() {
    let o = with_curve("project", ["x1*x2 + ", "x3"], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1, column 9"), "{}", stderr(&o));

    let dir = std::env::temp_dir().join(format!("gasym-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.txt");
    std::fs::write(&path, "# curve\nx1 - x3\n\nx2 + * x3\n").unwrap();
    let o = gasym(&["project", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4, column 6"), "{}", stderr(&o));
}

#[test]
fn input_file_with_comments() {
    let dir = std::env::temp_dir().join(format!("gasym-cli-in-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("e1.txt");
    std::fs::write(
        &path,
        format!("# first example\n{}  # f1\n\n{}\n", E1[0], E1[1]),
    )
    .unwrap();
    let from_file = gasym(&[
        "asymptotes",
        "--input",
        path.to_str().unwrap(),
        "--deterministic",
    ]);
    let from_flags = with_curve("asymptotes", E1, &["--deterministic"]);
    assert!(from_file.status.success());
    assert_eq!(stdout(&from_file), stdout(&from_flags));
}

#[test]
fn common_factor_is_not_a_curve() {
    let o = with_curve("project", ["x1*x3 - x1*x2", "x1*x3"], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("not a curve"), "{}", stderr(&o));
}

#[test]
fn invalid_samples_are_rejected() {
    for s in ["10,5", "0,5", "-1", "ten"] {
        let o = with_curve("asymptotes", E1, &["--samples", s]);
        assert_eq!(o.status.code(), Some(2), "{s}");
    }
}

#[test]
fn branches_to_depth_zero() {
    let o = with_curve("branches", E1, &["--depth", "0"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let series: Vec<&str> = out
        .lines()
        .filter(|l| l.trim_start().starts_with("r2 =") || l.trim_start().starts_with("r3 ="))
        .collect();
    assert_eq!(series.len(), 8);
    for l in series {
        let known = l.split("O(").next().unwrap();
        assert!(!known.contains("z^{-"), "{l}");
    }
    assert!(out.contains("r2 = z - 2 + O(z^{-1})"), "{out}");
    assert!(out.contains("r3 = 2*z - 5/3 + O(z^{-1})"), "{out}");
}

#[test]
fn branches_show_fractional_exponents() {
    let o = with_curve("branches", E2, &["--depth", "0"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("r2 = z^{1/2} - 1/2 + O(z^{-1/4})"), "{out}");
    assert!(out.contains("ramification 4, degree 2"), "{out}");
}

#[test]
fn both_methods_agree_on_first_example() {
    let o = with_curve("asymptotes", E1, &["--method", "both"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "methods agree"));
    for a in [
        "(t, t - 2, 2*t - 5/3)",
        "(t, t + 1, -t - 1/3)",
        "(t, 0, 0)",
        "(t, 1, t + 2)",
    ] {
        assert!(out.contains(a), "{a} missing in {out}");
    }
    assert!(!out.contains("FAIL"));
}

#[test]
fn second_example_reports_repair() {
    let o = with_curve("asymptotes", E2, &["--method", "basic"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("(t^2, t - 1/2, -1/2*t^2 - 1/4*t)"), "{out}");
    assert!(out.contains("reparametrized from t^4"), "{out}");
}

#[test]
fn conjugate_example_has_implicit_pair() {
    let o = with_curve("asymptotes", CONJ, &[]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("where λ^3 - 4*λ^2 + λ - 2 = 0"), "{out}");
    assert!(
        out.contains("λ*t^2 + (4/29*λ^2 - 36/29*λ - 48/29)"),
        "{out}"
    );
    assert!(out.contains("g1 = 58*x1^6 - 29*x1^4*x2"), "{out}");
    assert!(out.contains("g2 = "));
}

#[test]
fn structured_output_round_trips() {
    for curve in [E1, E2, CONJ] {
        let o = with_curve(
            "asymptotes",
            curve,
            &["--format", "structured", "--deterministic"],
        );
        assert!(o.status.success());
        let text = stdout(&o);
        let d: Document = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&d).unwrap() + "\n", text);
        assert!(d.checks.iter().all(|c| c.passed));

        let vars = ["x1", "x2", "x3"];
        let (f1, f2) = (
            parse_poly(curve[0], &vars).unwrap(),
            parse_poly(curve[1], &vars).unwrap(),
        );
        let opts = PipelineOptions {
            parallel: false,
            ..PipelineOptions::default()
        };
        let lib = analyze_curve(&f1, &f2, Method::Improved, &opts).unwrap();
        let parsed: Vec<_> = d
            .asymptotes
            .iter()
            .map(|a| doc::asymptote_value(a).unwrap())
            .collect();
        let expected: Vec<_> = lib.asymptotes.iter().map(|e| e.asymptote.clone()).collect();
        assert_eq!(parsed, expected);
    }
}

#[test]
fn structured_output_is_deterministic() {
    let a = with_curve(
        "branches",
        E2,
        &["--format", "structured", "--deterministic"],
    );
    let b = with_curve("branches", E2, &["--format", "structured"]);
    assert_eq!(stdout(&a), stdout(&b));
}

fn rows(out: &str) -> Vec<Vec<String>> {
    out.lines()
        .skip(1)
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(',').map(String::from).collect())
        .collect()
}

#[test]
fn plot_samples_of_first_example() {
    let o = with_curve("plotdata", E1, &["--samples", "5,10,50"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(
        out.lines().next(),
        Some("object,z,x1,x2,x3,dist_to_asymptote")
    );
    let rs = rows(&out);
    for i in 1..=4 {
        let branch: Vec<&Vec<String>> =
            rs.iter().filter(|r| r[0] == format!("branch{i}")).collect();
        let asym = rs
            .iter()
            .filter(|r| r[0] == format!("asymptote{i}"))
            .count();
        assert_eq!(branch.len(), 6);
        assert_eq!(asym, 6);
    }
}

#[test]
fn plot_distances_decrease() {
    let o = with_curve("plotdata", E1, &["--samples", "10,50,100"]);
    let rs = rows(&stdout(&o));
    for i in 1..=4 {
        let branch: Vec<&Vec<String>> =
            rs.iter().filter(|r| r[0] == format!("branch{i}")).collect();
        for sign in ["", "-"] {
            let d: Vec<f64> = branch
                .iter()
                .filter(|r| r[1].starts_with('-') == (sign == "-"))
                .map(|r| r[5].parse().unwrap())
                .collect();
            assert_eq!(d.len(), 3);
            assert!(d.windows(2).all(|w| w[1] < w[0]), "{d:?}");
        }
    }
}

#[test]
fn plot_header_only_for_no_samples() {
    let o = with_curve("plotdata", E1, &["--samples", ""]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "object,z,x1,x2,x3,dist_to_asymptote\n");
}

#[test]
fn plot_counts_non_real_points() {
    let o = with_curve("plotdata", CONJ, &["--samples", "5,10,50"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(
        out.lines().last().unwrap().starts_with("# skipped "),
        "{out}"
    );
    assert_eq!(rows(&out).len(), 12);
}

#[test]
fn plot_writes_to_file() {
    let dir = std::env::temp_dir().join(format!("gasym-cli-plot-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("e2.csv");
    let o = with_curve(
        "plotdata",
        E2,
        &["--output", path.to_str().unwrap(), "--precision", "6"],
    );
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("object,z,x1,x2,x3,dist_to_asymptote\n"));
    assert!(rows(&text).iter().all(|r| r.len() == 6));
}
