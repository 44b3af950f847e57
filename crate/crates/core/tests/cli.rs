use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclomul"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn mul_direct_small() {
    let o = run(&[
        "mul", "--p", "2", "--n", "3", "--algo", "direct", "--a", "1,1,0", "--b", "1,0,1",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "0,1,1");
}

#[test]
fn mul_by_beta_shifts() {
    let o = run(&[
        "mul",
        "--n",
        "5",
        "--algo",
        "direct",
        "--a",
        "1,0,0,0,0",
        "--b",
        "0,1,0,0,0",
    ]);
    assert_eq!(stdout(&o).trim(), "0,1,0,0,0");
}

#[test]
fn mul_type_two_square_of_gamma() {
    let o = run(&[
        "mul",
        "--m",
        "3",
        "--algo",
        "onb2-eq29",
        "--a",
        "1,0,0",
        "--b",
        "1,0,0",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "0,1,0");
}

#[test]
fn every_algorithm_agrees_and_output_reparses() {
    let (a, b) = ("1,0,2,1,1,0,2", "2,2,0,1,0,1,1");
    let reference = stdout(&run(&[
        "mul", "--p", "3", "--n", "7", "--algo", "direct", "--a", a, "--b", b,
    ]));
    for algo in ["alg1", "alg2-ring", "general-ring0", "general-ring1"] {
        let o = run(&["mul", "--p", "3", "--n", "7", "--algo", algo, "--a", a, "--b", b]);
        assert_eq!(stdout(&o), reference, "{algo}");
    }
    let product = reference.trim();
    let again = run(&[
        "mul",
        "--p",
        "3",
        "--n",
        "7",
        "--algo",
        "direct",
        "--a",
        product,
        "--b",
        "1,0,0,0,0,0,0",
    ]);
    assert_eq!(stdout(&again).trim(), product);
}

#[test]
fn show_sqrt_prints_unpermuted_lanes() {
    let o = run(&[
        "mul",
        "--n",
        "7",
        "--algo",
        "alg1",
        "--a",
        "1,0,1,1,0,0,1",
        "--b",
        "0,1,1,0,1,0,0",
        "--show-sqrt",
    ]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with("sqrt: "));
}

#[test]
fn odd_dimension_error_is_reported() {
    let o = run(&[
        "mul", "--n", "4", "--algo", "alg1", "--a", "1,0,1,1", "--b", "0,1,1,0",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("odd dimension required"));
}

#[test]
fn parse_errors_name_the_flag() {
    let o = run(&[
        "mul", "--n", "3", "--algo", "direct", "--a", "1,0", "--b", "1,0,1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--a"));
    let o = run(&[
        "mul", "--n", "3", "--algo", "direct", "--a", "1,0,1", "--b", "1,2,1",
    ]);
    assert!(stderr(&o).contains("--b"));
    let o = run(&[
        "mul", "--n", "3", "--algo", "nope", "--a", "1,0,1", "--b", "1,0,1",
    ]);
    assert!(stderr(&o).contains("--algo"));
}

#[test]
fn unknown_flags_are_rejected() {
    let o = run(&["verify", "--frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_binary_exhaustive() {
    let o = run(&["verify", "--p", "2", "--max-n", "7", "--exhaustive"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 5);
}

#[test]
fn verify_ternary_sampled() {
    let o = run(&["verify", "--p", "3", "--max-n", "7", "--samples", "500"]);
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn verify_rejects_composite_p() {
    let o = run(&["verify", "--p", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("p must be prime"));
}

#[test]
fn count_reports_measured_operations() {
    let o = run(&["count", "--n", "7", "--algo", "direct"]);
    assert_eq!(stdout(&o).trim(), "direct: mult=49 doub=0 add=42 total=91");
    let o = run(&[
        "count",
        "--m",
        "3",
        "--algo",
        "onb2-eq29",
        "--output",
        "structured",
    ]);
    assert_eq!(
        stdout(&o).trim(),
        "algo=onb2-eq29 p=2 size=3 mult=9 doub=0 add=9 total=18"
    );
}

#[test]
fn table_structured_records_all_match() {
    let o = run(&["table", "table1", "--sizes", "3,5,7", "--output", "structured"]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 33);
    assert!(text.lines().all(|l| l.ends_with("match=true")));
}

#[test]
fn table_writes_to_file() {
    let path = std::env::temp_dir().join(format!("cyclomul-table6-{}.txt", std::process::id()));
    let o = run(&[
        "table",
        "table6",
        "--sizes",
        "4",
        "--out",
        path.to_str().unwrap(),
        "--output",
        "structured",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    let line = text
        .lines()
        .find(|l| l.contains("row_label=onb1-product-pairs "))
        .unwrap();
    assert!(line.contains("measured.mult=16 measured.doub=0 measured.add=15"));
}

#[test]
fn onb_scan_lists_bases() {
    let o = run(&["onb-scan", "--p", "2", "--max-m", "12", "--output", "structured"]);
    let text = stdout(&o);
    let listed = |k: u32| -> Vec<u32> {
        text.lines()
            .filter(|l| l.contains(&format!(" k={k} ")) && l.ends_with("onb=yes"))
            .map(|l| {
                l.split(' ')
                    .find_map(|t| t.strip_prefix("m="))
                    .unwrap()
                    .parse()
                    .unwrap()
            })
            .collect()
    };
    assert_eq!(listed(1), vec![2, 4, 10, 12]);
    assert_eq!(listed(2), vec![2, 3, 5, 6, 9, 11]);
    let text_mode = stdout(&run(&["onb-scan", "--max-m", "4"]));
    assert!(text_mode.contains("m=3 k=1: n=4 not prime"));
    assert!(text_mode.contains("m=4 k=1: ONB-I exists (n=5)"));
    assert!(text_mode.contains("m=3 k=2: ONB-II exists (n=7)"));
}
