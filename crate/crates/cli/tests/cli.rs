use std::path::PathBuf;
use std::process::{Command, Output};

fn zgraded(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zgraded"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const ALG: &str = "algebra n=2 gens 01*1 10*1 11*1 cap=3";

#[test]
fn dim_of_gl0() {
    let o = zgraded(&["dim", "1|1,1,1", "1|1,1,1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "4|4,4,4\n");
}

#[test]
fn invert_super_example() {
    let o = zgraded(&["invert", &data("super_inverse.txt")]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        "algebra n=1 gens 1*2 cap=2\nmatrix deg=0 rows=1|1 cols=1|1\n1 + 11 12; -11\n-12; 1 - 11 12\n"
    );
}

#[test]
fn invert_soul_diagonal_is_a_domain_error() {
    let o = zgraded(&["invert", &data("soul_diagonal.txt")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("NotInvertible"));
    assert!(stdout(&o).is_empty());
}

#[test]
fn misplaced_entry_is_a_located_parse_error() {
    let o = zgraded(&["invert", &data("bad_degree.txt")]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("DegreeViolation") && err.contains("3:5"), "{err}");
}

#[test]
fn parity_violation_exits_with_parse_code() {
    let o = zgraded(&["mul", "--algebra", ALG, "011^2", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("ParityViolation"));
}

#[test]
fn element_product() {
    let o = zgraded(&["mul", "--algebra", ALG, "2 + 111^2", "011 101"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "2 011 101\n");
}

#[test]
fn matrix_product_of_inverse_pair_is_identity() {
    let inv = zgraded(&["invert", &data("super_inverse.txt")]);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("inv.txt");
    std::fs::write(&path, inv.stdout).unwrap();
    let o = zgraded(&["mul", &data("super_inverse.txt"), path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).ends_with("1; 0\n0; 1\n"), "{}", stdout(&o));
}

#[test]
fn eval_square_morphism() {
    let o = zgraded(&["eval", &data("square.txt"), &data("super_point.txt")]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).ends_with("point shape=1|1\n1 + 2 11 12\n11\n"));
}

#[test]
fn compose_and_act() {
    let o = zgraded(&["compose", &data("square.txt"), &data("square.txt")]);
    assert_eq!(stdout(&o), "morphism src=1|1 tgt=1|1 cap=2\ny1 <- x1^4\n11 <- x1^3 11\n");
    let o = zgraded(&["act", &data("super_inverse.txt"), &data("super_point.txt")]);
    assert!(stdout(&o).ends_with("1 + 2 11 12\n2 11\n"), "{}", stdout(&o));
}

#[test]
fn check_invertible_reports_all_criteria() {
    let o = zgraded(&["check-invertible", &data("soul_diagonal.txt")]);
    assert_eq!(
        stdout(&o),
        "diagonal bodies false\ndiagonal blocks over Lambda false\nbody matrix false\n"
    );
}

#[test]
fn check_action_canonical_and_corrupted() {
    let dir = tempfile::tempdir().unwrap();
    let witness = dir.path().join("w.txt");
    let w = witness.to_str().unwrap();
    let alg = "algebra n=2 gens 01*1 10*1 11*1 cap=2";
    let base = ["check-action", alg, "--shape", "1|1,1,1", "--samples", "100", "--witness", w];
    let o = zgraded(&base);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "identity ok\ncompatibility ok\nadditivity ok\nscaling ok\n");
    assert!(!witness.exists());

    let mut corrupt = base.to_vec();
    corrupt.extend(["--sigma", "corrupt"]);
    let o = zgraded(&corrupt);
    assert!(stdout(&o).contains("scaling FAIL"));
    assert!(std::fs::read_to_string(&witness).unwrap().contains("axiom"));
}

#[test]
fn output_is_deterministic() {
    let args = ["check-action", ALG, "--shape", "1|0,1,1", "--samples", "30", "--seed", "9"];
    assert_eq!(zgraded(&args).stdout, zgraded(&args).stdout);
}

#[test]
fn basis_of_degree_two() {
    let o = zgraded(&["basis", ALG, "2"]);
    assert_eq!(stdout(&o), "b011.b101\nb011.b111\nb101.b111\nb111.b111\n");
}

#[test]
fn missing_file_exits_with_parse_code() {
    let o = zgraded(&["invert", "/nonexistent/matrix.txt"]);
    assert_eq!(o.status.code(), Some(2));
}
