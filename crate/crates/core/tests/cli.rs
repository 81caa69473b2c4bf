use std::process::{Command, Output};

fn caputo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_caputo")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn order_table_csv_has_header_and_rows() {
    let o = caputo(&["order-table", "--table", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("scheme,alpha,m,beta,xi,tau,measured_R,theoretical_order,error"));
    let rows: Vec<&str> = lines.collect();
    assert!(!rows.is_empty());
    for row in &rows {
        assert_eq!(row.split(',').count(), 9, "{row}");
        assert!(row.starts_with("Lk3,"), "{row}");
    }
}

#[test]
fn order_table_is_deterministic() {
    let a = caputo(&["order-table", "--table", "2", "--format", "markdown"]);
    let b = caputo(&["order-table", "--table", "2", "--format", "markdown"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn markdown_dashes_blank_cells() {
    let o = caputo(&["order-table", "--table", "1", "--format", "markdown"]);
    let text = stdout(&o);
    assert!(text.starts_with("| alpha \\ m+beta |"));
    // m+beta = 0.2 is below every alpha except 0.1
    let row = text.lines().find(|l| l.starts_with("| 0.5 |")).unwrap();
    assert!(row.contains(" - "), "{row}");
}

#[test]
fn order_table_writes_file() {
    let path = std::env::temp_dir().join(format!("caputo-cli-{}.csv", std::process::id()));
    let o = caputo(&["order-table", "--table", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(text.lines().count(), 19);
}

#[test]
fn order_reports_measured_and_expected() {
    let o = caputo(&["order", "--scheme", "l1", "--alpha", "0.5", "--m", "0", "--beta", "0.8"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let r: f64 = text.split("R=").nth(1).unwrap().split_whitespace().next().unwrap().parse().unwrap();
    assert!((r - 0.3).abs() < 0.05, "{text}");
    assert!(text.contains("expected=0.3000"));
}

#[test]
fn order_lk_needs_k() {
    let o = caputo(&["order", "--scheme", "lk", "--alpha", "0.5", "--m", "1", "--beta", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
    let o = caputo(&["order", "--scheme", "lk", "--k", "7", "--alpha", "0.5", "--m", "1", "--beta", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn domain_errors_exit_two() {
    for args in [
        &["order", "--scheme", "l2", "--alpha", "1.5", "--m", "1", "--beta", "0.5"][..],
        &["order", "--scheme", "l2", "--alpha", "0.5", "--m", "1", "--beta", "0"][..],
        &["order-table", "--table", "5"][..],
        &["first-node", "--scheme", "l1", "--alpha", "0.5", "--beta", "0.5"][..],
        &["no-such-command"][..],
    ] {
        let o = caputo(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn first_node_prints_protocol_and_own_order() {
    let o = caputo(&["first-node", "--scheme", "l12", "--alpha", "0.5", "--beta", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("R_t1="), "{text}");
    assert!(text.contains("expected=1.5000"), "{text}");
}

#[test]
fn verify_passes() {
    let o = caputo(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));
}
