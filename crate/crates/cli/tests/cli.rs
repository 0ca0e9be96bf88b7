use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dicke-ent"))
        .args(args)
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn rows(csv: &[u8]) -> Vec<Vec<String>> {
    String::from_utf8_lossy(csv)
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn e_of(row: &[String]) -> f64 {
    row[7].parse().unwrap()
}

#[test]
fn sweep_xi_reproduces_table_points() {
    let out = run(&["sweep-xi", "--n", "100", "--m", "10,50", "--xi", "0,2"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with(
        "n_atoms,two_m,xi,var_xp,var_yp,corr_x,corr_y,e_param,xi_rx,xi_ry,mean_spin_mag\n"
    ));
    let rows = rows(&out.stdout);
    assert_eq!(rows.len(), 4);
    assert_eq!((rows[0][0].as_str(), rows[0][1].as_str()), ("100", "20"));
    assert!((e_of(&rows[0]) - 1_440_000.0).abs() < 1e-6);
    assert_eq!(rows[3][1], "100");
    assert!(e_of(&rows[3]).abs() < 1e-6);
}

#[test]
fn csv_fields_round_trip_with_seventeen_digits() {
    let out = run(&["sweep-xi", "--n", "51", "--m", "3/2", "--xi", "0.37"]);
    let row = &rows(&out.stdout)[0];
    for field in &row[2..] {
        let mantissa = field.split('e').next().unwrap().replace(['-', '.'], "");
        assert_eq!(mantissa.len(), 17, "{field}");
        let v: f64 = field.parse().unwrap();
        assert_eq!(&format!("{v:.16e}"), field);
    }
}

#[test]
fn sweep_n_follows_parity_and_ordering() {
    let out = run(&["sweep-n", "--m", "1", "--xi", "0.8,1.0", "--n", "2:20"]);
    assert_eq!(code(&out), 0);
    let rows = rows(&out.stdout);
    assert_eq!(rows.len(), 20);
    assert!(rows.iter().all(|r| r[0].parse::<u32>().unwrap() % 2 == 0));
    assert!(e_of(&rows[0]).abs() < 1e-10);
    for i in 0..10 {
        assert!(e_of(&rows[i]) >= e_of(&rows[i + 10]));
    }
}

#[test]
fn invalid_labels_are_skipped_with_warning() {
    let out = run(&["sweep-xi", "--n", "4", "--m", "1,1/2,3", "--xi", "0.5"]);
    assert_eq!(code(&out), 0);
    assert_eq!(rows(&out.stdout).len(), 1);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("skipping m=1/2") && err.contains("skipping m=3"));
}

#[test]
fn degenerate_points_exit_three_unless_skipped() {
    let out = run(&["sweep-xi", "--n", "4", "--m", "0", "--xi", "0,0.5"]);
    assert_eq!(code(&out), 3);
    let out = run(&[
        "sweep-xi",
        "--n",
        "4",
        "--m",
        "0",
        "--xi",
        "0,0.5",
        "--skip-degenerate",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(rows(&out.stdout).len(), 1);
    assert_eq!(
        code(&run(&["report", "--n", "100", "--m", "0", "--xi", "0"])),
        3
    );
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&["sweep-xi", "--xi", "0:1:0"])), 2);
    assert_eq!(code(&run(&["sweep-xi", "--n", "zero"])), 2);
    assert_eq!(
        code(&run(&["report", "--n", "100", "--m", "7/2", "--xi", "0"])),
        2
    );
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["oracle-check", "--max-n", "5"])), 2);
}

#[test]
fn all_modes_agree() {
    let base = [
        "sweep-xi",
        "--n",
        "10",
        "--m",
        "all",
        "--xi",
        "0.1,1",
        "--skip-degenerate",
    ];
    let closed = run(&base);
    let oracle = run(&[&base[..], &["--oracle"]].concat());
    let both = run(&[&base[..], &["--mode", "both"]].concat());
    assert_eq!(code(&closed), 0);
    assert_eq!(code(&oracle), 0);
    assert_eq!(code(&both), 0);
    assert_eq!(closed.stdout, both.stdout);
    for (a, b) in rows(&closed.stdout).iter().zip(rows(&oracle.stdout)) {
        let (x, y) = (e_of(a), e_of(&b));
        assert!((x - y).abs() <= 1e-8 * y.abs().max(1e-2));
    }
}

#[test]
fn config_file_and_output_path() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("fig1.csv");
    let cfg = dir.path().join("fig1.conf");
    std::fs::write(
        &cfg,
        format!(
            "n = 100\nm = 10,40\nxi = 0:0.1:0.05\nout = {}\n",
            csv.display()
        ),
    )
    .unwrap();
    let out = run(&["sweep-xi", "--config", cfg.to_str().unwrap(), "--jobs", "2"]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    assert_eq!(rows(&std::fs::read(&csv).unwrap()).len(), 6);
}

#[test]
fn report_prints_both_paths() {
    let out = run(&[
        "report", "--n", "100", "--m", "40", "--xi", "0.01", "--oracle",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("[closed form]") && text.contains("[dense oracle]"));
    assert!(text.contains("spin squeezed no"));
    let last = text.lines().last().unwrap();
    assert!(last.starts_with("n_atoms=100 two_m=80 xi=1.0000000000000000e-2"));
    let d: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("max relative discrepancy "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(d < 1e-8);
}

#[test]
fn table1_check_passes() {
    let out = run(&["table1", "--check"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("19162.98") && text.contains("1470.50"));
}

#[test]
fn oracle_check_passes_and_detects_injected_fault() {
    let out = run(&["oracle-check", "--max-n", "2"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("product N=2") && !text.contains("product N=3"));
    let out = run(&["oracle-check", "--max-n", "2", "--inject-fault"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn oracle_check_default_run() {
    let out = run(&["oracle-check"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).contains("product N=4"));
}

#[test]
fn plot_scripts_reference_the_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("fig3.csv");
    let out = run(&[
        "sweep-xi",
        "--m",
        "40",
        "--xi",
        "0:0.2:0.01",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let script = dir.path().join("fig3.gp");
    let out = run(&[
        "plot",
        "--style",
        "fig3",
        "--csv",
        csv.to_str().unwrap(),
        "--out",
        script.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&script).unwrap();
    assert!(text.contains(&format!("'{}'", csv.display())));
    assert!(text.contains("Var-Jx") && text.contains("Var-Jy"));
    for style in ["fig1", "fig2"] {
        let out = run(&["plot", "--style", style, "--csv", csv.to_str().unwrap()]);
        assert_eq!(code(&out), 0);
        assert!(String::from_utf8_lossy(&out.stdout).contains("plot '"));
    }
}

#[test]
fn plot_without_csv_exits_two() {
    let missing = Path::new("/nonexistent/sweep.csv");
    assert_eq!(
        code(&run(&[
            "plot",
            "--style",
            "fig1",
            "--csv",
            missing.to_str().unwrap()
        ])),
        2
    );
}
