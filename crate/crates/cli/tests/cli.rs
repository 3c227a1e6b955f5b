use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use inplace_tft::RingConfig;
use inplace_tft_cli::{cmd_bench, cmd_itft, cmd_tft, RingOverrides, BENCH_HEADER};
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tft"))
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&Path]) -> Output {
    bin().args(args).output().unwrap()
}

fn p(s: &str) -> &Path {
    Path::new(s)
}

#[test]
fn forward_and_inverse_files() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "in.txt", "p 17\n1\n1\n1\n");
    let fwd = dir.path().join("fwd.txt");
    let back = dir.path().join("back.txt");

    let out = run(&[p("tft"), &input, &fwd]);
    assert!(out.status.success(), "{out:?}");
    assert_eq!(fs::read_to_string(&fwd).unwrap(), "p 17\n3\n1\n13\n");

    let out = run(&[p("itft"), &fwd, &back]);
    assert!(out.status.success(), "{out:?}");
    assert_eq!(fs::read_to_string(&back).unwrap(), "p 17\n1\n1\n1\n");
}

#[test]
fn single_coefficient_is_unchanged() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "in.txt", "p 998244353\n42\n");
    let out_path = dir.path().join("out.txt");
    assert!(run(&[p("tft"), &input, &out_path]).status.success());
    assert_eq!(fs::read_to_string(&out_path).unwrap(), "p 998244353\n42\n");
}

#[test]
fn products() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.txt", "p 17\n2\n3\n");
    let b = write(&dir, "b.txt", "p 17\n4\n5\n6\n");
    let out_path = dir.path().join("c.txt");
    let out = run(&[p("multiply"), &a, &b, &out_path]);
    assert!(out.status.success(), "{out:?}");
    assert_eq!(
        fs::read_to_string(&out_path).unwrap(),
        "p 17\n8\n5\n10\n1\n"
    );

    let a = write(&dir, "a.txt", "p 17\n1\n1\n");
    assert!(run(&[p("multiply"), &a, &a, &out_path]).status.success());
    assert_eq!(fs::read_to_string(&out_path).unwrap(), "p 17\n1\n2\n1\n");
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let out_path = dir.path().join("out.txt");

    let unreduced = write(&dir, "bad.txt", "p 17\n17\n");
    assert_eq!(
        run(&[p("tft"), &unreduced, &out_path]).status.code(),
        Some(2)
    );

    let garbage = write(&dir, "garbage.txt", "hello\n");
    assert_eq!(
        run(&[p("itft"), &garbage, &out_path]).status.code(),
        Some(2)
    );

    let composite = write(&dir, "composite.txt", "p 15\n1\n");
    assert_eq!(
        run(&[p("tft"), &composite, &out_path]).status.code(),
        Some(3)
    );

    let bad_root = write(&dir, "root.txt", "p 17\nw 2 4\n1\n");
    assert_eq!(
        run(&[p("tft"), &bad_root, &out_path]).status.code(),
        Some(3)
    );

    let a = write(&dir, "a.txt", "p 17\n1\n");
    let b = write(&dir, "b.txt", "p 97\n1\n");
    assert_eq!(
        run(&[p("multiply"), &a, &b, &out_path]).status.code(),
        Some(3)
    );

    // 17 allows lengths up to 16
    let long: String = std::iter::once("p 17\n".to_string())
        .chain((0..17).map(|i| format!("{}\n", i % 17)))
        .collect();
    let long = write(&dir, "long.txt", &long);
    assert_eq!(run(&[p("tft"), &long, &out_path]).status.code(), Some(4));
}

#[test]
fn flags_override_header() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "in.txt", "p 998244353\n1\n1\n1\n");
    let out_path = dir.path().join("out.txt");
    let out = bin()
        .args(["--modulus", "17", "--root", "3", "--k", "4", "tft"])
        .arg(&input)
        .arg(&out_path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    assert_eq!(
        fs::read_to_string(&out_path).unwrap(),
        "p 17\nw 3 4\n3\n1\n13\n"
    );
}

#[test]
fn file_round_trip_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let cfg = RingConfig::ntt_default();
    let none = RingOverrides::default();
    let (src, mid, back) = (
        dir.path().join("src"),
        dir.path().join("mid"),
        dir.path().join("back"),
    );
    let mut state = 0x9e37_79b9_7f4a_7c15u64;
    for n in 1..=512usize {
        let mut text = String::from("p 998244353\n");
        if n % 3 == 0 {
            text.push_str(&format!("w {} {}\n", cfg.top_root(), cfg.max_level()));
        }
        for _ in 0..n {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            text.push_str(&format!("{}\n", (state >> 33) % cfg.modulus()));
        }
        fs::write(&src, &text).unwrap();
        cmd_tft(&src, &mid, none).unwrap();
        cmd_itft(&mid, &back, none).unwrap();
        assert_eq!(fs::read_to_string(&back).unwrap(), text, "n = {n}");
    }
}

#[test]
fn bench_csv() {
    let cfg = RingConfig::ntt_default();
    let mut first = Vec::new();
    cmd_bench(&cfg, 1, 40, 1, &mut first).unwrap();
    let text = String::from_utf8(first).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(BENCH_HEADER));
    let rows: Vec<Vec<u64>> = lines
        .map(|l| l.split(',').map(|f| f.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 40);
    for row in &rows {
        let (n, tft, fft) = (row[0], row[1], row[2]);
        if n.is_power_of_two() {
            assert_eq!(tft, fft, "n = {n}");
        }
        if n > 16 && (n - 1).is_power_of_two() {
            assert!(tft < fft, "n = {n}");
        }
    }

    // count columns are deterministic
    let mut second = Vec::new();
    cmd_bench(&cfg, 1, 40, 1, &mut second).unwrap();
    let counts = |t: &str| -> Vec<String> {
        t.lines()
            .map(|l| l.split(',').take(3).collect::<Vec<_>>().join(","))
            .collect()
    };
    assert_eq!(counts(&text), counts(&String::from_utf8(second).unwrap()));

    let mut sink = Vec::new();
    assert!(cmd_bench(&cfg, 0, 4, 1, &mut sink).is_err());
    assert!(cmd_bench(&RingConfig::new(17, 3, 4).unwrap(), 1, 17, 1, &mut sink).is_err());
}

#[test]
fn bench_binary() {
    let out = bin()
        .args(["bench", "--nmin", "30", "--nmax", "34", "--trials", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 6);
    assert!(text.starts_with(BENCH_HEADER));
}

#[test]
fn selftest_binary() {
    let out = bin().args(["selftest"]).output().unwrap();
    assert!(out.status.success(), "{out:?}");

    let out = bin()
        .args(["selftest", "--seed", "99", "--corrupt-root-level", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("seed 99"), "{err}");
}
