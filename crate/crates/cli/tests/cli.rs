use std::process::{Command, Output};

fn qpdmm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qpdmm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run(line: &str) -> Output {
    run_with(line, &[])
}

/// `line` split on whitespace, then `extra` appended verbatim.
fn run_with(line: &str, extra: &[&str]) -> Output {
    let mut args: Vec<&str> = line.split_whitespace().collect();
    args.extend(extra);
    qpdmm(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn construct_gasp() {
    let o = run("construct gasp -K 2 -L 2 -T 3 -r 2");
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("\nN=13\n"), "{out}");
    assert!(out.contains("feasible=yes"));
    assert!(out.contains("decodable=yes"));
    assert!(out.contains("UL: 0 1 2 3\n"));
}

#[test]
fn construct_cat_and_square() {
    let out = stdout(&run("construct cat -K 2 -L 2 -T 2"));
    assert!(out.contains("sums taken mod q=10"));
    assert!(out.contains("\nN=10\n"));
    assert!(out.contains("alpha: 0 3 6 7\n"));

    let out = stdout(&run("construct qf-square -n 2"));
    assert!(out.contains("\nN=39\n"));
}

#[test]
fn exported_plan_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("plan.txt");
    let p = path.to_str().unwrap();
    let o = run_with("construct qf-klt -K 3 -T 2 --export", &[p]);
    assert_eq!(code(&o), 0);
    let record = std::fs::read_to_string(&path).unwrap();
    assert!(record.starts_with("qf-klt 3 2 2 |"));

    let o = run_with("simulate --mode quantum --plan", &[p]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("R=4/5"));

    let o = run_with("construct cat --plan", &[p]);
    assert_eq!(code(&o), 2);
}

#[test]
fn simulate_quantum_gasp() {
    let dir = tempfile::tempdir().unwrap();
    let t1 = dir.path().join("a.txt");
    let t2 = dir.path().join("b.txt");
    for t in [&t1, &t2] {
        let o = run_with(
            "simulate gasp -K 2 -L 2 -T 3 --mode quantum --seed 7 --transcript",
            &[t.to_str().unwrap()],
        );
        assert_eq!(code(&o), 0);
        let out = stdout(&o);
        assert!(out.contains("decode OK"));
        assert!(out.contains("privacy audit PASS (286 subsets, exhaustive)"));
        assert!(out.contains("R=8/13"));
    }
    assert_eq!(std::fs::read(&t1).unwrap(), std::fs::read(&t2).unwrap());
}

#[test]
fn simulate_cat_and_blocks() {
    let o = run("simulate cat -K 2 -L 2 -T 2 --mode quantum");
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("R=4/5"));
    assert!(stdout(&o).contains("field p=11, N=10"));

    let o = run("simulate low-privacy -K 4 -L 4 -T 3 --dims 8,3,4 --prime 50");
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("field p=53"));
}

#[test]
fn infeasible_quantum_run_is_an_error() {
    let o = run("simulate gasp -K 2 -L 2 -T 1 --mode quantum");
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not feasible"));

    let o = run("feasibility gasp -K 2 -L 2 -T 1");
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("feasible=no"));
    let o = run("feasibility gasp -K 2 -L 2 -T 3");
    assert_eq!(code(&o), 0);
}

#[test]
fn usage_errors() {
    assert_eq!(code(&run("construct gasp -K 2")), 2);
    assert_eq!(code(&run("construct nope")), 2);
    assert_eq!(code(&run("simulate gasp -K 2 -L 2 -T 3 --dims 3,1")), 2);
    assert_eq!(code(&run("simulate gasp -K 2 -L 2 -T 3 --dims 3,1,2")), 2);
    assert_eq!(code(&run("sweep qf-klt -K 5:3")), 2);
}

#[test]
fn klt_sweep() {
    let o = run("sweep qf-klt -K 3:8 -T 2");
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(!out.contains('\r'));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines[0],
        "family,K,L,T,N_classical,N_quantum,R_C,R_Q,ratio,ratio_decimal"
    );
    assert_eq!(lines.len(), 7);
    assert_eq!(lines[1], "qf-klt,3,2,2,14,15,3/7,4/5,28/15,1.866667");
    assert!(lines[4].ends_with(",46/27,1.703704"));
    assert_eq!(stdout(&run("sweep qf-klt -K 3:8 -T 2")), out);
}

#[test]
fn square_sweep_matches_closed_form() {
    let out = stdout(&run("sweep qf-square -n 2:5"));
    for (line, n) in out.lines().skip(1).zip(2u64..) {
        let ratio = line.split(',').nth(8).unwrap();
        let (num, den) = ratio.split_once('/').unwrap();
        let (num, den): (u64, u64) = (num.parse().unwrap(), den.parse().unwrap());
        let want_num = 2 * n.pow(4) + 4 * n.pow(3) + 4 * n * n - 2 * n - 4;
        let want_den = 2 * n.pow(4) + 2 * n * n - 1;
        assert_eq!(num * want_den, den * want_num, "n={n}");
    }
}

#[test]
fn low_privacy_gain_is_bounded() {
    let out = stdout(&run("sweep low-privacy -K 4:10 -T 2"));
    let ratios: Vec<f64> = out
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(ratios.len(), 7);
    assert!(ratios.iter().all(|&r| r > 1.0 && r <= 1.5));
    assert!(ratios.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn feasibility_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig.csv");
    let o = run_with("sweep feasibility -K 2:6 --out", &[path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "K,L,T_min_bruteforce,T_hat,delta");
    assert_eq!(lines[1], "2,2,3,2.770000,0.230000");
    let t: Vec<u64> = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    assert!(t.windows(2).all(|w| w[0] <= w[1]));
}
