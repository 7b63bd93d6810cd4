//! One line per acceptance criterion, with its time budget. Runs without
//! the libtest harness so the lines always reach stdout.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use nullcone::verify::{name, run_criterion, VerifyConfig};

fn budget(id: u32) -> Duration {
    Duration::from_secs(match id {
        1 | 2 => 1,
        5 => 120,
        8 | 9 => 10,
        _ => 60,
    })
}

fn verify_all_output() -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_nullcone"))
        .args(["verify", "all", "--seed", "7"])
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("exit status {}", out.status));
    }
    Ok(out.stdout)
}

fn determinism() -> Result<String, String> {
    let a = verify_all_output()?;
    let b = verify_all_output()?;
    if a == b {
        Ok(format!("{} identical bytes", a.len()))
    } else {
        Err("outputs differ".into())
    }
}

fn main() -> ExitCode {
    let cfg = VerifyConfig::default();
    let mut failed = 0;
    for id in 1..=10 {
        let start = Instant::now();
        let (passed, detail) = if id == 10 {
            match determinism() {
                Ok(d) => (true, d),
                Err(e) => (false, e),
            }
        } else {
            let o = run_criterion(id, &cfg);
            (o.passed, o.detail)
        };
        let elapsed = start.elapsed();
        let in_time = id == 10 || elapsed <= budget(id);
        let ok = passed && in_time;
        if !ok {
            failed += 1;
        }
        let status = if ok { "PASS" } else { "FAIL" };
        let late = if in_time { String::new() } else { format!(" (over budget {:?})", budget(id)) };
        println!("criterion {id:>2} {status}  {}  [{:.3}s]{late}  {detail}", name(id), elapsed.as_secs_f64());
    }
    println!("acceptance: {}/10 passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
