//! Runs every identity suite with a fixed seed and prints a compact summary.

use dertorus::verify::{run_suites, RunConfig};

fn main() -> dertorus::Result<()> {
    let mut cfg = RunConfig::default();
    cfg.apply_text("d = 3\nseed = 11\ntrials = 30\nk_max = 3\nweights = 1, 0\nb = 5/7\nalpha = 1/3, 0, -1/2\n")?;
    let reports = run_suites(&cfg)?;
    for r in &reports {
        println!("{:?} {:>5}  {}", r.status, r.instances_checked, r.identity);
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    println!("{} groups, {failed} failed", reports.len());
    Ok(())
}
