//! Runs the relation suite (no theorem checks) for one configuration.
//!
//! `cargo run --release --example relations -- 2 2,1`

use toroidal::verify::{run_suite, Status, SuiteConfig};

fn main() -> toroidal::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let n: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let r: Vec<usize> = args
        .get(2)
        .map(|s| s.split(',').filter_map(|x| x.parse().ok()).collect())
        .unwrap_or_else(|| vec![1; n]);
    let mut config = SuiteConfig::new(n, r);
    config.max_boxes = 3;
    config.theorem = false;
    let report = run_suite(&config)?;
    for c in &report.checks {
        let mark = if c.status == Status::Pass { "ok  " } else { "FAIL" };
        println!("{} seed {} {:16} {:24} {} comparisons", mark, c.seed, c.name, c.params, c.compared);
    }
    println!("all pass: {}", report.all_pass);
    Ok(())
}
