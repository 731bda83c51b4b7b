//! The n = 1 experiment: which checks fail under each reading of ζ.

use toroidal::verify::{run_n1_experiment, SuiteConfig};

fn main() -> toroidal::Result<()> {
    let mut config = SuiteConfig::new(1, vec![2]);
    config.max_boxes = 3;
    config.period_window = 2;
    config.seeds = vec![1];
    let exp = run_n1_experiment(&config)?;
    println!("literal reading, checks not passing: {:?}", exp.literal_failing);
    println!("split reading, checks not passing:   {:?}", exp.split_failing);
    for c in exp.literal.failing().take(3) {
        println!("  literal {} {}: {}", c.name, c.params, c.witness.as_deref().unwrap_or(""));
    }
    Ok(())
}
