//! Compares SYT chain enumeration against the direct labeling oracle.

use toroidal::action::Window;
use toroidal::colored::{Model, ZetaReading};
use toroidal::partitions::{enumerate_syt, RPartition};
use toroidal::scalars::random_specialization;
use toroidal::verify::check_syt_oracle;

fn main() -> toroidal::Result<()> {
    for (n, r) in [(2, vec![1, 1]), (2, vec![2, 1]), (3, vec![1, 1, 1])] {
        let spec = random_specialization(1, n, &r, 4)?;
        let window = Window::new(Model::new(spec, ZetaReading::Literal), 4);
        let t = check_syt_oracle(&window);
        println!("n={} r={:?}: {} pairs compared, {} mismatches", n, r, t.compared, t.failures);
    }
    let spec = random_specialization(1, 2, &[1, 1], 4)?;
    let model = Model::new(spec, ZetaReading::Literal);
    let mu = RPartition::parse_id("|").expect("valid id");
    let lam = RPartition::parse_id("2,1|").expect("valid id");
    for chain in enumerate_syt(&model, &mu, &lam, 1, 4) {
        let ids: Vec<String> = chain.chain.iter().map(|p| p.id()).collect();
        println!("chain {}", ids.join(" -> "));
    }
    Ok(())
}
