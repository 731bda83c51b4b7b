//! Expands the ψ± eigenvalues at a few fixed points and shows the periodicity reduction.

use toroidal::action::{psi_modes, psi_series_direct};
use toroidal::colored::{Model, ZetaReading};
use toroidal::partitions::RPartition;
use toroidal::scalars::{fmt_q, random_specialization};

fn main() -> toroidal::Result<()> {
    let spec = random_specialization(3, 2, &[2, 1], 2)?;
    let model = Model::new(spec, ZetaReading::Literal);
    for id in ["|", "1|", "1,1|", "|1"] {
        let lam = RPartition::parse_id(id).expect("valid id");
        for i in 1..=2 {
            let plus: Vec<String> = psi_modes(&model, i, &lam, true, 3)?.iter().map(fmt_q).collect();
            let minus: Vec<String> = psi_modes(&model, i, &lam, false, 3)?.iter().map(fmt_q).collect();
            println!("{:6} i={} psi+ {:?}", id, i, plus);
            println!("{:6} i={} psi- {:?}", id, i, minus);
        }
    }
    // the reduction to colors 1..n agrees with the direct extended formula
    let lam = RPartition::parse_id("2|1").expect("valid id");
    for i in [-1, 0, 3, 4] {
        let direct = psi_series_direct(&model, i, &lam, false, 3)?;
        let reduced = psi_modes(&model, i, &lam, false, 3)?;
        println!("color {:2}: reduced psi- modes match direct formula: {}", i, direct.coeffs == reduced);
    }
    Ok(())
}
