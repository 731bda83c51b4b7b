//! Lists the torus fixed points of a small window with their box colors and weights.
//!
//! Run with `cargo run --example fixed_points`.

use toroidal::colored::{Model, ZetaReading};
use toroidal::partitions::fixed_points_by_degree;
use toroidal::scalars::{fmt_q, random_specialization};

fn main() -> toroidal::Result<()> {
    let spec = random_specialization(1, 2, &[1, 1], 2)?;
    let model = Model::new(spec, ZetaReading::Literal);
    println!("q = {}, q̄^(1/2) = {}", fmt_q(&model.spec.q), fmt_q(&model.spec.qb));
    for (d, points) in fixed_points_by_degree(&model, 2) {
        println!("degree {:?}: {} fixed points", d.0, points.len());
        for p in points {
            let boxes: Vec<String> = p
                .cells()
                .iter()
                .map(|c| format!("(a={},x={},y={}) color {} weight {}", c.a, c.x, c.y, c.color(&model), fmt_q(&c.weight(&model))))
                .collect();
            println!("  {:8} {}", p.id(), boxes.join("; "));
        }
    }
    Ok(())
}
