//! Shuffle-algebra evaluations: the same-color product, an A element, and slope tests.

use std::sync::Arc;

use num_traits::One;
use toroidal::colored::{LaurentPolynomial, Model, ZetaReading};
use toroidal::scalars::{fmt_q, random_specialization, Q};
use toroidal::shuffle::{element_a, nonempty_subsets, random_assignment, rng, run_shuffle_checks, shuffle_product, slope_limit_test, ShuffleElement};

fn main() -> toroidal::Result<()> {
    let model = Arc::new(Model::new(random_specialization(1, 2, &[1, 1], 3)?, ZetaReading::Literal));
    let one = ShuffleElement::constant(model.clone(), vec![1, 0], Q::one());
    let sq = shuffle_product(&one, &one);
    let mut g = rng(0);
    let x = random_assignment(&sq.degree, &mut g);
    println!("1*1 = {} and q + 1/q = {}", fmt_q(&sq.evaluate(&x)?), fmt_q(&(model.q() + model.q().recip())));

    let a = element_a(model.clone(), 1, 3, LaurentPolynomial::first_power(2, 1))?;
    let base = random_assignment(&a.degree, &mut g);
    for subset in nonempty_subsets(&a.degree) {
        println!("A^(z_1)_[1;3) vanishes as {:?} -> 0: {}", subset, slope_limit_test(&a, &subset, &base)?);
    }
    let report = run_shuffle_checks(model, 1, 10, 5)?;
    println!("full shuffle check: pass {} ({} slope tests)", report.pass, report.slope_tests);
    Ok(())
}
