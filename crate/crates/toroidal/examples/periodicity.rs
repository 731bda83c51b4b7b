//! Checks the sheet periodicity of the generators and of W on a small window.

use toroidal::action::{Action, GeneratorKind, Window};
use toroidal::colored::{Model, ZetaReading};
use toroidal::scalars::random_specialization;
use toroidal::walgebra::{check_w_periodicity, WSpec};

fn main() -> toroidal::Result<()> {
    let spec = random_specialization(4, 2, &[1, 2], 3)?;
    let action = Action::new(Window::new(Model::new(spec, ZetaReading::Literal), 3));
    for i in -1..=4 {
        for k in -1..=1 {
            let e_ok = action.e_interval_k(i, i + 1, k)?.entries == action.generator_extended(GeneratorKind::E, i, k)?.entries;
            let f_ok = action.f_interval_k(i, i + 1, k)?.entries == action.generator_extended(GeneratorKind::F, i, k)?.entries;
            println!("color {:2} mode {:2}: e reduction {} f reduction {}", i, k, e_ok, f_ok);
        }
    }
    for (i, j, k) in [(1, 1, 1), (2, 1, 1), (1, 2, 2), (2, 3, 1)] {
        let rep = check_w_periodicity(&action, WSpec { i, j, k }, None)?;
        println!("W_({},{})^{} vs shifted sheet: pass {}", i, j, k, rep.pass);
    }
    Ok(())
}
