//! Builds W_{ij}^k on a window: zero above the bound k > r_j, nonzero at k = r_j.

use toroidal::action::{Action, Window};
use toroidal::colored::{Model, ZetaReading};
use toroidal::scalars::{fmt_q, random_specialization};
use toroidal::walgebra::{build_w, sharpness_witness, WSpec};

fn main() -> toroidal::Result<()> {
    let (n, r) = (2, [2usize, 1]);
    let spec = random_specialization(1, n, &r, 3)?;
    let action = Action::new(Window::new(Model::new(spec, ZetaReading::Literal), 3));
    let model = action.model();
    for (i, j) in [(1, 1), (1, 2), (2, 1), (0, 2), (3, 2)] {
        let rj = model.r_at(j);
        for k in rj..=rj + 2 {
            let w = build_w(&action, WSpec { i, j, k })?;
            println!("W_({},{})^{} : {:4} nonzero entries, shift {:?}", i, j, k, w.entries.len(), w.shift);
        }
    }
    for i in 1..=n as i64 {
        let (entry, top) = sharpness_witness(&action, i)?;
        println!("vacuum entry of W_({i},{i})^r_{i} = {} = top psi mode {}", fmt_q(&entry), fmt_q(&top));
    }
    Ok(())
}
