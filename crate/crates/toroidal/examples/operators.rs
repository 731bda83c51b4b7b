//! Builds generator and fine operators on a window and prints a few entries.
//!
//! Shows that the fine operator on a one-box interval reproduces the simple
//! generator, and how a two-box fine operator spreads over SYT chains.

use toroidal::action::{Action, Window};
use toroidal::colored::{LaurentPolynomial, Model, ZetaReading};
use toroidal::scalars::{fmt_q, random_specialization};

fn main() -> toroidal::Result<()> {
    let spec = random_specialization(2, 2, &[2, 1], 3)?;
    let action = Action::new(Window::new(Model::new(spec, ZetaReading::Literal), 3));
    let w = &action.window;
    println!("window of {} fixed points", w.len());

    let e = action.e_simple(1, 1)?;
    println!("e_{{1,1}}: {} nonzero entries, shift {:?}", e.entries.len(), e.shift);
    for (&(col, row), v) in e.entries.iter().take(4) {
        println!("  <{}| e |{}> = {}", w.states[row].id(), w.states[col].id(), fmt_q(v));
    }
    println!("fine [1;2) with z^1 equals e_{{1,1}}: {}", action.e_interval_k(1, 2, 1)? == e);

    let m = LaurentPolynomial::slope(1, 3, 1);
    let two = action.e_fine(1, 3, &m)?;
    println!("slope operator e^(1)_[1;3): {} entries, vertical degree {:?}", two.entries.len(), two.vertical);
    let f = action.f_interval_k(0, 2, 0)?;
    println!("f_[0;2),0 crosses a sheet: {} entries, shift {:?}", f.entries.len(), f.shift);
    Ok(())
}
