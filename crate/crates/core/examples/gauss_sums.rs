//! Gauss sums of characters of p-power order mod q, exactly and numerically.

use etnc::gauss::{gauss_sum, gauss_sum_numeric, tau_star, AbelianFieldSetup};
use etnc::groupring::CyclicGroup;

fn main() {
    let prec = 192;
    let group = CyclicGroup::new(3, 2).unwrap();
    let setup = AbelianFieldSetup::rational(group, 19, None, 1).unwrap();
    println!("q = 19, primitive root {:?}", setup.primitive_root);
    for psi in group.characters() {
        let tau = gauss_sum(&psi, &setup, prec).unwrap();
        let direct = gauss_sum_numeric(&psi, &setup, prec).unwrap();
        let norm = &tau.exact * &tau.exact.conj();
        let star = tau_star(&psi, &setup, prec).unwrap();
        println!(
            "{psi}: tau = {}  |tau|^2 = {}  |direct - exact| = {:.1e}  tau* = {}",
            tau.numeric.to_decimal(12),
            norm,
            (&direct - &tau.numeric).abs().to_f64(),
            star.numeric.to_decimal(12)
        );
    }
}
