//! Exact arithmetic in Q(zeta_m): inverses, Galois action, norms and valuations.

use etnc::cyclotomic::CycNum;

fn main() {
    let one = CycNum::one(3);
    let z = CycNum::zeta_pow(3, 1);
    let pi = &one - &z;
    println!("1/(1 - zeta3) = {}", pi.inv().unwrap());

    let x = CycNum::from_int_terms(9, &[(5, 2), (3, -2), (1, -1), (0, -2)]);
    println!("x = {x}");
    for s in [2, 4, 5, 7, 8] {
        println!("  sigma_{s}(x) = {}", x.galois_apply(s).unwrap());
    }
    println!("N(x) = {}, Tr(x) = {}", x.norm(), x.trace());
    println!("v_(1 - zeta9)(x) = {}", x.valuation_above_p(3).unwrap());

    let nine = CycNum::from_int_terms(9, &[(0, 9)]);
    println!("v_(1 - zeta9)(9) = {}", nine.valuation_above_p(3).unwrap());
    println!("x at exp(2 pi i / 9) = {}", x.embed(1, 128).unwrap().to_decimal(20));
}
