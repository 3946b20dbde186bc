//! Powers of the augmentation ideal of Z_p[G] and the unit criterion.

use etnc::groupring::{augmentation_order, ideal_power_membership, is_zp_unit, CyclicGroup, GroupRingElt};

fn main() {
    let group = CyclicGroup::new(3, 2).unwrap();
    let s = GroupRingElt::sigma_power_minus_one(group, 0);
    let s3 = GroupRingElt::sigma_power_minus_one(group, 1);
    let three = GroupRingElt::from_terms(group, &[(0, 3)]);
    let trace = GroupRingElt::trace_elt(group, 0);
    for (name, x) in [
        ("sigma - 1", s.clone()),
        ("(sigma - 1)^2", s.pow(2)),
        ("sigma^3 - 1", s3),
        ("3", three),
        ("Tr_G - 9", &trace - &GroupRingElt::from_terms(group, &[(0, 9)])),
    ] {
        println!("{name}: deepest power (up to 6) = {}", augmentation_order(&x, 3, 6).unwrap());
    }
    let x = GroupRingElt::from_ints(group, &[0, -1, 2, -1, 0, 2, -2, -2, 2]).unwrap();
    println!("x = {x}: in I^2 {}, in I^3 {}", ideal_power_membership(&x, 2, 3).unwrap(), ideal_power_membership(&x, 3, 3).unwrap());

    let u = GroupRingElt::from_terms(group, &[(0, 1), (1, 1), (4, -1)]);
    let v = GroupRingElt::from_terms(group, &[(0, 2), (1, 1)]);
    println!("{u}: {}", is_zp_unit(&u, 3));
    println!("{v}: {}", is_zp_unit(&v, 3));
}
