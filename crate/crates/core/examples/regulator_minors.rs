//! Height table of a G-stable lattice, its regulator matrix and the minors lambda_psi, delta_psi.

use etnc::groupring::CyclicGroup;
use etnc::mwshape::PermShape;
use etnc::regulator::{build_regulator, delta_psi, lambda_psi, table_from_exact, SyntheticLattice};

fn main() {
    let prec = 192;
    let group = CyclicGroup::new(3, 2).unwrap();
    let shape = PermShape::new(group, vec![1, 1, 0]).unwrap();
    let a = vec![
        vec![2, 1, 0, 0],
        vec![1, 3, 1, 0],
        vec![0, 1, 2, 1],
        vec![1, 0, 1, 3],
    ];
    let lattice = SyntheticLattice::from_matrix(&shape, &a).unwrap();
    let heights = lattice.standard_heights();
    println!("{} height pairings for shape {shape}", heights.len());
    let reg = build_regulator(&table_from_exact(&shape, &heights, prec), prec).unwrap();
    println!("regulator matrix of size {}", reg.size());
    for psi in group.characters() {
        println!(
            "{psi}: lambda = {}  delta = {}",
            lambda_psi(&reg, &psi).to_decimal(15),
            delta_psi(&shape, &psi)
        );
    }
}
