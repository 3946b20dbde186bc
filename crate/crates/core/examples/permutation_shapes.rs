//! Rank vectors versus permutation-module shapes, and the invariants h, t0, b_psi.

use etnc::groupring::CyclicGroup;
use etnc::mwshape::{ranks_from_shape, shape_from_ranks, PermShape, RankVector};

fn main() {
    let group = CyclicGroup::new(3, 2).unwrap();
    for ranks in [vec![2, 2, 2], vec![1, 3, 9], vec![0, 2, 8], vec![1, 2, 4]] {
        match shape_from_ranks(group, &RankVector(ranks.clone())) {
            Ok(shape) => {
                let b: Vec<u64> = group.characters().map(|psi| shape.b_psi(&psi)).collect();
                println!("ranks {ranks:?} -> shape {shape}, h = {}, t0 = {:?}, b = {b:?}", shape.h(), shape.t0());
            }
            Err(e) => println!("ranks {ranks:?} rejected: {e}"),
        }
    }
    let shape = PermShape::new(group, vec![1, 1, 0]).unwrap();
    println!("shape {shape} has ranks {:?}", ranks_from_shape(&shape).0);
}
