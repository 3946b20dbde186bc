//! Changing the generator of G, the primitive root mod q or the complex embedding
//! leaves every verdict unchanged.

use std::path::Path;

use etnc::arith;
use etnc::pipeline::{run_all, RunConfig};
use etnc::problem::ProblemFile;
use etnc::transform::{change_generator, change_primitive_root};

fn main() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/79a1_q29_p7.toml");
    let file = ProblemFile::load(path).unwrap();
    let base = run_all(&file, &RunConfig::default()).unwrap().verdicts();
    for a in 2..7 {
        let moved = change_generator(&file, a).unwrap();
        let same = run_all(&moved, &RunConfig::default()).unwrap().verdicts() == base;
        let twisted = RunConfig { embedding_twist: Some(a), ..RunConfig::default() };
        let same_twist = run_all(&file, &twisted).unwrap().verdicts() == base;
        println!("sigma -> sigma^{a}: unchanged {same}; zeta -> zeta^{a}: unchanged {same_twist}");
    }
    for g in (2..29).filter(|&g| arith::is_primitive_root(g, 29)) {
        let moved = change_primitive_root(&file, g).unwrap();
        let same = run_all(&moved, &RunConfig::default()).unwrap().verdicts() == base;
        println!("primitive root {g}: unchanged {same}");
    }
}
