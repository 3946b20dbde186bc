//! Writes a self-consistent problem file with raw leading terms, so that the
//! Gauss-sum and regulator stages run end to end, then verifies it.
//!
//! cargo run --example synthesize_fixture [-- <output path>]

use std::path::{Path, PathBuf};

use etnc::pipeline::{run_all, RunConfig};
use etnc::synthetic::{synthesize, SyntheticSpec};

fn main() {
    let out: PathBuf = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/synthetic_q19_p9.toml"));
    let file = synthesize(&SyntheticSpec::default()).unwrap();
    file.save(&out).unwrap();
    println!("wrote {}", out.display());
    print!("{}", run_all(&file, &RunConfig::default()).unwrap());
}
