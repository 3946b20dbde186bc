//! 79a1 over the degree-7 subfield of Q(zeta_29): every criterion from 20-digit data.

use std::path::Path;

use etnc::pipeline::{run_detailed, RunConfig};
use etnc::problem::ProblemFile;

fn main() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/79a1_q29_p7.toml");
    let file = ProblemFile::load(path).unwrap();
    let out = run_detailed(&file, &RunConfig::default()).unwrap();
    print!("{}", out.report);
    if let Some(alphas) = &out.alphas {
        let rendered: Vec<String> = alphas.iter().map(|a| a.to_string()).collect();
        println!("exact vector (j = 0..6): ({})", rendered.join(", "));
    }
    println!("exit code {}", out.report.exit_code());
}
