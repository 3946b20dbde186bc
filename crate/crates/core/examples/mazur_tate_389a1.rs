//! 389a1 over the degree-9 subfield of Q(zeta_19): recognition from 6 digits, the
//! Mazur-Tate element and its position in the augmentation filtration.

use std::path::Path;

use etnc::groupring::augmentation_order;
use etnc::pipeline::{run_detailed, RunConfig};
use etnc::problem::ProblemFile;

fn main() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/389a1_q19_p9.toml");
    let file = ProblemFile::load(path).unwrap();
    let out = run_detailed(&file, &RunConfig::default()).unwrap();
    let rec = out.recognition.as_ref().unwrap();
    for orbit in &rec.orbits {
        println!("level {}: {} (members {:?})", orbit.level, orbit.element, orbit.members);
    }
    let shape = out.shape.as_ref().unwrap();
    let mt = out.mazur_tate.as_ref().unwrap();
    println!("shape {shape}, predicted h = {}", shape.h());
    println!("L = {mt}");
    println!("largest k <= 4 with L in I^k: {}", augmentation_order(mt, 3, 4).unwrap());
    for name in ["cor1.i", "exact_order"] {
        let c = out.report.check(name).unwrap();
        println!("{name}: {} {}", c.status, c.summary);
        for w in &c.warnings {
            println!("  warning: {w}");
        }
    }
}
