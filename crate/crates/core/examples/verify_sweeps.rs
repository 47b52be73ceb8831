//! Small verification sweeps with their JSON reports.

use std::io::Write;

use goeritz::harness::{verify_claims, verify_image, verify_kernel, verify_relations, SweepConfig};

pub fn run_example(out: &mut impl Write) -> goeritz::Result<()> {
    let mut cfg = SweepConfig::new(3);
    cfg.max_word_length = 5;
    cfg.kappa_max = 6;
    cfg.sample_count = 200;

    let reports = [verify_relations(3)?, verify_kernel(&cfg)?, verify_image(&cfg)?, verify_claims(&cfg)?];
    for r in &reports {
        writeln!(out, "{}: {:?} ({})", r.claim, r.status, r.scope).unwrap();
        assert!(r.passed());
    }
    writeln!(out, "{}", serde_json::to_string_pretty(&reports[1]).unwrap()).unwrap();
    Ok(())
}

#[allow(dead_code)]
fn main() -> goeritz::Result<()> {
    run_example(&mut std::io::stdout())
}
