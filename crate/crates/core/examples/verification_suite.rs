//! Seeded corpora: generators and the suite runner.

use multsys::harness::{generate, generate_lacunary, run_suite, GeneratorConfig, GeneratorKind, Suite, SuiteOptions};

fn main() -> multsys::Result<()> {
    let cfg = GeneratorConfig::new(GeneratorKind::RandomStep, 3, 42);
    println!("{}", serde_json::to_string(&generate(&cfg)?)?);

    let lac = generate_lacunary(&GeneratorConfig::new(GeneratorKind::LacunaryTrig, 6, 1))?;
    let freqs: Vec<u64> = lac.terms().iter().map(|t| t.freq).collect();
    println!("lacunary frequencies {freqs:?}");

    let opts = SuiteOptions { instances: Some(20), ..Default::default() };
    for suite in [Suite::Theorem1, Suite::Extension, Suite::Chaos, Suite::Trig, Suite::Azuma] {
        let rep = run_suite(suite, 1, None, &opts)?;
        println!("{:<10} {}/{} pass, min slack {:.3e}", rep.suite, rep.passed, rep.total, rep.min_slack);
    }

    // pass a directory to keep summary.json and instances.jsonl
    let out = std::env::temp_dir().join("multsys-suite");
    let rep = run_suite(Suite::All, 1, Some(&out), &opts)?;
    println!("wrote {} reports to {}", rep.total, out.display());
    Ok(())
}
