use gpw::engine::EngineConfig;
use gpw::suites::run_suite;
use std::time::Instant;

fn main() {
    let cfg = EngineConfig::default();
    for name in gpw::suites::suite_names() {
        let t = Instant::now();
        match run_suite(name, &cfg) {
            Ok(reports) => {
                let fails: Vec<&str> = reports
                    .iter()
                    .filter(|r| r.status == gpw::report::Status::Fail)
                    .map(|r| r.id.as_str())
                    .collect();
                println!(
                    "{name}: {} claims, {} failed, {:?}",
                    reports.len(),
                    fails.len(),
                    t.elapsed()
                );
                for f in fails {
                    println!("   FAIL {f}");
                }
            }
            Err(e) => println!("{name}: ERROR {e} ({:?})", t.elapsed()),
        }
    }
}
