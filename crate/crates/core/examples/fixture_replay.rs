//! Replays every built-in example world and writes the fixtures as JSON test vectors.

use surrogate_paradox::fixtures::{fixtures, replay};

fn main() -> surrogate_paradox::Result<()> {
    for f in fixtures() {
        let report = replay(&f)?;
        let failed: Vec<&str> = report.checks.iter().filter(|c| !c.pass).map(|c| c.quantity.as_str()).collect();
        println!(
            "{:<20} {} ({} checks){}",
            f.name,
            if report.pass { "PASS" } else { "FAIL" },
            report.checks.len(),
            if failed.is_empty() { String::new() } else { format!(", failing: {}", failed.join(", ")) }
        );
    }
    let vectors: Vec<_> = fixtures().iter().map(|f| f.to_json()).collect();
    let path = std::env::temp_dir().join("surrogate_paradox_fixtures.json");
    std::fs::write(&path, serde_json::to_string_pretty(&vectors)?)?;
    println!("wrote {}", path.display());
    Ok(())
}
