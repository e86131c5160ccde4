//! Betti numbers of the marked circle as the number of sites grows, next to
//! Hochschild homology.
//!
//! `cargo run --release --example stabilization [ALGEBRA] [MAX_SITES] [BUDGET]`

use blobcx::algebra::builtin;
use blobcx::blob::DEFAULT_BUDGET;
use blobcx::comparison::stabilization_study;
use blobcx::Q;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (a, m) = builtin::<Q>(args.first().map_or("truncated_polynomial 2", String::as_str))?.pair();
    let max = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    let budget = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_BUDGET);

    let (report, rows) = stabilization_study(&a, &m, 2..=max, 2, budget)?;
    println!("{} / {}", a.name(), m.name());
    for r in rows {
        match r.betti {
            Some(b) => println!("  N = {}: {b:?}", r.sites),
            None => println!("  N = {}: over budget", r.sites),
        }
    }
    print!("{}", report.summary());
    Ok(())
}
