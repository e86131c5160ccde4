//! Run the acceptance suite and print one line per item.
//!
//! `cargo run --release --example verify_all [quick|full]`

use blobcx::verify::{verify_all, Profile};
use blobcx::Q;

fn main() {
    let profile: Profile = std::env::args().nth(1).map_or(Ok(Profile::Quick), |s| s.parse()).unwrap_or_else(|e| panic!("{e}"));
    let report = verify_all::<Q>(profile);
    print!("{}", report.summary());
    std::process::exit(if report.passed() { 0 } else { 1 });
}
