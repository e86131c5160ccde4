//! Runs every acceptance item over the rationals and prints one line each.
//! Built without the test harness so the lines always show.

use blobcx::report::{Report, Status};
use blobcx::verify::{record, run_item, title, Profile, ITEMS};
use blobcx::Q;

fn main() {
    let mut summary = Report::new();
    for item in 1..=ITEMS {
        let detail = run_item::<Q>(item, Profile::Quick);
        for c in detail.checks.iter().filter(|c| c.status == Status::Info) {
            println!("     acceptance-{item} finding: {}: {}", c.name, c.detail);
        }
        record(&mut summary, item, detail);
        let c = summary.checks.last().unwrap();
        let mark = if c.status == Status::Pass { "PASS" } else { "FAIL" };
        println!("{mark} acceptance-{item} {}: {}", title(item), c.detail);
    }

    // one record per item, in order
    let tags: Vec<String> = summary.checks.iter().map(|c| c.tag.clone()).collect();
    let expected: Vec<String> = (1..=ITEMS).map(|i| format!("acceptance-{i}")).collect();
    assert_eq!(tags, expected);
    let failed: Vec<String> = summary.failures().map(|c| format!("{} {}: {}", c.tag, c.name, c.detail)).collect();
    if !failed.is_empty() {
        eprintln!("failing items:\n{}", failed.join("\n"));
        std::process::exit(1);
    }
    println!("acceptance: {} items passed", ITEMS);
}
