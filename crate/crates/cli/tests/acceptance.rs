//! One PASS/FAIL line per acceptance criterion. Exits non-zero when a
//! status differs from the recorded one.

use std::process::ExitCode;

use picard_cli::repro::{self, Status};
use picard_core::gf::cache::CountCache;

/// Items that disagree with the published data, by criterion.
const KNOWN_MISMATCHES: &[(u8, &str)] = &[
    // the quoted traces at 13 are not the power sums of the quoted cubic
    (9, "cubic at 13 from the quoted traces"),
    // x = 0, w = p·y lies on the deformed surface, so the line lifts
    (10, "line-in-pencil-through-fixed-line"),
];

fn main() -> ExitCode {
    let cache = CountCache::memory();
    let reports = repro::run(&repro::checks(), &cache, None);
    let mut unexpected = Vec::new();
    for r in &reports {
        println!("criterion {:>2} {}: {} ({})", r.criterion, r.status, r.name, r.summary);
        let failing: Vec<&str> = r.items.iter().filter(|i| !i.ok).map(|i| i.label.as_str()).collect();
        for i in r.items.iter().filter(|i| !i.ok) {
            println!("    {}: {}", i.label, i.detail);
        }
        let known: Vec<&str> = KNOWN_MISMATCHES.iter().filter(|(c, _)| *c == r.criterion).map(|(_, l)| *l).collect();
        let want = if known.is_empty() { Status::Pass } else { Status::Fail };
        if r.status != want || failing != known {
            unexpected.push(r.criterion);
        }
    }
    let passed = reports.iter().filter(|r| r.status == Status::Pass).count();
    println!("{passed} of {} criteria pass; recorded mismatches: {}", reports.len(), KNOWN_MISMATCHES.len());
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected status for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
