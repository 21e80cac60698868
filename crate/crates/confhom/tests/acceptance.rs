//! Acceptance criteria 1–13, one PASS/FAIL line each. Pass criterion
//! numbers as arguments to run a subset.

use confhom::certificates::{certificates, run_certificate, CheckOptions};

fn main() {
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for c in certificates() {
        if !only.is_empty() && !only.contains(&c.id) {
            continue;
        }
        let o = run_certificate(&c, &CheckOptions::default());
        match &o.result {
            Ok(()) => println!("PASS {:>2} {} ({:.2} s)", o.id, o.name, o.secs),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {} ({:.2} s): {e}", o.id, o.name, o.secs);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
