//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::time::Instant;

use stabcat_suite::CRITERIA;

fn main() {
    let mut failed = 0;
    for (k, (name, f)) in CRITERIA.iter().enumerate() {
        let t = Instant::now();
        let r = f();
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg} [{secs:.1} s]", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg} [{secs:.1} s]", k + 1);
            }
        }
    }
    println!("{}/{} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
