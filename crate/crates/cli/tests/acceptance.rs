use std::process::ExitCode;

use jhp_lab::acceptance::{run_criterion, CRITERIA};

fn main() -> ExitCode {
    // libtest flags such as --nocapture may be passed through; a bare
    // number selects a single criterion
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for &(id, ..) in CRITERIA {
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let outcome = run_criterion(id).expect("listed criterion");
        println!("{}", outcome.line());
        failed += usize::from(!outcome.pass);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
