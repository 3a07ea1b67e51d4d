//! Runs the ten acceptance criteria and prints one PASS/FAIL line each.
//! Exits nonzero if any criterion fails.

use garside::verify;

fn main() {
    let only: Option<u8> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let runs: Vec<(u8, fn() -> verify::CriterionReport)> = vec![
        (1, || verify::criterion_1(&[3, 4])),
        (2, || verify::criterion_2(&[3, 4, 5], &[6])),
        (3, verify::criterion_3),
        (4, || verify::criterion_4(&[3, 4, 5])),
        (5, || verify::criterion_5(&[3, 4, 5])),
        (6, verify::criterion_6),
        (7, || verify::criterion_7(&[3, 4])),
        (8, || verify::criterion_8(&[3, 4, 5])),
        (9, || verify::criterion_9(4, 60, 1000)),
        (10, || verify::criterion_10(&[3, 4, 6])),
    ];
    let mut failed = 0;
    for (id, run) in runs {
        if only.is_some_and(|o| o != id) {
            continue;
        }
        let r = run();
        println!("{r}");
        failed += !r.passed as usize;
    }
    println!("acceptance: {failed} criteria failed");
    if failed > 0 {
        std::process::exit(1);
    }
}
