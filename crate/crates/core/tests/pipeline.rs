mod common;

use lilykernel::cores::CoreOptions;
use lilykernel::io::harness::verify_suite;
use lilykernel::oracle::Oracle;

#[test]
fn bikernels_and_gadgets_agree_with_oracle() {
    let cases = common::cases();
    let oracle = Oracle::with_guard(200);
    let reports = verify_suite(&cases, &oracle, &CoreOptions::default());
    let mut bad = Vec::new();
    for (case, rep) in cases.iter().zip(&reports) {
        match rep {
            Ok(rep) if rep.agreed() => {}
            Ok(rep) => bad.push(rep.lines().join("\n")),
            Err(e) => bad.push(format!("{} {} {:?}: {e}", case.name, case.problem, case.params)),
        }
    }
    assert!(
        bad.is_empty(),
        "{} of {} cases disagree:\n{}",
        bad.len(),
        cases.len(),
        bad.join("\n\n")
    );
}
