use flagchow::verify::{case_ids, run_all, run_case, Status};

#[test]
fn suite_has_ten_distinct_cases() {
    let ids = case_ids();
    assert_eq!(ids.len(), 10);
    let mut sorted = ids.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), ids.len());
}

#[test]
fn unknown_case_is_none() {
    assert!(run_case("not-a-case").is_none());
}

#[test]
fn pool_keeps_case_order_and_everything_passes() {
    for jobs in [Some(1), Some(3)] {
        let reports = run_all(jobs).unwrap();
        let ids: Vec<&str> = reports.iter().map(|r| r.id).collect();
        assert_eq!(ids, case_ids());
        for r in &reports {
            assert_eq!(r.status, Status::Pass, "{}: {:?}", r.id, r.diff);
            assert!(r.diff.is_empty());
            assert!(r.checks.iter().all(|c| c.ok));
            assert!(r.checks.iter().all(|c| ["catalog", "formula", "enumeration"].contains(&c.source)));
        }
    }
}

#[test]
fn single_case_matches_suite_entry() {
    let one = run_case("squares-hit").unwrap();
    let all = run_all(Some(1)).unwrap();
    let same = all.iter().find(|r| r.id == "squares-hit").unwrap();
    assert_eq!(one.checks, same.checks);
    assert_eq!(one.checks.len(), 128);
}
