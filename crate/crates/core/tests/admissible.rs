mod common;

use common::checks::c1_admissible_counts;

#[test]
fn shipped_counts_within_budget() {
    let c = c1_admissible_counts();
    assert!(c.ok, "{}", c.detail);
}
