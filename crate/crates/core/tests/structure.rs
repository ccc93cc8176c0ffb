mod common;

use common::checks::c8_structure;
use common::{engine, CASES};

#[test]
fn rank_and_single_invariant_factor() {
    let c = c8_structure();
    assert!(c.ok, "{}\n{}", c.detail, c.notes.join("\n"));
}

#[test]
fn term_parity_and_bounds() {
    for c in &CASES[..2] {
        let e = engine(c);
        let d = e.d() as i64;
        for w in e.admissible_set() {
            let gap = e.length_gap(&w) as usize;
            for t in e.path_terms(&w).unwrap() {
                assert_eq!(2 * t.b as usize + t.length(), gap);
                assert!(t.c >= -d);
                assert_eq!(t.c, t.length() as i64 - d);
                assert_eq!(t.path.edge_product(&e.g), e.g.inverse(w.wbar));
            }
        }
    }
}
