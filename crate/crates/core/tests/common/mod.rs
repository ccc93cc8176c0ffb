#![allow(dead_code)]

pub mod checks;

use std::collections::BTreeSet;
use std::path::PathBuf;

use phicoeff::report::{blocks, build_report, Block, Report};
use phicoeff::rootdata::Family;
use phicoeff::coeffengine::Engine;

pub struct Case {
    pub name: &'static str,
    pub family: Family,
    pub n: usize,
    pub mu: &'static [i64],
    pub count: usize,
}

pub const CASES: [Case; 6] = [
    Case { name: "gl4_1100", family: Family::GL, n: 4, mu: &[1, 1, 0, 0], count: 33 },
    Case { name: "gl5_11000", family: Family::GL, n: 5, mu: &[1, 1, 0, 0, 0], count: 131 },
    Case { name: "gl6_110000", family: Family::GL, n: 6, mu: &[1, 1, 0, 0, 0, 0], count: 473 },
    Case { name: "gl6_111000", family: Family::GL, n: 6, mu: &[1, 1, 1, 0, 0, 0], count: 883 },
    Case { name: "gsp4_1100", family: Family::GSp, n: 2, mu: &[1, 1, 0, 0], count: 13 },
    Case { name: "gsp6_111000", family: Family::GSp, n: 3, mu: &[1, 1, 1, 0, 0, 0], count: 79 },
];

pub fn case(name: &str) -> &'static Case {
    CASES.iter().find(|c| c.name == name).unwrap()
}

pub fn engine(c: &Case) -> Engine {
    Engine::build(c.family, c.n, c.mu, None).unwrap()
}

pub fn report(c: &Case) -> Report {
    let e = engine(c);
    build_report(&e, &e.admissible_set(), None, None).unwrap()
}

#[derive(Debug)]
enum Members {
    All,
    Listed(Vec<String>),
    Complement(usize, Vec<String>),
}

#[derive(Debug)]
struct Expected {
    length: u32,
    label: Option<String>,
    rows: Vec<String>,
    inclusions: Option<String>,
    members: Members,
}

fn parse_golden(text: &str) -> Vec<Expected> {
    let mut out: Vec<Expected> = Vec::new();
    for line in text.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#')) {
        if let Some(h) = line.strip_prefix("== l(w) = ") {
            let h = h.trim_end_matches(" ==");
            let (len, label) = match h.split_once(", w in ") {
                Some((l, x)) => (l, Some(x.to_string())),
                None => (h, None),
            };
            out.push(Expected {
                length: len.parse().unwrap(),
                label,
                rows: vec![],
                inclusions: None,
                members: Members::All,
            });
            continue;
        }
        let cur = out.last_mut().unwrap();
        if let Some(inc) = line.strip_prefix("Inclusions: ") {
            cur.inclusions = Some(inc.to_string());
        } else if let Some(rest) = line.strip_prefix("Elements (") {
            let (_, list) = rest.split_once("): ").unwrap();
            cur.members = Members::Listed(list.split(", ").map(str::to_string).collect());
        } else if let Some(rest) = line.strip_prefix("Complement (") {
            let (n, list) = rest.split_once("): ").unwrap();
            cur.members = Members::Complement(n.parse().unwrap(), list.split(", ").map(str::to_string).collect());
        } else {
            cur.rows.push(line.to_string());
        }
    }
    out
}

pub fn golden_text(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.txt"));
    std::fs::read_to_string(p).unwrap()
}

/// Mismatches between the report's blocks and a golden file; empty when
/// they agree.
pub fn compare_golden(report: &Report, golden: &str) -> Vec<String> {
    let expected = parse_golden(golden);
    let got = blocks(report);
    let mut problems = Vec::new();
    let lengths: BTreeSet<u32> = expected.iter().map(|e| e.length).chain(got.iter().map(|b| b.length)).collect();
    for len in lengths {
        let exp: Vec<&Expected> = expected.iter().filter(|e| e.length == len).collect();
        let mine: Vec<&Block> = got.iter().filter(|b| b.length == len).collect();
        if exp.len() != mine.len() {
            problems.push(format!("l(w) = {len}: expected {} blocks, found {}", exp.len(), mine.len()));
            continue;
        }
        let all: BTreeSet<String> = mine.iter().flat_map(|b| b.elements.iter().cloned()).collect();
        for e in &exp {
            let members: BTreeSet<String> = match &e.members {
                Members::All => all.clone(),
                Members::Listed(v) => v.iter().cloned().collect(),
                Members::Complement(n, others) => {
                    let mut set = all.clone();
                    for o in others {
                        let other = expected.iter().find(|x| x.label.as_deref() == Some(o.as_str())).unwrap();
                        if let Members::Listed(v) = &other.members {
                            for x in v {
                                set.remove(x);
                            }
                        }
                    }
                    if set.len() != *n {
                        problems.push(format!("l(w) = {len}: complement has {} elements, expected {n}", set.len()));
                    }
                    set
                }
            };
            let name = e.label.clone().unwrap_or_else(|| format!("l(w) = {len}"));
            let Some(b) = mine.iter().find(|b| b.elements.iter().cloned().collect::<BTreeSet<_>>() == members) else {
                problems.push(format!("{name}: no block with the expected elements"));
                continue;
            };
            if b.rows != e.rows {
                problems.push(format!("{name}: rows {:?} != expected {:?}", b.rows, e.rows));
            }
            if b.inclusions != e.inclusions {
                problems.push(format!("{name}: inclusions {:?} != expected {:?}", b.inclusions, e.inclusions));
            }
        }
    }
    problems
}
