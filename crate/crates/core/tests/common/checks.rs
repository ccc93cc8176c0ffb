//! One function per acceptance criterion, shared by the integration tests
//! and the acceptance harness.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use phicoeff::affine::{format_element, parse_element, AffineBruhat, ExtAffineElement};
use phicoeff::coeffengine::{case_terms, evaluate, regions_with_witnesses, render_case, Engine};
use phicoeff::report::{build_report, path_labels};
use phicoeff::rootdata::Family;
use phicoeff::rpoly::{rtilde_dyer, RRecursion};
use phicoeff::weylgroup::ReflectionOrdering;

use super::{case, compare_golden, engine, golden_text, report, CASES};

pub struct Check {
    pub ok: bool,
    pub detail: String,
    pub notes: Vec<String>,
}

impl Check {
    fn new(ok: bool, detail: String) -> Check {
        Check { ok, detail, notes: Vec::new() }
    }
}

fn secs(d: Duration) -> String {
    format!("{:.1}s", d.as_secs_f64())
}

/// All vectors of `(ℤ/n)^d`.
pub fn residues(n: u64, d: usize) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (0..n as i64).map(move |k| {
                    let mut v = v.clone();
                    v.push(k);
                    v
                })
            })
            .collect();
    }
    out
}

pub fn c1_admissible_counts() -> Check {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut found = Vec::new();
    for c in &CASES {
        let n = engine(c).admissible_set().len();
        found.push(format!("{}={n}", c.name));
        if n != c.count {
            bad.push(format!("{}: {n} != {}", c.name, c.count));
        }
    }
    let t = start.elapsed();
    let ok = bad.is_empty() && t < Duration::from_secs(60);
    Check::new(ok, format!("{} in {}{}", found.join(", "), secs(t), fmt_bad(&bad)))
}

fn fmt_bad(bad: &[String]) -> String {
    if bad.is_empty() {
        String::new()
    } else {
        format!("; {}", bad.join("; "))
    }
}

fn golden(names: &[&str]) -> (Vec<String>, Duration) {
    let start = Instant::now();
    let mut problems = Vec::new();
    for name in names {
        let c = case(name);
        let r = report(c);
        problems.extend(compare_golden(&r, &golden_text(name)).into_iter().map(|p| format!("{name}: {p}")));
    }
    (problems, start.elapsed())
}

pub fn c2_small_goldens() -> Check {
    let names = ["gl4_1100", "gsp4_1100", "gsp6_111000"];
    let (problems, t) = golden(&names);
    let mut c = Check::new(
        problems.is_empty(),
        format!("{} tables, {} mismatches, {}", names.len(), problems.len(), secs(t)),
    );
    c.notes = problems;
    c
}

pub fn c3_large_goldens() -> Check {
    let names = ["gl5_11000", "gl6_110000", "gl6_111000"];
    let (problems, t) = golden(&names);
    let ok = problems.is_empty() && t < Duration::from_secs(15 * 60);
    let mut c = Check::new(ok, format!("{} tables, {} mismatches, {}", names.len(), problems.len(), secs(t)));
    c.notes = problems;
    c
}

/// Compares formula and oracle for every admissible element, every `s` and
/// each `r`; returns (comparisons, mismatches).
pub fn oracle_sweep(e: &Engine, q: u64, rs: &[u32], svecs: &[Vec<i64>]) -> (usize, Vec<String>) {
    let d = e.d();
    let adm = e.admissible_set();
    let bad: Vec<String> = adm
        .par_iter()
        .flat_map_iter(|w| {
            let terms = e.path_terms(w).unwrap();
            let mut bad = Vec::new();
            for s in svecs {
                let main = e.numerator(&terms, s, q).unwrap();
                let oracle = e.bruteforce_numerator(&terms, w, s, q).unwrap();
                for &r in rs {
                    if evaluate(&main, q, r, d) != evaluate(&oracle, q, r, d) {
                        bad.push(format!("{} s={s:?} q={q} r={r}", format_element(&e.g, w)));
                    }
                }
            }
            bad
        })
        .collect();
    (adm.len() * svecs.len() * rs.len(), bad)
}

pub fn c4_oracle() -> Check {
    let start = Instant::now();
    let mut total = 0;
    let mut bad = Vec::new();
    for (family, n, mu) in [
        (Family::GL, 3, &[1, 0, 0][..]),
        (Family::GL, 4, &[1, 1, 0, 0][..]),
        (Family::GSp, 2, &[1, 1, 0, 0][..]),
    ] {
        let e = Engine::build(family, n, mu, None).unwrap();
        let (k, b) = oracle_sweep(&e, 3, &[1, 2], &residues(2, e.d()));
        total += k;
        bad.extend(b);
    }
    let t = start.elapsed();
    let mut c = Check::new(
        bad.is_empty() && t < Duration::from_secs(600),
        format!("{total} comparisons at q = 3, r in {{1,2}}, {} mismatches, {}", bad.len(), secs(t)),
    );
    c.notes = bad;
    c
}

/// A displayed case: the paths whose critical groups contain `N_r(s)`, and
/// the printed expression.
pub struct PaperCase {
    pub active: &'static [usize],
    pub expr: &'static str,
}

pub struct Worked {
    pub name: &'static str,
    pub case: &'static str,
    pub w: &'static str,
    pub m: u64,
    pub cases: &'static [PaperCase],
}

const fn pc(active: &'static [usize], expr: &'static str) -> PaperCase {
    PaperCase { active, expr }
}

/// Case displays printed for length-0 elements, with paths numbered from 1.
pub const WORKED_LENGTH_ZERO: [Worked; 4] = [
    Worked {
        name: "GL4 length 0",
        case: "gl4_1100",
        w: "t_(1,1,0,0) s_{2312}",
        m: 2,
        cases: &[pc(&[], "0"), pc(&[2], "2"), pc(&[1, 2], "(q-1) q^r (1-q^r)^{-2} + 2")],
    },
    Worked {
        name: "GSp4 length 0",
        case: "gsp4_1100",
        w: "t_(1,1,0,0) s_{212}",
        m: 2,
        cases: &[pc(&[], "0"), pc(&[2], "-1"), pc(&[1, 2], "(-1) \\Big( 1 + (q-1) q^{r} (1-q^r)^{-2} \\Big)")],
    },
    Worked {
        name: "GL6 (1,1,1,0,0,0) length 0",
        case: "gl6_111000",
        w: "t_(1,1,1,0,0,0) s_{345234123}",
        m: 3,
        cases: &[
            pc(&[], "0"),
            pc(&[5, 6, 7, 8, 9], "12q^r(1-q^r) + 3(1-q^r)^3"),
            pc(&[2, 5, 6, 7, 8, 9], "(q-1)q^{2r}(1-q^r)^{-1} + 12q^r(1-q^r) + 3(1-q^r)^3"),
            pc(&[3, 5, 6, 7, 8, 9], "(q-1)q^{2r}(1-q^r)^{-1} + 12q^r(1-q^r) + 3(1-q^r)^3"),
            pc(&[4, 5, 6, 7, 8, 9], "(q-1)q^{2r}(1-q^r)^{-1} + 12q^r(1-q^r) + 3(1-q^r)^3"),
            pc(
                &[1, 2, 3, 4, 5, 6, 7, 8, 9],
                "(q-1)^2q^{3r}(1-q^r)^{-3} + 3(q-1)q^{2r}(1-q^r)^{-1} + 12q^r(1-q^r) + 3(1-q^r)^3",
            ),
        ],
    },
    Worked {
        name: "GSp6 length 0",
        case: "gsp6_111000",
        w: "t_(1,1,1,0,0,0) s_{323123}",
        m: 2,
        cases: &[
            pc(&[], "0"),
            pc(&[3, 4, 5], "2q^r + (1-q^r)^2"),
            pc(&[2, 3, 4, 5], "3q^r + (1-q^r)^2"),
            pc(&[1, 2, 3, 4, 5], "(q-1)q^{2r} (1-q^r)^{-2} + 3q^r + (1-q^r)^2"),
        ],
    },
];

/// Sign and multiset of summands of a displayed case, with TeX spacing,
/// `\Big` and single-character exponent braces removed.
pub fn normalize_case(s: &str) -> (bool, Vec<String>) {
    let mut t: String = s.replace("\\Big", "").chars().filter(|c| !c.is_whitespace()).collect();
    loop {
        let Some(i) = t.find("^{") else { break };
        let rest = &t[i + 2..];
        let close = rest.find('}').unwrap();
        let inner = &rest[..close];
        if inner.chars().count() != 1 {
            t = format!("{}^\u{1}{}\u{2}{}", &t[..i], inner, &rest[close + 1..]);
        } else {
            t = format!("{}^{}{}", &t[..i], inner, &rest[close + 1..]);
        }
    }
    let t = t.replace('\u{1}', "{").replace('\u{2}', "}");
    let (neg, body) = if let Some(b) = t.strip_prefix("(-1)(").and_then(|b| b.strip_suffix(')')) {
        (true, b.to_string())
    } else if let Some(b) = t.strip_prefix('-') {
        (true, b.to_string())
    } else {
        (false, t)
    };
    let mut terms = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in body.chars() {
        match ch {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            _ => {}
        }
        if ch == '+' && depth == 0 {
            terms.push(std::mem::take(&mut cur));
        } else {
            cur.push(ch);
        }
    }
    terms.push(cur);
    terms.sort();
    if terms == ["0"] {
        return (false, terms);
    }
    (neg, terms)
}

/// Per-case comparison of printed expressions with the engine's, plus the
/// regions the scan realizes.
pub struct WorkedResult {
    pub mismatches: Vec<String>,
    pub empty_cases: Vec<String>,
    pub extra_regions: Vec<String>,
    pub oracle_mismatches: Vec<String>,
}

pub fn check_worked(wk: &Worked) -> WorkedResult {
    let c = case(wk.case);
    let e = engine(c);
    let w = parse_element(&e.g, wk.w).unwrap();
    let terms = e.path_terms(&w).unwrap();
    let d = e.d();
    let report = build_report(&e, std::slice::from_ref(&w), Some(wk.m), None).unwrap();
    let q = report.region_q;
    let labels = path_labels(&terms);
    let mut out = WorkedResult {
        mismatches: Vec::new(),
        empty_cases: Vec::new(),
        extra_regions: Vec::new(),
        oracle_mismatches: Vec::new(),
    };
    let found = regions_with_witnesses(&terms, d, q).unwrap();
    for pcase in wk.cases {
        let active: Vec<usize> = pcase.active.iter().map(|i| i - 1).collect();
        let mine = render_case(&case_terms(&terms, &active, wk.m), d);
        if normalize_case(&mine) != normalize_case(pcase.expr) {
            out.mismatches.push(format!("{}: {:?}: engine {mine} vs printed {}", wk.name, pcase.active, pcase.expr));
        }
        if !found.iter().any(|r| r.active == active) {
            out.empty_cases.push(format!("{}: {} is an empty region", wk.name, pcase.expr));
        }
    }
    for r in &found {
        let named: Vec<usize> = r.active.iter().map(|i| i + 1).collect();
        if !wk.cases.iter().any(|p| p.active == named.as_slice()) {
            let names: Vec<&str> = r.active.iter().map(|&i| labels[i].as_str()).collect();
            out.extra_regions.push(format!(
                "{}: region [{}] (witness {:?}) = {}",
                wk.name,
                names.join(", "),
                r.witness,
                render_case(&case_terms(&terms, &r.active, wk.m), d)
            ));
        }
        for rr in [1, 2] {
            let a = e.coefficient_value(&w, &r.witness, q, rr).unwrap();
            let b = e.bruteforce_value(&w, &r.witness, q, rr).unwrap();
            let shown = case_value(&terms, &r.active, q, rr, d);
            if a != b || a != shown {
                out.oracle_mismatches.push(format!("{}: witness {:?} r={rr}: {a} {b} {shown}", wk.name, r.witness));
            }
        }
    }
    out
}

/// Value of the displayed case expression at concrete `q`, `r`.
fn case_value(terms: &[phicoeff::coeffengine::PathTerm], active: &[usize], q: u64, r: u32, d: usize) -> BigRational {
    let mut num = phicoeff::poly::Poly::zero();
    let qm1 = num_bigint::BigInt::from(q - 1);
    for &i in active {
        let t = &terms[i];
        let scale = t.torsion_at(q) * num_traits::pow(qm1.clone(), t.a as usize);
        num = num + t.t_part().scale(&scale);
    }
    evaluate(&num, q, r, d)
}

pub fn c5_worked_cases() -> Check {
    let mut mismatches = Vec::new();
    let mut notes = Vec::new();
    let mut compared = 0;
    for wk in &WORKED_LENGTH_ZERO {
        let r = check_worked(wk);
        compared += wk.cases.len();
        mismatches.extend(r.mismatches);
        mismatches.extend(r.oracle_mismatches);
        notes.extend(r.empty_cases);
        notes.extend(r.extra_regions);
    }
    let mut c = Check::new(
        mismatches.is_empty(),
        format!(
            "{compared} printed cases compared term-for-term, {} mismatches; {} region notes",
            mismatches.len(),
            notes.len()
        ),
    );
    c.notes = mismatches.into_iter().chain(notes).collect();
    c
}

/// Up to `k` distinct reflection orderings from reduced words of `w_0`
/// (rank-2 groups have exactly two).
pub fn orderings(g: &phicoeff::weylgroup::WeylGroup, k: usize) -> Vec<ReflectionOrdering> {
    let words = g.reduced_words(g.w0(), 2000);
    let mut out: Vec<ReflectionOrdering> = Vec::new();
    let step = (words.len() / k).max(1);
    for w in words.iter().step_by(step) {
        let o = ReflectionOrdering::from_reduced_word(g, w).unwrap();
        if !out.contains(&o) {
            out.push(o);
        }
        if out.len() == k {
            break;
        }
    }
    out
}

/// Returns (pairs, orderings used, mismatches).
pub fn rtilde_pairs(family: Family, n: usize, k: usize) -> (usize, usize, Vec<String>) {
    let g = phicoeff::weylgroup::WeylGroup::from_family(family, n).unwrap();
    let ords = orderings(&g, k);
    let mut rec = RRecursion::new(&g);
    let elems: Vec<_> = g.elements().collect();
    let mut expected = BTreeMap::new();
    for &u in &elems {
        for &v in &elems {
            if g.bruhat_leq(u, v) {
                expected.insert((u, v), rec.rtilde(u, v).unwrap());
            }
        }
    }
    let pairs: Vec<_> = expected.iter().collect();
    let bad: Vec<String> = pairs
        .par_iter()
        .flat_map_iter(|&(&(u, v), want)| {
            let mut bad = Vec::new();
            for (i, o) in ords.iter().enumerate() {
                if rtilde_dyer(&g, u, v, o) != *want {
                    bad.push(format!("{}: ({}, {}) ordering {i}", g.datum.name(), g.word_string(u), g.word_string(v)));
                }
            }
            bad
        })
        .collect();
    (expected.len(), ords.len(), bad)
}

pub fn c6_rtilde() -> Check {
    let mut parts = Vec::new();
    let mut bad = Vec::new();
    let mut enough = true;
    for (f, n, name, want) in
        [(Family::GL, 3, "A2", 2), (Family::GL, 4, "A3", 3), (Family::GSp, 2, "C2", 2), (Family::GSp, 3, "C3", 3)]
    {
        let (pairs, ords, b) = rtilde_pairs(f, n, 3);
        enough &= ords >= want;
        parts.push(format!("{name} {pairs} pairs x {ords} orderings"));
        bad.extend(b);
    }
    let mut c = Check::new(
        bad.is_empty() && enough,
        format!("{}; {} mismatches (A2 and C2 admit exactly two orderings)", parts.join(", "), bad.len()),
    );
    c.notes = bad;
    c
}

pub fn drinfeld_sweep(n: usize, q: u64, r: u32) -> (usize, Vec<String>) {
    let mut mu = vec![0; n];
    mu[0] = 1;
    let e = Engine::build(Family::GL, n, &mu, None).unwrap();
    let svecs = residues(q - 1, n);
    let adm = e.admissible_set();
    let mut bad = Vec::new();
    for w in &adm {
        for s in &svecs {
            let a = e.drinfeld_coefficient(w, s, q, r).unwrap();
            let b = e.coefficient_value(w, s, q, r).unwrap();
            if a != b {
                bad.push(format!("GL{n} {} s={s:?}: closed form {a} != {b}", format_element(&e.g, w)));
            }
        }
    }
    (adm.len() * svecs.len(), bad)
}

pub fn c7_drinfeld() -> Check {
    let mut total = 0;
    let mut bad = Vec::new();
    for n in [3, 4] {
        let (k, b) = drinfeld_sweep(n, 3, 1);
        total += k;
        bad.extend(b);
    }
    let mut c = Check::new(bad.is_empty(), format!("GL3, GL4: {total} comparisons, {} mismatches", bad.len()));
    c.notes = bad;
    c
}

pub fn structural(c: &super::Case) -> (usize, Vec<String>) {
    let e = engine(c);
    let d = e.d();
    let adm = e.admissible_set();
    let per: Vec<(usize, Vec<String>)> = adm
        .par_iter()
        .map(|w| {
            let terms = e.path_terms(w).unwrap();
            let mut bad = Vec::new();
            for (i, t) in terms.iter().enumerate() {
                let expect = d - t.root_system.rank - 1;
                if t.structure.free_rank != expect || t.a as usize != expect {
                    bad.push(format!("{} {} D{}: rank {} != {expect}", c.name, format_element(&e.g, w), i + 1, t.structure.free_rank));
                }
                if t.structure.invariant_factors.len() > 1 {
                    bad.push(format!("{} {} D{}: {} invariant factors", c.name, format_element(&e.g, w), i + 1, t.structure.invariant_factors.len()));
                }
            }
            (terms.len(), bad)
        })
        .collect();
    let paths = per.iter().map(|p| p.0).sum();
    (paths, per.into_iter().flat_map(|p| p.1).collect())
}

pub fn c8_structure() -> Check {
    let mut total = 0;
    let mut bad = Vec::new();
    for c in &CASES {
        let (k, b) = structural(c);
        total += k;
        bad.extend(b);
    }
    let mut c = Check::new(bad.is_empty(), format!("{total} paths over six cases, {} violations", bad.len()));
    c.notes = bad;
    c
}

/// Every `t_λ w̄` with `λ ∈ Wμ`; admissibility decided independently by the
/// affine Bruhat order against `t_λ`.
pub fn iwahori_support(family: Family, n: usize, mu: &[i64]) -> (usize, usize, Vec<String>) {
    let e = Engine::build(family, n, mu, None).unwrap();
    let g = &e.g;
    let mut bruhat = AffineBruhat::new(g).unwrap();
    let mut bad = Vec::new();
    let mut adm = 0;
    let mut total = 0;
    for lambda in g.datum.weyl_orbit(&e.mu) {
        let t = ExtAffineElement::translation(lambda.clone());
        for wbar in g.elements() {
            let w = ExtAffineElement { lambda: lambda.clone(), wbar };
            total += 1;
            let affine_adm = bruhat.leq(&w, &t);
            adm += affine_adm as usize;
            if affine_adm != e.is_admissible(&w) {
                bad.push(format!("{}: admissibility disagrees", format_element(g, &w)));
            }
            let has_paths = !e.paths(&w).is_empty();
            let values: Vec<bool> =
                [(3, 1), (3, 2), (5, 1)].iter().map(|&(q, r)| !e.iwahori_coefficient(&w, q, r).unwrap().is_zero()).collect();
            if has_paths != affine_adm || values.iter().any(|&v| v != affine_adm) {
                bad.push(format!(
                    "{}: admissible {affine_adm}, paths {has_paths}, nonzero {values:?}",
                    format_element(g, &w)
                ));
            }
        }
    }
    (total, adm, bad)
}

pub fn c9_iwahori() -> Check {
    let mut bad = Vec::new();
    let mut parts = Vec::new();
    for (f, n, mu, name) in [(Family::GL, 4, &[1, 1, 0, 0][..], "GL4"), (Family::GSp, 2, &[1, 1, 0, 0][..], "GSp4")] {
        let (total, adm, b) = iwahori_support(f, n, mu);
        parts.push(format!("{name}: nonzero on {adm} of {total}"));
        bad.extend(b);
    }
    let mut c = Check::new(bad.is_empty(), format!("{}, {} mismatches", parts.join(", "), bad.len()));
    c.notes = bad;
    c
}
