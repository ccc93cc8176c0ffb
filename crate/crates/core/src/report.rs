//! Per-element coefficient reports for a whole admissible set, their JSON
//! form, and the text tables rendered from them.

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abelianlat::Relation;
use crate::affine::{ext_length, format_coweight, format_element, ExtAffineElement};
use crate::coeffengine::{
    admissible_q, case_terms, generic_modulus, region_patterns, regions_with_witnesses, relation_matrix, render_case, render_inclusions, Engine,
    PathTerm,
};
use crate::error::{Error, Result};
use crate::weylgroup::format_word;

pub const SCHEMA: &str = "v1";

/// Largest `q` tried when looking for a non-degenerate sample.
pub const MAX_REGION_Q: u64 = 1000;

/// Number of sample values of `q` checked against the generic relations.
pub const STABILITY_SAMPLES: usize = 4;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub group: String,
    pub mu: Vec<i64>,
    pub lt_mu_length: u32,
    pub d: usize,
    pub assumption_modulus: u64,
    pub region_q: u64,
    pub ordering: Vec<String>,
    pub elements: Vec<ElementReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementReport {
    pub w: String,
    pub lambda: Vec<i64>,
    pub word: String,
    pub length: u32,
    pub paths: Vec<PathReport>,
    pub relations: Vec<Vec<Relation>>,
    pub inclusions: Option<String>,
    pub degenerate_q: Vec<u64>,
    pub regions: Vec<RegionReport>,
    pub cases: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathReport {
    pub label: String,
    pub edges: Vec<String>,
    pub length: usize,
    pub rank: usize,
    pub roots: Vec<String>,
    pub isom: String,
    pub free_rank: usize,
    pub invariant_factors: Vec<String>,
    pub a: u32,
    pub b: u32,
    pub c: i64,
    pub lattice: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionReport {
    pub active: Vec<String>,
    pub witness: Vec<i64>,
    pub case: String,
}

impl PathReport {
    pub fn row(&self) -> String {
        format!(
            "{} | {} | {} | {} | {} | {} | {}",
            self.label, self.length, self.rank, self.isom, self.a, self.b, self.c
        )
    }
}

pub fn path_labels(terms: &[PathTerm]) -> Vec<String> {
    if terms.len() == 1 && terms[0].path.is_empty() {
        vec!["∅".into()]
    } else {
        (1..=terms.len()).map(|i| format!("D{i}")).collect()
    }
}

/// `lcm` of every invariant factor, the modulus `m` in `q ≡ 1 mod m` that
/// resolves all torsion counts.
pub fn torsion_modulus(all_terms: &[Vec<PathTerm>]) -> Result<u64> {
    let mut m = 1u64;
    for t in all_terms.iter().flatten() {
        for c in &t.structure.invariant_factors {
            let c = crate::abelianlat::to_u64(c)?;
            m = m.lcm(&c);
        }
    }
    Ok(m)
}

/// Relations and realised region patterns of one element at `q − 1 = m·P`.
#[derive(Clone, Debug, PartialEq)]
pub struct GenericShape {
    pub relations: Vec<Vec<Relation>>,
    pub patterns: Vec<Vec<usize>>,
}

impl GenericShape {
    pub fn at(terms: &[PathTerm], d: usize, n: &BigInt) -> Result<GenericShape> {
        Ok(GenericShape { relations: relation_matrix(terms, n), patterns: region_patterns(terms, d, n)? })
    }
}

/// Smallest prime power `q ≡ 1 mod m` at which every element's relations
/// and region patterns agree with the generic ones.
pub fn choose_region_q(all_terms: &[Vec<PathTerm>], generic: &[GenericShape], d: usize, m: u64) -> Result<u64> {
    for q in admissible_q(m).take_while(|&q| q <= MAX_REGION_Q) {
        let n = (q - 1).into();
        let ok: Result<bool> = all_terms.par_iter().zip(generic).try_fold(
            || true,
            |acc, (terms, gen)| Ok(acc && GenericShape::at(terms, d, &n)? == *gen),
        ).try_reduce(|| true, |a, b| Ok(a && b));
        if ok? {
            return Ok(q);
        }
    }
    Err(Error::Guard(format!("no q <= {MAX_REGION_Q} with q = 1 mod {m} avoids degenerate relations or regions")))
}

fn element_report(
    engine: &Engine,
    w: &ExtAffineElement,
    terms: &[PathTerm],
    generic: GenericShape,
    m: u64,
    region_q: u64,
) -> Result<ElementReport> {
    let g = &engine.g;
    let d = engine.d();
    let labels = path_labels(terms);
    let paths = terms
        .iter()
        .zip(&labels)
        .map(|(t, label)| PathReport {
            label: label.clone(),
            edges: t.path.edge_names(g),
            length: t.length(),
            rank: t.root_system.rank,
            roots: t.root_system.labels(g),
            isom: t.structure.render(),
            free_rank: t.structure.free_rank,
            invariant_factors: t.structure.invariant_factors.iter().map(|c| c.to_string()).collect(),
            a: t.a,
            b: t.b,
            c: t.c,
            lattice: t.lattice.generators.clone(),
        })
        .collect();
    let mut degenerate_q = Vec::new();
    for q in admissible_q(m).take(STABILITY_SAMPLES) {
        if GenericShape::at(terms, d, &(q - 1).into())? != generic {
            degenerate_q.push(q);
        }
    }
    let regions: Vec<RegionReport> = regions_with_witnesses(terms, d, region_q)?
        .into_iter()
        .map(|r| RegionReport {
            active: r.active.iter().map(|&i| labels[i].clone()).collect(),
            witness: r.witness,
            case: render_case(&case_terms(terms, &r.active, m), d),
        })
        .collect();
    let mut cases: Vec<String> = Vec::new();
    for r in &regions {
        if !cases.contains(&r.case) {
            cases.push(r.case.clone());
        }
    }
    Ok(ElementReport {
        w: format_element(g, w),
        lambda: g.datum.display_coweight(&w.lambda),
        word: format_word(g.word(w.wbar)),
        length: ext_length(g, w),
        paths,
        inclusions: render_inclusions(&labels, &generic.relations),
        relations: generic.relations,
        degenerate_q,
        regions,
        cases,
    })
}

/// Reports for `elements`; `assume` fixes `m` in `q ≡ 1 mod m`, otherwise
/// it is inferred from the torsion, and `region_q` overrides the sample.
pub fn build_report(
    engine: &Engine,
    elements: &[ExtAffineElement],
    assume: Option<u64>,
    region_q: Option<u64>,
) -> Result<Report> {
    let g = &engine.g;
    let all_terms: Vec<Vec<PathTerm>> =
        elements.par_iter().map(|w| engine.path_terms(w)).collect::<Result<_>>()?;
    let m = match assume {
        Some(0) => return Err(Error::Invalid("assumption modulus must be positive".into())),
        Some(m) => m,
        None => torsion_modulus(&all_terms)?,
    };
    let generic: Vec<GenericShape> = all_terms
        .par_iter()
        .map(|t| GenericShape::at(t, engine.d(), &generic_modulus(m)))
        .collect::<Result<_>>()?;
    let region_q = match region_q {
        Some(q) if q < 2 => return Err(Error::Invalid(format!("q must be at least 2, got {q}"))),
        Some(q) => q,
        None => choose_region_q(&all_terms, &generic, engine.d(), m)?,
    };
    let reports = elements
        .par_iter()
        .zip(&all_terms)
        .zip(generic)
        .map(|((w, terms), rel)| element_report(engine, w, terms, rel, m, region_q))
        .collect::<Result<_>>()?;
    Ok(Report {
        schema: SCHEMA.into(),
        group: g.datum.name(),
        mu: g.datum.display_coweight(&engine.mu),
        lt_mu_length: engine.lt_mu,
        d: engine.d(),
        assumption_modulus: m,
        region_q,
        ordering: engine
            .ordering
            .ordered_roots
            .iter()
            .map(|&r| format!("s{}", format_word(g.reflection_word(r))))
            .collect(),
        elements: reports,
    })
}

/// Elements of one length sharing path rows and inclusion relations.
#[derive(Clone, Debug, PartialEq)]
pub struct Block {
    pub length: u32,
    pub label: Option<String>,
    pub rows: Vec<String>,
    pub inclusions: Option<String>,
    pub elements: Vec<String>,
}

impl Block {
    pub fn header(&self) -> String {
        match &self.label {
            Some(x) => format!("== l(w) = {}, w in {x} ==", self.length),
            None => format!("== l(w) = {} ==", self.length),
        }
    }
}

/// Clusters elements by shape within each length. Labels `X1, X2, …` are
/// given only at lengths with several clusters, numbered through the table
/// in order of length and then of first element.
pub fn blocks(report: &Report) -> Vec<Block> {
    let mut lengths: Vec<u32> = report.elements.iter().map(|e| e.length).collect();
    lengths.sort_unstable();
    lengths.dedup();
    let mut out = Vec::new();
    let mut counter = 0;
    for len in lengths {
        let mut clusters: Vec<Block> = Vec::new();
        for e in report.elements.iter().filter(|e| e.length == len) {
            let rows: Vec<String> = e.paths.iter().map(PathReport::row).collect();
            match clusters.iter_mut().find(|b| b.rows == rows && b.inclusions == e.inclusions) {
                Some(b) => b.elements.push(e.w.clone()),
                None => clusters.push(Block {
                    length: len,
                    label: None,
                    rows,
                    inclusions: e.inclusions.clone(),
                    elements: vec![e.w.clone()],
                }),
            }
        }
        if clusters.len() > 1 {
            for b in &mut clusters {
                counter += 1;
                b.label = Some(format!("X{counter}"));
            }
        }
        out.extend(clusters);
    }
    out
}

pub const TABLE_HEADER: &str = "Path | l(D) | rank(J) | Isom. class | A | B | C";

pub fn render_block(b: &Block) -> String {
    let mut s = format!("{}\n{TABLE_HEADER}\n", b.header());
    for r in &b.rows {
        s.push_str(r);
        s.push('\n');
    }
    if let Some(inc) = &b.inclusions {
        s.push_str(&format!("Inclusions: {inc}\n"));
    }
    s.push_str(&format!("Elements ({}): {}\n", b.elements.len(), b.elements.join(", ")));
    s
}

fn render_preamble(report: &Report) -> String {
    let mu = format!("({})", report.mu.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
    format!(
        "Group: {}\nmu: {mu}\nl(t_mu): {}\nd: {}\nAdmissible elements: {}\nAssumption: q = 1 mod {}\nRegion q: {}\nOrdering: {}\n",
        report.group,
        report.lt_mu_length,
        report.d,
        report.elements.len(),
        report.assumption_modulus,
        report.region_q,
        report.ordering.join(" < "),
    )
}

/// The full table; depends on nothing but the report. Empty when the report
/// lists no elements.
pub fn render_table(report: &Report) -> String {
    if report.elements.is_empty() {
        return String::new();
    }
    let mut s = render_preamble(report);
    for b in blocks(report) {
        s.push('\n');
        s.push_str(&render_block(&b));
    }
    s
}

/// Paths, relations, regions and cases of one element.
pub fn render_element(report: &Report, e: &ElementReport) -> String {
    let mut s = format!("w: {}\nl(w): {}\n{TABLE_HEADER}\n", e.w, e.length);
    for p in &e.paths {
        s.push_str(&p.row());
        s.push('\n');
    }
    for p in &e.paths {
        s.push_str(&format!("E({}) = {{{}}}; J = {{{}}}\n", p.label, p.edges.join(", "), p.roots.join(", ")));
    }
    if let Some(inc) = &e.inclusions {
        s.push_str(&format!("Inclusions: {inc}\n"));
    }
    if !e.degenerate_q.is_empty() {
        let qs: Vec<String> = e.degenerate_q.iter().map(|q| q.to_string()).collect();
        s.push_str(&format!("Relations differ from the generic ones at q = {}\n", qs.join(", ")));
    }
    s.push_str(&format!(
        "Regions at q = {} (q = 1 mod {}):\n",
        report.region_q, report.assumption_modulus
    ));
    for r in &e.regions {
        let w: Vec<String> = r.witness.iter().map(|x| x.to_string()).collect();
        s.push_str(&format!("  [{}] n = ({}): {}\n", r.active.join(", "), w.join(","), r.case));
    }
    s
}

pub fn to_json(report: &Report) -> Result<String> {
    serde_json::to_string_pretty(report).map_err(|e| Error::Invalid(e.to_string()))
}

pub fn from_json(s: &str) -> Result<Report> {
    let r: Report = serde_json::from_str(s).map_err(|e| Error::Invalid(format!("bad report JSON: {e}")))?;
    if r.schema != SCHEMA {
        return Err(Error::Invalid(format!("unsupported schema {}", r.schema)));
    }
    Ok(r)
}

/// `mu` display used in file headers.
pub fn describe(engine: &Engine) -> String {
    format!("{} mu = {}", engine.g.datum.name(), format_coweight(&engine.g, &engine.mu))
}
