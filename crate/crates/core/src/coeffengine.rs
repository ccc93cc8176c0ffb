//! Path terms of the coefficient formula, its brute-force character-sum
//! oracle, the Iwahori-level path sum, the Drinfeld closed form, and the case
//! analysis over regions cut out by the finite critical groups.
//!
//! Every value is kept as a numerator polynomial in `t = q^r` over the
//! common denominator `(t − 1)^d`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::abelianlat::{
    lattice_for, quotient_structure, relation_reduced, AbelianStructure, LatticePresentation, ReducedLattice,
    Relation,
};
use crate::affine::{ext_length, is_admissible, minimal_coset_rep, sort_elements, AffineBruhat, ExtAffineElement};
use crate::bruhatpaths::{increasing_paths, path_root_system, BruhatPath, RootSubsystem};
use crate::error::{Error, Result};
use crate::poly::{cyclotomic, Poly};
use crate::rootdata::{Coweight, Family};
use crate::weylgroup::{longest_word, ElemId, ReflectionOrdering, WeylGroup};

/// Largest `(q−1)^d` enumerated by the oracle and the region scan.
pub const MAX_ENUMERATION: u64 = 10_000_000;

/// Prime used to build a modulus `m·P` standing in for a generic `q − 1`.
pub const GENERIC_PRIME: u64 = 1_000_003;

/// One path `Δ` with the data of its term
/// `δ·|S^tors ∩ K_{q−1}|·(q−1)^A·t^B·(1−t)^C`.
#[derive(Clone, Debug)]
pub struct PathTerm {
    pub path: BruhatPath,
    pub root_system: RootSubsystem,
    pub lattice: LatticePresentation,
    pub structure: AbelianStructure,
    pub a: u32,
    pub b: u32,
    pub c: i64,
    pub reduced: ReducedLattice,
}

impl PathTerm {
    pub fn length(&self) -> usize {
        self.path.len()
    }

    /// `Π gcd(c_i, q−1)`.
    pub fn torsion_at(&self, q: u64) -> BigInt {
        let n = BigInt::from(q - 1);
        self.structure.invariant_factors.iter().map(|c| c.gcd(&n)).product()
    }

    /// `δ(s, w, J_Δ)`: the residues of `N_r(s)` lie in the critical group.
    pub fn delta(&self, s: &[i64], q: u64) -> bool {
        self.reduced.contains(s, &BigInt::from(q - 1))
    }

    /// `t^B (1−t)^{ℓ(Δ)}`.
    pub fn t_part(&self) -> Poly {
        Poly::one_minus_x().pow(self.length() as u32).shift(self.b as usize)
    }
}

/// Coefficient computations for one group, one `μ` and one reflection
/// ordering.
pub struct Engine {
    pub g: WeylGroup,
    pub mu: Coweight,
    pub ordering: ReflectionOrdering,
    pub lt_mu: u32,
    wl_inv: HashMap<Coweight, ElemId>,
}

impl Engine {
    pub fn new(g: WeylGroup, mu: Coweight, ordering: ReflectionOrdering) -> Result<Engine> {
        is_admissible(&g, &mu, &ExtAffineElement::translation(mu.clone()))?;
        let mut wl_inv = HashMap::new();
        for lambda in g.datum.weyl_orbit(&mu) {
            let wl = minimal_coset_rep(&g, &lambda)?;
            wl_inv.insert(lambda, g.inverse(wl));
        }
        let lt_mu = ext_length(&g, &ExtAffineElement::translation(mu.clone()));
        Ok(Engine { g, mu, ordering, lt_mu, wl_inv })
    }

    /// Engine for `GL_n` or `GSp_2n` with `μ` in display coordinates and the
    /// ordering read from `w0_word`, or the preset when `None`.
    pub fn build(family: Family, n: usize, mu_display: &[i64], w0_word: Option<&[u8]>) -> Result<Engine> {
        let g = WeylGroup::from_family(family, n)?;
        let mu = g.datum.parse_coweight(mu_display)?;
        let ordering = match w0_word {
            Some(word) => ReflectionOrdering::from_reduced_word(&g, word)?,
            None => ReflectionOrdering::from_reduced_word(&g, &longest_word(&g.datum))?,
        };
        Engine::new(g, mu, ordering)
    }

    pub fn d(&self) -> usize {
        self.g.datum.d
    }

    pub fn is_admissible(&self, w: &ExtAffineElement) -> bool {
        self.wl_inv
            .get(&w.lambda)
            .is_some_and(|&wi| self.g.bruhat_leq(self.g.mul(wi, w.wbar), wi))
    }

    pub fn admissible_set(&self) -> Vec<ExtAffineElement> {
        let g = &self.g;
        let mut out = Vec::new();
        for (lambda, &wi) in &self.wl_inv {
            for w in g.elements() {
                if g.bruhat_leq(g.mul(wi, w), wi) {
                    out.push(ExtAffineElement { lambda: lambda.clone(), wbar: w });
                }
            }
        }
        sort_elements(g, &mut out);
        out
    }

    /// `ℓ(t_μ) − ℓ(w)`.
    pub fn length_gap(&self, w: &ExtAffineElement) -> u32 {
        self.lt_mu.saturating_sub(ext_length(&self.g, w))
    }

    /// Increasing paths from `w_λ⁻¹w̄` to `w_λ⁻¹`, sorted by length, size of
    /// `J_Δ`, then edge positions. Empty for non-admissible `w`.
    pub fn paths(&self, w: &ExtAffineElement) -> Vec<BruhatPath> {
        let g = &self.g;
        let Some(&wi) = self.wl_inv.get(&w.lambda) else {
            return Vec::new();
        };
        let mut paths = increasing_paths(g, g.mul(wi, w.wbar), wi, &self.ordering);
        let mut keyed: Vec<((usize, usize, Vec<usize>), BruhatPath)> = paths
            .drain(..)
            .map(|p| {
                let key = (
                    p.len(),
                    path_root_system(g, &p).len(),
                    p.edges.iter().map(|&r| self.ordering.position[r]).collect(),
                );
                (key, p)
            })
            .collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed.into_iter().map(|(_, p)| p).collect()
    }

    /// One term per path; empty for non-admissible `w`.
    pub fn path_terms(&self, w: &ExtAffineElement) -> Result<Vec<PathTerm>> {
        if !self.is_admissible(w) {
            return Ok(Vec::new());
        }
        let g = &self.g;
        let d = self.d();
        let gap = self.length_gap(w) as usize;
        let winv = g.inverse(w.wbar);
        self.paths(w)
            .into_iter()
            .map(|path| {
                if path.edge_product(g) != winv {
                    return Err(Error::Invariant("edge product differs from the inverse finite part".into()));
                }
                let root_system = path_root_system(g, &path);
                let lattice = lattice_for(g, w, &root_system)?;
                let structure = quotient_structure(&lattice);
                let a = (d - 1)
                    .checked_sub(root_system.rank)
                    .ok_or_else(|| Error::Invariant("path root system has full rank".into()))?;
                if path.len() > gap || !(gap - path.len()).is_multiple_of(2) {
                    return Err(Error::Invariant(format!(
                        "path length {} incompatible with length gap {gap}",
                        path.len()
                    )));
                }
                let reduced = lattice.reduced();
                Ok(PathTerm {
                    b: ((gap - path.len()) / 2) as u32,
                    c: path.len() as i64 - d as i64,
                    a: a as u32,
                    path,
                    root_system,
                    lattice,
                    structure,
                    reduced,
                })
            })
            .collect()
    }

    fn check_inputs(&self, s: &[i64], q: u64) -> Result<()> {
        if q < 2 {
            return Err(Error::Invalid(format!("q must be at least 2, got {q}")));
        }
        if s.len() != self.d() {
            return Err(Error::Invalid(format!("s needs {} residues, got {}", self.d(), s.len())));
        }
        Ok(())
    }

    /// `Σ_Δ δ·torsion·(q−1)^A·t^B(1−t)^{ℓ(Δ)}`; the coefficient is this over
    /// `(t−1)^d`.
    pub fn numerator(&self, terms: &[PathTerm], s: &[i64], q: u64) -> Result<Poly> {
        self.check_inputs(s, q)?;
        let qm1 = BigInt::from(q - 1);
        let mut acc = Poly::zero();
        for t in terms.iter().filter(|t| t.delta(s, q)) {
            let scale = t.torsion_at(q) * num_traits::pow(qm1.clone(), t.a as usize);
            acc = acc + t.t_part().scale(&scale);
        }
        Ok(acc)
    }

    pub fn coefficient_value(&self, w: &ExtAffineElement, s: &[i64], q: u64, r: u32) -> Result<BigRational> {
        self.check_inputs(s, q)?;
        let terms = self.path_terms(w)?;
        Ok(evaluate(&self.numerator(&terms, s, q)?, q, r, self.d()))
    }

    /// The character sum over every `m ∈ (ℤ/(q−1))^d`, computed in
    /// `ℤ[t][x]/(Φ_{q−1}(x))` and asserted to reduce to a constant.
    pub fn bruteforce_numerator(&self, terms: &[PathTerm], w: &ExtAffineElement, s: &[i64], q: u64) -> Result<Poly> {
        self.check_inputs(s, q)?;
        let d = self.d();
        let n = (q - 1) as i64;
        enumeration_guard(q - 1, d)?;
        let datum = &self.g.datum;
        let basis_images: Vec<Vec<i64>> = (0..d)
            .map(|k| {
                let mut e = vec![0; d];
                e[k] = 1;
                self.g.act_weight(w.wbar, &e)
            })
            .collect();
        let t_parts: Vec<Poly> = terms.iter().map(PathTerm::t_part).collect();
        let mut strata: HashMap<Vec<bool>, Poly> = HashMap::new();
        let mut by_power = vec![Poly::zero(); n as usize];
        let mut m = vec![0i64; d];
        loop {
            let fixed = (0..d).all(|j| {
                let image: i64 = (0..d).map(|k| m[k] * basis_images[k][j]).sum();
                (image - m[j]).rem_euclid(n) == 0
            });
            if fixed && dot(&w.lambda, &m).rem_euclid(n) == 0 {
                let mask: Vec<bool> =
                    datum.positive_coroots.iter().map(|cv| dot(cv, &m).rem_euclid(n) == 0).collect();
                let stratum = strata.entry(mask.clone()).or_insert_with(|| {
                    terms
                        .iter()
                        .zip(&t_parts)
                        .filter(|(t, _)| t.root_system.root_indices.iter().all(|&r| mask[r]))
                        .fold(Poly::zero(), |acc, (_, p)| acc + p.clone())
                });
                let k = (-dot(s, &m)).rem_euclid(n) as usize;
                by_power[k] = &by_power[k] + &*stratum;
            }
            if !advance(&mut m, n) {
                break;
            }
        }
        let phi = cyclotomic(n as usize);
        let deg = phi.degree().expect("cyclotomic polynomial is nonzero");
        for k in (deg..n as usize).rev() {
            let top = std::mem::replace(&mut by_power[k], Poly::zero());
            if top.is_zero() {
                continue;
            }
            for i in 0..deg {
                let c = phi.coeff(i);
                if !c.is_zero() {
                    by_power[k - deg + i] = &by_power[k - deg + i] - &top.scale(&c);
                }
            }
        }
        if by_power[1..deg].iter().any(|p| !p.is_zero()) {
            return Err(Error::Invariant("character sum does not reduce to a rational constant".into()));
        }
        Ok(by_power.swap_remove(0))
    }

    pub fn bruteforce_value(&self, w: &ExtAffineElement, s: &[i64], q: u64, r: u32) -> Result<BigRational> {
        let terms = self.path_terms(w)?;
        Ok(evaluate(&self.bruteforce_numerator(&terms, w, s, q)?, q, r, self.d()))
    }

    /// `Σ_Δ t^B (1−t)^{ℓ(Δ)}` over all paths.
    pub fn iwahori_polynomial(&self, terms: &[PathTerm]) -> Poly {
        terms.iter().fold(Poly::zero(), |acc, t| acc + t.t_part())
    }

    pub fn iwahori_coefficient(&self, w: &ExtAffineElement, q: u64, r: u32) -> Result<BigInt> {
        let terms = self.path_terms(w)?;
        Ok(self.iwahori_polynomial(&terms).eval(&num_traits::pow(BigInt::from(q), r as usize)))
    }

    fn require_drinfeld(&self) -> Result<()> {
        let d = self.d();
        let mut e1 = vec![0; d];
        e1[0] = 1;
        if self.g.datum.family != Family::GL || self.mu != e1 {
            return Err(Error::Unsupported("closed form needs GL_d with mu = (1,0,...,0)".into()));
        }
        Ok(())
    }

    /// `S(w) = {j : w ≤ t_{e_j}}` in the affine Bruhat order.
    pub fn critical_index_set(&self, bruhat: &mut AffineBruhat, w: &ExtAffineElement) -> Result<Vec<usize>> {
        self.require_drinfeld()?;
        let d = self.d();
        Ok((0..d)
            .filter(|&j| {
                let mut e = vec![0; d];
                e[j] = 1;
                bruhat.leq(w, &ExtAffineElement::translation(e))
            })
            .collect())
    }

    /// `(q−1)^{d−|S|}(1−t)^{|S|−1}` when `s_i ≡ 0` off `S(w)`, else 0.
    pub fn drinfeld_numerator(
        &self,
        bruhat: &mut AffineBruhat,
        w: &ExtAffineElement,
        s: &[i64],
        q: u64,
    ) -> Result<Poly> {
        self.require_drinfeld()?;
        self.check_inputs(s, q)?;
        if !self.is_admissible(w) {
            return Ok(Poly::zero());
        }
        let set = self.critical_index_set(bruhat, w)?;
        if set.is_empty() {
            return Err(Error::Invariant("admissible element below no translation".into()));
        }
        let n = (q - 1) as i64;
        if (0..self.d()).any(|i| !set.contains(&i) && s[i].rem_euclid(n) != 0) {
            return Ok(Poly::zero());
        }
        let scale = num_traits::pow(BigInt::from(q - 1), self.d() - set.len());
        Ok(Poly::one_minus_x().pow(set.len() as u32 - 1).scale(&scale))
    }

    /// The Drinfeld closed form evaluated at `t = q^r`.
    pub fn drinfeld_coefficient(&self, w: &ExtAffineElement, s: &[i64], q: u64, r: u32) -> Result<BigRational> {
        let mut bruhat = AffineBruhat::new(&self.g)?;
        Ok(evaluate(&self.drinfeld_numerator(&mut bruhat, w, s, q)?, q, r, self.d()))
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Next vector of `(ℤ/n)^d` in lexicographic order; false after the last.
fn advance(m: &mut [i64], n: i64) -> bool {
    for x in m.iter_mut().rev() {
        *x += 1;
        if *x < n {
            return true;
        }
        *x = 0;
    }
    false
}

pub fn enumeration_guard(n: u64, d: usize) -> Result<u64> {
    let size = (n as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if size > MAX_ENUMERATION as u128 {
        return Err(Error::Guard(format!("(q-1)^d = {n}^{d} exceeds {MAX_ENUMERATION}")));
    }
    Ok(size as u64)
}

/// `N(t)/(t−1)^d` at `t = q^r`.
pub fn evaluate(numerator: &Poly, q: u64, r: u32, d: usize) -> BigRational {
    let t = num_traits::pow(BigInt::from(q), r as usize);
    let den = num_traits::pow(&t - 1, d);
    BigRational::new(numerator.eval(&t), den)
}

/// Membership pattern of one region with its lexicographically least
/// residue vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub active: Vec<usize>,
    pub witness: Vec<i64>,
}

/// Largest number of distinct critical groups handled by `region_patterns`.
pub const MAX_DISTINCT_GROUPS: usize = 16;

/// Membership patterns realised in `(ℤ/N)^d`, found without enumeration:
/// the number of vectors lying in exactly the groups of a pattern is an
/// alternating sum of intersection orders.
pub fn region_patterns(terms: &[PathTerm], d: usize, n: &BigInt) -> Result<Vec<Vec<usize>>> {
    let rel = relation_matrix(terms, n);
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..terms.len() {
        match classes.iter_mut().find(|c| rel[c[0]][i] == Relation::Equal) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    let k = classes.len();
    if k > MAX_DISTINCT_GROUPS {
        return Err(Error::Guard(format!("{k} distinct critical groups exceed {MAX_DISTINCT_GROUPS}")));
    }
    let mut exact: Vec<BigInt> = (0..1usize << k)
        .map(|mask| {
            let ls: Vec<&ReducedLattice> = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| &terms[classes[b][0]].reduced).collect();
            crate::abelianlat::intersection_order(&ls, d, n)
        })
        .collect();
    for b in 0..k {
        for mask in 0..1usize << k {
            if mask >> b & 1 == 0 {
                let sup = exact[mask | 1 << b].clone();
                exact[mask] -= sup;
            }
        }
    }
    let mut out: Vec<Vec<usize>> = (0..1usize << k)
        .filter(|&mask| exact[mask].is_positive())
        .map(|mask| {
            let mut a: Vec<usize> = (0..k).filter(|b| mask >> b & 1 == 1).flat_map(|b| classes[b].clone()).collect();
            a.sort_unstable();
            a
        })
        .collect();
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    Ok(out)
}

/// Classifies `(ℤ/(q−1))^d` by which critical groups contain each vector.
pub fn regions(terms: &[PathTerm], d: usize, q: u64) -> Result<Vec<Region>> {
    enumeration_guard(q - 1, d)?;
    scan_regions(terms, d, q, None)
}

/// Regions for the patterns realised at `q`, each with its lexicographically
/// least witness; the scan stops once every pattern has one.
pub fn regions_with_witnesses(terms: &[PathTerm], d: usize, q: u64) -> Result<Vec<Region>> {
    let patterns = region_patterns(terms, d, &BigInt::from(q - 1))?;
    let out = scan_regions(terms, d, q, Some(patterns.len()))?;
    if out.iter().map(|r| &r.active).ne(patterns.iter()) {
        return Err(Error::Invariant(format!("region scan at q = {q} disagrees with the intersection counts")));
    }
    Ok(out)
}

fn scan_regions(terms: &[PathTerm], d: usize, q: u64, expected: Option<usize>) -> Result<Vec<Region>> {
    let n = q - 1;
    let testers: Vec<_> = terms.iter().map(|t| t.reduced.tester(n)).collect();
    let mut found: BTreeMap<Vec<usize>, Vec<i64>> = BTreeMap::new();
    let mut m = vec![0i64; d];
    let mut steps = 0u64;
    loop {
        let active: Vec<usize> = testers.iter().enumerate().filter(|(_, t)| t.contains(&m)).map(|(i, _)| i).collect();
        found.entry(active).or_insert_with(|| m.clone());
        steps += 1;
        if Some(found.len()) == expected || !advance(&mut m, n as i64) {
            break;
        }
        if steps >= MAX_ENUMERATION {
            return Err(Error::Guard(format!("region scan at q = {q} exceeds {MAX_ENUMERATION} vectors")));
        }
    }
    let mut out: Vec<Region> = found.into_iter().map(|(active, witness)| Region { active, witness }).collect();
    out.sort_by(|a, b| (a.active.len(), &a.active).cmp(&(b.active.len(), &b.active)));
    Ok(out)
}

/// One grouped summand `coeff·Π gcd(g,q−1)·(q−1)^A·q^{rB}·(1−q^r)^C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseTerm {
    pub coeff: BigInt,
    pub gcds: Vec<BigInt>,
    pub a: u32,
    pub b: u32,
    pub c: i64,
}

/// Sums the active terms under `q ≡ 1 mod m`: torsion factors dividing `m`
/// become integers, the rest stay as `gcd(c, q−1)`.
pub fn case_terms(terms: &[PathTerm], active: &[usize], m: u64) -> Vec<CaseTerm> {
    let mb = BigInt::from(m);
    let mut grouped: BTreeMap<(i64, std::cmp::Reverse<u32>, std::cmp::Reverse<u32>, Vec<BigInt>), BigInt> =
        BTreeMap::new();
    for &i in active {
        let t = &terms[i];
        let mut coeff = BigInt::one();
        let mut gcds = Vec::new();
        for c in &t.structure.invariant_factors {
            if mb.is_multiple_of(c) {
                coeff *= c;
            } else {
                gcds.push(c.clone());
            }
        }
        let key = (t.c, std::cmp::Reverse(t.a), std::cmp::Reverse(t.b), gcds);
        *grouped.entry(key).or_insert_with(BigInt::zero) += coeff;
    }
    grouped
        .into_iter()
        .map(|((c, a, b, gcds), coeff)| CaseTerm { coeff, gcds, a: a.0, b: b.0, c })
        .collect()
}

fn exponent(e: i64) -> String {
    if (0..10).contains(&e) {
        format!("^{e}")
    } else {
        format!("^{{{e}}}")
    }
}

fn render_term(t: &CaseTerm) -> String {
    let mut factors = String::new();
    for g in &t.gcds {
        factors.push_str(&format!("gcd({g},q-1)"));
    }
    match t.a {
        0 => {}
        1 => factors.push_str("(q-1)"),
        a => factors.push_str(&format!("(q-1){}", exponent(a as i64))),
    }
    match t.b {
        0 => {}
        1 => factors.push_str("q^r"),
        b => factors.push_str(&format!("q^{{{b}r}}")),
    }
    match t.c {
        0 => {}
        1 => factors.push_str("(1-q^r)"),
        c => factors.push_str(&format!("(1-q^r){}", exponent(c))),
    }
    if factors.is_empty() {
        t.coeff.to_string()
    } else if t.coeff.is_one() {
        factors
    } else {
        format!("{}{factors}", t.coeff)
    }
}

/// `(−1)^d` times the sum, as `2`, `-2`, `(-1)(...)` or `0`.
pub fn render_case(terms: &[CaseTerm], d: usize) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let body = terms.iter().map(render_term).collect::<Vec<_>>().join(" + ");
    if d.is_multiple_of(2) {
        body
    } else if terms.len() == 1 && terms[0].a == 0 && terms[0].b == 0 && terms[0].c == 0 && terms[0].gcds.is_empty()
    {
        format!("-{body}")
    } else {
        format!("(-1)({body})")
    }
}

/// Pairwise relations of the critical groups modulo `n`.
pub fn relation_matrix(terms: &[PathTerm], n: &BigInt) -> Vec<Vec<Relation>> {
    let k = terms.len();
    let mut out = vec![vec![Relation::Equal; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let r = relation_reduced(&terms[i].lattice, &terms[i].reduced, &terms[j].lattice, &terms[j].reduced, n);
            out[i][j] = r;
            out[j][i] = r.flip();
        }
    }
    out
}

/// `m·P` with `P` a large prime: relations that hold for every `q ≡ 1 mod m`
/// outside finitely many exceptions.
pub fn generic_modulus(m: u64) -> BigInt {
    BigInt::from(m) * BigInt::from(GENERIC_PRIME)
}

pub fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut x = q;
            while x.is_multiple_of(p) {
                x /= p;
            }
            return x == 1;
        }
        p += 1;
    }
    true
}

/// Prime powers `q ≥ 3` with `q ≡ 1 mod m`, ascending.
pub fn admissible_q(m: u64) -> impl Iterator<Item = u64> {
    (3u64..).filter(move |&q| (q - 1).is_multiple_of(m) && is_prime_power(q))
}

/// Chain `A(D1) ⊂ A(D2) = A(D3)` when the groups are totally ordered,
/// otherwise equality classes followed by covering relations, `; `
/// separated. `None` for fewer than two groups.
pub fn render_inclusions(labels: &[String], rel: &[Vec<Relation>]) -> Option<String> {
    let k = labels.len();
    if k < 2 {
        return None;
    }
    let le = |i: usize, j: usize| matches!(rel[i][j], Relation::Equal | Relation::Subset);
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..k {
        match classes.iter_mut().find(|c| rel[c[0]][i] == Relation::Equal) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    let name = |i: usize| format!("A({})", labels[i]);
    let class_name = |c: &Vec<usize>| c.iter().map(|&i| name(i)).collect::<Vec<_>>().join(" = ");
    let total = classes.iter().all(|a| classes.iter().all(|b| le(a[0], b[0]) || le(b[0], a[0])));
    if total {
        let mut sorted = classes.clone();
        sorted.sort_by_key(|c| classes.iter().filter(|o| le(o[0], c[0])).count());
        return Some(sorted.iter().map(class_name).collect::<Vec<_>>().join(" ⊂ "));
    }
    let mut parts: Vec<String> = classes.iter().filter(|c| c.len() > 1).map(class_name).collect();
    let lt = |a: &Vec<usize>, b: &Vec<usize>| rel[a[0]][b[0]] == Relation::Subset;
    for a in &classes {
        for b in &classes {
            if lt(a, b) && !classes.iter().any(|c| lt(a, c) && lt(c, b)) {
                parts.push(format!("{} ⊂ {}", name(a[0]), name(b[0])));
            }
        }
    }
    Some(parts.join("; "))
}
