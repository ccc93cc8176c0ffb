//! Finite Weyl group arithmetic.
//!
//! Every element is enumerated eagerly and interned as an [`ElemId`]; the
//! matrix of an element acts on cocharacters (column vectors). Words
//! `s_{i_1…i_k}` denote the product `s_{i_1} ⋯ s_{i_k}`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootdata::{Coweight, Family, RootDatum, Weight};

pub type ElemId = u32;

/// Largest group the registry will enumerate.
pub const MAX_GROUP_ORDER: usize = 5040;

#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub datum: RootDatum,
    d: usize,
    mats: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, ElemId>,
    lengths: Vec<u32>,
    words: Vec<Vec<u8>>,
    inv: Vec<ElemId>,
    rmul_simple: Vec<ElemId>,
    refl_elems: Vec<ElemId>,
    refl_of: HashMap<ElemId, usize>,
    rmul_refl: Vec<ElemId>,
    lower: Vec<Vec<u64>>,
    w0: ElemId,
    refl_words: Vec<Vec<u8>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reflection {
    pub root_index: usize,
    pub element: ElemId,
}

fn group_order(family: Family, n: usize) -> usize {
    let fact: usize = (1..=n).product();
    match family {
        Family::GL => fact,
        Family::GSp => fact << n,
    }
}

fn matmul(d: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut c = vec![0; d * d];
    for i in 0..d {
        for k in 0..d {
            let aik = a[i * d + k];
            if aik == 0 {
                continue;
            }
            for j in 0..d {
                c[i * d + j] += aik * b[k * d + j];
            }
        }
    }
    c
}

fn bit_set(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn bit_get(bits: &[u64], i: usize) -> bool {
    bits[i / 64] >> (i % 64) & 1 == 1
}

impl WeylGroup {
    pub fn new(datum: RootDatum) -> Result<WeylGroup> {
        let order = group_order(datum.family, datum.n);
        if order > MAX_GROUP_ORDER {
            return Err(Error::Config(format!(
                "Weyl group of {} has order {order}, above the supported {MAX_GROUP_ORDER}",
                datum.name()
            )));
        }
        let d = datum.d;
        let reflection_matrix = |r: usize| -> Vec<i64> {
            let mut m = vec![0; d * d];
            for j in 0..d {
                let mut e = vec![0; d];
                e[j] = 1;
                let col = datum.reflect_coweight(r, &e);
                for i in 0..d {
                    m[i * d + j] = col[i];
                }
            }
            m
        };
        let gens: Vec<Vec<i64>> = datum.simple_indices.iter().map(|&r| reflection_matrix(r)).collect();
        let rank = gens.len();

        let mut identity = vec![0; d * d];
        for i in 0..d {
            identity[i * d + i] = 1;
        }
        let mut mats = vec![identity.clone()];
        let mut index = HashMap::new();
        index.insert(identity, 0u32);
        let mut lengths = vec![0u32];
        let mut rmul_simple: Vec<ElemId> = Vec::new();
        let mut head = 0;
        while head < mats.len() {
            for g in &gens {
                let p = matmul(d, &mats[head], g);
                let id = match index.get(&p) {
                    Some(&id) => id,
                    None => {
                        let id = mats.len() as ElemId;
                        index.insert(p.clone(), id);
                        mats.push(p);
                        lengths.push(lengths[head] + 1);
                        id
                    }
                };
                rmul_simple.push(id);
            }
            head += 1;
        }
        if mats.len() != order {
            return Err(Error::Invariant(format!(
                "enumerated {} elements, expected {order}",
                mats.len()
            )));
        }
        let size = mats.len();

        let mut words: Vec<Vec<u8>> = vec![Vec::new(); size];
        for w in 1..size {
            let (i, ws) = (0..rank)
                .map(|i| (i, rmul_simple[w * rank + i]))
                .find(|&(_, ws)| lengths[ws as usize] < lengths[w])
                .expect("nonidentity element has a descent");
            let mut word = words[ws as usize].clone();
            word.push(i as u8 + 1);
            words[w] = word;
        }

        let mut inv = vec![0; size];
        for w in 0..size {
            let mut acc: ElemId = 0;
            for &i in words[w].iter().rev() {
                acc = rmul_simple[acc as usize * rank + (i - 1) as usize];
            }
            inv[w] = acc;
        }

        let nroots = datum.num_roots();
        let refl_elems: Vec<ElemId> = (0..nroots)
            .map(|r| *index.get(&reflection_matrix(r)).expect("reflection lies in W"))
            .collect();
        let refl_of: HashMap<ElemId, usize> = refl_elems.iter().enumerate().map(|(r, &e)| (e, r)).collect();
        let mut rmul_refl = Vec::with_capacity(size * nroots);
        for m in &mats {
            for &t in &refl_elems {
                let p = matmul(d, m, &mats[t as usize]);
                rmul_refl.push(index[&p]);
            }
        }

        let blocks = size.div_ceil(64);
        let mut lower = Vec::with_capacity(size);
        for word in &words {
            let mut members: Vec<ElemId> = vec![0];
            let mut bits = vec![0u64; blocks];
            bit_set(&mut bits, 0);
            for &i in word {
                let extra: Vec<ElemId> = members
                    .iter()
                    .map(|&x| rmul_simple[x as usize * rank + (i - 1) as usize])
                    .filter(|&y| !bit_get(&bits, y as usize))
                    .collect();
                for y in extra {
                    if !bit_get(&bits, y as usize) {
                        bit_set(&mut bits, y as usize);
                        members.push(y);
                    }
                }
            }
            lower.push(bits);
        }

        let w0 = (0..size).max_by_key(|&w| lengths[w]).unwrap() as ElemId;

        let mut g = WeylGroup {
            datum,
            d,
            mats,
            index,
            lengths,
            words,
            inv,
            rmul_simple,
            refl_elems,
            refl_of,
            rmul_refl,
            lower,
            w0,
            refl_words: Vec::new(),
        };
        g.refl_words = g.compute_reflection_words();
        Ok(g)
    }

    pub fn from_family(family: Family, n: usize) -> Result<WeylGroup> {
        WeylGroup::new(RootDatum::new(family, n)?)
    }

    pub fn size(&self) -> usize {
        self.mats.len()
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn identity(&self) -> ElemId {
        0
    }

    pub fn w0(&self) -> ElemId {
        self.w0
    }

    pub fn elements(&self) -> impl Iterator<Item = ElemId> {
        0..self.size() as ElemId
    }

    pub fn length(&self, w: ElemId) -> u32 {
        self.lengths[w as usize]
    }

    pub fn matrix(&self, w: ElemId) -> &[i64] {
        &self.mats[w as usize]
    }

    /// Canonical reduced word: the last letter is the smallest right
    /// descent, recursively.
    pub fn word(&self, w: ElemId) -> &[u8] {
        &self.words[w as usize]
    }

    pub fn word_string(&self, w: ElemId) -> String {
        format_word(self.word(w))
    }

    pub fn inverse(&self, w: ElemId) -> ElemId {
        self.inv[w as usize]
    }

    pub fn simple(&self, i: usize) -> ElemId {
        self.rmul_simple[i - 1]
    }

    pub fn mul_simple(&self, w: ElemId, i: usize) -> ElemId {
        self.rmul_simple[w as usize * self.rank() + i - 1]
    }

    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        let p = matmul(self.d, self.matrix(a), self.matrix(b));
        self.index[&p]
    }

    pub fn from_word(&self, word: &[u8]) -> Result<ElemId> {
        let mut acc = self.identity();
        for &i in word {
            if i == 0 || i as usize > self.rank() {
                return Err(Error::Invalid(format!(
                    "simple reflection index {i} out of range 1..={}",
                    self.rank()
                )));
            }
            acc = self.mul_simple(acc, i as usize);
        }
        Ok(acc)
    }

    pub fn element_of_matrix(&self, m: &[i64]) -> Option<ElemId> {
        self.index.get(m).copied()
    }

    pub fn reflection_element(&self, root: usize) -> ElemId {
        self.refl_elems[root]
    }

    pub fn reflection_root(&self, w: ElemId) -> Option<usize> {
        self.refl_of.get(&w).copied()
    }

    /// `w · s_α` for the positive root with index `root`.
    pub fn mul_reflection(&self, w: ElemId, root: usize) -> ElemId {
        self.rmul_refl[w as usize * self.datum.num_roots() + root]
    }

    pub fn reflections(&self) -> Vec<Reflection> {
        self.refl_elems
            .iter()
            .enumerate()
            .map(|(root_index, &element)| Reflection { root_index, element })
            .collect()
    }

    /// Palindromic word `u i u⁻¹` naming the reflection of a positive root,
    /// with `u` of minimal length, lexicographically least over all reduced
    /// words of such `u`.
    pub fn reflection_word(&self, root: usize) -> &[u8] {
        &self.refl_words[root]
    }

    pub fn act_coweight(&self, w: ElemId, x: &[i64]) -> Coweight {
        let m = self.matrix(w);
        let d = self.d;
        (0..d).map(|i| (0..d).map(|j| m[i * d + j] * x[j]).sum()).collect()
    }

    /// Contragredient action `χ ↦ χ ∘ w⁻¹` on characters.
    pub fn act_weight(&self, w: ElemId, chi: &[i64]) -> Weight {
        let mi = self.matrix(self.inverse(w));
        let d = self.d;
        (0..d).map(|j| (0..d).map(|i| chi[i] * mi[i * d + j]).sum()).collect()
    }

    /// Image of a positive root under `w`, as `(index, is_positive)`.
    pub fn act_root(&self, w: ElemId, root: usize) -> (usize, bool) {
        let image = self.act_coweight(w, &self.datum.positive_coroots[root]);
        self.datum.coroot_index(&image).expect("W permutes coroots")
    }

    pub fn inversion_count(&self, w: ElemId) -> u32 {
        (0..self.datum.num_roots()).filter(|&r| !self.act_root(w, r).1).count() as u32
    }

    pub fn has_right_descent(&self, w: ElemId, i: usize) -> bool {
        self.length(self.mul_simple(w, i)) < self.length(w)
    }

    pub fn right_descents(&self, w: ElemId) -> Vec<usize> {
        (1..=self.rank()).filter(|&i| self.has_right_descent(w, i)).collect()
    }

    /// Bruhat order by the subword property, precomputed per element.
    pub fn bruhat_leq(&self, u: ElemId, v: ElemId) -> bool {
        bit_get(&self.lower[v as usize], u as usize)
    }

    /// Up to `limit` reduced words of `w`, in lexicographic order.
    pub fn reduced_words(&self, w: ElemId, limit: usize) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        let mut suffix = Vec::new();
        self.collect_words(w, &mut suffix, &mut out, limit);
        out.sort();
        out
    }

    fn collect_words(&self, w: ElemId, suffix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>, limit: usize) {
        if out.len() >= limit {
            return;
        }
        if self.length(w) == 0 {
            out.push(suffix.iter().rev().copied().collect());
            return;
        }
        for i in self.right_descents(w) {
            suffix.push(i as u8);
            self.collect_words(self.mul_simple(w, i), suffix, out, limit);
            suffix.pop();
        }
    }

    fn compute_reflection_words(&self) -> Vec<Vec<u8>> {
        let mut best: Vec<Option<Vec<u8>>> = vec![None; self.datum.num_roots()];
        let mut by_length: Vec<ElemId> = self.elements().collect();
        by_length.sort_by_key(|&u| self.length(u));
        for u in by_length {
            for i in 1..=self.rank() {
                let simple_root = self.datum.simple_indices[i - 1];
                let (r, positive) = self.act_root(u, simple_root);
                if !positive {
                    continue;
                }
                if best[r].as_ref().is_some_and(|b| b.len() < 2 * self.length(u) as usize + 1) {
                    continue;
                }
                for uw in self.reduced_words(u, usize::MAX) {
                    let mut word = uw.clone();
                    word.push(i as u8);
                    word.extend(uw.iter().rev());
                    let replace = match &best[r] {
                        None => true,
                        Some(b) => word.len() < b.len() || (word.len() == b.len() && word < *b),
                    };
                    if replace {
                        best[r] = Some(word);
                    }
                }
            }
        }
        best.into_iter().map(|w| w.expect("every root is conjugate to a simple root")).collect()
    }
}

pub fn format_word(word: &[u8]) -> String {
    if word.iter().all(|&i| i <= 9) {
        word.iter().map(|i| char::from(b'0' + i)).collect()
    } else {
        word.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Parses `2312`, `s_{2312}`, `s2312` or `10,11,3`.
pub fn parse_word(s: &str) -> Result<Vec<u8>> {
    let t = s.trim();
    let t = t.strip_prefix("s_").or_else(|| t.strip_prefix('s')).unwrap_or(t);
    let t = t.trim_start_matches('{').trim_end_matches('}').trim();
    if t.is_empty() || t == "e" {
        return Ok(Vec::new());
    }
    let bad = || Error::Invalid(format!("malformed word '{s}'"));
    if t.contains(',') {
        t.split(',')
            .map(|p| p.trim().parse::<u8>().map_err(|_| bad()))
            .collect()
    } else {
        t.chars()
            .map(|c| c.to_digit(10).map(|v| v as u8).ok_or_else(bad))
            .collect()
    }
}

/// Default reduced word for `w_0`: `s_{(1..n-1)(1..n-2)…(1)}` for `GL_n`
/// and `s_{(n)(n-1,n)…(1..n)(1..n-1)…(1)}` for `GSp_2n`.
pub fn longest_word(datum: &RootDatum) -> Vec<u8> {
    let n = datum.n as u8;
    let mut w = Vec::new();
    match datum.family {
        Family::GL => {
            for k in (1..n).rev() {
                w.extend(1..=k);
            }
        }
        Family::GSp => {
            for start in (1..=n).rev() {
                w.extend(start..=n);
            }
            for k in (1..n).rev() {
                w.extend(1..=k);
            }
        }
    }
    w
}

/// A total order on positive roots satisfying Dyer's betweenness condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflectionOrdering {
    pub ordered_roots: Vec<usize>,
    pub position: Vec<usize>,
}

impl ReflectionOrdering {
    /// `t_i = s_{a_1}⋯s_{a_{i-1}} s_{a_i} s_{a_{i-1}}⋯s_{a_1}` read from a
    /// reduced word `a` of `w_0`.
    pub fn from_reduced_word(g: &WeylGroup, word: &[u8]) -> Result<ReflectionOrdering> {
        let w = g.from_word(word)?;
        if w != g.w0() || word.len() != g.length(g.w0()) as usize {
            return Err(Error::Invalid(format!(
                "'{}' is not a reduced word for the longest element",
                format_word(word)
            )));
        }
        let mut prefix = g.identity();
        let mut ordered = Vec::with_capacity(word.len());
        for &i in word {
            let simple_root = g.datum.simple_indices[i as usize - 1];
            let (r, positive) = g.act_root(prefix, simple_root);
            if !positive {
                return Err(Error::Invalid("word is not reduced".into()));
            }
            ordered.push(r);
            prefix = g.mul_simple(prefix, i as usize);
        }
        ReflectionOrdering::from_roots(g, ordered)
    }

    pub fn preset(g: &WeylGroup) -> ReflectionOrdering {
        ReflectionOrdering::from_reduced_word(g, &longest_word(&g.datum)).expect("preset word is valid")
    }

    pub fn from_roots(g: &WeylGroup, ordered: Vec<usize>) -> Result<ReflectionOrdering> {
        let n = g.datum.num_roots();
        let mut position = vec![usize::MAX; n];
        for (p, &r) in ordered.iter().enumerate() {
            if r >= n || position[r] != usize::MAX {
                return Err(Error::Invalid("ordering is not a permutation of the positive roots".into()));
            }
            position[r] = p;
        }
        if ordered.len() != n {
            return Err(Error::Invalid("ordering is not a permutation of the positive roots".into()));
        }
        let o = ReflectionOrdering { ordered_roots: ordered, position };
        o.validate(g)?;
        Ok(o)
    }

    /// Exhaustive betweenness check: whenever `γ = aα + bβ` with `a, b > 0`,
    /// `γ` sits strictly between `α` and `β`.
    pub fn validate(&self, g: &WeylGroup) -> Result<()> {
        let roots = &g.datum.positive_roots;
        let n = roots.len();
        for a in 0..n {
            for b in a + 1..n {
                for c in 0..n {
                    if c == a || c == b {
                        continue;
                    }
                    if positive_combination(&roots[a], &roots[b], &roots[c]) {
                        let (pa, pb, pc) = (self.position[a], self.position[b], self.position[c]);
                        let (lo, hi) = if pa < pb { (pa, pb) } else { (pb, pa) };
                        if !(lo < pc && pc < hi) {
                            return Err(Error::Invalid(format!(
                                "not a reflection ordering: {} is not between {} and {}",
                                g.datum.root_label(c),
                                g.datum.root_label(a),
                                g.datum.root_label(b)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn precedes(&self, a: usize, b: usize) -> bool {
        self.position[a] < self.position[b]
    }
}

/// Whether `c = x·a + y·b` with rational `x, y > 0`.
fn positive_combination(a: &[i64], b: &[i64], c: &[i64]) -> bool {
    let d = a.len();
    for i in 0..d {
        for j in i + 1..d {
            let det = a[i] * b[j] - a[j] * b[i];
            if det == 0 {
                continue;
            }
            let xn = c[i] * b[j] - c[j] * b[i];
            let yn = a[i] * c[j] - a[j] * c[i];
            let consistent = (0..d).all(|k| xn * a[k] + yn * b[k] == det * c[k]);
            return consistent && xn * det > 0 && yn * det > 0;
        }
    }
    false
}
