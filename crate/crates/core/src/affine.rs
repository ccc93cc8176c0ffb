//! Extended affine Weyl group `X_*(T) ⋊ W` with elements stored as pairs
//! `t_λ w̄`.

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootdata::Coweight;
use crate::weylgroup::{format_word, parse_word, ElemId, WeylGroup};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExtAffineElement {
    pub lambda: Coweight,
    pub wbar: ElemId,
}

impl ExtAffineElement {
    pub fn translation(lambda: Coweight) -> ExtAffineElement {
        ExtAffineElement { lambda, wbar: 0 }
    }

    pub fn finite(d: usize, wbar: ElemId) -> ExtAffineElement {
        ExtAffineElement { lambda: vec![0; d], wbar }
    }

    pub fn is_translation(&self) -> bool {
        self.wbar == 0
    }
}

/// `(t_λ₁ w̄₁)(t_λ₂ w̄₂) = t_{λ₁ + w̄₁λ₂} w̄₁w̄₂`.
pub fn mul(g: &WeylGroup, a: &ExtAffineElement, b: &ExtAffineElement) -> ExtAffineElement {
    let moved = g.act_coweight(a.wbar, &b.lambda);
    ExtAffineElement {
        lambda: a.lambda.iter().zip(&moved).map(|(x, y)| x + y).collect(),
        wbar: g.mul(a.wbar, b.wbar),
    }
}

pub fn inverse(g: &WeylGroup, a: &ExtAffineElement) -> ExtAffineElement {
    let wi = g.inverse(a.wbar);
    let moved = g.act_coweight(wi, &a.lambda);
    ExtAffineElement { lambda: moved.iter().map(|x| -x).collect(), wbar: wi }
}

/// Iwahori–Matsumoto length: roots with `w̄⁻¹α < 0` contribute
/// `|⟨λ,α⟩ − 1|`, the others `|⟨λ,α⟩|`.
pub fn ext_length(g: &WeylGroup, a: &ExtAffineElement) -> u32 {
    let datum = &g.datum;
    let winv = g.inverse(a.wbar);
    let mut total = 0i64;
    for (r, alpha) in datum.positive_roots.iter().enumerate() {
        let p = datum.pair(&a.lambda, alpha);
        let (_, positive) = g.act_root(winv, r);
        total += if positive { p.abs() } else { (p - 1).abs() };
    }
    total as u32
}

/// The unique `w_λ ∈ W` minimizing `ℓ(t_λ w_λ)`.
pub fn minimal_coset_rep(g: &WeylGroup, lambda: &[i64]) -> Result<ElemId> {
    let t = ExtAffineElement::translation(lambda.to_vec());
    let lens: Vec<u32> = g
        .elements()
        .map(|w| ext_length(g, &ExtAffineElement { lambda: t.lambda.clone(), wbar: w }))
        .collect();
    let min = *lens.iter().min().unwrap();
    let argmins: Vec<ElemId> = g.elements().filter(|&w| lens[w as usize] == min).collect();
    if argmins.len() != 1 {
        return Err(Error::Invariant(format!(
            "coset of t_{lambda:?} has {} elements of minimal length",
            argmins.len()
        )));
    }
    let wl = argmins[0];
    for x in g.elements() {
        if lens[g.mul(wl, x) as usize] != min + g.length(x) {
            return Err(Error::Invariant(format!(
                "length is not additive on the coset of t_{lambda:?}"
            )));
        }
    }
    Ok(wl)
}

fn require_minuscule(g: &WeylGroup, mu: &[i64]) -> Result<()> {
    if mu.len() != g.datum.d {
        return Err(Error::Invalid(format!(
            "coweight has {} coordinates, expected {}",
            mu.len(),
            g.datum.d
        )));
    }
    let class = g.datum.classify_coweight(mu);
    if !(class.dominant && class.minuscule) {
        return Err(Error::Unsupported(format!(
            "{} is not dominant minuscule",
            format_coweight(g, mu)
        )));
    }
    Ok(())
}

/// `w ∈ Adm(μ)` iff `λ(w) ∈ Wμ` and `w_λ⁻¹ w̄ ≤ w_λ⁻¹` in `W`.
pub fn is_admissible(g: &WeylGroup, mu: &[i64], w: &ExtAffineElement) -> Result<bool> {
    require_minuscule(g, mu)?;
    if !g.datum.weyl_orbit(mu).contains(&w.lambda) {
        return Ok(false);
    }
    let wl_inv = g.inverse(minimal_coset_rep(g, &w.lambda)?);
    Ok(g.bruhat_leq(g.mul(wl_inv, w.wbar), wl_inv))
}

/// Every μ-admissible element, sorted by length, then translation part,
/// then finite-part word.
pub fn admissible_set(g: &WeylGroup, mu: &[i64]) -> Result<Vec<ExtAffineElement>> {
    require_minuscule(g, mu)?;
    let mut out = Vec::new();
    for lambda in g.datum.weyl_orbit(mu) {
        let wl_inv = g.inverse(minimal_coset_rep(g, &lambda)?);
        for w in g.elements() {
            if g.bruhat_leq(g.mul(wl_inv, w), wl_inv) {
                out.push(ExtAffineElement { lambda: lambda.clone(), wbar: w });
            }
        }
    }
    sort_elements(g, &mut out);
    Ok(out)
}

/// Sort key shared by every listing: length, displayed translation tuple,
/// then the word with a terminator that places longer words with a common
/// prefix first (`31232` before `312`).
pub fn sort_key(g: &WeylGroup, x: &ExtAffineElement) -> (u32, Vec<i64>, String) {
    (
        ext_length(g, x),
        g.datum.display_coweight(&x.lambda),
        format!("{}}}", g.word_string(x.wbar)),
    )
}

pub fn compare_elements(g: &WeylGroup, a: &ExtAffineElement, b: &ExtAffineElement) -> Ordering {
    sort_key(g, a).cmp(&sort_key(g, b))
}

pub fn sort_elements(g: &WeylGroup, elems: &mut [ExtAffineElement]) {
    elems.sort_by_cached_key(|x| sort_key(g, x));
}

pub fn format_coweight(g: &WeylGroup, lambda: &[i64]) -> String {
    let t: Vec<String> = g.datum.display_coweight(lambda).iter().map(|x| x.to_string()).collect();
    format!("({})", t.join(","))
}

/// `t_(1,1,0,0) s_{2312}`; the finite part is omitted when trivial.
pub fn format_element(g: &WeylGroup, w: &ExtAffineElement) -> String {
    let t = format_coweight(g, &w.lambda);
    if w.wbar == g.identity() {
        format!("t_{t}")
    } else {
        format!("t_{t} s_{{{}}}", format_word(g.word(w.wbar)))
    }
}

/// Parses `t_(a,b,...) s_{word}`, `t_(a,b,...)` or `s_{word}`.
pub fn parse_element(g: &WeylGroup, s: &str) -> Result<ExtAffineElement> {
    let bad = |why: &str| Error::Invalid(format!("malformed element '{s}': {why}"));
    let mut rest = s.trim();
    let mut lambda = vec![0; g.datum.d];
    if let Some(r) = rest.strip_prefix("t_") {
        let r = r.trim_start();
        let r = r.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
        let close = r.find(')').ok_or_else(|| bad("expected ')'"))?;
        let tuple = parse_coords(&r[..close])?;
        lambda = g.datum.parse_coweight(&tuple)?;
        rest = r[close + 1..].trim();
    }
    let wbar = if rest.is_empty() {
        g.identity()
    } else {
        if !rest.starts_with('s') {
            return Err(bad("expected finite part 's_{...}'"));
        }
        g.from_word(&parse_word(rest)?)?
    };
    Ok(ExtAffineElement { lambda, wbar })
}

/// Comma separated integers, optionally wrapped in parentheses.
pub fn parse_coords(s: &str) -> Result<Vec<i64>> {
    let t = s.trim().trim_start_matches('(').trim_end_matches(')');
    t.split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| Error::Invalid(format!("malformed coordinate list '{s}'")))
        })
        .collect()
}

/// Bruhat order on the extended affine Weyl group, by the lifting property
/// against the affine simple reflections.
pub struct AffineBruhat<'a> {
    g: &'a WeylGroup,
    simples: Vec<ExtAffineElement>,
    memo: HashMap<(ExtAffineElement, ExtAffineElement), bool>,
}

impl<'a> AffineBruhat<'a> {
    pub fn new(g: &'a WeylGroup) -> Result<AffineBruhat<'a>> {
        let d = g.datum.d;
        let mut simples: Vec<ExtAffineElement> =
            (1..=g.rank()).map(|i| ExtAffineElement::finite(d, g.simple(i))).collect();
        let mut extra = Vec::new();
        for (r, coroot) in g.datum.positive_coroots.iter().enumerate() {
            for sign in [1, -1] {
                let x = ExtAffineElement {
                    lambda: coroot.iter().map(|c| sign * c).collect(),
                    wbar: g.reflection_element(r),
                };
                if ext_length(g, &x) == 1 {
                    extra.push(x);
                }
            }
        }
        if extra.len() != 1 {
            return Err(Error::Invariant(format!(
                "expected one affine simple reflection, found {}",
                extra.len()
            )));
        }
        simples.extend(extra);
        Ok(AffineBruhat { g, simples, memo: HashMap::new() })
    }

    pub fn simple_reflections(&self) -> &[ExtAffineElement] {
        &self.simples
    }

    pub fn leq(&mut self, u: &ExtAffineElement, v: &ExtAffineElement) -> bool {
        let lv = ext_length(self.g, v);
        let lu = ext_length(self.g, u);
        if lu > lv {
            return false;
        }
        if lv == 0 {
            return u == v;
        }
        let key = (u.clone(), v.clone());
        if let Some(&b) = self.memo.get(&key) {
            return b;
        }
        let g = self.g;
        let (vs, s) = self
            .simples
            .iter()
            .map(|s| (mul(g, v, s), s))
            .find(|(vs, _)| ext_length(g, vs) < lv)
            .expect("positive-length element has a right descent");
        let s = s.clone();
        let us = mul(g, u, &s);
        let lower = if ext_length(g, &us) < lu { us } else { u.clone() };
        let b = self.leq(&lower, &vs);
        self.memo.insert(key, b);
        b
    }
}
