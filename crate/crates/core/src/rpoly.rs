//! `R̃`-polynomials in the variable `Q`, by increasing Bruhat paths and by
//! the defining descent recursion.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bruhatpaths::{increasing_paths, path_root_system, BruhatPath, RootSubsystem};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::weylgroup::{ElemId, ReflectionOrdering, WeylGroup};

/// `Σ_Δ Q^{ℓ(Δ)}` over the ≺-increasing paths from `u` to `v`.
pub fn rtilde_dyer(g: &WeylGroup, u: ElemId, v: ElemId, ordering: &ReflectionOrdering) -> Poly {
    path_length_sum(&increasing_paths(g, u, v, ordering))
}

pub fn path_length_sum(paths: &[BruhatPath]) -> Poly {
    let mut coeffs = vec![BigInt::zero(); paths.iter().map(|p| p.len() + 1).max().unwrap_or(0)];
    for p in paths {
        coeffs[p.len()] += 1;
    }
    Poly::from_coeffs(coeffs)
}

/// `Σ Q^{ℓ(Δ)}` over the paths whose root system lies in `j`.
pub fn rtilde_stratified(g: &WeylGroup, paths: &[BruhatPath], j: &RootSubsystem) -> Poly {
    let fitting: Vec<BruhatPath> =
        paths.iter().filter(|p| path_root_system(g, p).is_subset_of(j)).cloned().collect();
    path_length_sum(&fitting)
}

/// Memoized `R_{u,v}(q)` by right descents of `v`, converted to `R̃`.
pub struct RRecursion<'a> {
    g: &'a WeylGroup,
    memo: HashMap<(ElemId, ElemId), Poly>,
}

impl<'a> RRecursion<'a> {
    pub fn new(g: &'a WeylGroup) -> RRecursion<'a> {
        RRecursion { g, memo: HashMap::new() }
    }

    /// `R_{u,v}` as a polynomial in `q`.
    pub fn r(&mut self, u: ElemId, v: ElemId) -> Poly {
        let g = self.g;
        if u == v {
            return Poly::one();
        }
        if !g.bruhat_leq(u, v) {
            return Poly::zero();
        }
        if let Some(p) = self.memo.get(&(u, v)) {
            return p.clone();
        }
        let s = g.right_descents(v)[0];
        let vs = g.mul_simple(v, s);
        let us = g.mul_simple(u, s);
        let result = if g.length(us) < g.length(u) {
            self.r(us, vs)
        } else {
            let q = Poly::x();
            let q_minus_1 = Poly::from_i64(&[-1, 1]);
            &(&q * &self.r(us, vs)) + &(&q_minus_1 * &self.r(u, vs))
        };
        self.memo.insert((u, v), result.clone());
        result
    }

    /// `R̃_{u,v}(Q)` from `R_{u,v}(q) = Σ_k a_k q^{(L−k)/2}(q−1)^k`.
    pub fn rtilde(&mut self, u: ElemId, v: ElemId) -> Result<Poly> {
        let r = self.r(u, v);
        if r.is_zero() {
            return Ok(Poly::zero());
        }
        let l = (self.g.length(v) - self.g.length(u)) as usize;
        rtilde_from_r(&r, l)
    }
}

pub fn rtilde_from_r(r: &Poly, l: usize) -> Result<Poly> {
    let mut rest = r.clone();
    let mut a = vec![BigInt::zero(); l + 1];
    let q_minus_1 = Poly::from_i64(&[-1, 1]);
    for k in (0..=l).rev().filter(|k| (l - k).is_multiple_of(2)) {
        let top = rest.coeff((l + k) / 2);
        if !top.is_zero() {
            let basis = q_minus_1.pow(k as u32).shift((l - k) / 2);
            rest = &rest - &basis.scale(&top);
        }
        a[k] = top;
    }
    if !rest.is_zero() {
        return Err(Error::Invariant("R-polynomial has no R̃ expansion".into()));
    }
    Ok(Poly::from_coeffs(a))
}

/// Evaluates `q^{rL/2} R̃(Q_r)` for `Q_r = q^{−r/2} − q^{r/2}` as a
/// polynomial in `t = q^r`: each `Q^k` becomes `t^{(L−k)/2}(1−t)^k`.
pub fn rtilde_in_t(rtilde: &Poly, l: usize) -> Poly {
    let mut acc = Poly::zero();
    for k in rtilde.support() {
        let term = Poly::one_minus_x().pow(k as u32).shift((l - k) / 2).scale(&rtilde.coeff(k));
        acc = &acc + &term;
    }
    acc
}

/// `R̃` has nonnegative coefficients and all exponents of one parity.
pub fn check_shape(p: &Poly, l: usize) -> bool {
    p.coeffs().iter().all(|c| *c >= BigInt::zero())
        && p.support().iter().all(|&k| (l - k).is_multiple_of(2))
        && (p.is_zero() || p.degree() == Some(l) && p.coeff(l).is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::Family;
    use crate::weylgroup::parse_word;

    #[test]
    fn gl4_example() {
        let g = WeylGroup::from_family(Family::GL, 4).unwrap();
        let o = ReflectionOrdering::preset(&g);
        let v = g.from_word(&parse_word("2312").unwrap()).unwrap();
        let p = rtilde_dyer(&g, g.identity(), v, &o);
        assert_eq!(p.render("Q"), "Q^2 + Q^4");
        let mut rec = RRecursion::new(&g);
        assert_eq!(rec.rtilde(g.identity(), v).unwrap(), p);
        assert_eq!(rtilde_dyer(&g, g.simple(1), g.simple(2), &o), Poly::zero());
        assert_eq!(rtilde_dyer(&g, v, v, &o), Poly::one());
    }

    #[test]
    fn simple_reflection() {
        let g = WeylGroup::from_family(Family::GL, 3).unwrap();
        let mut rec = RRecursion::new(&g);
        assert_eq!(rec.r(g.identity(), g.simple(1)), Poly::from_i64(&[-1, 1]));
        assert_eq!(rec.rtilde(g.identity(), g.simple(1)).unwrap(), Poly::x());
    }

    #[test]
    fn t_substitution() {
        let l = 4;
        let p = Poly::from_i64(&[0, 0, 1, 0, 1]);
        let t = rtilde_in_t(&p, l);
        let expected = &Poly::one_minus_x().pow(2).shift(1) + &Poly::one_minus_x().pow(4);
        assert_eq!(t, expected);
    }

    #[test]
    fn s3_sweep() {
        let g = WeylGroup::from_family(Family::GL, 3).unwrap();
        let o = ReflectionOrdering::preset(&g);
        let mut rec = RRecursion::new(&g);
        for u in g.elements() {
            for v in g.elements() {
                let d = rtilde_dyer(&g, u, v, &o);
                assert_eq!(d, rec.rtilde(u, v).unwrap());
                if g.bruhat_leq(u, v) {
                    assert!(check_shape(&d, (g.length(v) - g.length(u)) as usize));
                }
            }
        }
    }
}
