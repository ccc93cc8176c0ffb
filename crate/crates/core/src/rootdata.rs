//! Root data for the split groups `GL_n` and `GSp_2n`.
//!
//! Cocharacters are integer vectors in a fixed basis of `X_*(T)`; characters
//! use the dual basis, so the pairing is the dot product.
//!
//! * `GL_n`: basis `ε_1..ε_n`, positive roots `ε_i - ε_j` (`i < j`) in
//!   lexicographic order of `(i, j)`.
//! * `GSp_2n`: cocharacter basis `e_0..e_n` with `e_0` the similitude
//!   direction, character basis `c_0..c_n`. Simple roots are
//!   `c_i - c_{i+1}` and `2c_n - c_0`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Coweight = Vec<i64>;
pub type Weight = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    GL,
    GSp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoweightClass {
    pub dominant: bool,
    pub minuscule: bool,
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    pub family: Family,
    pub n: usize,
    pub d: usize,
    pub positive_roots: Vec<Weight>,
    pub positive_coroots: Vec<Coweight>,
    pub simple_indices: Vec<usize>,
    pub pairing_matrix: Vec<Vec<i64>>,
    root_lookup: HashMap<Weight, (usize, bool)>,
    coroot_lookup: HashMap<Coweight, (usize, bool)>,
}

fn unit(d: usize, terms: &[(usize, i64)]) -> Vec<i64> {
    let mut v = vec![0; d];
    for &(i, a) in terms {
        v[i] += a;
    }
    v
}

impl RootDatum {
    pub fn new(family: Family, n: usize) -> Result<RootDatum> {
        if n < 2 {
            return Err(Error::Config(format!(
                "{} needs n >= 2, got {n}",
                match family {
                    Family::GL => "GL_n",
                    Family::GSp => "GSp_2n",
                }
            )));
        }
        if n > 12 {
            return Err(Error::Config(format!("rank {n} is beyond the supported range")));
        }
        let (d, roots, coroots, simple) = match family {
            Family::GL => gl_roots(n),
            Family::GSp => gsp_roots(n),
        };
        let mut pairing_matrix = vec![vec![0; d]; d];
        for (i, row) in pairing_matrix.iter_mut().enumerate() {
            row[i] = 1;
        }
        let mut root_lookup = HashMap::new();
        let mut coroot_lookup = HashMap::new();
        for (i, (r, c)) in roots.iter().zip(&coroots).enumerate() {
            root_lookup.insert(r.clone(), (i, true));
            root_lookup.insert(r.iter().map(|x| -x).collect(), (i, false));
            coroot_lookup.insert(c.clone(), (i, true));
            coroot_lookup.insert(c.iter().map(|x| -x).collect(), (i, false));
        }
        let datum = RootDatum {
            family,
            n,
            d,
            positive_roots: roots,
            positive_coroots: coroots,
            simple_indices: simple,
            pairing_matrix,
            root_lookup,
            coroot_lookup,
        };
        datum.check()?;
        Ok(datum)
    }

    fn check(&self) -> Result<()> {
        for (r, c) in self.positive_roots.iter().zip(&self.positive_coroots) {
            if self.pair(c, r) != 2 {
                return Err(Error::Invariant("root/coroot pairing is not 2".into()));
            }
        }
        for i in 0..self.num_roots() {
            for r in &self.positive_roots {
                if self.root_index(&self.reflect_weight(i, r)).is_none() {
                    return Err(Error::Invariant("root set not closed under reflections".into()));
                }
            }
        }
        Ok(())
    }

    pub fn num_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn rank(&self) -> usize {
        self.simple_indices.len()
    }

    /// `⟨λ, χ⟩`; panics on a dimension mismatch.
    pub fn pair(&self, lambda: &[i64], chi: &[i64]) -> i64 {
        assert_eq!(lambda.len(), self.d, "coweight has wrong dimension");
        assert_eq!(chi.len(), self.d, "weight has wrong dimension");
        lambda.iter().zip(chi).map(|(a, b)| a * b).sum()
    }

    pub fn pairing(&self, lambda: &[i64], chi: &[i64]) -> Result<i64> {
        if lambda.len() != self.d || chi.len() != self.d {
            return Err(Error::Invalid(format!(
                "pairing needs vectors of length {}, got {} and {}",
                self.d,
                lambda.len(),
                chi.len()
            )));
        }
        Ok(self.pair(lambda, chi))
    }

    /// `s_α(x) = x - ⟨x, α⟩ α^∨` on coweights.
    pub fn reflect_coweight(&self, root: usize, x: &[i64]) -> Coweight {
        let a = &self.positive_roots[root];
        let av = &self.positive_coroots[root];
        let p = self.pair(x, a);
        x.iter().zip(av).map(|(xi, ci)| xi - p * ci).collect()
    }

    /// `s_α(χ) = χ - ⟨α^∨, χ⟩ α` on weights.
    pub fn reflect_weight(&self, root: usize, chi: &[i64]) -> Weight {
        let a = &self.positive_roots[root];
        let av = &self.positive_coroots[root];
        let p = self.pair(av, chi);
        chi.iter().zip(a).map(|(xi, ai)| xi - p * ai).collect()
    }

    /// Index of `±α` and whether the sign is positive.
    pub fn root_index(&self, chi: &[i64]) -> Option<(usize, bool)> {
        self.root_lookup.get(chi).copied()
    }

    pub fn coroot_index(&self, x: &[i64]) -> Option<(usize, bool)> {
        self.coroot_lookup.get(x).copied()
    }

    pub fn weyl_orbit(&self, mu: &[i64]) -> Vec<Coweight> {
        let mut seen: BTreeSet<Coweight> = BTreeSet::new();
        seen.insert(mu.to_vec());
        let mut frontier = vec![mu.to_vec()];
        while let Some(x) = frontier.pop() {
            for &s in &self.simple_indices {
                let y = self.reflect_coweight(s, &x);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        let mut out: Vec<Coweight> = seen.into_iter().collect();
        out.sort_by_key(|x| self.display_coweight(x));
        out
    }

    pub fn classify_coweight(&self, lambda: &[i64]) -> CoweightClass {
        let pairings: Vec<i64> = self.positive_roots.iter().map(|a| self.pair(lambda, a)).collect();
        CoweightClass {
            dominant: pairings.iter().all(|&p| p >= 0),
            minuscule: pairings.iter().all(|&p| (-1..=1).contains(&p)),
        }
    }

    /// Coordinates as printed in element names: `ε`-coordinates for `GL_n`,
    /// the diagonal `2n`-tuple for `GSp_2n`.
    pub fn display_coweight(&self, x: &[i64]) -> Vec<i64> {
        match self.family {
            Family::GL => x.to_vec(),
            Family::GSp => {
                let n = self.n;
                let mut t = vec![0; 2 * n];
                for i in 1..=n {
                    t[i - 1] = x[i];
                    t[2 * n - i] = x[0] - x[i];
                }
                t
            }
        }
    }

    /// Inverse of [`RootDatum::display_coweight`]. For `GSp_2n` the tuple
    /// `(a_1..a_2n)` must satisfy `a_i + a_{2n+1-i} = c` for one `c`, which
    /// becomes the `e_0` coordinate.
    pub fn parse_coweight(&self, tuple: &[i64]) -> Result<Coweight> {
        match self.family {
            Family::GL => {
                if tuple.len() != self.n {
                    return Err(Error::Invalid(format!(
                        "GL{} coweight needs {} entries, got {}",
                        self.n,
                        self.n,
                        tuple.len()
                    )));
                }
                Ok(tuple.to_vec())
            }
            Family::GSp => {
                let n = self.n;
                if tuple.len() == 2 * n {
                    let c = tuple[0] + tuple[2 * n - 1];
                    let mut x = vec![c; n + 1];
                    for i in 1..=n {
                        if tuple[i - 1] + tuple[2 * n - i] != c {
                            return Err(Error::Invalid(format!(
                                "GSp{} tuple {:?} is not symplectic: entries {} and {} do not sum to {c}",
                                2 * n,
                                tuple,
                                i,
                                2 * n + 1 - i
                            )));
                        }
                        x[i] = tuple[i - 1];
                    }
                    Ok(x)
                } else {
                    Err(Error::Invalid(format!(
                        "GSp{} coweight needs {} entries, got {}",
                        2 * n,
                        2 * n,
                        tuple.len()
                    )))
                }
            }
        }
    }

    pub fn name(&self) -> String {
        match self.family {
            Family::GL => format!("GL{}", self.n),
            Family::GSp => format!("GSp{}", 2 * self.n),
        }
    }

    /// Human label of a positive root: `a13` for `ε_1 - ε_3`, `a7` for the
    /// seventh `GSp` root.
    pub fn root_label(&self, i: usize) -> String {
        match self.family {
            Family::GL => {
                let r = &self.positive_roots[i];
                let a = r.iter().position(|&x| x == 1).unwrap() + 1;
                let b = r.iter().position(|&x| x == -1).unwrap() + 1;
                format!("a{a}{b}")
            }
            Family::GSp => format!("a{}", i + 1),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::GL => write!(f, "GL"),
            Family::GSp => write!(f, "GSp"),
        }
    }
}

type RootLists = (usize, Vec<Weight>, Vec<Coweight>, Vec<usize>);

fn gl_roots(n: usize) -> RootLists {
    let mut roots = Vec::new();
    let mut simple = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if j == i + 1 {
                simple.push(roots.len());
            }
            roots.push(unit(n, &[(i, 1), (j, -1)]));
        }
    }
    let coroots = roots.clone();
    (n, roots, coroots, simple)
}

fn gsp_roots(n: usize) -> RootLists {
    let d = n + 1;
    let mut pairs: Vec<(Weight, Coweight)> = Vec::new();
    for i in 1..n {
        pairs.push((unit(d, &[(i, 1), (i + 1, -1)]), unit(d, &[(i, 1), (i + 1, -1)])));
    }
    pairs.push((unit(d, &[(n, 2), (0, -1)]), unit(d, &[(n, 1)])));
    let short_minus = |i: usize, j: usize| (unit(d, &[(i, 1), (j, -1)]), unit(d, &[(i, 1), (j, -1)]));
    let short_plus = |i: usize, j: usize| (unit(d, &[(i, 1), (j, 1), (0, -1)]), unit(d, &[(i, 1), (j, 1)]));
    let long = |i: usize| (unit(d, &[(i, 2), (0, -1)]), unit(d, &[(i, 1)]));
    match n {
        2 => {
            pairs.push(short_plus(1, 2));
            pairs.push(long(1));
        }
        3 => {
            pairs.push(short_minus(1, 3));
            pairs.push(long(1));
            pairs.push(short_plus(1, 2));
            pairs.push(short_plus(1, 3));
            pairs.push(long(2));
            pairs.push(short_plus(2, 3));
        }
        _ => {
            for i in 1..=n {
                for j in i + 2..=n {
                    pairs.push(short_minus(i, j));
                }
            }
            for i in 1..=n {
                for j in i + 1..=n {
                    pairs.push(short_plus(i, j));
                }
            }
            for i in 1..n {
                pairs.push(long(i));
            }
        }
    }
    let simple = (0..n).collect();
    let (roots, coroots) = pairs.into_iter().unzip();
    (d, roots, coroots, simple)
}
