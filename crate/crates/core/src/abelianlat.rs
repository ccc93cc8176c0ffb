//! Integer lattices in `X_*(T)`, Smith normal form, and the finite critical
//! groups `(L + Nℤ^d)/Nℤ^d ⊆ (ℤ/N)^d`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::affine::ExtAffineElement;
use crate::bruhatpaths::{in_reflection_subgroup, RootSubsystem};
use crate::error::{Error, Result};
use crate::weylgroup::WeylGroup;

pub type IntMatrix = Vec<Vec<BigInt>>;

/// `U·M·V = D` with `U`, `V` unimodular and `D` diagonal,
/// `d_1 | d_2 | … | d_r`, all positive.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub diagonal: Vec<BigInt>,
    pub rows: usize,
    pub cols: usize,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    pub fn d_matrix(&self) -> IntMatrix {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, x) in self.diagonal.iter().enumerate() {
            d[i][i] = x.clone();
        }
        d
    }
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn matmul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn to_big(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn row_axpy(m: &mut IntMatrix, target: usize, source: usize, factor: &BigInt) {
    let src = m[source].clone();
    for (x, s) in m[target].iter_mut().zip(src) {
        *x -= factor * s;
    }
}

fn col_axpy(m: &mut IntMatrix, target: usize, source: usize, factor: &BigInt) {
    for row in m.iter_mut() {
        let s = row[source].clone();
        row[target] -= factor * s;
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

pub fn smith_normal_form(m: &[Vec<BigInt>], cols: usize) -> Smith {
    let rows = m.len();
    let mut a: IntMatrix = m.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by_key(|&(i, j)| a[i][j].abs());
        let Some((pi, pj)) = pivot else {
            break;
        };
        a.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    row_axpy(&mut a, i, t, &q);
                    row_axpy(&mut u, i, t, &q);
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    col_axpy(&mut a, j, t, &q);
                    col_axpy(&mut v, j, t, &q);
                }
            }
            let leftover = (t + 1..rows)
                .map(|i| (i, t))
                .chain((t + 1..cols).map(|j| (t, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by_key(|&(i, j)| a[i][j].abs());
            if let Some((i, j)) = leftover {
                if j == t {
                    a.swap(t, i);
                    u.swap(t, i);
                } else {
                    swap_cols(&mut a, t, j);
                    swap_cols(&mut v, t, j);
                }
                continue;
            }
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero());
            match bad {
                Some((i, _)) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut a, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
        t += 1;
    }
    let diagonal = (0..t).map(|i| a[i][i].clone()).collect();
    Smith { u, v, diagonal, rows, cols }
}

/// Finitely generated abelian group `ℤ^r × Π ℤ/c_iℤ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianStructure {
    pub free_rank: usize,
    #[serde(with = "bigint_strings")]
    pub invariant_factors: Vec<BigInt>,
}

impl AbelianStructure {
    /// `Z x Z/2Z`, `{1}` for the trivial group.
    pub fn render(&self) -> String {
        let mut parts: Vec<String> = vec!["Z".to_string(); self.free_rank];
        parts.extend(self.invariant_factors.iter().map(|c| format!("Z/{c}Z")));
        if parts.is_empty() {
            "{1}".to_string()
        } else {
            parts.join(" x ")
        }
    }

    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }
}

impl fmt::Display for AbelianStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

mod bigint_strings {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|x| x.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Rows generating a sublattice of `ℤ^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticePresentation {
    pub d: usize,
    pub generators: Vec<Vec<i64>>,
}

impl LatticePresentation {
    pub fn new(d: usize, generators: Vec<Vec<i64>>) -> LatticePresentation {
        LatticePresentation { d, generators }
    }

    pub fn smith(&self) -> Smith {
        smith_normal_form(&to_big(&self.generators), self.d)
    }

    pub fn reduced(&self) -> ReducedLattice {
        let s = self.smith();
        ReducedLattice { d: self.d, v: s.v, diagonal: s.diagonal }
    }
}

/// `L_{w,J} = ⟨λ, α∨ : α ∈ J⟩`, valid when `w̄ ∈ W_J`.
pub fn lattice_lwj(g: &WeylGroup, w: &ExtAffineElement, j: &RootSubsystem) -> Result<LatticePresentation> {
    if !in_reflection_subgroup(g, j, w.wbar) {
        return Err(Error::Invalid(format!(
            "finite part of the element is not in the reflection subgroup of {:?}",
            j.labels(g)
        )));
    }
    let mut gens = vec![w.lambda.clone()];
    gens.extend(j.root_indices.iter().map(|&r| g.datum.positive_coroots[r].clone()));
    Ok(LatticePresentation::new(g.datum.d, gens))
}

/// `⟨λ, w̄(ν) − ν, α∨ : α ∈ J⟩` with `ν` over the standard basis.
pub fn lattice_lwj_general(g: &WeylGroup, w: &ExtAffineElement, j: &RootSubsystem) -> LatticePresentation {
    let d = g.datum.d;
    let mut gens = vec![w.lambda.clone()];
    for k in 0..d {
        let mut e = vec![0; d];
        e[k] = 1;
        let moved = g.act_coweight(w.wbar, &e);
        let diff: Vec<i64> = moved.iter().zip(&e).map(|(a, b)| a - b).collect();
        if diff.iter().any(|&x| x != 0) {
            gens.push(diff);
        }
    }
    gens.extend(j.root_indices.iter().map(|&r| g.datum.positive_coroots[r].clone()));
    LatticePresentation::new(d, gens)
}

/// Short form when it applies, checked against the general form; the
/// general form otherwise.
pub fn lattice_for(g: &WeylGroup, w: &ExtAffineElement, j: &RootSubsystem) -> Result<LatticePresentation> {
    let general = lattice_lwj_general(g, w, j);
    match lattice_lwj(g, w, j) {
        Ok(short) => {
            let (a, b) = (short.reduced(), general.reduced());
            let same = general.generators.iter().all(|x| a.contains(x, &BigInt::zero()))
                && short.generators.iter().all(|x| b.contains(x, &BigInt::zero()));
            if !same {
                return Err(Error::Invariant("short and general lattice presentations differ".into()));
            }
            Ok(short)
        }
        Err(_) => Ok(general),
    }
}

pub fn quotient_structure(l: &LatticePresentation) -> AbelianStructure {
    let s = l.smith();
    AbelianStructure {
        free_rank: l.d - s.rank(),
        invariant_factors: s.diagonal.into_iter().filter(|c| !c.is_one()).collect(),
    }
}

/// A lattice in Smith coordinates, ready for membership tests.
#[derive(Clone, Debug)]
pub struct ReducedLattice {
    pub d: usize,
    pub v: IntMatrix,
    pub diagonal: Vec<BigInt>,
}

impl ReducedLattice {
    /// `x ∈ L + Nℤ^d`; `N = 0` tests membership in `L` itself.
    pub fn contains(&self, x: &[i64], n: &BigInt) -> bool {
        let xb: Vec<BigInt> = x.iter().map(|&c| BigInt::from(c)).collect();
        (0..self.d).all(|j| {
            let wj = (0..self.d).fold(BigInt::zero(), |acc, k| acc + &xb[k] * &self.v[k][j]);
            let m = match self.diagonal.get(j) {
                Some(dj) => dj.gcd(n),
                None => n.clone(),
            };
            if m.is_zero() {
                wj.is_zero()
            } else {
                (&wj % &m).is_zero()
            }
        })
    }

    /// `|(L + Nℤ^d)/Nℤ^d|`.
    pub fn critical_group_order(&self, n: &BigInt) -> BigInt {
        self.diagonal.iter().map(|dj| n / dj.gcd(n)).product()
    }

    /// `|{m ∈ (ℤ/N)^d : ⟨ℓ, m⟩ ≡ 0 for ℓ ∈ L}|`.
    pub fn annihilator_order(&self, n: &BigInt) -> BigInt {
        let free = self.d - self.diagonal.len();
        let torsion: BigInt = self.diagonal.iter().map(|dj| dj.gcd(n)).product();
        num_traits::pow(n.clone(), free) * torsion
    }
}

impl ReducedLattice {
    /// Basis of `{y ∈ ℤ^d : ⟨ℓ, y⟩ ≡ 0 mod N for ℓ ∈ L}`, the lift of the
    /// annihilator of `(L + Nℤ^d)/Nℤ^d`.
    pub fn annihilator_basis(&self, n: &BigInt) -> Vec<Vec<BigInt>> {
        (0..self.d)
            .map(|k| {
                let scale = match self.diagonal.get(k) {
                    Some(dk) => n / dk.gcd(n),
                    None => BigInt::one(),
                };
                (0..self.d).map(|i| &self.v[i][k] * &scale).collect()
            })
            .collect()
    }
}

/// `|∩ (L_i + Nℤ^d)/Nℤ^d|` for `N > 0`; the empty intersection is the whole
/// group. Uses `(∩ A_i)^⊥ = Σ A_i^⊥` and `|H|·|H^⊥| = N^d`.
pub fn intersection_order(lattices: &[&ReducedLattice], d: usize, n: &BigInt) -> BigInt {
    let mut rows: IntMatrix = (0..d)
        .map(|i| (0..d).map(|j| if i == j { n.clone() } else { BigInt::zero() }).collect())
        .collect();
    for l in lattices {
        rows.extend(l.annihilator_basis(n));
    }
    smith_normal_form(&rows, d).diagonal.iter().product()
}

/// Membership in `L + Nℤ^d` for one fixed `N`, in machine integers.
#[derive(Clone, Debug)]
pub struct ModTester {
    checks: Vec<(Vec<i64>, i64)>,
}

impl ModTester {
    pub fn contains(&self, x: &[i64]) -> bool {
        self.checks.iter().all(|(coeffs, m)| {
            let s: i128 = coeffs.iter().zip(x).map(|(&c, &xi)| c as i128 * xi as i128).sum();
            s.rem_euclid(*m as i128) == 0
        })
    }
}

impl ReducedLattice {
    pub fn tester(&self, n: u64) -> ModTester {
        let nb = BigInt::from(n);
        let mut checks = Vec::new();
        for j in 0..self.d {
            let m = match self.diagonal.get(j) {
                Some(dj) => dj.gcd(&nb),
                None => nb.clone(),
            };
            if m.is_one() {
                continue;
            }
            let coeffs = (0..self.d)
                .map(|k| self.v[k][j].mod_floor(&m).to_i64().expect("reduced below modulus"))
                .collect();
            checks.push((coeffs, m.to_i64().expect("modulus fits")));
        }
        ModTester { checks }
    }
}

/// `(q−1)^{free rank} · Π gcd(c_i, q−1)` and the torsion part alone.
pub fn dz_subgroup_size(a: &AbelianStructure, q: &BigInt) -> (BigInt, BigInt) {
    let n = q - 1;
    let torsion: BigInt = a.invariant_factors.iter().map(|c| c.gcd(&n)).product();
    (num_traits::pow(n, a.free_rank) * &torsion, torsion)
}

pub fn critical_membership(l: &LatticePresentation, residues: &[i64], q: &BigInt) -> bool {
    l.reduced().contains(residues, &(q - 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    Equal,
    Subset,
    Superset,
    Incomparable,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Equal => "=",
            Relation::Subset => "⊂",
            Relation::Superset => "⊃",
            Relation::Incomparable => "||",
        }
    }

    pub fn flip(self) -> Relation {
        match self {
            Relation::Subset => Relation::Superset,
            Relation::Superset => Relation::Subset,
            r => r,
        }
    }
}

/// Relation of `(L_i + Nℤ^d)/Nℤ^d` by mutual generator membership.
pub fn critical_relation(l1: &LatticePresentation, l2: &LatticePresentation, n: &BigInt) -> Relation {
    let (r1, r2) = (l1.reduced(), l2.reduced());
    relation_reduced(l1, &r1, l2, &r2, n)
}

pub fn relation_reduced(
    l1: &LatticePresentation,
    r1: &ReducedLattice,
    l2: &LatticePresentation,
    r2: &ReducedLattice,
    n: &BigInt,
) -> Relation {
    let le = l1.generators.iter().all(|x| r2.contains(x, n));
    let ge = l2.generators.iter().all(|x| r1.contains(x, n));
    match (le, ge) {
        (true, true) => Relation::Equal,
        (true, false) => Relation::Subset,
        (false, true) => Relation::Superset,
        (false, false) => Relation::Incomparable,
    }
}

pub fn to_u64(x: &BigInt) -> Result<u64> {
    x.to_u64().ok_or_else(|| Error::Guard(format!("{x} does not fit in 64 bits")))
}
