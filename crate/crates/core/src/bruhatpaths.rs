//! Increasing paths in the Bruhat graph of a finite Weyl group and the root
//! subsystems they generate.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::weylgroup::{format_word, ElemId, ReflectionOrdering, WeylGroup};

/// A chain `start → start·t_1 → … → start·t_1⋯t_k` with each step raising
/// length and the edge roots strictly increasing in the ordering.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BruhatPath {
    pub start: ElemId,
    pub edges: Vec<usize>,
}

impl BruhatPath {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn vertices(&self, g: &WeylGroup) -> Vec<ElemId> {
        let mut out = vec![self.start];
        let mut x = self.start;
        for &r in &self.edges {
            x = g.mul_reflection(x, r);
            out.push(x);
        }
        out
    }

    pub fn end(&self, g: &WeylGroup) -> ElemId {
        *self.vertices(g).last().unwrap()
    }

    /// Product `t_1⋯t_k` of the edge reflections.
    pub fn edge_product(&self, g: &WeylGroup) -> ElemId {
        self.edges.iter().fold(g.identity(), |x, &r| g.mul_reflection(x, r))
    }

    /// `{s121, s232}` style listing of the edges.
    pub fn edge_names(&self, g: &WeylGroup) -> Vec<String> {
        self.edges
            .iter()
            .map(|&r| format!("s{}", format_word(g.reflection_word(r))))
            .collect()
    }
}

/// All ≺-increasing paths from `u` to `v`. Edges are arbitrary reflections
/// raising length, not only covers.
pub fn increasing_paths(g: &WeylGroup, u: ElemId, v: ElemId, ordering: &ReflectionOrdering) -> Vec<BruhatPath> {
    let mut out = Vec::new();
    if !g.bruhat_leq(u, v) {
        return out;
    }
    let mut edges = Vec::new();
    extend_paths(g, u, v, ordering, 0, &mut edges, &mut out, u);
    out
}

#[allow(clippy::too_many_arguments)]
fn extend_paths(
    g: &WeylGroup,
    x: ElemId,
    v: ElemId,
    ordering: &ReflectionOrdering,
    next_position: usize,
    edges: &mut Vec<usize>,
    out: &mut Vec<BruhatPath>,
    start: ElemId,
) {
    if x == v {
        out.push(BruhatPath { start, edges: edges.clone() });
        return;
    }
    let (lx, lv) = (g.length(x), g.length(v));
    for &r in &ordering.ordered_roots[next_position..] {
        let y = g.mul_reflection(x, r);
        let ly = g.length(y);
        if ly <= lx || ly > lv || !g.bruhat_leq(y, v) {
            continue;
        }
        edges.push(r);
        extend_paths(g, y, v, ordering, ordering.position[r] + 1, edges, out, start);
        edges.pop();
    }
}

/// A closed, symmetric set of roots, stored by its positive members.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootSubsystem {
    pub root_indices: Vec<usize>,
    pub rank: usize,
}

impl RootSubsystem {
    pub fn empty() -> RootSubsystem {
        RootSubsystem { root_indices: Vec::new(), rank: 0 }
    }

    pub fn full(g: &WeylGroup) -> RootSubsystem {
        root_closure(g, &(0..g.datum.num_roots()).collect::<Vec<_>>())
    }

    pub fn len(&self) -> usize {
        self.root_indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.root_indices.is_empty()
    }

    pub fn contains(&self, root: usize) -> bool {
        self.root_indices.binary_search(&root).is_ok()
    }

    pub fn is_subset_of(&self, other: &RootSubsystem) -> bool {
        self.root_indices.iter().all(|&r| other.contains(r))
    }

    pub fn labels(&self, g: &WeylGroup) -> Vec<String> {
        self.root_indices.iter().map(|&r| g.datum.root_label(r)).collect()
    }
}

/// Smallest set of positive roots containing `seeds` and closed under the
/// reflections it contains.
pub fn root_closure(g: &WeylGroup, seeds: &[usize]) -> RootSubsystem {
    let mut members: BTreeSet<usize> = seeds.iter().copied().collect();
    loop {
        let current: Vec<usize> = members.iter().copied().collect();
        let mut grew = false;
        for &a in &current {
            for &b in &current {
                let image = g.datum.reflect_weight(a, &g.datum.positive_roots[b]);
                let (idx, _) = g.datum.root_index(&image).expect("reflections permute roots");
                grew |= members.insert(idx);
            }
        }
        if !grew {
            break;
        }
    }
    let root_indices: Vec<usize> = members.into_iter().collect();
    let coroots: Vec<Vec<i64>> = root_indices.iter().map(|&r| g.datum.positive_coroots[r].clone()).collect();
    RootSubsystem { rank: integer_rank(&coroots), root_indices }
}

/// `J_Δ`: the root subsystem generated by the edge roots of a path.
pub fn path_root_system(g: &WeylGroup, path: &BruhatPath) -> RootSubsystem {
    root_closure(g, &path.edges)
}

/// Rank over `ℚ` of a list of integer rows, by fraction-free elimination.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..m.len() {
            if m[i][c] != 0 {
                let (a, b) = (m[rank][c], m[i][c]);
                for j in 0..cols {
                    m[i][j] = a * m[i][j] - b * m[rank][j];
                }
                let gcd = m[i].iter().fold(0i128, |acc, &x| num_gcd(acc, x.abs()));
                if gcd > 1 {
                    m[i].iter_mut().for_each(|x| *x /= gcd);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn num_gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

/// Membership of `w` in the reflection subgroup `W_J`.
pub fn in_reflection_subgroup(g: &WeylGroup, j: &RootSubsystem, w: ElemId) -> bool {
    let mut seen = vec![false; g.size()];
    seen[g.identity() as usize] = true;
    let mut stack = vec![g.identity()];
    while let Some(x) = stack.pop() {
        if x == w {
            return true;
        }
        for &r in &j.root_indices {
            let y = g.mul_reflection(x, r) as usize;
            if !seen[y] {
                seen[y] = true;
                stack.push(y as ElemId);
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::Family;
    use crate::weylgroup::parse_word;

    #[test]
    fn gl4_length_zero_paths() {
        let g = WeylGroup::from_family(Family::GL, 4).unwrap();
        let o = ReflectionOrdering::preset(&g);
        let v = g.from_word(&parse_word("2312").unwrap()).unwrap();
        let paths = increasing_paths(&g, g.identity(), v, &o);
        let names: Vec<Vec<String>> = paths.iter().map(|p| p.edge_names(&g)).collect();
        assert_eq!(names.len(), 2);
        assert!(names.contains(&vec!["s121".to_string(), "s232".to_string()]));
        assert!(names.contains(&vec!["s1".into(), "s121".into(), "s2".into(), "s232".into()]));
        let short = paths.iter().find(|p| p.len() == 2).unwrap();
        let j = path_root_system(&g, short);
        assert_eq!(j.labels(&g), ["a13", "a24"]);
        assert_eq!(j.rank, 2);
        let long = paths.iter().find(|p| p.len() == 4).unwrap();
        assert_eq!(path_root_system(&g, long), RootSubsystem::full(&g));
        for p in &paths {
            assert_eq!(p.end(&g), v);
            assert_eq!(p.edge_product(&g), v);
        }
    }

    #[test]
    fn trivial_cases() {
        let g = WeylGroup::from_family(Family::GL, 3).unwrap();
        let o = ReflectionOrdering::preset(&g);
        let s1 = g.simple(1);
        let s2 = g.simple(2);
        assert_eq!(increasing_paths(&g, s1, s1, &o), vec![BruhatPath { start: s1, edges: vec![] }]);
        assert!(increasing_paths(&g, s1, s2, &o).is_empty());
        let single = BruhatPath { start: g.identity(), edges: vec![1] };
        assert_eq!(path_root_system(&g, &single).root_indices, vec![1]);
        assert_eq!(path_root_system(&g, &BruhatPath { start: 0, edges: vec![] }), RootSubsystem::empty());
    }

    #[test]
    fn rank_helper() {
        assert_eq!(integer_rank(&[vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]]), 2);
        assert_eq!(integer_rank(&[]), 0);
        assert_eq!(integer_rank(&[vec![2, 4], vec![3, 7]]), 2);
    }

    #[test]
    fn reflection_subgroup_membership() {
        let g = WeylGroup::from_family(Family::GL, 4).unwrap();
        let j = root_closure(&g, &[1, 4]);
        let v = g.from_word(&parse_word("2312").unwrap()).unwrap();
        assert!(in_reflection_subgroup(&g, &j, v));
        assert!(!in_reflection_subgroup(&g, &j, g.simple(1)));
    }
}
