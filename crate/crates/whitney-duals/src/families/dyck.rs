//! Labeled Dyck paths, the merging procedure, collections over noncrossing
//! label partitions, and parking-function utilities.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::families::partitions::{blocks_cross, check_n, set_partitions};
use crate::poset::Poset;

pub(crate) const NCDYCK_CAP: usize = 6;

/// A labeled Dyck path on an increasing label set `b_1 < .. < b_l`, stored
/// as the number of north steps (the exponent) on each label's column.
/// Exponents sum to `l - 1` and their prefix sums dominate the column index
/// (the ballot condition).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabeledDyckPath {
    labels: Vec<usize>,
    exps: Vec<usize>,
}

impl LabeledDyckPath {
    pub fn new(labels: Vec<usize>, exps: Vec<usize>) -> Result<LabeledDyckPath> {
        if labels.is_empty() || labels.len() != exps.len() {
            return Err(Error::InvalidInput("labels and exponents must align".into()));
        }
        if labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput("labels must strictly increase".into()));
        }
        let path = LabeledDyckPath { labels, exps };
        if !path.ballot_ok() {
            return Err(Error::InvalidInput(
                "exponents must satisfy the ballot condition".into(),
            ));
        }
        Ok(path)
    }

    pub fn singleton(label: usize) -> LabeledDyckPath {
        LabeledDyckPath {
            labels: vec![label],
            exps: vec![0],
        }
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn exponents(&self) -> &[usize] {
        &self.exps
    }

    fn ballot_ok(&self) -> bool {
        let l = self.labels.len();
        let total: usize = self.exps.iter().sum();
        if total != l - 1 {
            return false;
        }
        let mut acc = 0;
        for m in 1..l {
            acc += self.exps[m - 1];
            if acc < m {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for LabeledDyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .labels
            .iter()
            .zip(&self.exps)
            .map(|(b, e)| format!("{b}^{e}"))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Merge two labeled Dyck paths on disjoint noncrossing label sets: the
/// second path is spliced in after the anchor `max { b in D_1 : b < min D_2 }`
/// (taking the path with the smaller minimum as `D_1`), whose exponent grows
/// by one; all other exponents are preserved.
pub fn dyck_merge(d1: &LabeledDyckPath, d2: &LabeledDyckPath) -> Result<LabeledDyckPath> {
    let (d1, d2) = if d1.labels[0] < d2.labels[0] {
        (d1, d2)
    } else {
        (d2, d1)
    };
    if d1.labels.iter().any(|b| d2.labels.contains(b)) {
        return Err(Error::NonDisjoint);
    }
    if blocks_cross(&d1.labels, &d2.labels) {
        return Err(Error::CrossingLabelSets);
    }
    let c1 = d2.labels[0];
    let anchor = *d1
        .labels
        .iter()
        .filter(|&&b| b < c1)
        .max()
        .expect("d1 holds the smaller minimum");
    let mut pairs: Vec<(usize, usize)> = d1
        .labels
        .iter()
        .zip(&d1.exps)
        .map(|(&b, &e)| (b, if b == anchor { e + 1 } else { e }))
        .chain(d2.labels.iter().zip(&d2.exps).map(|(&b, &e)| (b, e)))
        .collect();
    pairs.sort_unstable();
    let (labels, exps) = pairs.into_iter().unzip();
    let merged = LabeledDyckPath { labels, exps };
    debug_assert!(merged.ballot_ok(), "merging preserves the ballot condition");
    Ok(merged)
}

/// A collection of labeled Dyck paths whose label sets form a noncrossing
/// partition of `[n]`, sorted by smallest label.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DyckCollection {
    paths: Vec<LabeledDyckPath>,
}

impl DyckCollection {
    pub fn paths(&self) -> &[LabeledDyckPath] {
        &self.paths
    }
}

impl fmt::Display for DyckCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.paths.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join("/"))
    }
}

/// All ballot exponent vectors of length `l` (sum `l - 1`, prefix sums at
/// least the column index).
fn ballot_vectors(l: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(l);
    fn rec(l: usize, used: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let m = cur.len();
        if m == l {
            if used == l - 1 {
                out.push(cur.clone());
            }
            return;
        }
        // After placing entry m (0-based), the prefix sum must be at least
        // m + 1 unless this is the last column.
        for e in 0..=(l - 1 - used) {
            let acc = used + e;
            if m + 1 < l && acc < m + 1 {
                continue;
            }
            cur.push(e);
            rec(l, acc, cur, out);
            cur.pop();
        }
    }
    rec(l, 0, &mut cur, &mut out);
    out
}

/// The poset of noncrossing collections of labeled Dyck paths on `[n]`,
/// ordered by merging two component paths.
pub fn ncdyck_poset(n: usize) -> Result<Poset> {
    ncdyck_poset_capped(n, NCDYCK_CAP)
}

pub fn ncdyck_poset_capped(n: usize, cap: usize) -> Result<Poset> {
    check_n(n, cap, "noncrossing Dyck path poset")?;
    let mut elements: Vec<DyckCollection> = Vec::new();
    for partition in set_partitions(n) {
        if !partition.is_noncrossing() {
            continue;
        }
        // One ballot vector choice per block.
        let per_block: Vec<Vec<LabeledDyckPath>> = partition
            .blocks()
            .iter()
            .map(|b| {
                ballot_vectors(b.len())
                    .into_iter()
                    .map(|exps| LabeledDyckPath {
                        labels: b.clone(),
                        exps,
                    })
                    .collect()
            })
            .collect();
        let mut pick = vec![0usize; per_block.len()];
        loop {
            elements.push(DyckCollection {
                paths: pick
                    .iter()
                    .zip(&per_block)
                    .map(|(&i, c)| c[i].clone())
                    .collect(),
            });
            let mut k = 0;
            loop {
                if k == pick.len() {
                    break;
                }
                pick[k] += 1;
                if pick[k] < per_block[k].len() {
                    break;
                }
                pick[k] = 0;
                k += 1;
            }
            if k == pick.len() {
                break;
            }
        }
    }
    let rank_of = |c: &DyckCollection| n - c.paths.len();
    elements.sort_by(|a, b| (rank_of(a), a).cmp(&(rank_of(b), b)));
    let index: BTreeMap<&DyckCollection, usize> =
        elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut covers = Vec::new();
    for (i, e) in elements.iter().enumerate() {
        for a in 0..e.paths.len() {
            for b in a + 1..e.paths.len() {
                // The merged label partition must stay noncrossing against
                // the untouched blocks.
                let mut union: Vec<usize> = e.paths[a]
                    .labels
                    .iter()
                    .chain(e.paths[b].labels.iter())
                    .copied()
                    .collect();
                union.sort_unstable();
                if e.paths
                    .iter()
                    .enumerate()
                    .any(|(k, p)| k != a && k != b && blocks_cross(&union, &p.labels))
                {
                    continue;
                }
                let merged_path = dyck_merge(&e.paths[a], &e.paths[b])?;
                let mut paths: Vec<LabeledDyckPath> = e
                    .paths
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != a && k != b)
                    .map(|(_, p)| p.clone())
                    .collect();
                paths.push(merged_path);
                paths.sort();
                covers.push((i, index[&DyckCollection { paths }]));
            }
        }
    }
    let names: Vec<String> = elements.iter().map(|e| e.to_string()).collect();
    Ok(Poset::build(&covers, elements.len())?.with_names(names))
}

/// Parking-function membership: sorted weakly increasingly, the j-th entry
/// is at most j.
pub fn is_parking_function(word: &[i64]) -> bool {
    let mut sorted = word.to_vec();
    sorted.sort_unstable();
    sorted
        .iter()
        .enumerate()
        .all(|(j, &p)| p >= 1 && p <= j as i64 + 1)
}

/// Bijection from weakly decreasing parking functions of length `n - 1` to
/// labeled Dyck paths on `[n]`: label `i` gets one north step per occurrence.
pub fn decreasing_pf_to_dyck(word: &[i64]) -> Result<LabeledDyckPath> {
    if word.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::NotDecreasing);
    }
    if !is_parking_function(word) {
        return Err(Error::InvalidInput("not a parking function".into()));
    }
    let n = word.len() + 1;
    let mut exps = vec![0usize; n];
    for &p in word {
        exps[p as usize - 1] += 1;
    }
    LabeledDyckPath::new((1..=n).collect(), exps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_worked_example() {
        // 1^2 5^0 6^1 7^0 merged with 2^1 3^1 4^0 anchors at 1.
        let d1 = LabeledDyckPath::new(vec![1, 5, 6, 7], vec![2, 0, 1, 0]).unwrap();
        let d2 = LabeledDyckPath::new(vec![2, 3, 4], vec![1, 1, 0]).unwrap();
        let merged = dyck_merge(&d1, &d2).unwrap();
        assert_eq!(merged.to_string(), "1^3,2^1,3^1,4^0,5^0,6^1,7^0");
        // Argument order does not matter.
        assert_eq!(dyck_merge(&d2, &d1).unwrap(), merged);
    }

    #[test]
    fn merge_singletons() {
        let a = LabeledDyckPath::singleton(2);
        let b = LabeledDyckPath::singleton(5);
        assert_eq!(dyck_merge(&a, &b).unwrap().to_string(), "2^1,5^0");
    }

    #[test]
    fn merge_rejects_bad_label_sets() {
        let d1 = LabeledDyckPath::new(vec![1, 3], vec![1, 0]).unwrap();
        let d2 = LabeledDyckPath::new(vec![2, 4], vec![1, 0]).unwrap();
        assert!(matches!(dyck_merge(&d1, &d2), Err(Error::CrossingLabelSets)));
        let d3 = LabeledDyckPath::new(vec![1, 2], vec![1, 0]).unwrap();
        let d4 = LabeledDyckPath::new(vec![2, 3], vec![1, 0]).unwrap();
        assert!(matches!(dyck_merge(&d3, &d4), Err(Error::NonDisjoint)));
    }

    #[test]
    fn ballot_vector_counts_are_catalan() {
        // 1, 1, 2, 5, 14 for l = 1..5.
        let catalan = [1usize, 1, 2, 5, 14];
        for l in 1..=5 {
            assert_eq!(ballot_vectors(l).len(), catalan[l - 1], "l = {l}");
        }
    }

    #[test]
    fn ncdyck4_shape() {
        let p = ncdyck_poset(4).unwrap();
        // Bottom: four singleton paths. Top rank: Dyck paths of order 3.
        assert_eq!(p.rank_elements(0).len(), 1);
        assert_eq!(p.name(0), "1^0/2^0/3^0/4^0");
        assert_eq!(p.rank_elements(3).len(), 5);
    }

    #[test]
    fn parking_function_membership() {
        assert!(is_parking_function(&[3, 1, 1]));
        assert!(!is_parking_function(&[3, 3, 1]));
        assert!(is_parking_function(&[1, 1, 1]));
        assert!(!is_parking_function(&[0, 1]));
    }

    #[test]
    fn decreasing_pf_bijection() {
        let path = decreasing_pf_to_dyck(&[1, 1, 1]).unwrap();
        assert_eq!(path.to_string(), "1^3,2^0,3^0,4^0");
        let path = decreasing_pf_to_dyck(&[3, 2, 1]).unwrap();
        assert_eq!(path.to_string(), "1^1,2^1,3^1,4^0");
        assert!(matches!(
            decreasing_pf_to_dyck(&[1, 2, 1]),
            Err(Error::NotDecreasing)
        ));
    }

    #[test]
    fn weakly_decreasing_parking_functions_of_length_three() {
        // (1,1,1), (2,1,1), (2,2,1), (3,1,1), (3,2,1).
        let mut found = Vec::new();
        for a in 1..=3i64 {
            for b in 1..=a {
                for c in 1..=b {
                    let w = [a, b, c];
                    if is_parking_function(&w) {
                        found.push(w.to_vec());
                    }
                }
            }
        }
        assert_eq!(
            found,
            vec![
                vec![1, 1, 1],
                vec![2, 1, 1],
                vec![2, 2, 1],
                vec![3, 1, 1],
                vec![3, 2, 1],
            ]
        );
    }
}
