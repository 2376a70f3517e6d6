//! The partition lattice, the noncrossing partition lattice, and minimum
//! labelings of geometric lattices.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::labeling::{EdgeLabeling, Label, LabelOrder};
use crate::poset::Poset;

pub(crate) const PI_CAP: usize = 7;
pub(crate) const NC_CAP: usize = 7;

/// A partition of `[n] = {1, .., n}` into disjoint nonempty blocks.
/// Canonical form: elements ascending within blocks, blocks ascending by
/// minimum.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn new(mut blocks: Vec<Vec<usize>>) -> SetPartition {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort();
        SetPartition { blocks }
    }

    pub fn singletons(n: usize) -> SetPartition {
        SetPartition {
            blocks: (1..=n).map(|v| vec![v]).collect(),
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn n_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Merge blocks `i` and `j` (indices into the canonical block list).
    pub fn merge(&self, i: usize, j: usize) -> SetPartition {
        let mut blocks: Vec<Vec<usize>> = Vec::with_capacity(self.blocks.len() - 1);
        let mut merged = self.blocks[i].clone();
        merged.extend_from_slice(&self.blocks[j]);
        for (k, b) in self.blocks.iter().enumerate() {
            if k != i && k != j {
                blocks.push(b.clone());
            }
        }
        blocks.push(merged);
        SetPartition::new(blocks)
    }

    /// No `a < b < c < d` with `a, c` in one block and `b, d` in another.
    pub fn is_noncrossing(&self) -> bool {
        for i in 0..self.blocks.len() {
            for j in i + 1..self.blocks.len() {
                if blocks_cross(&self.blocks[i], &self.blocks[j]) {
                    return false;
                }
            }
        }
        true
    }
}

/// Two disjoint sorted sets cross iff their merged tag sequence alternates
/// at least four times (an a < b < c < d pattern).
pub(crate) fn blocks_cross(a: &[usize], b: &[usize]) -> bool {
    let mut tags: Vec<(usize, u8)> = a
        .iter()
        .map(|&v| (v, 0u8))
        .chain(b.iter().map(|&v| (v, 1u8)))
        .collect();
    tags.sort_unstable();
    let mut runs = 0;
    let mut last = 2u8;
    for (_, t) in tags {
        if t != last {
            runs += 1;
            last = t;
        }
    }
    runs >= 4
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", parts.join("/"))
    }
}

/// All partitions of `[n]`, by restricted-growth assignment.
pub fn set_partitions(n: usize) -> Vec<SetPartition> {
    let mut out = Vec::new();
    let mut assign = vec![0usize; n];
    fn rec(v: usize, n: usize, k: usize, assign: &mut Vec<usize>, out: &mut Vec<SetPartition>) {
        if v == n {
            let mut blocks = vec![Vec::new(); k];
            for (i, &b) in assign.iter().enumerate() {
                blocks[b].push(i + 1);
            }
            out.push(SetPartition::new(blocks));
            return;
        }
        for b in 0..=k {
            assign[v] = b;
            rec(v + 1, n, k.max(b + 1), assign, out);
        }
    }
    rec(0, n, 0, &mut assign, &mut out);
    out
}

fn assemble<T: Ord + Clone + fmt::Display>(
    n: usize,
    elements: Vec<T>,
    rank_of: impl Fn(&T) -> usize,
    covers_of: impl Fn(&T) -> Vec<(T, Label)>,
    order: LabelOrder,
) -> Result<(Poset, EdgeLabeling, Vec<T>)> {
    let mut sorted: Vec<T> = elements;
    sorted.sort_by(|a, b| (rank_of(a), a).cmp(&(rank_of(b), b)));
    let index: BTreeMap<T, usize> = sorted
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();
    let mut covers = Vec::new();
    let mut labels = BTreeMap::new();
    for (i, e) in sorted.iter().enumerate() {
        for (parent, label) in covers_of(e) {
            let j = index[&parent];
            covers.push((i, j));
            labels.insert((i, j), label);
        }
    }
    let names: Vec<String> = sorted.iter().map(|e| e.to_string()).collect();
    let poset = Poset::build(&covers, n)?.with_names(names);
    let labeling = EdgeLabeling::new(&poset, labels, order)?;
    Ok((poset, labeling, sorted))
}

/// The partition lattice of `[n]` with the minimum labeling
/// `(min block, min block)` of the two merged blocks, compared
/// lexicographically.
pub fn partition_lattice(n: usize) -> Result<(Poset, EdgeLabeling)> {
    partition_lattice_capped(n, PI_CAP)
}

pub fn partition_lattice_capped(n: usize, cap: usize) -> Result<(Poset, EdgeLabeling)> {
    check_n(n, cap, "partition lattice")?;
    let elements = set_partitions(n);
    let count = elements.len();
    let (poset, labeling, _) = assemble(
        count,
        elements,
        |p| n - p.n_blocks(),
        |p| {
            let mut out = Vec::new();
            for i in 0..p.n_blocks() {
                for j in i + 1..p.n_blocks() {
                    let label = Label::pair(p.blocks()[i][0] as i64, p.blocks()[j][0] as i64);
                    out.push((p.merge(i, j), label));
                }
            }
            out
        },
        LabelOrder::LexTotal,
    )?;
    Ok((poset, labeling))
}

/// The noncrossing partition lattice with the parking-function labeling
/// `max { a in B_i : a < min B_j }`.
pub fn noncrossing_lattice(n: usize) -> Result<(Poset, EdgeLabeling)> {
    noncrossing_lattice_capped(n, NC_CAP)
}

pub fn noncrossing_lattice_capped(n: usize, cap: usize) -> Result<(Poset, EdgeLabeling)> {
    check_n(n, cap, "noncrossing partition lattice")?;
    let elements: Vec<SetPartition> = set_partitions(n)
        .into_iter()
        .filter(SetPartition::is_noncrossing)
        .collect();
    let count = elements.len();
    let (poset, labeling, _) = assemble(
        count,
        elements,
        |p| n - p.n_blocks(),
        |p| {
            let mut out = Vec::new();
            for i in 0..p.n_blocks() {
                for j in i + 1..p.n_blocks() {
                    let merged = p.merge(i, j);
                    if !merged.is_noncrossing() {
                        continue;
                    }
                    // Blocks are sorted by minimum, so block i holds the
                    // smaller minimum.
                    let min_j = p.blocks()[j][0];
                    let a = *p.blocks()[i]
                        .iter()
                        .filter(|&&a| a < min_j)
                        .max()
                        .expect("min of block i is below min of block j");
                    out.push((merged, Label::single(a as i64)));
                }
            }
            out
        },
        LabelOrder::LexTotal,
    )?;
    Ok((poset, labeling))
}

pub(crate) fn check_n(n: usize, cap: usize, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput(format!("{what} needs n >= 1")));
    }
    if n > cap {
        return Err(Error::SizeLimit(format!(
            "{what} capped at n = {cap} (requested {n})"
        )));
    }
    Ok(())
}

/// Björner-Stanley minimum labeling of a geometric lattice: the edge
/// `x < y` is labeled by the `atom_order`-smallest atom `a` with
/// `x v a = y`. Labels are the 1-based positions in `atom_order`.
///
/// The lattice, atomicity, and semimodularity hypotheses are all checked.
pub fn minimum_labeling(p: &Poset, atom_order: &[usize]) -> Result<EdgeLabeling> {
    let atoms = p.atoms();
    {
        let mut sorted = atom_order.to_vec();
        sorted.sort_unstable();
        if sorted != atoms {
            return Err(Error::InvalidInput(
                "atom_order must be a permutation of the rank-1 elements".into(),
            ));
        }
    }
    if !p.is_lattice() {
        return Err(Error::NotGeometric("not a lattice".into()));
    }
    // Atomic: every element is the join of the atoms below it.
    for x in 0..p.n_elements() {
        if p.rank(x) == 0 {
            continue;
        }
        let mut acc = p.min_element();
        for &a in atoms.iter().filter(|&&a| p.le(a, x)) {
            acc = p
                .join(acc, a)
                .ok_or_else(|| Error::NotGeometric("join of atoms missing".into()))?;
        }
        if acc != x {
            return Err(Error::NotGeometric(format!(
                "element {} is not a join of atoms",
                p.name(x)
            )));
        }
    }
    // Semimodular: rank(x v y) + rank(x ^ y) <= rank(x) + rank(y).
    for x in 0..p.n_elements() {
        for y in x + 1..p.n_elements() {
            let j = p.join(x, y).ok_or_else(|| Error::NotGeometric("no join".into()))?;
            let m = p.meet(x, y).ok_or_else(|| Error::NotGeometric("no meet".into()))?;
            if p.rank(j) + p.rank(m) > p.rank(x) + p.rank(y) {
                return Err(Error::NotGeometric(format!(
                    "rank inequality fails at {} and {}",
                    p.name(x),
                    p.name(y)
                )));
            }
        }
    }

    let mut labels = BTreeMap::new();
    for &(lo, hi) in p.covers() {
        let pos = atom_order
            .iter()
            .position(|&a| p.join(lo, a) == Some(hi))
            .ok_or_else(|| {
                Error::NotGeometric(format!(
                    "no atom joins {} up to {}",
                    p.name(lo),
                    p.name(hi)
                ))
            })?;
        labels.insert((lo, hi), Label::single(pos as i64 + 1));
    }
    EdgeLabeling::new(p, labels, LabelOrder::LexTotal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::Labeling;

    fn bell(n: usize) -> usize {
        // Bell triangle.
        let mut row = vec![1usize];
        for _ in 1..n {
            let mut next = vec![*row.last().unwrap()];
            for v in &row {
                next.push(next.last().unwrap() + v);
            }
            row = next;
        }
        *row.last().unwrap()
    }

    fn catalan(n: usize) -> usize {
        let mut c = vec![0usize; n + 1];
        c[0] = 1;
        for i in 1..=n {
            for j in 0..i {
                c[i] += c[j] * c[i - 1 - j];
            }
        }
        c[n]
    }

    #[test]
    fn partition_counts_match_bell() {
        for n in 1..=6 {
            assert_eq!(set_partitions(n).len(), bell(n), "n = {n}");
        }
    }

    #[test]
    fn pi3_structure_and_labels() {
        let (p, lab) = partition_lattice(3).unwrap();
        assert_eq!(p.n_elements(), 5);
        assert_eq!(p.whitney_second().0, vec![1, 3, 1]);
        assert_eq!(p.whitney_first().0, vec![1, -3, 2]);
        // The increasing chain runs through 12/3 with word (1,2)(1,3).
        let words: Vec<_> = p
            .maximal_chains()
            .iter()
            .map(|c| lab.word(&p, &c.0).unwrap())
            .collect();
        assert!(words.contains(&vec![Label::pair(1, 2), Label::pair(1, 3)]));
        assert!(words.contains(&vec![Label::pair(1, 3), Label::pair(1, 2)]));
        assert!(words.contains(&vec![Label::pair(2, 3), Label::pair(1, 2)]));
    }

    #[test]
    fn pi4_has_18_maximal_chains() {
        let (p, _) = partition_lattice(4).unwrap();
        assert_eq!(p.n_elements(), 15);
        assert_eq!(p.maximal_chains().len(), 18);
    }

    #[test]
    fn pi1_is_a_point() {
        let (p, _) = partition_lattice(1).unwrap();
        assert_eq!(p.n_elements(), 1);
    }

    #[test]
    fn crossing_detection() {
        // 124/35/67 crosses; 127/36/45 is noncrossing.
        assert!(!SetPartition::new(vec![vec![1, 2, 4], vec![3, 5], vec![6, 7]]).is_noncrossing());
        assert!(SetPartition::new(vec![vec![1, 2, 7], vec![3, 6], vec![4, 5]]).is_noncrossing());
    }

    #[test]
    fn nc_counts_match_catalan() {
        for n in 1..=6 {
            let count = set_partitions(n)
                .into_iter()
                .filter(|p| p.is_noncrossing())
                .count();
            assert_eq!(count, catalan(n), "n = {n}");
        }
    }

    #[test]
    fn nc4_structure_and_chain_words() {
        let (p, lab) = noncrossing_lattice(4).unwrap();
        assert_eq!(p.n_elements(), 14);
        let chains = p.maximal_chains();
        assert_eq!(chains.len(), 16);
        let mut words: Vec<Vec<i64>> = chains
            .iter()
            .map(|c| lab.word(&p, &c.0).unwrap().iter().map(|l| l.0[0]).collect())
            .collect();
        words.sort();
        let mut expected: Vec<Vec<i64>> = vec![vec![1, 1, 1]];
        for perm in [
            [1, 1, 2],
            [1, 2, 1],
            [2, 1, 1],
            [1, 1, 3],
            [1, 3, 1],
            [3, 1, 1],
            [1, 2, 2],
            [2, 1, 2],
            [2, 2, 1],
            [1, 2, 3],
            [1, 3, 2],
            [2, 1, 3],
            [2, 3, 1],
            [3, 1, 2],
            [3, 2, 1],
        ] {
            expected.push(perm.to_vec());
        }
        expected.sort();
        assert_eq!(words, expected);
    }

    #[test]
    fn nc3_equals_pi3() {
        let (nc, _) = noncrossing_lattice(3).unwrap();
        let (pi, _) = partition_lattice(3).unwrap();
        assert!(crate::iso::are_isomorphic(&nc, &pi).is_some());
    }

    #[test]
    fn nc4_mobius_is_catalan() {
        let (p, _) = noncrossing_lattice(4).unwrap();
        let top = p.max_element().unwrap();
        assert_eq!(p.mobius(0, top).unwrap(), -5);
    }

    #[test]
    fn minimum_labeling_matches_pair_labeling_on_pi3() {
        let (p, pairs) = partition_lattice(3).unwrap();
        // Order atoms by their pair encoding (lexicographic).
        let mut atom_order = p.atoms().to_vec();
        atom_order.sort_by_key(|&a| pairs.label_of(0, a).unwrap().clone());
        let min_lab = minimum_labeling(&p, &atom_order).unwrap();
        // Edge-wise order isomorphism with the pair labeling.
        let covers = p.covers();
        for &(a, b) in covers {
            for &(c, d) in covers {
                let lt_pairs = pairs.order().lt(
                    pairs.label_of(a, b).unwrap(),
                    pairs.label_of(c, d).unwrap(),
                );
                let lt_min = min_lab.order().lt(
                    min_lab.label_of(a, b).unwrap(),
                    min_lab.label_of(c, d).unwrap(),
                );
                assert_eq!(lt_pairs, lt_min);
            }
        }
    }

    #[test]
    fn chain_is_not_geometric() {
        let p = Poset::build(&[(0, 1), (1, 2)], 3).unwrap();
        assert!(matches!(
            minimum_labeling(&p, &[1]),
            Err(Error::NotGeometric(_))
        ));
    }

    #[test]
    fn caps_are_enforced() {
        assert!(matches!(partition_lattice(8), Err(Error::SizeLimit(_))));
        assert!(matches!(noncrossing_lattice(8), Err(Error::SizeLimit(_))));
    }
}
