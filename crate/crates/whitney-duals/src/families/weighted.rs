//! The poset of weighted partitions, its edge labeling over the ordinal-sum
//! order, its chain-edge labeling through rooted forests, and the forest map
//! connecting chains of weighted partitions with rooted spanning forests.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::families::forests::{sf_label, RootedForest};
use crate::families::partitions::{check_n, set_partitions};
use crate::labeling::{ChainEdgeLabeling, EdgeLabeling, Label, LabelOrder};
use crate::poset::{Poset, SaturatedChain};

pub(crate) const PIW_CAP: usize = 5;

/// A partition of `[n]` whose blocks each carry a weight in
/// `{0, .., |block| - 1}`. Canonical form: elements ascending within blocks,
/// blocks ascending by minimum.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightedPartition {
    blocks: Vec<(Vec<usize>, usize)>,
}

impl WeightedPartition {
    pub fn new(mut blocks: Vec<(Vec<usize>, usize)>) -> Result<WeightedPartition> {
        for (b, w) in &mut blocks {
            b.sort_unstable();
            if *w >= b.len() {
                return Err(Error::InvalidInput(format!(
                    "block weight {w} exceeds size bound {}",
                    b.len() - 1
                )));
            }
        }
        blocks.sort();
        Ok(WeightedPartition { blocks })
    }

    /// All singletons with weight zero.
    pub fn singletons(n: usize) -> WeightedPartition {
        WeightedPartition {
            blocks: (1..=n).map(|v| (vec![v], 0)).collect(),
        }
    }

    pub fn blocks(&self) -> &[(Vec<usize>, usize)] {
        &self.blocks
    }

    pub fn n_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Merge blocks `i` and `j`, adding `u` to the weight sum.
    pub fn merge(&self, i: usize, j: usize, u: usize) -> WeightedPartition {
        let mut set = self.blocks[i].0.clone();
        set.extend_from_slice(&self.blocks[j].0);
        set.sort_unstable();
        let weight = self.blocks[i].1 + self.blocks[j].1 + u;
        let mut blocks: Vec<(Vec<usize>, usize)> = self
            .blocks
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i && k != j)
            .map(|(_, b)| b.clone())
            .collect();
        blocks.push((set, weight));
        blocks.sort();
        WeightedPartition { blocks }
    }
}

impl fmt::Display for WeightedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|(b, w)| {
                format!(
                    "{}^{w}",
                    b.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
                )
            })
            .collect();
        write!(f, "{}", parts.join("/"))
    }
}

/// All weighted partitions of `[n]`.
pub fn weighted_partitions(n: usize) -> Vec<WeightedPartition> {
    let mut out = Vec::new();
    for p in set_partitions(n) {
        let sizes: Vec<usize> = p.blocks().iter().map(Vec::len).collect();
        let mut weights = vec![0usize; sizes.len()];
        loop {
            out.push(WeightedPartition {
                blocks: p
                    .blocks()
                    .iter()
                    .cloned()
                    .zip(weights.iter().copied())
                    .collect(),
            });
            let mut k = 0;
            loop {
                if k == weights.len() {
                    break;
                }
                weights[k] += 1;
                if weights[k] < sizes[k] {
                    break;
                }
                weights[k] = 0;
                k += 1;
            }
            if k == weights.len() {
                break;
            }
        }
    }
    out
}

/// Identify the cover step from `lower` to `upper`: the indices of the two
/// merged blocks of `lower` and the extra weight `u`.
pub fn cover_step(
    lower: &WeightedPartition,
    upper: &WeightedPartition,
) -> Result<(usize, usize, usize)> {
    if upper.n_blocks() + 1 != lower.n_blocks() {
        return Err(Error::InvalidInput("not a weighted-partition cover".into()));
    }
    let upper_sets: Vec<&Vec<usize>> = upper.blocks.iter().map(|(b, _)| b).collect();
    let gone: Vec<usize> = lower
        .blocks
        .iter()
        .enumerate()
        .filter(|(_, (b, _))| !upper_sets.contains(&b))
        .map(|(k, _)| k)
        .collect();
    if gone.len() != 2 {
        return Err(Error::InvalidInput("cover must merge exactly two blocks".into()));
    }
    let (i, j) = (gone[0], gone[1]);
    let mut merged = lower.blocks[i].0.clone();
    merged.extend_from_slice(&lower.blocks[j].0);
    merged.sort_unstable();
    let (_, v) = upper
        .blocks
        .iter()
        .find(|(b, _)| *b == merged)
        .ok_or_else(|| Error::InvalidInput("merged block missing upstairs".into()))?;
    let (wi, wj) = (lower.blocks[i].1, lower.blocks[j].1);
    let u = v
        .checked_sub(wi + wj)
        .filter(|&u| u <= 1)
        .ok_or_else(|| Error::InvalidInput("weight step must add 0 or 1".into()))?;
    // Unchanged blocks must keep their weights.
    for (k, (b, w)) in lower.blocks.iter().enumerate() {
        if k != i && k != j && !upper.blocks.contains(&(b.clone(), *w)) {
            return Err(Error::InvalidInput("an unmerged block changed weight".into()));
        }
    }
    Ok((i, j, u))
}

/// The forest map: reconstruct the rooted spanning forest built along a
/// saturated chain of weighted partitions from the all-singletons bottom.
/// Each step merges the trees over the two merged blocks by their roots and
/// keeps the smaller root when the weight step is 0, the larger when it is 1.
pub fn forest_map_values(chain: &[WeightedPartition]) -> Result<RootedForest> {
    if chain.is_empty() {
        return Err(Error::InvalidInput("empty chain".into()));
    }
    let n: usize = chain[0].blocks.iter().map(|(b, _)| b.len()).sum();
    if chain[0] != WeightedPartition::singletons(n) {
        return Err(Error::InvalidInput("chain must start at the minimum".into()));
    }
    let mut forest = RootedForest::discrete(n);
    for step in chain.windows(2) {
        forest = forest_step(&forest, &step[0], &step[1])?;
    }
    Ok(forest)
}

fn forest_step(
    forest: &RootedForest,
    lower: &WeightedPartition,
    upper: &WeightedPartition,
) -> Result<RootedForest> {
    let (i, j, u) = cover_step(lower, upper)?;
    let ri = forest.root_of(lower.blocks[i].0[0]);
    let rj = forest.root_of(lower.blocks[j].0[0]);
    let keep = if u == 0 { ri.min(rj) } else { ri.max(rj) };
    forest.merge_at_roots(ri, rj, keep)
}

/// The weighted partition attached to a rooted forest: one block per tree,
/// weighted by its number of descent edges.
pub fn pi_of_forest(forest: &RootedForest) -> WeightedPartition {
    let mut blocks = Vec::new();
    for &r in forest.roots() {
        blocks.push((forest.tree_vertices(r), forest.tree_descents(r)));
    }
    blocks.sort();
    WeightedPartition { blocks }
}

/// Labels of a chain of weighted-partition values under the chain-edge
/// labeling through the forest map.
pub fn lambda_c_labels(chain: &[WeightedPartition]) -> Result<Vec<Label>> {
    if chain.is_empty() {
        return Err(Error::InvalidInput("empty chain".into()));
    }
    let n: usize = chain[0].blocks.iter().map(|(b, _)| b.len()).sum();
    let mut forest = RootedForest::discrete(n);
    let mut labels = Vec::with_capacity(chain.len() - 1);
    for step in chain.windows(2) {
        let next = forest_step(&forest, &step[0], &step[1])?;
        labels.push(sf_label(&forest, &next)?);
        forest = next;
    }
    Ok(labels)
}

/// The poset of weighted partitions of `[n]` together with its element
/// values.
pub struct WeightedPartitionFamily {
    pub poset: Poset,
    pub elements: Vec<WeightedPartition>,
    pub n: usize,
}

pub fn weighted_partition_poset(n: usize) -> Result<WeightedPartitionFamily> {
    weighted_partition_poset_capped(n, PIW_CAP)
}

pub fn weighted_partition_poset_capped(n: usize, cap: usize) -> Result<WeightedPartitionFamily> {
    check_n(n, cap, "weighted partition poset")?;
    let mut elements = weighted_partitions(n);
    elements.sort_by(|a, b| {
        ((n - a.n_blocks()), a.blocks()).cmp(&((n - b.n_blocks()), b.blocks()))
    });
    let index: BTreeMap<&WeightedPartition, usize> =
        elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut covers = Vec::new();
    for (i, e) in elements.iter().enumerate() {
        for bi in 0..e.n_blocks() {
            for bj in bi + 1..e.n_blocks() {
                for u in 0..=1usize {
                    let merged = e.merge(bi, bj, u);
                    covers.push((i, index[&merged]));
                }
            }
        }
    }
    let names: Vec<String> = elements.iter().map(|e| e.to_string()).collect();
    let poset = Poset::build(&covers, elements.len())?.with_names(names);
    Ok(WeightedPartitionFamily { poset, elements, n })
}

impl WeightedPartitionFamily {
    /// The edge labeling `(min A, min B)^u` over the ordinal-sum label order.
    /// The exponent `u` lives in the third tuple slot.
    pub fn lambda_e(&self) -> Result<EdgeLabeling> {
        let mut labels = BTreeMap::new();
        for &(lo, hi) in self.poset.covers() {
            let lower = &self.elements[lo];
            let upper = &self.elements[hi];
            let (i, j, u) = cover_step(lower, upper)?;
            labels.insert(
                (lo, hi),
                Label::triple(
                    lower.blocks()[i].0[0] as i64,
                    lower.blocks()[j].0[0] as i64,
                    u as i64,
                ),
            );
        }
        EdgeLabeling::new(
            &self.poset,
            labels,
            LabelOrder::OrdinalSumGamma { n: self.n },
        )
    }

    /// The chain-edge labeling routed through the forest map: the label of
    /// the top edge of a chain prefix is the spanning-forest label of the
    /// corresponding forest merge, in lexicographic `Z^3`.
    pub fn lambda_c(&self) -> ChainEdgeLabeling {
        let elements = self.elements.clone();
        ChainEdgeLabeling::new("lambda_C", LabelOrder::LexTotal, move |_p, prefix| {
            let values: Vec<WeightedPartition> =
                prefix.iter().map(|&id| elements[id].clone()).collect();
            let labels = lambda_c_labels(&values)?;
            Ok(labels.last().expect("prefix has at least one edge").clone())
        })
    }

    /// Forest image of a saturated chain from the minimum.
    pub fn forest_map(&self, chain: &SaturatedChain) -> Result<RootedForest> {
        let values: Vec<WeightedPartition> =
            chain.0.iter().map(|&id| self.elements[id].clone()).collect();
        forest_map_values(&values)
    }

    pub fn element_id(&self, value: &WeightedPartition) -> Option<usize> {
        self.elements.iter().position(|e| e == value)
    }
}
