//! Labels, label orders, and edge / chain-edge labelings of graded posets.
//!
//! Labels are integer tuples compared under a pluggable partial order.
//! "Increasing" always means strictly increasing, and "ascent-free" means no
//! strict ascent; incomparable adjacent labels count as non-ascents. This
//! matters for genuinely partial orders such as [`LabelOrder::OrdinalSumGamma`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{Poset, SaturatedChain};

/// Closure type of chain-edge labelings: maps a chain prefix to the label
/// of its last edge.
pub type ChainLabelFn = Arc<dyn Fn(&Poset, &[usize]) -> Result<Label> + Send + Sync>;

/// An integer-tuple label on a Hasse edge. The tuple length is uniform
/// within one labeling.
///
/// The derived `Ord` is plain lexicographic comparison and is used only for
/// canonical sorting and map keys; semantic comparisons go through
/// [`LabelOrder`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Label(pub Vec<i64>);

impl Label {
    pub fn single(v: i64) -> Label {
        Label(vec![v])
    }

    pub fn pair(a: i64, b: i64) -> Label {
        Label(vec![a, b])
    }

    pub fn triple(a: i64, b: i64, c: i64) -> Label {
        Label(vec![a, b, c])
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            write!(f, "{}", self.0[0])
        } else {
            write!(f, "(")?;
            for (i, v) in self.0.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, ")")
        }
    }
}

/// A word of labels read along a saturated chain, bottom to top.
pub type LabelWord = Vec<Label>;

/// Render a word as `(1,2)(1,3)`.
pub fn word_string(word: &[Label]) -> String {
    if word.is_empty() {
        return "()".to_string();
    }
    word.iter().map(|l| format!("{l}")).collect::<Vec<_>>().join("")
}

/// The strict partial order used to compare labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum LabelOrder {
    /// Total lexicographic order on integer tuples.
    LexTotal,
    /// The ordinal sum `Gamma_1 + ... + Gamma_n` on labels `(a, b, u)`:
    /// labels with distinct first coordinates are ordered by them wholesale;
    /// within a block, `(a,b,u) <= (a,b',u')` iff `b <= b'` and `u <= u'`.
    OrdinalSumGamma { n: usize },
    /// Explicit strict order pairs `(smaller, larger)`; must be irreflexive
    /// and transitively closed on the labels in use.
    CustomPartial { pairs: BTreeSet<(Label, Label)> },
}

impl LabelOrder {
    /// Strict comparison `a < b`.
    pub fn lt(&self, a: &Label, b: &Label) -> bool {
        match self {
            LabelOrder::LexTotal => a.0 < b.0,
            LabelOrder::OrdinalSumGamma { .. } => {
                let (a0, a1, a2) = (a.0[0], a.0[1], a.0[2]);
                let (b0, b1, b2) = (b.0[0], b.0[1], b.0[2]);
                if a0 != b0 {
                    return a0 < b0;
                }
                a1 <= b1 && a2 <= b2 && (a1, a2) != (b1, b2)
            }
            LabelOrder::CustomPartial { pairs } => pairs.contains(&(a.clone(), b.clone())),
        }
    }

    pub fn comparable(&self, a: &Label, b: &Label) -> bool {
        a == b || self.lt(a, b) || self.lt(b, a)
    }

    /// Validate that this is a strict partial order on the given label set.
    pub fn validate_on(&self, labels: &BTreeSet<Label>) -> Result<()> {
        if let LabelOrder::OrdinalSumGamma { .. } = self {
            if let Some(bad) = labels.iter().find(|l| l.0.len() != 3) {
                return Err(Error::InvalidLabelOrder(format!(
                    "ordinal-sum labels are triples, got {bad}"
                )));
            }
        }
        if let LabelOrder::CustomPartial { pairs } = self {
            for (a, b) in pairs {
                if a == b {
                    return Err(Error::InvalidLabelOrder(format!(
                        "reflexive pair on label {a}"
                    )));
                }
                if pairs.contains(&(b.clone(), a.clone())) {
                    return Err(Error::InvalidLabelOrder(format!(
                        "labels {a} and {b} compare both ways"
                    )));
                }
            }
            for (a, b) in pairs {
                for (b2, c) in pairs {
                    if b == b2 && !pairs.contains(&(a.clone(), c.clone())) {
                        return Err(Error::InvalidLabelOrder(format!(
                            "missing transitive pair {a} < {c}"
                        )));
                    }
                }
            }
        }
        let _ = labels;
        Ok(())
    }
}

/// Classification of a label word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WordShape {
    Increasing,
    AscentFree,
    Mixed,
}

/// Classify a word as strictly increasing, ascent-free, or mixed. The empty
/// word (and any single-letter word) is both; by convention it reports
/// `Increasing`.
pub fn classify_word(word: &[Label], order: &LabelOrder) -> WordShape {
    let increasing = word.windows(2).all(|w| order.lt(&w[0], &w[1]));
    if increasing {
        return WordShape::Increasing;
    }
    let ascent_free = word.windows(2).all(|w| !order.lt(&w[0], &w[1]));
    if ascent_free {
        WordShape::AscentFree
    } else {
        WordShape::Mixed
    }
}

/// Descent set `D = { i : w_i not< w_{i+1} }` of a word, 1-indexed.
/// Incomparable adjacent labels count as descents.
pub fn descent_set(word: &[Label], order: &LabelOrder) -> Vec<usize> {
    word.windows(2)
        .enumerate()
        .filter(|(_, w)| !order.lt(&w[0], &w[1]))
        .map(|(i, _)| i + 1)
        .collect()
}

/// Ascent set `A = { i : w_i < w_{i+1} }` of a word, 1-indexed.
pub fn ascent_set(word: &[Label], order: &LabelOrder) -> Vec<usize> {
    word.windows(2)
        .enumerate()
        .filter(|(_, w)| order.lt(&w[0], &w[1]))
        .map(|(i, _)| i + 1)
        .collect()
}

/// Descent set of a saturated chain under a labeling (chains from the
/// minimum for chain-edge labelings).
pub fn descent_set_of_chain(
    labeling: &dyn Labeling,
    p: &Poset,
    chain: &SaturatedChain,
) -> Result<Vec<usize>> {
    Ok(descent_set(&labeling.word(p, &chain.0)?, labeling.order()))
}

/// Ascent set of a saturated chain under a labeling.
pub fn ascent_set_of_chain(
    labeling: &dyn Labeling,
    p: &Poset,
    chain: &SaturatedChain,
) -> Result<Vec<usize>> {
    Ok(ascent_set(&labeling.word(p, &chain.0)?, labeling.order()))
}

/// Common interface of edge labelings and chain-edge labelings.
///
/// A labeling assigns a [`Label`] to the last edge of a saturated chain
/// prefix. For edge labelings only the last two elements matter; chain-edge
/// labelings may consult the whole prefix, which must start at the minimum.
/// Bottom-consistency is structural: the label of edge `i` is a function of
/// the chain prefix `c_i` alone.
pub trait Labeling: Send + Sync {
    fn order(&self) -> &LabelOrder;

    /// Label of the last edge of `prefix` (`prefix.len() >= 2`).
    fn label(&self, p: &Poset, prefix: &[usize]) -> Result<Label>;

    /// `Some` when this labeling is a plain edge labeling.
    fn as_edge(&self) -> Option<&EdgeLabeling> {
        None
    }

    /// Word of labels of a chain, bottom to top. For chain-edge labelings
    /// the chain must start at the minimum.
    fn word(&self, p: &Poset, chain: &[usize]) -> Result<LabelWord> {
        (2..=chain.len()).map(|i| self.label(p, &chain[..i])).collect()
    }

    /// Word of the top `k` edges of `chain`.
    fn word_suffix(&self, p: &Poset, chain: &[usize], k: usize) -> Result<LabelWord> {
        (chain.len() - k + 1..=chain.len())
            .map(|i| self.label(p, &chain[..i]))
            .collect()
    }
}

/// A total assignment of labels to the Hasse edges of a poset.
#[derive(Debug, Clone)]
pub struct EdgeLabeling {
    labels: BTreeMap<(usize, usize), Label>,
    order: LabelOrder,
}

impl EdgeLabeling {
    /// Build an edge labeling; every cover of `p` must carry a label.
    pub fn new(
        p: &Poset,
        labels: BTreeMap<(usize, usize), Label>,
        order: LabelOrder,
    ) -> Result<EdgeLabeling> {
        for &(lo, hi) in p.covers() {
            if !labels.contains_key(&(lo, hi)) {
                return Err(Error::MissingLabel(lo, hi));
            }
        }
        let used: BTreeSet<Label> = labels.values().cloned().collect();
        order.validate_on(&used)?;
        Ok(EdgeLabeling { labels, order })
    }

    pub fn label_of(&self, lo: usize, hi: usize) -> Result<&Label> {
        self.labels.get(&(lo, hi)).ok_or(Error::MissingLabel(lo, hi))
    }

    pub fn labels(&self) -> &BTreeMap<(usize, usize), Label> {
        &self.labels
    }
}

impl Labeling for EdgeLabeling {
    fn order(&self) -> &LabelOrder {
        &self.order
    }

    fn label(&self, _p: &Poset, prefix: &[usize]) -> Result<Label> {
        let lo = prefix[prefix.len() - 2];
        let hi = prefix[prefix.len() - 1];
        self.label_of(lo, hi).cloned()
    }

    fn as_edge(&self) -> Option<&EdgeLabeling> {
        Some(self)
    }
}

/// A chain-edge labeling: the label of an edge may depend on the whole chain
/// prefix below it (which must start at the minimum).
#[derive(Clone)]
pub struct ChainEdgeLabeling {
    f: ChainLabelFn,
    order: LabelOrder,
    name: String,
}

impl ChainEdgeLabeling {
    pub fn new(
        name: impl Into<String>,
        order: LabelOrder,
        f: impl Fn(&Poset, &[usize]) -> Result<Label> + Send + Sync + 'static,
    ) -> ChainEdgeLabeling {
        ChainEdgeLabeling {
            f: Arc::new(f),
            order,
            name: name.into(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl fmt::Debug for ChainEdgeLabeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChainEdgeLabeling")
            .field("name", &self.name)
            .finish()
    }
}

impl Labeling for ChainEdgeLabeling {
    fn order(&self) -> &LabelOrder {
        &self.order
    }

    fn label(&self, p: &Poset, prefix: &[usize]) -> Result<Label> {
        debug_assert_eq!(prefix[0], p.min_element(), "chain must start at the minimum");
        (self.f)(p, prefix)
    }
}

/// An owned labeling of either kind, as the CLI and family dispatcher hand
/// them around.
#[derive(Debug, Clone)]
pub enum LabelingKind {
    Edge(EdgeLabeling),
    Chain(ChainEdgeLabeling),
}

impl LabelingKind {
    pub fn as_dyn(&self) -> &dyn Labeling {
        match self {
            LabelingKind::Edge(e) => e,
            LabelingKind::Chain(c) => c,
        }
    }
}

/// Word of labels of a saturated chain under a labeling (bottom to top).
/// For chain-edge labelings the chain must start at the minimum.
pub fn word_of_labels(
    labeling: &dyn Labeling,
    p: &Poset,
    chain: &SaturatedChain,
) -> Result<LabelWord> {
    labeling.word(p, &chain.0)
}

/// Apply the quadratic exchange at rank `i` to a chain, where `i` counts
/// cover steps from the bottom of the chain (so `1 <= i <= steps - 1`).
///
/// If the chain has no ascent at rank `i`, the chain itself is returned.
/// Otherwise the unique chain differing only at position `i`, with the two
/// window labels transposed and every other label unchanged, is returned; a
/// missing or ambiguous replacement is a `SwitchingViolation`.
pub fn quadratic_exchange(
    p: &Poset,
    labeling: &dyn Labeling,
    chain: &SaturatedChain,
    i: usize,
) -> Result<SaturatedChain> {
    let word = labeling.word(p, &chain.0)?;
    match exchange_at(p, labeling, &chain.0, &word, i)? {
        Some((elements, _)) => Ok(SaturatedChain(elements)),
        None => Ok(chain.clone()),
    }
}

/// Core of the quadratic exchange, shared by the verifiers.
///
/// Returns `Ok(None)` when there is no ascent at rank `i`, and otherwise the
/// replacement chain with its word. `word` must be the word of `chain`.
pub(crate) fn exchange_at(
    p: &Poset,
    labeling: &dyn Labeling,
    chain: &[usize],
    word: &[Label],
    i: usize,
) -> Result<Option<(Vec<usize>, LabelWord)>> {
    if i == 0 || i >= chain.len() - 1 {
        return Ok(None);
    }
    let order = labeling.order();
    if !order.lt(&word[i - 1], &word[i]) {
        return Ok(None);
    }
    let mut found: Option<(Vec<usize>, LabelWord)> = None;
    for z in candidate_mids(p, chain[i - 1], chain[i + 1]) {
        if z == chain[i] {
            continue;
        }
        let mut cand = chain.to_vec();
        cand[i] = z;
        let cand_word = labeling.word(p, &cand)?;
        if word_matches_transposed(word, &cand_word, i) {
            if found.is_some() {
                return Err(Error::SwitchingViolation(format!(
                    "multiple exchange partners at rank {i} of chain {chain:?}"
                )));
            }
            found = Some((cand, cand_word));
        }
    }
    match found {
        Some(res) => Ok(Some(res)),
        None => Err(Error::SwitchingViolation(format!(
            "no exchange partner at rank {i} of chain {chain:?}"
        ))),
    }
}

/// Elements strictly between `lo` and `hi` in a rank-two window.
pub(crate) fn candidate_mids(p: &Poset, lo: usize, hi: usize) -> Vec<usize> {
    p.upper_covers(lo)
        .iter()
        .copied()
        .filter(|&z| p.lower_covers(hi).contains(&z))
        .collect()
}

/// `cand` equals `base` with positions `i-1` and `i` (0-indexed) swapped and
/// everything else unchanged.
fn word_matches_transposed(base: &[Label], cand: &[Label], i: usize) -> bool {
    if base.len() != cand.len() {
        return false;
    }
    cand[i - 1] == base[i] && cand[i] == base[i - 1]
        && base
            .iter()
            .zip(cand)
            .enumerate()
            .all(|(j, (a, b))| j == i - 1 || j == i || a == b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::partition_lattice;

    #[test]
    fn lex_order_on_pairs() {
        let o = LabelOrder::LexTotal;
        assert!(o.lt(&Label::pair(1, 2), &Label::pair(1, 3)));
        assert!(!o.lt(&Label::pair(1, 3), &Label::pair(1, 2)));
        assert!(o.comparable(&Label::pair(2, 3), &Label::pair(2, 3)));
    }

    #[test]
    fn ordinal_sum_order() {
        let o = LabelOrder::OrdinalSumGamma { n: 3 };
        // Different blocks compare wholesale.
        assert!(o.lt(&Label::triple(1, 3, 1), &Label::triple(2, 3, 0)));
        // Same block: componentwise on (second, exponent).
        assert!(o.lt(&Label::triple(1, 2, 0), &Label::triple(1, 3, 0)));
        assert!(o.lt(&Label::triple(1, 2, 0), &Label::triple(1, 2, 1)));
        // Incomparable inside a block.
        assert!(!o.lt(&Label::triple(1, 2, 1), &Label::triple(1, 3, 0)));
        assert!(!o.lt(&Label::triple(1, 3, 0), &Label::triple(1, 2, 1)));
        assert!(!o.comparable(&Label::triple(1, 2, 1), &Label::triple(1, 3, 0)));
    }

    #[test]
    fn custom_order_validation() {
        let a = Label::single(1);
        let b = Label::single(2);
        let c = Label::single(3);
        let mut pairs = BTreeSet::new();
        pairs.insert((a.clone(), b.clone()));
        pairs.insert((b.clone(), c.clone()));
        let order = LabelOrder::CustomPartial { pairs: pairs.clone() };
        assert!(order.validate_on(&BTreeSet::new()).is_err(), "missing a < c");
        pairs.insert((a.clone(), c.clone()));
        let order = LabelOrder::CustomPartial { pairs };
        assert!(order.validate_on(&BTreeSet::new()).is_ok());
    }

    #[test]
    fn classify_and_descents() {
        let o = LabelOrder::LexTotal;
        let inc = vec![Label::pair(1, 2), Label::pair(1, 3)];
        let dec = vec![Label::pair(1, 3), Label::pair(1, 2)];
        assert_eq!(classify_word(&inc, &o), WordShape::Increasing);
        assert_eq!(classify_word(&dec, &o), WordShape::AscentFree);
        assert_eq!(classify_word(&[], &o), WordShape::Increasing);
        let mixed = vec![Label::single(2), Label::single(1), Label::single(3)];
        assert_eq!(classify_word(&mixed, &o), WordShape::Mixed);
        assert_eq!(descent_set(&inc, &o), Vec::<usize>::new());
        assert_eq!(descent_set(&dec, &o), vec![1]);
        assert_eq!(ascent_set(&mixed, &o), vec![2]);
    }

    #[test]
    fn incomparable_adjacent_labels_are_descents() {
        let o = LabelOrder::OrdinalSumGamma { n: 3 };
        let w = vec![Label::triple(1, 2, 1), Label::triple(1, 3, 0)];
        assert_eq!(classify_word(&w, &o), WordShape::AscentFree);
        assert_eq!(descent_set(&w, &o), vec![1]);
    }

    #[test]
    fn exchange_on_pi3() {
        let (p, lab) = partition_lattice(3).unwrap();
        // The increasing maximal chain is 1/2/3 < 12/3 < 123 with word
        // (1,2)(1,3); its exchange at rank 1 runs through 13/2.
        let chains = p.maximal_chains();
        let inc = chains
            .iter()
            .find(|c| {
                classify_word(&lab.word(&p, &c.0).unwrap(), lab.order()) == WordShape::Increasing
            })
            .unwrap();
        let swapped = quadratic_exchange(&p, &lab, inc, 1).unwrap();
        let w = lab.word(&p, &swapped.0).unwrap();
        assert_eq!(w, vec![Label::pair(1, 3), Label::pair(1, 2)]);
        // Ascent-free chains are fixed.
        assert_eq!(quadratic_exchange(&p, &lab, &swapped, 1).unwrap(), swapped);
    }
}
