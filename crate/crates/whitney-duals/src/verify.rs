//! Machine verification of labeling axioms: ER and ER* conditions, the rank
//! two switching property, the braid relation, the cancellative property,
//! and the composite EW / CW verdicts.
//!
//! Verification reports carry the first counterexample (interval, chains,
//! words) rather than a bare boolean. Interval sweeps for edge labelings run
//! in parallel and merge deterministically (smallest violating interval
//! wins); chain-edge sweeps walk rooted intervals, whose labels depend on the
//! rooting chain.
//!
//! A note on the rank two switching check: it requires each rank-two
//! (rooted) interval to carry a unique increasing maximal chain *and* a
//! unique chain with the transposed word. Bundling the first clause is what
//! makes the check fail on posets whose rank-two intervals admit no
//! increasing chain at all, such as the forest poset on three vertices under
//! its natural edge labeling.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::labeling::{
    candidate_mids, exchange_at, word_string, Label, LabelWord, Labeling,
};
use crate::poset::Poset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Er,
    ErStar,
    RankTwoSwitching,
    Braid,
    Cancellative,
    WordUniqueness,
    AscentFreeWordUniqueness,
}

/// The first violation found by a check.
#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub interval: (usize, usize),
    /// Rooting chain for rooted-interval checks.
    pub root: Option<Vec<usize>>,
    pub chains: Vec<Vec<usize>>,
    pub words: Vec<LabelWord>,
    pub note: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub check: CheckKind,
    pub pass: bool,
    pub counterexample: Option<Counterexample>,
}

impl Report {
    fn pass(check: CheckKind) -> Report {
        Report {
            check,
            pass: true,
            counterexample: None,
        }
    }

    fn fail(check: CheckKind, cex: Counterexample) -> Report {
        Report {
            check,
            pass: false,
            counterexample: Some(cex),
        }
    }
}

fn is_increasing(word: &[Label], labeling: &dyn Labeling) -> bool {
    word.windows(2).all(|w| labeling.order().lt(&w[0], &w[1]))
}

fn is_ascent_free(word: &[Label], labeling: &dyn Labeling) -> bool {
    word.windows(2).all(|w| !labeling.order().lt(&w[0], &w[1]))
}

/// Count chains of `[x, y]` matching `pred`; violation when not exactly one.
fn unique_chain_check(
    p: &Poset,
    labeling: &dyn Labeling,
    check: CheckKind,
    pred: impl Fn(&[Label], &dyn Labeling) -> bool + Sync,
) -> Result<Report> {
    let n = p.n_elements();
    let first = (0..n)
        .into_par_iter()
        .map(|x| -> Result<Option<Counterexample>> {
            for y in 0..n {
                if !p.lt(x, y) {
                    continue;
                }
                let chains = p.saturated_chains(x, y)?;
                let mut hits = Vec::new();
                let mut words = Vec::new();
                for c in &chains {
                    let w = labeling.word(p, &c.0)?;
                    if pred(&w, labeling) {
                        hits.push(c.0.clone());
                        words.push(w);
                    }
                }
                if hits.len() != 1 {
                    return Ok(Some(Counterexample {
                        interval: (x, y),
                        root: None,
                        chains: hits.clone(),
                        words,
                        note: format!("expected exactly one qualifying chain, found {}", hits.len()),
                    }));
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .min_by_key(|c| c.interval);
    Ok(match first {
        Some(cex) => Report::fail(check, cex),
        None => Report::pass(check),
    })
}

/// ER check: a unique strictly increasing maximal chain in every interval
/// (edge labelings) or in every rooted interval (the CR condition, for
/// chain-edge labelings).
pub fn verify_er(p: &Poset, labeling: &dyn Labeling) -> Result<Report> {
    if labeling.as_edge().is_some() {
        unique_chain_check(p, labeling, CheckKind::Er, is_increasing)
    } else {
        rooted_unique_chain_check(p, labeling, CheckKind::Er, is_increasing)
    }
}

/// ER* check (edge labelings): a unique ascent-free maximal chain in every
/// interval.
pub fn verify_er_star(p: &Poset, labeling: &dyn Labeling) -> Result<Report> {
    if labeling.as_edge().is_some() {
        unique_chain_check(p, labeling, CheckKind::ErStar, is_ascent_free)
    } else {
        rooted_unique_chain_check(p, labeling, CheckKind::ErStar, is_ascent_free)
    }
}

/// Sweep all rooted intervals `[e(r), y]_r` for chain-edge labelings.
fn rooted_unique_chain_check(
    p: &Poset,
    labeling: &dyn Labeling,
    check: CheckKind,
    pred: impl Fn(&[Label], &dyn Labeling) -> bool,
) -> Result<Report> {
    for r in p.chains_from_min(None)? {
        let x = r.endpoint();
        for y in 0..p.n_elements() {
            if !p.lt(x, y) {
                continue;
            }
            let mut hits = Vec::new();
            let mut words = Vec::new();
            for c in p.saturated_chains(x, y)? {
                let mut full = r.0.clone();
                full.extend_from_slice(&c.0[1..]);
                let w = labeling.word_suffix(p, &full, c.steps())?;
                if pred(&w, labeling) {
                    hits.push(c.0.clone());
                    words.push(w);
                }
            }
            if hits.len() != 1 {
                return Ok(Report::fail(
                    check,
                    Counterexample {
                        interval: (x, y),
                        root: Some(r.0.clone()),
                        chains: hits.clone(),
                        words,
                        note: format!(
                            "expected exactly one qualifying chain in the rooted interval, found {}",
                            hits.len()
                        ),
                    },
                ));
            }
        }
    }
    Ok(Report::pass(check))
}

/// Rank two switching. In every rank-two (rooted) interval the increasing
/// maximal chain must exist uniquely and admit a unique partner chain whose
/// word is the transposition; for chain-edge labelings the exchange must also
/// leave all labels above the window unchanged and the partner choice must be
/// consistent among maximal chains sharing the bottom `i + 2` elements.
pub fn verify_rank_two_switching(p: &Poset, labeling: &dyn Labeling) -> Result<Report> {
    if labeling.as_edge().is_some() {
        verify_switching_edge(p, labeling)
    } else {
        verify_switching_chain_edge(p, labeling)
    }
}

fn verify_switching_edge(p: &Poset, labeling: &dyn Labeling) -> Result<Report> {
    let n = p.n_elements();
    let first = (0..n)
        .into_par_iter()
        .map(|x| -> Result<Option<Counterexample>> {
            for y in 0..n {
                if !p.lt(x, y) || p.rank(y) != p.rank(x) + 2 {
                    continue;
                }
                let mids = candidate_mids(p, x, y);
                let mut words: Vec<(usize, LabelWord)> = Vec::new();
                for &z in &mids {
                    words.push((z, labeling.word(p, &[x, z, y])?));
                }
                let incr: Vec<&(usize, LabelWord)> = words
                    .iter()
                    .filter(|(_, w)| labeling.order().lt(&w[0], &w[1]))
                    .collect();
                if incr.len() != 1 {
                    return Ok(Some(Counterexample {
                        interval: (x, y),
                        root: None,
                        chains: incr.iter().map(|(z, _)| vec![x, *z, y]).collect(),
                        words: incr.iter().map(|(_, w)| w.clone()).collect(),
                        note: format!(
                            "rank-two interval has {} increasing chains, expected 1",
                            incr.len()
                        ),
                    }));
                }
                let (a, b) = (incr[0].1[0].clone(), incr[0].1[1].clone());
                let partners: Vec<&(usize, LabelWord)> = words
                    .iter()
                    .filter(|(_, w)| w[0] == b && w[1] == a)
                    .collect();
                if partners.len() != 1 {
                    return Ok(Some(Counterexample {
                        interval: (x, y),
                        root: None,
                        chains: partners.iter().map(|(z, _)| vec![x, *z, y]).collect(),
                        words: partners.iter().map(|(_, w)| w.clone()).collect(),
                        note: format!(
                            "increasing chain {} has {} transposed partners, expected 1",
                            word_string(&[a, b]),
                            partners.len()
                        ),
                    }));
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .min_by_key(|c| c.interval);
    Ok(match first {
        Some(cex) => Report::fail(CheckKind::RankTwoSwitching, cex),
        None => Report::pass(CheckKind::RankTwoSwitching),
    })
}

fn verify_switching_chain_edge(p: &Poset, labeling: &dyn Labeling) -> Result<Report> {
    // Clause one: unique increasing chain in every rank-two rooted interval.
    for r in p.chains_from_min(None)? {
        let x = r.endpoint();
        for y in 0..p.n_elements() {
            if !p.lt(x, y) || p.rank(y) != p.rank(x) + 2 {
                continue;
            }
            let mut incr = Vec::new();
            for z in candidate_mids(p, x, y) {
                let mut full = r.0.clone();
                full.push(z);
                full.push(y);
                let w = labeling.word_suffix(p, &full, 2)?;
                if labeling.order().lt(&w[0], &w[1]) {
                    incr.push((z, w));
                }
            }
            if incr.len() != 1 {
                return Ok(Report::fail(
                    CheckKind::RankTwoSwitching,
                    Counterexample {
                        interval: (x, y),
                        root: Some(r.0.clone()),
                        chains: incr.iter().map(|(z, _)| vec![x, *z, y]).collect(),
                        words: incr.iter().map(|(_, w)| w.clone()).collect(),
                        note: format!(
                            "rank-two rooted interval has {} increasing chains, expected 1",
                            incr.len()
                        ),
                    },
                ));
            }
        }
    }

    // Clause two: every ascent of every maximal chain has a unique exchange
    // partner (all other labels unchanged), chosen consistently among chains
    // sharing the bottom i + 2 elements.
    let mut choice: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
    for m in p.maximal_chains() {
        let word = labeling.word(p, &m.0)?;
        for i in 1..m.steps() {
            if !labeling.order().lt(&word[i - 1], &word[i]) {
                continue;
            }
            let partner = match exchange_at(p, labeling, &m.0, &word, i)? {
                Some((elements, _)) => elements[i],
                None => unreachable!("ascent was checked above"),
            };
            let key = (i, m.0[..=i + 1].to_vec());
            if let Some(&prev) = choice.get(&key) {
                if prev != partner {
                    return Ok(Report::fail(
                        CheckKind::RankTwoSwitching,
                        Counterexample {
                            interval: (m.0[i - 1], m.0[i + 1]),
                            root: Some(m.0[..=i + 1].to_vec()),
                            chains: vec![m.0.clone()],
                            words: vec![word.clone()],
                            note: format!(
                                "inconsistent exchange partner at rank {i}: {prev} vs {partner}"
                            ),
                        },
                    ));
                }
            } else {
                choice.insert(key, partner);
            }
        }
    }
    Ok(Report::pass(CheckKind::RankTwoSwitching))
}

/// Braid relation: wherever a chain has a double ascent at rank `i`,
/// `U_i U_{i+1} U_i` and `U_{i+1} U_i U_{i+1}` agree.
pub fn verify_braid(p: &Poset, labeling: &dyn Labeling) -> Result<Report> {
    if labeling.as_edge().is_some() {
        verify_braid_edge(p, labeling)
    } else {
        verify_braid_chain_edge(p, labeling)
    }
}

/// Apply `U_i` for each rank in `seq`, in order, starting from `chain`.
fn apply_sequence(
    p: &Poset,
    labeling: &dyn Labeling,
    chain: &[usize],
    seq: &[usize],
) -> Result<Vec<usize>> {
    let mut cur = chain.to_vec();
    let mut word = labeling.word(p, &cur)?;
    for &i in seq {
        if let Some((next, next_word)) = exchange_at(p, labeling, &cur, &word, i)? {
            cur = next;
            word = next_word;
        }
    }
    Ok(cur)
}

fn braid_violation(
    p: &Poset,
    labeling: &dyn Labeling,
    chain: &[usize],
    word: &LabelWord,
    i: usize,
) -> Result<Option<Counterexample>> {
    let order = labeling.order();
    if !(order.lt(&word[i - 1], &word[i]) && order.lt(&word[i], &word[i + 1])) {
        return Ok(None);
    }
    let one = apply_sequence(p, labeling, chain, &[i, i + 1, i])?;
    let two = apply_sequence(p, labeling, chain, &[i + 1, i, i + 1])?;
    if one == two {
        return Ok(None);
    }
    Ok(Some(Counterexample {
        interval: (chain[0], *chain.last().unwrap()),
        root: None,
        chains: vec![chain.to_vec(), one, two],
        words: vec![word.clone()],
        note: format!("braid relation fails at rank {i}"),
    }))
}

fn verify_braid_edge(p: &Poset, labeling: &dyn Labeling) -> Result<Report> {
    // A double ascent lives in a window of three covers, so length-three
    // intervals suffice for edge labelings.
    let n = p.n_elements();
    let first = (0..n)
        .into_par_iter()
        .map(|x| -> Result<Option<Counterexample>> {
            for y in 0..n {
                if !p.lt(x, y) || p.rank(y) != p.rank(x) + 3 {
                    continue;
                }
                for c in p.saturated_chains(x, y)? {
                    let word = labeling.word(p, &c.0)?;
                    if let Some(cex) = braid_violation(p, labeling, &c.0, &word, 1)? {
                        return Ok(Some(cex));
                    }
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .min_by_key(|c| c.interval);
    Ok(match first {
        Some(cex) => Report::fail(CheckKind::Braid, cex),
        None => Report::pass(CheckKind::Braid),
    })
}

fn verify_braid_chain_edge(p: &Poset, labeling: &dyn Labeling) -> Result<Report> {
    for c in p.chains_from_min(None)? {
        if c.steps() < 3 {
            continue;
        }
        let word = labeling.word(p, &c.0)?;
        for i in 1..c.steps() - 1 {
            if let Some(cex) = braid_violation(p, labeling, &c.0, &word, i)? {
                return Ok(Report::fail(CheckKind::Braid, cex));
            }
        }
    }
    Ok(Report::pass(CheckKind::Braid))
}

/// Size gate for the exhaustive cancellative sweep.
#[derive(Debug, Clone, Copy)]
pub struct CancellativeLimits {
    pub max_ranks: usize,
    pub max_chains: usize,
    /// Run the sweep even past the thresholds.
    pub force: bool,
}

impl Default for CancellativeLimits {
    fn default() -> Self {
        CancellativeLimits {
            max_ranks: 8,
            max_chains: 5000,
            force: false,
        }
    }
}

/// Union-find components of the quadratic-exchange graph over the given full
/// chains. `offset` is the number of rooting cover steps at the bottom of
/// each chain that exchanges must not touch. Returns one representative id
/// per chain (index into `fulls`).
pub(crate) fn exchange_components(
    p: &Poset,
    labeling: &dyn Labeling,
    fulls: &[Vec<usize>],
    offset: usize,
) -> Result<Vec<usize>> {
    let index: HashMap<&[usize], usize> =
        fulls.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();
    let mut parent: Vec<usize> = (0..fulls.len()).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for (idx, full) in fulls.iter().enumerate() {
        let word = labeling.word(p, full)?;
        let hi = full.len().saturating_sub(2);
        for i in offset + 1..=hi {
            if let Some((other, _)) = exchange_at(p, labeling, full, &word, i)? {
                let j = *index.get(other.as_slice()).ok_or_else(|| {
                    Error::SwitchingViolation(format!(
                        "exchange left the chain family at rank {i} of {full:?}"
                    ))
                })?;
                let (a, b) = (find(&mut parent, idx), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    Ok((0..fulls.len()).map(|v| find(&mut parent, v)).collect())
}

/// Cancellative property: gluing a common bottom chain onto two chains of an
/// upper interval never merges their exchange classes. Exhaustive over all
/// `z < x < y` (with rooting chains in the chain-edge case); exponential, so
/// gated by `limits`.
pub fn verify_cancellative(
    p: &Poset,
    labeling: &dyn Labeling,
    limits: CancellativeLimits,
) -> Result<Report> {
    if !limits.force {
        if p.max_rank() + 1 > limits.max_ranks {
            return Err(Error::SizeLimit(format!(
                "cancellative sweep gated at {} ranks (poset has {}); pass force to override",
                limits.max_ranks,
                p.max_rank() + 1
            )));
        }
        let total = p.chains_from_min(Some(limits.max_chains + 1))?;
        if total.len() > limits.max_chains {
            return Err(Error::SizeLimit(format!(
                "cancellative sweep gated at {} chains; pass force to override",
                limits.max_chains
            )));
        }
    }
    if labeling.as_edge().is_some() {
        // Edge labels ignore the rooting chain, so one root per bottom
        // element z covers all intervals z < x < y.
        for z in 0..p.n_elements() {
            let report = verify_cancellative_rooted(p, labeling, &[z])?;
            if !report.pass {
                return Ok(report);
            }
        }
        Ok(Report::pass(CheckKind::Cancellative))
    } else {
        for r in p.chains_from_min(None)? {
            let report = verify_cancellative_rooted(p, labeling, &r.0)?;
            if !report.pass {
                return Ok(report);
            }
        }
        Ok(Report::pass(CheckKind::Cancellative))
    }
}

/// Cancellative sweep below one rooting chain (trivial root for edge
/// labelings, where rooted intervals reduce to plain intervals).
fn verify_cancellative_rooted(
    p: &Poset,
    labeling: &dyn Labeling,
    root: &[usize],
) -> Result<Report> {
    let z = *root.last().unwrap();
    let offset = root.len() - 1;
    for x in 0..p.n_elements() {
        if !p.lt(z, x) {
            continue;
        }
        for y in 0..p.n_elements() {
            if !p.lt(x, y) || p.rank(y) < p.rank(x) + 2 {
                continue;
            }
            // Components of the exchange graph over [z, y] rooted at `root`.
            let zy: Vec<Vec<usize>> = p
                .saturated_chains(z, y)?
                .into_iter()
                .map(|c| {
                    let mut full = root.to_vec();
                    full.extend_from_slice(&c.0[1..]);
                    full
                })
                .collect();
            let comp_zy = exchange_components(p, labeling, &zy, offset)?;
            let zy_index: HashMap<&[usize], usize> =
                zy.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();

            let lower = p.saturated_chains(z, x)?;
            let upper = p.saturated_chains(x, y)?;
            for c in &lower {
                // Components of the exchange graph over [x, y] rooted at
                // root + c.
                let xy: Vec<Vec<usize>> = upper
                    .iter()
                    .map(|d| {
                        let mut full = root.to_vec();
                        full.extend_from_slice(&c.0[1..]);
                        full.extend_from_slice(&d.0[1..]);
                        full
                    })
                    .collect();
                let comp_xy =
                    exchange_components(p, labeling, &xy, offset + c.steps())?;
                // Note the chains in `xy` are exactly root + c + d, which are
                // also members of `zy`, so the map below is well-defined.
                let mut seen: HashMap<usize, usize> = HashMap::new();
                for (di, full) in xy.iter().enumerate() {
                    let zyi = zy_index[full.as_slice()];
                    if let Some(&prev) = seen.get(&comp_zy[zyi]) {
                        if prev != comp_xy[di] {
                            let d1 = upper[di].0.clone();
                            let d2 = upper
                                .iter()
                                .enumerate()
                                .find(|(dj, _)| comp_xy[*dj] == prev)
                                .map(|(_, d)| d.0.clone())
                                .unwrap_or_default();
                            return Ok(Report::fail(
                                CheckKind::Cancellative,
                                Counterexample {
                                    interval: (x, y),
                                    root: Some(root.to_vec()),
                                    chains: vec![c.0.clone(), d1, d2],
                                    words: Vec::new(),
                                    note: format!(
                                        "chains glued below {} are equivalent but differ above",
                                        p.name(x)
                                    ),
                                },
                            ));
                        }
                    } else {
                        seen.insert(comp_zy[zyi], comp_xy[di]);
                    }
                }
            }
        }
    }
    Ok(Report::pass(CheckKind::Cancellative))
}

/// EW word uniqueness: in each interval, distinct maximal chains carry
/// distinct words.
pub fn verify_word_uniqueness(p: &Poset, labeling: &dyn Labeling) -> Result<Report> {
    let n = p.n_elements();
    let first = (0..n)
        .into_par_iter()
        .map(|x| -> Result<Option<Counterexample>> {
            for y in 0..n {
                if !p.lt(x, y) {
                    continue;
                }
                let mut seen: HashMap<LabelWord, Vec<usize>> = HashMap::new();
                for c in p.saturated_chains(x, y)? {
                    let w = labeling.word(p, &c.0)?;
                    if let Some(prev) = seen.get(&w) {
                        return Ok(Some(Counterexample {
                            interval: (x, y),
                            root: None,
                            chains: vec![prev.clone(), c.0.clone()],
                            words: vec![w.clone(), w],
                            note: "two maximal chains share a word of labels".into(),
                        }));
                    }
                    seen.insert(w, c.0.clone());
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .min_by_key(|c| c.interval);
    Ok(match first {
        Some(cex) => Report::fail(CheckKind::WordUniqueness, cex),
        None => Report::pass(CheckKind::WordUniqueness),
    })
}

/// CW word uniqueness: in each rooted interval, distinct ascent-free maximal
/// chains carry distinct words.
pub fn verify_ascent_free_word_uniqueness(
    p: &Poset,
    labeling: &dyn Labeling,
) -> Result<Report> {
    for r in p.chains_from_min(None)? {
        let x = r.endpoint();
        for y in 0..p.n_elements() {
            if !p.lt(x, y) {
                continue;
            }
            let mut seen: HashMap<LabelWord, Vec<usize>> = HashMap::new();
            for c in p.saturated_chains(x, y)? {
                let mut full = r.0.clone();
                full.extend_from_slice(&c.0[1..]);
                let w = labeling.word_suffix(p, &full, c.steps())?;
                if !is_ascent_free(&w, labeling) {
                    continue;
                }
                if let Some(prev) = seen.get(&w) {
                    return Ok(Report::fail(
                        CheckKind::AscentFreeWordUniqueness,
                        Counterexample {
                            interval: (x, y),
                            root: Some(r.0.clone()),
                            chains: vec![prev.clone(), c.0.clone()],
                            words: vec![w.clone(), w],
                            note: "two ascent-free chains share a word of labels".into(),
                        },
                    ));
                }
                seen.insert(w, c.0.clone());
            }
        }
    }
    Ok(Report::pass(CheckKind::AscentFreeWordUniqueness))
}

/// Composite Whitney-labeling verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WhitneyVerdict {
    Ew,
    GeneralizedEwOnly,
    Cw,
    GeneralizedCwOnly,
    Fail,
}

impl std::fmt::Display for WhitneyVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            WhitneyVerdict::Ew => "EW",
            WhitneyVerdict::GeneralizedEwOnly => "generalized-EW-only",
            WhitneyVerdict::Cw => "CW",
            WhitneyVerdict::GeneralizedCwOnly => "generalized-CW-only",
            WhitneyVerdict::Fail => "fail",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WhitneyReport {
    pub verdict: WhitneyVerdict,
    /// True when the verdict is any of the four passing kinds.
    pub is_whitney: bool,
    pub reports: Vec<Report>,
}

impl WhitneyReport {
    /// Human-readable reason for a failing verdict.
    pub fn failure_note(&self) -> Option<String> {
        self.reports.iter().find(|r| !r.pass).map(|r| {
            let at = r
                .counterexample
                .as_ref()
                .map(|c| format!(" at interval ({}, {}): {}", c.interval.0, c.interval.1, c.note))
                .unwrap_or_default();
            format!("{:?} failed{at}", r.check)
        })
    }
}

/// Full EW / CW verification: ER (rooted for chain-edge labelings), rank two
/// switching, then word uniqueness, falling back to braid plus cancellative
/// for the generalized verdicts.
pub fn verify_whitney(
    p: &Poset,
    labeling: &dyn Labeling,
    limits: CancellativeLimits,
) -> Result<WhitneyReport> {
    let is_edge = labeling.as_edge().is_some();
    let mut reports = Vec::new();

    let er = verify_er(p, labeling)?;
    let er_ok = er.pass;
    reports.push(er);
    let sw = verify_rank_two_switching(p, labeling)?;
    let sw_ok = sw.pass;
    reports.push(sw);
    if !(er_ok && sw_ok) {
        return Ok(WhitneyReport {
            verdict: WhitneyVerdict::Fail,
            is_whitney: false,
            reports,
        });
    }

    let words = if is_edge {
        verify_word_uniqueness(p, labeling)?
    } else {
        verify_ascent_free_word_uniqueness(p, labeling)?
    };
    let words_ok = words.pass;
    reports.push(words);
    if words_ok {
        return Ok(WhitneyReport {
            verdict: if is_edge {
                WhitneyVerdict::Ew
            } else {
                WhitneyVerdict::Cw
            },
            is_whitney: true,
            reports,
        });
    }

    let braid = verify_braid(p, labeling)?;
    let braid_ok = braid.pass;
    reports.push(braid);
    let canc = verify_cancellative(p, labeling, limits)?;
    let canc_ok = canc.pass;
    reports.push(canc);
    let verdict = if braid_ok && canc_ok {
        if is_edge {
            WhitneyVerdict::GeneralizedEwOnly
        } else {
            WhitneyVerdict::GeneralizedCwOnly
        }
    } else {
        WhitneyVerdict::Fail
    };
    Ok(WhitneyReport {
        verdict,
        is_whitney: verdict != WhitneyVerdict::Fail,
        reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{increasing_forest_poset, partition_lattice};
    use crate::labeling::{EdgeLabeling, LabelOrder};
    use std::collections::BTreeMap;

    #[test]
    fn pi3_minimum_labeling_is_er_and_switching() {
        let (p, lab) = partition_lattice(3).unwrap();
        assert!(verify_er(&p, &lab).unwrap().pass);
        assert!(verify_rank_two_switching(&p, &lab).unwrap().pass);
        assert!(verify_braid(&p, &lab).unwrap().pass);
        assert!(verify_cancellative(&p, &lab, CancellativeLimits::default())
            .unwrap()
            .pass);
        let report = verify_whitney(&p, &lab, CancellativeLimits::default()).unwrap();
        assert_eq!(report.verdict, WhitneyVerdict::Ew);
    }

    #[test]
    fn constant_labeling_fails_er() {
        let (p, _) = partition_lattice(3).unwrap();
        let labels: BTreeMap<(usize, usize), Label> = p
            .covers()
            .iter()
            .map(|&(lo, hi)| ((lo, hi), Label::single(7)))
            .collect();
        let lab = EdgeLabeling::new(&p, labels, LabelOrder::LexTotal).unwrap();
        let report = verify_er(&p, &lab).unwrap();
        assert!(!report.pass);
        let cex = report.counterexample.unwrap();
        assert_eq!(cex.interval, (0, p.n_elements() - 1));
    }

    #[test]
    fn isf3_star_labeling_is_er_star_but_fails_switching() {
        let (p, lab) = increasing_forest_poset(3).unwrap();
        assert!(verify_er_star(&p, &lab).unwrap().pass);
        let report = verify_rank_two_switching(&p, &lab).unwrap();
        assert!(!report.pass, "rank-two interval without an increasing chain");
    }
}
