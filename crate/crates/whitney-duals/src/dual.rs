//! The chain poset, exchange-graph equivalence classes, the quotient Whitney
//! dual `Q` with its induced labeling, and the pair-based poset `R`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::labeling::{
    exchange_at, word_string, EdgeLabeling, Label, LabelOrder, LabelWord, Labeling,
};
use crate::poset::{Poset, SaturatedChain};
use crate::verify::{
    exchange_components, verify_whitney, CancellativeLimits, Counterexample, Report,
    WhitneyReport, WhitneyVerdict,
};

/// The poset of saturated chains from the minimum, ordered by inclusion
/// (equivalently, by prefix).
pub struct ChainPoset {
    pub poset: Poset,
    pub chains: Vec<SaturatedChain>,
}

/// Build the chain poset of `p`. `cap` bounds the number of chains.
pub fn chain_poset(p: &Poset, cap: Option<usize>) -> Result<ChainPoset> {
    let mut chains = p.chains_from_min(cap)?;
    chains.sort_by_key(|c| (c.steps(), c.0.clone()));
    let index: BTreeMap<&[usize], usize> = chains
        .iter()
        .enumerate()
        .map(|(i, c)| (c.0.as_slice(), i))
        .collect();
    let mut covers = Vec::new();
    for (i, c) in chains.iter().enumerate() {
        for &z in p.upper_covers(c.endpoint()) {
            let mut ext = c.0.clone();
            ext.push(z);
            covers.push((i, index[ext.as_slice()]));
        }
    }
    let names: Vec<String> = chains
        .iter()
        .map(|c| {
            c.0.iter()
                .map(|&v| p.name(v))
                .collect::<Vec<_>>()
                .join(" < ")
        })
        .collect();
    let poset = Poset::build(&covers, chains.len())?.with_names(names);
    Ok(ChainPoset { poset, chains })
}

/// How exchange classes are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassStrategy {
    /// Reduce every chain to its ascent-free sink; valid whenever sinks are
    /// unique (any verified Whitney labeling).
    NormalForm,
    /// Union-find over explicit exchange edges; fully general.
    UnionFind,
    /// Run both and require identical partitions.
    CrossCheck,
}

/// One equivalence class of saturated chains from the minimum under
/// quadratic exchanges.
#[derive(Debug, Clone)]
pub struct EquivClass {
    pub endpoint: usize,
    /// Member chains, ascending.
    pub members: Vec<SaturatedChain>,
    /// The unique ascent-free member when sinks are unique.
    pub normal_form: Option<SaturatedChain>,
    /// Word of the normal form (the sorted word of any member).
    pub canonical_word: LabelWord,
}

/// The partition of saturated chains from the minimum into exchange classes.
pub struct ExchangeClasses {
    pub classes: Vec<EquivClass>,
    /// Chain elements -> class index.
    pub class_of: HashMap<Vec<usize>, usize>,
}

/// Connected components of the quadratic-exchange graph on saturated chains
/// from the minimum, per endpoint. `up_to_rank` restricts to chains of at
/// most that many cover steps.
pub fn exchange_classes(
    p: &Poset,
    labeling: &dyn Labeling,
    up_to_rank: Option<usize>,
    strategy: ClassStrategy,
    cap: Option<usize>,
) -> Result<ExchangeClasses> {
    let mut chains = p.chains_from_min(cap)?;
    if let Some(k) = up_to_rank {
        chains.retain(|c| c.steps() <= k);
    }
    chains.sort_by_key(|c| (c.steps(), c.0.clone()));

    let group = |membership: Vec<usize>| -> Vec<Vec<usize>> {
        // membership[i] = representative chain index. Regroup canonically by
        // each group's minimal member so the two strategies compare as set
        // partitions.
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &r) in membership.iter().enumerate() {
            groups.entry(r).or_default().push(i);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort_by_key(|g| g[0]);
        out
    };

    let normal_groups = |chains: &[SaturatedChain]| -> Result<Vec<Vec<usize>>> {
        let mut sink_of: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut membership = vec![0usize; chains.len()];
        let index: HashMap<&[usize], usize> = chains
            .iter()
            .enumerate()
            .map(|(i, c)| (c.0.as_slice(), i))
            .collect();
        for (i, c) in chains.iter().enumerate() {
            let sink = reduce_to_sink(p, labeling, &c.0)?;
            let rep = match sink_of.get(&sink) {
                Some(&r) => r,
                None => {
                    let r = *index.get(sink.as_slice()).ok_or_else(|| {
                        Error::Internal("sink chain missing from enumeration".into())
                    })?;
                    sink_of.insert(sink.clone(), r);
                    r
                }
            };
            membership[i] = rep;
        }
        Ok(group(membership))
    };

    let union_groups = |chains: &[SaturatedChain]| -> Result<Vec<Vec<usize>>> {
        // Exchanges preserve endpoints, so work per endpoint.
        let mut by_endpoint: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, c) in chains.iter().enumerate() {
            by_endpoint
                .entry((c.steps(), c.endpoint()))
                .or_default()
                .push(i);
        }
        let mut membership: Vec<usize> = (0..chains.len()).collect();
        for indices in by_endpoint.values() {
            let fulls: Vec<Vec<usize>> = indices.iter().map(|&i| chains[i].0.clone()).collect();
            let comp = exchange_components(p, labeling, &fulls, 0)?;
            for (pos, &i) in indices.iter().enumerate() {
                membership[i] = indices[comp[pos]];
            }
        }
        Ok(group(membership))
    };

    let groups = match strategy {
        ClassStrategy::NormalForm => normal_groups(&chains)?,
        ClassStrategy::UnionFind => union_groups(&chains)?,
        ClassStrategy::CrossCheck => {
            let a = normal_groups(&chains)?;
            let b = union_groups(&chains)?;
            if a != b {
                return Err(Error::Internal(
                    "normal-form and union-find class partitions disagree".into(),
                ));
            }
            a
        }
    };

    let mut classes = Vec::with_capacity(groups.len());
    let mut class_of = HashMap::new();
    let mut keyed: Vec<(usize, Vec<usize>, EquivClass)> = Vec::new();
    for members_idx in groups {
        let members: Vec<SaturatedChain> =
            members_idx.iter().map(|&i| chains[i].clone()).collect();
        let endpoint = members[0].endpoint();
        let mut normal_form = None;
        for c in &members {
            let w = labeling.word(p, &c.0)?;
            if w.windows(2).all(|v| !labeling.order().lt(&v[0], &v[1])) {
                if normal_form.is_some() {
                    normal_form = None;
                    break;
                }
                normal_form = Some(c.clone());
            }
        }
        let canonical_word = match &normal_form {
            Some(c) => labeling.word(p, &c.0)?,
            None => sort_word(&labeling.word(p, &members[0].0)?, labeling.order()),
        };
        let key = normal_form
            .as_ref()
            .map(|c| c.0.clone())
            .unwrap_or_else(|| members[0].0.clone());
        keyed.push((
            members[0].steps(),
            key,
            EquivClass {
                endpoint,
                members,
                normal_form,
                canonical_word,
            },
        ));
    }
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    for (id, (_, _, class)) in keyed.into_iter().enumerate() {
        for m in &class.members {
            class_of.insert(m.0.clone(), id);
        }
        classes.push(class);
    }
    Ok(ExchangeClasses { classes, class_of })
}

/// Reduce a chain to its ascent-free sink by repeatedly exchanging the
/// leftmost ascent.
fn reduce_to_sink(p: &Poset, labeling: &dyn Labeling, chain: &[usize]) -> Result<Vec<usize>> {
    let mut cur = chain.to_vec();
    let mut word = labeling.word(p, &cur)?;
    'outer: loop {
        for i in 1..cur.len().saturating_sub(1) {
            if labeling.order().lt(&word[i - 1], &word[i]) {
                let (next, next_word) = exchange_at(p, labeling, &cur, &word, i)?
                    .expect("ascent admits an exchange");
                cur = next;
                word = next_word;
                continue 'outer;
            }
        }
        return Ok(cur);
    }
}

/// The unique ascent-free word reachable from `w` by transposing ascents.
pub fn sort_word(w: &[Label], order: &LabelOrder) -> LabelWord {
    let mut word = w.to_vec();
    'outer: loop {
        for i in 0..word.len().saturating_sub(1) {
            if order.lt(&word[i], &word[i + 1]) {
                word.swap(i, i + 1);
                continue 'outer;
            }
        }
        return word;
    }
}

/// Options for building the quotient dual.
#[derive(Debug, Clone)]
pub struct BuildOptions {
    /// Skip labeling verification (caller asserts a Whitney labeling).
    pub assume_verified: bool,
    /// Bound on the number of saturated chains from the minimum.
    pub chain_cap: Option<usize>,
    pub strategy: ClassStrategy,
    pub cancellative: CancellativeLimits,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            assume_verified: false,
            chain_cap: None,
            strategy: ClassStrategy::NormalForm,
            cancellative: CancellativeLimits::default(),
        }
    }
}

/// The quotient Whitney dual: exchange classes of saturated chains from the
/// minimum, covered by single-step extension, labeled by the new letter.
pub struct QuotientPoset {
    pub poset: Poset,
    /// The induced labeling on the quotient: the one label entering the
    /// class word.
    pub dual_labeling: EdgeLabeling,
    pub classes: Vec<EquivClass>,
    /// P-chain elements -> quotient element id.
    pub class_of: HashMap<Vec<usize>, usize>,
    /// The verification report, when verification ran.
    pub verification: Option<WhitneyReport>,
}

impl QuotientPoset {
    /// Endpoint in the base poset and canonical word of a quotient element.
    pub fn class_key(&self, id: usize) -> (usize, &LabelWord) {
        (self.classes[id].endpoint, &self.classes[id].canonical_word)
    }
}

/// Build the quotient Whitney dual of a labeled poset. Unless
/// `assume_verified` is set, the labeling is first verified to be a
/// (generalized) EW- or CW-labeling.
pub fn build_q(p: &Poset, labeling: &dyn Labeling, opts: &BuildOptions) -> Result<QuotientPoset> {
    let verification = if opts.assume_verified {
        None
    } else {
        let report = verify_whitney(p, labeling, opts.cancellative)?;
        if !report.is_whitney {
            return Err(Error::NotWhitneyLabeling(
                report
                    .failure_note()
                    .unwrap_or_else(|| "verification failed".into()),
            ));
        }
        Some(report)
    };

    let ec = exchange_classes(p, labeling, None, opts.strategy, opts.chain_cap)?;
    let n = ec.classes.len();
    let mut covers = Vec::new();
    let mut labels: BTreeMap<(usize, usize), Label> = BTreeMap::new();
    for (x_id, class) in ec.classes.iter().enumerate() {
        for c in &class.members {
            for &z in p.upper_covers(c.endpoint()) {
                let mut ext = c.0.clone();
                ext.push(z);
                let y_id = *ec
                    .class_of
                    .get(&ext)
                    .ok_or_else(|| Error::Internal("extension chain missing".into()))?;
                if !covers.contains(&(x_id, y_id)) {
                    covers.push((x_id, y_id));
                    let label = multiset_difference(
                        &ec.classes[y_id].canonical_word,
                        &class.canonical_word,
                    )?;
                    labels.insert((x_id, y_id), label);
                }
            }
        }
    }
    let names: Vec<String> = ec
        .classes
        .iter()
        .map(|c| format!("{} | {}", p.name(c.endpoint), word_string(&c.canonical_word)))
        .collect();
    let poset = Poset::build(&covers, n)?.with_names(names);
    let dual_labeling = EdgeLabeling::new(&poset, labels, labeling.order().clone())?;
    Ok(QuotientPoset {
        poset,
        dual_labeling,
        classes: ec.classes,
        class_of: ec.class_of,
        verification,
    })
}

/// The single label by which the multiset of `upper` exceeds `lower`.
fn multiset_difference(upper: &[Label], lower: &[Label]) -> Result<Label> {
    let mut counts: BTreeMap<&Label, i64> = BTreeMap::new();
    for l in upper {
        *counts.entry(l).or_default() += 1;
    }
    for l in lower {
        *counts.entry(l).or_default() -= 1;
    }
    let extra: Vec<&Label> = counts
        .iter()
        .filter(|(_, &c)| c != 0)
        .flat_map(|(&l, &c)| std::iter::repeat_n(l, c.unsigned_abs() as usize))
        .collect();
    if counts.values().any(|&c| c < 0) || extra.len() != 1 {
        return Err(Error::Internal(
            "quotient cover words differ by more than one letter".into(),
        ));
    }
    Ok(extra[0].clone())
}

/// The pair-based dual: elements `(x, w)` with `w` the word of an
/// ascent-free chain from the minimum to `x`, covered by appending a label
/// and re-sorting.
pub struct RPoset {
    pub poset: Poset,
    pub elements: Vec<(usize, LabelWord)>,
}

/// Build the pair-based poset. Requires a strict (word-unique) EW- or
/// CW-labeling; generalized-only labelings are rejected with `NotCw`.
pub fn build_r(p: &Poset, labeling: &dyn Labeling, opts: &BuildOptions) -> Result<RPoset> {
    if !opts.assume_verified {
        let report = verify_whitney(p, labeling, opts.cancellative)?;
        match report.verdict {
            WhitneyVerdict::Ew | WhitneyVerdict::Cw => {}
            other => {
                return Err(Error::NotCw(format!(
                    "pair-based construction needs word uniqueness, verdict was {other}"
                )))
            }
        }
    }
    let chains = p.chains_from_min(opts.chain_cap)?;
    let mut elements: Vec<(usize, LabelWord)> = Vec::new();
    let mut chain_of: HashMap<(usize, LabelWord), Vec<usize>> = HashMap::new();
    for c in &chains {
        let w = labeling.word(p, &c.0)?;
        if w.windows(2).all(|v| !labeling.order().lt(&v[0], &v[1])) {
            let key = (c.endpoint(), w);
            if chain_of.insert(key.clone(), c.0.clone()).is_some() {
                return Err(Error::NotCw(
                    "two ascent-free chains share an endpoint and word".into(),
                ));
            }
            elements.push(key);
        }
    }
    elements.sort_by_key(|(x, w)| (w.len(), *x, w.clone()));
    let index: BTreeMap<&(usize, LabelWord), usize> =
        elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut covers = Vec::new();
    for (i, (x, w)) in elements.iter().enumerate() {
        let chain = &chain_of[&(*x, w.clone())];
        for &y in p.upper_covers(*x) {
            let mut ext = chain.clone();
            ext.push(y);
            let label = labeling.label(p, &ext)?;
            let mut next = w.clone();
            next.push(label);
            let u = sort_word(&next, labeling.order());
            let j = *index
                .get(&(y, u))
                .ok_or_else(|| Error::Internal("sorted word is not realized upstairs".into()))?;
            if !covers.contains(&(i, j)) {
                covers.push((i, j));
            }
        }
    }
    let names: Vec<String> = elements
        .iter()
        .map(|(x, w)| format!("{} | {}", p.name(*x), word_string(w)))
        .collect();
    let poset = Poset::build(&covers, elements.len())?.with_names(names);
    Ok(RPoset { poset, elements })
}

/// Check that the explicit map `(x, w) -> [ascent-free chain with word w]`
/// is a cover-preserving bijection between `R` and `Q`.
pub fn verify_r_iso_q(p: &Poset, labeling: &dyn Labeling, opts: &BuildOptions) -> Result<bool> {
    // Build R first: it carries the strict word-uniqueness gate. The
    // quotient then reuses that verification.
    let r = build_r(p, labeling, opts)?;
    let q = build_q(
        p,
        labeling,
        &BuildOptions {
            assume_verified: true,
            ..opts.clone()
        },
    )?;
    if r.elements.len() != q.poset.n_elements() {
        return Ok(false);
    }
    // The explicit map matches R keys with Q class keys.
    let mut to_q = Vec::with_capacity(r.elements.len());
    for (x, w) in &r.elements {
        let img = (0..q.poset.n_elements())
            .find(|&id| q.class_key(id) == (*x, w));
        match img {
            Some(id) => to_q.push(id),
            None => return Ok(false),
        }
    }
    {
        let mut seen = to_q.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != to_q.len() {
            return Ok(false);
        }
    }
    let mut q_covers: Vec<(usize, usize)> = q.poset.covers().to_vec();
    q_covers.sort_unstable();
    let mut mapped: Vec<(usize, usize)> = r
        .poset
        .covers()
        .iter()
        .map(|&(a, b)| (to_q[a], to_q[b]))
        .collect();
    mapped.sort_unstable();
    Ok(mapped == q_covers)
}

/// Reachability of the class of `c u d` (`d` the unique increasing chain of
/// the rooted interval) decides the Möbius value of `[X, Y]` in the
/// quotient: `(-1)^(rank gap)` when `Y` contains it, else `0`.
#[derive(Debug, Clone, Serialize)]
pub struct MobiusCheck {
    pub pass: bool,
    pub counterexample: Option<Counterexample>,
}

/// Verify the Möbius structure of the quotient: every interval value lies in
/// `{0, +1, -1}` and matches the increasing-chain criterion.
pub fn mobius_q_check(p: &Poset, labeling: &dyn Labeling, q: &QuotientPoset) -> Result<MobiusCheck> {
    let qe = q.poset.n_elements();
    for x_id in 0..qe {
        for y_id in 0..qe {
            if !q.poset.le(x_id, y_id) {
                continue;
            }
            let mu = q.poset.mobius(x_id, y_id)?;
            let gap = q.poset.rank(y_id) - q.poset.rank(x_id);
            let sign = if gap % 2 == 0 { 1 } else { -1 };
            // Representative chain of X roots the interval.
            let c = q.classes[x_id]
                .normal_form
                .as_ref()
                .unwrap_or(&q.classes[x_id].members[0]);
            let (ex, ey) = (q.classes[x_id].endpoint, q.classes[y_id].endpoint);
            if !p.le(ex, ey) {
                // Y holds no chain extending X through the base poset.
                if mu != 0 {
                    return Ok(MobiusCheck {
                        pass: false,
                        counterexample: Some(Counterexample {
                            interval: (x_id, y_id),
                            root: Some(c.0.clone()),
                            chains: Vec::new(),
                            words: Vec::new(),
                            note: format!("expected 0 (incomparable endpoints), got {mu}"),
                        }),
                    });
                }
                continue;
            }
            let mut increasing = Vec::new();
            for d in p.saturated_chains(ex, ey)? {
                let mut full = c.0.clone();
                full.extend_from_slice(&d.0[1..]);
                let w = labeling.word_suffix(p, &full, d.steps())?;
                if w.windows(2).all(|v| labeling.order().lt(&v[0], &v[1])) {
                    increasing.push(full);
                }
            }
            if increasing.len() != 1 {
                return Err(Error::Internal(format!(
                    "rooted interval ({ex}, {ey}) has {} increasing chains",
                    increasing.len()
                )));
            }
            let expected = match q.class_of.get(&increasing[0]) {
                Some(&cls) if cls == y_id => sign,
                _ => 0,
            };
            if mu != expected || mu.abs() > 1 {
                return Ok(MobiusCheck {
                    pass: false,
                    counterexample: Some(Counterexample {
                        interval: (x_id, y_id),
                        root: Some(c.0.clone()),
                        chains: vec![increasing[0].clone()],
                        words: Vec::new(),
                        note: format!("expected {expected}, got {mu}"),
                    }),
                });
            }
        }
    }
    Ok(MobiusCheck {
        pass: true,
        counterexample: None,
    })
}

/// The label-preserving chain bijection between the quotient and the base:
/// sending a saturated chain of classes to its endpoint chain is a bijection
/// onto saturated chains from the minimum of the base, length by length, and
/// preserves words.
pub fn chain_bijection_check(
    p: &Poset,
    labeling: &dyn Labeling,
    q: &QuotientPoset,
) -> Result<Report> {
    let q_chains: Vec<SaturatedChain> = q
        .poset
        .chains_from_min(None)?
        .into_iter()
        .collect();
    let p_chains = p.chains_from_min(None)?;
    let mut p_count: HashMap<usize, usize> = HashMap::new();
    for c in &p_chains {
        *p_count.entry(c.steps()).or_default() += 1;
    }
    let mut seen: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    let mut q_count: HashMap<usize, usize> = HashMap::new();
    let fail = |note: String, chains: Vec<Vec<usize>>| {
        Ok(Report {
            check: crate::verify::CheckKind::WordUniqueness,
            pass: false,
            counterexample: Some(Counterexample {
                interval: (0, 0),
                root: None,
                chains,
                words: Vec::new(),
                note,
            }),
        })
    };
    for qc in &q_chains {
        let endpoint_chain: Vec<usize> = qc.0.iter().map(|&id| q.classes[id].endpoint).collect();
        // Endpoint chains must be saturated in the base poset.
        for w in endpoint_chain.windows(2) {
            if !p.upper_covers(w[0]).contains(&w[1]) {
                return fail(
                    "endpoint image is not a saturated chain".into(),
                    vec![qc.0.clone(), endpoint_chain.clone()],
                );
            }
        }
        if let Some(other) = seen.insert(endpoint_chain.clone(), qc.0.clone()) {
            return fail(
                "two quotient chains share an endpoint image".into(),
                vec![other, qc.0.clone()],
            );
        }
        // Words agree: the quotient word of the class chain equals the base
        // word of the endpoint chain (rooted at the minimum).
        let q_word = q.dual_labeling.word(&q.poset, &qc.0)?;
        let p_word = labeling.word(p, &endpoint_chain)?;
        if q_word != p_word {
            return fail(
                format!(
                    "label words differ: {} vs {}",
                    word_string(&q_word),
                    word_string(&p_word)
                ),
                vec![qc.0.clone(), endpoint_chain],
            );
        }
        *q_count.entry(qc.steps()).or_default() += 1;
    }
    if q_count != p_count {
        return fail("chain counts differ by length".into(), Vec::new());
    }
    Ok(Report {
        check: crate::verify::CheckKind::WordUniqueness,
        pass: true,
        counterexample: None,
    })
}

/// Convenience: verify that the freshly built quotient labeling is ER* on
/// the quotient poset.
pub fn dual_labeling_is_er_star(q: &QuotientPoset) -> Result<bool> {
    Ok(crate::verify::verify_er_star(&q.poset, &q.dual_labeling)?.pass)
}

/// Whitney duality of the base and its quotient, checked numerically.
pub fn check_whitney_duality(p: &Poset, q: &QuotientPoset) -> bool {
    Poset::is_whitney_dual_pair(p, &q.poset)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{increasing_forest_poset, partition_lattice};
    use crate::iso::are_isomorphic;
    use crate::labeling::Label;
    use crate::verify::verify_er;

    #[test]
    fn chain_poset_of_pi3() {
        let (p, _) = partition_lattice(3).unwrap();
        let cp = chain_poset(&p, None).unwrap();
        // 1 trivial chain, 3 atom chains, 3 maximal chains.
        assert_eq!(cp.poset.n_elements(), 7);
        assert_eq!(cp.poset.whitney_second().0, vec![1, 3, 3]);
    }

    #[test]
    fn pi3_classes_merge_exactly_one_pair() {
        let (p, lab) = partition_lattice(3).unwrap();
        let ec =
            exchange_classes(&p, &lab, None, ClassStrategy::CrossCheck, None).unwrap();
        // Only the two chains through 12/3 and 13/2 to 123 coincide.
        assert_eq!(ec.classes.len(), 6);
        let sizes: Vec<usize> = ec.classes.iter().map(|c| c.members.len()).collect();
        assert_eq!(sizes.iter().sum::<usize>(), 7);
        assert_eq!(*sizes.iter().max().unwrap(), 2);
    }

    #[test]
    fn classes_can_be_capped_by_rank() {
        let (p, lab) = partition_lattice(3).unwrap();
        let ec = exchange_classes(&p, &lab, Some(1), ClassStrategy::NormalForm, None).unwrap();
        // Length-zero and length-one chains are all singleton classes.
        assert_eq!(ec.classes.len(), 4);
        assert!(ec.classes.iter().all(|c| c.members.len() == 1));
    }

    #[test]
    fn q_of_pi3_is_isf3() {
        let (p, lab) = partition_lattice(3).unwrap();
        let q = build_q(&p, &lab, &BuildOptions::default()).unwrap();
        let (isf, _) = increasing_forest_poset(3).unwrap();
        assert!(are_isomorphic(&q.poset, &isf).is_some());
        assert!(check_whitney_duality(&p, &q));
        assert!(dual_labeling_is_er_star(&q).unwrap());
    }

    #[test]
    fn sort_word_examples() {
        let order = LabelOrder::LexTotal;
        let w: Vec<Label> = [8, 5, 3, 2, 4].iter().map(|&v| Label::single(v)).collect();
        let sorted = sort_word(&w, &order);
        let digits: Vec<i64> = sorted.iter().map(|l| l.0[0]).collect();
        assert_eq!(digits, vec![8, 5, 4, 3, 2]);
        // Ascent-free words are fixed.
        assert_eq!(sort_word(&sorted, &order), sorted);
        let pair_word = vec![Label::pair(1, 2), Label::pair(1, 3)];
        assert_eq!(
            sort_word(&pair_word, &order),
            vec![Label::pair(1, 3), Label::pair(1, 2)]
        );
    }

    #[test]
    fn r_of_pi3_matches_q() {
        let (p, lab) = partition_lattice(3).unwrap();
        let r = build_r(&p, &lab, &BuildOptions::default()).unwrap();
        // 1 bottom + 3 atoms + 2 ascent-free words at the top.
        assert_eq!(r.poset.n_elements(), 6);
        assert_eq!(
            r.elements[0],
            (p.min_element(), Vec::new()),
            "rank zero is the empty word at the bottom"
        );
        assert!(verify_r_iso_q(&p, &lab, &BuildOptions::default()).unwrap());
    }

    #[test]
    fn mobius_of_q_pi3_in_unit_range() {
        let (p, lab) = partition_lattice(3).unwrap();
        let q = build_q(&p, &lab, &BuildOptions::default()).unwrap();
        let check = mobius_q_check(&p, &lab, &q).unwrap();
        assert!(check.pass, "{:?}", check.counterexample);
        for x in 0..q.poset.n_elements() {
            for y in 0..q.poset.n_elements() {
                if q.poset.le(x, y) {
                    assert!(q.poset.mobius(x, y).unwrap().abs() <= 1);
                }
            }
        }
    }

    #[test]
    fn chain_bijection_on_pi3() {
        let (p, lab) = partition_lattice(3).unwrap();
        let q = build_q(&p, &lab, &BuildOptions::default()).unwrap();
        let report = chain_bijection_check(&p, &lab, &q).unwrap();
        assert!(report.pass, "{:?}", report.counterexample);
    }

    #[test]
    fn build_q_rejects_non_whitney_labelings() {
        let (p, lab) = increasing_forest_poset(3).unwrap();
        assert!(matches!(
            build_q(&p, &lab, &BuildOptions::default()),
            Err(Error::NotWhitneyLabeling(_))
        ));
    }

    #[test]
    fn verify_er_is_reexported_for_dual_consumers() {
        let (p, lab) = partition_lattice(3).unwrap();
        assert!(verify_er(&p, &lab).unwrap().pass);
    }
}
