//! The local 0-Hecke action on maximal chains of a Whitney-labeled poset,
//! its defining relations, and its quasisymmetric characteristic.

use std::collections::HashMap;

use serde::Serialize;

use crate::dual::QuotientPoset;
use crate::error::{Error, Result};
use crate::labeling::{descent_set, exchange_at, LabelWord, Labeling};
use crate::poset::{Poset, SaturatedChain};
use crate::qsym::{subset_mask, QSymFundamental};
use crate::verify::{verify_whitney, CancellativeLimits};

/// The maximal chains of a poset together with the operators
/// `U_1, .., U_{n-1}` acting on them by quadratic exchanges (identity off
/// ascents).
pub struct HeckeOrbitData {
    pub chains: Vec<SaturatedChain>,
    pub words: Vec<LabelWord>,
    /// Common chain length (the poset rank).
    pub n: usize,
    /// `ops[i - 1][c]` is the index of `U_i` applied to chain `c`.
    pub ops: Vec<Vec<usize>>,
}

impl HeckeOrbitData {
    pub fn apply(&self, i: usize, chain: usize) -> usize {
        self.ops[i - 1][chain]
    }
}

/// Realize the `U_i` maps on the maximal chains of `p`. The labeling must be
/// a verified (generalized) EW- or CW-labeling unless `assume_verified`.
pub fn hecke_action(
    p: &Poset,
    labeling: &dyn Labeling,
    assume_verified: bool,
) -> Result<HeckeOrbitData> {
    if !assume_verified {
        let report = verify_whitney(p, labeling, CancellativeLimits::default())?;
        if !report.is_whitney {
            return Err(Error::NotWhitneyLabeling(
                report
                    .failure_note()
                    .unwrap_or_else(|| "verification failed".into()),
            ));
        }
    }
    let chains = p.maximal_chains();
    let n = p.max_rank();
    if chains.iter().any(|c| c.steps() != n) {
        return Err(Error::RankMismatch);
    }
    let words: Vec<LabelWord> = chains
        .iter()
        .map(|c| labeling.word(p, &c.0))
        .collect::<Result<_>>()?;
    let index: HashMap<&[usize], usize> = chains
        .iter()
        .enumerate()
        .map(|(i, c)| (c.0.as_slice(), i))
        .collect();
    let mut ops = Vec::with_capacity(n.saturating_sub(1));
    for i in 1..n {
        let mut row = Vec::with_capacity(chains.len());
        for (idx, c) in chains.iter().enumerate() {
            let image = match exchange_at(p, labeling, &c.0, &words[idx], i)? {
                Some((other, _)) => *index
                    .get(other.as_slice())
                    .ok_or_else(|| Error::Internal("exchange left the chain set".into()))?,
                None => idx,
            };
            row.push(image);
        }
        ops.push(row);
    }
    Ok(HeckeOrbitData {
        chains,
        words,
        n,
        ops,
    })
}

/// Transport the action to the maximal chains of the quotient dual through
/// the label-preserving chain bijection (a quotient chain maps to its
/// endpoint chain in the base poset).
pub fn transport_to_dual(
    base: &HeckeOrbitData,
    q: &QuotientPoset,
) -> Result<HeckeOrbitData> {
    let q_chains = q.poset.maximal_chains();
    let n = q.poset.max_rank();
    if q_chains.iter().any(|c| c.steps() != n) || n != base.n {
        return Err(Error::RankMismatch);
    }
    let base_index: HashMap<&[usize], usize> = base
        .chains
        .iter()
        .enumerate()
        .map(|(i, c)| (c.0.as_slice(), i))
        .collect();
    // phi: quotient chain -> base chain, by endpoints.
    let mut phi = Vec::with_capacity(q_chains.len());
    for qc in &q_chains {
        let endpoints: Vec<usize> = qc.0.iter().map(|&id| q.classes[id].endpoint).collect();
        let img = *base_index
            .get(endpoints.as_slice())
            .ok_or_else(|| Error::Internal("endpoint image is not a maximal chain".into()))?;
        phi.push(img);
    }
    if q_chains.len() != base.chains.len() {
        return Err(Error::Internal("chain bijection is not onto".into()));
    }
    let mut phi_inv = vec![usize::MAX; base.chains.len()];
    for (qi, &bi) in phi.iter().enumerate() {
        if phi_inv[bi] != usize::MAX {
            return Err(Error::Internal("chain bijection is not injective".into()));
        }
        phi_inv[bi] = qi;
    }
    let words: Vec<LabelWord> = q_chains
        .iter()
        .map(|c| q.dual_labeling.word(&q.poset, &c.0))
        .collect::<Result<_>>()?;
    let ops: Vec<Vec<usize>> = base
        .ops
        .iter()
        .map(|row| (0..q_chains.len()).map(|qc| phi_inv[row[phi[qc]]]).collect())
        .collect();
    Ok(HeckeOrbitData {
        chains: q_chains,
        words,
        n,
        ops,
    })
}

/// Outcome of the exhaustive relation checks.
#[derive(Debug, Clone, Serialize)]
pub struct HeckeRelationsReport {
    pub locality: bool,
    pub idempotent: bool,
    pub far_commutation: bool,
    pub braid: bool,
    pub note: Option<String>,
}

impl HeckeRelationsReport {
    pub fn all_pass(&self) -> bool {
        self.locality && self.idempotent && self.far_commutation && self.braid
    }
}

/// Exhaustively check locality, idempotence, far commutation, and the braid
/// relation over all maximal chains.
pub fn verify_hecke_relations(h: &HeckeOrbitData) -> HeckeRelationsReport {
    let m = h.chains.len();
    let gens = h.ops.len();
    let mut report = HeckeRelationsReport {
        locality: true,
        idempotent: true,
        far_commutation: true,
        braid: true,
        note: None,
    };
    let note = |s: String, field: &mut bool| {
        *field = false;
        s
    };
    // Locality and idempotence.
    'outer: for i in 1..=gens {
        for c in 0..m {
            let image = h.apply(i, c);
            let a = &h.chains[c].0;
            let b = &h.chains[image].0;
            if a.iter().zip(b).enumerate().any(|(k, (x, y))| k != i && x != y) {
                report.note = Some(note(
                    format!("U_{i} moved chain {c} outside rank {i}"),
                    &mut report.locality,
                ));
                break 'outer;
            }
            if h.apply(i, image) != image {
                report.note = Some(note(
                    format!("U_{i}^2 differs from U_{i} on chain {c}"),
                    &mut report.idempotent,
                ));
                break 'outer;
            }
        }
    }
    // Far commutation.
    'far: for i in 1..=gens {
        for j in i + 2..=gens {
            for c in 0..m {
                if h.apply(i, h.apply(j, c)) != h.apply(j, h.apply(i, c)) {
                    report.note = Some(note(
                        format!("U_{i} and U_{j} fail to commute on chain {c}"),
                        &mut report.far_commutation,
                    ));
                    break 'far;
                }
            }
        }
    }
    // Braid, over every chain (vacuous case included).
    'braid: for i in 1..gens {
        for c in 0..m {
            let one = h.apply(i, h.apply(i + 1, h.apply(i, c)));
            let two = h.apply(i + 1, h.apply(i, h.apply(i + 1, c)));
            if one != two {
                report.note = Some(note(
                    format!("braid fails for U_{i}, U_{} on chain {c}", i + 1),
                    &mut report.braid,
                ));
                break 'braid;
            }
        }
    }
    report
}

/// The quasisymmetric characteristic of the defining representation,
/// computed combinatorially: `sum_S #{c : D(c) = S} L_{S,n}` over the
/// descent sets of the chain words.
pub fn characteristic(h: &HeckeOrbitData, labeling: &dyn Labeling) -> QSymFundamental {
    let masks = h.words.iter().map(|w| {
        let d = descent_set(w, labeling.order());
        subset_mask(&d)
    });
    QSymFundamental::from_descents(h.n, masks)
}

/// Characteristic split by maximal interval: one tally of descent sets per
/// chain endpoint.
pub fn characteristic_by_top(
    h: &HeckeOrbitData,
    labeling: &dyn Labeling,
) -> Vec<(usize, QSymFundamental)> {
    let mut by_top: std::collections::BTreeMap<usize, Vec<u32>> = Default::default();
    for (c, w) in h.chains.iter().zip(&h.words) {
        let d = descent_set(w, labeling.order());
        by_top.entry(c.endpoint()).or_default().push(subset_mask(&d));
    }
    by_top
        .into_iter()
        .map(|(top, masks)| (top, QSymFundamental::from_descents(h.n, masks)))
        .collect()
}
