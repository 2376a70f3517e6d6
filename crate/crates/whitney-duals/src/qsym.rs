//! Flag f- and h-vectors and the flag quasisymmetric function, expanded in
//! the fundamental basis.
//!
//! A degree-`n` quasisymmetric function lives here purely as an integer
//! vector indexed by subsets of `[n-1]`, encoded as bitmasks (bit `i-1`
//! stands for `i`).

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poset::Poset;

/// An integer combination of fundamental quasisymmetric functions
/// `L_{S,n}`, `S` a subset of `[n-1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSymFundamental {
    degree: usize,
    coeffs: Vec<i64>,
}

fn mask_count(degree: usize) -> usize {
    1 << degree.saturating_sub(1)
}

/// Render a subset mask as `1,3` (empty string for the empty set).
pub fn subset_string(mask: u32) -> String {
    let mut parts = Vec::new();
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros();
        parts.push((i + 1).to_string());
        m &= m - 1;
    }
    parts.join(",")
}

/// Bitmask of a 1-indexed subset.
pub fn subset_mask(set: &[usize]) -> u32 {
    set.iter().fold(0, |m, &i| m | 1 << (i - 1))
}

impl QSymFundamental {
    pub fn zero(degree: usize) -> QSymFundamental {
        QSymFundamental {
            degree,
            coeffs: vec![0; mask_count(degree)],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff(&self, mask: u32) -> i64 {
        self.coeffs[mask as usize]
    }

    pub fn add_term(&mut self, mask: u32, c: i64) {
        self.coeffs[mask as usize] += c;
    }

    pub fn add(&mut self, other: &QSymFundamental) {
        assert_eq!(self.degree, other.degree, "degrees must match");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    /// The involution sending `L_{S,n}` to `L_{S^c,n}`.
    pub fn omega(&self) -> QSymFundamental {
        let full = (mask_count(self.degree) - 1) as u32;
        let mut out = QSymFundamental::zero(self.degree);
        for (mask, &c) in self.coeffs.iter().enumerate() {
            out.coeffs[(full & !(mask as u32)) as usize] = c;
        }
        out
    }

    /// Nonzero terms, ascending by subset mask.
    pub fn terms(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(m, &c)| (m as u32, c))
    }

    /// Tally of fundamental terms from descent-set masks, one `L_{S,n}` per
    /// item.
    pub fn from_descents(degree: usize, masks: impl IntoIterator<Item = u32>) -> QSymFundamental {
        let mut out = QSymFundamental::zero(degree);
        for m in masks {
            out.add_term(m, 1);
        }
        out
    }
}

impl fmt::Display for QSymFundamental {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .terms()
            .map(|(m, c)| {
                let set = if m == 0 {
                    "∅".to_string()
                } else {
                    subset_string(m)
                };
                format!("{c}*L{{{set}}}")
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0 (degree {})", self.degree)
        } else {
            write!(f, "{} (degree {})", terms.join(" + "), self.degree)
        }
    }
}

impl Serialize for QSymFundamental {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Shadow<'a> {
            n: usize,
            coeffs: Coeffs<'a>,
        }
        struct Coeffs<'a>(&'a QSymFundamental);
        impl Serialize for Coeffs<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let entries: BTreeMap<String, i64> = self
                    .0
                    .terms()
                    .map(|(m, c)| (subset_string(m), c))
                    .collect();
                let mut map = serializer.serialize_map(Some(entries.len()))?;
                for (k, v) in entries {
                    map.serialize_entry(&k, &v)?;
                }
                map.end()
            }
        }
        Shadow {
            n: self.degree,
            coeffs: Coeffs(self),
        }
        .serialize(serializer)
    }
}

/// Flag f-vector (`alpha`) and flag h-vector (`beta`) of a graded poset with
/// a minimum and maximum, indexed by subset masks of `[n-1]`.
#[derive(Debug, Clone, Serialize)]
pub struct FlagVectors {
    pub n: usize,
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
}

impl FlagVectors {
    pub fn alpha_of(&self, set: &[usize]) -> i64 {
        self.alpha[subset_mask(set) as usize]
    }

    pub fn beta_of(&self, set: &[usize]) -> i64 {
        self.beta[subset_mask(set) as usize]
    }
}

/// Flag vectors of a poset with unique minimum and maximum.
pub fn flag_vectors(p: &Poset) -> Result<FlagVectors> {
    let top = p.max_element().ok_or(Error::NoUniqueMaximum)?;
    Ok(flag_vectors_interval(p, top))
}

/// Flag vectors of the interval from the minimum to `top`.
pub fn flag_vectors_interval(p: &Poset, top: usize) -> FlagVectors {
    let n = p.rank(top);
    let masks = mask_count(n.max(1));
    let mut alpha = vec![0i64; masks];
    for mask in 0..masks as u32 {
        alpha[mask as usize] = count_chains_with_rank_set(p, top, n, mask);
    }
    // Möbius inversion over the subset lattice.
    let mut beta = vec![0i64; masks];
    for s in 0..masks as u32 {
        let mut total = 0i64;
        let mut t = s;
        loop {
            let sign = if (s ^ t).count_ones() % 2 == 0 { 1 } else { -1 };
            total += sign * alpha[t as usize];
            if t == 0 {
                break;
            }
            t = (t - 1) & s;
        }
        beta[s as usize] = total;
    }
    FlagVectors { n, alpha, beta }
}

fn count_chains_with_rank_set(p: &Poset, top: usize, n: usize, mask: u32) -> i64 {
    let ranks: Vec<usize> = (1..n).filter(|&r| mask >> (r - 1) & 1 == 1).collect();
    let mut frontier: Vec<(usize, i64)> = vec![(p.min_element(), 1)];
    for r in ranks {
        let mut next: BTreeMap<usize, i64> = BTreeMap::new();
        for &y in p.rank_elements(r) {
            if !p.le(y, top) {
                continue;
            }
            let total: i64 = frontier
                .iter()
                .filter(|&&(x, _)| p.lt(x, y))
                .map(|&(_, c)| c)
                .sum();
            if total != 0 {
                next.insert(y, total);
            }
        }
        frontier = next.into_iter().collect();
    }
    frontier
        .iter()
        .filter(|&&(x, _)| p.le(x, top))
        .map(|&(_, c)| c)
        .sum()
}

/// Ehrenborg's flag quasisymmetric function of a graded poset with a
/// minimum: the sum over maximal elements `m` of
/// `sum_S beta_{[0,m]}(S) L_{S,n}`. All maximal elements must sit at the top
/// rank, since a single degree `n` indexes the expansion.
pub fn flag_qsym(p: &Poset) -> Result<QSymFundamental> {
    let n = p.max_rank();
    let maxima = p.maximal_elements();
    if maxima.iter().any(|&m| p.rank(m) != n) {
        return Err(Error::RankMismatch);
    }
    let mut out = QSymFundamental::zero(n);
    for m in maxima {
        let fv = flag_vectors_interval(p, m);
        for (mask, &b) in fv.beta.iter().enumerate() {
            out.add_term(mask as u32, b);
        }
    }
    Ok(out)
}

/// The omega involution on the fundamental basis.
pub fn omega(q: &QSymFundamental) -> QSymFundamental {
    q.omega()
}
