//! Graded-poset isomorphism by iterated invariant refinement plus
//! backtracking.
//!
//! Elements are first colored by `(rank, up-degree, down-degree)`, then the
//! coloring is refined with the sorted color multisets of upper and lower
//! covers until it stabilizes (colors are assigned jointly across both posets
//! so they stay comparable). A standard backtracking search then looks for a
//! color-respecting bijection mapping covers to covers in both directions.
//! Adequate up to a few thousand elements; no canonical-form guarantee.

use std::collections::HashMap;

use crate::poset::Poset;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Signature {
    color: u32,
    up: Vec<u32>,
    down: Vec<u32>,
}

fn refine(p: &Poset, q: &Poset) -> Option<(Vec<u32>, Vec<u32>)> {
    let init = |poset: &Poset, v: usize| {
        (
            poset.rank(v),
            poset.upper_covers(v).len(),
            poset.lower_covers(v).len(),
        )
    };
    let mut dict: HashMap<(usize, usize, usize), u32> = HashMap::new();
    let mut keys: Vec<_> = (0..p.n_elements())
        .map(|v| init(p, v))
        .chain((0..q.n_elements()).map(|v| init(q, v)))
        .collect();
    keys.sort_unstable();
    keys.dedup();
    for (i, k) in keys.into_iter().enumerate() {
        dict.insert(k, i as u32);
    }
    let mut cp: Vec<u32> = (0..p.n_elements()).map(|v| dict[&init(p, v)]).collect();
    let mut cq: Vec<u32> = (0..q.n_elements()).map(|v| dict[&init(q, v)]).collect();

    loop {
        let sig = |poset: &Poset, colors: &[u32], v: usize| {
            let mut up: Vec<u32> = poset.upper_covers(v).iter().map(|&w| colors[w]).collect();
            let mut down: Vec<u32> = poset.lower_covers(v).iter().map(|&w| colors[w]).collect();
            up.sort_unstable();
            down.sort_unstable();
            Signature {
                color: colors[v],
                up,
                down,
            }
        };
        let sp: Vec<Signature> = (0..p.n_elements()).map(|v| sig(p, &cp, v)).collect();
        let sq: Vec<Signature> = (0..q.n_elements()).map(|v| sig(q, &cq, v)).collect();
        let mut all: Vec<&Signature> = sp.iter().chain(sq.iter()).collect();
        all.sort_unstable();
        all.dedup();
        let lookup: HashMap<&Signature, u32> = all
            .into_iter()
            .enumerate()
            .map(|(i, s)| (s, i as u32))
            .collect();
        let np: Vec<u32> = sp.iter().map(|s| lookup[s]).collect();
        let nq: Vec<u32> = sq.iter().map(|s| lookup[s]).collect();
        let stable = np == cp && nq == cq;
        cp = np;
        cq = nq;
        if stable {
            break;
        }
    }

    // Color histograms must agree for an isomorphism to exist.
    let hist = |colors: &[u32]| {
        let mut h: HashMap<u32, usize> = HashMap::new();
        for &c in colors {
            *h.entry(c).or_default() += 1;
        }
        h
    };
    if hist(&cp) != hist(&cq) {
        return None;
    }
    Some((cp, cq))
}

/// Decide whether `p` and `q` are isomorphic as posets; on success returns a
/// witness map sending each element of `p` to its image in `q`.
pub fn are_isomorphic(p: &Poset, q: &Poset) -> Option<Vec<usize>> {
    if p.n_elements() != q.n_elements()
        || p.covers().len() != q.covers().len()
        || p.whitney_second() != q.whitney_second()
    {
        return None;
    }
    let (cp, cq) = refine(p, q)?;

    let n = p.n_elements();
    let mut by_color: HashMap<u32, Vec<usize>> = HashMap::new();
    for (v, &color) in cq.iter().enumerate() {
        by_color.entry(color).or_default().push(v);
    }
    // Rarest color classes first keeps the branching factor low.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (by_color[&cp[v]].len(), p.rank(v), v));

    let mut mapping: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    if assign(p, q, &cp, &cq, &by_color, &order, 0, &mut mapping, &mut used) {
        Some(mapping.into_iter().map(Option::unwrap).collect())
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn assign(
    p: &Poset,
    q: &Poset,
    cp: &[u32],
    cq: &[u32],
    by_color: &HashMap<u32, Vec<usize>>,
    order: &[usize],
    idx: usize,
    mapping: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
) -> bool {
    if idx == order.len() {
        return true;
    }
    let v = order[idx];
    for &w in &by_color[&cp[v]] {
        if used[w] || cq[w] != cp[v] {
            continue;
        }
        if !consistent(p, q, mapping, v, w) {
            continue;
        }
        mapping[v] = Some(w);
        used[w] = true;
        if assign(p, q, cp, cq, by_color, order, idx + 1, mapping, used) {
            return true;
        }
        mapping[v] = None;
        used[w] = false;
    }
    false
}

/// Check cover consistency of `v -> w` against everything already mapped.
fn consistent(p: &Poset, q: &Poset, mapping: &[Option<usize>], v: usize, w: usize) -> bool {
    for (u, image) in mapping.iter().enumerate() {
        if let Some(wu) = *image {
            let down = p.lower_covers(v).contains(&u);
            let down_img = q.lower_covers(w).contains(&wu);
            if down != down_img {
                return false;
            }
            let up = p.upper_covers(v).contains(&u);
            let up_img = q.upper_covers(w).contains(&wu);
            if up != up_img {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> Poset {
        Poset::build(&[(0, 1), (0, 2), (1, 3), (2, 3)], 4).unwrap()
    }

    #[test]
    fn identity_witness_on_self() {
        let p = diamond();
        let m = are_isomorphic(&p, &p).expect("self-isomorphic");
        // Witness is rank-preserving and maps covers to covers.
        for &(lo, hi) in p.covers() {
            assert!(p.covers().contains(&(m[lo], m[hi])));
            assert_eq!(p.rank(lo), p.rank(m[lo]));
        }
    }

    #[test]
    fn relabeled_posets_are_isomorphic() {
        let p = diamond();
        // Same diamond with the two middle elements swapped.
        let q = Poset::build(&[(0, 2), (0, 1), (2, 3), (1, 3)], 4).unwrap();
        assert!(are_isomorphic(&p, &q).is_some());
    }

    #[test]
    fn different_posets_are_not() {
        let p = diamond();
        let chain = Poset::build(&[(0, 1), (1, 2), (2, 3)], 4).unwrap();
        assert!(are_isomorphic(&p, &chain).is_none());
        // Same rank profile, different cover structure.
        let v = Poset::build(&[(0, 1), (0, 2), (1, 3)], 4).unwrap();
        let w = Poset::build(&[(0, 1), (0, 2), (1, 3), (2, 3)], 4).unwrap();
        assert!(are_isomorphic(&v, &w).is_none());
    }
}
