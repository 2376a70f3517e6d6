//! Finite graded posets with a unique minimum element.
//!
//! A [`Poset`] is stored as the transitive reduction of its order relation
//! (the cover relations of the Hasse diagram) together with a rank function
//! computed from the covers. All queries are read-only; the Möbius memo table
//! is internally synchronized, so a `Poset` can be shared across threads.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};

/// Bit-row over element ids, used for the `<=` relation.
type BitRow = Vec<u64>;

fn row_new(n: usize) -> BitRow {
    vec![0u64; n.div_ceil(64)]
}

fn row_set(row: &mut BitRow, i: usize) {
    row[i / 64] |= 1u64 << (i % 64);
}

fn row_get(row: &BitRow, i: usize) -> bool {
    row[i / 64] >> (i % 64) & 1 == 1
}

fn row_or(dst: &mut BitRow, src: &BitRow) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d |= s;
    }
}

/// Iterate the indices set in `a & b`, ascending.
fn and_iter<'a>(a: &'a BitRow, b: &'a BitRow) -> impl Iterator<Item = usize> + 'a {
    a.iter().zip(b).enumerate().flat_map(|(w, (x, y))| {
        let mut word = x & y;
        std::iter::from_fn(move || {
            if word == 0 {
                None
            } else {
                let t = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + t)
            }
        })
    })
}

/// A saturated chain of poset elements: consecutive entries are cover pairs,
/// so ranks increase by exactly one per step.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SaturatedChain(pub Vec<usize>);

impl SaturatedChain {
    /// The element where the chain terminates.
    pub fn endpoint(&self) -> usize {
        *self.0.last().expect("chain is nonempty")
    }

    /// Number of cover steps (one less than the number of elements).
    pub fn steps(&self) -> usize {
        self.0.len() - 1
    }
}

/// Whitney numbers indexed by rank; entry `k` is the rank-`k` value.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct WhitneyVector(pub Vec<i64>);

impl WhitneyVector {
    fn padded(&self, len: usize) -> impl Iterator<Item = i64> + '_ {
        self.0.iter().copied().chain(std::iter::repeat(0)).take(len)
    }
}

/// A finite graded poset with a unique minimum, stored by cover relations.
pub struct Poset {
    n: usize,
    covers: Vec<(usize, usize)>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    rank: Vec<usize>,
    min_element: usize,
    names: Option<Vec<String>>,
    // below[y] holds {x : x <= y}; above[x] holds {y : x <= y}.
    below: Vec<BitRow>,
    above: Vec<BitRow>,
    by_rank: Vec<Vec<usize>>,
    mobius_memo: Mutex<HashMap<usize, Arc<Vec<i64>>>>,
}

impl Clone for Poset {
    fn clone(&self) -> Self {
        Poset {
            n: self.n,
            covers: self.covers.clone(),
            up: self.up.clone(),
            down: self.down.clone(),
            rank: self.rank.clone(),
            min_element: self.min_element,
            names: self.names.clone(),
            below: self.below.clone(),
            above: self.above.clone(),
            by_rank: self.by_rank.clone(),
            mobius_memo: Mutex::new(HashMap::new()),
        }
    }
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Poset")
            .field("n", &self.n)
            .field("covers", &self.covers)
            .field("rank", &self.rank)
            .finish()
    }
}

impl Poset {
    /// Build and validate a poset from cover pairs `(lower, upper)` on
    /// elements `0..n`.
    ///
    /// Ranks are computed by longest-path layering from the unique minimum;
    /// the input must be acyclic, transitively reduced, graded, and have a
    /// single minimal element from which everything is reachable.
    pub fn build(covers: &[(usize, usize)], n: usize) -> Result<Poset> {
        if n == 0 {
            return Err(Error::InvalidInput("poset must be nonempty".into()));
        }
        let mut cover_list: Vec<(usize, usize)> = covers.to_vec();
        cover_list.sort_unstable();
        cover_list.dedup();
        for &(lo, hi) in &cover_list {
            if lo >= n || hi >= n {
                return Err(Error::ElementOutOfRange(lo.max(hi), n));
            }
            if lo == hi {
                return Err(Error::CycleDetected);
            }
        }

        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for &(lo, hi) in &cover_list {
            up[lo].push(hi);
            down[hi].push(lo);
        }
        for list in up.iter_mut().chain(down.iter_mut()) {
            list.sort_unstable();
        }

        // Kahn topological order; leftover elements mean a directed cycle.
        let mut indeg: Vec<usize> = down.iter().map(Vec::len).collect();
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let sources = queue.clone();
        let mut topo = Vec::with_capacity(n);
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            topo.push(v);
            for &w in &up[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push(w);
                }
            }
        }
        if topo.len() != n {
            return Err(Error::CycleDetected);
        }
        if sources.len() != 1 {
            return Err(Error::NoUniqueMinimum(sources.len()));
        }
        let min_element = sources[0];

        // below[y] = union of below over lower covers, plus y itself,
        // in topological order.
        let mut below: Vec<BitRow> = vec![row_new(n); n];
        for &v in &topo {
            let mut row = row_new(n);
            for &u in &down[v] {
                row_or(&mut row, &below[u]);
            }
            row_set(&mut row, v);
            below[v] = row;
        }

        // A cover implied by a longer path is not a transitive reduction:
        // (lo, hi) is redundant when lo lies below some other lower cover of hi.
        for &(lo, hi) in &cover_list {
            for &u in &down[hi] {
                if u != lo && row_get(&below[u], lo) {
                    return Err(Error::NotTransitivelyReduced(lo, hi));
                }
            }
        }

        // Longest-path layering from the minimum, then the graded check.
        let mut rank = vec![0usize; n];
        for &v in &topo {
            for &u in &down[v] {
                rank[v] = rank[v].max(rank[u] + 1);
            }
        }
        for &(lo, hi) in &cover_list {
            if rank[hi] != rank[lo] + 1 {
                return Err(Error::NotGraded(lo, hi, rank[lo], rank[hi]));
            }
        }

        let mut above: Vec<BitRow> = vec![row_new(n); n];
        for &v in topo.iter().rev() {
            let mut row = row_new(n);
            for &w in &up[v] {
                row_or(&mut row, &above[w]);
            }
            row_set(&mut row, v);
            above[v] = row;
        }

        let max_rank = rank.iter().copied().max().unwrap_or(0);
        let mut by_rank = vec![Vec::new(); max_rank + 1];
        for v in 0..n {
            by_rank[rank[v]].push(v);
        }

        Ok(Poset {
            n,
            covers: cover_list,
            up,
            down,
            rank,
            min_element,
            names: None,
            below,
            above,
            by_rank,
            mobius_memo: Mutex::new(HashMap::new()),
        })
    }

    /// Attach display names (one per element).
    pub fn with_names(mut self, names: Vec<String>) -> Poset {
        assert_eq!(names.len(), self.n);
        self.names = Some(names);
        self
    }

    pub fn n_elements(&self) -> usize {
        self.n
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn rank(&self, x: usize) -> usize {
        self.rank[x]
    }

    /// Largest rank present in the poset.
    pub fn max_rank(&self) -> usize {
        self.by_rank.len() - 1
    }

    pub fn min_element(&self) -> usize {
        self.min_element
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.up[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.down[x]
    }

    /// Elements of the given rank, ascending by id.
    pub fn rank_elements(&self, k: usize) -> &[usize] {
        self.by_rank.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Elements with no upper cover, ascending by id.
    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.up[v].is_empty()).collect()
    }

    /// The unique maximum, if there is one.
    pub fn max_element(&self) -> Option<usize> {
        let m = self.maximal_elements();
        if m.len() == 1 {
            Some(m[0])
        } else {
            None
        }
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        row_get(&self.below[y], x)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.le(x, y)
    }

    pub fn name(&self, x: usize) -> String {
        match &self.names {
            Some(names) => names[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Elements of the closed interval `[x, y]`, ascending by id.
    pub fn interval(&self, x: usize, y: usize) -> Vec<usize> {
        and_iter(&self.below[y], &self.above[x]).collect()
    }

    /// Möbius values `mu(x, .)` for the whole up-set of `x`, memoized.
    fn mobius_row(&self, x: usize) -> Arc<Vec<i64>> {
        if let Some(row) = self.mobius_memo.lock().unwrap().get(&x) {
            return Arc::clone(row);
        }
        let mut row = vec![0i64; self.n];
        row[x] = 1;
        for ranked in &self.by_rank[self.rank[x] + 1..] {
            for &y in ranked {
                if !self.le(x, y) {
                    continue;
                }
                let mut acc = 0i64;
                for z in and_iter(&self.below[y], &self.above[x]) {
                    if z != y {
                        acc += row[z];
                    }
                }
                row[y] = -acc;
            }
        }
        let row = Arc::new(row);
        self.mobius_memo
            .lock()
            .unwrap()
            .insert(x, Arc::clone(&row));
        row
    }

    /// The Möbius function `mu(x, y)`.
    pub fn mobius(&self, x: usize, y: usize) -> Result<i64> {
        if !self.le(x, y) {
            return Err(Error::NotComparable(x, y));
        }
        Ok(self.mobius_row(x)[y])
    }

    /// Whitney numbers of the first kind: `w_k = sum of mu(0, x)` over rank-k
    /// elements.
    pub fn whitney_first(&self) -> WhitneyVector {
        let row = self.mobius_row(self.min_element);
        let values = self
            .by_rank
            .iter()
            .map(|els| els.iter().map(|&x| row[x]).sum())
            .collect();
        WhitneyVector(values)
    }

    /// Whitney numbers of the second kind: `W_k = #` rank-k elements.
    pub fn whitney_second(&self) -> WhitneyVector {
        WhitneyVector(self.by_rank.iter().map(|els| els.len() as i64).collect())
    }

    /// Whitney duality test: `|w_k(P)| = W_k(Q)` and `|w_k(Q)| = W_k(P)` for
    /// all `k`, vectors padded with zeros to a common length.
    pub fn is_whitney_dual_pair(p: &Poset, q: &Poset) -> bool {
        let len = (p.max_rank() + 1).max(q.max_rank() + 1);
        let wp = p.whitney_first();
        let wq = q.whitney_first();
        let cp = p.whitney_second();
        let cq = q.whitney_second();
        wp.padded(len)
            .zip(cq.padded(len))
            .all(|(w, c)| w.abs() == c)
            && wq
                .padded(len)
                .zip(cp.padded(len))
                .all(|(w, c)| w.abs() == c)
    }

    /// Eulerian test: `mu(x, y) = (-1)^(rank difference)` on every interval.
    /// Posets without a unique maximum are not considered Eulerian here.
    pub fn is_eulerian(&self) -> bool {
        if self.max_element().is_none() {
            return false;
        }
        (0..self.n).all(|x| {
            let row = self.mobius_row(x);
            (0..self.n).filter(|&y| self.le(x, y)).all(|y| {
                let sign = if (self.rank[y] - self.rank[x]) % 2 == 0 {
                    1
                } else {
                    -1
                };
                row[y] == sign
            })
        })
    }

    /// All maximal chains of the interval `[x, y]`, in lexicographic order of
    /// element ids. `[x, x]` yields the single one-element chain.
    pub fn saturated_chains(&self, x: usize, y: usize) -> Result<Vec<SaturatedChain>> {
        if !self.le(x, y) {
            return Err(Error::NotComparable(x, y));
        }
        let mut out = Vec::new();
        let mut stack = vec![x];
        self.chain_dfs(&mut stack, y, &mut out);
        Ok(out)
    }

    fn chain_dfs(&self, stack: &mut Vec<usize>, y: usize, out: &mut Vec<SaturatedChain>) {
        let top = *stack.last().unwrap();
        if top == y {
            out.push(SaturatedChain(stack.clone()));
            return;
        }
        for &z in &self.up[top] {
            if self.le(z, y) {
                stack.push(z);
                self.chain_dfs(stack, y, out);
                stack.pop();
            }
        }
    }

    /// All saturated chains starting at the minimum (every endpoint,
    /// including the one-element chain), DFS order with sorted successors.
    /// Fails with `SizeLimit` when more than `cap` chains would be produced.
    pub fn chains_from_min(&self, cap: Option<usize>) -> Result<Vec<SaturatedChain>> {
        let cap = cap.unwrap_or(2_000_000);
        let mut out = Vec::new();
        let mut stack = vec![self.min_element];
        self.all_chain_dfs(&mut stack, cap, &mut out)?;
        Ok(out)
    }

    fn all_chain_dfs(
        &self,
        stack: &mut Vec<usize>,
        cap: usize,
        out: &mut Vec<SaturatedChain>,
    ) -> Result<()> {
        if out.len() >= cap {
            return Err(Error::SizeLimit(format!(
                "more than {cap} saturated chains from the minimum"
            )));
        }
        out.push(SaturatedChain(stack.clone()));
        let top = *stack.last().unwrap();
        for &z in &self.up[top] {
            stack.push(z);
            self.all_chain_dfs(stack, cap, out)?;
            stack.pop();
        }
        Ok(())
    }

    /// Maximal chains of the whole poset (from the minimum to a maximal
    /// element), in lexicographic order of element ids.
    pub fn maximal_chains(&self) -> Vec<SaturatedChain> {
        let mut out = Vec::new();
        let mut stack = vec![self.min_element];
        self.max_chain_dfs(&mut stack, &mut out);
        out
    }

    fn max_chain_dfs(&self, stack: &mut Vec<usize>, out: &mut Vec<SaturatedChain>) {
        let top = *stack.last().unwrap();
        if self.up[top].is_empty() {
            out.push(SaturatedChain(stack.clone()));
            return;
        }
        for &z in &self.up[top] {
            stack.push(z);
            self.max_chain_dfs(stack, out);
            stack.pop();
        }
    }

    /// Bowtie-free test: no two distinct elements share two common lower
    /// covers.
    pub fn is_bowtie_free(&self) -> bool {
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        for a in 0..self.n {
            let lows = &self.down[a];
            for i in 0..lows.len() {
                for j in i + 1..lows.len() {
                    if seen.insert((lows[i], lows[j]), a).is_some() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Lattice test: every pair of elements has a unique join and meet.
    pub fn is_lattice(&self) -> bool {
        for x in 0..self.n {
            for y in x + 1..self.n {
                if self.join(x, y).is_none() || self.meet(x, y).is_none() {
                    return false;
                }
            }
        }
        true
    }

    /// Least upper bound of `x` and `y`, if unique.
    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        let mut minimal = None;
        for z in and_iter(&self.above[x], &self.above[y]) {
            // z is minimal among common upper bounds iff no smaller one
            // sits below it.
            if and_iter(&self.above[x], &self.above[y])
                .filter(|&w| w != z)
                .all(|w| !self.le(w, z))
            {
                if minimal.is_some() {
                    return None;
                }
                minimal = Some(z);
            }
        }
        minimal
    }

    /// Greatest lower bound of `x` and `y`, if unique.
    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        let mut maximal = None;
        for z in and_iter(&self.below[x], &self.below[y]) {
            if and_iter(&self.below[x], &self.below[y])
                .filter(|&w| w != z)
                .all(|w| !self.le(z, w))
            {
                if maximal.is_some() {
                    return None;
                }
                maximal = Some(z);
            }
        }
        maximal
    }

    /// Atoms: elements of rank 1.
    pub fn atoms(&self) -> &[usize] {
        self.rank_elements(1)
    }

    /// The induced subposet on the down-set of `top`, together with the map
    /// from new ids to original ids.
    pub fn down_set_subposet(&self, top: usize) -> (Poset, Vec<usize>) {
        let members: Vec<usize> = (0..self.n).filter(|&v| self.le(v, top)).collect();
        let index: HashMap<usize, usize> =
            members.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let covers: Vec<(usize, usize)> = self
            .covers
            .iter()
            .filter(|&&(lo, hi)| self.le(hi, top) && self.le(lo, top))
            .map(|&(lo, hi)| (index[&lo], index[&hi]))
            .collect();
        let names: Vec<String> = members.iter().map(|&v| self.name(v)).collect();
        let sub = Poset::build(&covers, members.len())
            .expect("down-sets of graded posets are graded")
            .with_names(names);
        (sub, members)
    }
}
