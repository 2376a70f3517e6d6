//! Rooted spanning forests and increasing spanning forests on `[n]`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::families::partitions::check_n;
use crate::labeling::{EdgeLabeling, Label, LabelOrder};
use crate::poset::Poset;

pub(crate) const SF_CAP: usize = 5;
pub(crate) const ISF_CAP: usize = 7;

/// A spanning forest of the complete graph on `[n]` with one marked root
/// per component. Canonical form: edges `(a, b)` with `a < b`, sorted;
/// roots sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootedForest {
    n: usize,
    edges: Vec<(usize, usize)>,
    roots: Vec<usize>,
}

impl RootedForest {
    pub fn new(n: usize, mut edges: Vec<(usize, usize)>, mut roots: Vec<usize>) -> Result<RootedForest> {
        for e in &mut edges {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        edges.dedup();
        roots.sort_unstable();
        roots.dedup();
        let f = RootedForest { n, edges, roots };
        f.validate()?;
        Ok(f)
    }

    /// The edgeless forest in which every vertex is a root.
    pub fn discrete(n: usize) -> RootedForest {
        RootedForest {
            n,
            edges: Vec::new(),
            roots: (1..=n).collect(),
        }
    }

    fn validate(&self) -> Result<()> {
        for &(a, b) in &self.edges {
            if a == 0 || b > self.n || a == b {
                return Err(Error::InvalidInput(format!(
                    "edge ({a}, {b}) out of range for [{}]",
                    self.n
                )));
            }
        }
        let comp = self.components();
        let n_comp = {
            let mut reps: Vec<usize> = (1..=self.n).map(|v| comp[v]).collect();
            reps.sort_unstable();
            reps.dedup();
            reps.len()
        };
        if self.edges.len() + n_comp != self.n {
            return Err(Error::InvalidInput("edge set contains a cycle".into()));
        }
        // Exactly one root per component.
        let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
        for &r in &self.roots {
            if r == 0 || r > self.n || seen.insert(comp[r], r).is_some() {
                return Err(Error::InvalidInput("roots must mark each component once".into()));
            }
        }
        if seen.len() != n_comp {
            return Err(Error::InvalidInput("some component has no root".into()));
        }
        Ok(())
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    /// Component representative (smallest vertex) for every vertex;
    /// index 0 is unused.
    pub fn components(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..=self.n).collect();
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        (0..=self.n).map(|v| find(&mut parent, v)).collect()
    }

    /// The root of the component containing `v`.
    pub fn root_of(&self, v: usize) -> usize {
        let comp = self.components();
        *self
            .roots
            .iter()
            .find(|&&r| comp[r] == comp[v])
            .expect("every component carries a root")
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n + 1];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Parent of every vertex toward its component root (`None` at roots).
    pub fn parents(&self) -> Vec<Option<usize>> {
        let adj = self.adjacency();
        let mut parent: Vec<Option<usize>> = vec![None; self.n + 1];
        let mut depth: Vec<Option<usize>> = vec![None; self.n + 1];
        for &r in &self.roots {
            depth[r] = Some(0);
            let mut queue = vec![r];
            while let Some(v) = queue.pop() {
                for &w in &adj[v] {
                    if depth[w].is_none() {
                        depth[w] = Some(depth[v].unwrap() + 1);
                        parent[w] = Some(v);
                        queue.push(w);
                    }
                }
            }
        }
        parent
    }

    /// Depth of every vertex below its component root.
    pub fn depths(&self) -> Vec<usize> {
        let adj = self.adjacency();
        let mut depth: Vec<Option<usize>> = vec![None; self.n + 1];
        for &r in &self.roots {
            depth[r] = Some(0);
            let mut queue = vec![r];
            while let Some(v) = queue.pop() {
                for &w in &adj[v] {
                    if depth[w].is_none() {
                        depth[w] = Some(depth[v].unwrap() + 1);
                        queue.push(w);
                    }
                }
            }
        }
        (0..=self.n).map(|v| depth[v].unwrap_or(0)).collect()
    }

    /// Cost of the tree containing `v`: the sum of root distances over its
    /// vertices.
    pub fn tree_cost(&self, v: usize) -> usize {
        let comp = self.components();
        let depths = self.depths();
        (1..=self.n)
            .filter(|&w| comp[w] == comp[v])
            .map(|w| depths[w])
            .sum()
    }

    /// Number of descent edges `{x, p(x)}` with `p(x) > x` in the tree
    /// containing `v`.
    pub fn tree_descents(&self, v: usize) -> usize {
        let comp = self.components();
        let parents = self.parents();
        (1..=self.n)
            .filter(|&w| comp[w] == comp[v])
            .filter(|&w| matches!(parents[w], Some(p) if p > w))
            .count()
    }

    /// Vertex set of the tree containing `v`, ascending.
    pub fn tree_vertices(&self, v: usize) -> Vec<usize> {
        let comp = self.components();
        (1..=self.n).filter(|&w| comp[w] == comp[v]).collect()
    }

    /// Merge the trees rooted at `a` and `b` with the edge `{a, b}`, keeping
    /// `keep` (one of `a`, `b`) as root of the new tree.
    pub fn merge_at_roots(&self, a: usize, b: usize, keep: usize) -> Result<RootedForest> {
        if !self.roots.contains(&a) || !self.roots.contains(&b) {
            return Err(Error::InvalidInput("merge endpoints must both be roots".into()));
        }
        let comp = self.components();
        if comp[a] == comp[b] {
            return Err(Error::InvalidInput("merge endpoints must lie in distinct trees".into()));
        }
        if keep != a && keep != b {
            return Err(Error::InvalidInput("kept root must be one of the endpoints".into()));
        }
        let drop = if keep == a { b } else { a };
        let mut edges = self.edges.clone();
        edges.push((a.min(b), a.max(b)));
        edges.sort_unstable();
        let roots = self.roots.iter().copied().filter(|&r| r != drop).collect();
        Ok(RootedForest {
            n: self.n,
            edges,
            roots,
        })
    }
}

impl fmt::Display for RootedForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comp = self.components();
        let mut reps: Vec<usize> = (1..=self.n).filter(|&v| comp[v] == v).collect();
        reps.sort_unstable();
        let parts: Vec<String> = reps
            .iter()
            .map(|&rep| {
                let root = self.root_of(rep);
                let edges: Vec<String> = self
                    .edges
                    .iter()
                    .filter(|&&(a, _)| comp[a] == rep)
                    .map(|&(a, b)| format!("{a}-{b}"))
                    .collect();
                if edges.is_empty() {
                    format!("{root}")
                } else {
                    format!("{root}({})", edges.join(","))
                }
            })
            .collect();
        write!(f, "{}", parts.join("/"))
    }
}

/// The edge labeling of the spanning-forest poset: merging the trees rooted
/// at `kept` and `absorbed` is labeled `(-cost(absorbed tree), kept,
/// absorbed)`, compared lexicographically in `Z^3`.
pub fn sf_label(lower: &RootedForest, upper: &RootedForest) -> Result<Label> {
    let new_edge: Vec<(usize, usize)> = upper
        .edges()
        .iter()
        .filter(|e| !lower.edges().contains(e))
        .copied()
        .collect();
    if new_edge.len() != 1 || upper.edges().len() != lower.edges().len() + 1 {
        return Err(Error::InvalidInput("not a cover in the forest poset".into()));
    }
    let (a, b) = new_edge[0];
    if !lower.roots().contains(&a) || !lower.roots().contains(&b) {
        return Err(Error::InvalidInput("new edge must join two roots".into()));
    }
    let absorbed = if upper.roots().contains(&a) { b } else { a };
    let kept = if absorbed == a { b } else { a };
    Ok(Label::triple(
        -(lower.tree_cost(absorbed) as i64),
        kept as i64,
        absorbed as i64,
    ))
}

/// All rooted spanning forests on `[n]`: acyclic edge subsets of the
/// complete graph crossed with a root choice per component.
pub fn rooted_forests(n: usize) -> Vec<RootedForest> {
    let all_edges: Vec<(usize, usize)> = (1..=n)
        .flat_map(|a| (a + 1..=n).map(move |b| (a, b)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1 << all_edges.len()) {
        let edges: Vec<(usize, usize)> = all_edges
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let skeleton = RootedForest {
            n,
            edges: edges.clone(),
            roots: Vec::new(),
        };
        let comp = skeleton.components();
        if {
            let mut reps: Vec<usize> = (1..=n).map(|v| comp[v]).collect();
            reps.sort_unstable();
            reps.dedup();
            reps.len()
        } + edges.len()
            != n
        {
            continue; // cyclic
        }
        // Root choices: any vertex per component.
        let mut reps: Vec<usize> = (1..=n).filter(|&v| comp[v] == v).collect();
        reps.sort_unstable();
        let choices: Vec<Vec<usize>> = reps
            .iter()
            .map(|&rep| (1..=n).filter(|&v| comp[v] == rep).collect())
            .collect();
        let mut pick = vec![0usize; reps.len()];
        loop {
            let roots: Vec<usize> = pick.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
            out.push(RootedForest {
                n,
                edges: edges.clone(),
                roots: {
                    let mut r = roots;
                    r.sort_unstable();
                    r
                },
            });
            let mut k = 0;
            loop {
                if k == pick.len() {
                    break;
                }
                pick[k] += 1;
                if pick[k] < choices[k].len() {
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
    out
}

/// The family of rooted spanning forests on `[n]` as a graded poset
/// (`E(F_1) ⊆ E(F_2)`, `R(F_2) ⊆ R(F_1)`), its elements, and the `Z^3`
/// edge labeling.
pub struct SpanningForestFamily {
    pub poset: Poset,
    pub labeling: EdgeLabeling,
    pub elements: Vec<RootedForest>,
}

pub fn rooted_forest_poset(n: usize) -> Result<SpanningForestFamily> {
    rooted_forest_poset_capped(n, SF_CAP)
}

pub fn rooted_forest_poset_capped(n: usize, cap: usize) -> Result<SpanningForestFamily> {
    check_n(n, cap, "rooted spanning forest poset")?;
    let mut elements = rooted_forests(n);
    elements.sort_by(|a, b| (a.edges.len(), a).cmp(&(b.edges.len(), b)));
    let index: BTreeMap<&RootedForest, usize> =
        elements.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut covers = Vec::new();
    let mut labels = BTreeMap::new();
    for (i, f) in elements.iter().enumerate() {
        for (ri, &a) in f.roots.iter().enumerate() {
            for &b in &f.roots[ri + 1..] {
                for keep in [a, b] {
                    let merged = f.merge_at_roots(a, b, keep)?;
                    let j = index[&merged];
                    covers.push((i, j));
                    labels.insert((i, j), sf_label(f, &merged)?);
                }
            }
        }
    }
    let names: Vec<String> = elements.iter().map(|f| f.to_string()).collect();
    let poset = Poset::build(&covers, elements.len())?.with_names(names);
    let labeling = EdgeLabeling::new(&poset, labels, LabelOrder::LexTotal)?;
    Ok(SpanningForestFamily {
        poset,
        labeling,
        elements,
    })
}

/// An increasing spanning forest: every vertex's parent (toward the minimum
/// of its component) is smaller than the vertex. Encoded by its sorted edge
/// set; roots are the component minima.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IncreasingForest {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl IncreasingForest {
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn components(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..=self.n).collect();
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        (0..=self.n).map(|v| find(&mut parent, v)).collect()
    }

    /// Component minima, ascending.
    pub fn roots(&self) -> Vec<usize> {
        let comp = self.components();
        (1..=self.n).filter(|&v| comp[v] == v).collect()
    }
}

impl fmt::Display for IncreasingForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.edges.is_empty() {
            return write!(f, "empty");
        }
        let parts: Vec<String> = self.edges.iter().map(|&(a, b)| format!("{a}-{b}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// All increasing spanning forests on `[n]`: each vertex independently picks
/// a smaller parent or none.
pub fn increasing_forests(n: usize) -> Vec<IncreasingForest> {
    let mut out = vec![IncreasingForest { n, edges: Vec::new() }];
    for v in 2..=n {
        let mut next = Vec::with_capacity(out.len() * v);
        for f in &out {
            next.push(f.clone());
            for parent in 1..v {
                let mut edges = f.edges.clone();
                edges.push((parent, v));
                edges.sort_unstable();
                next.push(IncreasingForest { n, edges });
            }
        }
        out = next;
    }
    out
}

/// The poset of increasing spanning forests on `[n]` with the ER* labeling
/// by the added edge.
pub fn increasing_forest_poset(n: usize) -> Result<(Poset, EdgeLabeling)> {
    increasing_forest_poset_capped(n, ISF_CAP)
}

pub fn increasing_forest_poset_capped(n: usize, cap: usize) -> Result<(Poset, EdgeLabeling)> {
    check_n(n, cap, "increasing spanning forest poset")?;
    let mut elements = increasing_forests(n);
    elements.sort_by(|a, b| (a.edges.len(), a).cmp(&(b.edges.len(), b)));
    let index: BTreeMap<&IncreasingForest, usize> =
        elements.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut covers = Vec::new();
    let mut labels = BTreeMap::new();
    for (i, f) in elements.iter().enumerate() {
        let roots = f.roots();
        for (ri, &a) in roots.iter().enumerate() {
            for &b in &roots[ri + 1..] {
                let mut edges = f.edges.clone();
                edges.push((a, b));
                edges.sort_unstable();
                let merged = IncreasingForest { n, edges };
                let j = index[&merged];
                covers.push((i, j));
                labels.insert((i, j), Label::pair(a as i64, b as i64));
            }
        }
    }
    let names: Vec<String> = elements.iter().map(|f| f.to_string()).collect();
    let poset = Poset::build(&covers, elements.len())?.with_names(names);
    let labeling = EdgeLabeling::new(&poset, labels, LabelOrder::LexTotal)?;
    Ok((poset, labeling))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forest_counts() {
        // (n + 1)^(n - 1) rooted forests.
        for n in 1..=5 {
            assert_eq!(
                rooted_forests(n).len(),
                (n + 1).pow(n as u32 - 1),
                "n = {n}"
            );
        }
    }

    #[test]
    fn sf3_whitney_numbers() {
        let fam = rooted_forest_poset(3).unwrap();
        assert_eq!(fam.poset.n_elements(), 16);
        assert_eq!(fam.poset.whitney_second().0, vec![1, 6, 9]);
        // Rank of a forest is its number of edges.
        for (i, f) in fam.elements.iter().enumerate() {
            assert_eq!(fam.poset.rank(i), f.edges().len());
        }
    }

    #[test]
    fn tree_cost_examples() {
        // Single vertex.
        let f = RootedForest::discrete(3);
        assert_eq!(f.tree_cost(1), 0);
        // Root with two children.
        let star = RootedForest::new(3, vec![(1, 2), (1, 3)], vec![1]).unwrap();
        assert_eq!(star.tree_cost(1), 2);
        // Path of three vertices rooted at an end: 0 + 1 + 2.
        let path = RootedForest::new(3, vec![(1, 2), (2, 3)], vec![1]).unwrap();
        assert_eq!(path.tree_cost(1), 3);
    }

    #[test]
    fn descent_counts() {
        // Path 1 - 2 - 3 rooted at 3: parents p(2) = 3, p(1) = 2, both
        // descents.
        let f = RootedForest::new(3, vec![(1, 2), (2, 3)], vec![3]).unwrap();
        assert_eq!(f.tree_descents(1), 2);
        let g = RootedForest::new(3, vec![(1, 2), (2, 3)], vec![1]).unwrap();
        assert_eq!(g.tree_descents(1), 0);
        let h = RootedForest::new(3, vec![(1, 2), (2, 3)], vec![2]).unwrap();
        assert_eq!(h.tree_descents(2), 1);
    }

    #[test]
    fn sf_label_formula() {
        let f = RootedForest::new(3, vec![(2, 3)], vec![1, 2]).unwrap();
        // Merge roots 1 and 2 keeping 1: absorbed tree {2, 3} has cost 1.
        let up = f.merge_at_roots(1, 2, 1).unwrap();
        assert_eq!(sf_label(&f, &up).unwrap(), Label::triple(-1, 1, 2));
        // Keeping 2 instead: absorbed tree {1} has cost 0.
        let up2 = f.merge_at_roots(1, 2, 2).unwrap();
        assert_eq!(sf_label(&f, &up2).unwrap(), Label::triple(0, 2, 1));
    }

    #[test]
    fn isf_counts_are_factorials() {
        for n in 1..=5 {
            let count = increasing_forests(n).len();
            assert_eq!(count, (1..=n).product::<usize>(), "n = {n}");
        }
    }

    #[test]
    fn isf3_structure() {
        let (p, _) = increasing_forest_poset(3).unwrap();
        assert_eq!(p.n_elements(), 6);
        assert_eq!(p.whitney_second().0, vec![1, 3, 2]);
        assert_eq!(p.whitney_first().0, vec![1, -3, 1]);
    }

    #[test]
    fn isf2_is_a_two_chain() {
        let (p, _) = increasing_forest_poset(2).unwrap();
        assert_eq!(p.n_elements(), 2);
        assert_eq!(p.covers(), &[(0, 1)]);
    }
}
