//! Rooted counts on an [`AdrcmGraph`].
//!
//! All counts are ordered: a tree count is the number of injective
//! homomorphisms with the root pinned, and a clique count is the number of
//! ordered `(m−1)`-tuples of in-neighbours of the root that are pairwise
//! adjacent. Unordered views are obtained by dividing by the appropriate
//! factorial.

use serde::Serialize;

use crate::error::{AdrcmError, Result};
use crate::model::{connects, edge_direction, AdrcmGraph, Boundary, Direction, MarkBands, Vertex};
use crate::treespec::TreeSpec;

/// Size limits protecting against factorial blow-up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CountGuards {
    /// Largest pattern tree, in non-root nodes.
    pub max_tree_edges: usize,
    /// Largest clique order `m` (root included).
    pub max_clique_order: usize,
    /// Largest graph accepted by the brute-force oracles.
    pub max_brute_vertices: usize,
}

impl Default for CountGuards {
    fn default() -> Self {
        CountGuards {
            max_tree_edges: 8,
            max_clique_order: 8,
            max_brute_vertices: 16,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CountResult {
    pub root: Vertex,
    pub value: u128,
    /// True unless the graph is known to contain every vertex that can take
    /// part in a pattern rooted here.
    pub truncated: bool,
}

fn falling_factorial(n: u128, k: usize) -> u128 {
    (0..k as u128).fold(1u128, |acc, i| acc * n.saturating_sub(i))
}

fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

fn is_truncated(g: &AdrcmGraph, root: usize, depth: usize) -> bool {
    let (lo, hi) = g.core();
    let pos = g.vertex(root).pos;
    let in_core = pos >= lo && pos <= hi;
    !(in_core && g.complete_depth().is_some_and(|d| d >= depth))
}

/// Backtracking counter for one tree pattern, reusable across roots of the
/// same graph. In-neighbour lists are computed on first use and cached.
pub struct TreeCounter<'g> {
    g: &'g AdrcmGraph,
    depth: usize,
    /// Tree nodes in assignment order (root first).
    parent_slot: Vec<usize>,
    /// Trailing slots that are all leaf children of the same parent; they
    /// are counted in closed form instead of enumerated.
    tail: usize,
    cache_span: Vec<(usize, usize)>,
    arena: Vec<u32>,
    image: Vec<usize>,
    scratch: Vec<usize>,
}

const UNKNOWN: (usize, usize) = (usize::MAX, 0);

impl<'g> TreeCounter<'g> {
    pub fn new(g: &'g AdrcmGraph, tree: &TreeSpec, guards: &CountGuards) -> Result<Self> {
        if tree.edge_count() > guards.max_tree_edges {
            return Err(AdrcmError::SizeGuard {
                what: "tree non-root nodes",
                got: tree.edge_count(),
                limit: guards.max_tree_edges,
            });
        }
        // The leaf group counted in closed form: the node with the most leaf
        // children.
        let group_parent = (0..tree.node_count())
            .max_by_key(|&i| {
                let leaves = tree.children(i).iter().filter(|&&c| tree.is_leaf(c)).count();
                (leaves, std::cmp::Reverse(i))
            })
            .expect("non-empty tree");
        let group: Vec<usize> = tree
            .children(group_parent)
            .iter()
            .copied()
            .filter(|&c| tree.is_leaf(c))
            .collect();
        let mut order: Vec<usize> = tree.bfs_order().into_iter().filter(|n| !group.contains(n)).collect();
        order.extend_from_slice(&group);
        let mut slot_of = vec![0; tree.node_count()];
        for (s, &node) in order.iter().enumerate() {
            slot_of[node] = s;
        }
        let parent_slot = order
            .iter()
            .map(|&node| tree.parent(node).map_or(usize::MAX, |p| slot_of[p]))
            .collect();
        Ok(TreeCounter {
            g,
            depth: tree.depth(),
            parent_slot,
            tail: group.len(),
            cache_span: vec![UNKNOWN; g.len()],
            arena: Vec::new(),
            image: vec![0; order.len()],
            scratch: Vec::new(),
        })
    }

    fn in_list(&mut self, v: usize) -> (usize, usize) {
        if self.cache_span[v] == UNKNOWN {
            self.scratch.clear();
            self.g.in_neighbor_ids_into(v, &mut self.scratch);
            let start = self.arena.len();
            self.arena.extend(self.scratch.iter().map(|&j| j as u32));
            self.cache_span[v] = (start, self.scratch.len());
        }
        self.cache_span[v]
    }

    /// Number of injective embeddings with the root mapped to vertex `root`.
    pub fn count_at(&mut self, root: usize) -> u128 {
        self.image[0] = root;
        self.extend(1)
    }

    pub fn result_at(&mut self, root: usize) -> CountResult {
        CountResult {
            root: self.g.vertex(root),
            value: self.count_at(root),
            truncated: is_truncated(self.g, root, self.depth),
        }
    }

    fn extend(&mut self, slot: usize) -> u128 {
        let slots = self.image.len();
        if slot == slots - self.tail {
            if self.tail == 0 {
                return 1;
            }
            let anchor = self.image[self.parent_slot[slot]];
            let (start, len) = self.in_list(anchor);
            let used = &self.image[..slot];
            let free = self.arena[start..start + len]
                .iter()
                .filter(|&&c| !used.contains(&(c as usize)))
                .count();
            return falling_factorial(free as u128, self.tail);
        }
        let anchor = self.image[self.parent_slot[slot]];
        let (start, len) = self.in_list(anchor);
        let mut total = 0u128;
        for i in start..start + len {
            let c = self.arena[i] as usize;
            if self.image[..slot].contains(&c) {
                continue;
            }
            debug_assert!(self.g.vertex(c).mark >= self.g.vertex(self.image[0]).mark);
            self.image[slot] = c;
            total += self.extend(slot + 1);
        }
        total
    }
}

pub fn count_tree_embeddings(g: &AdrcmGraph, tree: &TreeSpec, root: &Vertex) -> Result<CountResult> {
    let r = g.index_of(root)?;
    Ok(TreeCounter::new(g, tree, &CountGuards::default())?.result_at(r))
}

/// Below this size a plain pairwise scan beats building a band index.
const SMALL_SET: usize = 48;

/// Number of unordered `k`-cliques inside `members` (graph vertex ids in
/// ascending order).
pub fn count_cliques_among(g: &AdrcmGraph, members: &[usize], k: usize) -> u128 {
    match k {
        0 => return 1,
        1 => return members.len() as u128,
        _ => {}
    }
    if members.len() < k {
        return 0;
    }
    let mut forward: Vec<Vec<usize>> = vec![Vec::new(); members.len()];
    if members.len() <= SMALL_SET {
        for (i, f) in forward.iter_mut().enumerate() {
            f.extend((i + 1..members.len()).filter(|&j| g.adjacent(members[i], members[j])));
        }
    } else {
        let local: Vec<Vertex> = members.iter().map(|&i| g.vertex(i)).collect();
        let bands = MarkBands::build(&local);
        let boundary: Boundary = g.boundary();
        for (i, v) in local.iter().enumerate() {
            bands.for_each_candidate(v.pos, v.mark, Direction::Any, g.params(), &boundary, |j| {
                if j > i && g.adjacent(members[i], members[j]) {
                    forward[i].push(j);
                }
            });
            forward[i].sort_unstable();
        }
    }
    if k == 2 {
        return forward.iter().map(|f| f.len() as u128).sum();
    }
    let all: Vec<usize> = (0..members.len()).collect();
    cliques_from(&all, k, &forward)
}

fn cliques_from(cands: &[usize], k: usize, forward: &[Vec<usize>]) -> u128 {
    if k == 1 {
        return cands.len() as u128;
    }
    let mut total = 0;
    let mut next = Vec::new();
    for &c in cands {
        next.clear();
        intersect_sorted(cands, &forward[c], &mut next);
        if next.len() + 1 >= k {
            total += cliques_from(&next, k - 1, forward);
        }
    }
    total
}

fn intersect_sorted(a: &[usize], b: &[usize], out: &mut Vec<usize>) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
}

/// Clique tuple counter for order `m`, reusable across roots.
pub struct CliqueCounter<'g> {
    g: &'g AdrcmGraph,
    members: usize,
    scratch: Vec<usize>,
}

impl<'g> CliqueCounter<'g> {
    pub fn new(g: &'g AdrcmGraph, m: usize, guards: &CountGuards) -> Result<Self> {
        if m < 2 {
            return Err(AdrcmError::ParamDomain(format!("clique order must be >= 2, got {m}")));
        }
        if m > guards.max_clique_order {
            return Err(AdrcmError::SizeGuard {
                what: "clique order",
                got: m,
                limit: guards.max_clique_order,
            });
        }
        Ok(CliqueCounter {
            g,
            members: m - 1,
            scratch: Vec::new(),
        })
    }

    pub fn count_at(&mut self, root: usize) -> u128 {
        self.scratch.clear();
        self.g.in_neighbor_ids_into(root, &mut self.scratch);
        count_cliques_among(self.g, &self.scratch, self.members) * factorial(self.members)
    }

    pub fn result_at(&mut self, root: usize) -> CountResult {
        CountResult {
            root: self.g.vertex(root),
            value: self.count_at(root),
            truncated: is_truncated(self.g, root, 1),
        }
    }
}

pub fn count_clique_tuples(g: &AdrcmGraph, m: usize, root: &Vertex) -> Result<CountResult> {
    let r = g.index_of(root)?;
    Ok(CliqueCounter::new(g, m, &CountGuards::default())?.result_at(r))
}

fn brute_guard(g: &AdrcmGraph, guards: &CountGuards) -> Result<()> {
    if g.len() > guards.max_brute_vertices {
        return Err(AdrcmError::SizeGuard {
            what: "brute-force graph vertices",
            got: g.len(),
            limit: guards.max_brute_vertices,
        });
    }
    if g.boundary() != Boundary::Open {
        return Err(AdrcmError::Config("brute-force oracles use the open metric only".into()));
    }
    Ok(())
}

/// `from → to` checked literally against the edge rule.
fn literal_edge(from: &Vertex, to: &Vertex, g: &AdrcmGraph) -> bool {
    connects(from, to, g.params())
        && edge_direction(from, to).map(|(f, _)| f == *from).unwrap_or(false)
}

/// Visits every ordered tuple of `len` distinct vertex ids drawn from
/// `pool`.
fn for_each_tuple(pool: &[usize], len: usize, visit: &mut impl FnMut(&[usize])) {
    fn rec(pool: &[usize], len: usize, cur: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        if cur.len() == len {
            visit(cur);
            return;
        }
        for &v in pool {
            if !cur.contains(&v) {
                cur.push(v);
                rec(pool, len, cur, visit);
                cur.pop();
            }
        }
    }
    rec(pool, len, &mut Vec::with_capacity(len), visit);
}

/// Exhaustive oracle for [`count_tree_embeddings`].
pub fn brute_force_tree_embeddings(g: &AdrcmGraph, tree: &TreeSpec, root: &Vertex) -> Result<u128> {
    brute_force_tree_embeddings_with(g, tree, root, &CountGuards::default())
}

pub fn brute_force_tree_embeddings_with(
    g: &AdrcmGraph,
    tree: &TreeSpec,
    root: &Vertex,
    guards: &CountGuards,
) -> Result<u128> {
    brute_guard(g, guards)?;
    let r = g.index_of(root)?;
    let others: Vec<usize> = (0..tree.node_count()).filter(|&n| n != tree.root()).collect();
    let pool: Vec<usize> = (0..g.len()).filter(|&i| i != r).collect();
    let mut count = 0u128;
    let mut image = vec![0usize; tree.node_count()];
    for_each_tuple(&pool, others.len(), &mut |tuple| {
        image[tree.root()] = r;
        for (node, &v) in others.iter().zip(tuple) {
            image[*node] = v;
        }
        let ok = others.iter().all(|&node| {
            let p = tree.parent(node).expect("non-root");
            literal_edge(&g.vertex(image[node]), &g.vertex(image[p]), g)
        });
        if ok {
            count += 1;
        }
    });
    Ok(count)
}

/// Exhaustive oracle for [`count_clique_tuples`].
pub fn brute_force_clique_tuples(g: &AdrcmGraph, m: usize, root: &Vertex) -> Result<u128> {
    brute_force_clique_tuples_with(g, m, root, &CountGuards::default())
}

pub fn brute_force_clique_tuples_with(
    g: &AdrcmGraph,
    m: usize,
    root: &Vertex,
    guards: &CountGuards,
) -> Result<u128> {
    brute_guard(g, guards)?;
    if m < 2 {
        return Err(AdrcmError::ParamDomain(format!("clique order must be >= 2, got {m}")));
    }
    let r = g.index_of(root)?;
    let rv = g.vertex(r);
    let pool: Vec<usize> = (0..g.len()).filter(|&i| i != r).collect();
    let mut count = 0u128;
    for_each_tuple(&pool, m - 1, &mut |tuple| {
        let to_root = tuple.iter().all(|&i| literal_edge(&g.vertex(i), &rv, g));
        let pairwise = tuple.iter().enumerate().all(|(a, &i)| {
            tuple[a + 1..]
                .iter()
                .all(|&j| connects(&g.vertex(i), &g.vertex(j), g.params()))
        });
        if to_root && pairwise {
            count += 1;
        }
    });
    Ok(count)
}
