//! Rooted tree patterns.
//!
//! Every edge of a pattern points from a child towards the root, so the
//! root is the unique node of out-degree zero and, once embedded, the
//! vertex with the lowest mark.
//!
//! Text form: a node is `(` followed by its children and `)`; the outermost
//! node is the root and `()` is a leaf. A node may carry a label written
//! directly before its opening parenthesis (`r(a() b())`). Whitespace is
//! ignored. The shorthand `spider:k1,k2,…` builds a root with one leg per
//! entry, leg `i` holding `k_i` internal nodes between its leaf and the
//! root.

use std::fmt;

use serde::Serialize;

use crate::error::{AdrcmError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeSpec {
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    labels: Vec<Option<String>>,
}

/// Shape quantities that drive the expectation asymptotics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeShape {
    /// Number of leaves.
    pub ell: usize,
    /// For each leaf (in node order), the number of nodes strictly between
    /// it and the nearest node with two or more children, or the root.
    pub m_per_leaf: Vec<usize>,
    pub m: usize,
    /// Longest root-to-leaf path in edges.
    pub depth: usize,
    /// No two leaf-to-root paths share a non-root node.
    pub is_spider: bool,
    /// Number of non-root nodes.
    pub a: usize,
}

impl TreeSpec {
    /// Builds a tree from a parent map. Exactly one entry must be `None`.
    pub fn from_parents(parent: Vec<Option<usize>>) -> Result<Self> {
        let n = parent.len();
        let roots: Vec<usize> = (0..n).filter(|&i| parent[i].is_none()).collect();
        if roots.len() != 1 {
            return Err(AdrcmError::Config(format!(
                "tree must have exactly one root, found {}",
                roots.len()
            )));
        }
        let root = roots[0];
        let mut children = vec![Vec::new(); n];
        for (i, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                if p >= n || p == i {
                    return Err(AdrcmError::Config(format!("invalid parent {p} for node {i}")));
                }
                children[p].push(i);
            }
        }
        // every node must reach the root without revisiting a node
        for start in 0..n {
            let mut cur = start;
            let mut steps = 0;
            while let Some(p) = parent[cur] {
                cur = p;
                steps += 1;
                if steps > n {
                    return Err(AdrcmError::Config("parent map contains a cycle".into()));
                }
            }
        }
        if n < 2 {
            return Err(AdrcmError::Config("tree needs at least one edge".into()));
        }
        Ok(TreeSpec {
            root,
            parent,
            children,
            labels: vec![None; n],
        })
    }

    /// Root with `legs.len()` paths; leg `i` has `legs[i]` internal nodes.
    pub fn spider(legs: &[usize]) -> Result<Self> {
        if legs.is_empty() {
            return Err(AdrcmError::Config("spider needs at least one leg".into()));
        }
        let mut parent = vec![None];
        for &k in legs {
            let mut prev = 0;
            for _ in 0..=k {
                parent.push(Some(prev));
                prev = parent.len() - 1;
            }
        }
        Self::from_parents(parent)
    }

    pub fn single_edge() -> Self {
        Self::spider(&[0]).expect("valid")
    }

    /// Root with `leaves` leaf children.
    pub fn star(leaves: usize) -> Result<Self> {
        Self::spider(&vec![0; leaves])
    }

    /// Path of `d` edges ending in the root.
    pub fn chain(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(AdrcmError::Config("chain needs at least one edge".into()));
        }
        Self::spider(&[d - 1])
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    /// Number of non-root nodes (equivalently, of edges).
    pub fn edge_count(&self) -> usize {
        self.parent.len() - 1
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, node: usize) -> Option<usize> {
        self.parent[node]
    }

    pub fn children(&self, node: usize) -> &[usize] {
        &self.children[node]
    }

    pub fn label(&self, node: usize) -> Option<&str> {
        self.labels[node].as_deref()
    }

    pub fn is_leaf(&self, node: usize) -> bool {
        node != self.root && self.children[node].is_empty()
    }

    /// Nodes in breadth-first order from the root.
    pub fn bfs_order(&self) -> Vec<usize> {
        let mut order = vec![self.root];
        let mut head = 0;
        while head < order.len() {
            let node = order[head];
            order.extend_from_slice(&self.children[node]);
            head += 1;
        }
        order
    }

    pub fn depth(&self) -> usize {
        (0..self.node_count())
            .map(|mut cur| {
                let mut d = 0;
                while let Some(p) = self.parent[cur] {
                    cur = p;
                    d += 1;
                }
                d
            })
            .max()
            .unwrap_or(0)
    }

    /// Canonical text form: unlabeled, children ordered by their own
    /// canonical strings. Isomorphic trees serialize identically.
    pub fn canonical(&self) -> String {
        self.canonical_from(self.root)
    }

    fn canonical_from(&self, node: usize) -> String {
        let mut parts: Vec<String> = self.children[node]
            .iter()
            .map(|&c| self.canonical_from(c))
            .collect();
        parts.sort();
        format!("({})", parts.concat())
    }

    /// Structural equality up to relabeling of nodes.
    pub fn is_isomorphic(&self, other: &TreeSpec) -> bool {
        self.canonical() == other.canonical()
    }
}

impl fmt::Display for TreeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

impl std::str::FromStr for TreeSpec {
    type Err = AdrcmError;

    fn from_str(s: &str) -> Result<Self> {
        parse_tree(s)
    }
}

fn parse_error(offset: usize, message: impl Into<String>) -> AdrcmError {
    AdrcmError::Parse {
        offset,
        message: message.into(),
    }
}

pub fn parse_tree(text: &str) -> Result<TreeSpec> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(parse_error(0, "empty input"));
    }
    if let Some(rest) = trimmed.strip_prefix("spider:") {
        return parse_spider(rest);
    }
    let mut parser = Parser {
        bytes: text.as_bytes(),
        at: 0,
        parent: Vec::new(),
        labels: Vec::new(),
    };
    parser.skip_ws();
    parser.node(None)?;
    parser.skip_ws();
    if parser.at < parser.bytes.len() {
        return Err(parse_error(
            parser.at,
            if parser.bytes[parser.at] == b')' {
                "unbalanced parentheses: unexpected ')'"
            } else {
                "unexpected trailing input"
            },
        ));
    }
    if parser.parent.len() < 2 {
        return Err(parse_error(0, "tree needs at least one edge"));
    }
    let mut tree = TreeSpec::from_parents(parser.parent)?;
    tree.labels = parser.labels;
    Ok(tree)
}

fn parse_spider(rest: &str) -> Result<TreeSpec> {
    let mut legs = Vec::new();
    for (i, item) in rest.split(',').enumerate() {
        let item = item.trim();
        let k: i64 = item
            .parse()
            .map_err(|_| parse_error(7, format!("spider leg {i}: '{item}' is not an integer")))?;
        if k < 0 {
            return Err(parse_error(7, format!("spider leg {i}: negative count {k}")));
        }
        legs.push(k as usize);
    }
    TreeSpec::spider(&legs)
}

struct Parser<'a> {
    bytes: &'a [u8],
    at: usize,
    parent: Vec<Option<usize>>,
    labels: Vec<Option<String>>,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.at < self.bytes.len() && self.bytes[self.at].is_ascii_whitespace() {
            self.at += 1;
        }
    }

    fn label(&mut self) -> Option<String> {
        let start = self.at;
        while self.at < self.bytes.len()
            && (self.bytes[self.at].is_ascii_alphanumeric() || self.bytes[self.at] == b'_')
        {
            self.at += 1;
        }
        (self.at > start)
            .then(|| String::from_utf8_lossy(&self.bytes[start..self.at]).into_owned())
    }

    fn node(&mut self, parent: Option<usize>) -> Result<()> {
        let label = self.label();
        self.skip_ws();
        match self.bytes.get(self.at) {
            Some(b'(') => self.at += 1,
            Some(_) => return Err(parse_error(self.at, "expected '('")),
            None => return Err(parse_error(self.at, "unbalanced parentheses: unexpected end")),
        }
        let id = self.parent.len();
        self.parent.push(parent);
        self.labels.push(label);
        loop {
            self.skip_ws();
            match self.bytes.get(self.at) {
                Some(b')') => {
                    self.at += 1;
                    return Ok(());
                }
                Some(_) => self.node(Some(id))?,
                None => {
                    return Err(parse_error(self.at, "unbalanced parentheses: missing ')'"))
                }
            }
        }
    }
}

pub fn analyze_shape(tree: &TreeSpec) -> TreeShape {
    let leaves: Vec<usize> = (0..tree.node_count()).filter(|&i| tree.is_leaf(i)).collect();
    let m_per_leaf: Vec<usize> = leaves
        .iter()
        .map(|&leaf| {
            let mut count = 0;
            let mut cur = tree.parent(leaf).expect("leaf has a parent");
            while cur != tree.root() && tree.children(cur).len() < 2 {
                count += 1;
                cur = tree.parent(cur).expect("non-root has a parent");
            }
            count
        })
        .collect();
    let is_spider = (0..tree.node_count())
        .filter(|&i| i != tree.root())
        .all(|i| tree.children(i).len() <= 1);
    TreeShape {
        ell: leaves.len(),
        m: m_per_leaf.iter().sum(),
        m_per_leaf,
        depth: tree.depth(),
        is_spider,
        a: tree.edge_count(),
    }
}

/// Exponents of `μ(u) ∼ C u^{−ℓγ} (log 1/u)^m`: returns `(−ℓγ, m)`.
pub fn expectation_exponents(shape: &TreeShape, gamma: f64) -> Result<(f64, usize)> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(AdrcmError::ParamDomain(format!("gamma must lie in (0, 1), got {gamma}")));
    }
    Ok((-(shape.ell as f64) * gamma, shape.m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cherry() {
        let t = parse_tree("(()())").unwrap();
        assert_eq!(t.node_count(), 3);
        assert_eq!(t.children(t.root()).len(), 2);
    }

    #[test]
    fn spider_shorthand() {
        let t = parse_tree("spider:2,2,1,0").unwrap();
        assert_eq!(t.node_count(), 10);
        let s = analyze_shape(&t);
        assert_eq!(s.ell, 4);
        assert_eq!(s.m_per_leaf, vec![2, 2, 1, 0]);
        assert_eq!(s.m, 5);
        assert!(s.is_spider);
        assert_eq!(s.a, 9);
        assert_eq!(s.depth, 3);
    }

    #[test]
    fn parse_errors() {
        let e = parse_tree("(()").unwrap_err();
        assert!(e.to_string().contains("unbalanced"), "{e}");
        assert!(parse_tree("())").unwrap_err().to_string().contains("unbalanced"));
        assert!(parse_tree("").unwrap_err().to_string().contains("empty"));
        assert!(parse_tree("   ").is_err());
        assert!(parse_tree("spider:1,-2").unwrap_err().to_string().contains("negative"));
        assert!(parse_tree("spider:").is_err());
        assert!(parse_tree("()").is_err());
        assert!(parse_tree("(x)").is_err());
    }

    #[test]
    fn labels_and_whitespace() {
        let t = parse_tree(" r( a ( ) b() ) ").unwrap();
        assert_eq!(t.node_count(), 3);
        assert_eq!(t.label(0), Some("r"));
        assert_eq!(t.label(1), Some("a"));
        assert_eq!(t.canonical(), "(()())");
    }

    #[test]
    fn single_edge_and_paths() {
        let s = analyze_shape(&parse_tree("(())").unwrap());
        assert_eq!((s.ell, s.m, s.depth), (1, 0, 1));
        for d in 1..6 {
            let s = analyze_shape(&TreeSpec::chain(d).unwrap());
            assert_eq!((s.ell, s.m, s.depth), (1, d - 1, d));
        }
    }

    #[test]
    fn nine_node_three_leaf_fixture() {
        // root -> A -> B, B has two children (C -> leaf, leaf); root -> D -> E -> leaf
        let t = parse_tree("( ( ( (()) () ) ) ( ( () ) ) )").unwrap();
        let s = analyze_shape(&t);
        assert_eq!(t.node_count(), 9);
        assert_eq!(s.ell, 3);
        assert_eq!(s.a, 8);
        assert!(!s.is_spider);
        assert_eq!(s.m_per_leaf, vec![1, 0, 2]);
    }

    #[test]
    fn intersection_nodes_stop_the_count() {
        // Five leaves, two branching nodes below the root, reproducing
        // m = (1, 2, 1, 0, 2).
        let t = parse_tree("( ( (()) ((())) ) ( (()) () ) ((())) )").unwrap();
        let s = analyze_shape(&t);
        assert_eq!(s.ell, 5);
        assert_eq!(s.m_per_leaf, vec![1, 2, 1, 0, 2]);
        assert_eq!(s.m, 6);
        assert!(!s.is_spider);
    }

    #[test]
    fn exponents() {
        let edge = analyze_shape(&TreeSpec::single_edge());
        assert_eq!(expectation_exponents(&edge, 0.8).unwrap(), (-0.8, 0));
        let sp = analyze_shape(&TreeSpec::spider(&[2, 2, 1, 0]).unwrap());
        let (p, m) = expectation_exponents(&sp, 0.2).unwrap();
        assert!((p + 0.8).abs() < 1e-12);
        assert_eq!(m, 5);
        let shape = TreeShape {
            ell: 3,
            m_per_leaf: vec![4, 0, 0],
            m: 4,
            depth: 5,
            is_spider: true,
            a: 7,
        };
        assert_eq!(expectation_exponents(&shape, 0.5).unwrap(), (-1.5, 4));
        assert!(expectation_exponents(&shape, 1.0).is_err());
    }

    #[test]
    fn from_parents_validation() {
        assert!(TreeSpec::from_parents(vec![None, None]).is_err());
        assert!(TreeSpec::from_parents(vec![Some(1), Some(0)]).is_err());
        assert!(TreeSpec::from_parents(vec![None, Some(2), Some(1)]).is_err());
        assert!(TreeSpec::from_parents(vec![None]).is_err());
    }

    fn arb_tree() -> impl Strategy<Value = TreeSpec> {
        (1usize..12)
            .prop_flat_map(|a| proptest::collection::vec(any::<proptest::sample::Index>(), a))
            .prop_map(|picks| {
                let mut parent = vec![None];
                for (i, pick) in picks.iter().enumerate() {
                    parent.push(Some(pick.index(i + 1)));
                }
                TreeSpec::from_parents(parent).unwrap()
            })
    }

    proptest! {
        #[test]
        fn canonical_round_trip(t in arb_tree()) {
            let text = t.to_string();
            let back = parse_tree(&text).unwrap();
            prop_assert!(back.is_isomorphic(&t));
            prop_assert_eq!(back.node_count(), t.node_count());
            prop_assert_eq!(back.to_string(), text);
            let (mut a, mut b) = (analyze_shape(&back), analyze_shape(&t));
            a.m_per_leaf.sort_unstable();
            b.m_per_leaf.sort_unstable();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn spider_node_accounting(legs in proptest::collection::vec(0usize..5, 1..6)) {
            let t = TreeSpec::spider(&legs).unwrap();
            let s = analyze_shape(&t);
            prop_assert!(s.is_spider);
            prop_assert_eq!(s.a, s.m_per_leaf.iter().map(|m| m + 1).sum::<usize>());
            prop_assert_eq!(s.m_per_leaf, legs);
        }

        #[test]
        fn shape_invariants(t in arb_tree()) {
            let s = analyze_shape(&t);
            prop_assert!(s.ell >= 1);
            prop_assert_eq!(s.m, s.m_per_leaf.iter().sum::<usize>());
            prop_assert!(s.depth <= s.a);
        }
    }
}
