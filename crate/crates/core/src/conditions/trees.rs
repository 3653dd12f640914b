use std::collections::BTreeSet;
use std::fmt;

/// An unordered rooted tree, stored with its subtrees sorted so that
/// isomorphic trees are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RootedTree {
    children: Vec<RootedTree>,
}

impl RootedTree {
    /// The single-node tree.
    pub fn leaf() -> Self {
        RootedTree { children: Vec::new() }
    }

    /// Graft the given subtrees onto a new root.
    pub fn from_children(mut children: Vec<RootedTree>) -> Self {
        children.sort();
        RootedTree { children }
    }

    pub fn children(&self) -> &[RootedTree] {
        &self.children
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Number of nodes.
    pub fn order(&self) -> usize {
        1 + self.children.iter().map(RootedTree::order).sum::<usize>()
    }

    /// γ(t) = r(t) · Π γ(subtrees).
    pub fn density(&self) -> u64 {
        self.order() as u64 * self.children.iter().map(RootedTree::density).product::<u64>()
    }

    /// All trees obtained by attaching one new leaf to some node.
    fn grow(&self) -> Vec<RootedTree> {
        let mut out = Vec::new();
        let mut with_leaf = self.children.clone();
        with_leaf.push(RootedTree::leaf());
        out.push(RootedTree::from_children(with_leaf));
        for (i, child) in self.children.iter().enumerate() {
            for grown in child.grow() {
                let mut kids = self.children.clone();
                kids[i] = grown;
                out.push(RootedTree::from_children(kids));
            }
        }
        out
    }
}

/// Bracket notation: `t` is the single node and `[u,v]` grafts u and v onto
/// a new root; repeated subtrees are written `u^k`.
impl fmt::Display for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_leaf() {
            return f.write_str("t");
        }
        f.write_str("[")?;
        let mut i = 0;
        let mut first = true;
        while i < self.children.len() {
            let mut j = i;
            while j < self.children.len() && self.children[j] == self.children[i] {
                j += 1;
            }
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{}", self.children[i])?;
            if j - i > 1 {
                write!(f, "^{}", j - i)?;
            }
            i = j;
        }
        f.write_str("]")
    }
}

/// All rooted trees of order 1 to `p`, grouped by increasing order.
pub fn enumerate_trees(p: usize) -> Vec<RootedTree> {
    let mut all = Vec::new();
    if p == 0 {
        return all;
    }
    let mut level: BTreeSet<RootedTree> = BTreeSet::from([RootedTree::leaf()]);
    for order in 1..=p {
        all.extend(level.iter().cloned());
        if order < p {
            level = level.iter().flat_map(RootedTree::grow).collect();
        }
    }
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_by_order() {
        let trees = enumerate_trees(6);
        let counts: Vec<usize> = (1..=6)
            .map(|n| trees.iter().filter(|t| t.order() == n).count())
            .collect();
        assert_eq!(counts, [1, 1, 2, 4, 9, 20]);
    }

    #[test]
    fn densities_up_to_four() {
        let mut g: Vec<u64> = enumerate_trees(4).iter().map(RootedTree::density).collect();
        g.sort_unstable();
        assert_eq!(g, [1, 2, 3, 4, 6, 8, 12, 24]);
        let chain = RootedTree::from_children(vec![RootedTree::from_children(vec![
            RootedTree::from_children(vec![RootedTree::leaf()]),
        ])]);
        assert_eq!(chain.density(), 24);
        assert_eq!(chain.to_string(), "[[[t]]]");
    }

    #[test]
    fn canonical_children() {
        let a = RootedTree::from_children(vec![
            RootedTree::leaf(),
            RootedTree::from_children(vec![RootedTree::leaf()]),
        ]);
        let b = RootedTree::from_children(vec![
            RootedTree::from_children(vec![RootedTree::leaf()]),
            RootedTree::leaf(),
        ]);
        assert_eq!(a, b);
        let bushy = RootedTree::from_children(vec![RootedTree::leaf(); 3]);
        assert_eq!(bushy.to_string(), "[t^3]");
    }
}
