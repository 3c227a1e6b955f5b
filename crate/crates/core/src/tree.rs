//! Index arithmetic on the implicit recursion tree of a truncated transform.
//!
//! A node `(q, r)` names the strided view `X[q], X[q + 2^r], X[q + 2*2^r], ...`
//! of a length-`n` buffer. The root `(0, 0)` is the whole buffer, the even
//! child takes the even local indices and the odd child the odd ones. Nothing
//! is materialized: every operation here is a couple of shifts and compares.

use crate::error::{Result, TftError};

/// A strided subarray `(offset, stride exponent)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Node {
    pub q: usize,
    pub r: u32,
}

/// What a traversal loop did with the node it was standing on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Visit {
    /// A leaf (single element).
    Leaf,
    /// An internal node between its even and odd subtrees.
    Descend,
    /// An internal node whose two halves are combined by butterflies.
    Combine,
}

impl Node {
    pub const ROOT: Node = Node { q: 0, r: 0 };

    #[inline]
    pub const fn new(q: usize, r: u32) -> Self {
        Node { q, r }
    }

    /// `ceil((n - q) / 2^r)`.
    pub fn len(self, n: usize) -> Result<usize> {
        if self.q >= n || self.r >= usize::BITS {
            return Err(TftError::InvalidNode {
                q: self.q,
                r: self.r,
                n,
            });
        }
        Ok(self.span(n))
    }

    pub fn is_leaf(self, n: usize) -> Result<bool> {
        self.len(n).map(|len| len == 1)
    }

    /// Unchecked `len`; callers guarantee `q < n`.
    #[inline]
    pub(crate) fn span(self, n: usize) -> usize {
        debug_assert!(self.q < n);
        ((n - self.q - 1) >> self.r) + 1
    }

    #[inline]
    pub(crate) fn single(self, n: usize) -> bool {
        n - self.q <= 1usize << self.r
    }

    /// Buffer index of the `i`-th element of this view.
    #[inline]
    pub fn index(self, i: usize) -> usize {
        self.q + (i << self.r)
    }

    #[inline]
    pub fn even(self) -> Node {
        Node::new(self.q, self.r + 1)
    }

    #[inline]
    pub fn odd(self) -> Node {
        Node::new(self.q + (1 << self.r), self.r + 1)
    }

    #[inline]
    pub fn is_root(self) -> bool {
        self.r == 0
    }

    /// True if this node is the odd child of its parent.
    #[inline]
    pub fn is_odd_child(self) -> bool {
        self.r > 0 && self.q >= 1 << (self.r - 1)
    }

    /// # Panics
    /// On the root.
    #[inline]
    pub fn parent(self) -> Node {
        assert!(!self.is_root(), "the root has no parent");
        let half = 1usize << (self.r - 1);
        if self.q < half {
            Node::new(self.q, self.r - 1)
        } else {
            Node::new(self.q - half, self.r - 1)
        }
    }

    /// The leaf reached by following even children.
    #[inline]
    pub fn first_leaf(self, n: usize) -> Node {
        let mut node = self;
        while !node.single(n) {
            node = node.even();
        }
        node
    }

    /// Climbs through even-child links to the nearest ancestor-or-self that
    /// is an odd child. Undoes `first_leaf(odd(N))`:
    /// `parent(rising_parent(first_leaf(odd(N)))) == N`.
    ///
    /// # Panics
    /// When no odd link exists on the way up, i.e. on the root's even spine.
    #[inline]
    pub fn rising_parent(self) -> Node {
        let mut node = self;
        while !node.is_odd_child() {
            node = node.parent();
        }
        node
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeSet, HashMap};

    fn node(q: usize, r: u32) -> Node {
        Node::new(q, r)
    }

    #[test]
    fn six_element_tree() {
        let n = 6;
        assert_eq!(node(0, 0).len(n).unwrap(), 6);
        assert_eq!(node(1, 1).len(n).unwrap(), 3);
        assert_eq!(node(2, 2).len(n).unwrap(), 1);
        assert_eq!(node(0, 1).len(n).unwrap(), 3);
        assert!(node(2, 2).is_leaf(n).unwrap());
        assert!(!node(0, 1).is_leaf(n).unwrap());
        assert!(node(0, 0).is_leaf(1).unwrap());
        assert_eq!(
            node(6, 0).len(n),
            Err(TftError::InvalidNode { q: 6, r: 0, n: 6 })
        );

        assert_eq!(node(0, 0).even(), node(0, 1));
        assert_eq!(node(0, 1).odd(), node(2, 2));
        assert_eq!(node(1, 1).odd(), node(3, 2));
        assert_eq!(node(2, 2).parent(), node(0, 1));
        assert_eq!(node(1, 1).parent(), node(0, 0));

        assert_eq!(node(0, 0).first_leaf(n), node(0, 3));
        assert_eq!(node(1, 1).first_leaf(n), node(1, 3));
        assert_eq!(node(2, 2).first_leaf(n), node(2, 2));

        assert_eq!(node(2, 2).rising_parent(), node(2, 2));
        assert_eq!(node(1, 3).rising_parent(), node(1, 1));
        assert_eq!(node(1, 1).parent(), node(0, 0));
    }

    #[test]
    #[should_panic]
    fn root_has_no_parent() {
        Node::ROOT.parent();
    }

    #[test]
    #[should_panic]
    fn rising_parent_on_leftmost_spine() {
        Node::ROOT.first_leaf(6).rising_parent();
    }

    /// All nodes reachable from the root, by explicit recursion.
    fn reachable(n: usize) -> Vec<Node> {
        fn walk(s: Node, n: usize, out: &mut Vec<Node>) {
            out.push(s);
            if s.span(n) > 1 {
                walk(s.even(), n, out);
                walk(s.odd(), n, out);
            }
        }
        let mut out = Vec::new();
        walk(Node::ROOT, n, &mut out);
        out
    }

    #[test]
    fn structural_properties() {
        for n in 1..=256usize {
            let nodes = reachable(n);
            let mut leaves = BTreeSet::new();
            for &s in &nodes {
                assert!(s.q < 1 << s.r || s.is_root());
                assert!((1usize << s.r) < 2 * n);
                let len = s.len(n).unwrap();
                assert!(len >= 1);
                if len == 1 {
                    leaves.insert(s.q);
                    continue;
                }
                let (e, o) = (s.even(), s.odd());
                assert_eq!(e.len(n).unwrap(), len.div_ceil(2));
                assert_eq!(o.len(n).unwrap(), len / 2);
                assert_eq!(e.parent(), s);
                assert_eq!(o.parent(), s);
                assert!(!e.is_odd_child() && o.is_odd_child());
                // children partition the parent's elements by local parity
                for i in 0..len {
                    let child = if i % 2 == 0 { e } else { o };
                    assert_eq!(child.index(i / 2), s.index(i));
                }
                assert_eq!(o.first_leaf(n).rising_parent().parent(), s);
            }
            assert_eq!(leaves.len(), n, "n = {n}");
            assert_eq!(leaves, (0..n).collect());
        }
    }

    #[test]
    fn forward_walk_visits_leaves_once_internal_twice() {
        // Replays the node-to-node moves of the forward transform loop.
        for n in 1..=256usize {
            let mut seen: HashMap<Node, usize> = HashMap::new();
            let mut s = Node::ROOT.first_leaf(n);
            let mut prev: Option<Node> = None;
            loop {
                *seen.entry(s).or_default() += 1;
                if s.single(n) || prev == Some(s.odd()) {
                    if s.is_root() {
                        break;
                    }
                    prev = Some(s);
                    s = s.parent();
                } else {
                    assert_eq!(prev, Some(s.even()));
                    prev = Some(s);
                    s = s.odd().first_leaf(n);
                }
            }
            let nodes = reachable(n);
            assert_eq!(seen.len(), nodes.len());
            for s in nodes {
                let expect = if s.span(n) == 1 { 1 } else { 2 };
                assert_eq!(seen[&s], expect, "n = {n}, node {s:?}");
            }
        }
    }
}
