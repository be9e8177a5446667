//! A-bases as complete prefix-free leaf sets of r-rooted n-ary forests.

use std::collections::BTreeSet;
use std::hash::{Hash, Hasher};

use super::word::{Signature, SimpleWord, Word};
use crate::error::{Error, Result};

const EMPTY: usize = usize::MAX;

#[derive(Debug, Clone)]
enum Node {
    Leaf(usize),
    Inner(Vec<usize>),
}

/// Where a simple word sits relative to an A-basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    /// The word is `leaf Γ` for the leaf with this index; `depth` is the
    /// length of the leaf's path, so `Γ` starts there.
    Below { leaf: usize, depth: usize },
    /// The word is a proper initial segment of some leaves.
    Above,
}

/// A complete, prefix-free set of simple words: the leaves of an r-rooted
/// n-ary forest. Leaves are kept in canonical order.
#[derive(Debug, Clone)]
pub struct ABasis {
    sig: Signature,
    leaves: Vec<SimpleWord>,
    nodes: Vec<Node>,
    roots: Vec<usize>,
}

impl PartialEq for ABasis {
    fn eq(&self, other: &Self) -> bool {
        self.sig == other.sig && self.leaves == other.leaves
    }
}

impl Eq for ABasis {}

impl Hash for ABasis {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.sig.hash(state);
        self.leaves.hash(state);
    }
}

impl ABasis {
    /// Builds an A-basis, checking prefix-freeness and completeness.
    pub fn new(sig: Signature, mut leaves: Vec<SimpleWord>) -> Result<Self> {
        leaves.sort();
        let mut nodes: Vec<Node> = Vec::new();
        let mut roots = vec![EMPTY; sig.r()];
        for (index, leaf) in leaves.iter().enumerate() {
            if leaf.gen() >= sig.r() || leaf.path().iter().any(|&a| a as usize >= sig.n()) {
                return Err(Error::TokenRange(leaf.to_string()));
            }
            let mut slot_owner: Option<(usize, usize)> = None;
            let mut current = roots[leaf.gen()];
            for &a in leaf.path() {
                if current == EMPTY {
                    current = nodes.len();
                    nodes.push(Node::Inner(vec![EMPTY; sig.n()]));
                    attach(&mut nodes, &mut roots, slot_owner, leaf.gen(), current);
                }
                match &nodes[current] {
                    Node::Leaf(_) => {
                        return Err(Error::NotABasis(format!(
                            "{} has a proper initial segment in the set",
                            leaf
                        )))
                    }
                    Node::Inner(children) => {
                        slot_owner = Some((current, a as usize));
                        current = children[a as usize];
                    }
                }
            }
            if current != EMPTY {
                return Err(Error::NotABasis(format!(
                    "{} is repeated or an initial segment of another element",
                    leaf
                )));
            }
            let id = nodes.len();
            nodes.push(Node::Leaf(index));
            attach(&mut nodes, &mut roots, slot_owner, leaf.gen(), id);
        }
        let complete = roots.iter().all(|&r| r != EMPTY)
            && nodes.iter().all(|node| match node {
                Node::Leaf(_) => true,
                Node::Inner(cs) => cs.iter().all(|&c| c != EMPTY),
            });
        if !complete {
            return Err(Error::NotABasis("the forest is incomplete".into()));
        }
        Ok(ABasis {
            sig,
            leaves,
            nodes,
            roots,
        })
    }

    /// The free generators `{x_1, ..., x_r}`.
    pub fn roots(sig: Signature) -> Self {
        ABasis::new(sig, sig.roots()).expect("roots form a basis")
    }

    /// The signature.
    pub fn sig(&self) -> Signature {
        self.sig
    }

    /// Leaves in canonical order.
    pub fn leaves(&self) -> &[SimpleWord] {
        &self.leaves
    }

    /// Number of leaves.
    pub fn len(&self) -> usize {
        self.leaves.len()
    }

    /// Always false: an A-basis has at least `r` leaves.
    pub fn is_empty(&self) -> bool {
        self.leaves.is_empty()
    }

    /// Locates `w` relative to the forest.
    pub fn locate(&self, w: &SimpleWord) -> Location {
        let mut current = self.roots[w.gen()];
        for (depth, &a) in w.path().iter().enumerate() {
            match &self.nodes[current] {
                Node::Leaf(leaf) => return Location::Below { leaf: *leaf, depth },
                Node::Inner(cs) => current = cs[a as usize],
            }
        }
        match &self.nodes[current] {
            Node::Leaf(leaf) => Location::Below {
                leaf: *leaf,
                depth: w.depth(),
            },
            Node::Inner(_) => Location::Above,
        }
    }

    /// The leaf above `w` and the remaining path, if `w ∈ X⟨A⟩`.
    pub fn split<'a>(&self, w: &'a SimpleWord) -> Option<(usize, &'a [u8])> {
        match self.locate(w) {
            Location::Below { leaf, depth } => Some((leaf, &w.path()[depth..])),
            Location::Above => None,
        }
    }

    /// True iff `w ∈ X⟨A⟩`.
    pub fn contains_below(&self, w: &SimpleWord) -> bool {
        matches!(self.locate(w), Location::Below { .. })
    }

    /// True iff `w` is a word of `X⟨A⟩`.
    pub fn contains_word_below(&self, w: &Word) -> bool {
        w.as_simple().is_some_and(|s| self.contains_below(s))
    }

    /// Index of `w` among the leaves.
    pub fn index_of(&self, w: &SimpleWord) -> Option<usize> {
        match self.locate(w) {
            Location::Below { leaf, depth } if depth == w.depth() => Some(leaf),
            _ => None,
        }
    }

    /// The least `d` with `wΓ ∈ X⟨A⟩` for every `Γ` of length `d`.
    pub fn depth_to_enter(&self, w: &SimpleWord) -> usize {
        let mut current = self.roots[w.gen()];
        for &a in w.path() {
            match &self.nodes[current] {
                Node::Leaf(_) => return 0,
                Node::Inner(cs) => current = cs[a as usize],
            }
        }
        self.height(current)
    }

    fn height(&self, node: usize) -> usize {
        match &self.nodes[node] {
            Node::Leaf(_) => 0,
            Node::Inner(cs) => 1 + cs.iter().map(|&c| self.height(c)).max().unwrap_or(0),
        }
    }

    /// Replaces `leaf` by its `n` children.
    pub fn simple_expansion(&self, leaf: &SimpleWord) -> Result<ABasis> {
        let index = self
            .index_of(leaf)
            .ok_or_else(|| Error::NotALeaf(leaf.to_string()))?;
        let mut leaves = self.leaves.clone();
        leaves.remove(index);
        leaves.extend((0..self.sig.n()).map(|a| leaf.child(a)));
        ABasis::new(self.sig, leaves)
    }

    /// Replaces the `n` children of `parent` by `parent`.
    pub fn contract(&self, parent: &SimpleWord) -> Result<ABasis> {
        let children: BTreeSet<SimpleWord> = (0..self.sig.n()).map(|a| parent.child(a)).collect();
        if children.iter().any(|c| self.index_of(c).is_none()) {
            return Err(Error::NotALeaf(format!("children of {parent}")));
        }
        let mut leaves: Vec<SimpleWord> = self
            .leaves
            .iter()
            .filter(|l| !children.contains(*l))
            .cloned()
            .collect();
        leaves.push(parent.clone());
        ABasis::new(self.sig, leaves)
    }

    /// Parents whose `n` children are all leaves, in canonical order.
    pub fn contractible(&self) -> Vec<SimpleWord> {
        let mut parents: Vec<SimpleWord> = self
            .leaves
            .iter()
            .filter_map(|l| l.parent())
            .filter(|(p, a)| {
                *a == 0
                    && (0..self.sig.n()).all(|b| self.index_of(&p.child(b)).is_some())
            })
            .map(|(p, _)| p)
            .collect();
        parents.sort();
        parents
    }

    /// True iff every leaf of `self` lies in `other⟨A⟩`.
    pub fn is_expansion_of(&self, other: &ABasis) -> bool {
        self.sig == other.sig && self.leaves.iter().all(|l| other.contains_below(l))
    }

    /// Proper initial segments of the leaves: the inner nodes of the forest.
    pub fn inner_nodes(&self) -> Vec<SimpleWord> {
        let mut out = BTreeSet::new();
        for leaf in &self.leaves {
            let mut w = leaf.clone();
            while let Some((p, _)) = w.parent() {
                out.insert(p.clone());
                w = p;
            }
        }
        out.into_iter().collect()
    }

    /// The `d`-fold expansion obtained by repeatedly expanding the first
    /// leaf in left-to-right order, listed left to right.
    pub fn leftmost_expansion(sig: Signature, roots: &[SimpleWord], d: usize) -> Vec<SimpleWord> {
        let mut leaves: Vec<SimpleWord> = roots.to_vec();
        for _ in 0..d {
            let first = leaves.remove(0);
            for a in (0..sig.n()).rev() {
                leaves.insert(0, first.child(a));
            }
        }
        leaves
    }
}

fn attach(
    nodes: &mut [Node],
    roots: &mut [usize],
    owner: Option<(usize, usize)>,
    gen: usize,
    id: usize,
) {
    match owner {
        None => roots[gen] = id,
        Some((parent, a)) => {
            if let Node::Inner(cs) = &mut nodes[parent] {
                cs[a] = id;
            }
        }
    }
}

/// The minimal expansion of `start` all of whose leaves satisfy `keep`.
///
/// `keep` must be closed under descent and hold at every deep enough
/// descendant; each leaf failing it is expanded.
pub fn minimal_expansion_where<F>(sig: Signature, start: &[SimpleWord], mut keep: F) -> ABasis
where
    F: FnMut(&SimpleWord) -> bool,
{
    let mut out = Vec::new();
    let mut stack: Vec<SimpleWord> = start.iter().rev().cloned().collect();
    while let Some(w) = stack.pop() {
        if keep(&w) {
            out.push(w);
        } else {
            for a in (0..sig.n()).rev() {
                stack.push(w.child(a));
            }
        }
    }
    ABasis::new(sig, out).expect("an expansion of a basis is a basis")
}

/// The unique minimal `Z` with `Z⟨A⟩ = ⋂ Y_i⟨A⟩`.
pub fn minimal_common_expansion(sig: Signature, bases: &[&ABasis]) -> Result<ABasis> {
    for b in bases {
        sig.check(&b.sig())?;
    }
    Ok(minimal_expansion_where(sig, &sig.roots(), |w| {
        bases.iter().all(|b| b.contains_below(w))
    }))
}

/// True iff `words` is a free basis of `V_{n,r}`.
///
/// A set of standard forms is a basis iff the multiset of its simple leaf
/// subterms is an A-basis: descending a contraction to its children is an
/// expansion and contracting basis elements is a contraction, and both
/// preserve being a basis.
pub fn is_basis(sig: &Signature, words: &[Word]) -> bool {
    if words.iter().any(|w| w.check(sig).is_err()) {
        return false;
    }
    let leaves: Vec<SimpleWord> = words
        .iter()
        .flat_map(|w| w.leaves().into_iter().cloned())
        .collect();
    ABasis::new(*sig, leaves).is_ok()
}
