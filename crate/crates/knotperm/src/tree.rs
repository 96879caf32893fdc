//! Rooted signed binary trees and their bijection with unknotted cycles.
//!
//! A tree has an unsigned root and zero or more signed nodes, each with
//! optional left/right children. Inserting the nodes one by one into the
//! starting cycle `2,1` (each at its in-order slot, via the shift maps)
//! produces a cycle; rotation-equivalent trees produce the same cycle.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::perm::Permutation;

/// Errors raised by tree parsing and slot-indexed insertion.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("tree syntax error at byte {at}: {msg}")]
    SyntaxError { at: usize, msg: String },
    #[error("slot {slot} out of range 1..={max}")]
    SlotOutOfRange { slot: usize, max: usize },
}

/// Sign carried by every non-root node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Left/right child selector; a path of sides addresses a node or slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Path from the root to a node position (empty path = root).
pub type Path = Vec<Side>;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Node {
    sign: Sign,
    left: Option<Box<Node>>,
    right: Option<Box<Node>>,
}

impl Node {
    fn leaf(sign: Sign) -> Self {
        Node {
            sign,
            left: None,
            right: None,
        }
    }

    fn count(&self) -> usize {
        1 + self.left.as_ref().map_or(0, |n| n.count())
            + self.right.as_ref().map_or(0, |n| n.count())
    }

    fn negate(&mut self) {
        self.sign = self.sign.flip();
        if let Some(l) = self.left.as_mut() {
            l.negate();
        }
        if let Some(r) = self.right.as_mut() {
            r.negate();
        }
    }

    fn write(&self, out: &mut String) {
        out.push(self.sign.as_char());
        out.push('(');
        match &self.left {
            Some(l) => l.write(out),
            None => out.push('.'),
        }
        out.push(' ');
        match &self.right {
            Some(r) => r.write(out),
            None => out.push('.'),
        }
        out.push(')');
    }
}

/// A rooted signed binary tree. The root carries no sign; all other nodes do.
///
/// The text form follows the grammar `root := "(" node " " node ")"`,
/// `node := "." | ("+" | "-") "(" node " " node ")"`, e.g.
/// `(+(+(. .) -(. .)) -(. .))`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedTree {
    left: Option<Box<Node>>,
    right: Option<Box<Node>>,
}

impl SignedTree {
    /// The one-node tree: a bare root, corresponding to the cycle `2,1`.
    pub fn root_only() -> Self {
        SignedTree {
            left: None,
            right: None,
        }
    }

    /// Number of nodes, root included. A tree with `k` nodes has `k + 1`
    /// empty child slots and maps to a cycle of length `k + 1`.
    pub fn node_count(&self) -> usize {
        1 + self.left.as_ref().map_or(0, |n| n.count())
            + self.right.as_ref().map_or(0, |n| n.count())
    }

    pub fn slot_count(&self) -> usize {
        self.node_count() + 1
    }

    /// Flips the sign of every non-root node.
    pub fn negate(&self) -> Self {
        let mut t = self.clone();
        if let Some(l) = t.left.as_mut() {
            l.negate();
        }
        if let Some(r) = t.right.as_mut() {
            r.negate();
        }
        t
    }

    fn child(&self, side: Side) -> &Option<Box<Node>> {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    fn child_mut(&mut self, side: Side) -> &mut Option<Box<Node>> {
        match side {
            Side::Left => &mut self.left,
            Side::Right => &mut self.right,
        }
    }

    /// Sign of the node at `path`; `None` for the root or an absent node.
    pub fn sign_at(&self, path: &[Side]) -> Option<Sign> {
        let (&first, rest) = path.split_first()?;
        let mut node = self.child(first).as_ref()?;
        for &side in rest {
            node = match side {
                Side::Left => node.left.as_ref()?,
                Side::Right => node.right.as_ref()?,
            };
        }
        Some(node.sign)
    }

    /// Empty child slots in in-order traversal order, 1-based by position.
    ///
    /// Each slot is identified by the path where a new node would be
    /// attached. Inserting at the `i`-th slot yields a leaf in relative
    /// position `i`.
    pub fn slots(&self) -> Vec<Path> {
        fn walk(node: &Node, path: &mut Path, out: &mut Vec<Path>) {
            path.push(Side::Left);
            match &node.left {
                Some(l) => walk(l, path, out),
                None => out.push(path.clone()),
            }
            path.pop();
            path.push(Side::Right);
            match &node.right {
                Some(r) => walk(r, path, out),
                None => out.push(path.clone()),
            }
            path.pop();
        }
        let mut out = Vec::with_capacity(self.slot_count());
        let mut path = Vec::new();
        path.push(Side::Left);
        match &self.left {
            Some(l) => walk(l, &mut path, &mut out),
            None => out.push(path.clone()),
        }
        path.pop();
        path.push(Side::Right);
        match &self.right {
            Some(r) => walk(r, &mut path, &mut out),
            None => out.push(path.clone()),
        }
        out
    }

    /// 1-based in-order index of the empty slot at `path`, if it is one.
    pub fn slot_index_of(&self, path: &[Side]) -> Option<usize> {
        self.slots().iter().position(|s| s == path).map(|k| k + 1)
    }

    /// Attaches a new childless node of the given sign at the `slot`-th
    /// empty slot (1-based, in-order).
    pub fn insert_at_slot(&self, slot: usize, sign: Sign) -> Result<Self, TreeError> {
        let slots = self.slots();
        if slot < 1 || slot > slots.len() {
            return Err(TreeError::SlotOutOfRange {
                slot,
                max: slots.len(),
            });
        }
        let mut t = self.clone();
        t.attach_at_path(&slots[slot - 1], sign);
        Ok(t)
    }

    /// Attaches a childless node at an explicit empty-slot path.
    pub(crate) fn attach_at_path(&mut self, path: &[Side], sign: Sign) {
        let (&first, rest) = path.split_first().expect("attach path cannot be empty");
        if rest.is_empty() {
            let slot = self.child_mut(first);
            debug_assert!(slot.is_none(), "slot already occupied");
            *slot = Some(Box::new(Node::leaf(sign)));
            return;
        }
        let mut node = self
            .child_mut(first)
            .as_mut()
            .expect("attach path broken at root child");
        for &side in &rest[..rest.len() - 1] {
            node = match side {
                Side::Left => node.left.as_mut(),
                Side::Right => node.right.as_mut(),
            }
            .expect("attach path broken");
        }
        let slot = match rest[rest.len() - 1] {
            Side::Left => &mut node.left,
            Side::Right => &mut node.right,
        };
        debug_assert!(slot.is_none(), "slot already occupied");
        *slot = Some(Box::new(Node::leaf(sign)));
    }

    /// Paths of the non-root nodes in depth-first preorder.
    pub fn preorder_paths(&self) -> Vec<Path> {
        fn walk(node: &Node, path: &mut Path, out: &mut Vec<Path>) {
            out.push(path.clone());
            if let Some(l) = &node.left {
                path.push(Side::Left);
                walk(l, path, out);
                path.pop();
            }
            if let Some(r) = &node.right {
                path.push(Side::Right);
                walk(r, path, out);
                path.pop();
            }
        }
        let mut out = Vec::new();
        let mut path = Vec::new();
        if let Some(l) = &self.left {
            path.push(Side::Left);
            walk(l, &mut path, &mut out);
            path.pop();
        }
        if let Some(r) = &self.right {
            path.push(Side::Right);
            walk(r, &mut path, &mut out);
            path.pop();
        }
        out
    }

    /// The cycle this tree maps to, processing nodes in preorder.
    pub fn to_cycle(&self) -> Permutation {
        self.to_cycle_trace().pop().expect("trace is never empty")
    }

    /// Every intermediate cycle of the construction, starting at `2,1` and
    /// ending at the final cycle. One entry per insertion plus the start.
    pub fn to_cycle_trace(&self) -> Vec<Permutation> {
        let order = self.preorder_paths();
        self.cycle_trace_with_order(&order)
            .expect("preorder always processes parents before children")
    }

    /// Runs the construction processing nodes in the given order, which must
    /// list every non-root node exactly once, parents before children.
    /// Returns the intermediate cycles; the last entry is the result.
    pub fn cycle_trace_with_order(&self, order: &[Path]) -> Option<Vec<Permutation>> {
        let mut partial = SignedTree::root_only();
        let mut cycle = Permutation::from_images_unchecked(vec![2, 1]);
        let mut trace = Vec::with_capacity(order.len() + 1);
        trace.push(cycle.clone());
        for path in order {
            let sign = self.sign_at(path)?;
            let slot = partial.slot_index_of(path)?;
            cycle = cycle_insert(&cycle, slot, sign).expect("slot index is in range");
            partial.attach_at_path(path, sign);
            trace.push(cycle.clone());
        }
        if partial.node_count() != self.node_count() {
            return None;
        }
        Some(trace)
    }

    /// All trees reachable by a single allowed rotation, deduplicated and
    /// sorted by text form.
    ///
    /// A rotation at a signed node needs the rising child to carry the same
    /// sign as its parent. A rotation at the root is always allowed: the
    /// rising child loses its sign and becomes the root, while the old root
    /// descends and takes over that sign.
    pub fn rotations(&self) -> Vec<SignedTree> {
        let mut out = BTreeSet::new();

        // Root rotations.
        if let Some(u) = &self.left {
            // Clockwise: left child rises.
            let u = u.clone();
            let descended = Node {
                sign: u.sign,
                left: u.right.clone(),
                right: self.right.clone(),
            };
            out.insert(SignedTree {
                left: u.left.clone(),
                right: Some(Box::new(descended)),
            });
        }
        if let Some(w) = &self.right {
            // Counterclockwise: right child rises.
            let w = w.clone();
            let descended = Node {
                sign: w.sign,
                left: self.left.clone(),
                right: w.left.clone(),
            };
            out.insert(SignedTree {
                left: Some(Box::new(descended)),
                right: w.right.clone(),
            });
        }

        // Rotations at signed nodes: rewrite each node position in turn.
        fn rewrite(node: &Node, out_nodes: &mut Vec<Node>) {
            if let Some(u) = &node.left {
                if u.sign == node.sign {
                    out_nodes.push(Node {
                        sign: u.sign,
                        left: u.left.clone(),
                        right: Some(Box::new(Node {
                            sign: node.sign,
                            left: u.right.clone(),
                            right: node.right.clone(),
                        })),
                    });
                }
            }
            if let Some(w) = &node.right {
                if w.sign == node.sign {
                    out_nodes.push(Node {
                        sign: w.sign,
                        left: Some(Box::new(Node {
                            sign: node.sign,
                            left: node.left.clone(),
                            right: w.left.clone(),
                        })),
                        right: w.right.clone(),
                    });
                }
            }
            if let Some(l) = &node.left {
                let mut inner = Vec::new();
                rewrite(l, &mut inner);
                for repl in inner {
                    let mut copy = node.clone();
                    copy.left = Some(Box::new(repl));
                    out_nodes.push(copy);
                }
            }
            if let Some(r) = &node.right {
                let mut inner = Vec::new();
                rewrite(r, &mut inner);
                for repl in inner {
                    let mut copy = node.clone();
                    copy.right = Some(Box::new(repl));
                    out_nodes.push(copy);
                }
            }
        }

        if let Some(l) = &self.left {
            let mut inner = Vec::new();
            rewrite(l, &mut inner);
            for repl in inner {
                out.insert(SignedTree {
                    left: Some(Box::new(repl)),
                    right: self.right.clone(),
                });
            }
        }
        if let Some(r) = &self.right {
            let mut inner = Vec::new();
            rewrite(r, &mut inner);
            for repl in inner {
                out.insert(SignedTree {
                    left: self.left.clone(),
                    right: Some(Box::new(repl)),
                });
            }
        }

        out.remove(self);
        sort_by_text(out.into_iter().collect())
    }

    /// The full rotation-equivalence class, sorted by text form.
    /// Intended for small trees (closure sizes grow quickly past 12 nodes).
    pub fn closure(&self) -> Vec<SignedTree> {
        let mut seen = BTreeSet::new();
        seen.insert(self.clone());
        let mut queue = VecDeque::new();
        queue.push_back(self.clone());
        while let Some(t) = queue.pop_front() {
            for next in t.rotations() {
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        sort_by_text(seen.into_iter().collect())
    }

    /// True when the two trees are connected by rotations.
    pub fn equivalent(&self, other: &SignedTree) -> bool {
        if self.node_count() != other.node_count() {
            return false;
        }
        self.closure().contains(other)
    }

    /// Canonical class representative: the member of the rotation closure
    /// with the lexicographically smallest text form.
    pub fn canonical_form(&self) -> SignedTree {
        self.closure()
            .into_iter()
            .next()
            .expect("closure contains at least the tree itself")
    }

    /// True when no left rotation applies: the root has no right child and
    /// no signed node has a same-signed right child.
    pub fn is_left_normal(&self) -> bool {
        fn node_ok(node: &Node) -> bool {
            if let Some(w) = &node.right {
                if w.sign == node.sign {
                    return false;
                }
            }
            node.left.as_ref().map_or(true, |l| node_ok(l))
                && node.right.as_ref().map_or(true, |r| node_ok(r))
        }
        self.right.is_none() && self.left.as_ref().map_or(true, |l| node_ok(l))
    }

    /// Members of the rotation closure with no applicable left rotation.
    /// A secondary normal form; unique per class (checked in tests).
    pub fn left_normal_forms(&self) -> Vec<SignedTree> {
        self.closure()
            .into_iter()
            .filter(|t| t.is_left_normal())
            .collect()
    }
}

impl fmt::Display for SignedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        out.push('(');
        match &self.left {
            Some(l) => l.write(&mut out),
            None => out.push('.'),
        }
        out.push(' ');
        match &self.right {
            Some(r) => r.write(&mut out),
            None => out.push('.'),
        }
        out.push(')');
        f.write_str(&out)
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    at: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, TreeError> {
        Err(TreeError::SyntaxError {
            at: self.at,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.at < self.bytes.len() && self.bytes[self.at].is_ascii_whitespace() {
            self.at += 1;
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), TreeError> {
        if self.at < self.bytes.len() && self.bytes[self.at] == b {
            self.at += 1;
            Ok(())
        } else {
            self.err(format!("expected {:?}", b as char))
        }
    }

    fn node(&mut self) -> Result<Option<Box<Node>>, TreeError> {
        self.skip_ws();
        match self.bytes.get(self.at) {
            Some(b'.') => {
                self.at += 1;
                Ok(None)
            }
            Some(&c @ (b'+' | b'-')) => {
                self.at += 1;
                let sign = if c == b'+' { Sign::Plus } else { Sign::Minus };
                self.expect(b'(')?;
                let left = self.node()?;
                self.skip_ws();
                let right = self.node()?;
                self.skip_ws();
                self.expect(b')')?;
                Ok(Some(Box::new(Node { sign, left, right })))
            }
            _ => self.err("expected '.', '+' or '-'"),
        }
    }
}

impl FromStr for SignedTree {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parser = Parser {
            bytes: s.as_bytes(),
            at: 0,
        };
        parser.skip_ws();
        parser.expect(b'(')?;
        let left = parser.node()?;
        parser.skip_ws();
        let right = parser.node()?;
        parser.skip_ws();
        parser.expect(b')')?;
        parser.skip_ws();
        if parser.at != s.len() {
            return parser.err("trailing input after tree");
        }
        Ok(SignedTree { left, right })
    }
}

/// Sorts trees by their serialized text form (the canonical class order).
fn sort_by_text(mut trees: Vec<SignedTree>) -> Vec<SignedTree> {
    let mut keyed: Vec<(String, SignedTree)> =
        trees.drain(..).map(|t| (t.to_string(), t)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.into_iter().map(|(_, t)| t).collect()
}

/// The shift map: fixes `1..m-1`, sends `k` to `k + 1` for `k ≥ m`.
/// Satisfies `shift(l, shift(m, k)) = shift(m + 1, shift(l, k))` for `l < m`.
pub fn shift(m: usize, k: usize) -> usize {
    if k < m {
        k
    } else {
        k + 1
    }
}

/// Inserts one node's worth of structure into a cycle at the given slot.
///
/// A positive node in relative position `i` inserts the value `i + 1`
/// before position `i`, shifting old values with `shift(i + 1, ·)`; a
/// negative node inserts the value `i` after position `i`, shifting old
/// values with `shift(i, ·)`.
pub fn cycle_insert(p: &Permutation, slot: usize, sign: Sign) -> Result<Permutation, TreeError> {
    let n = p.n();
    if slot < 1 || slot > n {
        return Err(TreeError::SlotOutOfRange { slot, max: n });
    }
    let mut images: Vec<usize> = Vec::with_capacity(n + 1);
    match sign {
        Sign::Plus => {
            for (pos, &v) in p.images().iter().enumerate() {
                if pos + 1 == slot {
                    images.push(slot + 1);
                }
                images.push(shift(slot + 1, v));
            }
        }
        Sign::Minus => {
            for (pos, &v) in p.images().iter().enumerate() {
                images.push(shift(slot, v));
                if pos + 1 == slot {
                    images.push(slot);
                }
            }
        }
    }
    debug_assert_eq!(images.len(), n + 1);
    Ok(Permutation::from_images_unchecked(images))
}

/// Calls `visit` with every signed tree that has `nodes` nodes (root
/// included), in a fixed deterministic order.
pub fn for_each_tree(nodes: usize, mut visit: impl FnMut(&SignedTree)) {
    assert!(nodes >= 1, "a tree has at least its root");
    fn subtrees(size: usize) -> Vec<Option<Box<Node>>> {
        if size == 0 {
            return vec![None];
        }
        let mut out = Vec::new();
        for left_size in 0..size {
            let lefts = subtrees(left_size);
            let rights = subtrees(size - 1 - left_size);
            for sign in [Sign::Plus, Sign::Minus] {
                for l in &lefts {
                    for r in &rights {
                        out.push(Some(Box::new(Node {
                            sign,
                            left: l.clone(),
                            right: r.clone(),
                        })));
                    }
                }
            }
        }
        out
    }
    let signed = nodes - 1;
    for left_size in 0..=signed {
        let lefts = subtrees(left_size);
        let rights = subtrees(signed - left_size);
        for l in &lefts {
            for r in &rights {
                visit(&SignedTree {
                    left: l.clone(),
                    right: r.clone(),
                });
            }
        }
    }
}

/// One rotation-equivalence class of trees of a fixed size.
pub struct RotationClass {
    pub canonical: SignedTree,
    pub members: Vec<SignedTree>,
}

/// Calls `visit` once per rotation class of trees with `nodes` nodes.
/// Class members are sorted by text form; `canonical` is the smallest.
pub fn for_each_rotation_class(nodes: usize, mut visit: impl FnMut(&RotationClass)) {
    let mut seen: BTreeSet<SignedTree> = BTreeSet::new();
    for_each_tree(nodes, |t| {
        if seen.contains(t) {
            return;
        }
        let members = t.closure();
        for m in &members {
            seen.insert(m.clone());
        }
        let canonical = members[0].clone();
        visit(&RotationClass { canonical, members });
    });
}

/// All rotation classes of trees with `nodes` nodes.
pub fn rotation_classes(nodes: usize) -> Vec<RotationClass> {
    let mut out = Vec::new();
    for_each_rotation_class(nodes, |c| {
        out.push(RotationClass {
            canonical: c.canonical.clone(),
            members: c.members.clone(),
        })
    });
    out
}
