//! Deciding whether a permutation's cycle diagram is an unknot or unlink.
//!
//! A kink is an index moved by exactly one: collapsing it is a Reidemeister I
//! move on the diagram. A single cycle describes an unknot exactly when
//! repeated collapses reach the transposition `[2, 1]`; the collapse log then
//! replays backwards into a signed-tree witness. A permutation describes an
//! unlink exactly when distinct cycles never cross and every cycle is
//! unknotted on its own.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::diagram::crossings;
use crate::perm::Permutation;
use crate::tree::{Sign, SignedTree};

/// Errors raised by the deciders and their supporting moves.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    /// `decide_unknot` needs a permutation that is a single cycle.
    #[error("permutation is not a single cycle on all of 1..={0}")]
    NotACycle(usize),
    /// `is_unlinked` with fixed points excluded rejects them up front.
    #[error("permutation has a fixed point at {0}")]
    HasFixedPoint(usize),
    /// Collapse was asked at an index that is not a kink.
    #[error("index {0} is not a kink")]
    NotAKink(usize),
    /// Collapse below length 3 would leave no permutation to return.
    #[error("cannot collapse a permutation of length {0}; need at least 3")]
    TooSmall(usize),
    /// Relabelling needs a support set closed under the permutation.
    #[error("support set is not invariant: {0} maps outside it")]
    SupportNotInvariant(usize),
    /// Replaying a collapse log produced an out-of-range slot; cannot fire.
    #[error("internal error rebuilding witness: {0}")]
    Internal(String),
}

/// A kink: index `i` with `|σ(i) − i| = 1`, signed by direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Kink {
    pub index: usize,
    pub sign: Sign,
}

/// All kinks of `p` in ascending index order. `σ(i) = i + 1` is positive,
/// `σ(i) = i − 1` negative.
pub fn find_kinks(p: &Permutation) -> Vec<Kink> {
    (1..=p.n())
        .filter_map(|i| {
            let s = p.image(i);
            if s == i + 1 {
                Some(Kink {
                    index: i,
                    sign: Sign::Plus,
                })
            } else if i > 1 && s == i - 1 {
                Some(Kink {
                    index: i,
                    sign: Sign::Minus,
                })
            } else {
                None
            }
        })
        .collect()
}

/// Removes the kink `k`, shrinking length by one and renumbering. A
/// positive kink at `i` deletes position `i` (value `i + 1`); a negative
/// kink at `j` deletes position `j` (value `j − 1`). The remaining values
/// close the gap, and the diagram keeps its link type.
pub fn collapse_kink(p: &Permutation, k: Kink) -> Result<Permutation, DecideError> {
    let n = p.n();
    if n < 3 {
        return Err(DecideError::TooSmall(n));
    }
    let index = k.index;
    if index < 1 || index > n {
        return Err(DecideError::NotAKink(index));
    }
    let s = p.image(index);
    let expected = match k.sign {
        Sign::Plus => index + 1,
        Sign::Minus => index - 1,
    };
    if s != expected {
        return Err(DecideError::NotAKink(index));
    }
    // Remove the kinked index from its cycle: its predecessor routes
    // straight to σ(index), and the remaining labels close the gap.
    let mut images = Vec::with_capacity(n - 1);
    for i in 1..=n {
        if i == index {
            continue;
        }
        let mut v = if p.image(i) == index { s } else { p.image(i) };
        debug_assert_ne!(v, index);
        if v > index {
            v -= 1;
        }
        images.push(v);
    }
    Ok(Permutation::from_images_unchecked(images))
}

/// Verdict of the unknot decider.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CycleVerdict {
    /// The cycle is unknotted; `tree` is the canonical signed-tree witness.
    Unknot { tree: SignedTree },
    /// The cycle is a nontrivial knot.
    Knotted,
}

impl CycleVerdict {
    pub fn is_unknot(&self) -> bool {
        matches!(self, CycleVerdict::Unknot { .. })
    }
}

/// Decides whether the single cycle `p` diagrams an unknot. Repeatedly
/// collapses the smallest kink; reaching `[2, 1]` proves the unknot and the
/// collapse log replays in reverse into a canonical signed-tree witness. A
/// kink-free diagram of length at least 3 is knotted.
pub fn decide_unknot(p: &Permutation) -> Result<CycleVerdict, DecideError> {
    if p.n() < 2 || !p.is_single_cycle() {
        return Err(DecideError::NotACycle(p.n()));
    }
    let mut current = p.clone();
    let mut log: Vec<Kink> = Vec::new();
    loop {
        if current.n() == 2 {
            let tree = rebuild_witness(&log)?;
            return Ok(CycleVerdict::Unknot {
                tree: tree.canonical_form(),
            });
        }
        let kinks = find_kinks(&current);
        match kinks.first() {
            None => return Ok(CycleVerdict::Knotted),
            Some(&k) => {
                log.push(k);
                current = collapse_kink(&current, k)?;
            }
        }
    }
}

/// Witness-free unknot test used by the counting loops; same collapse
/// sequence as `decide_unknot` without the tree bookkeeping.
pub(crate) fn is_unknotted_cycle(p: &Permutation) -> bool {
    debug_assert!(p.is_single_cycle());
    let mut current = p.clone();
    loop {
        if current.n() == 2 {
            return true;
        }
        match find_kinks(&current).first() {
            None => return false,
            Some(&k) => current = collapse_kink(&current, k).expect("kink just found"),
        }
    }
}

/// Witness-free unlink test used by the counting loops. Fixed points are
/// ignored: they never cross anything and are trivially unknotted, so they
/// do not affect the verdict (only the component count, which the caller
/// tracks separately).
pub(crate) fn is_unlinked_quick(p: &Permutation) -> bool {
    let n = p.n();
    // Component id per moved index.
    let mut comp = vec![usize::MAX; n + 1];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for i in 1..=n {
        if comp[i] != usize::MAX || p.image(i) == i {
            continue;
        }
        let id = cycles.len();
        let mut cycle = Vec::new();
        let mut at = i;
        while comp[at] == usize::MAX {
            comp[at] = id;
            cycle.push(at);
            at = p.image(at);
        }
        cycles.push(cycle);
    }
    // Any crossing between distinct components links them.
    for i in 1..=n {
        let si = p.image(i);
        if si == i {
            continue;
        }
        let lo = i.min(si);
        let hi = i.max(si);
        for j in lo + 1..hi {
            let sj = p.image(j);
            // j lies strictly inside i's span, so a fixed point j can
            // satisfy neither inequality.
            let crosses = if i < si { sj > si } else { sj < si };
            if crosses && comp[j] != comp[i] {
                return false;
            }
        }
    }
    // Each component must be unknotted on its own; every cycle of length
    // at most 4 already is, so only longer ones need the collapse test.
    for cycle in &cycles {
        if cycle.len() <= 4 {
            continue;
        }
        let dense = relabel_to_dense(p, cycle).expect("cycle is invariant");
        if !is_unknotted_cycle(&dense) {
            return false;
        }
    }
    true
}

/// Replays a collapse log backwards as slot insertions: undoing a positive
/// collapse at `i` is a positive insertion at slot `i`, undoing a negative
/// collapse at `i` is a negative insertion at slot `i − 1`.
fn rebuild_witness(log: &[Kink]) -> Result<SignedTree, DecideError> {
    let mut tree = SignedTree::root_only();
    for k in log.iter().rev() {
        let slot = match k.sign {
            Sign::Plus => k.index,
            Sign::Minus => k.index - 1,
        };
        tree = tree
            .insert_at_slot(slot, k.sign)
            .map_err(|e| DecideError::Internal(e.to_string()))?;
    }
    Ok(tree)
}

/// Why a permutation fails to be an unlink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinkedWitness {
    /// Two distinct cycles whose strands cross; `pair` is one crossing's
    /// `(horizontal, vertical)` index pair.
    CrossingPair {
        cycle_a: Vec<usize>,
        cycle_b: Vec<usize>,
        pair: (usize, usize),
    },
    /// A single cycle that is knotted on its own.
    KnottedComponent { cycle: Vec<usize> },
}

/// Verdict of the unlink decider.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinkVerdict {
    /// Every component is unknotted and no two components cross.
    Unlink { components: usize },
    Linked { witness: LinkedWitness },
}

impl LinkVerdict {
    pub fn is_unlink(&self) -> bool {
        matches!(self, LinkVerdict::Unlink { .. })
    }
}

/// Decides whether `p` diagrams an unlink. With `count_fixed_points` set,
/// fixed points are admitted and counted as unknotted components; otherwise
/// any fixed point is an error. Crossing-freeness between distinct cycles is
/// checked before the per-cycle unknot test, so a crossing-pair witness wins
/// when both defects are present.
pub fn is_unlinked(p: &Permutation, count_fixed_points: bool) -> Result<LinkVerdict, DecideError> {
    if !count_fixed_points {
        if let Some(&i) = p.fixed_points().first() {
            return Err(DecideError::HasFixedPoint(i));
        }
    }
    let decomp = p.cycle_decomposition();
    let nontrivial: Vec<&Vec<usize>> = decomp.nontrivial().collect();

    // Distinct cycles must not cross anywhere.
    let mut component: BTreeMap<usize, usize> = BTreeMap::new();
    for (c, cycle) in nontrivial.iter().enumerate() {
        for &i in cycle.iter() {
            component.insert(i, c);
        }
    }
    for crossing in crossings(p) {
        let a = component[&crossing.horizontal];
        let b = component[&crossing.vertical];
        if a != b {
            let (a, b) = (a.min(b), a.max(b));
            return Ok(LinkVerdict::Linked {
                witness: LinkedWitness::CrossingPair {
                    cycle_a: nontrivial[a].clone(),
                    cycle_b: nontrivial[b].clone(),
                    pair: crossing.pair(),
                },
            });
        }
    }

    // Each cycle must be unknotted in isolation.
    for cycle in &nontrivial {
        let dense = relabel_to_dense(p, cycle)?;
        if decide_unknot(&dense)? == CycleVerdict::Knotted {
            return Ok(LinkVerdict::Linked {
                witness: LinkedWitness::KnottedComponent {
                    cycle: (*cycle).clone(),
                },
            });
        }
    }

    let components = if count_fixed_points {
        decomp.len()
    } else {
        nontrivial.len()
    };
    Ok(LinkVerdict::Unlink { components })
}

/// Restricts `p` to `support` and relabels order-isomorphically onto
/// `1..=support.len()`. The support must be closed under `p`.
pub fn relabel_to_dense(p: &Permutation, support: &[usize]) -> Result<Permutation, DecideError> {
    let mut sorted = support.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let rank: BTreeMap<usize, usize> = sorted
        .iter()
        .enumerate()
        .map(|(r, &v)| (v, r + 1))
        .collect();
    let mut images = Vec::with_capacity(sorted.len());
    for &v in &sorted {
        let target = p.image(v);
        match rank.get(&target) {
            Some(&r) => images.push(r),
            None => return Err(DecideError::SupportNotInvariant(v)),
        }
    }
    Ok(Permutation::from_images_unchecked(images))
}
