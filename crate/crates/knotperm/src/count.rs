//! Exhaustive enumeration: cycles, derangements, permutations, and the
//! counts of unknotted and unlinked diagrams among them.
//!
//! Enumeration sizes are factorial, so every entry point is guarded by
//! [`Caps`]. Counting of unknotted cycles fans out over work chunks with
//! rayon and runs in whatever thread pool the caller installs.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::decide::is_unlinked_quick;
use crate::decide::is_unknotted_cycle;
use crate::perm::Permutation;
use crate::series::schroder_numbers;

/// Guard rails for the factorial enumerations. The default values keep every
/// run comfortably under a couple of minutes on one core; `KNOTPERM_MAX_N`
/// in the environment overrides all three at once.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest `n` for enumerating the `(n-1)!` cycles.
    pub max_cycle_n: usize,
    /// Largest `n` for enumerating derangements.
    pub max_derangement_n: usize,
    /// Largest `n` for enumerating all `n!` permutations.
    pub max_full_perm_n: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_cycle_n: 11,
            max_derangement_n: 10,
            max_full_perm_n: 8,
        }
    }
}

impl Caps {
    /// One common bound for every enumeration kind.
    pub fn with_all(n: usize) -> Self {
        Caps {
            max_cycle_n: n,
            max_derangement_n: n,
            max_full_perm_n: n,
        }
    }

    /// Defaults, overridden by `KNOTPERM_MAX_N` when it parses as a number.
    pub fn from_env() -> Self {
        match std::env::var("KNOTPERM_MAX_N")
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
        {
            Some(n) => Caps::with_all(n),
            None => Caps::default(),
        }
    }

    fn check(requested: usize, cap: usize) -> Result<(), CountError> {
        if requested > cap {
            Err(CountError::CapExceeded { requested, cap })
        } else {
            Ok(())
        }
    }
}

/// Errors raised by the enumeration entry points.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    /// The requested size exceeds the configured guard.
    #[error("n = {requested} exceeds the enumeration cap {cap}; raise the cap explicitly to proceed")]
    CapExceeded { requested: usize, cap: usize },
}

/// The tree-class count `S_n`: the number of unknotted cycles of length
/// `n + 1`.
pub fn schroder(n: usize) -> BigUint {
    schroder_numbers(n)[n]
        .to_biguint()
        .expect("counts are nonnegative")
}

/// Visits every cycle of length `n` (all of `1..=n` on one orbit), ordered
/// lexicographically by the orbit of `1` written as `1, a_1, ..., a_{n-1}`.
/// Returns the number of cycles visited, `(n-1)!`.
pub fn enumerate_cycles(
    n: usize,
    caps: &Caps,
    mut visit: impl FnMut(&Permutation),
) -> Result<u64, CountError> {
    Caps::check(n, caps.max_cycle_n)?;
    if n < 2 {
        return Ok(0);
    }
    let mut word = Vec::with_capacity(n);
    word.push(1);
    let mut used = vec![false; n + 1];
    used[1] = true;
    let mut visited = 0u64;
    cycle_tail(n, &mut word, &mut used, &mut |word| {
        visited += 1;
        visit(&cycle_word_to_permutation(word))
    });
    Ok(visited)
}

fn cycle_tail(
    n: usize,
    word: &mut Vec<usize>,
    used: &mut Vec<bool>,
    leaf: &mut impl FnMut(&[usize]),
) {
    if word.len() == n {
        leaf(word);
        return;
    }
    for v in 2..=n {
        if !used[v] {
            used[v] = true;
            word.push(v);
            cycle_tail(n, word, used, leaf);
            word.pop();
            used[v] = false;
        }
    }
}

fn cycle_word_to_permutation(word: &[usize]) -> Permutation {
    let n = word.len();
    let mut images = vec![0usize; n];
    for k in 0..n {
        images[word[k] - 1] = word[(k + 1) % n];
    }
    Permutation::from_images_unchecked(images)
}

/// Visits every derangement of `[n]` in lexicographic one-line order.
/// Returns the number visited.
pub fn enumerate_derangements(
    n: usize,
    caps: &Caps,
    mut visit: impl FnMut(&Permutation),
) -> Result<u64, CountError> {
    Caps::check(n, caps.max_derangement_n)?;
    let mut images = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    let mut visited = 0u64;
    fill_positions(n, true, &mut images, &mut used, &mut |p| {
        visited += 1;
        visit(p)
    });
    Ok(visited)
}

/// Visits every permutation of `[n]` in lexicographic one-line order.
/// Returns the number visited, `n!`.
pub fn enumerate_permutations(
    n: usize,
    caps: &Caps,
    mut visit: impl FnMut(&Permutation),
) -> Result<u64, CountError> {
    Caps::check(n, caps.max_full_perm_n)?;
    let mut images = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    let mut visited = 0u64;
    fill_positions(n, false, &mut images, &mut used, &mut |p| {
        visited += 1;
        visit(p)
    });
    Ok(visited)
}

fn fill_positions(
    n: usize,
    deranged: bool,
    images: &mut Vec<usize>,
    used: &mut Vec<bool>,
    visit: &mut impl FnMut(&Permutation),
) {
    if images.len() == n {
        visit(&Permutation::from_images_unchecked(images.clone()));
        return;
    }
    let position = images.len() + 1;
    for v in 1..=n {
        if used[v] || (deranged && v == position) {
            continue;
        }
        used[v] = true;
        images.push(v);
        fill_positions(n, deranged, images, used, visit);
        images.pop();
        used[v] = false;
    }
}

/// Counts the unknotted cycles of length `n`, in parallel over the first two
/// steps of the orbit of `1`. Runs inside the caller's rayon pool.
pub fn count_unknotted_cycles(n: usize, caps: &Caps) -> Result<BigUint, CountError> {
    Caps::check(n, caps.max_cycle_n)?;
    match n {
        0 | 1 => return Ok(BigUint::zero()),
        2 => return Ok(BigUint::one()),
        _ => {}
    }
    let prefixes: Vec<(usize, usize)> = (2..=n)
        .flat_map(|a| (2..=n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let total: u64 = prefixes
        .par_iter()
        .map(|&(a, b)| {
            let mut word = Vec::with_capacity(n);
            word.extend([1, a, b]);
            let mut used = vec![false; n + 1];
            used[1] = true;
            used[a] = true;
            used[b] = true;
            let mut count = 0u64;
            cycle_tail(n, &mut word, &mut used, &mut |word| {
                if is_unknotted_cycle(&cycle_word_to_permutation(word)) {
                    count += 1;
                }
            });
            count
        })
        .sum();
    Ok(BigUint::from(total))
}

/// One row of unlink counts: the total and its breakdown by component
/// count, `by_components[k]` holding the permutations with exactly `k`
/// components (trailing zeros trimmed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountRow {
    pub n: usize,
    pub total: BigUint,
    pub by_components: Vec<BigUint>,
}

/// Counts the unlinked permutations of `[n]`, stratified by component
/// count. With `include_fixed` unset only derangements are enumerated;
/// with it set all permutations are, and fixed points count as components.
pub fn count_unlinked(
    n: usize,
    include_fixed: bool,
    caps: &Caps,
) -> Result<CountRow, CountError> {
    let mut tally = vec![0u64; n + 2];
    let mut total = 0u64;
    let mut visit = |p: &Permutation| {
        if is_unlinked_quick(p) {
            total += 1;
            tally[p.cycle_count()] += 1;
        }
    };
    if include_fixed {
        enumerate_permutations(n, caps, &mut visit)?;
    } else {
        enumerate_derangements(n, caps, &mut visit)?;
    }
    let mut by_components: Vec<BigUint> = tally.iter().map(|&c| BigUint::from(c)).collect();
    while by_components.last().is_some_and(|c| c.is_zero()) {
        by_components.pop();
    }
    Ok(CountRow {
        n,
        total: BigUint::from(total),
        by_components,
    })
}

/// Rows `1..=max_n` of unlink counts, displayable as a tab-separated table
/// with one column per component count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub rows: Vec<CountRow>,
}

impl CountTable {
    pub fn build(max_n: usize, include_fixed: bool, caps: &Caps) -> Result<Self, CountError> {
        let rows = (1..=max_n)
            .map(|n| count_unlinked(n, include_fixed, caps))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CountTable { rows })
    }

    fn max_components(&self) -> usize {
        self.rows
            .iter()
            .map(|r| r.by_components.len().saturating_sub(1))
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for CountTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kmax = self.max_components();
        write!(f, "n\ttotal")?;
        for k in 1..=kmax {
            write!(f, "\tk={k}")?;
        }
        writeln!(f)?;
        for row in &self.rows {
            write!(f, "{}\t{}", row.n, row.total)?;
            for k in 1..=kmax {
                let zero = BigUint::zero();
                let c = row.by_components.get(k).unwrap_or(&zero);
                write!(f, "\t{c}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// `n!` exactly.
pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).map(BigUint::from).fold(BigUint::one(), |a, b| a * b)
}

/// Catalan number `C_n`.
pub fn catalan(n: usize) -> BigUint {
    // C_0 = 1, C_{k+1} = C_k · 2(2k+1)/(k+2); the division is exact.
    let mut c = BigUint::one();
    for k in 0..n {
        c = c * BigUint::from(2 * (2 * k as u64 + 1)) / BigUint::from(k as u64 + 2);
    }
    c
}

/// Number of derangements of `[n]`, via
/// `D_n = (n-1)(D_{n-1} + D_{n-2})`, `D_0 = 1`, `D_1 = 0`.
pub fn derangement_count(n: usize) -> BigUint {
    let (mut prev2, mut prev1) = (BigUint::one(), BigUint::zero());
    match n {
        0 => return prev2,
        1 => return prev1,
        _ => {}
    }
    for k in 2..=n {
        let next = BigUint::from(k as u64 - 1) * (&prev1 + &prev2);
        prev2 = prev1;
        prev1 = next;
    }
    prev1
}

/// Probability that a uniformly random cycle of length `n` is unknotted:
/// the tree-class count for `n - 1` nodes over `(n-1)!`, reduced. `None`
/// for `n < 2`.
pub fn unknot_probability(n: usize) -> Option<BigRational> {
    if n < 2 {
        return None;
    }
    let numer = schroder_numbers(n - 1)[n - 1].clone();
    let denom = BigInt::from(factorial(n - 1));
    Some(BigRational::new(numer, denom))
}

/// Outcome of comparing the displacement-slack characterization with the
/// unlink decider over every permutation of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DgReport {
    pub n: usize,
    /// Permutations whose total displacement meets its lower bound exactly.
    pub zero_gap: BigUint,
    /// Permutations whose diagram is an unlink (fixed points count).
    pub unlinked: BigUint,
    pub both: BigUint,
    pub only_zero_gap: BigUint,
    pub only_unlinked: BigUint,
    pub example_only_zero_gap: Option<Permutation>,
    pub example_only_unlinked: Option<Permutation>,
}

impl DgReport {
    pub fn sets_coincide(&self) -> bool {
        self.only_zero_gap.is_zero() && self.only_unlinked.is_zero()
    }
}

impl fmt::Display for DgReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={}: zero-gap {}, unlinked {}, both {}",
            self.n, self.zero_gap, self.unlinked, self.both
        )?;
        if self.sets_coincide() {
            write!(f, " -> sets coincide")
        } else {
            write!(
                f,
                " -> differ: only-zero-gap {}, only-unlinked {}",
                self.only_zero_gap, self.only_unlinked
            )?;
            if let Some(p) = &self.example_only_zero_gap {
                write!(f, "; e.g. zero-gap-but-linked {}", p.compact())?;
            }
            if let Some(p) = &self.example_only_unlinked {
                write!(f, "; e.g. unlinked-but-positive-gap {}", p.compact())?;
            }
            Ok(())
        }
    }
}

/// Compares, over all of `[n]!`, the permutations with zero displacement
/// slack against the unlinked ones (fixed points counted as components).
pub fn dg_experiment(n: usize, caps: &Caps) -> Result<DgReport, CountError> {
    let mut report = DgReport {
        n,
        zero_gap: BigUint::zero(),
        unlinked: BigUint::zero(),
        both: BigUint::zero(),
        only_zero_gap: BigUint::zero(),
        only_unlinked: BigUint::zero(),
        example_only_zero_gap: None,
        example_only_unlinked: None,
    };
    let one = BigUint::one();
    enumerate_permutations(n, caps, |p| {
        let zero_gap = p.dg_gap() == 0;
        let unlinked = is_unlinked_quick(p);
        if zero_gap {
            report.zero_gap += &one;
        }
        if unlinked {
            report.unlinked += &one;
        }
        match (zero_gap, unlinked) {
            (true, true) => report.both += &one,
            (true, false) => {
                report.only_zero_gap += &one;
                report.example_only_zero_gap.get_or_insert_with(|| p.clone());
            }
            (false, true) => {
                report.only_unlinked += &one;
                report.example_only_unlinked.get_or_insert_with(|| p.clone());
            }
            (false, false) => {}
        }
    })?;
    Ok(report)
}

/// Frozen expected values used as fixtures by the self-checks: every number
/// here is reproduced independently by the enumerators and series in this
/// crate, and the tests fail loudly on any drift.
pub mod tables {
    /// Tree-class counts for `1..=10` nodes, equal to the unknotted-cycle
    /// counts for lengths `2..=11`.
    pub const SCHRODER: [u64; 10] = [1, 2, 6, 22, 90, 394, 1806, 8558, 41586, 206098];

    /// Unlinked derangements of `[n]`, `n = 1..=10`.
    pub const UNLINKED_TOTALS: [u64; 10] = [0, 1, 2, 8, 32, 143, 674, 3316, 16832, 87538];

    /// Unlinked derangements of `[n]` with exactly `k` components:
    /// row `k-1` holds `k`, columns are `n = 1..=10`.
    pub const UNLINKED_BY_COMPONENTS: [[u64; 10]; 5] = [
        [0, 1, 2, 6, 22, 90, 394, 1806, 8558, 41586],
        [0, 0, 0, 2, 10, 48, 238, 1216, 6354, 33760],
        [0, 0, 0, 0, 0, 5, 42, 280, 1752, 10710],
        [0, 0, 0, 0, 0, 0, 0, 14, 168, 1440],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 42],
    ];

    /// Unlinked permutations of `[n]` with fixed points admitted and
    /// counted, `n = 1..=9`.
    pub const UNLINKED_WITH_FIXED: [u64; 9] = [1, 2, 6, 23, 103, 511, 2719, 15205, 88197];

    /// Coefficient of `u^n x^{2n}` in the unlinked-derangement series,
    /// `n = 1..=5`: the Catalan numbers.
    pub const CATALAN_DIAGONAL: [u64; 5] = [1, 2, 5, 14, 42];
}
