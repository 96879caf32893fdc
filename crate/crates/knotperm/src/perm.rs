//! Permutations in one-line notation with the statistics used by the
//! cycle-diagram machinery: cycle structure, inversions, total displacement,
//! and the Diaconis-Graham gap.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Errors raised while building or parsing a permutation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    /// Input text is not a sequence of positive integers.
    #[error("malformed permutation input: {0}")]
    MalformedInput(String),
    /// The values are not a bijection on {{1..n}}.
    #[error("not a bijection: {0}")]
    NotABijection(String),
}

/// A permutation of `{1..n}` stored as its sequence of images.
///
/// `images[i - 1]` is the image of `i`; both positions and values are
/// 1-based, matching the usual one-line notation `σ(1) σ(2) ... σ(n)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from 1-based images, checking the bijection
    /// property.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        if images.is_empty() {
            return Err(PermError::MalformedInput("empty permutation".into()));
        }
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v < 1 || v > n {
                return Err(PermError::NotABijection(format!(
                    "value {v} out of range 1..={n}"
                )));
            }
            if seen[v] {
                return Err(PermError::NotABijection(format!("duplicate value {v}")));
            }
            seen[v] = true;
        }
        Ok(Self { images })
    }

    /// Builds a permutation from images already known to be a bijection.
    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Self { images }
    }

    /// The identity permutation on `{1..n}`.
    pub fn identity(n: usize) -> Self {
        Self {
            images: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based index `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// The full image sequence (1-based values, position `i - 1` holds `σ(i)`).
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    /// True when no index is fixed.
    pub fn is_derangement(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| v != k + 1)
    }

    /// Indices with `σ(i) = i`, ascending.
    pub fn fixed_points(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(k, &v)| v == k + 1)
            .map(|(k, _)| k + 1)
            .collect()
    }

    /// True when the permutation is a single cycle through all of `{1..n}`.
    pub fn is_single_cycle(&self) -> bool {
        let n = self.n();
        let mut seen = 0usize;
        let mut at = 1usize;
        loop {
            seen += 1;
            at = self.image(at);
            if at == 1 {
                break;
            }
        }
        seen == n
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (k, &v) in self.images.iter().enumerate() {
            inv[v - 1] = k + 1;
        }
        Self { images: inv }
    }

    /// Composition `self ∘ other`: first apply `other`, then `self`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.n(), other.n(), "composition needs equal sizes");
        let images = (1..=self.n()).map(|i| self.image(other.image(i))).collect();
        Self { images }
    }

    /// Cycle decomposition in canonical order: each cycle starts at its
    /// minimum, cycles sorted by minimum, fixed points included.
    pub fn cycle_decomposition(&self) -> CycleDecomposition {
        let n = self.n();
        let mut visited = vec![false; n + 1];
        let mut cycles = Vec::new();
        for start in 1..=n {
            if visited[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut at = start;
            while !visited[at] {
                visited[at] = true;
                cycle.push(at);
                at = self.image(at);
            }
            cycles.push(cycle);
        }
        CycleDecomposition { cycles }
    }

    /// Number of cycles, fixed points included; no allocation of the
    /// decomposition itself.
    pub fn cycle_count(&self) -> usize {
        let n = self.n();
        let mut visited = vec![false; n + 1];
        let mut count = 0;
        for start in 1..=n {
            if visited[start] {
                continue;
            }
            count += 1;
            let mut at = start;
            while !visited[at] {
                visited[at] = true;
                at = self.image(at);
            }
        }
        count
    }

    /// Number of pairs `i < j` with `σ(i) > σ(j)`.
    pub fn inversions(&self) -> usize {
        let n = self.n();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `Σ |σ(i) - i|`; always even.
    pub fn total_displacement(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .map(|(k, &v)| v.abs_diff(k + 1))
            .sum()
    }

    /// Slack in the Diaconis-Graham inequality:
    /// `total_displacement - (inversions + n - cycles)`; always `≥ 0`.
    pub fn dg_gap(&self) -> usize {
        let lower = self.inversions() + self.n() - self.cycle_decomposition().len();
        self.total_displacement() - lower
    }

    /// Compact digit form (`"246315"`) when `n ≤ 9`, comma form otherwise.
    pub fn compact(&self) -> String {
        if self.n() <= 9 {
            self.images.iter().map(|v| v.to_string()).collect()
        } else {
            self.to_string()
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Accepts comma- or whitespace-separated images (`"4,6,7,5,1,3,2,9,8"`)
    /// and, for a single run of digits, the compact form `"467513298"`
    /// (only meaningful for `n ≤ 9`; longer inputs must be delimited).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(PermError::MalformedInput("empty permutation".into()));
        }
        let delimited: Vec<&str> = trimmed
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect();
        let images: Vec<usize> = if delimited.len() > 1 {
            delimited
                .iter()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| PermError::MalformedInput(format!("bad token {t:?}")))
                })
                .collect::<Result<_, _>>()?
        } else if trimmed.chars().all(|c| c.is_ascii_digit()) {
            if trimmed.len() == 1 {
                vec![trimmed.parse().unwrap()]
            } else {
                // Compact digit form: one image per digit.
                trimmed
                    .chars()
                    .map(|c| c.to_digit(10).unwrap() as usize)
                    .collect()
            }
        } else {
            return Err(PermError::MalformedInput(format!(
                "bad token {trimmed:?}"
            )));
        };
        Self::from_images(images)
    }
}

/// Disjoint cycles of a permutation, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDecomposition {
    cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    /// Number of cycles, fixed points included.
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// Cycles of length at least two, in canonical order.
    pub fn nontrivial(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.cycles.iter().filter(|c| c.len() >= 2)
    }

    /// Rebuilds the permutation the decomposition came from.
    pub fn to_permutation(&self) -> Permutation {
        let n: usize = self.cycles.iter().map(|c| c.len()).sum();
        let mut images = vec![0; n];
        for cycle in &self.cycles {
            for (k, &i) in cycle.iter().enumerate() {
                images[i - 1] = cycle[(k + 1) % cycle.len()];
            }
        }
        Permutation::from_images_unchecked(images)
    }
}

impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in &self.cycles {
            f.write_str("(")?;
            for (k, i) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{i}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn parses_comma_form() {
        assert_eq!(p("4,6,7,5,1,3,2,9,8").images(), &[4, 6, 7, 5, 1, 3, 2, 9, 8]);
    }

    #[test]
    fn parses_singleton() {
        assert_eq!(p("1").images(), &[1]);
    }

    #[test]
    fn parses_compact_digit_form() {
        assert_eq!(p("467513298"), p("4,6,7,5,1,3,2,9,8"));
        assert_eq!(p("21").images(), &[2, 1]);
    }

    #[test]
    fn parses_whitespace_form() {
        assert_eq!(p("3 4 1 2").images(), &[3, 4, 1, 2]);
    }

    #[test]
    fn rejects_duplicates() {
        assert!(matches!(
            "3,3,1".parse::<Permutation>(),
            Err(PermError::NotABijection(_))
        ));
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(
            "1,x,3".parse::<Permutation>(),
            Err(PermError::MalformedInput(_))
        ));
        assert!(matches!(
            "".parse::<Permutation>(),
            Err(PermError::MalformedInput(_))
        ));
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(matches!(
            "1,2,5".parse::<Permutation>(),
            Err(PermError::NotABijection(_))
        ));
    }

    #[test]
    fn cycle_decomposition_canonical_order() {
        assert_eq!(
            p("467513298").cycle_decomposition().to_string(),
            "(1 4 5)(2 6 3 7)(8 9)"
        );
        assert_eq!(p("1,2,3").cycle_decomposition().to_string(), "(1)(2)(3)");
        assert_eq!(
            p("2,4,6,3,1,5").cycle_decomposition().to_string(),
            "(1 2 4 3 6 5)"
        );
    }

    #[test]
    fn decomposition_recomposes() {
        for s in ["467513298", "21", "1,2,3", "732541698", "2,4,6,3,1,5"] {
            let q = p(s);
            assert_eq!(q.cycle_decomposition().to_permutation(), q);
        }
    }

    #[test]
    fn derangement_detection() {
        assert!(p("21").is_derangement());
        assert!(!p("1,2").is_derangement());
        assert!(p("732541698").is_derangement());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(p("3,4,1,2").inverse(), p("3,4,1,2"));
        assert_eq!(p("2,4,6,3,1,5").inverse(), p("5,1,4,2,6,3"));
        assert_eq!(p("2,3,4,1").inverse(), p("4,1,2,3"));
    }

    #[test]
    fn inversion_counts() {
        assert_eq!(p("3,4,1,2").inversions(), 4);
        assert_eq!(p("2,3,4,1").inversions(), 3);
        assert_eq!(p("1,2,3").inversions(), 0);
    }

    #[test]
    fn displacement_and_gap() {
        assert_eq!(p("3,4,1,2").total_displacement(), 8);
        assert_eq!(p("3,4,1,2").dg_gap(), 2);
        assert_eq!(p("3,4,1,2").cycle_count(), 2);
        assert_eq!(p("732541698").cycle_count(), 4);
        assert_eq!(Permutation::identity(5).cycle_count(), 5);
        assert_eq!(p("2,3,4,1").total_displacement(), 6);
        assert_eq!(p("2,3,4,1").dg_gap(), 0);
        assert_eq!(p("1,2,3").dg_gap(), 0);
    }

    #[test]
    fn single_cycle_detection() {
        assert!(p("2,4,6,3,1,5").is_single_cycle());
        assert!(p("21").is_single_cycle());
        assert!(!p("3,4,1,2").is_single_cycle());
        assert!(!p("1,2").is_single_cycle());
    }

    #[test]
    fn display_round_trip() {
        let q = p("467513298");
        assert_eq!(q.to_string(), "4,6,7,5,1,3,2,9,8");
        assert_eq!(q.to_string().parse::<Permutation>().unwrap(), q);
        assert_eq!(q.compact(), "467513298");
    }
}
