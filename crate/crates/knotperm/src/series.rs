//! Exact power-series counterparts of the enumeration results.
//!
//! Everything here is exact integer arithmetic: polynomials in the
//! component-marking variable `u` with `BigInt` coefficients, collected into
//! series truncated at a fixed `x`-degree. `series_f` counts unlinked
//! derangements and `series_g` unlinked permutations with fixed points
//! admitted as components; both satisfy explicit cubic equations that serve
//! as self-checks.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

/// Errors raised while solving for a series or checking one.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    /// The cubic cannot be continued at this degree; never fires for the
    /// equations shipped here.
    #[error("no power-series root: residual does not vanish at x-degree {0}")]
    NoSeriesRoot(usize),
    /// A computed series fails its own cubic; never fires.
    #[error("series fails its cubic at x-degree {0}")]
    CubicMismatch(usize),
    /// Coefficient extraction met a polynomial not divisible by u; never
    /// fires.
    #[error("coefficient at x-degree {0} is not divisible by u")]
    NotDivisible(usize),
}

/// Dense polynomial in `u` with integer coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UPoly {
    coeffs: Vec<BigInt>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UPoly::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        UPoly::from_coeffs(vec![BigInt::from(c)])
    }

    /// `c · u^k`.
    pub fn monomial(c: i64, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::from(c);
        UPoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `u`, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `u^k`.
    pub fn coefficient(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Value at `u = 1`: the sum of all coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Exact quotient by `u`, or `None` if the constant term is nonzero.
    pub fn div_exact_by_u(&self) -> Option<UPoly> {
        if self.is_zero() {
            return Some(UPoly::zero());
        }
        if !self.coeffs[0].is_zero() {
            return None;
        }
        Some(UPoly::from_coeffs(self.coeffs[1..].to_vec()))
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(other.coeffs.len())];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        UPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(other.coeffs.len())];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            coeffs[k] -= c;
        }
        UPoly::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UPoly::from_coeffs(coeffs)
    }

    /// Multiplication by `c · u^k`.
    pub fn mul_monomial(&self, c: i64, k: usize) -> UPoly {
        self.mul(&UPoly::monomial(c, k))
    }
}

/// Power series in `x` truncated at a fixed degree, with `UPoly`
/// coefficients. The truncation degree is part of the value; binary
/// operations require both sides to share it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariateSeries {
    coeffs: Vec<UPoly>,
}

impl BivariateSeries {
    pub fn zero(truncation: usize) -> Self {
        BivariateSeries {
            coeffs: vec![UPoly::zero(); truncation + 1],
        }
    }

    pub fn one(truncation: usize) -> Self {
        let mut s = BivariateSeries::zero(truncation);
        s.coeffs[0] = UPoly::one();
        s
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `x^n` as a polynomial in `u`; zero beyond the
    /// truncation.
    pub fn x_coefficient(&self, n: usize) -> UPoly {
        self.coeffs.get(n).cloned().unwrap_or_else(UPoly::zero)
    }

    /// Coefficient of `u^k x^n`.
    pub fn coefficient(&self, k: usize, n: usize) -> BigInt {
        match self.coeffs.get(n) {
            Some(p) => p.coefficient(k),
            None => BigInt::zero(),
        }
    }

    /// Row values at `u = 1`, indexed by `x`-degree.
    pub fn at_u_one(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(|p| p.eval_at_one()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|p| p.is_zero())
    }

    /// Lowest `x`-degree with a nonzero coefficient.
    pub fn first_nonzero_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|p| !p.is_zero())
    }

    pub fn truncate_to(&self, truncation: usize) -> BivariateSeries {
        let mut s = BivariateSeries::zero(truncation);
        for n in 0..=truncation.min(self.truncation()) {
            s.coeffs[n] = self.coeffs[n].clone();
        }
        s
    }

    fn set_x_coefficient(&mut self, n: usize, p: UPoly) {
        self.coeffs[n] = p;
    }

    pub fn add(&self, other: &BivariateSeries) -> BivariateSeries {
        assert_eq!(self.truncation(), other.truncation());
        BivariateSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &BivariateSeries) -> BivariateSeries {
        assert_eq!(self.truncation(), other.truncation());
        BivariateSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    /// Truncating product.
    pub fn mul(&self, other: &BivariateSeries) -> BivariateSeries {
        assert_eq!(self.truncation(), other.truncation());
        let mut out = BivariateSeries::zero(self.truncation());
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > self.truncation() {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                out.coeffs[i + j] = out.coeffs[i + j].add(&a.mul(b));
            }
        }
        out
    }

    /// Multiplication by `c · u^k x^m`, truncating.
    pub fn mul_monomial(&self, c: i64, k: usize, m: usize) -> BivariateSeries {
        let mut out = BivariateSeries::zero(self.truncation());
        for n in 0..=self.truncation().saturating_sub(m) {
            out.coeffs[n + m] = self.coeffs[n].mul_monomial(c, k);
        }
        out
    }
}

/// Large Schröder-like counts of rooted signed binary trees up to rotation:
/// index `n` holds the count for `n` nodes, through `max_n`. They satisfy
/// `s[n] = s[n-1] + Σ s[i]·s[n-i]` with `s[1] = 1`.
pub fn schroder_numbers(max_n: usize) -> Vec<BigInt> {
    let mut s = vec![BigInt::zero(); max_n + 1];
    if max_n >= 1 {
        s[1] = BigInt::one();
    }
    for n in 2..=max_n {
        let mut v = s[n - 1].clone();
        for i in 1..n {
            v += &s[i] * &s[n - i];
        }
        s[n] = v;
    }
    s
}

/// Applies the generating function `S(y) = Σ s_m y^m` to a series with no
/// constant term, via Horner evaluation.
fn apply_schroder(y: &BivariateSeries) -> BivariateSeries {
    let truncation = y.truncation();
    debug_assert!(y.x_coefficient(0).is_zero(), "composition needs valuation >= 1");
    let s = schroder_numbers(truncation);
    let mut t = BivariateSeries::zero(truncation);
    for m in (1..=truncation).rev() {
        // t := s_m + y·t
        let mut with_const = y.mul(&t);
        let c = with_const.x_coefficient(0).add(&UPoly::from_coeffs(vec![s[m].clone()]));
        with_const.set_x_coefficient(0, c);
        t = with_const;
    }
    y.mul(&t)
}

/// Series counting unlinked derangements: coefficient of `u^k x^n` is the
/// number of derangements of `[n]` whose diagram is an unlink with `k`
/// components. Computed as the fixed point of `F = 1 + u·x·F·S(x·F)` and
/// checked against the cubic `f_cubic_residual` before returning.
pub fn series_f(truncation: usize) -> Result<BivariateSeries, SeriesError> {
    let mut f = BivariateSeries::one(truncation);
    loop {
        let xf = f.mul_monomial(1, 0, 1);
        let next = BivariateSeries::one(truncation)
            .add(&xf.mul(&apply_schroder(&xf)).mul_monomial(1, 1, 0));
        if next == f {
            break;
        }
        f = next;
    }
    let residual = f_cubic_residual(&f);
    match residual.first_nonzero_degree() {
        Some(d) => Err(SeriesError::CubicMismatch(d)),
        None => Ok(f),
    }
}

/// Residual of the cubic satisfied by `series_f`:
/// `1 + (ux − 2)F + (1 − ux − ux²)F² + (ux² + u²x³)F³`.
pub fn f_cubic_residual(f: &BivariateSeries) -> BivariateSeries {
    let n = f.truncation();
    let f2 = f.mul(f);
    let f3 = f2.mul(f);
    BivariateSeries::one(n)
        .add(&f.mul_monomial(1, 1, 1))
        .sub(&f.mul_monomial(2, 0, 0))
        .add(&f2)
        .sub(&f2.mul_monomial(1, 1, 1))
        .sub(&f2.mul_monomial(1, 1, 2))
        .add(&f3.mul_monomial(1, 1, 2))
        .add(&f3.mul_monomial(1, 2, 3))
}

/// Residual of the cubic satisfied by `series_g`:
/// `ux²G³ + (2u²x² − ux² − 3ux + 1)G² + (3ux − 2)G + 1`.
pub fn g_cubic_residual(g: &BivariateSeries) -> BivariateSeries {
    let n = g.truncation();
    let g2 = g.mul(g);
    let g3 = g2.mul(g);
    g3.mul_monomial(1, 1, 2)
        .add(&g2.mul_monomial(2, 2, 2))
        .sub(&g2.mul_monomial(1, 1, 2))
        .sub(&g2.mul_monomial(3, 1, 1))
        .add(&g2)
        .add(&g.mul_monomial(3, 1, 1))
        .sub(&g.mul_monomial(2, 0, 0))
        .add(&BivariateSeries::one(n))
}

/// Series counting unlinked permutations with fixed points admitted and
/// counted as components: coefficient of `u^k x^n` is the number of
/// permutations of `[n]` whose diagram (ignoring fixed points) is an unlink
/// and whose cycle count including fixed points is `k`.
///
/// The cubic in `g_cubic_residual` has a double root at `x = 0`, so the
/// constant term alone does not select a branch; the combinatorial branch is
/// pinned by its two lowest coefficients `g_0 = 1`, `g_1 = u`, after which
/// each next coefficient is forced one degree later in the residual.
pub fn series_g(truncation: usize) -> Result<BivariateSeries, SeriesError> {
    // Work one degree higher: the coefficient of x^d is read off at x^{d+1}.
    let work = truncation + 1;
    let mut g = BivariateSeries::zero(work);
    g.set_x_coefficient(0, UPoly::one());
    g.set_x_coefficient(1, UPoly::monomial(1, 1));
    for d in 2..=truncation {
        let residual = g_cubic_residual(&g);
        if !residual.x_coefficient(d).is_zero() {
            return Err(SeriesError::NoSeriesRoot(d));
        }
        // The linearized cubic at the known prefix is −u·x + O(x²), so the
        // residual at x^{d+1} equals u times the missing coefficient.
        let gd = residual
            .x_coefficient(d + 1)
            .div_exact_by_u()
            .ok_or(SeriesError::NotDivisible(d))?;
        g.set_x_coefficient(d, gd);
    }
    let residual = g_cubic_residual(&g);
    for n in 0..=truncation {
        if !residual.x_coefficient(n).is_zero() {
            return Err(SeriesError::CubicMismatch(n));
        }
    }
    Ok(g.truncate_to(truncation))
}

/// Independent construction of the same series as `series_g`, as the fixed
/// point of `G = 1 + u·x·G + u·x·G·S(x·G)`: a permutation is a possibly
/// empty run of components read off the first element.
pub fn series_g_fixpoint(truncation: usize) -> BivariateSeries {
    let mut g = BivariateSeries::one(truncation);
    loop {
        let xg = g.mul_monomial(1, 0, 1);
        let next = BivariateSeries::one(truncation)
            .add(&xg.mul_monomial(1, 1, 0))
            .add(&xg.mul(&apply_schroder(&xg)).mul_monomial(1, 1, 0));
        if next == g {
            break;
        }
        g = next;
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn schroder_known_values() {
        let s = schroder_numbers(10);
        let want = [1i64, 2, 6, 22, 90, 394, 1806, 8558, 41586, 206098];
        for (n, w) in want.iter().enumerate() {
            assert_eq!(s[n + 1], big(*w), "index {}", n + 1);
        }
    }

    #[test]
    fn upoly_arithmetic() {
        let a = UPoly::monomial(2, 1).add(&UPoly::one()); // 1 + 2u
        let b = UPoly::monomial(1, 1).sub(&UPoly::one()); // u - 1
        let prod = a.mul(&b); // (1+2u)(u-1) = -1 - u + 2u²
        assert_eq!(prod.coefficient(0), big(-1));
        assert_eq!(prod.coefficient(1), big(-1));
        assert_eq!(prod.coefficient(2), big(2));
        assert_eq!(prod.degree(), Some(2));
        assert_eq!(prod.eval_at_one(), big(0));
        assert!(a.sub(&a).is_zero());
        assert_eq!(UPoly::monomial(3, 2).div_exact_by_u(), Some(UPoly::monomial(3, 1)));
        assert_eq!(UPoly::one().div_exact_by_u(), None);
    }

    #[test]
    fn f_low_coefficients() {
        let f = series_f(6).unwrap();
        assert_eq!(f.coefficient(0, 0), big(1));
        assert!(f.x_coefficient(1).is_zero());
        assert_eq!(f.coefficient(1, 2), big(1));
        assert_eq!(f.coefficient(1, 3), big(2));
        assert_eq!(f.coefficient(1, 4), big(6));
        assert_eq!(f.coefficient(2, 4), big(2));
        assert_eq!(f.coefficient(1, 5), big(22));
        assert_eq!(f.coefficient(2, 5), big(10));
        assert_eq!(f.coefficient(1, 6), big(90));
        assert_eq!(f.coefficient(2, 6), big(48));
        assert_eq!(f.coefficient(3, 6), big(5));
        let rows = f.at_u_one();
        assert_eq!(rows[5], big(32));
        assert_eq!(rows[6], big(143));
    }

    #[test]
    fn f_cubic_holds_through_degree_twenty() {
        let f = series_f(20).unwrap();
        assert!(f_cubic_residual(&f).is_zero());
    }

    #[test]
    fn f_u_degree_bounded_by_x_degree() {
        let f = series_f(12).unwrap();
        for n in 0..=12 {
            if let Some(d) = f.x_coefficient(n).degree() {
                assert!(d <= n, "u-degree {d} exceeds x-degree {n}");
            }
        }
    }

    #[test]
    fn f_diagonal_is_catalan() {
        let f = series_f(10).unwrap();
        let want = [1i64, 2, 5, 14, 42];
        for (i, w) in want.iter().enumerate() {
            let n = i + 1;
            assert_eq!(f.coefficient(n, 2 * n), big(*w), "diagonal at n={n}");
        }
    }

    #[test]
    fn g_low_coefficients() {
        let g = series_g(5).unwrap();
        assert_eq!(g.coefficient(0, 0), big(1));
        assert_eq!(g.x_coefficient(1), UPoly::monomial(1, 1));
        // u² + u at x².
        assert_eq!(g.coefficient(1, 2), big(1));
        assert_eq!(g.coefficient(2, 2), big(1));
        // u³ + 3u² + 2u at x³.
        assert_eq!(g.coefficient(1, 3), big(2));
        assert_eq!(g.coefficient(2, 3), big(3));
        assert_eq!(g.coefficient(3, 3), big(1));
    }

    #[test]
    fn g_row_sums_at_u_one() {
        let g = series_g(9).unwrap();
        let rows = g.at_u_one();
        let want = [1i64, 1, 2, 6, 23, 103, 511, 2719, 15205, 88197];
        for (n, w) in want.iter().enumerate() {
            assert_eq!(rows[n], big(*w), "row {n}");
        }
    }

    #[test]
    fn g_matches_fixpoint_oracle() {
        let g = series_g(12).unwrap();
        let oracle = series_g_fixpoint(12);
        assert_eq!(g, oracle);
    }

    #[test]
    fn g_cubic_holds() {
        let g = series_g(15).unwrap();
        let residual = g_cubic_residual(&g);
        for n in 0..=15 {
            assert!(residual.x_coefficient(n).is_zero(), "degree {n}");
        }
    }

    #[test]
    fn g_u_degree_bounded_by_x_degree() {
        let g = series_g(12).unwrap();
        for n in 0..=12 {
            if let Some(d) = g.x_coefficient(n).degree() {
                assert!(d <= n);
            }
        }
    }

    #[test]
    fn series_arithmetic_respects_truncation() {
        let one = BivariateSeries::one(3);
        let x = one.mul_monomial(1, 0, 1);
        let x4 = x.mul(&x).mul(&x).mul(&x);
        assert!(x4.is_zero(), "x^4 truncates away at degree 3");
        assert_eq!(x.first_nonzero_degree(), Some(1));
        assert_eq!(one.truncation(), 3);
    }
}
