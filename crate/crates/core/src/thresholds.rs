//! Closed-form density thresholds for unique colorability.
//!
//! The formulas are generic over [`Scalar`]; instantiate with [`Rational`]
//! for anything that decides an inequality and with `f64` only for display.
//! Inequalities between fractional powers are decided by raising both sides
//! to a common integer power and comparing arbitrary-precision integers.

use num_bigint::BigUint;
use num_traits::{pow, One};

use crate::coloring::{enumerate_classes, is_proper, Coloring};
use crate::constructions::{build_construction, ConstructionSpec};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::rational::{self, from_int};
use crate::report::Report;
use crate::{Rational, Scalar};

fn frac<T: Scalar>(num: i64, den: i64) -> T {
    T::from_i64(num).expect("numerator fits") / T::from_i64(den).expect("denominator fits")
}

fn max<T: Scalar>(a: T, b: T) -> T {
    if a >= b {
        a
    } else {
        b
    }
}

pub fn binom(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, j| acc * BigUint::from(n - j) / BigUint::from(j + 1))
}

fn binom_scalar<T: Scalar>(n: usize, k: usize) -> T {
    let b = binom(n, k);
    T::from_u64(u64::try_from(b).expect("binomial fits in u64")).expect("binomial converts")
}

fn check_kr(k: usize, r: usize) -> Result<()> {
    if r < 2 || k < r {
        return Err(Error::param(format!("needs k >= r >= 2, got k = {k}, r = {r}")));
    }
    Ok(())
}

fn check_kri(k: usize, r: usize, i: usize) -> Result<()> {
    check_kr(k, r)?;
    if i == 0 || i >= r {
        return Err(Error::param(format!("needs r > i >= 1, got r = {r}, i = {i}")));
    }
    Ok(())
}

/// Which of the two threshold formulas is the larger one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `k < (4r-2)/3`: `(k-r+1)/(k+2)`, witnessed by the `α = 1` construction.
    BelowPhase,
    /// `k ≥ (4r-2)/3`: `(3k-3r+1)/(3k-2)`, witnessed by `α = 3`.
    AbovePhase,
}

impl Branch {
    pub fn of(k: usize, r: usize) -> Branch {
        if 3 * k < 4 * r - 2 {
            Branch::BelowPhase
        } else {
            Branch::AbovePhase
        }
    }

    /// Construction parameter whose codegree ratio equals this branch.
    pub fn alpha(self) -> i64 {
        match self {
            Branch::BelowPhase => 1,
            Branch::AbovePhase => 3,
        }
    }
}

/// `((k-r+1)/(k+2), (3k-3r+1)/(3k-2))`.
pub fn branch_values<T: Scalar>(k: usize, r: usize) -> (T, T) {
    let (k, r) = (k as i64, r as i64);
    (frac(k - r + 1, k + 2), frac(3 * k - 3 * r + 1, 3 * k - 2))
}

/// Threshold on the minimum positive codegree relative to `n`: the larger
/// of the two branch values, or `(3k-5)/(3k-2)` for graphs.
pub fn phi<T: Scalar>(k: usize, r: usize) -> Result<T> {
    check_kr(k, r)?;
    let (low, high) = branch_values::<T>(k, r);
    let max_form = max(low, high);
    if r == 2 {
        let ki = k as i64;
        let graph: T = frac(3 * ki - 5, 3 * ki - 2);
        assert!(graph == max_form, "graph threshold disagrees with the max form at k = {k}");
        return Ok(graph);
    }
    Ok(max_form)
}

/// `(4r-2)/3`, where the binding branch switches.
pub fn phase_point<T: Scalar>(r: usize) -> T {
    frac(4 * r as i64 - 2, 3)
}

#[derive(Debug, Clone, PartialEq)]
pub struct UpperBound<T> {
    pub value: T,
    /// The bound is known to be the true value (`k ≤ (4i+2)/3`).
    pub exact: bool,
}

/// `C(k-i, r-i) · ((1/(k-i)) · max{(k-i)/(k+2), (3k-3i-2)/(3k-2)})^(r-i)`,
/// an upper bound on the positive `i`-degree threshold relative to
/// `n^(r-i)`.
pub fn phi_upper<T: Scalar>(k: usize, r: usize, i: usize) -> Result<UpperBound<T>> {
    check_kri(k, r, i)?;
    let (ki, ii) = (k as i64, i as i64);
    let inner = max(frac::<T>(ki - ii, ki + 2), frac(3 * ki - 3 * ii - 2, 3 * ki - 2));
    let base = inner / T::from_usize(k - i).expect("k - i converts");
    let value = binom_scalar::<T>(k - i, r - i) * pow(base, r - i);
    Ok(UpperBound { value, exact: 3 * k <= 4 * i + 2 })
}

/// `C(k-i, r-i) · (1/(k+2))^(r-i)`, the value of [`phi_upper`] when it is
/// exact, and in general the ratio achieved by the `α = 1` construction.
pub fn corollary_value<T: Scalar>(k: usize, r: usize, i: usize) -> Result<T> {
    check_kri(k, r, i)?;
    Ok(binom_scalar::<T>(k - i, r - i) * pow(frac::<T>(1, k as i64 + 2), r - i))
}

/// Threshold on the minimum vertex degree relative to `n²` for 3-partite
/// 3-graphs.
pub fn phi_331<T: Scalar>() -> T {
    frac(1, 18)
}

/// Decides `a^p ≤ b^q` for non-negative rationals, exactly.
pub fn pow_le(a: &Rational, p: u32, b: &Rational, q: u32) -> bool {
    let lhs = a.numer().pow(p) * b.denom().pow(q);
    let rhs = b.numer().pow(q) * a.denom().pow(p);
    lhs <= rhs
}

/// Outcome of the `k`-partite Kruskal–Katona-type inequality
/// `(|H|/C(k,r))^(1/r) ≤ (|∂_i H|/C(k,r-i))^(1/(r-i))`, cleared to
/// `|H|^(r-i) · C(k,r-i)^r ≤ |∂_i H|^r · C(k,r)^(r-i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FfkOutcome {
    pub edges: usize,
    pub shadow: usize,
    pub lhs: BigUint,
    pub rhs: BigUint,
}

impl FfkOutcome {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs
    }

    pub fn is_tight(&self) -> bool {
        self.lhs == self.rhs
    }
}

fn ffk_sides(h: &Hypergraph, k: usize, i: usize) -> Result<FfkOutcome> {
    check_kri(k, h.r(), i)?;
    ffk_from_sizes(k, h.r(), i, h.len(), h.shadow_len(i)?)
}

/// The inequality from precomputed `|H|` and `|∂_i H|`.
pub fn ffk_from_sizes(k: usize, r: usize, i: usize, edges: usize, shadow: usize) -> Result<FfkOutcome> {
    check_kri(k, r, i)?;
    let (ri, rr) = ((r - i) as u32, r as u32);
    let lhs = BigUint::from(edges).pow(ri) * binom(k, r - i).pow(rr);
    let rhs = BigUint::from(shadow).pow(rr) * binom(k, r).pow(ri);
    Ok(FfkOutcome { edges, shadow, lhs, rhs })
}

/// Checks the inequality after confirming that `h` is `k`-partite.
pub fn ffk_check(h: &Hypergraph, k: usize, i: usize) -> Result<FfkOutcome> {
    check_kri(k, h.r(), i)?;
    if enumerate_classes(h, k, Some(1)).is_empty() {
        return Err(Error::NotPartite(k));
    }
    ffk_sides(h, k, i)
}

/// Same as [`ffk_check`] with a known proper coloring as the partiteness
/// witness.
pub fn ffk_check_with(h: &Hypergraph, witness: &Coloring, i: usize) -> Result<FfkOutcome> {
    if !is_proper(h, witness) {
        return Err(Error::NotPartite(witness.k()));
    }
    ffk_sides(h, witness.k(), i)
}

/// Exact `δ⁺_i / n^(r-i)` of the two-coloring construction for each `α`,
/// with the maximizing `α`. Exploratory: the report has no verdict.
pub fn conjecture_probe(k: usize, r: usize, i: usize, alphas: &[Rational], m: usize) -> Result<Report> {
    check_kri(k, r, i)?;
    if alphas.is_empty() {
        return Err(Error::param("at least one alpha is required"));
    }
    let alpha_list: Vec<String> = alphas.iter().map(rational::format).collect();
    let mut report = Report::new("probe-conjecture")
        .with_param("k", k)
        .with_param("r", r)
        .with_param("i", i)
        .with_param("m", m)
        .with_param("alphas", alpha_list.join(","));
    if 3 * k <= 4 * i + 2 {
        report.note("k <= (4i+2)/3: the threshold is already known exactly here");
    }

    let mut best: Option<(Rational, Rational)> = None;
    for alpha in alphas {
        let spec = ConstructionSpec::new(k, r, alpha.clone(), m)?;
        let h = build_construction(&spec)?.hypergraph;
        let n = h.n();
        let delta = h.min_positive_degree(i)?.expect("construction has edges");
        let ratio = from_int(delta as i64) / from_int(n as i64).pow((r - i) as i32);
        let tag = rational::format(alpha);
        report.measure(format!("alpha={tag}:n"), n);
        report.measure(format!("alpha={tag}:delta"), delta);
        report.measure(format!("alpha={tag}:ratio"), &ratio);
        if best.as_ref().is_none_or(|(_, b)| ratio > *b) {
            best = Some((alpha.clone(), ratio));
        }
    }
    let (alpha, ratio) = best.expect("alphas is nonempty");
    report.measure("best_alpha", alpha);
    report.measure("best_ratio", ratio);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::report::Quantity;

    #[test]
    fn phi_examples() {
        assert_eq!(phi::<Rational>(6, 6).unwrap(), ratio(1, 8));
        assert_eq!(phi::<Rational>(8, 6).unwrap(), ratio(7, 22));
        assert_eq!(phi::<Rational>(11, 6).unwrap(), ratio(16, 31));
        assert_eq!(phi::<Rational>(3, 2).unwrap(), ratio(4, 7));
        assert_eq!(phi::<Rational>(3, 3).unwrap(), ratio(1, 5));
        assert!(phi::<Rational>(2, 3).is_err());
        assert!(phi::<Rational>(3, 1).is_err());
        assert!((phi::<f64>(8, 6).unwrap() - 7.0 / 22.0).abs() < 1e-15);
    }

    #[test]
    fn phase_points() {
        assert_eq!(phase_point::<Rational>(3), ratio(10, 3));
        assert_eq!(phase_point::<Rational>(6), ratio(22, 3));
        assert_eq!(phase_point::<Rational>(5), ratio(6, 1));
        let (a, b) = branch_values::<Rational>(6, 5);
        assert_eq!(a, ratio(1, 4));
        assert_eq!(b, ratio(1, 4));
        assert_eq!(Branch::of(7, 6), Branch::BelowPhase);
        assert_eq!(Branch::of(8, 6), Branch::AbovePhase);
        assert_eq!(Branch::of(6, 5), Branch::AbovePhase);
    }

    #[test]
    fn upper_bounds() {
        let u = phi_upper::<Rational>(3, 3, 1).unwrap();
        assert_eq!(u, UpperBound { value: ratio(4, 49), exact: false });
        let u = phi_upper::<Rational>(6, 5, 4).unwrap();
        assert_eq!(u, UpperBound { value: ratio(1, 4), exact: true });
        assert_eq!(u.value, phi::<Rational>(6, 5).unwrap());
        let u = phi_upper::<Rational>(2, 2, 1).unwrap();
        assert_eq!(u, UpperBound { value: ratio(1, 4), exact: true });
        assert!(phi_upper::<Rational>(3, 3, 3).is_err());
        assert!(phi_upper::<Rational>(3, 3, 0).is_err());
    }

    #[test]
    fn exact_upper_bound_simplifies() {
        for k in 2..=14 {
            for r in 2..=k {
                for i in 1..r {
                    let u = phi_upper::<Rational>(k, r, i).unwrap();
                    if u.exact {
                        assert_eq!(u.value, corollary_value::<Rational>(k, r, i).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(4, 2), BigUint::from(6u32));
        assert_eq!(binom(2, 3), BigUint::ZERO);
        assert_eq!(binom(40, 20), BigUint::from(137_846_528_820u64));
    }

    #[test]
    fn pow_comparison() {
        assert!(pow_le(&ratio(1, 2), 2, &ratio(1, 4), 1));
        assert!(pow_le(&ratio(1, 2), 2, &ratio(1, 3), 1));
        assert!(!pow_le(&ratio(1, 2), 2, &ratio(1, 5), 1));
    }

    #[test]
    fn ffk_examples() {
        let k43 = Hypergraph::new(4, 3, [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]).unwrap();
        let o = ffk_check(&k43, 4, 1).unwrap();
        assert_eq!((o.lhs.clone(), o.rhs.clone()), (BigUint::from(3456u32), BigUint::from(3456u32)));
        assert!(o.holds() && o.is_tight());

        let single = Hypergraph::new(3, 3, [[1, 2, 3]]).unwrap();
        let o = ffk_check(&single, 3, 1).unwrap();
        assert_eq!(o.lhs, BigUint::from(27u32));
        assert!(o.is_tight());

        let h = Hypergraph::new(5, 3, [[1, 2, 4], [1, 3, 5]]).unwrap();
        let o = ffk_check(&h, 3, 1).unwrap();
        assert_eq!((o.lhs.clone(), o.rhs.clone()), (BigUint::from(108u32), BigUint::from(216u32)));
        assert!(o.holds() && !o.is_tight());

        assert_eq!(ffk_check(&k43, 3, 1), Err(Error::NotPartite(3)));
        assert!(ffk_check(&k43, 4, 3).is_err());
    }

    #[test]
    fn probe_331() {
        let alphas = [ratio(1, 1), ratio(3, 2), ratio(2, 1), ratio(5, 2), ratio(3, 1)];
        let rep = conjecture_probe(3, 3, 1, &alphas, 2).unwrap();
        assert_eq!(rep.get("best_alpha"), Some(&Quantity::Ratio(ratio(2, 1))));
        assert_eq!(rep.get("best_ratio"), Some(&Quantity::Ratio(ratio(1, 18))));
        assert_eq!(rep.verdict, None);
    }

    #[test]
    fn probe_codegree_case() {
        let rep = conjecture_probe(3, 3, 2, &[ratio(1, 1), ratio(3, 1)], 1).unwrap();
        assert_eq!(rep.get("alpha=1/1:ratio"), Some(&Quantity::Ratio(ratio(1, 5))));
        assert_eq!(rep.get("alpha=3/1:ratio"), Some(&Quantity::Ratio(ratio(1, 7))));
        assert_eq!(rep.get("best_alpha"), Some(&Quantity::Ratio(ratio(1, 1))));
        assert!(conjecture_probe(3, 3, 2, &[ratio(1, 2)], 1).is_err());
    }
}
