//! Closed-form lower and upper bounds on `γ_k(G)` and a report that checks
//! them against an exact value.
//!
//! Lower bounds (all for connected `G`, `k >= 1`):
//!
//! * diameter: `γ_k(G) >= (d + 1) / (2k + 1)`
//! * radius:   `γ_k(G) >= 2r / (2k + 1)`
//! * girth:    `γ_k(G) >= g / (2k + 1)`
//!
//! The usual written proof of the diameter bound ends with "=" where "≥" is
//! meant; only the inequality is implemented. Since `γ_k` is an integer,
//! every bound is reported as its ceiling, next to the raw fraction.
//!
//! Upper bounds come from the literature on distance domination: the
//! tree bound `n / (k + 1)` (valid for connected graphs through a spanning
//! tree), `(n - Δ + k - 1) / k`, and `(n + δ - Δ) / (δ + k - 1)` for
//! `k >= 2`, `δ >= 2`.

use crate::constructions::{self, ConstructionError, Side};
use crate::graph::{Distance, Graph, INFINITY};
use crate::solver::{self, Budget, Certificate};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("diameter is infinite (graph is disconnected)")]
    InfiniteDiameter,
    #[error("radius is infinite (graph is disconnected)")]
    InfiniteRadius,
    #[error("factor graph is disconnected")]
    DisconnectedFactor,
    #[error("exact solve did not finish within budget")]
    BudgetExceeded,
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

/// Non-negative rational `num / den`, kept for transparency next to the
/// integer bound derived from it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Fraction {
    pub num: i64,
    pub den: i64,
}

impl Fraction {
    fn new(num: i64, den: i64) -> Self {
        assert!(den > 0);
        Self { num, den }
    }

    pub fn ceil(self) -> i64 {
        self.num.div_euclid(self.den) + i64::from(self.num.rem_euclid(self.den) != 0)
    }

    pub fn floor(self) -> i64 {
        self.num.div_euclid(self.den)
    }
}

/// `⌈(d + 1) / (2k + 1)⌉`.
pub fn lb_diameter(diameter: Distance, k: usize) -> Result<usize, BoundsError> {
    if diameter == INFINITY {
        return Err(BoundsError::InfiniteDiameter);
    }
    Ok((diameter as usize + 1).div_ceil(2 * k + 1))
}

/// `⌈2r / (2k + 1)⌉`. Zero for `r = 0`; reports clamp it to 1.
pub fn lb_radius(radius: Distance, k: usize) -> Result<usize, BoundsError> {
    if radius == INFINITY {
        return Err(BoundsError::InfiniteRadius);
    }
    Ok((2 * radius as usize).div_ceil(2 * k + 1))
}

/// `⌈g / (2k + 1)⌉`; acyclic graphs get the trivial bound 1.
pub fn lb_girth(girth: Distance, k: usize) -> usize {
    if girth == INFINITY {
        1
    } else {
        (girth as usize).div_ceil(2 * k + 1)
    }
}

/// An upper bound whose hypotheses may fail.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum UpperBound {
    Applies { value: usize, raw: Fraction },
    Inapplicable { reason: String },
}

impl UpperBound {
    pub fn value(&self) -> Option<usize> {
        match self {
            UpperBound::Applies { value, .. } => Some(*value),
            UpperBound::Inapplicable { .. } => None,
        }
    }

    fn from_fraction(raw: Fraction) -> Self {
        UpperBound::Applies {
            value: raw.floor().max(0) as usize,
            raw,
        }
    }

    fn inapplicable(reason: impl Into<String>) -> Self {
        UpperBound::Inapplicable {
            reason: reason.into(),
        }
    }
}

/// Tree bound `⌊n / (k + 1)⌋`, for connected graphs of order `n >= k + 1`.
pub fn ub_meir_moon(n: usize, k: usize) -> UpperBound {
    if n < k + 1 {
        return UpperBound::inapplicable("needs n >= k + 1");
    }
    UpperBound::from_fraction(Fraction::new(n as i64, k as i64 + 1))
}

/// `⌊(n - Δ + k - 1) / k⌋`, for connected graphs of order `n >= k + 1`.
pub fn ub_tian_xu(n: usize, max_degree: usize, k: usize) -> UpperBound {
    if k == 0 {
        return UpperBound::inapplicable("needs k >= 1");
    }
    if n < k + 1 {
        return UpperBound::inapplicable("needs n >= k + 1");
    }
    UpperBound::from_fraction(Fraction::new(
        n as i64 - max_degree as i64 + k as i64 - 1,
        k as i64,
    ))
}

/// `⌊(n + δ - Δ) / (δ + k - 1)⌋`, for connected graphs with `k >= 2`,
/// `δ >= 2` and `n >= Δ + k - 1`.
pub fn ub_hl(n: usize, min_degree: usize, max_degree: usize, k: usize) -> UpperBound {
    if k < 2 {
        return UpperBound::inapplicable("needs k >= 2");
    }
    if min_degree < 2 {
        return UpperBound::inapplicable("needs minimum degree >= 2");
    }
    if n + 1 < max_degree + k {
        return UpperBound::inapplicable("needs n >= max degree + k - 1");
    }
    UpperBound::from_fraction(Fraction::new(
        n as i64 + min_degree as i64 - max_degree as i64,
        (min_degree + k - 1) as i64,
    ))
}

/// A lower bound: the raw fraction, its ceiling, and the effective value
/// `max(1, ceiling)` used for comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LowerBound {
    pub raw: Fraction,
    pub formula: usize,
    pub effective: usize,
}

impl LowerBound {
    fn new(raw: Fraction) -> Self {
        let formula = raw.ceil().max(0) as usize;
        Self {
            raw,
            formula,
            effective: formula.max(1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Consistent,
    ViolationDetected,
    ExactUnavailable,
}

/// Every bound for one `(G, k)`, optionally checked against `γ_k(G)`.
///
/// Distances and bounds that do not apply to a disconnected or acyclic
/// graph are `None`.
#[derive(Debug, Clone, Serialize)]
pub struct BoundsReport {
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub delta_min: usize,
    pub delta_max: usize,
    pub connected: bool,
    pub diameter: Option<u32>,
    pub radius: Option<u32>,
    pub girth: Option<u32>,
    pub lb_diameter: Option<LowerBound>,
    pub lb_radius: Option<LowerBound>,
    pub lb_girth: Option<LowerBound>,
    pub lb_packing: Option<usize>,
    pub ub_meir_moon: UpperBound,
    pub ub_tian_xu: UpperBound,
    pub ub_henning_lichiardopol: UpperBound,
    pub ub_greedy: usize,
    pub exact: Option<Certificate>,
    pub verdict: Verdict,
    /// Human-readable descriptions of any broken inequality.
    pub violations: Vec<String>,
}

impl BoundsReport {
    /// Largest applicable lower bound (at least 1 for non-empty graphs).
    pub fn best_lower(&self) -> usize {
        [
            self.lb_diameter.map(|b| b.effective),
            self.lb_radius.map(|b| b.effective),
            self.lb_girth.map(|b| b.effective),
            self.lb_packing,
        ]
        .into_iter()
        .flatten()
        .max()
        .unwrap_or(usize::from(self.n > 0))
    }

    /// Smallest applicable upper bound.
    pub fn best_upper(&self) -> usize {
        [
            self.ub_meir_moon.value(),
            self.ub_tian_xu.value(),
            self.ub_henning_lichiardopol.value(),
            Some(self.ub_greedy),
        ]
        .into_iter()
        .flatten()
        .min()
        .expect("greedy bound always applies")
    }
}

/// Computes every bound and, when `solve` is set, the exact value within
/// `budget`.
pub fn bounds_report(g: &Graph, k: usize, budget: Budget, solve: bool) -> BoundsReport {
    let metrics = g.metrics();
    let connected = metrics.connected;
    let odd = 2 * k as i64 + 1;
    let finite = |d: Distance| (d != INFINITY).then_some(d);

    let lb_diameter =
        connected.then(|| LowerBound::new(Fraction::new(metrics.diameter as i64 + 1, odd)));
    let lb_radius =
        connected.then(|| LowerBound::new(Fraction::new(2 * metrics.radius as i64, odd)));
    let lb_girth = (connected && metrics.girth != INFINITY)
        .then(|| LowerBound::new(Fraction::new(metrics.girth as i64, odd)));
    let lb_packing = connected.then(|| solver::packing_size(g, k));

    let not_connected = || UpperBound::inapplicable("needs a connected graph");
    let (ub_mm, ub_tx, ub_hl_) = if connected {
        (
            ub_meir_moon(g.n(), k),
            ub_tian_xu(g.n(), g.max_degree(), k),
            ub_hl(g.n(), g.min_degree(), g.max_degree(), k),
        )
    } else {
        (not_connected(), not_connected(), not_connected())
    };
    let greedy = solver::greedy_upper(g, k);
    let exact = solve.then(|| solver::gamma_k_exact(g, k, budget));

    let mut report = BoundsReport {
        k,
        n: g.n(),
        m: g.m(),
        delta_min: g.min_degree(),
        delta_max: g.max_degree(),
        connected,
        diameter: finite(metrics.diameter),
        radius: finite(metrics.radius),
        girth: finite(metrics.girth),
        lb_diameter,
        lb_radius,
        lb_girth,
        lb_packing,
        ub_meir_moon: ub_mm,
        ub_tian_xu: ub_tx,
        ub_henning_lichiardopol: ub_hl_,
        ub_greedy: greedy.value,
        exact,
        verdict: Verdict::ExactUnavailable,
        violations: Vec::new(),
    };
    report.violations = find_violations(&report);
    report.verdict = if !report.violations.is_empty() {
        Verdict::ViolationDetected
    } else if report.exact.as_ref().is_some_and(Certificate::is_exact) {
        Verdict::Consistent
    } else {
        Verdict::ExactUnavailable
    };
    report
}

fn find_violations(r: &BoundsReport) -> Vec<String> {
    let lowers = [
        ("lb_diameter", r.lb_diameter.map(|b| b.effective)),
        ("lb_radius", r.lb_radius.map(|b| b.effective)),
        ("lb_girth", r.lb_girth.map(|b| b.effective)),
        ("lb_packing", r.lb_packing),
    ];
    let uppers = [
        ("ub_meir_moon", r.ub_meir_moon.value()),
        ("ub_tian_xu", r.ub_tian_xu.value()),
        ("ub_henning_lichiardopol", r.ub_henning_lichiardopol.value()),
        ("ub_greedy", Some(r.ub_greedy)),
    ];
    let mut out = Vec::new();
    for (lname, lb) in lowers {
        let Some(lb) = lb else { continue };
        for (uname, ub) in uppers {
            if let Some(ub) = ub {
                if lb > ub {
                    out.push(format!("{lname} = {lb} > {uname} = {ub}"));
                }
            }
        }
        if let Some(exact) = r.exact.as_ref().filter(|c| c.is_exact()) {
            if lb > exact.value {
                out.push(format!("{lname} = {lb} > gamma_k = {}", exact.value));
            }
        }
    }
    if let Some(exact) = r.exact.as_ref().filter(|c| c.is_exact()) {
        for (uname, ub) in uppers {
            if let Some(ub) = ub {
                if exact.value > ub {
                    out.push(format!("gamma_k = {} > {uname} = {ub}", exact.value));
                }
            }
        }
    }
    out
}

/// Result of checking `γ_k(G × H) >= γ_k(G) + γ_k(H) - 1` on one pair.
#[derive(Debug, Clone, Serialize)]
pub struct ProductBoundReport {
    pub k: usize,
    pub gamma_left: usize,
    pub gamma_right: usize,
    pub bound: usize,
    pub product_n: usize,
    pub product_m: usize,
    pub product_connected: bool,
    pub product_components: usize,
    /// `γ_k` of the product; summed over components when disconnected.
    pub gamma_product: usize,
    pub product_set: Vec<usize>,
    pub left_projection: Vec<usize>,
    pub right_projection: Vec<usize>,
    /// Both projections of the product's minimum set are k-dominating.
    pub projections_dominating: bool,
    /// The product inequality; `None` when the product is disconnected and
    /// the check is excluded.
    pub bound_holds: Option<bool>,
}

pub fn product_bound_check(
    left: &Graph,
    right: &Graph,
    k: usize,
    budget: Budget,
) -> Result<ProductBoundReport, BoundsError> {
    if !left.is_connected() || !right.is_connected() {
        return Err(BoundsError::DisconnectedFactor);
    }
    let exact = |g: &Graph| {
        let c = solver::gamma_k_exact(g, k, budget);
        if c.is_exact() {
            Ok(c)
        } else {
            Err(BoundsError::BudgetExceeded)
        }
    };
    let gamma_left = exact(left)?.value;
    let gamma_right = exact(right)?.value;
    let product = constructions::direct_product(left, right)?;
    let cert = exact(&product.graph)?;
    let set = cert.vertices();
    let left_projection = constructions::project(&product, &set, Side::Left);
    let right_projection = constructions::project(&product, &set, Side::Right);
    let projections_dominating = solver::is_k_dominating(left, &left_projection, k)
        .unwrap_or(false)
        && solver::is_k_dominating(right, &right_projection, k).unwrap_or(false);
    let bound = gamma_left + gamma_right - 1;
    let product_connected = cert.components == 1;
    Ok(ProductBoundReport {
        k,
        gamma_left,
        gamma_right,
        bound,
        product_n: product.graph.n(),
        product_m: product.graph.m(),
        product_connected,
        product_components: cert.components,
        gamma_product: cert.value,
        product_set: set,
        left_projection,
        right_projection,
        projections_dominating,
        bound_holds: product_connected.then_some(cert.value >= bound),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete, cycle, path};

    #[test]
    fn lower_bound_formulas() {
        assert_eq!(lb_diameter(4, 1).unwrap(), 2);
        assert_eq!(lb_diameter(0, 3).unwrap(), 1);
        assert_eq!(lb_diameter(INFINITY, 1), Err(BoundsError::InfiniteDiameter));
        for k in 1..=3 {
            for l in 1..=4 {
                assert_eq!(lb_diameter((l * (2 * k + 1) - 1) as u32, k).unwrap(), l);
                assert_eq!(lb_radius((l * (2 * k + 1)) as u32, k).unwrap(), 2 * l);
            }
        }
        assert_eq!(lb_radius(3, 1).unwrap(), 2);
        assert_eq!(lb_radius(0, 1).unwrap(), 0);
        assert_eq!(lb_radius(INFINITY, 1), Err(BoundsError::InfiniteRadius));
        assert_eq!(lb_girth(7, 1), 3);
        assert_eq!(lb_girth(3, 5), 1);
        assert_eq!(lb_girth(12, 2), 3);
        assert_eq!(lb_girth(INFINITY, 2), 1);
    }

    #[test]
    fn upper_bound_formulas() {
        assert_eq!(ub_meir_moon(9, 2).value(), Some(3));
        assert_eq!(ub_meir_moon(2, 2).value(), None);
        assert_eq!(ub_tian_xu(10, 3, 1).value(), Some(7));
        assert_eq!(ub_hl(12, 2, 4, 2).value(), Some(3));
        assert_eq!(ub_hl(12, 2, 4, 1).value(), None);
        assert_eq!(ub_hl(12, 1, 4, 2).value(), None);
        assert_eq!(ub_hl(4, 2, 4, 2).value(), None);
        assert_eq!(ub_hl(5, 2, 4, 2).value(), Some(1));
    }

    #[test]
    fn report_c12() {
        let r = bounds_report(&cycle(12).unwrap(), 2, Budget::default(), true);
        assert_eq!(r.lb_girth.unwrap().formula, 3);
        assert_eq!(r.lb_diameter.unwrap().formula, 2);
        assert_eq!(r.exact.as_ref().unwrap().value, 3);
        assert_eq!(r.verdict, Verdict::Consistent);
    }

    #[test]
    fn report_p9() {
        let r = bounds_report(&path(9).unwrap(), 1, Budget::default(), true);
        assert_eq!(r.lb_diameter.unwrap().formula, 3);
        assert_eq!(r.ub_meir_moon.value(), Some(4));
        assert_eq!(r.exact.as_ref().unwrap().value, 3);
        assert_eq!(r.verdict, Verdict::Consistent);
        assert!(r.lb_girth.is_none());
    }

    #[test]
    fn report_single_vertex() {
        let r = bounds_report(&path(1).unwrap(), 1, Budget::default(), true);
        assert_eq!(r.lb_diameter.unwrap().effective, 1);
        assert_eq!(r.lb_radius.unwrap().formula, 0);
        assert_eq!(r.lb_radius.unwrap().effective, 1);
        assert_eq!(r.exact.as_ref().unwrap().value, 1);
        assert_eq!(r.verdict, Verdict::Consistent);
        assert_eq!(r.best_lower(), 1);
    }

    #[test]
    fn report_without_solve() {
        let r = bounds_report(&path(9).unwrap(), 1, Budget::default(), false);
        assert_eq!(r.verdict, Verdict::ExactUnavailable);
        assert!(r.best_lower() <= r.best_upper());
    }

    #[test]
    fn report_disconnected() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let r = bounds_report(&g, 1, Budget::default(), true);
        assert!(r.lb_diameter.is_none());
        assert!(r.ub_meir_moon.value().is_none());
        assert_eq!(r.exact.as_ref().unwrap().value, 2);
        assert_eq!(r.verdict, Verdict::Consistent);
    }

    #[test]
    fn product_k3_k3() {
        let k3 = complete(3).unwrap();
        let r = product_bound_check(&k3, &k3, 1, Budget::default()).unwrap();
        assert_eq!(r.bound, 1);
        assert!(r.product_connected);
        assert_eq!(r.gamma_product, 3);
        assert_eq!(r.bound_holds, Some(true));
        assert!(r.projections_dominating);
    }

    #[test]
    fn product_p4_c3() {
        let r = product_bound_check(&path(4).unwrap(), &cycle(3).unwrap(), 1, Budget::default())
            .unwrap();
        assert_eq!(r.bound, 2);
        assert!(r.product_connected);
        assert!(r.gamma_product >= 2);
        assert_eq!(r.bound_holds, Some(true));
    }

    #[test]
    fn product_k2_k2_excluded() {
        let k2 = path(2).unwrap();
        let r = product_bound_check(&k2, &k2, 1, Budget::default()).unwrap();
        assert!(!r.product_connected);
        assert_eq!(r.product_components, 2);
        assert_eq!(r.gamma_product, 2);
        assert_eq!(r.bound_holds, None);
    }

    #[test]
    fn product_rejects_disconnected_factor() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            product_bound_check(&g, &path(2).unwrap(), 1, Budget::default()).unwrap_err(),
            BoundsError::DisconnectedFactor
        );
    }
}
