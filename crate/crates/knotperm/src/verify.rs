//! Named self-check suites. Each suite cross-validates one slice of the
//! crate against independent computations of the same quantities and
//! reports one outcome per check. The CLI `verify` subcommand prints them;
//! the integration tests assert on them.
//!
//! Suites clamp their own range to what runs in reasonable time and say so
//! in their `scope` entry, so a large requested bound degrades gracefully
//! instead of wedging the process.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::count::{
    catalan, count_unlinked, dg_experiment, enumerate_derangements, schroder, tables, Caps,
};
use crate::decide::{decide_unknot, CycleVerdict};
use crate::diagram::{
    crossings, ll_indices, seifert_circles, thurston_bennequin, ur_indices,
};
use crate::series::{f_cubic_residual, g_cubic_residual, series_f, series_g, series_g_fixpoint};
use crate::tree::{for_each_rotation_class, Path, SignedTree};

/// Largest tree size the bijection suite will exhaust: all signed trees
/// with this many nodes, closed under rotation.
const BIJECTION_NODE_CAP: usize = 8;
/// Largest `n` for the per-derangement diagram checks.
const TOPOLOGY_N_CAP: usize = 9;
/// Largest `n` the series suite re-counts by enumeration.
const SERIES_N_CAP: usize = 9;
/// Largest `n` for the displacement-slack comparison.
const DG_N_CAP: usize = 8;

/// One named check with its verdict and a human-readable summary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// All outcomes of one suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            let verdict = if check.passed { "ok" } else { "FAIL" };
            writeln!(f, "{verdict:<4} {}/{}: {}", self.suite, check.name, check.detail)?;
        }
        Ok(())
    }
}

struct Suite {
    report: SuiteReport,
}

impl Suite {
    fn new(name: &str) -> Suite {
        Suite {
            report: SuiteReport {
                suite: name.to_string(),
                checks: Vec::new(),
            },
        }
    }

    fn push(&mut self, name: &str, passed: bool, detail: String) {
        self.report.checks.push(CheckOutcome {
            name: name.to_string(),
            passed,
            detail,
        });
    }

    /// Standard phrasing: pass iff no failures among `items`.
    fn tally(&mut self, name: &str, failures: u64, items: u64, unit: &str) {
        let detail = if failures == 0 {
            format!("{items} {unit} checked")
        } else {
            format!("{failures} of {items} {unit} failed")
        };
        self.push(name, failures == 0, detail);
    }

    fn scope(&mut self, covered: usize, requested: usize, what: &str) {
        let detail = if covered < requested {
            format!("{what} <= {covered} (requested {requested}, clamped)")
        } else {
            format!("{what} <= {covered}")
        };
        self.push("scope", true, detail);
    }
}

/// A uniformly random order of `paths` in which every node appears after
/// its parent. Children of the root are ready immediately.
fn random_parent_closed_order(paths: &[Path], rng: &mut StdRng) -> Vec<Path> {
    let mut remaining: Vec<Path> = paths.to_vec();
    let mut chosen: BTreeSet<Path> = BTreeSet::new();
    let mut order = Vec::with_capacity(paths.len());
    while !remaining.is_empty() {
        let ready: Vec<usize> = (0..remaining.len())
            .filter(|&i| {
                let p = &remaining[i];
                p.len() == 1 || chosen.contains(&p[..p.len() - 1])
            })
            .collect();
        let pick = ready[rng.gen_range(0..ready.len())];
        let path = remaining.swap_remove(pick);
        chosen.insert(path.clone());
        order.push(path);
    }
    order
}

/// Checks the tree-to-cycle correspondence over every signed tree with up
/// to `max_nodes` nodes: class counts, rotation invariance, insertion-order
/// independence, the negation/inverse symmetry, and the decider round trip.
pub fn verify_bijection(max_nodes: usize) -> SuiteReport {
    let limit = max_nodes.min(BIJECTION_NODE_CAP).max(1);
    let mut suite = Suite::new("bijection");
    suite.scope(limit, max_nodes.max(1), "nodes");

    let mut class_count_bad: Vec<String> = Vec::new();
    let mut total_classes = 0u64;
    let (mut rotation_fail, mut rotation_items) = (0u64, 0u64);
    let (mut order_fail, mut order_items) = (0u64, 0u64);
    let (mut negate_fail, mut negate_items) = (0u64, 0u64);
    let (mut round_fail, mut round_items) = (0u64, 0u64);
    let mut normal_fail = 0u64;

    for nodes in 1..=limit {
        let mut classes_here = 0u64;
        for_each_rotation_class(nodes, |class| {
            classes_here += 1;
            total_classes += 1;
            let canonical: &SignedTree = &class.canonical;
            let cycle = canonical.to_cycle();

            for member in &class.members {
                rotation_items += 1;
                if member.to_cycle() != cycle {
                    rotation_fail += 1;
                }
            }

            if class
                .members
                .iter()
                .filter(|t| t.is_left_normal())
                .count()
                != 1
            {
                normal_fail += 1;
            }

            negate_items += 1;
            if canonical.negate().to_cycle() != cycle.inverse() {
                negate_fail += 1;
            }

            let paths = canonical.preorder_paths();
            let mut rng =
                StdRng::seed_from_u64(0x5eed_0000 ^ ((nodes as u64) << 32) ^ classes_here);
            for _ in 0..20 {
                order_items += 1;
                let order = random_parent_closed_order(&paths, &mut rng);
                match canonical.cycle_trace_with_order(&order) {
                    Some(trace) if trace.last() == Some(&cycle) => {}
                    _ => order_fail += 1,
                }
            }

            round_items += 1;
            match decide_unknot(&cycle) {
                Ok(CycleVerdict::Unknot { tree }) if tree == *canonical => {}
                _ => round_fail += 1,
            }
        });
        let want = schroder(nodes);
        if BigUint::from(classes_here) != want {
            class_count_bad.push(format!("{nodes} nodes: {classes_here} classes, want {want}"));
        }
    }

    suite.push(
        "class-counts",
        class_count_bad.is_empty(),
        if class_count_bad.is_empty() {
            format!("{total_classes} classes across sizes 1..={limit}")
        } else {
            class_count_bad.join("; ")
        },
    );
    suite.tally("rotation-invariance", rotation_fail, rotation_items, "trees");
    suite.tally("one-normal-form-per-class", normal_fail, total_classes, "classes");
    suite.tally("negate-is-inverse", negate_fail, negate_items, "classes");
    suite.tally("order-independence", order_fail, order_items, "random orders");
    suite.tally("decider-round-trip", round_fail, round_items, "cycles");
    suite.report
}

/// Checks the diagram invariants over every derangement of `[n]` for
/// `n <= max_n`: circle counts, the unique outermost circle, corner
/// distribution, crossing lower bounds, and the contact-geometry bound for
/// cycles the decider certifies unknotted.
pub fn verify_topology(max_n: usize, caps: &Caps) -> SuiteReport {
    let limit = max_n.min(caps.max_derangement_n).min(TOPOLOGY_N_CAP).max(1);
    let mut suite = Suite::new("topology");
    suite.scope(limit, max_n.max(1), "n");

    let mut derangements = 0u64;
    let mut seifert_fail = 0u64;
    let (mut maximal_fail, mut single_cycles) = (0u64, 0u64);
    let (mut corner_fail, mut circles_seen) = (0u64, 0u64);
    let (mut crossing_fail, mut stiff_cycles) = (0u64, 0u64);
    let (mut tb_fail, mut unknot_cycles) = (0u64, 0u64);

    for n in 2..=limit {
        enumerate_derangements(n, caps, |p| {
            derangements += 1;
            let ur = ur_indices(p);
            let ll = ll_indices(p);
            let dec = seifert_circles(p).expect("derangements have no fixed points");

            if dec.circle_count() != ur.len() {
                seifert_fail += 1;
            }
            // Uniqueness of the outermost circle needs a connected diagram:
            // side-by-side components give incomparable outermost circles.
            if p.is_single_cycle() {
                single_cycles += 1;
                if dec.maximal_circles().len() != 1 {
                    maximal_fail += 1;
                }
            }
            for circle in dec.circles() {
                circles_seen += 1;
                let diag = circle.diagonal_points();
                let urs = diag.iter().filter(|v| ur.contains(&(v.x as usize))).count();
                let lls = diag.iter().filter(|v| ll.contains(&(v.x as usize))).count();
                if urs != 1 || lls != 1 {
                    corner_fail += 1;
                }
            }

            if p.is_single_cycle() {
                if (1..=p.n()).all(|i| p.image(i).abs_diff(i) >= 2) {
                    stiff_cycles += 1;
                    if crossings(p).len() < ur.len() {
                        crossing_fail += 1;
                    }
                }
                if let Ok(CycleVerdict::Unknot { .. }) = decide_unknot(p) {
                    unknot_cycles += 1;
                    let tb = thurston_bennequin(p).expect("derangement");
                    if tb > -1 {
                        tb_fail += 1;
                    }
                }
            }
        })
        .expect("limit is within the enumeration cap");
    }

    suite.tally("circles-equal-ur-corners", seifert_fail, derangements, "derangements");
    suite.tally("unique-outermost-circle", maximal_fail, single_cycles, "cycles");
    suite.tally("one-ur-one-ll-per-circle", corner_fail, circles_seen, "circles");
    suite.tally(
        "crossings-at-least-circles",
        crossing_fail,
        stiff_cycles,
        "displacement>=2 cycles",
    );
    suite.tally("tb-at-most-minus-one", tb_fail, unknot_cycles, "unknotted cycles");
    suite.report
}

/// Checks the two generating series against brute-force enumeration and
/// their defining cubics: component strata, the row sums with fixed points
/// counted, the Catalan diagonal, and agreement between the two independent
/// constructions of the second series.
pub fn verify_series(max_n: usize, caps: &Caps) -> SuiteReport {
    let mut suite = Suite::new("series");
    let f_limit = max_n.min(caps.max_derangement_n).min(SERIES_N_CAP).max(1);
    let g_limit = max_n.min(caps.max_full_perm_n).min(SERIES_N_CAP).max(1);
    suite.scope(f_limit.max(g_limit), max_n.max(1), "n");

    let f = match series_f(20) {
        Ok(f) => f,
        Err(e) => {
            suite.push("first-series", false, format!("construction failed: {e}"));
            return suite.report;
        }
    };
    let g = match series_g(12.max(g_limit)) {
        Ok(g) => g,
        Err(e) => {
            suite.push("second-series", false, format!("construction failed: {e}"));
            return suite.report;
        }
    };

    let (mut f_fail, mut f_rows) = (0u64, 0u64);
    for n in 1..=f_limit {
        f_rows += 1;
        let row = count_unlinked(n, false, caps).expect("within caps");
        let ok = (0..=n + 1).all(|k| {
            let want = row.by_components.get(k).cloned().unwrap_or_else(BigUint::zero);
            f.coefficient(k, n) == want.into()
        });
        if !ok {
            f_fail += 1;
        }
    }
    suite.tally("first-series-vs-enumeration", f_fail, f_rows, "rows");

    let (mut g_fail, mut g_rows) = (0u64, 0u64);
    for n in 1..=g_limit {
        g_rows += 1;
        let row = count_unlinked(n, true, caps).expect("within caps");
        let ok = (0..=n + 1).all(|k| {
            let want = row.by_components.get(k).cloned().unwrap_or_else(BigUint::zero);
            g.coefficient(k, n) == want.into()
        });
        if !ok {
            g_fail += 1;
        }
    }
    suite.tally("second-series-vs-enumeration", g_fail, g_rows, "rows");

    let g9 = series_g(9).expect("constructed above at a higher truncation");
    let u1 = g9.at_u_one();
    let fixture_ok = (1..=9).all(|n| u1[n] == tables::UNLINKED_WITH_FIXED[n - 1].into());
    suite.push(
        "second-series-row-sums",
        fixture_ok,
        if fixture_ok {
            "rows 1..=9 at u=1 match the frozen totals".to_string()
        } else {
            format!(
                "row sums {:?} differ from {:?}",
                &u1[1..],
                tables::UNLINKED_WITH_FIXED
            )
        },
    );

    let f_res = f_cubic_residual(&f);
    suite.push(
        "first-series-cubic",
        f_res.is_zero(),
        if f_res.is_zero() {
            "defining cubic vanishes through degree 20".to_string()
        } else {
            format!(
                "residual first nonzero at x^{}",
                f_res.first_nonzero_degree().unwrap_or(0)
            )
        },
    );
    let g_res = g_cubic_residual(&g);
    suite.push(
        "second-series-cubic",
        g_res.is_zero(),
        if g_res.is_zero() {
            format!("defining cubic vanishes through degree {}", g.truncation())
        } else {
            format!(
                "residual first nonzero at x^{}",
                g_res.first_nonzero_degree().unwrap_or(0)
            )
        },
    );

    let (mut catalan_fail, mut catalan_rows) = (0u64, 0u64);
    for n in 1..=5usize {
        catalan_rows += 1;
        if f.coefficient(n, 2 * n) != catalan(n).into() {
            catalan_fail += 1;
        }
    }
    suite.tally("catalan-diagonal", catalan_fail, catalan_rows, "diagonal entries");

    let fix_ok = series_g_fixpoint(12) == series_g(12).expect("constructed above");
    suite.push(
        "second-series-two-constructions",
        fix_ok,
        if fix_ok {
            "root extraction and substitution fixpoint agree through degree 12".to_string()
        } else {
            "root extraction and substitution fixpoint disagree".to_string()
        },
    );
    suite.report
}

/// Compares, for each `n` up to `max_n`, the permutations with zero
/// displacement slack against the unlinked ones. Equality is reported; a
/// difference is reported as a finding with example permutations, not as a
/// failure.
pub fn verify_dg(max_n: usize, caps: &Caps) -> SuiteReport {
    let limit = max_n.min(caps.max_full_perm_n).min(DG_N_CAP).max(1);
    let mut suite = Suite::new("dg");
    suite.scope(limit, max_n.max(1), "n");

    let mut tally_fail = 0u64;
    let mut lines = Vec::new();
    let mut all_coincide = true;
    for n in 1..=limit {
        let report = dg_experiment(n, caps).expect("limit is within the enumeration cap");
        if report.zero_gap != &report.both + &report.only_zero_gap
            || report.unlinked != &report.both + &report.only_unlinked
        {
            tally_fail += 1;
        }
        if !report.sets_coincide() {
            all_coincide = false;
            lines.push(format!("FINDING: {report}"));
        }
    }
    suite.tally("tallies-consistent", tally_fail, limit as u64, "sizes");
    suite.push(
        "sets-compared",
        true,
        if all_coincide {
            format!("zero-slack and unlinked coincide for every n <= {limit}")
        } else {
            lines.join("; ")
        },
    );
    suite.report
}

/// Runs every suite sized for cycles of length up to `max_n`.
pub fn verify_all(max_n: usize, caps: &Caps) -> Vec<SuiteReport> {
    vec![
        verify_bijection(max_n.saturating_sub(1).max(1)),
        verify_topology(max_n, caps),
        verify_series(max_n, caps),
        verify_dg(max_n, caps),
    ]
}
