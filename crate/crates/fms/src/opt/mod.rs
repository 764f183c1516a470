//! The optimization pass suite and its fixpoint driver.
//!
//! Each round runs stratification, inlining, boolean simplification and
//! constant folding with beta reduction, in that order: stratification
//! exposes single-use bindings, inlining exposes redexes, and folding exposes
//! boolean literals. Rounds repeat until one makes no rewrite or the round
//! cap is hit, in which case the result carries a warning flag.

mod boolsimp;
mod fold;
mod inline;
mod stratify;

pub use boolsimp::simplify_bool;
pub use fold::fold_and_beta;
pub use inline::inline;
pub use stratify::stratify;

use crate::desugar::CtorTable;
use crate::ir::{alpha_equal, Expr, NameSupply};
use crate::types::check_preservation;
use thiserror::Error;

pub const DEFAULT_MAX_ROUNDS: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PassReport {
    pub pass: &'static str,
    pub round: usize,
    pub rewrites: usize,
    pub size_before: usize,
    pub size_after: usize,
}

#[derive(Debug, Clone)]
pub struct OptOutcome {
    pub expr: Expr,
    pub reports: Vec<PassReport>,
    /// True when the driver stopped at the round cap instead of a fixpoint.
    pub hit_round_cap: bool,
}

#[derive(Debug, Error)]
pub enum OptError {
    #[error("optimization pass `{pass}` broke type preservation: {detail}")]
    TypeRegression { pass: &'static str, detail: String },
}

#[derive(Debug, Clone)]
pub struct OptOptions {
    pub max_rounds: usize,
    /// Re-run type inference after every pass (debug mode).
    pub debug_check: bool,
}

impl Default for OptOptions {
    fn default() -> Self {
        OptOptions {
            max_rounds: DEFAULT_MAX_ROUNDS,
            debug_check: false,
        }
    }
}

pub fn optimize_fixpoint(
    e: &Expr,
    supply: &mut NameSupply,
    ctors: &CtorTable,
    options: &OptOptions,
) -> Result<OptOutcome, OptError> {
    let mut current = e.clone();
    let mut reports = Vec::new();
    let mut hit_round_cap = true;

    for round in 1..=options.max_rounds.max(1) {
        let mut round_rewrites = 0;
        type Pass<'s> = (&'static str, Box<dyn FnMut(&Expr) -> (Expr, usize) + 's>);
        let supply_cell = std::cell::RefCell::new(&mut *supply);
        let passes: Vec<Pass> = vec![
            ("stratify", Box::new(|x: &Expr| stratify(x))),
            (
                "inline",
                Box::new(|x: &Expr| inline(x, &mut supply_cell.borrow_mut())),
            ),
            (
                "simplify_bool",
                Box::new(|x: &Expr| simplify_bool(x, &mut supply_cell.borrow_mut())),
            ),
            (
                "fold_and_beta",
                Box::new(|x: &Expr| fold_and_beta(x, &mut supply_cell.borrow_mut())),
            ),
        ];
        for (name, mut pass) in passes {
            let size_before = current.node_count();
            let (next, rewrites) = pass(&current);
            debug_assert!(rewrites > 0 || alpha_equal(&current, &next));
            if options.debug_check && !check_preservation(&current, &next, ctors) {
                let detail = crate::types::infer(&next, ctors)
                    .err()
                    .map(|e| e.to_string())
                    .unwrap_or_default();
                return Err(OptError::TypeRegression { pass: name, detail });
            }
            reports.push(PassReport {
                pass: name,
                round,
                rewrites,
                size_before,
                size_after: next.node_count(),
            });
            round_rewrites += rewrites;
            current = next;
        }
        if round_rewrites == 0 {
            hit_round_cap = false;
            break;
        }
    }

    Ok(OptOutcome {
        expr: current,
        reports,
        hit_round_cap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::desugar::desugar;
    use crate::eval::{eval_closed, Value};
    use crate::ir::{parse_core, pretty};
    use crate::syntax::parse;

    fn optimize(src: &str) -> OptOutcome {
        let e = parse_core(src).unwrap();
        let mut supply = NameSupply::new();
        optimize_fixpoint(&e, &mut supply, &CtorTable::new(), &OptOptions::default()).unwrap()
    }

    #[test]
    fn chained_example_reaches_literal_nine() {
        let out = optimize("(\\x -> x + 4) ((\\x -> 5) 0)");
        assert!(alpha_equal(&out.expr, &parse_core("9").unwrap()));
        let rounds_used = out.reports.iter().map(|r| r.round).max().unwrap();
        // fixpoint in at most two working rounds plus the empty closing round
        assert!(rounds_used <= 3, "took {rounds_used} rounds");
        assert!(!out.hit_round_cap);
    }

    #[test]
    fn literal_is_already_optimal() {
        let out = optimize("5");
        assert!(alpha_equal(&out.expr, &parse_core("5").unwrap()));
        assert!(out.reports.iter().all(|r| r.rewrites == 0));
    }

    #[test]
    fn graph_coloring_reaches_fixpoint_with_non_increasing_size() {
        let src = r#"
borders := {("a","b"), ("b","c"), ("c","a")}.
colors := {1..3}.
colorof/1 :: function to colors.
! borders (\(x,y) -> colorof x ~= colorof y).
"#;
        let d = desugar(&parse(src).unwrap()).unwrap();
        let mut supply = d.supply.clone();
        let out = optimize_fixpoint(
            &d.core,
            &mut supply,
            &d.ctors,
            &OptOptions {
                max_rounds: 10,
                debug_check: true,
            },
        )
        .unwrap();
        assert!(!out.hit_round_cap);
        // node counts never increase across a round boundary
        let mut per_round: Vec<(usize, usize)> = Vec::new();
        for r in &out.reports {
            if per_round.len() < r.round {
                per_round.push((r.size_before, r.size_after));
            } else {
                per_round[r.round - 1].1 = r.size_after;
            }
        }
        for w in per_round.windows(2) {
            assert!(w[1].1 <= w[0].1, "sizes {per_round:?}");
        }
    }

    #[test]
    fn declarations_survive_optimization() {
        let src = "c :: element of {1..2}. c = 1.";
        let d = desugar(&parse(src).unwrap()).unwrap();
        let mut supply = d.supply.clone();
        let out = optimize_fixpoint(
            &d.core,
            &mut supply,
            &d.ctors,
            &OptOptions::default(),
        )
        .unwrap();
        assert!(out.expr.has_choice_marker(), "{}", pretty(&out.expr));
        assert!(out.expr.has_output());
    }

    #[test]
    fn optimization_preserves_evaluation_on_samples() {
        let samples = [
            "c := 4. c = 4.",
            "x := {1..3}. ? x (\\y -> y = 5).",
            "prime x := ! {2..x-1} (\\y -> x % y > 0). prime 13.",
            "f 1 := 0. f x := 1. f 5 = 1 & f 1 = 0.",
            "e := even c. c := 4. even x := x % 2 = 0. e.",
        ];
        for src in samples {
            let d = desugar(&parse(src).unwrap()).unwrap();
            let before = eval_closed(&d.core).unwrap();
            let mut supply = d.supply.clone();
            let out = optimize_fixpoint(
                &d.core,
                &mut supply,
                &d.ctors,
                &OptOptions {
                    max_rounds: 10,
                    debug_check: true,
                },
            )
            .unwrap();
            let after = eval_closed(&out.expr).unwrap();
            assert_eq!(
                before.0.try_eq(&after.0),
                Some(true),
                "{src} changed value: {} vs {}",
                before.0,
                after.0
            );
            // output channels agree as multisets of printable entries
            let mut b: Vec<String> = before
                .1
                .iter()
                .map(|(l, v)| format!("{l}={v}"))
                .collect();
            let mut a: Vec<String> =
                after.1.iter().map(|(l, v)| format!("{l}={v}")).collect();
            b.sort();
            a.sort();
            assert_eq!(b, a, "{src} changed the output channel");
        }
    }

    #[test]
    fn round_cap_is_reported() {
        // With a cap of 1 round on an expression that needs two, the driver
        // stops and says so.
        let e = parse_core("(\\x -> x + 4) ((\\x -> 5) 0)").unwrap();
        let mut supply = NameSupply::new();
        let out = optimize_fixpoint(
            &e,
            &mut supply,
            &CtorTable::new(),
            &OptOptions {
                max_rounds: 1,
                debug_check: false,
            },
        )
        .unwrap();
        assert!(out.hit_round_cap);
    }
}
