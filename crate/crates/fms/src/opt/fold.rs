//! Constant folding and beta reduction.
//!
//! Builtin applications with fully known arguments are replaced by their
//! value, if-then-else collapses on a literal condition, case expressions
//! reduce when the scrutinee's shape is statically known, and beta redexes
//! are contracted when the argument is cheap or the parameter is used at
//! most once. Division by zero is never folded; it is left for the runtime
//! or the solver. Output annotations block folding through them (their label
//! must survive), but folding inside them is fine.

use crate::ir::{
    count_occurrences, substitute, BuiltinSym, Expr, ExprKind, Literal, NameSupply, Pattern,
};

pub fn fold_and_beta(e: &Expr, supply: &mut NameSupply) -> (Expr, usize) {
    let mut count = 0;
    let out = go(e, supply, &mut count);
    (out, count)
}

fn go(e: &Expr, supply: &mut NameSupply, count: &mut usize) -> Expr {
    let e = map_children(e, &mut |child| go(child, supply, count));
    match rewrite_root(&e, supply) {
        Some(next) => {
            *count += 1;
            go(&next, supply, count)
        }
        None => e,
    }
}

fn map_children(e: &Expr, f: &mut impl FnMut(&Expr) -> Expr) -> Expr {
    let kind = match &e.kind {
        ExprKind::Var(_) | ExprKind::Lit(_) | ExprKind::Builtin(_) => e.kind.clone(),
        ExprKind::App(a, b) => ExprKind::App(Box::new(f(a)), Box::new(f(b))),
        ExprKind::Lam(p, b) => ExprKind::Lam(p.clone(), Box::new(f(b))),
        ExprKind::Let(bs, body) => ExprKind::Let(
            bs.iter()
                .map(|b| crate::ir::Binding {
                    name: b.name.clone(),
                    value: f(&b.value),
                    hint: b.hint,
                })
                .collect(),
            Box::new(f(body)),
        ),
        ExprKind::Case(scrut, arms) => ExprKind::Case(
            Box::new(f(scrut)),
            arms.iter().map(|(p, b)| (p.clone(), f(b))).collect(),
        ),
        ExprKind::SetLit(es) => ExprKind::SetLit(es.iter().map(&mut *f).collect()),
        ExprKind::Herb(tag, es) => ExprKind::Herb(tag.clone(), es.iter().map(&mut *f).collect()),
        ExprKind::Output(label, inner) => ExprKind::Output(label.clone(), Box::new(f(inner))),
    };
    Expr::new(kind, e.loc)
}

/// A ground first-order value: literal, boolean, or constructor tree of
/// ground values. Sets and functions are excluded.
fn ground_value(e: &Expr) -> bool {
    match &e.kind {
        ExprKind::Lit(_) => true,
        ExprKind::Herb(_, args) => args.iter().all(ground_value),
        _ => false,
    }
}

fn int_of(e: &Expr) -> Option<i64> {
    match &e.kind {
        ExprKind::Lit(Literal::Int(n)) => Some(*n),
        _ => None,
    }
}

fn rewrite_root(e: &Expr, supply: &mut NameSupply) -> Option<Expr> {
    // Beta reduction: (\x -> b) a
    if let ExprKind::App(f, a) = &e.kind {
        if let ExprKind::Lam(param, body) = &f.kind {
            let uses = count_occurrences(body, param);
            let cheap = matches!(
                a.kind,
                ExprKind::Var(_) | ExprKind::Lit(_) | ExprKind::Builtin(_)
            );
            let droppable = !a.has_output() && !a.has_choice_marker();
            if (cheap || uses <= 1) && (uses >= 1 || droppable) {
                return Some(substitute(body, param, a, supply));
            }
        }
    }

    if let Some((sym, args)) = e.builtin_call() {
        use BuiltinSym::*;
        match sym {
            Add | Sub | Mul | Div | Mod => {
                let (a, b) = (int_of(args[0])?, int_of(args[1])?);
                let r = match sym {
                    Add => a.checked_add(b),
                    Sub => a.checked_sub(b),
                    Mul => a.checked_mul(b),
                    // division by zero is left in place
                    Div => (b != 0).then(|| a.checked_div(b)).flatten(),
                    Mod => (b != 0).then(|| a.checked_rem(b)).flatten(),
                    _ => unreachable!(),
                }?;
                return Some(Expr::int(r));
            }
            Lt | Le | Gt | Ge => {
                let (a, b) = (int_of(args[0])?, int_of(args[1])?);
                let r = match sym {
                    Lt => a < b,
                    Le => a <= b,
                    Gt => a > b,
                    Ge => a >= b,
                    _ => unreachable!(),
                };
                return Some(Expr::bool_const(r));
            }
            Eq | Neq => {
                if ground_value(args[0]) && ground_value(args[1]) {
                    let eq = args[0].kind == args[1].kind;
                    return Some(Expr::bool_const(if sym == Eq { eq } else { !eq }));
                }
                None
            }
            And | Or | Implies | Iff => {
                let (a, b) = (args[0].as_bool_const()?, args[1].as_bool_const()?);
                let r = match sym {
                    And => a && b,
                    Or => a || b,
                    Implies => !a || b,
                    Iff => a == b,
                    _ => unreachable!(),
                };
                return Some(Expr::bool_const(r));
            }
            Not => Some(Expr::bool_const(!args[0].as_bool_const()?)),
            Ite => match args[0].as_bool_const()? {
                true => Some(args[1].clone()),
                false => Some(args[2].clone()),
            },
            Card => {
                let ExprKind::SetLit(items) = &args[0].kind else { return None };
                if !items.iter().all(ground_value) {
                    return None;
                }
                let mut distinct: Vec<&Expr> = Vec::new();
                for item in items {
                    if !distinct.iter().any(|d| d.kind == item.kind) {
                        distinct.push(item);
                    }
                }
                Some(Expr::int(distinct.len() as i64))
            }
            MemberOf => {
                let ExprKind::SetLit(items) = &args[1].kind else { return None };
                if !ground_value(args[0]) || !items.iter().all(ground_value) {
                    return None;
                }
                let found = items.iter().any(|i| i.kind == args[0].kind);
                Some(Expr::bool_const(found))
            }
            TupleCons(n) => {
                // A saturated tuple constructor is just a tuple.
                let items: Vec<Expr> = args.iter().map(|a| (*a).clone()).collect();
                debug_assert_eq!(items.len(), n as usize);
                Some(Expr::tuple(items))
            }
            _ => None,
        }
    } else if let ExprKind::Case(scrut, arms) = &e.kind {
        reduce_case(scrut, arms, supply)
    } else {
        None
    }
}

enum StaticMatch {
    Yes(Vec<(crate::ir::Name, Expr)>),
    No,
    Unknown,
}

/// Decide a pattern against a scrutinee expression statically, when possible.
fn match_static(pat: &Pattern, scrut: &Expr) -> StaticMatch {
    match pat {
        Pattern::Wildcard => StaticMatch::Yes(vec![]),
        Pattern::Var(n) => StaticMatch::Yes(vec![(n.clone(), scrut.clone())]),
        Pattern::Lit(l) => match &scrut.kind {
            ExprKind::Lit(sl) => {
                if sl == l {
                    StaticMatch::Yes(vec![])
                } else {
                    StaticMatch::No
                }
            }
            ExprKind::Herb(..) => StaticMatch::No,
            _ => StaticMatch::Unknown,
        },
        Pattern::Ctor(tag, subs) => match &scrut.kind {
            ExprKind::Herb(stag, sargs) => {
                if stag != tag || sargs.len() != subs.len() {
                    return StaticMatch::No;
                }
                let mut binds = Vec::new();
                for (p, a) in subs.iter().zip(sargs) {
                    match match_static(p, a) {
                        StaticMatch::Yes(mut b) => binds.append(&mut b),
                        StaticMatch::No => return StaticMatch::No,
                        StaticMatch::Unknown => return StaticMatch::Unknown,
                    }
                }
                StaticMatch::Yes(binds)
            }
            ExprKind::Lit(_) => StaticMatch::No,
            _ => StaticMatch::Unknown,
        },
    }
}

fn reduce_case(
    scrut: &Expr,
    arms: &[(Pattern, Expr)],
    supply: &mut NameSupply,
) -> Option<Expr> {
    // Only reduce on scrutinees that cannot hide computation.
    if !matches!(scrut.kind, ExprKind::Lit(_) | ExprKind::Herb(..)) {
        return None;
    }
    for (pat, body) in arms {
        match match_static(pat, scrut) {
            StaticMatch::No => continue,
            StaticMatch::Unknown => return None,
            StaticMatch::Yes(binds) => {
                // Substituting each bound argument must not duplicate work.
                let safe = binds.iter().all(|(n, v)| {
                    matches!(
                        v.kind,
                        ExprKind::Var(_) | ExprKind::Lit(_) | ExprKind::Builtin(_)
                    ) || ground_value(v)
                        || count_occurrences(body, n) <= 1
                });
                if !safe {
                    return None;
                }
                let mut out = body.clone();
                for (n, v) in binds {
                    out = substitute(&out, &n, &v, supply);
                }
                return Some(out);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::{alpha_equal, parse_core, pretty};

    fn folded(src: &str) -> Expr {
        let mut supply = NameSupply::new();
        fold_and_beta(&parse_core(src).unwrap(), &mut supply).0
    }

    fn assert_folds(src: &str, expected: &str) {
        let got = folded(src);
        let want = parse_core(expected).unwrap();
        assert!(
            alpha_equal(&got, &want),
            "{src}\n  got:      {}\n  expected: {expected}",
            pretty(&got)
        );
    }

    #[test]
    fn chained_beta_and_folding_reaches_nine() {
        assert_folds("(\\x -> x + 4) ((\\x -> 5) a)", "9");
    }

    #[test]
    fn literal_conditionals_collapse() {
        assert_folds("if true then a else b", "a");
        assert_folds("if false then a else b", "b");
    }

    #[test]
    fn arithmetic_folds() {
        assert_folds("2 * 3", "6");
        assert_folds("2 * 3 + 10 / 2", "11");
        assert_folds("1 < 2", "true");
    }

    #[test]
    fn division_by_zero_is_not_folded() {
        assert_folds("1 / 0", "1 / 0");
        assert_folds("5 % 0", "5 % 0");
    }

    #[test]
    fn ground_equality_folds() {
        assert_folds("(1, \"a\") = (1, \"a\")", "true");
        assert_folds("s[nil[]] ~= nil[]", "true");
        // non-ground operands stay
        assert_folds("x = 1", "x = 1");
    }

    #[test]
    fn case_on_known_constructor_reduces() {
        assert_folds("case s[nil[]] of s[a] -> a; nil[] -> nil[]", "nil[]");
        assert_folds("case 1 of 1 -> 10; x -> 20", "10");
        assert_folds("case 3 of 1 -> 10; x -> x + 1", "4");
    }

    #[test]
    fn case_with_unknown_scrutinee_stays() {
        let src = "\\y -> case y of 1 -> 10; x -> 20";
        assert_folds(src, src);
    }

    #[test]
    fn beta_guard_respects_duplication() {
        // argument is an application used twice: not reduced
        let src = "\\f -> \\a -> (\\x -> x + x) (f a)";
        assert_folds(src, src);
        // variable argument duplicates fine
        assert_folds("\\a -> (\\x -> x + x) a", "\\a -> a + a");
    }

    #[test]
    fn output_labels_block_folding_through_but_not_inside() {
        assert_folds("4 + outputexp(\"a\", 5)", "4 + outputexp(\"a\", 5)");
        assert_folds("outputexp(\"a\", 2 + 3)", "outputexp(\"a\", 5)");
        // an unused argument that carries an output is not erased
        let src = "(\\x -> 1) (outputexp(\"a\", 5))";
        assert_folds(src, src);
    }

    #[test]
    fn cardinality_of_ground_sets_folds() {
        assert_folds("card {1, 2, 2, 3}", "3");
        assert_folds("card {x, 1}", "card {x, 1}");
        assert_folds("member 2 {1, 2}", "true");
    }

    #[test]
    fn ranges_never_fold_to_enumerations() {
        assert_folds("{1..3}", "{1..3}");
    }
}
