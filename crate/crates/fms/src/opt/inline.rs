//! Inlining: replace let-bound symbols with their definitions when that can
//! only help.
//!
//! A binding is inlined when it has exactly one usage, when its definition is
//! a constant integer or string, or when it carries an `inline` directive.
//! `noinline` bindings and bindings holding choice markers are left alone.
//! Large definitions whose single use sits under a quantified lambda stay
//! put: inlining there duplicates work at grounding time.

use crate::ir::{
    count_occurrences, free_vars, substitute, Binding, BuiltinSym, Expr, ExprKind, InlineHint,
    Literal, Name, NameSupply,
};

/// Definitions larger than this never inline into a quantified lambda.
const SIZE_GUARD: usize = 25;

pub fn inline(e: &Expr, supply: &mut NameSupply) -> (Expr, usize) {
    let mut count = 0;
    let out = go(e, supply, &mut count);
    (out, count)
}

fn go(e: &Expr, supply: &mut NameSupply, count: &mut usize) -> Expr {
    let kind = match &e.kind {
        ExprKind::Let(..) => {
            return rebuild_let(e, supply, count);
        }
        ExprKind::App(f, a) => ExprKind::App(
            Box::new(go(f, supply, count)),
            Box::new(go(a, supply, count)),
        ),
        ExprKind::Lam(p, b) => ExprKind::Lam(p.clone(), Box::new(go(b, supply, count))),
        ExprKind::Case(scrut, arms) => ExprKind::Case(
            Box::new(go(scrut, supply, count)),
            arms.iter()
                .map(|(p, b)| (p.clone(), go(b, supply, count)))
                .collect(),
        ),
        ExprKind::SetLit(es) => {
            ExprKind::SetLit(es.iter().map(|x| go(x, supply, count)).collect())
        }
        ExprKind::Herb(tag, es) => ExprKind::Herb(
            tag.clone(),
            es.iter().map(|x| go(x, supply, count)).collect(),
        ),
        ExprKind::Output(label, inner) => {
            ExprKind::Output(label.clone(), Box::new(go(inner, supply, count)))
        }
        ExprKind::Var(_) | ExprKind::Lit(_) | ExprKind::Builtin(_) => e.kind.clone(),
    };
    Expr::new(kind, e.loc)
}

fn rebuild_let(e: &Expr, supply: &mut NameSupply, count: &mut usize) -> Expr {
    let ExprKind::Let(bindings, body) = &e.kind else { unreachable!() };
    let mut bindings: Vec<Binding> = bindings
        .iter()
        .map(|b| Binding {
            name: b.name.clone(),
            value: go(&b.value, supply, count),
            hint: b.hint,
        })
        .collect();
    let mut body = go(body, supply, count);

    loop {
        let Some(idx) = pick_inline_candidate(&bindings, &body) else { break };
        let binding = bindings.remove(idx);
        for other in &mut bindings {
            other.value = substitute(&other.value, &binding.name, &binding.value, supply);
        }
        body = substitute(&body, &binding.name, &binding.value, supply);
        *count += 1;
    }

    if bindings.is_empty() {
        body
    } else {
        Expr::new(ExprKind::Let(bindings, Box::new(body)), e.loc)
    }
}

fn pick_inline_candidate(bindings: &[Binding], body: &Expr) -> Option<usize> {
    for (i, b) in bindings.iter().enumerate() {
        if b.hint == InlineHint::Never || b.value.has_choice_marker() {
            continue;
        }
        // Self-recursive definitions cannot be inlined.
        if free_vars(&b.value).contains(&b.name) {
            continue;
        }
        if b.hint == InlineHint::Always || is_constant(&b.value) {
            return Some(i);
        }
        let uses = usage_count(bindings, body, i);
        if uses == 1
            && !(b.value.node_count() > SIZE_GUARD
                && sole_use_under_quantified_lambda(bindings, body, &b.name))
        {
            return Some(i);
        }
    }
    None
}

fn is_constant(e: &Expr) -> bool {
    matches!(e.kind, ExprKind::Lit(Literal::Int(_)) | ExprKind::Lit(Literal::Str(_)))
}

fn usage_count(bindings: &[Binding], body: &Expr, idx: usize) -> usize {
    let name = &bindings[idx].name;
    let mut n = count_occurrences(body, name);
    for (j, other) in bindings.iter().enumerate() {
        if j != idx {
            n += count_occurrences(&other.value, name);
        }
    }
    n
}

fn sole_use_under_quantified_lambda(bindings: &[Binding], body: &Expr, name: &Name) -> bool {
    bindings
        .iter()
        .map(|b| &b.value)
        .chain(std::iter::once(body))
        .any(|e| occurs_under_quantified_lambda(e, name, false))
}

/// Does `name` occur inside a lambda that is an argument to a quantifier
/// (`!`, `?`) or `bind`?
fn occurs_under_quantified_lambda(e: &Expr, name: &Name, inside: bool) -> bool {
    if inside && matches!(&e.kind, ExprKind::Var(n) if n == name) {
        return true;
    }
    match &e.kind {
        ExprKind::Var(_) | ExprKind::Lit(_) | ExprKind::Builtin(_) => false,
        ExprKind::App(..) => {
            if let Some((sym, args)) = e.builtin_call() {
                if matches!(
                    sym,
                    BuiltinSym::Forall | BuiltinSym::Exists | BuiltinSym::Bind
                ) {
                    let (set_arg, pred_arg) = (args[0], args[1]);
                    let pred_inside =
                        inside || matches!(pred_arg.kind, ExprKind::Lam(..));
                    return occurs_under_quantified_lambda(set_arg, name, inside)
                        || occurs_under_quantified_lambda(pred_arg, name, pred_inside);
                }
            }
            let ExprKind::App(f, a) = &e.kind else { unreachable!() };
            occurs_under_quantified_lambda(f, name, inside)
                || occurs_under_quantified_lambda(a, name, inside)
        }
        ExprKind::Lam(p, b) => {
            p != name && occurs_under_quantified_lambda(b, name, inside)
        }
        ExprKind::Let(bs, b) => {
            if bs.iter().any(|x| &x.name == name) {
                return false;
            }
            bs.iter()
                .any(|x| occurs_under_quantified_lambda(&x.value, name, inside))
                || occurs_under_quantified_lambda(b, name, inside)
        }
        ExprKind::Case(scrut, arms) => {
            occurs_under_quantified_lambda(scrut, name, inside)
                || arms.iter().any(|(p, b)| {
                    !p.bound_names().contains(name)
                        && occurs_under_quantified_lambda(b, name, inside)
                })
        }
        ExprKind::SetLit(es) | ExprKind::Herb(_, es) => es
            .iter()
            .any(|x| occurs_under_quantified_lambda(x, name, inside)),
        ExprKind::Output(_, inner) => occurs_under_quantified_lambda(inner, name, inside),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::{alpha_equal, parse_core, pretty};

    fn inlined(src: &str) -> (Expr, usize) {
        let mut supply = NameSupply::new();
        inline(&parse_core(src).unwrap(), &mut supply)
    }

    #[test]
    fn single_use_is_inlined() {
        let (got, n) = inlined("\\x -> let y := 2 * x in y + 5");
        assert_eq!(n, 1);
        assert!(
            alpha_equal(&got, &parse_core("\\x -> 2 * x + 5").unwrap()),
            "got {}",
            pretty(&got)
        );
    }

    #[test]
    fn double_use_of_expensive_definition_is_kept() {
        let src = "\\f -> \\x -> let y := f x in y + y";
        let (got, n) = inlined(src);
        assert_eq!(n, 0);
        assert!(alpha_equal(&got, &parse_core(src).unwrap()));
    }

    #[test]
    fn constants_always_inline() {
        let (got, _) = inlined("let k := 7 in k + k");
        assert!(alpha_equal(&got, &parse_core("7 + 7").unwrap()));
        let (got, _) = inlined("let k := \"a\" in k = k");
        assert!(alpha_equal(&got, &parse_core("\"a\" = \"a\"").unwrap()));
    }

    #[test]
    fn directives_override_the_heuristics() {
        // noinline: single use stays put
        let src = "\\x -> let y := 2 * x in y + 5";
        let mut e = parse_core(src).unwrap();
        if let ExprKind::Lam(_, body) = &mut e.kind {
            if let ExprKind::Let(bs, _) = &mut body.kind {
                bs[0].hint = InlineHint::Never;
            }
        }
        let mut supply = NameSupply::new();
        let (got, n) = inline(&e, &mut supply);
        assert_eq!(n, 0);
        assert!(alpha_equal(&got, &e));
    }

    #[test]
    fn choice_markers_are_never_inlined() {
        let src = "let c := chooseElement {1, 2} in c = 1";
        let (got, n) = inlined(src);
        assert_eq!(n, 0);
        assert!(alpha_equal(&got, &parse_core(src).unwrap()));
    }

    #[test]
    fn self_recursive_bindings_stay() {
        let src = "let f := \\x -> if x = 0 then 0 else f (x - 1) in f";
        let (got, _) = inlined(src);
        // f is used once in the body but is recursive, so it must stay bound.
        assert!(alpha_equal(&got, &parse_core(src).unwrap()));
    }

    #[test]
    fn size_guard_blocks_single_use_under_quantifier() {
        // A big definition used once inside a quantified lambda stays put.
        let big = "\\x -> x + 1 + 2 + 3 + 4 + 5 + 6 + 7 + 8 + 9 + 10 + 11 + 12 + 13";
        let src = format!("let f := {big} in ! {{1, 2}} (\\v -> f v > 0)");
        let (got, n) = inlined(&src);
        assert_eq!(n, 0, "got {}", pretty(&got));
    }
}
