//! Boolean simplification: negation pushing and the standard identity and
//! annihilator laws, applied bottom-up to a fixpoint.
//!
//! Annihilator rules (`x & false`, `x | true`, ...) only drop the dead
//! operand when it carries no output annotation or choice marker.

use crate::ir::{BuiltinSym, Expr, ExprKind, GenCat, Name, NameSupply};

pub fn simplify_bool(e: &Expr, supply: &mut NameSupply) -> (Expr, usize) {
    let mut count = 0;
    let out = go(e, supply, &mut count);
    (out, count)
}

fn go(e: &Expr, supply: &mut NameSupply, count: &mut usize) -> Expr {
    let simplified_children = map_children(e, &mut |child| go(child, supply, count));
    match rewrite_root(&simplified_children, supply) {
        Some(next) => {
            *count += 1;
            go(&next, supply, count)
        }
        None => simplified_children,
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

/// Can this subexpression be discarded without losing observable structure?
fn droppable(e: &Expr) -> bool {
    !e.has_output() && !e.has_choice_marker()
}

fn rewrite_root(e: &Expr, supply: &mut NameSupply) -> Option<Expr> {
    let (sym, args) = e.builtin_call()?;
    use BuiltinSym::*;
    match sym {
        Not => {
            let inner = args[0];
            if let Some(b) = inner.as_bool_const() {
                return Some(Expr::bool_const(!b));
            }
            if let Some((isym, iargs)) = inner.builtin_call() {
                match isym {
                    // not (not x) -> x
                    Not => return Some(iargs[0].clone()),
                    // De Morgan, toward negation normal form
                    And => {
                        return Some(Expr::call(
                            Or,
                            [neg(iargs[0].clone()), neg(iargs[1].clone())],
                        ))
                    }
                    Or => {
                        return Some(Expr::call(
                            And,
                            [neg(iargs[0].clone()), neg(iargs[1].clone())],
                        ))
                    }
                    // not (a => b) -> a & not b
                    Implies => {
                        return Some(Expr::call(
                            And,
                            [iargs[0].clone(), neg(iargs[1].clone())],
                        ))
                    }
                    // negation pushes through quantifiers
                    Forall | Exists => {
                        let dual = if isym == Forall { Exists } else { Forall };
                        let set = iargs[0].clone();
                        let pred = iargs[1];
                        let negated = match &pred.kind {
                            ExprKind::Lam(p, b) => {
                                Expr::lam(p.clone(), neg((**b).clone()))
                            }
                            _ => {
                                let v: Name = supply.fresh(GenCat::Var);
                                Expr::lam(
                                    v.clone(),
                                    neg(Expr::app(pred.clone(), Expr::var(v))),
                                )
                            }
                        };
                        return Some(Expr::call(dual, [set, negated]));
                    }
                    _ => {}
                }
            }
            None
        }
        And => {
            let (a, b) = (args[0], args[1]);
            match (a.as_bool_const(), b.as_bool_const()) {
                (Some(true), _) => return Some(b.clone()),
                (_, Some(true)) => return Some(a.clone()),
                (Some(false), _) if droppable(b) => return Some(Expr::bool_const(false)),
                (_, Some(false)) if droppable(a) => return Some(Expr::bool_const(false)),
                _ => None,
            }
        }
        Or => {
            let (a, b) = (args[0], args[1]);
            match (a.as_bool_const(), b.as_bool_const()) {
                (Some(false), _) => return Some(b.clone()),
                (_, Some(false)) => return Some(a.clone()),
                (Some(true), _) if droppable(b) => return Some(Expr::bool_const(true)),
                (_, Some(true)) if droppable(a) => return Some(Expr::bool_const(true)),
                _ => None,
            }
        }
        Implies => {
            let (a, b) = (args[0], args[1]);
            match (a.as_bool_const(), b.as_bool_const()) {
                (Some(true), _) => return Some(b.clone()),
                (Some(false), _) if droppable(b) => return Some(Expr::bool_const(true)),
                (_, Some(true)) if droppable(a) => return Some(Expr::bool_const(true)),
                (_, Some(false)) => return Some(neg(a.clone())),
                _ => None,
            }
        }
        Iff => {
            let (a, b) = (args[0], args[1]);
            match (a.as_bool_const(), b.as_bool_const()) {
                (Some(true), _) => return Some(b.clone()),
                (_, Some(true)) => return Some(a.clone()),
                (Some(false), _) => return Some(neg(b.clone())),
                (_, Some(false)) => return Some(neg(a.clone())),
                _ => None,
            }
        }
        _ => None,
    }
}

fn neg(e: Expr) -> Expr {
    Expr::call(BuiltinSym::Not, [e])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::{alpha_equal, parse_core, pretty};

    fn simplified(src: &str) -> Expr {
        let mut supply = NameSupply::new();
        simplify_bool(&parse_core(src).unwrap(), &mut supply).0
    }

    fn assert_simplifies(src: &str, expected: &str) {
        let got = simplified(src);
        let want = parse_core(expected).unwrap();
        assert!(
            alpha_equal(&got, &want),
            "{src}\n  got:      {}\n  expected: {expected}",
            pretty(&got)
        );
    }

    #[test]
    fn de_morgan_reference_example() {
        assert_simplifies("not (not p | not q)", "p & q");
    }

    #[test]
    fn double_negation_is_removed() {
        assert_simplifies("not (not x)", "x");
    }

    #[test]
    fn identity_laws() {
        assert_simplifies("p & true", "p");
        assert_simplifies("false | p", "p");
        assert_simplifies("p | true", "true");
        assert_simplifies("p => false", "not p");
        assert_simplifies("p <=> false", "not p");
    }

    #[test]
    fn negation_pushes_through_quantifiers() {
        assert_simplifies(
            "not (! s (\\x -> p x))",
            "? s (\\x -> not (p x))",
        );
        assert_simplifies(
            "not (? s q)",
            "! s (\\v -> not (q v))",
        );
    }

    #[test]
    fn no_nested_double_negations_remain() {
        let got = simplified("not (not (not (p & not (not q))))");
        let text = pretty(&got);
        assert!(!text.contains("not not"), "{text}");
        assert_simplifies("not (not (not (p & not (not q))))", "not p | not q");
    }

    #[test]
    fn annihilators_keep_outputs() {
        let src = "outputexp(\"x\", p) & false";
        let got = simplified(src);
        // p carries an output label, so the conjunction must survive.
        assert!(alpha_equal(&got, &parse_core(src).unwrap()), "{}", pretty(&got));
    }
}
