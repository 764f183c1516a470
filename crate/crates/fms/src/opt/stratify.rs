//! Let stratification: split binding groups into nested lets of strongly
//! connected components, dependencies outermost, and drop bindings that are
//! unreachable from the let body.

use crate::graph::tarjan_scc;
use crate::ir::{free_vars, Binding, Expr, ExprKind};
use std::collections::BTreeSet;

pub fn stratify(e: &Expr) -> (Expr, usize) {
    let mut count = 0;
    let out = go(e, &mut count);
    (out, count)
}

fn go(e: &Expr, count: &mut usize) -> Expr {
    let kind = match &e.kind {
        ExprKind::Let(bindings, body) => {
            let bindings: Vec<Binding> = bindings
                .iter()
                .map(|b| Binding {
                    name: b.name.clone(),
                    value: go(&b.value, count),
                    hint: b.hint,
                })
                .collect();
            let body = go(body, count);
            return rebuild_let(bindings, body, e, count);
        }
        ExprKind::App(f, a) => ExprKind::App(Box::new(go(f, count)), Box::new(go(a, count))),
        ExprKind::Lam(p, b) => ExprKind::Lam(p.clone(), Box::new(go(b, count))),
        ExprKind::Case(scrut, arms) => ExprKind::Case(
            Box::new(go(scrut, count)),
            arms.iter().map(|(p, b)| (p.clone(), go(b, count))).collect(),
        ),
        ExprKind::SetLit(es) => ExprKind::SetLit(es.iter().map(|x| go(x, count)).collect()),
        ExprKind::Herb(tag, es) => {
            ExprKind::Herb(tag.clone(), es.iter().map(|x| go(x, count)).collect())
        }
        ExprKind::Output(label, inner) => {
            ExprKind::Output(label.clone(), Box::new(go(inner, count)))
        }
        ExprKind::Var(_) | ExprKind::Lit(_) | ExprKind::Builtin(_) => e.kind.clone(),
    };
    Expr::new(kind, e.loc)
}

fn rebuild_let(bindings: Vec<Binding>, body: Expr, original: &Expr, count: &mut usize) -> Expr {
    let names: Vec<_> = bindings.iter().map(|b| b.name.clone()).collect();

    // Sibling dependency graph: edge i -> j when binding i references name j.
    let adj: Vec<Vec<usize>> = bindings
        .iter()
        .map(|b| {
            let fvs = free_vars(&b.value);
            names
                .iter()
                .enumerate()
                .filter(|(_, n)| fvs.contains(n))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();

    // Reachability from the body: unreachable definitions are dropped.
    let body_fvs = free_vars(&body);
    let mut reachable: BTreeSet<usize> = names
        .iter()
        .enumerate()
        .filter(|(_, n)| body_fvs.contains(n))
        .map(|(i, _)| i)
        .collect();
    let mut work: Vec<usize> = reachable.iter().copied().collect();
    while let Some(i) = work.pop() {
        for &j in &adj[i] {
            if reachable.insert(j) {
                work.push(j);
            }
        }
    }

    let dropped = bindings.len() - reachable.len();
    *count += dropped;
    if reachable.is_empty() {
        if dropped > 0 {
            return body;
        }
        // empty let (can only happen for `let in body` which we never build)
        return body;
    }

    // Components of the reachable subgraph, dependencies first.
    let kept: Vec<usize> = (0..bindings.len()).filter(|i| reachable.contains(i)).collect();
    let index_of: std::collections::BTreeMap<usize, usize> =
        kept.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let sub_adj: Vec<Vec<usize>> = kept
        .iter()
        .map(|&i| {
            adj[i]
                .iter()
                .filter_map(|j| index_of.get(j).copied())
                .collect()
        })
        .collect();
    let groups = tarjan_scc(&sub_adj);

    let already_shaped = dropped == 0 && groups.len() == 1;
    if !already_shaped {
        *count += 1;
    }

    // Nest: dependencies outermost, the body innermost.
    let mut result = body;
    for group in groups.iter().rev() {
        let group_bindings: Vec<Binding> =
            group.iter().map(|&k| bindings[kept[k]].clone()).collect();
        result = Expr::new(
            ExprKind::Let(group_bindings, Box::new(result)),
            original.loc,
        );
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::{alpha_equal, parse_core, pretty};

    fn stratified(src: &str) -> Expr {
        stratify(&parse_core(src).unwrap()).0
    }

    #[test]
    fn splits_groups_and_drops_unused() {
        let got = stratified(
            "let odd := \\x -> even (x - 1); \
                 even := \\x -> if x = 0 then true else odd (x - 1); \
                 c := 4; \
                 e := even c; \
                 d := 8 \
             in e",
        );
        let expected = parse_core(
            "let odd := \\x -> even (x - 1); \
                 even := \\x -> if x = 0 then true else odd (x - 1) \
             in (let c := 4 in (let e := even c in e))",
        )
        .unwrap();
        assert!(
            alpha_equal(&got, &expected),
            "got {}",
            pretty(&got)
        );
    }

    #[test]
    fn single_nonrecursive_binding_is_unchanged() {
        let src = "let a := 1 in a + 1";
        let e = parse_core(src).unwrap();
        let (got, count) = stratify(&e);
        assert!(alpha_equal(&got, &e));
        assert_eq!(count, 0);
    }

    #[test]
    fn unused_cycle_is_removed_entirely() {
        let got = stratified("let a := b; b := a in 5");
        assert!(alpha_equal(&got, &parse_core("5").unwrap()));
    }

    #[test]
    fn idempotent() {
        let src = "let odd := \\x -> even (x - 1); \
                       even := \\x -> odd (x - 1); \
                       c := 4; e := even c; d := 8 \
                   in e";
        let once = stratified(src);
        let (twice, count) = stratify(&once);
        assert!(alpha_equal(&once, &twice));
        assert_eq!(count, 0);
    }
}
