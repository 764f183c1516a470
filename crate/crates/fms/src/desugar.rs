//! Desugars surface statements into one closed Core expression.
//!
//! The result is a single `let` holding every definition and declaration,
//! wrapping the conjunction of all constraints. Multi-clause function
//! definitions become one lambda with a case expression, tuple definitions
//! expand through a temporary, set comprehensions become chains of `bind`
//! over singleton sets, and declarations become opaque choice markers that
//! only the translator interprets. Scope checking is the last step: after
//! desugaring the expression must be closed.

use crate::ir::{
    self, free_vars, Binding, BuiltinSym, Expr, ExprKind, GenCat, InlineHint, Literal, Loc, Name,
    NameSupply, Pattern, TAG_FALSE, TAG_TRUE,
};
use crate::syntax::{
    CompQual, DeclKind, Spec, Statement, SurfaceExpr, SurfaceExprKind, SurfacePattern,
    SurfacePatternKind, TupleSlot,
};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DesugarError {
    #[error("{loc}: `{name}` is not in scope")]
    OutOfScope { name: String, loc: Loc },
    #[error("{loc}: duplicate definition of `{name}`")]
    DuplicateDefinition { name: String, loc: Loc },
    #[error("{loc}: duplicate constructor `{name}`")]
    DuplicateConstructor { name: String, loc: Loc },
    #[error("{loc}: constructor `{tag}` expects {expected} arguments, got {got}")]
    CtorArity {
        tag: String,
        expected: usize,
        got: usize,
        loc: Loc,
    },
    #[error("{loc}: clauses of `{name}` disagree on the number of parameters")]
    ClauseArity { name: String, loc: Loc },
    #[error("{loc}: pattern binds `{name}` more than once")]
    DuplicatePatternVar { name: String, loc: Loc },
    #[error("{loc}: `{name}` is reserved and cannot be redefined")]
    ReservedName { name: String, loc: Loc },
    #[error("{loc}: inline directive names unknown symbol `{name}`")]
    DirectiveUnknown { name: String, loc: Loc },
}

/// Constructor table: tag name to arity.
pub type CtorTable = BTreeMap<String, usize>;

/// Which top-level symbols get output tracking.
#[derive(Debug, Clone, Default)]
pub enum Tracking {
    #[default]
    All,
    Only(BTreeSet<String>),
}

impl Tracking {
    fn tracks(&self, name: &str) -> bool {
        match self {
            Tracking::All => true,
            Tracking::Only(set) => set.contains(name),
        }
    }
}

/// Result of desugaring: the closed Core expression plus the constructor
/// table and the name supply used so far.
#[derive(Debug, Clone)]
pub struct Desugared {
    pub core: Expr,
    pub ctors: CtorTable,
    pub supply: NameSupply,
}

pub fn desugar(spec: &Spec) -> Result<Desugared, DesugarError> {
    desugar_with(spec, &Tracking::All)
}

pub fn desugar_with(spec: &Spec, tracking: &Tracking) -> Result<Desugared, DesugarError> {
    let mut ctx = Ctx {
        ctors: CtorTable::new(),
        supply: NameSupply::new(),
        top_names: BTreeSet::new(),
    };

    // Constructors first: they are visible everywhere, including earlier
    // statements.
    for s in &spec.statements {
        if let Statement::Declaration {
            name,
            arity,
            kind: DeclKind::Constructor,
            loc,
        } = s
        {
            if name == TAG_TRUE || name == TAG_FALSE || ir::tuple_width(name).is_some() {
                return Err(DesugarError::ReservedName {
                    name: name.clone(),
                    loc: *loc,
                });
            }
            if ctx.ctors.insert(name.clone(), *arity).is_some() {
                return Err(DesugarError::DuplicateConstructor {
                    name: name.clone(),
                    loc: *loc,
                });
            }
        }
    }

    // Group definition clauses by name, in source order.
    let mut items: Vec<Item> = Vec::new();
    let mut clause_index: BTreeMap<String, usize> = BTreeMap::new();
    let mut directives: Vec<(bool, String, Loc)> = Vec::new();

    for s in &spec.statements {
        match s {
            Statement::Declaration { kind: DeclKind::Constructor, .. } => {}
            Statement::Declaration {
                name,
                arity,
                kind,
                loc,
            } => {
                ctx.reserve_top(name, *loc)?;
                items.push(Item::Declaration {
                    name: name.clone(),
                    arity: *arity,
                    kind: kind.clone(),
                    loc: *loc,
                });
            }
            Statement::Definition {
                name,
                params,
                body,
                loc,
            } => {
                if params.is_empty() {
                    ctx.reserve_top(name, *loc)?;
                    items.push(Item::Simple {
                        name: name.clone(),
                        body: body.clone(),
                        loc: *loc,
                    });
                } else if let Some(&at) = clause_index.get(name) {
                    match &mut items[at] {
                        Item::Clauses { clauses, .. } => {
                            if clauses[0].0.len() != params.len() {
                                return Err(DesugarError::ClauseArity {
                                    name: name.clone(),
                                    loc: *loc,
                                });
                            }
                            clauses.push((params.clone(), body.clone()));
                        }
                        _ => unreachable!("clause_index points at a clause group"),
                    }
                } else {
                    ctx.reserve_top(name, *loc)?;
                    clause_index.insert(name.clone(), items.len());
                    items.push(Item::Clauses {
                        name: name.clone(),
                        clauses: vec![(params.clone(), body.clone())],
                        loc: *loc,
                    });
                }
            }
            Statement::TupleDefinition { names, body, loc } => {
                for slot in names {
                    if let TupleSlot::Name(n) = slot {
                        ctx.reserve_top(n, *loc)?;
                    }
                }
                items.push(Item::TupleDef {
                    names: names.clone(),
                    body: body.clone(),
                    loc: *loc,
                });
            }
            Statement::Constraint { expr, loc } => {
                items.push(Item::Constraint {
                    expr: expr.clone(),
                    loc: *loc,
                });
            }
            Statement::Directive { inline, name, loc } => {
                directives.push((*inline, name.clone(), *loc));
            }
        }
    }

    // Desugar the items into bindings plus the constraint conjunction.
    let mut bindings: Vec<Binding> = Vec::new();
    let mut constraints: Vec<Expr> = Vec::new();

    for item in &items {
        match item {
            Item::Declaration {
                name,
                arity,
                kind,
                loc,
            } => {
                let value = ctx.desugar_decl(kind, *arity, *loc)?;
                bindings.push(ctx.tracked_binding(name, value, tracking));
            }
            Item::Simple { name, body, loc } => {
                let value = ctx.expr(body)?;
                let _ = loc;
                bindings.push(ctx.tracked_binding(name, value, tracking));
            }
            Item::Clauses { name, clauses, loc } => {
                let value = ctx.clauses_to_lambda(clauses, *loc)?;
                bindings.push(ctx.tracked_binding(name, value, tracking));
            }
            Item::TupleDef { names, body, loc } => {
                let temp = ctx.supply.fresh(GenCat::Temp);
                let value = ctx.expr(body)?;
                bindings.push(Binding::new(temp.clone(), value));
                for (i, slot) in names.iter().enumerate() {
                    let TupleSlot::Name(name) = slot else { continue };
                    // name_i := case temp of (_, .., x, .., _) -> x
                    let subpats: Vec<Pattern> = (0..names.len())
                        .map(|j| {
                            if i == j {
                                Pattern::Var(Name::src(name.clone()))
                            } else {
                                Pattern::Wildcard
                            }
                        })
                        .collect();
                    let pat = Pattern::Ctor(ir::tuple_tag(names.len()), subpats);
                    let proj = Expr::new(
                        ExprKind::Case(
                            Box::new(Expr::var(temp.clone())),
                            vec![(pat, Expr::var(Name::src(name.clone())))],
                        ),
                        *loc,
                    );
                    bindings.push(ctx.tracked_binding(name, proj, tracking));
                }
            }
            Item::Constraint { expr, loc } => {
                let mut e = ctx.expr(expr)?;
                e.loc = *loc;
                constraints.push(e);
            }
        }
    }

    // Apply inline directives to the finished bindings.
    for (inline, name, loc) in directives {
        let target = bindings
            .iter_mut()
            .find(|b| b.name == Name::src(name.clone()));
        match target {
            Some(b) => b.hint = if inline { InlineHint::Always } else { InlineHint::Never },
            None => return Err(DesugarError::DirectiveUnknown { name, loc }),
        }
    }

    let body = constraints
        .into_iter()
        .reduce(|a, b| Expr::call(BuiltinSym::And, [a, b]))
        .unwrap_or_else(|| Expr::bool_const(true));

    let core = if bindings.is_empty() {
        body
    } else {
        Expr::let_in(bindings, body)
    };

    // Scope check is the last step: the result must be closed.
    check_closed(&core)?;
    debug_assert!(free_vars(&core).is_empty());

    Ok(Desugared {
        core,
        ctors: ctx.ctors,
        supply: ctx.supply,
    })
}

enum Item {
    Declaration {
        name: String,
        arity: usize,
        kind: DeclKind,
        loc: Loc,
    },
    Simple {
        name: String,
        body: SurfaceExpr,
        loc: Loc,
    },
    Clauses {
        name: String,
        clauses: Vec<(Vec<SurfacePattern>, SurfaceExpr)>,
        loc: Loc,
    },
    TupleDef {
        names: Vec<TupleSlot>,
        body: SurfaceExpr,
        loc: Loc,
    },
    Constraint {
        expr: SurfaceExpr,
        loc: Loc,
    },
}

struct Ctx {
    ctors: CtorTable,
    supply: NameSupply,
    top_names: BTreeSet<String>,
}

impl Ctx {
    fn reserve_top(&mut self, name: &str, loc: Loc) -> Result<(), DesugarError> {
        if name == TAG_TRUE || name == TAG_FALSE {
            return Err(DesugarError::ReservedName {
                name: name.into(),
                loc,
            });
        }
        if !self.top_names.insert(name.to_string()) {
            return Err(DesugarError::DuplicateDefinition {
                name: name.into(),
                loc,
            });
        }
        Ok(())
    }

    fn tracked_binding(&mut self, name: &str, value: Expr, tracking: &Tracking) -> Binding {
        let value = if tracking.tracks(name) {
            Expr::new(
                ExprKind::Output(name.to_string(), Box::new(value)),
                Loc::NONE,
            )
        } else {
            value
        };
        Binding::new(Name::src(name), value)
    }

    fn desugar_decl(
        &mut self,
        kind: &DeclKind,
        arity: usize,
        loc: Loc,
    ) -> Result<Expr, DesugarError> {
        let truth_set = || {
            Expr::synth(ExprKind::SetLit(vec![
                Expr::bool_const(true),
                Expr::bool_const(false),
            ]))
        };
        let marker = |sym, set| {
            let mut e = Expr::call(sym, [set]);
            e.loc = loc;
            e
        };
        Ok(match kind {
            DeclKind::ElementOf(set) => marker(BuiltinSym::ChooseElement, self.expr(set)?),
            DeclKind::SubsetOf(set) => marker(BuiltinSym::ChooseSubset, self.expr(set)?),
            DeclKind::FunctionTo(set) => {
                marker(BuiltinSym::ChooseFunction(arity as u8), self.expr(set)?)
            }
            DeclKind::Proposition => marker(BuiltinSym::ChooseElement, truth_set()),
            DeclKind::Predicate => {
                marker(BuiltinSym::ChooseFunction(arity as u8), truth_set())
            }
            DeclKind::Constructor => unreachable!("handled in the first pass"),
        })
    }

    /// Merge the clauses of one function definition into a single lambda,
    /// with a case expression when any clause pattern is refutable or there
    /// are several clauses.
    fn clauses_to_lambda(
        &mut self,
        clauses: &[(Vec<SurfacePattern>, SurfaceExpr)],
        loc: Loc,
    ) -> Result<Expr, DesugarError> {
        let arity = clauses[0].0.len();

        // Single clause of plain variable patterns: plain nested lambdas.
        if clauses.len() == 1
            && clauses[0]
                .0
                .iter()
                .all(|p| matches!(p.kind, SurfacePatternKind::Ident(_)))
        {
            let (params, body) = &clauses[0];
            let names: Vec<Name> = params
                .iter()
                .map(|p| match &p.kind {
                    SurfacePatternKind::Ident(s) => Name::src(s.clone()),
                    _ => unreachable!(),
                })
                .collect();
            let mut e = self.expr(body)?;
            for n in names.into_iter().rev() {
                e = Expr::lam(n, e);
            }
            return Ok(e);
        }

        let params: Vec<Name> = (0..arity).map(|_| self.supply.fresh(GenCat::Var)).collect();
        let scrutinee = if arity == 1 {
            Expr::var(params[0].clone())
        } else {
            Expr::tuple(params.iter().cloned().map(Expr::var).collect())
        };
        let mut arms = Vec::new();
        for (pats, body) in clauses {
            let mut core_pats = Vec::new();
            for p in pats {
                core_pats.push(self.pattern(p)?);
            }
            let pat = if arity == 1 {
                core_pats.pop().unwrap()
            } else {
                Pattern::Ctor(ir::tuple_tag(arity), core_pats)
            };
            check_linear(&pat, loc)?;
            arms.push((pat, self.expr(body)?));
        }
        let mut e = Expr::new(ExprKind::Case(Box::new(scrutinee), arms), loc);
        for p in params.into_iter().rev() {
            e = Expr::lam(p, e);
        }
        Ok(e)
    }

    fn pattern(&mut self, p: &SurfacePattern) -> Result<Pattern, DesugarError> {
        Ok(match &p.kind {
            SurfacePatternKind::Wildcard => Pattern::Wildcard,
            SurfacePatternKind::Int(n) => Pattern::Lit(Literal::Int(*n)),
            SurfacePatternKind::Str(s) => Pattern::Lit(Literal::Str(s.clone())),
            SurfacePatternKind::Tuple(items) => {
                let mut subs = Vec::new();
                for item in items {
                    subs.push(self.pattern(item)?);
                }
                Pattern::Ctor(ir::tuple_tag(items.len()), subs)
            }
            SurfacePatternKind::CtorApp(tag, items) => {
                let expected = self.ctor_arity(tag, items.len(), p.loc)?;
                if expected != items.len() {
                    return Err(DesugarError::CtorArity {
                        tag: tag.clone(),
                        expected,
                        got: items.len(),
                        loc: p.loc,
                    });
                }
                let mut subs = Vec::new();
                for item in items {
                    subs.push(self.pattern(item)?);
                }
                Pattern::Ctor(tag.clone(), subs)
            }
            SurfacePatternKind::Ident(name) => {
                if name == TAG_TRUE || name == TAG_FALSE {
                    Pattern::Ctor(name.clone(), vec![])
                } else if let Some(&arity) = self.ctors.get(name) {
                    // A bare constructor name matches only if it is nullary
                    // (`nil` and `nil []` are both accepted).
                    if arity != 0 {
                        return Err(DesugarError::CtorArity {
                            tag: name.clone(),
                            expected: arity,
                            got: 0,
                            loc: p.loc,
                        });
                    }
                    Pattern::Ctor(name.clone(), vec![])
                } else {
                    Pattern::Var(Name::src(name.clone()))
                }
            }
        })
    }

    fn ctor_arity(&self, tag: &str, got: usize, loc: Loc) -> Result<usize, DesugarError> {
        match self.ctors.get(tag) {
            Some(&a) => Ok(a),
            None => Err(DesugarError::CtorArity {
                tag: tag.into(),
                expected: got,
                got,
                loc,
            }),
        }
    }

    fn expr(&mut self, e: &SurfaceExpr) -> Result<Expr, DesugarError> {
        let loc = e.loc;
        let out = match &e.kind {
            SurfaceExprKind::Int(n) => Expr::new(ExprKind::Lit(Literal::Int(*n)), loc),
            SurfaceExprKind::Str(s) => Expr::new(ExprKind::Lit(Literal::Str(s.clone())), loc),
            SurfaceExprKind::BuiltinAtom(sym) => Expr::new(ExprKind::Builtin(*sym), loc),
            SurfaceExprKind::Ident(name) => self.ident(name, loc)?,
            SurfaceExprKind::BinOp(sym, a, b) => {
                let mut out = Expr::call(*sym, [self.expr(a)?, self.expr(b)?]);
                out.loc = loc;
                out
            }
            SurfaceExprKind::Not(a) => {
                let mut out = Expr::call(BuiltinSym::Not, [self.expr(a)?]);
                out.loc = loc;
                out
            }
            SurfaceExprKind::If(c, t, f) => {
                let mut out =
                    Expr::call(BuiltinSym::Ite, [self.expr(c)?, self.expr(t)?, self.expr(f)?]);
                out.loc = loc;
                out
            }
            SurfaceExprKind::App(..) => self.application(e)?,
            SurfaceExprKind::Lam(pat, body) => {
                let body = self.expr(body)?;
                self.pattern_lambda(pat, body, loc)?
            }
            SurfaceExprKind::Case(scrut, arms) => {
                let scrut = self.expr(scrut)?;
                let mut core_arms = Vec::new();
                for (pat, body) in arms {
                    let p = self.pattern(pat)?;
                    check_linear(&p, pat.loc)?;
                    core_arms.push((p, self.expr(body)?));
                }
                Expr::new(ExprKind::Case(Box::new(scrut), core_arms), loc)
            }
            SurfaceExprKind::Tuple(items) => {
                let mut es = Vec::new();
                for item in items {
                    es.push(self.expr(item)?);
                }
                let mut out = Expr::tuple(es);
                out.loc = loc;
                out
            }
            SurfaceExprKind::SetEnum(items) => {
                let mut es = Vec::new();
                for item in items {
                    es.push(self.expr(item)?);
                }
                Expr::new(ExprKind::SetLit(es), loc)
            }
            SurfaceExprKind::SetRange(lo, hi) => {
                let mut out = Expr::call(BuiltinSym::Range, [self.expr(lo)?, self.expr(hi)?]);
                out.loc = loc;
                out
            }
            SurfaceExprKind::SetComp(head, quals) => self.comprehension(head, quals, loc)?,
        };
        Ok(out)
    }

    /// Resolve an identifier: locally bound and top-level names stay
    /// variables (scope checking happens at the end on the closed term),
    /// nullary constructors become Herbrand constants, and the builtin set
    /// functions resolve when the name is not defined anywhere.
    fn ident(&mut self, name: &str, loc: Loc) -> Result<Expr, DesugarError> {
        if name == TAG_TRUE || name == TAG_FALSE {
            return Ok(Expr::new(ExprKind::Herb(name.into(), vec![]), loc));
        }
        if !self.top_names.contains(name) {
            if let Some(&arity) = self.ctors.get(name) {
                if arity == 0 {
                    return Ok(Expr::new(ExprKind::Herb(name.into(), vec![]), loc));
                }
                return Err(DesugarError::CtorArity {
                    tag: name.into(),
                    expected: arity,
                    got: 0,
                    loc,
                });
            }
            if let Some(sym) = builtin_named(name) {
                return Ok(Expr::new(ExprKind::Builtin(sym), loc));
            }
        }
        Ok(Expr::new(ExprKind::Var(Name::src(name)), loc))
    }

    /// Applications need the spine so fully applied constructors become
    /// Herbrand expressions.
    fn application(&mut self, e: &SurfaceExpr) -> Result<Expr, DesugarError> {
        let mut spine = Vec::new();
        let mut head = e;
        while let SurfaceExprKind::App(f, a) = &head.kind {
            spine.push(a.as_ref());
            head = f;
        }
        spine.reverse();

        if let SurfaceExprKind::Ident(name) = &head.kind {
            if !self.top_names.contains(name) && !is_builtin_name(name) {
                if let Some(&arity) = self.ctors.get(name.as_str()) {
                    if arity != spine.len() {
                        return Err(DesugarError::CtorArity {
                            tag: name.clone(),
                            expected: arity,
                            got: spine.len(),
                            loc: head.loc,
                        });
                    }
                    let mut args = Vec::new();
                    for a in spine {
                        args.push(self.expr(a)?);
                    }
                    return Ok(Expr::new(ExprKind::Herb(name.clone(), args), e.loc));
                }
            }
        }

        let mut out = self.expr(head)?;
        for a in spine {
            let arg = self.expr(a)?;
            out = Expr::app(out, arg);
        }
        Ok(out)
    }

    fn pattern_lambda(
        &mut self,
        pat: &SurfacePattern,
        body: Expr,
        loc: Loc,
    ) -> Result<Expr, DesugarError> {
        if let SurfacePatternKind::Ident(name) = &pat.kind {
            if !self.ctors.contains_key(name) && name != TAG_TRUE && name != TAG_FALSE {
                let mut out = Expr::lam(Name::src(name.clone()), body);
                out.loc = loc;
                return Ok(out);
            }
        }
        let p = self.pattern(pat)?;
        check_linear(&p, pat.loc)?;
        let param = self.supply.fresh(GenCat::Var);
        let case = Expr::new(
            ExprKind::Case(Box::new(Expr::var(param.clone())), vec![(p, body)]),
            loc,
        );
        let mut out = Expr::lam(param, case);
        out.loc = loc;
        Ok(out)
    }

    /// `{head || quals}` becomes nested `bind`s ending in a singleton set;
    /// guards become if-then-else with an empty-set alternative.
    fn comprehension(
        &mut self,
        head: &SurfaceExpr,
        quals: &[CompQual],
        loc: Loc,
    ) -> Result<Expr, DesugarError> {
        match quals.split_first() {
            None => {
                let h = self.expr(head)?;
                Ok(Expr::new(ExprKind::SetLit(vec![h]), loc))
            }
            Some((CompQual::Generator(pat, src), rest)) => {
                let src = self.expr(src)?;
                let inner = self.comprehension(head, rest, loc)?;
                let lam = self.pattern_lambda(pat, inner, loc)?;
                let mut out = Expr::call(BuiltinSym::Bind, [src, lam]);
                out.loc = loc;
                Ok(out)
            }
            Some((CompQual::Guard(g), rest)) => {
                let g = self.expr(g)?;
                let inner = self.comprehension(head, rest, loc)?;
                let empty = Expr::synth(ExprKind::SetLit(vec![]));
                let mut out = Expr::call(BuiltinSym::Ite, [g, inner, empty]);
                out.loc = loc;
                Ok(out)
            }
        }
    }
}

fn builtin_named(name: &str) -> Option<BuiltinSym> {
    match name {
        "bind" => Some(BuiltinSym::Bind),
        "union" => Some(BuiltinSym::Union),
        "member" => Some(BuiltinSym::MemberOf),
        "card" => Some(BuiltinSym::Card),
        _ => None,
    }
}

fn is_builtin_name(name: &str) -> bool {
    builtin_named(name).is_some()
}

fn check_linear(pat: &Pattern, loc: Loc) -> Result<(), DesugarError> {
    let names = pat.bound_names();
    let mut seen = BTreeSet::new();
    for n in names {
        if !seen.insert(n.clone()) {
            return Err(DesugarError::DuplicatePatternVar {
                name: n.to_string(),
                loc,
            });
        }
    }
    Ok(())
}

/// Report the first out-of-scope identifier with its location.
fn check_closed(e: &Expr) -> Result<(), DesugarError> {
    fn go(e: &Expr, bound: &mut Vec<Name>) -> Result<(), DesugarError> {
        match &e.kind {
            ExprKind::Var(n) => {
                if bound.contains(n) {
                    Ok(())
                } else {
                    Err(DesugarError::OutOfScope {
                        name: n.to_string(),
                        loc: e.loc,
                    })
                }
            }
            ExprKind::Lit(_) | ExprKind::Builtin(_) => Ok(()),
            ExprKind::App(f, a) => {
                go(f, bound)?;
                go(a, bound)
            }
            ExprKind::Lam(p, b) => {
                bound.push(p.clone());
                let r = go(b, bound);
                bound.pop();
                r
            }
            ExprKind::Let(bs, body) => {
                let base = bound.len();
                for b in bs {
                    bound.push(b.name.clone());
                }
                for b in bs {
                    go(&b.value, bound)?;
                }
                let r = go(body, bound);
                bound.truncate(base);
                r
            }
            ExprKind::Case(scrut, arms) => {
                go(scrut, bound)?;
                for (pat, body) in arms {
                    let base = bound.len();
                    bound.extend(pat.bound_names());
                    go(body, bound)?;
                    bound.truncate(base);
                }
                Ok(())
            }
            ExprKind::SetLit(es) | ExprKind::Herb(_, es) => {
                es.iter().try_for_each(|e| go(e, bound))
            }
            ExprKind::Output(_, inner) => go(inner, bound),
        }
    }
    go(e, &mut Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::{alpha_equal, parse_core, pretty};
    use crate::syntax::parse;

    fn core_of(src: &str) -> Expr {
        desugar(&parse(src).unwrap()).unwrap().core
    }

    fn assert_desugars_to(src: &str, expected_core: &str) {
        let got = core_of(src);
        let expected = parse_core(expected_core).unwrap();
        assert!(
            alpha_equal(&got, &expected),
            "desugaring mismatch for {src}\n  got:      {}\n  expected: {}",
            pretty(&got),
            pretty(&expected),
        );
    }

    #[test]
    fn multi_clause_function_becomes_case() {
        assert_desugars_to(
            "f 1 := 0. f x := 1. true.",
            r#"let f := outputexp("f", \y -> case y of 1 -> 0; x -> 1) in true"#,
        );
    }

    #[test]
    fn tuple_definition_expands_through_temp() {
        assert_desugars_to(
            "f x := (x, x). (a,b) := f 5. true.",
            r#"let f := outputexp("f", \x -> (x, x));
                   temp := f 5;
                   a := outputexp("a", case temp of (a, _) -> a);
                   b := outputexp("b", case temp of (_, b) -> b)
               in true"#,
        );
    }

    #[test]
    fn comprehension_desugars_to_bind_chain() {
        assert_desugars_to(
            "ss := {{1}}. flat := {x || s <- ss, x <- s}. true.",
            r#"let ss := outputexp("ss", {{1}});
                   flat := outputexp("flat", bind ss (\s -> bind s (\x -> {x})))
               in true"#,
        );
    }

    #[test]
    fn guards_become_conditionals_on_the_empty_set() {
        assert_desugars_to(
            "s := {1..9}. evens := {x || x <- s, x % 2 = 0}. true.",
            r#"let s := outputexp("s", {1..9});
                   evens := outputexp("evens",
                       bind s (\x -> if x % 2 = 0 then {x} else {}))
               in true"#,
        );
    }

    #[test]
    fn declarations_become_choice_markers() {
        assert_desugars_to(
            "colors := {1..3}. colorof/1 :: function to colors. colorof 1 = 1.",
            r#"let colors := outputexp("colors", {1..3});
                   colorof := outputexp("colorof", chooseFunction_1 colors)
               in colorof 1 = 1"#,
        );
        assert_desugars_to(
            "p :: proposition. p.",
            r#"let p := outputexp("p", chooseElement {true, false}) in p"#,
        );
    }

    #[test]
    fn constructor_declarations_register_without_binding() {
        let d = desugar(&parse("s/1 :: constructor. nil/0 :: constructor. true.").unwrap())
            .unwrap();
        assert_eq!(d.ctors.get("s"), Some(&1));
        assert_eq!(d.ctors.get("nil"), Some(&0));
        // no bindings at all: just the constraint body
        assert!(alpha_equal(&d.core, &parse_core("true").unwrap()));
    }

    #[test]
    fn peano_example_desugars() {
        let src = "s/1 :: constructor.\nnil/0 :: constructor.\n\nminusOne x := case x of\n\ts [ a ] -> a;\n\tnil []    -> nil;.\ntrue.";
        assert_desugars_to(
            src,
            r#"let minusOne := outputexp("minusOne", \x -> case x of s[a] -> a; nil[] -> nil[])
               in true"#,
        );
    }

    #[test]
    fn desugared_result_is_closed_and_deterministic() {
        let src = r#"
borders := {("a","b"), ("b","c"), ("c","a")}.
colors := {1..3}.
colorof/1 :: function to colors.
! borders (\(x,y) -> colorof x ~= colorof y).
"#;
        let a = core_of(src);
        let b = core_of(src);
        assert!(free_vars(&a).is_empty());
        assert!(alpha_equal(&a, &b));
    }

    #[test]
    fn scope_error_names_the_identifier() {
        let err = desugar(&parse("p := undefined_symbol.").unwrap()).unwrap_err();
        match err {
            DesugarError::OutOfScope { name, .. } => assert_eq!(name, "undefined_symbol"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn duplicate_definition_is_an_error() {
        let err = desugar(&parse("c := 1. c := 2.").unwrap()).unwrap_err();
        assert!(matches!(err, DesugarError::DuplicateDefinition { .. }));
    }

    #[test]
    fn constructor_arity_is_checked() {
        let err = desugar(&parse("s/1 :: constructor. x := s nil nil.").unwrap()).unwrap_err();
        assert!(matches!(err, DesugarError::CtorArity { .. }));
    }

    #[test]
    fn statement_order_is_free() {
        // constraints may reference definitions that appear later
        let d = desugar(&parse("c = 4. c := 4.").unwrap()).unwrap();
        assert!(free_vars(&d.core).is_empty());
    }

    #[test]
    fn directives_set_hints() {
        let d = desugar(&parse("inline f. f x := x + 1. noinline g. g x := x. true.").unwrap())
            .unwrap();
        match &d.core.kind {
            ExprKind::Let(bs, _) => {
                assert_eq!(bs[0].hint, InlineHint::Always);
                assert_eq!(bs[1].hint, InlineHint::Never);
            }
            other => panic!("unexpected core {other:?}"),
        }
    }

    #[test]
    fn lambda_tuple_patterns_become_case() {
        assert_desugars_to(
            "g := \\(x, y) -> x + y. true.",
            r#"let g := outputexp("g", \t -> case t of (x, y) -> x + y) in true"#,
        );
    }
}
