//! The Core intermediate representation.
//!
//! Every surface construct desugars into the ten expression forms below; the
//! type checker, optimizer, evaluator and ASP translator all operate on this
//! representation and nothing else.

use std::collections::BTreeSet;
use std::fmt;

mod pretty;
mod reader;

pub use pretty::pretty;
pub use reader::{parse_core, CoreReadError};

/// Reserved constructor tags for the boolean constants.
pub const TAG_TRUE: &str = "true";
pub const TAG_FALSE: &str = "false";

/// Reserved constructor tag for tuples of the given width.
pub fn tuple_tag(width: usize) -> String {
    format!("tuple{width}")
}

/// Does the tag name a tuple constructor? Returns its width.
pub fn tuple_width(tag: &str) -> Option<usize> {
    tag.strip_prefix("tuple").and_then(|n| n.parse().ok())
}

/// A source position. `Loc::NONE` marks compiler-generated nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Loc {
    pub line: u32,
    pub col: u32,
}

impl Loc {
    pub const NONE: Loc = Loc { line: 0, col: 0 };

    pub fn new(line: u32, col: u32) -> Loc {
        Loc { line, col }
    }
}

impl fmt::Display for Loc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Loc::NONE {
            write!(f, "<generated>")
        } else {
            write!(f, "{}:{}", self.line, self.col)
        }
    }
}

/// Categories of generated names, each with its own prefix and counter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenCat {
    /// Set names (`s0`, `s1`, ...).
    Set,
    /// Lambda names (`l0`, ...).
    Lam,
    /// Boolean names (`b0`, ...).
    Bool,
    /// Scalar value names (`c0`, ...).
    Scalar,
    /// Bound variables (`X1`, ...).
    Var,
    /// Temporaries introduced by desugaring (`temp0`, ...).
    Temp,
}

impl GenCat {
    pub fn prefix(self) -> &'static str {
        match self {
            GenCat::Set => "s",
            GenCat::Lam => "l",
            GenCat::Bool => "b",
            GenCat::Scalar => "c",
            GenCat::Var => "X",
            GenCat::Temp => "temp",
        }
    }
}

/// An identifier: either straight from the source text or generated.
///
/// Generated names can never collide with source names no matter what the
/// user called their symbols, because the two variants are distinct values.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Name {
    Src(String),
    Gen(GenCat, u32),
}

impl Name {
    pub fn src(s: impl Into<String>) -> Name {
        Name::Src(s.into())
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Name::Src(s) => f.write_str(s),
            Name::Gen(cat, n) => write!(f, "{}{}", cat.prefix(), n),
        }
    }
}

/// Deterministic supply of fresh names, one counter per category.
#[derive(Debug, Clone, Default)]
pub struct NameSupply {
    counters: [u32; 6],
}

impl NameSupply {
    pub fn new() -> NameSupply {
        NameSupply::default()
    }

    fn slot(cat: GenCat) -> usize {
        match cat {
            GenCat::Set => 0,
            GenCat::Lam => 1,
            GenCat::Bool => 2,
            GenCat::Scalar => 3,
            GenCat::Var => 4,
            GenCat::Temp => 5,
        }
    }

    pub fn fresh(&mut self, cat: GenCat) -> Name {
        let n = self.counters[Self::slot(cat)];
        self.counters[Self::slot(cat)] += 1;
        Name::Gen(cat, n)
    }

    /// Fresh name rendered as a plain string (used for ASP symbol names).
    pub fn fresh_str(&mut self, cat: GenCat) -> String {
        self.fresh(cat).to_string()
    }
}

/// Literal values injected into the language. Only integers and strings can
/// be injected.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Literal {
    Int(i64),
    Str(String),
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Int(n) => write!(f, "{n}"),
            Literal::Str(s) => write!(f, "{s:?}"),
        }
    }
}

/// The builtin function symbols. Each has a fixed arity and a fixed type
/// scheme registered with the type checker.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BuiltinSym {
    Add,
    Sub,
    Mul,
    Div,
    Mod,
    Eq,
    Neq,
    Lt,
    Le,
    Gt,
    Ge,
    And,
    Or,
    Not,
    Implies,
    Iff,
    Forall,
    Exists,
    Bind,
    Union,
    MemberOf,
    Card,
    Ite,
    Range,
    TupleCons(u8),
    /// Choice markers produced by declarations. Only the translator
    /// interprets these; the evaluator rejects them.
    ChooseElement,
    ChooseSubset,
    ChooseFunction(u8),
}

impl BuiltinSym {
    pub fn arity(self) -> usize {
        use BuiltinSym::*;
        match self {
            Not | Card | ChooseElement | ChooseSubset | ChooseFunction(_) => 1,
            Add | Sub | Mul | Div | Mod | Eq | Neq | Lt | Le | Gt | Ge | And | Or | Implies
            | Iff | Forall | Exists | Bind | Union | MemberOf | Range => 2,
            Ite => 3,
            TupleCons(n) => n as usize,
        }
    }

    /// Is this one of the opaque declaration markers?
    pub fn is_choice(self) -> bool {
        matches!(
            self,
            BuiltinSym::ChooseElement | BuiltinSym::ChooseSubset | BuiltinSym::ChooseFunction(_)
        )
    }

    /// Printed name; infix operators use their surface glyph.
    pub fn display_name(self) -> String {
        use BuiltinSym::*;
        match self {
            Add => "+".into(),
            Sub => "-".into(),
            Mul => "*".into(),
            Div => "/".into(),
            Mod => "%".into(),
            Eq => "=".into(),
            Neq => "~=".into(),
            Lt => "<".into(),
            Le => "<=".into(),
            Gt => ">".into(),
            Ge => ">=".into(),
            And => "&".into(),
            Or => "|".into(),
            Not => "not".into(),
            Implies => "=>".into(),
            Iff => "<=>".into(),
            Forall => "!".into(),
            Exists => "?".into(),
            Bind => "bind".into(),
            Union => "union".into(),
            MemberOf => "member".into(),
            Card => "card".into(),
            Ite => "ite".into(),
            Range => "range".into(),
            TupleCons(n) => format!("tuple{n}"),
            ChooseElement => "chooseElement".into(),
            ChooseSubset => "chooseSubset".into(),
            ChooseFunction(n) => format!("chooseFunction_{n}"),
        }
    }
}

/// Patterns handled by `Case`. Literal patterns arise from clause heads such
/// as `f 1 := 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pattern {
    Wildcard,
    Var(Name),
    Ctor(String, Vec<Pattern>),
    Lit(Literal),
}

impl Pattern {
    /// Names bound by this pattern, in left-to-right order.
    pub fn bound_names(&self) -> Vec<Name> {
        let mut out = Vec::new();
        self.collect_bound(&mut out);
        out
    }

    fn collect_bound(&self, out: &mut Vec<Name>) {
        match self {
            Pattern::Wildcard | Pattern::Lit(_) => {}
            Pattern::Var(n) => out.push(n.clone()),
            Pattern::Ctor(_, subs) => {
                for s in subs {
                    s.collect_bound(out);
                }
            }
        }
    }

    /// Could both patterns match some common value? Used to decide whether a
    /// later case arm needs the negation of an earlier one.
    pub fn overlaps(&self, other: &Pattern) -> bool {
        match (self, other) {
            (Pattern::Wildcard | Pattern::Var(_), _) | (_, Pattern::Wildcard | Pattern::Var(_)) => {
                true
            }
            (Pattern::Lit(a), Pattern::Lit(b)) => a == b,
            (Pattern::Ctor(t1, s1), Pattern::Ctor(t2, s2)) => {
                t1 == t2 && s1.len() == s2.len() && s1.iter().zip(s2).all(|(a, b)| a.overlaps(b))
            }
            (Pattern::Lit(_), Pattern::Ctor(..)) | (Pattern::Ctor(..), Pattern::Lit(_)) => false,
        }
    }
}

/// Inlining directive attached to a let binding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InlineHint {
    #[default]
    Auto,
    Always,
    Never,
}

/// One binding of a (possibly mutually recursive) let group.
#[derive(Debug, Clone, PartialEq)]
pub struct Binding {
    pub name: Name,
    pub value: Expr,
    pub hint: InlineHint,
}

impl Binding {
    pub fn new(name: Name, value: Expr) -> Binding {
        Binding {
            name,
            value,
            hint: InlineHint::Auto,
        }
    }
}

/// The ten Core constructs.
#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Var(Name),
    App(Box<Expr>, Box<Expr>),
    Lam(Name, Box<Expr>),
    Let(Vec<Binding>, Box<Expr>),
    Lit(Literal),
    Case(Box<Expr>, Vec<(Pattern, Expr)>),
    Builtin(BuiltinSym),
    SetLit(Vec<Expr>),
    Herb(String, Vec<Expr>),
    Output(String, Box<Expr>),
}

/// A Core expression together with its source location.
#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub loc: Loc,
}

impl Expr {
    pub fn new(kind: ExprKind, loc: Loc) -> Expr {
        Expr { kind, loc }
    }

    pub fn synth(kind: ExprKind) -> Expr {
        Expr::new(kind, Loc::NONE)
    }

    pub fn var(name: Name) -> Expr {
        Expr::synth(ExprKind::Var(name))
    }

    pub fn int(n: i64) -> Expr {
        Expr::synth(ExprKind::Lit(Literal::Int(n)))
    }

    pub fn str(s: impl Into<String>) -> Expr {
        Expr::synth(ExprKind::Lit(Literal::Str(s.into())))
    }

    pub fn bool_const(b: bool) -> Expr {
        Expr::synth(ExprKind::Herb(
            if b { TAG_TRUE } else { TAG_FALSE }.into(),
            vec![],
        ))
    }

    pub fn builtin(sym: BuiltinSym) -> Expr {
        Expr::synth(ExprKind::Builtin(sym))
    }

    pub fn app(fun: Expr, arg: Expr) -> Expr {
        let loc = fun.loc;
        Expr::new(ExprKind::App(Box::new(fun), Box::new(arg)), loc)
    }

    pub fn apply(fun: Expr, args: impl IntoIterator<Item = Expr>) -> Expr {
        args.into_iter().fold(fun, Expr::app)
    }

    pub fn call(sym: BuiltinSym, args: impl IntoIterator<Item = Expr>) -> Expr {
        Expr::apply(Expr::builtin(sym), args)
    }

    pub fn lam(param: Name, body: Expr) -> Expr {
        Expr::synth(ExprKind::Lam(param, Box::new(body)))
    }

    pub fn let_in(bindings: Vec<Binding>, body: Expr) -> Expr {
        Expr::synth(ExprKind::Let(bindings, Box::new(body)))
    }

    pub fn tuple(items: Vec<Expr>) -> Expr {
        let tag = tuple_tag(items.len());
        Expr::synth(ExprKind::Herb(tag, items))
    }

    /// Is this a literal or a boolean constant?
    pub fn as_bool_const(&self) -> Option<bool> {
        match &self.kind {
            ExprKind::Herb(tag, args) if args.is_empty() && tag == TAG_TRUE => Some(true),
            ExprKind::Herb(tag, args) if args.is_empty() && tag == TAG_FALSE => Some(false),
            _ => None,
        }
    }

    /// If this is a (possibly nested) application, return the head and the
    /// arguments in application order.
    pub fn spine(&self) -> (&Expr, Vec<&Expr>) {
        let mut args = Vec::new();
        let mut head = self;
        while let ExprKind::App(f, a) = &head.kind {
            args.push(a.as_ref());
            head = f;
        }
        args.reverse();
        (head, args)
    }

    /// A saturated builtin application, if that is what this expression is.
    pub fn builtin_call(&self) -> Option<(BuiltinSym, Vec<&Expr>)> {
        let (head, args) = self.spine();
        match head.kind {
            ExprKind::Builtin(sym) if args.len() == sym.arity() => Some((sym, args)),
            _ => None,
        }
    }

    /// Number of nodes in the expression tree, used by inlining heuristics
    /// and pass reports.
    pub fn node_count(&self) -> usize {
        let mut n = 1;
        match &self.kind {
            ExprKind::Var(_) | ExprKind::Lit(_) | ExprKind::Builtin(_) => {}
            ExprKind::App(f, a) => n += f.node_count() + a.node_count(),
            ExprKind::Lam(_, b) => n += b.node_count(),
            ExprKind::Let(bs, body) => {
                n += body.node_count();
                for b in bs {
                    n += b.value.node_count();
                }
            }
            ExprKind::Case(scrut, arms) => {
                n += scrut.node_count();
                for (_, e) in arms {
                    n += e.node_count();
                }
            }
            ExprKind::SetLit(es) | ExprKind::Herb(_, es) => {
                n += es.iter().map(Expr::node_count).sum::<usize>()
            }
            ExprKind::Output(_, e) => n += e.node_count(),
        }
        n
    }

    /// Does any subexpression satisfy the predicate?
    pub fn any(&self, pred: &mut impl FnMut(&Expr) -> bool) -> bool {
        if pred(self) {
            return true;
        }
        match &self.kind {
            ExprKind::Var(_) | ExprKind::Lit(_) | ExprKind::Builtin(_) => false,
            ExprKind::App(f, a) => f.any(pred) || a.any(pred),
            ExprKind::Lam(_, b) => b.any(pred),
            ExprKind::Let(bs, body) => bs.iter().any(|b| b.value.any(pred)) || body.any(pred),
            ExprKind::Case(scrut, arms) => scrut.any(pred) || arms.iter().any(|(_, e)| e.any(pred)),
            ExprKind::SetLit(es) | ExprKind::Herb(_, es) => es.iter().any(|e| e.any(pred)),
            ExprKind::Output(_, e) => e.any(pred),
        }
    }

    /// Does the expression contain a choice marker anywhere?
    pub fn has_choice_marker(&self) -> bool {
        self.any(&mut |e| matches!(e.kind, ExprKind::Builtin(s) if s.is_choice()))
    }

    /// Does the expression contain an output annotation anywhere?
    pub fn has_output(&self) -> bool {
        self.any(&mut |e| matches!(e.kind, ExprKind::Output(..)))
    }
}

/// The free (unbound) identifiers of an expression.
pub fn free_vars(e: &Expr) -> BTreeSet<Name> {
    fn go(e: &Expr, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
        match &e.kind {
            ExprKind::Var(n) => {
                if !bound.contains(n) {
                    out.insert(n.clone());
                }
            }
            ExprKind::Lit(_) | ExprKind::Builtin(_) => {}
            ExprKind::App(f, a) => {
                go(f, bound, out);
                go(a, bound, out);
            }
            ExprKind::Lam(p, b) => {
                bound.push(p.clone());
                go(b, bound, out);
                bound.pop();
            }
            ExprKind::Let(bs, body) => {
                let base = bound.len();
                for b in bs {
                    bound.push(b.name.clone());
                }
                for b in bs {
                    go(&b.value, bound, out);
                }
                go(body, bound, out);
                bound.truncate(base);
            }
            ExprKind::Case(scrut, arms) => {
                go(scrut, bound, out);
                for (pat, body) in arms {
                    let base = bound.len();
                    bound.extend(pat.bound_names());
                    go(body, bound, out);
                    bound.truncate(base);
                }
            }
            ExprKind::SetLit(es) | ExprKind::Herb(_, es) => {
                for e in es {
                    go(e, bound, out);
                }
            }
            ExprKind::Output(_, e) => go(e, bound, out),
        }
    }
    let mut out = BTreeSet::new();
    go(e, &mut Vec::new(), &mut out);
    out
}

/// How often does `name` occur free in `e`?
pub fn count_occurrences(e: &Expr, name: &Name) -> usize {
    match &e.kind {
        ExprKind::Var(n) => usize::from(n == name),
        ExprKind::Lit(_) | ExprKind::Builtin(_) => 0,
        ExprKind::App(f, a) => count_occurrences(f, name) + count_occurrences(a, name),
        ExprKind::Lam(p, b) => {
            if p == name {
                0
            } else {
                count_occurrences(b, name)
            }
        }
        ExprKind::Let(bs, body) => {
            if bs.iter().any(|b| &b.name == name) {
                0
            } else {
                bs.iter().map(|b| count_occurrences(&b.value, name)).sum::<usize>()
                    + count_occurrences(body, name)
            }
        }
        ExprKind::Case(scrut, arms) => {
            let mut n = count_occurrences(scrut, name);
            for (pat, body) in arms {
                if !pat.bound_names().contains(name) {
                    n += count_occurrences(body, name);
                }
            }
            n
        }
        ExprKind::SetLit(es) | ExprKind::Herb(_, es) => {
            es.iter().map(|e| count_occurrences(e, name)).sum()
        }
        ExprKind::Output(_, e) => count_occurrences(e, name),
    }
}

/// Capture-avoiding substitution of `value` for every free occurrence of
/// `name` in `e`. Binders that would capture a free variable of `value` are
/// renamed with fresh names from the supply.
pub fn substitute(e: &Expr, name: &Name, value: &Expr, supply: &mut NameSupply) -> Expr {
    let value_fvs = free_vars(value);
    subst_inner(e, name, value, &value_fvs, supply)
}

fn subst_inner(
    e: &Expr,
    name: &Name,
    value: &Expr,
    value_fvs: &BTreeSet<Name>,
    supply: &mut NameSupply,
) -> Expr {
    let kind = match &e.kind {
        ExprKind::Var(n) => {
            if n == name {
                return value.clone();
            }
            ExprKind::Var(n.clone())
        }
        ExprKind::Lit(l) => ExprKind::Lit(l.clone()),
        ExprKind::Builtin(s) => ExprKind::Builtin(*s),
        ExprKind::App(f, a) => ExprKind::App(
            Box::new(subst_inner(f, name, value, value_fvs, supply)),
            Box::new(subst_inner(a, name, value, value_fvs, supply)),
        ),
        ExprKind::Lam(p, b) => {
            if p == name {
                ExprKind::Lam(p.clone(), b.clone())
            } else if value_fvs.contains(p) && count_occurrences(b, name) > 0 {
                // Rename the binder out of the way.
                let fresh = supply.fresh(GenCat::Var);
                let renamed = rename_free(b, p, &fresh);
                ExprKind::Lam(
                    fresh,
                    Box::new(subst_inner(&renamed, name, value, value_fvs, supply)),
                )
            } else {
                ExprKind::Lam(
                    p.clone(),
                    Box::new(subst_inner(b, name, value, value_fvs, supply)),
                )
            }
        }
        ExprKind::Let(bs, body) => {
            if bs.iter().any(|b| &b.name == name) {
                ExprKind::Let(bs.clone(), body.clone())
            } else {
                let captured: Vec<Name> = bs
                    .iter()
                    .map(|b| b.name.clone())
                    .filter(|n| value_fvs.contains(n))
                    .collect();
                if captured.is_empty() {
                    ExprKind::Let(
                        bs.iter()
                            .map(|b| Binding {
                                name: b.name.clone(),
                                value: subst_inner(&b.value, name, value, value_fvs, supply),
                                hint: b.hint,
                            })
                            .collect(),
                        Box::new(subst_inner(body, name, value, value_fvs, supply)),
                    )
                } else {
                    // Rename the captured group members, then substitute.
                    let mut bs = bs.clone();
                    let mut body = body.as_ref().clone();
                    for old in captured {
                        let fresh = supply.fresh(GenCat::Var);
                        for b in &mut bs {
                            b.value = rename_free(&b.value, &old, &fresh);
                            if b.name == old {
                                b.name = fresh.clone();
                            }
                        }
                        body = rename_free(&body, &old, &fresh);
                    }
                    let renamed = Expr::new(ExprKind::Let(bs, Box::new(body)), e.loc);
                    return subst_inner(&renamed, name, value, value_fvs, supply);
                }
            }
        }
        ExprKind::Case(scrut, arms) => {
            let scrut = Box::new(subst_inner(scrut, name, value, value_fvs, supply));
            let arms = arms
                .iter()
                .map(|(pat, body)| {
                    let bound = pat.bound_names();
                    if bound.contains(name) {
                        (pat.clone(), body.clone())
                    } else if bound.iter().any(|n| value_fvs.contains(n))
                        && count_occurrences(body, name) > 0
                    {
                        let mut pat = pat.clone();
                        let mut body = body.clone();
                        for old in bound.iter().filter(|n| value_fvs.contains(n)) {
                            let fresh = supply.fresh(GenCat::Var);
                            pat = rename_in_pattern(&pat, old, &fresh);
                            body = rename_free(&body, old, &fresh);
                        }
                        (pat, subst_inner(&body, name, value, value_fvs, supply))
                    } else {
                        (
                            pat.clone(),
                            subst_inner(body, name, value, value_fvs, supply),
                        )
                    }
                })
                .collect();
            ExprKind::Case(scrut, arms)
        }
        ExprKind::SetLit(es) => ExprKind::SetLit(
            es.iter()
                .map(|e| subst_inner(e, name, value, value_fvs, supply))
                .collect(),
        ),
        ExprKind::Herb(tag, es) => ExprKind::Herb(
            tag.clone(),
            es.iter()
                .map(|e| subst_inner(e, name, value, value_fvs, supply))
                .collect(),
        ),
        ExprKind::Output(label, inner) => ExprKind::Output(
            label.clone(),
            Box::new(subst_inner(inner, name, value, value_fvs, supply)),
        ),
    };
    Expr::new(kind, e.loc)
}

fn rename_in_pattern(pat: &Pattern, old: &Name, new: &Name) -> Pattern {
    match pat {
        Pattern::Wildcard => Pattern::Wildcard,
        Pattern::Lit(l) => Pattern::Lit(l.clone()),
        Pattern::Var(n) => Pattern::Var(if n == old { new.clone() } else { n.clone() }),
        Pattern::Ctor(tag, subs) => Pattern::Ctor(
            tag.clone(),
            subs.iter().map(|p| rename_in_pattern(p, old, new)).collect(),
        ),
    }
}

/// Rename free occurrences of `old` to `new` (no capture check: `new` must be
/// fresh).
pub fn rename_free(e: &Expr, old: &Name, new: &Name) -> Expr {
    let mut supply = NameSupply::new();
    subst_inner(
        e,
        old,
        &Expr::var(new.clone()),
        &BTreeSet::from([new.clone()]),
        &mut supply,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force environment-tracking walker: an independent oracle for
    /// `free_vars`. Carries a full persistent scope set per subterm instead
    /// of a mutable binder stack.
    fn fv_oracle(e: &Expr) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        let mut work: Vec<(&Expr, BTreeSet<Name>)> = vec![(e, BTreeSet::new())];
        while let Some((e, env)) = work.pop() {
            match &e.kind {
                ExprKind::Var(n) => {
                    if !env.contains(n) {
                        out.insert(n.clone());
                    }
                }
                ExprKind::Lit(_) | ExprKind::Builtin(_) => {}
                ExprKind::App(f, a) => {
                    work.push((f, env.clone()));
                    work.push((a, env));
                }
                ExprKind::Lam(p, b) => {
                    let mut env = env;
                    env.insert(p.clone());
                    work.push((b, env));
                }
                ExprKind::Let(bs, body) => {
                    let mut env = env;
                    for b in bs {
                        env.insert(b.name.clone());
                    }
                    for b in bs {
                        work.push((&b.value, env.clone()));
                    }
                    work.push((body, env));
                }
                ExprKind::Case(scrut, arms) => {
                    work.push((scrut, env.clone()));
                    for (pat, body) in arms {
                        let mut env = env.clone();
                        env.extend(pat.bound_names());
                        work.push((body, env));
                    }
                }
                ExprKind::SetLit(es) | ExprKind::Herb(_, es) => {
                    for e in es {
                        work.push((e, env.clone()));
                    }
                }
                ExprKind::Output(_, inner) => work.push((inner, env)),
            }
        }
        out
    }

    fn v(s: &str) -> Expr {
        Expr::var(Name::src(s))
    }

    #[test]
    fn free_vars_examples() {
        let closed = Expr::lam(Name::src("x"), v("x"));
        assert!(free_vars(&closed).is_empty());

        let open = Expr::app(v("f"), v("x"));
        assert_eq!(
            free_vars(&open),
            BTreeSet::from([Name::src("f"), Name::src("x")])
        );

        let let_e = Expr::let_in(vec![Binding::new(Name::src("y"), v("z"))], v("y"));
        assert_eq!(free_vars(&let_e), BTreeSet::from([Name::src("z")]));

        for e in [&closed, &open, &let_e] {
            assert_eq!(free_vars(e), fv_oracle(e));
        }
    }

    #[test]
    fn free_vars_recursive_let_matches_oracle() {
        // let a := b; b := a in c  -- a, b bound (mutually recursive), c free
        let e = Expr::let_in(
            vec![
                Binding::new(Name::src("a"), v("b")),
                Binding::new(Name::src("b"), v("a")),
            ],
            v("c"),
        );
        assert_eq!(free_vars(&e), BTreeSet::from([Name::src("c")]));
        assert_eq!(free_vars(&e), fv_oracle(&e));
    }

    #[test]
    fn substitute_simple() {
        // (y + 5)[y := 2 * x]  ==  2 * x + 5
        let mut supply = NameSupply::new();
        let body = Expr::call(BuiltinSym::Add, [v("y"), Expr::int(5)]);
        let value = Expr::call(BuiltinSym::Mul, [Expr::int(2), v("x")]);
        let got = substitute(&body, &Name::src("y"), &value, &mut supply);
        let expected = Expr::call(
            BuiltinSym::Add,
            [Expr::call(BuiltinSym::Mul, [Expr::int(2), v("x")]), Expr::int(5)],
        );
        assert!(alpha_equal(&got, &expected));
    }

    #[test]
    fn substitute_shadowed() {
        let mut supply = NameSupply::new();
        let e = Expr::lam(Name::src("x"), v("x"));
        let got = substitute(&e, &Name::src("x"), &Expr::int(1), &mut supply);
        assert!(alpha_equal(&got, &e));
    }

    #[test]
    fn substitute_avoids_capture() {
        // (\z -> y)[y := z] must rename the binder: \w -> z
        let mut supply = NameSupply::new();
        let e = Expr::lam(Name::src("z"), v("y"));
        let got = substitute(&e, &Name::src("y"), &v("z"), &mut supply);
        let expected = Expr::lam(Name::src("w"), v("z"));
        assert!(alpha_equal(&got, &expected), "got {}", pretty(&got));
        // and z must now be free
        assert!(free_vars(&got).contains(&Name::src("z")));
    }

    #[test]
    fn substitute_preserves_freeness() {
        // name not free in value => name not free after substitution
        let e = Expr::call(BuiltinSym::Add, [v("y"), Expr::app(v("f"), v("y"))]);
        let mut supply = NameSupply::new();
        let got = substitute(&e, &Name::src("y"), &Expr::int(2), &mut supply);
        assert!(!free_vars(&got).contains(&Name::src("y")));
    }

    #[test]
    fn alpha_equal_examples() {
        let a = Expr::lam(Name::src("x"), v("x"));
        let b = Expr::lam(Name::src("y"), v("y"));
        assert!(alpha_equal(&a, &b));

        let c = Expr::lam(Name::src("x"), Expr::int(1));
        assert!(!alpha_equal(&a, &c));

        // Free variables must match exactly.
        assert!(!alpha_equal(&v("a"), &v("b")));

        // Reflexive / symmetric / transitive spot checks.
        assert!(alpha_equal(&a, &a));
        assert!(alpha_equal(&b, &a));
    }

    #[test]
    fn alpha_equal_distinguishes_crossed_binders() {
        // \x -> \y -> x  vs  \x -> \y -> y
        let a = Expr::lam(Name::src("x"), Expr::lam(Name::src("y"), v("x")));
        let b = Expr::lam(Name::src("x"), Expr::lam(Name::src("y"), v("y")));
        assert!(!alpha_equal(&a, &b));
    }

    #[test]
    fn pretty_examples() {
        assert_eq!(pretty(&Expr::int(4)), "4");
        assert_eq!(
            pretty(&Expr::call(BuiltinSym::Add, [Expr::int(1), Expr::int(2)])),
            "1 + 2"
        );
        let bind_chain = Expr::call(
            BuiltinSym::Bind,
            [
                v("ss"),
                Expr::lam(
                    Name::src("s"),
                    Expr::call(
                        BuiltinSym::Bind,
                        [
                            v("s"),
                            Expr::lam(Name::src("x"), Expr::synth(ExprKind::SetLit(vec![v("x")]))),
                        ],
                    ),
                ),
            ],
        );
        assert_eq!(pretty(&bind_chain), "bind ss (\\s -> bind s (\\x -> {x}))");
    }

    #[test]
    fn pretty_round_trips() {
        let samples = [
            "let f := \\y -> case y of 1 -> 0; x -> 1 in f 3",
            "bind ss (\\s -> bind s (\\x -> {x}))",
            "! borders (\\t -> case t of (x, y) -> colorof x ~= colorof y)",
            "if a = 1 then {1..3} else {}",
            "outputexp(\"c\", 4) + 5",
            "s[nil[]]",
            "not (p & q) | r",
            "(1, \"a\", true)",
            "chooseFunction_1 colors",
            "card (union {1, 2} {2, 3}) = 3",
            "(-7) + x % 2",
        ];
        for src in samples {
            let e = parse_core(src).unwrap_or_else(|err| panic!("{src}: {err}"));
            let printed = pretty(&e);
            let e2 = parse_core(&printed).unwrap_or_else(|err| panic!("{printed}: {err}"));
            assert!(
                alpha_equal(&e, &e2),
                "round trip changed {src}: printed as {printed}"
            );
        }
    }

    #[test]
    fn name_supply_is_deterministic_and_fresh() {
        let mut a = NameSupply::new();
        let mut b = NameSupply::new();
        let xs: Vec<Name> = (0..4).map(|_| a.fresh(GenCat::Var)).collect();
        let ys: Vec<Name> = (0..4).map(|_| b.fresh(GenCat::Var)).collect();
        assert_eq!(xs, ys);
        let set: BTreeSet<_> = xs.iter().collect();
        assert_eq!(set.len(), xs.len());
        assert_eq!(a.fresh(GenCat::Set).to_string(), "s0");
        assert_eq!(a.fresh(GenCat::Temp).to_string(), "temp0");
    }
}

/// Alpha-equivalence: equality up to consistent renaming of bound variables.
/// Free variables, literals, tags and output labels must match exactly.
pub fn alpha_equal(a: &Expr, b: &Expr) -> bool {
    fn pat_match(
        a: &Pattern,
        b: &Pattern,
        pairs: &mut Vec<(Name, Name)>,
    ) -> bool {
        match (a, b) {
            (Pattern::Wildcard, Pattern::Wildcard) => true,
            (Pattern::Lit(x), Pattern::Lit(y)) => x == y,
            (Pattern::Var(x), Pattern::Var(y)) => {
                pairs.push((x.clone(), y.clone()));
                true
            }
            (Pattern::Ctor(t1, s1), Pattern::Ctor(t2, s2)) => {
                t1 == t2
                    && s1.len() == s2.len()
                    && s1.iter().zip(s2).all(|(x, y)| pat_match(x, y, pairs))
            }
            _ => false,
        }
    }

    fn names_equal(a: &Name, b: &Name, env: &[(Name, Name)]) -> bool {
        for (x, y) in env.iter().rev() {
            let hit_a = x == a;
            let hit_b = y == b;
            if hit_a || hit_b {
                return hit_a && hit_b;
            }
        }
        a == b
    }

    fn go(a: &Expr, b: &Expr, env: &mut Vec<(Name, Name)>) -> bool {
        match (&a.kind, &b.kind) {
            (ExprKind::Var(x), ExprKind::Var(y)) => names_equal(x, y, env),
            (ExprKind::Lit(x), ExprKind::Lit(y)) => x == y,
            (ExprKind::Builtin(x), ExprKind::Builtin(y)) => x == y,
            (ExprKind::App(f1, a1), ExprKind::App(f2, a2)) => go(f1, f2, env) && go(a1, a2, env),
            (ExprKind::Lam(p1, b1), ExprKind::Lam(p2, b2)) => {
                env.push((p1.clone(), p2.clone()));
                let r = go(b1, b2, env);
                env.pop();
                r
            }
            (ExprKind::Let(bs1, body1), ExprKind::Let(bs2, body2)) => {
                if bs1.len() != bs2.len() {
                    return false;
                }
                let base = env.len();
                for (x, y) in bs1.iter().zip(bs2.iter()) {
                    env.push((x.name.clone(), y.name.clone()));
                }
                let r = bs1
                    .iter()
                    .zip(bs2.iter())
                    .all(|(x, y)| go(&x.value, &y.value, env))
                    && go(body1, body2, env);
                env.truncate(base);
                r
            }
            (ExprKind::Case(s1, arms1), ExprKind::Case(s2, arms2)) => {
                if arms1.len() != arms2.len() || !go(s1, s2, env) {
                    return false;
                }
                arms1.iter().zip(arms2.iter()).all(|((p1, e1), (p2, e2))| {
                    let base = env.len();
                    let ok = pat_match(p1, p2, env) && go(e1, e2, env);
                    env.truncate(base);
                    ok
                })
            }
            (ExprKind::SetLit(xs), ExprKind::SetLit(ys)) => {
                xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| go(x, y, env))
            }
            (ExprKind::Herb(t1, xs), ExprKind::Herb(t2, ys)) => {
                t1 == t2 && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| go(x, y, env))
            }
            (ExprKind::Output(l1, e1), ExprKind::Output(l2, e2)) => l1 == l2 && go(e1, e2, env),
            _ => false,
        }
    }

    go(a, b, &mut Vec::new())
}
