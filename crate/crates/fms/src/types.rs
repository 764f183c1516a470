//! Hindley-Milner type inference over Core, with let-polymorphism.
//!
//! Runs after desugaring and, in debug mode, again after every optimization
//! pass. Generalization happens at let bindings only; mutually recursive
//! groups are inferred monomorphically within the group and generalized
//! afterwards. Constructor arguments are monomorphic across the whole
//! program; any argument type still unconstrained after inference defaults
//! to the nominal constructor type.

use crate::desugar::CtorTable;
use crate::graph::tarjan_scc;
use crate::ir::{BuiltinSym, Expr, ExprKind, Literal, Loc, Name, Pattern};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeTerm {
    Var(u32),
    Int,
    Str,
    Bool,
    Set(Box<TypeTerm>),
    Fun(Box<TypeTerm>, Box<TypeTerm>),
    Tuple(Vec<TypeTerm>),
    /// The single nominal type of user constructor terms.
    Data,
}

impl TypeTerm {
    fn fun(a: TypeTerm, b: TypeTerm) -> TypeTerm {
        TypeTerm::Fun(Box::new(a), Box::new(b))
    }

    fn set(a: TypeTerm) -> TypeTerm {
        TypeTerm::Set(Box::new(a))
    }

    fn vars(&self, out: &mut Vec<u32>) {
        match self {
            TypeTerm::Var(v) => {
                if !out.contains(v) {
                    out.push(*v);
                }
            }
            TypeTerm::Int | TypeTerm::Str | TypeTerm::Bool | TypeTerm::Data => {}
            TypeTerm::Set(t) => t.vars(out),
            TypeTerm::Fun(a, b) => {
                a.vars(out);
                b.vars(out);
            }
            TypeTerm::Tuple(ts) => {
                for t in ts {
                    t.vars(out);
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeScheme {
    pub quantified: Vec<u32>,
    pub body: TypeTerm,
}

impl TypeScheme {
    pub fn mono(t: TypeTerm) -> TypeScheme {
        TypeScheme {
            quantified: vec![],
            body: t,
        }
    }
}

impl fmt::Display for TypeScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut names = BTreeMap::new();
        for (i, v) in self.quantified.iter().enumerate() {
            names.insert(*v, var_name(i));
        }
        if !self.quantified.is_empty() {
            write!(f, "forall")?;
            for i in 0..self.quantified.len() {
                write!(f, " {}", var_name(i))?;
            }
            write!(f, ". ")?;
        }
        write_type(f, &self.body, &names, 0)
    }
}

fn var_name(i: usize) -> String {
    let letter = (b'a' + (i % 26) as u8) as char;
    if i < 26 {
        letter.to_string()
    } else {
        format!("{}{}", letter, i / 26)
    }
}

fn write_type(
    f: &mut fmt::Formatter<'_>,
    t: &TypeTerm,
    names: &BTreeMap<u32, String>,
    prec: u8,
) -> fmt::Result {
    match t {
        TypeTerm::Var(v) => match names.get(v) {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "t{v}"),
        },
        TypeTerm::Int => write!(f, "Int"),
        TypeTerm::Str => write!(f, "String"),
        TypeTerm::Bool => write!(f, "Bool"),
        TypeTerm::Data => write!(f, "Data"),
        TypeTerm::Set(e) => {
            if prec > 1 {
                write!(f, "(")?;
            }
            write!(f, "Set ")?;
            write_type(f, e, names, 2)?;
            if prec > 1 {
                write!(f, ")")?;
            }
            Ok(())
        }
        TypeTerm::Fun(a, b) => {
            if prec > 0 {
                write!(f, "(")?;
            }
            write_type(f, a, names, 1)?;
            write!(f, " -> ")?;
            write_type(f, b, names, 0)?;
            if prec > 0 {
                write!(f, ")")?;
            }
            Ok(())
        }
        TypeTerm::Tuple(ts) => {
            write!(f, "(")?;
            for (i, t) in ts.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write_type(f, t, names, 0)?;
            }
            write!(f, ")")
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TypeError {
    #[error("{loc}: type mismatch: expected {expected}, found {found}")]
    Mismatch {
        expected: String,
        found: String,
        loc: Loc,
    },
    #[error("{loc}: cannot construct the infinite type t{var} = {ty}")]
    Occurs { var: u32, ty: String, loc: Loc },
    #[error("{loc}: unbound variable `{name}` reached the type checker")]
    Unbound { name: String, loc: Loc },
}

/// Inference result for a whole program: the top-level scheme plus the
/// schemes of the outermost let bindings (for `--dump-types`).
#[derive(Debug, Clone)]
pub struct Inferred {
    pub scheme: TypeScheme,
    pub bindings: Vec<(Name, TypeScheme)>,
}

/// Infer the principal type scheme of a closed expression.
pub fn infer(e: &Expr, ctors: &CtorTable) -> Result<TypeScheme, TypeError> {
    Ok(infer_program(e, ctors)?.scheme)
}

/// Like [`infer`] but also reports the schemes of the outermost bindings.
pub fn infer_program(e: &Expr, ctors: &CtorTable) -> Result<Inferred, TypeError> {
    let mut inf = Infer::new(ctors);
    let mut env = Env::default();
    let t = inf.infer(e, &mut env, true)?;
    let t = inf.resolve(&t);
    let scheme = inf.generalize(&t, &env);
    let bindings = inf
        .top_schemes
        .iter()
        .map(|(n, s)| (n.clone(), inf.rezip(s)))
        .collect();
    Ok(Inferred { scheme, bindings })
}

/// Pass postcondition used in debug mode: optimization must keep the program
/// well typed.
pub fn check_preservation(before: &Expr, after: &Expr, ctors: &CtorTable) -> bool {
    debug_assert!(infer(before, ctors).is_ok());
    infer(after, ctors).is_ok()
}

#[derive(Default, Clone)]
struct Env {
    scopes: Vec<(Name, TypeScheme)>,
}

impl Env {
    fn lookup(&self, name: &Name) -> Option<&TypeScheme> {
        self.scopes.iter().rev().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    fn push(&mut self, name: Name, scheme: TypeScheme) {
        self.scopes.push((name, scheme));
    }

    fn truncate(&mut self, len: usize) {
        self.scopes.truncate(len);
    }

    fn len(&self) -> usize {
        self.scopes.len()
    }
}

struct Infer {
    subst: Vec<Option<TypeTerm>>,
    /// Monomorphic argument types per constructor, shared program-wide.
    ctor_sigs: BTreeMap<String, Vec<TypeTerm>>,
    top_schemes: Vec<(Name, TypeScheme)>,
}

impl Infer {
    fn new(ctors: &CtorTable) -> Infer {
        let mut inf = Infer {
            subst: Vec::new(),
            ctor_sigs: BTreeMap::new(),
            top_schemes: Vec::new(),
        };
        let tags: Vec<(String, usize)> =
            ctors.iter().map(|(t, a)| (t.clone(), *a)).collect();
        for (tag, arity) in tags {
            let sig = (0..arity).map(|_| inf.fresh()).collect();
            inf.ctor_sigs.insert(tag, sig);
        }
        inf
    }

    fn fresh(&mut self) -> TypeTerm {
        let v = self.subst.len() as u32;
        self.subst.push(None);
        TypeTerm::Var(v)
    }

    /// Follow the substitution all the way down.
    fn resolve(&self, t: &TypeTerm) -> TypeTerm {
        match t {
            TypeTerm::Var(v) => match &self.subst[*v as usize] {
                Some(bound) => self.resolve(&bound.clone()),
                None => t.clone(),
            },
            TypeTerm::Int | TypeTerm::Str | TypeTerm::Bool | TypeTerm::Data => t.clone(),
            TypeTerm::Set(e) => TypeTerm::set(self.resolve(e)),
            TypeTerm::Fun(a, b) => TypeTerm::fun(self.resolve(a), self.resolve(b)),
            TypeTerm::Tuple(ts) => {
                TypeTerm::Tuple(ts.iter().map(|t| self.resolve(t)).collect())
            }
        }
    }

    fn unify(&mut self, a: &TypeTerm, b: &TypeTerm, loc: Loc) -> Result<(), TypeError> {
        let a = self.shallow(a);
        let b = self.shallow(b);
        match (&a, &b) {
            (TypeTerm::Var(x), TypeTerm::Var(y)) if x == y => Ok(()),
            (TypeTerm::Var(v), other) | (other, TypeTerm::Var(v)) => {
                if self.occurs(*v, other) {
                    return Err(TypeError::Occurs {
                        var: *v,
                        ty: format!("{}", TypeScheme::mono(self.resolve(other))),
                        loc,
                    });
                }
                self.subst[*v as usize] = Some(other.clone());
                Ok(())
            }
            (TypeTerm::Int, TypeTerm::Int)
            | (TypeTerm::Str, TypeTerm::Str)
            | (TypeTerm::Bool, TypeTerm::Bool)
            | (TypeTerm::Data, TypeTerm::Data) => Ok(()),
            (TypeTerm::Set(x), TypeTerm::Set(y)) => self.unify(x, y, loc),
            (TypeTerm::Fun(a1, r1), TypeTerm::Fun(a2, r2)) => {
                self.unify(a1, a2, loc)?;
                self.unify(r1, r2, loc)
            }
            (TypeTerm::Tuple(xs), TypeTerm::Tuple(ys)) if xs.len() == ys.len() => {
                for (x, y) in xs.iter().zip(ys) {
                    self.unify(x, y, loc)?;
                }
                Ok(())
            }
            _ => Err(TypeError::Mismatch {
                expected: format!("{}", TypeScheme::mono(self.resolve(&a))),
                found: format!("{}", TypeScheme::mono(self.resolve(&b))),
                loc,
            }),
        }
    }

    /// Resolve only the outermost variable.
    fn shallow(&self, t: &TypeTerm) -> TypeTerm {
        match t {
            TypeTerm::Var(v) => match &self.subst[*v as usize] {
                Some(bound) => self.shallow(&bound.clone()),
                None => t.clone(),
            },
            _ => t.clone(),
        }
    }

    fn occurs(&self, v: u32, t: &TypeTerm) -> bool {
        match self.shallow(t) {
            TypeTerm::Var(w) => v == w,
            TypeTerm::Int | TypeTerm::Str | TypeTerm::Bool | TypeTerm::Data => false,
            TypeTerm::Set(e) => self.occurs(v, &e),
            TypeTerm::Fun(a, b) => self.occurs(v, &a) || self.occurs(v, &b),
            TypeTerm::Tuple(ts) => ts.iter().any(|t| self.occurs(v, t)),
        }
    }

    fn instantiate(&mut self, scheme: &TypeScheme) -> TypeTerm {
        let mut mapping = BTreeMap::new();
        for q in &scheme.quantified {
            mapping.insert(*q, self.fresh());
        }
        fn walk(t: &TypeTerm, m: &BTreeMap<u32, TypeTerm>) -> TypeTerm {
            match t {
                TypeTerm::Var(v) => m.get(v).cloned().unwrap_or_else(|| t.clone()),
                TypeTerm::Int | TypeTerm::Str | TypeTerm::Bool | TypeTerm::Data => t.clone(),
                TypeTerm::Set(e) => TypeTerm::set(walk(e, m)),
                TypeTerm::Fun(a, b) => TypeTerm::fun(walk(a, m), walk(b, m)),
                TypeTerm::Tuple(ts) => TypeTerm::Tuple(ts.iter().map(|t| walk(t, m)).collect()),
            }
        }
        walk(&scheme.body, &mapping)
    }

    /// Quantify the variables free in `t` but not in the environment or in a
    /// constructor signature.
    fn generalize(&self, t: &TypeTerm, env: &Env) -> TypeScheme {
        let t = self.resolve(t);
        let mut protected = Vec::new();
        for (_, scheme) in &env.scopes {
            let body = self.resolve(&scheme.body);
            body.vars(&mut protected);
        }
        for sig in self.ctor_sigs.values() {
            for arg in sig {
                self.resolve(arg).vars(&mut protected);
            }
        }
        let mut vars = Vec::new();
        t.vars(&mut vars);
        let quantified: Vec<u32> = vars.into_iter().filter(|v| !protected.contains(v)).collect();
        TypeScheme { quantified, body: t }
    }

    /// Re-resolve a stored scheme body against the final substitution.
    fn rezip(&self, s: &TypeScheme) -> TypeScheme {
        TypeScheme {
            quantified: s.quantified.clone(),
            body: self.resolve(&s.body),
        }
    }

    fn builtin_type(&mut self, sym: BuiltinSym) -> TypeTerm {
        use BuiltinSym::*;
        use TypeTerm::{Bool, Int};
        match sym {
            Add | Sub | Mul | Div | Mod => {
                TypeTerm::fun(Int, TypeTerm::fun(Int, Int))
            }
            Lt | Le | Gt | Ge => TypeTerm::fun(Int, TypeTerm::fun(Int, Bool)),
            Eq | Neq => {
                let a = self.fresh();
                TypeTerm::fun(a.clone(), TypeTerm::fun(a, Bool))
            }
            And | Or | Implies | Iff => TypeTerm::fun(Bool, TypeTerm::fun(Bool, Bool)),
            Not => TypeTerm::fun(Bool, Bool),
            Forall | Exists => {
                let a = self.fresh();
                TypeTerm::fun(
                    TypeTerm::set(a.clone()),
                    TypeTerm::fun(TypeTerm::fun(a, Bool), Bool),
                )
            }
            Bind => {
                let a = self.fresh();
                let b = self.fresh();
                TypeTerm::fun(
                    TypeTerm::set(a.clone()),
                    TypeTerm::fun(
                        TypeTerm::fun(a, TypeTerm::set(b.clone())),
                        TypeTerm::set(b),
                    ),
                )
            }
            Union => {
                let a = self.fresh();
                TypeTerm::fun(
                    TypeTerm::set(a.clone()),
                    TypeTerm::fun(TypeTerm::set(a.clone()), TypeTerm::set(a)),
                )
            }
            MemberOf => {
                let a = self.fresh();
                TypeTerm::fun(a.clone(), TypeTerm::fun(TypeTerm::set(a), Bool))
            }
            Card => {
                let a = self.fresh();
                TypeTerm::fun(TypeTerm::set(a), Int)
            }
            Ite => {
                let a = self.fresh();
                TypeTerm::fun(Bool, TypeTerm::fun(a.clone(), TypeTerm::fun(a.clone(), a)))
            }
            Range => TypeTerm::fun(Int, TypeTerm::fun(Int, TypeTerm::set(Int))),
            TupleCons(n) => {
                let args: Vec<TypeTerm> = (0..n).map(|_| self.fresh()).collect();
                let mut t = TypeTerm::Tuple(args.clone());
                for a in args.into_iter().rev() {
                    t = TypeTerm::fun(a, t);
                }
                t
            }
            ChooseElement => {
                let a = self.fresh();
                TypeTerm::fun(TypeTerm::set(a.clone()), a)
            }
            ChooseSubset => {
                let a = self.fresh();
                TypeTerm::fun(TypeTerm::set(a.clone()), TypeTerm::set(a))
            }
            ChooseFunction(n) => {
                let cod = self.fresh();
                let mut t = cod.clone();
                for _ in 0..n {
                    let arg = self.fresh();
                    t = TypeTerm::fun(arg, t);
                }
                TypeTerm::fun(TypeTerm::set(cod), t)
            }
        }
    }

    fn pattern_type(
        &mut self,
        pat: &Pattern,
        env: &mut Env,
        loc: Loc,
    ) -> Result<TypeTerm, TypeError> {
        match pat {
            Pattern::Wildcard => Ok(self.fresh()),
            Pattern::Var(n) => {
                let t = self.fresh();
                env.push(n.clone(), TypeScheme::mono(t.clone()));
                Ok(t)
            }
            Pattern::Lit(Literal::Int(_)) => Ok(TypeTerm::Int),
            Pattern::Lit(Literal::Str(_)) => Ok(TypeTerm::Str),
            Pattern::Ctor(tag, subs) => {
                if subs.is_empty() && (tag == crate::ir::TAG_TRUE || tag == crate::ir::TAG_FALSE) {
                    return Ok(TypeTerm::Bool);
                }
                if let Some(width) = crate::ir::tuple_width(tag) {
                    if width == subs.len() {
                        let mut ts = Vec::new();
                        for s in subs {
                            ts.push(self.pattern_type(s, env, loc)?);
                        }
                        return Ok(TypeTerm::Tuple(ts));
                    }
                }
                let sig = self.ctor_sigs.get(tag).cloned().unwrap_or_default();
                for (sub, arg_ty) in subs.iter().zip(sig.iter()) {
                    let sub_ty = self.pattern_type(sub, env, loc)?;
                    self.unify(&sub_ty, arg_ty, loc)?;
                }
                Ok(TypeTerm::Data)
            }
        }
    }

    fn infer(&mut self, e: &Expr, env: &mut Env, top: bool) -> Result<TypeTerm, TypeError> {
        match &e.kind {
            ExprKind::Var(n) => match env.lookup(n) {
                Some(scheme) => {
                    let scheme = scheme.clone();
                    Ok(self.instantiate(&scheme))
                }
                None => Err(TypeError::Unbound {
                    name: n.to_string(),
                    loc: e.loc,
                }),
            },
            ExprKind::Lit(Literal::Int(_)) => Ok(TypeTerm::Int),
            ExprKind::Lit(Literal::Str(_)) => Ok(TypeTerm::Str),
            ExprKind::Builtin(sym) => Ok(self.builtin_type(*sym)),
            ExprKind::App(f, a) => {
                let tf = self.infer(f, env, false)?;
                let ta = self.infer(a, env, false)?;
                let out = self.fresh();
                self.unify(&tf, &TypeTerm::fun(ta, out.clone()), e.loc)?;
                Ok(out)
            }
            ExprKind::Lam(p, body) => {
                let tp = self.fresh();
                let base = env.len();
                env.push(p.clone(), TypeScheme::mono(tp.clone()));
                let tb = self.infer(body, env, false)?;
                env.truncate(base);
                Ok(TypeTerm::fun(tp, tb))
            }
            ExprKind::Let(bindings, body) => {
                let base = env.len();
                // Infer binding groups in dependency order so each group is
                // generalized before its users are inferred.
                let names: Vec<Name> = bindings.iter().map(|b| b.name.clone()).collect();
                let adj: Vec<Vec<usize>> = bindings
                    .iter()
                    .map(|b| {
                        let fvs = crate::ir::free_vars(&b.value);
                        names
                            .iter()
                            .enumerate()
                            .filter(|(_, n)| fvs.contains(n))
                            .map(|(i, _)| i)
                            .collect()
                    })
                    .collect();
                for group in tarjan_scc(&adj) {
                    let group_base = env.len();
                    let mut monos = Vec::new();
                    for &i in &group {
                        let t = self.fresh();
                        env.push(names[i].clone(), TypeScheme::mono(t.clone()));
                        monos.push(t);
                    }
                    for (&i, mono) in group.iter().zip(&monos) {
                        let t = self.infer(&bindings[i].value, env, false)?;
                        self.unify(mono, &t, bindings[i].value.loc)?;
                    }
                    // Replace the monomorphic entries with generalized ones.
                    // Declarations stay monomorphic: a searched symbol has one
                    // concrete interpretation, and its unconstrained parts
                    // (such as a function's domain) must be pinned down by
                    // the constraints that use it.
                    env.truncate(group_base);
                    for (&i, mono) in group.iter().zip(&monos) {
                        let scheme = if bindings[i].value.has_choice_marker() {
                            TypeScheme::mono(mono.clone())
                        } else {
                            self.generalize(mono, env)
                        };
                        if top {
                            self.top_schemes.push((names[i].clone(), scheme.clone()));
                        }
                        env.push(names[i].clone(), scheme);
                    }
                }
                let t = self.infer(body, env, false)?;
                env.truncate(base);
                Ok(t)
            }
            ExprKind::Case(scrut, arms) => {
                let ts = self.infer(scrut, env, false)?;
                let out = self.fresh();
                for (pat, body) in arms {
                    let base = env.len();
                    let tp = self.pattern_type(pat, env, body.loc)?;
                    self.unify(&ts, &tp, scrut.loc)?;
                    let tb = self.infer(body, env, false)?;
                    self.unify(&out, &tb, body.loc)?;
                    env.truncate(base);
                }
                Ok(out)
            }
            ExprKind::SetLit(es) => {
                let elem = self.fresh();
                for item in es {
                    let t = self.infer(item, env, false)?;
                    self.unify(&elem, &t, item.loc)?;
                }
                Ok(TypeTerm::set(elem))
            }
            ExprKind::Herb(tag, args) => {
                if args.is_empty() && (tag == crate::ir::TAG_TRUE || tag == crate::ir::TAG_FALSE) {
                    return Ok(TypeTerm::Bool);
                }
                if crate::ir::tuple_width(tag) == Some(args.len()) {
                    let mut ts = Vec::new();
                    for a in args {
                        ts.push(self.infer(a, env, false)?);
                    }
                    return Ok(TypeTerm::Tuple(ts));
                }
                let sig = self.ctor_sigs.get(tag).cloned().unwrap_or_else(|| {
                    // Unknown tag: treat as a fresh constructor of this arity.
                    (0..args.len()).map(|_| TypeTerm::Data).collect()
                });
                for (a, arg_ty) in args.iter().zip(sig.iter()) {
                    let t = self.infer(a, env, false)?;
                    self.unify(&t, arg_ty, a.loc)?;
                }
                Ok(TypeTerm::Data)
            }
            ExprKind::Output(_, inner) => self.infer(inner, env, false),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::desugar::desugar;
    use crate::ir::{parse_core, Expr, Name};
    use crate::syntax::parse;

    fn infer_str(src: &str) -> Result<TypeScheme, TypeError> {
        let e = parse_core(src).unwrap();
        infer(&e, &CtorTable::new())
    }

    #[test]
    fn identity_is_polymorphic() {
        let s = infer_str("\\x -> x").unwrap();
        assert_eq!(s.to_string(), "forall a. a -> a");
    }

    #[test]
    fn forall_quantifier_scheme() {
        let s = infer(&Expr::builtin(BuiltinSym::Forall), &CtorTable::new()).unwrap();
        assert_eq!(s.to_string(), "forall a. Set a -> (a -> Bool) -> Bool");
    }

    #[test]
    fn int_plus_string_is_an_error() {
        let err = infer_str("1 + \"a\"").unwrap_err();
        match err {
            TypeError::Mismatch { expected, found, .. } => {
                assert!(expected.contains("Int") && found.contains("String"));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn occurs_check_fires() {
        let err = infer_str("\\x -> x x").unwrap_err();
        assert!(matches!(err, TypeError::Occurs { .. }));
    }

    #[test]
    fn set_elements_must_agree() {
        assert!(infer_str("{1, 2, 3}").is_ok());
        assert!(infer_str("{1, \"a\"}").is_err());
    }

    #[test]
    fn let_polymorphism_allows_two_uses() {
        let s = infer_str("let id := \\x -> x in (id 1, id \"a\")").unwrap();
        assert_eq!(s.to_string(), "(Int, String)");
    }

    #[test]
    fn recursive_group_is_monomorphic_then_generalized() {
        let s = infer_str(
            "let odd := \\x -> if x = 0 then false else even (x - 1); \
                 even := \\x -> if x = 0 then true else odd (x - 1) \
             in even 4",
        )
        .unwrap();
        assert_eq!(s.to_string(), "Bool");
    }

    #[test]
    fn graph_coloring_types_check() {
        let src = r#"
borders := {("a","b"), ("b","c"), ("c","a")}.
colors := {1..3}.
colorof/1 :: function to colors.
! borders (\(x,y) -> colorof x ~= colorof y).
"#;
        let d = desugar(&parse(src).unwrap()).unwrap();
        let inferred = infer_program(&d.core, &d.ctors).unwrap();
        assert_eq!(inferred.scheme.to_string(), "Bool");
        let colorof = inferred
            .bindings
            .iter()
            .find(|(n, _)| *n == Name::src("colorof"))
            .map(|(_, s)| s.to_string())
            .unwrap();
        assert_eq!(colorof, "String -> Int");
    }

    #[test]
    fn constructor_arguments_unify_across_uses() {
        let src = "s/1 :: constructor. nil/0 :: constructor. \
                   minusOne x := case x of s[a] -> a; nil[] -> nil;. \
                   minusOne (s nil) = nil.";
        let d = desugar(&parse(src).unwrap()).unwrap();
        let inferred = infer_program(&d.core, &d.ctors).unwrap();
        assert_eq!(inferred.scheme.to_string(), "Bool");
        let minus_one = inferred
            .bindings
            .iter()
            .find(|(n, _)| *n == Name::src("minusOne"))
            .map(|(_, s)| s.to_string())
            .unwrap();
        assert_eq!(minus_one, "Data -> Data");
    }

    #[test]
    fn inference_is_stable_under_alpha_renaming() {
        let a = infer_str("\\x -> \\y -> x").unwrap();
        let b = infer_str("\\p -> \\q -> p").unwrap();
        assert_eq!(a.to_string(), b.to_string());
    }

    #[test]
    fn check_preservation_accepts_and_rejects() {
        let ctors = CtorTable::new();
        let before = parse_core("let y := 2 * x in y + 5").unwrap();
        // `x` is free there; wrap it
        let before = Expr::lam(Name::src("x"), before);
        let after = Expr::lam(Name::src("x"), parse_core("2 * x + 5").unwrap());
        assert!(check_preservation(&before, &after, &ctors));

        let broken = parse_core("1 + \"a\"").unwrap();
        assert!(!infer(&broken, &ctors).is_ok());
    }

    #[test]
    fn higher_order_function_set_types_check() {
        let src = r#"
c :: element of {3..5}.
d :: element of {3..5}.
s := {\x -> x * 2, \x -> x + c, \x -> x * c}.
! s (\f -> f d < 10).
"#;
        let d = desugar(&parse(src).unwrap()).unwrap();
        let inferred = infer_program(&d.core, &d.ctors).unwrap();
        assert_eq!(inferred.scheme.to_string(), "Bool");
    }
}
