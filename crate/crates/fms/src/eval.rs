//! Reference interpreter for fully-defined Core expressions.
//!
//! Call-by-value with recursive lets: entering a `let` forces every binding
//! in order, with on-demand forcing for forward references and blackholing
//! for genuinely circular non-function bindings. Integers are arbitrary
//! precision so the interpreter stays exact. Choice markers are rejected;
//! searching is the solver's job.
//!
//! Output expressions evaluate their inner expression and append
//! `(label, value)` to a side channel in evaluation order.

use crate::ir::{BuiltinSym, Expr, ExprKind, Literal, Loc, Name, Pattern, TAG_FALSE, TAG_TRUE};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;
use thiserror::Error;

/// Ranges bigger than this are refused rather than materialized.
const MAX_RANGE: i64 = 1_000_000;

#[derive(Debug, Clone)]
pub enum Value {
    Int(BigInt),
    Str(String),
    Bool(bool),
    /// Sorted and deduplicated; never contains function values.
    Set(Vec<Value>),
    Herb(String, Vec<Value>),
    Closure(Name, Rc<Expr>, Env),
    BuiltinPartial(BuiltinSym, Vec<Value>),
}

impl Value {
    pub fn int(n: i64) -> Value {
        Value::Int(BigInt::from(n))
    }

    pub fn is_function(&self) -> bool {
        matches!(self, Value::Closure(..) | Value::BuiltinPartial(..))
    }

    /// Total order on comparable (non-function) values; functions have no
    /// structural identity.
    pub fn try_cmp(&self, other: &Value) -> Option<Ordering> {
        fn rank(v: &Value) -> u8 {
            match v {
                Value::Int(_) => 0,
                Value::Str(_) => 1,
                Value::Bool(_) => 2,
                Value::Herb(..) => 3,
                Value::Set(_) => 4,
                Value::Closure(..) | Value::BuiltinPartial(..) => 5,
            }
        }
        match (self, other) {
            (Value::Int(a), Value::Int(b)) => Some(a.cmp(b)),
            (Value::Str(a), Value::Str(b)) => Some(a.cmp(b)),
            (Value::Bool(a), Value::Bool(b)) => Some(a.cmp(b)),
            (Value::Herb(t1, a1), Value::Herb(t2, a2)) => match t1.cmp(t2) {
                Ordering::Equal => cmp_slices(a1, a2),
                other => Some(other),
            },
            (Value::Set(a), Value::Set(b)) => cmp_slices(a, b),
            (a, b) if a.is_function() || b.is_function() => None,
            (a, b) => Some(rank(a).cmp(&rank(b))),
        }
    }

    pub fn try_eq(&self, other: &Value) -> Option<bool> {
        self.try_cmp(other).map(|o| o == Ordering::Equal)
    }
}

fn cmp_slices(a: &[Value], b: &[Value]) -> Option<Ordering> {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.try_cmp(y)? {
            Ordering::Equal => continue,
            other => return Some(other),
        }
    }
    Some(a.len().cmp(&b.len()))
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(n) => write!(f, "{n}"),
            Value::Str(s) => write!(f, "{s:?}"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Set(items) => {
                write!(f, "{{")?;
                for (i, v) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, "}}")
            }
            Value::Herb(tag, args) => {
                if crate::ir::tuple_width(tag) == Some(args.len()) && args.len() >= 2 {
                    write!(f, "(")?;
                    for (i, v) in args.iter().enumerate() {
                        if i > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{v}")?;
                    }
                    write!(f, ")")
                } else if args.is_empty() {
                    write!(f, "{tag}")
                } else {
                    write!(f, "{tag}[")?;
                    for (i, v) in args.iter().enumerate() {
                        if i > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{v}")?;
                    }
                    write!(f, "]")
                }
            }
            Value::Closure(..) | Value::BuiltinPartial(..) => write!(f, "<function>"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("{0}: no case arm matches the scrutinee")]
    NonExhaustiveMatch(Loc),
    #[error("{0}: division by zero")]
    DivisionByZero(Loc),
    #[error("{0}: quantification over a non-set value")]
    InfiniteSetOperation(Loc),
    #[error("{0}: choice marker reached the evaluator; declarations require the solver")]
    ChoiceMarkerEncountered(Loc),
    #[error("{0}: binding `{1}` demands its own value while being evaluated")]
    DivergentBinding(Loc, String),
    #[error("{0}: function values cannot be stored in sets or compared")]
    FunctionNotComparable(Loc),
    #[error("{0}: range {1}..{2} is too large to materialize")]
    RangeTooLarge(Loc, String, String),
    #[error("{0}: dynamic type error: {1}")]
    Dynamic(Loc, String),
    #[error("{0}: `{1}` is unbound at evaluation time")]
    UnboundAtRuntime(Loc, String),
}

/// Lexically scoped environment with support for recursive bindings.
#[derive(Debug, Clone, Default)]
pub struct Env(Option<Rc<Frame>>);

#[derive(Debug)]
struct Frame {
    parent: Env,
    slots: RefCell<Vec<(Name, Slot)>>,
}

#[derive(Debug, Clone)]
enum Slot {
    Done(Value),
    Pending(Rc<Expr>),
    InProgress,
}

impl Env {
    pub fn empty() -> Env {
        Env(None)
    }

    /// An environment holding pre-computed values.
    pub fn from_values(values: impl IntoIterator<Item = (Name, Value)>) -> Env {
        let slots = values
            .into_iter()
            .map(|(n, v)| (n, Slot::Done(v)))
            .collect();
        Env(Some(Rc::new(Frame {
            parent: Env::empty(),
            slots: RefCell::new(slots),
        })))
    }

    fn child(&self, slots: Vec<(Name, Slot)>) -> Env {
        Env(Some(Rc::new(Frame {
            parent: self.clone(),
            slots: RefCell::new(slots),
        })))
    }

    fn bind(&self, name: Name, value: Value) -> Env {
        self.child(vec![(name, Slot::Done(value))])
    }
}

/// Evaluate a closed expression with an empty environment; returns the value
/// and the ordered output channel.
pub fn eval_closed(e: &Expr) -> Result<(Value, Vec<(String, Value)>), EvalError> {
    eval_in(e, &Env::empty())
}

/// Evaluate under the given environment.
pub fn eval_in(e: &Expr, env: &Env) -> Result<(Value, Vec<(String, Value)>), EvalError> {
    let mut ev = Evaluator { channel: Vec::new() };
    let v = ev.eval(e, env)?;
    Ok((v, ev.channel))
}

/// Evaluate and discard the output channel.
pub fn eval(e: &Expr, env: &Env) -> Result<Value, EvalError> {
    Ok(eval_in(e, env)?.0)
}

struct Evaluator {
    channel: Vec<(String, Value)>,
}

impl Evaluator {
    fn eval(&mut self, e: &Expr, env: &Env) -> Result<Value, EvalError> {
        match &e.kind {
            ExprKind::Var(n) => self.lookup(env, n, e.loc),
            ExprKind::Lit(Literal::Int(n)) => Ok(Value::int(*n)),
            ExprKind::Lit(Literal::Str(s)) => Ok(Value::Str(s.clone())),
            ExprKind::Builtin(sym) => {
                if sym.is_choice() {
                    return Err(EvalError::ChoiceMarkerEncountered(e.loc));
                }
                Ok(Value::BuiltinPartial(*sym, vec![]))
            }
            ExprKind::Lam(p, body) => {
                Ok(Value::Closure(p.clone(), Rc::new((**body).clone()), env.clone()))
            }
            ExprKind::App(..) => self.eval_app(e, env),
            ExprKind::Let(bindings, body) => {
                let slots: Vec<(Name, Slot)> = bindings
                    .iter()
                    .map(|b| (b.name.clone(), Slot::Pending(Rc::new(b.value.clone()))))
                    .collect();
                let inner = env.child(slots);
                // Force every binding in order (forward references force on
                // demand through lookup).
                for b in bindings {
                    self.lookup(&inner, &b.name, b.value.loc)?;
                }
                self.eval(body, &inner)
            }
            ExprKind::Case(scrut, arms) => {
                let v = self.eval(scrut, env)?;
                for (pat, body) in arms {
                    let mut binds = Vec::new();
                    if match_pattern(pat, &v, &mut binds) {
                        let mut inner = env.clone();
                        for (n, val) in binds {
                            inner = inner.bind(n, val);
                        }
                        return self.eval(body, &inner);
                    }
                }
                Err(EvalError::NonExhaustiveMatch(e.loc))
            }
            ExprKind::SetLit(items) => {
                let mut vals = Vec::new();
                for item in items {
                    vals.push(self.eval(item, env)?);
                }
                make_set(vals, e.loc)
            }
            ExprKind::Herb(tag, args) => {
                if args.is_empty() && tag == TAG_TRUE {
                    return Ok(Value::Bool(true));
                }
                if args.is_empty() && tag == TAG_FALSE {
                    return Ok(Value::Bool(false));
                }
                let mut vals = Vec::new();
                for a in args {
                    vals.push(self.eval(a, env)?);
                }
                Ok(Value::Herb(tag.clone(), vals))
            }
            ExprKind::Output(label, inner) => {
                let v = self.eval(inner, env)?;
                self.channel.push((label.clone(), v.clone()));
                Ok(v)
            }
        }
    }

    fn lookup(&mut self, env: &Env, name: &Name, loc: Loc) -> Result<Value, EvalError> {
        let mut cur = env.clone();
        while let Env(Some(frame)) = cur {
            let found = {
                let slots = frame.slots.borrow();
                slots.iter().position(|(n, _)| n == name)
            };
            if let Some(idx) = found {
                let slot = frame.slots.borrow()[idx].1.clone();
                return match slot {
                    Slot::Done(v) => Ok(v),
                    Slot::InProgress => {
                        Err(EvalError::DivergentBinding(loc, name.to_string()))
                    }
                    Slot::Pending(expr) => {
                        frame.slots.borrow_mut()[idx].1 = Slot::InProgress;
                        let env_for_value = Env(Some(frame.clone()));
                        let v = self.eval(&expr, &env_for_value)?;
                        frame.slots.borrow_mut()[idx].1 = Slot::Done(v.clone());
                        Ok(v)
                    }
                };
            }
            cur = frame.parent.clone();
        }
        Err(EvalError::UnboundAtRuntime(loc, name.to_string()))
    }

    fn eval_app(&mut self, e: &Expr, env: &Env) -> Result<Value, EvalError> {
        // If-then-else must not evaluate the untaken branch.
        if let Some((BuiltinSym::Ite, args)) = e.builtin_call() {
            let c = self.eval(args[0], env)?;
            return match c {
                Value::Bool(true) => self.eval(args[1], env),
                Value::Bool(false) => self.eval(args[2], env),
                other => Err(EvalError::Dynamic(
                    e.loc,
                    format!("if-condition evaluated to {other}"),
                )),
            };
        }
        let ExprKind::App(f, a) = &e.kind else { unreachable!() };
        let fv = self.eval(f, env)?;
        let av = self.eval(a, env)?;
        self.apply(fv, av, e.loc)
    }

    fn apply(&mut self, f: Value, arg: Value, loc: Loc) -> Result<Value, EvalError> {
        match f {
            Value::Closure(param, body, env) => {
                let inner = env.bind(param, arg);
                self.eval(&body, &inner)
            }
            Value::BuiltinPartial(sym, mut args) => {
                args.push(arg);
                if args.len() == sym.arity() {
                    self.apply_builtin(sym, args, loc)
                } else {
                    Ok(Value::BuiltinPartial(sym, args))
                }
            }
            other => Err(EvalError::Dynamic(
                loc,
                format!("cannot apply non-function value {other}"),
            )),
        }
    }

    fn apply_builtin(
        &mut self,
        sym: BuiltinSym,
        mut args: Vec<Value>,
        loc: Loc,
    ) -> Result<Value, EvalError> {
        use BuiltinSym::*;
        match sym {
            Add | Sub | Mul | Div | Mod => {
                let b = as_int(args.pop().unwrap(), loc)?;
                let a = as_int(args.pop().unwrap(), loc)?;
                let r = match sym {
                    Add => a + b,
                    Sub => a - b,
                    Mul => a * b,
                    Div | Mod if b.is_zero() => return Err(EvalError::DivisionByZero(loc)),
                    // Truncating division and remainder, matching the
                    // integer semantics of the ASP backend.
                    Div => a / b,
                    Mod => a % b,
                    _ => unreachable!(),
                };
                Ok(Value::Int(r))
            }
            Lt | Le | Gt | Ge => {
                let b = as_int(args.pop().unwrap(), loc)?;
                let a = as_int(args.pop().unwrap(), loc)?;
                Ok(Value::Bool(match sym {
                    Lt => a < b,
                    Le => a <= b,
                    Gt => a > b,
                    Ge => a >= b,
                    _ => unreachable!(),
                }))
            }
            Eq | Neq => {
                let b = args.pop().unwrap();
                let a = args.pop().unwrap();
                let eq = a
                    .try_eq(&b)
                    .ok_or(EvalError::FunctionNotComparable(loc))?;
                Ok(Value::Bool(if sym == Eq { eq } else { !eq }))
            }
            And | Or | Implies | Iff => {
                let b = as_bool(args.pop().unwrap(), loc)?;
                let a = as_bool(args.pop().unwrap(), loc)?;
                Ok(Value::Bool(match sym {
                    And => a && b,
                    Or => a || b,
                    Implies => !a || b,
                    Iff => a == b,
                    _ => unreachable!(),
                }))
            }
            Not => {
                let a = as_bool(args.pop().unwrap(), loc)?;
                Ok(Value::Bool(!a))
            }
            Forall | Exists => {
                let pred = args.pop().unwrap();
                let set = as_set(args.pop().unwrap(), loc)?;
                let mut all = true;
                let mut any = false;
                for v in set {
                    let r = self.apply(pred.clone(), v, loc)?;
                    let b = as_bool(r, loc)?;
                    all &= b;
                    any |= b;
                }
                Ok(Value::Bool(if sym == Forall { all } else { any }))
            }
            Bind => {
                let f = args.pop().unwrap();
                let set = as_set(args.pop().unwrap(), loc)?;
                let mut out = Vec::new();
                for v in set {
                    let r = self.apply(f.clone(), v, loc)?;
                    out.extend(as_set(r, loc)?);
                }
                make_set(out, loc)
            }
            Union => {
                let b = as_set(args.pop().unwrap(), loc)?;
                let mut a = as_set(args.pop().unwrap(), loc)?;
                a.extend(b);
                make_set(a, loc)
            }
            MemberOf => {
                let set = as_set(args.pop().unwrap(), loc)?;
                let x = args.pop().unwrap();
                let mut found = false;
                for v in &set {
                    found |= x
                        .try_eq(v)
                        .ok_or(EvalError::FunctionNotComparable(loc))?;
                }
                Ok(Value::Bool(found))
            }
            Card => {
                let set = as_set(args.pop().unwrap(), loc)?;
                Ok(Value::int(set.len() as i64))
            }
            Range => {
                let hi = as_int(args.pop().unwrap(), loc)?;
                let lo = as_int(args.pop().unwrap(), loc)?;
                if hi < lo {
                    return Ok(Value::Set(vec![]));
                }
                let width = (&hi - &lo).to_i64();
                match width {
                    Some(w) if w < MAX_RANGE => {
                        let lo = lo.to_i64().ok_or_else(|| {
                            EvalError::RangeTooLarge(loc, lo.to_string(), hi.to_string())
                        })?;
                        let items = (lo..=lo + w).map(Value::int).collect();
                        Ok(Value::Set(items))
                    }
                    _ => Err(EvalError::RangeTooLarge(
                        loc,
                        lo.to_string(),
                        hi.to_string(),
                    )),
                }
            }
            TupleCons(n) => Ok(Value::Herb(crate::ir::tuple_tag(n as usize), args)),
            Ite => unreachable!("if-then-else is handled lazily"),
            ChooseElement | ChooseSubset | ChooseFunction(_) => {
                Err(EvalError::ChoiceMarkerEncountered(loc))
            }
        }
    }
}

fn make_set(vals: Vec<Value>, loc: Loc) -> Result<Value, EvalError> {
    let mut out: Vec<Value> = Vec::new();
    for v in vals {
        if v.is_function() {
            return Err(EvalError::FunctionNotComparable(loc));
        }
        let mut insert_at = out.len();
        let mut dup = false;
        for (i, existing) in out.iter().enumerate() {
            match v
                .try_cmp(existing)
                .ok_or(EvalError::FunctionNotComparable(loc))?
            {
                Ordering::Equal => {
                    dup = true;
                    break;
                }
                Ordering::Less => {
                    insert_at = i;
                    break;
                }
                Ordering::Greater => continue,
            }
        }
        if !dup {
            out.insert(insert_at, v);
        }
    }
    Ok(Value::Set(out))
}

fn as_int(v: Value, loc: Loc) -> Result<BigInt, EvalError> {
    match v {
        Value::Int(n) => Ok(n),
        other => Err(EvalError::Dynamic(loc, format!("expected integer, got {other}"))),
    }
}

fn as_bool(v: Value, loc: Loc) -> Result<bool, EvalError> {
    match v {
        Value::Bool(b) => Ok(b),
        other => Err(EvalError::Dynamic(loc, format!("expected boolean, got {other}"))),
    }
}

fn as_set(v: Value, loc: Loc) -> Result<Vec<Value>, EvalError> {
    match v {
        Value::Set(items) => Ok(items),
        _ => Err(EvalError::InfiniteSetOperation(loc)),
    }
}

fn match_pattern(pat: &Pattern, v: &Value, binds: &mut Vec<(Name, Value)>) -> bool {
    match (pat, v) {
        (Pattern::Wildcard, _) => true,
        (Pattern::Var(n), v) => {
            binds.push((n.clone(), v.clone()));
            true
        }
        (Pattern::Lit(Literal::Int(a)), Value::Int(b)) => BigInt::from(*a) == *b,
        (Pattern::Lit(Literal::Str(a)), Value::Str(b)) => a == b,
        (Pattern::Ctor(tag, subs), Value::Bool(b)) if subs.is_empty() => {
            (tag == TAG_TRUE && *b) || (tag == TAG_FALSE && !*b)
        }
        (Pattern::Ctor(tag, subs), Value::Herb(vtag, vargs)) => {
            if tag != vtag || subs.len() != vargs.len() {
                return false;
            }
            let checkpoint = binds.len();
            for (p, a) in subs.iter().zip(vargs) {
                if !match_pattern(p, a, binds) {
                    binds.truncate(checkpoint);
                    return false;
                }
            }
            true
        }
        (Pattern::Lit(_), _) | (Pattern::Ctor(..), _) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::desugar::desugar;
    use crate::ir::{parse_core, substitute, Expr, Name, NameSupply};
    use crate::syntax::parse;

    fn run_closed(src: &str) -> (Value, Vec<(String, Value)>) {
        let d = desugar(&parse(src).unwrap()).unwrap();
        eval_closed(&d.core).unwrap_or_else(|e| panic!("{src}: {e}"))
    }

    fn eval_core(src: &str) -> Value {
        let e = parse_core(src).unwrap();
        eval(&e, &Env::empty()).unwrap_or_else(|err| panic!("{src}: {err}"))
    }

    /// Independent trial-division oracle.
    fn is_prime_trial(n: i64) -> bool {
        (2..n).all(|y| n % y > 0)
    }

    const PRIME_DEF: &str = "prime x := ! {2..x-1} (\\y -> x % y > 0).";

    #[test]
    fn prime_examples_match_trial_division() {
        for (n, expect) in [(7, true), (9, false)] {
            assert_eq!(is_prime_trial(n), expect, "oracle disagrees");
            let (v, _) = run_closed(&format!("{PRIME_DEF} prime {n}."));
            assert!(matches!(v, Value::Bool(b) if b == expect), "prime {n}");
        }
        // broader agreement with the oracle
        for n in 2..40 {
            let (v, _) = run_closed(&format!("{PRIME_DEF} prime {n}."));
            assert!(matches!(v, Value::Bool(b) if b == is_prime_trial(n)));
        }
    }

    #[test]
    fn minus_one_on_peano_numerals() {
        let src = "s/1 :: constructor. nil/0 :: constructor.\n\
                   minusOne x := case x of\n s [ a ] -> a;\n nil [] -> nil;.\n\
                   minusOne (s nil) = nil & minusOne nil = nil.";
        let (v, _) = run_closed(src);
        assert!(matches!(v, Value::Bool(true)));
    }

    #[test]
    fn output_expression_records_and_passes_through() {
        let e = parse_core("4 + outputexp(\"a\", 5)").unwrap();
        let (v, channel) = eval_closed(&e).unwrap();
        assert!(matches!(v, Value::Int(n) if n == 9.into()));
        assert_eq!(channel.len(), 1);
        assert_eq!(channel[0].0, "a");
        assert!(matches!(&channel[0].1, Value::Int(n) if *n == 5.into()));
    }

    #[test]
    fn beta_reduction_example_evaluates_to_nine() {
        let e = parse_core("(\\x -> x + 4) ((\\x -> 5) a)").unwrap();
        let env = Env::from_values([(Name::src("a"), Value::int(0))]);
        let (v, _) = eval_in(&e, &env).unwrap();
        assert!(matches!(v, Value::Int(n) if n == 9.into()));
    }

    #[test]
    fn eval_closed_examples() {
        let (v, channel) = run_closed("c := 4. c = 4.");
        assert!(matches!(v, Value::Bool(true)));
        assert_eq!(channel.len(), 1);
        assert_eq!(channel[0].0, "c");

        let (v, _) = run_closed("x := {1..3}. ? x (\\y -> y = 5).");
        assert!(matches!(v, Value::Bool(false)));
    }

    #[test]
    fn sets_are_extensional() {
        let a = eval_core("{1, 2, 2}");
        let b = eval_core("{2, 1}");
        assert_eq!(a.try_eq(&b), Some(true));
    }

    #[test]
    fn quantifier_duality_on_small_sets() {
        // !(S,p) == not ?(S, not . p) over a few sets and predicates
        let cases = [
            ("{1, 2, 3}", "\\x -> x < 4"),
            ("{1, 2, 3}", "\\x -> x % 2 = 0"),
            ("{}", "\\x -> x = 99"),
            ("{5}", "\\x -> x > 5"),
        ];
        for (set, pred) in cases {
            let forall = eval_core(&format!("! {set} ({pred})"));
            let dual = eval_core(&format!("not (? {set} (\\z -> not (({pred}) z)))"));
            assert_eq!(forall.try_eq(&dual), Some(true), "{set} {pred}");
        }
    }

    #[test]
    fn recursive_functions_through_let() {
        let v = eval_core(
            "let odd := \\x -> if x = 0 then false else even (x - 1); \
                 even := \\x -> if x = 0 then true else odd (x - 1) \
             in even 8",
        );
        assert!(matches!(v, Value::Bool(true)));
    }

    #[test]
    fn forward_references_force_on_demand() {
        let (v, channel) = run_closed("e := even c. c := 4. even x := x % 2 = 0. e.");
        assert!(matches!(v, Value::Bool(true)));
        let labels: Vec<&str> = channel.iter().map(|(l, _)| l.as_str()).collect();
        assert_eq!(labels, vec!["even", "c", "e"]);
    }

    #[test]
    fn divergent_binding_is_reported() {
        let e = parse_core("let x := x + 1 in x").unwrap();
        assert!(matches!(
            eval(&e, &Env::empty()),
            Err(EvalError::DivergentBinding(..))
        ));
    }

    #[test]
    fn division_by_zero_and_choice_markers_error() {
        let e = parse_core("1 / 0").unwrap();
        assert!(matches!(
            eval(&e, &Env::empty()),
            Err(EvalError::DivisionByZero(_))
        ));
        let e = parse_core("chooseElement {1, 2}").unwrap();
        assert!(matches!(
            eval(&e, &Env::empty()),
            Err(EvalError::ChoiceMarkerEncountered(_))
        ));
    }

    #[test]
    fn non_exhaustive_match_is_reported() {
        let e = parse_core("case 3 of 1 -> 0; 2 -> 0").unwrap();
        assert!(matches!(
            eval(&e, &Env::empty()),
            Err(EvalError::NonExhaustiveMatch(_))
        ));
    }

    #[test]
    fn functions_cannot_enter_sets() {
        let e = parse_core("{\\x -> x}").unwrap();
        assert!(matches!(
            eval(&e, &Env::empty()),
            Err(EvalError::FunctionNotComparable(_))
        ));
    }

    #[test]
    fn substitution_capture_case_agrees_under_evaluation() {
        // (\z -> y)[y := z] applied to any argument must return the outer z.
        let mut supply = NameSupply::new();
        let lam = Expr::lam(Name::src("z"), Expr::var(Name::src("y")));
        let substituted = substitute(&lam, &Name::src("y"), &Expr::var(Name::src("z")), &mut supply);
        for z_val in 0..3i64 {
            for arg in 10..13i64 {
                let env = Env::from_values([(Name::src("z"), Value::int(z_val))]);
                let applied = Expr::app(substituted.clone(), Expr::int(arg));
                let v = eval(&applied, &env).unwrap();
                assert!(matches!(v, Value::Int(ref n) if *n == z_val.into()));
            }
        }
    }

    #[test]
    fn big_integers_stay_exact() {
        let v = eval_core("1000000000000 * 1000000000000");
        let expected: BigInt = "1000000000000000000000000".parse().unwrap();
        assert!(matches!(v, Value::Int(n) if n == expected));
    }
}
