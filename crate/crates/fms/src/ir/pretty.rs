//! Canonical textual form for Core expressions.
//!
//! The output is deterministic and can be read back with [`parse_core`]; the
//! golden tests rely on that round trip.
//!
//! [`parse_core`]: super::parse_core

use super::{BuiltinSym, Expr, ExprKind, Literal, Pattern, TAG_FALSE, TAG_TRUE};

/// Precedence levels, loosest binding first.
const LET: u8 = 0;
const IFF: u8 = 1;
const IMPLIES: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const NOT: u8 = 5;
const CMP: u8 = 6;
const ADD: u8 = 7;
const MUL: u8 = 8;
const APP: u8 = 9;
const ATOM: u8 = 10;

pub fn pretty(e: &Expr) -> String {
    let mut s = String::new();
    write_expr(&mut s, e, LET);
    s
}

fn paren(out: &mut String, need: bool, f: impl FnOnce(&mut String)) {
    if need {
        out.push('(');
    }
    f(out);
    if need {
        out.push(')');
    }
}

fn op_level(sym: BuiltinSym) -> Option<(u8, Assoc)> {
    use BuiltinSym::*;
    Some(match sym {
        Iff => (IFF, Assoc::Right),
        Implies => (IMPLIES, Assoc::Right),
        Or => (OR, Assoc::Left),
        And => (AND, Assoc::Left),
        Eq | Neq | Lt | Le | Gt | Ge => (CMP, Assoc::None),
        Add | Sub => (ADD, Assoc::Left),
        Mul | Div | Mod => (MUL, Assoc::Left),
        _ => return None,
    })
}

#[derive(Clone, Copy)]
enum Assoc {
    Left,
    Right,
    None,
}

fn write_expr(out: &mut String, e: &Expr, min: u8) {
    // Saturated builtin applications print in their surface form.
    if let Some((sym, args)) = e.builtin_call() {
        match sym {
            BuiltinSym::Ite => {
                paren(out, min > LET, |out| {
                    out.push_str("if ");
                    write_expr(out, args[0], IFF);
                    out.push_str(" then ");
                    write_expr(out, args[1], IFF);
                    out.push_str(" else ");
                    write_expr(out, args[2], LET);
                });
                return;
            }
            BuiltinSym::Not => {
                paren(out, min > NOT, |out| {
                    out.push_str("not ");
                    write_expr(out, args[0], NOT);
                });
                return;
            }
            BuiltinSym::Range => {
                out.push('{');
                write_expr(out, args[0], IFF);
                out.push_str("..");
                write_expr(out, args[1], IFF);
                out.push('}');
                return;
            }
            BuiltinSym::TupleCons(_) => {
                write_tuple(out, &args);
                return;
            }
            _ => {
                if let Some((level, assoc)) = op_level(sym) {
                    let (lmin, rmin) = match assoc {
                        Assoc::Left => (level, level + 1),
                        Assoc::Right => (level + 1, level),
                        Assoc::None => (level + 1, level + 1),
                    };
                    paren(out, min > level, |out| {
                        write_expr(out, args[0], lmin);
                        out.push(' ');
                        out.push_str(&sym.display_name());
                        out.push(' ');
                        write_expr(out, args[1], rmin);
                    });
                    return;
                }
            }
        }
    }

    match &e.kind {
        ExprKind::Var(n) => out.push_str(&n.to_string()),
        ExprKind::Lit(l) => write_literal(out, l),
        ExprKind::Builtin(sym) => write_builtin_atom(out, *sym),
        ExprKind::App(f, a) => paren(out, min > APP, |out| {
            write_expr(out, f, APP);
            out.push(' ');
            write_expr(out, a, ATOM);
        }),
        ExprKind::Lam(p, b) => paren(out, min > LET, |out| {
            out.push('\\');
            out.push_str(&p.to_string());
            out.push_str(" -> ");
            write_expr(out, b, LET);
        }),
        ExprKind::Let(bs, body) => paren(out, min > LET, |out| {
            out.push_str("let ");
            for (i, b) in bs.iter().enumerate() {
                if i > 0 {
                    out.push_str("; ");
                }
                out.push_str(&b.name.to_string());
                out.push_str(" := ");
                write_expr(out, &b.value, IFF);
            }
            out.push_str(" in ");
            write_expr(out, body, LET);
        }),
        ExprKind::Case(scrut, arms) => paren(out, min > LET, |out| {
            out.push_str("case ");
            write_expr(out, scrut, IFF);
            out.push_str(" of ");
            for (i, (pat, body)) in arms.iter().enumerate() {
                if i > 0 {
                    out.push_str("; ");
                }
                write_pattern(out, pat);
                out.push_str(" -> ");
                write_expr(out, body, IFF);
            }
        }),
        ExprKind::SetLit(es) => {
            out.push('{');
            for (i, e) in es.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_expr(out, e, IFF);
            }
            out.push('}');
        }
        ExprKind::Herb(tag, args) => {
            if args.is_empty() && (tag == TAG_TRUE || tag == TAG_FALSE) {
                out.push_str(tag);
            } else if super::tuple_width(tag) == Some(args.len()) && args.len() >= 2 {
                let refs: Vec<&Expr> = args.iter().collect();
                write_tuple(out, &refs);
            } else {
                out.push_str(tag);
                out.push('[');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_expr(out, a, IFF);
                }
                out.push(']');
            }
        }
        ExprKind::Output(label, inner) => {
            out.push_str("outputexp(");
            write_literal(out, &Literal::Str(label.clone()));
            out.push_str(", ");
            write_expr(out, inner, IFF);
            out.push(')');
        }
    }
}

fn write_tuple(out: &mut String, items: &[&Expr]) {
    out.push('(');
    for (i, a) in items.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write_expr(out, a, IFF);
    }
    out.push(')');
}

fn write_literal(out: &mut String, l: &Literal) {
    match l {
        Literal::Int(n) if *n < 0 => out.push_str(&format!("({n})")),
        Literal::Int(n) => out.push_str(&n.to_string()),
        Literal::Str(s) => {
            out.push('"');
            for c in s.chars() {
                match c {
                    '"' => out.push_str("\\\""),
                    '\\' => out.push_str("\\\\"),
                    '\n' => out.push_str("\\n"),
                    '\t' => out.push_str("\\t"),
                    other => out.push(other),
                }
            }
            out.push('"');
        }
    }
}

fn write_builtin_atom(out: &mut String, sym: BuiltinSym) {
    use BuiltinSym::*;
    match sym {
        Bind | Union | MemberOf | Card | ChooseElement | ChooseSubset | ChooseFunction(_) => {
            out.push_str(&sym.display_name())
        }
        // Operator glyphs are parenthesized when they stand alone.
        _ => {
            out.push('(');
            out.push_str(&sym.display_name());
            out.push(')');
        }
    }
}

fn write_pattern(out: &mut String, pat: &Pattern) {
    match pat {
        Pattern::Wildcard => out.push('_'),
        Pattern::Var(n) => out.push_str(&n.to_string()),
        Pattern::Lit(l) => write_literal(out, l),
        Pattern::Ctor(tag, subs) => {
            if args_are_tuple(tag, subs.len()) {
                out.push('(');
                for (i, p) in subs.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_pattern(out, p);
                }
                out.push(')');
            } else if subs.is_empty() && (tag == TAG_TRUE || tag == TAG_FALSE) {
                out.push_str(tag);
            } else {
                out.push_str(tag);
                out.push('[');
                for (i, p) in subs.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_pattern(out, p);
                }
                out.push(']');
            }
        }
    }
}

fn args_are_tuple(tag: &str, len: usize) -> bool {
    super::tuple_width(tag) == Some(len) && len >= 2
}
