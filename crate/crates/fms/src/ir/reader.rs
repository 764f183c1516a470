//! Reader for the canonical Core text emitted by [`pretty`].
//!
//! This is test and tooling support: it lets golden expectations be written
//! as text and closes the `pretty` round trip. Identifiers that are not bound
//! anywhere in the term and match a builtin name are read as builtins;
//! anything else becomes a variable.
//!
//! [`pretty`]: super::pretty

use super::{Binding, BuiltinSym, Expr, ExprKind, Literal, Name, Pattern};
use crate::lex::{tokenize, LexError, Tok, Token};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreReadError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error("{loc}: expected {expected}, found {found}", loc = .found_loc)]
    Unexpected {
        expected: String,
        found: Tok,
        found_loc: super::Loc,
    },
}

pub fn parse_core(src: &str) -> Result<Expr, CoreReadError> {
    let tokens = tokenize(src)?;
    let mut p = Reader {
        tokens,
        pos: 0,
        scope: Vec::new(),
    };
    let e = p.expr()?;
    p.expect(Tok::Eof)?;
    Ok(e)
}

struct Reader {
    tokens: Vec<Token>,
    pos: usize,
    scope: Vec<String>,
}

impl Reader {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn peek2(&self) -> &Tok {
        &self.tokens[(self.pos + 1).min(self.tokens.len() - 1)].tok
    }

    fn loc(&self) -> super::Loc {
        self.tokens[self.pos].loc
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.pos].tok.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, expected: impl Into<String>) -> Result<T, CoreReadError> {
        Err(CoreReadError::Unexpected {
            expected: expected.into(),
            found: self.peek().clone(),
            found_loc: self.loc(),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<(), CoreReadError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.err(tok.to_string())
        }
    }

    fn eat(&mut self, tok: Tok) -> bool {
        if *self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String, CoreReadError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.err("identifier"),
        }
    }

    fn kw(&self, word: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == word)
    }

    fn expr(&mut self) -> Result<Expr, CoreReadError> {
        if self.kw("let") {
            self.bump();
            let mut bindings = Vec::new();
            loop {
                let name = self.ident()?;
                self.expect(Tok::Assign)?;
                // Each name is visible from its own binding onward, which is
                // enough for name resolution of generated text.
                self.scope.push(name.clone());
                let value = self.expr()?;
                bindings.push(Binding::new(Name::src(name), value));
                if !self.eat(Tok::Semi) {
                    break;
                }
            }
            if !self.kw("in") {
                return self.err("`in`");
            }
            self.bump();
            let body = self.expr()?;
            for _ in &bindings {
                self.scope.pop();
            }
            return Ok(Expr::let_in(bindings, body));
        }
        if self.kw("if") {
            self.bump();
            let c = self.binop(IFF)?;
            if !self.kw("then") {
                return self.err("`then`");
            }
            self.bump();
            let t = self.binop(IFF)?;
            if !self.kw("else") {
                return self.err("`else`");
            }
            self.bump();
            let e = self.expr()?;
            return Ok(Expr::call(BuiltinSym::Ite, [c, t, e]));
        }
        if self.kw("case") {
            return self.case_expr();
        }
        if self.eat(Tok::Backslash) {
            let p = self.ident()?;
            self.expect(Tok::Arrow)?;
            self.scope.push(p.clone());
            let body = self.expr()?;
            self.scope.pop();
            return Ok(Expr::lam(Name::src(p), body));
        }
        self.binop(IFF)
    }

    fn case_expr(&mut self) -> Result<Expr, CoreReadError> {
        self.bump(); // case
        let scrut = self.binop(IFF)?;
        if !self.kw("of") {
            return self.err("`of`");
        }
        self.bump();
        let mut arms = Vec::new();
        loop {
            let pat = self.pattern()?;
            self.expect(Tok::Arrow)?;
            let names = pat.bound_names();
            for n in &names {
                self.scope.push(n.to_string());
            }
            let body = self.binop(IFF)?;
            for _ in &names {
                self.scope.pop();
            }
            arms.push((pat, body));
            if self.eat(Tok::Semi) {
                // A trailing semicolon is allowed before the closing context.
                if matches!(self.peek(), Tok::RParen | Tok::Eof) || self.kw("in") {
                    break;
                }
            } else {
                break;
            }
        }
        Ok(Expr::synth(ExprKind::Case(Box::new(scrut), arms)))
    }

    fn pattern(&mut self) -> Result<Pattern, CoreReadError> {
        match self.peek().clone() {
            Tok::Underscore => {
                self.bump();
                Ok(Pattern::Wildcard)
            }
            Tok::Int(n) => {
                self.bump();
                Ok(Pattern::Lit(Literal::Int(n)))
            }
            Tok::Str(s) => {
                self.bump();
                Ok(Pattern::Lit(Literal::Str(s)))
            }
            Tok::LParen => {
                self.bump();
                if self.eat(Tok::Minus) {
                    match self.peek().clone() {
                        Tok::Int(n) => {
                            self.bump();
                            self.expect(Tok::RParen)?;
                            return Ok(Pattern::Lit(Literal::Int(-n)));
                        }
                        _ => return self.err("integer"),
                    }
                }
                let mut items = vec![self.pattern()?];
                while self.eat(Tok::Comma) {
                    items.push(self.pattern()?);
                }
                self.expect(Tok::RParen)?;
                if items.len() == 1 {
                    Ok(items.pop().unwrap())
                } else {
                    Ok(Pattern::Ctor(super::tuple_tag(items.len()), items))
                }
            }
            Tok::Ident(name) => {
                self.bump();
                if self.eat(Tok::LBracket) {
                    let mut subs = Vec::new();
                    if !self.eat(Tok::RBracket) {
                        loop {
                            subs.push(self.pattern()?);
                            if !self.eat(Tok::Comma) {
                                break;
                            }
                        }
                        self.expect(Tok::RBracket)?;
                    }
                    Ok(Pattern::Ctor(name, subs))
                } else if name == super::TAG_TRUE || name == super::TAG_FALSE {
                    Ok(Pattern::Ctor(name, vec![]))
                } else {
                    Ok(Pattern::Var(Name::src(name)))
                }
            }
            _ => self.err("pattern"),
        }
    }

    fn binop(&mut self, level: u8) -> Result<Expr, CoreReadError> {
        if *self.peek() == Tok::Backslash || self.kw("if") || self.kw("case") || self.kw("let") {
            return self.expr();
        }
        if level == NOT {
            if self.kw("not") {
                self.bump();
                let inner = self.binop(NOT)?;
                return Ok(Expr::call(BuiltinSym::Not, [inner]));
            }
            return self.binop(CMP);
        }
        if level > MUL {
            return self.app_expr();
        }
        let mut lhs = self.binop(level + 1)?;
        while let Some(sym) = op_at(level, self.peek()) {
            self.bump();
            if matches!(level, IFF | IMPLIES) {
                // Right-associative: recurse at the same level.
                let rhs = self.binop(level)?;
                return Ok(Expr::call(sym, [lhs, rhs]));
            }
            let rhs = self.binop(level + 1)?;
            lhs = Expr::call(sym, [lhs, rhs]);
            if level == CMP {
                break; // non-associative
            }
        }
        Ok(lhs)
    }

    fn app_expr(&mut self) -> Result<Expr, CoreReadError> {
        let mut e = self.atom()?;
        while self.starts_atom() {
            let a = self.atom()?;
            e = Expr::app(e, a);
        }
        Ok(e)
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Tok::Int(_) | Tok::Str(_) | Tok::LParen | Tok::LBrace | Tok::Bang | Tok::Question => {
                true
            }
            Tok::Ident(s) => !crate::lex::KEYWORDS.contains(&s.as_str()),
            _ => false,
        }
    }

    fn atom(&mut self) -> Result<Expr, CoreReadError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::int(n))
            }
            Tok::Str(s) => {
                self.bump();
                Ok(Expr::str(s))
            }
            Tok::Bang => {
                self.bump();
                Ok(Expr::builtin(BuiltinSym::Forall))
            }
            Tok::Question => {
                self.bump();
                Ok(Expr::builtin(BuiltinSym::Exists))
            }
            Tok::LBrace => {
                self.bump();
                if self.eat(Tok::RBrace) {
                    return Ok(Expr::synth(ExprKind::SetLit(vec![])));
                }
                let first = self.binop(IFF)?;
                if self.eat(Tok::DotDot) {
                    let hi = self.binop(IFF)?;
                    self.expect(Tok::RBrace)?;
                    return Ok(Expr::call(BuiltinSym::Range, [first, hi]));
                }
                let mut items = vec![first];
                while self.eat(Tok::Comma) {
                    items.push(self.binop(IFF)?);
                }
                self.expect(Tok::RBrace)?;
                Ok(Expr::synth(ExprKind::SetLit(items)))
            }
            Tok::LParen => {
                self.bump();
                // Negative literal or stand-alone operator.
                if self.eat(Tok::Minus) {
                    if let Tok::Int(n) = self.peek().clone() {
                        self.bump();
                        self.expect(Tok::RParen)?;
                        return Ok(Expr::int(-n));
                    }
                    self.expect(Tok::RParen)?;
                    return Ok(Expr::builtin(BuiltinSym::Sub));
                }
                if let Some(sym) = self.standalone_op() {
                    self.bump();
                    self.expect(Tok::RParen)?;
                    return Ok(Expr::builtin(sym));
                }
                let first = self.expr()?;
                if self.eat(Tok::Comma) {
                    let mut items = vec![first];
                    loop {
                        items.push(self.expr()?);
                        if !self.eat(Tok::Comma) {
                            break;
                        }
                    }
                    self.expect(Tok::RParen)?;
                    return Ok(Expr::tuple(items));
                }
                self.expect(Tok::RParen)?;
                Ok(first)
            }
            Tok::Ident(name) => {
                self.bump();
                if *self.peek() == Tok::LBracket {
                    self.bump();
                    let mut args = Vec::new();
                    if !self.eat(Tok::RBracket) {
                        loop {
                            args.push(self.binop(IFF)?);
                            if !self.eat(Tok::Comma) {
                                break;
                            }
                        }
                        self.expect(Tok::RBracket)?;
                    }
                    return Ok(Expr::synth(ExprKind::Herb(name, args)));
                }
                if name == "outputexp" && *self.peek() == Tok::LParen {
                    self.bump();
                    let label = match self.peek().clone() {
                        Tok::Str(s) => {
                            self.bump();
                            s
                        }
                        _ => return self.err("string label"),
                    };
                    self.expect(Tok::Comma)?;
                    let inner = self.expr()?;
                    self.expect(Tok::RParen)?;
                    return Ok(Expr::synth(ExprKind::Output(label, Box::new(inner))));
                }
                if name == "not" {
                    let inner = self.binop(NOT)?;
                    return Ok(Expr::call(BuiltinSym::Not, [inner]));
                }
                if name == super::TAG_TRUE || name == super::TAG_FALSE {
                    return Ok(Expr::bool_const(name == super::TAG_TRUE));
                }
                if !self.scope.contains(&name) {
                    if let Some(sym) = builtin_by_name(&name) {
                        return Ok(Expr::builtin(sym));
                    }
                }
                Ok(Expr::var(Name::src(name)))
            }
            _ => self.err("expression"),
        }
    }

    fn standalone_op(&self) -> Option<BuiltinSym> {
        let sym = match self.peek() {
            Tok::Plus => BuiltinSym::Add,
            Tok::Star => BuiltinSym::Mul,
            Tok::Slash => BuiltinSym::Div,
            Tok::Percent => BuiltinSym::Mod,
            Tok::Eq => BuiltinSym::Eq,
            Tok::Neq => BuiltinSym::Neq,
            Tok::Lt => BuiltinSym::Lt,
            Tok::Le => BuiltinSym::Le,
            Tok::Gt => BuiltinSym::Gt,
            Tok::Ge => BuiltinSym::Ge,
            Tok::Amp => BuiltinSym::And,
            Tok::Pipe => BuiltinSym::Or,
            Tok::FatArrow => BuiltinSym::Implies,
            Tok::IffArrow => BuiltinSym::Iff,
            Tok::Bang => BuiltinSym::Forall,
            Tok::Question => BuiltinSym::Exists,
            _ => return None,
        };
        if *self.peek2() == Tok::RParen {
            Some(sym)
        } else {
            None
        }
    }
}

fn builtin_by_name(name: &str) -> Option<BuiltinSym> {
    match name {
        "bind" => Some(BuiltinSym::Bind),
        "union" => Some(BuiltinSym::Union),
        "member" => Some(BuiltinSym::MemberOf),
        "card" => Some(BuiltinSym::Card),
        "chooseElement" => Some(BuiltinSym::ChooseElement),
        "chooseSubset" => Some(BuiltinSym::ChooseSubset),
        _ => name
            .strip_prefix("chooseFunction_")
            .and_then(|n| n.parse::<u8>().ok())
            .map(BuiltinSym::ChooseFunction),
    }
}

fn op_at(level: u8, tok: &Tok) -> Option<BuiltinSym> {
    Some(match (level, tok) {
        (IFF, Tok::IffArrow) => BuiltinSym::Iff,
        (IMPLIES, Tok::FatArrow) => BuiltinSym::Implies,
        (OR, Tok::Pipe) => BuiltinSym::Or,
        (AND, Tok::Amp) => BuiltinSym::And,
        (CMP, Tok::Eq) => BuiltinSym::Eq,
        (CMP, Tok::Neq) => BuiltinSym::Neq,
        (CMP, Tok::Lt) => BuiltinSym::Lt,
        (CMP, Tok::Le) => BuiltinSym::Le,
        (CMP, Tok::Gt) => BuiltinSym::Gt,
        (CMP, Tok::Ge) => BuiltinSym::Ge,
        (ADD, Tok::Plus) => BuiltinSym::Add,
        (ADD, Tok::Minus) => BuiltinSym::Sub,
        (MUL, Tok::Star) => BuiltinSym::Mul,
        (MUL, Tok::Slash) => BuiltinSym::Div,
        (MUL, Tok::Percent) => BuiltinSym::Mod,
        _ => return None,
    })
}

const IFF: u8 = 1;
const IMPLIES: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const NOT: u8 = 5;
const CMP: u8 = 6;
const ADD: u8 = 7;
const MUL: u8 = 8;
