//! Surface syntax of the Full language: statement-level AST and parser.
//!
//! A specification is a sequence of statements, each terminated by `.`:
//! declarations (`name/arity :: kind.`), definitions (`head := expr.`),
//! constraints (a bare boolean expression) and inline directives
//! (`inline name.` / `noinline name.`).
//!
//! Operator precedence, loosest to tightest:
//! `<=>`, `=>`, `|`, `&`, `not`, comparisons (non-associative), `+ -`,
//! `* / %`, function application. Lambdas extend as far right as possible.

use crate::ir::{BuiltinSym, Loc};
use crate::lex::{tokenize, LexError, Tok, Token, KEYWORDS};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq)]
pub struct Spec {
    pub statements: Vec<Statement>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Statement {
    Declaration {
        name: String,
        arity: usize,
        kind: DeclKind,
        loc: Loc,
    },
    /// `name p1 .. pk := body.` (k may be 0) — one clause of a definition.
    Definition {
        name: String,
        params: Vec<SurfacePattern>,
        body: SurfaceExpr,
        loc: Loc,
    },
    /// `(a, b) := body.` — defines several names from one tuple-valued body.
    TupleDefinition {
        names: Vec<TupleSlot>,
        body: SurfaceExpr,
        loc: Loc,
    },
    Constraint {
        expr: SurfaceExpr,
        loc: Loc,
    },
    Directive {
        inline: bool,
        name: String,
        loc: Loc,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum TupleSlot {
    Name(String),
    Ignore,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DeclKind {
    ElementOf(SurfaceExpr),
    SubsetOf(SurfaceExpr),
    FunctionTo(SurfaceExpr),
    Constructor,
    Proposition,
    Predicate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceExpr {
    pub kind: SurfaceExprKind,
    pub loc: Loc,
}

impl SurfaceExpr {
    fn new(kind: SurfaceExprKind, loc: Loc) -> SurfaceExpr {
        SurfaceExpr { kind, loc }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SurfaceExprKind {
    Ident(String),
    Int(i64),
    Str(String),
    /// A quantifier glyph (`!` or `?`) or another builtin in operand position.
    BuiltinAtom(BuiltinSym),
    BinOp(BuiltinSym, Box<SurfaceExpr>, Box<SurfaceExpr>),
    Not(Box<SurfaceExpr>),
    App(Box<SurfaceExpr>, Box<SurfaceExpr>),
    Lam(SurfacePattern, Box<SurfaceExpr>),
    If(Box<SurfaceExpr>, Box<SurfaceExpr>, Box<SurfaceExpr>),
    Case(Box<SurfaceExpr>, Vec<(SurfacePattern, SurfaceExpr)>),
    Tuple(Vec<SurfaceExpr>),
    SetEnum(Vec<SurfaceExpr>),
    SetRange(Box<SurfaceExpr>, Box<SurfaceExpr>),
    SetComp(Box<SurfaceExpr>, Vec<CompQual>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum CompQual {
    Generator(SurfacePattern, SurfaceExpr),
    Guard(SurfaceExpr),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurfacePattern {
    pub kind: SurfacePatternKind,
    pub loc: Loc,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SurfacePatternKind {
    Wildcard,
    Ident(String),
    Int(i64),
    Str(String),
    /// `tag[p1, .., pn]` — explicit constructor match.
    CtorApp(String, Vec<SurfacePattern>),
    Tuple(Vec<SurfacePattern>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error("{loc}: expected {expected}, found {found}")]
    Unexpected {
        expected: String,
        found: Tok,
        loc: Loc,
    },
    #[error("{loc}: `{word}` is a reserved keyword")]
    ReservedWord { word: String, loc: Loc },
}

pub fn parse(source: &str) -> Result<Spec, ParseError> {
    let tokens = tokenize(source)?;
    let mut p = Parser { tokens, pos: 0 };
    let mut statements = Vec::new();
    while *p.peek() != Tok::Eof {
        statements.push(p.statement()?);
    }
    Ok(Spec { statements })
}

/// Parse a single expression (used by `fms eval` style helpers and tests).
pub fn parse_expr(source: &str) -> Result<SurfaceExpr, ParseError> {
    let tokens = tokenize(source)?;
    let mut p = Parser { tokens, pos: 0 };
    let e = p.expr()?;
    p.expect(Tok::Eof)?;
    Ok(e)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

const LOOSEST: u8 = 1; // <=>
const CMP: u8 = 6;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn peek_at(&self, off: usize) -> &Tok {
        &self.tokens[(self.pos + off).min(self.tokens.len() - 1)].tok
    }

    fn loc(&self) -> Loc {
        self.tokens[self.pos].loc
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.pos].tok.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, expected: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Unexpected {
            expected: expected.into(),
            found: self.peek().clone(),
            loc: self.loc(),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
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

    fn kw(&self, word: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == word)
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                if KEYWORDS.contains(&s.as_str()) {
                    return Err(ParseError::ReservedWord {
                        word: s,
                        loc: self.loc(),
                    });
                }
                self.bump();
                Ok(s)
            }
            _ => self.err("identifier"),
        }
    }

    // ---- statements ----

    fn statement(&mut self) -> Result<Statement, ParseError> {
        let loc = self.loc();

        // Declaration: ident (/ arity)? :: kind .
        if matches!(self.peek(), Tok::Ident(_))
            && (matches!(self.peek_at(1), Tok::ColonColon)
                || (matches!(self.peek_at(1), Tok::Slash)
                    && matches!(self.peek_at(2), Tok::Int(_))
                    && matches!(self.peek_at(3), Tok::ColonColon)))
        {
            return self.declaration(loc);
        }

        // Directive: inline name. / noinline name.
        if (self.kw("inline") || self.kw("noinline"))
            && matches!(self.peek_at(1), Tok::Ident(_))
            && matches!(self.peek_at(2), Tok::Dot)
        {
            let inline = self.kw("inline");
            self.bump();
            let name = self.ident()?;
            self.expect(Tok::Dot)?;
            return Ok(Statement::Directive { inline, name, loc });
        }

        if self.assignment_ahead() {
            return self.definition(loc);
        }

        let expr = self.expr()?;
        self.expect(Tok::Dot)?;
        Ok(Statement::Constraint { expr, loc })
    }

    /// Is there a top-level `:=` before the statement-terminating `.`?
    fn assignment_ahead(&self) -> bool {
        let mut depth = 0usize;
        let mut i = self.pos;
        loop {
            match &self.tokens[i].tok {
                Tok::LParen | Tok::LBrace | Tok::LBracket => depth += 1,
                Tok::RParen | Tok::RBrace | Tok::RBracket => depth = depth.saturating_sub(1),
                Tok::Assign if depth == 0 => return true,
                Tok::Dot if depth == 0 => return false,
                Tok::Eof => return false,
                _ => {}
            }
            i += 1;
            if i >= self.tokens.len() {
                return false;
            }
        }
    }

    fn declaration(&mut self, loc: Loc) -> Result<Statement, ParseError> {
        let name = self.ident()?;
        let mut arity = None;
        if self.eat(Tok::Slash) {
            match self.peek().clone() {
                Tok::Int(n) if n >= 0 => {
                    self.bump();
                    arity = Some(n as usize);
                }
                _ => return self.err("arity (a non-negative integer)"),
            }
        }
        self.expect(Tok::ColonColon)?;
        let kind_loc = self.loc();
        let kind_word = self.ident()?;
        let kind = match kind_word.as_str() {
            "element" => {
                self.expect_word("of")?;
                DeclKind::ElementOf(self.expr()?)
            }
            "subset" => {
                self.expect_word("of")?;
                DeclKind::SubsetOf(self.expr()?)
            }
            "function" => {
                self.expect_word("to")?;
                DeclKind::FunctionTo(self.expr()?)
            }
            "constructor" => DeclKind::Constructor,
            "proposition" => DeclKind::Proposition,
            "predicate" => DeclKind::Predicate,
            other => {
                return Err(ParseError::Unexpected {
                    expected: "declaration kind (element of / subset of / function to / \
                               constructor / proposition / predicate)"
                        .into(),
                    found: Tok::Ident(other.into()),
                    loc: kind_loc,
                })
            }
        };
        self.expect(Tok::Dot)?;
        let needs_arity = matches!(
            kind,
            DeclKind::FunctionTo(_) | DeclKind::Constructor | DeclKind::Predicate
        );
        let arity = match (arity, needs_arity) {
            (Some(a), _) => a,
            (None, false) => 0,
            (None, true) => {
                return Err(ParseError::Unexpected {
                    expected: format!("arity on declaration of `{name}` (write `{name}/N ::`)"),
                    found: Tok::ColonColon,
                    loc,
                })
            }
        };
        Ok(Statement::Declaration {
            name,
            arity,
            kind,
            loc,
        })
    }

    fn expect_word(&mut self, word: &str) -> Result<(), ParseError> {
        if self.kw(word) {
            self.bump();
            Ok(())
        } else {
            self.err(format!("`{word}`"))
        }
    }

    fn definition(&mut self, loc: Loc) -> Result<Statement, ParseError> {
        if *self.peek() == Tok::LParen {
            // (a, b) := body.
            self.bump();
            let mut names = Vec::new();
            loop {
                match self.peek().clone() {
                    Tok::Underscore => {
                        self.bump();
                        names.push(TupleSlot::Ignore);
                    }
                    Tok::Ident(_) => names.push(TupleSlot::Name(self.ident()?)),
                    _ => return self.err("name or `_` in tuple definition"),
                }
                if !self.eat(Tok::Comma) {
                    break;
                }
            }
            self.expect(Tok::RParen)?;
            self.expect(Tok::Assign)?;
            let body = self.expr()?;
            self.expect(Tok::Dot)?;
            return Ok(Statement::TupleDefinition { names, body, loc });
        }

        let name = self.ident()?;
        let mut params = Vec::new();
        while *self.peek() != Tok::Assign {
            params.push(self.pattern_atom()?);
        }
        self.expect(Tok::Assign)?;
        let body = self.expr()?;
        self.expect(Tok::Dot)?;
        Ok(Statement::Definition {
            name,
            params,
            body,
            loc,
        })
    }

    // ---- patterns ----

    fn pattern_atom(&mut self) -> Result<SurfacePattern, ParseError> {
        let loc = self.loc();
        let kind = match self.peek().clone() {
            Tok::Underscore => {
                self.bump();
                SurfacePatternKind::Wildcard
            }
            Tok::Int(n) => {
                self.bump();
                SurfacePatternKind::Int(n)
            }
            Tok::Str(s) => {
                self.bump();
                SurfacePatternKind::Str(s)
            }
            Tok::Ident(_) => {
                let name = self.ident()?;
                if self.eat(Tok::LBracket) {
                    let mut subs = Vec::new();
                    if !self.eat(Tok::RBracket) {
                        loop {
                            subs.push(self.pattern_atom()?);
                            if !self.eat(Tok::Comma) {
                                break;
                            }
                        }
                        self.expect(Tok::RBracket)?;
                    }
                    SurfacePatternKind::CtorApp(name, subs)
                } else {
                    SurfacePatternKind::Ident(name)
                }
            }
            Tok::LParen => {
                self.bump();
                let mut items = vec![self.pattern_atom()?];
                while self.eat(Tok::Comma) {
                    items.push(self.pattern_atom()?);
                }
                self.expect(Tok::RParen)?;
                if items.len() == 1 {
                    return Ok(items.pop().unwrap());
                }
                SurfacePatternKind::Tuple(items)
            }
            _ => return self.err("pattern"),
        };
        Ok(SurfacePattern { kind, loc })
    }

    // ---- expressions ----

    fn expr(&mut self) -> Result<SurfaceExpr, ParseError> {
        let loc = self.loc();
        if self.eat(Tok::Backslash) {
            let pat = self.pattern_atom()?;
            self.expect(Tok::Arrow)?;
            let body = self.expr()?;
            return Ok(SurfaceExpr::new(
                SurfaceExprKind::Lam(pat, Box::new(body)),
                loc,
            ));
        }
        if self.kw("if") {
            self.bump();
            let c = self.binop(LOOSEST)?;
            self.expect_word("then")?;
            let t = self.binop(LOOSEST)?;
            self.expect_word("else")?;
            let e = self.expr()?;
            return Ok(SurfaceExpr::new(
                SurfaceExprKind::If(Box::new(c), Box::new(t), Box::new(e)),
                loc,
            ));
        }
        if self.kw("case") {
            return self.case_expr(loc);
        }
        self.binop(LOOSEST)
    }

    fn case_expr(&mut self, loc: Loc) -> Result<SurfaceExpr, ParseError> {
        self.bump(); // case
        let scrut = self.binop(LOOSEST)?;
        self.expect_word("of")?;
        let mut arms = Vec::new();
        loop {
            let pat = self.pattern_atom()?;
            self.expect(Tok::Arrow)?;
            let body = self.binop(LOOSEST)?;
            arms.push((pat, body));
            if self.eat(Tok::Semi) {
                // Trailing `;` before the closing context is allowed.
                if matches!(self.peek(), Tok::Dot | Tok::RParen | Tok::RBrace | Tok::Eof) {
                    break;
                }
            } else {
                break;
            }
        }
        Ok(SurfaceExpr::new(
            SurfaceExprKind::Case(Box::new(scrut), arms),
            loc,
        ))
    }

    fn binop(&mut self, level: u8) -> Result<SurfaceExpr, ParseError> {
        const NOT: u8 = 5;
        const MUL: u8 = 8;
        if level == NOT {
            if self.kw("not") {
                let loc = self.loc();
                self.bump();
                let inner = self.binop(NOT)?;
                return Ok(SurfaceExpr::new(SurfaceExprKind::Not(Box::new(inner)), loc));
            }
            return self.binop(CMP);
        }
        if level > MUL {
            return self.app_expr();
        }
        let mut lhs = self.binop(level + 1)?;
        while let Some(sym) = surface_op_at(level, self.peek()) {
            let loc = self.loc();
            self.bump();
            if matches!(level, 1 | 2) {
                // <=> and => are right-associative.
                let rhs = self.binop(level)?;
                return Ok(SurfaceExpr::new(
                    SurfaceExprKind::BinOp(sym, Box::new(lhs), Box::new(rhs)),
                    loc,
                ));
            }
            let rhs = self.binop(level + 1)?;
            lhs = SurfaceExpr::new(SurfaceExprKind::BinOp(sym, Box::new(lhs), Box::new(rhs)), loc);
            if level == CMP {
                break; // comparisons do not chain
            }
        }
        Ok(lhs)
    }

    fn app_expr(&mut self) -> Result<SurfaceExpr, ParseError> {
        let mut e = self.atom()?;
        while self.starts_atom() {
            let loc = self.loc();
            let a = self.atom()?;
            e = SurfaceExpr::new(SurfaceExprKind::App(Box::new(e), Box::new(a)), loc);
        }
        Ok(e)
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Tok::Int(_) | Tok::Str(_) | Tok::LParen | Tok::LBrace | Tok::Bang | Tok::Question
            | Tok::Backslash => true,
            Tok::Ident(s) => !KEYWORDS.contains(&s.as_str()),
            _ => false,
        }
    }

    fn atom(&mut self) -> Result<SurfaceExpr, ParseError> {
        let loc = self.loc();
        let kind = match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                SurfaceExprKind::Int(n)
            }
            Tok::Str(s) => {
                self.bump();
                SurfaceExprKind::Str(s)
            }
            Tok::Bang => {
                self.bump();
                SurfaceExprKind::BuiltinAtom(BuiltinSym::Forall)
            }
            Tok::Question => {
                self.bump();
                SurfaceExprKind::BuiltinAtom(BuiltinSym::Exists)
            }
            Tok::Backslash => return self.expr(),
            Tok::Ident(_) => {
                let name = self.ident()?;
                SurfaceExprKind::Ident(name)
            }
            Tok::LParen => {
                self.bump();
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
                    return Ok(SurfaceExpr::new(SurfaceExprKind::Tuple(items), loc));
                }
                self.expect(Tok::RParen)?;
                return Ok(first);
            }
            Tok::LBrace => return self.set_form(loc),
            _ => return self.err("expression"),
        };
        Ok(SurfaceExpr::new(kind, loc))
    }

    fn set_form(&mut self, loc: Loc) -> Result<SurfaceExpr, ParseError> {
        self.bump(); // {
        if self.eat(Tok::RBrace) {
            return Ok(SurfaceExpr::new(SurfaceExprKind::SetEnum(vec![]), loc));
        }
        let first = self.expr()?;
        if self.eat(Tok::DotDot) {
            let hi = self.expr()?;
            self.expect(Tok::RBrace)?;
            return Ok(SurfaceExpr::new(
                SurfaceExprKind::SetRange(Box::new(first), Box::new(hi)),
                loc,
            ));
        }
        if self.eat(Tok::Bars) {
            let mut quals = Vec::new();
            loop {
                quals.push(self.comp_qual()?);
                if !self.eat(Tok::Comma) {
                    break;
                }
            }
            self.expect(Tok::RBrace)?;
            return Ok(SurfaceExpr::new(
                SurfaceExprKind::SetComp(Box::new(first), quals),
                loc,
            ));
        }
        let mut items = vec![first];
        while self.eat(Tok::Comma) {
            items.push(self.expr()?);
        }
        self.expect(Tok::RBrace)?;
        Ok(SurfaceExpr::new(SurfaceExprKind::SetEnum(items), loc))
    }

    fn comp_qual(&mut self) -> Result<CompQual, ParseError> {
        // Try `pattern <- expr`; fall back to a boolean guard.
        let save = self.pos;
        if let Ok(pat) = self.pattern_atom() {
            if self.eat(Tok::LeftArrow) {
                let src = self.expr()?;
                return Ok(CompQual::Generator(pat, src));
            }
        }
        self.pos = save;
        Ok(CompQual::Guard(self.expr()?))
    }
}

fn surface_op_at(level: u8, tok: &Tok) -> Option<BuiltinSym> {
    Some(match (level, tok) {
        (1, Tok::IffArrow) => BuiltinSym::Iff,
        (2, Tok::FatArrow) => BuiltinSym::Implies,
        (3, Tok::Pipe) => BuiltinSym::Or,
        (4, Tok::Amp) => BuiltinSym::And,
        (6, Tok::Eq) => BuiltinSym::Eq,
        (6, Tok::Neq) => BuiltinSym::Neq,
        (6, Tok::Lt) => BuiltinSym::Lt,
        (6, Tok::Le) => BuiltinSym::Le,
        (6, Tok::Gt) => BuiltinSym::Gt,
        (6, Tok::Ge) => BuiltinSym::Ge,
        (7, Tok::Plus) => BuiltinSym::Add,
        (7, Tok::Minus) => BuiltinSym::Sub,
        (8, Tok::Star) => BuiltinSym::Mul,
        (8, Tok::Slash) => BuiltinSym::Div,
        (8, Tok::Percent) => BuiltinSym::Mod,
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_graph_coloring() {
        let src = r#"
//Definitions of given sets
borders := {("a","b"), ("b","c"), ("c","a")}.
colors := {1..3}.

//Declaration of the interpretation we are looking for
colorof/1 :: function to colors.

//Constraint
! borders (\(x,y) -> colorof x ~= colorof y).
"#;
        let spec = parse(src).unwrap();
        assert_eq!(spec.statements.len(), 4);
        let kinds: Vec<_> = spec
            .statements
            .iter()
            .map(|s| match s {
                Statement::Definition { .. } => "def",
                Statement::Declaration { .. } => "decl",
                Statement::Constraint { .. } => "constraint",
                _ => "other",
            })
            .collect();
        assert_eq!(kinds, vec!["def", "def", "decl", "constraint"]);
    }

    #[test]
    fn parses_single_definition() {
        let spec = parse("c := 4.").unwrap();
        assert!(matches!(
            &spec.statements[0],
            Statement::Definition { name, params, .. } if name == "c" && params.is_empty()
        ));
    }

    #[test]
    fn syntax_error_reports_location() {
        let err = parse("x := .").unwrap_err();
        match err {
            ParseError::Unexpected { loc, .. } => assert_eq!((loc.line, loc.col), (1, 6)),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn parses_constructor_case() {
        let src = "minusOne x := case x of\n\ts [ a ] -> a;\n\tnil []    -> nil;.";
        let spec = parse(src).unwrap();
        match &spec.statements[0] {
            Statement::Definition { name, params, body, .. } => {
                assert_eq!(name, "minusOne");
                assert_eq!(params.len(), 1);
                assert!(matches!(body.kind, SurfaceExprKind::Case(_, ref arms) if arms.len() == 2));
            }
            other => panic!("unexpected statement {other:?}"),
        }
    }

    #[test]
    fn parses_multi_clause_and_tuple_definition() {
        let spec = parse("f 1 := 0. f x := 1. (a,b) := f 5.").unwrap();
        assert_eq!(spec.statements.len(), 3);
        assert!(matches!(
            &spec.statements[2],
            Statement::TupleDefinition { names, .. } if names.len() == 2
        ));
    }

    #[test]
    fn parses_nqueens_statements() {
        let src = r#"
domain := {1..8}.
solution1/1 :: function to domain.
solution2/1 :: function to domain.
alldiff solution f := ! domain (\x ->
                        ! domain (\y -> x ~= y => f x ~= f y)).
nqueens solution := ! {
                        solution,
                        \x -> x - solution x,
                        \x -> x + solution x
                      } (alldiff solution).
nqueens solution1.
nqueens solution2.
! domain (\x -> solution1 x ~= solution2 x).
"#;
        let spec = parse(src).unwrap();
        assert_eq!(spec.statements.len(), 8);
    }

    #[test]
    fn parses_comprehensions_and_guards() {
        let spec = parse("y := {f x || x <- s, p x}. z := {x || s <- ss, x <- s}.").unwrap();
        match &spec.statements[0] {
            Statement::Definition { body, .. } => match &body.kind {
                SurfaceExprKind::SetComp(_, quals) => {
                    assert!(matches!(quals[0], CompQual::Generator(..)));
                    assert!(matches!(quals[1], CompQual::Guard(..)));
                }
                other => panic!("unexpected body {other:?}"),
            },
            other => panic!("unexpected statement {other:?}"),
        }
    }

    #[test]
    fn precedence_matches_reference_table() {
        // application binds tighter than %, which binds tighter than >
        let spec = parse("prime x := ! {2..x-1} (\\y -> x % y > 0).").unwrap();
        match &spec.statements[0] {
            Statement::Definition { body, .. } => match &body.kind {
                SurfaceExprKind::App(f, lam) => {
                    assert!(matches!(f.kind, SurfaceExprKind::App(..)));
                    match &lam.kind {
                        SurfaceExprKind::Lam(_, b) => {
                            assert!(matches!(
                                b.kind,
                                SurfaceExprKind::BinOp(BuiltinSym::Gt, ..)
                            ));
                        }
                        other => panic!("unexpected lambda {other:?}"),
                    }
                }
                other => panic!("unexpected body {other:?}"),
            },
            other => panic!("unexpected statement {other:?}"),
        }
    }

    #[test]
    fn directives_parse() {
        let spec = parse("inline f. noinline g.").unwrap();
        assert!(matches!(
            &spec.statements[0],
            Statement::Directive { inline: true, name, .. } if name == "f"
        ));
        assert!(matches!(
            &spec.statements[1],
            Statement::Directive { inline: false, name, .. } if name == "g"
        ));
    }
}
