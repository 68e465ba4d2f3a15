//! Hand-written lexer and recursive-descent parser for ring scripts.

use std::fmt;

use crate::ast::*;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Eq,
    Colon,
    Semi,
    Comma,
    LParen,
    RParen,
    Star,
    Plus,
    Minus,
    Caret,
    Arrow,
    DirectSum,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Eq => write!(f, "`=`"),
            Tok::Colon => write!(f, "`:`"),
            Tok::Semi => write!(f, "`;`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::Arrow => write!(f, "`->`"),
            Tok::DirectSum => write!(f, "`(+)`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

const KEYWORDS: &[&str] = &[
    "ring", "const", "mulset", "module", "sequence", "on", "close", "via", "zmod", "polyquot",
    "quotient", "regular", "cyclic", "ideal", "mulby", "incl", "proj", "zero",
];

/// A positioned syntax error with the set of tokens that would have been
/// accepted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub span: Span,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: expected ", self.span.line, self.span.col)?;
        match self.expected.as_slice() {
            [one] => write!(f, "{one}")?,
            many => write!(f, "one of {}", many.join(", "))?,
        }
        write!(f, ", found {}", self.found)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = Result<T, ParseError>;

fn lex(src: &str) -> PResult<Vec<(Tok, Span)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let span = Span { line, col };
        let adv = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => adv(1, &mut i, &mut col),
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                col += i - start;
                let n = text.parse::<u64>().map_err(|_| ParseError {
                    span,
                    expected: vec!["an integer below 2^64".into()],
                    found: format!("`{text}`"),
                })?;
                out.push((Tok::Int(n), span));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                col += i - start;
                out.push((Tok::Ident(chars[start..i].iter().collect()), span));
            }
            '(' if chars.get(i + 1) == Some(&'+') && chars.get(i + 2) == Some(&')') => {
                adv(3, &mut i, &mut col);
                out.push((Tok::DirectSum, span));
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                adv(2, &mut i, &mut col);
                out.push((Tok::Arrow, span));
            }
            _ => {
                let tok = match c {
                    '=' => Tok::Eq,
                    ':' => Tok::Colon,
                    ';' => Tok::Semi,
                    ',' => Tok::Comma,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '*' => Tok::Star,
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '^' => Tok::Caret,
                    other => {
                        return Err(ParseError {
                            span,
                            expected: vec!["a token".into()],
                            found: format!("character `{other}`"),
                        })
                    }
                };
                adv(1, &mut i, &mut col);
                out.push((tok, span));
            }
        }
    }
    out.push((Tok::Eof, Span { line, col }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> PResult<Self> {
        Ok(Parser { toks: lex(src)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &[&str]) -> PResult<T> {
        Err(ParseError {
            span: self.span(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().to_string(),
        })
    }

    fn eat(&mut self, tok: Tok) -> bool {
        if *self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> PResult<Span> {
        if *self.peek() == tok {
            Ok(self.bump().1)
        } else {
            self.error(&[&tok.to_string()])
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn keyword(&mut self, kw: &str) -> PResult<Span> {
        if self.at_keyword(kw) {
            Ok(self.bump().1)
        } else {
            self.error(&[&format!("`{kw}`")])
        }
    }

    fn name(&mut self) -> PResult<Name> {
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let span = self.bump().1;
                Ok(Spanned::new(s, span))
            }
            _ => self.error(&["a name"]),
        }
    }

    fn int(&mut self) -> PResult<Spanned<u64>> {
        match *self.peek() {
            Tok::Int(n) => {
                let span = self.bump().1;
                Ok(Spanned::new(n, span))
            }
            _ => self.error(&["an integer"]),
        }
    }

    fn script(&mut self) -> PResult<Vec<Decl>> {
        let mut decls = Vec::new();
        while *self.peek() != Tok::Eof {
            decls.push(self.decl()?);
        }
        Ok(decls)
    }

    fn decl(&mut self) -> PResult<Decl> {
        let kw = match self.peek() {
            Tok::Ident(s) => s.clone(),
            _ => String::new(),
        };
        match kw.as_str() {
            "ring" => {
                self.bump();
                let name = self.name()?;
                self.expect(Tok::Eq)?;
                Ok(Decl::Ring { name, expr: self.ring_expr()? })
            }
            "const" => {
                self.bump();
                let name = self.name()?;
                self.expect(Tok::Colon)?;
                let ring = self.name()?;
                self.expect(Tok::Eq)?;
                Ok(Decl::Const { name, ring, value: self.elem()? })
            }
            "mulset" => {
                self.bump();
                let name = self.name()?;
                self.keyword("on")?;
                let ring = self.name()?;
                self.expect(Tok::Eq)?;
                self.keyword("close")?;
                self.expect(Tok::LParen)?;
                let gens = if *self.peek() == Tok::RParen { Vec::new() } else { self.elem_list()? };
                self.expect(Tok::RParen)?;
                Ok(Decl::MulSet { name, ring, gens })
            }
            "module" => {
                self.bump();
                let name = self.name()?;
                self.keyword("on")?;
                let ring = self.name()?;
                self.expect(Tok::Eq)?;
                Ok(Decl::Module { name, ring, expr: self.mod_expr()? })
            }
            "sequence" => {
                self.bump();
                let name = self.name()?;
                self.expect(Tok::Eq)?;
                let a = self.name()?;
                self.expect(Tok::Arrow)?;
                let b = self.name()?;
                self.expect(Tok::Arrow)?;
                let c = self.name()?;
                self.keyword("via")?;
                let f = self.hom_spec()?;
                self.expect(Tok::Comma)?;
                let g = self.hom_spec()?;
                Ok(Decl::Sequence { name, a, b, c, f, g })
            }
            _ => self.error(&["`ring`", "`const`", "`mulset`", "`module`", "`sequence`"]),
        }
    }

    fn ring_expr(&mut self) -> PResult<RingExpr> {
        let mut lhs = self.ring_term()?;
        while self.eat(Tok::Star) {
            let rhs = self.ring_term()?;
            lhs = RingExpr::Product(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn ring_term(&mut self) -> PResult<RingExpr> {
        if self.at_keyword("zmod") {
            self.bump();
            self.expect(Tok::LParen)?;
            let n = self.int()?;
            self.expect(Tok::RParen)?;
            return Ok(RingExpr::Zmod(n));
        }
        for kw in ["polyquot", "quotient"] {
            if self.at_keyword(kw) {
                self.bump();
                self.expect(Tok::LParen)?;
                let base = self.name()?;
                self.expect(Tok::Semi)?;
                let items = self.elem_list()?;
                self.expect(Tok::RParen)?;
                return Ok(if kw == "polyquot" {
                    RingExpr::PolyQuot(base, items)
                } else {
                    RingExpr::Quotient(base, items)
                });
            }
        }
        match self.peek() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => Ok(RingExpr::Name(self.name()?)),
            _ => self.error(&["`zmod`", "`polyquot`", "`quotient`", "a ring name"]),
        }
    }

    fn mod_expr(&mut self) -> PResult<ModExpr> {
        let mut lhs = self.mod_term()?;
        while self.eat(Tok::DirectSum) {
            let rhs = self.mod_term()?;
            lhs = ModExpr::Sum(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn mod_term(&mut self) -> PResult<ModExpr> {
        if self.at_keyword("regular") {
            self.bump();
            self.expect(Tok::LParen)?;
            let r = self.name()?;
            self.expect(Tok::RParen)?;
            return Ok(ModExpr::Regular(r));
        }
        for kw in ["cyclic", "ideal"] {
            if self.at_keyword(kw) {
                self.bump();
                self.expect(Tok::LParen)?;
                let r = self.name()?;
                self.expect(Tok::Semi)?;
                let gens = self.elem_list()?;
                self.expect(Tok::RParen)?;
                return Ok(if kw == "cyclic" { ModExpr::Cyclic(r, gens) } else { ModExpr::Ideal(r, gens) });
            }
        }
        match self.peek() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => Ok(ModExpr::Name(self.name()?)),
            _ => self.error(&["`regular`", "`cyclic`", "`ideal`", "a module name"]),
        }
    }

    fn hom_spec(&mut self) -> PResult<Spanned<HomSpec>> {
        let span = self.span();
        let spec = match self.peek() {
            Tok::Ident(s) if s == "mulby" => {
                self.bump();
                self.expect(Tok::LParen)?;
                let e = self.elem()?;
                self.expect(Tok::RParen)?;
                HomSpec::MulBy(e)
            }
            Tok::Ident(s) if s == "incl" => {
                self.bump();
                HomSpec::Incl
            }
            Tok::Ident(s) if s == "proj" => {
                self.bump();
                HomSpec::Proj
            }
            Tok::Ident(s) if s == "zero" => {
                self.bump();
                HomSpec::Zero
            }
            _ => return self.error(&["`mulby`", "`incl`", "`proj`", "`zero`"]),
        };
        Ok(Spanned::new(spec, span))
    }

    fn elem_list(&mut self) -> PResult<Vec<Elem>> {
        let mut items = vec![self.elem()?];
        while self.eat(Tok::Comma) {
            items.push(self.elem()?);
        }
        Ok(items)
    }

    fn elem(&mut self) -> PResult<Elem> {
        let mut lhs = self.term()?;
        loop {
            let span = lhs.span;
            if self.eat(Tok::Plus) {
                let rhs = self.term()?;
                lhs = Spanned::new(ElemExpr::Add(Box::new(lhs), Box::new(rhs)), span);
            } else if self.eat(Tok::Minus) {
                let rhs = self.term()?;
                lhs = Spanned::new(ElemExpr::Sub(Box::new(lhs), Box::new(rhs)), span);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> PResult<Elem> {
        let mut lhs = self.unary()?;
        while self.eat(Tok::Star) {
            let span = lhs.span;
            let rhs = self.unary()?;
            lhs = Spanned::new(ElemExpr::Mul(Box::new(lhs), Box::new(rhs)), span);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Elem> {
        let span = self.span();
        if self.eat(Tok::Minus) {
            let inner = self.unary()?;
            return Ok(Spanned::new(ElemExpr::Neg(Box::new(inner)), span));
        }
        let base = self.atom()?;
        if self.eat(Tok::Caret) {
            let e = self.int()?;
            return Ok(Spanned::new(ElemExpr::Pow(Box::new(base), e.node), span));
        }
        Ok(base)
    }

    fn atom(&mut self) -> PResult<Elem> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Spanned::new(ElemExpr::Int(n), span))
            }
            Tok::Ident(s) if s == "x" => {
                self.bump();
                Ok(Spanned::new(ElemExpr::X, span))
            }
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                self.bump();
                Ok(Spanned::new(ElemExpr::Name(s), span))
            }
            Tok::LParen => {
                self.bump();
                let first = self.elem()?;
                if self.eat(Tok::Comma) {
                    let second = self.elem()?;
                    self.expect(Tok::RParen)?;
                    Ok(Spanned::new(ElemExpr::Pair(Box::new(first), Box::new(second)), span))
                } else if self.eat(Tok::RParen) {
                    Ok(first)
                } else {
                    self.error(&["`,`", "`)`"])
                }
            }
            _ => self.error(&["an integer", "a name", "`x`", "`(`", "`-`"]),
        }
    }

    fn finish(&mut self) -> PResult<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.error(&["end of input"])
        }
    }
}

/// Parses a whole script.
pub fn parse_script(text: &str) -> PResult<RingScript> {
    let mut p = Parser::new(text)?;
    let decls = p.script()?;
    Ok(RingScript {
        source: text.to_string(),
        decls,
    })
}

/// Parses a standalone module expression, as given on the command line.
pub fn parse_mod_expr(text: &str) -> PResult<ModExpr> {
    let mut p = Parser::new(text)?;
    let e = p.mod_expr()?;
    p.finish()?;
    Ok(e)
}

/// Parses a standalone element expression.
pub fn parse_elem(text: &str) -> PResult<Elem> {
    let mut p = Parser::new(text)?;
    let e = p.elem()?;
    p.finish()?;
    Ok(e)
}
