//! Syntax tree for ring scripts, with a pretty-printer that parses back to
//! the same tree.

use std::fmt;

/// 1-based source position.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// A node with its start position. Equality ignores the position so that
/// reparsed scripts compare equal.
#[derive(Debug, Clone)]
pub struct Spanned<T> {
    pub node: T,
    pub span: Span,
}

impl<T> Spanned<T> {
    pub fn new(node: T, span: Span) -> Self {
        Spanned { node, span }
    }
}

impl<T: PartialEq> PartialEq for Spanned<T> {
    fn eq(&self, other: &Self) -> bool {
        self.node == other.node
    }
}

impl<T: Eq> Eq for Spanned<T> {}

impl<T: fmt::Display> fmt::Display for Spanned<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.node.fmt(f)
    }
}

pub type Name = Spanned<String>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElemExpr {
    Int(u64),
    /// The polynomial indeterminate.
    X,
    Name(String),
    Pair(Box<Spanned<ElemExpr>>, Box<Spanned<ElemExpr>>),
    Neg(Box<Spanned<ElemExpr>>),
    Add(Box<Spanned<ElemExpr>>, Box<Spanned<ElemExpr>>),
    Sub(Box<Spanned<ElemExpr>>, Box<Spanned<ElemExpr>>),
    Mul(Box<Spanned<ElemExpr>>, Box<Spanned<ElemExpr>>),
    Pow(Box<Spanned<ElemExpr>>, u64),
}

impl ElemExpr {
    fn precedence(&self) -> u8 {
        match self {
            ElemExpr::Add(..) | ElemExpr::Sub(..) => 1,
            ElemExpr::Mul(..) => 2,
            ElemExpr::Neg(_) => 3,
            ElemExpr::Pow(..) => 4,
            _ => 5,
        }
    }

    pub fn mentions_x(&self) -> bool {
        match self {
            ElemExpr::X => true,
            ElemExpr::Int(_) | ElemExpr::Name(_) => false,
            ElemExpr::Neg(a) | ElemExpr::Pow(a, _) => a.node.mentions_x(),
            ElemExpr::Pair(a, b) | ElemExpr::Add(a, b) | ElemExpr::Sub(a, b) | ElemExpr::Mul(a, b) => {
                a.node.mentions_x() || b.node.mentions_x()
            }
        }
    }
}

fn wrap(f: &mut fmt::Formatter<'_>, e: &ElemExpr, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for ElemExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.precedence();
        match self {
            ElemExpr::Int(n) => write!(f, "{n}"),
            ElemExpr::X => write!(f, "x"),
            ElemExpr::Name(n) => write!(f, "{n}"),
            ElemExpr::Pair(a, b) => write!(f, "({}, {})", a.node, b.node),
            ElemExpr::Neg(a) => {
                write!(f, "-")?;
                wrap(f, &a.node, a.node.precedence() < 3)
            }
            ElemExpr::Add(a, b) | ElemExpr::Sub(a, b) | ElemExpr::Mul(a, b) => {
                let op = match self {
                    ElemExpr::Add(..) => " + ",
                    ElemExpr::Sub(..) => " - ",
                    _ => "*",
                };
                wrap(f, &a.node, a.node.precedence() < p)?;
                write!(f, "{op}")?;
                wrap(f, &b.node, b.node.precedence() <= p)
            }
            ElemExpr::Pow(a, e) => {
                wrap(f, &a.node, a.node.precedence() < 5)?;
                write!(f, "^{e}")
            }
        }
    }
}

pub type Elem = Spanned<ElemExpr>;

fn list(f: &mut fmt::Formatter<'_>, items: &[Elem]) -> fmt::Result {
    for (i, e) in items.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{e}")?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingExpr {
    Zmod(Spanned<u64>),
    Name(Name),
    Product(Box<RingExpr>, Box<RingExpr>),
    PolyQuot(Name, Vec<Elem>),
    Quotient(Name, Vec<Elem>),
}

impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingExpr::Zmod(n) => write!(f, "zmod({n})"),
            RingExpr::Name(n) => write!(f, "{n}"),
            RingExpr::Product(a, b) => write!(f, "{a}*{b}"),
            RingExpr::PolyQuot(base, rels) => {
                write!(f, "polyquot({base}; ")?;
                list(f, rels)?;
                write!(f, ")")
            }
            RingExpr::Quotient(base, gens) => {
                write!(f, "quotient({base}; ")?;
                list(f, gens)?;
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModExpr {
    Regular(Name),
    Cyclic(Name, Vec<Elem>),
    Ideal(Name, Vec<Elem>),
    Name(Name),
    Sum(Box<ModExpr>, Box<ModExpr>),
}

impl ModExpr {
    pub fn span(&self) -> Span {
        match self {
            ModExpr::Regular(n) | ModExpr::Cyclic(n, _) | ModExpr::Ideal(n, _) | ModExpr::Name(n) => n.span,
            ModExpr::Sum(a, _) => a.span(),
        }
    }
}

impl fmt::Display for ModExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModExpr::Regular(r) => write!(f, "regular({r})"),
            ModExpr::Cyclic(r, gens) => {
                write!(f, "cyclic({r}; ")?;
                list(f, gens)?;
                write!(f, ")")
            }
            ModExpr::Ideal(r, gens) => {
                write!(f, "ideal({r}; ")?;
                list(f, gens)?;
                write!(f, ")")
            }
            ModExpr::Name(n) => write!(f, "{n}"),
            ModExpr::Sum(a, b) => write!(f, "{a} (+) {b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomSpec {
    MulBy(Elem),
    Incl,
    Proj,
    Zero,
}

impl fmt::Display for HomSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomSpec::MulBy(e) => write!(f, "mulby({e})"),
            HomSpec::Incl => write!(f, "incl"),
            HomSpec::Proj => write!(f, "proj"),
            HomSpec::Zero => write!(f, "zero"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decl {
    Ring {
        name: Name,
        expr: RingExpr,
    },
    Const {
        name: Name,
        ring: Name,
        value: Elem,
    },
    MulSet {
        name: Name,
        ring: Name,
        gens: Vec<Elem>,
    },
    Module {
        name: Name,
        ring: Name,
        expr: ModExpr,
    },
    Sequence {
        name: Name,
        a: Name,
        b: Name,
        c: Name,
        f: Spanned<HomSpec>,
        g: Spanned<HomSpec>,
    },
}

impl Decl {
    pub fn name(&self) -> &Name {
        match self {
            Decl::Ring { name, .. }
            | Decl::Const { name, .. }
            | Decl::MulSet { name, .. }
            | Decl::Module { name, .. }
            | Decl::Sequence { name, .. } => name,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Decl::Ring { .. } => "ring",
            Decl::Const { .. } => "const",
            Decl::MulSet { .. } => "mulset",
            Decl::Module { .. } => "module",
            Decl::Sequence { .. } => "sequence",
        }
    }
}

impl fmt::Display for Decl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decl::Ring { name, expr } => write!(f, "ring {name} = {expr}"),
            Decl::Const { name, ring, value } => write!(f, "const {name} : {ring} = {value}"),
            Decl::MulSet { name, ring, gens } => {
                write!(f, "mulset {name} on {ring} = close(")?;
                list(f, gens)?;
                write!(f, ")")
            }
            Decl::Module { name, ring, expr } => write!(f, "module {name} on {ring} = {expr}"),
            Decl::Sequence { name, a, b, c, f: hf, g } => {
                write!(f, "sequence {name} = {a} -> {b} -> {c} via {hf}, {g}")
            }
        }
    }
}

/// A parsed script: declarations in source order. Equality compares the
/// declarations only.
#[derive(Debug, Clone, Default)]
pub struct RingScript {
    pub source: String,
    pub decls: Vec<Decl>,
}

impl PartialEq for RingScript {
    fn eq(&self, other: &Self) -> bool {
        self.decls == other.decls
    }
}

impl Eq for RingScript {}

impl fmt::Display for RingScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.decls {
            writeln!(f, "{d}")?;
        }
        Ok(())
    }
}
