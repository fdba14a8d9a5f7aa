//! Matrix documents: lexer, parser, printer and evaluation.
//!
//! ```text
//! basis group size 1x2
//! [ e - s*t, 1/2 + 1/2*s ]
//! ```

use std::fmt;

use heckedim::dihedral::Word;
use heckedim::hecke::{gen_in_tau, Basis, HeckeElem};
use heckedim::kernel::HeckeMatrix;
use heckedim::rational::{fmt_q, Q};
use heckedim::{Gen, Params};
use num_traits::{One, Signed};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("cannot invert {0}: only single terms have negative powers")]
    NotInvertible(String),
    #[error("{0}")]
    Core(#[from] heckedim::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Atom {
    E,
    S,
    T,
    Ts,
    Tt,
}

impl Atom {
    fn name(self) -> &'static str {
        match self {
            Atom::E => "e",
            Atom::S => "s",
            Atom::T => "t",
            Atom::Ts => "Ts",
            Atom::Tt => "Tt",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Nonnegative literal; signs are carried by `Neg` and `Sub`.
    Rat(Q),
    Atom(Atom),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixDocument {
    pub basis: Basis,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Expr>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Word(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, col);
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
                col += 1;
            }
            let n = s.parse().map_err(|_| ParseError { line: l0, col: c0, msg: format!("integer {s} is too large") })?;
            Tok::Int(n)
        } else if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphabetic()) {
                s.push(d);
                chars.next();
                col += 1;
            }
            Tok::Word(s)
        } else if "[],+-*/^()".contains(c) {
            chars.next();
            col += 1;
            Tok::Sym(c)
        } else {
            return Err(ParseError { line, col, msg: format!("unexpected character {c:?}") });
        };
        out.push(Spanned { tok, line: l0, col: c0 });
    }
    out.push(Spanned { tok: Tok::End, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    basis: Basis,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        let t = &self.toks[self.pos];
        Err(ParseError { line: t.line, col: t.col, msg: msg.into() })
    }

    fn describe(&self) -> String {
        match self.peek() {
            Tok::Int(n) => format!("{n}"),
            Tok::Word(w) => format!("'{w}'"),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::End => "end of input".into(),
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}', found {}", self.describe()))
        }
    }

    fn expect_word(&mut self, w: &str) -> Result<(), ParseError> {
        if *self.peek() == Tok::Word(w.into()) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{w}', found {}", self.describe()))
        }
    }

    fn expect_int(&mut self) -> Result<u64, ParseError> {
        match self.peek() {
            Tok::Int(n) => {
                let n = *n;
                self.pos += 1;
                Ok(n)
            }
            _ => self.err(format!("expected an integer, found {}", self.describe())),
        }
    }

    fn document(&mut self) -> Result<MatrixDocument, ParseError> {
        self.expect_word("basis")?;
        self.basis = match self.peek() {
            Tok::Word(w) if w == "group" => Basis::Group,
            Tok::Word(w) if w == "tau" => Basis::Tau,
            _ => return self.err(format!("expected 'group' or 'tau', found {}", self.describe())),
        };
        self.pos += 1;
        self.expect_word("size")?;
        let rows = self.expect_int()? as usize;
        self.expect_word("x")?;
        let cols = self.expect_int()? as usize;
        if rows == 0 || cols == 0 {
            return self.err("matrix size must be at least 1x1");
        }
        let mut entries = Vec::new();
        while *self.peek() == Tok::Sym('[') {
            if entries.len() == rows {
                return self.err(format!("more than the declared {rows} rows"));
            }
            self.pos += 1;
            let mut row = vec![self.expr()?];
            while self.eat_sym(',') {
                row.push(self.expr()?);
            }
            if row.len() != cols {
                return self.err(format!("row {} has {} entries, expected {cols}", entries.len() + 1, row.len()));
            }
            self.expect_sym(']')?;
            entries.push(row);
        }
        if *self.peek() != Tok::End {
            return self.err(format!("expected '[' or end of input, found {}", self.describe()));
        }
        if entries.len() != rows {
            return self.err(format!("found {} rows, expected {rows}", entries.len()));
        }
        Ok(MatrixDocument { basis: self.basis, rows, cols, entries })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat_sym('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat_sym('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while self.eat_sym('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.eat_sym('-') {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let start = self.pos;
        let mut base = self.primary()?;
        while *self.peek() == Tok::Sym('^') {
            if matches!(base, Expr::Rat(_)) {
                self.pos = start;
                return self.err("powers apply to atoms and parenthesized expressions");
            }
            self.pos += 1;
            let neg = self.eat_sym('-');
            let k = self.expect_int()?;
            let k = i64::try_from(k).map_err(|_| ParseError {
                line: self.toks[self.pos - 1].line,
                col: self.toks[self.pos - 1].col,
                msg: "exponent too large".into(),
            })?;
            base = Expr::Pow(Box::new(base), if neg { -k } else { k });
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.pos += 1;
                let mut x = Q::from_integer(n.into());
                if self.eat_sym('/') {
                    let d = self.expect_int()?;
                    if d == 0 {
                        self.pos -= 1;
                        return self.err("zero denominator");
                    }
                    x /= Q::from_integer(d.into());
                }
                Ok(Expr::Rat(x))
            }
            Tok::Word(w) => {
                let atom = match w.as_str() {
                    "e" => Atom::E,
                    "s" => Atom::S,
                    "t" => Atom::T,
                    "Ts" | "Tt" if self.basis == Basis::Group => {
                        return self.err(format!("'{w}' is only allowed under basis tau"));
                    }
                    "Ts" => Atom::Ts,
                    "Tt" => Atom::Tt,
                    _ if w.chars().all(|c| c == 's' || c == 't') => {
                        let spelled: Vec<String> = w.chars().map(String::from).collect();
                        return self.err(format!("unknown atom '{w}' (write {})", spelled.join("*")));
                    }
                    _ => return self.err(format!("unknown atom '{w}'")),
                };
                self.pos += 1;
                Ok(Expr::Atom(atom))
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            _ => self.err(format!("expected a number, atom or '(', found {}", self.describe())),
        }
    }
}

pub fn parse_matrix(text: &str) -> Result<MatrixDocument, ParseError> {
    let toks = lex(text)?;
    Parser { toks, pos: 0, basis: Basis::Group }.document()
}

fn level(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 0,
        Expr::Mul(..) => 1,
        Expr::Neg(_) => 2,
        Expr::Pow(..) => 3,
        Expr::Rat(_) | Expr::Atom(_) => 4,
    }
}

fn write_expr(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    let paren = level(e) < min;
    if paren {
        write!(f, "(")?;
    }
    match e {
        Expr::Rat(x) => write!(f, "{}", fmt_q(x))?,
        Expr::Atom(a) => write!(f, "{}", a.name())?,
        Expr::Neg(a) => {
            write!(f, "-")?;
            write_expr(f, a, 2)?;
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            write_expr(f, a, 0)?;
            write!(f, " {} ", if matches!(e, Expr::Add(..)) { '+' } else { '-' })?;
            write_expr(f, b, 1)?;
        }
        Expr::Mul(a, b) => {
            write_expr(f, a, 1)?;
            write!(f, "*")?;
            write_expr(f, b, 2)?;
        }
        Expr::Pow(a, k) => {
            write_expr(f, a, 4)?;
            write!(f, "^{k}")?;
        }
    }
    if paren {
        write!(f, ")")?;
    }
    Ok(())
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, self, 0)
    }
}

impl fmt::Display for MatrixDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let basis = match self.basis {
            Basis::Group => "group",
            Basis::Tau => "tau",
        };
        writeln!(f, "basis {basis} size {}x{}", self.rows, self.cols)?;
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(Expr::to_string).collect();
            writeln!(f, "[ {} ]", cells.join(", "))?;
        }
        Ok(())
    }
}

fn atom_value(a: Atom, basis: Basis, p: &Params) -> HeckeElem {
    match (a, basis) {
        (Atom::E, _) => HeckeElem::one(basis),
        (Atom::S, Basis::Group) => HeckeElem::word(Word::S),
        (Atom::T, Basis::Group) => HeckeElem::word(Word::T),
        (Atom::S, Basis::Tau) => gen_in_tau(Gen::S, p),
        (Atom::T, Basis::Tau) => gen_in_tau(Gen::T, p),
        (Atom::Ts, _) => HeckeElem::tau(Word::S),
        (Atom::Tt, _) => HeckeElem::tau(Word::T),
    }
}

/// Single-term inverse, computed in the group basis.
fn invert(x: &HeckeElem, p: &Params) -> Result<HeckeElem, EvalError> {
    let g = x.to_basis(Basis::Group, p);
    let mut terms = g.terms();
    match (terms.next(), terms.next()) {
        (Some((w, c)), None) => {
            let inv = HeckeElem::term(Basis::Group, w.inverse(), c.recip());
            Ok(inv.to_basis(x.basis(), p))
        }
        _ => Err(EvalError::NotInvertible(x.to_string())),
    }
}

fn power(x: &HeckeElem, k: i64, p: &Params) -> Result<HeckeElem, EvalError> {
    let base = if k < 0 { invert(x, p)? } else { x.clone() };
    let mut acc = HeckeElem::one(x.basis());
    for _ in 0..k.unsigned_abs() {
        acc = acc.mul(&base, p)?;
    }
    Ok(acc)
}

/// Value of `e` in `basis`. Group-basis values do not depend on `p`; under
/// basis tau the atoms `s`, `t` are expanded at `p`.
pub fn eval_expr(e: &Expr, basis: Basis, p: &Params) -> Result<HeckeElem, EvalError> {
    Ok(match e {
        Expr::Rat(x) => HeckeElem::scalar(basis, x.clone()),
        Expr::Atom(a) => atom_value(*a, basis, p),
        Expr::Neg(a) => -&eval_expr(a, basis, p)?,
        Expr::Add(a, b) => &eval_expr(a, basis, p)? + &eval_expr(b, basis, p)?,
        Expr::Sub(a, b) => &eval_expr(a, basis, p)? - &eval_expr(b, basis, p)?,
        Expr::Mul(a, b) => eval_expr(a, basis, p)?.mul(&eval_expr(b, basis, p)?, p)?,
        Expr::Pow(a, k) => power(&eval_expr(a, basis, p)?, *k, p)?,
    })
}

impl MatrixDocument {
    pub fn to_matrix(&self, p: &Params) -> Result<HeckeMatrix, EvalError> {
        let rows = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| eval_expr(e, self.basis, p)).collect())
            .collect::<Result<Vec<Vec<HeckeElem>>, _>>()?;
        Ok(HeckeMatrix::new(self.basis, rows)?)
    }
}

/// Writes `x` in document syntax, e.g. `1/2 + 1/2*s` or `2*Ts - 1`.
pub fn elem_to_expr_text(x: &HeckeElem) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (w, c)) in x.terms().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        let word = word_text(w, x.basis());
        match (a.is_one(), word) {
            (_, None) => out.push_str(&fmt_q(&a)),
            (true, Some(wt)) => out.push_str(&wt),
            (false, Some(wt)) => out.push_str(&format!("{}*{wt}", fmt_q(&a))),
        }
    }
    out
}

fn word_text(w: Word, basis: Basis) -> Option<String> {
    if w.is_one() {
        return None;
    }
    let letters: Vec<&str> = w
        .letters()
        .into_iter()
        .map(|g| match (g, basis) {
            (Gen::S, Basis::Group) => "s",
            (Gen::T, Basis::Group) => "t",
            (Gen::S, Basis::Tau) => "Ts",
            (Gen::T, Basis::Tau) => "Tt",
        })
        .collect();
    Some(letters.join("*"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use heckedim::hecke::a_gen;
    use heckedim::rational::{q, qi};

    #[test]
    fn spec_examples() {
        let d = parse_matrix("basis group size 1x1 [ e - s*t ]").unwrap();
        let m = d.to_matrix(&Params::trivial()).unwrap();
        let expect = HeckeElem::from_terms(Basis::Group, [(Word::ONE, qi(1)), (Word::ST, qi(-1))]);
        assert_eq!(*m.get(0, 0), expect);

        let d = parse_matrix("basis group size 1x1 [ 1/2 + 1/2*s ]").unwrap();
        assert_eq!(*d.to_matrix(&Params::trivial()).unwrap().get(0, 0), a_gen(Gen::S));

        let d = parse_matrix("basis tau size 1x2 [ Ts , Tt - 2 ]").unwrap();
        let m = d.to_matrix(&Params::trivial()).unwrap();
        assert_eq!(m.shape(), (1, 2));
        assert_eq!(*m.get(0, 0), HeckeElem::tau(Word::S));
        let expect = HeckeElem::from_terms(Basis::Tau, [(Word::T, qi(1)), (Word::ONE, qi(-2))]);
        assert_eq!(*m.get(0, 1), expect);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_matrix("basis group size 1x1 [ Ts ]").unwrap_err();
        assert_eq!((e.line, e.col), (1, 24));
        assert!(e.msg.contains("tau"));

        let e = parse_matrix("basis group size 1x2\n[ e ]").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.msg.contains("expected 2"));

        let e = parse_matrix("basis group size 2x1\n[ e ]").unwrap_err();
        assert!(e.msg.contains("found 1 rows"));

        let e = parse_matrix("basis group size 1x1 [ e + ]").unwrap_err();
        assert_eq!(e.col, 28);

        let e = parse_matrix("basis group size 1x1 [ st ]").unwrap_err();
        assert!(e.msg.contains("s*t"), "{e}");

        let e = parse_matrix("basis group size 1x1 [ 2^3 ]").unwrap_err();
        assert!(e.msg.contains("powers"));

        assert!(parse_matrix("basis group size 1x1 [ 1/0 ]").is_err());
        assert!(parse_matrix("basis ring size 1x1 [ e ]").is_err());
        assert!(parse_matrix("basis group size 0x1").is_err());
        assert!(parse_matrix("basis group size 1x1 [ e ] [ e ]").is_err());
        assert!(parse_matrix("basis group size 1x1 [ e ; ]").is_err());
    }

    #[test]
    fn powers_and_inverses() {
        let p = Params::from_ratios((1, 2), (1, 3));
        let d = parse_matrix("basis group size 1x3 [ (s*t)^-2, (2*s)^-1, (e + s)^0 ]").unwrap();
        let m = d.to_matrix(&p).unwrap();
        assert_eq!(*m.get(0, 0), HeckeElem::word(Word::z(-2)));
        assert_eq!(*m.get(0, 1), HeckeElem::term(Basis::Group, Word::S, q(1, 2)));
        assert_eq!(*m.get(0, 2), HeckeElem::one(Basis::Group));

        let d = parse_matrix("basis group size 1x1 [ (e + s)^-1 ]").unwrap();
        assert!(matches!(d.to_matrix(&p), Err(EvalError::NotInvertible(_))));

        // s is its own inverse, in either basis
        let d = parse_matrix("basis tau size 1x1 [ s^-1 * s ]").unwrap();
        assert_eq!(*d.to_matrix(&p).unwrap().get(0, 0), HeckeElem::one(Basis::Tau));
    }

    #[test]
    fn tau_atoms_depend_on_params() {
        let d = parse_matrix("basis tau size 1x1 [ s ]").unwrap();
        let p = Params::from_ratios((1, 2), (1, 3));
        let x = d.to_matrix(&p).unwrap().get(0, 0).clone();
        assert_eq!(x, gen_in_tau(Gen::S, &p));
        assert_eq!(x.to_basis(Basis::Group, &p), HeckeElem::word(Word::S));
    }

    #[test]
    fn printing() {
        let d = parse_matrix("basis group size 1x2 [ -(e - s)*t^2 + 3/4, e-(s-t) ]").unwrap();
        assert_eq!(d.to_string(), "basis group size 1x2\n[ -(e - s)*t^2 + 3/4, e - (s - t) ]\n");
        let x = HeckeElem::from_terms(Basis::Group, [(Word::ONE, q(1, 2)), (Word::ST, q(-3, 1))]);
        assert_eq!(elem_to_expr_text(&x), "1/2 - 3*s*t");
        let back = parse_matrix(&format!("basis group size 1x1 [ {} ]", elem_to_expr_text(&x))).unwrap();
        assert_eq!(*back.to_matrix(&Params::trivial()).unwrap().get(0, 0), x);
    }
}
