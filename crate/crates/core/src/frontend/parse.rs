use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::exactalg::{Poly, Q};

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 1000;
/// Nesting limit for parentheses, brackets and unary minus.
pub const MAX_DEPTH: usize = 200;
/// Upper bound on the estimated number of terms of any subexpression.
const MAX_TERMS: f64 = 50_000.0;
/// Upper bound on the estimated cost of one product.
const MAX_PRODUCT_WORK: f64 = 5.0e6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Colon,
    Comma,
    Semi,
    Equals,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "integer {n}"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Slash => f.write_str("'/'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::LBracket => f.write_str("'['"),
            Tok::RBracket => f.write_str("']'"),
            Tok::Colon => f.write_str("':'"),
            Tok::Comma => f.write_str("','"),
            Tok::Semi => f.write_str("';'"),
            Tok::Equals => f.write_str("'='"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    Unexpected {
        expected: Vec<&'static str>,
        found: String,
    },
    UnknownVariable(String),
    VariableOutOfRing {
        index: usize,
        nvars: usize,
    },
    ExponentTooLarge,
    ZeroDenominator,
    TooDeep,
    TooLarge,
}

/// A syntax or lowering error at a source position (1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: ", self.line, self.column)?;
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::Unexpected { expected, found } => {
                write!(f, "expected {}, found {found}", expected.join(" or "))
            }
            ParseErrorKind::UnknownVariable(s) => {
                write!(f, "unknown variable '{s}' (variables are x0 to x9)")
            }
            ParseErrorKind::VariableOutOfRing { index, nvars } => {
                write!(f, "variable x{index} outside a ring of {nvars} variables")
            }
            ParseErrorKind::ExponentTooLarge => {
                write!(f, "exponent larger than {MAX_EXPONENT}")
            }
            ParseErrorKind::ZeroDenominator => f.write_str("zero denominator"),
            ParseErrorKind::TooDeep => write!(f, "nesting deeper than {MAX_DEPTH}"),
            ParseErrorKind::TooLarge => f.write_str("expression too large to expand"),
        }
    }
}

impl std::error::Error for ParseError {}

pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else if c.is_some() {
                column += 1;
            }
            c
        }};
    }
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                bump!();
            }
            continue;
        }
        if c == '/' {
            bump!();
            if chars.peek() == Some(&'/') {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    bump!();
                }
            } else {
                out.push(Token {
                    tok: Tok::Slash,
                    line: l,
                    column: col,
                });
            }
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                bump!();
            }
            Tok::Int(s.parse().expect("ascii digits"))
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars
                .peek()
                .filter(|d| d.is_ascii_alphanumeric() || **d == '_')
            {
                s.push(d);
                bump!();
            }
            Tok::Ident(s)
        } else {
            let t = match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                ':' => Tok::Colon,
                ',' => Tok::Comma,
                ';' => Tok::Semi,
                '=' => Tok::Equals,
                other => {
                    return Err(ParseError {
                        line: l,
                        column: col,
                        kind: ParseErrorKind::UnexpectedChar(other),
                    })
                }
            };
            bump!();
            t
        };
        out.push(Token {
            tok,
            line: l,
            column: col,
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

/// `x<k>` for a single digit `k`.
pub fn variable_index(name: &str) -> Option<usize> {
    let rest = name.strip_prefix('x')?;
    (rest.len() == 1).then(|| rest.parse().ok()).flatten()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Q),
    Var {
        index: usize,
        line: usize,
        column: usize,
    },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// Estimated `(degree, terms)` of the expansion, for refusing blowups.
fn estimate(e: &Expr, nvars: usize) -> Result<(f64, f64), ()> {
    let monomials_up_to = |d: f64| {
        // C(nvars + d, nvars)
        (1..=nvars).fold(1.0, |acc, i| acc * (d + i as f64) / i as f64)
    };
    let r = match e {
        Expr::Num(_) => (0.0, 1.0),
        Expr::Var { .. } => (1.0, 1.0),
        Expr::Neg(a) => estimate(a, nvars)?,
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let (da, ta) = estimate(a, nvars)?;
            let (db, tb) = estimate(b, nvars)?;
            (da.max(db), ta + tb)
        }
        Expr::Mul(a, b) => {
            let (da, ta) = estimate(a, nvars)?;
            let (db, tb) = estimate(b, nvars)?;
            if ta * tb > MAX_PRODUCT_WORK {
                return Err(());
            }
            (da + db, (ta * tb).min(monomials_up_to(da + db)))
        }
        Expr::Pow(a, k) => {
            let (d, t) = estimate(a, nvars)?;
            let k = *k as f64;
            let terms = t.powf(k).min(monomials_up_to(d * k));
            // squaring steps multiply partial powers of at most `terms` terms
            if terms * terms > MAX_PRODUCT_WORK * 10.0 && t > 1.0 {
                return Err(());
            }
            (d * k, terms)
        }
    };
    if r.1 > MAX_TERMS {
        return Err(());
    }
    Ok(r)
}

impl Expr {
    /// Expands into a polynomial of `nvars` variables.
    pub fn lower(&self, nvars: usize) -> Result<Poly, ParseError> {
        if estimate(self, nvars).is_err() {
            let (line, column) = self.position().unwrap_or((1, 1));
            return Err(ParseError {
                line,
                column,
                kind: ParseErrorKind::TooLarge,
            });
        }
        self.lower_unchecked(nvars)
    }

    fn position(&self) -> Option<(usize, usize)> {
        match self {
            Expr::Num(_) => None,
            Expr::Var { line, column, .. } => Some((*line, *column)),
            Expr::Neg(a) | Expr::Pow(a, _) => a.position(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.position().or_else(|| b.position())
            }
        }
    }

    fn lower_unchecked(&self, nvars: usize) -> Result<Poly, ParseError> {
        Ok(match self {
            Expr::Num(c) => Poly::constant(nvars, c.clone()),
            Expr::Var {
                index,
                line,
                column,
            } => {
                if *index >= nvars {
                    return Err(ParseError {
                        line: *line,
                        column: *column,
                        kind: ParseErrorKind::VariableOutOfRing {
                            index: *index,
                            nvars,
                        },
                    });
                }
                Poly::var(nvars, *index)
            }
            Expr::Neg(a) => -a.lower_unchecked(nvars)?,
            Expr::Add(a, b) => a.lower_unchecked(nvars)? + b.lower_unchecked(nvars)?,
            Expr::Sub(a, b) => a.lower_unchecked(nvars)? - b.lower_unchecked(nvars)?,
            Expr::Mul(a, b) => a.lower_unchecked(nvars)? * b.lower_unchecked(nvars)?,
            Expr::Pow(a, k) => a.lower_unchecked(nvars)?.pow(*k),
        })
    }
}

/// Recursive-descent parser over a token stream.
pub struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    depth: usize,
}

impl Parser {
    pub fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            tokens: tokenize(text)?,
            pos: 0,
            depth: 0,
        })
    }

    pub fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    pub fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    pub fn here(&self) -> (usize, usize) {
        let t = &self.tokens[self.pos];
        (t.line, t.column)
    }

    pub fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    pub fn error(&self, expected: &[&'static str]) -> ParseError {
        let t = &self.tokens[self.pos];
        ParseError {
            line: t.line,
            column: t.column,
            kind: ParseErrorKind::Unexpected {
                expected: expected.to_vec(),
                found: t.tok.to_string(),
            },
        }
    }

    pub fn error_at(&self, kind: ParseErrorKind) -> ParseError {
        let (line, column) = self.here();
        ParseError { line, column, kind }
    }

    pub fn expect(&mut self, tok: Tok, name: &'static str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.next();
            Ok(())
        } else {
            Err(self.error(&[name]))
        }
    }

    pub fn ident(&mut self, what: &'static str) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.next();
                Ok(s)
            }
            _ => Err(self.error(&[what])),
        }
    }

    pub fn at_eof(&self) -> bool {
        *self.peek() == Tok::Eof
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.error_at(ParseErrorKind::TooDeep));
        }
        Ok(())
    }

    pub fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.next();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.next();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Star {
            self.next();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.next();
            self.enter()?;
            let inner = self.unary()?;
            self.depth -= 1;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.next();
        match self.peek().clone() {
            Tok::Int(n) => {
                let k = n
                    .to_u32()
                    .filter(|&k| k <= MAX_EXPONENT)
                    .ok_or_else(|| self.error_at(ParseErrorKind::ExponentTooLarge))?;
                self.next();
                Ok(Expr::Pow(Box::new(base), k))
            }
            _ => Err(self.error(&["exponent"])),
        }
    }

    /// `INT` or `INT/INT`.
    pub fn rational(&mut self) -> Result<Q, ParseError> {
        let Tok::Int(n) = self.peek().clone() else {
            return Err(self.error(&["number"]));
        };
        self.next();
        if *self.peek() != Tok::Slash {
            return Ok(Q::from_integer(n));
        }
        self.next();
        let Tok::Int(d) = self.peek().clone() else {
            return Err(self.error(&["denominator"]));
        };
        if d.is_zero() {
            return Err(self.error_at(ParseErrorKind::ZeroDenominator));
        }
        self.next();
        Ok(Q::new(n, d))
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Int(_) => Ok(Expr::Num(self.rational()?)),
            Tok::Ident(s) => {
                let (line, column) = self.here();
                let index = variable_index(&s)
                    .ok_or_else(|| self.error_at(ParseErrorKind::UnknownVariable(s)))?;
                self.next();
                Ok(Expr::Var {
                    index,
                    line,
                    column,
                })
            }
            Tok::LParen => {
                self.next();
                self.enter()?;
                let e = self.expr()?;
                self.depth -= 1;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            _ => Err(self.error(&["number", "variable", "'('", "'-'"])),
        }
    }

    /// `[e : e : ... : e]`.
    pub fn tuple(&mut self) -> Result<Vec<Expr>, ParseError> {
        self.expect(Tok::LBracket, "'['")?;
        let mut items = vec![self.expr()?];
        loop {
            match self.peek() {
                Tok::Colon => {
                    self.next();
                    items.push(self.expr()?);
                }
                Tok::RBracket => {
                    self.next();
                    return Ok(items);
                }
                _ => return Err(self.error(&["':'", "']'", "operator"])),
            }
        }
    }

    pub fn finish(&self) -> Result<(), ParseError> {
        if self.at_eof() {
            Ok(())
        } else {
            Err(self.error(&["operator", "end of input"]))
        }
    }
}

/// `parse_expr`: a complete expression.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{q, qf};

    fn poly(text: &str) -> Poly {
        parse_expr(text).unwrap().lower(3).unwrap()
    }

    #[test]
    fn parses_nodal_cubic() {
        let p = poly("x1^2*x2 - x0^3 - x0^2*x2");
        assert_eq!(p.to_string(), "-x0^3 - x0^2*x2 + x1^2*x2");
    }

    #[test]
    fn precedence() {
        assert_eq!(poly("-x0^2"), -Poly::var(3, 0).pow(2));
        assert_eq!(poly("2*x0 + 3*x1 - x2"), poly("(2*x0) + (3*x1) - x2"));
        assert_eq!(poly("x0 - x1 - x2"), poly("(x0 - x1) - x2"));
        assert_eq!(poly("--x0"), Poly::var(3, 0));
        assert_eq!(
            poly("3/2*x0^2").coeff(&crate::exactalg::Monomial::new(vec![2, 0, 0])),
            qf(3, 2)
        );
        assert_eq!(poly("(x0 + x1)^2 - x0^2 - x1^2"), poly("2*x0*x1"));
        assert_eq!(poly("0"), Poly::zero(3));
        assert_eq!(poly("4/6"), Poly::constant(3, qf(2, 3)));
        assert_eq!(poly("7").constant_value(), Some(q(7)));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_expr("x0 + ").unwrap_err();
        assert_eq!((e.line, e.column), (1, 6));
        assert!(
            matches!(e.kind, ParseErrorKind::Unexpected { ref found, .. } if found == "end of input")
        );

        let e = parse_expr("x0 x1").unwrap_err();
        assert_eq!(e.column, 4);

        let e = parse_expr("x0\n + y").unwrap_err();
        assert_eq!((e.line, e.column), (2, 4));
        assert_eq!(e.kind, ParseErrorKind::UnknownVariable("y".into()));

        assert_eq!(
            parse_expr("1/0").unwrap_err().kind,
            ParseErrorKind::ZeroDenominator
        );
        assert_eq!(
            parse_expr("x0^1001").unwrap_err().kind,
            ParseErrorKind::ExponentTooLarge
        );
        assert_eq!(
            parse_expr("x0 $").unwrap_err().kind,
            ParseErrorKind::UnexpectedChar('$')
        );
        let deep = "(".repeat(500) + "x0" + &")".repeat(500);
        assert_eq!(parse_expr(&deep).unwrap_err().kind, ParseErrorKind::TooDeep);
        assert_eq!(
            parse_expr("x5").unwrap().lower(3).unwrap_err().kind,
            ParseErrorKind::VariableOutOfRing { index: 5, nvars: 3 }
        );
        assert_eq!(
            parse_expr("(x0 + x1 + x2)^900")
                .unwrap()
                .lower(3)
                .unwrap_err()
                .kind,
            ParseErrorKind::TooLarge
        );
        assert!(parse_expr("x0^2^3").is_err());
        assert!(parse_expr("x0/2").is_err());
    }

    #[test]
    fn comments_are_skipped() {
        assert_eq!(poly("x0 # trailing\n + x1 // more"), poly("x0 + x1"));
    }
}
