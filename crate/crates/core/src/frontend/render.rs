//! Canonical text for domain values and the parsers that read it back.

use std::fmt::Write as _;

use thiserror::Error;

use crate::curvegenus::GenusReport;
use crate::exactalg::{Point, Poly, Q};
use crate::mapalg::{BirationalMap, MapError, MapRep};

use super::parse::{ParseError, Parser, Tok};

/// `render`: the canonical text of a value, identical for equal values.
pub trait Render {
    fn render(&self) -> String;
}

impl Render for Poly {
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Render for MapRep {
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Render for BirationalMap {
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Render for Point {
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Render for GenusReport {
    fn render(&self) -> String {
        self.to_string()
    }
}

/// The verified pair with both cofactors, one field per line.
pub fn render_birmap_details(b: &BirationalMap) -> String {
    let mut s = String::new();
    let list = |ps: &[Poly]| {
        if ps.is_empty() {
            "none".to_string()
        } else {
            ps.iter()
                .map(Poly::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        }
    };
    let _ = writeln!(s, "forward: {}", b.forward());
    let _ = writeln!(s, "inverse: {}", b.inverse());
    let _ = writeln!(
        s,
        "degree: {} / {}",
        b.forward().degree(),
        b.inverse().degree()
    );
    let _ = writeln!(s, "cofactor forward: {}", b.cofactor_fwd());
    let _ = writeln!(s, "cofactor backward: {}", b.cofactor_bwd());
    let _ = writeln!(s, "exceptional forward: {}", list(b.exceptional_fwd()));
    let _ = write!(s, "exceptional backward: {}", list(b.exceptional_bwd()));
    s
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReadError {
    #[error(transparent)]
    Syntax(#[from] ParseError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("point has no nonzero coordinate")]
    ZeroPoint,
}

fn lower_all(exprs: Vec<super::parse::Expr>, nvars: usize) -> Result<Vec<Poly>, ParseError> {
    exprs.iter().map(|e| e.lower(nvars)).collect()
}

/// Reads a rendered polynomial in `nvars` variables.
pub fn parse_poly(text: &str, nvars: usize) -> Result<Poly, ReadError> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e.lower(nvars)?)
}

/// Reads a rendered map `[f0 : ... : fn]` of `P^(nvars-1)`.
pub fn parse_map(text: &str, nvars: usize) -> Result<MapRep, ReadError> {
    let mut p = Parser::new(text)?;
    let t = p.tuple()?;
    p.finish()?;
    Ok(MapRep::normalize(lower_all(t, nvars)?)?)
}

/// Reads a rendered pair `([...], [...])` and verifies it.
pub fn parse_birmap(text: &str, nvars: usize) -> Result<BirationalMap, ReadError> {
    let mut p = Parser::new(text)?;
    p.expect(Tok::LParen, "'('")?;
    let f = p.tuple()?;
    p.expect(Tok::Comma, "','")?;
    let g = p.tuple()?;
    p.expect(Tok::RParen, "')'")?;
    p.finish()?;
    let f = MapRep::normalize(lower_all(f, nvars)?)?;
    let g = MapRep::normalize(lower_all(g, nvars)?)?;
    Ok(BirationalMap::new(f, g)?)
}

/// Reads a rendered point `[a:b:...]`.
pub fn parse_point(text: &str) -> Result<Point, ReadError> {
    let mut p = Parser::new(text)?;
    p.expect(Tok::LBracket, "'['")?;
    let mut coords = Vec::new();
    loop {
        let neg = *p.peek() == Tok::Minus;
        if neg {
            p.next();
        }
        let v: Q = p.rational()?;
        coords.push(if neg { -v } else { v });
        match p.peek() {
            Tok::Colon => {
                p.next();
            }
            Tok::RBracket => {
                p.next();
                break;
            }
            _ => return Err(p.error(&["':'", "']'"]).into()),
        }
    }
    p.finish()?;
    Point::new(coords).map_err(|_| ReadError::ZeroPoint)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{q, qf};

    #[test]
    fn render_examples() {
        let s = BirationalMap::standard_quadratic(2).unwrap();
        assert_eq!(s.forward().render(), "[x1*x2 : x0*x2 : x0*x1]");
        assert_eq!(Poly::zero(3).render(), "0");
    }

    #[test]
    fn round_trips() {
        let p = Poly::from_terms(3, [(vec![2, 0, 0], qf(3, 2)), (vec![0, 0, 0], q(-7))]);
        assert_eq!(p.render(), "3/2*x0^2 - 7");
        assert_eq!(parse_poly(&p.render(), 3).unwrap(), p);

        let s = BirationalMap::standard_quadratic(3).unwrap();
        assert_eq!(parse_map(&s.forward().render(), 4).unwrap(), *s.forward());
        assert_eq!(
            parse_birmap(&s.render(), 4).unwrap(),
            BirationalMap::new(s.forward().clone(), s.inverse().clone()).unwrap()
        );

        let pt = Point::new(vec![qf(-1, 2), q(0), q(3)]).unwrap();
        assert_eq!(parse_point(&pt.render()).unwrap(), pt);
        assert_eq!(parse_point("[0:0:0]"), Err(ReadError::ZeroPoint));
    }
}
