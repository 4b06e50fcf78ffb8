use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::conelab::ConeWitness;
use crate::exactalg::{Poly, QMatrix, Q};
use crate::mapalg::{compose, numeric_precheck, BirationalMap, MapError, MapRep};

use super::parse::{variable_index, Expr, ParseError, Parser, Tok};

/// Largest ring a job file may declare.
pub const MAX_VARIABLES: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Object {
    Poly(Poly),
    Map(MapRep),
    BirMap(BirationalMap),
    Cone(ConeWitness),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Poly(_) => "poly",
            Object::Map(_) => "map",
            Object::BirMap(_) => "birmap",
            Object::Cone(_) => "cone",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LoadError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Syntax(#[from] ParseError),
    #[error("line {line}: the first declaration must be 'ring N;' with 2 <= N <= {MAX_VARIABLES}")]
    MissingRing { line: usize },
    #[error("line {line}: '{name}' is declared twice")]
    DuplicateName { name: String, line: usize },
    #[error("line {line}: '{name}' is a variable name")]
    ReservedName { name: String, line: usize },
    #[error("line {line}: unknown {kind} '{name}'")]
    UnknownName {
        kind: &'static str,
        name: String,
        line: usize,
    },
    #[error("{kind} {name}: {message}")]
    Declaration {
        kind: &'static str,
        name: String,
        message: String,
    },
}

/// Options applied while loading.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LoadOptions {
    /// `(p, trials)`: screen every birmap modulo `p` before verifying it.
    pub precheck: Option<(u64, usize)>,
}

/// A loaded job file: one ambient ring and verified named objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobFile {
    nvars: usize,
    objects: BTreeMap<String, Object>,
    order: Vec<String>,
}

enum MapSource {
    Named(String, usize),
    Inline(Vec<Expr>),
}

impl JobFile {
    /// `load_jobfile`.
    pub fn load(path: &Path, opts: &LoadOptions) -> Result<Self, LoadError> {
        let bytes = std::fs::read(path).map_err(|e| LoadError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        let text = std::str::from_utf8(&bytes).map_err(|e| LoadError::Io {
            path: path.display().to_string(),
            message: format!("not UTF-8: {e}"),
        })?;
        Self::parse(text, opts)
    }

    pub fn parse(text: &str, opts: &LoadOptions) -> Result<Self, LoadError> {
        let mut p = Parser::new(text)?;
        let (line, _) = p.here();
        let nvars = match (p.peek().clone(), p.peek_at(1).clone()) {
            (Tok::Ident(kw), Tok::Int(n)) if kw == "ring" => {
                p.next();
                p.next();
                p.expect(Tok::Semi, "';'")?;
                usize::try_from(n)
                    .ok()
                    .filter(|n| (2..=MAX_VARIABLES).contains(n))
                    .ok_or(LoadError::MissingRing { line })?
            }
            _ => return Err(LoadError::MissingRing { line }),
        };
        let mut job = JobFile {
            nvars,
            objects: BTreeMap::new(),
            order: Vec::new(),
        };
        while !p.at_eof() {
            job.declaration(&mut p, opts)?;
        }
        Ok(job)
    }

    fn declaration(&mut self, p: &mut Parser, opts: &LoadOptions) -> Result<(), LoadError> {
        let (line, _) = p.here();
        let kind: &'static str = match p.peek() {
            Tok::Ident(k) if k == "poly" => "poly",
            Tok::Ident(k) if k == "map" => "map",
            Tok::Ident(k) if k == "birmap" => "birmap",
            Tok::Ident(k) if k == "cone" => "cone",
            _ => return Err(p.error(&["'poly'", "'map'", "'birmap'", "'cone'"]).into()),
        };
        p.next();
        let name = p.ident("name")?;
        if variable_index(&name).is_some() {
            return Err(LoadError::ReservedName { name, line });
        }
        if self.objects.contains_key(&name) {
            return Err(LoadError::DuplicateName { name, line });
        }
        p.expect(Tok::Equals, "'='")?;
        let fail = |message: String| LoadError::Declaration {
            kind,
            name: name.clone(),
            message,
        };
        let object = match kind {
            "poly" => Object::Poly(p.expr()?.lower(self.nvars)?),
            "map" => {
                let tuple = self.lower_tuple(&p.tuple()?)?;
                Object::Map(MapRep::normalize(tuple).map_err(|e| fail(e.to_string()))?)
            }
            "birmap" => Object::BirMap(self.birmap_decl(p, opts, &fail)?),
            _ => {
                let base = self.cone_base(p)?;
                Object::Cone(ConeWitness::cone_over(&base).map_err(|e| fail(e.to_string()))?)
            }
        };
        p.expect(Tok::Semi, "';'")?;
        self.order.push(name.clone());
        self.objects.insert(name, object);
        Ok(())
    }

    fn lower_tuple(&self, exprs: &[Expr]) -> Result<Vec<Poly>, LoadError> {
        Ok(exprs
            .iter()
            .map(|e| e.lower(self.nvars))
            .collect::<Result<_, _>>()?)
    }

    fn map_source(&self, p: &mut Parser) -> Result<MapSource, LoadError> {
        if *p.peek() == Tok::LBracket {
            return Ok(MapSource::Inline(p.tuple()?));
        }
        let (line, _) = p.here();
        Ok(MapSource::Named(p.ident("map name or '['")?, line))
    }

    fn resolve_map(&self, src: MapSource) -> Result<Result<MapRep, MapError>, LoadError> {
        match src {
            MapSource::Inline(exprs) => Ok(MapRep::normalize(self.lower_tuple(&exprs)?)),
            MapSource::Named(n, line) => match self.objects.get(&n) {
                Some(Object::Map(m)) => Ok(Ok(m.clone())),
                _ => Err(LoadError::UnknownName {
                    kind: "map",
                    name: n,
                    line,
                }),
            },
        }
    }

    fn named_birmap(&self, p: &mut Parser) -> Result<BirationalMap, LoadError> {
        let (line, _) = p.here();
        let n = p.ident("birmap name")?;
        match self.objects.get(&n) {
            Some(Object::BirMap(b)) => Ok(b.clone()),
            _ => Err(LoadError::UnknownName {
                kind: "birmap",
                name: n,
                line,
            }),
        }
    }

    fn birmap_decl(
        &self,
        p: &mut Parser,
        opts: &LoadOptions,
        fail: &dyn Fn(String) -> LoadError,
    ) -> Result<BirationalMap, LoadError> {
        let dim = self.nvars - 1;
        match p.peek().clone() {
            Tok::Ident(kw) if kw == "quadratic" => {
                p.next();
                BirationalMap::standard_quadratic(dim).map_err(|e| fail(e.to_string()))
            }
            Tok::Ident(kw) if kw == "compose" => {
                p.next();
                p.expect(Tok::LParen, "'('")?;
                let mut acc = self.named_birmap(p)?;
                while *p.peek() == Tok::Comma {
                    p.next();
                    let next = self.named_birmap(p)?;
                    acc = compose(&acc, &next).map_err(|e| fail(e.to_string()))?;
                }
                p.expect(Tok::RParen, "',' or ')'")?;
                Ok(acc)
            }
            Tok::Ident(kw) if kw == "linear" => {
                p.next();
                p.expect(Tok::LParen, "'('")?;
                let rows = matrix(p)?;
                p.expect(Tok::RParen, "')'")?;
                let m = QMatrix::new(rows).map_err(|e| fail(e.to_string()))?;
                if m.size() != self.nvars {
                    return Err(fail(format!(
                        "matrix of size {} for a ring of {} variables",
                        m.size(),
                        self.nvars
                    )));
                }
                BirationalMap::linear(&m).map_err(|e| fail(e.to_string()))
            }
            Tok::LParen => {
                p.next();
                let fwd = self.map_source(p)?;
                p.expect(Tok::Comma, "','")?;
                let inv = self.map_source(p)?;
                p.expect(Tok::RParen, "')'")?;
                let fwd = self.resolve_map(fwd)?.map_err(|e| fail(e.to_string()))?;
                let inv = self.resolve_map(inv)?.map_err(|e| fail(e.to_string()))?;
                if let Some((prime, trials)) = opts.precheck {
                    let ok = numeric_precheck(&fwd, &inv, trials, prime, 0)
                        .map_err(|e| fail(e.to_string()))?;
                    if !ok {
                        return Err(fail(format!(
                            "numeric precheck modulo {prime} found a point where the inverse does not undo the forward map"
                        )));
                    }
                }
                BirationalMap::new(fwd, inv).map_err(|e| fail(e.to_string()))
            }
            _ => Err(p
                .error(&["'('", "'quadratic'", "'compose'", "'linear'"])
                .into()),
        }
    }

    /// `cone(NAME)` or `cone(EXPR)`.
    fn cone_base(&self, p: &mut Parser) -> Result<Poly, LoadError> {
        let kw_ok = matches!(p.peek(), Tok::Ident(k) if k == "cone");
        if !kw_ok {
            return Err(p.error(&["'cone'"]).into());
        }
        p.next();
        p.expect(Tok::LParen, "'('")?;
        let base = match (p.peek().clone(), p.peek_at(1).clone()) {
            (Tok::Ident(n), Tok::RParen) if variable_index(&n).is_none() => {
                let (line, _) = p.here();
                p.next();
                match self.objects.get(&n) {
                    Some(Object::Poly(q)) => q.clone(),
                    _ => {
                        return Err(LoadError::UnknownName {
                            kind: "poly",
                            name: n,
                            line,
                        })
                    }
                }
            }
            _ => p.expr()?.lower(self.nvars)?,
        };
        p.expect(Tok::RParen, "')'")?;
        Ok(base)
    }

    /// Number of variables of the declared ring.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, name: &str) -> Option<&Object> {
        self.objects.get(name)
    }

    /// Names in declaration order.
    pub fn names(&self) -> &[String] {
        &self.order
    }

    pub fn poly(&self, name: &str) -> Result<&Poly, LookupError> {
        match self.lookup(name)? {
            Object::Poly(p) => Ok(p),
            other => Err(LookupError::wrong(name, "poly", other)),
        }
    }

    pub fn birmap(&self, name: &str) -> Result<&BirationalMap, LookupError> {
        match self.lookup(name)? {
            Object::BirMap(b) => Ok(b),
            other => Err(LookupError::wrong(name, "birmap", other)),
        }
    }

    pub fn cone(&self, name: &str) -> Result<&ConeWitness, LookupError> {
        match self.lookup(name)? {
            Object::Cone(c) => Ok(c),
            other => Err(LookupError::wrong(name, "cone", other)),
        }
    }

    /// A poly, or the base of a cone.
    pub fn curve(&self, name: &str) -> Result<&Poly, LookupError> {
        match self.lookup(name)? {
            Object::Poly(p) => Ok(p),
            Object::Cone(c) => Ok(c.base()),
            other => Err(LookupError::wrong(name, "poly or cone", other)),
        }
    }

    fn lookup(&self, name: &str) -> Result<&Object, LookupError> {
        self.objects
            .get(name)
            .ok_or_else(|| LookupError::Missing(name.to_string()))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LookupError {
    #[error("no object named '{0}'")]
    Missing(String),
    #[error("'{name}' is a {found}, expected a {expected}")]
    WrongKind {
        name: String,
        expected: &'static str,
        found: &'static str,
    },
}

impl LookupError {
    fn wrong(name: &str, expected: &'static str, found: &Object) -> Self {
        LookupError::WrongKind {
            name: name.to_string(),
            expected,
            found: found.kind(),
        }
    }
}

/// `[[r, r, ...], ...]` with optionally negated rationals.
fn matrix(p: &mut Parser) -> Result<Vec<Vec<Q>>, LoadError> {
    p.expect(Tok::LBracket, "'['")?;
    let mut rows = Vec::new();
    loop {
        p.expect(Tok::LBracket, "'['")?;
        let mut row = Vec::new();
        loop {
            let neg = *p.peek() == Tok::Minus;
            if neg {
                p.next();
            }
            let v = p.rational()?;
            row.push(if neg { -v } else { v });
            match p.peek() {
                Tok::Comma => {
                    p.next();
                }
                Tok::RBracket => {
                    p.next();
                    break;
                }
                _ => return Err(p.error(&["','", "']'"]).into()),
            }
        }
        rows.push(row);
        match p.peek() {
            Tok::Comma => {
                p.next();
            }
            Tok::RBracket => {
                p.next();
                return Ok(rows);
            }
            _ => return Err(p.error(&["','", "']'"]).into()),
        }
    }
}

impl fmt::Display for JobFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ring {};", self.nvars)?;
        for name in &self.order {
            match &self.objects[name] {
                Object::Poly(p) => writeln!(f, "poly {name} = {p};")?,
                Object::Map(m) => writeln!(f, "map {name} = {m};")?,
                Object::BirMap(b) => writeln!(f, "birmap {name} = {b};")?,
                Object::Cone(c) => writeln!(f, "cone {name} = cone({});", c.base())?,
            }
        }
        Ok(())
    }
}
