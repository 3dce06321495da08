//! Session files: one field, one grading group, and named rings, maps and
//! points.
//!
//! ```text
//! field Q                      # or: field Fp 7
//! group Z, Z/2
//! ring A { x: (1,0); y: (0,1); relations: x^2*y - y^3*x^2; }
//! map f: A -> B { x -> s; y -> t; }
//! point p in B { s = 1; t = 0; }
//! ```
//!
//! `#` and `//` start comments. Point coordinates that are not listed are 0.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::abelian::{GradingGroup, GroupElement, QuotientMap};
use crate::error::{Error, Result};
use crate::gradedalg::{GradedRing, RationalPoint};
use crate::luna::GradedRingMap;
use crate::poly::{parse_polynomial, BaseField, Coeff, Polynomial};

#[derive(Clone, Debug)]
pub struct NamedRing {
    pub name: String,
    pub ring: Arc<GradedRing>,
}

#[derive(Clone, Debug)]
pub struct NamedMap {
    pub name: String,
    pub source: String,
    pub target: String,
    pub map: GradedRingMap,
}

#[derive(Clone, Debug)]
pub struct NamedPoint {
    pub name: String,
    pub ring: String,
    pub point: RationalPoint,
}

#[derive(Clone, Debug)]
pub struct Session {
    pub field: BaseField,
    pub group: GradingGroup,
    /// Projection from the declared coordinates (`Z^r ⊕ Z^t`) onto `group`.
    pub declaration: QuotientMap,
    pub rings: Vec<NamedRing>,
    pub maps: Vec<NamedMap>,
    pub points: Vec<NamedPoint>,
}

impl Session {
    pub fn ring(&self, name: &str) -> Result<&NamedRing> {
        self.rings
            .iter()
            .find(|r| r.name == name)
            .ok_or_else(|| Error::Invalid(format!("no ring named '{name}'")))
    }

    pub fn map(&self, name: &str) -> Result<&NamedMap> {
        self.maps
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| Error::Invalid(format!("no map named '{name}'")))
    }

    pub fn point(&self, name: &str) -> Result<&NamedPoint> {
        self.points
            .iter()
            .find(|p| p.name == name)
            .ok_or_else(|| Error::Invalid(format!("no point named '{name}'")))
    }

    pub fn points_in<'a>(&'a self, ring: &'a str) -> impl Iterator<Item = &'a NamedPoint> + 'a {
        self.points.iter().filter(move |p| p.ring == ring)
    }

    /// An element written as a tuple in the declared coordinates.
    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Invalid(format!("expected a tuple like (1,0), found '{text}'")))?;
        let coords = if inner.is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|c| {
                    c.parse::<BigInt>()
                        .map_err(|_| Error::Invalid(format!("'{c}' is not an integer")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        let arity = self.declaration.source().arity();
        if coords.len() != arity {
            return Err(Error::Invalid(format!(
                "element {text} has {} coordinates, the group needs {arity}",
                coords.len()
            )));
        }
        self.declaration
            .project(&GradingGroup::free(arity).element_big(coords)?)
    }

    /// A comma separated list of tuples; empty or `0` means no elements.
    pub fn parse_elements(&self, text: &str) -> Result<Vec<GroupElement>> {
        let t = text.trim();
        if t.is_empty() || t == "0" {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let mut depth = 0;
        let mut start = 0;
        for (i, c) in t.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    out.push(self.parse_element(&t[start..i])?);
                    start = i + 1;
                }
                _ => {}
            }
        }
        out.push(self.parse_element(&t[start..])?);
        Ok(out)
    }

    pub fn is_empty(&self) -> bool {
        self.rings.is_empty() && self.maps.is_empty() && self.points.is_empty()
    }

    /// Session text that parses back to the same objects, with the group in
    /// its canonical form.
    pub fn canonical_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "field {}", self.field).unwrap();
        writeln!(s, "group {}", self.group).unwrap();
        for r in &self.rings {
            writeln!(s, "ring {} {{ {}}}", r.name, r.ring).unwrap();
        }
        for m in &self.maps {
            let target = m.map.target();
            let body: String = m
                .map
                .source()
                .names()
                .iter()
                .zip(m.map.images())
                .map(|(n, p)| format!("{n} -> {}; ", target.show(p)))
                .collect();
            writeln!(s, "map {}: {} -> {} {{ {body}}}", m.name, m.source, m.target).unwrap();
        }
        for p in &self.points {
            let ring = &self.ring(&p.ring).expect("points refer to declared rings").ring;
            let body: String = ring
                .names()
                .iter()
                .zip(p.point.coords())
                .map(|(n, c)| format!("{n} = {c}; "))
                .collect();
            writeln!(s, "point {} in {} {{ {body}}}", p.name, p.ring).unwrap();
        }
        s
    }
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn new(text: &str) -> Self {
        let mut chars: Vec<char> = text.chars().collect();
        // blank out comments, keeping positions
        let mut i = 0;
        while i < chars.len() {
            let starts = chars[i] == '#' || (chars[i] == '/' && chars.get(i + 1) == Some(&'/'));
            if starts {
                while i < chars.len() && chars[i] != '\n' {
                    chars[i] = ' ';
                    i += 1;
                }
            }
            i += 1;
        }
        Cursor { chars, pos: 0 }
    }

    fn location(&self, pos: usize) -> (usize, usize) {
        let mut line = 1;
        let mut col = 1;
        for &c in &self.chars[..pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        (line, col)
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> Error {
        let (line, column) = self.location(pos);
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        self.error_at(self.pos, message)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    /// Skips spaces and tabs but stops at line ends.
    fn skip_inline_ws(&mut self) {
        while self.peek().is_some_and(|c| c == ' ' || c == '\t' || c == '\r') {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(match self.peek() {
                Some(found) => format!("expected '{c}', found '{found}'"),
                None => format!("expected '{c}', found end of input"),
            }))
        }
    }

    fn expect_str(&mut self, s: &str) -> Result<()> {
        self.skip_ws();
        let end = self.pos + s.chars().count();
        if end <= self.chars.len() && self.chars[self.pos..end].iter().copied().eq(s.chars()) {
            self.pos = end;
            Ok(())
        } else {
            Err(self.error(format!("expected '{s}'")))
        }
    }

    fn ident(&mut self) -> Result<(String, usize)> {
        self.skip_ws();
        let start = self.pos;
        if !self.peek().is_some_and(|c| c.is_alphabetic() || c == '_') {
            return Err(self.error("expected a name"));
        }
        while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        Ok((self.chars[start..self.pos].iter().collect(), start))
    }

    /// Text up to (not including) the first of `stops`; errors at a `}` or
    /// end of input when `;` was expected.
    fn until(&mut self, stops: &[char]) -> Result<(String, usize)> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if stops.contains(&c) {
                break;
            }
            if c == '}' || c == '{' {
                return Err(self.error(format!("expected '{}' before '{c}'", stops[0])));
            }
            self.pos += 1;
        }
        if self.peek().is_none() {
            return Err(self.error(format!("expected '{}', found end of input", stops[0])));
        }
        Ok((self.chars[start..self.pos].iter().collect(), start))
    }
}

struct Builder {
    cur: Cursor,
    field: BaseField,
    declared: Option<(GradingGroup, QuotientMap, usize)>,
    names: HashSet<String>,
    rings: Vec<NamedRing>,
    maps: Vec<NamedMap>,
    points: Vec<NamedPoint>,
}

/// Parses and validates a session file.
pub fn parse_session(text: &str) -> Result<Session> {
    let mut b = Builder {
        cur: Cursor::new(text),
        field: BaseField::Rational,
        declared: None,
        names: HashSet::new(),
        rings: Vec::new(),
        maps: Vec::new(),
        points: Vec::new(),
    };
    let mut field_seen = false;
    loop {
        b.cur.skip_ws();
        if b.cur.peek().is_none() {
            break;
        }
        let (kw, at) = b.cur.ident()?;
        match kw.as_str() {
            "field" => {
                if field_seen || !b.rings.is_empty() {
                    return Err(b.cur.error_at(at, "the field must be declared once, before any ring"));
                }
                field_seen = true;
                b.field()?;
            }
            "group" => {
                if b.declared.is_some() {
                    return Err(b.cur.error_at(at, "group declared twice"));
                }
                b.group()?;
            }
            "ring" => b.ring()?,
            "map" => b.map()?,
            "point" => b.point()?,
            other => {
                return Err(b.cur.error_at(
                    at,
                    format!("expected 'field', 'group', 'ring', 'map' or 'point', found '{other}'"),
                ))
            }
        }
    }
    let (group, declaration) = match b.declared {
        Some((g, d, _)) => (g, d),
        None => GradingGroup::from_orders(0, &[])?,
    };
    Ok(Session {
        field: b.field,
        group,
        declaration,
        rings: b.rings,
        maps: b.maps,
        points: b.points,
    })
}

fn end_of_statement(cur: &mut Cursor) -> Result<()> {
    cur.skip_inline_ws();
    match cur.peek() {
        None | Some('\n') => Ok(()),
        Some(';') => {
            cur.pos += 1;
            Ok(())
        }
        Some(c) => Err(cur.error(format!("unexpected '{c}' after declaration"))),
    }
}

fn parse_int(cur: &Cursor, s: &str, at: usize) -> Result<BigInt> {
    s.trim()
        .parse()
        .map_err(|_| cur.error_at(at, format!("expected an integer, found '{}'", s.trim())))
}

/// Maps a polynomial parser error (byte offset in `text`) to a location.
fn relocate(cur: &Cursor, e: Error, text: &str, start: usize) -> Error {
    match e {
        Error::Parse {
            line: 0,
            column,
            message,
        } => {
            let offset = text[..column.min(text.len())].chars().count();
            let lead = text.chars().take_while(|c| c.is_whitespace()).count();
            cur.error_at(start + offset.max(lead), message)
        }
        e => e,
    }
}

impl Builder {
    fn claim(&mut self, name: &str, at: usize) -> Result<()> {
        if !self.names.insert(name.to_string()) {
            return Err(self.cur.error_at(at, format!("name '{name}' is already declared")));
        }
        Ok(())
    }

    fn group_or_err(&self, at: usize) -> Result<&(GradingGroup, QuotientMap, usize)> {
        self.declared
            .as_ref()
            .ok_or_else(|| self.cur.error_at(at, "declare the group before any ring"))
    }

    fn field(&mut self) -> Result<()> {
        let (name, at) = self.cur.ident()?;
        self.field = match name.as_str() {
            "Q" => BaseField::Rational,
            "Fp" => {
                self.cur.skip_inline_ws();
                let start = self.cur.pos;
                while self.cur.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.cur.pos += 1;
                }
                let digits: String = self.cur.chars[start..self.cur.pos].iter().collect();
                let p: u64 = digits
                    .parse()
                    .map_err(|_| self.cur.error_at(start, "expected a prime after 'Fp'"))?;
                BaseField::prime(p).map_err(|e| self.cur.error_at(start, e.to_string()))?
            }
            _ => {
                return Err(self
                    .cur
                    .error_at(at, format!("unknown field '{name}', expected Q or Fp <prime>")))
            }
        };
        end_of_statement(&mut self.cur)
    }

    fn group(&mut self) -> Result<()> {
        self.cur.skip_inline_ws();
        let start = self.cur.pos;
        while self.cur.peek().is_some_and(|c| c != '\n' && c != ';') {
            self.cur.pos += 1;
        }
        let text: String = self.cur.chars[start..self.cur.pos].iter().collect();
        let mut free = 0;
        let mut orders = Vec::new();
        let mut offset = start;
        for part in text.split(',') {
            let at = offset + part.len() - part.trim_start().len();
            offset += part.chars().count() + 1;
            let item: String = part.chars().filter(|c| !c.is_whitespace()).collect();
            if item == "Z" {
                if !orders.is_empty() {
                    return Err(self.cur.error_at(at, "list free factors Z before torsion factors"));
                }
                free += 1;
            } else if let Some(n) = item.strip_prefix("Z/") {
                let n = parse_int(&self.cur, n, at)?;
                if n < BigInt::from(1) {
                    return Err(self.cur.error_at(at, "torsion orders must be positive"));
                }
                orders.push(n);
            } else if item == "0" && text.trim() == "0" {
            } else {
                return Err(self.cur.error_at(at, format!("expected 'Z' or 'Z/n', found '{item}'")));
            }
        }
        let (group, map) = GradingGroup::from_orders(free, &orders)?;
        self.declared = Some((group, map, free + orders.len()));
        end_of_statement(&mut self.cur)
    }

    fn tuple(&mut self) -> Result<Vec<BigInt>> {
        self.cur.expect('(')?;
        let (text, start) = self.cur.until(&[')'])?;
        self.cur.pos += 1;
        if text.trim().is_empty() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let mut offset = start;
        for part in text.split(',') {
            out.push(parse_int(&self.cur, part, offset)?);
            offset += part.chars().count() + 1;
        }
        Ok(out)
    }

    fn ring(&mut self) -> Result<()> {
        let (name, at) = self.cur.ident()?;
        let (group, proj, arity) = self.group_or_err(at)?.clone();
        self.claim(&name, at)?;
        self.cur.expect('{')?;
        let mut vars = Vec::new();
        let mut relations: Vec<(String, usize)> = Vec::new();
        while !self.cur.eat('}') {
            let (var, var_at) = self.cur.ident()?;
            self.cur.expect(':')?;
            if var == "relations" {
                let (text, start) = self.cur.until(&[';'])?;
                self.cur.pos += 1;
                let mut offset = start;
                for part in text.split(',') {
                    relations.push((part.to_string(), offset));
                    offset += part.chars().count() + 1;
                }
                continue;
            }
            self.cur.skip_ws();
            let tuple_at = self.cur.pos;
            let coords = self.tuple()?;
            if coords.len() != arity {
                return Err(self.cur.error_at(
                    tuple_at,
                    format!(
                        "degree of {var} has {} coordinates, the group needs {arity}",
                        coords.len()
                    ),
                ));
            }
            let declared = GradingGroup::free(arity).element_big(coords)?;
            let degree = proj.project(&declared)?;
            if vars.iter().any(|(v, _)| *v == var) {
                return Err(self.cur.error_at(var_at, format!("variable '{var}' declared twice")));
            }
            vars.push((var, degree));
            self.cur.expect(';')?;
        }
        self.cur.eat(';');
        let names: Vec<String> = vars.iter().map(|(v, _)| v.clone()).collect();
        let mut rels = Vec::new();
        for (text, start) in relations {
            if text.trim().is_empty() {
                continue;
            }
            let p = parse_polynomial(&text, &names, self.field).map_err(|e| relocate(&self.cur, e, &text, start))?;
            rels.push(p);
        }
        let ring = GradedRing::new(self.field, group, vars, rels).map_err(|e| match e {
            Error::NotHomogeneous { what, components } => {
                let (line, column) = self.cur.location(at);
                Error::NotHomogeneous {
                    what: format!("{what} in ring {name} ({line}:{column})"),
                    components,
                }
            }
            e => e,
        })?;
        self.rings.push(NamedRing {
            name,
            ring: Arc::new(ring),
        });
        Ok(())
    }

    fn lookup_ring(&self, name: &str, at: usize) -> Result<Arc<GradedRing>> {
        self.rings
            .iter()
            .find(|r| r.name == name)
            .map(|r| r.ring.clone())
            .ok_or_else(|| self.cur.error_at(at, format!("no ring named '{name}'")))
    }

    fn map(&mut self) -> Result<()> {
        let (name, at) = self.cur.ident()?;
        self.claim(&name, at)?;
        self.cur.expect(':')?;
        let (source, s_at) = self.cur.ident()?;
        self.cur.expect_str("->")?;
        let (target, t_at) = self.cur.ident()?;
        let a = self.lookup_ring(&source, s_at)?;
        let b = self.lookup_ring(&target, t_at)?;
        self.cur.expect('{')?;
        let mut images: Vec<Option<Polynomial>> = vec![None; a.nvars()];
        while !self.cur.eat('}') {
            let (var, var_at) = self.cur.ident()?;
            let i = a
                .index_of(&var)
                .ok_or_else(|| self.cur.error_at(var_at, format!("{source} has no variable '{var}'")))?;
            if images[i].is_some() {
                return Err(self.cur.error_at(var_at, format!("image of '{var}' given twice")));
            }
            self.cur.expect_str("->")?;
            let (text, start) = self.cur.until(&[';'])?;
            self.cur.pos += 1;
            let p = parse_polynomial(&text, b.names(), self.field).map_err(|e| relocate(&self.cur, e, &text, start))?;
            images[i] = Some(p);
        }
        self.cur.eat(';');
        let mut full = Vec::new();
        for (i, p) in images.into_iter().enumerate() {
            match p {
                Some(p) => full.push(p),
                None => {
                    return Err(self
                        .cur
                        .error_at(at, format!("map {name} gives no image for '{}'", a.names()[i])))
                }
            }
        }
        let map = GradedRingMap::new(a, b, full).map_err(|e| match e {
            Error::NotHomogeneous { what, components } => Error::NotHomogeneous {
                what: format!("{what} of map {name}"),
                components,
            },
            Error::Invalid(m) => Error::Invalid(format!("map {name}: {m}")),
            e => e,
        })?;
        self.maps.push(NamedMap {
            name,
            source,
            target,
            map,
        });
        Ok(())
    }

    fn point(&mut self) -> Result<()> {
        let (name, at) = self.cur.ident()?;
        self.claim(&name, at)?;
        let (kw, kw_at) = self.cur.ident()?;
        if kw != "in" {
            return Err(self.cur.error_at(kw_at, "expected 'in'"));
        }
        let (ring_name, r_at) = self.cur.ident()?;
        let ring = self.lookup_ring(&ring_name, r_at)?;
        self.cur.expect('{')?;
        let mut coords: Vec<Option<Coeff>> = vec![None; ring.nvars()];
        while !self.cur.eat('}') {
            let (var, var_at) = self.cur.ident()?;
            let i = ring.index_of(&var).ok_or_else(|| {
                self.cur
                    .error_at(var_at, format!("{ring_name} has no variable '{var}'"))
            })?;
            if coords[i].is_some() {
                return Err(self.cur.error_at(var_at, format!("coordinate '{var}' given twice")));
            }
            self.cur.expect('=')?;
            let (text, start) = self.cur.until(&[';'])?;
            self.cur.pos += 1;
            let c = parse_polynomial(&text, &[], self.field).map_err(|e| relocate(&self.cur, e, &text, start))?;
            coords[i] = Some(c.constant_term());
        }
        self.cur.eat(';');
        let coords = coords
            .into_iter()
            .map(|c| c.unwrap_or_else(|| self.field.zero()))
            .collect();
        let point = RationalPoint::new(&ring, coords).map_err(|e| match e {
            Error::InvalidPoint(m) => Error::InvalidPoint(format!("point {name}: {m}")),
            e => e,
        })?;
        self.points.push(NamedPoint {
            name,
            ring: ring_name,
            point,
        });
        Ok(())
    }
}
