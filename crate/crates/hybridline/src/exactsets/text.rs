//! Canonical textual form for representable sets.
//!
//! A set is written as whitespace-separated atoms: intervals `(a,b)` /
//! `[a,b)` / `(a,b]` / `[a,b]` with rational or `-inf`/`inf` bounds, point
//! blocks `{p,q,...}`, generators `gen(a;c;r;k0)`, and carve-outs as the same
//! atoms prefixed with `minus`. The empty set is written `empty`. The printer
//! emits intervals first, then the plus part, then the minus part, each in
//! canonical order, so equal construction paths print identically.

use std::fmt;
use std::str::FromStr;

use super::interval::{Endpoint, Ext, Interval};
use super::rational::Rat;
use super::rset::RSet;
use super::seqgen::SeqGen;
use super::{ExactError, Result};

impl fmt::Display for RSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "empty");
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if first {
                first = false;
                Ok(())
            } else {
                write!(f, " ")
            }
        };
        for iv in self.intervals() {
            sep(f)?;
            write!(f, "{iv}")?;
        }
        if !self.plus().points().is_empty() {
            sep(f)?;
            write_points(f, self.plus().points().iter())?;
        }
        for g in self.plus().gens() {
            sep(f)?;
            write!(f, "{g}")?;
        }
        if !self.minus().points().is_empty() {
            sep(f)?;
            write!(f, "minus ")?;
            write_points(f, self.minus().points().iter())?;
        }
        for g in self.minus().gens() {
            sep(f)?;
            write!(f, "minus {g}")?;
        }
        Ok(())
    }
}

fn write_points<'a, I: Iterator<Item = &'a Rat>>(
    f: &mut fmt::Formatter<'_>,
    pts: I,
) -> fmt::Result {
    write!(f, "{{")?;
    for (i, p) in pts.enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{p}")?;
    }
    write!(f, "}}")
}

impl FromStr for RSet {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<RSet> {
        parse_rset(s)
    }
}

/// Parses the textual form. Atom order is free and duplicates merge; the
/// result is canonicalized like any other construction.
pub fn parse_rset(input: &str) -> Result<RSet> {
    let mut cur = Cursor { s: input, pos: 0 };
    let mut intervals: Vec<Interval> = Vec::new();
    let mut plus_pts: Vec<Rat> = Vec::new();
    let mut plus_gens: Vec<SeqGen> = Vec::new();
    let mut minus_pts: Vec<Rat> = Vec::new();
    let mut minus_gens: Vec<SeqGen> = Vec::new();
    loop {
        cur.skip_ws();
        if cur.done() {
            break;
        }
        let minus = cur.eat_word("minus");
        if minus {
            cur.skip_ws();
            if cur.done() {
                return Err(cur.err("expected a point block or generator after `minus`"));
            }
        }
        match cur.peek() {
            Some('(') | Some('[') => {
                if minus {
                    return Err(cur.err("only point blocks and generators may be carved out"));
                }
                intervals.push(cur.interval()?);
            }
            Some('{') => {
                let pts = cur.points()?;
                if minus {
                    minus_pts.extend(pts);
                } else {
                    plus_pts.extend(pts);
                }
            }
            _ if cur.starts_with("gen(") => {
                let g = cur.generator()?;
                if minus {
                    minus_gens.push(g);
                } else {
                    plus_gens.push(g);
                }
            }
            _ if !minus && cur.eat_word("empty") => {}
            _ => return Err(cur.err("expected an interval, point block, or generator")),
        }
    }
    RSet::new(intervals, plus_pts, plus_gens, minus_pts, minus_gens)
}

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn rest(&self) -> &'a str {
        &self.s[self.pos..]
    }

    fn done(&self) -> bool {
        self.pos >= self.s.len()
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.s.len() - trimmed.len();
    }

    fn starts_with(&self, w: &str) -> bool {
        self.rest().starts_with(w)
    }

    /// Consumes `w` only when it ends at a token boundary.
    fn eat_word(&mut self, w: &str) -> bool {
        if !self.starts_with(w) {
            return false;
        }
        let after = self.rest()[w.len()..].chars().next();
        if matches!(after, Some(c) if c.is_alphanumeric() || c == '_') {
            return false;
        }
        self.pos += w.len();
        true
    }

    fn err(&self, msg: &str) -> ExactError {
        ExactError::Parse {
            at: self.pos,
            msg: msg.to_string(),
        }
    }

    /// Consumes up to and including `close`, returning the inner slice.
    fn delimited(&mut self, close: char) -> Result<&'a str> {
        let start = self.pos;
        match self.rest().find(close) {
            Some(i) => {
                let inner = &self.s[start + 1..start + i];
                self.pos = start + i + close.len_utf8();
                Ok(inner)
            }
            None => Err(ExactError::Parse {
                at: start,
                msg: format!("unterminated atom, expected {close:?}"),
            }),
        }
    }

    fn rat(&self, text: &str) -> Result<Rat> {
        text.parse::<Rat>().map_err(|e| ExactError::Parse {
            at: self.pos,
            msg: e.to_string(),
        })
    }

    fn bound(&self, text: &str) -> Result<Ext> {
        match text.trim() {
            "-inf" => Ok(Ext::NegInf),
            "inf" | "+inf" => Ok(Ext::PosInf),
            t => Ok(Ext::Fin(self.rat(t)?)),
        }
    }

    fn interval(&mut self) -> Result<Interval> {
        let at = self.pos;
        let lo_closed = self.peek() == Some('[');
        // the closer doubles as the upper-end closedness marker
        let (inner, hi_closed) = match self.rest().find([')', ']']) {
            Some(i) => {
                let inner = &self.s[at + 1..at + i];
                let hi_closed = self.s.as_bytes()[at + i] == b']';
                self.pos = at + i + 1;
                (inner, hi_closed)
            }
            None => return Err(self.err("unterminated interval")),
        };
        let Some((lo_s, hi_s)) = inner.split_once(',') else {
            return Err(ExactError::Parse {
                at,
                msg: "interval needs two comma-separated bounds".to_string(),
            });
        };
        let lo = Endpoint {
            value: self.bound(lo_s)?,
            closed: lo_closed,
        };
        let hi = Endpoint {
            value: self.bound(hi_s)?,
            closed: hi_closed,
        };
        Interval::new(lo, hi)
    }

    fn points(&mut self) -> Result<Vec<Rat>> {
        let inner = self.delimited('}')?;
        if inner.trim().is_empty() {
            return Ok(Vec::new());
        }
        inner.split(',').map(|p| self.rat(p.trim())).collect()
    }

    fn generator(&mut self) -> Result<SeqGen> {
        let at = self.pos;
        self.pos += "gen".len();
        let inner = self.delimited(')')?;
        let parts: Vec<&str> = inner.split(';').collect();
        if parts.len() != 4 {
            return Err(ExactError::Parse {
                at,
                msg: "generator needs four fields gen(a;c;r;k0)".to_string(),
            });
        }
        let a = self.rat(parts[0].trim())?;
        let c = self.rat(parts[1].trim())?;
        let r = self.rat(parts[2].trim())?;
        let k0: u64 = parts[3].trim().parse().map_err(|_| ExactError::Parse {
            at,
            msg: format!("bad generator start index {:?}", parts[3].trim()),
        })?;
        SeqGen::new(a, c, r, k0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rt(text: &str) -> RSet {
        text.parse::<RSet>().unwrap()
    }

    #[test]
    fn prints_canonically() {
        assert_eq!(RSet::empty().to_string(), "empty");
        assert_eq!(RSet::all().to_string(), "(-inf,inf)");
        let s = rt("[0,2) {3,7/2} gen(4;1;1/2;0) minus {1} minus gen(1/2;-1/4;1/3;0)");
        assert_eq!(
            s.to_string(),
            "[0,2) {3,7/2} gen(4;1;1/2;0) minus {1} minus gen(1/2;-1/4;1/3;0)"
        );
    }

    #[test]
    fn parse_is_order_insensitive_and_canonicalizing() {
        let a = rt("{3} [0,1) gen(4;1;1/2;2)");
        let b = rt("gen(4;1/4;1/2;0) [0,1) {3}");
        assert_eq!(a, b);
        // a generator with its covered terms carved away re-canonicalizes
        let c = rt("(1/4,2) gen(0;1;1/2;0)");
        assert_eq!(c.to_string(), "[1/4,2) gen(0;1/8;1/2;0)");
    }

    #[test]
    fn round_trips() {
        for text in [
            "empty",
            "(-inf,0] [1,2) {5/2} gen(3;1;2/3;0)",
            "(0,1) minus gen(1;-1;1/2;1)",
            "{0}",
        ] {
            let s = rt(text);
            assert_eq!(rt(&s.to_string()), s);
        }
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in [
            "(1,0)",
            "[inf,2)",
            "gen(0;0;1/2;0)",
            "gen(0;1;3/2;0)",
            "gen(1;2;1/2)",
            "{1/0}",
            "minus",
            "minus (0,1)",
            "wat",
            "(0,1",
        ] {
            assert!(bad.parse::<RSet>().is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn error_positions_point_at_the_atom() {
        let e = "[0,1) wat".parse::<RSet>().unwrap_err();
        match e {
            ExactError::Parse { at, .. } => assert_eq!(at, 6),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
