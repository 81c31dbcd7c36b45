//! Text forms: ring tags and polynomial expressions.
//!
//! Ring tags: `Z`, `Q`, `Z/9`, `F5`, `Z(3)` (ℤ localised at 3), polynomial
//! rings `F5[x]`, `Q[x,y]`, monogenic algebras `F5[x]/(x^2-2)` and finite
//! products of those joined by a top-level `*`.
//!
//! Expressions: integers, `a/b` literals, variables, `+ - * ^` and
//! parentheses. Elements of a product algebra are written factor by factor,
//! separated by `;`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::algebra::FiniteFreeAlgebra;
use super::mpoly::MPoly;
use super::ring::{Elem, Ring};
use crate::error::{Error, Result};

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Splits at `sep` characters that sit outside all brackets.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut depth = 0i32;
    let mut out = Vec::new();
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Parses a ring tag.
pub fn parse_ring(tag: &str) -> Result<Ring> {
    let tag = tag.trim();
    if tag.is_empty() {
        return Err(perr("empty ring tag"));
    }
    let parts = split_top(tag, '*');
    if parts.len() > 1 {
        let mut algs = Vec::new();
        for p in parts {
            match parse_ring(p)? {
                Ring::Alg(a) => algs.push(a),
                other => {
                    let one = FiniteFreeAlgebra::monogenic(&other, "x", &[other.from_i64(-1), other.one()])?;
                    algs.push(Arc::new(one));
                }
            }
        }
        return Ok(Ring::Alg(Arc::new(FiniteFreeAlgebra::product(&algs)?)));
    }
    // Monogenic algebra BASE[x]/(f)
    if let Some(idx) = find_quotient(tag) {
        let (head, tail) = tag.split_at(idx);
        let tail = tail[1..].trim();
        let inner = tail
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| perr(format!("expected (f) after '/' in {tag}")))?;
        let pr = parse_ring(head)?;
        let (base, var) = match &pr {
            Ring::Poly(p) if p.vars.len() == 1 => (p.base.clone(), p.vars[0].clone()),
            _ => return Err(perr(format!("quotient needs a univariate polynomial ring, got {head}"))),
        };
        let f = parse_elem(&pr, inner)?;
        let coeffs = univariate_coeffs(&pr, &f);
        let lead = coeffs.last().cloned().ok_or_else(|| perr("zero modulus"))?;
        if !base.is_one(&lead) {
            return Err(perr(format!("modulus {inner} must be monic")));
        }
        let alg = FiniteFreeAlgebra::monogenic(&base, &var, &coeffs)?;
        return Ok(Ring::Alg(Arc::new(alg)));
    }
    if let Some(open) = tag.find('[') {
        let close = tag.rfind(']').ok_or_else(|| perr(format!("unbalanced brackets in {tag}")))?;
        if close != tag.len() - 1 {
            return Err(perr(format!("trailing text in {tag}")));
        }
        let base = parse_ring(&tag[..open])?;
        if matches!(base, Ring::Poly(_)) {
            return Err(perr("nested polynomial rings are not supported; list all variables at once"));
        }
        let vars: Vec<&str> = tag[open + 1..close].split(',').map(str::trim).collect();
        if vars.iter().any(|v| !is_ident(v)) {
            return Err(perr(format!("bad variable list in {tag}")));
        }
        return Ok(Ring::poly(base, &vars));
    }
    match tag {
        "Z" => return Ok(Ring::Z),
        "Q" => return Ok(Ring::Q),
        _ => {}
    }
    if let Some(m) = tag.strip_prefix("Z/") {
        let m: u64 = m.parse().map_err(|_| perr(format!("bad modulus in {tag}")))?;
        return Ring::zmod(m).map_err(|e| perr(e.to_string()));
    }
    if let Some(inner) = tag.strip_prefix("Z(").or_else(|| tag.strip_prefix("Z_(")) {
        let p: u64 = inner
            .strip_suffix(')')
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| perr(format!("bad localisation {tag}")))?;
        return Ring::zlocal(p).map_err(|e| perr(e.to_string()));
    }
    if let Some(p) = tag.strip_prefix('F') {
        let p: u64 = p.parse().map_err(|_| perr(format!("bad field {tag}")))?;
        return Ring::fp(p).map_err(|e| perr(e.to_string()));
    }
    Err(perr(format!("unknown ring tag {tag}")))
}

fn find_quotient(tag: &str) -> Option<usize> {
    // a '/' directly after a closing ']' at depth zero
    let mut depth = 0i32;
    let bytes = tag.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' | b'[' => depth += 1,
            b')' | b']' => depth -= 1,
            b'/' if depth == 0 && i > 0 && bytes[i - 1] == b']' => return Some(i),
            _ => {}
        }
    }
    None
}

fn is_ident(s: &str) -> bool {
    let mut ch = s.chars();
    matches!(ch.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && ch.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Coefficients (lowest first) of a polynomial in a univariate ring.
pub(crate) fn univariate_coeffs(ring: &Ring, f: &Elem) -> Vec<Elem> {
    let pr = ring.poly_ring();
    f.as_poly().coeffs_in(&pr.base, 0).iter().map(|c| c.constant_term(&pr.base)).collect()
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let txt: String = cs[st..i].iter().collect();
            out.push(Tok::Num(txt.parse().map_err(|_| perr(format!("bad number {txt}")))?));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*^()/".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else if c == '\u{2212}' {
            out.push(Tok::Op('-'));
            i += 1;
        } else {
            return Err(perr(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    ring: &'a Ring,
    var: &'a dyn Fn(&str) -> Option<Elem>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Elem> {
        let mut acc = if self.eat('-') {
            let t = self.term()?;
            self.ring.neg(&t)
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = self.ring.add(&acc, &t);
            } else if self.eat('-') {
                let t = self.term()?;
                acc = self.ring.sub(&acc, &t);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Elem> {
        let mut acc = self.power()?;
        while self.eat('*') {
            let f = self.power()?;
            acc = self.ring.mul(&acc, &f);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Elem> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u64 = n.try_into().map_err(|_| perr("exponent too large"))?;
                    Ok(self.ring.pow(&base, e))
                }
                _ => Err(perr("expected an integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Elem> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                if self.eat('/') {
                    match self.toks.get(self.pos).cloned() {
                        Some(Tok::Num(d)) => {
                            self.pos += 1;
                            if d == BigInt::from(0) {
                                return Err(perr("zero denominator"));
                            }
                            self.ring
                                .from_rational(&BigRational::new(n, d))
                                .map_err(|e| perr(e.to_string()))
                        }
                        _ => Err(perr("expected a denominator")),
                    }
                } else {
                    Ok(self.ring.from_bigint(&n))
                }
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                (self.var)(&name).ok_or_else(|| perr(format!("unknown variable {name} in {}", self.ring)))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(perr("missing ')'"));
                }
                Ok(e)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                let e = self.power()?;
                Ok(self.ring.neg(&e))
            }
            other => Err(perr(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses an expression with a custom variable resolver.
pub fn parse_with(ring: &Ring, s: &str, var: &dyn Fn(&str) -> Option<Elem>) -> Result<Elem> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(perr("empty expression"));
    }
    let mut p = Parser { toks, pos: 0, ring, var };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(perr(format!("trailing input in {s:?}")));
    }
    Ok(e)
}

/// Parses an element of `ring`.
pub fn parse_elem(ring: &Ring, s: &str) -> Result<Elem> {
    match ring {
        Ring::Poly(pr) => {
            let n = pr.vars.len();
            let lookup = |name: &str| {
                pr.vars.iter().position(|v| v == name).map(|i| Elem::Poly(MPoly::var(&pr.base, i, n)))
            };
            parse_with(ring, s, &lookup)
        }
        Ring::Alg(al) => al.parse_elem(s),
        _ => parse_with(ring, s, &|_| None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_tags() {
        for t in ["Z", "Q", "Z/9", "F5", "F5[x]", "Q[x,y]", "Z(3)"] {
            assert_eq!(parse_ring(t).unwrap().to_string(), t);
        }
        assert!(parse_ring("F6").is_err());
        assert!(parse_ring("banana").is_err());
        let a = parse_ring("F5[x]/(x^2-2)").unwrap();
        assert_eq!(a.algebra().rank, 2);
        let b = parse_ring("F5[x]/(x^2-2)*F5[x]/(x-1)").unwrap();
        assert_eq!(b.algebra().rank, 3);
    }

    #[test]
    fn round_trip() {
        let r = parse_ring("Z[x,y]").unwrap();
        for s in ["3*x^2*y - 1", "x + y", "-x^3 + 2*x*y - 7", "0"] {
            let e = r.parse_elem(s).unwrap();
            assert_eq!(r.fmt_elem(&e), s);
        }
        let q = parse_ring("Q[x]").unwrap();
        let e = q.parse_elem("3/4*x^2 - 1/2").unwrap();
        assert_eq!(q.fmt_elem(&e), "3/4*x^2 - 1/2");
        let f = parse_ring("F7[x]").unwrap();
        assert_eq!(f.fmt_elem(&f.parse_elem("(x-1)^2").unwrap()), "x^2 + 5*x + 1");
    }
}
