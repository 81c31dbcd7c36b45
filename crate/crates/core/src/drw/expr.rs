//! Text syntax for de Rham–Witt expressions.
//!
//! ```text
//! sum     := ['-'] product (('+' | '-') product)*
//! product := factor ('*' factor)*
//! factor  := INT | '(' sum ')' | '[' f ']' | 'V'['^'j] ('[' f ']' | '(' sum ')')
//!          | 'd' ('[' f ']' | 'V'['^'j] '[' f ']' | '(' sum ')')
//!          | 'F'['^'e] '(' sum ')' | 'R'['^'e] '(' sum ')'
//! ```
//!
//! `f` is a polynomial; any identifier in it names the variable of the ring.
//! `[f]` is `λ[f]`. Inside `F^e(…)` the argument is evaluated with `e` extra
//! levels so that `F` sees the terms it lowers into range; `R` is the identity
//! on the pro-system and only the final projection truncates.

use super::presentation::{lambda_teich, DrwRing};
use super::word::DRWExpression;
use crate::error::{Error, Result};
use crate::exact::parse::parse_with;
use crate::exact::{Elem, MPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Int(i64),
    Teich(String),
    F(u32, Box<Node>),
    V(u32, Box<Node>),
    D(Box<Node>),
    R(u32, Box<Node>),
    Sum(Vec<(bool, Node)>),
    Product(Vec<Node>),
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(perr(format!("expected '{}' at offset {}", c as char, self.pos)))
        }
    }

    fn int(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().map_err(|_| perr(format!("expected an integer at offset {start}")))
    }

    fn power(&mut self) -> Result<u32> {
        if self.eat(b'^') {
            u32::try_from(self.int()?).map_err(|_| perr("exponent too large"))
        } else {
            Ok(1)
        }
    }

    fn bracket(&mut self) -> Result<String> {
        self.expect(b'[')?;
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos] != b']' {
            self.pos += 1;
        }
        if self.pos == self.s.len() {
            return Err(perr("unclosed '['"));
        }
        let inner = std::str::from_utf8(&self.s[start..self.pos]).unwrap().trim().to_string();
        self.pos += 1;
        if inner.is_empty() {
            return Err(perr("empty brackets"));
        }
        Ok(inner)
    }

    fn paren(&mut self) -> Result<Node> {
        self.expect(b'(')?;
        let e = self.sum()?;
        self.expect(b')')?;
        Ok(e)
    }

    fn sum(&mut self) -> Result<Node> {
        let mut terms = vec![];
        let neg = self.eat(b'-');
        terms.push((neg, self.product()?));
        loop {
            if self.eat(b'+') {
                terms.push((false, self.product()?));
            } else if self.eat(b'-') {
                terms.push((true, self.product()?));
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 && !terms[0].0 { terms.pop().unwrap().1 } else { Node::Sum(terms) })
    }

    fn product(&mut self) -> Result<Node> {
        let mut fs = vec![self.factor()?];
        while self.eat(b'*') {
            fs.push(self.factor()?);
        }
        Ok(if fs.len() == 1 { fs.pop().unwrap() } else { Node::Product(fs) })
    }

    fn factor(&mut self) -> Result<Node> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(Node::Int(i64::try_from(self.int()?).map_err(|_| perr("integer too large"))?)),
            Some(b'(') => self.paren(),
            Some(b'[') => Ok(Node::Teich(self.bracket()?)),
            Some(b'V') => {
                self.pos += 1;
                let j = self.power()?;
                let inner = if self.peek() == Some(b'[') { Node::Teich(self.bracket()?) } else { self.paren()? };
                Ok(Node::V(j, Box::new(inner)))
            }
            Some(b'd') => {
                self.pos += 1;
                let inner = match self.peek() {
                    Some(b'[') => Node::Teich(self.bracket()?),
                    Some(b'V') => {
                        self.pos += 1;
                        let j = self.power()?;
                        Node::V(j, Box::new(Node::Teich(self.bracket()?)))
                    }
                    _ => self.paren()?,
                };
                Ok(Node::D(Box::new(inner)))
            }
            Some(b'F') => {
                self.pos += 1;
                let e = self.power()?;
                Ok(Node::F(e, Box::new(self.paren()?)))
            }
            Some(b'R') => {
                self.pos += 1;
                let e = self.power()?;
                Ok(Node::R(e, Box::new(self.paren()?)))
            }
            Some(c) => Err(perr(format!("unexpected '{}' at offset {}", c as char, self.pos))),
            None => Err(perr("unexpected end of expression")),
        }
    }
}

pub fn parse_expression(s: &str) -> Result<Node> {
    let mut p = Parser { s: s.as_bytes(), pos: 0 };
    let e = p.sum()?;
    if p.peek().is_some() {
        return Err(perr(format!("trailing input at offset {}", p.pos)));
    }
    Ok(e)
}

fn ring_element(ring: &DrwRing, s: &str) -> Result<Elem> {
    let r = ring.ring();
    let f = crate::exact::Ring::Fp(ring.p);
    let resolve = |_: &str| ring.has_var().then(|| Elem::Poly(MPoly::var(&f, 0, 1)));
    parse_with(&r, s, &resolve)
}

fn eval(ring: &DrwRing, n: u32, node: &Node, level: u32) -> Result<DRWExpression> {
    let p = ring.p;
    Ok(match node {
        Node::Int(k) => DRWExpression::scalar(p, n, *k),
        Node::Teich(s) => lambda_teich(ring, &ring_element(ring, s)?, n, level)?,
        Node::F(e, x) => {
            let mut v = eval(ring, n, x, level + e)?;
            for _ in 0..*e {
                v = v.frobenius();
            }
            v
        }
        Node::V(j, x) => {
            let mut v = eval(ring, n, x, level.saturating_sub(*j).max(1))?;
            for _ in 0..*j {
                v = v.verschiebung();
            }
            v
        }
        Node::D(x) => eval(ring, n, x, level)?.d(),
        Node::R(_, x) => eval(ring, n, x, level)?,
        Node::Sum(ts) => {
            let mut acc = DRWExpression::zero(p, n);
            for (neg, t) in ts {
                let v = eval(ring, n, t, level)?;
                acc = if *neg { acc.sub(&v) } else { acc.add(&v) };
            }
            acc
        }
        Node::Product(fs) => {
            let mut acc = DRWExpression::scalar(p, n, 1);
            for f in fs {
                acc = acc.mul(&eval(ring, n, f, level)?);
            }
            acc
        }
    })
}

/// Parses and evaluates `s` in `WₙΩ_A`.
pub fn evaluate(ring: &DrwRing, n: u32, s: &str) -> Result<DRWExpression> {
    Ok(eval(ring, n, &parse_expression(s)?, n)?.project())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drw::word::{Factor, WittWord};

    fn f3t() -> DrwRing {
        DrwRing::parse("F3[t]").unwrap()
    }

    #[test]
    fn parses_operators() {
        let e = parse_expression("F^2(d[t^2]) - 2*[t^5]*dV[t]").unwrap();
        let Node::Sum(ts) = e else { panic!() };
        assert_eq!(ts.len(), 2);
        assert!(matches!(ts[0].1, Node::F(2, _)));
        assert!(parse_expression("[t").is_err());
        assert!(parse_expression("F[t]").is_err());
    }

    #[test]
    fn frobenius_of_d() {
        let r = f3t();
        let a = evaluate(&r, 2, "F(d[t^2])").unwrap();
        let b = evaluate(&r, 2, "[t^4]*d[t^2]").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn fv_is_p_with_headroom() {
        let r = f3t();
        // F(V^2[t]) at level 2 only survives because the argument is evaluated at level 3.
        let a = evaluate(&r, 2, "F(V^2[t])").unwrap();
        assert_eq!(a, DRWExpression::word(3, 2, WittWord::head(Factor { j: 1, k: 1 }), 3));
    }

    #[test]
    fn constants_and_other_variable_names() {
        let r = DrwRing::parse("F5[x]").unwrap();
        let a = evaluate(&r, 1, "[2*t]").unwrap();
        assert_eq!(a, DRWExpression::word(5, 1, WittWord::head(Factor { j: 0, k: 1 }), 2));
        assert!(evaluate(&DrwRing::parse("F5").unwrap(), 1, "[t]").is_err());
    }
}
