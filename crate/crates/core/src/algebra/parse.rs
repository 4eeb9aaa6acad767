//! Infix polynomial parser.
//!
//! Accepts `+ - * / ^`, parentheses, integer literals, identifiers and the
//! imaginary unit `I`. Juxtaposition multiplies (`A B^2 k^5`), so strings in
//! the usual typeset style parse directly. Division is only by constants.

use std::str::FromStr;

use num_traits::Zero;

use super::gaussian::GaussianRational;
use super::poly::{MultiPoly, VarSet};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
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
            out.push(Tok::Num(cs[st..i].iter().collect()));
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    vars: VarSet,
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

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = if self.eat('-') {
            -&self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.power()?;
            } else if self.eat('/') {
                let d = self.power()?;
                let c = d
                    .constant_value()
                    .filter(|c| !c.is_zero())
                    .ok_or_else(|| Error::Parse("division by a non-constant or zero".into()))?;
                acc = acc.scale(&c.inv()?);
            } else if matches!(
                self.peek(),
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::Op('('))
            ) {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let e = match self.peek() {
                Some(Tok::Num(n)) => n.parse::<i64>().map_err(|e| Error::Parse(e.to_string()))?,
                _ => return Err(Error::Parse("expected integer exponent".into())),
            };
            self.pos += 1;
            base.pow(if neg { -e } else { e })
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let c: GaussianRational = n.parse()?;
                Ok(MultiPoly::constant(&self.vars, c))
            }
            Some(Tok::Ident(id)) => {
                self.pos += 1;
                if id == "I" {
                    return Ok(MultiPoly::constant(&self.vars, GaussianRational::i()));
                }
                if !self.vars.contains(&id) {
                    self.vars = self.vars.with(&id);
                }
                MultiPoly::var(&self.vars, &id)
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("unbalanced parenthesis".into()));
                }
                Ok(e)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-&self.atom()?)
            }
            t => Err(Error::Parse(format!("unexpected token {t:?}"))),
        }
    }
}

/// Parse over a registry that is extended with any new names in order of appearance.
pub fn parse_poly(s: &str, vars: &VarSet) -> Result<MultiPoly> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        vars: vars.clone(),
    };
    let e = p.expr()?;
    if p.pos != toks.len() {
        return Err(Error::Parse(format!("trailing input in {s:?}")));
    }
    e.with_vars(&p.vars)
}

impl FromStr for MultiPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_poly(s, &VarSet::empty())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn typeset_style_with_juxtaposition() {
        let p: MultiPoly = "-A k^9-42 A B k^7+A c k^2".parse().unwrap();
        let q: MultiPoly = "-A*k^9 - 42*A*B*k^7 + A*c*k^2".parse().unwrap();
        assert_eq!(p, q);
        assert_eq!(p.vars().names(), ["A", "k", "B", "c"]);
    }

    #[test]
    fn rational_and_imaginary_constants() {
        let p: MultiPoly = "x/2 - 3/4 + I*y".parse().unwrap();
        assert_eq!(p.to_string(), "1/2*x + I*y - 3/4");
        assert!("x/y".parse::<MultiPoly>().is_err());
        assert!("x +".parse::<MultiPoly>().is_err());
        assert!("(x".parse::<MultiPoly>().is_err());
    }
}
