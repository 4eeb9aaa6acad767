//! Infix and prefix readers for `Expr`.

use super::{Derivative, Expr, Func};
use crate::algebra::GaussianRational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
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
        } else if "+-*/^(),".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

struct Infix<'a> {
    toks: &'a [Tok],
    pos: usize,
}

impl Infix<'_> {
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

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "expected {c:?} at token {}",
                self.pos
            )))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = if self.eat('-') {
            -self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc * self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                if d.is_zero() {
                    return Err(Error::Parse("division by zero".into()));
                }
                acc = acc / d;
            } else if matches!(
                self.peek(),
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::Op('('))
            ) {
                acc = acc * self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            Ok(-self.unary()?)
        } else {
            self.power()
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        let paren = self.eat('(');
        let neg = self.eat('-');
        let n = match self.peek() {
            Some(Tok::Num(n)) => n.parse::<i64>().map_err(|e| Error::Parse(e.to_string()))?,
            _ => return Err(Error::Parse("expected integer exponent".into())),
        };
        self.pos += 1;
        if paren {
            self.expect(')')?;
        }
        Ok(if neg { -n } else { n })
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            let n = self.exponent()?;
            if n < 0 && base.is_zero() {
                return Err(Error::Parse("division by zero".into()));
            }
            Ok(base.pow(n))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n.parse()?))
            }
            Some(Tok::Ident(id)) => {
                self.pos += 1;
                if id == "I" {
                    return Ok(Expr::imag());
                }
                if let Some(f) = Func::from_name(&id) {
                    self.expect('(')?;
                    let a = self.expr()?;
                    self.expect(')')?;
                    return Ok(Expr::apply(f, a));
                }
                if self.eat('(') {
                    // unknown function of plain variables: u(x, t)
                    let mut args = Vec::new();
                    loop {
                        match self.peek().cloned() {
                            Some(Tok::Ident(a)) => {
                                self.pos += 1;
                                args.push(a);
                            }
                            t => return Err(Error::Parse(format!("bad function argument {t:?}"))),
                        }
                        if self.eat(')') {
                            break;
                        }
                        self.expect(',')?;
                    }
                    let orders = vec![0; args.len()];
                    return Ok(Expr::Fun(Derivative {
                        name: id,
                        args,
                        orders,
                    }));
                }
                Ok(Expr::Sym(id))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            t => Err(Error::Parse(format!("unexpected token {t:?}"))),
        }
    }
}

pub(super) fn parse_infix(s: &str) -> Result<Expr> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Infix {
        toks: &toks,
        pos: 0,
    };
    let e = p.expr()?;
    if p.pos != toks.len() {
        return Err(Error::Parse(format!("trailing input in {s:?}")));
    }
    Ok(e)
}

#[derive(Debug)]
enum Sx {
    Atom(String),
    List(Vec<Sx>),
}

fn read_sx(s: &str) -> Result<Sx> {
    let mut toks = Vec::new();
    let mut cur = String::new();
    for c in s.chars() {
        if c == '(' || c == ')' || c.is_whitespace() {
            if !cur.is_empty() {
                toks.push(std::mem::take(&mut cur));
            }
            if !c.is_whitespace() {
                toks.push(c.to_string());
            }
        } else {
            cur.push(c);
        }
    }
    if !cur.is_empty() {
        toks.push(cur);
    }
    fn go(toks: &[String], pos: &mut usize) -> Result<Sx> {
        let t = toks
            .get(*pos)
            .ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
        *pos += 1;
        match t.as_str() {
            "(" => {
                let mut items = Vec::new();
                loop {
                    match toks.get(*pos).map(|s| s.as_str()) {
                        Some(")") => {
                            *pos += 1;
                            return Ok(Sx::List(items));
                        }
                        Some(_) => items.push(go(toks, pos)?),
                        None => return Err(Error::Parse("unbalanced parenthesis".into())),
                    }
                }
            }
            ")" => Err(Error::Parse("unexpected ')'".into())),
            a => Ok(Sx::Atom(a.to_string())),
        }
    }
    let mut pos = 0;
    let out = go(&toks, &mut pos)?;
    if pos != toks.len() {
        return Err(Error::Parse("trailing input".into()));
    }
    Ok(out)
}

fn sx_to_expr(sx: &Sx) -> Result<Expr> {
    match sx {
        Sx::Atom(a) => {
            let first = a.chars().next().unwrap();
            if a == "I" || first.is_ascii_digit() || (first == '-' && a.len() > 1) {
                Ok(Expr::Num(a.parse::<GaussianRational>()?))
            } else {
                Ok(Expr::Sym(a.clone()))
            }
        }
        Sx::List(items) => {
            let head = match items.first() {
                Some(Sx::Atom(h)) => h.as_str(),
                _ => return Err(Error::Parse("list head must be an operator".into())),
            };
            let rest = &items[1..];
            let args = || rest.iter().map(sx_to_expr).collect::<Result<Vec<_>>>();
            match head {
                "+" => Ok(Expr::sum(args()?)),
                "*" => Ok(Expr::product(args()?)),
                "^" => {
                    let (b, n) = match rest {
                        [b, Sx::Atom(n)] => (b, n),
                        _ => return Err(Error::Parse("(^ base n) expected".into())),
                    };
                    let n: i64 = n
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent {n}")))?;
                    let b = sx_to_expr(b)?;
                    if n < 0 && b.is_zero() {
                        return Err(Error::Parse("division by zero".into()));
                    }
                    Ok(b.pow(n))
                }
                "D" => {
                    let (name, vars, orders) = match rest {
                        [Sx::Atom(name), Sx::List(vars), orders @ ..] => (name, vars, orders),
                        _ => return Err(Error::Parse("(D name (vars) orders...) expected".into())),
                    };
                    let args: Vec<String> = vars
                        .iter()
                        .map(|v| match v {
                            Sx::Atom(a) => Ok(a.clone()),
                            _ => Err(Error::Parse("bad derivative variable".into())),
                        })
                        .collect::<Result<_>>()?;
                    let orders: Vec<u32> = orders
                        .iter()
                        .map(|o| match o {
                            Sx::Atom(a) => a
                                .parse()
                                .map_err(|_| Error::Parse(format!("bad order {a}"))),
                            _ => Err(Error::Parse("bad derivative order".into())),
                        })
                        .collect::<Result<_>>()?;
                    if orders.len() != args.len() {
                        return Err(Error::Parse("derivative order count mismatch".into()));
                    }
                    Ok(Expr::Fun(Derivative {
                        name: name.clone(),
                        args,
                        orders,
                    }))
                }
                h => {
                    if let Some(f) = Func::from_name(h) {
                        match rest {
                            [a] => Ok(Expr::apply(f, sx_to_expr(a)?)),
                            _ => Err(Error::Parse(format!("{h} takes one argument"))),
                        }
                    } else {
                        let args: Vec<String> = rest
                            .iter()
                            .map(|v| match v {
                                Sx::Atom(a) => Ok(a.clone()),
                                _ => Err(Error::Parse(format!("unknown operator {h}"))),
                            })
                            .collect::<Result<_>>()?;
                        let orders = vec![0; args.len()];
                        Ok(Expr::Fun(Derivative {
                            name: h.to_string(),
                            args,
                            orders,
                        }))
                    }
                }
            }
        }
    }
}

pub(super) fn parse_prefix(s: &str) -> Result<Expr> {
    sx_to_expr(&read_sx(s)?)
}
