//! A small expression language for transcribed expansions.
//!
//! Grammar, with the usual precedence:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' exp)?
//! exp    := int | '-' int | '(' '-'? int ('/' '2')? ')'
//! atom   := int | name | 'chi' '[' int ',' int ']' | '(' expr ')'
//! ```
//!
//! Names are the frame variables (`y1 y2 y3 y q t1 t2 r x z1 z2 z3 w1 w2`).
//! Division expands the divisor as a power series, so it needs an order.

use crate::error::{Error, Result};
use crate::lie::chi_sl3;
use crate::series::{int, Grading, Monomial, Series, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Var(Monomial),
    Chi(u32, u32),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    /// Exponent stored doubled.
    Pow(Box<Expr>, i32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Name(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut n = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                n.push(d);
                chars.next();
            }
            out.push(Tok::Int(n.parse().map_err(|_| Error::Parse(format!("integer {n} too large")))?));
        } else if c.is_ascii_alphabetic() {
            let mut n = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric() || **d == '_') {
                n.push(d);
                chars.next();
            }
            out.push(Tok::Name(n));
        } else if "+-*/^()[],".contains(c) {
            out.push(Tok::Sym(c));
            chars.next();
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
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
            Err(Error::Parse(format!("expected {c:?} at token {}", self.pos)))
        }
    }

    fn int(&mut self) -> Result<i64> {
        match self.next() {
            Some(Tok::Int(n)) => Ok(n),
            t => Err(Error::Parse(format!("expected an integer, found {t:?}"))),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let twice = if self.eat('(') {
            let sign = if self.eat('-') { -1 } else { 1 };
            let n = self.int()?;
            let twice = if self.eat('/') {
                match self.int()? {
                    1 => 2 * n,
                    2 => n,
                    d => return Err(Error::Parse(format!("exponent denominator {d} is not 1 or 2"))),
                }
            } else {
                2 * n
            };
            self.expect(')')?;
            sign * twice
        } else {
            let sign = if self.eat('-') { -1 } else { 1 };
            sign * 2 * self.int()?
        };
        Ok(Expr::Pow(Box::new(base), twice as i32))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.next() {
            Some(Tok::Int(n)) => Ok(Expr::Int(n)),
            Some(Tok::Sym('(')) => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Name(n)) if n == "chi" => {
                self.expect('[')?;
                let a = self.int()?;
                self.expect(',')?;
                let b = self.int()?;
                self.expect(']')?;
                Ok(Expr::Chi(a as u32, b as u32))
            }
            Some(Tok::Name(n)) if n == "q" => Ok(Expr::Var(Monomial::q_int(1))),
            Some(Tok::Name(n)) => Ok(Expr::Var(n.parse::<Var>()?.monomial())),
            t => Err(Error::Parse(format!("unexpected token {t:?}"))),
        }
    }
}

impl std::str::FromStr for Expr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Expr> {
        let mut p = Parser { toks: tokenize(s)?, pos: 0 };
        let e = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(Error::Parse(format!("trailing input in {s:?}")));
        }
        Ok(e)
    }
}

/// Square root of `m^twice`, if the result is a lattice point.
fn monomial_half_pow(m: Monomial, twice: i32) -> Option<Monomial> {
    let c = m.pow(twice).coords();
    c.iter().all(|e| e % 2 == 0).then(|| Monomial::from_coords(c.map(|e| e / 2)))
}

impl Expr {
    /// Evaluate under `grading`, truncating at `order` (exact if `None`).
    pub fn eval(&self, grading: Grading, order: Option<i64>) -> Result<Series> {
        let exact = |s: Series| s.regrade(grading, None);
        let s = match self {
            Expr::Int(n) => exact(Series::term(Monomial::ONE, int(*n)))?,
            Expr::Var(m) => exact(Series::monomial(*m))?,
            Expr::Chi(a, b) => exact(chi_sl3(*a, *b))?,
            Expr::Neg(e) => -&e.eval(grading, order)?,
            Expr::Add(a, b) => &a.eval(grading, order)? + &b.eval(grading, order)?,
            Expr::Sub(a, b) => &a.eval(grading, order)? - &b.eval(grading, order)?,
            Expr::Mul(a, b) => &a.eval(grading, order)? * &b.eval(grading, order)?,
            Expr::Div(a, b) => {
                let den = b.eval(grading, order)?;
                let inv = match (den.iter().next(), den.len()) {
                    (Some((m, c)), 1) if den.is_exact() => exact(Series::term(m.inv(), c.recip()))?,
                    _ => {
                        let o = order.ok_or_else(|| Error::Parse("division by a non-monomial needs an order".into()))?;
                        den.truncate(o).reciprocal()?
                    }
                };
                &a.eval(grading, order)? * &inv
            }
            Expr::Pow(base, twice) => {
                let b = base.eval(grading, order)?;
                let single = match (b.iter().next(), b.len()) {
                    (Some((m, c)), 1) if b.is_exact() && c == &int(1) => Some(*m),
                    _ => None,
                };
                match single {
                    Some(m) => {
                        let p = monomial_half_pow(m, *twice)
                            .ok_or_else(|| Error::Parse(format!("({m})^({twice}/2) is not a lattice point")))?;
                        exact(Series::monomial(p))?
                    }
                    None if twice % 2 != 0 => return Err(Error::Parse("half-integer power of a non-monomial".into())),
                    None if *twice >= 0 => b.pow((*twice / 2) as u32),
                    None => {
                        let o = order.ok_or_else(|| Error::Parse("negative power needs an order".into()))?;
                        b.truncate(o).reciprocal()?.pow((-*twice / 2) as u32)
                    }
                }
            }
        };
        Ok(match order {
            Some(o) => s.truncate(o),
            None => s,
        })
    }
}

/// Parse and evaluate in one step.
pub fn evaluate(text: &str, grading: Grading, order: Option<i64>) -> Result<Series> {
    text.parse::<Expr>()?.eval(grading, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{EulerExpr, HalfInt};

    #[test]
    fn polynomial_in_characters() {
        let s = evaluate("1 - chi[0,1]*y + chi[1,0]*y^2", Grading::Q, None).unwrap();
        let y = Monomial::y();
        let expected = &(&Series::one() - &chi_sl3(0, 1).mul_monomial(y)) + &chi_sl3(1, 0).mul_monomial(y.pow(2));
        assert_eq!(s, expected);
    }

    #[test]
    fn half_integer_powers() {
        let s = evaluate("q^(3/2) * r^-1 - 2*q^(-1/2)", Grading::Q, None).unwrap();
        let r = Var::R.monomial();
        let expected = Series::from_ints([
            (Monomial::q(HalfInt::from_twice(3)) * r.inv(), 1),
            (Monomial::q(HalfInt::from_twice(-1)), -2),
        ]);
        assert_eq!(s, expected);
        assert!(evaluate("y^(1/2)", Grading::Q, None).is_err());
    }

    #[test]
    fn division_expands_geometric_series() {
        let s = evaluate("q/(1-q)^2", Grading::Q, Some(10)).unwrap();
        let e = EulerExpr::new(Series::monomial(Monomial::q_int(1)), vec![Monomial::q_int(1); 2]);
        assert_eq!(s, e.expand(HalfInt::int(5)).unwrap());
        assert!(evaluate("1/(1-q)", Grading::Q, None).is_err());
        assert_eq!(evaluate("3/6", Grading::Q, None).unwrap(), Series::term(Monomial::ONE, crate::series::ratio(1, 2)));
    }

    #[test]
    fn parse_errors() {
        for bad in ["1 +", "chi[1]", "y^(1/3)", "foo", "(1", "1 $ 2"] {
            assert!(matches!(bad.parse::<Expr>(), Err(Error::Parse(_))), "{bad}");
        }
    }
}
