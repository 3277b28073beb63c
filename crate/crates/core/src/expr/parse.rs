//! Concrete syntax.
//!
//! Numbers are integer, decimal or fraction literals, all read exactly
//! (decimal literals are exact rationals, so `0.514` is `257/500`).
//! Operators `+ - * / ^` have the usual precedence with a tighter-binding
//! unary minus; `^` takes an integer literal exponent. A negative exponent
//! is accepted only over a constant base and folds away exactly, which is
//! how targets like `2^-14` stay within the grammar.

use crate::error::Error;
use crate::expr::ast::Expr;
use crate::interval::{Interval, Rel};
use crate::prover::Proposition;
use crate::rational::Rational;

use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
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
    Comma,
    Rel(Rel),
    Eof,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn next(&mut self) -> Result<(Tok, usize), Error> {
        self.skip_ws();
        let start = self.pos;
        if self.pos >= self.src.len() {
            return Ok((Tok::Eof, start));
        }
        let c = self.src[self.pos];
        let tok = match c {
            b'+' => {
                self.pos += 1;
                Tok::Plus
            }
            b'-' => {
                self.pos += 1;
                Tok::Minus
            }
            b'*' => {
                self.pos += 1;
                Tok::Star
            }
            b'/' => {
                self.pos += 1;
                Tok::Slash
            }
            b'^' => {
                self.pos += 1;
                Tok::Caret
            }
            b'(' => {
                self.pos += 1;
                Tok::LParen
            }
            b')' => {
                self.pos += 1;
                Tok::RParen
            }
            b'[' => {
                self.pos += 1;
                Tok::LBracket
            }
            b']' => {
                self.pos += 1;
                Tok::RBracket
            }
            b',' => {
                self.pos += 1;
                Tok::Comma
            }
            b'<' | b'>' => {
                self.pos += 1;
                let strict = self.pos >= self.src.len() || self.src[self.pos] != b'=';
                if !strict {
                    self.pos += 1;
                }
                Tok::Rel(match (c, strict) {
                    (b'<', true) => Rel::Lt,
                    (b'<', false) => Rel::Le,
                    (b'>', true) => Rel::Gt,
                    (b'>', false) => Rel::Ge,
                    _ => unreachable!(),
                })
            }
            b'0'..=b'9' | b'.' => {
                let mut end = self.pos;
                let mut seen_dot = false;
                while end < self.src.len()
                    && (self.src[end].is_ascii_digit() || (self.src[end] == b'.' && !seen_dot))
                {
                    if self.src[end] == b'.' {
                        seen_dot = true;
                    }
                    end += 1;
                }
                let text = std::str::from_utf8(&self.src[self.pos..end]).expect("ascii");
                let q = decimal_literal(text)
                    .ok_or_else(|| Error::parse(start, format!("invalid number `{text}`")))?;
                self.pos = end;
                Tok::Num(q)
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let mut end = self.pos;
                while end < self.src.len()
                    && (self.src[end].is_ascii_alphanumeric() || self.src[end] == b'_')
                {
                    end += 1;
                }
                let text = std::str::from_utf8(&self.src[self.pos..end]).expect("ascii");
                self.pos = end;
                Tok::Ident(text.to_string())
            }
            other => {
                return Err(Error::parse(
                    start,
                    format!("unexpected character `{}`", other as char),
                ))
            }
        };
        Ok((tok, start))
    }
}

/// Parses an integer or decimal literal into an exact rational.
fn decimal_literal(text: &str) -> Option<Rational> {
    match text.split_once('.') {
        None => {
            let n: BigInt = text.parse().ok()?;
            Some(Rational::from_int(n))
        }
        Some((int, frac)) => {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            let int: BigInt = if int.is_empty() { BigInt::from(0) } else { int.parse().ok()? };
            let frac_num: BigInt = frac.parse().ok()?;
            let scale = BigInt::from(10).pow(frac.len() as u32);
            let q = Rational::new(&int * &scale + frac_num, scale).expect("positive scale");
            Some(q)
        }
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    idx: usize,
    src_len: usize,
    _marker: std::marker::PhantomData<&'a ()>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, Error> {
        let mut lexer = Lexer::new(src);
        let mut toks = Vec::new();
        loop {
            let t = lexer.next()?;
            let end = t.0 == Tok::Eof;
            toks.push(t);
            if end {
                break;
            }
        }
        Ok(Parser {
            toks,
            idx: 0,
            src_len: src.len(),
            _marker: std::marker::PhantomData,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.idx].0
    }

    fn pos(&self) -> usize {
        self.toks[self.idx].1.min(self.src_len)
    }

    fn advance(&mut self) -> Tok {
        let t = self.toks[self.idx].0.clone();
        if self.idx + 1 < self.toks.len() {
            self.idx += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), Error> {
        if self.peek() == &tok {
            self.advance();
            Ok(())
        } else {
            Err(Error::parse(self.pos(), format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Expr, Error> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.advance();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.advance();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, Error> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.advance();
                    acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    self.advance();
                    let rhs = self.unary()?;
                    // fold literal fractions like 11184811/33554432
                    acc = match (acc, rhs) {
                        (Expr::Const(a), Expr::Const(b)) if !b.is_zero() => {
                            Expr::Const(a.checked_div(&b).expect("nonzero"))
                        }
                        (a, b) => Expr::Div(Box::new(a), Box::new(b)),
                    };
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, Error> {
        if self.peek() == &Tok::Minus {
            self.advance();
            let inner = self.unary()?;
            return Ok(match inner {
                Expr::Const(q) => Expr::Const(-q),
                other => Expr::Neg(Box::new(other)),
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, Error> {
        let mut base = self.atom()?;
        while self.peek() == &Tok::Caret {
            self.advance();
            base = self.apply_exponent(base)?;
        }
        Ok(base)
    }

    fn apply_exponent(&mut self, base: Expr) -> Result<Expr, Error> {
        let pos = self.pos();
        let negative = if self.peek() == &Tok::Minus {
            self.advance();
            true
        } else {
            false
        };
        let k = match self.advance() {
            Tok::Num(q) if q.is_integer() && !q.is_negative() => {
                u32::try_from(q.numer().clone())
                    .ok()
                    .filter(|k| *k <= 1_000_000)
                    .ok_or_else(|| Error::parse(pos, "exponent too large"))?
            }
            _ => {
                return Err(Error::parse(
                    pos,
                    "exponent must be an integer literal",
                ))
            }
        };
        if negative {
            // only constant bases may take negative exponents; the result
            // folds to an exact rational
            let q = fold_constant(&base).map_err(|_| {
                Error::parse(pos, "negative exponent requires a constant base")
            })?;
            if q.is_zero() {
                return Err(Error::parse(pos, "negative exponent of zero"));
            }
            let folded = q.pow_nat(k).recip().expect("nonzero");
            Ok(Expr::Const(folded))
        } else {
            Ok(match base {
                Expr::Const(q) => Expr::Const(q.pow_nat(k)),
                other => Expr::PowNat(Box::new(other), k),
            })
        }
    }

    fn atom(&mut self) -> Result<Expr, Error> {
        let pos = self.pos();
        match self.advance() {
            Tok::Num(q) => Ok(Expr::Const(q)),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "closing `)`")?;
                Ok(inner)
            }
            Tok::Ident(name) => match name.as_str() {
                "pi" => Ok(Expr::Pi),
                "sqrt" | "sin" | "cos" | "tan" | "exp" | "ln" | "atan" | "abs" => {
                    self.expect(Tok::LParen, &format!("`(` after `{name}`"))?;
                    let arg = Box::new(self.expr()?);
                    self.expect(Tok::RParen, "closing `)`")?;
                    Ok(match name.as_str() {
                        "sqrt" => Expr::Sqrt(arg),
                        "sin" => Expr::Sin(arg),
                        "cos" => Expr::Cos(arg),
                        "tan" => Expr::Tan(arg),
                        "exp" => Expr::Exp(arg),
                        "ln" => Expr::Ln(arg),
                        "atan" => Expr::Atan(arg),
                        "abs" => Expr::Abs(arg),
                        _ => unreachable!(),
                    })
                }
                _ => {
                    if self.peek() == &Tok::LParen {
                        return Err(Error::parse(pos, format!("unknown function `{name}`")));
                    }
                    Ok(Expr::Var(name))
                }
            },
            Tok::Eof => Err(Error::parse(pos, "unexpected end of input")),
            other => Err(Error::parse(pos, format!("unexpected token {other:?}"))),
        }
    }

    fn finish(&mut self) -> Result<(), Error> {
        if self.peek() == &Tok::Eof {
            Ok(())
        } else {
            Err(Error::parse(self.pos(), "trailing input"))
        }
    }
}

/// Parses an arithmetic expression.
pub fn parse(text: &str) -> Result<Expr, Error> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// Evaluates an expression made of constants only, exactly. Fails on
/// variables, `pi`, elementary functions, and division by zero.
pub fn fold_constant(e: &Expr) -> Result<Rational, Error> {
    let non_constant =
        || Error::parse(0, "expected a constant expression".to_string());
    match e {
        Expr::Const(q) => Ok(q.clone()),
        Expr::Add(a, b) => Ok(fold_constant(a)? + fold_constant(b)?),
        Expr::Sub(a, b) => Ok(fold_constant(a)? - fold_constant(b)?),
        Expr::Mul(a, b) => Ok(fold_constant(a)? * fold_constant(b)?),
        Expr::Div(a, b) => fold_constant(a)?.checked_div(&fold_constant(b)?),
        Expr::Neg(a) => Ok(-fold_constant(a)?),
        Expr::Abs(a) => Ok(fold_constant(a)?.abs()),
        Expr::PowNat(a, k) => Ok(fold_constant(a)?.pow_nat(*k)),
        _ => Err(non_constant()),
    }
}

/// Parses an interval literal `[a, b]` whose endpoints are constant
/// expressions, folded exactly.
pub fn parse_interval(text: &str) -> Result<Interval, Error> {
    let mut p = Parser::new(text)?;
    let iv = parse_interval_tokens(&mut p)?;
    p.finish()?;
    Ok(iv)
}

fn parse_interval_tokens(p: &mut Parser) -> Result<Interval, Error> {
    p.expect(Tok::LBracket, "`[`")?;
    let pos = p.pos();
    let lb = fold_constant(&p.expr()?)
        .map_err(|_| Error::parse(pos, "interval endpoint must be constant"))?;
    p.expect(Tok::Comma, "`,` between endpoints")?;
    let pos = p.pos();
    let ub = fold_constant(&p.expr()?)
        .map_err(|_| Error::parse(pos, "interval endpoint must be constant"))?;
    p.expect(Tok::RBracket, "closing `]`")?;
    if lb > ub {
        return Err(Error::parse(pos, "interval endpoints out of order"));
    }
    Ok(Interval::new(lb, ub))
}

/// Parses a numerical proposition: either `e1 REL e2` with `REL` one of
/// `< <= > >=`, or `e in [a, b]` with constant endpoints.
pub fn parse_proposition(text: &str) -> Result<Proposition, Error> {
    let mut p = Parser::new(text)?;
    let lhs = p.expr()?;
    let pos = p.pos();
    let prop = match p.advance() {
        Tok::Rel(rel) => {
            let rhs = p.expr()?;
            Proposition::Relational {
                lhs,
                rel,
                rhs,
            }
        }
        Tok::Ident(kw) if kw == "in" => {
            let target = parse_interval_tokens(&mut p)?;
            Proposition::Membership { expr: lhs, target }
        }
        _ => {
            return Err(Error::parse(
                pos,
                "expected a comparison operator or `in [a, b]`",
            ))
        }
    };
    p.finish()?;
    Ok(prop)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn parses_basic_shapes() {
        let e = parse("2*x - x").unwrap();
        assert_eq!(
            e,
            Expr::Sub(
                Box::new(Expr::Mul(
                    Box::new(Expr::constant(2)),
                    Box::new(Expr::var("x"))
                )),
                Box::new(Expr::var("x"))
            )
        );
        assert_eq!(parse("sin(pi/2)").unwrap().to_string(), "sin(pi/2)");
    }

    #[test]
    fn decimal_and_fraction_literals_are_exact() {
        assert_eq!(parse("9.8").unwrap(), Expr::Const(rat(49, 5)));
        assert_eq!(parse("0.514").unwrap(), Expr::Const(rat(257, 500)));
        assert_eq!(parse("11184811/33554432").unwrap(), Expr::Const(rat(11184811, 33554432)));
        assert_eq!(parse("-1/2").unwrap(), Expr::Const(rat(-1, 2)));
    }

    #[test]
    fn listing_polynomial_round_trips() {
        let text = "x - 11184811/33554432*x^3 - 13421773/67108864*x^5";
        let e = parse(text).unwrap();
        let expected = Expr::Sub(
            Box::new(Expr::Sub(
                Box::new(Expr::var("x")),
                Box::new(Expr::Mul(
                    Box::new(Expr::Const(rat(11184811, 33554432))),
                    Box::new(Expr::PowNat(Box::new(Expr::var("x")), 3)),
                )),
            )),
            Box::new(Expr::Mul(
                Box::new(Expr::Const(rat(13421773, 67108864))),
                Box::new(Expr::PowNat(Box::new(Expr::var("x")), 5)),
            )),
        );
        assert_eq!(e, expected);
        assert_eq!(parse(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn negative_exponents_fold_over_constant_bases() {
        assert_eq!(parse("2^-14").unwrap(), Expr::Const(rat(1, 16384)));
        assert_eq!(parse("-2^-8").unwrap(), Expr::Const(rat(-1, 256)));
        assert!(parse("x^-2").is_err());
        assert!(parse("0^-1").is_err());
    }

    #[test]
    fn power_requires_integer_literal() {
        assert!(parse("x^y").is_err());
        assert!(parse("x^(2)").is_err());
        assert!(parse("x^1.5").is_err());
        assert_eq!(parse("x^0").unwrap(), Expr::PowNat(Box::new(Expr::var("x")), 0));
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse("sin(pi/2") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 8),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse("2 +").is_err());
        assert!(parse("bogus(1)").is_err());
        assert!(parse("1 $ 2").is_err());
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        assert_eq!(
            parse("-x^2").unwrap(),
            Expr::Neg(Box::new(Expr::PowNat(Box::new(Expr::var("x")), 2)))
        );
    }

    #[test]
    fn fold_constant_examples() {
        assert_eq!(fold_constant(&parse("250*0.514").unwrap()).unwrap(), rat(257, 2));
        assert_eq!(fold_constant(&parse("(1+2)^3/9").unwrap()).unwrap(), rat(3, 1));
        assert!(fold_constant(&parse("pi").unwrap()).is_err());
        assert!(fold_constant(&parse("x + 1").unwrap()).is_err());
        assert!(fold_constant(&parse("1/(2-2)").unwrap()).is_err());
    }

    #[test]
    fn interval_literals() {
        assert_eq!(
            parse_interval("[3, 3.1]").unwrap(),
            Interval::new(rat(3, 1), rat(31, 10))
        );
        assert_eq!(
            parse_interval("[-2^-8, 2^-8]").unwrap(),
            Interval::new(rat(-1, 256), rat(1, 256))
        );
        assert!(parse_interval("[1, 0]").is_err());
        assert!(parse_interval("[x, 1]").is_err());
    }

    #[test]
    fn propositions() {
        match parse_proposition("2*x >= x").unwrap() {
            Proposition::Relational { rel, .. } => assert_eq!(rel, Rel::Ge),
            other => panic!("unexpected {other:?}"),
        }
        match parse_proposition("x*(1-x) in [0, 9/32]").unwrap() {
            Proposition::Membership { target, .. } => {
                assert_eq!(target, Interval::new(rat(0, 1), rat(9, 32)));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_proposition("x + 1").is_err());
    }
}
