//! Polynomial expressions in `z` with rational and cyclotomic coefficients.
//!
//! ```text
//! poly  := term (('+' | '-') term)*
//! term  := ['-'] (coeff ['*'] ['z' ['^' nat]] | 'z' ['^' nat])
//! coeff := rat ['*' zeta] | zeta
//! zeta  := 'zeta(' nat ')' ['^' nat]
//! rat   := nat ['/' nat]
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use slrec_core::exactnum::lcm_u64;
use slrec_core::{CycRat, Field, Poly, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the source.
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: {}", self.pos, self.message)
    }
}

impl std::error::Error for ParseError {}

/// `rat · zeta(n)^j`, the root being absent when `zeta` is `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coeff {
    pub rat: Rat,
    pub zeta: Option<(u64, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Coeff,
    pub power: u64,
}

/// A sum of terms, kept as written (no collection of like terms).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprAST {
    pub terms: Vec<Term>,
}

impl ExprAST {
    /// Lcm of the orders of all roots that occur.
    pub fn conductor(&self) -> u64 {
        self.terms
            .iter()
            .filter_map(|t| t.coeff.zeta.map(|(n, _)| n))
            .fold(1, lcm_u64)
    }

    pub fn to_poly(&self) -> Poly<CycRat> {
        let mut acc = Poly::zero();
        for t in &self.terms {
            let mut c = CycRat::from_rat(t.coeff.rat.clone());
            if let Some((n, j)) = t.coeff.zeta {
                c = c.times(&CycRat::zeta(n, j % n));
            }
            acc = &acc + &Poly::monomial(c, t.power as usize);
        }
        acc
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn nat(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return if self.src.get(self.pos) == Some(&b'-') {
                self.err("negative exponent or misplaced sign")
            } else {
                self.err("expected a number")
            };
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits"))
    }

    fn small(&mut self) -> Result<u64, ParseError> {
        let pos = self.pos;
        let v = self.nat()?;
        u64::try_from(v).map_err(|_| ParseError {
            pos,
            message: "number too large".into(),
        })
    }

    fn rat(&mut self) -> Result<Rat, ParseError> {
        let num = self.nat()?;
        if self.eat(b'/') {
            let pos = self.pos;
            let den = self.nat()?;
            if den.is_zero() {
                return Err(ParseError {
                    pos,
                    message: "zero denominator".into(),
                });
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    fn zeta(&mut self) -> Result<(u64, u64), ParseError> {
        self.skip_ws();
        if !self.src[self.pos..].starts_with(b"zeta") {
            return self.err("expected 'zeta'");
        }
        self.pos += 4;
        self.expect(b'(')?;
        let pos = self.pos;
        let n = self.small()?;
        if n == 0 {
            return Err(ParseError {
                pos,
                message: "root order must be positive".into(),
            });
        }
        self.expect(b')')?;
        let j = if self.eat(b'^') { self.small()? } else { 1 };
        Ok((n, j))
    }

    fn at_zeta(&mut self) -> bool {
        self.peek() == Some(b'z') && self.src[self.pos..].starts_with(b"zeta")
    }

    fn at_var(&mut self) -> bool {
        self.peek() == Some(b'z') && !self.src[self.pos..].starts_with(b"zeta")
    }

    fn power(&mut self) -> Result<u64, ParseError> {
        self.pos += 1;
        if self.eat(b'^') {
            self.small()
        } else {
            Ok(1)
        }
    }

    fn term(&mut self, negate: bool) -> Result<Term, ParseError> {
        let negate = negate ^ self.eat(b'-');
        let mut coeff = Coeff {
            rat: Rat::from_integer(1.into()),
            zeta: None,
        };
        let mut power = 0;
        if self.at_var() {
            power = self.power()?;
        } else {
            if self.at_zeta() {
                coeff.zeta = Some(self.zeta()?);
            } else {
                coeff.rat = self.rat()?;
                if self.eat(b'*') {
                    if self.at_zeta() {
                        coeff.zeta = Some(self.zeta()?);
                    } else if self.at_var() {
                        power = self.power()?;
                    } else {
                        return self.err("expected 'z' or 'zeta' after '*'");
                    }
                }
            }
            if power == 0 && (self.eat(b'*') || self.at_var()) {
                if !self.at_var() {
                    return self.err("expected 'z'");
                }
                power = self.power()?;
            }
        }
        if negate {
            coeff.rat = -coeff.rat;
        }
        Ok(Term { coeff, power })
    }
}

/// Parses an expression into its syntax tree.
pub fn parse_expr(src: &str) -> Result<ExprAST, ParseError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let mut terms = vec![p.term(false)?];
    loop {
        match p.peek() {
            None => break,
            Some(b'+') => {
                p.pos += 1;
                terms.push(p.term(false)?);
            }
            Some(b'-') => {
                p.pos += 1;
                terms.push(p.term(true)?);
            }
            Some(c) => return p.err(format!("unexpected '{}'", c as char)),
        }
    }
    Ok(ExprAST { terms })
}

/// Parses an expression into a polynomial over the cyclotomic field of its roots.
pub fn parse_poly(src: &str) -> Result<Poly<CycRat>, ParseError> {
    Ok(parse_expr(src)?.to_poly())
}

/// Parses an expression that must be constant.
pub fn parse_scalar(src: &str) -> Result<CycRat, ParseError> {
    let p = parse_poly(src)?;
    match p.degree() {
        None => Ok(CycRat::zero()),
        Some(0) => Ok(p.coeff(0)),
        Some(_) => Err(ParseError {
            pos: 0,
            message: "expected a constant".into(),
        }),
    }
}

fn write_rat(f: &mut fmt::Formatter<'_>, q: &Rat) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.coeff.rat.abs();
        let mut wrote = false;
        if !q.is_one() || (self.coeff.zeta.is_none() && self.power == 0) {
            write_rat(f, &q)?;
            wrote = true;
        }
        if let Some((n, j)) = self.coeff.zeta {
            if wrote {
                write!(f, "*")?;
            }
            write!(f, "zeta({n})")?;
            if j != 1 {
                write!(f, "^{j}")?;
            }
            wrote = true;
        }
        if self.power > 0 {
            if wrote {
                write!(f, "*")?;
            }
            write!(f, "z")?;
            if self.power != 1 {
                write!(f, "^{}", self.power)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for ExprAST {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.rat.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use slrec_core::exactnum::rat;

    #[test]
    fn examples() {
        let p = parse_poly("1/2*z").unwrap();
        assert_eq!(
            p,
            Poly::new(vec![CycRat::zero(), CycRat::from_rat(rat(1, 2))])
        );
        let q = parse_poly("zeta(3)*z^2 - 1").unwrap();
        assert_eq!(q.conductor(), 3);
        assert_eq!(q.coeff(2), CycRat::zeta(3, 1));
        assert_eq!(q.coeff(0), CycRat::from_int(-1));
        let e = parse_expr("z^-1").unwrap_err();
        assert_eq!(e.pos, 2);
        assert!(parse_expr("1/0").is_err());
        assert!(parse_expr("2 z +").is_err());
    }

    #[test]
    fn accepted_forms() {
        assert_eq!(parse_poly("2z").unwrap(), parse_poly("2*z").unwrap());
        assert_eq!(parse_poly("-z + 1").unwrap(), parse_poly("1 - z").unwrap());
        assert_eq!(
            parse_poly("3*zeta(4)^3*z").unwrap(),
            parse_poly("-3*zeta(4) z").unwrap()
        );
        assert_eq!(parse_scalar("zeta(2)").unwrap(), CycRat::from_int(-1));
        assert!(parse_scalar("z").is_err());
    }

    fn arb_term() -> impl Strategy<Value = Term> {
        (
            -20i64..=20,
            1i64..=6,
            prop::option::of((1u64..=12, 0u64..=12)),
            0u64..=6,
        )
            .prop_map(|(a, b, zeta, power)| Term {
                coeff: Coeff {
                    rat: rat(a, b),
                    zeta,
                },
                power,
            })
    }

    proptest! {
        #[test]
        fn parse_print_round_trip(terms in prop::collection::vec(arb_term(), 1..6)) {
            let ast = ExprAST { terms };
            let printed = ast.to_string();
            prop_assert_eq!(parse_expr(&printed).unwrap(), ast, "{}", printed);
        }
    }
}
