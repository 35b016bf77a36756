//! The polynomial text grammar used on the command line: integer
//! coefficients, `*` products, `^` powers, generators `h[i]` by flat index.
//! Whitespace-insensitive. `Display` on `Polynomial` is the inverse.

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::matroid::FlatId;
use crate::ring::{Monomial, Polynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Lexer<'a> {
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

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            got => Err(self.err(format!(
                "expected '{}', found {}",
                c as char,
                got.map_or("end of input".to_string(), |g| format!("'{}'", g as char))
            ))),
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an integer".into()));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn err(&mut self, msg: String) -> ParseError {
        self.skip_ws();
        ParseError { pos: self.pos, msg }
    }
}

/// Parses the grammar `poly := [sign] term {(+|-) term}` with
/// `term := factor {* factor}` and `factor := INT | h[INT] [^INT]`.
pub fn parse_polynomial(src: &str) -> Result<Polynomial, ParseError> {
    let mut lx = Lexer::new(src);
    let mut out = Polynomial::zero();

    let mut sign = BigInt::one();
    match lx.peek() {
        Some(b'-') => {
            lx.bump();
            sign = -sign;
        }
        Some(b'+') => {
            lx.bump();
        }
        Some(_) => {}
        None => return Err(lx.err("empty input".into())),
    }
    loop {
        let (coeff, mono) = parse_term(&mut lx)?;
        out.add_term(mono, coeff * &sign);
        match lx.peek() {
            None => break,
            Some(b'+') => {
                lx.bump();
                sign = BigInt::one();
            }
            Some(b'-') => {
                lx.bump();
                sign = -BigInt::one();
            }
            Some(c) => {
                return Err(lx.err(format!(
                    "expected '+', '-' or end of input, found '{}'",
                    c as char
                )))
            }
        }
    }
    Ok(out)
}

fn parse_term(lx: &mut Lexer) -> Result<(BigInt, Monomial), ParseError> {
    let mut coeff = BigInt::one();
    let mut mono = Monomial::one();
    loop {
        match lx.peek() {
            Some(c) if c.is_ascii_digit() => {
                coeff *= lx.integer()?;
            }
            Some(b'h') => {
                lx.bump();
                lx.expect(b'[')?;
                let idx = lx.integer()?;
                lx.expect(b']')?;
                let idx: u32 = idx
                    .try_into()
                    .map_err(|_| lx.err("flat index out of range".into()))?;
                let exp = if lx.peek() == Some(b'^') {
                    lx.bump();
                    let e = lx.integer()?;
                    let e: u32 = e
                        .try_into()
                        .map_err(|_| lx.err("exponent out of range".into()))?;
                    e
                } else {
                    1
                };
                mono = mono.mul(&Monomial::power(FlatId(idx), exp));
            }
            got => {
                return Err(lx.err(format!(
                    "expected an integer or 'h[', found {}",
                    got.map_or("end of input".to_string(), |g| format!("'{}'", g as char))
                )))
            }
        }
        if lx.peek() == Some(b'*') {
            lx.bump();
        } else {
            break;
        }
    }
    Ok((coeff, mono))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_basic_forms() {
        let p = parse_polynomial("3*h[2]^2*h[5] - h[7]").unwrap();
        assert_eq!(p.to_string(), "3*h[2]^2*h[5] - h[7]");
        assert_eq!(parse_polynomial("0").unwrap(), Polynomial::zero());
        assert_eq!(parse_polynomial("  1 ").unwrap(), Polynomial::one());
        assert_eq!(parse_polynomial("h[1]*h[1]").unwrap().to_string(), "h[1]^2");
        assert_eq!(
            parse_polynomial("-h[3] + 2").unwrap().to_string(),
            "-h[3] + 2"
        );
        assert_eq!(parse_polynomial("h[2]^0").unwrap(), Polynomial::one());
        assert_eq!(parse_polynomial("2*3").unwrap().to_string(), "6");
    }

    #[test]
    fn error_positions() {
        let e = parse_polynomial("h[2 + 1").unwrap_err();
        assert_eq!(e.pos, 4);
        let e = parse_polynomial("").unwrap_err();
        assert_eq!(e.pos, 0);
        let e = parse_polynomial("3*").unwrap_err();
        assert_eq!(e.pos, 2);
        assert!(parse_polynomial("x + 1").is_err());
    }

    #[test]
    fn display_roundtrip() {
        for s in ["h[1]", "2*h[1]*h[2] - h[3]^4 + 17", "-5", "h[10]^3 - h[2]"] {
            let p = parse_polynomial(s).unwrap();
            let q = parse_polynomial(&p.to_string()).unwrap();
            assert_eq!(p, q);
        }
    }
}
