//! Text grammar for form elements and fractions.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := base ['^' uint]
//! base   := rational | 'E2' | 'E4' | 'E6' | 'Y' | 'Z' | '(' expr ')'
//! ```
//!
//! Division is left-associative, so `9/2*E2/E4` reads `((9/2)*E2)/E4`.

use num_bigint::BigInt;

use super::{FormElement, FormFraction};
use crate::{Error, Rat, Result};

pub fn parse_form_fraction(input: &str) -> Result<FormFraction> {
    let mut p = Parser::new(input);
    let v = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(Error::Parse(format!(
            "unexpected trailing input at byte {}: {:?}",
            p.pos,
            &p.src[p.pos..]
        )));
    }
    Ok(v)
}

pub fn parse_form_element(input: &str) -> Result<FormElement> {
    let f = parse_form_fraction(input)?;
    f.as_element()
        .cloned()
        .ok_or_else(|| Error::Parse(format!("expected a polynomial element, got fraction {}", f)))
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<FormFraction> {
        self.skip_ws();
        let mut acc = if self.eat('-') {
            -&self.term()?
        } else {
            self.term()?
        };
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some('-') => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<FormFraction> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.bump();
                    acc = &acc * &self.factor()?;
                }
                Some('/') => {
                    self.bump();
                    let d = self.factor()?;
                    if d.is_zero() {
                        return Err(Error::Parse("division by zero".into()));
                    }
                    acc = &acc / &d;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<FormFraction> {
        let base = self.base()?;
        self.skip_ws();
        if self.eat('^') {
            self.skip_ws();
            let neg = self.eat('-');
            let n = self.uint()?;
            let n = u32::try_from(&n).map_err(|_| Error::Parse("exponent too large".into()))?;
            let mut acc = FormFraction::one();
            for _ in 0..n {
                acc = &acc * &base;
            }
            if neg {
                acc = acc.inv().map_err(|_| Error::Parse("inverse of zero".into()))?;
            }
            Ok(acc)
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<FormFraction> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.bump();
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("expected ')'".into()));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                Ok(FormFraction::from_rat(Rat::from(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while let Some(c) = self.peek() {
                    if c.is_ascii_alphanumeric() {
                        self.bump();
                    } else {
                        break;
                    }
                }
                match &self.src[start..self.pos] {
                    "E2" => Ok(FormFraction::from_element(FormElement::e2())),
                    "E4" => Ok(FormFraction::from_element(FormElement::e4())),
                    "E6" => Ok(FormFraction::from_element(FormElement::e6())),
                    "Y" => Ok(FormFraction::from_element(FormElement::y())),
                    "Z" => Ok(FormFraction::from_element(FormElement::z())),
                    sym => Err(Error::Parse(format!("unknown symbol {:?}", sym))),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {:?}", other))),
        }
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                self.bump();
            } else {
                break;
            }
        }
        if start == self.pos {
            return Err(Error::Parse("expected a number".into()));
        }
        self.src[start..self.pos]
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(e.to_string()))
    }
}
