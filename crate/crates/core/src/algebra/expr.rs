//! Plain-text polynomial expressions such as `x4^2*x11 - 3/2 y8 + 1`.

use super::dga::FreeDga;
use super::element::Element;
use super::monomial::Monomial;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("at offset {offset}: {message}")]
pub struct ExprError {
    pub offset: usize,
    pub message: String,
}

/// Parses a polynomial in the generators of `alg`. A coefficient may be
/// written before the first factor of a term, optionally followed by `*`.
pub fn parse_element<F: Scalar>(alg: &FreeDga<F>, text: &str) -> Result<Element<F>, ExprError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.poly(alg)?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, message: &str) -> ExprError {
        ExprError {
            offset: self.pos,
            message: message.to_string(),
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

    fn int(&mut self) -> Result<i64, ExprError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        s.parse().map_err(|_| ExprError {
            offset: start,
            message: "expected an integer".to_string(),
        })
    }

    fn ident(&mut self) -> Result<(usize, String), ExprError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos || self.src[start].is_ascii_digit() {
            self.pos = start;
            return Err(self.err("expected a generator name"));
        }
        Ok((start, String::from_utf8(self.src[start..self.pos].to_vec()).unwrap()))
    }

    fn poly<F: Scalar>(&mut self, alg: &FreeDga<F>) -> Result<Element<F>, ExprError> {
        let mut out = Element::zero();
        let mut sign = F::one();
        if self.peek() == Some(b'-') {
            self.pos += 1;
            sign = -F::one();
        }
        loop {
            let t = self.term(alg)?;
            out.add_scaled(&sign, &t);
            match self.peek() {
                Some(b'+') => sign = F::one(),
                Some(b'-') => sign = -F::one(),
                _ => return Ok(out),
            }
            self.pos += 1;
        }
    }

    fn term<F: Scalar>(&mut self, alg: &FreeDga<F>) -> Result<Element<F>, ExprError> {
        let mut coef = F::one();
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let num = self.int()?;
            coef = F::from_int(num);
            if self.peek() == Some(b'/') {
                self.pos += 1;
                let at = self.pos;
                let den = self.int()?;
                if den == 0 {
                    return Err(ExprError {
                        offset: at,
                        message: "zero denominator".to_string(),
                    });
                }
                coef = coef / F::from_int(den);
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else if !self.peek().is_some_and(|c| c.is_ascii_alphabetic() || c == b'_') {
                return Ok(Element::scalar(coef));
            }
        }
        let mut value = Element::scalar(coef);
        loop {
            let (at, name) = self.ident()?;
            let i = alg.generator_index(&name).ok_or(ExprError {
                offset: at,
                message: format!("unknown generator `{name}`"),
            })?;
            let mut exp = 1;
            if self.peek() == Some(b'^') {
                self.pos += 1;
                exp = u32::try_from(self.int()?).map_err(|_| self.err("exponent too large"))?;
            }
            value = alg.mul(&value, &Element::monomial(Monomial::generator_power(i, exp)));
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(value)
    }
}
