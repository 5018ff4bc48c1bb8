//! Text input: the expression grammar shared by the CLI and tests, plus
//! index-set literals.
//!
//! Grammar (whitespace between tokens is ignored):
//!
//! ```text
//! element      := ['-'] term (('+'|'-') term)* ;
//! term         := atom ('*' atom)* ;
//! atom         := 'X[' int ',' int ']'          (generator)
//!               | '[' idxset '|' idxset ']'     (quantum minor, expanded)
//!               | '(' laurent-sum ')'
//!               | laurent-atom ;
//! laurent-sum  := ['-'] laurent-term (('+'|'-') laurent-term)* ;
//! laurent-term := laurent-atom ('*' laurent-atom)* ;
//! laurent-atom := uint | 'q' ['^' int] | 'qhat' ;
//! idxset       := int (',' int)* | digit-string (n ≤ 9 only) .
//! ```
//!
//! Minor literals expand through the normal-form constructor, so the
//! parsed element is always canonical. [`parse_expression`] inverts the
//! element Display rendering exactly.

use num_bigint::BigInt;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::indexset::IndexSet;
use crate::laurent::LaurentPoly;
use crate::minor::minor_element;

/// Parses an element of the quantized coordinate ring with ambient size
/// `n`, normalizing as it goes.
pub fn parse_expression(src: &str, n: usize) -> Result<AlgebraElement> {
    let mut parser = Parser {
        src: src.as_bytes(),
        pos: 0,
        n,
    };
    let element = parser.element()?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(element)
}

/// Parses a standalone index-set literal: a comma list (`2,3,5`) or, when
/// n ≤ 9, a compact digit string (`235`).
pub fn parse_index_set(src: &str, n: usize) -> Result<IndexSet> {
    let trimmed = src.trim();
    if trimmed.is_empty() {
        return Err(Error::Parse {
            position: 0,
            message: "empty index-set literal".into(),
        });
    }
    let elems: Vec<usize> = if trimmed.contains(',') {
        let mut out = Vec::new();
        for part in trimmed.split(',') {
            let part = part.trim();
            out.push(part.parse::<usize>().map_err(|_| Error::Parse {
                position: offset_of(src, part),
                message: format!("bad index {part:?}"),
            })?);
        }
        out
    } else if n <= 9 && trimmed.len() > 1 {
        let mut out = Vec::new();
        for (idx, ch) in trimmed.char_indices() {
            let digit = ch.to_digit(10).ok_or_else(|| Error::Parse {
                position: offset_of(src, trimmed) + idx,
                message: format!("bad digit {ch:?} in compact index set"),
            })?;
            out.push(digit as usize);
        }
        out
    } else {
        vec![trimmed.parse::<usize>().map_err(|_| Error::Parse {
            position: offset_of(src, trimmed),
            message: format!("bad index {trimmed:?}"),
        })?]
    };
    IndexSet::new(n, elems)
}

/// Parses a `rows|cols` pair of index-set literals.
pub fn parse_set_pair(src: &str, n: usize) -> Result<(IndexSet, IndexSet)> {
    let Some((left, right)) = src.split_once('|') else {
        return Err(Error::Parse {
            position: 0,
            message: "expected `rows|cols`".into(),
        });
    };
    Ok((parse_index_set(left, n)?, parse_index_set(right, n)?))
}

/// Byte offset of a trimmed slice within its source line (for error
/// positions); falls back to 0 when the slice is empty.
fn offset_of(src: &str, part: &str) -> usize {
    let src_ptr = src.as_ptr() as usize;
    let part_ptr = part.as_ptr() as usize;
    part_ptr.saturating_sub(src_ptr)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.into(),
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

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        if self.eat(byte) {
            Ok(())
        } else {
            Err(self.error(format!("expected {:?}", byte as char)))
        }
    }

    fn uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("digits are utf8")
            .parse::<u64>()
            .map_err(|_| self.error("number out of range"))
    }

    fn int(&mut self) -> Result<i64> {
        let negative = self.eat(b'-');
        let magnitude = self.uint()? as i64;
        Ok(if negative { -magnitude } else { magnitude })
    }

    fn element(&mut self) -> Result<AlgebraElement> {
        let mut total = AlgebraElement::zero(self.n);
        let mut negative = self.eat(b'-');
        loop {
            let term = self.term()?;
            total = if negative { &total - &term } else { &total + &term };
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    negative = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negative = true;
                }
                _ => return Ok(total),
            }
        }
    }

    fn term(&mut self) -> Result<AlgebraElement> {
        let mut product = self.atom()?;
        while self.eat(b'*') {
            product = &product * &self.atom()?;
        }
        Ok(product)
    }

    fn atom(&mut self) -> Result<AlgebraElement> {
        match self.peek() {
            Some(b'X') => self.generator(),
            Some(b'[') => self.minor_literal(),
            Some(b'(') => {
                self.pos += 1;
                let value = self.laurent_sum()?;
                self.expect(b')')?;
                Ok(AlgebraElement::constant(self.n, value))
            }
            Some(b'q') => Ok(AlgebraElement::constant(self.n, self.q_atom()?)),
            Some(c) if c.is_ascii_digit() => {
                let value = self.uint()?;
                Ok(AlgebraElement::constant(
                    self.n,
                    LaurentPoly::int(BigInt::from(value)),
                ))
            }
            _ => Err(self.error("expected a generator, minor, coefficient, or `(`")),
        }
    }

    fn generator(&mut self) -> Result<AlgebraElement> {
        self.expect(b'X')?;
        self.expect(b'[')?;
        let row = self.uint()? as usize;
        self.expect(b',')?;
        let col = self.uint()? as usize;
        self.expect(b']')?;
        AlgebraElement::generator(self.n, row, col)
    }

    fn minor_literal(&mut self) -> Result<AlgebraElement> {
        self.expect(b'[')?;
        let rows = self.idxset(b'|')?;
        self.expect(b'|')?;
        let cols = self.idxset(b']')?;
        self.expect(b']')?;
        minor_element(&rows, &cols)
    }

    /// An index-set body, read up to (not including) `stop`.
    fn idxset(&mut self, stop: u8) -> Result<IndexSet> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos] != stop {
            self.pos += 1;
        }
        let body = std::str::from_utf8(&self.src[start..self.pos]).expect("input is utf8");
        parse_index_set(body, self.n).map_err(|e| match e {
            Error::Parse { position, message } => Error::Parse {
                position: start + position,
                message,
            },
            other => other,
        })
    }

    /// `q`, `q^k`, or `qhat`.
    fn q_atom(&mut self) -> Result<LaurentPoly> {
        self.expect(b'q')?;
        if self.src[self.pos..].starts_with(b"hat") {
            self.pos += 3;
            return Ok(LaurentPoly::qhat());
        }
        if self.eat(b'^') {
            Ok(LaurentPoly::q_pow(self.int()?))
        } else {
            Ok(LaurentPoly::q())
        }
    }

    fn laurent_sum(&mut self) -> Result<LaurentPoly> {
        let mut total = LaurentPoly::zero();
        let mut negative = self.eat(b'-');
        loop {
            let term = self.laurent_term()?;
            total = if negative { &total - &term } else { &total + &term };
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    negative = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negative = true;
                }
                _ => return Ok(total),
            }
        }
    }

    fn laurent_term(&mut self) -> Result<LaurentPoly> {
        let mut product = self.laurent_atom()?;
        while self.eat(b'*') {
            product = &product * &self.laurent_atom()?;
        }
        Ok(product)
    }

    fn laurent_atom(&mut self) -> Result<LaurentPoly> {
        match self.peek() {
            Some(b'q') => self.q_atom(),
            Some(c) if c.is_ascii_digit() => {
                Ok(LaurentPoly::int(BigInt::from(self.uint()?)))
            }
            _ => Err(self.error("expected a coefficient")),
        }
    }
}
