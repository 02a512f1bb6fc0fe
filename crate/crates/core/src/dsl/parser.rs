//! Recursive-descent parser for group expressions.
//!
//! ```text
//! group := item ("+" item)*
//! item  := "oplus(" comp ("," comp)* ")"
//!        | "gen(" rat ("," rat)* ")"
//!        | "mat(" rows ")" "*" group
//!        | "(" group ")"
//! comp  := "Z" | "Z[1/" nat "]"
//! rat   := int ("/" nat)?
//! rows  := "[" row (";" row)* "]"      row := rat ("," rat)*
//! ```
//!
//! Whitespace between tokens is ignored and `#` starts a comment running to
//! the end of the line.

use num_traits::Zero;

use super::ast::GroupExpr;
use super::error::ParseError;
use crate::arith::{Int, Rat};
use crate::hgroup::Component;
use crate::linalg::RatMat;

type PResult<T> = std::result::Result<T, ParseError>;

pub fn parse(text: &str) -> PResult<GroupExpr> {
    let mut p = Parser::new(text);
    let e = p.group()?;
    p.end()?;
    Ok(e)
}

/// A matrix literal `[a,b;c,d]`, square or not.
pub fn parse_matrix(text: &str) -> PResult<RatMat> {
    let mut p = Parser::new(text);
    let m = p.rows()?;
    p.end()?;
    Ok(m)
}

/// A comma-separated rational vector, optionally in parentheses.
pub fn parse_vector(text: &str) -> PResult<Vec<Rat>> {
    let mut p = Parser::new(text);
    let paren = p.eat("(");
    let v = p.rat_list()?;
    if paren {
        p.expect(")")?;
    }
    p.end()?;
    Ok(v)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn skip_trivia(&mut self) {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() {
            match bytes[self.pos] {
                b'#' => {
                    while self.pos < bytes.len() && bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn rest(&mut self) -> &'a str {
        self.skip_trivia();
        &self.src[self.pos..]
    }

    fn error(&mut self, expected: &str) -> ParseError {
        self.skip_trivia();
        ParseError::Syntax {
            offset: self.pos,
            expected: expected.to_string(),
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> PResult<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(&format!("'{tok}'")))
        }
    }

    fn end(&mut self) -> PResult<()> {
        if self.rest().is_empty() {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }

    fn group(&mut self) -> PResult<GroupExpr> {
        let first = self.item()?;
        let d = first.dim();
        let mut items = vec![first];
        while self.eat("+") {
            let at = self.offset();
            let item = self.item()?;
            if item.dim() != d {
                return Err(ParseError::DimensionMismatch {
                    offset: at,
                    expected: d,
                    found: item.dim(),
                });
            }
            items.push(item);
        }
        Ok(if items.len() == 1 {
            items.pop().expect("one item")
        } else {
            GroupExpr::Sum(items)
        })
    }

    fn offset(&mut self) -> usize {
        self.skip_trivia();
        self.pos
    }

    fn item(&mut self) -> PResult<GroupExpr> {
        if self.eat("oplus") {
            self.expect("(")?;
            let mut comps = vec![self.component()?];
            while self.eat(",") {
                comps.push(self.component()?);
            }
            self.expect(")")?;
            Ok(GroupExpr::Oplus(comps))
        } else if self.eat("gen") {
            self.expect("(")?;
            let v = self.rat_list()?;
            self.expect(")")?;
            Ok(GroupExpr::Gen(v))
        } else if self.eat("mat") {
            self.expect("(")?;
            let at = self.offset();
            let a = self.rows()?;
            if !a.is_square() {
                return Err(ParseError::DimensionMismatch {
                    offset: at,
                    expected: a.rows(),
                    found: a.cols(),
                });
            }
            self.expect(")")?;
            self.expect("*")?;
            let at = self.offset();
            let operand = self.group()?;
            if operand.dim() != a.rows() {
                return Err(ParseError::DimensionMismatch {
                    offset: at,
                    expected: a.rows(),
                    found: operand.dim(),
                });
            }
            Ok(GroupExpr::Mat(a, Box::new(operand)))
        } else if self.eat("(") {
            let e = self.group()?;
            self.expect(")")?;
            Ok(e)
        } else {
            Err(self.error("'oplus(', 'gen(', 'mat(' or '('"))
        }
    }

    fn component(&mut self) -> PResult<Component> {
        self.expect("Z")?;
        if !self.eat("[") {
            return Ok(Component::Z);
        }
        if !self.rest().starts_with('1') {
            return Err(self.error("'1'"));
        }
        self.pos += 1;
        self.expect("/")?;
        let at = self.offset();
        let n = self.digits()?;
        self.expect("]")?;
        if n < Int::from(2) {
            return Err(ParseError::BadDenominator {
                offset: at,
                n: n.to_string(),
            });
        }
        Ok(Component::Inverted(n))
    }

    fn digits(&mut self) -> PResult<Int> {
        let rest = self.rest();
        let len = rest.bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.error("digit"));
        }
        let n = rest[..len].parse().expect("ascii digits");
        self.pos += len;
        Ok(n)
    }

    fn rat(&mut self) -> PResult<Rat> {
        let negative = self.eat("-");
        let mut num = self.digits()?;
        if negative {
            num = -num;
        }
        if !self.eat("/") {
            return Ok(Rat::from_integer(num));
        }
        let at = self.offset();
        let den = self.digits()?;
        if den.is_zero() {
            return Err(ParseError::Syntax {
                offset: at,
                expected: "nonzero denominator".into(),
            });
        }
        Ok(Rat::new(num, den))
    }

    fn rat_list(&mut self) -> PResult<Vec<Rat>> {
        let mut out = vec![self.rat()?];
        while self.eat(",") {
            out.push(self.rat()?);
        }
        Ok(out)
    }

    fn rows(&mut self) -> PResult<RatMat> {
        self.expect("[")?;
        let mut rows = vec![self.rat_list()?];
        while self.eat(";") {
            let at = self.offset();
            let row = self.rat_list()?;
            if row.len() != rows[0].len() {
                return Err(ParseError::DimensionMismatch {
                    offset: at,
                    expected: rows[0].len(),
                    found: row.len(),
                });
            }
            rows.push(row);
        }
        self.expect("]")?;
        Ok(RatMat::from_rows(rows))
    }
}
