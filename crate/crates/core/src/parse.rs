//! Textual magnitude grammar.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := ('+' | '-') unary | primary
//! primary := INTEGER | 'sqrt' '(' expr ')' | '(' expr ')'
//! ```
//!
//! This accepts `17`, `7/5`, `sqrt(2)`, `2*sqrt(2)`, `(1+sqrt(5))/2` and
//! anything else built from those pieces. Evaluation is exact; whitespace is
//! ignored. Error columns are 1-based character positions.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::magnitude::Magnitude;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Sqrt,
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    End,
}

fn syntax(column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        column,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((Tok::Int(digits.parse().expect("ascii digits")), col));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphabetic() {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                if word != "sqrt" {
                    return Err(syntax(col, format!("unknown identifier '{word}'")));
                }
                out.push((Tok::Sqrt, col));
                continue;
            }
            other => return Err(syntax(col, format!("unexpected character '{other}'"))),
        };
        out.push((tok, col));
        i += 1;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if t.0 != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(syntax(self.column(), format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Magnitude> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.checked_add(&self.term()?)?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.checked_sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Magnitude> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc.checked_mul(&self.unary()?)?;
                }
                Tok::Slash => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = acc.checked_div(&rhs).map_err(|e| match e {
                        Error::DivisionByZero => Error::ZeroDenominator,
                        e => e,
                    })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Magnitude> {
        match self.peek() {
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            Tok::Minus => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Magnitude> {
        let (tok, col) = self.bump();
        match tok {
            Tok::Int(n) => Ok(Magnitude::integer(n)),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::Sqrt => {
                self.expect(Tok::LParen, "'(' after sqrt")?;
                let arg_col = self.column();
                let arg = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                let n = match arg.as_rational() {
                    Some(r) if r.is_integer() => r.to_integer(),
                    _ => return Err(syntax(arg_col, "sqrt argument must be an integer")),
                };
                if n.is_negative() {
                    return Err(Error::NegativeRadicand(n.to_string()));
                }
                Magnitude::sqrt(n)
            }
            Tok::End => Err(syntax(col, "unexpected end of input")),
            _ => Err(syntax(col, "expected a number, sqrt(...) or '('")),
        }
    }
}

/// Parses a magnitude in the textual grammar.
pub fn parse_magnitude(text: &str) -> Result<Magnitude> {
    let mut parser = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let value = parser.expr()?;
    if *parser.peek() != Tok::End {
        return Err(syntax(parser.column(), "trailing input"));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magnitude::normalize_surd;

    #[test]
    fn parses_grammar_examples() {
        let root2 = parse_magnitude("sqrt(2)").unwrap();
        assert_eq!(
            root2,
            normalize_surd(0.into(), 1.into(), 2.into(), 1.into()).unwrap()
        );
        let phi = parse_magnitude("(1+sqrt(5))/2").unwrap();
        assert_eq!(
            phi,
            normalize_surd(1.into(), 1.into(), 5.into(), 2.into()).unwrap()
        );
        assert_eq!(
            parse_magnitude(" 7 / 5 ").unwrap(),
            Magnitude::ratio(7, 5).unwrap()
        );
        assert_eq!(parse_magnitude("17").unwrap(), Magnitude::integer(17));
        assert_eq!(parse_magnitude("sqrt(8)").unwrap().to_string(), "2*sqrt(2)");
    }

    #[test]
    fn zero_denominator_is_rejected() {
        assert_eq!(parse_magnitude("7/0"), Err(Error::ZeroDenominator));
        assert_eq!(
            parse_magnitude("1/(sqrt(2)-sqrt(2))"),
            Err(Error::ZeroDenominator)
        );
    }

    #[test]
    fn syntax_errors_carry_columns() {
        assert_eq!(
            parse_magnitude("1+"),
            Err(Error::Syntax {
                column: 3,
                message: "unexpected end of input".into()
            })
        );
        assert!(matches!(
            parse_magnitude("2 x"),
            Err(Error::Syntax { column: 3, .. })
        ));
        assert!(matches!(
            parse_magnitude("sqr(2)"),
            Err(Error::Syntax { column: 1, .. })
        ));
        assert!(matches!(
            parse_magnitude("sqrt(2"),
            Err(Error::Syntax { column: 7, .. })
        ));
        assert!(matches!(
            parse_magnitude("sqrt(1/2)"),
            Err(Error::Syntax { column: 6, .. })
        ));
        assert!(matches!(
            parse_magnitude("(1))"),
            Err(Error::Syntax { column: 4, .. })
        ));
        assert!(matches!(
            parse_magnitude(""),
            Err(Error::Syntax { column: 1, .. })
        ));
    }

    #[test]
    fn rejects_negative_radicands_and_mixed_fields() {
        assert!(matches!(
            parse_magnitude("sqrt(-2)"),
            Err(Error::NegativeRadicand(_))
        ));
        assert!(matches!(
            parse_magnitude("sqrt(2)+sqrt(3)"),
            Err(Error::IncomparableFields(..))
        ));
    }
}
