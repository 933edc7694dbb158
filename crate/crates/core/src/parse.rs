//! Textual word grammar.
//!
//! ```text
//! WORD   := TERM+            (juxtaposition or "*" between terms)
//! TERM   := FACTOR ("^" SIGNED_INT)?
//! FACTOR := SYMBOL | "1" | "(" WORD ")" | "[" WORD "," WORD "]" | "{" WORD "," WORD "}"
//! SYMBOL := letter (letter | digit | "_")*
//! ```
//!
//! `[a,b]` expands to `a b a^-1 b^-1` and `{a,b}` to `a b a b^-1`. The
//! literal `1` is the identity. Whitespace only separates symbols. Words are returned
//! literally, without free reduction.

use thiserror::Error;

use crate::word::{Alphabet, Letter, Word};

/// Hard cap on the expanded length, so `x^999999999` fails cleanly.
pub const MAX_WORD_LEN: usize = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol `{name}` at position {pos}")]
    UnknownSymbol { pos: usize, name: String },
    #[error("zero exponent at position {pos}")]
    ZeroExponent { pos: usize },
    #[error("expanded word exceeds {MAX_WORD_LEN} letters")]
    TooLong,
}

// (symbol name, inverse) before alphabet resolution
type Raw = Vec<(usize, bool)>;

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    at: usize,
    symbols: Vec<(String, usize)>,
    alphabet: Option<&'a Alphabet>,
}

/// Parses `text`. When `alphabet` is `None` the alphabet is inferred from the
/// distinct symbols in order of first appearance and flagged as inferred.
pub fn parse_word(text: &str, alphabet: Option<&Alphabet>) -> Result<Word, ParseError> {
    let mut p = Parser {
        chars: text.char_indices().collect(),
        at: 0,
        symbols: Vec::new(),
        alphabet,
    };
    let raw = p.word()?;
    p.skip_ws();
    if let Some(&(pos, c)) = p.chars.get(p.at) {
        return Err(ParseError::Syntax { pos, msg: format!("unexpected `{c}`") });
    }
    let (alphabet, map) = match alphabet {
        Some(a) => {
            let map = p
                .symbols
                .iter()
                .map(|(name, pos)| {
                    a.index_of(name)
                        .ok_or_else(|| ParseError::UnknownSymbol { pos: *pos, name: name.clone() })
                })
                .collect::<Result<Vec<_>, _>>()?;
            (a.clone(), map)
        }
        None => {
            let names: Vec<String> = p.symbols.iter().map(|(n, _)| n.clone()).collect();
            let a = Alphabet::new(names).expect("symbols are distinct and non-empty");
            (a.mark_inferred(), (0..p.symbols.len()).collect())
        }
    };
    let letters = raw.into_iter().map(|(s, inv)| Letter { generator: map[s], inverse: inv }).collect();
    Ok(Word::from_parts(alphabet, letters))
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.chars.get(self.at).is_some_and(|(_, c)| c.is_whitespace()) {
            self.at += 1;
        }
    }

    /// Next non-whitespace character. Whitespace separates symbols but is
    /// otherwise insignificant.
    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    /// The character at the cursor, whitespace included.
    fn peek_raw(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map(|&(p, _)| p).unwrap_or_else(|| {
            self.chars.last().map(|&(p, c)| p + c.len_utf8()).unwrap_or(0)
        })
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c == want => {
                self.at += 1;
                Ok(())
            }
            Some(c) => Err(ParseError::Syntax { pos: self.pos(), msg: format!("expected `{want}`, found `{c}`") }),
            None => Err(ParseError::Syntax { pos: self.pos(), msg: format!("expected `{want}`, found end of input") }),
        }
    }

    fn starts_factor(c: char) -> bool {
        c.is_alphabetic() || matches!(c, '1' | '(' | '[' | '{')
    }

    fn word(&mut self) -> Result<Raw, ParseError> {
        let mut out = self.term()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.at += 1;
                    out.extend(self.term()?);
                }
                Some(c) if Self::starts_factor(c) => out.extend(self.term()?),
                _ => break,
            }
            if out.len() > MAX_WORD_LEN {
                return Err(ParseError::TooLong);
            }
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<Raw, ParseError> {
        let base = self.factor()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.at += 1;
        self.skip_ws();
        let exp_pos = self.pos();
        let exp = self.signed_int()?;
        if exp == 0 {
            return Err(ParseError::ZeroExponent { pos: exp_pos });
        }
        let reps = exp.unsigned_abs() as usize;
        if base.len().saturating_mul(reps) > MAX_WORD_LEN {
            return Err(ParseError::TooLong);
        }
        let unit: Raw = if exp > 0 { base } else { invert_raw(&base) };
        Ok(unit.repeat(reps))
    }

    fn signed_int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos();
        let negative = match self.peek() {
            Some('-') => {
                self.at += 1;
                true
            }
            Some('+') => {
                self.at += 1;
                false
            }
            _ => false,
        };
        let mut digits = String::new();
        self.skip_ws();
        while let Some(c) = self.peek_raw().filter(|c| c.is_ascii_digit()) {
            digits.push(c);
            self.at += 1;
        }
        if digits.is_empty() {
            return Err(ParseError::Syntax { pos: self.pos(), msg: "expected an integer exponent".into() });
        }
        let value: i64 = digits
            .parse()
            .map_err(|_| ParseError::Syntax { pos: start, msg: "exponent out of range".into() })?;
        Ok(if negative { -value } else { value })
    }

    fn factor(&mut self) -> Result<Raw, ParseError> {
        let peeked = self.peek();
        let pos = self.pos();
        match peeked {
            Some('1') => {
                self.at += 1;
                if self.peek_raw().is_some_and(|c| c.is_ascii_digit()) {
                    return Err(ParseError::Syntax { pos, msg: "only `1` denotes the identity".into() });
                }
                Ok(Vec::new())
            }
            Some('(') => {
                self.at += 1;
                let inner = self.word()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some(open @ ('[' | '{')) => {
                self.at += 1;
                let a = self.word()?;
                self.expect(',')?;
                let b = self.word()?;
                self.expect(if open == '[' { ']' } else { '}' })?;
                let mut out = a.clone();
                out.extend_from_slice(&b);
                if open == '[' {
                    out.extend(invert_raw(&a));
                } else {
                    out.extend_from_slice(&a);
                }
                out.extend(invert_raw(&b));
                Ok(out)
            }
            Some(c) if c.is_alphabetic() => {
                let mut name = String::new();
                while let Some(c) = self.peek_raw().filter(|c| c.is_alphanumeric() || *c == '_') {
                    name.push(c);
                    self.at += 1;
                }
                Ok(vec![(self.intern(name, pos)?, false)])
            }
            Some(c) => Err(ParseError::Syntax { pos, msg: format!("unexpected `{c}`") }),
            None => Err(ParseError::Syntax { pos, msg: "unexpected end of input".into() }),
        }
    }

    fn intern(&mut self, name: String, pos: usize) -> Result<usize, ParseError> {
        if let Some(i) = self.symbols.iter().position(|(n, _)| *n == name) {
            return Ok(i);
        }
        if let Some(a) = self.alphabet {
            if a.index_of(&name).is_none() {
                return Err(ParseError::UnknownSymbol { pos, name });
            }
        }
        self.symbols.push((name, pos));
        Ok(self.symbols.len() - 1)
    }
}

fn invert_raw(raw: &[(usize, bool)]) -> Raw {
    raw.iter().rev().map(|&(s, inv)| (s, !inv)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn show(text: &str) -> String {
        parse_word(text, None).unwrap().to_string()
    }

    #[test]
    fn commutator_and_brace_sugar() {
        let comm = parse_word("[x,y]", None).unwrap();
        assert_eq!(comm.alphabet().names(), ["x", "y"]);
        assert_eq!(comm.to_string(), "x*y*x^-1*y^-1");
        assert_eq!(show("{x,y}"), "x*y*x*y^-1");
        assert_eq!(show("[[x,y],z]"), "x*y*x^-1*y^-1*z*y*x*y^-1*x^-1*z^-1");
    }

    #[test]
    fn exponents_expand() {
        let w = parse_word("x^-3", None).unwrap();
        assert_eq!(w.len(), 3);
        assert!(w.letters().iter().all(|l| l.inverse));
        assert_eq!(show("(a b)^2"), "a*b*a*b");
        assert_eq!(show("(a b)^-1"), "b^-1*a^-1");
        assert_eq!(show("x^+2"), "x^2");
    }

    #[test]
    fn symbols_are_maximal_munch() {
        let w = parse_word("xy", None).unwrap();
        assert_eq!(w.alphabet().names(), ["xy"]);
        assert_eq!(parse_word("x*y", None).unwrap().alphabet().rank(), 2);
        assert_eq!(parse_word("y_1 x2", None).unwrap().alphabet().names(), ["y_1", "x2"]);
    }

    #[test]
    fn identity_and_inference_flag() {
        let e = parse_word("1", None).unwrap();
        assert!(e.is_empty());
        assert!(e.alphabet().is_empty());
        assert!(e.alphabet().is_inferred());
        let a = Alphabet::new(["x", "y", "z"]).unwrap();
        let w = parse_word("x*y", Some(&a)).unwrap();
        assert_eq!(w.alphabet().rank(), 3);
        assert!(!w.alphabet().is_inferred());
    }

    #[test]
    fn errors_report_positions() {
        assert_eq!(parse_word("x^0", None), Err(ParseError::ZeroExponent { pos: 2 }));
        let a = Alphabet::new(["x"]).unwrap();
        assert_eq!(
            parse_word("x y", Some(&a)),
            Err(ParseError::UnknownSymbol { pos: 2, name: "y".into() })
        );
        assert!(matches!(parse_word("[x,y", None), Err(ParseError::Syntax { pos: 4, .. })));
        assert!(matches!(parse_word("x)", None), Err(ParseError::Syntax { pos: 1, .. })));
        assert!(matches!(parse_word("", None), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_word("x^", None), Err(ParseError::Syntax { .. })));
        assert_eq!(parse_word("x^999999999", None), Err(ParseError::TooLong));
    }
}
