//! Parsers for the external string grammars: polynomials in x (with
//! coefficients per base field, including t-expressions over function
//! fields), field elements, valuation descriptors and generator descriptors.
//!
//! Errors carry the byte position of the offending token.

use std::fmt;

use num_bigint::BigInt;

use crate::field::ValuedField;
use crate::pcs::{PcsGenerator, SeriesRule};
use crate::poly::Poly;
use crate::value::ExtValue;
use crate::xval::{AugmentedValuation, RootValuation, XValuation, DEFAULT_ROOT_PRECISION_CAP};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl ParseError {
    fn new(pos: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            pos,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: {}", self.pos, self.message)
    }
}

impl std::error::Error for ParseError {}

// ---------------------------------------------------------------------------
// Tokenizer

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    X,
    T,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            '/' => {
                out.push((i, Tok::Slash));
                i += 1;
            }
            '^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            'x' => {
                out.push((i, Tok::X));
                i += 1;
            }
            't' => {
                out.push((i, Tok::T));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = s[start..i].parse().expect("digits");
                out.push((start, Tok::Int(n)));
            }
            other => return Err(ParseError::new(i, format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Recursive-descent expression parser over Poly<F>

struct PolyParser<'a, F: ValuedField> {
    field: &'a F,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl<'a, F: ValuedField> PolyParser<'a, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Poly<F>, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly<F>, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Slash) => {
                    let at = self.here();
                    self.bump();
                    let rhs = self.factor()?;
                    if !rhs.is_constant() {
                        return Err(ParseError::new(at, "division by a non-constant"));
                    }
                    let c = rhs.coeff(0);
                    let inv = self
                        .field
                        .div(&self.field.one(), &c)
                        .ok_or_else(|| ParseError::new(at, "division by zero"))?;
                    acc = acc.mul_elem(&inv);
                }
                // juxtaposition: `2x`, `2t`, `3(x+1)`
                Some(Tok::X) | Some(Tok::T) | Some(Tok::LParen) => {
                    acc = acc.mul(&self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly<F>, ParseError> {
        let at = self.here();
        let base = match self.bump() {
            Some(Tok::Int(n)) => Poly::constant(self.field.clone(), self.field.from_bigint(&n)),
            Some(Tok::X) => Poly::x(self.field.clone()),
            Some(Tok::T) => {
                let t = self.field.indeterminate().ok_or_else(|| {
                    ParseError::new(at, "`t` is only defined over function fields (fpt)")
                })?;
                Poly::constant(self.field.clone(), t)
            }
            Some(Tok::Minus) => {
                let inner = self.factor()?;
                inner.neg()
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => inner,
                    _ => return Err(ParseError::new(self.here(), "expected `)`")),
                }
            }
            Some(tok) => {
                return Err(ParseError::new(at, format!("unexpected token {tok:?}")));
            }
            None => return Err(ParseError::new(at, "unexpected end of input")),
        };
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let at = self.here();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    use num_traits::ToPrimitive;
                    let e = n
                        .to_usize()
                        .ok_or_else(|| ParseError::new(at, "exponent out of range"))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(ParseError::new(at, "expected an integer exponent")),
            }
        }
        Ok(base)
    }
}

/// Parses a polynomial in x over the given field. Over `fpt` fields the
/// symbol `t` denotes the coefficient indeterminate.
pub fn parse_poly<F: ValuedField>(field: &F, s: &str) -> Result<Poly<F>, ParseError> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(ParseError::new(0, "empty polynomial"));
    }
    let mut p = PolyParser {
        field,
        toks,
        pos: 0,
        end: s.len(),
    };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ParseError::new(p.here(), "trailing input"));
    }
    Ok(poly)
}

/// Parses a base-field element: a polynomial expression that is constant
/// in x.
pub fn parse_elem<F: ValuedField>(field: &F, s: &str) -> Result<F::Elem, ParseError> {
    let p = parse_poly(field, s)?;
    if !p.is_constant() {
        return Err(ParseError::new(0, "expected a constant (no `x`)"));
    }
    Ok(p.coeff(0))
}

// ---------------------------------------------------------------------------
// Descriptors

fn split_semicolon_args(s: &str) -> Vec<&str> {
    // split on `;` at paren depth 0
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ';' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn parse_ext_value(s: &str) -> Result<ExtValue, ParseError> {
    s.trim()
        .parse::<ExtValue>()
        .map_err(|e| ParseError::new(0, e.to_string()))
}

/// Parses a valuation descriptor over a known field:
/// `gauss:<field>:<gamma>`, `aug:(<descriptor>);Q=<poly>;g=<value>`,
/// `root:<field>;g=<poly>;a0=<elem>`.
pub fn parse_valuation<F: ValuedField>(field: &F, s: &str) -> Result<XValuation<F>, ParseError> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("gauss:") {
        let (fld, gamma) = rest.rsplit_once(':').ok_or_else(|| {
            ParseError::new(0, "expected gauss:<field>:<gamma>")
        })?;
        check_field(field, fld)?;
        return Ok(XValuation::gauss(field.clone(), parse_ext_value(gamma)?));
    }
    if let Some(rest) = s.strip_prefix("aug:") {
        let parts = split_semicolon_args(rest);
        if parts.len() != 3 {
            return Err(ParseError::new(
                0,
                "expected aug:(<descriptor>);Q=<poly>;g=<value>",
            ));
        }
        let inner = parts[0]
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| ParseError::new(0, "predecessor descriptor must be parenthesized"))?;
        let pred = parse_valuation(field, inner)?;
        let key = parse_poly(
            field,
            field_arg(parts[1], "Q")?,
        )?;
        let gamma = parse_ext_value(field_arg(parts[2], "g")?)?;
        let av = AugmentedValuation::new(pred, key, gamma)
            .map_err(|e| ParseError::new(0, e.to_string()))?;
        return Ok(XValuation::augmented(av));
    }
    if let Some(rest) = s.strip_prefix("root:") {
        let parts = split_semicolon_args(rest);
        if parts.len() != 3 {
            return Err(ParseError::new(0, "expected root:<field>;g=<poly>;a0=<elem>"));
        }
        check_field(field, parts[0])?;
        let g = parse_poly(field, field_arg(parts[1], "g")?)?;
        let a0 = parse_elem(field, field_arg(parts[2], "a0")?)?;
        let rv = RootValuation::new(field.clone(), g, a0, DEFAULT_ROOT_PRECISION_CAP)
            .map_err(|e| ParseError::new(0, e.to_string()))?;
        return Ok(XValuation::root(rv));
    }
    Err(ParseError::new(
        0,
        format!("unknown valuation descriptor `{s}`"),
    ))
}

/// Parses a generator descriptor: `hensel:<field>;g=<poly>;a0=<elem>` or
/// `series:<field>;expr=<rule-id>`.
pub fn parse_generator<F: ValuedField>(field: &F, s: &str) -> Result<PcsGenerator<F>, ParseError> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("hensel:") {
        let parts = split_semicolon_args(rest);
        if parts.len() != 3 {
            return Err(ParseError::new(
                0,
                "expected hensel:<field>;g=<poly>;a0=<elem>",
            ));
        }
        check_field(field, parts[0])?;
        let g = parse_poly(field, field_arg(parts[1], "g")?)?;
        let a0 = parse_elem(field, field_arg(parts[2], "a0")?)?;
        return PcsGenerator::hensel(field.clone(), g, a0)
            .map_err(|e| ParseError::new(0, e.to_string()));
    }
    if let Some(rest) = s.strip_prefix("series:") {
        let parts = split_semicolon_args(rest);
        if parts.len() != 2 {
            return Err(ParseError::new(0, "expected series:<field>;expr=<rule-id>"));
        }
        check_field(field, parts[0])?;
        let rule_id = field_arg(parts[1], "expr")?;
        let rule = SeriesRule::parse(rule_id.trim())
            .ok_or_else(|| ParseError::new(0, format!("unknown series rule `{rule_id}`")))?;
        return Ok(PcsGenerator::series(field.clone(), rule));
    }
    Err(ParseError::new(
        0,
        format!("unknown generator descriptor `{s}`"),
    ))
}

/// The field named inside a composite descriptor, e.g. `root:<field>;...`.
pub fn field_of_descriptor(s: &str) -> Result<String, ParseError> {
    let s = s.trim();
    for prefix in ["hensel:", "series:", "root:"] {
        if let Some(rest) = s.strip_prefix(prefix) {
            let head = split_semicolon_args(rest)[0];
            return Ok(head.trim().to_string());
        }
    }
    if let Some(rest) = s.strip_prefix("gauss:") {
        let (fld, _) = rest
            .rsplit_once(':')
            .ok_or_else(|| ParseError::new(0, "expected gauss:<field>:<gamma>"))?;
        return Ok(fld.trim().to_string());
    }
    if let Some(rest) = s.strip_prefix("aug:") {
        let inner = split_semicolon_args(rest)[0]
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| ParseError::new(0, "predecessor descriptor must be parenthesized"))?;
        return field_of_descriptor(inner);
    }
    Err(ParseError::new(0, format!("unknown descriptor `{s}`")))
}

fn field_arg<'a>(part: &'a str, name: &str) -> Result<&'a str, ParseError> {
    let part = part.trim();
    let (key, val) = part
        .split_once('=')
        .ok_or_else(|| ParseError::new(0, format!("expected {name}=<...>")))?;
    if key.trim() != name {
        return Err(ParseError::new(
            0,
            format!("expected argument `{name}`, found `{}`", key.trim()),
        ));
    }
    Ok(val)
}

fn check_field<F: ValuedField>(field: &F, named: &str) -> Result<(), ParseError> {
    if field.descriptor() != named.trim() {
        return Err(ParseError::new(
            0,
            format!(
                "descriptor names field `{}`, expected `{}`",
                named.trim(),
                field.descriptor()
            ),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Padic, TSeries};

    fn qp3() -> Padic {
        Padic::new(3).unwrap()
    }

    #[test]
    fn parses_basic_polys() {
        let f = qp3();
        assert_eq!(parse_poly(&f, "x-3").unwrap(), Poly::from_ints(f.clone(), &[-3, 1]));
        assert_eq!(
            parse_poly(&f, "x^2 - 9").unwrap(),
            Poly::from_ints(f.clone(), &[-9, 0, 1])
        );
        assert_eq!(
            parse_poly(&f, "2*x^2+x-1/2").unwrap().to_string(),
            "2*x^2 + x - 1/2"
        );
        assert_eq!(parse_poly(&f, "(x-1)(x+1)").unwrap().to_string(), "x^2 - 1");
        assert!(parse_poly(&f, "x +").is_err());
        assert!(parse_poly(&f, "t").is_err());
        assert!(parse_poly(&f, "y").unwrap_err().pos == 0);
    }

    #[test]
    fn parses_function_field_coefficients() {
        let t3 = TSeries::new(3).unwrap();
        let p = parse_poly(&t3, "(t^2+1)/(t+1)*x - t").unwrap();
        assert_eq!(p.degree(), Some(1));
        let roundtrip = parse_poly(&t3, &p.to_string()).unwrap();
        assert_eq!(p, roundtrip);
        assert!(parse_elem(&t3, "t^2/(t+1)").is_ok());
        assert!(parse_elem(&t3, "x").is_err());
    }

    #[test]
    fn poly_display_round_trips() {
        let f = qp3();
        for s in ["x^3 - 2*x + 5", "x^2 - 9", "-x + 1", "0", "1/2*x + 1/2"] {
            let p = parse_poly(&f, s).unwrap();
            assert_eq!(p.to_string(), s);
            assert_eq!(parse_poly(&f, &p.to_string()).unwrap(), p);
        }
    }

    #[test]
    fn parses_valuation_descriptors() {
        let f = qp3();
        let v = parse_valuation(&f, "gauss:qp:3:1").unwrap();
        assert_eq!(v.describe(), "gauss:qp:3:1");
        let v = parse_valuation(&f, "aug:(gauss:qp:3:1);Q=x-3;g=2").unwrap();
        assert_eq!(v.describe(), "aug:(gauss:qp:3:1);Q=x - 3;g=2");
        // round-trip of the canonical form
        let v2 = parse_valuation(&f, &v.describe()).unwrap();
        assert_eq!(v2.describe(), v.describe());

        let f7 = Padic::new(7).unwrap();
        let v = parse_valuation(&f7, "root:qp:7;g=x^2-2;a0=3").unwrap();
        assert_eq!(v.describe(), "root:qp:7;g=x^2 - 2;a0=3");
        assert!(parse_valuation(&f7, "gauss:qp:3:1").is_err());
        assert!(parse_valuation(&f7, "nope:1").is_err());
    }

    #[test]
    fn parses_generator_descriptors() {
        let f7 = Padic::new(7).unwrap();
        let g = parse_generator(&f7, "hensel:qp:7;g=x^2-2;a0=3").unwrap();
        assert_eq!(g.describe(), "hensel:qp:7;g=x^2 - 2;a0=3");
        let f5 = Padic::new(5).unwrap();
        let g = parse_generator(&f5, "series:qp:5;expr=geom-squares").unwrap();
        assert_eq!(g.describe(), "series:qp:5;expr=geom-squares");
        assert!(parse_generator(&f5, "series:qp:5;expr=nope").is_err());
    }

    #[test]
    fn field_extraction_from_descriptors() {
        assert_eq!(field_of_descriptor("gauss:qp:3:1").unwrap(), "qp:3");
        assert_eq!(
            field_of_descriptor("aug:(gauss:fpt:3:1/3);Q=x;g=1").unwrap(),
            "fpt:3"
        );
        assert_eq!(
            field_of_descriptor("hensel:qp:7;g=x^2-2;a0=3").unwrap(),
            "qp:7"
        );
    }
}
