//! Exact input formats: the JSON problem description, inline point lists,
//! and the restricted polynomial-expression grammar.
//!
//! Provides [`InputSpec`], [`WeightSpec`], [`parse_rational`],
//! [`parse_inline_points`], [`parse_monomial`] and [`parse_polynomial`].
//! All numbers are carried as exact rationals; nothing here ever touches
//! floating point.

use latsum::{Poly2, Rat, RatPoint2};
use serde::Deserialize;

/// A problem description as read from a JSON file: the point set whose hull
/// is the polygon, and an optional weight.
///
/// ```json
/// {"points": [["0", "25/12"], ["1/3", "1/5"]],
///  "weight": {"monomial": [32, 32]}}
/// ```
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputSpec {
    pub points: Vec<[String; 2]>,
    #[serde(default)]
    pub weight: Option<WeightSpec>,
}

/// Either a monomial multidegree or a polynomial expression.
#[derive(Debug, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum WeightSpec {
    Monomial([u32; 2]),
    Polynomial(String),
}

impl InputSpec {
    pub fn from_json(src: &str) -> Result<InputSpec, String> {
        serde_json::from_str(src).map_err(|e| format!("invalid input JSON: {e}"))
    }

    pub fn points(&self) -> Result<Vec<RatPoint2>, String> {
        self.points
            .iter()
            .map(|[x, y]| Ok(RatPoint2::new(parse_rational(x)?, parse_rational(y)?)))
            .collect()
    }
}

/// Parses an exact rational written as "n" or "n/d".
pub fn parse_rational(s: &str) -> Result<Rat, String> {
    s.trim()
        .parse::<Rat>()
        .map_err(|_| format!("invalid rational number {s:?}"))
}

/// Parses an inline point list: semicolon-separated "x,y" pairs of exact
/// rationals, e.g. "0,0; 1,0; 1/2,3/4".
pub fn parse_inline_points(s: &str) -> Result<Vec<RatPoint2>, String> {
    s.split(';')
        .map(|pair| {
            let mut coords = pair.split(',');
            let (Some(x), Some(y), None) = (coords.next(), coords.next(), coords.next()) else {
                return Err(format!("invalid point {pair:?}: expected \"x,y\""));
            };
            Ok(RatPoint2::new(parse_rational(x)?, parse_rational(y)?))
        })
        .collect()
}

/// Parses a monomial multidegree written as "a,b".
pub fn parse_monomial(s: &str) -> Result<(u32, u32), String> {
    let mut parts = s.split(',');
    let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
        return Err(format!("invalid multidegree {s:?}: expected \"m1,m2\""));
    };
    let a = a
        .trim()
        .parse::<u32>()
        .map_err(|_| format!("invalid exponent {a:?}"))?;
    let b = b
        .trim()
        .parse::<u32>()
        .map_err(|_| format!("invalid exponent {b:?}"))?;
    Ok((a, b))
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(Rat),
    X,
    Y,
    Caret,
    Star,
    Plus,
    Minus,
}

fn tokenize(src: &str) -> Result<Vec<Token>, String> {
    let mut tokens = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            'x' => {
                tokens.push(Token::X);
                i += 1;
            }
            'y' => {
                tokens.push(Token::Y);
                i += 1;
            }
            '^' => {
                tokens.push(Token::Caret);
                i += 1;
            }
            '*' => {
                tokens.push(Token::Star);
                i += 1;
            }
            '+' => {
                tokens.push(Token::Plus);
                i += 1;
            }
            '-' => {
                tokens.push(Token::Minus);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                // An optional exact-fraction denominator.
                if i < bytes.len() && bytes[i] == b'/' {
                    i += 1;
                    let digits_start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if i == digits_start {
                        return Err(format!("missing denominator after {:?}", &src[start..i]));
                    }
                }
                tokens.push(Token::Number(parse_rational(&src[start..i])?));
            }
            _ => return Err(format!("unexpected character {c:?} in polynomial")),
        }
    }
    Ok(tokens)
}

/// Parses a polynomial in x and y: a sum of terms `c*x^a*y^b` with exact
/// rational coefficients and non-negative integer exponents.  No
/// parentheses, no other variables.
pub fn parse_polynomial(src: &str) -> Result<Poly2<Rat>, String> {
    let tokens = tokenize(src)?;
    if tokens.is_empty() {
        return Err("empty polynomial".to_string());
    }
    let mut poly = Poly2::zero();
    let mut pos = 0;
    loop {
        let mut negate = false;
        while pos < tokens.len() {
            match tokens[pos] {
                Token::Plus => pos += 1,
                Token::Minus => {
                    negate = !negate;
                    pos += 1;
                }
                _ => break,
            }
        }
        let (coeff, a, b) = parse_term(&tokens, &mut pos)?;
        let coeff = if negate { -coeff } else { coeff };
        poly.insert_add(a, b, coeff);
        match tokens.get(pos) {
            None => return Ok(poly),
            Some(Token::Plus) | Some(Token::Minus) => continue,
            Some(t) => return Err(format!("expected + or - between terms, found {t:?}")),
        }
    }
}

fn parse_term(tokens: &[Token], pos: &mut usize) -> Result<(Rat, u32, u32), String> {
    let mut coeff: Option<Rat> = None;
    let mut a = 0u32;
    let mut b = 0u32;
    loop {
        match tokens.get(*pos) {
            Some(Token::Number(r)) => {
                coeff = Some(match coeff {
                    None => r.clone(),
                    Some(c) => c * r,
                });
                *pos += 1;
            }
            Some(Token::X) => {
                *pos += 1;
                a += parse_exponent(tokens, pos)?;
            }
            Some(Token::Y) => {
                *pos += 1;
                b += parse_exponent(tokens, pos)?;
            }
            other => {
                return Err(format!("expected a coefficient, x or y, found {other:?}"));
            }
        }
        if let Some(Token::Star) = tokens.get(*pos) {
            *pos += 1;
            continue;
        }
        let one = Rat::from_integer(1.into());
        return Ok((coeff.unwrap_or(one), a, b));
    }
}

fn parse_exponent(tokens: &[Token], pos: &mut usize) -> Result<u32, String> {
    let Some(Token::Caret) = tokens.get(*pos) else {
        return Ok(1);
    };
    *pos += 1;
    let Some(Token::Number(r)) = tokens.get(*pos) else {
        return Err("expected an integer exponent after ^".to_string());
    };
    *pos += 1;
    if !r.is_integer() {
        return Err(format!("exponent {r} is not an integer"));
    }
    let numer = r.numer();
    u32::try_from(numer.clone())
        .map_err(|_| format!("exponent {numer} out of range (must fit in 32 bits)"))
}
