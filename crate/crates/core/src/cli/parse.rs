//! Text syntax for polynomials, quaternions and points.
//!
//! ```text
//! poly  := sign? term (sign term)*
//! term  := factor ('*'? factor)*
//! factor:= INT ('/' INT)? | '(' poly ')' | 'i' | 'j' | 'k' | 't' ('^' INT)?
//! ```
//!
//! Factors multiply in the order written, so `(t - i)(t - j)` is a product
//! of linear polynomials. Positions in errors are byte offsets.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::{Exact, Quaternion, Scalar, Signature};
use crate::error::{Error, Result};
use crate::geometry::ProjPoint;
use crate::polynomials::QuatPoly;

const MAX_DEGREE: usize = 64;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    sig: Signature,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, sig: Signature) -> Self {
        Parser { src: text.as_bytes(), pos: 0, sig }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn unit(&self, idx: usize) -> Quaternion<Exact> {
        let mut c = [0; 4];
        c[idx] = 1;
        Quaternion::from_ints(self.sig, c[0], c[1], c[2], c[3])
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digit run"))
    }

    fn rational(&mut self) -> Result<BigRational> {
        let num = self.integer()?;
        if self.peek() != Some(b'/') {
            return Ok(BigRational::from_integer(num));
        }
        self.pos += 1;
        let at = {
            self.skip_ws();
            self.pos
        };
        let den = self.integer()?;
        if den.is_zero() {
            return Err(Error::parse(at, "zero denominator"));
        }
        Ok(BigRational::new(num, den))
    }

    /// Coefficients by degree; the trailing ones may be zero.
    fn poly(&mut self, allow_t: bool) -> Result<Vec<Quaternion<Exact>>> {
        let mut out: Vec<Quaternion<Exact>> = Vec::new();
        let mut negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let term = self.term(allow_t)?;
            if out.len() < term.len() {
                out.resize(term.len(), Quaternion::zero(self.sig));
            }
            for (o, q) in out.iter_mut().zip(term) {
                *o = if negate { o.clone() - q } else { o.clone() + q };
            }
            negate = match self.peek() {
                Some(b'+') => false,
                Some(b'-') => true,
                _ => break,
            };
            self.pos += 1;
        }
        Ok(out)
    }

    fn term(&mut self, allow_t: bool) -> Result<Vec<Quaternion<Exact>>> {
        let mut acc = vec![Quaternion::one(self.sig)];
        let mut factors = 0;
        loop {
            let at = {
                self.skip_ws();
                self.pos
            };
            let f: Vec<Quaternion<Exact>> = match self.peek() {
                Some(b'0'..=b'9') => vec![Quaternion::real(self.sig, Exact::rational(self.rational()?))],
                Some(b'(') => {
                    self.pos += 1;
                    let inner = self.poly(allow_t)?;
                    if self.peek() != Some(b')') {
                        return Err(Error::parse(self.pos, "expected ')'"));
                    }
                    self.pos += 1;
                    inner
                }
                Some(c @ (b'i' | b'j' | b'k')) => {
                    self.pos += 1;
                    vec![self.unit((c - b'h') as usize)]
                }
                Some(b't') => {
                    if !allow_t {
                        return Err(Error::parse(at, "the variable t is not allowed here"));
                    }
                    self.pos += 1;
                    let mut e = 1usize;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        let at = {
                            self.skip_ws();
                            self.pos
                        };
                        e = self
                            .integer()?
                            .try_into()
                            .ok()
                            .filter(|&e: &usize| e <= MAX_DEGREE)
                            .ok_or_else(|| Error::parse(at, format!("exponent above {MAX_DEGREE}")))?;
                    }
                    let mut m = vec![Quaternion::zero(self.sig); e + 1];
                    m[e] = Quaternion::one(self.sig);
                    m
                }
                Some(b'*') if factors > 0 => {
                    self.pos += 1;
                    continue;
                }
                Some(c) if factors == 0 => {
                    return Err(Error::parse(at, format!("unexpected '{}'", c as char)));
                }
                None if factors == 0 => return Err(Error::parse(at, "expected a term")),
                _ => return Ok(acc),
            };
            if acc.len() + f.len() > MAX_DEGREE + 2 {
                return Err(Error::parse(at, format!("degree above {MAX_DEGREE}")));
            }
            acc = mul(&acc, &f, self.sig);
            factors += 1;
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(Error::parse(self.pos, format!("unexpected '{}'", c as char))),
        }
    }
}

fn mul(a: &[Quaternion<Exact>], b: &[Quaternion<Exact>], sig: Signature) -> Vec<Quaternion<Exact>> {
    let mut out = vec![Quaternion::zero(sig); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x * y;
        }
    }
    out
}

/// Parses a polynomial in `t` with quaternion coefficients written on the
/// left, e.g. `t^2 - (2+j+2k)t + (1-2i+j+2k)`.
pub fn parse_poly(text: &str, sig: Signature) -> Result<QuatPoly<Exact>> {
    let mut p = Parser::new(text, sig);
    let coeffs = p.poly(true)?;
    p.finish()?;
    QuatPoly::new(sig, coeffs)
}

/// Parses a constant quaternion such as `1 - 2i + 3/4k`.
pub fn parse_quaternion(text: &str, sig: Signature) -> Result<Quaternion<Exact>> {
    let mut p = Parser::new(text, sig);
    let coeffs = p.poly(false)?;
    p.finish()?;
    Ok(coeffs.into_iter().next().unwrap_or_else(|| Quaternion::zero(sig)))
}

/// Parses a point as a vectorial quaternion (`i+3j+k`, optionally in
/// brackets) or as a coordinate triple `x,y,z`.
pub fn parse_point(text: &str, sig: Signature) -> Result<ProjPoint<Exact>> {
    let trimmed = text.trim();
    let inner = trimmed
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .unwrap_or(trimmed);
    let offset = text.find(inner).unwrap_or(0);
    let q = if inner.contains(',') {
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::parse(offset, format!("expected 3 coordinates, got {}", parts.len())));
        }
        let mut c = Vec::new();
        let mut at = offset;
        for part in parts {
            let mut p = Parser::new(part, sig);
            let neg = p.peek() == Some(b'-');
            if neg || p.peek() == Some(b'+') {
                p.pos += 1;
            }
            let r = p.rational().and_then(|r| p.finish().map(|_| r)).map_err(|e| match e {
                Error::Parse { pos, msg } => Error::parse(at + pos, msg),
                e => e,
            })?;
            c.push(Exact::rational(if neg { -r } else { r }));
            at += part.len() + 1;
        }
        let [x, y, z]: [Exact; 3] = c.try_into().expect("three coordinates");
        Quaternion::vector(sig, x, y, z)
    } else {
        parse_quaternion(inner, sig).map_err(|e| match e {
            Error::Parse { pos, msg } => Error::parse(offset + pos, msg),
            e => e,
        })?
    };
    if !q.w.is_zero() {
        return Err(Error::parse(offset, "a point has no scalar part"));
    }
    ProjPoint::new(q).map_err(|_| Error::parse(offset, "the zero vector is not a point"))
}

#[cfg(test)]
mod tests {
    use super::*;

    const S: Signature = Signature::Split;

    fn q(w: i64, x: i64, y: i64, z: i64) -> Quaternion<Exact> {
        Quaternion::from_ints(S, w, x, y, z)
    }

    #[test]
    fn example_polynomial() {
        let c = parse_poly("t^2 - (2+j+2k)t + (1-2i+j+2k)", S).unwrap();
        assert_eq!(c.coeffs(), &[q(1, -2, 1, 2), q(-2, 0, -1, -2), q(1, 0, 0, 0)]);
        let c = parse_poly("t^2+1", S).unwrap();
        assert!(c.is_monic());
        assert!(c.coeff(1).is_zero());
    }

    #[test]
    fn juxtaposed_units_multiply() {
        let c = parse_poly("i j t + 2 k*i", S).unwrap();
        assert_eq!(c.coeffs(), &[q(0, 0, 2, 0), q(0, 0, 0, 1)]);
        let c = parse_poly("-t + it - 1/2", S).unwrap();
        assert_eq!(c.coeff(1), q(-1, 1, 0, 0));
        assert_eq!(c.coeff(0).w, Exact::ratio(-1, 2));
    }

    #[test]
    fn products_of_factors() {
        let c = parse_poly("(t - (1+j))(t - (1+2k))", S).unwrap();
        assert_eq!(c, parse_poly("t^2 - (2+j+2k)t + (1-2i+j+2k)", S).unwrap());
        let h = Signature::Hamiltonian;
        let c = parse_poly("(t-i)(t-i)", h).unwrap();
        assert_eq!(c, parse_poly("t^2 - 2i t - 1", h).unwrap());
        // noncommutative coefficients keep their order
        assert_eq!(parse_poly("(t+i)(t+j)", S).unwrap().coeff(0), q(0, 0, 0, 1));
        assert_eq!(parse_poly("(t+j)(t+i)", S).unwrap().coeff(0), q(0, 0, 0, -1));
    }

    #[test]
    fn like_terms_collect() {
        let c = parse_poly("t^2 + t t - 2t^2 + 3", S).unwrap();
        assert_eq!(c.degree(), Some(0));
    }

    #[test]
    fn display_round_trips() {
        for src in ["t^2 - (2+j+2k)t + (1-2i+j+2k)", "t^2 + 1/3 i t - 5/7k", "(1+j) t^2 - 4"] {
            let c = parse_poly(src, S).unwrap();
            assert_eq!(parse_poly(&c.to_string(), S).unwrap(), c, "{c}");
        }
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_poly("t^2 + ", S).unwrap_err(), Error::parse(6, "expected a term"));
        assert!(matches!(parse_quaternion("1 + (1 + t)", S), Err(Error::Parse { pos: 9, .. })));
        assert!(matches!(parse_poly("t + x", S), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse_poly("1/0", S), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_poly("(1+i", S), Err(Error::Parse { pos: 4, .. })));
    }

    #[test]
    fn points() {
        let p = parse_point("[i+3j+k]", S).unwrap();
        assert_eq!(p, ProjPoint::from_ints(1, 3, 1));
        assert_eq!(parse_point("2, 6, 2", S).unwrap(), p);
        assert_eq!(parse_point("-1/2,0,1", S).unwrap(), ProjPoint::from_ints(-1, 0, 2));
        assert!(matches!(parse_point("1+i", S), Err(Error::Parse { .. })));
        assert!(matches!(parse_point("0,0,0", S), Err(Error::Parse { .. })));
        assert!(matches!(parse_point("1,2", S), Err(Error::Parse { .. })));
    }
}
