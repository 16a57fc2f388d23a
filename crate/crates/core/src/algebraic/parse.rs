//! Textual syntax for exact reals.
//!
//! Accepted forms:
//! - arithmetic over rationals and a single square root, e.g. `1/3`, `0.25`,
//!   `2+3*sqrt(5)`, `(1+sqrt(5))/2`, `1/(1+2*sqrt(2))`;
//! - an explicit root `poly:[c0,c1,...];interval:lo,hi` selecting the unique
//!   root of `c0 + c1 x + ...` in `(lo, hi]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{AlgebraicError, AlgebraicNumber};
use crate::linalg::IntPolynomial;

pub fn parse_algebraic(text: &str) -> Result<AlgebraicNumber, AlgebraicError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let err = |reason: &str| AlgebraicError::Parse {
        input: text.to_string(),
        reason: reason.to_string(),
    };
    if let Some(rest) = compact.strip_prefix("poly:") {
        return parse_explicit(rest).map_err(|r| err(&r))?;
    }
    let mut p = Parser {
        s: compact.as_bytes(),
        pos: 0,
    };
    let q = p.expr().map_err(|r| err(&r))?;
    if p.pos != p.s.len() {
        return Err(err(&format!("unexpected character at offset {}", p.pos)));
    }
    Ok(q.into_algebraic())
}

fn parse_explicit(rest: &str) -> Result<Result<AlgebraicNumber, AlgebraicError>, String> {
    let (poly, interval) = rest
        .split_once(";interval:")
        .ok_or("expected ';interval:lo,hi'")?;
    let inner = poly
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or("coefficients must be in [...]")?;
    let coeffs = inner
        .split(',')
        .map(|c| {
            c.parse::<BigInt>()
                .map_err(|_| format!("bad coefficient {c:?}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let (lo, hi) = interval.split_once(',').ok_or("interval must be 'lo,hi'")?;
    let lo = parse_rational(lo)?;
    let hi = parse_rational(hi)?;
    if lo >= hi {
        return Err("interval must satisfy lo < hi".into());
    }
    Ok(AlgebraicNumber::new(IntPolynomial::new(coeffs), lo, hi))
}

/// Integer, `p/q`, or decimal literal, with optional sign.
fn parse_rational(s: &str) -> Result<BigRational, String> {
    let mut p = Parser {
        s: s.as_bytes(),
        pos: 0,
    };
    let q = p.expr()?;
    if p.pos != p.s.len() || q.root.is_some() {
        return Err(format!("bad rational {s:?}"));
    }
    Ok(q.a)
}

/// `a + b sqrt(s)` with `s` a squarefree integer greater than 1.
#[derive(Clone, Debug)]
struct Quad {
    a: BigRational,
    b: BigRational,
    root: Option<BigInt>,
}

impl Quad {
    fn rational(a: BigRational) -> Self {
        Quad {
            a,
            b: BigRational::zero(),
            root: None,
        }
    }

    fn common_root(&self, other: &Quad) -> Result<Option<BigInt>, String> {
        match (&self.root, &other.root) {
            (Some(x), Some(y)) if x != y => {
                Err(format!("mixing sqrt({x}) and sqrt({y}) is not supported"))
            }
            (Some(x), _) | (_, Some(x)) => Ok(Some(x.clone())),
            _ => Ok(None),
        }
    }

    fn radicand(&self) -> BigRational {
        self.root
            .clone()
            .map(BigRational::from)
            .unwrap_or_else(BigRational::zero)
    }

    fn normalized(mut self) -> Self {
        if self.b.is_zero() {
            self.root = None;
        }
        self
    }

    fn add(&self, o: &Quad) -> Result<Quad, String> {
        let root = self.common_root(o)?;
        Ok(Quad {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
            root,
        }
        .normalized())
    }

    fn neg(&self) -> Quad {
        Quad {
            a: -&self.a,
            b: -&self.b,
            root: self.root.clone(),
        }
    }

    fn mul(&self, o: &Quad) -> Result<Quad, String> {
        let root = self.common_root(o)?;
        let s = root
            .clone()
            .map(BigRational::from)
            .unwrap_or_else(BigRational::zero);
        let a = &self.a * &o.a + &self.b * &o.b * s;
        let b = &self.a * &o.b + &self.b * &o.a;
        Ok(Quad { a, b, root }.normalized())
    }

    fn recip(&self) -> Result<Quad, String> {
        // 1 / (a + b r) = (a - b r) / (a^2 - b^2 s)
        let norm = &self.a * &self.a - &self.b * &self.b * self.radicand();
        if norm.is_zero() {
            return Err("division by zero".into());
        }
        Ok(Quad {
            a: &self.a / &norm,
            b: -&self.b / &norm,
            root: self.root.clone(),
        }
        .normalized())
    }

    fn sqrt(&self) -> Result<Quad, String> {
        if self.root.is_some() {
            return Err("nested square roots are not supported; use the poly: form".into());
        }
        if self.a.is_negative() {
            return Err("square root of a negative number".into());
        }
        // sqrt(p/q) = sqrt(p q) / q = (k / q) sqrt(s)
        let m = self.a.numer() * self.a.denom();
        let (k, s) = split_square(&m);
        let coef = BigRational::new(k, self.a.denom().clone());
        if s.is_one() {
            return Ok(Quad::rational(coef));
        }
        Ok(Quad {
            a: BigRational::zero(),
            b: coef,
            root: Some(s),
        }
        .normalized())
    }

    fn into_algebraic(self) -> AlgebraicNumber {
        let Some(s) = self.root.clone() else {
            return AlgebraicNumber::from_rational(self.a);
        };
        // (x - a)^2 - b^2 s = x^2 - 2a x + a^2 - b^2 s
        let c1 = -BigRational::from_integer(2.into()) * &self.a;
        let c0 = &self.a * &self.a - &self.b * &self.b * BigRational::from(s);
        let l = c1.denom().lcm(c0.denom());
        let to_int = |c: &BigRational| (c * BigRational::from(l.clone())).to_integer();
        let poly = IntPolynomial::new(vec![to_int(&c0), to_int(&c1), l.clone()]);
        let roots = poly.isolate_real_roots();
        let (lo, hi) = if self.b.is_positive() {
            roots[1].clone()
        } else {
            roots[0].clone()
        };
        AlgebraicNumber::new(poly, lo, hi).expect("isolated root")
    }
}

/// `m = k^2 s` with `s` squarefree over the primes tried by trial division.
fn split_square(m: &BigInt) -> (BigInt, BigInt) {
    let mut k = BigInt::one();
    let mut s = m.clone();
    if s.is_zero() {
        return (BigInt::zero(), BigInt::one());
    }
    let mut p = BigInt::from(2);
    while &p * &p <= s && p < BigInt::from(1_000_000) {
        let pp = &p * &p;
        while (&s % &pp).is_zero() {
            s /= &pp;
            k *= &p;
        }
        p += 1;
    }
    // a remaining perfect square larger than the trial bound
    if let Some(r) = s.to_u128().map(|v| (v as f64).sqrt().round() as u128) {
        for c in r.saturating_sub(1)..=r + 1 {
            let c = BigInt::from(c);
            if &c * &c == s && c > BigInt::one() {
                k *= &c;
                s = BigInt::one();
                break;
            }
        }
    }
    (k, s)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Quad, String> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?)?;
            } else if self.eat(b'-') {
                acc = acc.add(&self.term()?.neg())?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Quad, String> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.unary()?)?;
            } else if self.eat(b'/') {
                acc = acc.mul(&self.unary()?.recip()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Quad, String> {
        if self.eat(b'-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Quad, String> {
        if self.eat(b'(') {
            let q = self.expr()?;
            if !self.eat(b')') {
                return Err(format!("expected ')' at offset {}", self.pos));
            }
            return Ok(q);
        }
        if self.s[self.pos..].starts_with(b"sqrt(") {
            self.pos += 4;
            return self.atom()?.sqrt();
        }
        self.number()
    }

    fn number(&mut self) -> Result<Quad, String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let int_part = &self.s[start..self.pos];
        let mut frac_part: &[u8] = &[];
        if self.eat(b'.') {
            let fs = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            frac_part = &self.s[fs..self.pos];
        }
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(format!("expected a number at offset {start}"));
        }
        let digits: String = int_part
            .iter()
            .chain(frac_part)
            .map(|&c| c as char)
            .collect();
        let n: BigInt = digits.parse().map_err(|_| "bad number".to_string())?;
        let d = num_traits::pow(BigInt::from(10), frac_part.len());
        Ok(Quad::rational(BigRational::new(n, d)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rationals_and_decimals() {
        assert_eq!(parse_algebraic("1/3").unwrap().as_rational(), Some(r(1, 3)));
        assert_eq!(
            parse_algebraic(" 0.25 ").unwrap().as_rational(),
            Some(r(1, 4))
        );
        assert_eq!(parse_algebraic("-7").unwrap().as_rational(), Some(r(-7, 1)));
        assert_eq!(parse_algebraic("3/2").unwrap().as_rational(), Some(r(3, 2)));
        assert_eq!(
            parse_algebraic("sqrt(9/4)").unwrap().as_rational(),
            Some(r(3, 2))
        );
    }

    #[test]
    fn surds() {
        let x = parse_algebraic("(1+sqrt(5))/2").unwrap();
        assert_eq!(x.minpoly(), &IntPolynomial::from_i64s(&[-1, -1, 1]));
        assert!((x.to_f64() - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-15);
        let y = parse_algebraic("1/(1+2*sqrt(2))").unwrap();
        assert_eq!(y.minpoly(), &IntPolynomial::from_i64s(&[-1, 2, 7]));
        let z = parse_algebraic("2-sqrt(8)").unwrap();
        assert!((z.to_f64() - (2.0 - 8f64.sqrt())).abs() < 1e-15);
        assert_eq!(
            parse_algebraic("sqrt(2)*sqrt(2)").unwrap().as_rational(),
            Some(r(2, 1))
        );
    }

    #[test]
    fn explicit_form() {
        let x = parse_algebraic("poly:[-1,0,-4,0,1];interval:2,3").unwrap();
        assert!((x.to_f64() - (2.0 + 5f64.sqrt()).sqrt()).abs() < 1e-14);
        assert!(parse_algebraic("poly:[-2,0,1];interval:-2,2").is_err());
        assert!(parse_algebraic("poly:[-2,0,1];interval:3/2,1").is_err());
    }

    #[test]
    fn errors() {
        for bad in [
            "",
            "1/0",
            "sqrt(-1)",
            "sqrt(2)+sqrt(3)",
            "sqrt(1+sqrt(2))",
            "2*",
            "(1",
            "abc",
        ] {
            assert!(parse_algebraic(bad).is_err(), "{bad:?} should fail");
        }
    }
}
