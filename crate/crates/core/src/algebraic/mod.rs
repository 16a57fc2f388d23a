//! Exact real algebraic numbers and the angle / `lambda` correspondence
//! `lambda = (1 - alpha) / (2 alpha)`, `alpha = 1 / (2 lambda + 1)`.

mod parse;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{IntPolynomial, SturmChain};

pub use parse::parse_algebraic;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraicError {
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("polynomial {poly} has {roots} distinct roots in ({lo}, {hi}], expected exactly 1")]
    NotIsolating {
        poly: String,
        lo: String,
        hi: String,
        roots: usize,
    },
    #[error("polynomial must have degree at least 1")]
    Constant,
    #[error("division by zero")]
    DivisionByZero,
    #[error("alpha must satisfy 0 < alpha < 1, got {0}")]
    AlphaOutOfRange(String),
    #[error("lambda must be positive, got {0}")]
    LambdaOutOfRange(String),
}

/// A real root of a squarefree integer polynomial, pinned by an isolating interval `(lo, hi]`.
///
/// Invariant: `minpoly` is primitive, squarefree, has positive leading coefficient,
/// and has exactly one real root in `(lo, hi]`.
#[derive(Clone)]
pub struct AlgebraicNumber {
    minpoly: IntPolynomial,
    lo: BigRational,
    hi: BigRational,
    chain: Arc<SturmChain>,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn rat_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

impl AlgebraicNumber {
    /// The root of `poly` in `(lo, hi]`. The polynomial is reduced to its primitive squarefree part.
    pub fn new(
        poly: IntPolynomial,
        lo: BigRational,
        hi: BigRational,
    ) -> Result<Self, AlgebraicError> {
        if poly.degree().unwrap_or(0) == 0 {
            return Err(AlgebraicError::Constant);
        }
        let minpoly = poly.squarefree_part();
        let chain = SturmChain::new(&minpoly);
        let roots = chain.count(&lo, &hi);
        if roots != 1 {
            return Err(AlgebraicError::NotIsolating {
                poly: minpoly.to_string(),
                lo: lo.to_string(),
                hi: hi.to_string(),
                roots,
            });
        }
        Ok(AlgebraicNumber {
            minpoly,
            lo,
            hi,
            chain: Arc::new(chain),
        })
    }

    pub fn from_rational(r: BigRational) -> Self {
        let poly = IntPolynomial::linear(r.denom().clone(), -r.numer().clone());
        let chain = SturmChain::new(&poly);
        let lo = &r - BigRational::one();
        AlgebraicNumber {
            minpoly: poly,
            lo,
            hi: r,
            chain: Arc::new(chain),
        }
    }

    pub fn from_integer(k: i64) -> Self {
        Self::from_rational(BigRational::from_integer(k.into()))
    }

    pub fn from_ratio(n: i64, d: i64) -> Result<Self, AlgebraicError> {
        if d == 0 {
            return Err(AlgebraicError::DivisionByZero);
        }
        Ok(Self::from_rational(rat(n, d)))
    }

    pub fn minpoly(&self) -> &IntPolynomial {
        &self.minpoly
    }

    pub fn interval(&self) -> (&BigRational, &BigRational) {
        (&self.lo, &self.hi)
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap_or(0)
    }

    /// The exact value when it is rational: a linear minpoly, or `hi` itself a root.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.degree() == 1 {
            let c = self.minpoly.coeffs();
            return Some(BigRational::new(-c[0].clone(), c[1].clone()));
        }
        (self.minpoly.sign_at(&self.hi) == Ordering::Equal).then(|| self.hi.clone())
    }

    /// Halves the isolating interval.
    pub fn refined(&self) -> Self {
        let mid = (&self.lo + &self.hi) / BigInt::from(2);
        let (lo, hi) = if self.chain.count(&self.lo, &mid) == 1 {
            (self.lo.clone(), mid)
        } else {
            (mid, self.hi.clone())
        };
        AlgebraicNumber {
            minpoly: self.minpoly.clone(),
            lo,
            hi,
            chain: Arc::clone(&self.chain),
        }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// Refines until the interval is no wider than `width`.
    pub fn refined_to(&self, width: &BigRational) -> Self {
        let mut x = self.clone();
        while &x.width() > width {
            x = x.refined();
        }
        x
    }

    /// Midpoint approximation and a bound on its distance to the true value.
    pub fn approx(&self, width: f64) -> (f64, f64) {
        if let Some(r) = self.as_rational() {
            return (rat_to_f64(&r), 0.0);
        }
        let w = BigRational::from_float(width.max(1e-300)).unwrap_or_else(|| rat(1, 1 << 40));
        let x = self.refined_to(&w);
        let mid = (&x.lo + &x.hi) / BigInt::from(2);
        let m = rat_to_f64(&mid);
        (m, rat_to_f64(&x.width()) / 2.0 + m.abs() * f64::EPSILON)
    }

    /// Nearest double, up to a couple of ulps.
    pub fn to_f64(&self) -> f64 {
        if let Some(r) = self.as_rational() {
            return rat_to_f64(&r);
        }
        let scale = rat_to_f64(&self.hi)
            .abs()
            .max(rat_to_f64(&self.lo).abs())
            .max(1.0);
        self.approx(scale * 1e-18).0
    }

    /// Exact three-way comparison.
    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        if let (Some(x), Some(y)) = (self.as_rational(), other.as_rational()) {
            return x.cmp(&y);
        }
        let g = self.minpoly.gcd(&other.minpoly);
        let common = (g.degree().unwrap_or(0) >= 1).then(|| SturmChain::new(&g));
        let (mut a, mut b) = (self.clone(), other.clone());
        loop {
            if a.hi <= b.lo {
                return Ordering::Less;
            }
            if b.hi <= a.lo {
                return Ordering::Greater;
            }
            if let Some(ch) = &common {
                // a root of the common factor inside both intervals is both numbers
                let lo = (&a.lo).max(&b.lo);
                let hi = (&a.hi).min(&b.hi);
                if lo < hi && ch.count(lo, hi) >= 1 {
                    return Ordering::Equal;
                }
            }
            a = a.refined();
            b = b.refined();
        }
    }

    pub fn cmp_rational(&self, r: &BigRational) -> Ordering {
        self.cmp_exact(&Self::from_rational(r.clone()))
    }

    pub fn is_positive(&self) -> bool {
        self.cmp_rational(&BigRational::zero()) == Ordering::Greater
    }

    /// Refines until `pole` lies outside `[lo, hi]` and `lo` is not a root.
    fn clear_of(&self, pole: Option<&BigRational>) -> Self {
        let mut x = self.clone();
        loop {
            let pole_inside = pole.is_some_and(|p| &x.lo <= p && p <= &x.hi);
            if !pole_inside && x.minpoly.sign_at(&x.lo) != Ordering::Equal {
                return x;
            }
            x = x.refined();
        }
    }

    /// `(a x + b) / (c x + d)` for integer `a, b, c, d` with `ad - bc != 0`.
    pub fn mobius(&self, a: i64, b: i64, c: i64, d: i64) -> Result<Self, AlgebraicError> {
        assert!(a * d - b * c != 0, "degenerate Mobius transform");
        let f = |x: &BigRational| -> Option<BigRational> {
            let den = x * BigInt::from(c) + BigInt::from(d);
            (!den.is_zero()).then(|| (x * BigInt::from(a) + BigInt::from(b)) / den)
        };
        if let Some(r) = self.as_rational() {
            return f(&r)
                .map(Self::from_rational)
                .ok_or(AlgebraicError::DivisionByZero);
        }
        let pole = (c != 0).then(|| rat(-d, c));
        let x = self.clear_of(pole.as_ref());
        // x = (d y - b) / (a - c y)
        let num = IntPolynomial::linear(BigInt::from(d), BigInt::from(-b));
        let den = IntPolynomial::linear(BigInt::from(-c), BigInt::from(a));
        let q = x.minpoly.compose_fraction(&num, &den);
        let (y0, y1) = (
            f(&x.lo).expect("pole excluded"),
            f(&x.hi).expect("pole excluded"),
        );
        let (lo, hi) = if y0 < y1 { (y0, y1) } else { (y1, y0) };
        Self::new(q, lo, hi)
    }

    pub fn neg(&self) -> Self {
        self.mobius(-1, 0, 0, 1).expect("negation is total")
    }

    pub fn recip(&self) -> Result<Self, AlgebraicError> {
        self.mobius(0, 1, 1, 0)
    }

    /// `x^2`, exact.
    pub fn square(&self) -> Self {
        if let Some(r) = self.as_rational() {
            return Self::from_rational(&r * &r);
        }
        let base = if self.is_positive() {
            self.clone()
        } else {
            self.neg()
        };
        // p(x) = E(x^2) + x O(x^2)  =>  E(y)^2 - y O(y)^2 vanishes at y = x^2
        let (mut even, mut odd) = (Vec::new(), Vec::new());
        for (i, c) in base.minpoly.coeffs().iter().enumerate() {
            if i % 2 == 0 {
                even.push(c.clone());
            } else {
                odd.push(c.clone());
            }
        }
        let (e, o) = (IntPolynomial::new(even), IntPolynomial::new(odd));
        let y = IntPolynomial::monomial(BigInt::one(), 1);
        let q = (&(&e * &e) - &(&y * &(&o * &o))).squarefree_part();
        let chain = SturmChain::new(&q);
        let mut x = base.clear_of(Some(&BigRational::zero()));
        loop {
            let lo = &x.lo * &x.lo;
            let hi = &x.hi * &x.hi;
            if x.lo.is_positive() && chain.count(&lo, &hi) == 1 {
                return Self::new(q, lo, hi).expect("isolation checked");
            }
            x = x.refined();
        }
    }

    /// Smallest integer `m >= x`.
    pub fn ceil(&self) -> BigInt {
        let x = self.refined_to(&rat(1, 2));
        let mut m = x.hi.ceil().to_integer();
        while self.cmp_rational(&BigRational::from(&m - BigInt::one())) != Ordering::Greater {
            m -= 1;
        }
        m
    }

    /// Largest integer `m <= x`.
    pub fn floor(&self) -> BigInt {
        -self.neg().ceil()
    }
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_exact(other) == Ordering::Equal
    }
}

impl Eq for AlgebraicNumber {}

impl PartialOrd for AlgebraicNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AlgebraicNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_exact(other)
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(r) => write!(f, "{r}"),
            None => write!(
                f,
                "root of {} in ({}, {}] ~ {}",
                self.minpoly,
                self.lo,
                self.hi,
                self.to_f64()
            ),
        }
    }
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraicNumber({self})")
    }
}

impl Serialize for AlgebraicNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            minpoly: &'a IntPolynomial,
            interval: [String; 2],
            approx: f64,
        }
        Repr {
            minpoly: &self.minpoly,
            interval: [self.lo.to_string(), self.hi.to_string()],
            approx: self.to_f64(),
        }
        .serialize(s)
    }
}

/// An equiangular angle parameter `0 < alpha < 1` together with its exact `lambda`.
#[derive(Clone, Debug, Serialize)]
pub struct Angle {
    alpha: AlgebraicNumber,
    lambda: AlgebraicNumber,
}

impl Angle {
    pub fn new(alpha: AlgebraicNumber) -> Result<Self, AlgebraicError> {
        let zero = BigRational::zero();
        if alpha.cmp_rational(&zero) != Ordering::Greater
            || alpha.cmp_rational(&BigRational::one()) != Ordering::Less
        {
            return Err(AlgebraicError::AlphaOutOfRange(alpha.to_string()));
        }
        let lambda = alpha.mobius(-1, 1, 2, 0)?;
        Ok(Angle { alpha, lambda })
    }

    /// `alpha = 1 / (2 lambda + 1)` for `lambda > 0`.
    pub fn from_lambda(lambda: AlgebraicNumber) -> Result<Self, AlgebraicError> {
        if !lambda.is_positive() {
            return Err(AlgebraicError::LambdaOutOfRange(lambda.to_string()));
        }
        let alpha = lambda.mobius(0, 1, 2, 1)?;
        Ok(Angle { alpha, lambda })
    }

    /// `alpha = n / d`.
    pub fn rational(n: i64, d: i64) -> Result<Self, AlgebraicError> {
        Self::new(AlgebraicNumber::from_ratio(n, d)?)
    }

    pub fn parse(text: &str) -> Result<Self, AlgebraicError> {
        Self::new(parse_algebraic(text)?)
    }

    pub fn alpha(&self) -> &AlgebraicNumber {
        &self.alpha
    }

    pub fn lambda(&self) -> &AlgebraicNumber {
        &self.lambda
    }

    pub fn alpha_f64(&self) -> f64 {
        self.alpha.to_f64()
    }

    pub fn lambda_f64(&self) -> f64 {
        self.lambda.to_f64()
    }

    /// `ceil(lambda^2)`.
    pub fn lambda_sq_ceil(&self) -> u64 {
        self.lambda
            .square()
            .ceil()
            .to_u64()
            .expect("lambda^2 fits in u64")
    }

    /// `ceil(1 / alpha)`.
    pub fn alpha_inv_ceil(&self) -> u64 {
        self.alpha
            .recip()
            .expect("alpha > 0")
            .ceil()
            .to_u64()
            .expect("1/alpha fits in u64")
    }

    /// Largest integer `<= 1 / alpha + 1`.
    pub fn clique_bound(&self) -> u64 {
        let inv = self.alpha.recip().expect("alpha > 0");
        inv.floor().to_u64().expect("1/alpha fits in u64") + 1
    }
}

/// `lambda = (1 - alpha) / (2 alpha)`.
pub fn lambda_from_alpha(alpha: &Angle) -> AlgebraicNumber {
    alpha.lambda().clone()
}

/// `alpha = 1 / (2 lambda + 1)`; fails unless `lambda > 0`.
pub fn alpha_from_lambda(lambda: &AlgebraicNumber) -> Result<Angle, AlgebraicError> {
    Angle::from_lambda(lambda.clone())
}
