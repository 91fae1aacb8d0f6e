//! Exact numbers of the form `(p + q√r)/s`.
//!
//! Arithmetic is closed when both operands share a radicand or one of them
//! is rational; mixing two different irrational radicands is an error for
//! `+ − × ÷` and falls back to interval evaluation for comparisons (flagged
//! as inexact). Integers are `i128`, every operation is overflow-checked.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    p: i128,
    q: i128,
    r: i128,
    s: i128,
}

fn overflow() -> Error {
    Error::Surd("integer overflow".into())
}

fn ck(x: Option<i128>) -> Result<i128> {
    x.ok_or_else(overflow)
}

/// `n = k²·m` with `m` square-free; returns `(k, m)`.
fn split_square(n: i128) -> Result<(i128, i128)> {
    if n < 0 {
        return Err(Error::Surd(format!("negative radicand {n}")));
    }
    if n > 1_000_000_000_000 {
        return Err(Error::Surd(format!("radicand {n} too large to factor")));
    }
    if n == 0 {
        return Ok((0, 1));
    }
    let (mut k, mut m) = (1i128, n);
    let mut f = 2i128;
    while f * f <= m {
        while m % (f * f) == 0 {
            m /= f * f;
            k *= f;
        }
        f += 1;
    }
    Ok((k, m))
}

fn exact_sqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let root = n.sqrt();
    (root * root == n).then_some(root)
}

fn rational_sqrt(x: Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    Some(Rational::new(
        exact_sqrt(*x.numer())?,
        exact_sqrt(*x.denom())?,
    ))
}

/// Sign of `a + b√r` for integers, exact.
fn sign_of(a: i128, b: i128, r: i128) -> Ordering {
    let sa = a.cmp(&0);
    let sb = b.cmp(&0);
    if b == 0 || r == 0 {
        return sa;
    }
    if a == 0 || sa == sb {
        return sb;
    }
    let a2 = BigInt::from(a) * BigInt::from(a);
    let b2r = BigInt::from(b) * BigInt::from(b) * BigInt::from(r);
    match a2.cmp(&b2r) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Outcome of comparing two surds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurdComparison {
    /// `None` when the interval fallback could not separate the values.
    pub ordering: Option<Ordering>,
    pub exact: bool,
}

impl QuadraticSurd {
    /// `(p + q√r)/s`, brought to canonical form.
    pub fn new(p: i128, q: i128, r: i128, s: i128) -> Result<Self> {
        if s == 0 {
            return Err(Error::Surd("zero denominator".into()));
        }
        let (k, m) = split_square(r)?;
        let mut q = ck(q.checked_mul(k))?;
        let mut p = p;
        let mut r = m;
        if r == 1 {
            p = ck(p.checked_add(q))?;
            q = 0;
        }
        if q == 0 {
            r = 1;
        }
        let (mut p, mut q, mut s) = (p, q, s);
        if s < 0 {
            p = ck(p.checked_neg())?;
            q = ck(q.checked_neg())?;
            s = ck(s.checked_neg())?;
        }
        let g = p.gcd(&q).gcd(&s);
        Ok(Self {
            p: p / g,
            q: q / g,
            r,
            s: s / g,
        })
    }

    pub fn integer(n: i128) -> Self {
        Self {
            p: n,
            q: 0,
            r: 1,
            s: 1,
        }
    }

    pub fn rational(n: i128, d: i128) -> Result<Self> {
        Self::new(n, 0, 1, d)
    }

    pub fn from_rational(x: Rational) -> Self {
        Self {
            p: *x.numer(),
            q: 0,
            r: 1,
            s: *x.denom(),
        }
    }

    /// `√n` for a nonnegative integer.
    pub fn sqrt_of(n: i128) -> Result<Self> {
        Self::new(0, 1, n, 1)
    }

    pub fn p(&self) -> i128 {
        self.p
    }
    pub fn q(&self) -> i128 {
        self.q
    }
    pub fn r(&self) -> i128 {
        self.r
    }
    pub fn s(&self) -> i128 {
        self.s
    }

    pub fn is_rational(&self) -> bool {
        self.q == 0
    }

    pub fn is_zero(&self) -> bool {
        self.p == 0 && self.q == 0
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| Rational::new(self.p, self.s))
    }

    /// Rational and irrational coefficients `(X, Y)` with value `X + Y√r`.
    fn parts(&self) -> (Rational, Rational) {
        (Rational::new(self.p, self.s), Rational::new(self.q, self.s))
    }

    fn from_parts(x: Rational, y: Rational, r: i128) -> Result<Self> {
        let s = ck(x.denom().checked_mul(*y.denom()))?;
        let p = ck(x.numer().checked_mul(*y.denom()))?;
        let q = ck(y.numer().checked_mul(*x.denom()))?;
        Self::new(p, q, r, s)
    }

    pub fn to_f64(&self) -> f64 {
        (self.p as f64 + self.q as f64 * (self.r as f64).sqrt()) / self.s as f64
    }

    fn common_radicand(&self, other: &Self) -> Option<i128> {
        match (self.is_rational(), other.is_rational()) {
            (true, true) => Some(1),
            (true, false) => Some(other.r),
            (false, true) => Some(self.r),
            (false, false) => (self.r == other.r).then_some(self.r),
        }
    }

    fn mismatch(&self, other: &Self) -> Error {
        Error::Surd(format!("radicands differ: {self} and {other}"))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let r = self
            .common_radicand(other)
            .ok_or_else(|| self.mismatch(other))?;
        let (x1, y1) = self.parts();
        let (x2, y2) = other.parts();
        Self::from_parts(x1 + x2, y1 + y2, r)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-*other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let r = self
            .common_radicand(other)
            .ok_or_else(|| self.mismatch(other))?;
        let (x1, y1) = self.parts();
        let (x2, y2) = other.parts();
        let rr = Rational::from_integer(r);
        Self::from_parts(x1 * x2 + y1 * y2 * rr, x1 * y2 + y1 * x2, r)
    }

    pub fn checked_recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Surd("division by zero".into()));
        }
        // s (p − q√r) / (p² − q² r)
        let n = ck(self
            .p
            .checked_mul(self.p)
            .zip(
                self.q
                    .checked_mul(self.q)
                    .and_then(|x| x.checked_mul(self.r)),
            )
            .and_then(|(a, b)| a.checked_sub(b)))?;
        let p = ck(self.s.checked_mul(self.p))?;
        let q = ck(self.s.checked_mul(-self.q))?;
        Self::new(p, q, self.r, n)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.checked_recip()?)
    }

    pub fn signum(&self) -> Ordering {
        sign_of(self.p, self.q, self.r)
    }

    /// Exact comparison; `None` for two different irrational radicands.
    pub fn exact_cmp(&self, other: &Self) -> Option<Ordering> {
        self.checked_sub(other).ok().map(|d| d.signum())
    }

    /// Exact comparison when possible, otherwise an interval comparison.
    pub fn compare(&self, other: &Self) -> SurdComparison {
        if let Some(ordering) = self.exact_cmp(other) {
            return SurdComparison {
                ordering: Some(ordering),
                exact: true,
            };
        }
        let (a_lo, a_hi) = self.interval();
        let (b_lo, b_hi) = other.interval();
        let ordering = if a_hi < b_lo {
            Some(Ordering::Less)
        } else if b_hi < a_lo {
            Some(Ordering::Greater)
        } else {
            None
        };
        SurdComparison {
            ordering,
            exact: false,
        }
    }

    /// A floating point interval guaranteed to contain the value.
    pub fn interval(&self) -> (f64, f64) {
        let v = self.to_f64();
        // every step above rounds at most once, and the magnitudes involved
        // keep the accumulated error far below this width
        let pad = 64.0 * f64::EPSILON * (v.abs() + (self.p as f64 / self.s as f64).abs() + 1.0);
        (v - pad, v + pad)
    }

    /// Principal square root inside `ℚ(√r)`, if it exists there (or, for a
    /// rational argument, in some `ℚ(√m)`).
    pub fn sqrt(&self) -> Option<Self> {
        match self.signum() {
            Ordering::Less => return None,
            Ordering::Equal => return Some(Self::integer(0)),
            Ordering::Greater => {}
        }
        if let Some(x) = self.to_rational() {
            // √(n/d) = √(n d)/d
            let nd = x.numer().checked_mul(*x.denom())?;
            return Self::new(0, 1, nd, *x.denom()).ok();
        }
        let (x, y) = self.parts();
        let rr = Rational::from_integer(self.r);
        let disc = rational_sqrt(x * x - y * y * rr)?;
        let two = Rational::from_integer(2);
        for cand in [(x + disc) / two, (x - disc) / two] {
            let Some(a) = rational_sqrt(cand) else {
                continue;
            };
            if a.is_zero() {
                continue;
            }
            let b = y / (two * a);
            for (a, b) in [(a, b), (-a, -b)] {
                let root = Self::from_parts(a, b, self.r).ok()?;
                if root.signum() == Ordering::Greater && root.checked_mul(&root).ok()? == *self {
                    return Some(root);
                }
            }
        }
        None
    }

    /// Decimal enclosure `lo ≤ x ≤ hi` with `digits` places after the point,
    /// verified with exact arithmetic. `lo == hi` when `x` is that decimal.
    pub fn decimal_enclosure(&self, digits: u32) -> Result<(String, String)> {
        let scale = ck(10i128.checked_pow(digits))?;
        let mut n = (self.to_f64() * scale as f64).floor() as i128;
        let at = |n: i128| Self::rational(n, scale);
        while at(n)?.exact_cmp(self) == Some(Ordering::Greater) {
            n -= 1;
        }
        while at(n + 1)?.exact_cmp(self) != Some(Ordering::Greater) {
            n += 1;
        }
        let lo = n;
        let hi = if at(n)? == *self { n } else { n + 1 };
        Ok((fmt_fixed(lo, digits), fmt_fixed(hi, digits)))
    }
}

fn fmt_fixed(n: i128, digits: u32) -> String {
    let sign = if n < 0 { "-" } else { "" };
    let m = n.unsigned_abs();
    let scale = 10u128.pow(digits);
    format!(
        "{sign}{}.{:0width$}",
        m / scale,
        m % scale,
        width = digits as usize
    )
}

impl Neg for QuadraticSurd {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            p: -self.p,
            q: -self.q,
            r: self.r,
            s: self.s,
        }
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr for QuadraticSurd {
            type Output = QuadraticSurd;
            /// Panics on mismatched irrational radicands or overflow; use the
            /// `checked_*` method to handle those cases.
            fn $method(self, rhs: Self) -> Self {
                self.$checked(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl PartialOrd for QuadraticSurd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.compare(other).ordering
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = |q: i128| match q.abs() {
            1 => format!("sqrt({})", self.r),
            a => format!("{a}*sqrt({})", self.r),
        };
        let numer = match (self.p, self.q) {
            (p, 0) => p.to_string(),
            (0, q) if q < 0 => format!("-{}", root(q)),
            (0, q) => root(q),
            (p, q) => format!("{p} {} {}", if q < 0 { '-' } else { '+' }, root(q)),
        };
        if self.s == 1 {
            f.write_str(&numer)
        } else if self.q == 0 || (self.p == 0 && self.q.abs() == 1 && self.q > 0) {
            write!(f, "{numer}/{}", self.s)
        } else {
            write!(f, "({numer})/{}", self.s)
        }
    }
}

impl Serialize for QuadraticSurd {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for QuadraticSurd {
    type Err = Error;

    /// Parses expressions such as `(14-sqrt(19))/12`, `sqrt(3)/2`, `0.0446`
    /// or `2/3`. Decimals are read as exact rationals.
    fn from_str(s: &str) -> Result<Self> {
        let mut parser = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let value = parser.expr()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(parser.error("trailing input"));
        }
        Ok(value)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Surd(format!(
            "{what} at byte {} of {:?}",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
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

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<QuadraticSurd> {
        let mut acc = self.term()?;
        loop {
            if self.eat("+") {
                acc = acc.checked_add(&self.term()?)?;
            } else if self.eat("-") {
                acc = acc.checked_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<QuadraticSurd> {
        let mut acc = self.unary()?;
        loop {
            if self.eat("*") {
                acc = acc.checked_mul(&self.unary()?)?;
            } else if self.eat("/") {
                acc = acc.checked_div(&self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<QuadraticSurd> {
        if self.eat("-") {
            return Ok(-self.unary()?);
        }
        if self.eat("+") {
            return self.unary();
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<QuadraticSurd> {
        if self.eat("sqrt") || self.eat("√") {
            let arg = self.primary()?;
            return arg
                .sqrt()
                .ok_or_else(|| self.error("square root leaves the supported field"));
        }
        if self.eat("(") {
            let v = self.expr()?;
            if !self.eat(")") {
                return Err(self.error("expected ')'"));
            }
            return Ok(v);
        }
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            _ => Err(self.error("expected a number, sqrt(...) or '('")),
        }
    }

    fn number(&mut self) -> Result<QuadraticSurd> {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.')
        {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let x = crate::exact::parse_rational(text).map_err(|_| self.error("malformed number"))?;
        Ok(QuadraticSurd::from_rational(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(text: &str) -> QuadraticSurd {
        text.parse().unwrap()
    }

    #[test]
    fn canonical_form() {
        let x = QuadraticSurd::new(28, -4, 19, -24).unwrap();
        assert_eq!((x.p(), x.q(), x.r(), x.s()), (-7, 1, 19, 6));
        let y = QuadraticSurd::new(0, 1, 12, 1).unwrap();
        assert_eq!((y.q(), y.r()), (2, 3));
        let z = QuadraticSurd::new(1, 3, 4, 1).unwrap();
        assert!(z.is_rational());
        assert_eq!(z, QuadraticSurd::integer(7));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(s("(14 - sqrt(19))/12").to_string(), "(14 - sqrt(19))/12");
        assert_eq!(s("sqrt(3)/2").to_string(), "sqrt(3)/2");
        assert_eq!(s("sqrt(3)-1").to_string(), "-1 + sqrt(3)");
        assert_eq!(s("2/3").to_string(), "2/3");
        assert_eq!(s("sqrt(3/2)"), s("sqrt(6)/2"));
        assert_eq!(s("0.0446"), QuadraticSurd::rational(446, 10000).unwrap());
        assert_eq!(s("-(7-sqrt(105))/28"), s("(sqrt(105)-7)/28"));
        assert!("sqrt(2)+sqrt(3)".parse::<QuadraticSurd>().is_err());
        assert!("1/0".parse::<QuadraticSurd>().is_err());
        assert!("2 +".parse::<QuadraticSurd>().is_err());
    }

    #[test]
    fn field_arithmetic() {
        let a = s("(14-sqrt(19))/12");
        let b = s("(5-sqrt(19))/12");
        assert_eq!(a - b, s("3/4"));
        let x = s("1+sqrt(2)");
        assert_eq!(x * x.checked_recip().unwrap(), QuadraticSurd::integer(1));
        assert_eq!(s("sqrt(6)") * s("sqrt(6)/2"), QuadraticSurd::integer(3));
        assert!(s("sqrt(2)").checked_add(&s("sqrt(3)")).is_err());
    }

    #[test]
    fn square_roots() {
        assert_eq!(s("273 - 120*sqrt(3)").sqrt().unwrap(), s("15 - 4*sqrt(3)"));
        assert_eq!(s("37 - 20*sqrt(3)").sqrt().unwrap(), s("5 - 2*sqrt(3)"));
        assert_eq!(s("207 - 36*sqrt(19)").sqrt().unwrap(), s("3*sqrt(19) - 6"));
        assert_eq!(s("25/3").sqrt().unwrap(), s("5*sqrt(3)/3"));
        assert_eq!(
            s("105").sqrt().unwrap(),
            QuadraticSurd::new(0, 1, 105, 1).unwrap()
        );
        assert!(s("2 + sqrt(3)").sqrt().is_none());
        assert!(s("-4").sqrt().is_none());
        assert_eq!(s("0").sqrt().unwrap(), QuadraticSurd::integer(0));
    }

    #[test]
    fn ordering() {
        assert!(s("sqrt(19)") > s("4"));
        assert!(s("(14-sqrt(19))/12") > s("4/5"));
        assert!(s("(14-sqrt(19))/12") < s("81/100"));
        let mixed = s("sqrt(2)").compare(&s("sqrt(3)"));
        assert_eq!(mixed.ordering, Some(Ordering::Less));
        assert!(!mixed.exact);
        assert_eq!(s("1-sqrt(2)").signum(), Ordering::Less);
    }

    #[test]
    fn enclosures() {
        let (lo, hi) = s("(14-sqrt(19))/12").decimal_enclosure(15).unwrap();
        assert_eq!(
            (lo.as_str(), hi.as_str()),
            ("0.803425088038277", "0.803425088038278")
        );
        let (lo, hi) = s("(7-sqrt(105))/28").decimal_enclosure(6).unwrap();
        assert_eq!((lo.as_str(), hi.as_str()), ("-0.115963", "-0.115962"));
        let (lo, hi) = s("1/4").decimal_enclosure(3).unwrap();
        assert_eq!((lo.as_str(), hi.as_str()), ("0.250", "0.250"));
    }

    proptest! {
        #[test]
        fn ring_laws_in_one_field(p1 in -50i128..50, q1 in -50i128..50, s1 in 1i128..30,
                                  p2 in -50i128..50, q2 in -50i128..50, s2 in 1i128..30,
                                  r in prop::sample::select(vec![2i128, 3, 5, 6, 19, 105])) {
            let a = QuadraticSurd::new(p1, q1, r, s1).unwrap();
            let b = QuadraticSurd::new(p2, q2, r, s2).unwrap();
            prop_assert_eq!(a + b - b, a);
            prop_assert_eq!(a * b, b * a);
            let sum = (a + b).to_f64();
            prop_assert!((sum - (a.to_f64() + b.to_f64())).abs() < 1e-9);
            if !b.is_zero() {
                prop_assert_eq!(a / b * b, a);
            }
            let sq = a * a;
            let root = sq.sqrt().unwrap();
            prop_assert_eq!(root, if a.signum() == Ordering::Less { -a } else { a });
            let ord = a.exact_cmp(&b).unwrap();
            prop_assert_eq!(ord, a.to_f64().partial_cmp(&b.to_f64()).unwrap_or(Ordering::Equal));
        }
    }
}
