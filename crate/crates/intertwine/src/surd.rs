//! Exact arithmetic in Q(i)(sqrt 2, sqrt 3, sqrt 5, ...).
//!
//! An element is a finite sum of `c_r * sqrt(r)` with `r` squarefree and
//! `c_r` a Gaussian rational.  The field is closed under conjugation, and
//! inverses are computed by successively applying the Galois automorphisms
//! `sqrt(p) -> -sqrt(p)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::scalar::Scalar;

type Q = BigRational;
type Cq = Complex<Q>;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Surd {
    terms: Vec<(u64, Cq)>,
}

fn cq_is_zero(c: &Cq) -> bool {
    c.re.is_zero() && c.im.is_zero()
}

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn cq_real(r: Q) -> Cq {
    Complex::new(r, Q::zero())
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Split a nonnegative integer as `s^2 * r` with `r` squarefree.
fn square_split(m: &BigUint) -> Option<(BigUint, u64)> {
    const LIMIT: u64 = 1 << 16;
    let mut m = m.clone();
    let mut s = BigUint::one();
    let mut r: u64 = 1;
    let mut p: u64 = 2;
    while p < LIMIT {
        let pb = BigUint::from(p);
        if &pb * &pb > m {
            break;
        }
        let p2 = &pb * &pb;
        while (&m % &p2).is_zero() {
            m /= &p2;
            s *= &pb;
        }
        if (&m % &pb).is_zero() {
            m /= &pb;
            r = r.checked_mul(p)?;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m.is_one() {
        return Some((s, r));
    }
    let root = m.sqrt();
    if &root * &root == m {
        return Some((s * root, r));
    }
    let lim = BigUint::from(LIMIT);
    if m < &lim * &lim * &lim {
        let rest = m.to_u64()?;
        return Some((s, r.checked_mul(rest)?));
    }
    None
}

impl Surd {
    pub fn zero_elem() -> Self {
        Surd { terms: Vec::new() }
    }

    pub fn from_cq(c: Cq) -> Self {
        Surd::from_term(1, c)
    }

    fn from_term(r: u64, c: Cq) -> Self {
        if cq_is_zero(&c) {
            Surd::zero_elem()
        } else {
            Surd { terms: vec![(r, c)] }
        }
    }

    pub fn from_rational(r: Q) -> Self {
        Surd::from_cq(cq_real(r))
    }

    pub fn gaussian(re: Q, im: Q) -> Self {
        Surd::from_cq(Complex::new(re, im))
    }

    /// `sqrt(n)` for a positive integer `n`.
    pub fn sqrt_int(n: u64) -> Self {
        assert!(n > 0);
        let (s, r) = square_split(&BigUint::from(n)).expect("small integers always split");
        Surd::from_term(r, cq_real(Q::from_integer(BigInt::from(s))))
    }

    /// Primitive cube root of unity exp(2 pi i / 3).
    pub fn omega() -> Self {
        Surd {
            terms: vec![
                (1, cq_real(Q::new(BigInt::from(-1), BigInt::from(2)))),
                (3, Complex::new(Q::zero(), Q::new(BigInt::one(), BigInt::from(2)))),
            ],
        }
    }

    pub fn is_rational(&self) -> bool {
        self.terms.iter().all(|(r, c)| *r == 1 && c.im.is_zero())
    }

    pub fn as_rational(&self) -> Option<Q> {
        match self.terms.as_slice() {
            [] => Some(Q::zero()),
            [(1, c)] if c.im.is_zero() => Some(c.re.clone()),
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn from_map(map: BTreeMap<u64, Cq>) -> Self {
        Surd {
            terms: map.into_iter().filter(|(_, c)| !cq_is_zero(c)).collect(),
        }
    }

    fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self
            .terms
            .iter()
            .flat_map(|(r, _)| prime_factors(*r))
            .collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }

    fn sigma(&self, p: u64) -> Self {
        Surd {
            terms: self
                .terms
                .iter()
                .map(|(r, c)| if r % p == 0 { (*r, -c.clone()) } else { (*r, c.clone()) })
                .collect(),
        }
    }

    /// Write `self = a + b sqrt(p)` with `a`, `b` free of `p`.
    fn split(&self, p: u64) -> (Surd, Surd) {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (r, c) in &self.terms {
            if r % p == 0 {
                b.push((r / p, c.clone()));
            } else {
                a.push((*r, c.clone()));
            }
        }
        b.sort_by_key(|t| t.0);
        (Surd { terms: a }, Surd { terms: b })
    }

    fn scale_q(&self, f: &Q) -> Self {
        if f.is_zero() {
            return Surd::zero_elem();
        }
        Surd {
            terms: self
                .terms
                .iter()
                .map(|(r, c)| (*r, Complex::new(&c.re * f, &c.im * f)))
                .collect(),
        }
    }

    fn real_part(&self) -> Self {
        Surd::from_map(
            self.terms
                .iter()
                .map(|(r, c)| (*r, cq_real(c.re.clone())))
                .collect(),
        )
    }

    fn imag_part(&self) -> Self {
        Surd::from_map(
            self.terms
                .iter()
                .map(|(r, c)| (*r, cq_real(c.im.clone())))
                .collect(),
        )
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.terms.is_empty() {
            return None;
        }
        let ps = self.primes();
        match ps.last() {
            None => {
                let c = &self.terms[0].1;
                let n = &c.re * &c.re + &c.im * &c.im;
                Some(Surd::from_cq(Complex::new(&c.re / &n, -(&c.im / &n))))
            }
            Some(&p) => {
                let y = self.sigma(p);
                let w = (self.clone() * y.clone()).inverse()?;
                Some(y * w)
            }
        }
    }

    /// Exact sign of a real element.
    fn sign_of_real(&self) -> i8 {
        if self.terms.is_empty() {
            return 0;
        }
        if let Some(r) = self.as_rational() {
            return if r.is_positive() { 1 } else { -1 };
        }
        let p = *self.primes().last().unwrap();
        let (a, b) = self.split(p);
        let sa = a.sign_of_real();
        let sb = b.sign_of_real();
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        let t = a.clone() * a - b.clone() * b * Surd::from_rational(q(p as i64));
        sa * t.sign_of_real()
    }

    fn sqrt_nonneg(&self) -> Option<Self> {
        if self.terms.is_empty() {
            return Some(Surd::zero_elem());
        }
        if let Some(r) = self.as_rational() {
            if r.is_negative() {
                return None;
            }
            let n = r.numer().to_biguint()?;
            let d = r.denom().to_biguint()?;
            let (s, rad) = square_split(&(n * &d))?;
            let coeff = Q::new(BigInt::from(s), BigInt::from(d));
            return Some(Surd::from_term(rad, cq_real(coeff)));
        }
        let p = *self.primes().last().unwrap();
        let (a, b) = self.split(p);
        let pq = Surd::from_rational(q(p as i64));
        let t = a.clone() * a.clone() - b.clone() * b.clone() * pq;
        if t.sign_of_real() < 0 {
            return None;
        }
        let c = t.sqrt_nonneg()?;
        let half = Surd::from_rational(Q::new(BigInt::one(), BigInt::from(2)));
        for cand in [(a.clone() + c.clone()) * half.clone(), (a.clone() - c.clone()) * half.clone()] {
            if cand.sign_of_real() <= 0 {
                continue;
            }
            let y = match cand.sqrt_nonneg() {
                Some(y) => y,
                None => continue,
            };
            let z = b.clone() * (y.clone() * Surd::from_i64(2)).inverse()?;
            let s = y + z * Surd::sqrt_int(p);
            if s.clone() * s.clone() == *self {
                return Some(if s.sign_of_real() < 0 { -s } else { s });
            }
        }
        None
    }

    pub fn to_c64_impl(&self) -> Complex<f64> {
        let mut acc = Complex::new(0.0, 0.0);
        for (r, c) in &self.terms {
            let s = (*r as f64).sqrt();
            acc += Complex::new(
                c.re.to_f64().unwrap_or(f64::NAN) * s,
                c.im.to_f64().unwrap_or(f64::NAN) * s,
            );
        }
        acc
    }
}

impl Zero for Surd {
    fn zero() -> Self {
        Surd::zero_elem()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Surd {
    fn one() -> Self {
        Surd::from_rational(Q::one())
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(self, rhs: Surd) -> Surd {
        if rhs.terms.is_empty() {
            return self;
        }
        if self.terms.is_empty() {
            return rhs;
        }
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let mut i = self.terms.into_iter().peekable();
        let mut j = rhs.terms.into_iter().peekable();
        loop {
            match (i.peek(), j.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(i.next().unwrap()),
                (None, Some(_)) => out.push(j.next().unwrap()),
                (Some(a), Some(b)) => {
                    if a.0 < b.0 {
                        out.push(i.next().unwrap());
                    } else if a.0 > b.0 {
                        out.push(j.next().unwrap());
                    } else {
                        let (r, c1) = i.next().unwrap();
                        let (_, c2) = j.next().unwrap();
                        let c = c1 + c2;
                        if !cq_is_zero(&c) {
                            out.push((r, c));
                        }
                    }
                }
            }
        }
        Surd { terms: out }
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd {
            terms: self.terms.into_iter().map(|(r, c)| (r, -c)).collect(),
        }
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, rhs: Surd) -> Surd {
        self + (-rhs)
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, rhs: Surd) -> Surd {
        if self.terms.is_empty() || rhs.terms.is_empty() {
            return Surd::zero_elem();
        }
        if self.terms.len() == 1 && rhs.terms.len() == 1 {
            let (a, ca) = &self.terms[0];
            let (b, cb) = &rhs.terms[0];
            let g = a.gcd(b);
            let r = (a / g).checked_mul(b / g).expect("radicand overflow");
            let c = ca.clone() * cb.clone();
            let c = if g == 1 { c } else { c.scale(q(g as i64)) };
            return Surd::from_term(r, c);
        }
        let mut map: BTreeMap<u64, Cq> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let g = a.gcd(b);
                let r = (a / g).checked_mul(b / g).expect("radicand overflow");
                let mut c = ca.clone() * cb.clone();
                if g != 1 {
                    c = c.scale(q(g as i64));
                }
                let e = map.entry(r).or_insert_with(Cq::zero);
                *e = e.clone() + c;
            }
        }
        Surd::from_map(map)
    }
}

impl Div for Surd {
    type Output = Surd;
    fn div(self, rhs: Surd) -> Surd {
        if let Some(r) = rhs.as_rational() {
            assert!(!r.is_zero(), "division by zero");
            return self.scale_q(&r.recip());
        }
        self * rhs.inverse().expect("division by zero")
    }
}

fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(r, c)| {
                let coeff = if c.im.is_zero() {
                    fmt_q(&c.re)
                } else if c.re.is_zero() {
                    format!("{}*i", fmt_q(&c.im))
                } else {
                    format!("({}+{}*i)", fmt_q(&c.re), fmt_q(&c.im))
                };
                if *r == 1 {
                    coeff
                } else {
                    format!("{coeff}*sqrt({r})")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Scalar for Surd {
    const EXACT: bool = true;

    fn conj(&self) -> Self {
        Surd {
            terms: self
                .terms
                .iter()
                .map(|(r, c)| (*r, Complex::new(c.re.clone(), -c.im.clone())))
                .collect(),
        }
    }
    fn from_i64(n: i64) -> Self {
        Surd::from_rational(q(n))
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        Surd::from_rational(Q::new(BigInt::from(n), BigInt::from(d)))
    }
    fn i() -> Self {
        Surd::from_cq(Complex::new(Q::zero(), Q::one()))
    }
    fn re(&self) -> Self {
        self.real_part()
    }
    fn im(&self) -> Self {
        self.imag_part()
    }
    fn to_c64(&self) -> Complex<f64> {
        self.to_c64_impl()
    }
    fn is_negligible(&self) -> bool {
        self.terms.is_empty()
    }
    fn real_sign(&self) -> i8 {
        self.real_part().sign_of_real()
    }
    fn sqrt_real(&self) -> Option<Self> {
        if !self.imag_part().is_zero() {
            return None;
        }
        self.sqrt_nonneg()
    }
    fn inv(&self) -> Self {
        self.inverse().expect("inverse of zero")
    }
    fn from_c64(_: Complex<f64>) -> Option<Self> {
        None
    }
    fn from_surd(x: &Surd) -> Self {
        x.clone()
    }
}

// ---- parsing -------------------------------------------------------------

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }
    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }
    fn err(&self, m: &str) -> Error {
        Error::Parse(format!("{m} at byte {} of {:?}", self.pos, String::from_utf8_lossy(self.s)))
    }
    fn expr(&mut self) -> Result<Surd, Error> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }
    fn term(&mut self) -> Result<Surd, Error> {
        let mut acc = self.factor()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = acc * self.factor()?;
                }
                b'/' => {
                    self.pos += 1;
                    let d = self.factor()?;
                    if d.is_zero() {
                        return Err(self.err("division by zero"));
                    }
                    acc = acc / d;
                }
                _ => break,
            }
        }
        Ok(acc)
    }
    fn factor(&mut self) -> Result<Surd, Error> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(Surd::i())
            }
            Some(b'w') => {
                self.pos += 1;
                Ok(Surd::omega())
            }
            Some(b's') => {
                if !self.s[self.pos..].starts_with(b"sqrt(") {
                    return Err(self.err("unknown identifier"));
                }
                self.pos += 5;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                v.sqrt_real()
                    .ok_or_else(|| Error::NoExactSqrt(v.to_string()))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                let n: BigInt = digits.parse().map_err(|_| self.err("bad integer"))?;
                Ok(Surd::from_rational(Q::from_integer(n)))
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

impl FromStr for Surd {
    type Err = Error;
    /// Accepts sums and products of integers, `i`, `w` (cube root of unity)
    /// and `sqrt(...)`, e.g. `"-1/2 + sqrt(3)/2*i"`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let mut p = Parser { s: s.as_bytes(), pos: 0 };
        let v = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(v)
    }
}
