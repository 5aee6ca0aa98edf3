//! Rationals and the quadratic fields Q(sqrt d).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
    })
}

/// Field operations shared by the exact linear algebra.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn over(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
}

impl Scalar for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn over(&self, o: &Self) -> Self {
        self / o
    }
    fn negated(&self) -> Self {
        -self
    }
}

/// `a + b*sqrt(d)` with `d` square-free and at least 2, or `d == 0` when `b == 0`.
///
/// Values over different radicands never meet in one computation; mixing them panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadNum {
    pub a: Rat,
    pub b: Rat,
    pub d: i64,
}

fn join_radicand(d1: i64, d2: i64) -> i64 {
    match (d1, d2) {
        (0, d) | (d, 0) => d,
        (x, y) if x == y => x,
        (x, y) => panic!("mixed radicands {x} and {y}"),
    }
}

/// Splits `n > 0` as `s^2 * f` with `f` square-free.
pub fn square_free_split(n: &BigInt) -> (BigInt, BigInt) {
    let mut rest = n.clone();
    let mut square = BigInt::one();
    let mut free = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        for _ in 0..e / 2 {
            square *= &p;
        }
        if e % 2 == 1 {
            free *= &p;
        }
        p += 1;
    }
    free *= rest;
    (square, free)
}

impl QuadNum {
    pub fn new(a: Rat, b: Rat, d: i64) -> Self {
        assert!(d >= 0, "negative radicand");
        if Zero::is_zero(&b) || d == 0 {
            return QuadNum::from_rat(a);
        }
        let (s, f) = square_free_split(&BigInt::from(d));
        let f = f.to_i64().expect("radicand fits i64");
        let b = b * Rat::from_integer(s);
        if f == 1 {
            QuadNum::from_rat(a + b)
        } else {
            QuadNum { a, b, d: f }
        }
    }

    pub fn from_rat(a: Rat) -> Self {
        QuadNum { a, b: Zero::zero(), d: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        QuadNum::from_rat(int(n))
    }

    /// `(p + q*sqrt(d)) / r`.
    pub fn from_parts(p: &BigInt, q: &BigInt, d: i64, r: &BigInt) -> Self {
        let r = Rat::from_integer(r.clone());
        QuadNum::new(
            Rat::from_integer(p.clone()) / &r,
            Rat::from_integer(q.clone()) / &r,
            d,
        )
    }

    pub fn is_rational(&self) -> bool {
        Zero::is_zero(&self.b)
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        self.is_rational().then_some(&self.a)
    }

    pub fn conj(&self) -> Self {
        QuadNum { a: self.a.clone(), b: -&self.b, d: self.d }
    }

    /// `a^2 - d b^2`.
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - &self.b * &self.b * int(self.d)
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.a) + rat_to_f64(&self.b) * (self.d as f64).sqrt()
    }

    pub fn signum(&self) -> i32 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sb == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        if sa == 0 {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * int(self.d);
        if a2 > b2d {
            sa
        } else {
            sb
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            self.negated()
        } else {
            self.clone()
        }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        QuadNum::new(&self.a * r, &self.b * r, self.d)
    }
}

fn sign(r: &Rat) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

impl Scalar for QuadNum {
    fn zero() -> Self {
        QuadNum::from_int(0)
    }
    fn one() -> Self {
        QuadNum::from_int(1)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    fn plus(&self, o: &Self) -> Self {
        let d = join_radicand(self.d, o.d);
        QuadNum::new(&self.a + &o.a, &self.b + &o.b, d)
    }
    fn minus(&self, o: &Self) -> Self {
        let d = join_radicand(self.d, o.d);
        QuadNum::new(&self.a - &o.a, &self.b - &o.b, d)
    }
    fn times(&self, o: &Self) -> Self {
        let d = join_radicand(self.d, o.d);
        let a = &self.a * &o.a + &self.b * &o.b * int(d);
        let b = &self.a * &o.b + &self.b * &o.a;
        QuadNum::new(a, b, d)
    }
    fn over(&self, o: &Self) -> Self {
        assert!(!o.is_zero(), "division by zero");
        let n = o.norm();
        let num = self.times(&o.conj());
        QuadNum::new(num.a / &n, num.b / &n, num.d)
    }
    fn negated(&self) -> Self {
        QuadNum { a: -&self.a, b: -&self.b, d: self.d }
    }
}

impl PartialOrd for QuadNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadNum {
    fn cmp(&self, other: &Self) -> Ordering {
        self.minus(other).signum().cmp(&0)
    }
}

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.a);
        }
        let b = &self.b;
        let sq = format!("sqrt({})", self.d);
        let rad = if b.is_one() {
            sq
        } else if (-b).is_one() {
            format!("-{sq}")
        } else {
            format!("{b}*{sq}")
        };
        if Zero::is_zero(&self.a) {
            write!(f, "{rad}")
        } else if b.is_negative() {
            write!(f, "{} - {}", self.a, rad.trim_start_matches('-'))
        } else {
            write!(f, "{} + {}", self.a, rad)
        }
    }
}

/// Clears denominators and common factors of a vector over Q(sqrt d) and makes
/// its first nonzero entry positive.
pub fn normalize_quad_vector(v: &[QuadNum]) -> Vec<QuadNum> {
    let mut l = BigInt::one();
    let mut g = BigInt::zero();
    for x in v {
        for r in [&x.a, &x.b] {
            l = l.lcm(r.denom());
        }
    }
    for x in v {
        for r in [&x.a, &x.b] {
            let n = r.numer() * (&l / r.denom());
            g = g.gcd(&n);
        }
    }
    if g.is_zero() {
        return v.to_vec();
    }
    let mut s = Rat::new(l, g);
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.signum() < 0 {
            s = -s;
        }
    }
    v.iter().map(|x| x.scale(&s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt(d: i64) -> QuadNum {
        QuadNum::new(int(0), int(1), d)
    }

    #[test]
    fn field_identities() {
        let x = QuadNum::new(int(3), int(-1), 2);
        let y = QuadNum::new(rat(1, 2), rat(3, 4), 2);
        assert_eq!(x.times(&y).over(&y), x);
        assert_eq!(x.plus(&y).minus(&y), x);
        assert_eq!(sqrt(2).times(&sqrt(2)), QuadNum::from_int(2));
    }

    #[test]
    fn radicand_is_reduced() {
        let x = QuadNum::new(int(0), int(1), 8);
        assert_eq!(x, QuadNum::new(int(0), int(2), 2));
        assert_eq!(QuadNum::new(int(1), int(1), 9), QuadNum::from_int(4));
    }

    #[test]
    fn ordering_is_exact() {
        let a = QuadNum::new(int(3), int(-1), 2);
        let b = QuadNum::new(int(3), int(1), 2);
        assert!(a < b);
        assert!(QuadNum::new(int(-2), int(1), 5) > QuadNum::from_int(0));
        assert!(QuadNum::new(int(-3), int(1), 5) < QuadNum::from_int(0));
        assert_eq!(a.to_f64(), 3.0 - 2f64.sqrt());
    }

    #[test]
    fn normalized_vectors() {
        let v = vec![
            QuadNum::new(rat(-1, 2), rat(1, 2), 5),
            QuadNum::from_rat(rat(1, 3)),
        ];
        let n = normalize_quad_vector(&v);
        assert_eq!(n[0], QuadNum::new(int(-3), int(3), 5));
        assert_eq!(n[1], QuadNum::from_int(2));
    }

    #[test]
    fn display() {
        assert_eq!(QuadNum::new(rat(7, 2), rat(-1, 2), 5).to_string(), "7/2 - 1/2*sqrt(5)");
        assert_eq!(sqrt(3).to_string(), "sqrt(3)");
    }
}
