//! Integer polynomials: characteristic polynomials, rational roots and
//! factorization of real-rooted polynomials.

use crate::error::{Error, Result};
use crate::graph::LaplacianMatrix;
use crate::quad::{rat_to_f64, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Coefficients `a_0..a_n`, lowest degree first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        IntPolynomial::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// `x - r`.
    pub fn linear(r: &BigInt) -> Self {
        IntPolynomial::new(vec![-r, BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + Rat::from_integer(c.clone()))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return IntPolynomial::new(Vec::new());
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPolynomial::new(c)
    }

    /// Exact quotient over the integers, if `o` divides `self`.
    pub fn div_exact(&self, o: &Self) -> Option<Self> {
        let (q, r) = divrem(&to_rat(self), &to_rat(o));
        if !r.is_empty() || q.iter().any(|c| !c.is_integer()) {
            return None;
        }
        Some(IntPolynomial::new(q.iter().map(|c| c.to_integer()).collect()))
    }

    pub fn derivative(&self) -> Self {
        IntPolynomial::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect(),
        )
    }

    /// Content removed and leading coefficient made positive.
    pub fn primitive(&self) -> Self {
        let g = self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() {
            return self.clone();
        }
        let g = if self.lead().is_negative() { -g } else { g };
        IntPolynomial::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let coef = if a.is_one() && k > 0 { String::new() } else { a.to_string() };
            match k {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{coef}x")?,
                _ => write!(f, "{coef}x^{k}")?,
            }
        }
        Ok(())
    }
}

type RatPoly = Vec<Rat>;

fn to_rat(p: &IntPolynomial) -> RatPoly {
    p.coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect()
}

fn trim(p: &mut RatPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn divrem(a: &RatPoly, b: &RatPoly) -> (RatPoly, RatPoly) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = a.clone();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![Rat::zero(); r.len() - b.len() + 1];
    let lb = b.last().unwrap();
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let f = r.last().unwrap() / lb;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &f * c;
        }
        q[shift] = f;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn primitive_of(p: &RatPoly) -> IntPolynomial {
    let l = p.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    IntPolynomial::new(p.iter().map(|c| c.numer() * (&l / c.denom())).collect()).primitive()
}

/// `det(xI - L)` by the Faddeev-LeVerrier recurrence in exact integers.
pub fn char_poly(l: &LaplacianMatrix) -> Result<IntPolynomial> {
    let a = l.to_integer()?;
    let n = a.len();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        let mut next = matmul(&a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c[n - k + 1];
        }
        m = next;
        let am = matmul(&a, &m);
        let tr: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
        let (q, r) = tr.div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero());
        c[n - k] = -q;
    }
    Ok(IntPolynomial::new(c))
}

fn matmul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

/// Upper bound on the absolute value of every complex root (Fujiwara).
fn root_bound(p: &IntPolynomial) -> BigInt {
    let n = p.degree();
    let lead = p.lead().to_f64().unwrap_or(f64::MAX).abs();
    let mut b: f64 = 0.0;
    for k in 1..=n {
        let c = p.coeffs[n - k].to_f64().unwrap_or(f64::MAX).abs() / lead;
        let e = if k == n { c / 2.0 } else { c };
        b = b.max(e.powf(1.0 / k as f64));
    }
    BigInt::from((2.0 * b).ceil() as i64 + 1)
}

fn divisors_upto(n: &BigInt, bound: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d <= bound && d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
        }
        d += 1;
    }
    out
}

/// Integer roots with multiplicity, ascending, and the deflated quotient.
pub fn integer_roots(p: &IntPolynomial) -> Result<(Vec<BigInt>, IntPolynomial)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut roots = Vec::new();
    let mut q = p.clone();
    while q.coeffs[0].is_zero() {
        roots.push(BigInt::zero());
        q = IntPolynomial::new(q.coeffs[1..].to_vec());
    }
    if q.degree() > 0 {
        let bound = root_bound(&q);
        let a0 = q.coeffs[0].clone();
        let mut cands: Vec<BigInt> = divisors_upto(&a0, &bound)
            .into_iter()
            .flat_map(|d| [-d.clone(), d])
            .collect();
        cands.sort();
        for r in cands {
            while q.degree() > 0 && q.eval(&r).is_zero() {
                q = q.div_exact(&IntPolynomial::linear(&r)).expect("root divides");
                roots.push(r.clone());
            }
        }
    }
    roots.sort();
    Ok((roots, q))
}

/// All distinct rational roots, found from the candidates `u/v` with `u | a_0`, `v | a_n`.
pub fn rational_roots(p: &IntPolynomial) -> Result<Vec<Rat>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    let mut q = p.clone();
    if q.coeffs[0].is_zero() {
        out.push(Rat::zero());
        while q.coeffs[0].is_zero() {
            q = IntPolynomial::new(q.coeffs[1..].to_vec());
        }
    }
    if q.degree() == 0 {
        return Ok(out);
    }
    let bound = root_bound(&q);
    let lead = q.lead().abs();
    for v in divisors_upto(&lead, &lead) {
        let ubound = &bound * &v;
        for u in divisors_upto(&q.coeffs[0], &ubound) {
            for s in [-u.clone(), u.clone()] {
                let r = Rat::new(s, v.clone());
                if q.eval_rat(&r).is_zero() && !out.contains(&r) {
                    out.push(r);
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Square-free decomposition `p = c * prod f_i^i` (Yun), as `(f_i, i)` with `deg f_i > 0`.
pub fn square_free(p: &IntPolynomial) -> Vec<(IntPolynomial, usize)> {
    let mut out = Vec::new();
    if p.degree() == 0 {
        return out;
    }
    let f = to_rat(p);
    let df = deriv(&f);
    let a0 = gcd_rp(&f, &df);
    let mut b = divrem(&f, &a0).0;
    let c = divrem(&df, &a0).0;
    let mut d = sub(&c, &deriv(&b));
    let mut i = 1;
    while b.len() > 1 {
        let a = if d.is_empty() { b.clone() } else { gcd_rp(&b, &d) };
        let next_b = divrem(&b, &a).0;
        let next_c = divrem(&d, &a).0;
        if a.len() > 1 {
            out.push((primitive_of(&a), i));
        }
        d = sub(&next_c, &deriv(&next_b));
        b = next_b;
        i += 1;
    }
    out
}

fn deriv(p: &RatPoly) -> RatPoly {
    let mut d: RatPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
        .collect();
    trim(&mut d);
    d
}

fn gcd_rp(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    let l = x.last().cloned().unwrap_or_else(Rat::one);
    x.iter().map(|c| c / &l).collect()
}

fn sub(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let n = a.len().max(b.len());
    let mut out: RatPoly = (0..n)
        .map(|i| {
            a.get(i).cloned().unwrap_or_else(Rat::zero) - b.get(i).cloned().unwrap_or_else(Rat::zero)
        })
        .collect();
    trim(&mut out);
    out
}

fn sturm_chain(p: &IntPolynomial) -> Vec<RatPoly> {
    let mut chain = vec![to_rat(p), to_rat(&p.derivative())];
    loop {
        let k = chain.len();
        if chain[k - 1].is_empty() {
            chain.pop();
            break;
        }
        let (_, r) = divrem(&chain[k - 2], &chain[k - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.iter().map(|c| -c).collect());
    }
    chain
}

fn eval_rp(p: &RatPoly, x: &Rat) -> Rat {
    p.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
}

fn sign_changes(chain: &[RatPoly], x: &Rat) -> usize {
    let signs: Vec<i8> = chain
        .iter()
        .map(|p| {
            let v = eval_rp(p, x);
            if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Real roots of a square-free polynomial, ascending, each to about 1e-15 relative accuracy.
pub fn real_roots(p: &IntPolynomial) -> Vec<f64> {
    if p.degree() == 0 {
        return Vec::new();
    }
    let chain = sturm_chain(p);
    let b = Rat::from_integer(root_bound(p));
    let count = |lo: &Rat, hi: &Rat| sign_changes(&chain, lo) - sign_changes(&chain, hi);
    let mut stack = vec![(-b.clone(), b)];
    let mut isolated = Vec::new();
    while let Some((lo, hi)) = stack.pop() {
        match count(&lo, &hi) {
            0 => {}
            1 => isolated.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / Rat::from_integer(BigInt::from(2));
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    let two = Rat::from_integer(BigInt::from(2));
    let eps = Rat::new(BigInt::one(), BigInt::one() << 60u32);
    let mut roots: Vec<f64> = isolated
        .into_iter()
        .map(|(mut lo, mut hi)| {
            // Root lies in (lo, hi].
            if eval_rp(&chain[0], &hi).is_zero() {
                return rat_to_f64(&hi);
            }
            let s_hi = eval_rp(&chain[0], &hi).is_positive();
            while &hi - &lo > eps {
                let mid = (&lo + &hi) / &two;
                let v = eval_rp(&chain[0], &mid);
                if v.is_zero() {
                    return rat_to_f64(&mid);
                }
                if v.is_positive() == s_hi {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            rat_to_f64(&((&lo + &hi) / &two))
        })
        .collect();
    roots.sort_by(f64::total_cmp);
    roots
}

/// Splits a monic square-free polynomial with only real roots into irreducible factors
/// over the integers. Candidate factors are products of root subsets, tried by
/// increasing size and confirmed by exact division.
pub fn factor_real_rooted(p: &IntPolynomial) -> Result<Vec<IntPolynomial>> {
    if !p.lead().is_one() {
        return Err(Error::Precondition("factorization expects a monic polynomial".into()));
    }
    let mut roots = real_roots(p);
    if roots.len() != p.degree() {
        return Err(Error::Precondition(format!("{p} is not real-rooted and square-free")));
    }
    let mut rest = p.clone();
    let mut out = Vec::new();
    'search: loop {
        let d = rest.degree();
        if d == 0 {
            break;
        }
        for size in 1..=d / 2 {
            for subset in combinations(d, size) {
                let cand = monic_from_roots(subset.iter().map(|&i| roots[i]));
                if let Some(q) = rest.div_exact(&cand) {
                    out.push(cand);
                    rest = q;
                    let mut k = 0;
                    roots.retain(|_| {
                        let keep = !subset.contains(&k);
                        k += 1;
                        keep
                    });
                    continue 'search;
                }
            }
        }
        out.push(rest);
        break;
    }
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then(a.cmp(b)));
    Ok(out)
}

fn monic_from_roots(roots: impl Iterator<Item = f64>) -> IntPolynomial {
    let mut c = vec![1.0f64];
    for r in roots {
        let mut next = vec![0.0; c.len() + 1];
        for (i, a) in c.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= a * r;
        }
        c = next;
    }
    IntPolynomial::new(c.iter().map(|x| BigInt::from(x.round() as i64)).collect())
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// The roots of the monic quadratic `x^2 + b x + c` as `(p, q, d, r)` meaning
/// `(p + q sqrt d) / r` and `(p - q sqrt d) / r`, with `q > 0` and `gcd(p, q, r) = 1`.
pub fn quadratic_roots(f: &IntPolynomial) -> Option<(BigInt, BigInt, i64, BigInt)> {
    if f.degree() != 2 || !f.lead().is_one() {
        return None;
    }
    let c = &f.coeffs[0];
    let b = &f.coeffs[1];
    let disc = b * b - BigInt::from(4) * c;
    if !disc.is_positive() {
        return None;
    }
    let (s, free) = crate::quad::square_free_split(&disc);
    if free.is_one() {
        return None;
    }
    let (p, q, r) = (-b, s, BigInt::from(2));
    let g = p.gcd(&q).gcd(&r);
    Some((p / &g, q / &g, free.to_i64()?, r / &g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{chain, clique};

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn small_char_polys() {
        assert_eq!(char_poly(&clique(2).laplacian()).unwrap(), p(&[0, -2, 1]));
        assert_eq!(char_poly(&chain(3).laplacian()).unwrap(), p(&[0, 3, -4, 1]));
        // x (x - 4)^3
        assert_eq!(char_poly(&clique(4).laplacian()).unwrap(), p(&[0, -64, 48, -12, 1]));
    }

    #[test]
    fn integer_roots_with_quotient() {
        let (r, q) = integer_roots(&p(&[0, 3, -4, 1])).unwrap();
        assert_eq!(r, vec![0.into(), 1.into(), 3.into()]);
        assert_eq!(q, p(&[1]));
        let (r, _) = integer_roots(&p(&[0, -64, 48, -12, 1])).unwrap();
        assert_eq!(r, vec![0.into(), 4.into(), 4.into(), 4.into()]);
        // (x - 2)(x^2 - 6x + 7)
        let (r, q) = integer_roots(&p(&[-14, 19, -8, 1])).unwrap();
        assert_eq!(r, vec![2.into()]);
        assert_eq!(q, p(&[7, -6, 1]));
        assert_eq!(integer_roots(&p(&[])), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn rational_root_candidates() {
        // (2x - 1)(x + 3)
        assert_eq!(
            rational_roots(&p(&[-3, 5, 2])).unwrap(),
            vec![crate::quad::int(-3), crate::quad::rat(1, 2)]
        );
        assert!(rational_roots(&p(&[7, -6, 1])).unwrap().is_empty());
    }

    #[test]
    fn yun_decomposition() {
        // x (x - 4)^3 (x^2 - 5)^2
        let f = p(&[0, -4, 1]).mul(&p(&[-4, 1])).mul(&p(&[-4, 1]));
        let g = f.mul(&p(&[-5, 0, 1])).mul(&p(&[-5, 0, 1]));
        let sf = square_free(&g);
        assert_eq!(sf, vec![(p(&[0, 1]), 1), (p(&[-5, 0, 1]), 2), (p(&[-4, 1]), 3)]);
    }

    #[test]
    fn real_root_isolation() {
        let r = real_roots(&p(&[7, -6, 1]));
        assert!((r[0] - (3.0 - 2f64.sqrt())).abs() < 1e-14);
        assert!((r[1] - (3.0 + 2f64.sqrt())).abs() < 1e-14);
    }

    #[test]
    fn factorization_finds_irreducibles() {
        // (x^2 - 3x + 1)(x^3 - 3x - 1)(x - 2)
        let f = p(&[1, -3, 1]).mul(&p(&[-1, -3, 0, 1])).mul(&p(&[-2, 1]));
        let fs = factor_real_rooted(&f).unwrap();
        assert_eq!(fs, vec![p(&[-2, 1]), p(&[1, -3, 1]), p(&[-1, -3, 0, 1])]);
    }

    #[test]
    fn quadratic_closed_form() {
        assert_eq!(
            quadratic_roots(&p(&[11, -7, 1])).unwrap(),
            (7.into(), 1.into(), 5, 2.into())
        );
        assert_eq!(
            quadratic_roots(&p(&[7, -6, 1])).unwrap(),
            (3.into(), 1.into(), 2, 1.into())
        );
    }

    #[test]
    fn display() {
        assert_eq!(p(&[0, 3, -4, 1]).to_string(), "x^3 - 4x^2 + 3x");
    }
}
