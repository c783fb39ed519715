//! Exact scalars: big rationals and a single real algebraic extension
//! `Q[c]/(p(c))` with a designated real root, enough to write down the
//! geometric representation of every supported Coxeter system.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Rational = BigRational;

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("minimal polynomial must be monic of degree 1..={MAX_DEGREE}")]
    BadDegree,
    #[error("minimal polynomial is reducible over the rationals")]
    Reducible,
    #[error("isolating interval does not bracket exactly one real root")]
    BadInterval,
    #[error("cannot parse rational `{0}`")]
    Parse(String),
    #[error("field element has {got} coefficients, field degree is {want}")]
    Length { got: usize, want: usize },
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rational(s: &str) -> Result<Rational, FieldError> {
    let t = s.trim();
    let err = || FieldError::Parse(s.to_string());
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(t.parse().map_err(|_| err())?)),
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

// ---------------------------------------------------------------------------
// Dense univariate polynomials over Q, coefficients low degree first.
// ---------------------------------------------------------------------------

pub(crate) mod upoly {
    use super::*;

    pub fn trim(p: &mut Vec<Rational>) {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
    }

    pub fn degree(p: &[Rational]) -> Option<usize> {
        p.iter().rposition(|c| !c.is_zero())
    }

    pub fn eval(p: &[Rational], x: &Rational) -> Rational {
        p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = a.len().max(b.len());
        let mut out: Vec<Rational> = (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
                let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
                x - y
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(&mut out);
        out
    }

    pub fn scale(a: &[Rational], c: &Rational) -> Vec<Rational> {
        let mut out: Vec<Rational> = a.iter().map(|x| x * c).collect();
        trim(&mut out);
        out
    }

    /// Euclidean division; `b` must be nonzero.
    pub fn div_rem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let db = degree(b).expect("division by zero polynomial");
        let lead = b[db].clone();
        let mut r: Vec<Rational> = a.to_vec();
        trim(&mut r);
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![Rational::zero(); r.len() - db];
        while let Some(dr) = degree(&r) {
            if dr < db {
                break;
            }
            let c = &r[dr] / &lead;
            for i in 0..=db {
                let t = &c * &b[i];
                r[dr - db + i] -= t;
            }
            q[dr - db] = c;
            trim(&mut r);
        }
        trim(&mut q);
        (q, r)
    }

    pub fn rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        div_rem(a, b).1
    }

    pub fn monic(a: &[Rational]) -> Vec<Rational> {
        match degree(a) {
            Some(d) => {
                let l = a[d].clone();
                a[..=d].iter().map(|x| x / &l).collect()
            }
            None => Vec::new(),
        }
    }

    pub fn gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y);
            x = y;
            y = r;
        }
        monic(&x)
    }

    pub fn derivative(a: &[Rational]) -> Vec<Rational> {
        let mut out: Vec<Rational> = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * rat(i as i64))
            .collect();
        trim(&mut out);
        out
    }

    /// Returns `(g, s)` with `s*a ≡ g (mod m)`, `g = gcd(a, m)` monic.
    pub fn inverse_mod(a: &[Rational], m: &[Rational]) -> Option<Vec<Rational>> {
        let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
        trim(&mut r0);
        trim(&mut r1);
        let (mut s0, mut s1) = (Vec::<Rational>::new(), vec![Rational::one()]);
        while !r1.is_empty() {
            let (q, r) = div_rem(&r0, &r1);
            let s = sub(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 = gcd up to a constant, s0*a ≡ r0
        if degree(&r0) != Some(0) {
            return None;
        }
        let c = r0[0].clone();
        Some(rem(&scale(&s0, &(Rational::one() / c)), m))
    }

    fn sign(x: &Rational) -> i32 {
        if x.is_positive() {
            1
        } else if x.is_negative() {
            -1
        } else {
            0
        }
    }

    pub fn sturm_chain(p: &[Rational]) -> Vec<Vec<Rational>> {
        let mut chain = vec![p.to_vec(), derivative(p)];
        loop {
            let n = chain.len();
            if chain[n - 1].is_empty() {
                chain.pop();
                break;
            }
            let r = rem(&chain[n - 2], &chain[n - 1]);
            if r.is_empty() {
                break;
            }
            chain.push(r.iter().map(|c| -c).collect());
        }
        chain
    }

    fn variations(chain: &[Vec<Rational>], x: &Rational) -> usize {
        let signs: Vec<i32> = chain
            .iter()
            .map(|p| sign(&eval(p, x)))
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots of a squarefree `p` in `(a, b]`.
    pub fn count_roots(p: &[Rational], a: &Rational, b: &Rational) -> usize {
        let chain = sturm_chain(p);
        variations(&chain, a).saturating_sub(variations(&chain, b))
    }

}

// ---------------------------------------------------------------------------
// Irreducibility over Q (Kronecker's method).
// ---------------------------------------------------------------------------

fn primitive_integer_poly(p: &[Rational]) -> Vec<BigInt> {
    let l = p
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let e = &n / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1;
    }
    let neg: Vec<BigInt> = out.iter().map(|x| -x).collect();
    out.extend(neg);
    out
}

/// Lagrange interpolation through `(xs[i], ys[i])` over Q.
fn interpolate(xs: &[i64], ys: &[BigInt]) -> Vec<Rational> {
    let mut total: Vec<Rational> = Vec::new();
    for (i, &xi) in xs.iter().enumerate() {
        let mut basis = vec![Rational::one()];
        let mut denom = Rational::one();
        for (j, &xj) in xs.iter().enumerate() {
            if i != j {
                basis = upoly::mul(&basis, &[rat(-xj), rat(1)]);
                denom *= rat(xi - xj);
            }
        }
        let c = Rational::from_integer(ys[i].clone()) / denom;
        let term = upoly::scale(&basis, &c);
        let n = total.len().max(term.len());
        total.resize(n, Rational::zero());
        for (k, t) in term.into_iter().enumerate() {
            total[k] += t;
        }
    }
    upoly::trim(&mut total);
    total
}

/// Trial factorization: searches for an integer factor of degree at most
/// half the degree. Returns true iff none exists.
pub fn is_irreducible(p: &[Rational]) -> bool {
    let Some(deg) = upoly::degree(p) else {
        return false;
    };
    if deg <= 1 {
        return true;
    }
    let f = primitive_integer_poly(&p[..=deg]);
    let fq: Vec<Rational> = f.iter().cloned().map(Rational::from_integer).collect();
    if f[0].is_zero() {
        return false;
    }
    for d in 1..=deg / 2 {
        // d + 1 evaluation points where f does not vanish, smallest |value| first
        let mut pts: Vec<(i64, BigInt)> = (-20i64..=20)
            .map(|x| (x, upoly::eval(&fq, &rat(x)).to_integer()))
            .collect();
        if pts.iter().any(|(_, v)| v.is_zero()) {
            // integer root means a linear factor
            return false;
        }
        pts.sort_by(|a, b| a.1.abs().cmp(&b.1.abs()).then(a.0.cmp(&b.0)));
        pts.truncate(d + 1);
        let xs: Vec<i64> = pts.iter().map(|p| p.0).collect();
        let divs: Vec<Vec<BigInt>> = pts.iter().map(|p| divisors(&p.1)).collect();
        let mut idx = vec![0usize; d + 1];
        loop {
            let ys: Vec<BigInt> = idx.iter().enumerate().map(|(i, &k)| divs[i][k].clone()).collect();
            let g = interpolate(&xs, &ys);
            if let Some(dg) = upoly::degree(&g) {
                if dg >= 1 && g.iter().all(|c| c.is_integer()) {
                    let (_, r) = upoly::div_rem(&fq, &g);
                    if r.is_empty() {
                        return false;
                    }
                }
            }
            // next combination
            let mut i = 0;
            loop {
                if i == idx.len() {
                    break;
                }
                idx[i] += 1;
                if idx[i] < divs[i].len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i == idx.len() {
                break;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Tower field.
// ---------------------------------------------------------------------------

/// `Q[c]/(p(c))` with a designated real root of `p` inside `interval`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerField {
    minimal_poly: Vec<Rational>,
    interval: (Rational, Rational),
}

impl TowerField {
    pub fn new(minimal_poly: Vec<Rational>, interval: (Rational, Rational)) -> Result<Arc<Self>, FieldError> {
        let mut p = minimal_poly;
        upoly::trim(&mut p);
        let deg = upoly::degree(&p).ok_or(FieldError::BadDegree)?;
        if deg == 0 || deg > MAX_DEGREE || !p[deg].is_one() {
            return Err(FieldError::BadDegree);
        }
        if !is_irreducible(&p) {
            return Err(FieldError::Reducible);
        }
        let (a, b) = &interval;
        if a >= b {
            return Err(FieldError::BadInterval);
        }
        let fa = upoly::eval(&p, a);
        let fb = upoly::eval(&p, b);
        if fa.is_zero() || fb.is_zero() || fa.is_positive() == fb.is_positive() {
            return Err(FieldError::BadInterval);
        }
        if upoly::count_roots(&p, a, b) != 1 {
            return Err(FieldError::BadInterval);
        }
        Ok(Arc::new(TowerField { minimal_poly: p, interval }))
    }

    pub fn rational() -> Arc<Self> {
        Arc::new(TowerField {
            minimal_poly: vec![Rational::zero(), Rational::one()],
            interval: (rat(-1), rat(1)),
        })
    }

    pub fn degree(&self) -> usize {
        self.minimal_poly.len() - 1
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn minimal_poly(&self) -> &[Rational] {
        &self.minimal_poly
    }

    pub fn interval(&self) -> &(Rational, Rational) {
        &self.interval
    }

    /// Halves the isolating interval.
    fn bisect(&self, iv: &(Rational, Rational)) -> (Rational, Rational) {
        let (a, b) = iv;
        let mid = (a + b) / rat(2);
        let fm = upoly::eval(&self.minimal_poly, &mid);
        if fm.is_zero() {
            return (mid.clone(), mid);
        }
        let fa = upoly::eval(&self.minimal_poly, a);
        if fa.is_positive() == fm.is_positive() {
            (mid, b.clone())
        } else {
            (a.clone(), mid)
        }
    }

    /// An isolating interval of width below `eps`.
    pub fn refine(&self, eps: &Rational) -> (Rational, Rational) {
        let mut iv = self.interval.clone();
        while &(&iv.1 - &iv.0) >= eps {
            iv = self.bisect(&iv);
        }
        iv
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        FieldElement { field: self.clone(), coeffs: vec![Rational::zero(); self.degree()] }
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        self.from_rational(Rational::one())
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> FieldElement {
        self.from_rational(rat(n))
    }

    pub fn from_rational(self: &Arc<Self>, r: Rational) -> FieldElement {
        let mut coeffs = vec![Rational::zero(); self.degree()];
        coeffs[0] = r;
        FieldElement { field: self.clone(), coeffs }
    }

    /// The designated root `c` (equals a rational in degree one).
    pub fn generator(self: &Arc<Self>) -> FieldElement {
        if self.is_rational() {
            return self.from_rational(-self.minimal_poly[0].clone());
        }
        let mut coeffs = vec![Rational::zero(); self.degree()];
        coeffs[1] = Rational::one();
        FieldElement { field: self.clone(), coeffs }
    }

    /// Element from coefficients in powers of `c`, reduced mod `p`.
    pub fn from_poly(self: &Arc<Self>, poly: &[Rational]) -> FieldElement {
        let mut r = if self.is_rational() {
            vec![upoly::eval(poly, &-self.minimal_poly[0].clone())]
        } else {
            upoly::rem(poly, &self.minimal_poly)
        };
        r.resize(self.degree(), Rational::zero());
        FieldElement { field: self.clone(), coeffs: r }
    }

    pub fn from_coeffs(self: &Arc<Self>, coeffs: Vec<Rational>) -> Result<FieldElement, FieldError> {
        if coeffs.len() != self.degree() {
            return Err(FieldError::Length { got: coeffs.len(), want: self.degree() });
        }
        Ok(FieldElement { field: self.clone(), coeffs })
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            minimal_poly: self.minimal_poly.iter().map(format_rational).collect(),
            interval: [format_rational(&self.interval.0), format_rational(&self.interval.1)],
        }
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Arc<Self>, FieldError> {
        let p = spec.minimal_poly.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
        let a = parse_rational(&spec.interval[0])?;
        let b = parse_rational(&spec.interval[1])?;
        if upoly::degree(&p) == Some(1) {
            // degree one: any bracket of the rational root is accepted
            let mut p = p;
            upoly::trim(&mut p);
            if !p[1].is_one() {
                return Err(FieldError::BadDegree);
            }
            let root = -p[0].clone();
            if !(a < root && root < b) {
                return Err(FieldError::BadInterval);
            }
            return Ok(Arc::new(TowerField { minimal_poly: p, interval: (a, b) }));
        }
        TowerField::new(p, (a, b))
    }
}

/// Serialized form of a [`TowerField`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub minimal_poly: Vec<String>,
    pub interval: [String; 2],
}

/// Element of a [`TowerField`]: a polynomial in `c` of degree below the
/// field degree.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<TowerField>,
    coeffs: Vec<Rational>,
}

impl FieldElement {
    pub fn field(&self) -> &Arc<TowerField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The value as a rational, if it lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_field(&self, other: &FieldElement) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || self.field == other.field,
            "field mismatch"
        );
    }

    pub fn inv(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return None;
        }
        if self.field.is_rational() {
            return Some(self.field.from_rational(self.coeffs[0].recip()));
        }
        let mut a = self.coeffs.clone();
        upoly::trim(&mut a);
        let inv = upoly::inverse_mod(&a, &self.field.minimal_poly)?;
        Some(self.field.from_poly(&inv))
    }

    /// Sign under the designated real embedding.
    pub fn sign(&self) -> i32 {
        let mut g = self.coeffs.clone();
        upoly::trim(&mut g);
        if g.is_empty() {
            return 0;
        }
        if upoly::degree(&g) == Some(0) {
            return if g[0].is_positive() { 1 } else { -1 };
        }
        // p irreducible, so gcd(g, p) = 1 certifies g(c) != 0
        debug_assert_eq!(upoly::degree(&upoly::gcd(&g, &self.field.minimal_poly)), Some(0));
        let mut iv = self.field.interval.clone();
        loop {
            let (lo, hi) = eval_interval(&g, &iv);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            iv = self.field.bisect(&iv);
        }
    }

    pub fn pow(&self, mut e: u32) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Coefficients as strings, for serialization.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }
}

/// Horner evaluation over a rational interval.
fn eval_interval(p: &[Rational], iv: &(Rational, Rational)) -> (Rational, Rational) {
    let mut lo = Rational::zero();
    let mut hi = Rational::zero();
    for c in p.iter().rev() {
        let cands = [&lo * &iv.0, &lo * &iv.1, &hi * &iv.0, &hi * &iv.1];
        let mn = cands.iter().min().unwrap().clone();
        let mx = cands.iter().max().unwrap().clone();
        lo = mn + c;
        hi = mx + c;
    }
    (lo, hi)
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    /// Order of the real embedding.
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = format_rational(c);
            parts.push(match i {
                0 => cs,
                1 => format!("{cs}*c"),
                _ => format!("{cs}*c^{i}"),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.check_field(rhs);
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.check_field(rhs);
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.check_field(rhs);
        if self.field.is_rational() {
            return FieldElement { field: self.field.clone(), coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]] };
        }
        let prod = upoly::mul(&self.coeffs, &rhs.coeffs);
        self.field.from_poly(&prod)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        &self + &rhs
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        &self - &rhs
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        &self * &rhs
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

// ---------------------------------------------------------------------------
// Fields of 2cos(pi/m).
// ---------------------------------------------------------------------------

/// Integer polynomial `x^n - 1` divided by the cyclotomic polynomials of all
/// proper divisors of `n`.
fn cyclotomic(n: u32) -> Vec<Rational> {
    let mut p = vec![Rational::zero(); n as usize + 1];
    p[0] = rat(-1);
    p[n as usize] = rat(1);
    for d in 1..n {
        if n.is_multiple_of(d) {
            let (q, r) = upoly::div_rem(&p, &cyclotomic(d));
            debug_assert!(r.is_empty());
            p = q;
        }
    }
    p
}

/// Writes a palindromic `f` of degree `2d` as `x^d P(x + 1/x)`; returns `P`.
fn palindromic_to_trace(f: &[Rational]) -> Vec<Rational> {
    let two_d = upoly::degree(f).expect("nonzero");
    assert!(two_d.is_multiple_of(2));
    let d = two_d / 2;
    let mut g = f.to_vec();
    let mut out = vec![Rational::zero(); d + 1];
    for j in (0..=d).rev() {
        let c = g.get(d + j).cloned().unwrap_or_else(Rational::zero);
        if c.is_zero() {
            continue;
        }
        out[j] = c.clone();
        // subtract c * x^(d-j) * (x^2+1)^j
        let mut t = vec![Rational::one()];
        for _ in 0..j {
            t = upoly::mul(&t, &[rat(1), rat(0), rat(1)]);
        }
        let mut shifted = vec![Rational::zero(); d - j];
        shifted.extend(t);
        g = upoly::sub(&g, &upoly::scale(&shifted, &c));
    }
    debug_assert!(g.is_empty());
    out
}

/// The field `Q(2cos(pi/m))` and the element `2cos(pi/m)` in it. `None`
/// stands for `m = ∞`, where the value is 2.
pub fn field_for_cos(m: Option<u32>) -> (Arc<TowerField>, FieldElement) {
    match m {
        None => {
            let f = TowerField::rational();
            let two = f.from_int(2);
            (f, two)
        }
        Some(m) => {
            assert!(m >= 2, "Coxeter label must be at least 2");
            match m {
                2 => {
                    let f = TowerField::rational();
                    let z = f.zero();
                    (f, z)
                }
                3 => {
                    let f = TowerField::rational();
                    let o = f.one();
                    (f, o)
                }
                _ => {
                    let p = palindromic_to_trace(&cyclotomic(2 * m));
                    // 2cos(pi/m) is the largest root and p has no rational roots
                    let mut lo = rat(0);
                    let mut hi = rat(2);
                    while upoly::count_roots(&p, &lo, &hi) > 1 {
                        let mid = (&lo + &hi) / rat(2);
                        if upoly::count_roots(&p, &mid, &hi) >= 1 {
                            lo = mid;
                        } else {
                            hi = mid;
                        }
                    }
                    let field = TowerField::new(p, (lo, hi)).expect("cyclotomic trace polynomial is irreducible");
                    let c = field.generator();
                    (field, c)
                }
            }
        }
    }
}
