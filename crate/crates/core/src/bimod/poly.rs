//! Sparse multivariate polynomials over a [`TowerField`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::field::{FieldElement, TowerField};

/// Exponent vector; its length is the number of variables.
pub type Mono = Vec<u32>;

pub fn mono_degree(m: &[u32]) -> u32 {
    m.iter().sum()
}

/// All monomials of total degree `d` in `n` variables, in lexicographic order.
pub fn monomials(n: usize, d: u32) -> Vec<Mono> {
    fn rec(n: usize, d: u32, prefix: &mut Mono, out: &mut Vec<Mono>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// No stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, FieldElement>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(n: usize, c: FieldElement) -> Self {
        Self::monomial(vec![0; n], c)
    }

    pub fn monomial(m: Mono, c: FieldElement) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn var(field: &Arc<TowerField>, n: usize, i: usize) -> Self {
        let mut m = vec![0; n];
        m[i] = 1;
        Self::monomial(m, field.one())
    }

    /// `Σ c_i y_i`.
    pub fn linear(coeffs: &[FieldElement]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero();
        for (i, c) in coeffs.iter().enumerate() {
            let mut m = vec![0; n];
            m[i] = 1;
            p.add_term(m, c.clone());
        }
        p
    }

    pub fn add_term(&mut self, m: Mono, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e = &*e + &c;
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &FieldElement)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[u32]) -> Option<&FieldElement> {
        self.terms.get(m)
    }

    /// Constant term, if nonzero.
    pub fn constant_term(&self) -> Option<&FieldElement> {
        self.terms.iter().next().filter(|(m, _)| m.iter().all(|e| *e == 0)).map(|(_, c)| c)
    }

    /// Largest total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| mono_degree(m)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| mono_degree(m));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul_mono(&self, mono: &[u32], c: &FieldElement) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.iter().zip(mono).map(|(a, b)| a + b).collect(), x * c))
                .collect(),
        }
    }

    pub fn eval(&self, field: &Arc<TowerField>, point: &[FieldElement]) -> FieldElement {
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Ring morphism `y_i -> images[i]` into polynomials in `target_vars`
    /// variables.
    pub fn substitute(&self, images: &[Poly], target_vars: usize) -> Poly {
        let mut powers: HashMap<(usize, u32), Poly> = HashMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::monomial(vec![0; target_vars], c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = powers.entry((i, e)).or_insert_with(|| {
                    let mut acc = images[i].clone();
                    for _ in 1..e {
                        acc = &acc * &images[i];
                    }
                    acc
                });
                t = &t * p;
            }
            out = &out + &t;
        }
        out
    }

    /// Exact quotient by a nonzero linear form, or `None` if it does not
    /// divide.
    pub fn div_linear(&self, l: &Poly) -> Option<Poly> {
        let (pivot, lead) = l
            .terms
            .iter()
            .find_map(|(m, c)| m.iter().position(|e| *e == 1).map(|i| (i, c.clone())))?;
        let lead_inv = lead.inv()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        loop {
            // a term with the largest exponent of the pivot variable
            let next = rem
                .terms
                .iter()
                .max_by_key(|(m, _)| m[pivot])
                .map(|(m, c)| (m.clone(), c.clone()));
            let Some((mut m, c)) = next else {
                return Some(quot);
            };
            if m[pivot] == 0 {
                return None;
            }
            m[pivot] -= 1;
            let q = &c * &lead_inv;
            rem = &rem - &l.mul_mono(&m, &q);
            quot.add_term(m, q);
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (mut big, small) = if self.len() >= rhs.len() { (self.clone(), rhs) } else { (rhs.clone(), self) };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    // monomial exponents add
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.iter().zip(mb).map(|(a, b)| a + b).collect(), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let vars: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| **e > 0)
                    .map(|(i, e)| if *e == 1 { format!("y{i}") } else { format!("y{i}^{e}") })
                    .collect();
                if vars.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
