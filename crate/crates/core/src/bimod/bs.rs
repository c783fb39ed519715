//! Bott–Samelson bimodules `θ_{s_1} ... θ_{s_k}(d)` as free left modules.
//!
//! The basis tensor `e_ε = 1 ⊗ x_{s_1}^{ε_1} ⊗ ... ⊗ x_{s_k}^{ε_k}` is
//! indexed by the bitmask with bit `i` equal to `ε_{i+1}`; it has degree
//! `2|ε| - d`. An element is the vector of its left coefficients.

use std::collections::HashMap;
use std::sync::Arc;

use super::poly::{Mono, Poly};
use super::ring::PolyRing;

pub type BsElem = Vec<Poly>;

#[derive(Debug, Clone)]
pub struct BSBimodule {
    ring: Arc<PolyRing>,
    word: Vec<usize>,
    shift: i32,
    /// `table[i][ε] = e_ε · y_i`.
    table: Vec<Vec<BsElem>>,
}

fn right_mul_var_with(table: &[Vec<BsElem>], x: &BsElem, i: usize) -> BsElem {
    let mut out = vec![Poly::zero(); x.len()];
    for (eps, c) in x.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (delta, d) in table[i][eps].iter().enumerate() {
            if !d.is_zero() {
                out[delta] = &out[delta] + &(c * d);
            }
        }
    }
    out
}

fn right_mul_with(table: &[Vec<BsElem>], x: &BsElem, f: &Poly) -> BsElem {
    let mut cache: HashMap<Mono, BsElem> = HashMap::new();
    let mut out = vec![Poly::zero(); x.len()];
    for (m, c) in f.terms() {
        let xm = power_product(table, x, m, &mut cache);
        for (o, p) in out.iter_mut().zip(&xm) {
            if !p.is_zero() {
                *o = &*o + &p.scale(c);
            }
        }
    }
    out
}

/// `x · y^m`, memoized over monomials.
fn power_product(table: &[Vec<BsElem>], x: &BsElem, m: &Mono, cache: &mut HashMap<Mono, BsElem>) -> BsElem {
    if let Some(v) = cache.get(m) {
        return v.clone();
    }
    let v = match m.iter().rposition(|e| *e > 0) {
        None => x.clone(),
        Some(i) => {
            let mut lower = m.clone();
            lower[i] -= 1;
            let base = power_product(table, x, &lower, cache);
            right_mul_var_with(table, &base, i)
        }
    };
    cache.insert(m.clone(), v.clone());
    v
}

impl BSBimodule {
    pub fn build(ring: &Arc<PolyRing>, word: &[usize], shift: i32) -> Self {
        let n = ring.nvars();
        // the ring itself: e_0 · y_i = y_i e_0
        let mut table: Vec<Vec<BsElem>> = (0..n).map(|i| vec![vec![ring.var(i)]]).collect();
        for (j, &s) in word.iter().enumerate() {
            let size = 1usize << j;
            let mut next: Vec<Vec<BsElem>> = vec![Vec::with_capacity(2 * size); n];
            for (i, row) in next.iter_mut().enumerate() {
                for eps in 0..2 * size {
                    let low = eps & (size - 1);
                    let t = eps >> j;
                    let g = if t == 1 { ring.x(s) * &ring.var(i) } else { ring.var(i) };
                    // e_low ⊗ g with g = a + b x_s, a and b invariant under s
                    let (a, b) = ring.split(s, &g);
                    let mut unit = vec![Poly::zero(); size];
                    unit[low] = ring.one();
                    let ra = right_mul_with(&table, &unit, &a);
                    let rb = right_mul_with(&table, &unit, &b);
                    row.push(ra.into_iter().chain(rb).collect());
                }
            }
            table = next;
        }
        BSBimodule { ring: ring.clone(), word: word.to_vec(), shift, table }
    }

    /// The bimodule `R(d)`.
    pub fn ring_module(ring: &Arc<PolyRing>, shift: i32) -> Self {
        Self::build(ring, &[], shift)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Rank `2^k` as a free left module.
    pub fn rank(&self) -> usize {
        1 << self.word.len()
    }

    pub fn basis_degree(&self, eps: usize) -> i32 {
        2 * eps.count_ones() as i32 - self.shift
    }

    pub fn basis(&self, eps: usize) -> BsElem {
        let mut v = self.zero();
        v[eps] = self.ring.one();
        v
    }

    pub fn zero(&self) -> BsElem {
        vec![Poly::zero(); self.rank()]
    }

    pub fn structure(&self, i: usize, eps: usize) -> &BsElem {
        &self.table[i][eps]
    }

    pub fn right_mul_var(&self, x: &BsElem, i: usize) -> BsElem {
        right_mul_var_with(&self.table, x, i)
    }

    pub fn right_mul(&self, x: &BsElem, f: &Poly) -> BsElem {
        right_mul_with(&self.table, x, f)
    }

    pub fn left_mul(&self, f: &Poly, x: &BsElem) -> BsElem {
        x.iter().map(|c| f * c).collect()
    }

    /// Homogeneous of degree `deg`, or zero.
    pub fn is_homogeneous(&self, x: &BsElem, deg: i32) -> bool {
        x.iter().enumerate().all(|(eps, c)| {
            c.terms().all(|(m, _)| 2 * super::poly::mono_degree(m) as i32 + self.basis_degree(eps) == deg)
        })
    }

    /// The action of every pair of variables commutes on every basis tensor.
    pub fn right_action_commutes(&self) -> bool {
        let n = self.ring.nvars();
        (0..self.rank()).all(|eps| {
            let e = self.basis(eps);
            (0..n).all(|i| {
                (0..i).all(|j| {
                    let a = self.right_mul_var(&self.right_mul_var(&e, i), j);
                    let b = self.right_mul_var(&self.right_mul_var(&e, j), i);
                    a == b
                })
            })
        })
    }
}

pub fn add(a: &BsElem, b: &BsElem) -> BsElem {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &BsElem, b: &BsElem) -> BsElem {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn is_zero(a: &BsElem) -> bool {
    a.iter().all(Poly::is_zero)
}
