//! The Hecke algebra over `Z[v, v^-1]` in the standard basis `T_x`, with
//! `T_s^2 = q + (q - 1) T_s` and `q = v^-2`, together with the trace, the
//! bar involution and the Kazhdan–Lusztig basis.
//!
//! Normalization: `C'_s = v(1 + T_s)`. Writing `H_x = v^{l(x)} T_x`, the
//! element `C'_w` equals `H_w + sum_{x < w} h_{x,w} H_x` with
//! `h_{x,w} ∈ v Z[v]`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde_json::{Map, Value};

use crate::coxeter::{CoxeterError, Elem, GroupTable};
use crate::laurent::LaurentPoly;

/// Finite linear combination of `T_x`.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct HeckeElement {
    terms: BTreeMap<Elem, LaurentPoly>,
}

impl HeckeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `T_x`.
    pub fn t(x: Elem) -> Self {
        Self::term(x, LaurentPoly::one())
    }

    pub fn term(x: Elem, c: LaurentPoly) -> Self {
        let mut h = Self::zero();
        h.add_term(x, &c);
        h
    }

    pub fn scalar(c: LaurentPoly) -> Self {
        Self::term(Elem(0), c)
    }

    pub fn add_term(&mut self, x: Elem, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(x).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&x);
        }
    }

    pub fn coeff(&self, x: Elem) -> LaurentPoly {
        self.terms.get(&x).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Elem, &LaurentPoly)> + '_ {
        self.terms.iter().map(|(x, c)| (*x, c))
    }

    pub fn support(&self) -> impl Iterator<Item = Elem> + '_ {
        self.terms.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &HeckeElement) -> HeckeElement {
        let mut out = self.clone();
        for (x, c) in &other.terms {
            out.add_term(*x, c);
        }
        out
    }

    pub fn sub(&self, other: &HeckeElement) -> HeckeElement {
        self.add(&other.scale(&LaurentPoly::constant(-1)))
    }

    pub fn scale(&self, c: &LaurentPoly) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (x, a) in &self.terms {
            out.add_term(*x, &(a * c));
        }
        out
    }

    /// `tau(sum p_x T_x) = p_e`.
    pub fn tau(&self) -> LaurentPoly {
        self.coeff(Elem(0))
    }

    /// Image in the group algebra under `v = 1`.
    pub fn eval_q1(&self) -> BTreeMap<Elem, BigInt> {
        self.terms
            .iter()
            .map(|(x, c)| (*x, c.eval_q1()))
            .filter(|(_, c)| *c != BigInt::from(0))
            .collect()
    }

    pub fn to_json(&self, g: &GroupTable) -> Value {
        let map: Map<String, Value> = self
            .terms
            .iter()
            .map(|(x, c)| (g.format(*x), serde_json::to_value(c).expect("serializable")))
            .collect();
        Value::Object(map)
    }
}

/// Hecke algebra of an enumerated group.
#[derive(Clone, Copy)]
pub struct HeckeAlgebra<'g> {
    group: &'g GroupTable,
}

impl<'g> HeckeAlgebra<'g> {
    pub fn new(group: &'g GroupTable) -> Self {
        HeckeAlgebra { group }
    }

    pub fn group(&self) -> &'g GroupTable {
        self.group
    }

    pub fn one(&self) -> HeckeElement {
        HeckeElement::t(Elem(0))
    }

    pub fn t_gen(&self, s: usize) -> HeckeElement {
        HeckeElement::t(self.group.generator(s))
    }

    /// `C'_s = v(1 + T_s)`.
    pub fn c_gen(&self, s: usize) -> HeckeElement {
        self.one().add(&self.t_gen(s)).scale(&LaurentPoly::v())
    }

    /// `a * T_s`.
    pub fn mul_gen(&self, a: &HeckeElement, s: usize) -> Result<HeckeElement, CoxeterError> {
        let q = LaurentPoly::q();
        let q_minus_1 = &q - &LaurentPoly::one();
        let mut out = HeckeElement::zero();
        for (x, c) in a.terms() {
            let xs = self.group.right_mul_gen(x, s).ok_or(CoxeterError::OutOfRange)?;
            if self.group.length(xs) > self.group.length(x) {
                out.add_term(xs, c);
            } else {
                out.add_term(xs, &(c * &q));
                out.add_term(x, &(c * &q_minus_1));
            }
        }
        Ok(out)
    }

    pub fn mul(&self, a: &HeckeElement, b: &HeckeElement) -> Result<HeckeElement, CoxeterError> {
        let mut out = HeckeElement::zero();
        for (y, c) in b.terms() {
            let mut part = a.scale(c);
            for &s in self.group.word(y) {
                part = self.mul_gen(&part, s)?;
            }
            out = out.add(&part);
        }
        Ok(out)
    }

    /// `bar(T_s) = T_s^{-1} = q^-1 T_s + (q^-1 - 1)`.
    pub fn bar_gen(&self, s: usize) -> HeckeElement {
        let qi = LaurentPoly::q_inv();
        self.t_gen(s).scale(&qi).add(&HeckeElement::scalar(&qi - &LaurentPoly::one()))
    }

    pub fn bar(&self, a: &HeckeElement) -> Result<HeckeElement, CoxeterError> {
        let mut out = HeckeElement::zero();
        for (x, c) in a.terms() {
            let mut part = HeckeElement::scalar(c.bar());
            for &s in self.group.word(x) {
                part = self.mul(&part, &self.bar_gen(s))?;
            }
            out = out.add(&part);
        }
        Ok(out)
    }

    /// `(1 + T_{s_1}) ... (1 + T_{s_k})`.
    pub fn bs_character(&self, word: &[usize]) -> Result<HeckeElement, CoxeterError> {
        word.iter().try_fold(self.one(), |acc, &s| {
            let ts = self.mul_gen(&acc, s)?;
            Ok(acc.add(&ts))
        })
    }

    /// `b_{s_1} ... b_{s_k}` with `b_s = C'_s`.
    pub fn bs_character_normalized(&self, word: &[usize]) -> Result<HeckeElement, CoxeterError> {
        Ok(self.bs_character(word)?.scale(&LaurentPoly::monomial(word.len() as i32, 1)))
    }

    /// Coefficient of `H_x = v^{l(x)} T_x`.
    pub fn h_coeff(&self, a: &HeckeElement, x: Elem) -> LaurentPoly {
        a.coeff(x).shift(-(self.group.length(x) as i32))
    }
}

/// The Kazhdan–Lusztig basis on the enumerated range.
#[derive(Clone, Debug)]
pub struct KLTable {
    basis: Vec<HeckeElement>,
}

impl KLTable {
    /// Inductive construction: `C'_w = C'_{ws} C'_s - sum_z mu(z) C'_z`,
    /// where the correction removes every `H_z` coefficient outside `v Z[v]`.
    pub fn build(group: &GroupTable) -> Result<Self, CoxeterError> {
        let hecke = HeckeAlgebra::new(group);
        let mut basis: Vec<HeckeElement> = Vec::with_capacity(group.len());
        for w in group.elements() {
            if w == Elem(0) {
                basis.push(hecke.one());
                continue;
            }
            let word = group.word(w);
            let s = *word.last().expect("nonidentity");
            let ws = group.right_mul_gen(w, s).expect("descent stays in range");
            let mut c = hecke.mul(&basis[ws.0], &hecke.c_gen(s))?;
            for len in (0..group.length(w)).rev() {
                let level: Vec<Elem> = c.support().filter(|&x| group.length(x) == len).collect();
                for x in level {
                    let low = hecke.h_coeff(&c, x).truncate_above(0);
                    if low.is_zero() {
                        continue;
                    }
                    // bar-invariant correction with the same nonpositive part;
                    // it only touches elements shorter than x
                    let corr = &(&low + &low.bar()) - &LaurentPoly::constant(low.coeff(0));
                    c = c.sub(&basis[x.0].scale(&corr));
                }
            }
            basis.push(c);
        }
        Ok(KLTable { basis })
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// `C'_w` in the `T` basis.
    pub fn element(&self, w: Elem) -> &HeckeElement {
        &self.basis[w.0]
    }

    /// `P_{x,w}`: the `T_x` coefficient of `C'_w` divided by `v^{l(w)}`, a
    /// polynomial in `q = v^-2`.
    pub fn kl_poly(&self, group: &GroupTable, x: Elem, w: Elem) -> LaurentPoly {
        self.basis[w.0].coeff(x).shift(-(group.length(w) as i32))
    }

    /// Coefficients of `a` in the `C'` basis by unitriangular
    /// back-substitution, longest elements first.
    pub fn expand(&self, group: &GroupTable, a: &HeckeElement) -> Result<BTreeMap<Elem, LaurentPoly>, CoxeterError> {
        let hecke = HeckeAlgebra::new(group);
        let mut rest = a.clone();
        let mut out = BTreeMap::new();
        while let Some(x) = rest.support().max_by_key(|&x| (group.length(x), x)) {
            if x.0 >= self.basis.len() {
                return Err(CoxeterError::OutOfRange);
            }
            let c = hecke.h_coeff(&rest, x);
            rest = rest.sub(&self.basis[x.0].scale(&c));
            out.insert(x, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn quadratic_relation() {
        let g = GroupTable::builtin("A2").unwrap();
        let h = HeckeAlgebra::new(&g);
        let s = g.parse("s").unwrap();
        let sq = h.mul(&h.t_gen(0), &h.t_gen(0)).unwrap();
        let mut expected = HeckeElement::scalar(LaurentPoly::q());
        expected.add_term(s, &lp(&[(-2, 1), (0, -1)]));
        assert_eq!(sq, expected);
        let x = h.c_gen(1);
        assert_eq!(h.mul(&h.one(), &x).unwrap(), x);
    }

    #[test]
    fn bs_expansion_sts() {
        let g = GroupTable::builtin("A2").unwrap();
        let h = HeckeAlgebra::new(&g);
        let b = h.bs_character(&[0, 1, 0]).unwrap();
        let one_q = lp(&[(0, 1), (-2, 1)]);
        assert_eq!(b.coeff(g.parse("e").unwrap()), one_q);
        assert_eq!(b.coeff(g.parse("s").unwrap()), one_q);
        for w in ["t", "st", "ts", "sts"] {
            assert!(b.coeff(g.parse(w).unwrap()).is_one(), "{w}");
        }
        assert_eq!(b.tau(), one_q);
        assert!(h.one().tau().is_one());
        assert!(h.t_gen(0).tau().is_zero());
    }

    #[test]
    fn bar_of_generator() {
        let g = GroupTable::builtin("A2").unwrap();
        let h = HeckeAlgebra::new(&g);
        let b = h.bar(&h.t_gen(0)).unwrap();
        assert_eq!(b.coeff(g.generator(0)), LaurentPoly::q_inv());
        assert_eq!(b.tau(), lp(&[(2, 1), (0, -1)]));
        assert_eq!(h.bar(&h.one()).unwrap(), h.one());
        for x in g.elements() {
            let t = HeckeElement::t(x);
            assert_eq!(h.bar(&h.bar(&t).unwrap()).unwrap(), t);
        }
        // bar(T_s) T_s = 1
        assert_eq!(h.mul(&b, &h.t_gen(0)).unwrap(), h.one());
    }

    #[test]
    fn kl_small_examples() {
        let g = GroupTable::builtin("A2").unwrap();
        let h = HeckeAlgebra::new(&g);
        let kl = KLTable::build(&g).unwrap();
        assert_eq!(kl.element(Elem(0)), &h.one());
        let s = g.generator(0);
        let cs = kl.element(s).clone();
        assert_eq!(cs, h.c_gen(0));
        let v_plus = lp(&[(1, 1), (-1, 1)]);
        assert_eq!(h.mul(&cs, &cs).unwrap(), cs.scale(&v_plus));
        let sts = g.parse("sts").unwrap();
        let prod = h.mul(&h.mul(&cs, &h.c_gen(1)).unwrap(), &cs).unwrap();
        assert_eq!(prod, kl.element(sts).add(&cs));
        let coeffs = kl.expand(&g, &prod).unwrap();
        assert_eq!(coeffs.len(), 2);
        assert!(coeffs[&sts].is_one() && coeffs[&s].is_one());
        assert!(kl.expand(&g, &HeckeElement::zero()).unwrap().is_empty());
        // every KL polynomial of A2 is 1
        for w in g.elements() {
            for x in g.elements() {
                let p = kl.kl_poly(&g, x, w);
                assert_eq!(p.is_one(), g.bruhat_leq(x, w));
                assert_eq!(p.is_zero(), !g.bruhat_leq(x, w));
            }
        }
    }

    #[test]
    fn infinite_dihedral_truncated() {
        let g = GroupTable::builtin("I2(inf)").unwrap();
        let kl = KLTable::build(&g).unwrap();
        let h = HeckeAlgebra::new(&g);
        for w in g.elements() {
            assert_eq!(&h.bar(kl.element(w)).unwrap(), kl.element(w));
            for x in g.elements() {
                assert_eq!(kl.kl_poly(&g, x, w).is_one(), g.bruhat_leq(x, w));
            }
        }
        let top = g.elements().last().unwrap();
        let up = 1 - *g.word(top).last().unwrap();
        assert!(h.mul_gen(&HeckeElement::t(top), up).is_err());
        assert!(h.mul_gen(&HeckeElement::t(top), 1 - up).is_ok());
    }
}
