//! Character-level computations for Bott–Samelson words.
//!
//! Graded shifts follow `(M(n))_i = M_{i+n}`: the generator of `R(n)` sits
//! in degree `-n`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::coxeter::{CoxeterError, Elem, GroupTable};
use crate::hecke::{HeckeAlgebra, HeckeElement, KLTable};
use crate::laurent::LaurentPoly;

#[derive(Debug, Error)]
pub enum DecatError {
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error("trace {0} is not a polynomial in q with nonnegative coefficients")]
    BadTrace(LaurentPoly),
    #[error("word of length {0} is too long for subsequence counting")]
    TooLong(usize),
}

/// Multiset of shifts `{d_1, d_2, ...}` standing for `⊕ R(d_i)`, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct GradedShiftVector(Vec<i32>);

impl GradedShiftVector {
    pub fn new(mut shifts: Vec<i32>) -> Self {
        shifts.sort_unstable();
        GradedShiftVector(shifts)
    }

    pub fn shifts(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Degrees in which the free generators live.
    pub fn generator_degrees(&self) -> Vec<i32> {
        let mut d: Vec<i32> = self.0.iter().map(|s| -s).collect();
        d.sort_unstable();
        d
    }

    pub fn from_generator_degrees(degrees: &[i32]) -> Self {
        Self::new(degrees.iter().map(|d| -d).collect())
    }

    /// `dim (⊕ R(d_i))_n` when `R` has Hilbert series `1/(1-t^2)^dim_v`.
    pub fn graded_dim(&self, degree: i32, dim_v: usize) -> u64 {
        self.0
            .iter()
            .map(|&s| {
                let k = degree + s;
                if k < 0 || k % 2 != 0 {
                    0
                } else {
                    poly_ring_dim(dim_v, (k / 2) as usize)
                }
            })
            .sum()
    }
}

/// Number of monomials of degree `k` in `n` variables.
pub fn poly_ring_dim(n: usize, k: usize) -> u64 {
    if n == 0 {
        return u64::from(k == 0);
    }
    // binomial(n - 1 + k, k)
    let mut acc: u64 = 1;
    for i in 1..=k as u64 {
        acc = acc * (n as u64 - 1 + i) / i;
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    pub word: Vec<usize>,
    pub bs_char: HeckeElement,
    pub n_w: BTreeMap<Elem, u64>,
}

impl CharacterTable {
    pub fn total(&self) -> u64 {
        self.n_w.values().sum()
    }

    pub fn n_identity(&self, g: &GroupTable) -> u64 {
        self.n_w.get(&g.identity()).copied().unwrap_or(0)
    }

    /// `Σ n_w = 2^k`, `n_e = τ(char)(1)` and `char(1) = Σ n_w w`.
    pub fn invariants_hold(&self, g: &GroupTable) -> bool {
        let k = self.word.len() as u32;
        let at1 = specialize(&self.bs_char);
        self.total() == 1u64 << k
            && BigInt::from(self.n_identity(g)) == self.bs_char.tau().eval_q1()
            && at1 == self.n_w
    }
}

/// `(1 + T_{s_1}) ... (1 + T_{s_k})`.
pub fn bs_character(g: &GroupTable, word: &[usize]) -> Result<HeckeElement, DecatError> {
    Ok(HeckeAlgebra::new(g).bs_character(word)?)
}

/// Reads `τ = Σ n_i q^i` off a Hecke element.
fn trace_multiplicities(h: &HeckeElement) -> Result<BTreeMap<u32, u64>, DecatError> {
    let tau = h.tau();
    let bad = || DecatError::BadTrace(tau.clone());
    let q = tau.as_q_poly().ok_or_else(bad)?;
    q.into_iter()
        .map(|(i, c)| {
            if c.is_negative() {
                Err(bad())
            } else {
                c.to_u64().map(|c| (i, c)).ok_or_else(bad)
            }
        })
        .collect()
}

fn shifts_from_trace(h: &HeckeElement, offset: i32) -> Result<GradedShiftVector, DecatError> {
    let mut shifts = Vec::new();
    for (i, n) in trace_multiplicities(h)? {
        shifts.extend(std::iter::repeat_n(2 * i as i32 + offset, n as usize));
    }
    Ok(GradedShiftVector::new(shifts))
}

/// `Hom(θ_{s_1}...θ_{s_k}, R) ≅ ⊕ n_i R(2i)` where `τ(char) = Σ n_i q^i`.
pub fn hom_rank_formula(g: &GroupTable, word: &[usize]) -> Result<GradedShiftVector, DecatError> {
    shifts_from_trace(&bs_character(g, word)?, 0)
}

/// Predicted free-module shape of `Hom(BS(src), BS(tgt))`: adjunction moves
/// every target letter to the source, each costing a shift of `-2`.
pub fn hom_prediction(g: &GroupTable, src: &[usize], tgt: &[usize]) -> Result<GradedShiftVector, DecatError> {
    let combined: Vec<usize> = tgt.iter().rev().chain(src).copied().collect();
    shifts_from_trace(&bs_character(g, &combined)?, -2 * tgt.len() as i32)
}

/// `n_w`: the number of subsequences of `word` with product `w`.
pub fn standard_multiplicities(g: &GroupTable, word: &[usize]) -> Result<CharacterTable, DecatError> {
    if word.len() >= 63 {
        return Err(DecatError::TooLong(word.len()));
    }
    let mut counts: BTreeMap<Elem, u64> = BTreeMap::from([(g.identity(), 1)]);
    for &s in word {
        let mut next = counts.clone();
        for (&x, &c) in &counts {
            let xs = g.right_mul_gen(x, s).ok_or(CoxeterError::OutOfRange)?;
            *next.entry(xs).or_insert(0) += c;
        }
        counts = next;
    }
    Ok(CharacterTable { word: word.to_vec(), bs_char: bs_character(g, word)?, n_w: counts })
}

/// Coefficientwise value at `q = 1`.
fn specialize(h: &HeckeElement) -> BTreeMap<Elem, u64> {
    h.eval_q1()
        .into_iter()
        .filter(|(_, c)| c.is_positive())
        .map(|(x, c)| (x, c.to_u64().expect("counts fit in u64")))
        .collect()
}

pub fn specialize_q1(g: &GroupTable, word: &[usize]) -> Result<BTreeMap<Elem, u64>, DecatError> {
    Ok(specialize(&bs_character(g, word)?))
}

/// The three counts that must agree for a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct N1Report {
    pub n_identity: u64,
    pub hom_rank: u64,
    pub trace_at_one: i64,
}

impl N1Report {
    pub fn holds(&self) -> bool {
        self.n_identity == self.hom_rank && self.hom_rank as i64 == self.trace_at_one
    }
}

pub fn n1_report(g: &GroupTable, word: &[usize]) -> Result<N1Report, DecatError> {
    let table = standard_multiplicities(g, word)?;
    let hom = hom_rank_formula(g, word)?;
    Ok(N1Report {
        n_identity: table.n_identity(g),
        hom_rank: hom.len() as u64,
        trace_at_one: table.bs_char.tau().eval_q1().to_i64().expect("small"),
    })
}

pub fn verify_n1_identity(g: &GroupTable, word: &[usize]) -> Result<bool, DecatError> {
    Ok(n1_report(g, word)?.holds())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KlExpansion {
    pub coefficients: BTreeMap<Elem, LaurentPoly>,
    pub positive: bool,
}

/// Expands `b_{s_1} ... b_{s_k}`, `b_s = v(1 + T_s) = C'_s`, in the `C'` basis.
pub fn bs_in_kl_basis(g: &GroupTable, kl: &KLTable, word: &[usize]) -> Result<KlExpansion, DecatError> {
    let b = HeckeAlgebra::new(g).bs_character_normalized(word)?;
    let coefficients = kl.expand(g, &b)?;
    let positive = coefficients.values().all(LaurentPoly::is_nonneg);
    Ok(KlExpansion { coefficients, positive })
}

/// Outcome of checking every word up to a length.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct WordBattery {
    pub words: usize,
    /// Words whose multiplicity identities fail.
    pub multiplicity_failures: Vec<Vec<usize>>,
    /// Words with a KL coefficient outside `N[v, v^-1]`.
    pub positivity_failures: Vec<Vec<usize>>,
}

impl WordBattery {
    pub fn holds(&self) -> bool {
        self.multiplicity_failures.is_empty() && self.positivity_failures.is_empty()
    }
}

/// Checks `Σ n_w = 2^k`, `n_e = #shifts = τ(1)`, `char(1) = Σ n_w w` and
/// positivity of the KL expansion for every word of length `≤ max_len`.
/// Characters and counts are extended one letter at a time.
pub fn verify_words(g: &GroupTable, kl: &KLTable, max_len: usize) -> Result<WordBattery, DecatError> {
    if max_len >= 63 {
        return Err(DecatError::TooLong(max_len));
    }
    let hecke = HeckeAlgebra::new(g);
    let mut out = WordBattery::default();
    let root = CharacterTable { word: Vec::new(), bs_char: hecke.one(), n_w: BTreeMap::from([(g.identity(), 1)]) };
    let mut stack = vec![root];
    while let Some(t) = stack.pop() {
        out.words += 1;
        let shifts = shifts_from_trace(&t.bs_char, 0).map(|s| s.len() as u64).ok();
        if !t.invariants_hold(g) || shifts != Some(t.n_identity(g)) {
            out.multiplicity_failures.push(t.word.clone());
        }
        let normalized = t.bs_char.scale(&LaurentPoly::monomial(t.word.len() as i32, 1));
        if !kl.expand(g, &normalized)?.values().all(LaurentPoly::is_nonneg) {
            out.positivity_failures.push(t.word.clone());
        }
        if t.word.len() == max_len {
            continue;
        }
        for s in (0..g.rank()).rev() {
            let mut word = t.word.clone();
            word.push(s);
            let bs_char = t.bs_char.add(&hecke.mul_gen(&t.bs_char, s)?);
            let mut n_w = t.n_w.clone();
            for (&x, &c) in &t.n_w {
                let xs = g.right_mul_gen(x, s).ok_or(CoxeterError::OutOfRange)?;
                *n_w.entry(xs).or_insert(0) += c;
            }
            stack.push(CharacterTable { word, bs_char, n_w });
        }
    }
    Ok(out)
}

/// Character data is unchanged by base change along a good pair.
pub fn x_functor_decat(ct: &CharacterTable) -> CharacterTable {
    ct.clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> GroupTable {
        GroupTable::builtin("A2").unwrap()
    }

    fn brute_force(g: &GroupTable, word: &[usize]) -> BTreeMap<Elem, u64> {
        let mut out = BTreeMap::new();
        for mask in 0u32..(1 << word.len()) {
            let sub: Vec<usize> =
                word.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &s)| s).collect();
            *out.entry(g.from_word(&sub).unwrap()).or_insert(0) += 1;
        }
        out
    }

    #[test]
    fn word_battery() {
        let g = a2();
        let kl = KLTable::build(&g).unwrap();
        let b = verify_words(&g, &kl, 5).unwrap();
        assert_eq!(b.words, 63);
        assert!(b.holds());
    }

    #[test]
    fn sts_character() {
        let g = a2();
        let w = g.coxeter_matrix().parse_word("sts").unwrap();
        let h = bs_character(&g, &w).unwrap();
        let one_q = LaurentPoly::from_terms([(0, 1), (-2, 1)]);
        assert_eq!(h.coeff(g.identity()), one_q);
        assert_eq!(h.coeff(g.parse("s").unwrap()), one_q);
        for x in ["t", "st", "ts", "sts"] {
            assert!(h.coeff(g.parse(x).unwrap()).is_one());
        }
        assert_eq!(h.support().count(), 6);
    }

    #[test]
    fn hom_ranks() {
        let g = a2();
        let p = |w: &str| hom_rank_formula(&g, &g.coxeter_matrix().parse_word(w).unwrap()).unwrap();
        assert_eq!(p("sts").shifts(), &[0, 2]);
        assert_eq!(p("s").shifts(), &[0]);
        assert_eq!(p("").shifts(), &[0]);
        assert_eq!(p("sts").generator_degrees(), vec![-2, 0]);
        // R ⊕ R(2) over two variables: degrees -2, 0 give 1 and 1 + 2
        assert_eq!(p("sts").graded_dim(-2, 2), 1);
        assert_eq!(p("sts").graded_dim(0, 2), 3);
        assert_eq!(p("sts").graded_dim(-1, 2), 0);
    }

    #[test]
    fn hom_prediction_between_words() {
        let g = a2();
        let s = vec![0];
        // End(θ_s) ≅ R ⊕ R(-2)
        assert_eq!(hom_prediction(&g, &s, &s).unwrap().generator_degrees(), vec![0, 2]);
        assert_eq!(hom_prediction(&g, &s, &[]).unwrap(), hom_rank_formula(&g, &s).unwrap());
    }

    #[test]
    fn multiplicities() {
        let g = a2();
        let w = g.coxeter_matrix().parse_word("sts").unwrap();
        let t = standard_multiplicities(&g, &w).unwrap();
        let named: BTreeMap<String, u64> = t.n_w.iter().map(|(x, c)| (g.format(*x), *c)).collect();
        let expect: BTreeMap<String, u64> =
            [("e", 2), ("s", 2), ("t", 1), ("st", 1), ("ts", 1), ("sts", 1)]
                .into_iter()
                .map(|(a, b)| (a.to_string(), b))
                .collect();
        assert_eq!(named, expect);
        assert_eq!(t.n_w, brute_force(&g, &w));
        assert!(t.invariants_hold(&g));
        assert!(verify_n1_identity(&g, &w).unwrap());
        assert!(verify_n1_identity(&g, &[]).unwrap());
        let ss = specialize_q1(&g, &[0, 0]).unwrap();
        assert_eq!(ss, BTreeMap::from([(g.identity(), 2), (g.generator(0), 2)]));
        assert_eq!(x_functor_decat(&t), t);
    }

    #[test]
    fn kl_expansions() {
        let g = a2();
        let kl = KLTable::build(&g).unwrap();
        let e = bs_in_kl_basis(&g, &kl, &[0, 1, 0]).unwrap();
        assert!(e.positive);
        assert_eq!(
            e.coefficients,
            BTreeMap::from([(g.parse("sts").unwrap(), LaurentPoly::one()), (g.generator(0), LaurentPoly::one())])
        );
        let ss = bs_in_kl_basis(&g, &kl, &[0, 0]).unwrap();
        assert_eq!(ss.coefficients, BTreeMap::from([(g.generator(0), LaurentPoly::from_terms([(1, 1), (-1, 1)]))]));
        let s = bs_in_kl_basis(&g, &kl, &[0]).unwrap();
        assert_eq!(s.coefficients, BTreeMap::from([(g.generator(0), LaurentPoly::one())]));
    }

    #[test]
    fn truncated_group_is_out_of_range() {
        let g = GroupTable::builtin("I2(inf)").unwrap();
        let long = [0, 1].repeat(6);
        assert!(matches!(standard_multiplicities(&g, &long), Err(DecatError::Coxeter(_))));
        assert!(standard_multiplicities(&g, &[0, 1, 0]).is_ok());
    }

    #[test]
    fn ring_dims() {
        assert_eq!(poly_ring_dim(2, 3), 4);
        assert_eq!(poly_ring_dim(3, 2), 6);
        assert_eq!(poly_ring_dim(0, 0), 1);
        assert_eq!(poly_ring_dim(0, 1), 0);
    }
}
