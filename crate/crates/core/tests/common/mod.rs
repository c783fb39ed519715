//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::Rng;
use soergel::coxeter::{Elem, GroupTable};
use soergel::field::{rat, FieldElement, TowerField};
use soergel::hecke::{HeckeAlgebra, HeckeElement, KLTable};
use soergel::laurent::LaurentPoly;
use soergel::linalg::Matrix;

/// Multiplies out a word letter by letter.
pub fn product(g: &GroupTable, word: &[usize]) -> Elem {
    word.iter().fold(g.identity(), |x, &s| g.right_mul_gen(x, s).unwrap())
}

/// `x ≤ w` iff `x` is the product of a subword of a reduced word of `w`.
pub fn bruhat_by_subwords(g: &GroupTable, x: Elem, w: Elem) -> bool {
    let word = g.word(w);
    (0u32..1 << word.len()).any(|mask| {
        let sub: Vec<usize> = (0..word.len()).filter(|i| mask >> i & 1 == 1).map(|i| word[i]).collect();
        product(g, &sub) == x
    })
}

/// `n_w` by enumerating every subsequence.
pub fn brute_force_nw(g: &GroupTable, word: &[usize]) -> BTreeMap<Elem, u64> {
    fn walk(g: &GroupTable, word: &[usize], x: Elem, out: &mut BTreeMap<Elem, u64>) {
        match word.split_first() {
            None => *out.entry(x).or_insert(0) += 1,
            Some((&s, rest)) => {
                walk(g, rest, x, out);
                walk(g, rest, g.right_mul_gen(x, s).unwrap(), out);
            }
        }
    }
    let mut out = BTreeMap::new();
    walk(g, word, g.identity(), &mut out);
    out
}

pub fn random_word(rng: &mut impl Rng, rank: usize, max_len: usize) -> Vec<usize> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(0..rank)).collect()
}

/// At most `terms` terms with coefficients in `[-2, 2]` and exponents in `[-3, 3]`.
pub fn random_hecke(rng: &mut impl Rng, g: &GroupTable, terms: usize) -> HeckeElement {
    let mut h = HeckeElement::zero();
    for _ in 0..rng.gen_range(1..=terms) {
        let x = Elem(rng.gen_range(0..g.len()));
        let c = LaurentPoly::from_terms((0..2).map(|_| (rng.gen_range(-3..=3), rng.gen_range(-2i64..=2))));
        h.add_term(x, &c);
    }
    h
}

/// `C'_w` from bar invariance alone: `C'_w = H_w + Σ_{l(y) < l(w)} h_y H_y`
/// with `H_y = v^{l(y)} T_y` and `h_y ∈ v Z[v]` of degree at most
/// `l(w) - l(y)`, solved as a linear system over `Q`.
pub struct KlOracle {
    bar_h: Vec<HeckeElement>,
}

impl KlOracle {
    pub fn new(g: &GroupTable) -> Self {
        let hecke = HeckeAlgebra::new(g);
        let bar_h = g
            .elements()
            .map(|y| hecke.bar(&HeckeElement::term(y, LaurentPoly::monomial(g.length(y) as i32, 1))).unwrap())
            .collect();
        KlOracle { bar_h }
    }

    pub fn basis_element(&self, g: &GroupTable, w: Elem) -> HeckeElement {
        let lw = g.length(w);
        let h = |y: Elem, j: i32| HeckeElement::term(y, LaurentPoly::monomial(g.length(y) as i32 + j, 1));
        let bar = |y: Elem, j: i32| self.bar_h[y.0].scale(&LaurentPoly::monomial(-j, 1));
        // unknown u contributes bar(v^j H_y) - v^j H_y
        let unknowns: Vec<(Elem, i32)> = g
            .elements()
            .filter(|&y| g.length(y) < lw)
            .flat_map(|y| (1..=(lw - g.length(y)) as i32).map(move |j| (y, j)))
            .collect();
        let columns: Vec<HeckeElement> = unknowns.iter().map(|&(y, j)| bar(y, j).sub(&h(y, j))).collect();
        let rhs = h(w, 0).sub(&bar(w, 0));
        let mut rows_index: BTreeMap<(Elem, i32), usize> = BTreeMap::new();
        for e in columns.iter().chain(std::iter::once(&rhs)) {
            for (z, c) in e.terms() {
                for (k, _) in c.terms() {
                    let n = rows_index.len();
                    rows_index.entry((z, k)).or_insert(n);
                }
            }
        }
        let field = TowerField::rational();
        let n_rows = rows_index.len().max(1);
        let mut a = Matrix::zeros(&field, n_rows, unknowns.len().max(1));
        let mut b = Matrix::zeros(&field, n_rows, 1);
        let value = |c: &num_bigint::BigInt| field.from_rational(num_rational::BigRational::from_integer(c.clone()));
        for (col, e) in columns.iter().enumerate() {
            for (z, c) in e.terms() {
                for (k, x) in c.terms() {
                    a[(rows_index[&(z, k)], col)] = value(x);
                }
            }
        }
        for (z, c) in rhs.terms() {
            for (k, x) in c.terms() {
                b[(rows_index[&(z, k)], 0)] = value(x);
            }
        }
        let mut out = h(w, 0);
        if unknowns.is_empty() {
            return out;
        }
        assert!(a.kernel().is_empty(), "bar invariance does not pin down C'_{}", g.format(w));
        let sol = a.solve(&b).expect("bar-invariant element exists");
        for (i, &(y, j)) in unknowns.iter().enumerate() {
            let c: &FieldElement = &sol[(i, 0)];
            let r = c.as_rational().expect("rational");
            assert!(r.is_integer(), "non-integral KL coefficient");
            if *r != rat(0) {
                out = out.add(&h(y, j).scale(&LaurentPoly::constant(r.to_integer())));
            }
        }
        out
    }
}

pub fn kl_table_agrees(g: &GroupTable, kl: &KLTable) -> Result<(), String> {
    let oracle = KlOracle::new(g);
    for w in g.elements() {
        let want = oracle.basis_element(g, w);
        if kl.element(w) != &want {
            return Err(format!("C'_{} differs: {:?} vs {:?}", g.format(w), kl.element(w), want));
        }
    }
    Ok(())
}
