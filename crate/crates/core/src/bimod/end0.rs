//! The degree-zero endomorphism algebra of a bimodule, its Jacobson radical
//! and a complete set of primitive orthogonal idempotents.
//!
//! Elements are coordinate vectors in the basis of `Hom(M, M)_0`; the
//! product is composition, `a·b = a ∘ b`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::bs::BSBimodule;
use super::hom::{compose, hom_solve, identity, is_bimodule_map, BsMap, HomSpace};
use super::BimodError;
use crate::coxeter::{Elem, GroupTable};
use crate::decat::bs_in_kl_basis;
use crate::field::{upoly, FieldElement, Rational};
use crate::hecke::KLTable;
use crate::laurent::LaurentPoly;
use crate::linalg::{Echelon, Matrix, sparse_from_dense};

type Vector = Vec<FieldElement>;

const ATTEMPTS: u64 = 24;

#[derive(Debug, Clone)]
pub struct End0Algebra {
    hom: HomSpace,
    /// `structure[i][j]` = coordinates of `b_i ∘ b_j`.
    structure: Vec<Vec<Vector>>,
    unit: Vector,
    /// Basis of the radical in coordinates.
    radical: Vec<Vector>,
}

impl End0Algebra {
    pub fn new(m: &BSBimodule) -> Result<Self, BimodError> {
        let hom = hom_solve(m, m, 0)?;
        let n = hom.dim();
        let coords = |f: &BsMap| {
            hom.coordinates(f)
                .ok_or_else(|| BimodError::Internal("composite of endomorphisms left the degree-0 space".into()))
        };
        let mut structure = Vec::with_capacity(n);
        for bi in hom.maps() {
            let row = hom.maps().iter().map(|bj| coords(&compose(bi, bj))).collect::<Result<Vec<_>, _>>()?;
            structure.push(row);
        }
        let unit = coords(&identity(m))?;
        let field = m.ring().field().clone();
        // tr L_{b_k}
        let traces: Vector = (0..n)
            .map(|k| (0..n).fold(field.zero(), |acc, j| &acc + &structure[k][j][j]))
            .collect();
        let gram: Vec<Vector> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| structure[i][j].iter().zip(&traces).fold(field.zero(), |acc, (c, t)| &acc + &(c * t)))
                    .collect()
            })
            .collect();
        let radical = if n == 0 { Vec::new() } else { Matrix::from_rows_in(&field, gram, Some(n)).kernel() };
        Ok(End0Algebra { hom, structure, unit, radical })
    }

    pub fn dim(&self) -> usize {
        self.hom.dim()
    }

    pub fn hom(&self) -> &HomSpace {
        &self.hom
    }

    pub fn unit(&self) -> &[FieldElement] {
        &self.unit
    }

    pub fn radical(&self) -> &[Vector] {
        &self.radical
    }

    pub fn semisimple_dim(&self) -> usize {
        self.dim() - self.radical.len()
    }

    /// `End_0` is local exactly when its semisimple quotient is the field.
    pub fn is_local(&self) -> bool {
        self.semisimple_dim() == 1
    }

    pub fn structure(&self, i: usize, j: usize) -> &[FieldElement] {
        &self.structure[i][j]
    }

    fn zero(&self) -> Vector {
        vec![self.field().zero(); self.dim()]
    }

    fn field(&self) -> &std::sync::Arc<crate::field::TowerField> {
        self.unit[0].field()
    }

    pub fn mul(&self, a: &[FieldElement], b: &[FieldElement]) -> Vector {
        let mut out = self.zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let c = ai * bj;
                for (o, s) in out.iter_mut().zip(&self.structure[i][j]) {
                    *o = &*o + &(&c * s);
                }
            }
        }
        out
    }

    pub fn add(&self, a: &[FieldElement], b: &[FieldElement]) -> Vector {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn scale(&self, c: &FieldElement, a: &[FieldElement]) -> Vector {
        a.iter().map(|x| c * x).collect()
    }

    pub fn map(&self, coords: &[FieldElement]) -> BsMap {
        self.hom.combine(coords)
    }

    pub fn is_idempotent(&self, e: &[FieldElement]) -> bool {
        self.mul(e, e) == e
    }

    fn rank_of(&self, vectors: impl IntoIterator<Item = Vector>) -> usize {
        let mut ech = Echelon::new(self.field(), self.dim());
        for v in vectors {
            ech.insert(sparse_from_dense(&v));
        }
        ech.rank()
    }

    /// `dim eAe - dim eJe`: the dimension of the corner of the semisimple
    /// quotient; `1` exactly when `e` is primitive.
    pub fn corner_quotient_dim(&self, e: &[FieldElement]) -> usize {
        let basis = (0..self.dim()).map(|j| {
            let mut b = self.zero();
            b[j] = self.field().one();
            b
        });
        let full = self.rank_of(basis.map(|b| self.mul(&self.mul(e, &b), e)));
        let rad = self.rank_of(self.radical.iter().map(|r| self.mul(&self.mul(e, r), e)));
        full - rad
    }

    /// Coordinates of `p(a)`.
    fn eval_poly(&self, p: &[Rational], a: &[FieldElement]) -> Vector {
        let field = self.field().clone();
        let mut acc = self.zero();
        for c in p.iter().rev() {
            acc = self.mul(&acc, a);
            acc = self.add(&acc, &self.scale(&field.from_rational(c.clone()), &self.unit));
        }
        acc
    }

    /// Monic minimal polynomial of `a`, which must have rational coefficients.
    fn minimal_polynomial(&self, a: &[FieldElement]) -> Result<Vec<Rational>, BimodError> {
        let field = self.field().clone();
        let mut powers = vec![self.unit.clone()];
        let mut ech = Echelon::new(&field, self.dim());
        ech.insert(sparse_from_dense(&self.unit));
        loop {
            let next = self.mul(powers.last().expect("nonempty"), a);
            let dependent = !ech.insert(sparse_from_dense(&next));
            powers.push(next);
            if dependent {
                break;
            }
        }
        // columns are the powers; the kernel is one-dimensional
        let cols = Matrix::from_rows_in(&field, powers, Some(self.dim())).transpose();
        let kernel = cols.kernel();
        let v = kernel.first().ok_or_else(|| BimodError::Internal("powers without dependency".into()))?;
        let coeffs = v
            .iter()
            .map(|c| c.as_rational().cloned())
            .collect::<Option<Vec<Rational>>>()
            .ok_or_else(|| BimodError::UnsupportedEigenvalues("minimal polynomial has irrational coefficients".into()))?;
        Ok(upoly::monic(&coeffs))
    }

    /// Primitive orthogonal idempotents summing to the unit, found as
    /// spectral projectors of a random element.
    pub fn idempotents(&self, seed: u64) -> Result<Vec<Vector>, BimodError> {
        if self.dim() == 0 {
            return Ok(Vec::new());
        }
        if self.is_local() {
            return Ok(vec![self.unit.clone()]);
        }
        let field = self.field().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut last = BimodError::NonSplit("no separating element found".into());
        for _ in 0..ATTEMPTS {
            let a: Vector = (0..self.dim()).map(|_| field.from_int(rng.gen_range(-3..=3))).collect();
            match self.spectral_idempotents(&a) {
                Ok(es) if es.iter().all(|e| self.corner_quotient_dim(e) == 1) => {
                    self.check_complete(&es)?;
                    return Ok(es);
                }
                Ok(_) => {}
                Err(e) => last = e,
            }
        }
        Err(last)
    }

    fn spectral_idempotents(&self, a: &[FieldElement]) -> Result<Vec<Vector>, BimodError> {
        let p = self.minimal_polynomial(a)?;
        let squarefree = upoly::div_rem(&p, &upoly::gcd(&p, &upoly::derivative(&p))).0;
        let roots = rational_roots(&squarefree);
        if roots.len() != upoly::degree(&squarefree).unwrap_or(0) {
            return Err(BimodError::UnsupportedEigenvalues("eigenvalues outside the rationals".into()));
        }
        let mut out = Vec::with_capacity(roots.len());
        for lambda in &roots {
            let linear = vec![-lambda.clone(), Rational::one()];
            let mut power = vec![Rational::one()];
            let mut rest = p.clone();
            loop {
                let (q, r) = upoly::div_rem(&rest, &linear);
                if !r.is_empty() {
                    break;
                }
                rest = q;
                power = upoly::mul(&power, &linear);
            }
            // e ≡ 1 mod (x - λ)^m and e ≡ 0 mod rest
            let inv = upoly::inverse_mod(&upoly::rem(&rest, &power), &power)
                .ok_or_else(|| BimodError::Internal("coprime factors not coprime".into()))?;
            let e = upoly::rem(&upoly::mul(&inv, &rest), &p);
            out.push(self.eval_poly(&e, a));
        }
        Ok(out)
    }

    fn check_complete(&self, es: &[Vector]) -> Result<(), BimodError> {
        let mut sum = self.zero();
        for (i, e) in es.iter().enumerate() {
            if !self.is_idempotent(e) {
                return Err(BimodError::Internal("projector is not idempotent".into()));
            }
            for f in &es[i + 1..] {
                if self.mul(e, f).iter().any(|c| !c.is_zero()) || self.mul(f, e).iter().any(|c| !c.is_zero()) {
                    return Err(BimodError::Internal("projectors are not orthogonal".into()));
                }
            }
            sum = self.add(&sum, e);
        }
        if sum != self.unit {
            return Err(BimodError::Internal("projectors do not sum to the unit".into()));
        }
        Ok(())
    }
}

/// Distinct rational roots of a squarefree polynomial, ascending.
pub fn rational_roots(p: &[Rational]) -> Vec<Rational> {
    let Some(deg) = upoly::degree(p) else { return Vec::new() };
    if deg == 0 {
        return Vec::new();
    }
    // clear denominators; every rational root is k / lead
    let den = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
    let lead = ints[deg].abs();
    let bound = ints[..deg].iter().fold(BigInt::zero(), |acc, c| acc.max(c.abs()));
    let bound = Rational::new(bound, lead.clone()) + Rational::one();
    let step = Rational::new(BigInt::one(), lead.clone());
    let mut roots = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        let n = upoly::count_roots(p, &lo, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 && &hi - &lo < step {
            // at most one candidate k / lead in (lo, hi]
            let k = (&hi * Rational::from_integer(lead.clone())).floor();
            let x = k / Rational::from_integer(lead.clone());
            if x > lo && upoly::eval(p, &x).is_zero() {
                roots.push(x);
            }
            continue;
        }
        let mid = (&lo + &hi) / Rational::from_integer(BigInt::from(2));
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    roots.sort();
    roots
}

#[derive(Debug, Clone)]
pub struct Summand {
    pub idempotent: BsMap,
    /// Rank of the image as a free left module.
    pub rank: u64,
    /// `Σ v^{-d}` over a homogeneous basis of the image, `d` the degree
    /// normalised so that the unshifted module is self-dual.
    pub graded_rank: LaurentPoly,
    /// KL basis element whose predicted graded rank was matched.
    pub label: Option<Elem>,
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub end0_dim: usize,
    pub semisimple_dim: usize,
    pub local: bool,
    pub summands: Vec<Summand>,
    /// `(x, v^j ρ(C'_x))` for every summand predicted by the KL expansion.
    pub predicted: Vec<(Elem, LaurentPoly)>,
    /// The multisets of graded ranks agree.
    pub matched: bool,
}

/// `Σ_y c_y v^{-2ℓ(y)}` for `C'_x = Σ_y c_y T_y`.
pub fn kl_graded_rank(g: &GroupTable, kl: &KLTable, x: Elem) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (y, c) in kl.element(x).terms() {
        out += &c.shift(-2 * g.length(y) as i32);
    }
    out
}

fn integer(c: &FieldElement) -> Result<BigInt, BimodError> {
    c.as_rational()
        .filter(|r| r.is_integer())
        .map(|r| r.to_integer())
        .ok_or_else(|| BimodError::Internal(format!("trace {c} is not an integer")))
}

fn summand_of(m: &BSBimodule, e: BsMap) -> Result<Summand, BimodError> {
    let k = m.len() as i32;
    // the constant part of `e` is block diagonal by degree and idempotent,
    // so each block trace is the rank of that block
    let mut blocks: std::collections::BTreeMap<i32, FieldElement> = std::collections::BTreeMap::new();
    for (eps, img) in e.iter().enumerate() {
        if let Some(c) = img[eps].constant_term() {
            let d = m.basis_degree(eps) + m.shift() - k;
            let slot = blocks.entry(-d).or_insert_with(|| c.field().zero());
            *slot = &*slot + c;
        }
    }
    let terms = blocks.iter().map(|(d, c)| integer(c).map(|c| (*d, c))).collect::<Result<Vec<_>, _>>()?;
    let graded_rank = LaurentPoly::from_terms(terms);
    let rank = graded_rank.eval_q1();
    let rank = u64::try_from(rank).map_err(|_| BimodError::Internal("negative summand rank".into()))?;
    Ok(Summand { idempotent: e, rank, graded_rank, label: None })
}

pub fn decompose_bs(m: &BSBimodule, g: &GroupTable, kl: &KLTable, seed: u64) -> Result<Decomposition, BimodError> {
    let alg = End0Algebra::new(m)?;
    let mut summands = Vec::new();
    for e in alg.idempotents(seed)? {
        let map = alg.map(&e);
        if !is_bimodule_map(m, m, &map) {
            return Err(BimodError::Internal("idempotent is not a bimodule map".into()));
        }
        summands.push(summand_of(m, map)?);
    }
    let expansion = bs_in_kl_basis(g, kl, m.word())?;
    let mut predicted = Vec::new();
    for (x, h) in &expansion.coefficients {
        let rho = kl_graded_rank(g, kl, *x);
        for (j, c) in h.terms() {
            let copies = u64::try_from(c).unwrap_or(0);
            for _ in 0..copies {
                predicted.push((*x, rho.shift(j)));
            }
        }
    }
    let mut unused: Vec<Option<&(Elem, LaurentPoly)>> = predicted.iter().map(Some).collect();
    let mut all = predicted.len() == summands.len() && expansion.positive;
    for s in summands.iter_mut() {
        let slot = unused.iter_mut().find(|p| p.is_some_and(|(_, r)| *r == s.graded_rank));
        match slot {
            Some(p) => {
                s.label = p.map(|(x, _)| *x);
                *p = None;
            }
            None => all = false,
        }
    }
    Ok(Decomposition {
        end0_dim: alg.dim(),
        semisimple_dim: alg.semisimple_dim(),
        local: alg.is_local(),
        summands,
        predicted,
        matched: all,
    })
}
