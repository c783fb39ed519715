//! Comparison of Hom spaces and degree-zero endomorphism algebras of
//! Bott–Samelson bimodules before and after base change along a good pair.

use super::bs::BSBimodule;
use super::end0::{decompose_bs, End0Algebra};
use super::hom::{graded_hom, is_bimodule_map, GradedHom, HomSpace};
use super::xfunctor::BaseChange;
use super::BimodError;
use crate::coxeter::GroupTable;
use crate::decat::hom_prediction;
use crate::hecke::KLTable;
use crate::linalg::Echelon;

#[derive(Debug, Clone)]
pub struct Theorem1Report {
    pub src: Vec<usize>,
    pub tgt: Vec<usize>,
    pub cap: i32,
    /// Generator degrees of `Hom(M, N)` over `R`.
    pub generators: Vec<i32>,
    /// Generator degrees of `Hom(M', N')` over `R'`.
    pub generators_prime: Vec<i32>,
    /// Generator degrees read off the Hecke algebra trace.
    pub predicted: Vec<i32>,
    /// `(degree, dim Hom_d, dim Hom'_d)`.
    pub dims: Vec<(i32, usize, usize)>,
    /// Both graded dimensions equal the free-module prediction up to `cap`.
    pub hilbert_ok: bool,
    /// Restriction maps `Hom_d` onto `Hom'_d` in every degree.
    pub restriction_onto: bool,
}

impl Theorem1Report {
    pub fn holds(&self) -> bool {
        self.generators == self.generators_prime
            && self.generators == self.predicted
            && self.hilbert_ok
            && self.restriction_onto
    }
}

/// Rank of the images of `hom` under restriction, inside `target`.
fn restricted_rank(bc: &BaseChange, src: &BSBimodule, tgt: &BSBimodule, hom: &HomSpace, target: &HomSpace) -> Option<usize> {
    let mut ech = Echelon::new(bc.ring_prime().field(), target.unknowns());
    for f in hom.maps() {
        let q = bc.q_map(f);
        if !is_bimodule_map(src, tgt, &q) {
            return None;
        }
        ech.insert(target.flatten(&q)?);
    }
    Some(ech.rank())
}

fn sorted(mut v: Vec<i32>) -> Vec<i32> {
    v.sort_unstable();
    v
}

pub fn verify_theorem1(
    bc: &BaseChange,
    g: &GroupTable,
    src: &[usize],
    tgt: &[usize],
    cap: i32,
) -> Result<Theorem1Report, BimodError> {
    let m = BSBimodule::build(bc.ring(), src, 0);
    let n = BSBimodule::build(bc.ring(), tgt, 0);
    let mp = bc.apply(&m)?;
    let np = bc.apply(&n)?;
    let hom: GradedHom = graded_hom(&m, &n, cap)?;
    let hom_p: GradedHom = graded_hom(&mp, &np, cap)?;
    let prediction = hom_prediction(g, src, tgt)?;
    let predicted = sorted(prediction.generator_degrees());
    let (dim_v, dim_vp) = (bc.ring().nvars(), bc.ring_prime().nvars());
    let mut dims = Vec::new();
    let mut hilbert_ok = true;
    let mut restriction_onto = true;
    for d in hom.lo.min(hom_p.lo)..=cap {
        let (a, b) = (hom.dim(d), hom_p.dim(d));
        hilbert_ok &= a as u64 == prediction.graded_dim(d, dim_v) && b as u64 == prediction.graded_dim(d, dim_vp);
        if let (Some(h), Some(hp)) = (hom.spaces.get(&d), hom_p.spaces.get(&d)) {
            restriction_onto &= restricted_rank(bc, &mp, &np, h, hp) == Some(hp.dim());
        } else {
            restriction_onto &= b == 0;
        }
        dims.push((d, a, b));
    }
    Ok(Theorem1Report {
        src: src.to_vec(),
        tgt: tgt.to_vec(),
        cap,
        generators: sorted(hom.generators),
        generators_prime: sorted(hom_p.generators),
        predicted,
        dims,
        hilbert_ok,
        restriction_onto,
    })
}

#[derive(Debug, Clone)]
pub struct Theorem2Report {
    pub word: Vec<usize>,
    pub end0_dim: usize,
    pub end0_dim_prime: usize,
    pub local: bool,
    pub local_prime: bool,
    /// Summand ranks, ascending.
    pub ranks: Vec<u64>,
    pub ranks_prime: Vec<u64>,
    /// Restricted idempotents of `M` are primitive orthogonal idempotents of
    /// `End_0(M')` summing to the unit.
    pub idempotents_transfer: bool,
    /// Both decompositions match the KL expansion.
    pub kl_match: bool,
}

impl Theorem2Report {
    pub fn holds(&self) -> bool {
        self.end0_dim == self.end0_dim_prime
            && self.local == self.local_prime
            && self.ranks == self.ranks_prime
            && self.idempotents_transfer
            && self.kl_match
    }
}

pub fn verify_theorem2(
    bc: &BaseChange,
    g: &GroupTable,
    kl: &KLTable,
    word: &[usize],
    seed: u64,
) -> Result<Theorem2Report, BimodError> {
    let m = BSBimodule::build(bc.ring(), word, 0);
    let mp = bc.apply(&m)?;
    let dec = decompose_bs(&m, g, kl, seed)?;
    let dec_p = decompose_bs(&mp, g, kl, seed)?;
    let alg_p = End0Algebra::new(&mp)?;
    let images: Option<Vec<_>> = dec.summands.iter().map(|s| alg_p.hom().coordinates(&bc.q_map(&s.idempotent))).collect();
    let idempotents_transfer = match images {
        Some(es) => {
            let orthogonal = es.iter().enumerate().all(|(i, e)| {
                es.iter().enumerate().all(|(j, f)| i == j || alg_p.mul(e, f).iter().all(|c| c.is_zero()))
            });
            let sum = es.iter().fold(vec![alg_p.unit()[0].field().zero(); alg_p.dim()], |acc, e| alg_p.add(&acc, e));
            orthogonal
                && sum == alg_p.unit()
                && es.iter().all(|e| alg_p.is_idempotent(e) && alg_p.corner_quotient_dim(e) == 1)
        }
        None => false,
    };
    let ranks = |d: &super::end0::Decomposition| {
        let mut r: Vec<u64> = d.summands.iter().map(|s| s.rank).collect();
        r.sort_unstable();
        r
    };
    Ok(Theorem2Report {
        word: word.to_vec(),
        end0_dim: dec.end0_dim,
        end0_dim_prime: dec_p.end0_dim,
        local: dec.local,
        local_prime: dec_p.local,
        ranks: ranks(&dec),
        ranks_prime: ranks(&dec_p),
        idempotents_transfer,
        kl_match: dec.matched && dec_p.matched,
    })
}
