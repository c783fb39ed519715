//! Base change `R' ⊗_R (-)` along the restriction `R = Sym(V*) -> R' = Sym(V'*)`
//! for a subrepresentation `V' ⊂ V`.
//!
//! `R'` uses the restricted covectors `x'_s = x_s|_{V'}`, so the image of a
//! Bott–Samelson bimodule over `R` is the Bott–Samelson bimodule over `R'`
//! for the same word, with structure constants the images of the original
//! ones.

use std::sync::Arc;

use super::bs::{BSBimodule, BsElem};
use super::hom::BsMap;
use super::poly::Poly;
use super::ring::PolyRing;
use super::BimodError;
use crate::coxeter::GroupTable;
use crate::reps::{check_good_pair, check_reflections, SubRep};

#[derive(Debug, Clone)]
pub struct BaseChange {
    ring: Arc<PolyRing>,
    ring_prime: Arc<PolyRing>,
    /// `images[i]` = restriction of the coordinate `y_i` to `V'`.
    images: Vec<Poly>,
}

impl BaseChange {
    pub fn new(sub: &SubRep, g: &GroupTable) -> Result<Self, BimodError> {
        let report = check_good_pair(sub, g);
        if !report.is_good_pair() {
            return Err(BimodError::NotGoodPair(format!("{report:?}")));
        }
        let names = g.coxeter_matrix().labels();
        let data = check_reflections(sub.ambient(), names).map_err(BimodError::Reflection)?;
        let restricted: Vec<_> = data.covectors.iter().map(|x| sub.restrict_form(x)).collect();
        let ring = PolyRing::with_covectors(sub.ambient(), names, data.covectors)?;
        let ring_prime = PolyRing::with_covectors(sub.restricted(), names, restricted)?;
        let basis = sub.basis();
        let images = (0..basis.rows()).map(|i| Poly::linear(basis.row(i))).collect();
        Ok(BaseChange { ring, ring_prime, images })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn ring_prime(&self) -> &Arc<PolyRing> {
        &self.ring_prime
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn q(&self, f: &Poly) -> Poly {
        f.substitute(&self.images, self.ring_prime.nvars())
    }

    pub fn q_elem(&self, x: &BsElem) -> BsElem {
        x.iter().map(|p| self.q(p)).collect()
    }

    pub fn q_map(&self, f: &BsMap) -> BsMap {
        f.iter().map(|x| self.q_elem(x)).collect()
    }

    /// `R' ⊗_R M`, checked against the images of the structure constants
    /// of `M`.
    pub fn apply(&self, m: &BSBimodule) -> Result<BSBimodule, BimodError> {
        if !Arc::ptr_eq(m.ring(), &self.ring) {
            return Err(BimodError::Config("bimodule is not over the ambient ring of this pair".into()));
        }
        let mp = BSBimodule::build(&self.ring_prime, m.word(), m.shift());
        for eps in 0..m.rank() {
            let e = mp.basis(eps);
            for (i, y) in self.images.iter().enumerate() {
                if mp.right_mul(&e, y) != self.q_elem(m.structure(i, eps)) {
                    return Err(BimodError::Internal(format!(
                        "structure constant of e_{eps} * y_{i} does not transfer"
                    )));
                }
            }
        }
        Ok(mp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterMatrix;
    use crate::reps::builtin_pair;

    fn setup() -> (GroupTable, BaseChange) {
        let cm = CoxeterMatrix::builtin("A2").unwrap();
        let g = GroupTable::build(&cm, None).unwrap();
        let sub = builtin_pair("builtin:geom-plus-trivial", &cm).unwrap();
        let bc = BaseChange::new(&sub, &g).unwrap();
        (g, bc)
    }

    #[test]
    fn restriction_is_equivariant() {
        let (_, bc) = setup();
        let (r, rp) = (bc.ring(), bc.ring_prime());
        assert_eq!(r.nvars(), 3);
        assert_eq!(rp.nvars(), 2);
        for s in 0..2 {
            assert_eq!(&bc.q(r.x(s)), rp.x(s));
            for i in 0..r.nvars() {
                let y = r.var(i);
                assert_eq!(bc.q(&r.act(s, &y)), rp.act(s, &bc.q(&y)));
            }
        }
        let f = &(&r.var(0) * &r.var(2)) + &r.x(1).clone();
        let g = &r.var(1) * &r.var(1);
        assert_eq!(bc.q(&(&f * &g)), &bc.q(&f) * &bc.q(&g));
    }

    #[test]
    fn bott_samelson_transfers() {
        let (_, bc) = setup();
        for word in [&[][..], &[0], &[0, 1], &[0, 1, 0]] {
            let m = BSBimodule::build(bc.ring(), word, 0);
            let mp = bc.apply(&m).unwrap();
            assert_eq!(mp.rank(), m.rank());
        }
    }
}
