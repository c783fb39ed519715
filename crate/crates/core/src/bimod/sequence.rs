//! The exact sequence `0 -> R_s -> θ_s -> R -> 0`, its generic splitting
//! and the generic-fiber decomposition of a Bott–Samelson bimodule.

use std::sync::Arc;

use super::bs::{BSBimodule, BsElem};
use super::hom::BsMap;
use super::poly::{monomials, Poly};
use super::ring::PolyRing;
use super::BimodError;
use crate::coxeter::{Elem, GroupTable};
use crate::field::FieldElement;
use crate::linalg::Matrix;
use crate::reps::dot;

#[derive(Debug, Clone)]
pub struct ThetaSequence {
    /// `m_s`: images of `e_0`, `e_1` in `R`.
    pub multiplication: BsMap,
    /// `μ_s(1)`.
    pub mu_one: BsElem,
    /// `m_s ∘ μ_s = 0`.
    pub composite_zero: bool,
    /// `μ_s(1)·f = s(f)·μ_s(1)` for every variable, so `μ_s` is a bimodule
    /// map out of `R_s`.
    pub mu_twisted_linear: bool,
    /// Per polynomial degree `k ≤ cap` (grading degree `2k`): `m_s` onto,
    /// `μ_s` injective and `dim ker m_s = dim im μ_s`.
    pub exact_through: Vec<bool>,
}

impl ThetaSequence {
    pub fn holds(&self) -> bool {
        self.composite_zero && self.mu_twisted_linear && self.exact_through.iter().all(|b| *b)
    }
}

pub fn theta_exact_sequence(ring: &Arc<PolyRing>, s: usize, cap: u32) -> ThetaSequence {
    let theta = BSBimodule::build(ring, &[s], 0);
    let one = ring.one();
    let xs = ring.x(s).clone();
    let multiplication: BsMap = vec![vec![one.clone()], vec![xs.clone()]];
    let mu_one: BsElem = vec![xs.clone(), -&one];
    let m_of = |x: &BsElem| -> Poly { &x[0] + &(&x[1] * &xs) };
    let composite_zero = m_of(&mu_one).is_zero();
    let mu_twisted_linear = (0..ring.nvars()).all(|i| {
        let y = ring.var(i);
        let lhs = theta.right_mul(&mu_one, &y);
        let rhs = theta.left_mul(&ring.act(s, &y), &mu_one);
        lhs == rhs
    });
    let field = ring.field().clone();
    let n = ring.nvars();
    let exact_through = (0..=cap)
        .map(|k| {
            // degree-2k part of θ_s: R_k e_0 ⊕ R_{k-1} e_1
            let top = monomials(n, k);
            let low = if k == 0 { Vec::new() } else { monomials(n, k - 1) };
            let index: std::collections::HashMap<&Vec<u32>, usize> =
                top.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let to_row = |p: &Poly| {
                let mut row = vec![field.zero(); top.len()];
                for (m, c) in p.terms() {
                    row[index[m]] = c.clone();
                }
                row
            };
            let mut images = Vec::new();
            for m in &top {
                images.push(to_row(&Poly::monomial(m.clone(), field.one())));
            }
            for m in &low {
                images.push(to_row(&(&Poly::monomial(m.clone(), field.one()) * &xs)));
            }
            let m_rank = Matrix::from_rows_in(&field, images, Some(top.len())).rank();
            // μ_s on R_{k-1}: r -> r x_s e_0 - r e_1, in coordinates of θ_s
            let mu_rows: Vec<Vec<FieldElement>> = low
                .iter()
                .map(|m| {
                    let r = Poly::monomial(m.clone(), field.one());
                    let mut row = to_row(&(&r * &xs));
                    let mut tail = vec![field.zero(); low.len()];
                    for (mm, c) in r.terms() {
                        let j = low.iter().position(|x| x == mm).expect("monomial of degree k-1");
                        tail[j] = -c;
                    }
                    row.extend(tail);
                    row
                })
                .collect();
            let mu_rank = if mu_rows.is_empty() {
                0
            } else {
                Matrix::from_rows_in(&field, mu_rows, Some(top.len() + low.len())).rank()
            };
            let total = top.len() + low.len();
            m_rank == top.len() && mu_rank == low.len() && total - m_rank == mu_rank
        })
        .collect();
    ThetaSequence { multiplication, mu_one, composite_zero, mu_twisted_linear, exact_through }
}

/// Generic splitting of `θ_s` at a point.
#[derive(Debug, Clone)]
pub struct Splitting {
    /// Rows `e_0`, `e_1`; columns the components `ab` and `a·s(b)`.
    pub matrix: Matrix,
    pub invertible: bool,
    /// `ν_s(μ_s(1))` at the point.
    pub nu_mu: FieldElement,
}

fn check_point(ring: &PolyRing, point: &[FieldElement]) -> Result<(), BimodError> {
    if point.len() != ring.nvars() {
        return Err(BimodError::Config(format!("point must have {} coordinates", ring.nvars())));
    }
    Ok(())
}

/// `ν_s(a ⊗ b) = a s(b) / (2 x_s)` evaluated at `point`, for an element of
/// `θ_s` with left coefficients `x`.
pub fn nu_s(ring: &PolyRing, s: usize, x: &BsElem, point: &[FieldElement]) -> Result<FieldElement, BimodError> {
    let xs = ring.eval(ring.x(s), point);
    let denom = (&ring.field().from_int(2) * &xs)
        .inv()
        .ok_or_else(|| BimodError::NonGeneric(format!("x_{} vanishes", ring.names()[s])))?;
    // s(1) = 1 and s(x_s) = -x_s
    let a0 = ring.eval(&x[0], point);
    let a1 = ring.eval(&x[1], point);
    Ok(&(&a0 - &(&a1 * &xs)) * &denom)
}

pub fn generic_splitting(ring: &Arc<PolyRing>, s: usize, point: &[FieldElement]) -> Result<Splitting, BimodError> {
    check_point(ring, point)?;
    let xs = ring.eval(ring.x(s), point);
    if xs.is_zero() {
        return Err(BimodError::NonGeneric(format!("x_{} vanishes", ring.names()[s])));
    }
    let f = ring.field();
    let matrix = Matrix::from_rows_in(f, vec![vec![f.one(), xs.clone()], vec![f.one(), -&xs]], Some(2)).transpose();
    let invertible = matrix.inverse().is_some();
    let mu_one: BsElem = vec![ring.x(s).clone(), -&ring.one()];
    let nu_mu = nu_s(ring, s, &mu_one, point)?;
    Ok(Splitting { matrix, invertible, nu_mu })
}

/// Rows: basis tensors; columns: subsequences `δ`, entry
/// `Π_i (w_i(δ) x_{s_i})(p)^{ε_i}` with `w_i = s_1^{δ_1} ... s_i^{δ_i}`.
#[derive(Debug, Clone)]
pub struct StandardMatrix {
    pub matrix: Matrix,
    /// Product of the subsequence selected by each column.
    pub labels: Vec<Elem>,
    pub invertible: bool,
}

pub fn standard_matrix(
    ring: &Arc<PolyRing>,
    g: &GroupTable,
    word: &[usize],
    point: &[FieldElement],
) -> Result<StandardMatrix, BimodError> {
    check_point(ring, point)?;
    let k = word.len();
    let size = 1usize << k;
    let field = ring.field();
    // values[δ][i] = (w_i(δ) x_{s_i})(p), using (w λ)(p) = λ(M_w^{-1} p)
    let mut values: Vec<Vec<FieldElement>> = Vec::with_capacity(size);
    let mut labels = Vec::with_capacity(size);
    for delta in 0..size {
        let mut row = Vec::with_capacity(k);
        for i in 0..k {
            let mut cov = ring.covector(word[i]).to_vec();
            for j in (0..=i).rev() {
                if delta >> j & 1 == 1 {
                    cov = ring.matrix(word[j]).apply_left(&cov);
                }
            }
            let val = dot(&cov, point);
            if val.is_zero() {
                return Err(BimodError::NonGeneric(format!("a reflecting hyperplane contains the point (column {delta})")));
            }
            row.push(val);
        }
        values.push(row);
        let sub: Vec<usize> = (0..k).filter(|j| delta >> j & 1 == 1).map(|j| word[j]).collect();
        labels.push(g.from_word(&sub)?);
    }
    let mut matrix = Matrix::zeros(field, size, size);
    for eps in 0..size {
        for delta in 0..size {
            let mut e = field.one();
            for (i, v) in values[delta].iter().enumerate() {
                if eps >> i & 1 == 1 {
                    e = &e * v;
                }
            }
            matrix[(eps, delta)] = e;
        }
    }
    let invertible = matrix.inverse().is_some();
    Ok(StandardMatrix { matrix, labels, invertible })
}

/// Evaluates every coefficient of an element at a point.
pub fn eval_elem(ring: &PolyRing, x: &BsElem, point: &[FieldElement]) -> Vec<FieldElement> {
    x.iter().map(|c| ring.eval(c, point)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterMatrix;
    use crate::decat::standard_multiplicities;
    use crate::reps::geometric_rep;
    use std::collections::BTreeMap;

    fn setup() -> (GroupTable, Arc<PolyRing>) {
        let cm = CoxeterMatrix::builtin("A2").unwrap();
        let g = GroupTable::build(&cm, None).unwrap();
        let r = PolyRing::new(&geometric_rep(&cm).unwrap(), cm.labels()).unwrap();
        (g, r)
    }

    fn pt(r: &PolyRing, xs: &[i64]) -> Vec<FieldElement> {
        xs.iter().map(|x| r.field().from_int(*x)).collect()
    }

    #[test]
    fn exact_sequence() {
        let (_, r) = setup();
        for s in 0..2 {
            let seq = theta_exact_sequence(&r, s, 5);
            assert!(seq.holds());
            assert!(seq.multiplication[0][0] == r.one());
            assert!(&seq.multiplication[1][0] == r.x(s));
            assert_eq!(seq.mu_one, vec![r.x(s).clone(), -&r.one()]);
        }
    }

    #[test]
    fn splitting_at_points() {
        let (_, r) = setup();
        let sp = generic_splitting(&r, 0, &pt(&r, &[1, 1])).unwrap();
        assert!(sp.invertible);
        assert!(sp.nu_mu.is_one());
        // x_s = 2 y_0 - y_1 vanishes at (1, 2)
        assert!(matches!(generic_splitting(&r, 0, &pt(&r, &[1, 2])), Err(BimodError::NonGeneric(_))));
    }

    #[test]
    fn standard_matrices() {
        let (g, r) = setup();
        let m = standard_matrix(&r, &g, &[], &pt(&r, &[1, 1])).unwrap();
        assert!(m.matrix.is_identity());
        let p = pt(&r, &[1, 1]);
        let m = standard_matrix(&r, &g, &[0], &p).unwrap();
        let xs = r.eval(r.x(0), &p);
        assert_eq!(m.matrix.row(1), &[xs.clone(), -&xs]);
        let sts = [0, 1, 0];
        let p = pt(&r, &[1, 2]);
        // x_s(1, 2) = 0: the hyperplane of s is hit
        assert!(standard_matrix(&r, &g, &sts, &p).is_err());
        let p = pt(&r, &[3, 7]);
        let m = standard_matrix(&r, &g, &sts, &p).unwrap();
        assert!(m.invertible);
        let mut counts: BTreeMap<Elem, u64> = BTreeMap::new();
        for l in &m.labels {
            *counts.entry(*l).or_insert(0) += 1;
        }
        assert_eq!(counts, standard_multiplicities(&g, &sts).unwrap().n_w);
    }
}
