//! The polynomial ring `R = Sym(V*)` with its `W`-action.

use std::sync::Arc;

use super::poly::{monomials, Poly};
use super::BimodError;
use crate::field::{FieldElement, TowerField};
use crate::linalg::Matrix;
use crate::reps::{check_reflections, Representation};

/// Functions on `V` in the coordinates `y_i` of the representation basis.
/// Polynomial degree `k` is grading degree `2k`.
#[derive(Debug, Clone)]
pub struct PolyRing {
    field: Arc<TowerField>,
    nvars: usize,
    names: Vec<String>,
    matrices: Vec<Matrix>,
    /// `action[s][i] = s·y_i = Σ_j (M_s)_{ij} y_j`.
    action: Vec<Vec<Poly>>,
    covectors: Vec<Vec<FieldElement>>,
    xs: Vec<Poly>,
}

impl PolyRing {
    /// Uses the reflection covectors normalized by `x_s(alpha_s) = 2`.
    pub fn new(rep: &Representation, names: &[String]) -> Result<Arc<Self>, BimodError> {
        let data = check_reflections(rep, names).map_err(BimodError::Reflection)?;
        Self::with_covectors(rep, names, data.covectors)
    }

    /// `covectors[s]` must be a `(-1)`-eigencovector of `M_s`.
    pub fn with_covectors(
        rep: &Representation,
        names: &[String],
        covectors: Vec<Vec<FieldElement>>,
    ) -> Result<Arc<Self>, BimodError> {
        let field = rep.field().clone();
        let n = rep.dim();
        if covectors.len() != rep.rank() {
            return Err(BimodError::Config("one covector per generator is required".into()));
        }
        for (s, x) in covectors.iter().enumerate() {
            let xm = rep.matrix(s).apply_left(x);
            if x.iter().all(FieldElement::is_zero) || xm.iter().zip(x).any(|(a, b)| *a != -b) {
                return Err(BimodError::Config(format!("covector for `{}` is not a (-1)-eigencovector", names[s])));
            }
        }
        let action = rep
            .matrices()
            .iter()
            .map(|m| (0..n).map(|i| Poly::linear(m.row(i))).collect())
            .collect();
        let xs = covectors.iter().map(|x| Poly::linear(x)).collect();
        Ok(Arc::new(PolyRing {
            field,
            nvars: n,
            names: names.to_vec(),
            matrices: rep.matrices().to_vec(),
            action,
            covectors,
            xs,
        }))
    }

    pub fn field(&self) -> &Arc<TowerField> {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.xs.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn matrix(&self, s: usize) -> &Matrix {
        &self.matrices[s]
    }

    pub fn covector(&self, s: usize) -> &[FieldElement] {
        &self.covectors[s]
    }

    /// `x_s` as a polynomial.
    pub fn x(&self, s: usize) -> &Poly {
        &self.xs[s]
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::var(&self.field, self.nvars, i)
    }

    pub fn one(&self) -> Poly {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: FieldElement) -> Poly {
        Poly::constant(self.nvars, c)
    }

    pub fn act(&self, s: usize, f: &Poly) -> Poly {
        f.substitute(&self.action[s], self.nvars)
    }

    /// `∂_s f = (f - s f) / x_s`.
    pub fn demazure(&self, s: usize, f: &Poly) -> Poly {
        (f - &self.act(s, f)).div_linear(&self.xs[s]).expect("f - s(f) vanishes on the reflecting hyperplane")
    }

    /// `f = a + b x_s` with `a = (f + s f)/2` and `b = ∂_s(f)/2` both
    /// `s`-invariant.
    pub fn split(&self, s: usize, f: &Poly) -> (Poly, Poly) {
        let half = self.field.from_int(2).inv().expect("characteristic zero");
        let sf = self.act(s, f);
        let a = (f + &sf).scale(&half);
        let b = (f - &sf).div_linear(&self.xs[s]).expect("exact division").scale(&half);
        (a, b)
    }

    /// Dimension of the polynomials of total degree `k`.
    pub fn dim(&self, k: u32) -> usize {
        monomials(self.nvars, k).len()
    }

    pub fn eval(&self, f: &Poly, point: &[FieldElement]) -> FieldElement {
        f.eval(&self.field, point)
    }

    /// Rank of `(s - 1)` on polynomials of degree `k`: the invariants have
    /// dimension `dim(k)` minus this.
    pub fn anti_invariant_rank(&self, s: usize, k: u32) -> usize {
        let monos = monomials(self.nvars, k);
        let index: std::collections::HashMap<&Vec<u32>, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let rows: Vec<Vec<FieldElement>> = monos
            .iter()
            .map(|m| {
                let p = Poly::monomial(m.clone(), self.field.one());
                let d = &self.act(s, &p) - &p;
                let mut row = vec![self.field.zero(); monos.len()];
                for (mm, c) in d.terms() {
                    row[index[mm]] = c.clone();
                }
                row
            })
            .collect();
        if rows.is_empty() {
            return 0;
        }
        Matrix::from_rows_in(&self.field, rows, Some(monos.len())).rank()
    }
}
