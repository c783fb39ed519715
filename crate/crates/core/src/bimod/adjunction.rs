//! The isomorphism `Hom(θ_s M, N) ≅ Hom(M, θ_s N)(2)` and its inverse.
//!
//! Basis tensors of `θ_s M` are indexed by `t | ε << 1`, with `t` the
//! exponent of `x_s` in the new leftmost factor; likewise for `θ_s N`.

use super::bs::{BSBimodule, BsElem};
use super::hom::{hom_solve, is_bimodule_map, BsMap};
use super::poly::Poly;
use super::ring::PolyRing;
use super::BimodError;

/// `θ_s M` for `M = BS(w)(d)`.
pub fn theta_times(s: usize, m: &BSBimodule) -> BSBimodule {
    let word: Vec<usize> = std::iter::once(s).chain(m.word().iter().copied()).collect();
    BSBimodule::build(m.ring(), &word, m.shift())
}

/// `1 ⊗ n` in `θ_s N`: each left coefficient `p = p_0 + p_1 x_s` is moved
/// across the invariant tensor sign.
fn include(ring: &PolyRing, s: usize, n: &BsElem) -> BsElem {
    let mut out = vec![Poly::zero(); 2 * n.len()];
    for (gamma, p) in n.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let (p0, p1) = ring.split(s, p);
        out[gamma << 1] = p0;
        out[(gamma << 1) | 1] = p1;
    }
    out
}

/// `F_s(f)(m) = x_s ⊗ f(1 ⊗ m) + 1 ⊗ f(1 ⊗ x_s m)`; raises degree by 2.
pub fn adjunction_f(s: usize, m: &BSBimodule, f: &BsMap) -> BsMap {
    let ring = m.ring();
    let xs = ring.x(s);
    (0..m.rank())
        .map(|eps| {
            let a = include(ring, s, &f[eps << 1]);
            let b = include(ring, s, &f[(eps << 1) | 1]);
            a.iter().zip(&b).map(|(p, q)| &(xs * p) + q).collect()
        })
        .collect()
}

/// Writes `g(m) = 1 ⊗ g_1(m) + x_s ⊗ g_2(m)` and sends `g` to
/// `λ ⊗ m -> λ g_2(m)`; on basis tensors `e_(0,ε) -> g_2(e_ε)` and
/// `e_(1,ε) -> g_2(x_s e_ε) = g_1(e_ε)`.
pub fn adjunction_g(s: usize, m: &BSBimodule, g: &BsMap) -> BsMap {
    let ring = m.ring();
    let xs = ring.x(s);
    let mut out: BsMap = Vec::with_capacity(2 * m.rank());
    for img in g {
        let half = img.len() / 2;
        let mut g1 = vec![Poly::zero(); half];
        let mut g2 = vec![Poly::zero(); half];
        for (idx, a) in img.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let (gamma, t) = (idx >> 1, idx & 1);
            // a ⊗ x_s^t ⊗ e'_γ with a = a_0 + a_1 x_s
            let (a0, a1) = ring.split(s, a);
            let (a0, a1) = if t == 1 { (&a0 * xs, &a1 * xs) } else { (a0, a1) };
            g1[gamma] = &g1[gamma] + &a0;
            g2[gamma] = &g2[gamma] + &a1;
        }
        out.push(g2);
        out.push(g1);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjunctionReport {
    pub degree: i32,
    /// `dim Hom(θ_s M, N)_d`.
    pub dim_left: usize,
    /// `dim Hom(M, θ_s N)_{d+2}`.
    pub dim_right: usize,
    /// `F_s` and `G_s` produce bimodule maps.
    pub maps_valid: bool,
    /// `G_s ∘ F_s = 1` and `F_s ∘ G_s = 1` on the computed bases.
    pub round_trips: bool,
}

impl AdjunctionReport {
    pub fn holds(&self) -> bool {
        self.dim_left == self.dim_right && self.maps_valid && self.round_trips
    }
}

pub fn adjunction_fs(s: usize, m: &BSBimodule, n: &BSBimodule, degree: i32) -> Result<AdjunctionReport, BimodError> {
    let sm = theta_times(s, m);
    let sn = theta_times(s, n);
    let left = hom_solve(&sm, n, degree)?;
    let right = hom_solve(m, &sn, degree + 2)?;
    let mut maps_valid = true;
    let mut round_trips = true;
    for f in left.maps() {
        let ff = adjunction_f(s, m, f);
        maps_valid &= is_bimodule_map(m, &sn, &ff) && right.coordinates(&ff).is_some();
        round_trips &= &adjunction_g(s, m, &ff) == f;
    }
    for g in right.maps() {
        let gg = adjunction_g(s, m, g);
        maps_valid &= is_bimodule_map(&sm, n, &gg) && left.coordinates(&gg).is_some();
        round_trips &= &adjunction_f(s, m, &gg) == g;
    }
    Ok(AdjunctionReport { degree, dim_left: left.dim(), dim_right: right.dim(), maps_valid, round_trips })
}
