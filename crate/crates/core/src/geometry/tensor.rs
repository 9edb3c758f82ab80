//! Pointwise differential geometry built from metric jets.

use serde::{Deserialize, Serialize};

use crate::mat3::{SymMat3, Vec3, SYM_PAIRS};

/// `Γ[k].get(i, j) = Γ^k_ij`.
pub type Christoffel = [SymMat3; 3];
/// `dΓ[m][k].get(i, j) = ∂_m Γ^k_ij`.
pub type DChristoffel = [[SymMat3; 3]; 3];
/// `r[j][k][l][m] = R_{jkl}{}^m`.
pub type Riemann = [[[[f64; 3]; 3]; 3]; 3];

/// A symmetric metric with its first and second coordinate derivatives.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MetricJet {
    pub value: SymMat3,
    /// `d1[l] = ∂_l g`.
    pub d1: [SymMat3; 3],
    /// `d2[k][l] = ∂_k ∂_l g`, symmetric in `k, l`.
    pub d2: [[SymMat3; 3]; 3],
}

/// A scalar with first and second derivatives.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ScalarJet {
    pub value: f64,
    pub d1: [f64; 3],
    pub d2: [[f64; 3]; 3],
}

/// A vector field value and its first derivatives, `d1[j] = ∂_j v`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct VectorJet {
    pub value: Vec3,
    pub d1: [Vec3; 3],
}

impl MetricJet {
    /// Jet of `Eᵀ·E` from the jets of the nine vielbein entries (`e[a][i] = E_ai`).
    pub fn from_vielbein(e: &[[ScalarJet; 3]; 3]) -> Self {
        let mut jet = MetricJet::default();
        for (slot, &(i, j)) in SYM_PAIRS.iter().enumerate() {
            for row in e.iter() {
                let (x, y) = (&row[i], &row[j]);
                jet.value.0[slot] += x.value * y.value;
                for l in 0..3 {
                    jet.d1[l].0[slot] += x.d1[l] * y.value + x.value * y.d1[l];
                    for k in 0..3 {
                        jet.d2[k][l].0[slot] += x.d2[k][l] * y.value
                            + x.d1[l] * y.d1[k]
                            + x.d1[k] * y.d1[l]
                            + x.value * y.d2[k][l];
                    }
                }
            }
        }
        jet
    }

    /// Jet of `s·g` for a scalar jet `s`.
    pub fn scaled(&self, s: &ScalarJet) -> MetricJet {
        let mut out = MetricJet { value: self.value.scale(s.value), ..Default::default() };
        for l in 0..3 {
            out.d1[l] = self.d1[l].scale(s.value) + self.value.scale(s.d1[l]);
            for k in 0..3 {
                out.d2[k][l] = self.d2[k][l].scale(s.value)
                    + self.d1[l].scale(s.d1[k])
                    + self.d1[k].scale(s.d1[l])
                    + self.value.scale(s.d2[k][l]);
            }
        }
        out
    }
}

fn lower_index_sum(g_inv: &SymMat3, c: &[SymMat3; 3]) -> Christoffel {
    // Γ^k_ij = g^{kl} C_lij
    let mut out = [SymMat3::ZERO; 3];
    for (k, gk) in out.iter_mut().enumerate() {
        for slot in 0..6 {
            gk.0[slot] = (0..3).map(|l| g_inv.get(k, l) * c[l].0[slot]).sum();
        }
    }
    out
}

/// `C_lij = ½(∂_i g_lj + ∂_j g_il − ∂_l g_ij)`, Christoffel symbols of the first kind.
fn first_kind(d1: &[SymMat3; 3]) -> [SymMat3; 3] {
    let mut c = [SymMat3::ZERO; 3];
    for (l, cl) in c.iter_mut().enumerate() {
        for (slot, &(i, j)) in SYM_PAIRS.iter().enumerate() {
            cl.0[slot] = 0.5 * (d1[i].get(l, j) + d1[j].get(i, l) - d1[l].get(i, j));
        }
    }
    c
}

/// `Γ^k_ij = ½ g^{kl}(∂_i g_lj + ∂_j g_il − ∂_l g_ij)`.
pub fn christoffel(g_inv: &SymMat3, d1: &[SymMat3; 3]) -> Christoffel {
    lower_index_sum(g_inv, &first_kind(d1))
}

/// `∂_m Γ^k_ij` from the metric jet.
pub fn christoffel_derivative(g_inv: &SymMat3, jet: &MetricJet) -> DChristoffel {
    let c = first_kind(&jet.d1);
    let mut out = [[SymMat3::ZERO; 3]; 3];
    for m in 0..3 {
        // ∂_m g^{kl} = −g^{ka} ∂_m g_ab g^{bl}
        let gi = g_inv.to_mat3();
        let dg_inv = -(gi * jet.d1[m].to_mat3() * gi);
        let mut dc = [SymMat3::ZERO; 3];
        for (l, dcl) in dc.iter_mut().enumerate() {
            for (slot, &(i, j)) in SYM_PAIRS.iter().enumerate() {
                dcl.0[slot] = 0.5 * (jet.d2[m][i].get(l, j) + jet.d2[m][j].get(i, l) - jet.d2[m][l].get(i, j));
            }
        }
        for k in 0..3 {
            for slot in 0..6 {
                out[m][k].0[slot] = (0..3).map(|l| dg_inv[(k, l)] * c[l].0[slot] + g_inv.get(k, l) * dc[l].0[slot]).sum();
            }
        }
    }
    out
}

/// `R_{jkl}{}^m = ∂_k Γ^m_jl − ∂_j Γ^m_kl + Γ^n_jl Γ^m_kn − Γ^n_kl Γ^m_jn`,
/// so that the Ricci tensor is the contraction `R_jl = R_{jkl}{}^k`.
pub fn riemann(gamma: &Christoffel, dgamma: &DChristoffel) -> Riemann {
    let mut r = [[[[0.0; 3]; 3]; 3]; 3];
    for j in 0..3 {
        for k in 0..3 {
            for l in 0..3 {
                for m in 0..3 {
                    let mut v = dgamma[k][m].get(j, l) - dgamma[j][m].get(k, l);
                    for n in 0..3 {
                        v += gamma[n].get(j, l) * gamma[m].get(k, n) - gamma[n].get(k, l) * gamma[m].get(j, n);
                    }
                    r[j][k][l][m] = v;
                }
            }
        }
    }
    r
}

/// `R_ij = ∂_k Γ^k_ij − ∂_i Γ^k_kj + Γ^k_kl Γ^l_ij − Γ^k_il Γ^l_kj`.
pub fn textbook_ricci(gamma: &Christoffel, dgamma: &DChristoffel) -> SymMat3 {
    let mut out = SymMat3::ZERO;
    for (slot, &(i, j)) in SYM_PAIRS.iter().enumerate() {
        let mut v = 0.0;
        for k in 0..3 {
            v += dgamma[k][k].get(i, j) - 0.5 * (dgamma[i][k].get(k, j) + dgamma[j][k].get(k, i));
            for l in 0..3 {
                v += gamma[k].get(k, l) * gamma[l].get(i, j) - gamma[k].get(i, l) * gamma[l].get(k, j);
            }
        }
        out.0[slot] = v;
    }
    out
}

/// Background connection data at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct BackgroundPoint {
    pub metric: SymMat3,
    pub gamma: Christoffel,
    pub dgamma: DChristoffel,
    pub riemann: Riemann,
}

impl BackgroundPoint {
    pub fn from_jet(jet: &MetricJet, g_inv: &SymMat3) -> Self {
        let gamma = christoffel(g_inv, &jet.d1);
        let dgamma = christoffel_derivative(g_inv, jet);
        let riemann = riemann(&gamma, &dgamma);
        Self { metric: jet.value, gamma, dgamma, riemann }
    }

    /// Largest violation of `R_{jk}{}_{lm} = −R_{kj}{}_{lm}` and `R_{jklm} = −R_{jkml}`
    /// after lowering the last index with the background metric.
    pub fn riemann_antisymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        let low = |j: usize, k: usize, l: usize, m: usize| -> f64 {
            (0..3).map(|n| self.riemann[j][k][l][n] * self.metric.get(n, m)).sum()
        };
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    for m in 0..3 {
                        let v = low(j, k, l, m);
                        worst = worst.max((v + low(k, j, l, m)).abs()).max((v + low(j, k, m, l)).abs());
                    }
                }
            }
        }
        worst
    }
}

/// `ΔΓ^k_ij = Γ̄^k_ij − Γ̄back^k_ij`.
pub fn connection_difference(gamma_bar: &Christoffel, back: &Christoffel) -> Christoffel {
    [gamma_bar[0] - back[0], gamma_bar[1] - back[1], gamma_bar[2] - back[2]]
}

/// `Λ^i = γ̄^{jk} ΔΓ^i_jk`.
pub fn lambda_from(gb_inv: &SymMat3, delta: &Christoffel) -> Vec3 {
    Vec3([0, 1, 2].map(|i| crate::sector::contract(gb_inv, &delta[i])))
}

/// `∂_j Λ^i` from the jets of `γ̄` and both connections.
pub fn lambda_derivative(gb_inv: &SymMat3, gb_jet: &MetricJet, delta: &Christoffel, d_delta: &DChristoffel) -> [Vec3; 3] {
    let gi = gb_inv.to_mat3();
    let mut out = [Vec3::ZERO; 3];
    for (j, dj) in out.iter_mut().enumerate() {
        let dinv = (-(gi * gb_jet.d1[j].to_mat3() * gi)).sym_part();
        for i in 0..3 {
            dj[i] = crate::sector::contract(&dinv, &delta[i]) + crate::sector::contract(gb_inv, &d_delta[j][i]);
        }
    }
    out
}

/// Inputs of the conformal Ricci identity at one point.
pub struct RicciInputs<'a> {
    pub gb: &'a SymMat3,
    pub gb_inv: &'a SymMat3,
    /// `∂_l γ̄_ij`.
    pub d1: &'a [SymMat3; 3],
    /// `∂_k ∂_l γ̄_ij`.
    pub d2: &'a [[SymMat3; 3]; 3],
    pub delta: &'a Christoffel,
    pub back: &'a BackgroundPoint,
}

/// Conformal Ricci tensor written with background covariant derivatives:
///
/// `R̄_ij = −½γ̄^{kl} D_k D_l γ̄_ij + γ̄_{k(i} D_{j)} Λ^k − γ̄^{kl} γ̄_{m(i} R_{j)kl}{}^m
///        + γ̄^{lm} ΔΓ^k_lm ΔΓ_{(ij)k} + γ̄^{kl}(2ΔΓ^m_{k(i} ΔΓ_{j)ml} + ΔΓ^m_ik ΔΓ_{mjl})`
///
/// with `D` the background derivative, `R` the background Riemann tensor and
/// `ΔΓ_ijk = γ̄_il ΔΓ^l_jk`. The supplied `Λ` enters only through `D_j Λ^k`;
/// with `Λ = γ̄^{jk}ΔΓ^i_jk` the result is the Ricci tensor of `γ̄`.
pub fn conformal_ricci_point(inp: &RicciInputs<'_>, lambda: Vec3, dlambda: &[Vec3; 3]) -> SymMat3 {
    let g = inp.gb;
    let gi = inp.gb_inv;
    let bg = &inp.back.gamma;
    let dbg = &inp.back.dgamma;
    let dl = inp.delta;

    // T[l][i][j] = D_l γ̄_ij
    let mut t = [[[0.0; 3]; 3]; 3];
    for (l, tl) in t.iter_mut().enumerate() {
        for i in 0..3 {
            for j in 0..3 {
                let mut v = inp.d1[l].get(i, j);
                for m in 0..3 {
                    v -= bg[m].get(l, i) * g.get(m, j) + bg[m].get(l, j) * g.get(i, m);
                }
                tl[i][j] = v;
            }
        }
    }

    // lowered ΔΓ_ijk = γ̄_il ΔΓ^l_jk
    let mut low = [[[0.0; 3]; 3]; 3];
    for (i, li) in low.iter_mut().enumerate() {
        for j in 0..3 {
            for k in 0..3 {
                li[j][k] = (0..3).map(|l| g.get(i, l) * dl[l].get(j, k)).sum();
            }
        }
    }

    // D_j Λ^k
    let mut dlam = [[0.0; 3]; 3];
    for (j, row) in dlam.iter_mut().enumerate() {
        for k in 0..3 {
            row[k] = dlambda[j][k] + (0..3).map(|m| bg[k].get(j, m) * lambda[m]).sum::<f64>();
        }
    }

    let lam_metric = lambda_from(gi, dl);

    let mut out = SymMat3::ZERO;
    for (slot, &(i, j)) in SYM_PAIRS.iter().enumerate() {
        let mut v = 0.0;
        for k in 0..3 {
            for l in 0..3 {
                let gkl = gi.get(k, l);
                if gkl == 0.0 {
                    continue;
                }
                // D_k T_lij
                let mut dk_t = inp.d2[k][l].get(i, j);
                for m in 0..3 {
                    dk_t -= dbg[k][m].get(l, i) * g.get(m, j)
                        + bg[m].get(l, i) * inp.d1[k].get(m, j)
                        + dbg[k][m].get(l, j) * g.get(i, m)
                        + bg[m].get(l, j) * inp.d1[k].get(i, m);
                    dk_t -= bg[m].get(k, l) * t[m][i][j] + bg[m].get(k, i) * t[l][m][j] + bg[m].get(k, j) * t[l][i][m];
                }
                v -= 0.5 * gkl * dk_t;

                let mut riem = 0.0;
                let mut quad = 0.0;
                for m in 0..3 {
                    riem += g.get(m, i) * inp.back.riemann[j][k][l][m] + g.get(m, j) * inp.back.riemann[i][k][l][m];
                    quad += dl[m].get(k, i) * low[j][m][l] + dl[m].get(k, j) * low[i][m][l] + dl[m].get(i, k) * low[m][j][l];
                }
                v -= 0.5 * gkl * riem;
                v += gkl * quad;
            }
            v += 0.5 * (g.get(k, i) * dlam[j][k] + g.get(k, j) * dlam[i][k]);
            v += 0.5 * lam_metric[k] * (low[i][j][k] + low[j][i][k]);
        }
        out.0[slot] = v;
    }
    out
}
