//! Finite abelian groups, the group block `R_1` and the factorized universal
//! R-matrix of `u(χ)`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::double::{Basis, Double, DoubleElem, Mid, Mode, Tensor};
use crate::error::{Error, Result};
use crate::exactnum::{Cyclotomic, Field};
use crate::hwmod::{c_xy, f_xy, tensor_action, HwModule};
use crate::nichols::Pbw;
use crate::pairing::{DualPbw, Pairing};
use crate::qcombin::qexp_coeffs;
use crate::weylgpd::{Bichar, Weight, ZERO};

/// Exponent tuple of a group element or character (unused slots are 0).
pub type GroupElem = [i32; 4];

/// `Z/m_1 × ⋯ × Z/m_r`, `r ≤ 4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    divisors: Vec<u32>,
}

/// `ζ_m^k` inside `Q(ζ_N)`, available when `m | N`, or `m | 2N` for odd `N`.
pub fn root_in_field(field: &Field, m: u32, k: i64) -> Result<Cyclotomic> {
    let n = field.conductor();
    let k = k.rem_euclid(m as i64);
    if n % m == 0 {
        return Ok(field.root_of_unity(k * (n / m) as i64));
    }
    if n % 2 == 1 && (2 * n) % m == 0 {
        // ζ_{2N} = −ζ_N^{(N+1)/2}
        let e = k * (2 * n / m) as i64;
        let z = field.root_of_unity(e * ((n as i64 + 1) / 2));
        return Ok(if e % 2 == 0 { z } else { -z });
    }
    Err(Error::InvalidGroup(format!(
        "no root of unity of order {m} in conductor {n}"
    )))
}

impl FiniteAbelianGroup {
    pub fn new(divisors: &[u32]) -> Result<FiniteAbelianGroup> {
        if divisors.len() > 4 || divisors.iter().any(|&m| m == 0) {
            return Err(Error::InvalidGroup(format!("bad elementary divisors {divisors:?}")));
        }
        Ok(FiniteAbelianGroup {
            divisors: divisors.to_vec(),
        })
    }

    pub fn trivial() -> FiniteAbelianGroup {
        FiniteAbelianGroup { divisors: Vec::new() }
    }

    pub fn divisors(&self) -> &[u32] {
        &self.divisors
    }

    pub fn order(&self) -> u64 {
        self.divisors.iter().map(|&m| m as u64).product()
    }

    /// Exponent of the group (lcm of the divisors).
    pub fn exponent(&self) -> u32 {
        self.divisors.iter().fold(1u32, |a, &m| a.lcm(&m))
    }

    pub fn reduce(&self, a: &GroupElem) -> GroupElem {
        let mut out = [0; 4];
        for (k, &m) in self.divisors.iter().enumerate() {
            out[k] = a[k].rem_euclid(m as i32);
        }
        out
    }

    pub fn add(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        let mut s = [0; 4];
        for k in 0..4 {
            s[k] = a[k] + b[k];
        }
        self.reduce(&s)
    }

    pub fn neg(&self, a: &GroupElem) -> GroupElem {
        self.reduce(&[-a[0], -a[1], -a[2], -a[3]])
    }

    pub fn scale(&self, c: i32, a: &GroupElem) -> GroupElem {
        self.reduce(&[c * a[0], c * a[1], c * a[2], c * a[3]])
    }

    /// All elements in lexicographic order of exponents.
    pub fn elements(&self) -> Vec<GroupElem> {
        let mut out = vec![[0; 4]];
        for (k, &m) in self.divisors.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * m as usize);
            for e in &out {
                for x in 0..m as i32 {
                    let mut f = *e;
                    f[k] = x;
                    next.push(f);
                }
            }
            out = next;
        }
        out.sort();
        out
    }

    /// `γ(g) = Π ζ_{m_k}^{γ_k g_k}`.
    pub fn eval(&self, field: &Field, gamma: &GroupElem, g: &GroupElem) -> Result<Cyclotomic> {
        let l = self.exponent();
        let mut e: i64 = 0;
        for (k, &m) in self.divisors.iter().enumerate() {
            e += gamma[k] as i64 * g[k] as i64 * (l / m) as i64;
        }
        root_in_field(field, l, e)
    }
}

/// Elements `g_i ∈ Γ` and characters `γ_j ∈ Γ̂` with `γ_j(g_i) = q_ij`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAssignment {
    pub group: FiniteAbelianGroup,
    pub g: Vec<GroupElem>,
    pub gamma: Vec<GroupElem>,
}

impl GroupAssignment {
    /// `Z/N^θ` with `g_i` the standard generators and `γ_j = (e_{1j}, …, e_{θj})`.
    pub fn minimal(chi: &Bichar) -> Result<GroupAssignment> {
        let exps = chi
            .exponents()
            .ok_or_else(|| Error::InvalidGroup("braiding is not given by powers of ζ_N".into()))?;
        let n = chi.field().conductor();
        let rank = chi.rank();
        let group = FiniteAbelianGroup::new(&vec![n; rank])?;
        let g = (0..rank)
            .map(|i| {
                let mut e = [0; 4];
                e[i] = 1;
                e
            })
            .collect();
        let gamma = (0..rank)
            .map(|j| {
                let mut e = [0; 4];
                for (i, slot) in e.iter_mut().enumerate().take(rank) {
                    *slot = exps[i][j].rem_euclid(n as i64) as i32;
                }
                e
            })
            .collect();
        Ok(GroupAssignment { group, g, gamma })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupReport {
    pub valid: bool,
    /// Pairs `(i, j)` with `γ_j(g_i) ≠ q_ij`.
    pub mismatches: Vec<(usize, usize)>,
    /// Set when the assignment is invalid and a valid one exists.
    pub suggestion: Option<GroupAssignment>,
    pub message: String,
}

pub fn validate_group(assign: &GroupAssignment, chi: &Bichar) -> GroupReport {
    let field = chi.field();
    let rank = chi.rank();
    let mut mismatches = Vec::new();
    let mut message = String::new();
    if assign.g.len() != rank || assign.gamma.len() != rank {
        message = format!("expected {rank} elements and {rank} characters");
        for i in 0..rank {
            for j in 0..rank {
                mismatches.push((i, j));
            }
        }
    } else {
        for i in 0..rank {
            for j in 0..rank {
                match assign.group.eval(field, &assign.gamma[j], &assign.g[i]) {
                    Ok(v) if v == *chi.q(i, j) => {}
                    Ok(_) => mismatches.push((i, j)),
                    Err(e) => {
                        message = format!("{e}");
                        mismatches.push((i, j));
                    }
                }
            }
        }
    }
    let valid = mismatches.is_empty();
    let suggestion = if valid {
        None
    } else {
        GroupAssignment::minimal(chi).ok()
    };
    GroupReport {
        valid,
        mismatches,
        suggestion,
        message,
    }
}

/// One factor `Σ_{i<N_β} c_i f_β^i ⊗ e_β^i`, `c_i = η_β^{-i} / (i)_{q_β}!`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RFactor {
    /// Position of `β` in the convex order (0-based).
    pub index: usize,
    pub root: Weight,
    pub q: Cyclotomic,
    pub order: u32,
    pub eta: Cyclotomic,
    pub coeffs: Vec<Cyclotomic>,
}

impl RFactor {
    /// Coefficients of the inverse series in `f_β ⊗ e_β`, from the closed form
    /// `(−η_β^{-1})^i q_β^{i(i−1)/2} / (i)_{q_β}!`.
    pub fn inverse_coeffs(&self) -> Result<Vec<Cyclotomic>> {
        let base = qexp_coeffs(&self.q, self.order)?;
        let ei = (-&self.eta).inv()?;
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (i, c) in base.coeffs.iter().enumerate() {
            let i = i as i64;
            out.push(&(&ei.pow(i)? * &self.q.pow(i * (i - 1) / 2)?) * c);
        }
        Ok(out)
    }
}

/// Factors in decreasing convex order, followed by `R_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RFactorization {
    pub factors: Vec<RFactor>,
    pub assignment: GroupAssignment,
}

pub fn universal_r(pbw: &Pbw, dual: &DualPbw, assignment: &GroupAssignment) -> Result<RFactorization> {
    let mut factors = Vec::with_capacity(pbw.len());
    for k in (0..pbw.len()).rev() {
        let order = pbw.orders()[k];
        if order == u32::MAX {
            return Err(Error::InfiniteOrder);
        }
        let q = pbw.q(k).clone();
        let eta = dual.eta(k).clone();
        let base = qexp_coeffs(&q, order)?;
        let ei = eta.inv()?;
        let coeffs = base
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| Ok(&ei.pow(i as i64)? * c))
            .collect::<Result<Vec<_>>>()?;
        factors.push(RFactor {
            index: k,
            root: pbw.roots()[k],
            q,
            order,
            eta,
            coeffs,
        });
    }
    Ok(RFactorization {
        factors,
        assignment: assignment.clone(),
    })
}

fn group_of<'a>(d: &'a Double) -> Result<&'a GroupAssignment> {
    match d.mode() {
        Mode::Group(a) => Ok(a),
        Mode::Torus => Err(Error::ModeMismatch),
    }
}

/// `R_1 = |Γ|^{-1} Σ_{g,γ} γ(g^{-1}) γ ⊗ g`.
pub fn r_one(d: &Double) -> Result<Tensor> {
    let a = group_of(d)?;
    let field = d.field();
    let n = field.integer(a.group.order() as i64);
    let inv = n.inv()?;
    let mut t = Tensor::zero(field);
    for g in a.group.elements() {
        let gi = a.group.neg(&g);
        for gamma in a.group.elements() {
            let c = &a.group.eval(field, &gamma, &gi)? * &inv;
            t.add_term(
                vec![Basis::mid(Mid { k: ZERO, l: gamma }), Basis::mid(Mid { k: g, l: ZERO })],
                &c,
            );
        }
    }
    Ok(t)
}

/// `Σ_i c_i (f_β ⊗ e_β)^i` for the given coefficients.
pub fn factor_series(d: &Double, pbw: &Pbw, dual: &DualPbw, k: usize, coeffs: &[Cyclotomic]) -> Result<Tensor> {
    let field = d.field();
    let beta = pbw.roots()[k];
    let x = Tensor::pure(
        field,
        &[d.f_elem(&beta, dual.f(k)), d.e_elem(&beta, &pbw.vectors()[k].coords)],
    );
    let mut power = Tensor::one(field, 2);
    let mut out = Tensor::zero(field);
    for (i, c) in coeffs.iter().enumerate() {
        if i > 0 {
            power = d.tensor_mul(&power, &x)?;
        }
        out = out.add(&power.scale(c));
    }
    Ok(out)
}

/// The expanded R-matrix `τ(Θ R_1)`, `Θ` the ordered product of the
/// factors, so that the first leg lies in `u^{≥0}`. `order` permutes the
/// factors (positions in `r.factors`); `None` keeps the decreasing order.
pub fn expand(
    d: &Double,
    pbw: &Pbw,
    dual: &DualPbw,
    r: &RFactorization,
    order: Option<&[usize]>,
    max_terms: usize,
) -> Result<Tensor> {
    let idx: Vec<usize> = match order {
        Some(o) => o.to_vec(),
        None => (0..r.factors.len()).collect(),
    };
    let mut acc = Tensor::one(d.field(), 2);
    for &p in &idx {
        let f = &r.factors[p];
        acc = d.tensor_mul(&acc, &factor_series(d, pbw, dual, f.index, &f.coeffs)?)?;
        if acc.len() > max_terms {
            return Err(Error::SizeBoundExceeded(acc.len()));
        }
    }
    acc = d.tensor_mul(&acc, &r_one(d)?)?;
    if acc.len() > max_terms {
        return Err(Error::SizeBoundExceeded(acc.len()));
    }
    Ok(acc.embed(2, &[1, 0]))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RCheckReport {
    pub terms: usize,
    /// Generators `x` with `R Δ(x) ≠ Δ^{cop}(x) R`.
    pub intertwining_failures: Vec<String>,
    /// `(Δ⊗id)R = R_13 R_23`.
    pub delta_left: bool,
    /// `(id⊗Δ)R = R_13 R_12`.
    pub delta_right: bool,
    /// `R (S⊗id)(R) = 1⊗1 = (S⊗id)(R) R`.
    pub invertible: bool,
    /// `(ε⊗id)R = 1 = (id⊗ε)R`.
    pub counit: bool,
}

impl RCheckReport {
    pub fn passed(&self) -> bool {
        self.intertwining_failures.is_empty() && self.delta_left && self.delta_right && self.invertible && self.counit
    }
}

fn apply_leg(d: &Double, t: &Tensor, leg: usize, f: impl Fn(&DoubleElem) -> Result<DoubleElem>) -> Result<Tensor> {
    let mut out = Tensor::zero(d.field());
    for (k, c) in t.terms() {
        let img = f(&DoubleElem::basis(d.field(), k[leg]))?;
        for (b, x) in img.terms() {
            let mut nk = k.clone();
            nk[leg] = *b;
            out.add_term(nk, &(c * x));
        }
    }
    Ok(out)
}

pub fn verify_r(d: &Double, r: &Tensor) -> Result<RCheckReport> {
    let field = d.field().clone();
    let mut intertwining_failures = Vec::new();
    for (name, x) in d.generators() {
        let dx = d.coproduct(&x)?;
        let lhs = d.tensor_mul(r, &dx)?;
        let rhs = d.tensor_mul(&dx.embed(2, &[1, 0]), r)?;
        if lhs != rhs {
            intertwining_failures.push(name);
        }
    }
    let delta_left = d.coproduct_leg(r, 0)? == d.tensor_mul(&r.embed(3, &[0, 2]), &r.embed(3, &[1, 2]))?;
    let delta_right = d.coproduct_leg(r, 1)? == d.tensor_mul(&r.embed(3, &[0, 2]), &r.embed(3, &[0, 1]))?;
    let rinv = apply_leg(d, r, 0, |x| d.antipode(x))?;
    let one = Tensor::one(&field, 2);
    let invertible = d.tensor_mul(r, &rinv)? == one && d.tensor_mul(&rinv, r)? == one;
    let mut left = DoubleElem::zero(&field);
    let mut right = DoubleElem::zero(&field);
    for (k, c) in r.terms() {
        left.add_scaled(&(c * &d.counit(&DoubleElem::basis(&field, k[0]))), &DoubleElem::basis(&field, k[1]));
        right.add_scaled(&(c * &d.counit(&DoubleElem::basis(&field, k[1]))), &DoubleElem::basis(&field, k[0]));
    }
    let counit = left == d.one() && right == d.one();
    Ok(RCheckReport {
        terms: r.len(),
        intertwining_failures,
        delta_left,
        delta_right,
        invertible,
        counit,
    })
}

/// Expands `R` in decreasing order and runs [`verify_r`].
pub fn expand_and_verify(
    d: &Double,
    pbw: &Pbw,
    dual: &DualPbw,
    r: &RFactorization,
    max_terms: usize,
) -> Result<RCheckReport> {
    verify_r(d, &expand(d, pbw, dual, r, None, max_terms)?)
}

/// Each factor times its closed-form inverse series is `1⊗1`.
pub fn factor_inverse_check(d: &Double, pbw: &Pbw, dual: &DualPbw, r: &RFactorization) -> Result<bool> {
    let one = Tensor::one(d.field(), 2);
    for f in &r.factors {
        let a = factor_series(d, pbw, dual, f.index, &f.coeffs)?;
        let b = factor_series(d, pbw, dual, f.index, &f.inverse_coeffs()?)?;
        if d.tensor_mul(&a, &b)? != one || d.tensor_mul(&b, &a)? != one {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Comparison of the factorized part `Θ = Π_β Σ_i c_i f_β^i ⊗ e_β^i` with the
/// module operator `C_xy` on `V_x ⊗ V_y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleComparison {
    /// `(ρ_x⊗ρ_y)(τΘ) = C_xy`.
    pub theta_matches: bool,
    /// Per weight block `(α, β)` of `V_x ⊗ V_y`, the diagonal scalar of
    /// `f_xy^{-1}`, which the group part takes over in `R_xy`.
    pub block_scalars: Vec<(Weight, Weight, Cyclotomic)>,
}

pub fn compare_module_r(
    d: &Double,
    pbw: &Pbw,
    dual: &DualPbw,
    pairing: &Pairing,
    r: &RFactorization,
    vx: &HwModule,
    vy: &HwModule,
) -> Result<ModuleComparison> {
    let mut theta = Tensor::one(d.field(), 2);
    for f in &r.factors {
        theta = d.tensor_mul(&theta, &factor_series(d, pbw, dual, f.index, &f.coeffs)?)?;
    }
    let lhs = tensor_action(&theta.embed(2, &[1, 0]), &[vx, vy]);
    let rhs = c_xy(d, pairing, vx, vy)?;
    let fxy = f_xy(vx, vy);
    let mut block_scalars = Vec::new();
    let mut seen = alloc::collections::BTreeSet::new();
    for a in 0..vx.dim() {
        for b in 0..vy.dim() {
            let key = (*vx.degree_of(a), *vy.degree_of(b));
            if seen.insert(key) {
                let k = a * vy.dim() + b;
                let s = fxy.get(k, k).expect("diagonal").inv()?;
                block_scalars.push((key.0, key.1, s));
            }
        }
    }
    Ok(ModuleComparison {
        theta_matches: lhs == rhs,
        block_scalars,
    })
}
