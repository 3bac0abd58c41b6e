//! Verma-type highest-weight modules `V = u⁻ · v₀` and the operators
//! `f_xy`, `C_xy`, `R_xy = C_xy f_xy^{-1}` on tensor products.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::double::{canonical_prime, canonical_tensor, Basis, Double, DoubleElem, Mid, Mode, Tensor};
use crate::error::{Error, Result};
use crate::exactnum::{Cyclotomic, Field};
use crate::linalg::{unit, SparseMatrix};
use crate::nichols::Nichols;
use crate::pairing::Pairing;
use crate::weylgpd::{neg, simple, sub, Weight, ZERO};

/// `Λ(K_i)` and `Λ(L_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSpec {
    pub k: Vec<Cyclotomic>,
    pub l: Vec<Cyclotomic>,
}

impl WeightSpec {
    pub fn new(k: Vec<Cyclotomic>, l: Vec<Cyclotomic>) -> Result<WeightSpec> {
        if k.len() != l.len() {
            return Err(Error::InvalidInput("weight lists differ in length".into()));
        }
        if k.iter().chain(&l).any(|x| x.is_zero()) {
            return Err(Error::ZeroScalar);
        }
        Ok(WeightSpec { k, l })
    }

    /// `Λ(K_i) = q_ii`, `Λ(L_i) = 1`.
    pub fn standard(nich: &Nichols) -> WeightSpec {
        let chi = nich.bichar();
        WeightSpec {
            k: (0..chi.rank()).map(|i| chi.q(i, i).clone()).collect(),
            l: vec![nich.field().one(); chi.rank()],
        }
    }

    fn power(vals: &[Cyclotomic], mu: &Weight) -> Cyclotomic {
        let mut acc = vals[0].field().one();
        for (i, v) in vals.iter().enumerate() {
            acc = &acc * &v.pow(mu[i] as i64).expect("nonzero weight");
        }
        acc
    }

    /// `Λ(K^μ)`.
    pub fn k_pow(&self, mu: &Weight) -> Cyclotomic {
        WeightSpec::power(&self.k, mu)
    }

    /// `Λ(L^μ)`.
    pub fn l_pow(&self, mu: &Weight) -> Cyclotomic {
        WeightSpec::power(&self.l, mu)
    }
}

/// Verma module over `u(χ)` (torus form). The basis vector `(β, p)` is
/// `F_p v₀` with `F_p` the F-pivot `p` of degree `−β`.
pub struct HwModule<'a> {
    nich: &'a Nichols,
    weight: WeightSpec,
    degrees: Vec<Weight>,
    offsets: BTreeMap<Weight, usize>,
    e: Vec<SparseMatrix>,
    f: Vec<SparseMatrix>,
    words: RefCell<BTreeMap<(bool, Weight, usize), SparseMatrix>>,
}

impl<'a> HwModule<'a> {
    pub fn verma(nich: &'a Nichols, weight: WeightSpec, max_dim: usize) -> Result<HwModule<'a>> {
        if !nich.is_complete() {
            return Err(Error::InvalidInput(
                "Verma modules need the full Nichols algebra".into(),
            ));
        }
        if weight.k.len() != nich.rank() {
            return Err(Error::InvalidInput("weight rank differs from braiding rank".into()));
        }
        let dim = nich.total_dim().unwrap_or(usize::MAX);
        if dim > max_dim {
            return Err(Error::DimensionBound(dim));
        }
        let mut degrees = Vec::with_capacity(dim);
        let mut offsets = BTreeMap::new();
        for c in nich.components() {
            offsets.insert(c.degree(), degrees.len());
            degrees.extend(core::iter::repeat_n(c.degree(), c.dim()));
        }
        let mut m = HwModule {
            nich,
            weight,
            degrees,
            offsets,
            e: Vec::new(),
            f: Vec::new(),
            words: RefCell::new(BTreeMap::new()),
        };
        let chi = nich.bichar();
        let field = nich.field().clone();
        for j in 0..nich.rank() {
            let aj = simple(j);
            let mut fm = SparseMatrix::zeros(dim, dim);
            let mut em = SparseMatrix::zeros(dim, dim);
            for c in nich.components() {
                let beta = c.degree();
                let off = m.offsets[&beta];
                for p in 0..c.dim() {
                    let v = unit(&field, p);
                    let col = off + p;
                    // F_j (f v₀) = (F_j f) v₀
                    let up = crate::weylgpd::add(&beta, &aj);
                    if nich.dim(&up) > 0 {
                        let w = nich.right_mul(j, &beta, &v)?;
                        let o = m.offsets[&up];
                        for (q, x) in &w {
                            fm.add_at(o + q, col, x);
                        }
                    }
                    // E_j (f v₀) = K_j f''v₀ − Λ(L_j) f'v₀
                    if beta[j] > 0 {
                        let down = sub(&beta, &aj);
                        if let Some(&o) = m.offsets.get(&down) {
                            let kscal = m.weight.k[j].try_div(&chi.chi(&aj, &down))?;
                            for (q, x) in &nich.dsecond(j, &beta, &v) {
                                em.add_at(o + q, col, &(x * &kscal));
                            }
                            let lscal = -&m.weight.l[j];
                            for (q, x) in &nich.dprime(j, &beta, &v) {
                                em.add_at(o + q, col, &(x * &lscal));
                            }
                        }
                    }
                }
            }
            m.e.push(em);
            m.f.push(fm);
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn field(&self) -> &Field {
        self.nich.field()
    }

    pub fn weight(&self) -> &WeightSpec {
        &self.weight
    }

    /// `β` such that basis vector `k` lies in degree `−β`.
    pub fn degree_of(&self, k: usize) -> &Weight {
        &self.degrees[k]
    }

    pub fn index(&self, beta: &Weight, p: usize) -> Option<usize> {
        self.offsets.get(beta).map(|o| o + p)
    }

    pub fn e(&self, i: usize) -> &SparseMatrix {
        &self.e[i]
    }

    pub fn f(&self, i: usize) -> &SparseMatrix {
        &self.f[i]
    }

    pub fn identity(&self) -> SparseMatrix {
        SparseMatrix::identity(self.field(), self.dim())
    }

    /// `K^k L^l`, diagonal: on degree `−γ` it is
    /// `χ(k, γ)^{-1} Λ(K^k) · χ(γ, l) Λ(L^l)`.
    pub fn torus(&self, m: &Mid) -> SparseMatrix {
        let chi = self.nich.bichar();
        let base = &self.weight.k_pow(&m.k) * &self.weight.l_pow(&m.l);
        let mut cache: BTreeMap<Weight, Cyclotomic> = BTreeMap::new();
        let diag = self
            .degrees
            .iter()
            .map(|g| {
                cache
                    .entry(*g)
                    .or_insert_with(|| {
                        let a = &base * &chi.chi(g, &m.l);
                        a.try_div(&chi.chi(&m.k, g)).expect("nonzero braiding")
                    })
                    .clone()
            })
            .collect();
        SparseMatrix::diagonal(diag)
    }

    pub fn k_pow(&self, beta: &Weight) -> SparseMatrix {
        self.torus(&Mid { k: *beta, l: ZERO })
    }

    pub fn l_pow(&self, beta: &Weight) -> SparseMatrix {
        self.torus(&Mid { k: ZERO, l: *beta })
    }

    fn pivot_matrix(&self, is_f: bool, beta: &Weight, p: usize) -> SparseMatrix {
        if let Some(m) = self.words.borrow().get(&(is_f, *beta, p)) {
            return m.clone();
        }
        let word = &self.nich.pivots(beta)[p];
        let mut acc = self.identity();
        for &l in word {
            let g = if is_f { &self.f[l as usize] } else { &self.e[l as usize] };
            // E-word x_{i1}⋯x_{in} acts as E_{i1}⋯E_{in}; the F-word is reversed
            acc = if is_f { g.mul(&acc) } else { acc.mul(g) };
        }
        self.words.borrow_mut().insert((is_f, *beta, p), acc.clone());
        acc
    }

    pub fn act_basis(&self, b: &Basis) -> SparseMatrix {
        let mut m = self.torus(&b.mid);
        if b.e_deg != ZERO {
            m = self.pivot_matrix(false, &b.e_deg, b.e).mul(&m);
        }
        if b.f_deg != ZERO {
            m = m.mul(&self.pivot_matrix(true, &b.f_deg, b.f));
        }
        m
    }

    pub fn act(&self, x: &DoubleElem) -> SparseMatrix {
        let n = self.dim();
        let mut out = SparseMatrix::zeros(n, n);
        for (b, c) in x.terms() {
            out = out.add(&self.act_basis(b).scaled(c));
        }
        out
    }
}

fn require_torus(d: &Double) -> Result<()> {
    match d.mode() {
        Mode::Torus => Ok(()),
        Mode::Group(_) => Err(Error::ModeMismatch),
    }
}

/// `(ρ_1 ⊗ ⋯ ⊗ ρ_n)(t)`.
pub fn tensor_action(t: &Tensor, mods: &[&HwModule]) -> SparseMatrix {
    let dims: usize = mods.iter().map(|m| m.dim()).product();
    let mut out = SparseMatrix::zeros(dims, dims);
    let mut cache: Vec<BTreeMap<Basis, SparseMatrix>> = vec![BTreeMap::new(); mods.len()];
    for (key, c) in t.terms() {
        let mut acc: Option<SparseMatrix> = None;
        for (leg, b) in key.iter().enumerate() {
            let m = cache[leg]
                .entry(*b)
                .or_insert_with(|| mods[leg].act_basis(b))
                .clone();
            acc = Some(match acc {
                None => m,
                Some(a) => a.kron(&m),
            });
        }
        if let Some(a) = acc {
            out = out.add(&a.scaled(c));
        }
    }
    out
}

/// `f_xy(X v_x ⊗ Y v_y) = χ(β, α) Λ_x(K^{−β}) Λ_y(L^α) X v_x ⊗ Y v_y` for
/// `X` of degree `−α`, `Y` of degree `−β`.
pub fn f_xy(vx: &HwModule, vy: &HwModule) -> SparseMatrix {
    let chi = vx.nich.bichar();
    let mut diag = Vec::with_capacity(vx.dim() * vy.dim());
    for a in &vx.degrees {
        for b in &vy.degrees {
            let s = &(&chi.chi(b, a) * &vx.weight.k_pow(&neg(b))) * &vy.weight.l_pow(a);
            diag.push(s);
        }
    }
    SparseMatrix::diagonal(diag)
}

pub fn f_xy_inverse(vx: &HwModule, vy: &HwModule) -> SparseMatrix {
    let f = f_xy(vx, vy);
    let diag = (0..f.nrows())
        .map(|k| f.get(k, k).expect("invertible").inv().expect("nonzero"))
        .collect();
    SparseMatrix::diagonal(diag)
}

fn module_degrees(nich: &Nichols) -> Vec<Weight> {
    nich.components().filter(|c| c.dim() > 0).map(|c| c.degree()).collect()
}

/// `(ρ_x ⊗ ρ_y)(C_β)`.
pub fn c_beta(d: &Double, pairing: &Pairing, vx: &HwModule, vy: &HwModule, beta: &Weight) -> SparseMatrix {
    tensor_action(&canonical_tensor(d, pairing, beta), &[vx, vy])
}

/// `C_xy = Σ_β (ρ_x ⊗ ρ_y)(C_β)`.
pub fn c_xy(d: &Double, pairing: &Pairing, vx: &HwModule, vy: &HwModule) -> Result<SparseMatrix> {
    require_torus(d)?;
    let n = vx.dim() * vy.dim();
    let mut out = SparseMatrix::zeros(n, n);
    for beta in module_degrees(d.nichols()) {
        out = out.add(&c_beta(d, pairing, vx, vy, &beta));
    }
    Ok(out)
}

/// `Σ_β (ρ_x ⊗ ρ_y)((K^β ⊗ 1)(S ⊗ id)(C_β))`.
pub fn c_xy_inverse(d: &Double, pairing: &Pairing, vx: &HwModule, vy: &HwModule) -> Result<SparseMatrix> {
    require_torus(d)?;
    let n = vx.dim() * vy.dim();
    let mut out = SparseMatrix::zeros(n, n);
    for beta in module_degrees(d.nichols()) {
        out = out.add(&tensor_action(&canonical_prime(d, pairing, &beta)?, &[vx, vy]));
    }
    Ok(out)
}

/// `R_xy = C_xy f_xy^{-1}`.
pub fn r_xy(d: &Double, pairing: &Pairing, vx: &HwModule, vy: &HwModule) -> Result<SparseMatrix> {
    Ok(c_xy(d, pairing, vx, vy)?.mul(&f_xy_inverse(vx, vy)))
}

/// Places an operator on `V_a ⊗ V_b` at legs `(a, b)` of `V_1 ⊗ V_2 ⊗ V_3`.
pub fn embed_pair(op: &SparseMatrix, dims: [usize; 3], legs: (usize, usize)) -> SparseMatrix {
    let (a, b) = legs;
    let other = 3 - a - b;
    let n = dims[0] * dims[1] * dims[2];
    let flat = |idx: [usize; 3]| (idx[0] * dims[1] + idx[1]) * dims[2] + idx[2];
    let mut out = SparseMatrix::zeros(n, n);
    for r in 0..op.nrows() {
        let (ra, rb) = (r / dims[b], r % dims[b]);
        for (c, v) in op.row(r) {
            let (ca, cb) = (c / dims[b], c % dims[b]);
            for k in 0..dims[other] {
                let mut ri = [0; 3];
                let mut ci = [0; 3];
                ri[a] = ra;
                ri[b] = rb;
                ri[other] = k;
                ci[a] = ca;
                ci[b] = cb;
                ci[other] = k;
                out.add_at(flat(ri), flat(ci), v);
            }
        }
    }
    out
}

/// Outcome of the module-level checks on one pair `V_x ⊗ V_y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairReport {
    /// `C_xy` times the closed-form inverse is the identity on both sides.
    pub c_inverse: bool,
    /// The four `f_xy` commutation identities, in the order
    /// `E_i⊗1`, `1⊗E_i`, `F_i⊗1`, `1⊗F_i`.
    pub f_commutation: [bool; 4],
    /// `R_xy Δ(X) = (τ∘Δ)(X) R_xy` for all generators `X`.
    pub intertwiner: bool,
    /// `[1⊗E_i, C_{β+α_i}]` and `[C_{β+α_i}, F_i⊗1]` identities.
    pub commutation: bool,
}

impl PairReport {
    pub fn passed(&self) -> bool {
        self.c_inverse && self.f_commutation.iter().all(|&b| b) && self.intertwiner && self.commutation
    }
}

pub fn pair_check(d: &Double, pairing: &Pairing, vx: &HwModule, vy: &HwModule) -> Result<PairReport> {
    require_torus(d)?;
    let c = c_xy(d, pairing, vx, vy)?;
    let cinv = c_xy_inverse(d, pairing, vx, vy)?;
    let n = vx.dim() * vy.dim();
    let id = SparseMatrix::identity(d.field(), n);
    let c_inverse = c.mul(&cinv) == id && cinv.mul(&c) == id;

    let f = f_xy(vx, vy);
    let (ix, iy) = (vx.identity(), vy.identity());
    let mut fc = [true; 4];
    for i in 0..d.rank() {
        let ai = simple(i);
        let pairs = [
            (vx.e(i).kron(&iy), vx.e(i).kron(&vy.l_pow(&neg(&ai)))),
            (ix.kron(vy.e(i)), vx.k_pow(&ai).kron(vy.e(i))),
            (vx.f(i).kron(&iy), vx.f(i).kron(&vy.l_pow(&ai))),
            (ix.kron(vy.f(i)), vx.k_pow(&neg(&ai)).kron(vy.f(i))),
        ];
        for (k, (lhs, rhs)) in pairs.iter().enumerate() {
            if f.mul(lhs) != rhs.mul(&f) {
                fc[k] = false;
            }
        }
    }

    let r = c.mul(&f_xy_inverse(vx, vy));
    let mut intertwiner = true;
    for (_, x) in d.generators() {
        let dx = d.coproduct(&x)?;
        let lhs = r.mul(&tensor_action(&dx, &[vx, vy]));
        let rhs = tensor_action(&dx.embed(2, &[1, 0]), &[vx, vy]).mul(&r);
        if lhs != rhs {
            intertwiner = false;
        }
    }

    let commutation = commutation_lemma_check(d, pairing, vx, vy)?;
    Ok(PairReport {
        c_inverse,
        f_commutation: fc,
        intertwiner,
        commutation,
    })
}

/// `[1⊗E_i, C_{β+α_i}] = C_β(E_i⊗L_i) − (E_i⊗K_i)C_β` and
/// `[C_{β+α_i}, F_i⊗1] = (L_i⊗F_i)C_β − C_β(K_i⊗F_i)` for all `β`.
pub fn commutation_lemma_check(d: &Double, pairing: &Pairing, vx: &HwModule, vy: &HwModule) -> Result<bool> {
    require_torus(d)?;
    let degs = module_degrees(d.nichols());
    let cs: BTreeMap<Weight, SparseMatrix> = degs
        .iter()
        .map(|b| (*b, c_beta(d, pairing, vx, vy, b)))
        .collect();
    let n = vx.dim() * vy.dim();
    let zero = SparseMatrix::zeros(n, n);
    let (ix, iy) = (vx.identity(), vy.identity());
    for i in 0..d.rank() {
        let ai = simple(i);
        let one_e = ix.kron(vy.e(i));
        let e_l = vx.e(i).kron(&vy.l_pow(&ai));
        let e_k = vx.e(i).kron(&vy.k_pow(&ai));
        let f_one = vx.f(i).kron(&iy);
        let l_f = vx.l_pow(&ai).kron(vy.f(i));
        let k_f = vx.k_pow(&ai).kron(vy.f(i));
        for b in &degs {
            let up = crate::weylgpd::add(b, &ai);
            let cu = cs.get(&up).unwrap_or(&zero);
            let cb = &cs[b];
            let lhs = one_e.mul(cu).sub(&cu.mul(&one_e));
            let rhs = cb.mul(&e_l).sub(&e_k.mul(cb));
            if lhs != rhs {
                return Ok(false);
            }
            let lhs = cu.mul(&f_one).sub(&f_one.mul(cu));
            let rhs = l_f.mul(cb).sub(&cb.mul(&k_f));
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The two coproduct identities for `C` on `V_1 ⊗ V_2 ⊗ V_3`:
/// `Σ ρ((Δ⊗id)C_β) = C_13 f_13^{-1} C_23 f_13` and
/// `Σ ρ((id⊗Δ)C_β) = C_13 f_13^{-1} C_12 f_13` (operators placed on the
/// indicated legs).
pub fn triple_coproduct_check(
    d: &Double,
    pairing: &Pairing,
    mods: [&HwModule; 3],
) -> Result<[bool; 2]> {
    require_torus(d)?;
    let dims = [mods[0].dim(), mods[1].dim(), mods[2].dim()];
    let n = dims.iter().product();
    let mut left_a = SparseMatrix::zeros(n, n);
    let mut left_b = SparseMatrix::zeros(n, n);
    for beta in module_degrees(d.nichols()) {
        let c = canonical_tensor(d, pairing, &beta);
        left_a = left_a.add(&tensor_action(&d.coproduct_leg(&c, 0)?, &mods));
        left_b = left_b.add(&tensor_action(&d.coproduct_leg(&c, 1)?, &mods));
    }
    let c13 = embed_pair(&c_xy(d, pairing, mods[0], mods[2])?, dims, (0, 2));
    let c23 = embed_pair(&c_xy(d, pairing, mods[1], mods[2])?, dims, (1, 2));
    let c12 = embed_pair(&c_xy(d, pairing, mods[0], mods[1])?, dims, (0, 1));
    let f13 = embed_pair(&f_xy(mods[0], mods[2]), dims, (0, 2));
    let f13i = embed_pair(&f_xy_inverse(mods[0], mods[2]), dims, (0, 2));
    let right_a = c13.mul(&f13i).mul(&c23).mul(&f13);
    let right_b = c13.mul(&f13i).mul(&c12).mul(&f13);
    Ok([left_a == right_a, left_b == right_b])
}

/// `R_12 R_13 R_23 = R_23 R_13 R_12` on `V_1 ⊗ V_2 ⊗ V_3`; returns the first
/// differing entry, if any.
pub fn qybe_check(d: &Double, pairing: &Pairing, mods: [&HwModule; 3]) -> Result<Option<(usize, usize)>> {
    let dims = [mods[0].dim(), mods[1].dim(), mods[2].dim()];
    let r12 = embed_pair(&r_xy(d, pairing, mods[0], mods[1])?, dims, (0, 1));
    let r13 = embed_pair(&r_xy(d, pairing, mods[0], mods[2])?, dims, (0, 2));
    let r23 = embed_pair(&r_xy(d, pairing, mods[1], mods[2])?, dims, (1, 2));
    let lhs = r12.mul(&r13).mul(&r23);
    let rhs = r23.mul(&r13).mul(&r12);
    Ok(lhs.first_difference(&rhs))
}
