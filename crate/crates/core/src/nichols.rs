//! The Nichols algebra `B(V)` built one multidegree at a time.
//!
//! A homogeneous element of positive degree vanishes in `B(V)` exactly when
//! all skew derivations `∂'_j` kill it, so each component is obtained from
//! the lower ones: the candidates `x_i·p`, `p` a basis word one letter
//! shorter, are fed in lexicographic order into an incremental echelon form
//! of their derivation vectors. The independent ones are the basis words
//! (pivots) and the dependent ones record how `x_i` acts.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exactnum::{Cyclotomic, Field, Order};
use crate::freealg::{format_word, hyperletter, root_lyndon_words, FreeElem, Word};
use crate::linalg::{add_entry, axpy, unit, Echelon, Insert, Matrix, SparseVec};
use crate::qcombin::qbinom;
use crate::weylgpd::{
    add, format_weight, height, is_nonneg, simple, sub, Bichar, RootDatum, Weight, ZERO,
};

/// Height at which an unbounded build gives up.
pub const MAX_FULL_HEIGHT: u32 = 400;

/// One homogeneous component `B(V)_β`.
#[derive(Clone, Debug)]
pub struct Component {
    degree: Weight,
    pivots: Vec<Word>,
    index: BTreeMap<Word, usize>,
    /// `left[i][p]`: coordinates of `x_i` times pivot `p` of degree `β − α_i`.
    left: Vec<Vec<SparseVec>>,
    /// `dprime[j][p]`: coordinates of `∂'_j` of pivot `p`, in degree `β − α_j`.
    dprime: Vec<Vec<SparseVec>>,
    dsecond: Vec<Vec<SparseVec>>,
}

impl Component {
    pub fn degree(&self) -> Weight {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[Word] {
        &self.pivots
    }
}

/// `Σ c · (pivot a of degree γ) ⊗ (pivot b of degree δ)`.
pub type Tensor = BTreeMap<(Weight, usize, Weight, usize), Cyclotomic>;

pub fn tensor_add(t: &mut Tensor, key: (Weight, usize, Weight, usize), c: &Cyclotomic) {
    if c.is_zero() {
        return;
    }
    match t.get_mut(&key) {
        Some(e) => {
            *e += c;
            if e.is_zero() {
                t.remove(&key);
            }
        }
        None => {
            t.insert(key, c.clone());
        }
    }
}

fn weight_key(w: &Weight) -> Vec<u32> {
    w.iter().map(|&c| c.max(0) as u32).collect()
}

#[derive(Clone, Debug)]
pub struct Nichols {
    chi: Bichar,
    max_height: u32,
    complete: bool,
    comps: BTreeMap<Weight, Component>,
}

impl Nichols {
    /// All components up to total degree `max_height`.
    pub fn truncated(chi: &Bichar, max_height: u32) -> Result<Nichols> {
        Nichols::build(chi, max_height, false)
    }

    /// The whole algebra; fails if it does not end below `cap`.
    pub fn full(chi: &Bichar, cap: u32) -> Result<Nichols> {
        Nichols::build(chi, cap, true)
    }

    fn build(chi: &Bichar, max_height: u32, need_complete: bool) -> Result<Nichols> {
        let rank = chi.rank();
        let field = chi.field().clone();
        let mut comps = BTreeMap::new();
        comps.insert(
            ZERO,
            Component {
                degree: ZERO,
                pivots: vec![Word::new()],
                index: [(Word::new(), 0)].into_iter().collect(),
                left: vec![Vec::new(); rank],
                dprime: vec![Vec::new(); rank],
                dsecond: vec![Vec::new(); rank],
            },
        );
        let mut nich = Nichols {
            chi: chi.clone(),
            max_height,
            complete: false,
            comps,
        };
        let mut layer: Vec<Weight> = vec![ZERO];
        for h in 1..=max_height {
            let mut degrees: Vec<Weight> = Vec::new();
            for g in &layer {
                for i in 0..rank {
                    let b = add(g, &simple(i));
                    if !degrees.contains(&b) {
                        degrees.push(b);
                    }
                }
            }
            degrees.sort();
            let mut next = Vec::new();
            for beta in degrees {
                let comp = nich.build_component(&field, beta)?;
                if comp.dim() > 0 {
                    nich.comps.insert(beta, comp);
                    next.push(beta);
                }
            }
            if next.is_empty() {
                nich.complete = true;
                nich.max_height = h - 1;
                return Ok(nich);
            }
            layer = next;
        }
        if need_complete {
            return Err(Error::DegreeBoundExceeded {
                degree: weight_key(&layer[0]),
            });
        }
        Ok(nich)
    }

    fn build_component(&self, field: &Field, beta: Weight) -> Result<Component> {
        let rank = self.chi.rank();
        // column offsets of the derivation vector, one block per ∂'_j
        let mut offsets = vec![0usize; rank];
        let mut total = 0;
        for (j, off) in offsets.iter_mut().enumerate() {
            *off = total;
            total += self.dim(&sub(&beta, &simple(j)));
        }
        let mut ech = Echelon::new(field);
        let mut comp = Component {
            degree: beta,
            pivots: Vec::new(),
            index: BTreeMap::new(),
            left: vec![Vec::new(); rank],
            dprime: vec![Vec::new(); rank],
            dsecond: vec![Vec::new(); rank],
        };
        for i in 0..rank {
            let gamma = sub(&beta, &simple(i));
            let Some(lower) = self.comps.get(&gamma) else {
                continue;
            };
            for (p, word) in lower.pivots.iter().enumerate() {
                let mut dp = Vec::with_capacity(rank);
                let mut ds = Vec::with_capacity(rank);
                let mut vec_all = SparseVec::new();
                for j in 0..rank {
                    let target = sub(&beta, &simple(j));
                    let mut d1 = SparseVec::new();
                    let mut d2 = SparseVec::new();
                    if !is_nonneg(&target) || !self.comps.contains_key(&target) {
                        dp.push(d1);
                        ds.push(d2);
                        continue;
                    }
                    if i == j {
                        d1.insert(p, field.one());
                        d2.insert(p, self.chi.chi(&simple(j), &gamma));
                    }
                    let inner = sub(&gamma, &simple(j));
                    if is_nonneg(&inner) && self.comps.contains_key(&inner) {
                        let t1 = self.left_mul(i, &inner, &lower.dprime[j][p])?;
                        axpy(&mut d1, self.chi.q(i, j), &t1);
                        let t2 = self.left_mul(i, &inner, &lower.dsecond[j][p])?;
                        axpy(&mut d2, &field.one(), &t2);
                    }
                    for (k, c) in &d1 {
                        vec_all.insert(offsets[j] + k, c.clone());
                    }
                    dp.push(d1);
                    ds.push(d2);
                }
                let entry = match ech.insert(&vec_all) {
                    Insert::Independent(id) => {
                        let mut w = Word::with_capacity(word.len() + 1);
                        w.push(i as u8);
                        w.extend_from_slice(word);
                        comp.index.insert(w.clone(), id);
                        comp.pivots.push(w);
                        for j in 0..rank {
                            comp.dprime[j].push(core::mem::take(&mut dp[j]));
                            comp.dsecond[j].push(core::mem::take(&mut ds[j]));
                        }
                        unit(field, id)
                    }
                    Insert::Dependent(comb) => comb,
                };
                comp.left[i].push(entry);
            }
        }
        Ok(comp)
    }

    pub fn bichar(&self) -> &Bichar {
        &self.chi
    }

    pub fn field(&self) -> &Field {
        self.chi.field()
    }

    pub fn rank(&self) -> usize {
        self.chi.rank()
    }

    /// Largest total degree covered.
    pub fn max_height(&self) -> u32 {
        self.max_height
    }

    /// True when every nonzero component has been computed.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn in_window(&self, beta: &Weight) -> bool {
        self.complete || height(beta) <= self.max_height as i32
    }

    fn check_window(&self, beta: &Weight) -> Result<()> {
        if self.in_window(beta) {
            Ok(())
        } else {
            Err(Error::DegreeBoundExceeded {
                degree: weight_key(beta),
            })
        }
    }

    pub fn component(&self, beta: &Weight) -> Option<&Component> {
        self.comps.get(beta)
    }

    pub fn components(&self) -> impl Iterator<Item = &Component> {
        self.comps.values()
    }

    pub fn dim(&self, beta: &Weight) -> usize {
        self.comps.get(beta).map_or(0, |c| c.dim())
    }

    pub fn pivots(&self, beta: &Weight) -> &[Word] {
        self.comps.get(beta).map_or(&[], |c| &c.pivots)
    }

    /// Total dimension, if the whole algebra is known.
    pub fn total_dim(&self) -> Option<usize> {
        self.complete
            .then(|| self.comps.values().map(|c| c.dim()).sum())
    }

    pub fn hilbert_series(&self) -> BTreeMap<Weight, usize> {
        self.comps.iter().map(|(b, c)| (*b, c.dim())).collect()
    }

    /// Top degree of a complete algebra.
    pub fn top_degree(&self) -> Option<Weight> {
        if !self.complete {
            return None;
        }
        self.comps.keys().max_by_key(|b| height(b)).copied()
    }

    /// `x_i · v` for `v ∈ B(V)_γ`.
    pub fn left_mul(&self, i: usize, gamma: &Weight, v: &SparseVec) -> Result<SparseVec> {
        let beta = add(gamma, &simple(i));
        self.check_window(&beta)?;
        let mut out = SparseVec::new();
        if v.is_empty() {
            return Ok(out);
        }
        let Some(comp) = self.comps.get(&beta) else {
            return Ok(out);
        };
        for (p, c) in v {
            axpy(&mut out, c, &comp.left[i][*p]);
        }
        Ok(out)
    }

    /// Coordinates of a word in the pivot basis of its degree.
    pub fn reduce_word(&self, w: &[u8]) -> Result<SparseVec> {
        let field = self.field();
        let mut v = unit(field, 0);
        let mut deg = ZERO;
        for &l in w.iter().rev() {
            v = self.left_mul(l as usize, &deg, &v)?;
            deg = add(&deg, &simple(l as usize));
        }
        Ok(v)
    }

    /// Coordinates of a homogeneous element of `T(V)`.
    pub fn reduce(&self, a: &FreeElem) -> Result<(Weight, SparseVec)> {
        let Some(deg) = a.degree() else {
            if a.is_zero() {
                return Ok((ZERO, SparseVec::new()));
            }
            return Err(Error::NonHomogeneous);
        };
        let mut out = SparseVec::new();
        for (w, c) in a.terms() {
            axpy(&mut out, c, &self.reduce_word(w)?);
        }
        Ok((deg, out))
    }

    /// The element with the given coordinates, written in pivot words.
    pub fn lift(&self, beta: &Weight, v: &SparseVec) -> FreeElem {
        let mut e = FreeElem::zero(self.field());
        let piv = self.pivots(beta);
        for (p, c) in v {
            e.add_term(piv[*p].clone(), c);
        }
        e
    }

    /// Product `a·b` of `a ∈ B(V)_α`, `b ∈ B(V)_β`.
    pub fn mul(&self, alpha: &Weight, a: &SparseVec, beta: &Weight, b: &SparseVec) -> Result<SparseVec> {
        self.check_window(&add(alpha, beta))?;
        let mut out = SparseVec::new();
        let piv = self.pivots(alpha);
        for (p, c) in a {
            let mut v = b.clone();
            let mut deg = *beta;
            for &l in piv[*p].iter().rev() {
                v = self.left_mul(l as usize, &deg, &v)?;
                deg = add(&deg, &simple(l as usize));
            }
            axpy(&mut out, c, &v);
        }
        Ok(out)
    }

    /// `v · x_j`.
    pub fn right_mul(&self, j: usize, beta: &Weight, v: &SparseVec) -> Result<SparseVec> {
        self.mul(beta, v, &simple(j), &unit(self.field(), 0))
    }

    fn derivation(&self, table: bool, j: usize, beta: &Weight, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        if let Some(comp) = self.comps.get(beta) {
            let t = if table { &comp.dprime[j] } else { &comp.dsecond[j] };
            if !t.is_empty() {
                for (p, c) in v {
                    axpy(&mut out, c, &t[*p]);
                }
            }
        }
        out
    }

    /// `∂'_j`, determined by `∂'_j(x_i w) = δ_ij w + q_ij x_i ∂'_j(w)`.
    pub fn dprime(&self, j: usize, beta: &Weight, v: &SparseVec) -> SparseVec {
        self.derivation(true, j, beta, v)
    }

    /// `∂''_j`, determined by `∂''_j(x_i w) = δ_ij χ(α_j, deg w) w + x_i ∂''_j(w)`.
    pub fn dsecond(&self, j: usize, beta: &Weight, v: &SparseVec) -> SparseVec {
        self.derivation(false, j, beta, v)
    }

    /// Braided coproduct of an element of `B(V)_β`.
    pub fn coproduct(&self, beta: &Weight, v: &SparseVec) -> Result<Tensor> {
        let mut cache = BTreeMap::new();
        let mut out = Tensor::new();
        for (p, c) in v {
            for (k, x) in self.pivot_coproduct(beta, *p, &mut cache)? {
                tensor_add(&mut out, k, &(&x * c));
            }
        }
        Ok(out)
    }

    fn pivot_coproduct(
        &self,
        beta: &Weight,
        p: usize,
        cache: &mut BTreeMap<(Weight, usize), Tensor>,
    ) -> Result<Tensor> {
        if let Some(t) = cache.get(&(*beta, p)) {
            return Ok(t.clone());
        }
        let field = self.field();
        let word = &self.pivots(beta)[p];
        let mut out = Tensor::new();
        if word.is_empty() {
            out.insert((ZERO, 0, ZERO, 0), field.one());
        } else {
            let i = word[0] as usize;
            let gamma = sub(beta, &simple(i));
            let rest = self.comps[&gamma].index[&word[1..]];
            let inner = self.pivot_coproduct(&gamma, rest, cache)?;
            for ((g, a, d, b), c) in &inner {
                let l = self.left_mul(i, g, &unit(field, *a))?;
                let g2 = add(g, &simple(i));
                for (a2, x) in &l {
                    tensor_add(&mut out, (g2, *a2, *d, *b), &(c * x));
                }
                let r = self.left_mul(i, d, &unit(field, *b))?;
                let d2 = add(d, &simple(i));
                let braid = &self.chi.chi(&simple(i), g) * c;
                for (b2, x) in &r {
                    tensor_add(&mut out, (*g, *a, d2, *b2), &(&braid * x));
                }
            }
        }
        cache.insert((*beta, p), out.clone());
        Ok(out)
    }
}

/// Outcome of comparing graded dimensions with the root-system product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertReport {
    pub max_height: u32,
    pub complete: bool,
    /// `(β, expected, computed)` for every degree where they differ.
    pub mismatches: Vec<(Weight, u128, usize)>,
}

impl HilbertReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Coefficients of `Π_β (1 + t^β + … + t^{(N_β−1)β})` up to total degree `h`.
pub fn root_product_series(datum: &RootDatum, h: u32) -> BTreeMap<Weight, u128> {
    let mut series: BTreeMap<Weight, u128> = [(ZERO, 1)].into_iter().collect();
    for r in &datum.roots {
        let n = match r.order {
            Order::Finite(n) => n,
            Order::Infinite => u32::MAX,
        };
        let mut next: BTreeMap<Weight, u128> = BTreeMap::new();
        for (deg, c) in &series {
            let mut d = *deg;
            let mut k = 0;
            while k < n && height(&d) <= h as i32 {
                *next.entry(d).or_insert(0) += c;
                d = add(&d, &r.coords);
                k += 1;
            }
        }
        series = next;
    }
    series
}

pub fn hilbert_check(datum: &RootDatum, nich: &Nichols) -> HilbertReport {
    let h = nich.max_height();
    let expected = root_product_series(datum, h);
    let computed = nich.hilbert_series();
    let mut mismatches = Vec::new();
    let mut degrees: Vec<Weight> = expected.keys().chain(computed.keys()).copied().collect();
    degrees.sort();
    degrees.dedup();
    for d in degrees {
        if height(&d) > h as i32 {
            continue;
        }
        let e = expected.get(&d).copied().unwrap_or(0);
        let c = computed.get(&d).copied().unwrap_or(0);
        if e != c as u128 {
            mismatches.push((d, e, c));
        }
    }
    HilbertReport {
        max_height: h,
        complete: nich.is_complete(),
        mismatches,
    }
}

/// A PBW generator `e_β`.
#[derive(Clone, Debug)]
pub struct RootVector {
    pub root: Weight,
    /// Coordinates in the pivot basis of `B(V)_β`.
    pub coords: SparseVec,
    pub lyndon: Word,
    /// Whether the hyperletter of the Lyndon word is a nonzero multiple.
    pub hyperletter_agrees: bool,
}

/// Exponent vector `(a_1, …, a_M)` of `e_{β_M}^{a_M} ⋯ e_{β_1}^{a_1}`.
pub type Exponents = Vec<u32>;

/// PBW data over a [`Nichols`] window.
#[derive(Clone, Debug)]
pub struct Pbw {
    roots: Vec<Weight>,
    orders: Vec<u32>,
    qs: Vec<Cyclotomic>,
    vectors: Vec<RootVector>,
    monomials: BTreeMap<Weight, Vec<Exponents>>,
    /// Rows: monomials in pivot coordinates.
    to_pivot: BTreeMap<Weight, Matrix>,
    from_pivot: BTreeMap<Weight, Matrix>,
}

fn enumerate_exponents(
    target: &Weight,
    roots: &[Weight],
    orders: &[u32],
    upto: usize,
) -> Vec<Exponents> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; roots.len()];
    fn go(
        k: usize,
        rem: Weight,
        roots: &[Weight],
        orders: &[u32],
        cur: &mut Vec<u32>,
        out: &mut Vec<Exponents>,
    ) {
        if rem == ZERO {
            out.push(cur.clone());
            return;
        }
        if k == 0 {
            return;
        }
        let k1 = k - 1;
        let mut r = rem;
        let mut a = 0;
        loop {
            go(k1, r, roots, orders, cur, out);
            a += 1;
            r = sub(&r, &roots[k1]);
            if a >= orders[k1] || !is_nonneg(&r) {
                break;
            }
            cur[k1] = a;
        }
        cur[k1] = 0;
    }
    go(upto, *target, roots, orders, &mut cur, &mut out);
    out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    out
}

impl Pbw {
    pub fn new(nich: &Nichols, datum: &RootDatum) -> Result<Pbw> {
        let field = nich.field().clone();
        let roots = datum.coords();
        let m = roots.len();
        let orders: Vec<u32> = datum
            .roots
            .iter()
            .map(|r| r.order.finite().unwrap_or(u32::MAX))
            .collect();
        let qs = datum.roots.iter().map(|r| r.q.clone()).collect();
        let lyndon = root_lyndon_words(&roots)?;
        let mut pbw = Pbw {
            roots: roots.clone(),
            orders,
            qs,
            vectors: Vec::with_capacity(m),
            monomials: BTreeMap::new(),
            to_pivot: BTreeMap::new(),
            from_pivot: BTreeMap::new(),
        };
        let mut cache: BTreeMap<Exponents, SparseVec> = BTreeMap::new();
        for k in 0..m {
            let beta = roots[k];
            nich.check_window(&beta)?;
            let coords = pbw.root_vector_coords(nich, k, &mut cache)?;
            let (_, h) = nich.reduce(&hyperletter(nich.bichar(), &lyndon[k])?)?;
            let agrees = !h.is_empty() && proportional(&h, &coords);
            pbw.vectors.push(RootVector {
                root: beta,
                coords,
                lyndon: lyndon[k].clone(),
                hyperletter_agrees: agrees,
            });
        }
        cache.clear();
        let degrees: Vec<Weight> = nich.comps.keys().copied().collect();
        for beta in degrees {
            let mons = enumerate_exponents(&beta, &pbw.roots, &pbw.orders, m);
            let dim = nich.dim(&beta);
            if mons.len() != dim {
                return Err(Error::PbwDefect(format!(
                    "degree {}: {} monomials for dimension {}",
                    format_weight(&beta, nich.rank()),
                    mons.len(),
                    dim
                )));
            }
            let mut rows = Vec::with_capacity(dim);
            for a in &mons {
                let v = pbw.monomial_coords(nich, a, &mut cache)?;
                let mut row = vec![field.zero(); dim];
                for (p, c) in v {
                    row[p] = c;
                }
                rows.push(row);
            }
            let mat = Matrix::from_rows(&field, rows);
            let inv = mat.inverse().map_err(|_| {
                Error::PbwDefect(format!(
                    "degree {}: monomials are linearly dependent",
                    format_weight(&beta, nich.rank())
                ))
            })?;
            pbw.monomials.insert(beta, mons);
            pbw.to_pivot.insert(beta, mat);
            pbw.from_pivot.insert(beta, inv);
        }
        Ok(pbw)
    }

    /// `e_{β_k}` spans the elements of `B(V)_{β_k}` whose derivations `∂''_j`
    /// lie in the subalgebra generated by `e_{β_1}, …, e_{β_{k−1}}`.
    fn root_vector_coords(
        &self,
        nich: &Nichols,
        k: usize,
        cache: &mut BTreeMap<Exponents, SparseVec>,
    ) -> Result<SparseVec> {
        let field = nich.field().clone();
        let beta = self.roots[k];
        let dim = nich.dim(&beta);
        if dim == 0 {
            return Err(Error::NoNonzeroCandidate {
                degree: weight_key(&beta),
            });
        }
        let mut constraints: Vec<Vec<Cyclotomic>> = Vec::new();
        for j in 0..nich.rank() {
            let target = sub(&beta, &simple(j));
            let d = nich.dim(&target);
            if !is_nonneg(&target) || d == 0 {
                continue;
            }
            let mons = enumerate_exponents(&target, &self.roots, &self.orders, k);
            let mut span = Vec::new();
            for a in &mons {
                let v = self.monomial_coords(nich, a, cache)?;
                let mut row = vec![field.zero(); d];
                for (p, c) in v {
                    row[p] = c;
                }
                span.push(row);
            }
            let annihilators = if span.is_empty() {
                Matrix::identity(&field, d)
                    .row_vectors()
            } else {
                Matrix::from_rows(&field, span).nullspace()
            };
            let comp = &nich.comps[&beta];
            for y in annihilators {
                let row: Vec<Cyclotomic> = (0..dim)
                    .map(|p| {
                        let mut acc = field.zero();
                        for (r, c) in &comp.dsecond[j][p] {
                            if !y[*r].is_zero() {
                                acc += &(c * &y[*r]);
                            }
                        }
                        acc
                    })
                    .collect();
                constraints.push(row);
            }
        }
        let solutions = if constraints.is_empty() {
            Matrix::identity(&field, dim).row_vectors()
        } else {
            Matrix::from_rows(&field, constraints).nullspace()
        };
        if solutions.len() != 1 {
            return Err(Error::PbwDefect(format!(
                "root {}: {}-dimensional candidate space",
                format_weight(&beta, nich.rank()),
                solutions.len()
            )));
        }
        let sol = &solutions[0];
        let lead = sol.iter().find(|c| !c.is_zero()).expect("nonzero solution");
        let inv = lead.inv()?;
        let mut v = SparseVec::new();
        for (p, c) in sol.iter().enumerate() {
            if !c.is_zero() {
                v.insert(p, c * &inv);
            }
        }
        Ok(v)
    }

    fn monomial_coords(
        &self,
        nich: &Nichols,
        a: &[u32],
        cache: &mut BTreeMap<Exponents, SparseVec>,
    ) -> Result<SparseVec> {
        if let Some(v) = cache.get(a) {
            return Ok(v.clone());
        }
        let v = match a.iter().rposition(|&x| x > 0) {
            None => unit(nich.field(), 0),
            Some(k) => {
                let mut rest = a.to_vec();
                rest[k] -= 1;
                let tail = self.monomial_coords(nich, &rest, cache)?;
                let deg = self.exponent_degree(&rest);
                let e = &self.vectors[k];
                nich.mul(&e.root, &e.coords, &deg, &tail)?
            }
        };
        cache.insert(a.to_vec(), v.clone());
        Ok(v)
    }

    pub fn exponent_degree(&self, a: &[u32]) -> Weight {
        let mut d = ZERO;
        for (k, &x) in a.iter().enumerate() {
            for _ in 0..x {
                d = add(&d, &self.roots[k]);
            }
        }
        d
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> &[Weight] {
        &self.roots
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn q(&self, k: usize) -> &Cyclotomic {
        &self.qs[k]
    }

    pub fn vectors(&self) -> &[RootVector] {
        &self.vectors
    }

    pub fn monomials(&self, beta: &Weight) -> &[Exponents] {
        self.monomials.get(beta).map_or(&[], |v| v)
    }

    pub fn degrees(&self) -> impl Iterator<Item = &Weight> {
        self.monomials.keys()
    }

    /// Pivot coordinates of monomial `m` of degree `β`.
    pub fn monomial(&self, beta: &Weight, m: usize) -> SparseVec {
        let mat = &self.to_pivot[beta];
        mat.row(m)
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(p, c)| (p, c.clone()))
            .collect()
    }

    pub fn monomial_index(&self, beta: &Weight, a: &[u32]) -> Option<usize> {
        self.monomials.get(beta)?.iter().position(|x| x == a)
    }

    /// PBW coordinates of `v ∈ B(V)_β`.
    pub fn to_pbw(&self, beta: &Weight, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        let Some(inv) = self.from_pivot.get(beta) else {
            return out;
        };
        for (p, c) in v {
            for (m, x) in inv.row(*p).iter().enumerate() {
                if !x.is_zero() {
                    add_entry(&mut out, m, &(c * x));
                }
            }
        }
        out
    }

    /// Rewrites a pivot tensor in PBW monomials on both sides.
    pub fn tensor_to_pbw(&self, t: &Tensor) -> Tensor {
        let mut out = Tensor::new();
        for ((g, a, d, b), c) in t {
            let la = self.to_pbw(g, &unit(c.field(), *a));
            let rb = self.to_pbw(d, &unit(c.field(), *b));
            for (m, x) in &la {
                for (n, y) in &rb {
                    tensor_add(&mut out, (*g, *m, *d, *n), &(&(c * x) * y));
                }
            }
        }
        out
    }

    /// Renders a root vector as a linear combination of pivot words.
    pub fn root_vector_string(&self, nich: &Nichols, k: usize) -> String {
        nich.lift(&self.roots[k], &self.vectors[k].coords).format('x')
    }

    /// Split candidates `[e_γ, e_δ]_c` for `β_k = γ + δ`, `γ < δ`.
    pub fn split_candidates(&self, nich: &Nichols, k: usize) -> Result<Vec<SplitCandidate>> {
        let beta = self.roots[k];
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                if add(&self.roots[a], &self.roots[b]) != beta {
                    continue;
                }
                let (ea, eb) = (&self.vectors[a], &self.vectors[b]);
                let ab = nich.mul(&ea.root, &ea.coords, &eb.root, &eb.coords)?;
                let ba = nich.mul(&eb.root, &eb.coords, &ea.root, &ea.coords)?;
                let mut c = ab;
                axpy(&mut c, &-nich.bichar().chi(&ea.root, &eb.root), &ba);
                let prop = !c.is_empty() && proportional(&c, &self.vectors[k].coords);
                out.push(SplitCandidate {
                    left: a,
                    right: b,
                    nonzero: !c.is_empty(),
                    proportional: prop,
                });
            }
        }
        Ok(out)
    }

    /// For `k < l`, the PBW support of `[e_{β_k}, e_{β_l}]_c`: every monomial
    /// must only involve roots strictly between them.
    pub fn straightening_ok(&self, nich: &Nichols, k: usize, l: usize) -> Result<bool> {
        let (ek, el) = (&self.vectors[k], &self.vectors[l]);
        let deg = add(&ek.root, &el.root);
        if !nich.in_window(&deg) {
            return Err(Error::DegreeBoundExceeded {
                degree: weight_key(&deg),
            });
        }
        let ab = nich.mul(&ek.root, &ek.coords, &el.root, &el.coords)?;
        let ba = nich.mul(&el.root, &el.coords, &ek.root, &ek.coords)?;
        let mut c = ab;
        axpy(&mut c, &-nich.bichar().chi(&ek.root, &el.root), &ba);
        let coeffs = self.to_pbw(&deg, &c);
        let mons = self.monomials(&deg);
        Ok(coeffs.keys().all(|&m| {
            mons[m]
                .iter()
                .enumerate()
                .all(|(r, &x)| x == 0 || (k < r && r < l))
        }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitCandidate {
    pub left: usize,
    pub right: usize,
    pub nonzero: bool,
    pub proportional: bool,
}

/// `u` is a nonzero multiple of `v` (both nonzero).
pub fn proportional(u: &SparseVec, v: &SparseVec) -> bool {
    let (Some((&k, a)), false) = (v.iter().next(), u.is_empty()) else {
        return false;
    };
    let Some(b) = u.get(&k) else {
        return false;
    };
    let r = b.try_div(a).expect("nonzero");
    let mut d = u.clone();
    axpy(&mut d, &-r, v);
    d.is_empty()
}

/// Results of the coideal checks at one position `l` of the convex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoidealReport {
    /// 1-based position in the convex order.
    pub l: usize,
    pub right_coideal: bool,
    pub left_coideal: bool,
    pub generator_coproduct: bool,
    /// The same with right factors restricted to `e_{β_M}, …, e_{β_{l+1}}`.
    pub generator_coproduct_sharp: bool,
    pub leading_terms: bool,
}

impl CoidealReport {
    pub fn passed(&self) -> bool {
        self.right_coideal
            && self.left_coideal
            && self.generator_coproduct
            && self.generator_coproduct_sharp
            && self.leading_terms
    }
}

fn only_roots(a: &[u32], keep: impl Fn(usize) -> bool) -> bool {
    a.iter().enumerate().all(|(k, &x)| x == 0 || keep(k))
}

/// Checks the coideal properties of the PBW filtrations at position `l`
/// (1-based) on every monomial inside the window.
pub fn coideal_filtration_check(nich: &Nichols, pbw: &Pbw, l: usize) -> Result<CoidealReport> {
    assert!(1 <= l && l <= pbw.len(), "position out of range");
    let k = l - 1;
    let field = nich.field().clone();
    let mut right_coideal = true;
    let mut left_coideal = true;
    let mut leading = true;
    for beta in pbw.degrees().copied().collect::<Vec<_>>() {
        for (m, a) in pbw.monomials(&beta).iter().enumerate() {
            let in_b = only_roots(a, |r| r <= k);
            let in_bold = only_roots(a, |r| r >= k);
            if !in_b && !in_bold {
                continue;
            }
            let delta = pbw.tensor_to_pbw(&nich.coproduct(&beta, &pbw.monomial(&beta, m))?);
            for (g, x, d, y) in delta.keys() {
                if in_b && !only_roots(&pbw.monomials(g)[*x], |r| r <= k) {
                    right_coideal = false;
                }
                if in_bold && !only_roots(&pbw.monomials(d)[*y], |r| r >= k) {
                    left_coideal = false;
                }
            }
            // leading terms for monomials whose top root is β_l
            if in_b && a[k] > 0 {
                let mut expect = Tensor::new();
                let mut rest = a.clone();
                rest[k] = 0;
                let rest_deg = pbw.exponent_degree(&rest);
                for p in 0..=a[k] {
                    let mut left = vec![0u32; a.len()];
                    left[k] = p;
                    let mut right = rest.clone();
                    right[k] = a[k] - p;
                    let ld = pbw.exponent_degree(&left);
                    let rd = pbw.exponent_degree(&right);
                    let li = pbw.monomial_index(&ld, &left).expect("monomial");
                    let ri = pbw.monomial_index(&rd, &right).expect("monomial");
                    tensor_add(&mut expect, (ld, li, rd, ri), &qbinom(a[k], p, pbw.q(k)));
                }
                if rest_deg != ZERO {
                    tensor_add(&mut expect, (beta, m, ZERO, 0), &field.one());
                }
                let mut diff = delta.clone();
                for (key, c) in &expect {
                    tensor_add(&mut diff, *key, &-c);
                }
                for (g, x, _, _) in diff.keys() {
                    let b = &pbw.monomials(g)[*x];
                    let in_d = b[..k].iter().any(|&v| v > 0);
                    if !(in_d && only_roots(b, |r| r <= k)) {
                        leading = false;
                    }
                }
            }
        }
    }
    let e = &pbw.vectors[k];
    let delta = pbw.tensor_to_pbw(&nich.coproduct(&e.root, &e.coords)?);
    let mut generator = true;
    let mut sharp = true;
    for (g, x, d, y) in delta.keys() {
        if *g == ZERO || *d == ZERO {
            continue;
        }
        let left = &pbw.monomials(g)[*x];
        let right = &pbw.monomials(d)[*y];
        let left_ok = only_roots(left, |r| r + 1 < l);
        let lo = l.saturating_sub(2);
        if !(left_ok && only_roots(right, |r| r >= lo)) {
            generator = false;
        }
        if !(left_ok && only_roots(right, |r| r > k)) {
            sharp = false;
        }
    }
    Ok(CoidealReport {
        l,
        right_coideal,
        left_coideal,
        generator_coproduct: generator,
        generator_coproduct_sharp: sharp,
        leading_terms: leading,
    })
}

/// Renders a word expansion for reports.
pub fn format_pivots(nich: &Nichols, beta: &Weight) -> Vec<String> {
    nich.pivots(beta).iter().map(|w| format_word(w, 'x')).collect()
}
