//! The skew-Hopf pairing `η` between `u⁺` and `u⁻`, PBW duality and the
//! canonical elements `C_β`.
//!
//! F-words are stored reversed: the F-pivot with index `p` in degree `β` is
//! the reversal of the E-pivot `p`, so F-coordinates share the index space of
//! E-coordinates.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exactnum::{Cyclotomic, Field};
use crate::freealg::{word_coproduct, Word};
use crate::linalg::{unit, Matrix, SparseVec};
use crate::nichols::{Exponents, Nichols, Pbw};
use crate::qcombin::qfact;
use crate::weylgpd::{simple, sub, Bichar, Weight, ZERO};

/// `η` on a pair (E-word, F-word) computed in `T(V)` straight from the
/// braided coproduct, without any knowledge of `B(V)`:
/// `η(u, F_j v) = −Σ η(u'', v)` over the coproduct terms `x_j ⊗ u''` of `u`.
#[derive(Clone, Debug)]
pub struct WordPairing {
    chi: Bichar,
    cache: BTreeMap<(Word, Word), Cyclotomic>,
}

impl WordPairing {
    pub fn new(chi: &Bichar) -> WordPairing {
        WordPairing {
            chi: chi.clone(),
            cache: BTreeMap::new(),
        }
    }

    pub fn eta(&mut self, u: &[u8], v: &[u8]) -> Cyclotomic {
        let field = self.chi.field().clone();
        if u.len() != v.len() {
            return field.zero();
        }
        if v.is_empty() {
            return field.one();
        }
        let key = (u.to_vec(), v.to_vec());
        if let Some(c) = self.cache.get(&key) {
            return c.clone();
        }
        let j = v[0];
        let mut acc = field.zero();
        for ((l, r), c) in word_coproduct(&self.chi, u) {
            if l.len() == 1 && l[0] == j {
                let inner = self.eta(&r, &v[1..]);
                acc -= &(&c * &inner);
            }
        }
        self.cache.insert(key, acc.clone());
        acc
    }
}

pub fn eta_words(chi: &Bichar, u: &[u8], v: &[u8]) -> Cyclotomic {
    WordPairing::new(chi).eta(u, v)
}

/// All words with the given letter counts, in lexicographic order.
pub fn words_of_degree(beta: &Weight, rank: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut counts: Vec<i32> = beta[..rank].to_vec();
    let len: i32 = counts.iter().sum();
    fn go(counts: &mut [i32], len: usize, cur: &mut Word, out: &mut Vec<Word>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for l in 0..counts.len() {
            if counts[l] > 0 {
                counts[l] -= 1;
                cur.push(l as u8);
                go(counts, len, cur, out);
                cur.pop();
                counts[l] += 1;
            }
        }
    }
    go(&mut counts, len.max(0) as usize, &mut Word::new(), &mut out);
    out
}

/// Gram matrix of `η` on all words of degree `β` (rows E-words, columns
/// F-words, both in lexicographic order).
pub fn word_gram(chi: &Bichar, beta: &Weight) -> (Vec<Word>, Matrix) {
    let words = words_of_degree(beta, chi.rank());
    let mut wp = WordPairing::new(chi);
    let rows = words
        .iter()
        .map(|u| words.iter().map(|v| wp.eta(u, v)).collect())
        .collect();
    (words.clone(), Matrix::from_rows(chi.field(), rows))
}

/// Lexicographically earliest rows of `gram` that are linearly independent.
pub fn earliest_independent_rows(gram: &Matrix) -> Vec<usize> {
    gram.transpose().rref().1
}

/// Gram matrices of `η` on the pivot bases, one per degree.
#[derive(Clone, Debug)]
pub struct Pairing {
    field: Field,
    gram: BTreeMap<Weight, Matrix>,
    inverse: BTreeMap<Weight, Matrix>,
}

impl Pairing {
    /// Builds the Gram matrices by the recursion
    /// `η(x, y F_i) = −η(∂''_i x, y)`.
    pub fn new(nich: &Nichols) -> Result<Pairing> {
        let field = nich.field().clone();
        let mut gram: BTreeMap<Weight, Matrix> = BTreeMap::new();
        let mut inverse = BTreeMap::new();
        let mut comps: Vec<_> = nich.components().collect();
        comps.sort_by_key(|c| crate::weylgpd::height(&c.degree()));
        for comp in comps {
            let beta = comp.degree();
            let n = comp.dim();
            let g = if beta == ZERO {
                Matrix::identity(&field, 1)
            } else {
                let mut g = Matrix::zeros(&field, n, n);
                for (y, word) in comp.pivots().iter().enumerate() {
                    let i = word[0] as usize;
                    let lower_deg = sub(&beta, &simple(i));
                    let lower = &gram[&lower_deg];
                    let rest = nich
                        .pivots(&lower_deg)
                        .iter()
                        .position(|w| w[..] == word[1..])
                        .expect("suffix-closed pivots");
                    for x in 0..n {
                        let d = nich.dsecond(i, &beta, &unit(&field, x));
                        let mut acc = field.zero();
                        for (k, c) in &d {
                            acc -= &(c * &lower[(*k, rest)]);
                        }
                        g[(x, y)] = acc;
                    }
                }
                g
            };
            let inv = g.inverse().map_err(|_| Error::SingularGram {
                degree: beta.iter().map(|&c| c as u32).collect(),
            })?;
            gram.insert(beta, g);
            inverse.insert(beta, inv);
        }
        Ok(Pairing {
            field,
            gram,
            inverse,
        })
    }

    pub fn gram(&self, beta: &Weight) -> Option<&Matrix> {
        self.gram.get(beta)
    }

    pub fn gram_inverse(&self, beta: &Weight) -> Option<&Matrix> {
        self.inverse.get(beta)
    }

    /// `η(e, f)` for E-coordinates `e` and F-coordinates `f` of degrees
    /// `β` and `−β`.
    pub fn eta(&self, beta: &Weight, e: &SparseVec, f: &SparseVec) -> Cyclotomic {
        let mut acc = self.field.zero();
        let Some(g) = self.gram.get(beta) else {
            return acc;
        };
        for (x, a) in e {
            for (y, b) in f {
                let t = &g[(*x, *y)];
                if !t.is_zero() {
                    acc += &(&(a * b) * t);
                }
            }
        }
        acc
    }

    /// Coefficients `c_{xy}` of `C_β = Σ c_{xy} E_x ⊗ F_y` over the pivot bases,
    /// characterized by `Σ_y c_{xy} η(E_{x'}, F_y) = δ_{x,x'}`.
    pub fn canonical(&self, beta: &Weight) -> Option<Matrix> {
        self.inverse.get(beta).map(|m| m.transpose())
    }
}

/// Product `a·b` in `u⁻` on F-coordinates.
pub fn fmul(nich: &Nichols, alpha: &Weight, a: &SparseVec, beta: &Weight, b: &SparseVec) -> Result<SparseVec> {
    nich.mul(beta, b, alpha, a)
}

/// The F-side of the PBW duality: root vectors `f_β`, the scalars
/// `η_β = η(e_β, f_β)` and the monomials `f_{β_M}^{b_M} ⋯ f_{β_1}^{b_1}`.
#[derive(Clone, Debug)]
pub struct DualPbw {
    fvec: Vec<SparseVec>,
    eta: Vec<Cyclotomic>,
    /// Rows: F-monomials in F-pivot coordinates, ordered as the E-monomials.
    fmon: BTreeMap<Weight, Vec<SparseVec>>,
}

impl DualPbw {
    /// `f_β` is the element of `u⁻_{−β}` orthogonal to every E-monomial of
    /// degree `β` other than `e_β`, scaled so that its smallest F-word has
    /// coefficient 1.
    pub fn new(nich: &Nichols, pbw: &Pbw, pairing: &Pairing) -> Result<DualPbw> {
        let field = nich.field().clone();
        let mut fvec = Vec::with_capacity(pbw.len());
        let mut eta = Vec::with_capacity(pbw.len());
        for (k, e) in pbw.vectors().iter().enumerate() {
            let beta = e.root;
            let mut a = vec![0u32; pbw.len()];
            a[k] = 1;
            let m = pbw
                .monomial_index(&beta, &a)
                .expect("root vector is a monomial");
            let dim = nich.dim(&beta);
            // η(E-mon_r, f) = δ_{r,m}: f = G⁻¹ · (column m of M⁻¹)
            let minv = pbw_inverse_column(pbw, &beta, m, dim, &field)?;
            let ginv = pairing
                .gram_inverse(&beta)
                .ok_or_else(|| Error::SingularGram { degree: vec![] })?;
            let mut f = SparseVec::new();
            for y in 0..dim {
                let mut acc = field.zero();
                for (x, c) in minv.iter().enumerate() {
                    if !c.is_zero() {
                        acc += &(&ginv[(y, x)] * c);
                    }
                }
                if !acc.is_zero() {
                    f.insert(y, acc);
                }
            }
            // normalize at the lexicographically smallest F-word
            let piv = nich.pivots(&beta);
            let lead = f
                .keys()
                .min_by(|&&x, &&y| piv[x].iter().rev().cmp(piv[y].iter().rev()))
                .copied()
                .ok_or_else(|| Error::DualityDefect(format!("no dual vector at root {k}")))?;
            let s = f[&lead].inv()?;
            let f: SparseVec = f.into_iter().map(|(y, c)| (y, &c * &s)).collect();
            let h = pairing.eta(&beta, &e.coords, &f);
            if h.is_zero() {
                return Err(Error::DualityDefect(format!("η vanishes on root {k}")));
            }
            fvec.push(f);
            eta.push(h);
        }
        let mut dual = DualPbw {
            fvec,
            eta,
            fmon: BTreeMap::new(),
        };
        let mut cache: BTreeMap<Exponents, SparseVec> = BTreeMap::new();
        for beta in pbw.degrees().copied().collect::<Vec<_>>() {
            let mut rows = Vec::new();
            for a in pbw.monomials(&beta) {
                rows.push(dual.monomial_coords(nich, pbw, a, &mut cache)?);
            }
            dual.fmon.insert(beta, rows);
        }
        Ok(dual)
    }

    fn monomial_coords(
        &self,
        nich: &Nichols,
        pbw: &Pbw,
        b: &[u32],
        cache: &mut BTreeMap<Exponents, SparseVec>,
    ) -> Result<SparseVec> {
        if let Some(v) = cache.get(b) {
            return Ok(v.clone());
        }
        let v = match b.iter().rposition(|&x| x > 0) {
            None => unit(nich.field(), 0),
            Some(k) => {
                let mut rest = b.to_vec();
                rest[k] -= 1;
                let tail = self.monomial_coords(nich, pbw, &rest, cache)?;
                let deg = pbw.exponent_degree(&rest);
                fmul(nich, &pbw.roots()[k], &self.fvec[k], &deg, &tail)?
            }
        };
        cache.insert(b.to_vec(), v.clone());
        Ok(v)
    }

    pub fn f(&self, k: usize) -> &SparseVec {
        &self.fvec[k]
    }

    pub fn eta(&self, k: usize) -> &Cyclotomic {
        &self.eta[k]
    }

    pub fn f_monomial(&self, beta: &Weight, m: usize) -> &SparseVec {
        &self.fmon[beta][m]
    }
}

fn pbw_inverse_column(
    pbw: &Pbw,
    beta: &Weight,
    m: usize,
    dim: usize,
    field: &Field,
) -> Result<Vec<Cyclotomic>> {
    // column m of M⁻¹ is the vector c with (M c) = e_m
    let mut rows = Vec::with_capacity(dim);
    for r in 0..dim {
        let v = pbw.monomial(beta, r);
        let mut row = vec![field.zero(); dim];
        for (p, c) in v {
            row[p] = c;
        }
        rows.push(row);
    }
    let inv = Matrix::from_rows(field, rows).inverse()?;
    Ok((0..dim).map(|x| inv[(x, m)].clone()).collect())
}

/// `Π (a_i)_{q_i}! η_i^{a_i}`.
pub fn duality_scalar(pbw: &Pbw, dual: &DualPbw, a: &[u32]) -> Result<Cyclotomic> {
    let field = pbw.q(0).field().clone();
    let mut s = field.one();
    for (k, &x) in a.iter().enumerate() {
        if x > 0 {
            s = &(&s * &qfact(x, pbw.q(k))) * &dual.eta(k).pow(x as i64)?;
        }
    }
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityReport {
    pub pairs_checked: usize,
    pub mismatches: Vec<(Weight, usize, usize)>,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Checks `η(E-monomial a, F-monomial b) = δ_{ab} Π (a_i)_{q_i}! η_i^{a_i}`
/// for every pair of monomials of equal degree in the window.
pub fn pbw_duality_check(pbw: &Pbw, dual: &DualPbw, pairing: &Pairing) -> Result<DualityReport> {
    let mut rep = DualityReport {
        pairs_checked: 0,
        mismatches: Vec::new(),
    };
    for beta in pbw.degrees().copied().collect::<Vec<_>>() {
        let mons = pbw.monomials(&beta);
        for (x, a) in mons.iter().enumerate() {
            let e = pbw.monomial(&beta, x);
            for y in 0..mons.len() {
                let v = pairing.eta(&beta, &e, dual.f_monomial(&beta, y));
                let expect = if x == y {
                    duality_scalar(pbw, dual, a)?
                } else {
                    v.field().zero()
                };
                rep.pairs_checked += 1;
                if v != expect {
                    rep.mismatches.push((beta, x, y));
                }
            }
        }
    }
    Ok(rep)
}

/// `C_β` in PBW form: `Σ_a (Π (a_i)_{q_i}! η_i^{a_i})^{-1} E-mon_a ⊗ F-mon_a`,
/// returned as a coefficient matrix over the pivot bases.
pub fn canonical_from_pbw(pbw: &Pbw, dual: &DualPbw, beta: &Weight) -> Result<Matrix> {
    let mons = pbw.monomials(beta);
    let n = mons.len();
    let field = pbw.q(0).field().clone();
    let mut c = Matrix::zeros(&field, n, n);
    for (m, a) in mons.iter().enumerate() {
        let s = duality_scalar(pbw, dual, a)?.inv()?;
        let e = pbw.monomial(beta, m);
        let f = dual.f_monomial(beta, m);
        for (x, u) in &e {
            for (y, v) in f {
                c[(*x, *y)] += &(&(u * v) * &s);
            }
        }
    }
    Ok(c)
}

/// `η_{α_i} = −1` at every simple root.
pub fn simple_root_scalars(pbw: &Pbw, dual: &DualPbw) -> bool {
    pbw.roots()
        .iter()
        .enumerate()
        .filter(|(_, r)| crate::weylgpd::height(r) == 1)
        .all(|(k, _)| {
            let e = dual.eta(k);
            (e + &e.field().one()).is_zero()
        })
}
