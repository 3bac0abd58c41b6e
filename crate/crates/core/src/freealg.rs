//! The free braided algebra `T(V)` on letters `0..θ`: words, the braided
//! coproduct, braided commutators, Lyndon words and hyperletters.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::{Error, Result};
use crate::exactnum::{Cyclotomic, Field};
use crate::weylgpd::{add, simple, Bichar, Weight, ZERO};

/// A word in the letters `0..θ`.
pub type Word = Vec<u8>;

pub fn word_degree(w: &[u8]) -> Weight {
    let mut d = ZERO;
    for &l in w {
        d[l as usize] += 1;
    }
    d
}

/// Renders a word as `x1^3 x2` (`letter = 'x'`) or `y2 y1`.
pub fn format_word(w: &[u8], letter: char) -> String {
    if w.is_empty() {
        return String::from("1");
    }
    let mut s = String::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        if !s.is_empty() {
            s.push(' ');
        }
        let _ = write!(s, "{letter}{}", w[i] + 1);
        if j - i > 1 {
            let _ = write!(s, "^{}", j - i);
        }
        i = j;
    }
    s
}

/// Renders a word as its letters `1121212`.
pub fn word_digits(w: &[u8]) -> String {
    w.iter().map(|l| char::from(b'1' + l)).collect()
}

/// Finitely supported linear combination of words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeElem {
    field: Field,
    terms: BTreeMap<Word, Cyclotomic>,
}

impl FreeElem {
    pub fn zero(field: &Field) -> FreeElem {
        FreeElem {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn word(field: &Field, w: &[u8]) -> FreeElem {
        let mut e = FreeElem::zero(field);
        e.terms.insert(w.to_vec(), field.one());
        e
    }

    pub fn one(field: &Field) -> FreeElem {
        FreeElem::word(field, &[])
    }

    pub fn letter(field: &Field, i: usize) -> FreeElem {
        FreeElem::word(field, &[i as u8])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<Word, Cyclotomic> {
        &self.terms
    }

    pub fn coefficient(&self, w: &[u8]) -> Cyclotomic {
        self.terms.get(w).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: &Cyclotomic) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn add(&self, other: &FreeElem) -> FreeElem {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &FreeElem) -> FreeElem {
        self.add(&other.scale(&-self.field.one()))
    }

    pub fn scale(&self, a: &Cyclotomic) -> FreeElem {
        if a.is_zero() {
            return FreeElem::zero(&self.field);
        }
        FreeElem {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * a)).collect(),
        }
    }

    /// Concatenation product.
    pub fn mul(&self, other: &FreeElem) -> FreeElem {
        let mut out = FreeElem::zero(&self.field);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, &(a * b));
            }
        }
        out
    }

    /// Common multidegree of all terms, or `None` if mixed or zero.
    pub fn degree(&self) -> Option<Weight> {
        let mut it = self.terms.keys().map(|w| word_degree(w));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// Smallest word in the support (lexicographic).
    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.keys().next()
    }

    pub fn format(&self, letter: char) -> String {
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut s = String::new();
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                s.push_str(" + ");
            }
            if c.is_one() {
                s.push_str(&format_word(w, letter));
            } else {
                let _ = write!(s, "({c})*{}", format_word(w, letter));
            }
        }
        s
    }
}

/// Sums of `u ⊗ v` with cyclotomic coefficients.
pub type Tensor2 = BTreeMap<(Word, Word), Cyclotomic>;

fn tensor_add(t: &mut Tensor2, key: (Word, Word), c: &Cyclotomic) {
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

/// Braided coproduct of a single word: an unshuffle where every right
/// letter at position `r` preceding a left letter at position `p`
/// contributes `χ(α_{u_r}, α_{u_p})`.
pub fn word_coproduct(chi: &Bichar, w: &[u8]) -> Tensor2 {
    let n = w.len();
    assert!(n < 31, "word too long for subset enumeration");
    let field = chi.field();
    let mut out = Tensor2::new();
    for mask in 0u32..(1 << n) {
        // bit set: letter goes to the right factor
        let mut left = Word::new();
        let mut right = Word::new();
        let mut passed = ZERO;
        let mut coeff_deg_pairs: Vec<(Weight, u8)> = Vec::new();
        for (p, &l) in w.iter().enumerate() {
            if mask & (1 << p) != 0 {
                right.push(l);
                passed[l as usize] += 1;
            } else {
                left.push(l);
                if passed != ZERO {
                    coeff_deg_pairs.push((passed, l));
                }
            }
        }
        let mut c = field.one();
        for (d, l) in coeff_deg_pairs {
            c = &c * &chi.chi(&d, &simple(l as usize));
        }
        tensor_add(&mut out, (left, right), &c);
    }
    out
}

pub fn braided_coproduct(chi: &Bichar, a: &FreeElem) -> Tensor2 {
    let mut out = Tensor2::new();
    for (w, c) in &a.terms {
        for (k, v) in word_coproduct(chi, w) {
            tensor_add(&mut out, k, &(&v * c));
        }
    }
    out
}

/// Product in the braided tensor square:
/// `(u⊗v)(u'⊗v') = χ(deg v, deg u') uu' ⊗ vv'`.
pub fn braided_tensor_mul(chi: &Bichar, a: &Tensor2, b: &Tensor2) -> Tensor2 {
    let mut out = Tensor2::new();
    for ((u, v), x) in a {
        for ((u2, v2), y) in b {
            let c = &(x * y) * &chi.chi(&word_degree(v), &word_degree(u2));
            let mut l = u.clone();
            l.extend_from_slice(u2);
            let mut r = v.clone();
            r.extend_from_slice(v2);
            tensor_add(&mut out, (l, r), &c);
        }
    }
    out
}

/// `[a, b]_c = ab − χ(α, β) ba` for homogeneous `a`, `b`.
pub fn braided_commutator(chi: &Bichar, a: &FreeElem, b: &FreeElem) -> Result<FreeElem> {
    let da = a.degree().ok_or(Error::NonHomogeneous)?;
    let db = b.degree().ok_or(Error::NonHomogeneous)?;
    Ok(a.mul(b).sub(&b.mul(a).scale(&chi.chi(&da, &db))))
}

/// Word reversal; sends `x_{i_1}⋯x_{i_n}` to `y_{i_n}⋯y_{i_1}`.
pub fn omega_mirror(a: &FreeElem) -> FreeElem {
    FreeElem {
        field: a.field.clone(),
        terms: a
            .terms
            .iter()
            .map(|(w, c)| (w.iter().rev().copied().collect(), c.clone()))
            .collect(),
    }
}

/// Strictly smaller than each of its proper suffixes.
pub fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|k| w < &w[k..])
}

/// All Lyndon words of the given multidegree, in decreasing lexicographic order.
pub fn lyndon_words(deg: &Weight, rank: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut counts: Vec<i32> = deg[..rank].to_vec();
    let total: i32 = counts.iter().sum();
    if total <= 0 || counts.iter().any(|&c| c < 0) {
        return out;
    }
    let mut cur = Word::new();
    permutations(&mut counts, total as usize, &mut cur, &mut out);
    out.retain(|w| is_lyndon(w));
    out.reverse();
    out
}

fn permutations(counts: &mut [i32], len: usize, cur: &mut Word, out: &mut Vec<Word>) {
    if cur.len() == len {
        out.push(cur.clone());
        return;
    }
    for l in 0..counts.len() {
        if counts[l] > 0 {
            counts[l] -= 1;
            cur.push(l as u8);
            permutations(counts, len, cur, out);
            cur.pop();
            counts[l] += 1;
        }
    }
}

/// `(u, v)` with `w = uv` and `v` the longest proper Lyndon suffix.
pub fn shirshov_split(w: &[u8]) -> Result<(Word, Word)> {
    if !is_lyndon(w) || w.len() < 2 {
        return Err(Error::NotLyndon);
    }
    let k = (1..w.len())
        .find(|&k| is_lyndon(&w[k..]))
        .expect("last letter is Lyndon");
    Ok((w[..k].to_vec(), w[k..].to_vec()))
}

/// `[w]_c`: letters map to themselves, longer Lyndon words to the braided
/// commutator of their Shirshov factors.
pub fn hyperletter(chi: &Bichar, w: &[u8]) -> Result<FreeElem> {
    if !is_lyndon(w) {
        return Err(Error::NotLyndon);
    }
    if w.len() == 1 {
        return Ok(FreeElem::word(chi.field(), w));
    }
    let (u, v) = shirshov_split(w)?;
    braided_commutator(chi, &hyperletter(chi, &u)?, &hyperletter(chi, &v)?)
}

/// Lyndon words attached to positive roots: `x_i` for simple roots, and
/// otherwise the largest `ℓ_δ ℓ_ε` over splittings `β = δ + ε` into roots
/// with `ℓ_δ < ℓ_ε`, processed by increasing height.
pub fn root_lyndon_words(roots: &[Weight]) -> Result<Vec<Word>> {
    let mut order: Vec<usize> = (0..roots.len()).collect();
    order.sort_by_key(|&k| roots[k].iter().sum::<i32>());
    let mut words: Vec<Option<Word>> = vec![None; roots.len()];
    for &k in &order {
        let beta = roots[k];
        if beta.iter().sum::<i32>() == 1 {
            let i = beta.iter().position(|&c| c == 1).expect("simple root");
            words[k] = Some(vec![i as u8]);
            continue;
        }
        let mut best: Option<Word> = None;
        for a in 0..roots.len() {
            for b in 0..roots.len() {
                if add(&roots[a], &roots[b]) != beta {
                    continue;
                }
                let (Some(la), Some(lb)) = (&words[a], &words[b]) else {
                    continue;
                };
                if la >= lb {
                    continue;
                }
                let mut cand = la.clone();
                cand.extend_from_slice(lb);
                if best.as_ref().map_or(true, |x| cand > *x) {
                    best = Some(cand);
                }
            }
        }
        words[k] = Some(best.ok_or_else(|| {
            Error::InvalidInput(alloc::format!("root {beta:?} is not a sum of two roots"))
        })?);
    }
    Ok(words.into_iter().map(|w| w.expect("assigned")).collect())
}
