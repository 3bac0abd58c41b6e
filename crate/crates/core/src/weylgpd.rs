//! Bicharacters, generalized Cartan matrices, the Weyl groupoid and
//! convex orders on finite root systems.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exactnum::{Cyclotomic, Field, Order};
use crate::qcombin::qint;

/// Largest supported rank.
pub const MAX_RANK: usize = 4;

/// Element of `Z^θ`, padded with zeros up to [`MAX_RANK`].
pub type Weight = [i32; MAX_RANK];

pub const ZERO: Weight = [0; MAX_RANK];

pub fn simple(i: usize) -> Weight {
    let mut w = ZERO;
    w[i] = 1;
    w
}

pub fn add(a: &Weight, b: &Weight) -> Weight {
    core::array::from_fn(|k| a[k] + b[k])
}

pub fn sub(a: &Weight, b: &Weight) -> Weight {
    core::array::from_fn(|k| a[k] - b[k])
}

pub fn neg(a: &Weight) -> Weight {
    core::array::from_fn(|k| -a[k])
}

pub fn scale(c: i32, a: &Weight) -> Weight {
    core::array::from_fn(|k| c * a[k])
}

/// Sum of the coordinates.
pub fn height(a: &Weight) -> i32 {
    a.iter().sum()
}

/// All coordinates nonnegative.
pub fn is_nonneg(a: &Weight) -> bool {
    a.iter().all(|&x| x >= 0)
}

/// Nonzero with all coordinates nonnegative.
pub fn is_positive(a: &Weight) -> bool {
    is_nonneg(a) && a.iter().any(|&x| x > 0)
}

/// Renders `3a1+2a2` style.
pub fn format_weight(a: &Weight, rank: usize) -> alloc::string::String {
    use core::fmt::Write;
    let mut s = alloc::string::String::new();
    for (i, &c) in a.iter().take(rank).enumerate() {
        if c == 0 {
            continue;
        }
        if !s.is_empty() && c > 0 {
            s.push('+');
        }
        match c {
            1 => {}
            -1 => s.push('-'),
            _ => {
                let _ = write!(s, "{c}");
            }
        }
        let _ = write!(s, "a{}", i + 1);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// A bicharacter on `Z^θ` given by its matrix `q_ij = χ(α_i, α_j)`.
#[derive(Clone, Debug)]
pub struct Bichar {
    field: Field,
    rank: usize,
    q: Vec<Vec<Cyclotomic>>,
    /// `q_ij = ζ_N^{e_ij}` when every entry is a power of `ζ_N`.
    exps: Option<Vec<Vec<i64>>>,
    powers: Vec<Cyclotomic>,
}

impl PartialEq for Bichar {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
    }
}
impl Eq for Bichar {}

impl Bichar {
    /// `q_ij = ζ_N^{e_ij}`.
    pub fn from_exponents(field: &Field, exps: &[Vec<i64>]) -> Result<Bichar> {
        let rank = exps.len();
        check_square(rank, exps.iter().map(|r| r.len()))?;
        let n = field.conductor() as i64;
        let exps: Vec<Vec<i64>> = exps
            .iter()
            .map(|r| r.iter().map(|e| e.rem_euclid(n)).collect())
            .collect();
        let powers: Vec<Cyclotomic> = (0..n).map(|e| field.root_of_unity(e)).collect();
        let q = exps
            .iter()
            .map(|r| r.iter().map(|&e| powers[e as usize].clone()).collect())
            .collect();
        Ok(Bichar {
            field: field.clone(),
            rank,
            q,
            exps: Some(exps),
            powers,
        })
    }

    /// Arbitrary nonzero entries.
    pub fn from_matrix(field: &Field, q: Vec<Vec<Cyclotomic>>) -> Result<Bichar> {
        let rank = q.len();
        check_square(rank, q.iter().map(|r| r.len()))?;
        if q.iter().flatten().any(|x| x.is_zero()) {
            return Err(Error::ZeroScalar);
        }
        if q.iter().flatten().any(|x| x.field() != field) {
            return Err(Error::ConductorMismatch {
                left: field.conductor(),
                right: q
                    .iter()
                    .flatten()
                    .find(|x| x.field() != field)
                    .map_or(0, |x| x.conductor()),
            });
        }
        let n = field.conductor() as i64;
        let exps: Option<Vec<Vec<i64>>> = q
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| {
                        (0..n).find(|&e| *x == field.root_of_unity(e))
                    })
                    .collect()
            })
            .collect();
        match exps {
            Some(e) => Bichar::from_exponents(field, &e),
            None => Ok(Bichar {
                field: field.clone(),
                rank,
                q,
                exps: None,
                powers: Vec::new(),
            }),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn q(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.q[i][j]
    }

    pub fn matrix(&self) -> &[Vec<Cyclotomic>] {
        &self.q
    }

    pub fn exponents(&self) -> Option<&[Vec<i64>]> {
        self.exps.as_deref()
    }

    /// `χ(a, b) = Π q_ij^{a_i b_j}`.
    pub fn chi(&self, a: &Weight, b: &Weight) -> Cyclotomic {
        if let Some(e) = &self.exps {
            let n = self.powers.len() as i64;
            let mut t = 0i64;
            for i in 0..self.rank {
                if a[i] == 0 {
                    continue;
                }
                for j in 0..self.rank {
                    t += a[i] as i64 * b[j] as i64 * e[i][j];
                }
            }
            return self.powers[t.rem_euclid(n) as usize].clone();
        }
        let mut acc = self.field.one();
        for i in 0..self.rank {
            for j in 0..self.rank {
                let p = a[i] as i64 * b[j] as i64;
                if p != 0 {
                    acc = &acc * &self.q[i][j].pow(p).expect("nonzero entries");
                }
            }
        }
        acc
    }

    /// Exponent `t` with `χ(a, b) = ζ_N^t`, when available.
    pub fn chi_exponent(&self, a: &Weight, b: &Weight) -> Option<i64> {
        let e = self.exps.as_ref()?;
        let n = self.powers.len() as i64;
        let mut t = 0i64;
        for i in 0..self.rank {
            for j in 0..self.rank {
                t += a[i] as i64 * b[j] as i64 * e[i][j];
            }
        }
        Some(t.rem_euclid(n))
    }

    /// Pulls the bicharacter back along the linear map sending `α_k` to `images[k]`.
    fn pullback(&self, images: &[Weight]) -> Bichar {
        if let Some(e) = &self.exps {
            let n = self.powers.len() as i64;
            let exps: Vec<Vec<i64>> = images
                .iter()
                .map(|a| {
                    images
                        .iter()
                        .map(|b| {
                            let mut t = 0i64;
                            for i in 0..self.rank {
                                for j in 0..self.rank {
                                    t += a[i] as i64 * b[j] as i64 * e[i][j];
                                }
                            }
                            t.rem_euclid(n)
                        })
                        .collect()
                })
                .collect();
            let q = exps
                .iter()
                .map(|r| r.iter().map(|&t| self.powers[t as usize].clone()).collect())
                .collect();
            return Bichar {
                field: self.field.clone(),
                rank: self.rank,
                q,
                exps: Some(exps),
                powers: self.powers.clone(),
            };
        }
        let q = images
            .iter()
            .map(|a| images.iter().map(|b| self.chi(a, b)).collect())
            .collect();
        Bichar {
            field: self.field.clone(),
            rank: self.rank,
            q,
            exps: None,
            powers: Vec::new(),
        }
    }

    pub fn cartan_entry(&self, i: usize, j: usize, bound: u32) -> Result<i32> {
        cartan_entry(self, i, j, bound)
    }

    pub fn cartan_matrix(&self, bound: u32) -> Result<Vec<Vec<i32>>> {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| cartan_entry(self, i, j, bound)).collect())
            .collect()
    }

    /// `s_i^χ` as the images of the simple roots.
    pub fn reflection(&self, i: usize, bound: u32) -> Result<Vec<Weight>> {
        (0..self.rank)
            .map(|k| {
                let a = cartan_entry(self, i, k, bound)?;
                Ok(sub(&simple(k), &scale(a, &simple(i))))
            })
            .collect()
    }

    /// `r_i(χ)`, with entries `χ(s_i α_k, s_i α_l)`.
    pub fn reflect(&self, i: usize, bound: u32) -> Result<Bichar> {
        Ok(self.pullback(&self.reflection(i, bound)?))
    }
}

fn check_square(rank: usize, lens: impl Iterator<Item = usize>) -> Result<()> {
    if rank == 0 || rank > MAX_RANK {
        return Err(Error::InvalidInput(alloc::format!(
            "rank must lie in 1..={MAX_RANK}"
        )));
    }
    for l in lens {
        if l != rank {
            return Err(Error::InvalidInput("braiding matrix is not square".into()));
        }
    }
    Ok(())
}

/// Default search bound for Cartan entries.
pub const CARTAN_BOUND: u32 = 8;
pub const MAX_OBJECTS: usize = 10_000;
pub const MAX_LENGTH: usize = 1000;

/// `a_ij = -min{m : (m+1)_{q_ii} = 0 or q_ii^m q_ij q_ji = 1}`, `a_ii = 2`.
pub fn cartan_entry(chi: &Bichar, i: usize, j: usize, bound: u32) -> Result<i32> {
    if i == j {
        return Ok(2);
    }
    let qii = chi.q(i, i);
    let mixed = chi.q(i, j) * chi.q(j, i);
    let mut p = chi.field().one();
    for m in 0..=bound {
        if qint(m + 1, qii).is_zero() || (&p * &mixed).is_one() {
            return Ok(-(m as i32));
        }
        p = &p * qii;
    }
    Err(Error::NotIFinite { i, j })
}

/// An object of the Weyl groupoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidObject {
    pub bichar: Bichar,
    pub cartan: Vec<Vec<i32>>,
}

/// The orbit of a bicharacter under the reflections, with the action
/// `edges[x][i] = r_i(x)`.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub objects: Vec<GroupoidObject>,
    pub edges: Vec<Vec<usize>>,
}

impl Orbit {
    /// Whether every object has the same Cartan matrix.
    pub fn is_standard(&self) -> bool {
        self.objects.iter().all(|o| o.cartan == self.objects[0].cartan)
    }
}

fn object_key(b: &Bichar) -> Vec<Cyclotomic> {
    b.matrix().iter().flatten().cloned().collect()
}

pub fn orbit(chi: &Bichar, max_objects: usize, bound: u32) -> Result<Orbit> {
    let mut objects = Vec::new();
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut index: BTreeMap<Vec<Cyclotomic>, usize> = BTreeMap::new();
    let first = GroupoidObject {
        cartan: chi.cartan_matrix(bound)?,
        bichar: chi.clone(),
    };
    index.insert(object_key(chi), 0);
    objects.push(first);
    let mut next = 0;
    while next < objects.len() {
        let mut row = Vec::with_capacity(chi.rank());
        for i in 0..chi.rank() {
            let r = objects[next].bichar.reflect(i, bound)?;
            let key = object_key(&r);
            let id = match index.get(&key) {
                Some(&id) => id,
                None => {
                    if objects.len() >= max_objects {
                        return Err(Error::OrbitBoundExceeded(max_objects));
                    }
                    let id = objects.len();
                    let cartan = r.cartan_matrix(bound)?;
                    objects.push(GroupoidObject { bichar: r, cartan });
                    index.insert(key, id);
                    id
                }
            };
            row.push(id);
        }
        edges.push(row);
        next += 1;
    }
    Ok(Orbit { objects, edges })
}

/// A positive root with its braiding data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInfo {
    pub coords: Weight,
    /// `q_β = χ(β, β)`.
    pub q: Cyclotomic,
    /// `N_β`, the multiplicative order of `q_β`; infinite when `q_β = 1`,
    /// since then no power of `x_β` vanishes.
    pub order: Order,
}

impl RootInfo {
    pub fn height(&self) -> u32 {
        height(&self.coords) as u32
    }
}

/// Positive roots in the convex order attached to a reduced expression of
/// the longest element.
#[derive(Clone, Debug)]
pub struct RootDatum {
    pub bichar: Bichar,
    /// Reduced word `i_1 … i_M` (0-based letters).
    pub word: Vec<usize>,
    pub roots: Vec<RootInfo>,
}

impl RootDatum {
    pub fn rank(&self) -> usize {
        self.bichar.rank()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn coords(&self) -> Vec<Weight> {
        self.roots.iter().map(|r| r.coords).collect()
    }

    pub fn position(&self, beta: &Weight) -> Option<usize> {
        self.roots.iter().position(|r| r.coords == *beta)
    }

    /// `Π N_β`, the dimension of the Nichols algebra, if every order is finite.
    pub fn dimension(&self) -> Option<u128> {
        self.roots
            .iter()
            .try_fold(1u128, |acc, r| r.order.finite().map(|n| acc * n as u128))
    }
}

/// Options for [`positive_roots_with`].
#[derive(Clone, Copy, Debug)]
pub struct RootOptions {
    pub max_length: usize,
    pub cartan_bound: u32,
    /// Letter tried first at the first step.
    pub start_letter: Option<usize>,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            max_length: MAX_LENGTH,
            cartan_bound: CARTAN_BOUND,
            start_letter: None,
        }
    }
}

pub fn positive_roots(chi: &Bichar, max_length: usize) -> Result<RootDatum> {
    positive_roots_with(
        chi,
        RootOptions {
            max_length,
            ..RootOptions::default()
        },
    )
}

/// Greedy reduced expression of the longest element: extend `w` by the
/// smallest letter `i` with `w(α_i)` positive and new.
pub fn positive_roots_with(chi: &Bichar, opts: RootOptions) -> Result<RootDatum> {
    let rank = chi.rank();
    if let Some(s) = opts.start_letter {
        if s >= rank {
            return Err(Error::InvalidInput(alloc::format!("start letter {} out of range", s + 1)));
        }
    }
    // columns of w: images of the simple roots
    let mut w: Vec<Weight> = (0..rank).map(simple).collect();
    let mut x = chi.clone();
    let mut word = Vec::new();
    let mut roots: Vec<RootInfo> = Vec::new();
    loop {
        let mut letters: Vec<usize> = (0..rank).collect();
        if word.is_empty() {
            if let Some(s) = opts.start_letter {
                letters.retain(|&i| i != s);
                letters.insert(0, s);
            }
        }
        let pick = letters.into_iter().find(|&i| {
            let beta = w[i];
            is_positive(&beta) && roots.iter().all(|r| r.coords != beta)
        });
        let Some(i) = pick else { break };
        if word.len() >= opts.max_length {
            return Err(Error::NotFinite(opts.max_length));
        }
        let beta = w[i];
        let q = chi.chi(&beta, &beta);
        let order = match q.multiplicative_order()? {
            Order::Finite(1) => Order::Infinite,
            o => o,
        };
        roots.push(RootInfo {
            coords: beta,
            q,
            order,
        });
        word.push(i);
        let s = x.reflection(i, opts.cartan_bound)?;
        w = s.iter().map(|img| apply(&w, img, rank)).collect();
        x = x.reflect(i, opts.cartan_bound)?;
    }
    Ok(RootDatum {
        bichar: chi.clone(),
        word,
        roots,
    })
}

/// `w(v)` where `w` is given by its columns.
fn apply(w: &[Weight], v: &Weight, rank: usize) -> Weight {
    let mut out = ZERO;
    for k in 0..rank {
        if v[k] != 0 {
            out = add(&out, &scale(v[k], &w[k]));
        }
    }
    out
}

/// Strong convexity: whenever a root `γ` is a sum of at most four roots,
/// `γ` lies between the smallest and the largest summand.
pub fn is_convex(order: &[Weight]) -> bool {
    let pos: BTreeMap<Weight, usize> = order.iter().enumerate().map(|(i, r)| (*r, i)).collect();
    if pos.len() != order.len() {
        return false;
    }
    let n = order.len();
    // multisets as nondecreasing index tuples
    let mut stack: Vec<(Vec<usize>, Weight)> = (0..n).map(|i| (vec![i], order[i])).collect();
    while let Some((idx, sum)) = stack.pop() {
        if idx.len() >= 2 {
            if let Some(&p) = pos.get(&sum) {
                let (lo, hi) = (idx[0], idx[idx.len() - 1]);
                if !(lo < p && p < hi) {
                    return false;
                }
            }
        }
        if idx.len() < 4 {
            let last = *idx.last().unwrap();
            for j in last..n {
                let mut next = idx.clone();
                next.push(j);
                stack.push((next, add(&sum, &order[j])));
            }
        }
    }
    true
}

/// `m_ij = |Δ₊ ∩ (N₀α_i + N₀α_j)|`.
pub fn m_ij(roots: &[Weight], i: usize, j: usize) -> usize {
    roots
        .iter()
        .filter(|r| r.iter().enumerate().all(|(k, &c)| c == 0 || k == i || k == j))
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn example() -> Bichar {
        let f = Field::new(10);
        Bichar::from_exponents(&f, &[vec![2, 4], vec![0, 5]]).unwrap()
    }

    fn w2(a: i32, b: i32) -> Weight {
        [a, b, 0, 0]
    }

    #[test]
    fn cartan_entries() {
        let f3 = Field::new(3);
        let a2 = Bichar::from_exponents(&f3, &[vec![1, 2], vec![0, 1]]).unwrap();
        assert_eq!(a2.cartan_entry(0, 1, 8), Ok(-1));
        let diag = Bichar::from_exponents(&f3, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(diag.cartan_entry(0, 1, 8), Ok(0));
        assert_eq!(
            example().cartan_matrix(8).unwrap(),
            vec![vec![2, -3], vec![-1, 2]]
        );
        let f7 = Field::new(7);
        // q_11 = 1 never gives (m+1)_q = 0, and q_12 q_21 = ζ_7 is not a power of 1
        let bad = Bichar::from_exponents(&f7, &[vec![0, 1], vec![0, 1]]).unwrap();
        assert_eq!(bad.cartan_entry(0, 1, 8), Err(Error::NotIFinite { i: 0, j: 1 }));
    }

    #[test]
    fn reflections() {
        let chi = example();
        for i in 0..2 {
            let r = chi.reflect(i, 8).unwrap();
            assert_eq!(r.reflect(i, 8).unwrap(), chi);
            assert_eq!(r.cartan_entry(i, 1 - i, 8), chi.cartan_entry(i, 1 - i, 8));
        }
        let r1 = chi.reflect(0, 8).unwrap();
        assert_eq!(r1.cartan_entry(0, 1, 8), Ok(-3));
        let f4 = Field::new(4);
        let split = Bichar::from_exponents(&f4, &[vec![1, 3], vec![1, 2]]).unwrap();
        assert_eq!(split.cartan_entry(0, 1, 8), Ok(0));
        let r = split.reflect(0, 8).unwrap();
        assert_eq!(r.q(1, 1), split.q(1, 1));
        assert_eq!(r.q(0, 0), split.q(0, 0));
    }

    #[test]
    fn orbits() {
        let f3 = Field::new(3);
        let rank1 = Bichar::from_exponents(&f3, &[vec![1]]).unwrap();
        assert_eq!(orbit(&rank1, 100, 8).unwrap().objects.len(), 1);
        let a2 = Bichar::from_exponents(&f3, &[vec![1, 2], vec![0, 1]]).unwrap();
        let o = orbit(&a2, 100, 8).unwrap();
        assert!(o.is_standard());
        assert_eq!(o.objects[0].cartan, vec![vec![2, -1], vec![-1, 2]]);
        let p = orbit(&example(), 100, 8).unwrap();
        // (r_1 r_2)^8 fixes every object
        for x in 0..p.objects.len() {
            let mut y = x;
            for _ in 0..8 {
                y = p.edges[p.edges[y][1]][0];
            }
            assert_eq!(y, x);
        }
        assert_eq!(
            orbit(&example(), 1, 8).unwrap_err(),
            Error::OrbitBoundExceeded(1)
        );
    }

    #[test]
    fn trivial_braiding_has_infinite_order() {
        let chi = Bichar::from_exponents(&Field::new(1), &[vec![0]]).unwrap();
        let d = positive_roots(&chi, 10).unwrap();
        assert_eq!(d.roots[0].order, Order::Infinite);
        assert_eq!(d.dimension(), None);
    }

    #[test]
    fn example_roots() {
        let d = positive_roots(&example(), 1000).unwrap();
        assert_eq!(d.word, vec![0, 1, 0, 1, 0, 1, 0, 1]);
        let expected = [
            w2(1, 0),
            w2(3, 1),
            w2(2, 1),
            w2(5, 3),
            w2(3, 2),
            w2(4, 3),
            w2(1, 1),
            w2(0, 1),
        ];
        assert_eq!(d.coords(), expected.to_vec());
        let orders: Vec<u32> = d.roots.iter().map(|r| r.order.finite().unwrap()).collect();
        assert_eq!(orders, vec![5, 2, 10, 2, 5, 2, 10, 2]);
        assert!(is_convex(&d.coords()));
        assert_eq!(m_ij(&d.coords(), 0, 1), 8);
        assert_eq!(d.dimension(), Some(40000));
    }

    #[test]
    fn convexity_checker() {
        let d = positive_roots(&example(), 1000).unwrap();
        let mut bad = d.coords();
        bad.swap(0, 1);
        assert!(!is_convex(&bad));
        let mut rev = d.coords();
        rev.reverse();
        assert!(is_convex(&rev));
        assert!(is_convex(&[w2(1, 0)]));
    }

    #[test]
    fn root_sets_agree_across_reduced_words() {
        let chi = example();
        let a = positive_roots_with(&chi, RootOptions::default()).unwrap();
        let b = positive_roots_with(
            &chi,
            RootOptions {
                start_letter: Some(1),
                ..RootOptions::default()
            },
        )
        .unwrap();
        assert_eq!(b.word[0], 1);
        let mut sa = a.coords();
        let mut sb = b.coords();
        sa.sort();
        sb.sort();
        assert_eq!(sa, sb);
        assert!(is_convex(&b.coords()));
    }

    #[test]
    fn reflection_permutes_positive_roots() {
        let chi = example();
        let o = orbit(&chi, 100, 8).unwrap();
        let sizes: Vec<usize> = o
            .objects
            .iter()
            .map(|x| positive_roots(&x.bichar, 1000).unwrap().len())
            .collect();
        assert!(sizes.iter().all(|&s| s == 8));
        for (x, obj) in o.objects.iter().enumerate() {
            let roots = positive_roots(&obj.bichar, 1000).unwrap().coords();
            for i in 0..2 {
                let s = obj.bichar.reflection(i, 8).unwrap();
                let target: Vec<Weight> =
                    positive_roots(&o.objects[o.edges[x][i]].bichar, 1000).unwrap().coords();
                for r in &roots {
                    let img = apply(&s, r, 2);
                    if *r == simple(i) {
                        assert_eq!(img, neg(&simple(i)));
                    } else {
                        assert!(target.contains(&img));
                    }
                }
            }
        }
    }

    #[test]
    fn infinite_root_system_is_reported() {
        let f5 = Field::new(5);
        let aff = Bichar::from_exponents(&f5, &[vec![1, 1], vec![2, 1]]).unwrap();
        assert_eq!(aff.cartan_matrix(8).unwrap(), vec![vec![2, -2], vec![-2, 2]]);
        assert_eq!(positive_roots(&aff, 50).unwrap_err(), Error::NotFinite(50));
    }
}
