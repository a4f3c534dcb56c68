//! The complex reflection group G(b,1,n), realized as the semidirect product
//! `W ⋉ H_b` of the symmetric group with diagonal matrices whose entries are
//! b-th roots of unity.
//!
//! Diagonal entries are stored in discrete-log form: position `i` holding `m`
//! stands for the entry `ζ^{a·m}`, where `ζ^a` generates the cyclic group of
//! order `b`. Every element is kept in the canonical form `w·d` with the
//! permutation on the left.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{HeckeError, Result};

/// Rank and cyclic order of `G(b,1,n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupParams {
    pub n: usize,
    pub b: u32,
}

/// A permutation of `{0, …, n-1}` in one-line notation: `self.0[j]` is the
/// image of `j`. Composition is right-to-left, as for permutation matrices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u8).collect())
    }

    /// Panics if `images` is not a permutation of `0..images.len()`.
    pub fn from_images(images: Vec<u8>) -> Self {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            assert!((i as usize) < images.len() && !seen[i as usize], "not a permutation: {images:?}");
            seen[i as usize] = true;
        }
        Perm(images)
    }

    /// The adjacent transposition `s_i` (1-based `i`, swapping `i-1` and `i`).
    pub fn simple(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n, "s_{i} is not a generator for n={n}");
        Self::transposition(n, i - 1, i)
    }

    /// Transposition of the zero-based points `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut p = Self::identity(n);
        p.0.swap(i, j);
        p
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    pub fn apply(&self, j: usize) -> usize {
        self.0[j] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(j, &i)| j == i as usize)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&j| self.0[j as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.0.len()];
        for (j, &i) in self.0.iter().enumerate() {
            inv[i as usize] = j as u8;
        }
        Perm(inv)
    }

    /// Coxeter length, i.e. the number of inversions.
    pub fn length(&self) -> usize {
        let p = &self.0;
        let mut count = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Whether `ℓ(s_i · self) < ℓ(self)`.
    pub fn is_left_descent(&self, i: usize) -> bool {
        let inv = self.inverse();
        inv.0[i] < inv.0[i - 1]
    }

    /// Whether `ℓ(self · s_i) < ℓ(self)`.
    pub fn is_right_descent(&self, i: usize) -> bool {
        self.0[i - 1] > self.0[i]
    }

    /// The lexicographically smallest reduced word, as 1-based generator
    /// indices whose product (left to right) is `self`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let n = self.n();
        let mut word = Vec::with_capacity(self.length());
        let mut rest = self.clone();
        while !rest.is_identity() {
            let i = (1..n)
                .find(|&i| rest.is_left_descent(i))
                .expect("non-identity permutation has a left descent");
            word.push(i);
            rest = Perm::simple(n, i).compose(&rest);
        }
        word
    }

    /// Product `s_{i_1} ⋯ s_{i_p}` of 1-based generator indices.
    pub fn from_word(n: usize, word: &[usize]) -> Perm {
        word.iter()
            .fold(Perm::identity(n), |acc, &i| acc.compose(&Perm::simple(n, i)))
    }

    /// Classical Bruhat order, via the rank-matrix criterion.
    pub fn bruhat_leq(&self, other: &Perm) -> bool {
        let n = self.n();
        assert_eq!(n, other.n());
        for j in 0..n {
            let (mut r1, mut r2) = (0usize, 0usize);
            for i in 0..n {
                if self.0[i] as usize >= j {
                    r1 += 1;
                }
                if other.0[i] as usize >= j {
                    r2 += 1;
                }
                if r1 > r2 {
                    return false;
                }
            }
        }
        true
    }

    /// All permutations of `n` points in lexicographic order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (0..n as u8).collect();
        loop {
            out.push(Perm(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    /// The two points moved by a transposition, if `self` is one.
    pub fn as_reflection(&self) -> Option<Reflection> {
        let moved: Vec<usize> = (0..self.n()).filter(|&j| self.apply(j) != j).collect();
        match moved[..] {
            [i, j] if self.apply(i) == j => Some(Reflection { i: i + 1, j: j + 1 }),
            _ => None,
        }
    }
}

/// A reflection `t = (i j)` of `W`, 1-based with `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Reflection {
    pub i: usize,
    pub j: usize,
}

impl Reflection {
    pub fn new(i: usize, j: usize) -> Self {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        assert!(i >= 1 && i < j, "invalid reflection ({i} {j})");
        Reflection { i, j }
    }

    pub fn simple(i: usize) -> Self {
        Reflection { i, j: i + 1 }
    }

    pub fn as_perm(&self, n: usize) -> Perm {
        Perm::transposition(n, self.i - 1, self.j - 1)
    }
}

/// An element `w·d` of `W ⋉ H_b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    b: u32,
    perm: Perm,
    exps: Vec<u32>,
}

impl GroupElement {
    pub fn new(perm: Perm, exps: Vec<u32>, b: u32) -> Self {
        assert_eq!(perm.n(), exps.len());
        let exps = exps.into_iter().map(|e| e % b).collect();
        GroupElement { b, perm, exps }
    }

    pub fn perm(&self) -> &Perm {
        &self.perm
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn params(&self) -> GroupParams {
        GroupParams { n: self.perm.n(), b: self.b }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_identity() && self.is_diagonal_trivial()
    }

    /// Whether the element lies in `H_b`.
    pub fn is_diagonal(&self) -> bool {
        self.perm.is_identity()
    }

    fn is_diagonal_trivial(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn length(&self) -> usize {
        self.perm.length()
    }

    /// The `W`-part `w` as a group element.
    pub fn w_part(&self) -> GroupElement {
        GroupElement { b: self.b, perm: self.perm.clone(), exps: vec![0; self.exps.len()] }
    }

    /// The `H_b`-part `d` of `x = w·d`.
    pub fn d_part(&self) -> GroupElement {
        GroupElement { b: self.b, perm: Perm::identity(self.perm.n()), exps: self.exps.clone() }
    }

    /// Product with a parameter check.
    pub fn try_mul(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.params() != other.params() {
            let (l, r) = (self.params(), other.params());
            return Err(HeckeError::ParamMismatch(l.n, l.b, r.n, r.b));
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &GroupElement) -> GroupElement {
        let b = self.b;
        let exps = (0..self.exps.len())
            .map(|j| (self.exps[other.perm.apply(j)] + other.exps[j]) % b)
            .collect();
        GroupElement { b, perm: self.perm.compose(&other.perm), exps }
    }

    pub fn inverse(&self) -> GroupElement {
        let b = self.b;
        let inv = self.perm.inverse();
        let exps = (0..self.exps.len())
            .map(|j| (b - self.exps[inv.apply(j)]) % b)
            .collect();
        GroupElement { b, perm: inv, exps }
    }

    /// `self · other · self⁻¹`.
    pub fn conjugate(&self, other: &GroupElement) -> GroupElement {
        &(self * other) * &self.inverse()
    }

    /// Image as a monomial matrix: entry `(r, c)` is `Some(m)` when it holds
    /// `ζ^{a·m}` and `None` when it is zero.
    pub fn to_monomial_matrix(&self) -> Vec<Vec<Option<u32>>> {
        let n = self.perm.n();
        let mut m = vec![vec![None; n]; n];
        for (col, &e) in self.exps.iter().enumerate() {
            m[self.perm.apply(col)][col] = Some(e);
        }
        m
    }
}

impl Mul for &GroupElement {
    type Output = GroupElement;

    /// Panics on mismatched parameters; see [`GroupElement::try_mul`].
    fn mul(self, rhs: &GroupElement) -> GroupElement {
        self.try_mul(rhs).expect("group elements from different groups")
    }
}

/// Product of two monomial matrices over `{0} ∪ Z/b`.
pub fn monomial_matrix_product(
    x: &[Vec<Option<u32>>],
    y: &[Vec<Option<u32>>],
    b: u32,
) -> Vec<Vec<Option<u32>>> {
    let n = x.len();
    let mut out = vec![vec![None; n]; n];
    for r in 0..n {
        for c in 0..n {
            for k in 0..n {
                if let (Some(p), Some(q)) = (x[r][k], y[k][c]) {
                    assert!(out[r][c].is_none(), "product is not monomial");
                    out[r][c] = Some((p + q) % b);
                }
            }
        }
    }
    out
}

/// A finite set of elements of `H_b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagSet(BTreeSet<GroupElement>);

impl DiagSet {
    pub fn from_elements(elems: impl IntoIterator<Item = GroupElement>) -> Self {
        let set: BTreeSet<_> = elems.into_iter().collect();
        debug_assert!(set.iter().all(GroupElement::is_diagonal));
        DiagSet(set)
    }

    pub fn empty() -> Self {
        DiagSet(BTreeSet::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, d: &GroupElement) -> bool {
        self.0.contains(d)
    }

    pub fn iter(&self) -> impl Iterator<Item = &GroupElement> {
        self.0.iter()
    }

    /// Elementwise product set `{ d·d' }`.
    pub fn product(&self, other: &DiagSet) -> DiagSet {
        DiagSet(
            self.0
                .iter()
                .flat_map(|d| other.0.iter().map(move |e| d * e))
                .collect(),
        )
    }

    pub fn union(&self, other: &DiagSet) -> DiagSet {
        DiagSet(self.0.union(&other.0).cloned().collect())
    }

    pub fn inverses(&self) -> DiagSet {
        DiagSet(self.0.iter().map(GroupElement::inverse).collect())
    }

    pub fn is_subset(&self, other: &DiagSet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// `w·S·w⁻¹`.
    pub fn conjugate_by(&self, w: &GroupElement) -> DiagSet {
        DiagSet(self.0.iter().map(|d| w.conjugate(d)).collect())
    }
}

impl<'a> IntoIterator for &'a DiagSet {
    type Item = &'a GroupElement;
    type IntoIter = std::collections::btree_set::Iter<'a, GroupElement>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl GroupParams {
    pub fn new(n: usize, b: u32) -> Result<Self> {
        if n == 0 {
            return Err(HeckeError::InvalidParams { n, b, reason: "n must be at least 1" });
        }
        if b == 0 {
            return Err(HeckeError::InvalidParams { n, b, reason: "b must be at least 1" });
        }
        if n > 12 {
            return Err(HeckeError::InvalidParams { n, b, reason: "n above 12 is not supported" });
        }
        Ok(GroupParams { n, b })
    }

    /// `|W H_b| = bⁿ·n!`.
    pub fn order(&self) -> u128 {
        let fact: u128 = (1..=self.n as u128).product();
        (self.b as u128).pow(self.n as u32) * fact
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::new(Perm::identity(self.n), vec![0; self.n], self.b)
    }

    /// The simple reflection `s_i`, 1-based.
    pub fn generator(&self, i: usize) -> GroupElement {
        GroupElement::new(Perm::simple(self.n, i), vec![0; self.n], self.b)
    }

    pub fn perm_element(&self, perm: &Perm) -> GroupElement {
        GroupElement::new(perm.clone(), vec![0; self.n], self.b)
    }

    /// The diagonal element with the given exponents, reduced mod `b`.
    pub fn diag(&self, exps: &[i64]) -> GroupElement {
        assert_eq!(exps.len(), self.n);
        let b = self.b as i64;
        GroupElement::new(
            Perm::identity(self.n),
            exps.iter().map(|&e| e.rem_euclid(b) as u32).collect(),
            self.b,
        )
    }

    pub fn from_word(&self, word: &[usize]) -> GroupElement {
        self.perm_element(&Perm::from_word(self.n, word))
    }

    /// All of `H_b` in lexicographic exponent order.
    pub fn diagonal_elements(&self) -> Vec<GroupElement> {
        let total = (self.b as usize).pow(self.n as u32);
        (0..total)
            .map(|mut k| {
                let mut exps = vec![0u32; self.n];
                for e in exps.iter_mut().rev() {
                    *e = (k % self.b as usize) as u32;
                    k /= self.b as usize;
                }
                GroupElement::new(Perm::identity(self.n), exps, self.b)
            })
            .collect()
    }

    /// All of `W H_b`, in canonical element order.
    pub fn elements(&self) -> Vec<GroupElement> {
        let hb = self.diagonal_elements();
        let mut out = Vec::with_capacity(self.order() as usize);
        for p in Perm::all(self.n) {
            for d in &hb {
                out.push(GroupElement::new(p.clone(), d.exps.clone(), self.b));
            }
        }
        out
    }

    pub fn reflections(&self) -> Vec<Reflection> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in i + 1..=self.n {
                out.push(Reflection { i, j });
            }
        }
        out
    }

    /// The exponent `c` with `ζ^{a·c} = (-1)^{b-1}`: zero for odd `b` and
    /// `b/2` for even `b`.
    pub fn sign_exponent(&self) -> u32 {
        if self.b % 2 == 0 {
            self.b / 2
        } else {
            0
        }
    }

    /// `h_{i,j}(ζ^{a·m})` in exponent form (1-based `i`, `j`).
    pub fn h_pair(&self, i: usize, j: usize, m: u32) -> GroupElement {
        let b = self.b;
        let mut exps = vec![0u32; self.n];
        exps[i - 1] = m % b;
        exps[j - 1] = (self.sign_exponent() + b - m % b) % b;
        GroupElement::new(Perm::identity(self.n), exps, b)
    }

    /// `X_t = { h_{i,j}(α) : α ∈ F_b }` for `t = (i j)`.
    pub fn x_set(&self, t: Reflection) -> DiagSet {
        DiagSet::from_elements((0..self.b).map(|m| self.h_pair(t.i, t.j, m)))
    }

    /// `X_t` for a transposition given as a permutation.
    pub fn x_set_of_perm(&self, t: &Perm) -> DiagSet {
        self.x_set(t.as_reflection().expect("not a reflection"))
    }

    /// `X_{s_i}` for the simple reflection `s_i`.
    pub fn x_simple(&self, i: usize) -> DiagSet {
        self.x_set(Reflection::simple(i))
    }

    /// `X_0 = { h_1(ζ^{a·m}) }`.
    pub fn x_zero(&self) -> DiagSet {
        DiagSet::from_elements((0..self.b).map(|m| {
            let mut exps = vec![0i64; self.n];
            exps[0] = m as i64;
            self.diag(&exps)
        }))
    }

    /// `H' = X_{s_1} ⋯ X_{s_{n-1}}`.
    pub fn h_prime(&self) -> DiagSet {
        (1..self.n).fold(DiagSet::from_elements([self.identity()]), |acc, i| {
            acc.product(&self.x_simple(i))
        })
    }
}

/// Breadth-first search for a chain `w1 = v_0, v_1 = v_0 t_1, …, v_r = w2`
/// in which each step multiplies on the right by a reflection and raises the
/// length by exactly one. Returns the reflections, or `None` when
/// `w1 ≰_B w2`.
pub fn reflection_chain(w1: &Perm, w2: &Perm) -> Option<Vec<Reflection>> {
    reflection_chain_with(w1, w2, false)
}

/// Like [`reflection_chain`] but trying reflections in reverse order, which
/// usually yields a different chain.
pub fn reflection_chain_reversed(w1: &Perm, w2: &Perm) -> Option<Vec<Reflection>> {
    reflection_chain_with(w1, w2, true)
}

fn reflection_chain_with(w1: &Perm, w2: &Perm, reversed: bool) -> Option<Vec<Reflection>> {
    if !w1.bruhat_leq(w2) {
        return None;
    }
    let n = w1.n();
    let target_len = w2.length();
    let mut refl: Vec<Reflection> = (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| Reflection { i, j }))
        .collect();
    if reversed {
        refl.reverse();
    }
    let mut parent: std::collections::HashMap<Perm, (Perm, Reflection)> = Default::default();
    let mut queue = VecDeque::from([w1.clone()]);
    while let Some(v) = queue.pop_front() {
        if &v == w2 {
            let mut chain = Vec::new();
            let mut cur = v;
            while &cur != w1 {
                let (prev, t) = parent[&cur].clone();
                chain.push(t);
                cur = prev;
            }
            chain.reverse();
            return Some(chain);
        }
        let len = v.length();
        if len >= target_len {
            continue;
        }
        for &t in &refl {
            let next = v.compose(&t.as_perm(n));
            if next.length() == len + 1 && next.bruhat_leq(w2) && !parent.contains_key(&next) {
                parent.insert(next.clone(), (v.clone(), t));
                queue.push_back(next);
            }
        }
    }
    None
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = self.reduced_word();
        if word.is_empty() {
            return f.write_str("e");
        }
        let parts: Vec<String> = word.iter().map(|i| format!("s{i}")).collect();
        f.write_str(&parts.join("*"))
    }
}

impl fmt::Display for GroupElement {
    /// Canonical element-expression form, e.g. `s1*s2*d(0,1,1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> =
            self.perm.reduced_word().iter().map(|i| format!("s{i}")).collect();
        if !self.is_diagonal_trivial() {
            let e: Vec<String> = self.exps.iter().map(|e| e.to_string()).collect();
            parts.push(format!("d({})", e.join(",")));
        }
        if parts.is_empty() {
            f.write_str("e")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, b: u32) -> GroupParams {
        GroupParams::new(n, b).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let g = p(3, 3);
        for x in g.elements() {
            assert_eq!(&x * &g.identity(), x);
            assert_eq!(&g.identity() * &x, x);
        }
    }

    #[test]
    fn conjugating_by_transposition_swaps_positions() {
        let g = p(2, 2);
        let s = g.generator(1);
        let d = g.diag(&[1, 0]);
        assert_eq!(&(&s * &d) * &s, g.diag(&[0, 1]));
    }

    #[test]
    fn inverse_examples() {
        let g = p(2, 2);
        assert_eq!(g.identity().inverse(), g.identity());
        let g3 = p(3, 5);
        assert_eq!(g3.diag(&[1, 2, 4]).inverse(), g3.diag(&[-1, -2, -4]));
        let x = &g.generator(1) * &g.diag(&[1, 0]);
        let expected = &g.generator(1) * &g.diag(&[0, 1]);
        assert_eq!(x.inverse(), expected);
        assert_eq!(x.inverse(), &g.diag(&[1, 0]) * &g.generator(1));
    }

    #[test]
    fn lengths() {
        let g = p(3, 3);
        assert_eq!(g.diag(&[1, 2, 0]).length(), 0);
        assert_eq!(g.from_word(&[1, 2, 1]).length(), 3);
        assert_eq!((&g.generator(1) * &g.diag(&[0, 1, 2])).length(), 1);
    }

    #[test]
    fn mismatched_params_are_rejected() {
        let x = p(2, 2).identity();
        let y = p(2, 3).identity();
        assert!(matches!(x.try_mul(&y), Err(HeckeError::ParamMismatch(2, 2, 2, 3))));
        assert!(GroupParams::new(0, 2).is_err());
        assert!(GroupParams::new(2, 0).is_err());
    }

    #[test]
    fn x_set_examples() {
        let g1 = p(3, 1);
        assert_eq!(g1.x_simple(1), DiagSet::from_elements([g1.identity()]));
        let g2 = p(2, 2);
        assert_eq!(
            g2.x_simple(1),
            DiagSet::from_elements([g2.diag(&[1, 0]), g2.diag(&[0, 1])])
        );
        // h_{1,2}(α) for α = ζ^{a m}, m ∈ {0,1,2}: exponents (m, -m).
        let g3 = p(2, 3);
        assert_eq!(
            g3.x_simple(1),
            DiagSet::from_elements([g3.diag(&[0, 0]), g3.diag(&[1, 2]), g3.diag(&[2, 1])])
        );
    }

    #[test]
    fn x_zero_examples() {
        let g = p(3, 1);
        assert_eq!(g.x_zero(), DiagSet::from_elements([g.identity()]));
        let g = p(3, 2);
        assert_eq!(
            g.x_zero(),
            DiagSet::from_elements([g.diag(&[0, 0, 0]), g.diag(&[1, 0, 0])])
        );
    }

    #[test]
    fn reduced_words() {
        assert!(Perm::identity(3).reduced_word().is_empty());
        assert_eq!(Perm::simple(3, 1).reduced_word(), vec![1]);
        let w0 = Perm::from_word(3, &[2, 1, 2]);
        assert_eq!(w0.reduced_word(), vec![1, 2, 1]);
        for w in Perm::all(4) {
            let word = w.reduced_word();
            assert_eq!(word.len(), w.length());
            assert_eq!(Perm::from_word(4, &word), w);
        }
    }

    #[test]
    fn bruhat_small_cases() {
        let s1 = Perm::simple(3, 1);
        let s2 = Perm::simple(3, 2);
        let s2s1 = s2.compose(&s1);
        assert!(s1.bruhat_leq(&s1));
        for w in Perm::all(3) {
            assert!(Perm::identity(3).bruhat_leq(&w));
        }
        assert!(s1.bruhat_leq(&s2s1));
        assert!(!s1.bruhat_leq(&s2));
    }

    #[test]
    fn monomial_matrix_images() {
        let g = p(2, 3);
        assert_eq!(
            g.identity().to_monomial_matrix(),
            vec![vec![Some(0), None], vec![None, Some(0)]]
        );
        assert_eq!(
            g.diag(&[1, 2]).to_monomial_matrix(),
            vec![vec![Some(1), None], vec![None, Some(2)]]
        );
        assert_eq!(
            g.generator(1).to_monomial_matrix(),
            vec![vec![None, Some(0)], vec![Some(0), None]]
        );
    }

    #[test]
    fn reflection_chains_climb_by_one() {
        let n = 4;
        for w1 in Perm::all(n) {
            for w2 in Perm::all(n) {
                match reflection_chain(&w1, &w2) {
                    None => assert!(!w1.bruhat_leq(&w2)),
                    Some(chain) => {
                        assert_eq!(chain.len(), w2.length() - w1.length());
                        let mut v = w1.clone();
                        for t in chain {
                            let next = v.compose(&t.as_perm(n));
                            assert_eq!(next.length(), v.length() + 1);
                            v = next;
                        }
                        assert_eq!(v, w2);
                    }
                }
            }
        }
    }

    #[test]
    fn display_is_canonical() {
        let g = p(3, 2);
        assert_eq!(g.identity().to_string(), "e");
        let x = &g.from_word(&[1, 2]) * &g.diag(&[0, 1, 1]);
        assert_eq!(x.to_string(), "s1*s2*d(0,1,1)");
        assert_eq!(g.from_word(&[2, 1, 2]).to_string(), "s1*s2*s1");
    }
}
