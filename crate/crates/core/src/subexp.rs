//! Distinguished subexpressions of a reduced word and the closed formula
//! `R*_{y,w} = Σ_{x ∈ π⁻¹(y)} (a v⁻¹)^{n(x)}`.
//!
//! A distinguished subexpression of `(s_1, …, s_p)` is a tuple
//! `(x_0, …, x_p)` with `x_0 = 1`, `x_{j−1}⁻¹ x_j ∈ {s_j} ∪ X_{s_j}` and
//! `x_j ≤ x_{j−1} s_j`; `n(x)` counts the steps taken inside `X_{s_j}`.

use std::collections::{BTreeMap, BTreeSet};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{HeckeError, Result};
use crate::group::{GroupElement, GroupParams, Perm};
use crate::order::Order;
use crate::scalar::GenericScalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subexpression {
    pub word: Vec<usize>,
    pub steps: Vec<GroupElement>,
    pub n_stat: usize,
}

impl Subexpression {
    /// `π(x) = x_p`.
    pub fn end(&self) -> &GroupElement {
        self.steps.last().expect("steps always contain x_0")
    }
}

impl Serialize for Subexpression {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Subexpression", 3)?;
        st.serialize_field("word", &self.word)?;
        let steps: Vec<String> = self.steps.iter().map(|x| x.to_string()).collect();
        st.serialize_field("steps", &steps)?;
        st.serialize_field("n_stat", &self.n_stat)?;
        st.end()
    }
}

/// Rejects words with out-of-range letters or that are not reduced.
pub fn check_reduced(word: &[usize], params: &GroupParams) -> Result<Perm> {
    if let Some(&index) = word.iter().find(|&&i| i == 0 || i >= params.n) {
        return Err(HeckeError::GeneratorOutOfRange { index, n: params.n });
    }
    let w = Perm::from_word(params.n, word);
    if w.length() != word.len() {
        return Err(HeckeError::NotReduced(word.to_vec()));
    }
    Ok(w)
}

/// All distinguished subexpressions of `word`, in depth-first order with the
/// `s`-step tried before the `X_s`-steps (the latter in exponent order).
pub fn enumerate_distinguished(word: &[usize], params: &GroupParams) -> Result<Vec<Subexpression>> {
    enumerate_with(&Order::new(*params), word)
}

/// As [`enumerate_distinguished`], reusing an existing comparison oracle.
pub fn enumerate_with(order: &Order, word: &[usize]) -> Result<Vec<Subexpression>> {
    let params = order.params();
    check_reduced(word, &params)?;
    let x_sets: Vec<_> = (1..params.n).map(|i| params.x_simple(i)).collect();
    let mut out = Vec::new();
    let mut steps = vec![params.identity()];
    extend(order, word, &x_sets, &mut steps, 0, &mut out);
    Ok(out)
}

fn extend(
    order: &Order,
    word: &[usize],
    x_sets: &[crate::group::DiagSet],
    steps: &mut Vec<GroupElement>,
    n_stat: usize,
    out: &mut Vec<Subexpression>,
) {
    let j = steps.len() - 1;
    if j == word.len() {
        out.push(Subexpression { word: word.to_vec(), steps: steps.clone(), n_stat });
        return;
    }
    let params = order.params();
    let prev = steps[j].clone();
    let via_s = &prev * &params.generator(word[j]);

    steps.push(via_s.clone());
    extend(order, word, x_sets, steps, n_stat, out);
    steps.pop();

    for d in &x_sets[word[j] - 1] {
        let next = &prev * d;
        if order.leq(&next, &via_s) {
            steps.push(next);
            extend(order, word, x_sets, steps, n_stat + 1, out);
            steps.pop();
        }
    }
}

/// `{ π(x) : x distinguished }`, which is the lower ideal of `w = s_1⋯s_p`.
pub fn lower_ideal(word: &[usize], params: &GroupParams) -> Result<BTreeSet<GroupElement>> {
    Ok(enumerate_distinguished(word, params)?.iter().map(|x| x.end().clone()).collect())
}

/// Closed-formula `R*_{y,w}` for every `y ≤ w`, from one enumeration pass.
pub fn closed_column(subexps: &[Subexpression]) -> BTreeMap<GroupElement, GenericScalar> {
    let mut out: BTreeMap<GroupElement, GenericScalar> = BTreeMap::new();
    for x in subexps {
        *out.entry(x.end().clone()).or_default() += &GenericScalar::av_inv_pow(x.n_stat as u32);
    }
    out
}

/// `R*_{y,w}` by the closed formula, where `w` is the product of `word`.
pub fn r_star_closed(y: &GroupElement, word: &[usize], params: &GroupParams) -> Result<GenericScalar> {
    let subexps = enumerate_distinguished(word, params)?;
    Ok(closed_column(&subexps).remove(y).unwrap_or_default())
}
