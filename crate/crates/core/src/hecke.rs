//! The generic Hecke algebra of `G(b,1,n)` in the rescaled basis
//! `T_x = v^{-ℓ(x)} t_x`.
//!
//! Products are computed by factoring the right operand as `w·d` and
//! applying the right-multiplication rules one generator at a time:
//!
//! * `T_x T_d = T_{xd}`
//! * `T_x T_s = T_{xs}` if `ℓ(xs) > ℓ(x)`, else `T_{xs} + (a v⁻¹) Σ_{d ∈ X_s} T_{xd}`.
//!
//! The left rules are available separately for cross-checking.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{HeckeError, Result};
use crate::group::{DiagSet, GroupElement, GroupParams};
use crate::report::{Check, Report};
use crate::scalar::{GenericScalar, HeckeScalar, SpecializedScalar};

/// A finitely supported combination `Σ γ_x T_x`.
#[derive(Clone, PartialEq)]
pub struct HeckeElement<S> {
    params: GroupParams,
    support: BTreeMap<GroupElement, S>,
}

pub type GenericElement = HeckeElement<GenericScalar>;
pub type SpecializedElement = HeckeElement<SpecializedScalar>;

/// The sets `X_{s_i}` for one group, computed once per product.
struct SimpleXSets(Vec<DiagSet>);

impl SimpleXSets {
    fn new(params: &GroupParams) -> Self {
        SimpleXSets((1..params.n).map(|i| params.x_simple(i)).collect())
    }

    fn get(&self, i: usize) -> &DiagSet {
        &self.0[i - 1]
    }
}

impl<S: HeckeScalar> HeckeElement<S> {
    pub fn zero(params: GroupParams) -> Self {
        HeckeElement { params, support: BTreeMap::new() }
    }

    /// The basis element `T_x`.
    pub fn t_basis(x: &GroupElement) -> Self {
        let params = x.params();
        let mut h = Self::zero(params);
        h.add_term(x.clone(), S::one(&params));
        h
    }

    pub fn identity(params: GroupParams) -> Self {
        Self::t_basis(&params.identity())
    }

    /// `t_x = v^{ℓ(x)} T_x`.
    pub fn t_unnormalized(x: &GroupElement) -> Self {
        let params = x.params();
        let mut h = Self::zero(params);
        h.add_term(x.clone(), S::one(&params).shift_v(x.length() as i32));
        h
    }

    pub fn from_terms(params: GroupParams, terms: impl IntoIterator<Item = (GroupElement, S)>) -> Self {
        let mut h = Self::zero(params);
        for (x, c) in terms {
            h.add_term(x, c);
        }
        h
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GroupElement, &S)> {
        self.support.iter()
    }

    pub fn coeff(&self, x: &GroupElement) -> S {
        self.support.get(x).cloned().unwrap_or_else(|| S::zero(&self.params))
    }

    pub fn add_term(&mut self, x: GroupElement, c: S) {
        debug_assert_eq!(x.params(), self.params);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.support.entry(x) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_terms(self.params, self.support.iter().map(|(x, g)| (x.clone(), g.mul_ref(c))))
    }

    fn check_params(&self, other: &Self) -> Result<()> {
        if self.params != other.params {
            let (l, r) = (self.params, other.params);
            return Err(HeckeError::ParamMismatch(l.n, l.b, r.n, r.b));
        }
        Ok(())
    }

    /// `self · T_d` for `d ∈ H_b`.
    pub fn right_mul_diag(&self, d: &GroupElement) -> Self {
        Self::from_terms(self.params, self.support.iter().map(|(x, c)| (x * d, c.clone())))
    }

    /// `T_d · self` for `d ∈ H_b`.
    pub fn left_mul_diag(&self, d: &GroupElement) -> Self {
        Self::from_terms(self.params, self.support.iter().map(|(x, c)| (d * x, c.clone())))
    }

    fn right_mul_simple_with(&self, i: usize, xs: &SimpleXSets) -> Self {
        let s = self.params.generator(i);
        let quad = S::quadratic(&self.params);
        let mut out = Self::zero(self.params);
        for (x, c) in &self.support {
            let x_s = x * &s;
            let descends = x.perm().is_right_descent(i);
            out.add_term(x_s, c.clone());
            if descends {
                let cq = c.mul_ref(&quad);
                for d in xs.get(i) {
                    out.add_term(x * d, cq.clone());
                }
            }
        }
        out
    }

    fn left_mul_simple_with(&self, i: usize, xs: &SimpleXSets) -> Self {
        let s = self.params.generator(i);
        let quad = S::quadratic(&self.params);
        let mut out = Self::zero(self.params);
        for (x, c) in &self.support {
            let s_x = &s * x;
            let descends = x.perm().is_left_descent(i);
            out.add_term(s_x, c.clone());
            if descends {
                let cq = c.mul_ref(&quad);
                for d in xs.get(i) {
                    out.add_term(d * x, cq.clone());
                }
            }
        }
        out
    }

    /// `self · T_{s_i}`.
    pub fn right_mul_simple(&self, i: usize) -> Self {
        self.right_mul_simple_with(i, &SimpleXSets::new(&self.params))
    }

    /// `T_{s_i} · self`, by the left rules.
    pub fn left_mul_simple(&self, i: usize) -> Self {
        self.left_mul_simple_with(i, &SimpleXSets::new(&self.params))
    }

    fn right_mul_basis_with(&self, y: &GroupElement, xs: &SimpleXSets) -> Self {
        let mut acc = self.clone();
        for i in y.perm().reduced_word() {
            acc = acc.right_mul_simple_with(i, xs);
        }
        acc.right_mul_diag(&y.d_part())
    }

    /// `self · T_y`.
    pub fn right_mul_basis(&self, y: &GroupElement) -> Self {
        self.right_mul_basis_with(y, &SimpleXSets::new(&self.params))
    }

    /// `T_y · self`, using only the left rules.
    pub fn left_mul_basis(&self, y: &GroupElement) -> Self {
        let xs = SimpleXSets::new(&self.params);
        // T_{w d} = T_{s_{i_1}} ⋯ T_{s_{i_p}} T_d
        let mut acc = self.left_mul_diag(&y.d_part());
        for i in y.perm().reduced_word().into_iter().rev() {
            acc = acc.left_mul_simple_with(i, &xs);
        }
        acc
    }

    /// Product with a parameter check.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_params(other)?;
        let xs = SimpleXSets::new(&self.params);
        let mut out = Self::zero(self.params);
        for (y, c) in &other.support {
            let part = self.right_mul_basis_with(y, &xs);
            for (z, g) in part.support {
                out.add_term(z, g.mul_ref(c));
            }
        }
        Ok(out)
    }

    /// `self · T_{s_i}⁻¹`, with `T_s⁻¹ = T_s − a v⁻¹ Σ_{d ∈ X_s} T_d`.
    fn right_mul_simple_inverse_with(&self, i: usize, xs: &SimpleXSets) -> Self {
        let mut out = self.right_mul_simple_with(i, xs);
        let q = S::quadratic(&self.params).neg_ref();
        for (x, c) in &self.support {
            let cq = c.mul_ref(&q);
            for d in xs.get(i) {
                out.add_term(x * d, cq.clone());
            }
        }
        out
    }

    /// `T_x⁻¹`, as the product of generator inverses along a reduced word.
    pub fn inverse_t(x: &GroupElement) -> Self {
        let params = x.params();
        let xs = SimpleXSets::new(&params);
        // T_{w d}⁻¹ = T_{d⁻¹} T_{s_{i_p}}⁻¹ ⋯ T_{s_{i_1}}⁻¹
        let mut acc = Self::t_basis(&x.d_part().inverse());
        for i in x.perm().reduced_word().into_iter().rev() {
            acc = acc.right_mul_simple_inverse_with(i, &xs);
        }
        acc
    }

    /// The bar involution `Σ γ_x T_x ↦ Σ bar(γ_x) T_{x⁻¹}⁻¹`.
    pub fn bar(&self) -> Self {
        let mut out = Self::zero(self.params);
        for (x, c) in &self.support {
            let inv = Self::inverse_t(&x.inverse());
            let cb = c.bar();
            for (z, g) in inv.support {
                out.add_term(z, g.mul_ref(&cb));
            }
        }
        out
    }

    /// `τ(h)`: the coefficient of `T_1`.
    pub fn tau(&self) -> S {
        self.coeff(&self.params.identity())
    }
}

impl<S: HeckeScalar> Add<&HeckeElement<S>> for &HeckeElement<S> {
    type Output = HeckeElement<S>;
    fn add(self, rhs: &HeckeElement<S>) -> HeckeElement<S> {
        self.check_params(rhs).expect("Hecke elements from different algebras");
        let mut out = self.clone();
        for (x, c) in &rhs.support {
            out.add_term(x.clone(), c.clone());
        }
        out
    }
}

impl<S: HeckeScalar> Neg for &HeckeElement<S> {
    type Output = HeckeElement<S>;
    fn neg(self) -> HeckeElement<S> {
        HeckeElement::from_terms(self.params, self.support.iter().map(|(x, c)| (x.clone(), c.neg_ref())))
    }
}

impl<S: HeckeScalar> Sub<&HeckeElement<S>> for &HeckeElement<S> {
    type Output = HeckeElement<S>;
    fn sub(self, rhs: &HeckeElement<S>) -> HeckeElement<S> {
        self + &(-rhs)
    }
}

impl<S: HeckeScalar> Mul<&HeckeElement<S>> for &HeckeElement<S> {
    type Output = HeckeElement<S>;
    fn mul(self, rhs: &HeckeElement<S>) -> HeckeElement<S> {
        self.try_mul(rhs).expect("Hecke elements from different algebras")
    }
}

impl GenericElement {
    /// Image under `a ↦ (v² − 1)/b`.
    pub fn specialize(&self) -> SpecializedElement {
        let b = self.params.b;
        HeckeElement::from_terms(self.params, self.support.iter().map(|(x, c)| (x.clone(), c.specialize(b))))
    }
}

impl<S: HeckeScalar> fmt::Display for HeckeElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.support.iter().map(|(x, c)| format!("({c})*T[{x}]")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl<S: HeckeScalar> fmt::Debug for HeckeElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HeckeElement[n={}, b={}]({self})", self.params.n, self.params.b)
    }
}

#[derive(Serialize)]
struct TermJson<'a, S> {
    element_expr: String,
    scalar: &'a S,
}

impl<S: HeckeScalar + Serialize> Serialize for HeckeElement<S> {
    fn serialize<Se: Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        let mut seq = s.serialize_seq(Some(self.support.len()))?;
        for (x, c) in &self.support {
            seq.serialize_element(&TermJson { element_expr: x.to_string(), scalar: c })?;
        }
        seq.end()
    }
}

/// `e₁ = Σ_{d ∈ H_b} T_d`.
pub fn e1(params: GroupParams) -> GenericElement {
    HeckeElement::from_terms(params, params.diagonal_elements().into_iter().map(|d| (d, GenericScalar::one())))
}

/// Checks that `e₁` is central, that `e₁² = bⁿ e₁`, and that in the
/// `t`-normalization `(t_s e₁)² = bⁿ q (t_1 e₁) + b^{n+1} a (t_s e₁)` for
/// every generator.
pub fn e1_check(params: GroupParams) -> Report {
    let mut report = Report::new(serde_json::json!({ "n": params.n, "b": params.b }));
    let e = e1(params);
    let bn = GenericScalar::constant((params.b as i64).pow(params.n as u32));

    let sq = &e * &e;
    let expected = e.scale(&bn);
    report.push(if sq == expected {
        Check::pass("e1 squared is b^n e1")
    } else {
        Check::fail("e1 squared is b^n e1", format!("got {sq}"))
    });

    let mut central = Vec::new();
    let generators = (1..params.n)
        .map(|i| params.generator(i))
        .chain(params.diagonal_elements());
    for g in generators {
        let tg = GenericElement::t_basis(&g);
        if &tg * &e != &e * &tg {
            central.push(format!("fails to commute with T[{g}]"));
        }
    }
    report.push(Check::from_failures("e1 is central", &central));

    let q = GenericScalar::v_pow(2);
    let bn1 = GenericScalar::constant((params.b as i64).pow(params.n as u32 + 1));
    let mut quad = Vec::new();
    for i in 1..params.n {
        let ts_e = &GenericElement::t_unnormalized(&params.generator(i)) * &e;
        let lhs = &ts_e * &ts_e;
        let rhs = &e.scale(&(&bn * &q)) + &ts_e.scale(&(&bn1 * &GenericScalar::a()));
        if lhs != rhs {
            quad.push(format!("s{i}: lhs {lhs} != rhs {rhs}"));
        }
    }
    report.push(Check::from_failures("(t_s e1)^2 = b^n q e1 + b^(n+1) a t_s e1", &quad));
    report
}
