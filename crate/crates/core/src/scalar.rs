//! Exact scalar rings.
//!
//! [`GenericScalar`] is `Z[a, v, v⁻¹]`; [`SpecializedScalar`] is
//! `Z_b[v, v⁻¹]`, the quotient by `b·a − (v² − 1)`, with coefficients whose
//! denominators are powers of `b`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};
use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::group::GroupParams;

/// Coefficient ring of a Hecke algebra over `G(b,1,n)`.
///
/// `quadratic` is the scalar that multiplies `Σ_{d ∈ X_s} T_{xd}` in the
/// quadratic relation: `a·v⁻¹` generically, `v/b − v⁻¹/b` after
/// specialization.
pub trait HeckeScalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero(params: &GroupParams) -> Self;
    fn one(params: &GroupParams) -> Self;
    fn quadratic(params: &GroupParams) -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn bar(&self) -> Self;
    /// Multiplication by `v^k`.
    fn shift_v(&self, k: i32) -> Self;
}

/// An element of `Z[a, v, v⁻¹]`, stored as `(a-degree, v-degree) → coefficient`
/// with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GenericScalar {
    terms: BTreeMap<(u32, i32), BigInt>,
}

impl GenericScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(0, 0, BigInt::from(c))
    }

    pub fn monomial(a_deg: u32, v_deg: i32, coeff: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert((a_deg, v_deg), coeff);
        }
        GenericScalar { terms }
    }

    pub fn a() -> Self {
        Self::monomial(1, 0, BigInt::one())
    }

    pub fn v_pow(k: i32) -> Self {
        Self::monomial(0, k, BigInt::one())
    }

    /// `a·v⁻¹`.
    pub fn av_inv() -> Self {
        Self::monomial(1, -1, BigInt::one())
    }

    /// `(a·v⁻¹)^k`.
    pub fn av_inv_pow(k: u32) -> Self {
        Self::monomial(k, -(k as i32), BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, i32, &BigInt)> {
        self.terms.iter().map(|(&(a, v), c)| (a, v, c))
    }

    pub fn coeff(&self, a_deg: u32, v_deg: i32) -> BigInt {
        self.terms.get(&(a_deg, v_deg)).cloned().unwrap_or_default()
    }

    pub fn max_v_deg(&self) -> Option<i32> {
        self.terms.keys().map(|&(_, v)| v).max()
    }

    pub fn min_v_deg(&self) -> Option<i32> {
        self.terms.keys().map(|&(_, v)| v).min()
    }

    pub fn max_a_deg(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, _)| a).max()
    }

    fn add_term(&mut self, a_deg: u32, v_deg: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((a_deg, v_deg)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// The ring involution `v ↦ v⁻¹`, `a ↦ −a·v⁻²`.
    pub fn bar(&self) -> Self {
        let mut out = Self::zero();
        for (&(a, v), c) in &self.terms {
            let c = if a % 2 == 1 { -c.clone() } else { c.clone() };
            out.add_term(a, -v - 2 * a as i32, c);
        }
        out
    }

    /// Coefficients `[c_0, c_1, …]` when `self = Σ c_k (a·v⁻¹)^k`.
    pub fn as_av_polynomial(&self) -> Option<Vec<BigInt>> {
        let deg = self.max_a_deg().unwrap_or(0) as usize;
        let mut out = vec![BigInt::zero(); deg + 1];
        for (&(a, v), c) in &self.terms {
            if v != -(a as i32) {
                return None;
            }
            out[a as usize] = c.clone();
        }
        if self.is_zero() {
            out.clear();
        }
        Some(out)
    }

    /// Evaluates at `a ↦ a_val`, `v² ↦ q` when every v-degree is even and
    /// non-negative.
    pub fn eval_at(&self, a_val: i64, q: i64) -> Option<BigInt> {
        let mut total = BigInt::zero();
        for (&(a, v), c) in &self.terms {
            if v < 0 || v % 2 != 0 {
                return None;
            }
            total += c * BigInt::from(a_val).pow(a) * BigInt::from(q).pow((v / 2) as u32);
        }
        Some(total)
    }

    /// The image in `Z_b[v, v⁻¹]` under `a ↦ (v² − 1)/b`.
    pub fn specialize(&self, b: u32) -> SpecializedScalar {
        let alpha = SpecializedScalar::from_terms(b, [(2, BigInt::one(), 1), (0, BigInt::from(-1), 1)]);
        let mut powers = vec![SpecializedScalar::one_b(b)];
        let mut out = SpecializedScalar::zero_b(b);
        for (&(a, v), c) in &self.terms {
            while powers.len() <= a as usize {
                let next = powers.last().unwrap() * &alpha;
                powers.push(next);
            }
            let term = powers[a as usize].shift_v(v).scale_int(c);
            out += &term;
        }
        out
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        let mut out = Self::zero();
        for (&(a, v), x) in &self.terms {
            out.add_term(a, v, x * c);
        }
        out
    }
}

impl Add<&GenericScalar> for &GenericScalar {
    type Output = GenericScalar;
    fn add(self, rhs: &GenericScalar) -> GenericScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&GenericScalar> for GenericScalar {
    fn add_assign(&mut self, rhs: &GenericScalar) {
        for (&(a, v), c) in &rhs.terms {
            self.add_term(a, v, c.clone());
        }
    }
}

impl Sub<&GenericScalar> for &GenericScalar {
    type Output = GenericScalar;
    fn sub(self, rhs: &GenericScalar) -> GenericScalar {
        self + &(-rhs)
    }
}

impl Neg for &GenericScalar {
    type Output = GenericScalar;
    fn neg(self) -> GenericScalar {
        GenericScalar { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl Mul<&GenericScalar> for &GenericScalar {
    type Output = GenericScalar;
    fn mul(self, rhs: &GenericScalar) -> GenericScalar {
        let mut out = GenericScalar::zero();
        for (&(a1, v1), c1) in &self.terms {
            for (&(a2, v2), c2) in &rhs.terms {
                out.add_term(a1 + a2, v1 + v2, c1 * c2);
            }
        }
        out
    }
}

impl HeckeScalar for GenericScalar {
    fn zero(_: &GroupParams) -> Self {
        GenericScalar::zero()
    }
    fn one(_: &GroupParams) -> Self {
        GenericScalar::one()
    }
    fn quadratic(_: &GroupParams) -> Self {
        GenericScalar::av_inv()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn bar(&self) -> Self {
        GenericScalar::bar(self)
    }
    fn shift_v(&self, k: i32) -> Self {
        GenericScalar { terms: self.terms.iter().map(|(&(a, v), c)| ((a, v + k), c.clone())).collect() }
    }
}

fn fmt_factor(f: &mut fmt::Formatter<'_>, name: &str, deg: i64) -> fmt::Result {
    match deg {
        0 => Ok(()),
        1 => write!(f, "*{name}"),
        d => write!(f, "*{name}^{d}"),
    }
}

impl fmt::Display for GenericScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (&(a, v), c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
                write!(f, "{}", c.abs())?;
            } else {
                write!(f, "{c}")?;
            }
            fmt_factor(f, "a", a as i64)?;
            fmt_factor(f, "v", v as i64)?;
        }
        Ok(())
    }
}

impl fmt::Debug for GenericScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GenericScalar({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct GenericTermJson {
    a_deg: u32,
    v_deg: i32,
    coeff: String,
}

impl Serialize for GenericScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (&(a_deg, v_deg), c) in &self.terms {
            seq.serialize_element(&GenericTermJson { a_deg, v_deg, coeff: c.to_string() })?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for GenericScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<GenericTermJson>::deserialize(d)?;
        let mut out = GenericScalar::zero();
        for t in raw {
            let c: BigInt = t.coeff.parse().map_err(D::Error::custom)?;
            out.add_term(t.a_deg, t.v_deg, c);
        }
        Ok(out)
    }
}

/// A rational `num / b^b_pow` in lowest b-power form: when `b_pow > 0`,
/// `num` is not divisible by `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BFraction {
    pub num: BigInt,
    pub b_pow: u32,
}

impl BFraction {
    fn normalized(mut num: BigInt, mut b_pow: u32, b: u32) -> Self {
        if b == 1 || num.is_zero() {
            return BFraction { num, b_pow: 0 };
        }
        let bb = BigInt::from(b);
        while b_pow > 0 {
            let (q, r) = num.div_rem(&bb);
            if !r.is_zero() {
                break;
            }
            num = q;
            b_pow -= 1;
        }
        BFraction { num, b_pow }
    }

    fn lift(&self, to_pow: u32, b: u32) -> BigInt {
        &self.num * BigInt::from(b).pow(to_pow - self.b_pow)
    }
}

/// An element of `Z_b[v, v⁻¹]`: `v-degree → num / b^k`, no zero terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SpecializedScalar {
    b: u32,
    terms: BTreeMap<i32, BFraction>,
}

impl SpecializedScalar {
    pub fn zero_b(b: u32) -> Self {
        SpecializedScalar { b, terms: BTreeMap::new() }
    }

    pub fn one_b(b: u32) -> Self {
        Self::from_terms(b, [(0, BigInt::one(), 0)])
    }

    /// Builds `Σ (num / b^b_pow)·v^deg`, combining repeated degrees.
    pub fn from_terms(b: u32, terms: impl IntoIterator<Item = (i32, BigInt, u32)>) -> Self {
        let mut out = Self::zero_b(b);
        for (deg, num, b_pow) in terms {
            out.add_term(deg, BFraction::normalized(num, b_pow, b));
        }
        out
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BFraction)> {
        self.terms.iter().map(|(&d, c)| (d, c))
    }

    pub fn coeff(&self, deg: i32) -> Option<&BFraction> {
        self.terms.get(&deg)
    }

    pub fn max_v_deg(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_v_deg(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    fn add_term(&mut self, deg: i32, c: BFraction) {
        if c.num.is_zero() {
            return;
        }
        let b = self.b;
        let merged = match self.terms.remove(&deg) {
            None => c,
            Some(old) => {
                let p = old.b_pow.max(c.b_pow);
                BFraction::normalized(old.lift(p, b) + c.lift(p, b), p, b)
            }
        };
        if !merged.num.is_zero() {
            self.terms.insert(deg, merged);
        }
    }

    /// `v ↦ v⁻¹` coefficientwise.
    pub fn bar(&self) -> Self {
        SpecializedScalar { b: self.b, terms: self.terms.iter().map(|(&d, c)| (-d, c.clone())).collect() }
    }

    pub fn shift_v(&self, k: i32) -> Self {
        SpecializedScalar { b: self.b, terms: self.terms.iter().map(|(&d, c)| (d + k, c.clone())).collect() }
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        let mut out = Self::zero_b(self.b);
        for (&d, x) in &self.terms {
            out.add_term(d, BFraction::normalized(&x.num * c, x.b_pow, self.b));
        }
        out
    }

    /// The part with strictly negative v-degrees.
    pub fn negative_part(&self) -> Self {
        SpecializedScalar {
            b: self.b,
            terms: self.terms.range(..0).map(|(&d, c)| (d, c.clone())).collect(),
        }
    }

    pub fn has_only_negative_degrees(&self) -> bool {
        self.max_v_deg().map_or(true, |d| d < 0)
    }

    pub fn has_only_even_degrees(&self) -> bool {
        self.terms.keys().all(|d| d % 2 == 0)
    }

    /// Whether every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.b_pow == 0)
    }
}

impl AddAssign<&SpecializedScalar> for SpecializedScalar {
    fn add_assign(&mut self, rhs: &SpecializedScalar) {
        assert_eq!(self.b, rhs.b, "specialized scalars over different b");
        for (&d, c) in &rhs.terms {
            self.add_term(d, c.clone());
        }
    }
}

impl Add<&SpecializedScalar> for &SpecializedScalar {
    type Output = SpecializedScalar;
    fn add(self, rhs: &SpecializedScalar) -> SpecializedScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Neg for &SpecializedScalar {
    type Output = SpecializedScalar;
    fn neg(self) -> SpecializedScalar {
        SpecializedScalar {
            b: self.b,
            terms: self
                .terms
                .iter()
                .map(|(&d, c)| (d, BFraction { num: -&c.num, b_pow: c.b_pow }))
                .collect(),
        }
    }
}

impl Sub<&SpecializedScalar> for &SpecializedScalar {
    type Output = SpecializedScalar;
    fn sub(self, rhs: &SpecializedScalar) -> SpecializedScalar {
        self + &(-rhs)
    }
}

impl Mul<&SpecializedScalar> for &SpecializedScalar {
    type Output = SpecializedScalar;
    fn mul(self, rhs: &SpecializedScalar) -> SpecializedScalar {
        assert_eq!(self.b, rhs.b, "specialized scalars over different b");
        let mut out = SpecializedScalar::zero_b(self.b);
        for (&d1, c1) in &self.terms {
            for (&d2, c2) in &rhs.terms {
                out.add_term(
                    d1 + d2,
                    BFraction::normalized(&c1.num * &c2.num, c1.b_pow + c2.b_pow, self.b),
                );
            }
        }
        out
    }
}

impl HeckeScalar for SpecializedScalar {
    fn zero(params: &GroupParams) -> Self {
        Self::zero_b(params.b)
    }
    fn one(params: &GroupParams) -> Self {
        Self::one_b(params.b)
    }
    fn quadratic(params: &GroupParams) -> Self {
        Self::from_terms(params.b, [(1, BigInt::one(), 1), (-1, BigInt::from(-1), 1)])
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn bar(&self) -> Self {
        SpecializedScalar::bar(self)
    }
    fn shift_v(&self, k: i32) -> Self {
        SpecializedScalar::shift_v(self, k)
    }
}

impl fmt::Display for SpecializedScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (&d, c)) in self.terms.iter().rev().enumerate() {
            if idx > 0 {
                f.write_str(if c.num.is_negative() { " - " } else { " + " })?;
                write!(f, "{}", c.num.abs())?;
            } else {
                write!(f, "{}", c.num)?;
            }
            if c.b_pow > 0 {
                write!(f, "/{}", BigInt::from(self.b).pow(c.b_pow))?;
            }
            fmt_factor(f, "v", d as i64)?;
        }
        Ok(())
    }
}

impl fmt::Debug for SpecializedScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SpecializedScalar[b={}]({self})", self.b)
    }
}

#[derive(Serialize)]
struct SpecializedTermJson {
    v_deg: i32,
    num: String,
    b_pow: u32,
}

impl Serialize for SpecializedScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (&v_deg, c) in &self.terms {
            seq.serialize_element(&SpecializedTermJson { v_deg, num: c.num.to_string(), b_pow: c.b_pow })?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(k: i32) -> GenericScalar {
        GenericScalar::v_pow(k)
    }

    fn sp(b: u32, terms: &[(i32, i64, u32)]) -> SpecializedScalar {
        SpecializedScalar::from_terms(b, terms.iter().map(|&(d, n, p)| (d, BigInt::from(n), p)))
    }

    #[test]
    fn ring_examples() {
        let f = &v(1) + &GenericScalar::a();
        assert_eq!(&f + &GenericScalar::zero(), f);
        let lhs = &(&v(1) - &v(-1)) * &(&v(1) + &v(-1));
        assert_eq!(lhs, &v(2) - &v(-2));
        let av = GenericScalar::av_inv();
        assert_eq!(&av * &av, GenericScalar::monomial(2, -2, BigInt::one()));
        assert!((&f - &f).is_zero());
    }

    #[test]
    fn generic_bar_examples() {
        assert_eq!(v(1).bar(), v(-1));
        assert_eq!(GenericScalar::av_inv().bar(), -&GenericScalar::av_inv());
        assert_eq!(GenericScalar::constant(7).bar(), GenericScalar::constant(7));
        let f = &(&GenericScalar::a() * &v(3)) + &GenericScalar::constant(-2);
        assert_eq!(f.bar().bar(), f);
    }

    #[test]
    fn specialized_bar_examples() {
        for b in 1..6 {
            let f = sp(b, &[(2, 1, 1), (0, -1, 1)]);
            assert_eq!(f.bar(), sp(b, &[(-2, 1, 1), (0, -1, 1)]));
            let g = sp(b, &[(1, 1, 1), (-1, -1, 1)]);
            assert_eq!(g.bar(), -&g);
        }
    }

    #[test]
    fn specialize_examples() {
        for b in 1..6 {
            assert_eq!(GenericScalar::av_inv().specialize(b), sp(b, &[(1, 1, 1), (-1, -1, 1)]));
            assert_eq!(v(5).specialize(b), sp(b, &[(5, 1, 0)]));
            let sq = GenericScalar::av_inv_pow(2).specialize(b).shift_v(2);
            assert_eq!(sq, sp(b, &[(4, 1, 2), (2, -2, 2), (0, 1, 2)]));
        }
    }

    #[test]
    fn b_fractions_are_canonical() {
        // 4/2 = 2, 2/4 stays as 2/4 for b = 4, 6/4 = 6/4.
        assert_eq!(sp(2, &[(0, 4, 1)]), sp(2, &[(0, 2, 0)]));
        let x = sp(4, &[(0, 2, 1)]);
        assert_eq!(x.coeff(0), Some(&BFraction { num: BigInt::from(2), b_pow: 1 }));
        assert_eq!(&sp(3, &[(1, 1, 2)]) + &sp(3, &[(1, 2, 2)]), sp(3, &[(1, 1, 1)]));
        assert_eq!(sp(1, &[(0, 5, 3)]).coeff(0).unwrap().b_pow, 0);
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn degree_queries() {
        let f = &(&GenericScalar::av_inv_pow(3) * &GenericScalar::constant(2)) + &v(4);
        assert_eq!(f.max_v_deg(), Some(4));
        assert_eq!(f.min_v_deg(), Some(-3));
        assert_eq!(f.max_a_deg(), Some(3));
        assert_eq!(GenericScalar::zero().max_v_deg(), None);
    }

    #[test]
    fn av_polynomial_view() {
        let f = &GenericScalar::av_inv() + &GenericScalar::av_inv_pow(3).scale_int(&BigInt::from(3));
        let c = f.as_av_polynomial().unwrap();
        assert_eq!(c, vec![0, 1, 0, 3].into_iter().map(BigInt::from).collect::<Vec<_>>());
        assert!(v(1).as_av_polynomial().is_none());
    }

    #[test]
    fn json_shapes() {
        let f = GenericScalar::av_inv().scale_int(&BigInt::from(3));
        assert_eq!(
            serde_json::to_string(&f).unwrap(),
            r#"[{"a_deg":1,"v_deg":-1,"coeff":"3"}]"#
        );
        let back: GenericScalar = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(back, f);
        let g = sp(2, &[(1, 1, 1)]);
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"[{"v_deg":1,"num":"1","b_pow":1}]"#);
    }

    #[test]
    fn display() {
        let f = &GenericScalar::av_inv() + &GenericScalar::constant(-2);
        assert_eq!(f.to_string(), "-2 + 1*a*v^-1");
        assert_eq!(sp(2, &[(2, 1, 1), (0, -1, 1)]).to_string(), "1/2*v^2 - 1/2");
    }
}
