//! Brute-force ground truth in `GL_n(F_q)` for prime `q`.
//!
//! With `q − 1 = ab`, `gcd(a, b) = 1` and `ζ` the smallest primitive root,
//! `F_a = ⟨ζ^b⟩`, `F_b = ⟨ζ^a⟩`, `H_a`/`H_b` are the diagonal matrices over
//! those groups, `U` is upper unitriangular and `B_a = H_a U`. The oracle
//! enumerates the whole group, partitions it into `B_a`-double cosets and
//! counts the structure constants
//!
//! ```text
//! μ_{x,y,z} = |B_a|⁻¹ · |B_a x B_a ∩ z B_a y⁻¹ B_a|
//! ```
//!
//! which are then compared with `t_x t_y` in the generic algebra at
//! `a ↦ a`, `v² ↦ q`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{HeckeError, Result};
use crate::group::{GroupElement, GroupParams, Perm};
use crate::hecke::GenericElement;
use crate::report::{Check, Report};
use crate::scalar::HeckeScalar;

/// Largest `q^{n²}` the oracle will enumerate.
pub const ENUMERATION_BOUND: u128 = 30_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FieldParams {
    pub q: u32,
    pub a: u32,
    pub b: u32,
    pub zeta: u32,
}

fn is_prime(q: u32) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

impl FieldParams {
    /// `q` prime, `a | q − 1` and `b = (q − 1)/a` coprime to `a`.
    pub fn new(q: u32, a: u32) -> Result<Self> {
        if !is_prime(q) {
            return Err(HeckeError::InvalidField(format!("q={q} is not prime")));
        }
        if q > 251 {
            return Err(HeckeError::InvalidField(format!("q={q} is too large for byte-sized entries")));
        }
        if a == 0 || (q - 1) % a != 0 {
            return Err(HeckeError::InvalidField(format!("a={a} does not divide q-1={}", q - 1)));
        }
        let b = (q - 1) / a;
        if a.gcd(&b) != 1 {
            return Err(HeckeError::InvalidField(format!("gcd(a={a}, b={b}) != 1")));
        }
        let zeta = (1..q).find(|&z| (1..q - 1).all(|k| pow_mod(z, k, q) != 1)).unwrap_or(1);
        Ok(FieldParams { q, a, b, zeta })
    }

    /// Every admissible `(a, b)` for `q`, by increasing `a`.
    pub fn factorizations(q: u32) -> Result<Vec<FieldParams>> {
        if !is_prime(q) {
            return Err(HeckeError::InvalidField(format!("q={q} is not prime")));
        }
        Ok((1..q).filter_map(|a| FieldParams::new(q, a).ok()).collect())
    }

    /// `ζ^e` for any integer `e`.
    pub fn zeta_pow(&self, e: i64) -> u32 {
        pow_mod(self.zeta, e.rem_euclid(self.q as i64 - 1) as u32, self.q)
    }

    /// `−1` in `F_q`.
    pub fn minus_one(&self) -> u32 {
        self.q - 1
    }

    pub fn sign_pow(&self, e: u32) -> u32 {
        if e % 2 == 0 {
            1
        } else {
            self.minus_one()
        }
    }

    fn mul(&self, x: u32, y: u32) -> u32 {
        x * y % self.q
    }
}

fn pow_mod(base: u32, mut e: u32, q: u32) -> u32 {
    let (mut acc, mut x) = (1u32, base % q);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * x % q;
        }
        x = x * x % q;
        e >>= 1;
    }
    acc
}

/// An `n × n` matrix over `Z/q`, `n ≤ 3`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    n: u8,
    e: [u8; 9],
}

impl Matrix {
    pub fn zero(n: usize) -> Self {
        assert!((1..=3).contains(&n));
        Matrix { n: n as u8, e: [0; 9] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[&[u32]]) -> Self {
        let mut m = Self::zero(rows.len());
        for (r, row) in rows.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                m.set(r, c, x);
            }
        }
        m
    }

    pub fn diag(entries: &[u32]) -> Self {
        let mut m = Self::zero(entries.len());
        for (i, &x) in entries.iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    /// The permutation matrix with a 1 at `(w(j), j)`.
    pub fn permutation(w: &Perm) -> Self {
        let mut m = Self::zero(w.n());
        for j in 0..w.n() {
            m.set(w.apply(j), j, 1);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.e[r * self.n() + c] as u32
    }

    pub fn set(&mut self, r: usize, c: usize, x: u32) {
        let n = self.n();
        self.e[r * n + c] = x as u8;
    }

    pub fn mul(&self, other: &Matrix, q: u32) -> Matrix {
        let n = self.n();
        let mut out = Matrix::zero(n);
        for r in 0..n {
            for c in 0..n {
                let s: u32 = (0..n).map(|k| self.get(r, k) * other.get(k, c)).sum();
                out.set(r, c, s % q);
            }
        }
        out
    }

    pub fn det(&self, q: u32) -> u32 {
        let g = |r, c| self.get(r, c) as i64;
        let d = match self.n() {
            1 => g(0, 0),
            2 => g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0),
            _ => {
                g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1)) - g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0))
                    + g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0))
            }
        };
        d.rem_euclid(q as i64) as u32
    }

    /// Index in `0..q^{n²}`, base-`q` digits in row-major order.
    pub fn code(&self, q: u32) -> usize {
        let n2 = self.n() * self.n();
        self.e[..n2].iter().rev().fold(0usize, |acc, &x| acc * q as usize + x as usize)
    }

    pub fn from_code(mut code: usize, n: usize, q: u32) -> Self {
        let mut m = Self::zero(n);
        for k in 0..n * n {
            m.e[k] = (code % q as usize) as u8;
            code /= q as usize;
        }
        m
    }

    fn is_upper_unitriangular(&self) -> bool {
        let n = self.n();
        (0..n).all(|r| (0..=r).all(|c| self.get(r, c) == u32::from(r == c)))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        f.write_str("[")?;
        for r in 0..n {
            let row: Vec<String> = (0..n).map(|c| self.get(r, c).to_string()).collect();
            write!(f, "{}[{}]", if r > 0 { "," } else { "" }, row.join(","))?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Explicit element lists for the subgroups of `G = GL_n(F_q)` in play.
#[derive(Clone, Debug)]
pub struct Subgroups {
    pub n: usize,
    pub field: FieldParams,
    pub g: Vec<Matrix>,
    pub u: Vec<Matrix>,
    pub h_a: Vec<Matrix>,
    pub h_b: Vec<Matrix>,
    pub b_a: Vec<Matrix>,
    /// `W H_b` as the closure of the `s_i` and `h_1(ζ^a)`.
    pub wh_b: Vec<Matrix>,
}

/// Enumerates `G` and its subgroups. `n = 3` is refused unless `slow_ok`.
pub fn enumerate_subgroups(n: usize, field: FieldParams, slow_ok: bool) -> Result<Subgroups> {
    if !(1..=3).contains(&n) {
        return Err(HeckeError::InvalidParams { n, b: field.b, reason: "the oracle supports 1 <= n <= 3" });
    }
    let q = field.q;
    let size = (q as u128).pow((n * n) as u32);
    if size > ENUMERATION_BOUND {
        return Err(HeckeError::BoundExceeded { size, bound: ENUMERATION_BOUND });
    }
    if n >= 3 && !slow_ok {
        return Err(HeckeError::SlowPath { n, q });
    }

    let g: Vec<Matrix> =
        (0..size as usize).map(|c| Matrix::from_code(c, n, q)).filter(|m| m.det(q) != 0).collect();
    let u: Vec<Matrix> = g.iter().copied().filter(Matrix::is_upper_unitriangular).collect();

    let diag_over = |gen: u32, order: u32| -> Vec<Matrix> {
        let powers: Vec<u32> = (0..order).map(|k| pow_mod(gen, k, q)).collect();
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u32>| {
                    powers.iter().map(move |&p| {
                        let mut v = prefix.clone();
                        v.push(p);
                        v
                    })
                })
                .collect();
        }
        out.iter().map(|e| Matrix::diag(e)).collect()
    };
    let h_a = diag_over(field.zeta_pow(field.b as i64), field.a);
    let h_b = diag_over(field.zeta_pow(field.a as i64), field.b);
    let mut b_a: Vec<Matrix> = h_a.iter().flat_map(|h| u.iter().map(|x| h.mul(x, q))).collect();
    b_a.sort_unstable();
    b_a.dedup();

    let mut gens: Vec<Matrix> = (1..n).map(|i| Matrix::permutation(&Perm::simple(n, i))).collect();
    let mut h1 = Matrix::identity(n);
    h1.set(0, 0, field.zeta_pow(field.a as i64));
    gens.push(h1);
    let mut wh_b = vec![Matrix::identity(n)];
    let mut seen: std::collections::HashSet<Matrix> = wh_b.iter().copied().collect();
    let mut frontier = wh_b.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for s in &gens {
                let y = x.mul(s, q);
                if seen.insert(y) {
                    next.push(y);
                }
            }
        }
        wh_b.extend(next.iter().copied());
        frontier = next;
    }
    wh_b.sort_unstable();

    Ok(Subgroups { n, field, g, u, h_a, h_b, b_a, wh_b })
}

/// The image of a group element: entry `ζ^{a·e_j}` at `(w(j), j)`.
pub fn to_matrix(x: &GroupElement, field: &FieldParams) -> Matrix {
    let mut m = Matrix::zero(x.perm().n());
    for (j, &e) in x.exps().iter().enumerate() {
        m.set(x.perm().apply(j), j, field.zeta_pow(field.a as i64 * e as i64));
    }
    m
}

/// `B_a`-double cosets of `G`, indexed like `GroupParams::elements()`.
pub struct DoubleCosets {
    pub params: GroupParams,
    pub field: FieldParams,
    pub reps: Vec<GroupElement>,
    pub rep_matrices: Vec<Matrix>,
    pub b_a_order: usize,
    /// Matrix code to coset index.
    label: Vec<u32>,
    members: Vec<Vec<Matrix>>,
}

const UNLABELED: u32 = u32::MAX;

/// Partitions `G` into `B_a x B_a` for `x ∈ W H_b`, checking that the
/// double cosets are disjoint and cover `G`.
pub fn double_cosets(sub: &Subgroups) -> Result<DoubleCosets> {
    let field = sub.field;
    let q = field.q;
    let params = GroupParams::new(sub.n, field.b)?;
    let reps = params.elements();
    let rep_matrices: Vec<Matrix> = reps.iter().map(|x| to_matrix(x, &field)).collect();

    let members: Vec<Vec<Matrix>> = rep_matrices
        .par_iter()
        .map(|x| {
            let xb: Vec<Matrix> = sub.b_a.iter().map(|b2| x.mul(b2, q)).collect();
            let mut set: Vec<Matrix> = sub.b_a.iter().flat_map(|b1| xb.iter().map(|y| b1.mul(y, q))).collect();
            set.sort_unstable();
            set.dedup();
            set
        })
        .collect();

    let size = (q as usize).pow((sub.n * sub.n) as u32);
    let mut label = vec![UNLABELED; size];
    for (i, coset) in members.iter().enumerate() {
        for m in coset {
            let slot = &mut label[m.code(q)];
            if *slot != UNLABELED {
                return Err(HeckeError::Internal(format!(
                    "double cosets of {} and {} intersect in {m}",
                    reps[*slot as usize], reps[i]
                )));
            }
            *slot = i as u32;
        }
    }
    let covered: usize = members.iter().map(Vec::len).sum();
    if covered != sub.g.len() {
        return Err(HeckeError::Internal(format!("double cosets cover {covered} of {} elements", sub.g.len())));
    }
    Ok(DoubleCosets { params, field, reps, rep_matrices, b_a_order: sub.b_a.len(), label, members })
}

/// `μ_{x,y,·}` as a sparse map from `z`-index to value.
pub type MuRow = BTreeMap<usize, u64>;

impl DoubleCosets {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn index_of(&self, x: &GroupElement) -> usize {
        let m = to_matrix(x, &self.field);
        self.label[m.code(self.field.q)] as usize
    }

    pub fn coset(&self, i: usize) -> &[Matrix] {
        &self.members[i]
    }

    /// `|D_i ∩ z D_j⁻¹|` for every `i`, with `z` the representative `k`:
    /// each `g = z h` with `h ∈ D_{j⁻¹}` is counted in the coset of `g`.
    fn raw_counts(&self, j: usize, k: usize) -> Vec<u64> {
        let q = self.field.q;
        let jinv = self.index_of(&self.reps[j].inverse());
        let z = &self.rep_matrices[k];
        let mut counts = vec![0u64; self.len()];
        for h in &self.members[jinv] {
            counts[self.label[z.mul(h, q).code(q)] as usize] += 1;
        }
        counts
    }

    /// `μ_{x,y,z}`; errors if the count is not divisible by `|B_a|`.
    pub fn mu(&self, x: &GroupElement, y: &GroupElement, z: &GroupElement) -> Result<u64> {
        let count = self.raw_counts(self.index_of(y), self.index_of(z))[self.index_of(x)];
        self.divide(count, x, y, z)
    }

    fn divide(&self, count: u64, x: &GroupElement, y: &GroupElement, z: &GroupElement) -> Result<u64> {
        let ba = self.b_a_order as u64;
        if count % ba != 0 {
            return Err(HeckeError::Internal(format!("mu[{x},{y},{z}]: |B_a|={ba} does not divide {count}")));
        }
        Ok(count / ba)
    }

    /// The full table `(x, y) ↦ μ_{x,y,·}`.
    pub fn mu_table(&self) -> Result<BTreeMap<(usize, usize), MuRow>> {
        let m = self.len();
        let columns: Vec<(usize, usize, Vec<u64>)> = (0..m * m)
            .into_par_iter()
            .map(|jk| {
                let (j, k) = (jk / m, jk % m);
                (j, k, self.raw_counts(j, k))
            })
            .collect();
        let mut table: BTreeMap<(usize, usize), MuRow> = BTreeMap::new();
        for (j, k, counts) in columns {
            for (i, &c) in counts.iter().enumerate() {
                if c > 0 {
                    let mu = self.divide(c, &self.reps[i], &self.reps[j], &self.reps[k])?;
                    table.entry((i, j)).or_default().insert(k, mu);
                }
            }
        }
        Ok(table)
    }
}

/// The explicit factorization `s u s = u₁ s h_b h_a u₂` for
/// `u = [[1, ζ^c], [0, 1]]`, with `c ≡ am + bn (mod q − 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Decomposition {
    pub c: u32,
    pub m: u32,
    pub n: u32,
    pub u1: Matrix,
    pub h_b: Matrix,
    pub h_a: Matrix,
    pub u2: Matrix,
}

/// Exponents are taken mod `q − 1`: with `0 ≤ m < b` and `0 ≤ n < a` the
/// sums `am + bn` cover each residue exactly once, but not every integer
/// in `0..q−1`.
pub fn sl2_decompose(c: u32, field: &FieldParams) -> Sl2Decomposition {
    let FieldParams { q, a, b, .. } = *field;
    let order = q - 1;
    let (m, n) = (0..b)
        .flat_map(|m| (0..a).map(move |n| (m, n)))
        .find(|&(m, n)| (a * m + b * n) % order == c % order)
        .expect("coprime a, b give every residue");
    let zc = field.zeta_pow(-(c as i64));
    let u1 = Matrix::from_rows(&[&[1, zc], &[0, 1]]);
    let am = (a * m) as i64;
    let bn = (b * n) as i64;
    let h_b = Matrix::diag(&[field.zeta_pow(am), field.mul(field.sign_pow(b - 1), field.zeta_pow(-am))]);
    let h_a = Matrix::diag(&[field.zeta_pow(bn), field.mul(field.sign_pow(b), field.zeta_pow(-bn))]);
    Sl2Decomposition { c, m, n, u1, h_b, h_a, u2: u1 }
}

/// Checks the rank-two decomposition for every `0 ≤ c < q − 1` and that the
/// classes `{u : h_b^u fixed}` in `U_s⁻` all have `a` elements.
pub fn verify_sl2(field: &FieldParams) -> Vec<Check> {
    let q = field.q;
    let s = Matrix::from_rows(&[&[0, 1], &[1, 0]]);
    let in_order = |x: u32, k: u32| pow_mod(x, k, q) == 1;
    let mut failures = Vec::new();
    let mut classes: BTreeMap<Matrix, usize> = BTreeMap::new();
    for c in 0..q - 1 {
        let d = sl2_decompose(c, field);
        let u = Matrix::from_rows(&[&[1, field.zeta_pow(c as i64)], &[0, 1]]);
        let lhs = s.mul(&u, q).mul(&s, q);
        let rhs = d.u1.mul(&s, q).mul(&d.h_b, q).mul(&d.h_a, q).mul(&d.u2, q);
        if lhs != rhs {
            failures.push(format!("c={c}: sus={lhs} but u1 s h_b h_a u2={rhs}"));
        }
        if !(0..2).all(|i| in_order(d.h_b.get(i, i), field.b) && in_order(d.h_a.get(i, i), field.a)) {
            failures.push(format!("c={c}: h_b={} or h_a={} outside H_b, H_a", d.h_b, d.h_a));
        }
        *classes.entry(d.h_b).or_default() += 1;
    }
    let bad: Vec<String> = classes
        .iter()
        .filter(|(_, &k)| k != field.a as usize)
        .map(|(h, k)| format!("class of h_b={h} has {k} elements"))
        .collect();
    let mut class_failures = bad;
    if classes.len() != field.b as usize {
        class_failures.push(format!("{} classes, expected b={}", classes.len(), field.b));
    }
    vec![
        Check::from_failures("sus = u1 s h_b h_a u2 for every c", &failures),
        Check::from_failures("each class in U_s^- has a elements", &class_failures),
    ]
}

/// Runs the full oracle: subgroup orders, the `W H_b` isomorphism, strong
/// Bruhat uniqueness, the double-coset partition, μ integrality and total
/// mass, the rank-two lemma, and agreement of the whole μ-table with the
/// generic algebra at `v² = q`.
pub fn verify_mult_theorem(n: usize, field: FieldParams, slow_ok: bool) -> Result<Report> {
    let q = field.q;
    let sub = enumerate_subgroups(n, field, slow_ok)?;
    let mut report = Report::new(serde_json::json!({ "n": n, "q": q, "a": field.a, "b": field.b, "zeta": field.zeta }));
    let params = GroupParams::new(n, field.b)?;

    let g_expected: u128 = (0..n as u32).map(|i| (q as u128).pow(n as u32) - (q as u128).pow(i)).product();
    let u_expected = (q as u128).pow((n * (n - 1) / 2) as u32);
    let a_n = (field.a as u128).pow(n as u32);
    let mut sizes = Vec::new();
    for (name, got, want) in [
        ("G", sub.g.len() as u128, g_expected),
        ("U", sub.u.len() as u128, u_expected),
        ("H_a", sub.h_a.len() as u128, a_n),
        ("H_b", sub.h_b.len() as u128, (field.b as u128).pow(n as u32)),
        ("B_a", sub.b_a.len() as u128, a_n * u_expected),
        ("W H_b", sub.wh_b.len() as u128, params.order()),
    ] {
        if got != want {
            sizes.push(format!("|{name}| = {got}, expected {want}"));
        }
    }
    report.push(Check::from_failures("subgroup orders", &sizes));

    report.push(isomorphism_check(&sub, &params));
    report.push(bruhat_uniqueness(&sub));

    let cosets = match double_cosets(&sub) {
        Ok(c) => c,
        Err(e) => {
            report.push(Check::fail("double cosets partition G", e.to_string()));
            return Ok(report);
        }
    };
    report.push(if cosets.len() as u128 == params.order() {
        Check::pass("double cosets partition G, one per element of W H_b")
    } else {
        Check::fail("double cosets partition G, one per element of W H_b", format!("{} cosets", cosets.len()))
    });

    let table = match cosets.mu_table() {
        Ok(t) => {
            report.push(Check::pass("mu values are integers"));
            t
        }
        Err(e) => {
            report.push(Check::fail("mu values are integers", e.to_string()));
            return Ok(report);
        }
    };

    let m = cosets.len();
    let ba = cosets.b_a_order as u128;
    let mut mass = Vec::new();
    for x in 0..m {
        for y in 0..m {
            let lhs: u128 = table
                .get(&(x, y))
                .map_or(0, |row| row.iter().map(|(&z, &mu)| mu as u128 * cosets.coset(z).len() as u128).sum());
            let rhs = cosets.coset(x).len() as u128 * cosets.coset(y).len() as u128;
            if lhs * ba != rhs {
                mass.push(format!("x={} y={}: {lhs} * |B_a| != {rhs}", cosets.reps[x], cosets.reps[y]));
            }
        }
    }
    report.push(Check::from_failures("sum_z mu[x,y,z] |D_z| = |D_x| |D_y| / |B_a|", &mass));

    let a_val = field.a as i64;
    let q_val = q as i64;
    let mismatches: Vec<String> = (0..m * m)
        .into_par_iter()
        .filter_map(|xy| {
            let (x, y) = (xy / m, xy % m);
            let rx = &cosets.reps[x];
            let ry = &cosets.reps[y];
            let prod = &GenericElement::t_unnormalized(rx) * &GenericElement::t_unnormalized(ry);
            let mut generic: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (z, c) in prod.iter() {
                let in_t = c.shift_v(-(z.length() as i32));
                match in_t.eval_at(a_val, q_val) {
                    Some(v) if v == BigInt::from(0) => {}
                    Some(v) => {
                        generic.insert(cosets.index_of(z), v);
                    }
                    None => return Some(format!("t[{rx}] t[{ry}]: coefficient {in_t} of t[{z}] is not in Z[a, q]")),
                }
            }
            let oracle: BTreeMap<usize, BigInt> = table
                .get(&(x, y))
                .map(|row| row.iter().map(|(&z, &mu)| (z, BigInt::from(mu))).collect())
                .unwrap_or_default();
            (generic != oracle).then(|| {
                let show = |t: &BTreeMap<usize, BigInt>| {
                    t.iter().map(|(z, v)| format!("{v}*t[{}]", cosets.reps[*z])).collect::<Vec<_>>().join(" + ")
                };
                format!("t[{rx}] t[{ry}]: generic {} vs mu {}", show(&generic), show(&oracle))
            })
        })
        .collect();
    report.push(Check::from_failures("mu table equals the generic algebra at v^2 = q", &mismatches));

    report.checks.extend(verify_sl2(&field));
    Ok(report)
}

/// The map `w·d ↦` monomial matrix is a bijection onto the generated
/// `W H_b`, respects products with generators, and sends `X_{s_i}` to
/// `{ h_{i,i+1}(α) : α ∈ F_b }`.
fn isomorphism_check(sub: &Subgroups, params: &GroupParams) -> Check {
    let field = sub.field;
    let q = field.q;
    let n = sub.n;
    let elements = params.elements();
    let images: HashMap<Matrix, &GroupElement> = elements.iter().map(|x| (to_matrix(x, &field), x)).collect();
    let mut failures = Vec::new();
    let mut sorted: Vec<Matrix> = images.keys().copied().collect();
    sorted.sort_unstable();
    if sorted != sub.wh_b {
        failures.push(format!("image has {} elements, generated W H_b has {}", sorted.len(), sub.wh_b.len()));
    }
    let gens: Vec<GroupElement> = (1..n).map(|i| params.generator(i)).chain([params.diag(&{
        let mut e = vec![0i64; n];
        e[0] = 1;
        e
    })]).collect();
    for x in &elements {
        let mx = to_matrix(x, &field);
        for g in &gens {
            if to_matrix(&(x * g), &field) != mx.mul(&to_matrix(g, &field), q) {
                failures.push(format!("image of {x} * {g} is not the matrix product"));
            }
        }
    }
    let fb: Vec<u32> = (0..field.b).map(|k| field.zeta_pow(field.a as i64 * k as i64)).collect();
    let sign = field.sign_pow(field.b - 1);
    for i in 1..n {
        let mut oracle: Vec<Matrix> = fb
            .iter()
            .map(|&alpha| {
                let mut h = Matrix::identity(n);
                h.set(i - 1, i - 1, alpha);
                h.set(i, i, field.mul(sign, pow_mod(alpha, q - 2, q)));
                h
            })
            .collect();
        oracle.sort_unstable();
        let mut ours: Vec<Matrix> = params.x_simple(i).iter().map(|d| to_matrix(d, &field)).collect();
        ours.sort_unstable();
        if oracle != ours {
            failures.push(format!("X_s{i} maps to {ours:?}, expected {oracle:?}"));
        }
    }
    Check::from_failures("W H_b matches the monomial-matrix group", &failures)
}

/// `U⁻_w = { u ∈ U : w u w⁻¹ lower triangular }`.
pub fn u_minus(sub: &Subgroups, w: &Perm) -> Vec<Matrix> {
    let n = sub.n;
    sub.u
        .iter()
        .copied()
        .filter(|u| {
            (0..n).all(|i| (i + 1..n).all(|j| u.get(i, j) == 0 || w.apply(i) > w.apply(j)))
        })
        .collect()
}

/// Every element of `G` is `u₁ w h_b h_a u₂` for exactly one tuple with
/// `u₁ ∈ U⁻_{w⁻¹}`.
pub fn bruhat_uniqueness(sub: &Subgroups) -> Check {
    let q = sub.field.q;
    let n = sub.n;
    let size = (q as usize).pow((n * n) as u32);
    let mut hits = vec![0u8; size];
    let mut produced = 0usize;
    let mut failures = Vec::new();
    let h: Vec<Matrix> = sub.h_b.iter().flat_map(|hb| sub.h_a.iter().map(|ha| hb.mul(ha, q))).collect();
    for w in Perm::all(n) {
        let pw = Matrix::permutation(&w);
        for u1 in u_minus(sub, &w.inverse()) {
            let left = u1.mul(&pw, q);
            for hh in &h {
                let lh = left.mul(hh, q);
                for u2 in &sub.u {
                    let g = lh.mul(u2, q);
                    let slot = &mut hits[g.code(q)];
                    if *slot > 0 && failures.len() < 5 {
                        failures.push(format!("{g} has two expressions"));
                    }
                    *slot = slot.saturating_add(1);
                    produced += 1;
                }
            }
        }
    }
    if produced != sub.g.len() {
        failures.push(format!("{produced} products for |G| = {}", sub.g.len()));
    }
    Check::from_failures("strong Bruhat decomposition has unique expressions", &failures)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_params() {
        let f = FieldParams::new(7, 2).unwrap();
        assert_eq!((f.a, f.b, f.zeta), (2, 3, 3));
        assert!(FieldParams::new(9, 2).is_err());
        assert!(FieldParams::new(5, 2).is_err());
        let all: Vec<(u32, u32)> = FieldParams::factorizations(13).unwrap().iter().map(|f| (f.a, f.b)).collect();
        assert_eq!(all, vec![(1, 12), (3, 4), (4, 3), (12, 1)]);
    }

    #[test]
    fn subgroup_orders() {
        for a in [1, 2] {
            let sub = enumerate_subgroups(2, FieldParams::new(3, a).unwrap(), false).unwrap();
            assert_eq!(sub.g.len(), 48);
            assert_eq!(sub.u.len(), 3);
            assert_eq!(sub.b_a.len(), 3 * (a as usize).pow(2));
        }
        let sub = enumerate_subgroups(2, FieldParams::new(7, 2).unwrap(), false).unwrap();
        assert_eq!((sub.h_a.len(), sub.h_b.len(), sub.wh_b.len()), (4, 9, 18));
        assert!(matches!(
            enumerate_subgroups(3, FieldParams::new(3, 1).unwrap(), false),
            Err(HeckeError::SlowPath { n: 3, q: 3 })
        ));
    }

    #[test]
    fn coset_counts() {
        for (q, a, count) in [(3, 1, 8), (5, 1, 32), (3, 2, 2)] {
            let sub = enumerate_subgroups(2, FieldParams::new(q, a).unwrap(), false).unwrap();
            assert_eq!(double_cosets(&sub).unwrap().len(), count);
        }
    }

    #[test]
    fn mu_small_values() {
        let field = FieldParams::new(3, 1).unwrap();
        let sub = enumerate_subgroups(2, field, false).unwrap();
        let dc = double_cosets(&sub).unwrap();
        let g = dc.params;
        let s = g.generator(1);
        assert_eq!(dc.mu(&s, &s, &g.identity()).unwrap(), 3);
        for d in &g.x_simple(1) {
            assert_eq!(dc.mu(&s, &s, &(d * &s)).unwrap(), 1);
        }
        let d1 = g.diag(&[1, 0]);
        let d2 = g.diag(&[1, 1]);
        assert_eq!(dc.mu(&d1, &d2, &(&d1 * &d2)).unwrap(), 1);
        assert_eq!(dc.mu(&d1, &d2, &d1).unwrap(), 0);
    }

    #[test]
    fn sl2_example() {
        let field = FieldParams::new(3, 1).unwrap();
        let d = sl2_decompose(1, &field);
        assert_eq!((d.m, d.n), (1, 0));
        // ζ = 2 and −ζ⁻¹ = −2 = 1 in F_3.
        assert_eq!(d.h_b, Matrix::diag(&[2, 1]));
        for f in FieldParams::factorizations(13).unwrap() {
            assert!(verify_sl2(&f).iter().all(|c| c.pass));
        }
    }

    #[test]
    fn theorem_q3() {
        for a in [1, 2] {
            let report = verify_mult_theorem(2, FieldParams::new(3, a).unwrap(), false).unwrap();
            assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
        }
    }
}
