//! The invariant suite behind `selftest`.
//!
//! Every check is exhaustive when the group is small enough and otherwise
//! runs on a deterministic pseudo-random sample.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::group::{reflection_chain, reflection_chain_reversed, DiagSet, GroupElement, GroupParams, Perm};
use crate::hecke::{e1_check, GenericElement};
use crate::kl::KLTable;
use crate::order::{hasse, omega, Order, DEFAULT_HASSE_BOUND};
use crate::report::{Check, Report};
use crate::rpoly::{r_star_direct, RStarTable};
use crate::scalar::GenericScalar;
use crate::subexp::{closed_column, enumerate_with};

#[derive(Clone, Copy, Debug)]
pub struct SelftestOptions {
    /// Upper bound on pairs visited by any pairwise check.
    pub max_pairs: usize,
    /// Largest group on which the Kazhdan-Lusztig table is verified.
    pub kl_bound: u128,
    pub seed: u64,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        SelftestOptions { max_pairs: 40_000, kl_bound: 200, seed: 0x5eed }
    }
}

/// Runs every check at the given size.
pub fn selftest(params: GroupParams, opts: SelftestOptions) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut skipped: Vec<&str> = Vec::new();
    let mut checks = vec![
        group_axioms(&params, &mut rng, opts.max_pairs),
        x_sets(&params),
        xt_products(&params, &mut rng, 200),
        product_bijection(&params),
    ];
    if params.b % 2 == 1 {
        checks.push(contain(&params));
    }
    checks.push(omega_recursion(&params));
    checks.push(omega_chains(&params));
    checks.push(hecke_products(&params, &mut rng, 60));
    checks.push(trace_form(&params, &mut rng, opts.max_pairs / 4));

    let ys = sample_elements(&params, &mut rng, opts.max_pairs);
    checks.push(rstar_agreement(&params, &ys));
    checks.push(rstar_shape(&params, &ys));

    match hasse(params, DEFAULT_HASSE_BOUND) {
        Ok(_) => checks.extend(poset(&params)),
        Err(_) => skipped.push("poset"),
    }
    checks.extend(subexpressions(&params));

    if params.order() <= opts.kl_bound {
        let (kl, _) = KLTable::new(params).verify()?;
        checks.extend(kl.checks);
    } else {
        skipped.push("kl");
    }
    checks.extend(e1_check(params).checks);

    let mut report = Report::new(serde_json::json!({
        "n": params.n,
        "b": params.b,
        "seed": opts.seed,
        "skipped": skipped,
    }));
    report.checks = checks;
    Ok(report)
}

/// All elements if `|W H_b|² ≤ max_pairs`, else a sample whose square
/// stays under the budget.
fn sample_elements(params: &GroupParams, rng: &mut ChaCha8Rng, max_pairs: usize) -> Vec<GroupElement> {
    let all = params.elements();
    let keep = (max_pairs / all.len()).clamp(1, all.len());
    if keep == all.len() {
        return all;
    }
    let mut picked: Vec<GroupElement> = all.choose_multiple(rng, keep).cloned().collect();
    picked.sort();
    picked
}

fn random_element(params: &GroupParams, rng: &mut ChaCha8Rng) -> GroupElement {
    let mut images: Vec<u8> = (0..params.n as u8).collect();
    images.shuffle(rng);
    let exps = (0..params.n).map(|_| rng.gen_range(0..params.b)).collect();
    GroupElement::new(Perm::from_images(images), exps, params.b)
}

/// Associativity, inverses, and agreement with monomial-matrix products.
pub fn group_axioms(params: &GroupParams, rng: &mut ChaCha8Rng, samples: usize) -> Check {
    let mut failures = Vec::new();
    for _ in 0..samples.min(2000) {
        let (x, y, z) = (random_element(params, rng), random_element(params, rng), random_element(params, rng));
        if &(&x * &y) * &z != &x * &(&y * &z) {
            failures.push(format!("({x} {y}) {z} != {x} ({y} {z})"));
        }
        if !(&x * &x.inverse()).is_identity() {
            failures.push(format!("{x} * inverse != 1"));
        }
        let m = crate::group::monomial_matrix_product(&x.to_monomial_matrix(), &y.to_monomial_matrix(), params.b);
        if (&x * &y).to_monomial_matrix() != m {
            failures.push(format!("matrix of {x} * {y} is not the matrix product"));
        }
    }
    Check::from_failures("group axioms and monomial matrices", &failures)
}

/// `|X_t| = b`, `X_t = X_t⁻¹`, and `X_t` is a subgroup exactly when `b` is odd.
pub fn x_sets(params: &GroupParams) -> Check {
    let mut failures = Vec::new();
    for t in params.reflections() {
        let x = params.x_set(t);
        if x.len() != params.b as usize {
            failures.push(format!("|X_({},{})| = {}", t.i, t.j, x.len()));
        }
        if x.inverses() != x {
            failures.push(format!("X_({},{}) is not closed under inverses", t.i, t.j));
        }
        let closed = x.product(&x) == x;
        if closed != (params.b % 2 == 1) {
            failures.push(format!("X_({},{}) closed under products: {closed}", t.i, t.j));
        }
    }
    Check::from_failures("X_t has b elements and is closed under inverses", &failures)
}

/// `X_{t_1}⋯X_{t_r}X_{t_{r+1}} = X_{t_1}⋯X_{t_r}X_{t_1⋯t_r t_{r+1} t_r⋯t_1}`
/// for random tuples with `r ≤ 3`.
pub fn xt_products(params: &GroupParams, rng: &mut ChaCha8Rng, samples: usize) -> Check {
    let refl = params.reflections();
    let mut failures = Vec::new();
    if refl.is_empty() {
        return Check::pass("X_t product identity");
    }
    let n = params.n;
    for _ in 0..samples {
        let r = rng.gen_range(1..=3);
        let ts: Vec<_> = (0..=r).map(|_| *refl.choose(rng).unwrap()).collect();
        let prefix = ts[..r].iter().fold(DiagSet::from_elements([params.identity()]), |acc, &t| {
            acc.product(&params.x_set(t))
        });
        let lhs = prefix.product(&params.x_set(ts[r]));
        let w = ts[..r].iter().fold(Perm::identity(n), |acc, t| acc.compose(&t.as_perm(n)));
        let conj = w.compose(&ts[r].as_perm(n)).compose(&w.inverse());
        let rhs = prefix.product(&params.x_set_of_perm(&conj));
        if lhs != rhs {
            failures.push(format!("tuple {:?}", ts.iter().map(|t| (t.i, t.j)).collect::<Vec<_>>()));
        }
    }
    Check::from_failures("X_t product identity", &failures)
}

/// `X_0 × X_{s_1} × ⋯ × X_{s_{n−1}} → H_b` is a bijection.
pub fn product_bijection(params: &GroupParams) -> Check {
    let mut products = vec![params.identity()];
    let factors = std::iter::once(params.x_zero()).chain((1..params.n).map(|i| params.x_simple(i)));
    for f in factors {
        products = products.iter().flat_map(|p| f.iter().map(move |d| p * d)).collect();
    }
    let distinct: BTreeSet<_> = products.iter().cloned().collect();
    let expected = (params.b as usize).pow(params.n as u32);
    if products.len() == expected && distinct.len() == expected {
        Check::pass("X_0 x X_s1 x ... x X_s(n-1) -> H_b is a bijection")
    } else {
        Check::fail(
            "X_0 x X_s1 x ... x X_s(n-1) -> H_b is a bijection",
            format!("{} products, {} distinct, |H_b| = {expected}", products.len(), distinct.len()),
        )
    }
}

/// For odd `b`, `H'` is a subgroup containing every `X_t`, hence every
/// product of them.
pub fn contain(params: &GroupParams) -> Check {
    let hp = params.h_prime();
    let mut failures = Vec::new();
    if hp.product(&hp) != hp {
        failures.push("H' is not closed under products".to_string());
    }
    for t in params.reflections() {
        if !params.x_set(t).is_subset(&hp) {
            failures.push(format!("X_({},{}) not in H'", t.i, t.j));
        }
    }
    Check::from_failures("H' is a subgroup containing every X_t (b odd)", &failures)
}

/// `Ω` by the descent recursion
/// `Ω_{w₁,w₂} = Ω_{sw₁,sw₂}` or `Ω_{sw₁,sw₂} ∪ Ω_{w₁,sw₂} X_{w₁⁻¹sw₁}`.
pub fn omega_recursive(w1: &Perm, w2: &Perm, params: &GroupParams, memo: &mut BTreeMap<(Perm, Perm), DiagSet>) -> DiagSet {
    if w2.is_identity() {
        return if w1.is_identity() { DiagSet::from_elements([params.identity()]) } else { DiagSet::empty() };
    }
    if let Some(hit) = memo.get(&(w1.clone(), w2.clone())) {
        return hit.clone();
    }
    let n = params.n;
    let i = (1..n).find(|&i| w2.is_left_descent(i)).unwrap();
    let s = Perm::simple(n, i);
    let sw1 = s.compose(w1);
    let sw2 = s.compose(w2);
    let mut out = omega_recursive(&sw1, &sw2, params, memo);
    if !w1.is_left_descent(i) {
        let t = w1.inverse().compose(&s).compose(w1);
        let tail = omega_recursive(w1, &sw2, params, memo).product(&params.x_set_of_perm(&t));
        out = out.union(&tail);
    }
    memo.insert((w1.clone(), w2.clone()), out.clone());
    out
}

/// The chain formula for `Ω` agrees with the descent recursion.
pub fn omega_recursion(params: &GroupParams) -> Check {
    let perms = Perm::all(params.n);
    let mut memo = BTreeMap::new();
    let mut failures = Vec::new();
    for w1 in &perms {
        for w2 in &perms {
            let rec = omega_recursive(w1, w2, params, &mut memo);
            let chain = omega(w1, w2, params);
            if rec != chain {
                failures.push(format!("Omega({w1},{w2}): recursion {} vs chain {}", rec.len(), chain.len()));
            }
        }
    }
    Check::from_failures("Omega from chains equals the descent recursion", &failures)
}

/// `Ω` does not depend on the chain, composes along Bruhat chains, is
/// nonempty exactly on Bruhat pairs, and is `{1}` on the diagonal.
pub fn omega_chains(params: &GroupParams) -> Check {
    let perms = Perm::all(params.n);
    let mut failures = Vec::new();
    let one = DiagSet::from_elements([params.identity()]);
    let om: BTreeMap<(usize, usize), DiagSet> = perms
        .iter()
        .enumerate()
        .flat_map(|(i, w1)| perms.iter().enumerate().map(move |(j, w2)| ((i, j), w1, w2)))
        .map(|(k, w1, w2)| (k, omega(w1, w2, params)))
        .collect();
    for (i, w1) in perms.iter().enumerate() {
        for (j, w2) in perms.iter().enumerate() {
            let o = &om[&(i, j)];
            if o.is_empty() == w1.bruhat_leq(w2) {
                failures.push(format!("Omega({w1},{w2}) empty={} but Bruhat={}", o.is_empty(), w1.bruhat_leq(w2)));
            }
            if i == j && *o != one {
                failures.push(format!("Omega({w1},{w1}) != {{1}}"));
            }
            if let (Some(c1), Some(c2)) = (reflection_chain(w1, w2), reflection_chain_reversed(w1, w2)) {
                let along = |c: &[crate::group::Reflection]| crate::order::omega_along(params, c);
                if along(&c1) != along(&c2) {
                    failures.push(format!("Omega({w1},{w2}) depends on the chain"));
                }
            }
        }
    }
    // Composition over Bruhat triples; capped for n = 4 and beyond.
    let mut triples = 0usize;
    'outer: for (i, w1) in perms.iter().enumerate() {
        for (j, w2) in perms.iter().enumerate() {
            if om[&(i, j)].is_empty() {
                continue;
            }
            for (k, _) in perms.iter().enumerate() {
                if om[&(j, k)].is_empty() {
                    continue;
                }
                if om[&(i, j)].product(&om[&(j, k)]) != om[&(i, k)] {
                    failures.push(format!("Omega({w1},{w2}) Omega({w2},{}) != Omega({w1},{})", perms[k], perms[k]));
                }
                triples += 1;
                if triples > 20_000 {
                    break 'outer;
                }
            }
        }
    }
    Check::from_failures("Omega is chain independent and composes along Bruhat chains", &failures)
}

/// Associativity, left rules against right rules, inverses, and the bar
/// involution as a ring homomorphism, on random basis elements.
pub fn hecke_products(params: &GroupParams, rng: &mut ChaCha8Rng, samples: usize) -> Check {
    let t = GenericElement::t_basis;
    let mut failures = Vec::new();
    for _ in 0..samples {
        let (x, y, z) = (random_element(params, rng), random_element(params, rng), random_element(params, rng));
        let xy = &t(&x) * &t(&y);
        if &xy * &t(&z) != &t(&x) * &(&t(&y) * &t(&z)) {
            failures.push(format!("(T[{x}] T[{y}]) T[{z}] is not associative"));
        }
        if t(&y).left_mul_basis(&x) != xy {
            failures.push(format!("left and right rules disagree on T[{x}] T[{y}]"));
        }
        if &GenericElement::inverse_t(&x) * &t(&x) != GenericElement::identity(*params) {
            failures.push(format!("T[{x}]^-1 T[{x}] != 1"));
        }
        let bx = t(&x).bar();
        if bx.bar() != t(&x) {
            failures.push(format!("bar is not an involution on T[{x}]"));
        }
        if xy.bar() != &bx * &t(&y).bar() {
            failures.push(format!("bar(T[{x}] T[{y}]) != bar(T[{x}]) bar(T[{y}])"));
        }
    }
    Check::from_failures("Hecke products, inverses and bar", &failures)
}

/// `τ(T_x T_y) = δ_{x,y⁻¹}`.
pub fn trace_form(params: &GroupParams, rng: &mut ChaCha8Rng, max_pairs: usize) -> Check {
    let ys = sample_elements(params, rng, max_pairs);
    let xs = params.elements();
    let failures: Vec<String> = ys
        .par_iter()
        .flat_map_iter(|y| {
            let ty = GenericElement::t_basis(y);
            let yinv = y.inverse();
            xs.iter()
                .filter_map(|x| {
                    let tau = (&GenericElement::t_basis(x) * &ty).tau();
                    let expected = if *x == yinv { GenericScalar::one() } else { GenericScalar::zero() };
                    (tau != expected).then(|| format!("tau(T[{x}] T[{y}]) = {tau}"))
                })
                .collect::<Vec<_>>()
        })
        .collect();
    Check::from_failures("tau(T_x T_y) = delta(x, y^-1)", &failures)
}

/// Closed-formula column for `y = w d`, via `R*_{x,wd} = R*_{xd⁻¹,w}`.
pub fn closed_column_for(y: &GroupElement, order: &Order) -> Result<BTreeMap<GroupElement, GenericScalar>> {
    let subs = enumerate_with(order, &y.perm().reduced_word())?;
    let d = y.d_part();
    Ok(closed_column(&subs).into_iter().map(|(x, r)| (&x * &d, r)).collect())
}

/// Recursive, direct and closed R* agree on every `(x, y)` for the given
/// `y`s, and the order matches nonvanishing.
pub fn rstar_agreement(params: &GroupParams, ys: &[GroupElement]) -> Check {
    let table = RStarTable::new(*params);
    let order = Order::new(*params);
    let elements = params.elements();
    let failures: Vec<String> = ys
        .par_iter()
        .flat_map_iter(|y| {
            let mut f = Vec::new();
            let rec = table.column(y);
            let direct = r_star_direct(y);
            let closed = closed_column_for(y, &order).unwrap_or_default();
            if rec != direct {
                f.push(format!("recursive and direct columns differ at y={y}"));
            }
            if rec != closed {
                f.push(format!("recursive and closed columns differ at y={y}"));
            }
            for x in &elements {
                if order.leq(x, y) != rec.contains_key(x) {
                    f.push(format!("order and R* disagree at ({x}, {y})"));
                }
            }
            f.into_iter()
        })
        .collect();
    Check::from_failures("recursive, direct and closed R* agree", &failures)
}

/// `R*_{x,y} ∈ N[a v⁻¹]` of degree at most `ℓ(y) − ℓ(x)`; `R_{x,y}` is a
/// polynomial in `v²` of degree at most `ℓ(y) − ℓ(x)`.
pub fn rstar_shape(params: &GroupParams, ys: &[GroupElement]) -> Check {
    let table = RStarTable::new(*params);
    let failures: Vec<String> = ys
        .par_iter()
        .flat_map_iter(|y| {
            let mut f = Vec::new();
            for (x, r) in table.column(y) {
                let gap = (y.length() - x.length()) as i32;
                match r.as_av_polynomial() {
                    Some(c) if c.iter().all(|k| k.sign() != num_bigint::Sign::Minus) && c.len() as i32 <= gap + 1 => {}
                    _ => f.push(format!("R*[{x},{y}] = {r}")),
                }
                let big_r = r.specialize(params.b).shift_v(gap);
                let ok = big_r.has_only_even_degrees()
                    && big_r.min_v_deg().unwrap_or(0) >= 0
                    && big_r.max_v_deg().unwrap_or(0) <= 2 * gap;
                if !ok {
                    f.push(format!("R[{x},{y}] = {big_r}"));
                }
            }
            f.into_iter()
        })
        .collect();
    Check::from_failures("R* in N[a/v] and R in Z_b[v^2] with the degree bound", &failures)
}

/// Partial-order axioms, `H_b`-translations as automorphisms, and the
/// component structure of the Hasse diagram.
pub fn poset(params: &GroupParams) -> Vec<Check> {
    let poset = match hasse(*params, DEFAULT_HASSE_BOUND) {
        Ok(p) => p,
        Err(e) => return vec![Check::fail("partial order axioms", e.to_string())],
    };
    let m = poset.elements().len();
    let mut axioms = Vec::new();
    for y in 0..m {
        if !poset.leq_idx(y, y) {
            axioms.push(format!("{} not <= itself", poset.elements()[y]));
        }
        for x in poset.down_set(y).ones() {
            if x != y && poset.leq_idx(y, x) {
                axioms.push(format!("{} and {} are mutually below", poset.elements()[x], poset.elements()[y]));
            }
            if !poset.down_set(x).is_subset(poset.down_set(y)) {
                axioms.push(format!("transitivity fails below {}", poset.elements()[y]));
            }
        }
    }

    let mut auto = Vec::new();
    let gens: Vec<GroupElement> = (0..params.n)
        .map(|i| {
            let mut e = vec![0i64; params.n];
            e[i] = 1;
            params.diag(&e)
        })
        .collect();
    let elements = poset.elements();
    for d in &gens {
        let right: Vec<usize> = elements.iter().map(|x| poset.index_of(&(x * d)).unwrap()).collect();
        let left: Vec<usize> = elements.iter().map(|x| poset.index_of(&(d * x)).unwrap()).collect();
        for y in 0..m {
            for x in 0..m {
                let le = poset.leq_idx(x, y);
                if poset.leq_idx(right[x], right[y]) != le || poset.leq_idx(left[x], left[y]) != le {
                    auto.push(format!("translation by {d} changes ({}, {})", elements[x], elements[y]));
                }
            }
        }
    }

    let comps = poset.components();
    let mut comp_failures = Vec::new();
    if comps.len() != params.b as usize {
        comp_failures.push(format!("{} components, expected {}", comps.len(), params.b));
    }
    let mut out = vec![
        Check::from_failures("<= is reflexive, antisymmetric and transitive", &axioms),
        Check::from_failures("multiplication by d is a poset automorphism", &auto),
        Check::from_failures("Hasse diagram has b components", &comp_failures),
    ];
    if params.b % 2 == 1 {
        let hp = params.h_prime();
        let mut cosets = Vec::new();
        for (i, x) in elements.iter().enumerate() {
            for y in elements.iter().skip(i + 1) {
                let same_coset = hp.contains(&(x * &y.inverse()).d_part());
                let same_comp = poset.component_of(x) == poset.component_of(y);
                if same_coset != same_comp {
                    cosets.push(format!("{x} and {y}"));
                }
            }
        }
        out.push(Check::from_failures("components are the cosets of W H' (b odd)", &cosets));
    }
    out
}

/// All reduced words of `w`.
pub fn reduced_words(w: &Perm) -> Vec<Vec<usize>> {
    if w.is_identity() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in (1..w.n()).filter(|&i| w.is_right_descent(i)) {
        let shorter = w.compose(&Perm::simple(w.n(), i));
        for mut word in reduced_words(&shorter) {
            word.push(i);
            out.push(word);
        }
    }
    out
}

/// Lower ideals, parity, fiber counts and word independence of the
/// distinguished-subexpression formula, for every `w ∈ W`.
pub fn subexpressions(params: &GroupParams) -> Vec<Check> {
    let order = Order::new(*params);
    let table = RStarTable::new(*params);
    let mut ideal = Vec::new();
    let mut parity = Vec::new();
    let mut count = Vec::new();
    let mut words = Vec::new();
    for w in Perm::all(params.n) {
        let we = params.perm_element(&w);
        let all_words = reduced_words(&w);
        let word = w.reduced_word();
        let subs = match enumerate_with(&order, &word) {
            Ok(s) => s,
            Err(e) => {
                ideal.push(e.to_string());
                continue;
            }
        };
        let ends: BTreeSet<GroupElement> = subs.iter().map(|x| x.end().clone()).collect();
        let expected: BTreeSet<GroupElement> = order.lower_ideal(&we).into_iter().collect();
        if ends != expected {
            ideal.push(format!("lower ideal of {w}: {} vs {}", ends.len(), expected.len()));
        }
        for x in &subs {
            if x.n_stat % 2 != (w.length() - x.end().length()) % 2 {
                parity.push(format!("{:?} over {} has n = {}", x.word, x.end(), x.n_stat));
            }
        }
        let mass: num_bigint::BigInt = table
            .column(&we)
            .values()
            .map(|r| r.terms().map(|(_, _, c)| c.clone()).sum::<num_bigint::BigInt>())
            .sum();
        if mass != num_bigint::BigInt::from(subs.len()) {
            count.push(format!("{w}: {} subexpressions, R* coefficient mass {mass}", subs.len()));
        }
        let reference = closed_column(&subs);
        for other in all_words.iter().take(8).filter(|o| **o != word) {
            match enumerate_with(&order, other) {
                Ok(s) if closed_column(&s) == reference => {}
                _ => words.push(format!("{w}: words {word:?} and {other:?} disagree")),
            }
        }
    }
    vec![
        Check::from_failures("distinguished subexpressions give the lower ideal", &ideal),
        Check::from_failures("n(x) = l(w) - l(y) mod 2", &parity),
        Check::from_failures("number of subexpressions = total R* coefficient mass", &count),
        Check::from_failures("closed formula is independent of the reduced word", &words),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_words_of_w0() {
        assert_eq!(reduced_words(&Perm::from_word(3, &[1, 2, 1])).len(), 2);
        assert_eq!(reduced_words(&Perm::from_word(4, &[1, 2, 1, 3, 2, 1])).len(), 16);
    }

    #[test]
    fn selftest_small() {
        for (n, b) in [(1, 3), (2, 2), (3, 1), (3, 2)] {
            let r = selftest(GroupParams::new(n, b).unwrap(), SelftestOptions::default()).unwrap();
            assert!(r.passed(), "n={n} b={b}: {:?}", r.failures().collect::<Vec<_>>());
        }
    }
}
