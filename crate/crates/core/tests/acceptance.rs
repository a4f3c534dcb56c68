//! One pass/fail line per acceptance criterion. Exits nonzero if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::Instant;

use hecke_core::glnq::{verify_mult_theorem, FieldParams};
use hecke_core::hecke::e1_check;
use hecke_core::kl::KLTable;
use hecke_core::order::{hasse, Order, DEFAULT_HASSE_BOUND};
use hecke_core::report::Check;
use hecke_core::rpoly::RStarTable;
use hecke_core::verify;
use hecke_core::{parse_element, GroupElement, GroupParams, SpecializedScalar};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

fn p(n: usize, b: u32) -> GroupParams {
    GroupParams::new(n, b).unwrap()
}

fn frac(b: u32, terms: &[(i32, i64, u32)]) -> SpecializedScalar {
    SpecializedScalar::from_terms(b, terms.iter().map(|&(d, c, k)| (d, BigInt::from(c), k)))
}

fn require(checks: impl IntoIterator<Item = Check>, ctx: &str) -> Outcome {
    let failed: Vec<String> = checks
        .into_iter()
        .filter(|c| !c.pass)
        .map(|c| format!("{ctx}: {} [{}]", c.name, c.witness.unwrap_or_default()))
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(failed.join("; "))
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// 1. The S3 example: R and P for every x < w with w in W, n = 3, b = 1..5.
fn s3_example() -> Outcome {
    for b in 1..=5u32 {
        let g = p(3, b);
        let kl = KLTable::new(g);
        let rstar = RStarTable::new(g);
        let order = Order::new(g);
        let s1 = g.generator(1);
        let inner = g.x_simple(2).conjugate_by(&s1);
        let omega = g.x_simple(1).product(&g.x_simple(1)).product(&g.x_simple(2));
        for w in g.elements().into_iter().filter(|w| w.is_identity() || w.exps().iter().all(|&e| e == 0)) {
            for x in g.elements() {
                if !order.lt(&x, &w) {
                    continue;
                }
                let gap = w.length() - x.length();
                let r = rstar.r_specialized(&x, &w);
                let pp = kl.p(&x, &w).map_err(|e| e.to_string())?;
                let (er, ep) = match gap {
                    1 => (frac(b, &[(2, 1, 1), (0, -1, 1)]), frac(b, &[(0, 1, 1)])),
                    2 => (frac(b, &[(4, 1, 2), (2, -2, 2), (0, 1, 2)]), frac(b, &[(0, 1, 2)])),
                    3 => {
                        ensure(w == g.from_word(&[1, 2, 1]) && x.length() == 0, || format!("gap 3 at ({x}, {w})"))?;
                        ensure(omega.contains(&x), || format!("{x} below w0 but outside X1 X1 X2"))?;
                        let c = 3 - b as i64;
                        if inner.contains(&x) {
                            (
                                frac(b, &[(6, 1, 2), (4, -c, 2), (2, c, 2), (0, -1, 2)]),
                                frac(b, &[(2, b as i64 - 1, 2), (0, 1, 2)]),
                            )
                        } else {
                            (
                                frac(b, &[(6, 1, 2), (4, -3, 2), (2, 3, 2), (0, -1, 2)]),
                                frac(b, &[(2, -1, 2), (0, 1, 2)]),
                            )
                        }
                    }
                    _ => return Err(format!("unexpected gap {gap} at ({x}, {w})")),
                };
                ensure(r == er, || format!("b={b}: R[{x},{w}] = {r}, expected {er}"))?;
                ensure(pp == ep, || format!("b={b}: P[{x},{w}] = {pp}, expected {ep}"))?;
            }
        }
        let w0 = g.from_word(&[1, 2, 1]);
        for d in g.diagonal_elements() {
            ensure(order.leq(&d, &w0) == omega.contains(&d), || format!("b={b}: membership of {d}"))?;
        }
    }
    Ok(())
}

// Classical oracle on bare permutations (images of 0..n).

fn inversions(w: &[usize]) -> usize {
    (0..w.len()).flat_map(|i| (i + 1..w.len()).map(move |j| (i, j))).filter(|&(i, j)| w[i] > w[j]).count()
}

/// Tableau criterion: x <= y iff every sorted prefix of x is dominated by y's.
fn classical_bruhat(x: &[usize], y: &[usize]) -> bool {
    (1..=x.len()).all(|k| {
        let mut a = x[..k].to_vec();
        let mut c = y[..k].to_vec();
        a.sort_unstable();
        c.sort_unstable();
        a.iter().zip(&c).all(|(u, v)| u <= v)
    })
}

/// Left multiplication by the transposition of values i-1 and i.
fn left_simple(i: usize, w: &[usize]) -> Vec<usize> {
    w.iter().map(|&v| if v == i - 1 { i } else if v == i { i - 1 } else { v }).collect()
}

/// Classical R_{x,y} as coefficients in q.
fn classical_r(x: &[usize], y: &[usize], memo: &mut BTreeMap<(Vec<usize>, Vec<usize>), Vec<i64>>) -> Vec<i64> {
    if let Some(r) = memo.get(&(x.to_vec(), y.to_vec())) {
        return r.clone();
    }
    let ly = inversions(y);
    let r = if ly == 0 {
        if inversions(x) == 0 { vec![1] } else { vec![] }
    } else {
        let s = (1..y.len()).find(|&i| inversions(&left_simple(i, y)) < ly).unwrap();
        let sy = left_simple(s, y);
        let sx = left_simple(s, x);
        if inversions(&sx) < inversions(x) {
            classical_r(&sx, &sy, memo)
        } else {
            let a = classical_r(x, &sy, memo);
            let c = classical_r(&sx, &sy, memo);
            let mut out = vec![0i64; a.len().max(c.len()) + 1];
            for (k, v) in a.iter().enumerate() {
                out[k + 1] += v;
                out[k] -= v;
            }
            for (k, v) in c.iter().enumerate() {
                out[k + 1] += v;
            }
            while out.last() == Some(&0) {
                out.pop();
            }
            out
        }
    };
    memo.insert((x.to_vec(), y.to_vec()), r.clone());
    r
}

fn images(x: &GroupElement) -> Vec<usize> {
    x.perm().images().iter().map(|&v| v as usize).collect()
}

// 2. b = 1 is the classical theory.
fn classical_reduction() -> Outcome {
    let mut memo = BTreeMap::new();
    for n in 1..=4 {
        let g = p(n, 1);
        let order = Order::new(g);
        let rstar = RStarTable::new(g);
        let elems = g.elements();
        for y in &elems {
            for x in &elems {
                let (xi, yi) = (images(x), images(y));
                ensure(order.leq(x, y) == classical_bruhat(&xi, &yi), || format!("order vs Bruhat at ({x}, {y})"))?;
                let classical = classical_r(&xi, &yi, &mut memo);
                let expected = frac(1, &classical.iter().enumerate().map(|(k, &c)| (2 * k as i32, c, 0)).collect::<Vec<_>>());
                let got = rstar.r_specialized(x, y);
                ensure(got == expected, || format!("R[{x},{y}] = {got}, classical {expected}"))?;
            }
        }
    }
    let g = p(3, 1);
    let kl = KLTable::new(g);
    let order = Order::new(g);
    for y in g.elements() {
        for x in g.elements().into_iter().filter(|x| order.leq(x, &y)) {
            let got = kl.p(&x, &y).map_err(|e| e.to_string())?;
            ensure(got == SpecializedScalar::one_b(1), || format!("P[{x},{y}] = {got}"))?;
        }
    }
    Ok(())
}

// 3. Recursive, direct and closed R* agree.
fn three_way() -> Outcome {
    for n in 1..=3 {
        for b in 1..=4 {
            let g = p(n, b);
            require([verify::rstar_agreement(&g, &g.elements())], &format!("n={n} b={b}"))?;
        }
    }
    let g = p(4, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut ys: Vec<GroupElement> = g.elements().choose_multiple(&mut rng, 24).cloned().collect();
    ys.push(g.from_word(&[1, 2, 1, 3, 2, 1]));
    require([verify::rstar_agreement(&g, &ys)], "n=4 b=2 sampled")
}

// 4. Reference Hasse diagram for n = 3, b = 2, identity component. `d2d3` is exponent 1 at positions 2 and 3.
const HASSE_LOWER: &[(&str, &[&str])] = &[
    ("1", &["s2d2", "s2d3", "s1d1", "s1d2"]),
    ("d2d3", &["s2d2", "s2d3", "s1d1d2d3", "s1d3"]),
    ("d1d3", &["s1d1d2d3", "s1d3", "s2d1", "s2d1d2d3"]),
    ("d1d2", &["s2d1", "s2d1d2d3", "s1d1", "s1d2"]),
];

const HASSE_UPPER: &[(&str, &[&str])] = &[
    ("s2s1d1d2", &["s2d2", "s1d1d2d3", "s2d1", "s1d2"]),
    ("s2s1d1d3", &["s2d3", "s1d3", "s2d1d2d3", "s1d1"]),
    ("s1s2d2d3", &["s2d2", "s1d3", "s2d1d2d3", "s1d2"]),
    ("s1s2d1d3", &["s2d3", "s1d1d2d3", "s2d1", "s1d1"]),
    ("s2s1", &["s2d2", "s1d3", "s2d1", "s1d1"]),
    ("s2s1d2d3", &["s2d3", "s1d1d2d3", "s2d1d2d3", "s1d2"]),
    ("s1s2d1d2", &["s2d2", "s1d1d2d3", "s2d1d2d3", "s1d1"]),
    ("s1s2", &["s2d3", "s1d3", "s2d1", "s1d2"]),
    ("s1s2s1d1", &["s2s1d1d2", "s2s1d1d3", "s1s2d1d2", "s1s2"]),
    ("s1s2s1d1d2d3", &["s2s1d1d2", "s2s1d1d3", "s1s2d2d3", "s1s2d1d3"]),
    ("s1s2s1d3", &["s1s2d2d3", "s1s2d1d3", "s2s1", "s2s1d2d3"]),
    ("s1s2s1d2", &["s2s1", "s2s1d2d3", "s1s2d1d2", "s1s2"]),
];

fn fixture_element(name: &str, g: &GroupParams) -> GroupElement {
    let mut word = Vec::new();
    let mut exps = [0i64; 3];
    let bytes = name.as_bytes();
    for k in 0..bytes.len() {
        let idx = || (bytes[k + 1] - b'0') as usize;
        match bytes[k] {
            b's' => word.push(format!("s{}", idx())),
            b'd' => exps[idx() - 1] = 1,
            _ => {}
        }
    }
    word.push(format!("d({},{},{})", exps[0], exps[1], exps[2]));
    parse_element(&word.join("*"), g).unwrap()
}

fn hasse_fixture() -> Outcome {
    let g = p(3, 2);
    let poset = hasse(g, DEFAULT_HASSE_BOUND).map_err(|e| e.to_string())?;
    let comps = poset.components();
    ensure(comps.len() == 2 && comps.iter().all(|c| c.len() == 24), || format!("component sizes {:?}", comps.iter().map(Vec::len).collect::<Vec<_>>()))?;

    let mut fixture: BTreeSet<(GroupElement, GroupElement)> = BTreeSet::new();
    for (upper_or_lower, others) in HASSE_LOWER {
        for o in *others {
            fixture.insert((fixture_element(upper_or_lower, &g), fixture_element(o, &g)));
        }
    }
    for (upper, lowers) in HASSE_UPPER {
        for l in *lowers {
            fixture.insert((fixture_element(l, &g), fixture_element(upper, &g)));
        }
    }
    ensure(fixture.len() == 64, || format!("fixture has {} edges", fixture.len()))?;
    let vertices: BTreeSet<GroupElement> = fixture.iter().flat_map(|(a, c)| [a.clone(), c.clone()]).collect();
    let mut by_len = [0usize; 4];
    vertices.iter().for_each(|v| by_len[v.length()] += 1);
    ensure(by_len == [4, 8, 8, 4], || format!("fixture lengths {by_len:?}"))?;

    let id_comp = poset.component_of(&g.identity());
    let computed_vertices: BTreeSet<GroupElement> =
        comps[id_comp].iter().map(|&i| poset.elements()[i].clone()).collect();
    ensure(computed_vertices == vertices, || "identity component vertex set differs".into())?;
    let computed: BTreeSet<(GroupElement, GroupElement)> = poset
        .hasse_edges()
        .into_iter()
        .map(|(x, y)| (poset.elements()[x].clone(), poset.elements()[y].clone()))
        .filter(|(x, _)| computed_vertices.contains(x))
        .collect();
    if computed != fixture {
        let missing: Vec<_> = fixture.difference(&computed).map(|(a, c)| format!("{a} < {c}")).collect();
        let extra: Vec<_> = computed.difference(&fixture).map(|(a, c)| format!("{a} < {c}")).collect();
        return Err(format!("edges missing {missing:?}, extra {extra:?}"));
    }

    let d1 = g.diag(&[1, 0, 0]);
    let other: BTreeSet<GroupElement> = vertices.iter().map(|x| &d1 * x).collect();
    let other_comp: BTreeSet<GroupElement> =
        comps[1 - id_comp].iter().map(|&i| poset.elements()[i].clone()).collect();
    ensure(other == other_comp, || "second component is not d1 times the first".into())
}

// 5. Partial-order axioms and components.
fn partial_order() -> Outcome {
    for n in 1..=3 {
        for b in 1..=4 {
            require(verify::poset(&p(n, b)), &format!("n={n} b={b}"))?;
        }
    }
    Ok(())
}

// 6. Trace form.
fn trace() -> Outcome {
    for n in 1..=3 {
        for b in 1..=3 {
            let g = p(n, b);
            let mut rng = ChaCha8Rng::seed_from_u64(6);
            let all = (g.order() * g.order()) as usize;
            require([verify::trace_form(&g, &mut rng, all)], &format!("n={n} b={b}"))?;
        }
    }
    Ok(())
}

// 7. The GL_n(F_q) oracle.
fn glnq() -> Outcome {
    for q in [3, 5, 7, 13] {
        for field in FieldParams::factorizations(q).map_err(|e| e.to_string())? {
            let report = verify_mult_theorem(2, field, false).map_err(|e| e.to_string())?;
            require(report.checks, &format!("n=2 q={q} a={}", field.a))?;
        }
    }
    for field in FieldParams::factorizations(3).map_err(|e| e.to_string())? {
        let report = verify_mult_theorem(3, field, true).map_err(|e| e.to_string())?;
        require(report.checks, &format!("n=3 q=3 a={}", field.a))?;
    }
    Ok(())
}

// 8. KL solve integrity.
fn kl_integrity() -> Outcome {
    for n in 1..=3 {
        for b in 1..=3 {
            let (report, _) = KLTable::new(p(n, b)).verify().map_err(|e| e.to_string())?;
            require(report.checks, &format!("n={n} b={b}"))?;
        }
    }
    Ok(())
}

// 9. Combinatorial propositions.
fn combinatorics() -> Outcome {
    for n in 1..=4 {
        for b in 1..=4 {
            let g = p(n, b);
            let mut rng = ChaCha8Rng::seed_from_u64(9);
            let mut checks = vec![
                verify::x_sets(&g),
                verify::xt_products(&g, &mut rng, 300),
                verify::product_bijection(&g),
                verify::omega_recursion(&g),
                verify::omega_chains(&g),
            ];
            if b % 2 == 1 {
                checks.push(verify::contain(&g));
            }
            require(checks, &format!("n={n} b={b}"))?;
        }
    }
    Ok(())
}

// 10. The e1 subalgebra.
fn e1_subalgebra() -> Outcome {
    for n in 2..=3 {
        for b in 1..=3 {
            require(e1_check(p(n, b)).checks, &format!("n={n} b={b}"))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("S3 example R and P values, b = 1..5", s3_example),
        ("b = 1 reduces to Bruhat order and classical R, P", classical_reduction),
        ("three-way R* agreement", three_way),
        ("Hasse diagram for n = 3, b = 2 matches the reference diagram", hasse_fixture),
        ("partial order axioms and b components", partial_order),
        ("trace form", trace),
        ("GL_n(F_q) double-coset algebra", glnq),
        ("KL basis integrity", kl_integrity),
        ("X_t, Omega and product propositions", combinatorics),
        ("e1 subalgebra relation", e1_subalgebra),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS ({secs:.2}s) {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL ({secs:.2}s) {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
