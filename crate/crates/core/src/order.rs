//! The partial order `x ≤ y ⇔ R*_{x,y} ≠ 0` on `W H_b`.
//!
//! For `x = w₁d₁` and `y = w₂d₂` we have `x ≤ y` iff `d₁d₂⁻¹ ∈ Ω_{w₁,w₂}`,
//! and `Ω_{w₁,w₂}` is the product `X_{t₁} ⋯ X_{t_r}` along any reflection
//! chain from `w₁` up to `w₂` in Bruhat order. That makes comparisons cheap
//! and independent of the R*-recursion.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use dashmap::DashMap;
use fixedbitset::FixedBitSet;
use petgraph::unionfind::UnionFind;
use rayon::prelude::*;

use crate::error::{HeckeError, Result};
use crate::group::{reflection_chain, DiagSet, GroupElement, GroupParams, Perm, Reflection};

/// Default enumeration bound for [`hasse`].
pub const DEFAULT_HASSE_BOUND: u128 = 4000;

/// `Ω_{w₁,w₂}` computed from the given reflection chain.
pub fn omega_along(params: &GroupParams, chain: &[Reflection]) -> DiagSet {
    chain
        .iter()
        .fold(DiagSet::from_elements([params.identity()]), |acc, &t| acc.product(&params.x_set(t)))
}

/// `Ω_{w₁,w₂}`: empty unless `w₁ ≤_B w₂`, `{1}` on the diagonal.
pub fn omega(w1: &Perm, w2: &Perm, params: &GroupParams) -> DiagSet {
    match reflection_chain(w1, w2) {
        None => DiagSet::empty(),
        Some(chain) => omega_along(params, &chain),
    }
}

/// Comparison oracle for one group, caching `Ω` sets.
pub struct Order {
    params: GroupParams,
    omegas: DashMap<(Perm, Perm), Arc<DiagSet>>,
}

impl Order {
    pub fn new(params: GroupParams) -> Self {
        Order { params, omegas: DashMap::new() }
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn omega(&self, w1: &Perm, w2: &Perm) -> Arc<DiagSet> {
        let key = (w1.clone(), w2.clone());
        if let Some(hit) = self.omegas.get(&key) {
            return hit.clone();
        }
        let set = Arc::new(omega(w1, w2, &self.params));
        self.omegas.entry(key).or_insert(set).clone()
    }

    pub fn leq(&self, x: &GroupElement, y: &GroupElement) -> bool {
        if x.length() > y.length() {
            return false;
        }
        let d = &x.d_part() * &y.d_part().inverse();
        self.omega(x.perm(), y.perm()).contains(&d)
    }

    pub fn lt(&self, x: &GroupElement, y: &GroupElement) -> bool {
        x != y && self.leq(x, y)
    }

    /// `{ x : x ≤ y }` in canonical element order.
    pub fn lower_ideal(&self, y: &GroupElement) -> Vec<GroupElement> {
        self.params.elements().into_iter().filter(|x| self.leq(x, y)).collect()
    }
}

/// The order on an enumerated `W H_b`, with its covering relation and the
/// connected components of the Hasse diagram.
#[derive(Clone, Debug)]
pub struct OrderPoset {
    params: GroupParams,
    elements: Vec<GroupElement>,
    index: BTreeMap<GroupElement, usize>,
    /// `down[y]` holds every `x` with `x ≤ y`.
    down: Vec<FixedBitSet>,
    hasse_edges: Vec<(usize, usize)>,
    components: Vec<Vec<usize>>,
}

/// Builds the full poset, refusing groups larger than `bound`.
pub fn hasse(params: GroupParams, bound: u128) -> Result<OrderPoset> {
    let size = params.order();
    if size > bound {
        return Err(HeckeError::BoundExceeded { size, bound });
    }
    let order = Order::new(params);
    let elements = params.elements();
    let n = elements.len();
    let index: BTreeMap<_, _> = elements.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();

    let down: Vec<FixedBitSet> = elements
        .par_iter()
        .map(|y| {
            let mut set = FixedBitSet::with_capacity(n);
            for (i, x) in elements.iter().enumerate() {
                if order.leq(x, y) {
                    set.insert(i);
                }
            }
            set
        })
        .collect();

    // y covers x iff x < y and x lies below no other z < y.
    let hasse_edges: Vec<(usize, usize)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|y| {
            let mut strict = down[y].clone();
            strict.set(y, false);
            let mut shadow = FixedBitSet::with_capacity(n);
            for z in strict.ones() {
                let mut below = down[z].clone();
                below.set(z, false);
                shadow.union_with(&below);
            }
            let mut covered = strict;
            covered.difference_with(&shadow);
            covered.ones().map(move |x| (x, y)).collect::<Vec<_>>()
        })
        .collect();

    let mut uf = UnionFind::<usize>::new(n);
    for &(x, y) in &hasse_edges {
        uf.union(x, y);
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        groups.entry(uf.find(i)).or_default().push(i);
    }
    let mut components: Vec<Vec<usize>> = groups.into_values().collect();
    components.sort_by_key(|c| c[0]);

    Ok(OrderPoset { params, elements, index, down, hasse_edges, components })
}

impl OrderPoset {
    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn index_of(&self, x: &GroupElement) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn leq_idx(&self, x: usize, y: usize) -> bool {
        self.down[y].contains(x)
    }

    pub fn leq(&self, x: &GroupElement, y: &GroupElement) -> bool {
        self.leq_idx(self.index[x], self.index[y])
    }

    /// Indices of every `x ≤ y`.
    pub fn down_set(&self, y: usize) -> &FixedBitSet {
        &self.down[y]
    }

    /// All pairs `(x, y)` with `x ≤ y`, as indices.
    pub fn relation(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.down.iter().enumerate().flat_map(|(y, set)| set.ones().map(move |x| (x, y)))
    }

    /// Covering pairs `(lower, upper)`, sorted.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let mut e = self.hasse_edges.clone();
        e.sort_unstable();
        e
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component_of(&self, x: &GroupElement) -> usize {
        let i = self.index[x];
        self.components.iter().position(|c| c.contains(&i)).unwrap()
    }

    /// Graphviz rendering with one cluster per component. Output is
    /// deterministic: components, vertices, and edges appear in canonical
    /// element order.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let name = |i: usize| self.elements[i].to_string();
        writeln!(out, "graph hasse_n{}_b{} {{", self.params.n, self.params.b).unwrap();
        writeln!(out, "  rankdir=BT;").unwrap();
        writeln!(out, "  node [shape=plaintext];").unwrap();
        let edges = self.hasse_edges();
        for (ci, comp) in self.components.iter().enumerate() {
            writeln!(out, "  subgraph cluster_{ci} {{").unwrap();
            writeln!(out, "    label=\"component {ci}\";").unwrap();
            for &v in comp {
                writeln!(out, "    \"{}\";", name(v)).unwrap();
            }
            let members: FixedBitSet = {
                let mut s = FixedBitSet::with_capacity(self.elements.len());
                comp.iter().for_each(|&v| s.insert(v));
                s
            };
            for &(x, y) in edges.iter().filter(|(x, _)| members.contains(*x)) {
                writeln!(out, "    \"{}\" -- \"{}\";", name(x), name(y)).unwrap();
            }
            writeln!(out, "  }}").unwrap();
        }
        writeln!(out, "}}").unwrap();
        out
    }
}
