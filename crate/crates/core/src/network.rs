//! Planar network for abelian Hessenberg functions.
//!
//! For abelian `h` the reduction only ever takes aligned steps, and the whole
//! computation is a walk on lattice points `(i, j)`: a diagonal step
//! `(i, j) -> (i-1, j-1)` with weight `[a_{i,j}]_q / [n-j+1]_q`, or a vertical
//! step `(i, j) -> (i, j-1)` with the complementary weight. Walks stop on the
//! diagonal at `(j, j)`, which stands for `f(k_j k_{n-j})`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::dyck::{Hess, Partition};
use crate::engine::{lambda_factorial, Expansion};
use crate::error::{Error, Result};
use crate::qpoly::{q_factorial, q_int};
use crate::{QPoly, QRat};

pub type Point = (usize, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    /// `(i, j) -> (i-1, j-1)`
    Diagonal,
    /// `(i, j) -> (i, j-1)`
    Vertical,
}

impl StepKind {
    pub fn target(self, (i, j): Point) -> Point {
        match self {
            StepKind::Diagonal => (i - 1, j - 1),
            StepKind::Vertical => (i, j - 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    /// `a_{i,j}`; the diagonal weight is `[a]_q / [n-j+1]_q`.
    pub a: usize,
    pub weight: QRat,
}

#[derive(Clone, Debug)]
pub struct PlanarNetwork {
    n: usize,
    start: Point,
    edges: BTreeMap<(Point, StepKind), Edge>,
    endpoints: BTreeMap<Point, Partition>,
}

/// `a_{i,j} = min{k >= 0 : h(i-k) < j}` when `h(1) < j`, and `i` otherwise.
pub fn a_coefficient(h: &Hess, i: usize, j: usize) -> usize {
    if h.at(1) < j {
        (0..=i).find(|&k| h.at(i - k) < j).unwrap_or(i)
    } else {
        i
    }
}

/// Starting point `(i, h(i))` with `i` the last index where `h(i) < n`, or
/// `(0, n)` when `h(1) = n`.
pub fn start_point(h: &Hess) -> Point {
    let n = h.n();
    match (1..=n).rev().find(|&i| h.at(i) < n) {
        Some(i) => (i, h.at(i)),
        None => (0, n),
    }
}

/// The complete product at the endpoint `(j, j)`.
pub fn endpoint_key(n: usize, j: usize) -> Partition {
    Partition::new(vec![j.max(n - j), j.min(n - j)])
}

pub fn build_network(h: &Hess) -> Result<PlanarNetwork> {
    if !h.is_abelian() {
        return Err(Error::NotAbelian(h.to_string()));
    }
    let n = h.n();
    let start = start_point(h);
    let mut edges = BTreeMap::new();
    let mut endpoints = BTreeMap::new();
    let mut frontier = vec![start];
    while let Some(p) = frontier.pop() {
        let (i, j) = p;
        if i == j {
            endpoints.insert(p, endpoint_key(n, j));
            continue;
        }
        if edges.contains_key(&(p, StepKind::Vertical)) {
            continue;
        }
        let a = a_coefficient(h, i, j);
        let den = QRat::from_poly(q_int(n - j + 1));
        let diag = QRat::from_poly(q_int(a)).checked_div(&den)?;
        let vert = &QRat::one() - &diag;
        edges.insert((p, StepKind::Vertical), Edge { a, weight: vert });
        frontier.push(StepKind::Vertical.target(p));
        if i > 0 {
            edges.insert((p, StepKind::Diagonal), Edge { a, weight: diag });
            frontier.push(StepKind::Diagonal.target(p));
        }
    }
    Ok(PlanarNetwork { n, start, edges, endpoints })
}

impl PlanarNetwork {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn start(&self) -> Point {
        self.start
    }

    pub fn edges(&self) -> impl Iterator<Item = (&(Point, StepKind), &Edge)> {
        self.edges.iter()
    }

    pub fn edge(&self, from: Point, kind: StepKind) -> Option<&Edge> {
        self.edges.get(&(from, kind))
    }

    pub fn endpoints(&self) -> impl Iterator<Item = (&Point, &Partition)> {
        self.endpoints.iter()
    }

    /// Total path weight arriving at each endpoint, by dynamic programming
    /// down the lattice (every step lowers `j` by one).
    pub fn endpoint_totals(&self) -> BTreeMap<Point, QRat> {
        let mut level: BTreeMap<Point, QRat> = BTreeMap::from([(self.start, QRat::one())]);
        let mut totals = BTreeMap::new();
        while !level.is_empty() {
            let mut next: BTreeMap<Point, QRat> = BTreeMap::new();
            for (p, w) in level {
                if self.endpoints.contains_key(&p) {
                    let e = totals.entry(p).or_insert_with(QRat::zero);
                    *e = &*e + &w;
                    continue;
                }
                for kind in [StepKind::Diagonal, StepKind::Vertical] {
                    if let Some(edge) = self.edges.get(&(p, kind)) {
                        if edge.weight.is_zero() {
                            continue;
                        }
                        let e = next.entry(kind.target(p)).or_insert_with(QRat::zero);
                        *e = &*e + &(&w * &edge.weight);
                    }
                }
            }
            level = next;
        }
        totals
    }

    pub fn evaluate(&self, base: impl Fn(&Partition) -> Option<QRat>) -> Result<QRat> {
        let mut acc = QRat::zero();
        for (p, w) in self.endpoint_totals() {
            let key = &self.endpoints[&p];
            let v = base(key).ok_or_else(|| Error::MissingBase(key.to_string()))?;
            acc = &acc + &(&w * &v);
        }
        Ok(acc)
    }

    pub fn to_expansion(&self) -> Result<Expansion> {
        let mut terms: BTreeMap<Partition, QRat> = BTreeMap::new();
        for (p, w) in self.endpoint_totals() {
            let e = terms.entry(self.endpoints[&p].clone()).or_insert_with(QRat::zero);
            *e = &*e + &w;
        }
        Expansion::from_terms(self.n, terms)
    }

    /// Diagonal and vertical numerators `[a]_q` and `[n-j+1]_q - [a]_q` of
    /// every interior node.
    pub fn numerators(&self) -> Vec<(Point, QPoly, QPoly)> {
        self.edges
            .iter()
            .filter(|((_, kind), _)| *kind == StepKind::Vertical)
            .map(|(&((i, j), _), edge)| {
                let diag = q_int(edge.a);
                let vert = &q_int(self.n - j + 1) - &diag;
                ((i, j), diag, vert)
            })
            .collect()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph network {\n  rankdir=TB;\n");
        let mut nodes: Vec<Point> = self.edges.keys().map(|(p, _)| *p).collect();
        nodes.extend(self.endpoints.keys().copied());
        nodes.sort();
        nodes.dedup();
        for (i, j) in &nodes {
            let label = match self.endpoints.get(&(*i, *j)) {
                Some(key) => format!("({i},{j}) k{key}"),
                None => format!("({i},{j})"),
            };
            let shape = if self.endpoints.contains_key(&(*i, *j)) { "box" } else { "ellipse" };
            let _ = writeln!(s, "  \"{i},{j}\" [label=\"{label}\", shape={shape}];");
        }
        for ((p, kind), edge) in &self.edges {
            if edge.weight.is_zero() {
                continue;
            }
            let (ti, tj) = kind.target(*p);
            let _ = writeln!(
                s,
                "  \"{},{}\" -> \"{ti},{tj}\" [label=\"{}\"];",
                p.0, p.1, edge.weight
            );
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Serialize)]
pub struct NetworkJson {
    pub h: Hess,
    pub start: Point,
    pub edges: Vec<EdgeJson>,
    pub endpoints: Vec<EndpointJson>,
}

#[derive(Serialize)]
pub struct EdgeJson {
    pub from: Point,
    pub to: Point,
    pub kind: StepKind,
    pub a: usize,
    pub weight: QRat,
}

#[derive(Serialize)]
pub struct EndpointJson {
    pub point: Point,
    pub partition: Partition,
}

impl PlanarNetwork {
    pub fn to_json(&self, h: &Hess) -> NetworkJson {
        NetworkJson {
            h: h.clone(),
            start: self.start,
            edges: self
                .edges
                .iter()
                .map(|((p, kind), e)| EdgeJson {
                    from: *p,
                    to: kind.target(*p),
                    kind: *kind,
                    a: e.a,
                    weight: e.weight.clone(),
                })
                .collect(),
            endpoints: self
                .endpoints
                .iter()
                .map(|(p, key)| EndpointJson { point: *p, partition: key.clone() })
                .collect(),
        }
    }
}

pub fn evaluate_network(net: &PlanarNetwork, base: impl Fn(&Partition) -> Option<QRat>) -> Result<QRat> {
    net.evaluate(base)
}

pub fn network_expansion(h: &Hess) -> Result<Expansion> {
    build_network(h)?.to_expansion()
}

/// With `j0 = min{j : h(j) = n}`: `n - j0 >= h(i) - i` for every `i`.
pub fn is_manifestly_positive(h: &Hess) -> bool {
    let n = h.n();
    let Some(j0) = (1..=n).find(|&j| h.at(j) == n) else {
        return true;
    };
    h.area_sequence().iter().all(|&a| n - j0 >= a)
}

/// `P_l = T_l (n-l)!_q / (n-h(i0))!_q` for each endpoint `(l, l)`, where
/// `T_l` is the endpoint's path total and `(i0, h(i0))` the start.
pub fn endpoint_polynomials(h: &Hess) -> Result<Vec<(usize, QPoly)>> {
    let net = build_network(h)?;
    let n = h.n();
    let (_, hs) = net.start;
    let mut out = Vec::new();
    for ((l, _), total) in net.endpoint_totals() {
        let scaled = total
            .mul_poly(&q_factorial(n - l))
            .checked_div(&QRat::from_poly(q_factorial(n - hs)))?;
        let poly = scaled.is_polynomial().ok_or_else(|| Error::NotPolynomial {
            partition: endpoint_key(n, l).to_string(),
            value: scaled.to_string(),
        })?;
        out.push((l, poly));
    }
    Ok(out)
}

/// The e-coefficient `l!_q (n-l)!_q T_l` of `e_{(n-l, l)}` read off the network.
pub fn network_e_coefficient(total: &QRat, key: &Partition) -> QRat {
    total.mul_poly(&lambda_factorial(key))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::expand;

    fn h(v: &[usize]) -> Hess {
        Hess::from_values(v.to_vec()).unwrap()
    }

    fn ratio(a: usize, d: usize) -> QRat {
        QRat::from_poly(q_int(a)).checked_div(&QRat::from_poly(q_int(d))).unwrap()
    }

    #[test]
    fn diagonal_labels() {
        let x = h(&[3, 5, 5, 6, 6, 6]);
        let net = build_network(&x).unwrap();
        assert_eq!(net.start(), (3, 5));
        let expect = [((3, 5), 2, 2), ((3, 4), 2, 3), ((2, 4), 1, 3), ((2, 3), 2, 4), ((1, 3), 1, 4), ((1, 2), 1, 5)];
        for (p, a, d) in expect {
            let diag = &net.edge(p, StepKind::Diagonal).unwrap().weight;
            assert_eq!(diag, &ratio(a, d), "{p:?}");
            let vert = &net.edge(p, StepKind::Vertical).unwrap().weight;
            assert!((diag + vert).is_one());
        }
        // a = 0 along the left wall
        assert_eq!(a_coefficient(&x, 0, 3), 0);
    }

    #[test]
    fn degenerate_and_small() {
        let net = build_network(&Hess::complete(4)).unwrap();
        assert_eq!(net.start(), (0, 4));
        let e = net.to_expansion().unwrap();
        assert_eq!(e, Expansion::base(Partition::new(vec![4])));
        let p3 = h(&[2, 3, 3]);
        let net = build_network(&p3).unwrap();
        let keys: Vec<String> = net.endpoints().map(|(p, k)| format!("{p:?}{k}")).collect();
        assert_eq!(keys, ["(0, 0)(3)", "(1, 1)(2,1)"]);
        assert_eq!(network_expansion(&p3).unwrap(), expand(&p3).unwrap());
        assert!(matches!(build_network(&h(&[2, 4, 4, 5, 5])), Err(Error::NotAbelian(_))));
    }

    #[test]
    fn matches_engine() {
        let x = h(&[3, 5, 5, 6, 6, 6]);
        assert_eq!(network_expansion(&x).unwrap(), expand(&x).unwrap());
        let one = build_network(&x).unwrap().evaluate(|_| Some(QRat::one())).unwrap();
        assert!(one.is_one());
    }

    #[test]
    fn positivity_predicate() {
        assert!(is_manifestly_positive(&Hess::complete(5)));
        // the vertex 1 has three neighbours but the last clique only has three vertices
        assert!(!is_manifestly_positive(&h(&[3, 5, 5, 6, 6, 6])));
        let p = h(&[2, 4, 4, 4]);
        assert!(p.is_abelian() && is_manifestly_positive(&p));
        for (_, diag, vert) in build_network(&p).unwrap().numerators() {
            assert!(diag.is_nonnegative() && vert.is_nonnegative());
        }
        let dot = build_network(&h(&[2, 3, 3])).unwrap().to_dot();
        assert!(dot.starts_with("digraph network {"));
        assert!(dot.contains("->"));
    }
}
