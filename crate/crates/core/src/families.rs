//! Named graph families and the bicyclic type classifier.
//!
//! | tag | graph |
//! |-----|-------|
//! | `C:n` | cycle `C_n` |
//! | `STAR:n` | star `K_{1,n-1}` |
//! | `U:n` | `(K_2 ∪ (n-3)K_1) ∨ K_1` |
//! | `A:n` | `C_{n-1}` with one pendant vertex |
//! | `B:n` | `U_{n-1}` plus a vertex adjacent to the universal vertex and one triangle vertex |
//! | `F:n1,n2` | centre joined to two triangles' worth of leaves (a bowtie), `n1` pendant vertices and `n2` pendant paths of length two |
//! | `G1:a,b` | cycles `C_a` and `C_b` sharing one vertex |
//! | `G2:a,b,c` | cycles `C_a` and `C_b` joined by a path on `c` vertices |
//! | `G3:a,b,c` | two hubs joined by three paths with `a`, `b`, `c` internal vertices |
//! | `H:n,m` | star `K_{1,n-1}` plus edges from one leaf to `m` other leaves |

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::binomial;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet, MAX_VERTICES};
use crate::poly::CoeffPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilySpec {
    Cycle(usize),
    Star(usize),
    U(usize),
    A(usize),
    B(usize),
    F(usize, usize),
    G1(usize, usize),
    G2(usize, usize, usize),
    G3(usize, usize, usize),
    H(usize, usize),
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidFamily(msg.into())
}

impl FamilySpec {
    /// Number of vertices of the built graph.
    pub fn order(&self) -> usize {
        match *self {
            FamilySpec::Cycle(n)
            | FamilySpec::Star(n)
            | FamilySpec::U(n)
            | FamilySpec::A(n)
            | FamilySpec::B(n)
            | FamilySpec::H(n, _) => n,
            FamilySpec::F(n1, n2) => n1 + 2 * n2 + 5,
            FamilySpec::G1(a, b) => a + b - 1,
            FamilySpec::G2(a, b, c) => a + b + c - 2,
            FamilySpec::G3(a, b, c) => a + b + c + 2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            FamilySpec::Cycle(n) if n < 3 => return Err(invalid(format!("C:{n} needs n >= 3"))),
            FamilySpec::Star(0) => return Err(invalid("STAR:0 has no vertices")),
            FamilySpec::U(n) | FamilySpec::A(n) | FamilySpec::B(n) if n < 5 => {
                return Err(invalid(format!("{self} needs n >= 5")))
            }
            FamilySpec::G1(a, b) if a < 3 || b < 3 => {
                return Err(invalid(format!("{self}: cycle orders must be >= 3")))
            }
            FamilySpec::G2(a, b, c) if a < 3 || b < 3 || c < 2 => {
                return Err(invalid(format!("{self}: needs a, b >= 3 and c >= 2")))
            }
            FamilySpec::G3(a, b, c) if [a, b, c].iter().filter(|&&x| x == 0).count() > 1 => {
                return Err(invalid(format!("{self}: at most one path may be empty")))
            }
            FamilySpec::H(n, m) if n < 2 || (m > 0 && m + 2 > n) => {
                return Err(invalid(format!("{self}: needs n >= 2 and m <= n - 2")))
            }
            _ => {}
        }
        let n = self.order();
        if n > MAX_VERTICES {
            return Err(Error::Capacity { requested: n });
        }
        Ok(())
    }

    /// Number of independent cycles, `|E| - |V| + 1`.
    pub fn cyclomatic(&self) -> usize {
        match *self {
            FamilySpec::Cycle(_) | FamilySpec::U(_) | FamilySpec::A(_) => 1,
            FamilySpec::Star(_) => 0,
            FamilySpec::B(_)
            | FamilySpec::F(..)
            | FamilySpec::G1(..)
            | FamilySpec::G2(..)
            | FamilySpec::G3(..) => 2,
            FamilySpec::H(_, m) => m,
        }
    }

    /// Constructs the graph.
    pub fn build(&self) -> Result<Graph> {
        self.validate()?;
        let n = self.order();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        match *self {
            FamilySpec::Cycle(n) => return Graph::cycle(n),
            FamilySpec::Star(n) => return Graph::star(n),
            FamilySpec::U(n) => edges = u_edges(n),
            FamilySpec::A(n) => {
                edges.extend((0..n - 1).map(|i| (i, (i + 1) % (n - 1))));
                edges.push((0, n - 1));
            }
            FamilySpec::B(n) => {
                edges = u_edges(n - 1);
                edges.extend([(0, n - 1), (1, n - 1)]);
            }
            FamilySpec::F(n1, n2) => {
                edges.extend([(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]);
                edges.extend((5..5 + n1).map(|v| (0, v)));
                for i in 0..n2 {
                    let mid = 5 + n1 + 2 * i;
                    edges.extend([(0, mid), (mid, mid + 1)]);
                }
            }
            FamilySpec::G1(a, b) => {
                edges.extend(cycle_through(0, 1..a));
                edges.extend(cycle_through(0, a..a + b - 1));
            }
            FamilySpec::G2(a, b, c) => {
                // C_a on 0..a, path from 0 through c-2 internal vertices to
                // vertex a+c-2, which lies on C_b.
                edges.extend(cycle_through(0, 1..a));
                let mut prev = 0;
                for v in a..a + c - 2 {
                    edges.push((prev, v));
                    prev = v;
                }
                let anchor = a + c - 2;
                edges.push((prev, anchor));
                edges.extend(cycle_through(anchor, anchor + 1..anchor + b));
            }
            FamilySpec::G3(a, b, c) => {
                let mut next = 2;
                for len in [a, b, c] {
                    let mut prev = 0;
                    for v in next..next + len {
                        edges.push((prev, v));
                        prev = v;
                    }
                    edges.push((prev, 1));
                    next += len;
                }
            }
            FamilySpec::H(n, m) => {
                edges.extend((1..n).map(|v| (0, v)));
                edges.extend((2..2 + m).map(|v| (1, v)));
            }
        }
        Graph::from_edges(n, &edges)
    }

    /// `CW(G, x)` from the published closed forms, for `U_n`, `C_n`, `A_n`,
    /// `B_n` and `F(n-5, 0)` with `n >= 5`. Nothing here enumerates subsets.
    ///
    /// The `A_n` form is reproduced as published; its coefficient of
    /// `x^(n-1)` disagrees with direct counting (see
    /// [`FamilySpec::closed_form_agreement_degree`]).
    pub fn closed_form_cw(&self) -> Result<CoeffPoly> {
        self.validate()?;
        let n = self.order();
        if n < 5 {
            return Err(invalid(format!(
                "closed forms need order >= 5, {self} has {n}"
            )));
        }
        let c = |k: usize| BigInt::from(k);
        let choose = |k: usize| binomial(BigInt::from(n - 1), BigInt::from(k - 1));
        let mut coeffs = vec![BigInt::from(0); n + 1];
        match *self {
            FamilySpec::U(_) => {
                coeffs[1] = c(n);
                coeffs[2] = c(n);
                for k in 3..=n {
                    coeffs[k] = choose(k);
                }
            }
            FamilySpec::Cycle(_) => {
                for coeff in &mut coeffs[1..n] {
                    *coeff = c(n);
                }
            }
            FamilySpec::A(_) => {
                coeffs[1] = c(n);
                for k in 2..=n - 2 {
                    coeffs[k] = c(n + k - 2);
                }
                coeffs[n - 1] = c(n - 1);
            }
            FamilySpec::B(_) => {
                coeffs[1] = c(n);
                coeffs[2] = c(n + 1);
                coeffs[3] = choose(3) + 1;
                for k in 4..=n {
                    coeffs[k] = choose(k);
                }
            }
            FamilySpec::F(_, 0) => {
                coeffs[1] = c(n);
                coeffs[2] = c(n + 1);
                for k in 3..=n {
                    coeffs[k] = choose(k);
                }
            }
            _ => return Err(invalid(format!("no closed form for {self}"))),
        }
        Ok(CoeffPoly::new(coeffs))
    }

    /// Highest degree up to which [`FamilySpec::closed_form_cw`] is expected
    /// to match enumeration: `n - 2` for `A_n`, `n` otherwise.
    pub fn closed_form_agreement_degree(&self) -> usize {
        match *self {
            FamilySpec::A(n) => n - 2,
            _ => self.order(),
        }
    }
}

fn u_edges(n: usize) -> Vec<(usize, usize)> {
    let mut edges = vec![(1, 2)];
    edges.extend((1..n).map(|v| (0, v)));
    edges
}

/// Edges of the cycle `start, r.start, .., r.end - 1, start`.
fn cycle_through(start: usize, rest: std::ops::Range<usize>) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    let mut prev = start;
    for v in rest {
        edges.push((prev, v));
        prev = v;
    }
    edges.push((prev, start));
    edges
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Cycle(n) => write!(f, "C:{n}"),
            FamilySpec::Star(n) => write!(f, "STAR:{n}"),
            FamilySpec::U(n) => write!(f, "U:{n}"),
            FamilySpec::A(n) => write!(f, "A:{n}"),
            FamilySpec::B(n) => write!(f, "B:{n}"),
            FamilySpec::F(a, b) => write!(f, "F:{a},{b}"),
            FamilySpec::G1(a, b) => write!(f, "G1:{a},{b}"),
            FamilySpec::G2(a, b, c) => write!(f, "G2:{a},{b},{c}"),
            FamilySpec::G3(a, b, c) => write!(f, "G3:{a},{b},{c}"),
            FamilySpec::H(n, m) => write!(f, "H:{n},{m}"),
        }
    }
}

/// Grammar: `TAG:p1[,p2[,p3]]`, tags `C STAR U A B F G1 G2 G3 H`,
/// case-insensitive. Parameters are validated.
impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (tag, params) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| invalid(format!("'{s}' is not of the form TAG:p1[,p2[,p3]]")))?;
        let params: Vec<usize> = params
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| invalid(format!("'{s}': {e}")))?;
        let arity = |k: usize| -> Result<()> {
            if params.len() == k {
                Ok(())
            } else {
                Err(invalid(format!(
                    "'{s}': expected {k} parameter(s), found {}",
                    params.len()
                )))
            }
        };
        let spec = match tag.trim().to_ascii_uppercase().as_str() {
            "C" => arity(1).map(|_| FamilySpec::Cycle(params[0]))?,
            "STAR" => arity(1).map(|_| FamilySpec::Star(params[0]))?,
            "U" => arity(1).map(|_| FamilySpec::U(params[0]))?,
            "A" => arity(1).map(|_| FamilySpec::A(params[0]))?,
            "B" => arity(1).map(|_| FamilySpec::B(params[0]))?,
            "F" => arity(2).map(|_| FamilySpec::F(params[0], params[1]))?,
            "G1" => arity(2).map(|_| FamilySpec::G1(params[0], params[1]))?,
            "G2" => arity(3).map(|_| FamilySpec::G2(params[0], params[1], params[2]))?,
            "G3" => arity(3).map(|_| FamilySpec::G3(params[0], params[1], params[2]))?,
            "H" => arity(2).map(|_| FamilySpec::H(params[0], params[1]))?,
            other => return Err(invalid(format!("unknown family tag '{other}'"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Structure of a bicyclic graph's 2-core, with normalized parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BicyclicType {
    /// Two cycles of orders `a <= b` sharing a vertex.
    Type1 { a: usize, b: usize },
    /// Cycles of orders `a <= b` joined by a path on `c >= 2` vertices.
    Type2 { a: usize, b: usize, c: usize },
    /// Two hubs joined by paths with `a <= b <= c` internal vertices.
    Type3 { a: usize, b: usize, c: usize },
}

impl BicyclicType {
    pub fn kind(&self) -> u8 {
        match self {
            BicyclicType::Type1 { .. } => 1,
            BicyclicType::Type2 { .. } => 2,
            BicyclicType::Type3 { .. } => 3,
        }
    }

    /// The base graph `G1`, `G2` or `G3` embedded in the 2-core.
    pub fn base(&self) -> FamilySpec {
        match *self {
            BicyclicType::Type1 { a, b } => FamilySpec::G1(a, b),
            BicyclicType::Type2 { a, b, c } => FamilySpec::G2(a, b, c),
            BicyclicType::Type3 { a, b, c } => FamilySpec::G3(a, b, c),
        }
    }
}

impl fmt::Display for BicyclicType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BicyclicType::Type1 { a, b } => write!(f, "Type1({a},{b})"),
            BicyclicType::Type2 { a, b, c } => write!(f, "Type2({a},{b},{c})"),
            BicyclicType::Type3 { a, b, c } => write!(f, "Type3({a},{b},{c})"),
        }
    }
}

/// Vertices surviving repeated removal of vertices of degree at most one.
pub fn two_core(g: &Graph) -> VertexSet {
    let mut core = g.vertices();
    loop {
        let low = core.iter().find(|&v| (g.row(v) & core.0).count_ones() <= 1);
        match low {
            Some(v) => core.remove(v),
            None => return core,
        }
    }
}

/// Classifies a connected graph with `|E| = |V| + 1` by the shape of its
/// 2-core.
pub fn classify_bicyclic(g: &Graph) -> Result<BicyclicType> {
    let (n, m, connected) = (g.order(), g.size(), g.is_connected());
    if !connected || m != n + 1 {
        return Err(Error::NotBicyclic {
            order: n,
            size: m,
            connected,
        });
    }
    let core = two_core(g);
    let core_deg = |v: usize| (g.row(v) & core.0).count_ones() as usize;
    let branches: Vec<usize> = core.iter().filter(|&v| core_deg(v) >= 3).collect();
    let mut used = std::collections::HashSet::new();
    // Walks from `start` through `first` until the next branch vertex;
    // returns (end, edges walked).
    let mut walk = |start: usize, first: usize| -> Option<(usize, usize)> {
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        if !used.insert(key(start, first)) {
            return None;
        }
        let (mut prev, mut cur, mut len) = (start, first, 1);
        while core_deg(cur) == 2 {
            let next = VertexSet(g.row(cur) & core.0)
                .iter()
                .find(|&w| w != prev)
                .expect("core vertex of degree two has another neighbor");
            used.insert(key(cur, next));
            prev = cur;
            cur = next;
            len += 1;
        }
        used.insert(key(prev, cur));
        Some((cur, len))
    };
    let walks_from = |v: usize, walk: &mut dyn FnMut(usize, usize) -> Option<(usize, usize)>| {
        VertexSet(g.row(v) & core.0)
            .iter()
            .filter_map(|u| walk(v, u))
            .collect::<Vec<_>>()
    };
    match branches.as_slice() {
        [hub] if core_deg(*hub) == 4 => {
            let loops = walks_from(*hub, &mut walk);
            let (a, b) = (loops[0].1, loops[1].1);
            Ok(BicyclicType::Type1 {
                a: a.min(b),
                b: a.max(b),
            })
        }
        [x, y] => {
            let from_x = walks_from(*x, &mut walk);
            if from_x.iter().all(|&(end, _)| end == *y) {
                let mut lens: Vec<usize> = from_x.iter().map(|&(_, l)| l - 1).collect();
                lens.sort_unstable();
                return Ok(BicyclicType::Type3 {
                    a: lens[0],
                    b: lens[1],
                    c: lens[2],
                });
            }
            let a = from_x.iter().find(|&&(end, _)| end == *x).map(|&(_, l)| l);
            let bridge = from_x.iter().find(|&&(end, _)| end == *y).map(|&(_, l)| l);
            let from_y = walks_from(*y, &mut walk);
            let b = from_y.iter().find(|&&(end, _)| end == *y).map(|&(_, l)| l);
            match (a, b, bridge) {
                (Some(a), Some(b), Some(p)) => Ok(BicyclicType::Type2 {
                    a: a.min(b),
                    b: a.max(b),
                    c: p + 1,
                }),
                _ => unreachable!("two degree-3 branch vertices form a theta or a dumbbell"),
            }
        }
        _ => unreachable!(
            "the 2-core of a bicyclic graph has one degree-4 or two degree-3 branch vertices"
        ),
    }
}

/// Number of `k`-subsets whose removal leaves a disconnected graph.
pub fn count_cut_sets(g: &Graph, k: usize) -> Result<u64> {
    let n = g.order();
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if k == 0 || k >= n {
        return Err(Error::InvalidArgument(format!(
            "cut-set order {k} must lie in 1..{n}"
        )));
    }
    let all = g.vertices();
    let mut count = 0;
    for_each_k_subset(n, k, |s| {
        if !g.is_connected_set(VertexSet(all.0 & !s)) {
            count += 1;
        }
    });
    Ok(count)
}

/// Gosper's hack over the `k`-subsets of `0..n`.
/// Named family members of order `g.order()` isomorphic to `g`, in the order
/// U, B, STAR, C, A, F, G1, G2, G3, H.
pub fn identify(g: &Graph) -> Vec<FamilySpec> {
    let n = g.order();
    let mut specs = vec![
        FamilySpec::U(n),
        FamilySpec::B(n),
        FamilySpec::Star(n),
        FamilySpec::Cycle(n),
        FamilySpec::A(n),
    ];
    if n >= 5 {
        specs.extend((0..=(n - 5) / 2).map(|n2| FamilySpec::F(n - 5 - 2 * n2, n2)));
    }
    for a in 3..=n {
        if n + 1 >= 2 * a {
            specs.push(FamilySpec::G1(a, n + 1 - a));
        }
        for b in a..=n.saturating_sub(a) {
            specs.push(FamilySpec::G2(a, b, n + 2 - a - b));
        }
    }
    if n >= 2 {
        for a in 0..=n - 2 {
            for b in a..=n - 2 - a {
                let c = n - 2 - a - b;
                if c >= b {
                    specs.push(FamilySpec::G3(a, b, c));
                }
            }
        }
        specs.extend((0..=n - 2).map(|m| FamilySpec::H(n, m)));
    }
    let key = crate::canon::canonical_key(g);
    specs
        .into_iter()
        .filter(|s| s.validate().is_ok())
        .filter_map(|s| s.build().ok().map(|h| (s, h)))
        .filter(|(_, h)| h.size() == g.size() && crate::canon::canonical_key(h) == key)
        .map(|(s, _)| s)
        .collect()
}

pub(crate) fn for_each_k_subset(n: usize, k: usize, mut f: impl FnMut(u64)) {
    if k > n || n > 63 {
        return;
    }
    if k == 0 {
        f(0);
        return;
    }
    let limit = 1u64 << n;
    let mut s = (1u64 << k) - 1;
    while s < limit {
        f(s);
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
}
