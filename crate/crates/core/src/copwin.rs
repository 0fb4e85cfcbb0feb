//! Cop-win recognition.
//!
//! A graph is cop-win iff it is dismantlable: it can be reduced to a single
//! vertex by repeatedly deleting a vertex `u` whose closed neighborhood is
//! contained in the closed neighborhood of another vertex. The game search in
//! [`is_copwin_game`] decides the same property directly from the rules of the
//! pursuit game and serves as an independent check.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Largest order accepted by [`is_copwin_game`].
pub const GAME_ORACLE_MAX_ORDER: usize = 12;

/// The vertices removed by greedy dismantling, in original labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DismantleTrace {
    pub order: Vec<usize>,
    pub success: bool,
}

/// The lowest vertex of `s` whose closed neighborhood (within `s`) is
/// contained in that of another vertex of `s`.
pub fn dominated_vertex(g: &Graph, s: VertexSet) -> Option<usize> {
    s.iter().find(|&u| {
        let nu = g.closed_neighbors(u).0 & s.0;
        VertexSet(g.row(u) & s.0)
            .iter()
            .any(|v| nu & !(g.closed_neighbors(v).0 & s.0) == 0)
    })
}

/// Greedy dismantling of the subgraph induced by `s`, removing the
/// lowest-indexed dominated vertex at each step.
pub fn dismantle(g: &Graph, s: VertexSet) -> DismantleTrace {
    let mut rest = s;
    let mut order = Vec::new();
    if s.is_empty() || !g.is_connected_set(s) {
        return DismantleTrace {
            order,
            success: false,
        };
    }
    while rest.len() > 1 {
        match dominated_vertex(g, rest) {
            Some(u) => {
                rest.remove(u);
                order.push(u);
            }
            None => break,
        }
    }
    DismantleTrace {
        success: rest.len() == 1,
        order,
    }
}

/// Whether the subgraph induced by `s` is cop-win.
pub fn is_copwin_set(g: &Graph, s: VertexSet) -> bool {
    dismantle(g, s).success
}

/// Decides cop-win status by dismantling. Empty and disconnected graphs are
/// not cop-win; `K_1` is.
pub fn is_copwin(g: &Graph) -> (bool, DismantleTrace) {
    let trace = dismantle(g, g.vertices());
    (trace.success, trace)
}

/// Decides cop-win status by solving the one-cop pursuit game.
///
/// The cop picks a start vertex, the robber answers, and the players then
/// alternate with the cop moving first; each move goes to a neighbor or stays
/// put. Winning positions are computed by backward induction.
pub fn is_copwin_game(g: &Graph) -> Result<bool> {
    let n = g.order();
    if n > GAME_ORACLE_MAX_ORDER {
        return Err(Error::Bound {
            what: "order for the game oracle",
            value: n,
            limit: GAME_ORACLE_MAX_ORDER,
        });
    }
    if n == 0 {
        return Ok(false);
    }
    let idx = |c: usize, r: usize| c * n + r;
    // cop_wins[c][r]: cop to move, cop at c, robber at r.
    // robber_loses[c][r]: robber to move.
    let mut cop_wins = vec![false; n * n];
    let mut robber_loses = vec![false; n * n];
    for v in 0..n {
        cop_wins[idx(v, v)] = true;
        robber_loses[idx(v, v)] = true;
    }
    loop {
        let mut changed = false;
        for c in 0..n {
            for r in 0..n {
                if !cop_wins[idx(c, r)]
                    && g.closed_neighbors(c)
                        .iter()
                        .any(|c2| c2 == r || robber_loses[idx(c2, r)])
                {
                    cop_wins[idx(c, r)] = true;
                    changed = true;
                }
                if !robber_loses[idx(c, r)]
                    && g.closed_neighbors(r)
                        .iter()
                        .all(|r2| r2 == c || cop_wins[idx(c, r2)])
                {
                    robber_loses[idx(c, r)] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok((0..n).any(|c| (0..n).all(|r| cop_wins[idx(c, r)])))
}

/// Chordality via maximum cardinality search followed by a check that the
/// reverse visiting order is a perfect elimination ordering.
pub fn is_chordal(g: &Graph) -> bool {
    let n = g.order();
    let mut weight = vec![0usize; n];
    let mut visited = VertexSet::EMPTY;
    let mut visit_order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !visited.contains(v))
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .expect("unvisited vertex remains");
        visited.insert(v);
        visit_order.push(v);
        for u in g.neighbors(v) {
            if !visited.contains(u) {
                weight[u] += 1;
            }
        }
    }
    // Eliminating in reverse visit order: the neighbors of v visited earlier
    // must form a clique; it suffices to check them against the latest one.
    let mut position = vec![0usize; n];
    for (i, &v) in visit_order.iter().enumerate() {
        position[v] = i;
    }
    for &v in &visit_order {
        let earlier: Vec<usize> = g
            .neighbors(v)
            .iter()
            .filter(|&u| position[u] < position[v])
            .collect();
        let Some(&parent) = earlier.iter().max_by_key(|&&u| position[u]) else {
            continue;
        };
        if earlier
            .iter()
            .any(|&u| u != parent && !g.has_edge(u, parent))
        {
            return false;
        }
    }
    true
}

/// Exhaustive search for an induced cycle on at least four vertices. Runs over
/// all vertex subsets, so it is meant for small graphs.
pub fn has_long_induced_cycle(g: &Graph) -> bool {
    let n = g.order();
    if n < 4 {
        return false;
    }
    let all = 1u64.checked_shl(n as u32).map_or(u64::MAX, |x| x - 1);
    let mut s: u64 = 0;
    loop {
        s = s.wrapping_sub(all) & all;
        if s == 0 {
            return false;
        }
        if s.count_ones() < 4 {
            continue;
        }
        let set = VertexSet(s);
        if set.iter().all(|v| (g.row(v) & s).count_ones() == 2) && g.is_connected_set(set) {
            return true;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wheel5() -> Graph {
        Graph::cycle(5)
            .unwrap()
            .join(&Graph::empty(1).unwrap())
            .unwrap()
    }

    #[test]
    fn copwin_examples() {
        assert!(is_copwin(&Graph::path(6).unwrap()).0);
        assert!(is_copwin(&Graph::star(7).unwrap()).0);
        assert!(!is_copwin(&Graph::cycle(4).unwrap()).0);
        assert!(is_copwin(&wheel5()).0);
        assert!(is_copwin(&Graph::empty(1).unwrap()).0);
        assert!(!is_copwin(&Graph::empty(0).unwrap()).0);
        assert!(!is_copwin(&Graph::empty(2).unwrap()).0);
        // A_6: C_5 with a pendant vertex.
        let a6 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5)]).unwrap();
        let (won, trace) = is_copwin(&a6);
        assert!(!won);
        assert_eq!(trace.order, vec![5]);
    }

    #[test]
    fn trace_records_dominated_removals() {
        let g = wheel5();
        let (won, trace) = is_copwin(&g);
        assert!(won);
        assert_eq!(trace.order.len(), 5);
        let mut rest = g.vertices();
        for &u in &trace.order {
            assert_eq!(dominated_vertex(&g, rest), Some(u));
            rest.remove(u);
        }
    }

    #[test]
    fn game_examples() {
        assert!(is_copwin_game(&Graph::path(5).unwrap()).unwrap());
        assert!(!is_copwin_game(&Graph::cycle(4).unwrap()).unwrap());
        assert!(is_copwin_game(&wheel5()).unwrap());
        assert!(!is_copwin_game(&Graph::from_edges(3, &[(0, 1)]).unwrap()).unwrap());
        assert!(is_copwin_game(&Graph::empty(1).unwrap()).unwrap());
        assert!(matches!(
            is_copwin_game(&Graph::path(13).unwrap()),
            Err(Error::Bound { .. })
        ));
    }

    #[test]
    fn chordal_examples() {
        assert!(!is_chordal(&Graph::cycle(4).unwrap()));
        assert!(is_chordal(&Graph::complete(5).unwrap()));
        assert!(is_chordal(&wheel5().delete_vertex(0).unwrap()));
        assert!(!is_chordal(&wheel5()));
        assert!(is_chordal(&Graph::empty(0).unwrap()));
        assert!(has_long_induced_cycle(&Graph::cycle(4).unwrap()));
        assert!(!has_long_induced_cycle(&Graph::complete(3).unwrap()));
        assert!(!has_long_induced_cycle(&Graph::complete(6).unwrap()));
    }
}
