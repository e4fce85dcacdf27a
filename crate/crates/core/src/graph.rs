//! Adjacency-digraph utilities for nonnegative matrices.
//!
//! Edges follow the application flow: the arc `j -> i` exists whenever
//! `T[i][j] != 0`, so a coordinate set is invariant under `T` exactly when
//! it is closed under successors.

/// Strongly connected components by Kosaraju's algorithm, iterative.
///
/// Returns the components in topological order of the condensation: every
/// arc between distinct components points from an earlier component to a
/// later one.
pub(crate) fn sccs(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        // post-order DFS, explicit stack
        let mut stack = vec![(start, 0usize)];
        seen[start] = true;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next < adj[v].len() {
                let u = adj[v][*next];
                *next += 1;
                if !seen[u] {
                    seen[u] = true;
                    stack.push((u, 0));
                }
            } else {
                order.push(v);
                stack.pop();
            }
        }
    }

    let mut radj = vec![Vec::new(); n];
    for (v, outs) in adj.iter().enumerate() {
        for &u in outs {
            radj[u].push(v);
        }
    }

    let mut comp = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for &start in order.iter().rev() {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &u in &radj[v] {
                if comp[u] == usize::MAX {
                    comp[u] = id;
                    members.push(u);
                    stack.push(u);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }
    comps
}

/// Component id per vertex, matching the order returned by [`sccs`].
pub(crate) fn component_ids(n: usize, comps: &[Vec<usize>]) -> Vec<usize> {
    let mut id = vec![0; n];
    for (c, members) in comps.iter().enumerate() {
        for &v in members {
            id[v] = c;
        }
    }
    id
}

/// gcd of all cycle lengths within one strongly connected component,
/// computed from BFS levels: every intra-component arc `u -> v` contributes
/// `level(u) + 1 - level(v)`.
pub(crate) fn component_period(adj: &[Vec<usize>], members: &[usize]) -> usize {
    let inside = {
        let mut f = vec![false; adj.len()];
        for &v in members {
            f[v] = true;
        }
        f
    };
    let root = members[0];
    let mut level = vec![i64::MIN; adj.len()];
    level[root] = 0;
    let mut queue = std::collections::VecDeque::from([root]);
    let mut g: i64 = 0;
    while let Some(v) = queue.pop_front() {
        for &u in &adj[v] {
            if !inside[u] {
                continue;
            }
            if level[u] == i64::MIN {
                level[u] = level[v] + 1;
                queue.push_back(u);
            } else {
                g = gcd(g, (level[v] + 1 - level[u]).abs());
            }
        }
    }
    // a single vertex without a loop has no cycle; callers treat that case
    // before asking for a period
    g.max(1) as usize
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scc_of_two_cycle() {
        let adj = vec![vec![1], vec![0]];
        let comps = sccs(&adj);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0], vec![0, 1]);
    }

    #[test]
    fn scc_topological_order() {
        // 0 -> 1 -> 2, no back edges: three components, sources first
        let adj = vec![vec![1], vec![2], vec![]];
        let comps = sccs(&adj);
        assert_eq!(comps, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn period_of_cycles() {
        for p in 1..=6 {
            let adj: Vec<Vec<usize>> = (0..p).map(|v| vec![(v + 1) % p]).collect();
            let comps = sccs(&adj);
            assert_eq!(comps.len(), 1);
            assert_eq!(component_period(&adj, &comps[0]), p);
        }
    }

    #[test]
    fn period_with_chord() {
        // 4-cycle plus a chord creating a 2-cycle: gcd(4, 2) = 2
        let adj = vec![vec![1], vec![2, 0], vec![3], vec![0]];
        let comps = sccs(&adj);
        assert_eq!(comps.len(), 1);
        assert_eq!(component_period(&adj, &comps[0]), 2);
    }
}
