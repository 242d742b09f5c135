use std::collections::VecDeque;

/// Reverse Cuthill-McKee ordering of an undirected graph.
///
/// Components are taken one at a time, each starting from the unvisited
/// vertex of lowest degree. Breadth-first search enqueues neighbors by
/// increasing degree, and each component's visit order is reversed before it
/// is appended. Every tie goes to the lower vertex index, so an edgeless graph
/// maps to the identity. `order[i]` is the original vertex placed at position `i`.
pub fn reverse_cuthill_mckee(adjacency: &[Vec<usize>]) -> Vec<usize> {
    let n = adjacency.len();
    let degree: Vec<usize> = adjacency.iter().map(Vec::len).collect();
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::new();

    while order.len() < n {
        let start = (0..n)
            .filter(|&v| !visited[v])
            .min_by_key(|&v| (degree[v], v))
            .expect("unvisited vertex remains");
        let component_start = order.len();
        visited[start] = true;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let mut next: Vec<usize> = adjacency[v]
                .iter()
                .copied()
                .filter(|&u| !visited[u])
                .collect();
            next.sort_by_key(|&u| (degree[u], u));
            next.dedup();
            for u in next {
                visited[u] = true;
                queue.push_back(u);
            }
        }
        order[component_start..].reverse();
    }
    order
}

/// Largest `|pos(i) - pos(j)|` over edges after placing vertices in `order`.
pub fn bandwidth(adjacency: &[Vec<usize>], order: &[usize]) -> usize {
    let mut pos = vec![0; order.len()];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    adjacency
        .iter()
        .enumerate()
        .flat_map(|(v, nbrs)| nbrs.iter().map(move |&u| (v, u)))
        .map(|(v, u)| pos[v].abs_diff(pos[u]))
        .max()
        .unwrap_or(0)
}
