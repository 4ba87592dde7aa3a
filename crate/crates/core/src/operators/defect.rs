//! The defect of a hairy graph: how many internal edge contractions separate it from a core
//! graph with uni-trivalent trees hanging off its edges.

use crate::graph::HairyGraph;

/// Vertices of the pruned core: repeatedly delete internal vertices with one edge incidence,
/// then keep those with at least three. Loop order one has an empty core.
pub fn core_vertices(g: &HairyGraph) -> Vec<usize> {
    if g.is_line() || g.loop_order() < 2 {
        return Vec::new();
    }
    let mut alive = vec![true; g.v];
    let mut deg = vec![0usize; g.v];
    for &(a, b) in &g.edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    let mut stack: Vec<usize> = (0..g.v).filter(|&x| deg[x] <= 1).collect();
    while let Some(x) = stack.pop() {
        if !alive[x] {
            continue;
        }
        alive[x] = false;
        for &(a, b) in &g.edges {
            let other = if a == x && alive[b] {
                b
            } else if b == x && alive[a] {
                a
            } else {
                continue;
            };
            deg[other] -= 1;
            if deg[other] == 1 {
                stack.push(other);
            }
        }
    }
    (0..g.v).filter(|&x| alive[x] && deg[x] >= 3).collect()
}

/// `v_c + h − v`.
pub fn defect(g: &HairyGraph) -> usize {
    if g.is_line() {
        return 0;
    }
    let vc = core_vertices(g).len();
    (vc + g.hairs.len())
        .checked_sub(g.v)
        .expect("a hairy graph has at most v_c + h internal vertices")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_defects() {
        assert_eq!(defect(&HairyGraph::hedgehog(4)), 0);
        let theta_hair_at_vertex = HairyGraph::new(2, vec![(0, 1); 3], vec![0]);
        assert_eq!(defect(&theta_hair_at_vertex), 1);
        // the same hair on an edge through a new trivalent vertex
        let theta_hair_on_edge = HairyGraph::new(3, vec![(0, 1), (0, 1), (0, 2), (2, 1)], vec![2]);
        assert_eq!(defect(&theta_hair_on_edge), 0);
        // trees have an empty core
        assert_eq!(defect(&HairyGraph::tripod()), 2);
    }

    #[test]
    fn worked_example_has_defect_four() {
        // K4 core v,w1,w2,w3 with subdivisions x1,x2 on w2-w3 and x3 on w2-w1, a vertex y1
        // joined to x1 and v, and antennas
        let edges = vec![
            (0, 1), (0, 2), (0, 3), (2, 4), (4, 5), (5, 3), (2, 6), (6, 1), (1, 3), (4, 7), (0, 7), (6, 8),
        ];
        let hairs = vec![7, 7, 5, 1, 1, 6, 8, 8];
        let g = HairyGraph::new(9, edges, hairs);
        g.validate(1).unwrap();
        assert_eq!(core_vertices(&g), vec![0, 1, 2, 3, 4]);
        assert_eq!(defect(&g), 4);
    }
}
