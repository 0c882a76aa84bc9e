//! Small named graphs used as fixtures.

use super::Graph;

/// `C_n` on `0..n` in cycle order.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least three vertices");
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Path `0 - 1 - … - (n-1)`.
pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|j| (0..j).map(move |i| (i, j))))
}

/// `K_{a,b}` with sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::from_edges(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))))
}

/// `K_{1,k}` with centre `0`.
pub fn star(k: usize) -> Graph {
    complete_bipartite(1, k)
}

/// Outer cycle `0..5`, spokes `i - i+5`, inner pentagram on `5..10`.
pub fn petersen() -> Graph {
    let mut g = Graph::new(10);
    for i in 0..5 {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(i, i + 5);
        g.add_edge(i + 5, (i + 2) % 5 + 5);
    }
    g
}

/// Mycielskian of `C_5`: cycle `0..5`, shadows `5..10` (shadow `i+5`
/// sees the cycle neighbors of `i`), hub `10` joined to every shadow.
pub fn grotzsch() -> Graph {
    let mut g = Graph::new(11);
    for i in 0..5 {
        let j = (i + 1) % 5;
        g.add_edge(i, j);
        g.add_edge(i + 5, j);
        g.add_edge(j + 5, i);
        g.add_edge(i + 5, 10);
    }
    g
}
