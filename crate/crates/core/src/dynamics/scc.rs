//! Terminal strongly connected components by an iterative Tarjan sweep.

/// A finite digraph on vertices `0..node_count()`.
pub(crate) trait Successors {
    type Iter<'a>: Iterator<Item = usize>
    where
        Self: 'a;

    fn node_count(&self) -> usize;
    fn successors(&self, v: usize) -> Self::Iter<'_>;
}

impl Successors for [Vec<usize>] {
    type Iter<'a> = std::iter::Copied<std::slice::Iter<'a, usize>>;

    fn node_count(&self) -> usize {
        self.len()
    }

    fn successors(&self, v: usize) -> Self::Iter<'_> {
        self[v].iter().copied()
    }
}

const UNSEEN: u32 = u32::MAX;

/// Components without outgoing arcs, each sorted ascending, ordered by their
/// smallest vertex.
pub(crate) fn terminal_sccs<G: Successors + ?Sized>(graph: &G) -> Vec<Vec<usize>> {
    let n = graph.node_count();
    assert!(
        n < UNSEEN as usize,
        "graph too large for 32-bit Tarjan indices"
    );
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0u32; n];
    let mut component = vec![UNSEEN; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut calls: Vec<(usize, G::Iter<'_>)> = Vec::new();
    let mut next_index = 0u32;
    let mut next_component = 0u32;
    let mut terminal = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        calls.push((root, graph.successors(root)));

        while let Some((v, successors)) = calls.last_mut() {
            let v = *v;
            if let Some(w) = successors.next() {
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    calls.push((w, graph.successors(w)));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            calls.pop();
            if let Some((parent, _)) = calls.last() {
                low[*parent] = low[*parent].min(low[v]);
            }
            if low[v] != index[v] {
                continue;
            }
            let id = next_component;
            next_component += 1;
            let mut members = Vec::new();
            loop {
                let w = stack.pop().expect("v is on the stack");
                on_stack[w] = false;
                component[w] = id;
                members.push(w);
                if w == v {
                    break;
                }
            }
            // Components finish in reverse topological order, so any arc
            // leaving this one points at an already numbered component.
            let closed = members
                .iter()
                .all(|&m| graph.successors(m).all(|s| component[s] == id));
            if closed {
                members.sort_unstable();
                terminal.push(members);
            }
        }
    }
    terminal.sort_unstable_by_key(|c| c[0]);
    terminal
}

/// Terminal SCCs of an arbitrary digraph given as adjacency lists.
pub fn digraph_attractors(adjacency: &[Vec<usize>]) -> Vec<Vec<usize>> {
    terminal_sccs(adjacency)
}
