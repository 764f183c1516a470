//! Tarjan's strongly connected components over a small adjacency list.
//!
//! Returns SCCs in reverse topological order (dependencies first): if any
//! node of component `i` has an edge into component `j` with `i != j`, then
//! `j < i` in the output. Used for binding stratification and for ordering
//! let groups during type inference.

struct TarjanState {
    index: usize,
    indices: Vec<Option<usize>>,
    lowlinks: Vec<usize>,
    on_stack: Vec<bool>,
    stack: Vec<usize>,
    sccs: Vec<Vec<usize>>,
}

pub fn tarjan_scc(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut state = TarjanState {
        index: 0,
        indices: vec![None; n],
        lowlinks: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        sccs: Vec::new(),
    };
    for v in 0..n {
        if state.indices[v].is_none() {
            strongconnect(adj, &mut state, v);
        }
    }
    state.sccs
}

fn strongconnect(adj: &[Vec<usize>], state: &mut TarjanState, v: usize) {
    state.indices[v] = Some(state.index);
    state.lowlinks[v] = state.index;
    state.index += 1;
    state.stack.push(v);
    state.on_stack[v] = true;

    for &w in &adj[v] {
        if state.indices[w].is_none() {
            strongconnect(adj, state, w);
            state.lowlinks[v] = state.lowlinks[v].min(state.lowlinks[w]);
        } else if state.on_stack[w] {
            state.lowlinks[v] = state.lowlinks[v].min(state.indices[w].unwrap());
        }
    }

    if state.lowlinks[v] == state.indices[v].unwrap() {
        let mut scc = Vec::new();
        loop {
            let w = state.stack.pop().unwrap();
            state.on_stack[w] = false;
            scc.push(w);
            if w == v {
                break;
            }
        }
        scc.sort_unstable();
        state.sccs.push(scc);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_come_out_dependencies_first() {
        // 0 -> 1 -> 2, 2 -> 1 (cycle {1,2}), 3 isolated
        let adj = vec![vec![1], vec![2], vec![1], vec![]];
        let sccs = tarjan_scc(&adj);
        assert!(sccs.contains(&vec![1, 2]));
        let pos = |needle: &[usize]| sccs.iter().position(|s| s == needle).unwrap();
        assert!(pos(&[1, 2]) < pos(&[0]));
    }

    #[test]
    fn self_loop_is_its_own_component() {
        let adj = vec![vec![0]];
        assert_eq!(tarjan_scc(&adj), vec![vec![0]]);
    }
}
