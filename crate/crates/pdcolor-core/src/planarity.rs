//! Graph planarity testing.
//!
//! The decision procedure decomposes the graph into biconnected components
//! and runs Demoucron's face-embedding algorithm on each: grow an embedded
//! subgraph, and at every step place a fragment into a face containing all
//! its attachment vertices, failing when some fragment has no admissible
//! face. Dense components are rejected early by the edge bound 3n - 6.
//!
//! Non-planar graphs get a certificate: an edge-minimal non-planar subgraph,
//! which is always a subdivision of K5 or K3,3.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::hypergraph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KuratowskiKind {
    K5,
    K33,
    /// The minimal subgraph did not classify; the graph is still non-planar.
    Unclassified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KuratowskiCertificate {
    pub kind: KuratowskiKind,
    /// Edges of the edge-minimal non-planar subgraph (a K5 or K3,3
    /// subdivision).
    pub edges: Vec<(usize, usize)>,
}

pub fn is_planar(g: &Graph) -> bool {
    for comp in biconnected_components(g) {
        if !component_planar(&comp) {
            return false;
        }
    }
    true
}

/// `None` when planar; otherwise an edge-minimal witness subgraph.
pub fn kuratowski_certificate(g: &Graph) -> Option<KuratowskiCertificate> {
    if is_planar(g) {
        return None;
    }
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    // Greedy edge minimization: drop any edge whose removal keeps the graph
    // non-planar. The fixed point is a Kuratowski subdivision.
    let mut k = 0;
    while k < edges.len() {
        let mut reduced = edges.clone();
        reduced.remove(k);
        let mut h = Graph::new(g.n);
        for &(a, b) in &reduced {
            h.add_edge(a, b);
        }
        if !is_planar(&h) {
            edges = reduced;
        } else {
            k += 1;
        }
    }
    Some(KuratowskiCertificate {
        kind: classify_subdivision(g.n, &edges),
        edges,
    })
}

/// Suppresses degree-2 vertices and recognizes K5 or K3,3.
fn classify_subdivision(n: usize, edges: &[(usize, usize)]) -> KuratowskiKind {
    let mut adj: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().insert(b);
        adj.entry(b).or_default().insert(a);
    }
    let _ = n;
    loop {
        let subdiv = adj
            .iter()
            .find(|(_, ns)| ns.len() == 2)
            .map(|(&v, ns)| {
                let mut it = ns.iter();
                (v, *it.next().unwrap(), *it.next().unwrap())
            });
        let Some((v, a, b)) = subdiv else { break };
        adj.remove(&v);
        adj.get_mut(&a).unwrap().remove(&v);
        adj.get_mut(&b).unwrap().remove(&v);
        if a != b {
            adj.get_mut(&a).unwrap().insert(b);
            adj.get_mut(&b).unwrap().insert(a);
        }
    }
    let degs: Vec<usize> = adj.values().map(|ns| ns.len()).collect();
    if adj.len() == 5 && degs.iter().all(|&d| d == 4) {
        return KuratowskiKind::K5;
    }
    if adj.len() == 6 && degs.iter().all(|&d| d == 3) {
        // Bipartition check: two-color by BFS.
        let verts: Vec<usize> = adj.keys().copied().collect();
        let mut color: BTreeMap<usize, u8> = BTreeMap::new();
        let mut queue = vec![verts[0]];
        color.insert(verts[0], 0);
        let mut ok = true;
        while let Some(v) = queue.pop() {
            let cv = color[&v];
            for &w in &adj[&v] {
                match color.get(&w) {
                    Some(&cw) if cw == cv => ok = false,
                    Some(_) => {}
                    None => {
                        color.insert(w, 1 - cv);
                        queue.push(w);
                    }
                }
            }
        }
        if ok {
            return KuratowskiKind::K33;
        }
    }
    KuratowskiKind::Unclassified
}

// ---------------------------------------------------------------------------
// Biconnected components (Hopcroft-Tarjan, iterative)

struct Component {
    /// Edges in local vertex indices, plus local vertex count.
    n: usize,
    edges: Vec<(usize, usize)>,
}

fn biconnected_components(g: &Graph) -> Vec<Component> {
    let adj = g.adjacency();
    let n = g.n;
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0usize;
    let mut estack: Vec<(usize, usize)> = Vec::new();
    let mut comps: Vec<Vec<(usize, usize)>> = Vec::new();

    // Iterative DFS: frames of (vertex, parent, next neighbor index).
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            if *idx < adj[v].len() {
                let w = adj[v][*idx];
                *idx += 1;
                if disc[w] == usize::MAX {
                    estack.push((v, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    estack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&mut (u, _, _)) = stack.last_mut() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        // u is an articulation point (or the root): pop the
                        // component containing edge (u, v).
                        let mut comp = Vec::new();
                        while let Some(&(a, b)) = estack.last() {
                            if disc[a] >= disc[v] || (a, b) == (u, v) {
                                comp.push(estack.pop().unwrap());
                                if (a, b) == (u, v) {
                                    break;
                                }
                            } else {
                                break;
                            }
                        }
                        if !comp.is_empty() {
                            comps.push(comp);
                        }
                    }
                }
            }
        }
    }

    comps
        .into_iter()
        .map(|edges| {
            let mut remap: BTreeMap<usize, usize> = BTreeMap::new();
            let mut local = Vec::with_capacity(edges.len());
            for (a, b) in edges {
                let next = remap.len();
                let la = *remap.entry(a).or_insert(next);
                let next = remap.len();
                let lb = *remap.entry(b).or_insert(next);
                local.push((la.min(lb), la.max(lb)));
            }
            local.sort_unstable();
            local.dedup();
            Component {
                n: remap.len(),
                edges: local,
            }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Demoucron on one biconnected component

fn component_planar(comp: &Component) -> bool {
    let (n, m) = (comp.n, comp.edges.len());
    if n <= 3 || m <= 3 {
        return true;
    }
    if m > 3 * n - 6 {
        return false;
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in &comp.edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let Some(cycle) = find_cycle(&adj) else {
        return true; // a forest
    };

    let mut in_h = vec![false; n];
    let mut h_edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let add_edge = |h: &mut BTreeSet<(usize, usize)>, a: usize, b: usize| {
        h.insert((a.min(b), a.max(b)));
    };
    for &v in &cycle {
        in_h[v] = true;
    }
    for k in 0..cycle.len() {
        add_edge(&mut h_edges, cycle[k], cycle[(k + 1) % cycle.len()]);
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle];

    loop {
        let fragments = find_fragments(&adj, &in_h, &h_edges);
        if fragments.is_empty() {
            return true;
        }
        // Admissible faces per fragment; embed the most constrained one.
        let mut best: Option<(usize, usize, usize)> = None; // (count, frag, face)
        for (fi, frag) in fragments.iter().enumerate() {
            let mut count = 0;
            let mut first = usize::MAX;
            for (k, face) in faces.iter().enumerate() {
                let fset: BTreeSet<usize> = face.iter().copied().collect();
                if frag.attachments.iter().all(|a| fset.contains(a)) {
                    count += 1;
                    if first == usize::MAX {
                        first = k;
                    }
                }
            }
            if count == 0 {
                return false;
            }
            if best.map_or(true, |(c, _, _)| count < c) {
                best = Some((count, fi, first));
            }
        }
        let (_, fi, face_idx) = best.unwrap();
        let frag = &fragments[fi];
        let path = fragment_path(&adj, &in_h, frag);
        debug_assert!(path.len() >= 2);
        for w in path.windows(2) {
            add_edge(&mut h_edges, w[0], w[1]);
        }
        for &v in &path[1..path.len() - 1] {
            in_h[v] = true;
        }
        split_face(&mut faces, face_idx, &path);
    }
}

fn find_cycle(adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut state = vec![0u8; n]; // 0 unseen, 1 on stack, 2 done
    for root in 0..n {
        if state[root] != 0 {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        state[root] = 1;
        while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
            if *idx < adj[v].len() {
                let w = adj[v][*idx];
                *idx += 1;
                if w == parent[v] {
                    continue;
                }
                if state[w] == 1 {
                    // Back edge: walk parents from v to w.
                    let mut cyc = vec![v];
                    let mut cur = v;
                    while cur != w {
                        cur = parent[cur];
                        cyc.push(cur);
                    }
                    return Some(cyc);
                }
                if state[w] == 0 {
                    parent[w] = v;
                    state[w] = 1;
                    stack.push((w, 0));
                }
            } else {
                state[v] = 2;
                stack.pop();
            }
        }
    }
    None
}

struct Fragment {
    attachments: Vec<usize>,
    /// Non-embedded vertices of the fragment; empty for a chord.
    inner: Vec<usize>,
    /// For a chord fragment, its single edge.
    chord: Option<(usize, usize)>,
}

fn find_fragments(
    adj: &[Vec<usize>],
    in_h: &[bool],
    h_edges: &BTreeSet<(usize, usize)>,
) -> Vec<Fragment> {
    let n = adj.len();
    let mut frags = Vec::new();
    // Chords: non-embedded edges between embedded vertices.
    for a in 0..n {
        for &b in &adj[a] {
            if a < b && in_h[a] && in_h[b] && !h_edges.contains(&(a, b)) {
                frags.push(Fragment {
                    attachments: vec![a, b],
                    inner: Vec::new(),
                    chord: Some((a, b)),
                });
            }
        }
    }
    // Components of G minus the embedded vertices, with their attachments.
    let mut seen = vec![false; n];
    for s in 0..n {
        if in_h[s] || seen[s] {
            continue;
        }
        let mut inner = vec![s];
        let mut attach: BTreeSet<usize> = BTreeSet::new();
        seen[s] = true;
        let mut queue = vec![s];
        while let Some(v) = queue.pop() {
            for &w in &adj[v] {
                if in_h[w] {
                    attach.insert(w);
                } else if !seen[w] {
                    seen[w] = true;
                    inner.push(w);
                    queue.push(w);
                }
            }
        }
        frags.push(Fragment {
            attachments: attach.into_iter().collect(),
            inner,
            chord: None,
        });
    }
    frags
}

/// A path through the fragment between two distinct attachment vertices.
fn fragment_path(adj: &[Vec<usize>], in_h: &[bool], frag: &Fragment) -> Vec<usize> {
    if let Some((a, b)) = frag.chord {
        return vec![a, b];
    }
    debug_assert!(frag.attachments.len() >= 2, "biconnected input expected");
    let start = frag.attachments[0];
    let goal = frag.attachments[1];
    // BFS from `start` through inner vertices only.
    let inner: BTreeSet<usize> = frag.inner.iter().copied().collect();
    let mut prev: BTreeMap<usize, usize> = BTreeMap::new();
    let mut queue: Vec<usize> = Vec::new();
    for &w in &adj[start] {
        if inner.contains(&w) && !prev.contains_key(&w) {
            prev.insert(w, start);
            queue.push(w);
        }
    }
    let mut qi = 0;
    while qi < queue.len() {
        let v = queue[qi];
        qi += 1;
        for &w in &adj[v] {
            if w == goal {
                let mut path = vec![goal, v];
                let mut cur = v;
                while cur != start {
                    cur = prev[&cur];
                    path.push(cur);
                }
                path.reverse();
                return path;
            }
            if inner.contains(&w) && !prev.contains_key(&w) {
                prev.insert(w, v);
                queue.push(w);
            }
        }
    }
    // In a biconnected graph the goal is always reachable.
    let _ = in_h;
    unreachable!("fragment path not found");
}

/// Replaces face `face_idx` (whose cycle contains both endpoints of `path`)
/// with the two faces obtained by routing the path across it.
fn split_face(faces: &mut Vec<Vec<usize>>, face_idx: usize, path: &[usize]) {
    let cycle = faces.swap_remove(face_idx);
    let u = path[0];
    let v = *path.last().unwrap();
    let iu = cycle.iter().position(|&x| x == u).unwrap();
    let iv = cycle.iter().position(|&x| x == v).unwrap();
    let len = cycle.len();
    // Arc from u to v walking forward, and from v to u.
    let mut arc_uv = Vec::new();
    let mut k = iu;
    loop {
        arc_uv.push(cycle[k]);
        if k == iv {
            break;
        }
        k = (k + 1) % len;
    }
    let mut arc_vu = Vec::new();
    let mut k = iv;
    loop {
        arc_vu.push(cycle[k]);
        if k == iu {
            break;
        }
        k = (k + 1) % len;
    }
    let internals: Vec<usize> = path[1..path.len() - 1].to_vec();
    let mut f1 = arc_uv;
    f1.extend(internals.iter().rev().copied());
    let mut f2 = arc_vu;
    f2.extend(internals.iter().copied());
    faces.push(f1);
    faces.push(f2);
}

// ---------------------------------------------------------------------------
// Brute-force oracle: exhaustive rotation-system search

/// Exhaustive embedding search: the graph is planar iff some rotation system
/// of every connected component traces `2 - v + e` faces. Returns `None`
/// when the number of rotation systems exceeds `max_rotations`.
pub fn planar_by_embedding_search(g: &Graph, max_rotations: u64) -> Option<bool> {
    let adj = g.adjacency();
    let mut seen = vec![false; g.n];
    for root in 0..g.n {
        if seen[root] {
            continue;
        }
        // Collect the component.
        let mut comp = vec![root];
        seen[root] = true;
        let mut qi = 0;
        while qi < comp.len() {
            let v = comp[qi];
            qi += 1;
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        if !component_embeddable(&comp, &adj, max_rotations)? {
            return Some(false);
        }
    }
    Some(true)
}

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product::<u64>().max(1)
}

fn component_embeddable(comp: &[usize], adj: &[Vec<usize>], max_rotations: u64) -> Option<bool> {
    let e: usize = comp.iter().map(|&v| adj[v].len()).sum::<usize>() / 2;
    if e < 2 {
        return Some(true);
    }
    let mut total: u64 = 1;
    for &v in comp {
        let d = adj[v].len();
        total = total.saturating_mul(factorial(d.saturating_sub(1)));
        if total > max_rotations {
            return None;
        }
    }
    // All cyclic orders per vertex: permutations of neighbors with the first
    // neighbor pinned.
    let mut rotations: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
    for &v in comp {
        let ns = &adj[v];
        let mut all = Vec::new();
        if ns.len() <= 1 {
            all.push(ns.clone());
        } else {
            let mut rest: Vec<usize> = ns[1..].to_vec();
            permutations(&mut rest, 0, &mut |perm| {
                let mut rot = vec![ns[0]];
                rot.extend_from_slice(perm);
                all.push(rot);
            });
        }
        rotations.insert(v, all);
    }
    let verts: Vec<usize> = comp.to_vec();
    let mut choice = vec![0usize; verts.len()];
    let target_faces = 2 + e as i64 - verts.len() as i64;
    loop {
        let rot: BTreeMap<usize, &Vec<usize>> = verts
            .iter()
            .enumerate()
            .map(|(k, &v)| (v, &rotations[&v][choice[k]]))
            .collect();
        if count_faces(&rot) as i64 == target_faces {
            return Some(true);
        }
        // Odometer increment.
        let mut k = 0;
        loop {
            if k == verts.len() {
                return Some(false);
            }
            choice[k] += 1;
            if choice[k] < rotations[&verts[k]].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn permutations(items: &mut Vec<usize>, k: usize, emit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        emit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, emit);
        items.swap(k, i);
    }
}

/// Face count of the embedding given by the rotation system: orbits of darts
/// under "next dart of (u,v) is (v, w) with w following u in the rotation at
/// v" (counterclockwise face traversal).
fn count_faces(rot: &BTreeMap<usize, &Vec<usize>>) -> usize {
    let mut darts: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (&v, ns) in rot {
        for &w in ns.iter() {
            darts.insert((v, w));
        }
    }
    let mut faces = 0;
    let mut visited: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &start in &darts {
        if visited.contains(&start) {
            continue;
        }
        faces += 1;
        let mut cur = start;
        loop {
            visited.insert(cur);
            let (u, v) = cur;
            let ns = rot[&v];
            let pos = ns.iter().position(|&x| x == u).unwrap();
            let w = ns[(pos + 1) % ns.len()];
            cur = (v, w);
            if cur == start {
                break;
            }
        }
    }
    faces
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut g = Graph::new(n);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    fn k5() -> Graph {
        Graph::complete(5)
    }

    fn k33() -> Graph {
        let mut g = Graph::new(6);
        for a in 0..3 {
            for b in 3..6 {
                g.add_edge(a, b);
            }
        }
        g
    }

    #[test]
    fn small_planar_graphs() {
        assert!(is_planar(&Graph::new(0)));
        assert!(is_planar(&Graph::new(7)));
        assert!(is_planar(&graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])));
        assert!(is_planar(&Graph::complete(4)));
        // Octahedron: maximal planar on 6 vertices (m = 3n - 6).
        let oct = graph(
            6,
            &[
                (0, 1), (0, 2), (0, 3), (0, 4),
                (5, 1), (5, 2), (5, 3), (5, 4),
                (1, 2), (2, 3), (3, 4), (4, 1),
            ],
        );
        assert!(is_planar(&oct));
    }

    #[test]
    fn kuratowski_graphs_rejected() {
        assert!(!is_planar(&k5()));
        assert!(!is_planar(&k33()));
        let cert5 = kuratowski_certificate(&k5()).unwrap();
        assert_eq!(cert5.kind, KuratowskiKind::K5);
        assert_eq!(cert5.edges.len(), 10);
        let cert33 = kuratowski_certificate(&k33()).unwrap();
        assert_eq!(cert33.kind, KuratowskiKind::K33);
        assert_eq!(cert33.edges.len(), 9);
        assert!(kuratowski_certificate(&Graph::complete(4)).is_none());
    }

    #[test]
    fn certificate_reverifies_nonplanar() {
        let petersen = graph(
            10,
            &[
                (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
                (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
            ],
        );
        assert!(!is_planar(&petersen));
        let cert = kuratowski_certificate(&petersen).unwrap();
        // The Petersen graph's minimal non-planar subgraphs subdivide K3,3.
        assert_eq!(cert.kind, KuratowskiKind::K33);
        let mut h = Graph::new(10);
        for &(a, b) in &cert.edges {
            h.add_edge(a, b);
        }
        assert!(!is_planar(&h));
    }

    #[test]
    fn subdivision_detected() {
        // K5 with every edge subdivided once: 5 + 10 vertices.
        let mut g = Graph::new(15);
        let mut mid = 5;
        for a in 0..5usize {
            for b in a + 1..5 {
                g.add_edge(a, mid);
                g.add_edge(mid, b);
                mid += 1;
            }
        }
        assert!(!is_planar(&g));
        let cert = kuratowski_certificate(&g).unwrap();
        assert_eq!(cert.kind, KuratowskiKind::K5);
    }

    #[test]
    fn cut_vertices_handled() {
        // Two K4 blocks sharing vertex 0: planar.
        let mut g = Graph::new(7);
        for a in 0..4usize {
            for b in a + 1..4 {
                g.add_edge(a, b);
            }
        }
        for &a in &[0usize, 4, 5, 6] {
            for &b in &[0usize, 4, 5, 6] {
                if a < b {
                    g.add_edge(a, b);
                }
            }
        }
        assert!(is_planar(&g));
        // A K5 block hanging off a path is still detected.
        let mut h = Graph::new(8);
        h.add_edge(0, 1);
        h.add_edge(1, 2);
        for a in 3..8usize {
            for b in a + 1..8 {
                h.add_edge(a, b);
            }
        }
        h.add_edge(2, 3);
        assert!(!is_planar(&h));
    }

    #[test]
    fn agrees_with_embedding_search() {
        let cases = [
            graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]),
            Graph::complete(4),
            k33(),
            k5(),
            graph(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]),
            // Wheel on 6 vertices.
            graph(
                6,
                &[
                    (0, 1), (0, 2), (0, 3), (0, 4), (0, 5),
                    (1, 2), (2, 3), (3, 4), (4, 5), (5, 1),
                ],
            ),
            // K3,3 minus an edge: planar.
            graph(
                6,
                &[
                    (0, 3), (0, 4), (0, 5),
                    (1, 3), (1, 4), (1, 5),
                    (2, 3), (2, 4),
                ],
            ),
        ];
        for (k, g) in cases.iter().enumerate() {
            let oracle = planar_by_embedding_search(g, 2_000_000).expect("oracle within budget");
            assert_eq!(is_planar(g), oracle, "case {}", k);
        }
    }

    #[test]
    fn random_sparse_graphs_match_oracle() {
        // Deterministic LCG; graphs kept small so the oracle stays cheap.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as usize
        };
        for _ in 0..40 {
            let n = 5 + next() % 3;
            let mut g = Graph::new(n);
            let m = 4 + next() % (n + 2);
            for _ in 0..m {
                let a = next() % n;
                let b = next() % n;
                g.add_edge(a, b);
            }
            if let Some(oracle) = planar_by_embedding_search(&g, 500_000) {
                assert_eq!(is_planar(&g), oracle);
            }
        }
    }
}
