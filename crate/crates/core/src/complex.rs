//! Finite simplicial complexes with totally ordered vertices, facet signs,
//! discriminant and boundary flags, stars, dual graphs and barycentric
//! subdivision.

use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("simplex {0:?} has unsorted or repeated vertices")]
    BadVertexTuple(Vec<u32>),
    #[error("face {0:?} of simplex {1:?} is missing")]
    MissingFace(Vec<u32>, Vec<u32>),
    #[error("vertex id {0} out of range (vertex count {1})")]
    VertexOutOfRange(u32, usize),
    #[error("intersection {0:?} of two simplices is not a simplex of the complex")]
    BadIntersection(Vec<u32>),
    #[error("discriminant flag set is not a closed subcomplex (simplex {0})")]
    DeltaNotClosed(usize),
    #[error("boundary flag set is not a closed subcomplex (simplex {0})")]
    BoundaryNotClosed(usize),
    #[error("discriminant simplex {0} has codimension < 2")]
    DeltaCodim(usize),
    #[error("unknown simplex")]
    UnknownSimplex,
    #[error("complex is not an orientable pseudomanifold")]
    NotOrientable,
}

/// A finite simplicial complex. Simplices are stored in canonical order
/// (by dimension, then lexicographically on ascending vertex tuples) and the
/// index in that order is the simplex id.
#[derive(Clone, Debug)]
pub struct DeltaComplex {
    dimension: usize,
    vertex_count: usize,
    simplices: Vec<Vec<u32>>,
    index: BTreeMap<Vec<u32>, usize>,
    by_dim: Vec<Vec<usize>>,
    facets: Vec<Vec<(usize, i8)>>,
    cofacets: Vec<Vec<usize>>,
    in_delta: Vec<bool>,
    in_boundary: Vec<bool>,
}

/// Closed star of a simplex: all faces of all simplices containing the center.
#[derive(Clone, Debug)]
pub struct StarComplex {
    pub center: usize,
    /// sorted simplex ids
    pub members: Vec<usize>,
}

/// Undirected multigraph on top cells; edges carry the shared facet.
#[derive(Clone, Debug)]
pub struct DualGraph {
    /// sorted top simplex ids
    pub nodes: Vec<usize>,
    /// (node index a, node index b, facet simplex id), a < b, deterministic order
    pub edges: Vec<(usize, usize, usize)>,
}

impl DeltaComplex {
    /// Build from the list of all simplices (faces auto-completed), with
    /// explicit flag sets given as vertex tuples.
    pub fn new(
        dimension: usize,
        vertex_count: usize,
        generators: &[Vec<u32>],
        delta: &[Vec<u32>],
        boundary: Option<&[Vec<u32>]>,
    ) -> Result<DeltaComplex, ComplexError> {
        let mut set: BTreeMap<Vec<u32>, ()> = BTreeMap::new();
        for g in generators {
            let mut s = g.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != g.len() {
                return Err(ComplexError::BadVertexTuple(g.clone()));
            }
            for &v in &s {
                if v as usize >= vertex_count {
                    return Err(ComplexError::VertexOutOfRange(v, vertex_count));
                }
            }
            // insert all faces
            let k = s.len();
            for mask in 1u64..(1 << k) {
                let face: Vec<u32> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| s[i]).collect();
                set.insert(face, ());
            }
        }
        let mut simplices: Vec<Vec<u32>> = set.into_keys().collect();
        simplices.sort_by(|a, b| (a.len(), a.as_slice()).cmp(&(b.len(), b.as_slice())));
        let index: BTreeMap<Vec<u32>, usize> = simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let count = simplices.len();
        let mut by_dim = vec![Vec::new(); dimension + 1];
        for (i, s) in simplices.iter().enumerate() {
            let d = s.len() - 1;
            if d > dimension {
                return Err(ComplexError::BadVertexTuple(s.clone()));
            }
            by_dim[d].push(i);
        }
        let mut facets = vec![Vec::new(); count];
        let mut cofacets = vec![Vec::new(); count];
        for (i, s) in simplices.iter().enumerate() {
            if s.len() == 1 {
                continue;
            }
            for omit in 0..s.len() {
                let face: Vec<u32> = s
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != omit)
                    .map(|(_, &v)| v)
                    .collect();
                let fid = *index
                    .get(&face)
                    .ok_or_else(|| ComplexError::MissingFace(face.clone(), s.clone()))?;
                let sign = if omit % 2 == 0 { 1 } else { -1 };
                facets[i].push((fid, sign));
                cofacets[fid].push(i);
            }
        }
        let mut cx = DeltaComplex {
            dimension,
            vertex_count,
            simplices,
            index,
            by_dim,
            facets,
            cofacets,
            in_delta: vec![false; count],
            in_boundary: vec![false; count],
        };
        for d in delta {
            let id = cx.lookup(d).ok_or(ComplexError::UnknownSimplex)?;
            cx.in_delta[id] = true;
        }
        match boundary {
            Some(b) => {
                for t in b {
                    let id = cx.lookup(t).ok_or(ComplexError::UnknownSimplex)?;
                    cx.in_boundary[id] = true;
                }
            }
            None => cx.compute_boundary_flags(),
        }
        cx.validate()?;
        Ok(cx)
    }

    /// Boundary = closure of facets contained in exactly one top cell.
    fn compute_boundary_flags(&mut self) {
        if self.dimension == 0 {
            return;
        }
        let mut flag = vec![false; self.simplices.len()];
        for &f in &self.by_dim[self.dimension - 1] {
            if self.cofacets[f].len() == 1 {
                flag[f] = true;
            }
        }
        // close under faces
        for d in (0..self.dimension.saturating_sub(1)).rev() {
            for &s in &self.by_dim[d] {
                if self.cofacets[s].iter().any(|&c| flag[c]) {
                    flag[s] = true;
                }
            }
        }
        self.in_boundary = flag;
    }

    fn validate(&self) -> Result<(), ComplexError> {
        // delta and boundary closed under faces
        for (i, _) in self.simplices.iter().enumerate() {
            if self.in_delta[i] {
                for &(f, _) in &self.facets[i] {
                    if !self.in_delta[f] {
                        return Err(ComplexError::DeltaNotClosed(i));
                    }
                }
                if self.dim_of(i) + 2 > self.dimension {
                    return Err(ComplexError::DeltaCodim(i));
                }
            }
            if self.in_boundary[i] {
                for &(f, _) in &self.facets[i] {
                    if !self.in_boundary[f] {
                        return Err(ComplexError::BoundaryNotClosed(i));
                    }
                }
            }
        }
        // pairwise intersections are simplices (Setup-style cell condition)
        let tops = &self.by_dim[self.dimension];
        for (a_i, &a) in tops.iter().enumerate() {
            for &b in tops.iter().skip(a_i + 1) {
                let mut inter: Vec<u32> = Vec::new();
                let (sa, sb) = (&self.simplices[a], &self.simplices[b]);
                let mut i = 0;
                let mut j = 0;
                while i < sa.len() && j < sb.len() {
                    match sa[i].cmp(&sb[j]) {
                        std::cmp::Ordering::Less => i += 1,
                        std::cmp::Ordering::Greater => j += 1,
                        std::cmp::Ordering::Equal => {
                            inter.push(sa[i]);
                            i += 1;
                            j += 1;
                        }
                    }
                }
                if !inter.is_empty() && self.lookup(&inter).is_none() {
                    return Err(ComplexError::BadIntersection(inter));
                }
            }
        }
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn simplex_count(&self) -> usize {
        self.simplices.len()
    }

    pub fn vertices_of(&self, id: usize) -> &[u32] {
        &self.simplices[id]
    }

    pub fn dim_of(&self, id: usize) -> usize {
        self.simplices[id].len() - 1
    }

    pub fn lookup(&self, verts: &[u32]) -> Option<usize> {
        self.index.get(verts).copied()
    }

    pub fn ids_of_dim(&self, d: usize) -> &[usize] {
        static EMPTY: Vec<usize> = Vec::new();
        if d <= self.dimension {
            &self.by_dim[d]
        } else {
            &EMPTY
        }
    }

    pub fn facets_of(&self, id: usize) -> &[(usize, i8)] {
        &self.facets[id]
    }

    pub fn cofacets_of(&self, id: usize) -> &[usize] {
        &self.cofacets[id]
    }

    pub fn in_delta(&self, id: usize) -> bool {
        self.in_delta[id]
    }

    pub fn in_boundary(&self, id: usize) -> bool {
        self.in_boundary[id]
    }

    pub fn delta_ids(&self) -> Vec<usize> {
        (0..self.simplices.len()).filter(|&i| self.in_delta[i]).collect()
    }

    pub fn boundary_ids(&self) -> Vec<usize> {
        (0..self.simplices.len()).filter(|&i| self.in_boundary[i]).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        let mut chi = 0i64;
        for d in 0..=self.dimension {
            let c = self.by_dim[d].len() as i64;
            chi += if d % 2 == 0 { c } else { -c };
        }
        chi
    }

    /// ε sign of a facet inclusion: (-1)^i where i is the index of the
    /// omitted vertex in sigma's ascending tuple.
    pub fn boundary_sign(&self, sigma: usize, tau: usize) -> Option<i8> {
        self.facets[sigma]
            .iter()
            .find(|&&(f, _)| f == tau)
            .map(|&(_, s)| s)
    }

    /// All faces of all simplices containing `center` (including itself).
    pub fn closed_star(&self, center: usize) -> StarComplex {
        let mut in_star = vec![false; self.simplices.len()];
        // cofaces of center: walk cofacets upward
        let mut stack = vec![center];
        let mut cofaces = Vec::new();
        let mut seen = vec![false; self.simplices.len()];
        seen[center] = true;
        while let Some(s) = stack.pop() {
            cofaces.push(s);
            for &c in &self.cofacets[s] {
                if !seen[c] {
                    seen[c] = true;
                    stack.push(c);
                }
            }
        }
        // all faces of the cofaces
        let mut stack = cofaces;
        while let Some(s) = stack.pop() {
            if in_star[s] {
                continue;
            }
            in_star[s] = true;
            for &(f, _) in &self.facets[s] {
                if !in_star[f] {
                    stack.push(f);
                }
            }
        }
        let members: Vec<usize> = (0..self.simplices.len()).filter(|&i| in_star[i]).collect();
        StarComplex { center, members }
    }

    /// W_{v1} ∩ ... ∩ W_{vk} = W_tau iff the vertices span a simplex tau.
    pub fn open_star_intersection(&self, vertices: &[u32]) -> Option<usize> {
        let mut s = vertices.to_vec();
        s.sort_unstable();
        s.dedup();
        self.lookup(&s)
    }

    /// Top cells of the closed star of `tau`.
    pub fn star_top_cells(&self, tau: usize) -> Vec<usize> {
        let star = self.closed_star(tau);
        star.members
            .into_iter()
            .filter(|&s| self.dim_of(s) == self.dimension)
            .collect()
    }

    /// Dual graph of a set of top cells: edges are shared interior facets
    /// not flagged as boundary.
    pub fn dual_graph(&self, region: &[usize]) -> DualGraph {
        let mut nodes: Vec<usize> = region.to_vec();
        nodes.sort_unstable();
        nodes.dedup();
        let pos: BTreeMap<usize, usize> = nodes.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut edges = Vec::new();
        let mut facet_ids: Vec<usize> = Vec::new();
        for &t in &nodes {
            for &(f, _) in &self.facets[t] {
                facet_ids.push(f);
            }
        }
        facet_ids.sort_unstable();
        facet_ids.dedup();
        for f in facet_ids {
            if self.in_boundary[f] {
                continue;
            }
            let touching: Vec<usize> = self.cofacets[f]
                .iter()
                .filter(|c| pos.contains_key(c))
                .copied()
                .collect();
            if touching.len() == 2 {
                let a = pos[&touching[0]];
                let b = pos[&touching[1]];
                let (a, b) = if a < b { (a, b) } else { (b, a) };
                edges.push((a, b, f));
            }
        }
        edges.sort_unstable();
        DualGraph { nodes, edges }
    }

    /// Barycentric subdivision. Returns the subdivided complex together with
    /// the carrier map: for every new simplex, the smallest old simplex
    /// containing it; and for every new vertex, the old simplex whose
    /// barycenter it is.
    pub fn barycentric(&self) -> (DeltaComplex, Vec<usize>, Vec<usize>) {
        // new vertex b_sigma for each old simplex sigma, ordered by
        // (dim sigma, id sigma) = simply by id (canonical order sorts by dim).
        let nv = self.simplices.len();
        // flags (chains inherit from their carrier = top of the chain)
        let mut gens: Vec<Vec<u32>> = Vec::new();
        let mut chains: Vec<Vec<usize>> = Vec::new();
        // enumerate maximal chains from each top simplex downward
        fn descend(
            cx: &DeltaComplex,
            chain: &mut Vec<usize>,
            gens: &mut Vec<Vec<u32>>,
            chains: &mut Vec<Vec<usize>>,
        ) {
            let last = *chain.last().unwrap();
            gens.push(chain.iter().map(|&s| s as u32).collect());
            chains.push(chain.clone());
            // recurse over every proper face, not only facets: the chains of
            // the face poset are exactly the simplices of the subdivision
            let verts = cx.vertices_of(last).to_vec();
            let k = verts.len();
            for mask in 1u64..((1 << k) - 1) {
                let face: Vec<u32> = (0..k)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| verts[i])
                    .collect();
                let f = cx.lookup(&face).expect("closed complex");
                chain.push(f);
                descend(cx, chain, gens, chains);
                chain.pop();
            }
        }
        for d in 0..=self.dimension {
            for &t in &self.by_dim[d] {
                // start chains at every simplex (ensures all faces generated)
                let mut chain = vec![t];
                descend(self, &mut chain, &mut gens, &mut chains);
            }
        }
        // normalize: gens currently are descending chains [big, ..., small];
        // ascending vertex tuples sort by id which matches dim order reversed.
        for g in &mut gens {
            g.sort_unstable();
        }
        let delta: Vec<Vec<u32>> = gens
            .iter()
            .zip(&chains)
            .filter(|(_, ch)| self.in_delta[ch[0]])
            .map(|(g, _)| g.clone())
            .collect();
        let bdry: Vec<Vec<u32>> = gens
            .iter()
            .zip(&chains)
            .filter(|(_, ch)| self.in_boundary[ch[0]])
            .map(|(g, _)| g.clone())
            .collect();
        let sub = DeltaComplex::new(self.dimension, nv, &gens, &delta, Some(&bdry))
            .expect("barycentric subdivision is a valid complex");
        // carriers
        let vertex_carrier: Vec<usize> = (0..nv).collect();
        let mut carrier = vec![0usize; sub.simplex_count()];
        for (i, s) in sub.simplices.iter().enumerate() {
            // carrier = largest old simplex in the chain = max id among verts
            let m = s.iter().map(|&v| v as usize).max().unwrap();
            carrier[i] = m;
        }
        (sub, carrier, vertex_carrier)
    }

    /// Full subcomplex on the vertices where `keep` is true. Returns the
    /// subcomplex and the map new simplex id -> old simplex id.
    pub fn full_subcomplex(&self, keep: &[bool]) -> (DeltaComplex, Vec<usize>) {
        assert_eq!(keep.len(), self.vertex_count);
        let gens: Vec<Vec<u32>> = self
            .simplices
            .iter()
            .filter(|s| s.iter().all(|&v| keep[v as usize]))
            .cloned()
            .collect();
        let delta: Vec<Vec<u32>> = gens
            .iter()
            .filter(|s| self.in_delta[self.index[*s]])
            .cloned()
            .collect();
        let bdry: Vec<Vec<u32>> = gens
            .iter()
            .filter(|s| self.in_boundary[self.index[*s]])
            .cloned()
            .collect();
        let dim = gens.iter().map(|s| s.len() - 1).max().unwrap_or(0);
        let sub = DeltaComplex::new(dim, self.vertex_count, &gens, &delta, Some(&bdry))
            .expect("full subcomplex is valid");
        let map: Vec<usize> = sub
            .simplices
            .iter()
            .map(|s| self.index[s])
            .collect();
        (sub, map)
    }

    /// The boundary subcomplex as a complex of dimension n-1, with the map
    /// new simplex id -> old simplex id. Delta flags are inherited.
    pub fn boundary_complex(&self) -> (DeltaComplex, Vec<usize>) {
        let gens: Vec<Vec<u32>> = (0..self.simplices.len())
            .filter(|&i| self.in_boundary[i])
            .map(|i| self.simplices[i].clone())
            .collect();
        let delta: Vec<Vec<u32>> = gens
            .iter()
            .filter(|s| self.in_delta[self.index[*s]])
            .cloned()
            .collect();
        let sub = DeltaComplex::new(
            self.dimension.saturating_sub(1),
            self.vertex_count,
            &gens,
            &delta,
            Some(&gens.iter().map(|_| Vec::new()).collect::<Vec<_>>()[..0]),
        );
        let sub = match sub {
            Ok(s) => s,
            Err(_) => {
                // boundary of a boundaryless complex: empty complex
                DeltaComplex::new(0, self.vertex_count, &[], &[], Some(&[])).unwrap()
            }
        };
        let map: Vec<usize> = sub.simplices.iter().map(|s| self.index[s]).collect();
        (sub, map)
    }

    /// Consistent orientation signs for the top cells of an orientable
    /// pseudomanifold (first top cell oriented +1 per component).
    pub fn orientation(&self) -> Result<Vec<i8>, ComplexError> {
        let tops = &self.by_dim[self.dimension];
        let pos: BTreeMap<usize, usize> = tops.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        let mut orient: Vec<Option<i8>> = vec![None; tops.len()];
        for start in 0..tops.len() {
            if orient[start].is_some() {
                continue;
            }
            orient[start] = Some(1);
            let mut queue = std::collections::VecDeque::new();
            queue.push_back(start);
            while let Some(i) = queue.pop_front() {
                let t = tops[i];
                for &(f, sign_t) in &self.facets[t] {
                    if self.cofacets[f].len() != 2 {
                        if self.cofacets[f].len() == 1 {
                            continue;
                        }
                        return Err(ComplexError::NotOrientable);
                    }
                    let other = if self.cofacets[f][0] == t {
                        self.cofacets[f][1]
                    } else {
                        self.cofacets[f][0]
                    };
                    let j = pos[&other];
                    let sign_o = self.boundary_sign(other, f).unwrap();
                    // induced orientations must cancel:
                    let need = -orient[i].unwrap() * sign_t * sign_o;
                    match orient[j] {
                        None => {
                            orient[j] = Some(need);
                            queue.push_back(j);
                        }
                        Some(x) if x == need => {}
                        Some(_) => return Err(ComplexError::NotOrientable),
                    }
                }
            }
        }
        Ok(orient.into_iter().map(|o| o.unwrap()).collect())
    }

    /// For a codimension-2 simplex rho, the cyclic (interior) or linear
    /// (boundary) sequence of top cells containing it, consecutive cells
    /// sharing a facet that contains rho. Returns (tops, shared facets);
    /// facets has the same length as tops for a cycle (facet i joins top i
    /// to top i+1 mod m) and length tops-1 for a path.
    pub fn codim2_wheel(&self, rho: usize) -> Option<(Vec<usize>, Vec<usize>)> {
        if self.dim_of(rho) + 2 != self.dimension {
            return None;
        }
        let tops = self.star_top_cells(rho);
        if tops.is_empty() {
            return None;
        }
        // facets containing rho
        let star = self.closed_star(rho);
        let mut adj: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for &f in &star.members {
            if self.dim_of(f) + 1 != self.dimension {
                continue;
            }
            if !self.is_face_of(rho, f) {
                continue;
            }
            let cof: Vec<usize> = self.cofacets[f].clone();
            if cof.len() == 2 {
                adj.entry(cof[0]).or_default().push((cof[1], f));
                adj.entry(cof[1]).or_default().push((cof[0], f));
            }
        }
        // walk: start from an endpoint (cell with one neighbor) else smallest
        let mut start = *tops.iter().min().unwrap();
        let mut is_path = false;
        for &t in &tops {
            if adj.get(&t).map_or(0, |v| v.len()) <= 1 {
                start = t;
                is_path = true;
                break;
            }
        }
        let mut order = vec![start];
        let mut facets = Vec::new();
        let mut prev_facet = usize::MAX;
        let mut cur = start;
        loop {
            let nbrs = adj.get(&cur).cloned().unwrap_or_default();
            let next = nbrs
                .iter()
                .find(|&&(_, f)| f != prev_facet)
                .copied();
            match next {
                Some((n, f)) => {
                    facets.push(f);
                    if n == start {
                        break; // closed cycle
                    }
                    order.push(n);
                    prev_facet = f;
                    cur = n;
                    if order.len() > tops.len() {
                        return None;
                    }
                }
                None => {
                    if !is_path {
                        return None;
                    }
                    break;
                }
            }
        }
        if order.len() != tops.len() {
            return None;
        }
        Some((order, facets))
    }

    pub fn is_face_of(&self, small: usize, big: usize) -> bool {
        let s = &self.simplices[small];
        let b = &self.simplices[big];
        let mut i = 0;
        for &v in b {
            if i < s.len() && s[i] == v {
                i += 1;
            }
        }
        i == s.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> DeltaComplex {
        DeltaComplex::new(2, 3, &[vec![0, 1, 2]], &[], None).unwrap()
    }

    #[test]
    fn signs() {
        let t = triangle();
        let e01 = t.lookup(&[0, 1]).unwrap();
        let e02 = t.lookup(&[0, 2]).unwrap();
        let v0 = t.lookup(&[0]).unwrap();
        let v1 = t.lookup(&[1]).unwrap();
        let top = t.lookup(&[0, 1, 2]).unwrap();
        assert_eq!(t.boundary_sign(e01, v1), Some(1));
        assert_eq!(t.boundary_sign(e01, v0), Some(-1));
        assert_eq!(t.boundary_sign(top, e02), Some(-1));
    }

    #[test]
    fn stars_and_dual() {
        let t = triangle();
        let v0 = t.lookup(&[0]).unwrap();
        let star = t.closed_star(v0);
        assert_eq!(star.members.len(), t.simplex_count());
        let top = t.lookup(&[0, 1, 2]).unwrap();
        let star_top = t.closed_star(top);
        assert_eq!(star_top.members.len(), 7);

        // two triangles glued on an edge -> path graph on 2 nodes
        let two = DeltaComplex::new(2, 4, &[vec![0, 1, 2], vec![1, 2, 3]], &[], None).unwrap();
        let tops: Vec<usize> = two.ids_of_dim(2).to_vec();
        let g = two.dual_graph(&tops);
        assert_eq!(g.nodes.len(), 2);
        assert_eq!(g.edges.len(), 1);
    }

    #[test]
    fn open_star_lookup() {
        let two = DeltaComplex::new(2, 4, &[vec![0, 1, 2], vec![1, 2, 3]], &[], None).unwrap();
        assert!(two.open_star_intersection(&[1]).is_some());
        assert!(two.open_star_intersection(&[1, 2]).is_some());
        assert_eq!(two.open_star_intersection(&[0, 3]), None);
    }

    #[test]
    fn barycentric_counts() {
        let edge = DeltaComplex::new(1, 2, &[vec![0, 1]], &[], None).unwrap();
        let (sub, _, _) = edge.barycentric();
        assert_eq!(sub.ids_of_dim(0).len(), 3);
        assert_eq!(sub.ids_of_dim(1).len(), 2);

        let t = triangle();
        let (sub, carrier, _) = t.barycentric();
        assert_eq!(sub.ids_of_dim(2).len(), 6);
        assert_eq!(sub.euler_characteristic(), t.euler_characteristic());
        // every new top simplex is carried by the old top simplex
        let old_top = t.lookup(&[0, 1, 2]).unwrap();
        for &s in sub.ids_of_dim(2) {
            assert_eq!(carrier[s], old_top);
        }
    }

    #[test]
    fn boundary_flags() {
        let two = DeltaComplex::new(2, 4, &[vec![0, 1, 2], vec![1, 2, 3]], &[], None).unwrap();
        let shared = two.lookup(&[1, 2]).unwrap();
        assert!(!two.in_boundary(shared));
        let rim = two.lookup(&[0, 1]).unwrap();
        assert!(two.in_boundary(rim));
        let (b, _) = two.boundary_complex();
        assert_eq!(b.ids_of_dim(1).len(), 4);
    }

    #[test]
    fn orientation_disc() {
        let two = DeltaComplex::new(2, 4, &[vec![0, 1, 2], vec![1, 2, 3]], &[], None).unwrap();
        let o = two.orientation().unwrap();
        assert_eq!(o.len(), 2);
        // opposite induced signs on the shared edge
        let tops = two.ids_of_dim(2);
        let shared = two.lookup(&[1, 2]).unwrap();
        let s0 = two.boundary_sign(tops[0], shared).unwrap();
        let s1 = two.boundary_sign(tops[1], shared).unwrap();
        assert_eq!(o[0] as i32 * s0 as i32, -(o[1] as i32 * s1 as i32));
    }
}
