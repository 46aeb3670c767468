//! Integer local systems on the complement of the discriminant, presented by
//! GL_n(Z) transition matrices on dual-graph edges of top cells.

use crate::arith::Int;
use crate::complex::DeltaComplex;
use crate::lattice::Lattice;
use crate::matrix::Mat;
use crate::{exterior, snf};
use num_traits::Signed;
use std::collections::{BTreeMap, VecDeque};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SystemError {
    #[error("transition on facet {0} is not unimodular")]
    NotUnimodular(usize),
    #[error("facet {0} is not an interior facet")]
    NotInteriorFacet(usize),
    #[error("transition matrix on facet {0} has wrong shape")]
    BadShape(usize),
    #[error("monodromy around interior codimension-2 simplex {0} (not in the discriminant) is nontrivial")]
    CocycleViolation(usize),
}

/// Local system of rank n presented by transitions across interior facets.
/// The transition stored for facet f maps stalk values on the smaller-id
/// top cell side to the larger-id side.
#[derive(Clone, Debug)]
pub struct LocalSystem {
    rank: usize,
    /// facet id -> matrix (identity if absent)
    transitions: BTreeMap<usize, Mat>,
    /// ordered-pair adjacency: (from_top, to_top) -> facet id
    pair_facet: BTreeMap<(usize, usize), usize>,
    /// base top cell of each dual-graph component
    base_cells: Vec<usize>,
    /// per top cell: its component's base
    base_of: BTreeMap<usize, usize>,
    /// per top cell: transport matrix taking values at the cell to values at
    /// its base, along the global spanning tree
    to_base: BTreeMap<usize, Mat>,
    /// facets that belong to the global spanning forest
    tree_facets: Vec<usize>,
}

impl LocalSystem {
    pub fn new(
        cx: &DeltaComplex,
        rank: usize,
        transitions: BTreeMap<usize, Mat>,
    ) -> Result<LocalSystem, SystemError> {
        let one = Int::from(1);
        for (&f, m) in &transitions {
            if cx.dim_of(f) + 1 != cx.dimension() || cx.cofacets_of(f).len() != 2 {
                return Err(SystemError::NotInteriorFacet(f));
            }
            if m.rows() != rank || m.cols() != rank {
                return Err(SystemError::BadShape(f));
            }
            if m.det().abs() != one {
                return Err(SystemError::NotUnimodular(f));
            }
        }
        let tops: Vec<usize> = cx.ids_of_dim(cx.dimension()).to_vec();
        let dual = cx.dual_graph(&tops);
        let mut pair_facet = BTreeMap::new();
        for &(a, b, f) in &dual.edges {
            pair_facet.insert((dual.nodes[a], dual.nodes[b]), f);
            pair_facet.insert((dual.nodes[b], dual.nodes[a]), f);
        }
        let mut ls = LocalSystem {
            rank,
            transitions,
            pair_facet,
            base_cells: Vec::new(),
            base_of: BTreeMap::new(),
            to_base: BTreeMap::new(),
            tree_facets: Vec::new(),
        };
        // spanning forest by BFS from the smallest unvisited cell
        let mut visited: BTreeMap<usize, bool> = tops.iter().map(|&t| (t, false)).collect();
        for &start in &tops {
            if visited[&start] {
                continue;
            }
            ls.base_cells.push(start);
            visited.insert(start, true);
            ls.base_of.insert(start, start);
            ls.to_base.insert(start, Mat::identity(rank));
            let mut queue = VecDeque::new();
            queue.push_back(start);
            while let Some(c) = queue.pop_front() {
                let nbrs: Vec<(usize, usize)> = ls
                    .pair_facet
                    .range((c, 0)..=(c, usize::MAX))
                    .map(|(&(_, to), &f)| (to, f))
                    .collect();
                for (to, f) in nbrs {
                    if visited[&to] {
                        continue;
                    }
                    visited.insert(to, true);
                    ls.base_of.insert(to, start);
                    let t_to_c = ls.facet_transport(to, c);
                    let m = ls.to_base[&c].mul(&t_to_c);
                    ls.to_base.insert(to, m);
                    ls.tree_facets.push(f);
                    queue.push_back(to);
                }
            }
        }
        ls.tree_facets.sort_unstable();
        Ok(ls)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn base_cells(&self) -> &[usize] {
        &self.base_cells
    }

    pub fn base_of(&self, top: usize) -> usize {
        self.base_of[&top]
    }

    pub fn to_base(&self, top: usize) -> &Mat {
        &self.to_base[&top]
    }

    pub fn transitions(&self) -> &BTreeMap<usize, Mat> {
        &self.transitions
    }

    pub fn is_tree_facet(&self, f: usize) -> bool {
        self.tree_facets.binary_search(&f).is_ok()
    }

    /// Transport across the facet shared by two adjacent top cells.
    pub fn facet_transport(&self, from: usize, to: usize) -> Mat {
        let f = *self
            .pair_facet
            .get(&(from, to))
            .expect("cells are not facet-adjacent");
        match self.transitions.get(&f) {
            None => Mat::identity(self.rank),
            Some(m) => {
                // stored orientation: smaller cofacet id -> larger
                if from < to {
                    m.clone()
                } else {
                    m.inverse_unimodular()
                }
            }
        }
    }

    /// Ordered product of transitions along a dual-graph walk.
    pub fn transport(&self, path: &[usize]) -> Mat {
        let mut m = Mat::identity(self.rank);
        for w in path.windows(2) {
            m = self.facet_transport(w[0], w[1]).mul(&m);
        }
        m
    }

    /// Transport matrices from each star top cell to the anchor, along a BFS
    /// tree of the star's dual graph (paths stay inside the star).
    pub fn star_transports(
        &self,
        cx: &DeltaComplex,
        star_tops: &[usize],
        anchor: usize,
    ) -> BTreeMap<usize, Mat> {
        let dual = cx.dual_graph(star_tops);
        let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &(a, b, _) in &dual.edges {
            adj.entry(dual.nodes[a]).or_default().push(dual.nodes[b]);
            adj.entry(dual.nodes[b]).or_default().push(dual.nodes[a]);
        }
        let mut out: BTreeMap<usize, Mat> = BTreeMap::new();
        out.insert(anchor, Mat::identity(self.rank));
        let mut queue = VecDeque::new();
        queue.push_back(anchor);
        while let Some(c) = queue.pop_front() {
            for &to in adj.get(&c).into_iter().flatten() {
                if out.contains_key(&to) {
                    continue;
                }
                let m = out[&c].mul(&self.facet_transport(to, c));
                out.insert(to, m);
                queue.push_back(to);
            }
        }
        out
    }

    /// Monodromy generators of the star of `tau`, conjugated to the global
    /// base cell through the spanning tree: one generator per non-tree dual
    /// edge of the star region.
    pub fn star_monodromy(&self, cx: &DeltaComplex, tau: usize) -> Vec<Mat> {
        let tops = cx.star_top_cells(tau);
        let dual = cx.dual_graph(&tops);
        let mut gens = Vec::new();
        for &(a, b, f) in &dual.edges {
            if self.is_tree_facet(f) {
                continue;
            }
            let (ca, cb) = (dual.nodes[a], dual.nodes[b]);
            let g = self
                .to_base[&cb]
                .mul(&self.facet_transport(ca, cb))
                .mul(&self.to_base[&ca].inverse_unimodular());
            gens.push(g);
        }
        gens
    }

    /// Star-local monodromy generators based at `anchor`, conjugated through
    /// star-internal paths only.
    pub fn star_monodromy_local(
        &self,
        cx: &DeltaComplex,
        star_tops: &[usize],
        _anchor: usize,
        to_anchor: &BTreeMap<usize, Mat>,
    ) -> Vec<Mat> {
        let dual = cx.dual_graph(star_tops);
        // rebuild the BFS tree used by star_transports to know local tree edges
        let mut gens = Vec::new();
        for &(a, b, f) in &dual.edges {
            let (ca, cb) = (dual.nodes[a], dual.nodes[b]);
            let g = to_anchor[&cb]
                .mul(&self.facet_transport(ca, cb))
                .mul(&to_anchor[&ca].inverse_unimodular());
            if g.is_identity() {
                continue; // tree edges and trivial loops contribute nothing
            }
            let _ = f;
            gens.push(g);
        }
        gens
    }

    /// Intersection of the fixed lattices of ∧^p g over all generators;
    /// the full lattice when there are none.
    pub fn invariant_lattice(gens: &[Mat], n: usize, p: usize) -> Lattice {
        assert!(p <= n);
        let dim = exterior::binomial(n, p);
        if gens.is_empty() {
            return Lattice::full(dim);
        }
        let mut stacked: Option<Mat> = None;
        for g in gens {
            let w = exterior::exterior_power_matrix(g, p);
            let m = w.sub(&Mat::identity(dim));
            stacked = Some(match stacked {
                None => m,
                Some(s) => s.vstack(&m),
            });
        }
        Lattice::kernel_of(&stacked.unwrap())
    }

    /// Dual local system: transitions replaced by inverse transpose.
    pub fn dual(&self, cx: &DeltaComplex) -> LocalSystem {
        let transitions: BTreeMap<usize, Mat> = self
            .transitions
            .iter()
            .map(|(&f, m)| (f, m.inverse_unimodular().transpose()))
            .collect();
        LocalSystem::new(cx, self.rank, transitions).expect("dual of valid system is valid")
    }

    /// Check the cocycle condition: identity monodromy around every interior
    /// codimension-2 simplex that is not in the discriminant. Returns the
    /// monodromy around each discriminant codimension-2 simplex (base-cell
    /// conjugated) for the caller to inspect.
    pub fn validate_cocycle(
        &self,
        cx: &DeltaComplex,
    ) -> Result<BTreeMap<usize, Mat>, SystemError> {
        let n = cx.dimension();
        if n < 2 {
            return Ok(BTreeMap::new());
        }
        let mut delta_monodromy = BTreeMap::new();
        for &rho in cx.ids_of_dim(n - 2) {
            if cx.in_boundary(rho) {
                continue;
            }
            let Some((tops, facets)) = cx.codim2_wheel(rho) else {
                continue;
            };
            if facets.len() != tops.len() {
                continue; // path, no loop
            }
            let mut m = Mat::identity(self.rank);
            for i in 0..tops.len() {
                let from = tops[i];
                let to = tops[(i + 1) % tops.len()];
                m = self.facet_transport(from, to).mul(&m);
            }
            if cx.in_delta(rho) {
                let g = self.to_base[&tops[0]]
                    .mul(&m)
                    .mul(&self.to_base[&tops[0]].inverse_unimodular());
                delta_monodromy.insert(rho, g);
            } else if !m.is_identity() {
                return Err(SystemError::CocycleViolation(rho));
            }
        }
        Ok(delta_monodromy)
    }

    /// Induced local system on the boundary complex: the transition across a
    /// boundary facet is the collar transport between the unique top cells
    /// over the two boundary cells, around the shared codimension-2 simplex.
    pub fn boundary_system(
        &self,
        cx: &DeltaComplex,
        bcx: &DeltaComplex,
        to_parent: &[usize],
    ) -> Result<LocalSystem, SystemError> {
        let bn = bcx.dimension();
        let mut transitions = BTreeMap::new();
        for &g in bcx.ids_of_dim(bn.saturating_sub(1)) {
            if bn == 0 {
                break;
            }
            let cof = bcx.cofacets_of(g);
            if cof.len() != 2 {
                continue;
            }
            let (b0, b1) = (cof[0].min(cof[1]), cof[0].max(cof[1]));
            // unique parent top cells over the two boundary (n-1)-cells
            let t0 = self.unique_top_over(cx, to_parent[b0]);
            let t1 = self.unique_top_over(cx, to_parent[b1]);
            let rho = to_parent[g];
            let (tops, facets) = cx
                .codim2_wheel(rho)
                .expect("boundary codim-2 simplex has a top-cell fan");
            assert_eq!(facets.len() + 1, tops.len(), "expected a boundary fan");
            // walk the fan from t0 to t1
            let p0 = tops.iter().position(|&t| t == t0).expect("t0 in fan");
            let p1 = tops.iter().position(|&t| t == t1).expect("t1 in fan");
            let mut m = Mat::identity(self.rank);
            if p0 <= p1 {
                for i in p0..p1 {
                    m = self.facet_transport(tops[i], tops[i + 1]).mul(&m);
                }
            } else {
                for i in (p1..p0).rev() {
                    m = self.facet_transport(tops[i + 1], tops[i]).mul(&m);
                }
            }
            if !m.is_identity() {
                transitions.insert(g, m);
            }
        }
        LocalSystem::new(bcx, self.rank, transitions)
    }

    fn unique_top_over(&self, cx: &DeltaComplex, boundary_cell: usize) -> usize {
        let cof = cx.cofacets_of(boundary_cell);
        debug_assert_eq!(cof.len(), 1, "boundary facet with one top cell");
        cof[0]
    }

    /// Induced system on a barycentric subdivision: a new interior facet
    /// carried by an old facet inherits its transition; facets interior to an
    /// old top cell carry the identity.
    pub fn subdivided(
        &self,
        cx: &DeltaComplex,
        sub: &DeltaComplex,
        carrier: &[usize],
    ) -> Result<LocalSystem, SystemError> {
        let n = sub.dimension();
        let mut transitions = BTreeMap::new();
        for &f in sub.ids_of_dim(n.saturating_sub(1)) {
            if n == 0 {
                break;
            }
            let cof = sub.cofacets_of(f);
            if cof.len() != 2 {
                continue;
            }
            let old = carrier[f];
            if cx.dim_of(old) == n {
                continue; // interior to an old cell: identity
            }
            debug_assert_eq!(cx.dim_of(old), n - 1);
            let Some(t_old) = self.transitions.get(&old) else {
                continue;
            };
            // orientation: stored for old facet as (smaller old top -> larger)
            let (c0, c1) = (cof[0].min(cof[1]), cof[0].max(cof[1]));
            let (o0, o1) = (carrier[c0], carrier[c1]);
            let old_cof = cx.cofacets_of(old);
            let (p0, p1) = (old_cof[0].min(old_cof[1]), old_cof[0].max(old_cof[1]));
            let m = if o0 == p0 && o1 == p1 {
                t_old.clone()
            } else if o0 == p1 && o1 == p0 {
                t_old.inverse_unimodular()
            } else {
                panic!("carrier mismatch in subdivision");
            };
            transitions.insert(f, m);
        }
        LocalSystem::new(sub, self.rank, transitions)
    }
}

/// Helper: the fixed lattice of a single matrix.
pub fn fixed_lattice(m: &Mat) -> Lattice {
    Lattice::kernel_of(&m.sub(&Mat::identity(m.rows())))
}

/// True if m is conjugate to a primitive transvection: (m-1)^2 = 0,
/// m != 1, and the image of m-1 is generated by a primitive vector with
/// content 1.
pub fn is_focus_focus(m: &Mat) -> bool {
    let n = m.rows();
    let d = m.sub(&Mat::identity(n));
    if d.is_zero() {
        return false;
    }
    if !d.mul(&d).is_zero() {
        return false;
    }
    let (div, rank) = snf::smith_divisors(&d);
    rank == 1 && div[0] == Int::from(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Wheel of m triangles around a central vertex 0, ring 1..=m.
    fn wheel(m: usize) -> DeltaComplex {
        let tris: Vec<Vec<u32>> = (0..m)
            .map(|i| {
                let a = 1 + i as u32;
                let b = 1 + ((i + 1) % m) as u32;
                vec![0, a.min(b), a.max(b)]
            })
            .collect();
        DeltaComplex::new(2, m + 1, &tris, &[vec![0]], None).unwrap()
    }

    fn seam_system(cx: &DeltaComplex, t: Mat) -> LocalSystem {
        // put the transition on the facet shared by the lexicographically
        // largest pair of top cells (one wheel facet)
        let tops = cx.ids_of_dim(2);
        let g = cx.dual_graph(tops);
        let &(a, b, f) = g.edges.last().unwrap();
        let _ = (a, b);
        let mut tr = BTreeMap::new();
        tr.insert(f, t);
        LocalSystem::new(cx, 2, tr).unwrap()
    }

    #[test]
    fn transport_and_monodromy() {
        let cx = wheel(6);
        let t = Mat::from_rows_i64(&[&[1, 1], &[0, 1]]);
        let ls = seam_system(&cx, t.clone());
        // empty path
        assert!(ls.transport(&[*cx.ids_of_dim(2).first().unwrap()]).is_identity());
        // loop around the center:
        let v0 = cx.lookup(&[0]).unwrap();
        let gens = ls.star_monodromy(&cx, v0);
        assert_eq!(gens.len(), 1);
        assert!(is_focus_focus(&gens[0]));
        let inv = LocalSystem::invariant_lattice(&gens, 2, 1);
        assert_eq!(inv.rank(), 1);
        // ring vertex stars carry no loops
        let v1 = cx.lookup(&[1]).unwrap();
        assert!(ls.star_monodromy(&cx, v1).is_empty());
        // cocycle validation: only the delta vertex has monodromy
        let dm = ls.validate_cocycle(&cx).unwrap();
        assert_eq!(dm.len(), 1);
    }

    #[test]
    fn dual_involution() {
        let cx = wheel(5);
        let t = Mat::from_rows_i64(&[&[1, 1], &[0, 1]]);
        let ls = seam_system(&cx, t.clone());
        let dual = ls.dual(&cx);
        let back = dual.dual(&cx);
        for (f, m) in ls.transitions() {
            assert_eq!(back.transitions()[f], *m);
        }
        // transvection dual is [[1,0],[-1,1]]
        let (_, m) = dual.transitions().iter().next().unwrap();
        assert_eq!(*m, Mat::from_rows_i64(&[&[1, 0], &[-1, 1]]));
    }

    #[test]
    fn invariant_lattice_props() {
        // two transvections along (1,1) and (1,-1): invariants are 0
        let t1 = Mat::from_rows_i64(&[&[2, 1], &[-1, 0]]); // transvection fixing (1,-1)? check below
        let t2 = Mat::from_rows_i64(&[&[0, 1], &[-1, 2]]);
        assert!(is_focus_focus(&t1));
        assert!(is_focus_focus(&t2));
        let both = LocalSystem::invariant_lattice(&[t1, t2], 2, 1);
        assert_eq!(both.rank(), 0);
        // determinant-one generators fix the top wedge
        let t = Mat::from_rows_i64(&[&[1, 1], &[0, 1]]);
        let top = LocalSystem::invariant_lattice(&[t], 2, 2);
        assert_eq!(top.rank(), 1);
    }
}
