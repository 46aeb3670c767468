//! Constructible sheaves as functors on the face poset: the pushforwards
//! ι_*∧^pΛ and ι_*∧^pΛ̌ in closed-support (homology coefficient) and
//! open-star (Čech section) flavors.
//!
//! Section lattices are expressed in the frame of an anchor top cell chosen
//! per simplex; restriction maps carry the parallel transport between anchor
//! frames along paths inside the relevant star. Around a singular stratum
//! these transports are where the monodromy enters the complexes.

use crate::arith::Int;
use crate::complex::DeltaComplex;
use crate::exterior;
use crate::lattice::Lattice;
use crate::local_system::LocalSystem;
use crate::matrix::Mat;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SheafError {
    #[error("wedge degree {0} exceeds system rank {1}")]
    DegreeOutOfRange(usize, usize),
    #[error("restriction image escapes the target lattice at incidence ({0}, {1})")]
    BadRestriction(usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SheafKind {
    /// sections over a small neighborhood of the closed simplex
    Closed,
    /// sections over the open star of the simplex
    Open,
}

/// Shared per-(complex, system) geometry: anchors, star transports, and
/// star-local monodromy generators.
pub struct SheafGeometry<'a> {
    pub cx: &'a DeltaComplex,
    pub sys: &'a LocalSystem,
    /// per simplex: the minimal top cell containing it
    pub anchors: Vec<usize>,
    /// per simplex: top cells of its closed star
    pub star_tops: Vec<Vec<usize>>,
    /// per simplex: transport from each star top cell to the anchor
    pub to_anchor: Vec<BTreeMap<usize, Mat>>,
    /// per simplex: star-local monodromy generators based at the anchor
    pub local_gens: Vec<Vec<Mat>>,
}

impl<'a> SheafGeometry<'a> {
    pub fn new(cx: &'a DeltaComplex, sys: &'a LocalSystem) -> SheafGeometry<'a> {
        let count = cx.simplex_count();
        let mut anchors = vec![0usize; count];
        let mut star_tops = vec![Vec::new(); count];
        let mut to_anchor = vec![BTreeMap::new(); count];
        let mut local_gens = vec![Vec::new(); count];
        for s in 0..count {
            let tops = cx.star_top_cells(s);
            let anchor = *tops.iter().min().expect("every simplex has a top coface");
            let tr = sys.star_transports(cx, &tops, anchor);
            debug_assert_eq!(tr.len(), tops.len(), "star dual graph connected");
            local_gens[s] = sys.star_monodromy_local(cx, &tops, anchor, &tr);
            anchors[s] = anchor;
            star_tops[s] = tops;
            to_anchor[s] = tr;
        }
        SheafGeometry {
            cx,
            sys,
            anchors,
            star_tops,
            to_anchor,
            local_gens,
        }
    }

    /// Transport from the anchor frame of sigma to the anchor frame of a face
    /// omega (path inside star(omega)).
    pub fn transport_to_face(&self, omega: usize, sigma: usize) -> &Mat {
        debug_assert!(self.cx.is_face_of(omega, sigma));
        &self.to_anchor[omega][&self.anchors[sigma]]
    }
}

/// A constructible sheaf presented by one lattice per simplex in the frame of
/// its anchor cell, plus transport data for the restriction maps.
pub struct SheafFunctor {
    pub kind: SheafKind,
    pub p: usize,
    pub n: usize,
    pub wedge_dim: usize,
    pub lattices: Vec<Lattice>,
    /// ∧^p transport matrices for face incidences: key (omega, sigma) with
    /// omega a face of sigma; value maps anchor(sigma)-frame wedge vectors to
    /// anchor(omega)-frame wedge vectors.
    wedge_transport: BTreeMap<(usize, usize), Mat>,
}

impl SheafFunctor {
    /// The pushforward ι_*∧^pΛ for the local system underlying `geom`.
    pub fn pushforward(
        geom: &SheafGeometry,
        p: usize,
        kind: SheafKind,
    ) -> Result<SheafFunctor, SheafError> {
        let n = geom.sys.rank();
        if p > n {
            return Err(SheafError::DegreeOutOfRange(p, n));
        }
        let cx = geom.cx;
        let count = cx.simplex_count();
        let wedge_dim = exterior::binomial(n, p);
        // open-kind lattices first
        let open: Vec<Lattice> = (0..count)
            .map(|s| LocalSystem::invariant_lattice(&geom.local_gens[s], n, p))
            .collect();
        // wedge transports on facet incidences (enough for the complexes) and
        // on all face incidences needed for closed lattices.
        let mut wedge_transport: BTreeMap<(usize, usize), Mat> = BTreeMap::new();
        for sigma in 0..count {
            for &(omega, _) in cx.facets_of(sigma) {
                let w = exterior::exterior_power_matrix(geom.transport_to_face(omega, sigma), p);
                wedge_transport.insert((omega, sigma), w);
            }
        }
        let lattices = match kind {
            SheafKind::Open => open,
            SheafKind::Closed => {
                // recursively: A_tau = open_tau ∩ (∩ over facets omega of the
                // pullback of A_omega along the facet transport)
                let mut closed: Vec<Option<Lattice>> = vec![None; count];
                for d in 0..=cx.dimension() {
                    for &tau in cx.ids_of_dim(d) {
                        let mut acc = open[tau].clone();
                        for &(omega, _) in cx.facets_of(tau) {
                            let w = &wedge_transport[&(omega, tau)];
                            let pulled = closed[omega]
                                .as_ref()
                                .expect("facets processed first")
                                .apply(&w.inverse_unimodular());
                            acc = acc.intersect(&pulled);
                        }
                        closed[tau] = Some(acc);
                    }
                }
                closed.into_iter().map(|l| l.unwrap()).collect()
            }
        };
        Ok(SheafFunctor {
            kind,
            p,
            n,
            wedge_dim,
            lattices,
            wedge_transport,
        })
    }

    /// Constant sheaf of rank `dim` (trivial transports), any kind.
    pub fn constant(cx: &DeltaComplex, dim: usize, kind: SheafKind) -> SheafFunctor {
        let count = cx.simplex_count();
        let mut wedge_transport = BTreeMap::new();
        for sigma in 0..count {
            for &(omega, _) in cx.facets_of(sigma) {
                wedge_transport.insert((omega, sigma), Mat::identity(dim));
            }
        }
        SheafFunctor {
            kind,
            p: 0,
            n: dim,
            wedge_dim: dim,
            lattices: vec![Lattice::full(dim); count],
            wedge_transport,
        }
    }

    pub fn rank_at(&self, simplex: usize) -> usize {
        self.lattices[simplex].rank()
    }

    /// Closed-kind restriction along a facet inclusion, in chosen bases:
    /// columns express the images of A_sigma basis vectors in the A_tau basis.
    pub fn restriction(&self, sigma: usize, tau: usize) -> Result<Mat, SheafError> {
        debug_assert_eq!(self.kind, SheafKind::Closed);
        let w = &self.wedge_transport[&(tau, sigma)];
        let moved = w.mul(self.lattices[sigma].basis());
        self.lattices[tau]
            .coordinates_of(&moved)
            .ok_or(SheafError::BadRestriction(sigma, tau))
    }

    /// Open-kind restriction from the star of tau into the star of a cofacet
    /// sigma, in chosen bases.
    pub fn corestriction(&self, tau: usize, sigma: usize) -> Result<Mat, SheafError> {
        debug_assert_eq!(self.kind, SheafKind::Open);
        let w = self.wedge_transport[&(tau, sigma)].inverse_unimodular();
        let moved = w.mul(self.lattices[tau].basis());
        self.lattices[sigma]
            .coordinates_of(&moved)
            .ok_or(SheafError::BadRestriction(tau, sigma))
    }

    /// Ambient (wedge-coordinate) transport from anchor(sigma) to
    /// anchor(omega) for a face pair.
    pub fn transport_matrix(&self, omega: usize, sigma: usize) -> &Mat {
        &self.wedge_transport[&(omega, sigma)]
    }
}

/// The dual pairing of a closed-kind section of ∧^pΛ and an open-kind section
/// of ∧^pΛ̌ over the same simplex, both in their common anchor frame; plain
/// dual-basis evaluation.
pub fn stalk_pairing_tr(a: &[Int], b: &[Int]) -> Int {
    assert_eq!(a.len(), b.len());
    let mut acc = Int::from(0);
    for (x, y) in a.iter().zip(b.iter()) {
        acc += x * y;
    }
    acc
}

/// A general functor on the face poset: one free abelian group per simplex,
/// one matrix per facet incidence (from the sigma group to the tau group).
pub struct AbstractFunctor {
    pub ranks: Vec<usize>,
    pub maps: BTreeMap<(usize, usize), Mat>,
}

impl AbstractFunctor {
    pub fn from_closed_sheaf(cx: &DeltaComplex, sheaf: &SheafFunctor) -> AbstractFunctor {
        let ranks = (0..cx.simplex_count()).map(|s| sheaf.rank_at(s)).collect();
        let mut maps = BTreeMap::new();
        for sigma in 0..cx.simplex_count() {
            for &(tau, _) in cx.facets_of(sigma) {
                maps.insert(
                    (sigma, tau),
                    sheaf.restriction(sigma, tau).expect("valid restriction"),
                );
            }
        }
        AbstractFunctor { ranks, maps }
    }

    /// Composition compatibility on 2-step face chains: both facet routes
    /// from sigma down to each codimension-2 face agree up to the boundary
    /// sign identity (checked without signs: equality of the two composites).
    pub fn check_compositions(&self, cx: &DeltaComplex) -> bool {
        for sigma in 0..cx.simplex_count() {
            let mut routes: BTreeMap<usize, Vec<Mat>> = BTreeMap::new();
            for &(tau, _) in cx.facets_of(sigma) {
                for &(rho, _) in cx.facets_of(tau) {
                    let m = self.maps[&(tau, rho)].mul(&self.maps[&(sigma, tau)]);
                    routes.entry(rho).or_default().push(m);
                }
            }
            for (_, ms) in routes {
                for m in &ms[1..] {
                    if *m != ms[0] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap as Map;

    fn wheel_with_seam() -> (DeltaComplex, LocalSystem) {
        let m = 6usize;
        let tris: Vec<Vec<u32>> = (0..m)
            .map(|i| {
                let a = 1 + i as u32;
                let b = 1 + ((i + 1) % m) as u32;
                vec![0, a.min(b), a.max(b)]
            })
            .collect();
        let cx = DeltaComplex::new(2, m + 1, &tris, &[vec![0]], None).unwrap();
        let tops = cx.ids_of_dim(2);
        let g = cx.dual_graph(tops);
        let &(_, _, f) = g.edges.last().unwrap();
        let mut tr = Map::new();
        tr.insert(f, Mat::from_rows_i64(&[&[1, 1], &[0, 1]]));
        let ls = LocalSystem::new(&cx, 2, tr).unwrap();
        (cx, ls)
    }

    #[test]
    fn focus_focus_stalks() {
        let (cx, ls) = wheel_with_seam();
        let geom = SheafGeometry::new(&cx, &ls);
        let closed = SheafFunctor::pushforward(&geom, 1, SheafKind::Closed).unwrap();
        let open = SheafFunctor::pushforward(&geom, 1, SheafKind::Open).unwrap();
        let v0 = cx.lookup(&[0]).unwrap();
        assert_eq!(closed.rank_at(v0), 1);
        assert_eq!(open.rank_at(v0), 1);
        // simplices containing the singular vertex are rank 1 in closed kind
        for s in 0..cx.simplex_count() {
            let has_v0 = cx.vertices_of(s).contains(&0);
            let want = if has_v0 { 1 } else { 2 };
            assert_eq!(closed.rank_at(s), want, "simplex {:?}", cx.vertices_of(s));
            // open kind: only the vertex star itself wraps the singularity
            let want_open = if s == v0 { 1 } else { 2 };
            assert_eq!(open.rank_at(s), want_open);
        }
        // monotonicity under restriction: images land in face lattices
        let f = AbstractFunctor::from_closed_sheaf(&cx, &closed);
        assert!(f.check_compositions(&cx));
    }

    #[test]
    fn trivial_system_full_everywhere() {
        let cx = DeltaComplex::new(2, 4, &[vec![0, 1, 2], vec![1, 2, 3]], &[], None).unwrap();
        let ls = LocalSystem::new(&cx, 2, Map::new()).unwrap();
        let geom = SheafGeometry::new(&cx, &ls);
        for p in 0..=2 {
            let sh = SheafFunctor::pushforward(&geom, p, SheafKind::Closed).unwrap();
            for s in 0..cx.simplex_count() {
                assert_eq!(sh.rank_at(s), exterior::binomial(2, p));
            }
        }
    }

    #[test]
    fn pairing_tr_basics() {
        use crate::arith::int;
        assert_eq!(stalk_pairing_tr(&[int(1), int(0)], &[int(1), int(0)]), int(1));
        assert_eq!(stalk_pairing_tr(&[int(1), int(0)], &[int(0), int(1)]), int(0));
    }
}
