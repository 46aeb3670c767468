//! Chain complexes of constructible functors, homology with integer
//! invariants and representatives, star homology, the homology double
//! complex, and barycentric invariance checking.

use crate::arith::Int;
use crate::complex::DeltaComplex;
use crate::local_system::LocalSystem;
use crate::matrix::Mat;
use crate::sheaf::{AbstractFunctor, SheafFunctor, SheafGeometry, SheafKind};
use crate::snf;
use num_traits::{One, Signed, Zero};

/// One graded term: which simplices contribute, their block offsets.
#[derive(Clone, Debug)]
pub struct Term {
    pub simplices: Vec<usize>,
    pub offsets: Vec<usize>,
    pub total: usize,
}

impl Term {
    pub fn new(simplices: Vec<usize>, ranks: impl Fn(usize) -> usize) -> Term {
        let mut offsets = Vec::with_capacity(simplices.len());
        let mut total = 0;
        for &s in &simplices {
            offsets.push(total);
            total += ranks(s);
        }
        Term {
            simplices,
            offsets,
            total,
        }
    }

    pub fn offset_of(&self, simplex: usize) -> Option<usize> {
        self.simplices
            .iter()
            .position(|&s| s == simplex)
            .map(|i| self.offsets[i])
    }
}

/// Chain complex with homological grading: diffs[k] : terms[k+1] -> terms[k].
#[derive(Debug)]
pub struct GradedComplex {
    pub terms: Vec<Term>,
    pub diffs: Vec<Mat>,
}

impl GradedComplex {
    pub fn d_squared_is_zero(&self) -> bool {
        for k in 0..self.diffs.len().saturating_sub(1) {
            if !self.diffs[k].mul(&self.diffs[k + 1]).is_zero() {
                return false;
            }
        }
        true
    }

    pub fn euler_characteristic(&self) -> i64 {
        let mut chi = 0i64;
        for (k, t) in self.terms.iter().enumerate() {
            let c = t.total as i64;
            chi += if k % 2 == 0 { c } else { -c };
        }
        chi
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelMode {
    None,
    Delta,
    Boundary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    Integers,
    Rationals,
}

#[derive(Clone, Debug)]
pub struct HomologyGroup {
    pub degree: usize,
    pub betti: usize,
    pub torsion: Vec<Int>,
    /// columns are representative cycles in the coordinates of the
    /// corresponding term (empty over the rationals)
    pub representatives: Mat,
}

impl HomologyGroup {
    pub fn invariants(&self) -> (usize, Vec<Int>) {
        (self.betti, self.torsion.clone())
    }
}

/// Assemble the chain complex of a closed-kind functor over the simplices
/// accepted by `keep`.
pub fn assemble_chain(
    cx: &DeltaComplex,
    functor: &AbstractFunctor,
    keep: impl Fn(usize) -> bool,
) -> GradedComplex {
    let n = cx.dimension();
    let terms: Vec<Term> = (0..=n)
        .map(|d| {
            let simps: Vec<usize> = cx
                .ids_of_dim(d)
                .iter()
                .copied()
                .filter(|&s| keep(s) && functor.ranks[s] > 0)
                .collect();
            Term::new(simps, |s| functor.ranks[s])
        })
        .collect();
    let mut diffs = Vec::new();
    for k in 0..n {
        let src = &terms[k + 1];
        let dst = &terms[k];
        let mut d = Mat::zero(dst.total, src.total);
        for (si, &sigma) in src.simplices.iter().enumerate() {
            let s_off = src.offsets[si];
            for &(tau, sign) in cx.facets_of(sigma) {
                let Some(t_off) = dst.offset_of(tau) else {
                    continue;
                };
                let r = &functor.maps[&(sigma, tau)];
                for row in 0..r.rows() {
                    for col in 0..r.cols() {
                        let v = r.at(row, col);
                        if v.is_zero() {
                            continue;
                        }
                        let cur = if sign > 0 { v.clone() } else { -v.clone() };
                        let acc = d.at(t_off + row, s_off + col) + cur;
                        d.set(t_off + row, s_off + col, acc);
                    }
                }
            }
        }
        diffs.push(d);
    }
    GradedComplex { terms, diffs }
}

/// The chain complex C_•(P, A) of a closed-kind sheaf, absolute or relative
/// to the discriminant or boundary subcomplex.
pub fn chain_complex(cx: &DeltaComplex, sheaf: &SheafFunctor, rel: RelMode) -> GradedComplex {
    assert_eq!(sheaf.kind, SheafKind::Closed, "chain complexes take closed-kind sheaves");
    let functor = AbstractFunctor::from_closed_sheaf(cx, sheaf);
    assemble_chain(cx, &functor, |s| match rel {
        RelMode::None => true,
        RelMode::Delta => !cx.in_delta(s),
        RelMode::Boundary => !cx.in_boundary(s),
    })
}

/// Homology in one degree from the outgoing and incoming differentials.
pub fn homology_at(
    degree: usize,
    dim_k: usize,
    d_out: Option<&Mat>,
    d_in: Option<&Mat>,
    field: Field,
) -> HomologyGroup {
    if field == Field::Rationals {
        let rank_out = d_out.map_or(0, snf::rank);
        let rank_in = d_in.map_or(0, snf::rank);
        return HomologyGroup {
            degree,
            betti: dim_k - rank_out - rank_in,
            torsion: Vec::new(),
            representatives: Mat::zero(dim_k, 0),
        };
    }
    // cycles
    let z = match d_out {
        None => Mat::identity(dim_k),
        Some(d) => snf::kernel_basis(d),
    };
    let zr = z.cols();
    // boundaries in cycle coordinates
    let x = match d_in {
        None => Mat::zero(zr, 0),
        Some(d) => snf::solve(&z, d).expect("boundaries are cycles"),
    };
    let sm = snf::smith(&x);
    let betti = zr - sm.rank;
    let torsion: Vec<Int> = sm
        .divisors
        .iter()
        .filter(|d| !d.abs().is_one())
        .cloned()
        .collect();
    // representatives: free generators of coker(x) pulled back through z
    let u_inv = sm.u.inverse_unimodular();
    let mut rep_cols: Vec<Vec<Int>> = Vec::new();
    for i in sm.rank..zr {
        rep_cols.push(u_inv.column(i));
    }
    let reps_z = Mat::from_columns(zr, &rep_cols);
    let mut reps = z.mul(&reps_z);
    // reduce against the boundary lattice for deterministic reports
    if let Some(d) = d_in {
        let bl = snf::column_hnf(d);
        reps = reduce_columns_mod_lattice(&reps, &bl);
    }
    HomologyGroup {
        degree,
        betti,
        torsion,
        representatives: reps,
    }
}

/// Reduce each column of `m` modulo the lattice spanned by the columns of the
/// column-HNF matrix `h`.
pub fn reduce_columns_mod_lattice(m: &Mat, h: &Mat) -> Mat {
    if h.cols() == 0 {
        return m.clone();
    }
    // pivot row of each column of h = first nonzero row
    let mut out = m.clone();
    let pivots: Vec<(usize, usize)> = (0..h.cols())
        .map(|c| {
            let r = (0..h.rows())
                .find(|&r| !h.at(r, c).is_zero())
                .expect("HNF column nonzero");
            (r, c)
        })
        .collect();
    for col in 0..out.cols() {
        for &(pr, pc) in &pivots {
            let q = num_integer::Integer::div_floor(out.at(pr, col), h.at(pr, pc));
            if q.is_zero() {
                continue;
            }
            for r in 0..out.rows() {
                let v = out.at(r, col) - &q * h.at(pr * 0 + r, pc);
                out.set(r, col, v);
            }
        }
    }
    out
}

/// Homology of a graded complex in all degrees.
pub fn homology(complex: &GradedComplex, field: Field) -> Vec<HomologyGroup> {
    let n = complex.terms.len();
    (0..n)
        .map(|k| {
            let d_out = if k >= 1 { Some(&complex.diffs[k - 1]) } else { None };
            let d_in = if k < complex.diffs.len() {
                Some(&complex.diffs[k])
            } else {
                None
            };
            homology_at(k, complex.terms[k].total, d_out, d_in, field)
        })
        .collect()
}

/// Homology of the chain complex restricted to the closed star of `tau`.
pub fn star_homology(
    cx: &DeltaComplex,
    functor: &AbstractFunctor,
    tau: usize,
    field: Field,
) -> Vec<HomologyGroup> {
    let star = cx.closed_star(tau);
    let mut member = vec![false; cx.simplex_count()];
    for &m in &star.members {
        member[m] = true;
    }
    let complex = assemble_chain(cx, functor, |s| member[s]);
    homology(&complex, field)
}

/// Total complex of the closed-star double complex: columns indexed by
/// simplices tau, column tau holding C_•(P_tau, A); horizontal maps are the
/// signed inclusions C_i(P_tau, A) ⊂ C_i(P_tau', A) for tau' ⊂ tau.
pub fn double_complex_total(cx: &DeltaComplex, sheaf: &SheafFunctor) -> GradedComplex {
    assert_eq!(sheaf.kind, SheafKind::Closed);
    let functor = AbstractFunctor::from_closed_sheaf(cx, sheaf);
    let n = cx.dimension();
    // stars as membership tables
    let star_members: Vec<Vec<usize>> = (0..cx.simplex_count())
        .map(|t| cx.closed_star(t).members)
        .collect();
    // index pairs (tau, omega) with omega in star(tau); total degree =
    // dim tau + dim omega
    let mut pairs_by_degree: Vec<Vec<(usize, usize)>> = vec![Vec::new(); 2 * n + 1];
    for tau in 0..cx.simplex_count() {
        for &omega in &star_members[tau] {
            if functor.ranks[omega] == 0 {
                continue;
            }
            pairs_by_degree[cx.dim_of(tau) + cx.dim_of(omega)].push((tau, omega));
        }
    }
    for v in &mut pairs_by_degree {
        v.sort_unstable();
    }
    // terms with block offsets
    struct PairTerm {
        pairs: Vec<(usize, usize)>,
        offsets: Vec<usize>,
        total: usize,
    }
    let terms: Vec<PairTerm> = pairs_by_degree
        .iter()
        .map(|pairs| {
            let mut offsets = Vec::with_capacity(pairs.len());
            let mut total = 0;
            for &(_, omega) in pairs {
                offsets.push(total);
                total += functor.ranks[omega];
            }
            PairTerm {
                pairs: pairs.clone(),
                offsets,
                total,
            }
        })
        .collect();
    let locate = |deg: usize, pair: (usize, usize)| -> Option<usize> {
        let t = &terms[deg];
        t.pairs.binary_search(&pair).ok().map(|i| t.offsets[i])
    };
    let mut diffs = Vec::new();
    for m in 0..2 * n {
        let src = &terms[m + 1];
        let mut d = Mat::zero(terms[m].total, src.total);
        for (pi, &(tau, omega)) in src.pairs.iter().enumerate() {
            let off = src.offsets[pi];
            let i = cx.dim_of(omega); // vertical degree
            // vertical: star-homology boundary on omega (sign +)
            for &(om2, sign) in cx.facets_of(omega) {
                if let Some(doff) = locate(m, (tau, om2)) {
                    let r = &functor.maps[&(omega, om2)];
                    add_block(&mut d, doff, off, r, sign as i64);
                }
            }
            // horizontal: inclusion into smaller-tau columns, sign (-1)^i * eps
            for &(tau2, sign) in cx.facets_of(tau) {
                if let Some(doff) = locate(m, (tau2, omega)) {
                    let s = if i % 2 == 0 { sign as i64 } else { -(sign as i64) };
                    let ident = Mat::identity(functor.ranks[omega]);
                    add_block(&mut d, doff, off, &ident, s);
                }
            }
        }
        diffs.push(d);
    }
    let terms = terms
        .into_iter()
        .map(|t| {
            let simplices: Vec<usize> = t.pairs.iter().map(|&(_, o)| o).collect();
            Term {
                simplices,
                offsets: t.offsets,
                total: t.total,
            }
        })
        .collect();
    GradedComplex { terms, diffs }
}

fn add_block(d: &mut Mat, row_off: usize, col_off: usize, block: &Mat, scale: i64) {
    if scale == 0 {
        return;
    }
    let s = Int::from(scale);
    for r in 0..block.rows() {
        for c in 0..block.cols() {
            let v = block.at(r, c);
            if v.is_zero() {
                continue;
            }
            let acc = d.at(row_off + r, col_off + c) + v * &s;
            d.set(row_off + r, col_off + c, acc);
        }
    }
}

/// Invariance report: homology of the pushforward sheaf before and after one
/// barycentric subdivision.
#[derive(Debug)]
pub struct BarycentricReport {
    pub original: Vec<(usize, Vec<Int>)>,
    pub subdivided: Vec<(usize, Vec<Int>)>,
    pub equal: bool,
}

pub fn barycentric_invariance_check(
    cx: &DeltaComplex,
    sys: &LocalSystem,
    p: usize,
    rel: RelMode,
) -> BarycentricReport {
    let geom = SheafGeometry::new(cx, sys);
    let sheaf = SheafFunctor::pushforward(&geom, p, SheafKind::Closed).unwrap();
    let h1 = homology(&chain_complex(cx, &sheaf, rel), Field::Integers);
    let (sub, carrier, _) = cx.barycentric();
    let sys2 = sys.subdivided(cx, &sub, &carrier).unwrap();
    let geom2 = SheafGeometry::new(&sub, &sys2);
    let sheaf2 = SheafFunctor::pushforward(&geom2, p, SheafKind::Closed).unwrap();
    let h2 = homology(&chain_complex(&sub, &sheaf2, rel), Field::Integers);
    let a: Vec<(usize, Vec<Int>)> = h1.iter().map(|g| (g.betti, g.torsion.clone())).collect();
    let b: Vec<(usize, Vec<Int>)> = h2.iter().map(|g| (g.betti, g.torsion.clone())).collect();
    let equal = a == b;
    BarycentricReport {
        original: a,
        subdivided: b,
        equal,
    }
}

/// Alternating-sum consistency: sum (-1)^i rank C_i = sum (-1)^i betti_i.
pub fn euler_identity_holds(complex: &GradedComplex, groups: &[HomologyGroup]) -> bool {
    let chi_c = complex.euler_characteristic();
    let mut chi_h = 0i64;
    for g in groups {
        let b = g.betti as i64;
        chi_h += if g.degree % 2 == 0 { b } else { -b };
    }
    chi_c == chi_h
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn constant_functor(cx: &DeltaComplex, dim: usize) -> AbstractFunctor {
        let sheaf = SheafFunctor::constant(cx, dim, SheafKind::Closed);
        AbstractFunctor::from_closed_sheaf(cx, &sheaf)
    }

    #[test]
    fn circle_homology() {
        // boundary of a triangle
        let cx = DeltaComplex::new(1, 3, &[vec![0, 1], vec![1, 2], vec![0, 2]], &[], None).unwrap();
        let f = constant_functor(&cx, 1);
        let complex = assemble_chain(&cx, &f, |_| true);
        assert!(complex.d_squared_is_zero());
        let h = homology(&complex, Field::Integers);
        assert_eq!(h[0].betti, 1);
        assert_eq!(h[1].betti, 1);
        assert!(h[0].torsion.is_empty() && h[1].torsion.is_empty());
        assert!(euler_identity_holds(&complex, &h));
    }

    #[test]
    fn sphere_homology() {
        // boundary of a tetrahedron
        let cx = DeltaComplex::new(
            2,
            4,
            &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
            &[],
            None,
        )
        .unwrap();
        let f = constant_functor(&cx, 1);
        let complex = assemble_chain(&cx, &f, |_| true);
        let h = homology(&complex, Field::Integers);
        assert_eq!((h[0].betti, h[1].betti, h[2].betti), (1, 0, 1));
        let hq = homology(&complex, Field::Rationals);
        assert_eq!((hq[0].betti, hq[1].betti, hq[2].betti), (1, 0, 1));
    }

    #[test]
    fn torsion_presentation() {
        // RP^2-like test via explicit matrix: coker([2]) has torsion (2)
        let g = homology_at(0, 1, None, Some(&Mat::from_rows_i64(&[&[2]])), Field::Integers);
        assert_eq!(g.betti, 0);
        assert_eq!(g.torsion, vec![Int::from(2)]);
    }

    #[test]
    fn wheel_star_homology_matches_coinvariants() {
        // focus-focus wheel: star homology of the singular vertex has
        // H_0 = Z^2/(T-1)Z^2 glued = Z (betti 1, no torsion) per the
        // presentation sequence
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
        let gdual = cx.dual_graph(tops);
        let &(_, _, f) = gdual.edges.last().unwrap();
        let mut tr = BTreeMap::new();
        tr.insert(f, Mat::from_rows_i64(&[&[1, 1], &[0, 1]]));
        let ls = LocalSystem::new(&cx, 2, tr).unwrap();
        let geom = SheafGeometry::new(&cx, &ls);
        let sheaf = SheafFunctor::pushforward(&geom, 1, SheafKind::Closed).unwrap();
        let functor = AbstractFunctor::from_closed_sheaf(&cx, &sheaf);
        let v0 = cx.lookup(&[0]).unwrap();
        let h = star_homology(&cx, &functor, v0, Field::Integers);
        // Z^2 / (T - 1)Z^2 = Z ⊕ Z/1, then the rank-1 stalk at the center
        // glues into the invariant line: H_0 = Z^2/(im(T-1)) = Z x Z/1 = Z...
        // The presentation from the paper's section computation gives Z.
        assert_eq!(h[0].betti, 1);
        assert!(h[0].torsion.is_empty());
        assert_eq!(h[1].betti, 0);
        assert!(h[1].torsion.is_empty());
    }

    #[test]
    fn double_complex_matches_plain() {
        let cx = DeltaComplex::new(2, 4, &[vec![0, 1, 2], vec![1, 2, 3]], &[], None).unwrap();
        let ls = LocalSystem::new(&cx, 2, BTreeMap::new()).unwrap();
        let geom = SheafGeometry::new(&cx, &ls);
        let sheaf = SheafFunctor::pushforward(&geom, 1, SheafKind::Closed).unwrap();
        let total = double_complex_total(&cx, &sheaf);
        assert!(total.d_squared_is_zero());
        let plain = chain_complex(&cx, &sheaf, RelMode::None);
        let h_total = homology(&total, Field::Integers);
        let h_plain = homology(&plain, Field::Integers);
        for k in 0..=cx.dimension() {
            assert_eq!(h_total[k].betti, h_plain[k].betti, "degree {}", k);
            assert_eq!(h_total[k].torsion, h_plain[k].torsion);
        }
    }
}
