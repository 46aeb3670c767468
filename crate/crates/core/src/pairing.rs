//! The cap-product pairing, perfectness diagnostics, Ω-contraction,
//! intersection numbers and gram classification.

use crate::arith::{int, Int};
use crate::chain::Term;
use crate::complex::DeltaComplex;
use crate::exterior;
use crate::matrix::Mat;
use crate::sheaf::{stalk_pairing_tr, SheafFunctor, SheafGeometry};
use crate::snf;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PairingError {
    #[error("degree mismatch between cycle and cochain data")]
    DegreeMismatch,
    #[error("representative is not a cycle")]
    NotACycle,
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("tangent data has wrong cardinality")]
    BadTangentData,
}

/// A tropical (p,q)-cycle: coefficients in the anchor frame of each cell.
#[derive(Clone, Debug)]
pub struct TropicalCycle {
    pub p: usize,
    pub q: usize,
    /// (q-simplex id, ambient wedge coordinates at the simplex anchor)
    pub cells: Vec<(usize, Vec<Int>)>,
}

impl TropicalCycle {
    /// Coordinates in a chain-complex term of degree q (basis coordinates of
    /// the per-simplex lattices). Errors if some coefficient leaves its
    /// sheaf lattice.
    pub fn term_coordinates(
        &self,
        sheaf: &SheafFunctor,
        term: &Term,
    ) -> Result<Vec<Int>, PairingError> {
        let mut out = vec![Int::zero(); term.total];
        for (simplex, coeff) in &self.cells {
            let Some(off) = term.offset_of(*simplex) else {
                if coeff.iter().any(|c| !c.is_zero()) {
                    return Err(PairingError::DegreeMismatch);
                }
                continue;
            };
            let m = Mat::from_columns(coeff.len(), &[coeff.clone()]);
            let coords = sheaf.lattices[*simplex]
                .coordinates_of(&m)
                .ok_or(PairingError::NotACycle)?;
            for r in 0..coords.rows() {
                out[off + r] += coords.at(r, 0);
            }
        }
        Ok(out)
    }

    /// Check ∂(cycle) = 0 against the chain complex differential leaving
    /// degree q.
    pub fn is_cycle(&self, sheaf: &SheafFunctor, term: &Term, diff: &Mat) -> bool {
        match self.term_coordinates(sheaf, term) {
            Err(_) => false,
            Ok(v) => diff.mul_vec(&v).iter().all(|x| x.is_zero()),
        }
    }
}

/// Gram matrix of the cap pairing with perfectness diagnostics.
#[derive(Debug)]
pub struct PairingReport {
    pub gram: Mat,
    pub rank_homology: usize,
    pub rank_cohomology: usize,
    pub divisors: Vec<Int>,
    pub perfect_over_q: bool,
    pub perfect_over_z: bool,
}

/// ⟨β, s⟩ = Σ_τ ⟨a_τ, b_τ⟩ over the common q-simplices, each summand
/// evaluated in the anchor frame of its simplex.
pub fn pair_vectors(
    sheaf_closed: &SheafFunctor,
    hterm: &Term,
    hvec: &[Int],
    sheaf_open_dual: &SheafFunctor,
    cterm: &Term,
    cvec: &[Int],
) -> Int {
    let mut acc = Int::zero();
    for (i, &tau) in hterm.simplices.iter().enumerate() {
        let Some(coff) = cterm.offset_of(tau) else {
            continue;
        };
        let hoff = hterm.offsets[i];
        let hrank = sheaf_closed.rank_at(tau);
        let crank = sheaf_open_dual.rank_at(tau);
        if hrank == 0 || crank == 0 {
            continue;
        }
        let a = sheaf_closed.lattices[tau]
            .basis()
            .mul_vec(&hvec[hoff..hoff + hrank].to_vec());
        let b = sheaf_open_dual.lattices[tau]
            .basis()
            .mul_vec(&cvec[coff..coff + crank].to_vec());
        acc += stalk_pairing_tr(&a, &b);
    }
    acc
}

/// Assemble the gram matrix of the pairing between homology representatives
/// (columns of hreps, coordinates in hterm) and cohomology representatives
/// (columns of creps, coordinates in cterm).
pub fn pairing_matrix(
    sheaf_closed: &SheafFunctor,
    hterm: &Term,
    hreps: &Mat,
    sheaf_open_dual: &SheafFunctor,
    cterm: &Term,
    creps: &Mat,
) -> PairingReport {
    let rows = hreps.cols();
    let cols = creps.cols();
    let gram = Mat::from_fn(rows, cols, |i, j| {
        pair_vectors(
            sheaf_closed,
            hterm,
            &hreps.column(i),
            sheaf_open_dual,
            cterm,
            &creps.column(j),
        )
    });
    let (div, rank) = snf::smith_divisors(&gram);
    let square = rows == cols;
    let perfect_over_q = square && rank == rows;
    let perfect_over_z = perfect_over_q && div.iter().all(|d| d.abs() == int(1));
    PairingReport {
        gram,
        rank_homology: rows,
        rank_cohomology: cols,
        divisors: div,
        perfect_over_q,
        perfect_over_z,
    }
}

/// Orientation sign ε(V, W): sign of det[basis_V | basis_W] relative to the
/// ambient orientation; 0 when the concatenation is singular.
pub fn eps_sign(basis_v: &Mat, basis_w: &Mat, omega_sign: i8) -> Result<i8, PairingError> {
    let n = basis_v.rows();
    if basis_w.rows() != n || basis_v.cols() + basis_w.cols() != n {
        return Err(PairingError::BadTangentData);
    }
    let d = basis_v.hstack(basis_w).det();
    let s = if d.is_zero() {
        0
    } else if d.is_positive() {
        1
    } else {
        -1
    };
    Ok(s * omega_sign)
}

/// One transverse intersection point: tangent bases and wedge coefficients
/// of the two cycles at the point, all in one common frame.
#[derive(Clone, Debug)]
pub struct IntersectionPoint {
    pub tangent_v: Mat,
    pub tangent_w: Mat,
    pub xi_v: Vec<Int>,
    pub xi_w: Vec<Int>,
}

/// Σ_x ε(T_V, T_W) (ξ^V ∧ ξ^W)/Ω over the listed points.
pub fn intersection_number(
    n: usize,
    p: usize,
    points: &[IntersectionPoint],
    omega_sign: i8,
) -> Result<Int, PairingError> {
    let mut acc = Int::zero();
    for pt in points {
        let eps = eps_sign(&pt.tangent_v, &pt.tangent_w, omega_sign)?;
        if eps == 0 {
            continue;
        }
        let r = exterior::wedge_ratio(n, p, &pt.xi_v, &pt.xi_w, omega_sign);
        acc += r * int(eps as i64);
    }
    Ok(acc)
}

/// Per-simplex Ω-contraction report: the contraction maps the closed-kind
/// lattice of ι_*∧^pΛ isomorphically onto that of ι_*∧^{n-p}Λ̌.
#[derive(Debug)]
pub struct ContractionReport {
    pub checked: usize,
    pub passed: bool,
}

pub fn omega_contraction_check(
    cx: &DeltaComplex,
    sheaf_p: &SheafFunctor,
    sheaf_dual_np: &SheafFunctor,
    omega_sign: i8,
) -> ContractionReport {
    let n = sheaf_p.n;
    let c = exterior::omega_contraction_matrix(n, sheaf_p.p, omega_sign);
    let mut passed = true;
    let mut checked = 0;
    for s in 0..cx.simplex_count() {
        let img = sheaf_p.lattices[s].apply(&c);
        let target = &sheaf_dual_np.lattices[s];
        checked += 1;
        if img != *target {
            passed = false;
        }
    }
    ContractionReport { checked, passed }
}

/// Lattice classification data of a symmetric gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramClassification {
    pub rank: usize,
    pub determinant: Int,
    pub even: bool,
    /// (positive, negative) inertia over the reals
    pub signature: (usize, usize),
}

pub fn gram_lattice_classify(gram: &Mat) -> Result<GramClassification, PairingError> {
    let n = gram.rows();
    if gram.cols() != n {
        return Err(PairingError::NotSymmetric);
    }
    for i in 0..n {
        for j in 0..i {
            if gram.at(i, j) != gram.at(j, i) {
                return Err(PairingError::NotSymmetric);
            }
        }
    }
    let even = (0..n).all(|i| (gram.at(i, i) % int(2)).is_zero());
    let determinant = gram.det();
    // symmetric congruence diagonalization with integer arithmetic
    let mut a: Vec<Vec<Int>> = (0..n).map(|r| gram.row(r)).collect();
    let mut pos = 0usize;
    let mut neg = 0usize;
    let mut used = vec![false; n];
    loop {
        let mut pivot = None;
        for i in 0..n {
            if !used[i] && !a[i][i].is_zero() {
                pivot = Some(i);
                break;
            }
        }
        if pivot.is_none() {
            let mut found = None;
            'outer: for i in 0..n {
                if used[i] {
                    continue;
                }
                for j in 0..n {
                    if !used[j] && j != i && !a[i][j].is_zero() {
                        found = Some((i, j));
                        break 'outer;
                    }
                }
            }
            let Some((i, j)) = found else {
                break;
            };
            for k in 0..n {
                let t = &a[i][k] + &a[j][k];
                a[i][k] = t;
            }
            for k in 0..n {
                let t = &a[k][i] + &a[k][j];
                a[k][i] = t;
            }
            pivot = Some(i);
        }
        let i = pivot.unwrap();
        used[i] = true;
        if a[i][i].is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        let piv = a[i][i].clone();
        for j in 0..n {
            if used[j] || a[j][i].is_zero() {
                continue;
            }
            let factor = a[j][i].clone();
            for k in 0..n {
                let t = &piv * &a[j][k] - &factor * &a[i][k];
                a[j][k] = t;
            }
            for k in 0..n {
                let t = &piv * &a[k][j] - &factor * &a[k][i];
                a[k][j] = t;
            }
        }
    }
    let rank = pos + neg;
    Ok(GramClassification {
        rank,
        determinant,
        even,
        signature: (pos, neg),
    })
}

/// A cocycle in the max-cell Čech complex representing the Poincaré–Lefschetz
/// image of a 1-cycle on a surface: components are ambient Λ-vectors indexed
/// by cover sets (pairs of top cells), each in the anchor frame of the
/// intersection simplex.
pub struct DualityCocycle {
    pub components: BTreeMap<Vec<usize>, Vec<Int>>,
}

/// Build the duality cocycle of a 1-cycle W on an oriented surface model:
/// the generator-pattern representative on the edge groups (from the
/// consistent identification) plus a per-vertex integer correction making it
/// an honest Čech cocycle (the E1-page lift).
pub fn duality_cocycle_surface(
    cx: &DeltaComplex,
    geom: &SheafGeometry,
    sheaf_closed: &SheafFunctor,
    id: &crate::cech::B7Identification,
    w: &TropicalCycle,
) -> Result<DualityCocycle, PairingError> {
    assert_eq!(cx.dimension(), 2);
    let mut components: BTreeMap<Vec<usize>, Vec<Int>> = BTreeMap::new();
    // seed: the identification image of the cycle
    for (e, b) in &w.cells {
        let Some(pattern) = id.patterns.get(e) else {
            return Err(PairingError::DegreeMismatch);
        };
        for (cells, g) in pattern {
            if g.is_zero() {
                continue;
            }
            let entry = components
                .entry(cells.clone())
                .or_insert_with(|| vec![Int::zero(); b.len()]);
            for (i, x) in b.iter().enumerate() {
                entry[i] += g * x;
            }
        }
    }
    // vertices needing a correction: endpoints of the support edges
    let mut verts: Vec<usize> = Vec::new();
    for (e, _) in &w.cells {
        for &(f, _) in cx.facets_of(*e) {
            verts.push(f);
        }
    }
    verts.sort_unstable();
    verts.dedup();
    for &v in &verts {
        let cells = cx.star_top_cells(v);
        let vv = cx.vertices_of(v)[0];
        // pairs of star cells whose intersection is exactly v
        let mut vertex_pairs: Vec<(usize, usize)> = Vec::new();
        let mut edge_pairs: Vec<(usize, usize, usize)> = Vec::new();
        for (i, &a) in cells.iter().enumerate() {
            for &b in cells.iter().skip(i + 1) {
                let mut inter: Vec<u32> = cx
                    .vertices_of(a)
                    .iter()
                    .copied()
                    .filter(|x| cx.vertices_of(b).contains(x))
                    .collect();
                inter.sort_unstable();
                if inter == [vv] {
                    vertex_pairs.push((a, b));
                } else if inter.len() == 2 && inter.contains(&vv) {
                    let e = cx.lookup(&inter).unwrap();
                    edge_pairs.push((a, b, e));
                }
            }
        }
        // triples around v
        let mut triples: Vec<[usize; 3]> = Vec::new();
        for (i, &a) in cells.iter().enumerate() {
            for (j, &b) in cells.iter().enumerate().skip(i + 1) {
                for &c in cells.iter().skip(j + 1) {
                    triples.push([a, b, c]);
                }
            }
        }
        if triples.is_empty() {
            continue;
        }
        let rank = sheaf_closed.rank_at(v);
        if rank == 0 {
            continue;
        }
        let basis = sheaf_closed.lattices[v].basis();
        let n_unk = vertex_pairs.len() * rank;
        let rows = triples.len() * sheaf_closed.wedge_dim;
        let mut a_mat = Mat::zero(rows, n_unk);
        let mut rhs = Mat::zero(rows, 1);
        for (ti, tri) in triples.iter().enumerate() {
            for omit in 0..3 {
                let pair: Vec<usize> = (0..3).filter(|k| *k != omit).map(|k| tri[k]).collect();
                let sign: i64 = if omit % 2 == 0 { 1 } else { -1 };
                if let Some(pi) = vertex_pairs
                    .iter()
                    .position(|&(x, y)| x == pair[0] && y == pair[1])
                {
                    // unknown block: value = basis * y (already in anchor(v) frame)
                    for r in 0..sheaf_closed.wedge_dim {
                        for c in 0..rank {
                            let val = basis.at(r, c) * Int::from(sign);
                            if !crate::arith::is_zero(&val) {
                                let acc = a_mat.at(ti * sheaf_closed.wedge_dim + r, pi * rank + c)
                                    + val;
                                a_mat.set(ti * sheaf_closed.wedge_dim + r, pi * rank + c, acc);
                            }
                        }
                    }
                } else if let Some(&(_, _, e)) = edge_pairs
                    .iter()
                    .find(|&&(x, y, _)| x == pair[0] && y == pair[1])
                {
                    // known x-component, transported from anchor(e) to anchor(v)
                    if let Some(val) = components.get(&pair) {
                        let p = &geom.to_anchor[v][&geom.anchors[e]];
                        let moved = p.mul_vec(val);
                        for (r, x) in moved.into_iter().enumerate() {
                            let acc =
                                rhs.at(ti * sheaf_closed.wedge_dim + r, 0) - x * Int::from(sign);
                            rhs.set(ti * sheaf_closed.wedge_dim + r, 0, acc);
                        }
                    }
                }
            }
        }
        if rhs.is_zero() {
            continue;
        }
        let sol = snf::solve(&a_mat, &rhs).ok_or(PairingError::NotACycle)?;
        for (pi, &(a, b)) in vertex_pairs.iter().enumerate() {
            let coords: Vec<Int> = (0..rank).map(|r| sol.at(pi * rank + r, 0).clone()).collect();
            let ambient = basis.mul_vec(&coords);
            if ambient.iter().any(|x| !crate::arith::is_zero(x)) {
                components.insert(vec![a, b], ambient);
            }
        }
    }
    Ok(DualityCocycle { components })
}

/// Verify the duality cocycle against the assembled max-cell complex.
pub fn duality_cocycle_is_cocycle(
    sheaf_closed: &SheafFunctor,
    mc: &crate::cech::MaxcellCech,
    c: &DualityCocycle,
) -> bool {
    let term = &mc.complex.terms[1];
    let mut vec = vec![Int::zero(); term.total];
    for (cells, val) in &c.components {
        let Some(pos) = mc.sets[1].iter().position(|s| &s.cells == cells) else {
            return false;
        };
        let sigma = mc.sets[1][pos].sigma;
        let off = term.offsets[pos];
        let coords = match sheaf_closed.lattices[sigma]
            .coordinates_of(&Mat::from_columns(val.len(), &[val.clone()]))
        {
            Some(c) => c,
            None => return false,
        };
        for r in 0..coords.rows() {
            vec[off + r] += coords.at(r, 0);
        }
    }
    if mc.complex.diffs.len() < 2 {
        return true;
    }
    mc.complex.diffs[1]
        .mul_vec(&vec)
        .iter()
        .all(crate::arith::is_zero)
}

/// Čech cup product of two duality cocycles on the max-cell cover, divided
/// by Ω: an integer-valued 2-cochain of the cover.
fn cup_over_omega(
    cx: &DeltaComplex,
    geom: &SheafGeometry,
    mc: &crate::cech::MaxcellCech,
    sv: &DualityCocycle,
    sw: &DualityCocycle,
    omega_sign: i8,
) -> Vec<Int> {
    let level2 = &mc.sets[2];
    let mut out = vec![Int::zero(); level2.len()];
    for (i, set) in level2.iter().enumerate() {
        let (t0, t1, t2) = (set.cells[0], set.cells[1], set.cells[2]);
        let first = sv.components.get(&vec![t0, t1]);
        let second = sw.components.get(&vec![t1, t2]);
        let (Some(a), Some(b)) = (first, second) else {
            continue;
        };
        // transport both to the anchor frame of the triple intersection
        let s01 = intersect_pair(cx, t0, t1);
        let s12 = intersect_pair(cx, t1, t2);
        let s012 = set.sigma;
        let pa = &geom.to_anchor[s012][&geom.anchors[s01]];
        let pb = &geom.to_anchor[s012][&geom.anchors[s12]];
        let av = pa.mul_vec(a);
        let bv = pb.mul_vec(b);
        out[i] = crate::exterior::wedge_ratio(2, 1, &av, &bv, omega_sign);
    }
    out
}

fn intersect_pair(cx: &DeltaComplex, a: usize, b: usize) -> usize {
    let mut inter: Vec<u32> = cx
        .vertices_of(a)
        .iter()
        .copied()
        .filter(|x| cx.vertices_of(b).contains(x))
        .collect();
    inter.sort_unstable();
    cx.lookup(&inter).expect("cover cells intersect")
}

/// The dual cocycle of a point class: the identification pattern at an
/// interior vertex, as a full integer-valued 2-cochain of the max-cell cover.
fn point_normalizer(
    cx: &DeltaComplex,
    mc: &crate::cech::MaxcellCech,
    id: &crate::cech::B7Identification,
) -> Option<Vec<Int>> {
    let u = cx
        .ids_of_dim(0)
        .iter()
        .copied()
        .find(|&v| !cx.in_boundary(v) && !cx.in_delta(v) && id.patterns.contains_key(&v))?;
    let pattern = &id.patterns[&u];
    let mut full = vec![Int::zero(); mc.sets[2].len()];
    for (i, set) in mc.sets[2].iter().enumerate() {
        if let Some(v) = pattern.get(&set.cells) {
            full[i] = v.clone();
        }
    }
    Some(full)
}

/// Intersection number via the pairing route: dualize both cycles into
/// max-cell Čech cocycles and evaluate the cup product against the dual of a
/// point. On models with boundary the evaluation happens in the relative
/// (cone) complex; both cycles and the chosen base point must then be
/// supported away from the boundary.
pub fn intersection_via_pairing(
    cx: &DeltaComplex,
    geom: &SheafGeometry,
    sheaf_closed: &SheafFunctor,
    mc: &crate::cech::MaxcellCech,
    id: &crate::cech::B7Identification,
    v: &TropicalCycle,
    w: &TropicalCycle,
    omega_sign: i8,
) -> Result<Int, PairingError> {
    let sv = duality_cocycle_surface(cx, geom, sheaf_closed, id, v)?;
    let sw = duality_cocycle_surface(cx, geom, sheaf_closed, id, w)?;
    let cup = cup_over_omega(cx, geom, mc, &sv, &sw, omega_sign);
    let norm = point_normalizer(cx, mc, id).ok_or(PairingError::DegreeMismatch)?;
    let level1 = &mc.sets[1];
    let level2 = &mc.sets[2];
    let mut delta = Mat::zero(level2.len(), level1.len());
    for (di, set) in level2.iter().enumerate() {
        for omit in 0..3 {
            let sub: Vec<usize> = set
                .cells
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != omit)
                .map(|(_, &c)| c)
                .collect();
            if let Some(si) = level1.iter().position(|s| s.cells == sub) {
                let sign: i64 = if omit % 2 == 0 { 1 } else { -1 };
                let acc = delta.at(di, si) + Int::from(sign);
                delta.set(di, si, acc);
            }
        }
    }
    let has_boundary = (0..cx.simplex_count()).any(|s| cx.in_boundary(s));
    if !has_boundary {
        let g = Mat::from_columns(level2.len(), &[norm]);
        let stacked = g.hstack(&delta);
        let b = Mat::from_columns(level2.len(), &[cup]);
        let sol = snf::solve(&stacked, &b).ok_or(PairingError::NotACycle)?;
        return Ok(sol.at(0, 0).clone());
    }
    // relative (cone) evaluation: the cup cochain and the normalizer must
    // have no components on cover sets meeting the boundary
    let bface = |sigma: usize| -> bool {
        cx.vertices_of(sigma).iter().any(|&vv| {
            let vid = cx.lookup(&[vv]).unwrap();
            cx.in_boundary(vid)
        })
    };
    for (i, set) in level2.iter().enumerate() {
        if (!cup[i].is_zero() || !norm[i].is_zero()) && bface(set.sigma) {
            return Err(PairingError::DegreeMismatch);
        }
    }
    // boundary rows: degree-1 sets whose intersection meets the boundary;
    // the cone coboundary of (x, y) imposes r(x) = delta_bd(y) there. Taking
    // also boundary 0-sets for y, we solve
    //   cup = c*norm + delta_B(x),  0 = r(x) - delta_bd(y).
    let bd1: Vec<usize> = (0..level1.len())
        .filter(|&i| bface(level1[i].sigma))
        .collect();
    let bd0: Vec<usize> = (0..mc.sets[0].len())
        .filter(|&i| bface(mc.sets[0][i].sigma))
        .collect();
    // delta_bd: boundary 0-sets -> boundary 1-sets (restricted cover Čech)
    let mut delta_bd = Mat::zero(bd1.len(), bd0.len());
    for (r_i, &i1) in bd1.iter().enumerate() {
        let set = &level1[i1];
        for omit in 0..2 {
            let sub = vec![set.cells[1 - omit]];
            if let Some(pos) = mc.sets[0].iter().position(|s| s.cells == sub) {
                if let Some(ci) = bd0.iter().position(|&x| x == pos) {
                    let sign: i64 = if omit % 2 == 0 { 1 } else { -1 };
                    let acc = delta_bd.at(r_i, ci) + Int::from(sign);
                    delta_bd.set(r_i, ci, acc);
                }
            }
        }
    }
    // assemble the joint system over unknowns (c, x, y)
    let rows = level2.len() + bd1.len();
    let cols = 1 + level1.len() + bd0.len();
    let mut a = Mat::zero(rows, cols);
    let mut b = Mat::zero(rows, 1);
    for i in 0..level2.len() {
        a.set(i, 0, norm[i].clone());
        for j in 0..level1.len() {
            if !delta.at(i, j).is_zero() {
                a.set(i, 1 + j, delta.at(i, j).clone());
            }
        }
        b.set(i, 0, cup[i].clone());
    }
    for (r_i, &i1) in bd1.iter().enumerate() {
        // r(x) - delta_bd y = 0
        a.set(level2.len() + r_i, 1 + i1, Int::from(1));
        for c_i in 0..bd0.len() {
            if !delta_bd.at(r_i, c_i).is_zero() {
                a.set(
                    level2.len() + r_i,
                    1 + level1.len() + c_i,
                    -delta_bd.at(r_i, c_i).clone(),
                );
            }
        }
    }
    let sol = snf::solve(&a, &b).ok_or(PairingError::NotACycle)?;
    Ok(sol.at(0, 0).clone())
}

/// Assemble the full intersection gram matrix of a family of 1-cycles on a
/// closed oriented surface, reusing the duality cocycles and one Smith
/// decomposition of the evaluation system.
pub fn intersection_gram(
    cx: &DeltaComplex,
    geom: &SheafGeometry,
    sheaf_closed: &SheafFunctor,
    mc: &crate::cech::MaxcellCech,
    id: &crate::cech::B7Identification,
    cycles: &[TropicalCycle],
    omega_sign: i8,
) -> Result<Mat, PairingError> {
    let cocycles: Vec<DualityCocycle> = cycles
        .iter()
        .map(|c| duality_cocycle_surface(cx, geom, sheaf_closed, id, c))
        .collect::<Result<_, _>>()?;
    let norm = point_normalizer(cx, mc, id).ok_or(PairingError::DegreeMismatch)?;
    let level1 = &mc.sets[1];
    let level2 = &mc.sets[2];
    let mut delta = Mat::zero(level2.len(), level1.len());
    for (di, set) in level2.iter().enumerate() {
        for omit in 0..3 {
            let sub: Vec<usize> = set
                .cells
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != omit)
                .map(|(_, &c)| c)
                .collect();
            if let Some(si) = level1.iter().position(|t| t.cells == sub) {
                let sign: i64 = if omit % 2 == 0 { 1 } else { -1 };
                let acc = delta.at(di, si) + Int::from(sign);
                delta.set(di, si, acc);
            }
        }
    }
    let g = Mat::from_columns(level2.len(), &[norm]);
    let stacked = g.hstack(&delta);
    let smith = snf::smith(&stacked);
    let k = cycles.len();
    let mut gram = Mat::zero(k, k);
    for i in 0..k {
        for j in i..k {
            let cup = cup_over_omega(cx, geom, mc, &cocycles[i], &cocycles[j], omega_sign);
            let b = Mat::from_columns(level2.len(), &[cup]);
            let sol = snf::solve_with(&smith, &b).ok_or(PairingError::NotACycle)?;
            let v = sol.at(0, 0).clone();
            gram.set(i, j, v.clone());
            if i != j {
                gram.set(j, i, v);
            }
        }
    }
    Ok(gram)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eps_signs() {
        let v = Mat::from_rows_i64(&[&[1], &[0]]);
        let w = Mat::from_rows_i64(&[&[0], &[1]]);
        assert_eq!(eps_sign(&v, &w, 1).unwrap(), 1);
        assert_eq!(eps_sign(&w, &v, 1).unwrap(), -1);
        let w2 = Mat::from_rows_i64(&[&[2], &[0]]);
        assert_eq!(eps_sign(&v, &w2, 1).unwrap(), 0);
    }

    #[test]
    fn intersection_point_formula() {
        let pt = IntersectionPoint {
            tangent_v: Mat::from_rows_i64(&[&[1], &[0]]),
            tangent_w: Mat::from_rows_i64(&[&[0], &[1]]),
            xi_v: vec![int(1), int(0)],
            xi_w: vec![int(0), int(1)],
        };
        assert_eq!(intersection_number(2, 1, &[pt], 1).unwrap(), int(1));
    }

    #[test]
    fn gram_classify_hyperbolic_and_e8() {
        let h = Mat::from_rows_i64(&[&[0, 1], &[1, 0]]);
        let c = gram_lattice_classify(&h).unwrap();
        assert_eq!((c.rank, c.determinant.clone(), c.even, c.signature), (2, int(-1), true, (1, 1)));
        let h2 = Mat::from_rows_i64(&[&[0, 1], &[1, -2]]);
        let c2 = gram_lattice_classify(&h2).unwrap();
        assert_eq!(c2.determinant, int(-1));
        assert!(c2.even);
        assert_eq!(c2.signature, (1, 1));
        let e8neg = Mat::from_rows_i64(&[
            &[-2, 1, 0, 0, 0, 0, 0, 0],
            &[1, -2, 1, 0, 0, 0, 0, 0],
            &[0, 1, -2, 1, 0, 0, 0, 0],
            &[0, 0, 1, -2, 1, 0, 0, 0],
            &[0, 0, 0, 1, -2, 1, 0, 1],
            &[0, 0, 0, 0, 1, -2, 1, 0],
            &[0, 0, 0, 0, 0, 1, -2, 0],
            &[0, 0, 0, 0, 1, 0, 0, -2],
        ]);
        let c3 = gram_lattice_classify(&e8neg).unwrap();
        assert_eq!(c3.rank, 8);
        assert_eq!(c3.determinant, int(1));
        assert!(c3.even);
        assert_eq!(c3.signature, (0, 8));
    }
}


/// Diagnostic: the cup cochain values (nonzero entries with their triples).
pub fn cup_diagnostic(
    cx: &DeltaComplex,
    geom: &SheafGeometry,
    sheaf_closed: &SheafFunctor,
    mc: &crate::cech::MaxcellCech,
    id: &crate::cech::B7Identification,
    v: &TropicalCycle,
    w: &TropicalCycle,
    omega_sign: i8,
) -> Vec<(Vec<usize>, Int)> {
    let sv = duality_cocycle_surface(cx, geom, sheaf_closed, id, v).unwrap();
    let sw = duality_cocycle_surface(cx, geom, sheaf_closed, id, w).unwrap();
    let cup = cup_over_omega(cx, geom, mc, &sv, &sw, omega_sign);
    mc.sets[2]
        .iter()
        .zip(cup)
        .filter(|(_, v)| !v.is_zero())
        .map(|(s, v)| (s.cells.clone(), v))
        .collect()
}

/// Diagnostic: is the cone evaluation well-posed? Returns the coefficient of
/// the normalizer against itself (should be 1) and against zero (should be 0).
pub fn cone_wellposed_diagnostic(
    cx: &DeltaComplex,
    mc: &crate::cech::MaxcellCech,
    id: &crate::cech::B7Identification,
) -> (Int, Int) {
    let norm = point_normalizer(cx, mc, id).unwrap();
    let c1 = cone_solve(cx, mc, &norm, &norm).unwrap();
    let zero = vec![Int::zero(); mc.sets[2].len()];
    let c0 = cone_solve(cx, mc, &norm, &zero).unwrap();
    (c1, c0)
}

/// Solve [rhs] = c*[norm] modulo relative (cone) coboundaries.
fn cone_solve(
    cx: &DeltaComplex,
    mc: &crate::cech::MaxcellCech,
    norm: &[Int],
    cup: &[Int],
) -> Option<Int> {
    let level1 = &mc.sets[1];
    let level2 = &mc.sets[2];
    let mut delta = Mat::zero(level2.len(), level1.len());
    for (di, set) in level2.iter().enumerate() {
        for omit in 0..3 {
            let sub: Vec<usize> = set
                .cells
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != omit)
                .map(|(_, &c)| c)
                .collect();
            if let Some(si) = level1.iter().position(|s| s.cells == sub) {
                let sign: i64 = if omit % 2 == 0 { 1 } else { -1 };
                let acc = delta.at(di, si) + Int::from(sign);
                delta.set(di, si, acc);
            }
        }
    }
    let bface = |sigma: usize| -> bool {
        cx.vertices_of(sigma).iter().any(|&vv| {
            let vid = cx.lookup(&[vv]).unwrap();
            cx.in_boundary(vid)
        })
    };
    let bd1: Vec<usize> = (0..level1.len())
        .filter(|&i| bface(level1[i].sigma))
        .collect();
    let bd0: Vec<usize> = (0..mc.sets[0].len())
        .filter(|&i| bface(mc.sets[0][i].sigma))
        .collect();
    let mut delta_bd = Mat::zero(bd1.len(), bd0.len());
    for (r_i, &i1) in bd1.iter().enumerate() {
        let set = &level1[i1];
        for omit in 0..2 {
            let sub = vec![set.cells[1 - omit]];
            if let Some(pos) = mc.sets[0].iter().position(|s| s.cells == sub) {
                if let Some(ci) = bd0.iter().position(|&x| x == pos) {
                    let sign: i64 = if omit % 2 == 0 { 1 } else { -1 };
                    let acc = delta_bd.at(r_i, ci) + Int::from(sign);
                    delta_bd.set(r_i, ci, acc);
                }
            }
        }
    }
    let rows = level2.len() + bd1.len();
    let cols = 1 + level1.len() + bd0.len();
    let mut a = Mat::zero(rows, cols);
    let mut b = Mat::zero(rows, 1);
    for i in 0..level2.len() {
        a.set(i, 0, norm[i].clone());
        for j in 0..level1.len() {
            if !delta.at(i, j).is_zero() {
                a.set(i, 1 + j, delta.at(i, j).clone());
            }
        }
        b.set(i, 0, cup[i].clone());
    }
    for (r_i, &i1) in bd1.iter().enumerate() {
        a.set(level2.len() + r_i, 1 + i1, Int::from(1));
        for c_i in 0..bd0.len() {
            if !delta_bd.at(r_i, c_i).is_zero() {
                a.set(
                    level2.len() + r_i,
                    1 + level1.len() + c_i,
                    -delta_bd.at(r_i, c_i).clone(),
                );
            }
        }
    }
    let sol = snf::solve(&a, &b)?;
    Some(sol.at(0, 0).clone())
}
