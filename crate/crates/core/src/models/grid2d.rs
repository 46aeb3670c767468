//! Two-dimensional disc models on triangulated rectangles: focus-focus,
//! goggles in both variants, and the torsion pair.

use super::{plane_transvection, Model, ModelError};
use crate::arith::{int, Int};
use crate::chain::{chain_complex, homology, Field, RelMode};
use crate::complex::DeltaComplex;
use crate::local_system::LocalSystem;
use crate::matrix::Mat;
use crate::pairing::TropicalCycle;
use crate::sheaf::{SheafFunctor, SheafGeometry, SheafKind};
use crate::snf;
use num_traits::Zero;
use std::collections::BTreeMap;

/// A triangulated w x h rectangle grid. Diagonal of each cell is chosen to
/// touch an interior vertex, so no edge joins two boundary vertices unless it
/// lies on the boundary.
pub struct Grid {
    pub w: usize,
    pub h: usize,
}

impl Grid {
    pub fn vertex(&self, x: usize, y: usize) -> u32 {
        (y * (self.w + 1) + x) as u32
    }

    fn interior(&self, x: usize, y: usize) -> bool {
        x > 0 && x < self.w && y > 0 && y < self.h
    }

    /// Main diagonal connects (x,y)-(x+1,y+1); anti connects (x+1,y)-(x,y+1).
    fn use_main_diagonal(&self, x: usize, y: usize) -> bool {
        self.interior(x, y) || self.interior(x + 1, y + 1)
    }

    pub fn triangles(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for y in 0..self.h {
            for x in 0..self.w {
                let a = self.vertex(x, y);
                let b = self.vertex(x + 1, y);
                let c = self.vertex(x + 1, y + 1);
                let d = self.vertex(x, y + 1);
                if self.use_main_diagonal(x, y) {
                    out.push(sorted3(a, b, c));
                    out.push(sorted3(a, c, d));
                } else {
                    out.push(sorted3(a, b, d));
                    out.push(sorted3(b, c, d));
                }
            }
        }
        out
    }
}

fn sorted3(a: u32, b: u32, c: u32) -> Vec<u32> {
    let mut v = vec![a, b, c];
    v.sort_unstable();
    v
}

/// A singularity on the grid: vertex position, transvection, and a slit path
/// given as a list of vertices from the singular vertex to the boundary.
pub struct GridSingularity {
    pub at: (usize, usize),
    pub transvection: Mat,
    pub slit: Vec<(usize, usize)>,
}

/// Build the complex and local system of a grid disc with slitted
/// singularities. Crossing a slit edge from its lower-id triangle side to
/// the higher-id side applies the transvection.
pub fn build_grid_model(
    name: &str,
    grid: &Grid,
    singularities: &[GridSingularity],
) -> Result<Model, ModelError> {
    let tris = grid.triangles();
    let delta: Vec<Vec<u32>> = singularities
        .iter()
        .map(|s| vec![grid.vertex(s.at.0, s.at.1)])
        .collect();
    let cx = DeltaComplex::new(2, (grid.w + 1) * (grid.h + 1), &tris, &delta, None)
        .map_err(|e| ModelError::Construction(e.to_string()))?;
    let mut transitions: BTreeMap<usize, Mat> = BTreeMap::new();
    for s in singularities {
        let mut path = vec![s.at];
        path.extend_from_slice(&s.slit);
        for win in path.windows(2) {
            let a = grid.vertex(win[0].0, win[0].1);
            let b = grid.vertex(win[1].0, win[1].1);
            let e = cx
                .lookup(&[a.min(b), a.max(b)])
                .ok_or_else(|| ModelError::Construction(format!("slit edge {:?} missing", win)))?;
            if cx.in_boundary(e) {
                return Err(ModelError::Construction(
                    "slit runs along the boundary".into(),
                ));
            }
            let prev = transitions.insert(e, s.transvection.clone());
            if prev.is_some() {
                return Err(ModelError::Construction("slits overlap".into()));
            }
        }
        // slit must end on the boundary
        let end = grid.vertex(path.last().unwrap().0, path.last().unwrap().1);
        let vid = cx.lookup(&[end]).unwrap();
        if !cx.in_boundary(vid) {
            return Err(ModelError::Construction("slit does not reach the boundary".into()));
        }
    }
    let system = LocalSystem::new(&cx, 2, transitions)
        .map_err(|e| ModelError::Construction(e.to_string()))?;
    let model = Model {
        name: name.to_string(),
        complex: cx,
        system,
        omega_sign: 1,
        cycles: Vec::new(),
    };
    model.verify()?;
    Ok(model)
}

pub fn build_focus_focus() -> Result<Model, ModelError> {
    let grid = Grid { w: 2, h: 2 };
    build_grid_model(
        "focus-focus",
        &grid,
        &[GridSingularity {
            at: (1, 1),
            transvection: plane_transvection([1, 0]),
            slit: vec![(0, 1)],
        }],
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GoggleVariant {
    SharedLine,
    ParallelLines,
}

/// The link cycle around a vertex: the edges of its closed star that do not
/// contain the vertex.
pub fn link_support(cx: &DeltaComplex, vertex_simplex: usize) -> Vec<usize> {
    let star = cx.closed_star(vertex_simplex);
    let v = cx.vertices_of(vertex_simplex)[0];
    star.members
        .into_iter()
        .filter(|&s| cx.dim_of(s) == 1 && !cx.vertices_of(s).contains(&v))
        .collect()
}

/// Find cycles supported on the given edge set: returns coordinate columns
/// of the kernel of the boundary map restricted to the support.
pub fn supported_cycles(
    cx: &DeltaComplex,
    sheaf: &SheafFunctor,
    support: &[usize],
) -> (Vec<usize>, Mat) {
    let mut edges: Vec<usize> = support.to_vec();
    edges.sort_unstable();
    edges.dedup();
    let functor = crate::sheaf::AbstractFunctor::from_closed_sheaf(cx, sheaf);
    // boundary map restricted to supported edges
    let mut vertex_ids: Vec<usize> = Vec::new();
    for &e in &edges {
        for &(v, _) in cx.facets_of(e) {
            vertex_ids.push(v);
        }
    }
    vertex_ids.sort_unstable();
    vertex_ids.dedup();
    let v_off: BTreeMap<usize, usize> = {
        let mut m = BTreeMap::new();
        let mut acc = 0;
        for &v in &vertex_ids {
            m.insert(v, acc);
            acc += functor.ranks[v];
        }
        m
    };
    let rows: usize = vertex_ids.iter().map(|&v| functor.ranks[v]).sum();
    let e_off: Vec<usize> = {
        let mut out = Vec::new();
        let mut acc = 0;
        for &e in &edges {
            out.push(acc);
            acc += functor.ranks[e];
        }
        out
    };
    let cols: usize = edges.iter().map(|&e| functor.ranks[e]).sum();
    let mut d = Mat::zero(rows, cols);
    for (i, &e) in edges.iter().enumerate() {
        for &(v, sign) in cx.facets_of(e) {
            let r = &functor.maps[&(e, v)];
            for rr in 0..r.rows() {
                for cc in 0..r.cols() {
                    if r.at(rr, cc).is_zero() {
                        continue;
                    }
                    let val = if sign > 0 {
                        r.at(rr, cc).clone()
                    } else {
                        -r.at(rr, cc).clone()
                    };
                    let acc = d.at(v_off[&v] + rr, e_off[i] + cc) + val;
                    d.set(v_off[&v] + rr, e_off[i] + cc, acc);
                }
            }
        }
    }
    (edges, snf::kernel_basis(&d))
}

/// Turn a supported-kernel column into a tropical cycle (ambient anchor-frame
/// coefficients).
pub fn cycle_from_supported(
    sheaf: &SheafFunctor,
    edges: &[usize],
    kernel: &Mat,
    col: usize,
) -> TropicalCycle {
    let mut cells = Vec::new();
    let mut off = 0;
    for &e in edges {
        let rank = sheaf.rank_at(e);
        if rank > 0 {
            let coords: Vec<Int> = (0..rank).map(|r| kernel.at(off + r, col).clone()).collect();
            let ambient = sheaf.lattices[e].basis().mul_vec(&coords);
            if ambient.iter().any(|x| !x.is_zero()) {
                cells.push((e, ambient));
            }
        }
        off += rank;
    }
    TropicalCycle { p: 1, q: 1, cells }
}

/// The H_1 class coordinates of supported kernel columns: solve
/// [representatives | boundaries] x = cycle and read off the leading block.
pub fn class_coordinates(
    complex: &crate::chain::GradedComplex,
    h1: &crate::chain::HomologyGroup,
    vec: &[Int],
) -> Option<Vec<Int>> {
    let reps = &h1.representatives;
    let boundaries = &complex.diffs[1];
    let stacked = reps.hstack(boundaries);
    let b = Mat::from_columns(vec.len(), &[vec.to_vec()]);
    let x = snf::solve(&stacked, &b)?;
    Some((0..reps.cols()).map(|i| x.at(i, 0).clone()).collect())
}

/// Choose, among cycles supported on the given edges, one whose class
/// generates H_1 ≅ Z; integer combinations of kernel columns are used when no
/// single column is a generator.
pub fn generator_from_support(
    cx: &DeltaComplex,
    sheaf: &SheafFunctor,
    support: &[usize],
) -> Result<TropicalCycle, ModelError> {
    let complex = chain_complex(cx, sheaf, RelMode::None);
    let h = homology(&complex, Field::Integers);
    let h1 = &h[1];
    if h1.betti != 1 {
        return Err(ModelError::Verification(format!(
            "expected H_1 of rank 1, found {}",
            h1.betti
        )));
    }
    let (edges, kernel) = supported_cycles(cx, sheaf, support);
    // classes of the kernel columns
    let mut classes: Vec<Int> = Vec::new();
    for col in 0..kernel.cols() {
        let cyc = cycle_from_supported(sheaf, &edges, &kernel, col);
        let vec = cyc
            .term_coordinates(sheaf, &complex.terms[1])
            .map_err(|e| ModelError::Verification(e.to_string()))?;
        let class = class_coordinates(&complex, h1, &vec)
            .ok_or_else(|| ModelError::Verification("class solve failed".into()))?;
        classes.push(class[0].clone());
    }
    // integer combination with total class 1
    let mut combo = vec![Int::zero(); kernel.cols()];
    let mut g = Int::zero();
    for (i, k) in classes.iter().enumerate() {
        if k.is_zero() {
            continue;
        }
        if g.is_zero() {
            g = k.clone();
            combo[i] = int(1);
            continue;
        }
        let (ng, s, t) = crate::arith::xgcd(&g, k);
        for c in combo.iter_mut() {
            *c = &*c * &s;
        }
        combo[i] = t;
        g = ng;
        if g == int(1) {
            break;
        }
    }
    if g != int(1) {
        return Err(ModelError::Verification(format!(
            "supported cycles only reach class index {}",
            g
        )));
    }
    // assemble the combined kernel column
    let mut col = vec![Int::zero(); kernel.rows()];
    for (i, c) in combo.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for r in 0..kernel.rows() {
            col[r] += c * kernel.at(r, i);
        }
    }
    let combined = Mat::from_columns(kernel.rows(), &[col]);
    Ok(cycle_from_supported(sheaf, &edges, &combined, 0))
}

pub fn build_goggles(variant: GoggleVariant) -> Result<Model, ModelError> {
    let (grid, c1, c2) = match variant {
        GoggleVariant::SharedLine => (Grid { w: 6, h: 4 }, (2usize, 2usize), (4usize, 2usize)),
        GoggleVariant::ParallelLines => (Grid { w: 6, h: 6 }, (2, 2), (4, 4)),
    };
    // Both loops around the singular points must have the same transvection
    // for consistently oriented loops; with the slits leaving in opposite
    // directions the second facet matrix carries the inverse.
    let t = plane_transvection([1, 0]);
    let t2 = t.inverse_unimodular();
    let slit1 = vec![(1, c1.1), (0, c1.1)];
    let slit2 = vec![(5, c2.1), (6, c2.1)];
    let name = match variant {
        GoggleVariant::SharedLine => "goggles-shared",
        GoggleVariant::ParallelLines => "goggles-parallel",
    };
    let mut model = build_grid_model(
        name,
        &grid,
        &[
            GridSingularity {
                at: c1,
                transvection: t.clone(),
                slit: slit1,
            },
            GridSingularity {
                at: c2,
                transvection: t2,
                slit: slit2,
            },
        ],
    )?;
    // bundled green cycle: supported on the two singular links (they share a
    // vertex in both layouts, forming the goggle frame)
    let geom = SheafGeometry::new(&model.complex, &model.system);
    let sheaf = SheafFunctor::pushforward(&geom, 1, SheafKind::Closed).unwrap();
    let v1 = model
        .complex
        .lookup(&[grid.vertex(c1.0, c1.1)])
        .expect("singular vertex");
    let v2 = model
        .complex
        .lookup(&[grid.vertex(c2.0, c2.1)])
        .expect("singular vertex");
    let mut support = link_support(&model.complex, v1);
    support.extend(link_support(&model.complex, v2));
    let cycle = generator_from_support(&model.complex, &sheaf, &support)?;
    model.cycles.push(("goggle".to_string(), cycle));
    Ok(model)
}

pub fn build_torsion_pair(dir1: &[i64; 2], dir2: &[i64; 2]) -> Result<Model, ModelError> {
    let det = dir1[0] * dir2[1] - dir1[1] * dir2[0];
    if det == 0 {
        return Err(ModelError::Construction(
            "directions are linearly dependent".into(),
        ));
    }
    if det.abs() == 1 {
        return Err(ModelError::Construction(
            "directions span the lattice; the groups would vanish".into(),
        ));
    }
    let g = num_integer::Integer::gcd(&dir1[0], &dir1[1]);
    let g2 = num_integer::Integer::gcd(&dir2[0], &dir2[1]);
    if g.abs() != 1 || g2.abs() != 1 {
        return Err(ModelError::Construction("directions must be primitive".into()));
    }
    let grid = Grid { w: 4, h: 2 };
    build_grid_model(
        &format!("torsion({},{})x({},{})", dir1[0], dir1[1], dir2[0], dir2[1]),
        &grid,
        &[
            GridSingularity {
                at: (1, 1),
                transvection: plane_transvection(*dir1),
                slit: vec![(0, 1)],
            },
            GridSingularity {
                at: (3, 1),
                transvection: plane_transvection(*dir2),
                slit: vec![(4, 1)],
            },
        ],
    )
}

/// The explicit two-chart Čech matrix of a two-singularity model: the map
/// Γ(U_1) ⊕ Γ(U_2) → Γ(U_1 ∩ U_2) used as the brute-force oracle for the
/// torsion computation.
pub fn two_chart_cech_matrix(t1: &Mat, t2: &Mat) -> Mat {
    let l1 = crate::local_system::fixed_lattice(t1);
    let l2 = crate::local_system::fixed_lattice(t2);
    l1.basis().hstack(&l2.basis().neg())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::snf::cokernel_invariants;

    #[test]
    fn focus_focus_builds() {
        let m = build_focus_focus().unwrap();
        assert_eq!(m.complex.dimension(), 2);
        assert_eq!(m.complex.delta_ids().len(), 1);
    }

    #[test]
    fn torsion_oracle() {
        // (1,1), (1,-1): the two-chart matrix has cokernel Z/2
        let t1 = plane_transvection([1, 1]);
        let t2 = plane_transvection([1, -1]);
        let m = two_chart_cech_matrix(&t1, &t2);
        let (betti, torsion) = cokernel_invariants(&m);
        assert_eq!(betti, 0);
        assert_eq!(torsion, vec![int(2)]);
        assert!(build_torsion_pair(&[1, 0], &[0, 1]).is_err());
    }
}
