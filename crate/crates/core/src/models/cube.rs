//! The integral affine sphere with 24 focus-focus singularities on the
//! boundary of a cube: two singular points on every cube edge, invariant
//! direction along the edge, corners smoothed by the slit shears.

use super::{Model, ModelError};
use crate::arith::{int, Int};
use crate::complex::DeltaComplex;
use crate::local_system::{is_focus_focus, LocalSystem};
use crate::matrix::Mat;
use crate::pairing::TropicalCycle;
use crate::sheaf::{SheafFunctor, SheafGeometry, SheafKind};
use crate::snf;
use num_traits::Zero;
use std::collections::BTreeMap;

const N: i64 = 4; // grid resolution per face

type P3 = [i64; 3];

fn on_surface(p: P3) -> bool {
    p.iter().all(|&c| (0..=N).contains(&c)) && p.iter().any(|&c| c == 0 || c == N)
}

/// The six faces with outward-coherent frames: origin, axis a, axis b with
/// a × b = outward normal.
struct Face {
    origin: P3,
    a: P3,
    b: P3,
}

fn faces() -> Vec<Face> {
    vec![
        // z = N, outward +ez: (ex, ey)
        Face { origin: [0, 0, N], a: [1, 0, 0], b: [0, 1, 0] },
        // z = 0, outward -ez: (ey, ex)
        Face { origin: [0, 0, 0], a: [0, 1, 0], b: [1, 0, 0] },
        // y = 0, outward -ey: (ex, ez)
        Face { origin: [0, 0, 0], a: [1, 0, 0], b: [0, 0, 1] },
        // y = N, outward +ey: (ez, ex)
        Face { origin: [0, N, 0], a: [0, 0, 1], b: [1, 0, 0] },
        // x = 0, outward -ex: (ez, ey)
        Face { origin: [0, 0, 0], a: [0, 0, 1], b: [0, 1, 0] },
        // x = N, outward +ex: (ey, ez)
        Face { origin: [N, 0, 0], a: [0, 1, 0], b: [0, 0, 1] },
    ]
}

fn add(p: P3, q: P3, k: i64) -> P3 {
    [p[0] + k * q[0], p[1] + k * q[1], p[2] + k * q[2]]
}

/// 2D coordinates of a 3D tangent vector in a face frame.
fn in_frame(f: &Face, w: P3) -> [i64; 2] {
    let dot = |u: P3, v: P3| u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
    [dot(w, f.a), dot(w, f.b)]
}

/// The 24 singular points: parameters 1 and N-1 on each cube edge.
fn singular_points() -> Vec<P3> {
    let mut out = Vec::new();
    for axis in 0..3 {
        for &u in &[0, N] {
            for &v in &[0, N] {
                for &t in &[1, N - 1] {
                    let mut p = [0i64; 3];
                    p[axis] = t;
                    p[(axis + 1) % 3] = u;
                    p[(axis + 2) % 3] = v;
                    out.push(p);
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

struct CubeData {
    verts: Vec<P3>,
    vid: BTreeMap<P3, u32>,
    cx: DeltaComplex,
}

fn build_complex() -> Result<CubeData, ModelError> {
    let mut verts: Vec<P3> = Vec::new();
    for x in 0..=N {
        for y in 0..=N {
            for z in 0..=N {
                let p = [x, y, z];
                if on_surface(p) {
                    verts.push(p);
                }
            }
        }
    }
    verts.sort_unstable();
    let vid: BTreeMap<P3, u32> = verts
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, i as u32))
        .collect();
    let mut tris: Vec<Vec<u32>> = Vec::new();
    for f in faces() {
        for i in 0..N {
            for j in 0..N {
                let p00 = add(add(f.origin, f.a, i), f.b, j);
                let p10 = add(p00, f.a, 1);
                let p01 = add(p00, f.b, 1);
                let p11 = add(p10, f.b, 1);
                let t1 = vec![vid[&p00], vid[&p10], vid[&p11]];
                let t2 = vec![vid[&p00], vid[&p11], vid[&p01]];
                for mut t in [t1, t2] {
                    t.sort_unstable();
                    tris.push(t);
                }
            }
        }
    }
    tris.sort();
    tris.dedup();
    let delta: Vec<Vec<u32>> = singular_points().iter().map(|p| vec![vid[p]]).collect();
    let cx = DeltaComplex::new(2, verts.len(), &tris, &delta, None)
        .map_err(|e| ModelError::Construction(e.to_string()))?;
    Ok(CubeData { verts, vid, cx })
}

/// A cube edge: axis and the two fixed coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct CubeEdge {
    axis: usize,
    u: i64, // coordinate on axis+1
    v: i64, // coordinate on axis+2
}

fn cube_edges() -> Vec<CubeEdge> {
    let mut out = Vec::new();
    for axis in 0..3 {
        for &u in &[0, N] {
            for &v in &[0, N] {
                out.push(CubeEdge { axis, u, v });
            }
        }
    }
    out
}

fn edge_point(e: &CubeEdge, t: i64) -> P3 {
    let mut p = [0i64; 3];
    p[e.axis] = t;
    p[(e.axis + 1) % 3] = e.u;
    p[(e.axis + 2) % 3] = e.v;
    p
}

/// The two faces containing a cube edge (indices into faces()).
fn faces_of_edge(e: &CubeEdge, fs: &[Face]) -> (usize, usize) {
    let sample = edge_point(e, 1);
    let mut found = Vec::new();
    for (i, f) in fs.iter().enumerate() {
        // face plane: points of the form origin + s*a + t*b
        let n = cross(f.a, f.b);
        let d = dot(n, sub3(sample, f.origin));
        if d == 0 {
            found.push(i);
        }
    }
    assert_eq!(found.len(), 2, "cube edge lies in two faces");
    (found[0], found[1])
}

fn cross(a: P3, b: P3) -> P3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: P3, b: P3) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn sub3(a: P3, b: P3) -> P3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// Unfold linear map across a cube edge from face `f` to face `g`: the edge
/// direction is fixed and the inward normal of the edge in f maps to minus
/// the inward normal in g.
fn unfold(f: &Face, g: &Face, e: &CubeEdge) -> Mat {
    let mut w = [0i64; 3];
    w[e.axis] = 1;
    // inward normal of the edge within a face: the axis direction of the
    // face tangent plane that moves off the edge into the face
    let inward = |face: &Face| -> P3 {
        let p0 = edge_point(e, 1);
        for cand in [face.a, face.b, [-face.a[0], -face.a[1], -face.a[2]], [-face.b[0], -face.b[1], -face.b[2]]] {
            let q = add(p0, cand, 1);
            if on_surface(q) && !on_cube_edge(&q) {
                // moving inward keeps us on the face interior side
                let n = cross(face.a, face.b);
                if dot(n, sub3(q, face.origin)) == 0 {
                    return cand;
                }
            }
        }
        panic!("no inward direction");
    };
    let nf = inward(f);
    let ng = inward(g);
    let m_f = Mat::from_rows_i64(&[
        &[in_frame(f, w)[0], in_frame(f, nf)[0]],
        &[in_frame(f, w)[1], in_frame(f, nf)[1]],
    ]);
    let m_g = Mat::from_rows_i64(&[
        &[in_frame(g, w)[0], -in_frame(g, ng)[0]],
        &[in_frame(g, w)[1], -in_frame(g, ng)[1]],
    ]);
    m_g.mul(&m_f.inverse_unimodular())
}

fn on_cube_edge(p: &P3) -> bool {
    p.iter().filter(|&&c| c == 0 || c == N).count() >= 2
}

/// Primitive shear in a face frame fixing the (framed) edge direction.
fn shear(w2: [i64; 2], k: i64) -> Mat {
    // covector vanishing on w: (-w_y, w_x)
    let n = [-w2[1], w2[0]];
    Mat::from_rows_i64(&[
        &[1 + k * w2[0] * n[0], k * w2[0] * n[1]],
        &[k * w2[1] * n[0], 1 + k * w2[1] * n[1]],
    ])
}

pub fn build_cube_k3() -> Result<Model, ModelError> {
    let data = build_complex()?;
    let cx = &data.cx;
    let fs = faces();
    // facet id for a unit segment on a cube edge
    let seg_facet = |e: &CubeEdge, t: i64| -> usize {
        let p = edge_point(e, t);
        let q = edge_point(e, t + 1);
        let a = data.vid[&p].min(data.vid[&q]);
        let b = data.vid[&p].max(data.vid[&q]);
        cx.lookup(&[a, b]).expect("edge segment")
    };
    // base transitions: plain unfolds on every cube-edge segment
    let mut base: BTreeMap<usize, Mat> = BTreeMap::new();
    let mut seg_frames: BTreeMap<usize, (usize, usize, CubeEdge)> = BTreeMap::new();
    for e in cube_edges() {
        let (fi, gi) = faces_of_edge(&e, &fs);
        for t in 0..N {
            let fac = seg_facet(&e, t);
            // orientation of the stored matrix: smaller top id -> larger;
            // determine which face holds the smaller flanking cell
            let cof = cx.cofacets_of(fac);
            assert_eq!(cof.len(), 2);
            let small = cof[0].min(cof[1]);
            // does the smaller cell lie in face fi?
            let sv = cx.vertices_of(small);
            let in_face = |fidx: usize, vset: &[u32]| -> bool {
                let f = &fs[fidx];
                let n = cross(f.a, f.b);
                vset.iter().all(|&v| {
                    let p = data.verts[v as usize];
                    dot(n, sub3(p, f.origin)) == 0
                })
            };
            let (src, dst) = if in_face(fi, sv) { (fi, gi) } else { (gi, fi) };
            base.insert(fac, unfold(&fs[src], &fs[dst], &e));
            seg_frames.insert(fac, (src, dst, e));
        }
    }
    // slit segments: [0,1] for the point at 1, [N-1,N] for the point at N-1;
    // per corner, the three slit shear signs are solved so the corner
    // monodromy is trivial.
    let mut transitions = base.clone();
    let corners: Vec<P3> = (0..8)
        .map(|m| {
            [
                if m & 1 != 0 { N } else { 0 },
                if m & 2 != 0 { N } else { 0 },
                if m & 4 != 0 { N } else { 0 },
            ]
        })
        .collect();
    for corner in &corners {
        // the three slit segments adjacent to this corner
        let mut slits = Vec::new();
        for e in cube_edges() {
            let p0 = edge_point(&e, 0);
            let pn = edge_point(&e, N);
            if p0 == *corner {
                slits.push((e, 0i64));
            } else if pn == *corner {
                slits.push((e, N - 1));
            }
        }
        assert_eq!(slits.len(), 3, "corner has three incident edges");
        let corner_vid = cx.lookup(&[data.vid[corner]]).unwrap();
        let mut solved = false;
        'combo: for mask in 0..8u32 {
            let mut trial = transitions.clone();
            for (i, (e, t)) in slits.iter().enumerate() {
                let k: i64 = if mask & (1 << i) != 0 { 1 } else { -1 };
                let fac = seg_facet(e, *t);
                let (_, dst, _) = &seg_frames[&fac];
                let mut w = [0i64; 3];
                w[e.axis] = 1;
                let w2 = in_frame(&fs[*dst], w);
                let s = shear(w2, k);
                trial.insert(fac, s.mul(&base[&fac]));
            }
            // corner wheel monodromy must be the identity
            if let Some((tops, facets)) = cx.codim2_wheel(corner_vid) {
                if facets.len() == tops.len() {
                    let mut m = Mat::identity(2);
                    for i in 0..tops.len() {
                        let from = tops[i];
                        let to = tops[(i + 1) % tops.len()];
                        let f = shared_facet(cx, from, to);
                        let t = match trial.get(&f) {
                            None => Mat::identity(2),
                            Some(t) => {
                                let cof = cx.cofacets_of(f);
                                let small = cof[0].min(cof[1]);
                                if from == small {
                                    t.clone()
                                } else {
                                    t.inverse_unimodular()
                                }
                            }
                        };
                        m = t.mul(&m);
                    }
                    if m.is_identity() {
                        transitions = trial;
                        solved = true;
                        break 'combo;
                    }
                }
            }
        }
        if !solved {
            return Err(ModelError::Verification(format!(
                "no shear signs balance corner {:?}",
                corner
            )));
        }
    }
    let system = LocalSystem::new(cx, 2, transitions)
        .map_err(|e| ModelError::Construction(e.to_string()))?;
    // full verification: trivial cocycle away from the 24 points, primitive
    // transvections at them
    let monos = system
        .validate_cocycle(cx)
        .map_err(|e| ModelError::Verification(e.to_string()))?;
    if monos.len() != 24 {
        return Err(ModelError::Verification(format!(
            "expected 24 singular points, found {}",
            monos.len()
        )));
    }
    for m in monos.values() {
        if !is_focus_focus(m) {
            return Err(ModelError::Verification(
                "singular point monodromy is not a primitive transvection".into(),
            ));
        }
    }
    let mut model = Model {
        name: "cube-k3".into(),
        complex: data.cx,
        system,
        omega_sign: 1,
        cycles: Vec::new(),
    };
    model.verify()?;
    attach_cycles(&mut model, &data.vid)?;
    Ok(model)
}

fn shared_facet(cx: &DeltaComplex, a: usize, b: usize) -> usize {
    let va = cx.vertices_of(a);
    let vb = cx.vertices_of(b);
    let mut inter: Vec<u32> = va.iter().copied().filter(|x| vb.contains(x)).collect();
    inter.sort_unstable();
    cx.lookup(&inter).expect("adjacent cells share a facet")
}

/// Candidate cycle supports: goggles joining points on opposite edges of
/// every face, goggles around single vertical edges, and the equator rings
/// of all three axes. The basis picker chooses twenty of them.
pub fn cycle_supports(cx: &DeltaComplex, vid: &BTreeMap<P3, u32>) -> Vec<(String, Vec<usize>)> {
    let link = |p: P3| -> Vec<usize> {
        let v = cx.lookup(&[vid[&p]]).expect("vertex");
        crate::models::grid2d::link_support(cx, v)
    };
    let seg = |p: P3, q: P3| -> usize {
        let a = vid[&p].min(vid[&q]);
        let b = vid[&p].max(vid[&q]);
        cx.lookup(&[a, b]).expect("support edge")
    };
    let mut out: Vec<(String, Vec<usize>)> = Vec::new();
    // cross goggles: for every face, join the point at parameter t of one
    // edge to the point at the same t of the opposite edge, bridged across
    // the face interior.
    let fs = faces();
    for (fi, f) in fs.iter().enumerate() {
        // face-local point: origin + i*a + j*b
        let at = |i: i64, j: i64| add(add(f.origin, f.a, i), f.b, j);
        for &t in &[1, N - 1] {
            // bridge along the a = t column (j direction)
            let p = at(t, 0);
            let q = at(t, N);
            let mut support = link(p);
            support.extend(link(q));
            for j in 1..N - 1 {
                support.push(seg(at(t, j), at(t, j + 1)));
            }
            out.push((format!("goggle-f{}-a{}", fi, t), support));
            // bridge along the b = t row (i direction)
            let p = at(0, t);
            let q = at(N, t);
            let mut support = link(p);
            support.extend(link(q));
            for i in 1..N - 1 {
                support.push(seg(at(i, t), at(i + 1, t)));
            }
            out.push((format!("goggle-f{}-b{}", fi, t), support));
        }
        // diagonal goggles joining the t=1 point of one edge to the t=N-1
        // point of the opposite edge, bridged along a staircase
        for &(t0, t1) in &[(1, N - 1), (N - 1, 1)] {
            let p = at(t0, 0);
            let q = at(t1, N);
            let mut support = link(p);
            support.extend(link(q));
            // staircase bridge from (t0,1) to (t1,N-1)
            let step = if t1 > t0 { 1 } else { -1 };
            let mut ci = t0;
            let mut cj = 1;
            while cj < N - 1 || ci != t1 {
                let diag_target = ci + step;
                if ci != t1 && cj < N - 1 && diag_target == t1 {
                    // diagonal step if that grid diagonal exists
                    let pa = at(ci, cj);
                    let pb = at(ci + step, cj + 1);
                    if step > 0 {
                        support.push(seg(pa, pb));
                        ci += 1;
                        cj += 1;
                        continue;
                    }
                }
                if ci != t1 {
                    support.push(seg(at(ci, cj), at(ci + step, cj)));
                    ci += step;
                } else {
                    support.push(seg(at(ci, cj), at(ci, cj + 1)));
                    cj += 1;
                }
            }
            out.push((format!("goggle-f{}-d{}{}", fi, t0, t1), support));
        }
    }
    // equator goggles around the pairs of points of single vertical edges
    for e in cube_edges() {
        let p1 = edge_point(&e, 1);
        let p2 = edge_point(&e, N - 1);
        let mut support = link(p1);
        support.extend(link(p2));
        support.push(seg(p1, edge_point(&e, 2)));
        support.push(seg(edge_point(&e, 2), p2));
        out.push((
            format!("edge-goggle-ax{}-{}{}", e.axis, e.u, e.v),
            support,
        ));
    }
    // antipodal goggles: points at the same parameter on antipodal parallel
    // edges, bridged over two faces
    for axis in 0..3 {
        for &(u0, v0) in &[(0i64, 0i64), (0, N)] {
            let e0 = CubeEdge { axis, u: u0, v: v0 };
            let e1 = CubeEdge {
                axis,
                u: N - u0,
                v: N - v0,
            };
            for &t in &[1, N - 1] {
                let p = edge_point(&e0, t);
                let q = edge_point(&e1, t);
                let mut support = link(p);
                support.extend(link(q));
                // bridge: vary coordinate axis+1 from u0 to N-u0 keeping
                // (axis+2) = v0, then vary axis+2 from v0 to N-v0
                let mk = |a: i64, b: i64| -> P3 {
                    let mut x = [0i64; 3];
                    x[axis] = t;
                    x[(axis + 1) % 3] = a;
                    x[(axis + 2) % 3] = b;
                    x
                };
                let dir_u: i64 = if u0 == 0 { 1 } else { -1 };
                let dir_v: i64 = if v0 == 0 { 1 } else { -1 };
                let mut a = u0;
                while a != N - u0 {
                    support.push(seg(mk(a, v0), mk(a + dir_u, v0)));
                    a += dir_u;
                }
                let mut b = v0;
                while b != N - v0 {
                    support.push(seg(mk(N - u0, b), mk(N - u0, b + dir_v)));
                    b += dir_v;
                }
                out.push((format!("goggle-anti-ax{}-{}{}t{}", axis, u0, v0, t), support));
            }
        }
    }
    // equators: the mid rings around the three axes, twice each (the ring
    // kernel carries several classes)
    for axis in 0..3 {
        let mut path: Vec<P3> = Vec::new();
        let h = N / 2;
        let mk = |a: i64, b: i64| -> P3 {
            let mut p = [0i64; 3];
            p[axis] = h;
            p[(axis + 1) % 3] = a;
            p[(axis + 2) % 3] = b;
            p
        };
        for a in 0..N {
            path.push(mk(a, 0));
        }
        for b in 0..N {
            path.push(mk(N, b));
        }
        for a in 0..N {
            path.push(mk(N - a, N));
        }
        for b in 0..N {
            path.push(mk(0, N - b));
        }
        let ring: Vec<usize> = (0..path.len())
            .map(|i| seg(path[i], path[(i + 1) % path.len()]))
            .collect();
        out.push((format!("equator-ax{}-a", axis), ring.clone()));
        out.push((format!("equator-ax{}-b", axis), ring));
    }
    out
}

/// Pick cycles on the named supports forming a basis of H_1.
fn attach_cycles(model: &mut Model, vid: &BTreeMap<P3, u32>) -> Result<(), ModelError> {
    let cx = &model.complex;
    let geom = SheafGeometry::new(cx, &model.system);
    let sheaf = SheafFunctor::pushforward(&geom, 1, SheafKind::Closed).unwrap();
    let complex = crate::chain::chain_complex(cx, &sheaf, crate::chain::RelMode::None);
    let h = crate::chain::homology(&complex, crate::chain::Field::Integers);
    let h1 = &h[1];
    if h1.betti != 20 || !h1.torsion.is_empty() {
        return Err(ModelError::Verification(format!(
            "cube H_1 should be Z^20, found betti {} torsion {:?}",
            h1.betti, h1.torsion
        )));
    }
    let reps = &h1.representatives;
    let stacked = reps.hstack(&complex.diffs[1]);
    let smith = snf::smith(&stacked);
    // collect all candidate cycles with their classes
    let mut pool: Vec<(String, TropicalCycle, Vec<Int>)> = Vec::new();
    for (name, support) in cycle_supports(cx, vid) {
        let (edges, kernel) = crate::models::grid2d::supported_cycles(cx, &sheaf, &support);
        for col in 0..kernel.cols() {
            let cyc = crate::models::grid2d::cycle_from_supported(&sheaf, &edges, &kernel, col);
            if cyc.cells.is_empty() {
                continue;
            }
            let vec = cyc
                .term_coordinates(&sheaf, &complex.terms[1])
                .map_err(|e| ModelError::Verification(format!("{:?}", e)))?;
            let b = Mat::from_columns(vec.len(), &[vec]);
            let Some(x) = snf::solve_with(&smith, &b) else {
                continue;
            };
            let class: Vec<Int> = (0..reps.cols()).map(|i| x.at(i, 0).clone()).collect();
            if class.iter().all(|c| c.is_zero()) {
                continue;
            }
            pool.push((format!("{}#{}", name, col), cyc, class));
        }
    }
    // the computed basis representatives join the pool as a completion: the
    // hand-drawn supports span most but not all of H_1
    for i in 0..reps.cols() {
        let col = reps.column(i);
        let mut cells = Vec::new();
        for (k, &tau) in complex.terms[1].simplices.iter().enumerate() {
            let off = complex.terms[1].offsets[k];
            let rank = sheaf.rank_at(tau);
            let coords: Vec<Int> = (0..rank).map(|r| col[off + r].clone()).collect();
            if coords.iter().any(|c| !c.is_zero()) {
                let ambient = sheaf.lattices[tau].basis().mul_vec(&coords);
                cells.push((tau, ambient));
            }
        }
        let cyc = TropicalCycle { p: 1, q: 1, cells };
        let mut class = vec![Int::zero(); reps.cols()];
        class[i] = int(1);
        pool.push((format!("basis-{}", i), cyc, class));
    }
    // greedy unimodular selection with backtracking repair: prefer strict
    // unimodular extensions; when stuck, allow a rank extension and retry.
    let select = |strict: bool| -> Vec<usize> {
        let mut picked: Vec<usize> = Vec::new();
        for (i, (_, _, class)) in pool.iter().enumerate() {
            if picked.len() == 20 {
                break;
            }
            let mut cols: Vec<Vec<Int>> = picked.iter().map(|&j| pool[j].2.clone()).collect();
            cols.push(class.clone());
            let m = Mat::from_columns(20, &cols);
            let (div, rank) = snf::smith_divisors(&m);
            if rank != cols.len() {
                continue;
            }
            if strict && !div.iter().all(|d| *d == int(1)) {
                continue;
            }
            picked.push(i);
        }
        picked
    };
    let mut picked = select(true);
    if picked.len() < 20 {
        picked = select(false);
    }
    if picked.len() != 20 {
        return Err(ModelError::Verification(format!(
            "only {} independent cycles in the candidate pool",
            picked.len()
        )));
    }
    // repair non-unimodular choices by swapping entries
    let gram_ok = |picked: &[usize]| -> bool {
        let cols: Vec<Vec<Int>> = picked.iter().map(|&j| pool[j].2.clone()).collect();
        let m = Mat::from_columns(20, &cols);
        let (div, rank) = snf::smith_divisors(&m);
        rank == 20 && div.iter().all(|d| *d == int(1))
    };
    if !gram_ok(&picked) {
        'repair: for slot in 0..20 {
            for cand in 0..pool.len() {
                if picked.contains(&cand) {
                    continue;
                }
                let old = picked[slot];
                picked[slot] = cand;
                if gram_ok(&picked) {
                    break 'repair;
                }
                picked[slot] = old;
            }
        }
    }
    if !gram_ok(&picked) {
        return Err(ModelError::Verification(
            "candidate pool does not contain a unimodular basis".into(),
        ));
    }
    let chosen: Vec<(String, TropicalCycle, Vec<Int>)> =
        picked.into_iter().map(|j| pool[j].clone()).collect();
    let cols: Vec<Vec<Int>> = chosen.iter().map(|(_, _, c)| c.clone()).collect();
    let m = Mat::from_columns(20, &cols);
    let (div, rank) = snf::smith_divisors(&m);
    if rank != 20 || !div.iter().all(|d| *d == int(1)) {
        return Err(ModelError::Verification(
            "named cycles do not form a basis of H_1".into(),
        ));
    }
    model.cycles = chosen.into_iter().map(|(n, c, _)| (n, c)).collect();
    Ok(())
}
