//! Symple models built from a pair of lattice simplices and a trivial
//! factor: the truncated combinatorial model is the product of barycentric
//! cone complexes, with chart transitions prescribing the monodromy
//! v ↦ v + ⟨v, n⟩ m around each maximal discriminant stratum.

use super::{Model, ModelError};
use crate::arith::Int;
use crate::complex::DeltaComplex;
use crate::local_system::LocalSystem;
use crate::matrix::Mat;
use crate::punctured::LatticeSimplex;
use crate::snf;
use num_traits::Zero;
use std::collections::BTreeMap;

/// One factor of the product model.
struct Factor {
    cx: DeltaComplex,
    /// per simplex: contained in the codimension-one skeleton Y
    in_y: Vec<bool>,
    /// per top cell: the original vertex index of its cone chamber, when the
    /// factor is a cone complex (None for trivial factors)
    region: Vec<Option<usize>>,
    vertex_count: usize,
}

/// Barycentric cone complex of a lattice simplex: bary vertices are the old
/// faces; Y is spanned by barycenters of positive-dimensional faces.
fn cone_factor(simplex: &LatticeSimplex) -> Factor {
    let d = simplex.dim;
    let verts: Vec<u32> = (0..=d as u32).collect();
    let plain = DeltaComplex::new(d, d + 1, &[verts], &[], None).unwrap();
    let (cx, _carrier, _vc) = plain.barycentric();
    // bary vertex v corresponds to old simplex id v; old ids sorted by
    // dimension so old simplex v is a vertex iff v <= d
    let in_y: Vec<bool> = (0..cx.simplex_count())
        .map(|s| {
            let min_vertex = *cx.vertices_of(s).iter().min().unwrap() as usize;
            min_vertex > d
        })
        .collect();
    let region: Vec<Option<usize>> = (0..cx.simplex_count())
        .map(|s| {
            if cx.dim_of(s) == d {
                let min_vertex = *cx.vertices_of(s).iter().min().unwrap() as usize;
                Some(min_vertex)
            } else {
                None
            }
        })
        .collect();
    Factor {
        vertex_count: cx.vertex_count(),
        in_y,
        region,
        cx,
    }
}

/// A trivial interval factor: path 0 - 1 - 2 with the puncture vertex 1 in
/// the middle; it imposes no discriminant condition.
fn trivial_factor() -> Factor {
    let cx = DeltaComplex::new(1, 3, &[vec![0, 1], vec![1, 2]], &[], None).unwrap();
    let count = cx.simplex_count();
    Factor {
        vertex_count: cx.vertex_count(),
        in_y: vec![true; count],
        region: vec![None; count],
        cx,
    }
}

/// Staircase product of the two factors; vertex (va, vb) gets id
/// va * b.vertex_count + vb. Y-flags multiply; regions pair up.
fn product(a: &Factor, b: &Factor) -> Factor {
    let na = a.cx.dimension();
    let nb = b.cx.dimension();
    let bvc = b.vertex_count as u32;
    let encode = |va: u32, vb: u32| va * bvc + vb;
    let mut tops: Vec<Vec<u32>> = Vec::new();
    for &sa in a.cx.ids_of_dim(na) {
        let av = a.cx.vertices_of(sa);
        for &sb in b.cx.ids_of_dim(nb) {
            let bv = b.cx.vertices_of(sb);
            // monotone staircase paths through the (na+1) x (nb+1) grid
            let mut stack = vec![(0usize, 0usize, vec![encode(av[0], bv[0])])];
            while let Some((i, j, path)) = stack.pop() {
                if i == na && j == nb {
                    tops.push(path);
                    continue;
                }
                if i < na {
                    let mut p = path.clone();
                    p.push(encode(av[i + 1], bv[j]));
                    stack.push((i + 1, j, p));
                }
                if j < nb {
                    let mut p = path.clone();
                    p.push(encode(av[i], bv[j + 1]));
                    stack.push((i, j + 1, p));
                }
            }
        }
    }
    for t in &mut tops {
        t.sort_unstable();
        t.dedup();
    }
    let vertex_count = a.vertex_count * b.vertex_count;
    let cx = DeltaComplex::new(na + nb, vertex_count, &tops, &[], None).unwrap();
    // flags and regions via projections
    let decode = |v: u32| (v / bvc, v % bvc);
    let mut in_y = Vec::with_capacity(cx.simplex_count());
    let mut region = Vec::with_capacity(cx.simplex_count());
    for s in 0..cx.simplex_count() {
        let verts = cx.vertices_of(s);
        let mut pa: Vec<u32> = verts.iter().map(|&v| decode(v).0).collect();
        let mut pb: Vec<u32> = verts.iter().map(|&v| decode(v).1).collect();
        pa.sort_unstable();
        pa.dedup();
        pb.sort_unstable();
        pb.dedup();
        let sa = a.cx.lookup(&pa).expect("projection spans a simplex");
        let sb = b.cx.lookup(&pb).expect("projection spans a simplex");
        in_y.push(a.in_y[sa] && b.in_y[sb]);
        if cx.dim_of(s) == na + nb {
            let ra = a.region[sa];
            let rb = b.region[sb];
            region.push(match (ra, rb) {
                (Some(x), Some(y)) => Some(x * 1000 + y),
                (Some(x), None) => Some(x),
                (None, Some(y)) => Some(y),
                (None, None) => None,
            });
        } else {
            region.push(None);
        }
    }
    Factor {
        vertex_count,
        in_y,
        region,
        cx,
    }
}

/// Specification of a symple model.
pub struct SympleSpec {
    pub triangle: LatticeSimplex,
    pub cotriangle: LatticeSimplex,
    pub trivial_factors: usize,
}

/// Build the symple model of a simplex pair: a triangulated ball with
/// discriminant Y × Y̌ × R^c and monodromy given by the explicit formula.
pub fn build_symple_model(spec: &SympleSpec, fineness: usize) -> Result<Model, ModelError> {
    let a = spec.triangle.dim;
    let b = spec.cotriangle.dim;
    if a < 1 || b < 1 {
        return Err(ModelError::Construction(
            "both simplices must have dimension at least 1".into(),
        ));
    }
    let c = spec.trivial_factors;
    let n = a + b + c;
    let fa = cone_factor(&spec.triangle);
    let fb = cone_factor(&spec.cotriangle);
    let mut prod = product(&fa, &fb);
    for _ in 0..c {
        prod = product(&prod, &trivial_factor());
    }
    // assemble the complex with delta flags
    let mut delta: Vec<Vec<u32>> = Vec::new();
    for s in 0..prod.cx.simplex_count() {
        if prod.in_y[s] {
            delta.push(prod.cx.vertices_of(s).to_vec());
        }
    }
    let tops: Vec<Vec<u32>> = prod
        .cx
        .ids_of_dim(n)
        .iter()
        .map(|&t| prod.cx.vertices_of(t).to_vec())
        .collect();
    let cx = DeltaComplex::new(n, prod.cx.vertex_count(), &tops, &delta, None)
        .map_err(|e| ModelError::Construction(e.to_string()))?;
    // map regions onto the rebuilt complex (same simplices, same order)
    let mut chamber: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for s in 0..prod.cx.simplex_count() {
        if prod.cx.dim_of(s) == n {
            let code = prod.region[s].expect("top cells are labeled");
            let id = cx
                .lookup(prod.cx.vertices_of(s))
                .expect("same simplices after rebuild");
            chamber.insert(id, (code / 1000, code % 1000));
        }
    }
    // transitions between chambers with different triangle vertices
    let mut transitions: BTreeMap<usize, Mat> = BTreeMap::new();
    for &f in cx.ids_of_dim(n - 1) {
        let cof = cx.cofacets_of(f);
        if cof.len() != 2 {
            continue;
        }
        let (c0, c1) = (cof[0].min(cof[1]), cof[0].max(cof[1]));
        let (v0, w0) = chamber[&c0];
        let (v1, w1) = chamber[&c1];
        if v0 == v1 {
            continue; // same chart
        }
        if w0 != w1 {
            return Err(ModelError::Verification(
                "facet crosses both wall systems at once".into(),
            ));
        }
        // t: values on the c0 side -> values on the c1 side
        // dφ = 1 - (v1 - v0) ⊗ w  in block coordinates (x | y | z)
        let m: Vec<Int> = (0..a)
            .map(|r| &spec.triangle.vertices[v1][r] - &spec.triangle.vertices[v0][r])
            .collect();
        let w_cov: Vec<Int> = (0..b).map(|r| spec.cotriangle.vertices[w0][r].clone()).collect();
        let neg_m: Vec<Int> = m.iter().map(|x| -x.clone()).collect();
        let t = crate::punctured::transvection(n, &neg_m, 0, &w_cov, a);
        transitions.insert(f, t);
    }
    let system = LocalSystem::new(&cx, n, transitions)
        .map_err(|e| ModelError::Construction(e.to_string()))?;
    let mut model = Model {
        name: format!("symple-a{}-b{}-c{}", a, b, c),
        complex: cx,
        system,
        omega_sign: 1,
        cycles: Vec::new(),
    };
    for _ in 0..fineness {
        let (sub, carrier, _) = model.complex.barycentric();
        let system = model
            .system
            .subdivided(&model.complex, &sub, &carrier)
            .map_err(|e| ModelError::Construction(e.to_string()))?;
        model = Model {
            name: model.name,
            complex: sub,
            system,
            omega_sign: model.omega_sign,
            cycles: Vec::new(),
        };
    }
    verify_symple(&model, spec)?;
    Ok(model)
}

/// Build-time verification: cocycle condition holds, and around every
/// top-dimensional discriminant stratum the monodromy is a rank-one
/// unipotent with divisor equal to the product of the integral lengths of
/// the dual edges.
fn verify_symple(model: &Model, spec: &SympleSpec) -> Result<(), ModelError> {
    let monos = model
        .system
        .validate_cocycle(&model.complex)
        .map_err(|e| ModelError::Verification(e.to_string()))?;
    for (rho, m) in &monos {
        let d = m.sub(&Mat::identity(m.rows()));
        if d.is_zero() {
            return Err(ModelError::Verification(format!(
                "trivial monodromy around discriminant stratum {}",
                rho
            )));
        }
        if !d.mul(&d).is_zero() {
            return Err(ModelError::Verification(format!(
                "monodromy around stratum {} is not unipotent of the symple form",
                rho
            )));
        }
        let (div, rank) = snf::smith_divisors(&d);
        if rank != 1 {
            return Err(ModelError::Verification(format!(
                "monodromy around stratum {} is not a single shear",
                rho
            )));
        }
        // divisor = content(m) * content(n) for some edge pair
        let mut allowed: Vec<Int> = Vec::new();
        for e in spec.triangle.faces(1) {
            for f in spec.cotriangle.faces(1) {
                let cm = content(
                    &(0..spec.triangle.dim)
                        .map(|r| &spec.triangle.vertices[e[1]][r] - &spec.triangle.vertices[e[0]][r])
                        .collect::<Vec<_>>(),
                );
                let cn = content(
                    &(0..spec.cotriangle.dim)
                        .map(|r| {
                            &spec.cotriangle.vertices[f[1]][r] - &spec.cotriangle.vertices[f[0]][r]
                        })
                        .collect::<Vec<_>>(),
                );
                allowed.push(cm * cn);
            }
        }
        if !allowed.contains(&div[0]) {
            return Err(ModelError::Verification(format!(
                "shear size {} at stratum {} does not match any edge pair",
                div[0], rho
            )));
        }
    }
    Ok(())
}

fn content(v: &[Int]) -> Int {
    let mut g = Int::zero();
    for x in v {
        g = crate::arith::gcd(&g, x);
    }
    g
}

/// The puncture vertex of the model: the product of the factor centers.
pub fn origin_vertex(model: &Model, spec: &SympleSpec) -> usize {
    let a = spec.triangle.dim;
    let b = spec.cotriangle.dim;
    // bary vertex of the full simplex = last old simplex id = 2^(d+1)-2
    let center = |d: usize| -> u32 { ((1usize << (d + 1)) - 2) as u32 };
    let mut v: u32 = center(a);
    // product encodings fold left: v = ((va * nb + vb) * 3 + z1) * 3 + ...
    let nb = ((1usize << (b + 1)) - 1) as u32;
    v = v * nb + center(b);
    for _ in 0..spec.trivial_factors {
        v = v * 3 + 1;
    }
    model
        .complex
        .lookup(&[v])
        .expect("origin vertex exists")
}

/// Parse "s2xi1", "i2xs2xR1"-style specs: s<d> standard simplex of dim d,
/// i<l> interval of integral length l, trailing xR<c> trivial factors.
pub fn build_from_spec_string(s: &str) -> Result<Model, ModelError> {
    let mut parts: Vec<&str> = s.split('x').collect();
    let mut c = 0usize;
    if let Some(last) = parts.last() {
        if let Some(rest) = last.strip_prefix('R') {
            c = rest
                .parse()
                .map_err(|_| ModelError::Construction(format!("bad trivial factor '{}'", last)))?;
            parts.pop();
        }
    }
    if parts.len() != 2 {
        return Err(ModelError::Construction(
            "symple spec needs two simplex factors, e.g. symple:s2xi1".into(),
        ));
    }
    let parse = |p: &str| -> Result<LatticeSimplex, ModelError> {
        if let Some(d) = p.strip_prefix('s') {
            let d: usize = d
                .parse()
                .map_err(|_| ModelError::Construction(format!("bad simplex '{}'", p)))?;
            Ok(LatticeSimplex::standard(d, 1))
        } else if let Some(l) = p.strip_prefix('i') {
            let l: i64 = l
                .parse()
                .map_err(|_| ModelError::Construction(format!("bad interval '{}'", p)))?;
            Ok(LatticeSimplex::standard(1, l))
        } else {
            Err(ModelError::Construction(format!("bad factor '{}'", p)))
        }
    };
    let spec = SympleSpec {
        triangle: parse(parts[0])?,
        cotriangle: parse(parts[1])?,
        trivial_factors: c,
    };
    build_symple_model(&spec, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_system::is_focus_focus;

    #[test]
    fn focus_focus_product() {
        let spec = SympleSpec {
            triangle: LatticeSimplex::standard(1, 1),
            cotriangle: LatticeSimplex::standard(1, 1),
            trivial_factors: 0,
        };
        let m = build_symple_model(&spec, 0).unwrap();
        assert_eq!(m.complex.dimension(), 2);
        // one discriminant vertex with transvection monodromy
        let monos = m.system.validate_cocycle(&m.complex).unwrap();
        assert_eq!(monos.len(), 1);
        let t = monos.values().next().unwrap();
        assert!(is_focus_focus(t));
    }

    #[test]
    fn length_two_interval_gives_shear_two() {
        let spec = SympleSpec {
            triangle: LatticeSimplex::standard(1, 2),
            cotriangle: LatticeSimplex::standard(1, 1),
            trivial_factors: 0,
        };
        let m = build_symple_model(&spec, 0).unwrap();
        let monos = m.system.validate_cocycle(&m.complex).unwrap();
        assert_eq!(monos.len(), 1);
        let t = monos.values().next().unwrap();
        let d = t.sub(&Mat::identity(2));
        let (div, rank) = snf::smith_divisors(&d);
        assert_eq!(rank, 1);
        assert_eq!(div[0], crate::arith::int(2));
    }

    #[test]
    fn trivalent_threefold() {
        let spec = SympleSpec {
            triangle: LatticeSimplex::standard(2, 1),
            cotriangle: LatticeSimplex::standard(1, 1),
            trivial_factors: 0,
        };
        let m = build_symple_model(&spec, 0).unwrap();
        assert_eq!(m.complex.dimension(), 3);
        // the discriminant is a trivalent graph: three legs at the center
        let delta_edges: Vec<usize> = m
            .complex
            .delta_ids()
            .into_iter()
            .filter(|&s| m.complex.dim_of(s) == 1)
            .collect();
        assert_eq!(delta_edges.len(), 3);
        m.verify().unwrap();
    }
}
