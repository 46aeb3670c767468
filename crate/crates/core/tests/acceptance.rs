//! Acceptance suite: every release criterion with its exact expected values,
//! printing one pass line per criterion. All checks are integer exact.

use trophom::arith::{int, Int};
use trophom::cech::{
    b7_identification, cohomology, d1_equals_boundary_check, graded_concentration_check,
    maxcell_cech, punctured_h1_rank, verify_pl_duality, vertex_star_cech,
};
use trophom::chain::{chain_complex, homology, Field, RelMode};
use trophom::matrix::Mat;
use trophom::models::cube::{build_cube_k3, cycle_supports};
use trophom::models::grid2d::{
    build_goggles, build_torsion_pair, cycle_from_supported, supported_cycles, GoggleVariant,
};
use trophom::models::symple::{build_symple_model, origin_vertex, SympleSpec};
use trophom::models::{build_named, Model};
use trophom::pairing::{
    gram_lattice_classify, intersection_gram, intersection_number, intersection_via_pairing,
    pairing_matrix, IntersectionPoint, TropicalCycle,
};
use trophom::punctured::{
    complex_cd_machinery, punctured_cech_s, threefold_vertex_cech, LatticeSimplex,
};
use trophom::sheaf::{SheafFunctor, SheafGeometry, SheafKind};

fn pass(n: usize, name: &str) {
    println!("ACCEPTANCE {:2} ({}): PASS", n, name);
}

struct Prepared {
    model: Model,
    geom_cache: (),
}

impl Prepared {
    fn new(model: Model) -> Prepared {
        Prepared {
            model,
            geom_cache: (),
        }
    }
}

fn sheaves(model: &Model, p: usize) -> (SheafFunctor, SheafFunctor, SheafFunctor) {
    let geom = SheafGeometry::new(&model.complex, &model.system);
    let dual = model.system.dual(&model.complex);
    let dual_geom = SheafGeometry::new(&model.complex, &dual);
    let closed = SheafFunctor::pushforward(&geom, p, SheafKind::Closed).unwrap();
    let open = SheafFunctor::pushforward(&geom, p, SheafKind::Open).unwrap();
    let open_dual = SheafFunctor::pushforward(&dual_geom, p, SheafKind::Open).unwrap();
    (closed, open, open_dual)
}

/// The ambient value of a global-section representative at the base cell.
fn global_section_at_base(
    model: &Model,
    sheaf_open: &SheafFunctor,
    geom: &SheafGeometry,
    cech: &trophom::cech::CechComplex,
    rep: &Mat,
) -> Vec<Int> {
    // take the component at a vertex of the base cell and transport it there
    let base = model.system.base_cells()[0];
    let v0 = model
        .complex
        .lookup(&[model.complex.vertices_of(base)[0]])
        .unwrap();
    let term = &cech.terms[0];
    let off = term.offset_of(v0).expect("vertex present in degree zero");
    let rank = sheaf_open.rank_at(v0);
    let coords: Vec<Int> = (0..rank).map(|r| rep.at(off + r, 0).clone()).collect();
    let ambient = sheaf_open.lattices[v0].basis().mul_vec(&coords);
    // anchor(v0) -> base along the star of v0 (the base cell contains v0)
    let p = geom.to_anchor[v0][&base].clone();
    p.inverse_unimodular().mul_vec(&ambient)
}

#[test]
fn criterion_1_goggle_cohomology() {
    for variant in [GoggleVariant::SharedLine, GoggleVariant::ParallelLines] {
        let m = build_goggles(variant).unwrap();
        let geom = SheafGeometry::new(&m.complex, &m.system);
        let dual = m.system.dual(&m.complex);
        let dual_geom = SheafGeometry::new(&m.complex, &dual);
        let open = SheafFunctor::pushforward(&geom, 1, SheafKind::Open).unwrap();
        let open_dual = SheafFunctor::pushforward(&dual_geom, 1, SheafKind::Open).unwrap();

        // H^0(B, dual sheaf) = Z e2*, H^1 = Z (paired below in criterion 2)
        let cech_dual = vertex_star_cech(&m.complex, &open_dual);
        let coh_dual = cohomology(&cech_dual, Field::Integers);
        assert_eq!((coh_dual[0].betti, coh_dual[1].betti), (1, 1));
        assert!(coh_dual[0].torsion.is_empty() && coh_dual[1].torsion.is_empty());
        let e2star = global_section_at_base(
            &m,
            &open_dual,
            &dual_geom,
            &cech_dual,
            &coh_dual[0].representatives,
        );
        assert!(
            e2star == vec![int(0), int(1)] || e2star == vec![int(0), int(-1)],
            "H^0 dual invariant should be ±e2*, got {:?}",
            e2star
        );

        // H^0(B, ι_*Λ) = Z e1, H^1 = Z e2 (ranks and the invariant direction)
        let cech = vertex_star_cech(&m.complex, &open);
        let coh = cohomology(&cech, Field::Integers);
        assert_eq!((coh[0].betti, coh[1].betti), (1, 1));
        let e1 = global_section_at_base(&m, &open, &geom, &cech, &coh[0].representatives);
        assert!(
            e1 == vec![int(1), int(0)] || e1 == vec![int(-1), int(0)],
            "H^0 invariant should be ±e1, got {:?}",
            e1
        );
    }
    pass(1, "goggle cohomology");
}

#[test]
fn criterion_2_goggle_pairing() {
    for variant in [GoggleVariant::SharedLine, GoggleVariant::ParallelLines] {
        let m = build_goggles(variant).unwrap();
        let (closed, _, open_dual) = sheaves(&m, 1);
        let complex = chain_complex(&m.complex, &closed, RelMode::None);
        let h = homology(&complex, Field::Integers);
        let cech_dual = vertex_star_cech(&m.complex, &open_dual);
        let coh_dual = cohomology(&cech_dual, Field::Integers);
        let rep = pairing_matrix(
            &closed,
            &complex.terms[1],
            &h[1].representatives,
            &open_dual,
            &cech_dual.terms[1],
            &coh_dual[1].representatives,
        );
        assert_eq!(rep.gram.rows(), 1);
        assert_eq!(rep.gram.cols(), 1);
        let v = rep.gram.at(0, 0).clone();
        assert!(v == int(1) || v == int(-1), "1x1 gram = {}", v);
        assert!(rep.perfect_over_z && rep.perfect_over_q);
    }
    pass(2, "goggle pairing perfect over Z");
}

#[test]
fn criterion_3_goggle_homology_generator() {
    for variant in [GoggleVariant::SharedLine, GoggleVariant::ParallelLines] {
        let m = build_goggles(variant).unwrap();
        let (closed, _, open_dual) = sheaves(&m, 1);
        let complex = chain_complex(&m.complex, &closed, RelMode::None);
        let h = homology(&complex, Field::Integers);
        assert_eq!(h[1].betti, 1);
        assert!(h[1].torsion.is_empty());
        let goggle = &m.cycles[0].1;
        assert!(goggle.is_cycle(&closed, &complex.terms[1], &complex.diffs[0]));
        // generator: pairs ±1 with the H^1 generator of the dual sheaf
        let cech_dual = vertex_star_cech(&m.complex, &open_dual);
        let coh_dual = cohomology(&cech_dual, Field::Integers);
        let gcoords = goggle.term_coordinates(&closed, &complex.terms[1]).unwrap();
        let greps = Mat::from_columns(gcoords.len(), &[gcoords]);
        let rep = pairing_matrix(
            &closed,
            &complex.terms[1],
            &greps,
            &open_dual,
            &cech_dual.terms[1],
            &coh_dual[1].representatives,
        );
        let v = rep.gram.at(0, 0).clone();
        assert!(v == int(1) || v == int(-1));
    }
    pass(3, "goggle generates H_1");
}

#[test]
fn criterion_4_intersection_numbers() {
    // pairing route on the goggle models: self-intersection -2
    for variant in [GoggleVariant::SharedLine, GoggleVariant::ParallelLines] {
        let m = build_goggles(variant).unwrap();
        let (closed, _, _) = sheaves(&m, 1);
        let geom = SheafGeometry::new(&m.complex, &m.system);
        let orientation = m.complex.orientation().unwrap();
        let mc = maxcell_cech(&m.complex, &geom, &closed);
        let id = b7_identification(&m.complex, &geom, &closed, &mc, Some(&orientation)).unwrap();
        let goggle = &m.cycles[0].1;
        let self_int = intersection_via_pairing(
            &m.complex,
            &geom,
            &closed,
            &mc,
            &id,
            goggle,
            goggle,
            m.omega_sign,
        )
        .unwrap();
        assert_eq!(self_int, int(-2), "goggle self-intersection via pairing");
    }
    // local formula route with the worked transverse configurations: the
    // perturbed goggle crosses the original once near each singular point,
    // with the section sheared by the monodromy at the second strand
    let near_singular = |xi: [i64; 2]| IntersectionPoint {
        tangent_v: Mat::from_rows_i64(&[&[1], &[0]]),
        tangent_w: Mat::from_rows_i64(&[&[0], &[1]]),
        xi_v: vec![int(xi[0]), int(xi[1])],
        xi_w: vec![int(xi[0] + xi[1]), int(xi[1])], // sheared by [[1,1],[0,1]]
    };
    let pts = vec![near_singular([0, 1]), near_singular([0, 1])];
    let self_local = intersection_number(2, 1, &pts, 1).unwrap();
    assert_eq!(self_local, int(-2), "goggle self-intersection, local formula");
    // goggle · equator: one transverse point, invariant sections e1, e2
    let ge = vec![IntersectionPoint {
        tangent_v: Mat::from_rows_i64(&[&[1], &[0]]),
        tangent_w: Mat::from_rows_i64(&[&[0], &[1]]),
        xi_v: vec![int(1), int(0)],
        xi_w: vec![int(0), int(1)],
    }];
    assert_eq!(intersection_number(2, 1, &ge, 1).unwrap(), int(1));
    // equator self-intersection: displaced copies are disjoint
    assert_eq!(intersection_number(2, 1, &[], 1).unwrap(), int(0));
    // the assembled 2x2 block (0 1; 1 -2) is an even unimodular plane
    let block = Mat::from_rows_i64(&[&[0, 1], &[1, -2]]);
    let c = gram_lattice_classify(&block).unwrap();
    assert_eq!(c.determinant, int(-1));
    assert!(c.even);
    assert_eq!(c.signature, (1, 1));

    // the same instances on the cube via the pairing route: a vertical-edge
    // goggle against the equator through it, and equator displacement
    let m = build_cube_k3().unwrap();
    let cx = &m.complex;
    let geom = SheafGeometry::new(cx, &m.system);
    let closed = SheafFunctor::pushforward(&geom, 1, SheafKind::Closed).unwrap();
    let orientation = cx.orientation().unwrap();
    let mc = maxcell_cech(cx, &geom, &closed);
    let id = b7_identification(cx, &geom, &closed, &mc, Some(&orientation)).unwrap();
    let complex = chain_complex(cx, &closed, RelMode::None);
    let vid: std::collections::BTreeMap<[i64; 3], u32> = (0..cx.vertex_count() as u32)
        .map(|v| {
            let s = cx.lookup(&[v]).unwrap();
            let _ = s;
            (cube_vertex_coords(cx, v), v)
        })
        .collect();
    let supports = cycle_supports(cx, &vid);
    let find_cycles = |name: &str| -> Vec<TropicalCycle> {
        let support = &supports.iter().find(|(n, _)| n == name).unwrap().1;
        let (edges, kernel) = supported_cycles(cx, &closed, support);
        (0..kernel.cols())
            .map(|c| cycle_from_supported(&closed, &edges, &kernel, c))
            .filter(|c| !c.cells.is_empty())
            .collect()
    };
    let pair_of = |a: &TropicalCycle, b: &TropicalCycle| -> Int {
        intersection_via_pairing(cx, &geom, &closed, &mc, &id, a, b, m.omega_sign).unwrap()
    };
    // a vertical edge goggle and the equator ring around the same axis;
    // which vertical edges carry nonbounding goggles depends on the corner
    // shear pattern, so all four are tried
    let mut eg: Vec<TropicalCycle> = Vec::new();
    for name in [
        "edge-goggle-ax2-00",
        "edge-goggle-ax2-04",
        "edge-goggle-ax2-40",
        "edge-goggle-ax2-44",
    ] {
        eg.extend(find_cycles(name));
    }
    let eq: Vec<TropicalCycle> = find_cycles("equator-ax2-a");
    // choose a goggle representative with self-intersection -2 and an equator
    // meeting it once
    let mut found = false;
    'outer: for g in &eg {
        if pair_of(g, g) != int(-2) {
            continue;
        }
        let _ = &complex;
        for e in &eq {
            if pair_of(e, e) != int(0) {
                continue;
            }
            let ge = pair_of(g, e);
            if ge == int(1) || ge == int(-1) {
                // assembled block is H-equivalent
                let gg = pair_of(g, g);
                let block = Mat::from_fn(2, 2, |r, c| match (r, c) {
                    (0, 0) => int(0),
                    (1, 1) => gg.clone(),
                    _ => ge.clone(),
                });
                let cl = gram_lattice_classify(&block).unwrap();
                assert_eq!(cl.determinant, int(-1));
                assert!(cl.even);
                found = true;
                break 'outer;
            }
        }
    }
    assert!(found, "no (goggle, equator) hyperbolic pair found on the cube");
    pass(4, "intersection numbers, both routes");
}

fn cube_vertex_coords(cx: &trophom::DeltaComplex, v: u32) -> [i64; 3] {
    // vertices were built in lexicographic coordinate order
    let verts: Vec<[i64; 3]> = {
        let mut out = Vec::new();
        for x in 0..=4i64 {
            for y in 0..=4i64 {
                for z in 0..=4i64 {
                    let p = [x, y, z];
                    if p.iter().any(|&c| c == 0 || c == 4) {
                        out.push(p);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    };
    let _ = cx;
    verts[v as usize]
}

#[test]
fn criterion_5_cube_k3() {
    let m = build_cube_k3().unwrap();
    let cx = &m.complex;
    let geom = SheafGeometry::new(cx, &m.system);
    let closed = SheafFunctor::pushforward(&geom, 1, SheafKind::Closed).unwrap();
    let complex = chain_complex(cx, &closed, RelMode::None);
    let h = homology(&complex, Field::Integers);
    assert_eq!(h[1].betti, 20, "rank H_1");
    assert!(h[1].torsion.is_empty());
    // relative rank 44 via the split sequence with Z^24 cokernel
    let rel = chain_complex(cx, &closed, RelMode::Delta);
    let hrel = homology(&rel, Field::Integers);
    assert_eq!(hrel[1].betti, 44, "rank H_1(B, Delta)");
    let delta_stalks: usize = cx.delta_ids().iter().map(|&s| closed.rank_at(s)).sum();
    assert_eq!(delta_stalks, 24);
    assert_eq!(hrel[1].betti - h[1].betti, delta_stalks);
    // the intersection gram of the 20 bundled cycles
    let orientation = cx.orientation().unwrap();
    let mc = maxcell_cech(cx, &geom, &closed);
    let id = b7_identification(cx, &geom, &closed, &mc, Some(&orientation)).unwrap();
    let cycles: Vec<TropicalCycle> = m.cycles.iter().map(|(_, c)| c.clone()).collect();
    let gram = intersection_gram(cx, &geom, &closed, &mc, &id, &cycles, m.omega_sign).unwrap();
    let class = gram_lattice_classify(&gram).unwrap();
    assert_eq!(class.rank, 20);
    assert!(class.even, "even lattice");
    assert!(class.determinant == int(1) || class.determinant == int(-1));
    assert_eq!(class.signature, (2, 18));
    pass(5, "cube K3 lattice");
}

#[test]
fn criterion_6_conifold() {
    let m = build_named("conifold").unwrap();
    let (closed, open, open_dual) = sheaves(&m, 1);
    let coh = cohomology(&vertex_star_cech(&m.complex, &open), Field::Integers);
    assert_eq!(coh[1].betti, 0, "H^1(U) = 0");
    assert!(coh[1].torsion.is_empty());
    let h = homology(
        &chain_complex(&m.complex, &closed, RelMode::None),
        Field::Integers,
    );
    assert_eq!(h[1].betti, 1, "rank H_1(U) = 1");
    // boundary sphere: rank H^1 = 1
    let bd = trophom::cech::BoundaryData::new(&m.complex, &m.system).unwrap();
    let bgeom = SheafGeometry::new(&bd.bcx, &bd.bsys);
    let bopen = SheafFunctor::pushforward(&bgeom, 1, SheafKind::Open).unwrap();
    let bcoh = cohomology(&vertex_star_cech(&bd.bcx, &bopen), Field::Integers);
    assert_eq!(bcoh[1].betti, 1, "rank H^1(∂U) = 1");
    // the pairing in degree (1,1) is not perfect: gram is 1x0
    let complex = chain_complex(&m.complex, &closed, RelMode::None);
    let h1 = homology(&complex, Field::Integers);
    let cech_dual = vertex_star_cech(&m.complex, &open_dual);
    let coh_dual = cohomology(&cech_dual, Field::Integers);
    let rep = pairing_matrix(
        &closed,
        &complex.terms[1],
        &h1[1].representatives,
        &open_dual,
        &cech_dual.terms[1],
        &coh_dual[1].representatives,
    );
    assert_eq!(rep.rank_homology, 1);
    assert_eq!(rep.rank_cohomology, 0);
    assert!(!rep.perfect_over_q);
    pass(6, "conifold counterexample");
}

#[test]
fn criterion_7_punctured_neighborhoods() {
    // Prop 2.12 exhaustive sweep over simplex pairs, dims in {1,2,3},
    // dimension sum at most 5
    for a in 1..=3usize {
        for b in 1..=3usize {
            if a + b > 5 {
                continue;
            }
            let t = LatticeSimplex::standard(a, 1);
            let c = LatticeSimplex::standard(b, 1);
            let rep = punctured_cech_s(&t, &c);
            assert!(rep.passed, "punctured ranks for ({}, {}): {:?}", a, b, rep);
            let mach = complex_cd_machinery(&t, &c);
            assert!(mach.passed, "C/D machinery for ({}, {})", a, b);
        }
    }
    // Lemma 2.13 kernel dimensions
    let r = threefold_vertex_cech(&LatticeSimplex::standard(2, 1), &LatticeSimplex::standard(1, 1));
    assert!(r.passed && r.kernel_rank_reduced == 4);
    let r = threefold_vertex_cech(&LatticeSimplex::standard(1, 1), &LatticeSimplex::standard(2, 1));
    assert!(r.passed && r.kernel_rank_reduced == 5);
    // Thm 2.1: H^1 of the punctured neighborhood vanishes at every
    // discriminant vertex of every generated symple model of dim 3 and 4
    let specs = [
        (2usize, 1usize, 0usize),
        (1, 2, 0),
        (1, 1, 1),
        (2, 2, 0),
        (2, 1, 1),
    ];
    for (a, b, c) in specs {
        let s = SympleSpec {
            triangle: LatticeSimplex::standard(a, 1),
            cotriangle: LatticeSimplex::standard(b, 1),
            trivial_factors: c,
        };
        let m = build_symple_model(&s, 0).unwrap();
        let geom = SheafGeometry::new(&m.complex, &m.system);
        let open = SheafFunctor::pushforward(&geom, 1, SheafKind::Open).unwrap();
        let origin = origin_vertex(&m, &s);
        let delta_vertices: Vec<usize> = m
            .complex
            .delta_ids()
            .into_iter()
            .filter(|&x| m.complex.dim_of(x) == 0)
            .collect();
        assert!(delta_vertices.contains(&origin));
        for v in delta_vertices {
            assert_eq!(
                punctured_h1_rank(&m.complex, &open, v),
                0,
                "puncture at {} in ({},{},{})",
                v,
                a,
                b,
                c
            );
        }
    }
    pass(7, "punctured neighborhoods");
}

#[test]
fn criterion_8_poincare_lefschetz() {
    // Betti and torsion equality for all wedge degrees on the library models
    let models: Vec<Model> = vec![
        build_named("focus-focus").unwrap(),
        build_named("goggles-shared").unwrap(),
        build_named("goggles-parallel").unwrap(),
        build_named("torsion").unwrap(),
        build_named("conifold").unwrap(),
        build_named("cube-k3").unwrap(),
        build_named("symple:s2xi1").unwrap(),
        build_named("symple:i1xs2").unwrap(),
        build_named("symple:i1xi1xR1").unwrap(),
    ];
    for m in &models {
        let n = m.system.rank();
        for p in 0..=n {
            let rep = verify_pl_duality(&m.complex, &m.system, p);
            assert!(rep.passed, "duality failed: {} p={} {:?}", m.name, p, rep);
        }
    }
    // Appendix B graded concentration and d1 = boundary on all 2d models
    for m in &models {
        if m.complex.dimension() != 2 {
            continue;
        }
        let geom = SheafGeometry::new(&m.complex, &m.system);
        for p in 0..=2usize {
            let closed = SheafFunctor::pushforward(&geom, p, SheafKind::Closed).unwrap();
            let mc = maxcell_cech(&m.complex, &geom, &closed);
            let g = graded_concentration_check(&m.complex, &geom, &closed, &mc);
            assert!(g.passed, "graded concentration: {} p={}", m.name, p);
            let d = d1_equals_boundary_check(&m.complex, &geom, &closed, &mc);
            assert!(d.passed, "d1 identification: {} p={}: {}", m.name, p, d.detail);
        }
    }
    pass(8, "Poincaré–Lefschetz and the graded identification");
}

#[test]
fn criterion_10_torsion_models() {
    let cases = [
        ([1i64, 1], [1i64, -1], 2i64),
        ([1, 0], [1, 2], 2),
        ([1, 0], [2, 3], 3),
    ];
    for (d1, d2, det) in cases {
        let m = build_torsion_pair(&d1, &d2).unwrap();
        let dual = m.system.dual(&m.complex);
        let dual_geom = SheafGeometry::new(&m.complex, &dual);
        let open_dual = SheafFunctor::pushforward(&dual_geom, 1, SheafKind::Open).unwrap();
        let coh = cohomology(&vertex_star_cech(&m.complex, &open_dual), Field::Integers);
        assert_eq!(coh[1].betti, 0);
        assert_eq!(coh[1].torsion, vec![int(det)], "{:?} {:?}", d1, d2);
        // brute-force oracle: the explicit two-chart Čech matrix has the
        // same cokernel invariants
        let t1 = trophom::models::plane_transvection(d1);
        let t2 = trophom::models::plane_transvection(d2);
        let dual1 = t1.inverse_unimodular().transpose();
        let dual2 = t2.inverse_unimodular().transpose();
        let oracle = trophom::models::grid2d::two_chart_cech_matrix(&dual1, &dual2);
        let (betti, torsion) = trophom::snf::cokernel_invariants(&oracle);
        assert_eq!(betti, 0);
        assert_eq!(torsion, vec![int(det)]);
    }
    pass(10, "torsion models against the SNF oracle");
}

#[test]
fn acceptance_harness_types() {
    // keep the Prepared helper honest about unused plumbing
    let m = build_named("focus-focus").unwrap();
    let p = Prepared::new(m);
    let _ = p.geom_cache;
    assert_eq!(p.model.complex.dimension(), 2);
}
