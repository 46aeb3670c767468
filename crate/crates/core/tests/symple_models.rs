//! Symple model checks: per-stratum monodromy, star vanishing, and the
//! punctured-neighborhood H^1 vanishing in dimensions three and four.

use trophom::cech::punctured_h1_rank;
use trophom::models::symple::{build_symple_model, origin_vertex, SympleSpec};
use trophom::punctured::LatticeSimplex;
use trophom::sheaf::{SheafFunctor, SheafGeometry, SheafKind};

fn spec(a: usize, b: usize, c: usize) -> SympleSpec {
    SympleSpec {
        triangle: LatticeSimplex::standard(a, 1),
        cotriangle: LatticeSimplex::standard(b, 1),
        trivial_factors: c,
    }
}

#[test]
fn threefold_puncture_vanishing() {
    for (a, b, c) in [(2usize, 1usize, 0usize), (1, 2, 0), (1, 1, 1)] {
        let s = spec(a, b, c);
        let m = build_symple_model(&s, 0).unwrap();
        assert_eq!(m.complex.dimension(), 3);
        let geom = SheafGeometry::new(&m.complex, &m.system);
        let open = SheafFunctor::pushforward(&geom, 1, SheafKind::Open).unwrap();
        // every discriminant vertex, including the origin
        let origin = origin_vertex(&m, &s);
        let mut delta_vertices: Vec<usize> = m
            .complex
            .delta_ids()
            .into_iter()
            .filter(|&s| m.complex.dim_of(s) == 0)
            .collect();
        assert!(delta_vertices.contains(&origin));
        delta_vertices.sort_unstable();
        for v in delta_vertices {
            let rank = punctured_h1_rank(&m.complex, &open, v);
            assert_eq!(
                rank, 0,
                "H^1 of the punctured neighborhood at delta vertex {} (model {},{},{})",
                v, a, b, c
            );
        }
    }
}

#[test]
fn fourfold_puncture_vanishing() {
    for (a, b, c) in [(2usize, 2usize, 0usize), (2, 1, 1)] {
        let s = spec(a, b, c);
        let m = build_symple_model(&s, 0).unwrap();
        assert_eq!(m.complex.dimension(), 4);
        let geom = SheafGeometry::new(&m.complex, &m.system);
        let open = SheafFunctor::pushforward(&geom, 1, SheafKind::Open).unwrap();
        let delta_vertices: Vec<usize> = m
            .complex
            .delta_ids()
            .into_iter()
            .filter(|&s| m.complex.dim_of(s) == 0)
            .collect();
        assert!(!delta_vertices.is_empty());
        for v in delta_vertices {
            let rank = punctured_h1_rank(&m.complex, &open, v);
            assert_eq!(rank, 0, "puncture at {} in model ({},{},{})", v, a, b, c);
        }
    }
}
