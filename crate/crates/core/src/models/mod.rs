//! Generators for the affine manifolds with singularities used throughout:
//! focus-focus discs, goggles, torsion pairs, the 24-point cube sphere, the
//! conifold neighborhood, and general symple models built from a pair of
//! lattice simplices.

pub mod conifold;
pub mod cube;
pub mod grid2d;
pub mod symple;

use crate::complex::DeltaComplex;
use crate::local_system::{is_focus_focus, LocalSystem};
use crate::matrix::Mat;
use crate::pairing::TropicalCycle;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("model construction failed: {0}")]
    Construction(String),
    #[error("internal verification failed: {0}")]
    Verification(String),
}

/// A built model: complex, local system, orientation sign data and any
/// bundled named cycles.
pub struct Model {
    pub name: String,
    pub complex: DeltaComplex,
    pub system: LocalSystem,
    /// +1: the standard top wedge of the base frame generates ι_*∧^nΛ
    pub omega_sign: i8,
    pub cycles: Vec<(String, TropicalCycle)>,
}

impl Model {
    /// Hard verification at build time: cocycle condition away from the
    /// discriminant, transvection classes at 2-dimensional focus-focus
    /// points, orientability.
    pub fn verify(&self) -> Result<(), ModelError> {
        let monos = self
            .system
            .validate_cocycle(&self.complex)
            .map_err(|e| ModelError::Verification(e.to_string()))?;
        if self.complex.dimension() == 2 {
            for (rho, m) in &monos {
                if !is_focus_focus(m) {
                    return Err(ModelError::Verification(format!(
                        "monodromy around discriminant vertex {} is not a primitive transvection conjugate: {:?}",
                        rho, m
                    )));
                }
            }
        }
        for m in self.system.transitions().values() {
            if m.det() != crate::arith::int(1) {
                return Err(ModelError::Verification(
                    "transition with determinant -1 breaks the orientation".into(),
                ));
            }
        }
        self.complex
            .orientation()
            .map_err(|e| ModelError::Verification(e.to_string()))?;
        Ok(())
    }
}

/// Catalog names accepted by the example generator.
pub const CATALOG: &[&str] = &[
    "focus-focus",
    "goggles-shared",
    "goggles-parallel",
    "torsion",
    "cube-k3",
    "conifold",
];

pub fn build_named(name: &str) -> Result<Model, ModelError> {
    match name {
        "focus-focus" => grid2d::build_focus_focus(),
        "goggles-shared" => grid2d::build_goggles(grid2d::GoggleVariant::SharedLine),
        "goggles-parallel" => grid2d::build_goggles(grid2d::GoggleVariant::ParallelLines),
        "torsion" => grid2d::build_torsion_pair(&[1, 1], &[1, -1]),
        "cube-k3" => cube::build_cube_k3(),
        "conifold" => conifold::build_conifold(),
        other => {
            if let Some(rest) = other.strip_prefix("symple:") {
                symple::build_from_spec_string(rest)
            } else {
                Err(ModelError::Construction(format!(
                    "unknown model '{}'; catalog: {}",
                    other,
                    CATALOG.join(", ")
                )))
            }
        }
    }
}

/// Primitive transvection in the plane fixing direction d: v ↦ v + ⟨v, n⟩ d
/// where n is the primitive covector vanishing on d (n = (-d_y, d_x)).
pub fn plane_transvection(d: [i64; 2]) -> Mat {
    let n = [-d[1], d[0]];
    Mat::from_rows_i64(&[
        &[1 + d[0] * n[0], d[0] * n[1]],
        &[d[1] * n[0], 1 + d[1] * n[1]],
    ])
}
