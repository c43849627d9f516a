use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{HamiltonianSpace, ReductionError};
use crate::exactpoly::Rational;
use crate::gradedcore::{pointwise_cohomology, DgModule, FreeGradedModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Regular,
    Singular,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointAnalysis {
    /// Degree → dimension of the fiberwise Koszul cohomology.
    #[serde(deserialize_with = "degree_keys")]
    pub koszul_cohomology: BTreeMap<i32, usize>,
    pub jacobian_rank: usize,
    /// `(dim ker D_mμ, dim coker D_mμ)`.
    pub tangent_complex: (usize, usize),
    pub classification: Classification,
}

fn degree_keys<'de, D: serde::Deserializer<'de>>(d: D) -> Result<BTreeMap<i32, usize>, D::Error> {
    BTreeMap::<String, usize>::deserialize(d)?
        .into_iter()
        .map(|(k, v)| k.parse().map(|k| (k, v)).map_err(serde::de::Error::custom))
        .collect()
}

/// Pointwise invariants at a zero of `μ`.
pub fn analyze_point(h: &HamiltonianSpace, m: &[Rational]) -> Result<PointAnalysis, ReductionError> {
    let z = h.space();
    let tangent = z.point_tangent_complex(m)?;
    let structure = FreeGradedModule::new("O", vec![("1".into(), 0)])?;
    let koszul = DgModule::with_zero_differential(z.algebra().clone(), structure);
    let koszul_cohomology = pointwise_cohomology(&koszul, m)?;
    Ok(PointAnalysis {
        koszul_cohomology,
        jacobian_rank: tangent.rank,
        tangent_complex: (tangent.kernel_dim, tangent.cokernel_dim),
        classification: if tangent.rank == z.d() { Classification::Regular } else { Classification::Singular },
    })
}
