//! Generators for the concrete poset families and their labelings: the
//! partition lattice, noncrossing partitions, weighted partitions, rooted
//! spanning forests, increasing spanning forests, and noncrossing Dyck path
//! collections.

pub mod dyck;
pub mod forests;
pub mod partitions;
pub mod weighted;

pub use dyck::{
    decreasing_pf_to_dyck, dyck_merge, is_parking_function, ncdyck_poset, ncdyck_poset_capped,
    DyckCollection, LabeledDyckPath,
};
pub use forests::{
    increasing_forest_poset, increasing_forest_poset_capped, increasing_forests, rooted_forest_poset,
    rooted_forest_poset_capped, rooted_forests, sf_label, IncreasingForest, RootedForest,
    SpanningForestFamily,
};
pub use partitions::{
    minimum_labeling, noncrossing_lattice, noncrossing_lattice_capped, partition_lattice,
    partition_lattice_capped, set_partitions, SetPartition,
};
pub use weighted::{
    cover_step, forest_map_values, lambda_c_labels, pi_of_forest, weighted_partition_poset,
    weighted_partition_poset_capped, weighted_partitions, WeightedPartition,
    WeightedPartitionFamily,
};

use crate::error::{Error, Result};
use crate::labeling::LabelingKind;
use crate::poset::Poset;

/// Resolve a family name (`pi`, `nc`, `piw`, `sf`, `isf`, `ncdyck`) and an
/// optional labeling name (`min`, `nc`, `lambda_e`, `lambda_c`, `lambda_sf`,
/// `isf_star`) to a poset and labeling. `cap` overrides the family's default
/// size cap.
pub fn build_family(
    family: &str,
    n: usize,
    labeling: Option<&str>,
    cap: Option<usize>,
) -> Result<(Poset, Option<LabelingKind>)> {
    let unknown = |lab: &str| {
        Err(Error::InvalidInput(format!(
            "labeling '{lab}' is not defined for family '{family}'"
        )))
    };
    match family {
        "pi" => {
            let (p, lab) = partition_lattice_capped(n, cap.unwrap_or(partitions::PI_CAP))?;
            match labeling.unwrap_or("min") {
                "min" => Ok((p, Some(LabelingKind::Edge(lab)))),
                other => unknown(other),
            }
        }
        "nc" => {
            let (p, lab) = noncrossing_lattice_capped(n, cap.unwrap_or(partitions::NC_CAP))?;
            match labeling.unwrap_or("nc") {
                "nc" => Ok((p, Some(LabelingKind::Edge(lab)))),
                other => unknown(other),
            }
        }
        "piw" => {
            let fam = weighted_partition_poset_capped(n, cap.unwrap_or(weighted::PIW_CAP))?;
            match labeling.unwrap_or("lambda_e") {
                "lambda_e" => {
                    let lab = fam.lambda_e()?;
                    Ok((fam.poset, Some(LabelingKind::Edge(lab))))
                }
                "lambda_c" => {
                    let lab = fam.lambda_c();
                    Ok((fam.poset, Some(LabelingKind::Chain(lab))))
                }
                other => unknown(other),
            }
        }
        "sf" => {
            let fam = rooted_forest_poset_capped(n, cap.unwrap_or(forests::SF_CAP))?;
            match labeling.unwrap_or("lambda_sf") {
                "lambda_sf" => Ok((fam.poset, Some(LabelingKind::Edge(fam.labeling)))),
                other => unknown(other),
            }
        }
        "isf" => {
            let (p, lab) = increasing_forest_poset_capped(n, cap.unwrap_or(forests::ISF_CAP))?;
            match labeling.unwrap_or("isf_star") {
                "isf_star" => Ok((p, Some(LabelingKind::Edge(lab)))),
                other => unknown(other),
            }
        }
        "ncdyck" => {
            let p = ncdyck_poset_capped(n, cap.unwrap_or(dyck::NCDYCK_CAP))?;
            match labeling {
                None => Ok((p, None)),
                Some(other) => unknown(other),
            }
        }
        other => Err(Error::InvalidInput(format!(
            "unknown family '{other}' (expected pi, nc, piw, sf, isf, or ncdyck)"
        ))),
    }
}
