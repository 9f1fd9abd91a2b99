//! Runs a decomposition and assembles the output document.

use equidim::decomp::{equidim, Config, InputOrder};
use equidim::verify::{check_partition, check_top_dimension, nonvanishing_pairs, PartitionReport, TopDimensionReport};
use equidim::{AffineCell, Backend, Error};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::system::SystemFile;

/// How much checking to attach to the output.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyLevel {
    #[default]
    None,
    /// Membership of every input in every cell and top-dimension checks.
    Fast,
    /// Everything in `Fast`, plus pairwise disjointness and, on small
    /// fields, rational-point equality.
    Full,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunConfig {
    pub backend: Backend,
    pub order: InputOrder,
    pub seed: u64,
    pub classic_remove: bool,
    pub verify: VerifyLevel,
}

#[derive(Clone, Debug, Serialize)]
pub struct InputEcho {
    pub variables: Vec<String>,
    pub characteristic: u32,
    pub polynomials: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigEcho {
    pub backend: Backend,
    pub order: &'static str,
    pub seed: u64,
    pub classic_remove: bool,
    pub verify: VerifyLevel,
}

#[derive(Clone, Debug, Serialize)]
pub struct CellReport {
    /// Reduced grevlex basis of the cell's distinguished ideal.
    pub equations: Vec<String>,
    /// Factors of the inequation.
    pub inequations: Vec<String>,
    pub dimension: usize,
    pub degree: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub passed: bool,
    /// Inputs in the radical of every cell (both levels).
    pub membership: bool,
    /// Full level only.
    pub partition: Option<PartitionReport>,
    pub top_dimension: Vec<TopDimensionReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub input: InputEcho,
    pub config: ConfigEcho,
    pub cell_count: usize,
    pub cells: Vec<CellReport>,
    pub verification: Option<VerificationReport>,
}

pub fn order_name(order: InputOrder) -> &'static str {
    match order {
        InputOrder::ByDegree => "degree",
        InputOrder::BySupport => "support",
        InputOrder::AsIs => "asis",
    }
}

/// Seed offset separating the verifier's random stream from the engine's.
const VERIFY_STREAM: u64 = 0x5eed_0fc0_ffee;

/// Decomposes the system and builds the report.
pub fn run(file: &SystemFile, config: &RunConfig) -> Result<Report, Error> {
    let ring = file.ring();
    let polys = file.parsed()?;
    let engine = Config {
        backend: config.backend,
        order: config.order,
        seed: config.seed,
        use_classic_remove: config.classic_remove,
        trace: false,
    };
    let out = equidim(ring, &polys, &engine)?;
    let names = &file.variables;
    let cells: Vec<CellReport> = out
        .cells
        .iter()
        .map(|c| CellReport {
            equations: c.cell.basis().gens().iter().map(|g| g.to_string_with(names)).collect(),
            inequations: c.cell.factors().iter().map(|g| g.to_string_with(names)).collect(),
            dimension: c.dim,
            degree: c.degree,
        })
        .collect();

    let verification = match config.verify {
        VerifyLevel::None => None,
        level => {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ VERIFY_STREAM);
            let raw: Vec<AffineCell> = out.cells.iter().map(|c| c.cell.clone()).collect();
            let top_dimension: Vec<TopDimensionReport> = out
                .cells
                .iter()
                .map(|c| check_top_dimension(&c.cell, c.dim, &mut rng))
                .collect();
            let (membership, partition) = if level == VerifyLevel::Full {
                let rep = check_partition(ring, &raw, &polys)?;
                (rep.membership, Some(rep))
            } else {
                (nonvanishing_pairs(&raw, &polys).is_empty(), None)
            };
            let passed = membership
                && partition.as_ref().is_none_or(PartitionReport::passed)
                && top_dimension.iter().all(TopDimensionReport::passed);
            Some(VerificationReport {
                passed,
                membership,
                partition,
                top_dimension,
            })
        }
    };

    Ok(Report {
        input: InputEcho {
            variables: file.variables.clone(),
            characteristic: file.characteristic,
            polynomials: file.polynomials.clone(),
        },
        config: ConfigEcho {
            backend: config.backend,
            order: order_name(config.order),
            seed: config.seed,
            classic_remove: config.classic_remove,
            verify: config.verify,
        },
        cell_count: cells.len(),
        cells,
        verification,
    })
}
